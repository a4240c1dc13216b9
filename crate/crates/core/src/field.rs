//! Exact field arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is parameterised by a [`Field`].  The field
//! is a small value object (`Rationals` is a unit struct, `PrimeField` carries
//! its modulus) and elements are plain data; all operations go through the
//! field so that `F_p` elements can stay machine words.

use std::fmt;
use std::hash::Hash;

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// A coefficient `num/den` cannot be mapped into the field because the
    /// denominator is not invertible (e.g. `1/2` in `F_2`).
    #[error("denominator {den} is not invertible in {field}")]
    NonInvertibleDenominator { den: i64, field: String },
    #[error("{0} is not a prime number")]
    NotPrime(u64),
}

/// A field with exact arithmetic.
///
/// Elements do not know their field; all operations take `&self`.  This keeps
/// `F_p` elements as bare `u64` values and lets generic code run unchanged
/// over the rationals.
pub trait Field: Clone + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn integer(&self, n: i64) -> Self::Elem;

    /// Image of the rational number `num/den`, if `den` is invertible.
    fn ratio(&self, num: i64, den: i64) -> Result<Self::Elem, FieldError> {
        let d = self.integer(den);
        match self.inv(&d) {
            Some(di) => Ok(self.mul(&self.integer(num), &di)),
            None => Err(FieldError::NonInvertibleDenominator {
                den,
                field: self.name(),
            }),
        }
    }

    /// Canonical text form: `"p/q"` over the rationals, the least
    /// non-negative residue over a prime field.
    fn format(&self, a: &Self::Elem) -> String;

    /// The canonical integer representative, when there is one.  Over a prime
    /// field this is always `Some`; over the rationals only for integers.
    fn as_integer(&self, a: &Self::Elem) -> Option<i64>;

    /// Deterministic pseudo-random element for randomized isomorphism tests.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// Number of elements for a finite field, `None` for the rationals.
    fn element_count(&self) -> Option<u64>;

    /// All elements of a finite field in a fixed order, `None` otherwise.
    fn all_elements(&self) -> Option<Vec<Self::Elem>>;

    fn name(&self) -> String;
}

/// The field of rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn integer(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn as_integer(&self, a: &BigRational) -> Option<i64> {
        if a.is_integer() {
            i64::try_from(a.numer()).ok()
        } else {
            None
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> BigRational {
        self.integer(rng.gen_range(-50..=50))
    }

    fn element_count(&self) -> Option<u64> {
        None
    }

    fn all_elements(&self) -> Option<Vec<BigRational>> {
        None
    }

    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field `F_p`, elements stored as least non-negative residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, self.p);
            }
            base = mulmod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn integer(&self, n: i64) -> u64 {
        let m = self.p as i64;
        (n.rem_euclid(m)) as u64
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn as_integer(&self, a: &u64) -> Option<i64> {
        Some(*a as i64)
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn element_count(&self) -> Option<u64> {
        Some(self.p)
    }

    fn all_elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }

    fn name(&self) -> String {
        format!("F{}", self.p)
    }
}
