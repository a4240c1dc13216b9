//! Finite quivers, paths, and cycle analysis.
//!
//! A quiver is a finite directed graph in which loops and parallel arrows are
//! allowed.  A path is a word `a_1 ... a_m` of arrows that composes like
//! functions: consecutive arrows satisfy `source(a_i) = target(a_{i+1})`, the
//! path starts at `source(a_m)` and ends at `target(a_1)`, and `a_m` acts
//! first when the path is evaluated on a representation.
//!
//! A cycle is a path with equal source and target.  A cycle is *primitive*
//! when the sources of its arrows are pairwise distinct, i.e. it visits no
//! vertex twice.  [`Quiver::extract_primitive`] splits any non-primitive
//! cycle into a shorter primitive cycle and a complementary cycle;
//! [`Quiver::cycle_report`] classifies all cycles up to a length bound.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex index {0} does not exist")]
    UnknownVertex(usize),
    #[error("arrow index {0} does not exist")]
    UnknownArrow(usize),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arrows {left} and {right} do not compose: source {found} != target {expected}")]
    EndpointMismatch {
        left: String,
        right: String,
        expected: usize,
        found: usize,
    },
    #[error("path is not a cycle: source {from} != target {to}")]
    NotACycle { from: usize, to: usize },
    #[error("cycle is already primitive")]
    AlreadyPrimitive,
    #[error("empty arrow list does not determine a path")]
    EmptyWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path in a quiver: the arrow word `a_1 ... a_m` stored as indices, plus
/// its endpoints.  The empty word is the trivial path at `source == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    /// Key identifying the path: non-trivial paths are determined by their
    /// word, trivial paths by their vertex.
    pub fn key(&self) -> (usize, Vec<usize>) {
        (self.source, self.arrows.clone())
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            format!("e_{}", q.vertex_name(self.source))
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrow(a).name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A cycle together with its primitivity status, as produced by cycle
/// classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub path: Path,
    pub primitive: bool,
}

/// Outcome of [`Quiver::extract_primitive`]: indices `start ..= end` (0-based
/// positions in the arrow word) cut out a primitive cycle, and the removed
/// complement is again a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveExtraction {
    pub start: usize,
    pub end: usize,
    pub primitive: Path,
    pub remainder: Path,
}

/// Classification of all cycles up to rotation and up to a length bound.
#[derive(Clone, Debug, Default)]
pub struct CycleReport {
    /// Primitive cycles of length at least 2.
    pub primitive_nonloop: Vec<Cycle>,
    /// Vertices carrying two or more loops, with the loop arrow indices.
    pub multi_loop_vertices: Vec<(usize, Vec<usize>)>,
    /// Cycles that are not a power of a single loop.
    pub non_loop_power: Vec<Cycle>,
    /// Length bound used for the enumeration.
    pub lmax: usize,
    /// True when the enumeration budget was exhausted before `lmax`.
    pub budget_exhausted: bool,
    /// True when all three lists are empty: every cycle is a loop power and
    /// no vertex carries two loops.
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    name_to_vertex: HashMap<String, usize>,
    name_to_arrow: HashMap<String, usize>,
}

/// A full or path-induced subquiver, with maps back to the ambient quiver.
#[derive(Clone, Debug)]
pub struct InducedSubquiver {
    pub quiver: Quiver,
    /// `vertex_map[new] = old`
    pub vertex_map: Vec<usize>,
    /// `arrow_map[new] = old`
    pub arrow_map: Vec<usize>,
}

const CYCLE_ENUM_BUDGET: usize = 1 << 20;

impl Quiver {
    pub fn new(vertex_names: Vec<String>) -> Result<Self, QuiverError> {
        let mut name_to_vertex = HashMap::new();
        for (i, name) in vertex_names.iter().enumerate() {
            if name_to_vertex.insert(name.clone(), i).is_some() {
                return Err(QuiverError::DuplicateName(name.clone()));
            }
        }
        Ok(Quiver {
            vertices: vertex_names,
            arrows: Vec::new(),
            name_to_vertex,
            name_to_arrow: HashMap::new(),
        })
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize, QuiverError> {
        if source >= self.vertices.len() {
            return Err(QuiverError::UnknownVertex(source));
        }
        if target >= self.vertices.len() {
            return Err(QuiverError::UnknownVertex(target));
        }
        if self.name_to_arrow.contains_key(name) || self.name_to_vertex.contains_key(name) {
            return Err(QuiverError::DuplicateName(name.to_string()));
        }
        let idx = self.arrows.len();
        self.arrows.push(Arrow {
            name: name.to_string(),
            source,
            target,
        });
        self.name_to_arrow.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.name_to_vertex.get(name).copied()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.name_to_arrow.get(name).copied()
    }

    pub fn loops_at(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == v && self.arrows[a].target == v)
            .collect()
    }

    pub fn trivial_path(&self, v: usize) -> Result<Path, QuiverError> {
        if v >= self.vertices.len() {
            return Err(QuiverError::UnknownVertex(v));
        }
        Ok(Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        })
    }

    /// Build a path from an arrow word `a_1 ... a_m`, checking composability.
    pub fn path(&self, word: &[usize]) -> Result<Path, QuiverError> {
        if word.is_empty() {
            return Err(QuiverError::EmptyWord);
        }
        for &a in word {
            if a >= self.arrows.len() {
                return Err(QuiverError::UnknownArrow(a));
            }
        }
        for w in word.windows(2) {
            let (left, right) = (w[0], w[1]);
            if self.arrows[left].source != self.arrows[right].target {
                return Err(QuiverError::EndpointMismatch {
                    left: self.arrows[left].name.clone(),
                    right: self.arrows[right].name.clone(),
                    expected: self.arrows[left].source,
                    found: self.arrows[right].target,
                });
            }
        }
        Ok(Path {
            source: self.arrows[*word.last().unwrap()].source,
            target: self.arrows[word[0]].target,
            arrows: word.to_vec(),
        })
    }

    pub fn arrow_path(&self, a: usize) -> Result<Path, QuiverError> {
        self.path(&[a])
    }

    /// Composition `p * q` (first `q`, then `p`); requires
    /// `source(p) = target(q)`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path, QuiverError> {
        if p.source != q.target {
            return Err(QuiverError::EndpointMismatch {
                left: p.display(self),
                right: q.display(self),
                expected: p.source,
                found: q.target,
            });
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Ok(Path {
            source: q.source,
            target: p.target,
            arrows,
        })
    }

    /// All vertices a path visits.
    pub fn support(&self, p: &Path) -> BTreeSet<usize> {
        let mut s = BTreeSet::new();
        s.insert(p.target);
        for &a in &p.arrows {
            s.insert(self.arrows[a].source);
        }
        s
    }

    /// A cycle is primitive when the sources of its arrows are pairwise
    /// distinct.
    pub fn is_primitive(&self, c: &Path) -> bool {
        let mut seen = BTreeSet::new();
        c.arrows.iter().all(|&a| seen.insert(self.arrows[a].source))
    }

    /// Split a non-primitive cycle `a_1 ... a_m`: among all index pairs
    /// `start <= end` with `source(a_end) = target(a_start)`, take the pair
    /// minimising `end - start` (smallest `start` on ties).  Then
    /// `a_start ... a_end` is a primitive cycle with `end - start < m - 1`
    /// and the complementary word is again a cycle.
    pub fn extract_primitive(&self, c: &Path) -> Result<PrimitiveExtraction, QuiverError> {
        if !c.is_cycle() {
            return Err(QuiverError::NotACycle {
                from: c.source,
                to: c.target,
            });
        }
        if self.is_primitive(c) {
            return Err(QuiverError::AlreadyPrimitive);
        }
        let w = &c.arrows;
        let m = w.len();
        let mut best: Option<(usize, usize)> = None;
        for start in 0..m {
            let t = self.arrows[w[start]].target;
            for end in start..m {
                if self.arrows[w[end]].source == t {
                    let better = match best {
                        None => true,
                        Some((bs, be)) => end - start < be - bs,
                    };
                    if better {
                        best = Some((start, end));
                    }
                    break;
                }
            }
        }
        let (start, end) = best.expect("a non-primitive cycle has a matching pair");
        debug_assert!(end - start < m - 1);
        let primitive = self.path(&w[start..=end])?;
        let mut rest = w[..start].to_vec();
        rest.extend_from_slice(&w[end + 1..]);
        let remainder = self.path(&rest)?;
        debug_assert!(primitive.is_cycle() && self.is_primitive(&primitive));
        debug_assert!(remainder.is_cycle());
        Ok(PrimitiveExtraction {
            start,
            end,
            primitive,
            remainder,
        })
    }

    /// True when the word equals the lexicographically least of its rotations;
    /// used to list cycles once per rotation class.
    fn is_min_rotation(word: &[usize]) -> bool {
        let m = word.len();
        for r in 1..m {
            for i in 0..m {
                let a = word[(r + i) % m];
                let b = word[i];
                if a < b {
                    return false;
                }
                if a > b {
                    break;
                }
            }
        }
        true
    }

    fn is_loop_power(&self, word: &[usize]) -> bool {
        let first = word[0];
        let a = &self.arrows[first];
        a.source == a.target && word.iter().all(|&x| x == first)
    }

    /// Enumerate all cycles of length at most `lmax` (up to rotation) and
    /// classify them.  The verdict is true exactly when no vertex carries two
    /// loops, no primitive cycle of length at least 2 exists, and every cycle
    /// is a power of a single loop.
    pub fn cycle_report(&self, lmax: usize) -> CycleReport {
        let mut report = CycleReport {
            lmax,
            ..CycleReport::default()
        };
        for v in 0..self.vertices.len() {
            let loops = self.loops_at(v);
            if loops.len() >= 2 {
                report.multi_loop_vertices.push((v, loops));
            }
        }
        let mut budget = CYCLE_ENUM_BUDGET;
        let mut word = Vec::new();
        for start in 0..self.arrows.len() {
            word.push(start);
            self.enumerate_cycles(lmax, &mut word, &mut report, &mut budget);
            word.pop();
            if budget == 0 {
                report.budget_exhausted = true;
                break;
            }
        }
        report.verdict = report.primitive_nonloop.is_empty()
            && report.multi_loop_vertices.is_empty()
            && report.non_loop_power.is_empty()
            && !report.budget_exhausted;
        report
    }

    fn enumerate_cycles(
        &self,
        lmax: usize,
        word: &mut Vec<usize>,
        report: &mut CycleReport,
        budget: &mut usize,
    ) {
        if *budget == 0 {
            return;
        }
        *budget -= 1;
        let last = *word.last().unwrap();
        if self.arrows[last].source == self.arrows[word[0]].target && Self::is_min_rotation(word) {
            let path = self.path(word).expect("enumerated word is composable");
            let primitive = self.is_primitive(&path);
            if primitive && word.len() >= 2 {
                report.primitive_nonloop.push(Cycle {
                    path: path.clone(),
                    primitive,
                });
            }
            if !self.is_loop_power(word) {
                report.non_loop_power.push(Cycle { path, primitive });
            }
        }
        if word.len() == lmax {
            return;
        }
        let next_target = self.arrows[last].source;
        for a in 0..self.arrows.len() {
            if self.arrows[a].target == next_target {
                word.push(a);
                self.enumerate_cycles(lmax, word, report, budget);
                word.pop();
            }
        }
    }

    /// True when the quiver contains any oriented cycle.
    pub fn has_oriented_cycle(&self) -> bool {
        // colors: 0 unvisited, 1 on stack, 2 done
        let mut color = vec![0u8; self.vertices.len()];
        fn visit(q: &Quiver, v: usize, color: &mut [u8]) -> bool {
            color[v] = 1;
            for a in q.arrows.iter().filter(|a| a.source == v) {
                match color[a.target] {
                    1 => return true,
                    0 => {
                        if visit(q, a.target, color) {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
            color[v] = 2;
            false
        }
        (0..self.vertices.len()).any(|v| color[v] == 0 && visit(self, v, &mut color))
    }

    /// Full subquiver on a vertex set: those vertices and every arrow with
    /// both endpoints inside.
    pub fn induced_subquiver(&self, vertices: &[usize]) -> Result<InducedSubquiver, QuiverError> {
        for &v in vertices {
            if v >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(v));
            }
        }
        let vertex_map: Vec<usize> = {
            let set: BTreeSet<usize> = vertices.iter().copied().collect();
            set.into_iter().collect()
        };
        let arrow_map: Vec<usize> = (0..self.arrows.len())
            .filter(|&a| {
                vertex_map.binary_search(&self.arrows[a].source).is_ok()
                    && vertex_map.binary_search(&self.arrows[a].target).is_ok()
            })
            .collect();
        self.assemble_subquiver(vertex_map, arrow_map)
    }

    /// Subquiver spanned by a set of paths: their visited vertices and the
    /// arrows occurring in them.  A relation induces the union over its paths.
    pub fn induced_subquiver_for_paths(&self, paths: &[Path]) -> Result<InducedSubquiver, QuiverError> {
        let mut vset = BTreeSet::new();
        let mut aset = BTreeSet::new();
        for p in paths {
            for &a in p.arrows() {
                if a >= self.arrows.len() {
                    return Err(QuiverError::UnknownArrow(a));
                }
                aset.insert(a);
            }
            vset.extend(self.support(p));
        }
        self.assemble_subquiver(vset.into_iter().collect(), aset.into_iter().collect())
    }

    /// Subquiver from explicit sorted vertex and arrow index lists; every
    /// arrow endpoint must be listed.
    pub fn assemble_subquiver(
        &self,
        vertex_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<InducedSubquiver, QuiverError> {
        let names = vertex_map
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect();
        let mut quiver = Quiver::new(names)?;
        for &a in &arrow_map {
            let arr = &self.arrows[a];
            let s = vertex_map.binary_search(&arr.source).expect("endpoint included");
            let t = vertex_map.binary_search(&arr.target).expect("endpoint included");
            quiver.add_arrow(&arr.name, s, t)?;
        }
        Ok(InducedSubquiver {
            quiver,
            vertex_map,
            arrow_map,
        })
    }

    /// The opposite quiver: same vertices, all arrows reversed, names kept.
    pub fn opposite(&self) -> Quiver {
        let mut q = Quiver::new(self.vertices.clone()).expect("names already distinct");
        for a in &self.arrows {
            q.add_arrow(&a.name, a.target, a.source).expect("names already distinct");
        }
        q
    }

    /// Translate a path to the opposite quiver: the arrow word reverses.
    pub fn reverse_path(&self, p: &Path) -> Path {
        let mut arrows = p.arrows.clone();
        arrows.reverse();
        Path {
            source: p.target,
            target: p.source,
            arrows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices 0, 1 with loops at both and an arrow from 1 to 0.
    fn bridge_quiver() -> Quiver {
        let mut q = Quiver::new(vec!["0".into(), "1".into()]).unwrap();
        q.add_arrow("e0", 0, 0).unwrap();
        q.add_arrow("e1", 1, 1).unwrap();
        q.add_arrow("a", 1, 0).unwrap();
        q
    }

    /// Two vertices joined by arrows in both directions.
    fn two_cycle_quiver() -> Quiver {
        let mut q = Quiver::new(vec!["1".into(), "2".into()]).unwrap();
        q.add_arrow("u", 0, 1).unwrap();
        q.add_arrow("v", 1, 0).unwrap();
        q
    }

    #[test]
    fn compose_follows_function_order() {
        let q = bridge_quiver();
        let a = q.arrow_path(2).unwrap();
        let e1 = q.arrow_path(1).unwrap();
        let p = q.compose(&a, &e1).unwrap();
        assert_eq!(p.arrows(), &[2, 1]);
        assert_eq!((p.source(), p.target()), (1, 0));
        assert_eq!(p.display(&q), "a*e1");
        assert!(matches!(
            q.compose(&e1, &a),
            Err(QuiverError::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn trivial_paths_are_units_for_composition() {
        let q = bridge_quiver();
        let a = q.arrow_path(2).unwrap();
        let e_src = q.trivial_path(1).unwrap();
        let e_tgt = q.trivial_path(0).unwrap();
        assert_eq!(q.compose(&a, &e_src).unwrap(), a);
        assert_eq!(q.compose(&e_tgt, &a).unwrap(), a);
    }

    #[test]
    fn extract_primitive_loop_square() {
        let mut q = Quiver::new(vec!["1".into()]).unwrap();
        q.add_arrow("l", 0, 0).unwrap();
        let c = q.path(&[0, 0]).unwrap();
        let ex = q.extract_primitive(&c).unwrap();
        assert_eq!((ex.start, ex.end), (0, 0));
        assert_eq!(ex.primitive.arrows(), &[0]);
        assert_eq!(ex.remainder.arrows(), &[0]);
    }

    #[test]
    fn extract_primitive_double_two_cycle() {
        let q = two_cycle_quiver();
        // word (u, v, u, v) is a cycle at vertex 2
        let c = q.path(&[0, 1, 0, 1]).unwrap();
        assert!(c.is_cycle());
        assert!(!q.is_primitive(&c));
        let ex = q.extract_primitive(&c).unwrap();
        assert_eq!((ex.start, ex.end), (0, 1));
        assert_eq!(ex.primitive.arrows(), &[0, 1]);
        assert_eq!(ex.remainder.arrows(), &[0, 1]);
        assert!(ex.end - ex.start < c.len() - 1);
    }

    #[test]
    fn extract_primitive_rejects_bad_input() {
        let q = two_cycle_quiver();
        let open = q.path(&[0]).unwrap();
        assert!(matches!(
            q.extract_primitive(&open),
            Err(QuiverError::NotACycle { .. })
        ));
        let prim = q.path(&[0, 1]).unwrap();
        assert!(matches!(
            q.extract_primitive(&prim),
            Err(QuiverError::AlreadyPrimitive)
        ));
    }

    #[test]
    fn repeated_extraction_terminates_quickly() {
        let q = two_cycle_quiver();
        let mut c = q.path(&[0, 1, 0, 1, 0, 1]).unwrap();
        let m = c.len();
        let mut steps = 0;
        while !q.is_primitive(&c) {
            c = q.extract_primitive(&c).unwrap().remainder;
            steps += 1;
            assert!(steps < m, "must terminate in fewer than {m} extractions");
        }
    }

    #[test]
    fn cycle_report_accepts_loop_bridge_quiver() {
        let q = bridge_quiver();
        let report = q.cycle_report(2 * q.arrow_count());
        assert!(report.primitive_nonloop.is_empty());
        assert!(report.multi_loop_vertices.is_empty());
        assert!(report.non_loop_power.is_empty());
        assert!(report.verdict);
    }

    #[test]
    fn cycle_report_flags_two_cycle() {
        let q = two_cycle_quiver();
        let report = q.cycle_report(4);
        assert_eq!(report.primitive_nonloop.len(), 1);
        assert_eq!(report.primitive_nonloop[0].path.arrows(), &[0, 1]);
        assert_eq!(report.non_loop_power.len(), 2, "(u,v) and (u,v,u,v)");
        assert!(!report.verdict);
    }

    #[test]
    fn cycle_report_flags_double_loop() {
        let mut q = Quiver::new(vec!["1".into()]).unwrap();
        q.add_arrow("x", 0, 0).unwrap();
        q.add_arrow("y", 0, 0).unwrap();
        let report = q.cycle_report(3);
        assert_eq!(report.multi_loop_vertices, vec![(0, vec![0, 1])]);
        assert!(!report.non_loop_power.is_empty(), "x*y is not a loop power");
        assert!(!report.verdict);
    }

    #[test]
    fn cycle_report_counts_each_rotation_class_once() {
        let q = two_cycle_quiver();
        let report = q.cycle_report(2);
        // only the class of (u, v); the rotation (v, u) must not be listed
        assert_eq!(report.non_loop_power.len(), 1);
    }

    #[test]
    fn induced_subquiver_full() {
        let q = bridge_quiver();
        let sub = q.induced_subquiver(&[0]).unwrap();
        assert_eq!(sub.quiver.vertex_count(), 1);
        assert_eq!(sub.quiver.arrow_count(), 1);
        assert_eq!(sub.arrow_map, vec![0]);
        assert_eq!(sub.quiver.arrow(0).name, "e0");
    }

    #[test]
    fn induced_subquiver_for_path_keeps_only_used_arrows() {
        let q = bridge_quiver();
        let p = q.path(&[2, 1]).unwrap(); // a*e1
        let sub = q.induced_subquiver_for_paths(&[p]).unwrap();
        assert_eq!(sub.vertex_map, vec![0, 1]);
        assert_eq!(sub.arrow_map, vec![1, 2]);
    }

    #[test]
    fn induced_subquiver_rejects_unknown_vertex() {
        let q = bridge_quiver();
        assert!(matches!(
            q.induced_subquiver(&[7]),
            Err(QuiverError::UnknownVertex(7))
        ));
    }

    #[test]
    fn opposite_reverses_arrows_and_paths() {
        let q = bridge_quiver();
        let op = q.opposite();
        assert_eq!(op.arrow(2).source, 0);
        assert_eq!(op.arrow(2).target, 1);
        let p = q.path(&[2, 1]).unwrap();
        let rp = q.reverse_path(&p);
        assert_eq!(rp.arrows(), &[1, 2]);
        assert!(op.path(rp.arrows()).is_ok());
    }

    #[test]
    fn oriented_cycle_detection() {
        assert!(bridge_quiver().has_oriented_cycle());
        assert!(two_cycle_quiver().has_oriented_cycle());
        let mut line = Quiver::new(vec!["0".into(), "1".into(), "2".into()]).unwrap();
        line.add_arrow("a", 1, 0).unwrap();
        line.add_arrow("b", 2, 1).unwrap();
        assert!(!line.has_oriented_cycle());
    }
}
