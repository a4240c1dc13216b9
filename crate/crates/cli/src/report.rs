//! Render the analysis report as JSON or as an indented text table.
//!
//! Both renderers walk the same [`Value`] and preserve its key order, so a
//! report is byte-stable in either format.

use serde_json::Value;

pub fn to_json(report: &Value) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn to_text(report: &Value) -> String {
    let mut out = String::new();
    let sections = report.as_object().expect("report is an object");
    for (name, value) in sections {
        out.push_str(&format!("== {name} ==\n"));
        render(value, 0, &mut out);
        out.push('\n');
    }
    out
}

/// Single-line rendering, `None` when the value needs a block.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::String(_) => None,
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match inline(value) {
                    Some(line) => out.push_str(&format!("{pad}{key}: {line}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(value, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for item in items {
                match inline(item) {
                    Some(line) => out.push_str(&format!("{pad}- {line}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, indent + 1, out);
                    }
                }
            }
        }
        // multi-line strings, notably the presentation echo
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}| {line}\n"));
            }
        }
        scalar => {
            let line = inline(scalar).expect("scalars always render inline");
            out.push_str(&format!("{pad}{line}\n"));
        }
    }
}
