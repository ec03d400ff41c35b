//! Structured command reports.
//!
//! Every command produces one JSON document with stable keys. The text form
//! is rendered from the same document so the two never disagree.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    doc: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut doc = Map::new();
        doc.insert("command".into(), Value::String(command.into()));
        Report { doc }
    }

    /// Inserts or replaces a key; keys keep their first insertion position.
    pub fn set<T: Serialize>(&mut self, key: &str, value: T) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.doc.insert(key.into(), v);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.doc.get(key)
    }

    pub fn document(&self) -> &Map<String, Value> {
        &self.doc
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.doc).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_map(&self.doc, 0, &mut out);
        out
    }
}

const MAX_CELL: usize = 40;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Arrays of flat objects with one key set and short cells render as
/// aligned tables.
fn table(a: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let first = a.first()?.as_object()?;
    let header: Vec<String> = first.keys().cloned().collect();
    let mut rows = Vec::new();
    for row in a {
        let obj = row.as_object()?;
        if obj.keys().ne(header.iter()) {
            return None;
        }
        rows.push(obj.values().map(scalar).collect::<Option<Vec<_>>>()?);
    }
    if rows.iter().flatten().any(|c| c.chars().count() > MAX_CELL) {
        return None;
    }
    Some((header, rows))
}

fn render_map(m: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for (k, v) in m {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{k}: {s}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{k}:\n"));
        match v {
            Value::Object(inner) => render_map(inner, indent + 1, out),
            Value::Array(a) => render_array(a, indent + 1, out),
            _ => unreachable!("scalars handled above"),
        }
    }
}

fn render_array(a: &[Value], indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    if let Some((header, rows)) = table(a) {
        let widths: Vec<usize> = (0..header.len())
            .map(|j| rows.iter().map(|r| r[j].chars().count()).chain([header[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            format!("{pad}{}\n", parts.join("  ").trim_end())
        };
        out.push_str(&line(&header));
        for r in &rows {
            out.push_str(&line(r));
        }
        return;
    }
    for item in a {
        match item {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}-\n"));
                render_map(inner, indent + 1, out);
            }
            Value::Array(inner) if scalar(item).is_none() => {
                out.push_str(&format!("{pad}-\n"));
                render_array(inner, indent + 1, out);
            }
            other => out.push_str(&format!("{pad}- {}\n", scalar(other).unwrap_or_default())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_and_json_agree_on_keys() {
        let mut r = Report::new("unfold");
        r.set("form", "x*dy").set("integrable", true).set("witness", Value::Null);
        r.set("slices", json!([{"degree": 0, "dim_I": 1}, {"degree": 10, "dim_I": 0}]));
        r.set("ideal", vec!["x", "y"]);
        r.set("integrable", false);
        let text = r.to_text();
        assert_eq!(
            text,
            "command: unfold\nform: x*dy\nintegrable: no\nwitness: -\nslices:\n  degree  dim_I\n       0      1\n      10      0\nideal: [x, y]\n"
        );
        let back: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.as_object().unwrap().keys().collect::<Vec<_>>(), ["command", "form", "integrable", "witness", "slices", "ideal"]);
    }

    #[test]
    fn nested_lists() {
        let mut r = Report::new("classify");
        r.set("verdicts", json!([{"point": ["0", "0"], "jet": [["1", "0"], ["0", "1"]]}]));
        assert_eq!(r.to_text(), "command: classify\nverdicts:\n  -\n    point: [0, 0]\n    jet:\n      - [1, 0]\n      - [0, 1]\n");
    }
}
