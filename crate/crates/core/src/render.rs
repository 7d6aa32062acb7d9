//! Output records and their text, JSON-lines and DOT renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::classify::classify_submodule;
use crate::error::Result;
use crate::module::Module;

/// One output row. Field order is the serialisation order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Classify {
        instance: String,
        submodule: String,
        size: usize,
        prime: bool,
        one_absorbing: bool,
        two_absorbing: bool,
        prime_witness: Option<String>,
        one_absorbing_witness: Option<String>,
        two_absorbing_witness: Option<String>,
    },
    Radical {
        instance: String,
        operator: String,
        input: String,
        omega: Option<Vec<String>>,
        result: String,
    },
    Multiplication {
        instance: String,
        faithful: bool,
        multiplication: bool,
        witness: Option<String>,
        smith: bool,
        maximal: Vec<String>,
    },
    Check {
        instance: String,
        check: String,
        status: String,
        combos: u64,
        detail: String,
    },
    Suite {
        cells: usize,
        pass: usize,
        fail: usize,
        skipped: usize,
        error: usize,
    },
    Witness {
        instance: String,
        submodule: String,
        a: String,
        b: String,
        m: String,
        a_nonunit: bool,
        b_nonunit: bool,
        abm_in_n: bool,
        residue: String,
        ab_in_residue: bool,
        m_in_n: bool,
        refutes: bool,
    },
    Counterexample {
        claim: String,
        found: bool,
        documented: bool,
        instance: Option<String>,
        submodule: Option<String>,
        detail: Option<String>,
        first_in_order: Option<String>,
        refutations: usize,
        examined: usize,
    },
    Emit {
        instance: String,
        path: String,
        nodes: usize,
    },
}

impl Record {
    fn value(&self) -> serde_json::Map<String, Value> {
        match serde_json::to_value(self).expect("records serialise") {
            Value::Object(map) => map,
            _ => unreachable!("tagged enum serialises to an object"),
        }
    }

    pub fn kind(&self) -> String {
        match self.value().get("kind") {
            Some(Value::String(k)) => k.clone(),
            _ => unreachable!("tag present"),
        }
    }
}

/// Records produced by one statement, plus the lattice diagram when the
/// statement draws one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub records: Vec<Record>,
    pub graph: Option<String>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::Object(_) => v.to_string(),
    }
}

fn table(kind: &str, rows: &[&Record]) -> String {
    let maps: Vec<_> = rows.iter().map(|r| r.value()).collect();
    let headers: Vec<&String> = maps[0].keys().filter(|k| *k != "kind").collect();
    let body: Vec<Vec<String>> = maps
        .iter()
        .map(|m| headers.iter().map(|h| cell(&m[h.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| {
            body.iter()
                .map(|r| r[i].chars().count())
                .chain([h.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ", w = widths[i]);
            }
        }
        s.trim_end().to_string()
    };
    let mut out = format!("[{kind}]\n");
    out.push_str(&line(headers.iter().map(|h| h.as_str()).collect()));
    out.push('\n');
    for r in &body {
        out.push_str(&line(r.iter().map(|c| c.as_str()).collect()));
        out.push('\n');
    }
    out
}

fn section_text(section: &Section) -> String {
    let mut out = String::new();
    let mut i = 0;
    let recs = &section.records;
    while i < recs.len() {
        let kind = recs[i].kind();
        let mut j = i;
        while j < recs.len() && recs[j].kind() == kind {
            j += 1;
        }
        if !out.is_empty() {
            out.push('\n');
        }
        let rows: Vec<&Record> = recs[i..j].iter().collect();
        out.push_str(&table(&kind, &rows));
        i = j;
    }
    out
}

/// Aligned tables, one block per statement, blank-line separated.
pub fn render_text(sections: &[Section]) -> String {
    let blocks: Vec<String> = sections
        .iter()
        .filter(|s| !s.records.is_empty())
        .map(section_text)
        .collect();
    blocks.join("\n")
}

/// One JSON object per line.
pub fn render_records(sections: &[Section]) -> String {
    let mut out = String::new();
    for r in sections.iter().flat_map(|s| &s.records) {
        out.push_str(&serde_json::to_string(r).expect("records serialise"));
        out.push('\n');
    }
    out
}

/// Lattice diagrams where a statement drew one; other output as `//` comments.
pub fn render_dot(sections: &[Section]) -> String {
    let mut out = String::new();
    for s in sections {
        match &s.graph {
            Some(g) => out.push_str(g),
            None => {
                for line in section_text(s).lines() {
                    let _ = writeln!(out, "// {line}");
                }
            }
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of the submodule lattice, bottom to top. Node labels carry
/// the classification flags: P prime, 1A 1-absorbing prime, 2A 2-absorbing.
pub fn lattice_dot(m: &Module) -> Result<String> {
    let subs = m.enumerate_submodules()?;
    let mut out = format!("digraph {} {{\n", quote(&m.description()));
    out.push_str("  // flags: P prime, 1A 1-absorbing prime, 2A 2-absorbing; P => 1A => 2A\n");
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (i, n) in subs.iter().enumerate() {
        let flags = if m.is_proper(n) {
            let v = classify_submodule(m, n)?;
            let f: Vec<&str> = [(v.prime(), "P"), (v.one_absorbing(), "1A"), (v.two_absorbing(), "2A")]
                .iter()
                .filter(|(b, _)| *b)
                .map(|(_, s)| *s)
                .collect();
            if f.is_empty() {
                "-".to_string()
            } else {
                f.join(" ")
            }
        } else {
            "M".to_string()
        };
        let _ = writeln!(
            out,
            "  n{i} [label={}];",
            quote(&format!("{}\\n{}", m.submodule_label(n), flags)).replace("\\\\n", "\\n")
        );
    }
    let below = |a: usize, b: usize| a != b && subs[a].is_subset(&subs[b]);
    for a in 0..subs.len() {
        for b in 0..subs.len() {
            if below(a, b) && !(0..subs.len()).any(|c| below(a, c) && below(c, b)) {
                let _ = writeln!(out, "  n{a} -> n{b};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{build_module, ModuleSpec};
    use crate::ring::Ring;
    use crate::Limits;

    fn rows() -> Vec<Section> {
        vec![Section {
            records: vec![
                Record::Suite {
                    cells: 2,
                    pass: 2,
                    fail: 0,
                    skipped: 0,
                    error: 0,
                },
                Record::Emit {
                    instance: "x".into(),
                    path: "out.dot".into(),
                    nodes: 12,
                },
            ],
            graph: None,
        }]
    }

    #[test]
    fn records_keep_field_order() {
        let r = render_records(&rows());
        assert_eq!(
            r.lines().next().unwrap(),
            r#"{"kind":"suite","cells":2,"pass":2,"fail":0,"skipped":0,"error":0}"#
        );
    }

    #[test]
    fn text_tables_align() {
        let t = render_text(&rows());
        assert_eq!(
            t,
            "[suite]\ncells  pass  fail  skipped  error\n2      2     0     0        0\n\n[emit]\ninstance  path     nodes\nx         out.dot  12\n"
        );
    }

    #[test]
    fn hasse_diagram_of_z30() {
        let m = build_module(&Ring::Integers, &ModuleSpec::Znz(30), &Limits::default()).unwrap();
        let d = lattice_dot(&m).unwrap();
        // Divisor lattice of 30: the Boolean cube with 12 covering edges.
        assert_eq!(d.matches("->").count(), 12);
        assert!(d.contains("label=\"<6>\\n2A\""));
        assert!(d.contains("label=\"<2>\\nP 1A 2A\""));
        assert!(d.contains("label=\"<1>\\nM\""));
    }
}
