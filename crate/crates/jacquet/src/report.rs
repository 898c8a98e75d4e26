//! Check reports and serialization helpers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::linalg::Q;

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_qvec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn ser_qmat<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A stabilization or window certificate was not reached.
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    /// Pass only if both pass; inconclusive dominates fail.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            (Verdict::Pass, Verdict::Pass) => Verdict::Pass,
            _ => Verdict::Fail,
        }
    }
}

/// A rectangular table for text and CSV output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 input")
    }

    pub fn to_text(&self) -> String {
        let n = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(n) {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                let pad = widths[i] - c.chars().count();
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                if i + 1 < cells.len() {
                    s.extend(std::iter::repeat_n(' ', pad));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

/// One verified statement: what was run, on which inputs, and with what outcome.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub command: String,
    /// Labels of the statements this command checks, from [`crate::cli::MANIFEST`].
    pub checks: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Smallest failing datum; present on every failure.
    pub counterexample: Option<String>,
    pub data: Value,
    #[serde(skip)]
    pub table: Table,
    /// Wall time, reported on stderr only so that output stays reproducible.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn new(command: &str, inputs: BTreeMap<String, String>) -> Self {
        CheckReport {
            command: command.to_string(),
            checks: crate::cli::checks_for(command),
            inputs,
            verdict: Verdict::Pass,
            counterexample: None,
            data: Value::Null,
            table: Table::default(),
            elapsed_ms: 0,
        }
    }

    pub fn with_data<T: Serialize>(mut self, data: &T) -> Self {
        self.data = serde_json::to_value(data).expect("report data serializes");
        self
    }

    /// Records a failure; the first counterexample is kept.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample.into());
        }
    }

    pub fn require(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        if !ok {
            self.fail(counterexample());
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(s, "  {k} = {v}");
        }
        s.push('\n');
        s.push_str(&self.table.to_text());
        s.push('\n');
        let verdict = serde_json::to_value(self.verdict).expect("verdict serializes");
        let _ = writeln!(s, "verdict: {}", verdict.as_str().unwrap_or_default());
        if let Some(c) = &self.counterexample {
            let _ = writeln!(s, "counterexample: {c}");
        }
        s
    }
}

/// Paths at which two JSON documents differ, e.g. `data.weights[3].dim: 1 != 2`.
pub fn json_diff(expected: &Value, actual: &Value) -> Vec<String> {
    let mut out = Vec::new();
    diff_into("", expected, actual, &mut out);
    out
}

fn diff_into(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    let here = if path.is_empty() { "$".to_string() } else { path.to_string() };
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, va) in x {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match y.get(k) {
                    Some(vb) => diff_into(&p, va, vb, out),
                    None => out.push(format!("{p}: missing")),
                }
            }
            for k in y.keys().filter(|k| !x.contains_key(*k)) {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                out.push(format!("{p}: unexpected"));
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                out.push(format!("{here}: length {} != {}", x.len(), y.len()));
            }
            for (i, (va, vb)) in x.iter().zip(y).enumerate() {
                diff_into(&format!("{path}[{i}]"), va, vb, out);
            }
        }
        _ if a != b => out.push(format!("{here}: {a} != {b}")),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdict_combination() {
        assert_eq!(Verdict::Pass.and(Verdict::Fail), Verdict::Fail);
        assert_eq!(Verdict::Fail.and(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
    }

    #[test]
    fn text_table_is_aligned() {
        let mut t = Table::new(&["k", "dim"]);
        t.push(vec!["10".into(), "1".into()]);
        assert_eq!(t.to_text(), "k   dim\n--  ---\n10  1\n");
        assert_eq!(t.to_csv(), "k,dim\n10,1\n");
    }

    #[test]
    fn diff_is_localized() {
        let a = json!({"rows": [{"dim": 1}, {"dim": 2}], "ok": true});
        let mut b = a.clone();
        b["rows"][1]["dim"] = json!(3);
        assert_eq!(json_diff(&a, &b), vec!["rows[1].dim: 2 != 3"]);
        assert!(json_diff(&a, &a).is_empty());
    }
}
