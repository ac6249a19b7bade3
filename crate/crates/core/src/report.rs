//! Serialization helpers: extended reals in JSON, CSV and TSV writers.
//!
//! JSON has no infinities, and `serde_json` would turn them into `null`. Fields
//! that may hold `±inf` use [`ext`] and friends, which emit the strings
//! `"+inf"`, `"-inf"` or `"nan"` instead.

use std::fmt::Write as _;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ext(pub f64);

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_finite() {
            s.serialize_f64(v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if v > 0.0 {
            s.serialize_str("+inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

pub fn ext<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    Ext(*v).serialize(s)
}

pub fn ext_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => Ext(*v).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn ext_seq<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Ext(*x))?;
    }
    seq.end()
}

pub fn ext_map<S, K>(m: &std::collections::BTreeMap<K, Vec<f64>>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    K: Serialize,
{
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        let row: Vec<Ext> = v.iter().map(|x| Ext(*x)).collect();
        map.serialize_entry(k, &row)?;
    }
    map.end()
}

/// Formats a value for CSV/TSV, using the same tokens as the JSON helpers.
pub fn fmt_ext(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "+inf".into()
    } else {
        "-inf".into()
    }
}

/// CSV with a header row; the first column is the step index.
pub fn indexed_csv(header: &[&str], columns: &[&[f64]]) -> String {
    let rows = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..rows {
        let _ = write!(out, "{i}");
        for c in columns {
            out.push(',');
            if let Some(v) = c.get(i) {
                out.push_str(&fmt_ext(*v));
            }
        }
        out.push('\n');
    }
    out
}

/// Two-column TSV (`n`, value) for external plotting.
pub fn plot_tsv(values: &[f64]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{i}\t{}", fmt_ext(*v));
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        #[serde(serialize_with = "ext")]
        a: f64,
        #[serde(serialize_with = "ext_seq")]
        b: Vec<f64>,
    }

    #[test]
    fn infinities_survive_json() {
        let s = serde_json::to_string(&Row { a: f64::INFINITY, b: vec![1.5, f64::NEG_INFINITY] }).unwrap();
        assert_eq!(s, r#"{"a":"+inf","b":[1.5,"-inf"]}"#);
    }

    #[test]
    fn csv_and_tsv_shapes() {
        let csv = indexed_csv(&["n", "norm"], &[&[1.0, f64::INFINITY]]);
        assert_eq!(csv, "n,norm\n0,1e0\n1,+inf\n");
        assert_eq!(plot_tsv(&[0.5]), "0\t5e-1\n");
    }
}
