//! Machine-readable run reports.

use std::fmt::Write as _;

use happylab::rational::{format_rational, to_decimal};
use happylab::Rational;
use num_traits::Zero;
use serde::Serialize;

pub const DECIMAL_DIGITS: usize = 12;

/// An exact rational plus a rounded decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Value {
    pub exact: String,
    pub decimal: String,
}

impl From<&Rational> for Value {
    fn from(r: &Rational) -> Self {
        Self { exact: format_rational(r), decimal: to_decimal(r, DECIMAL_DIGITS) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    /// `file:<path>` or the generator spec
    pub source: String,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_labels: usize,
    pub num_uncolored: usize,
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rounding {
    pub theta: Value,
    pub fallback_label: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub instance: InstanceInfo,
    pub problem: String,
    pub algorithm: String,
    pub seed: u64,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_over_exact: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_over_lp: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounding: Option<Rounding>,
    /// 1-based labels
    pub coloring: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// `a / b`, absent when either side is missing or `b` is zero.
pub fn ratio(a: Option<&Rational>, b: Option<&Rational>) -> Option<Value> {
    match (a, b) {
        (Some(a), Some(b)) if !b.is_zero() => Some(Value::from(&(a / b))),
        _ => None,
    }
}

fn pair(v: &Option<Value>) -> [&str; 2] {
    v.as_ref().map_or(["", ""], |v| [v.exact.as_str(), v.decimal.as_str()])
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "source,problem,algorithm,seed,value,value_decimal,lp_value,lp_value_decimal,\
exact_value,exact_value_decimal,value_over_exact,value_over_exact_decimal,exact_over_lp,exact_over_lp_decimal";

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn csv_row(&self) -> String {
        let mut fields = vec![
            csv_field(&self.instance.source),
            self.problem.clone(),
            self.algorithm.clone(),
            self.seed.to_string(),
            self.value.exact.clone(),
            self.value.decimal.clone(),
        ];
        for v in [&self.lp_value, &self.exact_value, &self.value_over_exact, &self.exact_over_lp] {
            fields.extend(pair(v).iter().map(|s| s.to_string()));
        }
        fields.join(",")
    }

    pub fn to_csv(&self) -> String {
        format!("{CSV_HEADER}\n{}\n", self.csv_row())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance   {}", self.instance.source);
        let _ = writeln!(
            out,
            "size       n={} m={} k={} uncolored={} max-degree={}",
            self.instance.num_vertices,
            self.instance.num_edges,
            self.instance.num_labels,
            self.instance.num_uncolored,
            self.instance.max_degree
        );
        let _ = writeln!(out, "problem    {} ({})", self.problem, self.algorithm);
        let _ = writeln!(out, "value      {} ≈ {}", self.value.exact, self.value.decimal);
        let rows = [
            ("lp", &self.lp_value),
            ("exact", &self.exact_value),
            ("value/exact", &self.value_over_exact),
            ("exact/lp", &self.exact_over_lp),
        ];
        for (name, v) in rows {
            if let Some(v) = v {
                let _ = writeln!(out, "{name:<10} {} ≈ {}", v.exact, v.decimal);
            }
        }
        if let Some(r) = &self.rounding {
            let _ = writeln!(out, "theta      {} (fallback label {})", r.theta.decimal, r.fallback_label);
            if let Some(e) = &r.expected_value {
                let _ = writeln!(out, "expected   {} ≈ {}", e.exact, e.decimal);
            }
        }
        let labels: Vec<String> = self.coloring.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "coloring   {}", labels.join(" "));
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed    {ms:.3} ms");
        }
        out
    }
}
