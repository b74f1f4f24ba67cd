//! CPLEX-style LP text export. Coefficients are written as decimals with 17
//! significant digits, so the export is for cross-checking, not lossless.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use super::{LinearProgram, Relation, Sense};
use crate::rational::{to_decimal, Rational};

const MAX_LINE: usize = 200;

fn number(value: &Rational) -> String {
    to_decimal(value, 17)
}

fn expression(lp: &LinearProgram, terms: &[(usize, Rational)], label: &str) -> String {
    let mut out = format!(" {label}:");
    let mut line_len = out.len();
    let mut first = true;
    for (var, a) in terms.iter().filter(|(_, a)| !a.is_zero()) {
        let sign = if a.is_negative() { " -" } else if first { "" } else { " +" };
        let piece = format!("{sign} {} {}", number(&a.abs()), lp.name(*var));
        if line_len + piece.len() > MAX_LINE {
            out.push_str("\n   ");
            line_len = 3;
        }
        line_len += piece.len();
        out.push_str(&piece);
        first = false;
    }
    if first {
        let _ = write!(out, " 0 {}", lp.name(0));
    }
    out
}

pub fn write_lp_format(lp: &LinearProgram) -> String {
    let mut out = String::from("\\ exported by happylab\n");
    out.push_str(match lp.sense() {
        Sense::Minimize => "Minimize\n",
        Sense::Maximize => "Maximize\n",
    });
    let objective: Vec<(usize, Rational)> =
        lp.objective().iter().cloned().enumerate().collect();
    let _ = writeln!(out, "{}", expression(lp, &objective, "obj"));
    out.push_str("Subject To\n");
    for c in lp.constraints() {
        let relation = match c.relation {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        };
        let _ = writeln!(out, "{} {relation} {}", expression(lp, &c.terms, &c.name), number(&c.rhs));
    }
    out.push_str("Bounds\n");
    for (var, b) in lp.bounds().iter().enumerate() {
        let name = lp.name(var);
        match (&b.lower, &b.upper) {
            (Some(lo), None) if lo.is_zero() => {}
            (Some(lo), None) => {
                let _ = writeln!(out, " {name} >= {}", number(lo));
            }
            (Some(lo), Some(hi)) => {
                let _ = writeln!(out, " {} <= {name} <= {}", number(lo), number(hi));
            }
            (None, None) => {
                let _ = writeln!(out, " {name} free");
            }
            (None, Some(hi)) => {
                let _ = writeln!(out, " -inf <= {name} <= {}", number(hi));
            }
        }
    }
    out.push_str("End\n");
    out
}
