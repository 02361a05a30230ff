//! Cell-count and cup-length bounds, computed without the table.

use super::{Alpha, BundleSpec, CatReport, CatValue, Engine};
use crate::algebra;
use crate::error::Result;
use crate::tri::TriState;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpaceBounds {
    pub lower: u32,
    pub upper: u32,
}

impl SpaceBounds {
    pub fn contains(&self, v: &CatValue) -> bool {
        let (lo, hi) = v.interval();
        self.lower <= lo && hi <= self.upper
    }
}

impl fmt::Display for SpaceBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Bounds for `Q`, `E` and their products with `S^n` (any `n >= 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    #[serde(rename = "Q")]
    pub q: SpaceBounds,
    #[serde(rename = "E")]
    pub e: SpaceBounds,
    #[serde(rename = "QxSn")]
    pub q_x_sn: SpaceBounds,
    #[serde(rename = "ExSn")]
    pub e_x_sn: SpaceBounds,
}

impl Bounds {
    /// Report cells falling outside these bounds.
    pub fn violations(&self, report: &CatReport) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |name: &str, b: &SpaceBounds, v: &CatValue| {
            if !b.contains(v) {
                out.push(format!("{name} = {v} outside {b}"));
            }
        };
        check("cat(Q)", &self.q, &report.cat_q);
        check("cat(E)", &self.e, &report.cat_e);
        for v in report.cat_q_x_sn.values() {
            check("cat(Q×S^n)", &self.q_x_sn, v);
        }
        for v in report.cat_e_x_sn.values() {
            check("cat(E×S^n)", &self.e_x_sn, v);
        }
        out
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q:     {}", self.q)?;
        writeln!(f, "E:     {}", self.e)?;
        writeln!(f, "Q×S^n: {}", self.q_x_sn)?;
        write!(f, "E×S^n: {}", self.e_x_sn)
    }
}

/// cat <= dim / (conn + 1), and cat <= number of positive cells.
fn upper(cells: u32, dim: u32, first_cell: u32) -> u32 {
    cells.min(dim / first_cell)
}

pub(super) fn bounds(engine: &Engine<'_>, spec: &BundleSpec) -> Result<Bounds> {
    let (r, t) = (spec.r(), spec.t());
    let first_cell = r.min(t + 1);

    if spec.is_unit() {
        // Q is a disc and E is S^(2r+1)
        let q = SpaceBounds { lower: 0, upper: 0 };
        let e = SpaceBounds { lower: 1, upper: 1 };
        return Ok(Bounds {
            q,
            e,
            q_x_sn: SpaceBounds { lower: 1, upper: 1 },
            e_x_sn: SpaceBounds { lower: 2, upper: 2 },
        });
    }

    let null = match spec.alpha() {
        Alpha::Degree(d) => *d == 0,
        Alpha::Word(c) => algebra::is_trivial(engine.catalog(), c)? == TriState::Zero,
    } || t < r;

    let hopf_square = t + 1 == 2 * r && engine.certified_hopf_nonzero(spec)?;

    // cup length over a suitable field
    let q_cup = if hopf_square { 2 } else { 1 };
    let e_cup = if hopf_square { 3 } else { 2 };

    let mut q_lower = q_cup;
    if r == 1 && t == 1 && spec.degree().is_some_and(|d| d.abs() >= 2) {
        // finite nontrivial fundamental group rules out a co-H space
        q_lower = 2;
    }
    let mut q_upper = upper(2, t + 1, first_cell);
    if null {
        q_upper = q_upper.min(1);
    }
    let e_upper = upper(3, r + t + 1, first_cell);

    let q = SpaceBounds {
        lower: q_lower,
        upper: q_upper,
    };
    let e = SpaceBounds {
        lower: e_cup,
        upper: e_upper,
    };
    Ok(Bounds {
        q,
        e,
        q_x_sn: SpaceBounds {
            lower: q_lower.max(q_cup + 1),
            upper: q_upper + 1,
        },
        e_x_sn: SpaceBounds {
            lower: e_cup + 1,
            upper: e_upper + 1,
        },
    })
}
