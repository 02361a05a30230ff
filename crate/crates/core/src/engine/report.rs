//! Category values, reports and their renderings.

use crate::tri::{TriState, Truth};
use serde::Serialize;
use std::fmt;

/// An L-S category as far as it is decided.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CatValue {
    Exact {
        value: u32,
    },
    /// Somewhere in `lo..=hi`, `lo < hi`.
    Range {
        lo: u32,
        hi: u32,
    },
    /// `if_true` when `predicate` holds, else `if_false`; `state` is never
    /// decided (decided conditionals collapse to `Exact`).
    Conditional {
        predicate: String,
        if_true: u32,
        if_false: u32,
        state: Truth,
    },
}

impl CatValue {
    pub fn exact(value: u32) -> Self {
        CatValue::Exact { value }
    }

    /// Interval `lo..=hi`, collapsing to `Exact` when `lo == hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        if lo == hi {
            CatValue::exact(lo)
        } else {
            CatValue::Range {
                lo: lo.min(hi),
                hi: lo.max(hi),
            }
        }
    }

    pub fn conditional(
        predicate: impl Into<String>,
        if_true: u32,
        if_false: u32,
        state: Truth,
    ) -> Self {
        match state {
            Truth::True => CatValue::exact(if_true),
            Truth::False => CatValue::exact(if_false),
            Truth::Unknown if if_true == if_false => CatValue::exact(if_true),
            Truth::Unknown => CatValue::Conditional {
                predicate: predicate.into(),
                if_true,
                if_false,
                state,
            },
        }
    }

    /// Smallest and largest possible values.
    pub fn interval(&self) -> (u32, u32) {
        match *self {
            CatValue::Exact { value } => (value, value),
            CatValue::Range { lo, hi } => (lo, hi),
            CatValue::Conditional {
                if_true, if_false, ..
            } => (if_true.min(if_false), if_true.max(if_false)),
        }
    }

    pub fn as_exact(&self) -> Option<u32> {
        match self {
            CatValue::Exact { value } => Some(*value),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.as_exact().is_some()
    }

    /// Could the value be `v`?
    pub fn admits(&self, v: u32) -> bool {
        let (lo, hi) = self.interval();
        match self {
            CatValue::Conditional {
                if_true, if_false, ..
            } => v == *if_true || v == *if_false,
            _ => lo <= v && v <= hi,
        }
    }

    /// Smallest value covering both.
    pub fn union(&self, other: &CatValue) -> CatValue {
        if self == other {
            return self.clone();
        }
        let (a, b) = self.interval();
        let (c, d) = other.interval();
        CatValue::range(a.min(c), b.max(d))
    }
}

impl fmt::Display for CatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatValue::Exact { value } => write!(f, "{value}"),
            CatValue::Range { lo, hi } if hi - lo == 1 => write!(f, "{lo} or {hi}"),
            CatValue::Range { lo, hi } => write!(f, "{lo}..{hi}"),
            CatValue::Conditional {
                predicate,
                if_true,
                if_false,
                ..
            } => write!(f, "{if_true} if {predicate}, else {if_false}"),
        }
    }
}

/// Values of a product column for `n >= from` up to `to` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NSegment {
    pub from: u32,
    pub to: Option<u32>,
    pub value: CatValue,
}

/// `cat(X × S^n)`, either at a requested `n` or as a function of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ProductCat {
    At {
        n: u32,
        value: CatValue,
    },
    /// Same value for every `n >= 1`.
    All {
        value: CatValue,
    },
    ByN {
        segments: Vec<NSegment>,
    },
}

impl ProductCat {
    /// Builds from values at `n = 1, 2, …`; the last value holds for all
    /// larger `n`.
    pub fn from_sequence(values: Vec<CatValue>) -> Self {
        let mut segments: Vec<NSegment> = Vec::new();
        for (i, v) in values.into_iter().enumerate() {
            let n = i as u32 + 1;
            match segments.last_mut() {
                Some(seg) if seg.value == v => seg.to = Some(n),
                _ => segments.push(NSegment {
                    from: n,
                    to: Some(n),
                    value: v,
                }),
            }
        }
        if let Some(last) = segments.last_mut() {
            last.to = None;
        }
        if segments.len() == 1 {
            ProductCat::All {
                value: segments.remove(0).value,
            }
        } else {
            ProductCat::ByN { segments }
        }
    }

    /// All values this column takes.
    pub fn values(&self) -> Vec<&CatValue> {
        match self {
            ProductCat::At { value, .. } | ProductCat::All { value } => vec![value],
            ProductCat::ByN { segments } => segments.iter().map(|s| &s.value).collect(),
        }
    }

    /// Value at a particular `n`, when the column covers it.
    pub fn at(&self, n: u32) -> Option<&CatValue> {
        match self {
            ProductCat::At { n: m, value } => (*m == n).then_some(value),
            ProductCat::All { value } => Some(value),
            ProductCat::ByN { segments } => segments
                .iter()
                .find(|s| s.from <= n && s.to.is_none_or(|t| n <= t))
                .map(|s| &s.value),
        }
    }

    pub fn is_decided(&self) -> bool {
        self.values().iter().all(|v| v.is_exact())
    }
}

impl fmt::Display for ProductCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductCat::At { n, value } => write!(f, "{value}  (n = {n})"),
            ProductCat::All { value } => write!(f, "{value}  (all n >= 1)"),
            ProductCat::ByN { segments } => {
                for (i, s) in segments.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    match s.to {
                        Some(t) if t == s.from => write!(f, "n = {}: {}", s.from, s.value)?,
                        Some(t) => write!(f, "n = {}..{}: {}", s.from, t, s.value)?,
                        None => write!(f, "n >= {}: {}", s.from, s.value)?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Citation {
    Line(u32),
    Row(String),
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Citation::Line(l) => write!(f, "facts:{l}"),
            Citation::Row(r) => write!(f, "row {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub condition: String,
    pub state: TriState,
    pub citations: Vec<Citation>,
}

impl TraceEntry {
    pub fn new(condition: impl Into<String>, state: TriState, lines: &[u32]) -> Self {
        TraceEntry {
            condition: condition.into(),
            state,
            citations: lines.iter().map(|&l| Citation::Line(l)).collect(),
        }
    }
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.condition, self.state)?;
        let cites: Vec<String> = self.citations.iter().map(ToString::to_string).collect();
        if !cites.is_empty() {
            write!(f, "  [{}]", cites.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn push_unique(trace: &mut Vec<TraceEntry>, entry: TraceEntry) {
    if !trace.contains(&entry) {
        trace.push(entry);
    }
}
