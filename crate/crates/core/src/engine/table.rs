//! Rows of the classification table.

use serde::{Serialize, Serializer};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    /// r = 1, t = 0
    R1,
    /// r = 1, t = 1, α = ±1
    R2,
    /// r = 1, t = 1, α = 0
    R3,
    /// r = 1, t = 1, α ≠ 0, ±1
    R4,
    /// r = 1, t > 1
    R5,
    /// r > 1, t < r
    R6,
    /// r > 1, t = r, α = ±1
    R7,
    /// r > 1, t = r, α ≠ ±1
    R8,
    /// r > 1, t > r, H1(α) = 0
    R9,
    /// r > 1, t > r, H1(α) ≠ 0 and Σ^r H1(α) = 0
    R10,
    /// r > 1, t > r, Σ^r H1(α) ≠ 0
    R11,
}

/// A cell that is a fixed number or one of the two footnoted rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Cell {
    Value(u32),
    /// `2` when `Σ^n H1(α) = 0`, `3` when `Σ^(n+1) H1(α) ≠ 0`.
    FootnoteQ,
    /// `3` when `Σ^(r+n) H1(α) = 0`, `4` when `Σ^(r+n+1) h2(α) ≠ 0`.
    FootnoteE,
}

/// The four cells of a row: `Q × S^n`, `Q`, `E`, `E × S^n`.
pub(crate) struct RowCells {
    pub q_x_sn: Cell,
    pub q: u32,
    pub e: u32,
    pub e_x_sn: Cell,
}

impl Row {
    pub const ALL: [Row; 11] = [
        Row::R1,
        Row::R2,
        Row::R3,
        Row::R4,
        Row::R5,
        Row::R6,
        Row::R7,
        Row::R8,
        Row::R9,
        Row::R10,
        Row::R11,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Row::R1 => "R1",
            Row::R2 => "R2",
            Row::R3 => "R3",
            Row::R4 => "R4",
            Row::R5 => "R5",
            Row::R6 => "R6",
            Row::R7 => "R7",
            Row::R8 => "R8",
            Row::R9 => "R9",
            Row::R10 => "R10",
            Row::R11 => "R11",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Row::R1 => "r=1, t=0",
            Row::R2 => "r=1, t=1, α=±1",
            Row::R3 => "r=1, t=1, α=0",
            Row::R4 => "r=1, t=1, α≠0,±1",
            Row::R5 => "r=1, t>1",
            Row::R6 => "r>1, t<r",
            Row::R7 => "r>1, t=r, α=±1",
            Row::R8 => "r>1, t=r, α≠±1",
            Row::R9 => "r>1, t>r, H1(α)=0",
            Row::R10 => "r>1, t>r, H1(α)≠0 & Σ^r H1(α)=0",
            Row::R11 => "r>1, t>r, Σ^r H1(α)≠0",
        }
    }

    pub(crate) fn cells(self) -> RowCells {
        use Cell::*;
        let plain = |a, b, c, d| RowCells {
            q_x_sn: Value(a),
            q: b,
            e: c,
            e_x_sn: Value(d),
        };
        match self {
            Row::R2 | Row::R7 => plain(1, 0, 1, 2),
            Row::R4 => plain(3, 2, 3, 4),
            Row::R1 | Row::R3 | Row::R5 | Row::R6 | Row::R8 | Row::R9 => plain(2, 1, 2, 3),
            Row::R10 => RowCells {
                q_x_sn: FootnoteQ,
                q: 2,
                e: 2,
                e_x_sn: Value(3),
            },
            Row::R11 => RowCells {
                q_x_sn: FootnoteQ,
                q: 2,
                e: 3,
                e_x_sn: FootnoteE,
            },
        }
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The matching row, or every row the catalog cannot rule out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowSelection {
    Exact(Row),
    Candidates(Vec<Row>),
}

impl RowSelection {
    pub(crate) fn from_rows(mut rows: Vec<Row>) -> Self {
        rows.sort();
        rows.dedup();
        if rows.len() == 1 {
            RowSelection::Exact(rows[0])
        } else {
            RowSelection::Candidates(rows)
        }
    }

    pub fn rows(&self) -> &[Row] {
        match self {
            RowSelection::Exact(r) => std::slice::from_ref(r),
            RowSelection::Candidates(rs) => rs,
        }
    }

    pub fn exact(&self) -> Option<Row> {
        match self {
            RowSelection::Exact(r) => Some(*r),
            RowSelection::Candidates(_) => None,
        }
    }

    pub fn id(&self) -> String {
        self.rows()
            .iter()
            .map(|r| r.id())
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for RowSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowSelection::Exact(r) => write!(f, "{} ({})", r.id(), r.label()),
            RowSelection::Candidates(rs) => {
                let labels: Vec<String> = rs
                    .iter()
                    .map(|r| format!("{} ({})", r.id(), r.label()))
                    .collect();
                write!(f, "undecided between {}", labels.join(", "))
            }
        }
    }
}

impl Serialize for RowSelection {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.id())
    }
}
