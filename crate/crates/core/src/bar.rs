//! Bar-resolution differential on `H_*(ΩS^r; Z)^{⊗(m+1)}`.
//!
//! `H_*(ΩS^r; Z) = Z[x]` with `|x| = r - 1`, so a basis tensor
//! `x^a0 ⊗ … ⊗ x^am` is just its exponent tuple. The differential merges
//! adjacent factors with alternating signs:
//!
//! ```text
//! ∂(x^a0 ⊗ … ⊗ x^am) = Σ_{i=1..m} (-1)^i x^a0 ⊗ … ⊗ x^(a(i-1)+ai) ⊗ … ⊗ x^am
//! ```
//!
//! Degrees are `(Σ ai)(r - 1)`; the suspension shift between the Ganea
//! filtration and the smash powers is common to source and target and is
//! not stored.

use crate::error::{Error, Result};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// `x^a0 ⊗ x^a1 ⊗ … ⊗ x^am`, all exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord(Vec<u32>);

impl TensorWord {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(Error::Precondition(format!(
                "tensor word needs at least one factor and positive exponents, got {exponents:?}"
            )));
        }
        Ok(TensorWord(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of tensor signs, `m`.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Homological degree for `ΩS^r`.
    pub fn degree(&self, r: u32) -> u32 {
        self.weight() * r.saturating_sub(1)
    }

    /// Merge factors `i - 1` and `i`, for `1 <= i <= length`.
    pub fn merged(&self, i: usize) -> TensorWord {
        let mut e = Vec::with_capacity(self.0.len() - 1);
        e.extend_from_slice(&self.0[..i - 1]);
        e.push(self.0[i - 1] + self.0[i]);
        e.extend_from_slice(&self.0[i + 1..]);
        TensorWord(e)
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            match a {
                1 => f.write_str("x")?,
                a => write!(f, "x^{a}")?,
            }
        }
        Ok(())
    }
}

/// Integer linear combination of tensor words, kept in canonical form:
/// lexicographic order of exponent tuples, no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalSum(BTreeMap<TensorWord, i64>);

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn term(coeff: i64, word: TensorWord) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(coeff, word);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, TensorWord)>) -> Self {
        let mut s = FormalSum::zero();
        for (c, w) in terms {
            s.add_term(c, w);
        }
        s
    }

    pub fn add_term(&mut self, coeff: i64, word: TensorWord) {
        if coeff == 0 {
            return;
        }
        match self.0.entry(word) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.add_term(*c, w.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, i64)> {
        self.0.iter().map(|(w, c)| (w, *c))
    }

    pub fn coefficient(&self, word: &TensorWord) -> i64 {
        self.0.get(word).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Linear extension of a map on basis words.
    pub fn map_linear(&self, f: impl Fn(&TensorWord) -> FormalSum) -> FormalSum {
        let mut out = FormalSum::zero();
        for (w, c) in &self.0 {
            for (v, d) in f(w).0 {
                out.add_term(c * d, v);
            }
        }
        out
    }

    pub fn differential(&self) -> FormalSum {
        self.map_linear(bar_differential)
    }

    /// Drop every word whose first exponent is 1: the basis of
    /// `(ΩS^r / S^(r-1)) ∧ ΩS^r` has first exponent at least 2.
    pub fn project_quotient(&self) -> FormalSum {
        FormalSum(
            self.0
                .iter()
                .filter(|(w, _)| w.0[0] >= 2)
                .map(|(w, c)| (w.clone(), *c))
                .collect(),
        )
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.0.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if i > 0 {
                f.write_str(" ")?;
            }
            match c.abs() {
                1 => write!(f, "{w}")?,
                n => write!(f, "{n}·{w}")?,
            }
        }
        Ok(())
    }
}

pub fn bar_differential(w: &TensorWord) -> FormalSum {
    let mut out = FormalSum::zero();
    for i in 1..=w.length() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.add_term(sign, w.merged(i));
    }
    out
}

/// `∂'(x ⊗ x^j ⊗ x^k)`: the bar differential followed by the projection to
/// the quotient basis. Equals `-x^(j+1) ⊗ x^k`.
pub fn quotient_differential(w: &TensorWord) -> Result<FormalSum> {
    quotient_differential_with(w, bar_differential)
}

pub fn quotient_differential_with(
    w: &TensorWord,
    differential: impl Fn(&TensorWord) -> FormalSum,
) -> Result<FormalSum> {
    match w.exponents() {
        [1, j, k] if *j >= 1 && *k >= 1 => Ok(differential(w).project_quotient()),
        other => Err(Error::Precondition(format!(
            "quotient differential is defined on x⊗x^j⊗x^k, got exponents {other:?}"
        ))),
    }
}

/// Source basis `{x ⊗ x^j ⊗ x^k}` of weight `n`.
pub fn source_basis(weight: u32) -> Vec<TensorWord> {
    (1..weight.saturating_sub(1))
        .map(|j| TensorWord(vec![1, j, weight - 1 - j]))
        .collect()
}

/// Target basis `{x^j ⊗ x^k : j >= 2}` of weight `n`.
pub fn target_basis(weight: u32) -> Vec<TensorWord> {
    (2..weight)
        .map(|j| TensorWord(vec![j, weight - j]))
        .collect()
}

/// Matrix of the quotient differential in one weight; columns are the
/// source basis, rows the target basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub degree: u32,
    pub sources: Vec<TensorWord>,
    pub targets: Vec<TensorWord>,
    /// `entries[row][col]`.
    pub entries: Vec<Vec<i64>>,
}

impl DifferentialMatrix {
    /// Square with exactly one `±1` in every row and column.
    pub fn is_signed_permutation(&self) -> bool {
        let n = self.sources.len();
        if self.targets.len() != n {
            return false;
        }
        let unit_line = |vals: &mut dyn Iterator<Item = i64>| {
            let mut units = 0;
            for v in vals {
                match v {
                    0 => {}
                    1 | -1 => units += 1,
                    _ => return false,
                }
            }
            units == 1
        };
        self.entries
            .iter()
            .all(|row| unit_line(&mut row.iter().copied()))
            && (0..n).all(|c| unit_line(&mut self.entries.iter().map(|row| row[c])))
    }
}

impl fmt::Display for DifferentialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "degree {}: {} x {}",
            self.degree,
            self.targets.len(),
            self.sources.len()
        )?;
        for (t, row) in self.targets.iter().zip(&self.entries) {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>2}")).collect();
            writeln!(f, "  {:<12} [{}]", t.to_string(), cells.join(" "))?;
        }
        Ok(())
    }
}

/// Quotient-differential matrices for every weight whose degree is at most
/// `degree_bound`.
pub fn differential_matrices(
    degree_bound: u32,
    r: u32,
    differential: impl Fn(&TensorWord) -> FormalSum,
) -> Vec<DifferentialMatrix> {
    let step = r.saturating_sub(1).max(1);
    let max_weight = degree_bound / step;
    (3..=max_weight)
        .map(|weight| {
            let sources = source_basis(weight);
            let targets = target_basis(weight);
            let mut entries = vec![vec![0i64; sources.len()]; targets.len()];
            for (c, s) in sources.iter().enumerate() {
                let image = quotient_differential_with(s, &differential)
                    .expect("source basis has shape (1, j, k)");
                for (w, coeff) in image.terms() {
                    if let Some(row) = targets.iter().position(|t| t == w) {
                        entries[row][c] = coeff;
                    }
                }
            }
            DifferentialMatrix {
                degree: weight * step,
                sources,
                targets,
                entries,
            }
        })
        .collect()
}

/// Whether the quotient differential is a signed bijection of bases in
/// every degree up to `degree_bound`.
pub fn iso_check(degree_bound: u32, r: u32) -> bool {
    iso_check_with(degree_bound, r, bar_differential)
}

pub fn iso_check_with(
    degree_bound: u32,
    r: u32,
    differential: impl Fn(&TensorWord) -> FormalSum,
) -> bool {
    differential_matrices(degree_bound, r, differential)
        .iter()
        .all(DifferentialMatrix::is_signed_permutation)
}

/// All words of length `0..=max_length` with exponents in `1..=max_exponent`.
pub fn all_words(max_length: usize, max_exponent: u32) -> Vec<TensorWord> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u32>> = (1..=max_exponent).map(|a| vec![a]).collect();
    for _ in 0..=max_length {
        out.extend(layer.iter().cloned().map(TensorWord));
        layer = layer
            .iter()
            .flat_map(|w| {
                (1..=max_exponent).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Words `w` (from [`all_words`]) with `∂∂w ≠ 0`.
pub fn square_zero_violations(
    max_length: usize,
    max_exponent: u32,
    differential: impl Fn(&TensorWord) -> FormalSum,
) -> Vec<TensorWord> {
    all_words(max_length, max_exponent)
        .into_iter()
        .filter(|w| !differential(w).map_linear(&differential).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(e: &[u32]) -> TensorWord {
        TensorWord::new(e.to_vec()).unwrap()
    }

    #[test]
    fn low_length_differentials() {
        assert_eq!(
            bar_differential(&tw(&[1, 1])),
            FormalSum::term(-1, tw(&[2]))
        );
        assert_eq!(
            bar_differential(&tw(&[1, 1, 1])),
            FormalSum::from_terms([(-1, tw(&[2, 1])), (1, tw(&[1, 2]))])
        );
        assert!(bar_differential(&tw(&[5])).is_zero());
    }

    #[test]
    fn abc_square_cancels() {
        let d = bar_differential(&tw(&[2, 3, 4]));
        assert_eq!(
            d,
            FormalSum::from_terms([(-1, tw(&[5, 4])), (1, tw(&[2, 7]))])
        );
        assert!(d.differential().is_zero());
    }

    #[test]
    fn rejects_bad_words() {
        assert!(TensorWord::new(vec![]).is_err());
        assert!(TensorWord::new(vec![1, 0]).is_err());
    }

    #[test]
    fn quotient_corollary_values() {
        assert_eq!(
            quotient_differential(&tw(&[1, 1, 1])).unwrap(),
            FormalSum::term(-1, tw(&[2, 1]))
        );
        assert_eq!(
            quotient_differential(&tw(&[1, 3, 2])).unwrap(),
            FormalSum::term(-1, tw(&[4, 2]))
        );
        assert!(quotient_differential(&tw(&[2, 1, 1])).is_err());
        assert!(quotient_differential(&tw(&[1, 1])).is_err());
        assert!(FormalSum::term(3, tw(&[1, 4])).project_quotient().is_zero());
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let mut s = FormalSum::term(2, tw(&[1, 2]));
        s.add_term(-2, tw(&[1, 2]));
        assert!(s.is_zero());
        assert_eq!(s, FormalSum::zero());
        let a = FormalSum::from_terms([(1, tw(&[3])), (2, tw(&[1, 1]))]);
        let b = FormalSum::from_terms([(2, tw(&[1, 1])), (1, tw(&[3]))]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "2·x⊗x + x^3");
    }

    #[test]
    fn small_iso_cases() {
        assert!(iso_check(1, 2));
        assert!(differential_matrices(1, 2, bar_differential).is_empty());
        assert!(iso_check(12, 3));
        let m = &differential_matrices(3, 2, bar_differential)[0];
        assert_eq!(m.entries, vec![vec![-1]]);
        assert!(m.to_string().contains("x^2⊗x"));
    }
}
