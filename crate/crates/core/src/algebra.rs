//! Tri-state homotopy algebra over a [`Catalog`]: triviality, co-H detection,
//! the first Hopf invariant `H1` and its stabilization.

use crate::catalog::{Catalog, Evidence, HopfDecl};
use crate::class::{CompositionClass, MaybeClass};
use crate::error::{Error, Result};
use crate::tri::{TriState, Truth};

/// Knobs for Hopf-invariant rewriting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HopfConfig {
    /// Only identify the James-Hopf invariant `h2` with `H1` for maps
    /// `S^k -> S^n` with `k <= 3n - 3`.
    pub metastable_guard: bool,
}

impl Default for HopfConfig {
    fn default() -> Self {
        HopfConfig {
            metastable_guard: true,
        }
    }
}

impl HopfConfig {
    pub fn in_metastable_range(&self, dom: u32, cod: u32) -> bool {
        !self.metastable_guard || dom + 3 <= 3 * cod
    }
}

fn check_known(cat: &Catalog, f: &CompositionClass) -> Result<()> {
    for factor in f.factors() {
        if cat.generator(&factor.name).is_none() {
            return Err(Error::UnknownGenerator(factor.name.clone()));
        }
    }
    Ok(())
}

pub fn is_trivial(cat: &Catalog, f: &CompositionClass) -> Result<TriState> {
    Ok(trivial_evidence(cat, f)?.state)
}

/// [`is_trivial`] with the certifying fact lines.
pub fn trivial_evidence(cat: &Catalog, f: &CompositionClass) -> Result<Evidence> {
    check_known(cat, f)?;
    if f.is_identity() {
        return Ok(Evidence::decided(TriState::Nonzero, Vec::new()));
    }
    // pi_k(S^n) = 0 for k < n, and pi_k(S^1) = 0 for k > 1
    if f.dom() < f.cod() || (f.cod() == 1 && f.dom() > 1) {
        return Ok(Evidence::decided(TriState::Zero, Vec::new()));
    }
    cat.query_evidence(f, 0)
}

/// Triviality of `Σ^j h` for a possibly-unknown class.
pub fn maybe_trivial(cat: &Catalog, h: &MaybeClass, j: u32) -> Result<Evidence> {
    match h {
        MaybeClass::Zero { .. } => Ok(Evidence::decided(TriState::Zero, Vec::new())),
        MaybeClass::Class { class } => trivial_evidence(cat, &class.suspend(j)),
        MaybeClass::Unknown => Ok(Evidence::unknown()),
    }
}

/// Co-H certificate: identities, suspensions and composites of co-H maps.
/// Never a confident `False`.
pub fn is_co_h(cat: &Catalog, f: &CompositionClass) -> Truth {
    co_h_lines(cat, f).map_or(Truth::Unknown, |_| Truth::True)
}

/// Generator lines backing a co-H certificate, if there is one.
pub(crate) fn co_h_lines(cat: &Catalog, f: &CompositionClass) -> Option<Vec<u32>> {
    let mut lines = Vec::new();
    for factor in f.factors() {
        if factor.susp > 0 {
            continue;
        }
        let g = cat.generator(&factor.name)?;
        if !g.is_co_h() {
            return None;
        }
        lines.push(g.line);
    }
    Some(lines)
}

/// Which rewrite rule produced an `H1` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfRule {
    /// Every factor is co-H.
    CoH,
    /// `H1(g∘w) = H1(g)∘w` for a declared `H1(g)` and co-H `w`.
    Naturality,
    NoRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfDerivation {
    pub value: MaybeClass,
    pub rule: HopfRule,
    /// Generator lines the derivation used.
    pub lines: Vec<u32>,
}

/// First Hopf invariant `H1(f) : S^dom -> S^(2 cod - 1)`.
///
/// Rules, in order:
/// 1. a composite of co-H maps has `H1 = 0`;
/// 2. `H1(g∘w) = H1(g)∘w` when `g` is a generator with a declared `H1`
///    inside the metastable range and `w` is co-H;
/// 3. otherwise unknown.
pub fn hopf_h1(cat: &Catalog, cfg: &HopfConfig, f: &CompositionClass) -> Result<HopfDerivation> {
    check_known(cat, f)?;
    if !(f.dom() > f.cod() && f.cod() > 1) {
        return Err(Error::Precondition(format!(
            "H1 needs S^k -> S^n with k > n > 1, got {f} : S^{} -> S^{}",
            f.dom(),
            f.cod()
        )));
    }
    let zero = MaybeClass::Zero {
        dom: f.dom(),
        cod: 2 * f.cod() - 1,
    };
    if let Some(lines) = co_h_lines(cat, f) {
        return Ok(HopfDerivation {
            value: zero,
            rule: HopfRule::CoH,
            lines,
        });
    }

    let (head, rest) = f.factors().split_first().expect("non-identity class");
    let g = cat.generator(&head.name).expect("checked above");
    if head.susp == 0 && cfg.in_metastable_range(g.dom, g.cod) {
        if let Some(decl) = &g.hopf_h1 {
            let w = CompositionClass::from_parts(f.dom(), g.dom, rest.to_vec());
            if let Some(mut lines) = co_h_lines(cat, &w) {
                lines.insert(0, g.line);
                let value = match decl {
                    HopfDecl::Zero => zero,
                    HopfDecl::Class(h) => MaybeClass::Class {
                        class: h.compose(&w)?,
                    },
                };
                return Ok(HopfDerivation {
                    value,
                    rule: HopfRule::Naturality,
                    lines,
                });
            }
        }
    }
    Ok(HopfDerivation {
        value: MaybeClass::Unknown,
        rule: HopfRule::NoRule,
        lines: Vec::new(),
    })
}

/// Triviality of the stabilization `Σ^∞ f`.
pub fn stable_class(cat: &Catalog, f: &CompositionClass) -> Result<TriState> {
    Ok(stable_evidence(cat, f)?.state)
}

pub fn stable_evidence(cat: &Catalog, f: &CompositionClass) -> Result<Evidence> {
    check_known(cat, f)?;
    if f.is_identity() {
        return Ok(Evidence::decided(TriState::Nonzero, Vec::new()));
    }
    if f.dom() < f.cod() {
        return Ok(Evidence::decided(TriState::Zero, Vec::new()));
    }
    cat.stable_evidence(f)
}

pub fn maybe_stable(cat: &Catalog, h: &MaybeClass) -> Result<Evidence> {
    match h {
        MaybeClass::Zero { .. } => Ok(Evidence::decided(TriState::Zero, Vec::new())),
        MaybeClass::Class { class } => stable_evidence(cat, class),
        MaybeClass::Unknown => Ok(Evidence::unknown()),
    }
}
