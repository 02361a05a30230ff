//! Formal composites of generators of homotopy groups of spheres.

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// One factor of a composite: a catalog generator suspended `susp` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub name: String,
    pub susp: u32,
}

/// A composite `g1 ∘ g2 ∘ … ∘ gm : S^dom → S^cod`.
///
/// Factors are stored outermost first, so the last factor is applied first
/// and its source sphere is `S^dom`. An empty word is the identity `ι_dom`.
/// Each factor carries its own suspension count; a uniform suspension of the
/// whole class raises every count by the same amount.
///
/// Values are built through [`Catalog::class`](crate::Catalog::class) or
/// [`CompositionClass::identity`], which guarantee chained dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompositionClass {
    dom: u32,
    cod: u32,
    factors: Vec<Factor>,
}

impl CompositionClass {
    /// `ι_k`. Panics on `k = 0`.
    pub fn identity(k: u32) -> Self {
        assert!(k >= 1, "identity of S^0 is not a sphere class here");
        CompositionClass {
            dom: k,
            cod: k,
            factors: Vec::new(),
        }
    }

    pub(crate) fn from_parts(dom: u32, cod: u32, factors: Vec<Factor>) -> Self {
        debug_assert!(!factors.is_empty() || dom == cod);
        CompositionClass { dom, cod, factors }
    }

    pub fn dom(&self) -> u32 {
        self.dom
    }

    pub fn cod(&self) -> u32 {
        self.cod
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// The suspension applied uniformly to every factor.
    pub fn susp_applied(&self) -> u32 {
        self.factors.iter().map(|f| f.susp).min().unwrap_or(0)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CompositionClass) -> Result<CompositionClass> {
        if inner.cod != self.dom {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {self} : S^{} -> S^{} after {inner} : S^{} -> S^{}",
                self.dom, self.cod, inner.dom, inner.cod
            )));
        }
        let mut factors = self.factors.clone();
        factors.extend(inner.factors.iter().cloned());
        Ok(CompositionClass {
            dom: inner.dom,
            cod: self.cod,
            factors,
        })
    }

    /// `Σ^j self`.
    pub fn suspend(&self, j: u32) -> CompositionClass {
        CompositionClass {
            dom: self.dom + j,
            cod: self.cod + j,
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    name: f.name.clone(),
                    susp: f.susp + j,
                })
                .collect(),
        }
    }
}

/// Renders `g1*g2*…*gm^Σj`; factors with differing suspension counts are
/// rendered individually as `g^Σk`.
impl fmt::Display for CompositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "iota_{}", self.dom);
        }
        let uniform = self.factors.iter().all(|x| x.susp == self.factors[0].susp);
        let names = |f: &mut fmt::Formatter<'_>, with_susp: bool| -> fmt::Result {
            for (i, x) in self.factors.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                f.write_str(&x.name)?;
                if with_susp && x.susp > 0 {
                    write!(f, "^Σ{}", x.susp)?;
                }
            }
            Ok(())
        };
        if uniform {
            names(f, false)?;
            let s = self.factors[0].susp;
            if s > 0 {
                write!(f, "^Σ{s}")?;
            }
            Ok(())
        } else {
            names(f, true)
        }
    }
}

/// Result of a Hopf-invariant computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MaybeClass {
    Zero { dom: u32, cod: u32 },
    Class { class: CompositionClass },
    Unknown,
}

impl MaybeClass {
    pub fn class(&self) -> Option<&CompositionClass> {
        match self {
            MaybeClass::Class { class } => Some(class),
            _ => None,
        }
    }

    pub fn suspend(&self, j: u32) -> MaybeClass {
        match self {
            MaybeClass::Zero { dom, cod } => MaybeClass::Zero {
                dom: dom + j,
                cod: cod + j,
            },
            MaybeClass::Class { class } => MaybeClass::Class {
                class: class.suspend(j),
            },
            MaybeClass::Unknown => MaybeClass::Unknown,
        }
    }
}

impl fmt::Display for MaybeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaybeClass::Zero { .. } => f.write_str("0"),
            MaybeClass::Class { class } => write!(f, "{class}"),
            MaybeClass::Unknown => f.write_str("?"),
        }
    }
}
