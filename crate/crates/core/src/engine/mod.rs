//! Category classification for `E = S^r ∪_α e^(t+1) ∪_ψ e^(r+t+1)`.
//!
//! Everything here is a pure query over an immutable [`Catalog`]. Undecided
//! cells come back as ranges or conditionals together with the predicate
//! that would decide them; nothing is guessed.

mod bounds;
mod report;
mod table;

pub use bounds::{Bounds, SpaceBounds};
pub use report::{CatValue, Citation, NSegment, ProductCat, TraceEntry};
pub use table::{Row, RowSelection};

use crate::algebra::{self, HopfConfig, HopfDerivation, HopfRule};
use crate::catalog::{Catalog, Evidence};
use crate::class::{CompositionClass, MaybeClass};
use crate::error::{Error, Result};
use crate::tri::{TriState, Truth};
use report::push_unique;
use serde::Serialize;
use std::fmt;
use table::Cell;

/// `α = Ψ|S^t` as a degree or as a composite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alpha {
    /// A multiple of the identity (`t = r`, or any `t` when `r = 1`).
    /// `Degree(0)` is the null class and is accepted for every `(r, t)`.
    Degree(i64),
    Word(CompositionClass),
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Degree(d) => write!(f, "deg({d})"),
            Alpha::Word(c) => write!(f, "{c}"),
        }
    }
}

/// An `S^r`-bundle over `S^(t+1)` described by `α : S^t -> S^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec {
    r: u32,
    t: u32,
    alpha: Alpha,
}

impl BundleSpec {
    pub fn new(r: u32, t: u32, alpha: Alpha) -> Result<Self> {
        if r < 1 {
            return Err(Error::Spec("fibre dimension r must be at least 1".into()));
        }
        match &alpha {
            Alpha::Degree(0) => {}
            Alpha::Degree(d) => {
                if !(t == r || r == 1) {
                    return Err(Error::Spec(format!(
                        "deg({d}) needs t = r or r = 1 (got r={r}, t={t}); use a word"
                    )));
                }
                if r == 1 && t >= 2 {
                    return Err(Error::Spec(format!(
                        "pi_{t}(S^1) = 0, so only deg(0) is meaningful (got deg({d}))"
                    )));
                }
            }
            Alpha::Word(c) => {
                if c.dom() != t || c.cod() != r {
                    return Err(Error::Spec(format!(
                        "α = {c} maps S^{} -> S^{}, expected S^{t} -> S^{r}",
                        c.dom(),
                        c.cod()
                    )));
                }
            }
        }
        Ok(BundleSpec { r, t, alpha })
    }

    /// Convenience: `α` given as a catalog word.
    pub fn with_word(cat: &Catalog, r: u32, t: u32, word: &str) -> Result<Self> {
        BundleSpec::new(r, t, Alpha::Word(cat.parse_word(word)?))
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    /// The degree when `α` is a multiple of the identity.
    pub fn degree(&self) -> Option<i64> {
        match &self.alpha {
            Alpha::Degree(d) => Some(*d),
            Alpha::Word(c) if c.is_identity() => Some(1),
            Alpha::Word(_) => None,
        }
    }

    pub(crate) fn is_unit(&self) -> bool {
        self.t == self.r && matches!(self.degree(), Some(1 | -1))
    }

    fn require_stable_range(&self, what: &str) -> Result<()> {
        if self.t > self.r && self.r > 1 {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{what} needs t > r > 1 (got r={}, t={})",
                self.r, self.t
            )))
        }
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={}, t={}, α={}", self.r, self.t, self.alpha)
    }
}

/// A full classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatReport {
    pub row: RowSelection,
    #[serde(rename = "catQxSn")]
    pub cat_q_x_sn: ProductCat,
    #[serde(rename = "catQ")]
    pub cat_q: CatValue,
    #[serde(rename = "catE")]
    pub cat_e: CatValue,
    #[serde(rename = "catExSn")]
    pub cat_e_x_sn: ProductCat,
    pub trace: Vec<TraceEntry>,
}

impl CatReport {
    /// Every cell exact.
    pub fn is_decided(&self) -> bool {
        self.cat_q.is_exact()
            && self.cat_e.is_exact()
            && self.cat_q_x_sn.is_decided()
            && self.cat_e_x_sn.is_decided()
    }

    /// `cat(E)` and `cat(E × S^n)` exact; the `Q` cells may still be open.
    pub fn bundle_decided(&self) -> bool {
        self.cat_e.is_exact() && self.cat_e_x_sn.is_decided()
    }

    /// Cells where `cat(X × S^n) - cat(X) ∈ {0, 1}` is impossible.
    pub fn dichotomy_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, base, prod) in [
            ("Q", &self.cat_q, &self.cat_q_x_sn),
            ("E", &self.cat_e, &self.cat_e_x_sn),
        ] {
            let (c, d) = base.interval();
            for v in prod.values() {
                let (a, b) = v.interval();
                // some y - x in {0, 1} with x in [c, d], y in [a, b]
                let ok = a as i64 - d as i64 <= 1 && b as i64 - c as i64 >= 0;
                if !ok {
                    out.push(format!("cat({name}) = {base} but cat({name} x S^n) = {v}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for CatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "row:        {}", self.row)?;
        writeln!(f, "cat(Q×S^n): {}", self.cat_q_x_sn)?;
        writeln!(f, "cat(Q):     {}", self.cat_q)?;
        writeln!(f, "cat(E):     {}", self.cat_e)?;
        writeln!(f, "cat(E×S^n): {}", self.cat_e_x_sn)?;
        if !self.trace.is_empty() {
            writeln!(f, "trace:")?;
            for t in &self.trace {
                writeln!(f, "  {t}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaneaReport {
    #[serde(rename = "counterexample")]
    pub is_counterexample: Truth,
    /// Least `n >= 1` with `Σ^(n+r) H1(α) = 0` certified.
    pub minimal_n: Option<u32>,
    pub trace: Vec<TraceEntry>,
}

/// `±(î∗1)∘Σ^r H1(α)`, a representative of `H^S_2(ψ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hopf2Expression {
    pub r: u32,
    pub h1: MaybeClass,
}

impl fmt::Display for Hopf2Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.h1 {
            MaybeClass::Unknown => write!(f, "±(î∗1)∘Σ^{}(H1(α)=?)", self.r),
            h => write!(f, "±(î∗1)∘Σ^{}({h})", self.r),
        }
    }
}

/// `H1(α)` for a spec with `t > r > 1`, plus how it was obtained.
struct HopfContext<'c> {
    catalog: &'c Catalog,
    h1: MaybeClass,
    derivation_lines: Vec<u32>,
    rule: HopfRule,
}

impl HopfContext<'_> {
    fn state(&self, j: u32) -> Result<Evidence> {
        algebra::maybe_trivial(self.catalog, &self.h1, j)
    }

    fn entry(&self, j: u32) -> Result<(TriState, TraceEntry)> {
        let ev = self.state(j)?;
        let subject = match j {
            0 => format!("H1(α) = {}", self.h1),
            j => format!("Σ^{j} H1(α) = {}", self.h1.suspend(j)),
        };
        let mut lines = self.derivation_lines.clone();
        lines.extend(&ev.lines);
        Ok((ev.state, TraceEntry::new(subject, ev.state, &lines)))
    }

    fn rule_text(&self) -> &'static str {
        match self.rule {
            HopfRule::CoH => "composite of co-H maps",
            HopfRule::Naturality => "H1(g∘w) = H1(g)∘w for co-H w",
            HopfRule::NoRule => "no rewrite rule applies",
        }
    }
}

/// Query engine over a catalog.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'a> {
    catalog: &'a Catalog,
    config: HopfConfig,
}

impl<'a> Engine<'a> {
    pub fn new(catalog: &'a Catalog) -> Self {
        Engine {
            catalog,
            config: HopfConfig::default(),
        }
    }

    pub fn with_config(catalog: &'a Catalog, config: HopfConfig) -> Self {
        Engine { catalog, config }
    }

    pub fn catalog(&self) -> &'a Catalog {
        self.catalog
    }

    pub fn config(&self) -> HopfConfig {
        self.config
    }

    /// `H1(α)` for `t > r > 1`.
    fn hopf(&self, spec: &BundleSpec) -> Result<HopfContext<'a>> {
        let (h1, rule, lines) = match &spec.alpha {
            Alpha::Degree(_) => (
                MaybeClass::Zero {
                    dom: spec.t,
                    cod: 2 * spec.r - 1,
                },
                HopfRule::CoH,
                Vec::new(),
            ),
            Alpha::Word(c) => {
                let HopfDerivation { value, rule, lines } =
                    algebra::hopf_h1(self.catalog, &self.config, c)?;
                (value, rule, lines)
            }
        };
        Ok(HopfContext {
            catalog: self.catalog,
            h1,
            derivation_lines: lines,
            rule,
        })
    }

    /// Whether `h2(α)` may be read as `H1(α)`.
    fn alpha_metastable(&self, spec: &BundleSpec) -> bool {
        self.config.in_metastable_range(spec.t, spec.r)
    }

    pub fn classify(&self, spec: &BundleSpec, n: Option<u32>) -> Result<CatReport> {
        if n == Some(0) {
            return Err(Error::Spec("n must be at least 1".into()));
        }
        let mut trace = Vec::new();
        let (rows, ctx) = self.select_rows(spec, &mut trace)?;
        let selection = RowSelection::from_rows(rows.clone());

        let cat_q = self.combine_fixed(&rows, |c| c.q);
        let cat_e = self.combine_fixed(&rows, |c| c.e);

        let product = |pick: fn(&table::RowCells) -> Cell,
                       trace: &mut Vec<TraceEntry>|
         -> Result<ProductCat> {
            let at = |n: u32, trace: &mut Vec<TraceEntry>| -> Result<CatValue> {
                let mut acc: Option<CatValue> = None;
                for row in &rows {
                    let v = self.product_cell(spec, pick(&row.cells()), n, ctx.as_ref(), trace)?;
                    acc = Some(match acc {
                        None => v,
                        Some(a) => a.union(&v),
                    });
                }
                Ok(acc.expect("at least one row"))
            };
            match n {
                Some(n) => Ok(ProductCat::At {
                    n,
                    value: at(n, trace)?,
                }),
                None => {
                    // all answers are constant beyond the largest fact level
                    let horizon = self.catalog.max_level() + 2;
                    let mut values = Vec::new();
                    let mut scratch = Vec::new();
                    let mut previous: Option<CatValue> = None;
                    for n in 1..=horizon {
                        scratch.clear();
                        let v = at(n, &mut scratch)?;
                        if previous.as_ref() != Some(&v) {
                            for e in scratch.drain(..) {
                                push_unique(trace, e);
                            }
                        }
                        previous = Some(v.clone());
                        values.push(v);
                    }
                    Ok(ProductCat::from_sequence(values))
                }
            }
        };
        let cat_q_x_sn = product(|c| c.q_x_sn, &mut trace)?;
        let cat_e_x_sn = product(|c| c.e_x_sn, &mut trace)?;

        let row_cite = Citation::Row(selection.id());
        for entry in &mut trace {
            if entry.citations.is_empty() {
                entry.citations.push(row_cite.clone());
            }
        }
        Ok(CatReport {
            row: selection,
            cat_q_x_sn,
            cat_q,
            cat_e,
            cat_e_x_sn,
            trace,
        })
    }

    fn select_rows(
        &self,
        spec: &BundleSpec,
        trace: &mut Vec<TraceEntry>,
    ) -> Result<(Vec<Row>, Option<HopfContext<'a>>)> {
        let (r, t) = (spec.r, spec.t);
        if r == 1 {
            let row = match t {
                0 => Row::R1,
                1 => match spec.degree() {
                    Some(1 | -1) => Row::R2,
                    Some(0) => Row::R3,
                    Some(_) => Row::R4,
                    None => unreachable!("a word S^1 -> S^1 is an identity"),
                },
                _ => Row::R5,
            };
            return Ok((vec![row], None));
        }
        if t < r {
            return Ok((vec![Row::R6], None));
        }
        if t == r {
            let row = if spec.is_unit() { Row::R7 } else { Row::R8 };
            return Ok((vec![row], None));
        }

        let ctx = self.hopf(spec)?;
        let (t0, e0) = ctx.entry(0)?;
        let mut e0 = e0;
        if ctx.rule != HopfRule::Naturality || t0 == TriState::Unknown {
            e0.condition = format!("{} ({})", e0.condition, ctx.rule_text());
        }
        trace.push(e0);
        let (tr, er) = ctx.entry(r)?;
        trace.push(er);
        let rows = match (t0, tr) {
            (TriState::Zero, _) => vec![Row::R9],
            (_, TriState::Nonzero) => vec![Row::R11],
            (TriState::Nonzero, TriState::Zero) => vec![Row::R10],
            (TriState::Nonzero, TriState::Unknown) => vec![Row::R10, Row::R11],
            (TriState::Unknown, TriState::Zero) => vec![Row::R9, Row::R10],
            (TriState::Unknown, TriState::Unknown) => vec![Row::R9, Row::R10, Row::R11],
        };
        Ok((rows, Some(ctx)))
    }

    /// Fixed column across candidate rows; a two-row split becomes a
    /// conditional on the predicate separating them.
    fn combine_fixed(&self, rows: &[Row], pick: fn(&table::RowCells) -> u32) -> CatValue {
        let values: Vec<u32> = rows.iter().map(|r| pick(&r.cells())).collect();
        let lo = *values.iter().min().expect("at least one row");
        let hi = *values.iter().max().expect("at least one row");
        if lo == hi {
            return CatValue::exact(lo);
        }
        match rows {
            [Row::R9, Row::R10] => CatValue::conditional(
                "H1(α) ≠ 0",
                pick(&Row::R10.cells()),
                pick(&Row::R9.cells()),
                Truth::Unknown,
            ),
            [Row::R10, Row::R11] => CatValue::conditional(
                "Σ^r H1(α) = 0",
                pick(&Row::R10.cells()),
                pick(&Row::R11.cells()),
                Truth::Unknown,
            ),
            _ => CatValue::range(lo, hi),
        }
    }

    fn product_cell(
        &self,
        spec: &BundleSpec,
        cell: Cell,
        n: u32,
        ctx: Option<&HopfContext<'_>>,
        trace: &mut Vec<TraceEntry>,
    ) -> Result<CatValue> {
        let r = spec.r;
        match cell {
            Cell::Value(v) => Ok(CatValue::exact(v)),
            Cell::FootnoteQ => {
                let ctx = ctx.expect("footnote rows have H1");
                let (sn, en) = ctx.entry(n)?;
                if sn == TriState::Zero {
                    push_unique(trace, en);
                    return Ok(CatValue::exact(2));
                }
                let (sn1, en1) = ctx.entry(n + 1)?;
                push_unique(trace, en);
                push_unique(trace, en1);
                Ok(if sn1 == TriState::Nonzero {
                    CatValue::exact(3)
                } else {
                    CatValue::range(2, 3)
                })
            }
            Cell::FootnoteE => {
                let ctx = ctx.expect("footnote rows have H1");
                let (s, e) = ctx.entry(r + n)?;
                push_unique(trace, e);
                if s == TriState::Zero {
                    return Ok(CatValue::exact(3));
                }
                if !self.alpha_metastable(spec) {
                    push_unique(
                        trace,
                        TraceEntry::new(
                            format!(
                                "Σ^{} h2(α): α outside the metastable range, h2 not identified with H1",
                                r + n + 1
                            ),
                            TriState::Unknown,
                            &[],
                        ),
                    );
                    return Ok(CatValue::range(3, 4));
                }
                let (s1, mut e1) = ctx.entry(r + n + 1)?;
                e1.condition = format!("{} (as h2, metastable)", e1.condition);
                push_unique(trace, e1);
                Ok(if s1 == TriState::Nonzero {
                    CatValue::exact(4)
                } else {
                    CatValue::range(3, 4)
                })
            }
        }
    }

    /// Whether `H^S_2(ψ)` contains 0, i.e. `Σ^r H1(α) = 0`: `Zero` means
    /// `cat(E) = 2`.
    pub fn hopf2_contains_zero(&self, spec: &BundleSpec) -> Result<TriState> {
        let ctx = self.hopf2_context(spec)?;
        Ok(ctx.state(spec.r)?.state)
    }

    fn hopf2_context(&self, spec: &BundleSpec) -> Result<HopfContext<'a>> {
        spec.require_stable_range("H^S_2(ψ)")?;
        let ctx = self.hopf(spec)?;
        if ctx.state(0)?.state == TriState::Zero {
            return Err(Error::Precondition(format!(
                "H1(α) = 0 for {spec}, so cat(Q) = 1 and H^S_2(ψ) is not defined here"
            )));
        }
        Ok(ctx)
    }

    pub fn hopf2_representative(&self, spec: &BundleSpec) -> Result<Hopf2Expression> {
        let ctx = self.hopf2_context(spec)?;
        Ok(Hopf2Expression {
            r: spec.r,
            h1: ctx.h1,
        })
    }

    /// `cat(N ∖ {P}) = cat(N)`, which holds exactly when `H1(α) ≠ 0` and
    /// `Σ^r H1(α) = 0`.
    pub fn punctured_equal(&self, spec: &BundleSpec) -> Result<Truth> {
        spec.require_stable_range("punctured comparison")?;
        let ctx = self.hopf(spec)?;
        let nonzero = ctx.state(0)?.state.is_nonzero();
        let susp_zero = ctx.state(spec.r)?.state.is_zero();
        Ok(nonzero.and(susp_zero))
    }

    pub fn ganea_check(&self, spec: &BundleSpec) -> Result<GaneaReport> {
        spec.require_stable_range("Ganea check")?;
        let ctx = self.hopf(spec)?;
        let mut trace = Vec::new();
        let (sr, er) = ctx.entry(spec.r)?;
        trace.push(er);
        let stable = algebra::maybe_stable(self.catalog, &ctx.h1)?;
        trace.push(TraceEntry::new(
            format!("Σ^∞ H1(α) = Σ^∞ {}", ctx.h1),
            stable.state,
            &stable.lines,
        ));
        let is_counterexample = match (sr, stable.state) {
            (TriState::Zero, _) => Truth::False,
            (TriState::Nonzero, TriState::Zero) => Truth::True,
            // h2 = H1 stably nonzero forces cat(E × S^n) = 4 for every n
            (TriState::Nonzero, TriState::Nonzero) if self.alpha_metastable(spec) => Truth::False,
            _ => Truth::Unknown,
        };
        let mut minimal_n = None;
        for n in 1..=self.catalog.max_level() + 1 {
            let (s, e) = ctx.entry(n + spec.r)?;
            if s == TriState::Zero {
                trace.push(e);
                minimal_n = Some(n);
                break;
            }
        }
        for entry in &mut trace {
            if entry.citations.is_empty() {
                entry.citations.push(Citation::Row("ganea".into()));
            }
        }
        Ok(GaneaReport {
            is_counterexample,
            minimal_n,
            trace,
        })
    }

    /// Triviality of `Σ^r H1(α) ∘ β` for a co-H `β : S^v -> S^(r+t)`;
    /// `Nonzero` means `cat(X(β)) = 3`, `Zero` means 2.
    pub fn attach_along(&self, spec: &BundleSpec, beta: &CompositionClass) -> Result<TriState> {
        spec.require_stable_range("co-H attachment")?;
        let ctx = self.hopf(spec)?;
        if ctx.state(0)?.state != TriState::Nonzero {
            return Err(Error::Precondition(
                "H1(α) ≠ 0 must be certified before attaching along β".into(),
            ));
        }
        if algebra::is_co_h(self.catalog, beta) != Truth::True {
            return Err(Error::Precondition(format!(
                "β = {beta} is not certified co-H"
            )));
        }
        if beta.cod() != spec.r + spec.t {
            return Err(Error::DimensionMismatch(format!(
                "β must land in S^{}, but {beta} lands in S^{}",
                spec.r + spec.t,
                beta.cod()
            )));
        }
        let h1 = ctx.h1.class().expect("nonzero H1 is a class");
        let composite = h1.suspend(spec.r).compose(beta)?;
        algebra::is_trivial(self.catalog, &composite)
    }

    pub fn bounds(&self, spec: &BundleSpec) -> Result<Bounds> {
        bounds::bounds(self, spec)
    }

    /// `H1(α)` when it is a certified nonzero class with nonzero cup square
    /// in `Q` (only possible for `t + 1 = 2r`).
    pub(crate) fn certified_hopf_nonzero(&self, spec: &BundleSpec) -> Result<bool> {
        if !(spec.r > 1 && spec.t > spec.r) {
            return Ok(false);
        }
        let ctx = self.hopf(spec)?;
        Ok(ctx.state(0)?.state == TriState::Nonzero)
    }
}
