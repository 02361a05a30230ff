//! Declarative database of sphere-group generators and vanishing facts.
//!
//! Facts are data, never derivations: a question the file does not settle is
//! answered [`TriState::Unknown`]. Loading validates dimensions and names and
//! rejects contradictory facts.
//!
//! Words are compared after one coarsening only: each factor is rewritten to
//! the root of its `susp_of` chain, with the chain length added to its
//! suspension count. `eta_4` and `Σ²eta_2` are therefore the same factor.

mod parse;

use crate::class::{CompositionClass, Factor};
use crate::error::{Error, Result};
use crate::tri::TriState;
use indexmap::IndexMap;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::Read;

use parse::{identity_dim, RawFile, RawHopf, RawKind, Spanned};

const SHIPPED: &str = include_str!("../../data/facts.toda");

/// Declared value of the first Hopf invariant of a generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfDecl {
    Zero,
    Class(CompositionClass),
}

#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub dom: u32,
    pub cod: u32,
    pub suspension_of: Option<String>,
    pub hopf_h1: Option<HopfDecl>,
    /// Source line; ignored by equality.
    pub line: u32,
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dom == other.dom
            && self.cod == other.cod
            && self.suspension_of == other.suspension_of
            && self.hopf_h1 == other.hopf_h1
    }
}

impl Generator {
    /// Suspension or declared `h1=0`: either way a co-H map.
    pub fn is_co_h(&self) -> bool {
        self.suspension_of.is_some() || self.hopf_h1 == Some(HopfDecl::Zero)
    }
}

/// Suspension level of a nonvanishing fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Finite(u32),
    Stable,
}

impl Level {
    fn covers(self, j: u32) -> bool {
        match self {
            Level::Finite(k) => j <= k,
            Level::Stable => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactKind {
    /// `Σ^j word = 0`.
    SuspZero(u32),
    /// `Σ^j word ≠ 0`; `Stable` means for every `j`.
    SuspNonzero(Level),
}

#[derive(Debug, Clone)]
pub struct VanishingFact {
    pub word: CompositionClass,
    pub kind: FactKind,
    pub line: u32,
}

impl PartialEq for VanishingFact {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.kind == other.kind
    }
}

/// A triviality verdict together with the fact-file lines that certify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub state: TriState,
    pub lines: Vec<u32>,
}

impl Evidence {
    pub fn unknown() -> Self {
        Evidence {
            state: TriState::Unknown,
            lines: Vec::new(),
        }
    }

    pub fn decided(state: TriState, lines: Vec<u32>) -> Self {
        Evidence { state, lines }
    }
}

/// Root generator and suspension count of one normalized factor.
type NormFactor<'a> = (&'a str, u32);
/// Normalized word with the common suspension removed.
type Key = Vec<(String, u32)>;

#[derive(Debug, Clone, Default)]
struct FactRange {
    zero_min: Option<(u32, u32)>,
    nonzero_max: Option<(Level, u32)>,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    generators: IndexMap<String, Generator>,
    facts: Vec<VanishingFact>,
    roots: HashMap<String, (String, u32)>,
    index: BTreeMap<Key, FactRange>,
    max_level: u32,
    digest: String,
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.facts == other.facts
    }
}

/// Reads and validates a fact file.
pub fn load_facts(mut source: impl Read) -> Result<Catalog> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("read failed: {e}"),
    })?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("fact file is not UTF-8: {e}"),
    })?;
    Catalog::from_text(&text)
}

fn inconsistent(line: u32, message: impl Into<String>) -> Error {
    Error::Consistency {
        line,
        message: message.into(),
    }
}

impl Catalog {
    /// The catalog compiled into the binary (`data/facts.toda`).
    pub fn shipped() -> Catalog {
        Catalog::from_text(SHIPPED).expect("shipped fact file is valid")
    }

    pub fn shipped_source() -> &'static str {
        SHIPPED
    }

    pub fn from_text(text: &str) -> Result<Catalog> {
        let raw = parse::parse(text)?;
        Catalog::assemble(raw)
    }

    fn assemble(raw: RawFile) -> Result<Catalog> {
        let mut generators: IndexMap<String, Generator> = IndexMap::new();
        for g in &raw.gens {
            let name = &g.name.text;
            if identity_dim(name).is_some() || name.starts_with("iota_") {
                return Err(inconsistent(
                    g.line,
                    format!("`{name}` is reserved for identities"),
                ));
            }
            if generators.contains_key(name) {
                return Err(inconsistent(
                    g.line,
                    format!("generator `{name}` declared twice"),
                ));
            }
            if g.cod < 1 || g.dom <= g.cod {
                return Err(inconsistent(
                    g.line,
                    format!(
                        "generator `{name}` must satisfy dom > cod >= 1 (got dom={} cod={})",
                        g.dom, g.cod
                    ),
                ));
            }
            generators.insert(
                name.clone(),
                Generator {
                    name: name.clone(),
                    dom: g.dom,
                    cod: g.cod,
                    suspension_of: g.susp_of.as_ref().map(|s| s.text.clone()),
                    hopf_h1: None,
                    line: g.line,
                },
            );
        }

        for g in &raw.gens {
            let Some(base) = &g.susp_of else { continue };
            let Some(b) = generators.get(&base.text) else {
                return Err(inconsistent(
                    g.line,
                    format!("`susp_of={}` names an undeclared generator", base.text),
                ));
            };
            if b.dom + 1 != g.dom || b.cod + 1 != g.cod {
                return Err(inconsistent(
                    g.line,
                    format!(
                        "`{}` (S^{} -> S^{}) is not one suspension of `{}` (S^{} -> S^{})",
                        g.name.text, g.dom, g.cod, b.name, b.dom, b.cod
                    ),
                ));
            }
        }

        // Dimensions strictly drop along susp_of, so chains terminate.
        let mut roots = HashMap::new();
        for name in generators.keys() {
            let mut cur = name.as_str();
            let mut depth = 0;
            while let Some(base) = generators[cur].suspension_of.as_deref() {
                cur = base;
                depth += 1;
            }
            roots.insert(name.clone(), (cur.to_string(), depth));
        }

        let mut catalog = Catalog {
            generators,
            facts: Vec::new(),
            roots,
            index: BTreeMap::new(),
            max_level: 0,
            digest: String::new(),
        };

        for g in &raw.gens {
            let Some(h1) = &g.h1 else { continue };
            let decl = match h1 {
                RawHopf::Zero => HopfDecl::Zero,
                RawHopf::Word(w) => {
                    if g.susp_of.is_some() {
                        return Err(inconsistent(
                            g.line,
                            format!("`{}` is a suspension, so its H1 must be 0", g.name.text),
                        ));
                    }
                    let class = catalog.resolve(w, g.line)?;
                    let want_cod = 2 * g.cod - 1;
                    if class.dom() != g.dom || class.cod() != want_cod {
                        return Err(inconsistent(
                            g.line,
                            format!(
                                "H1 of `{}` must map S^{} -> S^{}, but `{class}` maps S^{} -> S^{}",
                                g.name.text,
                                g.dom,
                                want_cod,
                                class.dom(),
                                class.cod()
                            ),
                        ));
                    }
                    HopfDecl::Class(class)
                }
            };
            catalog.generators[g.name.text.as_str()].hopf_h1 = Some(decl);
        }

        for f in &raw.facts {
            let word = catalog.resolve(&f.word, f.line)?;
            let kind = match f.kind {
                RawKind::Zero(j) => FactKind::SuspZero(j),
                RawKind::Nonzero(Some(j)) => FactKind::SuspNonzero(Level::Finite(j)),
                RawKind::Nonzero(None) => FactKind::SuspNonzero(Level::Stable),
            };
            if word.is_identity() {
                if let FactKind::SuspZero(_) = kind {
                    return Err(inconsistent(f.line, "an identity class is never zero"));
                }
            }
            catalog.facts.push(VanishingFact {
                word,
                kind,
                line: f.line,
            });
        }

        catalog.build_index()?;
        catalog.digest = hex::encode(Sha256::digest(catalog.to_fact_text().as_bytes()));
        Ok(catalog)
    }

    fn resolve(&self, word: &[Spanned], line: u32) -> Result<CompositionClass> {
        let names: Vec<&str> = word.iter().map(|s| s.text.as_str()).collect();
        self.class(&names).map_err(|e| match e {
            Error::UnknownGenerator(name) => {
                let column = word.iter().find(|s| s.text == name).map_or(0, |s| s.column);
                inconsistent(
                    line,
                    format!("column {column}: undeclared generator `{name}`"),
                )
            }
            Error::DimensionMismatch(m) => inconsistent(line, m),
            other => other,
        })
    }

    fn build_index(&mut self) -> Result<()> {
        let mut index: BTreeMap<Key, FactRange> = BTreeMap::new();
        let mut max_level = 0;
        for fact in &self.facts {
            let norm = self.normalize(&fact.word, 0)?;
            if norm.is_empty() {
                continue;
            }
            let (key, base) = key_of(&norm);
            let extent = key.iter().map(|(_, o)| *o).max().unwrap_or(0);
            let range = index.entry(key).or_default();
            match fact.kind {
                FactKind::SuspZero(j) => {
                    let level = base + j;
                    max_level = max_level.max(level + extent);
                    if range.zero_min.is_none_or(|(z, _)| level < z) {
                        range.zero_min = Some((level, fact.line));
                    }
                }
                FactKind::SuspNonzero(lvl) => {
                    let level = match lvl {
                        Level::Finite(j) => {
                            max_level = max_level.max(base + j + extent);
                            Level::Finite(base + j)
                        }
                        Level::Stable => Level::Stable,
                    };
                    if range.nonzero_max.is_none_or(|(n, _)| level > n) {
                        range.nonzero_max = Some((level, fact.line));
                    }
                }
            }
        }
        self.index = index;
        self.max_level = max_level;

        // A nonzero claim must survive every zero consequence at its level.
        // Zero is upward closed, so checking the top nonzero level suffices.
        let far = self.max_level + 1;
        for (key, range) in &self.index {
            let Some((level, line)) = range.nonzero_max else {
                continue;
            };
            let base = match level {
                Level::Finite(j) => j,
                Level::Stable => far,
            };
            let concrete: Vec<NormFactor<'_>> =
                key.iter().map(|(n, o)| (n.as_str(), o + base)).collect();
            if let Some(zero_line) = self.zero_evidence(&concrete) {
                return Err(inconsistent(
                    line,
                    format!("nonvanishing contradicts the vanishing fact at line {zero_line}"),
                ));
            }
            if self.dimension_zero(&concrete) {
                return Err(inconsistent(line, "class is zero for dimensional reasons"));
            }
        }
        Ok(())
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.get(name)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.values()
    }

    pub fn facts(&self) -> &[VanishingFact] {
        &self.facts
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty() && self.facts.is_empty()
    }

    /// SHA-256 of the canonical serialization.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Largest suspension level any fact speaks about. Beyond it every query
    /// answer is constant.
    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// Builds `names[0] ∘ names[1] ∘ …` from unsuspended generators.
    /// `iota_<k>` entries are identities and are elided.
    pub fn class(&self, names: &[&str]) -> Result<CompositionClass> {
        let mut acc: Option<CompositionClass> = None;
        for name in names {
            let next = if let Some(k) = identity_dim(name) {
                CompositionClass::identity(k)
            } else {
                let g = self
                    .generators
                    .get(*name)
                    .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
                CompositionClass::from_parts(
                    g.dom,
                    g.cod,
                    vec![Factor {
                        name: g.name.clone(),
                        susp: 0,
                    }],
                )
            };
            acc = Some(match acc {
                None => next,
                Some(outer) => outer.compose(&next)?,
            });
        }
        acc.ok_or_else(|| Error::DimensionMismatch("empty word".into()))
    }

    /// Parses `a*b*c` against this catalog.
    pub fn parse_word(&self, text: &str) -> Result<CompositionClass> {
        let names: Vec<&str> = text.split('*').map(str::trim).collect();
        if let Some(bad) = names.iter().find(|n| !parse::is_name(n)) {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!("invalid generator name `{bad}`"),
            });
        }
        self.class(&names)
    }

    fn normalize<'a>(&'a self, word: &CompositionClass, j: u32) -> Result<Vec<NormFactor<'a>>> {
        word.factors()
            .iter()
            .map(|f| {
                let (root, depth) = self
                    .roots
                    .get(&f.name)
                    .ok_or_else(|| Error::UnknownGenerator(f.name.clone()))?;
                Ok((root.as_str(), depth + f.susp + j))
            })
            .collect()
    }

    /// A factor landing in `S^1` from a higher sphere is null.
    fn dimension_zero(&self, norm: &[NormFactor<'_>]) -> bool {
        norm.iter()
            .any(|(root, level)| self.generators[*root].cod + level == 1)
    }

    /// First vanishing fact covering some contiguous sub-composite.
    fn zero_evidence(&self, norm: &[NormFactor<'_>]) -> Option<u32> {
        for a in 0..norm.len() {
            for b in a + 1..=norm.len() {
                let (key, base) = key_of(&norm[a..b]);
                if let Some((z, line)) = self.index.get(&key).and_then(|r| r.zero_min) {
                    if z <= base {
                        return Some(line);
                    }
                }
            }
        }
        None
    }

    fn evaluate(&self, norm: &[NormFactor<'_>]) -> Evidence {
        if norm.is_empty() {
            return Evidence::unknown();
        }
        if self.dimension_zero(norm) {
            return Evidence::decided(TriState::Zero, Vec::new());
        }
        if let Some(line) = self.zero_evidence(norm) {
            return Evidence::decided(TriState::Zero, vec![line]);
        }
        let (key, base) = key_of(norm);
        match self.index.get(&key).and_then(|r| r.nonzero_max) {
            Some((level, line)) if level.covers(base) => {
                Evidence::decided(TriState::Nonzero, vec![line])
            }
            _ => Evidence::unknown(),
        }
    }

    /// Whether `Σ^j word` vanishes, as far as the facts certify.
    pub fn query_vanishing(&self, word: &CompositionClass, j: u32) -> Result<TriState> {
        Ok(self.query_evidence(word, j)?.state)
    }

    pub fn query_evidence(&self, word: &CompositionClass, j: u32) -> Result<Evidence> {
        let norm = self.normalize(word, j)?;
        Ok(self.evaluate(&norm))
    }

    /// Stable verdict: zero once some suspension is certified zero, nonzero
    /// only under a `susp=inf` fact.
    pub fn stable_evidence(&self, word: &CompositionClass) -> Result<Evidence> {
        let far = self.max_level + 1;
        let norm = self.normalize(word, far)?;
        if let Some(line) = self.zero_evidence(&norm) {
            return Ok(Evidence::decided(TriState::Zero, vec![line]));
        }
        let (key, _) = key_of(&norm);
        match self.index.get(&key).and_then(|r| r.nonzero_max) {
            Some((Level::Stable, line)) => Ok(Evidence::decided(TriState::Nonzero, vec![line])),
            _ => Ok(Evidence::unknown()),
        }
    }

    /// Canonical fact-file text. Reloading it yields an equal catalog.
    pub fn to_fact_text(&self) -> String {
        let mut out = String::new();
        for g in self.generators.values() {
            let _ = write!(out, "gen {} dom={} cod={}", g.name, g.dom, g.cod);
            if let Some(s) = &g.suspension_of {
                let _ = write!(out, " susp_of={s}");
            }
            match &g.hopf_h1 {
                Some(HopfDecl::Zero) => out.push_str(" h1=0"),
                Some(HopfDecl::Class(c)) => {
                    let _ = write!(out, " h1={c}");
                }
                None => {}
            }
            out.push('\n');
        }
        for f in &self.facts {
            let _ = match f.kind {
                FactKind::SuspZero(j) => writeln!(out, "fact zero {} susp={j}", f.word),
                FactKind::SuspNonzero(Level::Finite(j)) => {
                    writeln!(out, "fact nonzero {} susp={j}", f.word)
                }
                FactKind::SuspNonzero(Level::Stable) => {
                    writeln!(out, "fact nonzero {} susp=inf", f.word)
                }
            };
        }
        out
    }
}

impl std::str::FromStr for Catalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Catalog::from_text(s)
    }
}

fn key_of(norm: &[NormFactor<'_>]) -> (Key, u32) {
    let base = norm.iter().map(|(_, l)| *l).min().unwrap_or(0);
    let key = norm
        .iter()
        .map(|(n, l)| (n.to_string(), l - base))
        .collect();
    (key, base)
}
