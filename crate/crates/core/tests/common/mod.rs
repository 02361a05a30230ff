#![allow(dead_code)]

use lscat_core::engine::{Alpha, BundleSpec};
use lscat_core::{Catalog, CompositionClass};

/// Every composable word of at most `max_len` unsuspended catalog
/// generators, as `(text, class)`.
pub fn catalog_words(cat: &Catalog, max_len: usize) -> Vec<(String, CompositionClass)> {
    let gens: Vec<(String, u32, u32)> = cat
        .generators()
        .map(|g| (g.name.clone(), g.dom, g.cod))
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<String>, u32, u32)> = gens
        .iter()
        .map(|(n, d, c)| (vec![n.clone()], *d, *c))
        .collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (names, dom, cod) in &layer {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            out.push((names.join("*"), cat.class(&refs).unwrap()));
            for (n, d, c) in &gens {
                if *c == *dom {
                    let mut v = names.clone();
                    v.push(n.clone());
                    next.push((v, *d, *cod));
                }
            }
        }
        layer = next;
    }
    out
}

/// Words usable as `α` for `t > r > 1` with the given ranges.
pub fn stable_range_specs(
    cat: &Catalog,
    rs: std::ops::RangeInclusive<u32>,
    max_gap: u32,
) -> Vec<BundleSpec> {
    catalog_words(cat, 4)
        .into_iter()
        .filter(|(_, c)| rs.contains(&c.cod()) && c.dom() > c.cod() && c.dom() - c.cod() <= max_gap)
        .map(|(_, c)| BundleSpec::new(c.cod(), c.dom(), Alpha::Word(c)).unwrap())
        .collect()
}

pub fn spec(cat: &Catalog, r: u32, t: u32, word: &str) -> BundleSpec {
    BundleSpec::with_word(cat, r, t, word).unwrap()
}
