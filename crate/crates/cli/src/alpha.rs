//! Surface syntax for `α` and `β`.
//!
//! ```text
//! expr ::= term ('*' term)*
//! term ::= name '(' arg (',' arg)? ')' | "deg(" int ")"
//! arg  ::= int | int? 'p'
//! ```
//!
//! `name(k)` resolves to the catalog generator `name_k`, `iota(k)` to the
//! identity of `S^k`, and a family term `name(k)` or `name(k, p)` to
//! `name_k_p<p>`.

use crate::CliError;
use lscat_core::engine::Alpha;
use lscat_core::{Catalog, CompositionClass, Error};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Arg {
    Int(i64),
    /// `k·p`
    Prime(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    name: String,
    args: Vec<Arg>,
    column: usize,
    text: String,
}

fn parse_error(column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        column,
        message: message.into(),
    }
}

struct Lexer<'s> {
    chars: Vec<char>,
    pos: usize,
    src: &'s str,
}

impl<'s> Lexer<'s> {
    fn new(src: &'s str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(parse_error(
                self.column(),
                format!("expected `{c}`, found `{d}`"),
            )),
            None => Err(parse_error(
                self.column(),
                format!("expected `{c}`, found end of input"),
            )),
        }
    }

    fn name(&mut self) -> Result<String, CliError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => {
                return Err(parse_error(
                    self.column(),
                    format!("expected a name, found `{c}`"),
                ))
            }
            None => {
                return Err(parse_error(
                    self.column(),
                    "expected a name, found end of input",
                ))
            }
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn arg(&mut self) -> Result<Arg, CliError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let prime = self.peek() == Some('p');
        if prime {
            self.pos += 1;
        }
        let value = match digits.as_str() {
            "" if prime => 1,
            "" | "-" => {
                return Err(parse_error(start + 1, "expected an integer argument"));
            }
            d => d
                .parse::<i64>()
                .map_err(|e| parse_error(start + 1, format!("bad integer `{d}`: {e}")))?,
        };
        Ok(if prime {
            Arg::Prime(value)
        } else {
            Arg::Int(value)
        })
    }

    fn term(&mut self) -> Result<Term, CliError> {
        self.skip_ws();
        let start = self.pos;
        let column = self.column();
        let name = self.name()?;
        self.expect('(')?;
        let mut args = vec![self.arg()?];
        self.skip_ws();
        if self.peek() == Some(',') {
            self.pos += 1;
            args.push(self.arg()?);
        }
        self.expect(')')?;
        let text = self.chars[start..self.pos].iter().collect();
        Ok(Term {
            name,
            args,
            column,
            text,
        })
    }

    fn terms(&mut self) -> Result<Vec<Term>, CliError> {
        if self.src.trim().is_empty() {
            return Err(parse_error(1, "empty expression"));
        }
        let mut out = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some('*') => {
                    self.pos += 1;
                    out.push(self.term()?);
                }
                Some(c) => {
                    return Err(parse_error(
                        self.column(),
                        format!("expected `*`, found `{c}`"),
                    ))
                }
            }
        }
    }
}

/// Primes `p` for which the catalog has a `<family>_<k>_p<p>` generator.
fn family_primes(cat: &Catalog, family: &str) -> BTreeSet<u32> {
    let prefix = format!("{family}_");
    cat.generators()
        .filter_map(|g| g.name.strip_prefix(&prefix))
        .filter_map(|rest| rest.split_once("_p"))
        .filter(|(k, _)| k.parse::<u32>().is_ok())
        .filter_map(|(_, p)| p.parse::<u32>().ok())
        .collect()
}

fn int_arg(arg: &Arg, p: Option<u32>, term: &Term) -> Result<i64, CliError> {
    match *arg {
        Arg::Int(v) => Ok(v),
        Arg::Prime(k) => p.map(|p| k * i64::from(p)).ok_or_else(|| {
            CliError::MissingParameter(format!(
                "`{}` at column {} uses p; pass --p",
                term.text, term.column
            ))
        }),
    }
}

fn dimension(v: i64, term: &Term) -> Result<u32, CliError> {
    u32::try_from(v).ok().filter(|&v| v >= 1).ok_or_else(|| {
        parse_error(
            term.column,
            format!("sphere dimension {v} in `{}`", term.text),
        )
    })
}

/// Catalog name of one term under the prime `p`.
fn resolve(cat: &Catalog, term: &Term, p: Option<u32>) -> Result<String, CliError> {
    let family = !family_primes(cat, &term.name).is_empty();
    let (k, p) = match term.args.as_slice() {
        [a] => (int_arg(a, p, term)?, p),
        [a, Arg::Int(q)] => {
            let q = u32::try_from(*q)
                .map_err(|_| parse_error(term.column, format!("bad prime in `{}`", term.text)))?;
            (int_arg(a, Some(q), term)?, Some(q))
        }
        _ => {
            return Err(parse_error(
                term.column,
                format!("bad arguments in `{}`", term.text),
            ))
        }
    };
    let k = dimension(k, term)?;
    if term.name == "iota" {
        return Ok(format!("iota_{k}"));
    }
    if family {
        let p = p.ok_or_else(|| {
            CliError::MissingParameter(format!(
                "`{}` at column {} is a p-family; pass --p",
                term.text, term.column
            ))
        })?;
        Ok(format!("{}_{k}_p{p}", term.name))
    } else {
        Ok(format!("{}_{k}", term.name))
    }
}

fn compose(cat: &Catalog, terms: &[Term], p: Option<u32>) -> Result<CompositionClass, CliError> {
    let mut acc: Option<(CompositionClass, &Term)> = None;
    for term in terms {
        let name = resolve(cat, term, p)?;
        let class = cat.class(&[name.as_str()]).map_err(|e| match e {
            Error::UnknownGenerator(g) => CliError::Core(Error::UnknownGenerator(format!(
                "{g} (from `{}` at column {})",
                term.text, term.column
            ))),
            e => CliError::Core(e),
        })?;
        acc = Some(match acc {
            None => (class, term),
            Some((outer, prev)) => {
                if outer.dom() != class.cod() {
                    return Err(CliError::Core(Error::DimensionMismatch(format!(
                        "`{}` at column {} starts at S^{} but `{}` at column {} lands in S^{}",
                        prev.text,
                        prev.column,
                        outer.dom(),
                        term.text,
                        term.column,
                        class.cod()
                    ))));
                }
                (outer.compose(&class)?, term)
            }
        });
    }
    Ok(acc.expect("nonempty").0)
}

fn uses_family(cat: &Catalog, terms: &[Term]) -> BTreeSet<u32> {
    terms
        .iter()
        .filter(|t| matches!(t.args.as_slice(), [Arg::Int(_)]))
        .flat_map(|t| family_primes(cat, &t.name))
        .collect()
}

fn word_from_terms(
    cat: &Catalog,
    expr: &str,
    terms: &[Term],
    p: Option<u32>,
    dims: Option<(u32, u32)>,
) -> Result<CompositionClass, CliError> {
    if let Some(t) = terms.iter().find(|t| t.name == "deg") {
        return Err(parse_error(t.column, "deg(..) must stand alone"));
    }
    let primes = uses_family(cat, terms);
    let needs_p = terms
        .iter()
        .any(|t| t.args.iter().any(|a| matches!(a, Arg::Prime(_))));
    let (Some((dom, cod)), None, false, false) = (dims, p, primes.is_empty(), needs_p) else {
        return compose(cat, terms, p);
    };
    let fits: Vec<(u32, CompositionClass)> = primes
        .iter()
        .filter_map(|&q| compose(cat, terms, Some(q)).ok().map(|c| (q, c)))
        .filter(|(_, c)| c.dom() == dom && c.cod() == cod)
        .collect();
    match fits.as_slice() {
        [(_, c)] => Ok(c.clone()),
        [] => compose(cat, terms, p),
        many => Err(CliError::MissingParameter(format!(
            "p is ambiguous for `{expr}` (fits p = {}); pass --p",
            many.iter()
                .map(|(q, _)| q.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

/// Parses a composite. Without `p`, a family word written with plain
/// integers is accepted when exactly one catalog prime makes it a map
/// `S^dom -> S^cod`.
pub fn parse_word(
    cat: &Catalog,
    expr: &str,
    p: Option<u32>,
    dims: Option<(u32, u32)>,
) -> Result<CompositionClass, CliError> {
    let terms = Lexer::new(expr).terms()?;
    word_from_terms(cat, expr, &terms, p, dims)
}

/// Parses the `α` of a bundle with base `S^(t+1)`.
pub fn parse_alpha(
    cat: &Catalog,
    expr: &str,
    p: Option<u32>,
    r: u32,
    t: u32,
) -> Result<Alpha, CliError> {
    let terms = Lexer::new(expr).terms()?;
    match terms.as_slice() {
        [Term {
            name, args, column, ..
        }] if name == "deg" => match args.as_slice() {
            [Arg::Int(d)] => Ok(Alpha::Degree(*d)),
            _ => Err(parse_error(*column, "deg takes one integer")),
        },
        _ => Ok(Alpha::Word(word_from_terms(
            cat,
            expr,
            &terms,
            p,
            Some((t, r)),
        )?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Catalog {
        Catalog::shipped()
    }

    #[test]
    fn family_with_p() {
        let cat = cat();
        let a = parse_alpha(&cat, "eta(2)*alpha1(3)*alpha1(2p)", Some(3), 2, 9).unwrap();
        assert_eq!(
            a,
            Alpha::Word(cat.parse_word("eta_2*alpha1_3_p3*alpha1_6_p3").unwrap())
        );
    }

    #[test]
    fn explicit_prime_argument() {
        let cat = cat();
        let a = parse_word(&cat, "alpha1(3, 5)", None, None).unwrap();
        assert_eq!(a, cat.parse_word("alpha1_3_p5").unwrap());
    }

    #[test]
    fn degree() {
        let cat = cat();
        assert_eq!(
            parse_alpha(&cat, "deg(1)", None, 3, 3).unwrap(),
            Alpha::Degree(1)
        );
        assert_eq!(
            parse_alpha(&cat, " deg(-4)", None, 3, 3).unwrap(),
            Alpha::Degree(-4)
        );
        assert!(parse_alpha(&cat, "deg(2p)", Some(3), 3, 3).is_err());
        assert!(parse_alpha(&cat, "deg(1)*eta(2)", None, 3, 3).is_err());
    }

    #[test]
    fn mismatch_reports_columns() {
        let cat = cat();
        let err = parse_alpha(&cat, "eta(2)*eta(2)", None, 2, 3).unwrap_err();
        assert_eq!(err.kind(), "DimensionMismatch");
        let msg = err.to_string();
        assert!(
            msg.contains("column 1") && msg.contains("column 8"),
            "{msg}"
        );
    }

    #[test]
    fn prime_inferred_from_source_dimension() {
        let cat = cat();
        let a = parse_alpha(&cat, "eta(2)*alpha1(3)*alpha2(6)", None, 2, 13).unwrap();
        assert_eq!(
            a,
            Alpha::Word(cat.parse_word("eta_2*alpha1_3_p3*alpha2_6_p3").unwrap())
        );
    }

    #[test]
    fn missing_p() {
        let cat = cat();
        let err = parse_word(&cat, "alpha1(2p)", None, None).unwrap_err();
        assert_eq!(err.kind(), "MissingParameter");
        let err = parse_word(&cat, "alpha1(3)", None, None).unwrap_err();
        assert_eq!(err.kind(), "MissingParameter");
    }

    #[test]
    fn syntax_errors() {
        let cat = cat();
        for (src, col) in [
            ("eta(2", 6),
            ("eta(2)+eta(3)", 7),
            ("(2)", 1),
            ("eta()", 5),
            ("", 1),
        ] {
            match parse_word(&cat, src, None, None) {
                Err(CliError::Parse { column, .. }) => assert_eq!(column, col, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn unknown_and_identity() {
        let cat = cat();
        let err = parse_word(&cat, "nu(4)", None, None).unwrap_err();
        assert_eq!(err.kind(), "UnknownGenerator");
        assert!(parse_word(&cat, "iota(15)", None, None)
            .unwrap()
            .is_identity());
    }
}
