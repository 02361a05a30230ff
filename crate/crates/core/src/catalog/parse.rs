//! Line-oriented reader for fact files.
//!
//! ```text
//! gen <name> dom=<k> cod=<l> [susp_of=<name>] [h1=<word>|h1=0]
//! fact zero    <word> susp=<j>
//! fact nonzero <word> susp=<j|inf>
//! ```
//!
//! This stage only checks syntax. Name resolution and dimension checks happen
//! when the raw records are assembled into a [`Catalog`](super::Catalog).

use crate::error::{Error, Result};

/// A name as written, with its 1-based column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub text: String,
    pub column: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RawHopf {
    Zero,
    Word(Vec<Spanned>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawGen {
    pub name: Spanned,
    pub dom: u32,
    pub cod: u32,
    pub susp_of: Option<Spanned>,
    pub h1: Option<RawHopf>,
    pub line: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RawKind {
    Zero(u32),
    Nonzero(Option<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawFact {
    pub word: Vec<Spanned>,
    pub kind: RawKind,
    pub line: u32,
}

#[derive(Debug, Default)]
pub(crate) struct RawFile {
    pub gens: Vec<RawGen>,
    pub facts: Vec<RawFact>,
}

fn perr(line: u32, column: u32, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(u32, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(u32, usize)> = None;
    let mut col = 0u32;
    for (byte_idx, c) in s.char_indices() {
        col += 1;
        if c.is_whitespace() {
            if let Some((c0, b)) = start.take() {
                out.push((c0, &s[b..byte_idx]));
            }
        } else if start.is_none() {
            start = Some((col, byte_idx));
        }
    }
    if let Some((c0, b)) = start {
        out.push((c0, &s[b..]));
    }
    out
}

pub(crate) fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `iota_<k>` denotes the identity of `S^k`.
pub(crate) fn identity_dim(name: &str) -> Option<u32> {
    name.strip_prefix("iota_")
        .and_then(|k| k.parse::<u32>().ok())
        .filter(|&k| k >= 1)
}

fn parse_word(text: &str, line: u32, column: u32) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut col = column;
    for part in text.split('*') {
        if !is_name(part) {
            return Err(perr(
                line,
                col,
                format!("expected a generator name, found `{part}`"),
            ));
        }
        out.push(Spanned {
            text: part.to_string(),
            column: col,
        });
        col += part.chars().count() as u32 + 1;
    }
    Ok(out)
}

fn parse_uint(value: &str, line: u32, column: u32, key: &str) -> Result<u32> {
    value.parse::<u32>().map_err(|_| {
        perr(
            line,
            column,
            format!("`{key}` expects a non-negative integer, found `{value}`"),
        )
    })
}

fn key_value(tok: &str, line: u32, column: u32) -> Result<(&str, &str)> {
    tok.split_once('=')
        .ok_or_else(|| perr(line, column, format!("expected key=value, found `{tok}`")))
}

fn parse_gen(toks: &[(u32, &str)], line: u32) -> Result<RawGen> {
    let (ncol, name) = *toks
        .get(1)
        .ok_or_else(|| perr(line, toks[0].0, "`gen` needs a name"))?;
    if !is_name(name) {
        return Err(perr(line, ncol, format!("invalid generator name `{name}`")));
    }
    let mut dom = None;
    let mut cod = None;
    let mut susp_of = None;
    let mut h1 = None;
    for &(col, tok) in &toks[2..] {
        let (key, value) = key_value(tok, line, col)?;
        let vcol = col + key.chars().count() as u32 + 1;
        let dup = |set: bool| {
            if set {
                Err(perr(line, col, format!("duplicate `{key}`")))
            } else {
                Ok(())
            }
        };
        match key {
            "dom" => {
                dup(dom.is_some())?;
                dom = Some(parse_uint(value, line, vcol, key)?);
            }
            "cod" => {
                dup(cod.is_some())?;
                cod = Some(parse_uint(value, line, vcol, key)?);
            }
            "susp_of" => {
                dup(susp_of.is_some())?;
                if !is_name(value) {
                    return Err(perr(
                        line,
                        vcol,
                        format!("invalid generator name `{value}`"),
                    ));
                }
                susp_of = Some(Spanned {
                    text: value.to_string(),
                    column: vcol,
                });
            }
            "h1" => {
                dup(h1.is_some())?;
                h1 = Some(if value == "0" {
                    RawHopf::Zero
                } else {
                    RawHopf::Word(parse_word(value, line, vcol)?)
                });
            }
            _ => return Err(perr(line, col, format!("unknown attribute `{key}`"))),
        }
    }
    let missing = |what: &str| {
        perr(
            line,
            ncol,
            format!("generator `{name}` is missing `{what}=`"),
        )
    };
    Ok(RawGen {
        name: Spanned {
            text: name.to_string(),
            column: ncol,
        },
        dom: dom.ok_or_else(|| missing("dom"))?,
        cod: cod.ok_or_else(|| missing("cod"))?,
        susp_of,
        h1,
        line,
    })
}

fn parse_fact(toks: &[(u32, &str)], line: u32) -> Result<RawFact> {
    if toks.len() != 4 {
        return Err(perr(
            line,
            toks[0].0,
            "expected `fact zero|nonzero <word> susp=<j>`",
        ));
    }
    let (kcol, kind) = toks[1];
    let (wcol, word) = toks[2];
    let (scol, susp) = toks[3];
    let word = parse_word(word, line, wcol)?;
    let (key, value) = key_value(susp, line, scol)?;
    if key != "susp" {
        return Err(perr(
            line,
            scol,
            format!("expected `susp=`, found `{key}=`"),
        ));
    }
    let vcol = scol + 5;
    let kind = match kind {
        "zero" => RawKind::Zero(parse_uint(value, line, vcol, key)?),
        "nonzero" if value == "inf" => RawKind::Nonzero(None),
        "nonzero" => RawKind::Nonzero(Some(parse_uint(value, line, vcol, key)?)),
        other => {
            return Err(perr(
                line,
                kcol,
                format!("fact kind must be `zero` or `nonzero`, found `{other}`"),
            ))
        }
    };
    Ok(RawFact { word, kind, line })
}

pub(crate) fn parse(source: &str) -> Result<RawFile> {
    let mut file = RawFile::default();
    for (idx, raw_line) in source.lines().enumerate() {
        let line = idx as u32 + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match head {
            "gen" => file.gens.push(parse_gen(&toks, line)?),
            "fact" => file.facts.push(parse_fact(&toks, line)?),
            other => {
                return Err(perr(
                    line,
                    col,
                    format!("expected `gen` or `fact`, found `{other}`"),
                ))
            }
        }
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_line() {
        let f = parse("gen eta_3 dom=4 cod=3 susp_of=eta_2  # comment\n").unwrap();
        assert_eq!(f.gens.len(), 1);
        let g = &f.gens[0];
        assert_eq!(g.name.text, "eta_3");
        assert_eq!((g.dom, g.cod), (4, 3));
        assert_eq!(g.susp_of.as_ref().unwrap().text, "eta_2");
        assert_eq!(g.susp_of.as_ref().unwrap().column, 31);
    }

    #[test]
    fn fact_lines() {
        let f = parse("fact zero a*b susp=2\n\nfact nonzero a susp=inf\n").unwrap();
        assert_eq!(f.facts[0].kind, RawKind::Zero(2));
        assert_eq!(f.facts[0].word.len(), 2);
        assert_eq!(f.facts[0].word[1].column, 13);
        assert_eq!(f.facts[1].kind, RawKind::Nonzero(None));
        assert_eq!(f.facts[1].line, 3);
    }

    #[test]
    fn errors_carry_position() {
        match parse("gen a dom=3 cod=2\ngen b dom=x cod=1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 11)),
            other => panic!("{other:?}"),
        }
        match parse("fact maybe a susp=1") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        assert!(parse("fact zero a**b susp=1").is_err());
        assert!(parse("gen a dom=3").is_err());
        assert!(parse("gen a dom=3 cod=2 dom=4").is_err());
        assert!(parse("frobnicate").is_err());
    }

    #[test]
    fn identity_literal() {
        assert_eq!(identity_dim("iota_3"), Some(3));
        assert_eq!(identity_dim("iota_0"), None);
        assert_eq!(identity_dim("iota"), None);
    }
}
