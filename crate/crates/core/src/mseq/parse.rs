//! Sequence-spec mini-language.
//!
//! ```text
//! spec  := "fact"
//!        | "const:" NUM [ "," LEN ]
//!        | "list:" [ NUM { "," NUM } ] [ ",tail=" ( "const" | "succ" ) ]
//! ```
//!
//! `const:m` is the infinite constant sequence, `const:m,len` its first
//! `len` entries. `fact` is `2, 3, 4, ...`. A `list` is finite unless a
//! tail is given: `tail=const` repeats the last entry forever and
//! `tail=succ` keeps adding one.

use super::{MSequence, Tail};
use crate::error::{ParseError, Result};

fn err(message: impl Into<String>, token: &str, position: usize) -> ParseError {
    ParseError {
        message: message.into(),
        token: token.to_string(),
        position,
    }
}

/// Splits `s` on commas, yielding each piece with its byte offset (shifted by `base`).
fn pieces(s: &str, base: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = base;
    s.split(',').map(move |p| {
        let at = offset;
        offset += p.len() + 1;
        (at, p)
    })
}

fn parse_number(token: &str, position: usize) -> Result<u64, ParseError> {
    if token.is_empty() {
        return Err(err("expected a number", token, position));
    }
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected a decimal number", token, position));
    }
    token
        .parse()
        .map_err(|_| err("number out of range", token, position))
}

pub(super) fn parse_numbers(s: &str, base: usize) -> Result<Vec<u64>, ParseError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    pieces(s, base).map(|(at, p)| parse_number(p, at)).collect()
}

fn check_entry(value: u64, token: &str, position: usize) -> Result<(), ParseError> {
    if value < 2 {
        return Err(err("sequence entries must be at least 2", token, position));
    }
    Ok(())
}

pub(super) fn parse_spec(s: &str) -> Result<MSequence> {
    if s == "fact" {
        return Ok(MSequence::factorial());
    }
    let Some((kind, body)) = s.split_once(':') else {
        return Err(err("expected `fact`, `const:` or `list:`", s, 0).into());
    };
    let base = kind.len() + 1;
    match kind {
        "const" => parse_const(body, base),
        "list" => parse_list(body, base),
        _ => Err(err("unknown sequence kind", kind, 0).into()),
    }
}

fn parse_const(body: &str, base: usize) -> Result<MSequence> {
    let parts: Vec<(usize, &str)> = pieces(body, base).collect();
    if parts.len() > 2 {
        let (at, tok) = parts[2];
        return Err(err("`const` takes at most two numbers", tok, at).into());
    }
    let (at, tok) = parts[0];
    let m = parse_number(tok, at)?;
    check_entry(m, tok, at)?;
    match parts.get(1) {
        None => Ok(MSequence::constant(m)?),
        Some(&(at, tok)) => {
            let len = parse_number(tok, at)?;
            let len = usize::try_from(len).map_err(|_| err("length out of range", tok, at))?;
            Ok(MSequence::constant_finite(m, len)?)
        }
    }
}

fn parse_list(body: &str, base: usize) -> Result<MSequence> {
    if body.is_empty() {
        return MSequence::finite(Vec::new());
    }
    let mut entries = Vec::new();
    let mut tail = None;
    for (at, tok) in pieces(body, base) {
        if tail.is_some() {
            return Err(err("nothing may follow the tail clause", tok, at).into());
        }
        if let Some(kind) = tok.strip_prefix("tail=") {
            let Some(&last) = entries.last() else {
                return Err(err("a tail needs at least one entry", tok, at).into());
            };
            tail = Some(match kind {
                "const" => Tail::Constant(last),
                "succ" => Tail::Successor,
                _ => return Err(err("unknown tail, expected `const` or `succ`", tok, at).into()),
            });
            continue;
        }
        let value = parse_number(tok, at)?;
        check_entry(value, tok, at)?;
        entries.push(value);
    }
    MSequence::new(entries, tail.unwrap_or(Tail::Finite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn parse(s: &str) -> Result<MSequence> {
        s.parse()
    }

    #[test]
    fn parses_every_form() {
        assert_eq!(parse("fact").unwrap(), MSequence::factorial());
        assert_eq!(parse("const:3").unwrap(), MSequence::constant(3).unwrap());
        assert_eq!(
            parse("const:2,5").unwrap(),
            MSequence::constant_finite(2, 5).unwrap()
        );
        assert_eq!(
            parse("list:2,3").unwrap(),
            MSequence::finite(vec![2, 3]).unwrap()
        );
        assert_eq!(parse("list:2,3,tail=succ").unwrap(), MSequence::factorial());
        let c = parse("list:3,5,tail=const").unwrap();
        assert_eq!(c.get(1), Some(3));
        assert_eq!(c.get(10), Some(5));
    }

    #[test]
    fn errors_name_token_and_position() {
        let e = parse("list:2,x,4").unwrap_err();
        assert_eq!(
            e,
            Error::Parse(ParseError {
                message: "expected a decimal number".into(),
                token: "x".into(),
                position: 7,
            })
        );
        let Error::Parse(p) = parse("list:2,3,1").unwrap_err() else {
            panic!()
        };
        assert_eq!((p.token.as_str(), p.position), ("1", 9));
        let Error::Parse(p) = parse("list:2,tail=up").unwrap_err() else {
            panic!()
        };
        assert_eq!((p.token.as_str(), p.position), ("tail=up", 7));
        let Error::Parse(p) = parse("pow:2").unwrap_err() else {
            panic!()
        };
        assert_eq!((p.token.as_str(), p.position), ("pow", 0));
        let Error::Parse(p) = parse("const:2,3,4").unwrap_err() else {
            panic!()
        };
        assert_eq!((p.token.as_str(), p.position), ("4", 10));
        assert!(parse("const:").is_err());
        assert!(parse("const:1").is_err());
        assert!(parse("list:tail=const").is_err());
        assert!(parse("list:2,tail=succ,3").is_err());
        assert!(parse("").is_err());
    }
}
