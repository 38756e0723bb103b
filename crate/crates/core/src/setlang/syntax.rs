//! Textual form of set descriptors.
//!
//! ```text
//! set   := "primes" | "nat"
//!        | "level(" INT ")"
//!        | "finite(" [INT {"," INT}] ")"
//!        | "powers(" set "," INT ")"      | "dprod(" set "," INT ")"
//!        | "pattern(" set {"," INT} ")"   | "scale(" INT "," set ")"
//!        | "quot(" set "," INT ")"        | "up(" set ")"
//!        | "down(" set ["," INT] ")"      | "pu(" set "," set ")"
//!        | "geom(" INT "," INT ")"        | "diag(" ("pow" PRIME | "primorial") ")"
//!        | "mult(" INT ")"                | "tail(" set "," INT ")"
//!        | "pidx(" INT "," INT ")"        | "not(" set ")"
//!        | "union(" set {"," set} ")"     | "inter(" set {"," set} ")"
//! ```
//!
//! Whitespace between tokens is ignored. The printer emits the canonical
//! form, which parses back to the same term.

use std::fmt;
use std::str::FromStr;

use super::{Selector, SetDescriptor, SetDescriptor::*, DEFAULT_DOWN_LIMIT};
use crate::arith::is_prime;
use crate::error::ParseError;

/// A byte cursor shared by the set and filter-spec parsers.
pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub(crate) fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.err(format!("expected '{c}', found '{got}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_lowercase() || c == '_' || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return self.err("expected a name");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub(crate) fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected an integer");
        }
        let v = rest[..len].parse::<u64>().or_else(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    pub(crate) fn positive(&mut self, what: &str) -> Result<u64, ParseError> {
        let at = self.pos;
        let v = self.int()?;
        if v == 0 {
            return Err(ParseError { pos: at, message: format!("{what} must be >= 1") });
        }
        Ok(v)
    }

    pub(crate) fn small(&mut self, what: &str, min: u32) -> Result<u32, ParseError> {
        let at = self.pos;
        let v = self.int()?;
        match u32::try_from(v) {
            Ok(v) if v >= min => Ok(v),
            _ => Err(ParseError { pos: at, message: format!("{what} must be in [{min}, {}]", u32::MAX) }),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

pub fn parse_set(input: &str) -> Result<SetDescriptor, ParseError> {
    let mut cur = Cursor::new(input);
    let s = set(&mut cur)?;
    cur.finish()?;
    Ok(s)
}

impl FromStr for SetDescriptor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_set(s)
    }
}

pub(crate) fn set(cur: &mut Cursor<'_>) -> Result<SetDescriptor, ParseError> {
    let start = cur.pos();
    let name = cur.ident()?;
    match name {
        "primes" => return Ok(Primes),
        "nat" => return Ok(SetDescriptor::nat()),
        _ => {}
    }
    cur.expect('(')?;
    let s = match name {
        "level" => Level(cur.small("level", 0)?),
        "finite" => {
            let mut items = Vec::new();
            if cur.peek() != Some(')') {
                loop {
                    items.push(cur.positive("finite element")?);
                    if !cur.eat(',') {
                        break;
                    }
                }
            }
            SetDescriptor::finite(items)
        }
        "powers" => {
            let inner = set(cur)?;
            cur.expect(',')?;
            Powers(Box::new(inner), cur.small("exponent", 1)?)
        }
        "dprod" => {
            let inner = set(cur)?;
            cur.expect(',')?;
            DistinctProducts(Box::new(inner), cur.small("factor count", 1)?)
        }
        "pattern" => {
            let inner = set(cur)?;
            let mut exps = Vec::new();
            while cur.eat(',') {
                exps.push(cur.small("exponent", 1)?);
            }
            if exps.is_empty() {
                return cur.err("pattern needs at least one exponent");
            }
            Pattern(Box::new(inner), exps)
        }
        "scale" => {
            let c = cur.positive("scale factor")?;
            cur.expect(',')?;
            Scale(c, Box::new(set(cur)?))
        }
        "quot" => {
            let inner = set(cur)?;
            cur.expect(',')?;
            Quotient(Box::new(inner), cur.positive("divisor")?)
        }
        "up" => UpClosure(Box::new(set(cur)?)),
        "down" => {
            let inner = set(cur)?;
            let limit = if cur.eat(',') { cur.positive("search limit")? } else { DEFAULT_DOWN_LIMIT };
            DownClosure(Box::new(inner), limit)
        }
        "pu" => {
            let b = set(cur)?;
            cur.expect(',')?;
            ProductUnion(Box::new(b), Box::new(set(cur)?))
        }
        "geom" => {
            let c = cur.positive("geom start")?;
            cur.expect(',')?;
            GeomTimes(c, cur.positive("geom ratio")?)
        }
        "diag" => {
            let at = cur.pos();
            let sel = cur.ident()?;
            match sel.strip_prefix("pow") {
                Some(p) if !p.is_empty() => match p.parse::<u64>() {
                    Ok(p) if is_prime(p) => Diagonal(Selector::PowersOf(p)),
                    _ => return Err(ParseError { pos: at, message: format!("{sel}: base must be prime") }),
                },
                _ if sel == "primorial" => Diagonal(Selector::Primorial),
                _ => return Err(ParseError { pos: at, message: format!("unknown selector {sel:?}") }),
            }
        }
        "mult" => MultiplesOf(cur.positive("modulus")?),
        "tail" => {
            let inner = set(cur)?;
            cur.expect(',')?;
            Tail(Box::new(inner), cur.int()?)
        }
        "pidx" => {
            let modulus = cur.small("modulus", 1)?;
            cur.expect(',')?;
            let at = cur.pos();
            let residue = cur.small("residue", 0)?;
            if residue >= modulus {
                return Err(ParseError { pos: at, message: "residue must be below the modulus".into() });
            }
            IndexedPrimes { modulus, residue }
        }
        "not" => Complement(Box::new(set(cur)?)),
        "union" | "inter" => {
            let mut parts = vec![set(cur)?];
            while cur.eat(',') {
                parts.push(set(cur)?);
            }
            if name == "union" {
                Union(parts)
            } else {
                Intersection(parts)
            }
        }
        _ => return Err(ParseError { pos: start, message: format!("unknown set constructor {name:?}") }),
    };
    cur.expect(')')?;
    Ok(s)
}

fn join(f: &mut fmt::Formatter<'_>, parts: &[SetDescriptor]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(items) => {
                write!(f, "finite(")?;
                for (i, x) in items.as_slice().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Primes => write!(f, "primes"),
            Level(i) => write!(f, "level({i})"),
            Powers(s, k) => write!(f, "powers({s},{k})"),
            DistinctProducts(s, n) => write!(f, "dprod({s},{n})"),
            Pattern(s, exps) => {
                write!(f, "pattern({s}")?;
                for e in exps {
                    write!(f, ",{e}")?;
                }
                write!(f, ")")
            }
            Scale(c, s) => write!(f, "scale({c},{s})"),
            Quotient(s, c) => write!(f, "quot({s},{c})"),
            UpClosure(s) => write!(f, "up({s})"),
            DownClosure(s, limit) if *limit == DEFAULT_DOWN_LIMIT => write!(f, "down({s})"),
            DownClosure(s, limit) => write!(f, "down({s},{limit})"),
            ProductUnion(b, c) => write!(f, "pu({b},{c})"),
            GeomTimes(c, r) => write!(f, "geom({c},{r})"),
            Diagonal(sel) => write!(f, "diag({sel})"),
            MultiplesOf(d) => write!(f, "mult({d})"),
            Tail(s, k) => write!(f, "tail({s},{k})"),
            IndexedPrimes { modulus, residue } => write!(f, "pidx({modulus},{residue})"),
            Complement(s) if matches!(**s, Finite(ref e) if e.is_empty()) => write!(f, "nat"),
            Complement(s) => write!(f, "not({s})"),
            Union(parts) => {
                write!(f, "union(")?;
                join(f, parts)?;
                write!(f, ")")
            }
            Intersection(parts) => {
                write!(f, "inter(")?;
                join(f, parts)?;
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_set() -> impl Strategy<Value = SetDescriptor> {
        let leaf = prop_oneof![
            prop::collection::vec(1u64..200, 0..5).prop_map(SetDescriptor::finite),
            Just(Primes),
            (0u32..6).prop_map(Level),
            (1u64..20, 1u64..5).prop_map(|(c, r)| GeomTimes(c, r)),
            prop_oneof![Just(2u64), Just(3), Just(5)].prop_map(|p| Diagonal(Selector::PowersOf(p))),
            Just(Diagonal(Selector::Primorial)),
            (1u64..30).prop_map(MultiplesOf),
            (1u32..4).prop_flat_map(|m| (Just(m), 0..m)).prop_map(|(modulus, residue)| IndexedPrimes { modulus, residue }),
        ];
        leaf.prop_recursive(3, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), 1u32..4).prop_map(|(s, k)| Powers(Box::new(s), k)),
                (inner.clone(), 1u32..4).prop_map(|(s, n)| DistinctProducts(Box::new(s), n)),
                (inner.clone(), prop::collection::vec(1u32..4, 1..4)).prop_map(|(s, e)| Pattern(Box::new(s), e)),
                (1u64..20, inner.clone()).prop_map(|(c, s)| Scale(c, Box::new(s))),
                (inner.clone(), 1u64..20).prop_map(|(s, c)| Quotient(Box::new(s), c)),
                inner.clone().prop_map(|s| UpClosure(Box::new(s))),
                (inner.clone(), prop_oneof![Just(DEFAULT_DOWN_LIMIT), 1u64..5000])
                    .prop_map(|(s, l)| DownClosure(Box::new(s), l)),
                (inner.clone(), inner.clone()).prop_map(|(b, c)| ProductUnion(Box::new(b), Box::new(c))),
                (inner.clone(), 0u64..4).prop_map(|(s, k)| Tail(Box::new(s), k)),
                prop::collection::vec(inner.clone(), 1..3).prop_map(Union),
                prop::collection::vec(inner.clone(), 1..3).prop_map(Intersection),
                inner.prop_map(|s| Complement(Box::new(s))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(s in arb_set()) {
            let text = s.to_string();
            prop_assert_eq!(parse_set(&text).unwrap(), s);
        }
    }

    #[test]
    fn documented_forms() {
        for text in [
            "level(3)",
            "primes",
            "up(finite(4,6))",
            "quot(level(3),2)",
            "geom(3,2)",
            "diag(pow2)",
            "pu(level(1),level(1))",
            "nat",
            "down(primes,500)",
        ] {
            assert_eq!(parse_set(text).unwrap().to_string(), text);
        }
        assert_eq!(parse_set(" up ( finite( 4 , 6 ) ) ").unwrap().to_string(), "up(finite(4,6))");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_set("level(").is_err());
        assert!(parse_set("diag(pow4)").is_err());
        assert!(parse_set("mult(0)").is_err());
        assert!(parse_set("pidx(2,2)").is_err());
        assert!(parse_set("primes x").is_err());
        let e = parse_set("frob(1)").unwrap_err();
        assert_eq!(e.pos, 0);
    }
}
