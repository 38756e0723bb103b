//! Textual filter descriptions.
//!
//! ```text
//! principal:N            the principal base at N
//! tails:<set>            tails of an infinite set
//! gens[<set>;<set>;..]   explicit generators
//! falpha:[(B,^k,xn),..]  F_α, B a prime or a nested filter
//! prod(F,G)              F ⊙ G
//! push(map,F)            f̃(F) for sf(k), sm(k), pow(n), threetwomap
//! ```

use std::fmt;
use std::str::FromStr;

use super::alpha::{f_alpha, Alpha, BasicSpec};
use super::{mk_base, principal, product, pushforward, tails, FilterBase};
use crate::error::{FilterError, ParseError};
use crate::setlang::syntax::{set, Cursor};
use crate::setlang::SetDescriptor;
use crate::witness::NamedMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterSpec {
    Principal(u64),
    Tails(SetDescriptor),
    Gens(Vec<SetDescriptor>),
    FAlpha(Vec<AlphaEntrySpec>),
    Prod(Box<FilterSpec>, Box<FilterSpec>),
    Push(NamedMap, Box<FilterSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicAst {
    Prime(u64),
    Base(Box<FilterSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaEntrySpec {
    pub basic: BasicAst,
    pub k: u32,
    pub mult: u32,
}

pub fn parse_filter(input: &str) -> Result<FilterSpec, ParseError> {
    let mut cur = Cursor::new(input);
    let f = filter(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

/// An α list, with or without the `falpha:` prefix.
pub fn parse_alpha(input: &str) -> Result<Vec<AlphaEntrySpec>, ParseError> {
    let mut cur = Cursor::new(input);
    if cur.eat_str("falpha") {
        cur.expect(':')?;
    }
    let entries = alpha_list(&mut cur)?;
    cur.finish()?;
    Ok(entries)
}

pub fn parse_map(input: &str) -> Result<NamedMap, ParseError> {
    let mut cur = Cursor::new(input);
    let m = map(&mut cur)?;
    cur.finish()?;
    Ok(m)
}

impl FromStr for FilterSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_filter(s)
    }
}

fn filter(cur: &mut Cursor<'_>) -> Result<FilterSpec, ParseError> {
    let start = cur.pos();
    let name = cur.ident()?;
    Ok(match name {
        "principal" => {
            cur.expect(':')?;
            FilterSpec::Principal(cur.positive("principal element")?)
        }
        "tails" => {
            cur.expect(':')?;
            FilterSpec::Tails(set(cur)?)
        }
        "gens" => {
            cur.expect('[')?;
            let mut gens = vec![set(cur)?];
            while cur.eat(';') {
                gens.push(set(cur)?);
            }
            cur.expect(']')?;
            FilterSpec::Gens(gens)
        }
        "falpha" => {
            cur.expect(':')?;
            FilterSpec::FAlpha(alpha_list(cur)?)
        }
        "prod" => {
            cur.expect('(')?;
            let a = filter(cur)?;
            cur.expect(',')?;
            let b = filter(cur)?;
            cur.expect(')')?;
            FilterSpec::Prod(Box::new(a), Box::new(b))
        }
        "push" => {
            cur.expect('(')?;
            let m = map(cur)?;
            cur.expect(',')?;
            let f = filter(cur)?;
            cur.expect(')')?;
            FilterSpec::Push(m, Box::new(f))
        }
        _ => return Err(ParseError { pos: start, message: format!("unknown filter form {name:?}") }),
    })
}

fn alpha_list(cur: &mut Cursor<'_>) -> Result<Vec<AlphaEntrySpec>, ParseError> {
    cur.expect('[')?;
    let mut entries = Vec::new();
    if cur.eat(']') {
        return Ok(entries);
    }
    loop {
        cur.expect('(')?;
        let basic = match cur.peek() {
            Some(c) if c.is_ascii_digit() => BasicAst::Prime(cur.int()?),
            _ => BasicAst::Base(Box::new(filter(cur)?)),
        };
        cur.expect(',')?;
        cur.expect('^')?;
        let k = cur.small("exponent", 1)?;
        cur.expect(',')?;
        cur.expect('x')?;
        let mult = cur.small("multiplicity", 0)?;
        cur.expect(')')?;
        entries.push(AlphaEntrySpec { basic, k, mult });
        if !cur.eat(',') {
            break;
        }
    }
    cur.expect(']')?;
    Ok(entries)
}

fn map(cur: &mut Cursor<'_>) -> Result<NamedMap, ParseError> {
    let start = cur.pos();
    let name = cur.ident()?;
    let arg = |cur: &mut Cursor<'_>, what: &str, min: u32| -> Result<u32, ParseError> {
        cur.expect('(')?;
        let v = cur.small(what, min)?;
        cur.expect(')')?;
        Ok(v)
    };
    Ok(match name {
        "sf" => NamedMap::SmallestFactor(arg(cur, "level", 1)?),
        "sm" => NamedMap::SmallestMultiple(arg(cur, "level", 0)?),
        "pow" => NamedMap::Pow(arg(cur, "exponent", 1)?),
        "threetwomap" => NamedMap::ThreeTwo,
        _ => return Err(ParseError { pos: start, message: format!("unknown map {name:?}") }),
    })
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterSpec::Principal(n) => write!(f, "principal:{n}"),
            FilterSpec::Tails(s) => write!(f, "tails:{s}"),
            FilterSpec::Gens(gs) => {
                write!(f, "gens[")?;
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "]")
            }
            FilterSpec::FAlpha(entries) => {
                write!(f, "falpha:[")?;
                for (i, e) in entries.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    match &e.basic {
                        BasicAst::Prime(p) => write!(f, "({p}")?,
                        BasicAst::Base(b) => write!(f, "({b}")?,
                    }
                    write!(f, ",^{},x{})", e.k, e.mult)?;
                }
                write!(f, "]")
            }
            FilterSpec::Prod(a, b) => write!(f, "prod({a},{b})"),
            FilterSpec::Push(m, x) => write!(f, "push({m},{x})"),
        }
    }
}

impl FilterSpec {
    pub fn build(&self, fip_bound: u64) -> Result<FilterBase, FilterError> {
        match self {
            FilterSpec::Principal(n) => Ok(principal(*n)),
            FilterSpec::Tails(s) => tails(s.clone(), fip_bound),
            FilterSpec::Gens(gs) => mk_base(gs.clone(), fip_bound),
            FilterSpec::FAlpha(entries) => f_alpha(&build_alpha(entries, fip_bound)?, fip_bound),
            FilterSpec::Prod(a, b) => product(&a.build(fip_bound)?, &b.build(fip_bound)?),
            FilterSpec::Push(m, x) => pushforward(m, &x.build(fip_bound)?),
        }
    }
}

pub fn build_alpha(entries: &[AlphaEntrySpec], fip_bound: u64) -> Result<Alpha, FilterError> {
    let mut built = Vec::with_capacity(entries.len());
    for e in entries {
        let basic = match &e.basic {
            BasicAst::Prime(p) => BasicSpec::Prime(*p),
            BasicAst::Base(b) => BasicSpec::Base(Box::new(b.build(fip_bound)?)),
        };
        built.push((basic, e.k, e.mult));
    }
    Alpha::new(built)
}
