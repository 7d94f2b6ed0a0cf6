//! The textual instance grammar.
//!
//! ```text
//! instance := stmt ((';' | newline) stmt)*
//! stmt     := 'ring=' ring | 'mod=' module | 'sub=sub(' gens ')' | 'mset=mset(' gens ')'
//! ring     := 'Z' n | 'ZZ' | 'prod(' ring (',' ring)+ ')' | 'quot(' ring ';' gens ')'
//! module   := 'cyc(' ring ';' gens ')' | 'ab(' n (',' n)* ')' | 'dsum(' module (',' module)* ')'
//!           | 'pmod(' ring ';' module (',' module)* ')' | 'qmod(' module ';' gens ')'
//!           | 'free(' ring ';' n ')' | 'smod(' module ';' gens ')' | 'loc(' module ';' gens ')'
//! gens     := (elem (',' elem)*)?
//! elem     := n | '(' elem (',' elem)* ')'
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use wcprime_core::theorems::Instance;
use wcprime_core::{Element, Error, Module, ModuleSpec, RingSpec, Submodule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected ", self.line, self.col)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

/// A spec that failed to parse or does not describe a valid instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    Syntax(ParseError),
    Semantic(Error),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Syntax(e) => write!(f, "syntax error at {e}"),
            SpecError::Semantic(e) => write!(f, "invalid instance: {e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<ParseError> for SpecError {
    fn from(e: ParseError) -> Self {
        SpecError::Syntax(e)
    }
}

impl From<Error> for SpecError {
    fn from(e: Error) -> Self {
        SpecError::Semantic(e)
    }
}

const RING: &[&str] = &["`Z<n>`", "`ZZ`", "`prod(`", "`quot(`"];
const MODULE: &[&str] = &["`cyc(`", "`ab(`", "`dsum(`", "`pmod(`", "`qmod(`", "`free(`", "`smod(`", "`loc(`"];
const KEY: &[&str] = &["`ring=`", "`mod=`", "`sub=`", "`mset=`"];

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn position(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at];
        let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
        let start = before.iter().rposition(|&c| c == b'\n').map_or(0, |i| i + 1);
        let col = String::from_utf8_lossy(&before[start..]).chars().count() + 1;
        (line, col)
    }

    fn error_at(&self, at: usize, expected: &[&'static str]) -> ParseError {
        let (line, col) = self.position(at);
        let found = match std::str::from_utf8(&self.src[at..]).ok().and_then(|s| s.chars().next()) {
            None => "end of input".to_string(),
            Some('\n') => "end of line".to_string(),
            Some(c) => format!("`{c}`"),
        };
        ParseError { line, col, expected: expected.to_vec(), found }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        self.error_at(self.pos, expected)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    /// Skips blanks; newlines too when `newlines` is set.
    fn blanks(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            match c {
                b' ' | b'\t' | b'\r' => self.pos += 1,
                b'\n' if newlines => self.pos += 1,
                b'#' => {
                    while self.peek().is_some_and(|c| c != b'\n') {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.blanks(true);
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, name: &'static str) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.blanks(true);
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        (start, std::str::from_utf8(&self.src[start..self.pos]).unwrap_or(""))
    }

    fn number(&mut self) -> PResult<u64> {
        self.blanks(true);
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        if digits.is_empty() {
            return Err(self.error(&["a number"]));
        }
        digits.parse().map_err(|_| self.error_at(start, &["a number below 2^64"]))
    }

    /// A comma-separated list closed by `)`, possibly empty.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat(b')') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(b')') {
                return Ok(out);
            }
            self.expect(b',', "`,` or `)`")?;
        }
    }

    fn element(&mut self) -> PResult<Element> {
        if self.eat(b'(') {
            let parts = self.list(Self::element)?;
            if parts.is_empty() {
                return Err(self.error_at(self.pos - 1, &["an element"]));
            }
            return Ok(Element::Tuple(parts));
        }
        self.number().map(Element::Int).map_err(|e| ParseError { expected: vec!["a number", "`(`"], ..e })
    }

    fn gens(&mut self) -> PResult<Vec<Element>> {
        self.list(Self::element)
    }

    fn ring(&mut self) -> PResult<RingSpec> {
        let (start, w) = self.word();
        match w {
            "Z" => Ok(RingSpec::Zn(self.number()?)),
            "ZZ" => Ok(RingSpec::Integers),
            "prod" => {
                self.expect(b'(', "`(`")?;
                let fs = self.list(Self::ring)?;
                if fs.len() < 2 {
                    return Err(self.error_at(self.pos - 1, &["`,`"]));
                }
                Ok(RingSpec::Product(fs))
            }
            "quot" => {
                self.expect(b'(', "`(`")?;
                let base = self.ring()?;
                self.expect(b';', "`;`")?;
                Ok(RingSpec::Quotient(Box::new(base), self.gens()?))
            }
            _ => Err(self.error_at(start, RING)),
        }
    }

    fn module(&mut self) -> PResult<ModuleSpec> {
        let (start, w) = self.word();
        if !matches!(w, "cyc" | "ab" | "dsum" | "pmod" | "qmod" | "free" | "smod" | "loc") {
            return Err(self.error_at(start, MODULE));
        }
        self.expect(b'(', "`(`")?;
        let nested = |p: &mut Self| -> PResult<(Box<ModuleSpec>, Vec<Element>)> {
            let m = p.module()?;
            p.expect(b';', "`;`")?;
            Ok((Box::new(m), p.gens()?))
        };
        Ok(match w {
            "cyc" => {
                let ring = self.ring()?;
                self.expect(b';', "`;`")?;
                ModuleSpec::Cyclic { ring, ideal: self.gens()? }
            }
            "ab" => ModuleSpec::Abelian(self.list(Self::number)?),
            "dsum" => ModuleSpec::DirectSum(self.list(Self::module)?),
            "pmod" => {
                let ring = self.ring()?;
                self.expect(b';', "`;`")?;
                ModuleSpec::OverProduct { ring, parts: self.list(Self::module)? }
            }
            "free" => {
                let ring = self.ring()?;
                self.expect(b';', "`;`")?;
                let rank = self.number()? as usize;
                self.expect(b')', "`)`")?;
                ModuleSpec::Free { ring, rank }
            }
            "qmod" => {
                let (module, gens) = nested(self)?;
                ModuleSpec::Quotient { module, gens }
            }
            "smod" => {
                let (module, gens) = nested(self)?;
                ModuleSpec::Sub { module, gens }
            }
            _ => {
                let (module, gens) = nested(self)?;
                ModuleSpec::Localized { module, gens }
            }
        })
    }

    fn wrapped(&mut self, name: &str, expected: &'static str) -> PResult<Vec<Element>> {
        let (start, w) = self.word();
        if w != name {
            return Err(self.error_at(start, &[expected]));
        }
        self.expect(b'(', "`(`")?;
        self.gens()
    }

    fn instance(&mut self) -> PResult<Instance> {
        let mut ring = None;
        let mut module = None;
        let mut subs = Vec::new();
        let mut mset = None;
        loop {
            self.blanks(true);
            while self.eat(b';') {}
            if self.peek().is_none() {
                break;
            }
            let (start, key) = self.word();
            if !matches!(key, "ring" | "mod" | "sub" | "mset") {
                return Err(self.error_at(start, KEY));
            }
            self.expect(b'=', "`=`")?;
            match key {
                "ring" => ring = Some(self.ring()?),
                "mod" => module = Some(self.module()?),
                "sub" => subs.push(self.wrapped("sub", "`sub(`")?),
                _ => mset = Some(self.wrapped("mset", "`mset(`")?),
            }
            self.blanks(false);
            match self.peek() {
                None | Some(b';') | Some(b'\n') => {}
                _ => return Err(self.error(&["`;`", "end of line"])),
            }
        }
        let Some(module) = module else { return Err(self.error(&["`mod=`"])) };
        Ok(Instance { ring: ring.unwrap_or_else(|| module.scalar_ring()), module, subs, mset })
    }
}

/// Parses an instance without building it.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    Parser { src: text.as_bytes(), pos: 0 }.instance()
}

/// A parsed and constructed instance.
pub struct Loaded {
    pub instance: Instance,
    pub module: Module,
    pub subs: Vec<Submodule>,
}

/// Parses an instance and builds its module and submodules.
pub fn load_instance(text: &str) -> Result<Loaded, SpecError> {
    let instance = parse_instance(text)?;
    let module = instance.build_module()?;
    let subs = instance.subs.iter().map(|g| module.submodule(g)).collect::<Result<Vec<_>, _>>()?;
    if let Some(gens) = &instance.mset {
        for g in gens {
            module.scalar_index(g)?;
        }
    }
    Ok(Loaded { instance, module, subs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let l = load_instance("ring=Z12; mod=cyc(Z12;0); sub=sub(8)").unwrap();
        let ints: Vec<String> = l.subs[0].labels().iter().map(|e| e.to_string()).collect();
        assert_eq!(ints, ["0", "4", "8"]);
        let l = load_instance("ring=ZZ; mod=ab(4); sub=sub()").unwrap();
        assert!(l.subs[0].is_zero());
        assert_eq!(l.module.order(), 4);
        assert!(matches!(load_instance("ring=Z1; mod=cyc(Z1;0)"), Err(SpecError::Semantic(_))));
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_instance("ring=Z12;\nmod=cyc(Y12;0)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 9));
        assert_eq!(e.expected, RING);
        assert_eq!(e.found, "`Y`");
        let e = parse_instance("ring=ZZ; mod=ab(4").unwrap_err();
        assert_eq!(e.found, "end of input");
        assert_eq!(e.expected, ["`,` or `)`"]);
        let e = parse_instance("ring=ZZ").unwrap_err();
        assert_eq!(e.expected, ["`mod=`"]);
        let e = parse_instance("rng=ZZ").unwrap_err();
        assert_eq!(e.expected, KEY);
        assert_eq!(e.to_string(), "line 1, column 1: expected one of `ring=`, `mod=`, `sub=`, `mset=`, found `r`");
    }

    #[test]
    fn round_trip() {
        for text in [
            "ring=ZZ; mod=ab(4); sub=sub()",
            "ring=prod(Z2,Z3); mod=pmod(prod(Z2,Z3);cyc(Z2;0),cyc(Z3;0)); sub=sub((1,0)); mset=mset((1,1))",
            "ring=quot(Z12;4); mod=free(quot(Z12;4);2); sub=sub((1,0),(0,2))",
            "ring=Z9; mod=qmod(dsum(cyc(Z9;3),cyc(Z9;0));(0,3)); sub=sub(); sub=sub((1,1))",
        ] {
            let inst = parse_instance(text).unwrap();
            assert_eq!(inst.to_string(), text);
        }
    }

    #[test]
    fn ring_mismatch_is_semantic() {
        let e = load_instance("ring=Z4; mod=ab(4)").err().unwrap();
        assert_eq!(e, SpecError::Semantic(Error::RingMismatch));
    }
}
