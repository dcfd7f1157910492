//! Recursive-descent parser for set and ideal expressions.
//!
//! ```text
//! set    := inter ('|' inter)*
//! inter  := unary (('&' | '-') unary)*
//! unary  := '~' unary | atom
//! atom   := 'all' | 'empty' | 'finite:[' n (',' n)* ']' | 'ap:' r ',' m | '(' set ')'
//! ideal  := 'fin' | 'density0' | 'powerset(' set ')'
//!         | 'gen[' set (',' set)* (';' 'closure=' bool)? ']'
//!         | 'join(' ideal ',' ideal ')' | 'restrict(' ideal ',' set ')' | name
//! ```
//!
//! Errors report a 1-based column inside the expression on line 1.

use crate::error::{Error, Result};
use crate::ideal::IdealSpec;
use crate::sets::SymbolicSet;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a dyn Fn(&str) -> Option<IdealSpec>,
}

pub fn parse_set(text: &str) -> Result<SymbolicSet> {
    let mut p = Parser::new(text, &|_| None);
    let s = p.set()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_ideal(text: &str) -> Result<IdealSpec> {
    parse_ideal_with(text, &|_| None)
}

/// Like [`parse_ideal`], resolving bare identifiers through `names`.
pub fn parse_ideal_with(text: &str, names: &dyn Fn(&str) -> Option<IdealSpec>) -> Result<IdealSpec> {
    let mut p = Parser::new(text, names);
    let i = p.ideal()?;
    p.finish()?;
    Ok(i)
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a dyn Fn(&str) -> Option<IdealSpec>) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, names }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse { line: 1, column: pos + 1, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            Err(self.error(format!("expected `{c}`, found {found}")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        (start, self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.error_at(start, format!("number `{text}` out of range")))
    }

    fn set(&mut self) -> Result<SymbolicSet> {
        let mut acc = self.inter()?;
        while self.eat('|') {
            let rhs = self.inter()?;
            acc = acc.union(&rhs)?;
        }
        Ok(acc)
    }

    fn inter(&mut self) -> Result<SymbolicSet> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('&') {
                acc = acc.intersect(&self.unary()?)?;
            } else if self.eat('-') {
                acc = acc.difference(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SymbolicSet> {
        if self.eat('~') {
            return Ok(self.unary()?.complement());
        }
        if self.eat('(') {
            let s = self.set()?;
            self.expect(')')?;
            return Ok(s);
        }
        let (start, w) = self.word();
        match w.as_str() {
            "all" => Ok(SymbolicSet::all()),
            "empty" => Ok(SymbolicSet::empty()),
            "finite" => {
                self.expect(':')?;
                self.expect('[')?;
                let mut items = Vec::new();
                if !self.eat(']') {
                    loop {
                        let at = self.pos;
                        let n = self.number()?;
                        if n == 0 {
                            return Err(self.error_at(at, "naturals start at 1"));
                        }
                        items.push(n);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                Ok(SymbolicSet::finite(items))
            }
            "ap" => {
                self.expect(':')?;
                let r = self.number()?;
                self.expect(',')?;
                self.skip_ws();
                let at = self.pos;
                let m = self.number()?;
                if m == 0 {
                    return Err(self.error_at(at, "modulus must be positive"));
                }
                SymbolicSet::progression(r, m).map_err(|e| match e {
                    Error::ModulusCap { .. } => e,
                    other => self.error_at(start, other.to_string()),
                })
            }
            "" => Err(self.error(match self.chars.get(self.pos) {
                Some(c) => format!("expected a set, found `{c}`"),
                None => "expected a set, found end of input".to_string(),
            })),
            other => Err(self.error_at(start, format!("unknown set form `{other}`"))),
        }
    }

    fn ideal(&mut self) -> Result<IdealSpec> {
        let (start, w) = self.word();
        match w.as_str() {
            "fin" => Ok(IdealSpec::Fin),
            "density0" => Ok(IdealSpec::DensityZero),
            "powerset" => {
                self.expect('(')?;
                let m = self.set()?;
                self.expect(')')?;
                Ok(IdealSpec::powerset(m))
            }
            "gen" => {
                self.expect('[')?;
                let mut generators = vec![self.set()?];
                while self.eat(',') {
                    generators.push(self.set()?);
                }
                let mut closure = false;
                if self.eat(';') {
                    let (at, key) = self.word();
                    if key != "closure" {
                        return Err(self.error_at(at, format!("expected `closure`, found `{key}`")));
                    }
                    self.expect('=')?;
                    let (at, value) = self.word();
                    closure = match value.as_str() {
                        "true" => true,
                        "false" => false,
                        _ => return Err(self.error_at(at, format!("expected `true` or `false`, found `{value}`"))),
                    };
                }
                self.expect(']')?;
                Ok(IdealSpec::generated(generators, closure))
            }
            "join" => {
                self.expect('(')?;
                let l = self.ideal()?;
                self.expect(',')?;
                let r = self.ideal()?;
                self.expect(')')?;
                Ok(IdealSpec::join(l, r))
            }
            "restrict" => {
                self.expect('(')?;
                let b = self.ideal()?;
                self.expect(',')?;
                let m = self.set()?;
                self.expect(')')?;
                Ok(IdealSpec::restrict(b, m))
            }
            "" => Err(self.error("expected an ideal")),
            name => (self.names)(name).ok_or_else(|| self.error_at(start, format!("unknown ideal `{name}`"))),
        }
    }
}

/// Maps an expression-relative parse error to a position in the enclosing
/// text, given where the expression starts.
pub fn relocate(err: Error, line: usize, column: usize) -> Error {
    match err {
        Error::Parse { line: 1, column: c, message } => Error::Parse { line, column: column + c - 1, message },
        other => other,
    }
}
