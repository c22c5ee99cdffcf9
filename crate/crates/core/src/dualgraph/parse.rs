//! Bracket notation.
//!
//! ```text
//! sum     := term ('+' term)*          (empty input is the empty sum)
//! term    := [count] graph
//! graph   := '[' items ']'                          chain
//!          | '[' weight (';' | ',') branch ',' branch ',' branch ']'   star
//! branch  := '[' items ']'
//! items   := segment (',' segment)*
//! segment := weight ['^' exp]          exp may be written {exp}; 2^0 is empty
//! ```

use std::fmt;

use super::{Canonical, DualGraph, DynkinType, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

pub fn parse_dynkin(text: &str) -> Result<DynkinType, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let mut components = Vec::new();
    p.skip_ws();
    if p.at_end() {
        return Ok(DynkinType::default());
    }
    loop {
        p.skip_ws();
        let start = p.pos;
        let count = if p.peek().is_some_and(|c| c.is_ascii_digit()) {
            let n = p.number()?;
            if n == 0 {
                return Err(p.error_at(start, "multiplier must be positive"));
            }
            n
        } else {
            1
        };
        let graph = p.graph()?;
        for _ in 0..count {
            components.push(graph.clone());
        }
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => p.pos += 1,
            Some(c) => return Err(p.error(format!("expected `+` or end of input, found `{}`", c as char))),
        }
    }
    DynkinType::from_graphs(components).map_err(|e| ParseError { position: 0, message: e.to_string() })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError { position, message: message.into() }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected `{}`, found `{}`", c as char, found as char))),
            None => Err(self.error(format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| self.error_at(start, "number out of range"))
    }

    fn weight(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let w = self.number()?;
        if w < 2 {
            return Err(self.error_at(start, format!("weight {w} is below 2")));
        }
        Ok(w)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        if self.peek() == Some(b'{') {
            self.pos += 1;
            let e = self.number()?;
            self.expect(b'}')?;
            Ok(e)
        } else {
            self.number()
        }
    }

    /// A weight with an optional repetition, already expanded.
    fn segment(&mut self, into: &mut Vec<u32>) -> Result<(), ParseError> {
        let w = self.weight()?;
        self.skip_ws();
        let times = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        into.extend(std::iter::repeat_n(w, times as usize));
        Ok(())
    }

    /// Comma-separated segments up to (not including) the closing bracket.
    fn items(&mut self, into: &mut Vec<u32>) -> Result<(), ParseError> {
        loop {
            self.segment(into)?;
            self.skip_ws();
            if self.peek() == Some(b',') && self.lookahead_not_bracket() {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn lookahead_not_bracket(&self) -> bool {
        let mut i = self.pos + 1;
        while self.src.get(i).is_some_and(|c| c.is_ascii_whitespace()) {
            i += 1;
        }
        self.src.get(i) != Some(&b'[')
    }

    fn branch(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(b'[')?;
        let start = self.pos;
        let mut weights = Vec::new();
        self.items(&mut weights)?;
        self.expect(b']')?;
        if weights.is_empty() {
            return Err(self.error_at(start, "star branch has length 0"));
        }
        Ok(weights)
    }

    fn graph(&mut self) -> Result<DualGraph, ParseError> {
        self.expect(b'[')?;
        let start = self.pos;
        let first = self.weight()?;
        self.skip_ws();
        let star_sep = match self.peek() {
            Some(b';') => true,
            Some(b',') => !self.lookahead_not_bracket(),
            _ => false,
        };
        if star_sep {
            self.pos += 1;
            let mut branches = Vec::with_capacity(3);
            for i in 0..3 {
                if i > 0 {
                    self.expect(b',')?;
                }
                branches.push(self.branch()?);
            }
            self.expect(b']')?;
            let branches: [Vec<u32>; 3] = branches.try_into().expect("three branches");
            return DualGraph::star(first, branches).map_err(|e| self.graph_error(start, e));
        }
        // Re-read the first segment so that a leading `w^k` is handled uniformly.
        self.pos = start;
        let mut weights = Vec::new();
        self.items(&mut weights)?;
        self.expect(b']')?;
        if weights.is_empty() {
            return Err(self.error_at(start, "chain has no vertices"));
        }
        DualGraph::chain(weights).map_err(|e| self.graph_error(start, e))
    }

    fn graph_error(&self, start: usize, e: GraphError) -> ParseError {
        self.error_at(start, e.to_string())
    }
}

fn format_run(weights: &[u32], out: &mut String) {
    let mut i = 0;
    let mut first = true;
    while i < weights.len() {
        let w = weights[i];
        let mut j = i;
        while j < weights.len() && weights[j] == w {
            j += 1;
        }
        if !first {
            out.push(',');
        }
        first = false;
        if j - i == 1 {
            out.push_str(&w.to_string());
        } else {
            out.push_str(&format!("{w}^{}", j - i));
        }
        i = j;
    }
}

pub(super) fn format_canonical(c: &Canonical) -> String {
    let mut out = String::from("[");
    match c {
        Canonical::Chain(w) => format_run(w, &mut out),
        Canonical::Star { center, branches } => {
            out.push_str(&center.to_string());
            out.push(';');
            for (i, b) in branches.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('[');
                format_run(b, &mut out);
                out.push(']');
            }
        }
    }
    out.push(']');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(text: &str) -> String {
        parse_dynkin(text).unwrap().to_string()
    }

    #[test]
    fn chains_and_repetition() {
        let d = parse_dynkin("[3,2^2]").unwrap();
        assert_eq!(d.components().len(), 1);
        assert_eq!(d.components()[0].chain_weights().unwrap().len(), 3);
        assert_eq!(canon("[3,2^2]"), "[2^2,3]");
        assert_eq!(canon("[3, 2^{0}, 4,2,2]"), "[2^2,4,3]");
        assert_eq!(canon("[2^0,3]"), "[3]");
    }

    #[test]
    fn stars_in_both_spellings() {
        assert_eq!(canon("[2;[2],[2],[2]]"), "[2;[2],[2],[2]]");
        assert_eq!(canon("[3,[2],[2],[2]]"), "[3;[2],[2],[2]]");
        assert_eq!(canon("[2;[2^2,3],[2],[2]]"), "[2;[2],[2],[2^2,3]]");
    }

    #[test]
    fn sums_and_multipliers() {
        let d = parse_dynkin("[3,2^2]+2[3]+[2^5]").unwrap();
        let shown: Vec<String> = d.components().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["[2^5]", "[2^2,3]", "[3]", "[3]"]);
        assert_eq!(d.to_string(), "[2^5]+[2^2,3]+2[3]");
        assert!(parse_dynkin("").unwrap().is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_dynkin("[2,1]").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(e.message.contains("below 2"));
        let e = parse_dynkin("[3").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_dynkin("[2;[2],[2^0],[2]]").unwrap_err().message.contains("length 0"));
        assert!(parse_dynkin("[2^0]").is_err());
        assert!(parse_dynkin("0[2]").is_err());
        assert!(parse_dynkin("[2]+").is_err());
        assert!(parse_dynkin("[2] [3]").is_err());
        assert!(parse_dynkin("[2;[2],[2]]").is_err());
    }
}
