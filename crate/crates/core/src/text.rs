//! Reading and writing diagrams in the textual grammar.
//!
//! ```text
//! term     := summand ("+" summand)*
//! summand  := "0" | "Om" | "pi" | int
//!           | "phi(" term "," term ")" | "suc(" term "," int ")"
//!           | "d(" term ";" quadlist ";" term ")"
//! quadlist := ε | "[" int "," term "," term "," term "]" ("," "[" ... "]")*
//! ```
//!
//! Whitespace is insignificant. Integer literals in term position denote
//! natural numbers. Parsing normalizes sums, Veblen terms and successors;
//! collapses are built as written.

use crate::diagram::{Diagram, Quad};
use crate::error::{DiagramError, Result};

/// Parses a diagram without checking validity.
pub fn parse(text: &str) -> Result<Diagram> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let d = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(d)
}

/// Parses one diagram per non-empty line.
pub fn parse_lines(text: &str) -> Result<Vec<Diagram>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse)
        .collect()
}

/// Canonical text of a diagram.
pub fn print(d: &Diagram) -> String {
    d.text().to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> DiagramError {
        DiagramError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{tok}`")))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| DiagramError::Syntax { pos: start, msg: "integer out of range".into() })
    }

    fn term(&mut self) -> Result<Diagram> {
        let mut acc = self.summand()?;
        while self.eat("+") {
            let rhs = self.summand()?;
            acc = acc.add(&rhs);
        }
        Ok(acc)
    }

    fn summand(&mut self) -> Result<Diagram> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Diagram::nat(self.int()?)),
            _ if self.eat("Om") => Ok(Diagram::omega()),
            _ if self.eat("pi") => Ok(Diagram::pi()),
            _ if self.eat("phi(") => {
                let a = self.term()?;
                self.expect(",")?;
                let b = self.term()?;
                self.expect(")")?;
                Ok(Diagram::phi(a, b))
            }
            _ if self.eat("suc(") => {
                let b = self.term()?;
                self.expect(",")?;
                let k = self.int()?;
                self.expect(")")?;
                if k == 0 {
                    return Err(self.err("successor exponent must be positive"));
                }
                Ok(Diagram::suc(b, k))
            }
            _ if self.eat("d(") => {
                let s = self.term()?;
                self.expect(";")?;
                let mut quads = Vec::new();
                if self.peek() == Some(b'[') {
                    loop {
                        self.expect("[")?;
                        let j = self.int()?;
                        self.expect(",")?;
                        let kappa = self.term()?;
                        self.expect(",")?;
                        let tau = self.term()?;
                        self.expect(",")?;
                        let nu = self.term()?;
                        self.expect("]")?;
                        quads.push(Quad::new(j, kappa, tau, nu));
                        if !self.eat(",") {
                            break;
                        }
                    }
                }
                self.expect(";")?;
                let a = self.term()?;
                self.expect(")")?;
                Ok(Diagram::d_unchecked(s, quads, a))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Kind;

    #[test]
    fn parse_examples() {
        let d = parse("d(Om;;0)").unwrap();
        assert_eq!(d, Diagram::d_unchecked(Diagram::omega(), vec![], Diagram::zero()));
        let two = parse("phi(0,0)+phi(0,0)").unwrap();
        assert!(matches!(two.kind(), Kind::Sum(cs) if cs.len() == 2));
        let r = parse("d(pi; [3,pi,pi,0]; 0)").unwrap();
        assert_eq!(r.text(), "d(pi;[3,pi,pi,0];0)");
    }

    #[test]
    fn sugar_and_errors() {
        assert_eq!(parse("2").unwrap(), Diagram::nat(2));
        assert_eq!(parse("0").unwrap(), Diagram::zero());
        assert!(matches!(parse("phi(0"), Err(DiagramError::Syntax { .. })));
        assert!(parse("Om Om").is_err());
        assert!(parse("suc(pi,0)").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["0", "Om", "pi", "phi(0,0)+phi(0,0)", "d(Om;;phi(0,phi(0,0)))", "suc(d(pi;[3,pi,pi,0];0),2)"] {
            let d = parse(s).unwrap();
            assert_eq!(print(&d), s);
        }
    }
}
