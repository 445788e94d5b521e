//! Relation expressions.
//!
//! ```text
//! expr := term (("+" | "-") term)*
//! term := [integer "*"]? name ("*" name)*
//! name := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is insignificant. Parsing is purely syntactic; names are bound
//! to arrows and vertices when the expression is resolved against a quiver.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::QuivalgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: BigInt,
    pub path: Vec<String>,
}

/// A canonical sum of terms: equal paths are merged, zero terms dropped,
/// first-occurrence order kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationExpr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, QuivalgError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value = text[start..i].parse::<BigInt>().expect("digits");
                out.push((start, Tok::Int(value)));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(QuivalgError::Syntax {
                    position: i,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: &str) -> Result<T, QuivalgError> {
        Err(QuivalgError::Syntax {
            position: self.offset(),
            message: message.to_string(),
        })
    }

    fn name(&mut self) -> Result<String, QuivalgError> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected a name"),
        }
    }

    fn term(&mut self) -> Result<Term, QuivalgError> {
        let mut coefficient = BigInt::one();
        if let Some(Tok::Int(v)) = self.peek() {
            coefficient = v.clone();
            self.pos += 1;
            match self.peek() {
                Some(Tok::Star) => self.pos += 1,
                _ => return self.error("expected `*` after coefficient"),
            }
        }
        let mut path = vec![self.name()?];
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            path.push(self.name()?);
        }
        Ok(Term { coefficient, path })
    }

    fn expr(&mut self) -> Result<Vec<Term>, QuivalgError> {
        let mut terms = vec![self.term()?];
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                None => break,
                _ => return self.error("expected `+`, `-` or end of input"),
            };
            self.pos += 1;
            let mut t = self.term()?;
            if negate {
                t.coefficient = -t.coefficient;
            }
            terms.push(t);
        }
        Ok(terms)
    }
}

impl RelationExpr {
    pub fn parse(text: &str) -> Result<Self, QuivalgError> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(QuivalgError::Syntax {
                position: 0,
                message: "empty expression".into(),
            });
        }
        let mut p = Parser {
            toks,
            pos: 0,
            end: text.len(),
        };
        let raw = p.expr()?;
        let mut terms: Vec<Term> = Vec::new();
        for t in raw {
            match terms.iter_mut().find(|u| u.path == t.path) {
                Some(u) => u.coefficient += t.coefficient,
                None => terms.push(t),
            }
        }
        terms.retain(|t| !t.coefficient.is_zero());
        Ok(RelationExpr { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl FromStr for RelationExpr {
    type Err = QuivalgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationExpr::parse(s)
    }
}

impl fmt::Display for RelationExpr {
    /// Prints the terms in order. The grammar has no leading sign, so a
    /// negative first term is written as `0*p - c*p`, which parses back to
    /// the same expression because equal paths merge in place.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(first) = self.terms.first() else {
            return f.write_str("0");
        };
        if first.coefficient.is_negative() {
            write!(f, "0*{}", first.path.join("*"))?;
        }
        for (idx, t) in self.terms.iter().enumerate() {
            if t.coefficient.is_negative() {
                f.write_str(" - ")?;
            } else if idx > 0 {
                f.write_str(" + ")?;
            }
            let magnitude = t.coefficient.abs();
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            f.write_str(&t.path.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_monomial() {
        let e = RelationExpr::parse("a*a").unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].coefficient, BigInt::from(1));
        assert_eq!(e.terms[0].path, vec!["a", "a"]);
    }

    #[test]
    fn difference_of_paths() {
        let e = RelationExpr::parse("b*b - a*b*a").unwrap();
        let coeffs: Vec<BigInt> = e.terms.iter().map(|t| t.coefficient.clone()).collect();
        assert_eq!(coeffs, vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(e.to_string(), "b*b - a*b*a");
    }

    #[test]
    fn coefficients_and_whitespace() {
        let e = RelationExpr::parse(" 3 * x*y+ 2*y -x*y ").unwrap();
        assert_eq!(e.terms[0].coefficient, BigInt::from(2));
        assert_eq!(e.terms[1].coefficient, BigInt::from(2));
        assert_eq!(e.to_string(), "2*x*y + 2*y");
        let neg = RelationExpr::parse("a - 2*b*b").unwrap();
        assert_eq!(RelationExpr::parse(&neg.to_string()).unwrap(), neg);
    }

    #[test]
    fn negative_leading_term_prints_within_the_grammar() {
        let e = RelationExpr::parse("a - 2*a + b").unwrap();
        assert_eq!(e.to_string(), "0*a - a + b");
        assert_eq!(RelationExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn cancellation_leaves_zero() {
        assert!(RelationExpr::parse("a - a").unwrap().is_zero());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = RelationExpr::parse("a*").unwrap_err();
        assert_eq!(
            err,
            QuivalgError::Syntax {
                position: 2,
                message: "expected a name".into()
            }
        );
        assert!(matches!(
            RelationExpr::parse("a + $b"),
            Err(QuivalgError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            RelationExpr::parse("-a"),
            Err(QuivalgError::Syntax { position: 0, .. })
        ));
        assert!(matches!(
            RelationExpr::parse("2 a"),
            Err(QuivalgError::Syntax { position: 2, .. })
        ));
        assert!(RelationExpr::parse("").is_err());
    }
}
