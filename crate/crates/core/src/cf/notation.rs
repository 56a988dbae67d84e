//! Text form `[a0; a1, ..., an, (b1, ..., bp)]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::ContinuedFraction;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    LParen,
    RParen,
    Semi,
    Comma,
    Int(BigInt),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'[' => Token::Open,
            b']' => Token::Close,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b';' => Token::Semi,
            b',' => Token::Comma,
            b'-' | b'+' | b'0'..=b'9' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let lit = &text[start..i];
                let n = lit
                    .parse::<BigInt>()
                    .map_err(|_| Error::parse(start, format!("bad integer {lit:?}")))?;
                out.push((start, Token::Int(n)));
                continue;
            }
            _ => {
                return Err(Error::parse(
                    i,
                    format!("unexpected character {:?}", text[i..].chars().next().unwrap()),
                ))
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.offset(), format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Int(n))) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(Error::parse(self.offset(), "expected an integer")),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<ContinuedFraction> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        end: text.len(),
    };
    p.expect(Token::Open, "'['")?;
    let mut preperiod = vec![p.int()?];
    let mut period = Vec::new();
    if p.peek() == Some(&Token::Semi) {
        p.pos += 1;
        loop {
            if p.peek() == Some(&Token::LParen) {
                p.pos += 1;
                period.push(p.int()?);
                while p.peek() == Some(&Token::Comma) {
                    p.pos += 1;
                    period.push(p.int()?);
                }
                p.expect(Token::RParen, "')'")?;
                break;
            }
            preperiod.push(p.int()?);
            if p.peek() == Some(&Token::Comma) {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(Token::Close, "']'")?;
    if p.pos != p.tokens.len() {
        return Err(Error::parse(p.offset(), "trailing input after ']'"));
    }
    ContinuedFraction::new(preperiod, period)
}

impl FromStr for ContinuedFraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, rest) = self.preperiod.split_first().expect("a0 always present");
        write!(f, "[{head}")?;
        if rest.is_empty() && self.period.is_empty() {
            return write!(f, "]");
        }
        f.write_str("; ")?;
        let mut items: Vec<String> = rest.iter().map(ToString::to_string).collect();
        if !self.period.is_empty() {
            let inner: Vec<String> = self.period.iter().map(ToString::to_string).collect();
            items.push(format!("({})", inner.join(", ")));
        }
        write!(f, "{}]", items.join(", "))
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parses_examples() {
        let cf: ContinuedFraction = "[0; 2, (1)]".parse().unwrap();
        assert_eq!(cf.preperiod(), ints(&[0, 2]).as_slice());
        assert_eq!(cf.period(), ints(&[1]).as_slice());

        let cf: ContinuedFraction = "[0;(1)]".parse().unwrap();
        assert_eq!(cf.preperiod(), ints(&[0]).as_slice());
        assert_eq!(cf.period(), ints(&[1]).as_slice());

        let cf: ContinuedFraction = "[0; 3, 1, 1, 1, 100, (1)]".parse().unwrap();
        assert_eq!(cf.preperiod(), ints(&[0, 3, 1, 1, 1, 100]).as_slice());
        assert_eq!(cf.period(), ints(&[1]).as_slice());
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a: ContinuedFraction = " [ -3 ;4 ,\n( 1 ,2 ) ] ".parse().unwrap();
        let b: ContinuedFraction = "[-3;4,(1,2)]".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[-3; 4, (1, 2)]");
    }

    #[test]
    fn renders() {
        for s in ["[0; 2, (1)]", "[5]", "[1; 2, 3]", "[0; (1, 2)]", "[-2; 7]"] {
            let cf: ContinuedFraction = s.parse().unwrap();
            assert_eq!(cf.to_string(), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "bad", "", "[", "[]", "[0;]", "[0; 1,]", "[0; (1)", "[0; (1), 2]", "[0; ()]",
            "[0 1]", "[0; 1] x", "0; 1", "[0; 1.5]", "[0; -]",
        ] {
            assert!(
                matches!(bad.parse::<ContinuedFraction>(), Err(Error::Parse { .. })),
                "{bad:?} should fail to parse"
            );
        }
    }

    #[test]
    fn rejects_small_quotients() {
        assert!(matches!(
            "[0; 0, 1]".parse::<ContinuedFraction>(),
            Err(Error::InvalidQuotient { index: 1, .. })
        ));
        assert!(matches!(
            "[0; 2, (1, -1)]".parse::<ContinuedFraction>(),
            Err(Error::InvalidQuotient { .. })
        ));
    }
}
