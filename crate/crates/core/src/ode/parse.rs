//! Recursive-descent parser for operators and rational functions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ['^' ['-'] integer]
//! atom   := integer | 't' | 'D' | 'del' | 'δ' | '(' expr ')'
//! ```
//!
//! Products are taken in the ring of differential operators, so
//! `del*t` is `t*del + t`. Division is only by expressions without a
//! derivation and divides every coefficient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::operator::{DifferentialOperator, Form};
use crate::arith::{RatFunc, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    T,
    D,
    Del,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().unwrap())));
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'δ' => Tok::Del,
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = match word.as_str() {
                    "t" => Tok::T,
                    "D" => Tok::D,
                    "del" | "delta" => Tok::Del,
                    _ => {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: format!("unknown identifier {word:?}"),
                        })
                    }
                };
                out.push((start, tok));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Operator polynomial: `terms[k]` multiplies the `k`-th power of the
/// derivation.
#[derive(Clone, Debug)]
struct OpPoly {
    terms: Vec<RatFunc>,
}

impl OpPoly {
    fn func(f: RatFunc) -> Self {
        OpPoly { terms: vec![f] }
    }

    fn derivation() -> Self {
        OpPoly {
            terms: vec![RatFunc::zero(), RatFunc::one()],
        }
    }

    fn order(&self) -> usize {
        self.terms
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn as_func(&self) -> Option<RatFunc> {
        (self.order() == 0).then(|| self.terms[0].clone())
    }

    fn trimmed(mut self) -> Self {
        let n = self.order();
        self.terms.truncate(n + 1);
        self
    }

    fn add(&self, other: &OpPoly) -> OpPoly {
        let n = self.terms.len().max(other.terms.len());
        let get = |p: &OpPoly, i: usize| p.terms.get(i).cloned().unwrap_or_else(RatFunc::zero);
        OpPoly {
            terms: (0..n).map(|i| &get(self, i) + &get(other, i)).collect(),
        }
        .trimmed()
    }

    fn neg(&self) -> OpPoly {
        OpPoly {
            terms: self.terms.iter().map(|c| -c).collect(),
        }
    }

    fn scale_func(&self, f: &RatFunc) -> OpPoly {
        OpPoly {
            terms: self.terms.iter().map(|c| c * f).collect(),
        }
        .trimmed()
    }

    /// Product in the Weyl algebra of the given derivation.
    fn mul(&self, other: &OpPoly, form: Option<Form>) -> OpPoly {
        let ni = self.order();
        let nj = other.order();
        if ni == 0 {
            return other.scale_func(&self.terms[0]);
        }
        let form = form.expect("derivation present implies a form");
        let apply = |f: &RatFunc| -> RatFunc {
            match form {
                Form::Ddt => f.derivative(),
                Form::Delta => &RatFunc::t() * &f.derivative(),
            }
        };
        let mut out = vec![RatFunc::zero(); ni + nj + 1];
        for (j, b) in other.terms.iter().enumerate().take(nj + 1) {
            if b.is_zero() {
                continue;
            }
            // iterated images of b under the derivation
            let mut images = vec![b.clone()];
            for _ in 0..ni {
                let next = apply(images.last().unwrap());
                images.push(next);
            }
            for (i, a) in self.terms.iter().enumerate().take(ni + 1) {
                if a.is_zero() {
                    continue;
                }
                let mut binom = BigInt::one();
                for m in 0..=i {
                    if m > 0 {
                        binom = binom * BigInt::from(i - m + 1) / BigInt::from(m);
                    }
                    if images[m].is_zero() {
                        continue;
                    }
                    let term = (a * &images[m]).scale(&BigRational::from_integer(binom.clone()));
                    let slot = &mut out[i - m + j];
                    *slot = &*slot + &term;
                }
            }
        }
        OpPoly { terms: out }.trimmed()
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    form: Option<Form>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            end: text.chars().count(),
            form: None,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn set_form(&mut self, f: Form) -> Result<()> {
        match self.form {
            Some(g) if g != f => Err(Error::MixedOperator),
            _ => {
                self.form = Some(f);
                Ok(())
            }
        }
    }

    fn expr(&mut self) -> Result<OpPoly> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                acc = acc.add(&t.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<OpPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let f = self.factor()?;
                acc = acc.mul(&f, self.form);
            } else if self.peek() == Some(&Tok::Slash) {
                let at = self.here();
                self.pos += 1;
                let f = self.factor()?;
                let Some(den) = f.as_func() else {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: "division by an operator".into(),
                    });
                };
                if den.is_zero() {
                    return Err(Error::Syntax {
                        pos: at,
                        msg: "division by zero".into(),
                    });
                }
                acc = acc.scale_func(&den.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<OpPoly> {
        if self.eat(&Tok::Minus) {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        let at = self.here();
        let k = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                n
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let neg_inner = self.eat(&Tok::Minus);
                let Some(Tok::Num(n)) = self.peek().cloned() else {
                    return self.err("expected integer exponent");
                };
                self.pos += 1;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                if neg_inner {
                    -n
                } else {
                    n
                }
            }
            _ => return self.err("expected integer exponent"),
        };
        let k: i64 = match i64::try_from(if neg { -k } else { k }) {
            Ok(v) if v.abs() <= 10_000 => v,
            _ => {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "exponent too large".into(),
                })
            }
        };
        if let Some(f) = base.as_func() {
            if k < 0 && f.is_zero() {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "negative power of zero".into(),
                });
            }
            return Ok(OpPoly::func(f.pow(k)));
        }
        if k < 0 {
            return Err(Error::Syntax {
                pos: at,
                msg: "negative power of an operator".into(),
            });
        }
        let mut acc = OpPoly::func(RatFunc::one());
        for _ in 0..k {
            acc = acc.mul(&base, self.form);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<OpPoly> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        let v = match tok {
            Tok::Num(n) => OpPoly::func(RatFunc::constant(BigRational::from_integer(n))),
            Tok::T => OpPoly::func(RatFunc::t()),
            Tok::D => {
                self.set_form(Form::Ddt)?;
                OpPoly::derivation()
            }
            Tok::Del => {
                self.set_form(Form::Delta)?;
                OpPoly::derivation()
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                return Ok(inner);
            }
            other => return self.err(format!("unexpected token {other:?}")),
        };
        self.pos += 1;
        Ok(v)
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }
}

/// Parses an operator in `D = d/dt` or `del = t d/dt`; the result is monic
/// and keeps the form used in the text.
pub fn parse_operator(text: &str) -> Result<DifferentialOperator> {
    let mut p = Parser::new(text)?;
    let v = p.expr()?;
    p.finish()?;
    let form = p.form.ok_or(Error::ZeroLeading)?;
    DifferentialOperator::from_powers(form, &v.terms)
}

/// Parses a rational function of `t`.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let mut p = Parser::new(text)?;
    let v = p.expr()?;
    p.finish()?;
    v.as_func().ok_or_else(|| Error::Syntax {
        pos: 0,
        msg: "expected a function of t, found an operator".into(),
    })
}

/// Parses a polynomial in `t` with rational coefficients.
pub fn parse_polynomial(text: &str) -> Result<UniPoly> {
    let f = parse_ratfunc(text)?;
    if !f.is_polynomial() {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("{text:?} is not a polynomial"),
        });
    }
    Ok(f.num().clone())
}
