//! Expression parser for algebra elements and scalars.
//!
//! Precedence, tightest first: `^`, unary `-`, `*` `/` and juxtaposition,
//! binary `+` `-`. `q^(n/2)` lowers to `t^n`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freealg::{nf_iso2, nf_m2hat, Algebra, Element, Iso2Gen, M2Gen, WordComb};
use crate::scalars::{GaussianRational, Scalar};

/// A parsed, not yet normalized, expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(Scalar),
    Iso2(WordComb<Iso2Gen>),
    M2(WordComb<M2Gen>),
}

impl Expr {
    pub fn algebra(&self) -> Option<Algebra> {
        match self {
            Expr::Scalar(_) => None,
            Expr::Iso2(_) => Some(Algebra::Iso2),
            Expr::M2(_) => Some(Algebra::M2),
        }
    }

    fn into_algebra(self, a: Algebra) -> Result<Self> {
        match (self, a) {
            (Expr::Scalar(c), Algebra::Iso2) => Ok(Expr::Iso2(WordComb::term(vec![], c))),
            (Expr::Scalar(c), Algebra::M2) => Ok(Expr::M2(WordComb::term(vec![], c))),
            (x, a) if x.algebra() == Some(a) => Ok(x),
            (x, a) => Err(Error::MixedAlgebra(format!(
                "expression in {} used where {a} is expected",
                x.algebra().map_or("scalars".into(), |b| b.to_string())
            ))),
        }
    }

    /// Normal form in `algebra`, or in the expression's own algebra.
    pub fn normalize(self, algebra: Option<Algebra>) -> Result<Element> {
        let a = algebra.or(self.algebra()).unwrap_or(Algebra::Iso2);
        match self.into_algebra(a)? {
            Expr::Iso2(w) => Ok(Element::Iso2(nf_iso2(&w)?)),
            Expr::M2(w) => Ok(Element::M2(nf_m2hat(&w)?)),
            Expr::Scalar(_) => unreachable!("lifted above"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column: col,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int: String = chars[start..i].iter().collect();
            let mut value = BigRational::from_integer(int.parse::<BigInt>().unwrap_or_default());
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let f0 = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let frac: String = chars[f0..i].iter().collect();
                if !frac.is_empty() {
                    let den = BigInt::from(10).pow(frac.len() as u32);
                    value += BigRational::new(frac.parse::<BigInt>().expect("digits"), den);
                }
            }
            out.push(Token { tok: Tok::Num(value), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
        } else if "+-*/^()[]".contains(c) {
            i += 1;
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
        } else {
            return err(l0, c0, format!("unexpected character '{c}'"));
        }
        col += i - start;
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        let found = match &t.tok {
            Tok::End => "end of input".to_string(),
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
        };
        err(t.line, t.col, format!("{}, found {found}", message.into()))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Sym('+') => 1,
                Tok::Sym('-') => -1,
                _ => return Ok(acc),
            };
            self.next();
            let rhs = self.term()?;
            acc = add(acc, rhs, op)?;
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Sym('*') => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = mul(acc, rhs)?;
                }
                Tok::Sym('/') => {
                    let at = self.next();
                    let rhs = self.unary()?;
                    let Expr::Scalar(d) = rhs else {
                        return err(at.line, at.col, "only scalars can divide");
                    };
                    let inv = d.inv().or_else(|_| err(at.line, at.col, "division by zero"))?;
                    acc = mul(acc, Expr::Scalar(inv))?;
                }
                _ if self.starts_factor() => {
                    let rhs = self.unary()?;
                    acc = mul(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            let x = self.unary()?;
            return mul(Expr::Scalar(-Scalar::one()), x);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base_tok = self.peek().clone();
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        let caret = self.next();
        let (num, den) = self.exponent()?;
        let is_q = base_tok.tok == Tok::Ident("q".into());
        match den {
            1 => pow(base, num).or_else(|e| err(caret.line, caret.col, e.to_string())),
            2 if is_q => Ok(Expr::Scalar(Scalar::t_pow(num))),
            _ => err(
                caret.line,
                caret.col,
                format!("fractional exponent {num}/{den} is only allowed as q^(n/2)"),
            ),
        }
    }

    /// `n`, `-n`, `(n)`, `(-n)` or `(n/d)`.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        let int = |p: &mut Self| -> Result<i64> {
            let neg = if p.peek().tok == Tok::Sym('-') {
                p.next();
                true
            } else {
                false
            };
            match p.peek().tok.clone() {
                Tok::Num(n) if n.is_integer() => {
                    p.next();
                    let v: i64 = n.to_integer().try_into().or_else(|_| p.fail("exponent too large"))?;
                    Ok(if neg { -v } else { v })
                }
                _ => p.fail("expected an integer exponent"),
            }
        };
        if self.peek().tok == Tok::Sym('(') {
            self.next();
            let n = int(self)?;
            let mut d = 1;
            if self.peek().tok == Tok::Sym('/') {
                self.next();
                d = int(self)?;
                if d <= 0 {
                    return self.fail("exponent denominator must be positive");
                }
            }
            self.expect(')')?;
            let g = num_integer::gcd(n, d);
            Ok((n / g, d / g))
        } else {
            Ok((int(self)?, 1))
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(n) => {
                self.next();
                Ok(Expr::Scalar(Scalar::from_gauss(GaussianRational::new(n, BigRational::zero()))))
            }
            Tok::Sym('(') => {
                self.next();
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            Tok::Ident(ref name) => {
                self.next();
                self.ident(name, &t)
            }
            _ => self.fail("expected a number, symbol or '('"),
        }
    }

    fn ident(&mut self, name: &str, at: &Token) -> Result<Expr> {
        let iso = |g| Ok(Expr::Iso2(WordComb::letter(g)));
        let m2 = |g| Ok(Expr::M2(WordComb::letter(g)));
        match name {
            "i" => Ok(Expr::Scalar(Scalar::i())),
            "q" => Ok(Expr::Scalar(Scalar::q())),
            "s" => Ok(Expr::Scalar(Scalar::s())),
            "r" => Ok(Expr::Scalar(Scalar::r())),
            "I" => iso(Iso2Gen::I),
            "T1" => iso(Iso2Gen::T1),
            "T2" => iso(Iso2Gen::T2),
            "K" => m2(M2Gen::K),
            "Kinv" => m2(M2Gen::Kinv),
            "E" => m2(M2Gen::E),
            "F" => m2(M2Gen::F),
            "G" => {
                self.expect('[')?;
                let (k, d) = self.exponent()?;
                if d != 1 {
                    return self.fail("G index must be an integer");
                }
                self.expect(']')?;
                let k: i32 = k.try_into().or_else(|_| self.fail("G index too large"))?;
                m2(M2Gen::G(k))
            }
            _ => err(at.line, at.col, format!("unknown symbol '{name}'")),
        }
    }
}

fn add(a: Expr, b: Expr, sign: i64) -> Result<Expr> {
    let c = Scalar::from_int(sign);
    match (a, b) {
        (Expr::Scalar(x), Expr::Scalar(y)) => Ok(Expr::Scalar(&x + &(&c * &y))),
        (x, y) => {
            let alg = x.algebra().or(y.algebra()).expect("one side is not scalar");
            match (x.into_algebra(alg)?, y.into_algebra(alg)?) {
                (Expr::Iso2(x), Expr::Iso2(y)) => Ok(Expr::Iso2(x.add(&y.scale(&c)))),
                (Expr::M2(x), Expr::M2(y)) => Ok(Expr::M2(x.add(&y.scale(&c)))),
                _ => unreachable!("lifted to a common algebra"),
            }
        }
    }
}

fn mul(a: Expr, b: Expr) -> Result<Expr> {
    Ok(match (a, b) {
        (Expr::Scalar(x), Expr::Scalar(y)) => Expr::Scalar(&x * &y),
        (Expr::Scalar(c), Expr::Iso2(w)) | (Expr::Iso2(w), Expr::Scalar(c)) => Expr::Iso2(w.scale(&c)),
        (Expr::Scalar(c), Expr::M2(w)) | (Expr::M2(w), Expr::Scalar(c)) => Expr::M2(w.scale(&c)),
        (Expr::Iso2(x), Expr::Iso2(y)) => Expr::Iso2(x.concat(&y)),
        (Expr::M2(x), Expr::M2(y)) => Expr::M2(x.concat(&y)),
        (x, y) => {
            return Err(Error::MixedAlgebra(format!(
                "cannot multiply {} by {}",
                x.algebra().expect("non-scalar"),
                y.algebra().expect("non-scalar")
            )))
        }
    })
}

fn pow(x: Expr, n: i64) -> Result<Expr> {
    match x {
        Expr::Scalar(c) => Ok(Expr::Scalar(c.pow(n)?)),
        w if n < 0 => Err(Error::InvalidArgument(format!(
            "negative power {n} of a {} element",
            w.algebra().expect("non-scalar")
        ))),
        w => {
            let one = match w.algebra() {
                Some(Algebra::M2) => Expr::M2(WordComb::one()),
                _ => Expr::Iso2(WordComb::one()),
            };
            (0..n).try_fold(one, |acc, _| mul(acc, w.clone()))
        }
    }
}

/// Parse an expression without normalizing it.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    if p.peek().tok == Tok::End {
        return p.fail("empty expression");
    }
    let x = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.fail("expected an operator or end of input");
    }
    Ok(x)
}

/// Parse and normalize an algebra element.
pub fn parse_element(src: &str, algebra: Option<Algebra>) -> Result<Element> {
    parse_expr(src)?.normalize(algebra)
}

/// Parse an exact scalar such as `i q^(1/2)` or `(1 + r)/s`.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    match parse_expr(src)? {
        Expr::Scalar(c) => Ok(c),
        x => Err(Error::InvalidArgument(format!(
            "expected a scalar, got a {} element",
            x.algebra().expect("non-scalar")
        ))),
    }
}

/// Parse a complex number; `q` may appear when `q` is given.
pub fn parse_complex(src: &str, q: Option<Complex64>) -> Result<Complex64> {
    let c = parse_scalar(src)?;
    if let Some(v) = c.constant_value() {
        let (re, im) = v.to_f64_pair();
        return Ok(Complex64::new(re, im));
    }
    let q = q.ok_or_else(|| Error::InvalidArgument(format!("'{src}' is not a constant")))?;
    let nan = Complex64::new(f64::NAN, 0.0);
    let v = c.eval_numeric(q, nan, nan)?;
    if v.re.is_nan() || v.im.is_nan() {
        return Err(Error::InvalidArgument(format!("'{src}' may only involve q")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{casimir_pbw, Iso2Element};

    #[test]
    fn trailing_operator_reports_column() {
        match parse_expr("T1^2 +") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn half_powers_of_q() {
        assert_eq!(parse_scalar("q^(3/2)").unwrap(), Scalar::t_pow(3));
        assert_eq!(parse_scalar("q^(-1/2)").unwrap(), Scalar::t_pow(-1));
        assert_eq!(parse_scalar("q^-2").unwrap(), Scalar::q_pow(-2));
        assert!(matches!(parse_scalar("q^(1/3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("s^(1/2)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn precedence() {
        // -x^2 is -(x^2); juxtaposition binds like *
        assert_eq!(parse_scalar("-2^2").unwrap(), Scalar::from_int(-4));
        assert_eq!(parse_scalar("2 3 + 1").unwrap(), Scalar::from_int(7));
        assert_eq!(parse_scalar("1/2*4").unwrap(), Scalar::from_int(2));
        assert_eq!(parse_scalar("0.25").unwrap(), Scalar::from_ratio(1, 4));
    }

    #[test]
    fn casimir_definition_parses() {
        let src = "T1^2 + T2^2 - (q - q^-1) T1 T2 I";
        assert_eq!(parse_element(src, None).unwrap().algebra(), Algebra::Iso2);
        let c = casimir_pbw();
        let back = parse_element(&c.to_string(), None).unwrap();
        assert_eq!(back, Element::Iso2(c));
    }

    #[test]
    fn m2_generators_and_mixing() {
        let x = parse_element("G[-1] (q^-1 K + q Kinv)", None).unwrap();
        assert_eq!(x.to_string(), "1");
        assert!(matches!(parse_expr("K T1"), Err(Error::MixedAlgebra(_))));
        assert_eq!(
            parse_element("3", Some(Algebra::Iso2)).unwrap(),
            Element::Iso2(Iso2Element::scalar(Scalar::from_int(3)))
        );
    }

    #[test]
    fn complex_values() {
        let v = parse_complex("0.8+0.3i", None).unwrap();
        assert!((v - Complex64::new(0.8, 0.3)).norm() < 1e-15);
        let q = Complex64::new(4.0, 0.0);
        let v = parse_complex("i q^(1/2)", Some(q)).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-14);
        assert!(parse_complex("s", Some(q)).is_err());
    }
}
