//! Integer polynomials in one variable: parsing, printing, discriminants and
//! modular checks of explicit factorizations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest degree accepted by [`poly_discriminant`].
pub const MAX_DISC_DEGREE: usize = 8;

/// Default bit budget for intermediate values of the discriminant.
pub const DISC_BIT_BUDGET: u64 = 4096;

/// Coefficients constant term first; no trailing zeros, so the zero
/// polynomial has an empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as i64)
                .collect(),
        )
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.unsigned_abs();
            if abs != 1 || k == 0 {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        poly_parse(s)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn number(&mut self) -> Result<Option<u64>> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some('0'..='9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        self.text[start..self.pos].parse().map(Some).map_err(|_| Error::Parse {
            offset: start,
            message: "integer out of range".into(),
        })
    }

    /// `^k` or `^{k}` after an `x`; absent means exponent 1.
    fn exponent(&mut self) -> Result<u64> {
        if !self.eat('^') {
            return Ok(1);
        }
        let braced = self.eat('{');
        let k = self.number()?.ok_or_else(|| self.error("expected exponent"))?;
        if braced && !self.eat('}') {
            return Err(self.error("expected `}`"));
        }
        Ok(k)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }
}

const MAX_PARSE_DEGREE: u64 = 4096;

/// Parses `c*x^k ± ...`. The `*` is optional, `x^{k}` is accepted, and
/// repeated powers are summed.
pub fn poly_parse(text: &str) -> Result<IntPoly> {
    let mut cur = Cursor::new(text);
    let mut coeffs: Vec<i64> = Vec::new();
    if cur.at_end() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    while !cur.at_end() {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else if first {
            false
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
        first = false;
        let term_start = {
            cur.skip_ws();
            cur.pos
        };
        let coeff = cur.number()?;
        let had_star = coeff.is_some() && cur.eat('*');
        let power = if cur.eat('x') {
            cur.exponent()?
        } else if had_star {
            return Err(cur.error("expected `x` after `*`"));
        } else if coeff.is_none() {
            return Err(cur.error("expected a term"));
        } else {
            0
        };
        if power > MAX_PARSE_DEGREE {
            return Err(Error::Parse {
                offset: term_start,
                message: format!("exponent {power} is too large"),
            });
        }
        let magnitude = i64::try_from(coeff.unwrap_or(1)).map_err(|_| Error::Parse {
            offset: term_start,
            message: "coefficient out of range".into(),
        })?;
        let value = if negative { -magnitude } else { magnitude };
        let k = power as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = coeffs[k].checked_add(value).ok_or_else(|| Error::Parse {
            offset: term_start,
            message: "coefficient overflow".into(),
        })?;
    }
    Ok(IntPoly::new(coeffs))
}

/// `disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lead(p)`.
pub fn poly_discriminant(p: &IntPoly) -> Result<BigInt> {
    poly_discriminant_with_budget(p, DISC_BIT_BUDGET)
}

/// As [`poly_discriminant`], failing with a resource error once any
/// intermediate value exceeds `max_bits`.
pub fn poly_discriminant_with_budget(p: &IntPoly, max_bits: u64) -> Result<BigInt> {
    let n = match p.degree() {
        Some(n) if (1..=MAX_DISC_DEGREE).contains(&n) => n,
        Some(n) => {
            return Err(Error::InvalidArgument(format!(
                "discriminant needs degree 1..={MAX_DISC_DEGREE}, got {n}"
            )))
        }
        None => return Err(Error::InvalidArgument("discriminant of the zero polynomial".into())),
    };
    if n == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(p, &p.derivative(), max_bits)?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let lead = BigInt::from(p.leading());
    debug_assert!((&res % &lead).is_zero());
    Ok(res / lead * sign)
}

/// Determinant of the Sylvester matrix of `a` and `b`.
fn resultant(a: &IntPoly, b: &IntPoly, max_bits: u64) -> Result<BigInt> {
    let (m, n) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, count) in [(a, m, n), (b, n, m)] {
        for shift in 0..count {
            let mut row = vec![BigInt::zero(); size];
            for (j, &c) in poly.coeffs().iter().rev().enumerate() {
                row[shift + j] = BigInt::from(c);
            }
            debug_assert_eq!(poly.coeffs().len(), deg + 1);
            rows.push(row);
        }
    }
    bareiss_det(rows, max_bits)
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_det(mut m: Vec<Vec<BigInt>>, max_bits: u64) -> Result<BigInt> {
    let n = m.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                if v.bits() > max_bits {
                    return Err(Error::Resource(format!(
                        "discriminant intermediate exceeds {max_bits} bits"
                    )));
                }
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// A product `∏ (x + a_i)^{e_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProduct {
    pub factors: Vec<(i64, u32)>,
}

impl LinearProduct {
    /// Expands the product modulo `p`, coefficients constant term first.
    pub fn expand_mod(&self, p: u64) -> Vec<u64> {
        let mut acc = vec![1 % p];
        for &(a, e) in &self.factors {
            let linear = vec![a.rem_euclid(p as i64) as u64, 1 % p];
            acc = mul_mod_poly(&acc, &pow_mod_poly(&linear, e, p), p);
        }
        while acc.last() == Some(&0) {
            acc.pop();
        }
        acc
    }
}

impl fmt::Display for LinearProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(a, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            match a.signum() {
                0 => f.write_str("(x)")?,
                1 => write!(f, "(x + {a})")?,
                _ => write!(f, "(x - {})", a.unsigned_abs())?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `(x+a)^e * (x-b) ...`; the `*` between factors is optional.
pub fn parse_linear_product(text: &str) -> Result<LinearProduct> {
    let mut cur = Cursor::new(text);
    let mut factors = Vec::new();
    while !cur.at_end() {
        if !factors.is_empty() {
            cur.eat('*');
        }
        if !cur.eat('(') {
            return Err(cur.error("expected `(`"));
        }
        if !cur.eat('x') {
            return Err(cur.error("expected `x`"));
        }
        let a = if cur.eat(')') {
            0
        } else {
            let negative = if cur.eat('+') {
                false
            } else if cur.eat('-') {
                true
            } else {
                return Err(cur.error("expected `+` or `-`"));
            };
            let v = cur.number()?.ok_or_else(|| cur.error("expected a constant"))?;
            let v = i64::try_from(v).map_err(|_| cur.error("constant out of range"))?;
            if !cur.eat(')') {
                return Err(cur.error("expected `)`"));
            }
            if negative {
                -v
            } else {
                v
            }
        };
        let e = if cur.eat('^') {
            let braced = cur.eat('{');
            let e = cur.number()?.ok_or_else(|| cur.error("expected exponent"))?;
            if braced && !cur.eat('}') {
                return Err(cur.error("expected `}`"));
            }
            u32::try_from(e).map_err(|_| cur.error("exponent out of range"))?
        } else {
            1
        };
        factors.push((a, e));
    }
    if factors.is_empty() {
        return Err(cur.error("empty product"));
    }
    Ok(LinearProduct { factors })
}

/// True iff `lhs ≡ rhs (mod p)` coefficientwise.
pub fn poly_eq_mod(lhs: &IntPoly, rhs: &LinearProduct, p: u32) -> bool {
    assert!(p >= 2, "modulus must be at least 2");
    lhs.reduce_mod(p as u64) == rhs.expand_mod(p as u64)
}

fn mul_mod_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % p) % p;
        }
    }
    out
}

fn pow_mod_poly(base: &[u64], mut e: u32, p: u64) -> Vec<u64> {
    let mut result = vec![1 % p];
    let mut base = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod_poly(&result, &base, p);
        }
        base = mul_mod_poly(&base, &base, p);
        e >>= 1;
    }
    result
}

/// Integer value of a small discriminant, for callers that need `i64`.
pub fn to_i64(v: &BigInt) -> Option<i64> {
    if v.abs().bits() < 63 {
        i64::try_from(v).ok()
    } else {
        None
    }
}
