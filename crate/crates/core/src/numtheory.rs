//! 64-bit exact number theory: primality, factorization, Legendre and
//! Jacobi symbols, splitting of odd primes in quadratic fields, and the
//! Δ-invariant of a pair of fundamental discriminants.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller–Rabin; the first twelve primes as witnesses are
/// sufficient for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        const BLOCK: u64 = 64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BLOCK.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// A nonzero integer with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredInt {
    pub sign: i8,
    pub factors: BTreeMap<u64, u32>,
}

impl FactoredInt {
    pub fn value(&self) -> i128 {
        let mag: i128 = self
            .factors
            .iter()
            .map(|(&p, &e)| (p as i128).pow(e))
            .product();
        self.sign as i128 * mag
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.values().all(|&e| e == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.sign == 1 && self.factors.len() == 1 && self.factors.values().all(|&e| e == 1)
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Complete factorization of a nonzero 64-bit integer.
pub fn factorize(n: i64) -> Result<FactoredInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut factors = BTreeMap::new();
    let mut m = n.unsigned_abs();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while m % p == 0 {
            *factors.entry(p).or_insert(0) += 1;
            m /= p;
        }
    }
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime(x) {
            *factors.entry(x).or_insert(0) += 1;
            continue;
        }
        if let Some(r) = perfect_square_root(x) {
            stack.push(r);
            stack.push(r);
            continue;
        }
        let d = pollard_rho(x);
        stack.push(d);
        stack.push(x / d);
    }
    Ok(FactoredInt {
        sign: if n < 0 { -1 } else { 1 },
        factors,
    })
}

fn perfect_square_root(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s.checked_mul(s) == Some(x))
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n).map(|f| f.is_squarefree()).unwrap_or(false)
}

/// Jacobi symbol `(a / m)` for odd positive `m`.
pub fn jacobi(a: i64, m: u64) -> Result<i8> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::InvalidArgument(format!("Jacobi symbol needs an odd positive modulus, got {m}")));
    }
    let mut a = a.rem_euclid(m as i64) as u64;
    let mut m = m;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    Ok(if m == 1 { sign } else { 0 })
}

/// Legendre symbol `(a / p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("Legendre symbol needs an odd prime, got {p}")));
    }
    jacobi(a, p)
}

/// The quadratic field Q(√d) for squarefree `d ≠ 0, 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField(i64);

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::InvalidArgument(format!("Q(sqrt({d})) is not a quadratic field")));
        }
        if !is_squarefree(d) {
            return Err(Error::InvalidArgument(format!("{d} is not squarefree")));
        }
        Ok(Self(d))
    }

    pub fn d(&self) -> i64 {
        self.0
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Split => "split",
            SplitType::Inert => "inert",
            SplitType::Ramified => "ramified",
        })
    }
}

/// Decomposition of an odd prime `p` in `field`.
pub fn split_type_quad(p: u64, field: QuadField) -> Result<SplitType> {
    if p == 2 {
        return Err(Error::InvalidArgument("splitting of 2 is not supported".into()));
    }
    let symbol = legendre(field.d(), p)?;
    Ok(match symbol {
        0 => SplitType::Ramified,
        1 => SplitType::Split,
        _ => SplitType::Inert,
    })
}

/// Checks the hypotheses under which Δ is defined: positive, odd,
/// squarefree, ≡ 1 (mod 4), pairwise coprime.
pub fn check_delta_inputs(d1: i64, d2: i64) -> Result<()> {
    for (name, d) in [("d1", d1), ("d2", d2)] {
        if d <= 0 {
            return Err(Error::InvalidArgument(format!("{name} = {d} is not positive")));
        }
        if d % 2 == 0 {
            return Err(Error::InvalidArgument(format!("{name} = {d} is not odd")));
        }
        if !is_squarefree(d) {
            return Err(Error::InvalidArgument(format!("{name} = {d} is not squarefree")));
        }
        if d % 4 != 1 {
            return Err(Error::InvalidArgument(format!("{name} = {d} is not 1 mod 4")));
        }
    }
    if gcd(d1 as u64, d2 as u64) != 1 {
        return Err(Error::InvalidArgument(format!("{d1} and {d2} are not coprime")));
    }
    Ok(())
}

/// Δ(d1, d2): product of `(d2 / p)` over the primes `p | d1`.
pub fn delta_invariant(d1: i64, d2: i64) -> Result<i8> {
    check_delta_inputs(d1, d2)?;
    let mut acc = 1i8;
    for p in factorize(d1)?.primes() {
        acc *= legendre(d2, p)?;
    }
    Ok(acc)
}
