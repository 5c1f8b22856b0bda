//! Arithmetic Chern–Simons invariants for `n = 2` through the
//! decomposition formula, plus the quaternion obstruction criteria.

mod family;
mod obstruction;

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, is_squarefree, jacobi, split_type_quad, QuadField, SplitType};

pub use family::{
    bundled_families, cs_family, find_family, load_families, ClassChoice, ClosedForm, CsFamilyResult,
    FactorCheck, FamilyFixture, BUNDLED_FAMILIES_JSON,
};
pub use obstruction::{
    obstruction_check, quaternion_constraints, table1, ObstructionReport, QuaternionChecklist, Table1Row,
    TABLE1_PAIRS,
};

/// An element `k/n` of `(1/n)Z/Z`.
#[derive(Debug, Clone, Copy, Eq)]
pub struct InvariantValue {
    num: u32,
    n: u32,
}

impl InvariantValue {
    pub fn new(num: u64, n: u32) -> Self {
        assert!(n > 0, "denominator must be positive");
        Self {
            num: (num % n as u64) as u32,
            n,
        }
    }

    pub fn zero(n: u32) -> Self {
        Self::new(0, n)
    }

    pub fn half() -> Self {
        Self::new(1, 2)
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Lowest terms `(k, n)` with `0/1` for zero.
    pub fn reduced(&self) -> (u32, u32) {
        let g = gcd(self.num as u64, self.n as u64) as u32;
        (self.num / g, self.n / g)
    }
}

impl PartialEq for InvariantValue {
    fn eq(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }
}

impl std::ops::Add for InvariantValue {
    type Output = InvariantValue;

    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "adding invariants with different moduli");
        Self::new(self.num as u64 + rhs.num as u64, self.n)
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reduced() {
            (0, _) => f.write_str("0"),
            (k, d) => write!(f, "{k}/{d}"),
        }
    }
}

impl Serialize for InvariantValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `t_unit · ord / n` for a unit `t_unit` mod `n`.
pub fn local_invariant_n(t_unit: u64, ord: i64, n: u32) -> Result<InvariantValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if gcd(t_unit % n as u64, n as u64) != 1 {
        return Err(Error::InvalidArgument(format!("{t_unit} is not a unit mod {n}")));
    }
    let ord = ord.rem_euclid(n as i64) as u64;
    Ok(InvariantValue::new(t_unit % n as u64 * ord, n))
}

/// Restriction of the class `α` to a decomposition group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phi {
    Trivial,
    UnramifiedGenerator,
}

/// The local information consumed at one place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalDatum {
    pub phi: Phi,
    pub psi_ramified: bool,
    pub divides_n: bool,
}

impl LocalDatum {
    pub fn validate(&self) -> Result<()> {
        if self.divides_n && self.psi_ramified {
            return Err(Error::InvalidArgument("ψ must be unramified at places dividing n".into()));
        }
        Ok(())
    }

    /// `1/2` when `φ` is the unramified generator and `ψ` is ramified.
    pub fn contribution(&self) -> InvariantValue {
        let active = self.phi == Phi::UnramifiedGenerator && self.psi_ramified && !self.divides_n;
        InvariantValue::new(active as u64, 2)
    }
}

/// Sum of the local invariants, in `(1/2)Z/Z`.
pub fn cs_local_sum(data: &[LocalDatum]) -> Result<InvariantValue> {
    data.iter().try_fold(InvariantValue::zero(2), |acc, d| {
        d.validate()?;
        Ok(acc + d.contribution())
    })
}

/// Validated input `(D_L support, D, t, M)` for [`cs_final`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsCase {
    pub dl_support: Vec<u64>,
    pub d: u64,
    pub t: u64,
    pub m: i64,
}

/// `N = -D·t / M`, after checking the shared preconditions.
fn complement(d: u64, t: u64, m: i64) -> Result<i64> {
    if d == 0 || t == 0 {
        return Err(Error::InvalidArgument("D and t must be positive".into()));
    }
    if !is_squarefree(t as i64) {
        return Err(Error::InvalidArgument(format!("t = {t} is not squarefree")));
    }
    if gcd(d, t) != 1 {
        return Err(Error::InvalidArgument(format!("t = {t} is not prime to D = {d}")));
    }
    let dt = (d as i64)
        .checked_mul(t as i64)
        .ok_or_else(|| Error::InvalidArgument("D·t overflows".into()))?;
    if m == 0 || dt % m != 0 {
        return Err(Error::InvalidArgument(format!("M = {m} does not divide D·t = {dt}")));
    }
    let n = -dt / m;
    QuadField::new(m).map_err(|e| Error::InvalidArgument(format!("M: {e}")))?;
    QuadField::new(n).map_err(|e| Error::InvalidArgument(format!("N = {n}: {e}")))?;
    Ok(n)
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Splitting of the primes of `F = Q(√-Dt)` above `p` in `F^α = F(√M)`.
///
/// Above `p | Dt` exactly one of `M`, `N` is prime to `p` and decides; an
/// inert `p` always splits further; a split `p` follows `Q(√M)`.
pub fn splitting_in_f_alpha(p: u64, d: u64, t: u64, m: i64) -> Result<SplitType> {
    check_odd_prime(p)?;
    let n = complement(d, t, m)?;
    let dt = d as i64 * t as i64;
    let p_i = p as i64;
    let symbol = if dt % p_i == 0 {
        let other = if m % p_i == 0 { n } else { m };
        jacobi(other, p)?
    } else if jacobi(-dt, p)? == -1 {
        1
    } else {
        jacobi(m, p)?
    };
    Ok(if symbol == -1 { SplitType::Inert } else { SplitType::Split })
}

/// Result of [`cs_final`], with both prime counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsFinal {
    pub value: InvariantValue,
    pub s: u32,
    pub r: u32,
    pub n: i64,
}

/// `CS ≡ s/2` where `s` counts `p ∈ supp(D_L)`, `p | D`, inert in `Q(√M)`
/// or `Q(√N)`. The prime count `r` over `p ∤ t` is computed independently
/// and must have the same parity.
pub fn cs_final(dl_support: &[u64], d: u64, t: u64, m: i64) -> Result<CsFinal> {
    let n = complement(d, t, m)?;
    for &p in dl_support {
        check_odd_prime(p)?;
    }
    let (qm, qn) = (QuadField::new(m)?, QuadField::new(n)?);

    let mut s = 0;
    for &p in dl_support.iter().filter(|&&p| d % p == 0) {
        if split_type_quad(p, qm)? == SplitType::Inert || split_type_quad(p, qn)? == SplitType::Inert {
            s += 1;
        }
    }

    let f = QuadField::new(-(d as i64) * t as i64)?;
    let mut r = 0;
    for &p in dl_support.iter().filter(|&&p| t % p != 0) {
        let inert = splitting_in_f_alpha(p, d, t, m)? == SplitType::Inert;
        r += match split_type_quad(p, f)? {
            SplitType::Ramified => inert as u32,
            SplitType::Inert => 0,
            SplitType::Split => 2 * inert as u32,
        };
    }

    if r % 2 != s % 2 {
        return Err(Error::Consistency(format!(
            "r = {r} and s = {s} differ in parity for D = {d}, t = {t}, M = {m}"
        )));
    }
    Ok(CsFinal {
        value: InvariantValue::new(s as u64, 2),
        s,
        r,
        n,
    })
}

const SMALL_ODD_PRIMES: [u64; 16] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];

/// A random case satisfying the preconditions of [`cs_final`].
pub fn random_cs_case<R: Rng + ?Sized>(rng: &mut R) -> CsCase {
    loop {
        let mut primes = SMALL_ODD_PRIMES.to_vec();
        let k = rng.gen_range(1..=3);
        let mut d_primes = Vec::new();
        for _ in 0..k {
            let i = rng.gen_range(0..primes.len());
            d_primes.push(primes.swap_remove(i));
        }
        let d: u64 = d_primes.iter().product();
        let mut m: i64 = d_primes.iter().filter(|_| rng.gen_bool(0.5)).map(|&p| p as i64).product();
        if rng.gen_bool(0.5) {
            m = -m;
        }
        let t = rng.gen_range(1..=500u64);
        if gcd(d, t) != 1 || !is_squarefree(t as i64) {
            continue;
        }
        let dt = (d * t) as i64;
        if m == 1 || dt % m != 0 || -dt / m == 1 {
            continue;
        }
        let mut dl_support: Vec<u64> = SMALL_ODD_PRIMES
            .iter()
            .copied()
            .filter(|&p| {
                let weight = if d % p == 0 || t % p == 0 { 0.7 } else { 0.15 };
                rng.gen_bool(weight)
            })
            .collect();
        dl_support.sort_unstable();
        return CsCase { dl_support, d, t, m };
    }
}
