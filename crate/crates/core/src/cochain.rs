//! Inhomogeneous group cochains with coefficients in Z/n.
//!
//! A degree-`i` cochain is a dense table over `G^i`, indexed row-major with
//! the first argument most significant. The differential is
//!
//! ```text
//! df(g1..g_{i+1}) = g1·f(g2..g_{i+1})
//!                 + Σ_{k=1..i} (-1)^k f(g1.., g_k g_{k+1}, ..g_{i+1})
//!                 + (-1)^{i+1} f(g1..g_i)
//! ```

use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{construct_group, Elem, FiniteGroup};
use crate::linalg::Matrix;
use crate::numtheory::{gcd, is_prime};

/// Largest cochain degree the library will materialise.
pub const MAX_DEGREE: usize = 6;

/// Z/n with G acting through multiplication by units.
///
/// Every additive automorphism of Z/n is multiplication by a unit, so a
/// table of multipliers describes an arbitrary action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffModule {
    modulus: u32,
    mult: Vec<u32>,
}

impl CoeffModule {
    pub fn trivial(modulus: u32, group: &FiniteGroup) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            modulus,
            mult: vec![1 % modulus; group.order()],
        }
    }

    /// `g` acts by `(-1)^{character(g)}`, for a homomorphism to Z/2.
    pub fn sign(modulus: u32, group: &FiniteGroup, character: &[usize]) -> Result<Self> {
        let mult = character
            .iter()
            .map(|&c| if c % 2 == 0 { 1 % modulus } else { modulus - 1 })
            .collect();
        Self::new(modulus, group, mult)
    }

    pub fn new(modulus: u32, group: &FiniteGroup, mult: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModule("modulus must be positive".into()));
        }
        if mult.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} multipliers for a group of order {}",
                mult.len(),
                group.order()
            )));
        }
        let mult: Vec<u32> = mult.into_iter().map(|m| m % modulus).collect();
        if let Some(g) = mult.iter().position(|&m| gcd(m as u64, modulus as u64) != 1) {
            return Err(Error::InvalidModule(format!("element {g} does not act by a unit")));
        }
        if mult[0] != 1 % modulus {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = (mult[g] as u64 * mult[h] as u64 % modulus as u64) as u32;
                if mult[group.mul(g, h)] != gh {
                    return Err(Error::InvalidModule(format!("action is not multiplicative at ({g}, {h})")));
                }
            }
        }
        Ok(Self { modulus, mult })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn multipliers(&self) -> &[u32] {
        &self.mult
    }

    pub fn is_trivial(&self) -> bool {
        self.mult.iter().all(|&m| m == 1 % self.modulus)
    }

    /// `g · m`.
    #[inline]
    pub fn act(&self, g: Elem, m: u32) -> u32 {
        (self.mult[g] as u64 * m as u64 % self.modulus as u64) as u32
    }

    /// Coefficients of a cup product: Z/n ⊗ Z/n with the diagonal action.
    pub fn tensor(&self, other: &CoeffModule) -> Result<CoeffModule> {
        if self.modulus != other.modulus || self.mult.len() != other.mult.len() {
            return Err(Error::Mismatch("coefficient modules differ".into()));
        }
        let n = self.modulus as u64;
        Ok(CoeffModule {
            modulus: self.modulus,
            mult: self
                .mult
                .iter()
                .zip(&other.mult)
                .map(|(&a, &b)| (a as u64 * b as u64 % n) as u32)
                .collect(),
        })
    }

    /// Pulls the action back along `map: H → G`.
    pub fn pullback(&self, map: &[Elem]) -> CoeffModule {
        CoeffModule {
            modulus: self.modulus,
            mult: map.iter().map(|&g| self.mult[g]).collect(),
        }
    }
}

/// A cochain `G^degree → Z/n`.
#[derive(Debug, Clone)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    coeff: CoeffModule,
    degree: usize,
    values: Vec<u32>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.coeff == other.coeff
            && self.values == other.values
            && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }
}

impl Eq for Cochain {}

fn table_len(order: usize, degree: usize) -> Result<usize> {
    if degree > MAX_DEGREE {
        return Err(Error::DegreeCap(degree));
    }
    order
        .checked_pow(degree as u32)
        .filter(|&n| n <= 1 << 28)
        .ok_or_else(|| Error::Resource(format!("|G|^{degree} with |G| = {order} is too large")))
}

impl Cochain {
    pub fn zero(group: Arc<FiniteGroup>, coeff: CoeffModule, degree: usize) -> Result<Self> {
        let len = table_len(group.order(), degree)?;
        Ok(Self {
            group,
            coeff,
            degree,
            values: vec![0; len],
        })
    }

    pub fn from_values(
        group: Arc<FiniteGroup>,
        coeff: CoeffModule,
        degree: usize,
        values: Vec<u32>,
    ) -> Result<Self> {
        let len = table_len(group.order(), degree)?;
        if values.len() != len {
            return Err(Error::Mismatch(format!("{} values for a table of size {len}", values.len())));
        }
        let n = coeff.modulus();
        let values = values.into_iter().map(|v| v % n).collect();
        Ok(Self {
            group,
            coeff,
            degree,
            values,
        })
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        coeff: CoeffModule,
        degree: usize,
        mut f: impl FnMut(&[Elem]) -> u32,
    ) -> Result<Self> {
        let mut c = Self::zero(group, coeff, degree)?;
        let n = c.coeff.modulus();
        let order = c.group.order();
        let mut tuple = vec![0; degree];
        for idx in 0..c.values.len() {
            decode(idx, order, &mut tuple);
            c.values[idx] = f(&tuple) % n;
        }
        Ok(c)
    }

    pub fn random<R: Rng + ?Sized>(
        group: Arc<FiniteGroup>,
        coeff: CoeffModule,
        degree: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let n = coeff.modulus();
        let mut c = Self::zero(group, coeff, degree)?;
        for v in &mut c.values {
            *v = rng.gen_range(0..n);
        }
        Ok(c)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeff(&self) -> &CoeffModule {
        &self.coeff
    }

    pub fn modulus(&self) -> u32 {
        self.coeff.modulus()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn index_of(&self, tuple: &[Elem]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        encode(tuple, self.group.order())
    }

    #[inline]
    pub fn get(&self, tuple: &[Elem]) -> u32 {
        self.values[self.index_of(tuple)]
    }

    pub fn set(&mut self, tuple: &[Elem], value: u32) {
        let i = self.index_of(tuple);
        self.values[i] = value % self.coeff.modulus();
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Vanishes whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let mut tuple = vec![0; self.degree];
        let order = self.group.order();
        (0..self.values.len()).all(|idx| {
            decode(idx, order, &mut tuple);
            self.values[idx] == 0 || tuple.iter().all(|&g| g != 0)
        })
    }

    /// Same group, coefficients and degree.
    pub fn compatible(&self, other: &Cochain) -> bool {
        self.degree == other.degree
            && self.coeff == other.coeff
            && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }

    pub fn scale(&self, k: u32) -> Cochain {
        let n = self.modulus() as u64;
        let mut out = self.clone();
        for v in &mut out.values {
            *v = (*v as u64 * k as u64 % n) as u32;
        }
        out
    }

    /// Iterates over `(tuple, value)` pairs in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<Elem>, u32)> + '_ {
        let order = self.group.order();
        let degree = self.degree;
        self.values.iter().enumerate().map(move |(idx, &v)| {
            let mut t = vec![0; degree];
            decode(idx, order, &mut t);
            (t, v)
        })
    }

    pub fn to_dump(&self) -> CochainDump {
        CochainDump {
            group: self.group.label().to_string(),
            n: self.modulus(),
            degree: self.degree,
            values: self.values.clone(),
            action: (!self.coeff.is_trivial()).then(|| self.coeff.multipliers().to_vec()),
        }
    }

    fn combine(&self, other: &Cochain, op: impl Fn(u64, u64, u64) -> u64) -> Cochain {
        assert!(
            self.compatible(other),
            "cochain arithmetic on incompatible operands (degrees {} and {})",
            self.degree,
            other.degree
        );
        let n = self.modulus() as u64;
        let mut out = self.clone();
        for (v, &w) in out.values.iter_mut().zip(&other.values) {
            *v = op(*v as u64, w as u64, n) as u32;
        }
        out
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    /// Panics if the operands are not [`Cochain::compatible`].
    fn add(self, rhs: &Cochain) -> Cochain {
        self.combine(rhs, |a, b, n| (a + b) % n)
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        self.combine(rhs, |a, b, n| (a + n - b) % n)
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        let n = self.modulus();
        let mut out = self.clone();
        for v in &mut out.values {
            *v = (n - *v) % n;
        }
        out
    }
}

/// JSON form of a cochain: `{group, n, degree, values}` with `values` in
/// row-major tuple order. `action` lists unit multipliers per element and
/// is omitted for trivial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainDump {
    pub group: String,
    pub n: u32,
    pub degree: usize,
    pub values: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<u32>>,
}

impl CochainDump {
    /// Rebuilds the cochain, constructing the group from its built-in name.
    pub fn load(&self) -> Result<Cochain> {
        let group = Arc::new(construct_group(&self.group)?);
        let coeff = match &self.action {
            Some(mult) => CoeffModule::new(self.n, &group, mult.clone())?,
            None => CoeffModule::trivial(self.n, &group),
        };
        Cochain::from_values(group, coeff, self.degree, self.values.clone())
    }
}

#[inline]
fn encode(tuple: &[Elem], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

#[inline]
fn decode(mut idx: usize, order: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
}

/// Calls `emit(coefficient, source_tuple)` for each term of `dx(tuple)`,
/// where `x` has degree `tuple.len() - 1`. Coefficients are residues mod n.
fn differential_terms(
    group: &FiniteGroup,
    coeff: &CoeffModule,
    tuple: &[Elem],
    scratch: &mut Vec<Elem>,
    mut emit: impl FnMut(u32, &[Elem]),
) {
    let n = coeff.modulus();
    let i = tuple.len() - 1;
    let minus_one = n - 1 % n;
    let sign = |k: usize| if k % 2 == 0 { 1 % n } else { minus_one };

    emit(coeff.multipliers()[tuple[0]], &tuple[1..]);
    for k in 1..=i {
        scratch.clear();
        scratch.extend_from_slice(&tuple[..k - 1]);
        scratch.push(group.mul(tuple[k - 1], tuple[k]));
        scratch.extend_from_slice(&tuple[k + 1..]);
        emit(sign(k), scratch);
    }
    emit(sign(i + 1), &tuple[..i]);
}

/// The coboundary `df`.
pub fn differential(f: &Cochain) -> Result<Cochain> {
    let degree = f.degree + 1;
    let mut out = Cochain::zero(f.group.clone(), f.coeff.clone(), degree)?;
    let order = f.group.order();
    let n = f.modulus() as u64;
    let mut tuple = vec![0; degree];
    let mut scratch = Vec::with_capacity(degree);
    for idx in 0..out.values.len() {
        decode(idx, order, &mut tuple);
        let mut acc = 0u64;
        differential_terms(&f.group, &f.coeff, &tuple, &mut scratch, |c, src| {
            acc += c as u64 * f.values[encode(src, order)] as u64;
        });
        out.values[idx] = (acc % n) as u32;
    }
    Ok(out)
}

/// Right conjugation action `f^a = a^{-1} · f ∘ Ad_a`.
pub fn conj_action(f: &Cochain, a: Elem) -> Cochain {
    let g = &f.group;
    let a_inv = g.inv(a);
    let mut conj = Vec::with_capacity(f.degree);
    let mut out = f.clone();
    let order = g.order();
    let mut tuple = vec![0; f.degree];
    for idx in 0..f.values.len() {
        decode(idx, order, &mut tuple);
        conj.clear();
        conj.extend(tuple.iter().map(|&x| g.conj(a, x)));
        out.values[idx] = f.coeff.act(a_inv, f.values[encode(&conj, order)]);
    }
    out
}

/// Cup product `(a ∪ b)(g1..g_{p+q}) = a(g1..gp) · (g1⋯gp)·b(g_{p+1}..g_{p+q})`,
/// with values in the tensor product of the coefficient modules.
pub fn cup(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if !(Arc::ptr_eq(&a.group, &b.group) || *a.group == *b.group) {
        return Err(Error::Mismatch("cup product of cochains on different groups".into()));
    }
    if a.modulus() != b.modulus() {
        return Err(Error::Mismatch(format!(
            "cup product of moduli {} and {}",
            a.modulus(),
            b.modulus()
        )));
    }
    let coeff = a.coeff.tensor(&b.coeff)?;
    let (p, q) = (a.degree, b.degree);
    let n = a.modulus() as u64;
    let group = a.group.clone();
    Cochain::from_fn(group.clone(), coeff, p + q, |t| {
        let front = a.get(&t[..p]) as u64;
        let acted = b.coeff.act(group.product(&t[..p]), b.get(&t[p..])) as u64;
        (front * acted % n) as u32
    })
}

pub fn is_cocycle(f: &Cochain) -> Result<bool> {
    Ok(differential(f)?.is_zero())
}

/// Solves `dx = f` over Z/p. Returns a witness `x` with `differential(x) == f`
/// exactly, or `None` when `f` is not a coboundary.
///
/// Normalized input is solved on the normalized basis of `C^{i-1}`; other
/// input on the full basis.
pub fn is_coboundary(f: &Cochain) -> Result<Option<Cochain>> {
    let p = f.modulus();
    if !is_prime(p as u64) {
        return Err(Error::UnsupportedModulus(p));
    }
    if f.degree == 0 {
        return Err(Error::InvalidArgument("degree-0 cochains have no coboundary preimage".into()));
    }
    let normalized = f.is_normalized();
    let group = &f.group;
    let order = group.order();
    let src_degree = f.degree - 1;
    let basis = Basis::new(order, normalized);
    let rows = basis.size(f.degree);
    let cols = basis.size(src_degree);

    let mut matrix = Matrix::zeros(p, rows, cols)?;
    let mut rhs = Vec::with_capacity(rows);
    let mut tuple = vec![0; f.degree];
    let mut scratch = Vec::new();
    for r in 0..rows {
        basis.tuple(r, &mut tuple);
        rhs.push(f.get(&tuple));
        differential_terms(group, &f.coeff, &tuple, &mut scratch, |c, src| {
            if let Some(col) = basis.index(src) {
                matrix.add_to(r, col, c);
            }
        });
    }
    let Some(sol) = matrix.solve(&rhs) else {
        return Ok(None);
    };
    let mut x = Cochain::zero(group.clone(), f.coeff.clone(), src_degree)?;
    let mut t = vec![0; src_degree];
    for (col, v) in sol.into_iter().enumerate() {
        basis.tuple(col, &mut t);
        x.set(&t, v);
    }
    debug_assert_eq!(differential(&x)?, *f);
    Ok(Some(x))
}

/// Indexing of either all tuples or only identity-free tuples.
struct Basis {
    order: usize,
    normalized: bool,
}

impl Basis {
    fn new(order: usize, normalized: bool) -> Self {
        Self { order, normalized }
    }

    fn base(&self) -> usize {
        if self.normalized {
            self.order - 1
        } else {
            self.order
        }
    }

    fn size(&self, degree: usize) -> usize {
        self.base().pow(degree as u32)
    }

    fn tuple(&self, mut idx: usize, out: &mut [Elem]) {
        let base = self.base();
        let shift = self.normalized as usize;
        for slot in out.iter_mut().rev() {
            *slot = idx % base + shift;
            idx /= base;
        }
    }

    fn index(&self, tuple: &[Elem]) -> Option<usize> {
        if self.normalized {
            if tuple.iter().any(|&g| g == 0) {
                return None;
            }
            Some(tuple.iter().fold(0, |acc, &g| acc * (self.order - 1) + g - 1))
        } else {
            Some(encode(tuple, self.order))
        }
    }
}

/// Memory budget for the dense matrices behind [`cohomology_dim`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum `rows × cols` of any single differential matrix.
    pub max_entries: u64,
}

impl Default for Budget {
    /// Admits degree 3 for groups up to order 12.
    fn default() -> Self {
        Self {
            max_entries: 20_000_000,
        }
    }
}

/// `dim_{F_p} H^i(G, F_p)` with trivial action.
pub fn cohomology_dim(group: &Arc<FiniteGroup>, p: u32, degree: usize, budget: Budget) -> Result<usize> {
    if !is_prime(p as u64) {
        return Err(Error::UnsupportedModulus(p));
    }
    cohomology_dim_with(group, &CoeffModule::trivial(p, group), degree, budget)
}

/// `dim H^i(G, M)` for a module `M = Z/p` with arbitrary action, computed on
/// the normalized complex.
pub fn cohomology_dim_with(
    group: &Arc<FiniteGroup>,
    coeff: &CoeffModule,
    degree: usize,
    budget: Budget,
) -> Result<usize> {
    let p = coeff.modulus();
    if !is_prime(p as u64) {
        return Err(Error::UnsupportedModulus(p));
    }
    if degree + 1 > MAX_DEGREE {
        return Err(Error::DegreeCap(degree + 1));
    }
    let basis = Basis::new(group.order(), true);
    let dim = basis.size(degree);
    let rank_out = differential_rank(group, coeff, &basis, degree, budget)?;
    let rank_in = if degree == 0 {
        0
    } else {
        differential_rank(group, coeff, &basis, degree - 1, budget)?
    };
    Ok(dim - rank_out - rank_in)
}

fn differential_rank(
    group: &FiniteGroup,
    coeff: &CoeffModule,
    basis: &Basis,
    src_degree: usize,
    budget: Budget,
) -> Result<usize> {
    let rows = basis.size(src_degree + 1);
    let cols = basis.size(src_degree);
    let entries = rows as u64 * cols as u64;
    if entries > budget.max_entries {
        return Err(Error::Resource(format!(
            "differential C^{src_degree} → C^{} of |G| = {} needs {rows} × {cols} entries, budget is {}",
            src_degree + 1,
            group.order(),
            budget.max_entries
        )));
    }
    let mut matrix = Matrix::zeros(coeff.modulus(), rows, cols)?;
    let mut tuple = vec![0; src_degree + 1];
    let mut scratch = Vec::new();
    for r in 0..rows {
        basis.tuple(r, &mut tuple);
        differential_terms(group, coeff, &tuple, &mut scratch, |c, src| {
            if let Some(col) = basis.index(src) {
                matrix.add_to(r, col, c);
            }
        });
    }
    Ok(matrix.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(construct_group(name).unwrap())
    }

    #[test]
    fn differential_of_constant_is_zero() {
        let g = group("S4");
        let m = Cochain::from_values(g.clone(), CoeffModule::trivial(5, &g), 0, vec![3]).unwrap();
        assert!(differential(&m).unwrap().is_zero());
    }

    #[test]
    fn identity_character_on_z2_is_a_cocycle() {
        let g = group("Z/2");
        let f = Cochain::from_values(g.clone(), CoeffModule::trivial(2, &g), 1, vec![0, 1]).unwrap();
        let df = differential(&f).unwrap();
        // df(1,1) = f(1) - f(0) + f(1)
        assert_eq!(df.get(&[1, 1]), 0);
        assert!(df.is_zero());
    }

    #[test]
    fn d_squared_vanishes_over_q8() {
        let g = group("Q8");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for trial in 0..200 {
            let coeff = CoeffModule::trivial(4, &g);
            let f = Cochain::random(g.clone(), coeff, trial % 3, &mut rng).unwrap();
            assert!(differential(&differential(&f).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn conj_by_identity_and_abelian() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = group("D4");
        let f = Cochain::random(g.clone(), CoeffModule::trivial(3, &g), 2, &mut rng).unwrap();
        assert_eq!(conj_action(&f, 0), f);
        let v4 = group("V4");
        let f = Cochain::random(v4.clone(), CoeffModule::trivial(3, &v4), 2, &mut rng).unwrap();
        for a in v4.elements() {
            assert_eq!(conj_action(&f, a), f);
        }
    }

    #[test]
    fn conj_commutes_with_d_on_d4() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = group("D4");
        let a = g.elements().find(|&x| g.element_order(x) == 4).unwrap();
        let f = Cochain::random(g.clone(), CoeffModule::trivial(2, &g), 2, &mut rng).unwrap();
        assert_eq!(differential(&conj_action(&f, a)).unwrap(), conj_action(&differential(&f).unwrap(), a));
    }

    #[test]
    fn cup_examples() {
        let g = group("Z/2");
        let coeff = CoeffModule::trivial(2, &g);
        let alpha = Cochain::from_values(g.clone(), coeff.clone(), 1, vec![0, 1]).unwrap();
        let mut eps = Cochain::zero(g.clone(), coeff.clone(), 2).unwrap();
        eps.set(&[1, 1], 1);
        let c = cup(&alpha, &eps).unwrap();
        assert_eq!(c.degree(), 3);
        assert_eq!(c.get(&[1, 1, 1]), 1);
        let zero = Cochain::zero(g.clone(), coeff.clone(), 2).unwrap();
        assert!(cup(&alpha, &zero).unwrap().is_zero());

        let other = CoeffModule::trivial(3, &g);
        let beta = Cochain::zero(g, other, 1).unwrap();
        assert!(matches!(cup(&alpha, &beta), Err(Error::Mismatch(_))));
    }

    #[test]
    fn coboundary_examples() {
        let g = group("Z/2");
        let coeff = CoeffModule::trivial(2, &g);
        let zero = Cochain::zero(g.clone(), coeff.clone(), 2).unwrap();
        let w = is_coboundary(&zero).unwrap().unwrap();
        assert!(differential(&w).unwrap().is_zero());

        let mut eps = zero.clone();
        eps.set(&[1, 1], 1);
        assert!(is_coboundary(&eps).unwrap().is_none());

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let beta = Cochain::random(g.clone(), coeff, 1, &mut rng).unwrap();
        let db = differential(&beta).unwrap();
        let x = is_coboundary(&db).unwrap().unwrap();
        assert_eq!(differential(&x).unwrap(), db);

        let four = Cochain::zero(g.clone(), CoeffModule::trivial(4, &g), 1).unwrap();
        assert_eq!(is_coboundary(&four).unwrap_err(), Error::UnsupportedModulus(4));
    }

    #[test]
    fn small_cohomology() {
        let b = Budget::default();
        let z2 = group("Z/2");
        for i in 0..=3 {
            assert_eq!(cohomology_dim(&z2, 2, i, b).unwrap(), 1, "H^{i}(Z/2, F2)");
        }
        assert_eq!(cohomology_dim(&z2, 3, 1, b).unwrap(), 0);
        assert_eq!(cohomology_dim(&group("V4"), 2, 1, b).unwrap(), 2);
    }

    #[test]
    fn cohomology_budget_is_enforced() {
        let s4 = group("S4");
        assert!(matches!(cohomology_dim(&s4, 2, 3, Budget::default()), Err(Error::Resource(_))));
        let z12 = group("Z/12");
        assert_eq!(cohomology_dim(&z12, 2, 3, Budget::default()).unwrap(), 1);
        let z13 = group("Z/13");
        assert!(cohomology_dim(&z13, 2, 3, Budget::default()).is_err());
    }

    #[test]
    fn sign_action_module() {
        let s4 = group("S4");
        let ch = builtin::sign_character(&s4).unwrap();
        let m = CoeffModule::sign(4, &s4, &ch).unwrap();
        assert!(!m.is_trivial());
        assert!(CoeffModule::new(4, &s4, vec![2; 24]).is_err());
        // H^0 with the sign action on F3 is zero.
        let m3 = CoeffModule::sign(3, &s4, &ch).unwrap();
        assert_eq!(cohomology_dim_with(&s4, &m3, 0, Budget::default()).unwrap(), 0);
    }

    #[test]
    fn degree_cap() {
        let g = group("Z/2");
        assert_eq!(
            Cochain::zero(g.clone(), CoeffModule::trivial(2, &g), 7).unwrap_err(),
            Error::DegreeCap(7)
        );
        let top = Cochain::zero(g.clone(), CoeffModule::trivial(2, &g), 6).unwrap();
        assert_eq!(differential(&top).unwrap_err(), Error::DegreeCap(7));
    }

    #[test]
    fn dump_round_trip() {
        let g = group("D4");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = Cochain::random(g.clone(), CoeffModule::trivial(2, &g), 2, &mut rng).unwrap();
        let json = serde_json::to_string(&f.to_dump()).unwrap();
        let back: CochainDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back.load().unwrap(), f);
    }
}
