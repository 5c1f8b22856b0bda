//! Explicit conjugation homotopies on group cochains.
//!
//! For `a ∈ G` and an `(n+1)`-cochain `f`,
//!
//! ```text
//! h_{a,f}(g1..gn) = Σ_{r=0..n} (-1)^r f(g1..gr, a^{-1}, Ad_a g_{r+1}, .., Ad_a gn)
//! ```
//!
//! is a chain homotopy between the identity and `f ↦ f^a`. The multi-index
//! version `h_{a1..ak,f}` sums `f` over the lattice paths of the `n × k`
//! grid (the cylinder `[n] × [k]` triangulated by shuffles).

use std::fmt;

use crate::cochain::{conj_action, differential, Cochain};
use crate::error::{Error, Result};
use crate::groups::Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    H,
    V,
}

/// A monotone path from `(0, 0)` to `(width, height)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePath {
    width: usize,
    height: usize,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        let width = steps.iter().filter(|&&s| s == Step::H).count();
        let height = steps.len() - width;
        Self { width, height, steps }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of unit squares of the grid lying above the path.
    pub fn squares_above(&self) -> usize {
        let mut t = 0;
        let mut count = 0;
        for s in &self.steps {
            match s {
                Step::H => count += self.height - t,
                Step::V => t += 1,
            }
        }
        count
    }

    /// `|P| mod 2`.
    pub fn parity(&self) -> usize {
        self.squares_above() % 2
    }

    /// All `C(width + height, height)` paths, ordered by the positions of
    /// their vertical steps.
    pub fn all(width: usize, height: usize) -> Vec<LatticePath> {
        let total = width + height;
        let mut out = Vec::new();
        let mut positions: Vec<usize> = (0..height).collect();
        loop {
            let mut steps = vec![Step::H; total];
            for &p in &positions {
                steps[p] = Step::V;
            }
            out.push(LatticePath {
                width,
                height,
                steps,
            });
            // Next combination of `height` positions out of `total`.
            let Some(i) = (0..height).rev().find(|&i| positions[i] < total - height + i) else {
                break;
            };
            positions[i] += 1;
            for j in i + 1..height {
                positions[j] = positions[j - 1] + 1;
            }
        }
        out
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::H => "H",
                Step::V => "V",
            })?;
        }
        Ok(())
    }
}

/// `h_{a,f}` from the single-variable formula.
pub fn homotopy_h(a: Elem, f: &Cochain) -> Result<Cochain> {
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("homotopy needs a cochain of degree ≥ 1".into()));
    }
    let group = f.group().clone();
    let n = f.degree() - 1;
    let modulus = f.modulus() as u64;
    let a_inv = group.inv(a);
    let mut args = Vec::with_capacity(n + 1);
    Cochain::from_fn(group.clone(), f.coeff().clone(), n, |g| {
        let mut acc = 0u64;
        for r in 0..=n {
            args.clear();
            args.extend_from_slice(&g[..r]);
            args.push(a_inv);
            args.extend(g[r..].iter().map(|&x| group.conj(a, x)));
            let v = f.get(&args) as u64;
            acc += if r % 2 == 0 { v } else { modulus - v };
        }
        (acc % modulus) as u32
    })
}

/// `h_{a1..ak,f}` as a signed sum over lattice paths. With an empty
/// `a_vec` this is `f` itself.
pub fn homotopy_multi(a_vec: &[Elem], f: &Cochain) -> Result<Cochain> {
    let k = a_vec.len();
    if k == 0 {
        return Ok(f.clone());
    }
    if f.degree() < k {
        return Err(Error::InvalidArgument(format!(
            "h with {k} elements needs a cochain of degree ≥ {k}, got {}",
            f.degree()
        )));
    }
    let group = f.group().clone();
    let n = f.degree() - k;
    let modulus = f.modulus() as u64;

    // Vertical step at height t contributes a_{k-t}^{-1}; horizontal steps at
    // height t are conjugated by a_{k-t+1} ⋯ a_k.
    let vertical: Vec<Elem> = (0..k).map(|t| group.inv(a_vec[k - t - 1])).collect();
    let conjugator: Vec<Elem> = (0..=k).map(|t| group.product(&a_vec[k - t..])).collect();

    let paths = LatticePath::all(n, k);
    let mut args = Vec::with_capacity(n + k);
    Cochain::from_fn(group.clone(), f.coeff().clone(), n, |x| {
        let mut acc = 0u64;
        for path in &paths {
            args.clear();
            let (mut s, mut t) = (0, 0);
            for step in path.steps() {
                match step {
                    Step::V => {
                        args.push(vertical[t]);
                        t += 1;
                    }
                    Step::H => {
                        args.push(group.conj(conjugator[t], x[s]));
                        s += 1;
                    }
                }
            }
            let v = f.get(&args) as u64;
            acc += if path.parity() == 0 { v } else { modulus - v };
        }
        (acc % modulus) as u32
    })
}

/// `h_{b,f} - h_{ab,f} + (h_{a,f})^b`, a coboundary when `f` is a cocycle.
pub fn composition_defect(a: Elem, b: Elem, f: &Cochain) -> Result<Cochain> {
    let g = f.group();
    let hb = homotopy_h(b, f)?;
    let hab = homotopy_h(g.mul(a, b), f)?;
    let ha_b = conj_action(&homotopy_h(a, f)?, b);
    Ok(&(&hb - &hab) + &ha_b)
}

/// `a^{-1} c(a)` as a degree-0 cochain, for a 1-cocycle `c`; its
/// coboundary is `c^a - c`.
pub fn degree_zero_homotopy(c: &Cochain, a: Elem) -> Result<Cochain> {
    if c.degree() != 1 {
        return Err(Error::InvalidArgument("degree-zero homotopy needs a 1-cochain".into()));
    }
    let v = c.coeff().act(c.group().inv(a), c.get(&[a]));
    Cochain::from_values(c.group().clone(), c.coeff().clone(), 0, vec![v])
}

/// Outcome of [`stokes_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StokesReport {
    pub passed: bool,
    /// First tuple where the two sides differ, with both values.
    pub witness: Option<(Vec<Elem>, u32, u32)>,
}

/// Checks, for `a_vec = (a1..a_{k+1})` and an `(n+k)`-cochain `f`,
///
/// ```text
/// (-1)^{k+1} h_{a1..a_{k+1},df} - d h_{a1..a_{k+1},f}
///     = h_{a2..a_{k+1},f} + Σ_{i=1..k} (-1)^i h_{a1..a_i a_{i+1}..a_{k+1},f}
///       + (-1)^{k+1} (h_{a1..ak,f})^{a_{k+1}}
/// ```
///
/// where an empty index list means `f` itself and `h` of a cochain of
/// degree below the index length is zero.
pub fn stokes_check(a_vec: &[Elem], f: &Cochain) -> Result<StokesReport> {
    let m = a_vec.len();
    if m == 0 {
        return Err(Error::InvalidArgument("stokes_check needs at least one element".into()));
    }
    let k = m - 1;
    if f.degree() < k {
        return Err(Error::InvalidArgument(format!(
            "{m} elements need a cochain of degree ≥ {k}, got {}",
            f.degree()
        )));
    }
    let group = f.group();
    let sign = |e: usize, c: &Cochain| if e % 2 == 0 { c.clone() } else { -c };

    let df = differential(f)?;
    let mut lhs = sign(k + 1, &homotopy_multi(a_vec, &df)?);
    if f.degree() > k {
        lhs = &lhs - &differential(&homotopy_multi(a_vec, f)?)?;
    }

    let mut rhs = homotopy_multi(&a_vec[1..], f)?;
    for i in 1..=k {
        let mut merged = a_vec[..i - 1].to_vec();
        merged.push(group.mul(a_vec[i - 1], a_vec[i]));
        merged.extend_from_slice(&a_vec[i + 1..]);
        rhs = &rhs + &sign(i, &homotopy_multi(&merged, f)?);
    }
    let last = conj_action(&homotopy_multi(&a_vec[..k], f)?, a_vec[k]);
    rhs = &rhs + &sign(k + 1, &last);

    let witness = lhs
        .entries()
        .zip(rhs.values())
        .find(|((_, l), r)| l != *r)
        .map(|((t, l), &r)| (t, l, r));
    Ok(StokesReport {
        passed: witness.is_none(),
        witness,
    })
}
