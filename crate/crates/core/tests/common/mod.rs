//! Shared helpers for the integration tests: group rosters and an
//! independent cohomology oracle on the full bar complex.
#![allow(dead_code)]

use std::sync::Arc;

use acs_core::cochain::CoeffModule;
use acs_core::groups::{builtin, construct_group, FiniteGroup};

pub fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(construct_group(name).unwrap())
}

/// Built-in groups of order at most 24.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    ["Z/1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "V4", "D4", "Q8", "Z/2xZ/4", "Z/12", "S4"]
        .iter()
        .map(|n| group(n))
        .collect()
}

/// Trivial action plus the sign action when the group has one.
pub fn modules(g: &FiniteGroup, modulus: u32) -> Vec<CoeffModule> {
    let mut out = vec![CoeffModule::trivial(modulus, g)];
    if let Some(ch) = builtin::sign_character(g) {
        if ch.iter().any(|&c| c != 0) && modulus > 2 {
            out.push(CoeffModule::sign(modulus, g, &ch).unwrap());
        }
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Rank over F_p by plain dense row reduction.
fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for k in 0..cols {
            m[rank][k] = m[rank][k] * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn tuple_of(mut idx: usize, len: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    t
}

fn index_of(t: &[usize], order: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * order + x)
}

/// Matrix of `d: C^i → C^{i+1}` on the full bar complex, trivial action.
fn bar_differential(g: &FiniteGroup, p: u64, i: usize) -> Vec<Vec<u64>> {
    let n = g.order();
    let rows = n.pow(i as u32 + 1);
    let cols = n.pow(i as u32);
    let mut m = vec![vec![0u64; cols]; rows];
    for r in 0..rows {
        let x = tuple_of(r, i + 1, n);
        // f(x2..x_{i+1})
        m[r][index_of(&x[1..], n)] += 1;
        for j in 0..i {
            let mut y: Vec<usize> = x[..j].to_vec();
            y.push(g.mul(x[j], x[j + 1]));
            y.extend_from_slice(&x[j + 2..]);
            let c = index_of(&y, n);
            m[r][c] += if j % 2 == 0 { p - 1 } else { 1 };
        }
        let c = index_of(&x[..i], n);
        m[r][c] += if i % 2 == 0 { p - 1 } else { 1 };
        for v in m[r].iter_mut() {
            *v %= p;
        }
    }
    m
}

/// `dim H^i(G, F_p)` from ranks of full bar differentials.
pub fn oracle_cohomology_dim(g: &FiniteGroup, p: u64, i: usize) -> usize {
    let dim = g.order().pow(i as u32);
    let rank_out = rank_mod_p(bar_differential(g, p, i), p);
    let rank_in = if i == 0 { 0 } else { rank_mod_p(bar_differential(g, p, i - 1), p) };
    dim - rank_out - rank_in
}

/// Legendre symbol by Euler's criterion.
pub fn euler(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn squarefree(t: u64) -> bool {
    (2..).take_while(|d| d * d <= t).all(|d| t % (d * d) != 0)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Squarefree `t` in `[min_t, max]` prime to `d`.
pub fn valid_t(d: u64, min_t: u64, max: u64) -> impl Iterator<Item = u64> {
    (min_t..=max).filter(move |&t| squarefree(t) && gcd(t, d) == 1)
}

/// `(d1, d2, Δ, a quaternion field exists)` as printed in the table.
pub const PRINTED_TABLE1: [(i64, i64, i8, bool); 30] = [
    (5, 13, -1, false), (5, 17, -1, false), (5, 21, 1, true), (5, 29, 1, true), (5, 33, -1, false),
    (5, 37, -1, false), (5, 41, 1, true), (5, 53, -1, false), (5, 57, -1, false), (5, 61, 1, true),
    (13, 17, 1, true), (13, 21, -1, false), (13, 29, 1, true), (13, 33, -1, false), (13, 37, -1, false),
    (13, 41, -1, false), (13, 53, 1, true), (13, 57, -1, false), (13, 61, 1, true), (13, 69, 1, false),
    (17, 21, 1, true), (17, 29, -1, false), (17, 33, 1, true), (17, 37, -1, false), (17, 41, -1, false),
    (17, 53, 1, true), (17, 57, -1, false), (17, 61, -1, false), (17, 65, -1, false), (17, 69, 1, true),
];
