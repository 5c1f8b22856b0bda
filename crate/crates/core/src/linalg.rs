//! Exact linear algebra over the prime field F_p.
//!
//! Over F_2 rows are packed into `u64` words and reduced with XOR; other
//! primes use a dense residue table. Pivoting is deterministic: columns are
//! scanned left to right and the lowest-index remaining row with a nonzero
//! entry becomes the pivot.

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Gf2 { words: usize, bits: Vec<u64> },
    Dense(Vec<u32>),
}

/// A dense matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    repr: Repr,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::UnsupportedModulus(p));
        }
        let repr = if p == 2 {
            let words = cols.div_ceil(64).max(1);
            Repr::Gf2 {
                words,
                bits: vec![0; rows * words],
            }
        } else {
            Repr::Dense(vec![0; rows * cols])
        };
        Ok(Self { p, rows, cols, repr })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        match &self.repr {
            Repr::Gf2 { words, bits } => ((bits[r * words + c / 64] >> (c % 64)) & 1) as u32,
            Repr::Dense(d) => d[r * self.cols + c],
        }
    }

    /// `self[r][c] += v (mod p)`.
    pub fn add_to(&mut self, r: usize, c: usize, v: u32) {
        let p = self.p;
        match &mut self.repr {
            Repr::Gf2 { words, bits } => {
                if v % 2 == 1 {
                    bits[r * *words + c / 64] ^= 1 << (c % 64);
                }
            }
            Repr::Dense(d) => {
                let e = &mut d[r * self.cols + c];
                *e = ((*e as u64 + v as u64) % p as u64) as u32;
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce(false).len()
    }

    /// Solves `self · x = rhs`, returning the solution with all free
    /// variables set to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.p, self.rows, self.cols + 1).expect("prime checked");
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    aug.add_to(r, c, v);
                }
            }
            aug.add_to(r, self.cols, rhs[r] % self.p);
        }
        let pivots = aug.reduce(true);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols);
        }
        Some(x)
    }

    /// Gaussian elimination in place. With `full`, produces reduced row
    /// echelon form with unit pivots. Returns pivot columns in row order.
    fn reduce(&mut self, full: bool) -> Vec<usize> {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let mut pivots = Vec::new();
        match &mut self.repr {
            Repr::Gf2 { words, bits } => {
                let w = *words;
                for c in 0..cols {
                    let rank = pivots.len();
                    if rank == rows {
                        break;
                    }
                    let (word, mask) = (c / 64, 1u64 << (c % 64));
                    let Some(piv) = (rank..rows).find(|&r| bits[r * w + word] & mask != 0) else {
                        continue;
                    };
                    if piv != rank {
                        for k in 0..w {
                            bits.swap(piv * w + k, rank * w + k);
                        }
                    }
                    let start = if full { 0 } else { rank + 1 };
                    let pivot_row: Vec<u64> = bits[rank * w..(rank + 1) * w].to_vec();
                    for r in start..rows {
                        if r != rank && bits[r * w + word] & mask != 0 {
                            for k in word..w {
                                bits[r * w + k] ^= pivot_row[k];
                            }
                        }
                    }
                    pivots.push(c);
                }
            }
            Repr::Dense(d) => {
                let p64 = p as u64;
                for c in 0..cols {
                    let rank = pivots.len();
                    if rank == rows {
                        break;
                    }
                    let Some(piv) = (rank..rows).find(|&r| d[r * cols + c] != 0) else {
                        continue;
                    };
                    if piv != rank {
                        for k in 0..cols {
                            d.swap(piv * cols + k, rank * cols + k);
                        }
                    }
                    if full {
                        let inv = mod_inverse(d[rank * cols + c] as u64, p64);
                        for k in c..cols {
                            d[rank * cols + k] = ((d[rank * cols + k] as u64 * inv) % p64) as u32;
                        }
                    }
                    let pivot_val = d[rank * cols + c] as u64;
                    let inv = mod_inverse(pivot_val, p64);
                    let start = if full { 0 } else { rank + 1 };
                    for r in start..rows {
                        if r == rank || d[r * cols + c] == 0 {
                            continue;
                        }
                        let factor = (d[r * cols + c] as u64 * inv) % p64;
                        for k in c..cols {
                            let sub = (factor * d[rank * cols + k] as u64) % p64;
                            d[r * cols + k] = ((d[r * cols + k] as u64 + p64 - sub) % p64) as u32;
                        }
                    }
                    pivots.push(c);
                }
            }
        }
        pivots
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    crate::numtheory::pow_mod(a, p - 2, p)
}
