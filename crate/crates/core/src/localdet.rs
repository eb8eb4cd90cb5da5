//! Determinants over the local ring `Z/p^N`.
//!
//! Elimination uses full pivoting on p-adic valuation: at each step the
//! pivot is an entry of minimal `ord_p` in the remaining block. Every entry
//! of the pivot row is then divisible by the pivot's power of `p`, so the row
//! updates lose no absolute precision and the pivot valuations are the
//! elementary divisors of the matrix. Their sum is `ord_p(det)`, certified
//! as long as each one is `< N`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::padic::Modulus;

/// A dense square matrix of residues modulo `p^N`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: Modulus,
    size: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: Modulus, size: usize) -> Self {
        ModMatrix {
            modulus,
            size,
            data: vec![0; size * size],
        }
    }

    /// Builds from signed integer rows, reducing each entry.
    pub fn from_rows(modulus: Modulus, rows: &[Vec<i64>]) -> Result<Self> {
        let size = rows.len();
        let mut m = Self::zeros(modulus, size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::RingMismatch);
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, modulus.from_i64(x));
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.size + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(v < self.modulus.value());
        self.data[i * self.size + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.size;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..lo * n + n].swap_with_slice(&mut tail[..n]);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.size;
        for row in self.data.chunks_exact_mut(n) {
            row.swap(a, b);
        }
    }
}

/// A determinant over `Z/p^N` with its certified valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalDet {
    /// `ord_p(det)`; may exceed `N`.
    pub valuation: u64,
    /// `det mod p^N`.
    pub residue: u64,
    /// Largest elementary divisor exponent met during elimination.
    pub max_pivot_ord: u32,
}

/// Determinant by valuation-pivoted elimination.
///
/// Fails with [`Error::PrecisionExhausted`] when the remaining block vanishes
/// modulo `p^N`; the reported lower bound is then
/// `sum(pivot ords) + N * (remaining size)`.
pub fn local_determinant(mut a: ModMatrix) -> Result<LocalDet> {
    let md = a.modulus;
    let p = md.prime();
    let n = a.size;
    let mut valuation = 0u64;
    let mut residue = 1 % md.value();
    let mut negate = false;
    let mut max_pivot_ord = 0;

    for s in 0..n {
        // minimal-ord pivot in the block [s.., s..]
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for i in s..n {
            let row = &a.data[i * n..i * n + n];
            for (j, &x) in row.iter().enumerate().skip(s) {
                if x == 0 {
                    continue;
                }
                let k = md.ord(x);
                if best.is_none_or(|(_, _, b)| k < b) {
                    best = Some((i, j, k));
                    if k == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, k)) = best else {
            return Err(Error::PrecisionExhausted {
                precision: md.precision(),
                lower_bound: (valuation + md.precision() as u64 * (n - s) as u64) as i64,
                needed: None,
            });
        };
        if pi != s {
            a.swap_rows(pi, s);
            negate = !negate;
        }
        if pj != s {
            a.swap_cols(pj, s);
            negate = !negate;
        }
        let pivot = a.get(s, s);
        valuation += k as u64;
        max_pivot_ord = max_pivot_ord.max(k);
        residue = md.mul(residue, pivot);

        let scale = p.pow(k);
        let unit_inv = md.inv(pivot / scale).expect("pivot unit part is a unit");
        let (head, tail) = a.data.split_at_mut((s + 1) * n);
        let pivot_row = &head[s * n..s * n + n];
        for row in tail.chunks_exact_mut(n) {
            let e = row[s];
            if e == 0 {
                continue;
            }
            // e is divisible by p^k because k is minimal in the block
            let factor = md.mul(e / scale, unit_inv);
            row[s] = 0;
            for (x, &y) in row[s + 1..].iter_mut().zip(&pivot_row[s + 1..]) {
                if y != 0 {
                    *x = md.sub(*x, md.mul(factor, y));
                }
            }
        }
    }
    if negate {
        residue = md.neg(residue);
    }
    Ok(LocalDet {
        valuation,
        residue,
        max_pivot_ord,
    })
}
