//! Eulerian numbers `A(i, j)`.
//!
//! Entries come from the alternating binomial sum
//! `A(i, j) = sum_{t=0}^{j} (-1)^t C(i+1, t) (j - t)^i` with `0^0 = 1`.
//! Row `i` holds `A(i, 0..=i)`; `A(i, j) = 0` for `j > i`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::{binomial, upow};

/// `A(i, j)` evaluated straight from the defining sum.
pub fn eulerian(i: u32, j: u32) -> BigInt {
    if j > i {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for t in 0..=j {
        let term = binomial(u64::from(i) + 1, u64::from(t)) * upow(u64::from(j - t), i);
        if t % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Append-only cache of Eulerian rows.
#[derive(Debug, Default)]
pub struct EulerianTriangle {
    rows: RwLock<Vec<Vec<BigInt>>>,
}

impl EulerianTriangle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `[A(i, 0), ..., A(i, i)]`, filling the cache up to row `i`.
    pub fn row(&self, i: u32) -> Vec<BigInt> {
        let idx = i as usize;
        if let Some(row) = self.rows.read().unwrap().get(idx) {
            return row.clone();
        }
        let mut rows = self.rows.write().unwrap();
        while rows.len() <= idx {
            let k = rows.len() as u32;
            rows.push((0..=k).map(|j| eulerian(k, j)).collect());
        }
        rows[idx].clone()
    }

    /// `A(i, j)` through the cache; zero for `j > i`.
    pub fn get(&self, i: u32, j: u32) -> BigInt {
        if j > i {
            return BigInt::zero();
        }
        let idx = i as usize;
        if let Some(row) = self.rows.read().unwrap().get(idx) {
            return row[j as usize].clone();
        }
        self.row(i)[j as usize].clone()
    }

    pub fn cached_rows(&self) -> usize {
        self.rows.read().unwrap().len()
    }
}

fn shared() -> &'static EulerianTriangle {
    static TRIANGLE: OnceLock<EulerianTriangle> = OnceLock::new();
    TRIANGLE.get_or_init(EulerianTriangle::new)
}

/// Memoized row `i` of the process-wide triangle.
pub fn eulerian_row(i: u32) -> Vec<BigInt> {
    shared().row(i)
}

/// Memoized `A(i, j)` from the process-wide triangle.
pub(crate) fn eulerian_cached(i: u32, j: u32) -> BigInt {
    shared().get(i, j)
}
