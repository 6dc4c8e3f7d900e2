//! Multiplicative functions on the non-crossing incidence algebra.
//!
//! A multiplicative function is fixed by its values `f_k = f(0_k, 1_k)` on
//! full intervals. Only arguments of the form `(0_n, π)` are evaluated,
//! which is all the Kreweras-sum convolutions need.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ncpart::{enumerate_nc, enumerate_nc_prime, kreweras, NCPartition};
use crate::scalar::Rational;
use crate::series::Series1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultFn {
    // values[k - 1] = f(0_k, 1_k)
    values: Vec<Rational>,
}

impl MultFn {
    /// From `f_1, ..., f_N`.
    pub fn new(values: Vec<Rational>) -> Self {
        MultFn { values }
    }

    pub fn from_fn(trunc: usize, mut f: impl FnMut(usize) -> Rational) -> Self {
        MultFn {
            values: (1..=trunc).map(&mut f).collect(),
        }
    }

    /// `(1, 0, 0, ...)`: the cumulants of the constant 1.
    pub fn unit(trunc: usize) -> Self {
        Self::from_fn(trunc, |k| {
            if k == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn trunc(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `f(0_k, 1_k)`; `None` beyond the truncation.
    pub fn full(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        MultFn {
            values: self.values.iter().take(trunc).cloned().collect(),
        }
    }

    /// Membership in `M_1`: `f_1 = 1`.
    pub fn in_m1(&self) -> bool {
        self.values.first().is_some_and(One::is_one)
    }

    /// `f(0_n, π)`: product of `f_|V|` over the blocks of `π`.
    pub fn eval_on(&self, pi: &NCPartition) -> Result<Rational> {
        let mut acc = Rational::one();
        for b in pi.blocks() {
            let v = self.full(b.len()).ok_or(Error::TruncationExceeded {
                needed: b.len(),
                available: self.trunc(),
            })?;
            acc *= v;
        }
        Ok(acc)
    }

    /// `φ_f(z) = Σ f_n z^n`, known to order `N`.
    pub fn phi_series(&self) -> Series1 {
        Series1::from_fn(self.trunc(), |d| {
            if d == 0 {
                Rational::zero()
            } else {
                self.values[d - 1].clone()
            }
        })
    }
}

/// Moments `m_1..m_N` from the cumulant sequence `f`:
/// `m_n = Σ_{π ∈ NC(n)} f(0_n, π)`.
pub fn moments_from_free_cumulants(f: &MultFn, limits: &Limits) -> Result<Vec<Rational>> {
    (1..=f.trunc())
        .map(|n| {
            let mut acc = Rational::zero();
            for pi in enumerate_nc(n, limits)? {
                acc += f.eval_on(&pi)?;
            }
            Ok(acc)
        })
        .collect()
}

fn kreweras_sum(
    f: &MultFn,
    g: &MultFn,
    limits: &Limits,
    lattice: impl Fn(usize, &Limits) -> Result<Vec<NCPartition>>,
) -> Result<MultFn> {
    let trunc = f.trunc().min(g.trunc());
    let mut values = Vec::with_capacity(trunc);
    for n in 1..=trunc {
        let mut acc = Rational::zero();
        for pi in lattice(n, limits)? {
            let left = f.eval_on(&pi)?;
            if left.is_zero() {
                continue;
            }
            acc += left * g.eval_on(&kreweras(&pi))?;
        }
        values.push(acc);
    }
    Ok(MultFn { values })
}

/// `(f ∗ g)_n = Σ_{π ∈ NC(n)} f(0_n, π) g(0_n, K(π))`.
pub fn convolve(f: &MultFn, g: &MultFn, limits: &Limits) -> Result<MultFn> {
    kreweras_sum(f, g, limits, enumerate_nc)
}

/// The same sum restricted to `NC'(n)`; defined on `M_1` and not
/// commutative.
pub fn pinched_convolve(f: &MultFn, g: &MultFn, limits: &Limits) -> Result<MultFn> {
    if !f.in_m1() || !g.in_m1() {
        return Err(Error::NotNormalized(
            "pinched convolution needs f_1 = g_1 = 1",
        ));
    }
    kreweras_sum(f, g, limits, enumerate_nc_prime)
}
