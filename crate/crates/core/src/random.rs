//! Seeded generation of small random rational test data.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicum::{BiFreeFamily, PairDistribution};
use crate::multfn::MultFn;
use crate::scalar::{ratio, Rational};

/// Which means are pinned to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Both means random but nonzero.
    None,
    /// `κ_{0,1} = 1`.
    RightMean,
    /// `κ_{1,0} = κ_{0,1} = 1`.
    BothMeans,
}

/// Deterministic source of rationals `p / q` with `|p| <= 4`, `1 <= q <= 8`.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-4..=4);
        let q = self.rng.gen_range(1..=8);
        ratio(p, q)
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// `f_1 = 1`, higher values random.
    pub fn mult_fn_m1(&mut self, trunc: usize) -> MultFn {
        MultFn::from_fn(trunc, |k| {
            if k == 1 {
                Rational::one()
            } else {
                self.rational()
            }
        })
    }

    /// Random cumulant sequence with `κ_1 != 0`.
    pub fn one_var(&mut self, trunc: usize) -> MultFn {
        MultFn::from_fn(trunc, |k| {
            if k == 1 {
                self.nonzero()
            } else {
                self.rational()
            }
        })
    }

    pub fn pair(&mut self, trunc: usize, normalization: Normalization) -> PairDistribution {
        PairDistribution::from_fn(trunc, |n, m| match (n, m, normalization) {
            (1, 0, Normalization::BothMeans)
            | (0, 1, Normalization::BothMeans | Normalization::RightMean) => Rational::one(),
            (1, 0, _) | (0, 1, _) => self.nonzero(),
            _ => self.rational(),
        })
    }

    pub fn family(&mut self, trunc: usize, normalization: Normalization) -> BiFreeFamily {
        let first = self.pair(trunc, normalization);
        let second = self.pair(trunc, normalization);
        BiFreeFamily::new(first, second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_normalized() {
        let a = Sampler::new(7).family(5, Normalization::BothMeans);
        let b = Sampler::new(7).family(5, Normalization::BothMeans);
        assert_eq!(a, b);
        assert!(a.first.kappa(1, 0).is_one() && a.second.kappa(0, 1).is_one());
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let r = s.rational();
            assert!(r.denom() <= &8.into() && r.numer().magnitude() <= &4u32.into());
        }
        let p = s.pair(3, Normalization::RightMean);
        assert!(p.kappa(0, 1).is_one() && !p.kappa(1, 0).is_zero());
    }
}
