//! Brute-force verification of the partition-class identities behind the
//! multiplicativity of the T- and S-transforms.
//!
//! Cumulants of `(a_1 + a_2, b_1 b_2)` and `(a_1 a_2, b_1 b_2)` are sums over
//! restricted bi-non-crossing partitions. Those sums split into classes
//! according to the block of the first node, and each class sum `Ψ` has a
//! closed form in terms of `K_{a_j,b_j}` and the series of pinched
//! convolutions of the marginals. This module enumerates every class
//! directly and compares its sum with the closed form.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::bicum::{expand, BiFreeFamily, Source, Word};
use crate::bnc::{connects_with, for_each_tagged, sigma_doubling, BncPartition, Doubling};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multfn::pinched_convolve;
use crate::ncpart::Partition;
use crate::report::CoefficientCheck;
use crate::scalar::Rational;
use crate::series::{Series1, Series2};

/// Which restricted partition set a class lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassFamily {
    /// Partitions of `χ_{n,2m}` behind `κ_{n,m}(a_1 + a_2, b_1 b_2)`.
    T,
    /// Partitions of `χ_{n,2m+1}` with the first right node kept apart.
    TPrimed,
    /// Partitions of `χ_{2n,2m}` behind `κ_{n,m}(a_1 a_2, b_1 b_2)`.
    S,
    /// Partitions of `χ_{2n+1,2m+1}` with `1ℓ` and `1r` paired.
    SPrimed,
}

impl ClassFamily {
    pub fn name(self) -> &'static str {
        match self {
            ClassFamily::T => "T",
            ClassFamily::TPrimed => "T'",
            ClassFamily::S => "S",
            ClassFamily::SPrimed => "S'",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subclass {
    All,
    /// T: the block of `1ℓ` meets an even right node. S: the topmost block
    /// with nodes on both sides starts at an even index.
    E,
    /// The odd counterpart of [`Subclass::E`].
    O,
    /// S': the block of `1ℓ` has no right nodes and that of `1r` no left ones.
    O0,
    /// S': the block of `1ℓ` has no right nodes, that of `1r` has left ones.
    OR,
    /// S': the block of `1ℓ` has right nodes, that of `1r` has no left ones.
    OL,
    /// S': `1ℓ` and `1r` share a block.
    OLR,
}

impl Subclass {
    pub fn name(self) -> &'static str {
        match self {
            Subclass::All => "all",
            Subclass::E => "e",
            Subclass::O => "o",
            Subclass::O0 => "o0",
            Subclass::OR => "or",
            Subclass::OL => "ol",
            Subclass::OLR => "olr",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionClassSpec {
    family: ClassFamily,
    n: usize,
    m: usize,
    subclass: Subclass,
}

impl PartitionClassSpec {
    pub fn new(family: ClassFamily, n: usize, m: usize, subclass: Subclass) -> Result<Self> {
        use ClassFamily as F;
        use Subclass as C;
        let valid = matches!(
            (family, subclass),
            (F::T | F::S, C::All | C::E | C::O)
                | (F::TPrimed, C::All)
                | (F::SPrimed, C::All | C::O0 | C::OR | C::OL | C::OLR)
        );
        if !valid {
            return Err(Error::InvalidSubclass {
                family: family.name(),
                subclass: subclass.name(),
            });
        }
        let sizes_ok = match family {
            F::T | F::S => n >= 1 && m >= 1,
            F::TPrimed => n >= 1,
            F::SPrimed => true,
        };
        if !sizes_ok {
            return Err(Error::InvalidSize {
                what: "partition class",
                n,
                m,
            });
        }
        Ok(PartitionClassSpec {
            family,
            n,
            m,
            subclass,
        })
    }

    pub fn family(&self) -> ClassFamily {
        self.family
    }

    pub fn subclass(&self) -> Subclass {
        self.subclass
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    /// Exponents of `z` and `w` that the class sum multiplies.
    pub fn degree(&self) -> (usize, usize) {
        match self.family {
            ClassFamily::T | ClassFamily::S => (self.n, self.m),
            ClassFamily::TPrimed => (self.n, self.m + 1),
            ClassFamily::SPrimed => (self.n + 1, self.m + 1),
        }
    }

    fn word(&self) -> Result<Word> {
        let (n, m) = (self.n, self.m);
        let alt = Source::alternating;
        Ok(match self.family {
            ClassFamily::T => Word::new(
                sigma_doubling(Doubling::LeftSingleRightDouble, n, m)?,
                |_| Source::Either,
                |k| alt(k, Source::First),
            ),
            ClassFamily::TPrimed => Word::new(
                sigma_doubling(Doubling::PrimedT, n, m)?,
                |_| Source::Either,
                |k| alt(k, Source::Second),
            ),
            ClassFamily::S => Word::new(
                sigma_doubling(Doubling::BothDouble, n, m)?,
                |k| alt(k, Source::First),
                |k| alt(k, Source::First),
            ),
            ClassFamily::SPrimed => Word::new(
                sigma_doubling(Doubling::PrimedS, n, m)?,
                |k| alt(k, Source::Second),
                |k| alt(k, Source::Second),
            ),
        })
    }

    /// Membership of a partition (given by block labels in word order) in
    /// the subclass. `lefts` is the number of left nodes.
    fn contains(&self, labels: &[usize], lefts: usize) -> bool {
        let rights = &labels[lefts..];
        let right_ranks = |b: usize| {
            rights
                .iter()
                .enumerate()
                .filter(move |(_, &l)| l == b)
                .map(|(i, _)| i + 1)
        };
        let has_left = |b: usize| labels[..lefts].contains(&b);
        let has_right = |b: usize| rights.contains(&b);
        match (self.family, self.subclass) {
            (_, Subclass::All) => true,
            (ClassFamily::T, parity) => {
                let wanted = if parity == Subclass::E { 0 } else { 1 };
                right_ranks(labels[0]).any(|k| k % 2 == wanted)
            }
            (ClassFamily::S, parity) => {
                let wanted = if parity == Subclass::E { 0 } else { 1 };
                let blocks = labels.iter().max().map_or(0, |&b| b + 1);
                let top = (0..blocks)
                    .filter(|&b| has_left(b) && has_right(b))
                    .map(|b| {
                        let left_min = labels[..lefts].iter().position(|&l| l == b).map(|i| i + 1);
                        let right_min = right_ranks(b).next();
                        left_min
                            .into_iter()
                            .chain(right_min)
                            .min()
                            .unwrap_or(usize::MAX)
                    })
                    .min();
                top.is_some_and(|k| k % 2 == wanted)
            }
            (ClassFamily::SPrimed, sub) => {
                let vl = labels[0];
                let vr = labels[lefts];
                match sub {
                    Subclass::O0 => !has_right(vl) && !has_left(vr),
                    Subclass::OR => !has_right(vl) && has_left(vr),
                    Subclass::OL => has_right(vl) && !has_left(vr),
                    Subclass::OLR => vl == vr,
                    _ => unreachable!("validated in new"),
                }
            }
            (ClassFamily::TPrimed, _) => unreachable!("validated in new"),
        }
    }

    fn lefts(&self) -> usize {
        match self.family {
            ClassFamily::T | ClassFamily::TPrimed => self.n,
            ClassFamily::S => 2 * self.n,
            ClassFamily::SPrimed => 2 * self.n + 1,
        }
    }
}

impl fmt::Display for PartitionClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}, {})_{}",
            self.family.name(),
            self.n,
            self.m,
            self.subclass.name()
        )
    }
}

/// Every partition in the class, in enumeration order.
pub fn enumerate_class(spec: &PartitionClassSpec, limits: &Limits) -> Result<Vec<BncPartition>> {
    let word = spec.word()?;
    limits.check_enumeration(word.shape.len())?;
    let tags: Vec<u8> = word
        .sources
        .iter()
        .map(|s| match s {
            Source::First => 1,
            Source::Second => 2,
            Source::Either => 0,
        })
        .collect();
    let lefts = spec.lefts();
    let mut out = Vec::new();
    for_each_tagged(&word.shape, &tags, |labels, blocks| {
        if connects_with(labels, blocks, &word.sigma) && spec.contains(labels, lefts) {
            out.push(labels.to_vec());
        }
    });
    out.into_iter()
        .map(|labels| BncPartition::new(word.shape.clone(), Partition::from_labels(&labels)))
        .collect()
}

/// The class sum: `Σ_π κ_π` over the class, with entries drawn from the
/// two pairs as the family's word dictates. It is the coefficient of
/// `z^p w^q` in `Ψ`, with `(p, q) = spec.degree()`.
pub fn psi_coefficient(
    spec: &PartitionClassSpec,
    fam: &BiFreeFamily,
    limits: &Limits,
) -> Result<Rational> {
    let lefts = spec.lefts();
    expand(&spec.word()?, limits, |labels, _| {
        spec.contains(labels, lefts)
    })?
    .evaluate(fam)
}

/// `Ψ` for a class family and subclass, to total degree `order`.
pub fn psi_series(
    family: ClassFamily,
    subclass: Subclass,
    fam: &BiFreeFamily,
    order: usize,
    limits: &Limits,
) -> Result<Series2> {
    let mut out = Series2::zero(order);
    for p in 1..=order {
        for q in 1..=order - p {
            let (n, m) = match family {
                ClassFamily::T | ClassFamily::S => (p, q),
                ClassFamily::TPrimed => (p, q - 1),
                ClassFamily::SPrimed => (p - 1, q - 1),
            };
            let spec = PartitionClassSpec::new(family, n, m, subclass)?;
            out.set_coeff(p, q, psi_coefficient(&spec, fam, limits)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lemma {
    T1,
    T2,
    T3,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl Lemma {
    pub const ALL: [Lemma; 9] = [
        Lemma::T1,
        Lemma::T2,
        Lemma::T3,
        Lemma::S1,
        Lemma::S2,
        Lemma::S3,
        Lemma::S4,
        Lemma::S5,
        Lemma::S6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::T1 => "T1",
            Lemma::T2 => "T2",
            Lemma::T3 => "T3",
            Lemma::S1 => "S1",
            Lemma::S2 => "S2",
            Lemma::S3 => "S3",
            Lemma::S4 => "S4",
            Lemma::S5 => "S5",
            Lemma::S6 => "S6",
        }
    }

    /// The class whose sum the lemma evaluates.
    pub fn class(self) -> (ClassFamily, Subclass) {
        match self {
            Lemma::T1 => (ClassFamily::T, Subclass::E),
            Lemma::T2 => (ClassFamily::TPrimed, Subclass::All),
            Lemma::T3 => (ClassFamily::T, Subclass::O),
            Lemma::S1 => (ClassFamily::S, Subclass::E),
            Lemma::S2 => (ClassFamily::SPrimed, Subclass::O0),
            Lemma::S3 => (ClassFamily::SPrimed, Subclass::OR),
            Lemma::S4 => (ClassFamily::SPrimed, Subclass::OL),
            Lemma::S5 => (ClassFamily::SPrimed, Subclass::OLR),
            Lemma::S6 => (ClassFamily::S, Subclass::O),
        }
    }

    fn is_t(self) -> bool {
        matches!(self, Lemma::T1 | Lemma::T2 | Lemma::T3)
    }
}

/// The series `φ` of the pinched convolutions of the marginals.
struct Pinched {
    f12: Series1,
    f21: Series1,
    g12: Series1,
    g21: Series1,
}

impl Pinched {
    fn new(fam: &BiFreeFamily, with_left: bool, limits: &Limits) -> Result<Self> {
        let (g1, g2) = (fam.first.right_marginal(), fam.second.right_marginal());
        let g12 = pinched_convolve(&g1, &g2, limits)?.phi_series();
        let g21 = pinched_convolve(&g2, &g1, limits)?.phi_series();
        let (f12, f21) = if with_left {
            let (f1, f2) = (fam.first.left_marginal(), fam.second.left_marginal());
            (
                pinched_convolve(&f1, &f2, limits)?.phi_series(),
                pinched_convolve(&f2, &f1, limits)?.phi_series(),
            )
        } else {
            let z = Series1::var(g12.order());
            (z.clone(), z)
        };
        Ok(Pinched { f12, f21, g12, g21 })
    }
}

/// The right-hand side of a lemma, to total degree `order`. The family
/// must be known to `order + 2`.
pub fn lemma_closed_form(
    lemma: Lemma,
    fam: &BiFreeFamily,
    order: usize,
    limits: &Limits,
) -> Result<Series2> {
    let trunc = order + 2;
    if fam.trunc() < trunc {
        return Err(Error::TruncationExceeded {
            needed: trunc,
            available: fam.trunc(),
        });
    }
    let fam = BiFreeFamily::new(fam.first.truncate(trunc), fam.second.truncate(trunc));
    let p = Pinched::new(&fam, !lemma.is_t(), limits)?;
    let k1 = fam.first.series_k();
    let k2 = fam.second.series_k();
    let z = Series1::var(trunc);
    let at = |k: &Series2, zk: usize, wk: usize, sz: &Series1, sw: &Series1| -> Result<Series2> {
        k.div_by(zk, wk)?.compose_each_variable(sz, sw)
    };
    let t2 = || -> Result<Series2> { Ok(at(&k2, 0, 1, &z, &p.g21)?.shift_up(0, 1)) };
    let s_parts = || -> Result<[Series2; 4]> {
        let a = p_over_z(&fam.second.left_marginal().phi_series(), &p.f21)?;
        let b = p_over_z(&fam.second.right_marginal().phi_series(), &p.g21)?;
        let s2 = Series2::outer_product(&a, &b).shift_up(1, 1);
        let s3 = (&Series2::from_z(&p.f12) * &at(&k2, 0, 1, &p.f21, &p.g21)?).shift_up(0, 1);
        let s4 = (&Series2::from_w(&p.g12) * &at(&k2, 1, 0, &p.f21, &p.g21)?).shift_up(1, 0);
        let s5 = at(&k2, 1, 1, &p.f21, &p.g21)?.shift_up(1, 1);
        Ok([s2, s3, s4, s5])
    };
    let out = match lemma {
        Lemma::T1 => k2.compose_each_variable(&z, &p.g21)?,
        Lemma::T2 => t2()?,
        Lemma::T3 => {
            let direct = k1.compose_each_variable(&z, &p.g12)?;
            &direct + &(&t2()? * &at(&k1, 0, 1, &z, &p.g12)?)
        }
        Lemma::S1 => k2.compose_each_variable(&p.f21, &p.g21)?,
        Lemma::S2 | Lemma::S3 | Lemma::S4 | Lemma::S5 => {
            let [s2, s3, s4, s5] = s_parts()?;
            match lemma {
                Lemma::S2 => s2,
                Lemma::S3 => s3,
                Lemma::S4 => s4,
                _ => s5,
            }
        }
        Lemma::S6 => {
            let [s2, s3, s4, s5] = s_parts()?;
            let primed = &(&s2 + &s3) + &(&s4 + &s5);
            &primed * &at(&k1, 1, 1, &p.f12, &p.g12)?
        }
    };
    Ok(out.truncate(order))
}

/// `φ(x(z)) / x(z)` for `φ` and `x` with zero constant term.
fn p_over_z(phi: &Series1, x: &Series1) -> Result<Series1> {
    Series1::compose(&phi.div_by_z(1)?, x)
}

/// Compare the class sum of a lemma with its closed form on every
/// coefficient `z^n w^m` with `n, m >= 1` and `n + m <= order`.
pub fn check_lemma(
    lemma: Lemma,
    fam: &BiFreeFamily,
    order: usize,
    limits: &Limits,
) -> Result<CoefficientCheck> {
    let (family, subclass) = lemma.class();
    let lhs = psi_series(family, subclass, fam, order, limits)?;
    let rhs = lemma_closed_form(lemma, fam, order, limits)?;
    Ok(CoefficientCheck::from_series(
        lemma.name(),
        order,
        &lhs,
        &rhs,
        |n, m| n >= 1 && m >= 1,
    ))
}

/// The `1ℓ`-has-rights class computed directly, against the
/// `1r`-has-lefts class of the mirrored family with `z` and `w` exchanged.
pub fn check_mirror(fam: &BiFreeFamily, order: usize, limits: &Limits) -> Result<CoefficientCheck> {
    let direct = psi_series(ClassFamily::SPrimed, Subclass::OL, fam, order, limits)?;
    let mirrored = psi_series(
        ClassFamily::SPrimed,
        Subclass::OR,
        &fam.mirror(),
        order,
        limits,
    )?;
    let swapped = Series2::from_fn(order, |n, m| {
        mirrored.coeff(m, n).cloned().unwrap_or_else(Rational::zero)
    });
    Ok(CoefficientCheck::from_series(
        "S4 mirror",
        order,
        &direct,
        &swapped,
        |n, m| n >= 1 && m >= 1,
    ))
}
