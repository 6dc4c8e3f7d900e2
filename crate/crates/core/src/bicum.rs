//! Two-faced pair distributions and their (ℓ,r)-cumulants.
//!
//! A pair `(a, b)` is specified by its cumulant table `κ_{n,m}`, with
//! `κ_{n,0}` and `κ_{0,m}` the free cumulants of `a` and `b`. Moments are
//! sums over `BNC(n,m)`, and cumulants of sums and products of two bi-free
//! pairs are sums over restricted bi-non-crossing partitions of a longer
//! word. Those restricted sums are computed once per cell as an
//! [`Expansion`]: a tally of block profiles that can then be evaluated on
//! any family.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bnc::{
    connects_with, enumerate_bnc, for_each_tagged, mobius_bnc, sigma_doubling, BncPartition,
    BncShape, Doubling, Face,
};
use crate::enumerate::WILDCARD;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::multfn::MultFn;
use crate::ncpart::Partition;
use crate::scalar::Rational;
use crate::series::Series2;

/// Cumulant table `κ_{n,m}` for `n + m <= trunc`, with `κ_{0,0} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairDistribution {
    trunc: usize,
    // kappa[n][m], m <= trunc - n
    kappa: Vec<Vec<Rational>>,
}

impl PairDistribution {
    /// The pair `(1, 1)`: only `κ_{1,0} = κ_{0,1} = 1` are nonzero.
    pub fn unit(trunc: usize) -> Self {
        Self::from_fn(trunc, |n, m| {
            if n + m == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// All cumulants zero: the pair `(0, 0)`.
    pub fn zero(trunc: usize) -> Self {
        Self::from_fn(trunc, |_, _| Rational::zero())
    }

    /// `κ_{0,0}` is set to 1 regardless of `f(0, 0)`.
    pub fn from_fn(trunc: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let kappa = (0..=trunc)
            .map(|n| {
                (0..=trunc - n)
                    .map(|m| if n + m == 0 { Rational::one() } else { f(n, m) })
                    .collect()
            })
            .collect();
        PairDistribution { trunc, kappa }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&Rational> {
        self.kappa.get(n).and_then(|row| row.get(m))
    }

    /// `κ_{n,m}`.
    ///
    /// Panics if `n + m > trunc`.
    pub fn kappa(&self, n: usize, m: usize) -> &Rational {
        self.get(n, m)
            .unwrap_or_else(|| panic!("κ_{{{n},{m}}} is beyond truncation {}", self.trunc))
    }

    fn checked(&self, n: usize, m: usize) -> Result<&Rational> {
        self.get(n, m).ok_or(Error::TruncationExceeded {
            needed: n + m,
            available: self.trunc,
        })
    }

    /// Set `κ_{n,m}`; `κ_{0,0}` stays 1.
    pub fn set_kappa(&mut self, n: usize, m: usize, value: Rational) -> Result<()> {
        if n + m > self.trunc {
            return Err(Error::TruncationExceeded {
                needed: n + m,
                available: self.trunc,
            });
        }
        if n + m > 0 {
            self.kappa[n][m] = value;
        }
        Ok(())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        Self::from_fn(trunc, |n, m| self.kappa[n][m].clone())
    }

    /// Free cumulants of the left face, `κ_{n,0}` for `n = 1..=trunc`.
    pub fn left_marginal(&self) -> MultFn {
        MultFn::from_fn(self.trunc, |n| self.kappa[n][0].clone())
    }

    /// Free cumulants of the right face.
    pub fn right_marginal(&self) -> MultFn {
        MultFn::from_fn(self.trunc, |m| self.kappa[0][m].clone())
    }

    /// The pair `(b, a)` with faces exchanged: `κ'_{n,m} = κ_{m,n}`.
    pub fn mirror(&self) -> Self {
        Self::from_fn(self.trunc, |n, m| self.kappa[m][n].clone())
    }

    /// `C(z,w) = Σ κ_{n,m} z^n w^m`.
    pub fn series_c(&self) -> Series2 {
        Series2::from_fn(self.trunc, |n, m| self.kappa[n][m].clone())
    }

    /// `K(z,w) = Σ_{n,m >= 1} κ_{n,m} z^n w^m`.
    pub fn series_k(&self) -> Series2 {
        Series2::from_fn(self.trunc, |n, m| {
            if n >= 1 && m >= 1 {
                self.kappa[n][m].clone()
            } else {
                Rational::zero()
            }
        })
    }
}

/// Moment table `M_{n,m} = φ(a^n b^m)` for `n + m <= trunc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MomentTable {
    trunc: usize,
    values: Vec<Vec<Rational>>,
}

impl MomentTable {
    pub fn from_fn(trunc: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        MomentTable {
            trunc,
            values: (0..=trunc)
                .map(|n| (0..=trunc - n).map(|m| f(n, m)).collect())
                .collect(),
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&Rational> {
        self.values.get(n).and_then(|row| row.get(m))
    }

    /// `H(z,w) = Σ M_{n,m} z^n w^m`.
    pub fn series_h(&self) -> Series2 {
        Series2::from_fn(self.trunc, |n, m| self.values[n][m].clone())
    }
}

fn profile_product(
    shape: &BncShape,
    blocks: &[Vec<usize>],
    mut value: impl FnMut(usize, usize) -> Result<Rational>,
) -> Result<Rational> {
    let mut acc = Rational::one();
    for b in blocks {
        let lefts = b
            .iter()
            .filter(|&&p| shape.word()[p - 1] == Face::Left)
            .count();
        acc *= value(lefts, b.len() - lefts)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `M_{n,m} = Σ_{π ∈ BNC(n,m)} Π_V κ_{#left(V), #right(V)}`.
pub fn moments_from_cumulants(
    d: &PairDistribution,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<Rational> {
    if n + m == 0 {
        return Ok(Rational::one());
    }
    d.checked(n, m)?;
    limits.check_enumeration(n + m)?;
    let shape = BncShape::chi(n, m)?;
    let zeros = vec![WILDCARD; n + m];
    let mut acc = Rational::zero();
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for_each_tagged(&shape, &zeros, |labels, blocks| {
        lefts.clear();
        lefts.resize(blocks, 0);
        rights.clear();
        rights.resize(blocks, 0);
        for (pos, &l) in labels.iter().enumerate() {
            if pos < n {
                lefts[l] += 1;
            } else {
                rights[l] += 1;
            }
        }
        let mut term = Rational::one();
        for b in 0..blocks {
            term *= d.kappa(lefts[b], rights[b]);
            if term.is_zero() {
                return;
            }
        }
        acc += term;
    });
    Ok(acc)
}

/// All moments up to the distribution's truncation.
pub fn moment_table(d: &PairDistribution, limits: &Limits) -> Result<MomentTable> {
    limits.check_enumeration(d.trunc)?;
    let mut out = MomentTable::from_fn(d.trunc, |_, _| Rational::zero());
    for n in 0..=d.trunc {
        for m in 0..=d.trunc - n {
            out.values[n][m] = moments_from_cumulants(d, n, m, limits)?;
        }
    }
    Ok(out)
}

/// Möbius inversion of [`moments_from_cumulants`]:
/// `κ_{n,m} = Σ_{π ∈ BNC(n,m)} μ(π, 1_{n,m}) Π_V M_{#left(V), #right(V)}`.
pub fn cumulants_from_moments(moments: &MomentTable, limits: &Limits) -> Result<PairDistribution> {
    if !moments.values[0][0].is_one() {
        return Err(Error::NotNormalized("moment table needs M_{0,0} = 1"));
    }
    limits.check_enumeration(moments.trunc)?;
    let mut out = PairDistribution::zero(moments.trunc);
    for n in 0..=moments.trunc {
        for m in 0..=moments.trunc - n {
            if n + m == 0 {
                continue;
            }
            let shape = BncShape::chi(n, m)?;
            let top = BncPartition::top(shape.clone());
            let mut acc = Rational::zero();
            for pi in enumerate_bnc(&shape, limits)? {
                let mu = mobius_bnc(&pi, &top)?;
                acc +=
                    mu * profile_product(&shape, pi.blocks(), |p, q| {
                        Ok(moments.values[p][q].clone())
                    })?;
            }
            out.kappa[n][m] = acc;
        }
    }
    Ok(out)
}

/// `H(z,w)` from the cumulant table.
pub fn series_h(d: &PairDistribution, limits: &Limits) -> Result<Series2> {
    Ok(moment_table(d, limits)?.series_h())
}

/// `h_a(z) + h_b(w)` and `h_a(z) h_b(w) / H(z,w) + C(z h_a(z), w h_b(w))`,
/// which agree for every pair distribution.
pub fn bi_moment_sides(d: &PairDistribution, limits: &Limits) -> Result<(Series2, Series2)> {
    let h = series_h(d, limits)?;
    let ha = h.restrict_z();
    let hb = h.restrict_w();
    let lhs = &Series2::from_z(&ha) + &Series2::from_w(&hb);
    let product = &Series2::outer_product(&ha, &hb) * &h.reciprocal()?;
    let sub_z = ha.shift_up(1).truncate(d.trunc);
    let sub_w = hb.shift_up(1).truncate(d.trunc);
    let rhs = &product + &d.series_c().compose_each_variable(&sub_z, &sub_w)?;
    Ok((lhs, rhs))
}

/// Two bi-free pairs `(a_1, b_1)` and `(a_2, b_2)`. Mixed cumulants vanish
/// and are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiFreeFamily {
    pub first: PairDistribution,
    pub second: PairDistribution,
}

impl BiFreeFamily {
    pub fn new(first: PairDistribution, second: PairDistribution) -> Self {
        BiFreeFamily { first, second }
    }

    pub fn trunc(&self) -> usize {
        self.first.trunc.min(self.second.trunc)
    }

    /// Both pairs with faces exchanged.
    pub fn mirror(&self) -> Self {
        BiFreeFamily::new(self.first.mirror(), self.second.mirror())
    }

    /// The family with the two pairs swapped.
    pub fn swapped(&self) -> Self {
        BiFreeFamily::new(self.second.clone(), self.first.clone())
    }
}

/// Which pair an entry of a cumulant word belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    First,
    Second,
    /// `a_1 + a_2`, expanded by linearity.
    Either,
}

impl Source {
    fn tag(self) -> u8 {
        match self {
            Source::First => 1,
            Source::Second => 2,
            Source::Either => WILDCARD,
        }
    }

    /// `First` at odd positions, `Second` at even ones.
    pub(crate) fn alternating(pos: usize, odd: Source) -> Source {
        let even = match odd {
            Source::First => Source::Second,
            Source::Second => Source::First,
            Source::Either => Source::Either,
        };
        if pos % 2 == 1 {
            odd
        } else {
            even
        }
    }
}

/// A cumulant word: a shape, the source of each entry, and the doubling
/// partition whose join with `π` must be full.
#[derive(Debug, Clone)]
pub(crate) struct Word {
    pub(crate) shape: BncShape,
    pub(crate) sources: Vec<Source>,
    pub(crate) sigma: Partition,
}

impl Word {
    pub(crate) fn new(
        sigma: BncPartition,
        left: impl Fn(usize) -> Source,
        right: impl Fn(usize) -> Source,
    ) -> Self {
        let shape = sigma.shape().clone();
        let sources = (1..=shape.len())
            .map(|p| match shape.node(p) {
                (Face::Left, k) => left(k),
                (Face::Right, k) => right(k),
            })
            .collect();
        Word {
            sigma: sigma.partition().clone(),
            shape,
            sources,
        }
    }
}

/// Kind of one block in a term: its source and its numbers of left and
/// right nodes.
type BlockKind = (Source, usize, usize);

/// A sum over restricted bi-non-crossing partitions, tallied by the
/// multiset of block kinds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    terms: BTreeMap<Vec<BlockKind>, u64>,
}

impl Expansion {
    /// Number of partitions summed over.
    pub fn partition_count(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Number of distinct block profiles.
    pub fn profile_count(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate(&self, fam: &BiFreeFamily) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (profile, &count) in &self.terms {
            let mut term = Rational::from_integer(BigInt::from(count));
            for &(source, p, q) in profile {
                let v = match source {
                    Source::First => fam.first.checked(p, q)?.clone(),
                    Source::Second => fam.second.checked(p, q)?.clone(),
                    Source::Either => fam.first.checked(p, q)? + fam.second.checked(p, q)?,
                };
                term *= v;
                if term.is_zero() {
                    break;
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// Enumerate the partitions of `word` that never join entries of
/// different pairs, connect with `word.sigma`, and pass `keep`.
pub(crate) fn expand(
    word: &Word,
    limits: &Limits,
    mut keep: impl FnMut(&[usize], usize) -> bool,
) -> Result<Expansion> {
    limits.check_classes(word.shape.len())?;
    let tags: Vec<u8> = word.sources.iter().map(|s| s.tag()).collect();
    let mut out = Expansion::default();
    let mut kinds: Vec<BlockKind> = Vec::new();
    for_each_tagged(&word.shape, &tags, |labels, blocks| {
        if !connects_with(labels, blocks, &word.sigma) || !keep(labels, blocks) {
            return;
        }
        kinds.clear();
        kinds.resize(blocks, (Source::Either, 0, 0));
        for (pos, &l) in labels.iter().enumerate() {
            let kind = &mut kinds[l];
            if word.sources[pos] != Source::Either {
                kind.0 = word.sources[pos];
            }
            match word.shape.word()[pos] {
                Face::Left => kind.1 += 1,
                Face::Right => kind.2 += 1,
            }
        }
        let mut profile = kinds.clone();
        profile.sort_unstable();
        *out.terms.entry(profile).or_insert(0) += 1;
    });
    Ok(out)
}

/// Order of the right factors in a product pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RightOrder {
    /// `(a_1 a_2, b_1 b_2)`
    B1B2,
    /// `(a_1 a_2, b_2 b_1)`
    B2B1,
}

/// Which combination of a bi-free family a cumulant table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combination {
    /// `(a_1 + a_2, b_1 b_2)`
    SumProduct,
    /// `(a_1 a_2, b_1 b_2)` or `(a_1 a_2, b_2 b_1)`
    Product(RightOrder),
}

impl Combination {
    fn word(self, n: usize, m: usize) -> Result<Word> {
        match self {
            Combination::SumProduct => Ok(Word::new(
                sigma_doubling(Doubling::LeftSingleRightDouble, n, m)?,
                |_| Source::Either,
                |k| Source::alternating(k, Source::First),
            )),
            Combination::Product(order) => {
                let odd_right = match order {
                    RightOrder::B1B2 => Source::First,
                    RightOrder::B2B1 => Source::Second,
                };
                Ok(Word::new(
                    sigma_doubling(Doubling::BothDouble, n, m)?,
                    |k| Source::alternating(k, Source::First),
                    move |k| Source::alternating(k, odd_right),
                ))
            }
        }
    }

    /// The restricted partition sum giving `κ_{n,m}` of the combination.
    pub fn expansion(self, n: usize, m: usize, limits: &Limits) -> Result<Expansion> {
        expand(&self.word(n, m)?, limits, |_, _| true)
    }
}

/// `κ_{n,m}(a_1 a_2, b_1 b_2)` (or with `b_2 b_1`).
pub fn product_pair_cumulants(
    fam: &BiFreeFamily,
    right_order: RightOrder,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<Rational> {
    Combination::Product(right_order)
        .expansion(n, m, limits)?
        .evaluate(fam)
}

/// `κ_{n,m}(a_1 + a_2, b_1 b_2)`.
pub fn sum_product_pair_cumulants(
    fam: &BiFreeFamily,
    n: usize,
    m: usize,
    limits: &Limits,
) -> Result<Rational> {
    Combination::SumProduct
        .expansion(n, m, limits)?
        .evaluate(fam)
}

/// Expansions of every cell of a combination up to a truncation, reusable
/// across families.
#[derive(Debug, Clone)]
pub struct PairConvolution {
    combination: Combination,
    trunc: usize,
    // cells[n][m]; the (0, 0) cell is unused
    cells: Vec<Vec<Expansion>>,
}

impl PairConvolution {
    pub fn new(combination: Combination, trunc: usize, limits: &Limits) -> Result<Self> {
        let mut cells = Vec::with_capacity(trunc + 1);
        for n in 0..=trunc {
            let mut row = Vec::with_capacity(trunc - n + 1);
            for m in 0..=trunc - n {
                row.push(if n + m == 0 {
                    Expansion::default()
                } else {
                    combination.expansion(n, m, limits)?
                });
            }
            cells.push(row);
        }
        Ok(PairConvolution {
            combination,
            trunc,
            cells,
        })
    }

    pub fn combination(&self) -> Combination {
        self.combination
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn expansion(&self, n: usize, m: usize) -> Option<&Expansion> {
        self.cells.get(n).and_then(|row| row.get(m))
    }

    /// The cumulant table of the combined pair.
    pub fn apply(&self, fam: &BiFreeFamily) -> Result<PairDistribution> {
        let mut out = PairDistribution::zero(self.trunc);
        for n in 0..=self.trunc {
            for m in 0..=self.trunc - n {
                if n + m > 0 {
                    out.kappa[n][m] = self.cells[n][m].evaluate(fam)?;
                }
            }
        }
        Ok(out)
    }
}
