//! Set partitions of `{1..n}` and the lattice `NC(n)` of non-crossing
//! partitions.
//!
//! Partitions are kept in canonical form (each block sorted, blocks sorted
//! by their minimum) so that derived equality and hashing are structural.
//! The text form is `{1,6|2,3,4|5|7}`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use num_traits::One;

use crate::dsu::Dsu;
use crate::enumerate::{for_each_non_crossing, WILDCARD};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::scalar::{int, Rational};

/// A set partition of `{1..n}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validate and canonicalize a list of blocks over `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".to_string()));
            }
            for &x in block {
                if x == 0 || x > n {
                    return Err(Error::InvalidPartition(format!("{x} is outside 1..{n}")));
                }
                if core::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("{x} appears twice")));
                }
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::InvalidPartition(format!("{x} is not covered")));
        }
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { n, blocks }
    }

    /// Partition from per-element block labels: `labels[i]` is the label of
    /// element `i + 1`. Labels need not be contiguous.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<(usize, usize)> = Vec::new();
        for (i, &label) in labels.iter().enumerate() {
            match index.iter().find(|(l, _)| *l == label) {
                Some(&(_, b)) => blocks[b].push(i + 1),
                None => {
                    index.push((label, blocks.len()));
                    blocks.push(vec![i + 1]);
                }
            }
        }
        Self::canonical(labels.len(), blocks)
    }

    /// `0_n`: all singletons.
    pub fn finest(n: usize) -> Self {
        Partition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    /// `1_n`: one block.
    pub fn coarsest(n: usize) -> Self {
        Partition {
            n,
            blocks: if n == 0 {
                vec![]
            } else {
                vec![(1..=n).collect()]
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index (into [`blocks`](Self::blocks)) of the block containing `x`.
    pub fn block_index_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// `labels[i]` = block index of element `i + 1`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x - 1] = k;
            }
        }
        labels
    }

    pub fn is_non_crossing(&self) -> bool {
        let labels = self.labels();
        crossing_pair(&labels).is_none()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        same_size(self, other)?;
        let labels = other.labels();
        Ok(self
            .blocks
            .iter()
            .all(|b| b.iter().all(|&x| labels[x - 1] == labels[b[0] - 1])))
    }

    /// Set-partition join (connected components of the union of blocks).
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        same_size(self, other)?;
        let mut dsu = self.union_graph(other);
        let labels: Vec<usize> = (0..self.n).map(|i| dsu.find(i)).collect();
        Ok(Partition::from_labels(&labels))
    }

    fn union_graph(&self, other: &Partition) -> Dsu {
        let mut dsu = Dsu::new(self.n);
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                dsu.union(w[0] - 1, w[1] - 1);
            }
        }
        dsu
    }

    /// Restrict to the elements of `subset` (sorted), relabelled `1..k` in
    /// increasing order.
    pub fn restrict(&self, subset: &[usize]) -> Partition {
        let labels = self.labels();
        let restricted: Vec<usize> = subset.iter().map(|&x| labels[x - 1]).collect();
        Partition::from_labels(&restricted)
    }
}

fn same_size(a: &Partition, b: &Partition) -> Result<()> {
    if a.n != b.n {
        Err(Error::SizeMismatch {
            left: a.n,
            right: b.n,
        })
    } else {
        Ok(())
    }
}

/// Some `a < b < c < d` with `a ~ c`, `b ~ d` and `a !~ b`, if any.
fn crossing_pair(labels: &[usize]) -> Option<(usize, usize)> {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            if labels[a] == labels[b] {
                continue;
            }
            for c in b + 1..n {
                if labels[c] != labels[a] {
                    continue;
                }
                if labels[c + 1..].contains(&labels[b]) {
                    return Some((labels[a], labels[b]));
                }
            }
        }
    }
    None
}

/// True iff the union of the two block graphs is connected, i.e. the
/// set-partition join is `1_n`.
pub fn join_is_full(pi: &Partition, sigma: &Partition) -> Result<bool> {
    same_size(pi, sigma)?;
    Ok(pi.union_graph(sigma).components() <= 1)
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str("}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parse `{1,6|2,3,4|5|7}`; `n` is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {s:?}")))?;
        let mut blocks = Vec::new();
        for part in inner.split('|') {
            let block = part
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element {x:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        Partition::new(n, blocks)
    }
}

/// A non-crossing partition of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NCPartition(Partition);

impl NCPartition {
    pub fn new(partition: Partition) -> Result<Self> {
        if let Some(labels) = crossing_pair(&partition.labels()) {
            return Err(Error::InvalidPartition(format!(
                "{partition} has crossing blocks {} and {}",
                labels.0 + 1,
                labels.1 + 1
            )));
        }
        Ok(NCPartition(partition))
    }

    pub fn finest(n: usize) -> Self {
        NCPartition(Partition::finest(n))
    }

    pub fn coarsest(n: usize) -> Self {
        NCPartition(Partition::coarsest(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }

    /// Whether `{1}` is a singleton block, i.e. membership in `NC'(n)`.
    pub fn is_pinched(&self) -> bool {
        self.0.blocks.first().is_some_and(|b| b.len() == 1)
    }
}

impl Deref for NCPartition {
    type Target = Partition;
    fn deref(&self) -> &Partition {
        &self.0
    }
}

impl fmt::Display for NCPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for NCPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NCPartition::new(s.parse()?)
    }
}

/// Enumeration order: fewer blocks first, then lexicographic on the
/// restricted growth string (block label of 1, 2, ..., n).
fn graded_order(a: &NCPartition, b: &NCPartition) -> Ordering {
    a.block_count()
        .cmp(&b.block_count())
        .then_with(|| a.labels().cmp(&b.labels()))
}

/// All of `NC(n)`, `Catalan(n)` partitions, in graded order.
pub fn enumerate_nc(n: usize, limits: &Limits) -> Result<Vec<NCPartition>> {
    limits.check_enumeration(n)?;
    let mut out = Vec::new();
    for_each_non_crossing(&vec![WILDCARD; n], |assign, _| {
        out.push(NCPartition(Partition::from_labels(assign)));
    });
    out.sort_by(graded_order);
    Ok(out)
}

/// `NC'(n)`: the non-crossing partitions with `{1}` as a block.
pub fn enumerate_nc_prime(n: usize, limits: &Limits) -> Result<Vec<NCPartition>> {
    let mut all = enumerate_nc(n, limits)?;
    all.retain(NCPartition::is_pinched);
    Ok(all)
}

/// Kreweras complement.
///
/// Interleave primed points `k'` after each `k`. Two primed points `i' < j'`
/// can be joined without crossing `pi` exactly when the unprimed points
/// strictly between them, `{i+1..j}`, are a union of blocks of `pi`; the
/// complement is the partition generated by all such joins.
pub fn kreweras(pi: &NCPartition) -> NCPartition {
    let n = pi.n();
    let labels = pi.labels();
    let mut lo = vec![usize::MAX; pi.block_count()];
    let mut hi = vec![0; pi.block_count()];
    for (i, &l) in labels.iter().enumerate() {
        lo[l] = lo[l].min(i + 1);
        hi[l] = hi[l].max(i + 1);
    }
    let mut dsu = Dsu::new(n);
    for i in 1..=n {
        // Scan j upward while {i+1..j} stays closed under blocks.
        let mut reach_lo = usize::MAX;
        let mut reach_hi = 0;
        for j in i + 1..=n {
            let l = labels[j - 1];
            reach_lo = reach_lo.min(lo[l]);
            reach_hi = reach_hi.max(hi[l]);
            if reach_lo < i + 1 {
                break;
            }
            if reach_hi <= j {
                dsu.union(i - 1, j - 1);
            }
        }
    }
    let comp: Vec<usize> = (0..n).map(|i| dsu.find(i)).collect();
    NCPartition(Partition::from_labels(&comp))
}

/// Smallest non-crossing partition above both arguments.
pub fn nc_join(pi: &Partition, sigma: &Partition) -> Result<NCPartition> {
    let mut labels = pi.join(sigma)?.labels();
    // Merge crossing blocks until none remain.
    while let Some((a, b)) = crossing_pair(&labels) {
        for l in labels.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    Ok(NCPartition(Partition::from_labels(&labels)))
}

/// Brute-force the unique `tau` on the primed points with `pi ∪ tau`
/// non-crossing in the order `1, 1', 2, 2', ...` and connected to the
/// pairing `{k, k'}`; it must be the Kreweras complement.
pub fn unique_complement_check(pi: &NCPartition, limits: &Limits) -> Result<NCPartition> {
    let n = pi.n();
    let pairing = Partition::from_labels(&(0..2 * n).map(|p| p / 2).collect::<Vec<_>>());
    let pi_labels = pi.labels();
    let mut found = Vec::new();
    for tau in enumerate_nc(n, limits)? {
        // Position 2k-2 holds k, position 2k-1 holds k'.
        let tau_labels = tau.labels();
        let mut labels = vec![0; 2 * n];
        for k in 0..n {
            labels[2 * k] = pi_labels[k];
            labels[2 * k + 1] = n + tau_labels[k];
        }
        if crossing_pair(&labels).is_some() {
            continue;
        }
        let combined = Partition::from_labels(&labels);
        if join_is_full(&combined, &pairing)? {
            found.push(tau);
        }
    }
    if found.len() != 1 {
        return Err(Error::UniquenessViolation { found: found.len() });
    }
    let tau = found.pop().unwrap();
    if tau != kreweras(pi) {
        return Err(Error::UniquenessViolation { found: 1 });
    }
    Ok(tau)
}

/// `(-1)^(k-1) Catalan(k-1)`, the Möbius value of `[0_k, 1_k]`.
pub fn mobius_full(k: usize) -> Rational {
    let c = crate::enumerate::catalan(k - 1);
    let v = int(c as i64);
    if k.is_multiple_of(2) {
        -v
    } else {
        v
    }
}

/// Möbius function of the interval `[pi, sigma]` in `NC(n)`.
///
/// The interval factors over the blocks `V` of `sigma` as
/// `[pi|V, 1_V] ≅ [0, K(pi|V)]`, and `[0, tau]` factors over the blocks of
/// `tau` into full lattices.
pub fn mobius_nc(pi: &NCPartition, sigma: &NCPartition) -> Result<Rational> {
    if !pi.leq(sigma)? {
        return Err(Error::NotComparable);
    }
    let mut acc = Rational::one();
    for block in sigma.blocks() {
        let restricted = NCPartition(pi.restrict(block));
        for w in kreweras(&restricted).blocks() {
            acc *= mobius_full(w.len());
        }
    }
    Ok(acc)
}
