//! Bi-non-crossing partitions.
//!
//! A shape is a word over {left, right}. Reading the left positions top to
//! bottom and then the right positions bottom to top arranges the nodes on
//! a circle; a partition is bi-non-crossing when it is non-crossing in that
//! order. Positions are numbered `1..=len` in word order, so for the
//! shape `χ_{n,m}` position `k <= n` is the node `kℓ` and `n + j` is `jr`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::dsu::Dsu;
use crate::enumerate::{for_each_non_crossing, WILDCARD};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ncpart::{enumerate_nc, mobius_nc, NCPartition, Partition};
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BncShape {
    word: Vec<Face>,
}

impl BncShape {
    pub fn new(word: Vec<Face>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidSize {
                what: "shape",
                n: 0,
                m: 0,
            });
        }
        Ok(BncShape { word })
    }

    /// `n` left nodes followed by `m` right nodes.
    pub fn chi(n: usize, m: usize) -> Result<Self> {
        if n + m == 0 {
            return Err(Error::InvalidSize {
                what: "shape",
                n,
                m,
            });
        }
        let mut word = vec![Face::Left; n];
        word.resize(n + m, Face::Right);
        Ok(BncShape { word })
    }

    pub fn word(&self) -> &[Face] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `kℓ` or `kr`: the face of position `pos` and its rank among the
    /// positions with that face.
    pub fn node(&self, pos: usize) -> (Face, usize) {
        let face = self.word[pos - 1];
        let rank = self.word[..pos].iter().filter(|&&f| f == face).count();
        (face, rank)
    }

    pub fn node_label(&self, pos: usize) -> String {
        match self.node(pos) {
            (Face::Left, k) => format!("{k}ℓ"),
            (Face::Right, k) => format!("{k}r"),
        }
    }
}

impl fmt::Display for BncShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for face in &self.word {
            f.write_str(match face {
                Face::Left => "L",
                Face::Right => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for BncShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let word = s
            .trim()
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Face::Left),
                'R' | 'r' => Ok(Face::Right),
                _ => Err(Error::Parse(format!(
                    "shape letters are L and R, got {c:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        BncShape::new(word)
    }
}

/// Circular reading order: left positions ascending, then right positions
/// descending. Entry `i` is the word position visited `i`-th.
pub fn chi_permutation(shape: &BncShape) -> Vec<usize> {
    let lefts = (1..=shape.len()).filter(|&p| shape.word[p - 1] == Face::Left);
    let rights = (1..=shape.len())
        .rev()
        .filter(|&p| shape.word[p - 1] == Face::Right);
    lefts.chain(rights).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BncPartition {
    shape: BncShape,
    partition: Partition,
}

impl BncPartition {
    pub fn new(shape: BncShape, partition: Partition) -> Result<Self> {
        if shape.len() != partition.n() {
            return Err(Error::SizeMismatch {
                left: shape.len(),
                right: partition.n(),
            });
        }
        let p = BncPartition { shape, partition };
        NCPartition::new(p.transported_partition())?;
        Ok(p)
    }

    /// The full block `1_χ`.
    pub fn top(shape: BncShape) -> Self {
        let partition = Partition::coarsest(shape.len());
        BncPartition { shape, partition }
    }

    pub fn bottom(shape: BncShape) -> Self {
        let partition = Partition::finest(shape.len());
        BncPartition { shape, partition }
    }

    pub fn shape(&self) -> &BncShape {
        &self.shape
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        self.partition.blocks()
    }

    /// Number of left and right nodes in a block.
    pub fn block_profile(&self, block: &[usize]) -> (usize, usize) {
        let lefts = block
            .iter()
            .filter(|&&p| self.shape.word[p - 1] == Face::Left)
            .count();
        (lefts, block.len() - lefts)
    }

    fn transported_partition(&self) -> Partition {
        let labels = self.partition.labels();
        let permuted: Vec<usize> = chi_permutation(&self.shape)
            .iter()
            .map(|&p| labels[p - 1])
            .collect();
        Partition::from_labels(&permuted)
    }

    /// The image in `NC(len)` under the circular reading order.
    pub fn transported(&self) -> NCPartition {
        NCPartition::new(self.transported_partition()).expect("bi-non-crossing by construction")
    }

    fn from_transported(shape: &BncShape, perm: &[usize], nc: &NCPartition) -> Self {
        let mut labels = vec![0; shape.len()];
        for (i, l) in nc.labels().into_iter().enumerate() {
            labels[perm[i] - 1] = l;
        }
        BncPartition {
            shape: shape.clone(),
            partition: Partition::from_labels(&labels),
        }
    }

    pub fn leq(&self, other: &BncPartition) -> Result<bool> {
        if self.shape != other.shape {
            return Err(Error::SizeMismatch {
                left: self.shape.len(),
                right: other.shape.len(),
            });
        }
        self.partition.leq(&other.partition)
    }
}

impl fmt::Display for BncPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks().iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (i, &p) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                f.write_str(&self.shape.node_label(p))?;
            }
        }
        f.write_str("}")
    }
}

/// All of `BNC(shape)`, ordered as their images in `NC(len)`.
pub fn enumerate_bnc(shape: &BncShape, limits: &Limits) -> Result<Vec<BncPartition>> {
    let perm = chi_permutation(shape);
    Ok(enumerate_nc(shape.len(), limits)?
        .iter()
        .map(|nc| BncPartition::from_transported(shape, &perm, nc))
        .collect())
}

/// `|BNC(shape)|`, counted without building the partitions.
pub fn count_bnc(shape: &BncShape, limits: &Limits) -> Result<u64> {
    limits.check_enumeration(shape.len())?;
    let mut count = 0;
    for_each_non_crossing(&vec![WILDCARD; shape.len()], |_, _| count += 1);
    Ok(count)
}

/// Visit bi-non-crossing partitions whose blocks never mix two different
/// nonzero tags. `tags` is indexed by word position; the visitor receives
/// block labels by word position and the block count.
pub(crate) fn for_each_tagged(
    shape: &BncShape,
    tags: &[u8],
    mut visit: impl FnMut(&[usize], usize),
) {
    let perm = chi_permutation(shape);
    let permuted_tags: Vec<u8> = perm.iter().map(|&p| tags[p - 1]).collect();
    let mut labels = vec![0; shape.len()];
    for_each_non_crossing(&permuted_tags, |assign, blocks| {
        for (i, &b) in assign.iter().enumerate() {
            labels[perm[i] - 1] = b;
        }
        visit(&labels, blocks);
    });
}

/// Whether the union of the blocks given by `labels` (one label per
/// position, `blocks` labels in all) with `sigma` is connected.
pub(crate) fn connects_with(labels: &[usize], blocks: usize, sigma: &Partition) -> bool {
    let n = labels.len();
    let mut dsu = Dsu::new(n);
    let mut first = vec![usize::MAX; blocks];
    for (pos, &l) in labels.iter().enumerate() {
        if first[l] == usize::MAX {
            first[l] = pos;
        } else {
            dsu.union(first[l], pos);
        }
    }
    for b in sigma.blocks() {
        for w in b.windows(2) {
            dsu.union(w[0] - 1, w[1] - 1);
        }
    }
    dsu.components() == 1
}

/// The four doubling patterns used to expand cumulants of sums and
/// products into cumulants of the factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Doubling {
    /// On `χ_{n,2m}`: left singletons, right pairs `{(2k-1)r, (2k)r}`.
    LeftSingleRightDouble,
    /// On `χ_{2n,2m}`: pairs `{(2k-1), 2k}` on both sides.
    BothDouble,
    /// On `χ_{n,2m+1}`: left singletons, `{1r}`, pairs `{(2k)r, (2k+1)r}`.
    PrimedT,
    /// On `χ_{2n+1,2m+1}`: `{1ℓ, 1r}` and pairs `{2k, 2k+1}` on both sides.
    PrimedS,
}

impl Doubling {
    pub fn shape(self, n: usize, m: usize) -> Result<BncShape> {
        match self {
            Doubling::LeftSingleRightDouble => BncShape::chi(n, 2 * m),
            Doubling::BothDouble => BncShape::chi(2 * n, 2 * m),
            Doubling::PrimedT => BncShape::chi(n, 2 * m + 1),
            Doubling::PrimedS => BncShape::chi(2 * n + 1, 2 * m + 1),
        }
        .map_err(|_| Error::InvalidSize {
            what: "doubling partition",
            n,
            m,
        })
    }
}

pub fn sigma_doubling(kind: Doubling, n: usize, m: usize) -> Result<BncPartition> {
    let shape = kind.shape(n, m)?;
    let (lefts, rights) = match kind {
        Doubling::LeftSingleRightDouble => (n, 2 * m),
        Doubling::BothDouble => (2 * n, 2 * m),
        Doubling::PrimedT => (n, 2 * m + 1),
        Doubling::PrimedS => (2 * n + 1, 2 * m + 1),
    };
    let l = |k: usize| k;
    let r = |k: usize| lefts + k;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    match kind {
        Doubling::LeftSingleRightDouble => {
            blocks.extend((1..=n).map(|k| vec![l(k)]));
            blocks.extend((1..=m).map(|k| vec![r(2 * k - 1), r(2 * k)]));
        }
        Doubling::BothDouble => {
            blocks.extend((1..=n).map(|k| vec![l(2 * k - 1), l(2 * k)]));
            blocks.extend((1..=m).map(|k| vec![r(2 * k - 1), r(2 * k)]));
        }
        Doubling::PrimedT => {
            blocks.extend((1..=n).map(|k| vec![l(k)]));
            blocks.push(vec![r(1)]);
            blocks.extend((1..=m).map(|k| vec![r(2 * k), r(2 * k + 1)]));
        }
        Doubling::PrimedS => {
            blocks.push(vec![l(1), r(1)]);
            blocks.extend((1..=n).map(|k| vec![l(2 * k), l(2 * k + 1)]));
            blocks.extend((1..=m).map(|k| vec![r(2 * k), r(2 * k + 1)]));
        }
    }
    let partition =
        Partition::new(lefts + rights, blocks).expect("doubling blocks cover the shape");
    BncPartition::new(shape, partition)
}

/// Möbius function of `[pi, sigma]` in `BNC(χ)`, computed in `NC(len)`
/// through the circular reading order.
pub fn mobius_bnc(pi: &BncPartition, sigma: &BncPartition) -> Result<Rational> {
    if !pi.leq(sigma)? {
        return Err(Error::NotComparable);
    }
    mobius_nc(&pi.transported(), &sigma.transported())
}
