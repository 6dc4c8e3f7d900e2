//! Depth-first generation of non-crossing partitions of `0..n` (in circular
//! order), optionally restricted to blocks whose tagged points agree.
//!
//! Each point either opens a new block or joins a block that is still
//! reachable without crossing. The reachable blocks form a stack: joining
//! the block at depth `d` seals every block above it.

use alloc::vec::Vec;

/// Tag that is compatible with every other tag.
pub(crate) const WILDCARD: u8 = 0;

struct Walker<'a, V> {
    tags: &'a [u8],
    assign: Vec<usize>,
    block_tags: Vec<u8>,
    stack: Vec<usize>,
    visit: V,
}

impl<V: FnMut(&[usize], usize)> Walker<'_, V> {
    fn step(&mut self, i: usize) {
        let n = self.tags.len();
        if i == n {
            (self.visit)(&self.assign, self.block_tags.len());
            return;
        }
        let tag = self.tags[i];

        let fresh = self.block_tags.len();
        self.block_tags.push(tag);
        self.stack.push(fresh);
        self.assign[i] = fresh;
        self.step(i + 1);
        self.stack.pop();
        self.block_tags.pop();

        for depth in (0..self.stack.len()).rev() {
            let b = self.stack[depth];
            let current = self.block_tags[b];
            if current != WILDCARD && tag != WILDCARD && current != tag {
                continue;
            }
            let sealed = self.stack.split_off(depth + 1);
            if current == WILDCARD {
                self.block_tags[b] = tag;
            }
            self.assign[i] = b;
            self.step(i + 1);
            self.block_tags[b] = current;
            self.stack.extend(sealed);
        }
    }
}

/// Visit every non-crossing partition of `0..tags.len()` whose blocks never
/// contain two different non-wildcard tags. The visitor receives the block
/// index of each point (blocks numbered by first point) and the block count.
pub(crate) fn for_each_non_crossing(tags: &[u8], visit: impl FnMut(&[usize], usize)) {
    let n = tags.len();
    if n == 0 {
        return;
    }
    let mut walker = Walker {
        tags,
        assign: alloc::vec![0; n],
        block_tags: Vec::with_capacity(n),
        stack: Vec::with_capacity(n),
        visit,
    };
    walker.step(0);
}

/// Catalan numbers as `u128`, exact for `k <= 60` or so.
pub(crate) fn catalan(k: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
