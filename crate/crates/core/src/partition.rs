//! Partitions of `{0, …, n−1}` in canonical form.
//!
//! Every element points directly at the least element of its block, so two
//! partitions are equal exactly when their representative arrays are.
//! Text form: blocks bracketed by `|`, e.g. `|0,1|2|3|`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Union-find with union by minimum, so roots are always block minima.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn from_partition(p: &Partition) -> Self {
        UnionFind {
            parent: p.reps.clone(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Merges the blocks of `a` and `b`; returns the two former roots when
    /// they differed.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }

    pub(crate) fn into_partition(mut self) -> Partition {
        let reps = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition { reps }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    reps: Vec<usize>,
}

impl Partition {
    /// All singletons.
    pub fn bottom(n: usize) -> Self {
        Partition {
            reps: (0..n).collect(),
        }
    }

    /// One block.
    pub fn top(n: usize) -> Self {
        Partition { reps: vec![0; n] }
    }

    /// Equivalence relation generated by `pairs`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            for e in [a, b] {
                if e >= n {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        size: n,
                    });
                }
            }
            uf.union(a, b);
        }
        Ok(uf.into_partition())
    }

    /// Builds a partition from arbitrary block labels: `x` and `y` share a
    /// block iff `labels[x] == labels[y]`.
    pub fn from_labels<T: Ord>(labels: &[T]) -> Self {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&x, &y| labels[x].cmp(&labels[y]).then(x.cmp(&y)));
        let mut reps = vec![0; labels.len()];
        let mut i = 0;
        while i < order.len() {
            let first = order[i];
            let mut j = i;
            while j < order.len() && labels[order[j]] == labels[first] {
                reps[order[j]] = first;
                j += 1;
            }
            i = j;
        }
        Partition { reps }
    }

    /// Checks canonical form: every element points at the least element of
    /// its block.
    pub fn from_representatives(reps: Vec<usize>) -> Result<Self> {
        let n = reps.len();
        for (x, &r) in reps.iter().enumerate() {
            if r >= n {
                return Err(Error::ElementOutOfRange {
                    element: r,
                    size: n,
                });
            }
            if r > x || reps[r] != r {
                return Err(Error::PartitionSyntax(String::from(
                    "representatives are not canonical",
                )));
            }
        }
        Ok(Partition { reps })
    }

    pub fn size(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    #[inline]
    pub fn representative(&self, x: usize) -> usize {
        self.reps[x]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.reps[x] == self.reps[y]
    }

    pub fn block_count(&self) -> usize {
        self.reps
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .count()
    }

    pub fn is_bottom(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_top(&self) -> bool {
        self.reps.iter().all(|&r| r == 0)
    }

    /// Blocks ordered by least element, elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.size()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &r) in self.reps.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(x);
        }
        blocks
    }

    /// Block containing `x`.
    pub fn block_of(&self, x: usize) -> Vec<usize> {
        let r = self.reps[x];
        (0..self.size()).filter(|&y| self.reps[y] == r).collect()
    }

    /// Pairs `(x, y)` with `x < y` in the same block.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |x| {
            (x + 1..n)
                .filter(move |&y| self.reps[x] == self.reps[y])
                .map(move |y| (x, y))
        })
    }

    fn same_size(&self, other: &Partition) -> Result<()> {
        if self.size() == other.size() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            })
        }
    }

    /// Least partition above both: transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_size(other)?;
        let mut uf = UnionFind::from_partition(self);
        for (x, &r) in other.reps.iter().enumerate() {
            uf.union(x, r);
        }
        Ok(uf.into_partition())
    }

    /// Blockwise intersection.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_size(other)?;
        let labels: Vec<(usize, usize)> = self
            .reps
            .iter()
            .zip(&other.reps)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Refinement order: every block of `self` lies inside a block of
    /// `other`.
    pub fn leq(&self, other: &Partition) -> bool {
        self.size() == other.size()
            && self
                .reps
                .iter()
                .enumerate()
                .all(|(x, &r)| other.reps[x] == other.reps[r])
    }

    pub fn strictly_below(&self, other: &Partition) -> bool {
        self != other && self.leq(other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for block in self.blocks() {
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "|")?;
        }
        Ok(())
    }
}

/// Accepts whitespace anywhere. The blocks must cover `{0, …, n−1}`
/// exactly once, in any order.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('|')
            .and_then(|t| t.strip_suffix('|'))
            .ok_or_else(|| Error::PartitionSyntax(String::from("expected |…| delimiters")))?;
        if inner.is_empty() {
            return Err(Error::PartitionSyntax(String::from("no blocks")));
        }
        let mut blocks = Vec::new();
        for block in inner.split('|') {
            if block.is_empty() {
                return Err(Error::PartitionSyntax(String::from("empty block")));
            }
            let mut elems = Vec::new();
            for item in block.split(',') {
                let x: usize = item
                    .parse()
                    .map_err(|_| Error::PartitionSyntax(item.to_string()))?;
                elems.push(x);
            }
            blocks.push(elems);
        }
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut label = vec![usize::MAX; n];
        for (b, elems) in blocks.iter().enumerate() {
            for &x in elems {
                if x >= n {
                    return Err(Error::ElementOutOfRange {
                        element: x,
                        size: n,
                    });
                }
                if label[x] != usize::MAX {
                    return Err(Error::PartitionSyntax(alloc::format!("{x} appears twice")));
                }
                label[x] = b;
            }
        }
        Ok(Partition::from_labels(&label))
    }
}
