//! Cayley tables of difference term operations.
//!
//! [`ldto_table_for_pair`] turns the witness of one local search into a
//! table. [`stage_table`] composes `n²` of those into a local difference
//! term operation for `(a, b, 0)` and every flag-1 triple, and
//! [`build_dt_table`] composes `n²` stages into a difference term
//! operation. Composition works on tables, never on terms.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{witness_to_ternary_table, FiniteAlgebra};
use crate::commutator::CommutatorMethod;
use crate::decision::{LabeledTriple, LocalSearch};
use crate::{Error, Result};

/// `d[x, y, z]` stored at `x·n² + y·n + z`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryTable {
    size: usize,
    entries: Vec<usize>,
}

impl TernaryTable {
    pub fn from_entries(size: usize, entries: Vec<usize>) -> Result<Self> {
        let expected = size * size * size;
        if entries.len() != expected {
            return Err(Error::TableLength {
                operation: alloc::string::String::from("ternary table"),
                expected,
                found: entries.len(),
            });
        }
        if let Some(&element) = entries.iter().find(|&&e| e >= size) {
            return Err(Error::ElementOutOfRange { element, size });
        }
        Ok(TernaryTable { size, entries })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize, usize) -> usize) -> Self {
        let mut entries = Vec::with_capacity(size * size * size);
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    entries.push(f(x, y, z));
                }
            }
        }
        TernaryTable { size, entries }
    }

    /// Projection onto coordinate `i ∈ {0, 1, 2}`.
    pub fn projection(size: usize, i: usize) -> Self {
        TernaryTable::from_fn(size, |x, y, z| [x, y, z][i])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.entries[(x * self.size + y) * self.size + z]
    }

    pub fn has_idempotent_diagonal(&self) -> bool {
        (0..self.size).all(|x| self.get(x, x, x) == x)
    }
}

/// `(a₀, b₀), …, (a_{n²−1}, b_{n²−1})`: `A²` in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairEnumeration {
    size: usize,
}

impl PairEnumeration {
    pub fn new(size: usize) -> Self {
        PairEnumeration { size }
    }

    pub fn len(&self) -> usize {
        self.size * self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn get(&self, i: usize) -> (usize, usize) {
        (i / self.size, i % self.size)
    }

    pub fn index_of(&self, pair: (usize, usize)) -> usize {
        pair.0 * self.size + pair.1
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// Runs the three algorithms against one algebra and counts the local
/// searches made.
pub struct DtBuilder<'a> {
    search: LocalSearch<'a>,
    pairs: PairEnumeration,
    calls: usize,
}

impl<'a> DtBuilder<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self> {
        Ok(DtBuilder {
            pairs: PairEnumeration::new(alg.size()),
            search: LocalSearch::new(alg)?,
            calls: 0,
        })
    }

    /// Number of local searches so far.
    pub fn calls(&self) -> usize {
        self.calls
    }

    /// Table of a local difference term operation for `t0`, `t1`.
    pub fn ldto_table(&mut self, t0: LabeledTriple, t1: LabeledTriple) -> Result<TernaryTable> {
        self.calls += 1;
        match self.search.witness(t0, t1)? {
            Some(w) => witness_to_ternary_table(self.search.algebra(), &w),
            None => Err(Error::NoLocalDifferenceTerm { zero: t0, one: t1 }),
        }
    }

    /// A local difference term operation for `(a, b, 0)` and every
    /// `(c, d, 1)`.
    pub fn stage(&mut self, a: usize, b: usize) -> Result<TernaryTable> {
        let zero = LabeledTriple::new(a, b, 0);
        let (a0, b0) = self.pairs.get(0);
        let mut t = self.ldto_table(zero, LabeledTriple::new(a0, b0, 1))?;
        for i in 1..self.pairs.len() {
            let (ai, bi) = self.pairs.get(i);
            let s = self.ldto_table(zero, LabeledTriple::new(t.get(ai, ai, bi), bi, 1))?;
            t = TernaryTable::from_fn(t.size, |x, y, z| s.get(t.get(x, y, z), t.get(y, y, z), z));
        }
        Ok(t)
    }

    /// A difference term operation.
    pub fn build(&mut self) -> Result<TernaryTable> {
        let (a0, b0) = self.pairs.get(0);
        let mut d = self.stage(a0, b0)?;
        for k in 1..self.pairs.len() {
            let (ak, bk) = self.pairs.get(k);
            let next = self.stage(ak, d.get(ak, bk, bk))?;
            d = TernaryTable::from_fn(d.size, |x, y, z| {
                next.get(x, d.get(x, y, y), d.get(x, y, z))
            });
        }
        Ok(d)
    }
}

pub fn ldto_table_for_pair(
    alg: &FiniteAlgebra,
    t0: LabeledTriple,
    t1: LabeledTriple,
) -> Result<TernaryTable> {
    DtBuilder::new(alg)?.ldto_table(t0, t1)
}

pub fn stage_table(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<TernaryTable> {
    alg.check_elements(&[a, b])?;
    DtBuilder::new(alg)?.stage(a, b)
}

pub fn build_dt_table(alg: &FiniteAlgebra) -> Result<TernaryTable> {
    build_dt_table_counted(alg).map(|(t, _)| t)
}

/// Also returns the number of local searches.
pub fn build_dt_table_counted(alg: &FiniteAlgebra) -> Result<(TernaryTable, usize)> {
    let mut b = DtBuilder::new(alg)?;
    let t = b.build()?;
    Ok((t, b.calls()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `d(a, a, b) ≠ b`.
    Diagonal,
    /// `(a, d(a, b, b)) ∉ [θ_ab, θ_ab]`.
    Commutator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DtViolation {
    pub a: usize,
    pub b: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for DtViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.a, self.b);
        match self.kind {
            ViolationKind::Diagonal => write!(f, "violation at ({a},{b}): d({a},{a},{b}) != {b}"),
            ViolationKind::Commutator => write!(
                f,
                "violation at ({a},{b}): d({a},{b},{b}) not related to {a} modulo [Cg({a},{b}),Cg({a},{b})]"
            ),
        }
    }
}

/// First `(a, b)` in lexicographic order where `d` fails to be a
/// difference term operation, if any.
pub fn verify_dt_table(alg: &FiniteAlgebra, d: &TernaryTable) -> Result<Option<DtViolation>> {
    let mut search = LocalSearch::new(alg)?;
    verify_with(&mut search, d)
}

/// [`verify_dt_table`] with a fixed commutator method.
pub fn verify_dt_table_with(
    alg: &FiniteAlgebra,
    d: &TernaryTable,
    method: CommutatorMethod,
) -> Result<Option<DtViolation>> {
    alg.require_idempotent()?;
    verify_with(&mut LocalSearch::with_method(alg, method), d)
}

fn verify_with(search: &mut LocalSearch<'_>, d: &TernaryTable) -> Result<Option<DtViolation>> {
    let n = search.algebra().size();
    if d.size() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: d.size(),
        });
    }
    for a in 0..n {
        for b in 0..n {
            if d.get(a, a, b) != b {
                return Ok(Some(DtViolation {
                    a,
                    b,
                    kind: ViolationKind::Diagonal,
                }));
            }
            if !search.delta(a, b).related(a, d.get(a, b, b)) {
                return Ok(Some(DtViolation {
                    a,
                    b,
                    kind: ViolationKind::Commutator,
                }));
            }
        }
    }
    Ok(None)
}

/// Binary term operation `(x·y)·(y·x)` of a binary basic operation.
pub fn twisted_square(alg: &FiniteAlgebra, op: usize) -> Result<Vec<usize>> {
    let n = alg.size();
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let xy = alg.apply(op, &[x, y])?;
            let yx = alg.apply(op, &[y, x])?;
            out[x * n + y] = alg.apply(op, &[xy, yx])?;
        }
    }
    Ok(out)
}
