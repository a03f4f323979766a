//! Finite algebras as dense operation tables.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::partition::Partition;
use crate::{Error, Result};

mod closure;
mod subproduct;
mod term;

pub use closure::Subuniverse;
pub(crate) use closure::{close, ElementIndex};
pub use subproduct::{generate_subproduct, SubProduct, SubproductOutcome};
pub(crate) use subproduct::{search_square, subproduct_carrier};
pub use term::{witness_to_ternary_table, TermDag, TermNode};

/// Anything that can evaluate finitary operations on `{0, …, size−1}`.
///
/// Implemented by [`FiniteAlgebra`] (table lookup) and by [`Power`], a lazy
/// view of a direct power that evaluates coordinatewise without
/// materializing the product tables.
pub trait Operations {
    fn size(&self) -> usize;
    fn operation_count(&self) -> usize;
    fn arity(&self, op: usize) -> usize;
    /// Evaluates operation `op`. Arguments must be in range and match the
    /// arity; this is not checked.
    fn eval(&self, op: usize, args: &[usize]) -> usize;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationTable {
    name: String,
    arity: usize,
    entries: Vec<usize>,
}

impl OperationTable {
    pub fn new(name: impl Into<String>, arity: usize, entries: Vec<usize>) -> Self {
        OperationTable {
            name: name.into(),
            arity,
            entries,
        }
    }

    /// Builds the table of `f` on a universe of `size` elements.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        size: usize,
        mut f: impl FnMut(&[usize]) -> usize,
    ) -> Self {
        let mut entries = Vec::with_capacity(size.pow(arity as u32));
        let mut args = vec![0; arity];
        for_each_tuple(size, &mut args, |args| entries.push(f(args)));
        OperationTable::new(name, arity, entries)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}

/// Visits every tuple of `[0, size)^len` in row-major order.
pub(crate) fn for_each_tuple(size: usize, buf: &mut [usize], mut f: impl FnMut(&[usize])) {
    buf.iter_mut().for_each(|x| *x = 0);
    if size == 0 && !buf.is_empty() {
        return;
    }
    loop {
        f(buf);
        let mut i = buf.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            buf[i] += 1;
            if buf[i] < size {
                break;
            }
            buf[i] = 0;
        }
    }
}

#[inline]
fn row_major_index(size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &x| acc * size + x)
}

/// A finite algebra on `{0, …, size−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    size: usize,
    operations: Vec<OperationTable>,
}

impl FiniteAlgebra {
    /// Validates table lengths and entry ranges.
    pub fn new(
        name: impl Into<String>,
        size: usize,
        operations: Vec<OperationTable>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        for op in &operations {
            let expected = checked_power(size, op.arity).ok_or_else(|| Error::TableLength {
                operation: op.name.clone(),
                expected: usize::MAX,
                found: op.entries.len(),
            })?;
            if op.entries.len() != expected {
                return Err(Error::TableLength {
                    operation: op.name.clone(),
                    expected,
                    found: op.entries.len(),
                });
            }
            if let Some(&bad) = op.entries.iter().find(|&&e| e >= size) {
                return Err(Error::ElementOutOfRange { element: bad, size });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            size,
            operations,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn operations(&self) -> &[OperationTable] {
        &self.operations
    }

    pub fn max_arity(&self) -> usize {
        self.operations.iter().map(|o| o.arity).max().unwrap_or(0)
    }

    /// Checked application of a basic operation.
    pub fn apply(&self, op: usize, args: &[usize]) -> Result<usize> {
        let table = self.operations.get(op).ok_or(Error::UnknownOperation(op))?;
        if args.len() != table.arity {
            return Err(Error::ArityMismatch {
                expected: table.arity,
                found: args.len(),
            });
        }
        self.check_elements(args)?;
        Ok(table.entries[row_major_index(self.size, args)])
    }

    pub(crate) fn check_elements(&self, elems: &[usize]) -> Result<()> {
        match elems.iter().find(|&&e| e >= self.size) {
            Some(&element) => Err(Error::ElementOutOfRange {
                element,
                size: self.size,
            }),
            None => Ok(()),
        }
    }

    /// `f(x, …, x) = x` for every operation and element. A constant is
    /// idempotent only on a one-element universe.
    pub fn is_idempotent(&self) -> bool {
        self.operations.iter().all(|op| {
            (0..self.size).all(|x| {
                let idx = (0..op.arity).fold(0, |acc, _| acc * self.size + x);
                op.entries[idx] == x
            })
        })
    }

    pub(crate) fn require_idempotent(&self) -> Result<()> {
        if self.is_idempotent() {
            Ok(())
        } else {
            Err(Error::NotIdempotent)
        }
    }

    /// `A²` with pair `(p, q)` encoded as `p·n + q`.
    pub fn direct_square(&self) -> FiniteAlgebra {
        let square = Power::new(self, 2);
        let all: Vec<usize> = (0..square.size()).collect();
        FiniteAlgebra::induced_from(&square, format!("{}^2", self.name), &all)
            .expect("a full power is closed")
    }

    /// Induced algebra on a closed subset of `view`. The i-th element of
    /// the new algebra is `elements[i]`.
    pub fn induced_from<S: Operations + ?Sized>(
        view: &S,
        name: impl Into<String>,
        elements: &[usize],
    ) -> Result<FiniteAlgebra> {
        let index = ElementIndex::from_elements(view.size(), elements);
        let m = elements.len();
        let mut operations = Vec::with_capacity(view.operation_count());
        let mut codes = Vec::new();
        for op in 0..view.operation_count() {
            let arity = view.arity(op);
            let mut entries = Vec::with_capacity(m.pow(arity as u32));
            let mut positions = vec![0; arity];
            let mut closed = true;
            for_each_tuple(m, &mut positions, |pos| {
                codes.clear();
                codes.extend(pos.iter().map(|&p| elements[p]));
                match index.get(view.eval(op, &codes)) {
                    Some(i) => entries.push(i),
                    None => {
                        closed = false;
                        entries.push(0);
                    }
                }
            });
            if !closed {
                return Err(Error::NotClosed);
            }
            operations.push(OperationTable::new(format!("f{op}"), arity, entries));
        }
        FiniteAlgebra::new(name, m, operations)
    }

    /// The subalgebra induced on a closed subset, keeping operation names.
    pub fn induced(&self, elements: &[usize]) -> Result<FiniteAlgebra> {
        self.check_elements(elements)?;
        let mut sub = FiniteAlgebra::induced_from(self, self.name.clone(), elements)?;
        sub.copy_names_from(self);
        Ok(sub)
    }

    pub(crate) fn copy_names_from(&mut self, other: &FiniteAlgebra) {
        for (mine, theirs) in self.operations.iter_mut().zip(&other.operations) {
            mine.name = theirs.name.clone();
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `A/θ`. Classes are numbered by ascending least element; the
    /// returned map sends each element to its class.
    pub fn quotient(&self, theta: &Partition) -> Result<(FiniteAlgebra, Vec<usize>)> {
        if !crate::congruence::is_congruence(self, theta)? {
            return Err(Error::NotACongruence);
        }
        let reps: Vec<usize> = (0..self.size)
            .filter(|&x| theta.representative(x) == x)
            .collect();
        let class_of: Vec<usize> = (0..self.size)
            .map(|x| {
                reps.binary_search(&theta.representative(x))
                    .expect("representative is a block minimum")
            })
            .collect();
        let k = reps.len();
        let mut operations = Vec::with_capacity(self.operations.len());
        let mut codes = Vec::new();
        for op in &self.operations {
            let mut entries = Vec::with_capacity(k.pow(op.arity as u32));
            let mut pos = vec![0; op.arity];
            for_each_tuple(k, &mut pos, |pos| {
                codes.clear();
                codes.extend(pos.iter().map(|&c| reps[c]));
                entries.push(class_of[op.entries[row_major_index(self.size, &codes)]]);
            });
            operations.push(OperationTable::new(op.name.clone(), op.arity, entries));
        }
        let q = FiniteAlgebra::new(format!("{}/θ", self.name), k, operations)?;
        Ok((q, class_of))
    }

    /// `Sg(generators)` with a term witness for every element.
    pub fn generate_subalgebra(&self, generators: &[usize]) -> Result<Subuniverse> {
        self.check_elements(generators)?;
        Subuniverse::generate(self, generators)
    }
}

impl Operations for FiniteAlgebra {
    fn size(&self) -> usize {
        self.size
    }

    fn operation_count(&self) -> usize {
        self.operations.len()
    }

    fn arity(&self, op: usize) -> usize {
        self.operations[op].arity
    }

    #[inline]
    fn eval(&self, op: usize, args: &[usize]) -> usize {
        self.operations[op].entries[row_major_index(self.size, args)]
    }
}

fn checked_power(base: usize, exp: usize) -> Option<usize> {
    base.checked_pow(u32::try_from(exp).ok()?)
}

/// Lazy direct power `S^exponent`. A tuple `(c₀, …, c_{e−1})` is encoded as
/// `Σ cᵢ·n^(e−1−i)`, so the first coordinate is most significant.
pub struct Power<'a, S: ?Sized> {
    base: &'a S,
    exponent: usize,
    size: usize,
}

impl<'a, S: Operations + ?Sized> Power<'a, S> {
    pub fn new(base: &'a S, exponent: usize) -> Self {
        let size = checked_power(base.size(), exponent).expect("power too large");
        Power {
            base,
            exponent,
            size,
        }
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        row_major_index(self.base.size(), coords)
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        let n = self.base.size();
        let mut out = vec![0; self.exponent];
        for slot in out.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        out
    }
}

impl<S: Operations + ?Sized> Operations for Power<'_, S> {
    fn size(&self) -> usize {
        self.size
    }

    fn operation_count(&self) -> usize {
        self.base.operation_count()
    }

    fn arity(&self, op: usize) -> usize {
        self.base.arity(op)
    }

    fn eval(&self, op: usize, args: &[usize]) -> usize {
        let n = self.base.size();
        let k = args.len();
        let mut stack = [0usize; 8];
        let mut heap;
        let coords: &mut [usize] = if k <= stack.len() {
            &mut stack[..k]
        } else {
            heap = vec![0; k];
            &mut heap
        };
        let mut divisor = self.size;
        let mut result = 0;
        for _ in 0..self.exponent {
            divisor /= n;
            for (c, &a) in coords.iter_mut().zip(args) {
                *c = (a / divisor) % n;
            }
            result = result * n + self.base.eval(op, coords);
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn apply_reads_ndt4_table() {
        let a = fixtures::ndt4();
        assert_eq!(a.apply(0, &[0, 1]).unwrap(), 2);
        assert_eq!(a.apply(0, &[3, 3]).unwrap(), 3);
        assert_eq!(a.apply(0, &[3, 1]).unwrap(), 0);
    }

    #[test]
    fn apply_rejects_bad_input() {
        let a = fixtures::ndt4();
        assert_eq!(a.apply(1, &[0, 0]), Err(Error::UnknownOperation(1)));
        assert_eq!(
            a.apply(0, &[0]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            a.apply(0, &[0, 4]),
            Err(Error::ElementOutOfRange {
                element: 4,
                size: 4
            })
        );
    }

    #[test]
    fn construction_validates_tables() {
        let bad = OperationTable::new("f", 2, vec![0, 1, 1]);
        assert!(matches!(
            FiniteAlgebra::new("x", 2, vec![bad]),
            Err(Error::TableLength {
                expected: 4,
                found: 3,
                ..
            })
        ));
        let out_of_range = OperationTable::new("f", 1, vec![0, 2]);
        assert!(FiniteAlgebra::new("x", 2, vec![out_of_range]).is_err());
        assert_eq!(
            FiniteAlgebra::new("x", 0, vec![]),
            Err(Error::EmptyUniverse)
        );
    }

    #[test]
    fn idempotence() {
        assert!(fixtures::ndt4().is_idempotent());
        assert!(fixtures::sl2().is_idempotent());
        assert!(fixtures::mal2().is_idempotent());
        let constant =
            FiniteAlgebra::new("c", 2, vec![OperationTable::new("k", 1, vec![0, 0])]).unwrap();
        assert!(!constant.is_idempotent());
        let nullary =
            FiniteAlgebra::new("c", 2, vec![OperationTable::new("k", 0, vec![0])]).unwrap();
        assert!(!nullary.is_idempotent());
        let trivial =
            FiniteAlgebra::new("c", 1, vec![OperationTable::new("k", 0, vec![0])]).unwrap();
        assert!(trivial.is_idempotent());
    }

    #[test]
    fn square_is_coordinatewise() {
        let sl = fixtures::sl2().direct_square();
        assert_eq!(sl.size(), 4);
        // (1,0) ∧ (0,1) = (0,0)
        assert_eq!(sl.apply(0, &[2, 1]).unwrap(), 0);
        let mal = fixtures::mal2().direct_square();
        // m((0,0),(1,0),(1,1)) = (0,1)
        assert_eq!(mal.apply(0, &[0, 2, 3]).unwrap(), 1);
        assert_eq!(fixtures::ndt4().direct_square().size(), 16);
    }

    #[test]
    fn power_view_matches_materialized_square() {
        let a = fixtures::ndt4();
        let sq = a.direct_square();
        let view = Power::new(&a, 2);
        for x in 0..16 {
            for y in 0..16 {
                assert_eq!(view.eval(0, &[x, y]), sq.eval(0, &[x, y]));
            }
        }
        assert_eq!(view.decode(view.encode(&[3, 1])), vec![3, 1]);
    }

    #[test]
    fn quotient_by_bottom_and_top() {
        let a = fixtures::ndt4();
        let (q, map) = a.quotient(&Partition::bottom(4)).unwrap();
        assert_eq!(q.operations()[0].entries(), a.operations()[0].entries());
        assert_eq!(map, vec![0, 1, 2, 3]);
        let (q, map) = a.quotient(&Partition::top(4)).unwrap();
        assert_eq!(q.size(), 1);
        assert_eq!(map, vec![0; 4]);
    }

    #[test]
    fn quotient_of_square_by_projection_kernel() {
        let sq = fixtures::sl2().direct_square();
        // pairs (p,q) ↦ p·2+q; kernel of the first projection groups {0,1}, {2,3}
        let theta: Partition = "|0,1|2,3|".parse().unwrap();
        let (q, map) = sq.quotient(&theta).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(
            q.operations()[0].entries(),
            fixtures::sl2().operations()[0].entries()
        );
        assert_eq!(map, vec![0, 0, 1, 1]);
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        let a = fixtures::ndt4();
        let p: Partition = "|0,1,2|3|".parse().unwrap();
        assert_eq!(a.quotient(&p).unwrap_err(), Error::NotACongruence);
    }

    #[test]
    fn induced_rejects_open_subset() {
        let a = fixtures::ndt4();
        assert_eq!(a.induced(&[1, 2]).unwrap_err(), Error::NotClosed);
        let sub = a.induced(&[0, 1, 2]).unwrap();
        assert_eq!(sub.size(), 3);
        assert_eq!(sub.apply(0, &[1, 2]).unwrap(), 0);
    }
}
