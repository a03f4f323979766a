//! Term-condition commutators.
//!
//! [`commutator_matrices`] closes the matrix algebra `M(α, β) ≤ A⁴` and
//! runs the δ-iteration on it. [`commutator_fast`] replaces `M(α, β)` by
//! the congruence Δ it generates on `A(α) = {(x, u) : x α u}`, which is
//! only sound for `[β, β]` in an algebra whose variety has a Taylor term.
//! That precondition is carried by [`TaylorToken`], which only
//! [`crate::tct::taylor_token`] hands out.

use alloc::vec::Vec;

use crate::algebra::{close, ElementIndex, FiniteAlgebra, Operations, Power};
use crate::congruence::{generate_in, is_congruence};
use crate::partition::{Partition, UnionFind};
use crate::{Error, Result};

/// Proof that the ambient variety omits the unary type. Valid for every
/// algebra in the variety generated by the algebra it was issued for, in
/// particular its subalgebras, subproducts and quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaylorToken {
    _sealed: (),
}

impl TaylorToken {
    pub(crate) fn new() -> Self {
        TaylorToken { _sealed: () }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommutatorMethod {
    Matrices,
    Fast(TaylorToken),
}

/// A 2×2 matrix with rows `(x, y)` and `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixQuad {
    pub x: usize,
    pub y: usize,
    pub u: usize,
    pub v: usize,
}

impl MatrixQuad {
    fn pack(&self, n: usize) -> usize {
        ((self.x * n + self.y) * n + self.u) * n + self.v
    }

    fn unpack(code: usize, n: usize) -> Self {
        MatrixQuad {
            x: code / (n * n * n),
            y: (code / (n * n)) % n,
            u: (code / n) % n,
            v: code % n,
        }
    }
}

fn check_pair(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<()> {
    for p in [alpha, beta] {
        if !is_congruence(alg, p)? {
            return Err(Error::NotACongruence);
        }
    }
    Ok(())
}

fn quad_codes(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Vec<usize> {
    let n = alg.size();
    let mut gens = Vec::new();
    for a in 0..n {
        for a2 in 0..n {
            if alpha.related(a, a2) {
                gens.push(
                    MatrixQuad {
                        x: a,
                        y: a,
                        u: a2,
                        v: a2,
                    }
                    .pack(n),
                );
            }
        }
    }
    for b in 0..n {
        for b2 in 0..n {
            if beta.related(b, b2) {
                gens.push(
                    MatrixQuad {
                        x: b,
                        y: b2,
                        u: b,
                        v: b2,
                    }
                    .pack(n),
                );
            }
        }
    }
    let closure = close(&Power::new(alg, 4), &gens, false, None);
    closure.sorted_elements()
}

/// `M(α, β)` in packed order.
pub fn m_closure(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Vec<MatrixQuad>> {
    check_pair(alg, alpha, beta)?;
    let n = alg.size();
    Ok(quad_codes(alg, alpha, beta)
        .into_iter()
        .map(|c| MatrixQuad::unpack(c, n))
        .collect())
}

/// `[α, β]` by δ-iteration over `M(α, β)`.
pub fn commutator_matrices(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<Partition> {
    commutator_matrices_with_rounds(alg, alpha, beta).map(|(p, _)| p)
}

/// Also reports how many δ's were computed, the confirming one included.
pub fn commutator_matrices_with_rounds(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> Result<(Partition, usize)> {
    check_pair(alg, alpha, beta)?;
    Ok(matrices_unchecked(alg, alpha, beta))
}

pub(crate) fn matrices_unchecked(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
) -> (Partition, usize) {
    let n = alg.size();
    let quads: Vec<MatrixQuad> = quad_codes(alg, alpha, beta)
        .into_iter()
        .map(|c| MatrixQuad::unpack(c, n))
        .collect();
    let mut delta = Partition::bottom(n);
    let mut rounds = 0;
    loop {
        rounds += 1;
        let next = generate_in(
            alg,
            quads
                .iter()
                .filter(|q| delta.related(q.x, q.y))
                .map(|q| (q.u, q.v)),
        );
        if next == delta {
            return (delta, rounds);
        }
        delta = next;
    }
}

/// The subalgebra `A(α) ≤ A²`, evaluated through the square without
/// materializing tables.
struct Restricted<'a> {
    square: Power<'a, FiniteAlgebra>,
    elements: Vec<usize>,
    index: ElementIndex,
}

impl Operations for Restricted<'_> {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn operation_count(&self) -> usize {
        self.square.operation_count()
    }

    fn arity(&self, op: usize) -> usize {
        self.square.arity(op)
    }

    fn eval(&self, op: usize, args: &[usize]) -> usize {
        let mut stack = [0usize; 8];
        let codes: Vec<usize>;
        let slice: &[usize] = if args.len() <= stack.len() {
            for (s, &a) in stack.iter_mut().zip(args) {
                *s = self.elements[a];
            }
            &stack[..args.len()]
        } else {
            codes = args.iter().map(|&a| self.elements[a]).collect();
            &codes
        };
        self.index
            .get(self.square.eval(op, slice))
            .expect("A(α) is closed")
    }
}

/// `[β, β]` through Δ. Rejects `α ≠ β`.
pub fn commutator_fast(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
    _token: &TaylorToken,
) -> Result<Partition> {
    if alpha != beta {
        return Err(Error::FastCommutatorUnavailable);
    }
    check_pair(alg, alpha, beta)?;
    Ok(fast_unchecked(alg, beta).0)
}

/// Fast `[β, β]` with its round count.
pub fn commutator_fast_with_rounds(
    alg: &FiniteAlgebra,
    beta: &Partition,
    _token: &TaylorToken,
) -> Result<(Partition, usize)> {
    check_pair(alg, beta, beta)?;
    Ok(fast_unchecked(alg, beta))
}

pub(crate) fn fast_unchecked(alg: &FiniteAlgebra, beta: &Partition) -> (Partition, usize) {
    let n = alg.size();
    let mut elements = Vec::new();
    for x in 0..n {
        for u in 0..n {
            if beta.related(x, u) {
                elements.push(x * n + u);
            }
        }
    }
    let index = ElementIndex::from_elements(n * n, &elements);
    let diagonal = |b: usize| index.get(b * n + b).expect("diagonal lies in A(β)");
    let seeds: Vec<(usize, usize)> = beta
        .pairs()
        .map(|(b, b2)| (diagonal(b), diagonal(b2)))
        .collect();
    let view = Restricted {
        square: Power::new(alg, 2),
        elements,
        index,
    };
    let big_delta = generate_in(&view, seeds);
    let classes = big_delta.blocks();

    let mut delta = Partition::bottom(n);
    let mut rounds = 0;
    let mut first_with = alloc::vec![usize::MAX; n];
    loop {
        rounds += 1;
        let mut uf = UnionFind::new(n);
        for class in &classes {
            // Columns (x, u), (y, v) in one Δ-class with x δ y force u ~ v;
            // chain every u whose x lies in the same δ-class.
            let mut touched = Vec::new();
            for &e in class {
                let code = view.elements[e];
                let (x, u) = (code / n, code % n);
                let r = delta.representative(x);
                if first_with[r] == usize::MAX {
                    first_with[r] = u;
                    touched.push(r);
                } else {
                    uf.union(first_with[r], u);
                }
            }
            for r in touched {
                first_with[r] = usize::MAX;
            }
        }
        let pairs: Vec<(usize, usize)> = {
            let p = uf.into_partition();
            p.representatives()
                .iter()
                .enumerate()
                .map(|(x, &r)| (x, r))
                .collect()
        };
        let next = generate_in(alg, pairs);
        if next == delta {
            return (delta, rounds);
        }
        delta = next;
    }
}

/// `[α, β]` by the chosen method. The fast method only takes `α = β`.
pub fn commutator(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
    method: CommutatorMethod,
) -> Result<Partition> {
    match method {
        CommutatorMethod::Matrices => commutator_matrices(alg, alpha, beta),
        CommutatorMethod::Fast(token) => commutator_fast(alg, alpha, beta, &token),
    }
}

/// Unchecked `[β, β]`.
pub(crate) fn self_commutator(
    alg: &FiniteAlgebra,
    beta: &Partition,
    method: CommutatorMethod,
) -> Partition {
    match method {
        CommutatorMethod::Matrices => matrices_unchecked(alg, beta, beta).0,
        CommutatorMethod::Fast(_) => fast_unchecked(alg, beta).0,
    }
}

/// `[β, β] ≤ α`.
pub fn is_abelian_over(
    alg: &FiniteAlgebra,
    beta: &Partition,
    alpha: &Partition,
    method: CommutatorMethod,
) -> Result<bool> {
    if !is_congruence(alg, alpha)? {
        return Err(Error::NotACongruence);
    }
    Ok(commutator(alg, beta, beta, method)?.leq(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn top(n: usize) -> Partition {
        Partition::top(n)
    }

    fn bot(n: usize) -> Partition {
        Partition::bottom(n)
    }

    #[test]
    fn bottom_rows_stay_equal() {
        let a = fixtures::ndt4();
        for q in m_closure(&a, &bot(4), &top(4)).unwrap() {
            assert_eq!((q.x, q.y), (q.u, q.v));
        }
        for q in m_closure(&a, &top(4), &bot(4)).unwrap() {
            assert_eq!((q.x, q.u), (q.y, q.v));
        }
    }

    #[test]
    fn sl2_matrix_from_meet() {
        let a = fixtures::sl2();
        let m = m_closure(&a, &top(2), &top(2)).unwrap();
        assert!(m.contains(&MatrixQuad {
            x: 0,
            y: 0,
            u: 0,
            v: 1
        }));
    }

    #[test]
    fn two_element_commutators() {
        let t = TaylorToken::new();
        let mal = fixtures::mal2();
        let sl = fixtures::sl2();
        assert!(commutator_matrices(&mal, &top(2), &top(2))
            .unwrap()
            .is_bottom());
        assert!(commutator_matrices(&sl, &top(2), &top(2)).unwrap().is_top());
        assert!(commutator_fast(&mal, &top(2), &top(2), &t)
            .unwrap()
            .is_bottom());
        assert!(commutator_fast(&sl, &top(2), &top(2), &t).unwrap().is_top());
        assert!(commutator_fast(&sl, &bot(2), &bot(2), &t)
            .unwrap()
            .is_bottom());
        assert!(commutator_matrices(&sl, &bot(2), &top(2))
            .unwrap()
            .is_bottom());
    }

    #[test]
    fn fast_rejects_mixed_pairs() {
        let t = TaylorToken::new();
        assert_eq!(
            commutator_fast(&fixtures::sl2(), &bot(2), &top(2), &t),
            Err(Error::FastCommutatorUnavailable)
        );
    }

    #[test]
    fn rejects_non_congruences() {
        let a = fixtures::ndt4();
        let p: Partition = "|0,1,2|3|".parse().unwrap();
        assert_eq!(commutator_matrices(&a, &p, &p), Err(Error::NotACongruence));
    }

    #[test]
    fn abelian_tests() {
        let m = CommutatorMethod::Matrices;
        assert!(is_abelian_over(&fixtures::mal2(), &top(2), &bot(2), m).unwrap());
        assert!(!is_abelian_over(&fixtures::sl2(), &top(2), &bot(2), m).unwrap());
        assert!(is_abelian_over(&fixtures::sl2(), &bot(2), &bot(2), m).unwrap());
    }

    #[test]
    fn round_counts_are_bounded() {
        for a in fixtures::corpus() {
            let n = a.size();
            let (_, r) = commutator_matrices_with_rounds(&a, &top(n), &top(n)).unwrap();
            assert!(r <= n, "{}: {r} rounds", a.name());
        }
    }
}
