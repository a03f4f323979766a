//! Type tests for prime quotients.
//!
//! The variety of an idempotent algebra omits the unary type exactly when
//! no 2-generated subalgebra has a 2-element quotient on which every basic
//! operation is a projection.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::FiniteAlgebra;
use crate::commutator::{is_abelian_over, CommutatorMethod, TaylorToken};
use crate::congruence::{all_congruences, generate_in, is_congruence};
use crate::partition::Partition;
use crate::{Error, Result};

/// A 2-element set-like quotient of `Sg(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOneWitness {
    pub pair: (usize, usize),
    /// `Sg(a, b)` in ascending order.
    pub subalgebra: Vec<usize>,
    /// Congruence on the subalgebra, indexed by position in `subalgebra`.
    pub theta: Partition,
    /// The two classes, as elements of the original algebra.
    pub classes: [Vec<usize>; 2],
}

impl fmt::Display for TypeOneWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "type 1: Sg({},{}) = {:?} has set-like quotient {:?} / {:?}",
            self.pair.0, self.pair.1, self.subalgebra, self.classes[0], self.classes[1]
        )
    }
}

/// Every basic operation of a 2-element algebra is a projection.
fn all_projections(q: &FiniteAlgebra) -> bool {
    q.operations().iter().all(|op| {
        let k = op.arity();
        (0..k).any(|i| {
            op.entries()
                .iter()
                .enumerate()
                .all(|(idx, &val)| val == (idx >> (k - 1 - i)) & 1)
        })
    })
}

/// The lexicographically least pair whose subalgebra has a set-like
/// 2-element quotient.
pub fn type_one_witness(alg: &FiniteAlgebra) -> Result<Option<TypeOneWitness>> {
    alg.require_idempotent()?;
    let n = alg.size();
    for a in 0..n {
        for b in a + 1..n {
            let sub = alg.generate_subalgebra(&[a, b])?;
            let elements = sub.elements().to_vec();
            let b_alg = alg.induced(&elements)?;
            for theta in all_congruences(&b_alg) {
                if theta.block_count() != 2 {
                    continue;
                }
                let (q, _) = b_alg.quotient(&theta)?;
                if all_projections(&q) {
                    let blocks = theta.blocks();
                    let lift = |blk: &Vec<usize>| blk.iter().map(|&i| elements[i]).collect();
                    return Ok(Some(TypeOneWitness {
                        pair: (a, b),
                        classes: [lift(&blocks[0]), lift(&blocks[1])],
                        subalgebra: elements,
                        theta,
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn omits_type_one(alg: &FiniteAlgebra) -> Result<bool> {
    Ok(type_one_witness(alg)?.is_none())
}

/// Issues the capability for the fast commutator when the variety of
/// `alg` omits the unary type.
pub fn taylor_token(alg: &FiniteAlgebra) -> Result<Option<TaylorToken>> {
    Ok(if omits_type_one(alg)? {
        Some(TaylorToken::new())
    } else {
        None
    })
}

/// Fast commutator when the unary type is omitted, matrices otherwise.
pub fn preferred_method(alg: &FiniteAlgebra) -> Result<CommutatorMethod> {
    Ok(match taylor_token(alg)? {
        Some(t) => CommutatorMethod::Fast(t),
        None => CommutatorMethod::Matrices,
    })
}

/// `α ≺ β`: every pair of β outside α generates β together with α.
pub fn is_prime_quotient(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Result<bool> {
    for p in [alpha, beta] {
        if !is_congruence(alg, p)? {
            return Err(Error::NotACongruence);
        }
    }
    if !alpha.strictly_below(beta) {
        return Ok(false);
    }
    let seed: Vec<(usize, usize)> = alpha
        .representatives()
        .iter()
        .enumerate()
        .map(|(x, &r)| (x, r))
        .collect();
    for (c, d) in beta.pairs() {
        if alpha.related(c, d) {
            continue;
        }
        let mut pairs = seed.clone();
        pairs.push((c, d));
        if &generate_in(alg, pairs) != beta {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Type 2 of `⟨α, β⟩` once the unary type is known to be omitted:
/// `[β, β] ≤ α`.
pub fn prime_quotient_is_type2(
    alg: &FiniteAlgebra,
    alpha: &Partition,
    beta: &Partition,
    method: CommutatorMethod,
) -> Result<bool> {
    if !is_prime_quotient(alg, alpha, beta)? {
        return Err(Error::NotPrimeQuotient);
    }
    is_abelian_over(alg, beta, alpha, method)
}
