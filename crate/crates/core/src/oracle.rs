//! Brute-force reference implementations for tests.
//!
//! Nothing here shares code with the procedures it checks beyond the
//! table types: congruences come from filtering every partition, closures
//! from subset search or naive fixpoints, commutators from testing the term
//! condition against every congruence.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FiniteAlgebra, OperationTable};
use crate::construct::TernaryTable;
use crate::decision::enumerate_ternary_clone;
use crate::partition::Partition;

/// Every partition of `{0, …, n−1}`, from restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == labels.len() {
            out.push(Partition::from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, out);
        }
    }
    if n == 0 {
        return out;
    }
    rec(1, 0, &mut labels, &mut out);
    out
}

fn index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &x| acc * n + x)
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t2 = t.clone();
                    t2.push(x);
                    t2
                })
            })
            .collect();
    }
    out
}

/// Compatibility by comparing every pair of related argument tuples.
pub fn naive_is_congruence(alg: &FiniteAlgebra, p: &Partition) -> bool {
    let n = alg.size();
    alg.operations().iter().all(|op| {
        let all = tuples(n, op.arity());
        all.iter().all(|xs| {
            all.iter().all(|ys| {
                !xs.iter().zip(ys).all(|(&x, &y)| p.related(x, y))
                    || p.related(op.entries()[index(n, xs)], op.entries()[index(n, ys)])
            })
        })
    })
}

pub fn brute_congruences(alg: &FiniteAlgebra) -> Vec<Partition> {
    all_partitions(alg.size())
        .into_iter()
        .filter(|p| naive_is_congruence(alg, p))
        .collect()
}

/// Meet of every congruence containing all `pairs`.
pub fn brute_generated(
    alg: &FiniteAlgebra,
    cons: &[Partition],
    pairs: &[(usize, usize)],
) -> Partition {
    cons.iter()
        .filter(|p| pairs.iter().all(|&(a, b)| p.related(a, b)))
        .fold(Partition::top(alg.size()), |acc, p| {
            acc.meet(p).expect("same size")
        })
}

pub fn brute_principal(alg: &FiniteAlgebra, a: usize, b: usize) -> Partition {
    brute_generated(alg, &brute_congruences(alg), &[(a, b)])
}

/// Smallest closed subset containing the generators, by checking every
/// subset. Only for small universes.
pub fn brute_subuniverse(alg: &FiniteAlgebra, generators: &[usize]) -> Vec<usize> {
    let n = alg.size();
    assert!(n <= 16);
    let gen_mask = generators.iter().fold(0u32, |m, &g| m | (1 << g));
    let closed = |mask: u32| {
        alg.operations().iter().all(|op| {
            tuples(n, op.arity()).iter().all(|xs| {
                !xs.iter().all(|&x| mask >> x & 1 == 1)
                    || mask >> op.entries()[index(n, xs)] & 1 == 1
            })
        })
    };
    let mut best: Option<u32> = None;
    for mask in 0u32..(1 << n) {
        if mask & gen_mask == gen_mask
            && closed(mask)
            && best.is_none_or(|b| mask.count_ones() < b.count_ones())
        {
            best = Some(mask);
        }
    }
    let best = best.expect("the full universe is closed");
    (0..n).filter(|&x| best >> x & 1 == 1).collect()
}

/// `M(α, β)` by naive fixpoint over sets of quadruples.
pub fn brute_m(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> BTreeSet<[usize; 4]> {
    let n = alg.size();
    let mut set = BTreeSet::new();
    for a in 0..n {
        for a2 in 0..n {
            if alpha.related(a, a2) {
                set.insert([a, a, a2, a2]);
            }
            if beta.related(a, a2) {
                set.insert([a, a2, a, a2]);
            }
        }
    }
    loop {
        let current: Vec<[usize; 4]> = set.iter().copied().collect();
        let mut grew = false;
        for op in alg.operations() {
            let k = op.arity();
            for choice in tuples(current.len(), k) {
                let mut q = [0; 4];
                for (c, slot) in q.iter_mut().enumerate() {
                    let args: Vec<usize> = choice.iter().map(|&i| current[i][c]).collect();
                    *slot = op.entries()[index(n, &args)];
                }
                grew |= set.insert(q);
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Least congruence δ with `x δ y ⇒ u δ v` for every matrix of `M(α, β)`.
pub fn brute_commutator(alg: &FiniteAlgebra, alpha: &Partition, beta: &Partition) -> Partition {
    let m = brute_m(alg, alpha, beta);
    brute_congruences(alg)
        .into_iter()
        .filter(|d| {
            m.iter()
                .all(|q| !d.related(q[0], q[1]) || d.related(q[2], q[3]))
        })
        .fold(Partition::top(alg.size()), |acc, p| {
            acc.meet(&p).expect("same size")
        })
}

/// The difference term condition for `d`, with every ingredient from this
/// module.
pub fn brute_is_dt_table(alg: &FiniteAlgebra, d: &TernaryTable) -> bool {
    let n = alg.size();
    let cons = brute_congruences(alg);
    (0..n).all(|a| {
        (0..n).all(|b| {
            let theta = brute_generated(alg, &cons, &[(a, b)]);
            d.get(a, a, b) == b && brute_commutator(alg, &theta, &theta).related(a, d.get(a, b, b))
        })
    })
}

/// Whether some ternary term operation satisfies the difference term
/// condition.
pub fn brute_has_dto(alg: &FiniteAlgebra, cap: usize) -> bool {
    enumerate_ternary_clone(alg, cap)
        .expect("clone within cap")
        .iter()
        .any(|d| brute_is_dt_table(alg, d))
}

/// Every idempotent binary operation on `n` elements, as algebras.
pub fn all_idempotent_binary(n: usize) -> Vec<FiniteAlgebra> {
    let off: Vec<usize> = (0..n * n).filter(|&i| i / n != i % n).collect();
    let count = n.pow(off.len() as u32);
    (0..count)
        .map(|mut code| {
            let mut entries: Vec<usize> = (0..n * n).map(|i| i / n).collect();
            for &i in &off {
                entries[i] = code % n;
                code /= n;
            }
            FiniteAlgebra::new(
                alloc::format!("B{n}"),
                n,
                vec![OperationTable::new("f", 2, entries)],
            )
            .expect("valid table")
        })
        .collect()
}

/// Every algebra with two idempotent binary operations on `n` elements.
pub fn all_idempotent_binary_pairs(n: usize) -> Vec<FiniteAlgebra> {
    let singles = all_idempotent_binary(n);
    let mut out = Vec::new();
    for f in &singles {
        for g in &singles {
            let ops = vec![
                OperationTable::new("f", 2, f.operations()[0].entries().to_vec()),
                OperationTable::new("g", 2, g.operations()[0].entries().to_vec()),
            ];
            out.push(FiniteAlgebra::new(alloc::format!("BB{n}"), n, ops).expect("valid tables"));
        }
    }
    out
}

/// An idempotent binary algebra whose off-diagonal entries come from
/// `pick(n)`, which must return values below `n`.
pub fn random_idempotent_binary(n: usize, mut pick: impl FnMut(usize) -> usize) -> FiniteAlgebra {
    let entries = (0..n * n)
        .map(|i| if i / n == i % n { i / n } else { pick(n) })
        .collect();
    FiniteAlgebra::new(
        alloc::format!("R{n}"),
        n,
        vec![OperationTable::new("f", 2, entries)],
    )
    .expect("valid table")
}
