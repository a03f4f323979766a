//! Congruences: compatibility checks, generation, join-irreducibility,
//! kernels and lifts on subproducts.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{for_each_tuple, FiniteAlgebra, Operations, SubProduct};
use crate::partition::{Partition, UnionFind};
use crate::{Error, Result};

fn check_size(alg: &FiniteAlgebra, p: &Partition) -> Result<()> {
    if p.size() == alg.size() {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            left: alg.size(),
            right: p.size(),
        })
    }
}

/// Single-coordinate substitution test: for every operation, tuple and
/// position, replacing the argument by a related element must give a
/// related value.
pub fn is_congruence(alg: &FiniteAlgebra, p: &Partition) -> Result<bool> {
    check_size(alg, p)?;
    let n = alg.size();
    let blocks = p.blocks();
    let mut changed = Vec::new();
    for op in 0..alg.operation_count() {
        let k = alg.arity(op);
        let mut args = vec![0; k];
        let mut ok = true;
        for_each_tuple(n, &mut args, |args| {
            if !ok {
                return;
            }
            let base = alg.eval(op, args);
            changed.clear();
            changed.extend_from_slice(args);
            for i in 0..k {
                let x = args[i];
                for &y in &blocks[block_index(p, &blocks, x)] {
                    if y == x {
                        continue;
                    }
                    changed[i] = y;
                    if !p.related(base, alg.eval(op, &changed)) {
                        ok = false;
                        return;
                    }
                }
                changed[i] = x;
            }
        });
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn block_index(p: &Partition, blocks: &[Vec<usize>], x: usize) -> usize {
    let r = p.representative(x);
    blocks
        .binary_search_by(|b| b[0].cmp(&r))
        .expect("blocks are ordered by least element")
}

/// Least congruence of `view` containing `pairs`. Each union pushes the two
/// former roots; every pushed pair is then moved through every basic
/// translation `f(c₁, …, _, …, c_k)`.
pub(crate) fn generate_in<S: Operations + ?Sized>(
    view: &S,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Partition {
    let mut uf = UnionFind::new(view.size());
    let mut work = Vec::new();
    for (a, b) in pairs {
        if let Some(merged) = uf.union(a, b) {
            work.push(merged);
        }
    }
    let n = view.size();
    let mut others = Vec::new();
    let mut args = Vec::new();
    while let Some((u, v)) = work.pop() {
        for op in 0..view.operation_count() {
            let k = view.arity(op);
            if k == 0 {
                continue;
            }
            others.clear();
            others.resize(k - 1, 0);
            for pos in 0..k {
                for_each_tuple(n, &mut others, |rest| {
                    args.clear();
                    args.extend_from_slice(&rest[..pos]);
                    args.push(u);
                    args.extend_from_slice(&rest[pos..]);
                    let fu = view.eval(op, &args);
                    args[pos] = v;
                    let fv = view.eval(op, &args);
                    if let Some(merged) = uf.union(fu, fv) {
                        work.push(merged);
                    }
                });
            }
        }
    }
    uf.into_partition()
}

/// `Cg(a, b)`.
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Partition> {
    alg.check_elements(&[a, b])?;
    Ok(generate_in(alg, [(a, b)]))
}

/// Least congruence containing every pair.
pub fn congruence_generated(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Result<Partition> {
    for &(a, b) in pairs {
        alg.check_elements(&[a, b])?;
    }
    Ok(generate_in(alg, pairs.iter().copied()))
}

/// When `β = Cg(a, b)` is join irreducible, returns its unique lower cover.
///
/// The candidate is the join of every `Cg(c, d)` with `(c, d) ∈ β` that
/// misses `(a, b)`. It contains every congruence strictly below β, so β is
/// join irreducible exactly when the candidate still misses `(a, b)`.
pub fn ji_lower_cover(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Option<Partition>> {
    alg.check_elements(&[a, b])?;
    if a == b {
        return Ok(None);
    }
    let beta = generate_in(alg, [(a, b)]);
    Ok(lower_cover_of(alg, &beta, a, b))
}

pub(crate) fn lower_cover_of(
    alg: &FiniteAlgebra,
    beta: &Partition,
    a: usize,
    b: usize,
) -> Option<Partition> {
    let mut alpha = Partition::bottom(alg.size());
    for (c, d) in beta.pairs() {
        if alpha.related(c, d) {
            continue;
        }
        let gamma = generate_in(alg, [(c, d)]);
        if !gamma.related(a, b) {
            alpha = alpha.join(&gamma).expect("same size");
        }
    }
    if alpha.related(a, b) {
        None
    } else {
        Some(alpha)
    }
}

/// Every congruence: the join closure of the principal congruences, with
/// bottom. Sorted by block count descending, ties by representative
/// arrays.
pub fn all_congruences(alg: &FiniteAlgebra) -> Vec<Partition> {
    let n = alg.size();
    let mut principal = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            principal.insert(generate_in(alg, [(a, b)]));
        }
    }
    let principal: Vec<Partition> = principal.into_iter().collect();
    let mut all: BTreeSet<Partition> = BTreeSet::new();
    all.insert(Partition::bottom(n));
    let mut frontier: Vec<Partition> = Vec::new();
    for p in &principal {
        if all.insert(p.clone()) {
            frontier.push(p.clone());
        }
    }
    while let Some(x) = frontier.pop() {
        for p in &principal {
            let j = x.join(p).expect("same size");
            if !all.contains(&j) {
                all.insert(j.clone());
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Partition> = all.into_iter().collect();
    out.sort_by(|x, y| y.block_count().cmp(&x.block_count()).then_with(|| x.cmp(y)));
    out
}

/// `ρ_coord`: carrier elements with equal chosen coordinate.
pub fn kernel_of_projection(s: &SubProduct, coord: usize) -> Partition {
    let labels: Vec<usize> = s
        .carrier()
        .iter()
        .map(|&(p, q)| if coord == 0 { p } else { q })
        .collect();
    Partition::from_labels(&labels)
}

/// `θ_coord`: carrier elements whose chosen coordinates are θ-related.
pub fn lift_congruence(s: &SubProduct, theta: &Partition, coord: usize) -> Result<Partition> {
    if theta.size() != s.factor_size() {
        return Err(Error::SizeMismatch {
            left: s.factor_size(),
            right: theta.size(),
        });
    }
    let labels: Vec<usize> = s
        .carrier()
        .iter()
        .map(|&(p, q)| theta.representative(if coord == 0 { p } else { q }))
        .collect();
    Ok(Partition::from_labels(&labels))
}
