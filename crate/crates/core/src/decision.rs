//! Decision procedures.
//!
//! * [`has_dto`]: does the algebra have a difference term operation? Checks
//!   a local difference term operation for every mixed pair of labeled
//!   triples.
//! * [`variety_has_dt_pentagon`]: the variety test by the three pentagon
//!   conditions.
//! * [`variety_has_dt_local`]: the variety test by running [`has_dto`] on
//!   every 3-generated subalgebra of `A²`.
//!
//! Every search runs in lexicographic order, so certificates are
//! deterministic.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{search_square, subproduct_carrier, FiniteAlgebra, SubProduct, TermDag};
use crate::commutator::{self_commutator, CommutatorMethod, TaylorToken};
use crate::congruence::{generate_in, kernel_of_projection, lift_congruence, lower_cover_of};
use crate::construct::TernaryTable;
use crate::partition::Partition;
use crate::tct::{preferred_method, type_one_witness, TypeOneWitness};
use crate::{Error, Result};

/// An element `(a, b, flag)` of `A² × {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledTriple {
    pub a: usize,
    pub b: usize,
    pub flag: u8,
}

impl LabeledTriple {
    pub fn new(a: usize, b: usize, flag: u8) -> Self {
        LabeledTriple { a, b, flag }
    }
}

impl fmt::Display for LabeledTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.flag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The variety admits the unary type.
    TypeOne(TypeOneWitness),
    /// Condition (2) fails at `(a, b, c)`.
    ConditionTwo { a: usize, b: usize, c: usize },
    /// Condition (3) fails for `B = Sg((x0,x1), (y0,x1), (x0,y1))`.
    ConditionThree {
        x0: usize,
        x1: usize,
        y0: usize,
        y1: usize,
    },
    /// No local difference term operation for this pair.
    FailingPair {
        zero: LabeledTriple,
        one: LabeledTriple,
    },
    /// A 3-generated subalgebra of `A²` without a difference term
    /// operation. `zero` and `one` index into `carrier`.
    FailingSubalgebra {
        generators: [(usize, usize); 3],
        carrier: Vec<(usize, usize)>,
        zero: LabeledTriple,
        one: LabeledTriple,
    },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::TypeOne(w) => write!(f, "{w}"),
            Certificate::ConditionTwo { a, b, c } => {
                write!(f, "condition 2 fails at a={a} b={b} c={c}")
            }
            Certificate::ConditionThree { x0, x1, y0, y1 } => write!(
                f,
                "condition 3 fails at x0={x0} x1={x1} y0={y0} y1={y1}: Sg(({x0},{x1}),({y0},{x1}),({x0},{y1})) has an abelian prime quotient"
            ),
            Certificate::FailingPair { zero, one } => {
                write!(f, "no local difference term operation for {zero} and {one}")
            }
            Certificate::FailingSubalgebra {
                generators,
                carrier,
                zero,
                one,
            } => {
                let [g, h, k] = generators;
                write!(
                    f,
                    "Sg(({},{}),({},{}),({},{})) = {{",
                    g.0, g.1, h.0, h.1, k.0, k.1
                )?;
                for (i, p) in carrier.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "({},{})", p.0, p.1)?;
                }
                let label = |t: &LabeledTriple| {
                    let (p, q) = (carrier[t.a], carrier[t.b]);
                    alloc::format!("(({},{}),({},{}),{})", p.0, p.1, q.0, q.1, t.flag)
                };
                write!(
                    f,
                    "}} has no difference term operation: no local one for {} and {}",
                    label(zero),
                    label(one)
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No(Certificate),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Yes => None,
            Verdict::No(c) => Some(c),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No(_) => write!(f, "no"),
        }
    }
}

/// Searches for local difference term operations in one algebra, caching
/// `θ_ab = Cg(a, b)` and `[θ_ab, θ_ab]` per distinct θ.
pub struct LocalSearch<'a> {
    alg: &'a FiniteAlgebra,
    method: CommutatorMethod,
    by_pair: Vec<Option<usize>>,
    deltas: Vec<Partition>,
    by_theta: BTreeMap<Partition, usize>,
}

impl<'a> LocalSearch<'a> {
    /// Picks the commutator method from the unary-type test.
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self> {
        alg.require_idempotent()?;
        let method = preferred_method(alg)?;
        Ok(Self::with_method(alg, method))
    }

    /// `method` must be valid for `alg`; a fast method needs a token for a
    /// variety containing it.
    pub fn with_method(alg: &'a FiniteAlgebra, method: CommutatorMethod) -> Self {
        let n = alg.size();
        LocalSearch {
            alg,
            method,
            by_pair: vec![None; n * n],
            deltas: Vec::new(),
            by_theta: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    /// `[θ_ab, θ_ab]`.
    pub fn delta(&mut self, a: usize, b: usize) -> &Partition {
        let n = self.alg.size();
        let slot = a * n + b;
        if self.by_pair[slot].is_none() {
            let theta = generate_in(self.alg, [(a, b)]);
            let idx = match self.by_theta.get(&theta) {
                Some(&i) => i,
                None => {
                    let d = self_commutator(self.alg, &theta, self.method);
                    self.deltas.push(d);
                    self.by_theta.insert(theta, self.deltas.len() - 1);
                    self.deltas.len() - 1
                }
            };
            self.by_pair[slot] = Some(idx);
        }
        &self.deltas[self.by_pair[slot].expect("filled")]
    }

    /// A term `t` with `t(a, b, b) δ a` when `t0` has flag 0 and
    /// `t(a', a', b') = b'` when `t1` has flag 1. Generators 0, 1, 2 stand
    /// for `x, y, z`.
    pub fn witness(&mut self, t0: LabeledTriple, t1: LabeledTriple) -> Result<Option<TermDag>> {
        self.alg.check_elements(&[t0.a, t0.b, t1.a, t1.b])?;
        let (t0, t1) = match (t0.flag, t1.flag) {
            (0, 0) => return Ok(Some(TermDag::generator(0))),
            (1, 1) => return Ok(Some(TermDag::generator(2))),
            (0, 1) => (t0, t1),
            (1, 0) => (t1, t0),
            _ => {
                return Err(Error::ElementOutOfRange {
                    element: usize::from(t0.flag.max(t1.flag)),
                    size: 2,
                })
            }
        };
        let (a, b, a2, b2) = (t0.a, t0.b, t1.a, t1.b);
        let delta = self.delta(a, b).clone();
        let stop = |p: usize, q: usize| q == b2 && delta.related(p, a);
        let hit = search_square(self.alg, &[(a, a2), (b, a2), (b, b2)], &stop)?;
        Ok(hit.map(|(_, w)| w))
    }
}

/// Local difference term operation for a pair of labeled triples, with the
/// commutator method chosen from the unary-type test.
pub fn pair_has_ldto(
    alg: &FiniteAlgebra,
    t0: LabeledTriple,
    t1: LabeledTriple,
) -> Result<Option<TermDag>> {
    LocalSearch::new(alg)?.witness(t0, t1)
}

/// A local difference term operation found for one mixed pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub zero: LabeledTriple,
    pub one: LabeledTriple,
    pub term: TermDag,
}

/// Runs every mixed pair in lexicographic order of `(a, b, a', b')`.
/// `keep` decides whether witnesses are collected.
fn scan_pairs(
    search: &mut LocalSearch<'_>,
    mut keep: Option<&mut Vec<PairWitness>>,
) -> Result<Verdict> {
    let n = search.algebra().size();
    for a in 0..n {
        for b in 0..n {
            for a2 in 0..n {
                for b2 in 0..n {
                    let zero = LabeledTriple::new(a, b, 0);
                    let one = LabeledTriple::new(a2, b2, 1);
                    match search.witness(zero, one)? {
                        Some(term) => {
                            if let Some(out) = keep.as_mut() {
                                out.push(PairWitness { zero, one, term });
                            }
                        }
                        None => return Ok(Verdict::No(Certificate::FailingPair { zero, one })),
                    }
                }
            }
        }
    }
    Ok(Verdict::Yes)
}

/// Whether `alg` has a difference term operation.
pub fn has_dto(alg: &FiniteAlgebra) -> Result<Verdict> {
    alg.require_idempotent()?;
    if alg.size() == 1 {
        return Ok(Verdict::Yes);
    }
    scan_pairs(&mut LocalSearch::new(alg)?, None)
}

/// [`has_dto`] with a fixed commutator method.
pub fn has_dto_with(alg: &FiniteAlgebra, method: CommutatorMethod) -> Result<Verdict> {
    alg.require_idempotent()?;
    if alg.size() == 1 {
        return Ok(Verdict::Yes);
    }
    scan_pairs(&mut LocalSearch::with_method(alg, method), None)
}

/// [`has_dto`] that also returns the term found for every mixed pair.
pub fn has_dto_witnesses(alg: &FiniteAlgebra) -> Result<(Verdict, Vec<PairWitness>)> {
    alg.require_idempotent()?;
    let mut out = Vec::new();
    let verdict = scan_pairs(&mut LocalSearch::new(alg)?, Some(&mut out))?;
    Ok((verdict, out))
}

/// Condition (2) at `(a, b, c)`: `β = Cg^B(a, b)` is join irreducible with
/// lower cover α, `[β, β] ≤ α`, and `((a,b),(b,b))` lies outside
/// `(α₀ ∧ α₁) ∨ Cg^C((a,c),(b,c))`.
pub fn condition_two_violated(
    alg: &FiniteAlgebra,
    a: usize,
    b: usize,
    c: usize,
    method: CommutatorMethod,
) -> Result<bool> {
    alg.check_elements(&[a, b, c])?;
    if a == b {
        return Ok(false);
    }
    let sub = alg.generate_subalgebra(&[a, b, c])?;
    let elements = sub.elements();
    let b_alg = alg.induced(elements)?;
    let pos = |x: usize| elements.binary_search(&x).expect("generator");
    let (ia, ib, ic) = (pos(a), pos(b), pos(c));
    let beta = generate_in(&b_alg, [(ia, ib)]);
    let Some(alpha) = lower_cover_of(&b_alg, &beta, ia, ib) else {
        return Ok(false);
    };
    if !self_commutator(&b_alg, &beta, method).leq(&alpha) {
        return Ok(false);
    }
    let mut gens = vec![(ia, ib), (ia, ic), (ib, ic)];
    gens.extend((0..b_alg.size()).map(|x| (x, x)));
    let c_sub = SubProduct::generate(&b_alg, &gens)?;
    let idx = |p: (usize, usize)| c_sub.index_of(p).expect("generated");
    let lower = lift_congruence(&c_sub, &alpha, 0)?.meet(&lift_congruence(&c_sub, &alpha, 1)?)?;
    let cg = generate_in(c_sub.algebra(), [(idx((ia, ic)), idx((ib, ic)))]);
    let joined = lower.join(&cg)?;
    Ok(!joined.related(idx((ia, ib)), idx((ib, ib))))
}

/// Condition (3) at `(x0, x1, y0, y1)` on
/// `B = Sg((x0,x1), (y0,x1), (x0,y1))`: `β = Cg(0, 1)` is join irreducible
/// with lower cover α, `ρ₀ ∨ α = 1_B`, and `[β, β] ≤ α`.
pub fn condition_three_violated(
    alg: &FiniteAlgebra,
    x0: usize,
    x1: usize,
    y0: usize,
    y1: usize,
    method: CommutatorMethod,
) -> Result<bool> {
    alg.check_elements(&[x0, x1, y0, y1])?;
    if x0 == y0 {
        return Ok(false);
    }
    let b_sub = SubProduct::generate(alg, &[(x0, x1), (y0, x1), (x0, y1)])?;
    let b_alg = b_sub.algebra();
    let zero = b_sub.index_of((x0, x1)).expect("generator");
    let one = b_sub.index_of((y0, x1)).expect("generator");
    let beta = generate_in(b_alg, [(zero, one)]);
    let Some(alpha) = lower_cover_of(b_alg, &beta, zero, one) else {
        return Ok(false);
    };
    if !kernel_of_projection(&b_sub, 0).join(&alpha)?.is_top() {
        return Ok(false);
    }
    Ok(self_commutator(b_alg, &beta, method).leq(&alpha))
}

/// The variety test by the pentagon conditions, checked in the order
/// (1), (2), (3).
pub fn variety_has_dt_pentagon(alg: &FiniteAlgebra) -> Result<Verdict> {
    alg.require_idempotent()?;
    let n = alg.size();
    if n == 1 {
        return Ok(Verdict::Yes);
    }
    if let Some(w) = type_one_witness(alg)? {
        return Ok(Verdict::No(Certificate::TypeOne(w)));
    }
    let method = CommutatorMethod::Fast(TaylorToken::new());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if condition_two_violated(alg, a, b, c, method)? {
                    return Ok(Verdict::No(Certificate::ConditionTwo { a, b, c }));
                }
            }
        }
    }
    for x0 in 0..n {
        for x1 in 0..n {
            for y0 in 0..n {
                for y1 in 0..n {
                    if condition_three_violated(alg, x0, x1, y0, y1, method)? {
                        return Ok(Verdict::No(Certificate::ConditionThree { x0, x1, y0, y1 }));
                    }
                }
            }
        }
    }
    Ok(Verdict::Yes)
}

/// Whether `Sg^{A²}(generators)` has a difference term operation, with the
/// certificate the local method would report for it.
pub fn subproduct_verdict(
    alg: &FiniteAlgebra,
    generators: [(usize, usize); 3],
    method: CommutatorMethod,
) -> Result<Verdict> {
    let s = SubProduct::generate(alg, &generators)?;
    Ok(match has_dto_with(s.algebra(), method)? {
        Verdict::Yes => Verdict::Yes,
        Verdict::No(Certificate::FailingPair { zero, one }) => {
            Verdict::No(Certificate::FailingSubalgebra {
                generators,
                carrier: s.carrier().to_vec(),
                zero,
                one,
            })
        }
        Verdict::No(other) => Verdict::No(other),
    })
}

/// The variety test via 3-generated subalgebras of `A²`.
///
/// Generator multisets run in lexicographic order of their pair codes and
/// repeated carriers are skipped. When the unary type occurs, the
/// diagonal copy of the offending 2-generated subalgebra is checked first:
/// it has a set-like quotient and therefore no difference term operation.
pub fn variety_has_dt_local(alg: &FiniteAlgebra) -> Result<Verdict> {
    alg.require_idempotent()?;
    let n = alg.size();
    if n == 1 {
        return Ok(Verdict::Yes);
    }
    let method = match type_one_witness(alg)? {
        Some(w) => {
            let (a, b) = w.pair;
            let gens = [(a, a), (b, b), (b, b)];
            let verdict = subproduct_verdict(alg, gens, CommutatorMethod::Matrices)?;
            if !verdict.is_yes() {
                return Ok(verdict);
            }
            CommutatorMethod::Matrices
        }
        None => CommutatorMethod::Fast(TaylorToken::new()),
    };
    let codes = n * n;
    let pair = |c: usize| (c / n, c % n);
    let mut seen = BTreeSet::new();
    for g1 in 0..codes {
        for g2 in g1..codes {
            for g3 in g2..codes {
                let gens = [pair(g1), pair(g2), pair(g3)];
                let carrier = subproduct_carrier(alg, &gens)?;
                if !seen.insert(carrier) {
                    continue;
                }
                let verdict = subproduct_verdict(alg, gens, method)?;
                if !verdict.is_yes() {
                    return Ok(verdict);
                }
            }
        }
    }
    Ok(Verdict::Yes)
}

/// Every distinct 3-generated subalgebra of `A²` without a difference term
/// operation, each with the certificate of its first generator multiset.
/// Requires the unary type to be omitted.
pub fn failing_subalgebras(alg: &FiniteAlgebra) -> Result<Vec<Certificate>> {
    alg.require_idempotent()?;
    let Some(token) = crate::tct::taylor_token(alg)? else {
        return Err(Error::FastCommutatorUnavailable);
    };
    let n = alg.size();
    let codes = n * n;
    let pair = |c: usize| (c / n, c % n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g1 in 0..codes {
        for g2 in g1..codes {
            for g3 in g2..codes {
                let gens = [pair(g1), pair(g2), pair(g3)];
                if !seen.insert(subproduct_carrier(alg, &gens)?) {
                    continue;
                }
                if let Verdict::No(c) =
                    subproduct_verdict(alg, gens, CommutatorMethod::Fast(token))?
                {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// All ternary term operations, as tables, up to `cap` of them.
pub fn enumerate_ternary_clone(alg: &FiniteAlgebra, cap: usize) -> Result<Vec<TernaryTable>> {
    let n = alg.size();
    let mut tables: Vec<Vec<usize>> = (0..3)
        .map(|i| TernaryTable::projection(n, i).entries().to_vec())
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = tables.iter().cloned().collect();
    if seen.len() > cap {
        return Err(Error::CloneCapExceeded(cap));
    }
    let points = n * n * n;
    let mut start = 0;
    let mut args = Vec::new();
    let mut first = true;
    loop {
        let end = tables.len();
        if start == end && !first {
            break;
        }
        for op in alg.operations() {
            let k = op.arity();
            if k == 0 {
                if first {
                    let c = op.entries()[0];
                    let t = vec![c; points];
                    if seen.insert(t.clone()) {
                        tables.push(t);
                    }
                }
                continue;
            }
            let mut idx = vec![0; k];
            'tuples: loop {
                if idx.iter().any(|&i| i >= start) {
                    let t: Vec<usize> = (0..points)
                        .map(|p| {
                            args.clear();
                            args.extend(idx.iter().map(|&i| tables[i][p]));
                            let row = args.iter().fold(0, |acc, &x| acc * n + x);
                            op.entries()[row]
                        })
                        .collect();
                    if seen.insert(t.clone()) {
                        if seen.len() > cap {
                            return Err(Error::CloneCapExceeded(cap));
                        }
                        tables.push(t);
                    }
                }
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'tuples;
                    }
                    i -= 1;
                    idx[i] += 1;
                    if idx[i] < end {
                        break;
                    }
                    idx[i] = 0;
                }
            }
        }
        first = false;
        start = end;
    }
    seen.into_iter()
        .map(|entries| TernaryTable::from_entries(n, entries))
        .collect()
}
