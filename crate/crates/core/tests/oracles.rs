use std::collections::BTreeSet;

use diffterm_core::commutator::{commutator_fast, commutator_matrices, m_closure};
use diffterm_core::congruence::{all_congruences, principal_congruence};
use diffterm_core::construct::verify_dt_table;
use diffterm_core::decision::{enumerate_ternary_clone, has_dto};
use diffterm_core::oracle::*;
use diffterm_core::tct::taylor_token;
use diffterm_core::{fixtures, FiniteAlgebra, Partition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_corpus() -> Vec<FiniteAlgebra> {
    fixtures::corpus()
        .into_iter()
        .filter(|a| a.size() <= 4)
        .collect()
}

fn random_algebras(count: usize, max_size: usize, seed: u64) -> Vec<FiniteAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_size);
            random_idempotent_binary(n, |k| rng.gen_range(0..k))
        })
        .collect()
}

#[test]
fn closure_matches_subset_search() {
    for a in small_corpus() {
        let n = a.size();
        for g in 0..n {
            for h in g..n {
                let fast = a.generate_subalgebra(&[g, h]).unwrap();
                assert_eq!(
                    fast.elements(),
                    brute_subuniverse(&a, &[g, h]),
                    "{}",
                    a.name()
                );
            }
        }
    }
    for a in all_idempotent_binary(3) {
        for g in 0..3 {
            for h in 0..3 {
                let fast = a.generate_subalgebra(&[g, h]).unwrap();
                assert_eq!(fast.elements(), brute_subuniverse(&a, &[g, h]));
            }
        }
    }
}

#[test]
fn principal_congruences_match_exhaustive_minimum() {
    let mut algebras = small_corpus();
    algebras.extend(all_idempotent_binary(3));
    algebras.extend(random_algebras(40, 4, 11));
    for a in &algebras {
        let cons = brute_congruences(a);
        for x in 0..a.size() {
            for y in 0..a.size() {
                assert_eq!(
                    principal_congruence(a, x, y).unwrap(),
                    brute_generated(a, &cons, &[(x, y)]),
                    "{} Cg({x},{y})",
                    a.name()
                );
            }
        }
    }
}

#[test]
fn congruence_lattices_match_exhaustive_filter() {
    let mut algebras = small_corpus();
    algebras.extend(random_algebras(40, 4, 12));
    for a in &algebras {
        let fast: BTreeSet<Partition> = all_congruences(a).into_iter().collect();
        let brute: BTreeSet<Partition> = brute_congruences(a).into_iter().collect();
        assert_eq!(fast, brute, "{}", a.name());
    }
}

#[test]
fn matrix_closure_matches_naive_fixpoint() {
    for a in small_corpus().into_iter().filter(|a| a.size() <= 3) {
        for alpha in all_congruences(&a) {
            for beta in all_congruences(&a) {
                let fast: BTreeSet<[usize; 4]> = m_closure(&a, &alpha, &beta)
                    .unwrap()
                    .into_iter()
                    .map(|q| [q.x, q.y, q.u, q.v])
                    .collect();
                assert_eq!(fast, brute_m(&a, &alpha, &beta), "{}", a.name());
            }
        }
    }
}

#[test]
fn matrix_commutator_matches_term_condition() {
    let mut algebras = small_corpus();
    algebras.extend(random_algebras(30, 3, 13));
    for a in &algebras {
        let cons = all_congruences(a);
        for alpha in &cons {
            for beta in &cons {
                assert_eq!(
                    commutator_matrices(a, alpha, beta).unwrap(),
                    brute_commutator(a, alpha, beta),
                    "{} [{alpha},{beta}]",
                    a.name()
                );
            }
        }
    }
}

#[test]
fn fast_commutator_matches_matrices() {
    let check = |a: &FiniteAlgebra| -> bool {
        let Some(token) = taylor_token(a).unwrap() else {
            return false;
        };
        for beta in all_congruences(a) {
            assert_eq!(
                commutator_fast(a, &beta, &beta, &token).unwrap(),
                commutator_matrices(a, &beta, &beta).unwrap(),
                "{} {:?} [{beta},{beta}]",
                a.name(),
                a.operations()
            );
        }
        true
    };
    for a in small_corpus() {
        check(&a);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut random_checked = 0;
    while random_checked < 120 {
        let n = rng.gen_range(2..=4);
        let a = random_idempotent_binary(n, |k| rng.gen_range(0..k));
        if check(&a) {
            random_checked += 1;
        }
    }
}

fn dto_agrees_with_clone_search(a: &FiniteAlgebra) {
    let verdict = has_dto(a).unwrap().is_yes();
    let clone = enumerate_ternary_clone(a, 1 << 16).unwrap();
    let by_clone = clone
        .iter()
        .any(|d| verify_dt_table(a, d).unwrap().is_none());
    assert_eq!(verdict, by_clone, "{:?}", a.operations());
    assert_eq!(verdict, brute_has_dto(a, 1 << 16), "{:?}", a.operations());
}

#[test]
fn dto_oracle_on_two_elements() {
    for a in all_idempotent_binary(2) {
        dto_agrees_with_clone_search(&a);
    }
    for a in all_idempotent_binary_pairs(2) {
        dto_agrees_with_clone_search(&a);
    }
    for a in [
        fixtures::set2(),
        fixtures::sl2(),
        fixtures::mal2(),
        fixtures::lattice2(),
    ] {
        dto_agrees_with_clone_search(&a);
    }
}
