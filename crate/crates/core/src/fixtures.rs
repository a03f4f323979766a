//! Small algebras used as examples and in tests.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FiniteAlgebra, OperationTable};

fn binary(name: &str, n: usize, entries: Vec<usize>) -> FiniteAlgebra {
    FiniteAlgebra::new(name, n, vec![OperationTable::new("f", 2, entries)]).expect("valid fixture")
}

/// A simple idempotent groupoid on four elements whose variety has no
/// difference term although the projection `z` is a difference term
/// operation of the algebra itself.
pub fn ndt4() -> FiniteAlgebra {
    #[rustfmt::skip]
    let table = vec![
        0, 2, 1, 3,
        2, 1, 0, 3,
        1, 0, 2, 3,
        3, 0, 0, 3,
    ];
    FiniteAlgebra::new("NDT4", 4, vec![OperationTable::new("mul", 2, table)])
        .expect("valid fixture")
}

/// The 2-element meet semilattice.
pub fn sl2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "SL2",
        2,
        vec![OperationTable::new("meet", 2, vec![0, 0, 0, 1])],
    )
    .expect("valid fixture")
}

/// `({0,1}, x ⊕ y ⊕ z)`.
pub fn mal2() -> FiniteAlgebra {
    let m = OperationTable::from_fn("m", 3, 2, |a| a[0] ^ a[1] ^ a[2]);
    FiniteAlgebra::new("MAL2", 2, vec![m]).expect("valid fixture")
}

/// The 2-element set with its identity map.
pub fn set2() -> FiniteAlgebra {
    FiniteAlgebra::new("SET2", 2, vec![OperationTable::new("id", 1, vec![0, 1])])
        .expect("valid fixture")
}

/// One element, one binary operation.
pub fn trivial() -> FiniteAlgebra {
    binary("ONE", 1, vec![0])
}

/// Left-zero band `x·y = x`.
pub fn left_zero(n: usize) -> FiniteAlgebra {
    let t = OperationTable::from_fn("f", 2, n, |a| a[0]);
    FiniteAlgebra::new(alloc::format!("LZ{n}"), n, vec![t]).expect("valid fixture")
}

/// A non-idempotent algebra: the constant map to 0 on two elements.
pub fn constant_unary() -> FiniteAlgebra {
    FiniteAlgebra::new("CONST2", 2, vec![OperationTable::new("c", 1, vec![0, 0])])
        .expect("valid fixture")
}

/// The 2-element lattice.
pub fn lattice2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "LAT2",
        2,
        vec![
            OperationTable::new("meet", 2, vec![0, 0, 0, 1]),
            OperationTable::new("join", 2, vec![0, 1, 1, 1]),
        ],
    )
    .expect("valid fixture")
}

/// `x − y + z` over ℤ₃.
pub fn affine3() -> FiniteAlgebra {
    let m = OperationTable::from_fn("p", 3, 3, |a| (a[0] + 3 - a[1] + a[2]) % 3);
    FiniteAlgebra::new("AFF3", 3, vec![m]).expect("valid fixture")
}

/// Meet on the chain `0 < 1 < 2`.
pub fn chain3() -> FiniteAlgebra {
    let t = OperationTable::from_fn("meet", 2, 3, |a| a[0].min(a[1]));
    FiniteAlgebra::new("CH3", 3, vec![t]).expect("valid fixture")
}

/// Rock-paper-scissors: `x·y` is the winner of `x` and `y`.
pub fn rock_paper_scissors() -> FiniteAlgebra {
    #[rustfmt::skip]
    let table = vec![
        0, 1, 0,
        1, 1, 2,
        0, 2, 2,
    ];
    binary("RPS", 3, table)
}

/// Idempotent quasigroup `x·y = 2x + 2y` over ℤ₃.
pub fn squag3() -> FiniteAlgebra {
    let t = OperationTable::from_fn("f", 2, 3, |a| (2 * a[0] + 2 * a[1]) % 3);
    FiniteAlgebra::new("SQ3", 3, vec![t]).expect("valid fixture")
}

/// Idempotent fixtures, smallest first.
pub fn corpus() -> Vec<FiniteAlgebra> {
    vec![
        trivial(),
        sl2(),
        mal2(),
        set2(),
        lattice2(),
        left_zero(2),
        chain3(),
        affine3(),
        rock_paper_scissors(),
        squag3(),
        left_zero(3),
        ndt4(),
    ]
}

/// The binary operation on `n` elements with the given table, as a named
/// algebra.
pub fn from_binary_table(
    name: impl Into<String>,
    n: usize,
    entries: Vec<usize>,
) -> Option<FiniteAlgebra> {
    FiniteAlgebra::new(name, n, vec![OperationTable::new("f", 2, entries)]).ok()
}
