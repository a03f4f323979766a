use alloc::string::String;
use core::fmt;

use crate::decision::LabeledTriple;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An algebra needs at least one element.
    EmptyUniverse,
    /// A table does not hold `size^arity` entries.
    TableLength {
        operation: String,
        expected: usize,
        found: usize,
    },
    /// An element code is outside `[0, size)`.
    ElementOutOfRange { element: usize, size: usize },
    /// No operation with this index.
    UnknownOperation(usize),
    /// Argument count differs from the operation's arity.
    ArityMismatch { expected: usize, found: usize },
    /// Two structures of different sizes were combined.
    SizeMismatch { left: usize, right: usize },
    /// The procedure is only defined for idempotent algebras.
    NotIdempotent,
    /// A partition is not compatible with the operations.
    NotACongruence,
    /// The subset handed to an induced-algebra constructor is not closed.
    NotClosed,
    /// The pair of congruences does not form a prime quotient `α ≺ β`.
    NotPrimeQuotient,
    /// The transitive-closure commutator was requested without first
    /// establishing omission of the unary type, or for a mixed pair.
    FastCommutatorUnavailable,
    /// A term references a generator that was not supplied.
    GeneratorOutOfRange { index: usize, available: usize },
    /// Generation needs at least one generator.
    NoGenerators,
    /// The pair of labeled triples admits no local difference term
    /// operation, so the algebra has no difference term operation.
    NoLocalDifferenceTerm {
        zero: LabeledTriple,
        one: LabeledTriple,
    },
    /// Clone enumeration grew past the configured number of tables.
    CloneCapExceeded(usize),
    /// Malformed partition text.
    PartitionSyntax(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyUniverse => write!(f, "universe must have at least one element"),
            Error::TableLength {
                operation,
                expected,
                found,
            } => write!(
                f,
                "operation {operation}: expected {expected} entries, found {found}"
            ),
            Error::ElementOutOfRange { element, size } => {
                write!(f, "element {element} out of range for size {size}")
            }
            Error::UnknownOperation(op) => write!(f, "no operation with index {op}"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} arguments, got {found}")
            }
            Error::SizeMismatch { left, right } => {
                write!(f, "size mismatch: {left} vs {right}")
            }
            Error::NotIdempotent => write!(f, "algebra is not idempotent"),
            Error::NotACongruence => write!(f, "partition is not a congruence"),
            Error::NotClosed => write!(f, "subset is not closed under the operations"),
            Error::NotPrimeQuotient => write!(f, "congruences do not form a prime quotient"),
            Error::FastCommutatorUnavailable => write!(
                f,
                "fast commutator needs omission of type 1 and a symmetric pair [β,β]"
            ),
            Error::GeneratorOutOfRange { index, available } => write!(
                f,
                "term uses generator {index} but only {available} supplied"
            ),
            Error::NoGenerators => write!(f, "generator list is empty"),
            Error::NoLocalDifferenceTerm { zero, one } => {
                write!(f, "no local difference term operation for {zero}, {one}")
            }
            Error::CloneCapExceeded(cap) => {
                write!(f, "clone enumeration exceeded {cap} tables")
            }
            Error::PartitionSyntax(msg) => write!(f, "bad partition: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
