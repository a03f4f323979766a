use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::closure::Origin;
use super::{FiniteAlgebra, Operations};
use crate::construct::TernaryTable;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermNode {
    /// Generator index, counted from zero.
    Generator(usize),
    /// Children point at earlier nodes of the same DAG.
    Apply { op: usize, children: Vec<usize> },
}

/// A term as a DAG over numbered generators. Nodes are stored in
/// topological order and the last node is the root, so shared subterms are
/// stored once.
#[derive(Debug, Clone)]
pub struct TermDag {
    nodes: Vec<TermNode>,
}

impl TermDag {
    pub fn generator(index: usize) -> Self {
        TermDag {
            nodes: vec![TermNode::Generator(index)],
        }
    }

    pub fn apply(op: usize, children: &[TermDag]) -> Self {
        let mut nodes = Vec::new();
        let mut roots = Vec::with_capacity(children.len());
        for child in children {
            let offset = nodes.len();
            nodes.extend(child.nodes.iter().map(|n| match n {
                TermNode::Generator(i) => TermNode::Generator(*i),
                TermNode::Apply { op, children } => TermNode::Apply {
                    op: *op,
                    children: children.iter().map(|c| c + offset).collect(),
                },
            }));
            roots.push(nodes.len() - 1);
        }
        nodes.push(TermNode::Apply {
            op,
            children: roots,
        });
        TermDag { nodes }
    }

    /// Extracts the sub-DAG reachable from generation position `root`.
    pub(crate) fn from_origins(origins: &[Origin], root: usize) -> Self {
        let mut reachable = vec![false; root + 1];
        reachable[root] = true;
        for pos in (0..=root).rev() {
            if !reachable[pos] {
                continue;
            }
            if let Origin::Apply { args, .. } = &origins[pos] {
                for &a in args {
                    reachable[a] = true;
                }
            }
        }
        let mut renumber = BTreeMap::new();
        let mut nodes = Vec::new();
        for pos in 0..=root {
            if !reachable[pos] {
                continue;
            }
            renumber.insert(pos, nodes.len());
            nodes.push(match &origins[pos] {
                Origin::Generator(i) => TermNode::Generator(*i),
                Origin::Apply { op, args } => TermNode::Apply {
                    op: *op,
                    children: args.iter().map(|a| renumber[a]).collect(),
                },
            });
        }
        TermDag { nodes }
    }

    pub fn nodes(&self) -> &[TermNode] {
        &self.nodes
    }

    pub fn root(&self) -> &TermNode {
        self.nodes.last().expect("a term has at least one node")
    }

    /// Largest generator index used.
    pub fn max_generator(&self) -> Option<usize> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                TermNode::Generator(i) => Some(*i),
                TermNode::Apply { .. } => None,
            })
            .max()
    }

    fn check_against<S: Operations + ?Sized>(&self, alg: &S, inputs: usize) -> Result<()> {
        for node in &self.nodes {
            match node {
                TermNode::Generator(i) if *i >= inputs => {
                    return Err(Error::GeneratorOutOfRange {
                        index: *i,
                        available: inputs,
                    })
                }
                TermNode::Apply { op, children } => {
                    if *op >= alg.operation_count() {
                        return Err(Error::UnknownOperation(*op));
                    }
                    if children.len() != alg.arity(*op) {
                        return Err(Error::ArityMismatch {
                            expected: alg.arity(*op),
                            found: children.len(),
                        });
                    }
                }
                TermNode::Generator(_) => {}
            }
        }
        Ok(())
    }

    /// Value of the term at `inputs`, each shared node computed once.
    pub fn evaluate<S: Operations + ?Sized>(&self, alg: &S, inputs: &[usize]) -> Result<usize> {
        self.check_against(alg, inputs.len())?;
        if let Some(&element) = inputs.iter().find(|&&x| x >= alg.size()) {
            return Err(Error::ElementOutOfRange {
                element,
                size: alg.size(),
            });
        }
        let mut values = Vec::with_capacity(self.nodes.len());
        let mut args = Vec::new();
        for node in &self.nodes {
            let v = match node {
                TermNode::Generator(i) => inputs[*i],
                TermNode::Apply { op, children } => {
                    args.clear();
                    args.extend(children.iter().map(|&c| values[c]));
                    alg.eval(*op, &args)
                }
            };
            values.push(v);
        }
        Ok(*values.last().expect("nonempty"))
    }

    fn eq_at(&self, i: usize, other: &TermDag, j: usize) -> bool {
        match (&self.nodes[i], &other.nodes[j]) {
            (TermNode::Generator(a), TermNode::Generator(b)) => a == b,
            (
                TermNode::Apply {
                    op: f,
                    children: xs,
                },
                TermNode::Apply {
                    op: g,
                    children: ys,
                },
            ) => {
                f == g
                    && xs.len() == ys.len()
                    && xs.iter().zip(ys).all(|(&x, &y)| self.eq_at(x, other, y))
            }
            _ => false,
        }
    }

    fn fmt_at(&self, i: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.nodes[i] {
            TermNode::Generator(g) => write!(f, "x{}", g + 1),
            TermNode::Apply { op, children } => {
                write!(f, "f{op}(")?;
                for (k, &c) in children.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    self.fmt_at(c, f)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Equality of the terms the DAGs denote, regardless of node layout.
impl PartialEq for TermDag {
    fn eq(&self, other: &Self) -> bool {
        self.eq_at(self.nodes.len() - 1, other, other.nodes.len() - 1)
    }
}

impl Eq for TermDag {}

/// Expanded term syntax: generators print as `x1, x2, …`, operation `i` as
/// `fi`.
impl fmt::Display for TermDag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(self.nodes.len() - 1, f)
    }
}

/// Table of the ternary term operation `w(x, y, z)` with generators 0, 1, 2
/// bound to `x`, `y`, `z`.
pub fn witness_to_ternary_table(alg: &FiniteAlgebra, w: &TermDag) -> Result<TernaryTable> {
    w.check_against(alg, 3)?;
    let n = alg.size();
    let points = n * n * n;
    let mut values: Vec<Vec<usize>> = Vec::with_capacity(w.nodes.len());
    let mut args = Vec::new();
    for node in &w.nodes {
        let column = match node {
            TermNode::Generator(g) => (0..points)
                .map(|p| match g {
                    0 => p / (n * n),
                    1 => (p / n) % n,
                    _ => p % n,
                })
                .collect(),
            TermNode::Apply { op, children } => (0..points)
                .map(|p| {
                    args.clear();
                    args.extend(children.iter().map(|&c| values[c][p]));
                    alg.eval(*op, &args)
                })
                .collect(),
        };
        values.push(column);
    }
    let entries = values.pop().expect("nonempty");
    Ok(TernaryTable::from_entries(n, entries).expect("entries lie in the universe"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::string::ToString;

    #[test]
    fn projection_table() {
        let a = fixtures::ndt4();
        let t = witness_to_ternary_table(&a, &TermDag::generator(2)).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    assert_eq!(t.get(x, y, z), z);
                }
            }
        }
    }

    #[test]
    fn maltsev_witness_table() {
        let a = fixtures::mal2();
        let w = TermDag::apply(
            0,
            &[
                TermDag::generator(0),
                TermDag::generator(1),
                TermDag::generator(2),
            ],
        );
        let t = witness_to_ternary_table(&a, &w).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    assert_eq!(t.get(x, y, z), x ^ y ^ z);
                }
            }
        }
    }

    #[test]
    fn idempotent_terms_have_idempotent_tables() {
        let a = fixtures::ndt4();
        let xy = TermDag::apply(0, &[TermDag::generator(0), TermDag::generator(1)]);
        let w = TermDag::apply(0, &[xy, TermDag::generator(2)]);
        let t = witness_to_ternary_table(&a, &w).unwrap();
        assert!((0..4).all(|x| t.get(x, x, x) == x));
    }

    #[test]
    fn generator_out_of_range() {
        let a = fixtures::sl2();
        assert_eq!(
            witness_to_ternary_table(&a, &TermDag::generator(3)).unwrap_err(),
            Error::GeneratorOutOfRange {
                index: 3,
                available: 3
            }
        );
    }

    #[test]
    fn display_and_equality() {
        let w = TermDag::apply(
            0,
            &[
                TermDag::generator(0),
                TermDag::generator(1),
                TermDag::generator(2),
            ],
        );
        assert_eq!(w.to_string(), "f0(x1,x2,x3)");
        assert_ne!(w, TermDag::generator(0));
        assert_eq!(w.max_generator(), Some(2));
    }
}
