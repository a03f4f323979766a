use alloc::format;
use alloc::vec::Vec;

use super::closure::{close, Closure, Origin};
use super::term::TermDag;
use super::{FiniteAlgebra, Power};
use crate::{Error, Result};

/// A subalgebra of `A × A`, every element labeled by its coordinate pair.
#[derive(Debug, Clone)]
pub struct SubProduct {
    factor_size: usize,
    generators: Vec<(usize, usize)>,
    carrier: Vec<(usize, usize)>,
    algebra: FiniteAlgebra,
    origins: Vec<Origin>,
    /// Carrier index to generation position.
    positions: Vec<usize>,
}

impl SubProduct {
    fn from_closure(
        parent: &FiniteAlgebra,
        generators: &[(usize, usize)],
        closure: Closure,
    ) -> Result<Self> {
        let n = parent.size();
        let square = Power::new(parent, 2);
        let sorted = closure.sorted_elements();
        let positions = sorted
            .iter()
            .map(|&code| closure.index.get(code).expect("generated"))
            .collect();
        let mut algebra =
            FiniteAlgebra::induced_from(&square, format!("Sg({})", parent.name()), &sorted)?;
        algebra.copy_names_from(parent);
        Ok(SubProduct {
            factor_size: n,
            generators: generators.to_vec(),
            carrier: sorted.iter().map(|&c| (c / n, c % n)).collect(),
            algebra,
            origins: closure.origins,
            positions,
        })
    }

    /// Size of the factor `A`.
    pub fn factor_size(&self) -> usize {
        self.factor_size
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    /// Carrier pairs in ascending order; carrier index `i` is element `i`
    /// of [`SubProduct::algebra`].
    pub fn carrier(&self) -> &[(usize, usize)] {
        &self.carrier
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.carrier.binary_search(&pair).ok()
    }

    /// Term producing the element at carrier index `index` from the
    /// generators.
    pub fn witness(&self, index: usize) -> TermDag {
        TermDag::from_origins(&self.origins, self.positions[index])
    }
}

#[derive(Debug, Clone)]
pub enum SubproductOutcome {
    /// The first generated pair accepted by the stop predicate.
    Hit {
        pair: (usize, usize),
        witness: TermDag,
    },
    /// Generation exhausted without a hit.
    Closed(SubProduct),
}

fn encode_generators(parent: &FiniteAlgebra, generators: &[(usize, usize)]) -> Result<Vec<usize>> {
    if generators.is_empty() {
        return Err(Error::NoGenerators);
    }
    let n = parent.size();
    generators
        .iter()
        .map(|&(p, q)| {
            parent.check_elements(&[p, q])?;
            Ok(p * n + q)
        })
        .collect()
}

/// `Sg^{A×A}(generators)`. With a stop predicate, generation halts at the
/// first pair (generators included, in order) that satisfies it.
pub fn generate_subproduct(
    parent: &FiniteAlgebra,
    generators: &[(usize, usize)],
    stop: Option<&dyn Fn(usize, usize) -> bool>,
) -> Result<SubproductOutcome> {
    let codes = encode_generators(parent, generators)?;
    let n = parent.size();
    let square = Power::new(parent, 2);
    let closure = match stop {
        Some(pred) => {
            let mut f = |c: usize| pred(c / n, c % n);
            close(&square, &codes, true, Some(&mut f))
        }
        None => close(&square, &codes, true, None),
    };
    if let Some(pos) = closure.hit {
        let code = closure.elements[pos];
        return Ok(SubproductOutcome::Hit {
            pair: (code / n, code % n),
            witness: closure.witness(pos),
        });
    }
    Ok(SubproductOutcome::Closed(SubProduct::from_closure(
        parent, generators, closure,
    )?))
}

/// Like [`generate_subproduct`] with a stop predicate, but skips building
/// the induced algebra when nothing is found.
pub(crate) fn search_square(
    parent: &FiniteAlgebra,
    generators: &[(usize, usize)],
    stop: &dyn Fn(usize, usize) -> bool,
) -> Result<Option<((usize, usize), TermDag)>> {
    let codes = encode_generators(parent, generators)?;
    let n = parent.size();
    let square = Power::new(parent, 2);
    let mut f = |c: usize| stop(c / n, c % n);
    let closure = close(&square, &codes, true, Some(&mut f));
    Ok(closure.hit.map(|pos| {
        let code = closure.elements[pos];
        ((code / n, code % n), closure.witness(pos))
    }))
}

/// The carrier of `Sg^{A×A}(generators)` as sorted pairs, no witnesses.
pub(crate) fn subproduct_carrier(
    parent: &FiniteAlgebra,
    generators: &[(usize, usize)],
) -> Result<Vec<(usize, usize)>> {
    let codes = encode_generators(parent, generators)?;
    let n = parent.size();
    let closure = close(&Power::new(parent, 2), &codes, false, None);
    Ok(closure
        .sorted_elements()
        .into_iter()
        .map(|c| (c / n, c % n))
        .collect())
}

impl SubProduct {
    /// The subproduct generated by `generators` without a stop predicate.
    pub fn generate(parent: &FiniteAlgebra, generators: &[(usize, usize)]) -> Result<SubProduct> {
        match generate_subproduct(parent, generators, None)? {
            SubproductOutcome::Closed(s) => Ok(s),
            SubproductOutcome::Hit { .. } => unreachable!("no stop predicate"),
        }
    }

    /// Whether the carrier is closed under the parent's operations applied
    /// coordinatewise.
    pub fn is_closed(&self, parent: &FiniteAlgebra) -> bool {
        let n = parent.size();
        let square = Power::new(parent, 2);
        let codes: Vec<usize> = self.carrier.iter().map(|&(p, q)| p * n + q).collect();
        FiniteAlgebra::induced_from(&square, "", &codes).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Operations;
    use crate::fixtures;

    #[test]
    fn sl2_hits_third_generator() {
        let a = fixtures::sl2();
        let stop = |p: usize, q: usize| p <= 1 && q == 1;
        let out = generate_subproduct(&a, &[(0, 0), (1, 0), (1, 1)], Some(&stop)).unwrap();
        match out {
            SubproductOutcome::Hit { pair, witness } => {
                assert_eq!(pair, (1, 1));
                assert_eq!(witness, TermDag::generator(2));
            }
            SubproductOutcome::Closed(_) => panic!("expected a hit"),
        }
    }

    #[test]
    fn mal2_hits_with_maltsev_application() {
        let a = fixtures::mal2();
        let stop = |p: usize, q: usize| (p, q) == (0, 1);
        let out = generate_subproduct(&a, &[(0, 0), (1, 0), (1, 1)], Some(&stop)).unwrap();
        let expected = TermDag::apply(
            0,
            &[
                TermDag::generator(0),
                TermDag::generator(1),
                TermDag::generator(2),
            ],
        );
        match out {
            SubproductOutcome::Hit { pair, witness } => {
                assert_eq!(pair, (0, 1));
                assert_eq!(witness, expected);
            }
            SubproductOutcome::Closed(_) => panic!("expected a hit"),
        }
    }

    #[test]
    fn set2_exhausts_without_hit() {
        let a = fixtures::set2();
        let stop = |p: usize, q: usize| (p, q) == (0, 1);
        match generate_subproduct(&a, &[(0, 0), (1, 0), (1, 1)], Some(&stop)).unwrap() {
            SubproductOutcome::Closed(s) => {
                assert_eq!(s.carrier(), &[(0, 0), (1, 0), (1, 1)]);
                assert!(s.is_closed(&a));
            }
            SubproductOutcome::Hit { .. } => panic!("SET2 generates nothing new"),
        }
    }

    #[test]
    fn witnesses_and_induced_tables_agree() {
        let a = fixtures::ndt4();
        let s = SubProduct::generate(&a, &[(0, 0), (1, 0), (0, 3)]).unwrap();
        let n = a.size();
        let gens: Vec<usize> = s.generators().iter().map(|&(p, q)| p * n + q).collect();
        let square = Power::new(&a, 2);
        for i in 0..s.len() {
            let (p, q) = s.carrier()[i];
            assert_eq!(s.witness(i).evaluate(&square, &gens).unwrap(), p * n + q);
        }
        for i in 0..s.len() {
            for j in 0..s.len() {
                let (p1, q1) = s.carrier()[i];
                let (p2, q2) = s.carrier()[j];
                let k = s.algebra().eval(0, &[i, j]);
                assert_eq!(s.carrier()[k], (a.eval(0, &[p1, p2]), a.eval(0, &[q1, q2])));
            }
        }
        assert_eq!(
            subproduct_carrier(&a, &[(0, 0), (1, 0), (0, 3)]).unwrap(),
            s.carrier()
        );
    }
}
