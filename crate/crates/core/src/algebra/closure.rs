//! Breadth-first subuniverse generation.
//!
//! Each round applies every operation to every argument tuple (row-major
//! over generation positions) that uses at least one element produced in
//! the previous round. Elements produced in a round are only used as
//! arguments from the next round on, so generation order is a
//! deterministic function of the input.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::term::TermDag;
use super::Operations;
use crate::{Error, Result};

/// Dense lookup tables up to this many codes, a B-tree beyond.
const DENSE_LIMIT: usize = 1 << 24;

pub(crate) enum ElementIndex {
    Dense(Vec<u32>),
    Sparse(BTreeMap<usize, u32>),
}

impl ElementIndex {
    pub(crate) fn new(universe: usize) -> Self {
        if universe <= DENSE_LIMIT {
            ElementIndex::Dense(vec![u32::MAX; universe])
        } else {
            ElementIndex::Sparse(BTreeMap::new())
        }
    }

    pub(crate) fn from_elements(universe: usize, elements: &[usize]) -> Self {
        let mut index = ElementIndex::new(universe);
        for (i, &e) in elements.iter().enumerate() {
            index.insert(e, i);
        }
        index
    }

    #[inline]
    pub(crate) fn get(&self, code: usize) -> Option<usize> {
        match self {
            ElementIndex::Dense(v) => match v[code] {
                u32::MAX => None,
                i => Some(i as usize),
            },
            ElementIndex::Sparse(m) => m.get(&code).map(|&i| i as usize),
        }
    }

    #[inline]
    pub(crate) fn insert(&mut self, code: usize, pos: usize) {
        match self {
            ElementIndex::Dense(v) => v[code] = pos as u32,
            ElementIndex::Sparse(m) => {
                m.insert(code, pos as u32);
            }
        }
    }
}

/// How an element entered the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Origin {
    /// The i-th supplied generator.
    Generator(usize),
    /// A basic operation applied to earlier generation positions.
    Apply { op: usize, args: Vec<usize> },
}

pub(crate) struct Closure {
    /// Element codes in generation order.
    pub elements: Vec<usize>,
    /// One entry per element when origins were requested.
    pub origins: Vec<Origin>,
    pub index: ElementIndex,
    /// Generation position of the first element accepted by `stop`.
    pub hit: Option<usize>,
}

impl Closure {
    /// The witness of the element at generation position `pos`, with all
    /// shared subterms kept shared.
    pub fn witness(&self, pos: usize) -> TermDag {
        TermDag::from_origins(&self.origins, pos)
    }

    pub fn sorted_elements(&self) -> Vec<usize> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }
}

/// Generates `Sg(generators)` inside `view`. When `stop` accepts an
/// element (generators included), generation halts and `hit` records it.
pub(crate) fn close<S: Operations + ?Sized>(
    view: &S,
    generators: &[usize],
    track_origins: bool,
    mut stop: Option<&mut dyn FnMut(usize) -> bool>,
) -> Closure {
    let mut out = Closure {
        elements: Vec::new(),
        origins: Vec::new(),
        index: ElementIndex::new(view.size()),
        hit: None,
    };

    macro_rules! push {
        ($code:expr, $origin:expr) => {{
            let code = $code;
            let pos = out.elements.len();
            out.index.insert(code, pos);
            out.elements.push(code);
            if track_origins {
                out.origins.push($origin);
            }
            if let Some(stop) = stop.as_mut() {
                if stop(code) {
                    out.hit = Some(pos);
                    return out;
                }
            }
        }};
    }

    for (i, &g) in generators.iter().enumerate() {
        if out.index.get(g).is_none() {
            push!(g, Origin::Generator(i));
        }
    }

    let mut start = 0;
    let mut first_round = true;
    let mut prefix = Vec::new();
    let mut codes = Vec::new();
    loop {
        let end = out.elements.len();
        if start == end && !first_round {
            return out;
        }
        for op in 0..view.operation_count() {
            let arity = view.arity(op);
            if arity == 0 {
                if first_round {
                    let c = view.eval(op, &[]);
                    if out.index.get(c).is_none() {
                        push!(
                            c,
                            Origin::Apply {
                                op,
                                args: Vec::new()
                            }
                        );
                    }
                }
                continue;
            }
            // Row-major over [0, end)^arity, skipping tuples made only of
            // elements from before `start`: the last coordinate starts at
            // `start` whenever the prefix is entirely old.
            prefix.clear();
            prefix.resize(arity - 1, 0);
            codes.clear();
            codes.resize(arity, 0);
            'prefixes: loop {
                let old_prefix = prefix.iter().all(|&p| p < start);
                let lo = if old_prefix { start } else { 0 };
                for (c, &p) in codes.iter_mut().zip(&prefix) {
                    *c = out.elements[p];
                }
                for last in lo..end {
                    codes[arity - 1] = out.elements[last];
                    let value = view.eval(op, &codes);
                    if out.index.get(value).is_none() {
                        let origin = if track_origins {
                            let mut args = prefix.clone();
                            args.push(last);
                            Origin::Apply { op, args }
                        } else {
                            Origin::Generator(usize::MAX)
                        };
                        push!(value, origin);
                    }
                }
                let mut i = prefix.len();
                loop {
                    if i == 0 {
                        break 'prefixes;
                    }
                    i -= 1;
                    prefix[i] += 1;
                    if prefix[i] < end {
                        break;
                    }
                    prefix[i] = 0;
                }
            }
        }
        first_round = false;
        start = end;
    }
}

/// A generated subuniverse with a term witness for every element.
#[derive(Debug, Clone)]
pub struct Subuniverse {
    elements: Vec<usize>,
    order: Vec<usize>,
    origins: Vec<Origin>,
    generator_count: usize,
}

impl Subuniverse {
    pub(crate) fn generate<S: Operations + ?Sized>(view: &S, generators: &[usize]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let closure = close(view, generators, true, None);
        Ok(Subuniverse {
            elements: closure.sorted_elements(),
            order: closure.elements,
            origins: closure.origins,
            generator_count: generators.len(),
        })
    }

    /// Elements in ascending order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Elements in the order they were generated.
    pub fn generation_order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.elements.binary_search(&element).is_ok()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn witness(&self, element: usize) -> Option<TermDag> {
        let pos = self.order.iter().position(|&e| e == element)?;
        Some(TermDag::from_origins(&self.origins, pos))
    }
}
