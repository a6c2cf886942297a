use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator `e_i` of the free Lie algebra; indices start at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorIndex(u16);

impl GeneratorIndex {
    /// Panics on 0.
    pub fn new(index: u16) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        GeneratorIndex(index)
    }

    pub fn get(self) -> u16 {
        self.0
    }

    /// Zero-based digit used for word keys.
    pub(crate) fn digit(self) -> u64 {
        u64::from(self.0 - 1)
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A binary bracket tree over generators.
///
/// Serializes as a nested list: a leaf is its generator index, a bracket is the
/// two-element list `[left, right]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LieMonomial {
    Leaf(GeneratorIndex),
    Bracket(Box<LieMonomial>, Box<LieMonomial>),
}

impl LieMonomial {
    pub fn leaf(index: u16) -> Self {
        LieMonomial::Leaf(GeneratorIndex::new(index))
    }

    pub fn bracket(left: LieMonomial, right: LieMonomial) -> Self {
        LieMonomial::Bracket(Box::new(left), Box::new(right))
    }

    /// `[[...[e_{i1}, e_{i2}], e_{i3}], ..., e_{in}]`. Panics on an empty slice.
    pub fn left_normed(indices: &[u16]) -> Self {
        let (first, rest) = indices.split_first().expect("at least one index");
        rest.iter().fold(LieMonomial::leaf(*first), |acc, &i| {
            LieMonomial::bracket(acc, LieMonomial::leaf(i))
        })
    }

    /// Left-normed bracket of arbitrary monomials.
    pub fn left_normed_of(parts: &[LieMonomial]) -> Self {
        let (first, rest) = parts.split_first().expect("at least one part");
        rest.iter()
            .fold(first.clone(), |acc, p| LieMonomial::bracket(acc, p.clone()))
    }

    pub fn degree(&self) -> usize {
        match self {
            LieMonomial::Leaf(_) => 1,
            LieMonomial::Bracket(l, r) => l.degree() + r.degree(),
        }
    }

    pub fn max_generator(&self) -> u16 {
        match self {
            LieMonomial::Leaf(i) => i.get(),
            LieMonomial::Bracket(l, r) => l.max_generator().max(r.max_generator()),
        }
    }

    /// Generators in left-to-right leaf order.
    pub fn leaves(&self) -> Vec<GeneratorIndex> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<GeneratorIndex>) {
        match self {
            LieMonomial::Leaf(i) => out.push(*i),
            LieMonomial::Bracket(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

impl fmt::Display for LieMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieMonomial::Leaf(i) => write!(f, "{i}"),
            LieMonomial::Bracket(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}
