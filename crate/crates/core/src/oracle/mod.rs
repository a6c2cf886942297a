//! Brute-force ground truth for free Lie algebra computations.
//!
//! Lie monomials are expanded into the tensor algebra (`[x, y] = xy - yx`) and
//! every rank, span and membership question is answered by exact elimination
//! over the rationals, carried out on primitive integer rows.
//!
//! The derived series is taken as `A^(1) = A`, `A^(r+1) = [A^(r), A^(r)]`, so
//! `A^(3) = [[A, A], [A, A]]`. (The one-line definition `A^(n+1) = [A, A^(n)]`
//! that sometimes appears alongside this usage would give the lower central
//! series instead; it is not what is meant.)
//!
//! Ideal pieces are generated by ad-words in the generators alone: in a Lie
//! algebra generated by its degree-one part, the ideal generated by `S` is the
//! span of all `[...[s, x_1], ..., x_m]` with `s` in `S` and `x_i` generators.

mod lyndon;
mod monomial;
mod subspace;
mod vector;

pub use lyndon::{is_lyndon, lyndon_words, standard_bracketing};
pub use monomial::{GeneratorIndex, LieMonomial};
pub use subspace::{rank_of, Subspace};
pub use vector::{expand, Word, WordVector};

pub(crate) use vector::{expand_row, Row, Shape};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits beyond which the oracle refuses to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_generators: usize,
    pub max_degree: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_generators: 6,
            max_degree: 8,
        }
    }
}

impl Budget {
    pub fn check(&self, k: usize, n: usize) -> Result<()> {
        if k > self.max_generators || n > self.max_degree {
            return Err(Error::BudgetExceeded(format!(
                "{k} generators in degree {n} (limit: {} generators, degree {})",
                self.max_generators, self.max_degree
            )));
        }
        if (k as u64).checked_pow(n as u32).is_none_or(|w| w > 1 << 40) {
            return Err(Error::BudgetExceeded(format!(
                "{k}^{n} words do not fit the key space"
            )));
        }
        Ok(())
    }
}

/// How the surface relation pairs up the `2g` generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    /// `omega = sum_i [e_{2i-1}, e_{2i}]`.
    #[default]
    Consecutive,
    /// `omega = sum_i [e_i, e_{g+i}]`.
    Split,
}

/// The relation `omega = sum_{i=1}^{g} [a_i, b_i]` of a genus-`g` surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceRelation {
    g: usize,
    pairs: Vec<(u16, u16)>,
}

impl SurfaceRelation {
    pub fn new(g: usize, pairing: Pairing) -> Self {
        assert!(g >= 1, "genus must be at least 1");
        let pairs = (1..=g as u16)
            .map(|i| match pairing {
                Pairing::Consecutive => (2 * i - 1, 2 * i),
                Pairing::Split => (i, g as u16 + i),
            })
            .collect();
        SurfaceRelation { g, pairs }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn generators(&self) -> usize {
        2 * self.g
    }

    pub fn pairs(&self) -> &[(u16, u16)] {
        &self.pairs
    }

    /// The brackets `[a_i, b_i]` whose sum is `omega`.
    pub fn terms(&self) -> Vec<LieMonomial> {
        self.pairs
            .iter()
            .map(|&(a, b)| LieMonomial::bracket(LieMonomial::leaf(a), LieMonomial::leaf(b)))
            .collect()
    }

    pub fn omega(&self) -> WordVector {
        self.omega_row()
            .to_word_vector(&Shape::new(self.generators() as u64, 2))
    }

    pub(crate) fn omega_row(&self) -> Row {
        let k = self.generators() as u64;
        let terms = self
            .terms()
            .iter()
            .flat_map(|t| expand_row(t, k).terms)
            .collect();
        Row::from_unsorted(terms)
    }
}

/// Standard bracketings of all Lyndon words of length `n` over `k` letters.
pub fn lyndon_basis(k: usize, n: usize) -> Vec<LieMonomial> {
    lyndon_words(k as u16, n)
        .iter()
        .map(|w| standard_bracketing(w))
        .collect()
}

/// Exact-arithmetic oracle with a size budget.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle {
    budget: Budget,
}

impl Oracle {
    pub fn new(budget: Budget) -> Self {
        Oracle { budget }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Rank of a list of vectors; rejects mixed degrees.
    pub fn rank_of(&self, vectors: &[WordVector]) -> Result<usize> {
        if let Some(first) = vectors.first() {
            if let Some(bad) = vectors.iter().find(|v| v.degree() != first.degree()) {
                return Err(Error::MixedDegree {
                    expected: first.degree(),
                    found: bad.degree(),
                });
            }
            let k = vectors.iter().map(|v| v.max_generator()).max().unwrap_or(1);
            self.budget.check(usize::from(k), first.degree())?;
        }
        rank_of(vectors)
    }

    pub fn rank_of_monomials(&self, monomials: &[LieMonomial]) -> Result<usize> {
        let Some(first) = monomials.first() else {
            return Ok(0);
        };
        let k = monomials
            .iter()
            .map(|m| m.max_generator())
            .max()
            .unwrap_or(1);
        Ok(self
            .span_monomials(usize::from(k), first.degree(), monomials)?
            .rank())
    }

    /// Span of monomials of degree `n` over `k` letters.
    pub fn span_monomials(
        &self,
        k: usize,
        n: usize,
        monomials: &[LieMonomial],
    ) -> Result<Subspace> {
        self.budget.check(k, n)?;
        let mut space = Subspace::new(k, n);
        for m in monomials {
            if m.degree() != n {
                return Err(Error::MixedDegree {
                    expected: n,
                    found: m.degree(),
                });
            }
            if usize::from(m.max_generator()) > k {
                return Err(Error::InvalidInput(format!(
                    "{m} uses a generator beyond e{k}"
                )));
            }
            space.insert_row(expand_row(m, k as u64))?;
        }
        Ok(space)
    }

    /// The degree-`n` piece of the free Lie algebra on `k` generators.
    pub fn free_piece(&self, k: usize, n: usize) -> Result<Subspace> {
        self.span_monomials(k, n, &lyndon_basis(k, n))
    }

    /// Degree-`n` piece of the `r`-th derived subalgebra of the free Lie algebra
    /// on `k` generators. Level 1 is the free Lie algebra itself; level `j + 1`
    /// in degree `d` is spanned by `[u, v]` with `u`, `v` running over
    /// independent generators of level `j` in complementary degrees.
    pub fn derived_piece(&self, k: usize, r: usize, n: usize) -> Result<Subspace> {
        if r == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "derived level and degree start at 1".into(),
            ));
        }
        self.budget.check(k, n)?;
        if r == 1 {
            return self.free_piece(k, n);
        }
        // Level j only matters up to the degree that still leaves room for the
        // other 2^(r-j) - 1 factors, each of degree >= 2^(j-1).
        let cap = |j: usize| -> usize {
            let others = ((1usize << (r - j)) - 1) * (1usize << (j - 1));
            n.saturating_sub(others)
        };
        let kk = k as u64;
        // generators[d] = independent spanning rows of the current level in degree d
        let mut generators: Vec<Vec<Row>> = (0..=cap(1))
            .map(|d| {
                if d == 0 {
                    Vec::new()
                } else {
                    lyndon_basis(k, d)
                        .iter()
                        .map(|m| expand_row(m, kk))
                        .collect()
                }
            })
            .collect();
        for j in 2..=r {
            let min_degree = 1usize << (j - 1);
            let degrees: Vec<usize> = if j == r {
                vec![n]
            } else {
                (min_degree..=cap(j)).collect()
            };
            let prev = &generators;
            let spaces: Vec<(usize, Subspace)> = degrees
                .par_iter()
                .map(|&d| Ok((d, bracket_span(prev, k, d)?)))
                .collect::<Result<_>>()?;
            if j == r {
                let (_, space) = spaces.into_iter().next().expect("one degree");
                return Ok(space);
            }
            let mut next = vec![Vec::new(); cap(j) + 1];
            for (d, space) in spaces {
                next[d] = space.generator_rows().to_vec();
            }
            generators = next;
        }
        unreachable!("loop returns at the top level")
    }

    /// Degree-`n` piece of the ideal generated by `omega`: the span of
    /// `ad_v(omega)` over all `(n-2)`-tuples `v` of generators.
    pub fn relation_piece(&self, relation: &SurfaceRelation, n: usize) -> Result<Subspace> {
        if n < 2 {
            return Err(Error::InvalidInput(
                "the relation ideal starts in degree 2".into(),
            ));
        }
        let k = relation.generators();
        self.budget.check(k, n)?;
        let mut space = Subspace::new(k, n);
        push_ad_words(&mut space, relation.omega_row(), 2, n, k as u64)?;
        Ok(space)
    }
}

/// Span of `[u, v]` over generator pairs from `generators` with degrees summing to `d`.
fn bracket_span(generators: &[Vec<Row>], k: usize, d: usize) -> Result<Subspace> {
    let mut space = Subspace::new(k, d);
    let empty = Vec::new();
    let at = |deg: usize| generators.get(deg).unwrap_or(&empty);
    for a in 1..=d / 2 {
        let b = d - a;
        let (left, right) = (at(a), at(b));
        for (i, u) in left.iter().enumerate() {
            let start = if a == b { i + 1 } else { 0 };
            for v in &right[start.min(right.len())..] {
                space.insert_row(u.bracket(a, v, b, k as u64))?;
            }
        }
    }
    Ok(space)
}

fn push_ad_words(
    space: &mut Subspace,
    current: Row,
    degree: usize,
    target: usize,
    k: u64,
) -> Result<()> {
    if degree == target {
        space.insert_row(current)?;
        return Ok(());
    }
    for x in 0..k {
        let leaf = Row {
            terms: vec![(x, 1)],
        };
        let next = current.bracket(degree, &leaf, 1, k);
        push_ad_words(space, next, degree + 1, target, k)?;
    }
    Ok(())
}
