//! Hall sets stratified by derived-series level.
//!
//! `H_0` is the generators, ordered by index. `H_{n+1}` consists of the
//! left-normed brackets `[[...[h_1, h_2], h_3], ..., h_k]` with `k >= 2`, every
//! `h_j` in `H_n`, and `h_1 < h_2 >= h_3 >= ... >= h_k` (the final `>=` included).
//! Within a level, elements are ordered by degree, then by the sequence of the
//! ranks of their components in the previous level. Across levels the order is
//! `H_0 > H_1 > H_2 > ...`; the construction itself only ever compares
//! elements of the same level.
//!
//! `H_n(i)` is the set of level-`n` elements of degree `i`; `L'(i, n)` is its span.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{witt_dimension, BigCount};
use crate::error::{Error, Result};
use crate::oracle::{expand_row, LieMonomial, Oracle, Subspace};

/// Position of an element inside a level: `(degree, component ranks)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderKey {
    pub degree: usize,
    pub components: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub level: usize,
    pub degree: usize,
    /// Ranks of `h_1, ..., h_k` inside the previous level; for level 0, the
    /// generator index.
    pub order_key: OrderKey,
}

/// All Hall elements up to a degree, level by level, each level sorted.
#[derive(Clone, Debug)]
pub struct HallTable {
    k: usize,
    max_degree: usize,
    levels: Vec<Vec<HallElement>>,
}

/// Largest number of Hall elements [`generate_hall`] will materialize.
pub const HALL_ELEMENT_LIMIT: u64 = 4_000_000;

/// Generates every Hall element of degree at most `max_degree` over `k` generators.
pub fn generate_hall(k: usize, max_degree: usize) -> Result<HallTable> {
    if k >= 2 && max_degree >= 1 {
        let total: BigCount = (1..=max_degree as u64)
            .map(|d| witt_dimension(k as u64, d))
            .sum();
        if total > HALL_ELEMENT_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "{total} Hall elements for k = {k}, max_degree = {max_degree} (limit {HALL_ELEMENT_LIMIT})"
            )));
        }
    }
    generate_hall_levels(k, max_degree, usize::MAX)
}

/// Like [`generate_hall`], but stops after level `max_level`.
pub fn generate_hall_levels(k: usize, max_degree: usize, max_level: usize) -> Result<HallTable> {
    if k < 2 || max_degree < 1 {
        return Err(Error::InvalidInput(format!(
            "Hall sets need k >= 2 and max_degree >= 1 (got k = {k}, max_degree = {max_degree})"
        )));
    }
    let leaves: Vec<HallElement> = (1..=k)
        .map(|i| HallElement {
            level: 0,
            degree: 1,
            order_key: OrderKey {
                degree: 1,
                components: vec![i],
            },
        })
        .collect();
    let mut levels = vec![leaves];
    while levels.len() <= max_level {
        let prev = levels.last().expect("level 0 exists");
        let next = next_level(prev, levels.len(), max_degree);
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(HallTable {
        k,
        max_degree,
        levels,
    })
}

fn next_level(prev: &[HallElement], level: usize, max_degree: usize) -> Vec<HallElement> {
    let mut out = Vec::new();
    let mut seq = Vec::new();
    for j2 in 0..prev.len() {
        for j1 in 0..j2 {
            let degree = prev[j1].degree + prev[j2].degree;
            // degrees are non-decreasing along a sorted level
            if degree > max_degree {
                break;
            }
            seq.clear();
            seq.extend([j1, j2]);
            extend_tail(prev, &mut seq, j2, degree, max_degree, level, &mut out);
        }
    }
    out.sort_by(|a, b| a.order_key.cmp(&b.order_key));
    out
}

/// Emits `seq` and every extension by non-increasing ranks `<= bound`.
fn extend_tail(
    prev: &[HallElement],
    seq: &mut Vec<usize>,
    bound: usize,
    degree: usize,
    max_degree: usize,
    level: usize,
    out: &mut Vec<HallElement>,
) {
    out.push(HallElement {
        level,
        degree,
        order_key: OrderKey {
            degree,
            components: seq.clone(),
        },
    });
    for j in 0..=bound {
        let d = degree + prev[j].degree;
        if d > max_degree {
            break;
        }
        seq.push(j);
        extend_tail(prev, seq, j, d, max_degree, level, out);
        seq.pop();
    }
}

impl HallTable {
    pub fn alphabet(&self) -> usize {
        self.k
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn levels(&self) -> &[Vec<HallElement>] {
        &self.levels
    }

    /// `H_n(i)`.
    pub fn slice(&self, level: usize, degree: usize) -> impl Iterator<Item = &HallElement> {
        self.levels
            .get(level)
            .into_iter()
            .flatten()
            .filter(move |e| e.degree == degree)
    }

    /// Every element of the given degree, any level.
    pub fn of_degree(&self, degree: usize) -> impl Iterator<Item = &HallElement> {
        self.levels
            .iter()
            .flatten()
            .filter(move |e| e.degree == degree)
    }

    /// The bracket tree of an element.
    pub fn monomial(&self, element: &HallElement) -> LieMonomial {
        if element.level == 0 {
            return LieMonomial::leaf(element.order_key.components[0] as u16);
        }
        let prev = &self.levels[element.level - 1];
        let parts: Vec<LieMonomial> = element
            .order_key
            .components
            .iter()
            .map(|&j| self.monomial(&prev[j]))
            .collect();
        LieMonomial::left_normed_of(&parts)
    }

    /// `|H_n(i)|` for every level and degree.
    pub fn bigrade_dims(&self) -> GradedDimTable {
        let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for e in self.levels.iter().flatten() {
            *counts.entry((e.level, e.degree)).or_default() += 1;
        }
        let cells = counts
            .into_iter()
            .map(|((level, degree), count)| BigradeCell {
                level,
                degree,
                count: BigCount::from(count),
            })
            .collect();
        GradedDimTable {
            k: self.k,
            max_degree: self.max_degree,
            cells,
        }
    }

    /// JSON-friendly rows `{level, degree, monomial}` in table order.
    pub fn entries(&self) -> Vec<HallEntry> {
        self.levels
            .iter()
            .flatten()
            .map(|e| HallEntry {
                level: e.level,
                degree: e.degree,
                monomial: self.monomial(e),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallEntry {
    pub level: usize,
    pub degree: usize,
    pub monomial: LieMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradeCell {
    pub level: usize,
    pub degree: usize,
    pub count: BigCount,
}

/// Sizes of the bigraded pieces `|H_n(i)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimTable {
    pub k: usize,
    pub max_degree: usize,
    pub cells: Vec<BigradeCell>,
}

impl GradedDimTable {
    pub fn get(&self, level: usize, degree: usize) -> BigCount {
        self.cells
            .iter()
            .find(|c| c.level == level && c.degree == degree)
            .map(|c| c.count.clone())
            .unwrap_or_default()
    }

    /// `sum_n |H_n(i)|`.
    pub fn degree_total(&self, degree: usize) -> BigCount {
        self.cells
            .iter()
            .filter(|c| c.degree == degree)
            .map(|c| c.count.clone())
            .sum()
    }
}

pub fn bigrade_dims(k: usize, max_degree: usize) -> Result<GradedDimTable> {
    Ok(generate_hall(k, max_degree)?.bigrade_dims())
}

/// The left-normed monomials `[[e_{i1}, e_{i2}], ..., e_{in}]` with
/// `i1 < i2 >= i3 >= ... >= in` over `2g` generators, listed directly from
/// their index sequences.
pub fn h1_monomials(g: usize, n: usize) -> Result<Vec<LieMonomial>> {
    Ok(h1_index_sequences(2 * g, n)?
        .iter()
        .map(|ix| LieMonomial::left_normed(ix))
        .collect())
}

/// Index sequences `(i1, ..., in)` with `i1 < i2 >= i3 >= ... >= in <= top`.
pub fn h1_index_sequences(top: usize, n: usize) -> Result<Vec<Vec<u16>>> {
    if n < 2 {
        return Err(crate::error::domain(
            "h1_monomials",
            format!("stated for n >= 2, got n = {n}"),
        ));
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    for i2 in 2..=top as u16 {
        for i1 in 1..i2 {
            seq.clear();
            seq.extend([i1, i2]);
            non_increasing_tail(&mut seq, i2, n, &mut out);
        }
    }
    Ok(out)
}

fn non_increasing_tail(seq: &mut Vec<u16>, bound: u16, n: usize, out: &mut Vec<Vec<u16>>) {
    if seq.len() == n {
        out.push(seq.clone());
        return;
    }
    for i in 1..=bound {
        seq.push(i);
        non_increasing_tail(seq, i, n, out);
        seq.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallSpanReport {
    pub k: usize,
    pub n: usize,
    /// Rank of all degree-`n` Hall elements.
    pub total_rank: usize,
    pub witt: BigCount,
    /// Rank of the degree-`n` elements of level `>= 2`.
    pub deep_rank: usize,
    /// Rank of the degree-`n` piece of `[[L, L], [L, L]]`.
    pub derived_rank: usize,
    /// Rank of the union of the two previous spans.
    pub union_rank: usize,
    pub element_count: usize,
    pub ok: bool,
}

/// Checks that the degree-`n` Hall elements span the free Lie algebra and that
/// those of level `>= 2` span exactly the degree-`n` part of the third derived
/// subalgebra.
pub fn verify_hall_spans(oracle: &Oracle, k: usize, n: usize) -> Result<HallSpanReport> {
    oracle.budget().check(k, n)?;
    let table = generate_hall(k, n)?;
    let kk = k as u64;
    let mut all = Subspace::new(k, n);
    let mut deep = Subspace::new(k, n);
    let mut element_count = 0;
    for e in table.of_degree(n) {
        element_count += 1;
        let row = expand_row(&table.monomial(e), kk);
        if e.level >= 2 {
            deep.insert_row(row.clone())?;
        }
        all.insert_row(row)?;
    }
    let derived = oracle.derived_piece(k, 3, n)?;
    let mut union = derived.clone();
    for r in deep.generator_rows() {
        union.insert_row(r.clone())?;
    }
    let witt = witt_dimension(kk, n as u64);
    let ok = witt == all.rank() as u64
        && element_count == all.rank()
        && deep.rank() == derived.rank()
        && union.rank() == derived.rank();
    Ok(HallSpanReport {
        k,
        n,
        total_rank: all.rank(),
        witt,
        deep_rank: deep.rank(),
        derived_rank: derived.rank(),
        union_rank: union.rank(),
        element_count,
        ok,
    })
}
