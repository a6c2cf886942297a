//! Multi-index fibers of an exponent matrix and annihilator zero counts.
//!
//! Rational quantities are carried as integer numerators over the matrix
//! denominator `M`: an entry `q_ij` is stored as `M q_ij`, and so are the
//! coordinates of `delta = alpha D` and the roots of an annihilator profile.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, BigCount};
use crate::error::{Error, Result};

/// Largest simplex `{|alpha| <= n - 2}` that will be enumerated.
pub const INDEX_LIMIT: u64 = 20_000_000;

/// A `2g x d` matrix with entries in `(1/M) Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentMatrix {
    numerators: Vec<Vec<i64>>,
    denominator: u64,
}

impl ExponentMatrix {
    /// Rejects ragged input, a zero denominator, and matrices of rank `< d`.
    pub fn new(numerators: Vec<Vec<i64>>, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidInput("denominator must be positive".into()));
        }
        let cols = numerators.first().map_or(0, Vec::len);
        if numerators.is_empty() || cols == 0 {
            return Err(Error::InvalidInput("exponent matrix is empty".into()));
        }
        if numerators.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput(
                "exponent matrix rows differ in length".into(),
            ));
        }
        let rank = integer_rank(&numerators);
        if rank < cols {
            return Err(Error::RankDeficient { rank, cols });
        }
        Ok(ExponentMatrix {
            numerators,
            denominator,
        })
    }

    /// Builds the matrix from rational entries over their least common denominator.
    pub fn from_rationals(entries: &[Vec<BigRational>]) -> Result<Self> {
        let m = entries
            .iter()
            .flatten()
            .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let denominator = m
            .to_u64()
            .ok_or_else(|| Error::InvalidInput("denominator does not fit in 64 bits".into()))?;
        let numerators = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        (q.numer() * (&m / q.denom()))
                            .to_i64()
                            .ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(numerators, denominator)
    }

    pub fn rows(&self) -> usize {
        self.numerators.len()
    }

    pub fn cols(&self) -> usize {
        self.numerators[0].len()
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn numerators(&self) -> &[Vec<i64>] {
        &self.numerators
    }

    /// `M |D|`, the largest absolute numerator.
    pub fn max_abs_numerator(&self) -> u64 {
        self.numerators
            .iter()
            .flatten()
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// `|D| = max |q_ij|`.
    pub fn abs(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.max_abs_numerator()),
            BigInt::from(self.denominator),
        )
    }

    /// Numerators of `alpha D`.
    pub fn apply(&self, alpha: &[u32]) -> Vec<i64> {
        let mut out = vec![0i64; self.cols()];
        for (a, row) in alpha.iter().zip(&self.numerators) {
            if *a != 0 {
                for (o, q) in out.iter_mut().zip(row) {
                    *o += i64::from(*a) * q;
                }
            }
        }
        out
    }

    fn check_rows(&self, g: u64) -> Result<()> {
        if self.rows() as u64 != 2 * g {
            return Err(Error::InvalidInput(format!(
                "exponent matrix has {} rows, expected 2g = {}",
                self.rows(),
                2 * g
            )));
        }
        if self.cols() as u64 > 2 * g {
            return Err(Error::InvalidInput(
                "exponent matrix has more columns than rows".into(),
            ));
        }
        Ok(())
    }
}

fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// An exponent vector `alpha in N^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }
}

fn simplex_size(g: u64, n: u64) -> Result<BigCount> {
    if g == 0 || n < 2 {
        return Err(Error::InvalidInput(format!(
            "multi-indices need g >= 1 and n >= 2 (got g = {g}, n = {n})"
        )));
    }
    let count = binomial(n - 2 + 2 * g, 2 * g);
    if count > INDEX_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "{count} multi-indices for g = {g}, n = {n} (limit {INDEX_LIMIT})"
        )));
    }
    Ok(count)
}

/// Calls `f` on every `alpha` of length `len` with `|alpha| <= max_weight`, in
/// lexicographic order.
fn for_each_index(len: usize, max_weight: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(alpha: &mut Vec<u32>, len: usize, left: u32, f: &mut impl FnMut(&[u32])) {
        if alpha.len() == len {
            f(alpha);
            return;
        }
        for a in 0..=left {
            alpha.push(a);
            rec(alpha, len, left - a, f);
            alpha.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), len, max_weight, f);
}

/// Visits the simplex in parallel, splitting on the first coordinate.
fn par_fold_indices<T, F, M>(
    len: usize,
    max_weight: u32,
    init: impl Fn() -> T + Sync,
    visit: F,
    merge: M,
) -> T
where
    T: Send,
    F: Fn(&mut T, &[u32]) + Sync,
    M: Fn(T, T) -> T + Sync,
{
    (0..=max_weight)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            let mut alpha = vec![first];
            if len == 1 {
                visit(&mut acc, &alpha);
                return acc;
            }
            for_each_index(len - 1, max_weight - first, &mut |rest| {
                alpha.truncate(1);
                alpha.extend_from_slice(rest);
                visit(&mut acc, &alpha);
            });
            acc
        })
        .reduce(&init, &merge)
}

/// All `alpha in N^{2g}` with `|alpha| <= n - 2`, lexicographically ordered.
pub fn enumerate_multi_indices(g: u64, n: u64) -> Result<Vec<MultiIndex>> {
    simplex_size(g, n)?;
    let mut out = Vec::new();
    for_each_index(2 * g as usize, (n - 2) as u32, &mut |a| {
        out.push(MultiIndex(a.to_vec()))
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    /// Numerators of `delta` over the matrix denominator.
    pub delta: Vec<i64>,
    pub size: BigCount,
}

/// The partition of `{|alpha| <= n - 2}` by `delta = alpha D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub g: u64,
    pub n: u64,
    pub denominator: u64,
    pub total: BigCount,
    /// `C(n - 2 + 2g, 2g)`.
    pub expected_total: BigCount,
    /// Nonempty fibers, sorted by `delta`.
    pub fibers: Vec<Fiber>,
    pub max_fiber: BigCount,
    pub kernel_box_count: BigCount,
    /// Largest `l1` norm of a numerator vector `M delta`.
    pub max_delta_norm: u64,
    /// `(n - 2)(2g) M |D|`.
    pub delta_norm_bound: u64,
}

impl FiberReport {
    pub fn partition_ok(&self) -> bool {
        self.total == self.expected_total
    }

    pub fn fiber_cap_ok(&self) -> bool {
        self.max_fiber <= self.kernel_box_count
    }

    pub fn delta_bound_ok(&self) -> bool {
        self.max_delta_norm <= self.delta_norm_bound
    }

    pub fn is_consistent(&self) -> bool {
        self.partition_ok() && self.fiber_cap_ok() && self.delta_bound_ok()
    }

    pub fn fiber(&self, delta: &[i64]) -> BigCount {
        self.fibers
            .binary_search_by(|f| f.delta.as_slice().cmp(delta))
            .map_or_else(|_| BigCount::zero(), |i| self.fibers[i].size.clone())
    }
}

fn fiber_counts(d: &ExponentMatrix, g: u64, n: u64) -> Result<BTreeMap<Vec<i64>, u64>> {
    d.check_rows(g)?;
    simplex_size(g, n)?;
    Ok(par_fold_indices(
        d.rows(),
        (n - 2) as u32,
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<i64>, u64>, alpha| *acc.entry(d.apply(alpha)).or_insert(0) += 1,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

pub fn fiber_partition(d: &ExponentMatrix, g: u64, n: u64) -> Result<FiberReport> {
    let counts = fiber_counts(d, g, n)?;
    let max_delta_norm = counts
        .keys()
        .map(|delta| delta.iter().map(|x| x.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let total: u64 = counts.values().sum();
    let max_fiber = counts.values().copied().max().unwrap_or(0);
    Ok(FiberReport {
        g,
        n,
        denominator: d.denominator(),
        total: total.into(),
        expected_total: binomial(n - 2 + 2 * g, 2 * g),
        fibers: counts
            .into_iter()
            .map(|(delta, size)| Fiber {
                delta,
                size: size.into(),
            })
            .collect(),
        max_fiber: max_fiber.into(),
        kernel_box_count: kernel_box_count(d, n)?,
        max_delta_norm,
        delta_norm_bound: (n - 2) * 2 * g * d.max_abs_numerator(),
    })
}

/// Number of `mu in Z^{2g}` with `mu D = 0` and `max |mu_i| <= n - 2`.
///
/// Any two indices in one fiber differ by such a `mu`, so this caps every fiber.
pub fn kernel_box_count(d: &ExponentMatrix, n: u64) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::InvalidInput("kernel box needs n >= 2".into()));
    }
    let r = (n - 2) as i64;
    let rows = d.numerators();
    // reach[i][j]: how far rows i.. can still move column j
    let mut reach = vec![vec![0i64; d.cols()]; rows.len() + 1];
    for i in (0..rows.len()).rev() {
        for j in 0..d.cols() {
            reach[i][j] = reach[i + 1][j] + r * rows[i][j].abs();
        }
    }
    fn rec(i: usize, partial: &mut [i64], rows: &[Vec<i64>], reach: &[Vec<i64>], r: i64) -> u64 {
        if partial.iter().zip(&reach[i]).any(|(p, b)| p.abs() > *b) {
            return 0;
        }
        if i == rows.len() {
            return u64::from(partial.iter().all(|&p| p == 0));
        }
        if rows[i].iter().all(|&q| q == 0) {
            return (2 * r as u64 + 1) * rec(i + 1, partial, rows, reach, r);
        }
        let mut total = 0;
        for mu in -r..=r {
            for (p, q) in partial.iter_mut().zip(&rows[i]) {
                *p += mu * q;
            }
            total += rec(i + 1, partial, rows, reach, r);
            for (p, q) in partial.iter_mut().zip(&rows[i]) {
                *p -= mu * q;
            }
        }
        total
    }
    let mut partial = vec![0i64; d.cols()];
    Ok(rec(0, &mut partial, rows, &reach, r).into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixBounds {
    /// `sum_{i=1}^{T} C(i + d - 2, d - 2)`.
    pub exact: BigCount,
    /// `(T + 1)^{d - 1}`.
    pub cube: BigCount,
}

/// Prefix counts for `T = 2g (n - 2) M |D|`.
pub fn prefix_count_bounds(
    g: u64,
    d: u64,
    m: u64,
    abs_d: &BigRational,
    n: u64,
) -> Result<PrefixBounds> {
    if d == 0 || n < 2 || m == 0 || abs_d.is_negative() {
        return Err(Error::InvalidInput(
            "prefix counts need d >= 1, n >= 2, M >= 1 and |D| >= 0".into(),
        ));
    }
    if d == 1 {
        return Ok(PrefixBounds {
            exact: 1u64.into(),
            cube: 1u64.into(),
        });
    }
    let scaled = abs_d * BigRational::from_integer(BigInt::from(m));
    if !scaled.is_integer() {
        return Err(Error::InvalidInput(format!(
            "M |D| = {scaled} is not an integer"
        )));
    }
    let t = (scaled.to_integer() * BigInt::from(2 * g * (n - 2)))
        .to_u64()
        .ok_or(Error::Overflow)?;
    // hockey stick: sum_{i=1}^{T} C(i + d - 2, d - 2) = C(T + d - 1, d - 1) - 1
    let exact = binomial(t + d - 1, d - 1)
        .checked_sub(&1u64.into())
        .expect("binomial is positive");
    Ok(PrefixBounds {
        exact,
        cube: BigCount::from(t + 1).pow((d - 1) as u32),
    })
}

/// At most `l` final coordinates per `(d - 1)`-prefix, all as numerators over `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileJson", into = "ProfileJson")]
pub struct AnnihilatorProfile {
    pub l: u64,
    pub m: u64,
    pub roots: BTreeMap<Vec<i64>, BTreeSet<i64>>,
}

impl AnnihilatorProfile {
    pub fn new(l: u64, m: u64, roots: BTreeMap<Vec<i64>, BTreeSet<i64>>) -> Result<Self> {
        if l == 0 || m == 0 {
            return Err(Error::InvalidInput(
                "profile needs l >= 1 and m >= 1".into(),
            ));
        }
        if let Some((prefix, set)) = roots.iter().find(|(_, s)| s.len() as u64 > l) {
            return Err(Error::InvalidInput(format!(
                "prefix {prefix:?} has {} roots, more than l = {l}",
                set.len()
            )));
        }
        Ok(AnnihilatorProfile { l, m, roots })
    }

    pub fn vanishes_at(&self, delta: &[i64]) -> bool {
        let (last, prefix) = delta.split_last().expect("delta has d >= 1 coordinates");
        self.roots.get(prefix).is_some_and(|s| s.contains(last))
    }
}

/// JSON form: prefixes are comma-separated numerator strings, e.g. `"0,-1"`;
/// the empty prefix (`d = 1`) is `""`.
#[derive(Serialize, Deserialize)]
struct ProfileJson {
    l: u64,
    m: u64,
    roots: BTreeMap<String, Vec<i64>>,
}

impl TryFrom<ProfileJson> for AnnihilatorProfile {
    type Error = Error;

    fn try_from(p: ProfileJson) -> Result<Self> {
        let mut roots = BTreeMap::new();
        for (key, values) in p.roots {
            let prefix = if key.trim().is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::InvalidInput(format!("bad prefix {key:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            roots
                .entry(prefix)
                .or_insert_with(BTreeSet::new)
                .extend(values);
        }
        AnnihilatorProfile::new(p.l, p.m, roots)
    }
}

impl From<AnnihilatorProfile> for ProfileJson {
    fn from(p: AnnihilatorProfile) -> Self {
        let roots = p
            .roots
            .into_iter()
            .map(|(prefix, set)| {
                let key = prefix
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                (key, set.into_iter().collect())
            })
            .collect();
        ProfileJson {
            l: p.l,
            m: p.m,
            roots,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingReport {
    pub count: BigCount,
    /// `kernel_box_count * l * cube`.
    pub bound: BigCount,
}

impl VanishingReport {
    pub fn within_bound(&self) -> bool {
        self.count <= self.bound
    }
}

/// Counts `alpha` with `|alpha| <= n - 2` whose `delta = alpha D` is a root of
/// its prefix.
pub fn count_vanishing_indices(
    d: &ExponentMatrix,
    profile: &AnnihilatorProfile,
    g: u64,
    n: u64,
) -> Result<VanishingReport> {
    if let Some(prefix) = profile.roots.keys().find(|p| p.len() + 1 != d.cols()) {
        return Err(Error::InvalidInput(format!(
            "prefix {prefix:?} should have d - 1 = {} coordinates",
            d.cols() - 1
        )));
    }
    let counts = fiber_counts(d, g, n)?;
    let count: u64 = counts
        .iter()
        .filter(|(delta, _)| profile.vanishes_at(delta))
        .map(|(_, c)| c)
        .sum();
    let prefix = prefix_count_bounds(g, d.cols() as u64, d.denominator(), &d.abs(), n)?;
    Ok(VanishingReport {
        count: count.into(),
        bound: kernel_box_count(d, n)? * BigCount::from(profile.l) * prefix.cube,
    })
}

/// The per-degree `H^2` constant, either given directly or as `m A + A'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Params {
    Direct {
        b: BigRational,
    },
    Split {
        m: u64,
        a: BigRational,
        a_prime: BigRational,
    },
}

impl Default for H2Params {
    fn default() -> Self {
        H2Params::Direct {
            b: BigRational::zero(),
        }
    }
}

impl H2Params {
    pub fn coefficient(&self) -> BigRational {
        match self {
            H2Params::Direct { b } => b.clone(),
            H2Params::Split { m, a, a_prime } => {
                BigRational::from_integer(BigInt::from(*m)) * a + a_prime
            }
        }
    }
}

/// `ceil(coefficient * n^{2g - 1})`.
pub fn h2_bound_per_degree(g: u64, params: &H2Params, n: u64) -> Result<BigCount> {
    let c = params.coefficient();
    let negative = match params {
        H2Params::Direct { b } => b.is_negative(),
        H2Params::Split { a, a_prime, .. } => a.is_negative() || a_prime.is_negative(),
    };
    if negative || g == 0 {
        return Err(Error::InvalidInput(
            "H^2 constants must be nonnegative and g >= 1".into(),
        ));
    }
    let value = c * BigRational::from_integer(BigInt::from(n).pow((2 * g - 1) as u32));
    Ok(BigCount(
        value.ceil().to_integer().to_biguint().expect("nonnegative"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fixture() -> ExponentMatrix {
        ExponentMatrix::new(vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]], 1).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_multi_indices(2, 5).unwrap().len(), 35);
        assert_eq!(enumerate_multi_indices(1, 3).unwrap().len(), 3);
        assert_eq!(
            enumerate_multi_indices(2, 2).unwrap(),
            vec![MultiIndex(vec![0, 0, 0, 0])]
        );
        assert!(enumerate_multi_indices(2, 1).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_bounded() {
        let v = enumerate_multi_indices(2, 6).unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(|a| a.weight() <= 4 && a.0.len() == 4));
    }

    #[test]
    fn rank_deficient_rejected() {
        let r = ExponentMatrix::new(vec![vec![1, 2], vec![2, 4]], 1);
        assert!(matches!(r, Err(Error::RankDeficient { rank: 1, cols: 2 })));
        assert!(ExponentMatrix::new(vec![vec![1, 2], vec![3]], 1).is_err());
        assert!(ExponentMatrix::new(vec![vec![1]], 0).is_err());
    }

    #[test]
    fn rationals_share_a_denominator() {
        let d = ExponentMatrix::from_rationals(&[vec![q(1, 2)], vec![q(1, 3)]]).unwrap();
        assert_eq!(d.denominator(), 6);
        assert_eq!(d.numerators(), &[vec![3], vec![2]]);
        assert_eq!(d.abs(), q(1, 2));
    }

    #[test]
    fn fixture_fibers() {
        let r = fiber_partition(&fixture(), 2, 5).unwrap();
        assert_eq!(r.total, 35);
        assert_eq!(r.fiber(&[0, 0]), 1);
        assert_eq!(r.fiber(&[1, 1]), 4);
        assert!(r.is_consistent());
        assert!(r.max_fiber <= 49u64);
        assert_eq!(r.kernel_box_count, 49);
    }

    #[test]
    fn injective_fibers() {
        let d = ExponentMatrix::new(vec![vec![1, 0], vec![0, 1]], 1).unwrap();
        for n in 2..=8 {
            let r = fiber_partition(&d, 1, n).unwrap();
            assert_eq!(r.max_fiber, 1);
            assert_eq!(kernel_box_count(&d, n).unwrap(), 1);
        }
    }

    #[test]
    fn kernel_box_examples() {
        assert_eq!(kernel_box_count(&fixture(), 5).unwrap(), 49);
        assert_eq!(kernel_box_count(&fixture(), 2).unwrap(), 1);
        // kernel of a single column [1, 1]^T is {(t, -t)}
        let d = ExponentMatrix::new(vec![vec![1], vec![1]], 1).unwrap();
        assert_eq!(kernel_box_count(&d, 6).unwrap(), 9);
    }

    #[test]
    fn kernel_box_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let cols = rng.gen_range(1..=2);
            let rows: Vec<Vec<i64>> = (0..4)
                .map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let Ok(d) = ExponentMatrix::new(rows.clone(), 1) else {
                continue;
            };
            let n = rng.gen_range(2..=4u64);
            let r = (n - 2) as i64;
            let mut brute = 0u64;
            let span = -r..=r;
            for a in span.clone() {
                for b in span.clone() {
                    for c in span.clone() {
                        for e in span.clone() {
                            let mu = [a, b, c, e];
                            let zero = (0..cols)
                                .all(|j| (0..4).map(|i| mu[i] * rows[i][j]).sum::<i64>() == 0);
                            brute += u64::from(zero);
                        }
                    }
                }
            }
            assert_eq!(kernel_box_count(&d, n).unwrap(), brute, "{rows:?} n={n}");
        }
    }

    #[test]
    fn partition_identity_and_fiber_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut matrices = vec![(2u64, fixture())];
        while matrices.len() < 8 {
            let g = rng.gen_range(1..=2u64);
            let cols = rng.gen_range(1..=2 * g as usize);
            let rows = (0..2 * g)
                .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            if let Ok(d) = ExponentMatrix::new(rows, rng.gen_range(1..=3)) {
                matrices.push((g, d));
            }
        }
        for (g, d) in &matrices {
            for n in 2..=12 {
                let r = fiber_partition(d, *g, n).unwrap();
                assert!(r.is_consistent(), "{d:?} n={n}");
                let sum: BigCount = r.fibers.iter().map(|f| f.size.clone()).sum();
                assert_eq!(sum, r.expected_total);
            }
        }
    }

    #[test]
    fn prefix_examples() {
        let one = BigRational::from_integer(1.into());
        let p = prefix_count_bounds(2, 2, 1, &one, 4).unwrap();
        assert_eq!((p.exact, p.cube), (8u64.into(), 9u64.into()));
        let p = prefix_count_bounds(2, 1, 1, &one, 4).unwrap();
        assert_eq!((p.exact, p.cube), (1u64.into(), 1u64.into()));
        let p = prefix_count_bounds(2, 3, 1, &one, 3).unwrap();
        assert_eq!((p.exact, p.cube), (14u64.into(), 25u64.into()));
        assert!(prefix_count_bounds(2, 2, 2, &q(1, 3), 4).is_err());
    }

    #[test]
    fn prefix_sum_matches_direct_sum() {
        for g in 1..=3u64 {
            for d in 2..=4u64 {
                for m in 1..=2u64 {
                    for n in 2..=6u64 {
                        let abs = q(2, m as i64);
                        let p = prefix_count_bounds(g, d, m, &abs, n).unwrap();
                        let t = 2 * g * (n - 2) * 2;
                        let direct: BigCount = (1..=t).map(|i| binomial(i + d - 2, d - 2)).sum();
                        assert_eq!(p.exact, direct);
                        assert!(p.exact <= p.cube);
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_examples() {
        let d = fixture();
        let empty = AnnihilatorProfile::new(1, 1, BTreeMap::new()).unwrap();
        assert_eq!(count_vanishing_indices(&d, &empty, 2, 5).unwrap().count, 0);

        let roots = BTreeMap::from([(vec![0], BTreeSet::from([0]))]);
        let p = AnnihilatorProfile::new(1, 1, roots).unwrap();
        let r = count_vanishing_indices(&d, &p, 2, 5).unwrap();
        assert_eq!(r.count, 1);
        assert!(r.within_bound());
    }

    #[test]
    fn one_root_everywhere_counts_chosen_fibers() {
        let d = fixture();
        let fibers = fiber_partition(&d, 2, 6).unwrap();
        // roots at delta_2 = delta_1 for every prefix delta_1 in 0..=4
        let roots = (0..=4).map(|x| (vec![x], BTreeSet::from([x]))).collect();
        let p = AnnihilatorProfile::new(1, 1, roots).unwrap();
        let expected: BigCount = (0..=4).map(|x| fibers.fiber(&[x, x])).sum();
        assert_eq!(
            count_vanishing_indices(&d, &p, 2, 6).unwrap().count,
            expected
        );
    }

    #[test]
    fn random_profiles_stay_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let d = fixture();
        for n in [4u64, 7, 12] {
            for _ in 0..100 {
                let l = rng.gen_range(1..=3u64);
                let mut roots = BTreeMap::new();
                for prefix in 0..=(n as i64 - 2) {
                    if rng.gen_bool(0.7) {
                        let set: BTreeSet<i64> =
                            (0..l).map(|_| rng.gen_range(0..=n as i64)).collect();
                        roots.insert(vec![prefix], set);
                    }
                }
                let p = AnnihilatorProfile::new(l, 1, roots).unwrap();
                let r = count_vanishing_indices(&d, &p, 2, n).unwrap();
                assert!(r.within_bound(), "n={n} {p:?}");
            }
        }
    }

    #[test]
    fn profile_validation() {
        let roots = BTreeMap::from([(vec![0], BTreeSet::from([0, 1]))]);
        assert!(AnnihilatorProfile::new(1, 1, roots).is_err());
        let wrong_prefix =
            AnnihilatorProfile::new(1, 1, BTreeMap::from([(vec![0, 0], BTreeSet::from([0]))]))
                .unwrap();
        assert!(count_vanishing_indices(&fixture(), &wrong_prefix, 2, 4).is_err());
    }

    #[test]
    fn profile_json_round_trip() {
        let json = r#"{"l":2,"m":3,"roots":{"0":[1,-2],"-1":[0]}}"#;
        let p: AnnihilatorProfile = serde_json::from_str(json).unwrap();
        assert_eq!(p.roots[&vec![-1]], BTreeSet::from([0]));
        let back: AnnihilatorProfile =
            serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(
            serde_json::from_str::<AnnihilatorProfile>(r#"{"l":1,"m":1,"roots":{"0":[1,2]}}"#)
                .is_err()
        );
    }

    #[test]
    fn h2_examples() {
        let direct = |b: BigRational| H2Params::Direct { b };
        assert_eq!(h2_bound_per_degree(2, &direct(q(0, 1)), 10).unwrap(), 0);
        assert_eq!(h2_bound_per_degree(2, &direct(q(1, 1)), 10).unwrap(), 1000);
        let split = H2Params::Split {
            m: 2,
            a: q(3, 1),
            a_prime: q(1, 1),
        };
        assert_eq!(h2_bound_per_degree(2, &split, 2).unwrap(), 56);
        assert_eq!(h2_bound_per_degree(2, &direct(q(1, 3)), 2).unwrap(), 3);
        assert!(h2_bound_per_degree(2, &direct(q(-1, 1)), 2).is_err());
    }

    #[test]
    fn fiber_report_json_round_trip() {
        let r = fiber_partition(&fixture(), 2, 6).unwrap();
        let back: FiberReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
