//! Exact integer counting: binomials, the Möbius function, Witt dimensions and
//! the closed-form graded-dimension counts for free metabelian and
//! surface-relation Lie algebras.
//!
//! All counts are [`BigCount`]s; nothing here touches floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Result};

/// An exact nonnegative dimension count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn checked_sub(&self, other: &BigCount) -> Option<BigCount> {
        if self.0 >= other.0 {
            Some(BigCount(&self.0 - &other.0))
        } else {
            None
        }
    }

    /// `max(self - other, 0)`.
    pub fn saturating_sub(&self, other: &BigCount) -> BigCount {
        self.checked_sub(other).unwrap_or_default()
    }

    pub fn pow(&self, exp: u32) -> BigCount {
        BigCount(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Signed difference `self - other`.
    pub fn diff(&self, other: &BigCount) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.0.clone())
            - BigInt::from_biguint(Sign::Plus, other.0.clone())
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<usize> for BigCount {
    fn from(v: usize) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for BigCount {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&BigUint::from(*other))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse::<BigUint>().map(BigCount)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(self.0 + &rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for BigCount {
    fn add_assign(&mut self, rhs: BigCount) {
        self.0 += rhs.0;
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl Mul<u64> for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: u64) -> BigCount {
        BigCount(self.0 * rhs)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

// Counts that fit in a u64 serialize as JSON numbers; larger ones as decimal
// strings so no consumer silently rounds them.
impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(BigCount::from(v)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    BigCount(acc)
}

/// The Möbius function.
pub fn mobius(mut n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Dimension of the degree-`n` part of the free Lie algebra on `k` generators,
/// `(1/n) * sum_{d | n} mu(d) k^(n/d)`.
pub fn witt_dimension(k: u64, n: u64) -> BigCount {
    assert!(
        k >= 1 && n >= 1,
        "witt_dimension requires k >= 1 and n >= 1"
    );
    let base = BigInt::from(k);
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = num_traits::pow(base.clone(), (n / d) as usize);
        if mu > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let q = total / BigInt::from(n);
    BigCount(q.to_biguint().expect("Witt dimension is nonnegative"))
}

fn require_degree_two(formula: &'static str, n: u64) -> Result<()> {
    if n < 2 {
        return Err(domain(formula, format!("stated for n >= 2, got n = {n}")));
    }
    Ok(())
}

fn require_genus(formula: &'static str, g: u64) -> Result<()> {
    if g < 1 {
        return Err(domain(formula, "genus must be at least 1"));
    }
    Ok(())
}

/// `sum_{i=1}^{top} (i - 1) C(n - 3 + i, i - 1)`, the number of left-normed
/// monomials `[[e_{i1}, e_{i2}], ..., e_{in}]` with `i1 < i2 >= i3 >= ... >= in`
/// and all indices at most `top`. Requires `n >= 2`.
pub(crate) fn left_normed_count(top: u64, n: u64) -> BigCount {
    debug_assert!(n >= 2);
    (1..=top)
        .map(|i| binomial(n + i - 3, i - 1) * (i - 1))
        .sum()
}

/// Dimension of the degree-`n` graded piece of the free metabelian Lie algebra
/// on `2g` generators: `sum_{i=1}^{2g} (i - 1) C(n - 3 + i, i - 1)`.
pub fn zn_nprime_formula(g: u64, n: u64) -> Result<BigCount> {
    require_genus("zn_nprime_formula", g)?;
    require_degree_two("zn_nprime_formula", n)?;
    Ok(left_normed_count(2 * g, n))
}

/// Number of non-increasing `(n-2)`-tuples over `2g` letters, `C(n - 3 + 2g, 2g - 1)`;
/// bounds the image of the relation ideal in the metabelian quotient.
pub fn relation_image_upper_bound(g: u64, n: u64) -> Result<BigCount> {
    require_genus("relation_image_upper_bound", g)?;
    require_degree_two("relation_image_upper_bound", n)?;
    Ok(binomial(n + 2 * g - 3, 2 * g - 1))
}

/// `(2g - 2) C(n - 3 + 2g, 2g - 1) + sum_{i=1}^{2g-1} (i - 1) C(n - 3 + i, i - 1)`.
pub fn zn_n_lower_bound(g: u64, n: u64) -> Result<BigCount> {
    require_genus("zn_n_lower_bound", g)?;
    require_degree_two("zn_n_lower_bound", n)?;
    Ok(binomial(n + 2 * g - 3, 2 * g - 1) * (2 * g - 2) + left_normed_count(2 * g - 1, n))
}

/// `C(2g, 2) C(n - 4 + 2g, 2g - 2)`, the size bound on the remainder `K_n`.
pub fn kn_upper_bound(g: u64, n: u64) -> Result<BigCount> {
    require_genus("kn_upper_bound", g)?;
    require_degree_two("kn_upper_bound", n)?;
    Ok(binomial(2 * g, 2) * binomial(n + 2 * g - 4, 2 * g - 2))
}
