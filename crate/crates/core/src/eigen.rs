//! Sign counting under complex conjugation and Hodge-filtration counting.
//!
//! `V = V+ (+) V-` with `dim V+ = dim V- = g`; in the conjugation basis
//! `f_1..f_g` span `V+` and `f_{g+1}..f_{2g}` span `V-`. Conjugation acts on
//! `Sym^i(V+) (x) Sym^{m-i}(V-)` by `(-1)^(m-i)`.
//!
//! For the Hodge side, `b_1..b_g` span `F^0` in degree one; a left-normed
//! monomial lies in `F^0` only when every letter does.
//!
//! The surface relation `omega` spans the Tate-twisted line inside `Lambda^2 V`,
//! on which conjugation acts by `-1`: conjugation is anti-symplectic, so in the
//! conjugation basis `omega = sum_i [f_i, f_{g+i}]`, each term pairing a plus
//! vector with a minus vector.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    binomial, kn_upper_bound, left_normed_count, zn_n_lower_bound, BigCount,
};
use crate::error::{domain, Result};
use crate::oracle::{LieMonomial, Oracle, Pairing, SurfaceRelation};

/// Dimensions of the `+1` and `-1` eigenspaces of conjugation on `Sym^m(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSplit {
    pub m: u64,
    pub plus: BigCount,
    pub minus: BigCount,
}

impl EigenSplit {
    pub fn total(&self) -> BigCount {
        self.plus.clone() + &self.minus
    }
}

/// Plus generators `f_1..f_g`, minus generators `f_{g+1}..f_{2g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjugationBasis {
    pub g: usize,
}

impl ConjugationBasis {
    /// `+1` or `-1` on the generator `f_index`.
    pub fn sign(&self, index: u16) -> i8 {
        if usize::from(index) <= self.g {
            1
        } else {
            -1
        }
    }

    /// Sign of a monomial: product of the signs of its letters.
    pub fn monomial_sign(&self, m: &LieMonomial) -> i8 {
        m.leaves().iter().map(|l| self.sign(l.get())).product()
    }

    /// The surface relation written in this basis.
    pub fn relation(&self) -> SurfaceRelation {
        SurfaceRelation::new(self.g, Pairing::Split)
    }
}

/// `b_1..b_g` span `F^0` inside `b_1..b_{2g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeFlag {
    pub g: usize,
}

impl HodgeFlag {
    pub fn in_f0(&self, index: u16) -> bool {
        usize::from(index) <= self.g
    }

    /// A relation compatible with the flag: `F^0` is Lagrangian, so `omega`
    /// pairs each `b_i` (`i <= g`) with `b_{g+i}`.
    pub fn relation(&self) -> SurfaceRelation {
        SurfaceRelation::new(self.g, Pairing::Split)
    }
}

pub fn sym_eigen_dims(g: u64, m: u64) -> EigenSplit {
    assert!(g >= 1, "genus must be at least 1");
    let mut plus = BigCount::zero();
    let mut minus = BigCount::zero();
    for i in 0..=m {
        let piece = binomial(i + g - 1, g - 1) * binomial(m - i + g - 1, g - 1);
        if (m - i).is_multiple_of(2) {
            plus += piece;
        } else {
            minus += piece;
        }
    }
    EigenSplit { m, plus, minus }
}

fn require(formula: &'static str, ok: bool, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(domain(formula, reason))
    }
}

/// `dim S_n^- = g dim Sym^{n-2}(V)^+ + (g - 1) dim Sym^{n-2}(V)^-`.
pub fn sn_minus_dim(g: u64, n: u64) -> Result<BigCount> {
    require("sn_minus_dim", g >= 1, "genus must be at least 1")?;
    require("sn_minus_dim", n >= 2, "stated for n >= 2")?;
    let split = sym_eigen_dims(g, n - 2);
    Ok(split.plus * g + split.minus * (g - 1))
}

/// Minus-part dimension of degrees 1 and 2 of `N`, by enumeration over the
/// conjugation basis: `g` from `V-`, plus the minus brackets `[f_i, f_j]`,
/// minus the line of `omega` (itself a minus vector).
pub fn low_degree_minus_dim(g: u64) -> BigCount {
    let basis = ConjugationBasis { g: g as usize };
    let top = 2 * g as u16;
    let degree_one = (1..=top).filter(|&i| basis.sign(i) < 0).count() as u64;
    let degree_two = (1..=top)
        .flat_map(|i| ((i + 1)..=top).map(move |j| (i, j)))
        .filter(|&(i, j)| basis.sign(i) * basis.sign(j) < 0)
        .count() as u64;
    BigCount::from(degree_one + degree_two - 1)
}

/// `c_2(g) + sum_{i=3}^{n} [dim S_i^- + K_i bound]`, a majorant of
/// `sum_{i <= n} dim Z_i(N)^-`.
pub fn minus_partial_sum_bound(g: u64, n: u64) -> Result<BigCount> {
    require(
        "minus_partial_sum_bound",
        g >= 2,
        "genus must be at least 2",
    )?;
    require("minus_partial_sum_bound", n >= 2, "stated for n >= 2")?;
    let mut total = low_degree_minus_dim(g);
    for i in 3..=n {
        total += sn_minus_dim(g, i)? + kn_upper_bound(g, i)?;
    }
    Ok(total)
}

/// Number of `H_1(n)` monomials with every letter in `F^0`:
/// `sum_{i=1}^{g} (i - 1) C(n - 3 + i, i - 1)`.
pub fn f0_count(g: u64, n: u64) -> Result<BigCount> {
    require("f0_count", g >= 1, "genus must be at least 1")?;
    require("f0_count", n >= 2, "stated for n >= 2")?;
    Ok(left_normed_count(g, n))
}

/// `C(g, 2) C(n + g - 3, g - 1)`.
pub fn f0_upper_bound(g: u64, n: u64) -> Result<BigCount> {
    require("f0_upper_bound", g >= 1, "genus must be at least 1")?;
    require("f0_upper_bound", n >= 2, "stated for n >= 2")?;
    Ok(binomial(g, 2) * binomial(n + g - 3, g - 1))
}

/// `dim W_2 / F^0 = g + [C(2g, 2) - 1 - C(g, 2)]`.
pub fn wdr2_dim(g: u64) -> Result<BigCount> {
    require("wdr2_dim", g >= 1, "genus must be at least 1")?;
    let degree_two = binomial(2 * g, 2)
        .checked_sub(&(binomial(g, 2) + BigCount::from(1u64)))
        .expect("C(2g,2) >= C(g,2) + 1 for g >= 1");
    Ok(BigCount::from(g) + degree_two)
}

/// `dim W_2/F^0 + sum_{i=3}^{n} max(0, lower(Z_i(N)) - F^0 bound(i))`.
pub fn wdr_lower_bound(g: u64, n: u64) -> Result<BigCount> {
    require("wdr_lower_bound", g >= 2, "genus must be at least 2")?;
    require("wdr_lower_bound", n >= 3, "stated for n >= 3")?;
    let mut total = wdr2_dim(g)?;
    for i in 3..=n {
        total += zn_n_lower_bound(g, i)?.saturating_sub(&f0_upper_bound(g, i)?);
    }
    Ok(total)
}

/// Degree-2 sign bookkeeping computed with the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTwoSigns {
    pub g: usize,
    /// Rank of the minus brackets `[f_i, f_j]`.
    pub minus_rank: usize,
    pub omega_is_minus: bool,
    pub omega_is_plus: bool,
    /// Minus part of `Lambda^2 V / <omega>`.
    pub quotient_minus: usize,
}

pub fn degree_two_signs_oracle(oracle: &Oracle, g: usize) -> Result<DegreeTwoSigns> {
    let basis = ConjugationBasis { g };
    let k = 2 * g;
    let (mut minus, mut plus) = (Vec::new(), Vec::new());
    for i in 1..=k as u16 {
        for j in (i + 1)..=k as u16 {
            let m = LieMonomial::left_normed(&[i, j]);
            if basis.monomial_sign(&m) < 0 {
                minus.push(m);
            } else {
                plus.push(m);
            }
        }
    }
    let minus_space = oracle.span_monomials(k, 2, &minus)?;
    let plus_space = oracle.span_monomials(k, 2, &plus)?;
    let omega = basis.relation().omega();
    let omega_is_minus = minus_space.contains(&omega)?;
    let omega_is_plus = plus_space.contains(&omega)?;
    let quotient_minus = minus_space.rank() - usize::from(omega_is_minus);
    Ok(DegreeTwoSigns {
        g,
        minus_rank: minus_space.rank(),
        omega_is_minus,
        omega_is_plus,
        quotient_minus,
    })
}

/// `dim W_2/F^0` from the oracle: `g` in degree one, and in degree two the rank
/// of `Lambda^2 V` modulo `omega` and the brackets of `F^0` generators.
pub fn wdr2_dim_oracle(oracle: &Oracle, g: usize) -> Result<BigCount> {
    let flag = HodgeFlag { g };
    let k = 2 * g;
    let free = oracle.free_piece(k, 2)?;
    let f0: Vec<LieMonomial> = (1..=k as u16)
        .flat_map(|i| ((i + 1)..=k as u16).map(move |j| (i, j)))
        .filter(|&(i, j)| flag.in_f0(i) && flag.in_f0(j))
        .map(|(i, j)| LieMonomial::left_normed(&[i, j]))
        .collect();
    let mut killed = oracle.span_monomials(k, 2, &f0)?;
    killed.insert(&flag.relation().omega())?;
    Ok(BigCount::from(g + free.rank() - killed.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(g: u64, m: u64) -> (BigCount, BigCount) {
        let s = sym_eigen_dims(g, m);
        (s.plus, s.minus)
    }

    fn bc(v: u64) -> BigCount {
        BigCount::from(v)
    }

    /// Direct enumeration of monomials f^alpha with |alpha| = m, weighted by
    /// (-1)^(alpha_{g+1} + ... + alpha_{2g}).
    fn enumerate_split(g: usize, m: u64) -> (u64, u64) {
        fn rec(
            slot: usize,
            len: usize,
            left: u64,
            minus_weight: u64,
            g: usize,
            acc: &mut (u64, u64),
        ) {
            if slot == len {
                if left == 0 {
                    if minus_weight.is_multiple_of(2) {
                        acc.0 += 1;
                    } else {
                        acc.1 += 1;
                    }
                }
                return;
            }
            for a in 0..=left {
                let w = if slot >= g {
                    minus_weight + a
                } else {
                    minus_weight
                };
                rec(slot + 1, len, left - a, w, g, acc);
            }
        }
        let mut acc = (0, 0);
        rec(0, 2 * g, m, 0, g, &mut acc);
        acc
    }

    #[test]
    fn split_examples() {
        assert_eq!(split(2, 3), (bc(10), bc(10)));
        assert_eq!(split(2, 2), (bc(6), bc(4)));
        for g in 1..=4 {
            assert_eq!(split(g, 0), (bc(1), bc(0)));
        }
    }

    #[test]
    fn split_totals_and_odd_symmetry() {
        for g in 1..=4u64 {
            for m in 0..=21u64 {
                let s = sym_eigen_dims(g, m);
                assert_eq!(s.total(), binomial(m + 2 * g - 1, 2 * g - 1), "g={g} m={m}");
                if m % 2 == 1 {
                    assert_eq!(s.plus, s.minus, "g={g} m={m}");
                }
            }
        }
    }

    #[test]
    fn multiplying_by_a_plus_vector_embeds_eigenspaces() {
        for g in 1..=4u64 {
            for m in 0..=20u64 {
                let (a, b) = (sym_eigen_dims(g, m), sym_eigen_dims(g, m + 1));
                assert!(a.plus <= b.plus && a.minus <= b.minus, "g={g} m={m}");
            }
        }
    }

    #[test]
    fn split_matches_enumeration() {
        for g in 1..=3u64 {
            for m in 0..=10u64 {
                let (p, q) = enumerate_split(g as usize, m);
                assert_eq!(split(g, m), (bc(p), bc(q)), "g={g} m={m}");
            }
        }
    }

    #[test]
    fn sn_minus_examples() {
        assert_eq!(sn_minus_dim(2, 4).unwrap(), 16);
        assert_eq!(sn_minus_dim(2, 5).unwrap(), 30);
        assert_eq!(sn_minus_dim(2, 2).unwrap(), 2);
        assert!(sn_minus_dim(2, 1).is_err());
    }

    #[test]
    fn sn_minus_odd_closed_form() {
        // n odd: (1/2)(2g - 1) C(n - 3 + 2g, 2g - 1)
        for g in 1..=5u64 {
            for n in (3..=31u64).step_by(2) {
                let twice = sn_minus_dim(g, n).unwrap() * 2;
                assert_eq!(twice, binomial(n + 2 * g - 3, 2 * g - 1) * (2 * g - 1));
            }
        }
    }

    #[test]
    fn low_degree_minus() {
        for g in 1..=6u64 {
            assert_eq!(low_degree_minus_dim(g), g + g * g - 1);
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(
            minus_partial_sum_bound(2, 2).unwrap(),
            low_degree_minus_dim(2)
        );
        assert_eq!(minus_partial_sum_bound(2, 2).unwrap(), 5);
        // sn_minus(2,3) = 6, kn(2,3) = 18
        assert_eq!(minus_partial_sum_bound(2, 3).unwrap(), 5 + 6 + 18);
        assert!(minus_partial_sum_bound(1, 5).is_err());
    }

    #[test]
    fn f0_examples() {
        assert_eq!(f0_count(2, 3).unwrap(), 2);
        assert_eq!(f0_count(2, 2).unwrap(), 1);
        assert_eq!(f0_count(3, 3).unwrap(), 8);
        assert_eq!(f0_upper_bound(2, 3).unwrap(), 2);
        assert_eq!(f0_upper_bound(2, 2).unwrap(), 1);
        assert_eq!(f0_upper_bound(3, 4).unwrap(), 18);
    }

    #[test]
    fn f0_count_below_bound() {
        for g in 1..=5 {
            for n in 2..=30 {
                assert!(
                    f0_count(g, n).unwrap() <= f0_upper_bound(g, n).unwrap(),
                    "g={g} n={n}"
                );
            }
        }
    }

    #[test]
    fn f0_count_matches_listing() {
        use crate::hall::h1_index_sequences;
        for g in 1..=3usize {
            for n in 2..=7usize {
                let inside = h1_index_sequences(2 * g, n)
                    .unwrap()
                    .iter()
                    .filter(|s| s.iter().all(|&i| HodgeFlag { g }.in_f0(i)))
                    .count() as u64;
                assert_eq!(f0_count(g as u64, n as u64).unwrap(), inside);
            }
        }
    }

    #[test]
    fn wdr2_examples() {
        assert_eq!(wdr2_dim(2).unwrap(), 6);
        assert_eq!(wdr2_dim(1).unwrap(), 1);
        assert_eq!(wdr2_dim(3).unwrap(), 14);
    }

    #[test]
    fn wdr2_agrees_with_oracle() {
        let oracle = Oracle::default();
        for g in 1..=3 {
            assert_eq!(
                wdr2_dim_oracle(&oracle, g).unwrap(),
                wdr2_dim(g as u64).unwrap()
            );
        }
    }

    #[test]
    fn degree_two_signs() {
        let oracle = Oracle::default();
        for g in 1..=3usize {
            let s = degree_two_signs_oracle(&oracle, g).unwrap();
            assert_eq!(s.minus_rank, g * g);
            assert!(s.omega_is_minus && !s.omega_is_plus);
            // degree-one minus part is g
            assert_eq!(
                low_degree_minus_dim(g as u64),
                (g + s.quotient_minus) as u64
            );
        }
    }

    #[test]
    fn wdr_lower_examples() {
        let w2 = wdr2_dim(2).unwrap();
        assert_eq!(wdr_lower_bound(2, 3).unwrap(), w2.clone() + bc(16 - 2));
        let f4 = f0_upper_bound(2, 4).unwrap();
        let step = bc(35).checked_sub(&f4).unwrap();
        assert_eq!(wdr_lower_bound(2, 4).unwrap(), w2 + bc(14) + step);
        assert!(wdr_lower_bound(2, 2).is_err());
        assert!(wdr_lower_bound(1, 5).is_err());
    }

    #[test]
    fn wdr_leading_coefficient_approaches_two_from_above() {
        // wdr_lower(2, n) * 4! / n^4 -> 2g - 2 = 2; the lower-order terms are positive
        let scaled = |n: u64| wdr_lower_bound(2, n).unwrap() * 24;
        let n4 = |n: u64| BigCount::from(n).pow(4);
        let v = scaled(200);
        assert!(v > n4(200) * 2);
        assert!(v * 10 <= n4(200) * 21);
        // ratio(n) > ratio(2n), compared as scaled(n) * (2n)^4 > scaled(2n) * n^4
        for n in [25u64, 50, 100, 200] {
            assert!(scaled(n) * n4(2 * n) > scaled(2 * n) * n4(n), "n={n}");
        }
    }
}
