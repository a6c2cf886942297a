//! Graded dimensions of the free metabelian Lie algebra `N' = L'/I`, with
//! `I = [[L', L'], [L', L']]`, and of the surface quotient `N = L'/(I + R)`,
//! where `R` is the ideal generated by `omega`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    relation_image_upper_bound, zn_n_lower_bound, zn_nprime_formula, BigCount,
};
use crate::error::{Error, Result};
use crate::hall::h1_monomials;
use crate::oracle::{expand_row, Oracle, Pairing, Subspace, SurfaceRelation};

/// One degree of the quotient tower, exact oracle values next to the formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDimRecord {
    pub g: usize,
    pub n: usize,
    pub dim_l: BigCount,
    pub dim_i: BigCount,
    pub dim_i_plus_r: BigCount,
    pub dim_znprime: BigCount,
    pub dim_zn: BigCount,
    pub formula_znprime: BigCount,
    pub lower_bound_zn: BigCount,
    pub relation_image_exact: BigCount,
    pub relation_image_bound: BigCount,
}

impl QuotientDimRecord {
    /// `dim_zn - lower_bound_zn`; negative means the lower bound failed.
    pub fn slack(&self) -> num_bigint::BigInt {
        self.dim_zn.diff(&self.lower_bound_zn)
    }

    /// `relation_image_bound - relation_image_exact`.
    pub fn relation_slack(&self) -> num_bigint::BigInt {
        self.relation_image_bound.diff(&self.relation_image_exact)
    }

    pub fn lower_bound_violated(&self) -> bool {
        self.dim_zn < self.lower_bound_zn
    }

    pub fn relation_bound_violated(&self) -> bool {
        self.relation_image_exact > self.relation_image_bound
    }

    pub fn formula_mismatch(&self) -> bool {
        self.dim_znprime != self.formula_znprime
    }

    pub fn is_consistent(&self) -> bool {
        !self.lower_bound_violated() && !self.relation_bound_violated() && !self.formula_mismatch()
    }
}

/// Exact oracle computations for one genus.
#[derive(Clone, Debug)]
pub struct QuotientDims {
    oracle: Oracle,
    relation: SurfaceRelation,
}

impl QuotientDims {
    pub fn new(oracle: Oracle, g: usize, pairing: Pairing) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidInput("genus must be at least 1".into()));
        }
        Ok(QuotientDims {
            oracle,
            relation: SurfaceRelation::new(g, pairing),
        })
    }

    pub fn genus(&self) -> usize {
        self.relation.genus()
    }

    fn k(&self) -> usize {
        self.relation.generators()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        self.oracle.budget().check(self.k(), n)
    }

    /// The degree-`n` piece of `I`.
    pub fn metabelian_kernel(&self, n: usize) -> Result<Subspace> {
        self.check(n)?;
        self.oracle.derived_piece(self.k(), 3, n)
    }

    /// The degree-`n` piece of `I + R`.
    pub fn surface_kernel(&self, n: usize) -> Result<Subspace> {
        let mut space = self.metabelian_kernel(n)?;
        if n >= 2 {
            let rel = self.oracle.relation_piece(&self.relation, n)?;
            for r in rel.generator_rows() {
                space.insert_row(r.clone())?;
            }
        }
        Ok(space)
    }

    /// `dim Z_n(N')`: rank of `L'(n)` modulo `I`.
    pub fn zn_nprime_exact(&self, n: usize) -> Result<BigCount> {
        let free = self.oracle.free_piece(self.k(), n)?;
        let i = self.metabelian_kernel(n)?;
        Ok(BigCount::from(free.rank() - i.rank()))
    }

    /// `dim Z_n(N)`: rank of `L'(n)` modulo `I + R`.
    pub fn zn_n_exact(&self, n: usize) -> Result<BigCount> {
        let free = self.oracle.free_piece(self.k(), n)?;
        let ir = self.surface_kernel(n)?;
        Ok(BigCount::from(free.rank() - ir.rank()))
    }

    /// All dimensions of degree `n`, with formula values (degree 1 is the
    /// abelianization, `2g`, on both sides).
    pub fn check_lower_bound(&self, n: usize) -> Result<QuotientDimRecord> {
        self.check(n)?;
        let g = self.genus();
        let dim_l = self.oracle.free_piece(self.k(), n)?.rank();
        let i = self.metabelian_kernel(n)?;
        let dim_i = i.rank();
        let dim_ir = self.surface_kernel(n)?.rank();
        let (formula, lower, bound) = if n >= 2 {
            let (g, n) = (g as u64, n as u64);
            (
                zn_nprime_formula(g, n)?,
                zn_n_lower_bound(g, n)?,
                relation_image_upper_bound(g, n)?,
            )
        } else {
            let two_g = BigCount::from(2 * g);
            (two_g.clone(), two_g, BigCount::zero())
        };
        Ok(QuotientDimRecord {
            g,
            n,
            dim_l: dim_l.into(),
            dim_i: dim_i.into(),
            dim_i_plus_r: dim_ir.into(),
            dim_znprime: (dim_l - dim_i).into(),
            dim_zn: (dim_l - dim_ir).into(),
            formula_znprime: formula,
            lower_bound_zn: lower,
            relation_image_exact: (dim_ir - dim_i).into(),
            relation_image_bound: bound,
        })
    }

    /// Records for every degree in `degrees`, computed in parallel and returned
    /// in input order.
    pub fn records(&self, degrees: &[usize]) -> Vec<Result<QuotientDimRecord>> {
        degrees
            .par_iter()
            .map(|&n| self.check_lower_bound(n))
            .collect()
    }

    /// Whether the left-normed monomials `H_1(n)` stay independent modulo `I`.
    ///
    /// The degree-`n` part of `(L')^(n+1)` vanishes (that subalgebra starts in
    /// degree `2^n > n`), so independence from `I` is the whole statement.
    pub fn verify_h1_independence(&self, n: usize) -> Result<H1Report> {
        self.check(n)?;
        let h1 = h1_monomials(self.genus(), n)?;
        let i = self.metabelian_kernel(n)?;
        let mut joint: Subspace = i.clone();
        let kk = self.k() as u64;
        for m in &h1 {
            joint.insert_row(expand_row(m, kk))?;
        }
        let independent = joint.rank() == h1.len() + i.rank();
        Ok(H1Report {
            g: self.genus(),
            n,
            h1_count: h1.len(),
            dim_i: i.rank(),
            joint_rank: joint.rank(),
            independent,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    pub g: usize,
    pub n: usize,
    pub h1_count: usize,
    pub dim_i: usize,
    pub joint_rank: usize,
    pub independent: bool,
}

pub fn zn_nprime_exact(g: usize, n: usize) -> Result<BigCount> {
    QuotientDims::new(Oracle::default(), g, Pairing::default())?.zn_nprime_exact(n)
}

pub fn zn_n_exact(g: usize, n: usize) -> Result<BigCount> {
    QuotientDims::new(Oracle::default(), g, Pairing::default())?.zn_n_exact(n)
}

pub fn check_lower_bound(g: usize, n: usize) -> Result<QuotientDimRecord> {
    QuotientDims::new(Oracle::default(), g, Pairing::default())?.check_lower_bound(n)
}

pub fn verify_h1_independence(g: usize, n: usize) -> Result<bool> {
    Ok(QuotientDims::new(Oracle::default(), g, Pairing::default())?
        .verify_h1_independence(n)?
        .independent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metabelian_examples() {
        assert_eq!(zn_nprime_exact(2, 4).unwrap(), 45);
        assert_eq!(zn_nprime_exact(2, 3).unwrap(), 20);
        assert_eq!(zn_nprime_exact(2, 1).unwrap(), 4);
    }

    #[test]
    fn surface_examples() {
        assert_eq!(zn_n_exact(2, 2).unwrap(), 5);
        assert_eq!(zn_n_exact(2, 3).unwrap(), 16);
        assert_eq!(zn_n_exact(1, 2).unwrap(), 0);
        assert_eq!(zn_n_exact(2, 1).unwrap(), 4);
    }

    #[test]
    fn record_examples() {
        let r = check_lower_bound(2, 3).unwrap();
        assert_eq!(r.dim_zn, 16);
        assert_eq!(r.lower_bound_zn, 16);
        assert_eq!(r.slack(), 0.into());
        assert!(r.is_consistent());

        let r = check_lower_bound(2, 2).unwrap();
        assert_eq!(
            (r.dim_zn.clone(), r.lower_bound_zn.clone()),
            (5u64.into(), 5u64.into())
        );

        let r = check_lower_bound(2, 4).unwrap();
        assert!(r.dim_zn >= 35u64);
        assert_eq!(r.slack(), r.dim_zn.diff(&BigCount::from(35u64)));
        assert_eq!(
            r.dim_znprime.diff(&BigCount::zero()),
            r.dim_l.diff(&r.dim_i)
        );
        assert_eq!(
            r.relation_image_exact.diff(&BigCount::zero()),
            r.dim_i_plus_r.diff(&r.dim_i)
        );
    }

    #[test]
    fn h1_independence_examples() {
        assert!(verify_h1_independence(2, 3).unwrap());
        assert!(verify_h1_independence(2, 4).unwrap());
        assert!(verify_h1_independence(2, 2).unwrap());
        let q = QuotientDims::new(Oracle::default(), 2, Pairing::Consecutive).unwrap();
        let r = q.verify_h1_independence(4).unwrap();
        assert_eq!((r.h1_count, r.dim_i, r.joint_rank), (45, 15, 60));
    }

    #[test]
    fn pairing_choice_does_not_change_dimensions() {
        for n in 2..=5 {
            let a = QuotientDims::new(Oracle::default(), 2, Pairing::Consecutive)
                .unwrap()
                .zn_n_exact(n)
                .unwrap();
            let b = QuotientDims::new(Oracle::default(), 2, Pairing::Split)
                .unwrap()
                .zn_n_exact(n)
                .unwrap();
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn adding_generators_never_shrinks_spans() {
        // Re-inserting a kernel's own generators, or the relation piece twice,
        // leaves ranks unchanged; adding R only grows I.
        let q = QuotientDims::new(Oracle::default(), 2, Pairing::Consecutive).unwrap();
        for n in 2..=5 {
            let i = q.metabelian_kernel(n).unwrap();
            let ir = q.surface_kernel(n).unwrap();
            assert!(ir.rank() >= i.rank());
            let mut again = ir.clone();
            for r in i.generator_rows().iter().chain(ir.generator_rows()) {
                assert!(!again.insert_row(r.clone()).unwrap());
            }
            assert_eq!(again.rank(), ir.rank());
        }
    }

    #[test]
    fn budget_errors_propagate() {
        assert!(matches!(zn_n_exact(4, 2), Err(Error::BudgetExceeded(_))));
        assert!(matches!(
            zn_nprime_exact(2, 9),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
