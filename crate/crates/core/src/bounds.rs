//! Selmer-side upper bound against the de Rham-side lower bound, degree by degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{kn_upper_bound, BigCount};
use crate::eigen::{sn_minus_dim, wdr_lower_bound};
use crate::error::{domain, Error, Result};
use crate::zeros::{h2_bound_per_degree, H2Params};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub g: u64,
    pub h2: H2Params,
    /// Selmer-side contribution of degrees 1 and 2.
    pub c0: u64,
    pub horizon: u64,
}

impl BoundParams {
    pub fn new(g: u64, h2: H2Params, c0: u64, horizon: u64) -> Result<Self> {
        let p = BoundParams { g, h2, c0, horizon };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g < 2 {
            return Err(Error::InvalidInput(format!(
                "g must be at least 2 (got {})",
                self.g
            )));
        }
        if self.horizon < 3 {
            return Err(Error::InvalidInput(format!(
                "horizon must be at least 3 (got {})",
                self.horizon
            )));
        }
        // surfaces negative constants before any row is computed
        h2_bound_per_degree(self.g, &self.h2, 3).map(drop)
    }
}

/// `c0 + sum_{i=3}^{n} [dim S_i^- + K_i bound] + H^2 bound(n)`.
pub fn selmer_upper(params: &BoundParams, n: u64) -> Result<BigCount> {
    if n < 3 {
        return Err(domain("selmer_upper", "stated for n >= 3"));
    }
    let g = params.g;
    let mut total = BigCount::from(params.c0);
    for i in 3..=n {
        total += sn_minus_dim(g, i)? + kn_upper_bound(g, i)?;
    }
    Ok(total + h2_bound_per_degree(g, &params.h2, n)?)
}

pub fn local_lower(g: u64, n: u64) -> Result<BigCount> {
    wdr_lower_bound(g, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverRow {
    pub n: u64,
    pub upper: BigCount,
    pub lower: BigCount,
}

impl CrossoverRow {
    pub fn holds(&self) -> bool {
        self.upper < self.lower
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub g: u64,
    pub c0: u64,
    pub h2_coefficient: String,
    pub horizon: u64,
    /// First degree from which `upper < lower` holds through the horizon.
    pub n0: Option<u64>,
    pub leading_ok: bool,
    /// Leading coefficients of `n^{2g} / (2g)!` on each side.
    pub leading_upper: String,
    pub leading_lower: String,
    pub diagnostic: Option<String>,
    pub trace: Vec<CrossoverRow>,
}

pub fn find_crossover(params: &BoundParams) -> Result<CrossoverReport> {
    let g = params.g;
    find_crossover_with(params, |n| selmer_upper(params, n), |n| local_lower(g, n))
}

/// [`find_crossover`] with caller-supplied bound functions.
pub fn find_crossover_with<U, L>(
    params: &BoundParams,
    upper: U,
    lower: L,
) -> Result<CrossoverReport>
where
    U: Fn(u64) -> Result<BigCount> + Sync,
    L: Fn(u64) -> Result<BigCount> + Sync,
{
    params.validate()?;
    let trace = (3..=params.horizon)
        .into_par_iter()
        .map(|n| {
            Ok(CrossoverRow {
                n,
                upper: upper(n)?,
                lower: lower(n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let suffix = trace.iter().rev().take_while(|r| r.holds()).count();
    let n0 = (suffix > 0).then(|| trace[trace.len() - suffix].n);
    let diagnostic = match n0 {
        Some(_) => None,
        None if trace.iter().any(CrossoverRow::holds) => Some(format!(
            "horizon exceeded: upper < lower at some n but not at n = {}",
            params.horizon
        )),
        None => Some(format!(
            "horizon exceeded: upper >= lower for every n <= {}",
            params.horizon
        )),
    };
    let (lu, ll) = leading_coefficients(params.g);
    Ok(CrossoverReport {
        g: params.g,
        c0: params.c0,
        h2_coefficient: params.h2.coefficient().to_string(),
        horizon: params.horizon,
        n0,
        leading_ok: leading_coeff_check(params.g),
        leading_upper: lu.to_string(),
        leading_lower: ll.to_string(),
        diagnostic,
        trace,
    })
}

/// `((2g - 1) / 2, 2g - 2)`.
fn leading_coefficients(g: u64) -> (BigRational, BigRational) {
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let g = g as i64;
    (int(2 * g - 1) / int(2), int(2 * g - 2))
}

/// Whether the upper bound's leading coefficient is strictly smaller.
pub fn leading_coeff_check(g: u64) -> bool {
    let (upper, lower) = leading_coefficients(g);
    upper < lower
}
