use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::vector::{Row, Shape, Word, WordVector, LIMIT};
use crate::error::{Error, Result};

/// A subspace of the degree-`n` tensor algebra, held in echelon form.
///
/// Rows are primitive integer vectors with pairwise distinct leading words
/// (leading = lexicographically smallest word with a nonzero coefficient), so the
/// row count is the rank and membership is decided by leading-term reduction.
/// [`Subspace::reduced_basis`] gives the fully reduced row-echelon form over the
/// rationals.
#[derive(Clone, Debug)]
pub struct Subspace {
    shape: Shape,
    rows: Vec<Row>,
    pivots: HashMap<u64, usize>,
    generators: Vec<Row>,
}

impl Subspace {
    /// Empty subspace of degree-`degree` words over `k` letters.
    pub fn new(k: usize, degree: usize) -> Self {
        Subspace {
            shape: Shape::new(k as u64, degree),
            rows: Vec::new(),
            pivots: HashMap::new(),
            generators: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.shape.degree
    }

    pub fn alphabet(&self) -> usize {
        self.shape.k as usize
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` by leading terms until its leading word is not a pivot.
    fn reduce(&self, mut v: Row) -> Result<Row> {
        while let Some((lead, _)) = v.lead() {
            match self.pivots.get(&lead) {
                Some(&ri) => v = eliminate(&v, &self.rows[ri])?,
                None => break,
            }
        }
        Ok(v)
    }

    /// Inserts a vector; returns whether it enlarged the subspace.
    pub(crate) fn insert_row(&mut self, v: Row) -> Result<bool> {
        let mut original = v.clone();
        original.make_primitive();
        let mut reduced = self.reduce(v)?;
        if reduced.is_zero() {
            return Ok(false);
        }
        reduced.make_primitive();
        let lead = reduced.lead().expect("nonzero").0;
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(reduced);
        self.generators.push(original);
        Ok(true)
    }

    pub(crate) fn contains_row(&self, v: &Row) -> Result<bool> {
        Ok(self.reduce(v.clone())?.is_zero())
    }

    /// Inserts a rational vector; returns whether it was independent.
    pub fn insert(&mut self, v: &WordVector) -> Result<bool> {
        self.check_degree(v)?;
        let row = Row::from_word_vector(v, &self.shape)?;
        self.insert_row(row)
    }

    pub fn contains(&self, v: &WordVector) -> Result<bool> {
        self.check_degree(v)?;
        let row = Row::from_word_vector(v, &self.shape)?;
        self.contains_row(&row)
    }

    fn check_degree(&self, v: &WordVector) -> Result<()> {
        if v.degree() != self.shape.degree {
            return Err(Error::MixedDegree {
                expected: self.shape.degree,
                found: v.degree(),
            });
        }
        if usize::from(v.max_generator()) > self.shape.k as usize {
            return Err(Error::InvalidInput(format!(
                "vector uses generator e{} outside an alphabet of {}",
                v.max_generator(),
                self.shape.k
            )));
        }
        Ok(())
    }

    /// The independent inserted vectors, in insertion order (primitive integer form).
    pub(crate) fn generator_rows(&self) -> &[Row] {
        &self.generators
    }

    pub fn generators(&self) -> Vec<WordVector> {
        self.generators
            .iter()
            .map(|r| r.to_word_vector(&self.shape))
            .collect()
    }

    /// Reduced row-echelon basis over the rationals: leading coefficients 1,
    /// every pivot column zero in all other rows, rows sorted by leading word.
    pub fn reduced_basis(&self) -> Vec<WordVector> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].lead().expect("nonzero").0);
        let mut rows: Vec<Vec<(u64, BigRational)>> = order
            .iter()
            .map(|&i| {
                let r = &self.rows[i];
                let lead = BigRational::from_integer(BigInt::from(r.lead().unwrap().1));
                r.terms
                    .iter()
                    .map(|&(k, c)| (k, BigRational::from_integer(BigInt::from(c)) / &lead))
                    .collect()
            })
            .collect();
        // Back substitution, last pivot first.
        for i in (0..rows.len()).rev() {
            let pivot_key = rows[i][0].0;
            let pivot_row = rows[i].clone();
            for (j, row) in rows.iter_mut().enumerate() {
                if j == i {
                    continue;
                }
                let Some(pos) = row.iter().position(|t| t.0 == pivot_key) else {
                    continue;
                };
                let factor = row[pos].1.clone();
                let mut merged: std::collections::BTreeMap<u64, BigRational> =
                    row.drain(..).collect();
                for (key, c) in &pivot_row {
                    let slot = merged.entry(*key).or_insert_with(BigRational::zero);
                    *slot -= c * &factor;
                }
                *row = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        rows.into_iter()
            .map(|r| {
                let mut v = WordVector::zero(self.shape.degree);
                for (key, c) in r {
                    v.add_term(self.shape.decode(key), c);
                }
                v
            })
            .collect()
    }

    /// Tab-separated dump of the reduced basis: `row`, `word`, numerator,
    /// denominator, one line per nonzero coefficient.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("row\tword\tnumerator\tdenominator\n");
        for (i, v) in self.reduced_basis().iter().enumerate() {
            for (w, c) in v.terms() {
                let _ = writeln!(out, "{i}\t{w}\t{}\t{}", c.numer(), c.denom());
            }
        }
        out
    }

    pub fn word_at(&self, key: u64) -> Word {
        self.shape.decode(key)
    }
}

/// Removes the leading term of `v` using `row` (same leading word):
/// `v <- (a/g) v - (b/g) row`, then divides out the content.
fn eliminate(v: &Row, row: &Row) -> Result<Row> {
    let (_, b) = v.lead().expect("nonzero");
    let (_, a) = row.lead().expect("nonzero");
    let g = a.gcd(&b);
    let (fa, fb) = (a / g, b / g);
    let mut out = Vec::with_capacity(v.terms.len() + row.terms.len());
    let (mut i, mut j) = (0, 0);
    let (x, y) = (&v.terms, &row.terms);
    let mul = |c: i128, f: i128| c.checked_mul(f).ok_or(Error::Overflow);
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) => p.0.cmp(&q.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, _) => std::cmp::Ordering::Greater,
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((x[i].0, mul(x[i].1, fa)?));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((y[j].0, mul(-y[j].1, fb)?));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = mul(x[i].1, fa)?
                    .checked_sub(mul(y[j].1, fb)?)
                    .ok_or(Error::Overflow)?;
                if c != 0 {
                    out.push((x[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    let mut r = Row { terms: out };
    r.make_primitive();
    if r.max_abs() > LIMIT {
        return Err(Error::Overflow);
    }
    Ok(r)
}

/// Exact rank of a list of vectors of one degree.
pub fn rank_of(vectors: &[WordVector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let k = vectors
        .iter()
        .map(|v| v.max_generator())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut space = Subspace::new(usize::from(k), first.degree());
    for v in vectors {
        space.insert(v)?;
    }
    Ok(space.rank())
}
