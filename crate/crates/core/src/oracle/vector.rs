use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::{GeneratorIndex, LieMonomial};
use crate::error::{Error, Result};

/// A word in the tensor algebra. Words of equal length compare lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<GeneratorIndex>);

impl Word {
    pub fn from_indices(indices: &[u16]) -> Self {
        Word(indices.iter().map(|&i| GeneratorIndex::new(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// An exact rational linear combination of words of one degree.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordVector {
    degree: usize,
    terms: BTreeMap<Word, BigRational>,
}

impl WordVector {
    pub fn zero(degree: usize) -> Self {
        WordVector {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> BigRational {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Adds `coeff * word`. Panics if the word has the wrong length.
    pub fn add_term(&mut self, word: Word, coeff: BigRational) {
        assert_eq!(
            word.len(),
            self.degree,
            "word length must match the vector degree"
        );
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scaled(&self, factor: &BigRational) -> WordVector {
        let mut out = WordVector::zero(self.degree);
        if factor.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c * factor);
        }
        out
    }

    /// `self + other`; panics on a degree mismatch.
    pub fn plus(&self, other: &WordVector) -> WordVector {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn minus(&self, other: &WordVector) -> WordVector {
        self.plus(&other.scaled(&-BigRational::one()))
    }

    pub fn max_generator(&self) -> u16 {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().map(|g| g.get()))
            .max()
            .unwrap_or(0)
    }
}

/// Expands a Lie monomial into the tensor algebra via `[x, y] = xy - yx`.
pub fn expand(t: &LieMonomial) -> WordVector {
    let k = u64::from(t.max_generator());
    let shape = Shape::new(k, t.degree());
    let row = expand_row(t, k);
    row.to_word_vector(&shape)
}

/// Dense key encoding of fixed-length words: base-`k` digits, most significant
/// first, so numeric order equals lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub k: u64,
    pub degree: usize,
}

impl Shape {
    pub fn new(k: u64, degree: usize) -> Self {
        Shape {
            k: k.max(1),
            degree,
        }
    }

    pub fn encode(&self, word: &Word) -> u64 {
        debug_assert_eq!(word.len(), self.degree);
        word.0.iter().fold(0, |acc, g| acc * self.k + g.digit())
    }

    pub fn decode(&self, mut key: u64) -> Word {
        let mut letters = vec![GeneratorIndex::new(1); self.degree];
        for slot in letters.iter_mut().rev() {
            *slot = GeneratorIndex::new((key % self.k) as u16 + 1);
            key /= self.k;
        }
        Word(letters)
    }
}

/// Sparse integer vector over word keys, sorted by key, no zero entries.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Row {
    pub terms: Vec<(u64, i128)>,
}

impl Row {
    pub fn from_unsorted(mut terms: Vec<(u64, i128)>) -> Row {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u64, i128)> = Vec::with_capacity(terms.len());
        for (key, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == key => last.1 += c,
                _ => out.push((key, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Row { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(u64, i128)> {
        self.terms.first().copied()
    }

    /// Concatenation product `self * other` where `other` has `other_degree` letters.
    pub fn concat(&self, other: &Row, k: u64, other_degree: usize) -> Row {
        let shift = k.pow(other_degree as u32);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(a, x) in &self.terms {
            for &(b, y) in &other.terms {
                terms.push((a * shift + b, x * y));
            }
        }
        Row::from_unsorted(terms)
    }

    /// `[self, other] = self*other - other*self` for homogeneous inputs.
    pub fn bracket(&self, self_degree: usize, other: &Row, other_degree: usize, k: u64) -> Row {
        let mut uv = self.concat(other, k, other_degree).terms;
        let vu = other.concat(self, k, self_degree);
        uv.extend(vu.terms.into_iter().map(|(key, c)| (key, -c)));
        Row::from_unsorted(uv)
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        let mut g: i128 = 0;
        for t in &self.terms {
            g = g.gcd(&t.1);
            if g == 1 {
                break;
            }
        }
        let sign = match self.lead() {
            Some((_, c)) if c < 0 => -1,
            _ => 1,
        };
        if g > 1 || sign < 0 {
            let d = g.max(1) * sign;
            for t in &mut self.terms {
                t.1 /= d;
            }
        }
    }

    pub fn to_word_vector(&self, shape: &Shape) -> WordVector {
        let mut v = WordVector::zero(shape.degree);
        for &(key, c) in &self.terms {
            v.terms.insert(
                shape.decode(key),
                BigRational::from_integer(BigInt::from(c)),
            );
        }
        v
    }

    /// Clears denominators; the resulting row spans the same line.
    pub fn from_word_vector(v: &WordVector, shape: &Shape) -> Result<Row> {
        let lcm = v
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut terms = Vec::with_capacity(v.terms.len());
        for (w, c) in &v.terms {
            let scaled = (c * BigRational::from_integer(lcm.clone())).to_integer();
            let as_i: i128 = i128::try_from(&scaled).map_err(|_| Error::Overflow)?;
            if as_i.unsigned_abs() > LIMIT {
                return Err(Error::Overflow);
            }
            terms.push((shape.encode(w), as_i));
        }
        let mut row = Row::from_unsorted(terms);
        row.make_primitive();
        Ok(row)
    }

    pub fn max_abs(&self) -> u128 {
        self.terms
            .iter()
            .map(|t| t.1.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

/// Coefficients stay below this so products of two of them fit in an i128.
pub(crate) const LIMIT: u128 = 1 << 62;

/// Recursive expansion into integer rows over an alphabet of size `k`.
pub(crate) fn expand_row(t: &LieMonomial, k: u64) -> Row {
    match t {
        LieMonomial::Leaf(i) => Row {
            terms: vec![(i.digit(), 1)],
        },
        LieMonomial::Bracket(l, r) => {
            let lr = expand_row(l, k);
            let rr = expand_row(r, k);
            lr.bracket(l.degree(), &rr, r.degree(), k)
        }
    }
}
