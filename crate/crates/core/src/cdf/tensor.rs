//! State spaces, index vectors and exact rational tensors, with the
//! probability/cdf change of coordinates.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partition::GroundSet;

pub type Rational = BigRational;

/// State-space sizes `(r_1, ..., r_n)`, each at least 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StateShape(Vec<usize>);

impl StateShape {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Shape("at least one variable is required".into()));
        }
        if sizes.len() > crate::partition::MAX_N {
            return Err(Error::Shape(format!(
                "{} variables exceed the limit",
                sizes.len()
            )));
        }
        if let Some(bad) = sizes.iter().position(|&r| r < 2) {
            return Err(Error::Shape(format!(
                "variable {} has {} states; at least 2 are required",
                bad + 1,
                sizes[bad]
            )));
        }
        Ok(StateShape(sizes))
    }

    /// All variables binary.
    pub fn binary(n: usize) -> Self {
        StateShape(vec![2; n])
    }

    /// Parses `"2,2,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let sizes = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Shape(format!("`{t}` is not a state count")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sizes)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// `r_v` for the 1-based variable `v`.
    pub fn states(&self, v: usize) -> usize {
        self.0[v - 1]
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|&r| r == 2)
    }

    /// Number of cells.
    pub fn volume(&self) -> usize {
        self.0.iter().product()
    }

    /// Row-major offset of `i` (last variable fastest).
    pub fn offset(&self, i: &IndexVector) -> usize {
        debug_assert!(self.contains(i));
        i.0.iter()
            .zip(&self.0)
            .fold(0, |acc, (&x, &r)| acc * r + (x - 1))
    }

    pub fn index_at(&self, mut offset: usize) -> IndexVector {
        let mut values = vec![0; self.n()];
        for (slot, &r) in values.iter_mut().zip(&self.0).rev() {
            *slot = offset % r + 1;
            offset /= r;
        }
        IndexVector(values)
    }

    pub fn contains(&self, i: &IndexVector) -> bool {
        i.0.len() == self.n() && i.0.iter().zip(&self.0).all(|(&x, &r)| (1..=r).contains(&x))
    }

    /// Every index vector, row-major.
    pub fn indices(&self) -> impl Iterator<Item = IndexVector> + '_ {
        (0..self.volume()).map(move |o| self.index_at(o))
    }

    /// `(r_1, ..., r_n)`, the index with empty support.
    pub fn max_index(&self) -> IndexVector {
        IndexVector(self.0.clone())
    }

    /// `{ l : i_l != r_l }`.
    pub fn support(&self, i: &IndexVector) -> GroundSet {
        GroundSet::from_elements(
            i.0.iter()
                .zip(&self.0)
                .enumerate()
                .filter(|(_, (&x, &r))| x != r)
                .map(|(l, _)| l + 1),
        )
    }

    /// Index agreeing with `i` on `set` and maximal elsewhere.
    pub fn restrict(&self, i: &IndexVector, set: GroundSet) -> IndexVector {
        IndexVector(
            (1..=self.n())
                .map(|v| {
                    if set.contains(v) {
                        i.0[v - 1]
                    } else {
                        self.0[v - 1]
                    }
                })
                .collect(),
        )
    }

    /// Index vectors whose support is exactly `set`, row-major.
    pub fn indices_with_support(&self, set: GroundSet) -> Vec<IndexVector> {
        let mut out = vec![self.max_index()];
        for v in set.iter() {
            out = out
                .into_iter()
                .flat_map(|i| {
                    (1..self.states(v)).map(move |s| {
                        let mut j = i.clone();
                        j.0[v - 1] = s;
                        j
                    })
                })
                .collect();
        }
        out.sort_by_key(|i| self.offset(i));
        out
    }

    /// Binary shapes only: the index whose support is `set`.
    pub fn index_from_support(&self, set: GroundSet) -> IndexVector {
        assert!(self.is_binary(), "support indexing needs a binary shape");
        IndexVector(
            (1..=self.n())
                .map(|v| if set.contains(v) { 1 } else { 2 })
                .collect(),
        )
    }

    /// Display label of a cdf coordinate: `q_134` (support form) for binary
    /// shapes, `q_2113` for general shapes.
    pub fn label(&self, i: &IndexVector) -> String {
        self.label_with('q', i)
    }

    pub(crate) fn label_with(&self, letter: char, i: &IndexVector) -> String {
        if self.is_binary() {
            let s = self.support(i);
            if s.is_empty() {
                letter.to_string()
            } else if self.n() <= 9 {
                format!("{letter}_{}", s.to_text(true))
            } else {
                format!("{letter}_{}", s.to_text(false))
            }
        } else if self.0.iter().all(|&r| r <= 9) {
            let digits: String = i.0.iter().map(|x| x.to_string()).collect();
            format!("{letter}_{digits}")
        } else {
            format!("{letter}_{}", i)
        }
    }
}

impl fmt::Display for StateShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A tensor index `(i_1, ..., i_n)` with `1 <= i_l <= r_l`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IndexVector(pub Vec<usize>);

impl IndexVector {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Componentwise order of the index product poset.
    pub fn leq(&self, other: &IndexVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A dense tensor of exact rationals over a [`StateShape`], row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalTensor {
    shape: StateShape,
    entries: Vec<Rational>,
}

impl RationalTensor {
    pub fn zeros(shape: StateShape) -> Self {
        let entries = vec![Rational::zero(); shape.volume()];
        RationalTensor { shape, entries }
    }

    pub fn from_fn(shape: StateShape, mut f: impl FnMut(&IndexVector) -> Rational) -> Self {
        let entries = shape.indices().map(|i| f(&i)).collect();
        RationalTensor { shape, entries }
    }

    pub fn from_entries(shape: StateShape, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != shape.volume() {
            return Err(Error::Shape(format!(
                "{} entries for a tensor with {} cells",
                entries.len(),
                shape.volume()
            )));
        }
        Ok(RationalTensor { shape, entries })
    }

    pub fn shape(&self) -> &StateShape {
        &self.shape
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: &IndexVector) -> &Rational {
        &self.entries[self.shape.offset(i)]
    }

    pub fn set(&mut self, i: &IndexVector, value: Rational) {
        let o = self.shape.offset(i);
        self.entries[o] = value;
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Nonnegative entries summing to one.
    pub fn is_distribution(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative()) && self.sum().is_one()
    }

    /// Strictly positive entries summing to one.
    pub fn is_interior_distribution(&self) -> bool {
        self.entries.iter().all(|x| x.is_positive()) && self.sum().is_one()
    }

    fn stride(&self, axis: usize) -> usize {
        self.shape.sizes()[axis + 1..].iter().product()
    }
}

/// `q_i = sum_{j <= i} p_j`, computed as prefix sums along each axis.
pub fn prob_to_cdf(p: &RationalTensor) -> RationalTensor {
    let mut q = p.clone();
    for axis in 0..q.shape.n() {
        let stride = q.stride(axis);
        let r = q.shape.sizes()[axis];
        for o in 0..q.entries.len() {
            if (o / stride) % r != 0 {
                let prev = q.entries[o - stride].clone();
                q.entries[o] += prev;
            }
        }
    }
    q
}

/// Möbius inversion of [`prob_to_cdf`]: successive differences along each
/// axis, i.e. `p_i = sum_{j <= i} prod_k mu(j_k, i_k) q_j` with
/// `mu(j, j) = 1`, `mu(j, j + 1) = -1`.
pub fn cdf_to_prob(q: &RationalTensor) -> RationalTensor {
    let mut p = q.clone();
    for axis in 0..p.shape.n() {
        let stride = p.stride(axis);
        let r = p.shape.sizes()[axis];
        for o in (0..p.entries.len()).rev() {
            if (o / stride) % r != 0 {
                let prev = p.entries[o - stride].clone();
                p.entries[o] -= prev;
            }
        }
    }
    p
}
