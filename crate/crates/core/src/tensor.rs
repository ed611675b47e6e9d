//! Dense multidimensional matrices with exact entries.
//!
//! Axes and index components are 0-based in this API. Entries are stored
//! lexicographically with the last axis varying fastest, so a 2-dimensional
//! matrix is stored row by row.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Per-axis extents. An empty extent list is the shape of a scalar, which
/// only arises as the result of reducing away every axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    extents: Vec<usize>,
}

impl Shape {
    pub fn new(extents: Vec<usize>) -> Result<Self> {
        if let Some(pos) = extents.iter().position(|&e| e == 0) {
            return Err(Error::validation(format!("extent of axis {pos} is zero")));
        }
        Ok(Shape { extents })
    }

    /// The cubical shape of a `d`-dimensional matrix of order `n`.
    pub fn cube(d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::validation("dimension and order must be at least 1"));
        }
        Ok(Shape {
            extents: vec![n; d],
        })
    }

    pub fn scalar() -> Self {
        Shape {
            extents: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn len(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_cubical(&self) -> bool {
        self.extents.windows(2).all(|w| w[0] == w[1])
    }

    /// Common extent of a cubical shape of dimension at least one.
    pub fn order(&self) -> Option<usize> {
        match self.extents.first() {
            Some(&n) if self.is_cubical() => Some(n),
            _ => None,
        }
    }

    pub fn contains(&self, index: &[usize]) -> bool {
        index.len() == self.dim() && index.iter().zip(&self.extents).all(|(i, e)| i < e)
    }

    /// Flat storage offset of an in-range index.
    pub fn offset(&self, index: &[usize]) -> usize {
        debug_assert!(self.contains(index), "index {index:?} outside {:?}", self.extents);
        index
            .iter()
            .zip(&self.extents)
            .fold(0, |acc, (&i, &e)| acc * e + i)
    }

    pub fn index_of(&self, mut offset: usize) -> Vec<usize> {
        let mut index = vec![0; self.dim()];
        for (slot, &e) in index.iter_mut().zip(&self.extents).rev() {
            *slot = offset % e;
            offset /= e;
        }
        index
    }

    /// Visits every index in storage order.
    pub fn for_each_index(&self, mut f: impl FnMut(&[usize])) {
        let mut index = vec![0; self.dim()];
        for _ in 0..self.len() {
            f(&index);
            for axis in (0..index.len()).rev() {
                index[axis] += 1;
                if index[axis] < self.extents[axis] {
                    break;
                }
                index[axis] = 0;
            }
        }
    }

    pub fn indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.len());
        self.for_each_index(|idx| out.push(idx.to_vec()));
        out
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.extents.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join("x"))
    }
}

/// A dense multidimensional matrix of exact rationals. Immutable once built:
/// every operation returns a new tensor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    shape: Shape,
    entries: Vec<Rational>,
}

impl Tensor {
    pub fn new(shape: Shape, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != shape.len() {
            return Err(Error::validation(format!(
                "shape {shape} needs {} entries, got {}",
                shape.len(),
                entries.len()
            )));
        }
        Ok(Tensor { shape, entries })
    }

    pub fn from_ints(extents: &[usize], values: &[i64]) -> Result<Self> {
        let shape = Shape::new(extents.to_vec())?;
        Tensor::new(shape, values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn from_fn(shape: Shape, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(shape.len());
        shape.for_each_index(|idx| entries.push(f(idx)));
        Tensor { shape, entries }
    }

    pub fn zeros(shape: Shape) -> Self {
        let entries = vec![Rational::zero(); shape.len()];
        Tensor { shape, entries }
    }

    pub fn scalar(value: Rational) -> Self {
        Tensor {
            shape: Shape::scalar(),
            entries: vec![value],
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn extents(&self) -> &[usize] {
        self.shape.extents()
    }

    pub fn order(&self) -> Option<usize> {
        self.shape.order()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    /// Panics when `index` is outside the shape; see [`Tensor::entry_at`].
    pub fn get(&self, index: &[usize]) -> &Rational {
        assert!(
            self.shape.contains(index),
            "index {index:?} outside shape {}",
            self.shape
        );
        &self.entries[self.shape.offset(index)]
    }

    pub fn entry_at(&self, index: &[usize]) -> Result<&Rational> {
        if !self.shape.contains(index) {
            return Err(Error::validation(format!(
                "index {index:?} outside shape {}",
                self.shape
            )));
        }
        Ok(&self.entries[self.shape.offset(index)])
    }

    /// Order of a cubical tensor, or a validation error naming `what`.
    pub fn require_cubical(&self, what: &str) -> Result<usize> {
        self.order().ok_or_else(|| {
            Error::validation(format!(
                "{what} must be a cubical matrix of dimension at least 1, got shape {}",
                self.shape
            ))
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(rational::is_nonnegative)
    }

    pub fn require_nonnegative(&self, what: &str) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(Error::validation(format!("{what} has a negative entry")))
        }
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().sum()
    }

    pub fn map(&self, f: impl FnMut(&Rational) -> Rational) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Tensor {
        self.map(|v| v * factor)
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        linear_combine(&Rational::one(), self, &Rational::one(), other)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        linear_combine(&Rational::one(), self, &-Rational::one(), other)
    }

    /// Permutes axes: result axis `k` is input axis `perm[k]`, so
    /// `result[y] = self[x]` whenever `x[perm[k]] = y[k]` for all `k`.
    pub fn transpose(&self, perm: &[usize]) -> Result<Tensor> {
        check_permutation(perm, self.dim(), "axis permutation")?;
        let extents = perm.iter().map(|&p| self.extents()[p]).collect();
        let shape = Shape::new(extents)?;
        let mut source = vec![0; self.dim()];
        Ok(Tensor::from_fn(shape, |y| {
            for (k, &p) in perm.iter().enumerate() {
                source[p] = y[k];
            }
            self.get(&source).clone()
        }))
    }

    /// Permutes the hyperplanes orthogonal to `axis`:
    /// `result[.., i, ..] = self[.., perm[i], ..]`.
    pub fn permute_hyperplanes(&self, axis: usize, perm: &[usize]) -> Result<Tensor> {
        if axis >= self.dim() {
            return Err(Error::validation(format!(
                "axis {axis} out of range for dimension {}",
                self.dim()
            )));
        }
        check_permutation(perm, self.extents()[axis], "hyperplane permutation")?;
        let mut source = vec![0; self.dim()];
        Ok(Tensor::from_fn(self.shape.clone(), |idx| {
            source.copy_from_slice(idx);
            source[axis] = perm[idx[axis]];
            self.get(&source).clone()
        }))
    }

    /// The plane obtained by fixing the components in `spec`; free axes keep
    /// their relative order.
    pub fn extract_plane(&self, spec: &PlaneSpec) -> Result<Tensor> {
        spec.validate(&self.shape)?;
        let free: Vec<usize> = (0..self.dim()).filter(|a| !spec.fixed.contains_key(a)).collect();
        let shape = Shape::new(free.iter().map(|&a| self.extents()[a]).collect())?;
        let mut source = vec![0; self.dim()];
        for (&axis, &value) in &spec.fixed {
            source[axis] = value;
        }
        Ok(Tensor::from_fn(shape, |idx| {
            for (slot, &axis) in idx.iter().zip(&free) {
                source[axis] = *slot;
            }
            self.get(&source).clone()
        }))
    }
}

/// Entrywise `c1 * a + c2 * b`.
pub fn linear_combine(c1: &Rational, a: &Tensor, c2: &Rational, b: &Tensor) -> Result<Tensor> {
    if a.shape != b.shape {
        return Err(Error::validation(format!(
            "shape mismatch: {} vs {}",
            a.shape, b.shape
        )));
    }
    let entries = a
        .entries
        .iter()
        .zip(&b.entries)
        .map(|(x, y)| c1 * x + c2 * y)
        .collect();
    Ok(Tensor {
        shape: a.shape.clone(),
        entries,
    })
}

/// `J_n^d`: the `d`-dimensional matrix of order `n` with every entry `1/n`.
pub fn uniform_j(d: usize, n: usize) -> Result<Tensor> {
    let shape = Shape::cube(d, n)?;
    let value = rational::frac(1, n as i64);
    Ok(Tensor {
        entries: vec![value; shape.len()],
        shape,
    })
}

/// The (0,1) matrix with ones exactly on the main diagonal.
pub fn identity_diag(d: usize, n: usize) -> Result<Tensor> {
    let shape = Shape::cube(d, n)?;
    Ok(Tensor::from_fn(shape, |idx| {
        if idx.iter().all(|&i| i == idx[0]) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// A plane given by the components it fixes (axis -> value).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlaneSpec {
    fixed: BTreeMap<usize, usize>,
}

impl PlaneSpec {
    pub fn new(fixed: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (axis, value) in fixed {
            if map.insert(axis, value).is_some() {
                return Err(Error::validation(format!("axis {axis} fixed twice")));
            }
        }
        Ok(PlaneSpec { fixed: map })
    }

    pub fn fixed(&self) -> &BTreeMap<usize, usize> {
        &self.fixed
    }

    /// Dimension of the plane inside a `d`-dimensional matrix.
    pub fn plane_dim(&self, d: usize) -> usize {
        d - self.fixed.len()
    }

    /// The (0,1)-vector marking fixed axes.
    pub fn direction(&self, d: usize) -> Vec<u8> {
        (0..d).map(|a| u8::from(self.fixed.contains_key(&a))).collect()
    }

    pub fn validate(&self, shape: &Shape) -> Result<()> {
        for (&axis, &value) in &self.fixed {
            if axis >= shape.dim() {
                return Err(Error::validation(format!(
                    "fixed axis {axis} out of range for dimension {}",
                    shape.dim()
                )));
            }
            if value >= shape.extents()[axis] {
                return Err(Error::validation(format!(
                    "fixed value {value} out of range on axis {axis}"
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_permutation(perm: &[usize], len: usize, what: &str) -> Result<()> {
    if perm.len() != len {
        return Err(Error::validation(format!(
            "{what} has length {}, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::validation(format!("{what} {perm:?} is not a bijection")));
        }
    }
    Ok(())
}

pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}
