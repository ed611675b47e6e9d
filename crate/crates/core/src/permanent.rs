//! Multidimensional permanents.
//!
//! A diagonal of a `d`-dimensional matrix of order `n` is a set of `n`
//! indices that differ pairwise in every component; the permanent sums the
//! entry products over all `(n!)^(d-1)` diagonals. [`permanent`] walks the
//! hyperplanes of the first axis in turn and only ever descends through
//! nonzero entries whose components are still unused, which keeps sparse
//! (0,1) matrices of large order tractable. [`permanent_oracle`] is the
//! literal enumeration, kept for cross-checking.

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::{check_permutation, Shape, Tensor};

/// Default cap on the number of diagonals the oracle will enumerate.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// `n` indices with pairwise distinct components on every axis, kept sorted
/// by first component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagonal {
    indices: Vec<Vec<usize>>,
}

impl Diagonal {
    pub fn new(mut indices: Vec<Vec<usize>>, d: usize, n: usize) -> Result<Self> {
        if indices.len() != n {
            return Err(Error::validation(format!(
                "a diagonal of order {n} has {n} indices, got {}",
                indices.len()
            )));
        }
        for axis in 0..d {
            let mut seen = vec![false; n];
            for idx in &indices {
                if idx.len() != d {
                    return Err(Error::validation(format!("index {idx:?} is not {d}-dimensional")));
                }
                let v = idx[axis];
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::validation(format!(
                        "components on axis {axis} are not a permutation"
                    )));
                }
            }
        }
        indices.sort();
        Ok(Diagonal { indices })
    }

    /// `{(0,..,0), .., (n-1,..,n-1)}`.
    pub fn main(d: usize, n: usize) -> Self {
        Diagonal {
            indices: (0..n).map(|i| vec![i; d]).collect(),
        }
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn product(&self, a: &Tensor) -> Rational {
        self.indices.iter().map(|idx| a.get(idx)).product()
    }

    pub fn is_positive(&self, a: &Tensor) -> bool {
        self.indices.iter().all(|idx| a.get(idx).is_positive())
    }
}

struct Cell {
    rest: Vec<usize>,
    value: Rational,
}

/// Nonzero entries grouped by first component.
struct Support {
    n: usize,
    rows: Vec<Vec<Cell>>,
}

/// Usage marks for components on axes `1..d`, one block of `n` per axis.
struct Marks {
    n: usize,
    used: Vec<bool>,
}

impl Marks {
    fn new(support: &Support, d: usize) -> Self {
        Marks {
            n: support.n,
            used: vec![false; (d - 1) * support.n],
        }
    }

    fn is_free(&self, rest: &[usize]) -> bool {
        rest.iter().enumerate().all(|(k, &v)| !self.used[k * self.n + v])
    }

    fn set(&mut self, rest: &[usize], flag: bool) {
        for (k, &v) in rest.iter().enumerate() {
            self.used[k * self.n + v] = flag;
        }
    }
}

impl Support {
    fn new(a: &Tensor, keep: impl Fn(&Rational) -> bool) -> Result<Self> {
        let n = a.require_cubical("matrix")?;
        let mut rows: Vec<Vec<Cell>> = (0..n).map(|_| Vec::new()).collect();
        a.shape().for_each_index(|idx| {
            let value = a.get(idx);
            if keep(value) {
                rows[idx[0]].push(Cell {
                    rest: idx[1..].to_vec(),
                    value: value.clone(),
                });
            }
        });
        Ok(Support { n, rows })
    }

    fn sum_from(&self, level: usize, marks: &mut Marks) -> Rational {
        if level == self.n {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for cell in &self.rows[level] {
            if !marks.is_free(&cell.rest) {
                continue;
            }
            marks.set(&cell.rest, true);
            let tail = self.sum_from(level + 1, marks);
            marks.set(&cell.rest, false);
            if !tail.is_zero() {
                acc += &cell.value * tail;
            }
        }
        acc
    }

    fn exists_from(&self, level: usize, marks: &mut Marks) -> bool {
        if level == self.n {
            return true;
        }
        for cell in &self.rows[level] {
            if !marks.is_free(&cell.rest) {
                continue;
            }
            marks.set(&cell.rest, true);
            let found = self.exists_from(level + 1, marks);
            marks.set(&cell.rest, false);
            if found {
                return true;
            }
        }
        false
    }

    fn collect_from(
        &self,
        level: usize,
        marks: &mut Marks,
        chosen: &mut Vec<usize>,
        limit: usize,
        out: &mut Vec<(Diagonal, Rational)>,
    ) {
        if out.len() >= limit {
            return;
        }
        if level == self.n {
            let cells = chosen.iter().enumerate().map(|(i, &c)| (i, &self.rows[i][c]));
            let indices = cells
                .clone()
                .map(|(i, cell)| {
                    let mut idx = vec![i];
                    idx.extend_from_slice(&cell.rest);
                    idx
                })
                .collect();
            let value = cells.map(|(_, cell)| &cell.value).product();
            out.push((Diagonal { indices }, value));
            return;
        }
        for (c, cell) in self.rows[level].iter().enumerate() {
            if !marks.is_free(&cell.rest) {
                continue;
            }
            marks.set(&cell.rest, true);
            chosen.push(c);
            self.collect_from(level + 1, marks, chosen, limit, out);
            chosen.pop();
            marks.set(&cell.rest, false);
        }
    }
}

/// Exact permanent by support-pruned backtracking. Entries may be negative.
pub fn permanent(a: &Tensor) -> Result<Rational> {
    let support = Support::new(a, |v| !v.is_zero())?;
    let mut marks = Marks::new(&support, a.dim());
    Ok(support.sum_from(0, &mut marks))
}

/// [`permanent`] with the choices in the first hyperplane split across
/// `threads` workers. Partial sums are combined in a fixed order, so the
/// result does not depend on scheduling.
pub fn permanent_parallel(a: &Tensor, threads: usize) -> Result<Rational> {
    if threads <= 1 {
        return permanent(a);
    }
    let support = Support::new(a, |v| !v.is_zero())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::validation(format!("cannot start worker pool: {e}")))?;
    let partials: Vec<Rational> = pool.install(|| {
        support.rows[0]
            .par_iter()
            .map(|cell| {
                let mut marks = Marks::new(&support, a.dim());
                marks.set(&cell.rest, true);
                &cell.value * support.sum_from(1, &mut marks)
            })
            .collect()
    });
    Ok(partials.into_iter().sum())
}

/// Whether some diagonal has only positive entries.
pub fn has_positive_diagonal(a: &Tensor) -> Result<bool> {
    a.require_nonnegative("matrix")?;
    let support = Support::new(a, Signed::is_positive)?;
    let mut marks = Marks::new(&support, a.dim());
    Ok(support.exists_from(0, &mut marks))
}

/// Diagonals with a nonzero product, at most `limit` of them, with their
/// products. Order is lexicographic in the sequence of indices chosen for
/// first components `0, 1, ..`.
pub fn nonzero_diagonals(a: &Tensor, limit: usize) -> Result<Vec<(Diagonal, Rational)>> {
    let support = Support::new(a, |v| !v.is_zero())?;
    let mut marks = Marks::new(&support, a.dim());
    let mut out = Vec::new();
    support.collect_from(0, &mut marks, &mut Vec::with_capacity(support.n), limit, &mut out);
    Ok(out)
}

/// `(n!)^(d-1)`, the number of diagonals.
pub fn diagonal_count(d: usize, n: usize) -> BigUint {
    let factorial: BigUint = (1..=n).map(BigUint::from).product();
    num_traits::pow(factorial, d.saturating_sub(1))
}

pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot exists");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// The permanent by literal enumeration of every `(d-1)`-tuple of
/// permutations. Refuses when `(n!)^(d-1)` exceeds `budget`.
pub fn permanent_oracle(a: &Tensor, budget: u64) -> Result<Rational> {
    let n = a.require_cubical("matrix")?;
    let d = a.dim();
    let count = diagonal_count(d, n);
    if count > BigUint::from(budget) {
        return Err(Error::Budget {
            needed: count.to_string(),
            budget,
        });
    }
    let perms = all_permutations(n);
    let tuples = count.to_usize().expect("within budget");
    let mut choice = vec![0usize; d - 1];
    let mut idx = vec![0usize; d];
    let mut total = Rational::zero();
    for _ in 0..tuples {
        let mut term = Rational::one();
        for i in 0..n {
            idx[0] = i;
            for (k, &c) in choice.iter().enumerate() {
                idx[k + 1] = perms[c][i];
            }
            term *= a.get(&idx);
            if term.is_zero() {
                break;
            }
        }
        total += term;
        for slot in choice.iter_mut().rev() {
            *slot += 1;
            if *slot < perms.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(total)
}

/// The `(d_1 + d_2 - 1)`-dimensional matrix `c_{i a b} = a_{i a} b_{sigma(i) b}`,
/// whose permanent is `per A * per B`.
pub fn reduced_outer(a: &Tensor, b: &Tensor, sigma: &[usize]) -> Result<Tensor> {
    let n = a.require_cubical("first factor")?;
    let m = b.require_cubical("second factor")?;
    if n != m {
        return Err(Error::validation(format!("orders differ: {n} vs {m}")));
    }
    check_permutation(sigma, n, "sigma")?;
    let (d1, d2) = (a.dim(), b.dim());
    let shape = Shape::cube(d1 + d2 - 1, n)?;
    let mut a_idx = vec![0; d1];
    let mut b_idx = vec![0; d2];
    Ok(Tensor::from_fn(shape, |gamma| {
        a_idx[0] = gamma[0];
        a_idx[1..].copy_from_slice(&gamma[1..d1]);
        b_idx[0] = sigma[gamma[0]];
        b_idx[1..].copy_from_slice(&gamma[d1..]);
        a.get(&a_idx) * b.get(&b_idx)
    }))
}
