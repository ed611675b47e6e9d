//! Products and reductions of multidimensional matrices.
//!
//! Outer and Kronecker products, contraction and projection, and the dot,
//! S-dot and circle products derived from them.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::{Shape, Tensor};

/// A nonempty set of axis positions, stored strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxisSet {
    positions: Vec<usize>,
}

impl AxisSet {
    pub fn new(mut positions: Vec<usize>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::validation("axis set is empty"));
        }
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation(format!("axis set {positions:?} repeats an axis")));
        }
        Ok(AxisSet { positions })
    }

    pub fn single(axis: usize) -> Self {
        AxisSet {
            positions: vec![axis],
        }
    }

    /// `{0, .., len - 1}`.
    pub fn leading(len: usize) -> Result<Self> {
        AxisSet::new((0..len).collect())
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.positions.binary_search(&axis).is_ok()
    }

    /// Positions after the axes of `removed` have been deleted from a tensor.
    /// Fails if the two sets intersect.
    pub fn renumbered_after(&self, removed: &[&AxisSet]) -> Result<AxisSet> {
        let mut out = Vec::with_capacity(self.len());
        for &p in &self.positions {
            if removed.iter().any(|s| s.contains(p)) {
                return Err(Error::validation(format!("axis {p} was already removed")));
            }
            let shift = removed
                .iter()
                .map(|s| s.positions.iter().filter(|&&q| q < p).count())
                .sum::<usize>();
            out.push(p - shift);
        }
        AxisSet::new(out)
    }
}

fn check_sets(d: usize, sets: &[AxisSet]) -> Result<()> {
    let mut used = vec![false; d];
    for set in sets {
        for &p in set.positions() {
            if p >= d {
                return Err(Error::validation(format!(
                    "axis {p} out of range for dimension {d}"
                )));
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(Error::validation(format!("axis sets overlap at axis {p}")));
            }
        }
    }
    Ok(())
}

/// Sums over the axes in `groups`, where all axes of one group share a
/// single running component. Surviving axes keep their relative order.
fn reduce(a: &Tensor, groups: &[&[usize]]) -> Result<Tensor> {
    let d = a.dim();
    let mut removed = vec![false; d];
    let mut group_extents = Vec::with_capacity(groups.len());
    for group in groups {
        let extent = a.extents()[group[0]];
        if let Some(&bad) = group.iter().find(|&&p| a.extents()[p] != extent) {
            return Err(Error::validation(format!(
                "contracted axes {} and {bad} have different extents",
                group[0]
            )));
        }
        group_extents.push(extent);
        for &p in *group {
            removed[p] = true;
        }
    }
    let free: Vec<usize> = (0..d).filter(|&p| !removed[p]).collect();
    let shape = Shape::new(free.iter().map(|&p| a.extents()[p]).collect())?;
    let run = Shape::new(group_extents)?;
    let mut source = vec![0; d];
    Ok(Tensor::from_fn(shape, |idx| {
        for (&axis, &v) in free.iter().zip(idx) {
            source[axis] = v;
        }
        let mut acc = Rational::zero();
        run.for_each_index(|r| {
            for (group, &v) in groups.iter().zip(r) {
                for &axis in *group {
                    source[axis] = v;
                }
            }
            acc += a.get(&source);
        });
        acc
    }))
}

/// Consecutive contraction `A_{S_1; ..; S_m}`. Sets use the original axis
/// numbering and must be pairwise disjoint; each set sums along its main
/// diagonal. Contracting every axis gives a 0-dimensional tensor.
pub fn contract(a: &Tensor, sets: &[AxisSet]) -> Result<Tensor> {
    check_sets(a.dim(), sets)?;
    let groups: Vec<&[usize]> = sets.iter().map(AxisSet::positions).collect();
    reduce(a, &groups)
}

/// Consecutive projection `P_{S_1; ..; S_m}(A)`: sums over every combination
/// of the removed components.
pub fn project(a: &Tensor, sets: &[AxisSet]) -> Result<Tensor> {
    check_sets(a.dim(), sets)?;
    let groups: Vec<&[usize]> = sets
        .iter()
        .flat_map(|s| s.positions().iter().map(std::slice::from_ref))
        .collect();
    reduce(a, &groups)
}

fn require_same_order(a: &Tensor, b: &Tensor) -> Result<usize> {
    let n = a.require_cubical("first factor")?;
    let m = b.require_cubical("second factor")?;
    if n != m {
        return Err(Error::validation(format!("orders differ: {n} vs {m}")));
    }
    Ok(n)
}

fn outer_any(a: &Tensor, b: &Tensor) -> Tensor {
    let mut extents = a.extents().to_vec();
    extents.extend_from_slice(b.extents());
    let entries = a
        .entries()
        .iter()
        .flat_map(|x| b.entries().iter().map(move |y| x * y))
        .collect();
    Tensor::new(Shape::new(extents).expect("extents nonzero"), entries).expect("length matches")
}

/// `A x B` with `c_{ab} = a_a * b_b`; both factors cubical of one order.
pub fn outer(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    require_same_order(a, b)?;
    Ok(outer_any(a, b))
}

/// `A (x) B` of equal dimension; component `i` of the result is
/// `alpha_i * n_2 + beta_i` (0-based).
pub fn kronecker(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let n1 = a.require_cubical("first factor")?;
    let n2 = b.require_cubical("second factor")?;
    if a.dim() != b.dim() {
        return Err(Error::validation(format!(
            "Kronecker product needs equal dimensions, got {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let shape = Shape::cube(a.dim(), n1 * n2)?;
    let mut alpha = vec![0; a.dim()];
    let mut beta = vec![0; a.dim()];
    Ok(Tensor::from_fn(shape, |gamma| {
        for (k, &g) in gamma.iter().enumerate() {
            alpha[k] = g / n2;
            beta[k] = g % n2;
        }
        a.get(&alpha) * b.get(&beta)
    }))
}

/// `A ._{i,j} B`: the `(i, d_1 + j)`-contraction of `A x B`.
pub fn dot_ij(a: &Tensor, i: usize, b: &Tensor, j: usize) -> Result<Tensor> {
    require_same_order(a, b)?;
    if i >= a.dim() || j >= b.dim() {
        return Err(Error::validation(format!(
            "dot axes ({i}, {j}) out of range for dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let product = outer_any(a, b);
    contract(&product, &[AxisSet::new(vec![i, a.dim() + j])?])
}

/// The dot product `AB`: last axis of `A` against the first axis of `B`.
pub fn dot(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    a.require_cubical("first factor")?;
    dot_ij(a, a.dim() - 1, b, 0)
}

/// `[A^1_{i_1}, .., A^l_{i_l}]`: one synchronized contraction over the chosen
/// axis of every factor of the outer product.
pub fn s_dot(factors: &[(&Tensor, usize)]) -> Result<Tensor> {
    if factors.len() < 2 {
        return Err(Error::validation("S-dot product needs at least two factors"));
    }
    let n = factors[0].0.require_cubical("factor 1")?;
    let mut axes = Vec::with_capacity(factors.len());
    let mut offset = 0;
    for (pos, (t, axis)) in factors.iter().enumerate() {
        let m = t.require_cubical(&format!("factor {}", pos + 1))?;
        if m != n {
            return Err(Error::validation(format!("factor {} has order {m}, expected {n}", pos + 1)));
        }
        if *axis >= t.dim() {
            return Err(Error::validation(format!(
                "axis {axis} out of range for factor {} of dimension {}",
                pos + 1,
                t.dim()
            )));
        }
        axes.push(offset + axis);
        offset += t.dim();
    }
    let product = factors[1..]
        .iter()
        .fold(factors[0].0.clone(), |acc, (t, _)| outer_any(&acc, t));
    contract(&product, &[AxisSet::new(axes)?])
}

/// Circle product `A o B` with
/// `c_{i b_2 .. b_{d_1}} = sum_j a_{i j_2 .. j_{d_1}} b_{j_2 b_2} .. b_{j_{d_1} b_{d_1}}`.
///
/// Every axis of `A` after the first must match the first extent of `B`;
/// `B` may be rectangular (covering matrices are `N x M`).
pub fn circle(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let d1 = a.dim();
    if d1 == 0 || b.dim() == 0 {
        return Err(Error::validation("circle product needs factors of dimension at least 1"));
    }
    let m = b.extents()[0];
    if let Some(axis) = (1..d1).find(|&k| a.extents()[k] != m) {
        return Err(Error::validation(format!(
            "axis {axis} of the first factor has extent {}, second factor starts with {m}",
            a.extents()[axis]
        )));
    }
    let tail = &b.extents()[1..];
    let block = tail.len();
    let mut extents = vec![a.extents()[0]];
    for _ in 1..d1 {
        extents.extend_from_slice(tail);
    }
    let shape = Shape::new(extents)?;
    let run = Shape::new(vec![m; d1 - 1])?;
    let mut a_idx = vec![0; d1];
    let mut b_idx = vec![0; b.dim()];
    Ok(Tensor::from_fn(shape, |gamma| {
        a_idx[0] = gamma[0];
        let mut acc = Rational::zero();
        run.for_each_index(|js| {
            a_idx[1..].copy_from_slice(js);
            let mut term = a.get(&a_idx).clone();
            if term.is_zero() {
                return;
            }
            for (t, &j) in js.iter().enumerate() {
                b_idx[0] = j;
                b_idx[1..].copy_from_slice(&gamma[1 + t * block..1 + (t + 1) * block]);
                term *= b.get(&b_idx);
            }
            acc += term;
        });
        acc
    }))
}

/// Axis permutation turning `B x A` into `A x B` via [`Tensor::transpose`]
/// (a block rotation moving the last `d_1` axes to the front).
pub fn outer_swap_axes(d1: usize, d2: usize) -> Vec<usize> {
    (d2..d2 + d1).chain(0..d2).collect()
}

/// Hyperplane permutation, applied on every axis of `B (x) A`, that yields
/// `A (x) B` for orders `n1` of `A` and `n2` of `B`.
pub fn kronecker_swap_permutation(n1: usize, n2: usize) -> Vec<usize> {
    (0..n1 * n2).map(|g| (g % n2) * n1 + g / n2).collect()
}
