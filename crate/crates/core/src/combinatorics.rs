//! Latin hypercubes, multiary quasigroups and orthogonal arrays, and their
//! correspondence with (0,1) and stochastic matrices.
//!
//! Symbols are 1-based (`1..=n`), as in the text formats; tensor indices
//! stay 0-based, so symbol `s` lives at component `s - 1`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::permanent::{diagonal_count, permanent, permanent_parallel};
use crate::rational::Rational;
use crate::stochastic::is_k_stochastic;
use crate::tensor::{Shape, Tensor};

/// A `d`-dimensional array over `1..=n` in which every line holds every symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinHypercube {
    d: usize,
    n: usize,
    cells: Vec<u32>,
}

impl LatinHypercube {
    pub fn new(d: usize, n: usize, cells: Vec<u32>) -> Result<Self> {
        let shape = Shape::cube(d, n)?;
        if cells.len() != shape.len() {
            return Err(Error::validation(format!(
                "latin hypercube of dimension {d} and order {n} needs {} cells, got {}",
                shape.len(),
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&s| s == 0 || s as usize > n) {
            return Err(Error::validation(format!("symbol {bad} outside 1..={n}")));
        }
        let q = LatinHypercube { d, n, cells };
        q.check_lines(&shape)?;
        Ok(q)
    }

    fn check_lines(&self, shape: &Shape) -> Result<()> {
        let mut failure = None;
        for axis in 0..self.d {
            let stride: usize = shape.extents()[axis + 1..].iter().product();
            shape.for_each_index(|idx| {
                if failure.is_some() || idx[axis] != 0 {
                    return;
                }
                let base = shape.offset(idx);
                let mut seen = vec![false; self.n];
                for step in 0..self.n {
                    let s = self.cells[base + step * stride] as usize - 1;
                    if std::mem::replace(&mut seen[s], true) {
                        failure = Some(format!(
                            "line through {idx:?} along axis {axis} repeats symbol {}",
                            s + 1
                        ));
                        return;
                    }
                }
            });
            if let Some(msg) = failure.take() {
                return Err(Error::validation(msg));
            }
        }
        Ok(())
    }

    pub fn from_fn(d: usize, n: usize, mut f: impl FnMut(&[usize]) -> u32) -> Result<Self> {
        let shape = Shape::cube(d, n)?;
        let mut cells = Vec::with_capacity(shape.len());
        shape.for_each_index(|idx| cells.push(f(idx)));
        LatinHypercube::new(d, n, cells)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn shape(&self) -> Shape {
        Shape::cube(self.d, self.n).expect("validated on construction")
    }

    /// Symbol at a 0-based index.
    pub fn symbol(&self, index: &[usize]) -> u32 {
        self.cells[self.shape().offset(index)]
    }
}

/// `M(Q)`: the `(d+1)`-dimensional permutation with
/// `m_{a, s-1} = 1` iff `q_a = s`.
pub fn latin_to_tensor(q: &LatinHypercube) -> Tensor {
    let shape = Shape::cube(q.d + 1, q.n).expect("validated on construction");
    let inner = q.shape();
    Tensor::from_fn(shape, |idx| {
        let s = q.cells[inner.offset(&idx[..q.d])] as usize;
        if s - 1 == idx[q.d] {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Whether `m` is a multidimensional permutation: a (0,1) matrix with exactly
/// one 1 in every line.
pub fn is_permutation_tensor(m: &Tensor) -> Result<bool> {
    m.require_cubical("matrix")?;
    Ok(m.is_zero_one() && is_k_stochastic(m, 1)?)
}

/// Inverse of [`latin_to_tensor`].
pub fn tensor_to_latin(m: &Tensor) -> Result<LatinHypercube> {
    let n = m.require_cubical("matrix")?;
    if m.dim() < 2 || !is_permutation_tensor(m)? {
        return Err(Error::validation(
            "matrix is not a multidimensional permutation of dimension at least 2",
        ));
    }
    let d = m.dim() - 1;
    let mut cells = Vec::with_capacity(n.pow(d as u32));
    for line in m.entries().chunks(n) {
        let s = line.iter().position(One::is_one).expect("every line holds a 1");
        cells.push(s as u32 + 1);
    }
    LatinHypercube::new(d, n, cells)
}

fn to_count(value: Rational) -> BigUint {
    value
        .to_integer()
        .to_biguint()
        .expect("permanent of a (0,1) matrix is a nonnegative integer")
}

/// Number of transversals, as the permanent of `M(Q)`.
pub fn transversal_count(q: &LatinHypercube) -> BigUint {
    to_count(permanent(&latin_to_tensor(q)).expect("M(Q) is cubical"))
}

pub fn transversal_count_parallel(q: &LatinHypercube, threads: usize) -> Result<BigUint> {
    Ok(to_count(permanent_parallel(&latin_to_tensor(q), threads)?))
}

/// Counts transversals by visiting every diagonal of `Q` and checking that
/// its symbols differ. Refuses past `budget` diagonals.
pub fn transversals_direct(q: &LatinHypercube, budget: u64) -> Result<BigUint> {
    let (d, n) = (q.d, q.n);
    let total = diagonal_count(d, n);
    if total > BigUint::from(budget) {
        return Err(Error::Budget {
            needed: total.to_string(),
            budget,
        });
    }
    let perms = crate::permanent::all_permutations(n);
    let shape = q.shape();
    let mut choice = vec![0usize; d - 1];
    let mut idx = vec![0usize; d];
    let mut count = BigUint::zero();
    for _ in 0..total.to_usize().expect("within budget") {
        let mut seen = vec![false; n];
        let distinct = (0..n).all(|i| {
            idx[0] = i;
            for (k, &c) in choice.iter().enumerate() {
                idx[k + 1] = perms[c][i];
            }
            let s = q.cells[shape.offset(&idx)] as usize - 1;
            !std::mem::replace(&mut seen[s], true)
        });
        if distinct {
            count += 1u32;
        }
        for slot in choice.iter_mut().rev() {
            *slot += 1;
            if *slot < perms.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(count)
}

/// Cayley table of the iterated cyclic group: `q_a = (a_1 + .. + a_d mod n) + 1`.
pub fn iterated_group_hypercube(n: usize, d: usize) -> Result<LatinHypercube> {
    if n == 0 || d < 2 {
        return Err(Error::validation("iterated group needs n >= 1 and d >= 2"));
    }
    LatinHypercube::from_fn(d, n, |idx| (idx.iter().sum::<usize>() % n) as u32 + 1)
}

/// A `d`-ary quasigroup given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    table: LatinHypercube,
}

impl Quasigroup {
    pub fn new(table: LatinHypercube) -> Self {
        Quasigroup { table }
    }

    pub fn arity(&self) -> usize {
        self.table.d
    }

    pub fn order(&self) -> usize {
        self.table.n
    }

    pub fn table(&self) -> &LatinHypercube {
        &self.table
    }

    /// `f(x_1, .., x_d)` on 1-based symbols.
    pub fn eval(&self, args: &[u32]) -> u32 {
        let idx: Vec<usize> = args.iter().map(|&x| x as usize - 1).collect();
        self.table.symbol(&idx)
    }

    /// `M^f`: the `(d+1)`-dimensional permutation whose ones form the graph
    /// `{(x_0, x_1, .., x_d) : x_0 = f(x_1, .., x_d)}`, output component first.
    pub fn permutation_tensor(&self) -> Tensor {
        let (d, n) = (self.table.d, self.table.n);
        let shape = Shape::cube(d + 1, n).expect("validated on construction");
        let inner = self.table.shape();
        Tensor::from_fn(shape, |idx| {
            let s = self.table.cells[inner.offset(&idx[1..])] as usize;
            if s - 1 == idx[0] {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Number of transversals of the Cayley table.
    pub fn transversals(&self) -> BigUint {
        transversal_count(&self.table)
    }
}

/// `(f . g)(x_1, .., x_{d1+d2-1}) = f(x_1, .., x_{d1-1}, g(x_{d1}, ..))`.
pub fn qg_compose(f: &Quasigroup, g: &Quasigroup) -> Result<Quasigroup> {
    let n = f.order();
    if g.order() != n {
        return Err(Error::validation(format!(
            "composition needs equal orders, got {n} and {}",
            g.order()
        )));
    }
    let (d1, d2) = (f.arity(), g.arity());
    let mut f_args = vec![0usize; d1];
    let table = LatinHypercube::from_fn(d1 + d2 - 1, n, |x| {
        f_args[..d1 - 1].copy_from_slice(&x[..d1 - 1]);
        f_args[d1 - 1] = g.table.symbol(&x[d1 - 1..]) as usize - 1;
        f.table.symbol(&f_args)
    })?;
    Ok(Quasigroup { table })
}

/// Direct product over the pairs `(x, y)`, encoded as the symbol
/// `(x - 1) n2 + y`.
pub fn qg_direct_product(f: &Quasigroup, g: &Quasigroup) -> Result<Quasigroup> {
    let d = f.arity();
    if g.arity() != d {
        return Err(Error::validation(format!(
            "direct product needs equal arities, got {d} and {}",
            g.arity()
        )));
    }
    let (n1, n2) = (f.order(), g.order());
    let mut xs = vec![0usize; d];
    let mut ys = vec![0usize; d];
    let table = LatinHypercube::from_fn(d, n1 * n2, |z| {
        for (k, &v) in z.iter().enumerate() {
            xs[k] = v / n2;
            ys[k] = v % n2;
        }
        let x0 = f.table.symbol(&xs) as usize - 1;
        let y0 = g.table.symbol(&ys) as usize - 1;
        (x0 * n2 + y0) as u32 + 1
    })?;
    Ok(Quasigroup { table })
}

/// A `t-(n, k, lambda)` orthogonal array candidate: `lambda n^t` rows of `k`
/// symbols from `1..=n`. Construction checks the shape only; see
/// [`OrthogonalArray::is_orthogonal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrthogonalArray {
    t: usize,
    n: usize,
    k: usize,
    lambda: usize,
    rows: Vec<Vec<u32>>,
}

impl OrthogonalArray {
    pub fn new(t: usize, n: usize, k: usize, lambda: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if n == 0 || k == 0 || lambda == 0 || t == 0 || t > k {
            return Err(Error::validation("need n, k, lambda >= 1 and 1 <= t <= k"));
        }
        let expected = lambda
            .checked_mul(n.checked_pow(t as u32).unwrap_or(usize::MAX))
            .ok_or_else(|| Error::validation("array too large"))?;
        if rows.len() != expected {
            return Err(Error::validation(format!(
                "a {t}-({n},{k},{lambda}) array has {expected} rows, got {}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::validation(format!("row {i} has {} symbols, expected {k}", row.len())));
            }
            if let Some(bad) = row.iter().find(|&&s| s == 0 || s as usize > n) {
                return Err(Error::validation(format!("row {i} holds symbol {bad} outside 1..={n}")));
            }
        }
        Ok(OrthogonalArray { t, n, k, lambda, rows })
    }

    pub fn strength(&self) -> usize {
        self.t
    }

    pub fn levels(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> usize {
        self.k
    }

    pub fn index(&self) -> usize {
        self.lambda
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Every `t`-tuple occurs exactly `lambda` times in every `t` columns.
    pub fn is_orthogonal(&self) -> bool {
        crate::stochastic::subsets(self.k, self.t).into_iter().all(|cols| {
            let mut counts = vec![0usize; self.n.pow(self.t as u32)];
            for row in &self.rows {
                let key = cols.iter().fold(0, |acc, &c| acc * self.n + row[c] as usize - 1);
                counts[key] += 1;
            }
            counts.iter().all(|&c| c == self.lambda)
        })
    }
}

/// Degree of stochasticity of `(1/lambda) M` for a `t-(n,k,lambda)` array:
/// every `(k - t)`-dimensional plane fixes `t` columns, so it sums to `lambda`.
pub fn oa_stochastic_degree(t: usize, k: usize) -> usize {
    k - t
}

/// The `k`-dimensional matrix `M` of row multiplicities. Fails unless the
/// rows form an orthogonal array, judged by the stochasticity of
/// `(1/lambda) M`.
pub fn oa_to_tensor(r: &OrthogonalArray) -> Result<Tensor> {
    let shape = Shape::cube(r.k, r.n)?;
    let mut counts = vec![0i64; shape.len()];
    for row in &r.rows {
        let idx: Vec<usize> = row.iter().map(|&s| s as usize - 1).collect();
        counts[shape.offset(&idx)] += 1;
    }
    let m = Tensor::new(shape, counts.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect())?;
    let normalized = m.scale(&Rational::new(BigInt::one(), BigInt::from(r.lambda)));
    let ok = match oa_stochastic_degree(r.t, r.k) {
        0 => normalized.entries().iter().all(One::is_one),
        degree => is_k_stochastic(&normalized, degree)?,
    };
    if !ok {
        return Err(Error::validation(format!(
            "rows do not form a {}-({},{},{}) orthogonal array",
            r.t, r.n, r.k, r.lambda
        )));
    }
    Ok(m)
}

/// Rows of the orthogonal array whose normalized matrix is `normalized`
/// (`(1/lambda) M`), listed in index order. `lambda * normalized` must be
/// integral and nonnegative.
pub fn tensor_to_oa(normalized: &Tensor, t: usize, lambda: usize) -> Result<OrthogonalArray> {
    let n = normalized.require_cubical("matrix")?;
    let lam = Rational::from_integer(BigInt::from(lambda));
    let mut rows = Vec::new();
    let mut failure = None;
    normalized.shape().for_each_index(|idx| {
        let count = normalized.get(idx) * &lam;
        if !count.is_integer() || count < Rational::zero() {
            failure.get_or_insert_with(|| format!("lambda * entry at {idx:?} is not a nonnegative integer"));
            return;
        }
        let row: Vec<u32> = idx.iter().map(|&i| i as u32 + 1).collect();
        for _ in 0..count.to_integer().to_usize().unwrap_or(0) {
            rows.push(row.clone());
        }
    });
    if let Some(msg) = failure {
        return Err(Error::validation(msg));
    }
    let r = OrthogonalArray::new(t, n, normalized.dim(), lambda, rows)?;
    oa_to_tensor(&r)?;
    Ok(r)
}
