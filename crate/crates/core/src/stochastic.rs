//! Stochastic matrices and the stochasticity of products.
//!
//! A nonnegative matrix is `k`-stochastic when every `k`-dimensional plane
//! sums to exactly 1. This module detects that, predicts the degree and the
//! normalizing factor for each product kind, verifies eigenpairs and checks
//! coverings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ops::{circle, kronecker, project, AxisSet};
use crate::rational::{self, Rational};
use crate::tensor::{identity_diag, uniform_j, Tensor};

/// All `k`-element subsets of `0..d` in lexicographic order.
pub(crate) fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// True iff every `k`-dimensional plane of `a` sums to exactly 1.
pub fn is_k_stochastic(a: &Tensor, k: usize) -> Result<bool> {
    a.require_cubical("matrix")?;
    a.require_nonnegative("matrix")?;
    if k == 0 || k > a.dim() {
        return Err(Error::validation(format!(
            "plane dimension {k} outside 1..={}",
            a.dim()
        )));
    }
    for varying in subsets(a.dim(), k) {
        let sums = project(a, &[AxisSet::new(varying)?])?;
        if !sums.entries().iter().all(One::is_one) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochasticityReport {
    pub nonnegative: bool,
    /// Every `k` for which the matrix is `k`-stochastic; empty unless nonnegative.
    pub degrees: BTreeSet<usize>,
}

impl StochasticityReport {
    pub fn is_polystochastic(&self) -> bool {
        self.degrees.contains(&1)
    }

    /// The smallest degree, i.e. the strongest stochasticity claim.
    pub fn min_degree(&self) -> Option<usize> {
        self.degrees.first().copied()
    }
}

pub fn stochasticity_report(a: &Tensor) -> Result<StochasticityReport> {
    a.require_cubical("matrix")?;
    let nonnegative = a.is_nonnegative();
    let mut degrees = BTreeSet::new();
    if nonnegative {
        for k in 1..=a.dim() {
            if is_k_stochastic(a, k)? {
                degrees.insert(k);
            }
        }
    }
    Ok(StochasticityReport {
        nonnegative,
        degrees,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Outer,
    Kronecker,
    Contraction,
    Projection,
    Dot,
    Circle,
}

impl ProductKind {
    pub const ALL: [ProductKind; 6] = [
        ProductKind::Outer,
        ProductKind::Kronecker,
        ProductKind::Contraction,
        ProductKind::Projection,
        ProductKind::Dot,
        ProductKind::Circle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Outer => "outer",
            ProductKind::Kronecker => "kronecker",
            ProductKind::Contraction => "contraction",
            ProductKind::Projection => "projection",
            ProductKind::Dot => "dot",
            ProductKind::Circle => "circle",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProductKind::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "kron" && *k == ProductKind::Kronecker))
            .ok_or_else(|| Error::validation(format!("unknown product kind `{s}`")))
    }
}

/// Dimensions, stochasticity degrees and orders of the factors. Single-input
/// kinds (contraction, projection) read only the first triple and `ell`,
/// the number of removed axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductParams {
    pub d1: usize,
    pub k1: usize,
    pub n1: usize,
    pub d2: usize,
    pub k2: usize,
    pub n2: usize,
    pub ell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductStochasticityPrediction {
    pub kind: ProductKind,
    /// Predicted degree `r` of the scaled product.
    pub degree: usize,
    /// Factor making `scale * product` exactly `degree`-stochastic.
    pub scale: Rational,
    pub applicable: bool,
    pub reason: String,
}

impl ProductStochasticityPrediction {
    fn yes(kind: ProductKind, degree: usize, scale: Rational, reason: impl Into<String>) -> Self {
        ProductStochasticityPrediction {
            kind,
            degree,
            scale,
            applicable: true,
            reason: reason.into(),
        }
    }

    fn no(kind: ProductKind, reason: impl Into<String>) -> Self {
        ProductStochasticityPrediction {
            kind,
            degree: 0,
            scale: Rational::zero(),
            applicable: false,
            reason: reason.into(),
        }
    }
}

fn npow(n: usize, exp: i64) -> Rational {
    rational::pow(&rational::int(n as i64), exp)
}

/// Degree of stochasticity and normalization of a product of stochastic
/// matrices. Never fails: unsupported combinations come back with
/// `applicable == false` and a reason.
pub fn predicted_product_stochasticity(
    kind: ProductKind,
    p: &ProductParams,
) -> ProductStochasticityPrediction {
    use ProductKind::*;
    let first_ok = p.d1 >= 1 && p.n1 >= 1 && (1..=p.d1).contains(&p.k1);
    let second_ok = p.d2 >= 1 && p.n2 >= 1 && (1..=p.d2).contains(&p.k2);
    let binary = matches!(kind, Outer | Kronecker | Dot | Circle);
    if !first_ok || (binary && !second_ok) {
        return ProductStochasticityPrediction::no(kind, "each k must lie in 1..=d and n must be positive");
    }
    let (d1, k1, n1, d2, k2, n2) = (p.d1, p.k1 as i64, p.n1, p.d2, p.k2 as i64, p.n2);
    match kind {
        Outer => {
            if n1 != n2 {
                return ProductStochasticityPrediction::no(kind, "outer product needs equal orders");
            }
            let r = (d1 as i64 + k2).max(d2 as i64 + k1);
            ProductStochasticityPrediction::yes(
                kind,
                r as usize,
                npow(n1, k1 + k2 - r),
                "r = max(d1 + k2, d2 + k1), scale n^(k1 + k2 - r)",
            )
        }
        Kronecker => {
            if d1 != d2 {
                return ProductStochasticityPrediction::no(kind, "Kronecker product needs equal dimensions");
            }
            let r = k1.max(k2);
            ProductStochasticityPrediction::yes(
                kind,
                r as usize,
                npow(n1, k1 - r) * npow(n2, k2 - r),
                "r = max(k1, k2), scale n1^(k1 - r) * n2^(k2 - r)",
            )
        }
        Contraction => {
            let ell = p.ell;
            if ell == 0 || ell > d1 {
                return ProductStochasticityPrediction::no(kind, "contracted set size must lie in 1..=d");
            }
            if p.k1 + ell > d1 {
                return ProductStochasticityPrediction::no(kind, "needs k + ell <= d");
            }
            ProductStochasticityPrediction::yes(kind, p.k1, npow(n1, -1), "(1/n) A_S keeps degree k")
        }
        Projection => {
            let ell = p.ell;
            if ell == 0 || ell > d1 {
                return ProductStochasticityPrediction::no(kind, "projected set size must lie in 1..=d");
            }
            if ell == d1 {
                return ProductStochasticityPrediction::no(kind, "projection onto a scalar has no planes");
            }
            if p.k1 > ell {
                ProductStochasticityPrediction::yes(kind, p.k1 - ell, Rational::one(), "degree drops to k - ell")
            } else {
                ProductStochasticityPrediction::yes(
                    kind,
                    1,
                    npow(n1, k1 - ell as i64 - 1),
                    "k <= ell: P_S(A) = n^(ell - k + 1) J",
                )
            }
        }
        Dot => {
            if n1 != n2 {
                return ProductStochasticityPrediction::no(kind, "dot product needs equal orders");
            }
            if d1 + d2 < 3 {
                return ProductStochasticityPrediction::no(kind, "dot product of two vectors is a scalar");
            }
            if k1 == 1 && k2 == 1 {
                return ProductStochasticityPrediction::yes(kind, 1, Rational::one(), "polystochastic factors");
            }
            let r = (k1 + d2 as i64).max(k2 + d1 as i64);
            if r > (d1 + d2) as i64 - 2 {
                return ProductStochasticityPrediction::no(
                    kind,
                    format!("r = {r} exceeds the product dimension {}", d1 + d2 - 2),
                );
            }
            ProductStochasticityPrediction::yes(
                kind,
                r as usize,
                npow(n1, k1 + k2 - r - 1),
                "r = max(k1 + d2, k2 + d1), scale n^(k1 + k2 - r - 1)",
            )
        }
        Circle => {
            if n1 != n2 {
                return ProductStochasticityPrediction::no(kind, "circle product needs equal orders");
            }
            if k1 == 1 && k2 == 1 {
                ProductStochasticityPrediction::yes(kind, 1, Rational::one(), "polystochastic factors")
            } else {
                ProductStochasticityPrediction::no(kind, "only polystochastic factors have a guaranteed degree")
            }
        }
    }
}

/// A candidate eigenvalue with its eigenvector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenpair {
    pub lambda: Rational,
    pub v: Tensor,
}

/// Checks `A o v = lambda (I o v)` exactly.
pub fn verify_eigenpair(a: &Tensor, pair: &Eigenpair) -> Result<bool> {
    let n = a.require_cubical("matrix")?;
    if pair.v.extents() != [n] {
        return Err(Error::validation(format!(
            "eigenvector must be a vector of length {n}, got shape {}",
            pair.v.shape()
        )));
    }
    let lhs = circle(a, &pair.v)?;
    let rhs = circle(&identity_diag(a.dim(), n)?, &pair.v)?.scale(&pair.lambda);
    Ok(lhs == rhs)
}

/// A rectangular (0,1) matrix with exactly one 1 in every row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringWitness {
    p: Tensor,
}

impl CoveringWitness {
    pub fn new(p: Tensor) -> Result<Self> {
        if p.dim() != 2 {
            return Err(Error::validation("covering matrix must be 2-dimensional"));
        }
        if !p.is_zero_one() {
            return Err(Error::validation("covering matrix must be a (0,1) matrix"));
        }
        let cols = p.extents()[1];
        for (row, chunk) in p.entries().chunks(cols).enumerate() {
            if chunk.iter().filter(|v| v.is_one()).count() != 1 {
                return Err(Error::validation(format!("row {row} of the covering matrix does not hold exactly one 1")));
            }
        }
        Ok(CoveringWitness { p })
    }

    pub fn matrix(&self) -> &Tensor {
        &self.p
    }
}

/// The `(n1 n2) x n1` matrix with `p_{i,j} = 1` iff `j = ceil(i / n2)`
/// (1-based), i.e. row `i` selects column `i / n2` (0-based).
pub fn standard_covering_p(n1: usize, n2: usize) -> Result<CoveringWitness> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::validation("orders must be positive"));
    }
    let shape = crate::tensor::Shape::new(vec![n1 * n2, n1])?;
    let p = Tensor::from_fn(shape, |idx| {
        if idx[1] == idx[0] / n2 {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    CoveringWitness::new(p)
}

fn covering_sides(a: &Tensor, b: &Tensor, w: &CoveringWitness) -> Result<(Tensor, Tensor)> {
    let big = a.require_cubical("covering matrix")?;
    let small = b.require_cubical("covered matrix")?;
    if a.dim() != b.dim() {
        return Err(Error::validation("covering needs matrices of equal dimension"));
    }
    if small > big {
        return Err(Error::validation("covered matrix has larger order than the covering one"));
    }
    if w.p.extents() != [big, small] {
        return Err(Error::validation(format!(
            "covering matrix must be {big}x{small}, got {}",
            w.p.shape()
        )));
    }
    Ok((circle(a, &w.p)?, circle(&w.p, b)?))
}

/// True iff `A o P = P o B`.
pub fn check_covering(a: &Tensor, b: &Tensor, w: &CoveringWitness) -> Result<bool> {
    let (lhs, rhs) = covering_sides(a, b, w)?;
    Ok(lhs == rhs)
}

/// The unique `c` with `(cA) o P = P o B`, if there is one.
pub fn covering_scale(a: &Tensor, b: &Tensor, w: &CoveringWitness) -> Result<Option<Rational>> {
    let (lhs, rhs) = covering_sides(a, b, w)?;
    let Some(pos) = lhs.entries().iter().position(|v| !v.is_zero()) else {
        return Ok(None);
    };
    let c = &rhs.entries()[pos] / &lhs.entries()[pos];
    Ok((lhs.scale(&c) == rhs).then_some(c))
}

/// Scalars making `c (A (x) J_{n2})` and `c' (A (x) I_{n2})` coverings of `A`
/// through the standard covering matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringConstants {
    pub uniform: Option<Rational>,
    pub identity: Option<Rational>,
}

pub fn covering_constants(a: &Tensor, n2: usize) -> Result<CoveringConstants> {
    let n1 = a.require_cubical("matrix")?;
    let d = a.dim();
    let w = standard_covering_p(n1, n2)?;
    let uniform = covering_scale(&kronecker(a, &uniform_j(d, n2)?)?, a, &w)?;
    let identity = covering_scale(&kronecker(a, &identity_diag(d, n2)?)?, a, &w)?;
    Ok(CoveringConstants { uniform, identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::tensor::Shape;

    fn single_one(at: &[usize]) -> Tensor {
        Tensor::from_fn(Shape::cube(2, 2).unwrap(), |i| if i == at { int(1) } else { int(0) })
    }

    #[test]
    fn uniform_is_polystochastic() {
        for (d, n) in [(1, 3), (2, 2), (3, 2), (3, 3)] {
            assert!(is_k_stochastic(&uniform_j(d, n).unwrap(), 1).unwrap());
        }
        let report = stochasticity_report(&uniform_j(3, 3).unwrap()).unwrap();
        assert!(report.degrees.contains(&1));
        assert!(!report.degrees.contains(&3));
    }

    #[test]
    fn scaling_raises_degree() {
        let j = uniform_j(3, 3).unwrap();
        assert!(is_k_stochastic(&j.scale(&frac(1, 3)), 2).unwrap());
        assert!(!is_k_stochastic(&j, 2).unwrap());
    }

    #[test]
    fn report_edge_cases() {
        let zero = Tensor::zeros(Shape::cube(2, 3).unwrap());
        assert!(stochasticity_report(&zero).unwrap().degrees.is_empty());
        let r = stochasticity_report(&single_one(&[1, 1])).unwrap();
        assert_eq!(r.degrees, BTreeSet::from([2]));
        let neg = Tensor::from_ints(&[2, 2], &[1, -1, 0, 1]).unwrap();
        let r = stochasticity_report(&neg).unwrap();
        assert!(!r.nonnegative && r.degrees.is_empty());
        assert!(is_k_stochastic(&neg, 1).is_err());
        assert!(is_k_stochastic(&uniform_j(2, 2).unwrap(), 3).is_err());
    }

    fn params(d1: usize, k1: usize, n1: usize, d2: usize, k2: usize, n2: usize, ell: usize) -> ProductParams {
        ProductParams { d1, k1, n1, d2, k2, n2, ell }
    }

    #[test]
    fn predictions() {
        let p = predicted_product_stochasticity(ProductKind::Outer, &params(2, 1, 2, 2, 1, 2, 0));
        assert!(p.applicable);
        assert_eq!((p.degree, p.scale), (3, frac(1, 2)));

        let p = predicted_product_stochasticity(ProductKind::Dot, &params(3, 1, 3, 4, 1, 3, 0));
        assert_eq!((p.degree, p.scale.clone(), p.applicable), (1, int(1), true));

        let p = predicted_product_stochasticity(ProductKind::Contraction, &params(4, 1, 5, 0, 0, 0, 2));
        assert_eq!((p.degree, p.scale.clone(), p.applicable), (1, frac(1, 5), true));
        assert!(!predicted_product_stochasticity(ProductKind::Contraction, &params(4, 3, 5, 0, 0, 0, 2)).applicable);

        let p = predicted_product_stochasticity(ProductKind::Kronecker, &params(3, 1, 2, 3, 2, 3, 0));
        assert_eq!((p.degree, p.scale.clone()), (2, frac(1, 2)));

        let p = predicted_product_stochasticity(ProductKind::Projection, &params(4, 3, 2, 0, 0, 0, 1));
        assert_eq!((p.degree, p.scale.clone()), (2, int(1)));
        let p = predicted_product_stochasticity(ProductKind::Projection, &params(4, 1, 2, 0, 0, 0, 2));
        assert_eq!((p.degree, p.scale.clone()), (1, frac(1, 4)));

        let p = predicted_product_stochasticity(ProductKind::Dot, &params(2, 2, 2, 2, 2, 2, 0));
        assert!(!p.applicable);
        assert!(!predicted_product_stochasticity(ProductKind::Outer, &params(2, 3, 2, 2, 1, 2, 0)).applicable);
        assert!(!predicted_product_stochasticity(ProductKind::Circle, &params(2, 2, 2, 2, 1, 2, 0)).applicable);
    }

    #[test]
    fn product_kind_names() {
        for kind in ProductKind::ALL {
            assert_eq!(kind.name().parse::<ProductKind>().unwrap(), kind);
        }
        assert!("sum".parse::<ProductKind>().is_err());
    }

    #[test]
    fn eigenpairs() {
        let ones = Tensor::from_ints(&[2], &[1, 1]).unwrap();
        let half = frac(1, 2);
        let a = uniform_j(3, 2).unwrap().scale(&half);
        assert!(verify_eigenpair(&a, &Eigenpair { lambda: int(1), v: ones.clone() }).unwrap());
        let v = Tensor::from_ints(&[3], &[4, -1, 7]).unwrap();
        let i = identity_diag(2, 3).unwrap();
        assert!(verify_eigenpair(&i, &Eigenpair { lambda: int(1), v }).unwrap());
        let v = Tensor::from_ints(&[2], &[1, -1]).unwrap();
        assert!(verify_eigenpair(&uniform_j(2, 2).unwrap(), &Eigenpair { lambda: int(0), v }).unwrap());
        assert!(verify_eigenpair(&a, &Eigenpair { lambda: int(2), v: ones.clone() }).is_ok_and(|ok| !ok));
        let bad = Tensor::from_ints(&[3], &[1, 1, 1]).unwrap();
        assert!(verify_eigenpair(&a, &Eigenpair { lambda: int(1), v: bad }).is_err());
    }

    #[test]
    fn standard_covering_matrix() {
        let w = standard_covering_p(2, 2).unwrap();
        assert_eq!(w.matrix(), &Tensor::from_ints(&[4, 2], &[1, 0, 1, 0, 0, 1, 0, 1]).unwrap());
        let w = standard_covering_p(1, 3).unwrap();
        assert_eq!(w.matrix(), &Tensor::from_ints(&[3, 1], &[1, 1, 1]).unwrap());
        assert!(CoveringWitness::new(Tensor::from_ints(&[2, 2], &[1, 1, 0, 1]).unwrap()).is_err());
        assert!(CoveringWitness::new(Tensor::from_ints(&[2, 2], &[0, 0, 0, 1]).unwrap()).is_err());
    }

    #[test]
    fn self_covering_through_identity() {
        let a = Tensor::from_ints(&[2, 2, 2], &[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let w = CoveringWitness::new(identity_diag(2, 2).unwrap()).unwrap();
        assert!(check_covering(&a, &a, &w).unwrap());
        assert_eq!(covering_scale(&a, &a, &w).unwrap(), Some(int(1)));
        let wrong = standard_covering_p(2, 2).unwrap();
        assert!(check_covering(&a, &a, &wrong).is_err());
    }

    #[test]
    fn subsets_enumerated_in_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
    }
}
