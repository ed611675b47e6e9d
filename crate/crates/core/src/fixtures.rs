//! Named matrices from the literature and seeded random generators.
//!
//! Three-dimensional displays of the form `( X | Y | Z )` are read with the
//! index `(row, block, column)`, so the storage order is the reading order of
//! the display.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    iterated_group_hypercube, latin_to_tensor, LatinHypercube, OrthogonalArray, Quasigroup,
};
use crate::format::Document;
use crate::rational::{frac, int, Rational};
use crate::tensor::{identity_diag, uniform_j, Shape, Tensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 3-dimensional order-3 matrix with `per A = 2` and `per (A x A) = 40`.
pub fn remark1_a() -> Tensor {
    #[rustfmt::skip]
    let display = [
        1, 0, 0,  0, 0, 0,  0, 1, 0,
        0, 0, 1,  0, 1, 0,  0, 0, 0,
        0, 0, 0,  1, 0, 0,  0, 0, 1,
    ];
    Tensor::from_ints(&[3, 3, 3], &display).expect("fixed shape")
}

/// All-ones 3-dimensional matrix of order 2.
pub fn remark2_a() -> Tensor {
    Tensor::from_ints(&[2, 2, 2], &[1; 8]).expect("fixed shape")
}

/// 3-dimensional order-2 matrix with `per B = 0`.
pub fn remark2_b() -> Tensor {
    Tensor::from_ints(&[2, 2, 2], &[0, 1, 1, 0, 1, 0, 0, 1]).expect("fixed shape")
}

/// The 4x4x4 display printed for `A (x) B` of [`remark2_a`], [`remark2_b`].
/// It equals the Kronecker product with hyperplanes 2 and 3 of the block
/// axis exchanged; see [`remark2_display_permutation`].
pub fn remark2_displayed_kronecker() -> Tensor {
    #[rustfmt::skip]
    let display = [
        0, 1, 0, 1,  0, 1, 0, 1,  1, 0, 1, 0,  1, 0, 1, 0,
        1, 0, 1, 0,  1, 0, 1, 0,  0, 1, 0, 1,  0, 1, 0, 1,
        0, 1, 0, 1,  0, 1, 0, 1,  1, 0, 1, 0,  1, 0, 1, 0,
        1, 0, 1, 0,  1, 0, 1, 0,  0, 1, 0, 1,  0, 1, 0, 1,
    ];
    Tensor::from_ints(&[4, 4, 4], &display).expect("fixed shape")
}

/// `(axis, perm)` with `permute_hyperplanes(A (x) B, axis, perm)` equal to
/// [`remark2_displayed_kronecker`].
pub fn remark2_display_permutation() -> (usize, Vec<usize>) {
    (1, vec![0, 2, 1, 3])
}

/// Order-`n` matrix whose first column is all ones, zero elsewhere.
pub fn first_column_ones(n: usize) -> Tensor {
    Tensor::from_fn(Shape::new(vec![n, n]).expect("n >= 1"), |i| int((i[1] == 0) as i64))
}

/// Order-`n` matrix whose first row is all ones, zero elsewhere.
pub fn first_row_ones(n: usize) -> Tensor {
    Tensor::from_fn(Shape::new(vec![n, n]).expect("n >= 1"), |i| int((i[0] == 0) as i64))
}

/// (0,1) matrix with ones exactly on the hyperplane `{alpha : alpha_0 = 0}`.
pub fn hyperplane_indicator(d: usize, n: usize) -> Tensor {
    Tensor::from_fn(Shape::cube(d, n).expect("n >= 1"), |i| int((i[0] == 0) as i64))
}

/// (0,1) matrix whose ones form the single diagonal
/// `{(i, i+1, .., i+1) mod n}`.
pub fn shifted_diagonal(d: usize, n: usize) -> Tensor {
    Tensor::from_fn(Shape::cube(d, n).expect("n >= 1"), |i| {
        let next = (i[0] + 1) % n;
        int(i[1..].iter().all(|&x| x == next) as i64)
    })
}

/// Two 2-stochastic order-2 matrices with `AB = 0`: the single 1 of `A` sits
/// at `(1, 1)`, the single 1 of `B` at `(0, 0)`.
pub fn dot_annihilating_pair() -> (Tensor, Tensor) {
    (
        Tensor::from_ints(&[2, 2], &[0, 0, 0, 1]).expect("fixed shape"),
        Tensor::from_ints(&[2, 2], &[1, 0, 0, 0]).expect("fixed shape"),
    )
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Rational with numerator in `-max..=max` (or `0..=max`) and denominator in
/// `1..=max_den`.
pub fn random_rational(rng: &mut impl Rng, max: i64, max_den: i64, nonnegative: bool) -> Rational {
    let lo = if nonnegative { 0 } else { -max };
    frac(rng.gen_range(lo..=max), rng.gen_range(1..=max_den.max(1)))
}

/// Dense random tensor with small rational entries. A share `zero_rate` of the
/// entries is forced to zero.
pub fn random_tensor(
    rng: &mut impl Rng,
    extents: &[usize],
    nonnegative: bool,
    zero_rate: f64,
) -> Tensor {
    let shape = Shape::new(extents.to_vec()).expect("positive extents");
    Tensor::from_fn(shape, |_| {
        if rng.gen_bool(zero_rate) {
            int(0)
        } else {
            random_rational(rng, 5, 3, nonnegative)
        }
    })
}

pub fn random_cube(rng: &mut impl Rng, d: usize, n: usize, nonnegative: bool) -> Tensor {
    random_tensor(rng, &vec![n; d], nonnegative, 0.2)
}

/// Isotope of the iterated cyclic group: independent random permutations of
/// every argument and of the symbols.
pub fn random_latin(rng: &mut impl Rng, d: usize, n: usize) -> LatinHypercube {
    let perms: Vec<Vec<usize>> = (0..d).map(|_| random_permutation(rng, n)).collect();
    let symbols = random_permutation(rng, n);
    LatinHypercube::from_fn(d, n, |idx| {
        let s: usize = idx.iter().zip(&perms).map(|(&i, p)| p[i]).sum();
        symbols[s % n] as u32 + 1
    })
    .expect("isotopes of a latin hypercube are latin")
}

pub fn random_quasigroup(rng: &mut impl Rng, arity: usize, n: usize) -> Quasigroup {
    Quasigroup::new(random_latin(rng, arity, n))
}

/// Multidimensional permutation of dimension `d >= 2`.
pub fn random_permutation_tensor(rng: &mut impl Rng, d: usize, n: usize) -> Tensor {
    latin_to_tensor(&random_latin(rng, d - 1, n))
}

/// Convex rational combination of `terms` permutation tensors, optionally
/// mixed with `J_n^d`.
pub fn random_polystochastic(rng: &mut impl Rng, d: usize, n: usize, terms: usize) -> Tensor {
    let mut parts: Vec<Tensor> = (0..terms.max(1)).map(|_| random_permutation_tensor(rng, d, n)).collect();
    if rng.gen_bool(0.5) {
        parts.push(uniform_j(d, n).expect("n >= 1"));
    }
    let weights: Vec<i64> = parts.iter().map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let mut acc = Tensor::zeros(Shape::cube(d, n).expect("n >= 1"));
    for (part, w) in parts.iter().zip(&weights) {
        acc = acc.add(&part.scale(&frac(*w, total))).expect("same shape");
    }
    acc
}

/// `n^{1-k}` times a random polystochastic matrix, which is `k`-stochastic.
pub fn random_k_stochastic(rng: &mut impl Rng, d: usize, n: usize, k: usize) -> Tensor {
    let base = random_polystochastic(rng, d, n, 2);
    let scale = Rational::new(1.into(), BigInt::from(n).pow(k as u32 - 1));
    base.scale(&scale)
}

/// Every named fixture, in every format, for round-trip checks.
pub fn corpus() -> Vec<(String, Document)> {
    let mut out: Vec<(String, Document)> = vec![
        ("remark1_a".into(), Document::Tensor(remark1_a())),
        ("remark2_a".into(), Document::Tensor(remark2_a())),
        ("remark2_b".into(), Document::Tensor(remark2_b())),
        ("remark2_kron_display".into(), Document::Tensor(remark2_displayed_kronecker())),
        ("first_column_ones_3".into(), Document::Tensor(first_column_ones(3))),
        ("first_row_ones_3".into(), Document::Tensor(first_row_ones(3))),
        ("hyperplane_3_3".into(), Document::Tensor(hyperplane_indicator(3, 3))),
        ("shifted_diagonal_3_3".into(), Document::Tensor(shifted_diagonal(3, 3))),
        ("j_3_2".into(), Document::Tensor(uniform_j(3, 2).expect("n >= 1"))),
        ("identity_4_2".into(), Document::Tensor(identity_diag(4, 2).expect("n >= 1"))),
        ("scalar".into(), Document::Tensor(Tensor::scalar(frac(-5, 7)))),
        ("vector".into(), Document::Tensor(Tensor::from_ints(&[3], &[1, -2, 0]).expect("fixed"))),
        ("rectangular".into(), Document::Tensor(Tensor::from_ints(&[2, 3], &[1, 2, 3, 4, 5, 6]).expect("fixed"))),
    ];
    let (a, b) = dot_annihilating_pair();
    out.push(("annihilating_a".into(), Document::Tensor(a)));
    out.push(("annihilating_b".into(), Document::Tensor(b)));
    for (n, d) in [(2, 2), (3, 2), (4, 2), (2, 3), (2, 4)] {
        let q = iterated_group_hypercube(n, d).expect("valid parameters");
        out.push((format!("z{n}_d{d}.latin"), Document::Latin(q)));
    }
    let z2 = iterated_group_hypercube(2, 2).expect("valid parameters");
    let rows: Vec<Vec<u32>> = z2
        .shape()
        .indices()
        .into_iter()
        .map(|i| vec![i[0] as u32 + 1, i[1] as u32 + 1, z2.symbol(&i)])
        .collect();
    out.push(("z2_oa".into(), Document::Oa(OrthogonalArray::new(2, 2, 3, 1, rows).expect("valid"))));
    let mut r = rng(9);
    for i in 0..20 {
        let d = 1 + i % 4;
        let n = 1 + i % 3;
        out.push((format!("random_{i}"), Document::Tensor(random_tensor(&mut r, &vec![n; d], false, 0.3))));
    }
    for i in 0..5 {
        out.push((format!("random_latin_{i}"), Document::Latin(random_latin(&mut r, 2 + i % 2, 2 + i % 3))));
    }
    out
}
