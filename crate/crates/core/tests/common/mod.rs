#![allow(dead_code)]

use mdmat::combinatorics::{latin_to_tensor, OrthogonalArray};
use mdmat::fixtures::{self, random_cube, random_k_stochastic, random_latin, random_permutation, random_polystochastic};
use mdmat::format::Document;
use mdmat::ops::{kronecker, AxisSet};
use mdmat::properties::{derived_covering_constants, CheckArgs};
use mdmat::rational::{frac, int};
use mdmat::stochastic::standard_covering_p;
use mdmat::tensor::{identity_diag, uniform_j, PlaneSpec};
use mdmat::{Rational, Tensor};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use mdmat::fixtures::rng;

/// Entry budget for any intermediate product in randomized instances.
pub const CAP: usize = 1024;

pub fn tensor_doc(t: Tensor) -> Document {
    Document::Tensor(t)
}

fn pow(n: usize, e: usize) -> usize {
    n.checked_pow(e as u32).unwrap_or(usize::MAX)
}

/// `count` dimensions in `lo..=hi` with `n^(sum) <= cap`.
pub fn dims(rng: &mut ChaCha8Rng, n: usize, count: usize, lo: usize, hi: usize, cap: usize) -> Vec<usize> {
    loop {
        let ds: Vec<usize> = (0..count).map(|_| rng.gen_range(lo..=hi)).collect();
        if pow(n, ds.iter().sum()) <= cap {
            return ds;
        }
    }
}

pub fn cube(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Tensor {
    random_cube(rng, d, n, false)
}

pub fn nonneg(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Tensor {
    random_cube(rng, d, n, true)
}

pub fn zero_one(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Tensor {
    let density = rng.gen_range(0.3..0.9);
    Tensor::from_fn(mdmat::Shape::cube(d, n).unwrap(), |_| int(rng.gen_bool(density) as i64))
}

pub fn nonzero_scalar(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = fixtures::random_rational(rng, 4, 3, false);
        if c != int(0) {
            return c;
        }
    }
}

/// Random nonempty subset of `axes` of size at most `max`.
pub fn subset(rng: &mut ChaCha8Rng, axes: &[usize], max: usize) -> Vec<usize> {
    let size = rng.gen_range(1..=max.min(axes.len()).max(1));
    let mut pool = axes.to_vec();
    pool.shuffle(rng);
    pool.truncate(size);
    pool.sort_unstable();
    pool
}

/// Two disjoint nonempty axis sets of a `d`-dimensional tensor, `d >= 2`.
pub fn disjoint_pair(rng: &mut ChaCha8Rng, d: usize) -> (AxisSet, AxisSet) {
    let mut axes: Vec<usize> = (0..d).collect();
    axes.shuffle(rng);
    let split = rng.gen_range(1..d);
    let s_len = rng.gen_range(1..=split);
    let t_len = rng.gen_range(1..=d - split);
    let mut s = axes[..s_len].to_vec();
    let mut t = axes[split..split + t_len].to_vec();
    s.sort_unstable();
    t.sort_unstable();
    (AxisSet::new(s).unwrap(), AxisSet::new(t).unwrap())
}

fn n_small(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=3)
}

fn n_stoch(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(2..=3)
}

/// A random instance meeting the hypotheses of the named property.
pub fn instance(name: &str, rng: &mut ChaCha8Rng) -> (Vec<Document>, CheckArgs) {
    let mut args = CheckArgs::default();
    let t = |x: Tensor| Document::Tensor(x);
    let docs: Vec<Document> = match name {
        "outer-assoc" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 3, 1, 4, CAP);
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "outer-swap" | "outer-scalar" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 1, 4, CAP);
            args.scalar = nonzero_scalar(rng);
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "outer-distrib" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 1, 4, CAP);
            vec![t(cube(rng, ds[0], n)), t(cube(rng, ds[0], n)), t(cube(rng, ds[1], n))]
        }
        "kron-assoc" => loop {
            let ns: Vec<usize> = (0..3).map(|_| n_small(rng)).collect();
            let d = rng.gen_range(1..=4);
            if pow(ns.iter().product(), d) <= CAP {
                break ns.iter().map(|&n| t(cube(rng, d, n))).collect();
            }
        },
        "kron-swap" | "kron-scalar" => loop {
            let (n1, n2) = (n_small(rng), n_small(rng));
            let d = rng.gen_range(1..=4);
            args.scalar = nonzero_scalar(rng);
            if pow(n1 * n2, d) <= CAP {
                break vec![t(cube(rng, d, n1)), t(cube(rng, d, n2))];
            }
        },
        "kron-distrib" => loop {
            let (n1, n2) = (n_small(rng), n_small(rng));
            let d = rng.gen_range(1..=4);
            if pow(n1 * n2, d) <= CAP {
                break vec![t(cube(rng, d, n1)), t(cube(rng, d, n1)), t(cube(rng, d, n2))];
            }
        },
        "contract-commute" | "project-commute" | "rel-project-contract" => {
            let n = n_small(rng);
            let d = rng.gen_range(2..=4);
            let (s, tt) = disjoint_pair(rng, d);
            args.sets = vec![s, tt];
            vec![t(cube(rng, d, n))]
        }
        "contract-linear" | "project-linear" => {
            let n = n_small(rng);
            let d = rng.gen_range(1..=4);
            args.sets = vec![AxisSet::new(subset(rng, &(0..d).collect::<Vec<_>>(), d)).unwrap()];
            args.scalar = nonzero_scalar(rng);
            vec![t(cube(rng, d, n)), t(cube(rng, d, n))]
        }
        "contract-outer-j" | "project-outer-j" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 1, 3, CAP);
            args.t = ds[1];
            vec![t(cube(rng, ds[0], n))]
        }
        "plane-extraction" => {
            let n = n_small(rng);
            let d = rng.gen_range(1..=4);
            let mut fixed = Vec::new();
            for axis in 0..d {
                if rng.gen_bool(0.5) {
                    fixed.push((axis, rng.gen_range(0..n)));
                }
            }
            args.plane = Some(PlaneSpec::new(fixed).unwrap());
            vec![t(cube(rng, d, n))]
        }
        "dot-assoc" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 3, 2, 3, CAP);
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "dot-distrib" => {
            let n = n_small(rng);
            let d = rng.gen_range(1..=3);
            (0..3).map(|_| t(cube(rng, d, n))).collect()
        }
        "dot-scalar" | "sdot-dot" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 1, 4, CAP);
            args.scalar = nonzero_scalar(rng);
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "dot-identity" => {
            let n = n_small(rng);
            let d = rng.gen_range(1..=4);
            vec![t(cube(rng, d, n))]
        }
        "circle-assoc" => {
            let n = rng.gen_range(1..=2);
            let ds: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=3)).collect();
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "circle-distrib-left" => {
            let n = n_small(rng);
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            vec![t(cube(rng, d1, n)), t(cube(rng, d1, n)), t(cube(rng, d2, n))]
        }
        "circle-distrib-right" => {
            let n = n_small(rng);
            let d2 = rng.gen_range(1..=4);
            vec![t(cube(rng, 2, n)), t(cube(rng, d2, n)), t(cube(rng, d2, n))]
        }
        "circle-scalar" | "circle-iterated-dot" => {
            let n = n_small(rng);
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            args.scalar = nonzero_scalar(rng);
            vec![t(cube(rng, d1, n)), t(cube(rng, d2, n))]
        }
        "rel-outer-kron" => loop {
            let (n1, n2) = (n_small(rng), n_small(rng));
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            if pow(n1 * n2, d1 + d2) <= CAP {
                break vec![
                    t(cube(rng, d1, n1)),
                    t(cube(rng, d2, n1)),
                    t(cube(rng, d1, n2)),
                    t(cube(rng, d2, n2)),
                ];
            }
        },
        "rel-contract-outer" | "rel-project-outer" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 2, 3, CAP);
            args.sets = vec![AxisSet::new(subset(rng, &(0..ds[0]).collect::<Vec<_>>(), ds[0] - 1)).unwrap()];
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "rel-dot-outer" => {
            let n = n_small(rng);
            let ds = loop {
                let ds = dims(rng, n, 3, 1, 3, CAP);
                if ds[0] + ds[1] >= 3 {
                    break ds;
                }
            };
            args.i = Some(rng.gen_range(0..ds[0]));
            args.j = Some(rng.gen_range(0..ds[1]));
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "rel-contract-kron" | "rel-project-kron" => loop {
            let (n1, n2) = (n_small(rng), n_small(rng));
            let d = rng.gen_range(2..=4);
            if pow(n1 * n2, d) <= CAP {
                args.sets = vec![AxisSet::new(subset(rng, &(0..d).collect::<Vec<_>>(), d - 1)).unwrap()];
                break vec![t(cube(rng, d, n1)), t(cube(rng, d, n2))];
            }
        },
        "rel-kron-dot" => loop {
            let (n1, n2) = (n_small(rng), n_small(rng));
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            if d1 + d2 >= 3 && pow(n1 * n2, d1 + d2) <= CAP {
                break vec![
                    t(cube(rng, d1, n1)),
                    t(cube(rng, d1, n2)),
                    t(cube(rng, d2, n1)),
                    t(cube(rng, d2, n2)),
                ];
            }
        },
        "rel-contract-dot" | "rel-project-dot" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 2, 4, CAP);
            args.sets = vec![AxisSet::new(subset(rng, &(0..ds[0] - 1).collect::<Vec<_>>(), ds[0] - 1)).unwrap()];
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "thm-outer-stoch" => {
            let n = n_stoch(rng);
            let ds = dims(rng, n, 2, 1, 3, CAP);
            ds.iter()
                .map(|&d| t(k_stochastic(rng, d, n)))
                .collect()
        }
        "thm-kron-stoch" => loop {
            let (n1, n2) = (n_stoch(rng), n_stoch(rng));
            let d = rng.gen_range(2..=3);
            if pow(n1 * n2, d) <= CAP {
                break vec![t(k_stochastic(rng, d, n1)), t(k_stochastic(rng, d, n2))];
            }
        },
        "thm-contract-stoch" => {
            let n = n_stoch(rng);
            let d = rng.gen_range(2..=4);
            let k = rng.gen_range(1..d);
            let ell = rng.gen_range(1..=d - k);
            args.sets = vec![AxisSet::new(subset_of_size(rng, d, ell)).unwrap()];
            vec![t(random_k_stochastic(rng, d, n, k))]
        }
        "thm-project-stoch" => {
            let n = n_stoch(rng);
            let d = rng.gen_range(2..=4);
            let ell = rng.gen_range(1..d);
            args.sets = vec![AxisSet::new(subset_of_size(rng, d, ell)).unwrap()];
            vec![t(k_stochastic(rng, d, n))]
        }
        "thm-dot-stoch" => {
            let n = n_stoch(rng);
            if rng.gen_bool(0.5) {
                let ds = dims(rng, n, 2, 2, 3, CAP);
                ds.iter().map(|&d| t(random_polystochastic(rng, d, n, 2))).collect()
            } else {
                let ds = dims(rng, n, 2, 3, 4, 4 * CAP);
                ds.iter()
                    .map(|&d| {
                        let k = rng.gen_range(1..=d - 2);
                        t(random_k_stochastic(rng, d, n, k))
                    })
                    .collect()
            }
        }
        "thm-circle-stoch" => {
            let n = n_stoch(rng);
            let (d1, d2) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            vec![t(random_polystochastic(rng, d1, n, 2)), t(random_polystochastic(rng, d2, n, 2))]
        }
        "dot-uniform" | "circle-uniform" => {
            let n = n_stoch(rng);
            let d = rng.gen_range(2..=3);
            args.t = rng.gen_range(1..=3);
            vec![t(random_polystochastic(rng, d, n, 2))]
        }
        "stoch-scaling" => {
            let n = n_stoch(rng);
            let d = rng.gen_range(2..=4);
            let k = rng.gen_range(1..d);
            vec![t(random_k_stochastic(rng, d, n, k))]
        }
        "eigen-stoch" => {
            let n = n_stoch(rng);
            let d = rng.gen_range(2..=4);
            vec![t(random_k_stochastic(rng, d, n, d - 1))]
        }
        "eigenpair" => {
            let n = n_stoch(rng);
            let d = rng.gen_range(2..=4);
            args.scalar = int(1);
            if rng.gen_bool(0.5) {
                let e = Tensor::from_ints(&[n], &vec![1; n]).unwrap();
                vec![t(random_k_stochastic(rng, d, n, d - 1)), t(e)]
            } else {
                vec![t(identity_diag(d, n).unwrap()), t(cube(rng, 1, n))]
            }
        }
        "covering" => {
            let n1 = n_stoch(rng);
            let n2 = rng.gen_range(1..=2);
            let d = rng.gen_range(2..=3);
            let b = cube(rng, d, n1);
            let (c, c_id) = derived_covering_constants(d, n2);
            let a = if rng.gen_bool(0.5) {
                kronecker(&b, &uniform_j(d, n2).unwrap()).unwrap().scale(&c)
            } else {
                kronecker(&b, &identity_diag(d, n2).unwrap()).unwrap().scale(&c_id)
            };
            let p = standard_covering_p(n1, n2).unwrap().matrix().clone();
            vec![t(a), t(b), t(p)]
        }
        "covering-standard" => loop {
            let n1 = n_small(rng);
            let n2 = rng.gen_range(1..=3);
            let d = rng.gen_range(2..=3);
            let a = cube(rng, d, n1);
            if pow(n1 * n2, d) <= CAP && !a.is_zero() {
                args.t = n2;
                break vec![t(a)];
            }
        },
        "per-outer" | "per-reduced-outer" => {
            let n = n_small(rng);
            let ds = dims(rng, n, 2, 1, 3, 729);
            args.sigma = Some(random_permutation(rng, n));
            ds.iter().map(|&d| t(cube(rng, d, n))).collect()
        }
        "dot-perm-lower-bound" => {
            let n = n_small(rng);
            let ds = loop {
                let ds = dims(rng, n, 2, 1, 3, CAP);
                if ds[0] + ds[1] >= 3 {
                    break ds;
                }
            };
            ds.iter().map(|&d| t(nonneg(rng, d, n))).collect()
        }
        "circle-perm-lower-bound" => {
            let n = n_small(rng);
            let (d1, d2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            vec![t(nonneg(rng, d1, n)), t(nonneg(rng, d2, n))]
        }
        "kron-lower-bound" => {
            let (n1, n2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let d = rng.gen_range(2..=3);
            vec![t(zero_one(rng, d, n1)), t(zero_one(rng, d, n2))]
        }
        "project-lower-bound" => {
            let n = n_small(rng);
            let d = rng.gen_range(2..=4);
            args.sets = vec![AxisSet::new(subset(rng, &(0..d).collect::<Vec<_>>(), d - 1)).unwrap()];
            vec![t(nonneg(rng, d, n))]
        }
        "per-equivalence" | "per-oracle" => {
            let n = n_small(rng);
            let d = rng.gen_range(1..=4);
            vec![t(cube(rng, d, n))]
        }
        "latin-permutation" | "transversal-count" => {
            let n = rng.gen_range(1..=4);
            let d = rng.gen_range(1..=3);
            vec![Document::Latin(random_latin(rng, d, n))]
        }
        "qg-compose" | "qg-compose-transversals" => {
            let n = rng.gen_range(1..=4);
            let (d1, d2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            vec![Document::Latin(random_latin(rng, d1, n)), Document::Latin(random_latin(rng, d2, n))]
        }
        "qg-direct-product" => {
            let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let d = rng.gen_range(1..=2);
            vec![Document::Latin(random_latin(rng, d, n1)), Document::Latin(random_latin(rng, d, n2))]
        }
        "oa-stochastic" => vec![Document::Oa(random_oa_candidate(rng))],
        other => panic!("no instance generator for `{other}`"),
    };
    (docs, args)
}

fn subset_of_size(rng: &mut ChaCha8Rng, d: usize, size: usize) -> Vec<usize> {
    let mut axes: Vec<usize> = (0..d).collect();
    axes.shuffle(rng);
    axes.truncate(size);
    axes.sort_unstable();
    axes
}

/// Random `k`-stochastic matrix with a random degree `k`.
pub fn k_stochastic(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Tensor {
    let k = rng.gen_range(1..=d);
    if d >= 2 {
        random_k_stochastic(rng, d, n, k)
    } else {
        let p = random_permutation(rng, n);
        Tensor::from_fn(mdmat::Shape::new(vec![n]).unwrap(), |i| if p[i[0]] == 0 { int(1) } else { int(0) })
    }
}

/// Either the rows `(a, q_a)` of a random latin hypercube, which form an
/// orthogonal array of strength `d`, or random rows.
pub fn random_oa_candidate(rng: &mut ChaCha8Rng) -> OrthogonalArray {
    let n = rng.gen_range(2..=3);
    if rng.gen_bool(0.5) {
        let d = rng.gen_range(1..=2);
        let q = random_latin(rng, d, n);
        let m = latin_to_tensor(&q);
        let rows: Vec<Vec<u32>> = m
            .shape()
            .indices()
            .into_iter()
            .filter(|i| m.get(i) == &int(1))
            .map(|i| i.iter().map(|&c| c as u32 + 1).collect())
            .collect();
        OrthogonalArray::new(d, n, d + 1, 1, rows).unwrap()
    } else {
        let t = rng.gen_range(1..=2);
        let k = rng.gen_range(t..=3);
        let lambda = rng.gen_range(1..=2);
        let count = lambda * n.pow(t as u32);
        let rows = (0..count)
            .map(|_| (0..k).map(|_| rng.gen_range(1..=n as u32)).collect())
            .collect();
        OrthogonalArray::new(t, n, k, lambda, rows).unwrap()
    }
}

pub fn frac_tensor(extents: &[usize], values: &[(i64, i64)]) -> Tensor {
    let shape = mdmat::Shape::new(extents.to_vec()).unwrap();
    Tensor::new(shape, values.iter().map(|&(a, b)| frac(a, b)).collect()).unwrap()
}
