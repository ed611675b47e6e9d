use mdmat::format::{parse_pmat, write_pmat};
use mdmat::ops::{circle, contract, dot, dot_ij, kronecker, outer, project, s_dot, AxisSet};
use mdmat::permanent::{permanent, permanent_parallel};
use mdmat::rational::{frac, int};
use mdmat::stochastic::stochasticity_report;
use mdmat::tensor::invert_permutation;
use mdmat::{Rational, Shape, Tensor};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn entry() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| frac(a, b))
}

fn tensor(extents: Vec<usize>) -> impl Strategy<Value = Tensor> {
    let len: usize = extents.iter().product();
    prop::collection::vec(entry(), len)
        .prop_map(move |v| Tensor::new(Shape::new(extents.clone()).unwrap(), v).unwrap())
}

fn cube(d: usize, n: usize) -> impl Strategy<Value = Tensor> {
    tensor(vec![n; d])
}

/// `(n, d1, d2)` with at most `cap` entries in a `(d1 + d2)`-dimensional cube.
fn two_dims(lo: usize, cap: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=3, lo..=4usize, lo..=4usize)
        .prop_filter("size cap", move |&(n, d1, d2)| n.pow((d1 + d2) as u32) <= cap)
}

fn naive_contract(a: &Tensor, s: &[usize]) -> Tensor {
    let n = a.extents()[s[0]];
    let keep: Vec<usize> = (0..a.dim()).filter(|k| !s.contains(k)).collect();
    let shape = Shape::new(keep.iter().map(|&k| a.extents()[k]).collect()).unwrap();
    Tensor::from_fn(shape, |out| {
        let mut idx = vec![0; a.dim()];
        for (pos, &k) in keep.iter().enumerate() {
            idx[k] = out[pos];
        }
        (0..n).fold(int(0), |acc, t| {
            for &k in s {
                idx[k] = t;
            }
            acc + a.get(&idx)
        })
    })
}

fn naive_project(a: &Tensor, s: &[usize]) -> Tensor {
    let keep: Vec<usize> = (0..a.dim()).filter(|k| !s.contains(k)).collect();
    let shape = Shape::new(keep.iter().map(|&k| a.extents()[k]).collect()).unwrap();
    let mut entries = vec![int(0); shape.len()];
    a.shape().for_each_index(|idx| {
        let o: Vec<usize> = keep.iter().map(|&k| idx[k]).collect();
        entries[shape.offset(&o)] += a.get(idx);
    });
    Tensor::new(shape, entries).unwrap()
}

fn naive_dot(a: &Tensor, b: &Tensor) -> Tensor {
    let n = a.extents()[a.dim() - 1];
    let mut ext = a.extents()[..a.dim() - 1].to_vec();
    ext.extend_from_slice(&b.extents()[1..]);
    let split = a.dim() - 1;
    Tensor::from_fn(Shape::new(ext).unwrap(), |idx| {
        (0..n).fold(int(0), |acc, g| {
            let mut ia = idx[..split].to_vec();
            ia.push(g);
            let mut ib = vec![g];
            ib.extend_from_slice(&idx[split..]);
            acc + a.get(&ia) * b.get(&ib)
        })
    })
}

/// `c[a1, b^2, .., b^{d1}] = sum over g of a[a1, g2, .., g_{d1}] prod_i b[g_i, b^i]`.
fn naive_circle(a: &Tensor, b: &Tensor) -> Tensor {
    let (d1, d2) = (a.dim(), b.dim());
    let n = b.extents()[0];
    let m = d2 - 1;
    let mut ext = vec![a.extents()[0]];
    for _ in 1..d1 {
        ext.extend_from_slice(&b.extents()[1..]);
    }
    let inner = if d1 == 1 { Shape::scalar() } else { Shape::cube(d1 - 1, n).unwrap() };
    Tensor::from_fn(Shape::new(ext).unwrap(), |idx| {
        let mut acc = int(0);
        inner.for_each_index(|g| {
            let mut ia = vec![idx[0]];
            ia.extend_from_slice(g);
            let mut term = a.get(&ia).clone();
            for (i, &gi) in g.iter().enumerate() {
                let mut ib = vec![gi];
                ib.extend_from_slice(&idx[1 + i * m..1 + (i + 1) * m]);
                term *= b.get(&ib);
            }
            acc += term;
        });
        acc
    })
}

fn naive_kron(a: &Tensor, b: &Tensor) -> Tensor {
    let (n1, n2) = (a.extents()[0], b.extents()[0]);
    Tensor::from_fn(Shape::cube(a.dim(), n1 * n2).unwrap(), |g| {
        let ia: Vec<usize> = g.iter().map(|&x| x / n2).collect();
        let ib: Vec<usize> = g.iter().map(|&x| x % n2).collect();
        a.get(&ia) * b.get(&ib)
    })
}

fn with_subset(d_lo: usize) -> impl Strategy<Value = (Tensor, Vec<usize>)> {
    (1usize..=3, d_lo..=4usize)
        .prop_flat_map(|(n, d)| (cube(d, n), subsequence((0..d).collect::<Vec<_>>(), 1..=d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contract_matches_definition((a, s) in with_subset(1)) {
        let got = contract(&a, &[AxisSet::new(s.clone()).unwrap()]).unwrap();
        prop_assert_eq!(got, naive_contract(&a, &s));
    }

    #[test]
    fn project_matches_definition((a, s) in with_subset(1)) {
        let got = project(&a, &[AxisSet::new(s.clone()).unwrap()]).unwrap();
        prop_assert_eq!(got, naive_project(&a, &s));
    }

    #[test]
    fn dot_matches_definition((a, b) in two_dims(1, 729).prop_flat_map(|(n, d1, d2)| (cube(d1, n), cube(d2, n)))) {
        prop_assert_eq!(dot(&a, &b).unwrap(), naive_dot(&a, &b));
    }

    #[test]
    fn dot_ij_is_a_transposed_dot(
        (a, b, i, j) in two_dims(1, 729)
            .prop_flat_map(|(n, d1, d2)| (cube(d1, n), cube(d2, n), 0..d1, 0..d2))
    ) {
        let (d1, d2) = (a.dim(), b.dim());
        let mut pa: Vec<usize> = (0..d1).filter(|&k| k != i).collect();
        pa.push(i);
        let mut pb = vec![j];
        pb.extend((0..d2).filter(|&k| k != j));
        let expected = dot(&a.transpose(&pa).unwrap(), &b.transpose(&pb).unwrap()).unwrap();
        prop_assert_eq!(dot_ij(&a, i, &b, j).unwrap(), expected);
    }

    #[test]
    fn circle_matches_formula(
        (a, b) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(n, d1, d2)| (cube(d1, n), cube(d2, n)))
    ) {
        prop_assert_eq!(circle(&a, &b).unwrap(), naive_circle(&a, &b));
    }

    #[test]
    fn circle_accepts_rectangular_right_factor(
        (a, b) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(n, d1, m)| (cube(d1, n), tensor(vec![n, m])))
    ) {
        prop_assert_eq!(circle(&a, &b).unwrap(), naive_circle(&a, &b));
    }

    #[test]
    fn kronecker_matches_index_map(
        (a, b) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_filter("size", |&(n1, n2, d)| (n1 * n2).pow(d as u32) <= 729)
            .prop_flat_map(|(n1, n2, d)| (cube(d, n1), cube(d, n2)))
    ) {
        prop_assert_eq!(kronecker(&a, &b).unwrap(), naive_kron(&a, &b));
    }

    #[test]
    fn outer_entries_are_products((a, b) in two_dims(1, 729).prop_flat_map(|(n, d1, d2)| (cube(d1, n), cube(d2, n)))) {
        let c = outer(&a, &b).unwrap();
        let d1 = a.dim();
        let mut ok = true;
        c.shape().for_each_index(|idx| ok &= c.get(idx) == &(a.get(&idx[..d1]) * b.get(&idx[d1..])));
        prop_assert!(ok);
    }

    #[test]
    fn sdot_of_three_factors_is_one_synchronized_sum(
        (a, b, c) in (1usize..=2, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(n, d1, d2, d3)| (cube(d1, n), cube(d2, n), cube(d3, n)))
    ) {
        let (d1, d2) = (a.dim(), b.dim());
        let abc = outer(&outer(&a, &b).unwrap(), &c).unwrap();
        let s = AxisSet::new(vec![d1 - 1, d1, d1 + d2]).unwrap();
        let expected = contract(&abc, &[s]).unwrap();
        prop_assert_eq!(s_dot(&[(&a, d1 - 1), (&b, 0), (&c, 0)]).unwrap(), expected);
    }

    #[test]
    fn transpose_round_trips(
        (a, perm) in (1usize..=3, 1usize..=4)
            .prop_flat_map(|(n, d)| (cube(d, n), Just((0..d).collect::<Vec<_>>()).prop_shuffle()))
    ) {
        let back = a.transpose(&perm).unwrap().transpose(&invert_permutation(&perm)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn equivalence_preserves_permanent_and_stochasticity(
        (a, perm, axis, hp) in (1usize..=3, 1usize..=4)
            .prop_flat_map(|(n, d)| (
                cube(d, n),
                Just((0..d).collect::<Vec<_>>()).prop_shuffle(),
                0..d,
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            ))
    ) {
        let b = a.transpose(&perm).unwrap().permute_hyperplanes(axis, &hp).unwrap();
        prop_assert_eq!(permanent(&b).unwrap(), permanent(&a).unwrap());
        let (ra, rb) = (stochasticity_report(&a).unwrap(), stochasticity_report(&b).unwrap());
        prop_assert_eq!(ra.degrees, rb.degrees);
    }

    #[test]
    fn parallel_permanent_is_deterministic(a in (1usize..=3, 1usize..=4).prop_flat_map(|(n, d)| cube(d, n)), threads in 1usize..=4) {
        prop_assert_eq!(permanent_parallel(&a, threads).unwrap(), permanent(&a).unwrap());
    }

    #[test]
    fn pmat_round_trip(a in (1usize..=4).prop_flat_map(|d| prop::collection::vec(1usize..=3, d)).prop_flat_map(tensor)) {
        let text = write_pmat(&a);
        let back = parse_pmat(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(write_pmat(&back), text);
    }
}
