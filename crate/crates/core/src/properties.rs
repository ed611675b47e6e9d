//! Registry of checkable claims. Every entry has a stable name, takes a fixed
//! list of inputs and answers exactly: `Ok(true)` when the claim holds,
//! `Ok(false)` when it is violated, and an error when the inputs do not meet
//! its hypotheses.

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{
    is_permutation_tensor, latin_to_tensor, oa_to_tensor, qg_compose, qg_direct_product,
    tensor_to_latin, transversal_count, transversals_direct, LatinHypercube, OrthogonalArray,
    Quasigroup,
};
use crate::error::{Error, Result};
use crate::format::Document;
use crate::ops::{
    circle, contract, dot, dot_ij, kronecker, kronecker_swap_permutation, outer, outer_swap_axes,
    project, s_dot, AxisSet,
};
use crate::permanent::{permanent, permanent_oracle, reduced_outer, DEFAULT_ORACLE_BUDGET};
use crate::rational::{int, pow, Rational};
use crate::stochastic::{
    check_covering, covering_constants, is_k_stochastic, predicted_product_stochasticity,
    stochasticity_report, verify_eigenpair, CoveringWitness, Eigenpair, ProductKind,
    ProductParams,
};
use crate::tensor::{identity_diag, uniform_j, PlaneSpec, Shape, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Tensor,
    Latin,
    Oa,
}

/// Optional parameters shared by the claims; each claim reads what it needs.
#[derive(Clone, Debug)]
pub struct CheckArgs {
    /// Axis sets `S`, `T` (0-based).
    pub sets: Vec<AxisSet>,
    pub scalar: Rational,
    /// Axes of `._{i,j}` (0-based); default to the dot product.
    pub i: Option<usize>,
    pub j: Option<usize>,
    /// Dimension of `J_n^t`, the number `l` of leading axes, or `n_2`.
    pub t: usize,
    pub sigma: Option<Vec<usize>>,
    pub plane: Option<PlaneSpec>,
    pub budget: u64,
}

impl Default for CheckArgs {
    fn default() -> Self {
        CheckArgs {
            sets: Vec::new(),
            scalar: int(2),
            i: None,
            j: None,
            t: 2,
            sigma: None,
            plane: None,
            budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

type CheckFn = fn(&Inputs<'_>, &CheckArgs) -> Result<bool>;

pub struct Property {
    pub name: &'static str,
    pub statement: &'static str,
    pub inputs: &'static [InputKind],
    check: CheckFn,
}

impl Property {
    pub fn check(&self, docs: &[Document], args: &CheckArgs) -> Result<bool> {
        if docs.len() != self.inputs.len() {
            return Err(Error::validation(format!(
                "`{}` takes {} inputs, got {}",
                self.name,
                self.inputs.len(),
                docs.len()
            )));
        }
        for (k, (doc, want)) in docs.iter().zip(self.inputs).enumerate() {
            let got = match doc {
                Document::Tensor(_) => InputKind::Tensor,
                Document::Latin(_) => InputKind::Latin,
                Document::Oa(_) => InputKind::Oa,
            };
            if got != *want {
                return Err(Error::validation(format!(
                    "input {} of `{}` must be {want:?}, got {got:?}",
                    k + 1,
                    self.name
                )));
            }
        }
        (self.check)(&Inputs { docs }, args)
    }

    /// Convenience for tensor-only claims.
    pub fn check_tensors(&self, tensors: &[&Tensor], args: &CheckArgs) -> Result<bool> {
        let docs: Vec<Document> = tensors.iter().map(|t| Document::Tensor((*t).clone())).collect();
        self.check(&docs, args)
    }
}

pub struct Inputs<'a> {
    docs: &'a [Document],
}

impl Inputs<'_> {
    fn tensor(&self, k: usize) -> &Tensor {
        match &self.docs[k] {
            Document::Tensor(t) => t,
            _ => unreachable!("input kinds checked"),
        }
    }

    fn latin(&self, k: usize) -> &LatinHypercube {
        match &self.docs[k] {
            Document::Latin(q) => q,
            _ => unreachable!("input kinds checked"),
        }
    }

    fn oa(&self, k: usize) -> &OrthogonalArray {
        match &self.docs[k] {
            Document::Oa(r) => r,
            _ => unreachable!("input kinds checked"),
        }
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::validation(format!("hypothesis not met: {}", msg.into()))
}

fn set(args: &CheckArgs, k: usize) -> Result<&AxisSet> {
    args.sets
        .get(k)
        .ok_or_else(|| hypothesis(format!("axis set number {} is required", k + 1)))
}

fn int_pow(base: &Rational, exp: usize) -> Rational {
    pow(base, exp as i64)
}

fn nonnegative(ts: &[&Tensor]) -> Result<()> {
    for t in ts {
        t.require_nonnegative("input")?;
    }
    Ok(())
}

fn order(t: &Tensor) -> Result<usize> {
    t.require_cubical("input")
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

macro_rules! t {
    ($inputs:ident, $($k:literal),+) => { ($($inputs.tensor($k)),+) };
}

fn outer_assoc(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(outer(&outer(a, b)?, c)? == outer(a, &outer(b, c)?)?)
}

fn outer_swap(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let ba = outer(b, a)?;
    Ok(ba.transpose(&outer_swap_axes(a.dim(), b.dim()))? == outer(a, b)?)
}

fn outer_distrib(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(outer(&a.add(b)?, c)? == outer(a, c)?.add(&outer(b, c)?)?)
}

fn outer_scalar(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let l = &args.scalar;
    let mid = outer(a, b)?.scale(l);
    Ok(outer(&a.scale(l), b)? == mid && mid == outer(a, &b.scale(l))?)
}

fn kron_assoc(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(kronecker(&kronecker(a, b)?, c)? == kronecker(a, &kronecker(b, c)?)?)
}

fn kron_swap(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let perm = kronecker_swap_permutation(order(a)?, order(b)?);
    let mut ba = kronecker(b, a)?;
    for axis in 0..ba.dim() {
        ba = ba.permute_hyperplanes(axis, &perm)?;
    }
    Ok(ba == kronecker(a, b)?)
}

fn kron_distrib(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(kronecker(&a.add(b)?, c)? == kronecker(a, c)?.add(&kronecker(b, c)?)?)
}

fn kron_scalar(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let l = &args.scalar;
    let mid = kronecker(a, b)?.scale(l);
    Ok(kronecker(&a.scale(l), b)? == mid && mid == kronecker(a, &b.scale(l))?)
}

fn contract_commute(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let (s, t) = (set(args, 0)?.clone(), set(args, 1)?.clone());
    Ok(contract(a, &[s.clone(), t.clone()])? == contract(a, &[t, s])?)
}

fn project_commute(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let (s, t) = (set(args, 0)?.clone(), set(args, 1)?.clone());
    Ok(project(a, &[s.clone(), t.clone()])? == project(a, &[t, s])?)
}

fn reduction_linear(
    x: &Inputs<'_>,
    args: &CheckArgs,
    op: fn(&Tensor, &[AxisSet]) -> Result<Tensor>,
) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = std::slice::from_ref(set(args, 0)?);
    let additive = op(&a.add(b)?, s)? == op(a, s)?.add(&op(b, s)?)?;
    let homogeneous = op(&a.scale(&args.scalar), s)? == op(a, s)?.scale(&args.scalar);
    Ok(additive && homogeneous)
}

fn contract_linear(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    reduction_linear(x, args, contract)
}

fn project_linear(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    reduction_linear(x, args, project)
}

fn leading_j(a: &Tensor, l: usize) -> Result<(Tensor, AxisSet)> {
    if l == 0 {
        return Err(hypothesis("the number of leading axes must be positive"));
    }
    let n = order(a)?;
    Ok((outer(&uniform_j(l, n)?, a)?, AxisSet::leading(l)?))
}

fn contract_outer_j(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let (ja, s) = leading_j(a, args.t)?;
    Ok(&contract(&ja, &[s])? == a)
}

fn project_outer_j(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let (ja, s) = leading_j(a, args.t)?;
    let scale = int_pow(&int(order(a)? as i64), args.t - 1);
    Ok(project(&ja, &[s])? == a.scale(&scale))
}

/// The plane as a contraction: `A x e_{v_1} x .. x e_{v_m}`, then every fixed
/// axis contracted against its unit vector.
pub fn plane_by_contraction(a: &Tensor, spec: &PlaneSpec) -> Result<Tensor> {
    spec.validate(a.shape())?;
    let n = order(a)?;
    let d = a.dim();
    if spec.fixed().is_empty() {
        return Ok(a.clone());
    }
    let mut product = a.clone();
    let mut sets = Vec::new();
    for (k, (&axis, &value)) in spec.fixed().iter().enumerate() {
        let unit = Tensor::from_fn(Shape::new(vec![n])?, |i| int((i[0] == value) as i64));
        product = outer(&product, &unit)?;
        sets.push(AxisSet::new(vec![axis, d + k])?);
    }
    contract(&product, &sets)
}

fn plane_extraction(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let spec = args.plane.as_ref().ok_or_else(|| hypothesis("a plane is required"))?;
    Ok(a.extract_plane(spec)? == plane_by_contraction(a, spec)?)
}

fn dot_assoc(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(dot(&dot(a, b)?, c)? == dot(a, &dot(b, c)?)?)
}

fn dot_distrib(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    let left = dot(&a.add(b)?, c)? == dot(a, c)?.add(&dot(b, c)?)?;
    let right = dot(a, &b.add(c)?)? == dot(a, b)?.add(&dot(a, c)?)?;
    Ok(left && right)
}

fn dot_scalar(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let l = &args.scalar;
    let mid = dot(a, b)?.scale(l);
    Ok(dot(&a.scale(l), b)? == mid && mid == dot(a, &b.scale(l))?)
}

fn dot_identity(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let i = identity_diag(2, order(a)?)?;
    Ok(&dot(a, &i)? == a && &dot(&i, a)? == a)
}

fn sdot_two_factor(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    order(a)?;
    Ok(s_dot(&[(a, a.dim() - 1), (b, 0)])? == dot(a, b)?)
}

fn circle_assoc(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(circle(&circle(a, b)?, c)? == circle(a, &circle(b, c)?)?)
}

fn circle_distrib_left(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    Ok(circle(&a.add(b)?, c)? == circle(a, c)?.add(&circle(b, c)?)?)
}

fn circle_distrib_right(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    if a.dim() != 2 {
        return Err(hypothesis("the first factor must be 2-dimensional"));
    }
    Ok(circle(a, &b.add(c)?)? == circle(a, b)?.add(&circle(a, c)?)?)
}

fn circle_scalar(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let l = &args.scalar;
    let ab = circle(a, b)?;
    let first = circle(&a.scale(l), b)? == ab.scale(l);
    let power = int_pow(l, a.dim().saturating_sub(1));
    let second = circle(a, &b.scale(l))? == ab.scale(&power);
    Ok(first && second)
}

/// `(..((A ._{d,1} B) ._{d-1,1} B) ..) ._{2,1} B`, which lists the blocks
/// of `A o B` in reverse order.
pub fn circle_by_iterated_dots(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let mut acc = a.clone();
    for i in (1..a.dim()).rev() {
        acc = dot_ij(&acc, i, b, 0)?;
    }
    Ok(acc)
}

/// Axis permutation turning [`circle_by_iterated_dots`] into [`circle`].
pub fn circle_block_reversal(d1: usize, d2: usize) -> Vec<usize> {
    let m = d2 - 1;
    let mut perm = vec![0];
    for t in 0..d1 - 1 {
        let source = d1 - 2 - t;
        perm.extend((0..m).map(|r| 1 + source * m + r));
    }
    perm
}

fn circle_iterated(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    order(a)?;
    order(b)?;
    let iterated = circle_by_iterated_dots(a, b)?;
    Ok(iterated.transpose(&circle_block_reversal(a.dim(), b.dim()))? == circle(a, b)?)
}

fn rel_outer_kron(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c, d) = t!(x, 0, 1, 2, 3);
    Ok(kronecker(&outer(a, b)?, &outer(c, d)?)? == outer(&kronecker(a, c)?, &kronecker(b, d)?)?)
}

fn rel_contract_outer(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = std::slice::from_ref(set(args, 0)?);
    Ok(outer(&contract(a, s)?, b)? == contract(&outer(a, b)?, s)?)
}

fn rel_project_outer(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = std::slice::from_ref(set(args, 0)?);
    Ok(outer(&project(a, s)?, b)? == project(&outer(a, b)?, s)?)
}

fn rel_dot_outer(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b, c) = t!(x, 0, 1, 2);
    order(a)?;
    let i = args.i.unwrap_or(a.dim() - 1);
    let j = args.j.unwrap_or(0);
    Ok(outer(&dot_ij(a, i, b, j)?, c)? == dot_ij(a, i, &outer(b, c)?, j)?)
}

fn rel_contract_kron(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = set(args, 0)?;
    if s.len() >= a.dim() {
        return Err(hypothesis("S must leave at least one axis"));
    }
    let s = std::slice::from_ref(s);
    Ok(kronecker(&contract(a, s)?, &contract(b, s)?)? == contract(&kronecker(a, b)?, s)?)
}

fn rel_project_kron(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = set(args, 0)?;
    if s.len() >= a.dim() {
        return Err(hypothesis("S must leave at least one axis"));
    }
    let s = std::slice::from_ref(s);
    Ok(project(&kronecker(a, b)?, s)? == kronecker(&project(a, s)?, &project(b, s)?)?)
}

fn rel_kron_dot(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, c, d) = t!(x, 0, 1, 2, 3);
    Ok(dot(&kronecker(a, b)?, &kronecker(c, d)?)? == kronecker(&dot(a, c)?, &dot(b, d)?)?)
}

fn rel_project_contract(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let (s, t) = (set(args, 0)?, set(args, 1)?);
    if s.positions().iter().any(|&p| t.contains(p)) {
        return Err(hypothesis("S and T must be disjoint"));
    }
    let lhs = project(&contract(a, &[s.clone()])?, &[t.renumbered_after(&[s])?])?;
    let rhs = contract(&project(a, &[t.clone()])?, &[s.renumbered_after(&[t])?])?;
    Ok(lhs == rhs)
}

fn last_axis_free(a: &Tensor, s: &AxisSet) -> Result<()> {
    if a.dim() == 0 || s.contains(a.dim() - 1) {
        return Err(hypothesis("S must not contain the last axis of A"));
    }
    Ok(())
}

fn rel_contract_dot(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = set(args, 0)?;
    last_axis_free(a, s)?;
    let s = std::slice::from_ref(s);
    Ok(dot(&contract(a, s)?, b)? == contract(&dot(a, b)?, s)?)
}

fn rel_project_dot(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let s = set(args, 0)?;
    last_axis_free(a, s)?;
    let s = std::slice::from_ref(s);
    Ok(dot(&project(a, s)?, b)? == project(&dot(a, b)?, s)?)
}

fn degrees(a: &Tensor, what: &str) -> Result<Vec<usize>> {
    let report = stochasticity_report(a)?;
    if report.degrees.is_empty() {
        return Err(hypothesis(format!("{what} is not k-stochastic for any k")));
    }
    Ok(report.degrees.into_iter().collect())
}

/// Checks every applicable prediction for all degree combinations of the
/// inputs. Fails if no combination is covered by the theorem.
fn predictions_hold(
    kind: ProductKind,
    a: &Tensor,
    b: Option<&Tensor>,
    ell: usize,
    product: &Tensor,
) -> Result<bool> {
    let ka = degrees(a, "the first input")?;
    let kb = match b {
        Some(b) => degrees(b, "the second input")?,
        None => vec![1],
    };
    let (n1, d1) = (order(a)?, a.dim());
    let (n2, d2) = match b {
        Some(b) => (order(b)?, b.dim()),
        None => (n1, 1),
    };
    let mut applied = false;
    for &k1 in &ka {
        for &k2 in &kb {
            let params = ProductParams { d1, k1, n1, d2, k2, n2, ell };
            let pred = predicted_product_stochasticity(kind, &params);
            if !pred.applicable {
                continue;
            }
            applied = true;
            if !is_k_stochastic(&product.scale(&pred.scale), pred.degree)? {
                return Ok(false);
            }
        }
    }
    if !applied {
        return Err(hypothesis(format!("no {kind} prediction applies to these degrees")));
    }
    Ok(true)
}

fn thm_outer_stoch(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    predictions_hold(ProductKind::Outer, a, Some(b), 0, &outer(a, b)?)
}

fn thm_kron_stoch(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    predictions_hold(ProductKind::Kronecker, a, Some(b), 0, &kronecker(a, b)?)
}

fn thm_contract_stoch(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let s = set(args, 0)?;
    let c = contract(a, std::slice::from_ref(s))?;
    predictions_hold(ProductKind::Contraction, a, None, s.len(), &c)
}

fn thm_project_stoch(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let s = set(args, 0)?;
    let p = project(a, std::slice::from_ref(s))?;
    let n = order(a)?;
    let ell = s.len();
    for k in degrees(a, "the input")? {
        if k <= ell && ell < a.dim() {
            let expected = uniform_j(a.dim() - ell, n)?.scale(&pow(&int(n as i64), ell as i64 - k as i64 + 1));
            if p != expected {
                return Ok(false);
            }
        }
    }
    predictions_hold(ProductKind::Projection, a, None, ell, &p)
}

fn thm_dot_stoch(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    predictions_hold(ProductKind::Dot, a, Some(b), 0, &dot(a, b)?)
}

fn polystochastic(a: &Tensor, what: &str) -> Result<()> {
    if !is_k_stochastic(a, 1)? {
        return Err(hypothesis(format!("{what} is not polystochastic")));
    }
    Ok(())
}

fn thm_circle_stoch(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    polystochastic(a, "the first input")?;
    polystochastic(b, "the second input")?;
    is_k_stochastic(&circle(a, b)?, 1)
}

fn dot_uniform(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    polystochastic(a, "the input")?;
    if args.t == 0 || a.dim() + args.t < 3 {
        return Err(hypothesis("J_n^t needs t >= 1 and d + t >= 3"));
    }
    let n = order(a)?;
    let j = uniform_j(args.t, n)?;
    let expected = uniform_j(a.dim() + args.t - 2, n)?;
    Ok(dot(a, &j)? == expected && dot(&j, a)? == expected)
}

fn circle_uniform(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    polystochastic(a, "the input")?;
    if args.t == 0 {
        return Err(hypothesis("J_n^t needs t >= 1"));
    }
    let n = order(a)?;
    let j = uniform_j(args.t, n)?;
    let left = circle(a, &j)? == uniform_j((a.dim() - 1) * (args.t - 1) + 1, n)?;
    let right = circle(&j, a)? == uniform_j((args.t - 1) * (a.dim() - 1) + 1, n)?;
    Ok(left && right)
}

fn stoch_scaling(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let n = order(a)?;
    let mut any = false;
    for k in degrees(a, "the input")? {
        if k < a.dim() {
            any = true;
            if !is_k_stochastic(&a.scale(&Rational::new(1.into(), n.into())), k + 1)? {
                return Ok(false);
            }
        }
    }
    if !any {
        return Err(hypothesis("the input is only d-stochastic"));
    }
    Ok(true)
}

fn eigen_stoch(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let n = order(a)?;
    if a.dim() < 2 || !is_k_stochastic(a, a.dim() - 1)? {
        return Err(hypothesis("the input is not (d-1)-stochastic"));
    }
    let e = Tensor::from_fn(Shape::new(vec![n])?, |_| Rational::one());
    verify_eigenpair(a, &Eigenpair { lambda: Rational::one(), v: e })
}

fn eigenpair(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, v) = t!(x, 0, 1);
    verify_eigenpair(a, &Eigenpair { lambda: args.scalar.clone(), v: v.clone() })
}

fn covering(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b, p) = t!(x, 0, 1, 2);
    check_covering(a, b, &CoveringWitness::new(p.clone())?)
}

/// The derived constants `n2^{2-d}` for `A (x) J` and `1` for `A (x) I`.
pub fn derived_covering_constants(d: usize, n2: usize) -> (Rational, Rational) {
    (pow(&int(n2 as i64), 2 - d as i64), Rational::one())
}

/// The constants as printed: `n2^{1-d}` and `1/n2`.
pub fn stated_covering_constants(d: usize, n2: usize) -> (Rational, Rational) {
    (pow(&int(n2 as i64), 1 - d as i64), pow(&int(n2 as i64), -1))
}

fn covering_standard(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    if args.t == 0 {
        return Err(hypothesis("n2 must be positive"));
    }
    if a.is_zero() {
        return Err(hypothesis("the zero matrix is covered with any constant"));
    }
    let found = covering_constants(a, args.t)?;
    let (c, c_id) = derived_covering_constants(a.dim(), args.t);
    Ok(found.uniform == Some(c) && found.identity == Some(c_id))
}

fn per_outer(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let n = order(a)?;
    Ok(permanent(&outer(a, b)?)? == factorial(n) * permanent(a)? * permanent(b)?)
}

fn per_reduced_outer(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    let n = order(a)?;
    let sigma = args.sigma.clone().unwrap_or_else(|| (0..n).collect());
    Ok(permanent(&reduced_outer(a, b, &sigma)?)? == permanent(a)? * permanent(b)?)
}

fn dot_perm_lower_bound(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    nonnegative(&[a, b])?;
    Ok(permanent(&dot(a, b)?)? >= permanent(a)? * permanent(b)?)
}

fn circle_perm_lower_bound(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    nonnegative(&[a, b])?;
    order(a)?;
    let bound = permanent(a)? * pow(&permanent(b)?, a.dim() as i64 - 1);
    Ok(permanent(&circle(a, b)?)? >= bound)
}

/// `per A (per B)^{n1} + (per A)^{n2} per B - per A per B`.
pub fn kron_lower_bound_value(a: &Tensor, b: &Tensor) -> Result<Rational> {
    let (n1, n2) = (order(a)?, order(b)?);
    let (pa, pb) = (permanent(a)?, permanent(b)?);
    Ok(&pa * pow(&pb, n1 as i64) + pow(&pa, n2 as i64) * &pb - &pa * &pb)
}

fn kron_lower_bound(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (a, b) = t!(x, 0, 1);
    nonnegative(&[a, b])?;
    Ok(permanent(&kronecker(a, b)?)? >= kron_lower_bound_value(a, b)?)
}

fn project_lower_bound(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    nonnegative(&[a])?;
    let s = set(args, 0)?;
    if s.len() >= a.dim() {
        return Err(hypothesis("S must leave at least one axis"));
    }
    Ok(permanent(&project(a, std::slice::from_ref(s))?)? >= permanent(a)?)
}

fn per_equivalence(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    let n = order(a)?;
    let d = a.dim();
    let p = permanent(a)?;
    let rotate: Vec<usize> = (1..d).chain([0]).collect();
    let reverse: Vec<usize> = (0..d).rev().collect();
    let flip: Vec<usize> = (0..n).rev().collect();
    let mut ok = permanent(&a.transpose(&rotate)?)? == p && permanent(&a.transpose(&reverse)?)? == p;
    for axis in 0..d {
        ok &= permanent(&a.permute_hyperplanes(axis, &flip)?)? == p;
    }
    Ok(ok)
}

fn per_oracle(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let a = x.tensor(0);
    Ok(permanent(a)? == permanent_oracle(a, args.budget)?)
}

fn latin_permutation(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let q = x.latin(0);
    let m = latin_to_tensor(q);
    Ok(is_permutation_tensor(&m)? && &tensor_to_latin(&m)? == q)
}

fn transversal_count_matches(x: &Inputs<'_>, args: &CheckArgs) -> Result<bool> {
    let q = x.latin(0);
    Ok(transversal_count(q) == transversals_direct(q, args.budget)?)
}

fn graph(q: &LatinHypercube) -> Tensor {
    Quasigroup::new(q.clone()).permutation_tensor()
}

fn qg_compose_prop(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (f, g) = (Quasigroup::new(x.latin(0).clone()), Quasigroup::new(x.latin(1).clone()));
    let fg = qg_compose(&f, &g)?;
    Ok(fg.permutation_tensor() == dot(&f.permutation_tensor(), &g.permutation_tensor())?)
}

fn qg_compose_transversals(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (f, g) = (Quasigroup::new(x.latin(0).clone()), Quasigroup::new(x.latin(1).clone()));
    let fg = qg_compose(&f, &g)?;
    Ok(fg.transversals() >= f.transversals() * g.transversals())
}

fn qg_direct_product_prop(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let (f, g) = (Quasigroup::new(x.latin(0).clone()), Quasigroup::new(x.latin(1).clone()));
    let fg = qg_direct_product(&f, &g)?;
    Ok(fg.permutation_tensor() == kronecker(&graph(x.latin(0)), &graph(x.latin(1)))?)
}

fn oa_stochastic(x: &Inputs<'_>, _: &CheckArgs) -> Result<bool> {
    let r = x.oa(0);
    Ok(r.is_orthogonal() == oa_to_tensor(r).is_ok())
}

use InputKind::{Latin as L, Oa as O, Tensor as T};

macro_rules! property {
    ($name:literal, $statement:literal, [$($kind:ident),*], $check:expr) => {
        Property { name: $name, statement: $statement, inputs: &[$($kind),*], check: $check }
    };
}

static REGISTRY: &[Property] = &[
    property!("outer-assoc", "(A x B) x C = A x (B x C)", [T, T, T], outer_assoc),
    property!("outer-swap", "A x B is a block-rotation transpose of B x A", [T, T], outer_swap),
    property!("outer-distrib", "(A + B) x C = A x C + B x C", [T, T, T], outer_distrib),
    property!("outer-scalar", "(cA) x B = c(A x B) = A x (cB)", [T, T], outer_scalar),
    property!("kron-assoc", "(A (x) B) (x) C = A (x) (B (x) C)", [T, T, T], kron_assoc),
    property!("kron-swap", "A (x) B is B (x) A with hyperplanes permuted in every direction", [T, T], kron_swap),
    property!("kron-distrib", "(A + B) (x) C = A (x) C + B (x) C", [T, T, T], kron_distrib),
    property!("kron-scalar", "(cA) (x) B = c(A (x) B) = A (x) (cB)", [T, T], kron_scalar),
    property!("contract-commute", "A_{S;T} = A_{T;S} for disjoint S, T", [T], contract_commute),
    property!("contract-linear", "(A + B)_S = A_S + B_S and (cA)_S = c A_S", [T, T], contract_linear),
    property!("project-commute", "P_{S;T}(A) = P_{T;S}(A) for disjoint S, T", [T], project_commute),
    property!("project-linear", "P_S(A + B) = P_S(A) + P_S(B) and P_S(cA) = c P_S(A)", [T, T], project_linear),
    property!("contract-outer-j", "(J^l x A)_S = A for S the first l axes", [T], contract_outer_j),
    property!("project-outer-j", "P_S(J^l x A) = n^{l-1} A for S the first l axes", [T], project_outer_j),
    property!("plane-extraction", "a plane equals the contraction of A x (unit vectors)", [T], plane_extraction),
    property!("dot-assoc", "(AB)C = A(BC)", [T, T, T], dot_assoc),
    property!("dot-distrib", "(A + B)C = AC + BC and A(B + C) = AB + AC", [T, T, T], dot_distrib),
    property!("dot-scalar", "(cA)B = c(AB) = A(cB)", [T, T], dot_scalar),
    property!("dot-identity", "AI = IA = A for the 2-dimensional identity I", [T], dot_identity),
    property!("sdot-dot", "[A_d, B_1] = AB", [T, T], sdot_two_factor),
    property!("circle-assoc", "(A o B) o C = A o (B o C)", [T, T, T], circle_assoc),
    property!("circle-distrib-left", "(A + B) o C = A o C + B o C", [T, T, T], circle_distrib_left),
    property!("circle-distrib-right", "A o (B + C) = A o B + A o C for 2-dimensional A", [T, T, T], circle_distrib_right),
    property!("circle-scalar", "(cA) o B = c(A o B) and A o (cB) = c^{d-1}(A o B)", [T, T], circle_scalar),
    property!("circle-iterated-dot", "A o B is the iterated dot product with its blocks reversed", [T, T], circle_iterated),
    property!("rel-outer-kron", "(A x B) (x) (C x D) = (A (x) C) x (B (x) D)", [T, T, T, T], rel_outer_kron),
    property!("rel-contract-outer", "A_S x B = (A x B)_S", [T, T], rel_contract_outer),
    property!("rel-project-outer", "P_S(A) x B = P_S(A x B)", [T, T], rel_project_outer),
    property!("rel-dot-outer", "(A ._{i,j} B) x C = A ._{i,j} (B x C)", [T, T, T], rel_dot_outer),
    property!("rel-contract-kron", "A_S (x) B_S = (A (x) B)_S", [T, T], rel_contract_kron),
    property!("rel-project-kron", "P_S(A (x) B) = P_S(A) (x) P_S(B)", [T, T], rel_project_kron),
    property!("rel-kron-dot", "(A (x) B)(C (x) D) = (AC) (x) (BD)", [T, T, T, T], rel_kron_dot),
    property!("rel-project-contract", "P_T(A_S) = (P_T(A))_S for disjoint S, T", [T], rel_project_contract),
    property!("rel-contract-dot", "A_S B = (AB)_S when the last axis is not in S", [T, T], rel_contract_dot),
    property!("rel-project-dot", "P_S(A) B = P_S(AB) when the last axis is not in S", [T, T], rel_project_dot),
    property!("thm-outer-stoch", "n^{k1+k2-r}(A x B) is r-stochastic, r = max(d1+k2, d2+k1)", [T, T], thm_outer_stoch),
    property!("thm-kron-stoch", "n1^{k1-r} n2^{k2-r}(A (x) B) is r-stochastic, r = max(k1, k2)", [T, T], thm_kron_stoch),
    property!("thm-contract-stoch", "(1/n) A_S is k-stochastic when k + |S| <= d", [T], thm_contract_stoch),
    property!("thm-project-stoch", "P_S(A) is (k-l)-stochastic, or n^{l-k+1} J when k <= l", [T], thm_project_stoch),
    property!("thm-dot-stoch", "n^{k1+k2-r-1}(AB) is r-stochastic; AB of polystochastic is polystochastic", [T, T], thm_dot_stoch),
    property!("thm-circle-stoch", "A o B of polystochastic matrices is polystochastic", [T, T], thm_circle_stoch),
    property!("dot-uniform", "A J^t = J^t A = J^{d+t-2} for polystochastic A", [T], dot_uniform),
    property!("circle-uniform", "A o J^t = J^t o A = J^{(d-1)(t-1)+1} for polystochastic A", [T], circle_uniform),
    property!("stoch-scaling", "(1/n) A is (k+1)-stochastic for k-stochastic A", [T], stoch_scaling),
    property!("eigen-stoch", "a (d-1)-stochastic matrix has eigenpair (1, e)", [T], eigen_stoch),
    property!("eigenpair", "A o v = c (I o v)", [T, T], eigenpair),
    property!("covering", "A o P = P o B", [T, T, T], covering),
    property!("covering-standard", "n2^{2-d}(A (x) J) and A (x) I cover A through the standard P", [T], covering_standard),
    property!("per-outer", "per(A x B) = n! per A per B", [T, T], per_outer),
    property!("per-reduced-outer", "per C = per A per B for c_{i a b} = a_{i a} b_{s(i) b}", [T, T], per_reduced_outer),
    property!("dot-perm-lower-bound", "per(AB) >= per A per B for nonnegative A, B", [T, T], dot_perm_lower_bound),
    property!("circle-perm-lower-bound", "per(A o B) >= per A (per B)^{d1-1} for nonnegative A, B", [T, T], circle_perm_lower_bound),
    property!("kron-lower-bound", "per(A (x) B) >= per A (per B)^{n1} + (per A)^{n2} per B - per A per B", [T, T], kron_lower_bound),
    property!("project-lower-bound", "per P_S(A) >= per A for nonnegative A", [T], project_lower_bound),
    property!("per-equivalence", "per A is invariant under transposes and hyperplane permutations", [T], per_equivalence),
    property!("per-oracle", "backtracking permanent equals literal enumeration", [T], per_oracle),
    property!("latin-permutation", "M(Q) is a multidimensional permutation that determines Q", [L], latin_permutation),
    property!("transversal-count", "the transversals of Q number per M(Q)", [L], transversal_count_matches),
    property!("qg-compose", "M^{f.g} = M^f M^g", [L, L], qg_compose_prop),
    property!("qg-compose-transversals", "T(f.g) >= T(f) T(g)", [L, L], qg_compose_transversals),
    property!("qg-direct-product", "M^{f x g} = M^f (x) M^g", [L, L], qg_direct_product_prop),
    property!("oa-stochastic", "R is an orthogonal array iff (1/lambda) M is (k-t)-stochastic", [O], oa_stochastic),
];

pub fn registry() -> &'static [Property] {
    REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static Property> {
    REGISTRY.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{remark1_a, remark2_a, remark2_b};

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), registry().len());
    }

    #[test]
    fn fixed_instances() {
        let args = CheckArgs::default();
        let kron = lookup("kron-lower-bound").unwrap();
        assert!(kron.check_tensors(&[&remark2_a(), &remark2_b()], &args).unwrap());
        assert!(kron.check_tensors(&[&remark1_a(), &remark1_a()], &args).unwrap());
        let half = identity_diag(2, 2).unwrap().scale(&Rational::new(1.into(), 2.into()));
        let double = identity_diag(2, 2).unwrap().scale(&int(2));
        assert!(!kron.check_tensors(&[&half, &double], &args).unwrap());
        let wrong_arity = kron.check_tensors(&[&remark1_a()], &args).unwrap_err();
        assert_eq!(wrong_arity.exit_code(), 1);
        let j = uniform_j(3, 2).unwrap();
        assert!(lookup("eigen-stoch").unwrap().check_tensors(&[&j.scale(&Rational::new(1.into(), 2.into()))], &args).unwrap());
        assert!(lookup("eigen-stoch").unwrap().check_tensors(&[&j], &args).is_err());
    }

    #[test]
    fn block_reversal_shape() {
        assert_eq!(circle_block_reversal(3, 3), vec![0, 3, 4, 1, 2]);
        assert_eq!(circle_block_reversal(2, 4), vec![0, 1, 2, 3]);
    }
}
