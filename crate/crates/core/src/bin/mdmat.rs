//! Command-line front-end for exact multidimensional matrices.
//!
//! Axes, index components, permutations and symbols on the command line are
//! 1-based. Exit codes: 0 success, 1 validation, 2 parse, 3 property
//! violated, 4 oracle budget refused.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mdmat::combinatorics::{
    iterated_group_hypercube, latin_to_tensor, oa_to_tensor, qg_compose, qg_direct_product,
    tensor_to_latin, tensor_to_oa, transversal_count_parallel, transversals_direct, Quasigroup,
};
use mdmat::fixtures;
use mdmat::format::{parse_document, Document, Format};
use mdmat::ops::{self, AxisSet};
use mdmat::permanent::{
    diagonal_count, has_positive_diagonal, nonzero_diagonals, permanent, permanent_oracle,
    permanent_parallel, reduced_outer, DEFAULT_ORACLE_BUDGET,
};
use mdmat::properties::{self, CheckArgs};
use mdmat::rational::{format_literal, parse_literal};
use mdmat::stochastic::{
    check_covering, covering_constants, is_k_stochastic, predicted_product_stochasticity,
    standard_covering_p, stochasticity_report, verify_eigenpair, CoveringWitness, Eigenpair,
    ProductKind, ProductParams,
};
use mdmat::tensor::{identity_diag, linear_combine, uniform_j, PlaneSpec};
use mdmat::{Error, Rational, Result, Tensor};

#[derive(Parser)]
#[command(name = "mdmat", version, about = "Exact multidimensional matrices: products, permanents, stochasticity")]
struct Cli {
    /// Worker threads for permanent evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Diagonal budget for the enumeration oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u64,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Pmat,
    Latin,
    Oa,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Pmat => Format::Pmat,
            FormatArg::Latin => Format::Latin,
            FormatArg::Oa => Format::Oa,
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Generate a named or random matrix, latin hypercube or covering matrix.
    Gen(GenArgs),
    /// Describe a file.
    Info { file: PathBuf },
    /// Apply an operation and print the result.
    Op(OpArgs),
    /// Permanent of a matrix.
    Per {
        file: PathBuf,
        /// Use literal enumeration of all diagonals (bounded by --budget).
        #[arg(long)]
        oracle: bool,
    },
    /// Diagonals of a matrix.
    Diag {
        file: PathBuf,
        /// Only report whether a positive diagonal exists.
        #[arg(long)]
        positive: bool,
        /// Only print the number of diagonals.
        #[arg(long)]
        count: bool,
        /// Maximum number of diagonals listed.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Stochasticity: reports, predictions, eigenpairs, coverings.
    #[command(subcommand)]
    Stoch(StochVerb),
    /// Evaluate a named property; exit 3 when it is violated.
    Check(CheckCmd),
    /// Convert between formats (latin <-> pmat, oa <-> pmat, or canonicalize).
    Convert {
        file: PathBuf,
        /// Strength for pmat -> oa.
        #[arg(long)]
        t: Option<usize>,
        /// Index for pmat -> oa; the input is the row-count matrix M.
        #[arg(long)]
        lambda: Option<usize>,
    },
    /// Number of transversals of a latin hypercube.
    Transversals {
        file: PathBuf,
        /// Count by checking every diagonal (bounded by --budget).
        #[arg(long)]
        direct: bool,
    },
    /// Permanents of small polystochastic matrices.
    #[command(subcommand)]
    Scan(ScanVerb),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    J,
    Identity,
    IteratedGroup,
    CoveringP,
    Remark1,
    Remark2A,
    Remark2B,
    Remark2KronDisplay,
    FirstColumn,
    FirstRow,
    Hyperplane,
    ShiftedDiagonal,
    AnnihilatingA,
    AnnihilatingB,
    Random,
    RandomNonnegative,
    RandomLatin,
    RandomPolystochastic,
    RandomStochastic,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Second order, for covering-p.
    #[arg(long, default_value_t = 2)]
    n2: usize,
    /// Degree for random-stochastic.
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    Outer,
    Kron,
    Contract,
    Project,
    Dot,
    DotIj,
    SDot,
    Circle,
    Transpose,
    PermuteHyperplanes,
    ExtractPlane,
    Combine,
    ReducedOuter,
    /// Composition of quasigroups given as latin hypercubes.
    Compose,
    /// Direct product of quasigroups given as latin hypercubes.
    DirectProduct,
}

#[derive(Args)]
struct OpArgs {
    #[arg(value_enum)]
    name: OpName,
    files: Vec<PathBuf>,
    /// Axis set, e.g. `1,3`; repeat for consecutive reductions.
    #[arg(long = "set", value_parser = parse_axes)]
    sets: Vec<Axes>,
    /// Axes of `._{i,j}`.
    #[arg(long, value_parser = parse_one_based)]
    i: Option<usize>,
    #[arg(long, value_parser = parse_one_based)]
    j: Option<usize>,
    /// Synchronized axis of every factor of an S-dot product, e.g. `2,1,1`.
    #[arg(long, value_parser = parse_axes)]
    at: Option<Axes>,
    /// Permutation for transpose, permute-hyperplanes and reduced-outer.
    #[arg(long, value_parser = parse_axes)]
    perm: Option<Axes>,
    #[arg(long, value_parser = parse_one_based)]
    axis: Option<usize>,
    /// Fixed components of a plane, e.g. `1=2,3=1`.
    #[arg(long, value_parser = parse_plane)]
    plane: Option<PlaneSpec>,
    /// Coefficients of combine.
    #[arg(long = "coef", value_parser = parse_rational, num_args = 2, allow_negative_numbers = true)]
    coef: Vec<Rational>,
}

#[derive(Subcommand)]
enum StochVerb {
    /// Degrees k for which the matrix is k-stochastic.
    Report { file: PathBuf },
    /// Whether the matrix is k-stochastic.
    K {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Predicted degree and normalization of a product of stochastic matrices.
    Predict {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        n1: usize,
        #[arg(long, default_value_t = 1)]
        d2: usize,
        #[arg(long, default_value_t = 1)]
        k2: usize,
        #[arg(long, default_value_t = 1)]
        n2: usize,
        /// Number of removed axes, for contraction and projection.
        #[arg(long, default_value_t = 0)]
        ell: usize,
    },
    /// Whether `A o v = lambda (I o v)`.
    Eigen {
        file: PathBuf,
        vector: PathBuf,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: Rational,
    },
    /// Whether `A o P = P o B`.
    Covering { a: PathBuf, b: PathBuf, p: PathBuf },
    /// Constants making `c (A (x) J)` and `c' (A (x) I)` coverings of A.
    CoveringConstants {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        n2: usize,
    },
}

#[derive(Args)]
struct CheckCmd {
    /// Property name; see --list.
    property: Option<String>,
    files: Vec<PathBuf>,
    /// List the registry.
    #[arg(long)]
    list: bool,
    #[arg(long = "set", value_parser = parse_axes)]
    sets: Vec<Axes>,
    /// Scalar for the homogeneity claims and eigenvalues.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, value_parser = parse_one_based)]
    i: Option<usize>,
    #[arg(long, value_parser = parse_one_based)]
    j: Option<usize>,
    /// Dimension of J^t, number of leading axes, or the second order.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_parser = parse_axes)]
    sigma: Option<Axes>,
    #[arg(long, value_parser = parse_plane)]
    plane: Option<PlaneSpec>,
}

#[derive(Subcommand)]
enum ScanVerb {
    /// Iterated cyclic groups over ranges of orders and dimensions.
    IteratedGroup {
        /// Order or inclusive range `a..b`.
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        /// Dimension of the latin hypercube, or a range.
        #[arg(long, value_parser = parse_range)]
        d: (usize, usize),
    },
    /// Latin hypercubes or polystochastic matrices from files.
    Files { files: Vec<PathBuf> },
}

fn parse_one_based(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("`{s}` is not a positive integer")),
        Ok(v) => Ok(v - 1),
    }
}

/// Comma-separated 1-based axes or permutation entries, stored 0-based.
#[derive(Clone)]
struct Axes(Vec<usize>);

fn parse_axes(s: &str) -> std::result::Result<Axes, String> {
    s.split(',').map(|p| parse_one_based(p.trim())).collect::<std::result::Result<_, _>>().map(Axes)
}

fn parse_plane(s: &str) -> std::result::Result<PlaneSpec, String> {
    let mut fixed = Vec::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (axis, value) = part.split_once('=').ok_or_else(|| format!("`{part}` is not axis=value"))?;
        fixed.push((parse_one_based(axis.trim())?, parse_one_based(value.trim())?));
    }
    PlaneSpec::new(fixed).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    parse_literal(s)
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let bad = || format!("`{s}` is not a number or range a..b");
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => s.parse().map(|v| (v, v)).map_err(|_| bad()),
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    Ok(fs::read_to_string(path)?)
}

fn read_document(path: &Path) -> Result<Document> {
    parse_document(&read_text(path)?)
}

fn read_tensor(path: &Path) -> Result<Tensor> {
    match read_document(path)? {
        Document::Tensor(t) => Ok(t),
        Document::Latin(q) => Ok(latin_to_tensor(&q)),
        Document::Oa(_) => Err(Error::Validation(format!(
            "{} holds an orthogonal array; convert it to pmat first",
            path.display()
        ))),
    }
}

fn read_tensors(paths: &[PathBuf], count: usize) -> Result<Vec<Tensor>> {
    if paths.len() != count {
        return Err(Error::Validation(format!("expected {count} input files, got {}", paths.len())));
    }
    paths.iter().map(|p| read_tensor(p)).collect()
}

struct Output {
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn line(&self, text: impl std::fmt::Display) -> Result<()> {
        self.emit(&format!("{text}\n"))
    }

    fn document(&self, doc: Document) -> Result<()> {
        self.emit(&doc.serialize())
    }

    fn tensor(&self, t: Tensor) -> Result<()> {
        self.document(Document::Tensor(t))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn axis_sets(sets: &[Axes]) -> Result<Vec<AxisSet>> {
    sets.iter().map(|s| AxisSet::new(s.0.clone())).collect()
}

fn gen(args: &GenArgs, format: Option<Format>, out: &Output) -> Result<()> {
    let (d, n) = (args.d, args.n);
    need(d >= 1 && n >= 1 && args.n2 >= 1, "dimension and orders must be positive")?;
    let mut rng = fixtures::rng(args.seed);
    let doc = match args.kind {
        GenKind::J => Document::Tensor(uniform_j(d, n)?),
        GenKind::Identity => Document::Tensor(identity_diag(d, n)?),
        GenKind::IteratedGroup => Document::Latin(iterated_group_hypercube(n, d)?),
        GenKind::CoveringP => Document::Tensor(standard_covering_p(n, args.n2)?.matrix().clone()),
        GenKind::Remark1 => Document::Tensor(fixtures::remark1_a()),
        GenKind::Remark2A => Document::Tensor(fixtures::remark2_a()),
        GenKind::Remark2B => Document::Tensor(fixtures::remark2_b()),
        GenKind::Remark2KronDisplay => Document::Tensor(fixtures::remark2_displayed_kronecker()),
        GenKind::FirstColumn => Document::Tensor(fixtures::first_column_ones(n)),
        GenKind::FirstRow => Document::Tensor(fixtures::first_row_ones(n)),
        GenKind::Hyperplane => Document::Tensor(fixtures::hyperplane_indicator(d, n)),
        GenKind::ShiftedDiagonal => Document::Tensor(fixtures::shifted_diagonal(d, n)),
        GenKind::AnnihilatingA => Document::Tensor(fixtures::dot_annihilating_pair().0),
        GenKind::AnnihilatingB => Document::Tensor(fixtures::dot_annihilating_pair().1),
        GenKind::Random => Document::Tensor(fixtures::random_cube(&mut rng, d, n, false)),
        GenKind::RandomNonnegative => Document::Tensor(fixtures::random_cube(&mut rng, d, n, true)),
        GenKind::RandomLatin => Document::Latin(fixtures::random_latin(&mut rng, d, n)),
        GenKind::RandomPolystochastic => {
            need(d >= 2, "random-polystochastic needs d >= 2")?;
            Document::Tensor(fixtures::random_polystochastic(&mut rng, d, n, 2))
        }
        GenKind::RandomStochastic => {
            need(d >= 2 && (1..=d).contains(&args.k), "random-stochastic needs d >= 2 and 1 <= k <= d")?;
            Document::Tensor(fixtures::random_k_stochastic(&mut rng, d, n, args.k))
        }
    };
    match (doc, format) {
        (Document::Latin(q), Some(Format::Pmat)) => out.tensor(latin_to_tensor(&q)),
        (doc, _) => out.document(doc),
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation(msg.into()))
    }
}

fn info(path: &Path, out: &Output) -> Result<()> {
    let mut text = String::new();
    match read_document(path)? {
        Document::Tensor(t) => {
            let extents: Vec<String> = t.extents().iter().map(|e| e.to_string()).collect();
            text += &format!("format: pmat\ndimension: {}\nextents: {}\n", t.dim(), extents.join(" "));
            match t.order() {
                Some(n) => text += &format!("cubical: yes\norder: {n}\n"),
                None => text += "cubical: no\n",
            }
            text += &format!(
                "entries: {}\nnonzero: {}\nsum: {}\nnonnegative: {}\nzero-one: {}\n",
                t.entries().len(),
                t.nonzero_count(),
                format_literal(&t.sum()),
                yes_no(t.is_nonnegative()),
                yes_no(t.is_zero_one())
            );
        }
        Document::Latin(q) => {
            text += &format!("format: latin\ndimension: {}\norder: {}\n", q.dim(), q.order());
        }
        Document::Oa(r) => {
            text += &format!(
                "format: oa\nstrength: {}\nlevels: {}\nfactors: {}\nindex: {}\nrows: {}\northogonal: {}\n",
                r.strength(),
                r.levels(),
                r.factors(),
                r.index(),
                r.rows().len(),
                yes_no(r.is_orthogonal())
            );
        }
    }
    out.emit(&text)
}

fn read_quasigroups(paths: &[PathBuf]) -> Result<(Quasigroup, Quasigroup)> {
    if paths.len() != 2 {
        return Err(Error::Validation(format!("expected 2 input files, got {}", paths.len())));
    }
    let mut qs = Vec::new();
    for path in paths {
        match read_document(path)? {
            Document::Latin(q) => qs.push(Quasigroup::new(q)),
            _ => return Err(Error::Validation(format!("{} is not a latin hypercube", path.display()))),
        }
    }
    let g = qs.pop().expect("two inputs");
    Ok((qs.pop().expect("two inputs"), g))
}

fn op(args: &OpArgs, out: &Output) -> Result<()> {
    let files = &args.files;
    let result = match args.name {
        OpName::Compose => {
            let (f, g) = read_quasigroups(files)?;
            return out.document(Document::Latin(qg_compose(&f, &g)?.table().clone()));
        }
        OpName::DirectProduct => {
            let (f, g) = read_quasigroups(files)?;
            return out.document(Document::Latin(qg_direct_product(&f, &g)?.table().clone()));
        }
        OpName::Outer => {
            let t = read_tensors(files, 2)?;
            ops::outer(&t[0], &t[1])?
        }
        OpName::Kron => {
            let t = read_tensors(files, 2)?;
            ops::kronecker(&t[0], &t[1])?
        }
        OpName::Contract => ops::contract(&read_tensors(files, 1)?[0], &axis_sets(&args.sets)?)?,
        OpName::Project => ops::project(&read_tensors(files, 1)?[0], &axis_sets(&args.sets)?)?,
        OpName::Dot => {
            let t = read_tensors(files, 2)?;
            ops::dot(&t[0], &t[1])?
        }
        OpName::DotIj => {
            let t = read_tensors(files, 2)?;
            let i = args.i.ok_or_else(|| Error::Validation("dot-ij needs --i".into()))?;
            let j = args.j.ok_or_else(|| Error::Validation("dot-ij needs --j".into()))?;
            ops::dot_ij(&t[0], i, &t[1], j)?
        }
        OpName::SDot => {
            let at = &args.at.as_ref().ok_or_else(|| Error::Validation("s-dot needs --at".into()))?.0;
            let t = read_tensors(files, at.len())?;
            let factors: Vec<(&Tensor, usize)> = t.iter().zip(at.iter().copied()).collect();
            ops::s_dot(&factors)?
        }
        OpName::Circle => {
            let t = read_tensors(files, 2)?;
            ops::circle(&t[0], &t[1])?
        }
        OpName::Transpose => {
            let perm = &args.perm.as_ref().ok_or_else(|| Error::Validation("transpose needs --perm".into()))?.0;
            read_tensors(files, 1)?[0].transpose(perm)?
        }
        OpName::PermuteHyperplanes => {
            let perm = &args.perm.as_ref().ok_or_else(|| Error::Validation("permute-hyperplanes needs --perm".into()))?.0;
            let axis = args.axis.ok_or_else(|| Error::Validation("permute-hyperplanes needs --axis".into()))?;
            read_tensors(files, 1)?[0].permute_hyperplanes(axis, perm)?
        }
        OpName::ExtractPlane => {
            let plane = args.plane.as_ref().ok_or_else(|| Error::Validation("extract-plane needs --plane".into()))?;
            read_tensors(files, 1)?[0].extract_plane(plane)?
        }
        OpName::Combine => {
            let t = read_tensors(files, 2)?;
            if args.coef.len() != 2 {
                return Err(Error::Validation("combine needs --coef c1 c2".into()));
            }
            linear_combine(&args.coef[0], &t[0], &args.coef[1], &t[1])?
        }
        OpName::ReducedOuter => {
            let t = read_tensors(files, 2)?;
            let n = t[0].require_cubical("first factor")?;
            let sigma = args.perm.clone().map_or_else(|| (0..n).collect(), |p| p.0);
            reduced_outer(&t[0], &t[1], &sigma)?
        }
    };
    out.tensor(result)
}

fn per(path: &Path, oracle: bool, threads: usize, budget: u64, out: &Output) -> Result<()> {
    let a = read_tensor(path)?;
    let value = if oracle {
        permanent_oracle(&a, budget)?
    } else if threads > 1 {
        permanent_parallel(&a, threads)?
    } else {
        permanent(&a)?
    };
    out.line(format_literal(&value))
}

fn diag(path: &Path, positive: bool, count: bool, limit: usize, out: &Output) -> Result<()> {
    let a = read_tensor(path)?;
    let n = a.require_cubical("matrix")?;
    if count {
        return out.line(diagonal_count(a.dim(), n));
    }
    if positive {
        return out.line(has_positive_diagonal(&a)?);
    }
    let mut text = String::new();
    for (diagonal, product) in nonzero_diagonals(&a, limit)? {
        let cells: Vec<String> = diagonal
            .indices()
            .iter()
            .map(|idx| {
                let comps: Vec<String> = idx.iter().map(|c| (c + 1).to_string()).collect();
                format!("({})", comps.join(","))
            })
            .collect();
        text += &format!("{} {}\n", cells.join(" "), format_literal(&product));
    }
    out.emit(&text)
}

fn stoch(verb: &StochVerb, out: &Output) -> Result<()> {
    match verb {
        StochVerb::Report { file } => {
            let report = stochasticity_report(&read_tensor(file)?)?;
            let degrees: Vec<String> = report.degrees.iter().map(|k| k.to_string()).collect();
            out.emit(&format!(
                "nonnegative: {}\ndegrees: {}\npolystochastic: {}\n",
                yes_no(report.nonnegative),
                degrees.join(" "),
                yes_no(report.is_polystochastic())
            ))
        }
        StochVerb::K { file, k } => out.line(is_k_stochastic(&read_tensor(file)?, *k)?),
        StochVerb::Predict { kind, d1, k1, n1, d2, k2, n2, ell } => {
            let kind: ProductKind = kind.parse()?;
            let params = ProductParams { d1: *d1, k1: *k1, n1: *n1, d2: *d2, k2: *k2, n2: *n2, ell: *ell };
            let p = predicted_product_stochasticity(kind, &params);
            let mut text = format!("kind: {}\napplicable: {}\n", p.kind, yes_no(p.applicable));
            if p.applicable {
                text += &format!("degree: {}\nscale: {}\n", p.degree, format_literal(&p.scale));
            }
            text += &format!("reason: {}\n", p.reason);
            out.emit(&text)
        }
        StochVerb::Eigen { file, vector, lambda } => {
            let pair = Eigenpair { lambda: lambda.clone(), v: read_tensor(vector)? };
            out.line(verify_eigenpair(&read_tensor(file)?, &pair)?)
        }
        StochVerb::Covering { a, b, p } => {
            let w = CoveringWitness::new(read_tensor(p)?)?;
            out.line(check_covering(&read_tensor(a)?, &read_tensor(b)?, &w)?)
        }
        StochVerb::CoveringConstants { file, n2 } => {
            let a = read_tensor(file)?;
            let found = covering_constants(&a, *n2)?;
            let show = |c: &Option<Rational>| c.as_ref().map_or("none".to_string(), format_literal);
            let (su, si) = properties::stated_covering_constants(a.dim(), *n2);
            out.emit(&format!(
                "uniform: {}\nidentity: {}\nstated-uniform: {}\nstated-identity: {}\n",
                show(&found.uniform),
                show(&found.identity),
                format_literal(&su),
                format_literal(&si)
            ))
        }
    }
}

/// Returns whether the property holds.
fn check(cmd: &CheckCmd, budget: u64, out: &Output) -> Result<bool> {
    if cmd.list {
        let mut text = String::new();
        for p in properties::registry() {
            text += &format!("{:<26} {}\n", p.name, p.statement);
        }
        out.emit(&text)?;
        return Ok(true);
    }
    let name = cmd
        .property
        .as_deref()
        .ok_or_else(|| Error::Validation("name a property or pass --list".into()))?;
    let property = properties::lookup(name)
        .ok_or_else(|| Error::Validation(format!("unknown property `{name}`; see check --list")))?;
    let docs = cmd.files.iter().map(|p| read_document(p)).collect::<Result<Vec<_>>>()?;
    let mut args = CheckArgs { budget, ..CheckArgs::default() };
    args.sets = axis_sets(&cmd.sets)?;
    if let Some(l) = &cmd.lambda {
        args.scalar = l.clone();
    }
    args.i = cmd.i;
    args.j = cmd.j;
    if let Some(t) = cmd.t {
        args.t = t;
    }
    args.sigma = cmd.sigma.clone().map(|p| p.0);
    args.plane = cmd.plane.clone();
    let holds = property.check(&docs, &args)?;
    out.line(if holds { "holds" } else { "violated" })?;
    Ok(holds)
}

fn convert(path: &Path, format: Option<Format>, t: Option<usize>, lambda: Option<usize>, out: &Output) -> Result<()> {
    let format = format.ok_or_else(|| Error::Validation("convert needs --format".into()))?;
    let doc = read_document(path)?;
    let converted = match (doc, format) {
        (doc, f) if doc.format() == f => doc,
        (Document::Latin(q), Format::Pmat) => Document::Tensor(latin_to_tensor(&q)),
        (Document::Tensor(m), Format::Latin) => Document::Latin(tensor_to_latin(&m)?),
        (Document::Oa(r), Format::Pmat) => Document::Tensor(oa_to_tensor(&r)?),
        (Document::Tensor(m), Format::Oa) => {
            let t = t.ok_or_else(|| Error::Validation("pmat -> oa needs --t".into()))?;
            let lambda = lambda.ok_or_else(|| Error::Validation("pmat -> oa needs --lambda".into()))?;
            if lambda == 0 {
                return Err(Error::Validation("lambda must be positive".into()));
            }
            let normalized = m.scale(&Rational::new(1.into(), lambda.into()));
            Document::Oa(tensor_to_oa(&normalized, t, lambda)?)
        }
        (doc, f) => {
            return Err(Error::Validation(format!(
                "no conversion from {} to {}",
                doc.format().name(),
                f.name()
            )))
        }
    };
    out.document(converted)
}

fn transversals(path: &Path, direct: bool, threads: usize, budget: u64, out: &Output) -> Result<()> {
    let q = match read_document(path)? {
        Document::Latin(q) => q,
        Document::Tensor(m) => tensor_to_latin(&m)?,
        Document::Oa(_) => return Err(Error::Validation("transversals needs a latin hypercube".into())),
    };
    let count = if direct {
        transversals_direct(&q, budget)?
    } else {
        transversal_count_parallel(&q, threads)?
    };
    out.line(count)
}

fn scan_line(label: &str, m: &Tensor, threads: usize) -> Result<String> {
    let n = m.require_cubical("matrix")?;
    let p = permanent_parallel(m, threads)?;
    let in_scope = n % 2 == 1 || m.dim() % 2 == 0;
    let flag = if in_scope && p == Rational::from_integer(0.into()) { " zero-permanent-in-scope" } else { "" };
    Ok(format!(
        "{label} dim={} order={n} per={} odd-order-or-even-dim={}{flag}\n",
        m.dim(),
        format_literal(&p),
        yes_no(in_scope)
    ))
}

fn scan(verb: &ScanVerb, threads: usize, out: &Output) -> Result<()> {
    let mut text = String::new();
    match verb {
        ScanVerb::IteratedGroup { n, d } => {
            for order in n.0..=n.1 {
                for dim in d.0..=d.1 {
                    let q = iterated_group_hypercube(order, dim)?;
                    text += &scan_line(&format!("Z{order} d={dim}"), &latin_to_tensor(&q), threads)?;
                }
            }
        }
        ScanVerb::Files { files } => {
            for path in files {
                let m = read_tensor(path)?;
                if !is_k_stochastic(&m, 1)? {
                    return Err(Error::Validation(format!("{} is not polystochastic", path.display())));
                }
                text += &scan_line(&path.display().to_string(), &m, threads)?;
            }
        }
    }
    out.emit(&text)
}

fn run(cli: Cli) -> Result<u8> {
    let out = Output { out: cli.out.clone() };
    let format = cli.format.map(Format::from);
    let threads = cli.threads.max(1);
    match &cli.verb {
        Verb::Gen(args) => gen(args, format, &out)?,
        Verb::Info { file } => info(file, &out)?,
        Verb::Op(args) => op(args, &out)?,
        Verb::Per { file, oracle } => per(file, *oracle, threads, cli.budget, &out)?,
        Verb::Diag { file, positive, count, limit } => diag(file, *positive, *count, *limit, &out)?,
        Verb::Stoch(verb) => stoch(verb, &out)?,
        Verb::Check(cmd) => {
            if !check(cmd, cli.budget, &out)? {
                return Ok(3);
            }
        }
        Verb::Convert { file, t, lambda } => convert(file, format, *t, *lambda, &out)?,
        Verb::Transversals { file, direct } => transversals(file, *direct, threads, cli.budget, &out)?,
        Verb::Scan(verb) => scan(verb, threads, &out)?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("mdmat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
