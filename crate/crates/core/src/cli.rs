//! Command line front end. `run` returns the process exit code: 0 on success,
//! 1 for numerical failures, 2 for usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubature::{cc_rule_for, integrate, Lebesgue, MomentSource};
use crate::error::Error;
use crate::extremal::{extract, interpolate, ExtremalKind, ExtremalSet};
use crate::frequency::{
    find_small_solution, first_resonance, frequency_triple, max_exactness_degree, siegel_bound,
    verify_conjecture,
};
use crate::graded::{dim_p3, Basis};
use crate::grid::{ControlGrid, DEFAULT_SEED};
use crate::hyperinterp::{compare_on_grid, hyper_coeffs, CoeffSet, TestFunction};
use crate::io::{format_indices, format_nodes, write_atomic, Csv};
use crate::lattice::{Lattice, Point3, Variant};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "LISSAJOUS3_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "lissajous3",
    version,
    about = "Polynomial approximation on 3D Lissajous curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frequencies, curve degree and lattice sizes for degree n.
    Triple {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Export the lattice nodes.
    Lattice {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Lobatto)]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hyperinterpolation error table.
    Hyper(SweepArgs),
    /// Extract Approximate Fekete or Discrete Leja points.
    Extract {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Dlp)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = VariantArg::Lobatto)]
        variant: VariantArg,
        /// Node file; the index file goes next to it with extension `.idx`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        index_out: Option<PathBuf>,
    },
    /// Lebesgue constants of the extremal sets.
    Lebesgue {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
        method: MethodChoice,
        #[arg(long, value_enum, default_value_t = VariantArg::Lobatto)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = GridArg::Default)]
        grid: GridArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolation error table on the extremal sets.
    Interp {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
        method: MethodChoice,
        /// Extract Leja points once at the top degree and use nested prefixes.
        #[arg(long)]
        nested: bool,
    },
    /// Lattice cubature against the product Chebyshev measure.
    Cubature {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        func: FunctionArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Lobatto)]
        variant: VariantArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Clenshaw-Curtis type cubature for another density.
    Cc {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value_t = DensityArg::Lebesgue)]
        density: DensityArg,
        #[command(flatten)]
        func: FunctionArgs,
        #[arg(long, value_enum, default_value_t = VariantArg::Lobatto)]
        variant: VariantArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive check of the minimal-maximum conjecture at degree n.
    Conjecture {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Non-resonance check of an arbitrary frequency triple.
    Resonance {
        #[arg(long, value_delimiter = ',', required = true)]
        freqs: Vec<u64>,
        #[arg(long)]
        budget: u64,
    },
    /// Small kernel vector of a positive tuple by the pigeonhole construction.
    Siegel {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long, conflicts_with_all = ["n_from", "n_to"], value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,
    #[arg(long, requires = "n_to", value_parser = clap::value_parser!(u64).range(1..))]
    n_from: Option<u64>,
    #[arg(long, requires = "n_from", value_parser = clap::value_parser!(u64).range(1..))]
    n_to: Option<u64>,
}

impl RangeArgs {
    fn degrees(&self) -> Result<Vec<usize>, Error> {
        let (lo, hi) = match (self.n, self.n_from, self.n_to) {
            (Some(n), _, _) => (n, n),
            (None, Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Empty("degree range (use --n or --n-from/--n-to)")),
        };
        if lo > hi {
            return Err(Error::Empty("degree range"));
        }
        Ok((lo as usize..=hi as usize).collect())
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    range: RangeArgs,
    #[command(flatten)]
    func: FunctionArgs,
    #[arg(long, value_enum, default_value_t = VariantArg::Lobatto)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = GridArg::Default)]
    grid: GridArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Add a wall-clock column (makes the output run dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    #[arg(long = "fn", value_enum, default_value_t = FnArg::F1)]
    func: FnArg,
    /// Gaussian rate of `f1`.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Exponent of `f2`.
    #[arg(long, default_value_t = 5.0)]
    beta: f64,
    /// Half degree of `pow`, degree of `custom-cheb`.
    #[arg(long, default_value_t = 5)]
    k: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FnArg {
    F1,
    F2,
    Pow,
    Const,
    /// Random polynomial of degree k in the Chebyshev basis (seeded).
    CustomCheb,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Gauss,
    Lobatto,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Gauss => Variant::Gauss,
            VariantArg::Lobatto => Variant::Lobatto,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Afp,
    Dlp,
}

impl From<MethodArg> for ExtremalKind {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Afp => ExtremalKind::Afp,
            MethodArg::Dlp => ExtremalKind::Dlp,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodChoice {
    Afp,
    Dlp,
    Both,
}

impl MethodChoice {
    fn kinds(self) -> Vec<ExtremalKind> {
        match self {
            MethodChoice::Afp => vec![ExtremalKind::Afp],
            MethodChoice::Dlp => vec![ExtremalKind::Dlp],
            MethodChoice::Both => vec![ExtremalKind::Afp, ExtremalKind::Dlp],
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GridArg {
    Default,
    Dense,
}

impl GridArg {
    fn build(self, n: usize) -> ControlGrid {
        match self {
            GridArg::Default => ControlGrid::default_for(n),
            GridArg::Dense => ControlGrid::dense_for(n),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DensityArg {
    Lebesgue,
}

/// A scalar target on the cube.
enum Target {
    Known(TestFunction),
    Custom(CoeffSet),
}

impl Target {
    fn from_args(args: &FunctionArgs, seed: u64) -> Result<Self, Error> {
        Ok(match args.func {
            FnArg::F1 => Target::Known(TestFunction::from_name("f1", args.c)?),
            FnArg::F2 => Target::Known(TestFunction::from_name("f2", args.beta)?),
            FnArg::Pow => Target::Known(TestFunction::from_name("pow", args.k as f64)?),
            FnArg::Const => Target::Known(TestFunction::Constant),
            FnArg::CustomCheb => {
                let degree = args.k as usize;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let coeffs = (0..dim_p3(degree))
                    .map(|_| rng.gen_range(-1.0..=1.0))
                    .collect();
                Target::Custom(CoeffSet::new(degree, Basis::Chebyshev, coeffs)?)
            }
        })
    }

    fn eval(&self, x: Point3) -> f64 {
        match self {
            Target::Known(f) => f.eval(x),
            Target::Custom(p) => p.indexer.eval_series(&p.coeffs, x, p.basis),
        }
    }

    fn label(&self) -> String {
        match self {
            Target::Known(TestFunction::Gaussian { c }) => format!("f1(c={c})"),
            Target::Known(TestFunction::Power { beta }) => format!("f2(beta={beta})"),
            Target::Known(TestFunction::RadialPower { k }) => format!("pow(k={k})"),
            Target::Known(TestFunction::Constant) => "const".to_string(),
            Target::Custom(p) => format!("custom-cheb(degree={})", p.n),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RankDeficient { .. }
        | Error::Evaluation { .. }
        | Error::SearchLimit { .. }
        | Error::Io(_) => 1,
        _ => 2,
    }
}

/// Applies the thread cap from the environment once per process.
fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => write_atomic(path, text),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Triple { n } => cmd_triple(n, stdout),
        Command::Lattice { n, variant, out } => {
            let lattice = Lattice::new(n as usize, variant.into())?;
            let header = vec![format!(
                "lattice n={} variant={} nodes={}",
                n,
                lattice.variant,
                lattice.node_count()
            )];
            emit(&out, &format_nodes(&lattice.nodes, &header), stdout)
        }
        Command::Hyper(sweep) => cmd_hyper(&sweep, stdout),
        Command::Extract {
            n,
            method,
            variant,
            out,
            index_out,
        } => cmd_extract(
            n as usize,
            method.into(),
            variant.into(),
            out,
            index_out,
            stdout,
        ),
        Command::Lebesgue {
            range,
            method,
            variant,
            grid,
            out,
        } => cmd_lebesgue(&range, method, variant.into(), grid, &out, stdout),
        Command::Interp {
            sweep,
            method,
            nested,
        } => cmd_interp(&sweep, method, nested, stdout),
        Command::Cubature {
            n,
            func,
            variant,
            seed,
        } => {
            let target = Target::from_args(&func, seed)?;
            let value = integrate(|x| target.eval(x), n as usize, variant.into())?;
            let mut csv = Csv::new(&["n", "variant", "fn", "value"]);
            csv.row(vec![
                n.into(),
                variant_name(variant).into(),
                target.label().as_str().into(),
                value.into(),
            ]);
            stdout.write_all(csv.as_str().as_bytes())?;
            Ok(())
        }
        Command::Cc {
            range,
            density,
            func,
            variant,
            seed,
            out,
        } => {
            let DensityArg::Lebesgue = density;
            let target = Target::from_args(&func, seed)?;
            let mut csv = Csv::new(&[
                "n",
                "density",
                "fn",
                "value",
                "weight_sum",
                "abs_weight_sum",
                "abs_limit",
            ]);
            for n in range.degrees()? {
                let rule = cc_rule_for(&Lebesgue, n, variant.into())?;
                let value = rule.apply(|x| target.eval(x))?;
                csv.row(vec![
                    n.into(),
                    Lebesgue.name().into(),
                    target.label().as_str().into(),
                    value.into(),
                    rule.weights.iter().sum::<f64>().into(),
                    rule.abs_weight_sum().into(),
                    Lebesgue.stability_limit().unwrap_or(f64::NAN).into(),
                ]);
            }
            emit(&out, csv.as_str(), stdout)
        }
        Command::Conjecture { n } => {
            let report = verify_conjecture(n)?;
            match report.counterexample {
                None => writeln!(
                    stdout,
                    "holds n={} triples_checked={}",
                    n, report.triples_checked
                )?,
                Some([a, b, c]) => writeln!(stdout, "counterexample n={n} triple={a},{b},{c}")?,
            }
            Ok(())
        }
        Command::Resonance { freqs, budget } => {
            let f: [u64; 3] = freqs.as_slice().try_into().map_err(|_| Error::Shape {
                what: "frequency triple",
                expected: 3,
                got: freqs.len(),
            })?;
            match first_resonance(f, budget)? {
                None => writeln!(stdout, "non-resonant up to {budget}")?,
                Some(w) => writeln!(stdout, "resonant witness={} l1={}", join(&w.coeffs), w.l1)?,
            }
            writeln!(
                stdout,
                "max_exactness_degree={}",
                max_exactness_degree(f, budget)?
            )?;
            Ok(())
        }
        Command::Siegel { a, n } => {
            let bound = siegel_bound(n, a.len() as u64)?;
            let w = find_small_solution(&a, n)?;
            writeln!(
                stdout,
                "bound={bound} witness={} l1={}",
                join(&w.coeffs),
                w.l1
            )?;
            Ok(())
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn variant_name(v: VariantArg) -> &'static str {
    Variant::from(v).name()
}

fn cmd_triple(n: u64, stdout: &mut dyn Write) -> Result<(), Error> {
    let t = frequency_triple(n)?;
    let nu = n * t.c;
    let mut text = String::new();
    let _ = writeln!(text, "{} {} {}", t.a, t.b, t.c);
    let _ = writeln!(text, "nu={nu}");
    let _ = writeln!(text, "mu_gauss={} nodes_gauss={}", nu, nu + 1);
    let _ = writeln!(text, "mu_lobatto={} nodes_lobatto={}", nu + 1, nu + 2);
    let _ = writeln!(text, "dim={}", dim_p3(n as usize));
    stdout.write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_hyper(sweep: &SweepArgs, stdout: &mut dyn Write) -> Result<(), Error> {
    let target = Target::from_args(&sweep.func, sweep.seed)?;
    let mut header = vec!["n", "l2_rel", "linf_rel", "coeff_count"];
    if sweep.timing {
        header.push("wall_ms");
    }
    let mut csv = Csv::new(&header);
    for n in sweep.range.degrees()? {
        let start = Instant::now();
        let coeffs = hyper_coeffs(|x| target.eval(x), n, sweep.variant.into())?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let grid = sweep.grid.build(n);
        let approx = coeffs.eval_many(&grid.points)?;
        let exact: Vec<f64> = grid.points.iter().map(|&x| target.eval(x)).collect();
        let report = compare_on_grid(&exact, &approx);
        let mut row = vec![
            n.into(),
            report.l2_rel.into(),
            report.linf_rel.into(),
            coeffs.coeffs.len().into(),
        ];
        if sweep.timing {
            row.push(elapsed.into());
        }
        csv.row(row);
    }
    emit(&sweep.out, csv.as_str(), stdout)
}

fn index_path(out: &Path) -> PathBuf {
    out.with_extension("idx")
}

fn cmd_extract(
    n: usize,
    kind: ExtremalKind,
    variant: Variant,
    out: Option<PathBuf>,
    index_out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), Error> {
    let (lattice, set) = extract(n, variant, kind)?;
    let header = vec![format!(
        "{} n={} variant={} points={} lattice_nodes={}",
        kind,
        n,
        variant,
        set.len(),
        lattice.node_count()
    )];
    let nodes = format_nodes(&set.points, &header);
    match (&out, &index_out) {
        (None, None) => stdout.write_all(nodes.as_bytes())?,
        _ => {
            if let Some(path) = &out {
                write_atomic(path, &nodes)?;
            }
            let idx = index_out.or_else(|| out.as_deref().map(index_path));
            if let Some(path) = idx {
                write_atomic(&path, &format_indices(&set.indices))?;
            }
        }
    }
    Ok(())
}

fn cmd_lebesgue(
    range: &RangeArgs,
    method: MethodChoice,
    variant: Variant,
    grid: GridArg,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), Error> {
    let mut csv = Csv::new(&["n", "method", "lambda", "dim", "n2"]);
    for n in range.degrees()? {
        for kind in method.kinds() {
            let (lattice, set) = extract(n, variant, kind)?;
            let grid = grid.build(n).with_points(&lattice.nodes);
            let lambda = set.system()?.lebesgue_constant(&grid)?;
            csv.row(vec![
                n.into(),
                kind.name().into(),
                lambda.into(),
                dim_p3(n).into(),
                (n * n).into(),
            ]);
        }
    }
    emit(out, csv.as_str(), stdout)
}

fn cmd_interp(
    sweep: &SweepArgs,
    method: MethodChoice,
    nested: bool,
    stdout: &mut dyn Write,
) -> Result<(), Error> {
    let target = Target::from_args(&sweep.func, sweep.seed)?;
    let degrees = sweep.range.degrees()?;
    let variant: Variant = sweep.variant.into();
    let top = *degrees.last().expect("non-empty range");
    let nested_dlp: Option<ExtremalSet> = if nested {
        Some(extract(top, variant, ExtremalKind::Dlp)?.1)
    } else {
        None
    };
    let mut csv = Csv::new(&["n", "method", "l2_rel", "linf_rel"]);
    for n in degrees {
        let grid = sweep.grid.build(n);
        let exact: Vec<f64> = grid.points.iter().map(|&x| target.eval(x)).collect();
        for kind in method.kinds() {
            let set = match (&nested_dlp, kind) {
                (Some(top_set), ExtremalKind::Dlp) => top_set.truncate(n)?,
                _ => extract(n, variant, kind)?.1,
            };
            let coeffs = interpolate(&set, |x| target.eval(x))?;
            let approx = coeffs.eval_many(&grid.points)?;
            let report = compare_on_grid(&exact, &approx);
            csv.row(vec![
                n.into(),
                kind.name().into(),
                report.l2_rel.into(),
                report.linf_rel.into(),
            ]);
        }
    }
    emit(&sweep.out, csv.as_str(), stdout)
}
