//! `bochner`: command-line front end for the pointwise Bochner-technique
//! algebra. Machine-readable JSON goes to stdout (or `-o`), a short summary
//! to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bochner_core::criteria::{
    check_bochner, check_einstein_flat, check_lq_nonneg, check_pq, check_quaternion, parse_rational, Hypotheses,
    VanishingVerdict, Weight,
};
use bochner_core::curvature::{
    kahler_decompose, kahler_sharp_identity, model, quaternion_decompose, quaternion_sharp_identity,
    restricted_spectrum, AlgebraicCurvatureTensor, ModelKind, RestrictedSpectrum,
};
use bochner_core::holonomy::{AlgebraKind, HolonomySubalgebra};
use bochner_core::tensor::json::{convention_of, TensorFile, FLAG_KAHLER, FLAG_QUATERNION};
use bochner_core::tensor::EuclideanSpace;
use bochner_core::verify::{prop24_for, prop27_for, prop28_for, run_all, run_suite, Suite, VerificationReport, VerifyOptions};
use bochner_core::weitzenbock::{curvature_term, lichnerowicz_zero_order};

/// Leakage above which a curvature operator is refused as not supported on
/// the requested holonomy algebra.
const LEAKAGE_LIMIT: f64 = 1e-6;

#[derive(Parser)]
#[command(name = "bochner", version, about = "Curvature-operator algebra behind Bochner vanishing theorems")]
struct Cli {
    /// Seed of the ChaCha8 stream behind every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override every tolerance of a verification report.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Samples per block in randomized checks.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Input file (curvature tensor unless stated otherwise).
    #[arg(short = 'i', long, global = true)]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a model curvature tensor.
    Model(ModelArgs),
    /// Eigenvalues of the curvature operator restricted to a holonomy algebra.
    Spectrum {
        #[arg(long, default_value = "u")]
        algebra: AlgebraKind,
    },
    /// Kähler or quaternion-Kähler decomposition of a curvature tensor.
    Decompose { kind: DecomposeKind },
    /// `|T^𝔤|²` of a tensor file, with the curvature identity when it applies.
    SharpNorm {
        #[arg(long)]
        algebra: Option<AlgebraKind>,
    },
    /// Weitzenböck curvature operator.
    Weitz {
        #[command(subcommand)]
        command: WeitzCommand,
    },
    /// Checks on (p,q)-forms.
    Forms {
        #[command(subcommand)]
        command: FormsCommand,
    },
    /// Eigenvalue criteria of the vanishing theorems.
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
    /// Run a verification suite, or all of them.
    Verify {
        suite: Option<Suite>,
        /// Restrict the complex dimension of the Kähler suites.
        #[arg(long)]
        n: Option<usize>,
        /// Quaternionic dimension of the quaternion suites.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelName {
    Flat,
    Constant,
    Chsc,
    Hpm,
}

#[derive(Args)]
struct ModelArgs {
    kind: ModelName,
    /// Complex dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Real dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Quaternionic dimension.
    #[arg(long)]
    m: Option<usize>,
    /// Curvature constant.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeKind {
    Kahler,
    Quaternion,
}

#[derive(Subcommand)]
enum WeitzCommand {
    /// `c·Ric(T)` as a tensor file.
    Ric {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// `g(𝔯(T^𝔤), T̄^𝔤)` by both routes.
    Term {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long)]
        algebra: Option<AlgebraKind>,
    },
    /// `g(Ric(T), T̄) = g(𝔯(T^𝔤), T̄^𝔤)` on random tensors.
    Verify {
        #[arg(long)]
        algebra: Option<AlgebraKind>,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
    },
}

#[derive(Args)]
struct StratumArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Subcommand)]
enum FormsCommand {
    /// Sharp-norm coefficient on the Lefschetz stratum.
    CheckProp27(StratumArgs),
    /// Action bound on `V^{p,q}_k`.
    CheckProp28(StratumArgs),
}

#[derive(Args)]
struct SpectrumSource {
    /// Ascending eigenvalues: a JSON array or the output of `spectrum`.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Build the spectrum from a model instead.
    #[arg(long)]
    model: Option<ModelName>,
    /// Curvature constant of `--model`.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c: f64,
}

#[derive(Args)]
struct HypothesisFlags {
    /// Assert |T| ∈ L^Q.
    #[arg(long)]
    lq_finite: bool,
    /// Assert the weighted Poincaré inequality with its two side conditions.
    #[arg(long)]
    weighted_poincare: bool,
    /// Assert vanishing scalar curvature.
    #[arg(long)]
    scalar_flat: bool,
    /// Assert the metric is Kähler–Einstein.
    #[arg(long)]
    kahler_einstein: bool,
    /// Assert the Bochner tensor is divergence free.
    #[arg(long)]
    divergence_free_bochner: bool,
}

impl HypothesisFlags {
    fn get(&self) -> Hypotheses {
        Hypotheses {
            lq_finite: self.lq_finite,
            weighted_poincare: self.weighted_poincare,
            scalar_flat: self.scalar_flat,
            kahler_einstein: self.kahler_einstein,
            divergence_free_bochner: self.divergence_free_bochner,
        }
    }
}

#[derive(Args)]
struct WeightArgs {
    /// κ (or k), rational or decimal.
    #[arg(long, alias = "kappa", default_value = "0")]
    k: String,
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[arg(long = "Q", default_value = "2")]
    q_exp: String,
}

impl WeightArgs {
    fn get(&self) -> Result<Weight> {
        Ok(Weight { kappa: parse_rational(&self.k)?, rho: self.rho, q_exp: parse_rational(&self.q_exp)? })
    }
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Harmonic (p,q)-forms.
    Pq {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Use the stratum constant `C^{p,q}_k`.
        #[arg(long)]
        stratum: Option<usize>,
        #[arg(long, default_value = "0")]
        kappa: String,
        #[arg(long, default_value_t = 0.0)]
        rho: f64,
        #[arg(long = "Q", default_value = "2")]
        q_exp: String,
        #[command(flatten)]
        source: SpectrumSource,
        #[command(flatten)]
        hyp: HypothesisFlags,
    },
    /// Vanishing of the Bochner tensor.
    Bochner {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        source: SpectrumSource,
        #[command(flatten)]
        hyp: HypothesisFlags,
    },
    /// Flatness of Kähler–Einstein metrics.
    Einstein {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        source: SpectrumSource,
        #[command(flatten)]
        hyp: HypothesisFlags,
    },
    /// Flatness of quaternion-Kähler metrics.
    Quaternion {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        source: SpectrumSource,
        #[command(flatten)]
        hyp: HypothesisFlags,
    },
    /// `⌈n/2⌉`-nonnegativity.
    Lq {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        source: SpectrumSource,
        #[command(flatten)]
        hyp: HypothesisFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    emit(cli, &serde_json::to_string_pretty(value)?)
}

fn input(cli: &Cli) -> Result<&Path> {
    cli.input.as_deref().ok_or_else(|| anyhow!("this command needs an input file (-i)"))
}

fn read_curvature(path: &Path) -> Result<AlgebraicCurvatureTensor> {
    let file = TensorFile::read(path).with_context(|| format!("reading {}", path.display()))?;
    AlgebraicCurvatureTensor::from_file(&file).with_context(|| format!("loading curvature from {}", path.display()))
}

fn default_algebra(space: &EuclideanSpace) -> AlgebraKind {
    if space.has_quaternionic_structure() {
        AlgebraKind::SpSp1
    } else if space.is_block_convention() {
        AlgebraKind::U
    } else {
        AlgebraKind::So
    }
}

fn verify_options(cli: &Cli, n: Option<usize>, m: Option<usize>) -> VerifyOptions {
    VerifyOptions { seed: cli.seed, samples: cli.samples, n, m, tol: cli.tol }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Model(args) => cmd_model(cli, args),
        Command::Spectrum { algebra } => {
            let rm = read_curvature(input(cli)?)?;
            let spec = checked_spectrum(&rm, *algebra)?;
            eprintln!("{} eigenvalues on {algebra}, leakage {:.3e}", spec.eigenvalues.len(), spec.leakage);
            emit_json(cli, &spec)?;
            Ok(0)
        }
        Command::Decompose { kind } => {
            let rm = read_curvature(input(cli)?)?;
            match kind {
                DecomposeKind::Kahler => {
                    let dec = kahler_decompose(&rm)?;
                    eprintln!("scal {:.6e}, reassembly error {:.3e}", dec.scal, dec.reassembly_error(&rm)?);
                    emit_json(cli, &dec.export())?;
                }
                DecomposeKind::Quaternion => {
                    let dec = quaternion_decompose(&rm)?;
                    eprintln!("ℍPᵐ coefficient {:.6e}, leakage {:.3e}", dec.hp_coefficient, dec.leakage);
                    emit_json(cli, &dec.export())?;
                }
            }
            Ok(0)
        }
        Command::SharpNorm { algebra } => cmd_sharp_norm(cli, *algebra),
        Command::Weitz { command } => cmd_weitz(cli, command),
        Command::Forms { command } => {
            let opts = verify_options(cli, None, None);
            let report = match command {
                FormsCommand::CheckProp27(a) => prop27_for(a.n, a.p, a.q, a.k, &opts)?,
                FormsCommand::CheckProp28(a) => prop28_for(a.n, a.p, a.q, a.k, &opts)?,
            };
            finish_reports(std::slice::from_ref(&report))?;
            emit_json(cli, &report)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Check { command } => cmd_check(cli, command),
        Command::Verify { suite, n, m } => {
            let opts = verify_options(cli, *n, *m);
            let reports = match suite {
                Some(s) => vec![run_suite(*s, &opts)?],
                None => run_all(&opts)?,
            };
            let ok = finish_reports(&reports)?;
            match suite {
                Some(_) => emit_json(cli, &reports[0])?,
                None => emit_json(cli, &reports)?,
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Summaries and failing cases go to stderr.
fn finish_reports(reports: &[VerificationReport]) -> Result<bool> {
    let mut ok = true;
    for r in reports {
        let failed: Vec<_> = r.failures().collect();
        eprintln!(
            "{}: {}/{} cases pass ({:.2} s)",
            r.suite,
            r.cases.len() - failed.len(),
            r.cases.len(),
            r.wall_time
        );
        for c in failed.iter().take(5) {
            eprintln!("  failing: {}", serde_json::to_string(c)?);
        }
        if failed.len() > 5 {
            eprintln!("  … {} more", failed.len() - 5);
        }
        ok &= r.pass;
    }
    Ok(ok)
}

fn cmd_model(cli: &Cli, args: &ModelArgs) -> Result<u8> {
    let (space, kind) = match args.kind {
        ModelName::Flat => (model_space(args)?, ModelKind::Flat),
        ModelName::Constant => (model_space(args)?, ModelKind::ConstantSectional(args.c)),
        ModelName::Chsc => {
            let n = args.n.or(args.d.map(|d| d / 2)).ok_or_else(|| anyhow!("chsc needs --n"))?;
            (EuclideanSpace::kahler(n)?, ModelKind::Chsc(args.c))
        }
        ModelName::Hpm => {
            let m = args.m.ok_or_else(|| anyhow!("hpm needs --m"))?;
            if m < 1 {
                bail!("--m must be positive");
            }
            (EuclideanSpace::quaternionic(m)?, ModelKind::Hpm)
        }
    };
    let rm = model(kind, &space)?;
    let file = rm.to_file();
    let flags = if file.flags.is_empty() { "none".to_string() } else { file.flags.join(", ") };
    eprintln!("model {kind}: d = {}, flags: {flags}", space.dim());
    emit(cli, &file.to_json_string()?)?;
    Ok(0)
}

/// Even real dimensions get the block complex structure so that the file
/// feeds the `𝔲(n)` consumers.
fn model_space(args: &ModelArgs) -> Result<EuclideanSpace> {
    let d = match (args.n, args.d, args.m) {
        (Some(n), _, _) => 2 * n,
        (None, Some(d), _) => d,
        (None, None, Some(m)) => return Ok(EuclideanSpace::quaternionic(m)?),
        _ => bail!("give --d, --n or --m"),
    };
    Ok(if d % 2 == 0 && d > 0 { EuclideanSpace::kahler(d / 2)? } else { EuclideanSpace::real(d)? })
}

fn checked_spectrum(rm: &AlgebraicCurvatureTensor, algebra: AlgebraKind) -> Result<RestrictedSpectrum> {
    let g = HolonomySubalgebra::build(rm.space(), algebra)?;
    let spec = restricted_spectrum(rm.operator(), &g)?;
    if spec.leakage > LEAKAGE_LIMIT {
        bail!(
            "curvature operator leaks {:.3e} off {algebra} (limit {LEAKAGE_LIMIT:e}); it is not supported on this algebra",
            spec.leakage
        );
    }
    Ok(spec)
}

fn cmd_sharp_norm(cli: &Cli, algebra: Option<AlgebraKind>) -> Result<u8> {
    #[derive(Serialize)]
    struct SharpNormOutput {
        algebra: AlgebraKind,
        rank: usize,
        norm_sq: f64,
        slice_norms_sq: Vec<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        identity: Option<serde_json::Value>,
    }
    let path = input(cli)?;
    let file = TensorFile::read(path).with_context(|| format!("reading {}", path.display()))?;
    let space = file.space()?;
    let tensor = file.to_tensor()?;
    let algebra = algebra.unwrap_or_else(|| default_algebra(&space));
    let g = HolonomySubalgebra::build(&space, algebra)?;
    let sharp = g.sharp(&tensor)?;
    let mut identity = None;
    if file.kind.as_deref() == Some("curvature") {
        let rm = AlgebraicCurvatureTensor::from_file(&file)?;
        if algebra == AlgebraKind::U && file.has_flag(FLAG_KAHLER) {
            identity = Some(serde_json::to_value(kahler_sharp_identity(&rm)?)?);
        } else if algebra == AlgebraKind::SpSp1 && file.has_flag(FLAG_QUATERNION) {
            identity = Some(serde_json::to_value(quaternion_sharp_identity(&rm)?)?);
        }
    }
    let out = SharpNormOutput {
        algebra,
        rank: tensor.rank(),
        norm_sq: sharp.norm_sq(),
        slice_norms_sq: sharp.slice_norms_sq(),
        identity,
    };
    eprintln!("|T^{algebra}|² = {:.6e}", out.norm_sq);
    emit_json(cli, &out)?;
    Ok(0)
}

fn read_tensor(path: &Path) -> Result<bochner_core::tensor::ComplexTensor> {
    let file = TensorFile::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(file.to_tensor()?)
}

fn cmd_weitz(cli: &Cli, command: &WeitzCommand) -> Result<u8> {
    let rm = read_curvature(input(cli)?)?;
    match command {
        WeitzCommand::Ric { tensor, c } => {
            let t = read_tensor(tensor)?;
            let out = lichnerowicz_zero_order(&rm, &t, *c)?;
            eprintln!("c·Ric(T) for a rank-{} tensor, c = {c}", t.rank());
            emit(cli, &TensorFile::from_tensor(&out, convention_of(rm.space())).to_json_string()?)?;
            Ok(0)
        }
        WeitzCommand::Term { tensor, algebra } => {
            let t = read_tensor(tensor)?;
            let kind = algebra.unwrap_or_else(|| default_algebra(rm.space()));
            let g = HolonomySubalgebra::build(rm.space(), kind)?;
            let term = curvature_term(rm.operator(), &g, &t)?;
            eprintln!(
                "curvature term {:.6e} (gram route {:.6e}, leakage {:.3e})",
                term.value, term.gram_value, term.leakage
            );
            if term.leakage > LEAKAGE_LIMIT {
                eprintln!("warning: the operator is not supported on {kind}");
            }
            emit_json(cli, &term)?;
            Ok(0)
        }
        WeitzCommand::Verify { algebra, max_rank } => {
            let kind = algebra.unwrap_or_else(|| default_algebra(rm.space()));
            let report = prop24_for(&rm, kind, *max_rank, &verify_options(cli, None, None))?;
            let ok = finish_reports(std::slice::from_ref(&report))?;
            emit_json(cli, &report)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Ascending spectrum from `--spectrum`, `--model` or `-i`.
fn spectrum_from(cli: &Cli, source: &SpectrumSource, space: &EuclideanSpace, algebra: AlgebraKind) -> Result<Vec<f64>> {
    if let Some(path) = &source.spectrum {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let list = match &value {
            serde_json::Value::Array(_) => value,
            serde_json::Value::Object(map) => {
                map.get("eigenvalues").cloned().ok_or_else(|| anyhow!("spectrum object has no \"eigenvalues\""))?
            }
            _ => bail!("spectrum file must hold an array or an object with \"eigenvalues\""),
        };
        return Ok(serde_json::from_value(list)?);
    }
    let rm = match (source.model, &cli.input) {
        (Some(name), _) => {
            let kind = match name {
                ModelName::Flat => ModelKind::Flat,
                ModelName::Constant => ModelKind::ConstantSectional(source.c),
                ModelName::Chsc => ModelKind::Chsc(source.c),
                ModelName::Hpm => ModelKind::Hpm,
            };
            model(kind, space)?
        }
        (None, Some(path)) => {
            let rm = read_curvature(path)?;
            if rm.dim() != space.dim() {
                bail!("curvature file has dimension {}, expected {}", rm.dim(), space.dim());
            }
            rm
        }
        (None, None) => bail!("give --spectrum, --model or -i"),
    };
    Ok(checked_spectrum(&rm, algebra)?.eigenvalues)
}

fn report_verdict(cli: &Cli, name: &str, v: &VanishingVerdict) -> Result<u8> {
    eprintln!(
        "check {name}: {} ({}), condition {:.6e} vs threshold {:.6e}, κ admissible: {}",
        v.conclusion, v.theorem_id, v.condition_value, v.threshold, v.kappa_admissible
    );
    emit_json(cli, v)?;
    Ok(v.exit_code() as u8)
}

fn cmd_check(cli: &Cli, command: &CheckCommand) -> Result<u8> {
    match command {
        CheckCommand::Pq { n, p, q, stratum, kappa, rho, q_exp, source, hyp } => {
            let space = EuclideanSpace::kahler(*n)?;
            let mu = spectrum_from(cli, source, &space, AlgebraKind::U)?;
            let weight = Weight { kappa: parse_rational(kappa)?, rho: *rho, q_exp: parse_rational(q_exp)? };
            let v = check_pq(&mu, *n, *p, *q, weight, *stratum, hyp.get())?;
            report_verdict(cli, "pq", &v)
        }
        CheckCommand::Bochner { n, weight, source, hyp } => {
            let space = EuclideanSpace::kahler(*n)?;
            let mu = spectrum_from(cli, source, &space, AlgebraKind::U)?;
            report_verdict(cli, "bochner", &check_bochner(&mu, *n, weight.get()?, hyp.get())?)
        }
        CheckCommand::Einstein { n, weight, source, hyp } => {
            let space = EuclideanSpace::kahler(*n)?;
            let mu = spectrum_from(cli, source, &space, AlgebraKind::U)?;
            report_verdict(cli, "einstein", &check_einstein_flat(&mu, *n, weight.get()?, hyp.get())?)
        }
        CheckCommand::Quaternion { m, weight, source, hyp } => {
            let space = EuclideanSpace::quaternionic(*m)?;
            let mu = spectrum_from(cli, source, &space, AlgebraKind::SpSp1)?;
            report_verdict(cli, "quaternion", &check_quaternion(&mu, *m, weight.get()?, hyp.get())?)
        }
        CheckCommand::Lq { n, source, hyp } => {
            let space = EuclideanSpace::kahler(*n)?;
            let mu = spectrum_from(cli, source, &space, AlgebraKind::U)?;
            report_verdict(cli, "lq", &check_lq_nonneg(&mu, *n, hyp.get())?)
        }
    }
}
