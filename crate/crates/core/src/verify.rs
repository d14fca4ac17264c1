//! Reproducible verification suites.
//!
//! Each suite draws its inputs from a ChaCha8 stream seeded by the caller and
//! returns a [`VerificationReport`]. A case passes iff its deviation is at
//! most the tolerance it names. Wall time is recorded but not serialized, so
//! the JSON is byte-identical across runs with the same seed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::curvature::{
    bochner_traces, kahler_decompose, kahler_sharp_identity, model, quaternion_sharp_identity, random_curvature,
    random_einstein_kahler, random_kahler, random_quaternion_kahler, restricted_spectrum, AlgebraicCurvatureTensor,
    ModelKind,
};
use crate::error::{Error, Result};
use crate::forms::{
    action_bound_check, build_pq_basis, construct_lefschetz, random_lefschetz, random_pq_form, random_vpqk,
    sharp_norm_coefficient_check, PQForm,
};
use crate::holonomy::{AlgebraKind, HolonomySubalgebra};
use crate::rng::{normal, seeded, uniform, Rng, GENERATOR};
use crate::tensor::{act_on_tensor, ComplexTensor, EuclideanSpace};
use crate::tolerance::relative_deviation;
use crate::weitzenbock::{lemma26_premise, verify_lemma26, verify_prop24, Lemma26Input};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Identities,
    Prop24,
    Prop27,
    Prop28,
    Lemma26,
    Lemma212,
    Lemma213,
    BochnerTracefree,
    Theorem41,
    Theorem44,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Identities,
        Suite::Prop24,
        Suite::Prop27,
        Suite::Prop28,
        Suite::Lemma26,
        Suite::Lemma212,
        Suite::Lemma213,
        Suite::BochnerTracefree,
        Suite::Theorem41,
        Suite::Theorem44,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Prop24 => "prop24",
            Suite::Prop27 => "prop27",
            Suite::Prop28 => "prop28",
            Suite::Lemma26 => "lemma26",
            Suite::Lemma212 => "lemma212",
            Suite::Lemma213 => "lemma213",
            Suite::BochnerTracefree => "bochner-tracefree",
            Suite::Theorem41 => "theorem41",
            Suite::Theorem44 => "theorem44",
        }
    }

    /// Samples per block when the caller does not choose.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Identities => 100,
            Suite::Prop24 => 50,
            Suite::Prop27 => 20,
            Suite::Prop28 => 200,
            Suite::Lemma26 => 200,
            Suite::Lemma212 => 50,
            Suite::Lemma213 => 20,
            Suite::BochnerTracefree => 50,
            Suite::Theorem41 => 20,
            Suite::Theorem44 => 20,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: Option<usize>,
    /// Restricts the complex dimensions swept by the Kähler suites.
    pub n: Option<usize>,
    /// Quaternionic dimension of the quaternion suites (default 2).
    pub m: Option<usize>,
    /// Replaces every tolerance of the suite.
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub deviation: f64,
    /// Key into [`VerificationReport::tolerances`].
    pub tolerance: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub generator: String,
    pub version: String,
    pub tolerances: BTreeMap<String, f64>,
    pub cases: Vec<Case>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn cases_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Case> + 'a {
        self.cases.iter().filter(move |c| c.id.starts_with(prefix))
    }
}

struct Builder {
    tolerances: BTreeMap<String, f64>,
    cases: Vec<Case>,
}

impl Builder {
    fn new(tolerances: &[(&str, f64)], over: Option<f64>) -> Self {
        Self {
            tolerances: tolerances.iter().map(|(k, v)| (k.to_string(), over.unwrap_or(*v))).collect(),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, id: String, lhs: f64, rhs: f64, deviation: f64, tolerance: &str) {
        let tol = self.tolerances[tolerance];
        self.cases.push(Case {
            id,
            lhs,
            rhs,
            deviation,
            tolerance: tolerance.to_string(),
            pass: deviation <= tol,
        });
    }

    fn finish(self, suite: Suite, seed: u64, start: Instant) -> VerificationReport {
        let pass = self.cases.iter().all(|c| c.pass);
        VerificationReport {
            suite,
            seed,
            generator: GENERATOR.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances: self.tolerances,
            cases: self.cases,
            pass,
            wall_time: start.elapsed().as_secs_f64(),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = seeded(opts.seed);
    let samples = opts.samples.unwrap_or(suite.default_samples());
    let b = match suite {
        Suite::Identities => identities(opts, samples, &mut rng)?,
        Suite::Prop24 => prop24(opts, samples, &mut rng)?,
        Suite::Prop27 => prop27(opts, samples, &mut rng)?,
        Suite::Prop28 => prop28(opts, samples, &mut rng)?,
        Suite::Lemma26 => lemma26(opts, samples, &mut rng)?,
        Suite::Lemma212 => lemma212(opts, samples, &mut rng)?,
        Suite::Lemma213 => lemma213(opts, samples, &mut rng)?,
        Suite::BochnerTracefree => bochner_tracefree(opts, samples, &mut rng)?,
        Suite::Theorem41 => theorem41(opts, samples, &mut rng)?,
        Suite::Theorem44 => theorem44(opts, samples, &mut rng)?,
    };
    Ok(b.finish(suite, opts.seed, start))
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    Suite::ALL.into_iter().map(|s| run_suite(s, opts)).collect()
}

fn kahler_dims(opts: &VerifyOptions, default: &[usize]) -> Vec<usize> {
    match opts.n {
        Some(n) => vec![n],
        None => default.to_vec(),
    }
}

fn quaternion_dim(opts: &VerifyOptions) -> usize {
    opts.m.unwrap_or(2)
}

fn random_tensor(d: usize, rank: usize, rng: &mut Rng) -> ComplexTensor {
    ComplexTensor::from_fn(d, rank, |_| crate::rng::complex_normal(rng))
}

fn identities(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("duality", 1e-10), ("support", 1e-9)], opts.tol);
    let duality = |b: &mut Builder, id: String, rm: &AlgebraicCurvatureTensor| {
        let lhs = rm.norm_sq();
        let rhs = 4.0 * rm.operator().norm_sq();
        b.push(id, lhs, rhs, relative_deviation(lhs, rhs, 1e-300), "duality");
    };
    for d in [4, 6, 8] {
        let space = EuclideanSpace::real(d)?;
        for i in 0..samples {
            let rm = random_curvature(&space, rng);
            duality(&mut b, format!("duality/d{d}/{i}"), &rm);
        }
    }
    for n in [2, 3] {
        let space = EuclideanSpace::kahler(n)?;
        duality(&mut b, format!("duality/chsc/n{n}"), &model(ModelKind::Chsc(1.0), &space)?);
        duality(&mut b, format!("duality/sphere/d{}", 2 * n), &model(ModelKind::ConstantSectional(1.0), &space)?);
    }
    let m = quaternion_dim(opts);
    let quat = EuclideanSpace::quaternionic(m)?;
    let hpm = model(ModelKind::Hpm, &quat)?;
    duality(&mut b, format!("duality/hpm/m{m}"), &hpm);
    let g = HolonomySubalgebra::build(&quat, AlgebraKind::SpSp1)?;
    let leak = hpm.operator().leakage(&g)?;
    b.push(format!("support/hpm/m{m}"), leak, 0.0, leak, "support");
    Ok(b)
}

fn prop24(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let m = quaternion_dim(opts);
    let mut inputs = Vec::new();
    for n in kahler_dims(opts, &[2, 3]) {
        let space = EuclideanSpace::kahler(n)?;
        inputs.push((format!("chsc-n{n}"), model(ModelKind::Chsc(1.0), &space)?, AlgebraKind::U));
    }
    let quat = EuclideanSpace::quaternionic(m)?;
    inputs.push((format!("hpm-m{m}"), model(ModelKind::Hpm, &quat)?, AlgebraKind::SpSp1));
    prop24_cases(&inputs, 1..=3, opts, samples, rng)
}

fn prop24_cases(
    inputs: &[(String, AlgebraicCurvatureTensor, AlgebraKind)],
    ranks: std::ops::RangeInclusive<usize>,
    opts: &VerifyOptions,
    samples: usize,
    rng: &mut Rng,
) -> Result<Builder> {
    let mut b = Builder::new(&[("prop24", 1e-8)], opts.tol);
    for (name, rm, kind) in inputs {
        let g = HolonomySubalgebra::build(rm.space(), *kind)?;
        for rank in ranks.clone() {
            for i in 0..samples {
                let t = random_tensor(rm.dim(), rank, rng);
                let r = verify_prop24(rm, &g, &t)?;
                b.push(format!("{name}/rank{rank}/{i}"), r.lhs, r.rhs, r.deviation, "prop24");
            }
        }
    }
    Ok(b)
}

/// Curvature-term equality on one curvature tensor, random tensors of rank
/// `1..=max_rank`.
pub fn prop24_for(
    rm: &AlgebraicCurvatureTensor,
    kind: AlgebraKind,
    max_rank: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = seeded(opts.seed);
    let samples = opts.samples.unwrap_or(Suite::Prop24.default_samples());
    let inputs = [(format!("input-{kind}"), rm.clone(), kind)];
    Ok(prop24_cases(&inputs, 1..=max_rank, opts, samples, &mut rng)?.finish(Suite::Prop24, opts.seed, start))
}

/// `(p,q,k)` with `p+q ≤ n` and `p+q−2k > 0`.
fn strata(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=n - p {
            for k in 0..=p.min(q) {
                if p + q > 2 * k {
                    out.push((p, q, k));
                }
            }
        }
    }
    out
}

fn sweep(opts: &VerifyOptions) -> Vec<(usize, usize, usize, usize)> {
    let dims: Vec<usize> = match opts.n {
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    dims.into_iter()
        .flat_map(|n| strata(n).into_iter().map(move |(p, q, k)| (n, p, q, k)))
        .collect()
}

fn prop27(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    prop27_cases(&sweep(opts), opts, samples, rng)
}

fn prop27_cases(configs: &[(usize, usize, usize, usize)], opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("coefficient", 1e-8)], opts.tol);
    let record = |b: &mut Builder, id: String, phi: &PQForm| -> Result<()> {
        let r = sharp_norm_coefficient_check(phi)?;
        b.push(id, r.lhs, r.rhs, r.deviation, "coefficient");
        Ok(())
    };
    for &(n, p, q, k) in configs {
        let space = EuclideanSpace::kahler(n)?;
        if k > p.min(q) || p + q > n {
            return Err(Error::InvalidParameter(format!("(p,q,k) = ({p},{q},{k}) invalid for n = {n}")));
        }
        if p + q == 2 * k {
            return Err(Error::VacuousStratum);
        }
        let left = build_pq_basis(&space, p - k, 0)?;
        let right = build_pq_basis(&space, 0, q - k)?;
        for (i, psi1) in left.iter().enumerate() {
            for (j, psi2) in right.iter().enumerate() {
                let phi = construct_lefschetz(psi1, psi2, k)?;
                if phi.norm_sq() > 1e-12 {
                    record(&mut b, format!("n{n}/({p},{q},{k})/basis{i}.{j}"), &phi)?;
                }
            }
        }
        for i in 0..samples {
            let phi = random_lefschetz(&space, p, q, k, rng)?;
            record(&mut b, format!("n{n}/({p},{q},{k})/random{i}"), &phi)?;
        }
    }
    Ok(b)
}

fn prop28(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    prop28_cases(&sweep(opts), opts, samples, rng)
}

fn prop28_cases(configs: &[(usize, usize, usize, usize)], opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("ratio", 1e-9)], opts.tol);
    for &(n, p, q, k) in configs {
        let space = EuclideanSpace::kahler(n)?;
        let phi = random_vpqk(&space, p, q, k, rng)?;
        let r = action_bound_check(&phi, samples, rng)?;
        let ratio = r.max_ratio.unwrap_or(0.0);
        b.push(format!("n{n}/({p},{q},{k})"), ratio, 1.0, (ratio - 1.0).max(0.0), "ratio");
    }
    Ok(b)
}

/// Sharp-norm coefficient on one stratum `(n,p,q,k)`.
pub fn prop27_for(n: usize, p: usize, q: usize, k: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = seeded(opts.seed);
    let samples = opts.samples.unwrap_or(Suite::Prop27.default_samples());
    Ok(prop27_cases(&[(n, p, q, k)], opts, samples, &mut rng)?.finish(Suite::Prop27, opts.seed, start))
}

/// Action bound on one stratum `(n,p,q,k)`.
pub fn prop28_for(n: usize, p: usize, q: usize, k: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = seeded(opts.seed);
    let samples = opts.samples.unwrap_or(Suite::Prop28.default_samples());
    Ok(prop28_cases(&[(n, p, q, k)], opts, samples, &mut rng)?.finish(Suite::Prop28, opts.seed, start))
}

fn unit_one_zero_forms(space: &EuclideanSpace, count: usize, rng: &mut Rng) -> Result<Vec<ComplexTensor>> {
    (0..count)
        .map(|_| {
            let t = random_pq_form(space, 1, 0, rng)?.tensor().clone();
            let norm = t.norm();
            Ok(t.scale_real(1.0 / norm))
        })
        .collect()
}

fn lemma26(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("lower_bound", 1e-10)], opts.tol);
    for n in kahler_dims(opts, &[2, 3]) {
        let space = EuclideanSpace::kahler(n)?;
        let g = HolonomySubalgebra::build(&space, AlgebraKind::U)?;
        let mut spectra = vec![("chsc".to_string(), restricted_spectrum(model(ModelKind::Chsc(1.0), &space)?.operator(), &g)?.eigenvalues)];
        for i in 0..3 {
            let rm = random_kahler(&space, rng)?;
            spectra.push((format!("random{i}"), restricted_spectrum(rm.operator(), &g)?.eigenvalues));
        }
        let mut shifted: Vec<f64> = (0..g.dim()).map(|_| uniform(rng, 0.0, 1.0)).collect();
        shifted.sort_by(f64::total_cmp);
        spectra.push(("nonneg".to_string(), shifted));
        let forms = unit_one_zero_forms(&space, samples, rng)?;
        let c = n as f64;
        for (name, mu) in &spectra {
            for ell in 1..=n {
                // κ = 0 when the premise already holds, otherwise the largest κ ≤ 0 that admits it
                let kappa = (lemma26_premise(mu, c, ell) / (ell as f64 + 1.0)).min(0.0);
                let input = Lemma26Input { algebra: &g, spectrum: mu, c, ell, kappa };
                let r = verify_lemma26(&input, &forms, rng)?;
                let margin = r.min_margin.unwrap_or(f64::NEG_INFINITY);
                let mut deviation = (-margin).max(0.0);
                if r.admitted != samples || !r.conclusion2_holds {
                    deviation = f64::INFINITY;
                }
                b.push(format!("n{n}/{name}/ell{ell}"), margin, 0.0, deviation, "lower_bound");
            }
        }
    }
    Ok(b)
}

fn lemma212(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("identity", 1e-8), ("equality_case", 1e-10)], opts.tol);
    for n in kahler_dims(opts, &[2, 3]) {
        let space = EuclideanSpace::kahler(n)?;
        for i in 0..samples {
            let r = kahler_sharp_identity(&random_kahler(&space, rng)?)?;
            b.push(format!("n{n}/random{i}"), r.sharp_norm_sq, r.rhs, r.deviation, "identity");
        }
        for c in [1.0, 4.0, -2.0] {
            let r = kahler_sharp_identity(&model(ModelKind::Chsc(c), &space)?)?;
            let dev = r.sharp_norm_sq.abs().max(r.rhs.abs());
            b.push(format!("n{n}/chsc({c})"), r.sharp_norm_sq, r.rhs, dev, "equality_case");
        }
    }
    Ok(b)
}

fn lemma213(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("identity", 1e-8)], opts.tol);
    let m = quaternion_dim(opts);
    let space = EuclideanSpace::quaternionic(m)?;
    let mut observed = Vec::with_capacity(samples);
    for i in 0..samples {
        let hp = normal(rng);
        let r = quaternion_sharp_identity(&random_quaternion_kahler(&space, rng, hp)?)?;
        b.push(format!("m{m}/printed/{i}"), r.sharp_norm_sq, r.rhs, r.deviation, "identity");
        let casimir = r.casimir_coefficient * r.r0_norm_sq;
        observed.push((r.sharp_norm_sq, casimir));
    }
    for (i, (lhs, rhs)) in observed.into_iter().enumerate() {
        b.push(format!("m{m}/casimir/{i}"), lhs, rhs, relative_deviation(lhs, rhs, 1e-9), "identity");
    }
    Ok(b)
}

fn bochner_tracefree(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("trace", 1e-8), ("reassembly", 1e-9)], opts.tol);
    for n in kahler_dims(opts, &[2, 3]) {
        let space = EuclideanSpace::kahler(n)?;
        for i in 0..samples {
            let rm = random_kahler(&space, rng)?;
            let dec = kahler_decompose(&rm)?;
            let (ric, jtr) = bochner_traces(&dec.bochner)?;
            b.push(format!("n{n}/{i}/ricci-trace"), ric, 0.0, ric, "trace");
            b.push(format!("n{n}/{i}/j-trace"), jtr, 0.0, jtr, "trace");
            let err = dec.reassembly_error(&rm)?;
            b.push(format!("n{n}/{i}/reassembly"), err, 0.0, err, "reassembly");
        }
    }
    Ok(b)
}

/// Largest `|L·T|²/|L|²` over `probes` random unit `L ∈ 𝔤`.
fn max_action(g: &HolonomySubalgebra, t: &ComplexTensor, probes: usize, rng: &mut Rng) -> Result<f64> {
    let mut worst = 0.0_f64;
    for _ in 0..probes {
        let l = g.random_unit_element(rng);
        worst = worst.max(act_on_tensor(&l, t)?.norm_sq() / l.norm().powi(2));
    }
    Ok(worst)
}

const ACTION_PROBES: usize = 100;

fn theorem41(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("inequality", 1e-9)], opts.tol);
    for n in kahler_dims(opts, &[2, 3, 4]) {
        let space = EuclideanSpace::kahler(n)?;
        let g = HolonomySubalgebra::build(&space, AlgebraKind::U)?;
        for i in 0..samples {
            let scal = if i % 2 == 0 { 0.0 } else { normal(rng) };
            let rm = random_einstein_kahler(&space, rng, scal)?;
            let lhs = max_action(&g, rm.tensor(), ACTION_PROBES, rng)?;
            let rhs = 2.0 / (n as f64 + 1.0) * g.sharp(rm.tensor())?.norm_sq();
            b.push(format!("n{n}/{i}"), lhs, rhs, (lhs / rhs - 1.0).max(0.0), "inequality");
        }
    }
    Ok(b)
}

fn theorem44(opts: &VerifyOptions, samples: usize, rng: &mut Rng) -> Result<Builder> {
    let mut b = Builder::new(&[("inequality", 1e-9)], opts.tol);
    let m = quaternion_dim(opts);
    let space = EuclideanSpace::quaternionic(m)?;
    let g = HolonomySubalgebra::build(&space, AlgebraKind::SpSp1)?;
    for i in 0..samples {
        let rm = random_quaternion_kahler(&space, rng, 0.0)?;
        let lhs = max_action(&g, rm.tensor(), ACTION_PROBES, rng)?;
        let rhs = 6.0 / (3.0 * m as f64 + 4.0) * g.sharp(rm.tensor())?.norm_sq();
        b.push(format!("m{m}/{i}"), lhs, rhs, (lhs / rhs - 1.0).max(0.0), "inequality");
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> VerifyOptions {
        VerifyOptions { seed, samples: Some(3), ..Default::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), s.name());
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Lemma212, &small(9)).unwrap();
        let b = run_suite(Suite::Lemma212, &small(9)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let c = run_suite(Suite::Lemma212, &small(10)).unwrap();
        assert_ne!(a.cases[0].lhs, c.cases[0].lhs);
    }

    #[test]
    fn pass_matches_named_tolerance() {
        let r = run_suite(Suite::BochnerTracefree, &small(1)).unwrap();
        for c in &r.cases {
            assert_eq!(c.pass, c.deviation <= r.tolerances[&c.tolerance]);
        }
        assert!(r.pass);
        let strict = VerifyOptions { tol: Some(0.0), ..small(1) };
        let r = run_suite(Suite::Lemma212, &strict).unwrap();
        assert!(r.tolerances.values().all(|&t| t == 0.0));
    }

    #[test]
    fn wall_time_stays_out_of_json() {
        let r = run_suite(Suite::Identities, &VerifyOptions { samples: Some(1), ..Default::default() }).unwrap();
        assert!(!serde_json::to_string(&r).unwrap().contains("wall_time"));
        assert!(r.pass);
    }
}
