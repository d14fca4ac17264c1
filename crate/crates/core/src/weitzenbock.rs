//! Weitzenböck curvature term of a tensor and the holonomy form of it.
//!
//! `Ric(T)(X₁, …, X_k) = Σ_s Σ_j (R(X_s, e_j)T)(X₁, …, e_j, …, X_k)` with
//! `e_j` substituted in slot `s`, and `R(X,Y)` acting as the bivector
//! `𝔯(X∧Y)`. With this reading a 1-form on the unit sphere model satisfies
//! `Ric(T) = (d−1)T`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::curvature::{AlgebraicCurvatureTensor, CurvatureOperator};
use crate::error::{check_dim, Error, Result};
use crate::holonomy::HolonomySubalgebra;
use crate::linalg::{orthogonal_eigenbasis_rotation, sorted_symmetric_eigen};
use crate::rng::{orthogonal, Rng};
use crate::tensor::{act_at, act_on_tensor, Bivector, ComplexTensor};
use crate::tolerance::{relative_deviation, ABS_TOL};

/// Lichnerowicz constant of the Hodge Laplacian.
pub const HODGE_C: f64 = 1.0;
/// Lichnerowicz constant for curvature tensors.
pub const CURVATURE_TENSOR_C: f64 = 0.5;

/// Pass threshold for the Weitzenböck equality.
pub const PROP24_TOL: f64 = 1e-8;
/// Agreement required between the two curvature-term routes.
pub const ROUTE_TOL: f64 = 1e-9;

pub fn weitzenbock_ric(rm: &AlgebraicCurvatureTensor, t: &ComplexTensor) -> Result<ComplexTensor> {
    let k = t.rank();
    if k == 0 {
        return Ok(t.clone());
    }
    let d = rm.dim();
    check_dim(d, t.dim())?;
    let op = rm.operator();
    // M[a*d + j] = matrix of 𝔯(e_a∧e_j)
    let mats: Vec<DMatrix<f64>> = (0..d * d)
        .map(|aj| {
            let (a, j) = (aj / d, aj % d);
            if a == j {
                DMatrix::zeros(d, d)
            } else {
                op.apply(&Bivector::basis(d, a, j)).expect("same space").matrix()
            }
        })
        .collect();
    let mut out = ComplexTensor::zeros(d, k);
    let mut idx = vec![0usize; k];
    let mut sub = vec![0usize; k];
    for flat in 0..t.len() {
        t.unflatten_into(flat, &mut idx);
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..k {
            sub.copy_from_slice(&idx);
            for j in 0..d {
                if j == idx[s] {
                    continue;
                }
                sub[s] = j;
                acc += act_at(&mats[idx[s] * d + j], t, &sub);
            }
        }
        out.data_mut()[flat] = acc;
    }
    Ok(out)
}

/// `c·Ric(T)`, the zero-order part of `Δ_L = ∇*∇ + c·Ric`.
pub fn lichnerowicz_zero_order(rm: &AlgebraicCurvatureTensor, t: &ComplexTensor, c: f64) -> Result<ComplexTensor> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("Lichnerowicz constant must be positive, got {c}")));
    }
    Ok(weitzenbock_ric(rm, t)?.scale_real(c))
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureTerm {
    /// `g(𝔯(T^𝔤), T̄^𝔤)` by the eigen-expansion.
    pub value: f64,
    /// Same by the Gram contraction `Σ R_{αβ} g(Ξ_α T, Ξ_β T)`.
    pub gram_value: f64,
    /// `(μ_γ, |Θ_γ T|²)` over an eigenbasis `Θ_γ` of `𝔯|_𝔤`.
    pub per_eigenvalue: Vec<(f64, f64)>,
    /// `|T^𝔤|²`.
    pub sharp_norm_sq: f64,
    /// Leakage of `𝔯` off `𝔤`.
    pub leakage: f64,
}

impl CurvatureTerm {
    pub fn routes_agree(&self) -> bool {
        relative_deviation(self.value, self.gram_value, ABS_TOL) <= ROUTE_TOL
    }
}

/// Both routes from a Gram block `G` on `𝔤` and the slices `Ξ_α T`.
fn term_from_gram(gram: &DMatrix<f64>, slices: &[ComplexTensor], leakage: f64) -> Result<CurvatureTerm> {
    let n = slices.len();
    let mut pair = DMatrix::<f64>::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let v = slices[a].hermitian_inner(&slices[b])?.re;
            pair[(a, b)] = v;
            pair[(b, a)] = v;
        }
    }
    let gram_value = gram.component_mul(&pair).sum();
    let (mu, vecs) = sorted_symmetric_eigen(gram);
    // |Θ_γ T|² = vᵀ P v with P the slice Gram matrix
    let per_eigenvalue: Vec<(f64, f64)> = (0..n)
        .map(|c| {
            let v = vecs.column(c);
            (mu[c], (v.transpose() * &pair * v)[(0, 0)])
        })
        .collect();
    let value = per_eigenvalue.iter().map(|(m, w)| m * w).sum();
    Ok(CurvatureTerm {
        value,
        gram_value,
        per_eigenvalue,
        sharp_norm_sq: pair.trace(),
        leakage,
    })
}

pub fn curvature_term(op: &CurvatureOperator, g: &HolonomySubalgebra, t: &ComplexTensor) -> Result<CurvatureTerm> {
    check_dim(op.space().dim(), g.space().dim())?;
    let sharp = g.sharp(t)?;
    let gram = crate::curvature::gram_block(op, g)?;
    term_from_gram(&gram, sharp.slices(), op.leakage(g)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop24Report {
    /// `g(Ric(T), T̄)`.
    pub lhs: f64,
    /// `g(𝔯(T^𝔤), T̄^𝔤)`.
    pub rhs: f64,
    pub deviation: f64,
    pub leakage: f64,
    pub pass: bool,
}

pub fn verify_prop24(rm: &AlgebraicCurvatureTensor, g: &HolonomySubalgebra, t: &ComplexTensor) -> Result<Prop24Report> {
    let leakage = rm.operator().leakage(g)?;
    if leakage > ABS_TOL * rm.operator().matrix().abs().max().max(1.0) {
        return Err(Error::Leakage { leakage });
    }
    let ric = weitzenbock_ric(rm, t)?;
    let lhs_c = ric.hermitian_inner(t)?;
    let term = curvature_term(rm.operator(), g, t)?;
    let lhs = lhs_c.re;
    let scale = t.norm_sq() * rm.operator().matrix().abs().max().max(1.0);
    let deviation = relative_deviation(lhs, term.value, 1e-12 * scale.max(1e-300));
    Ok(Prop24Report {
        lhs,
        rhs: term.value,
        deviation,
        leakage,
        pass: deviation <= PROP24_TOL && lhs_c.im.abs() <= PROP24_TOL * scale.max(1.0),
    })
}

/// Number of random unit `L` used to test the hypothesis of a sample.
pub const ADMISSION_PROBES: usize = 50;
/// Relative slack on the lower bound of the first conclusion.
pub const LEMMA26_SLACK: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Lemma26Input<'a> {
    pub algebra: &'a HolonomySubalgebra,
    /// `μ₁ ≤ … ≤ μ_{dim𝔤}`.
    pub spectrum: &'a [f64],
    pub c: f64,
    pub ell: usize,
    pub kappa: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma26Report {
    /// `μ₁ + … + μ_ℓ + (C−ℓ)μ_{ℓ+1}`.
    pub premise_value: f64,
    /// `κ(ℓ+1)`.
    pub premise_threshold: f64,
    pub premise_holds: bool,
    pub strict_premise: bool,
    pub samples: usize,
    pub admitted: usize,
    pub rejected: usize,
    /// `min (term − κ(ℓ+1)/C·|T^𝔤|²)` over admitted samples.
    pub min_margin: Option<f64>,
    pub conclusion1_holds: bool,
    pub conclusion2_holds: bool,
    pub pass: bool,
}

fn validate_lemma26(input: &Lemma26Input<'_>) -> Result<()> {
    let dim = input.algebra.dim();
    let mu = input.spectrum;
    if mu.len() != dim {
        return Err(Error::MalformedSpectrum(format!("expected {dim} eigenvalues, got {}", mu.len())));
    }
    if mu.iter().any(|x| !x.is_finite()) || mu.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::MalformedSpectrum("eigenvalues must be finite and ascending".into()));
    }
    if !(input.c >= 1.0) || !input.c.is_finite() {
        return Err(Error::InvalidParameter(format!("C must be at least 1, got {}", input.c)));
    }
    let floor = input.c.floor() as usize;
    if input.ell < 1 || input.ell > floor {
        return Err(Error::InvalidParameter(format!("ell = {} outside [1, {floor}]", input.ell)));
    }
    if input.ell >= dim && input.c > input.ell as f64 {
        return Err(Error::InvalidParameter(format!(
            "mu_{} does not exist for dim g = {dim}",
            input.ell + 1
        )));
    }
    if !(input.kappa <= 0.0) {
        return Err(Error::InvalidParameter(format!("kappa must be nonpositive, got {}", input.kappa)));
    }
    Ok(())
}

pub fn lemma26_premise(spectrum: &[f64], c: f64, ell: usize) -> f64 {
    let head: f64 = spectrum[..ell].iter().sum();
    let next = spectrum.get(ell).copied().unwrap_or(0.0);
    head + (c - ell as f64) * next
}

/// Builds `𝔯` on `𝔤` with the given spectrum in a random orthonormal
/// eigenbasis and checks both conclusions on the admitted samples.
pub fn verify_lemma26(input: &Lemma26Input<'_>, samples: &[ComplexTensor], rng: &mut Rng) -> Result<Lemma26Report> {
    validate_lemma26(input)?;
    let g = input.algebra;
    let dim = g.dim();
    let q = orthogonal(rng, dim);
    let gram = orthogonal_eigenbasis_rotation(&q, input.spectrum);

    let premise_value = lemma26_premise(input.spectrum, input.c, input.ell);
    let premise_threshold = input.kappa * (input.ell as f64 + 1.0);
    let premise_holds = premise_value >= premise_threshold;
    let strict_premise = premise_value > 0.0;

    let mut admitted = 0;
    let mut min_margin: Option<f64> = None;
    let mut c1 = true;
    let mut c2 = true;
    for t in samples {
        let sharp = g.sharp(t)?;
        let sharp_sq = sharp.norm_sq();
        let mut worst = 0.0_f64;
        for _ in 0..ADMISSION_PROBES {
            let l = g.random_unit_element(rng);
            worst = worst.max(act_on_tensor(&l, t)?.norm_sq());
        }
        if worst > sharp_sq / input.c * (1.0 + 1e-9) + 1e-300 {
            continue;
        }
        admitted += 1;
        let term = term_from_gram(&gram, sharp.slices(), 0.0)?;
        let scale = sharp_sq * input.spectrum.iter().fold(1.0_f64, |a, x| a.max(x.abs()));
        let bound = premise_threshold / input.c * sharp_sq;
        let margin = term.value - bound;
        min_margin = Some(min_margin.map_or(margin, |m: f64| m.min(margin)));
        if premise_holds && margin < -LEMMA26_SLACK * scale.max(1e-300) {
            c1 = false;
        }
        if strict_premise && sharp_sq > 1e-20 && term.value <= 0.0 {
            c2 = false;
        }
    }
    Ok(Lemma26Report {
        premise_value,
        premise_threshold,
        premise_holds,
        strict_premise,
        samples: samples.len(),
        admitted,
        rejected: samples.len() - admitted,
        min_margin,
        conclusion1_holds: c1,
        conclusion2_holds: c2,
        pass: c1 && c2,
    })
}
