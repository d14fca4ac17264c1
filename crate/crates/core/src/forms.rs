//! `(p,q)`-forms on `ℂⁿ`, powers of the Kähler form and the `V^{p,q}_k`
//! construction.
//!
//! Frame: `dz^j = e^{2j−1} + i e^{2j}`, `dz̄^j = e^{2j−1} − i e^{2j}` in the
//! block convention, so `α^{1,0}(X) = ½(α(X) − iα(JX))`. Wedge products use
//! the determinant convention, `(α∧β) = ((a+b)!/(a!b!))·Alt(α⊗β)`, and form
//! norms divide the full-tensor norm by `k!`, making `e^{i₁}∧…∧e^{i_k}` unit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holonomy::{AlgebraKind, HolonomySubalgebra};
use crate::rng::{complex_normal, Rng};
use crate::tensor::json::{convention_of, TensorFile};
use crate::tensor::{act_on_tensor, ComplexTensor, EuclideanSpace};
use crate::tolerance::relative_deviation;

pub const KIND_FORM: &str = "form";

/// Tolerance for antisymmetry and type purity.
pub const PURITY_TOL: f64 = 1e-9;

/// Floor under which `|φ̊|²` counts as zero.
const VACUOUS_FLOOR: f64 = 1e-20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn inversion_sign(seq: &[usize]) -> f64 {
    let mut inv = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Wedge product of antisymmetric tensors as a signed sum over shuffles.
pub fn wedge(a: &ComplexTensor, b: &ComplexTensor) -> Result<ComplexTensor> {
    if a.rank() == 0 {
        return Ok(b.scale(a.data()[0]));
    }
    if b.rank() == 0 {
        return Ok(a.scale(b.data()[0]));
    }
    let (ra, rb) = (a.rank(), b.rank());
    let k = ra + rb;
    let prod = a.outer(b)?;
    let mut out = ComplexTensor::zeros(a.dim(), k);
    for s in subsets(k, ra) {
        let rest: Vec<usize> = (0..k).filter(|i| !s.contains(i)).collect();
        let mut perm = vec![0; k];
        for (t, &pos) in s.iter().enumerate() {
            perm[pos] = t;
        }
        for (t, &pos) in rest.iter().enumerate() {
            perm[pos] = ra + t;
        }
        let order: Vec<usize> = s.iter().chain(&rest).copied().collect();
        out.axpy(Complex64::new(inversion_sign(&order), 0.0), &prod.permute_slots(&perm))?;
    }
    Ok(out)
}

/// `dz^j` (`conjugate = false`) or `dz̄^j`, `j` zero-based.
pub fn dz(n: usize, j: usize, conjugate: bool) -> ComplexTensor {
    let mut c = vec![ZERO; 2 * n];
    c[2 * j] = Complex64::new(1.0, 0.0);
    c[2 * j + 1] = Complex64::new(0.0, if conjugate { -1.0 } else { 1.0 });
    ComplexTensor::covector(&c)
}

fn require_kahler(space: &EuclideanSpace) -> Result<DMatrix<f64>> {
    Ok(space.complex_structure()?.clone())
}

/// `½(Id ∓ iJ)` acting on the argument; `holomorphic` picks the `(1,0)` part.
fn type_map(j: &DMatrix<f64>, holomorphic: bool) -> DMatrix<Complex64> {
    let s = if holomorphic { -0.5 } else { 0.5 };
    DMatrix::from_fn(j.nrows(), j.ncols(), |r, c| {
        Complex64::new(if r == c { 0.5 } else { 0.0 }, s * j[(r, c)])
    })
}

/// Projection of a rank-`(p+q)` tensor onto type `(p,q)`.
pub fn type_projection(space: &EuclideanSpace, t: &ComplexTensor, p: usize) -> Result<ComplexTensor> {
    let j = require_kahler(space)?;
    let k = t.rank();
    if p > k {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds rank {k}")));
    }
    let a10 = type_map(&j, true);
    let a01 = type_map(&j, false);
    // states[h]: partial projection with h holomorphic slots so far
    let mut states: Vec<Option<ComplexTensor>> = vec![None; p + 1];
    states[0] = Some(t.clone());
    for slot in 0..k {
        let mut next: Vec<Option<ComplexTensor>> = vec![None; p + 1];
        for h in 0..=p {
            let Some(cur) = &states[h] else { continue };
            if h < p {
                let v = cur.pull_back_slot(slot, &a10);
                accumulate(&mut next[h + 1], v);
            }
            if slot - h < k - p {
                let v = cur.pull_back_slot(slot, &a01);
                accumulate(&mut next[h], v);
            }
        }
        states = next;
    }
    Ok(states[p].take().unwrap_or_else(|| ComplexTensor::zeros(t.dim(), k)))
}

fn accumulate(slot: &mut Option<ComplexTensor>, v: ComplexTensor) {
    match slot {
        Some(acc) => *acc = &*acc + &v,
        None => *slot = Some(v),
    }
}

/// `max |T + T∘(s s+1)|` over adjacent transpositions.
pub fn antisymmetry_residual(t: &ComplexTensor) -> f64 {
    let k = t.rank();
    (0..k.saturating_sub(1))
        .map(|s| {
            let mut perm: Vec<usize> = (0..k).collect();
            perm.swap(s, s + 1);
            (t + &t.permute_slots(&perm)).max_abs()
        })
        .fold(0.0, f64::max)
}

/// Hermitian inner product in the form convention (full sum divided by `k!`).
pub fn form_inner(a: &ComplexTensor, b: &ComplexTensor) -> Result<Complex64> {
    Ok(a.hermitian_inner(b)? / factorial(a.rank()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PQForm {
    space: EuclideanSpace,
    p: usize,
    q: usize,
    k: Option<usize>,
    tensor: ComplexTensor,
}

impl PQForm {
    /// Validates antisymmetry and type purity.
    pub fn new(space: &EuclideanSpace, p: usize, q: usize, k: Option<usize>, tensor: ComplexTensor) -> Result<Self> {
        require_kahler(space)?;
        if tensor.rank() != p + q {
            return Err(Error::RankMismatch {
                expected: p + q,
                found: tensor.rank(),
            });
        }
        if tensor.rank() > 0 && tensor.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: tensor.dim(),
            });
        }
        if let Some(k) = k {
            if k > p.min(q) {
                return Err(Error::InvalidParameter(format!("k = {k} exceeds min(p, q)")));
            }
        }
        let scale = tensor.max_abs().max(1.0);
        let anti = antisymmetry_residual(&tensor);
        if anti > PURITY_TOL * scale {
            return Err(Error::SymmetryViolation {
                what: "antisymmetry",
                residual: anti,
            });
        }
        let form = Self {
            space: space.clone(),
            p,
            q,
            k,
            tensor,
        };
        let purity = form.purity_residual()?;
        if purity > PURITY_TOL * scale {
            return Err(Error::SymmetryViolation {
                what: "type purity",
                residual: purity,
            });
        }
        Ok(form)
    }

    fn unchecked(space: &EuclideanSpace, p: usize, q: usize, k: Option<usize>, tensor: ComplexTensor) -> Self {
        Self {
            space: space.clone(),
            p,
            q,
            k,
            tensor,
        }
    }

    pub fn scalar(space: &EuclideanSpace, c: Complex64) -> Result<Self> {
        require_kahler(space)?;
        Ok(Self::unchecked(space, 0, 0, None, ComplexTensor::scalar(c)))
    }

    pub fn space(&self) -> &EuclideanSpace {
        &self.space
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn tensor(&self) -> &ComplexTensor {
        &self.tensor
    }

    pub fn rank(&self) -> usize {
        self.p + self.q
    }

    pub fn with_k(mut self, k: Option<usize>) -> Self {
        self.k = k;
        self
    }

    /// `|φ|²` with `|e^{i₁}∧…∧e^{i_k}| = 1`.
    pub fn norm_sq(&self) -> f64 {
        self.tensor.form_norm_sq()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        form_inner(&self.tensor, &other.tensor)
    }

    pub fn purity_residual(&self) -> Result<f64> {
        let proj = type_projection(&self.space, &self.tensor, self.p)?;
        proj.max_abs_diff(&self.tensor)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        Ok(Self::unchecked(
            &self.space,
            self.p + other.p,
            self.q + other.q,
            None,
            wedge(&self.tensor, &other.tensor)?,
        ))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::unchecked(&self.space, self.p, self.q, self.k, self.tensor.scale(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::InvalidParameter("adding forms of different type".into()));
        }
        let k = if self.k == other.k { self.k } else { None };
        Ok(Self::unchecked(&self.space, self.p, self.q, k, &self.tensor + &other.tensor))
    }

    pub fn to_file(&self) -> TensorFile {
        let mut f = TensorFile::from_tensor(&self.tensor, convention_of(&self.space));
        f.kind = Some(KIND_FORM.into());
        f.p = Some(self.p);
        f.q = Some(self.q);
        f.k = self.k;
        f
    }

    pub fn from_file(file: &TensorFile) -> Result<Self> {
        let (Some(p), Some(q)) = (file.p, file.q) else {
            return Err(Error::Format("form files need \"p\" and \"q\"".into()));
        };
        let space = file.space()?;
        Self::new(&space, p, q, file.k, file.to_tensor()?)
    }
}

/// The Kähler form `ω(X,Y) = g(JX,Y)` as a `(1,1)`-form.
pub fn kahler_form(space: &EuclideanSpace) -> Result<PQForm> {
    let omega = ComplexTensor::from_matrix(&space.kahler_form()?);
    Ok(PQForm::unchecked(space, 1, 1, Some(1), omega))
}

/// `Ωᵏ` (with `Ω⁰ = 1`).
pub fn omega_power(space: &EuclideanSpace, k: usize) -> Result<PQForm> {
    let omega = kahler_form(space)?;
    let mut out = PQForm::scalar(space, Complex64::new(1.0, 0.0))?;
    for _ in 0..k {
        out = out.wedge(&omega)?;
    }
    Ok(out.with_k(Some(k)))
}

fn check_pq(space: &EuclideanSpace, p: usize, q: usize) -> Result<usize> {
    let n = space.complex_dim();
    require_kahler(space)?;
    if p > n || q > n {
        return Err(Error::InvalidParameter(format!(
            "(p, q) = ({p}, {q}) out of range for n = {n}"
        )));
    }
    Ok(n)
}

/// `dz^I ∧ dz̄^J` over `|I| = p`, `|J| = q`, in lexicographic order.
pub fn build_pq_basis(space: &EuclideanSpace, p: usize, q: usize) -> Result<Vec<PQForm>> {
    let n = check_pq(space, p, q)?;
    let one = ComplexTensor::scalar(Complex64::new(1.0, 0.0));
    let mut out = Vec::with_capacity(binomial(n, p) * binomial(n, q));
    for i in subsets(n, p) {
        let mut hol = one.clone();
        for &a in &i {
            hol = wedge(&hol, &dz(n, a, false))?;
        }
        for j in subsets(n, q) {
            let mut t = hol.clone();
            for &b in &j {
                t = wedge(&t, &dz(n, b, true))?;
            }
            out.push(PQForm::unchecked(space, p, q, None, t));
        }
    }
    Ok(out)
}

/// Gaussian combination of the `dz^I ∧ dz̄^J` basis.
pub fn random_pq_form(space: &EuclideanSpace, p: usize, q: usize, rng: &mut Rng) -> Result<PQForm> {
    let basis = build_pq_basis(space, p, q)?;
    let mut t = ComplexTensor::zeros(space.dim(), p + q);
    for b in &basis {
        t.axpy(complex_normal(rng), b.tensor())?;
    }
    Ok(PQForm::unchecked(space, p, q, None, t))
}

fn check_factors(psi1: &PQForm, psi2: &PQForm) -> Result<()> {
    if psi1.q != 0 || psi2.p != 0 {
        return Err(Error::InvalidParameter(format!(
            "expected a (·,0) and a (0,·) factor, got ({},{}) and ({},{})",
            psi1.p, psi1.q, psi2.p, psi2.q
        )));
    }
    Ok(())
}

/// `ψ₁ ∧ Ωᵏ ∧ ψ₂`, declared in `V^{p,q}_k`.
pub fn construct_vpqk(psi1: &PQForm, psi2: &PQForm, k: usize) -> Result<PQForm> {
    check_factors(psi1, psi2)?;
    let omega_k = omega_power(psi1.space(), k)?;
    let out = psi1.wedge(&omega_k)?.wedge(psi2)?;
    Ok(out.with_k(Some(k)))
}

/// `Ωᵏ ∧ prim(ψ₁ ∧ ψ₂)`: the Lefschetz stratum of type `(p,q)` at level `k`.
pub fn construct_lefschetz(psi1: &PQForm, psi2: &PQForm, k: usize) -> Result<PQForm> {
    check_factors(psi1, psi2)?;
    let prim = primitive_part(&psi1.wedge(psi2)?)?;
    let out = omega_power(psi1.space(), k)?.wedge(&prim)?;
    Ok(out.with_k(Some(k)))
}

/// Orthogonal projection of a `(a,b)`-form onto the primitive forms, i.e. away
/// from `Ω ∧ Λ^{a−1,b−1}`.
pub fn primitive_part(phi: &PQForm) -> Result<PQForm> {
    if phi.p == 0 || phi.q == 0 {
        return Ok(phi.clone());
    }
    let omega = kahler_form(phi.space())?;
    let lower = build_pq_basis(phi.space(), phi.p - 1, phi.q - 1)?;
    let mut ortho: Vec<ComplexTensor> = Vec::new();
    for b in lower {
        let mut v = omega.wedge(&b)?.tensor;
        for _ in 0..2 {
            for u in &ortho {
                let c = form_inner(&v, u)?;
                v.axpy(-c, u)?;
            }
        }
        let norm = v.form_norm_sq().sqrt();
        if norm > 1e-9 {
            ortho.push(v.scale_real(1.0 / norm));
        }
    }
    let mut t = phi.tensor.clone();
    for u in &ortho {
        let c = form_inner(&t, u)?;
        t.axpy(-c, u)?;
    }
    Ok(PQForm::unchecked(phi.space(), phi.p, phi.q, None, t))
}

/// Gaussian `ψ₁ ∈ Λ^{p−k,0}`, `ψ₂ ∈ Λ^{0,q−k}`.
fn random_factors(space: &EuclideanSpace, p: usize, q: usize, k: usize, rng: &mut Rng) -> Result<(PQForm, PQForm)> {
    if k > p.min(q) {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds min(p, q)")));
    }
    Ok((random_pq_form(space, p - k, 0, rng)?, random_pq_form(space, 0, q - k, rng)?))
}

pub fn random_vpqk(space: &EuclideanSpace, p: usize, q: usize, k: usize, rng: &mut Rng) -> Result<PQForm> {
    let (a, b) = random_factors(space, p, q, k, rng)?;
    construct_vpqk(&a, &b, k)
}

pub fn random_lefschetz(space: &EuclideanSpace, p: usize, q: usize, k: usize, rng: &mut Rng) -> Result<PQForm> {
    let (a, b) = random_factors(space, p, q, k, rng)?;
    construct_lefschetz(&a, &b, k)
}

/// Reading of the `Ωᵖ` coefficient in `φ̊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CircNormalization {
    /// `g(φ,Ωᵖ)/|Ωᵖ|²`, the orthogonal projection.
    #[default]
    Squared,
    /// `g(φ,Ωᵖ)/|Ωᵖ|` as stated.
    Printed,
}

/// `φ̊`: `φ` for `p ≠ q`, otherwise `φ` minus its `Ωᵖ` component.
pub fn circ(phi: &PQForm, normalization: CircNormalization) -> Result<PQForm> {
    if phi.p != phi.q {
        return Ok(phi.clone());
    }
    let op = omega_power(phi.space(), phi.p)?;
    let norm_sq = op.norm_sq();
    let denom = match normalization {
        CircNormalization::Squared => norm_sq,
        CircNormalization::Printed => norm_sq.sqrt(),
    };
    let c = phi.inner(&op)? / denom;
    Ok(PQForm::unchecked(
        phi.space(),
        phi.p,
        phi.q,
        phi.k,
        &phi.tensor - &op.tensor.scale(c),
    ))
}

/// `2(p−k)(q−k) + (p+q−2k)((n+1) − (p+q−2k))`.
pub fn sharp_coefficient(n: usize, p: usize, q: usize, k: usize) -> f64 {
    let (n, p, q, k) = (n as f64, p as f64, q as f64, k as f64);
    let s = p + q - 2.0 * k;
    2.0 * (p - k) * (q - k) + s * ((n + 1.0) - s)
}

/// Relative tolerance for the sharp-norm coefficient check.
pub const COEFFICIENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct SharpCoefficientReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub coefficient: f64,
    /// `|φ^𝔲|²`.
    pub lhs: f64,
    /// `coefficient·|φ̊|²`.
    pub rhs: f64,
    pub deviation: f64,
    pub pass: bool,
}

fn declared_k(phi: &PQForm) -> Result<usize> {
    phi.k
        .ok_or_else(|| Error::InvalidParameter("form has no declared k".into()))
}

fn u_algebra(phi: &PQForm) -> Result<HolonomySubalgebra> {
    HolonomySubalgebra::build(phi.space(), AlgebraKind::U)
}

pub fn sharp_norm_coefficient_check(phi: &PQForm) -> Result<SharpCoefficientReport> {
    let k = declared_k(phi)?;
    let n = phi.space().complex_dim();
    let g = u_algebra(phi)?;
    let rank_norm = factorial(phi.rank());
    let lhs = g.sharp(phi.tensor())?.norm_sq() / rank_norm;
    let coefficient = sharp_coefficient(n, phi.p, phi.q, k);
    let rhs = coefficient * circ(phi, CircNormalization::Squared)?.norm_sq();
    let deviation = relative_deviation(lhs, rhs, 1e-12 * phi.norm_sq().max(1e-300));
    Ok(SharpCoefficientReport {
        n,
        p: phi.p,
        q: phi.q,
        k,
        coefficient,
        lhs,
        rhs,
        deviation,
        pass: deviation <= COEFFICIENT_TOL,
    })
}

/// Slack on the ratio bound.
pub const ACTION_BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct ActionBoundReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub samples: usize,
    /// `max |Lφ|²/((p+q−2k)|L|²|φ̊|²)`, absent when vacuous.
    pub max_ratio: Option<f64>,
    pub vacuous: bool,
    pub pass: bool,
}

pub fn action_bound_check(phi: &PQForm, samples: usize, rng: &mut Rng) -> Result<ActionBoundReport> {
    let k = declared_k(phi)?;
    let n = phi.space().complex_dim();
    let s = (phi.p + phi.q) as f64 - 2.0 * k as f64;
    let circ_norm = circ(phi, CircNormalization::Squared)?.norm_sq();
    let vacuous = s == 0.0 || circ_norm <= VACUOUS_FLOOR * phi.norm_sq().max(1.0);
    let mut report = ActionBoundReport {
        n,
        p: phi.p,
        q: phi.q,
        k,
        samples,
        max_ratio: None,
        vacuous,
        pass: true,
    };
    if vacuous {
        return Ok(report);
    }
    let g = u_algebra(phi)?;
    let mut max_ratio = 0.0_f64;
    for _ in 0..samples {
        let l = g.random_unit_element(rng);
        let lphi = act_on_tensor(&l, phi.tensor())?.form_norm_sq();
        max_ratio = max_ratio.max(lphi / (s * l.norm().powi(2) * circ_norm));
    }
    report.max_ratio = Some(max_ratio);
    report.pass = max_ratio <= 1.0 + ACTION_BOUND_TOL;
    Ok(report)
}

/// `(p,q) ↦ (n−p, n−q)` when `p+q > n`; returns the note when remapped.
pub fn serre_remap(n: usize, p: usize, q: usize) -> Result<(usize, usize, Option<String>)> {
    if p > n || q > n {
        return Err(Error::InvalidParameter(format!(
            "(p, q) = ({p}, {q}) out of range for n = {n}"
        )));
    }
    if p + q > n {
        let (rp, rq) = (n - p, n - q);
        Ok((rp, rq, Some(format!("(p,q) = ({p},{q}) remapped to ({rp},{rq}) by Serre duality"))))
    } else {
        Ok((p, q, None))
    }
}
