//! Closed-form constants and eigenvalue criteria of the vanishing theorems.
//!
//! Constants are exact rationals. Spectra are ascending `f64` lists, usually
//! the output of [`crate::curvature::restricted_spectrum`]. Global hypotheses
//! (completeness, `L^Q` finiteness, weighted Poincaré, nonparabolicity) are
//! never checked here; they are echoed into the verdict notes.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::serre_remap;

pub type Rational = Rational64;

/// Relative slack, against `max |μ_i|`, used when comparing a condition
/// value with its threshold.
pub const CONDITION_TOL: f64 = 1e-12;
/// Relative slack when checking that a spectrum is ascending.
pub const SORT_TOL: f64 = 1e-12;

/// Parses `"3"`, `"-7/9"` or a finite decimal such as `"0.6"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
        || frac.len() > 15
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| bad())? };
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A rational constant together with its floor and fractional weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constant {
    pub value: Rational,
    pub floor: i64,
    pub frac: Rational,
}

impl Constant {
    fn new(value: Rational) -> Self {
        let floor = value.floor().to_integer();
        Self { value, floor, frac: value - Rational::from_integer(floor) }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(self.value)
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// `C^{p,q}_k = n+1-(p+q) + 2(pq-k²)/(p+q-2k)`.
pub fn const_cpqk(n: usize, p: usize, q: usize, k: usize) -> Result<Constant> {
    if k > p.min(q) {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds min(p, q) = {}", p.min(q))));
    }
    if p + q > n {
        return Err(Error::InvalidParameter(format!(
            "p + q = {} exceeds n = {n}; apply the Serre remap first",
            p + q
        )));
    }
    let (n, p, q, k) = (n as i64, p as i64, q as i64, k as i64);
    let den = p + q - 2 * k;
    if den == 0 {
        return Err(Error::VacuousStratum);
    }
    Ok(Constant::new(r(n + 1 - (p + q)) + Rational::new(2 * (p * q - k * k), den)))
}

/// `C^{p,q} = n+1-(p²+q²)/(p+q)`.
pub fn const_cpq(n: usize, p: usize, q: usize) -> Result<Constant> {
    if p + q == 0 {
        return Err(Error::InvalidParameter("C^{p,q} needs p + q >= 1".into()));
    }
    if p + q > n {
        return Err(Error::InvalidParameter(format!(
            "p + q = {} exceeds n = {n}; apply the Serre remap first",
            p + q
        )));
    }
    let (n, p, q) = (n as i64, p as i64, q as i64);
    Ok(Constant::new(r(n + 1) - Rational::new(p * p + q * q, p + q)))
}

/// Refined Kato constant `D^{p,q}`.
pub fn kato_d(n: usize, p: usize, q: usize) -> Result<Rational> {
    if n == 0 || p > n || q > n {
        return Err(Error::InvalidParameter(format!("(p, q) = ({p}, {q}) out of range for n = {n}")));
    }
    if p == n || q == n {
        return Ok(Rational::new(1, 2));
    }
    let n = n as i64;
    let slot = |p: i64| {
        Rational::new(2 * p + 1, 2 * p + 2).max(Rational::new(2 * n - 2 * p + 1, 2 * n - 2 * p + 2))
    };
    let m = slot(p as i64).min(slot(q as i64));
    Ok(m * m)
}

/// `4(Q-1+a)/(cQ²)`.
pub fn kappa_max(q_exp: Rational, c: Rational, a: Rational) -> Result<Rational> {
    if q_exp < r(2) {
        return Err(Error::InvalidParameter(format!("Q = {q_exp} must be at least 2")));
    }
    if c <= Rational::zero() {
        return Err(Error::InvalidParameter(format!("c = {c} must be positive")));
    }
    if a.is_negative() {
        return Err(Error::InvalidParameter(format!("a = {a} must be nonnegative")));
    }
    Ok(r(4) * (q_exp - r(1) + a) / (c * q_exp * q_exp))
}

/// The κ-bound printed with the harmonic-field form of the `(p,q)` vanishing
/// theorem: `4(Q + 1/D − 3)/(c Q²)`.
pub fn kato_kappa_bound(q_exp: Rational, c: Rational, d: Rational) -> Result<Rational> {
    if q_exp < r(2) {
        return Err(Error::InvalidParameter(format!("Q = {q_exp} must be at least 2")));
    }
    if c <= Rational::zero() || d <= Rational::zero() {
        return Err(Error::InvalidParameter("c and D must be positive".into()));
    }
    Ok(r(4) * (q_exp + d.recip() - r(3)) / (c * q_exp * q_exp))
}

/// Weight `(n+2-|p-q|)(p+q)` of `|φ̊|²` in the `(p,q)` Bochner inequality.
pub fn pq_bochner_weight(n: usize, p: usize, q: usize) -> i64 {
    (n as i64 + 2 - (p as i64 - q as i64).abs()) * (p + q) as i64
}

/// `(1+(-1)ⁿ)/4`.
pub fn bochner_parity_coefficient(n: usize) -> Rational {
    if n % 2 == 0 { Rational::new(1, 2) } else { Rational::zero() }
}

/// `(5+3(-1)ᵐ)/12`.
pub fn quaternion_parity_coefficient(m: usize) -> Rational {
    if m % 2 == 0 { Rational::new(2, 3) } else { Rational::new(1, 6) }
}

/// `(Q-1)/Q²`.
pub fn bochner_k_bound(q_exp: Rational) -> Result<Rational> {
    check_q(q_exp)?;
    Ok((q_exp - r(1)) / (q_exp * q_exp))
}

/// `(Q-1)/Q`.
pub fn quaternion_k_bound(q_exp: Rational) -> Result<Rational> {
    check_q(q_exp)?;
    Ok((q_exp - r(1)) / q_exp)
}

fn check_q(q_exp: Rational) -> Result<()> {
    if q_exp < r(2) {
        Err(Error::InvalidParameter(format!("Q = {q_exp} must be at least 2")))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T1_1,
    T1_2,
    #[serde(rename = "T1_5_d2")]
    T1_5,
    #[serde(rename = "T1_6_quaternion")]
    T1_6,
    T3_2,
    T3_4,
    T3_6,
    C3_3,
    C3_7,
    C3_8,
    C3_9,
    T4_1,
    T4_4,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Parallel,
    Vanishing,
    Flat,
    BochnerFlat,
    Inconclusive,
}

impl Conclusion {
    /// 0 when a conclusion is reached, 2 when inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Conclusion::Inconclusive => 2,
            _ => 0,
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

impl FromStr for Conclusion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.into()))
            .map_err(|_| Error::InvalidParameter(format!("unknown conclusion {s:?}")))
    }
}

/// Global hypotheses the user vouches for. They are never verified, only
/// reported.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub lq_finite: bool,
    pub weighted_poincare: bool,
    pub scalar_flat: bool,
    pub kahler_einstein: bool,
    pub divergence_free_bochner: bool,
}

impl Hypotheses {
    fn describe(&self, used: &[&str]) -> String {
        let flag = |name: &str| match name {
            "lq_finite" => self.lq_finite,
            "weighted_poincare" => self.weighted_poincare,
            "scalar_flat" => self.scalar_flat,
            "kahler_einstein" => self.kahler_einstein,
            "divergence_free_bochner" => self.divergence_free_bochner,
            _ => false,
        };
        let items: Vec<String> = used
            .iter()
            .map(|h| format!("{h}={}", if flag(h) { "asserted" } else { "not asserted" }))
            .collect();
        format!("unverified global hypotheses (complete, noncompact; {})", items.join(", "))
    }
}

/// Weight data `κ`, `ρ`, `Q` shared by the κ-type criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight {
    pub kappa: Rational,
    pub rho: f64,
    pub q_exp: Rational,
}

impl Default for Weight {
    fn default() -> Self {
        Self { kappa: Rational::zero(), rho: 0.0, q_exp: r(2) }
    }
}

impl Weight {
    fn validate(&self) -> Result<()> {
        if self.kappa.is_negative() {
            return Err(Error::InvalidParameter(format!("κ = {} must be nonnegative", self.kappa)));
        }
        if !(self.rho.is_finite() && self.rho >= 0.0) {
            return Err(Error::InvalidParameter(format!("ρ = {} must be finite and nonnegative", self.rho)));
        }
        check_q(self.q_exp)
    }

    fn kappa_rho(&self) -> f64 {
        to_f64(self.kappa) * self.rho
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub theorem_id: TheoremId,
    pub condition_value: f64,
    pub threshold: f64,
    /// Whether the conclusion needed `condition_value > threshold`.
    pub strict: bool,
    pub kappa_admissible: bool,
    /// Exact admissibility bound on κ (or k), if the theorem has one.
    pub kappa_bound: Option<String>,
    pub conclusion: Conclusion,
    pub arithmetic: Vec<String>,
    pub notes: Vec<String>,
}

impl VanishingVerdict {
    pub fn exit_code(&self) -> i32 {
        self.conclusion.exit_code()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn validate_spectrum(spectrum: &[f64], needed: usize) -> Result<f64> {
    if let Some(x) = spectrum.iter().find(|x| !x.is_finite()) {
        return Err(Error::MalformedSpectrum(format!("non-finite eigenvalue {x}")));
    }
    if spectrum.len() < needed {
        return Err(Error::MalformedSpectrum(format!(
            "need at least {needed} eigenvalues, found {}",
            spectrum.len()
        )));
    }
    let scale = spectrum.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for (i, w) in spectrum.windows(2).enumerate() {
        if w[1] < w[0] - SORT_TOL * scale.max(1.0) {
            return Err(Error::MalformedSpectrum(format!(
                "not ascending at positions {} and {}: {} > {}",
                i + 1,
                i + 2,
                w[0],
                w[1]
            )));
        }
    }
    Ok(scale)
}

fn check_length(spectrum: &[f64], expected: usize, what: &str) -> Result<()> {
    if spectrum.len() == expected {
        Ok(())
    } else {
        Err(Error::MalformedSpectrum(format!(
            "{what} expects {expected} eigenvalues, found {}",
            spectrum.len()
        )))
    }
}

/// `μ_1+…+μ_m + w·μ_{m+1}` with its arithmetic rendered as text.
fn partial_sum(spectrum: &[f64], m: usize, w: Rational) -> (f64, String) {
    let mut s: f64 = spectrum[..m].iter().sum();
    let mut terms: Vec<String> = (1..=m).map(|i| format!("μ{i}")).collect();
    if !w.is_zero() {
        s += to_f64(w) * spectrum[m];
        terms.push(format!("({w})·μ{}", m + 1));
    }
    if terms.is_empty() {
        terms.push("0".into());
    }
    (s, format!("S = {} = {s:e}", terms.join(" + ")))
}

fn weighted_needed(m: usize, w: Rational) -> usize {
    if w.is_zero() { m } else { m + 1 }
}

/// Criterion for harmonic `(p,q)`-forms. `strata` switches the constant from
/// `C^{p,q}` to the stratum constant `C^{p,q}_k`.
pub fn check_pq(
    spectrum: &[f64],
    n: usize,
    p: usize,
    q: usize,
    weight: Weight,
    strata: Option<usize>,
    hyp: Hypotheses,
) -> Result<VanishingVerdict> {
    weight.validate()?;
    let (rp, rq, remap) = serre_remap(n, p, q)?;
    let c = match strata {
        Some(k) => const_cpqk(n, rp, rq, k)?,
        None => const_cpq(n, rp, rq)?,
    };
    let m = c.floor as usize;
    let scale = validate_spectrum(spectrum, weighted_needed(m, c.frac))?;
    let tol = CONDITION_TOL * scale;
    let (s, sum_text) = partial_sum(spectrum, m, c.frac);

    let mut arithmetic = vec![match strata {
        Some(k) => format!("C^{{{rp},{rq}}}_{k} = {} (floor {}, weight {})", c.value, c.floor, c.frac),
        None => format!("C^{{{rp},{rq}}} = {} (floor {}, weight {})", c.value, c.floor, c.frac),
    }];
    arithmetic.push(sum_text);
    let mut notes = Vec::new();
    if let Some(note) = remap {
        notes.push(note);
    }
    if let Some(k) = strata {
        notes.push(format!("stratum constant C^{{p,q}}_{k} used in place of C^{{p,q}}"));
    }
    let diagonal = rp == rq;
    if diagonal {
        notes.push("p = q: conclusion applies only to forms ω with ω ⊥ Ω".into());
    }

    let verdict = if weight.kappa.is_zero() {
        let id = if diagonal { TheoremId::T3_4 } else { TheoremId::T3_2 };
        let conclusion = if s > tol {
            Conclusion::Vanishing
        } else if s >= -tol {
            Conclusion::Parallel
        } else {
            Conclusion::Inconclusive
        };
        arithmetic.push(format!("κ = 0: S ≥ 0 gives parallel, S > 0 gives vanishing (slack {tol:e})"));
        match conclusion {
            Conclusion::Vanishing => notes.push(format!(
                "no nontrivial harmonic forms with |ω| ∈ L^Q, Q ≥ 2; {}",
                hyp.describe(&["lq_finite"])
            )),
            Conclusion::Parallel => notes.push(format!(
                "every harmonic form is parallel; {}",
                hyp.describe(&["lq_finite"])
            )),
            _ => notes.push("S < 0: the eigenvalue condition fails".into()),
        }
        VanishingVerdict {
            theorem_id: id,
            condition_value: s,
            threshold: 0.0,
            strict: conclusion == Conclusion::Vanishing,
            kappa_admissible: true,
            kappa_bound: None,
            conclusion,
            arithmetic,
            notes,
        }
    } else {
        let id = if diagonal { TheoremId::C3_8 } else { TheoremId::T3_6 };
        let d = kato_d(n, p, q)?;
        let cw = pq_bochner_weight(n, rp, rq);
        let bound = kato_kappa_bound(weight.q_exp, r(cw), d)?;
        let admissible = weight.kappa < bound;
        let threshold = 0.0 - weight.kappa_rho() * (c.to_f64() + 1.0);
        let holds = s >= threshold - tol;
        arithmetic.push(format!(
            "threshold = −κρ(C+1) = −({})·{}·({}) = {threshold:e}",
            weight.kappa,
            weight.rho,
            c.value + r(1)
        ));
        arithmetic.push(format!(
            "κ bound = 4(Q + 1/D − 3)/((n+2−|p−q|)(p+q)Q²) = 4({} + {} − 3)/({cw}·{}) = {bound}",
            weight.q_exp,
            d.recip(),
            weight.q_exp * weight.q_exp
        ));
        notes.push(format!(
            "D^{{{p},{q}}} = {d}; (n+2−|p−q|)(p+q) grouping used for the κ bound, read against the printed (n+2−|p−q|(p+q))"
        ));
        let alt = kappa_max(weight.q_exp, r(1), d.recip() - r(1))?;
        notes.push(format!("for comparison 4(Q−1+a)/(cQ²) with c = 1, a = 1/D − 1 gives {alt}"));
        if diagonal {
            notes.push("p = q corollary is stated for L² forms".into());
        }
        notes.push(hyp.describe(&["lq_finite", "weighted_poincare"]));
        let conclusion = if holds && admissible { Conclusion::Vanishing } else { Conclusion::Inconclusive };
        if !admissible {
            notes.push(format!("κ = {} is not below the bound {bound}", weight.kappa));
        }
        if !holds {
            notes.push("S/(C+1) < −κρ: the eigenvalue condition fails".into());
        }
        VanishingVerdict {
            theorem_id: id,
            condition_value: s,
            threshold,
            strict: false,
            kappa_admissible: admissible,
            kappa_bound: Some(bound.to_string()),
            conclusion,
            arithmetic,
            notes,
        }
    };
    Ok(verdict)
}

struct BochnerShape {
    s: f64,
    threshold: f64,
    bound: Rational,
    admissible: bool,
    holds: bool,
    arithmetic: Vec<String>,
}

/// Shared shape of the Bochner-flat and Einstein-flat criteria.
fn bochner_shape(spectrum: &[f64], n: usize, weight: Weight) -> Result<BochnerShape> {
    weight.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    check_length(spectrum, n * n, "the 𝔲(n) spectrum")?;
    let m = (n + 1) / 2;
    let w = bochner_parity_coefficient(n);
    let scale = validate_spectrum(spectrum, weighted_needed(m, w))?;
    let (s, text) = partial_sum(spectrum, m, w);
    let threshold = 0.0 - weight.kappa_rho();
    let bound = bochner_k_bound(weight.q_exp)?;
    Ok(BochnerShape {
        s,
        threshold,
        bound,
        admissible: weight.kappa < bound,
        holds: s >= threshold - CONDITION_TOL * scale,
        arithmetic: vec![
            format!("⌊(n+1)/2⌋ = {m}, (1+(−1)ⁿ)/4 = {w}"),
            text,
            format!("threshold = −kρ = {threshold:e}"),
            format!("k bound = (Q−1)/Q² = {bound}"),
        ],
    })
}

fn k_note(k: Rational, bound: Rational, admissible: bool) -> Option<String> {
    (!admissible).then(|| format!("k = {k} is not below the bound {bound}"))
}

pub fn check_bochner(spectrum: &[f64], n: usize, weight: Weight, hyp: Hypotheses) -> Result<VanishingVerdict> {
    let BochnerShape { s, threshold, bound, admissible, holds, arithmetic } = bochner_shape(spectrum, n, weight)?;
    let mut notes = vec![
        format!("Bochner tensor vanishes if its L^Q-norm is finite; {}", hyp.describe(&[
            "divergence_free_bochner",
            "weighted_poincare",
            "lq_finite"
        ])),
        "classification of the Bochner-flat geometries is not checked".into(),
    ];
    notes.extend(k_note(weight.kappa, bound, admissible));
    if !holds {
        notes.push("the eigenvalue condition fails".into());
    }
    Ok(VanishingVerdict {
        theorem_id: TheoremId::T1_5,
        condition_value: s,
        threshold,
        strict: false,
        kappa_admissible: admissible,
        kappa_bound: Some(bound.to_string()),
        conclusion: if holds && admissible { Conclusion::BochnerFlat } else { Conclusion::Inconclusive },
        arithmetic,
        notes,
    })
}

pub fn check_einstein_flat(spectrum: &[f64], n: usize, weight: Weight, hyp: Hypotheses) -> Result<VanishingVerdict> {
    let BochnerShape { s, threshold, bound, admissible, holds, arithmetic } = bochner_shape(spectrum, n, weight)?;
    let mut notes = vec![format!(
        "Riemannian flat if the curvature has finite L^Q-norm; {}",
        hyp.describe(&["kahler_einstein", "weighted_poincare", "lq_finite"])
    )];
    notes.extend(k_note(weight.kappa, bound, admissible));
    let big_enough = n >= 4;
    if !big_enough {
        notes.push(format!("warning: the theorem needs complex dimension n ≥ 4, got n = {n}"));
    }
    if !holds {
        notes.push("the eigenvalue condition fails".into());
    }
    Ok(VanishingVerdict {
        theorem_id: TheoremId::T4_1,
        condition_value: s,
        threshold,
        strict: false,
        kappa_admissible: admissible,
        kappa_bound: Some(bound.to_string()),
        conclusion: if holds && admissible && big_enough { Conclusion::Flat } else { Conclusion::Inconclusive },
        arithmetic,
        notes,
    })
}

/// Expected length `m(2m+1)+3` of a `𝔰𝔭(m)⊕𝔰𝔭(1)` spectrum.
pub fn quaternion_spectrum_len(m: usize) -> usize {
    m * (2 * m + 1) + 3
}

pub fn check_quaternion(spectrum: &[f64], m: usize, weight: Weight, hyp: Hypotheses) -> Result<VanishingVerdict> {
    weight.validate()?;
    if m < 2 {
        return Err(Error::InvalidParameter(format!("quaternionic dimension m = {m} must be at least 2")));
    }
    check_length(spectrum, quaternion_spectrum_len(m), "the 𝔰𝔭(m)⊕𝔰𝔭(1) spectrum")?;
    let idx = (m + 1) / 2;
    let w = quaternion_parity_coefficient(m);
    let scale = validate_spectrum(spectrum, weighted_needed(idx, w))?;
    let (s, text) = partial_sum(spectrum, idx, w);
    let threshold = 0.0 - weight.kappa_rho();
    let bound = quaternion_k_bound(weight.q_exp)?;
    let admissible = weight.kappa < bound;
    let holds = s >= threshold - CONDITION_TOL * scale;
    let arithmetic = vec![
        format!("⌊(m+1)/2⌋ = {idx}, (5+3(−1)ᵐ)/12 = {w}"),
        text,
        format!("threshold = −kρ = {threshold:e}"),
        format!("k bound = (Q−1)/Q = {bound}"),
    ];
    let mut notes = vec![
        format!("flat if the curvature has finite L^Q-norm; {}", hyp.describe(&[
            "scalar_flat",
            "weighted_poincare",
            "lq_finite"
        ])),
        "k is bounded by (Q−1)/Q here, against (Q−1)/Q² in the Bochner-flat criterion".into(),
    ];
    notes.extend(k_note(weight.kappa, bound, admissible));
    let scalar_ok = hyp.scalar_flat || weight.kappa.is_zero();
    if weight.kappa.is_zero() && !hyp.scalar_flat {
        notes.push("k = 0: the scalar-flat hypothesis can be removed".into());
    }
    if !scalar_ok {
        notes.push("k > 0 requires the scalar-flat hypothesis, which was not asserted".into());
    }
    if !holds {
        notes.push("the eigenvalue condition fails".into());
    }
    Ok(VanishingVerdict {
        theorem_id: TheoremId::T4_4,
        condition_value: s,
        threshold,
        strict: false,
        kappa_admissible: admissible,
        kappa_bound: Some(bound.to_string()),
        conclusion: if holds && admissible && scalar_ok { Conclusion::Flat } else { Conclusion::Inconclusive },
        arithmetic,
        notes,
    })
}

/// `⌈n/2⌉`-nonnegativity: `μ_1+…+μ_⌈n/2⌉ ≥ 0`.
pub fn check_lq_nonneg(spectrum: &[f64], n: usize, hyp: Hypotheses) -> Result<VanishingVerdict> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let m = n.div_ceil(2);
    let scale = validate_spectrum(spectrum, m)?;
    let (s, text) = partial_sum(spectrum, m, Rational::zero());
    let holds = s >= -CONDITION_TOL * scale;
    let mut notes = vec![
        format!("harmonic (p,q)-forms with |ω| ∈ L^Q vanish; {}", hyp.describe(&["lq_finite"])),
        "reduced L² cohomology in degree ℓ is trivial if ℓ is odd".into(),
    ];
    if n < 3 {
        notes.push(format!("warning: the corollary is stated for n ≥ 3, got n = {n}"));
    }
    if !holds {
        notes.push("the curvature is not ⌈n/2⌉-nonnegative".into());
    }
    Ok(VanishingVerdict {
        theorem_id: TheoremId::C3_3,
        condition_value: s,
        threshold: 0.0,
        strict: false,
        kappa_admissible: true,
        kappa_bound: None,
        conclusion: if holds { Conclusion::Vanishing } else { Conclusion::Inconclusive },
        arithmetic: vec![format!("⌈n/2⌉ = {m}"), text],
        notes,
    })
}
