//! Regime classification for the Cowling–Price, Hardy and Morgan
//! uncertainty principles, and numerical probes of their witnesses.
//!
//! The vanishing conclusions are statements about all functions and cannot
//! be certified numerically. What the probes can show is that the natural
//! witnesses `E_t` have finite weighted norms inside the admissible range and
//! growing truncated norms outside it.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heat::{heat_kernel, log_heat_kernel, spatial_cutoff};
use crate::jacobi::{Domain, JCParams, SampledFunction};
use crate::modulation::{
    truncated_norm, verdict, EnvelopeNorm, Exponent, LatticeSpec, Measure, MixedNormSpec, Verdict,
    ENVELOPE_CAP,
};
use crate::specfun::make_grid;
use crate::transform::forward_transform;

/// Tolerance on `ab` when comparing against `1/4`.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Principle {
    CowlingPrice,
    Hardy,
    Morgan,
}

impl std::str::FromStr for Principle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "cowling_price" => Ok(Principle::CowlingPrice),
            "hardy" => Ok(Principle::Hardy),
            "morgan" => Ok(Principle::Morgan),
            _ => Err(Error::InvalidArgument(format!("unknown principle '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeInput {
    /// Spatial envelope rate.
    pub a: f64,
    /// Spectral envelope rate.
    pub b: f64,
    pub p: Exponent,
    pub q: Exponent,
    pub principle: Principle,
    /// Spatial Morgan exponent, `μ > 2`.
    pub morgan_mu: Option<f64>,
    /// Spectral Morgan exponent, `1/μ + 1/ν = 1`.
    pub morgan_nu: Option<f64>,
}

impl RegimeInput {
    pub fn cowling_price(a: f64, b: f64, p: Exponent, q: Exponent) -> Self {
        Self { a, b, p, q, principle: Principle::CowlingPrice, morgan_mu: None, morgan_nu: None }
    }

    pub fn hardy(a: f64, b: f64) -> Self {
        Self {
            a,
            b,
            p: Exponent::Infinite,
            q: Exponent::Infinite,
            principle: Principle::Hardy,
            morgan_mu: None,
            morgan_nu: None,
        }
    }

    /// Morgan input with the conjugate exponent `ν = μ/(μ−1)`.
    pub fn morgan(a: f64, b: f64, p: Exponent, q: Exponent, mu: f64) -> Self {
        Self {
            a,
            b,
            p,
            q,
            principle: Principle::Morgan,
            morgan_mu: Some(mu),
            morgan_nu: Some(mu / (mu - 1.0)),
        }
    }

    fn check_rates(&self) -> Result<()> {
        if !(self.a > 0.0 && self.b > 0.0 && self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "rates must be positive, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }

    fn expect(&self, principle: Principle) -> Result<()> {
        if self.principle != principle {
            return Err(Error::InvalidArgument(format!(
                "input is for {:?}, not {principle:?}",
                self.principle
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Vanishing,
    Boundary,
    WitnessExists,
    BelowThreshold,
}

/// Norm sequences of a witness probe.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSequences {
    pub t: f64,
    /// `e^{ax²}E_t` in `M^p(ℝ, A)`.
    pub spatial: Vec<EnvelopeNorm>,
    /// `e^{(b−t)λ²}` in `M^q(ℝ, σ)`.
    pub spectral: Vec<EnvelopeNorm>,
    pub spatial_verdict: Verdict,
    pub spectral_verdict: Verdict,
    /// Largest `|H E_t(λ) − e^{−tλ²}|` over `λ = 0, 1, …, 5`.
    pub spectral_cross_check: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    pub principle: Principle,
    pub classification: Classification,
    /// `ab`, or the Morgan product.
    pub product: f64,
    /// `1/4`, or the Morgan threshold.
    pub threshold: f64,
    pub witness_t_interval: Option<(f64, f64)>,
    pub witness_family: Option<String>,
    pub norm_sequences: Option<NormSequences>,
    pub verdict_notes: String,
}

const VANISHING_NOTE: &str =
    "vanishing is the theorem's conclusion for every admissible f; it is not checked numerically";

fn heat_witness_report(
    principle: Principle,
    product: f64,
    input: &RegimeInput,
    note: &str,
) -> RegimeReport {
    let (lo, hi) = (input.b, 1.0 / (4.0 * input.a));
    RegimeReport {
        principle,
        classification: Classification::WitnessExists,
        product,
        threshold: 0.25,
        witness_t_interval: Some((lo, hi)),
        witness_family: Some(format!("E_t, t in ({lo}, {hi})")),
        norm_sequences: None,
        verdict_notes: note.to_string(),
    }
}

fn vanishing_report(principle: Principle, product: f64, threshold: f64) -> RegimeReport {
    RegimeReport {
        principle,
        classification: Classification::Vanishing,
        product,
        threshold,
        witness_t_interval: None,
        witness_family: None,
        norm_sequences: None,
        verdict_notes: VANISHING_NOTE.to_string(),
    }
}

pub fn classify_cowling_price(input: &RegimeInput) -> Result<RegimeReport> {
    input.expect(Principle::CowlingPrice)?;
    input.check_rates()?;
    if !input.p.is_finite() && !input.q.is_finite() {
        return Err(Error::InvalidArgument(
            "p = q = ∞ is the Hardy case; use classify_hardy".into(),
        ));
    }
    let product = input.a * input.b;
    if product >= 0.25 - BOUNDARY_TOLERANCE {
        return Ok(vanishing_report(Principle::CowlingPrice, product, 0.25));
    }
    Ok(heat_witness_report(
        Principle::CowlingPrice,
        product,
        input,
        "heat kernels E_t with b < t < 1/(4a) satisfy both norm conditions",
    ))
}

pub fn classify_hardy(input: &RegimeInput) -> Result<RegimeReport> {
    input.expect(Principle::Hardy)?;
    input.check_rates()?;
    if input.p.is_finite() || input.q.is_finite() {
        return Err(Error::InvalidArgument("the Hardy case needs p = q = ∞".into()));
    }
    let product = input.a * input.b;
    if (product - 0.25).abs() <= BOUNDARY_TOLERANCE {
        let t = 1.0 / (4.0 * input.a);
        return Ok(RegimeReport {
            principle: Principle::Hardy,
            classification: Classification::Boundary,
            product,
            threshold: 0.25,
            witness_t_interval: None,
            witness_family: Some(format!("E_{{{t}}}")),
            norm_sequences: None,
            verdict_notes: format!("f is a constant multiple of E_{{{t}}}"),
        });
    }
    if product > 0.25 {
        return Ok(vanishing_report(Principle::Hardy, product, 0.25));
    }
    Ok(heat_witness_report(
        Principle::Hardy,
        product,
        input,
        "infinitely many nonzero f, among them E_t with b < t < 1/(4a)",
    ))
}

/// `(sin(π(ν−1)/2))^{1/ν}`.
pub fn morgan_threshold(nu: f64) -> f64 {
    (PI * (nu - 1.0) / 2.0).sin().powf(1.0 / nu)
}

/// `(aμ)^{1/μ}(bν)^{1/ν}`.
pub fn morgan_product(a: f64, b: f64, mu: f64, nu: f64) -> f64 {
    (a * mu).powf(1.0 / mu) * (b * nu).powf(1.0 / nu)
}

pub fn classify_morgan(input: &RegimeInput) -> Result<RegimeReport> {
    input.expect(Principle::Morgan)?;
    input.check_rates()?;
    if !input.q.is_finite() {
        return Err(Error::InvalidArgument("the Morgan case needs q finite".into()));
    }
    let mu = input
        .morgan_mu
        .ok_or_else(|| Error::InvalidArgument("missing Morgan exponent μ".into()))?;
    if !(mu > 2.0 && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!("Morgan exponent μ must exceed 2, got {mu}")));
    }
    let nu = input.morgan_nu.unwrap_or(mu / (mu - 1.0));
    if (1.0 / mu + 1.0 / nu - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "Morgan exponents must satisfy 1/μ + 1/ν = 1, got μ = {mu}, ν = {nu}"
        )));
    }
    let product = morgan_product(input.a, input.b, mu, nu);
    let threshold = morgan_threshold(nu);
    if product > threshold {
        return Ok(vanishing_report(Principle::Morgan, product, threshold));
    }
    Ok(RegimeReport {
        principle: Principle::Morgan,
        classification: Classification::BelowThreshold,
        product,
        threshold,
        witness_t_interval: None,
        witness_family: None,
        norm_sequences: None,
        verdict_notes: "at or below the threshold no conclusion is available and no witness is constructed"
            .to_string(),
    })
}

pub fn classify(input: &RegimeInput) -> Result<RegimeReport> {
    match input.principle {
        Principle::CowlingPrice => classify_cowling_price(input),
        Principle::Hardy => classify_hardy(input),
        Principle::Morgan => classify_morgan(input),
    }
}

/// Truncation ladders and lattice resolution for [`verify_witness`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessConfig {
    pub spatial_truncations: Vec<f64>,
    pub spectral_truncations: Vec<f64>,
    pub lattice: LatticeSpec,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            spatial_truncations: vec![4.0, 8.0, 16.0],
            spectral_truncations: vec![10.0, 20.0, 40.0],
            lattice: LatticeSpec::default(),
        }
    }
}

/// Samples on `[−X, X]`, `X = max truncation + window support`, at
/// 64 nodes per unit length.
fn witness_grid(config: &[f64], lattice: &LatticeSpec) -> Result<crate::specfun::QuadGrid> {
    let top = config.iter().cloned().fold(0.0f64, f64::max);
    if !(top > 0.0) {
        return Err(Error::InvalidArgument("empty truncation ladder".into()));
    }
    let half = (top + lattice.window.support()).ceil();
    make_grid(half, (8.0 * half) as usize, 16)
}

fn log_sampled<F>(grid: crate::specfun::QuadGrid, domain: Domain, ln_f: F) -> Result<SampledFunction>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let cap = ENVELOPE_CAP.ln();
    let values = grid
        .nodes()
        .par_iter()
        .map(|&x| ln_f(x).map(|l| Complex64::new(l.min(cap).exp(), 0.0)))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(grid, values, domain)
}

fn spectral_cross_check(params: &JCParams, t: f64) -> Result<f64> {
    let x_max = spatial_cutoff(params, t, 1e-14)?;
    let grid = make_grid(x_max, (4.0 * x_max) as usize, 16)?;
    let e = heat_kernel(params, t, &grid)?;
    let lambdas: Vec<Complex64> = (0..=5).map(|k| Complex64::new(k as f64, 0.0)).collect();
    let h = forward_transform(params, &e, &lambdas)?;
    Ok(lambdas
        .iter()
        .zip(&h.values)
        .map(|(l, v)| (v - (-t * l.re * l.re).exp()).norm())
        .fold(0.0, f64::max))
}

/// Norm sequences of the heat-kernel witness `E_t` on both sides.
///
/// The spectral side uses the closed form `e^{−tλ²}` of the transform, and
/// reports its distance to the numerical transform.
pub fn verify_witness(
    params: &JCParams,
    input: &RegimeInput,
    t: f64,
    config: &WitnessConfig,
) -> Result<RegimeReport> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    let mut report = match input.principle {
        Principle::CowlingPrice => classify_cowling_price(input)?,
        Principle::Hardy => classify_hardy(input)?,
        Principle::Morgan => {
            return Err(Error::InvalidArgument(
                "no witness family is available for the Morgan principle".into(),
            ))
        }
    };
    let (a, b) = (input.a, input.b);

    let spatial_spec =
        MixedNormSpec { p: input.p, q: input.p, measure: Measure::AWeighted, params: *params };
    let spatial_grid = witness_grid(&config.spatial_truncations, &config.lattice)?;
    let spatial_f = log_sampled(spatial_grid, Domain::Spatial, |x| {
        Ok(a * x * x + log_heat_kernel(params, t, x)?)
    })?;
    let spatial = config
        .spatial_truncations
        .iter()
        .map(|&tr| truncated_norm(&spatial_f, &spatial_spec, tr, &config.lattice))
        .collect::<Result<Vec<_>>>()?;

    let spectral_spec =
        MixedNormSpec { p: input.q, q: input.q, measure: Measure::SigmaWeighted, params: *params };
    let spectral_grid = witness_grid(&config.spectral_truncations, &config.lattice)?;
    let spectral_f = log_sampled(spectral_grid, Domain::Spectral, |l| Ok((b - t) * l * l))?;
    let spectral = config
        .spectral_truncations
        .iter()
        .map(|&tr| truncated_norm(&spectral_f, &spectral_spec, tr, &config.lattice))
        .collect::<Result<Vec<_>>>()?;

    let cross = spectral_cross_check(params, t)?;
    let sequences = NormSequences {
        t,
        spatial_verdict: verdict(&spatial),
        spectral_verdict: verdict(&spectral),
        spatial,
        spectral,
        spectral_cross_check: cross,
    };
    let mut notes = vec![format!(
        "spatial exponent a - 1/(4t) = {:.6}, spectral exponent b - t = {:.6}",
        a - 1.0 / (4.0 * t),
        b - t
    )];
    notes.push(format!(
        "spatial side {:?}, spectral side {:?}",
        sequences.spatial_verdict, sequences.spectral_verdict
    ));
    if cross > 1e-6 {
        notes.push(format!("numerical transform of E_t deviates from e^(-t lambda^2) by {cross:.3e}"));
    }
    if report.classification == Classification::Vanishing {
        notes.push(VANISHING_NOTE.to_string());
    }
    report.verdict_notes = notes.join("; ");
    report.norm_sequences = Some(sequences);
    Ok(report)
}

/// One evaluation of `g(λ) = e^{λ²/(4a)} Hf(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRow {
    pub lambda: Complex64,
    pub g: Complex64,
    /// `|g(λ)| / e^{(Re λ)²/(4a)} = |Hf(λ)| e^{−(Im λ)²/(4a)}`.
    pub ratio: f64,
}

/// Evaluates `g(λ) = e^{λ²/(4a)} Hf(λ)` on the grid `re × im`.
pub fn entire_extension_probe(
    params: &JCParams,
    f: &SampledFunction,
    a: f64,
    re_lambdas: &[f64],
    im_lambdas: &[f64],
) -> Result<Vec<ProbeRow>> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("a must be positive, got {a}")));
    }
    let lambdas: Vec<Complex64> = im_lambdas
        .iter()
        .flat_map(|&im| re_lambdas.iter().map(move |&re| Complex64::new(re, im)))
        .collect();
    let h = forward_transform(params, f, &lambdas)?;
    lambdas
        .iter()
        .zip(&h.values)
        .map(|(&l, &v)| {
            let exponent = l * l / (4.0 * a);
            if exponent.re > 700.0 {
                return Err(Error::InvalidArgument(format!(
                    "e^(λ²/4a) overflows at λ = {l}"
                )));
            }
            Ok(ProbeRow {
                lambda: l,
                g: v * exponent.exp(),
                ratio: v.norm() * (-l.im * l.im / (4.0 * a)).exp(),
            })
        })
        .collect()
}

/// Largest ratio over `Re λ` for each distinct `Im λ`, in input order.
pub fn sup_ratio_by_row(rows: &[ProbeRow]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for r in rows {
        match out.iter_mut().find(|(im, _)| *im == r.lambda.im) {
            Some(entry) => entry.1 = entry.1.max(r.ratio),
            None => out.push((r.lambda.im, r.ratio)),
        }
    }
    out
}
