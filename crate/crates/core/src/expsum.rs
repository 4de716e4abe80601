//! Exponential sums Σ a_j e^{λ_j p} over a frequency system.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactnum::{Fixed, Rational};
use crate::frequency::FrequencySystem;
use crate::Precision;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// f(t) = Σ a_j e^{iλ_j t}
    Real,
    /// f(s) = Σ a_j e^{λ_j s}
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub sigma0: f64,
    pub sigma1: f64,
}

impl Strip {
    pub fn new(sigma0: f64, sigma1: f64) -> Result<Self> {
        if !sigma0.is_finite() || !sigma1.is_finite() || sigma0 > sigma1 {
            return Err(Error::InvalidArgument(format!("bad strip [{sigma0}, {sigma1}]")));
        }
        Ok(Strip { sigma0, sigma1 })
    }

    pub fn line(sigma: f64) -> Self {
        Strip { sigma0: sigma, sigma1: sigma }
    }
}

/// JSON form of a complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug)]
pub struct ExpSum {
    system: Arc<FrequencySystem>,
    coeffs: Vec<Complex64>,
    kind: Kind,
}

#[derive(Serialize, Deserialize)]
struct ExpSumDoc {
    #[serde(flatten)]
    system: FrequencySystem,
    coeffs: Vec<ComplexJson>,
    kind: Kind,
}

impl Serialize for ExpSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpSumDoc { system: (*self.system).clone(), coeffs: self.coeffs.iter().map(|&z| z.into()).collect(), kind: self.kind }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExpSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ExpSumDoc::deserialize(d)?;
        ExpSum::new(Arc::new(doc.system), doc.coeffs.into_iter().map(Into::into).collect(), doc.kind).map_err(serde::de::Error::custom)
    }
}

/// Phase τ·λ reduced into [−π, π) in fixed point, then rounded to f64.
pub fn phase_mod_2pi(tau: &Fixed, lambda: &Fixed) -> f64 {
    (tau * lambda).rem_centered(&Fixed::two_pi()).to_f64()
}

fn reduce_phase(x: f64) -> f64 {
    x - 2.0 * PI * (x / (2.0 * PI)).round()
}

impl ExpSum {
    pub fn new(system: Arc<FrequencySystem>, coeffs: Vec<Complex64>, kind: Kind) -> Result<Self> {
        if coeffs.len() != system.n_freqs() {
            return Err(Error::DimensionMismatch { expected: system.n_freqs(), got: coeffs.len() });
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(ExpSum { system, coeffs, kind })
    }

    pub fn system(&self) -> &FrequencySystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<FrequencySystem> {
        &self.system
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same coefficients shape over the same system and kind.
    pub fn with_coeffs(&self, coeffs: Vec<Complex64>) -> Result<ExpSum> {
        ExpSum::new(self.system.clone(), coeffs, self.kind)
    }

    pub fn same_system(&self, other: &ExpSum) -> bool {
        Arc::ptr_eq(&self.system, &other.system) || *self.system == *other.system
    }

    pub fn check_comparable(&self, other: &ExpSum) -> Result<()> {
        if !self.same_system(other) || self.kind != other.kind {
            return Err(Error::MismatchedSystems);
        }
        Ok(())
    }

    pub fn scale(&self, c: Complex64) -> ExpSum {
        ExpSum { system: self.system.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect(), kind: self.kind }
    }

    /// Value at `point`: s = σ+it for complex sums, t = point.re for real ones.
    pub fn evaluate(&self, point: Complex64) -> Complex64 {
        self.evaluate_with(point, Precision::Standard)
    }

    pub fn evaluate_with(&self, point: Complex64, precision: Precision) -> Complex64 {
        let (sigma, t) = match self.kind {
            Kind::Real => (0.0, point.re),
            Kind::Complex => (point.re, point.im),
        };
        match precision {
            Precision::Standard => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, &l) in self.coeffs.iter().zip(self.system.lambdas()) {
                    if *a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    acc += a * (l * sigma).exp() * Complex64::cis(reduce_phase(l * t));
                }
                acc
            }
            Precision::High => {
                let tf = Fixed::from_f64(t).unwrap_or_default();
                let (mut re, mut im) = (TwoFloat::from(0.0), TwoFloat::from(0.0));
                for (j, a) in self.coeffs.iter().enumerate() {
                    if *a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let l = self.system.lambda(j);
                    let z = a * (l * sigma).exp() * Complex64::cis(phase_mod_2pi(&tf, self.system.lambda_fixed(j)));
                    re += z.re;
                    im += z.im;
                }
                Complex64::new(re.hi() + re.lo(), im.hi() + im.lo())
            }
        }
    }

    /// Vertical translate: b_j = a_j·e^{iτλ_j}.
    pub fn translate(&self, tau: f64) -> ExpSum {
        self.translate_fixed(&Fixed::from_f64(tau).expect("finite translation"))
    }

    pub fn translate_fixed(&self, tau: &Fixed) -> ExpSum {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * Complex64::cis(phase_mod_2pi(tau, self.system.lambda_fixed(j))))
            .collect();
        ExpSum { system: self.system.clone(), coeffs, kind: self.kind }
    }

    /// E_j = max(e^{λ_j σ0}, e^{λ_j σ1}); 1 for real-variable sums.
    pub fn strip_weights(&self, strip: &Strip) -> Vec<f64> {
        strip_weights(&self.system, self.kind, strip)
    }
}

pub fn strip_weights(system: &FrequencySystem, kind: Kind, strip: &Strip) -> Vec<f64> {
    system
        .lambdas()
        .iter()
        .map(|&l| match kind {
            Kind::Real => 1.0,
            Kind::Complex => (l * strip.sigma0).exp().max((l * strip.sigma1).exp()),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub sigma_points: usize,
    pub t_points: usize,
    pub t0: f64,
    pub t1: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { sigma_points: 64, t_points: 256, t0: 0.0, t1: 2.0 * PI * 50.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupNormReport {
    /// Largest sampled |f − g|.
    pub grid_max: f64,
    /// Σ_j |a_j − b_j|·E_j, a bound for the supremum over the whole strip.
    pub coeff_bound: f64,
    pub grid: GridSpec,
    pub strip: Option<Strip>,
}

pub fn coeff_bound(f: &ExpSum, g: &ExpSum, strip: &Strip) -> Result<f64> {
    f.check_comparable(g)?;
    let w = f.strip_weights(strip);
    Ok(f.coeffs.iter().zip(&g.coeffs).zip(&w).map(|((a, b), e)| (a - b).norm() * e).sum())
}

pub fn sup_norm_diff(f: &ExpSum, g: &ExpSum, strip: &Strip, grid: &GridSpec) -> Result<SupNormReport> {
    f.check_comparable(g)?;
    let diff = f.with_coeffs(f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a - b).collect())?;
    let bound = coeff_bound(f, g, strip)?;
    let ts: Vec<f64> = (0..grid.t_points.max(1))
        .map(|i| if grid.t_points <= 1 { grid.t0 } else { grid.t0 + (grid.t1 - grid.t0) * i as f64 / (grid.t_points - 1) as f64 })
        .collect();
    let sigmas: Vec<f64> = match f.kind {
        Kind::Real => vec![0.0],
        Kind::Complex => (0..grid.sigma_points.max(1))
            .map(|i| {
                if grid.sigma_points <= 1 {
                    strip.sigma0
                } else {
                    strip.sigma0 + (strip.sigma1 - strip.sigma0) * i as f64 / (grid.sigma_points - 1) as f64
                }
            })
            .collect(),
    };
    let grid_max = sigmas
        .par_iter()
        .map(|&s| ts.iter().map(|&t| diff.evaluate(Complex64::new(if f.kind == Kind::Real { t } else { s }, t)).norm()).fold(0.0, f64::max))
        .reduce(|| 0.0, f64::max);
    Ok(SupNormReport { grid_max, coeff_bound: bound, grid: *grid, strip: (f.kind == Kind::Complex).then_some(*strip) })
}

/// p_{j,N} = Π_k max(0, 1 − |r_{j,k}|/(N+1)).
pub fn bochner_fejer_factor(r: &[Rational], order: u64) -> f64 {
    let n1 = (order + 1) as f64;
    r.iter().map(|c| (1.0 - c.abs().to_f64() / n1).max(0.0)).product()
}

pub fn bochner_fejer_factors(system: &FrequencySystem, order: u64) -> Result<Vec<f64>> {
    if !system.is_integral() {
        return Err(Error::NonIntegral);
    }
    Ok(system.freqs().iter().map(|r| bochner_fejer_factor(r, order)).collect())
}

/// Bochner–Fejér approximant of order N; integral systems only.
pub fn bochner_fejer(f: &ExpSum, order: u64) -> Result<ExpSum> {
    let p = bochner_fejer_factors(f.system(), order)?;
    f.with_coeffs(f.coeffs.iter().zip(&p).map(|(a, p)| a * p).collect())
}
