//! Inhomogeneous simultaneous Diophantine approximation: find τ with
//! dist(τ·c_k − d_k, ℤ) < ε₁ for every k.
//!
//! Two solvers: an exhaustive grid scan (the oracle) and a lattice method
//! that eliminates τ through a pivot coordinate, reduces the resulting
//! lattice with LLL and enumerates points near the target.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactnum::{closest_vector_approx, enumerate_near, lll_with_transform, Fixed, LatticeBasis, Scalar};
use crate::Precision;

/// Scanning threshold relative to ε₁; runs below it are polished.
const GRID_DETECT: f64 = 1.25;
const GRID_CHUNK: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KroneckerInstance {
    pub c: Vec<Fixed>,
    pub d: Vec<Fixed>,
    pub eps1: f64,
    /// Optional per-coordinate tolerances replacing ε₁.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot_eps: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Grid,
    Lattice,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauCandidate {
    pub tau: f64,
    /// τ with 64 fractional digits.
    pub tau_exact: Fixed,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub method: Method,
}

fn dist_to_int(x: &Fixed) -> f64 {
    x.rem_centered(&Fixed::from_int(1)).abs().to_f64()
}

fn centered(x: f64) -> f64 {
    x - x.round()
}

impl KroneckerInstance {
    pub fn new(c: Vec<f64>, d: Vec<f64>, eps1: f64) -> Result<Self> {
        let c = c.into_iter().map(Fixed::from_f64).collect::<Result<_>>()?;
        let d = d.into_iter().map(Fixed::from_f64).collect::<Result<_>>()?;
        Self::from_fixed(c, d, eps1)
    }

    pub fn from_fixed(c: Vec<Fixed>, d: Vec<Fixed>, eps1: f64) -> Result<Self> {
        if c.len() != d.len() {
            return Err(Error::DimensionMismatch { expected: c.len(), got: d.len() });
        }
        if !(eps1 > 0.0) {
            return Err(Error::InvalidArgument(format!("eps1 must be positive, got {eps1}")));
        }
        Ok(KroneckerInstance { c, d, eps1, slot_eps: None })
    }

    pub fn with_slot_eps(mut self, eps: Vec<f64>) -> Result<Self> {
        if eps.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: eps.len() });
        }
        if eps.iter().any(|e| !(*e > 0.0)) {
            return Err(Error::InvalidArgument("slot tolerances must be positive".into()));
        }
        self.slot_eps = Some(eps);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// Tolerance of coordinate k.
    pub fn rho(&self, k: usize) -> f64 {
        self.slot_eps.as_ref().map_or(self.eps1, |e| e[k])
    }

    pub fn c_f64(&self) -> Vec<f64> {
        self.c.iter().map(Fixed::to_f64).collect()
    }

    pub fn d_f64(&self) -> Vec<f64> {
        self.d.iter().map(Fixed::to_f64).collect()
    }

    /// dist(τ·c_k − d_k, ℤ) for every k, in fixed point.
    pub fn residuals(&self, tau: &Fixed) -> Vec<f64> {
        self.c.iter().zip(&self.d).map(|(c, d)| dist_to_int(&(&(tau * c) - d))).collect()
    }

    pub fn passes(&self, residuals: &[f64]) -> bool {
        residuals.iter().enumerate().all(|(k, r)| *r < self.rho(k))
    }

    pub fn candidate(&self, tau: Fixed, method: Method) -> TauCandidate {
        let residuals = self.residuals(&tau);
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        TauCandidate { tau: tau.to_f64(), tau_exact: tau, residuals, max_residual, method }
    }

    /// Largest step the grid accepts: min_k ρ_k/(4|c_k|).
    pub fn max_grid_step(&self) -> f64 {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| self.rho(k) / (4.0 * c.to_f64().abs()))
            .fold(f64::INFINITY, f64::min)
    }

    /// Mean spacing of solutions for rationally independent c: the reciprocal
    /// of the rate Σ|c_k|·Π_{j≠k}(2ρ_j) at which the line enters the box.
    pub fn mean_return_time(&self) -> f64 {
        let m = self.dim();
        let widths: Vec<f64> = (0..m).map(|k| (2.0 * self.rho(k)).min(1.0)).collect();
        let rate: f64 = (0..m)
            .map(|k| self.c[k].to_f64().abs() * (0..m).filter(|&j| j != k).map(|j| widths[j]).product::<f64>())
            .sum();
        1.0 / rate
    }
}

impl TauCandidate {
    pub fn passes(&self, inst: &KroneckerInstance) -> bool {
        inst.passes(&self.residuals)
    }
}

/// max_k |base_k + δ·c_k|/ρ_k minimized over δ ∈ [lo, hi] (convex in δ).
fn polish(base: &[f64], c: &[f64], rho: &[f64], lo: f64, hi: f64) -> f64 {
    let h = |x: f64| base.iter().zip(c).zip(rho).map(|((b, c), r)| (b + x * c).abs() / r).fold(0.0, f64::max);
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if h(m1) <= h(m2) {
            b = m2;
        } else {
            a = m1;
        }
        if b - a <= f64::EPSILON * (1.0 + a.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

#[derive(Clone, Copy, Debug)]
struct Run {
    first: usize,
    last: usize,
    best: usize,
    best_u: f64,
}

/// Every τ in `window` with all residuals below tolerance, one per
/// solution interval, each polished to its minimax point.
pub fn solve_grid(inst: &KroneckerInstance, window: (f64, f64), step: f64) -> Result<Vec<TauCandidate>> {
    let (t0, t1) = window;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::InvalidArgument(format!("empty window [{t0}, {t1}]")));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    let required = inst.max_grid_step();
    if step > required * (1.0 + 1e-12) {
        return Err(Error::StepTooCoarse { step, required });
    }
    let m = inst.dim();
    let c = inst.c_f64();
    let rho: Vec<f64> = (0..m).map(|k| inst.rho(k)).collect();
    let n_points = ((t1 - t0) / step).floor() as usize + 1;
    let n_chunks = n_points.div_ceil(GRID_CHUNK);

    let runs: Vec<Vec<Run>> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * GRID_CHUNK;
            let end = ((ci + 1) * GRID_CHUNK).min(n_points);
            let tau_start = Fixed::from_f64(t0 + start as f64 * step).expect("finite");
            let base: Vec<f64> = inst.c.iter().zip(&inst.d).map(|(ck, dk)| (&(&tau_start * ck) - dk).rem_centered(&Fixed::from_int(1)).to_f64()).collect();
            let mut out: Vec<Run> = Vec::new();
            for i in start..end {
                let off = (i - start) as f64 * step;
                let mut u = 0.0f64;
                for k in 0..m {
                    u = u.max(centered(base[k] + off * c[k]).abs() / rho[k]);
                    if u >= GRID_DETECT {
                        break;
                    }
                }
                if u < GRID_DETECT {
                    match out.last_mut() {
                        Some(r) if r.last + 1 == i => {
                            r.last = i;
                            if u < r.best_u {
                                r.best = i;
                                r.best_u = u;
                            }
                        }
                        _ => out.push(Run { first: i, last: i, best: i, best_u: u }),
                    }
                }
            }
            out
        })
        .collect();

    let mut merged: Vec<Run> = Vec::new();
    for r in runs.into_iter().flatten() {
        match merged.last_mut() {
            Some(p) if p.last + 1 == r.first => {
                p.last = r.last;
                if r.best_u < p.best_u {
                    p.best = r.best;
                    p.best_u = r.best_u;
                }
            }
            _ => merged.push(r),
        }
    }

    let mut found: Vec<TauCandidate> = merged
        .par_iter()
        .filter_map(|r| {
            let tb = Fixed::from_f64(t0 + r.best as f64 * step).expect("finite");
            let base: Vec<f64> = inst
                .c
                .iter()
                .zip(&inst.d)
                .map(|(ck, dk)| (&(&tb * ck) - dk).rem_centered(&Fixed::from_int(1)).to_f64())
                .collect();
            let tbf = tb.to_f64();
            let lo = (t0 + r.first as f64 * step - step).max(t0) - tbf;
            let hi = (t0 + r.last as f64 * step + step).min(t1) - tbf;
            let delta = polish(&base, &c, &rho, lo, hi);
            let polished = inst.candidate(&tb + &Fixed::from_f64(delta).expect("finite"), Method::Grid);
            let at_grid = inst.candidate(tb, Method::Grid);
            let best = if at_grid.max_residual <= polished.max_residual { at_grid } else { polished };
            best.passes(inst).then_some(best)
        })
        .collect();
    found.sort_by(|a, b| a.tau_exact.cmp(&b.tau_exact));
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeOptions {
    /// First search bound on τ.
    pub t_start: f64,
    /// Largest search bound before giving up.
    pub t_max: f64,
    pub growth: f64,
    /// Enumeration tree-node budget per attempt.
    pub node_budget: u64,
    /// Enumerated lattice points kept per attempt.
    pub max_points: usize,
    pub precision: Precision,
    /// Enumeration radius relative to the completeness radius √dim.
    pub radius_scale: f64,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions { t_start: 1e6, t_max: 1e18, growth: 100.0, node_budget: 2_000_000, max_points: 512, precision: Precision::Standard, radius_scale: 1.05 }
    }
}

impl LatticeOptions {
    /// Single attempt with bound `t`.
    pub fn bounded(t: f64) -> Self {
        LatticeOptions { t_start: t, t_max: t, ..Default::default() }
    }

    pub fn schedule(&self) -> Vec<f64> {
        let mut out = vec![self.t_start];
        let mut t = self.t_start;
        while t < self.t_max && self.growth > 1.0 {
            t = (t * self.growth).min(self.t_max);
            out.push(t);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeAttempt {
    pub t_bound: f64,
    pub precision: Precision,
    pub candidates: usize,
    pub passing: usize,
    pub nodes: u64,
    pub truncated: bool,
}

/// Candidates from one lattice attempt, sorted by τ; passing or not.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub candidates: Vec<TauCandidate>,
    pub attempt: LatticeAttempt,
}

/// Lattice points near the Kronecker target for τ ∈ [0, t_bound], each turned
/// into a polished τ with exact residuals.
pub fn lattice_candidates(inst: &KroneckerInstance, t_bound: f64, opts: &LatticeOptions) -> Result<CandidateSet> {
    let m = inst.dim();
    let one = Fixed::from_int(1);
    let mut attempt = LatticeAttempt { t_bound, precision: Precision::Standard, candidates: 0, passing: 0, nodes: 0, truncated: false };
    let mut out = vec![inst.candidate(Fixed::zero(), Method::Lattice)];

    // Normalize to c_k > 0, d_k ∈ [0, 1).
    let mut c = Vec::with_capacity(m);
    let mut d = Vec::with_capacity(m);
    for k in 0..m {
        let (ck, dk) = if inst.c[k].is_negative() { (-&inst.c[k], -&inst.d[k]) } else { (inst.c[k].clone(), inst.d[k].clone()) };
        d.push(dk.rem_euclid(&one));
        c.push(ck);
    }
    let mut slots = Vec::new();
    for k in 0..m {
        if c[k].is_zero() {
            if dist_to_int(&d[k]) >= inst.rho(k) {
                return Ok(finish(inst, out, attempt));
            }
        } else if inst.rho(k) < 0.5 {
            slots.push(k);
        }
    }
    if slots.is_empty() {
        return Ok(finish(inst, out, attempt));
    }
    let t_fixed = Fixed::from_f64(t_bound)?;
    let p = *slots
        .iter()
        .min_by(|&&a, &&b| (inst.rho(a) / c[a].to_f64()).total_cmp(&(inst.rho(b) / c[b].to_f64())))
        .expect("nonempty");
    let rho_p = inst.rho(p);

    // e_p ranges over integers with τ = (e_p + d_p)/c_p within [0, T] up to slack.
    let lo = (-&d[p] - Fixed::from_f64(rho_p)?).floor() + 1;
    let hi = (&(&(&t_fixed * &c[p]) - &d[p]) + &Fixed::from_f64(rho_p)?).floor();
    if hi < lo {
        return Ok(finish(inst, out, attempt));
    }

    let mut eps: Vec<BigInt> = Vec::new();
    if slots.len() == 1 {
        let mut e = lo.clone();
        while e <= hi && eps.len() < opts.max_points {
            eps.push(e.clone());
            e += 1;
        }
    } else {
        let others: Vec<usize> = slots.iter().copied().filter(|&k| k != p).collect();
        let e_mid = Fixed::from_int(&lo + &hi).div_int(&BigInt::from(2));
        let e_half = ((&hi - &lo).to_f64().unwrap_or(f64::INFINITY) / 2.0).max(1.0);
        let scale: Vec<f64> = others.iter().map(|&k| 1.0 / (2.0 * inst.rho(k))).collect();
        let alpha: Vec<Fixed> = others.iter().map(|&k| &c[k] / &c[p]).collect();
        let beta: Vec<Fixed> = others.iter().zip(&alpha).map(|(&k, a)| (&(&d[p] * a) - &d[k]).rem_centered(&one)).collect();
        let spread = e_half * alpha.iter().zip(&scale).map(|(a, s)| a.to_f64() * s).fold(1.0, f64::max);
        let precision = if opts.precision == Precision::High || spread > 1e12 { Precision::High } else { Precision::Standard };
        if spread > 1e28 {
            return Err(Error::NotFound { bound: t_bound });
        }
        attempt.precision = precision;
        let geometry = Geometry { others: &others, alpha: &alpha, beta: &beta, scale: &scale, e_mid: &e_mid, e_half };
        let (found, nodes, truncated) = match precision {
            Precision::Standard => near_points::<f64>(&geometry, opts)?,
            Precision::High => near_points::<TwoFloat>(&geometry, opts)?,
        };
        attempt.nodes = nodes;
        attempt.truncated = truncated;
        for e in found {
            let e = BigInt::from(e);
            if e >= lo && e <= hi && !eps.contains(&e) {
                eps.push(e);
            }
        }
    }

    let rho_s: Vec<f64> = slots.iter().map(|&k| inst.rho(k)).collect();
    let c_s: Vec<f64> = slots.iter().map(|&k| c[k].to_f64()).collect();
    let cands: Vec<TauCandidate> = eps
        .par_iter()
        .map(|e| {
            let tau0 = &(&Fixed::from_int(e.clone()) + &d[p]) / &c[p];
            let base: Vec<f64> = slots.iter().map(|&k| (&(&tau0 * &c[k]) - &d[k]).rem_centered(&one).to_f64()).collect();
            let t0f = tau0.to_f64();
            let width = rho_p / c[p].to_f64();
            let lo_d = (-width).max(-t0f);
            let hi_d = width.min(t_bound - t0f);
            let delta = if lo_d <= hi_d { polish(&base, &c_s, &rho_s, lo_d, hi_d) } else { 0.0 };
            let polished = inst.candidate(&tau0 + &Fixed::from_f64(delta).expect("finite"), Method::Lattice);
            let raw = inst.candidate(tau0, Method::Lattice);
            if raw.max_residual <= polished.max_residual { raw } else { polished }
        })
        .collect();
    out.extend(cands.into_iter().filter(|c| c.tau >= 0.0 && c.tau <= t_bound));
    Ok(finish(inst, out, attempt))
}

fn finish(inst: &KroneckerInstance, mut cands: Vec<TauCandidate>, mut attempt: LatticeAttempt) -> CandidateSet {
    cands.sort_by(|a, b| a.tau_exact.cmp(&b.tau_exact));
    cands.dedup_by(|a, b| a.tau_exact == b.tau_exact);
    attempt.candidates = cands.len();
    attempt.passing = cands.iter().filter(|c| c.passes(inst)).count();
    CandidateSet { candidates: cands, attempt }
}

struct Geometry<'a> {
    others: &'a [usize],
    alpha: &'a [Fixed],
    beta: &'a [Fixed],
    scale: &'a [f64],
    e_mid: &'a Fixed,
    e_half: f64,
}

fn to_scalar<S: Scalar>(x: &Fixed) -> S {
    let hi = x.to_f64();
    let lo = (x - &Fixed::from_f64(hi).expect("finite")).to_f64();
    S::from_hi_lo(hi, lo)
}

/// Pivot coefficients e_p of lattice points near the target.
fn near_points<S: Scalar>(g: &Geometry<'_>, opts: &LatticeOptions) -> Result<(Vec<i128>, u64, bool)> {
    let n = g.others.len() + 1;
    let e_half = S::from_f64(g.e_half);
    // Row 0 carries e_p, row i carries e_{others[i-1]}; last coordinate tracks e_p.
    let mut rows: Vec<Vec<S>> = Vec::with_capacity(n);
    let mut r0: Vec<S> = g.alpha.iter().zip(g.scale).map(|(a, &s)| to_scalar::<S>(a) * S::from_f64(s)).collect();
    r0.push(S::from_f64(1.0) / e_half);
    rows.push(r0);
    for i in 0..g.others.len() {
        let mut r = vec![S::zero(); n];
        r[i] = -S::from_f64(g.scale[i]);
        rows.push(r);
    }
    let mut target: Vec<S> = g.beta.iter().zip(g.scale).map(|(b, &s)| -(to_scalar::<S>(b) * S::from_f64(s))).collect();
    target.push(to_scalar::<S>(g.e_mid) / e_half);

    let red = lll_with_transform(&LatticeBasis::new(rows)?)?;
    let babai = closest_vector_approx(&red.basis, &target)?;
    let full = (n as f64).sqrt() * opts.radius_scale;
    let radius = if n <= 4 || babai.distance >= full { full } else { (babai.distance * 1.5).min(full) };
    let en = enumerate_near(&red.basis, &target, radius, opts.node_budget, opts.max_points)?;
    let mut pts = vec![babai.coeffs];
    pts.extend(en.points.into_iter().map(|(c, _)| c));
    let mut out = Vec::with_capacity(pts.len());
    for coeffs in pts {
        // Coordinates in the input basis: Σ_i coeffs_i·T_i0.
        let mut e0: i128 = 0;
        for (ci, ti) in coeffs.iter().zip(&red.transform) {
            e0 = ci.checked_mul(ti[0]).and_then(|v| e0.checked_add(v)).ok_or(Error::Overflow)?;
        }
        out.push(e0);
    }
    Ok((out, en.nodes, en.truncated))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub candidate: Option<TauCandidate>,
    pub attempts: Vec<LatticeAttempt>,
}

/// Smallest passing τ found, escalating the search bound.
pub fn solve_lattice_report(inst: &KroneckerInstance, opts: &LatticeOptions) -> Result<LatticeReport> {
    let mut attempts = Vec::new();
    for t in opts.schedule() {
        let set = match lattice_candidates(inst, t, opts) {
            Ok(s) => s,
            Err(Error::NotFound { .. }) => break,
            Err(e) => return Err(e),
        };
        attempts.push(set.attempt.clone());
        if let Some(c) = set.candidates.into_iter().find(|c| c.passes(inst)) {
            return Ok(LatticeReport { candidate: Some(c), attempts });
        }
    }
    Ok(LatticeReport { candidate: None, attempts })
}

pub fn solve_lattice(inst: &KroneckerInstance, opts: &LatticeOptions) -> Result<TauCandidate> {
    let report = solve_lattice_report(inst, opts)?;
    let bound = report.attempts.last().map_or(opts.t_start, |a| a.t_bound);
    report.candidate.ok_or(Error::NotFound { bound })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowHit {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    pub hit: Option<TauCandidate>,
}

/// Window length for relative-density checks: ten mean return times.
pub fn relative_density_length(inst: &KroneckerInstance) -> f64 {
    10.0 * inst.mean_return_time()
}

/// One grid search per window [iL, (i+1)L), i < count.
pub fn enumerate_relatively_dense(inst: &KroneckerInstance, window_len: f64, count: usize) -> Result<Vec<WindowHit>> {
    if !(window_len > 0.0) {
        return Err(Error::InvalidArgument(format!("window length must be positive, got {window_len}")));
    }
    let step = inst.max_grid_step();
    (0..count)
        .into_par_iter()
        .map(|i| {
            let start = i as f64 * window_len;
            let end = start + window_len;
            let hits = solve_grid(inst, (start, end), step)?;
            Ok(WindowHit { index: i, start, end, hit: hits.into_iter().find(|h| h.tau < end) })
        })
        .collect()
}
