//! ζ(s) and the Liouville series for Re s > 1 with rigorous error bounds,
//! Euler-product infimum formulas, and the translate demos built on them.

use std::f64::consts::PI;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::exactnum::Fixed;
use crate::expsum::{ComplexJson, ExpSum, Kind, Strip};
use crate::frequency::prime_log_system;
use crate::kronecker::{lattice_candidates, KroneckerInstance, LatticeAttempt, LatticeOptions, Method, TauCandidate};
use crate::translate::{find_translate, EpsMode, TranslateOptions, TranslateResult};

/// Evaluations need Re s ≥ 1 + DELTA_MIN.
pub const DELTA_MIN: f64 = 0.05;
/// Most terms a single evaluation may sum.
pub const TERM_CEILING: u64 = 10_000_000;
pub const DEFAULT_SIEVE_BOUND: u64 = 10_000_000;
/// Largest sieve the u32 table supports comfortably.
const SIEVE_MAX: u64 = 400_000_000;

struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    fn new(bound: u64) -> Sieve {
        let n = bound as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                let mut j = i.saturating_mul(i);
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Sieve { spf }
    }

    fn bound(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    fn spf(&self, n: usize) -> usize {
        self.spf[n] as usize
    }
}

static SIEVE: RwLock<Option<Arc<Sieve>>> = RwLock::new(None);

fn sieve() -> Arc<Sieve> {
    if let Some(s) = SIEVE.read().expect("sieve lock").as_ref() {
        return s.clone();
    }
    let mut w = SIEVE.write().expect("sieve lock");
    w.get_or_insert_with(|| Arc::new(Sieve::new(DEFAULT_SIEVE_BOUND))).clone()
}

fn sieve_covering(n: u64) -> Result<Arc<Sieve>> {
    let s = sieve();
    if s.bound() >= n {
        return Ok(s);
    }
    resize_sieve(n)?;
    Ok(sieve())
}

/// Current sieve bound (the default if the sieve is not built yet).
pub fn sieve_bound() -> u64 {
    SIEVE.read().expect("sieve lock").as_ref().map_or(DEFAULT_SIEVE_BOUND, |s| s.bound())
}

/// Rebuild the smallest-prime-factor sieve up to `bound`.
pub fn resize_sieve(bound: u64) -> Result<()> {
    if !(2..=SIEVE_MAX).contains(&bound) {
        return Err(Error::InvalidArgument(format!("sieve bound must lie in [2, {SIEVE_MAX}], got {bound}")));
    }
    *SIEVE.write().expect("sieve lock") = Some(Arc::new(Sieve::new(bound)));
    Ok(())
}

/// λ(n) = (−1)^{Ω(n)}.
pub fn liouville(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("liouville needs n >= 1".into()));
    }
    let s = sieve();
    if n > s.bound() {
        return Err(Error::BeyondSieve { n, bound: s.bound() });
    }
    let mut v = n as usize;
    let mut sign = 1i8;
    while v > 1 {
        v /= s.spf(v);
        sign = -sign;
    }
    Ok(sign)
}

fn two_float(x: &Fixed) -> TwoFloat {
    let hi = x.to_f64();
    let lo = (x - &Fixed::from_f64(hi).expect("finite")).to_f64();
    TwoFloat::new_add(hi, lo)
}

static TWO_PI_TF: LazyLock<TwoFloat> = LazyLock::new(|| two_float(&Fixed::two_pi()));

/// ln p for every prime up to some bound, in double-double.
struct PrimeLogs {
    primes: Vec<u32>,
    logs: Vec<TwoFloat>,
}

static PRIME_LOGS: LazyLock<RwLock<Arc<PrimeLogs>>> = LazyLock::new(|| RwLock::new(Arc::new(PrimeLogs { primes: Vec::new(), logs: Vec::new() })));

/// Primes below this get their log straight from fixed point.
const DIRECT_LOG_LIMIT: u32 = 1000;

fn prime_logs(upto: u64, sieve: &Sieve) -> Arc<PrimeLogs> {
    let have = PRIME_LOGS.read().expect("log lock").clone();
    if have.primes.last().is_some_and(|&p| p as u64 >= upto) || (upto < 2) {
        return have;
    }
    let mut w = PRIME_LOGS.write().expect("log lock");
    let mut primes = w.primes.clone();
    let mut logs = w.logs.clone();
    let start = primes.last().map_or(2, |&p| p as usize + 1);
    let covered = primes.last().map_or(1, |&p| p as u64);
    if covered >= upto {
        return w.clone();
    }
    for p in start..=(upto as usize) {
        if sieve.spf(p) != p {
            continue;
        }
        let lp = if (p as u32) < DIRECT_LOG_LIMIT {
            two_float(&Fixed::ln_int(&BigInt::from(p)).expect("p > 0"))
        } else {
            // ln p = ln(p − 1) + 2·atanh(1/(2p − 1)).
            let mut v = p - 1;
            let mut acc = TwoFloat::from(0.0);
            while v > 1 {
                let q = sieve.spf(v);
                let idx = primes.binary_search(&(q as u32)).expect("smaller prime already logged");
                acc += logs[idx];
                v /= q;
            }
            let x = TwoFloat::from(1.0) / TwoFloat::from((2 * p - 1) as f64);
            let x2 = x * x;
            let mut term = x;
            let mut series = x;
            let mut k = 1.0;
            loop {
                term *= x2;
                let t = term / (2.0 * k + 1.0);
                if t.hi().abs() < 1e-34 {
                    break;
                }
                series += t;
                k += 1.0;
            }
            acc + series * 2.0
        };
        primes.push(p as u32);
        logs.push(lp);
    }
    *w = Arc::new(PrimeLogs { primes, logs });
    w.clone()
}

/// θ_n = t·ln n mod 2π for n ≤ upto, built from prime phases.
fn log_phases(t: &Fixed, upto: usize, sieve: &Sieve) -> Vec<f64> {
    let mut phase = vec![0.0f64; upto + 1];
    if t.is_zero() {
        return phase;
    }
    let logs = prime_logs(upto as u64, sieve);
    let tt = two_float(t);
    for (p, lp) in logs.primes.iter().zip(&logs.logs) {
        let p = *p as usize;
        if p > upto {
            break;
        }
        let prod = tt * *lp;
        let k = (prod / *TWO_PI_TF).hi().floor();
        let r = prod - *TWO_PI_TF * k;
        phase[p] = (r.hi() + r.lo()).rem_euclid(2.0 * PI);
    }
    for n in 4..=upto {
        let q = sieve.spf(n);
        if q != n {
            phase[n] = (phase[q] + phase[n / q]).rem_euclid(2.0 * PI);
        }
    }
    phase
}

/// Σ_{n≤N} w(n)·n^{−s} with exact-phase terms; also Σ|terms|.
fn dirichlet_sum(s: Complex64, t_exact: &Fixed, n_max: usize, sieve: &Sieve, weight: impl Fn(usize) -> f64) -> (Complex64, f64, Vec<f64>) {
    let phase = log_phases(t_exact, n_max, sieve);
    let (mut re, mut im) = (TwoFloat::from(0.0), TwoFloat::from(0.0));
    let mut abs = 0.0;
    for (n, ph) in phase.iter().enumerate().take(n_max + 1).skip(1) {
        let w = weight(n);
        if w == 0.0 {
            continue;
        }
        let mag = w * (n as f64).powf(-s.re);
        re += mag * ph.cos();
        im -= mag * ph.sin();
        abs += mag.abs();
    }
    (Complex64::new(re.hi() + re.lo(), im.hi() + im.lo()), abs, phase)
}

/// Accumulated rounding in a sum of `n` terms with total modulus `abs`.
fn rounding_bound(n: usize, abs: f64) -> f64 {
    f64::EPSILON * (8.0 * (n.max(2) as f64).log2() + 32.0) * abs
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    /// ζ(2s)/ζ(s).
    pub ratio: ComplexJson,
    pub ratio_error: f64,
    /// |value − ratio|.
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub value: ComplexJson,
    pub error_bound: f64,
    pub terms_used: u64,
    pub bound_formula: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl CertifiedValue {
    pub fn complex(&self) -> Complex64 {
        self.value.into()
    }

    pub fn abs(&self) -> f64 {
        self.complex().norm()
    }
}

fn check_point(s: Complex64, tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    if !s.re.is_finite() || !s.im.is_finite() || s.re < 1.0 + DELTA_MIN {
        return Err(Error::InvalidArgument(format!("need Re s >= {}, got {}", 1.0 + DELTA_MIN, s.re)));
    }
    Ok(())
}

/// ζ(s) = Σ_{n<N} n^{−s} + N^{1−s}/(s−1) + N^{−s}/2 + R with
/// |R| ≤ |s|/(12N^{σ+1}) + |s(s+1)|/(12(σ+1)N^{σ+1}).
pub fn zeta_eval(s: Complex64, tol: f64) -> Result<CertifiedValue> {
    check_point(s, tol)?;
    let sigma = s.re;
    let c = s.norm() / 12.0 + (s * (s + 1.0)).norm() / (12.0 * (sigma + 1.0));
    let remainder = |n: f64| c * n.powf(-(sigma + 1.0));
    let n = ((c / (0.9 * tol)).powf(1.0 / (sigma + 1.0)).ceil() as u64).max(2);
    if n > TERM_CEILING {
        return Err(Error::ToleranceUnreachable { tol, terms: TERM_CEILING, achievable: remainder(TERM_CEILING as f64) });
    }
    let nn = n as usize;
    let sieve = sieve_covering(n)?;
    let t = Fixed::from_f64(s.im)?;
    let (partial, abs, phase) = dirichlet_sum(s, &t, nn - 1, &sieve, |_| 1.0);
    // log_phases only went to N − 1; the correction terms need θ_N.
    let theta_n = log_phases_single(&t, nn, &sieve, &phase);
    let n_pow = Complex64::from_polar((nn as f64).powf(-sigma), -theta_n);
    let value = partial + n_pow * (nn as f64) / (s - 1.0) + n_pow * 0.5;
    let error_bound = remainder(nn as f64) + rounding_bound(nn, abs + 2.0 * n_pow.norm() * nn as f64);
    if error_bound > tol {
        return Err(Error::ToleranceUnreachable { tol, terms: n, achievable: error_bound });
    }
    Ok(CertifiedValue {
        value: value.into(),
        error_bound,
        terms_used: n,
        bound_formula: "|s|/(12 N^(σ+1)) + |s(s+1)|/(12 (σ+1) N^(σ+1)) + rounding".into(),
        cross_check: None,
    })
}

fn log_phases_single(t: &Fixed, n: usize, sieve: &Sieve, phase: &[f64]) -> f64 {
    if t.is_zero() {
        return 0.0;
    }
    let q = sieve.spf(n);
    if q != n && n / q < phase.len() && q < phase.len() {
        return (phase[q] + phase[n / q]).rem_euclid(2.0 * PI);
    }
    let logs = prime_logs(n as u64, sieve);
    let idx = logs.primes.binary_search(&(n as u32)).expect("n is prime");
    let prod = two_float(t) * logs.logs[idx];
    let k = (prod / *TWO_PI_TF).hi().floor();
    let r = prod - *TWO_PI_TF * k;
    (r.hi() + r.lo()).rem_euclid(2.0 * PI)
}

/// Bound on |a/b − â/b̂| from |a − â| ≤ ea, |b − b̂| ≤ eb.
fn quotient_error(a: Complex64, ea: f64, b: Complex64, eb: f64) -> f64 {
    let denom = b.norm() - eb;
    if denom <= 0.0 {
        return f64::INFINITY;
    }
    (ea + (a / b).norm() * eb) / denom
}

/// ζ(2s)/ζ(s) with its error.
pub fn zeta_ratio(s: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    let num = zeta_eval(2.0 * s, tol)?;
    let den = zeta_eval(s, tol)?;
    let (a, b) = (num.complex(), den.complex());
    Ok((a / b, quotient_error(a, num.error_bound, b, den.error_bound)))
}

/// Σ λ(n) n^{−s} truncated at N with tail ≤ N^{1−σ}/(σ−1); carries a
/// cross-check against ζ(2s)/ζ(s).
pub fn liouville_series_eval(s: Complex64, tol: f64) -> Result<CertifiedValue> {
    check_point(s, tol)?;
    let sigma = s.re;
    let tail = |n: f64| n.powf(1.0 - sigma) / (sigma - 1.0);
    let n = ((1.0 / ((sigma - 1.0) * 0.9 * tol)).powf(1.0 / (sigma - 1.0)).ceil().max(2.0)).min(1e18) as u64;
    if n > TERM_CEILING {
        return Err(Error::ToleranceUnreachable { tol, terms: TERM_CEILING, achievable: tail(TERM_CEILING as f64) });
    }
    let nn = n as usize;
    let sieve = sieve_covering(n)?;
    let mut lam = vec![0i8; nn + 1];
    lam[1] = 1;
    for k in 2..=nn {
        lam[k] = -lam[k / sieve.spf(k)];
    }
    let t = Fixed::from_f64(s.im)?;
    let (value, abs, _) = dirichlet_sum(s, &t, nn, &sieve, |k| lam[k] as f64);
    let error_bound = tail(nn as f64) + rounding_bound(nn, abs);
    if error_bound > tol {
        return Err(Error::ToleranceUnreachable { tol, terms: n, achievable: error_bound });
    }
    let (ratio, ratio_error) = zeta_ratio(s, (tol * 1e-2).max(1e-12))?;
    Ok(CertifiedValue {
        value: value.into(),
        error_bound,
        terms_used: n,
        bound_formula: "N^(1-σ)/(σ-1) + rounding".into(),
        cross_check: Some(CrossCheck { ratio: ratio.into(), ratio_error, gap: (value - ratio).norm() }),
    })
}

fn prefix_sum(n: u64, coeff: impl Fn(u64) -> Result<f64>) -> Result<ExpSum> {
    let sys = Arc::new(prime_log_system(n)?.system);
    let coeffs = (1..=n).map(|k| Ok(Complex64::new(coeff(k)?, 0.0))).collect::<Result<_>>()?;
    ExpSum::new(sys, coeffs, Kind::Complex)
}

/// Σ_{n≤N} n^{−s} as an exponential sum over the prime-log system.
pub fn zeta_prefix(n: u64) -> Result<ExpSum> {
    prefix_sum(n, |_| Ok(1.0))
}

/// Σ_{n≤N} λ(n) n^{−s} over the same system as [`zeta_prefix`].
pub fn liouville_prefix(n: u64) -> Result<ExpSum> {
    prefix_sum(n, |k| liouville(k).map(f64::from))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfimumReport {
    pub sigma0: f64,
    /// ζ(2σ0)/ζ(σ0).
    pub ratio_value: f64,
    pub ratio_error: f64,
    /// Π_{p≤P} 1/(1+p^{−σ0}).
    pub euler_partial: f64,
    #[serde(rename = "P")]
    pub p_cutoff: u64,
    pub prime_count: usize,
    /// Σ_{p>P} p^{−σ0} ≤ P^{−σ0} + P^{1−σ0}/(2(σ0−1)) (odd integers above P).
    pub prime_tail_sum: f64,
    /// euler_partial·(1 − e^{−prime_tail_sum}) + ratio_error + rounding.
    pub tail_bound: f64,
}

pub fn infimum_report(sigma0: f64, p_cutoff: u64, tol: f64) -> Result<InfimumReport> {
    if !(sigma0 > 1.0) || !sigma0.is_finite() {
        return Err(Error::InvalidArgument(format!("sigma0 must exceed 1, got {sigma0}")));
    }
    if p_cutoff < 2 {
        return Err(Error::InvalidArgument(format!("prime cutoff must be at least 2, got {p_cutoff}")));
    }
    let (ratio, ratio_error) = zeta_ratio(Complex64::new(sigma0, 0.0), tol)?;
    let sieve = sieve_covering(p_cutoff)?;
    let mut log_sum = TwoFloat::from(0.0);
    let mut count = 0usize;
    for p in 2..=(p_cutoff as usize) {
        if sieve.spf(p) == p {
            log_sum += (p as f64).powf(-sigma0).ln_1p();
            count += 1;
        }
    }
    let euler_partial = (-(log_sum.hi() + log_sum.lo())).exp();
    let pc = p_cutoff as f64;
    let s = pc.powf(-sigma0) + pc.powf(1.0 - sigma0) / (2.0 * (sigma0 - 1.0));
    let rounding = 4.0 * f64::EPSILON * (count as f64 + 2.0) * euler_partial;
    let tail_bound = euler_partial * -(-s).exp_m1() + ratio_error + rounding;
    Ok(InfimumReport {
        sigma0,
        ratio_value: ratio.re,
        ratio_error,
        euler_partial,
        p_cutoff,
        prime_count: count,
        prime_tail_sum: s,
        tail_bound,
    })
}

/// Σ_{n>N} n^{−σ} ≤ N^{1−σ}/(σ−1).
pub fn series_tail(n: u64, sigma: f64) -> f64 {
    (n as f64).powf(1.0 - sigma) / (sigma - 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiouvilleDemo {
    pub n: u64,
    pub strip: Strip,
    pub eps: f64,
    pub translate: TranslateResult,
    pub tail_zeta: f64,
    pub tail_liouville: f64,
    /// eps + both tails: bound on sup|ζ(s+iτ) − ζ_λ(s)| over the strip.
    pub bracket: f64,
    /// Same with the achieved polynomial bound in place of eps.
    pub achieved_bracket: f64,
}

/// Lattice search with per-generator tolerances.
pub fn liouville_demo_options() -> TranslateOptions {
    TranslateOptions { method: Method::Lattice, eps_mode: EpsMode::Adaptive, ..Default::default() }
}

pub fn approximate_liouville_by_translate(n: u64, strip: &Strip, eps: f64, opts: &TranslateOptions) -> Result<LiouvilleDemo> {
    if !(strip.sigma0 > 1.0) {
        return Err(Error::InvalidArgument(format!("strip must lie in Re s > 1, got sigma0 = {}", strip.sigma0)));
    }
    let z = zeta_prefix(n)?;
    let l = liouville_prefix(n)?;
    let translate = find_translate(&z, &l, strip, eps, opts)?;
    let tail = series_tail(n, strip.sigma0);
    Ok(LiouvilleDemo {
        n,
        strip: *strip,
        eps,
        tail_zeta: tail,
        tail_liouville: tail,
        bracket: eps + 2.0 * tail,
        achieved_bracket: translate.verification.coeff_bound + 2.0 * tail,
        translate,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallZetaOptions {
    /// Align phases of primes up to this bound.
    pub prime_bound: u64,
    pub eps1: f64,
    /// Largest t searched; at tol 1e-4 and σ0 = 1.5 certified evaluation
    /// stays under the term ceiling up to about 1e7.
    pub t_budget: f64,
    pub t_start: f64,
    /// ζ evaluation tolerance.
    pub tol: f64,
    pub max_evals: usize,
}

impl Default for SmallZetaOptions {
    fn default() -> Self {
        SmallZetaOptions { prime_bound: 13, eps1: 0.02, t_budget: 1e7, t_start: 1e3, tol: 1e-4, max_evals: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaSample {
    pub t: f64,
    pub abs: f64,
    pub error_bound: f64,
    /// Largest phase residual (in turns) of the aligned primes.
    pub alignment: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallZetaReport {
    pub sigma0: f64,
    pub primes: Vec<u64>,
    pub options: SmallZetaOptions,
    /// ζ(2σ0)/ζ(σ0) and its error: the strict lower bound for |ζ| on Re s ≥ σ0.
    pub floor: f64,
    pub floor_error: f64,
    pub samples: Vec<ZetaSample>,
    pub running_min: Vec<f64>,
    pub min_abs: Option<f64>,
    pub min_t: Option<f64>,
    /// Every sample satisfies |ζ| > floor − floor_error − error_bound.
    pub floor_respected: bool,
    pub attempts: Vec<LatticeAttempt>,
    /// No candidate met ε₁ within the t budget.
    pub budget_exhausted: bool,
    pub note: String,
}

/// Directed search for small |ζ(σ0+it)|: pick t with t·log p ≡ π (mod 2π)
/// for the small primes, then evaluate ζ there.
pub fn small_zeta_search(sigma0: f64, opts: &SmallZetaOptions) -> Result<SmallZetaReport> {
    if !(sigma0 > 1.0) {
        return Err(Error::InvalidArgument(format!("sigma0 must exceed 1, got {sigma0}")));
    }
    let primes: Vec<u64> = crate::frequency::primes_up_to(opts.prime_bound);
    if primes.is_empty() {
        return Err(Error::InvalidArgument(format!("no primes up to {}", opts.prime_bound)));
    }
    let (ratio, ratio_error) = zeta_ratio(Complex64::new(sigma0, 0.0), 1e-10)?;
    let two_pi = Fixed::two_pi();
    let c = primes.iter().map(|&p| &Fixed::ln_int(&BigInt::from(p)).expect("p > 0") / &two_pi).collect();
    let half = Fixed::from_int(1).div_int(&BigInt::from(2));
    let inst = KroneckerInstance::from_fixed(c, vec![half; primes.len()], opts.eps1)?;
    let lattice = LatticeOptions { t_start: opts.t_start, t_max: opts.t_budget, growth: 10.0, ..Default::default() };

    let mut attempts = Vec::new();
    let mut pool: Vec<TauCandidate> = Vec::new();
    for t in lattice.schedule() {
        let set = match lattice_candidates(&inst, t, &lattice) {
            Ok(s) => s,
            Err(Error::NotFound { .. }) => break,
            Err(e) => return Err(e),
        };
        attempts.push(set.attempt);
        for c in set.candidates {
            if c.tau > 0.0 && !pool.iter().any(|p| p.tau_exact == c.tau_exact) {
                pool.push(c);
            }
        }
    }
    // Best-aligned candidates first; the ones meeting ε₁ lead.
    pool.sort_by(|a, b| a.max_residual.total_cmp(&b.max_residual));
    pool.truncate(opts.max_evals);
    let budget_exhausted = !pool.iter().any(|c| c.passes(&inst));
    let chosen = pool;
    let mut samples = Vec::with_capacity(chosen.len());
    for cand in &chosen {
        let v = zeta_eval(Complex64::new(sigma0, cand.tau), opts.tol)?;
        samples.push(ZetaSample { t: cand.tau, abs: v.abs(), error_bound: v.error_bound, alignment: cand.max_residual });
    }
    let mut running_min = Vec::with_capacity(samples.len());
    let mut best: Option<(f64, f64)> = None;
    for s in &samples {
        if best.is_none_or(|(a, _)| s.abs < a) {
            best = Some((s.abs, s.t));
        }
        running_min.push(best.expect("set above").0);
    }
    let floor_respected = samples.iter().all(|s| s.abs > ratio.re - ratio_error - s.error_bound);
    Ok(SmallZetaReport {
        sigma0,
        primes,
        options: opts.clone(),
        floor: ratio.re,
        floor_error: ratio_error,
        samples,
        running_min,
        min_abs: best.map(|b| b.0),
        min_t: best.map(|b| b.1),
        floor_respected,
        attempts,
        budget_exhausted,
        note: "finite search: minima only; no claim that the infimum over t is approached or that it tends to 0".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_lambda(mut n: u64) -> i8 {
        let mut omega = 0;
        let mut d = 2;
        while d * d <= n {
            while n % d == 0 {
                n /= d;
                omega += 1;
            }
            d += 1;
        }
        if n > 1 {
            omega += 1;
        }
        if omega % 2 == 0 { 1 } else { -1 }
    }

    #[test]
    fn liouville_first_values() {
        let got: Vec<i8> = (1..=10).map(|n| liouville(n).unwrap()).collect();
        assert_eq!(got, vec![1, -1, -1, 1, -1, 1, -1, -1, 1, 1]);
        for n in 1..2000 {
            assert_eq!(liouville(n).unwrap(), trial_division_lambda(n), "n={n}");
        }
        assert_eq!(liouville(7919).unwrap(), -1);
        assert!(matches!(liouville(sieve_bound() + 1), Err(Error::BeyondSieve { .. })));
        assert!(liouville(0).is_err());
    }

    #[test]
    fn zeta_closed_forms() {
        let z2 = zeta_eval(Complex64::new(2.0, 0.0), 1e-8).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() <= z2.error_bound + 1e-15);
        assert!(z2.error_bound <= 1e-8 && z2.value.im == 0.0);
        let z4 = zeta_eval(Complex64::new(4.0, 0.0), 1e-12).unwrap();
        assert!((z4.value.re - PI.powi(4) / 90.0).abs() <= z4.error_bound + 1e-15);
    }

    #[test]
    fn zeta_high_t() {
        let v = zeta_eval(Complex64::new(2.0, 1e6), 1e-6).unwrap();
        assert!(v.abs() <= PI * PI / 6.0);
        assert!(v.error_bound <= 1e-6);
        // Conjugate symmetry.
        let w = zeta_eval(Complex64::new(2.0, -1e6), 1e-6).unwrap();
        assert!((v.complex().conj() - w.complex()).norm() < 1e-12);
    }

    #[test]
    fn zeta_rejects_near_one() {
        assert!(zeta_eval(Complex64::new(1.01, 0.0), 1e-3).is_err());
        assert!(matches!(zeta_eval(Complex64::new(1.06, 1e7), 1e-12), Err(Error::ToleranceUnreachable { .. })));
        assert!(zeta_eval(Complex64::new(2.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn liouville_series_identity() {
        let v = liouville_series_eval(Complex64::new(2.0, 0.0), 1e-6).unwrap();
        let cc = v.cross_check.clone().unwrap();
        assert!((cc.ratio.re - PI * PI / 15.0).abs() < 1e-9);
        assert!(cc.gap <= v.error_bound + cc.ratio_error);
        assert!(v.error_bound <= 1e-6);
    }

    #[test]
    fn prefixes() {
        let z = zeta_prefix(3).unwrap();
        let v = z.evaluate(Complex64::new(2.0, 0.0));
        assert!((v.re - 49.0 / 36.0).abs() < 1e-14);
        let l = liouville_prefix(10).unwrap();
        assert!(l.coeffs().iter().all(|c| c.re.abs() == 1.0 && c.im == 0.0));
        assert!(zeta_prefix(1).is_err());
    }

    #[test]
    fn infimum_sigma2() {
        let r = infimum_report(2.0, 100_000, 1e-12).unwrap();
        assert!((r.ratio_value - PI * PI / 15.0).abs() < 1e-9);
        assert!((r.ratio_value - r.euler_partial).abs() <= r.tail_bound);
        assert!((r.ratio_value - r.euler_partial).abs() < 1e-6);
        assert_eq!(r.prime_count, 9592);
        assert!(infimum_report(1.0, 100, 1e-9).is_err());
    }

    #[test]
    fn infimum_monotone() {
        let vals: Vec<f64> = [1.2, 1.5, 2.0, 3.0].iter().map(|&s| infimum_report(s, 1000, 1e-6).unwrap().ratio_value).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]), "{vals:?}");
        assert!((vals[1] - 0.46016).abs() < 1e-4);
    }
}
