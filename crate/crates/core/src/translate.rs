//! Vertical translates realizing an equivalence: given f1 ∼ f2 on a strip,
//! find τ with |f1(s+iτ) − f2(s)| < ε uniformly, and certify it.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::equivalence::{bohr_equivalent, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::exactnum::Fixed;
use crate::expsum::{bochner_fejer, bochner_fejer_factors, coeff_bound, sup_norm_diff, ExpSum, GridSpec, Strip, SupNormReport};
use crate::kronecker::{lattice_candidates, solve_grid, KroneckerInstance, LatticeOptions, Method};

/// Multipliers tried, largest first, on the adaptive per-coordinate tolerances.
pub const ADAPTIVE_SCALES: [f64; 4] = [8.0, 4.0, 2.0, 1.0];

/// Per-coordinate tolerance for generators no frequency uses.
const FREE_SLOT: f64 = 0.51;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslateBudget {
    /// lcm of all coefficient denominators.
    pub q: u64,
    /// max |a_j|.
    pub a: f64,
    /// max |r_{j,k}|.
    pub r: f64,
    /// max_j max(e^{λ_j σ0}, e^{λ_j σ1}).
    #[serde(rename = "E")]
    pub e: f64,
    pub m: usize,
    pub n: usize,
    pub eps: f64,
    pub eps1: f64,
}

/// ε₁ = (1/(2πq))·(ε/2)/(a·m·n·r·E).
pub fn budget_from(f1: &ExpSum, f2: &ExpSum, strip: &Strip, eps: f64) -> Result<TranslateBudget> {
    f1.check_comparable(f2)?;
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let sys = f1.system();
    let q = sys.lcm_den().to_u64().ok_or(Error::Overflow)?;
    let a = f1.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if a == 0.0 {
        return Err(Error::InvalidArgument("f1 has all coefficients zero".into()));
    }
    let r = sys.max_abs_coeff();
    if r == 0.0 {
        return Err(Error::InvalidArgument("every frequency is zero".into()));
    }
    let e = f1.strip_weights(strip).into_iter().fold(0.0, f64::max);
    let (m, n) = (sys.n_gens(), sys.n_freqs());
    let eps1 = (eps / 2.0) / (2.0 * PI * q as f64 * a * m as f64 * n as f64 * r * e);
    Ok(TranslateBudget { q, a, r, e, m, n, eps, eps1 })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsMode {
    /// The uniform ε₁ of the budget.
    #[default]
    Uniform,
    /// Per-generator tolerances weighted by how much each generator moves the
    /// coefficients; candidates are accepted on the exact coefficient bound.
    Adaptive,
}

impl std::str::FromStr for EpsMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(EpsMode::Uniform),
            "adaptive" => Ok(EpsMode::Adaptive),
            _ => Err(Error::Parse(format!("unknown eps mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslateOptions {
    pub method: Method,
    pub eps_mode: EpsMode,
    /// First grid window is [0, grid_t_start]; later windows grow tenfold.
    pub grid_t_start: f64,
    pub grid_t_max: f64,
    pub lattice: LatticeOptions,
    pub sup_grid: GridSpec,
    pub equiv_tol: f64,
}

impl Default for TranslateOptions {
    fn default() -> Self {
        TranslateOptions {
            method: Method::Grid,
            eps_mode: EpsMode::Uniform,
            grid_t_start: 1e3,
            grid_t_max: 1e6,
            lattice: LatticeOptions::default(),
            sup_grid: GridSpec::default(),
            equiv_tol: DEFAULT_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchStep {
    pub t_bound: f64,
    /// Adaptive multiplier, absent in uniform mode.
    pub scale: Option<f64>,
    pub candidates: usize,
    pub accepted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslateResult {
    pub tau: f64,
    pub tau_exact: Fixed,
    pub budget: TranslateBudget,
    pub eps_mode: EpsMode,
    pub method: Method,
    pub witness: Vec<f64>,
    /// Instance at the accepted scale (uniform mode: the budget ε₁).
    pub instance: KroneckerInstance,
    pub kronecker_residuals: Vec<f64>,
    pub verification: SupNormReport,
    pub passed: bool,
    pub search: Vec<SearchStep>,
}

/// c_k = g_k/(2πq), d_k = x_k/(2πq).
pub fn kronecker_instance(f1: &ExpSum, witness: &[f64], eps1: f64) -> Result<KroneckerInstance> {
    let q = Fixed::from_int(f1.system().lcm_den());
    let unit = &Fixed::two_pi() * &q;
    let c = f1.system().generators().iter().map(|g| &g.value / &unit).collect();
    let d = witness.iter().map(|x| Ok(&Fixed::from_f64(*x)? / &unit)).collect::<Result<_>>()?;
    KroneckerInstance::from_fixed(c, d, eps1)
}

/// ρ_k = min(0.49, scale·(ε/2)/(2πq·m·w_k)) with w_k = Σ_j |a_j|·E_j·|r_{j,k}|.
pub fn adaptive_tolerances(f1: &ExpSum, strip: &Strip, budget: &TranslateBudget, scale: f64) -> Vec<f64> {
    let sys = f1.system();
    let e = f1.strip_weights(strip);
    (0..sys.n_gens())
        .map(|k| {
            let w: f64 = sys.freqs().iter().zip(f1.coeffs()).zip(&e).map(|((r, a), ej)| a.norm() * ej * r[k].abs().to_f64()).sum();
            if w == 0.0 {
                FREE_SLOT
            } else {
                (scale * (budget.eps / 2.0) / (2.0 * PI * budget.q as f64 * budget.m as f64 * w)).min(0.49)
            }
        })
        .collect()
}

/// Find and verify τ with |f1(s+iτ) − f2(s)| < ε on the strip.
pub fn find_translate(f1: &ExpSum, f2: &ExpSum, strip: &Strip, eps: f64, opts: &TranslateOptions) -> Result<TranslateResult> {
    let budget = budget_from(f1, f2, strip, eps)?;
    let verdict = bohr_equivalent(f1, f2, opts.equiv_tol)?;
    if !verdict.equivalent {
        let mut why = verdict.reason.unwrap_or_else(|| "not equivalent".into());
        if let Some(u) = verdict.obstruction {
            why.push_str(&format!("; obstruction {u:?}"));
        }
        return Err(Error::NotEquivalent(why));
    }
    let witness = verdict.witness.expect("equivalent verdict carries a witness");
    let base = kronecker_instance(f1, &witness, budget.eps1)?;
    let scales: Vec<Option<f64>> = match opts.eps_mode {
        EpsMode::Uniform => vec![None],
        EpsMode::Adaptive => ADAPTIVE_SCALES.iter().map(|s| Some(*s)).collect(),
    };
    let instances: Vec<(Option<f64>, KroneckerInstance)> = scales
        .into_iter()
        .map(|s| match s {
            None => Ok((None, base.clone())),
            Some(l) => Ok((Some(l), base.clone().with_slot_eps(adaptive_tolerances(f1, strip, &budget, l))?)),
        })
        .collect::<Result<_>>()?;

    let accept = |tau: &Fixed| coeff_bound(&f1.translate_fixed(tau), f2, strip).map(|b| b < eps);
    let mut search = Vec::new();
    let mut found: Option<(Fixed, KroneckerInstance)> = None;

    match opts.method {
        Method::Grid => {
            let mut lo = 0.0;
            let mut hi = opts.grid_t_start;
            'outer: while lo < opts.grid_t_max {
                for (scale, inst) in &instances {
                    let hits = solve_grid(inst, (lo, hi), inst.max_grid_step())?;
                    let mut step = SearchStep { t_bound: hi, scale: *scale, candidates: hits.len(), accepted: false };
                    for h in hits {
                        if accept(&h.tau_exact)? {
                            step.accepted = true;
                            search.push(step);
                            found = Some((h.tau_exact, inst.clone()));
                            break 'outer;
                        }
                    }
                    search.push(step);
                }
                lo = hi;
                hi = (hi * 10.0).min(opts.grid_t_max);
            }
        }
        Method::Lattice => {
            'outer: for t in opts.lattice.schedule() {
                for (scale, inst) in &instances {
                    let set = match lattice_candidates(inst, t, &opts.lattice) {
                        Ok(s) => s,
                        Err(Error::NotFound { .. }) => continue,
                        Err(e) => return Err(e),
                    };
                    let mut step = SearchStep { t_bound: t, scale: *scale, candidates: set.candidates.len(), accepted: false };
                    for c in set.candidates {
                        if accept(&c.tau_exact)? {
                            step.accepted = true;
                            search.push(step);
                            found = Some((c.tau_exact, inst.clone()));
                            break 'outer;
                        }
                    }
                    search.push(step);
                }
            }
        }
    }

    let bound = search.last().map_or(0.0, |s| s.t_bound);
    let (tau, instance) = found.ok_or(Error::NotFound { bound })?;
    let moved = f1.translate_fixed(&tau);
    let verification = sup_norm_diff(&moved, f2, strip, &opts.sup_grid)?;
    let passed = verification.grid_max < eps && verification.coeff_bound < eps;
    Ok(TranslateResult {
        tau: tau.to_f64(),
        kronecker_residuals: instance.residuals(&tau),
        tau_exact: tau,
        budget,
        eps_mode: opts.eps_mode,
        method: opts.method,
        witness,
        instance,
        verification,
        passed,
        search,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitResult {
    pub bf_order: u64,
    /// τ found for the Bochner–Fejér pair, verified against the original pair.
    pub result: TranslateResult,
    /// sup|f − P|, sup|P(·+iτ) − Q|, sup|Q − target|, each by coefficient bound.
    pub terms: [f64; 3],
    pub three_term_bound: f64,
}

/// Translate search on the Bochner–Fejér approximants P, Q of f and target.
pub fn orbit_approximate(f: &ExpSum, target: &ExpSum, strip: &Strip, eps: f64, bf_order: u64, opts: &TranslateOptions) -> Result<OrbitResult> {
    f.check_comparable(target)?;
    let p = bochner_fejer(f, bf_order)?;
    let q = bochner_fejer(target, bf_order)?;
    let factors = bochner_fejer_factors(f.system(), bf_order)?;
    let e = f.strip_weights(strip);
    let loss = |g: &ExpSum| -> f64 { g.coeffs().iter().zip(&factors).zip(&e).map(|((a, pj), ej)| (1.0 - pj) * a.norm() * ej).sum() };
    let inner = find_translate(&p, &q, strip, eps, opts)?;
    let middle = coeff_bound(&p.translate_fixed(&inner.tau_exact), &q, strip)?;
    let terms = [loss(f), middle, loss(target)];
    let moved = f.translate_fixed(&inner.tau_exact);
    let verification = sup_norm_diff(&moved, target, strip, &opts.sup_grid)?;
    let passed = verification.grid_max < eps && verification.coeff_bound < eps;
    let result = TranslateResult { verification, passed, ..inner };
    Ok(OrbitResult { bf_order, result, terms, three_term_bound: terms.iter().sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::expsum::Kind;
    use crate::frequency::{define_system, Generator};
    use num_complex::Complex64;
    use std::sync::Arc;

    fn sqrt2_pair() -> (ExpSum, ExpSum) {
        let sys = define_system(
            vec![Generator::from_expr("one", "1").unwrap(), Generator::from_expr("root2", "sqrt(2)").unwrap()],
            vec![vec![Rational::from(1), Rational::from(0)], vec![Rational::from(0), Rational::from(1)]],
            false,
        )
        .unwrap()
        .with_independence("sqrt(2) irrational");
        let sys = Arc::new(sys);
        let one = Complex64::new(1.0, 0.0);
        let f1 = ExpSum::new(sys.clone(), vec![one, one], Kind::Real).unwrap();
        (f1.clone(), f1.scale(-one))
    }

    fn log2_single(scale: f64) -> ExpSum {
        let sys = define_system(vec![Generator::from_expr("-log2", "-log(2)").unwrap()], vec![vec![Rational::from(1)]], false).unwrap();
        ExpSum::new(Arc::new(sys), vec![Complex64::new(scale, 0.0)], Kind::Complex).unwrap()
    }

    #[test]
    fn budget_single_term() {
        let f = log2_single(1.0);
        let b = budget_from(&f, &f, &Strip::new(1.5, 2.0).unwrap(), 0.1).unwrap();
        let e = 2f64.powf(-1.5);
        assert!((b.e - e).abs() < 1e-15);
        assert!((b.eps1 - 0.05 / (2.0 * PI * e)).abs() < 1e-15);
        assert!((b.eps1 - 0.0225).abs() < 1e-4);
        let g = log2_single(2.0);
        let b2 = budget_from(&g, &g, &Strip::new(1.5, 2.0).unwrap(), 0.1).unwrap();
        assert!((b2.a - 2.0 * b.a).abs() < 1e-15 && (b2.eps1 - b.eps1 / 2.0).abs() < 1e-15);
        let line = budget_from(&f, &f, &Strip::line(2.0), 0.1).unwrap();
        assert!((line.e - 0.25).abs() < 1e-15);
        let zero = log2_single(0.0);
        assert!(budget_from(&zero, &zero, &Strip::line(2.0), 0.1).is_err());
    }

    #[test]
    fn identical_sums_give_zero() {
        let (f1, _) = sqrt2_pair();
        let r = find_translate(&f1, &f1, &Strip::line(0.0), 0.1, &TranslateOptions::default()).unwrap();
        assert_eq!(r.tau, 0.0);
        assert!(r.passed);
    }

    #[test]
    fn sqrt2_pair_grid_and_lattice() {
        let (f1, f2) = sqrt2_pair();
        let strip = Strip::line(0.0);
        let g = find_translate(&f1, &f2, &strip, 0.1, &TranslateOptions::default()).unwrap();
        assert!(g.passed && g.verification.coeff_bound < 0.1, "{g:?}");
        for k in 0..2 {
            let phase = (g.tau * [1.0, 2f64.sqrt()][k]).rem_euclid(2.0 * PI);
            assert!((phase - PI).abs() < 2.0 * PI * g.budget.eps1 + 1e-9);
        }
        let opts = TranslateOptions { method: Method::Lattice, ..Default::default() };
        let l = find_translate(&f1, &f2, &strip, 0.1, &opts).unwrap();
        assert!(l.passed && l.verification.coeff_bound < 0.1, "{l:?}");
        let moved = f1.translate_fixed(&l.tau_exact);
        assert!(bohr_equivalent(&moved, &f2, 1e-9).unwrap().equivalent);
    }

    #[test]
    fn inequivalent_rejected() {
        let (f1, _) = sqrt2_pair();
        let g = f1.with_coeffs(vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]).unwrap();
        assert!(matches!(find_translate(&f1, &g, &Strip::line(0.0), 0.1, &TranslateOptions::default()), Err(Error::NotEquivalent(_))));
    }

    #[test]
    fn orbit_to_self_is_trivial() {
        let (f1, f2) = sqrt2_pair();
        let o = orbit_approximate(&f1, &f1, &Strip::line(0.0), 0.1, 3, &TranslateOptions::default()).unwrap();
        assert_eq!(o.result.tau, 0.0);
        assert!(o.terms[1] < 1e-12);
        assert!((o.terms[0] - 2.0 * (1.0 - 0.75)).abs() < 1e-12);
        let big = orbit_approximate(&f1, &f2, &Strip::line(0.0), 0.1, 1000, &TranslateOptions::default()).unwrap();
        assert!(big.terms[0] < 3e-3 && big.terms[2] < 3e-3);
        assert!(big.three_term_bound >= big.result.verification.coeff_bound - 1e-12);
    }
}
