//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use bohrap::equivalence::{bohr_equivalent, class_point, solve_phase_congruence, CongruenceOutcome, CongruenceSystem, DEFAULT_TOL};
use bohrap::exactnum::{IntMatrix, Rational};
use bohrap::expsum::{bochner_fejer, coeff_bound, ExpSum, Kind, Strip};
use bohrap::frequency::{define_system, Generator};
use bohrap::kronecker::{enumerate_relatively_dense, relative_density_length, solve_grid, solve_lattice, KroneckerInstance, LatticeOptions};
use bohrap::translate::{find_translate, TranslateOptions};
use bohrap::zeta::{approximate_liouville_by_translate, infimum_report, liouville_demo_options, liouville_series_eval, small_zeta_search, SmallZetaOptions};
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for case in 0..200 {
        let f = random_expsum(&mut rng, 6, 20);
        let x = random_phases(&mut rng, f.system().n_gens());
        let g = class_point(&f, &x).unwrap();
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).map_err(|e| format!("case {case}: {e}"))?;
        let w = v.witness.ok_or_else(|| format!("case {case}: no witness ({:?})", v.reason))?;
        let r = direct_residual(&f, &g, &w);
        worst = worst.max(r);
        ensure(r <= 1e-9, || format!("case {case}: residual {r:e}"))?;
    }
    for case in 0..200 {
        let f = random_expsum(&mut rng, 6, 20);
        let x = random_phases(&mut rng, f.system().n_gens());
        let j = rng.random_range(0..f.len());
        let g = perturb_modulus(&class_point(&f, &x).unwrap(), j, 1e-3);
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).map_err(|e| format!("perturbed {case}: {e}"))?;
        ensure(!v.equivalent, || format!("perturbed case {case} judged equivalent"))?;
    }
    Ok(format!("200 witnesses, worst direct residual {worst:.1e}; 200 perturbed pairs rejected"))
}

/// Exhaustive scan of y ∈ [0,1)^m at step 1/500: some y with every row within `band`.
fn grid_solvable(r: &[Vec<i64>], phi: &[f64], band: f64) -> bool {
    const STEPS: i64 = 500;
    let m = r[0].len();
    let dist = |v: f64| (v - v.round()).abs();
    let mut idx = vec![0i64; m];
    let mut base = vec![0.0f64; r.len()];
    loop {
        // Innermost coordinate scanned in a tight loop.
        for (i, row) in r.iter().enumerate() {
            base[i] = (0..m - 1).map(|k| row[k] as f64 * idx[k] as f64 / STEPS as f64).sum::<f64>() - phi[i];
        }
        for last in 0..STEPS {
            let y = last as f64 / STEPS as f64;
            if r.iter().zip(&base).all(|(row, b)| dist(b + row[m - 1] as f64 * y) <= band) {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k + 1 >= m {
                return false;
            }
            idx[k] += 1;
            if idx[k] < STEPS {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Largest dist(u·φ, ℤ)/Σ|u_i| over small integer u with u·R = 0: a lower
/// bound on the best achievable row residual.
fn obstruction_margin(r: &[Vec<i64>], phi: &[f64]) -> f64 {
    let rows = r.len();
    let m = r[0].len();
    let mut best = 0.0f64;
    let mut u = vec![-6i64; rows];
    loop {
        let norm: i64 = u.iter().map(|x| x.abs()).sum();
        if norm > 0 && (0..m).all(|k| (0..rows).map(|i| u[i] * r[i][k]).sum::<i64>() == 0) {
            let s: f64 = u.iter().zip(phi).map(|(ui, p)| *ui as f64 * p).sum();
            best = best.max((s - s.round()).abs() / norm as f64);
        }
        let mut i = 0;
        loop {
            if i == rows {
                return best;
            }
            u[i] += 1;
            if u[i] <= 6 {
                break;
            }
            u[i] = -6;
            i += 1;
        }
    }
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut agree = 0;
    let (mut solvable, mut blocked) = (0, 0);
    for case in 0..100 {
        let want_solvable = case % 2 == 0;
        let (r, phi) = loop {
            let m = rng.random_range(1..=3usize);
            let rows = if want_solvable { rng.random_range(1..=4usize) } else { rng.random_range(m + 1..=4usize) };
            let r: Vec<Vec<i64>> = (0..rows).map(|_| (0..m).map(|_| rng.random_range(-5..=5)).collect()).collect();
            if want_solvable {
                let y0: Vec<f64> = (0..m).map(|_| rng.random_range(0..500) as f64 / 500.0).collect();
                let phi = r.iter().map(|row| row.iter().zip(&y0).map(|(a, y)| *a as f64 * y).sum::<f64>().rem_euclid(1.0)).collect();
                break (r, phi);
            }
            let phi: Vec<f64> = (0..rows).map(|_| rng.random_range(0.0..1.0)).collect();
            if obstruction_margin(&r, &phi) > 0.02 {
                break (r, phi);
            }
        };
        let sys = CongruenceSystem { r: IntMatrix::from_rows(&r).unwrap(), phi: phi.clone(), tol: DEFAULT_TOL };
        let solver = matches!(solve_phase_congruence(&sys).map_err(|e| e.to_string())?, CongruenceOutcome::Solvable { .. });
        let grid = grid_solvable(&r, &phi, 1e-2);
        if solver {
            solvable += 1;
        } else {
            blocked += 1;
        }
        if solver == grid {
            agree += 1;
        }
    }
    ensure(agree == 100, || format!("{agree}/100 agree"))?;
    Ok(format!("100/100 agree ({solvable} solvable, {blocked} obstructed)"))
}

fn sqrt2_pair() -> (ExpSum, ExpSum) {
    let sys = define_system(
        vec![Generator::from_expr("one", "1").unwrap(), Generator::from_expr("root2", "sqrt(2)").unwrap()],
        vec![vec![Rational::from(1), Rational::from(0)], vec![Rational::from(0), Rational::from(1)]],
        false,
    )
    .unwrap()
    .with_independence("sqrt(2) irrational");
    let one = Complex64::new(1.0, 0.0);
    let f1 = ExpSum::new(Arc::new(sys), vec![one, one], Kind::Real).unwrap();
    let f2 = f1.scale(-one);
    (f1, f2)
}

fn criterion_3() -> Check {
    let (f1, f2) = sqrt2_pair();
    let r = find_translate(&f1, &f2, &Strip::line(0.0), 0.1, &TranslateOptions::default()).map_err(|e| e.to_string())?;
    let v = &r.verification;
    ensure(r.passed && v.coeff_bound < 0.1 && v.grid_max < 0.1, || format!("tau {} bound {} grid {}", r.tau, v.coeff_bound, v.grid_max))?;
    let len = relative_density_length(&r.instance);
    let windows = enumerate_relatively_dense(&r.instance, len, 10).map_err(|e| e.to_string())?;
    let hits = windows.iter().filter(|w| w.hit.is_some()).count();
    ensure(hits >= 8, || format!("only {hits}/10 windows hit (L = {len:.1})"))?;
    Ok(format!("tau = {:.6}, coefficient bound {:.4}, grid max {:.4}; {hits}/10 windows of length {len:.1}", r.tau, v.coeff_bound, v.grid_max))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut feasible = 0;
    for case in 0..50 {
        let dim = rng.random_range(1..=3usize);
        let eps1 = rng.random_range(0.02..0.05);
        let integral = case % 3 == 0;
        let c: Vec<f64> = (0..dim)
            .map(|_| {
                let mag = if integral { rng.random_range(1..=3) as f64 } else { rng.random_range(0.05..2.0) };
                if rng.random_bool(0.2) { -mag } else { mag }
            })
            .collect();
        let d: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..1.0)).collect();
        let inst = KroneckerInstance::new(c.clone(), d.clone(), eps1).unwrap();
        let max_c = c.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let grid = solve_grid(&inst, (0.0, 1e3), eps1 / (4.0 * max_c)).map_err(|e| e.to_string())?;
        let lattice = solve_lattice(&inst, &LatticeOptions::bounded(1e3));
        if let Ok(t) = &lattice {
            ensure(t.passes(&inst) && t.tau <= 1e3, || format!("case {case}: lattice returned a failing tau {t:?}"))?;
        }
        ensure(grid.is_empty() != lattice.is_ok(), || format!("case {case}: grid {} hits, lattice {:?}; c={c:?} d={d:?} eps1={eps1}", grid.len(), lattice.as_ref().map(|t| t.tau)))?;
        if !grid.is_empty() {
            feasible += 1;
        }
    }
    Ok(format!("50/50 agree ({feasible} feasible, {} infeasible)", 50 - feasible))
}

fn criterion_5() -> Check {
    let r = infimum_report(2.0, 100_000, 1e-12).map_err(|e| e.to_string())?;
    let diff = (r.ratio_value - r.euler_partial).abs();
    let closed = PI.powi(4) / 90.0 / (PI * PI / 6.0);
    ensure(diff < 1e-6 && diff <= r.tail_bound, || format!("|ratio - product| = {diff:e}, tail bound {:e}", r.tail_bound))?;
    ensure((r.ratio_value - closed).abs() < 1e-6, || format!("ratio {} vs {closed}", r.ratio_value))?;
    Ok(format!("ratio {:.9}, product {:.9}, difference {diff:.2e} (bound {:.2e})", r.ratio_value, r.euler_partial, r.tail_bound))
}

fn criterion_6() -> Check {
    let mut parts = Vec::new();
    for (s, tol) in [(1.5, 1e-3), (2.0, 1e-6), (3.0, 1e-9)] {
        let v = liouville_series_eval(Complex64::new(s, 0.0), tol).map_err(|e| format!("s={s}: {e}"))?;
        let cc = v.cross_check.clone().ok_or("missing cross-check")?;
        ensure(cc.gap <= v.error_bound + cc.ratio_error, || format!("s={s}: gap {:e} > {:e}", cc.gap, v.error_bound + cc.ratio_error))?;
        if s == 2.0 {
            ensure(v.error_bound <= 1e-6, || format!("bound {:e} at s=2", v.error_bound))?;
        }
        parts.push(format!("s={s}: gap {:.1e} <= {:.1e}", cc.gap, v.error_bound + cc.ratio_error));
    }
    Ok(parts.join("; "))
}

fn criterion_7() -> Check {
    let d = approximate_liouville_by_translate(100, &Strip::new(1.8, 2.5).unwrap(), 0.05, &liouville_demo_options()).map_err(|e| e.to_string())?;
    let b = d.translate.verification.coeff_bound;
    ensure(d.translate.passed && b < 0.05, || format!("polynomial bound {b}"))?;
    ensure(d.bracket < 0.12 && d.achieved_bracket < 0.12, || format!("bracket {} / {}", d.bracket, d.achieved_bracket))?;
    Ok(format!("tau = {:.6e}, polynomial bound {b:.4}, full bracket {:.4} (eps form {:.4})", d.translate.tau, d.achieved_bracket, d.bracket))
}

fn criterion_8() -> Check {
    let r = small_zeta_search(1.5, &SmallZetaOptions::default()).map_err(|e| e.to_string())?;
    ensure(!r.samples.is_empty(), || "no samples".into())?;
    for s in &r.samples {
        ensure(s.abs > 0.46016 - s.error_bound, || format!("|zeta| = {} at t = {}", s.abs, s.t))?;
    }
    ensure(r.floor_respected, || "floor violated".into())?;
    let min = r.min_abs.unwrap_or(f64::INFINITY);
    ensure(min < 0.60, || format!("smallest |zeta| found {min}"))?;
    Ok(format!("{} samples above floor {:.6}; min |zeta(1.5+it)| = {min:.4} at t = {:.1}", r.samples.len(), r.floor, r.min_t.unwrap_or(0.0)))
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let eq = |a: &ExpSum, b: &ExpSum| bohr_equivalent(a, b, DEFAULT_TOL).map(|v| v.equivalent).unwrap_or(false);
    let mut failures = Vec::new();
    for case in 0..1000 {
        let f = random_expsum(&mut rng, 4, 10);
        let m = f.system().n_gens();
        let g = class_point(&f, &random_phases(&mut rng, m)).unwrap();
        let h = class_point(&g, &random_phases(&mut rng, m)).unwrap();
        let c = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI));
        let j = rng.random_range(0..f.len());
        let p = perturb_modulus(&g, j, 1e-3);
        let checks = [
            ("reflexive", eq(&f, &f)),
            ("f~g", eq(&f, &g)),
            ("symmetric", eq(&g, &f)),
            ("transitive", eq(&g, &h) && eq(&f, &h)),
            ("scale", eq(&f.scale(c), &g.scale(c))),
            ("perturbed", !eq(&f, &p) && !eq(&p, &f)),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(format!("case {case}: {name}"));
            }
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first {:?}", failures.len(), failures.first()))?;
    Ok("1000 cases, 6 properties each, 0 failures".into())
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..100 {
        let f = random_expsum(&mut rng, 4, 10);
        let sys = f.system();
        let max_r = sys.max_abs_coeff() as u64;
        let strip = Strip::new(-0.5, 0.5).unwrap();
        let factor = |r: &[Rational], n: u64| r.iter().map(|c| (1.0 - c.abs().to_f64() / (n + 1) as f64).max(0.0)).product::<f64>();
        let mut prev = vec![0.0; f.len()];
        for order in 0..60u64 {
            for (j, r) in sys.freqs().iter().enumerate() {
                let p = factor(r, order);
                ensure((0.0..=1.0).contains(&p) && p >= prev[j] - 1e-15, || format!("case {case}: p_{j},{order} = {p}"))?;
                prev[j] = p;
            }
        }
        ensure(sys.freqs().iter().all(|r| factor(r, 1_000_000) > 1.0 - 1e-4), || format!("case {case}: no convergence to 1"))?;
        let order = max_r + rng.random_range(0..20);
        let bf = bochner_fejer(&f, order).map_err(|e| e.to_string())?;
        let e: Vec<f64> = sys.lambdas().iter().map(|l| (l * strip.sigma0).exp().max((l * strip.sigma1).exp())).collect();
        let exact: f64 = sys.freqs().iter().zip(f.coeffs()).zip(&e).map(|((r, a), ej)| (1.0 - factor(r, order)) * a.norm() * ej).sum();
        let max_loss = sys.freqs().iter().map(|r| 1.0 - factor(r, order)).fold(0.0, f64::max);
        let mass: f64 = f.coeffs().iter().zip(&e).map(|(a, ej)| a.norm() * ej).sum();
        let got = coeff_bound(&f, &bf, &strip).map_err(|e| e.to_string())?;
        ensure((got - exact).abs() <= 1e-12 * (1.0 + exact), || format!("case {case}: {got} vs {exact}"))?;
        ensure(got <= max_loss * mass + 1e-12, || format!("case {case}: {got} > {}", max_loss * mass))?;
    }
    Ok("100 random sums: factors in [0,1], monotone, difference matches independent recomputation".into())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("equivalence soundness and completeness", 60, criterion_1),
        ("congruence solver vs brute-force grid", 300, criterion_2),
        ("translate for the sqrt(2) pair and relative density", 120, criterion_3),
        ("Kronecker lattice vs grid feasibility", 300, criterion_4),
        ("infimum formula at sigma0 = 2", 10, criterion_5),
        ("Liouville identity", 30, criterion_6),
        ("zeta translate to the Liouville series, N = 100", 600, criterion_7),
        ("floor and small values at sigma0 = 1.5", 600, criterion_8),
        ("equivalence axioms and scale invariance", 60, criterion_9),
        ("Bochner-Fejer sanity", 10, criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(*budget) => Err(format!("{detail}; over runtime budget")),
            other => other,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2}. {title}: {detail} [{:.2} s / {budget} s]", i + 1, took.as_secs_f64());
    }
    println!("NOTE limit statements (density of the full orbit, compactness, infimum 0 on half-planes, zeta(1+it_n) -> 0) are not reproducible at finite scale; the criteria above check floors, brackets and hit rates instead.");
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
