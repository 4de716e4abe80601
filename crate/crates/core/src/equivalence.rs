//! Deciding Bohr and ⁎-equivalence through integer phase congruences.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{lll_with_transform, smith_normal_form, Fixed, IntMatrix, LatticeBasis};
use crate::expsum::ExpSum;
use crate::frequency::{to_integral, FrequencySystem};

pub const DEFAULT_TOL: f64 = 1e-9;

/// R·y ≡ φ (mod 1), with y = x/2π.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceSystem {
    pub r: IntMatrix,
    pub phi: Vec<f64>,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CongruenceOutcome {
    /// y with every coordinate in [0, 1).
    Solvable { y: Vec<f64>, residual: f64 },
    /// uᵀR = 0 and uᵀφ is `distance` away from the nearest integer.
    Obstructed { u: Vec<BigInt>, distance: f64 },
}

fn frac_dist(x: &Fixed) -> f64 {
    let one = Fixed::from_int(1);
    x.rem_centered(&one).abs().to_f64()
}

/// Solves R·y ≡ φ (mod 1). A unimodular T from lattice reduction splits
/// T·R into zero rows (the left kernel, which decides solvability) and a
/// small full-rank block handled by its Smith decomposition.
pub fn solve_phase_congruence(sys: &CongruenceSystem) -> Result<CongruenceOutcome> {
    if !(sys.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", sys.tol)));
    }
    let (n, m) = (sys.r.rows(), sys.r.cols());
    if sys.phi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: sys.phi.len() });
    }
    if n == 0 {
        return Ok(CongruenceOutcome::Solvable { y: vec![0.0; m], residual: 0.0 });
    }
    let phi: Vec<Fixed> = sys.phi.iter().map(|&p| Fixed::from_f64(p)).collect::<Result<_>>()?;
    let one = Fixed::from_int(1);
    let dot = |u: &[BigInt], v: &[Fixed]| u.iter().zip(v).fold(Fixed::zero(), |acc, (a, b)| &acc + &b.mul_int(a));

    let t = reduction_transform(&sys.r);
    let tr = IntMatrix::from_rows(&t)?.mul(&sys.r)?;
    let mut worst: Option<(Vec<BigInt>, f64)> = None;
    let mut active = Vec::new();
    for (i, ti) in t.iter().enumerate() {
        if tr.row(i).iter().all(Zero::is_zero) {
            let dist = frac_dist(&dot(ti, &phi));
            if dist > sys.tol && worst.as_ref().is_none_or(|(_, w)| dist > *w) {
                worst = Some((ti.clone(), dist));
            }
        } else {
            active.push(i);
        }
    }

    let y: Vec<Fixed> = if active.is_empty() {
        vec![Fixed::zero(); m]
    } else {
        let block = IntMatrix::from_rows(&active.iter().map(|&i| tr.row(i).to_vec()).collect::<Vec<_>>())?;
        let phi2: Vec<Fixed> = active.iter().map(|&i| dot(&t[i], &phi)).collect();
        let d = smith_normal_form(&block);
        let diag = d.diagonal();
        let rank = diag.iter().filter(|s| !s.is_zero()).count();
        let psi: Vec<Fixed> = (0..active.len()).map(|i| dot(d.u_inv.row(i), &phi2).rem_euclid(&one)).collect();
        for (i, p) in psi.iter().enumerate().skip(rank) {
            let dist = frac_dist(p);
            if dist > sys.tol && worst.as_ref().is_none_or(|(_, w)| dist > *w) {
                // Back to the original rows: u = Σ_l P_{i,l}·T_{active[l]}.
                let u = (0..n).map(|c| active.iter().enumerate().map(|(l, &a)| &d.u_inv[(i, l)] * &t[a][c]).sum()).collect();
                worst = Some((u, dist));
            }
        }
        // z_i = ψ_i/s_i on the pivots, free coordinates zero; y = V⁻¹·z.
        let z: Vec<Fixed> = (0..m).map(|i| if i < rank { psi[i].div_int(&diag[i]) } else { Fixed::zero() }).collect();
        (0..m).map(|k| (0..m).fold(Fixed::zero(), |acc, i| &acc + &z[i].mul_int(&d.v_inv[(k, i)])).rem_euclid(&one)).collect()
    };
    if let Some((u, distance)) = worst {
        return Ok(CongruenceOutcome::Obstructed { u, distance });
    }
    let residual_of = |y: &[Fixed]| {
        (0..n)
            .map(|j| {
                let ry = (0..m).fold(Fixed::zero(), |acc, k| &acc + &y[k].mul_int(&sys.r[(j, k)]));
                frac_dist(&(&ry - &phi[j]))
            })
            .fold(0.0, f64::max)
    };
    let mut y = y;
    let mut residual = residual_of(&y);
    for _ in 0..3 {
        if residual == 0.0 {
            break;
        }
        let Some(next) = refine(&sys.r, &sys.phi, &y) else { break };
        let r_next = residual_of(&next);
        if r_next >= residual {
            break;
        }
        y = next;
        residual = r_next;
    }
    Ok(CongruenceOutcome::Solvable { y: y.iter().map(Fixed::to_f64).collect(), residual })
}

/// One regularized least-squares step on R·y ≡ φ (mod 1), with the integer
/// parts frozen at their current values.
fn refine(r: &IntMatrix, phi: &[f64], y: &[Fixed]) -> Option<Vec<Fixed>> {
    let (n, m) = (r.rows(), r.cols());
    let rf: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|k| r[(j, k)].to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let one = Fixed::from_int(1);
    let res: Vec<f64> = (0..n)
        .map(|j| {
            let ry = (0..m).fold(Fixed::zero(), |acc, k| &acc + &y[k].mul_int(&r[(j, k)]));
            Some((&ry - &Fixed::from_f64(phi[j]).ok()?).rem_centered(&one).to_f64())
        })
        .collect::<Option<_>>()?;
    // (RᵀR + μI)·δ = Rᵀ·res
    let mut a = vec![vec![0.0; m + 1]; m];
    for (p, row) in a.iter_mut().enumerate() {
        for q in 0..m {
            row[q] = (0..n).map(|j| rf[j][p] * rf[j][q]).sum();
        }
        row[m] = (0..n).map(|j| rf[j][p] * res[j]).sum();
    }
    let trace: f64 = (0..m).map(|p| a[p][p]).sum();
    for (p, row) in a.iter_mut().enumerate() {
        row[p] += 1e-13 * trace.max(1.0);
    }
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        a.swap(col, piv);
        if a[col][col] == 0.0 {
            return None;
        }
        for i in 0..m {
            if i != col {
                let f = a[i][col] / a[col][col];
                for c in col..=m {
                    a[i][c] -= f * a[col][c];
                }
            }
        }
    }
    (0..m)
        .map(|k| {
            let delta = Fixed::from_f64(a[k][m] / a[k][k]).ok()?;
            Some((&y[k] - &delta).rem_euclid(&one))
        })
        .collect()
}

fn to_two_float(x: &BigInt) -> TwoFloat {
    let hi = x.to_f64().unwrap_or(f64::INFINITY);
    let lo = BigInt::from_f64(hi).map_or(0.0, |h| (x - h).to_f64().unwrap_or(0.0));
    TwoFloat::new_add(hi, lo)
}

/// Weight on the R-part of the rows [W·R_i | e_i] reduced below.
const KERNEL_WEIGHT: f64 = 1073741824.0;

/// Unimodular T with small entries such that the rows of T·R that vanish
/// form a left-kernel basis; identity if reduction fails.
fn reduction_transform(r: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (n, m) = (r.rows(), r.cols());
    let identity = IntMatrix::identity(n).to_rows();
    let rows: Vec<Vec<TwoFloat>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|k| to_two_float(&r[(i, k)]) * KERNEL_WEIGHT)
                .chain((0..n).map(|j| TwoFloat::from(if i == j { 1.0 } else { 0.0 })))
                .collect()
        })
        .collect();
    let Ok(red) = LatticeBasis::new(rows).and_then(|b| lll_with_transform(&b)) else { return identity };
    if red.transform.len() != n {
        return identity;
    }
    let t: Vec<Vec<BigInt>> = red.transform.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    match IntMatrix::from_rows(&t).and_then(|tm| tm.det()) {
        Ok(det) if det.abs() == BigInt::from(1) => t,
        _ => identity,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Star,
    Bohr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// Phase vector x in radians, original generator coordinates.
    pub witness: Option<Vec<f64>>,
    /// Integer combination of frequencies, indexed like the frequencies.
    pub obstruction: Option<Vec<i64>>,
    pub tol: f64,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    /// False when the generators are not an integral basis for the frequencies.
    pub integral_basis: bool,
    /// Largest |b_j − a_j e^{i⟨r_j,x⟩}| for the returned witness.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification_residual: Option<f64>,
    /// Per-prefix verdicts (star mode only); `prefixes[n-1]` covers the first n frequencies.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub prefixes: Vec<EquivalenceVerdict>,
}

/// Index of the first coefficient pair with unequal moduli.
pub fn moduli_mismatch(f: &ExpSum, g: &ExpSum, tol: f64) -> Result<Option<usize>> {
    f.check_comparable(g)?;
    Ok(f.coeffs().iter().zip(g.coeffs()).position(|(a, b)| {
        let za = *a == Complex64::zero();
        let zb = *b == Complex64::zero();
        za != zb || (a.norm() - b.norm()).abs() > tol * (1.0 + a.norm())
    }))
}

pub fn moduli_equal(f: &ExpSum, g: &ExpSum, tol: f64) -> Result<bool> {
    Ok(moduli_mismatch(f, g, tol)?.is_none())
}

/// ⟨r_j, x⟩ for every frequency.
fn inner_products(system: &FrequencySystem, x: &[f64]) -> Vec<f64> {
    system.freqs().iter().map(|r| r.iter().zip(x).map(|(c, xk)| c.to_f64() * xk).sum()).collect()
}

/// E_G(x): coefficients a_j·e^{i⟨r_j,x⟩}.
pub fn class_point(f: &ExpSum, x: &[f64]) -> Result<ExpSum> {
    if x.len() != f.system().n_gens() {
        return Err(Error::DimensionMismatch { expected: f.system().n_gens(), got: x.len() });
    }
    let ip = inner_products(f.system(), x);
    f.with_coeffs(f.coeffs().iter().zip(&ip).map(|(a, p)| a * Complex64::cis(*p)).collect())
}

/// max_j |b_j − a_j e^{i⟨r_j,x⟩}| / (1 + |a_j|).
pub fn witness_residual(f: &ExpSum, g: &ExpSum, x: &[f64]) -> Result<f64> {
    f.check_comparable(g)?;
    let moved = class_point(f, x)?;
    Ok(moved.coeffs().iter().zip(g.coeffs()).zip(f.coeffs()).map(|((m, b), a)| (b - m).norm() / (1.0 + a.norm())).fold(0.0, f64::max))
}

fn decide(f: &ExpSum, g: &ExpSum, tol: f64, mode: Mode) -> Result<EquivalenceVerdict> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let system = f.system();
    let integral_basis = system.is_integral();
    let mut verdict = EquivalenceVerdict {
        equivalent: false,
        witness: None,
        obstruction: None,
        tol,
        mode,
        reason: None,
        integral_basis,
        verification_residual: None,
        prefixes: Vec::new(),
    };
    if let Some(j) = moduli_mismatch(f, g, tol)? {
        verdict.reason = Some(format!("modulus mismatch at j={}", j + 1));
        return Ok(verdict);
    }
    let rows: Vec<usize> = (0..f.len()).filter(|&j| f.coeffs()[j] != Complex64::zero()).collect();
    let integral = to_integral(system);
    let full = integral.system.integer_matrix()?;
    let m = system.n_gens();
    let r_rows: Vec<Vec<BigInt>> = rows.iter().map(|&j| full.row(j).to_vec()).collect();
    let r = if r_rows.is_empty() { IntMatrix::zeros(0, m) } else { IntMatrix::from_rows(&r_rows)? };
    let phi: Vec<f64> = rows
        .iter()
        .map(|&j| {
            let theta = (g.coeffs()[j] / f.coeffs()[j]).arg();
            (theta / (2.0 * PI)).rem_euclid(1.0)
        })
        .collect();
    match solve_phase_congruence(&CongruenceSystem { r, phi, tol })? {
        CongruenceOutcome::Solvable { y, .. } => {
            let x: Vec<f64> = y.iter().zip(&integral.scale_record).map(|(yk, qk)| 2.0 * PI * yk * qk.to_f64().unwrap_or(f64::NAN)).collect();
            let residual = witness_residual(f, g, &x)?;
            verdict.verification_residual = Some(residual);
            if residual <= tol {
                verdict.equivalent = true;
                verdict.witness = Some(x);
            } else {
                verdict.reason = Some(format!("congruence solution failed direct verification (residual {residual:e})"));
            }
        }
        CongruenceOutcome::Obstructed { u, distance } => {
            let mut full_u = vec![0i64; f.len()];
            for (&j, uj) in rows.iter().zip(&u) {
                full_u[j] = uj.to_i64().ok_or(Error::Overflow)?;
            }
            verdict.obstruction = Some(full_u);
            verdict.reason = Some(format!("phase obstruction: combination is {distance:.3e} from an integer"));
        }
    }
    Ok(verdict)
}

/// A single phase vector for all frequencies at once.
pub fn bohr_equivalent(f: &ExpSum, g: &ExpSum, tol: f64) -> Result<EquivalenceVerdict> {
    f.check_comparable(g)?;
    decide(f, g, tol, Mode::Bohr)
}

/// One verdict per prefix; equivalent iff every prefix is.
pub fn star_equivalent(f: &ExpSum, g: &ExpSum, tol: f64) -> Result<EquivalenceVerdict> {
    f.check_comparable(g)?;
    let n = f.len();
    let prefixes: Vec<EquivalenceVerdict> = (1..=n)
        .into_par_iter()
        .map(|k| {
            let sys = std::sync::Arc::new(f.system().prefix(k));
            let fk = ExpSum::new(sys.clone(), f.coeffs()[..k].to_vec(), f.kind())?;
            let gk = ExpSum::new(sys, g.coeffs()[..k].to_vec(), g.kind())?;
            decide(&fk, &gk, tol, Mode::Star)
        })
        .collect::<Result<_>>()?;
    let mut top = match prefixes.last() {
        Some(last) => last.clone(),
        None => decide(f, g, tol, Mode::Star)?,
    };
    top.equivalent = prefixes.iter().all(|p| p.equivalent);
    if !top.equivalent && top.reason.is_none() {
        let k = prefixes.iter().position(|p| !p.equivalent).unwrap_or(0);
        top.reason = Some(format!("prefix n={} not equivalent", k + 1));
    }
    top.prefixes = prefixes;
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::expsum::Kind;
    use crate::frequency::{define_system, prime_log_system, Generator};
    use std::sync::Arc;

    fn cs(rows: &[Vec<i64>], phi: &[f64]) -> CongruenceSystem {
        CongruenceSystem { r: IntMatrix::from_rows(rows).unwrap(), phi: phi.to_vec(), tol: DEFAULT_TOL }
    }

    #[test]
    fn congruence_examples() {
        match solve_phase_congruence(&cs(&[vec![1, 0], vec![0, 1]], &[0.25, 0.25])).unwrap() {
            CongruenceOutcome::Solvable { y, .. } => assert_eq!(y, vec![0.25, 0.25]),
            o => panic!("{o:?}"),
        }
        match solve_phase_congruence(&cs(&[vec![1, 0], vec![0, 1], vec![1, 1]], &[0.25, 0.25, 0.5])).unwrap() {
            CongruenceOutcome::Solvable { y, residual } => {
                assert!((y[0] - 0.25).abs() < 1e-15 && (y[1] - 0.25).abs() < 1e-15);
                assert!(residual < 1e-15);
            }
            o => panic!("{o:?}"),
        }
        match solve_phase_congruence(&cs(&[vec![1, 0], vec![0, 1], vec![1, 1]], &[0.25, 0.25, 0.4])).unwrap() {
            CongruenceOutcome::Obstructed { u, distance } => {
                let u: Vec<i64> = u.iter().map(|x| x.to_i64().unwrap()).collect();
                assert!(u == vec![1, 1, -1] || u == vec![-1, -1, 1], "{u:?}");
                assert!((distance - 0.1).abs() < 1e-12);
            }
            o => panic!("{o:?}"),
        }
        let mut bad = cs(&[vec![1]], &[0.0]);
        bad.tol = 0.0;
        assert!(solve_phase_congruence(&bad).is_err());
    }

    fn sqrt2_pair() -> (ExpSum, ExpSum) {
        let sys = define_system(
            vec![Generator::from_expr("1", "1").unwrap(), Generator::from_expr("sqrt2", "sqrt(2)").unwrap()],
            vec![vec![Rational::one(), Rational::zero()], vec![Rational::zero(), Rational::one()]],
            false,
        )
        .unwrap();
        let f = ExpSum::new(Arc::new(sys), vec![Complex64::new(1.0, 0.0); 2], Kind::Real).unwrap();
        let g = f.scale(Complex64::new(-1.0, 0.0));
        (f, g)
    }

    #[test]
    fn sqrt2_pair_witness_is_pi() {
        let (f, g) = sqrt2_pair();
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).unwrap();
        let x = v.witness.unwrap();
        assert!((x[0] - PI).abs() < 1e-12 && (x[1] - PI).abs() < 1e-12);
    }

    #[test]
    fn zeta_liouville_witness() {
        let sys = Arc::new(prime_log_system(10).unwrap().system);
        let omega = [0, 1, 1, 2, 1, 2, 1, 3, 2, 2];
        let z = ExpSum::new(sys.clone(), vec![Complex64::new(1.0, 0.0); 10], Kind::Complex).unwrap();
        let l = ExpSum::new(sys, omega.iter().map(|&o| Complex64::new(if o % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect(), Kind::Complex).unwrap();
        assert!(moduli_equal(&z, &l, DEFAULT_TOL).unwrap());
        let v = bohr_equivalent(&z, &l, DEFAULT_TOL).unwrap();
        let x = v.witness.unwrap();
        assert_eq!(x.len(), 4);
        assert!(x.iter().all(|xk| (xk - PI).abs() < 1e-12), "{x:?}");
        let mapped = class_point(&z, &[PI; 4]).unwrap();
        for (a, b) in mapped.coeffs().iter().zip(l.coeffs()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn translate_is_equivalent() {
        let sys = Arc::new(prime_log_system(12).unwrap().system);
        let f = ExpSum::new(sys.clone(), (1..=12).map(|n| Complex64::new(1.0 / n as f64, 0.3)).collect(), Kind::Complex).unwrap();
        let tau = 17.25;
        let g = f.translate(tau);
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).unwrap();
        let x = v.witness.unwrap();
        for (xk, gk) in x.iter().zip(sys.generator_values()) {
            let d = (xk - tau * gk).rem_euclid(2.0 * PI);
            assert!(d < 1e-9 || 2.0 * PI - d < 1e-9);
        }
        let g2 = class_point(&f, &sys.generator_values().iter().map(|g| tau * g).collect::<Vec<_>>()).unwrap();
        for (a, b) in g.coeffs().iter().zip(g2.coeffs()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn modulus_mismatch_reason() {
        let (f, _) = sqrt2_pair();
        let g = f.with_coeffs(vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]).unwrap();
        assert!(!moduli_equal(&f, &g, DEFAULT_TOL).unwrap());
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).unwrap();
        assert!(!v.equivalent);
        assert_eq!(v.reason.as_deref(), Some("modulus mismatch at j=2"));
        assert!(v.witness.is_none() && v.obstruction.is_none());
    }

    #[test]
    fn obstruction_over_dependent_frequencies() {
        let sys = define_system(
            vec![Generator::from_expr("1", "1").unwrap(), Generator::from_expr("sqrt2", "sqrt(2)").unwrap()],
            vec![vec![Rational::one(), Rational::zero()], vec![Rational::zero(), Rational::one()], vec![Rational::one(), Rational::one()]],
            false,
        )
        .unwrap();
        let f = ExpSum::new(Arc::new(sys), vec![Complex64::new(1.0, 0.0); 3], Kind::Real).unwrap();
        let g = f.with_coeffs(vec![Complex64::cis(PI / 2.0), Complex64::cis(PI / 2.0), Complex64::cis(0.8 * PI)]).unwrap();
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).unwrap();
        assert!(!v.equivalent);
        let u = v.obstruction.unwrap();
        assert!(u == vec![1, 1, -1] || u == vec![-1, -1, 1]);
        let s = star_equivalent(&f, &g, DEFAULT_TOL).unwrap();
        assert!(!s.equivalent);
        assert!(s.prefixes[0].equivalent && s.prefixes[1].equivalent && !s.prefixes[2].equivalent);
    }

    #[test]
    fn star_prefixes_and_self() {
        let (f, _) = sqrt2_pair();
        let s = star_equivalent(&f, &f, DEFAULT_TOL).unwrap();
        assert!(s.equivalent);
        assert!(s.prefixes.iter().all(|p| p.witness.as_ref().unwrap().iter().all(|&x| x == 0.0)));
        let sys = Arc::new(prime_log_system(6).unwrap().system);
        let a = ExpSum::new(sys.clone(), vec![Complex64::new(1.0, 0.0); 6], Kind::Complex).unwrap();
        let mut c = vec![Complex64::new(1.0, 0.0); 6];
        c[2] = Complex64::new(3.0, 0.0);
        let b = a.with_coeffs(c).unwrap();
        let s = star_equivalent(&a, &b, DEFAULT_TOL).unwrap();
        assert!(s.prefixes[0].equivalent && s.prefixes[1].equivalent);
        assert!(s.prefixes[2..].iter().all(|p| !p.equivalent));
    }

    #[test]
    fn rational_coefficients_scale_witness() {
        let sys = define_system(vec![Generator::from_expr("g", "1").unwrap()], vec![vec![Rational::new(1, 2).unwrap()], vec![Rational::new(3, 2).unwrap()]], false).unwrap();
        let f = ExpSum::new(Arc::new(sys), vec![Complex64::new(1.0, 0.0); 2], Kind::Real).unwrap();
        let g = f.translate(5.0);
        let v = bohr_equivalent(&f, &g, DEFAULT_TOL).unwrap();
        let x = v.witness.unwrap();
        assert!(x[0] >= 0.0 && x[0] < 4.0 * PI);
        assert!(witness_residual(&f, &g, &x).unwrap() < 1e-12);
        assert!(!v.integral_basis);
    }

    #[test]
    fn verdict_json_shape() {
        let (f, g) = sqrt2_pair();
        let v = serde_json::to_value(bohr_equivalent(&f, &g, DEFAULT_TOL).unwrap()).unwrap();
        assert_eq!(v["equivalent"], true);
        assert_eq!(v["mode"], "bohr");
        assert!(v["witness"].is_array());
        assert!(v["obstruction"].is_null());
        assert_eq!(v["tol"], DEFAULT_TOL);
    }
}
