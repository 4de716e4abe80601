#![allow(dead_code)]

use std::collections::HashSet;
use std::f64::consts::PI;
use std::sync::Arc;

use bohrap::exactnum::{Fixed, Rational};
use bohrap::expsum::{ExpSum, Kind};
use bohrap::frequency::{define_system, primes_up_to, FrequencySystem, Generator};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;

/// Generators log 2, log 3, … with random distinct nonzero integer frequencies.
pub fn random_system<R: Rng>(rng: &mut R, m: usize, n: usize, max_coef: i64) -> Arc<FrequencySystem> {
    let primes = primes_up_to(60);
    let generators = (0..m)
        .map(|k| Generator::new(format!("log{}", primes[k]), Fixed::ln_int(&BigInt::from(primes[k])).unwrap(), format!("log({})", primes[k])))
        .collect();
    let mut seen = HashSet::new();
    let mut freqs = Vec::new();
    while freqs.len() < n {
        let r: Vec<i64> = (0..m).map(|_| rng.random_range(-max_coef..=max_coef)).collect();
        if r.iter().all(|&c| c == 0) || !seen.insert(r.clone()) {
            continue;
        }
        freqs.push(r.into_iter().map(Rational::from).collect());
    }
    Arc::new(define_system(generators, freqs, false).unwrap().with_independence("distinct primes"))
}

pub fn random_coeffs<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..2.0 * PI))).collect()
}

pub fn random_expsum<R: Rng>(rng: &mut R, max_m: usize, max_n: usize) -> ExpSum {
    let m = rng.random_range(1..=max_m);
    // Enough distinct vectors exist for any m ≥ 1 with entries in [−3, 3].
    let n = rng.random_range(1..=max_n.min(7usize.pow(m as u32) - 1));
    let sys = random_system(rng, m, n, 3);
    let coeffs = random_coeffs(rng, n);
    ExpSum::new(sys, coeffs, Kind::Complex).unwrap()
}

pub fn random_phases<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.random_range(0.0..2.0 * PI)).collect()
}

/// max_j |b_j − a_j e^{i⟨r_j,x⟩}|, computed directly.
pub fn direct_residual(f: &ExpSum, g: &ExpSum, x: &[f64]) -> f64 {
    f.system()
        .freqs()
        .iter()
        .zip(f.coeffs().iter().zip(g.coeffs()))
        .map(|(r, (a, b))| {
            let phase: f64 = r.iter().zip(x).map(|(c, xk)| c.to_f64() * xk).sum();
            (b - a * Complex64::cis(phase)).norm()
        })
        .fold(0.0, f64::max)
}

/// Changes |a_j| by `delta` for one j.
pub fn perturb_modulus(f: &ExpSum, j: usize, delta: f64) -> ExpSum {
    let mut c = f.coeffs().to_vec();
    let a = c[j];
    c[j] = a * ((a.norm() + delta) / a.norm());
    f.with_coeffs(c).unwrap()
}
