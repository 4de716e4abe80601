//! LLL reduction, Babai nearest plane and bounded enumeration over real lattices.
//!
//! Generic over the working scalar: `f64` for standard precision and
//! `TwoFloat` (about 106 bits) for high precision. The integer transform
//! from input to output basis is tracked exactly in `i128`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;
use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Lovász parameter.
pub const LLL_DELTA: f64 = 0.99;

pub trait Scalar:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const PRECISION_BITS: u32;
    fn from_f64(x: f64) -> Self;
    fn from_i128(x: i128) -> Self;
    fn to_f64(self) -> f64;
    fn round(self) -> Self;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    /// Rounded value as an integer, `None` when out of range.
    fn to_i128(self) -> Option<i128>;
    /// Value of the unevaluated sum hi + lo.
    fn from_hi_lo(hi: f64, lo: f64) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn epsilon() -> f64 {
        2f64.powi(-(Self::PRECISION_BITS as i32))
    }
}

impl Scalar for f64 {
    const PRECISION_BITS: u32 = 53;
    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i128(x: i128) -> Self {
        x as f64
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn round(self) -> Self {
        f64::round(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn to_i128(self) -> Option<i128> {
        let r = self.round();
        (r.is_finite() && r.abs() < 1.7e38).then_some(r as i128)
    }
    fn from_hi_lo(hi: f64, lo: f64) -> Self {
        hi + lo
    }
}

impl Scalar for TwoFloat {
    const PRECISION_BITS: u32 = 104;
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn from_i128(x: i128) -> Self {
        TwoFloat::from(x)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn round(self) -> Self {
        TwoFloat::round(self)
    }
    fn abs(self) -> Self {
        TwoFloat::abs(&self)
    }
    fn sqrt(self) -> Self {
        TwoFloat::sqrt(self)
    }
    fn to_i128(self) -> Option<i128> {
        let r = TwoFloat::round(self);
        let (hi, lo) = (r.hi(), r.lo());
        if !hi.is_finite() || hi.abs() >= 1.7e38 {
            return None;
        }
        (hi as i128).checked_add(lo as i128)
    }
    fn from_hi_lo(hi: f64, lo: f64) -> Self {
        TwoFloat::new_add(hi, lo)
    }
}

/// Ordered list of basis vectors (rows), all of one dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeBasis<S: Scalar = f64> {
    #[serde(skip)]
    vectors: Vec<Vec<S>>,
    pub precision_bits: u32,
}

impl<S: Scalar> LatticeBasis<S> {
    pub fn new(vectors: Vec<Vec<S>>) -> Result<Self> {
        let dim = vectors.first().map(Vec::len).ok_or_else(|| Error::InvalidArgument("empty basis".into()))?;
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        Ok(LatticeBasis { vectors, precision_bits: S::PRECISION_BITS })
    }

    pub fn from_f64_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| S::from_f64(x)).collect()).collect())
    }

    pub fn vectors(&self) -> &[Vec<S>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.vectors.iter().map(|v| v.iter().map(|x| x.to_f64()).collect()).collect()
    }

    /// Determinant of the Gram matrix, via Gram–Schmidt.
    pub fn gram_det(&self) -> f64 {
        let gs = GramSchmidt::compute(&self.vectors);
        gs.norms.iter().map(|b| b.to_f64()).product()
    }
}

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Gram–Schmidt data: `mu[i][j]` for j < i and squared norms of b*_i.
struct GramSchmidt<S: Scalar> {
    bstar: Vec<Vec<S>>,
    mu: Vec<Vec<S>>,
    norms: Vec<S>,
}

impl<S: Scalar> GramSchmidt<S> {
    fn compute(b: &[Vec<S>]) -> Self {
        let n = b.len();
        let mut gs = GramSchmidt { bstar: Vec::with_capacity(n), mu: vec![vec![S::zero(); n]; n], norms: Vec::with_capacity(n) };
        for i in 0..n {
            gs.bstar.push(Vec::new());
            gs.norms.push(S::zero());
            gs.update_row(b, i);
        }
        gs
    }

    fn update_row(&mut self, b: &[Vec<S>], i: usize) {
        let mut v = b[i].clone();
        for j in 0..i {
            let m = if self.norms[j] > S::zero() { dot(&b[i], &self.bstar[j]) / self.norms[j] } else { S::zero() };
            self.mu[i][j] = m;
            for (x, &y) in v.iter_mut().zip(&self.bstar[j]) {
                *x = *x - m * y;
            }
        }
        self.norms[i] = dot(&v, &v);
        self.bstar[i] = v;
    }
}

/// Output of reduction: `basis[i] = Σ_j transform[i][j]·input[j]`.
#[derive(Clone, Debug)]
pub struct Reduction<S: Scalar> {
    pub basis: LatticeBasis<S>,
    pub transform: Vec<Vec<i128>>,
}

fn sub_scaled_i128(a: &mut [i128], b: &[i128], q: i128) -> Result<()> {
    for (x, &y) in a.iter_mut().zip(b) {
        *x = y.checked_mul(q).and_then(|p| x.checked_sub(p)).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// LLL with δ = 0.99 and size reduction |μ| ≤ 1/2.
pub fn lattice_reduce<S: Scalar>(input: &LatticeBasis<S>) -> Result<LatticeBasis<S>> {
    lll_with_transform(input).map(|r| r.basis)
}

pub fn lll_with_transform<S: Scalar>(input: &LatticeBasis<S>) -> Result<Reduction<S>> {
    let n = input.len();
    let mut b = input.vectors.clone();
    let mut t: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let delta = S::from_f64(LLL_DELTA);
    let half = S::from_f64(0.5);
    let tiny = S::from_f64(S::epsilon() * S::epsilon());

    let mut gs = GramSchmidt::compute(&b);
    for i in 0..n {
        if gs.norms[i] <= tiny * dot(&b[i], &b[i]) {
            return Err(Error::DependentBasis);
        }
    }
    let mut k = 1;
    let mut iterations = 0u64;
    while k < n {
        iterations += 1;
        if iterations > 1_000_000 {
            return Err(Error::InvalidArgument("lattice reduction did not converge".into()));
        }
        // Size-reduce b_k, recomputing its Gram–Schmidt row until stable.
        for _pass in 0..16 {
            gs.update_row(&b, k);
            let mut changed = false;
            for j in (0..k).rev() {
                let m = gs.mu[k][j];
                if m.abs() <= half {
                    continue;
                }
                let q = m.round();
                let qi = q.to_i128().ok_or(Error::Overflow)?;
                let (head, tail) = b.split_at_mut(k);
                for (x, &y) in tail[0].iter_mut().zip(&head[j]) {
                    *x = *x - q * y;
                }
                let (th, tt) = t.split_at_mut(k);
                sub_scaled_i128(&mut tt[0], &th[j], qi)?;
                for i in 0..j {
                    gs.mu[k][i] = gs.mu[k][i] - q * gs.mu[j][i];
                }
                gs.mu[k][j] = m - q;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        gs.update_row(&b, k);
        if gs.norms[k] <= tiny * dot(&b[k], &b[k]) {
            return Err(Error::DependentBasis);
        }
        let mu = gs.mu[k][k - 1];
        if gs.norms[k] < (delta - mu * mu) * gs.norms[k - 1] {
            b.swap(k, k - 1);
            t.swap(k, k - 1);
            gs.update_row(&b, k - 1);
            gs.update_row(&b, k);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    Ok(Reduction { basis: LatticeBasis { vectors: b, precision_bits: S::PRECISION_BITS }, transform: t })
}

/// Lattice point near a target, with its integer coordinates in the given basis.
#[derive(Clone, Debug)]
pub struct CvpResult<S: Scalar> {
    pub point: Vec<S>,
    pub coeffs: Vec<i128>,
    pub distance: f64,
}

/// Babai nearest plane. Within `2^(n/2)` of the true minimum on an LLL basis.
pub fn closest_vector_approx<S: Scalar>(basis: &LatticeBasis<S>, target: &[S]) -> Result<CvpResult<S>> {
    if target.len() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), got: target.len() });
    }
    let gs = GramSchmidt::compute(&basis.vectors);
    let n = basis.len();
    let mut rest = target.to_vec();
    let mut coeffs = vec![0i128; n];
    for j in (0..n).rev() {
        let c = (dot(&rest, &gs.bstar[j]) / gs.norms[j]).round();
        coeffs[j] = c.to_i128().ok_or(Error::Overflow)?;
        for (x, &y) in rest.iter_mut().zip(&basis.vectors[j]) {
            *x = *x - c * y;
        }
    }
    let point: Vec<S> = target.iter().zip(&rest).map(|(&t, &r)| t - r).collect();
    let distance = dot(&rest, &rest).to_f64().sqrt();
    Ok(CvpResult { point, coeffs, distance })
}

/// Result of a bounded enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Coordinates in the given basis and squared distance to the target.
    pub points: Vec<(Vec<i128>, f64)>,
    pub nodes: u64,
    pub truncated: bool,
}

/// Every lattice point within `radius` of `target` (Schnorr–Euchner order),
/// stopping after `node_budget` tree nodes or `max_points` hits.
pub fn enumerate_near<S: Scalar>(
    basis: &LatticeBasis<S>,
    target: &[S],
    radius: f64,
    node_budget: u64,
    max_points: usize,
) -> Result<Enumeration> {
    if target.len() != basis.dim() {
        return Err(Error::DimensionMismatch { expected: basis.dim(), got: target.len() });
    }
    let gs = GramSchmidt::compute(&basis.vectors);
    let n = basis.len();
    let tproj: Vec<f64> = (0..n).map(|i| (dot(target, &gs.bstar[i]) / gs.norms[i]).to_f64()).collect();
    let mu: Vec<Vec<f64>> = gs.mu.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect();
    let norms: Vec<f64> = gs.norms.iter().map(|x| x.to_f64()).collect();
    let mut st = EnumState {
        n,
        mu,
        norms,
        tproj,
        r2: radius * radius,
        x: vec![0; n],
        out: Vec::new(),
        nodes: 0,
        budget: node_budget,
        max_points,
        truncated: false,
    };
    st.descend(n, 0.0);
    Ok(Enumeration { points: st.out, nodes: st.nodes, truncated: st.truncated })
}

struct EnumState {
    n: usize,
    mu: Vec<Vec<f64>>,
    norms: Vec<f64>,
    tproj: Vec<f64>,
    r2: f64,
    x: Vec<i128>,
    out: Vec<(Vec<i128>, f64)>,
    nodes: u64,
    budget: u64,
    max_points: usize,
    truncated: bool,
}

impl EnumState {
    fn descend(&mut self, level: usize, partial: f64) {
        if level == 0 {
            self.out.push((self.x.clone(), partial));
            if self.out.len() >= self.max_points {
                self.truncated = true;
            }
            return;
        }
        let i = level - 1;
        let center = self.tproj[i] - (i + 1..self.n).map(|j| self.mu[j][i] * self.x[j] as f64).sum::<f64>();
        let base = center.round();
        let s = if center >= base { 1.0 } else { -1.0 };
        // Candidates base, base+s, base−s, base+2s, ... have nondecreasing distance
        // to the center, so the first one outside the radius ends this level.
        for step in 0i64.. {
            if self.truncated {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.truncated = true;
                return;
            }
            let k = ((step + 1) / 2) as f64;
            let xi = if step % 2 == 1 { base + s * k } else { base - s * k };
            let d = xi - center;
            let cost = partial + self.norms[i] * d * d;
            if cost > self.r2 {
                return;
            }
            self.x[i] = xi as i128;
            self.descend(i, cost);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn orthogonal_basis_unchanged() {
        let b = LatticeBasis::<f64>::from_f64_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(lattice_reduce(&b).unwrap(), b);
    }

    #[test]
    fn skewed_two_dim_matches_brute_force() {
        let rows = vec![vec![1.0, 0.0], vec![0.999, 0.001]];
        let b = LatticeBasis::<f64>::from_f64_rows(&rows).unwrap();
        let r = lattice_reduce(&b).unwrap();
        let first = norm(&r.to_f64_rows()[0]);
        let mut best = f64::INFINITY;
        for i in -50i32..=50 {
            for j in -50i32..=50 {
                if i == 0 && j == 0 {
                    continue;
                }
                let v = [i as f64 * rows[0][0] + j as f64 * rows[1][0], i as f64 * rows[0][1] + j as f64 * rows[1][1]];
                best = best.min(norm(&v));
            }
        }
        assert!(first <= best * (1.0 + 1e-9), "{first} vs {best}");
        assert!((r.gram_det() / b.gram_det() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dependent_rejected() {
        let b = LatticeBasis::<f64>::from_f64_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert_eq!(lattice_reduce(&b), Err(Error::DependentBasis));
        assert!(LatticeBasis::<f64>::from_f64_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn babai_examples() {
        let b = LatticeBasis::<f64>::from_f64_rows(&[vec![2.0]]).unwrap();
        let c = closest_vector_approx(&b, &[3.1]).unwrap();
        assert_eq!(c.point, vec![4.0]);
        let b = LatticeBasis::<f64>::from_f64_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let c = closest_vector_approx(&b, &[0.4, 0.7]).unwrap();
        assert_eq!(c.point, vec![0.0, 1.0]);
        let c = closest_vector_approx(&b, &[3.0, -2.0]).unwrap();
        assert_eq!(c.distance, 0.0);
        assert!(closest_vector_approx(&b, &[1.0]).is_err());
    }

    #[test]
    fn twofloat_backend() {
        let b = LatticeBasis::<TwoFloat>::from_f64_rows(&[vec![1.0, 0.0], vec![0.999, 0.001]]).unwrap();
        let r = lll_with_transform(&b).unwrap();
        let v = &r.basis.vectors()[0];
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt().to_f64();
        assert!(n < 0.01);
        assert_eq!(TwoFloat::from_i128(1i128 << 100).to_i128(), Some(1i128 << 100));
    }

    #[test]
    fn enumeration_finds_all_close_points() {
        let b = LatticeBasis::<f64>::from_f64_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let e = enumerate_near(&b, &[0.5, 0.5], 0.75, 10_000, 100).unwrap();
        assert_eq!(e.points.len(), 4);
        assert!(!e.truncated);
    }
}
