//! Row-style Hermite normal form and exact lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::intmatrix::IntMatrix;

/// Hermite normal form of the row lattice of `a`: upper echelon, positive
/// pivots, entries above each pivot reduced into `[0, pivot)`. Zero rows dropped.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let k = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &k);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let k = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &k);
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<BigInt>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    IntMatrix::from_rows(&rows).expect("rows share a length")
}

/// Coefficients `c` with `cᵀ·h = v` when `v` lies in the row lattice of the
/// Hermite form `h`, otherwise `None`.
pub fn lattice_coordinates(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), h.cols(), "vector length must match lattice dimension");
    let mut rest = v.to_vec();
    let mut coeffs = Vec::with_capacity(h.rows());
    for i in 0..h.rows() {
        let c = (0..h.cols()).find(|&c| !h[(i, c)].is_zero())?;
        let (q, rem) = rest[c].div_rem(&h[(i, c)]);
        if !rem.is_zero() {
            return None;
        }
        for (j, x) in rest.iter_mut().enumerate() {
            *x -= &q * &h[(i, j)];
        }
        coeffs.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

pub fn lattice_contains(h: &IntMatrix, v: &[BigInt]) -> bool {
    lattice_coordinates(h, v).is_some()
}
