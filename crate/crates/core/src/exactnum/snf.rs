//! Smith normal form over the integers.
//!
//! The decomposition is `A = U·S·V`. The inverses `U⁻¹`, `V⁻¹` are tracked
//! alongside because the congruence solver needs `U⁻¹·A·V⁻¹ = S`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intmatrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries s_1 | s_2 | ... (length min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Working state: `p·a·q = s` with `p`, `q` unimodular.
struct Work {
    s: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl Work {
    fn row_add(&mut self, i: usize, j: usize, k: &BigInt) {
        self.s.add_row_multiple(i, j, k);
        self.p.add_row_multiple(i, j, k);
        self.p_inv.add_col_multiple(j, i, &-k);
    }

    fn col_add(&mut self, i: usize, j: usize, k: &BigInt) {
        self.s.add_col_multiple(i, j, k);
        self.q.add_col_multiple(i, j, k);
        self.q_inv.add_row_multiple(j, i, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.s.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.s.negate_row(i);
        self.p.negate_row(i);
        self.p_inv.negate_col(i);
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        s: a.clone(),
        p: IntMatrix::identity(m),
        p_inv: IntMatrix::identity(m),
        q: IntMatrix::identity(n),
        q_inv: IntMatrix::identity(n),
    };

    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_nonzero(&w.s, t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.s[(i, t)].is_zero() {
                    continue;
                }
                let k = -w.s[(i, t)].div_floor(&w.s[(t, t)]);
                w.row_add(i, t, &k);
                if !w.s[(i, t)].is_zero() {
                    w.row_swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.s[(t, j)].is_zero() {
                    continue;
                }
                let k = -w.s[(t, j)].div_floor(&w.s[(t, t)]);
                w.col_add(j, t, &k);
                if !w.s[(t, j)].is_zero() {
                    w.col_swap(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let piv = w.s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.s[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => w.row_add(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.s[(t, t)].is_negative() {
            w.row_negate(t);
        }
    }

    SmithDecomposition { u: w.p_inv, s: w.s, v: w.q_inv, u_inv: w.p, v_inv: w.q }
}

fn min_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
