//! Hermite and Smith normal forms with unimodular transform recovery,
//! integer kernels, and Diophantine solving with witnesses.
//!
//! Conventions are fixed once so every canonical form is reproducible:
//! the row HNF has positive pivots with strictly increasing pivot columns,
//! entries above each pivot reduced into `[0, pivot)`, and zero rows at the
//! bottom. The SNF diagonal is nonnegative with each entry dividing the
//! next. No modular shortcuts: every step is an exact unimodular row or
//! column operation, so witnesses come out for free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no integer solution exists")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * m = H` canonical.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let rows = m.rows();
    let cols = m.cols();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        if (r..rows).all(|i| h.get(i, c).is_zero()) {
            continue;
        }
        // gcd-combine column c below row r into a single pivot
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by_key(|&i| h.get(i, c).abs())
                .expect("nonzero entry exists");
            h.swap_rows(r, pivot);
            u.swap_rows(r, pivot);
            let mut done = true;
            for i in r + 1..rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_multiple_of_row(i, r, &q);
                u.add_multiple_of_row(i, r, &q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_multiple_of_row(i, r, &q);
            u.add_multiple_of_row(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `U * m * V = S`, `S`
/// diagonal with nonnegative entries forming a divisibility chain, and
/// `U`, `V` unimodular.
///
/// Diagonalization alternates row and column Hermite reductions. Each pass
/// keeps every entry reduced modulo its pivot, which controls the
/// coefficient growth a naive pivot-and-clear SNF suffers on dense inputs.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    let mut rounds = 0;
    while !is_diagonal(&s) {
        let (h, p) = hnf(&s);
        u = p.mul(&u);
        s = h;
        if is_diagonal(&s) {
            break;
        }
        let (ht, q) = hnf(&s.transpose());
        v = v.mul(&q.transpose());
        s = ht.transpose();
        rounds += 1;
        assert!(rounds < 200, "SNF alternation failed to converge");
    }
    // inputs that are diagonal from the start bypass the HNF sign fixes
    for t in 0..n {
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    // enforce the divisibility chain d_i | d_{i+1}
    loop {
        let mut fixed = true;
        for i in 0..n.saturating_sub(1) {
            let a = s.get(i, i).clone();
            let b = s.get(i + 1, i + 1).clone();
            if a.is_zero() && !b.is_zero() {
                // push zeros to the end of the chain
                s.swap_rows(i, i + 1);
                u.swap_rows(i, i + 1);
                s.swap_cols(i, i + 1);
                v.swap_cols(i, i + 1);
                fixed = false;
                continue;
            }
            if a.is_zero() || (&b % &a).is_zero() {
                continue;
            }
            // classic 2x2 repair: gcd moves to position i, lcm to i+1
            s.add_multiple_of_col(i, i + 1, &BigInt::one());
            v.add_multiple_of_col(i, i + 1, &BigInt::one());
            // row-reduce entry (i+1, i)
            loop {
                let pivot = s.get(i, i).clone();
                if s.get(i + 1, i).is_zero() {
                    break;
                }
                let q = -s.get(i + 1, i).div_floor(&pivot);
                s.add_multiple_of_row(i + 1, i, &q);
                u.add_multiple_of_row(i + 1, i, &q);
                if !s.get(i + 1, i).is_zero() {
                    s.swap_rows(i, i + 1);
                    u.swap_rows(i, i + 1);
                }
            }
            // clear fill-in at (i, i+1)
            if !s.get(i, i + 1).is_zero() {
                let q = -(s.get(i, i + 1) / s.get(i, i));
                s.add_multiple_of_col(i + 1, i, &q);
                v.add_multiple_of_col(i + 1, i, &q);
            }
            if s.get(i, i).is_negative() {
                s.negate_row(i);
                u.negate_row(i);
            }
            if s.get(i + 1, i + 1).is_negative() {
                s.negate_row(i + 1);
                u.negate_row(i + 1);
            }
            fixed = false;
        }
        if fixed {
            break;
        }
    }
    (s, u, v)
}

/// The diagonal of the Smith normal form (one entry per `min(rows, cols)`).
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = snf(m);
    (0..m.rows().min(m.cols()))
        .map(|i| s.get(i, i).clone())
        .collect()
}

/// A basis of the left kernel `{x : x * m = 0}`, read off the rows of the
/// HNF transform that map to zero rows.
pub fn row_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hnf(m);
    (0..m.rows())
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row_vec(i))
        .collect()
}

fn is_diagonal(m: &IntMatrix) -> bool {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m.get(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// A factored system `x * a = b`: the SNF is computed once so many
/// right-hand sides can be solved cheaply.
pub struct SnfSolver {
    rows: usize,
    cols: usize,
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl SnfSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let (s, u, v) = snf(a);
        SnfSolver {
            rows: a.rows(),
            cols: a.cols(),
            s,
            u,
            v,
        }
    }

    /// The canonical witness for `x * a = b` (free coordinates zero).
    pub fn solve(&self, b: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
        if b.len() != self.cols {
            return Err(SolveError::Dimension(format!(
                "rhs length {} does not match {} columns",
                b.len(),
                self.cols
            )));
        }
        // x a = b  <=>  y s = b v  with  x = y u
        let c = self.v.mul_row_vector(b);
        let mut y = vec![BigInt::zero(); self.rows];
        let n = self.rows.min(self.cols);
        for (i, ci) in c.iter().enumerate() {
            if i < n && !self.s.get(i, i).is_zero() {
                let (q, r) = ci.div_rem(self.s.get(i, i));
                if !r.is_zero() {
                    return Err(SolveError::NoSolution);
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return Err(SolveError::NoSolution);
            }
        }
        Ok(self.u.mul_row_vector(&y))
    }
}

/// Solves `x * a = b` over the integers via the Smith normal form,
/// returning the canonical witness (all free coordinates zero).
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigInt>, SolveError> {
    SnfSolver::new(a).solve(b)
}

/// Inverts a unimodular matrix exactly (its HNF is the identity).
pub fn invert_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let (h, u) = hnf(m);
    if h == IntMatrix::identity(m.rows()) {
        Some(u)
    } else {
        None
    }
}
