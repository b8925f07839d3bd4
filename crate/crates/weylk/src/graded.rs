//! Graded lattices: finitely generated subgroups of the degree-d piece of
//! the symmetric algebra, stored as integer matrices over the fixed
//! monomial basis and kept in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::normal_form::{elementary_divisors, hnf, invert_unimodular, snf};
use crate::polynomial::{Basis, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector is not a member of the lattice")]
    NotMember,
    #[error("not a sublattice: row {row} lies outside the ambient lattice")]
    NotSublattice { row: usize },
    #[error("degree/rank mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A sublattice of the degree-`degree` graded piece of a polynomial ring
/// in `rank` variables, with generators as rows of an HNF basis matrix
/// over the descending graded-lex monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedLattice {
    rank: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    basis: IntMatrix,
}

impl GradedLattice {
    /// Builds the lattice spanned by integer row vectors, canonicalizing
    /// to a full-row-rank HNF basis.
    pub fn from_rows(rank: usize, degree: u32, rows: Vec<Vec<BigInt>>) -> Self {
        let monomials = monomials_of_degree(rank, degree);
        let dim = monomials.len();
        assert!(
            rows.iter().all(|r| r.len() == dim),
            "row length must match the ambient dimension {dim}"
        );
        let basis = if rows.is_empty() {
            IntMatrix::zeros(0, dim)
        } else {
            let (h, _) = hnf(&IntMatrix::from_rows(rows));
            let nonzero = (0..h.rows()).take_while(|&i| !h.is_zero_row(i)).count();
            let kept: Vec<Vec<BigInt>> = (0..nonzero).map(|i| h.row_vec(i)).collect();
            if kept.is_empty() {
                IntMatrix::zeros(0, dim)
            } else {
                IntMatrix::from_rows(kept)
            }
        };
        GradedLattice {
            rank,
            degree,
            monomials,
            basis,
        }
    }

    /// The span of homogeneous degree-`degree` polynomials with integer
    /// coefficients (typically in omega-coordinates).
    pub fn from_polynomials(
        rank: usize,
        degree: u32,
        polys: &[Polynomial],
    ) -> Result<Self, LatticeError> {
        let monomials = monomials_of_degree(rank, degree);
        let mut rows = Vec::with_capacity(polys.len());
        for p in polys {
            if !p.is_zero() && !p.is_homogeneous_of(degree) {
                return Err(LatticeError::Mismatch(format!(
                    "polynomial of degree {:?} in a degree-{degree} slice",
                    p.degree()
                )));
            }
            rows.push(p.coefficient_vector(&monomials)?);
        }
        Ok(Self::from_rows(rank, degree, rows))
    }

    /// The full ambient lattice (identity basis).
    pub fn full(rank: usize, degree: u32) -> Self {
        let monomials = monomials_of_degree(rank, degree);
        let basis = IntMatrix::identity(monomials.len());
        GradedLattice {
            rank,
            degree,
            monomials,
            basis,
        }
    }

    /// The zero sublattice.
    pub fn zero(rank: usize, degree: u32) -> Self {
        Self::from_rows(rank, degree, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    /// Number of basis rows (the rank of the lattice as a free group).
    pub fn lattice_rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    /// Basis row as a polynomial over the ambient monomials.
    pub fn row_polynomial(&self, i: usize, basis: Basis) -> Polynomial {
        Polynomial::from_vector(self.rank, basis, &self.monomials, self.basis.row(i))
    }

    /// Integer witness expressing `v` over the basis rows, or `None`.
    /// Back-substitution against the HNF profile, so membership is exact.
    pub fn member(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim(), "vector/ambient mismatch");
        let mut w = v.to_vec();
        let mut witness = vec![BigInt::zero(); self.basis.rows()];
        for (i, slot) in witness.iter_mut().enumerate() {
            let pivot_col = (0..self.basis.cols())
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("basis rows are nonzero");
            let (q, r) = w[pivot_col].div_rem(self.basis.get(i, pivot_col));
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj -= &q * self.basis.get(i, j);
                }
            }
            *slot = q;
        }
        if w.iter().all(Zero::is_zero) {
            Some(witness)
        } else {
            None
        }
    }

    pub fn member_polynomial(&self, p: &Polynomial) -> Result<Option<Vec<BigInt>>, LatticeError> {
        let v = p.coefficient_vector(&self.monomials)?;
        Ok(self.member(&v))
    }

    /// Smallest positive N with `N * v` in the lattice, via exact rational
    /// back-substitution; `None` when `v` is outside the rational span.
    pub fn rational_denominator(&self, v: &[BigInt]) -> Option<BigInt> {
        assert_eq!(v.len(), self.ambient_dim());
        let mut w: Vec<BigRational> = v
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut lcm = BigInt::one();
        for i in 0..self.basis.rows() {
            let pivot_col = (0..self.basis.cols())
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("basis rows are nonzero");
            let q = &w[pivot_col] / BigRational::from_integer(self.basis.get(i, pivot_col).clone());
            if !q.is_zero() {
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj -= &q * BigRational::from_integer(self.basis.get(i, j).clone());
                }
                lcm = lcm.lcm(q.denom());
            }
        }
        if w.iter().all(Zero::is_zero) {
            Some(lcm)
        } else {
            None
        }
    }

    pub fn contains(&self, sub: &GradedLattice) -> bool {
        self.coordinates_of(sub).is_ok()
    }

    /// Expresses the rows of `sub` in this lattice's basis coordinates.
    fn coordinates_of(&self, sub: &GradedLattice) -> Result<IntMatrix, LatticeError> {
        if sub.rank != self.rank || sub.degree != self.degree {
            return Err(LatticeError::Mismatch(format!(
                "lattices live in different slices ({}/{} vs {}/{})",
                self.rank, self.degree, sub.rank, sub.degree
            )));
        }
        let mut rows = Vec::with_capacity(sub.basis.rows());
        for i in 0..sub.basis.rows() {
            let w = self
                .member(sub.basis.row(i))
                .ok_or(LatticeError::NotSublattice { row: i })?;
            rows.push(w);
        }
        Ok(if rows.is_empty() {
            IntMatrix::zeros(0, self.basis.rows())
        } else {
            IntMatrix::from_rows(rows)
        })
    }

    /// Elementary divisors of `ambient / sub` (SNF of sub's coordinates in
    /// ambient's basis), padded with zeros for any free quotient rank.
    pub fn quotient_divisors(&self, sub: &GradedLattice) -> Result<Vec<BigInt>, LatticeError> {
        let coords = self.coordinates_of(sub)?;
        let mut divs: Vec<BigInt> = if coords.rows() == 0 {
            Vec::new()
        } else {
            elementary_divisors(&coords)
                .into_iter()
                .filter(|d| !d.is_zero())
                .collect()
        };
        while divs.len() < self.basis.rows() {
            divs.push(BigInt::zero());
        }
        Ok(divs)
    }

    /// The p-saturation of `sub` inside this (ambient) lattice: the set of
    /// ambient vectors with some p-power multiple in `sub`.
    pub fn p_saturate(
        &self,
        sub: &GradedLattice,
        p: &BigInt,
    ) -> Result<GradedLattice, LatticeError> {
        assert!(p.is_positive() && !p.is_one(), "p must be a prime > 1");
        let coords = self.coordinates_of(sub)?;
        if coords.rows() == 0 {
            return Ok(GradedLattice::zero(self.rank, self.degree));
        }
        let (s, _, v) = snf(&coords);
        let v_inv = invert_unimodular(&v).expect("SNF transform is unimodular");
        // rows of S V^{-1} are d_i * (row i of V^{-1}); divide out the p-part
        let mut sat_rows = Vec::new();
        for i in 0..coords.rows().min(coords.cols()) {
            let mut d = s.get(i, i).clone();
            if d.is_zero() {
                continue;
            }
            while (&d % p).is_zero() {
                d /= p;
            }
            let row: Vec<BigInt> = (0..v_inv.cols()).map(|j| &d * v_inv.get(i, j)).collect();
            sat_rows.push(row);
        }
        // map coordinate rows back into ambient vectors
        let ambient_rows: Vec<Vec<BigInt>> = sat_rows
            .iter()
            .map(|r| self.basis.mul_row_vector(r))
            .collect();
        Ok(GradedLattice::from_rows(
            self.rank,
            self.degree,
            ambient_rows,
        ))
    }
}
