//! Sparse multivariate polynomials over the exact coefficient tower.
//!
//! A polynomial is tagged with its variable basis (orthogonal `e` or
//! fundamental-weight `w` coordinates) and its rank; operations check both.
//! Terms are kept in a `BTreeMap` under the global graded-lex order with no
//! zero coefficients stored, so `==` is exact polynomial equality.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::coeff::{Coefficient, CoefficientRing};
use crate::monomial::Monomial;

/// Variable basis tag: orthogonal coordinates or fundamental weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    E,
    Omega,
}

impl Basis {
    pub fn var_letter(self) -> char {
        match self {
            Basis::E => 'e',
            Basis::Omega => 'w',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch { left: Basis, right: Basis },
    #[error("coefficient of {witness} not divisible by {modulus}")]
    NotDivisible { modulus: BigInt, witness: Monomial },
    #[error("non-integer coefficient at {witness}")]
    NotIntegral { witness: Monomial },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("monomial {0} outside the ambient basis")]
    OutsideBasis(Monomial),
    #[error("odd exponent in supposedly even monomial {0}")]
    OddExponent(Monomial),
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    basis: Basis,
    rank: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(rank: usize, basis: Basis) -> Self {
        Polynomial {
            basis,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, basis: Basis, c: Coefficient) -> Self {
        let mut p = Self::zero(rank, basis);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(rank), c);
        }
        p
    }

    pub fn one(rank: usize, basis: Basis) -> Self {
        Self::constant(rank, basis, Coefficient::one())
    }

    /// The variable `x_j` (0-based index).
    pub fn variable(rank: usize, basis: Basis, j: usize) -> Self {
        let mut p = Self::zero(rank, basis);
        p.terms.insert(Monomial::var(rank, j), Coefficient::one());
        p
    }

    pub fn from_terms<I>(rank: usize, basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut p = Self::zero(rank, basis);
        for (m, c) in terms {
            assert_eq!(m.rank(), rank, "term rank mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Test/fixture helper: integer terms given as (exponents, coefficient).
    pub fn from_int_terms(rank: usize, basis: Basis, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            rank,
            basis,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.to_vec()), Coefficient::from_int(*c))),
        )
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order (display order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coefficient {
        self.terms.get(m).cloned().unwrap_or_else(Coefficient::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    /// The largest coefficient ring appearing among the terms.
    pub fn coefficient_ring(&self) -> CoefficientRing {
        self.terms
            .values()
            .map(|c| c.ring())
            .max()
            .unwrap_or(CoefficientRing::Integer)
    }

    pub fn is_integral(&self) -> bool {
        self.coefficient_ring() == CoefficientRing::Integer
    }

    fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.rank != rhs.rank {
            return Err(PolyError::RankMismatch {
                left: self.rank,
                right: rhs.rank,
            });
        }
        if self.basis != rhs.basis {
            return Err(PolyError::BasisMismatch {
                left: self.basis,
                right: rhs.basis,
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank, self.basis);
        }
        Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn scale_int<T: Into<BigInt>>(&self, n: T) -> Self {
        self.scale(&Coefficient::Integer(n.into()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        assert_eq!(m.rank(), self.rank);
        Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_compatible(rhs)?;
        let mut out = Self::zero(self.rank, self.basis);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank, self.basis);
        for _ in 0..k {
            out = out.mul(self).expect("same rank and basis");
        }
        out
    }

    /// The sum of terms of total degree exactly `d`.
    pub fn graded_part(&self, d: u32) -> Self {
        Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.total_degree())
                .or_insert_with(|| Self::zero(self.rank, self.basis))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Divides every coefficient by `m` exactly. Requires an integral
    /// polynomial; on failure reports the first offending term in display
    /// order (descending graded-lex).
    pub fn scalar_divide_exact(&self, m: &BigInt) -> Result<Self, PolyError> {
        assert!(m.is_positive(), "modulus must be positive");
        let mut terms = BTreeMap::new();
        for (mon, c) in self.terms.iter().rev() {
            if !c.is_integer() {
                return Err(PolyError::NotIntegral {
                    witness: mon.clone(),
                });
            }
            match c.div_exact_int(m) {
                Some(q) => {
                    terms.insert(mon.clone(), q);
                }
                None => {
                    return Err(PolyError::NotDivisible {
                        modulus: m.clone(),
                        witness: mon.clone(),
                    })
                }
            }
        }
        Ok(Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms,
        })
    }

    pub fn is_divisible_by(&self, m: &BigInt) -> bool {
        self.scalar_divide_exact(m).is_ok()
    }

    /// Applies the ring homomorphism sending variable `j` to `images[j]`.
    /// All images must share one rank and basis, which become the output's.
    pub fn substitute_linear(&self, images: &[Polynomial]) -> Result<Self, PolyError> {
        if images.len() != self.rank {
            return Err(PolyError::RankMismatch {
                left: self.rank,
                right: images.len(),
            });
        }
        assert!(!images.is_empty(), "rank-0 substitution is not supported");
        let target_rank = images[0].rank;
        let target_basis = images[0].basis;
        for im in images {
            im.check_compatible(&images[0])?;
        }
        let one = Self::one(target_rank, target_basis);
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![one.clone()]; self.rank];
        let mut out = Self::zero(target_rank, target_basis);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target_rank, target_basis, c.clone());
            for j in 0..self.rank {
                let e = m.exponent(j) as usize;
                while powers[j].len() <= e {
                    let next = powers[j].last().unwrap().mul(&images[j])?;
                    powers[j].push(next);
                }
                term = term.mul(&powers[j][e])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Reads an even polynomial as a polynomial in the squared variables,
    /// halving every exponent.
    pub fn halve_exponents(&self) -> Result<Self, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let half = m.halve().ok_or_else(|| PolyError::OddExponent(m.clone()))?;
            terms.insert(half, c.clone());
        }
        Ok(Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms,
        })
    }

    /// Inverse of [`halve_exponents`]: substitutes squares for the variables.
    pub fn double_exponents(&self) -> Self {
        Polynomial {
            basis: self.basis,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.double(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient vector over an ambient monomial list (integral terms only).
    pub fn coefficient_vector(&self, ambient: &[Monomial]) -> Result<Vec<BigInt>, PolyError> {
        let index: BTreeMap<&Monomial, usize> =
            ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
        self.coefficient_vector_indexed(&index, ambient.len())
    }

    pub fn coefficient_vector_indexed(
        &self,
        index: &BTreeMap<&Monomial, usize>,
        len: usize,
    ) -> Result<Vec<BigInt>, PolyError> {
        let mut v = vec![BigInt::from(0); len];
        for (m, c) in &self.terms {
            let i = *index
                .get(m)
                .ok_or_else(|| PolyError::OutsideBasis(m.clone()))?;
            let n = c
                .as_integer()
                .ok_or_else(|| PolyError::NotIntegral { witness: m.clone() })?;
            v[i] = n.clone();
        }
        Ok(v)
    }

    /// Rebuilds a polynomial from a coefficient vector over an ambient list.
    pub fn from_vector(rank: usize, basis: Basis, ambient: &[Monomial], v: &[BigInt]) -> Self {
        assert_eq!(ambient.len(), v.len());
        Self::from_terms(
            rank,
            basis,
            ambient
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), Coefficient::Integer(c.clone()))),
        )
    }
}

/// The k-th elementary symmetric polynomial evaluated at `args`
/// (1-based `k`, so `k = 1` is the plain sum).
pub fn elementary_symmetric(k: usize, args: &[Polynomial]) -> Result<Polynomial, PolyError> {
    if k == 0 || k > args.len() {
        return Err(PolyError::IndexOutOfRange {
            index: k,
            max: args.len(),
        });
    }
    let rank = args[0].rank;
    let basis = args[0].basis;
    for a in args {
        a.check_compatible(&args[0])?;
    }
    // column j of `table` holds s_j of the prefix processed so far
    let mut table = vec![Polynomial::zero(rank, basis); k + 1];
    table[0] = Polynomial::one(rank, basis);
    for a in args {
        for j in (1..=k).rev() {
            let bump = table[j - 1].mul(a)?;
            table[j] = table[j].add(&bump)?;
        }
    }
    Ok(table[k].clone())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.basis.var_letter();
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if neg { c.neg() } else { c.clone() };
            if m.is_constant() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                let mut first = true;
                for (j, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{letter}{}", j + 1)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
