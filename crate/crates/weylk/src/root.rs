//! Root data for the families B_n (n >= 3) and D_n (n >= 4): the weight
//! lattice, the e <-> omega basis change, and weights in dyadic
//! e-coordinates.
//!
//! Basis-change convention (standard orthogonal presentation):
//!
//! - B_n: w_i = e_1 + ... + e_i for i < n, w_n = (e_1 + ... + e_n)/2
//! - D_n: w_i = e_1 + ... + e_i for i <= n-2,
//!   w_{n-1} = (e_1 + ... + e_{n-1} - e_n)/2, w_n = (e_1 + ... + e_n)/2
//!
//! With this choice e_j is an integer combination of the w_j, so
//! "integral in omega coordinates" is exactly membership in S(Lambda).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::coeff::Coefficient;
use crate::matrix::IntMatrix;
use crate::polynomial::{Basis, PolyError, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    B,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::B => 'B',
            Family::D => 'D',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::B => 3,
            Family::D => 4,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        match s {
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(RootError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error(
        "type {family}{rank} out of range: requires n >= {min} (and n <= {max} at desk scale)"
    )]
    RankOutOfRange {
        family: char,
        rank: usize,
        min: usize,
        max: usize,
    },
    #[error("unknown family {0:?} (expected B or D)")]
    UnknownFamily(String),
    #[error("weight {0} is not in the weight lattice")]
    WeightNotInLattice(Weight),
    #[error("rank {0} too large for exhaustive Weyl enumeration (max {1})")]
    RankTooLargeForEnumeration(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Hard cap on exhaustive Weyl-group enumeration.
pub const MAX_ENUMERATION_RANK: usize = 6;

/// Construction-time cap on the rank itself.
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    /// Row j = w_j in e-coordinates (dyadic entries, denominators <= 2).
    omega_in_e: Vec<Vec<Coefficient>>,
    /// Row j = e_j in omega-coordinates (integer entries).
    e_in_omega: IntMatrix,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        if rank < family.min_rank() || rank > MAX_RANK {
            return Err(RootError::RankOutOfRange {
                family: family.letter(),
                rank,
                min: family.min_rank(),
                max: MAX_RANK,
            });
        }
        let n = rank;
        let half = || Coefficient::dyadic(1, -1);
        let minus_half = || Coefficient::dyadic(-1, -1);
        let one = Coefficient::one;
        let zero = Coefficient::zero;

        let mut omega_in_e = vec![vec![zero(); n]; n];
        match family {
            Family::B => {
                for (i, row) in omega_in_e.iter_mut().enumerate().take(n - 1) {
                    for entry in row.iter_mut().take(i + 1) {
                        *entry = one();
                    }
                }
                for entry in omega_in_e[n - 1].iter_mut() {
                    *entry = half();
                }
            }
            Family::D => {
                for (i, row) in omega_in_e.iter_mut().enumerate().take(n - 2) {
                    for entry in row.iter_mut().take(i + 1) {
                        *entry = one();
                    }
                }
                for entry in omega_in_e[n - 2].iter_mut().take(n - 1) {
                    *entry = half();
                }
                omega_in_e[n - 2][n - 1] = minus_half();
                for entry in omega_in_e[n - 1].iter_mut() {
                    *entry = half();
                }
            }
        }

        let mut e_in_omega = IntMatrix::zeros(n, n);
        match family {
            Family::B => {
                // e_i = w_i - w_{i-1} (i < n), e_n = 2 w_n - w_{n-1}
                for i in 0..n - 1 {
                    e_in_omega.set(i, i, BigInt::from(1));
                    if i > 0 {
                        e_in_omega.set(i, i - 1, BigInt::from(-1));
                    }
                }
                e_in_omega.set(n - 1, n - 1, BigInt::from(2));
                e_in_omega.set(n - 1, n - 2, BigInt::from(-1));
            }
            Family::D => {
                // e_i = w_i - w_{i-1} (i <= n-2),
                // e_{n-1} = w_{n-1} + w_n - w_{n-2}, e_n = w_n - w_{n-1}
                for i in 0..n - 2 {
                    e_in_omega.set(i, i, BigInt::from(1));
                    if i > 0 {
                        e_in_omega.set(i, i - 1, BigInt::from(-1));
                    }
                }
                e_in_omega.set(n - 2, n - 3, BigInt::from(-1));
                e_in_omega.set(n - 2, n - 2, BigInt::from(1));
                e_in_omega.set(n - 2, n - 1, BigInt::from(1));
                e_in_omega.set(n - 1, n - 2, BigInt::from(-1));
                e_in_omega.set(n - 1, n - 1, BigInt::from(1));
            }
        }

        let datum = RootDatum {
            family,
            rank,
            omega_in_e,
            e_in_omega,
        };
        datum.verify_inverse();
        Ok(datum)
    }

    /// omega_in_e * e_in_omega must be the identity exactly.
    fn verify_inverse(&self) {
        let n = self.rank;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Coefficient::zero();
                for k in 0..n {
                    let e_entry = Coefficient::Integer(self.e_in_omega.get(k, j).clone());
                    acc = acc.add(&self.omega_in_e[i][k].mul(&e_entry));
                }
                let expected = if i == j {
                    Coefficient::one()
                } else {
                    Coefficient::zero()
                };
                assert_eq!(acc, expected, "basis-change matrices are not inverse");
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn omega_in_e(&self) -> &[Vec<Coefficient>] {
        &self.omega_in_e
    }

    pub fn e_in_omega(&self) -> &IntMatrix {
        &self.e_in_omega
    }

    /// w_j as a degree-1 polynomial in the e-basis (0-based j).
    pub fn omega_poly(&self, j: usize) -> Polynomial {
        Polynomial::from_terms(
            self.rank,
            Basis::E,
            self.omega_in_e[j]
                .iter()
                .enumerate()
                .map(|(k, c)| (crate::monomial::Monomial::var(self.rank, k), c.clone())),
        )
    }

    /// e_j as a degree-1 polynomial in the omega-basis (0-based j).
    pub fn e_poly(&self, j: usize) -> Polynomial {
        Polynomial::from_terms(
            self.rank,
            Basis::Omega,
            (0..self.rank).map(|k| {
                (
                    crate::monomial::Monomial::var(self.rank, k),
                    Coefficient::Integer(self.e_in_omega.get(j, k).clone()),
                )
            }),
        )
    }

    /// Rewrites a polynomial from the e-basis into omega-coordinates.
    pub fn to_omega(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        assert_eq!(p.basis(), Basis::E, "to_omega expects an e-basis input");
        let images: Vec<Polynomial> = (0..self.rank).map(|j| self.e_poly(j)).collect();
        p.substitute_linear(&images)
    }

    /// Rewrites a polynomial from omega-coordinates back into the e-basis.
    pub fn to_e(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        assert_eq!(p.basis(), Basis::Omega, "to_e expects an omega-basis input");
        let images: Vec<Polynomial> = (0..self.rank).map(|j| self.omega_poly(j)).collect();
        p.substitute_linear(&images)
    }

    /// Fundamental weight w_j (0-based).
    pub fn fundamental_weight(&self, j: usize) -> Weight {
        let doubled = self.omega_in_e[j]
            .iter()
            .map(|c| {
                c.mul_pow2(1)
                    .as_integer()
                    .expect("omega has dyadic entries with denominator <= 2")
                    .clone()
            })
            .collect();
        Weight { doubled }
    }

    /// Omega-coordinates of a weight, when it lies in the lattice.
    pub fn weight_omega_coordinates(&self, w: &Weight) -> Option<Vec<BigInt>> {
        assert_eq!(w.rank(), self.rank);
        let mut out = Vec::with_capacity(self.rank);
        for k in 0..self.rank {
            let mut acc = BigInt::zero();
            for j in 0..self.rank {
                acc += &w.doubled[j] * self.e_in_omega.get(j, k);
            }
            let (q, r) = acc.div_rem(&BigInt::from(2));
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(out)
    }

    pub fn weight_in_lattice(&self, w: &Weight) -> bool {
        self.weight_omega_coordinates(w).is_some()
    }
}

/// A weight in e-coordinates, stored as twice its coordinate vector so all
/// entries stay integral (spin weights are half-integral).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    doubled: Vec<BigInt>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            doubled: vec![BigInt::zero(); rank],
        }
    }

    pub fn from_e_ints(coords: &[i64]) -> Self {
        Weight {
            doubled: coords.iter().map(|&c| BigInt::from(2 * c)).collect(),
        }
    }

    pub fn from_doubled(doubled: Vec<BigInt>) -> Self {
        Weight { doubled }
    }

    pub fn doubled(&self) -> &[BigInt] {
        &self.doubled
    }

    pub fn rank(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight {
            doubled: self
                .doubled
                .iter()
                .zip(&rhs.doubled)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn coefficient(&self, j: usize) -> Coefficient {
        Coefficient::dyadic(self.doubled[j].clone(), -1)
    }

    /// The weight as a degree-1 polynomial in the e-basis.
    pub fn to_poly(&self, rank: usize) -> Polynomial {
        assert_eq!(self.rank(), rank);
        Polynomial::from_terms(
            rank,
            Basis::E,
            (0..rank).map(|j| (crate::monomial::Monomial::var(rank, j), self.coefficient(j))),
        )
    }

    /// Parses the CLI form `1/2,1/2,-1` (comma-separated integers or halves).
    pub fn parse(text: &str) -> Option<Weight> {
        let mut doubled = Vec::new();
        for tok in text.split(',') {
            let tok = tok.trim();
            let v = match tok.split_once('/') {
                None => tok.parse::<BigInt>().ok()? * 2,
                Some((num, den)) => {
                    if den.trim() != "2" {
                        return None;
                    }
                    num.trim().parse::<BigInt>().ok()?
                }
            };
            doubled.push(v);
        }
        Some(Weight { doubled })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if d.is_even() {
                write!(f, "{}", d / 2)?;
            } else {
                write!(f, "{d}/2")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b3_fundamental_weights() {
        let datum = RootDatum::new(Family::B, 3).unwrap();
        assert_eq!(datum.omega_poly(0).to_string(), "e1");
        assert_eq!(datum.omega_poly(1).to_string(), "e1 + e2");
        assert_eq!(
            datum.omega_poly(2).to_string(),
            "1/2^1*e1 + 1/2^1*e2 + 1/2^1*e3"
        );
    }

    #[test]
    fn d4_spin_weights() {
        let datum = RootDatum::new(Family::D, 4).unwrap();
        assert_eq!(
            datum.omega_poly(2).to_string(),
            "1/2^1*e1 + 1/2^1*e2 + 1/2^1*e3 - 1/2^1*e4"
        );
        assert_eq!(
            datum.omega_poly(3).to_string(),
            "1/2^1*e1 + 1/2^1*e2 + 1/2^1*e3 + 1/2^1*e4"
        );
    }

    #[test]
    fn rank_bounds_enforced() {
        assert!(matches!(
            RootDatum::new(Family::B, 2),
            Err(RootError::RankOutOfRange { .. })
        ));
        assert!(matches!(
            RootDatum::new(Family::D, 3),
            Err(RootError::RankOutOfRange { .. })
        ));
        assert!(RootDatum::new(Family::B, 3).is_ok());
        assert!(RootDatum::new(Family::D, 4).is_ok());
    }

    #[test]
    fn omega_e_roundtrip_is_identity() {
        for (family, rank) in [
            (Family::B, 3),
            (Family::B, 4),
            (Family::D, 4),
            (Family::D, 5),
        ] {
            let datum = RootDatum::new(family, rank).unwrap();
            // round-trip w_j -> e -> w on each fundamental generator
            for j in 0..rank {
                let wj = Polynomial::variable(rank, Basis::Omega, j);
                let in_e = datum.to_e(&wj).unwrap();
                let back = datum.to_omega(&in_e).unwrap();
                assert_eq!(
                    back,
                    wj,
                    "roundtrip failed for w{} in {family:?}{rank}",
                    j + 1
                );
            }
            // and e_j -> w -> e
            for j in 0..rank {
                let ej = Polynomial::variable(rank, Basis::E, j);
                let in_w = datum.to_omega(&ej).unwrap();
                let back = datum.to_e(&in_w).unwrap();
                assert_eq!(back, ej);
            }
        }
    }

    #[test]
    fn roundtrip_omega3_b3_via_matrix_composition() {
        // independent check: compose the two basis-change matrices
        let datum = RootDatum::new(Family::B, 3).unwrap();
        let w3 = Polynomial::variable(3, Basis::Omega, 2);
        let roundtrip = datum.to_omega(&datum.to_e(&w3).unwrap()).unwrap();
        assert_eq!(roundtrip, w3);
    }

    #[test]
    fn weight_lattice_membership() {
        let datum = RootDatum::new(Family::B, 3).unwrap();
        let spin = datum.fundamental_weight(2);
        assert_eq!(spin.to_string(), "1/2,1/2,1/2");
        assert!(datum.weight_in_lattice(&spin));
        assert_eq!(
            datum.weight_omega_coordinates(&spin),
            Some(vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)])
        );
        // (1/2, 0, 0) is not in the lattice
        let bad = Weight::from_doubled(vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        assert!(!datum.weight_in_lattice(&bad));
        let e1 = Weight::from_e_ints(&[1, 0, 0]);
        assert_eq!(
            datum.weight_omega_coordinates(&e1),
            Some(vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)])
        );
    }

    #[test]
    fn weight_parse_roundtrip() {
        for text in ["1/2,1/2,1/2", "1,0,-2", "-3/2,1,0"] {
            let w = Weight::parse(text).unwrap();
            assert_eq!(w.to_string(), text);
        }
        assert!(Weight::parse("1/3,0").is_none());
    }
}
