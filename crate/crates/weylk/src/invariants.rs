//! Basic Weyl invariants for B_n and D_n, graded ideal slices as integer
//! lattices, and the degreewise check that the invariant ring is generated
//! by them once 2 is inverted.
//!
//! For B_n the generators are t_i = s_i(e_1^2, ..., e_n^2); for D_n they
//! are t_1, ..., t_{n-1} together with p_n = e_1 ... e_n. Every generator
//! is machine-checked invariant under the whole group at construction.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graded::{GradedLattice, LatticeError};
use crate::matrix::IntMatrix;
use crate::monomial::monomials_of_degree;
use crate::normal_form::row_kernel;
use crate::polynomial::{elementary_symmetric, Basis, PolyError, Polynomial};
use crate::root::{Family, RootDatum, RootError};
use crate::weyl::{act, weyl_elements, weyl_generators, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("generator {index} failed the invariance check (action convention bug): witness {witness:?}")]
    NotInvariant {
        index: usize,
        witness: SignedPermutation,
    },
    #[error("degree {degree} exceeds the configured cutoff {cutoff}")]
    CutoffExceeded { degree: u32, cutoff: u32 },
    #[error("{0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Checks the degree hypothesis of the rewriting lemma and the saturation
/// bound: d >= 2 for B_n, n > d >= 2 for D_n.
pub fn check_degree_hypothesis(
    family: Family,
    rank: usize,
    degree: u32,
) -> Result<(), InvariantError> {
    match family {
        Family::B if degree >= 2 => Ok(()),
        Family::B => Err(InvariantError::HypothesisViolated(format!(
            "type B_n requires d>=2 (got d={degree})"
        ))),
        Family::D if degree >= 2 && (degree as usize) < rank => Ok(()),
        Family::D => Err(InvariantError::HypothesisViolated(format!(
            "type D_n requires n>d>=2 (got n={rank}, d={degree})"
        ))),
    }
}

/// The basic invariant generators of a root datum, invariance-verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFamily {
    datum: RootDatum,
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl InvariantFamily {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn family(&self) -> Family {
        self.datum.family()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Generators in the e-basis, 0-indexed (`t_1` is index 0).
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Polynomial {
        &self.generators[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// The degree-d homogeneous piece of the ideal generated by the basic
    /// invariants, as a lattice in omega-coordinates of the ambient graded
    /// piece. Total in d (degrees below every generator give zero).
    pub fn ideal_slice(&self, degree: u32) -> Result<GradedLattice, InvariantError> {
        let n = self.rank();
        let mut polys = Vec::new();
        for (g, &dg) in self.generators.iter().zip(&self.degrees) {
            if dg > degree {
                continue;
            }
            let g_omega = self.datum.to_omega(g)?;
            for m in monomials_of_degree(n, degree - dg) {
                polys.push(g_omega.mul_monomial(&m));
            }
        }
        Ok(GradedLattice::from_polynomials(n, degree, &polys)?)
    }

    /// The degree-d span of all products of generators (the graded piece
    /// of the subring they generate), in omega-coordinates.
    pub fn products_span(&self, degree: u32) -> Result<GradedLattice, InvariantError> {
        let mut products: Vec<Polynomial> = Vec::new();
        let one = Polynomial::one(self.rank(), Basis::E);
        collect_products(
            &self.generators,
            &self.degrees,
            0,
            degree,
            &one,
            &mut products,
        )?;
        let in_omega: Result<Vec<Polynomial>, PolyError> =
            products.iter().map(|p| self.datum.to_omega(p)).collect();
        Ok(GradedLattice::from_polynomials(
            self.rank(),
            degree,
            &in_omega?,
        )?)
    }
}

fn collect_products(
    gens: &[Polynomial],
    degrees: &[u32],
    from: usize,
    remaining: u32,
    acc: &Polynomial,
    out: &mut Vec<Polynomial>,
) -> Result<(), PolyError> {
    if remaining == 0 {
        out.push(acc.clone());
        return Ok(());
    }
    for i in from..gens.len() {
        if degrees[i] <= remaining {
            let next = acc.mul(&gens[i])?;
            collect_products(gens, degrees, i, remaining - degrees[i], &next, out)?;
        }
    }
    Ok(())
}

/// Builds the basic invariants and verifies each against the whole Weyl
/// group (exhaustive at desk scale).
pub fn basic_invariants(datum: &RootDatum) -> Result<InvariantFamily, InvariantError> {
    let n = datum.rank();
    let squares: Vec<Polynomial> = (0..n)
        .map(|j| Polynomial::variable(n, Basis::E, j).pow(2))
        .collect();
    let mut generators = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    match datum.family() {
        Family::B => {
            for i in 1..=n {
                generators.push(elementary_symmetric(i, &squares)?);
                degrees.push(2 * i as u32);
            }
        }
        Family::D => {
            for i in 1..n {
                generators.push(elementary_symmetric(i, &squares)?);
                degrees.push(2 * i as u32);
            }
            let p_n = (0..n).fold(Polynomial::one(n, Basis::E), |acc, j| {
                acc.mul(&Polynomial::variable(n, Basis::E, j))
                    .expect("same rank and basis")
            });
            generators.push(p_n);
            degrees.push(n as u32);
        }
    }
    let elements = weyl_elements(datum)?;
    for (index, g) in generators.iter().enumerate() {
        for w in &elements {
            if &act(w, g) != g {
                return Err(InvariantError::NotInvariant {
                    index: index + 1,
                    witness: w.clone(),
                });
            }
        }
    }
    Ok(InvariantFamily {
        datum: datum.clone(),
        generators,
        degrees,
    })
}

/// Outcome of an invariance test, with a violating element on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub invariant: bool,
    pub witness: Option<SignedPermutation>,
}

/// Tests `act(w, p) = p` over the whole group.
pub fn is_invariant(datum: &RootDatum, p: &Polynomial) -> Result<InvarianceCheck, InvariantError> {
    for w in weyl_elements(datum)? {
        if &act(&w, p) != p {
            return Ok(InvarianceCheck {
                invariant: false,
                witness: Some(w),
            });
        }
    }
    Ok(InvarianceCheck {
        invariant: true,
        witness: None,
    })
}

/// The W-fixed sublattice of the degree-d graded piece in
/// omega-coordinates: the integer kernel of the stacked (w - 1) operators
/// over the generating set. Kernels over Z are saturated, so no averaging
/// (which would corrupt 2-adic structure) is involved.
pub fn fixed_sublattice(datum: &RootDatum, degree: u32) -> Result<GradedLattice, InvariantError> {
    let n = datum.rank();
    let monomials = monomials_of_degree(n, degree);
    let dim = monomials.len();
    // ambient monomials as e-basis polynomials, computed once
    let in_e: Result<Vec<Polynomial>, PolyError> = monomials
        .iter()
        .map(|m| {
            let p = Polynomial::from_terms(
                n,
                Basis::Omega,
                [(m.clone(), crate::coeff::Coefficient::one())],
            );
            datum.to_e(&p)
        })
        .collect();
    let in_e = in_e?;

    let gens = weyl_generators(datum);
    let mut stacked = IntMatrix::zeros(dim, 0);
    for w in &gens {
        let mut mw = IntMatrix::zeros(dim, dim);
        for (i, p) in in_e.iter().enumerate() {
            let moved = act(w, p);
            let back = datum.to_omega(&moved)?;
            let row = back.coefficient_vector(&monomials).map_err(|e| match e {
                PolyError::NotIntegral { witness } => {
                    panic!("W does not stabilize the lattice at {witness}: action bug")
                }
                other => other,
            })?;
            for (j, v) in row.into_iter().enumerate() {
                mw.set(i, j, v);
            }
        }
        for i in 0..dim {
            let v = mw.get(i, i) - BigInt::from(1);
            mw.set(i, i, v);
        }
        stacked = IntMatrix::hstack(&stacked, &mw);
    }
    let kernel = row_kernel(&stacked);
    Ok(GradedLattice::from_rows(n, degree, kernel))
}

/// Report of the degreewise Z[1/2]-generation check: the W-fixed
/// sublattice against the span of generator products, compared after
/// 2-saturation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntReport {
    pub family: Family,
    pub rank: usize,
    pub degree: u32,
    pub fixed_rank: usize,
    pub generated_rank: usize,
    /// Elementary divisors of Sat_2(fixed)/fixed (expected all ones).
    pub fixed_saturation_divisors: Vec<BigInt>,
    /// Elementary divisors of Sat_2(generated)/generated.
    pub generated_saturation_divisors: Vec<BigInt>,
    pub equal_after_saturation: bool,
}

impl fmt::Display for HalfIntReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{} d={}: fixed rank {}, generated rank {}, sat-divisors {:?} / {:?} => {}",
            self.family.letter(),
            self.rank,
            self.degree,
            self.fixed_rank,
            self.generated_rank,
            self.fixed_saturation_divisors
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>(),
            self.generated_saturation_divisors
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>(),
            if self.equal_after_saturation {
                "EQUAL"
            } else {
                "DIFFER"
            }
        )
    }
}

pub const DEFAULT_HALFINT_CUTOFF: u32 = 8;

impl InvariantFamily {
    /// Degreewise verification that the fixed sublattice and the span of
    /// generator products agree after inverting 2.
    pub fn verify_halfinteger_generation(
        &self,
        degree: u32,
        cutoff: u32,
    ) -> Result<HalfIntReport, InvariantError> {
        if degree > cutoff {
            return Err(InvariantError::CutoffExceeded { degree, cutoff });
        }
        let fixed = fixed_sublattice(&self.datum, degree)?;
        let generated = self.products_span(degree)?;
        let ambient = GradedLattice::full(self.rank(), degree);
        let two = BigInt::from(2);
        let sat_fixed = ambient.p_saturate(&fixed, &two)?;
        let sat_generated = ambient.p_saturate(&generated, &two)?;
        Ok(HalfIntReport {
            family: self.family(),
            rank: self.rank(),
            degree,
            fixed_rank: fixed.lattice_rank(),
            generated_rank: generated.lattice_rank(),
            fixed_saturation_divisors: sat_fixed.quotient_divisors(&fixed)?,
            generated_saturation_divisors: sat_generated.quotient_divisors(&generated)?,
            equal_after_saturation: sat_fixed == sat_generated,
        })
    }
}
