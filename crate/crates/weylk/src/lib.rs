//! Exact Weyl-invariant lattice computations for the root systems B_n and D_n.
//!
//! The library provides, at desk scale (rank <= 5, degree <= 8):
//!
//! - sparse multivariate polynomial arithmetic over Z, Z[1/2] and Q
//!   ([`polynomial`]), with a canonical text form ([`parse`]);
//! - root data for B_n/D_n with the Weyl group realized as signed
//!   permutations ([`root`], [`weyl`]);
//! - exact integer-lattice linear algebra: Hermite/Smith normal forms with
//!   transforms, Diophantine solving, membership, quotient elementary
//!   divisors and p-saturation ([`matrix`], [`normal_form`], [`graded`]);
//! - the basic invariants t_i (and p_n), graded ideal slices, and the
//!   degreewise check that they generate the invariant ring over Z[1/2]
//!   ([`invariants`]);
//! - rewriting of integer-divisible presentations into presentations with
//!   divisible coefficients ([`rewrite`]);
//! - 2-power saturation exponents and the d-th exponent bound via the
//!   truncated-exponential leading form on the invariant group ring
//!   ([`exponents`]);
//! - closed-form torsion annihilator bounds ([`bounds`]).

pub mod bounds;
pub mod coeff;
pub mod exponents;
pub mod graded;
pub mod invariants;
pub mod matrix;
pub mod monomial;
pub mod normal_form;
pub mod parse;
pub mod polynomial;
pub mod rewrite;
pub mod root;
pub mod weyl;

pub use coeff::{Coefficient, CoefficientRing};
pub use graded::GradedLattice;
pub use invariants::InvariantFamily;
pub use matrix::IntMatrix;
pub use monomial::{Monomial, ParityClass};
pub use polynomial::{Basis, PolyError, Polynomial};
pub use root::{Family, RootDatum, Weight};
pub use weyl::SignedPermutation;
