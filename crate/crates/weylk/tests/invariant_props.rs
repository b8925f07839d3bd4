//! Property tests across the root-datum, invariant and exponent layers:
//! the group action, basis-change round trips, slice stability under the
//! action up to 2-power scaling, and leading-form multiplicativity.

use num_bigint::BigInt;
use proptest::prelude::*;

use weylk::coeff::Coefficient;
use weylk::exponents::{phi_leading, GroupRingElement};
use weylk::invariants::basic_invariants;
use weylk::monomial::Monomial;
use weylk::polynomial::{Basis, Polynomial};
use weylk::root::{Family, RootDatum, Weight};
use weylk::weyl::{act, weyl_elements};

fn arb_int_poly(rank: usize, basis: Basis) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, rank), -9i64..=9), 0..=5).prop_map(
        move |terms| {
            Polynomial::from_terms(
                rank,
                basis,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::new(e), Coefficient::from_int(c))),
            )
        },
    )
}

fn arb_weight(rank: usize) -> impl Strategy<Value = Weight> {
    // doubled coordinates with a common parity, so the weight is either
    // integral or spin-like; membership still depends on the datum
    prop::collection::vec(-4i64..=4, rank)
        .prop_map(|v| Weight::from_doubled(v.into_iter().map(|x| BigInt::from(2 * x)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_action_composes(
        p in arb_int_poly(3, Basis::E),
        i in 0usize..48,
        j in 0usize..48,
    ) {
        let datum = RootDatum::new(Family::B, 3).unwrap();
        let els = weyl_elements(&datum).unwrap();
        let (w1, w2) = (&els[i], &els[j]);
        prop_assert_eq!(act(w1, &act(w2, &p)), act(&w1.compose(w2), &p));
    }

    #[test]
    fn basis_roundtrip_on_lattice_polynomials(p in arb_int_poly(4, Basis::Omega)) {
        for family in [Family::B, Family::D] {
            let datum = RootDatum::new(family, 4).unwrap();
            let in_e = datum.to_e(&p).unwrap();
            prop_assert_eq!(datum.to_omega(&in_e).unwrap(), p.clone());
        }
    }

    #[test]
    fn phi_leading_is_multiplicative(
        a in arb_weight(3),
        b in arb_weight(3),
    ) {
        let datum = RootDatum::new(Family::B, 3).unwrap();
        // x = e^a - 1 and y = e^b - 1 are augmentation-zero
        let x = GroupRingElement::from_weight(a.clone())
            .sub(&GroupRingElement::constant(3, BigInt::from(1)));
        let y = GroupRingElement::from_weight(b.clone())
            .sub(&GroupRingElement::constant(3, BigInt::from(1)));
        if x.is_zero() || y.is_zero() {
            return Ok(());
        }
        let la = phi_leading(&datum, &x, 1).unwrap();
        let lb = phi_leading(&datum, &y, 1).unwrap();
        let lab = phi_leading(&datum, &x.mul(&y), 2).unwrap();
        prop_assert_eq!(lab, la.mul(&lb).unwrap());
    }
}

#[test]
fn slice_rows_stay_in_saturated_slice_under_action() {
    // the ideal slice tensored with Z[1/2] is W-stable: each basis row,
    // acted on by any generator, lands in the 2-saturation of the slice
    for (family, rank, degree) in [(Family::B, 3, 4u32), (Family::D, 4, 3u32)] {
        let datum = RootDatum::new(family, rank).unwrap();
        let fam = basic_invariants(&datum).unwrap();
        let slice = fam.ideal_slice(degree).unwrap();
        let ambient = weylk::graded::GradedLattice::full(rank, degree);
        let sat = ambient.p_saturate(&slice, &BigInt::from(2)).unwrap();
        for i in 0..slice.lattice_rank() {
            let row_omega = slice.row_polynomial(i, Basis::Omega);
            let row_e = datum.to_e(&row_omega).unwrap();
            for w in weylk::weyl::weyl_generators(&datum) {
                let moved = act(&w, &row_e);
                let back = datum.to_omega(&moved).unwrap();
                assert!(
                    sat.member_polynomial(&back).unwrap().is_some(),
                    "row {i} moved outside Sat_2(slice) for {family:?}{rank} d={degree}"
                );
            }
        }
    }
}

#[test]
fn halfint_generation_holds_up_to_degree_8() {
    for (f, n) in [(Family::B, 3), (Family::B, 4), (Family::D, 4)] {
        let fam = basic_invariants(&RootDatum::new(f, n).unwrap()).unwrap();
        for d in 1..=8u32 {
            let r = fam.verify_halfinteger_generation(d, 8).unwrap();
            assert!(
                r.equal_after_saturation,
                "generation check failed at {}{n} d={d}: {r}",
                f.letter()
            );
        }
    }
}

#[test]
fn phi_products_of_augmentation_zero_factors_are_integral() {
    // products of d deviation factors always pass the integrality
    // assertion of the leading form (exhaustive over fundamental weights)
    let datum = RootDatum::new(Family::B, 3).unwrap();
    let mut deviations = Vec::new();
    for j in 0..3 {
        let rho = weylk::exponents::orbit_sum(&datum, &datum.fundamental_weight(j)).unwrap();
        deviations.push(rho.sub(&GroupRingElement::constant(3, rho.augmentation())));
    }
    for d in 1..=3u32 {
        for combo in itertools_free_multisets(3, d as usize) {
            let mut prod: Option<GroupRingElement> = None;
            for &idx in &combo {
                prod = Some(match prod {
                    None => deviations[idx].clone(),
                    Some(p) => p.mul(&deviations[idx]),
                });
            }
            let prod = prod.unwrap();
            match phi_leading(&datum, &prod, d) {
                Ok(_) => {}
                Err(weylk::exponents::PhiError::NotInFiltration { .. }) => {}
                Err(e) => panic!("integrality failure on {combo:?}: {e}"),
            }
        }
    }
}

/// Multisets of size k from {0, ..., n-1} as sorted index vectors.
fn itertools_free_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, k: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in from..n {
            current.push(i);
            rec(n, k, i, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}
