//! The Weyl groups of B_n and D_n as signed permutations, their action on
//! polynomials in the e-basis and on weights, and weight orbits.
//!
//! Action convention: an element w maps the basis vector e_j to
//! `signs[j] * e_{perm[j]}`, and acts on polynomials by (w.p)(e) = p(w^{-1} e).

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;

use crate::monomial::Monomial;
use crate::polynomial::{Basis, Polynomial};
use crate::root::{Family, RootDatum, RootError, Weight, MAX_ENUMERATION_RANK};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    /// perm[j] = image index of coordinate j (0-based).
    perm: Vec<usize>,
    /// signs[j] in {+1, -1}, applied to coordinate j before permuting.
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        let n = perm.len();
        assert_eq!(signs.len(), n);
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs must be ±1");
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        SignedPermutation { perm, signs }
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn num_sign_flips(&self) -> usize {
        self.signs.iter().filter(|&&s| s == -1).count()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let n = self.rank();
        assert_eq!(n, other.rank());
        let perm = (0..n).map(|j| self.perm[other.perm[j]]).collect();
        let signs = (0..n)
            .map(|j| other.signs[j] * self.signs[other.perm[j]])
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1i8; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        SignedPermutation { perm, signs }
    }

    /// Image of a weight: coordinate j goes to position perm[j] with its sign.
    pub fn apply_to_weight(&self, w: &Weight) -> Weight {
        let n = self.rank();
        assert_eq!(w.rank(), n);
        let mut doubled = vec![BigInt::from(0); n];
        for j in 0..n {
            let v = w.doubled()[j].clone();
            doubled[self.perm[j]] = if self.signs[j] == 1 { v } else { -v };
        }
        Weight::from_doubled(doubled)
    }

    /// The substitution e_j -> signs[j] * e_{perm[j]} applied to a
    /// polynomial. Since a signed permutation matrix is orthogonal, this
    /// substitution evaluates p at w^{-1} e, which is the left action.
    fn substitute_into(&self, p: &Polynomial) -> Polynomial {
        let n = self.rank();
        assert_eq!(p.rank(), n);
        Polynomial::from_terms(
            n,
            p.basis(),
            p.terms().map(|(m, c)| {
                let mut exps = vec![0u32; n];
                let mut flip = false;
                for j in 0..n {
                    let e = m.exponent(j);
                    exps[self.perm[j]] = e;
                    if self.signs[j] == -1 && e % 2 == 1 {
                        flip = !flip;
                    }
                }
                let c = if flip { c.neg() } else { c.clone() };
                (Monomial::new(exps), c)
            }),
        )
    }
}

/// The action (w.p)(e) = p(w^{-1} e) on polynomials in the e-basis.
pub fn act(w: &SignedPermutation, p: &Polynomial) -> Polynomial {
    assert_eq!(
        p.basis(),
        Basis::E,
        "the Weyl action is defined on the e-basis; convert first"
    );
    w.substitute_into(p)
}

/// Order of the Weyl group: 2^n n! for B_n, 2^{n-1} n! for D_n.
pub fn weyl_order(family: Family, rank: usize) -> u64 {
    let fact: u64 = (1..=rank as u64).product();
    match family {
        Family::B => (1u64 << rank) * fact,
        Family::D => (1u64 << (rank - 1)) * fact,
    }
}

/// Coxeter-style generating set: adjacent transpositions plus one sign
/// flip (B: flip the last coordinate; D: flip the last two).
pub fn weyl_generators(datum: &RootDatum) -> Vec<SignedPermutation> {
    let n = datum.rank();
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        gens.push(SignedPermutation::new(perm, vec![1; n]));
    }
    let mut signs = vec![1i8; n];
    match datum.family() {
        Family::B => {
            signs[n - 1] = -1;
        }
        Family::D => {
            signs[n - 2] = -1;
            signs[n - 1] = -1;
        }
    }
    gens.push(SignedPermutation::new((0..n).collect(), signs));
    gens
}

/// All elements of the Weyl group, each exactly once. Exhaustive
/// enumeration is limited to small rank.
pub fn weyl_elements(datum: &RootDatum) -> Result<Vec<SignedPermutation>, RootError> {
    let n = datum.rank();
    if n > MAX_ENUMERATION_RANK {
        return Err(RootError::RankTooLargeForEnumeration(
            n,
            MAX_ENUMERATION_RANK,
        ));
    }
    let mut out = Vec::with_capacity(weyl_order(datum.family(), n) as usize);
    for perm in (0..n).permutations(n) {
        for mask in 0u32..(1 << n) {
            let flips = mask.count_ones();
            if datum.family() == Family::D && flips % 2 == 1 {
                continue;
            }
            let signs = (0..n)
                .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPermutation::new(perm.clone(), signs));
        }
    }
    Ok(out)
}

/// The W-orbit of a weight, computed by closure under the generators.
pub fn orbit(datum: &RootDatum, weight: &Weight) -> Result<BTreeSet<Weight>, RootError> {
    if !datum.weight_in_lattice(weight) {
        return Err(RootError::WeightNotInLattice(weight.clone()));
    }
    let gens = weyl_generators(datum);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(weight.clone());
    queue.push_back(weight.clone());
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let img = g.apply_to_weight(&w);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    Ok(seen)
}

/// Flip the sign of a single coordinate (test helper for B-type checks).
pub fn sign_flip(n: usize, j: usize) -> SignedPermutation {
    let mut signs = vec![1i8; n];
    signs[j] = -1;
    SignedPermutation::new((0..n).collect(), signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Polynomial;

    fn b3() -> RootDatum {
        RootDatum::new(Family::B, 3).unwrap()
    }

    fn d4() -> RootDatum {
        RootDatum::new(Family::D, 4).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(weyl_elements(&b3()).unwrap().len(), 48);
        assert_eq!(weyl_order(Family::B, 3), 48);
        assert_eq!(weyl_elements(&d4()).unwrap().len(), 192);
        assert_eq!(weyl_order(Family::D, 4), 192);
        // each element exactly once
        let els = weyl_elements(&b3()).unwrap();
        let set: BTreeSet<_> = els.iter().cloned().collect();
        assert_eq!(set.len(), els.len());
        assert!(els.iter().any(SignedPermutation::is_identity));
    }

    #[test]
    fn d_enumeration_closed_under_product() {
        let els = weyl_elements(&d4()).unwrap();
        let set: BTreeSet<_> = els.iter().cloned().collect();
        // spot-check closure on a deterministic sample
        for (i, a) in els.iter().step_by(17).enumerate() {
            let b = &els[(i * 31) % els.len()];
            assert!(set.contains(&a.compose(b)));
        }
        assert!(els.iter().all(|w| w.num_sign_flips() % 2 == 0));
    }

    #[test]
    fn generators_generate_whole_group() {
        for datum in [b3(), d4()] {
            let gens = weyl_generators(&datum);
            let mut seen: BTreeSet<SignedPermutation> = BTreeSet::new();
            let mut queue = vec![SignedPermutation::identity(datum.rank())];
            seen.insert(queue[0].clone());
            while let Some(w) = queue.pop() {
                for g in &gens {
                    let next = g.compose(&w);
                    if seen.insert(next.clone()) {
                        queue.push(next);
                    }
                }
            }
            assert_eq!(seen.len() as u64, weyl_order(datum.family(), datum.rank()));
        }
    }

    #[test]
    fn action_examples() {
        // flipping e1's sign fixes e1^2
        let p = Polynomial::from_int_terms(3, Basis::E, &[(&[2, 0, 0], 1)]);
        assert_eq!(act(&sign_flip(3, 0), &p), p);

        // swapping e1, e2 sends e1^2 e2 to e2^2 e1
        let swap = SignedPermutation::new(vec![1, 0, 2], vec![1, 1, 1]);
        let q = Polynomial::from_int_terms(3, Basis::E, &[(&[2, 1, 0], 1)]);
        assert_eq!(
            act(&swap, &q),
            Polynomial::from_int_terms(3, Basis::E, &[(&[1, 2, 0], 1)])
        );

        // flipping one sign negates the product e1 e2 e3
        let p3 = Polynomial::from_int_terms(3, Basis::E, &[(&[1, 1, 1], 1)]);
        assert_eq!(act(&sign_flip(3, 0), &p3), p3.neg());
    }

    #[test]
    fn action_is_a_group_action() {
        let els = weyl_elements(&b3()).unwrap();
        let p = Polynomial::from_int_terms(
            3,
            Basis::E,
            &[(&[2, 1, 0], 3), (&[0, 0, 1], -1), (&[1, 1, 1], 2)],
        );
        for (i, w1) in els.iter().step_by(7).enumerate() {
            let w2 = &els[(11 * i + 3) % els.len()];
            let lhs = act(w1, &act(w2, &p));
            let rhs = act(&w1.compose(w2), &p);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn omega_lattice_is_stable() {
        for datum in [b3(), d4()] {
            for g in weyl_generators(&datum) {
                for j in 0..datum.rank() {
                    let img = g.apply_to_weight(&datum.fundamental_weight(j));
                    assert!(
                        datum.weight_in_lattice(&img),
                        "w{} image left the lattice",
                        j + 1
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let datum = b3();
        let orb = orbit(&datum, &Weight::from_e_ints(&[1, 0, 0])).unwrap();
        assert_eq!(orb.len(), 6);
        // oracle: the orbit from full enumeration agrees with the closure
        let full: BTreeSet<Weight> = weyl_elements(&datum)
            .unwrap()
            .iter()
            .map(|w| w.apply_to_weight(&Weight::from_e_ints(&[1, 0, 0])))
            .collect();
        assert_eq!(orb, full);

        assert_eq!(
            orbit(&datum, &Weight::zero(3)).unwrap().len(),
            1,
            "orbit of 0 is {{0}}"
        );

        let spin = datum.fundamental_weight(2);
        let spin_orb = orbit(&datum, &spin).unwrap();
        assert_eq!(spin_orb.len(), 8);
        let spin_full: BTreeSet<Weight> = weyl_elements(&datum)
            .unwrap()
            .iter()
            .map(|w| w.apply_to_weight(&spin))
            .collect();
        assert_eq!(spin_orb, spin_full);

        // a non-lattice weight is rejected
        let bad = Weight::from_doubled(vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)]);
        assert!(matches!(
            orbit(&datum, &bad),
            Err(RootError::WeightNotInLattice(_))
        ));
    }

    #[test]
    fn inverse_composes_to_identity() {
        for w in weyl_elements(&b3()).unwrap().iter().step_by(5) {
            assert!(w.compose(&w.inverse()).is_identity());
            assert!(w.inverse().compose(w).is_identity());
        }
    }
}
