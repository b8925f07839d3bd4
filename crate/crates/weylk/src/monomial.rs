//! Exponent-vector monomials under the global graded-lexicographic order.
//!
//! The order (total degree first, then lexicographic on exponent vectors)
//! is fixed crate-wide: it determines the canonical text form of
//! polynomials and the column order of every lattice matrix.

use std::cmp::Ordering;

/// A monomial in `rank` variables, stored as a dense exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial in `rank` variables.
    pub fn one(rank: usize) -> Self {
        Monomial {
            exps: vec![0; rank],
        }
    }

    /// The single variable `x_j` (0-based).
    pub fn var(rank: usize, j: usize) -> Self {
        assert!(j < rank, "variable index out of range");
        let mut exps = vec![0; rank];
        exps[j] = 1;
        Monomial { exps }
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.exps[j]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.rank(), other.rank());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// The parity class of the exponent vector.
    pub fn parity(&self) -> ParityClass {
        ParityClass {
            bits: self.exps.iter().map(|e| e % 2 == 1).collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.exps.iter().all(|e| e % 2 == 0)
    }

    /// Halves every exponent; `None` unless all are even.
    pub fn halve(&self) -> Option<Monomial> {
        if !self.is_even() {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().map(|e| e / 2).collect(),
        })
    }

    pub fn double(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * 2).collect(),
        }
    }

    /// Removes the parity part, i.e. subtracts the 0/1 vector of `delta`.
    pub fn strip_parity(&self, delta: &ParityClass) -> Monomial {
        debug_assert_eq!(self.parity(), *delta);
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&delta.bits)
                .map(|(e, &b)| e - u32::from(b))
                .collect(),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, ties by lexicographic
    /// comparison of the exponent vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.rank(), other.rank());
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

/// All monomials of total degree `d` in `rank` variables, listed in
/// descending graded-lex order. This list is the ambient basis of the
/// degree-`d` graded piece and fixes lattice matrix columns.
pub fn monomials_of_degree(rank: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; rank];
    fill(&mut out, &mut current, 0, d);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
        current[pos] = 0;
    }
}

/// A vector of exponent parities, written δ in presentations: the
/// square-free monomial `e^δ` together with the bookkeeping around it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParityClass {
    bits: Vec<bool>,
}

impl ParityClass {
    pub fn new(bits: Vec<bool>) -> Self {
        ParityClass { bits }
    }

    pub fn even(rank: usize) -> Self {
        ParityClass {
            bits: vec![false; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// |δ| = number of odd positions.
    pub fn weight(&self) -> u32 {
        self.bits.iter().filter(|&&b| b).count() as u32
    }

    /// The square-free monomial e^δ.
    pub fn to_monomial(&self) -> Monomial {
        Monomial::new(self.bits.iter().map(|&b| u32::from(b)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |v: &[u32]| Monomial::new(v.to_vec());
        // degree dominates
        assert!(m(&[3, 0]) > m(&[1, 1]));
        // within a degree, lexicographic on exponents
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
        assert!(m(&[1, 0, 1]) > m(&[0, 2, 0]));
    }

    #[test]
    fn degree_enumeration_is_complete_and_sorted() {
        let ms = monomials_of_degree(3, 4);
        // stars and bars: C(4+2,2) = 15
        assert_eq!(ms.len(), 15);
        assert!(ms.iter().all(|m| m.total_degree() == 4));
        for w in ms.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert_eq!(ms[0], Monomial::new(vec![4, 0, 0]));
        assert_eq!(ms[14], Monomial::new(vec![0, 0, 4]));
    }

    #[test]
    fn parity_and_strip() {
        let m = Monomial::new(vec![3, 2, 1]);
        let p = m.parity();
        assert_eq!(p.bits(), &[true, false, true]);
        assert_eq!(p.weight(), 2);
        let stripped = m.strip_parity(&p);
        assert_eq!(stripped, Monomial::new(vec![2, 2, 0]));
        assert!(stripped.is_even());
        assert_eq!(stripped.halve(), Some(Monomial::new(vec![1, 1, 0])));
    }

    #[test]
    fn halve_rejects_odd_exponents() {
        assert_eq!(Monomial::new(vec![1, 2]).halve(), None);
        assert_eq!(
            Monomial::new(vec![2, 4]).halve(),
            Some(Monomial::new(vec![1, 2]))
        );
    }
}
