//! Exact coefficient arithmetic in the tower Z ⊂ Z[1/2] ⊂ Q.
//!
//! Every value is normalized into the smallest of the three rings containing
//! it, so structural equality coincides with numeric equality. Mixed-ring
//! operations promote to the larger ring and demote the result, e.g.
//! `1/2 + 1/2 = 1` is an `Integer`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The three coefficient rings, ordered by inclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoefficientRing {
    Integer,
    Dyadic,
    Rational,
}

/// An exact scalar from Z, Z[1/2] or Q, kept in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Integer(BigInt),
    /// `odd * 2^exp` with `odd` odd and `exp < 0`.
    Dyadic {
        odd: BigInt,
        exp: i64,
    },
    /// Reduced fraction whose denominator is not a power of two.
    Rational(BigRational),
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Coefficient::Integer(BigInt::one())
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Coefficient::Integer(n.into())
    }

    /// `odd * 2^exp` for arbitrary `odd`; normalizes into canonical form.
    pub fn dyadic<T: Into<BigInt>>(odd: T, exp: i64) -> Self {
        let m: BigInt = odd.into();
        let Some(v) = m.trailing_zeros() else {
            return Coefficient::zero();
        };
        let m = m >> v;
        let e = exp + v as i64;
        if e >= 0 {
            Coefficient::Integer(m << e as u64)
        } else {
            Coefficient::Dyadic { odd: m, exp: e }
        }
    }

    pub fn rational<T: Into<BigInt>, U: Into<BigInt>>(numer: T, denom: U) -> Self {
        Self::from_rational(BigRational::new(numer.into(), denom.into()))
    }

    /// Demotes a reduced rational into the smallest containing ring.
    pub fn from_rational(r: BigRational) -> Self {
        if r.denom().is_one() {
            return Coefficient::Integer(r.numer().clone());
        }
        let k = r.denom().trailing_zeros().expect("nonzero denominator");
        if (r.denom() >> k).is_one() {
            // reduced, so the numerator is odd
            Coefficient::Dyadic {
                odd: r.numer().clone(),
                exp: -(k as i64),
            }
        } else {
            Coefficient::Rational(r)
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        match self {
            Coefficient::Integer(_) => CoefficientRing::Integer,
            Coefficient::Dyadic { .. } => CoefficientRing::Dyadic,
            Coefficient::Rational(_) => CoefficientRing::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Integer(n) if n.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coefficient::Integer(n) if n.is_one())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Coefficient::Integer(_))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Integer(n) => n.is_negative(),
            Coefficient::Dyadic { odd, .. } => odd.is_negative(),
            Coefficient::Rational(r) => r.is_negative(),
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Coefficient::Integer(n) => Some(n),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Coefficient::Integer(n) => BigRational::from_integer(n.clone()),
            Coefficient::Dyadic { odd, exp } => {
                BigRational::new(odd.clone(), BigInt::one() << (-exp) as u64)
            }
            Coefficient::Rational(r) => r.clone(),
        }
    }

    /// `(m, e)` with value `m * 2^e`, when the value lies in Z[1/2].
    fn dyadic_pair(&self) -> Option<(&BigInt, i64)> {
        match self {
            Coefficient::Integer(n) => Some((n, 0)),
            Coefficient::Dyadic { odd, exp } => Some((odd, *exp)),
            Coefficient::Rational(_) => None,
        }
    }

    /// 2-adic valuation; `None` for zero.
    pub fn two_adic_valuation(&self) -> Option<i64> {
        match self {
            Coefficient::Integer(n) => n.trailing_zeros().map(|v| v as i64),
            Coefficient::Dyadic { exp, .. } => Some(*exp),
            Coefficient::Rational(r) => {
                let vn = r.numer().trailing_zeros()? as i64;
                let vd = r.denom().trailing_zeros().unwrap_or(0) as i64;
                Some(vn - vd)
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Integer(n) => Coefficient::Integer(-n),
            Coefficient::Dyadic { odd, exp } => Coefficient::Dyadic {
                odd: -odd,
                exp: *exp,
            },
            Coefficient::Rational(r) => Coefficient::Rational(-r),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self.dyadic_pair(), rhs.dyadic_pair()) {
            (Some((a, e)), Some((b, f))) => {
                let g = e.min(f);
                let sum = (a << (e - g) as u64) + (b << (f - g) as u64);
                Coefficient::dyadic(sum, g)
            }
            _ => Self::from_rational(self.to_rational() + rhs.to_rational()),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self.dyadic_pair(), rhs.dyadic_pair()) {
            (Some((a, e)), Some((b, f))) => Coefficient::dyadic(a * b, e + f),
            _ => Self::from_rational(self.to_rational() * rhs.to_rational()),
        }
    }

    /// Exact division within Q.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero coefficient");
        Self::from_rational(self.to_rational() / rhs.to_rational())
    }

    /// Multiplies by `2^k` (k may be negative).
    pub fn mul_pow2(&self, k: i64) -> Self {
        match self {
            Coefficient::Integer(n) => Coefficient::dyadic(n.clone(), k),
            Coefficient::Dyadic { odd, exp } => Coefficient::dyadic(odd.clone(), exp + k),
            Coefficient::Rational(r) => {
                let two = BigRational::from_integer(BigInt::from(2));
                let factor = if k >= 0 {
                    num_traits::pow::pow(two, k as usize)
                } else {
                    num_traits::pow::pow(two, (-k) as usize).recip()
                };
                Self::from_rational(r * factor)
            }
        }
    }

    /// Exact integer division; `None` unless `self` is an integer multiple of `d`.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<Self> {
        let n = self.as_integer()?;
        if (n % d).is_zero() {
            Some(Coefficient::Integer(n / d))
        } else {
            None
        }
    }
}

impl PartialOrd for Coefficient {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coefficient {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coefficient::Integer(a), Coefficient::Integer(b)) => a.cmp(b),
            _ => self.to_rational().cmp(&other.to_rational()),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integer(n) => write!(f, "{n}"),
            Coefficient::Dyadic { odd, exp } => write!(f, "{odd}/2^{}", -exp),
            Coefficient::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_normalization() {
        assert_eq!(Coefficient::dyadic(6, -1), Coefficient::from_int(3));
        assert_eq!(Coefficient::dyadic(4, -3), Coefficient::dyadic(1, -1));
        assert_eq!(Coefficient::dyadic(0, -5), Coefficient::zero());
        match Coefficient::dyadic(12, -4) {
            Coefficient::Dyadic { odd, exp } => {
                assert_eq!(odd, BigInt::from(3));
                assert_eq!(exp, -2);
            }
            other => panic!("expected dyadic, got {other:?}"),
        }
    }

    #[test]
    fn rational_demotion() {
        assert_eq!(Coefficient::rational(4, 2), Coefficient::from_int(2));
        assert_eq!(Coefficient::rational(3, 4), Coefficient::dyadic(3, -2));
        assert_eq!(
            Coefficient::rational(1, 3).ring(),
            CoefficientRing::Rational
        );
        // negative denominators are normalized away by BigRational
        assert_eq!(Coefficient::rational(1, -3), Coefficient::rational(-1, 3));
    }

    #[test]
    fn halves_sum_to_integer() {
        let h = Coefficient::dyadic(1, -1);
        assert_eq!(h.add(&h), Coefficient::one());
        assert_eq!(h.mul(&Coefficient::from_int(2)), Coefficient::one());
    }

    #[test]
    fn mixed_ring_promotion() {
        let third = Coefficient::rational(1, 3);
        let half = Coefficient::dyadic(1, -1);
        let sum = third.add(&half);
        assert_eq!(sum, Coefficient::rational(5, 6));
        // 1/3 * 3 demotes back to Z
        assert_eq!(third.mul(&Coefficient::from_int(3)), Coefficient::one());
    }

    #[test]
    fn two_adic_valuation() {
        assert_eq!(Coefficient::from_int(12).two_adic_valuation(), Some(2));
        assert_eq!(Coefficient::dyadic(3, -2).two_adic_valuation(), Some(-2));
        assert_eq!(Coefficient::zero().two_adic_valuation(), None);
        assert_eq!(Coefficient::rational(1, 6).two_adic_valuation(), Some(-1));
    }

    #[test]
    fn exact_integer_division() {
        let six = Coefficient::from_int(6);
        assert_eq!(
            six.div_exact_int(&BigInt::from(3)),
            Some(Coefficient::from_int(2))
        );
        assert_eq!(six.div_exact_int(&BigInt::from(4)), None);
        assert_eq!(
            Coefficient::dyadic(1, -1).div_exact_int(&BigInt::from(1)),
            None
        );
    }

    #[test]
    fn ordering_matches_rational_value() {
        let vals = [
            Coefficient::from_int(-2),
            Coefficient::rational(-1, 3),
            Coefficient::zero(),
            Coefficient::dyadic(1, -2),
            Coefficient::dyadic(1, -1),
            Coefficient::one(),
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(Coefficient::from_int(-7).to_string(), "-7");
        assert_eq!(Coefficient::dyadic(3, -2).to_string(), "3/2^2");
        assert_eq!(Coefficient::rational(2, 3).to_string(), "2/3");
    }
}
