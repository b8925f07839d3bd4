//! Closed-form torsion annihilator bounds.
//!
//! For i >= 2 the integer (i-1)! * 2^{i+1} annihilates the torsion of the
//! i-th gamma quotient, and (d-1)! * prod_{i=2}^d [(i-1)! * 2^{i+1}]
//! annihilates the torsion of the d-th Chow group. The 2-power sits inside
//! the product, matching the per-i factor.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("index {0} out of range: bounds are defined for i >= 2")]
    IndexTooSmall(u32),
}

fn factorial(k: u32) -> BigInt {
    let mut out = BigInt::one();
    for j in 2..=k {
        out *= BigInt::from(j);
    }
    out
}

/// (i-1)! * 2^{i+1}
pub fn gamma_bound(i: u32) -> Result<BigInt, BoundError> {
    if i < 2 {
        return Err(BoundError::IndexTooSmall(i));
    }
    Ok(factorial(i - 1) * (BigInt::one() << (i + 1)))
}

/// (d-1)! * prod_{i=2}^d [(i-1)! * 2^{i+1}]
pub fn chow_bound(d: u32) -> Result<BigInt, BoundError> {
    if d < 2 {
        return Err(BoundError::IndexTooSmall(d));
    }
    let mut product = BigInt::one();
    for i in 2..=d {
        product *= gamma_bound(i)?;
    }
    Ok(factorial(d - 1) * product)
}

/// One row of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub index: u32,
    pub gamma: BigInt,
    pub chow: BigInt,
}

/// Rows for 2..=max_degree.
pub fn bounds_table(max_degree: u32) -> Result<Vec<BoundRow>, BoundError> {
    (2..=max_degree)
        .map(|i| {
            Ok(BoundRow {
                index: i,
                gamma: gamma_bound(i)?,
                chow: chow_bound(i)?,
            })
        })
        .collect()
}
