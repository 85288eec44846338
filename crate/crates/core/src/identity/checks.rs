//! Scalar identity checks. Each returns the computed sides exactly so the
//! caller can compare or report them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigInt, Index};
use crate::stirling::{StirlingEngine, StirlingTables};

/// Both orthogonality sums at one `(j, k)` and the Kronecker delta they
/// should equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityCheck {
    /// `sum_{l=0}^{max(j,k)+1} s(l, j) S(k, l)`
    pub first_second: BigInt,
    /// `sum_{l=0}^{max(j,k)+1} s(k, l) S(l, j)`
    pub second_first: BigInt,
    pub expected: BigInt,
}

impl OrthogonalityCheck {
    pub fn holds(&self) -> bool {
        self.first_second == self.expected && self.second_first == self.expected
    }
}

pub(crate) fn delta(j: Index, k: Index) -> BigInt {
    if j == k {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

pub(crate) fn orthogonality_first_second(t: &StirlingTables, j: Index, k: Index) -> BigInt {
    (0..=j.max(k) + 1).map(|l| t.s1(l, j) * t.s2(k, l)).sum()
}

pub(crate) fn orthogonality_second_first(t: &StirlingTables, j: Index, k: Index) -> BigInt {
    (0..=j.max(k) + 1).map(|l| t.s1(k, l) * t.s2(l, j)).sum()
}

pub fn check_orthogonality(
    engine: &StirlingEngine,
    j: Index,
    k: Index,
) -> Result<OrthogonalityCheck> {
    engine.check_index(j)?;
    engine.check_index(k)?;
    let t = engine.tables(j.max(k) + 1);
    Ok(OrthogonalityCheck {
        first_second: orthogonality_first_second(&t, j, k),
        second_first: orthogonality_second_first(&t, j, k),
        expected: delta(j, k),
    })
}

/// `sum_{j=1}^{upto} s(m,j) sum_{k=1}^{j} S(j,k)`
pub(crate) fn unit_sum_first(t: &StirlingTables, m: Index, upto: Index) -> BigInt {
    (1..=upto)
        .map(|j| t.s1(m, j) * (1..=j).map(|k| t.s2(j, k)).sum::<BigInt>())
        .sum()
}

/// `sum_{j=1}^{upto} S(m,j) sum_{k=1}^{j} s(j,k)`
pub(crate) fn unit_sum_second(t: &StirlingTables, m: Index, upto: Index) -> BigInt {
    (1..=upto)
        .map(|j| t.s2(m, j) * (1..=j).map(|k| t.s1(j, k)).sum::<BigInt>())
        .sum()
}

fn at_least(engine: &StirlingEngine, m: Index, min: Index, what: &str) -> Result<()> {
    engine.check_index(m)?;
    if m < min {
        return Err(Error::domain(format!(
            "{what} needs an index >= {min}, got {m}"
        )));
    }
    Ok(())
}

/// Should be exactly 1 for every `m >= 1`.
pub fn check_unit_sum_first(engine: &StirlingEngine, m: Index) -> Result<BigInt> {
    at_least(engine, m, 1, "check_unit_sum_first")?;
    Ok(unit_sum_first(&engine.tables(m), m, m))
}

/// Should be exactly 1 for every `m >= 1`.
pub fn check_unit_sum_second(engine: &StirlingEngine, m: Index) -> Result<BigInt> {
    at_least(engine, m, 1, "check_unit_sum_second")?;
    Ok(unit_sum_second(&engine.tables(m), m, m))
}

pub(crate) fn row_relation_first(t: &StirlingTables, m: Index) -> (BigInt, BigInt) {
    let lhs = -unit_sum_first(t, m, m - 1);
    let rhs = (1..m).map(|k| t.s2(m, k)).sum();
    (lhs, rhs)
}

pub(crate) fn row_relation_second(t: &StirlingTables, j: Index) -> (BigInt, BigInt) {
    let lhs = -unit_sum_second(t, j, j - 1);
    let rhs = (1..j).map(|k| t.s1(j, k)).sum();
    (lhs, rhs)
}

/// `-sum_{j<m} s(m,j) sum_{k<=j} S(j,k)` against `sum_{k<m} S(m,k)`.
pub fn check_row_relation_first(engine: &StirlingEngine, m: Index) -> Result<(BigInt, BigInt)> {
    at_least(engine, m, 2, "check_row_relation_first")?;
    Ok(row_relation_first(&engine.tables(m), m))
}

/// `-sum_{m<j} S(j,m) sum_{k<=m} s(m,k)` against `sum_{k<j} s(j,k)`.
pub fn check_row_relation_second(engine: &StirlingEngine, j: Index) -> Result<(BigInt, BigInt)> {
    at_least(engine, j, 2, "check_row_relation_second")?;
    Ok(row_relation_second(&engine.tables(j), j))
}

pub(crate) fn deriv_relation_second(t: &StirlingTables, m: Index) -> (BigInt, BigInt) {
    let lhs = t.s2(m, 1).clone();
    let rhs = -(1..m).map(|j| t.s1(m, j) * t.s2(j, 1)).sum::<BigInt>();
    (lhs, rhs)
}

pub(crate) fn deriv_relation_first(t: &StirlingTables, j: Index) -> (BigInt, BigInt) {
    let lhs = t.s1(j, 1).clone();
    let rhs = -(1..j).map(|m| t.s2(j, m) * t.s1(m, 1)).sum::<BigInt>();
    (lhs, rhs)
}

/// `S(m,1)` against `-sum_{j<m} s(m,j) S(j,1)`.
pub fn check_deriv_relation_second(engine: &StirlingEngine, m: Index) -> Result<(BigInt, BigInt)> {
    at_least(engine, m, 2, "check_deriv_relation_second")?;
    Ok(deriv_relation_second(&engine.tables(m), m))
}

/// `s(j,1)` against `-sum_{m<j} S(j,m) s(m,1)`.
pub fn check_deriv_relation_first(engine: &StirlingEngine, j: Index) -> Result<(BigInt, BigInt)> {
    at_least(engine, j, 2, "check_deriv_relation_first")?;
    Ok(deriv_relation_first(&engine.tables(j), j))
}
