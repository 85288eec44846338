//! The concrete identities. Each strategy is parameterized by a [`Side`]
//! naming the kind that supplies the outer (row-`n`) factor, so one type
//! covers an equation and its mirror image.

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::checks::{
    delta, deriv_relation_first, deriv_relation_second, orthogonality_first_second,
    orthogonality_second_first, row_relation_first, row_relation_second, unit_sum_first,
    unit_sum_second,
};
use super::{Counterexample, Identity, IdentityId, Sweep, SweepRange};
use crate::error::Result;
use crate::exact::{BigInt, BigRat, Index};
use crate::poly::{self, Poly};
use crate::stirling::{StirlingEngine, StirlingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

pub(super) fn standard_entries() -> Vec<Arc<dyn Identity>> {
    vec![
        Arc::new(Conversion(Side::First)),
        Arc::new(Conversion(Side::Second)),
        Arc::new(Orthogonality(Side::First)),
        Arc::new(Orthogonality(Side::Second)),
        Arc::new(UnitSum(Side::First)),
        Arc::new(UnitSum(Side::Second)),
        Arc::new(BasisPoly(Side::First)),
        Arc::new(BasisPoly(Side::Second)),
        Arc::new(ResidualPoly(Side::First)),
        Arc::new(RowRelation(Side::First)),
        Arc::new(ResidualPoly(Side::Second)),
        Arc::new(RowRelation(Side::Second)),
        Arc::new(DerivRelation(Side::First)),
        Arc::new(DerivRelation(Side::Second)),
    ]
}

fn linear_range(var: &str, min: Index, max: Index) -> SweepRange {
    SweepRange {
        description: format!("{min} <= {var} <= {max}"),
        cases: if max >= min {
            (max - min + 1) as u64
        } else {
            0
        },
    }
}

/// Evaluates `check` at every point in parallel; counterexamples come back
/// in point order regardless of scheduling.
fn collect<P, F>(points: Vec<P>, check: F) -> Result<Vec<Counterexample>>
where
    P: Sync,
    F: Fn(&P) -> Result<Vec<Counterexample>> + Sync + Send,
{
    let per_point: Vec<Vec<Counterexample>> =
        points.par_iter().map(check).collect::<Result<_>>()?;
    Ok(per_point.into_iter().flatten().collect())
}

fn mismatches(var: &str, index: Index, got: &Poly, want: &Poly) -> Vec<Counterexample> {
    let top = got.coeffs().len().max(want.coeffs().len());
    (0..top)
        .filter_map(|k| {
            let (g, w) = (got.coeff(k), want.coeff(k));
            (g != w).then(|| Counterexample::new(&[(var, index), ("k", k)], g, w))
        })
        .collect()
}

fn single(var: &str, index: Index, lhs: BigInt, rhs: BigInt) -> Vec<Counterexample> {
    if lhs == rhs {
        Vec::new()
    } else {
        vec![Counterexample::new(&[(var, index)], lhs, rhs)]
    }
}

/// Signed first kind from second kind (`Side::First`) or the reverse,
/// compared with the recurrence triangle.
#[derive(Debug, Clone, Copy)]
pub struct Conversion(pub Side);

impl Identity for Conversion {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::Conversion1,
            Side::Second => IdentityId::Conversion2,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => "s(n,m) = sum_k (-1)^k C(n-1+k,n-m+k) C(2n-m,n-m-k) S(n-m+k,k)",
            Side::Second => "S(n,m) = sum_k (-1)^k C(n-1+k,n-m+k) C(2n-m,n-m-k) s(n-m+k,k)",
        }
    }

    fn default_max(&self) -> Index {
        40
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        engine.tables(2 * max);
        let points: Vec<(Index, Index)> = (1..=max)
            .flat_map(|n| (1..=n).map(move |m| (n, m)))
            .collect();
        let cases = points.len() as u64;
        let counterexamples = collect(points, |&(n, m)| {
            let (lhs, kind) = match self.0 {
                Side::First => (engine.first_from_second(n, m)?, StirlingKind::FirstSigned),
                Side::Second => (engine.second_from_first(n, m)?, StirlingKind::Second),
            };
            let rhs = engine.stirling(kind, n, m)?;
            Ok(if lhs == rhs {
                Vec::new()
            } else {
                vec![Counterexample::new(&[("n", n), ("m", m)], lhs, rhs)]
            })
        })?;
        Ok(Sweep {
            range: SweepRange {
                description: format!("1 <= m <= n <= {max}"),
                cases,
            },
            counterexamples,
        })
    }
}

/// Mutual inversion of the two triangles as a delta sum.
#[derive(Debug, Clone, Copy)]
pub struct Orthogonality(pub Side);

impl Identity for Orthogonality {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::Orthogonality3,
            Side::Second => IdentityId::Orthogonality4,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => "delta(j,k) = sum_{l=0}^{max(j,k)+1} s(l,j) S(k,l)",
            Side::Second => "delta(k,j) = sum_{l=0}^{max(j,k)+1} s(k,l) S(l,j)",
        }
    }

    fn default_max(&self) -> Index {
        30
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        let t = engine.tables(max + 1);
        let points: Vec<(Index, Index)> = (0..=max)
            .flat_map(|j| (0..=max).map(move |k| (j, k)))
            .collect();
        let cases = points.len() as u64;
        let counterexamples = collect(points, |&(j, k)| {
            let lhs = match self.0 {
                Side::First => orthogonality_first_second(&t, j, k),
                Side::Second => orthogonality_second_first(&t, j, k),
            };
            let rhs = delta(j, k);
            Ok(if lhs == rhs {
                Vec::new()
            } else {
                vec![Counterexample::new(&[("j", j), ("k", k)], lhs, rhs)]
            })
        })?;
        Ok(Sweep {
            range: SweepRange {
                description: format!("0 <= j, k <= {max}"),
                cases,
            },
            counterexamples,
        })
    }
}

/// Outer sum over one kind of the row sums of the other kind equals 1.
#[derive(Debug, Clone, Copy)]
pub struct UnitSum(pub Side);

impl Identity for UnitSum {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::UnitSum5,
            Side::Second => IdentityId::UnitSum6,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => "1 = sum_{j=1}^{m} s(m,j) sum_{k=1}^{j} S(j,k)",
            Side::Second => "1 = sum_{j=1}^{m} S(m,j) sum_{k=1}^{j} s(j,k)",
        }
    }

    fn default_max(&self) -> Index {
        60
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        let t = engine.tables(max);
        let counterexamples = collect((1..=max).collect(), |&m| {
            let lhs = match self.0 {
                Side::First => unit_sum_first(&t, m, m),
                Side::Second => unit_sum_second(&t, m, m),
            };
            Ok(single("m", m, lhs, BigInt::one()))
        })?;
        Ok(Sweep {
            range: linear_range("m", 1, max),
            counterexamples,
        })
    }
}

/// The nested polynomial sum reproduces the monomial `x^m`.
#[derive(Debug, Clone, Copy)]
pub struct BasisPoly(pub Side);

impl BasisPoly {
    fn var(self) -> &'static str {
        match self.0 {
            Side::First => "m",
            Side::Second => "j",
        }
    }
}

impl Identity for BasisPoly {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::BasisPoly11,
            Side::Second => IdentityId::BasisPoly12,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => "x^m = sum_{j=1}^{m} s(m,j) sum_{k=1}^{j} S(j,k) x^k",
            Side::Second => "x^j = sum_{m=1}^{j} S(j,m) sum_{k=1}^{m} s(m,k) x^k",
        }
    }

    fn default_max(&self) -> Index {
        40
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        engine.tables(max);
        let var = self.var();
        let counterexamples = collect((1..=max).collect(), |&m| {
            let got = match self.0 {
                Side::First => poly::basis_poly_first(engine, m)?,
                Side::Second => poly::basis_poly_second(engine, m)?,
            };
            Ok(mismatches(var, m, &got, &Poly::monomial(m)))
        })?;
        Ok(Sweep {
            range: linear_range(var, 1, max),
            counterexamples,
        })
    }
}

/// The basis sum with its leading term cancelled is the zero polynomial.
#[derive(Debug, Clone, Copy)]
pub struct ResidualPoly(pub Side);

impl Identity for ResidualPoly {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::Residual13,
            Side::Second => IdentityId::Residual15,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => {
                "0 = sum_{j=1}^{m-1} s(m,j) sum_{k=1}^{j} S(j,k) x^k + s(m,m) sum_{k=1}^{m-1} S(m,k) x^k"
            }
            Side::Second => {
                "0 = sum_{m=1}^{j-1} S(j,m) sum_{k=1}^{m} s(m,k) x^k + S(j,j) sum_{k=1}^{j-1} s(j,k) x^k"
            }
        }
    }

    fn default_max(&self) -> Index {
        40
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        engine.tables(max);
        let var = BasisPoly(self.0).var();
        let counterexamples = collect((1..=max).collect(), |&m| {
            let got = match self.0 {
                Side::First => poly::residual_poly_first(engine, m)?,
                Side::Second => poly::residual_poly_second(engine, m)?,
            };
            Ok(mismatches(var, m, &got, &Poly::zero()))
        })?;
        Ok(Sweep {
            range: linear_range(var, 1, max),
            counterexamples,
        })
    }
}

/// The residual evaluated at `x = 1`.
#[derive(Debug, Clone, Copy)]
pub struct RowRelation(pub Side);

impl Identity for RowRelation {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::RowRelation14,
            Side::Second => IdentityId::RowRelation16,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => "-sum_{j=1}^{m-1} s(m,j) sum_{k=1}^{j} S(j,k) = sum_{k=1}^{m-1} S(m,k)",
            Side::Second => "-sum_{m=1}^{j-1} S(j,m) sum_{k=1}^{m} s(m,k) = sum_{k=1}^{j-1} s(j,k)",
        }
    }

    fn default_max(&self) -> Index {
        60
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        let t = engine.tables(max);
        let var = BasisPoly(self.0).var();
        let counterexamples = collect((2..=max).collect(), |&m| {
            let (lhs, rhs) = match self.0 {
                Side::First => row_relation_first(&t, m),
                Side::Second => row_relation_second(&t, m),
            };
            Ok(single(var, m, lhs, rhs))
        })?;
        Ok(Sweep {
            range: linear_range(var, 2, max),
            counterexamples,
        })
    }
}

/// The linear coefficient of the residual, written out as a scalar relation.
///
/// The sweep also extracts that coefficient from the residual polynomial
/// itself; a non-zero value is reported with `k = 1` in its indices.
#[derive(Debug, Clone, Copy)]
pub struct DerivRelation(pub Side);

impl Identity for DerivRelation {
    fn id(&self) -> IdentityId {
        match self.0 {
            Side::First => IdentityId::DerivRelation17,
            Side::Second => IdentityId::DerivRelation18,
        }
    }

    fn statement(&self) -> &'static str {
        match self.0 {
            Side::First => "S(m,1) = -sum_{j=1}^{m-1} s(m,j) S(j,1)",
            Side::Second => "s(j,1) = -sum_{m=1}^{j-1} S(j,m) s(m,1)",
        }
    }

    fn default_max(&self) -> Index {
        60
    }

    fn sweep(&self, engine: &StirlingEngine, max: Index) -> Result<Sweep> {
        let t = engine.tables(max);
        let var = BasisPoly(self.0).var();
        let counterexamples = collect((2..=max).collect(), |&m| {
            let ((lhs, rhs), residual) = match self.0 {
                Side::First => (
                    deriv_relation_second(&t, m),
                    poly::residual_poly_first(engine, m)?,
                ),
                Side::Second => (
                    deriv_relation_first(&t, m),
                    poly::residual_poly_second(engine, m)?,
                ),
            };
            let mut found = single(var, m, lhs, rhs);
            let linear = residual.linear_coefficient();
            if !linear.is_zero() {
                found.push(Counterexample::new(
                    &[(var, m), ("k", 1)],
                    linear,
                    BigRat::zero(),
                ));
            }
            Ok(found)
        })?;
        Ok(Sweep {
            range: linear_range(var, 2, max),
            counterexamples,
        })
    }
}
