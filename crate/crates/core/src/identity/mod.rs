//! Identity catalog and sweep reports.
//!
//! Every identity implements [`Identity`] and is registered by its short
//! name (`eq1` .. `eq18`) in an [`IdentityRegistry`]. The CLI looks
//! identities up by name at runtime; library callers can use
//! [`run_identity`] or build their own registry.

mod catalog;
pub mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactValue, Index};
use crate::stirling::StirlingEngine;

pub use catalog::{
    BasisPoly, Conversion, DerivRelation, Orthogonality, ResidualPoly, RowRelation, Side, UnitSum,
};
pub use checks::*;

/// One entry per numbered equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "eq1")]
    Conversion1,
    #[serde(rename = "eq2")]
    Conversion2,
    #[serde(rename = "eq3")]
    Orthogonality3,
    #[serde(rename = "eq4")]
    Orthogonality4,
    #[serde(rename = "eq5")]
    UnitSum5,
    #[serde(rename = "eq6")]
    UnitSum6,
    #[serde(rename = "eq11")]
    BasisPoly11,
    #[serde(rename = "eq12")]
    BasisPoly12,
    #[serde(rename = "eq13")]
    Residual13,
    #[serde(rename = "eq14")]
    RowRelation14,
    #[serde(rename = "eq15")]
    Residual15,
    #[serde(rename = "eq16")]
    RowRelation16,
    #[serde(rename = "eq17")]
    DerivRelation17,
    #[serde(rename = "eq18")]
    DerivRelation18,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::Conversion1,
        IdentityId::Conversion2,
        IdentityId::Orthogonality3,
        IdentityId::Orthogonality4,
        IdentityId::UnitSum5,
        IdentityId::UnitSum6,
        IdentityId::BasisPoly11,
        IdentityId::BasisPoly12,
        IdentityId::Residual13,
        IdentityId::RowRelation14,
        IdentityId::Residual15,
        IdentityId::RowRelation16,
        IdentityId::DerivRelation17,
        IdentityId::DerivRelation18,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityId::Conversion1 => "eq1",
            IdentityId::Conversion2 => "eq2",
            IdentityId::Orthogonality3 => "eq3",
            IdentityId::Orthogonality4 => "eq4",
            IdentityId::UnitSum5 => "eq5",
            IdentityId::UnitSum6 => "eq6",
            IdentityId::BasisPoly11 => "eq11",
            IdentityId::BasisPoly12 => "eq12",
            IdentityId::Residual13 => "eq13",
            IdentityId::RowRelation14 => "eq14",
            IdentityId::Residual15 => "eq15",
            IdentityId::RowRelation16 => "eq16",
            IdentityId::DerivRelation17 => "eq17",
            IdentityId::DerivRelation18 => "eq18",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.label() == s)
            .ok_or_else(|| Error::Parse {
                what: "identity id",
                input: s.to_owned(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// What a sweep covered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRange {
    pub description: String,
    pub cases: u64,
}

/// A point where the two sides disagreed, recorded exactly as computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub indices: BTreeMap<String, Index>,
    pub lhs: ExactValue,
    pub rhs: ExactValue,
}

impl Counterexample {
    pub fn new(
        indices: &[(&str, Index)],
        lhs: impl Into<ExactValue>,
        rhs: impl Into<ExactValue>,
    ) -> Self {
        Counterexample {
            indices: indices.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

/// Output of [`Identity::sweep`] before timing is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub range: SweepRange,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub range: SweepRange,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
}

impl IdentityReport {
    pub fn new(id: IdentityId, sweep: Sweep, elapsed_ms: u64) -> Self {
        let status = if sweep.counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        IdentityReport {
            id,
            range: sweep.range,
            status,
            counterexamples: sweep.counterexamples,
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Top-level document emitted by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSet {
    pub reports: Vec<IdentityReport>,
    pub all_passed: bool,
}

impl ReportSet {
    pub fn new(reports: Vec<IdentityReport>) -> Self {
        let all_passed = reports.iter().all(IdentityReport::passed);
        ReportSet {
            reports,
            all_passed,
        }
    }
}

/// A relation that can be checked at every index up to some maximum.
pub trait Identity: Send + Sync {
    fn id(&self) -> IdentityId;

    /// Short human-readable statement.
    fn statement(&self) -> &'static str;

    /// Sweep bound used when the caller gives none.
    fn default_max(&self) -> Index;

    /// Checks every index point up to `max_index`, collecting all violations
    /// in index order.
    fn sweep(&self, engine: &StirlingEngine, max_index: Index) -> Result<Sweep>;
}

#[derive(Default, Clone)]
pub struct IdentityRegistry {
    entries: Vec<Arc<dyn Identity>>,
}

impl fmt::Debug for IdentityRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|e| e.id()))
            .finish()
    }
}

impl IdentityRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// All fourteen identities in equation order.
    pub fn standard() -> Self {
        let mut r = Self::new();
        for entry in catalog::standard_entries() {
            r.register(entry).expect("standard catalog has unique ids");
        }
        r
    }

    pub fn register(&mut self, identity: Arc<dyn Identity>) -> Result<()> {
        if self.get(identity.id()).is_some() {
            return Err(Error::domain(format!(
                "identity {} registered twice",
                identity.id()
            )));
        }
        self.entries.push(identity);
        Ok(())
    }

    pub fn get(&self, id: IdentityId) -> Option<&Arc<dyn Identity>> {
        self.entries.iter().find(|e| e.id() == id)
    }

    pub fn find(&self, name: &str) -> Result<&Arc<dyn Identity>> {
        let id: IdentityId = name.parse()?;
        self.get(id).ok_or_else(|| Error::Parse {
            what: "registered identity",
            input: name.to_owned(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Identity>> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

static STANDARD: LazyLock<IdentityRegistry> = LazyLock::new(IdentityRegistry::standard);

pub fn registry() -> &'static IdentityRegistry {
    &STANDARD
}

/// Sweeps one identity and times it.
pub fn run(
    identity: &dyn Identity,
    engine: &StirlingEngine,
    max_index: Index,
) -> Result<IdentityReport> {
    engine.check_index(max_index)?;
    let start = Instant::now();
    let sweep = identity.sweep(engine, max_index)?;
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(IdentityReport::new(identity.id(), sweep, elapsed))
}

/// Sweeps `id` from the standard registry up to `max_index`.
pub fn run_identity(
    engine: &StirlingEngine,
    id: IdentityId,
    max_index: Index,
) -> Result<IdentityReport> {
    let identity = registry()
        .get(id)
        .expect("standard registry covers every id");
    run(identity.as_ref(), engine, max_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IndexCap;
    use crate::stirling::{Fault, StirlingKind};

    #[test]
    fn ids_round_trip_through_labels() {
        for id in IdentityId::ALL {
            assert_eq!(id.label().parse::<IdentityId>().unwrap(), id);
            assert_eq!(
                serde_json::to_string(&id).unwrap(),
                format!("\"{}\"", id.label())
            );
        }
        assert!("eq99".parse::<IdentityId>().is_err());
        assert!("eq7".parse::<IdentityId>().is_err());
    }

    #[test]
    fn standard_registry_is_complete() {
        let r = registry();
        assert_eq!(r.len(), 14);
        let ids: Vec<_> = r.iter().map(|e| e.id()).collect();
        assert_eq!(ids, IdentityId::ALL);
        assert!(r.find("eq13").is_ok());
        assert!(r.find("eq99").is_err());
    }

    #[test]
    fn duplicate_registration_fails() {
        let mut r = IdentityRegistry::standard();
        assert!(r.register(Arc::new(UnitSum(Side::First))).is_err());
    }

    #[test]
    fn run_examples() {
        let e = StirlingEngine::default();
        let r = run_identity(&e, IdentityId::UnitSum5, 30).unwrap();
        assert!(r.passed());
        assert_eq!(r.range.cases, 30);
        assert!(r.counterexamples.is_empty());

        let r = run_identity(&e, IdentityId::Orthogonality3, 20).unwrap();
        assert!(r.passed());
        assert_eq!(r.range.cases, 441);

        let r = run_identity(&e, IdentityId::Residual13, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.range.cases, 1);
    }

    #[test]
    fn every_identity_passes_at_modest_range() {
        let e = StirlingEngine::default();
        for id in IdentityId::ALL {
            let r = run_identity(&e, id, 20).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.counterexamples);
            assert!(r.range.cases > 0);
        }
    }

    #[test]
    fn limit_is_propagated() {
        let e = StirlingEngine::new(IndexCap::new(10));
        assert!(run_identity(&e, IdentityId::UnitSum5, 11)
            .unwrap_err()
            .is_limit());
    }

    #[test]
    fn faults_surface_as_counterexamples() {
        let e = StirlingEngine::with_faults(
            IndexCap::DEFAULT,
            vec![Fault::bump(StirlingKind::FirstSigned, 4, 2)],
        )
        .unwrap();
        let r = run_identity(&e, IdentityId::UnitSum5, 10).unwrap();
        assert_eq!(r.status, Status::Fail);
        let ce = &r.counterexamples[0];
        assert_eq!(ce.indices.get("m"), Some(&4));
        // s(4,2) += 1 adds Bell(2) = 2 to the sum at m = 4
        assert_eq!(ce.lhs.to_string(), "3");
        assert_eq!(ce.rhs.to_string(), "1");
    }

    #[test]
    fn report_json_shape_and_round_trip() {
        let e = StirlingEngine::with_faults(
            IndexCap::DEFAULT,
            vec![Fault::bump(StirlingKind::Second, 3, 2)],
        )
        .unwrap();
        let set = ReportSet::new(
            [IdentityId::Orthogonality3, IdentityId::BasisPoly11]
                .into_iter()
                .map(|id| run_identity(&e, id, 5).unwrap())
                .collect(),
        );
        assert!(!set.all_passed);
        let text = serde_json::to_string(&set).unwrap();
        let back: ReportSet = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert_eq!(back, set);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let first = &v["reports"][0];
        let keys: Vec<&str> = first
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            ["counterexamples", "elapsed_ms", "id", "range", "status"]
        );
        assert!(text.starts_with(r#"{"reports":[{"id":"eq3","range":"#));
        assert_eq!(first["status"], "fail");
    }
}
