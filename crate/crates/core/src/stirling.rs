//! Stirling triangles of both kinds built from their three-term recurrences,
//! a memoizing point-query engine, and the inter-kind conversion sums.
//!
//! First-kind numbers are signed: `s(n, 1) = (-1)^(n-1) (n-1)!`. The unsigned
//! variant is derived from the signed triangle, never computed separately.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, sign_power, BigInt, Index, IndexCap};

static ZERO: BigInt = BigInt::ZERO;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    FirstSigned,
    FirstUnsigned,
    Second,
}

impl StirlingKind {
    pub const ALL: [StirlingKind; 3] = [
        StirlingKind::FirstSigned,
        StirlingKind::FirstUnsigned,
        StirlingKind::Second,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StirlingKind::FirstSigned => "first",
            StirlingKind::FirstUnsigned => "first-unsigned",
            StirlingKind::Second => "second",
        }
    }
}

impl fmt::Display for StirlingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StirlingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StirlingKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "Stirling kind",
                input: s.to_owned(),
            })
    }
}

/// Dense table of one kind of Stirling number; row `n` holds `m = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    kind: StirlingKind,
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    fn seed(kind: StirlingKind) -> Self {
        Triangle {
            kind,
            rows: vec![vec![BigInt::one()]],
        }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_row(&self) -> Index {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: Index) -> Option<&[BigInt]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    /// Entry `(n, m)`; zero for `m > n`, `None` if row `n` was never built.
    pub fn get(&self, n: Index, m: Index) -> Option<&BigInt> {
        self.rows.get(n).map(|row| row.get(m).unwrap_or(&ZERO))
    }

    /// Like [`Triangle::get`] but panics when row `n` is missing.
    pub fn entry(&self, n: Index, m: Index) -> &BigInt {
        self.get(n, m)
            .unwrap_or_else(|| panic!("row {n} not built (max row {})", self.max_row()))
    }

    /// Adds `delta` to a stored entry. Exists for fault injection: it breaks
    /// the recurrence on purpose so tests can confirm the checks notice.
    pub fn perturb(&mut self, n: Index, m: Index, delta: &BigInt) -> Result<()> {
        let cell = self
            .rows
            .get_mut(n)
            .and_then(|row| row.get_mut(m))
            .ok_or_else(|| Error::domain(format!("({n}, {m}) is not a stored triangle entry")))?;
        *cell += delta;
        Ok(())
    }

    fn extend_to(&mut self, max_row: Index) {
        while self.rows.len() <= max_row {
            let n = self.rows.len() - 1;
            let next = match self.kind {
                StirlingKind::FirstSigned => next_first_row(&self.rows[n], n),
                StirlingKind::Second => next_second_row(&self.rows[n]),
                StirlingKind::FirstUnsigned => unreachable!("unsigned rows are derived"),
            };
            self.rows.push(next);
        }
    }

    fn unsigned_from(signed: &Triangle) -> Triangle {
        let rows = signed
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(m, v)| v * sign_power(n - m))
                    .collect()
            })
            .collect();
        Triangle {
            kind: StirlingKind::FirstUnsigned,
            rows,
        }
    }

    /// Copy of rows `0..=max_row`.
    fn prefix(&self, max_row: Index) -> Triangle {
        Triangle {
            kind: self.kind,
            rows: self.rows[..=max_row].to_vec(),
        }
    }

    /// One line per row, comma-separated exact decimals, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of rows, each an array of decimal strings.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        serde_json::to_string(&rows).expect("string arrays always serialize")
    }

    /// Right-aligned columns padded to the widest entry.
    pub fn to_table(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `s(n+1, m) = s(n, m-1) - n s(n, m)`
fn next_first_row(prev: &[BigInt], n: Index) -> Vec<BigInt> {
    (0..=n + 1)
        .map(|m| {
            let left = if m == 0 { &ZERO } else { &prev[m - 1] };
            let up = prev.get(m).unwrap_or(&ZERO);
            left - up * n
        })
        .collect()
}

/// `S(n+1, m) = m S(n, m) + S(n, m-1)`
fn next_second_row(prev: &[BigInt]) -> Vec<BigInt> {
    (0..=prev.len())
        .map(|m| {
            let left = if m == 0 { &ZERO } else { &prev[m - 1] };
            let up = prev.get(m).unwrap_or(&ZERO);
            up * m + left
        })
        .collect()
}

/// Builds rows `0..=max_row` of the requested kind from the recurrences.
pub fn build_triangle(kind: StirlingKind, max_row: Index, cap: IndexCap) -> Result<Triangle> {
    cap.check(max_row)?;
    Ok(match kind {
        StirlingKind::FirstUnsigned => {
            Triangle::unsigned_from(&build_triangle(StirlingKind::FirstSigned, max_row, cap)?)
        }
        _ => {
            let mut t = Triangle::seed(kind);
            t.extend_to(max_row);
            t
        }
    })
}

/// Signed first-kind and second-kind triangles over a common row range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTables {
    first: Triangle,
    second: Triangle,
}

impl StirlingTables {
    fn new() -> Self {
        StirlingTables {
            first: Triangle::seed(StirlingKind::FirstSigned),
            second: Triangle::seed(StirlingKind::Second),
        }
    }

    pub fn max_row(&self) -> Index {
        self.first.max_row()
    }

    /// Signed first kind `s(n, m)`. Panics if row `n` is not covered.
    pub fn s1(&self, n: Index, m: Index) -> &BigInt {
        self.first.entry(n, m)
    }

    /// Second kind `S(n, m)`. Panics if row `n` is not covered.
    pub fn s2(&self, n: Index, m: Index) -> &BigInt {
        self.second.entry(n, m)
    }

    pub fn first(&self) -> &Triangle {
        &self.first
    }

    pub fn second(&self) -> &Triangle {
        &self.second
    }

    pub fn value(&self, kind: StirlingKind, n: Index, m: Index) -> BigInt {
        match kind {
            StirlingKind::FirstSigned => self.s1(n, m).clone(),
            StirlingKind::FirstUnsigned if m <= n => self.s1(n, m) * sign_power(n - m),
            StirlingKind::FirstUnsigned => BigInt::zero(),
            StirlingKind::Second => self.s2(n, m).clone(),
        }
    }

    fn extend_to(&mut self, max_row: Index) {
        self.first.extend_to(max_row);
        self.second.extend_to(max_row);
    }

    fn apply(&mut self, fault: &Fault) {
        if fault.n > self.max_row() {
            return;
        }
        let (triangle, delta) = match fault.kind {
            StirlingKind::FirstSigned => (&mut self.first, fault.delta.clone()),
            StirlingKind::FirstUnsigned => (
                &mut self.first,
                &fault.delta * sign_power(fault.n - fault.m),
            ),
            StirlingKind::Second => (&mut self.second, fault.delta.clone()),
        };
        triangle
            .perturb(fault.n, fault.m, &delta)
            .expect("fault coordinates validated on construction");
    }
}

/// A deliberate perturbation of one stored triangle entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub kind: StirlingKind,
    pub n: Index,
    pub m: Index,
    pub delta: BigInt,
}

impl Fault {
    /// `+1` on entry `(n, m)`.
    pub fn bump(kind: StirlingKind, n: Index, m: Index) -> Self {
        Fault {
            kind,
            n,
            m,
            delta: BigInt::one(),
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    /// `kind:n:m` or `kind:n:m:delta`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "fault (kind:n:m[:delta])",
            input: s.to_owned(),
        };
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(err());
        }
        let kind = parts[0].parse().map_err(|_| err())?;
        let n = parts[1].parse().map_err(|_| err())?;
        let m = parts[2].parse().map_err(|_| err())?;
        let delta = match parts.get(3) {
            Some(d) => crate::exact::parse_int(d).map_err(|_| err())?,
            None => BigInt::one(),
        };
        Ok(Fault { kind, n, m, delta })
    }
}

#[derive(Debug)]
struct Memo {
    clean: StirlingTables,
    view: Arc<StirlingTables>,
}

/// Memoizing facade over both triangles.
///
/// Rows are grown on demand and never evicted. Readers share an immutable
/// snapshot through an [`Arc`]; growth happens under the write lock, so
/// concurrent callers always observe a consistent prefix.
#[derive(Debug)]
pub struct StirlingEngine {
    cap: IndexCap,
    faults: Vec<Fault>,
    memo: RwLock<Memo>,
}

impl Default for StirlingEngine {
    fn default() -> Self {
        Self::new(IndexCap::DEFAULT)
    }
}

impl StirlingEngine {
    pub fn new(cap: IndexCap) -> Self {
        let clean = StirlingTables::new();
        StirlingEngine {
            cap,
            faults: Vec::new(),
            memo: RwLock::new(Memo {
                view: Arc::new(clean.clone()),
                clean,
            }),
        }
    }

    /// Engine whose tables carry the given perturbations. Test and CLI
    /// fault-injection only.
    pub fn with_faults(cap: IndexCap, faults: Vec<Fault>) -> Result<Self> {
        for f in &faults {
            if f.m > f.n {
                return Err(Error::domain(format!(
                    "fault at ({}, {}) lies outside the triangle",
                    f.n, f.m
                )));
            }
        }
        let mut engine = Self::new(cap);
        engine.faults = faults;
        let mut memo = engine.memo.write().expect("fresh lock");
        let mut view = memo.clean.clone();
        engine.faults.iter().for_each(|f| view.apply(f));
        memo.view = Arc::new(view);
        drop(memo);
        Ok(engine)
    }

    pub fn cap(&self) -> IndexCap {
        self.cap
    }

    pub fn faults(&self) -> &[Fault] {
        &self.faults
    }

    pub fn check_index(&self, index: Index) -> Result<()> {
        self.cap.check(index)
    }

    /// Snapshot covering at least rows `0..=max_row`.
    ///
    /// Not subject to the index cap: callers validate their user-facing
    /// indices first, and some sums legitimately reach a row or two past them.
    pub fn tables(&self, max_row: Index) -> Arc<StirlingTables> {
        {
            let memo = self.memo.read().expect("memo lock poisoned");
            if memo.view.max_row() >= max_row {
                return Arc::clone(&memo.view);
            }
        }
        let mut memo = self.memo.write().expect("memo lock poisoned");
        if memo.view.max_row() < max_row {
            memo.clean.extend_to(max_row);
            let mut view = memo.clean.clone();
            self.faults.iter().for_each(|f| view.apply(f));
            memo.view = Arc::new(view);
        }
        Arc::clone(&memo.view)
    }

    /// Point query. Zero outside the triangle.
    pub fn stirling(&self, kind: StirlingKind, n: Index, m: Index) -> Result<BigInt> {
        self.check_index(n)?;
        self.check_index(m)?;
        if m > n {
            return Ok(BigInt::zero());
        }
        Ok(self.tables(n).value(kind, n, m))
    }

    /// Rows `0..=max_row` of one kind, copied out of the memo.
    pub fn triangle(&self, kind: StirlingKind, max_row: Index) -> Result<Triangle> {
        self.check_index(max_row)?;
        let tables = self.tables(max_row);
        Ok(match kind {
            StirlingKind::FirstSigned => tables.first.prefix(max_row),
            StirlingKind::FirstUnsigned => Triangle::unsigned_from(&tables.first.prefix(max_row)),
            StirlingKind::Second => tables.second.prefix(max_row),
        })
    }

    /// Signed first-kind number from second-kind numbers:
    /// `s(n,m) = sum_{k=0}^{n-m} (-1)^k C(n-1+k, n-m+k) C(2n-m, n-m-k) S(n-m+k, k)`.
    pub fn first_from_second(&self, n: Index, m: Index) -> Result<BigInt> {
        self.conversion(n, m, |t, a, b| t.s2(a, b))
    }

    /// Second-kind number from signed first-kind numbers, the mirror image
    /// of [`StirlingEngine::first_from_second`].
    pub fn second_from_first(&self, n: Index, m: Index) -> Result<BigInt> {
        self.conversion(n, m, |t, a, b| t.s1(a, b))
    }

    fn conversion(
        &self,
        n: Index,
        m: Index,
        other: impl for<'a> Fn(&'a StirlingTables, Index, Index) -> &'a BigInt,
    ) -> Result<BigInt> {
        self.check_index(n)?;
        if m == 0 || m > n {
            return Err(Error::domain(format!(
                "conversion needs 1 <= m <= n, got n = {n}, m = {m}"
            )));
        }
        let d = n - m;
        let tables = self.tables(2 * d);
        let mut sum = BigInt::zero();
        for k in 0..=d {
            let term =
                binomial(n - 1 + k, d + k) * binomial(2 * n - m, d - k) * other(&tables, d + k, k);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        Ok(sum)
    }
}
