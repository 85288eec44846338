//! Exact Stirling numbers of the first and second kind, plus a catalog of
//! identities relating the two kinds that can be swept over index ranges and
//! checked with exact arithmetic.
//!
//! The crate is organized bottom-up:
//!
//! * [`exact`] – big integers, rationals, binomials and the index cap.
//! * [`stirling`] – triangles built from the three-term recurrences, a
//!   memoizing engine, and the inter-kind conversion sums.
//! * [`oracle`] – brute-force enumeration of permutations and set partitions,
//!   sharing no code with the engine.
//! * [`poly`] – dense polynomials over the rationals and the polynomial
//!   identities built from the triangles.
//! * [`identity`] – scalar identity checks and a registry of sweepable
//!   identities producing [`identity::IdentityReport`]s.
//! * [`cli`] – the `stirling` command-line frontend.

pub mod cli;
pub mod error;
pub mod exact;
pub mod identity;
pub mod oracle;
pub mod poly;
pub mod stirling;

pub use error::{Error, Result};
pub use exact::{BigInt, BigRat, Index, IndexCap};
pub use identity::{IdentityId, IdentityReport};
pub use poly::Poly;
pub use stirling::{StirlingEngine, StirlingKind, Triangle};
