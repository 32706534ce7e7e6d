//! Exact spectral tools for the nearly complete bipartite graphs
//! `K⁻(p,q)` (one edge deleted) and `K⁺(p,q)` (one pendant edge added).
//!
//! The crate is split by concern:
//!
//! * [`graph`]: bitset graphs, family constructors, canonical labeling, graph6.
//! * [`poly`]: big-integer polynomials, exact characteristic polynomials and
//!   Sturm-sequence root location.
//! * [`spectra`]: closed-form spectra of the families and the spectral-radius
//!   predicates built on them.
//! * [`ds`]: the determined-by-spectrum decisions, the `(a, b, b', t)`
//!   parametrization of the non-DS instances and their cospectral mates.
//! * [`oracle`]: exhaustive isomorph-free enumeration and cospectral classing
//!   for small graphs, used to confirm the closed-form claims.
//! * [`suites`]: the verification suites exposed by the command line tool.
//!
//! Everything that decides a spectral fact works on exact integers; floating
//! point appears only in values explicitly labelled approximate.

pub mod ds;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod spectra;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, FamilyKind, Graph};
pub use poly::IntPolynomial;
