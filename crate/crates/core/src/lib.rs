//! Largest domination number and smallest independence number over all
//! forests with a prescribed degree sequence.
//!
//! - [`degseq`]: degree sequences, forest realizability and case analysis.
//! - [`formulas`]: closed-form `gamma_max` / `alpha_min`.
//! - [`forest`]: labeled forests with exact tree DPs.
//! - [`construct`]: extremal and generic realizations, random forests.
//! - [`oracle`]: exhaustive enumeration of realizations and local search.

pub mod construct;
pub mod degseq;
mod dsu;
pub mod error;
pub mod forest;
pub mod formulas;
pub mod oracle;

pub use construct::{extremal_build, ExtremalCertificate};
pub use degseq::{BranchTag, DegreeSequence, SequenceStats};
pub use error::{Error, Result};
pub use forest::{Forest, VertexSet};
pub use formulas::{alpha_min, extremal_values, gamma_max, ExtremalValues, FormulaBranch};
pub use oracle::{empirical_extremes, EnumerationReport};
