//! Four-spring elastoplastic, current-conducting lattices modelled as
//! two-terminal series-parallel networks.
//!
//! Every spring carries one material parameter, its elastic limit `c_i`.
//! The limit fixes both the maximal stress the spring sustains and its
//! electrical resistance `1/c_i`. On top of that the crate provides:
//!
//! * [`network`]: series-parallel trees, the ten canonical four-spring
//!   topologies and a small text grammar for topologies.
//! * [`eval`]: resistance `R`, response force `F`, multi-functional
//!   performance `F_R = alpha*F + beta*R` and cost `C = sum(c_i)`.
//! * [`loading`]: a quasi-static displacement-controlled loading simulator
//!   used as an independent check of the response force.
//! * [`bounds`]: the reduced one/two-variable bounds of every subcase,
//!   their lifting maps and sampling checks of the dominance inequalities.
//! * [`solve`]: reduced solvers, the global verdict and a brute-force grid
//!   over the full four-variable problems.
//! * [`report`]: text and CSV renderings of the results.

pub mod bounds;
pub mod error;
pub mod eval;
pub mod loading;
pub mod network;
pub mod report;
pub mod solve;

pub use error::{Error, Result};
pub use eval::{evaluate, resistance, response_force, ConstraintParams, Evaluation, Limits};
pub use network::{canonical_case, parse_topology, CaseId, SpTree};
