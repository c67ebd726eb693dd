//! Solver core for the graph model for conflict resolution (GMCR) with
//! states described either by classical binary option selection or by
//! Belnap four-valued propositions.
//!
//! The crate is `no_std` (with `alloc`): everything here is pure data and
//! pure functions, so it can run anywhere a heap exists. File formats,
//! rendering, and the command line live in the companion `gmcr-cli` crate.
//!
//! Module map:
//!
//! - [`b4`] — the four truth values, their connectives, the entailment
//!   order, and the move-allowed relation.
//! - [`model`] — decision makers, options, states, state spaces,
//!   preference orders, and whole conflict models.
//! - [`reach`] — reachable lists, unilateral improvements, coalition
//!   reachability, and DOT export, under three move policies.
//! - [`stability`] — Nash/GMR/SMR/SEQ, their coalition analogues, Pareto
//!   analysis, report assembly, and cross-model comparison.
//! - [`oracle`] — an independent brute-force recomputation of every
//!   stability verdict, for checking the engine.
//! - [`cases`] — built-in conflict models used by tests and demos.
//!
//! ```
//! use gmcr_core::cases::{load_case, CaseId};
//! use gmcr_core::stability::{analyze, Concept};
//! use gmcr_core::StateId;
//!
//! let model = load_case(CaseId::PdB4_9);
//! let report = analyze(&model).unwrap();
//! // Mutual defection stays a Nash equilibrium in the four-valued
//! // frame, and a second one appears where the contradictory and
//! // unsettled values pin the other side down.
//! assert!(report.is_equilibrium(Concept::Nash, StateId(4)));
//! assert!(report.is_equilibrium(Concept::Nash, StateId(2)));
//! assert_eq!(report.equilibria(Concept::Gmr).len(), 3);
//! ```

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod b4;
pub mod cases;
pub mod model;
pub mod oracle;
pub mod reach;
pub mod stability;

pub use b4::TruthValue;
pub use model::{ConflictModel, DmId, PreferenceOrder, State, StateId, StateSpace};
pub use reach::{Coalition, MovePolicy};
pub use stability::{Concept, StabilityReport};
