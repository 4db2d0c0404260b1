//! Belief Noisy-OR gates and evidential networks on binary frames.
//!
//! - [`belief`]: mass functions on `{T, F}`, credibility, plausibility,
//!   Möbius inversion and the pignistic transform.
//! - [`gates`]: conditional mass tables for Noisy-OR, ImNOR and the BNOR
//!   family (LC, PBNOR, OBNOR, TBNOR, OCBNOR).
//! - [`enet`]: evidential networks and exact marginals by variable
//!   elimination.
//! - [`reliability`]: two-terminal reliability with imprecise edges.
//! - [`oracle`]: brute-force references for the above.

pub mod belief;
pub mod enet;
pub mod gates;
pub mod oracle;
pub mod presets;
pub mod reliability;

pub use belief::{
    mass_from_bel, mass_from_interval, BeliefError, BeliefReport, MassFunction, ProbabilityInterval, Subset,
};
pub use enet::{Conditional, EnetError, EvidentialNetwork, LocalModel, Node};
pub use gates::{
    bnor_table, flip_distribution, imnor_table, nor_cpt, set_or, ConditionalMassTable, GateError, GateSpec, GateVariant,
};
pub use oracle::{joint_enumeration_marginal, world_enumeration_reliability, OracleError};
pub use reliability::{
    build_bn_model, build_bnor_model, edge_working_probability, evaluate, evaluate_bn, lambda_sweep, width_sweep, Edge,
    EdgeReliability, ReliabilityError, ReliabilityNetwork, ReliabilityReport, SweepPoint,
};
