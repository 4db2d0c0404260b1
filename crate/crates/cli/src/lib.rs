//! File formats and subcommands behind the `bnor` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod variant;

pub use commands::{cmd_compare, cmd_gate, cmd_infer, cmd_reliability, cmd_sweep, Model, SweepParam, SWEEP_HEADER};
pub use error::CliError;
pub use format::{network_to_json, parse_network, EnetFile, NetworkFile};
pub use variant::parse_variant;
