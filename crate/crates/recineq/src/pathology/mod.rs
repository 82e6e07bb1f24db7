//! Computability-theoretic constructions made executable: a fixed machine
//! enumeration, the Specker-style sequence over it, the block-padding
//! interpolation, and the counterexample instances they generate.

pub mod block;
pub mod instances;
pub mod machine;
pub mod specker;

pub use block::{block_mu, block_padding, BlockConstruction, BlockError, DEFAULT_SEARCH_CAP};
pub use instances::{
    case2_counterexample, harmonic_specker, specker_rows, InstanceError, SpeckerVariant,
};
pub use machine::{
    decode, encode, halts_in, parse_machine_text, render_machine_text, simulate, Action,
    HaltStatus, Machine, MachineParseError, Move, ENCODING_VERSION,
};
pub use specker::{SpeckerError, SpeckerSeq};
