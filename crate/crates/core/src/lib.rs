//! A virtual machine for card-based overwriting protocols computing the equality, set-size and
//! set functions, together with direct oracles, an exhaustive correctness verifier and an exact
//! transcript-distribution auditor.

pub mod audit;
pub mod card;
pub mod cost;
pub mod error;
pub mod num;
pub mod oracle;
pub mod protocol;
pub mod shuffle;

pub use audit::{
    check_security, check_security_sampled, check_security_variant, transcript_distribution,
    verify_correctness, AuditReport, CorrectnessReport, SampledConfig, TranscriptDistribution,
    Verdict, DEFAULT_BUDGET,
};
pub use card::{build_matrix, decode, encode, Card, CardMatrix, InputVector, Pattern, Sequence, Suit};
pub use cost::{cost_model, Cost, Scheme};
pub use error::{Error, Result};
pub use oracle::{oracle_equality, oracle_set, oracle_set_size};
pub use protocol::{
    overwrite_step, run_equality, run_observed, run_protocol, run_set, run_set_size, Output,
    Protocol, ProtocolRun, RevealEvent, Stage, Transcript, Variant,
};
pub use shuffle::{
    draw_uniform, enumerate_tapes, pile_scramble, pile_shift, DecisionSource, Permutation,
    RandomnessTape, SeededSource, ShuffleDecision, ShuffleKind,
};

/// Exact probabilities, used for every exact-mode verdict.
pub type ExactProbability = num_rational::Ratio<u64>;
/// Estimated probabilities from sampled audits.
pub type SampledProbability = f64;
