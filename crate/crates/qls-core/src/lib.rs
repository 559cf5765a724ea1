//! Symbolic computation with bosonizations of quantum linear spaces: exact
//! cyclotomic arithmetic, PBW-basis Hopf algebra arithmetic, diagonal actions
//! on quantum affine spaces, smash products, and exact (semi)primeness
//! deciders with replayable certificates.

pub mod config;
pub mod criteria;
pub mod cyclotomic;
pub mod error;
pub mod group_chars;
pub mod hopf;
pub mod linalg;
pub mod pipeline;
pub mod qas;
pub mod smash;

pub use config::{parse_scalar, JobConfig};
pub use criteria::{
    semiprime_decide, prime_decide, t_chi_evaluate, Coverage, Decision, InvariantCone, Modulus,
    StepEvidence, StepResult, VerdictValue,
};
pub use cyclotomic::CycNumber;
pub use error::{Error, Result};
pub use group_chars::{AbelianGroup, Character, GroupElement};
pub use hopf::{BElement, BasisLabel, Bosonization, QLSDatum, TaftDatum};
pub use pipeline::{run, Command, Outcome};
pub use qas::{
    ActionSpec, CheckOutcome, ModuleAction, PMatrix, QASElement, QuantumAffineSpace, SkewTarget,
};
pub use smash::{verify_smash_identities, SmashAlgebra, SmashElement, SmashLabel};
