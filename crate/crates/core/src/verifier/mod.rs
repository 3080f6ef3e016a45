//! Certificate-producing checks.

pub mod base;
pub mod cbounds;
pub mod certificate;
pub mod context;
pub mod envelope;
pub mod fka;
pub mod induction;
pub mod ledger;
pub mod one_minus_x2;
pub mod pointwise;
pub mod quotients;
pub mod sums;

pub use certificate::{Certificate, Claim, Computed, Mode, Verdict};
pub use context::VerificationContext;
pub use envelope::{envelope_A, BoundEnvelope};
pub use sums::closed_form_sums;
