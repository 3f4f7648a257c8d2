//! Robust instability analysis of unstable SISO plants: peak gains, phase
//! change rates, all-pass perturbations that marginally stabilize, and the
//! resulting bounds on the robust instability radius.

pub mod allpass;
pub mod config;
pub mod error;
pub mod export;
pub mod lti;
pub mod models;
pub mod peaks;
pub mod poly;
pub mod report;
pub mod rir;
pub mod simulate;
pub mod sweep;

pub use allpass::{AllPassForm, AllPassPerturbation};
pub use config::AnalysisConfig;
pub use error::{Error, Result};
pub use lti::{ClassTag, PeakShape, RationalTF};
pub use peaks::{PeakInfo, PeakList, PeakOptions};
pub use poly::{Polynomial, StabilityKind, StabilityVerdict};
pub use report::{run_analysis, AnalysisReport};
pub use rir::{RirStatus, RirVerdict};
pub use sweep::{run_sweep, SweepTable};
