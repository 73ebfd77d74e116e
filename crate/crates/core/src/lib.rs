//! Evaluation of continued fractions `K(1/b_n)` over the extended complex
//! plane, with disk value regions for their even convergents, odd reverse
//! sequences, and even tails.
//!
//! The crate is organized in three layers:
//!
//! * [`projective`]: homogeneous points of the extended plane, sector
//!   membership, and 2x2 Moebius map algebra;
//! * [`engine`]: the Wallis-Euler recurrence with joint rescaling,
//!   convergents at a point, tail and reverse recursions, even/odd parity
//!   limits, and the pairwise sum bound for positive fractions;
//! * [`regions`]: admissible disk constants, membership certificates,
//!   two-step inequality oracles, the pi/4 boundary counterexample, and
//!   fixed-seed randomized theorem sweeps.
//!
//! Everything is pure and immutable after construction; values can be
//! shared and sent across tasks freely.
//!
//! ```
//! use cfrac_core::{
//!     certify_even_convergents, minimal_disk_constant, CertificateTarget, Complex64, Disk,
//!     ElementSequence, ExtendedComplex, Theorem, DEFAULT_SLACK,
//! };
//!
//! // all-ones fraction: even convergents are the Fibonacci ratios
//! let seq = ElementSequence::constant(Complex64::new(1.0, 0.0), 8)?;
//! let radius = minimal_disk_constant(
//!     &seq,
//!     Theorem::ShiftedDisk,
//!     CertificateTarget::EvenConvergents,
//!     0.0,
//! )?;
//! assert_eq!(radius, 0.5);
//! let cert = certify_even_convergents(
//!     &seq,
//!     &ExtendedComplex::zero(),
//!     &Disk::shifted(radius)?,
//!     0.0,
//!     DEFAULT_SLACK,
//! )?;
//! assert!(cert.passed);
//! # Ok::<(), cfrac_core::Error>(())
//! ```

pub mod engine;
pub mod error;
pub mod projective;
pub mod regions;

pub use engine::{
    convergent, convergent_at, even_convergent_sum_bound, even_odd_limits, reverse_sequence,
    tail_sequence, ConvergentState, ElementSequence, EvenOddLimits,
};
pub use error::{Error, Result};
pub use projective::{ExtendedComplex, MoebiusMap, Sector, DEFAULT_ARG_TOLERANCE, DEFAULT_EQ_TOL};
pub use regions::{
    certify_even_convergents, certify_even_tails, certify_odd_reverse, counterexample_eval,
    counterexample_sweep, halfplane_disk_equivalence, lemma_origin_disk_step,
    lemma_two_step_lower_bound, minimal_disk_constant, origin_disk_constant, origin_disk_sweep,
    shifted_disk_constant, shifted_disk_constant_from_moduli, shifted_disk_sweep,
    CertificateTarget, CounterexampleEval, Disk, HalfplaneDiskCheck, OriginDisk, OriginStepBound,
    RegionCertificate, ShiftedDisk, SweepConfig, SweepReport, Theorem, TwoStepBound, DEFAULT_SLACK,
    DEFAULT_SWEEP_SEED,
};

pub use num_complex::Complex64;
