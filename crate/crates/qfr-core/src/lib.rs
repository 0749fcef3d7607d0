//! Quantum face recognition on ghost images, at statevector-simulation
//! scale.
//!
//! The crate pairs every quantum subroutine with a classical brute-force
//! oracle and checks them against each other: a QFT adder that accumulates
//! matrix traces, a phase-estimation determinant circuit, an HHL linear
//! solver used for matrix inversion and unmixing, QPCA eigenface
//! extraction, and a log-determinant divergence for face matching. A Monte
//! Carlo ghost-imaging synthesizer stands in for the optical bench and
//! produces the coincidence-count images the pipeline ingests.
//!
//! Exponential simulation cost is explicit: circuits run on at most a few
//! qubits beyond what the fixtures need, and gate counts are reported as
//! telemetry rather than wall-clock claims.

pub mod adder;
pub mod determinant;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod qpe;
pub mod rng;
pub mod sim;

pub use error::{Error, Result};
pub use linalg::{det_classical, eig_hermitian, inverse, trace_classical, Matrix};
pub use sim::{GateLog, QubitRegister, SubState};
