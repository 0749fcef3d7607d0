//! Fourier-basis adder and the chained trace circuit built from it.
//!
//! Addition happens as phase rotations on a Fourier-transformed accumulator
//! (a Draper adder): |Phi(b)> picks up the phases of a classical addend `a`
//! and becomes |Phi(a+b)>. Chaining one adder per diagonal element and
//! finishing with an inverse QFT leaves the accumulator in the basis state
//! |sum of the diagonal>, read off as the matrix trace.

use crate::error::{Error, Result};
use crate::sim::{GateLog, QubitRegister, SubState};

const ACCUMULATOR: &str = "acc";

/// Non-negative integer diagonal with a per-element bit width and an
/// accumulator wide enough that the running sum can never overflow.
#[derive(Debug, Clone)]
pub struct BinaryEncodedDiagonal {
    values: Vec<u64>,
    element_width: u32,
    accumulator_width: u32,
}

impl BinaryEncodedDiagonal {
    /// Accumulator width defaults to `element_width + ceil(log2 N)`.
    pub fn new(values: Vec<u64>, element_width: u32) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidArgument("diagonal must be nonempty".into()));
        }
        let acc = element_width + (n as f64).log2().ceil() as u32;
        Self::with_accumulator_width(values, element_width, acc.max(element_width).max(1))
    }

    pub fn with_accumulator_width(
        values: Vec<u64>,
        element_width: u32,
        accumulator_width: u32,
    ) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::InvalidArgument("diagonal must be nonempty".into()));
        }
        if element_width == 0 || element_width > 63 {
            return Err(Error::InvalidArgument(format!(
                "element width {element_width} out of range"
            )));
        }
        let min_acc = element_width + (n as f64).log2().ceil() as u32;
        if accumulator_width < min_acc.max(1) {
            return Err(Error::InvalidArgument(format!(
                "accumulator width {accumulator_width} below required {min_acc}"
            )));
        }
        for &v in &values {
            if v >= 1u64 << element_width {
                return Err(Error::Overflow {
                    value: v,
                    width: element_width,
                });
            }
        }
        Ok(BinaryEncodedDiagonal {
            values,
            element_width,
            accumulator_width,
        })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn element_width(&self) -> u32 {
        self.element_width
    }

    pub fn accumulator_width(&self) -> u32 {
        self.accumulator_width
    }
}

/// A Fourier-encoded accumulator holding |Phi(value)>.
///
/// The encoded value is tracked classically alongside the register: inputs
/// to the adder are basis states by contract, and the tracked value is what
/// makes overflow detectable before it corrupts the modular phases.
#[derive(Debug, Clone)]
pub struct FourierAccumulator {
    reg: QubitRegister,
    width: u32,
    value: u64,
}

impl FourierAccumulator {
    pub fn register(&self) -> &QubitRegister {
        &self.reg
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn encoded_value(&self) -> u64 {
        self.value
    }
}

/// |Phi(a)> = QFT|a>.
pub fn phi_encode(a: u64, width: u32) -> Result<FourierAccumulator> {
    if a >= 1u64 << width {
        return Err(Error::Overflow { value: a, width });
    }
    let mut reg = QubitRegister::prepare(&[(ACCUMULATOR, width as usize, SubState::Basis(a))])?;
    reg.qft(ACCUMULATOR, false)?;
    Ok(FourierAccumulator {
        reg,
        width,
        value: a,
    })
}

/// |a>|Phi(b)> -> |Phi(a+b)>: classical bits of `a` control phase rotations
/// on the Fourier register. One controlled phase per (addend bit, target
/// qubit) pair whose combined weight stays below the register modulus.
pub fn adder_sigma(a: u64, phi_b: FourierAccumulator) -> Result<FourierAccumulator> {
    let FourierAccumulator {
        mut reg,
        width,
        value,
    } = phi_b;
    if a >= 1u64 << width {
        return Err(Error::Overflow { value: a, width });
    }
    let sum = a + value;
    if sum >= 1u64 << width {
        return Err(Error::AccumulatorOverflow { sum, width });
    }
    let modulus = (1u64 << width) as f64;
    for i in 0..width {
        if a & (1 << i) == 0 {
            continue;
        }
        for j in 0..(width - i) {
            let theta = std::f64::consts::TAU * (1u64 << (i + j)) as f64 / modulus;
            let qubit = reg.qubit(ACCUMULATOR, j as usize)?;
            reg.phase(qubit, theta)?;
        }
    }
    Ok(FourierAccumulator {
        reg,
        width,
        value: sum,
    })
}

/// Inverse QFT followed by readout. The final state must be a computational
/// basis state; its index is the decoded value.
pub fn phi_decode(acc: FourierAccumulator) -> Result<(u64, QubitRegister)> {
    let FourierAccumulator { mut reg, .. } = acc;
    reg.qft(ACCUMULATOR, true)?;
    let (best, amp) = reg
        .amplitudes()
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.norm_sqr().partial_cmp(&b.norm_sqr()).unwrap())
        .expect("register is nonempty");
    let magnitude = amp.norm();
    if magnitude < 1.0 - 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "accumulator did not decode to a basis state (peak amplitude {magnitude})"
        )));
    }
    Ok((best as u64, reg))
}

#[derive(Debug, Clone)]
pub struct TraceRun {
    pub value: u64,
    pub accumulator_width: u32,
    pub gates: GateLog,
}

/// Chain one adder per diagonal element, then decode the accumulated sum.
/// The circuit is deterministic: the output is exactly the trace.
pub fn trace_quantum(diag: &BinaryEncodedDiagonal) -> Result<TraceRun> {
    let width = diag.accumulator_width();
    let mut acc = phi_encode(diag.values()[0], width)?;
    for &a in &diag.values()[1..] {
        acc = adder_sigma(a, acc)?;
    }
    let (value, reg) = phi_decode(acc)?;
    Ok(TraceRun {
        value,
        accumulator_width: width,
        gates: reg.gate_log().clone(),
    })
}
