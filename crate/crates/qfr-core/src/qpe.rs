//! Quantum phase estimation over a named phase/system register pair.
//! Shared by the determinant circuit, the HHL solver and the eigenface
//! extractor.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::sim::QubitRegister;

/// Hadamards on the phase register, controlled powers of `u` on the system
/// register, then an inverse QFT. Phase bit k controls u^(2^k), so an
/// eigenstate with integer eigenphase lambda leaves the phase register in
/// the basis state |lambda>.
pub fn forward(
    reg: &mut QubitRegister,
    phase_sub: &str,
    system_sub: &str,
    u: &Matrix,
) -> Result<()> {
    let n = reg.sub(phase_sub)?.width;
    check_dims(reg, system_sub, u)?;
    reg.hadamard_block(phase_sub)?;
    for k in 0..n {
        let control = reg.qubit(phase_sub, k)?;
        reg.controlled_unitary_power(control, system_sub, u, 1 << k, false)?;
    }
    reg.qft(phase_sub, true)?;
    Ok(())
}

/// Exact reverse of [`forward`]: QFT, controlled powers of u^dagger, then
/// Hadamards, disentangling the phase register back to |0...0>.
pub fn inverse(
    reg: &mut QubitRegister,
    phase_sub: &str,
    system_sub: &str,
    u: &Matrix,
) -> Result<()> {
    let n = reg.sub(phase_sub)?.width;
    check_dims(reg, system_sub, u)?;
    reg.qft(phase_sub, false)?;
    for k in 0..n {
        let control = reg.qubit(phase_sub, k)?;
        reg.controlled_unitary_power(control, system_sub, u, 1 << k, true)?;
    }
    reg.hadamard_block(phase_sub)?;
    Ok(())
}

fn check_dims(reg: &QubitRegister, system_sub: &str, u: &Matrix) -> Result<()> {
    let width = reg.sub(system_sub)?.width;
    let dim = 1usize << width;
    if u.rows() != dim || u.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "unitary is {}x{}, system register holds dimension {dim}",
            u.rows(),
            u.cols()
        )));
    }
    Ok(())
}
