//! Statevector simulator over named sub-registers.
//!
//! A register owns all 2^m amplitudes of an m-qubit system, partitioned into
//! named sub-registers (phase register, system register, ancilla, ...).
//! Qubit `k` of a sub-register at offset `o` is global qubit `o + k`, and a
//! sub-register's value is read in ordinary binary with bit 0 least
//! significant. Gates are applied as dense amplitude kernels; every gate is
//! counted in a [`GateLog`] and norm preservation is checked after each
//! application in debug builds.

mod gatelog;

pub use gatelog::GateLog;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Hard cap protecting against runaway allocations; desk scale is far below.
const MAX_QUBITS: usize = 24;

const NORM_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SubRegister {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl SubRegister {
    fn mask(&self) -> usize {
        ((1usize << self.width) - 1) << self.offset
    }

    fn value_of(&self, index: usize) -> u64 {
        ((index >> self.offset) & ((1 << self.width) - 1)) as u64
    }
}

/// Initial contents for one sub-register.
pub enum SubState<'a> {
    /// Computational basis state |value>.
    Basis(u64),
    /// Arbitrary normalized amplitudes of length 2^width.
    Amplitudes(&'a [Complex64]),
}

#[derive(Debug, Clone)]
pub struct QubitRegister {
    qubits: usize,
    amps: Vec<Complex64>,
    layout: Vec<SubRegister>,
    log: GateLog,
}

impl QubitRegister {
    /// Build a register from (name, width, initial state) triples. The first
    /// entry occupies the least significant qubits.
    pub fn prepare(spec: &[(&str, usize, SubState)]) -> Result<Self> {
        if spec.is_empty() {
            return Err(Error::InvalidArgument("register needs sub-registers".into()));
        }
        let mut layout = Vec::with_capacity(spec.len());
        let mut offset = 0usize;
        for (name, width, _) in spec {
            if *width == 0 {
                return Err(Error::InvalidArgument(format!(
                    "sub-register `{name}` must have width >= 1"
                )));
            }
            if layout.iter().any(|s: &SubRegister| s.name == *name) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate sub-register name `{name}`"
                )));
            }
            layout.push(SubRegister {
                name: (*name).to_string(),
                offset,
                width: *width,
            });
            offset += width;
        }
        if offset > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "{offset} qubits exceed the simulator cap of {MAX_QUBITS}"
            )));
        }

        // Per-sub state vectors, then one tensor-product pass.
        let mut states: Vec<Vec<Complex64>> = Vec::with_capacity(spec.len());
        for (name, width, init) in spec {
            let dim = 1usize << width;
            let state = match init {
                SubState::Basis(v) => {
                    if *v >= dim as u64 {
                        return Err(Error::Overflow {
                            value: *v,
                            width: *width as u32,
                        });
                    }
                    let mut s = vec![Complex64::new(0.0, 0.0); dim];
                    s[*v as usize] = Complex64::new(1.0, 0.0);
                    s
                }
                SubState::Amplitudes(a) => {
                    if a.len() != dim {
                        return Err(Error::DimensionMismatch(format!(
                            "sub-register `{name}` expects {dim} amplitudes, got {}",
                            a.len()
                        )));
                    }
                    let norm: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                    if (norm - 1.0).abs() > 1e-6 {
                        return Err(Error::InvalidArgument(format!(
                            "sub-register `{name}` initial state has norm {norm}"
                        )));
                    }
                    a.iter().map(|x| x / norm).collect()
                }
            };
            states.push(state);
        }

        let len = 1usize << offset;
        let mut amps = Vec::with_capacity(len);
        for index in 0..len {
            let mut amp = Complex64::new(1.0, 0.0);
            for (sub, state) in layout.iter().zip(states.iter()) {
                amp *= state[sub.value_of(index) as usize];
                if amp == Complex64::new(0.0, 0.0) {
                    break;
                }
            }
            amps.push(amp);
        }

        Ok(QubitRegister {
            qubits: offset,
            amps,
            layout,
            log: GateLog::default(),
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gate_log(&self) -> &GateLog {
        &self.log
    }

    pub fn layout(&self) -> &[SubRegister] {
        &self.layout
    }

    pub fn sub(&self, name: &str) -> Result<&SubRegister> {
        self.layout
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSubRegister(name.to_string()))
    }

    /// Global index of bit `bit` within sub-register `name`.
    pub fn qubit(&self, name: &str, bit: usize) -> Result<usize> {
        let sub = self.sub(name)?;
        if bit >= sub.width {
            return Err(Error::QubitOutOfRange {
                qubit: bit,
                total: sub.width,
            });
        }
        Ok(sub.offset + bit)
    }

    /// Exact simulator amplitude at a basis index; non-destructive.
    pub fn amplitude(&self, index: usize) -> Result<Complex64> {
        self.amps
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                size: self.amps.len(),
            })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_norm(&self) {
        debug_assert!(
            (self.norm() - 1.0).abs() <= NORM_TOL,
            "gate broke normalization: norm = {}",
            self.norm()
        );
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                total: self.qubits,
            });
        }
        Ok(())
    }

    /// Marginal probability distribution over a sub-register's values.
    pub fn sub_distribution(&self, name: &str) -> Result<Vec<f64>> {
        let sub = self.sub(name)?.clone();
        let mut dist = vec![0.0; 1 << sub.width];
        for (index, amp) in self.amps.iter().enumerate() {
            dist[sub.value_of(index) as usize] += amp.norm_sqr();
        }
        Ok(dist)
    }

    /// Amplitude vector over `collect`, with every other sub-register fixed
    /// at the given basis value.
    pub fn projected_subvector(
        &self,
        fixed: &[(&str, u64)],
        collect: &str,
    ) -> Result<Vec<Complex64>> {
        let collect_sub = self.sub(collect)?.clone();
        let mut base = 0usize;
        let mut covered = collect_sub.width;
        for (name, value) in fixed {
            let sub = self.sub(name)?;
            if sub.name == collect_sub.name {
                return Err(Error::InvalidArgument(
                    "collect sub-register cannot also be fixed".into(),
                ));
            }
            if *value >= (1u64 << sub.width) {
                return Err(Error::Overflow {
                    value: *value,
                    width: sub.width as u32,
                });
            }
            base |= (*value as usize) << sub.offset;
            covered += sub.width;
        }
        if covered != self.qubits {
            return Err(Error::InvalidArgument(
                "projection must fix every sub-register except the collected one".into(),
            ));
        }
        let dim = 1usize << collect_sub.width;
        let mut out = Vec::with_capacity(dim);
        for v in 0..dim {
            out.push(self.amps[base | (v << collect_sub.offset)]);
        }
        Ok(out)
    }

    // ---- gates ------------------------------------------------------

    pub fn hadamard(&mut self, qubit: usize) -> Result<()> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a = self.amps[i];
                let b = self.amps[i | bit];
                self.amps[i] = (a + b) * inv_sqrt2;
                self.amps[i | bit] = (a - b) * inv_sqrt2;
            }
        }
        self.log.hadamard += 1;
        self.log.depth += 1;
        self.check_norm();
        Ok(())
    }

    /// H applied to every qubit of a sub-register.
    pub fn hadamard_block(&mut self, sub: &str) -> Result<()> {
        let (offset, width) = {
            let s = self.sub(sub)?;
            (s.offset, s.width)
        };
        for k in 0..width {
            self.hadamard(offset + k)?;
        }
        Ok(())
    }

    /// Phase rotation on |1> of one qubit. These only arise as classically
    /// controlled rotations, so they count in the controlled-phase family.
    pub fn phase(&mut self, qubit: usize, theta: f64) -> Result<()> {
        self.check_qubit(qubit)?;
        let bit = 1usize << qubit;
        let factor = Complex64::from_polar(1.0, theta);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *amp *= factor;
            }
        }
        self.log.controlled_phase += 1;
        self.log.depth += 1;
        self.check_norm();
        Ok(())
    }

    pub fn controlled_phase(&mut self, control: usize, target: usize, theta: f64) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::ControlEqualsTarget(control));
        }
        let bits = (1usize << control) | (1usize << target);
        let factor = Complex64::from_polar(1.0, theta);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & bits == bits {
                *amp *= factor;
            }
        }
        self.log.controlled_phase += 1;
        self.log.depth += 1;
        self.check_norm();
        Ok(())
    }

    /// Quantum Fourier transform on a sub-register: |a> -> K^{-1/2} sum_k
    /// exp(i 2 pi a k / K) |k> with K = 2^width. The bit reversal is folded
    /// into the transform as an amplitude relabel rather than swap gates, so
    /// the output matches the textbook map directly. `inverse` applies the
    /// conjugate transform.
    pub fn qft(&mut self, sub: &str, inverse: bool) -> Result<()> {
        let (offset, width) = {
            let s = self.sub(sub)?;
            (s.offset, s.width)
        };
        if !inverse {
            for i in (0..width).rev() {
                self.hadamard(offset + i)?;
                for j in (0..i).rev() {
                    let theta = std::f64::consts::TAU / (1u64 << (i - j + 1)) as f64;
                    self.controlled_phase(offset + j, offset + i, theta)?;
                }
            }
            self.bit_reverse(offset, width);
        } else {
            self.bit_reverse(offset, width);
            for i in 0..width {
                for j in 0..i {
                    let theta = -std::f64::consts::TAU / (1u64 << (i - j + 1)) as f64;
                    self.controlled_phase(offset + j, offset + i, theta)?;
                }
                self.hadamard(offset + i)?;
            }
        }
        Ok(())
    }

    /// Reverse the bit order of a sub-register by relabeling amplitudes.
    fn bit_reverse(&mut self, offset: usize, width: usize) {
        let dim = 1usize << width;
        let mask = (dim - 1) << offset;
        for i in 0..self.amps.len() {
            let v = (i & mask) >> offset;
            let rv = reverse_bits(v, width);
            if v < rv {
                let j = (i & !mask) | (rv << offset);
                self.amps.swap(i, j);
            }
        }
    }

    /// Apply `u^power` (or its adjoint) to a sub-register, conditioned on a
    /// control qubit outside it. The power is formed classically by repeated
    /// squaring and applied as one dense kernel; the whole controlled box
    /// counts as a single controlled-unitary gate.
    pub fn controlled_unitary_power(
        &mut self,
        control: usize,
        sub: &str,
        u: &Matrix,
        power: u64,
        dagger: bool,
    ) -> Result<()> {
        self.check_qubit(control)?;
        let (offset, width, mask) = {
            let s = self.sub(sub)?;
            (s.offset, s.width, s.mask())
        };
        if control >= offset && control < offset + width {
            return Err(Error::ControlEqualsTarget(control));
        }
        let dim = 1usize << width;
        if u.rows() != dim || u.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, sub-register `{sub}` needs {dim}x{dim}",
                u.rows(),
                u.cols()
            )));
        }
        let deviation = u.unitarity_deviation()?;
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }

        let powered = {
            let p = linalg::matpow(u, power)?;
            if dagger {
                p.adjoint()
            } else {
                p
            }
        };
        let w = powered.to_dense_entries();
        let control_bit = 1usize << control;

        let mut scratch = vec![Complex64::new(0.0, 0.0); dim];
        for base in 0..self.amps.len() {
            if base & mask != 0 || base & control_bit == 0 {
                continue;
            }
            for (v, s) in scratch.iter_mut().enumerate() {
                *s = self.amps[base | (v << offset)];
            }
            for r in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for (c, s) in scratch.iter().enumerate() {
                    acc += w[r * dim + c] * *s;
                }
                self.amps[base | (r << offset)] = acc;
            }
        }
        self.log.controlled_unitary += 1;
        self.log.depth += 1;
        self.check_norm();
        Ok(())
    }

    /// Controlled rotation of `target` by angle theta in the y plane:
    /// |0> -> cos(theta)|0> + sin(theta)|1>.
    pub fn controlled_ry(&mut self, control: usize, target: usize, theta: f64) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::ControlEqualsTarget(control));
        }
        let (c, s) = (theta.cos(), theta.sin());
        let control_bit = 1usize << control;
        let target_bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & control_bit != 0 && i & target_bit == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | target_bit];
                self.amps[i] = a0 * c - a1 * s;
                self.amps[i | target_bit] = a0 * s + a1 * c;
            }
        }
        self.log.rotation += 1;
        self.log.depth += 1;
        self.check_norm();
        Ok(())
    }

    /// The printed cascade gate: rotation by 2^{-l} conditioned on a control
    /// qubit. Approaches the identity as l grows.
    pub fn controlled_y_rotation(&mut self, control: usize, target: usize, l: u32) -> Result<()> {
        self.controlled_ry(control, target, 0.5f64.powi(l as i32))
    }

    /// Value-multiplexed rotation: for each basis value `v` of the selector
    /// sub-register, rotate the target qubit so its |1> amplitude gains
    /// `f(v)` (with cos = sqrt(1 - f^2)). This is the dense form of a
    /// controlled-rotation cascade over the selector bits and is logged as
    /// `width` rotation gates.
    pub fn multiplexed_rotation(
        &mut self,
        selector: &str,
        target: usize,
        f: &dyn Fn(u64) -> f64,
    ) -> Result<()> {
        self.check_qubit(target)?;
        let (sel, width) = {
            let s = self.sub(selector)?;
            (s.clone(), s.width)
        };
        if target >= sel.offset && target < sel.offset + sel.width {
            return Err(Error::ControlEqualsTarget(target));
        }
        let target_bit = 1usize << target;
        for i in 0..self.amps.len() {
            if i & target_bit != 0 {
                continue;
            }
            let s = f(sel.value_of(i));
            if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&s) {
                return Err(Error::InvalidArgument(format!(
                    "rotation amplitude {s} outside [-1, 1]"
                )));
            }
            let s = s.clamp(-1.0, 1.0);
            if s == 0.0 {
                continue;
            }
            let c = (1.0 - s * s).sqrt();
            let a0 = self.amps[i];
            let a1 = self.amps[i | target_bit];
            self.amps[i] = a0 * c - a1 * s;
            self.amps[i | target_bit] = a0 * s + a1 * c;
        }
        self.log.rotation += width as u64;
        self.log.depth += width as u64;
        self.check_norm();
        Ok(())
    }
}

fn reverse_bits(v: usize, width: usize) -> usize {
    let mut out = 0usize;
    for k in 0..width {
        if v & (1 << k) != 0 {
            out |= 1 << (width - 1 - k);
        }
    }
    out
}

/// Fidelity |<a|b>| between two amplitude vectors; global phase drops out.
pub fn state_fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm()
}

/// Exponentiate a hermitian matrix: e^{i * phase_scale * A}, rebuilt from
/// the classical eigendecomposition. The result is checked unitary.
pub fn unitary_from_hermitian(a: &Matrix, phase_scale: f64) -> Result<Matrix> {
    if !a.is_hermitian() {
        let dev = if a.is_square() {
            a.sub(&a.adjoint())?.max_abs()
        } else {
            f64::INFINITY
        };
        return Err(Error::NotHermitian { deviation: dev });
    }
    let eig = linalg::eig_hermitian(a)?;
    let n = a.rows();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (lambda, vec) in eig.eigenvalues.iter().zip(eig.eigenvectors.iter()) {
        let phase = Complex64::from_polar(1.0, phase_scale * lambda);
        for r in 0..n {
            for c in 0..n {
                entries[r * n + c] += phase * vec[r] * vec[c].conj();
            }
        }
    }
    let u = Matrix::dense(n, n, entries)?;
    let deviation = u.unitarity_deviation()?;
    if deviation > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis_register(widths: &[(&str, usize)]) -> QubitRegister {
        let spec: Vec<(&str, usize, SubState)> = widths
            .iter()
            .map(|(n, w)| (*n, *w, SubState::Basis(0)))
            .collect();
        QubitRegister::prepare(&spec).unwrap()
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let mut reg = basis_register(&[("q", 1)]);
        reg.hadamard(0).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((reg.amplitude(0).unwrap() - c(s, 0.0)).norm() < 1e-12);
        assert!((reg.amplitude(1).unwrap() - c(s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn hadamard_block_uniform_and_self_inverse() {
        let mut reg = basis_register(&[("q", 2)]);
        reg.hadamard_block("q").unwrap();
        for i in 0..4 {
            assert!((reg.amplitude(i).unwrap() - c(0.5, 0.0)).norm() < 1e-12);
        }
        reg.hadamard_block("q").unwrap();
        assert!((reg.amplitude(0).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(reg.gate_log().hadamard, 4);
    }

    #[test]
    fn unknown_sub_register_is_an_error() {
        let mut reg = basis_register(&[("q", 1)]);
        assert!(matches!(
            reg.hadamard_block("nope"),
            Err(Error::UnknownSubRegister(_))
        ));
    }

    #[test]
    fn qft_of_zero_is_uniform() {
        let mut reg = basis_register(&[("q", 3)]);
        reg.qft("q", false).unwrap();
        let expect = 1.0 / 8.0f64.sqrt();
        for i in 0..8 {
            assert!((reg.amplitude(i).unwrap() - c(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn qft_matches_dft_row_on_basis_state() {
        // 2-qubit |1>: amplitudes (1, i, -1, -i)/2
        let mut reg = QubitRegister::prepare(&[("q", 2, SubState::Basis(1))]).unwrap();
        reg.qft("q", false).unwrap();
        let expect = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        for (i, e) in expect.iter().enumerate() {
            assert!(
                (reg.amplitude(i).unwrap() - e).norm() < 1e-12,
                "index {i}: {} vs {e}",
                reg.amplitude(i).unwrap()
            );
        }
    }

    #[test]
    fn qft_inverse_roundtrip_on_random_state() {
        let amps = crate::fixtures::random_unit_vector(77, 16);
        let mut reg =
            QubitRegister::prepare(&[("q", 4, SubState::Amplitudes(&amps))]).unwrap();
        reg.qft("q", false).unwrap();
        reg.qft("q", true).unwrap();
        let fid = state_fidelity(reg.amplitudes(), &amps);
        assert!(fid >= 1.0 - 1e-10, "fidelity {fid}");
        for (got, want) in reg.amplitudes().iter().zip(amps.iter()) {
            assert!((got - want).norm() < 1e-10);
        }
    }

    #[test]
    fn qft_gate_counts_match_closed_form() {
        for m in 1..=6usize {
            let mut reg = basis_register(&[("q", m)]);
            reg.qft("q", false).unwrap();
            assert_eq!(reg.gate_log().hadamard, m as u64);
            assert_eq!(
                reg.gate_log().controlled_phase,
                (m * (m - 1) / 2) as u64
            );
            assert_eq!(reg.gate_log().swap, 0);
        }
    }

    #[test]
    fn controlled_unitary_respects_control() {
        let u = Matrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(); // X
        // control |0>: nothing happens
        let mut reg = basis_register(&[("sys", 1), ("ctl", 1)]);
        let before = reg.amplitudes().to_vec();
        reg.controlled_unitary_power(reg.qubit("ctl", 0).unwrap(), "sys", &u, 1, false)
            .unwrap();
        assert_eq!(reg.amplitudes(), &before[..]);

        // control |1>: X flips the system bit
        let mut reg = QubitRegister::prepare(&[
            ("sys", 1, SubState::Basis(0)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        reg.controlled_unitary_power(reg.qubit("ctl", 0).unwrap(), "sys", &u, 1, false)
            .unwrap();
        // now sys=1, ctl=1 -> index 0b11
        assert!((reg.amplitude(0b11).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn controlled_identity_any_power_is_noop() {
        let mut reg = QubitRegister::prepare(&[
            ("sys", 2, SubState::Basis(2)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        let before = reg.amplitudes().to_vec();
        reg.controlled_unitary_power(
            reg.qubit("ctl", 0).unwrap(),
            "sys",
            &Matrix::identity(4),
            13,
            false,
        )
        .unwrap();
        assert_eq!(reg.amplitudes(), &before[..]);
    }

    #[test]
    fn controlled_diagonal_phase_power() {
        // u = diag(1, e^{i pi/2}), power 2, control and target |1>:
        // the |1> system amplitude picks up e^{i pi} = -1.
        let u = Matrix::dense(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2)],
        )
        .unwrap();
        let mut reg = QubitRegister::prepare(&[
            ("sys", 1, SubState::Basis(1)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        reg.controlled_unitary_power(reg.qubit("ctl", 0).unwrap(), "sys", &u, 2, false)
            .unwrap();
        assert!((reg.amplitude(0b11).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn controlled_unitary_power_equals_iterated_squaring() {
        let a = crate::fixtures::random_hermitian(5, 4, 1.0);
        let u = unitary_from_hermitian(&a, 0.7).unwrap();
        let amps = crate::fixtures::random_unit_vector(6, 4);

        let mut direct = QubitRegister::prepare(&[
            ("sys", 2, SubState::Amplitudes(&amps)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        direct
            .controlled_unitary_power(direct.qubit("ctl", 0).unwrap(), "sys", &u, 8, false)
            .unwrap();

        let u8th = linalg::matpow(&u, 8).unwrap();
        let mut squared = QubitRegister::prepare(&[
            ("sys", 2, SubState::Amplitudes(&amps)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        squared
            .controlled_unitary_power(squared.qubit("ctl", 0).unwrap(), "sys", &u8th, 1, false)
            .unwrap();

        for (x, y) in direct.amplitudes().iter().zip(squared.amplitudes().iter()) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_unitary_matrix() {
        let bad = Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 2.0]]).unwrap();
        let mut reg = basis_register(&[("sys", 1), ("ctl", 1)]);
        assert!(matches!(
            reg.controlled_unitary_power(1, "sys", &bad, 1, false),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn controlled_ry_identity_when_control_clear() {
        let mut reg = basis_register(&[("t", 1), ("ctl", 1)]);
        reg.controlled_ry(1, 0, 0.3).unwrap();
        assert!((reg.amplitude(0).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn controlled_y_rotation_large_l_approaches_identity() {
        let mut reg = QubitRegister::prepare(&[
            ("t", 1, SubState::Basis(0)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        reg.controlled_y_rotation(1, 0, 30).unwrap();
        let drift = (reg.amplitude(0b10).unwrap() - c(1.0, 0.0)).norm();
        assert!(drift <= 2.0f64.powi(-30) + 1e-15);
    }

    #[test]
    fn controlled_ry_angles_compose() {
        let mut once = QubitRegister::prepare(&[
            ("t", 1, SubState::Basis(0)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        once.controlled_ry(1, 0, 0.75).unwrap();

        let mut twice = QubitRegister::prepare(&[
            ("t", 1, SubState::Basis(0)),
            ("ctl", 1, SubState::Basis(1)),
        ])
        .unwrap();
        twice.controlled_ry(1, 0, 0.5).unwrap();
        twice.controlled_ry(1, 0, 0.25).unwrap();

        for (x, y) in once.amplitudes().iter().zip(twice.amplitudes().iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn control_equals_target_rejected() {
        let mut reg = basis_register(&[("q", 2)]);
        assert!(matches!(
            reg.controlled_ry(1, 1, 0.1),
            Err(Error::ControlEqualsTarget(1))
        ));
        assert!(matches!(
            reg.controlled_phase(0, 0, 0.1),
            Err(Error::ControlEqualsTarget(0))
        ));
    }

    #[test]
    fn read_amplitude_basics() {
        let reg = basis_register(&[("q", 2)]);
        assert_eq!(reg.amplitude(0).unwrap(), c(1.0, 0.0));
        assert_eq!(reg.amplitude(1).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            reg.amplitude(4),
            Err(Error::IndexOutOfRange { .. })
        ));
        let mut reg = basis_register(&[("q", 1)]);
        reg.hadamard(0).unwrap();
        assert!(
            (reg.amplitude(1).unwrap().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12
        );
    }

    #[test]
    fn unitary_from_hermitian_examples() {
        // A = 0 -> identity
        let u = unitary_from_hermitian(&Matrix::zeros(2, 2), 1.0).unwrap();
        assert!(u.sub(&Matrix::identity(2)).unwrap().max_abs() < 1e-12);

        // A = I, scale pi -> e^{i pi} I
        let u = unitary_from_hermitian(&Matrix::identity(2), std::f64::consts::PI).unwrap();
        assert!(u.sub(&Matrix::identity(2).scale(c(-1.0, 0.0))).unwrap().max_abs() < 1e-10);

        // A = [[2,1],[1,2]] at scale 2 pi / 4: eigenphases 3/4 and 1/4 turns
        let a = Matrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let scale = std::f64::consts::TAU / 4.0;
        let u = unitary_from_hermitian(&a, scale).unwrap();
        let eig = linalg::eig_hermitian(&a).unwrap();
        let mut expect = vec![c(0.0, 0.0); 4];
        for (lambda, vec) in eig.eigenvalues.iter().zip(eig.eigenvectors.iter()) {
            let phase = Complex64::from_polar(1.0, scale * lambda);
            for r in 0..2 {
                for col in 0..2 {
                    expect[r * 2 + col] += phase * vec[r] * vec[col].conj();
                }
            }
        }
        let em = Matrix::dense(2, 2, expect).unwrap();
        assert!(u.sub(&em).unwrap().max_abs() < 1e-10);
        assert!(u.unitarity_deviation().unwrap() < 1e-10);
    }

    #[test]
    fn unitary_from_hermitian_rejects_non_hermitian() {
        let a = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            unitary_from_hermitian(&a, 1.0),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn multiplexed_rotation_writes_selector_value() {
        // selector in |2> of a 2-qubit sub: target |1> amplitude = f(2)
        let mut reg = QubitRegister::prepare(&[
            ("sel", 2, SubState::Basis(2)),
            ("t", 1, SubState::Basis(0)),
        ])
        .unwrap();
        reg.multiplexed_rotation("sel", reg.qubit("t", 0).unwrap(), &|v| v as f64 / 4.0)
            .unwrap();
        // index: sel=2, t=1 -> 0b110
        let got = reg.amplitude(0b110).unwrap();
        assert!((got - c(0.5, 0.0)).norm() < 1e-12);
        let got0 = reg.amplitude(0b010).unwrap();
        assert!((got0 - c(0.75f64.sqrt(), 0.0)).norm() < 1e-12);
        assert_eq!(reg.gate_log().rotation, 2);
    }

    #[test]
    fn norm_preserved_across_gate_mix() {
        let amps = crate::fixtures::random_unit_vector(11, 8);
        let mut reg =
            QubitRegister::prepare(&[("q", 3, SubState::Amplitudes(&amps))]).unwrap();
        reg.hadamard(0).unwrap();
        reg.controlled_phase(0, 2, 0.9).unwrap();
        reg.qft("q", false).unwrap();
        reg.controlled_ry(0, 1, 0.4).unwrap();
        reg.qft("q", true).unwrap();
        assert!((reg.norm() - 1.0).abs() < 1e-10);
    }
}
