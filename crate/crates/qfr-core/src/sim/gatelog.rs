use serde::Serialize;

/// Per-family gate counters accumulated while a register evolves.
///
/// `depth` is a sequential upper bound: every elementary gate application
/// adds one unit, with no attempt to pack commuting gates into layers.
#[derive(Debug, Default, Clone, PartialEq, Eq, Serialize)]
pub struct GateLog {
    pub hadamard: u64,
    pub controlled_phase: u64,
    pub controlled_unitary: u64,
    pub rotation: u64,
    pub swap: u64,
    pub depth: u64,
}

impl GateLog {
    pub fn total(&self) -> u64 {
        self.hadamard + self.controlled_phase + self.controlled_unitary + self.rotation + self.swap
    }

    pub fn merge(&mut self, other: &GateLog) {
        self.hadamard += other.hadamard;
        self.controlled_phase += other.controlled_phase;
        self.controlled_unitary += other.controlled_unitary;
        self.rotation += other.rotation;
        self.swap += other.swap;
        self.depth += other.depth;
    }
}
