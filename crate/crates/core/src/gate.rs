use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{structural, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    RX,
    RY,
    RZ,
    H,
    I,
    CNOT,
}

impl GateKind {
    pub fn is_parameterized(self) -> bool {
        matches!(self, GateKind::RX | GateKind::RY | GateKind::RZ)
    }

    pub fn is_single_qubit(self) -> bool {
        self != GateKind::CNOT
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::H => "H",
            GateKind::I => "I",
            GateKind::CNOT => "CNOT",
        }
    }

    pub fn parse(s: &str) -> Option<GateKind> {
        match s.trim().to_ascii_uppercase().as_str() {
            "RX" => Some(GateKind::RX),
            "RY" => Some(GateKind::RY),
            "RZ" => Some(GateKind::RZ),
            "H" => Some(GateKind::H),
            "I" => Some(GateKind::I),
            "CNOT" | "CX" => Some(GateKind::CNOT),
            _ => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One placed gate. `control` is set only for CNOT, `param_slot` only for the
/// rotations; the slot indexes into the circuit's parameter vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param_slot: Option<usize>,
}

impl Gate {
    pub fn rotation(kind: GateKind, target: usize, slot: usize) -> Gate {
        debug_assert!(kind.is_parameterized());
        Gate {
            kind,
            target,
            control: None,
            param_slot: Some(slot),
        }
    }

    pub fn rx(target: usize, slot: usize) -> Gate {
        Gate::rotation(GateKind::RX, target, slot)
    }

    pub fn ry(target: usize, slot: usize) -> Gate {
        Gate::rotation(GateKind::RY, target, slot)
    }

    pub fn rz(target: usize, slot: usize) -> Gate {
        Gate::rotation(GateKind::RZ, target, slot)
    }

    pub fn h(target: usize) -> Gate {
        Gate {
            kind: GateKind::H,
            target,
            control: None,
            param_slot: None,
        }
    }

    pub fn id(target: usize) -> Gate {
        Gate {
            kind: GateKind::I,
            target,
            control: None,
            param_slot: None,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate {
            kind: GateKind::CNOT,
            target,
            control: Some(control),
            param_slot: None,
        }
    }

    /// Qubits the gate acts on: the target, then the control if any.
    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        std::iter::once(self.target).chain(self.control)
    }

    /// Checks the kind/field consistency and that every index fits `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if self.target >= n_qubits {
            return Err(structural(format!(
                "{} target {} out of range for {} qubits",
                self.kind, self.target, n_qubits
            )));
        }
        match (self.kind, self.control) {
            (GateKind::CNOT, Some(c)) => {
                if c >= n_qubits {
                    return Err(structural(format!(
                        "CNOT control {c} out of range for {n_qubits} qubits"
                    )));
                }
                if c == self.target {
                    return Err(structural(format!("CNOT control equals target ({c})")));
                }
            }
            (GateKind::CNOT, None) => return Err(structural("CNOT without control")),
            (k, Some(_)) => return Err(structural(format!("{k} gate carries a control"))),
            _ => {}
        }
        if self.kind.is_parameterized() != self.param_slot.is_some() {
            return Err(structural(format!(
                "{} gate on qubit {} has inconsistent parameter slot",
                self.kind, self.target
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.control, self.param_slot) {
            (Some(c), _) => write!(f, "CNOT({c}->{})", self.target),
            (None, Some(s)) => write!(f, "{}(θ{s}) q{}", self.kind, self.target),
            (None, None) => write!(f, "{} q{}", self.kind, self.target),
        }
    }
}
