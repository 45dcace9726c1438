//! Gate alphabets for the genetic search.
//!
//! CNOT is part of every set. The nine labelled sets `A`–`I` are:
//!
//! | set | single-qubit gates  | CNOT     | initial H layer |
//! |-----|---------------------|----------|-----------------|
//! | A   | RX RY H             | adjacent | no              |
//! | B   | RX RY H I           | adjacent | no              |
//! | C   | RX RY H I           | any pair | no              |
//! | D   | RY RZ H I           | any pair | no              |
//! | E   | RY RZ I             | any pair | no              |
//! | F   | RX RY RZ I          | any pair | yes             |
//! | G   | RX RY RZ H I        | any pair | no              |
//! | H   | RX RY H             | adjacent | yes             |
//! | I   | RX RY RZ I          | any pair | no              |

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::gate::GateKind;
use GateKind::*;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateSet {
    pub id: String,
    pub single_qubit_gates: Vec<GateKind>,
    pub cnot_adjacent_only: bool,
    pub initial_h_layer: bool,
}

pub const TABLE_IDS: [char; 9] = ['A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I'];

impl GateSet {
    /// One of the labelled sets `A`–`I`.
    pub fn table(id: char) -> Option<GateSet> {
        let (singles, adjacent, initial_h): (&[GateKind], bool, bool) =
            match id.to_ascii_uppercase() {
                'A' => (&[RX, RY, H], true, false),
                'B' => (&[RX, RY, H, I], true, false),
                'C' => (&[RX, RY, H, I], false, false),
                'D' => (&[RY, RZ, H, I], false, false),
                'E' => (&[RY, RZ, I], false, false),
                'F' => (&[RX, RY, RZ, I], false, true),
                'G' => (&[RX, RY, RZ, H, I], false, false),
                'H' => (&[RX, RY, H], true, true),
                'I' => (&[RX, RY, RZ, I], false, false),
                _ => return None,
            };
        Some(GateSet {
            id: id.to_ascii_uppercase().to_string(),
            single_qubit_gates: singles.to_vec(),
            cnot_adjacent_only: adjacent,
            initial_h_layer: initial_h,
        })
    }

    pub fn all_table_sets() -> Vec<GateSet> {
        TABLE_IDS
            .iter()
            .filter_map(|&c| GateSet::table(c))
            .collect()
    }

    /// Parses a table label (`"A"`) or a custom list such as
    /// `"RX,RY,RZ,CNOT*,+H"`: `CNOT*` restricts CNOT to neighbours and `+H`
    /// requests the initial Hadamard layer. CNOT is always included.
    pub fn parse(spec: &str) -> Result<GateSet> {
        let spec = spec.trim();
        let mut chars = spec.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            return GateSet::table(c)
                .ok_or_else(|| Error::Parse(format!("unknown gate set '{spec}' (expected A-I)")));
        }
        let mut singles = Vec::new();
        let mut adjacent = false;
        let mut initial_h = false;
        for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token.to_ascii_uppercase().as_str() {
                "CNOT*" | "CX*" => adjacent = true,
                "CNOT" | "CX" => {}
                "+H" => initial_h = true,
                other => {
                    let kind = GateKind::parse(other)
                        .ok_or_else(|| Error::Parse(format!("unknown gate '{token}'")))?;
                    if !singles.contains(&kind) {
                        singles.push(kind);
                    }
                }
            }
        }
        if singles.is_empty() {
            return Err(Error::Parse(format!(
                "gate set '{spec}' has no single-qubit gates"
            )));
        }
        singles.sort();
        Ok(GateSet {
            id: "custom".into(),
            single_qubit_gates: singles,
            cnot_adjacent_only: adjacent,
            initial_h_layer: initial_h,
        })
    }

    pub fn allows(&self, kind: GateKind) -> bool {
        kind == CNOT || self.single_qubit_gates.contains(&kind)
    }

    pub fn cnot_allowed_between(&self, a: usize, b: usize) -> bool {
        a != b && (!self.cnot_adjacent_only || a.abs_diff(b) == 1)
    }
}

impl fmt::Display for GateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.single_qubit_gates.iter().map(|g| g.name()).collect();
        write!(
            f,
            "{}{} {{{}, CNOT{}}}",
            self.id,
            if self.initial_h_layer { "†" } else { "" },
            names.join(", "),
            if self.cnot_adjacent_only { "*" } else { "" }
        )
    }
}
