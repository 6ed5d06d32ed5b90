use std::fmt;

use serde::{Deserialize, Serialize};

/// Whether a coordinate belongs to a vector `u_j` or to a covector `u*_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Vector,
    Covector,
}

/// A symbolic coordinate `u[j][i]` (vector) or `ud[j][i]` (covector).
///
/// The derived order compares the point index first, then the kind, then the
/// coordinate index. Monomial ordering is built on top of this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VariableId {
    pub point: u16,
    pub kind: Kind,
    pub coord: u16,
}

impl VariableId {
    pub fn vector(point: usize, coord: usize) -> Self {
        VariableId {
            point: point as u16,
            kind: Kind::Vector,
            coord: coord as u16,
        }
    }

    pub fn covector(point: usize, coord: usize) -> Self {
        VariableId {
            point: point as u16,
            kind: Kind::Covector,
            coord: coord as u16,
        }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Vector => write!(f, "u[{}][{}]", self.point, self.coord),
            Kind::Covector => write!(f, "ud[{}][{}]", self.point, self.coord),
        }
    }
}
