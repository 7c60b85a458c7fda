//! Six-vertex weight packs and their 4×4 matrix form.
//!
//! The tensor basis is ordered `(⊕⊕, ⊕⊖, ⊖⊕, ⊖⊖)`. A pack is placed as
//!
//! ```text
//! [a1  .   .   . ]
//! [ .  b1  c1  . ]
//! [ .  c2  b2  . ]
//! [ .  .   .   a2]
//! ```
//!
//! Packs carry no convention of their own; how a matrix acts on a triple
//! tensor product is decided in [`crate::ybe`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{AlgError, ExprMatrix, Generator, LaurentExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn is_minus(self) -> bool {
        self == Spin::Minus
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Plus => '+',
            Spin::Minus => '-',
        }
    }
}

#[derive(Debug, Error)]
pub enum SixVertexError {
    #[error("matrix is not of six-vertex form: entry ({row},{col}) is {value}")]
    NotSixVertex { row: usize, col: usize, value: String },
    #[error("expected a 4x4 matrix, got {0}x{1}")]
    Shape(usize, usize),
    #[error("unknown weight table `{0}`")]
    UnknownKind(String),
    #[error("table {kind} takes {expected} row parameter(s), got {got}")]
    Arity { kind: TableKind, expected: usize, got: usize },
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// The six Boltzmann weights of one vertex type.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SixVertexWeights {
    pub a1: LaurentExpr,
    pub a2: LaurentExpr,
    pub b1: LaurentExpr,
    pub b2: LaurentExpr,
    pub c1: LaurentExpr,
    pub c2: LaurentExpr,
}

pub const WEIGHT_NAMES: [&str; 6] = ["a1", "a2", "b1", "b2", "c1", "c2"];

impl SixVertexWeights {
    pub fn new(
        a1: LaurentExpr,
        a2: LaurentExpr,
        b1: LaurentExpr,
        b2: LaurentExpr,
        c1: LaurentExpr,
        c2: LaurentExpr,
    ) -> SixVertexWeights {
        SixVertexWeights { a1, a2, b1, b2, c1, c2 }
    }

    pub fn from_array([a1, a2, b1, b2, c1, c2]: [LaurentExpr; 6]) -> SixVertexWeights {
        SixVertexWeights { a1, a2, b1, b2, c1, c2 }
    }

    pub fn to_array(&self) -> [LaurentExpr; 6] {
        [self.a1.clone(), self.a2.clone(), self.b1.clone(), self.b2.clone(), self.c1.clone(), self.c2.clone()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &LaurentExpr> {
        [&self.a1, &self.a2, &self.b1, &self.b2, &self.c1, &self.c2].into_iter()
    }

    pub fn ones() -> SixVertexWeights {
        Self::from_array(std::array::from_fn(|_| LaurentExpr::one()))
    }

    pub fn map(&self, f: impl Fn(&LaurentExpr) -> LaurentExpr) -> SixVertexWeights {
        Self::from_array(self.to_array().map(|e| f(&e)))
    }

    pub fn try_map(
        &self,
        f: impl Fn(&LaurentExpr) -> Result<LaurentExpr, AlgError>,
    ) -> Result<SixVertexWeights, AlgError> {
        let [a1, a2, b1, b2, c1, c2] = self.to_array();
        Ok(SixVertexWeights::new(f(&a1)?, f(&a2)?, f(&b1)?, f(&b2)?, f(&c1)?, f(&c2)?))
    }

    pub fn substitute(&self, map: &HashMap<Generator, LaurentExpr>) -> Result<SixVertexWeights, AlgError> {
        self.try_map(|e| e.substitute(map))
    }

    pub fn scale(&self, c: &LaurentExpr) -> SixVertexWeights {
        self.map(|e| e * c)
    }

    pub fn add(&self, other: &SixVertexWeights) -> SixVertexWeights {
        let a = self.to_array();
        let b = other.to_array();
        Self::from_array(std::array::from_fn(|i| &a[i] + &b[i]))
    }
}

impl fmt::Display for SixVertexWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, e)) in WEIGHT_NAMES.iter().zip(self.iter()).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n} = {e}")?;
        }
        Ok(())
    }
}

/// The JSON interchange form of a weight pack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPack {
    pub kind: String,
    #[serde(flatten)]
    pub weights: SixVertexWeights,
}

/// Matrix positions of (a1, a2, b1, b2, c1, c2).
const LAYOUT: [(usize, usize); 6] = [(0, 0), (3, 3), (1, 1), (2, 2), (1, 2), (2, 1)];

/// A 4×4 matrix known to vanish outside the six-vertex layout.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexMatrix(ExprMatrix);

impl VertexMatrix {
    pub fn as_matrix(&self) -> &ExprMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ExprMatrix {
        self.0
    }

    pub fn identity() -> VertexMatrix {
        VertexMatrix(ExprMatrix::identity(4))
    }

    pub fn weights(&self) -> SixVertexWeights {
        SixVertexWeights::from_array(LAYOUT.map(|(i, j)| self.0.get(i, j).clone()))
    }

    pub fn substitute(&self, map: &HashMap<Generator, LaurentExpr>) -> Result<VertexMatrix, AlgError> {
        Ok(VertexMatrix(self.0.substitute(map)?))
    }
}

impl TryFrom<ExprMatrix> for VertexMatrix {
    type Error = SixVertexError;
    fn try_from(m: ExprMatrix) -> Result<Self, Self::Error> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(SixVertexError::Shape(m.rows(), m.cols()));
        }
        for (i, j, e) in m.nonzero_entries() {
            if !LAYOUT.contains(&(i, j)) {
                return Err(SixVertexError::NotSixVertex { row: i, col: j, value: e.to_string() });
            }
        }
        Ok(VertexMatrix(m))
    }
}

impl fmt::Display for VertexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn weights_to_matrix(w: &SixVertexWeights) -> VertexMatrix {
    let vals = w.to_array();
    VertexMatrix(ExprMatrix::from_fn(4, 4, |i, j| {
        LAYOUT.iter().position(|&p| p == (i, j)).map_or_else(LaurentExpr::zero, |k| vals[k].clone())
    }))
}

pub fn matrix_to_weights(m: &ExprMatrix) -> Result<SixVertexWeights, SixVertexError> {
    Ok(VertexMatrix::try_from(m.clone())?.weights())
}

/// `a1·a2 + b1·b2 − c1·c2`.
pub fn free_fermion_residual(w: &SixVertexWeights) -> LaurentExpr {
    &(&(&w.a1 * &w.a2) + &(&w.b1 * &w.b2)) - &(&w.c1 * &w.c2)
}

/// `b2³ + a1b1c1 + a2b2c1 + a2b1c2 + a1b2c2 − 2a1a2b1 − (a1² + a2² + b1²)b2`.
pub fn cubic_residual(w: &SixVertexWeights) -> LaurentExpr {
    let SixVertexWeights { a1, a2, b1, b2, c1, c2 } = w;
    let pos = [b2 * b2 * b2, a1 * b1 * c1, a2 * b2 * c1, a2 * b1 * c2, a1 * b2 * c2];
    let two = LaurentExpr::int(2);
    let neg = [&two * a1 * a2 * b1, &(&(a1 * a1) + &(a2 * a2) + &(b1 * b1)) * b2];
    &pos.iter().sum::<LaurentExpr>() - &neg.iter().sum::<LaurentExpr>()
}

/// Rows of the two weight tables of the Tokuyama model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableKind {
    TGamma,
    TDelta,
    RGammaGamma,
    RDeltaDelta,
    RGammaDelta,
    RDeltaGamma,
}

impl TableKind {
    pub const ALL: [TableKind; 6] = [
        TableKind::TGamma,
        TableKind::TDelta,
        TableKind::RGammaGamma,
        TableKind::RDeltaDelta,
        TableKind::RGammaDelta,
        TableKind::RDeltaGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::TGamma => "T_GAMMA",
            TableKind::TDelta => "T_DELTA",
            TableKind::RGammaGamma => "R_GG",
            TableKind::RDeltaDelta => "R_DD",
            TableKind::RGammaDelta => "R_GD",
            TableKind::RDeltaGamma => "R_DG",
        }
    }

    /// Number of row parameters: one for T-vertices, two for R-vertices.
    pub fn arity(self) -> usize {
        match self {
            TableKind::TGamma | TableKind::TDelta => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableKind {
    type Err = SixVertexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SixVertexError::UnknownKind(s.to_string()))
    }
}

fn sv() -> LaurentExpr {
    LaurentExpr::var(Generator::SQRT_V)
}

/// `v = sqrt_v²`.
pub fn v() -> LaurentExpr {
    &sv() * &sv()
}

/// Weights of a table row. `z` holds `[z]` for T-rows and `[z1, z2]` for R-rows.
pub fn table_weights(kind: TableKind, z: &[LaurentExpr]) -> Result<SixVertexWeights, SixVertexError> {
    if z.len() != kind.arity() {
        return Err(SixVertexError::Arity { kind, expected: kind.arity(), got: z.len() });
    }
    let one = LaurentExpr::one();
    let s = sv();
    let v = v();
    let one_minus_v = &one - &v;
    let w = match kind {
        TableKind::TGamma => {
            let z = &z[0];
            SixVertexWeights::new(one.clone(), z.clone(), -&s, &s * z, &one_minus_v * z, one)
        }
        TableKind::TDelta => {
            let z = &z[0];
            let inv_s = s.pow(-1)?;
            SixVertexWeights::new(one.clone(), -(&v * z), inv_s, &s * z, &one_minus_v * z, one)
        }
        _ => {
            let (z1, z2) = (&z[0], &z[1]);
            let d12 = z1 - &(&v * z2);
            let d21 = z2 - &(&v * z1);
            let diff = z1 - z2;
            let b2 = &s * &diff;
            let inv_s = s.pow(-1)?;
            let v2 = &v * &v;
            let (a1, a2, b1) = match kind {
                TableKind::RGammaGamma => (d21, d12, &s * &diff),
                TableKind::RDeltaDelta => (d12, d21, &s * &diff),
                TableKind::RGammaDelta => (d12.clone(), d12, &inv_s * &(&(&v2 * z2) - z1)),
                TableKind::RDeltaGamma => (d21.clone(), d21, &inv_s * &(z2 - &(&v2 * z1))),
                _ => unreachable!(),
            };
            SixVertexWeights::new(a1, a2, b1, b2, &one_minus_v * z1, &one_minus_v * z2)
        }
    };
    Ok(w)
}

/// [`table_weights`] with the default row parameters `z` or `z_1, z_2`.
pub fn table_weights_default(kind: TableKind) -> SixVertexWeights {
    let z = match kind.arity() {
        1 => vec![LaurentExpr::var(Generator::Z)],
        _ => vec![LaurentExpr::var(Generator::z(1)), LaurentExpr::var(Generator::z(2))],
    };
    table_weights(kind, &z).expect("arity matches")
}
