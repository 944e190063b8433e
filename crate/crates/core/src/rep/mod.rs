//! Representations of the doubled line and tadpole quivers.
//!
//! Vertices are `1..=n` in the public interface and `0..n` internally. Edge
//! `hᵢ` points from vertex `i` to `i+1` for `i < n`; the tadpole adds the
//! loop `h_n` at vertex `n`. Each edge carries the pair `(B, B̄)` with
//! `B : V_in → V_out` and `B̄ : V_out → V_in`.

mod build;
mod jordan;
mod json;
mod verify;

use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::partition::DimensionVector;
use crate::scalar::Field;

pub use build::{
    build_an_point, build_h_point, build_tn_point, loop_pair_search, sample_strict_upper_pair,
    strict_upper_shift,
};
pub use jordan::{is_nilpotent_set, jordan_basis, jordan_matrix, jordan_type};
pub use json::RepJsonError;
pub use verify::{verify_point, VerifyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("local nilpotency test needs μ(B) = 0, but μ is nonzero at vertex {0}")]
    MomentMapNonzero(usize),
    #[error("{0}")]
    Inadmissible(String),
    #[error("pairing {index} is not a proper pairing of {lambda} and {mu}")]
    InvalidPairing {
        index: usize,
        lambda: String,
        mu: String,
    },
    #[error("the loop pair is not jointly nilpotent")]
    LoopNotNilpotent,
    #[error("loop commutator has Jordan type {found}, expected {expected}")]
    CommutatorType { expected: String, found: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuiverKind {
    /// The line quiver `A_n`.
    Line,
    /// The tadpole quiver `T_n`: `A_n` with a loop at the last vertex.
    Tadpole,
}

impl QuiverKind {
    pub fn letter(self) -> &'static str {
        match self {
            Self::Line => "A",
            Self::Tadpole => "T",
        }
    }
}

impl fmt::Display for QuiverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// A quiver of one of the two kinds, with its edges as 1-based
/// `(in, out)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverShape {
    pub kind: QuiverKind,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl QuiverShape {
    pub fn new(kind: QuiverKind, n: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        if kind == QuiverKind::Tadpole {
            edges.push((n, n));
        }
        Self { kind, n, edges }
    }

    pub fn line(n: usize) -> Self {
        Self::new(QuiverKind::Line, n)
    }

    pub fn tadpole(n: usize) -> Self {
        Self::new(QuiverKind::Tadpole, n)
    }

    /// 0-based index of the loop edge.
    pub fn loop_edge(&self) -> Option<usize> {
        (self.kind == QuiverKind::Tadpole).then_some(self.n - 1)
    }
}

/// A point `B` of the representation space of the doubled quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep<F> {
    shape: QuiverShape,
    v: DimensionVector,
    /// `(B_h, B_h̄)` per edge, in edge order.
    maps: Vec<(Matrix<F>, Matrix<F>)>,
}

/// One operator per vertex (moment map values or the stratifying
/// operators `Aᵢ`), indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOperators<F> {
    pub ops: Vec<Matrix<F>>,
}

impl<F: Field> VertexOperators<F> {
    /// 0-based index of the first nonzero operator.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.ops.iter().position(|m| !m.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

impl<F: Field> QuiverRep<F> {
    pub fn new(
        kind: QuiverKind,
        v: DimensionVector,
        maps: Vec<(Matrix<F>, Matrix<F>)>,
    ) -> Result<Self, RepError> {
        let shape = QuiverShape::new(kind, v.len());
        if maps.len() != shape.edges.len() {
            return Err(RepError::Shape(format!(
                "{} edges need {} map pairs, got {}",
                kind,
                shape.edges.len(),
                maps.len()
            )));
        }
        for (e, ((i, o), (b, bb))) in shape.edges.iter().zip(&maps).enumerate() {
            let (di, dout) = (v.dims()[i - 1], v.dims()[o - 1]);
            if b.shape() != (dout, di) || bb.shape() != (di, dout) {
                return Err(RepError::Shape(format!(
                    "edge {}: B is {:?} and B̄ is {:?}, expected {:?} and {:?}",
                    e + 1,
                    b.shape(),
                    bb.shape(),
                    (dout, di),
                    (di, dout)
                )));
            }
        }
        Ok(Self { shape, v, maps })
    }

    pub fn zero(kind: QuiverKind, v: DimensionVector) -> Self {
        let shape = QuiverShape::new(kind, v.len());
        let maps = shape
            .edges
            .iter()
            .map(|&(i, o)| {
                let (di, dout) = (v.dims()[i - 1], v.dims()[o - 1]);
                (Matrix::zeros(dout, di), Matrix::zeros(di, dout))
            })
            .collect();
        Self { shape, v, maps }
    }

    pub fn kind(&self) -> QuiverKind {
        self.shape.kind
    }

    pub fn shape(&self) -> &QuiverShape {
        &self.shape
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.v
    }

    pub fn maps(&self) -> &[(Matrix<F>, Matrix<F>)] {
        &self.maps
    }

    /// `B_h` for the 0-based edge index `e`.
    pub fn b(&self, e: usize) -> &Matrix<F> {
        &self.maps[e].0
    }

    /// `B_h̄` for the 0-based edge index `e`.
    pub fn bbar(&self, e: usize) -> &Matrix<F> {
        &self.maps[e].1
    }

    /// The loop pair `(B_{h_n}, B_{h̄_n})` of a tadpole representation.
    pub fn loop_pair(&self) -> Option<(&Matrix<F>, &Matrix<F>)> {
        self.shape.loop_edge().map(|e| (self.b(e), self.bbar(e)))
    }

    /// `μ(B)ᵢ = Σ_{in(h)=i} ω(h) B_h̄ B_h` over the doubled edges, with
    /// `ω = +1` on the edges `hᵢ` and `−1` on their reverses:
    /// `μᵢ = Σ_{tail(e)=i} B̄_e B_e − Σ_{head(e)=i} B_e B̄_e`.
    pub fn moment_map(&self) -> VertexOperators<F> {
        let mut ops: Vec<Matrix<F>> = self.v.dims().iter().map(|&d| Matrix::zeros(d, d)).collect();
        for (&(i, o), (b, bb)) in self.shape.edges.iter().zip(&self.maps) {
            ops[i - 1] = &ops[i - 1] + &(bb * b);
            ops[o - 1] = &ops[o - 1] - &(b * bb);
        }
        VertexOperators { ops }
    }

    /// The stratifying operators: `Aᵢ = B̄ᵢBᵢ` for `i < n`, and at the last
    /// vertex `B_{n−1}B̄_{n−1}` for the line quiver or the loop commutator
    /// `B̄B − BB̄` for the tadpole. On `μ⁻¹(0)` these agree with the operators
    /// glued along each edge, so `Bᵢ B̄ᵢ = A_{i+1}` for all `i < n`.
    pub fn vertex_operators(&self) -> VertexOperators<F> {
        let n = self.v.len();
        let mut ops: Vec<Matrix<F>> = (0..n - 1).map(|e| self.bbar(e) * self.b(e)).collect();
        let last = match self.shape.loop_edge() {
            Some(l) => self.bbar(l).commutator(self.b(l)),
            None if n >= 2 => self.b(n - 2) * self.bbar(n - 2),
            None => Matrix::zeros(self.v.last(), self.v.last()),
        };
        ops.push(last);
        VertexOperators { ops }
    }

    /// Every arrow of the doubled quiver as an operator on `⊕ Vᵢ`.
    fn arrow_operators(&self) -> Vec<Matrix<F>> {
        let offsets: Vec<usize> = self
            .v
            .dims()
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let total = self.v.total();
        let embed = |m: &Matrix<F>, from: usize, to: usize| {
            let mut big = Matrix::zeros(total, total);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    big[(offsets[to] + r, offsets[from] + c)] = m[(r, c)].clone();
                }
            }
            big
        };
        let mut out = Vec::new();
        for (&(i, o), (b, bb)) in self.shape.edges.iter().zip(&self.maps) {
            out.push(embed(b, i - 1, o - 1));
            out.push(embed(bb, o - 1, i - 1));
        }
        out
    }

    /// Whether all long paths in the doubled quiver act by zero.
    pub fn is_nilpotent(&self, mode: NilpotencyMode) -> Result<bool, RepError> {
        match mode {
            NilpotencyMode::Path => Ok(self.is_nilpotent_path()),
            NilpotencyMode::Local => self.is_nilpotent_local(),
        }
    }

    /// Image filtration `U₀ = ⊕Vᵢ`, `U_{k+1} = Σ_a T_a U_k`: `U_k` is spanned
    /// by the images of all paths of length `k`, so they all vanish iff some
    /// `U_k` is zero. Gives up (not nilpotent) once the filtration stalls or
    /// passes `total dimension × number of arrows` steps.
    fn is_nilpotent_path(&self) -> bool {
        let total = self.v.total();
        let arrows = self.arrow_operators();
        let bound = total * arrows.len().max(1);
        let mut span = Matrix::<F>::identity(total);
        for _ in 0..=bound {
            if span.cols() == 0 {
                return true;
            }
            let images: Vec<Matrix<F>> = arrows.iter().map(|a| a * &span).collect();
            let refs: Vec<&Matrix<F>> = images.iter().collect();
            let next = Matrix::hstack(total, &refs).column_basis();
            if next.cols() == span.cols() {
                return false;
            }
            span = next;
        }
        span.cols() == 0
    }

    /// Vertex-local test, valid on `μ⁻¹(0)`: at each vertex the operators
    /// `ω(h)B_h̄B_h` of the non-loop edges ending there together with any
    /// loop pair must form a nilpotent set.
    fn is_nilpotent_local(&self) -> Result<bool, RepError> {
        if let Some(i) = self.moment_map().first_nonzero() {
            return Err(RepError::MomentMapNonzero(i + 1));
        }
        let mut sets: Vec<Vec<Matrix<F>>> = vec![Vec::new(); self.v.len()];
        for (&(i, o), (b, bb)) in self.shape.edges.iter().zip(&self.maps) {
            if i == o {
                sets[i - 1].push(b.clone());
                sets[i - 1].push(bb.clone());
            } else {
                sets[i - 1].push(bb * b);
                sets[o - 1].push(-&(b * bb));
            }
        }
        for set in &sets {
            if !is_nilpotent_set(set)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Applies a base change `gᵢ` at every vertex: `B_h ↦ g_out B_h g_in⁻¹`.
    pub fn base_change(&self, g: &[Matrix<F>]) -> Result<Self, RepError> {
        if g.len() != self.v.len() {
            return Err(RepError::Shape("one base change per vertex".into()));
        }
        let inv: Vec<Matrix<F>> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| RepError::Shape("singular base change".into())))
            .collect::<Result<_, _>>()?;
        let maps = self
            .shape
            .edges
            .iter()
            .zip(&self.maps)
            .map(|(&(i, o), (b, bb))| {
                (
                    &(&g[o - 1] * b) * &inv[i - 1],
                    &(&g[i - 1] * bb) * &inv[o - 1],
                )
            })
            .collect();
        Self::new(self.kind(), self.v.clone(), maps)
    }
}

/// How [`QuiverRep::is_nilpotent`] decides nilpotency.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NilpotencyMode {
    /// Directly on paths of the doubled quiver; valid everywhere.
    Path,
    /// Through vertex-local operator sets; requires `μ(B) = 0`.
    Local,
}
