//! Basis changes, witness verification by `t → 0` limits, and the degeneration graph.

mod graph;
mod witness;

use thiserror::Error;

use crate::exactnum::{Field, RatFun};
use crate::linalg::Matrix;
use crate::superalg::{SuperAlgebra, SuperDim};

pub use graph::{
    build_graph, close_relation, components, hasse_reduction, transitive_closure, verify_at_samples, Component,
    ComponentReport, DegenerationEdge, DegenerationGraph, EdgeKind, Exclusion, GraphConfig, GraphError, HasseEdge,
    Justification, Provenance, TargetScope, WitnessOutcome,
};
pub use witness::{
    parse_witnesses, trivial_scaling_witness, verify_change, verify_witness, EdgeSpec, EntryRef, VerifiedDegeneration,
    Witness, WitnessError, WitnessStatus,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerationError {
    #[error("{0} block is singular")]
    SingularBlock(&'static str),
    #[error("block sizes do not match the algebra dimension")]
    ShapeMismatch,
}

/// Block-diagonal group element `g ∈ GL_m ⊕ GL_n`. Witness tables print `g⁻¹` column by
/// column (new basis vectors in old coordinates); see [`BasisChange::from_new_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct BasisChange<F> {
    pub even_block: Matrix<F>,
    pub odd_block: Matrix<F>,
}

impl<F: Field> BasisChange<F> {
    pub fn new(even_block: Matrix<F>, odd_block: Matrix<F>) -> Result<Self, DegenerationError> {
        if even_block.rows() != even_block.cols() || odd_block.rows() != odd_block.cols() {
            return Err(DegenerationError::ShapeMismatch);
        }
        if even_block.rows() > 0 && even_block.det().is_zero() {
            return Err(DegenerationError::SingularBlock("even"));
        }
        if odd_block.rows() > 0 && odd_block.det().is_zero() {
            return Err(DegenerationError::SingularBlock("odd"));
        }
        Ok(BasisChange { even_block, odd_block })
    }

    /// `g` whose inverse has the given columns, i.e. the new basis `x_j = Σ M_ij e_i`.
    pub fn from_new_basis(even_cols: Matrix<F>, odd_cols: Matrix<F>) -> Result<Self, DegenerationError> {
        let inv = |m: &Matrix<F>, which| {
            if m.rows() == 0 {
                Ok(m.clone())
            } else {
                m.inverse().map_err(|_| DegenerationError::SingularBlock(which))
            }
        };
        BasisChange::new(inv(&even_cols, "even")?, inv(&odd_cols, "odd")?)
    }

    pub fn identity(dim: SuperDim) -> Self {
        BasisChange { even_block: Matrix::identity(dim.m), odd_block: Matrix::identity(dim.n) }
    }

    /// `c · I`.
    pub fn scalar(dim: SuperDim, c: F) -> Self {
        let scale = |n: usize| {
            let mut m = Matrix::identity(n);
            for k in 0..n {
                m[(k, k)] = c.clone();
            }
            m
        };
        BasisChange { even_block: scale(dim.m), odd_block: scale(dim.n) }
    }

    pub fn dim(&self) -> SuperDim {
        SuperDim::new(self.even_block.rows(), self.odd_block.rows())
    }

    pub fn full(&self) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zeros(d.total(), d.total());
        for i in 0..d.m {
            for j in 0..d.m {
                m[(i, j)] = self.even_block[(i, j)].clone();
            }
        }
        for i in 0..d.n {
            for j in 0..d.n {
                m[(d.m + i, d.m + j)] = self.odd_block[(i, j)].clone();
            }
        }
        m
    }

    /// Group product `self · other`.
    pub fn compose(&self, other: &BasisChange<F>) -> BasisChange<F> {
        BasisChange {
            even_block: self.even_block.mul(&other.even_block),
            odd_block: self.odd_block.mul(&other.odd_block),
        }
    }

    /// `(g·μ)(x,y) = g μ(g⁻¹x, g⁻¹y)`, so `act(g·h, a) = act(g, act(h, a))`.
    pub fn act(&self, a: &SuperAlgebra<F>) -> Result<SuperAlgebra<F>, DegenerationError> {
        if self.dim() != a.dim() {
            return Err(DegenerationError::ShapeMismatch);
        }
        let g = self.full();
        let ginv = g.inverse().map_err(|_| DegenerationError::SingularBlock("full"))?;
        let n = a.size();
        let cols: Vec<Vec<F>> = (0..n).map(|j| ginv.column(j)).collect();
        let mut out = SuperAlgebra::zero(a.dim());
        out.label = a.label.clone();
        for i in 0..n {
            for j in 0..n {
                let b = a.bracket_coords(&cols[i], &cols[j]);
                let v = g.mul_vec(&b);
                for (k, x) in v.into_iter().enumerate() {
                    out.set_constant_raw(i, j, k, x);
                }
            }
        }
        Ok(out)
    }
}

/// `act` on an algebra over ℚ(i)(t) by a change over ℚ(i)(t).
pub fn act(g: &BasisChange<RatFun>, a: &SuperAlgebra<RatFun>) -> Result<SuperAlgebra<RatFun>, DegenerationError> {
    g.act(a)
}
