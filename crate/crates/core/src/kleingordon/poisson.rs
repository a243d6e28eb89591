//! Finite-dimensional Poisson vector spaces and form-preserving maps.

use serde::Serialize;

use crate::numeric::{QMatrix, Q};

use super::KgError;

/// A vector space `Q^dim` with an antisymmetric bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoissonSpace {
    dim: usize,
    #[serde(rename = "basisLabels")]
    labels: Vec<String>,
    form: QMatrix,
}

impl PoissonSpace {
    pub fn new(labels: Vec<String>, form: QMatrix) -> Result<Self, KgError> {
        if form.rows() != labels.len() || form.cols() != labels.len() {
            return Err(KgError::DimensionMismatch(format!(
                "{} labels for a {}x{} form",
                labels.len(),
                form.rows(),
                form.cols()
            )));
        }
        if !form.is_antisymmetric() {
            return Err(KgError::NotAntisymmetric);
        }
        Ok(Self { dim: labels.len(), labels, form })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn form(&self) -> &QMatrix {
        &self.form
    }

    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        self.form.bilinear(a, b)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.form.rank() == self.dim
    }
}

/// A linear map `src → tgt` with `matrixᵀ · ω_tgt · matrix = ω_src`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoissonMap {
    src: PoissonSpace,
    tgt: PoissonSpace,
    matrix: QMatrix,
}

impl PoissonMap {
    pub fn new(src: PoissonSpace, tgt: PoissonSpace, matrix: QMatrix) -> Result<Self, KgError> {
        if matrix.rows() != tgt.dim || matrix.cols() != src.dim {
            return Err(KgError::DimensionMismatch(format!(
                "{}x{} matrix between spaces of dimension {} and {}",
                matrix.rows(),
                matrix.cols(),
                src.dim,
                tgt.dim
            )));
        }
        let pulled = &(&matrix.transpose() * &tgt.form) * &matrix;
        if pulled != src.form {
            let witness = (0..src.dim)
                .flat_map(|i| (0..src.dim).map(move |j| (i, j)))
                .find(|&(i, j)| pulled.get(i, j) != src.form.get(i, j))
                .map(|(i, j)| format!("entry ({}, {})", src.labels[i], src.labels[j]))
                .unwrap_or_default();
            return Err(KgError::NotFormPreserving(witness));
        }
        Ok(Self { src, tgt, matrix })
    }

    pub fn identity(space: &PoissonSpace) -> Self {
        Self { src: space.clone(), tgt: space.clone(), matrix: QMatrix::identity(space.dim) }
    }

    pub fn src(&self) -> &PoissonSpace {
        &self.src
    }

    pub fn tgt(&self) -> &PoissonSpace {
        &self.tgt
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(v)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.inverse().is_some()
    }

    pub fn inverse(&self) -> Result<Self, KgError> {
        let inv = self.matrix.inverse().ok_or(KgError::NotInvertible)?;
        Self::new(self.tgt.clone(), self.src.clone(), inv)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PoissonMap) -> Result<Self, KgError> {
        if first.tgt != self.src {
            return Err(KgError::DimensionMismatch("composing maps between different spaces".into()));
        }
        Self::new(first.src.clone(), self.tgt.clone(), &self.matrix * &first.matrix)
    }
}
