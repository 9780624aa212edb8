//! Points on an affine subvariety `Y = Z(f_1, …, f_k)`.
//!
//! A stable datum describes a subscheme of `Y` exactly when every `f_j(B)`
//! vanishes. The generators are taken as given: no radical or saturation is
//! computed, so two presentations agree only when they generate the same ideal.

use alloc::vec::Vec;

use crate::adhm::AdhmDatum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{normal_form, IdealPresentation, MonomialOrder, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyConstraint {
    nvars: usize,
    generators: Vec<Poly>,
}

impl VarietyConstraint {
    /// An empty generator list stands for the whole affine space.
    pub fn new(nvars: usize, generators: Vec<Poly>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: g.nvars() });
            }
        }
        Ok(Self { nvars, generators })
    }

    pub fn whole_space(nvars: usize) -> Self {
        Self { nvars, generators: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_whole_space(&self) -> bool {
        self.generators.is_empty()
    }
}

fn check_arity(x: &AdhmDatum, y: &VarietyConstraint) -> Result<()> {
    if x.n() != y.nvars {
        return Err(Error::ArityMismatch { expected: y.nvars, found: x.n() });
    }
    Ok(())
}

/// `f_j(B_0, …, B_{n-1})` for each generator.
pub fn variety_residuals(x: &AdhmDatum, y: &VarietyConstraint) -> Result<Vec<Matrix>> {
    check_arity(x, y)?;
    if let Some((i, j)) = x.commutation_violation() {
        return Err(Error::NonCommuting(i, j));
    }
    y.generators.iter().map(|f| f.eval_matrices(x.matrices())).collect()
}

/// Whether every generator vanishes to zero normal form modulo `ideal`.
pub fn generators_in_ideal(ideal: &IdealPresentation, y: &VarietyConstraint) -> Result<bool> {
    for f in &y.generators {
        if !normal_form(f, ideal)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of a stable datum in the Hilbert scheme of `Y`.
///
/// The residual test and the normal-form test modulo `ker Φ_X` must agree;
/// disagreement is a bug and panics.
pub fn is_in_hilb_variety(x: &AdhmDatum, y: &VarietyConstraint) -> Result<bool> {
    let by_residuals = variety_residuals(x, y)?.iter().all(Matrix::is_zero);
    let ideal = x.datum_to_ideal(&MonomialOrder::grevlex())?;
    let by_normal_form = generators_in_ideal(&ideal, y)?;
    assert_eq!(by_residuals, by_normal_form, "residual and normal-form membership disagree");
    Ok(by_residuals)
}

/// Per-generator outcome of `Z_Y ⊆ J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    pub contained: bool,
    /// Normal form of each generator modulo `J`, in generator order.
    pub remainders: Vec<Poly>,
}

/// Reports whether the subscheme cut out by `J` lies on `Y`, i.e. `Z_Y ⊆ J`.
pub fn induced_quotient_ideal(j: &IdealPresentation, y: &VarietyConstraint) -> Result<QuotientReport> {
    if j.nvars() != y.nvars {
        return Err(Error::ArityMismatch { expected: y.nvars, found: j.nvars() });
    }
    let remainders = y.generators.iter().map(|f| normal_form(f, j)).collect::<Result<Vec<_>>>()?;
    let contained = remainders.iter().all(Poly::is_zero);
    Ok(QuotientReport { contained, remainders })
}
