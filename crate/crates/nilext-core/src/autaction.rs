//! Verified automorphisms and their action on cocycles and cohomology
//! classes.
//!
//! The crate never searches for automorphisms: callers supply candidate
//! matrices (typically instances of published automorphism families) and
//! [`AutMap::verify`] checks the homomorphism identity on all basis pairs as
//! polynomial identities together with a nonzero determinant polynomial.
//! Only verified maps can act, which the type enforces.

use alloc::vec::Vec;

use crate::algebra::{AlgebraTable, Element};
use crate::cohomology::{coboundary_space, SymCocycle};
use crate::error::CoreError;
use crate::linalg::{Matrix, Subspace};
use crate::poly::Poly;
use crate::sympair::{pair_count, pairs};

/// Why a candidate matrix failed verification.
#[derive(Clone, Debug)]
pub enum AutRejection {
    /// `phi(e_i) phi(e_j) != phi(e_i e_j)`; the defect coordinates are
    /// polynomials, at least one nonzero.
    Product {
        i: usize,
        j: usize,
        defect: Vec<Poly>,
    },
    /// The determinant is the zero polynomial.
    SingularDeterminant,
    /// Structural failure (size mismatch, ring mismatch, ...).
    Core(CoreError),
}

impl From<CoreError> for AutRejection {
    fn from(e: CoreError) -> Self {
        AutRejection::Core(e)
    }
}

/// An n x n matrix verified to be an algebra automorphism (invertibility
/// witnessed by a nonzero determinant polynomial, so parametric families are
/// verified for generic admissible parameter values).
#[derive(Clone, Debug)]
pub struct AutMap {
    matrix: Matrix,
}

impl AutMap {
    /// Check `phi(e_i) phi(e_j) = phi(e_i e_j)` for all `i <= j` and
    /// `det(phi) != 0` as a polynomial; wrap the matrix on success.
    pub fn verify(table: &AlgebraTable, matrix: Matrix) -> Result<AutMap, AutRejection> {
        let n = table.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(AutRejection::Core(CoreError::DimensionMismatch));
        }
        for (i, j) in pairs(n) {
            let col_i = column(&matrix, i);
            let col_j = column(&matrix, j);
            let lhs = table.multiply(&col_i, &col_j)?;
            let rhs_coords = matrix.apply(table.basis_product(i, j))?;
            let rhs = Element { coords: rhs_coords };
            let defect = lhs.sub(&rhs)?;
            if !defect.is_zero() {
                return Err(AutRejection::Product {
                    i,
                    j,
                    defect: defect.coords,
                });
            }
        }
        if matrix.det()?.is_zero() {
            return Err(AutRejection::SingularDeterminant);
        }
        Ok(AutMap { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Pull a cocycle back along the automorphism:
    /// `(phi theta)(x, y) = theta(phi(x), phi(y))`. Linear in `theta`.
    pub fn act_on_cocycle(&self, theta: &SymCocycle) -> Result<SymCocycle, CoreError> {
        let n = self.dim();
        if theta.n() != n {
            return Err(CoreError::DimensionMismatch);
        }
        let ring = theta.ring();
        let mut comps = Vec::with_capacity(theta.s());
        for t in 0..theta.s() {
            let mut coords = Vec::with_capacity(pair_count(n));
            for (i, j) in pairs(n) {
                let col_i = column(&self.matrix, i);
                let col_j = column(&self.matrix, j);
                let vals = theta
                    .component_cocycle(t)
                    .apply(&col_i, &col_j)?;
                coords.push(vals.into_iter().next().expect("one component"));
            }
            comps.push(coords);
        }
        SymCocycle::from_components(ring, n, comps)
    }

    /// Image of a subspace of `Delta`-coordinate vectors under the induced
    /// map on symmetric forms.
    pub fn act_on_form_space(&self, space: &Subspace) -> Result<Subspace, CoreError> {
        let n = self.dim();
        if space.ambient() != pair_count(n) {
            return Err(CoreError::DimensionMismatch);
        }
        let ring = space.ring();
        let mut rows = Vec::with_capacity(space.dim());
        for v in space.basis() {
            let theta = SymCocycle::from_components(
                ring,
                n,
                alloc::vec![v.iter().map(|s| Poly::constant(ring, s.clone())).collect()],
            )?;
            let image = self.act_on_cocycle(&theta)?;
            let scalars: Result<Vec<_>, CoreError> = image
                .component(0)
                .iter()
                .map(|p| p.as_constant().ok_or(CoreError::RequiresSpecialization))
                .collect();
            rows.push(scalars?);
        }
        Ok(Subspace::from_spanning(ring, pair_count(n), rows))
    }
}

fn column(m: &Matrix, j: usize) -> Element {
    Element {
        coords: (0..m.rows()).map(|r| m.at(r, j).clone()).collect(),
    }
}

/// Whether `[phi theta1] = [theta2]`, i.e. `phi theta1 - theta2` is a
/// coboundary. The base table must be parameter-free; the cocycles may carry
/// parameters, in which case the reduction is symbolic and the answer is a
/// polynomial identity in the parameters.
pub fn classes_equal_under(
    table: &AlgebraTable,
    phi: &AutMap,
    theta1: &SymCocycle,
    theta2: &SymCocycle,
) -> Result<bool, CoreError> {
    if theta1.n() != table.dim() || theta2.n() != table.dim() || theta1.s() != theta2.s() {
        return Err(CoreError::DimensionMismatch);
    }
    let b2 = coboundary_space(table)?;
    let moved = phi.act_on_cocycle(theta1)?;
    let diff = moved.sub(theta2)?;
    for t in 0..diff.s() {
        let reduced = b2.reduce_poly(diff.component(t));
        if reduced.iter().any(|p| !p.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
