//! Central extensions `A_theta` and the inverse construction: splitting off
//! the annihilator to recover the quotient algebra and the defining
//! cocycles.
//!
//! The extension product is `(x + x')(y + y') = xy + theta(x, y)` with the
//! new basis vectors appended at the end; they multiply to zero and land in
//! the annihilator. Splitting uses the canonical complement spanned by the
//! standard basis vectors at the non-pivot coordinates of the annihilator's
//! RREF basis, so the round trip is exactly testable: re-extending
//! reproduces the original table under the recorded change of basis, and on
//! the nose when the annihilator is spanned by trailing standard basis
//! vectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraTable, Element};
use crate::cohomology::SymCocycle;
use crate::error::CoreError;
use crate::linalg::{Matrix, Subspace};
use crate::poly::Poly;
use crate::sympair;

/// Outcome of [`split_annihilator`].
#[derive(Clone, Debug)]
pub struct SplitExtension {
    /// The quotient algebra on the canonical complement.
    pub quotient: AlgebraTable,
    /// One scalar cocycle per annihilator basis vector, over the quotient.
    pub cocycles: Vec<SymCocycle>,
    /// Ambient coordinates forming the complement basis, in order.
    pub complement: Vec<usize>,
    /// The annihilator subspace that was split off.
    pub annihilator: Subspace,
    /// Change of basis: columns are the complement vectors followed by the
    /// annihilator basis, expressed in the original coordinates.
    pub change_of_basis: Matrix,
}

/// Build the central extension of `table` by the listed cocycles. Each
/// target coordinate of each cocycle contributes one new basis vector, in
/// order, appended after the old basis.
pub fn central_extend(
    table: &AlgebraTable,
    thetas: &[SymCocycle],
) -> Result<AlgebraTable, CoreError> {
    let n = table.dim();
    let ring = table.ring();
    for theta in thetas {
        if theta.n() != n {
            return Err(CoreError::DimensionMismatch);
        }
    }
    let s: usize = thetas.iter().map(SymCocycle::s).sum();
    let new_dim = n + s;
    let mut products = vec![vec![Poly::zero(ring); new_dim]; sympair::pair_count(new_dim)];
    for (i, j) in sympair::pairs(n) {
        let mut coords = vec![Poly::zero(ring); new_dim];
        for (k, c) in table.basis_product(i, j).iter().enumerate() {
            coords[k] = c.clone();
        }
        let mut slot = n;
        for theta in thetas {
            for t in 0..theta.s() {
                coords[slot] = theta.value(t, i, j).clone();
                slot += 1;
            }
        }
        products[sympair::pair_pos(new_dim, i, j)] = coords;
    }
    AlgebraTable::new(ring, new_dim, products, table.constraints().to_vec())
}

/// Split a nonzero annihilator off a parameter-free algebra: recover the
/// quotient algebra on the canonical complement together with the cocycles
/// recording the annihilator components of the products.
pub fn split_annihilator(table: &AlgebraTable) -> Result<SplitExtension, CoreError> {
    if !table.is_parameter_free() {
        return Err(CoreError::RequiresSpecialization);
    }
    let n = table.dim();
    let ring = table.ring();
    let ann = table.annihilator()?;
    let m = ann.dim();
    if m == 0 {
        return Err(CoreError::NoAnnihilator);
    }
    let (quotient, complement) = table.quotient_by_ideal(&ann)?;
    let qdim = complement.len();
    // theta_t(e_a, e_b) = coefficient of the t-th annihilator basis vector in
    // e_{p_a} e_{p_b}; in RREF coordinates that is the pivot-column entry.
    let mut comps = vec![vec![Poly::zero(ring); sympair::pair_count(qdim)]; m];
    for (a, b) in sympair::pairs(qdim) {
        let prod = table.basis_product(complement[a], complement[b]);
        for (t, &pivot) in ann.pivots().iter().enumerate() {
            comps[t][sympair::pair_pos(qdim, a, b)] = prod[pivot].clone();
        }
    }
    let cocycles: Vec<SymCocycle> = comps
        .into_iter()
        .map(|c| SymCocycle::from_components(ring, qdim, vec![c]).expect("consistent sizes"))
        .collect();
    // columns: complement standard vectors, then annihilator basis
    let mut cob = Matrix::zero(ring, n, n);
    for (col, &amb) in complement.iter().enumerate() {
        *cob.at_mut(amb, col) = Poly::one(ring);
    }
    for (t, v) in ann.basis().iter().enumerate() {
        for (row, val) in v.iter().enumerate() {
            *cob.at_mut(row, qdim + t) = Poly::constant(ring, val.clone());
        }
    }
    Ok(SplitExtension {
        quotient,
        cocycles,
        complement,
        annihilator: ann,
        change_of_basis: cob,
    })
}

/// Transport a parameter-free table along an invertible matrix whose columns
/// express a new basis in the old coordinates: the result is the same
/// algebra written on the new basis.
pub fn transport(table: &AlgebraTable, basis: &Matrix) -> Result<AlgebraTable, CoreError> {
    let n = table.dim();
    if basis.rows() != n || basis.cols() != n {
        return Err(CoreError::DimensionMismatch);
    }
    let ring = table.ring();
    let inv = basis.inverse()?;
    let mut products = vec![vec![Poly::zero(ring); n]; sympair::pair_count(n)];
    for (i, j) in sympair::pairs(n) {
        let bi = Element {
            coords: (0..n).map(|r| basis.at(r, i).clone()).collect(),
        };
        let bj = Element {
            coords: (0..n).map(|r| basis.at(r, j).clone()).collect(),
        };
        let prod = table.multiply(&bi, &bj)?;
        let coords = inv.apply(&prod.coords)?;
        products[sympair::pair_pos(n, i, j)] = coords;
    }
    AlgebraTable::new(ring, n, products, Vec::new())
}
