//! Exact dense linear algebra over the scalar ring.
//!
//! Rank-sensitive operations (RREF, kernels, subspace arithmetic) are defined
//! only for parameter-free input: the rank of a parametric matrix is not
//! well-defined without a stratification, which this crate deliberately
//! avoids. Callers must specialize parameters first; the error says so.
//!
//! Subspaces are kept in reduced row echelon form with pivot-normalized rows
//! in strictly increasing pivot order, so equal subspaces have identical
//! bases and `==` is subspace equality.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::CoreError;
use crate::poly::{Poly, RingRef};
use crate::scalar::Scalar;

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl Matrix {
    pub fn new(ring: &RingRef, rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape mismatch");
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(ring: &RingRef, rows: usize, cols: usize) -> Self {
        Matrix::new(ring, rows, cols, vec![Poly::zero(ring); rows * cols])
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Poly::one(ring);
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, CoreError> {
        if self.cols != other.rows {
            return Err(CoreError::DimensionMismatch);
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    acc = acc.checked_add(&self.at(i, k).checked_mul(other.at(k, j))?)?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>, CoreError> {
        if v.len() != self.cols {
            return Err(CoreError::DimensionMismatch);
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Poly::zero(&self.ring);
            for j in 0..self.cols {
                acc = acc.checked_add(&self.at(i, j).checked_mul(&v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Determinant by cofactor expansion; fine for the ranks that occur here
    /// (n <= 5) and works over the polynomial ring.
    pub fn det(&self) -> Result<Poly, CoreError> {
        if self.rows != self.cols {
            return Err(CoreError::DimensionMismatch);
        }
        fn go(m: &Matrix, cols: &[usize], row: usize) -> Poly {
            let ring = m.ring();
            if cols.is_empty() {
                return Poly::one(ring);
            }
            let mut acc = Poly::zero(ring);
            for (pos, &c) in cols.iter().enumerate() {
                let e = m.at(row, c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols
                    .iter()
                    .copied()
                    .filter(|&x| x != c)
                    .collect();
                let sub = go(m, &rest, row + 1);
                let term = e.checked_mul(&sub).expect("same ring");
                acc = if pos % 2 == 0 {
                    acc.checked_add(&term).expect("same ring")
                } else {
                    acc.checked_sub(&term).expect("same ring")
                };
            }
            acc
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(go(self, &cols, 0))
    }

    pub fn is_parameter_free(&self) -> bool {
        self.entries.iter().all(Poly::is_constant)
    }

    /// Extract constant entries, or fail with `RequiresSpecialization`.
    pub fn to_scalars(&self) -> Result<Vec<Scalar>, CoreError> {
        self.entries
            .iter()
            .map(|p| p.as_constant().ok_or(CoreError::RequiresSpecialization))
            .collect()
    }

    pub fn from_scalars(ring: &RingRef, rows: usize, cols: usize, entries: Vec<Scalar>) -> Self {
        Matrix::new(
            ring,
            rows,
            cols,
            entries.into_iter().map(|s| Poly::constant(ring, s)).collect(),
        )
    }

    /// Inverse of a parameter-free square matrix, by Gauss–Jordan.
    pub fn inverse(&self) -> Result<Matrix, CoreError> {
        if self.rows != self.cols {
            return Err(CoreError::DimensionMismatch);
        }
        let n = self.rows;
        let mut a = ScalarRows::from_matrix(self)?;
        let mut inv = ScalarRows::identity(&self.ring, n);
        // square and invertible, so every column yields a pivot on its own row
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !a.rows[r][col].is_zero()) else {
                return Err(CoreError::DivisionByZero);
            };
            a.rows.swap(col, src);
            inv.rows.swap(col, src);
            let d = a.rows[col][col].inv()?;
            a.scale_row(col, &d);
            inv.scale_row(col, &d);
            for r in 0..n {
                if r != col && !a.rows[r][col].is_zero() {
                    let f = a.rows[r][col].clone();
                    a.sub_scaled(r, col, &f);
                    inv.sub_scaled(r, col, &f);
                }
            }
        }
        Ok(inv.into_matrix(&self.ring))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Internal working form: rows of scalars.
struct ScalarRows {
    rows: Vec<Vec<Scalar>>,
}

impl ScalarRows {
    fn from_matrix(m: &Matrix) -> Result<Self, CoreError> {
        let flat = m.to_scalars()?;
        Ok(ScalarRows {
            rows: flat.chunks(m.cols().max(1)).map(|c| c.to_vec()).collect(),
        })
    }

    fn identity(ring: &RingRef, n: usize) -> Self {
        let mut rows = vec![vec![Scalar::zero(ring.field()); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Scalar::one(ring.field());
        }
        ScalarRows { rows }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for x in &mut self.rows[r] {
            *x = x.checked_mul(c).expect("same field");
        }
    }

    fn sub_scaled(&mut self, dst: usize, src: usize, c: &Scalar) {
        let src_row = self.rows[src].clone();
        for (x, s) in self.rows[dst].iter_mut().zip(&src_row) {
            let t = s.checked_mul(c).expect("same field");
            *x = x.checked_sub(&t).expect("same field");
        }
    }

    fn into_matrix(self, ring: &RingRef) -> Matrix {
        let rows = self.rows.len();
        let cols = self.rows.first().map_or(0, Vec::len);
        Matrix::from_scalars(ring, rows, cols, self.rows.into_iter().flatten().collect())
    }
}

/// Gaussian elimination to reduced row echelon form over the field.
/// Returns the echelon rows (zero rows dropped) and the pivot columns.
fn rref_rows(mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(src) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for x in &mut rows[r] {
            *x = x.checked_mul(&inv).expect("same field");
        }
        for i in 0..nrows {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    let t = p.checked_mul(&f).expect("same field");
                    *x = x.checked_sub(&t).expect("same field");
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Reduced row echelon form of a parameter-free matrix. Returns the full
/// matrix (zero rows kept, original shape) and the rank.
pub fn rref(m: &Matrix) -> Result<(Matrix, usize), CoreError> {
    let flat = m.to_scalars()?;
    let rows: Vec<Vec<Scalar>> = flat.chunks(m.cols().max(1)).map(|c| c.to_vec()).collect();
    let (mut reduced, pivots) = rref_rows(rows);
    let rank = reduced.len();
    let zero_row = vec![Scalar::zero(m.ring().field()); m.cols()];
    while reduced.len() < m.rows() {
        reduced.push(zero_row.clone());
    }
    let _ = pivots;
    Ok((
        Matrix::from_scalars(m.ring(), m.rows(), m.cols(), reduced.into_iter().flatten().collect()),
        rank,
    ))
}

/// A linear subspace of `K^ambient` in canonical RREF representation.
#[derive(Clone)]
pub struct Subspace {
    ring: RingRef,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace.
    pub fn zero(ring: &RingRef, ambient: usize) -> Self {
        Subspace {
            ring: ring.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Full space `K^ambient`.
    pub fn full(ring: &RingRef, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::zero(ring.field()); ambient];
                v[i] = Scalar::one(ring.field());
                v
            })
            .collect();
        Subspace {
            ring: ring.clone(),
            ambient,
            basis: rows,
            pivots: (0..ambient).collect(),
        }
    }

    /// Canonicalize a spanning set.
    pub fn from_spanning(ring: &RingRef, ambient: usize, rows: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let (basis, pivots) = rref_rows(rows);
        Subspace {
            ring: ring.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    /// Spanning rows given as parameter-free polynomial vectors.
    pub fn from_poly_rows(ring: &RingRef, ambient: usize, rows: &[Vec<Poly>]) -> Result<Self, CoreError> {
        let mut scalar_rows = Vec::with_capacity(rows.len());
        for row in rows {
            let r: Result<Vec<Scalar>, CoreError> = row
                .iter()
                .map(|p| p.as_constant().ok_or(CoreError::RequiresSpecialization))
                .collect();
            scalar_rows.push(r?);
        }
        Ok(Subspace::from_spanning(ring, ambient, scalar_rows))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), CoreError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(CoreError::DimensionMismatch)
        }
    }

    /// Canonical representative of `v` modulo this subspace: reduce `v` by
    /// the RREF basis. Two vectors are congruent mod the subspace iff their
    /// reductions are equal; membership is reduction to zero.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, b) in out.iter_mut().zip(row) {
                let t = b.checked_mul(&f).expect("same field");
                *x = x.checked_sub(&t).expect("same field");
            }
        }
        out
    }

    /// Same reduction with polynomial coordinates (the basis stays scalar).
    /// Used for symbolic class computations over parametric cocycles.
    pub fn reduce_poly(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, b) in out.iter_mut().zip(row) {
                let t = f.scale(b);
                *x = x.checked_sub(&t).expect("same ring");
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool, CoreError> {
        self.check_ambient(other)?;
        Ok(other.basis.iter().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, CoreError> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Subspace::from_spanning(&self.ring, self.ambient, rows))
    }

    /// Intersection by the Zassenhaus block trick: row-reduce
    /// `[U | U; W | 0]`; rows whose left half is zero carry a basis of the
    /// intersection in the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, CoreError> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let zero = Scalar::zero(self.ring.field());
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in &self.basis {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        for r in &other.basis {
            let mut row = r.clone();
            row.extend(core::iter::repeat_n(zero.clone(), n));
            rows.push(row);
        }
        let (reduced, _) = rref_rows(rows);
        let inter: Vec<Vec<Scalar>> = reduced
            .into_iter()
            .filter(|row| row[..n].iter().all(Scalar::is_zero))
            .map(|row| row[n..].to_vec())
            .collect();
        Ok(Subspace::from_spanning(&self.ring, n, inter))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}
impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}; basis ", self.dim(), self.ambient)?;
        f.debug_list()
            .entries(self.basis.iter().map(|r| {
                r.iter().map(|s| alloc::format!("{s}")).collect::<Vec<_>>()
            }))
            .finish()?;
        write!(f, ")")
    }
}

/// Kernel `{v : Mv = 0}` of a parameter-free matrix, as a canonical
/// subspace of `K^cols`.
pub fn kernel(m: &Matrix) -> Result<Subspace, CoreError> {
    let flat = m.to_scalars()?;
    let rows: Vec<Vec<Scalar>> = flat.chunks(m.cols().max(1)).map(|c| c.to_vec()).collect();
    let (reduced, pivots) = rref_rows(rows);
    let ring = m.ring();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![Scalar::zero(ring.field()); n];
        v[fc] = Scalar::one(ring.field());
        for (row, &p) in reduced.iter().zip(&pivots) {
            // pivot coordinate = -entry at the free column
            v[p] = row[fc].neg();
        }
        basis.push(v);
    }
    Ok(Subspace::from_spanning(ring, n, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn q() -> RingRef {
        Ring::rational()
    }

    fn mat(ring: &RingRef, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        Matrix::new(
            ring,
            rows,
            cols,
            vals.iter().map(|&v| Poly::from_integer(ring, v)).collect(),
        )
    }

    fn vecs(ring: &RingRef, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Scalar::from_integer(ring.field(), v)).collect())
            .collect()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let r = q();
        let id = Matrix::identity(&r, 3);
        let (m, rank) = rref(&id).unwrap();
        assert_eq!(m, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_rank_one() {
        let r = q();
        let m = mat(&r, 2, 2, &[1, 2, 2, 4]);
        let (red, rank) = rref(&m).unwrap();
        assert_eq!(rank, 1);
        assert_eq!(red, mat(&r, 2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn rref_rejects_parametric() {
        let r = Ring::new(vec!["a".into()], 1).unwrap();
        let a = Poly::param(&r, "a").unwrap();
        let m = Matrix::new(&r, 1, 1, vec![a]);
        assert_eq!(rref(&m).unwrap_err(), CoreError::RequiresSpecialization);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let r = q();
        assert_eq!(kernel(&Matrix::identity(&r, 3)).unwrap().dim(), 0);
        let z = Matrix::zero(&r, 2, 3);
        let k = kernel(&z).unwrap();
        assert_eq!(k.dim(), 3);
        assert_eq!(k, Subspace::full(&r, 3));
    }

    #[test]
    fn rank_nullity_on_small_matrices() {
        let r = q();
        let cases: &[(usize, usize, &[i64])] = &[
            (2, 3, &[1, 2, 3, 2, 4, 6]),
            (3, 3, &[1, 0, 1, 0, 1, 1, 1, 1, 2]),
            (3, 2, &[1, 2, 3, 4, 5, 6]),
        ];
        for &(rows, cols, vals) in cases {
            let m = mat(&r, rows, cols, vals);
            let (_, rank) = rref(&m).unwrap();
            let k = kernel(&m).unwrap();
            assert_eq!(rank + k.dim(), cols);
            // every kernel basis vector is annihilated
            for v in k.basis() {
                let pv: Vec<Poly> = v.iter().map(|s| Poly::constant(&r, s.clone())).collect();
                let img = m.apply(&pv).unwrap();
                assert!(img.iter().all(Poly::is_zero));
            }
        }
    }

    #[test]
    fn subspace_canonical_from_different_spanning_sets() {
        let r = q();
        let u = Subspace::from_spanning(&r, 3, vecs(&r, &[&[1, 1, 0], &[0, 0, 1]]));
        let w = Subspace::from_spanning(&r, 3, vecs(&r, &[&[2, 2, 2], &[-1, -1, 3]]));
        assert_eq!(u, w);
    }

    #[test]
    fn intersect_spans_spec_example() {
        // span{e2} meet span{e1, e3} = 0 in 3-space
        let r = q();
        let u = Subspace::from_spanning(&r, 3, vecs(&r, &[&[0, 1, 0]]));
        let w = Subspace::from_spanning(&r, 3, vecs(&r, &[&[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(u.intersect(&w).unwrap().dim(), 0);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn dimension_formula_sum_intersection() {
        let r = q();
        let u = Subspace::from_spanning(&r, 4, vecs(&r, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        let w = Subspace::from_spanning(&r, 4, vecs(&r, &[&[1, 1, 1, 1], &[1, 0, 0, 0]]));
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        assert!(s.contains(&u).unwrap() && s.contains(&w).unwrap());
        assert!(u.contains(&i).unwrap() && w.contains(&i).unwrap());
    }

    #[test]
    fn quotient_reduction_is_canonical() {
        let r = q();
        let u = Subspace::from_spanning(&r, 3, vecs(&r, &[&[1, 2, 0]]));
        let v = vecs(&r, &[&[3, 6, 1]]).remove(0);
        let w = vecs(&r, &[&[0, 0, 1]]).remove(0);
        assert_eq!(u.reduce(&v), u.reduce(&w));
        let zero = vecs(&r, &[&[0, 0, 0]]).remove(0);
        assert_eq!(u.reduce(&zero), zero);
    }

    #[test]
    fn ambient_mismatch_reported() {
        let r = q();
        let u = Subspace::zero(&r, 3);
        let w = Subspace::zero(&r, 4);
        assert_eq!(u.sum(&w).unwrap_err(), CoreError::DimensionMismatch);
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let r = q();
        let m = mat(&r, 3, 3, &[2, 1, 0, 0, 1, 1, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&r, 3));
    }

    #[test]
    fn det_of_small_matrices() {
        let r = q();
        assert_eq!(
            mat(&r, 2, 2, &[1, 2, 3, 4]).det().unwrap(),
            Poly::from_integer(&r, -2)
        );
        assert!(mat(&r, 2, 2, &[1, 2, 2, 4]).det().unwrap().is_zero());
    }
}
