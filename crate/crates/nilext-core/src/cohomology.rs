//! Symmetric 2-cocycles, coboundaries, the CD-cocycle subspace and the
//! induced cohomology data.
//!
//! In the commutative variety every symmetric bilinear map is a cocycle, so
//! `Z^2` is the full symmetric-form space of dimension `n(n+1)/2`, written in
//! the `Delta_ij` basis (`Delta_ij(e_l, e_m) = delta_il delta_jm` for
//! `i <= j`, enumerated lexicographically; all reported coordinates use this
//! ordering). Coboundaries are `(delta f)(x, y) = f(xy)`. The CD-cocycle
//! subspace `Z^2_D` collects the cocycles whose central extension of a
//! CD-algebra stays CD.
//!
//! Cohomology with an s-dimensional coefficient space is handled
//! coordinate-wise: an s-valued cocycle is s independent scalar cocycles.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgebraTable, Element};
use crate::error::CoreError;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::poly::{Poly, RingRef};
use crate::scalar::Scalar;
use crate::sympair::{pair_count, pair_pos, pairs};

/// A symmetric bilinear form with values in an s-dimensional space, stored
/// as `Delta`-basis coordinates per target coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymCocycle {
    ring: RingRef,
    n: usize,
    comps: Vec<Vec<Poly>>,
}

impl SymCocycle {
    pub fn zero(ring: &RingRef, n: usize, s: usize) -> Self {
        SymCocycle {
            ring: ring.clone(),
            n,
            comps: vec![vec![Poly::zero(ring); pair_count(n)]; s],
        }
    }

    /// The basis form `Delta_ij` (0-based indices) as a 1-valued cocycle.
    pub fn delta(ring: &RingRef, n: usize, i: usize, j: usize) -> Self {
        let mut c = SymCocycle::zero(ring, n, 1);
        c.comps[0][pair_pos(n, i, j)] = Poly::one(ring);
        c
    }

    /// Assemble from per-component `Delta` coordinates.
    pub fn from_components(ring: &RingRef, n: usize, comps: Vec<Vec<Poly>>) -> Result<Self, CoreError> {
        for c in &comps {
            if c.len() != pair_count(n) {
                return Err(CoreError::DimensionMismatch);
            }
        }
        Ok(SymCocycle { ring: ring.clone(), n, comps })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Source dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Target dimension s.
    pub fn s(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, t: usize) -> &[Poly] {
        &self.comps[t]
    }

    /// Value `theta_t(e_i, e_j)` (0-based; order of i, j irrelevant).
    pub fn value(&self, t: usize, i: usize, j: usize) -> &Poly {
        &self.comps[t][pair_pos(self.n, i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().flatten().all(Poly::is_zero)
    }

    pub fn add(&self, other: &SymCocycle) -> Result<SymCocycle, CoreError> {
        if self.n != other.n || self.s() != other.s() {
            return Err(CoreError::DimensionMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_add(y))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymCocycle { ring: self.ring.clone(), n: self.n, comps })
    }

    pub fn sub(&self, other: &SymCocycle) -> Result<SymCocycle, CoreError> {
        self.add(&other.scale_poly(&Poly::from_integer(&self.ring, -1))?)
    }

    pub fn scale(&self, c: &Scalar) -> SymCocycle {
        SymCocycle {
            ring: self.ring.clone(),
            n: self.n,
            comps: self
                .comps
                .iter()
                .map(|comp| comp.iter().map(|p| p.scale(c)).collect())
                .collect(),
        }
    }

    pub fn scale_poly(&self, f: &Poly) -> Result<SymCocycle, CoreError> {
        let comps = self
            .comps
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| p.checked_mul(f))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymCocycle { ring: self.ring.clone(), n: self.n, comps })
    }

    /// Evaluate `theta(x, y)` for elements of the base algebra; returns the
    /// s values as polynomials.
    pub fn apply(&self, x: &Element, y: &Element) -> Result<Vec<Poly>, CoreError> {
        if x.coords.len() != self.n || y.coords.len() != self.n {
            return Err(CoreError::DimensionMismatch);
        }
        let mut out = Vec::with_capacity(self.s());
        for comp in &self.comps {
            let mut acc = Poly::zero(&self.ring);
            for i in 0..self.n {
                if x.coords[i].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if y.coords[j].is_zero() {
                        continue;
                    }
                    let v = &comp[pair_pos(self.n, i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    let term = x.coords[i].checked_mul(&y.coords[j])?.checked_mul(v)?;
                    acc = acc.checked_add(&term)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// One-component slice as a standalone cocycle.
    pub fn component_cocycle(&self, t: usize) -> SymCocycle {
        SymCocycle {
            ring: self.ring.clone(),
            n: self.n,
            comps: vec![self.comps[t].clone()],
        }
    }
}

/// Exact bases for `B^2` and `Z^2_D` inside the full symmetric-form space,
/// with the quotient dimensions for `H^2_C` and `H^2_D`.
#[derive(Clone, Debug)]
pub struct CohomologySpaces {
    pub ambient: usize,
    pub b2: Subspace,
    pub z2d: Subspace,
    pub h2c: usize,
    pub h2d: usize,
}

impl CohomologySpaces {
    pub fn compute(table: &AlgebraTable) -> Result<Self, CoreError> {
        let b2 = coboundary_space(table)?;
        let z2d = cd_cocycle_space(table)?;
        let ambient = pair_count(table.dim());
        // For CD tables B^2 sits inside Z^2_D and this is dim Z^2_D - dim B^2;
        // in general it is the dimension of the image of Z^2_D in the
        // quotient by B^2.
        let meet = z2d.intersect(&b2)?;
        Ok(CohomologySpaces {
            ambient,
            h2c: ambient - b2.dim(),
            h2d: z2d.dim() - meet.dim(),
            b2,
            z2d,
        })
    }
}

/// `B^2`: the span of the coboundaries `delta f_k` for the dual basis maps
/// `f_k`, i.e. the row vectors `(c_ij^k)_{i<=j}`. Its dimension equals
/// `dim A^2`.
pub fn coboundary_space(table: &AlgebraTable) -> Result<Subspace, CoreError> {
    let n = table.dim();
    let ring = table.ring();
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = Vec::with_capacity(pair_count(n));
        for (i, j) in pairs(n) {
            let c = table.basis_product(i, j)[k]
                .as_constant()
                .ok_or(CoreError::RequiresSpecialization)?;
            row.push(c);
        }
        rows.push(row);
    }
    Ok(Subspace::from_spanning(ring, pair_count(n), rows))
}

/// `Z^2_D`: kernel of the linear system obtained by instantiating
/// `theta((xy)a,b) + theta((xb)a,y) + theta(x,(yb)a)
///  = theta((xy)b,a) + theta((xa)b,y) + theta(x,(ya)b)`
/// on all basis quadruples. Symmetry is structural in the `Delta` basis.
pub fn cd_cocycle_space(table: &AlgebraTable) -> Result<Subspace, CoreError> {
    let n = table.dim();
    let ring = table.ring();
    if !table.is_parameter_free() {
        return Err(CoreError::RequiresSpecialization);
    }
    let cols = pair_count(n);
    let mut rows: Vec<Poly> = Vec::new();
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(ring, n, i)).collect();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let (x, y, a, b) = (&basis[p], &basis[q], &basis[r], &basis[s]);
                    let xy = table.multiply(x, y)?;
                    // pairs contributing positively / negatively
                    let plus = [
                        (table.multiply(&xy, a)?, b.clone()),
                        (table.multiply(&table.multiply(x, b)?, a)?, y.clone()),
                        (x.clone(), table.multiply(&table.multiply(y, b)?, a)?),
                    ];
                    let minus = [
                        (table.multiply(&xy, b)?, a.clone()),
                        (table.multiply(&table.multiply(x, a)?, b)?, y.clone()),
                        (x.clone(), table.multiply(&table.multiply(y, a)?, b)?),
                    ];
                    let mut row = vec![Poly::zero(ring); cols];
                    let mut add_pair = |u: &Element, v: &Element, sign: i64| {
                        for (k, l) in pairs(n) {
                            // coefficient of c_kl in theta(u, v)
                            let mut coef = u.coords[k]
                                .checked_mul(&v.coords[l])
                                .expect("same ring");
                            if k != l {
                                coef = coef
                                    .checked_add(
                                        &u.coords[l].checked_mul(&v.coords[k]).expect("same ring"),
                                    )
                                    .expect("same ring");
                            }
                            if sign < 0 {
                                coef = coef.neg();
                            }
                            let pos = pair_pos(n, k, l);
                            row[pos] = row[pos].checked_add(&coef).expect("same ring");
                        }
                    };
                    for (u, v) in &plus {
                        add_pair(u, v, 1);
                    }
                    for (u, v) in &minus {
                        add_pair(u, v, -1);
                    }
                    if row.iter().any(|p| !p.is_zero()) {
                        rows.extend(row);
                    }
                }
            }
        }
    }
    let nrows = rows.len() / cols;
    if nrows == 0 {
        return Ok(Subspace::full(ring, cols));
    }
    kernel(&Matrix::new(ring, nrows, cols, rows))
}

/// `(h2c, h2d)` = `(n(n+1)/2 - dim B^2, dim Z^2_D - dim B^2)`.
pub fn h2_dims(table: &AlgebraTable) -> Result<(usize, usize), CoreError> {
    let spaces = CohomologySpaces::compute(table)?;
    Ok((spaces.h2c, spaces.h2d))
}

/// Per-component reduction of a cocycle modulo `B^2`; zero exactly for
/// coboundaries. Parametric cocycle coordinates are reduced symbolically.
pub fn class_coords(b2: &Subspace, theta: &SymCocycle) -> Result<Vec<Vec<Poly>>, CoreError> {
    if b2.ambient() != pair_count(theta.n()) {
        return Err(CoreError::DimensionMismatch);
    }
    Ok((0..theta.s())
        .map(|t| b2.reduce_poly(theta.component(t)))
        .collect())
}

/// `Ann(theta) = {x : theta(x, A) = 0}`: kernel of the stacked Gram
/// matrices over all target coordinates.
pub fn ann_of_cocycle(table: &AlgebraTable, theta: &SymCocycle) -> Result<Subspace, CoreError> {
    let n = table.dim();
    if theta.n() != n {
        return Err(CoreError::DimensionMismatch);
    }
    let ring = table.ring();
    let mut rows: Vec<Poly> = Vec::with_capacity(theta.s() * n * n);
    for t in 0..theta.s() {
        for i in 0..n {
            for j in 0..n {
                rows.push(theta.value(t, i, j).clone());
            }
        }
    }
    kernel(&Matrix::new(ring, theta.s() * n, n, rows))
}

/// Result of the `T_s` test with the reasons for failure spelled out.
#[derive(Clone, Debug)]
pub struct TsReport {
    pub ok: bool,
    pub reasons: Vec<String>,
}

/// Check whether scalar cocycles `theta_1, ..., theta_s` give a point of
/// `T_s(A)`: their classes must be linearly independent in `H^2_C` and the
/// joint cocycle annihilator must meet `Ann(A)` trivially. The empty list is
/// rejected.
pub fn ts_check(table: &AlgebraTable, thetas: &[SymCocycle]) -> Result<TsReport, CoreError> {
    let mut reasons = Vec::new();
    if thetas.is_empty() {
        return Ok(TsReport {
            ok: false,
            reasons: vec![String::from("no cocycles supplied (s = 0 is degenerate)")],
        });
    }
    let n = table.dim();
    let ring = table.ring();
    for theta in thetas {
        if theta.n() != n || theta.s() != 1 {
            return Err(CoreError::DimensionMismatch);
        }
    }
    let b2 = coboundary_space(table)?;
    // linear independence of the classes: reduce mod B^2 and row-reduce
    let mut reduced_rows = Vec::with_capacity(thetas.len());
    for theta in thetas {
        let red = b2.reduce_poly(theta.component(0));
        let scalars: Result<Vec<Scalar>, CoreError> = red
            .iter()
            .map(|p| p.as_constant().ok_or(CoreError::RequiresSpecialization))
            .collect();
        reduced_rows.push(scalars?);
    }
    let span = Subspace::from_spanning(ring, pair_count(n), reduced_rows);
    if span.dim() != thetas.len() {
        reasons.push(format!(
            "classes are linearly dependent in H2_C (span has dimension {} < {})",
            span.dim(),
            thetas.len()
        ));
    }
    // joint annihilator meets Ann(A)
    let mut joint = Subspace::full(ring, n);
    for theta in thetas {
        joint = joint.intersect(&ann_of_cocycle(table, theta)?)?;
    }
    let meet = joint.intersect(&table.annihilator()?)?;
    if meet.dim() != 0 {
        reasons.push(format!(
            "joint cocycle annihilator meets Ann(A) in dimension {}",
            meet.dim()
        ));
    }
    Ok(TsReport {
        ok: reasons.is_empty(),
        reasons,
    })
}

/// Whether the class of `theta` lies in `H^2_D`, i.e. `theta` is in
/// `Z^2_D`. Since `B^2` is contained in `Z^2_D` this is independent of the
/// chosen representative.
pub fn is_cd_class(table: &AlgebraTable, theta: &SymCocycle) -> Result<bool, CoreError> {
    let z2d = cd_cocycle_space(table)?;
    for t in 0..theta.s() {
        let scalars: Result<Vec<Scalar>, CoreError> = theta
            .component(t)
            .iter()
            .map(|p| p.as_constant().ok_or(CoreError::RequiresSpecialization))
            .collect();
        if !z2d.contains_vector(&scalars?) {
            return Ok(false);
        }
    }
    Ok(true)
}
