//! Structure-constant algebras.
//!
//! A table stores the products `e_i e_j` for `i <= j` only; commutativity is
//! structural (the other half is mirrored). Missing products are zero, which
//! matches the convention of presentation tables that list only nonzero
//! products. Entries are polynomials in the table's parameters; rank-type
//! operations (powers, annihilators, subspace products) additionally require
//! a parameter-free table, obtained via [`AlgebraTable::specialize`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::linalg::{kernel, Matrix, Subspace};
use crate::poly::{Assignment, Constraint, Param, Poly, Ring, RingRef};
use crate::sympair;

/// Finite-dimensional commutative algebra given by structure constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraTable {
    ring: RingRef,
    dim: usize,
    /// `products[pair_pos(i, j)]` = coordinates of `e_i e_j`, length `dim`.
    products: Vec<Vec<Poly>>,
    constraints: Vec<Constraint>,
}

/// Element of an algebra as a coordinate vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    pub coords: Vec<Poly>,
}

impl Element {
    pub fn zero(ring: &RingRef, dim: usize) -> Self {
        Element {
            coords: vec![Poly::zero(ring); dim],
        }
    }

    pub fn basis(ring: &RingRef, dim: usize, i: usize) -> Self {
        let mut e = Element::zero(ring, dim);
        e.coords[i] = Poly::one(ring);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Element) -> Result<Element, CoreError> {
        if self.coords.len() != other.coords.len() {
            return Err(CoreError::DimensionMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_, _>>()?;
        Ok(Element { coords })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, CoreError> {
        if self.coords.len() != other.coords.len() {
            return Err(CoreError::DimensionMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(Element { coords })
    }
}

/// The polynomial identities the engine can test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityKind {
    Associative,
    Jordan,
    Cd,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Associative => "associative",
            IdentityKind::Jordan => "jordan",
            IdentityKind::Cd => "cd",
        }
    }
}

/// Outcome of an identity check. When `holds` is false the witness carries
/// the lexicographically first failing basis tuple (1-based indices; empty
/// for the generic-element Jordan check) and a defect vector with at least
/// one nonzero coefficient polynomial.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub kind: IdentityKind,
    pub holds: bool,
    pub witness: Option<IdentityWitness>,
}

#[derive(Clone, Debug)]
pub struct IdentityWitness {
    pub tuple: Vec<usize>,
    pub defect: Vec<Poly>,
}

impl IdentityWitness {
    pub fn describe(&self) -> String {
        let tuple = if self.tuple.is_empty() {
            String::from("generic elements")
        } else {
            let parts: Vec<String> = self.tuple.iter().map(|i| format!("e{i}")).collect();
            format!("({})", parts.join(","))
        };
        let nonzero: Vec<String> = self
            .defect
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| format!("({p})*e{}", k + 1))
            .collect();
        format!("{tuple} with defect {}", nonzero.join(" + "))
    }
}

impl AlgebraTable {
    /// Build a table from the `i <= j` products. `products` maps the
    /// symmetric pair index to the coordinate vector of `e_i e_j`.
    pub fn new(
        ring: &RingRef,
        dim: usize,
        products: Vec<Vec<Poly>>,
        constraints: Vec<Constraint>,
    ) -> Result<Self, CoreError> {
        if products.len() != sympair::pair_count(dim) {
            return Err(CoreError::DimensionMismatch);
        }
        for row in &products {
            if row.len() != dim {
                return Err(CoreError::DimensionMismatch);
            }
        }
        Ok(AlgebraTable {
            ring: ring.clone(),
            dim,
            products,
            constraints,
        })
    }

    /// The algebra with all products zero.
    pub fn zero_algebra(ring: &RingRef, dim: usize) -> Self {
        AlgebraTable {
            ring: ring.clone(),
            dim,
            products: vec![vec![Poly::zero(ring); dim]; sympair::pair_count(dim)],
            constraints: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Coordinates of `e_i e_j` (0-based indices, any order).
    pub fn basis_product(&self, i: usize, j: usize) -> &[Poly] {
        &self.products[sympair::pair_pos(self.dim, i, j)]
    }

    pub fn set_basis_product(&mut self, i: usize, j: usize, coords: Vec<Poly>) {
        debug_assert_eq!(coords.len(), self.dim);
        self.products[sympair::pair_pos(self.dim, i, j)] = coords;
    }

    pub fn is_parameter_free(&self) -> bool {
        self.products.iter().flatten().all(Poly::is_constant)
    }

    /// Bilinear extension of the table. Symmetric by construction.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element, CoreError> {
        if x.coords.len() != self.dim || y.coords.len() != self.dim {
            return Err(CoreError::DimensionMismatch);
        }
        let mut out = Element::zero(&self.ring, self.dim);
        for i in 0..self.dim {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y.coords[j].is_zero() {
                    continue;
                }
                let f = x.coords[i].checked_mul(&y.coords[j])?;
                let prod = self.basis_product(i, j);
                for k in 0..self.dim {
                    if prod[k].is_zero() {
                        continue;
                    }
                    out.coords[k] = out.coords[k].checked_add(&prod[k].checked_mul(&f)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Substitute parameters, re-checking every nonvanishing constraint.
    /// Constraints that evaluate to zero reject the assignment by name;
    /// still-parametric constraints are kept for later checks.
    pub fn specialize(&self, assignment: &Assignment) -> Result<AlgebraTable, CoreError> {
        let mut constraints = Vec::new();
        for c in &self.constraints {
            c.admits(assignment)?;
            let image = c.poly().substitute(assignment)?;
            if image.as_constant().is_none() {
                constraints.push(Constraint::new(image, c.label())?);
            }
        }
        let mut products = Vec::with_capacity(self.products.len());
        for row in &self.products {
            let new_row: Result<Vec<Poly>, CoreError> =
                row.iter().map(|p| p.substitute(assignment)).collect();
            products.push(new_row?);
        }
        Ok(AlgebraTable {
            ring: self.ring.clone(),
            dim: self.dim,
            products,
            constraints,
        })
    }

    /// Matrix of left multiplication by `e_j`: column `i` holds `e_i e_j`.
    pub fn left_mult_matrix(&self, j: usize) -> Matrix {
        let mut m = Matrix::zero(&self.ring, self.dim, self.dim);
        for i in 0..self.dim {
            let prod = self.basis_product(i, j);
            for k in 0..self.dim {
                *m.at_mut(k, i) = prod[k].clone();
            }
        }
        m
    }

    /// `Ann(A) = {x : xA = 0}`, the kernel of the stacked left-multiplication
    /// matrices.
    pub fn annihilator(&self) -> Result<Subspace, CoreError> {
        let mut rows: Vec<Poly> = Vec::with_capacity(self.dim * self.dim * self.dim);
        for j in 0..self.dim {
            let m = self.left_mult_matrix(j);
            for r in 0..self.dim {
                rows.extend(m.row(r).iter().cloned());
            }
        }
        let stacked = Matrix::new(&self.ring, self.dim * self.dim, self.dim, rows);
        kernel(&stacked)
    }

    /// Span of all products `u w` with `u` in a basis of `U`, `w` in a basis
    /// of `W`.
    pub fn subspace_product(&self, u: &Subspace, w: &Subspace) -> Result<Subspace, CoreError> {
        if u.ambient() != self.dim || w.ambient() != self.dim {
            return Err(CoreError::DimensionMismatch);
        }
        if !self.is_parameter_free() {
            return Err(CoreError::RequiresSpecialization);
        }
        let mut rows = Vec::new();
        for ub in u.basis() {
            let ue = Element {
                coords: ub.iter().map(|s| Poly::constant(&self.ring, s.clone())).collect(),
            };
            for wb in w.basis() {
                let we = Element {
                    coords: wb.iter().map(|s| Poly::constant(&self.ring, s.clone())).collect(),
                };
                let prod = self.multiply(&ue, &we)?;
                rows.push(
                    prod.coords
                        .iter()
                        .map(|p| p.as_constant().expect("parameter-free product"))
                        .collect::<Vec<_>>(),
                );
            }
        }
        Ok(Subspace::from_spanning(&self.ring, self.dim, rows))
    }

    /// The power chain `A = A^1 ⊇ A^2 ⊇ ...` with
    /// `A^k = Σ_{i+j=k} A^i A^j`, stopping at the first zero power.
    /// Returns the chain (last entry is the zero subspace) and the nilindex,
    /// i.e. the first `k` with `A^k = 0`.
    pub fn powers(&self) -> Result<(Vec<Subspace>, usize), CoreError> {
        let cutoff = 1u32
            .checked_shl(self.dim as u32)
            .unwrap_or(u32::MAX)
            .max(4);
        let mut chain = vec![Subspace::full(&self.ring, self.dim)];
        loop {
            let k = chain.len() + 1; // computing A^k
            let mut acc = Subspace::zero(&self.ring, self.dim);
            for i in 1..k {
                let j = k - i;
                let prod = self.subspace_product(&chain[i - 1], &chain[j - 1])?;
                acc = acc.sum(&prod)?;
            }
            let done = acc.dim() == 0;
            chain.push(acc);
            if done {
                return Ok((chain, k));
            }
            if k as u32 >= cutoff {
                return Err(CoreError::NotNilpotentWithinBound { cutoff });
            }
        }
    }

    /// Quotient of the algebra by an ideal contained in it. The canonical
    /// complement is spanned by the standard basis vectors at the non-pivot
    /// coordinates of the ideal's RREF basis; the returned map lists those
    /// ambient coordinates in order.
    pub fn quotient_by_ideal(&self, ideal: &Subspace) -> Result<(AlgebraTable, Vec<usize>), CoreError> {
        if ideal.ambient() != self.dim {
            return Err(CoreError::DimensionMismatch);
        }
        if !self.is_parameter_free() {
            return Err(CoreError::RequiresSpecialization);
        }
        let pivots = ideal.pivots();
        let complement: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let qdim = complement.len();
        let mut products = vec![vec![Poly::zero(&self.ring); qdim]; sympair::pair_count(qdim)];
        for (a, b) in sympair::pairs(qdim) {
            let prod = self.basis_product(complement[a], complement[b]);
            let scalars: Vec<_> = prod
                .iter()
                .map(|p| p.as_constant().expect("parameter-free"))
                .collect();
            let reduced = ideal.reduce(&scalars);
            let coords: Vec<Poly> = complement
                .iter()
                .map(|&c| Poly::constant(&self.ring, reduced[c].clone()))
                .collect();
            products[sympair::pair_pos(qdim, a, b)] = coords;
        }
        Ok((
            AlgebraTable {
                ring: self.ring.clone(),
                dim: qdim,
                products,
                constraints: Vec::new(),
            },
            complement,
        ))
    }

    /// Ascending annihilator series: `Ann_1 = Ann(A)` and `Ann_{i+1}` is the
    /// preimage of `Ann(A / Ann_i)`. Stops when the series stabilizes.
    pub fn annihilator_series(&self) -> Result<Vec<Subspace>, CoreError> {
        let mut series: Vec<Subspace> = vec![self.annihilator()?];
        loop {
            let current = series.last().unwrap();
            if current.dim() == self.dim {
                return Ok(series);
            }
            let (quot, complement) = self.quotient_by_ideal(current)?;
            let qann = quot.annihilator()?;
            // lift the quotient annihilator back along the complement coords
            let mut rows: Vec<Vec<crate::scalar::Scalar>> = current.basis().to_vec();
            for v in qann.basis() {
                let mut lifted = vec![crate::scalar::Scalar::zero(self.ring.field()); self.dim];
                for (qi, &amb) in complement.iter().enumerate() {
                    lifted[amb] = v[qi].clone();
                }
                rows.push(lifted);
            }
            let next = Subspace::from_spanning(&self.ring, self.dim, rows);
            if next.dim() == current.dim() {
                return Ok(series);
            }
            series.push(next);
        }
    }

    /// Check one of the named polynomial identities.
    ///
    /// Multilinear identities (associative, CD) are verified on all basis
    /// tuples; the non-multilinear Jordan identity `(xy)x^2 = x(yx^2)` is
    /// instantiated with generic elements whose coordinates are fresh
    /// parameters. Parametric tables are allowed: `holds` is true iff every
    /// defect coefficient is the zero polynomial, so a `false` answer means
    /// the identity fails for generic admissible parameter values.
    pub fn check_identity(&self, kind: IdentityKind) -> Result<IdentityReport, CoreError> {
        match kind {
            IdentityKind::Associative => self.check_associative(),
            IdentityKind::Cd => self.check_cd(),
            IdentityKind::Jordan => self.check_jordan(),
        }
    }

    fn basis_el(&self, i: usize) -> Element {
        Element::basis(&self.ring, self.dim, i)
    }

    fn check_associative(&self) -> Result<IdentityReport, CoreError> {
        for p in 0..self.dim {
            for q in 0..self.dim {
                for r in 0..self.dim {
                    let (x, y, z) = (self.basis_el(p), self.basis_el(q), self.basis_el(r));
                    let lhs = self.multiply(&self.multiply(&x, &y)?, &z)?;
                    let rhs = self.multiply(&x, &self.multiply(&y, &z)?)?;
                    let defect = lhs.sub(&rhs)?;
                    if !defect.is_zero() {
                        return Ok(IdentityReport {
                            kind: IdentityKind::Associative,
                            holds: false,
                            witness: Some(IdentityWitness {
                                tuple: vec![p + 1, q + 1, r + 1],
                                defect: defect.coords,
                            }),
                        });
                    }
                }
            }
        }
        Ok(IdentityReport {
            kind: IdentityKind::Associative,
            holds: true,
            witness: None,
        })
    }

    /// Defect of `((xy)a)b + ((xb)a)y + x((yb)a) - ((xy)b)a - ((xa)b)y - x((ya)b)`.
    pub fn cd_defect(
        &self,
        x: &Element,
        y: &Element,
        a: &Element,
        b: &Element,
    ) -> Result<Element, CoreError> {
        let xy = self.multiply(x, y)?;
        let t1 = self.multiply(&self.multiply(&xy, a)?, b)?;
        let t2 = self.multiply(&self.multiply(&self.multiply(x, b)?, a)?, y)?;
        let t3 = self.multiply(x, &self.multiply(&self.multiply(y, b)?, a)?)?;
        let t4 = self.multiply(&self.multiply(&xy, b)?, a)?;
        let t5 = self.multiply(&self.multiply(&self.multiply(x, a)?, b)?, y)?;
        let t6 = self.multiply(x, &self.multiply(&self.multiply(y, a)?, b)?)?;
        t1.add(&t2)?.add(&t3)?.sub(&t4)?.sub(&t5)?.sub(&t6)
    }

    fn check_cd(&self) -> Result<IdentityReport, CoreError> {
        for p in 0..self.dim {
            for q in 0..self.dim {
                for r in 0..self.dim {
                    for s in 0..self.dim {
                        let defect = self.cd_defect(
                            &self.basis_el(p),
                            &self.basis_el(q),
                            &self.basis_el(r),
                            &self.basis_el(s),
                        )?;
                        if !defect.is_zero() {
                            return Ok(IdentityReport {
                                kind: IdentityKind::Cd,
                                holds: false,
                                witness: Some(IdentityWitness {
                                    tuple: vec![p + 1, q + 1, r + 1, s + 1],
                                    defect: defect.coords,
                                }),
                            });
                        }
                    }
                }
            }
        }
        Ok(IdentityReport {
            kind: IdentityKind::Cd,
            holds: true,
            witness: None,
        })
    }

    /// Lift the table into a ring with extra parameters appended.
    fn extend_ring(&self, extra: &[Param]) -> Result<(AlgebraTable, RingRef), CoreError> {
        let mut params: Vec<Param> = self.ring.params().to_vec();
        params.extend(extra.iter().cloned());
        let big = Ring::new(params, self.ring.cyclotomic_order())?;
        let mut products = Vec::with_capacity(self.products.len());
        for row in &self.products {
            let lifted: Result<Vec<Poly>, CoreError> = row.iter().map(|p| p.lift(&big)).collect();
            products.push(lifted?);
        }
        Ok((
            AlgebraTable {
                ring: big.clone(),
                dim: self.dim,
                products,
                constraints: Vec::new(),
            },
            big,
        ))
    }

    fn check_jordan(&self) -> Result<IdentityReport, CoreError> {
        // Generic coordinates; `#` cannot occur in user parameter names.
        let mut extra = Vec::new();
        for i in 1..=self.dim {
            extra.push(format!("x#{i}"));
        }
        for i in 1..=self.dim {
            extra.push(format!("y#{i}"));
        }
        let (big_table, big) = self.extend_ring(&extra)?;
        let x = Element {
            coords: (1..=self.dim)
                .map(|i| Poly::param(&big, &format!("x#{i}")).expect("fresh param"))
                .collect(),
        };
        let y = Element {
            coords: (1..=self.dim)
                .map(|i| Poly::param(&big, &format!("y#{i}")).expect("fresh param"))
                .collect(),
        };
        let xx = big_table.multiply(&x, &x)?;
        let lhs = big_table.multiply(&big_table.multiply(&x, &y)?, &xx)?;
        let rhs = big_table.multiply(&x, &big_table.multiply(&y, &xx)?)?;
        let defect = lhs.sub(&rhs)?;
        if defect.is_zero() {
            Ok(IdentityReport {
                kind: IdentityKind::Jordan,
                holds: true,
                witness: None,
            })
        } else {
            Ok(IdentityReport {
                kind: IdentityKind::Jordan,
                holds: false,
                witness: Some(IdentityWitness {
                    tuple: Vec::new(),
                    defect: defect.coords,
                }),
            })
        }
    }
}
