//! Sparse multivariate polynomials in named parameters over `Q(zeta_m)`.
//!
//! A ring context fixes an ordered parameter list and a cyclotomic order once
//! per computation; there is no dynamic ring extension mid-computation.
//! Monomials are exponent vectors over the fixed list, kept in a `BTreeMap`
//! whose lexicographic key order doubles as the canonical monomial order.
//! Two polynomials are equal iff their stored maps are identical; zero
//! coefficients are never stored.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::CoreError;
use crate::scalar::{CycField, Scalar};
use crate::Rational;

/// Parameter name. Names are unique within one ring context.
pub type Param = String;

/// Assignment of field values to (a subset of) the parameters.
pub type Assignment = BTreeMap<Param, Scalar>;

/// Ring context: ordered parameter list plus the coefficient field.
/// Equality is structural: same parameter list, same cyclotomic order.
#[derive(Debug)]
pub struct Ring {
    params: Vec<Param>,
    field: Arc<CycField>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}
impl Eq for Ring {}

/// Shared handle to a ring context.
pub type RingRef = Arc<Ring>;

impl Ring {
    /// Build the polynomial ring `Q(zeta_m)[params]`. Parameter names must
    /// be distinct.
    pub fn new(params: Vec<Param>, m: u32) -> Result<RingRef, CoreError> {
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(CoreError::RingMismatch);
            }
        }
        Ok(Arc::new(Ring {
            params,
            field: CycField::new(m)?,
        }))
    }

    /// Plain `Q` with no parameters.
    pub fn rational() -> RingRef {
        Ring::new(Vec::new(), 1).expect("Q is always constructible")
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.field.order()
    }

    pub fn same_ring(&self, other: &Ring) -> bool {
        self.params == other.params && self.field.order() == other.field.order()
    }
}

/// Sparse multivariate polynomial. Keys are exponent vectors of length
/// `ring.params().len()`.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Poly::constant(ring, Scalar::one(ring.field()))
    }

    /// Degree-0 embedding of a field element.
    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; ring.params().len()], c);
        }
        Poly { ring: ring.clone(), terms }
    }

    pub fn from_rational(ring: &RingRef, q: Rational) -> Self {
        Poly::constant(ring, Scalar::from_rational(ring.field(), q))
    }

    pub fn from_integer(ring: &RingRef, n: i64) -> Self {
        Poly::constant(ring, Scalar::from_integer(ring.field(), n))
    }

    /// The parameter `name` as a polynomial.
    pub fn param(ring: &RingRef, name: &str) -> Option<Self> {
        let idx = ring.param_index(name)?;
        let mut exp = vec![0; ring.params().len()];
        exp[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Scalar::one(ring.field()));
        Some(Poly { ring: ring.clone(), terms })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant value if the polynomial is parameter-free.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero(self.ring.field()));
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, Scalar>, exp: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(&c).expect("same field");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), CoreError> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(CoreError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, CoreError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, CoreError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, CoreError> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca.checked_mul(cb)?;
                Self::insert_term(&mut terms, exp, c);
            }
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.checked_mul(c).expect("same field")))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Replace the listed parameters by field values; remaining parameters
    /// stay untouched. Keys not in the ring are rejected.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Poly, CoreError> {
        let mut slots: Vec<Option<Scalar>> = vec![None; self.ring.params().len()];
        for (name, val) in assignment {
            let idx = self.ring.param_index(name).ok_or(CoreError::RingMismatch)?;
            if val.field().order() != self.ring.cyclotomic_order() {
                return Err(CoreError::RingMismatch);
            }
            slots[idx] = Some(val.clone());
        }
        let mut terms = BTreeMap::new();
        for (exp, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut new_exp = exp.clone();
            for (i, slot) in slots.iter().enumerate() {
                if let Some(v) = slot {
                    if exp[i] > 0 {
                        c = c.checked_mul(&v.pow(exp[i]))?;
                        new_exp[i] = 0;
                    }
                }
            }
            Self::insert_term(&mut terms, new_exp, c);
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    /// Image of this polynomial in a ring with more parameters (matched by
    /// name). Fails if some parameter of `self` is absent from `target`.
    pub fn lift(&self, target: &RingRef) -> Result<Poly, CoreError> {
        if target.cyclotomic_order() != self.ring.cyclotomic_order() {
            return Err(CoreError::RingMismatch);
        }
        let map: Option<Vec<usize>> = self
            .ring
            .params()
            .iter()
            .map(|p| target.param_index(p))
            .collect();
        let map = map.ok_or(CoreError::RingMismatch)?;
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut new_exp = vec![0u32; target.params().len()];
            for (i, &e) in exp.iter().enumerate() {
                new_exp[map[i]] = e;
            }
            terms.insert(new_exp, c.clone());
        }
        Ok(Poly { ring: target.clone(), terms })
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Iterate terms in the canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (exp, coeff)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let has_vars = exp.iter().any(|&e| e > 0);
            if !has_vars || !coeff.is_one() {
                let s = alloc::format!("{coeff}");
                // multi-term field elements need parentheses in term position
                if has_vars && s.contains(' ') {
                    write!(f, "({s})")?;
                } else {
                    write!(f, "{s}")?;
                }
                if has_vars {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.params()[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial asserted nonzero on admissible parameter values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    poly: Poly,
    label: String,
}

impl Constraint {
    pub fn new(poly: Poly, label: &str) -> Result<Self, CoreError> {
        if poly.is_zero() {
            return Err(CoreError::ZeroConstraint);
        }
        Ok(Constraint {
            poly,
            label: label.to_owned(),
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Check an assignment against this constraint. Fully evaluated
    /// constraints must be nonzero; partially substituted ones must stay
    /// nonzero as polynomials.
    pub fn admits(&self, assignment: &Assignment) -> Result<(), CoreError> {
        let image = self.poly.substitute(assignment)?;
        if image.is_zero() {
            return Err(CoreError::ConstraintViolated {
                constraint: self.label.clone(),
            });
        }
        Ok(())
    }
}
