//! Exact elements of cyclotomic fields `Q(zeta_m)`.
//!
//! An element is a coefficient vector of length `deg(Phi_m)` over
//! arbitrary-precision rationals, fully reduced modulo the m-th cyclotomic
//! polynomial `Phi_m`. Order `m = 1` is plain `Q`. The classification
//! literature's constant `eta_k` (a fixed number with `eta_k^k = -1` and
//! `eta_k^l != 1` for `0 < l < k`) is realized as the primitive root
//! `zeta_{2k}`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::CoreError;
use crate::{Integer, Rational};

/// Univariate polynomial helpers over `Q`, coefficients listed from degree 0.
mod upoly {
    use super::*;

    pub fn trim(v: &mut Vec<Rational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn deg(v: &[Rational]) -> usize {
        debug_assert!(!v.is_empty());
        v.len() - 1
    }

    /// Exact division, panics if the remainder is nonzero (used only for
    /// `x^m - 1` by products of cyclotomic polynomials, which divides
    /// exactly).
    pub fn exact_div(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
        let (q, r) = divrem(num, den);
        debug_assert!(r.iter().all(Rational::is_zero), "division was not exact");
        q
    }

    pub fn divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem: Vec<Rational> = num.to_vec();
        trim(&mut rem);
        let mut den = den.to_vec();
        trim(&mut den);
        assert!(!den.is_empty(), "division by zero polynomial");
        if rem.is_empty() || rem.len() < den.len() {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
        let lead = den.last().unwrap().clone();
        while !rem.is_empty() && rem.len() >= den.len() {
            let shift = rem.len() - den.len();
            let coef = rem.last().unwrap() / &lead;
            quot[shift] = coef.clone();
            for (i, d) in den.iter().enumerate() {
                let t = d * &coef;
                rem[shift + i] -= t;
            }
            trim(&mut rem);
        }
        (quot, rem)
    }
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i != n / i {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// The m-th cyclotomic polynomial, coefficients from degree 0, computed by
/// dividing `x^m - 1` by `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Result<Vec<Rational>, CoreError> {
    if m == 0 {
        return Err(CoreError::InvalidCyclotomicOrder);
    }
    if m == 1 {
        return Ok(vec![-Rational::one(), Rational::one()]);
    }
    let mut num = vec![Rational::zero(); m as usize + 1];
    num[0] = -Rational::one();
    num[m as usize] = Rational::one();
    let mut result = num;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d)?;
        result = upoly::exact_div(&result, &phi_d);
    }
    Ok(result)
}

/// Ring context for one cyclotomic order: `Q(zeta_m)` together with the
/// reduction data `Phi_m`.
#[derive(Debug)]
pub struct CycField {
    m: u32,
    phi: Vec<Rational>,
}

impl CycField {
    pub fn new(m: u32) -> Result<Arc<Self>, CoreError> {
        let phi = cyclotomic_polynomial(m)?;
        Ok(Arc::new(CycField { m, phi }))
    }

    pub fn order(&self) -> u32 {
        self.m
    }

    /// Degree of the extension, `deg(Phi_m)`.
    pub fn degree(&self) -> usize {
        upoly::deg(&self.phi)
    }

    /// Reduce an arbitrary coefficient vector modulo `Phi_m` to the fixed
    /// representation length.
    fn reduce(&self, coeffs: Vec<Rational>) -> Vec<Rational> {
        let (_, mut rem) = upoly::divrem(&coeffs, &self.phi);
        rem.resize(self.degree(), Rational::zero());
        rem
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for CycField {}

/// An element of `Q(zeta_m)` in fully reduced form.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CycField>,
    c: Vec<Rational>,
}

impl Scalar {
    pub fn zero(field: &Arc<CycField>) -> Self {
        Scalar {
            field: field.clone(),
            c: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Scalar::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycField>, q: Rational) -> Self {
        let mut c = vec![Rational::zero(); field.degree()];
        // For m = 1 the representation is Q[x]/(x-1), so the constant sits in
        // the single coordinate either way.
        c[0] = q;
        Scalar { field: field.clone(), c }
    }

    pub fn from_integer(field: &Arc<CycField>, n: i64) -> Self {
        Scalar::from_rational(field, Rational::from_integer(Integer::from(n)))
    }

    /// `zeta_m^k`, the k-th power of the distinguished primitive m-th root.
    pub fn zeta_pow(field: &Arc<CycField>, k: u32) -> Self {
        let k = (k % field.m) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Scalar {
            field: field.clone(),
            c: field.reduce(coeffs),
        }
    }

    /// `eta_k := zeta_{2k}`, which satisfies `eta_k^k = -1`. Requires
    /// `2k | m`.
    pub fn eta(field: &Arc<CycField>, k: u32) -> Result<Self, CoreError> {
        if k == 0 {
            return Err(CoreError::InvalidCyclotomicOrder);
        }
        if !field.m.is_multiple_of(2 * k) {
            return Err(CoreError::RootNotInField {
                needed: 2 * k,
                have: field.m,
            });
        }
        Ok(Scalar::zeta_pow(field, field.m / (2 * k)))
    }

    /// Root of unity `zeta_d^k` for `d | m`.
    pub fn root(field: &Arc<CycField>, d: u32, k: u32) -> Result<Self, CoreError> {
        if d == 0 {
            return Err(CoreError::InvalidCyclotomicOrder);
        }
        if !field.m.is_multiple_of(d) {
            return Err(CoreError::RootNotInField { needed: d, have: field.m });
        }
        Ok(Scalar::zeta_pow(field, (field.m / d) * (k % d)))
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Rational::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), CoreError> {
        if self.field.m == other.field.m {
            Ok(())
        } else {
            Err(CoreError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, CoreError> {
        self.check_field(other)?;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Scalar { field: self.field.clone(), c })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, CoreError> {
        self.check_field(other)?;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Scalar { field: self.field.clone(), c })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, CoreError> {
        self.check_field(other)?;
        let deg = self.field.degree();
        let mut conv = vec![Rational::zero(); 2 * deg.max(1)];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        Ok(Scalar {
            field: self.field.clone(),
            c: self.field.reduce(conv),
        })
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_m` (which is irreducible over `Q`, so every nonzero element is a
    /// unit).
    pub fn inv(&self) -> Result<Scalar, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        // Extended gcd of a(x) and Phi_m(x): maintain r, u with u*a = r mod Phi.
        let mut r0: Vec<Rational> = self.field.phi.clone();
        let mut r1: Vec<Rational> = self.c.clone();
        upoly::trim(&mut r1);
        let mut u0: Vec<Rational> = Vec::new(); // u for r0
        let mut u1: Vec<Rational> = vec![Rational::one()]; // u for r1
        while !r1.is_empty() && upoly::deg(&r1) > 0 {
            let (q, r) = upoly::divrem(&r0, &r1);
            // (r0, r1) <- (r1, r0 - q r1); same for u.
            let new_u = poly_sub(&u0, &poly_mul(&q, &u1));
            r0 = r1;
            r1 = r;
            upoly::trim(&mut r1);
            u0 = u1;
            u1 = new_u;
        }
        if r1.is_empty() {
            // gcd landed in r0; can only happen if a is a multiple of Phi_m,
            // i.e. a == 0, excluded above.
            return Err(CoreError::DivisionByZero);
        }
        let lead = r1[0].clone(); // r1 is a nonzero constant
        let inv_coeffs: Vec<Rational> = u1.iter().map(|c| c / &lead).collect();
        Ok(Scalar {
            field: self.field.clone(),
            c: self.field.reduce(inv_coeffs),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, CoreError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same field");
            }
            base = base.checked_mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Raw coefficient access (degree 0 first).
    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.c == other.c
    }
}
impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if q.is_negative() { "-" } else { "+" })?;
            } else if q.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = q.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "zeta({})", self.field.m)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
