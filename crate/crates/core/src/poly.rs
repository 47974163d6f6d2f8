//! Polynomials in canonical form over a [`Ring`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::groebner::engine::{Term, Vector};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::Ring;

/// Terms strictly descending in the ring's order, no zero coefficients,
/// reduced modulo the ring's quotient ideal.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: Coeff) -> Poly {
        if ring.field().is_zero(&c) {
            return Poly::zero(ring);
        }
        Poly::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Poly {
        let v: Vector = terms
            .into_iter()
            .map(|(mon, coef)| Term { comp: 0, mon, coef })
            .collect();
        let v = ring.ctx().normalize(v);
        Poly::from_vector(ring, &v)
    }

    /// Component-0 slice of a raw vector, normal-formed modulo the quotient.
    pub(crate) fn from_vector(ring: &Ring, v: &[Term]) -> Poly {
        let v = ring.reduce_vector(v.to_vec());
        Poly::from_vector_unreduced(ring, &v)
    }

    pub(crate) fn from_vector_unreduced(ring: &Ring, v: &[Term]) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: v.iter().map(|t| (t.mon, t.coef.clone())).collect(),
        }
    }

    pub(crate) fn to_vector(&self, comp: u32) -> Vector {
        self.terms
            .iter()
            .map(|(m, c)| Term {
                comp,
                mon: *m,
                coef: c.clone(),
            })
            .collect()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.ring.field().is_one(&self.terms[0].1)
    }

    /// Nonzero constant (a unit of the polynomial ring).
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_nonzero_constant()
    }

    pub fn constant_term(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Leading term under an arbitrary order (the stored order need not match).
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Monomial, Coeff)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn checked(op: ArithOp, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", a.ring, b.ring)));
        }
        Ok(match op {
            ArithOp::Add => a.add_impl(b, false),
            ArithOp::Sub => a.add_impl(b, true),
            ArithOp::Mul => a.mul_impl(b),
        })
    }

    fn add_impl(&self, b: &Poly, negate: bool) -> Poly {
        let f = self.ring.field();
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        let bc = |c: &Coeff| if negate { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < b.terms.len() {
            match ord.cmp(&self.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.terms[j].0, bc(&b.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(&self.terms[i].1, &bc(&b.terms[j].1));
                    if !f.is_zero(&s) {
                        out.push((self.terms[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(b.terms[j..].iter().map(|(m, c)| (*m, bc(c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, b: &Poly) -> Poly {
        if self.is_zero() || b.is_zero() {
            return Poly::zero(&self.ring);
        }
        let f = self.ring.field();
        if b.terms.len() == 1 && b.terms[0].0.is_one() {
            return self.scale(&b.terms[0].1);
        }
        if self.terms.len() == 1 && self.terms[0].0.is_one() {
            return b.scale(&self.terms[0].1);
        }
        let ctx = self.ring.ctx();
        // accumulate row by row; each row is already sorted
        let (small, big) = if self.terms.len() <= b.terms.len() { (self, b) } else { (b, self) };
        let big_v = big.to_vector(0);
        let mut acc: Vector = Vec::new();
        for (m, c) in &small.terms {
            acc = ctx.add_scaled(&acc, c, m, &big_v);
        }
        let _ = f;
        Poly::from_vector(&self.ring, &acc)
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (*m, f.mul(d, c))).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Poly {
        self.scale(&self.ring.field().from_i64(n))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coeff) -> Poly {
        let v = self.ring.ctx().scale(&self.to_vector(0), c);
        let v: Vector = v
            .into_iter()
            .map(|t| Term {
                comp: 0,
                mon: t.mon.mul(m),
                coef: t.coef,
            })
            .collect();
        Poly::from_vector(&self.ring, &v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = self.ring.one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Monic multiple (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.field().inv(c)),
        }
    }

    /// Formal partial derivative in variable `i` of the stored representative.
    pub fn derivative(&self, i: usize) -> Poly {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let mut ex = m.exponents();
                ex[i] -= 1;
                (Monomial::from_exponents(&ex), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Exact quotient `self / d` in the ambient polynomial ring, if it exists.
    pub fn div_exact_poly(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero());
        let ctx = self.ring.ctx();
        let f = self.ring.field();
        let dv = d.to_vector(0);
        let mut rest = self.to_vector(0);
        let mut q: Vec<(Monomial, Coeff)> = Vec::new();
        while let Some(t) = rest.first() {
            if !dv[0].mon.divides(&t.mon) {
                return None;
            }
            let qm = dv[0].mon.quotient_of(&t.mon);
            let qc = f.div(&t.coef, &dv[0].coef);
            rest = ctx.add_scaled(&rest, &f.neg(&qc), &qm, &dv);
            q.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, q))
    }

    /// Moves the polynomial into a ring with the same leading variable names
    /// (extra variables allowed), re-sorting and re-reducing.
    pub fn transfer(&self, target: &Ring) -> Poly {
        assert!(target.nvars() >= self.ring.nvars());
        let n = target.nvars();
        Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.extend(n), c.clone())).collect(),
        )
    }

    /// Value with every variable substituted by a constant.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        let f = self.ring.field();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, p) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = f.mul(&t, p);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Substitutes polynomials for variables (images must live in `target`).
    pub fn substitute(&self, images: &[Poly], target: &Ring) -> Poly {
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.coeff_poly(c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = &t * img;
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::checked(ArithOp::Add, self, rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::checked(ArithOp::Sub, self, rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::checked(ArithOp::Mul, self, rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, name) in names.iter().enumerate() {
        let e = m.exponent(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Task-file syntax: `2*u^2*v - 1/3*w`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if field.is_one(&abs) {
                write_monomial(f, m, names)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, m, names)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring() -> Ring {
        Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn cancellation() {
        let r = ring();
        let a = r.parse("u + v").unwrap();
        let b = r.parse("-v").unwrap();
        assert_eq!(&a + &b, r.parse("u").unwrap());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let p = &r.parse("u+v").unwrap() * &r.parse("u-v").unwrap();
        assert_eq!(p, r.parse("u^2 - v^2").unwrap());
    }

    #[test]
    fn prime_field_product() {
        let r = Ring::polynomial(Field::prime(5).unwrap(), &["u", "v"], MonomialOrder::GrevLex).unwrap();
        let p = &r.parse("2*u").unwrap() * &r.parse("3*u").unwrap();
        assert_eq!(p, r.parse("u^2").unwrap());
    }

    #[test]
    fn leading_terms_under_each_order() {
        let r = Ring::polynomial(Field::Rational, &["u", "v"], MonomialOrder::GrevLex).unwrap();
        let p = r.parse("u^2*v + u*v^2").unwrap();
        assert_eq!(p.leading_term(MonomialOrder::GrevLex).unwrap().0, Monomial::from_exponents(&[2, 1]));
        let q = r.parse("u + v^2").unwrap();
        assert_eq!(q.leading_term(MonomialOrder::Lex).unwrap().0, Monomial::from_exponents(&[1, 0]));
        assert_eq!(q.leading_term(MonomialOrder::GrevLex).unwrap().0, Monomial::from_exponents(&[0, 2]));
        assert_eq!(r.zero().leading_term(MonomialOrder::Lex), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = ring();
        let s = Ring::polynomial(Field::Rational, &["x"], MonomialOrder::GrevLex).unwrap();
        assert!(matches!(
            Poly::checked(ArithOp::Add, &r.one(), &s.one()),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn quotient_ring_normal_forms_products() {
        let r = ring();
        let q = r.quotient(&[r.parse("u*v - w^2").unwrap()], true).unwrap();
        let p = &q.parse("u").unwrap() * &q.parse("v").unwrap();
        assert_eq!(p, q.parse("w^2").unwrap());
        assert_eq!(q.dim(), 2);
        assert_eq!(r.dim(), 3);
    }

    #[test]
    fn display_round_trips() {
        let r = ring();
        for s in ["2*u^2*v - 1/3*w", "-u + 7", "u*v*w - u^3", "0"] {
            let p = r.parse(s).unwrap();
            assert_eq!(r.parse(&p.to_string()).unwrap(), p);
        }
        assert_eq!(r.parse("2*u^2*v - 1/3*w").unwrap().to_string(), "2*u^2*v - 1/3*w");
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let a = r.parse("u^2 - v^2").unwrap();
        let d = r.parse("u - v").unwrap();
        assert_eq!(a.div_exact_poly(&d).unwrap(), r.parse("u+v").unwrap());
        assert!(r.parse("u^2 + v").unwrap().div_exact_poly(&d).is_none());
    }
}
