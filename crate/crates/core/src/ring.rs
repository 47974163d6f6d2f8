//! Ring descriptors: `k[x_1..x_n]` or a quotient `k[x_1..x_n]/J`.
//!
//! A quotient ring carries the reduced Gröbner basis of `J` for its monomial
//! order; every product is normal-formed against it, so a polynomial's
//! terms are always the canonical representative of its class.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::groebner::engine::{Ctx, Term, Vector};
use crate::monomial::{ModuleOrder, Monomial, MonomialOrder, MAX_VARS};
use crate::poly::Poly;

#[derive(Debug)]
struct RingData {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    /// Reduced GB (comp 0) of the defining ideal, empty for polynomial rings.
    quotient: Vec<Vector>,
    /// Caller-asserted domain property for quotient rings.
    domain: bool,
    dim: OnceLock<i64>,
}

#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.vars == other.0.vars
                && self.0.order == other.0.order
                && self.0.quotient == other.0.quotient)
    }
}
impl Eq for Ring {}

impl Ring {
    pub fn polynomial(field: Field, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        Self::build(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
            Vec::new(),
            true,
        )
    }

    fn build(
        field: Field,
        vars: Vec<String>,
        order: MonomialOrder,
        quotient: Vec<Vector>,
        domain: bool,
    ) -> Result<Ring> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::InvalidInput(format!(
                "variable count must be between 1 and {MAX_VARS}"
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingData {
            field,
            vars,
            order,
            quotient,
            domain,
            dim: OnceLock::new(),
        })))
    }

    /// `self / (relations)`. `domain` records the caller's assertion that the
    /// quotient is an integral domain (it is not verified).
    pub fn quotient(&self, relations: &[Poly], domain: bool) -> Result<Ring> {
        for r in relations {
            self.check(r)?;
        }
        let ctx = self.ctx();
        let mut gens: Vec<Vector> = self.0.quotient.clone();
        gens.extend(relations.iter().map(|p| p.to_vector(0)));
        let gb = ctx.groebner(gens);
        if gb.iter().any(|g| g[0].mon.is_one()) {
            return Err(Error::InvalidInput("quotient by the unit ideal".into()));
        }
        Self::build(
            self.0.field,
            self.0.vars.clone(),
            self.0.order,
            gb,
            domain,
        )
    }

    /// The same ring presented with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        if order == self.0.order {
            return self.clone();
        }
        let mut r = Self::build(self.0.field, self.0.vars.clone(), order, Vec::new(), true).unwrap();
        if self.is_quotient() {
            let rels: Vec<Poly> = self.quotient_relations().iter().map(|p| p.transfer(&r)).collect();
            r = r.quotient(&rels, self.0.domain).unwrap();
        }
        r
    }

    /// Ambient polynomial ring `S` of a quotient `S/J` (or `self`).
    pub fn ambient(&self) -> Ring {
        if !self.is_quotient() {
            return self.clone();
        }
        Self::build(self.0.field, self.0.vars.clone(), self.0.order, Vec::new(), true).unwrap()
    }

    /// Appends fresh variables (polynomial ring only, quotient relations carried over).
    pub fn with_extra_vars(&self, names: &[&str]) -> Result<Ring> {
        let mut vars = self.0.vars.clone();
        vars.extend(names.iter().map(|s| s.to_string()));
        let base = Self::build(self.0.field, vars, self.0.order, Vec::new(), true)?;
        if !self.is_quotient() {
            return Ok(base);
        }
        let rels: Vec<Poly> = self.quotient_relations().iter().map(|p| p.transfer(&base)).collect();
        base.quotient(&rels, self.0.domain)
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn is_quotient(&self) -> bool {
        !self.0.quotient.is_empty()
    }

    pub fn is_domain(&self) -> bool {
        self.0.domain
    }

    pub fn quotient_relations(&self) -> Vec<Poly> {
        self.0
            .quotient
            .iter()
            .map(|v| Poly::from_vector_unreduced(self, v))
            .collect()
    }

    /// Gröbner context for submodules of `R^r` (term-over-position).
    pub fn ctx(&self) -> Ctx {
        Ctx::new(self.0.field, ModuleOrder::top(self.0.order), self.nvars())
    }

    /// Context whose components `>= block_start` are eliminated last.
    pub fn elim_ctx(&self, block_start: usize) -> Ctx {
        Ctx::new(
            self.0.field,
            ModuleOrder::eliminating(self.0.order, block_start as u32),
            self.nvars(),
        )
    }

    /// Generators `J e_c` for each component `c < rank` (empty over `S`).
    pub(crate) fn quotient_module_gens(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::new();
        for c in 0..rank {
            for g in &self.0.quotient {
                out.push(
                    g.iter()
                        .map(|t| Term {
                            comp: c as u32,
                            mon: t.mon,
                            coef: t.coef.clone(),
                        })
                        .collect(),
                );
            }
        }
        out
    }

    /// Normal form of a vector modulo `J` componentwise.
    pub(crate) fn reduce_vector(&self, v: Vector) -> Vector {
        if !self.is_quotient() || v.is_empty() {
            return v;
        }
        let ctx = self.ctx();
        let mut by_comp: std::collections::BTreeMap<u32, Vector> = Default::default();
        for t in v {
            by_comp.entry(t.comp).or_default().push(t);
        }
        let mut out = Vec::new();
        for (c, part) in by_comp {
            let flat: Vector = part
                .into_iter()
                .map(|t| Term {
                    comp: 0,
                    mon: t.mon,
                    coef: t.coef,
                })
                .collect();
            let flat = ctx.normalize(flat);
            for t in ctx.reduce(flat, &self.0.quotient) {
                out.push(Term {
                    comp: c,
                    mon: t.mon,
                    coef: t.coef,
                });
            }
        }
        ctx.normalize(out)
    }

    pub fn check(&self, p: &Poly) -> Result<()> {
        if p.ring() != self {
            return Err(Error::RingMismatch(format!(
                "polynomial over {} used in {}",
                p.ring(),
                self
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self, self.0.field.one())
    }

    pub fn constant(&self, n: i64) -> Poly {
        Poly::constant(self, self.0.field.from_i64(n))
    }

    pub fn coeff_poly(&self, c: Coeff) -> Poly {
        Poly::constant(self, c)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(self, Monomial::var(self.nvars(), i), self.0.field.one())
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        crate::parse::parse_poly(self, s)
    }

    /// Krull dimension of the ring.
    pub fn dim(&self) -> i64 {
        *self.0.dim.get_or_init(|| {
            crate::groebner::dimension_from_leads(self.nvars(), &self.0.quotient)
        })
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.vars.join(","))?;
        if self.is_quotient() {
            let rels: Vec<String> = self.quotient_relations().iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}
