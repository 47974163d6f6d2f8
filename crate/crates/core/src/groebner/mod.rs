//! Gröbner bases of ideals and submodules of free modules, syzygies,
//! lifting (membership with witnesses), and dimension.
//!
//! Over a quotient ring `R = S/J` every computation happens in `S` with the
//! generators of `J e_c` appended, so bases are bases of the preimage in `S^r`.

pub mod engine;
pub mod ideal;
pub mod resolution;

use crate::error::Result;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;
use engine::{Ctx, Term, Vector};

pub use ideal::{Codim, Ideal};
pub use resolution::FreeResolution;

/// Column vector of `R^r` as a raw vector with components starting at `offset`.
pub(crate) fn vector_of(ctx: &Ctx, col: &[Poly], offset: usize) -> Vector {
    let mut v = Vec::new();
    for (i, p) in col.iter().enumerate() {
        v.extend(p.to_vector((offset + i) as u32));
    }
    ctx.normalize(v)
}

/// Components `[start, start + len)` of a raw vector as polynomials.
pub(crate) fn column_of(ring: &Ring, v: &[Term], start: usize, len: usize) -> Vec<Poly> {
    let mut parts: Vec<Vec<(Monomial, crate::field::Coeff)>> = vec![Vec::new(); len];
    for t in v {
        let c = t.comp as usize;
        if c >= start && c < start + len {
            parts[c - start].push((t.mon, t.coef.clone()));
        }
    }
    parts.into_iter().map(|terms| Poly::from_terms(ring, terms)).collect()
}

pub(crate) fn is_zero_col(col: &[Poly]) -> bool {
    col.iter().all(|p| p.is_zero())
}

/// Krull dimension of `S / in(J)` from the leading monomials of a Gröbner
/// basis: the largest set of variables containing the support of no lead.
/// Returns -1 for the unit ideal.
pub fn dimension_from_leads(nvars: usize, gb: &[Vector]) -> i64 {
    let masks: Vec<u32> = gb.iter().filter_map(|g| g.first()).map(|t| t.mon.support_mask()).collect();
    if masks.contains(&0) {
        return -1;
    }
    let mut best = 0i64;
    for subset in 0u32..(1u32 << nvars) {
        let size = subset.count_ones() as i64;
        if size <= best {
            continue;
        }
        if masks.iter().all(|&m| m & !subset != 0) {
            best = size;
        }
    }
    best
}

/// A reduced Gröbner basis of an ideal (`rank == 1`) or of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    rank: usize,
    ctx: Ctx,
    elements: Vec<Vector>,
}

impl GroebnerBasis {
    /// Basis of the submodule generated by `cols` (each of length `rank`),
    /// including the quotient relations of the ring.
    pub fn of_module(ring: &Ring, rank: usize, cols: &[Vec<Poly>]) -> GroebnerBasis {
        let ctx = ring.ctx();
        let mut gens: Vec<Vector> = cols.iter().map(|c| vector_of(&ctx, c, 0)).collect();
        gens.extend(ring.quotient_module_gens(rank));
        let elements = ctx.groebner(gens);
        GroebnerBasis {
            ring: ring.clone(),
            rank,
            ctx,
            elements,
        }
    }

    pub fn of_ideal(ring: &Ring, gens: &[Poly]) -> GroebnerBasis {
        let cols: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::of_module(ring, 1, &cols)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn raw(&self) -> &[Vector] {
        &self.elements
    }

    /// Basis elements as polynomials of the ambient ring `S` (ideal case).
    pub fn polys(&self) -> Vec<Poly> {
        let s = self.ring.ambient();
        self.elements.iter().map(|v| Poly::from_vector_unreduced(&s, v)).collect()
    }

    /// Basis elements as columns over the ambient ring.
    pub fn columns(&self) -> Vec<Vec<Poly>> {
        let s = self.ring.ambient();
        self.elements.iter().map(|v| column_of(&s, v, 0, self.rank)).collect()
    }

    /// Basis elements that are nonzero in `R` (drops members of the quotient ideal).
    pub fn generators(&self) -> Vec<Vec<Poly>> {
        self.elements
            .iter()
            .map(|v| column_of(&self.ring, v, 0, self.rank))
            .filter(|c| !is_zero_col(c))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<(u32, Monomial)> {
        self.elements.iter().map(|v| (v[0].comp, v[0].mon)).collect()
    }

    pub fn normal_form_vec(&self, col: &[Poly]) -> Vec<Poly> {
        let v = vector_of(&self.ctx, col, 0);
        let r = self.ctx.reduce(v, &self.elements);
        column_of(&self.ring, &r, 0, self.rank)
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.normal_form_vec(std::slice::from_ref(p)).remove(0)
    }

    pub fn contains_vec(&self, col: &[Poly]) -> bool {
        let v = vector_of(&self.ctx, col, 0);
        self.ctx.reduce_top(v, &self.elements).is_empty()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.contains_vec(std::slice::from_ref(p))
    }

    /// True when the submodule is all of `R^rank`.
    pub fn is_everything(&self) -> bool {
        let mut units = vec![false; self.rank];
        for v in &self.elements {
            if v[0].mon.is_one() {
                units[v[0].comp as usize] = true;
            }
        }
        units.into_iter().all(|b| b)
    }

    /// Checks the S-pair criterion exhaustively.
    pub fn verify(&self) -> bool {
        self.ctx.is_groebner(&self.elements)
    }

    /// Reduced, all S-pairs reduce to zero, leading coefficients one.
    pub fn is_reduced(&self) -> bool {
        let f = self.ring.field();
        for (k, v) in self.elements.iter().enumerate() {
            if !f.is_one(&v[0].coef) {
                return false;
            }
            for (o, w) in self.elements.iter().enumerate() {
                if o == k {
                    continue;
                }
                if v.iter().any(|t| t.comp == w[0].comp && w[0].mon.divides(&t.mon)) {
                    return false;
                }
            }
        }
        true
    }

    /// Canonical text of the basis: one column per element.
    pub fn to_strings(&self) -> Vec<String> {
        self.columns()
            .iter()
            .map(|c| {
                if self.rank == 1 {
                    c[0].to_string()
                } else {
                    format!("[{}]", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
                }
            })
            .collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
/// With an order different from the ring's, the result lives in the
/// re-ordered ring (available via [`GroebnerBasis::ring`]).
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(crate::error::Error::InvalidInput("no generators given; ring unknown".into()));
    };
    let ring = first.ring().clone();
    for g in gens {
        ring.check(g)?;
    }
    let target = ring.with_order(order);
    let moved: Vec<Poly> = gens.iter().map(|g| g.transfer(&target)).collect();
    Ok(GroebnerBasis::of_ideal(&target, &moved))
}

/// Normal form of `p` modulo a Gröbner basis.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

/// Augmented ("Schreyer") basis for generators `g_1..g_n` of a submodule of
/// `R^r`: the Gröbner basis of `(g_i, e_i) ⊂ S^{r+n}` under an order that
/// eliminates the first `r` components. Elements whose lead falls in the
/// tail block are syzygies; reducing `(v, 0)` expresses `v` in the `g_i`.
#[derive(Clone, Debug)]
pub struct Lifter {
    ring: Ring,
    rank: usize,
    ngens: usize,
    ctx: Ctx,
    gb: Vec<Vector>,
}

impl Lifter {
    pub fn new(ring: &Ring, rank: usize, cols: &[Vec<Poly>]) -> Lifter {
        let ctx = ring.elim_ctx(rank);
        let mut gens: Vec<Vector> = Vec::with_capacity(cols.len());
        for (i, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rank);
            let mut v = vector_of(&ctx, c, 0);
            v.push(Term {
                comp: (rank + i) as u32,
                mon: Monomial::one(ring.nvars()),
                coef: ring.field().one(),
            });
            gens.push(ctx.normalize(v));
        }
        gens.extend(ring.quotient_module_gens(rank));
        let gb = ctx.groebner(gens);
        Lifter {
            ring: ring.clone(),
            rank,
            ngens: cols.len(),
            ctx,
            gb,
        }
    }

    /// Generators of the syzygy module, as columns of length `ngens`.
    pub fn syzygies(&self) -> Vec<Vec<Poly>> {
        let mut out: Vec<Vec<Poly>> = Vec::new();
        for v in &self.gb {
            if (v[0].comp as usize) < self.rank {
                continue;
            }
            let c = column_of(&self.ring, v, self.rank, self.ngens);
            if !is_zero_col(&c) && !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Coefficients `c` with `v = Σ c_i g_i`, if `v` lies in the submodule.
    pub fn lift(&self, col: &[Poly]) -> Option<Vec<Poly>> {
        let v = vector_of(&self.ctx, col, 0);
        let r = self.ctx.reduce_top(v, &self.gb);
        if let Some(t) = r.first() {
            if (t.comp as usize) < self.rank {
                return None;
            }
        }
        let c = column_of(&self.ring, &r, self.rank, self.ngens);
        Some(c.iter().map(|p| -p).collect())
    }
}

/// Generators of the kernel of `R^n -> R^r` given by the columns.
pub fn syzygies(ring: &Ring, rank: usize, cols: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    if cols.is_empty() {
        return Vec::new();
    }
    Lifter::new(ring, rank, cols).syzygies()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring() -> Ring {
        Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Poly {
        r.parse(s).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let r = ring();
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u"), p(&r, "v")]);
        assert_eq!(gb.to_strings(), vec!["v", "u"]);
    }

    #[test]
    fn linear_change_of_generators() {
        let r = ring();
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u-v"), p(&r, "u+v")]);
        let mut s = gb.to_strings();
        s.sort();
        assert_eq!(s, vec!["u", "v"]);
    }

    #[test]
    fn normal_forms() {
        let r = ring();
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u-v")]);
        assert_eq!(gb.normal_form(&p(&r, "u^2")), p(&r, "v^2"));
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u"), p(&r, "v")]);
        assert!(gb.normal_form(&p(&r, "u")).is_zero());
        assert_eq!(gb.normal_form(&p(&r, "w")), p(&r, "w"));
    }

    #[test]
    fn koszul_syzygy_of_two() {
        let r = ring();
        let s = syzygies(&r, 1, &[vec![p(&r, "u")], vec![p(&r, "v")]]);
        assert_eq!(s.len(), 1);
        let c = &s[0];
        // proportional to (-v, u)
        assert!(c[0] == p(&r, "-v") && c[1] == p(&r, "u") || c[0] == p(&r, "v") && c[1] == p(&r, "-u"));
    }

    #[test]
    fn repeated_generator_syzygy() {
        let r = ring();
        let s = syzygies(&r, 1, &[vec![p(&r, "u")], vec![p(&r, "u")]]);
        let gb = GroebnerBasis::of_module(&r, 2, &s);
        assert!(gb.contains_vec(&[r.one(), p(&r, "-1")]));
    }

    #[test]
    fn lifting_gives_a_witness() {
        let r = ring();
        let gens = vec![vec![p(&r, "u")], vec![p(&r, "v")]];
        let l = Lifter::new(&r, 1, &gens);
        let c = l.lift(&[p(&r, "u*w + v^2")]).unwrap();
        let back = &(&c[0] * &p(&r, "u")) + &(&c[1] * &p(&r, "v"));
        assert_eq!(back, p(&r, "u*w + v^2"));
        assert!(l.lift(&[p(&r, "w")]).is_none());
    }

    #[test]
    fn dimension_of_lead_ideals() {
        let r = ring();
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u"), p(&r, "v")]);
        assert_eq!(dimension_from_leads(3, gb.raw()), 1);
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u^2+v^2"), p(&r, "w")]);
        assert_eq!(dimension_from_leads(3, gb.raw()), 1);
        let gb = GroebnerBasis::of_ideal(&r, &[p(&r, "u+1"), p(&r, "u")]);
        assert_eq!(dimension_from_leads(3, gb.raw()), -1);
    }
}
