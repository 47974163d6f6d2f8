//! Finite free algebras given by structure constants, quaternion algebras,
//! regular representations and reduced norms, the enveloping-map Azumaya
//! test, and left modules over such an algebra presented by algebra-valued
//! matrices (with their R-level unfolding) together with endomorphism
//! algebras.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fpmod::{hom, FPModule};
use crate::groebner::{syzygies, Codim, Ideal, Lifter};
use crate::matrix::{checked_div, Matrix};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Debug)]
struct AlgebraData {
    ring: Ring,
    names: Vec<String>,
    /// `consts[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
    consts: Vec<Vec<Vec<Poly>>>,
    unit: Vec<Poly>,
    involution: Option<Matrix>,
    label: String,
}

/// A free `R`-algebra of finite rank given by structure constants.
#[derive(Clone, Debug)]
pub struct SCAlgebra(Arc<AlgebraData>);

impl PartialEq for SCAlgebra {
    fn eq(&self, other: &SCAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.names == other.0.names && self.0.consts == other.0.consts)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgElem {
    pub algebra: SCAlgebra,
    pub coords: Vec<Poly>,
}

impl SCAlgebra {
    /// Checked constructor: associativity on all basis triples, the unit on
    /// both sides, and (if given) the involution's identities.
    pub fn new(
        ring: &Ring,
        names: Vec<String>,
        consts: Vec<Vec<Vec<Poly>>>,
        unit: Vec<Poly>,
        involution: Option<Matrix>,
        label: &str,
    ) -> Result<SCAlgebra> {
        let n = names.len();
        if n == 0 || consts.len() != n || consts.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::InvalidInput("structure constants must form an n×n×n array".into()));
        }
        if unit.len() != n {
            return Err(Error::InvalidInput("unit vector has the wrong length".into()));
        }
        let a = SCAlgebra(Arc::new(AlgebraData {
            ring: ring.clone(),
            names,
            consts,
            unit,
            involution,
            label: label.to_string(),
        }));
        if !a.is_associative() {
            return Err(Error::InvalidInput("structure constants are not associative".into()));
        }
        let one = a.one();
        for i in 0..n {
            let e = a.basis(i);
            if a.mul(&one, &e) != e || a.mul(&e, &one) != e {
                return Err(Error::InvalidInput("unit vector is not a two-sided unit".into()));
            }
        }
        if a.0.involution.is_some() && !a.involution_ok() {
            return Err(Error::InvalidInput(
                "involution is not an anti-automorphism with central norms and traces".into(),
            ));
        }
        Ok(a)
    }

    /// `(a, b)`: basis `1, i, j, k` with `i² = a`, `j² = b`, `ij = k = -ji`.
    pub fn quaternion(ring: &Ring, a: &Poly, b: &Poly) -> Result<SCAlgebra> {
        if ring.field().characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        for x in [a, b] {
            ring.check(x)?;
            if !Ideal::new(ring, vec![x.clone()])?.is_unit() {
                return Err(Error::Precondition(format!("{x} is not a unit of the base ring")));
            }
        }
        let z = ring.zero();
        let one = ring.one();
        let ab = a * b;
        let mut c = vec![vec![vec![z.clone(); 4]; 4]; 4];
        let mut put = |i: usize, j: usize, k: usize, v: Poly| c[i][j][k] = v;
        for x in 0..4 {
            put(0, x, x, one.clone());
            put(x, 0, x, one.clone());
        }
        put(1, 1, 0, a.clone());
        put(2, 2, 0, b.clone());
        put(3, 3, 0, -&ab);
        put(1, 2, 3, one.clone());
        put(2, 1, 3, -&one);
        put(1, 3, 2, a.clone());
        put(3, 1, 2, -a);
        put(2, 3, 1, -b);
        put(3, 2, 1, b.clone());
        let mut inv = Matrix::identity(ring, 4);
        for x in 1..4 {
            inv.set(x, x, -&one);
        }
        let mut unit = vec![z; 4];
        unit[0] = one;
        SCAlgebra::new(
            ring,
            ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect(),
            c,
            unit,
            Some(inv),
            &format!("quaternion({a}, {b})"),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn rank(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Poly>>> {
        &self.0.consts
    }

    pub fn has_involution(&self) -> bool {
        self.0.involution.is_some()
    }

    pub fn element(&self, coords: Vec<Poly>) -> Result<AlgElem> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidInput("element has the wrong number of coordinates".into()));
        }
        for c in &coords {
            self.ring().check(c)?;
        }
        Ok(AlgElem {
            algebra: self.clone(),
            coords,
        })
    }

    pub fn zero(&self) -> AlgElem {
        self.element(vec![self.ring().zero(); self.rank()]).unwrap()
    }

    pub fn one(&self) -> AlgElem {
        self.element(self.0.unit.clone()).unwrap()
    }

    pub fn basis(&self, i: usize) -> AlgElem {
        let mut c = vec![self.ring().zero(); self.rank()];
        c[i] = self.ring().one();
        self.element(c).unwrap()
    }

    pub fn scalar(&self, r: &Poly) -> AlgElem {
        self.element(self.0.unit.iter().map(|u| u * r).collect()).unwrap()
    }

    pub fn add(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        self.element(x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect()).unwrap()
    }

    pub fn neg(&self, x: &AlgElem) -> AlgElem {
        self.element(x.coords.iter().map(|a| -a).collect()).unwrap()
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let n = self.rank();
        let r = self.ring();
        let mut out = vec![r.zero(); n];
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.coords[j].is_zero() {
                    continue;
                }
                let xy = &x.coords[i] * &y.coords[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.0.consts[i][j][k];
                    if !c.is_zero() {
                        *slot = &*slot + &(&xy * c);
                    }
                }
            }
        }
        self.element(out).unwrap()
    }

    fn is_associative(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    if left != self.mul(&self.basis(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Number of basis triples on which associativity was checked.
    pub fn associativity_checks(&self) -> usize {
        self.rank().pow(3)
    }

    pub fn conj(&self, x: &AlgElem) -> Result<AlgElem> {
        let s = self.0.involution.as_ref().ok_or(Error::NoInvolution)?;
        Ok(self.element(s.apply(&x.coords)).unwrap())
    }

    fn is_scalar(&self, x: &AlgElem) -> bool {
        // scalar multiples of the unit: x = c·1 with c read off a unit coordinate
        let Some(k) = self.0.unit.iter().position(|u| !u.is_zero()) else { return false };
        let u = &self.0.unit[k];
        if !u.is_one() {
            return false;
        }
        let c = &x.coords[k];
        self.scalar(c) == *x
    }

    fn involution_ok(&self) -> bool {
        let n = self.rank();
        let one = self.one();
        let Ok(c1) = self.conj(&one) else { return false };
        if c1 != one {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (self.basis(i), self.basis(j));
                let lhs = self.conj(&self.mul(&ei, &ej)).unwrap();
                let rhs = self.mul(&self.conj(&ej).unwrap(), &self.conj(&ei).unwrap());
                if lhs != rhs {
                    return false;
                }
                let pol = self.add(
                    &self.mul(&ei, &self.conj(&ej).unwrap()),
                    &self.mul(&ej, &self.conj(&ei).unwrap()),
                );
                if !self.is_scalar(&pol) {
                    return false;
                }
            }
            if !self.is_scalar(&self.add(&self.basis(i), &self.conj(&self.basis(i)).unwrap())) {
                return false;
            }
        }
        true
    }

    /// Matrix of `x ↦ q x` (`Left`) or `x ↦ x q` (`Right`) on coordinates.
    pub fn regular_representation(&self, q: &AlgElem, side: Side) -> Matrix {
        let n = self.rank();
        let r = self.ring();
        let mut m = Matrix::zero(r, n, n);
        for j in 0..n {
            let img = match side {
                Side::Left => self.mul(q, &self.basis(j)),
                Side::Right => self.mul(&self.basis(j), q),
            };
            for k in 0..n {
                m.set(k, j, img.coords[k].clone());
            }
        }
        m
    }

    /// `Nrd(q) = q q̄` for algebras with an involution (degree 2).
    pub fn reduced_norm(&self, q: &AlgElem) -> Result<Poly> {
        let p = self.mul(q, &self.conj(q)?);
        if !self.is_scalar(&p) {
            return Err(Error::Internal("q·conj(q) is not central".into()));
        }
        let k = self.0.unit.iter().position(|u| !u.is_zero()).unwrap();
        Ok(p.coords[k].clone())
    }

    /// Matrix of the enveloping map `A ⊗ A^op -> End_R(A)`,
    /// `e_a ⊗ e_b ↦ (x ↦ e_a x e_b)`.
    pub fn enveloping_matrix(&self) -> Matrix {
        let n = self.rank();
        let r = self.ring();
        let mut m = Matrix::zero(r, n * n, n * n);
        for a in 0..n {
            let la = self.regular_representation(&self.basis(a), Side::Left);
            for b in 0..n {
                let rb = self.regular_representation(&self.basis(b), Side::Right);
                let t = la.mul(&rb);
                for j in 0..n {
                    for k in 0..n {
                        m.set(j * n + k, a * n + b, t.get(k, j).clone());
                    }
                }
            }
        }
        m
    }

    /// Azumaya iff the determinant of the enveloping map is a unit; otherwise
    /// the principal ideal it generates cuts out the non-Azumaya locus.
    pub fn azumaya_test(&self) -> AzumayaReport {
        let det = self.enveloping_matrix().det();
        let locus = Ideal::new(self.ring(), vec![det.clone()]).unwrap();
        let azumaya = locus.is_unit();
        let codim = if det.is_zero() { Codim::Finite(0) } else { locus.codim() };
        AzumayaReport {
            det,
            azumaya,
            locus,
            codim,
        }
    }

    /// Parses `u*i + v` style elements: linear in the basis names, with the
    /// constant part a multiple of the unit.
    pub fn parse_element(&self, text: &str) -> Result<AlgElem> {
        let ring = self.ring();
        let nv = ring.nvars();
        let unit_idx = self.0.unit.iter().position(|u| !u.is_zero()).unwrap();
        let extra: Vec<(usize, &str)> = self
            .0
            .names
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != unit_idx)
            .map(|(k, s)| (k, s.as_str()))
            .collect();
        for (_, name) in &extra {
            if ring.var_index(name).is_some() {
                return Err(Error::InvalidInput(format!("basis name `{name}` clashes with a ring variable")));
            }
        }
        let names: Vec<&str> = extra.iter().map(|(_, s)| *s).collect();
        let big = ring.with_extra_vars(&names)?;
        let p = big.parse(text)?;
        let mut parts: Vec<Vec<(Monomial, crate::field::Coeff)>> = vec![Vec::new(); self.rank()];
        for (m, c) in p.terms() {
            let exps = m.exponents();
            let basis_deg: u32 = exps[nv..].iter().sum();
            let slot = match basis_deg {
                0 => None,
                1 => Some(extra[exps[nv..].iter().position(|&e| e == 1).unwrap()].0),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "`{text}` is not linear in the basis elements"
                    )))
                }
            };
            let mon = Monomial::from_exponents(&exps[..nv]);
            match slot {
                Some(k) => parts[k].push((mon, c.clone())),
                None => {
                    // constant part times the unit vector
                    for (k, u) in self.0.unit.iter().enumerate() {
                        for (um, uc) in u.terms() {
                            parts[k].push((um.mul(&mon), ring.field().mul(uc, c)));
                        }
                    }
                }
            }
        }
        let coords = parts.into_iter().map(|t| Poly::from_terms(ring, t)).collect();
        self.element(coords)
    }

    /// Text of an element in the task-file syntax.
    pub fn format_element(&self, x: &AlgElem) -> String {
        let mut out = String::new();
        for (k, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.0.names[k];
            let scalar = self.0.unit[k].is_one() && self.0.unit.iter().filter(|u| !u.is_zero()).count() == 1;
            let cs = c.to_string();
            let term = if scalar {
                if c.terms().len() > 1 && !out.is_empty() {
                    format!("({cs})")
                } else {
                    cs
                }
            } else if c.is_one() {
                name.clone()
            } else if (-c).is_one() {
                format!("-{name}")
            } else if c.terms().len() > 1 {
                format!("({cs})*{name}")
            } else {
                format!("{cs}*{name}")
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out = format!("{out} - {rest}");
            } else {
                out = format!("{out} + {term}");
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.algebra.format_element(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct AzumayaReport {
    pub det: Poly,
    pub azumaya: bool,
    pub locus: Ideal,
    pub codim: Codim,
}

/// A left module over an algebra `A`, `coker(A^q -> A^p)` with
/// `(m_s) ↦ (Σ_s m_s rel[s][l])_l`, and its unfolding over `R`.
#[derive(Clone, Debug)]
pub struct TwistedModule {
    pub algebra: SCAlgebra,
    /// `q` rows of `p` algebra elements.
    pub relations: Vec<Vec<AlgElem>>,
    pub ngens: usize,
    pub unfolded: FPModule,
    pub injective: bool,
    /// How injectivity of the presentation was decided.
    pub injectivity: String,
}

/// Block unfolding: block `(l, s)` is the right-regular matrix of `rel[s][l]`.
pub fn unfold(algebra: &SCAlgebra, relations: &[Vec<AlgElem>], p: usize) -> Matrix {
    let n = algebra.rank();
    let q = relations.len();
    let mut m = Matrix::zero(algebra.ring(), p * n, q * n);
    for (s, row) in relations.iter().enumerate() {
        for (l, x) in row.iter().enumerate() {
            let r = algebra.regular_representation(x, Side::Right);
            for a in 0..n {
                for b in 0..n {
                    m.set(l * n + a, s * n + b, r.get(a, b).clone());
                }
            }
        }
    }
    m
}

/// `E = coker(A -> A², m ↦ (m f, m g))`.
pub fn twisted_cokernel(algebra: &SCAlgebra, f: &AlgElem, g: &AlgElem) -> Result<TwistedModule> {
    let zero = algebra.zero();
    if *f == zero && *g == zero {
        return Err(Error::InvalidInput("both f and g are zero".into()));
    }
    let rel = vec![vec![f.clone(), g.clone()]];
    let pres = unfold(algebra, &rel, 2);
    let mut injective = false;
    let mut injectivity = String::new();
    if algebra.has_involution() {
        for (name, x) in [("f", f), ("g", g)] {
            let nrd = algebra.reduced_norm(x)?;
            if !nrd.is_zero() {
                injective = true;
                injectivity = format!("Nrd({name}) = {nrd} is nonzero");
                break;
            }
        }
    }
    if !injective {
        injective = syzygies(algebra.ring(), pres.nrows(), &pres.columns()).is_empty();
        injectivity = if injective {
            "kernel of the unfolded presentation is zero".into()
        } else {
            "unfolded presentation has a nonzero kernel".into()
        };
    }
    Ok(TwistedModule {
        algebra: algebra.clone(),
        relations: rel,
        ngens: 2,
        unfolded: FPModule::coker(pres),
        injective,
        injectivity,
    })
}

/// The free module `A^p` as a twisted module.
pub fn free_twisted(algebra: &SCAlgebra, p: usize) -> TwistedModule {
    TwistedModule {
        algebra: algebra.clone(),
        relations: Vec::new(),
        ngens: p,
        unfolded: FPModule::coker(Matrix::zero(algebra.ring(), p * algebra.rank(), 0)),
        injective: true,
        injectivity: "no relations".into(),
    }
}

/// An endomorphism algebra carried as an `R`-module with its action on a
/// carrier module and composition on generators.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    /// The algebra as an `R`-module on `ngens` generators.
    pub module: FPModule,
    /// The module the algebra acts on.
    pub carrier: FPModule,
    /// Action of each generator on the carrier's generators.
    pub action: Vec<Matrix>,
    /// `mult[a][b]`: coordinates of `a ∘ b`.
    pub mult: Vec<Vec<Vec<Poly>>>,
    pub unit: Vec<Poly>,
    pub description: String,
}

impl EndAlgebra {
    pub fn ngens(&self) -> usize {
        self.action.len()
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    pub fn generic_rank(&self) -> Result<usize> {
        self.module.generic_rank()
    }

    /// `End_R(M)`.
    pub fn of_module(m: &FPModule) -> Result<EndAlgebra> {
        let h = hom(m, m)?;
        let (pm, fwd, back) = h.module.prune();
        let ring = m.ring();
        let action: Vec<Matrix> = (0..pm.ngens())
            .map(|g| {
                let mut t = Matrix::zero(ring, m.ngens(), m.ngens());
                for (k, map) in h.maps.iter().enumerate() {
                    let c = back.matrix.get(k, g);
                    if !c.is_zero() {
                        t = t.add(&map.scale(c));
                    }
                }
                t
            })
            .collect();
        let lift = |t: &Matrix| -> Result<Vec<Poly>> {
            let raw = h
                .coordinates(t)
                .ok_or_else(|| Error::Internal("composite is not a module endomorphism".into()))?;
            Ok(fwd.matrix.apply(&raw))
        };
        let mut mult = Vec::new();
        for a in &action {
            let mut row = Vec::new();
            for b in &action {
                row.push(lift(&a.mul(b))?);
            }
            mult.push(row);
        }
        let unit = lift(&Matrix::identity(ring, m.ngens()))?;
        Ok(EndAlgebra {
            module: pm,
            carrier: m.clone(),
            action,
            mult,
            unit,
            description: "End_R(M)".into(),
        })
    }

    /// The algebra itself, acting on itself by left multiplication.
    pub fn of_algebra(a: &SCAlgebra) -> EndAlgebra {
        let n = a.rank();
        let ring = a.ring();
        let action = (0..n).map(|i| a.regular_representation(&a.basis(i), Side::Left)).collect();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| a.0.consts[i][j].clone()).collect())
            .collect();
        EndAlgebra {
            module: FPModule::free(ring, n),
            carrier: FPModule::free(ring, n),
            action,
            mult,
            unit: a.0.unit.clone(),
            description: a.label().to_string(),
        }
    }

    /// Action of an element given by coordinates in the generators.
    pub fn action_of(&self, coords: &[Poly]) -> Matrix {
        let b = self.carrier.ngens();
        let mut t = Matrix::zero(self.ring(), b, b);
        for (c, m) in coords.iter().zip(&self.action) {
            if !c.is_zero() {
                t = t.add(&m.scale(c));
            }
        }
        t
    }

    /// Trace over the fraction field of an endomorphism `T` of the carrier
    /// `C = coker P`: with `P_IJ` a nonsingular maximal square submatrix,
    /// `tr_C(T) = tr(T) - tr(X)` where `P_J X = T P_J`, and Cramer's rule
    /// gives `Δ tr(X)` as a sum of determinants (`Δ = det P_IJ`).
    pub fn carrier_trace(&self, t: &Matrix) -> Result<Poly> {
        let ring = self.ring();
        let pres = self.carrier.presentation();
        let b = pres.nrows();
        let mut tr = ring.zero();
        for i in 0..b {
            tr = &tr + t.get(i, i);
        }
        let (r, rows, cols) = pres.echelon();
        if r == 0 {
            return Ok(tr);
        }
        let pij = pres.select(&rows, &cols);
        let delta = pij.det();
        let tpj = t.mul(&pres.select_cols(&cols)).select_rows(&rows);
        let mut cramer = ring.zero();
        for k in 0..r {
            let mut m = pij.clone();
            for i in 0..r {
                m.set(i, k, tpj.get(i, k).clone());
            }
            cramer = &cramer + &m.det();
        }
        let num = &(&tr * &delta) - &cramer;
        checked_div(&num, &delta)
            .ok_or_else(|| Error::Internal(format!("trace {num} / {delta} is not integral")))
    }

    /// Gram matrix of `(x, y) ↦ tr_C(x y)` on the generators.
    pub fn trace_form(&self) -> Result<Matrix> {
        let n = self.ngens();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let vals: Vec<Result<Poly>> = pairs
            .par_iter()
            .map(|&(a, b)| self.carrier_trace(&self.action[a].mul(&self.action[b])))
            .collect();
        let mut g = Matrix::zero(self.ring(), n, n);
        for (&(a, b), v) in pairs.iter().zip(vals) {
            let v = v?;
            g.set(a, b, v.clone());
            g.set(b, a, v);
        }
        Ok(g)
    }

    /// Composition is associative on generator triples (checked on the
    /// carrier: `(a b) c` and `a (b c)` act identically).
    pub fn check_associative(&self) -> bool {
        let n = self.ngens();
        let minus = self.ring().constant(-1);
        for a in 0..n {
            for b in 0..n {
                let ab = self.action_of(&self.mult[a][b]);
                for c in 0..n {
                    let bc = self.action_of(&self.mult[b][c]);
                    let diff = ab.mul(&self.action[c]).add(&self.action[a].mul(&bc).scale(&minus));
                    if !diff.columns().iter().all(|col| self.carrier.element_is_zero(col)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Each multiplication entry acts on the carrier as the composite does.
    pub fn check_multiplication(&self) -> bool {
        let n = self.ngens();
        let minus = self.ring().constant(-1);
        for x in 0..n {
            for y in 0..n {
                let t = self.action_of(&self.mult[x][y]);
                let diff = t.add(&self.action[x].mul(&self.action[y]).scale(&minus));
                if !diff.columns().iter().all(|col| self.carrier.element_is_zero(col)) {
                    return false;
                }
            }
        }
        true
    }
}

/// `End_A(E)` for a twisted module: pairs `(Ψ, Λ)` of algebra matrices with
/// `rel Ψ = Λ rel`, modulo those `Ψ` whose rows lie in the row span of `rel`.
pub fn twisted_end(e: &TwistedModule) -> Result<EndAlgebra> {
    if !e.injective {
        return Err(Error::Precondition("presentation is not injective".into()));
    }
    let a = &e.algebra;
    let ring = a.ring();
    let n = a.rank();
    let p = e.ngens;
    let q = e.relations.len();
    let npsi = p * p * n;
    let nlam = q * q * n;
    let psi_idx = |l: usize, t: usize, c: usize| (l * p + t) * n + c;
    let lam_idx = |s: usize, l: usize, c: usize| npsi + (s * q + l) * n + c;
    let neq = q * p * n;
    let mut eq = Matrix::zero(ring, neq, npsi + nlam);
    for s in 0..q {
        for t in 0..p {
            let row0 = (s * p + t) * n;
            for l in 0..p {
                let lm = a.regular_representation(&e.relations[s][l], Side::Left);
                for k in 0..n {
                    for c in 0..n {
                        eq.set(row0 + k, psi_idx(l, t, c), lm.get(k, c).clone());
                    }
                }
            }
            for l in 0..q {
                let rm = a.regular_representation(&e.relations[l][t], Side::Right);
                for k in 0..n {
                    for c in 0..n {
                        eq.set(row0 + k, lam_idx(s, l, c), -rm.get(k, c));
                    }
                }
            }
        }
    }
    let z: Vec<Vec<Poly>> = if q == 0 {
        (0..npsi)
            .map(|i| {
                let mut v = vec![ring.zero(); npsi];
                v[i] = ring.one();
                v
            })
            .collect()
    } else {
        syzygies(ring, neq, &eq.columns())
            .into_iter()
            .map(|v| v[..npsi].to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    };
    // maps with rows in the row span of rel induce zero on E
    let mut null: Vec<Vec<Poly>> = Vec::new();
    for l in 0..p {
        for c in 0..n {
            for s in 0..q {
                let mut v = vec![ring.zero(); npsi];
                for t in 0..p {
                    let rm = a.regular_representation(&e.relations[s][t], Side::Right);
                    for k in 0..n {
                        v[psi_idx(l, t, k)] = rm.get(k, c).clone();
                    }
                }
                null.push(v);
            }
        }
    }
    let zm = Matrix::from_cols(ring, npsi, &z);
    let nm = Matrix::from_cols(ring, npsi, &null);
    let raw = FPModule::subquotient(&zm, &nm);
    let (pm, fwd, back) = raw.prune();
    let gen_vecs: Vec<Vec<Poly>> = (0..pm.ngens())
        .map(|g| {
            let coeffs: Vec<Poly> = (0..z.len()).map(|k| back.matrix.get(k, g).clone()).collect();
            zm.apply(&coeffs)
        })
        .collect();
    let psi_of = |v: &[Poly]| -> Vec<Vec<AlgElem>> {
        (0..p)
            .map(|l| (0..p).map(|t| a.element(v[psi_idx(l, t, 0)..psi_idx(l, t, 0) + n].to_vec()).unwrap()).collect())
            .collect()
    };
    let vec_of = |psi: &[Vec<AlgElem>]| -> Vec<Poly> {
        let mut v = vec![ring.zero(); npsi];
        for l in 0..p {
            for t in 0..p {
                for c in 0..n {
                    v[psi_idx(l, t, c)] = psi[l][t].coords[c].clone();
                }
            }
        }
        v
    };
    let matmul = |x: &[Vec<AlgElem>], y: &[Vec<AlgElem>]| -> Vec<Vec<AlgElem>> {
        (0..p)
            .map(|l| {
                (0..p)
                    .map(|t| {
                        let mut acc = a.zero();
                        for m in 0..p {
                            acc = a.add(&acc, &a.mul(&x[l][m], &y[m][t]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    // action of Ψ on A^p: block (t, l) is the right-regular matrix of Ψ[l][t]
    let action_of = |psi: &[Vec<AlgElem>]| -> Matrix {
        let mut t = Matrix::zero(ring, p * n, p * n);
        for l in 0..p {
            for tt in 0..p {
                let r = a.regular_representation(&psi[l][tt], Side::Right);
                for x in 0..n {
                    for y in 0..n {
                        t.set(tt * n + x, l * n + y, r.get(x, y).clone());
                    }
                }
            }
        }
        t
    };
    let psis: Vec<Vec<Vec<AlgElem>>> = gen_vecs.iter().map(|v| psi_of(v)).collect();
    let action: Vec<Matrix> = psis.iter().map(|x| action_of(x)).collect();
    let mut span = z.clone();
    span.extend(null.iter().cloned());
    let lifter = Lifter::new(ring, npsi, &span);
    let lift = |v: &[Poly]| -> Result<Vec<Poly>> {
        let c = lifter
            .lift(v)
            .ok_or_else(|| Error::Internal("composite does not descend to an endomorphism".into()))?;
        Ok(fwd.matrix.apply(&c[..z.len()]))
    };
    let mut mult = Vec::new();
    for x in &psis {
        let mut row = Vec::new();
        for y in &psis {
            // x ∘ y acts by v ↦ v Ψ_y Ψ_x
            row.push(lift(&vec_of(&matmul(y, x)))?);
        }
        mult.push(row);
    }
    let ident: Vec<Vec<AlgElem>> = (0..p)
        .map(|l| (0..p).map(|t| if l == t { a.one() } else { a.zero() }).collect())
        .collect();
    let unit = lift(&vec_of(&ident))?;
    Ok(EndAlgebra {
        module: pm,
        carrier: e.unfolded.clone(),
        action,
        mult,
        unit,
        description: "End_A(E)".into(),
    })
}

/// The algebra `R ⊕ R ε`, `ε² = 0`.
pub fn dual_numbers(ring: &Ring) -> SCAlgebra {
    let z = ring.zero();
    let one = ring.one();
    let mut c = vec![vec![vec![z.clone(); 2]; 2]; 2];
    c[0][0][0] = one.clone();
    c[0][1][1] = one.clone();
    c[1][0][1] = one.clone();
    SCAlgebra::new(
        ring,
        vec!["1".into(), "e".into()],
        c,
        vec![one, z],
        None,
        "dual_numbers",
    )
    .expect("dual numbers are associative")
}
