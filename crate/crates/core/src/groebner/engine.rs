//! Buchberger's algorithm on sparse vectors of a free module `S^r`,
//! `S = k[x_1..x_n]`. Ideals are the `r = 1` case.
//!
//! Pair handling follows Gebauer–Möller (product and chain criteria); pairs
//! are selected by `(degree of lcm, creation index)` so the run is fully
//! deterministic.

use std::cmp::Ordering;

use crate::field::{Coeff, Field};
use crate::monomial::{ModuleOrder, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mon: Monomial,
    pub coef: Coeff,
}

/// Terms strictly descending in the active module order, no zero coefficients.
pub type Vector = Vec<Term>;

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub field: Field,
    pub order: ModuleOrder,
    pub nvars: usize,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    seq: usize,
}

impl Ctx {
    pub fn new(field: Field, order: ModuleOrder, nvars: usize) -> Ctx {
        Ctx { field, order, nvars }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp(a.comp, &a.mon, b.comp, &b.mon)
    }

    /// Sorts descending and merges like terms.
    pub fn normalize(&self, mut v: Vector) -> Vector {
        v.sort_by(|a, b| self.cmp(b, a));
        let mut out: Vector = Vec::with_capacity(v.len());
        for t in v {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mon == t.mon {
                    last.coef = self.field.add(&last.coef, &t.coef);
                    if self.field.is_zero(&last.coef) {
                        out.pop();
                    }
                    continue;
                }
            }
            if !self.field.is_zero(&t.coef) {
                out.push(t);
            }
        }
        out
    }

    /// `a + c * m * b` where both inputs are sorted.
    pub fn add_scaled(&self, a: &[Term], c: &Coeff, m: &Monomial, b: &[Term]) -> Vector {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bt = Term {
                comp: b[j].comp,
                mon: b[j].mon.mul(m),
                coef: f.mul(c, &b[j].coef),
            };
            if i == a.len() {
                out.push(bt);
                j += 1;
                continue;
            }
            match self.cmp(&a[i], &bt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bt);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(&a[i].coef, &bt.coef);
                    if !f.is_zero(&s) {
                        out.push(Term {
                            comp: bt.comp,
                            mon: bt.mon,
                            coef: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn scale(&self, v: &[Term], c: &Coeff) -> Vector {
        if self.field.is_zero(c) {
            return Vec::new();
        }
        v.iter()
            .map(|t| Term {
                comp: t.comp,
                mon: t.mon,
                coef: self.field.mul(&t.coef, c),
            })
            .collect()
    }

    pub fn make_monic(&self, v: &mut Vector) {
        if let Some(first) = v.first() {
            if self.field.is_one(&first.coef) {
                return;
            }
            let inv = self.field.inv(&first.coef);
            for t in v.iter_mut() {
                t.coef = self.field.mul(&t.coef, &inv);
            }
        }
    }

    fn find_reducer(&self, t: &Term, basis: &[Vector], leads: &[(u32, Monomial)]) -> Option<usize> {
        leads
            .iter()
            .position(|(c, m)| *c == t.comp && m.divides(&t.mon))
            .filter(|&k| !basis[k].is_empty())
    }

    /// Full normal form of `v` modulo `basis` (every term irreducible).
    pub fn reduce(&self, v: Vector, basis: &[Vector]) -> Vector {
        let leads = leads_of(basis);
        self.reduce_with(v, basis, &leads, false)
    }

    /// Reduces only until the leading term is irreducible.
    pub fn reduce_top(&self, v: Vector, basis: &[Vector]) -> Vector {
        let leads = leads_of(basis);
        self.reduce_with(v, basis, &leads, true)
    }

    fn reduce_with(
        &self,
        v: Vector,
        basis: &[Vector],
        leads: &[(u32, Monomial)],
        top_only: bool,
    ) -> Vector {
        let f = &self.field;
        let mut rest = v;
        let mut done: Vector = Vec::new();
        loop {
            let Some(t) = rest.first() else { break };
            match self.find_reducer(t, basis, leads) {
                Some(k) => {
                    let g = &basis[k];
                    let q = leads[k].1.quotient_of(&t.mon);
                    let c = f.neg(&f.div(&t.coef, &g[0].coef));
                    rest = self.add_scaled(&rest, &c, &q, g);
                }
                None => {
                    if top_only {
                        done.extend(rest);
                        return done;
                    }
                    let t = rest.remove(0);
                    done.push(t);
                }
            }
        }
        done
    }

    /// S-vector of two elements whose leading terms share a component.
    pub fn spoly(&self, a: &Vector, b: &Vector, lcm: &Monomial) -> Vector {
        let qa = a[0].mon.quotient_of(lcm);
        let qb = b[0].mon.quotient_of(lcm);
        let ca = self.field.inv(&a[0].coef);
        let cb = self.field.neg(&self.field.inv(&b[0].coef));
        let left = self.add_scaled(&[], &ca, &qa, a);
        self.add_scaled(&left, &cb, &qb, b)
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
    /// ascending leading term. Output is independent of generator order up to
    /// the generated submodule (reduced bases are unique).
    pub fn groebner(&self, gens: Vec<Vector>) -> Vec<Vector> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut leads: Vec<(u32, Monomial)> = Vec::new();
        let mut active: Vec<bool> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut seq = 0usize;

        let mut insert = |h: Vector,
                          basis: &mut Vec<Vector>,
                          leads: &mut Vec<(u32, Monomial)>,
                          active: &mut Vec<bool>,
                          pairs: &mut Vec<Pair>| {
            let t = basis.len();
            let (hc, hm) = (h[0].comp, h[0].mon);
            basis.push(h);
            leads.push((hc, hm));
            active.push(true);

            // candidate new pairs
            // The product criterion needs commuting polynomial multiples, so it
            // only applies to elements supported in a single component.
            let single = |v: &Vector| v.iter().all(|x| x.comp == v[0].comp);
            let h_single = single(&basis[t]);
            let cands: Vec<(usize, Monomial, bool)> = (0..t)
                .filter(|&i| active[i] && leads[i].0 == hc)
                .map(|i| {
                    let coprime = h_single && leads[i].1.is_coprime(&hm) && single(&basis[i]);
                    (i, leads[i].1.lcm(&hm), coprime)
                })
                .collect();
            let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
            for (idx, c) in cands.iter().enumerate() {
                if c.2 {
                    kept.push(*c);
                    continue;
                }
                let dominated = cands[idx + 1..].iter().any(|o| o.1.divides(&c.1))
                    || kept.iter().any(|o| o.1.divides(&c.1));
                if !dominated {
                    kept.push(*c);
                }
            }
            // chain criterion on old pairs
            pairs.retain(|p| {
                if p.comp != hc || !hm.divides(&p.lcm) {
                    return true;
                }
                let li = leads[p.i].1.lcm(&hm);
                let lj = leads[p.j].1.lcm(&hm);
                li == p.lcm || lj == p.lcm
            });
            for (i, l, coprime) in kept {
                if coprime {
                    continue;
                }
                pairs.push(Pair {
                    i,
                    j: t,
                    lcm: l,
                    comp: hc,
                    seq,
                });
                seq += 1;
            }
            for i in 0..t {
                if active[i] && leads[i].0 == hc && hm.divides(&leads[i].1) {
                    active[i] = false;
                }
            }
        };

        let active_basis = |basis: &Vec<Vector>, active: &Vec<bool>| -> Vec<Vector> {
            basis
                .iter()
                .zip(active)
                .map(|(b, &a)| if a { b.clone() } else { Vec::new() })
                .collect()
        };

        for g in gens {
            if g.is_empty() {
                continue;
            }
            let ab = active_basis(&basis, &active);
            let mut h = self.reduce(g, &ab);
            if h.is_empty() {
                continue;
            }
            self.make_monic(&mut h);
            insert(h, &mut basis, &mut leads, &mut active, &mut pairs);
        }

        // Reducers are restricted to active elements; keep a cached view.
        let mut reducers = active_basis(&basis, &active);
        let mut reducer_leads = leads_of(&reducers);
        while !pairs.is_empty() {
            let k = (0..pairs.len())
                .min_by_key(|&k| (pairs[k].lcm.degree(), pairs[k].seq))
                .unwrap();
            let p = pairs.swap_remove(k);
            let s = self.spoly(&basis[p.i], &basis[p.j], &p.lcm);
            let mut h = self.reduce_with(s, &reducers, &reducer_leads, false);
            if h.is_empty() {
                continue;
            }
            self.make_monic(&mut h);
            insert(h, &mut basis, &mut leads, &mut active, &mut pairs);
            reducers = active_basis(&basis, &active);
            reducer_leads = leads_of(&reducers);
        }

        let mut min: Vec<Vector> = basis
            .into_iter()
            .zip(active)
            .filter_map(|(b, a)| if a { Some(b) } else { None })
            .collect();
        min.sort_by(|a, b| self.cmp(&a[0], &b[0]));
        // tail reduction
        for k in 0..min.len() {
            let v = std::mem::take(&mut min[k]);
            let head = v[0].clone();
            let others: Vec<Vector> = min
                .iter()
                .enumerate()
                .map(|(i, b)| if i == k { Vec::new() } else { b.clone() })
                .collect();
            let tail = self.reduce(v[1..].to_vec(), &others);
            let mut r = vec![head];
            r.extend(tail);
            min[k] = r;
        }
        min
    }

    /// Checks that every S-pair reduces to zero (used by tests and certificates).
    pub fn is_groebner(&self, basis: &[Vector]) -> bool {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i][0].comp != basis[j][0].comp {
                    continue;
                }
                let l = basis[i][0].mon.lcm(&basis[j][0].mon);
                let s = self.spoly(&basis[i], &basis[j], &l);
                if !self.reduce(s, basis).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn leads_of(basis: &[Vector]) -> Vec<(u32, Monomial)> {
    basis
        .iter()
        .map(|b| match b.first() {
            Some(t) => (t.comp, t.mon),
            None => (u32::MAX, Monomial::one(0)),
        })
        .collect()
}
