//! Slow, independent reference implementations used as test oracles.
//! Nothing here calls into the library's arithmetic: polynomials are plain
//! maps from exponent vectors to rationals.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use orderforge_core::{Coeff, Poly};

pub type Exps = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPoly(pub BTreeMap<Exps, BigRational>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ord {
    Lex,
    GrevLex,
}

pub fn cmp(ord: Ord, a: &Exps, b: &Exps) -> Ordering {
    match ord {
        Ord::Lex => a.cmp(b),
        Ord::GrevLex => {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            if da != db {
                return da.cmp(&db);
            }
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        }
    }
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl NPoly {
    pub fn zero() -> NPoly {
        NPoly(BTreeMap::new())
    }

    pub fn constant(nvars: usize, c: BigRational) -> NPoly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(vec![0; nvars], c);
        }
        NPoly(m)
    }

    pub fn var(nvars: usize, i: usize) -> NPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        NPoly(BTreeMap::from([(e, q(1))]))
    }

    pub fn from_lib(p: &Poly) -> NPoly {
        let mut m = BTreeMap::new();
        for (mon, c) in p.terms() {
            let Coeff::Q(r) = c else { panic!("oracle works over Q only") };
            m.insert(mon.exponents(), r.clone());
        }
        NPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &NPoly) -> NPoly {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.entry(e.clone()).or_insert_with(BigRational::zero);
            *v += c;
            if v.is_zero() {
                m.remove(e);
            }
        }
        NPoly(m)
    }

    pub fn neg(&self) -> NPoly {
        NPoly(self.0.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    pub fn sub(&self, o: &NPoly) -> NPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &NPoly) -> NPoly {
        let mut acc = NPoly::zero();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                acc = acc.add(&NPoly(BTreeMap::from([(e, c1 * c2)])));
            }
        }
        acc
    }

    pub fn scale_term(&self, e: &Exps, c: &BigRational) -> NPoly {
        NPoly(
            self.0
                .iter()
                .map(|(e1, c1)| (e1.iter().zip(e).map(|(a, b)| a + b).collect(), c1 * c))
                .collect(),
        )
    }

    pub fn lead(&self, ord: Ord) -> (Exps, BigRational) {
        let (e, c) = self.0.iter().max_by(|a, b| cmp(ord, a.0, b.0)).expect("nonzero");
        (e.clone(), c.clone())
    }

    pub fn monic(&self, ord: Ord) -> NPoly {
        let (_, c) = self.lead(ord);
        NPoly(self.0.iter().map(|(e, x)| (e.clone(), x / &c)).collect())
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.0 {
            let mut t = c.clone();
            for (x, k) in point.iter().zip(e) {
                for _ in 0..*k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction: repeatedly cancels any term divisible by a leading term.
pub fn reduce(p: &NPoly, g: &[NPoly], ord: Ord) -> NPoly {
    let leads: Vec<(Exps, BigRational)> = g.iter().map(|x| x.lead(ord)).collect();
    let mut p = p.clone();
    'outer: loop {
        let mut terms: Vec<(Exps, BigRational)> = p.0.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| cmp(ord, &b.0, &a.0));
        for (e, c) in terms {
            for (k, (le, lc)) in leads.iter().enumerate() {
                if divides(le, &e) {
                    let shift: Exps = e.iter().zip(le).map(|(a, b)| a - b).collect();
                    p = p.sub(&g[k].scale_term(&shift, &(&c / lc)));
                    continue 'outer;
                }
            }
        }
        return p;
    }
}

pub fn spoly(f: &NPoly, g: &NPoly, ord: Ord) -> NPoly {
    let (ef, cf) = f.lead(ord);
    let (eg, cg) = g.lead(ord);
    let l: Exps = ef.iter().zip(&eg).map(|(a, b)| *a.max(b)).collect();
    let sf: Exps = l.iter().zip(&ef).map(|(a, b)| a - b).collect();
    let sg: Exps = l.iter().zip(&eg).map(|(a, b)| a - b).collect();
    f.scale_term(&sf, &(BigRational::one() / cf)).sub(&g.scale_term(&sg, &(BigRational::one() / cg)))
}

/// Plain Buchberger with every pair and no criteria, then minimization and
/// interreduction. Output sorted by descending leading term.
pub fn groebner(gens: &[NPoly], ord: Ord) -> Vec<NPoly> {
    let mut g: Vec<NPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = reduce(&spoly(&g[i], &g[j], ord), &g, ord);
        if !r.is_zero() {
            let n = g.len();
            g.push(r);
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    let mut min: Vec<NPoly> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let (e, _) = p.lead(ord);
        let redundant = g.iter().enumerate().any(|(l, o)| {
            let (eo, _) = o.lead(ord);
            l != k && divides(&eo, &e) && (eo != e || l < k)
        });
        if !redundant {
            min.push(p.monic(ord));
        }
    }
    let mut out = Vec::new();
    for k in 0..min.len() {
        let others: Vec<NPoly> = min.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p.clone()).collect();
        let (e, _) = min[k].lead(ord);
        let tail = NPoly(min[k].0.iter().filter(|(x, _)| **x != e).map(|(x, c)| (x.clone(), c.clone())).collect());
        out.push(NPoly(BTreeMap::from([(e, q(1))])).add(&reduce(&tail, &others, ord)));
    }
    out.sort_by(|a, b| cmp(ord, &b.lead(ord).0, &a.lead(ord).0));
    out
}

/// Krull dimension of `k[x]/I` as the largest set of variables containing
/// the support of no leading monomial (brute force over all subsets).
pub fn dimension(gb: &[NPoly], nvars: usize, ord: Ord) -> i64 {
    if gb.iter().any(|p| p.lead(ord).0.iter().all(|&e| e == 0)) {
        return -1;
    }
    let leads: Vec<Exps> = gb.iter().map(|p| p.lead(ord).0).collect();
    let mut best = 0;
    for mask in 0u32..(1 << nvars) {
        let free = leads.iter().all(|l| l.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
        if free {
            best = best.max(mask.count_ones() as i64);
        }
    }
    best
}

pub fn contains(gb: &[NPoly], p: &NPoly, ord: Ord) -> bool {
    reduce(p, gb, ord).is_zero()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<NPoly>]) -> NPoly {
    let n = m.len();
    if n == 0 {
        return NPoly::constant(0, q(1));
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = NPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<NPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].mul(&det(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_q(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let t = &a[r][k] * &f;
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn det_q(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = q(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return q(0) };
        if p != c {
            a.swap(c, p);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for k in c..n {
                let t = &a[c][k] * &f;
                a[i][k] -= t;
            }
        }
    }
    d
}

/// Determinant of an integer matrix modulo a prime.
pub fn det_mod(a: &[Vec<i64>], p: i64) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut d = 1;
    for c in 0..n {
        let Some(r) = (c..n).find(|&i| m[i][c] != 0) else { return 0 };
        if r != c {
            m.swap(c, r);
            d = (p - d) % p;
        }
        d = d * m[c][c] % p;
        let iv = inv(m[c][c]);
        for i in c + 1..n {
            let f = m[i][c] * iv % p;
            for k in c..n {
                m[i][k] = (m[i][k] - f * m[c][k]).rem_euclid(p);
            }
        }
    }
    d
}

/// Rank over the fraction field, as the largest rank among evaluations at
/// a few integer points (a lower bound that is exact for generic points).
pub fn generic_rank(m: &[Vec<NPoly>], nvars: usize) -> usize {
    let points: Vec<Vec<BigRational>> = [[3, -5, 7, 2], [11, 4, -9, 5], [-2, 13, 6, -7]]
        .iter()
        .map(|p| p[..nvars].iter().map(|&x| q(x)).collect())
        .collect();
    points
        .iter()
        .map(|pt| rank_q(m.iter().map(|row| row.iter().map(|x| x.eval(pt)).collect()).collect()))
        .max()
        .unwrap_or(0)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Betti numbers of the Koszul complex on `n` elements.
pub fn koszul_betti(n: usize) -> Vec<usize> {
    (0..=n).map(|k| binomial(n, k)).collect()
}

/// All `k`-subsets of `0..n`.
pub fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combos(n - 1, k);
    for mut c in combos(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out.sort();
    out
}

/// `k×k` minors of a polynomial matrix by cofactor expansion.
pub fn minors(m: &[Vec<NPoly>], k: usize) -> Vec<NPoly> {
    let rows = m.len();
    let cols = m[0].len();
    let mut out = Vec::new();
    for r in combos(rows, k) {
        for c in combos(cols, k) {
            let sub: Vec<Vec<NPoly>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Codimension of the ideal generated by `gens` in `nvars` variables.
pub fn codim(gens: &[NPoly], nvars: usize) -> Option<i64> {
    let gb = groebner(gens, Ord::GrevLex);
    let d = dimension(&gb, nvars, Ord::GrevLex);
    (d >= 0).then_some(nvars as i64 - d)
}
