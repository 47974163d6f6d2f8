//! Dense matrices over a ring: products, stacking, determinants, rank over
//! the fraction field, minors, and degree bookkeeping for graded presentations.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::Lifter;
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Poly>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidInput("ragged matrix rows".into()));
            }
            for p in row {
                ring.check(&p)?;
                data.push(p);
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(ring: &Ring, rows: usize, cols: &[Vec<Poly>]) -> Matrix {
        let mut m = Matrix::zero(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, p) in c.iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let s = out.get(i, j) + &(a * b);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(i, j).is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &Poly) -> Matrix {
        let mut m = self.clone();
        for p in m.data.iter_mut() {
            *p = &*p * c;
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut m = self.clone();
        for (p, q) in m.data.iter_mut().zip(&other.data) {
            *p = &*p + q;
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_cols(&self.ring, self.rows, &cols)
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows_vec();
        rows.extend(other.rows_vec());
        let mut m = Matrix::zero(&self.ring, self.rows + other.rows, self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, p) in r.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zero(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zero(&self.ring, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    /// Drops zero columns.
    pub fn compress(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero())).collect();
        self.select_cols(&keep)
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Determinant. Fraction-free elimination over polynomial rings, the
    /// division-free Berkowitz recursion over quotient rings.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        match self.rows {
            0 => self.ring.one(),
            1 => self.get(0, 0).clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            _ if self.ring.is_quotient() => self.berkowitz(),
            _ => self.bareiss_det(),
        }
    }

    fn bareiss_det(&self) -> Poly {
        let n = self.rows;
        let mut a = self.rows_vec();
        let mut sign = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return self.ring.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact_poly(&prev).expect("fraction-free step must divide exactly");
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -&d
        } else {
            d
        }
    }

    /// Berkowitz: coefficients of the characteristic polynomial by products
    /// of Toeplitz matrices; no divisions.
    fn berkowitz(&self) -> Poly {
        let n = self.rows;
        let r = &self.ring;
        let a = |i: usize, j: usize| self.get(i, j).clone();
        // vect holds the characteristic polynomial of the leading r×r block
        let mut vect: Vec<Poly> = vec![r.one(), -&a(0, 0)];
        for k in 1..n {
            // column c = A[0..k, k], row rr = A[k, 0..k], scalar a_kk
            let c: Vec<Poly> = (0..k).map(|i| a(i, k)).collect();
            let rr: Vec<Poly> = (0..k).map(|j| a(k, j)).collect();
            let sub = self.select(&(0..k).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
            // toeplitz column: 1, -a_kk, -rr c, -rr A c, ...
            let mut col = vec![r.one(), -&a(k, k)];
            let mut v = c.clone();
            for _ in 0..k {
                let s = dot(&rr, &v);
                col.push(-&s);
                v = sub.apply(&v);
            }
            // new vect = T * vect, T lower triangular Toeplitz (k+2)×(k+1)
            let mut nv = vec![r.zero(); k + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                let mut acc = r.zero();
                for (j, x) in vect.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        acc = &acc + &(&col[i - j] * x);
                    }
                }
                *slot = acc;
            }
            vect = nv;
        }
        let last = vect[n].clone();
        if n % 2 == 1 {
            -&last
        } else {
            last
        }
    }

    /// Rank over the fraction field (fraction-free elimination). The ring
    /// must be a domain for the answer to be meaningful.
    pub fn rank(&self) -> usize {
        self.echelon().0
    }

    /// Fraction-free row echelon form: rank, pivot rows (original indices),
    /// pivot columns.
    pub fn echelon(&self) -> (usize, Vec<usize>, Vec<usize>) {
        let mut a = self.rows_vec();
        let mut perm: Vec<usize> = (0..self.rows).collect();
        let mut prev = self.ring.one();
        let mut rank = 0;
        let mut pivot_cols = Vec::new();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by_key(|&i| (a[i][col].terms().len(), a[i][col].total_degree()))
            else {
                continue;
            };
            a.swap(rank, p);
            perm.swap(rank, p);
            let piv = a[rank][col].clone();
            let rows_below: Vec<Vec<Poly>> = (rank + 1..self.rows)
                .into_par_iter()
                .map(|i| {
                    let mut row = a[i].clone();
                    for j in col + 1..self.cols {
                        let num = &(&a[i][j] * &piv) - &(&a[i][col] * &a[rank][j]);
                        row[j] = exact_div(&num, &prev);
                    }
                    row[col] = self.ring.zero();
                    row
                })
                .collect();
            for (off, row) in rows_below.into_iter().enumerate() {
                a[rank + 1 + off] = row;
            }
            prev = piv;
            pivot_cols.push(col);
            rank += 1;
        }
        (rank, perm[..rank].to_vec(), pivot_cols)
    }

    /// Generators of the ideal of `k × k` minors (nonzero, deduplicated,
    /// made monic), computed in parallel in a fixed order.
    pub fn minors(&self, k: usize) -> Vec<Poly> {
        if k == 0 {
            return vec![self.ring.one()];
        }
        if k > self.rows || k > self.cols {
            return Vec::new();
        }
        let row_sets = subsets(self.rows, k);
        let col_sets = subsets(self.cols, k);
        let jobs: Vec<(&Vec<usize>, &Vec<usize>)> =
            row_sets.iter().flat_map(|r| col_sets.iter().map(move |c| (r, c))).collect();
        let dets: Vec<Poly> = jobs.par_iter().map(|(r, c)| self.select(r, c).det().monic()).collect();
        let mut out: Vec<Poly> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for d in dets {
            if !d.is_zero() && seen.insert(d.clone()) {
                out.push(d);
            }
        }
        out
    }

    /// Row and column degrees making every nonzero entry homogeneous of
    /// degree `col_deg[j] - row_deg[i]`, if such a grading exists. Rows with
    /// no constraint get degree 0 (or the given initial degrees).
    pub fn grading(&self, row_init: Option<&[i64]>) -> Option<(Vec<i64>, Vec<i64>)> {
        for p in &self.data {
            if !p.is_homogeneous() {
                return None;
            }
        }
        let mut rdeg: Vec<Option<i64>> = match row_init {
            Some(d) => d.iter().map(|&x| Some(x)).collect(),
            None => vec![None; self.rows],
        };
        let mut cdeg: Vec<Option<i64>> = vec![None; self.cols];
        loop {
            // seed an unassigned row
            let mut progress = true;
            while progress {
                progress = false;
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        let p = self.get(i, j);
                        if p.is_zero() {
                            continue;
                        }
                        let d = p.total_degree().unwrap() as i64;
                        match (rdeg[i], cdeg[j]) {
                            (Some(r), None) => {
                                cdeg[j] = Some(r + d);
                                progress = true;
                            }
                            (None, Some(c)) => {
                                rdeg[i] = Some(c - d);
                                progress = true;
                            }
                            (Some(r), Some(c)) => {
                                if c - r != d {
                                    return None;
                                }
                            }
                            (None, None) => {}
                        }
                    }
                }
            }
            match rdeg.iter().position(|d| d.is_none()) {
                Some(i) => rdeg[i] = Some(0),
                None => break,
            }
        }
        // zero columns get degree 0
        Some((
            rdeg.into_iter().map(|d| d.unwrap()).collect(),
            cdeg.into_iter().map(|d| d.unwrap_or(0)).collect(),
        ))
    }
}

fn dot(a: &[Poly], b: &[Poly]) -> Poly {
    let mut acc = a[0].ring().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Exact quotient `num / d` in the ring: polynomial division over `S`, a
/// lift through `(d) + J` over `S/J`.
pub fn exact_div(num: &Poly, d: &Poly) -> Poly {
    checked_div(num, d).expect("fraction-free step must divide exactly")
}

/// `Some(num / d)` when `d` divides `num` in the ring.
pub fn checked_div(num: &Poly, d: &Poly) -> Option<Poly> {
    if d.is_zero() {
        return None;
    }
    if d.is_one() || num.is_zero() {
        return Some(num.clone());
    }
    if d.is_nonzero_constant() {
        return Some(num.scale(&num.ring().field().inv(&d.terms()[0].1)));
    }
    if !num.ring().is_quotient() {
        return num.div_exact_poly(d);
    }
    let l = Lifter::new(num.ring(), 1, &[vec![d.clone()]]);
    l.lift(std::slice::from_ref(num)).map(|mut v| v.remove(0))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;

    fn ring() -> Ring {
        Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
    }

    fn m(r: &Ring, rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(r, rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect()).unwrap()
    }

    #[test]
    fn determinants_agree() {
        let r = ring();
        let a = m(&r, &[&["u", "v", "1"], &["w", "u", "v"], &["1", "w", "u"]]);
        let expected = r.parse("u^3 - 2*u*v*w + v^2 + w^2 - u").unwrap();
        // expand by hand: u(u^2 - v w) - v(w u - v) + 1(w^2 - u)
        assert_eq!(a.bareiss_det(), expected);
        assert_eq!(a.berkowitz(), expected);
        let z = m(&r, &[&["u", "v", "0"], &["u", "v", "0"], &["1", "w", "u"]]);
        assert!(z.det().is_zero());
    }

    #[test]
    fn berkowitz_on_four_by_four() {
        let r = ring();
        let a = m(
            &r,
            &[
                &["0", "u", "1", "2"],
                &["v", "0", "w", "1"],
                &["1", "1", "0", "u"],
                &["w", "2", "v", "0"],
            ],
        );
        assert_eq!(a.berkowitz(), a.bareiss_det());
    }

    #[test]
    fn rank_over_fraction_field() {
        let r = ring();
        let a = m(&r, &[&["u", "v"], &["u*w", "v*w"], &["1", "0"]]);
        assert_eq!(a.rank(), 2);
        let b = m(&r, &[&["u", "v"], &["u*w", "v*w"]]);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn minors_of_koszul_row() {
        let r = ring();
        let a = m(&r, &[&["u", "v", "w"]]);
        assert_eq!(a.minors(1).len(), 3);
        assert!(a.minors(2).is_empty());
    }

    #[test]
    fn grading_of_koszul_matrix() {
        let r = ring();
        let a = m(&r, &[&["-v", "-w", "0"], &["u", "0", "-w"], &["0", "u", "v"]]);
        let (rd, cd) = a.grading(None).unwrap();
        assert_eq!(rd, vec![0, 0, 0]);
        assert_eq!(cd, vec![1, 1, 1]);
        assert!(m(&r, &[&["u", "1"]]).grading(None).is_some());
        assert!(m(&r, &[&["u+1"]]).grading(None).is_none());
        assert!(m(&r, &[&["u", "v"], &["1", "v"]]).grading(None).is_none());
    }

    #[test]
    fn subsets_in_order() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
