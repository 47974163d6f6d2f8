//! Free resolutions by iterated syzygies.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::Ring;

use super::{is_zero_col, syzygies, GroebnerBasis};

/// `F_0 <- F_1 <- ... `; `maps[k]` is `φ_{k+1}: F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    rank0: usize,
    maps: Vec<Matrix>,
    minimal: bool,
    terminated: bool,
}

/// Indices of a generating subset of the columns. With `degrees`, columns are
/// scanned by increasing degree and kept when not in the span of those kept
/// so far, which gives a minimal generating set in the graded case; without,
/// each column in the span of all the others is dropped.
pub fn minimal_generators(ring: &Ring, rank: usize, cols: &[Vec<Poly>], degrees: Option<&[i64]>) -> Vec<usize> {
    let nonzero: Vec<usize> = (0..cols.len()).filter(|&j| !is_zero_col(&cols[j])).collect();
    match degrees {
        Some(d) => {
            let mut order = nonzero;
            order.sort_by_key(|&j| (d[j], j));
            let mut kept: Vec<usize> = Vec::new();
            for j in order {
                let span: Vec<Vec<Poly>> = kept.iter().map(|&k| cols[k].clone()).collect();
                if span.is_empty() || !GroebnerBasis::of_module(ring, rank, &span).contains_vec(&cols[j]) {
                    kept.push(j);
                }
            }
            kept.sort_unstable();
            kept
        }
        None => {
            let mut kept = nonzero;
            let mut idx = kept.len();
            while idx > 0 {
                idx -= 1;
                let others: Vec<Vec<Poly>> =
                    kept.iter().filter(|&&k| k != kept[idx]).map(|&k| cols[k].clone()).collect();
                if !others.is_empty() && GroebnerBasis::of_module(ring, rank, &others).contains_vec(&cols[kept[idx]]) {
                    kept.remove(idx);
                }
            }
            kept
        }
    }
}

/// Degree of each column given row degrees (first nonzero entry decides).
fn column_degrees(m: &Matrix, row_deg: &[i64]) -> Vec<i64> {
    (0..m.ncols())
        .map(|j| {
            (0..m.nrows())
                .find(|&i| !m.get(i, j).is_zero())
                .map(|i| row_deg[i] + m.get(i, j).total_degree().unwrap() as i64)
                .unwrap_or(0)
        })
        .collect()
}

impl FreeResolution {
    /// Resolution of `coker(pres)` up to `F_length`. With `minimal`, the
    /// presentation must be graded; the presentation itself should already
    /// be pruned (no unit entries), which the caller guarantees.
    pub fn of_presentation(pres: &Matrix, length: usize, minimal: bool) -> Result<FreeResolution> {
        let ring = pres.ring().clone();
        let rank0 = pres.nrows();
        let mut grading = if minimal {
            if !ring.quotient_relations().iter().all(|p| p.is_homogeneous()) {
                return Err(Error::NotHomogeneous("ring relations are not homogeneous".into()));
            }
            match pres.grading(None) {
                Some((rows, _)) => Some(rows),
                None => return Err(Error::NotHomogeneous("presentation matrix admits no grading".into())),
            }
        } else {
            None
        };
        let mut maps = Vec::new();
        let mut terminated = false;
        // φ_1: minimal generators of the relation module
        let mut current = {
            let cols = pres.columns();
            let degs = grading.as_ref().map(|g| column_degrees(pres, g));
            let keep = minimal_generators(&ring, rank0, &cols, degs.as_deref());
            pres.select_cols(&keep)
        };
        let mut k = 0;
        while k < length {
            if current.ncols() == 0 {
                terminated = true;
                break;
            }
            let next_grading = grading.as_ref().map(|g| column_degrees(&current, g));
            maps.push(current.clone());
            k += 1;
            let syz = syzygies(&ring, current.nrows(), &current.columns());
            let syz_m = Matrix::from_cols(&ring, current.ncols(), &syz);
            let degs = next_grading.as_ref().map(|g| column_degrees(&syz_m, g));
            let keep = minimal_generators(&ring, current.ncols(), &syz, degs.as_deref());
            current = syz_m.select_cols(&keep);
            grading = next_grading;
        }
        if !terminated && current.ncols() == 0 {
            terminated = true;
        }
        Ok(FreeResolution {
            ring,
            rank0,
            maps,
            minimal,
            terminated,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// True when the computed part is the whole resolution.
    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// Ranks of `F_0, F_1, ...` (as far as computed).
    pub fn betti(&self) -> Vec<usize> {
        let mut b = vec![self.rank0];
        b.extend(self.maps.iter().map(|m| m.ncols()));
        b
    }

    /// Index of the last nonzero free module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Consecutive maps compose to zero and each kernel is generated by the
    /// next map's image (checked through syzygies and membership).
    pub fn verify(&self) -> bool {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return false;
            }
        }
        for (k, m) in self.maps.iter().enumerate() {
            let syz = syzygies(&self.ring, m.nrows(), &m.columns());
            match self.maps.get(k + 1) {
                Some(next) => {
                    let gb = GroebnerBasis::of_module(&self.ring, m.ncols(), &next.columns());
                    if !syz.iter().all(|s| gb.contains_vec(s)) {
                        return false;
                    }
                }
                None if self.terminated => {
                    if !syz.is_empty() {
                        return false;
                    }
                }
                None => {}
            }
        }
        true
    }

    /// No entry of any map is a nonzero constant.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.maps.iter().all(|m| {
            (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| !m.get(i, j).is_nonzero_constant()))
        })
    }
}
