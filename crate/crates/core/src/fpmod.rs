//! Finitely presented modules `M = coker(φ: R^a -> R^b)` and maps between
//! them: kernels, images, Hom, Ext, duals, biduality, Fitting ideals,
//! annihilators, pruning.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::resolution::minimal_generators;
use crate::groebner::{is_zero_col, syzygies, Codim, FreeResolution, GroebnerBasis, Ideal, Lifter};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct FPModule {
    pres: Matrix,
    rel_gb: OnceLock<GroebnerBasis>,
}

impl FPModule {
    /// `coker(pres)`; the rows index generators, the columns relations.
    pub fn coker(pres: Matrix) -> FPModule {
        FPModule {
            pres,
            rel_gb: OnceLock::new(),
        }
    }

    pub fn free(ring: &Ring, n: usize) -> FPModule {
        FPModule::coker(Matrix::zero(ring, n, 0))
    }

    /// `R / I`.
    pub fn quotient_ring(ideal: &Ideal) -> FPModule {
        let r = ideal.ring();
        FPModule::coker(Matrix::from_rows(r, vec![ideal.gens().to_vec()]).unwrap())
    }

    /// The ideal `I` as a module (generated by the given generators).
    pub fn from_ideal(ideal: &Ideal) -> FPModule {
        let r = ideal.ring();
        let cols: Vec<Vec<Poly>> = ideal.gens().iter().map(|g| vec![g.clone()]).collect();
        FPModule::image_of(r, 1, &cols)
    }

    /// The submodule of `R^rank` generated by the columns.
    pub fn image_of(ring: &Ring, rank: usize, cols: &[Vec<Poly>]) -> FPModule {
        let z = Matrix::zero(ring, rank, 0);
        FPModule::subquotient(&Matrix::from_cols(ring, rank, cols), &z)
    }

    /// `(im gens + im rels) / im rels`, generated by the columns of `gens`.
    pub fn subquotient(gens: &Matrix, rels: &Matrix) -> FPModule {
        let ring = gens.ring();
        let n = gens.ncols();
        if n == 0 {
            return FPModule::free(ring, 0);
        }
        let mut cols = gens.columns();
        cols.extend(rels.columns());
        let syz = syzygies(ring, gens.nrows(), &cols);
        let proj: Vec<Vec<Poly>> =
            syz.into_iter().map(|c| c[..n].to_vec()).filter(|c| !is_zero_col(c)).collect();
        FPModule::coker(Matrix::from_cols(ring, n, &proj))
    }

    pub fn ring(&self) -> &Ring {
        self.pres.ring()
    }

    pub fn ngens(&self) -> usize {
        self.pres.nrows()
    }

    pub fn presentation(&self) -> &Matrix {
        &self.pres
    }

    pub(crate) fn rel_gb(&self) -> &GroebnerBasis {
        self.rel_gb
            .get_or_init(|| GroebnerBasis::of_module(self.ring(), self.ngens(), &self.pres.columns()))
    }

    /// Whether the element with these coordinates is zero in `M`.
    pub fn element_is_zero(&self, v: &[Poly]) -> bool {
        is_zero_col(v) || self.rel_gb().contains_vec(v)
    }

    pub fn reduce_element(&self, v: &[Poly]) -> Vec<Poly> {
        self.rel_gb().normal_form_vec(v)
    }

    pub fn is_zero(&self) -> bool {
        self.ngens() == 0 || self.rel_gb().is_everything()
    }

    pub fn direct_sum(&self, other: &FPModule) -> FPModule {
        FPModule::coker(self.pres.block_diag(&other.pres))
    }

    pub fn power(&self, n: usize) -> FPModule {
        let mut m = FPModule::free(self.ring(), 0);
        for _ in 0..n {
            m = m.direct_sum(self);
        }
        m
    }

    /// Row degrees making the presentation graded, if any.
    pub fn grading(&self) -> Option<Vec<i64>> {
        if !self.ring().quotient_relations().iter().all(|p| p.is_homogeneous()) {
            return None;
        }
        self.pres.grading(None).map(|(r, _)| r)
    }

    pub fn is_graded(&self) -> bool {
        self.grading().is_some()
    }

    /// Eliminates generators killed by relations with a constant coefficient
    /// and drops redundant relations. Returns the smaller module with mutually
    /// inverse isomorphisms `self -> pruned` and `pruned -> self`.
    pub fn prune(&self) -> (FPModule, ModuleMap, ModuleMap) {
        let ring = self.ring().clone();
        let f = ring.field();
        let mut p = self.pres.compress();
        // `to` maps old generators to current ones (current × old),
        // `from` current generators to old ones (old × current).
        let mut to = Matrix::identity(&ring, self.ngens());
        let mut from = Matrix::identity(&ring, self.ngens());
        loop {
            let mut pivot = None;
            'search: for j in 0..p.ncols() {
                for i in 0..p.nrows() {
                    if p.get(i, j).is_nonzero_constant() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = pivot else { break };
            let c = p.get(i, j).terms()[0].1.clone();
            let cinv = ring.coeff_poly(f.inv(&c));
            let pj = p.col(j);
            // e_i = -(1/c) Σ_{k≠i} p[k][j] e_k
            let mut q = Matrix::zero(&ring, p.nrows(), 0);
            for l in 0..p.ncols() {
                if l == j {
                    continue;
                }
                let factor = &p.get(i, l).clone() * &cinv;
                let col: Vec<Poly> = (0..p.nrows()).map(|k| p.get(k, l) - &(&factor * &pj[k])).collect();
                q = q.hstack(&Matrix::from_cols(&ring, p.nrows(), &[col]));
            }
            let keep: Vec<usize> = (0..p.nrows()).filter(|&k| k != i).collect();
            // substitution on generators: new coordinates of old e_i
            let mut step = Matrix::zero(&ring, keep.len(), p.nrows());
            for (a, &k) in keep.iter().enumerate() {
                step.set(a, k, ring.one());
                step.set(a, i, -&(&pj[k] * &cinv));
            }
            to = step.mul(&to);
            from = from.select_cols(&keep);
            p = q.select_rows(&keep).compress();
        }
        let cols = p.columns();
        let degs = p.grading(None).map(|(rows, _)| {
            (0..p.ncols())
                .map(|j| {
                    (0..p.nrows())
                        .find(|&i| !p.get(i, j).is_zero())
                        .map(|i| rows[i] + p.get(i, j).total_degree().unwrap() as i64)
                        .unwrap_or(0)
                })
                .collect::<Vec<i64>>()
        });
        let keep = minimal_generators(&ring, p.nrows(), &cols, degs.as_deref());
        let pruned = FPModule::coker(p.select_cols(&keep));
        let forward = ModuleMap::unchecked(self.clone(), pruned.clone(), to);
        let back = ModuleMap::unchecked(pruned.clone(), self.clone(), from);
        (pruned, forward, back)
    }

    /// `Some(n)` when the pruned presentation has no relations (free of rank n).
    pub fn free_rank(&self) -> Option<usize> {
        let (p, _, _) = self.prune();
        if p.pres.ncols() == 0 {
            Some(p.ngens())
        } else {
            None
        }
    }

    /// Rank over the fraction field.
    pub fn generic_rank(&self) -> Result<usize> {
        if !self.ring().is_domain() {
            return Err(Error::NotADomain);
        }
        Ok(self.ngens() - self.pres.rank())
    }

    /// Generic rank `r` and the ideal of `(b - r)`-minors of a pruned
    /// presentation (its zero set is where `M` is not locally free of rank `r`).
    pub fn fitting_nonfree_locus(&self) -> Result<(usize, Ideal, Codim)> {
        if !self.ring().is_domain() {
            return Err(Error::NotADomain);
        }
        let (p, _, _) = self.prune();
        let rk = p.pres.rank();
        let r = p.ngens() - rk;
        let ideal = Ideal::new(self.ring(), p.pres.minors(rk))?;
        let codim = ideal.codim();
        Ok((r, ideal, codim))
    }

    /// `Ann(M) = ∩_j (im φ : e_j)`.
    pub fn annihilator(&self) -> Ideal {
        let ring = self.ring();
        let b = self.ngens();
        let mut acc = Ideal::unit(ring);
        for j in 0..b {
            let mut e = vec![ring.zero(); b];
            e[j] = ring.one();
            let col = module_colon(ring, b, &self.pres.columns(), &e);
            acc = acc.intersect(&col);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// `M / I M`.
    pub fn mod_ideal(&self, ideal: &Ideal) -> FPModule {
        let ring = self.ring();
        let b = self.ngens();
        let mut m = self.pres.clone();
        for g in ideal.gens() {
            m = m.hstack(&Matrix::identity(ring, b).scale(g));
        }
        FPModule::coker(m)
    }

    /// `M / r M`.
    pub fn mod_element(&self, r: &Poly) -> FPModule {
        let b = self.ngens();
        FPModule::coker(self.pres.hstack(&Matrix::identity(self.ring(), b).scale(r)))
    }

    /// Multiplication by `r` as an endomorphism.
    pub fn multiplication(&self, r: &Poly) -> ModuleMap {
        let b = self.ngens();
        ModuleMap::unchecked(self.clone(), self.clone(), Matrix::identity(self.ring(), b).scale(r))
    }

    /// Resolution of `M` to the given length, minimal when the presentation is graded.
    pub fn resolution(&self, length: usize) -> Result<FreeResolution> {
        let (p, _, _) = self.prune();
        let graded = p.is_graded();
        FreeResolution::of_presentation(&p.pres, length, graded)
    }

    pub fn to_text(&self) -> String {
        format!("coker({})", self.pres)
    }
}

impl fmt::Display for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `(N : v)` for a submodule `N ⊂ R^rank` given by columns.
pub fn module_colon(ring: &Ring, rank: usize, cols: &[Vec<Poly>], v: &[Poly]) -> Ideal {
    if is_zero_col(v) {
        return Ideal::unit(ring);
    }
    let mut all = vec![v.to_vec()];
    all.extend(cols.iter().cloned());
    let syz = syzygies(ring, rank, &all);
    Ideal::new(ring, syz.into_iter().map(|mut c| c.swap_remove(0)).collect()).unwrap()
}

/// A homomorphism given on generators: column `j` holds the image of the
/// `j`-th generator of `source` in coordinates of `target`'s generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: FPModule,
    pub target: FPModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    /// Checked constructor: relations of the source must map into the
    /// relations of the target.
    pub fn new(source: FPModule, target: FPModule, matrix: Matrix) -> Result<ModuleMap> {
        if matrix.nrows() != target.ngens() || matrix.ncols() != source.ngens() {
            return Err(Error::InvalidInput("map matrix has the wrong shape".into()));
        }
        let m = ModuleMap::unchecked(source, target, matrix);
        if !m.is_well_defined() {
            return Err(Error::InvalidInput("map does not respect the relations".into()));
        }
        Ok(m)
    }

    pub(crate) fn unchecked(source: FPModule, target: FPModule, matrix: Matrix) -> ModuleMap {
        ModuleMap { source, target, matrix }
    }

    pub fn is_well_defined(&self) -> bool {
        let img = self.matrix.mul(self.source.presentation());
        img.columns().iter().all(|c| self.target.element_is_zero(c))
    }

    pub fn identity(m: &FPModule) -> ModuleMap {
        ModuleMap::unchecked(m.clone(), m.clone(), Matrix::identity(m.ring(), m.ngens()))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        self.matrix.apply(v)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.element_is_zero(c))
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (FPModule, ModuleMap) {
        let ring = self.source.ring();
        let a = self.source.ngens();
        if a == 0 {
            let z = FPModule::free(ring, 0);
            return (z.clone(), ModuleMap::unchecked(z, self.source.clone(), Matrix::zero(ring, 0, 0)));
        }
        let mut cols = self.matrix.columns();
        cols.extend(self.target.presentation().columns());
        let syz = syzygies(ring, self.target.ngens(), &cols);
        let gens: Vec<Vec<Poly>> = syz.into_iter().map(|c| c[..a].to_vec()).filter(|c| !is_zero_col(c)).collect();
        let gens = Matrix::from_cols(ring, a, &gens);
        let k = FPModule::subquotient(&gens, self.source.presentation());
        let inc = ModuleMap::unchecked(k.clone(), self.source.clone(), gens);
        (k, inc)
    }

    pub fn cokernel(&self) -> FPModule {
        FPModule::coker(self.target.presentation().hstack(&self.matrix))
    }

    pub fn image(&self) -> FPModule {
        FPModule::subquotient(&self.matrix, self.target.presentation())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `Hom(M, N)` with the concrete map attached to each generator.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: FPModule,
    /// For generator `l`, a `N.ngens × M.ngens` matrix defining the map.
    pub maps: Vec<Matrix>,
    pub source: FPModule,
    pub target: FPModule,
    lifter: OnceLock<Option<Lifter>>,
}

impl HomModule {
    /// The homomorphism with the given coordinates in the Hom generators.
    pub fn element_map(&self, coords: &[Poly]) -> ModuleMap {
        let ring = self.source.ring();
        let mut m = Matrix::zero(ring, self.target.ngens(), self.source.ngens());
        for (c, g) in coords.iter().zip(&self.maps) {
            if !c.is_zero() {
                m = m.add(&g.scale(c));
            }
        }
        ModuleMap::unchecked(self.source.clone(), self.target.clone(), m)
    }

    /// Coordinates (in the Hom generators) of a map given by its matrix.
    pub fn coordinates(&self, matrix: &Matrix) -> Option<Vec<Poly>> {
        let c = self.target.ngens();
        let flat = flatten(matrix, c);
        let lifter = self.lifter.get_or_init(|| {
            let mut gens: Vec<Vec<Poly>> = self.maps.iter().map(|m| flatten(m, c)).collect();
            gens.extend(block_relations(&self.target, self.source.ngens()).columns());
            if gens.is_empty() {
                None
            } else {
                Some(Lifter::new(self.source.ring(), c * self.source.ngens(), &gens))
            }
        });
        match lifter {
            None => is_zero_col(&flat).then(Vec::new),
            Some(l) => l.lift(&flat).map(|v| v[..self.maps.len()].to_vec()),
        }
    }
}

/// Columns of a `c × b` matrix stacked into one vector of length `c b`.
fn flatten(m: &Matrix, c: usize) -> Vec<Poly> {
    let mut v = Vec::with_capacity(c * m.ncols());
    for j in 0..m.ncols() {
        for i in 0..c {
            v.push(m.get(i, j).clone());
        }
    }
    v
}

/// Relations of `N^b` as a block-diagonal matrix.
fn block_relations(n: &FPModule, b: usize) -> Matrix {
    let ring = n.ring();
    let mut m = Matrix::zero(ring, 0, 0);
    for _ in 0..b {
        m = m.block_diag(n.presentation());
    }
    m
}

/// Matrix of precomposition with `phi: R^a -> R^b` as a map `N^b -> N^a`
/// (blocks `phi[j][k] · I_c`).
fn precompose_matrix(phi: &Matrix, c: usize) -> Matrix {
    let ring = phi.ring();
    let (b, a) = (phi.nrows(), phi.ncols());
    let mut m = Matrix::zero(ring, c * a, c * b);
    for k in 0..a {
        for j in 0..b {
            let e = phi.get(j, k);
            if e.is_zero() {
                continue;
            }
            for i in 0..c {
                m.set(k * c + i, j * c + i, e.clone());
            }
        }
    }
    m
}

fn unflatten(v: &[Poly], c: usize, b: usize, ring: &Ring) -> Matrix {
    let mut m = Matrix::zero(ring, c, b);
    for j in 0..b {
        for i in 0..c {
            m.set(i, j, v[j * c + i].clone());
        }
    }
    m
}

/// `Hom_R(M, N)` as the kernel of `N^b -> N^a` induced by the presentation of `M`.
pub fn hom(m: &FPModule, n: &FPModule) -> Result<HomModule> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch("Hom of modules over different rings".into()));
    }
    let ring = m.ring();
    let (b, c) = (m.ngens(), n.ngens());
    let nb = FPModule::coker(block_relations(n, b));
    let na = FPModule::coker(block_relations(n, m.presentation().ncols()));
    let d = precompose_matrix(m.presentation(), c);
    let map = ModuleMap::unchecked(nb.clone(), na, d);
    let (k, inc) = if b == 0 || c == 0 {
        let z = FPModule::free(ring, 0);
        (z.clone(), ModuleMap::unchecked(z, nb, Matrix::zero(ring, b * c, 0)))
    } else {
        map.kernel()
    };
    let maps = inc.matrix.columns().iter().map(|v| unflatten(v, c, b, ring)).collect();
    Ok(HomModule {
        module: k,
        maps,
        source: m.clone(),
        target: n.clone(),
        lifter: OnceLock::new(),
    })
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &FPModule) -> HomModule {
    hom(m, &FPModule::free(m.ring(), 1)).expect("same ring")
}

/// `Ext^i_R(M, N)` from a free resolution of `M` and the Hom complex.
pub fn ext(i: usize, m: &FPModule, n: &FPModule) -> Result<FPModule> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch("Ext of modules over different rings".into()));
    }
    let res = m.resolution(i + 1)?;
    Ok(ext_from_resolution(&res, i, n))
}

/// `Ext^i(M, N)` from an already computed resolution of `M` (of length > i
/// or terminated).
pub fn ext_from_resolution(res: &FreeResolution, i: usize, n: &FPModule) -> FPModule {
    let ring = res.ring();
    let betti = res.betti();
    let rank = |k: usize| betti.get(k).copied().unwrap_or(0);
    let c = n.ngens();
    let (bi, bnext) = (rank(i), rank(i + 1));
    if bi == 0 || c == 0 {
        return FPModule::free(ring, 0);
    }
    let n_bi = FPModule::coker(block_relations(n, bi));
    let n_bnext = FPModule::coker(block_relations(n, bnext));
    let kernel_gens = if bnext == 0 {
        Matrix::identity(ring, c * bi)
    } else {
        let d = precompose_matrix(&res.maps()[i], c);
        ModuleMap::unchecked(n_bi.clone(), n_bnext, d).kernel().1.matrix
    };
    let mut rels = n_bi.presentation().clone();
    if i > 0 {
        rels = rels.hstack(&precompose_matrix(&res.maps()[i - 1], c));
    }
    FPModule::subquotient(&kernel_gens, &rels)
}

/// The natural map `η: M -> M**` with its pieces.
#[derive(Clone, Debug)]
pub struct Bidual {
    pub dual: HomModule,
    pub bidual: HomModule,
    pub eta: ModuleMap,
    pub injective: bool,
    pub iso: bool,
}

pub fn bidual_map(m: &FPModule) -> Bidual {
    let ring = m.ring();
    let d = dual(m);
    let dd = dual(&d.module);
    let s = d.maps.len();
    // η(e_j) is evaluation at e_j: the row (φ_l(e_j))_l, expressed in the
    // generators of M**.
    let eval_cols: Vec<Vec<Poly>> = (0..m.ngens())
        .map(|j| (0..s).map(|l| d.maps[l].get(0, j).clone()).collect())
        .collect();
    let q = dd.maps.len();
    let mut eta = Matrix::zero(ring, q, m.ngens());
    if q > 0 && s > 0 {
        let gens: Vec<Vec<Poly>> = dd.maps.iter().map(|g| g.row(0)).collect();
        let l = Lifter::new(ring, s, &gens);
        for (j, v) in eval_cols.iter().enumerate() {
            let c = l.lift(v).expect("evaluation maps lie in the double dual");
            for (k, p) in c.into_iter().enumerate() {
                eta.set(k, j, p);
            }
        }
    }
    let eta = ModuleMap::unchecked(m.clone(), dd.module.clone(), eta);
    let injective = eta.is_injective();
    let iso = injective && eta.is_surjective();
    Bidual {
        dual: d,
        bidual: dd,
        eta,
        injective,
        iso,
    }
}
