//! Orders built from reflexive, non-locally-free modules: the twisted
//! cokernel construction with its pair search, the Koszul syzygy
//! construction, `End_R(R ⊕ M)` over a singular surface, and the sufficient
//! conditions for maximality.

use std::fmt;

use rayon::prelude::*;

use crate::azumaya::{twisted_cokernel, twisted_end, AlgElem, EndAlgebra, SCAlgebra};
use crate::error::{Error, Result};
use crate::fpmod::{bidual_map, FPModule};
use crate::groebner::{Codim, Ideal};
use crate::homological::{depth_ext, projective_dimension, reflexive_certificate, torsionfree_test, ProjDim, Verdict};
use crate::matrix::{subsets, Matrix};
use crate::poly::Poly;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Theorem1Pair,
    SyzygyMatrix,
    SurfaceEnd,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Theorem1Pair => "theorem1_pair",
            Construction::SyzygyMatrix => "syzygy_matrix",
            Construction::SurfaceEnd => "surface_end",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    Certified,
    Rejected {
        check: String,
        reason: String,
        witness: Option<String>,
    },
}

impl OrderVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, OrderVerdict::Certified)
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderVerdict::Certified => f.write_str("certified_non_azumaya_maximal_order"),
            OrderVerdict::Rejected { reason, .. } => write!(f, "rejected({reason})"),
        }
    }
}

/// The sufficient conditions for an order to be maximal.
#[derive(Clone, Debug)]
pub struct MaximalityRecord {
    pub generic_rank: usize,
    pub degree: usize,
    pub reflexive: bool,
    pub nonfree_locus: Ideal,
    pub nonfree_codim: Codim,
    pub locally_free_codim1: bool,
    /// Zero set is the non-Azumaya locus.
    pub non_azumaya_locus: Ideal,
    pub non_azumaya_codim: Codim,
    pub azumaya_codim1: bool,
    pub azumaya_everywhere: bool,
    /// Generator subsets whose trace-form discriminants were computed.
    pub subsets_used: usize,
    pub sufficient: bool,
}

#[derive(Clone, Debug)]
pub struct OrderCertificate {
    pub construction: Construction,
    pub inputs: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub nonfree_locus: Option<Ideal>,
    pub nonfree_codim: Option<Codim>,
    pub end_rank: Option<usize>,
    pub end_nonfree_locus: Option<Ideal>,
    pub end_nonfree_codim: Option<Codim>,
    pub maximality: Option<MaximalityRecord>,
    pub verdict: OrderVerdict,
    pub notes: Vec<String>,
}

impl OrderCertificate {
    fn new(construction: Construction, inputs: Vec<(String, String)>) -> OrderCertificate {
        OrderCertificate {
            construction,
            inputs,
            checks: Vec::new(),
            nonfree_locus: None,
            nonfree_codim: None,
            end_rank: None,
            end_nonfree_locus: None,
            end_nonfree_codim: None,
            maximality: None,
            verdict: OrderVerdict::Certified,
            notes: Vec::new(),
        }
    }

    /// Records a check; the first failing one fixes the verdict. Returns
    /// whether the certificate is still clean.
    fn check(&mut self, name: &str, passed: bool, value: String, reason: impl FnOnce() -> String, witness: Option<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            value,
        });
        if !passed && self.verdict.is_certified() {
            self.verdict = OrderVerdict::Rejected {
                check: name.into(),
                reason: reason(),
                witness,
            };
        }
        self.verdict.is_certified()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Number of checks passed before the first failure.
    pub fn progress(&self) -> usize {
        self.checks.iter().take_while(|c| c.passed).count()
    }
}

fn isqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// Sufficient conditions for `Λ` to be a maximal order: (a) reflexive,
/// (b) locally free in codimension 1, (c) Azumaya in codimension 1. The
/// Azumaya locus is read from trace-form discriminants of generator subsets
/// of size `rank Λ`: where `Λ` is locally free some subset is a local basis,
/// and the discriminant of a basis is a unit exactly at Azumaya points;
/// where it is not locally free every discriminant vanishes.
pub fn maximality_certificate(end: &EndAlgebra) -> Result<MaximalityRecord> {
    let ring = end.ring().clone();
    let n = end.generic_rank()?;
    let degree = isqrt(n).ok_or(Error::NotSquareRank(n))?;
    let reflexive = bidual_map(&end.module).iso;
    let (_, nonfree_locus, nonfree_codim) = end.module.fitting_nonfree_locus()?;
    let gram = end.trace_form()?;
    let subs = subsets(end.ngens(), n);
    let mut dets: Vec<Poly> = Vec::new();
    let mut used = 0;
    // small batches, so that a unit discriminant stops the scan early
    for chunk in subs.chunks(16) {
        let batch: Vec<Poly> = chunk.par_iter().map(|s| gram.select(s, s).det().monic()).collect();
        used += chunk.len();
        let unit = batch.iter().any(|d| d.is_nonzero_constant());
        for d in batch {
            if !d.is_zero() && !dets.contains(&d) {
                dets.push(d);
            }
        }
        if unit {
            dets = vec![ring.one()];
            break;
        }
    }
    let non_azumaya_locus = Ideal::new(&ring, dets)?;
    let non_azumaya_codim = non_azumaya_locus.codim();
    let locally_free_codim1 = nonfree_codim.at_least(2);
    let azumaya_codim1 = non_azumaya_codim.at_least(2);
    Ok(MaximalityRecord {
        generic_rank: n,
        degree,
        reflexive,
        nonfree_locus,
        nonfree_codim,
        locally_free_codim1,
        azumaya_everywhere: non_azumaya_locus.is_unit(),
        non_azumaya_locus,
        non_azumaya_codim,
        azumaya_codim1,
        subsets_used: used,
        sufficient: reflexive && locally_free_codim1 && azumaya_codim1,
    })
}

fn maximality_value(m: &MaximalityRecord) -> String {
    format!(
        "reflexive={} locally_free_codim1={} (nonfree codim {}) azumaya_codim1={} (non-Azumaya codim {})",
        m.reflexive, m.locally_free_codim1, m.nonfree_codim, m.azumaya_codim1, m.non_azumaya_codim
    )
}

/// Checks shared by every construction once the order is in hand.
fn end_checks(cert: &mut OrderCertificate, end: &EndAlgebra, expected_rank: usize) -> Result<()> {
    let rank = end.generic_rank()?;
    cert.end_rank = Some(rank);
    if !cert.check(
        "end_rank",
        rank == expected_rank,
        rank.to_string(),
        || format!("end_rank={rank}, expected {expected_rank}"),
        None,
    ) {
        return Ok(());
    }
    let (_, locus, codim) = end.module.fitting_nonfree_locus()?;
    cert.end_nonfree_locus = Some(locus.clone());
    cert.end_nonfree_codim = Some(codim);
    if !cert.check(
        "end_not_locally_free",
        !locus.is_unit(),
        format!("{} codim {}", locus.canonical_string(), codim),
        || "End locally free".into(),
        None,
    ) {
        return Ok(());
    }
    let m = maximality_certificate(end)?;
    let value = maximality_value(&m);
    let ok = m.sufficient;
    let witness = if !m.reflexive {
        Some("End is not reflexive".to_string())
    } else if !m.locally_free_codim1 {
        Some(m.nonfree_locus.canonical_string())
    } else if !m.azumaya_codim1 {
        Some(m.non_azumaya_locus.canonical_string())
    } else {
        None
    };
    let not_azumaya = !m.azumaya_everywhere;
    let az_value = format!("non-Azumaya codim {}", m.non_azumaya_codim);
    cert.maximality = Some(m);
    if !cert.check("maximality_sufficient", ok, value, || "maximality_sufficient".into(), witness) {
        return Ok(());
    }
    cert.check("azumaya_verdict", not_azumaya, az_value, || "order is Azumaya".into(), None);
    Ok(())
}

fn require_dim3(ring: &Ring) -> Result<()> {
    if ring.dim() < 3 {
        return Err(Error::Precondition(format!("base ring has dimension {} < 3", ring.dim())));
    }
    Ok(())
}

fn require_azumaya(a: &SCAlgebra) -> Result<()> {
    if !a.azumaya_test().azumaya {
        return Err(Error::Precondition(format!("{} is not Azumaya", a.label())));
    }
    Ok(())
}

/// `E = coker(A -> A², m ↦ (m f, m g))` and `End_A(E)`, with every
/// hypothesis of the construction checked in turn.
pub fn theorem1_construct(a: &SCAlgebra, f: &AlgElem, g: &AlgElem) -> Result<OrderCertificate> {
    require_azumaya(a)?;
    require_dim3(a.ring())?;
    construct(a, f, g, true)
}

/// `document`: after a failed locus check, still record reflexivity at the
/// locus (the depth criterion explains the failure).
fn construct(a: &SCAlgebra, f: &AlgElem, g: &AlgElem, document: bool) -> Result<OrderCertificate> {
    let ring = a.ring();
    let mut cert = OrderCertificate::new(
        Construction::Theorem1Pair,
        vec![
            ("algebra".into(), a.label().to_string()),
            ("f".into(), f.to_string()),
            ("g".into(), g.to_string()),
        ],
    );
    let e = twisted_cokernel(a, f, g)?;
    if !cert.check(
        "presentation_injective",
        e.injective,
        e.injectivity.clone(),
        || "presentation not injective".into(),
        None,
    ) {
        return Ok(cert);
    }
    let (rank, locus, codim) = e.unfolded.fitting_nonfree_locus()?;
    cert.nonfree_locus = Some(locus.clone());
    cert.nonfree_codim = Some(codim);
    let locus_text = format!("{} codim {}", locus.canonical_string(), codim);
    if !cert.check(
        "not_locally_free",
        !locus.is_unit(),
        locus_text.clone(),
        || "everywhere locally free".into(),
        None,
    ) {
        return Ok(cert);
    }
    let codim_ok = codim.at_least(3) && codim.finite().is_some_and(|c| c as i64 <= ring.dim());
    let clean = cert.check(
        "nonfree_locus_codim",
        codim_ok,
        locus_text,
        || format!("nonfree_locus_codim={codim}"),
        Some(locus.canonical_string()),
    );
    if !clean && !document {
        return Ok(cert);
    }
    let tf = torsionfree_test(&e.unfolded)?;
    cert.check(
        "torsion_free",
        tf.torsion_free,
        tf.torsion_free.to_string(),
        || "torsion".into(),
        tf.witness.as_ref().map(|(_, r)| r.to_string()),
    );
    let refl = reflexive_certificate(&e.unfolded, std::slice::from_ref(&locus))?;
    let refl_value = match &refl.verdict {
        Verdict::Reflexive => "reflexive".to_string(),
        Verdict::NotReflexive { witness } => format!("not reflexive: {witness}"),
    };
    cert.notes.extend(refl.findings.iter().cloned());
    if !cert.check("reflexive", refl.bidual_iso, refl_value.clone(), || "not reflexive".into(), Some(refl_value)) {
        return Ok(cert);
    }
    if !clean {
        return Ok(cert);
    }
    let pd = projective_dimension(&e.unfolded, None)?;
    cert.check("pd", pd == ProjDim::Exact(1), pd.to_string(), || format!("pd={pd}"), None);
    let depth = depth_ext(&locus, &e.unfolded)?;
    let want = (ring.dim() - 1) as usize;
    cert.check(
        "depth_at_locus",
        depth == want,
        depth.to_string(),
        || format!("depth={depth}, expected {want}"),
        None,
    );
    if !cert.verdict.is_certified() {
        return Ok(cert);
    }
    let end = twisted_end(&e)?;
    debug_assert_eq!(rank, a.rank());
    end_checks(&mut cert, &end, rank)?;
    Ok(cert)
}

/// Candidate pairs `f = a x + b`, `g = c y + d` over distinct non-scalar
/// basis elements `x, y`, coefficients from `{±t_i, ±t_i ± t_j, 0}` in that
/// order, where the `t_i` generate the target ideal.
pub fn candidate_pairs(a: &SCAlgebra, target: &Ideal) -> Vec<(AlgElem, AlgElem)> {
    let ring = a.ring();
    let t = target.gens().to_vec();
    let mut pool: Vec<Poly> = Vec::new();
    for x in &t {
        pool.push(x.clone());
    }
    for x in &t {
        pool.push(-x);
    }
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                pool.push(&t[i].scale_int(si) + &t[j].scale_int(sj));
            }
        }
    }
    pool.push(ring.zero());
    let unit_idx = (0..a.rank()).find(|&k| a.one() == a.basis(k));
    let units: Vec<usize> = (0..a.rank()).filter(|&k| Some(k) != unit_idx).collect();
    let elem = |coef: &Poly, x: usize, c0: &Poly| -> AlgElem {
        let mut e = a.scalar(c0);
        e.coords[x] = &e.coords[x] + coef;
        e
    };
    let mut out = Vec::new();
    for &x in &units {
        for &y in &units {
            if x == y {
                continue;
            }
            for pa in &pool {
                for pb in &pool {
                    for pc in &pool {
                        for pd in &pool {
                            out.push((elem(pa, x, pb), elem(pc, y, pd)));
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct PairSearchReport {
    pub budget: usize,
    /// Candidates examined, up to and including the success.
    pub examined: usize,
    pub found: Option<(AlgElem, AlgElem)>,
    /// The certified pair's certificate, or the most advanced rejected one.
    pub certificate: Option<OrderCertificate>,
    pub best_pair: Option<(AlgElem, AlgElem)>,
}

impl PairSearchReport {
    pub fn into_result(self) -> Result<(AlgElem, AlgElem, OrderCertificate)> {
        match (self.found, self.certificate) {
            (Some((f, g)), Some(c)) => Ok((f, g, c)),
            (_, c) => Err(Error::BudgetExhausted {
                budget: self.budget,
                best: c.map(|c| c.verdict.to_string()).unwrap_or_else(|| "none".into()),
            }),
        }
    }
}

const SEARCH_BATCH: usize = 8;

/// Searches `candidate_pairs`, preceded by `first` when given, for a pair
/// whose construction is certified. Candidates in a batch run concurrently;
/// the result is the first success in enumeration order.
pub fn pair_search(
    a: &SCAlgebra,
    target: &Ideal,
    first: Option<(AlgElem, AlgElem)>,
    budget: usize,
) -> Result<PairSearchReport> {
    require_azumaya(a)?;
    require_dim3(a.ring())?;
    if !target.codim().at_least(3) || target.is_unit() {
        return Err(Error::Precondition(format!(
            "target ideal {} has codim {} < 3",
            target,
            target.codim()
        )));
    }
    let mut cands = Vec::new();
    if let Some(p) = first {
        cands.push(p);
    }
    cands.extend(candidate_pairs(a, target));
    let inside = |x: &AlgElem| x.coords.iter().all(|c| target.contains(c));
    let mut best: Option<(usize, (AlgElem, AlgElem), OrderCertificate)> = None;
    let mut examined = 0;
    for batch in cands.chunks(SEARCH_BATCH) {
        let take = batch.len().min(budget - examined);
        if take == 0 {
            break;
        }
        let results: Vec<Option<Result<OrderCertificate>>> = batch[..take]
            .par_iter()
            .map(|(f, g)| {
                if !inside(f) || !inside(g) || (f.coords.iter().all(|c| c.is_zero()) && g.coords.iter().all(|c| c.is_zero())) {
                    return None;
                }
                Some(construct(a, f, g, false))
            })
            .collect();
        for (k, r) in results.into_iter().enumerate() {
            examined += 1;
            let Some(r) = r else { continue };
            let cert = r?;
            if cert.verdict.is_certified() {
                let pair = batch[k].clone();
                return Ok(PairSearchReport {
                    budget,
                    examined,
                    found: Some(pair.clone()),
                    certificate: Some(cert),
                    best_pair: Some(pair),
                });
            }
            if best.as_ref().is_none_or(|(p, _, _)| cert.progress() > *p) {
                best = Some((cert.progress(), batch[k].clone(), cert));
            }
        }
    }
    let (best_pair, certificate) = match best {
        Some((_, p, c)) => (Some(p), Some(c)),
        None => (None, None),
    };
    Ok(PairSearchReport {
        budget,
        examined,
        found: None,
        certificate,
        best_pair,
    })
}

/// The Koszul syzygy module of the first three variables, the kernel of
/// `(x_1 x_2 x_3): R³ -> R`.
pub fn koszul_syzygy(ring: &Ring) -> Result<FPModule> {
    require_dim3(ring)?;
    let x: Vec<Poly> = ring.vars().into_iter().take(3).collect();
    let z = ring.zero();
    let cols = vec![
        vec![x[1].clone(), -&x[0], z.clone()],
        vec![x[2].clone(), z.clone(), -&x[0]],
        vec![z, x[2].clone(), -&x[1]],
    ];
    Ok(FPModule::image_of(ring, 3, &cols))
}

/// `End_R(Z ⊕ R^{n-2})` for the Koszul syzygy `Z` of rank 2.
pub fn syzygy_order(ring: &Ring, n: usize) -> Result<OrderCertificate> {
    if n < 2 {
        return Err(Error::Precondition(
            "rank must be at least 2: a rank-1 reflexive module over a regular ring is free".into(),
        ));
    }
    let z = koszul_syzygy(ring)?;
    let m = if n > 2 { z.direct_sum(&FPModule::free(ring, n - 2)) } else { z.clone() };
    let mut cert = OrderCertificate::new(
        Construction::SyzygyMatrix,
        vec![("ring".into(), ring.to_string()), ("n".into(), n.to_string())],
    );
    let rank = m.generic_rank()?;
    if !cert.check("rank", rank == n, rank.to_string(), || format!("rank={rank}"), None) {
        return Ok(cert);
    }
    let origin = Ideal::new(ring, ring.vars().into_iter().take(3).collect())?;
    let pd = projective_dimension(&z, None)?;
    cert.check("pd", pd == ProjDim::Exact(1), pd.to_string(), || format!("pd={pd}"), None);
    let depth = depth_ext(&origin, &z)?;
    cert.check("depth_at_origin", depth == 2, depth.to_string(), || format!("depth={depth}"), None);
    let refl = reflexive_certificate(&m, std::slice::from_ref(&origin))?;
    cert.notes.extend(refl.findings.iter().cloned());
    cert.check(
        "reflexive",
        refl.bidual_iso,
        refl.bidual_iso.to_string(),
        || "not reflexive".into(),
        None,
    );
    let (_, locus, codim) = m.fitting_nonfree_locus()?;
    cert.nonfree_locus = Some(locus.clone());
    cert.nonfree_codim = Some(codim);
    let text = format!("{} codim {}", locus.canonical_string(), codim);
    cert.check(
        "not_locally_free",
        !locus.is_unit(),
        text.clone(),
        || "everywhere locally free".into(),
        None,
    );
    cert.check(
        "nonfree_locus_codim",
        codim.at_least(3),
        text,
        || format!("nonfree_locus_codim={codim}"),
        Some(locus.canonical_string()),
    );
    if !cert.verdict.is_certified() {
        return Ok(cert);
    }
    let end = EndAlgebra::of_module(&m)?;
    end_checks(&mut cert, &end, n * n)?;
    Ok(cert)
}

/// Singular locus of `R = S/J` from the Jacobian criterion: the ideal of
/// `c`-minors of the Jacobian of `J` (`c = codim J`). The unit ideal means
/// `R` is regular.
pub fn singular_locus(ring: &Ring) -> Result<Ideal> {
    if !ring.is_quotient() {
        return Ok(Ideal::unit(ring));
    }
    let rels = ring.quotient_relations();
    let c = (ring.nvars() as i64 - ring.dim()) as usize;
    let rows: Vec<Vec<Poly>> = rels.iter().map(|p| (0..ring.nvars()).map(|i| p.derivative(i)).collect()).collect();
    let jac = Matrix::from_rows(ring, rows)?;
    Ideal::new(ring, jac.minors(c))
}

/// `End_R(R ⊕ M)` for a maximal Cohen–Macaulay `M` over a two-dimensional
/// normal base.
pub fn surface_order(ring: &Ring, m: &FPModule) -> Result<OrderCertificate> {
    if m.ring() != ring {
        return Err(Error::RingMismatch("module is not over the given ring".into()));
    }
    let mut cert = OrderCertificate::new(
        Construction::SurfaceEnd,
        vec![("ring".into(), ring.to_string()), ("module".into(), m.to_text())],
    );
    if ring.dim() != 2 {
        return Err(Error::Precondition(format!("base ring has dimension {}, expected 2", ring.dim())));
    }
    let sing = singular_locus(ring)?;
    if !cert.check(
        "singular_base",
        !sing.is_unit(),
        sing.canonical_string(),
        || "regular base".into(),
        None,
    ) {
        cert.notes.push("over a regular surface every reflexive module is locally free, so End_R(R ⊕ M) is Azumaya".into());
        return Ok(cert);
    }
    if !torsionfree_test(m)?.torsion_free {
        return Err(Error::Precondition("M is not torsion-free".into()));
    }
    let origin = Ideal::maximal_at_origin(ring);
    let depth = depth_ext(&origin, m)?;
    if depth != 2 {
        return Err(Error::Precondition(format!("M is not maximal Cohen-Macaulay: depth {depth} < 2")));
    }
    cert.check("mcm_depth", true, depth.to_string(), String::new, None);
    let rm = FPModule::free(ring, 1).direct_sum(m);
    let (_, locus, codim) = rm.fitting_nonfree_locus()?;
    cert.nonfree_locus = Some(locus.clone());
    cert.nonfree_codim = Some(codim);
    let rank_m = m.generic_rank()?;
    let end = EndAlgebra::of_module(&rm)?;
    end_checks(&mut cert, &end, (1 + rank_m) * (1 + rank_m))?;
    if let Some(l) = cert.end_nonfree_locus.clone() {
        if cert.verdict.is_certified() {
            let at_point = l.gens().iter().all(|g| sing.radical_contains(g));
            cert.check(
                "nonfree_at_singular_point",
                at_point,
                format!("singular locus {} lies in the End nonfree locus {}", sing.canonical_string(), l.canonical_string()),
                || "End nonfree away from the singular point".into(),
                None,
            );
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::azumaya::dual_numbers;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;

    fn ring() -> Ring {
        Ring::polynomial(Field::Rational, &["u", "v", "w"], MonomialOrder::GrevLex).unwrap()
    }

    fn quat(r: &Ring) -> SCAlgebra {
        SCAlgebra::quaternion(r, &r.constant(-1), &r.constant(-1)).unwrap()
    }

    fn rejected_reason(c: &OrderCertificate) -> String {
        match &c.verdict {
            OrderVerdict::Rejected { reason, .. } => reason.clone(),
            OrderVerdict::Certified => "certified".into(),
        }
    }

    #[test]
    fn azumaya_algebra_meets_every_condition() {
        let r = ring();
        let m = maximality_certificate(&EndAlgebra::of_algebra(&quat(&r))).unwrap();
        assert!(m.sufficient && m.azumaya_everywhere);
        assert_eq!((m.degree, m.nonfree_codim, m.non_azumaya_codim), (2, Codim::Infinite, Codim::Infinite));
    }

    #[test]
    fn non_square_rank_is_an_error() {
        let r = ring();
        let n = 5;
        let z = r.zero();
        let mut c = vec![vec![vec![z.clone(); n]; n]; n];
        for (i, slab) in c.iter_mut().enumerate() {
            slab[i][i] = r.one();
        }
        let a = SCAlgebra::new(&r, (0..n).map(|i| format!("e{i}")).collect(), c, vec![r.one(); n], None, "diag5").unwrap();
        let err = maximality_certificate(&EndAlgebra::of_algebra(&a)).unwrap_err();
        assert_eq!(err, Error::NotSquareRank(5));
    }

    #[test]
    fn literal_pair_is_rejected_at_codim_two() {
        let r = ring();
        let a = quat(&r);
        let c = theorem1_construct(&a, &a.parse_element("u*i + v").unwrap(), &a.parse_element("w*j").unwrap()).unwrap();
        assert_eq!(rejected_reason(&c), "nonfree_locus_codim=2");
        assert_eq!(c.nonfree_codim, Some(Codim::Finite(2)));
        let expected = Ideal::parse(&r, &["u^2+v^2", "w"]).unwrap();
        assert!(c.nonfree_locus.as_ref().unwrap().same_locus(&expected));
        assert!(!c.get("reflexive").unwrap().passed);
    }

    #[test]
    fn split_pair_is_locally_free() {
        let r = ring();
        let a = quat(&r);
        let c = theorem1_construct(&a, &a.one(), &a.zero()).unwrap();
        assert_eq!(rejected_reason(&c), "everywhere locally free");
    }

    #[test]
    fn preconditions() {
        let r = ring();
        let a = quat(&r);
        let codim2 = Ideal::parse(&r, &["u", "v"]).unwrap();
        assert!(matches!(pair_search(&a, &codim2, None, 10), Err(Error::Precondition(_))));
        let d = dual_numbers(&r);
        assert!(theorem1_construct(&d, &d.one(), &d.zero()).is_err());
        let r2 = Ring::polynomial(Field::Rational, &["u", "v"], MonomialOrder::GrevLex).unwrap();
        let a2 = quat(&r2);
        assert!(theorem1_construct(&a2, &a2.one(), &a2.zero()).is_err());
        assert!(syzygy_order(&r, 1).is_err());
        assert!(syzygy_order(&r2, 2).is_err());
    }

    #[test]
    fn budget_one_is_exhausted_by_the_literal_pair() {
        let r = ring();
        let a = quat(&r);
        let target = Ideal::parse(&r, &["u", "v", "w"]).unwrap();
        let first = (a.parse_element("u*i + v").unwrap(), a.parse_element("w*j").unwrap());
        let rep = pair_search(&a, &target, Some(first), 1).unwrap();
        assert_eq!(rep.examined, 1);
        assert!(rep.found.is_none());
        assert!(matches!(rep.into_result(), Err(Error::BudgetExhausted { budget: 1, .. })));
    }

    #[test]
    fn koszul_syzygy_order() {
        let r = ring();
        let c = syzygy_order(&r, 2).unwrap();
        assert!(c.verdict.is_certified(), "{:?}", c.verdict);
        assert_eq!(c.end_rank, Some(4));
        assert_eq!(c.nonfree_locus, Some(Ideal::maximal_at_origin(&r)));
    }

    #[test]
    fn surface_rejections() {
        let r2 = Ring::polynomial(Field::Rational, &["u", "v"], MonomialOrder::GrevLex).unwrap();
        let m = FPModule::from_ideal(&Ideal::parse(&r2, &["u", "v"]).unwrap());
        let c = surface_order(&r2, &m).unwrap();
        assert_eq!(rejected_reason(&c), "regular base");
        let r = ring();
        let s = r.quotient(&[r.parse("u*v - w^2").unwrap()], true).unwrap();
        let c = surface_order(&s, &FPModule::free(&s, 1)).unwrap();
        assert_eq!(rejected_reason(&c), "End locally free");
        let torsion = FPModule::quotient_ring(&Ideal::parse(&s, &["u", "w"]).unwrap());
        assert!(surface_order(&s, &torsion).is_err());
    }

    #[test]
    fn singular_locus_of_a1() {
        let r = ring();
        let s = r.quotient(&[r.parse("u*v - w^2").unwrap()], true).unwrap();
        assert_eq!(singular_locus(&s).unwrap(), Ideal::maximal_at_origin(&s));
        assert!(singular_locus(&r).unwrap().is_unit());
    }
}
