//! Runs one compiled task and renders its results in task-file syntax.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use orderforge_core::fpmod::bidual_map;
use orderforge_core::homological::{
    ab_verify, depth_at_prime, depth_ext, depth_regseq, projective_dimension, reflexive_certificate, torsionfree_test, Verdict,
};
use orderforge_core::orders::{pair_search, surface_order, syzygy_order, theorem1_construct, OrderCertificate, OrderVerdict};
use orderforge_core::{Error, FPModule, Ideal, Result};

use crate::program::{DepthMethod, TaskKind};

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub value: String,
    pub fields: BTreeMap<String, Value>,
    pub certificate: Option<Value>,
}

impl Outcome {
    fn new(value: impl ToString) -> Outcome {
        Outcome {
            value: value.to_string(),
            ..Outcome::default()
        }
    }

    fn with(mut self, key: &str, v: impl Into<Value>) -> Outcome {
        self.fields.insert(key.to_string(), v.into());
        self
    }
}

/// A module expression that the task-file parser reads back.
pub fn module_syntax(m: &FPModule) -> String {
    let pres = m.presentation().compress();
    match (m.ngens(), pres.ncols()) {
        (0, _) => "R^0".into(),
        (1, 0) => "R".into(),
        (n, 0) => format!("R^{n}"),
        _ => format!("coker({pres})"),
    }
}

fn ideal_syntax(i: &Ideal) -> String {
    i.canonical_string()
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::from(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

pub fn certificate_json(c: &OrderCertificate) -> Value {
    let (rejected_check, reason, witness) = match &c.verdict {
        OrderVerdict::Certified => (None, None, None),
        OrderVerdict::Rejected { check, reason, witness } => (Some(check.clone()), Some(reason.clone()), witness.clone()),
    };
    let maximality = c.maximality.as_ref().map(|m| {
        json!({
            "generic_rank": m.generic_rank,
            "degree": m.degree,
            "reflexive": m.reflexive,
            "nonfree_locus": ideal_syntax(&m.nonfree_locus),
            "nonfree_codim": m.nonfree_codim.to_string(),
            "locally_free_codim1": m.locally_free_codim1,
            "non_azumaya_locus": ideal_syntax(&m.non_azumaya_locus),
            "non_azumaya_codim": m.non_azumaya_codim.to_string(),
            "azumaya_codim1": m.azumaya_codim1,
            "azumaya_everywhere": m.azumaya_everywhere,
            "subsets_used": m.subsets_used,
            "sufficient": m.sufficient,
        })
    });
    let inputs: BTreeMap<String, String> = c.inputs.iter().cloned().collect();
    json!({
        "construction": c.construction.to_string(),
        "inputs": inputs,
        "checks": c.checks.iter().map(|k| json!({"name": k.name, "passed": k.passed, "value": k.value})).collect::<Vec<_>>(),
        "nonfree_locus": c.nonfree_locus.as_ref().map(ideal_syntax),
        "nonfree_codim": c.nonfree_codim.map(|x| x.to_string()),
        "end_rank": c.end_rank,
        "end_nonfree_locus": c.end_nonfree_locus.as_ref().map(ideal_syntax),
        "end_nonfree_codim": c.end_nonfree_codim.map(|x| x.to_string()),
        "maximality": maximality,
        "verdict": c.verdict.to_string(),
        "rejected_check": rejected_check,
        "reason": reason,
        "witness": witness,
        "notes": c.notes,
    })
}

fn order_outcome(c: &OrderCertificate) -> Outcome {
    let mut o = Outcome::new(if c.verdict.is_certified() { "certified" } else { "rejected" })
        .with("verdict", c.verdict.to_string())
        .with("construction", c.construction.to_string());
    if let OrderVerdict::Rejected { check, reason, .. } = &c.verdict {
        o = o.with("rejected_check", check.as_str()).with("reason", reason.as_str());
    }
    if let Some(l) = &c.nonfree_locus {
        o = o.with("nonfree_locus", ideal_syntax(l));
    }
    if let Some(x) = c.nonfree_codim {
        o = o.with("nonfree_codim", x.to_string());
    }
    if let Some(r) = c.end_rank {
        o = o.with("end_rank", r);
    }
    if let Some(x) = c.end_nonfree_codim {
        o = o.with("end_nonfree_codim", x.to_string());
    }
    for k in &c.checks {
        o = o.with(&format!("check.{}", k.name), k.passed);
    }
    o.certificate = Some(certificate_json(c));
    o
}

fn depth_or_infinite(r: Result<usize>) -> Result<String> {
    match r {
        Ok(d) => Ok(d.to_string()),
        Err(Error::DepthInfinite) => Ok("infinite".into()),
        Err(e) => Err(e),
    }
}

pub fn execute(kind: &TaskKind, seed: u64) -> Result<Outcome> {
    Ok(match kind {
        TaskKind::Gb { ideal } => {
            let gb = ideal.gb();
            Outcome::new(ideal_syntax(ideal))
                .with("size", gb.len())
                .with("basis", strings(&gb.polys()))
                .with("dim", ideal.krull_dim())
                .with("codim", ideal.codim().to_string())
        }
        TaskKind::Codim { ideal } => Outcome::new(ideal.codim()).with("dim", ideal.krull_dim()),
        TaskKind::Depth { ideal, module, method, search } => match method {
            DepthMethod::Ext => {
                let d = depth_or_infinite(depth_ext(ideal, module))?;
                Outcome::new(&d).with("ext_depth", d)
            }
            DepthMethod::Regseq | DepthMethod::Both => {
                let r = depth_regseq(ideal, module, *search, seed)?;
                let mut o = Outcome::new(r.regseq_depth)
                    .with("regseq_depth", r.regseq_depth)
                    .with("witness", strings(&r.witness))
                    .with("candidates_tried", r.candidates_tried);
                if *method == DepthMethod::Both {
                    o = o.with("ext_depth", r.ext_depth).with("agree", r.ext_depth == r.regseq_depth);
                }
                o
            }
        },
        TaskKind::DepthDrop { ideal, module, search } => {
            let r = depth_regseq(ideal, module, *search, seed)?;
            let mut cur = module.clone();
            let mut depths = vec![r.depth];
            let mut holds = true;
            for x in &r.witness {
                cur = cur.mod_element(x);
                let d = depth_ext(ideal, &cur)?;
                holds &= d + 1 == *depths.last().unwrap();
                depths.push(d);
            }
            Outcome::new(holds)
                .with("depth", r.depth)
                .with("witness", strings(&r.witness))
                .with("depths", depths)
        }
        TaskKind::DepthAtPrime { prime, module } => Outcome::new(depth_or_infinite(depth_at_prime(prime, module))?),
        TaskKind::Pd { module, bound } => {
            let pd = projective_dimension(module, *bound)?;
            Outcome::new(pd)
        }
        TaskKind::Ab { ideal, module } => {
            let r = ab_verify(module, ideal)?;
            Outcome::new(r.holds)
                .with("pd", r.pd)
                .with("depth_module", r.depth_module)
                .with("depth_ring", r.depth_ring)
        }
        TaskKind::TorsionFree { module } => {
            let r = torsionfree_test(module)?;
            let mut o = Outcome::new(r.torsion_free);
            if let Some((x, a)) = &r.witness {
                o = o.with("witness_element", strings(x)).with("witness_annihilator", a.to_string());
            }
            if let Some(c) = r.fitting_codim {
                o = o.with("fitting_codim", c.to_string());
            }
            o
        }
        TaskKind::Reflexive { module, primes } => {
            let c = reflexive_certificate(module, primes)?;
            let (value, witness) = match &c.verdict {
                Verdict::Reflexive => ("reflexive", None),
                Verdict::NotReflexive { witness } => ("not_reflexive", Some(witness.clone())),
            };
            let critical: Vec<Value> = c
                .critical
                .iter()
                .map(|p| {
                    json!({
                        "prime": ideal_syntax(&p.prime),
                        "codim": p.codim.to_string(),
                        "depth": p.depth.map(|d| d.to_string()).unwrap_or_else(|| "infinite".into()),
                        "source": p.source,
                    })
                })
                .collect();
            let mut o = Outcome::new(value)
                .with("torsion_free", c.torsion_free)
                .with("bidual_iso", c.bidual_iso)
                .with("criterion", c.criterion)
                .with("consistent", c.criterion == c.bidual_iso)
                .with("critical", critical)
                .with("findings", c.findings.clone());
            if let Some(w) = witness {
                o = o.with("witness", w);
            }
            o
        }
        TaskKind::Bidual { module } => {
            let b = bidual_map(module);
            let dd = &b.bidual.module;
            let (pruned, forward, back) = dd.prune();
            let round_trip = back.compose(&forward);
            let certified = forward.is_iso() && round_trip.is_well_defined() && (0..dd.ngens()).all(|j| {
                let e: Vec<_> = (0..dd.ngens()).map(|k| if k == j { dd.ring().one() } else { dd.ring().zero() }).collect();
                let back_again = round_trip.apply(&e);
                let diff: Vec<_> = back_again.iter().zip(&e).map(|(a, b)| a - b).collect();
                dd.element_is_zero(&diff)
            });
            let mut o = Outcome::new(module_syntax(&pruned))
                .with("eta_injective", b.injective)
                .with("eta_iso", b.iso)
                .with("prune_iso_verified", certified);
            if let Some(r) = pruned.free_rank() {
                o = o.with("bidual_free_rank", r);
                if r > 0 {
                    let basis: Vec<String> = back.matrix.columns().iter().map(|c| format!("[{}]", c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))).collect();
                    o = o.with("basis_in_bidual_generators", basis);
                }
            }
            o
        }
        TaskKind::Fitting { module } => {
            let (rank, locus, codim) = module.fitting_nonfree_locus()?;
            Outcome::new(codim).with("generic_rank", rank).with("locus", ideal_syntax(&locus))
        }
        TaskKind::Azumaya { algebra } => {
            let r = algebra.azumaya_test();
            Outcome::new(r.azumaya)
                .with("det", r.det.to_string())
                .with("locus", ideal_syntax(&r.locus))
                .with("codim", r.codim.to_string())
                .with("matrix_size", algebra.rank() * algebra.rank())
        }
        TaskKind::Theorem1 { algebra, f, g } => order_outcome(&theorem1_construct(algebra, f, g)?),
        TaskKind::PairSearch { algebra, target, budget, first } => {
            let r = pair_search(algebra, target, first.clone(), *budget)?;
            let mut o = match (&r.found, &r.certificate) {
                (Some(_), Some(c)) => order_outcome(c),
                (_, Some(c)) => {
                    let mut o = order_outcome(c);
                    o.value = "exhausted".into();
                    o
                }
                _ => Outcome::new("exhausted"),
            };
            if r.found.is_some() {
                o.value = "found".into();
            }
            o = o.with("examined", r.examined).with("budget", r.budget);
            if let Some((f, g)) = r.found.as_ref().or(r.best_pair.as_ref()) {
                o = o.with("f", f.to_string()).with("g", g.to_string());
            }
            o
        }
        TaskKind::SyzygyOrder { ring, n } => order_outcome(&syzygy_order(ring, *n)?),
        TaskKind::SurfaceOrder { module } => order_outcome(&surface_order(module.ring(), module)?),
    })
}
