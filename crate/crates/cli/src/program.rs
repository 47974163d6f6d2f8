//! Resolution of a parsed task file against its ring: definitions become
//! values and every task argument is checked and typed before anything runs.

use std::collections::{BTreeMap, HashMap};

use orderforge_core::azumaya::dual_numbers;
use orderforge_core::groebner::syzygies;
use orderforge_core::orders::koszul_syzygy;
use orderforge_core::{AlgElem, FPModule, Field, Ideal, Matrix, MonomialOrder, Poly, Ring, SCAlgebra};

use crate::error::CliError;
use crate::taskfile::{is_identifier, split_top, strip_wrapped, Spanned, TaskFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthMethod {
    Ext,
    Regseq,
    Both,
}

#[derive(Clone, Debug)]
pub enum TaskKind {
    Gb { ideal: Ideal },
    Codim { ideal: Ideal },
    Depth { ideal: Ideal, module: FPModule, method: DepthMethod, search: usize },
    DepthDrop { ideal: Ideal, module: FPModule, search: usize },
    DepthAtPrime { prime: Ideal, module: FPModule },
    Pd { module: FPModule, bound: Option<usize> },
    Ab { ideal: Ideal, module: FPModule },
    TorsionFree { module: FPModule },
    Reflexive { module: FPModule, primes: Vec<Ideal> },
    Bidual { module: FPModule },
    Fitting { module: FPModule },
    Azumaya { algebra: SCAlgebra },
    Theorem1 { algebra: SCAlgebra, f: AlgElem, g: AlgElem },
    PairSearch { algebra: SCAlgebra, target: Ideal, budget: usize, first: Option<(AlgElem, AlgElem)> },
    SyzygyOrder { ring: Ring, n: usize },
    SurfaceOrder { module: FPModule },
}

pub const TASK_NAMES: &[&str] = &[
    "gb",
    "codim",
    "depth",
    "depth_drop",
    "depth_at_prime",
    "pd",
    "ab",
    "torsion_free",
    "reflexive",
    "bidual",
    "fitting",
    "azumaya",
    "theorem1",
    "pair_search",
    "syzygy_order",
    "surface_order",
];

#[derive(Clone, Debug)]
pub struct Task {
    pub line: usize,
    pub op: String,
    /// Arguments other than expectations, as written.
    pub args: BTreeMap<String, String>,
    /// `("value", v)` for `expect=v`, `(field, v)` for `expect.field=v`.
    pub expect: Vec<(String, String)>,
    pub kind: TaskKind,
}

#[derive(Clone, Debug)]
pub struct Program {
    pub ring: Ring,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug)]
enum Def {
    Ideal(Ideal),
    Module(FPModule),
    Algebra(SCAlgebra),
    Element(AlgElem),
}

impl Def {
    fn kind(&self) -> &'static str {
        match self {
            Def::Ideal(_) => "ideal",
            Def::Module(_) => "module",
            Def::Algebra(_) => "algebra",
            Def::Element(_) => "element",
        }
    }
}

struct Env {
    ring: Ring,
    defs: HashMap<String, Def>,
}

fn parse_field(s: &Spanned) -> Result<Field, CliError> {
    let t = s.text.as_str();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix("Fp")
        .map(str::trim)
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| s.error(format!("unknown field `{t}` (expected `Q` or `Fp <prime>`)")))?;
    Field::prime(p).map_err(|e| s.error(e.to_string()))
}

fn parse_bool(s: &Spanned) -> Result<bool, CliError> {
    match s.text.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(s.error("expected `true` or `false`")),
    }
}

fn parse_usize(s: &Spanned) -> Result<usize, CliError> {
    s.text.parse().map_err(|_| s.error(format!("expected a non-negative integer, found `{}`", s.text)))
}

fn build_ring(entries: &[(Spanned, Spanned)]) -> Result<Ring, CliError> {
    let mut get: BTreeMap<&str, &Spanned> = BTreeMap::new();
    for (k, v) in entries {
        if !["field", "vars", "order", "quotient", "domain"].contains(&k.text.as_str()) {
            return Err(k.error(format!("unknown ring key `{}`", k.text)));
        }
        if get.insert(k.text.as_str(), v).is_some() {
            return Err(k.error(format!("duplicate ring key `{}`", k.text)));
        }
    }
    let at = Spanned {
        text: String::new(),
        line: 1,
        col: 1,
    };
    let field = parse_field(get.get("field").ok_or_else(|| at.error("[ring] needs `field`"))?)?;
    let vars_s = get.get("vars").ok_or_else(|| at.error("[ring] needs `vars`"))?;
    let vars: Vec<Spanned> = split_top(vars_s, |c| c == ',')?.iter().map(Spanned::trim).collect();
    for v in &vars {
        if !is_identifier(&v.text) || v.text.contains('.') {
            return Err(v.error(format!("bad variable name `{}`", v.text)));
        }
    }
    let order = match get.get("order") {
        None => MonomialOrder::GrevLex,
        Some(s) => match s.text.as_str() {
            "grevlex" => MonomialOrder::GrevLex,
            "lex" => MonomialOrder::Lex,
            _ => return Err(s.error("expected `grevlex` or `lex`")),
        },
    };
    let names: Vec<&str> = vars.iter().map(|v| v.text.as_str()).collect();
    let ring = Ring::polynomial(field, &names, order).map_err(|e| vars_s.error(e.to_string()))?;
    let Some(q) = get.get("quotient") else {
        if let Some(d) = get.get("domain") {
            return Err(d.error("`domain` applies only to quotient rings"));
        }
        return Ok(ring);
    };
    let domain = parse_bool(get.get("domain").ok_or_else(|| q.error("a quotient ring must state `domain = true|false`"))?)?;
    let mut rels = Vec::new();
    for r in split_top(q, |c| c == ',')? {
        let r = r.trim();
        rels.push(ring.parse(&r.text).map_err(|e| r.relocate(e))?);
    }
    ring.quotient(&rels, domain).map_err(|e| q.error(e.to_string()))
}

/// `name(inner)` split into its parts.
fn call(s: &Spanned) -> Option<(String, Spanned)> {
    let open = s.text.find('(')?;
    let name = s.text[..open].trim();
    if !is_identifier(name) {
        return None;
    }
    let rest = s.slice(open, s.text.len());
    strip_wrapped(&rest, '(', ')').map(|inner| (name.to_string(), inner))
}

fn items(s: &Spanned) -> Result<Vec<Spanned>, CliError> {
    if s.text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(split_top(s, |c| c == ',')?.iter().map(Spanned::trim).collect())
}

impl Env {
    fn lookup(&self, s: &Spanned, kind: &str) -> Result<Option<&Def>, CliError> {
        match self.defs.get(&s.text) {
            Some(d) if d.kind() == kind => Ok(Some(d)),
            Some(d) => Err(s.error(format!("`{}` is a {}, expected a {kind}", s.text, d.kind()))),
            None => Ok(None),
        }
    }

    fn poly(&self, s: &Spanned) -> Result<Poly, CliError> {
        self.ring.parse(&s.text).map_err(|e| s.relocate(e))
    }

    fn ideal(&self, s: &Spanned) -> Result<Ideal, CliError> {
        if let Some(Def::Ideal(i)) = self.lookup(s, "ideal")? {
            return Ok(i.clone());
        }
        let inner = strip_wrapped(s, '(', ')')
            .ok_or_else(|| s.error(format!("expected an ideal `(p, ...)` or an ideal name, found `{}`", s.text)))?;
        let gens = items(&inner)?.iter().map(|p| self.poly(p)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ring, gens).map_err(|e| s.error(e.to_string()))
    }

    fn matrix(&self, s: &Spanned) -> Result<Matrix, CliError> {
        let inner = strip_wrapped(s, '[', ']').ok_or_else(|| s.error("expected a matrix `[[a, b], [c, d]]`"))?;
        let mut rows = Vec::new();
        for r in items(&inner)? {
            let row = strip_wrapped(&r, '[', ']').ok_or_else(|| r.error("expected a row `[a, b, ...]`"))?;
            rows.push(items(&row)?.iter().map(|p| self.poly(p)).collect::<Result<Vec<_>, _>>()?);
        }
        if rows.is_empty() {
            return Err(s.error("matrix has no rows"));
        }
        Matrix::from_rows(&self.ring, rows).map_err(|e| s.error(e.to_string()))
    }

    fn module(&self, s: &Spanned) -> Result<FPModule, CliError> {
        if let Some(Def::Module(m)) = self.lookup(s, "module")? {
            return Ok(m.clone());
        }
        let t = s.text.as_str();
        if t == "R" {
            return Ok(FPModule::free(&self.ring, 1));
        }
        if let Some(n) = t.strip_prefix("R^") {
            let n: usize = n.parse().map_err(|_| s.error("expected `R^<n>`"))?;
            return Ok(FPModule::free(&self.ring, n));
        }
        if t == "koszul_syzygy" {
            return koszul_syzygy(&self.ring).map_err(|e| s.error(e.to_string()));
        }
        let (name, inner) = call(s).ok_or_else(|| s.error(format!("unknown module expression `{t}`")))?;
        let args = items(&inner)?;
        let one = |args: &[Spanned]| -> Result<Ideal, CliError> {
            match args {
                [i] => self.ideal(i),
                _ => Err(inner.error(format!("`{name}` takes one ideal"))),
            }
        };
        let matrix = |args: &[Spanned]| -> Result<Matrix, CliError> {
            match args {
                [m] => self.matrix(m),
                _ => Err(inner.error(format!("`{name}` takes one matrix"))),
            }
        };
        match name.as_str() {
            "coker" => Ok(FPModule::coker(matrix(&args)?)),
            "image" => {
                let m = matrix(&args)?;
                Ok(FPModule::image_of(&self.ring, m.nrows(), &m.columns()))
            }
            "ideal" => Ok(FPModule::from_ideal(&one(&args)?)),
            "quotient" => Ok(FPModule::quotient_ring(&one(&args)?)),
            "syzygy" => {
                let i = one(&args)?;
                let cols: Vec<Vec<Poly>> = i.gens().iter().map(|g| vec![g.clone()]).collect();
                let syz = syzygies(&self.ring, 1, &cols);
                Ok(FPModule::image_of(&self.ring, cols.len(), &syz))
            }
            "sum" => {
                let mut parts = args.iter().map(|a| self.module(a));
                let first = parts.next().ok_or_else(|| inner.error("`sum` needs at least one module"))??;
                parts.try_fold(first, |acc, m| Ok(acc.direct_sum(&m?)))
            }
            _ => Err(s.error(format!("unknown module constructor `{name}`"))),
        }
    }

    fn algebra(&self, s: &Spanned) -> Result<SCAlgebra, CliError> {
        if let Some(Def::Algebra(a)) = self.lookup(s, "algebra")? {
            return Ok(a.clone());
        }
        if s.text == "dual_numbers" {
            return Ok(dual_numbers(&self.ring));
        }
        match call(s) {
            Some((name, inner)) if name == "quaternion" => match items(&inner)?.as_slice() {
                [a, b] => SCAlgebra::quaternion(&self.ring, &self.poly(a)?, &self.poly(b)?).map_err(|e| s.error(e.to_string())),
                _ => Err(inner.error("`quaternion` takes two parameters")),
            },
            _ => Err(s.error(format!("unknown algebra expression `{}`", s.text))),
        }
    }

    fn element(&self, s: &Spanned, a: &SCAlgebra) -> Result<AlgElem, CliError> {
        if let Some(Def::Element(x)) = self.lookup(s, "element")? {
            if x.algebra.rank() != a.rank() || x.algebra.names() != a.names() {
                return Err(s.error(format!("element `{}` belongs to a different algebra", s.text)));
            }
            return Ok(AlgElem {
                algebra: a.clone(),
                coords: x.coords.clone(),
            });
        }
        a.parse_element(&s.text).map_err(|e| s.relocate(e))
    }

    fn define(&self, kind: &Spanned, expr: &Spanned) -> Result<Def, CliError> {
        Ok(match kind.text.as_str() {
            "ideal" => Def::Ideal(self.ideal(expr)?),
            "module" => Def::Module(self.module(expr)?),
            "algebra" => Def::Algebra(self.algebra(expr)?),
            "element" => {
                let colon = expr.text.find(':').ok_or_else(|| expr.error("expected `algebra: expression`"))?;
                let a = self.algebra(&expr.slice(0, colon).trim())?;
                Def::Element(self.element(&expr.slice(colon + 1, expr.text.len()).trim(), &a)?)
            }
            other => return Err(kind.error(format!("unknown definition kind `{other}`"))),
        })
    }
}

struct Args<'a> {
    op: &'a Spanned,
    rest: Vec<(Spanned, Spanned)>,
}

impl Args<'_> {
    fn opt(&mut self, key: &str) -> Option<Spanned> {
        let k = self.rest.iter().position(|(k, _)| k.text == key)?;
        Some(self.rest.remove(k).1)
    }

    fn req(&mut self, key: &str) -> Result<Spanned, CliError> {
        self.opt(key)
            .ok_or_else(|| self.op.error(format!("`{}` needs `{key}=`", self.op.text)))
    }

    fn finish(self) -> Result<(), CliError> {
        match self.rest.first() {
            Some((k, _)) => Err(k.error(format!("`{}` has no argument `{}`", self.op.text, k.text))),
            None => Ok(()),
        }
    }
}

fn compile_task(env: &Env, op: &Spanned, args: &mut Args) -> Result<TaskKind, CliError> {
    let search = |args: &mut Args| -> Result<usize, CliError> {
        args.opt("search").map(|s| parse_usize(&s)).unwrap_or(Ok(40))
    };
    Ok(match op.text.as_str() {
        "gb" => TaskKind::Gb { ideal: env.ideal(&args.req("ideal")?)? },
        "codim" => TaskKind::Codim { ideal: env.ideal(&args.req("ideal")?)? },
        "depth" => {
            let ideal = env.ideal(&args.req("ideal")?)?;
            let module = env.module(&args.req("module")?)?;
            let method = match args.opt("method") {
                None => DepthMethod::Both,
                Some(m) => match m.text.as_str() {
                    "ext" => DepthMethod::Ext,
                    "regseq" => DepthMethod::Regseq,
                    "both" => DepthMethod::Both,
                    _ => return Err(m.error("expected `ext`, `regseq` or `both`")),
                },
            };
            TaskKind::Depth { ideal, module, method, search: search(args)? }
        }
        "depth_drop" => TaskKind::DepthDrop {
            ideal: env.ideal(&args.req("ideal")?)?,
            module: env.module(&args.req("module")?)?,
            search: search(args)?,
        },
        "depth_at_prime" => TaskKind::DepthAtPrime {
            prime: env.ideal(&args.req("prime")?)?,
            module: env.module(&args.req("module")?)?,
        },
        "pd" => TaskKind::Pd {
            module: env.module(&args.req("module")?)?,
            bound: args.opt("bound").map(|b| parse_usize(&b)).transpose()?,
        },
        "ab" => TaskKind::Ab {
            ideal: env.ideal(&args.req("ideal")?)?,
            module: env.module(&args.req("module")?)?,
        },
        "torsion_free" => TaskKind::TorsionFree { module: env.module(&args.req("module")?)? },
        "reflexive" => {
            let module = env.module(&args.req("module")?)?;
            let primes = match args.opt("primes") {
                None => Vec::new(),
                Some(p) => {
                    let inner = strip_wrapped(&p, '[', ']').ok_or_else(|| p.error("expected a list `[P, (u, v), ...]`"))?;
                    items(&inner)?.iter().map(|i| env.ideal(i)).collect::<Result<_, _>>()?
                }
            };
            TaskKind::Reflexive { module, primes }
        }
        "bidual" => TaskKind::Bidual { module: env.module(&args.req("module")?)? },
        "fitting" => TaskKind::Fitting { module: env.module(&args.req("module")?)? },
        "azumaya" => TaskKind::Azumaya { algebra: env.algebra(&args.req("algebra")?)? },
        "theorem1" => {
            let algebra = env.algebra(&args.req("algebra")?)?;
            let f = env.element(&args.req("f")?, &algebra)?;
            let g = env.element(&args.req("g")?, &algebra)?;
            TaskKind::Theorem1 { algebra, f, g }
        }
        "pair_search" => {
            let algebra = env.algebra(&args.req("algebra")?)?;
            let target = env.ideal(&args.req("target")?)?;
            let budget = parse_usize(&args.req("budget")?)?;
            let first = match (args.opt("first_f"), args.opt("first_g")) {
                (None, None) => None,
                (Some(f), Some(g)) => Some((env.element(&f, &algebra)?, env.element(&g, &algebra)?)),
                (Some(s), None) | (None, Some(s)) => return Err(s.error("`first_f` and `first_g` go together")),
            };
            TaskKind::PairSearch { algebra, target, budget, first }
        }
        "syzygy_order" => TaskKind::SyzygyOrder {
            ring: env.ring.clone(),
            n: args.opt("n").map(|n| parse_usize(&n)).unwrap_or(Ok(2))?,
        },
        "surface_order" => TaskKind::SurfaceOrder { module: env.module(&args.req("module")?)? },
        other => return Err(op.error(format!("unknown task `{other}`"))),
    })
}

/// An ideal literal `(p, ...)` over `ring`.
pub fn parse_ideal(ring: &Ring, text: &str) -> Result<Ideal, CliError> {
    let env = Env {
        ring: ring.clone(),
        defs: HashMap::new(),
    };
    env.ideal(&Spanned {
        text: text.to_string(),
        line: 1,
        col: 1,
    })
}

pub fn compile(file: &TaskFile) -> Result<Program, CliError> {
    let ring = build_ring(&file.ring)?;
    let mut env = Env {
        ring: ring.clone(),
        defs: HashMap::new(),
    };
    for d in &file.defs {
        let name = &d.name;
        if name.text.contains('.') || ring.var_index(&name.text).is_some() {
            return Err(name.error(format!("`{}` cannot be used as a name", name.text)));
        }
        if env.defs.contains_key(&name.text) {
            return Err(name.error(format!("`{}` is already defined", name.text)));
        }
        let value = env.define(&d.kind, &d.expr)?;
        env.defs.insert(name.text.clone(), value);
    }
    let mut tasks = Vec::new();
    for t in &file.tasks {
        let mut expect = Vec::new();
        let mut rest = Vec::new();
        for (k, v) in &t.args {
            if k.text == "expect" {
                expect.push(("value".to_string(), v.text.clone()));
            } else if let Some(field) = k.text.strip_prefix("expect.") {
                if field.is_empty() {
                    return Err(k.error("missing field name after `expect.`"));
                }
                expect.push((field.to_string(), v.text.clone()));
            } else {
                rest.push((k.clone(), v.clone()));
            }
        }
        let written: BTreeMap<String, String> = rest.iter().map(|(k, v)| (k.text.clone(), v.text.clone())).collect();
        let mut args = Args { op: &t.op, rest };
        let kind = compile_task(&env, &t.op, &mut args)?;
        args.finish()?;
        tasks.push(Task {
            line: t.op.line,
            op: t.op.text.clone(),
            args: written,
            expect,
            kind,
        });
    }
    Ok(Program { ring, tasks })
}
