//! Ideals with a lazily computed Gröbner basis.

use std::fmt;
use std::sync::OnceLock;

use crate::error::Result;
use crate::poly::Poly;
use crate::ring::Ring;

use super::{dimension_from_leads, syzygies, GroebnerBasis};

/// Codimension of an ideal; the unit ideal has infinite codimension
/// (its vanishing locus is empty).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Codim {
    Finite(usize),
    Infinite,
}

impl Codim {
    pub fn at_least(&self, k: usize) -> bool {
        match self {
            Codim::Finite(c) => *c >= k,
            Codim::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Codim::Finite(c) => Some(*c),
            Codim::Infinite => None,
        }
    }
}

impl fmt::Display for Codim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codim::Finite(c) => write!(f, "{c}"),
            Codim::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for Ideal {
    /// Equality as ideals (same reduced basis).
    fn eq(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.gb().columns() == other.gb().columns()
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let ps = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, ps)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    /// The ideal generated by the variables.
    pub fn maximal_at_origin(ring: &Ring) -> Ideal {
        Ideal::new(ring, ring.vars()).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| GroebnerBasis::of_ideal(&self.ring, &self.gens))
    }

    /// Reduced basis elements that are nonzero in the ring.
    pub fn basis(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for p in self.gb().generators().into_iter().map(|mut c| c.remove(0)) {
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.gb().contains(p)
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.gb().normal_form(p)
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_everything()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Dimension of `R / self`; -1 for the unit ideal.
    pub fn krull_dim(&self) -> i64 {
        dimension_from_leads(self.ring.nvars(), self.gb().raw())
    }

    /// `dim R - dim R/self`.
    pub fn codim(&self) -> Codim {
        let d = self.krull_dim();
        if d < 0 {
            Codim::Infinite
        } else {
            Codim::Finite((self.ring.dim() - d) as usize)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn add(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g).unwrap()
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g).unwrap()
    }

    /// `(self : p) = { r : r p ∈ self }`, from the syzygies of `(p, gens)`.
    pub fn colon_elem(&self, p: &Poly) -> Ideal {
        if p.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let mut cols = vec![vec![p.clone()]];
        cols.extend(self.gens.iter().map(|g| vec![g.clone()]));
        let syz = syzygies(&self.ring, 1, &cols);
        Ideal::new(&self.ring, syz.into_iter().map(|mut c| c.swap_remove(0)).collect()).unwrap()
    }

    /// `(self : other) = ∩_g (self : g)` over the generators of `other`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_elem(g));
        }
        acc
    }

    /// From the syzygies of `(1,1), I e_1, K e_2`: the first coordinate of
    /// each syzygy runs over `I ∩ K`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let r = &self.ring;
        let mut cols = vec![vec![r.one(), r.one()]];
        cols.extend(self.gens.iter().map(|g| vec![g.clone(), r.zero()]));
        cols.extend(other.gens.iter().map(|g| vec![r.zero(), g.clone()]));
        let syz = syzygies(r, 2, &cols);
        Ideal::new(r, syz.into_iter().map(|mut c| c.swap_remove(0)).collect()).unwrap()
    }

    /// `p ∈ √self`, by the Rabinowitsch trick: `1 ∈ self + (1 - z p)`.
    pub fn radical_contains(&self, p: &Poly) -> bool {
        let z = format!("z{}", self.ring.nvars());
        let big = self.ring.with_extra_vars(&[z.as_str()]).expect("room for one auxiliary variable");
        let zv = big.var(self.ring.nvars());
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.transfer(&big)).collect();
        gens.push(&big.one() - &(&zv * &p.transfer(&big)));
        Ideal::new(&big, gens).unwrap().is_unit()
    }

    /// Same vanishing locus: each ideal lies in the radical of the other.
    pub fn same_locus(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g)) && self.gens.iter().all(|g| other.radical_contains(g))
    }

    /// True when all basis elements are linear forms (such an ideal is prime).
    pub fn is_linear(&self) -> bool {
        !self.is_unit() && self.basis().iter().all(|g| g.is_homogeneous() && g.total_degree() == Some(1))
    }

    /// Canonical text: the reduced basis in the task-file syntax.
    pub fn canonical_string(&self) -> String {
        if self.is_unit() {
            return "(1)".into();
        }
        let b: Vec<String> = self.basis().iter().map(|p| p.to_string()).collect();
        if b.is_empty() {
            return "(0)".into();
        }
        format!("({})", b.join(", "))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}
