//! Exponent vectors and the monomial orders used throughout.

use std::cmp::Ordering;


/// Hard cap on the number of ring variables; monomials are stored inline.
pub const MAX_VARS: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        assert!(nvars <= MAX_VARS, "too many variables");
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
            nvars: nvars as u8,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.exps[..self.nvars()].iter().map(|&e| e as u32).collect()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut m = *self;
        for i in 0..self.nvars() {
            m.exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..self.nvars() {
            m.exps[i] = other.exps[i] - self.exps[i];
        }
        m.deg = other.deg - self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        m.deg = 0;
        for i in 0..self.nvars() {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u32;
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Variables with a positive exponent, as a bitmask.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0;
        for i in 0..self.nvars() {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Same exponents viewed in a ring with more variables (appended at the end).
    pub fn extend(&self, nvars: usize) -> Monomial {
        assert!(nvars >= self.nvars() && nvars <= MAX_VARS);
        let mut m = *self;
        m.nvars = nvars as u8;
        m
    }
}

/// Monomial orders on a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for i in 0..a.nvars() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => match a.deg.cmp(&b.deg) {
                Ordering::Equal => {
                    for i in (0..a.nvars()).rev() {
                        match a.exps[i].cmp(&b.exps[i]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}

/// Extension of a monomial order to free modules `R^r`.
///
/// Components at index `>= block_start` form a lower-priority block: every
/// term in the first block is larger than every term in the second. Inside a
/// block, terms compare position-over-term when `pot` is set, otherwise
/// term-over-position. Lower component indices rank higher.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub pot: bool,
    pub block_start: Option<u32>,
}

impl ModuleOrder {
    pub fn top(mono: MonomialOrder) -> ModuleOrder {
        ModuleOrder {
            mono,
            pot: false,
            block_start: None,
        }
    }

    pub fn pot(mono: MonomialOrder) -> ModuleOrder {
        ModuleOrder {
            mono,
            pot: true,
            block_start: None,
        }
    }

    pub fn eliminating(mono: MonomialOrder, block_start: u32) -> ModuleOrder {
        ModuleOrder {
            mono,
            pot: false,
            block_start: Some(block_start),
        }
    }

    pub fn in_tail_block(&self, comp: u32) -> bool {
        matches!(self.block_start, Some(b) if comp >= b)
    }

    pub fn cmp(&self, ca: u32, a: &Monomial, cb: u32, b: &Monomial) -> Ordering {
        if let Some(bs) = self.block_start {
            let ta = ca >= bs;
            let tb = cb >= bs;
            if ta != tb {
                return if ta { Ordering::Less } else { Ordering::Greater };
            }
        }
        if self.pot && ca != cb {
            return cb.cmp(&ca);
        }
        match self.mono.cmp(a, b) {
            Ordering::Equal => cb.cmp(&ca),
            o => o,
        }
    }
}
