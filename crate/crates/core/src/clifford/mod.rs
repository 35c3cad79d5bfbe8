//! The Clifford algebra `C(V,g)` in the Witt basis.
//!
//! Elements are sparse combinations of normal-ordered monomials `e_A i_B`
//! (all `e`'s to the left, ascending inside each block). Products are reduced
//! to normal form with the relations
//! `e_a e_b + e_b e_a = 0`, `i_a i_b + i_b i_a = 0`, `i_a e_b + e_b i_a = δ_ab`.

mod ebasis;
mod grade;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::field::Scalar;
use crate::fock::{annihilate_mask, create_mask, Config, FockIndex, Generator, SpinorVec};

pub use ebasis::{
    apply_label_mask, e_vector, flip_of_labels, label_mask, labels_of_mask, labels_with_flip, metric_sign, q_map,
    wedge_basis, OrthoLabel, SignedPerm,
};
pub use grade::{grade_decompose, grade_project, grade_support};

#[inline]
fn parity_sign(count: u32) -> i8 {
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The normal-ordered monomial `e_A i_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct WittMonomial {
    pub emask: u32,
    pub imask: u32,
}

impl WittMonomial {
    pub const ONE: WittMonomial = WittMonomial { emask: 0, imask: 0 };

    pub fn new(emask: u32, imask: u32) -> Self {
        WittMonomial { emask, imask }
    }

    pub fn e(a: usize) -> Self {
        WittMonomial::new(1 << (a - 1), 0)
    }

    pub fn i(a: usize) -> Self {
        WittMonomial::new(0, 1 << (a - 1))
    }

    /// Filtration degree `|A| + |B|`.
    pub fn degree(self) -> usize {
        (self.emask.count_ones() + self.imask.count_ones()) as usize
    }

    /// Which Fock bits the monomial toggles, `A △ B`.
    pub fn flip(self) -> u32 {
        self.emask ^ self.imask
    }

    /// Generators in written order.
    pub fn generators(self) -> Vec<Generator> {
        let es = FockIndex(self.emask).elements().into_iter().map(Generator::E);
        let is = FockIndex(self.imask).elements().into_iter().map(Generator::I);
        es.chain(is).collect()
    }

    /// Action on a Fock basis mask; the rightmost generator acts first.
    #[inline]
    pub fn act_mask(self, mask: u32) -> Option<(i8, u32)> {
        let mut sign = 1i8;
        let mut m = mask;
        let mut b = self.imask;
        while b != 0 {
            let top = 31 - b.leading_zeros() as usize;
            let (s, next) = annihilate_mask(top + 1, m)?;
            sign *= s;
            m = next;
            b &= !(1 << top);
        }
        let mut a = self.emask;
        while a != 0 {
            let top = 31 - a.leading_zeros() as usize;
            let (s, next) = create_mask(top + 1, m)?;
            sign *= s;
            m = next;
            a &= !(1 << top);
        }
        Some((sign, m))
    }

    /// `self · g` in normal form: at most two monomials with ±1 coefficients.
    fn times_generator(self, g: Generator) -> [Option<(i8, WittMonomial)>; 2] {
        match g {
            Generator::I(c) => {
                let bit = 1u32 << (c - 1);
                if self.imask & bit != 0 {
                    return [None, None];
                }
                let above = self.imask & !((bit << 1) - 1);
                [Some((parity_sign(above.count_ones()), WittMonomial::new(self.emask, self.imask | bit))), None]
            }
            Generator::E(c) => {
                let bit = 1u32 << (c - 1);
                // e_A i_B e_c = (−1)^{|B|} e_A e_c i_B + [c∈B] (−1)^{q−m} e_A i_{B∖c}
                let moved = if self.emask & bit != 0 {
                    None
                } else {
                    let above_a = self.emask & !((bit << 1) - 1);
                    let s = parity_sign(self.imask.count_ones() + above_a.count_ones());
                    Some((s, WittMonomial::new(self.emask | bit, self.imask)))
                };
                let contracted = if self.imask & bit != 0 {
                    let after = self.imask & !((bit << 1) - 1);
                    Some((parity_sign(after.count_ones()), WittMonomial::new(self.emask, self.imask & !bit)))
                } else {
                    None
                };
                [moved, contracted]
            }
        }
    }

    /// Normal-ordered product with integer coefficients.
    pub fn product(self, other: WittMonomial) -> Vec<(i64, WittMonomial)> {
        let mut acc: BTreeMap<WittMonomial, i64> = BTreeMap::new();
        acc.insert(self, 1);
        for g in other.generators() {
            let mut next: BTreeMap<WittMonomial, i64> = BTreeMap::new();
            for (m, c) in acc {
                for (s, out) in m.times_generator(g).into_iter().flatten() {
                    *next.entry(out).or_insert(0) += c * s as i64;
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
        acc.into_iter().map(|(m, c)| (c, m)).collect()
    }
}

impl PartialOrd for WittMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WittMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.emask, self.imask).cmp(&(other.degree(), other.emask, other.imask))
    }
}

impl fmt::Display for WittMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.emask == 0 && self.imask == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Trace of `e_A i_A` on `S`: `(−1)^{p(p−1)/2} 2^{n−p}` with `p = |A|`.
fn diagonal_trace(n: usize, mask: u32) -> i64 {
    let p = mask.count_ones() as usize;
    let sign = if (p * p.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 };
    sign * (1i64 << (n - p))
}

/// A sparse element of `C(V,g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElem {
    cfg: Config,
    terms: BTreeMap<WittMonomial, Scalar>,
}

impl CliffordElem {
    pub fn zero(cfg: Config) -> Self {
        CliffordElem { cfg, terms: BTreeMap::new() }
    }

    pub fn one(cfg: Config) -> Self {
        Self::monomial(cfg, WittMonomial::ONE)
    }

    pub fn scalar(cfg: Config, c: &Scalar) -> Self {
        let mut x = Self::zero(cfg);
        x.add_term(WittMonomial::ONE, c);
        x
    }

    pub fn monomial(cfg: Config, m: WittMonomial) -> Self {
        let mut x = Self::zero(cfg);
        x.terms.insert(m, cfg.one());
        x
    }

    pub fn generator(cfg: Config, g: Generator) -> Result<Self> {
        cfg.check_index(g.index())?;
        Ok(Self::monomial(
            cfg,
            match g {
                Generator::E(a) => WittMonomial::e(a),
                Generator::I(a) => WittMonomial::i(a),
            },
        ))
    }

    pub fn e(cfg: Config, a: usize) -> Result<Self> {
        Self::generator(cfg, Generator::E(a))
    }

    pub fn i(cfg: Config, a: usize) -> Result<Self> {
        Self::generator(cfg, Generator::I(a))
    }

    /// The product of generators in the given (written) order.
    pub fn word(cfg: Config, gens: &[Generator]) -> Result<Self> {
        let mut acc = CliffordElem::one(cfg);
        for &g in gens {
            cfg.check_index(g.index())?;
            acc = acc.times_generator(g);
        }
        Ok(acc)
    }

    /// The rank-one operator `|e_K·v⟩⟨e_J·v|`, i.e. `e_K P₀ i_{j_p}⋯i_{j_1}` with `P₀ = Π i_a e_a`.
    pub fn matrix_unit(cfg: Config, k: FockIndex, j: FockIndex) -> CliffordElem {
        let mut gens: Vec<Generator> = k.elements().into_iter().map(Generator::E).collect();
        gens.extend((1..=cfg.n()).flat_map(|a| [Generator::I(a), Generator::E(a)]));
        gens.extend(j.elements().into_iter().rev().map(Generator::I));
        Self::word(cfg, &gens).expect("indices come from the configuration")
    }

    pub fn from_terms(cfg: Config, terms: impl IntoIterator<Item = (WittMonomial, Scalar)>) -> Self {
        let mut x = Self::zero(cfg);
        for (m, c) in terms {
            x.add_term(m, &c);
        }
        x
    }

    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn terms(&self) -> impl Iterator<Item = (WittMonomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: WittMonomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.cfg.zero())
    }

    pub fn add_term(&mut self, m: WittMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CliffordElem, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in other.terms() {
            self.add_term(m, &(c * s));
        }
    }

    pub fn scale(&self, s: &Scalar) -> CliffordElem {
        if s.is_zero() {
            return CliffordElem::zero(self.cfg);
        }
        CliffordElem { cfg: self.cfg, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn multiply(&self, other: &CliffordElem) -> Result<CliffordElem> {
        self.cfg.check_same(&other.cfg)?;
        let mut out = CliffordElem::zero(self.cfg);
        for (mx, cx) in self.terms() {
            for (my, cy) in other.terms() {
                let c = cx * cy;
                for (k, m) in mx.product(my) {
                    out.add_term(m, &c.mul_i64(k));
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by a single generator.
    pub fn times_generator(&self, g: Generator) -> CliffordElem {
        let mut out = CliffordElem::zero(self.cfg);
        for (m, c) in self.terms() {
            for (s, mm) in m.times_generator(g).into_iter().flatten() {
                out.add_term(mm, &c.mul_i64(s as i64));
            }
        }
        out
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(&self, other: &CliffordElem) -> Result<CliffordElem> {
        Ok(self.multiply(other)? - other.multiply(self)?)
    }

    /// Left action on `S`.
    pub fn act(&self, psi: &SpinorVec) -> Result<SpinorVec> {
        self.cfg.check_same(&psi.config())?;
        let mut out = SpinorVec::zero(self.cfg);
        for (m, c) in self.terms() {
            for (idx, d) in psi.terms() {
                if let Some((s, mask)) = m.act_mask(idx.0) {
                    out.add_signed(FockIndex(mask), s, &(c * d));
                }
            }
        }
        Ok(out)
    }

    /// The anti-automorphism fixing `V`.
    pub fn transpose(&self) -> CliffordElem {
        let mut out = CliffordElem::zero(self.cfg);
        for (m, c) in self.terms() {
            let mut rev = CliffordElem::one(self.cfg);
            for g in m.generators().into_iter().rev() {
                rev = rev.times_generator(g);
            }
            out.add_scaled(&rev, c);
        }
        out
    }

    /// Trace of the action on `S`; only monomials `e_A i_A` have nonzero diagonal.
    pub fn trace(&self) -> Scalar {
        let n = self.cfg.n();
        let mut acc = self.cfg.zero();
        for (m, c) in self.terms() {
            if m.emask == m.imask {
                acc += &c.mul_i64(diagonal_trace(n, m.emask));
            }
        }
        acc
    }
}

impl fmt::Display for CliffordElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("+ ({c}) {m}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Add for CliffordElem {
    type Output = CliffordElem;
    fn add(mut self, rhs: CliffordElem) -> CliffordElem {
        assert_eq!(self.cfg, rhs.cfg, "config mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, &c);
        }
        self
    }
}

impl Sub for CliffordElem {
    type Output = CliffordElem;
    fn sub(mut self, rhs: CliffordElem) -> CliffordElem {
        assert_eq!(self.cfg, rhs.cfg, "config mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, &-c);
        }
        self
    }
}

impl Neg for CliffordElem {
    type Output = CliffordElem;
    fn neg(self) -> CliffordElem {
        CliffordElem { cfg: self.cfg, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Mul for &CliffordElem {
    type Output = CliffordElem;
    fn mul(self, rhs: &CliffordElem) -> CliffordElem {
        self.multiply(rhs).expect("config mismatch")
    }
}

/// `ε = (i₁−e₁)(i₁+e₁)⋯(iₙ−eₙ)(iₙ+eₙ)`.
pub fn grading_element(cfg: Config) -> CliffordElem {
    let mut acc = CliffordElem::one(cfg);
    for a in 1..=cfg.n() {
        let e = CliffordElem::monomial(cfg, WittMonomial::e(a));
        let i = CliffordElem::monomial(cfg, WittMonomial::i(a));
        let minus = i.clone() - e.clone();
        let plus = i + e;
        acc = &(&acc * &minus) * &plus;
    }
    acc
}

/// `H = ½ Σ (e_a i_a − i_a e_a)`.
pub fn h_operator(cfg: Config) -> CliffordElem {
    let half = cfg.ratio(1, 2);
    let mut h = CliffordElem::zero(cfg);
    for a in 1..=cfg.n() {
        let e = CliffordElem::monomial(cfg, WittMonomial::e(a));
        let i = CliffordElem::monomial(cfg, WittMonomial::i(a));
        h.add_scaled(&(&e * &i - &i * &e), &half);
    }
    h
}

impl Sub for &CliffordElem {
    type Output = CliffordElem;
    fn sub(self, rhs: &CliffordElem) -> CliffordElem {
        self.clone() - rhs.clone()
    }
}

impl Add for &CliffordElem {
    type Output = CliffordElem;
    fn add(self, rhs: &CliffordElem) -> CliffordElem {
        self.clone() + rhs.clone()
    }
}

/// The dense `2ⁿ×2ⁿ` matrix of the action (columns indexed by source mask).
pub fn action_matrix(x: &CliffordElem) -> Vec<Vec<Scalar>> {
    let cfg = x.config();
    let dim = cfg.spinor_dim();
    let mut mat = vec![vec![cfg.zero(); dim]; dim];
    for (m, c) in x.terms() {
        for col in 0..dim as u32 {
            if let Some((s, row)) = m.act_mask(col) {
                let entry = &mut mat[row as usize][col as usize];
                *entry += &c.mul_i64(s as i64);
            }
        }
    }
    mat
}

#[cfg(test)]
mod tests;
