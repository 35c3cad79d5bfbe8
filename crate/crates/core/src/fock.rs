//! The spinor space as a fermionic Fock space over the pure spinor `v`.
//!
//! Basis vectors are `e_I·v` for `I ⊆ {1..n}`, stored as a bitmask with bit
//! `a−1` set iff `a ∈ I`. The Witt generators act by
//!
//! ```text
//! e_a · e_I·v = (−1)^{#{b∈I : b<a}} e_{I∪{a}}·v   (0 if a ∈ I)
//! i_a · e_I·v = (−1)^{#{b∈I : b<a}} e_{I∖{a}}·v   (0 if a ∉ I)
//! ```
//!
//! which realises `i_a e_b + e_b i_a = δ_ab`, `e_a e_b + e_b e_a = 0`,
//! `i_a i_b + i_b i_a = 0` and `i_a·v = 0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub const MAX_N: usize = 12;

/// Half-dimension `n` (so `dim V = 2n`) together with the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    n: usize,
    field: Field,
}

impl Config {
    pub fn new(n: usize, field: Field) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::BadDimension(n));
        }
        Ok(Config { n, field })
    }

    pub fn rational(n: usize) -> Result<Self> {
        Config::new(n, Field::Rational)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `2ⁿ`, the dimension of `S`.
    pub fn spinor_dim(&self) -> usize {
        1 << self.n
    }

    /// Mask of the full index set `{1..n}`.
    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.n {
            Err(Error::IndexOutOfRange { index: a, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_same(&self, other: &Config) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ConfigMismatch(self.n, other.n));
        }
        if self.field != other.field {
            return Err(Error::Field(crate::error::FieldError::MixedFields(self.field, other.field)));
        }
        Ok(())
    }

    pub fn zero(&self) -> Scalar {
        self.field.zero()
    }

    pub fn one(&self) -> Scalar {
        self.field.one()
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.field.from_i64(v)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        self.field.ratio(num, den).expect("denominator is a unit in every supported field")
    }

    /// All Fock basis indices in increasing mask order.
    pub fn fock_basis(&self) -> impl Iterator<Item = FockIndex> {
        (0..self.spinor_dim() as u32).map(FockIndex)
    }
}

/// Subset `I ⊆ {1..n}` labelling the basis spinor `e_I·v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockIndex(pub u32);

impl FockIndex {
    pub const VACUUM: FockIndex = FockIndex(0);

    /// Builds an index from 1-based elements.
    pub fn from_elements(elems: &[usize]) -> FockIndex {
        FockIndex(elems.iter().fold(0u32, |m, &a| m | (1 << (a - 1))))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 >> (a - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Even particle number, i.e. the basis vector lies in `S₊`.
    pub fn is_even(self) -> bool {
        self.0.count_ones() % 2 == 0
    }

    pub fn parity(self) -> Parity {
        if self.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn complement(self, n: usize) -> FockIndex {
        FockIndex(!self.0 & (((1u64 << n) - 1) as u32))
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Half-spinor parity: `S₊` (even) or `S₋` (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn matches(self, idx: FockIndex) -> bool {
        idx.parity() == self
    }
}

/// A Witt generator: creation `e_a` or annihilation `i_a` (1-based index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    I(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::E(a) | Generator::I(a) => a,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(a) => write!(f, "e{a}"),
            Generator::I(a) => write!(f, "i{a}"),
        }
    }
}

#[inline]
fn prefix_sign(mask: u32, a: usize) -> i8 {
    let below = mask & ((1u32 << (a - 1)) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `e_a · e_I·v` on a basis mask: `None` for zero, otherwise `(sign, mask)`.
#[inline]
pub fn create_mask(a: usize, mask: u32) -> Option<(i8, u32)> {
    let bit = 1u32 << (a - 1);
    if mask & bit != 0 {
        None
    } else {
        Some((prefix_sign(mask, a), mask | bit))
    }
}

/// `i_a · e_I·v` on a basis mask.
#[inline]
pub fn annihilate_mask(a: usize, mask: u32) -> Option<(i8, u32)> {
    let bit = 1u32 << (a - 1);
    if mask & bit == 0 {
        None
    } else {
        Some((prefix_sign(mask, a), mask & !bit))
    }
}

#[inline]
pub fn apply_generator_mask(g: Generator, mask: u32) -> Option<(i8, u32)> {
    match g {
        Generator::E(a) => create_mask(a, mask),
        Generator::I(a) => annihilate_mask(a, mask),
    }
}

/// Sparse vector in `S` over the Fock basis. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorVec {
    cfg: Config,
    terms: BTreeMap<FockIndex, Scalar>,
}

impl SpinorVec {
    pub fn zero(cfg: Config) -> Self {
        SpinorVec { cfg, terms: BTreeMap::new() }
    }

    /// The pure spinor `v` annihilated by every `i_a`.
    pub fn vacuum(cfg: Config) -> Self {
        Self::basis(cfg, FockIndex::VACUUM)
    }

    pub fn basis(cfg: Config, idx: FockIndex) -> Self {
        let mut s = Self::zero(cfg);
        s.terms.insert(idx, cfg.one());
        s
    }

    pub fn from_terms(cfg: Config, terms: impl IntoIterator<Item = (FockIndex, Scalar)>) -> Self {
        let mut s = Self::zero(cfg);
        for (k, c) in terms {
            s.add_term(k, &c);
        }
        s
    }

    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn terms(&self) -> impl Iterator<Item = (FockIndex, &Scalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
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

    pub fn coeff(&self, idx: FockIndex) -> Scalar {
        self.terms.get(&idx).cloned().unwrap_or_else(|| self.cfg.zero())
    }

    pub fn add_term(&mut self, idx: FockIndex, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    pub fn add_signed(&mut self, idx: FockIndex, sign: i8, c: &Scalar) {
        if sign > 0 {
            self.add_term(idx, c);
        } else {
            self.add_term(idx, &-c);
        }
    }

    pub fn add(&self, other: &SpinorVec) -> SpinorVec {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn sub(&self, other: &SpinorVec) -> SpinorVec {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, &-c);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SpinorVec {
        if s.is_zero() {
            return SpinorVec::zero(self.cfg);
        }
        SpinorVec { cfg: self.cfg, terms: self.terms.iter().map(|(k, v)| (*k, v * s)).collect() }
    }

    /// `Some(parity)` when every term has that parity (the zero vector is even).
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|k| k.parity());
        let first = it.next().unwrap_or(Parity::Even);
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    fn map_generator(&self, g: Generator) -> SpinorVec {
        let mut out = SpinorVec::zero(self.cfg);
        for (k, c) in self.terms() {
            if let Some((s, m)) = apply_generator_mask(g, k.0) {
                out.add_signed(FockIndex(m), s, c);
            }
        }
        out
    }

    pub fn apply_generator(&self, g: Generator) -> Result<SpinorVec> {
        self.cfg.check_index(g.index())?;
        Ok(self.map_generator(g))
    }
}

impl fmt::Display for SpinorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("+ ({c}) {k}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Left multiplication by the creation operator `e_a`.
pub fn create(a: usize, psi: &SpinorVec) -> Result<SpinorVec> {
    psi.apply_generator(Generator::E(a))
}

/// Left multiplication by the annihilation operator `i_a`.
pub fn annihilate(a: usize, psi: &SpinorVec) -> Result<SpinorVec> {
    psi.apply_generator(Generator::I(a))
}

/// The grading element: `+ψ` on `S₊`, `−ψ` on `S₋`.
pub fn epsilon_action(psi: &SpinorVec) -> SpinorVec {
    let mut out = SpinorVec::zero(psi.cfg);
    for (k, c) in psi.terms() {
        out.add_signed(k, if k.is_even() { 1 } else { -1 }, c);
    }
    out
}
