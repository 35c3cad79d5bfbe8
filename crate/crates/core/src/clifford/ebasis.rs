//! The ordered orthonormal basis `E_1 < E_1̄ < E_2 < E_2̄ < …` with
//! `E_a = e_a + i_a` (`g = +1`) and `E_ā = e_a − i_a` (`g = −1`).
//!
//! Label `2(a−1)` is `E_a` and label `2(a−1)+1` is `E_ā`. Each `E` vector maps
//! a Fock basis vector to ± another one (toggling bit `a`), so products of
//! them are signed permutations of the Fock basis.

use std::fmt;

use super::{CliffordElem, WittMonomial};
use crate::error::{Error, Result};
use crate::fock::{Config, Generator};

/// One vector of the ordered orthonormal basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrthoLabel(pub usize);

impl OrthoLabel {
    pub fn plus(a: usize) -> Self {
        OrthoLabel(2 * (a - 1))
    }

    pub fn minus(a: usize) -> Self {
        OrthoLabel(2 * (a - 1) + 1)
    }

    /// Witt index `a` (1-based).
    pub fn index(self) -> usize {
        self.0 / 2 + 1
    }

    pub fn is_bar(self) -> bool {
        self.0 % 2 == 1
    }

    /// `g(E, E)`.
    pub fn metric(self) -> i8 {
        if self.is_bar() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for OrthoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bar() {
            write!(f, "E{}bar", self.index())
        } else {
            write!(f, "E{}", self.index())
        }
    }
}

/// `E_label` as a Clifford element.
pub fn e_vector(cfg: Config, label: OrthoLabel) -> Result<CliffordElem> {
    if label.0 >= 2 * cfg.n() {
        return Err(Error::BadLabels(2 * cfg.n()));
    }
    let a = label.index();
    let mut x = CliffordElem::monomial(cfg, WittMonomial::e(a));
    let sign = cfg.scalar(label.metric() as i64);
    x.add_term(WittMonomial::i(a), &sign);
    Ok(x)
}

/// `Q(E_{l₁} ∧ ⋯ ∧ E_{l_k}) = E_{l₁}⋯E_{l_k}` for strictly ascending labels.
pub fn q_map(cfg: Config, labels: &[usize]) -> Result<CliffordElem> {
    let bound = 2 * cfg.n();
    if labels.iter().any(|&l| l >= bound) || labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadLabels(bound));
    }
    let mut acc = CliffordElem::one(cfg);
    for &l in labels {
        let a = l / 2 + 1;
        let plus = acc.times_generator(Generator::E(a));
        let minus = acc.times_generator(Generator::I(a));
        acc = if l % 2 == 0 { plus + minus } else { plus - minus };
    }
    Ok(acc)
}

/// `Π g(E_l, E_l)` over a label set given as a bitmask over `2n` labels.
pub fn metric_sign(label_mask: u32) -> i8 {
    if (label_mask & 0xAAAA_AAAA).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Fock bits toggled by `E_S`: `a` is toggled iff exactly one of `E_a, E_ā` is in `S`.
pub fn flip_of_labels(label_mask: u32) -> u32 {
    let mut flip = 0u32;
    let mut m = label_mask;
    let mut a = 0;
    while m != 0 {
        if (m & 1) ^ (m >> 1 & 1) == 1 {
            flip |= 1 << a;
        }
        m >>= 2;
        a += 1;
    }
    flip
}

pub fn label_mask(labels: &[usize]) -> u32 {
    labels.iter().fold(0, |m, &l| m | (1 << l))
}

pub fn labels_of_mask(mask: u32) -> Vec<usize> {
    (0..32).filter(|l| mask >> l & 1 == 1).collect()
}

/// All label sets `S` (as bitmasks) with `flip_of_labels(S) == flip`, `2ⁿ` of them.
pub fn labels_with_flip(n: usize, flip: u32) -> impl Iterator<Item = u32> {
    (0u32..1 << n).map(move |choice| {
        let mut s = 0u32;
        for a in 0..n {
            let c = choice >> a & 1;
            if flip >> a & 1 == 1 {
                s |= 1 << (2 * a as u32 + c);
            } else if c == 1 {
                s |= 0b11 << (2 * a);
            }
        }
        s
    })
}

/// All label bitmasks of size `k` over `2n` labels, in ascending mask order.
pub fn wedge_basis(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << (2 * n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// `E_l` applied to a Fock basis mask.
#[inline]
pub fn apply_label_mask(label: usize, mask: u32) -> (i8, u32) {
    let bit = 1u32 << (label / 2);
    let below = mask & (bit - 1);
    let mut sign = if below.count_ones() % 2 == 0 { 1 } else { -1 };
    if mask & bit != 0 && label % 2 == 1 {
        sign = -sign;
    }
    (sign, mask ^ bit)
}

/// A signed permutation of the Fock basis of the form `m ↦ ±(m ⊕ flip)`.
///
/// `neg` is a bitset over source masks: bit `m` set means the sign at `m` is −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    n: usize,
    flip: u32,
    neg: Vec<u64>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { n, flip: 0, neg: vec![0; (1usize << n).div_ceil(64)] }
    }

    /// `E_{l₁}⋯E_{l_k}` for labels in the given order (rightmost acts first).
    pub fn of_labels(n: usize, labels: &[usize]) -> Self {
        let mut p = SignedPerm::identity(n);
        for &l in labels.iter().rev() {
            p = p.then_label(l);
        }
        p
    }

    /// `E_l ∘ self`.
    pub fn then_label(&self, label: usize) -> Self {
        let mut neg = self.neg.clone();
        for m in 0..1u32 << self.n {
            let (s, _) = apply_label_mask(label, m ^ self.flip);
            if s < 0 {
                neg[(m / 64) as usize] ^= 1 << (m % 64);
            }
        }
        SignedPerm { n: self.n, flip: self.flip ^ (1 << (label / 2)), neg }
    }

    pub fn flip(&self) -> u32 {
        self.flip
    }

    pub fn sign_at(&self, m: u32) -> i8 {
        if self.neg[(m / 64) as usize] >> (m % 64) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn apply(&self, m: u32) -> (i8, u32) {
        (self.sign_at(m), m ^ self.flip)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut neg = other.neg.clone();
        for m in 0..1u32 << self.n {
            if self.sign_at(m ^ other.flip) < 0 {
                neg[(m / 64) as usize] ^= 1 << (m % 64);
            }
        }
        SignedPerm { n: self.n, flip: self.flip ^ other.flip, neg }
    }

    /// Sign bitset re-indexed by target mask: bit `t` holds the sign at source `t ⊕ flip`.
    pub fn neg_by_target(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.neg.len()];
        for m in 0..1u32 << self.n {
            if self.sign_at(m) < 0 {
                let t = m ^ self.flip;
                out[(t / 64) as usize] |= 1 << (t % 64);
            }
        }
        out
    }

    pub fn neg_bits(&self) -> &[u64] {
        &self.neg
    }

    /// Trace as an endomorphism of `S`.
    pub fn trace(&self) -> i64 {
        if self.flip != 0 {
            return 0;
        }
        let negs: u32 = self.neg.iter().map(|w| w.count_ones()).sum();
        (1i64 << self.n) - 2 * negs as i64
    }
}
