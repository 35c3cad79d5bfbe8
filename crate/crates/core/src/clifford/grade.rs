//! Grade projections through the orthonormal trace formula
//!
//! ```text
//! π_k(c) = 2^{−n} Σ_{|S|=k} g(S) Tr(E_Sᵀ c) E_S
//! ```
//!
//! `E_Sᵀ` is a signed permutation toggling `flip(S)`, and a monomial `e_A i_B`
//! toggles `A △ B`, so only label sets with `flip(S) = A △ B` can have a
//! nonzero trace against it.

use std::collections::HashMap;

use super::ebasis::{apply_label_mask, labels_of_mask, labels_with_flip, metric_sign, q_map};
use super::{CliffordElem, WittMonomial};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Sign of `E_Sᵀ = E_{s_k}⋯E_{s_1}` at a Fock mask (labels ascending, `s_1` acts first).
fn reversed_sign_at(labels: &[usize], mut m: u32) -> i8 {
    let mut sign = 1i8;
    for &l in labels {
        let (s, next) = apply_label_mask(l, m);
        sign *= s;
        m = next;
    }
    sign
}

/// Integer trace coefficients `Tr(E_Sᵀ · mono)` for every `S` that can pair with `mono`.
fn monomial_traces(n: usize, mono: WittMonomial, grade: Option<usize>) -> Vec<(u32, i64)> {
    let free = ((1u64 << n) - 1) as u32 & !(mono.emask | mono.imask);
    let mut images = Vec::new();
    let mut sub = free;
    loop {
        let src = sub | mono.imask;
        if let Some((s, dst)) = mono.act_mask(src) {
            images.push((src, s, dst));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    let mut out = Vec::new();
    for smask in labels_with_flip(n, mono.flip()) {
        if grade.is_some_and(|k| smask.count_ones() as usize != k) {
            continue;
        }
        let labels = labels_of_mask(smask);
        let t: i64 = images.iter().map(|&(_, s, dst)| (s * reversed_sign_at(&labels, dst)) as i64).sum();
        if t != 0 {
            out.push((smask, t));
        }
    }
    out
}

/// All projections `π_0(x), …, π_{2n}(x)` at once.
pub fn grade_decompose(x: &CliffordElem) -> Vec<CliffordElem> {
    decompose(x, None)
}

fn decompose(x: &CliffordElem, grade: Option<usize>) -> Vec<CliffordElem> {
    let cfg = x.config();
    let n = cfg.n();
    let norm = cfg.ratio(1, 1i64 << n);
    let mut coeffs: HashMap<u32, Scalar> = HashMap::new();
    for (m, c) in x.terms() {
        for (smask, t) in monomial_traces(n, m, grade) {
            let v = c.mul_i64(t * metric_sign(smask) as i64);
            let e = coeffs.entry(smask).or_insert_with(|| cfg.zero());
            *e += &v;
        }
    }
    let mut parts = vec![CliffordElem::zero(cfg); 2 * n + 1];
    let mut keys: Vec<u32> = coeffs.keys().copied().collect();
    keys.sort_unstable();
    for smask in keys {
        let c = &coeffs[&smask];
        if c.is_zero() {
            continue;
        }
        let es = q_map(cfg, &labels_of_mask(smask)).expect("labels are ascending and in range");
        parts[smask.count_ones() as usize].add_scaled(&es, &(c * &norm));
    }
    parts
}

/// `π_k(x)`.
pub fn grade_project(x: &CliffordElem, k: usize) -> Result<CliffordElem> {
    let max = 2 * x.config().n();
    if k > max {
        return Err(Error::GradeOutOfRange { k, max });
    }
    Ok(decompose(x, Some(k)).swap_remove(k))
}

/// Grades `k` with `π_k(x) ≠ 0`.
pub fn grade_support(x: &CliffordElem) -> Vec<usize> {
    grade_decompose(x).iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(k, _)| k).collect()
}
