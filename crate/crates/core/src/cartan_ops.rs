//! Cartan's operators built from a spinor norm: `L̃₂`, `L₂ₙ`, `L_ε`, the orbit
//! maps `φ ↦ φ*`, and the change of polarisation for index triples.

use crate::clifford::{apply_label_mask, e_vector, grading_element, CliffordElem, OrthoLabel, WittMonomial};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fock::{annihilate, create, epsilon_action, Config, FockIndex, Generator, SpinorVec};
use crate::norms::{BilinearForm, Flavor};

fn require_plain(b: &BilinearForm) -> Result<()> {
    if b.flavor() != Flavor::Plain {
        return Err(Error::NotPlainNorm);
    }
    Ok(())
}

/// `B(e_I·v, e_J·v)` after moving `X` (a generator word, rightmost first) onto the left slot.
#[inline]
fn moved_entry(b: &BilinearForm, word: &[Generator], i: u32, j: u32) -> Option<Scalar> {
    let mut sign = 1i8;
    let mut m = i;
    for &g in word.iter().rev() {
        let (s, next) = crate::fock::apply_generator_mask(g, m)?;
        sign *= s;
        m = next;
    }
    let full = b.config().full_mask();
    if j != !m & full {
        return None;
    }
    let c = b.antidiagonal(FockIndex(m));
    if c.is_zero() {
        None
    } else {
        Some(c.mul_i64(sign as i64))
    }
}

/// `L̃₂(e_I·v, e_J·v)` through the Witt-coordinate four-sum
///
/// ```text
/// Σ_{a≠b} B(e_a e_b ψ₁, ψ₂) i_a i_b + Σ_{a≠b} B(i_a i_b ψ₁, ψ₂) e_a e_b
///   + Σ_{a≠b} B(e_a i_b ψ₁, ψ₂)(i_a e_b − e_b i_a)
///   + ½ Σ_a B((e_a i_a − i_a e_a) ψ₁, ψ₂)(i_a e_a − e_a i_a)
/// ```
///
/// written in normal order: `i_a e_b − e_b i_a = −2 e_b i_a` for `a ≠ b` and
/// `i_a e_a − e_a i_a = 1 − 2 e_a i_a`.
pub fn l2_tilde_basis(b: &BilinearForm, i: FockIndex, j: FockIndex) -> Result<CliffordElem> {
    require_plain(b)?;
    let cfg = b.config();
    let n = cfg.n();
    let mut out = CliffordElem::zero(cfg);
    for x in 1..=n {
        for y in 1..=n {
            if x == y {
                continue;
            }
            let (lo, hi, s) = if x < y { (x, y, 1) } else { (y, x, -1) };
            let pair = (1u32 << (lo - 1)) | (1u32 << (hi - 1));
            if let Some(c) = moved_entry(b, &[Generator::E(x), Generator::E(y)], i.0, j.0) {
                out.add_term(WittMonomial::new(0, pair), &c.mul_i64(s));
            }
            if let Some(c) = moved_entry(b, &[Generator::I(x), Generator::I(y)], i.0, j.0) {
                out.add_term(WittMonomial::new(pair, 0), &c.mul_i64(s));
            }
            if let Some(c) = moved_entry(b, &[Generator::E(x), Generator::I(y)], i.0, j.0) {
                out.add_term(WittMonomial::new(1 << (y - 1), 1 << (x - 1)), &c.mul_i64(-2));
            }
        }
    }
    if j != i.complement(n) || b.antidiagonal(i).is_zero() {
        return Ok(out);
    }
    let half = cfg.ratio(1, 2);
    for a in 1..=n {
        // (e_a i_a − i_a e_a) e_I·v = ±e_I·v
        let c = b.antidiagonal(i).mul_i64(if i.contains(a) { 1 } else { -1 });
        out.add_term(WittMonomial::ONE, &(&c * &half));
        out.add_term(WittMonomial::new(1 << (a - 1), 1 << (a - 1)), &-c);
    }
    Ok(out)
}

/// `L̃₂(ψ₁, ψ₂) = 2^{n−1} L₂(ψ₁, ψ₂)`, bilinear extension of [`l2_tilde_basis`].
pub fn l2_tilde(b: &BilinearForm, psi1: &SpinorVec, psi2: &SpinorVec) -> Result<CliffordElem> {
    require_plain(b)?;
    let cfg = b.config();
    cfg.check_same(&psi1.config())?;
    cfg.check_same(&psi2.config())?;
    let mut out = CliffordElem::zero(cfg);
    for (i, ci) in psi1.terms() {
        for (j, cj) in psi2.terms() {
            let part = l2_tilde_basis(b, i, j)?;
            out.add_scaled(&part, &(ci * cj));
        }
    }
    Ok(out)
}

/// `L₂ = 2^{1−n} L̃₂`.
pub fn l2(b: &BilinearForm, psi1: &SpinorVec, psi2: &SpinorVec) -> Result<CliffordElem> {
    let cfg = b.config();
    Ok(l2_tilde(b, psi1, psi2)?.scale(&cfg.ratio(2, 1i64 << cfg.n())))
}

/// `τ(φ⊗ψ)` as a Clifford element: `ξ ↦ form(φ, ξ) ψ`.
pub fn tau(form: &BilinearForm, phi: &SpinorVec, psi: &SpinorVec) -> Result<CliffordElem> {
    let cfg = form.config();
    cfg.check_same(&phi.config())?;
    cfg.check_same(&psi.config())?;
    let mut out = CliffordElem::zero(cfg);
    for (i, ci) in phi.terms() {
        let j = i.complement(cfg.n());
        let bij = ci * form.antidiagonal(i);
        if bij.is_zero() {
            continue;
        }
        for (k, ck) in psi.terms() {
            out.add_scaled(&CliffordElem::matrix_unit(cfg, k, j), &(&bij * ck));
        }
    }
    Ok(out)
}

/// `act(L̃₂(e_I·v, e_J·v), e_K·v)` from the case table on `I ∩ J` and `Iᶜ ∩ Jᶜ`.
pub fn l2_matrix_entry(b: &BilinearForm, i: FockIndex, j: FockIndex, k: FockIndex) -> Result<SpinorVec> {
    require_plain(b)?;
    let cfg = b.config();
    let n = cfg.n();
    let full = cfg.full_mask();
    let (ei, ej, ek) = (SpinorVec::basis(cfg, i), SpinorVec::basis(cfg, j), SpinorVec::basis(cfg, k));
    let both = FockIndex(i.0 & j.0).elements();
    let neither = FockIndex(!i.0 & !j.0 & full).elements();
    let two = cfg.scalar(2);
    let out = match (both.as_slice(), neither.as_slice()) {
        ([], [a, bb]) => {
            let lhs = create(*a, &create(*bb, &ei)?)?;
            let coeff = &two * &b.eval(&lhs, &ej)?;
            annihilate(*a, &annihilate(*bb, &ek)?)?.scale(&coeff)
        }
        ([a, bb], []) => {
            let lhs = annihilate(*a, &annihilate(*bb, &ei)?)?;
            let coeff = &two * &b.eval(&lhs, &ej)?;
            create(*a, &create(*bb, &ek)?)?.scale(&coeff)
        }
        ([bb], [a]) => {
            let lhs = create(*a, &annihilate(*bb, &ei)?)?;
            let coeff = &two * &b.eval(&lhs, &ej)?;
            annihilate(*a, &create(*bb, &ek)?)?.scale(&coeff)
        }
        ([], []) => {
            let same = (i.0 & k.0).count_ones() + (!i.0 & !k.0 & full).count_ones();
            let factor = cfg.ratio(n as i64 - 2 * same as i64, 2);
            ek.scale(&(&factor * &b.eval(&ei, &ej)?))
        }
        _ => SpinorVec::zero(cfg),
    };
    Ok(out)
}

/// Coefficient `2^{−n} B(ψ₁, ε·ψ₂)` of `ε` in `L₂ₙ(ψ₁, ψ₂)`.
pub fn l_top_coefficient(b: &BilinearForm, psi1: &SpinorVec, psi2: &SpinorVec) -> Result<Scalar> {
    require_plain(b)?;
    let cfg = b.config();
    Ok(&b.eval(psi1, &epsilon_action(psi2))? * &cfg.ratio(1, 1i64 << cfg.n()))
}

/// `L₂ₙ(ψ₁, ψ₂) = 2^{−n} B(ψ₁, ε·ψ₂) ε`.
pub fn l_top(b: &BilinearForm, psi1: &SpinorVec, psi2: &SpinorVec) -> Result<CliffordElem> {
    let c = l_top_coefficient(b, psi1, psi2)?;
    Ok(grading_element(b.config()).scale(&c))
}

/// The two graded components of `L_ε(φ, ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LEps {
    pub vector: CliffordElem,
    pub bivector: CliffordElem,
}

impl LEps {
    pub fn total(&self) -> CliffordElem {
        self.vector.clone() + self.bivector.clone()
    }
}

/// `L_ε(φ, ψ) = 2^{−n}(Σ_i g_i B_ε(φ, E_i ψ) E_i + Σ_{i<j} g_i g_j B_ε(φ, E_j E_i ψ) E_i E_j)`.
pub fn l_eps(b_eps: &BilinearForm, phi: &SpinorVec, psi: &SpinorVec) -> Result<LEps> {
    if b_eps.flavor() != Flavor::Graded {
        return Err(Error::NotGradedNorm);
    }
    let cfg = b_eps.config();
    cfg.check_same(&phi.config())?;
    cfg.check_same(&psi.config())?;
    let labels = 2 * cfg.n();
    let norm = cfg.ratio(1, 1i64 << cfg.n());
    let vecs: Vec<CliffordElem> = (0..labels).map(|l| e_vector(cfg, OrthoLabel(l)).unwrap()).collect();
    let apply = |l: usize, x: &SpinorVec| -> SpinorVec {
        let mut out = SpinorVec::zero(cfg);
        for (m, c) in x.terms() {
            let (s, t) = apply_label_mask(l, m.0);
            out.add_signed(FockIndex(t), s, c);
        }
        out
    };
    let mut vector = CliffordElem::zero(cfg);
    let mut bivector = CliffordElem::zero(cfg);
    for i in 0..labels {
        let g_i = OrthoLabel(i).metric() as i64;
        let ei_psi = apply(i, psi);
        let c = b_eps.eval(phi, &ei_psi)?.mul_i64(g_i);
        vector.add_scaled(&vecs[i], &(&c * &norm));
        for j in i + 1..labels {
            let g_j = OrthoLabel(j).metric() as i64;
            let c = b_eps.eval(phi, &apply(j, &ei_psi))?.mul_i64(g_i * g_j);
            if c.is_zero() {
                continue;
            }
            bivector.add_scaled(&(&vecs[i] * &vecs[j]), &(&c * &norm));
        }
    }
    Ok(LEps { vector, bivector })
}

/// `φ*(ψ) = Σ_i g(E_i, E_i) B(φ, E_i·ψ) E_i`, a vector in `V`.
pub fn costar(b: &BilinearForm, phi: &SpinorVec, psi: &SpinorVec) -> Result<CliffordElem> {
    let cfg = b.config();
    cfg.check_same(&phi.config())?;
    cfg.check_same(&psi.config())?;
    let mut out = CliffordElem::zero(cfg);
    for l in 0..2 * cfg.n() {
        let label = OrthoLabel(l);
        let e = e_vector(cfg, label)?;
        let c = b.eval(phi, &e.act(psi)?)?.mul_i64(label.metric() as i64);
        out.add_scaled(&e, &c);
    }
    Ok(out)
}

/// `g(x, y)` for grade-one elements written in the Witt basis, with `g(e_a, i_b) = ½δ_ab`.
pub fn metric(x: &CliffordElem, y: &CliffordElem) -> Scalar {
    let cfg = x.config();
    let half = cfg.ratio(1, 2);
    let mut acc = cfg.zero();
    for (m, c) in x.terms() {
        for (w, d) in y.terms() {
            let paired = (m.degree() == 1 && w.degree() == 1)
                && ((m.emask != 0 && m.emask == w.imask) || (m.imask != 0 && m.imask == w.emask));
            if paired {
                acc += &(&(c * d) * &half);
            }
        }
    }
    acc
}

/// The transformation of a triple `(I, J, K)` with `I∩J∩K = ∅` and `Iᶜ∩Jᶜ∩Kᶜ = ∅`
/// into a pairwise-disjoint covering triple, by exchanging the roles of `e_a`
/// and `i_a` on the swap set `(I∩J)∪(J∩K)∪(K∩I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarisationChange {
    pub source: [FockIndex; 3],
    pub target: [FockIndex; 3],
    pub swap: FockIndex,
    /// `e'_{X'}·v' = sign · e_X·v` for `X = I, J, K`, with `v' = e_swap·v`.
    pub signs: [i8; 3],
}

impl PolarisationChange {
    /// `e'_a` (`i_a` on the swap set, `e_a` elsewhere).
    pub fn e_prime(&self, a: usize) -> Generator {
        if self.swap.contains(a) {
            Generator::I(a)
        } else {
            Generator::E(a)
        }
    }

    /// `i'_a` (`e_a` on the swap set, `i_a` elsewhere).
    pub fn i_prime(&self, a: usize) -> Generator {
        if self.swap.contains(a) {
            Generator::E(a)
        } else {
            Generator::I(a)
        }
    }

    /// `e'_{X'}·v'` computed through the Fock action.
    pub fn transformed_vector(&self, cfg: Config, x: FockIndex) -> Result<SpinorVec> {
        let mut psi = SpinorVec::basis(cfg, self.swap);
        for a in x.elements().into_iter().rev() {
            psi = psi.apply_generator(self.e_prime(a))?;
        }
        Ok(psi)
    }
}

pub fn change_polarisation(cfg: Config, i: FockIndex, j: FockIndex, k: FockIndex) -> Result<PolarisationChange> {
    let full = cfg.full_mask();
    let (i, j, k) = (i.0 & full, j.0 & full, k.0 & full);
    let (ic, jc, kc) = (!i & full, !j & full, !k & full);
    if i & j & k != 0 || ic & jc & kc != 0 {
        return Err(Error::PolarisationPrecondition);
    }
    let swap = (i & j) | (j & k) | (k & i);
    let ip = (jc & kc) | (j & k);
    let jp = (kc & ic) | (k & i);
    let kp = (ic & jc) | (i & j);
    let mut change = PolarisationChange {
        source: [FockIndex(i), FockIndex(j), FockIndex(k)],
        target: [FockIndex(ip), FockIndex(jp), FockIndex(kp)],
        swap: FockIndex(swap),
        signs: [1; 3],
    };
    for slot in 0..3 {
        let got = change.transformed_vector(cfg, change.target[slot])?;
        let src = change.source[slot];
        let c = got.coeff(src);
        let sign = if c.is_one() {
            1
        } else if (-&c).is_one() {
            -1
        } else {
            return Err(Error::Other(format!("polarisation change does not reproduce e_{src}·v")));
        };
        if got.len() != 1 {
            return Err(Error::Other(format!("polarisation change does not reproduce e_{src}·v")));
        }
        change.signs[slot] = sign;
    }
    Ok(change)
}
