//! Spinor norms.
//!
//! The plain norm `B` is found by solving `B(x·φ, ψ) = B(φ, x·ψ)` for every
//! Witt generator `x` and every pair of Fock basis vectors. Each equation has
//! at most two unknowns with coefficients ±1, so the system is solved with a
//! signed union-find: unknowns joined by an equation share a component with a
//! relative sign, and a component is forced to zero by a one-sided equation or
//! by a sign contradiction. The free components span the solution space.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::fock::{apply_generator_mask, Config, FockIndex, Generator, Parity, SpinorVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `B(x·φ, ψ) = B(φ, x·ψ)`.
    Plain,
    /// `B_ε(φ, ψ) = B(ε·φ, ψ)`, so `B_ε(x·φ, ψ) = −B_ε(φ, x·ψ)`.
    Graded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Antisymmetric => "antisymmetric",
        })
    }
}

/// `Even`: pairs `S₊` with `S₊` and `S₋` with `S₋` only. `Odd`: pairs `S₊` with `S₋` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormParity {
    Even,
    Odd,
}

impl fmt::Display for FormParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormParity::Even => "even",
            FormParity::Odd => "odd",
        })
    }
}

/// A bilinear form on `S` supported on the antidiagonal `J = Iᶜ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    cfg: Config,
    flavor: Flavor,
    /// `row[I] = form(e_I·v, e_{Iᶜ}·v)`.
    row: Vec<Scalar>,
}

struct SignedUnionFind {
    parent: Vec<u32>,
    neg: Vec<bool>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(size: usize) -> Self {
        SignedUnionFind { parent: (0..size as u32).collect(), neg: vec![false; size], zero: vec![false; size] }
    }

    /// Root of `u` and whether `value(u) = −value(root)`.
    fn find(&mut self, u: u32) -> (u32, bool) {
        let mut path = Vec::new();
        let mut cur = u;
        while self.parent[cur as usize] != cur {
            path.push(cur);
            cur = self.parent[cur as usize];
        }
        let root = cur;
        // compress from the node nearest the root outward
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.neg[node as usize];
            self.neg[node as usize] = acc;
            self.parent[node as usize] = root;
        }
        (root, if path.is_empty() { false } else { self.neg[u as usize] })
    }

    /// Imposes `value(u) = (−1)^{negate} value(w)`.
    fn link(&mut self, u: u32, w: u32, negate: bool) {
        let (ru, nu) = self.find(u);
        let (rw, nw) = self.find(w);
        if ru == rw {
            if nu ^ nw != negate {
                self.zero[ru as usize] = true;
            }
            return;
        }
        self.parent[ru as usize] = rw;
        self.neg[ru as usize] = nu ^ negate ^ nw;
        self.zero[rw as usize] |= self.zero[ru as usize];
    }

    fn kill(&mut self, u: u32) {
        let (r, _) = self.find(u);
        self.zero[r as usize] = true;
    }
}

struct NormSystem {
    dimension: usize,
    uf: SignedUnionFind,
}

fn build_system(cfg: Config) -> NormSystem {
    let n = cfg.n();
    let dim = cfg.spinor_dim() as u32;
    let key = |i: u32, j: u32| i * dim + j;
    let mut uf = SignedUnionFind::new((dim * dim) as usize);
    let gens: Vec<Generator> = (1..=n).flat_map(|a| [Generator::E(a), Generator::I(a)]).collect();
    for &g in &gens {
        for i in 0..dim {
            let left = apply_generator_mask(g, i);
            for j in 0..dim {
                let right = apply_generator_mask(g, j);
                // s₁ B(φ', ψ) = s₂ B(φ, ψ')
                match (left, right) {
                    (Some((s1, i2)), Some((s2, j2))) => uf.link(key(i2, j), key(i, j2), s1 != s2),
                    (Some((_, i2)), None) => uf.kill(key(i2, j)),
                    (None, Some((_, j2))) => uf.kill(key(i, j2)),
                    (None, None) => {}
                }
            }
        }
    }
    let mut dimension = 0;
    for u in 0..dim * dim {
        if uf.parent[u as usize] == u && !uf.zero[u as usize] {
            dimension += 1;
        }
    }
    NormSystem { dimension, uf }
}

/// Dimension of the space of bilinear forms satisfying the defining property.
pub fn norm_solution_dimension(cfg: Config) -> usize {
    build_system(cfg).dimension
}

/// The spinor norm normalised by `B(v, e_{1⋯n}·v) = 1`.
pub fn solve_spinor_norm(cfg: Config) -> Result<BilinearForm> {
    let mut sys = build_system(cfg);
    if sys.dimension != 1 {
        return Err(Error::NormDimension(sys.dimension));
    }
    let dim = cfg.spinor_dim() as u32;
    let full = cfg.full_mask();
    let (anchor_root, anchor_neg) = sys.uf.find(full);
    if sys.uf.zero[anchor_root as usize] {
        return Err(Error::NormDimension(0));
    }
    let mut row = Vec::with_capacity(dim as usize);
    for i in 0..dim {
        for j in 0..dim {
            let (r, neg) = sys.uf.find(i * dim + j);
            let live = r == anchor_root;
            if j == (!i & full) {
                let sign = if neg == anchor_neg { 1 } else { -1 };
                row.push(if live { cfg.scalar(sign) } else { cfg.zero() });
            } else if live {
                return Err(Error::Other(format!(
                    "spinor norm has an entry off the antidiagonal at ({}, {})",
                    FockIndex(i),
                    FockIndex(j)
                )));
            }
        }
    }
    Ok(BilinearForm { cfg, flavor: Flavor::Plain, row })
}

/// `B_ε(φ, ψ) = B(ε·φ, ψ)`.
pub fn graded_norm(b: &BilinearForm) -> Result<BilinearForm> {
    if b.flavor != Flavor::Plain {
        return Err(Error::NotPlainNorm);
    }
    let row =
        b.row.iter().enumerate().map(|(i, c)| if FockIndex(i as u32).is_even() { c.clone() } else { -c }).collect();
    Ok(BilinearForm { cfg: b.cfg, flavor: Flavor::Graded, row })
}

/// Bilinear evaluation `B(φ, ψ)`.
pub fn b_eval(b: &BilinearForm, phi: &SpinorVec, psi: &SpinorVec) -> Result<Scalar> {
    b.eval(phi, psi)
}

impl BilinearForm {
    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `form(e_I·v, e_J·v)`.
    pub fn entry(&self, i: FockIndex, j: FockIndex) -> Scalar {
        if j == i.complement(self.cfg.n()) {
            self.row[i.0 as usize].clone()
        } else {
            self.cfg.zero()
        }
    }

    /// `form(e_I·v, e_{Iᶜ}·v)`.
    pub fn antidiagonal(&self, i: FockIndex) -> &Scalar {
        &self.row[i.0 as usize]
    }

    /// `(I, Iᶜ, value)` in ascending mask order.
    pub fn entries(&self) -> Vec<(FockIndex, FockIndex, Scalar)> {
        let n = self.cfg.n();
        self.row
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (FockIndex(i as u32), FockIndex(i as u32).complement(n), c.clone()))
            .collect()
    }

    pub fn eval(&self, phi: &SpinorVec, psi: &SpinorVec) -> Result<Scalar> {
        self.cfg.check_same(&phi.config())?;
        self.cfg.check_same(&psi.config())?;
        let n = self.cfg.n();
        let mut acc = self.cfg.zero();
        let (small, large, swapped) = if phi.len() <= psi.len() { (phi, psi, false) } else { (psi, phi, true) };
        for (i, c) in small.terms() {
            let j = i.complement(n);
            let d = large.coeff(j);
            if d.is_zero() {
                continue;
            }
            let entry = if swapped { &self.row[j.0 as usize] } else { &self.row[i.0 as usize] };
            acc += &(&(c * &d) * entry);
        }
        Ok(acc)
    }

    /// Evaluation on basis vectors given as masks.
    pub fn eval_basis(&self, i: u32, j: u32) -> Scalar {
        self.entry(FockIndex(i), FockIndex(j))
    }

    /// `λ·form`, for normalisation-robustness checks.
    pub fn scaled(&self, lambda: &Scalar) -> BilinearForm {
        BilinearForm { cfg: self.cfg, flavor: self.flavor, row: self.row.iter().map(|c| c * lambda).collect() }
    }

    /// Antidiagonal as ±1 when every entry is a unit sign.
    pub fn sign_row(&self) -> Option<Vec<i8>> {
        self.row
            .iter()
            .map(|c| {
                if c.is_one() {
                    Some(1)
                } else if (-c).is_one() {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn symmetry(&self) -> Option<Symmetry> {
        let n = self.cfg.n();
        let mut sym = true;
        let mut anti = true;
        for (i, c) in self.row.iter().enumerate() {
            let t = &self.row[FockIndex(i as u32).complement(n).0 as usize];
            sym &= t == c;
            anti &= *t == -c;
        }
        match (sym, anti) {
            (true, false) => Some(Symmetry::Symmetric),
            (false, true) => Some(Symmetry::Antisymmetric),
            _ => None,
        }
    }

    pub fn parity(&self) -> Option<FormParity> {
        let n = self.cfg.n();
        let mut even = true;
        let mut odd = true;
        for (i, c) in self.row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = FockIndex(i as u32);
            let same = idx.parity() == idx.complement(n).parity();
            even &= same;
            odd &= !same;
        }
        match (even, odd) {
            (true, false) => Some(FormParity::Even),
            (false, true) => Some(FormParity::Odd),
            _ => None,
        }
    }

    /// Rank of the form as a `2ⁿ×2ⁿ` matrix (a permutation pattern, so the nonzero count).
    pub fn rank(&self) -> usize {
        self.row.iter().filter(|c| !c.is_zero()).count()
    }

    /// Restriction `form(φ, ψ)` where `φ` has the given parity; used for half-spinor tables.
    pub fn pairs_parity(&self, p: Parity, q: Parity) -> bool {
        let n = self.cfg.n();
        self.row.iter().enumerate().any(|(i, c)| {
            let idx = FockIndex(i as u32);
            !c.is_zero() && idx.parity() == p && idx.complement(n).parity() == q
        })
    }
}

/// Expected `(symmetry, parity)` of `B` for `n mod 4`.
pub fn expected_plain_type(n: usize) -> (Symmetry, FormParity) {
    match n % 4 {
        0 => (Symmetry::Symmetric, FormParity::Even),
        1 => (Symmetry::Symmetric, FormParity::Odd),
        2 => (Symmetry::Antisymmetric, FormParity::Even),
        _ => (Symmetry::Antisymmetric, FormParity::Odd),
    }
}

/// Expected `(symmetry, parity)` of `B_ε` for `n mod 4`.
pub fn expected_graded_type(n: usize) -> (Symmetry, FormParity) {
    match n % 4 {
        0 => (Symmetry::Symmetric, FormParity::Even),
        1 => (Symmetry::Antisymmetric, FormParity::Odd),
        2 => (Symmetry::Antisymmetric, FormParity::Even),
        _ => (Symmetry::Symmetric, FormParity::Odd),
    }
}
