use std::collections::{BTreeMap, HashMap};

use super::{accumulate, finish, AlgebraName, AntisymmetryReport, BasisLabel, Coords, GradeTwo, LieAlgebra, Sl2, Slot};
use crate::cartan_ops::l2_tilde_basis;
use crate::clifford::CliffordElem;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::fock::{Config, FockIndex, Parity, SpinorVec};
use crate::linalg::nullspace;
use crate::norms::{solve_spinor_norm, BilinearForm};
use crate::parallel::Execution;

use super::verify::{verify_jacobi, JacobiReport};

/// Knobs for the constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub field: Field,
    /// `B ↦ (num/den)·B` before building.
    pub norm_scale: (i64, i64),
    /// Half-spinor space used for e₈.
    pub e8_half: Parity,
    /// `(a, b)` in the e₆ bracket `[ψ₁, ψ₂] = a L̃₂(ψ₁, ψ₂) + b L₁₀(ψ₁, ψ₂)`.
    pub e6_coefficients: (i64, i64),
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { field: Field::Rational, norm_scale: (1, 1), e8_half: Parity::Even, e6_coefficients: (2, 96) }
    }
}

impl BuildOptions {
    pub fn over(field: Field) -> Self {
        BuildOptions { field, ..Self::default() }
    }
}

pub fn build(name: AlgebraName, opts: &BuildOptions) -> Result<LieAlgebra> {
    match name {
        AlgebraName::E6 => build_e6(opts),
        AlgebraName::E7 => build_e7(opts),
        AlgebraName::E8 => build_e8(opts),
    }
}

struct Ctx {
    cfg: Config,
    b: BilinearForm,
    c2: Vec<GradeTwo>,
    c2_elems: Vec<CliffordElem>,
}

fn lowest(mask: u32) -> usize {
    mask.trailing_zeros() as usize + 1
}

impl Ctx {
    fn new(n: usize, opts: &BuildOptions) -> Result<Ctx> {
        let cfg = Config::new(n, opts.field)?;
        let (num, den) = opts.norm_scale;
        if num == 0 || den == 0 {
            return Err(Error::Other("norm scale must be a nonzero ratio".into()));
        }
        let lambda = opts.field.ratio(num, den)?;
        if lambda.is_zero() {
            return Err(Error::Other(format!("norm scale {num}/{den} vanishes in {}", opts.field)));
        }
        let b = solve_spinor_norm(cfg)?.scaled(&lambda);
        let c2 = GradeTwo::all(n);
        let c2_elems = c2.iter().map(|g| g.element(cfg)).collect();
        Ok(Ctx { cfg, b, c2, c2_elems })
    }

    fn c2_element(&self, g: GradeTwo) -> &CliffordElem {
        let pos = self.c2.iter().position(|x| *x == g).expect("label of this configuration");
        &self.c2_elems[pos]
    }

    /// Coordinates of a grade-two element in the [`GradeTwo`] basis, scaled by `s`.
    fn decompose(&self, alg: &LieAlgebra, x: &CliffordElem, s: &Scalar, acc: &mut BTreeMap<u32, Scalar>) -> Result<()> {
        let half = self.cfg.ratio(1, 2);
        let mut scalar = self.cfg.zero();
        let mut diag = self.cfg.zero();
        for (m, c) in x.terms() {
            let (e, i) = (m.emask, m.imask);
            let (label, coeff) = match (e.count_ones(), i.count_ones()) {
                (0, 0) => {
                    scalar += c;
                    continue;
                }
                (2, 0) => (GradeTwo::EE(lowest(e), lowest(e & (e - 1))), c.clone()),
                (0, 2) => (GradeTwo::II(lowest(i), lowest(i & (i - 1))), c.clone()),
                (1, 1) if e == i => {
                    let t = c * &half;
                    diag += &t;
                    (GradeTwo::Diag(lowest(e)), t)
                }
                (1, 1) => (GradeTwo::EI(lowest(e), lowest(i)), c.clone()),
                _ => return Err(Error::NotInBasisSpan(x.to_string())),
            };
            let k = alg.index_of(BasisLabel::GradeTwo(label)).expect("grade-two label in basis");
            accumulate(acc, k, &(&coeff * s));
        }
        if !(&scalar + &diag).is_zero() {
            return Err(Error::NotInBasisSpan(x.to_string()));
        }
        Ok(())
    }

    fn spinor_coords(
        &self,
        alg: &LieAlgebra,
        psi: &SpinorVec,
        label: impl Fn(FockIndex) -> BasisLabel,
        s: &Scalar,
        acc: &mut BTreeMap<u32, Scalar>,
    ) -> Result<()> {
        for (k, c) in psi.terms() {
            let idx = alg.index_of(label(k)).ok_or_else(|| Error::NotInBasisSpan(psi.to_string()))?;
            accumulate(acc, idx, &(c * s));
        }
        Ok(())
    }

    fn grade_two_bracket(&self, alg: &LieAlgebra, a: GradeTwo, b: GradeTwo) -> Result<Coords> {
        let comm = self.c2_element(a).commutator(self.c2_element(b))?;
        let mut acc = BTreeMap::new();
        self.decompose(alg, &comm, &self.cfg.one(), &mut acc)?;
        Ok(finish(acc))
    }

    fn act(&self, a: GradeTwo, j: FockIndex) -> Result<SpinorVec> {
        self.c2_element(a).act(&SpinorVec::basis(self.cfg, j))
    }
}

fn negated(x: Coords) -> Coords {
    x.into_iter().map(|(k, c)| (k, -c)).collect()
}

/// Fills the table from `raw`, comparing both orders of every pair.
fn assemble(alg: &mut LieAlgebra, raw: impl Fn(&LieAlgebra, BasisLabel, BasisLabel) -> Result<Coords>) -> Result<()> {
    let d = alg.dim() as u32;
    let mut report = AntisymmetryReport::default();
    let mut table = BTreeMap::new();
    for i in 0..d {
        let li = alg.label(i);
        report.pairs += 1;
        if !raw(alg, li, li)?.is_empty() {
            report.violations += 1;
        }
        for j in i + 1..d {
            let lj = alg.label(j);
            let fwd = raw(alg, li, lj)?;
            let back = raw(alg, lj, li)?;
            report.pairs += 1;
            if negated(back) != fwd {
                report.violations += 1;
            }
            if !fwd.is_empty() {
                table.insert((i, j), fwd);
            }
        }
    }
    alg.table = table;
    alg.antisymmetry = report;
    Ok(())
}

/// e₈ on `C² ⊕ S₊` (or `S₋`), `n = 8`.
pub fn build_e8(opts: &BuildOptions) -> Result<LieAlgebra> {
    let ctx = Ctx::new(AlgebraName::E8.n(), opts)?;
    let half = opts.e8_half;
    let mut basis: Vec<BasisLabel> = ctx.c2.iter().map(|g| BasisLabel::GradeTwo(*g)).collect();
    basis.extend(ctx.cfg.fock_basis().filter(|i| half.matches(*i)).map(BasisLabel::HalfSpinor));
    let mut alg = LieAlgebra::new(AlgebraName::E8, ctx.cfg, basis);
    let one = ctx.cfg.one();
    let minus = -&one;
    assemble(&mut alg, |alg, x, y| {
        let mut acc = BTreeMap::new();
        match (x, y) {
            (BasisLabel::GradeTwo(a), BasisLabel::GradeTwo(b)) => return ctx.grade_two_bracket(alg, a, b),
            (BasisLabel::GradeTwo(a), BasisLabel::HalfSpinor(j)) => {
                ctx.spinor_coords(alg, &ctx.act(a, j)?, BasisLabel::HalfSpinor, &one, &mut acc)?;
            }
            (BasisLabel::HalfSpinor(j), BasisLabel::GradeTwo(a)) => {
                ctx.spinor_coords(alg, &ctx.act(a, j)?, BasisLabel::HalfSpinor, &minus, &mut acc)?;
            }
            (BasisLabel::HalfSpinor(i), BasisLabel::HalfSpinor(j)) => {
                ctx.decompose(alg, &l2_tilde_basis(&ctx.b, i, j)?, &one, &mut acc)?;
            }
            _ => unreachable!("e8 basis has only grade-two and half-spinor labels"),
        }
        Ok(finish(acc))
    })?;
    Ok(alg)
}

/// e₆ on `C² ⊕ C^{2n} ⊕ S`, `n = 5`, with `[ψ₁, ψ₂] = a L̃₂ + b L₁₀`.
pub fn build_e6(opts: &BuildOptions) -> Result<LieAlgebra> {
    let ctx = Ctx::new(AlgebraName::E6.n(), opts)?;
    let n = ctx.cfg.n();
    let mut basis: Vec<BasisLabel> = ctx.c2.iter().map(|g| BasisLabel::GradeTwo(*g)).collect();
    basis.push(BasisLabel::TopGrade);
    basis.extend(ctx.cfg.fock_basis().map(BasisLabel::HalfSpinor));
    let mut alg = LieAlgebra::new(AlgebraName::E6, ctx.cfg, basis);
    let one = ctx.cfg.one();
    let minus = -&one;
    let a = ctx.cfg.scalar(opts.e6_coefficients.0);
    // L₁₀(ψ₁, ψ₂) = 2^{−n} B(ψ₁, ε·ψ₂) ε
    let b_top = ctx.cfg.ratio(opts.e6_coefficients.1, 1i64 << n);
    let top = alg.index_of(BasisLabel::TopGrade).expect("ε in basis");
    let eps_sign = |j: FockIndex| if j.is_even() { one.clone() } else { minus.clone() };
    assemble(&mut alg, |alg, x, y| {
        let mut acc = BTreeMap::new();
        match (x, y) {
            (BasisLabel::GradeTwo(a), BasisLabel::GradeTwo(b)) => return ctx.grade_two_bracket(alg, a, b),
            (BasisLabel::GradeTwo(_) | BasisLabel::TopGrade, BasisLabel::GradeTwo(_) | BasisLabel::TopGrade) => {}
            (BasisLabel::GradeTwo(g), BasisLabel::HalfSpinor(j)) => {
                ctx.spinor_coords(alg, &ctx.act(g, j)?, BasisLabel::HalfSpinor, &one, &mut acc)?;
            }
            (BasisLabel::HalfSpinor(j), BasisLabel::GradeTwo(g)) => {
                ctx.spinor_coords(alg, &ctx.act(g, j)?, BasisLabel::HalfSpinor, &minus, &mut acc)?;
            }
            (BasisLabel::TopGrade, BasisLabel::HalfSpinor(j)) => {
                accumulate(&mut acc, alg.index_of(y).expect("spinor label"), &eps_sign(j));
            }
            (BasisLabel::HalfSpinor(j), BasisLabel::TopGrade) => {
                accumulate(&mut acc, alg.index_of(x).expect("spinor label"), &-eps_sign(j));
            }
            (BasisLabel::HalfSpinor(i), BasisLabel::HalfSpinor(j)) => {
                ctx.decompose(alg, &l2_tilde_basis(&ctx.b, i, j)?, &a, &mut acc)?;
                let coeff = &(&ctx.b.entry(i, j) * &eps_sign(j)) * &b_top;
                accumulate(&mut acc, top, &coeff);
            }
            _ => unreachable!("e6 basis has grade-two, top-grade and spinor labels"),
        }
        Ok(finish(acc))
    })?;
    alg.constants = vec![("a".into(), a), ("b".into(), ctx.cfg.scalar(opts.e6_coefficients.1))];
    Ok(alg)
}

fn sl2_bracket(x: Sl2, y: Sl2) -> Option<(i64, Sl2)> {
    match (x, y) {
        (Sl2::H, Sl2::E) => Some((2, Sl2::E)),
        (Sl2::E, Sl2::H) => Some((-2, Sl2::E)),
        (Sl2::H, Sl2::F) => Some((-2, Sl2::F)),
        (Sl2::F, Sl2::H) => Some((2, Sl2::F)),
        (Sl2::E, Sl2::F) => Some((1, Sl2::H)),
        (Sl2::F, Sl2::E) => Some((-1, Sl2::H)),
        _ => None,
    }
}

fn e7_basis(ctx: &Ctx) -> Vec<BasisLabel> {
    let mut basis: Vec<BasisLabel> = ctx.c2.iter().map(|g| BasisLabel::GradeTwo(*g)).collect();
    basis.extend([Sl2::H, Sl2::E, Sl2::F].map(BasisLabel::Sl2));
    for i in ctx.cfg.fock_basis().filter(|i| i.is_even()) {
        basis.push(BasisLabel::SpinorTensor(i, Slot::X1));
        basis.push(BasisLabel::SpinorTensor(i, Slot::X2));
    }
    basis
}

/// e₇ table with `[ψ⊗x, φ⊗y] = c₁ ω(x, y) L̃₂(ψ, φ) + c₂ B(ψ, φ) σ(x, y)`.
fn assemble_e7(ctx: &Ctx, c1: &Scalar, c2: &Scalar) -> Result<LieAlgebra> {
    let mut alg = LieAlgebra::new(AlgebraName::E7, ctx.cfg, e7_basis(ctx));
    let one = ctx.cfg.one();
    let minus = -&one;
    let sl2_index = |alg: &LieAlgebra, s: Sl2| alg.index_of(BasisLabel::Sl2(s)).expect("sl2 label");
    assemble(&mut alg, |alg, x, y| {
        let mut acc = BTreeMap::new();
        match (x, y) {
            (BasisLabel::GradeTwo(a), BasisLabel::GradeTwo(b)) => return ctx.grade_two_bracket(alg, a, b),
            (BasisLabel::GradeTwo(_), BasisLabel::Sl2(_)) | (BasisLabel::Sl2(_), BasisLabel::GradeTwo(_)) => {}
            (BasisLabel::Sl2(s), BasisLabel::Sl2(t)) => {
                if let Some((c, r)) = sl2_bracket(s, t) {
                    accumulate(&mut acc, sl2_index(alg, r), &ctx.cfg.scalar(c));
                }
            }
            (BasisLabel::GradeTwo(g), BasisLabel::SpinorTensor(j, slot)) => {
                let label = |k| BasisLabel::SpinorTensor(k, slot);
                ctx.spinor_coords(alg, &ctx.act(g, j)?, label, &one, &mut acc)?;
            }
            (BasisLabel::SpinorTensor(j, slot), BasisLabel::GradeTwo(g)) => {
                let label = |k| BasisLabel::SpinorTensor(k, slot);
                ctx.spinor_coords(alg, &ctx.act(g, j)?, label, &minus, &mut acc)?;
            }
            (BasisLabel::Sl2(s), BasisLabel::SpinorTensor(j, slot)) => {
                if let Some((c, t)) = s.act(slot) {
                    let k = alg.index_of(BasisLabel::SpinorTensor(j, t)).expect("spinor-tensor label");
                    accumulate(&mut acc, k, &ctx.cfg.scalar(c));
                }
            }
            (BasisLabel::SpinorTensor(j, slot), BasisLabel::Sl2(s)) => {
                if let Some((c, t)) = s.act(slot) {
                    let k = alg.index_of(BasisLabel::SpinorTensor(j, t)).expect("spinor-tensor label");
                    accumulate(&mut acc, k, &ctx.cfg.scalar(-c));
                }
            }
            (BasisLabel::SpinorTensor(i, sx), BasisLabel::SpinorTensor(j, sy)) => {
                let w = sx.omega(sy);
                if w != 0 && !c1.is_zero() {
                    ctx.decompose(alg, &l2_tilde_basis(&ctx.b, i, j)?, &c1.mul_i64(w), &mut acc)?;
                }
                let bij = ctx.b.entry(i, j);
                if !bij.is_zero() {
                    let (c, s) = sx.sigma(sy);
                    accumulate(&mut acc, sl2_index(alg, s), &(c2 * &bij).mul_i64(c));
                }
            }
            _ => unreachable!("e7 basis has grade-two, sl2 and spinor-tensor labels"),
        }
        Ok(finish(acc))
    })?;
    Ok(alg)
}

fn cyclic_sum(alg: &LieAlgebra, p: u32, q: u32, r: u32) -> Coords {
    let mut acc = BTreeMap::new();
    for (x, y, z) in [(p, q, r), (q, r, p), (r, p, q)] {
        let inner = alg.bracket(x, y);
        for (k, c) in alg.bracket_coords(&inner, &[(z, alg.config().one())]) {
            accumulate(&mut acc, k, &c);
        }
    }
    finish(acc)
}

/// Solves the Jacobi constraint on spinor-tensor triples for `(c₁, c₂)`,
/// normalised by `c₁ = 1`.
fn solve_e7_constants(ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    let (zero, one) = (ctx.cfg.zero(), ctx.cfg.one());
    let with_l2 = assemble_e7(ctx, &one, &zero)?;
    let with_b = assemble_e7(ctx, &zero, &one)?;
    let spin: Vec<u32> =
        (0..with_l2.dim() as u32).filter(|&i| matches!(with_l2.label(i), BasisLabel::SpinorTensor(..))).collect();
    let mut rows = Vec::new();
    let mut used = 0;
    'outer: for (a, &p) in spin.iter().enumerate() {
        for (b, &q) in spin.iter().enumerate().skip(a + 1) {
            for &r in &spin[b + 1..] {
                let u: BTreeMap<u32, Scalar> = cyclic_sum(&with_l2, p, q, r).into_iter().collect();
                let w: BTreeMap<u32, Scalar> = cyclic_sum(&with_b, p, q, r).into_iter().collect();
                if u.is_empty() && w.is_empty() {
                    continue;
                }
                let keys: std::collections::BTreeSet<u32> = u.keys().chain(w.keys()).copied().collect();
                for k in keys {
                    let get = |m: &BTreeMap<u32, Scalar>| m.get(&k).cloned().unwrap_or_else(|| zero.clone());
                    rows.push(vec![get(&u), get(&w)]);
                }
                used += 1;
                if used == 64 {
                    break 'outer;
                }
            }
        }
    }
    let ns = nullspace(ctx.cfg.field(), &rows, 2);
    match ns.as_slice() {
        [v] if !v[0].is_zero() => Ok((one, v[1].checked_div(&v[0])?)),
        _ => Err(Error::NoJacobiSolution),
    }
}

/// e₇ on `C² ⊕ sl(2) ⊕ S₊⊗k²`, `n = 6`. The constants are stored as `c1`, `c2`.
pub fn build_e7(opts: &BuildOptions) -> Result<LieAlgebra> {
    let ctx = Ctx::new(AlgebraName::E7.n(), opts)?;
    let (c1, c2) = solve_e7_constants(&ctx)?;
    let mut alg = assemble_e7(&ctx, &c1, &c2)?;
    alg.constants = vec![("c1".into(), c1), ("c2".into(), c2)];
    Ok(alg)
}

/// Checks `L̃₂(ψ₁,ψ₂)ψ₃ − L̃₂(ψ₁,ψ₃)ψ₂ = −B(ψ₁,ψ₂)ψ₃ + B(ψ₁,ψ₃)ψ₂ + 2B(ψ₂,ψ₃)ψ₁`
/// on every triple of even basis spinors for `n = 6`. Returns `(triples, violations)`.
pub fn e7_identity_violations(field: Field) -> Result<(u64, u64)> {
    let cfg = Config::new(AlgebraName::E7.n(), field)?;
    let b = solve_spinor_norm(cfg)?;
    let even: Vec<FockIndex> = cfg.fock_basis().filter(|i| i.is_even()).collect();
    let mut l2 = HashMap::new();
    for &i in &even {
        for &j in &even {
            l2.insert((i, j), l2_tilde_basis(&b, i, j)?);
        }
    }
    let (mut triples, mut violations) = (0u64, 0u64);
    for &i in &even {
        for &j in &even {
            for &k in &even {
                let (ei, ej, ek) = (SpinorVec::basis(cfg, i), SpinorVec::basis(cfg, j), SpinorVec::basis(cfg, k));
                let lhs = l2[&(i, j)].act(&ek)?.sub(&l2[&(i, k)].act(&ej)?);
                let rhs =
                    ek.scale(&-b.entry(i, j)).add(&ej.scale(&b.entry(i, k))).add(&ei.scale(&b.entry(j, k).mul_i64(2)));
                triples += 1;
                if lhs != rhs {
                    violations += 1;
                }
            }
        }
    }
    Ok((triples, violations))
}

/// Jacobi outcome of the e₆ bracket for each candidate `(a, b)`.
pub fn e6_coefficient_sweep(
    field: Field,
    candidates: &[(i64, i64)],
    exec: Execution,
) -> Result<Vec<((i64, i64), JacobiReport)>> {
    candidates
        .iter()
        .map(|&ab| {
            let opts = BuildOptions { field, e6_coefficients: ab, ..BuildOptions::default() };
            let alg = build_e6(&opts)?;
            Ok((ab, verify_jacobi(&alg, exec)))
        })
        .collect()
}
