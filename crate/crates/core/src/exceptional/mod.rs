//! The split exceptional Lie algebras e₈, e₇, e₆ as exact structure-constant
//! tables built from spinors, with verification sweeps and root data.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::clifford::{CliffordElem, WittMonomial};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::fock::{Config, FockIndex};

mod build;
mod export;
mod roots;
mod verify;

#[cfg(test)]
mod tests;

pub use build::{build, build_e6, build_e7, build_e8, e6_coefficient_sweep, e7_identity_violations, BuildOptions};
pub use export::to_json;
pub use roots::{classify_cartan_matrix, root_decomposition, RootDatum};
pub use verify::{
    jacobi_at, killing_form, spanning_check, verify_jacobi, verify_jacobi_touching, JacobiReport, KillingForm,
    SpanReport,
};

/// Sparse coordinates in an algebra basis, ascending by index.
pub type Coords = Vec<(u32, Scalar)>;

/// The three algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraName {
    E6,
    E7,
    E8,
}

impl AlgebraName {
    pub const ALL: [AlgebraName; 3] = [AlgebraName::E6, AlgebraName::E7, AlgebraName::E8];

    /// Half-dimension of the underlying `(V, g)`.
    pub fn n(self) -> usize {
        match self {
            AlgebraName::E6 => 5,
            AlgebraName::E7 => 6,
            AlgebraName::E8 => 8,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            AlgebraName::E6 => 78,
            AlgebraName::E7 => 133,
            AlgebraName::E8 => 248,
        }
    }

    /// Dimension of the even part spanned by spinor-spinor brackets.
    pub fn degree_zero_dim(self) -> usize {
        match self {
            AlgebraName::E6 => 46,
            AlgebraName::E7 => 69,
            AlgebraName::E8 => 120,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            AlgebraName::E6 => 6,
            AlgebraName::E7 => 7,
            AlgebraName::E8 => 8,
        }
    }

    pub fn root_count(self) -> usize {
        self.dim() - self.rank()
    }
}

impl fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraName::E6 => "e6",
            AlgebraName::E7 => "e7",
            AlgebraName::E8 => "e8",
        })
    }
}

impl FromStr for AlgebraName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "e6" => Ok(AlgebraName::E6),
            "e7" => Ok(AlgebraName::E7),
            "e8" => Ok(AlgebraName::E8),
            other => Err(format!("unknown algebra `{other}` (expected e6, e7 or e8)")),
        }
    }
}

/// A basis monomial of `C²` in Witt form. Each is an ad-eigenvector of the
/// diagonal elements `e_a i_a − i_a e_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GradeTwo {
    /// `e_a i_a − i_a e_a`.
    Diag(usize),
    /// `e_a e_b`, `a < b`.
    EE(usize, usize),
    /// `i_a i_b`, `a < b`.
    II(usize, usize),
    /// `e_a i_b`, `a ≠ b`.
    EI(usize, usize),
}

impl GradeTwo {
    /// All `n(2n−1)` labels in basis order.
    pub fn all(n: usize) -> Vec<GradeTwo> {
        let mut out: Vec<GradeTwo> = (1..=n).map(GradeTwo::Diag).collect();
        for a in 1..=n {
            for b in a + 1..=n {
                out.push(GradeTwo::EE(a, b));
            }
        }
        for a in 1..=n {
            for b in a + 1..=n {
                out.push(GradeTwo::II(a, b));
            }
        }
        for a in 1..=n {
            for b in 1..=n {
                if a != b {
                    out.push(GradeTwo::EI(a, b));
                }
            }
        }
        out
    }

    fn monomial(self) -> WittMonomial {
        let bit = |a: usize| 1u32 << (a - 1);
        match self {
            GradeTwo::Diag(a) => WittMonomial::new(bit(a), bit(a)),
            GradeTwo::EE(a, b) => WittMonomial::new(bit(a) | bit(b), 0),
            GradeTwo::II(a, b) => WittMonomial::new(0, bit(a) | bit(b)),
            GradeTwo::EI(a, b) => WittMonomial::new(bit(a), bit(b)),
        }
    }

    pub fn element(self, cfg: Config) -> CliffordElem {
        let mono = CliffordElem::monomial(cfg, self.monomial());
        match self {
            // e_a i_a − i_a e_a = 2 e_a i_a − 1
            GradeTwo::Diag(_) => mono.scale(&cfg.scalar(2)) - CliffordElem::one(cfg),
            _ => mono,
        }
    }
}

impl fmt::Display for GradeTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeTwo::Diag(a) => write!(f, "h{a}"),
            other => write!(f, "{}", other.monomial()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2 {
    H,
    E,
    F,
}

/// Basis vectors `x₁, x₂` of `k²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    X1,
    X2,
}

impl Sl2 {
    /// The defining action on `k²`: `h x₁ = x₁`, `h x₂ = −x₂`, `e x₂ = x₁`, `f x₁ = x₂`.
    pub fn act(self, s: Slot) -> Option<(i64, Slot)> {
        match (self, s) {
            (Sl2::H, Slot::X1) => Some((1, Slot::X1)),
            (Sl2::H, Slot::X2) => Some((-1, Slot::X2)),
            (Sl2::E, Slot::X2) => Some((1, Slot::X1)),
            (Sl2::F, Slot::X1) => Some((1, Slot::X2)),
            _ => None,
        }
    }
}

impl Slot {
    /// Standard symplectic form with `ω(x₁, x₂) = 1`.
    pub fn omega(self, other: Slot) -> i64 {
        match (self, other) {
            (Slot::X1, Slot::X2) => 1,
            (Slot::X2, Slot::X1) => -1,
            _ => 0,
        }
    }

    /// `σ(x, y) ∈ sl₂`, `σ(x, y)z = ω(x, z)y + ω(y, z)x`.
    pub fn sigma(self, other: Slot) -> (i64, Sl2) {
        match (self, other) {
            (Slot::X1, Slot::X1) => (2, Sl2::E),
            (Slot::X2, Slot::X2) => (-2, Sl2::F),
            _ => (-1, Sl2::H),
        }
    }
}

/// A basis vector of one of the algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    GradeTwo(GradeTwo),
    HalfSpinor(FockIndex),
    SpinorTensor(FockIndex, Slot),
    Sl2(Sl2),
    /// The grading element `ε`.
    TopGrade,
}

impl BasisLabel {
    pub fn is_spinor(self) -> bool {
        matches!(self, BasisLabel::HalfSpinor(_) | BasisLabel::SpinorTensor(..))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::GradeTwo(g) => write!(f, "{g}"),
            BasisLabel::HalfSpinor(i) => write!(f, "v{i}"),
            BasisLabel::SpinorTensor(i, s) => {
                write!(f, "v{i}⊗{}", if *s == Slot::X1 { "x1" } else { "x2" })
            }
            BasisLabel::Sl2(s) => write!(
                f,
                "sl2.{}",
                match s {
                    Sl2::H => "h",
                    Sl2::E => "e",
                    Sl2::F => "f",
                }
            ),
            BasisLabel::TopGrade => f.write_str("eps"),
        }
    }
}

/// Outcome of comparing `[b_i, b_j]` with `−[b_j, b_i]` as computed from the
/// defining formulas, over all ordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntisymmetryReport {
    pub pairs: u64,
    pub violations: u64,
}

impl AntisymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// A Lie algebra given by structure constants `[b_i, b_j] = Σ_k c_{ij}^k b_k`,
/// stored for `i < j` only.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: AlgebraName,
    cfg: Config,
    basis: Vec<BasisLabel>,
    index: HashMap<BasisLabel, u32>,
    table: BTreeMap<(u32, u32), Coords>,
    antisymmetry: AntisymmetryReport,
    constants: Vec<(String, Scalar)>,
}

impl LieAlgebra {
    pub(crate) fn new(name: AlgebraName, cfg: Config, basis: Vec<BasisLabel>) -> Self {
        let index = basis.iter().enumerate().map(|(i, l)| (*l, i as u32)).collect();
        LieAlgebra {
            name,
            cfg,
            basis,
            index,
            table: BTreeMap::new(),
            antisymmetry: AntisymmetryReport::default(),
            constants: Vec::new(),
        }
    }

    pub fn name(&self) -> AlgebraName {
        self.name
    }

    pub fn config(&self) -> Config {
        self.cfg
    }

    pub fn field(&self) -> Field {
        self.cfg.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn label(&self, i: u32) -> BasisLabel {
        self.basis[i as usize]
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<u32> {
        self.index.get(&label).copied()
    }

    pub fn antisymmetry(&self) -> &AntisymmetryReport {
        &self.antisymmetry
    }

    /// Named normalisation constants fixed at build time.
    pub fn constants(&self) -> &[(String, Scalar)] {
        &self.constants
    }

    /// Stored brackets `(i, j) ↦ [b_i, b_j]`, `i < j`, nonzero only.
    pub fn stored(&self) -> impl Iterator<Item = ((u32, u32), &Coords)> {
        self.table.iter().map(|(k, v)| (*k, v))
    }

    /// `[b_i, b_j]`.
    pub fn bracket(&self, i: u32, j: u32) -> Coords {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Less => self.table.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => {
                self.table.get(&(j, i)).map(|v| v.iter().map(|(k, c)| (*k, -c)).collect()).unwrap_or_default()
            }
        }
    }

    pub fn structure_constant(&self, i: u32, j: u32, k: u32) -> Scalar {
        self.bracket(i, j).into_iter().find(|(m, _)| *m == k).map(|(_, c)| c).unwrap_or_else(|| self.cfg.zero())
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_coords(&self, x: &[(u32, Scalar)], y: &[(u32, Scalar)]) -> Coords {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in self.bracket(*i, *j) {
                    accumulate(&mut acc, k, &(&ab * &c));
                }
            }
        }
        finish(acc)
    }

    /// All stored nonzero constants `(i, j, k)` with `i < j`.
    pub fn nonzero_constants(&self) -> Vec<(u32, u32, u32)> {
        self.table.iter().flat_map(|(&(i, j), v)| v.iter().map(move |(k, _)| (i, j, *k))).collect()
    }

    /// Negates the single stored constant `c_{ij}^k` (`i < j`). Used to check
    /// that the verification sweeps notice corrupted tables.
    pub fn flip_sign(&mut self, i: u32, j: u32, k: u32) -> Result<()> {
        let entry = self
            .table
            .get_mut(&(i, j))
            .and_then(|v| v.iter_mut().find(|(m, _)| *m == k))
            .ok_or_else(|| Error::Other(format!("no stored constant c_({i},{j})^{k}")))?;
        entry.1 = -&entry.1;
        Ok(())
    }

    /// Dense `dim × dim` lookup of every ordered bracket.
    pub(crate) fn dense(&self) -> Vec<Coords> {
        let d = self.dim();
        let mut out = vec![Vec::new(); d * d];
        for (&(i, j), v) in &self.table {
            out[i as usize * d + j as usize] = v.clone();
            out[j as usize * d + i as usize] = v.iter().map(|(k, c)| (*k, -c)).collect();
        }
        out
    }
}

pub(crate) fn accumulate(acc: &mut BTreeMap<u32, Scalar>, k: u32, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, c.clone());
        }
    }
}

pub(crate) fn finish(acc: BTreeMap<u32, Scalar>) -> Coords {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
