use std::collections::BTreeSet;

use super::{Coords, LieAlgebra};
use crate::field::Scalar;
use crate::linalg::{Echelon, SparseRow};
use crate::parallel::Execution;

const MAX_EXAMPLES: usize = 16;

/// Outcome of a Jacobi sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples: u64,
    pub violations: u64,
    /// The first few violating triples in ascending order.
    pub examples: Vec<(u32, u32, u32)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn merge(mut self, other: JacobiReport) -> JacobiReport {
        self.triples += other.triples;
        self.violations += other.violations;
        self.examples.extend(other.examples);
        self.examples.truncate(MAX_EXAMPLES);
        self
    }
}

fn add_into(acc: &mut Vec<(u32, Scalar)>, k: u32, c: Scalar) {
    match acc.iter_mut().find(|(m, _)| *m == k) {
        Some(slot) => slot.1 += &c,
        None => acc.push((k, c)),
    }
}

/// `[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]` is zero.
fn jacobi_zero(t: &[Coords], d: usize, i: usize, j: usize, k: usize) -> bool {
    let mut acc: Vec<(u32, Scalar)> = Vec::new();
    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
        for (m, c) in &t[x * d + y] {
            for (l, e) in &t[*m as usize * d + z] {
                add_into(&mut acc, *l, c * e);
            }
        }
    }
    acc.iter().all(|(_, c)| c.is_zero())
}

/// The Jacobi sum for one triple.
pub fn jacobi_at(alg: &LieAlgebra, i: u32, j: u32, k: u32) -> Coords {
    let mut acc = std::collections::BTreeMap::new();
    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
        let inner = alg.bracket(x, y);
        for (l, c) in alg.bracket_coords(&inner, &[(z, alg.config().one())]) {
            super::accumulate(&mut acc, l, &c);
        }
    }
    super::finish(acc)
}

/// Exact Jacobi check over all `i < j < k`.
pub fn verify_jacobi(alg: &LieAlgebra, exec: Execution) -> JacobiReport {
    let d = alg.dim();
    let t = alg.dense();
    let parts = exec.map(d, |i| {
        let mut r = JacobiReport::default();
        for j in i + 1..d {
            for k in j + 1..d {
                r.triples += 1;
                if !jacobi_zero(&t, d, i, j, k) {
                    r.violations += 1;
                    if r.examples.len() < MAX_EXAMPLES {
                        r.examples.push((i as u32, j as u32, k as u32));
                    }
                }
            }
        }
        r
    });
    parts.into_iter().fold(JacobiReport::default(), JacobiReport::merge)
}

/// Jacobi check restricted to triples containing at least one of `indices`.
///
/// A change to `c_{ij}^k` can only affect triples containing `i` or `j`, so
/// this sweep sees every violation such a change introduces.
pub fn verify_jacobi_touching(alg: &LieAlgebra, indices: &[u32], exec: Execution) -> JacobiReport {
    let d = alg.dim();
    let t = alg.dense();
    let mut triples = BTreeSet::new();
    for &a in indices {
        for x in 0..d as u32 {
            for y in x + 1..d as u32 {
                if x != a && y != a {
                    let mut tr = [a, x, y];
                    tr.sort_unstable();
                    triples.insert((tr[0], tr[1], tr[2]));
                }
            }
        }
    }
    let list: Vec<(u32, u32, u32)> = triples.into_iter().collect();
    let flags = exec.map(list.len(), |n| {
        let (i, j, k) = list[n];
        jacobi_zero(&t, d, i as usize, j as usize, k as usize)
    });
    let mut r = JacobiReport { triples: list.len() as u64, ..JacobiReport::default() };
    for (tr, ok) in list.iter().zip(flags) {
        if !ok {
            r.violations += 1;
            if r.examples.len() < MAX_EXAMPLES {
                r.examples.push(*tr);
            }
        }
    }
    r
}

/// `κ(b_i, b_j) = Tr(ad b_i ∘ ad b_j)` as sparse rows, with its exact rank.
#[derive(Clone, Debug)]
pub struct KillingForm {
    pub rows: Vec<SparseRow>,
    pub rank: usize,
}

impl KillingForm {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn value(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.rows[i].iter().find(|(k, _)| *k == j).map(|(_, c)| c)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| row.iter().all(|(j, c)| self.value(*j, i) == Some(c)))
    }

    pub fn nondegenerate(&self) -> bool {
        self.rank == self.dim()
    }
}

pub fn killing_form(alg: &LieAlgebra, exec: Execution) -> KillingForm {
    let d = alg.dim();
    let t = alg.dense();
    // by_target[l·d + k] lists (j, c_{jl}^k)
    let mut by_target: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d * d];
    for j in 0..d {
        for l in 0..d {
            for (k, c) in &t[j * d + l] {
                by_target[l * d + *k as usize].push((j, c.clone()));
            }
        }
    }
    let rows = exec.map(d, |i| {
        let mut acc = std::collections::BTreeMap::new();
        for k in 0..d {
            for (l, c) in &t[i * d + k] {
                for (j, e) in &by_target[*l as usize * d + k] {
                    super::accumulate(&mut acc, *j as u32, &(c * e));
                }
            }
        }
        acc.into_iter().map(|(j, c)| (j as usize, c)).collect::<SparseRow>()
    });
    let mut ech = Echelon::new();
    for row in &rows {
        ech.insert(row);
    }
    KillingForm { rank: ech.rank(), rows }
}

/// Rank of the span of all spinor-spinor brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub rank: usize,
    pub expected: usize,
    pub pairs: u64,
}

impl SpanReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected
    }
}

pub fn spanning_check(alg: &LieAlgebra) -> SpanReport {
    let mut ech = Echelon::new();
    let mut pairs = 0;
    let spinor: Vec<u32> = (0..alg.dim() as u32).filter(|&i| alg.label(i).is_spinor()).collect();
    for (a, &i) in spinor.iter().enumerate() {
        for &j in &spinor[a + 1..] {
            pairs += 1;
            let row: SparseRow = alg.bracket(i, j).into_iter().map(|(k, c)| (k as usize, c)).collect();
            ech.insert(&row);
        }
    }
    SpanReport { rank: ech.rank(), expected: alg.name().degree_zero_dim(), pairs }
}
