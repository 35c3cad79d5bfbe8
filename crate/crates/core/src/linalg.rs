//! Exact linear algebra over [`Scalar`]: sparse incremental echelon forms for
//! rank computations and small dense solves.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// A sparse row: strictly ascending columns, nonzero entries.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Incrementally built row echelon form.
///
/// Each stored pivot row is normalised to a leading `1`.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, row: &[(usize, Scalar)]) -> SparseRow {
        let mut work: BTreeMap<usize, Scalar> =
            row.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).find(|(k, _)| self.pivots.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((col, c)) = next else { break };
            for (k, p) in &self.pivots[&col] {
                let slot = work.entry(*k).or_insert_with(|| c.field().zero());
                *slot -= &(&c * p);
                if slot.is_zero() {
                    work.remove(k);
                }
            }
            cursor = col + 1;
        }
        work.into_iter().collect()
    }

    /// Adds `row`; returns `true` when the rank grew.
    pub fn insert(&mut self, row: &[(usize, Scalar)]) -> bool {
        let reduced = self.reduce(row);
        let Some((lead, c)) = reduced.first().cloned() else {
            return false;
        };
        let inv = c.inv().expect("nonzero pivot");
        let normalised = reduced.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.pivots.insert(lead, normalised);
        true
    }
}

/// Rank of a family of sparse rows.
pub fn rank<'a>(rows: impl IntoIterator<Item = &'a SparseRow>) -> usize {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Basis of the right null space `{x : Ax = 0}` of a dense matrix with `cols` columns.
pub fn nullspace(field: Field, rows: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&m[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square dense matrix.
pub fn inverse(field: Field, a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).ok_or_else(|| Error::Other("singular matrix".into()))?;
        m.swap(c, p);
        let inv = m[c][c].inv()?;
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[c].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}
