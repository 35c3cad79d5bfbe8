use std::collections::HashSet;

use super::{BasisLabel, GradeTwo, LieAlgebra, Sl2};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::inverse;

/// Weights and root system of an algebra with respect to its diagonal Cartan
/// subalgebra.
#[derive(Clone, Debug)]
pub struct RootDatum {
    /// Basis indices spanning the Cartan subalgebra.
    pub cartan: Vec<u32>,
    /// `weights[k][c]`: eigenvalue of `ad(b_cartan[c])` on `b_k`.
    pub weights: Vec<Vec<Scalar>>,
    /// Basis indices of the root vectors, ascending.
    pub root_vectors: Vec<u32>,
    pub simple_roots: Vec<Vec<Scalar>>,
    /// `A_ij = 2(α_i, α_j)/(α_j, α_j)` in the Killing inner product.
    pub cartan_matrix: Vec<Vec<i64>>,
    pub dynkin: String,
    /// All roots have the same Killing length.
    pub equal_lengths: bool,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn root_count(&self) -> usize {
        self.root_vectors.len()
    }

    pub fn roots(&self) -> impl Iterator<Item = &Vec<Scalar>> {
        self.root_vectors.iter().map(|&k| &self.weights[k as usize])
    }
}

fn is_cartan(label: BasisLabel) -> bool {
    matches!(label, BasisLabel::GradeTwo(GradeTwo::Diag(_)) | BasisLabel::Sl2(Sl2::H) | BasisLabel::TopGrade)
}

fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

fn form(kinv: &[Vec<Scalar>], a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let kb: Vec<Scalar> = kinv.iter().map(|row| dot(row, b, field)).collect();
    dot(a, &kb, field)
}

pub fn root_decomposition(alg: &LieAlgebra) -> Result<RootDatum> {
    let field = alg.field();
    if field != Field::Rational {
        return Err(Error::RequiresRational);
    }
    let d = alg.dim() as u32;
    let cartan: Vec<u32> = (0..d).filter(|&i| is_cartan(alg.label(i))).collect();
    for (a, &h) in cartan.iter().enumerate() {
        for &g in &cartan[a + 1..] {
            if !alg.bracket(h, g).is_empty() {
                return Err(Error::Other(format!(
                    "Cartan elements {} and {} do not commute",
                    alg.label(h),
                    alg.label(g)
                )));
            }
        }
    }
    let mut weights = Vec::with_capacity(d as usize);
    for k in 0..d {
        let mut w = Vec::with_capacity(cartan.len());
        for &h in &cartan {
            let br = alg.bracket(h, k);
            match br.as_slice() {
                [] => w.push(field.zero()),
                [(m, c)] if *m == k => w.push(c.clone()),
                _ => return Err(Error::NotWeightVector(alg.label(k).to_string())),
            }
        }
        weights.push(w);
    }
    let mut root_vectors = Vec::new();
    let mut seen = HashSet::new();
    for k in 0..d {
        let zero = weights[k as usize].iter().all(Scalar::is_zero);
        let in_cartan = cartan.contains(&k);
        if zero != in_cartan {
            return Err(Error::Other(format!("zero-weight space differs from the Cartan span at {}", alg.label(k))));
        }
        if !zero {
            if !seen.insert(weights[k as usize].clone()) {
                return Err(Error::Other(format!("root of {} has multiplicity above one", alg.label(k))));
            }
            root_vectors.push(k);
        }
    }
    // Killing form on the Cartan subalgebra: κ(h, h') = Σ_k w_k(h) w_k(h')
    let r = cartan.len();
    let kappa: Vec<Vec<Scalar>> = (0..r)
        .map(|a| (0..r).map(|b| weights.iter().fold(field.zero(), |acc, w| &acc + &(&w[a] * &w[b]))).collect())
        .collect();
    let kinv = inverse(field, &kappa)?;
    let roots: Vec<&Vec<Scalar>> = root_vectors.iter().map(|&k| &weights[k as usize]).collect();

    // the roots have entries in [−2, 2], so base-5 digits make this injective
    let height =
        |a: &[Scalar]| a.iter().enumerate().fold(field.zero(), |acc, (i, x)| &acc + &x.mul_i64(5i64.pow(i as u32)));
    let positive: Vec<&Vec<Scalar>> = roots.iter().copied().filter(|a| height(a).signum() == Some(1)).collect();
    if positive.len() * 2 != roots.len() {
        return Err(Error::Other("positivity functional vanishes on a root".into()));
    }
    let pos_set: HashSet<&Vec<Scalar>> = positive.iter().copied().collect();
    let simple_roots: Vec<Vec<Scalar>> = positive
        .iter()
        .filter(|a| {
            !positive.iter().any(|b| {
                let diff: Vec<Scalar> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .map(|a| (*a).clone())
        .collect();
    if simple_roots.len() != r {
        return Err(Error::Other(format!("found {} simple roots for rank {r}", simple_roots.len())));
    }
    let mut cartan_matrix = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let num = form(&kinv, &simple_roots[i], &simple_roots[j], field).mul_i64(2);
            let den = form(&kinv, &simple_roots[j], &simple_roots[j], field);
            let entry = num.checked_div(&den)?;
            cartan_matrix[i][j] =
                entry.to_i64().ok_or_else(|| Error::Other(format!("non-integral Cartan entry {entry}")))?;
        }
    }
    let lengths: HashSet<Scalar> = roots.iter().map(|a| form(&kinv, a, a, field)).collect();
    Ok(RootDatum {
        cartan,
        weights,
        root_vectors,
        simple_roots,
        dynkin: classify_cartan_matrix(&cartan_matrix),
        cartan_matrix,
        equal_lengths: lengths.len() == 1,
    })
}

/// Names the Dynkin type of a Cartan matrix, e.g. `E8` or `A1+A2`.
pub fn classify_cartan_matrix(a: &[Vec<i64>]) -> String {
    let r = a.len();
    let mut seen = vec![false; r];
    let mut names = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let i = comp[head];
            head += 1;
            for j in 0..r {
                if j != i && a[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        comp.sort_unstable();
        names.push(classify_component(a, &comp));
    }
    names.sort();
    names.join("+")
}

fn classify_component(a: &[Vec<i64>], comp: &[usize]) -> String {
    let r = comp.len();
    let unknown = || format!("unknown{r}");
    if comp.iter().any(|&i| a[i][i] != 2) {
        return unknown();
    }
    let neighbours = |i: usize| comp.iter().copied().filter(move |&j| j != i && a[i][j] != 0);
    let edges: usize = comp.iter().map(|&i| neighbours(i).count()).sum::<usize>() / 2;
    if edges + 1 != r {
        return unknown();
    }
    let mut double = None;
    for &i in comp {
        for j in neighbours(i) {
            match a[i][j] * a[j][i] {
                1 => {}
                2 | 3 if i < j => double = Some((i, j, a[i][j] * a[j][i])),
                2 | 3 => {}
                _ => return unknown(),
            }
        }
    }
    let degree = |i: usize| neighbours(i).count();
    if let Some((i, j, m)) = double {
        if m == 3 {
            return if r == 2 { "G2".into() } else { unknown() };
        }
        if comp.iter().any(|&x| degree(x) > 2) {
            return unknown();
        }
        if r == 2 {
            return "B2".into();
        }
        let (end, inner) = match (degree(i), degree(j)) {
            (1, _) => (i, j),
            (_, 1) => (j, i),
            _ => return if r == 4 { "F4".into() } else { unknown() },
        };
        // a_{inner,end} = −2 means the end node is the short root
        return if a[inner][end] == -2 { format!("B{r}") } else { format!("C{r}") };
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&i| degree(i) >= 3).collect();
    match branch.as_slice() {
        [] => format!("A{r}"),
        [c] if degree(*c) == 3 => {
            let mut arms: Vec<usize> = neighbours(*c)
                .map(|first| {
                    let (mut prev, mut cur, mut len) = (*c, first, 1);
                    while let Some(next) = neighbours(cur).find(|&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => format!("D{r}"),
                [1, 2, 2] => "E6".into(),
                [1, 2, 3] => "E7".into(),
                [1, 2, 4] => "E8".into(),
                _ => unknown(),
            }
        }
        _ => unknown(),
    }
}
