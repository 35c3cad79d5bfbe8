use proptest::prelude::*;

use super::*;
use crate::field::Field;
use crate::fock::{epsilon_action, Config};

fn cfg(n: usize) -> Config {
    Config::rational(n).unwrap()
}

fn mono(e: &[usize], i: &[usize]) -> WittMonomial {
    WittMonomial::new(FockIndex::from_elements(e).0, FockIndex::from_elements(i).0)
}

fn elem(c: Config, m: WittMonomial) -> CliffordElem {
    CliffordElem::monomial(c, m)
}

fn all_monomials(n: usize) -> Vec<WittMonomial> {
    let mut out = Vec::new();
    for e in 0u32..1 << n {
        for i in 0u32..1 << n {
            out.push(WittMonomial::new(e, i));
        }
    }
    out
}

fn matrix_product(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let dim = a.len();
    let zero = a[0][0].field().zero();
    let mut out = vec![vec![zero; dim]; dim];
    for r in 0..dim {
        for k in 0..dim {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..dim {
                if !b[k][c].is_zero() {
                    out[r][c] += &(&a[r][k] * &b[k][c]);
                }
            }
        }
    }
    out
}

#[test]
fn multiply_examples() {
    let c = cfg(2);
    let e1 = elem(c, WittMonomial::e(1));
    let i1 = elem(c, WittMonomial::i(1));
    let expected = CliffordElem::one(c) - elem(c, mono(&[1], &[1]));
    assert_eq!(&i1 * &e1, expected);
    assert!((&e1 * &e1).is_zero());
    let eps = grading_element(c);
    assert_eq!(&eps * &eps, CliffordElem::one(c));
}

#[test]
fn generator_relations() {
    let c = cfg(3);
    for a in 1..=3 {
        for b in 1..=3 {
            let ea = elem(c, WittMonomial::e(a));
            let eb = elem(c, WittMonomial::e(b));
            let ia = elem(c, WittMonomial::i(a));
            let ib = elem(c, WittMonomial::i(b));
            assert!((&ea * &eb + &eb * &ea).is_zero());
            assert!((&ia * &ib + &ib * &ia).is_zero());
            let delta = if a == b { CliffordElem::one(c) } else { CliffordElem::zero(c) };
            assert_eq!(&ia * &eb + &eb * &ia, delta);
        }
    }
}

#[test]
fn act_examples() {
    let c = cfg(3);
    let psi = SpinorVec::basis(c, FockIndex::from_elements(&[1, 3])).add(&SpinorVec::vacuum(c));
    assert_eq!(CliffordElem::one(c).act(&psi).unwrap(), psi);
    let e1v = SpinorVec::basis(c, FockIndex::from_elements(&[1]));
    assert_eq!(elem(c, mono(&[1], &[1])).act(&e1v).unwrap(), e1v);
}

#[test]
fn act_is_a_homomorphism_exhaustively() {
    for n in 1..=3 {
        let c = cfg(n);
        let monos = all_monomials(n);
        for &x in &monos {
            for &y in &monos {
                let xy = &elem(c, x) * &elem(c, y);
                for idx in c.fock_basis() {
                    let psi = SpinorVec::basis(c, idx);
                    let lhs = xy.act(&psi).unwrap();
                    let rhs = elem(c, x).act(&elem(c, y).act(&psi).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "n={n} x={x} y={y} psi={idx}");
                }
            }
        }
    }
}

#[test]
fn monomials_are_linearly_independent() {
    // distinct monomials give distinct nonzero matrix patterns with a single ±1 per column
    let n = 3;
    let c = cfg(n);
    let mut seen = std::collections::HashSet::new();
    for m in all_monomials(n) {
        let mat = action_matrix(&elem(c, m));
        let key: Vec<(usize, usize)> =
            (0..8).flat_map(|r| (0..8).map(move |col| (r, col))).filter(|&(r, col)| !mat[r][col].is_zero()).collect();
        assert!(!key.is_empty());
        // e_A i_B has a unique lowest-weight source: B, with image A
        let src = m.imask as usize;
        assert!(key.contains(&(m.emask as usize, src)));
        assert!(seen.insert((m.emask, m.imask)));
    }
    assert_eq!(seen.len(), 64);
}

#[test]
fn transpose_examples() {
    let c = cfg(2);
    let e1 = elem(c, WittMonomial::e(1));
    assert_eq!(e1.transpose(), e1);
    let e12 = elem(c, mono(&[1, 2], &[]));
    assert_eq!(e12.transpose(), -e12.clone());
    let e1i2 = elem(c, mono(&[1], &[2]));
    assert_eq!(e1i2.transpose(), -e1i2.clone());
}

#[test]
fn transpose_is_an_involutive_anti_automorphism() {
    let c = cfg(3);
    let monos = all_monomials(3);
    for &x in &monos {
        let ex = elem(c, x);
        assert_eq!(ex.transpose().transpose(), ex);
        for &y in monos.iter().step_by(3) {
            let ey = elem(c, y);
            assert_eq!((&ex * &ey).transpose(), &ey.transpose() * &ex.transpose());
        }
    }
}

#[test]
fn trace_examples() {
    for n in 1..=4 {
        let c = cfg(n);
        assert_eq!(CliffordElem::one(c).trace(), c.scalar(1 << n));
        assert!(elem(c, WittMonomial::e(1)).trace().is_zero());
        assert_eq!(elem(c, mono(&[1], &[1])).trace(), c.scalar(1 << (n - 1)));
    }
}

#[test]
fn trace_matches_matrix_trace() {
    for n in 1..=4 {
        let c = cfg(n);
        for m in all_monomials(n) {
            let mat = action_matrix(&elem(c, m));
            let mut t = c.zero();
            for (k, row) in mat.iter().enumerate() {
                t += &row[k];
            }
            assert_eq!(elem(c, m).trace(), t, "n={n} m={m}");
        }
    }
}

#[test]
fn grade_project_examples() {
    let c = cfg(2);
    let e1i1 = elem(c, mono(&[1], &[1]));
    assert_eq!(grade_project(&e1i1, 0).unwrap(), CliffordElem::scalar(c, &c.ratio(1, 2)));
    let i1e1 = &elem(c, WittMonomial::i(1)) * &elem(c, WittMonomial::e(1));
    let expected = (e1i1.clone() - i1e1).scale(&c.ratio(1, 2));
    assert_eq!(grade_project(&e1i1, 2).unwrap(), expected);
    let eps = grading_element(c);
    assert_eq!(grade_project(&eps, 4).unwrap(), eps);
    assert!(matches!(grade_project(&eps, 5), Err(crate::error::Error::GradeOutOfRange { k: 5, max: 4 })));
}

#[test]
fn grade_projections_are_complete_and_orthogonal() {
    for n in 1..=3 {
        let c = cfg(n);
        for m in all_monomials(n) {
            let x = elem(c, m);
            let parts = grade_decompose(&x);
            let mut sum = CliffordElem::zero(c);
            for (k, p) in parts.iter().enumerate() {
                sum = sum + p.clone();
                let again = grade_decompose(p);
                for (j, q) in again.iter().enumerate() {
                    if j == k {
                        assert_eq!(q, p);
                    } else {
                        assert!(q.is_zero());
                    }
                }
            }
            assert_eq!(sum, x);
        }
    }
}

#[test]
fn q_map_examples_and_errors() {
    let c = cfg(2);
    assert_eq!(q_map(c, &[]).unwrap(), CliffordElem::one(c));
    let expected = elem(c, WittMonomial::e(1)) + elem(c, WittMonomial::i(1));
    assert_eq!(q_map(c, &[0]).unwrap(), expected);
    assert!(q_map(c, &[1, 0]).is_err());
    assert!(q_map(c, &[1, 1]).is_err());
    assert!(q_map(c, &[4]).is_err());
}

#[test]
fn q_map_is_homogeneous() {
    let c = cfg(3);
    for k in 0..=6 {
        for s in wedge_basis(3, k) {
            let q = q_map(c, &labels_of_mask(s)).unwrap();
            assert_eq!(grade_support(&q), vec![k]);
        }
    }
}

#[test]
fn q_map_isometry_through_clifford_products() {
    for n in 1..=2 {
        let c = cfg(n);
        let all: Vec<u32> = (0u32..1 << (2 * n)).collect();
        for &s in &all {
            let qs = q_map(c, &labels_of_mask(s)).unwrap();
            for &t in &all {
                let qt = q_map(c, &labels_of_mask(t)).unwrap();
                let tr = (&qs.transpose() * &qt).trace();
                let expected = if s == t { metric_sign(s) as i64 * (1 << n) } else { 0 };
                assert_eq!(tr, c.scalar(expected));
            }
        }
    }
}

#[test]
fn signed_perm_matches_clifford_action() {
    let n = 3;
    let c = cfg(n);
    for s in 0u32..1 << (2 * n) {
        let labels = labels_of_mask(s);
        let p = SignedPerm::of_labels(n, &labels);
        let q = q_map(c, &labels).unwrap();
        assert_eq!(p.flip(), flip_of_labels(s));
        for m in 0u32..1 << n {
            let (sign, t) = p.apply(m);
            let expected = SpinorVec::basis(c, FockIndex(t)).scale(&c.scalar(sign as i64));
            assert_eq!(q.act(&SpinorVec::basis(c, FockIndex(m))).unwrap(), expected);
        }
        let rev: Vec<usize> = labels.iter().rev().copied().collect();
        let pr = SignedPerm::of_labels(n, &rev);
        let tq = q.transpose();
        for m in 0u32..1 << n {
            let (sign, t) = pr.apply(m);
            let expected = SpinorVec::basis(c, FockIndex(t)).scale(&c.scalar(sign as i64));
            assert_eq!(tq.act(&SpinorVec::basis(c, FockIndex(m))).unwrap(), expected);
        }
        assert_eq!(pr.compose(&p).trace(), metric_sign(s) as i64 * (1 << n));
    }
}

#[test]
fn labels_with_flip_enumerates_the_fibre() {
    let n = 3;
    for flip in 0u32..1 << n {
        let mut got: Vec<u32> = labels_with_flip(n, flip).collect();
        got.sort_unstable();
        let expected: Vec<u32> = (0u32..1 << (2 * n)).filter(|&s| flip_of_labels(s) == flip).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn grading_element_examples() {
    let c = cfg(1);
    let eps = grading_element(c);
    let i1e1 = &elem(c, WittMonomial::i(1)) * &elem(c, WittMonomial::e(1));
    assert_eq!(eps, i1e1 - elem(c, mono(&[1], &[1])));
    for n in 1..=5 {
        let c = cfg(n);
        let eps = grading_element(c);
        assert_eq!(&eps * &eps, CliffordElem::one(c));
        assert_eq!(eps.act(&SpinorVec::vacuum(c)).unwrap(), SpinorVec::vacuum(c));
        for idx in c.fock_basis() {
            let psi = SpinorVec::basis(c, idx);
            assert_eq!(eps.act(&psi).unwrap(), epsilon_action(&psi));
        }
        if n <= 4 {
            assert_eq!(grade_support(&eps), vec![2 * n]);
        }
    }
}

#[test]
fn epsilon_idempotents() {
    let c = cfg(3);
    let eps = grading_element(c);
    let half = c.ratio(1, 2);
    let one = CliffordElem::one(c);
    let plus = (one.clone() + eps.clone()).scale(&half);
    let minus = (one.clone() - eps).scale(&half);
    assert_eq!(&plus * &plus, plus);
    assert_eq!(&minus * &minus, minus);
    assert!((&plus * &minus).is_zero());
    assert_eq!(plus + minus, one);
}

#[test]
fn epsilon_duality_on_monomials() {
    for n in 1..=3 {
        let c = cfg(n);
        let eps = grading_element(c);
        for m in all_monomials(n) {
            let x = elem(c, m);
            let ex = grade_decompose(&(&eps * &x));
            let px = grade_decompose(&x);
            for k in 0..=2 * n {
                assert_eq!(ex[2 * n - k], &eps * &px[k]);
            }
        }
    }
}

#[test]
fn h_operator_laws() {
    for n in 1..=4 {
        let c = cfg(n);
        let h = h_operator(c);
        if n <= 3 {
            assert_eq!(grade_project(&h, 2).unwrap(), h);
        }
        for a in 1..=n {
            let ea = elem(c, WittMonomial::e(a));
            let ia = elem(c, WittMonomial::i(a));
            assert_eq!(h.commutator(&ea).unwrap(), ea);
            assert_eq!(h.commutator(&ia).unwrap(), -ia);
        }
        for idx in c.fock_basis() {
            let psi = SpinorVec::basis(c, idx);
            let eig = c.ratio(2 * idx.len() as i64 - n as i64, 2);
            assert_eq!(h.act(&psi).unwrap(), psi.scale(&eig));
        }
    }
}

#[test]
fn grade_two_brackets_preserve_grade() {
    let n = 3;
    let c = cfg(n);
    let twos: Vec<CliffordElem> =
        wedge_basis(n, 2).into_iter().map(|s| q_map(c, &labels_of_mask(s)).unwrap()).collect();
    let eps = grading_element(c);
    for m in 0..=2 * n {
        for s in wedge_basis(n, m).into_iter().step_by(2) {
            let y = q_map(c, &labels_of_mask(s)).unwrap();
            for x in &twos {
                let br = x.commutator(&y).unwrap();
                let support = grade_support(&br);
                assert!(support.is_empty() || support == vec![m]);
            }
        }
    }
    for x in &twos {
        assert!(x.commutator(&eps).unwrap().is_zero());
    }
}

#[test]
fn prime_field_arithmetic() {
    let c = Config::new(3, Field::prime(7).unwrap()).unwrap();
    let eps = grading_element(c);
    assert_eq!(&eps * &eps, CliffordElem::one(c));
    let h = h_operator(c);
    let psi = SpinorVec::basis(c, FockIndex::from_elements(&[1, 2]));
    assert_eq!(h.act(&psi).unwrap(), psi.scale(&c.ratio(1, 2)));
}

#[test]
fn display() {
    assert_eq!(mono(&[1, 3], &[2]).to_string(), "e1 e3 i2");
    assert_eq!(WittMonomial::ONE.to_string(), "1");
    let c = cfg(2);
    let x = CliffordElem::one(c) - elem(c, mono(&[1], &[1]));
    assert_eq!(x.to_string(), "+ (1/1) 1 + (-1/1) e1 i1");
}

fn arb_elem(n: usize) -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
    let side = (1u32 << n) - 1;
    prop::collection::vec((0..=side, 0..=side, -3i64..=3), 0..5)
}

fn build(c: Config, spec: &[(u32, u32, i64)]) -> CliffordElem {
    CliffordElem::from_terms(c, spec.iter().map(|&(e, i, k)| (WittMonomial::new(e, i), c.scalar(k))))
}

proptest! {
    #[test]
    fn multiplication_is_associative(x in arb_elem(4), y in arb_elem(4), z in arb_elem(4)) {
        let c = cfg(4);
        let (x, y, z) = (build(c, &x), build(c, &y), build(c, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn product_matches_matrix_oracle(x in arb_elem(4), y in arb_elem(4)) {
        let c = cfg(4);
        let (x, y) = (build(c, &x), build(c, &y));
        let lhs = action_matrix(&(&x * &y));
        let rhs = matrix_product(&action_matrix(&x), &action_matrix(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transpose_reverses_products(x in arb_elem(4), y in arb_elem(4)) {
        let c = cfg(4);
        let (x, y) = (build(c, &x), build(c, &y));
        prop_assert_eq!((&x * &y).transpose(), &y.transpose() * &x.transpose());
        prop_assert_eq!(x.transpose().transpose(), x);
    }
}
