use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::cartan_ops::l2_matrix_entry;
use crate::clifford::CliffordElem;
use crate::fock::{FockIndex, Parity, SpinorVec};
use crate::norms::solve_spinor_norm;
use crate::parallel::Execution;

fn q() -> BuildOptions {
    BuildOptions::default()
}

fn fp7() -> BuildOptions {
    BuildOptions::over(Field::prime(7).unwrap())
}

/// The grade-two part of a coordinate vector as a Clifford element.
fn grade_two_elem(alg: &LieAlgebra, x: &Coords) -> CliffordElem {
    let cfg = alg.config();
    let mut out = CliffordElem::zero(cfg);
    for (k, c) in x {
        if let BasisLabel::GradeTwo(g) = alg.label(*k) {
            out.add_scaled(&g.element(cfg), c);
        }
    }
    out
}

/// Eigenvalue of `ad(b_h)` on `b_k`, when `b_k` is an eigenvector.
fn ad_eigen(alg: &LieAlgebra, h: u32, k: u32) -> Option<Scalar> {
    match alg.bracket(h, k).as_slice() {
        [] => Some(alg.config().zero()),
        [(m, c)] if *m == k => Some(c.clone()),
        _ => None,
    }
}

#[test]
fn dimensions_and_label_counts() {
    for (name, c2, extra, spin) in
        [(AlgebraName::E8, 120, 0, 128), (AlgebraName::E7, 66, 3, 64), (AlgebraName::E6, 45, 1, 32)]
    {
        let alg = build(name, &q()).unwrap();
        assert_eq!(alg.dim(), name.dim());
        let count = |f: fn(&BasisLabel) -> bool| alg.basis().iter().filter(|l| f(l)).count();
        assert_eq!(count(|l| matches!(l, BasisLabel::GradeTwo(_))), c2);
        assert_eq!(count(|l| matches!(l, BasisLabel::Sl2(_) | BasisLabel::TopGrade)), extra);
        assert_eq!(count(|l| l.is_spinor()), spin);
        assert!(alg.antisymmetry().passed(), "{name}: {:?}", alg.antisymmetry());
    }
}

#[test]
fn grade_two_basis_is_grade_two() {
    for n in 1..=5 {
        let cfg = crate::Config::rational(n).unwrap();
        let labels = GradeTwo::all(n);
        assert_eq!(labels.len(), n * (2 * n - 1));
        for g in labels {
            assert_eq!(crate::clifford::grade_support(&g.element(cfg)), vec![2], "{g}");
        }
    }
}

#[test]
fn e8_examples() {
    let alg = build_e8(&q()).unwrap();
    let cfg = alg.config();
    let b = solve_spinor_norm(cfg).unwrap();
    let v = alg.index_of(BasisLabel::HalfSpinor(FockIndex(0))).unwrap();
    let v12 = alg.index_of(BasisLabel::HalfSpinor(FockIndex::from_elements(&[1, 2]))).unwrap();
    assert!(alg.bracket(v, v12).is_empty());

    // [e_I·v, e_{Iᶜ}·v], |I| = 2: a diagonal element acting as the case-(d) entries
    for i in [FockIndex::from_elements(&[1, 2]), FockIndex::from_elements(&[3, 7])] {
        let ic = i.complement(8);
        let x = alg.bracket(
            alg.index_of(BasisLabel::HalfSpinor(i)).unwrap(),
            alg.index_of(BasisLabel::HalfSpinor(ic)).unwrap(),
        );
        assert!(!x.is_empty());
        assert!(x.iter().all(|(k, _)| matches!(alg.label(*k), BasisLabel::GradeTwo(GradeTwo::Diag(_)))));
        let elem = grade_two_elem(&alg, &x);
        for k in cfg.fock_basis() {
            let got = elem.act(&SpinorVec::basis(cfg, k)).unwrap();
            assert_eq!(got, l2_matrix_entry(&b, i, ic, k).unwrap(), "I={i} K={k}");
        }
    }
}

#[test]
fn brackets_with_grade_two_are_the_action() {
    for name in AlgebraName::ALL {
        let alg = build(name, &q()).unwrap();
        let cfg = alg.config();
        for a in (0..alg.dim() as u32).filter(|&a| matches!(alg.label(a), BasisLabel::GradeTwo(_))).step_by(7) {
            let BasisLabel::GradeTwo(g) = alg.label(a) else { unreachable!() };
            for s in (0..alg.dim() as u32).filter(|&s| alg.label(s).is_spinor()).step_by(5) {
                let (idx, slot) = match alg.label(s) {
                    BasisLabel::HalfSpinor(i) => (i, None),
                    BasisLabel::SpinorTensor(i, t) => (i, Some(t)),
                    _ => unreachable!(),
                };
                let image = g.element(cfg).act(&SpinorVec::basis(cfg, idx)).unwrap();
                let expected: Coords = image
                    .terms()
                    .map(|(k, c)| {
                        let label = match slot {
                            None => BasisLabel::HalfSpinor(k),
                            Some(t) => BasisLabel::SpinorTensor(k, t),
                        };
                        (alg.index_of(label).unwrap(), c.clone())
                    })
                    .collect::<BTreeMap<_, _>>()
                    .into_iter()
                    .collect();
                assert_eq!(alg.bracket(a, s), expected);
            }
        }
    }
}

#[test]
fn jacobi_over_q_and_f7() {
    for name in [AlgebraName::E6, AlgebraName::E7] {
        for opts in [q(), fp7()] {
            let alg = build(name, &opts).unwrap();
            let r = verify_jacobi(&alg, Execution::Parallel);
            assert!(r.passed(), "{name} over {}: {r:?}", opts.field);
        }
    }
    let e8 = build_e8(&q()).unwrap();
    let r = verify_jacobi(&e8, Execution::Parallel);
    assert_eq!(r.triples, 248 * 247 * 246 / 6);
    assert!(r.passed());
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let mut alg = build_e6(&q()).unwrap();
    let (i, j, k) = alg.nonzero_constants()[40];
    alg.flip_sign(i, j, k).unwrap();
    let seq = verify_jacobi(&alg, Execution::Sequential);
    assert_eq!(seq, verify_jacobi(&alg, Execution::Parallel));
    assert!(!seq.passed());
    let ks = killing_form(&alg, Execution::Sequential);
    let kp = killing_form(&alg, Execution::Parallel);
    assert_eq!(ks.rows, kp.rows);
}

#[test]
fn e8_on_the_other_half_spinor() {
    let opts = BuildOptions { e8_half: Parity::Odd, ..q() };
    let alg = build_e8(&opts).unwrap();
    assert_eq!(alg.dim(), 248);
    assert!(alg.antisymmetry().passed());
    assert!(verify_jacobi(&alg, Execution::Parallel).passed());
    assert_eq!(spanning_check(&alg).rank, 120);
    assert_eq!(root_decomposition(&alg).unwrap().dynkin, "E8");
}

#[test]
fn mutations_are_detected_locally_and_globally() {
    let alg = build_e7(&q()).unwrap();
    let constants = alg.nonzero_constants();
    for pick in [0, constants.len() / 3, constants.len() - 1] {
        let (i, j, k) = constants[pick];
        let mut bad = alg.clone();
        bad.flip_sign(i, j, k).unwrap();
        let local = verify_jacobi_touching(&bad, &[i, j], Execution::Parallel);
        let global = verify_jacobi(&bad, Execution::Parallel);
        assert!(local.violations > 0);
        assert_eq!(local.violations, global.violations);
    }
    let mut bad = alg.clone();
    assert!(bad.flip_sign(0, 0, 0).is_err());
}

#[test]
fn spanning_ranks() {
    for name in AlgebraName::ALL {
        let alg = build(name, &q()).unwrap();
        let s = spanning_check(&alg);
        assert!(s.passed(), "{name}: {s:?}");
    }
}

#[test]
fn killing_form_is_nondegenerate_symmetric_invariant() {
    for name in [AlgebraName::E6, AlgebraName::E7] {
        let alg = build(name, &q()).unwrap();
        let k = killing_form(&alg, Execution::Parallel);
        assert!(k.nondegenerate(), "{name}");
        assert!(k.is_symmetric());
        let zero = alg.config().zero();
        let kappa = |x: &Coords, z: u32| {
            x.iter().fold(zero.clone(), |acc, (i, c)| &acc + &(c * k.value(*i as usize, z as usize).unwrap_or(&zero)))
        };
        let d = alg.dim() as u32;
        for x in (0..d).step_by(5) {
            for y in (0..d).step_by(7) {
                for z in (0..d).step_by(11) {
                    let lhs = kappa(&alg.bracket(x, y), z);
                    let rhs = kappa(&alg.bracket(z, y), x);
                    // κ([x,y],z) = κ(x,[y,z]) = −κ([z,y],x)
                    assert_eq!(lhs, -rhs);
                }
            }
        }
    }
}

#[test]
fn e6_grading_by_epsilon() {
    let alg = build_e6(&q()).unwrap();
    let eps = alg.index_of(BasisLabel::TopGrade).unwrap();
    let mut dims = BTreeMap::new();
    for k in 0..alg.dim() as u32 {
        let ev = ad_eigen(&alg, eps, k).expect("ε is diagonal on the basis");
        *dims.entry(ev.to_i64().unwrap()).or_insert(0) += 1;
        if let BasisLabel::GradeTwo(_) = alg.label(k) {
            assert!(alg.bracket(eps, k).is_empty());
        }
    }
    assert_eq!(dims, BTreeMap::from([(-1, 16), (0, 46), (1, 16)]));
}

#[test]
fn e7_grading_by_sl2_h() {
    let alg = build_e7(&q()).unwrap();
    let h = alg.index_of(BasisLabel::Sl2(Sl2::H)).unwrap();
    let mut dims = BTreeMap::new();
    for k in 0..alg.dim() as u32 {
        let ev = ad_eigen(&alg, h, k).expect("h is diagonal on the basis");
        *dims.entry(ev.to_i64().unwrap()).or_insert(0) += 1;
    }
    assert_eq!(dims, BTreeMap::from([(-2, 1), (-1, 32), (0, 67), (1, 32), (2, 1)]));
    assert_eq!(dims[&-2] + dims[&0] + dims[&2], 69);
}

#[test]
fn e7_constants_and_spinor_identity() {
    for opts in [q(), fp7()] {
        let alg = build_e7(&opts).unwrap();
        let c = alg.constants();
        assert_eq!(c[0].0, "c1");
        assert!(c[0].1.is_one());
        assert!(c[1].1.is_one(), "c2 = {}", c[1].1);
        let (triples, bad) = e7_identity_violations(opts.field).unwrap();
        assert_eq!((triples, bad), (32 * 32 * 32, 0));
    }
}

#[test]
fn rescaled_norm_changes_constants_not_verdicts() {
    let opts = BuildOptions { norm_scale: (2, 1), ..q() };
    for name in AlgebraName::ALL {
        let base = build(name, &q()).unwrap();
        let scaled = build(name, &opts).unwrap();
        assert!(verify_jacobi(&scaled, Execution::Parallel).passed(), "{name}");
        assert_eq!(spanning_check(&scaled).rank, name.degree_zero_dim());
        assert_eq!(root_decomposition(&scaled).unwrap().dynkin, root_decomposition(&base).unwrap().dynkin);
        let differs = base.stored().zip(scaled.stored()).any(|(a, b)| a != b);
        assert!(differs, "{name}: spinor-spinor constants should rescale");
    }
    // L̃₂ and B both scale by λ, so c₂/c₁ is unchanged
    assert!(build_e7(&opts).unwrap().constants()[1].1.is_one());
}

#[test]
fn root_data() {
    for name in AlgebraName::ALL {
        let alg = build(name, &q()).unwrap();
        let r = root_decomposition(&alg).unwrap();
        assert_eq!(r.rank(), name.rank());
        assert_eq!(r.root_count(), name.root_count());
        assert_eq!(r.root_count() + r.rank(), alg.dim());
        assert_eq!(r.dynkin, format!("E{}", name.rank()));
        assert!(r.equal_lengths);
        for row in &r.cartan_matrix {
            assert_eq!(row.iter().filter(|&&x| x == 2).count(), 1);
        }
    }
    assert_eq!(root_decomposition(&build_e6(&fp7()).unwrap()).unwrap_err(), Error::RequiresRational);
}

#[test]
fn dynkin_classification() {
    let path = |r: usize| -> Vec<Vec<i64>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    };
    assert_eq!(classify_cartan_matrix(&path(1)), "A1");
    assert_eq!(classify_cartan_matrix(&path(4)), "A4");
    let mut b3 = path(3);
    b3[1][2] = -2;
    assert_eq!(classify_cartan_matrix(&b3), "B3");
    let mut c3 = path(3);
    c3[2][1] = -2;
    assert_eq!(classify_cartan_matrix(&c3), "C3");
    let mut f4 = path(4);
    f4[1][2] = -2;
    assert_eq!(classify_cartan_matrix(&f4), "F4");
    assert_eq!(classify_cartan_matrix(&[vec![2, -1], vec![-3, 2]]), "G2");
    assert_eq!(classify_cartan_matrix(&[vec![2, 0], vec![0, 2]]), "A1+A1");
    // star with arms (1,1,1) is D4; arms (1,2,2) is E6
    let star = |arms: &[usize]| {
        let r = 1 + arms.iter().sum::<usize>();
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut next = 1;
        for &len in arms {
            let mut prev = 0;
            for _ in 0..len {
                a[prev][next] = -1;
                a[next][prev] = -1;
                prev = next;
                next += 1;
            }
        }
        a
    };
    assert_eq!(classify_cartan_matrix(&star(&[1, 1, 1])), "D4");
    assert_eq!(classify_cartan_matrix(&star(&[1, 1, 3])), "D6");
    assert_eq!(classify_cartan_matrix(&star(&[1, 2, 2])), "E6");
    assert_eq!(classify_cartan_matrix(&star(&[1, 2, 3])), "E7");
    assert_eq!(classify_cartan_matrix(&star(&[1, 2, 4])), "E8");
    assert_eq!(classify_cartan_matrix(&star(&[2, 2, 2])), "unknown7");
}

#[test]
fn e6_coefficient_ratios() {
    let sweep =
        e6_coefficient_sweep(Field::Rational, &[(2, 96), (1, 48), (2, 0), (2, -96), (2, 48)], Execution::Parallel)
            .unwrap();
    let ok: Vec<(i64, i64)> = sweep.iter().filter(|(_, r)| r.passed()).map(|(ab, _)| *ab).collect();
    assert_eq!(ok, vec![(2, 96), (1, 48)]);
}

#[test]
fn export_schema_and_determinism() {
    let alg = build_e6(&q()).unwrap();
    let text = to_json(&alg);
    assert_eq!(text, to_json(&build_e6(&q()).unwrap()));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["name"], "e6");
    assert_eq!(v["field"], "q");
    assert_eq!(v["dim"], 78);
    assert_eq!(v["basis"].as_array().unwrap().len(), 78);
    let brackets = v["brackets"].as_array().unwrap();
    let mut last = (-1i64, -1i64);
    for b in brackets {
        let (i, j) = (b["i"].as_i64().unwrap(), b["j"].as_i64().unwrap());
        assert!(i < j && (i, j) > last);
        last = (i, j);
        let terms = b["terms"].as_array().unwrap();
        assert!(!terms.is_empty());
        for t in terms {
            let s: Scalar = t[1].as_str().unwrap().parse().unwrap();
            assert_eq!(alg.structure_constant(i as u32, j as u32, t[0].as_u64().unwrap() as u32), s);
        }
    }
}

#[test]
fn exports_match_checked_in_golden_files() {
    for name in AlgebraName::ALL {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.json"));
        let golden = std::fs::read_to_string(path).unwrap();
        assert!(to_json(&build(name, &q()).unwrap()) == golden, "{name} export differs from its golden file");
    }
}

fn e6() -> &'static LieAlgebra {
    static CELL: std::sync::OnceLock<LieAlgebra> = std::sync::OnceLock::new();
    CELL.get_or_init(|| build_e6(&BuildOptions::default()).unwrap())
}

fn coords_strategy() -> impl Strategy<Value = Coords> {
    prop::collection::btree_map(0u32..78, -3i64..=3, 1..4)
        .prop_map(|m| m.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, Field::Rational.from_i64(c))).collect())
}

fn add(a: Coords, b: Coords) -> Coords {
    let mut acc = BTreeMap::new();
    for (k, c) in a.into_iter().chain(b) {
        accumulate(&mut acc, k, &c);
    }
    finish(acc)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_on_combinations(x in coords_strategy(), y in coords_strategy()) {
        let alg = e6();
        let xy = alg.bracket_coords(&x, &y);
        let yx: Coords = alg.bracket_coords(&y, &x).into_iter().map(|(k, c)| (k, -c)).collect();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn jacobi_on_combinations(x in coords_strategy(), y in coords_strategy(), z in coords_strategy()) {
        let alg = e6();
        let a = alg.bracket_coords(&alg.bracket_coords(&x, &y), &z);
        let b = alg.bracket_coords(&alg.bracket_coords(&y, &z), &x);
        let c = alg.bracket_coords(&alg.bracket_coords(&z, &x), &y);
        prop_assert!(add(add(a, b), c).is_empty());
    }

    #[test]
    fn jacobi_at_matches_sweep_kernel(i in 0u32..78, j in 0u32..78, k in 0u32..78) {
        prop_assert!(jacobi_at(e6(), i, j, k).is_empty());
    }
}
