use cyclotomic_hecke::hecke::{AlgebraSignature, Generator, Hecke};
use cyclotomic_hecke::reps::*;
use cyclotomic_hecke::scalars::{parse_scalar, ScalarValue};

fn s(text: &str) -> ScalarValue {
    parse_scalar(text).unwrap()
}

fn m(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| s(x)).collect())
            .collect(),
    )
}

#[test]
fn first_inductions() {
    // H(m,1,1) acting on E_m: τ is the companion matrix of χ
    let e2 = induce(&Representation::trivial(2)).unwrap();
    assert_eq!(e2.tau, m(&[&["0", "-v1*v2"], &["1", "v1 + v2"]]));
    let r = regular_rep(AlgebraSignature::finite(1, 2)).unwrap();
    assert_eq!(r.sigmas[0], m(&[&["q - q^-1", "1"], &["1", "0"]]));
    assert_eq!(r.dim(), 2);
}

#[test]
fn regular_modules_satisfy_relations() {
    for (mm, n) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        let rep = regular_rep(AlgebraSignature::finite(mm, n)).unwrap();
        assert_eq!(
            rep.dim() as u128,
            AlgebraSignature::finite(mm, n).dimension().unwrap()
        );
        let report = check_relations(&rep);
        assert!(report.passed(), "{report}");
    }
}

#[test]
fn regular_module_is_left_multiplication() {
    for (mm, n) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let sig = AlgebraSignature::finite(mm, n);
        assert_eq!(
            regular_rep(sig).unwrap(),
            left_regular_matrices(&Hecke::new(sig)).unwrap()
        );
    }
}

#[test]
fn tau_trace_counts_diagonal_coefficients() {
    let h = Hecke::finite(2, 2);
    let rep = regular_rep(h.signature()).unwrap();
    let mut expected = ScalarValue::zero();
    for w in h.basis().unwrap() {
        let img = h
            .left_mul_generator(Generator::Tau, &h.basis_element(&w).unwrap())
            .unwrap();
        expected = &expected + &img.coeff(&w);
    }
    assert_eq!(rep.tau.trace(), expected);
}

#[test]
fn burau_modules() {
    for (mm, n, e) in [(1, 3, 1), (2, 3, 1), (2, 3, 2), (3, 2, 3)] {
        let rep = burau(AlgebraSignature::finite(mm, n), e).unwrap();
        assert_eq!(rep.dim(), n * mm);
        assert!(check_relations(&rep).passed());
        // off the first block row the τ-matrix is v_e on the diagonal
        for r in mm..rep.dim() {
            for c in 0..rep.dim() {
                let want = if r == c {
                    ScalarValue::v(e)
                } else {
                    ScalarValue::zero()
                };
                assert_eq!(rep.tau.get(r, c), &want);
            }
        }
    }
    // m = 1: the classical Burau matrices
    let b = burau(AlgebraSignature::finite(1, 2), 1).unwrap();
    assert_eq!(b.sigmas[0], m(&[&["q - q^-1", "1"], &["1", "0"]]));
    assert!(burau(AlgebraSignature::finite(2, 3), 3).is_err());
    assert!(burau(AlgebraSignature::finite(2, 3), 0).is_err());
    let b = burau(AlgebraSignature::finite(1, 3), 1).unwrap();
    assert_eq!(
        b.sigmas[1],
        m(&[&["q", "0", "0"], &["0", "q - q^-1", "1"], &["0", "1", "0"]])
    );
}

#[test]
fn corrupted_matrix_breaks_braid_relation() {
    let mut rep = regular_rep(AlgebraSignature::finite(1, 3)).unwrap();
    let (r, c) = (0..6)
        .flat_map(|r| (0..6).map(move |c| (r, c)))
        .find(|&(r, c)| r != c && !rep.sigmas[0].get(r, c).is_zero())
        .unwrap();
    let doubled = rep.sigmas[0].get(r, c) * &ScalarValue::int(2);
    rep.sigmas[0].set(r, c, doubled);
    let report = check_relations(&rep);
    let fail = report.first_failure().expect("a failure");
    assert!(fail.name.starts_with("braid"), "{fail:?}");
}

#[test]
fn induction_commutes_with_direct_sums() {
    for (mm, n) in [(1, 2), (2, 2), (2, 3)] {
        let a = regular_rep(AlgebraSignature::finite(mm, n - 1)).unwrap();
        let b = Representation::one_dimensional(mm, n - 1, mm).unwrap();
        let lhs = induce(&a.direct_sum(&b)).unwrap();
        let ia = induce(&a).unwrap();
        let ib = induce(&b).unwrap();
        let rhs = ia.direct_sum(&ib);
        // (j, e, u ⊕ u') interleaves the two blocks
        let (da, db) = (a.dim(), b.dim());
        let mut perm = vec![0; lhs.dim()];
        for je in 0..n * mm {
            for u in 0..da + db {
                let src = je * (da + db) + u;
                perm[src] = if u < da {
                    je * da + u
                } else {
                    ia.dim() + je * db + (u - da)
                };
            }
        }
        assert_eq!(lhs.tau.permute(&perm), rhs.tau);
        for (x, y) in lhs.sigmas.iter().zip(&rhs.sigmas) {
            assert_eq!(x.permute(&perm), *y);
        }
    }
}

#[test]
fn sigma_action_ignores_the_polynomial_factor() {
    // restricted to the σ's, V ⊗ E_m ⊗ M is m copies of V ⊗ M
    let base = regular_rep(AlgebraSignature::finite(2, 2)).unwrap();
    let rep = induce(&base).unwrap();
    let (mm, n, d) = (2, 3, base.dim());
    for f in &rep.sigmas {
        for e in 0..mm {
            for e2 in 0..mm {
                for j in 0..n {
                    for j2 in 0..n {
                        for u in 0..d {
                            for u2 in 0..d {
                                let x = f.get((j * mm + e) * d + u, (j2 * mm + e2) * d + u2);
                                if e != e2 {
                                    assert!(x.is_zero());
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn tau_is_invertible() {
    for (mm, n) in [(1, 2), (2, 2), (3, 1), (2, 1)] {
        let rep = regular_rep(AlgebraSignature::finite(mm, n)).unwrap();
        let det = rep.tau.det();
        assert!(
            det.num().is_monomial() && det.den().is_monomial(),
            "det = {det}"
        );
        let inv = rep.generator(Generator::TauInv);
        assert_eq!(&inv * &rep.tau, Matrix::identity(rep.dim()));
    }
}
