use cyclotomic_hecke::central::*;
use cyclotomic_hecke::hecke::{AlgebraSignature, Generator, HElement, Hecke};
use cyclotomic_hecke::scalars::{bar, char_poly_coeffs, parse_scalar, ScalarValue, Var};
use proptest::prelude::*;

fn s(text: &str) -> ScalarValue {
    parse_scalar(text).unwrap()
}

fn shape(parts: &[&[usize]]) -> MultiPartition {
    MultiPartition::new(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn concrete(values: &[(i64, &str)]) -> Gamma {
    let mut g = Gamma::circ();
    for &(a, v) in values {
        g = g.with(a, s(v));
    }
    g
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[test]
fn tableau_counts() {
    for m in 1..=3 {
        for n in 0..=4 {
            let shapes = MultiPartition::all(m, n);
            let mut squares = 0u128;
            for lambda in &shapes {
                let tableaux = MTableau::standard(lambda);
                assert_eq!(tableaux.len() as u128, lambda.dimension(), "{lambda}");
                for t in &tableaux {
                    MTableau::new(lambda.clone(), t.entries.clone()).unwrap();
                }
                squares += lambda.dimension() * lambda.dimension();
            }
            assert_eq!(squares, (m as u128).pow(n as u32) * factorial(n), "m = {m}, n = {n}");
        }
    }
    assert_eq!(MultiPartition::all(2, 2).len(), 5);
    assert_eq!(MultiPartition::all(3, 3).len(), 22);
}

#[test]
fn tableau_validation() {
    let lambda = shape(&[&[2], &[]]);
    let bad = vec![MNode { pos: 1, row: 1, col: 2 }, MNode { pos: 1, row: 1, col: 1 }];
    assert!(MTableau::new(lambda.clone(), bad).is_err());
    assert!(MultiPartition::new(vec![vec![1, 2]]).is_err());
    let t = MTableau::column_reading(&shape(&[&[2, 1], &[1]]));
    assert_eq!(t.to_string(), "(1 3 / 2 | 4)");
    assert_eq!(t.shape().to_string(), "((2,1), (1))");
}

#[test]
fn hooks_of_a_small_shape() {
    let lambda = shape(&[&[2, 1], &[1]]);
    let corner = MNode { pos: 1, row: 1, col: 1 };
    assert_eq!(lambda.hook(&corner, 1), 3);
    // row 1 of the second diagram has length 1, column 1 of the first has length 2
    assert_eq!(lambda.hook(&corner, 2), 2);
    let single = MNode { pos: 2, row: 1, col: 1 };
    assert_eq!(lambda.hook(&single, 2), 1);
    assert_eq!(lambda.hook(&single, 1), 2);
    assert_eq!(MNode { pos: 1, row: 2, col: 1 }.content(), s("v1*q^-2"));
}

#[test]
fn normalizing_factors() {
    assert_eq!(f_lambda(&shape(&[&[1]])).unwrap(), s("1"));
    assert_eq!(f_lambda(&shape(&[&[2]])).unwrap(), s("q/(q + q^-1)"));
    assert_eq!(f_lambda(&shape(&[&[1, 1]])).unwrap(), s("q^-1/(q + q^-1)"));
    assert_eq!(f_lambda(&shape(&[&[1], &[]])).unwrap(), s("1/(v1 - v2)"));
    for m in 1..=3 {
        for n in 1..=4 {
            for lambda in MultiPartition::all(m, n) {
                assert_eq!(f_lambda_products(&lambda), f_lambda_hooks(&lambda), "{lambda}");
            }
        }
    }
}

#[test]
fn bar_of_the_normalizing_factor() {
    for m in 1..=3 {
        for n in 1..=3 {
            let a0 = char_poly_coeffs(m)[0].clone();
            for lambda in MultiPartition::all(m, n) {
                let f = f_lambda(&lambda).unwrap();
                let t = MTableau::column_reading(&lambda);
                let scale = t
                    .contents()
                    .iter()
                    .fold(ScalarValue::one(), |acc, c| &(&acc * &(-&a0)) * &c.powi(m as i32 - 2));
                assert_eq!(bar(&f), &f * &scale, "{lambda}");
            }
        }
    }
}

#[test]
fn small_idempotents() {
    let row = MTableau::standard(&shape(&[&[2]])).remove(0);
    let col = MTableau::standard(&shape(&[&[1, 1]])).remove(0);
    let h = Hecke::finite(1, 2);
    let sym = h.parse_word("G1").unwrap();
    let sym = &sym + &h.scalar(s("q^-1"));
    assert_eq!(fusion_idempotent(&row).unwrap(), sym.scale(&s("1/(q + q^-1)")));
    let anti = &h.scalar(s("q")) - &h.parse_word("G1").unwrap();
    assert_eq!(fusion_idempotent(&col).unwrap(), anti.scale(&s("1/(q + q^-1)")));

    let h = Hecke::finite(2, 1);
    let t = MTableau::standard(&shape(&[&[1], &[]])).remove(0);
    let want = (&h.parse_word("T").unwrap() - &h.scalar(s("v2"))).scale(&s("1/(v1 - v2)"));
    assert_eq!(fusion_idempotent(&t).unwrap(), want);
}

/// `J_1 = τ`, `J_{k+1} = σ_k J_k σ_k`.
fn jucys_murphy(h: &Hecke, k: usize) -> HElement {
    let mut j = h.generator(Generator::Tau).unwrap();
    for i in 1..k {
        let s = h.generator(Generator::Sigma(i)).unwrap();
        j = h.multiply(&h.multiply(&s, &j).unwrap(), &s).unwrap();
    }
    j
}

#[test]
fn idempotents_are_joint_eigenvectors() {
    for (m, n) in [(1, 3), (2, 2), (3, 2)] {
        let h = Hecke::finite(m, n);
        let jm: Vec<HElement> = (1..=n).map(|k| jucys_murphy(&h, k)).collect();
        for lambda in MultiPartition::all(m, n) {
            for t in MTableau::standard(&lambda) {
                let e = fusion_idempotent(&t).unwrap();
                for (k, c) in t.contents().iter().enumerate() {
                    assert_eq!(h.multiply(&jm[k], &e).unwrap(), e.scale(c), "T = {t}, k = {}", k + 1);
                }
            }
        }
    }
}

#[test]
fn baxterized_elements() {
    let h = Hecke::finite(1, 3);
    let (a, b, c) = (s("u1"), s("u2"), s("u3"));
    let x = |i, p: &ScalarValue, r: &ScalarValue| baxterized_sigma(&h, i, p, r).unwrap();
    let lhs = h.multiply(&h.multiply(&x(1, &a, &b), &x(2, &a, &c)).unwrap(), &x(1, &b, &c)).unwrap();
    let rhs = h.multiply(&h.multiply(&x(2, &b, &c), &x(1, &a, &c)).unwrap(), &x(2, &a, &b)).unwrap();
    assert_eq!(lhs, rhs);
    // unitarity: σ(α,β)σ(β,α) is a scalar
    let prod = h.multiply(&x(1, &a, &b), &x(1, &b, &a)).unwrap();
    assert_eq!(prod.len(), 1);
    assert!(baxterized_sigma(&h, 1, &a, &a).is_err());
}

#[test]
fn tau_rho_divides_the_characteristic_polynomial() {
    for m in 1..=4 {
        let h = Hecke::finite(m, 1);
        let rho = ScalarValue::var(Var::Rho);
        let t = tau_rho(&h, &rho).unwrap();
        let factor = &h.scalar(rho.clone()) - &h.generator(Generator::Tau).unwrap();
        let chi = (1..=m).fold(ScalarValue::one(), |acc, j| &acc * &(&rho - &ScalarValue::v(j)));
        assert_eq!(h.multiply(&t, &factor).unwrap(), h.scalar(chi), "m = {m}");
    }
    assert!(tau_rho(&Hecke::affine(1), &s("rho")).is_err());
}

#[test]
fn fusion_suite_small() {
    for (m, n) in [(1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
        for gamma in [Gamma::generic(), Gamma::circ()] {
            let report = verify_fusion(m, n, &gamma);
            assert!(report.passed(), "{report}");
        }
    }
}

#[test]
fn weights_are_values_on_idempotents() {
    // L^γ = Σ w_λ χ_λ and χ_λ(E_T) = 1
    for (m, n) in [(2, 2), (3, 1), (1, 3)] {
        let h = Hecke::finite(m, n);
        let gamma = Gamma::generic();
        for lambda in MultiPartition::all(m, n) {
            let w = weights(&lambda, &gamma).unwrap();
            for t in MTableau::standard(&lambda) {
                let e = fusion_idempotent(&t).unwrap();
                assert_eq!(l_gamma(&h, &e, &gamma).unwrap(), w.w, "T = {t}");
            }
        }
    }
}

#[test]
fn weights_for_one_strand() {
    let w = weights(&shape(&[&[1], &[]]), &Gamma::generic()).unwrap();
    assert_eq!(w.w, s("(gamma1 - v2*gamma0)/(v1 - v2)"));
    let w = weights(&shape(&[&[], &[1]]), &Gamma::circ()).unwrap();
    assert_eq!(w.w, s("-v1/(v2 - v1)"));
    assert_eq!(w.schur, Some(s("(v1 - v2)/v1")));
}

#[test]
fn cancellation_free_schur_elements() {
    for m in 1..=3 {
        for n in 1..=3 {
            for lambda in MultiPartition::all(m, n) {
                let w = weights(&lambda, &Gamma::circ()).unwrap();
                assert_eq!(w.w, cancellation_free_weight(&lambda), "{lambda}");
                assert_eq!(w.schur.unwrap(), cancellation_free_weight(&lambda).inv());
            }
        }
    }
    // H(S_2) with the trace vanishing on σ1: L(E) = q^{±1}/(q + q⁻¹)
    let w = weights(&shape(&[&[1, 1]]), &Gamma::circ()).unwrap();
    assert_eq!(w.schur.unwrap(), s("1 + q^-2"));
    let w = weights(&shape(&[&[2]]), &Gamma::circ()).unwrap();
    assert_eq!(w.schur.unwrap(), s("1 + q^2"));
}

#[test]
fn sum_rule() {
    for m in 1..=3 {
        for n in 1..=3 {
            for gamma in [Gamma::generic(), Gamma::circ(), concrete(&[(0, "2"), (1, "q")])] {
                let total: ScalarValue = MultiPartition::all(m, n)
                    .iter()
                    .map(|l| &weights(l, &gamma).unwrap().w * &ScalarValue::int(l.dimension() as i64))
                    .sum();
                let h = Hecke::finite(m, 1);
                assert_eq!(total, gamma.value(&h, 0).powi(n as i32), "m = {m}, n = {n}");
            }
        }
    }
}

#[test]
fn centrality() {
    for (m, n) in [(1, 3), (2, 2), (3, 2)] {
        let sig = AlgebraSignature::finite(m, n);
        let report = verify_centrality(sig, &Gamma::generic());
        assert!(report.passed(), "{report}");
    }
    let report = verify_centrality(AlgebraSignature::affine(2), &Gamma::generic());
    assert!(report.passed(), "{report}");
}

#[test]
fn inconsistent_level_functionals_break_centrality() {
    let sig = AlgebraSignature::finite(2, 2);
    let h = Hecke::new(sig);
    let g1 = Gamma::generic();
    // proportional functionals give a central form again
    let scaled = Gamma::from_values([(0, s("2*gamma0")), (1, s("2*gamma1"))]);
    let report = verify_centrality_with(sig, &|x| level_form(&h, x, &[g1.clone(), scaled.clone()]));
    assert!(report.passed(), "{report}");
    let skewed = Gamma::from_values([(0, s("gamma0")), (1, s("gamma1 + 1"))]);
    let report = verify_centrality_with(sig, &|x| level_form(&h, x, &[g1.clone(), skewed.clone()]));
    assert_eq!(report.first_failure().unwrap().name, "L(gx) = L(xg)");
    assert!(level_form(&h, &h.identity(), &[g1]).is_err());
}

#[test]
fn alternative_bases() {
    for (m, n) in [(2, 2), (3, 2), (2, 3)] {
        let sig = AlgebraSignature::finite(m, n);
        for gamma in [Gamma::generic(), concrete(&[(1, "v1"), (2, "q")])] {
            let report = verify_bases(sig, &gamma);
            assert!(report.passed(), "{report}");
        }
    }
    let report = verify_bases(AlgebraSignature::affine(2), &Gamma::generic());
    assert!(report.passed(), "{report}");
}

#[test]
fn markov_identification() {
    for (m, n) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        let report = verify_markov_identification(AlgebraSignature::finite(m, n), &Gamma::generic());
        assert!(report.passed(), "{report}");
    }
    let report = verify_markov_identification(AlgebraSignature::affine(2), &Gamma::generic());
    assert!(report.passed(), "{report}");
}

#[test]
fn twisted_form_does_not_vanish_on_the_new_generator() {
    // ι(L^γ)(σ1) = ι⁰(L^γ(σ1⁻¹)) = q − q⁻¹ when γ_0 = 1, so it is the
    // inverse generator on which ι(L^γ) vanishes
    let h = Hecke::finite(2, 2);
    let g = Gamma::circ();
    assert_eq!(iota_l_gamma(&h, &h.parse_word("G1").unwrap(), &g).unwrap(), s("q - q^-1"));
    assert!(iota_l_gamma(&h, &h.parse_word("G1^-1").unwrap(), &g).unwrap().is_zero());
    assert!(l_gamma(&h, &h.parse_word("G1").unwrap(), &g).unwrap().is_zero());
}

#[test]
fn canonical_form_at_q_equal_one() {
    // L^γ° specializes to the coefficient of the identity in the group algebra
    for (m, n) in [(2, 3), (3, 2)] {
        let h = Hecke::finite(m, n);
        let identity = h.specialize(&h.identity(), 1).unwrap();
        for w in h.basis().unwrap() {
            let x = h.basis_element(&w).unwrap();
            let value = l_gamma(&h, &x, &Gamma::circ()).unwrap();
            let image = h.specialize(&x, 1).unwrap();
            assert_eq!(value.is_one(), image == identity, "{w}");
            assert!(value.is_one() || value.is_zero());
        }
    }
}

#[test]
fn nondegeneracy() {
    for (m, n) in [(1, 3), (2, 3), (3, 2)] {
        let r = nondegeneracy_check(m, n, &Gamma::circ()).unwrap();
        assert!(r.nondegenerate && r.witness.is_none());
    }
    let zero = Gamma { values: Default::default(), unset_generic: false };
    let r = nondegeneracy_check(2, 2, &zero).unwrap();
    assert_eq!(r.witness.unwrap().content, s("v1"));

    let r = nondegeneracy_check(2, 2, &concrete(&[(1, "v2")])).unwrap();
    let w = r.witness.unwrap();
    assert_eq!((w.p, w.exponent), (1, 0));

    // solve −a_0/c + γ_1 = 0 at c = v2 q²
    let gamma = concrete(&[(1, "v1*q^-2")]);
    let r = nondegeneracy_check(2, 2, &gamma).unwrap();
    let w = r.witness.unwrap();
    assert_eq!((w.p, w.exponent, w.content.clone()), (2, 2, s("v2*q^2")));
    assert!(criterion(2, &gamma, &w.content).unwrap().is_zero());
    // a node of that content exists only from n = 2 on
    assert!(nondegeneracy_check(2, 1, &gamma).unwrap().nondegenerate);
}

/// Determinant by elimination over the fraction field.
fn determinant(mut a: Vec<Vec<ScalarValue>>) -> ScalarValue {
    let n = a.len();
    let mut det = ScalarValue::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return ScalarValue::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        for r in col + 1..n {
            let f = &a[r][col] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let t = &a[col][c] * &f;
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    det
}

#[test]
fn criterion_matches_the_gram_determinant() {
    let h = Hecke::finite(2, 2);
    let basis: Vec<HElement> = h.basis().unwrap().iter().map(|w| h.basis_element(w).unwrap()).collect();
    let gram = |g: &Gamma| {
        let rows = basis
            .iter()
            .map(|x| basis.iter().map(|y| l_gamma(&h, &h.multiply(x, y).unwrap(), g).unwrap()).collect())
            .collect();
        determinant(rows)
    };
    for gamma in [Gamma::circ(), concrete(&[(1, "v2")]), concrete(&[(1, "v1*q^-2")]), concrete(&[(1, "q")])] {
        let r = nondegeneracy_check(2, 2, &gamma).unwrap();
        assert_eq!(r.nondegenerate, !gram(&gamma).is_zero(), "{gamma:?}");
    }
}

#[test]
fn gamma_values_reduce_through_the_characteristic_polynomial() {
    let h = Hecke::finite(2, 1);
    let g = Gamma::generic();
    assert_eq!(g.value(&h, 2), s("(v1 + v2)*gamma1 - v1*v2*gamma0"));
    assert_eq!(g.value(&h, -1), s("((v1 + v2)*gamma0 - gamma1)/(v1*v2)"));
    let affine = Hecke::affine(1);
    assert_eq!(g.value(&affine, -3), ScalarValue::var(Var::Gamma(-3)));
    assert_eq!(Gamma::circ().value(&h, 1), ScalarValue::zero());
}

fn words() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["T", "T^-1", "G1", "G1^-1", "G2", "G2^-1"]), 0..6)
        .prop_map(|v| if v.is_empty() { "1".to_string() } else { v.join(" ") })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn central_on_products(x in words(), y in words()) {
        let h = Hecke::finite(2, 3);
        let g = Gamma::generic();
        let x = if x == "1" { h.identity() } else { h.parse_word(&x).unwrap() };
        let y = if y == "1" { h.identity() } else { h.parse_word(&y).unwrap() };
        let xy = h.multiply(&x, &y).unwrap();
        let yx = h.multiply(&y, &x).unwrap();
        prop_assert_eq!(l_gamma(&h, &xy, &g).unwrap(), l_gamma(&h, &yx, &g).unwrap());
        prop_assert_eq!(iota_l_gamma(&h, &xy, &g).unwrap(), iota_l_gamma(&h, &yx, &g).unwrap());
    }

    #[test]
    fn varpi_invariance_on_words(x in words()) {
        let h = Hecke::finite(2, 3);
        let g = Gamma::generic();
        let x = if x == "1" { h.identity() } else { h.parse_word(&x).unwrap() };
        prop_assert_eq!(l_gamma(&h, &h.varpi(&x).unwrap(), &g).unwrap(), l_gamma(&h, &x, &g).unwrap());
    }
}
