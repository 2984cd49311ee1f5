use cyclotomic_hecke::hecke::{AlgebraSignature, BasisWord, HElement, Hecke, HeckeError};
use cyclotomic_hecke::scalars::{char_poly_coeffs, parse_scalar, ScalarValue, Var};
use cyclotomic_hecke::traces::*;
use proptest::prelude::*;

fn s(text: &str) -> ScalarValue {
    parse_scalar(text).unwrap()
}

fn word(layers: &[(usize, i64)]) -> BasisWord {
    BasisWord { layers: layers.to_vec() }
}

#[test]
fn values_on_small_words() {
    let p = TraceParams::generic();
    let h = Hecke::finite(2, 2);
    let tr = |x: &HElement| relative_trace(&h, x, &p).unwrap();
    let lower = h.lower();
    assert_eq!(tr(&h.parse_word("G1").unwrap()), lower.scalar(s("D")));
    assert_eq!(tr(&h.parse_word("G1^-1").unwrap()), lower.scalar(s("D - q + q^-1")));
    assert_eq!(tr(&h.identity()), lower.identity());
    for a in 0..2 {
        let x = h.basis_element(&word(&[(1, a), (0, 0)])).unwrap();
        let mu = if a == 0 { s("1") } else { s("mu1") };
        assert_eq!(tr(&x), lower.scalar(mu));
    }
    // j < k−1 keeps the layer one level down
    let x = h.basis_element(&word(&[(0, 1), (0, 1)])).unwrap();
    let want = lower.parse_word("T T").unwrap().scale(&s("D"));
    assert_eq!(tr(&x), want);
}

#[test]
fn errors() {
    let p = TraceParams::generic();
    let h0 = Hecke::finite(2, 0);
    assert!(matches!(relative_trace(&h0, &h0.identity(), &p), Err(HeckeError::Shape(_))));
    let h = Hecke::finite(2, 2);
    let other = Hecke::finite(2, 3).identity();
    assert!(matches!(relative_trace(&h, &other, &p), Err(HeckeError::Mismatch(..))));
}

#[test]
fn relative_trace_axioms() {
    let p = TraceParams::generic();
    for (m, k) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let report = verify_trace_axioms(AlgebraSignature::finite(m, k), &p);
        assert!(report.passed(), "{report}");
    }
    let report = verify_trace_axioms(AlgebraSignature::affine(2), &p);
    assert!(report.passed(), "{report}");
}

#[test]
fn two_level_identity_with_hand_reduced_mu() {
    // m = 2: τ² = (v1+v2)τ − v1v2, so μ_2 = (v1+v2)μ_1 − v1v2
    let h = Hecke::finite(2, 2);
    let x = h.parse_word("G1^-1 T G1 T G1").unwrap();
    let value = markov_trace(&h, &x, &TraceParams::generic()).unwrap();
    assert_eq!(value, s("D*((v1 + v2)*mu1 - v1*v2)"));
}

/// Adds `1` to the image of one basis word of `H(m,1,2)`.
struct Perturbed(TraceParams, BasisWord);

impl RelativeTrace for Perturbed {
    fn relative(&self, h: &Hecke, x: &HElement) -> Result<HElement, HeckeError> {
        let base = relative_trace(h, x, &self.0)?;
        if h.n() != 2 {
            return Ok(base);
        }
        Ok(&base + &h.lower().scalar(x.coeff(&self.1)))
    }
}

fn failing_anchors(p: &TraceParams, w: BasisWord) -> Vec<String> {
    let report = verify_trace_axioms_for(AlgebraSignature::finite(2, 2), p, &Perturbed(p.clone(), w));
    report.failures().map(|c| c.anchor.clone()).collect()
}

#[test]
fn perturbed_trace_is_caught() {
    let p = TraceParams::generic();
    // Tr_2(σ1) = D + 1
    let failing = failing_anchors(&p, word(&[(0, 0), (0, 0)]));
    assert!(failing.contains(&"value on the new generator".to_string()), "{failing:?}");
    assert!(failing.contains(&"bimodule property over the subalgebra".to_string()), "{failing:?}");
    // Tr_2(σ1⁻¹τσ1) = μ1 + 1
    let failing = failing_anchors(&p, word(&[(1, 1), (0, 0)]));
    assert!(failing.contains(&"conjugation by the new generator drops one level".to_string()), "{failing:?}");
}

#[test]
fn axioms_determine_the_trace() {
    // Tr_2 on t_{j,a}τ^b from the axioms alone:
    //   j = 1: σ1⁻¹τ^aσ1 · τ^b ↦ Tr_1(τ^a) τ^b = μ_a τ^b
    //   j = 0: τ^a σ1 τ^b ↦ τ^a D τ^b
    let p = TraceParams::generic();
    let h = Hecke::finite(2, 2);
    let lower = h.lower();
    for j in 0..2 {
        for a in 0..2 {
            for b in 0..2 {
                let x = h.basis_element(&word(&[(j, a), (0, b)])).unwrap();
                let tb = lower.basis_element(&word(&[(0, b)])).unwrap();
                let want = if j == 1 {
                    tb.scale(&p.mu(&h, a))
                } else {
                    let ta = lower.basis_element(&word(&[(0, a)])).unwrap();
                    lower.multiply(&ta, &tb).unwrap().scale(&p.d)
                };
                assert_eq!(relative_trace(&h, &x, &p).unwrap(), want);
            }
        }
    }
}

#[test]
fn markov_properties() {
    let p = TraceParams::generic();
    for (m, n) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let report = verify_markov_properties(AlgebraSignature::finite(m, n), &p, 10_000, 7);
        assert!(report.passed(), "{report}");
    }
    let report = verify_markov_properties(AlgebraSignature::finite(3, 2), &p, 400, 11);
    assert!(report.passed(), "{report}");
}

#[test]
fn markov_examples() {
    let p = TraceParams::generic();
    let h = Hecke::finite(2, 3);
    assert!(markov_trace(&h, &h.identity(), &p).unwrap().is_one());
    let x = h.parse_word("G2 G1 T G1^-1 G2^-1").unwrap();
    assert_eq!(markov_trace(&h, &x, &p).unwrap(), s("mu1"));
    let x = h.parse_word("G2 T G1").unwrap();
    assert_eq!(markov_trace(&h, &x, &p).unwrap(), s("D^2*mu1"));
}

#[test]
fn ocneanu_values_for_m_one() {
    // σ² = (q−q⁻¹)σ + 1 gives Tr(σ1²) = (q−q⁻¹)D + 1
    let p = TraceParams::generic();
    let h = Hecke::finite(1, 2);
    let x = h.parse_word("G1 G1").unwrap();
    assert_eq!(markov_trace(&h, &x, &p).unwrap(), s("(q - q^-1)*D + 1"));
    let h3 = Hecke::finite(1, 3);
    let x = h3.parse_word("G1 G2 G1").unwrap();
    // σ1σ2σ1 = σ2σ1σ2: Tr = D·Tr(σ1²)
    assert_eq!(markov_trace(&h3, &x, &p).unwrap(), s("D*((q - q^-1)*D + 1)"));
}

#[test]
fn concrete_parameters() {
    let p = TraceParams::new(s("2"), [(1, s("q"))]);
    let h = Hecke::finite(2, 2);
    let x = h.parse_word("G1 T G1^-1").unwrap();
    assert_eq!(markov_trace(&h, &x, &p).unwrap(), s("q"));
    assert!(verify_trace_axioms(h.signature(), &p).passed());
}

#[test]
fn conditional_expectation() {
    let p = TraceParams::generic();
    for (m, k) in [(1, 2), (2, 2), (2, 3)] {
        let report = conditional_expectation_check(AlgebraSignature::finite(m, k), &p);
        assert!(report.passed(), "{report}");
    }
    let h = Hecke::finite(2, 2);
    let z = h.parse_word("G1").unwrap();
    let t = relative_trace(&h, &z, &p).unwrap();
    assert_eq!(markov_trace(&h, &z, &p).unwrap(), s("D"));
    assert_eq!(markov_trace(&h.lower(), &t, &p).unwrap(), s("D"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// χ(τ)τ^a = 0, so the derived μ satisfy the same linear recurrence.
    #[test]
    fn derived_mu_follow_the_characteristic_recurrence(m in 1usize..4, a in -6i64..6) {
        let p = TraceParams::generic();
        let h = Hecke::finite(m, 1);
        let chi = char_poly_coeffs(m);
        let mut acc = p.mu(&h, a + m as i64);
        for (i, c) in chi.iter().enumerate() {
            acc = &acc + &(c * &p.mu(&h, a + i as i64));
        }
        prop_assert!(acc.is_zero());
        let x = h.from_word(&cyclotomic_hecke::hecke::GeneratorWord(
            std::iter::repeat_n(if a >= 0 { cyclotomic_hecke::hecke::Generator::Tau } else { cyclotomic_hecke::hecke::Generator::TauInv }, a.unsigned_abs() as usize).collect(),
        )).unwrap();
        prop_assert_eq!(relative_trace(&h, &x, &p).unwrap(), h.lower().scalar(p.mu(&h, a)));
    }

    #[test]
    fn trace_is_linear(c1 in -3i64..4, c2 in -3i64..4, i in 0usize..8, j in 0usize..8) {
        let p = TraceParams::generic();
        let h = Hecke::finite(2, 2);
        let basis = h.basis().unwrap();
        let x = h.basis_element(&basis[i]).unwrap();
        let y = h.basis_element(&basis[j]).unwrap();
        let combo = &x.scale(&ScalarValue::int(c1)) + &y.scale(&ScalarValue::int(c2));
        let lhs = markov_trace(&h, &combo, &p).unwrap();
        let rhs = &(&ScalarValue::int(c1) * &markov_trace(&h, &x, &p).unwrap())
            + &(&ScalarValue::int(c2) * &markov_trace(&h, &y, &p).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn generic_slots_are_the_named_variables() {
    let p = TraceParams::generic();
    assert_eq!(p.d, ScalarValue::var(Var::D));
    assert_eq!(p.mu(&Hecke::finite(3, 1), 2), ScalarValue::var(Var::Mu(2)));
    assert!(p.mu(&Hecke::finite(3, 1), 0).is_one());
}
