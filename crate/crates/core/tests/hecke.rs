use std::collections::BTreeMap;

use cyclotomic_hecke::group::{GroupElement, GroupSignature, NestedNormalForm};
use cyclotomic_hecke::hecke::*;
use cyclotomic_hecke::scalars::{parse_scalar, Cyclotomic, ScalarValue, Var};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(text: &str) -> ScalarValue {
    parse_scalar(text).unwrap()
}

fn word(h: &Hecke, text: &str) -> HElement {
    h.parse_word(text).unwrap()
}

fn bw(layers: &[(usize, i64)]) -> BasisWord {
    BasisWord {
        layers: layers.to_vec(),
    }
}

fn assert_word_eq(h: &Hecke, lhs: &str, rhs: &str) {
    assert_eq!(
        word(h, lhs),
        word(h, rhs),
        "{lhs} = {rhs} in {}",
        h.signature()
    );
}

fn random_element(h: &Hecke, rng: &mut ChaCha8Rng, terms: usize) -> HElement {
    let basis = h.basis_window(1);
    let coeffs = ["1", "-1", "2", "q", "q^-1", "v1", "1/2", "q - v2"];
    let pairs = (0..terms).map(|_| {
        let w = basis[rng.gen_range(0..basis.len())].clone();
        let mut c = coeffs[rng.gen_range(0..coeffs.len())];
        if h.m() == Some(1) && c.contains("v2") {
            c = "q";
        }
        (w, s(c))
    });
    HElement::from_terms(h.signature(), pairs.collect::<Vec<_>>()).unwrap()
}

fn generators(n: usize, affine: bool) -> Vec<Generator> {
    let mut g = vec![Generator::Tau];
    if affine {
        g.push(Generator::TauInv);
    }
    g.extend((1..n).map(Generator::Sigma));
    g.extend((1..n).map(Generator::SigmaInv));
    g
}

#[test]
fn basis_counts() {
    assert_eq!(
        Hecke::finite(1, 2).basis().unwrap(),
        vec![bw(&[(0, 0), (0, 0)]), bw(&[(1, 0), (0, 0)])]
    );
    assert_eq!(Hecke::finite(2, 2).basis().unwrap().len(), 8);
    assert_eq!(Hecke::finite(2, 3).basis().unwrap().len(), 48);
    assert!(Hecke::affine(2).basis().is_err());
    assert_eq!(Hecke::affine(2).basis_window(1).len(), 2 * 3 * 3);
}

#[test]
fn word_grammar() {
    let w: GeneratorWord = "T^-1 G1 G2^-1 * T^2".parse().unwrap();
    assert_eq!(
        w.letters(),
        &[
            Generator::TauInv,
            Generator::Sigma(1),
            Generator::SigmaInv(2),
            Generator::Tau,
            Generator::Tau
        ]
    );
    assert_eq!(w.to_string(), "T^-1 G1 G2^-1 T T");
    assert!("G1 X".parse::<GeneratorWord>().is_err());
    assert!(Hecke::finite(1, 2).parse_word("G9").is_err());
    assert!(Hecke::finite(1, 2).parse_word("G0").is_err());
    assert_eq!(
        Hecke::finite(2, 3).parse_word("1").unwrap(),
        Hecke::finite(2, 3).identity()
    );
}

#[test]
fn generator_examples() {
    let h = Hecke::finite(1, 2);
    let sq = word(&h, "G1 G1");
    let expect = HElement::from_terms(
        h.signature(),
        [
            (bw(&[(0, 0), (0, 0)]), s("q - q^-1")),
            (bw(&[(1, 0), (0, 0)]), s("1")),
        ],
    )
    .unwrap();
    assert_eq!(sq, expect);

    // σ_2 lowers a top index 2 to 1
    let h3 = Hecke::finite(2, 3);
    let x = h3.basis_element(&bw(&[(2, 1), (1, 0), (0, 1)])).unwrap();
    let y = h3.left_mul_generator(Generator::Sigma(2), &x).unwrap();
    assert_eq!(y, h3.basis_element(&bw(&[(1, 1), (1, 0), (0, 1)])).unwrap());

    let h1 = Hecke::finite(2, 1);
    let tt = word(&h1, "T T");
    let tau = h1.basis_element(&bw(&[(0, 1)])).unwrap();
    assert_eq!(tt, &tau.scale(&s("v1 + v2")) - &h1.scalar(s("v1*v2")));
}

#[test]
fn inverse_letters() {
    for h in [
        Hecke::finite(1, 3),
        Hecke::finite(2, 3),
        Hecke::finite(3, 2),
        Hecke::affine(3),
    ] {
        let one = h.identity();
        assert_eq!(word(&h, "T T^-1"), one);
        assert_eq!(word(&h, "T^-1 T"), one);
        for i in 1..h.n() {
            assert_eq!(word(&h, &format!("G{i} G{i}^-1")), one);
            assert_eq!(word(&h, &format!("G{i}^-1 G{i}")), one);
        }
        assert_eq!(
            h.parse_word("G1^-1").unwrap(),
            &word(&h, "G1") - &h.scalar(s("q - q^-1"))
        );
    }
}

fn check_relations(h: &Hecke) {
    let n = h.n();
    for i in 1..n.saturating_sub(1) {
        assert_word_eq(
            h,
            &format!("G{i} G{} G{i}", i + 1),
            &format!("G{} G{i} G{}", i + 1, i + 1),
        );
    }
    for i in 1..n {
        for j in i + 2..n {
            assert_word_eq(h, &format!("G{i} G{j}"), &format!("G{j} G{i}"));
        }
        if i > 1 {
            assert_word_eq(h, &format!("T G{i}"), &format!("G{i} T"));
            assert_word_eq(h, &format!("T^-1 G{i}"), &format!("G{i} T^-1"));
        }
        let sq = word(h, &format!("G{i} G{i}"));
        let rhs = &word(h, &format!("G{i}")).scale(&s("q - q^-1")) + &h.identity();
        assert_eq!(sq, rhs);
    }
    if n >= 2 {
        assert_word_eq(h, "T G1 T G1", "G1 T G1 T");
    }
    if let Some(m) = h.m() {
        let mut acc = h.identity();
        for j in 1..=m {
            let f = &word(h, "T") - &h.scalar(ScalarValue::v(j));
            acc = &acc * &f;
        }
        assert!(
            acc.is_zero(),
            "characteristic relation in {}",
            h.signature()
        );
    }
}

#[test]
fn defining_relations() {
    for m in 1..=3 {
        for n in 1..=4 {
            check_relations(&Hecke::finite(m, n));
        }
    }
    for n in 1..=3 {
        check_relations(&Hecke::affine(n));
    }
}

fn exchange_identity(h: &Hecke, alpha: i64) {
    let t = |k: i64| format!("T^{k}");
    // τσ₁⁻¹τ^ασ₁ = (q−q⁻¹)(τσ₁τ^α − τ^{α+1}σ₁) + σ₁⁻¹τ^ασ₁τ
    let lhs = word(h, &format!("T G1^-1 {} G1", t(alpha)));
    let bracket =
        &word(h, &format!("T G1 {}", t(alpha))) - &word(h, &format!("{} G1", t(alpha + 1)));
    let rhs = &bracket.scale(&s("q - q^-1")) + &word(h, &format!("G1^-1 {} G1 T", t(alpha)));
    assert_eq!(lhs, rhs, "α = {alpha} in {}", h.signature());
    // τ⁻¹σ₁⁻¹τ^ασ₁ = (q−q⁻¹)(τ^ασ₁τ⁻¹ − σ₁τ^{α−1}) + σ₁⁻¹τ^ασ₁τ⁻¹
    let lhs = word(h, &format!("T^-1 G1^-1 {} G1", t(alpha)));
    let bracket =
        &word(h, &format!("{} G1 T^-1", t(alpha))) - &word(h, &format!("G1 {}", t(alpha - 1)));
    let rhs = &bracket.scale(&s("q - q^-1")) + &word(h, &format!("G1^-1 {} G1 T^-1", t(alpha)));
    assert_eq!(
        lhs,
        rhs,
        "inverse variant, α = {alpha} in {}",
        h.signature()
    );
}

#[test]
fn tau_exchanges_past_conjugated_powers() {
    for alpha in -2..=2 {
        exchange_identity(&Hecke::affine(2), alpha);
        exchange_identity(&Hecke::affine(3), alpha);
    }
    for m in 1..=3 {
        for alpha in 0..m as i64 {
            exchange_identity(&Hecke::finite(m, 2), alpha);
        }
    }
}

/// `σ₁⁻¹τ^aσ₁τ^{±c}` moved past each other, for `c ≤ 3`.
fn power_commutation(h: &Hecke, a: i64) {
    let qd = s("q - q^-1");
    let p = |k: i64| format!("T^{k}");
    for c in 0..=3i64 {
        let lhs = word(h, &format!("G1^-1 {} G1 {}", p(a), p(c)));
        let mut rhs = word(h, &format!("{} G1^-1 {} G1", p(c), p(a)));
        for i in 1..=c {
            let d = &word(h, &format!("{} G1^-1 {}", p(a + i), p(c - i)))
                - &word(h, &format!("{} G1^-1 {}", p(i), p(a + c - i)));
            rhs = &rhs + &d.scale(&qd);
        }
        assert_eq!(lhs, rhs, "a = {a}, c = {c}");

        let lhs = word(h, &format!("G1^-1 {} G1 {}", p(a), p(-c)));
        let mut rhs = word(h, &format!("{} G1^-1 {} G1", p(-c), p(a)));
        for i in 1..=c {
            let d = &word(h, &format!("{} G1^-1 {}", p(a + i - c), p(-i)))
                - &word(h, &format!("{} G1^-1 {}", p(i - c), p(a - i)));
            rhs = &rhs - &d.scale(&qd);
        }
        assert_eq!(lhs, rhs, "a = {a}, −c = {}", -c);
    }
}

#[test]
fn power_commutation_identities() {
    for a in -2..=2 {
        power_commutation(&Hecke::affine(2), a);
    }
    for m in 1..=3 {
        for a in 0..m as i64 {
            power_commutation(&Hecke::finite(m, 2), a);
        }
    }
}

#[test]
fn flipped_prefixes_differ_by_lower_terms() {
    for (m, n) in [(1, 3), (2, 2), (2, 3), (3, 2)] {
        let h = Hecke::finite(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let lower = Hecke::finite(m, n - 1);
        for j in 0..n {
            for alpha in 0..m as i64 {
                let w = random_element(&lower, &mut rng, 2);
                let w = lower.embed(&w).unwrap();
                let tail: String = (1..n).map(|i| format!(" G{i}")).collect();
                let plus: String = (1..=j).rev().map(|i| format!("G{i} ")).collect();
                let minus: String = (1..=j).rev().map(|i| format!("G{i}^-1 ")).collect();
                let xp = &word(&h, &format!("{plus}T^{alpha}{tail}")) * &w;
                let xm = &word(&h, &format!("{minus}T^{alpha}{tail}")) * &w;
                let diff = &xp - &xm;
                // in the inductive basis: only top layers (k, α) with k < j
                for (layers, _) in diff.terms() {
                    assert!(
                        layers[0].0 < j && layers[0].1 == alpha,
                        "ε = +1, j = {j}, α = {alpha}"
                    );
                }
                if alpha != 0 {
                    // in 𝓑⁺: the same statement with the roles of ε swapped
                    for (k, _) in h.to_bplus(&(&xm - &xp)).unwrap() {
                        assert!(
                            k.layers[0].0 < j && k.layers[0].1 == alpha,
                            "ε = −1, j = {j}, α = {alpha}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn closure_and_integrality() {
    for (m, n) in [(1, 3), (2, 3), (3, 2)] {
        let h = Hecke::finite(m, n);
        for w in h.basis().unwrap() {
            let x = h.basis_element(&w).unwrap();
            for g in generators(n, true) {
                let y = h.left_mul_generator(g, &x).unwrap();
                assert!(y.is_integral());
                for (layers, _) in y.terms() {
                    bw(layers).validate(h.signature()).unwrap();
                }
            }
        }
    }
}

#[test]
fn sigma_words_stay_untwisted() {
    let h = Hecke::finite(3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let letters: Vec<String> = (0..6)
            .map(|_| {
                let i = rng.gen_range(1..4);
                if rng.gen_bool(0.5) {
                    format!("G{i}")
                } else {
                    format!("G{i}^-1")
                }
            })
            .collect();
        let x = word(&h, &letters.join(" "));
        assert!(x.terms().all(|(l, _)| l.iter().all(|&(_, a)| a == 0)));
    }
}

#[test]
fn right_action_matches_products() {
    let mut sigs = vec![];
    for m in 1..=2 {
        for n in 1..=3 {
            sigs.push(Hecke::finite(m, n));
        }
    }
    sigs.push(Hecke::finite(3, 3));
    for h in sigs {
        for w in h.basis().unwrap() {
            let x = h.basis_element(&w).unwrap();
            for g in generators(h.n(), true) {
                let fast = h.right_mul_generator(&x, g).unwrap();
                let slow = h.multiply(&x, &h.generator(g).unwrap()).unwrap();
                assert_eq!(fast, slow, "{w} · {g} in {}", h.signature());
            }
        }
    }
    let h = Hecke::affine(3);
    for w in h.basis_window(1) {
        let x = h.basis_element(&w).unwrap();
        for g in generators(3, true) {
            assert_eq!(
                h.right_mul_generator(&x, g).unwrap(),
                h.multiply(&x, &h.generator(g).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn right_action_examples() {
    let h = Hecke::finite(2, 2);
    let one = h.identity();
    assert_eq!(
        h.right_mul_generator(&one, Generator::Sigma(1)).unwrap(),
        word(&h, "G1")
    );
    let x = h.basis_element(&bw(&[(0, 1), (0, 0)])).unwrap();
    let fast = h.right_mul_generator(&x, Generator::Sigma(1)).unwrap();
    assert_eq!(fast, &x * &word(&h, "G1"));
}

#[test]
fn multiplication_laws() {
    let h = Hecke::finite(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let one = h.identity();
    for _ in 0..10 {
        let x = random_element(&h, &mut rng, 3);
        let y = random_element(&h, &mut rng, 3);
        let z = random_element(&h, &mut rng, 2);
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &one, x);
        assert_eq!(&one * &x, x);
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }
    let h = Hecke::finite(1, 2);
    let f = &word(&h, "G1") - &h.scalar(s("q"));
    let g = &word(&h, "G1") + &h.scalar(s("q^-1"));
    assert!((&f * &g).is_zero());
}

#[test]
fn affine_associativity() {
    let h = Hecke::affine(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..5 {
        let x = random_element(&h, &mut rng, 2);
        let y = random_element(&h, &mut rng, 2);
        let z = random_element(&h, &mut rng, 2);
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }
}

#[test]
fn involutions() {
    let h = Hecke::finite(2, 2);
    let qd = s("q - q^-1");
    assert_eq!(
        h.iota(&word(&h, "G1")).unwrap(),
        &word(&h, "G1") - &h.scalar(qd)
    );
    assert_eq!(h.varpi(&word(&h, "T G1")).unwrap(), word(&h, "G1 T"));
    assert_eq!(h.iota(&word(&h, "T")).unwrap(), word(&h, "T^-1"));
    assert_eq!(
        h.iota(&h.scalar(s("q + v1"))).unwrap(),
        h.scalar(s("q^-1 + v1^-1"))
    );

    for (m, n) in [(2, 2), (2, 3), (1, 3)] {
        let h = Hecke::finite(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..8 {
            let x = random_element(&h, &mut rng, 3);
            let y = random_element(&h, &mut rng, 3);
            assert_eq!(h.iota(&h.iota(&x).unwrap()).unwrap(), x);
            assert_eq!(h.varpi(&h.varpi(&x).unwrap()).unwrap(), x);
            assert_eq!(
                h.iota(&(&x * &y)).unwrap(),
                &h.iota(&x).unwrap() * &h.iota(&y).unwrap()
            );
            assert_eq!(
                h.varpi(&(&x * &y)).unwrap(),
                &h.varpi(&y).unwrap() * &h.varpi(&x).unwrap()
            );
        }
    }
}

#[test]
fn bplus_round_trip() {
    let h = Hecke::finite(2, 2);
    let one = h.to_bplus(&h.identity()).unwrap();
    assert_eq!(one, BTreeMap::from([(BasisWord::identity(2), s("1"))]));
    let s1 = h.to_bplus(&word(&h, "G1")).unwrap();
    assert_eq!(s1, BTreeMap::from([(bw(&[(0, 0), (0, 0)]), s("1"))]));

    for (m, n) in [(2, 2), (2, 3), (3, 2), (1, 3)] {
        let h = Hecke::finite(m, n);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..6 {
            let x = random_element(&h, &mut rng, 4);
            let c = h.to_bplus(&x).unwrap();
            assert_eq!(h.from_bplus(&c).unwrap(), x);
        }
        // the change of basis is invertible: every basis word has nonzero image
        for w in h.basis().unwrap() {
            let e = h.bplus_element(&w).unwrap();
            assert_eq!(h.to_bplus(&e).unwrap(), BTreeMap::from([(w, s("1"))]));
        }
    }
}

fn generic_gamma(m: usize) -> Vec<ScalarValue> {
    (0..m as i32)
        .map(|a| ScalarValue::var(Var::Gamma(a)))
        .collect()
}

#[test]
fn bgamma_round_trip() {
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        let h = Hecke::finite(m, n);
        let gamma = generic_gamma(m);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let x = random_element(&h, &mut rng, 4);
            let c = h.to_bgamma(&x, &gamma).unwrap();
            assert_eq!(h.from_bgamma(&c, &gamma).unwrap(), x);
        }
    }
    // γ° gives back the inductive basis
    let h = Hecke::finite(3, 2);
    let circ = vec![s("1"), s("0"), s("0")];
    for w in h.basis().unwrap() {
        assert_eq!(
            h.bgamma_element(&w, &circ).unwrap(),
            h.basis_element(&w).unwrap()
        );
    }
    assert!(h
        .to_bgamma(&h.identity(), &[s("0"), s("1"), s("1")])
        .is_err());
}

type GroupSum = BTreeMap<GroupElement, Cyclotomic>;

fn group_mul(x: &GroupSum, y: &GroupSum, m: usize) -> GroupSum {
    let mut out = GroupSum::new();
    for (g, a) in x {
        for (h, b) in y {
            let e = out.entry(g * h).or_insert_with(|| Cyclotomic::zero(m));
            *e = &*e + &(a * b);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[test]
fn specialization() {
    let h = Hecke::finite(2, 2);
    let gs = GroupSignature::finite(2, 2);
    let s1 = GroupElement::s(gs, 1).unwrap();
    let img = h.specialize(&word(&h, "G1"), 1).unwrap();
    assert_eq!(img, BTreeMap::from([(s1.clone(), Cyclotomic::one(2))]));
    let sq = h.specialize(&word(&h, "G1 G1"), 1).unwrap();
    assert_eq!(
        sq,
        BTreeMap::from([(GroupElement::identity(gs), Cyclotomic::one(2))])
    );
    // basis words go to the group elements with the same layers
    for w in h.basis().unwrap() {
        let img = h.specialize(&h.basis_element(&w).unwrap(), -1).unwrap();
        let g = NestedNormalForm {
            layers: w.layers.clone(),
        }
        .evaluate(gs)
        .unwrap();
        assert_eq!(img, BTreeMap::from([(g, Cyclotomic::one(2))]));
    }
    assert!(Hecke::affine(2)
        .specialize(&Hecke::affine(2).identity(), 1)
        .is_err());
}

#[test]
fn specialization_is_multiplicative() {
    let h = Hecke::finite(2, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for sign in [1, -1] {
        for _ in 0..20 {
            let x = random_element(&h, &mut rng, 3);
            let y = random_element(&h, &mut rng, 3);
            let lhs = h.specialize(&(&x * &y), sign).unwrap();
            let rhs = group_mul(
                &h.specialize(&x, sign).unwrap(),
                &h.specialize(&y, sign).unwrap(),
                2,
            );
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn json_round_trip() {
    for h in [Hecke::finite(2, 2), Hecke::affine(2)] {
        let x = &word(&h, "T G1 T^-1") + &h.scalar(s("1/3*q^-2"));
        let text = x.to_json();
        assert_eq!(HElement::from_json(&text).unwrap(), x);
    }
    let text = Hecke::finite(1, 2).identity().to_json();
    assert!(
        text.starts_with(r#"{"signature":{"m":1,"n":2},"terms":[{"layers":[[1,0],[0,0]]"#),
        "{text}"
    );
    assert!(HElement::from_json(
        r#"{"signature":{"m":2,"n":1},"terms":[{"layers":[[0,5]],"coeff":{"num":"1","den":"1"}}]}"#
    )
    .is_err());
}

#[test]
fn signature_mismatch_is_an_error() {
    let a = Hecke::finite(2, 2);
    let b = Hecke::finite(2, 3);
    assert!(matches!(
        a.multiply(&a.identity(), &b.identity()),
        Err(HeckeError::Mismatch(..))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn words_multiply_by_concatenation(
        a in prop::collection::vec(0usize..5, 0..6),
        b in prop::collection::vec(0usize..5, 0..6),
    ) {
        let h = Hecke::finite(2, 3);
        let letters = [Generator::Tau, Generator::Sigma(1), Generator::Sigma(2), Generator::SigmaInv(1), Generator::TauInv];
        let wa = GeneratorWord(a.iter().map(|&i| letters[i]).collect());
        let wb = GeneratorWord(b.iter().map(|&i| letters[i]).collect());
        let mut wab = wa.clone();
        wab.0.extend(wb.0.iter().copied());
        let lhs = h.multiply(&h.from_word(&wa).unwrap(), &h.from_word(&wb).unwrap()).unwrap();
        prop_assert_eq!(lhs, h.from_word(&wab).unwrap());
        // a word times its inverse is 1
        let inv = h.from_word(&wa.inverse()).unwrap();
        prop_assert_eq!(h.multiply(&h.from_word(&wa).unwrap(), &inv).unwrap(), h.identity());
    }

    #[test]
    fn iota_and_varpi_commute(seed in 0u64..1000) {
        let h = Hecke::finite(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&h, &mut rng, 3);
        let a = h.iota(&h.varpi(&x).unwrap()).unwrap();
        let b = h.varpi(&h.iota(&x).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
