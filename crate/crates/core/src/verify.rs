//! Verification suites for the algebra itself: defining relations and the
//! commutation identities, flatness of the inductive basis, and the group layer.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{coset_label, coxeter_todd, normal_form, reduced_word, GroupElement, GroupWord, NestedNormalForm};
use crate::hecke::{AlgebraSignature, BasisWord, Generator, GeneratorWord, HElement, Hecke, HeckeError};
use crate::report::Report;
use crate::scalars::{Cyclotomic, ScalarValue};

/// How words are turned into elements while checking relations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WordRule {
    /// Letters act one at a time through the multiplication engine.
    #[default]
    Engine,
    /// Debugging hook: adjacent `σ_i σ_i` are first cancelled as in the
    /// group, which breaks the quadratic relation on purpose.
    GroupQuadratic,
}

fn parse(text: &str) -> Result<GeneratorWord, HeckeError> {
    if text.trim() == "1" {
        return Ok(GeneratorWord(Vec::new()));
    }
    text.parse()
}

fn cancel_squares(letters: &[Generator]) -> Vec<Generator> {
    let mut out: Vec<Generator> = Vec::new();
    for &g in letters {
        match (out.last(), g) {
            (Some(&Generator::Sigma(i)), Generator::Sigma(j)) if i == j => {
                out.pop();
            }
            _ => out.push(g),
        }
    }
    out
}

/// `word · x`, the letters acting from the right end of the word.
fn act(h: &Hecke, rule: WordRule, word: &GeneratorWord, x: &HElement) -> Result<HElement, HeckeError> {
    let letters = match rule {
        WordRule::Engine => word.0.clone(),
        WordRule::GroupQuadratic => cancel_squares(&word.0),
    };
    letters.iter().rev().try_fold(x.clone(), |acc, &g| h.left_mul_generator(g, &acc))
}

/// A linear combination of words.
type Combo = Vec<(ScalarValue, String)>;

fn combo_act(h: &Hecke, rule: WordRule, combo: &Combo, x: &HElement) -> Result<HElement, HeckeError> {
    let mut acc = h.zero();
    for (c, w) in combo {
        acc = &acc + &act(h, rule, &parse(w)?, x)?.scale(c);
    }
    Ok(acc)
}

fn one(w: impl Into<String>) -> Combo {
    vec![(ScalarValue::one(), w.into())]
}

fn qd() -> ScalarValue {
    ScalarValue::qdiff()
}

fn record_result(report: &mut Report, name: &str, anchor: &str, result: Result<Option<String>, HeckeError>, count: usize) {
    match result {
        Ok(None) => report.record_with(name, anchor, true, crate::report::cases(count)),
        Ok(Some(detail)) => report.record_with(name, anchor, false, detail),
        Err(e) => report.record_with(name, anchor, false, e.to_string()),
    }
}

/// `lhs · x = rhs · x` for every basis word `x` (all words in the exponent
/// window `[−1, 1]` for the affine algebra).
fn relation(report: &mut Report, h: &Hecke, rule: WordRule, name: &str, anchor: &str, lhs: Combo, rhs: Combo) {
    let basis = h.basis_window(1);
    let result = (|| {
        for w in &basis {
            let x = h.basis_element(w)?;
            if combo_act(h, rule, &lhs, &x)? != combo_act(h, rule, &rhs, &x)? {
                return Ok(Some(format!("fails on {w}")));
            }
        }
        Ok(None)
    })();
    record_result(report, name, anchor, result, basis.len());
}

/// An identity between elements, compared after acting on `1`.
fn identity(report: &mut Report, h: &Hecke, rule: WordRule, name: &str, anchor: &str, cases: Vec<(String, Combo, Combo)>) {
    let count = cases.len();
    let result = (|| {
        let unit = h.identity();
        for (label, lhs, rhs) in &cases {
            if combo_act(h, rule, lhs, &unit)? != combo_act(h, rule, rhs, &unit)? {
                return Ok(Some(format!("fails at {label}")));
            }
        }
        Ok(None)
    })();
    record_result(report, name, anchor, result, count);
}

fn pw(k: i64) -> String {
    format!("T^{k}")
}

/// Defining relations as operator identities on the basis, the
/// exchange of `τ` past `σ₁⁻¹τ^ασ₁` and its `τ⁻¹` variant, and the commutation of
/// `σ₁⁻¹τ^aσ₁` with `τ^{±c}`, `c ≤ 3`.
pub fn verify_relations(sig: AlgebraSignature) -> Report {
    verify_relations_with(sig, WordRule::Engine)
}

pub fn verify_relations_with(sig: AlgebraSignature, rule: WordRule) -> Report {
    let h = Hecke::new(sig);
    let n = sig.n;
    let mut report = Report::new(format!("defining relations of {sig}"));
    let braid = "braid relation σ_i σ_{i+1} σ_i = σ_{i+1} σ_i σ_{i+1}";
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (format!("G{i} G{} G{i}", i + 1), format!("G{} G{i} G{}", i + 1, i + 1));
        relation(&mut report, &h, rule, &format!("{a} = {b}"), braid, one(a.clone()), one(b));
    }
    for i in 1..n {
        for j in i + 2..n {
            let name = format!("G{i} G{j} = G{j} G{i}");
            relation(&mut report, &h, rule, &name, "distant generators commute", one(format!("G{i} G{j}")), one(format!("G{j} G{i}")));
        }
    }
    if n >= 2 {
        relation(&mut report, &h, rule, "T G1 T G1 = G1 T G1 T", "four-term braid relation with τ", one("T G1 T G1"), one("G1 T G1 T"));
    }
    for i in 2..n {
        for t in ["T", "T^-1"] {
            let name = format!("{t} G{i} = G{i} {t}");
            relation(&mut report, &h, rule, &name, "τ commutes with σ_i for i > 1", one(format!("{t} G{i}")), one(format!("G{i} {t}")));
        }
    }
    for i in 1..n {
        let rhs = vec![(qd(), format!("G{i}")), (ScalarValue::one(), "1".to_string())];
        relation(&mut report, &h, rule, &format!("G{i} G{i} = (q - q^-1) G{i} + 1"), "quadratic relation", one(format!("G{i} G{i}")), rhs);
    }
    if n >= 1 {
        relation(&mut report, &h, rule, "T T^-1 = 1", "τ is invertible", one("T T^-1"), one("1"));
    }
    if let Some(m) = sig.m {
        if n >= 1 {
            let basis = h.basis_window(1);
            let result = (|| {
                for w in &basis {
                    let x = h.basis_element(w)?;
                    let mut acc = x.clone();
                    for j in 1..=m {
                        let t = h.left_mul_generator(Generator::Tau, &acc)?;
                        acc = &t - &acc.scale(&ScalarValue::v(j));
                    }
                    if !acc.is_zero() {
                        return Ok(Some(format!("fails on {w}")));
                    }
                }
                Ok(None)
            })();
            record_result(&mut report, "(T - v1)…(T - vm) = 0", "characteristic relation of τ", result, basis.len());
        }
    }
    if n < 2 {
        return report;
    }
    let alphas: Vec<i64> = match sig.m {
        Some(m) => (0..m as i64).collect(),
        None => (-2..=2).collect(),
    };
    let mut cases = Vec::new();
    let mut inverse_cases = Vec::new();
    for &a in &alphas {
        let lhs = one(format!("T G1^-1 {} G1", pw(a)));
        let rhs = vec![
            (qd(), format!("T G1 {}", pw(a))),
            (-qd(), format!("{} G1", pw(a + 1))),
            (ScalarValue::one(), format!("G1^-1 {} G1 T", pw(a))),
        ];
        cases.push((format!("α = {a}"), lhs, rhs));
        let lhs = one(format!("T^-1 G1^-1 {} G1", pw(a)));
        let rhs = vec![
            (qd(), format!("{} G1 T^-1", pw(a))),
            (-qd(), format!("G1 {}", pw(a - 1))),
            (ScalarValue::one(), format!("G1^-1 {} G1 T^-1", pw(a))),
        ];
        inverse_cases.push((format!("α = {a}"), lhs, rhs));
    }
    identity(&mut report, &h, rule, "τσ1^-1τ^ασ1 exchange", "moving τ past σ1^-1 τ^α σ1", cases);
    identity(&mut report, &h, rule, "τ^-1σ1^-1τ^ασ1 exchange", "moving τ^-1 past σ1^-1 τ^α σ1", inverse_cases);

    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for &a in &alphas {
        for c in 0..=3i64 {
            let lhs = one(format!("G1^-1 {} G1 {}", pw(a), pw(c)));
            let mut rhs = one(format!("{} G1^-1 {} G1", pw(c), pw(a)));
            for i in 1..=c {
                rhs.push((qd(), format!("{} G1^-1 {}", pw(a + i), pw(c - i))));
                rhs.push((-qd(), format!("{} G1^-1 {}", pw(i), pw(a + c - i))));
            }
            plus.push((format!("a = {a}, c = {c}"), lhs, rhs));
            let lhs = one(format!("G1^-1 {} G1 {}", pw(a), pw(-c)));
            let mut rhs = one(format!("{} G1^-1 {} G1", pw(-c), pw(a)));
            for i in 1..=c {
                rhs.push((-qd(), format!("{} G1^-1 {}", pw(a + i - c), pw(-i))));
                rhs.push((qd(), format!("{} G1^-1 {}", pw(i - c), pw(a - i))));
            }
            minus.push((format!("a = {a}, c = {c}"), lhs, rhs));
        }
    }
    identity(&mut report, &h, rule, "σ1^-1τ^aσ1 τ^c, c ≤ 3", "commuting σ1^-1 τ^a σ1 with positive powers of τ", plus);
    identity(&mut report, &h, rule, "σ1^-1τ^aσ1 τ^-c, c ≤ 3", "commuting σ1^-1 τ^a σ1 with negative powers of τ", minus);
    if sig.m.is_some() {
        flipped_prefixes(&mut report, &h);
    }
    report
}

fn random_element(h: &Hecke, rng: &mut ChaCha8Rng, terms: usize) -> Result<HElement, HeckeError> {
    let basis = h.basis_window(1);
    let coeffs = [1, -1, 2, 3];
    let pairs: Vec<(BasisWord, ScalarValue)> = (0..terms)
        .map(|_| {
            let w = basis[rng.gen_range(0..basis.len())].clone();
            (w, ScalarValue::int(coeffs[rng.gen_range(0..coeffs.len())]))
        })
        .collect();
    HElement::from_terms(h.signature(), pairs)
}

/// `σ_j^{±1}⋯σ_1^{±1}τ^ασ_1⋯σ_{n−1}w` for both signs differ by terms whose
/// top layer is `(k, α)` with `k < j`, in `𝓑` for `ε = +1` and in `𝓑⁺` for `ε = −1`.
fn flipped_prefixes(report: &mut Report, h: &Hecke) {
    let sig = h.signature();
    let (m, n) = (sig.m.unwrap_or(1), sig.n);
    let lower = h.lower();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut count = 0;
    let result = (|| {
        for j in 0..n {
            for alpha in 0..m as i64 {
                let w = lower.embed(&random_element(&lower, &mut rng, 2)?)?;
                let tail: String = (1..n).map(|i| format!(" G{i}")).collect();
                let plus: String = (1..=j).rev().map(|i| format!("G{i} ")).collect();
                let minus: String = (1..=j).rev().map(|i| format!("G{i}^-1 ")).collect();
                let xp = h.multiply(&h.parse_word(&format!("{plus}T^{alpha}{tail}"))?, &w)?;
                let xm = h.multiply(&h.parse_word(&format!("{minus}T^{alpha}{tail}"))?, &w)?;
                count += 1;
                let diff = &xp - &xm;
                if diff.terms().any(|(l, _)| !(l[0].0 < j && l[0].1 == alpha)) {
                    return Ok(Some(format!("ε = +1, j = {j}, α = {alpha}")));
                }
                if alpha != 0 {
                    let plus_coords = h.to_bplus(&(&xm - &xp))?;
                    if plus_coords.keys().any(|k| !(k.layers[0].0 < j && k.layers[0].1 == alpha)) {
                        return Ok(Some(format!("ε = −1, j = {j}, α = {alpha}")));
                    }
                }
            }
        }
        Ok(None)
    })();
    record_result(report, "flipping the signs of a prefix", "prefixes with σ and σ^-1 differ by lower terms", result, count);
}

/// Every generator (and inverse) times every basis word, on either side,
/// reduces to a combination of basis words with Laurent coefficients; the
/// basis has `m^n n!` elements and specializes bijectively onto the group.
pub fn verify_flatness(sig: AlgebraSignature) -> Report {
    let h = Hecke::new(sig);
    let mut report = Report::new(format!("flatness of the inductive basis of {sig}"));
    let basis = match h.basis() {
        Ok(b) => b,
        Err(e) => {
            report.record_with("basis enumeration", "basis of the finite algebra", false, e.to_string());
            return report;
        }
    };
    let expected = sig.dimension().unwrap_or(0);
    report.record_with(
        "|basis| = m^n n!",
        "size of the inductive basis",
        basis.len() as u128 == expected,
        format!("{} words, expected {expected}", basis.len()),
    );
    let mut gens = vec![Generator::Tau, Generator::TauInv];
    for i in 1..sig.n {
        gens.extend([Generator::Sigma(i), Generator::SigmaInv(i)]);
    }
    let valid: HashSet<&BasisWord> = basis.iter().collect();
    let result = (|| {
        for w in &basis {
            let x = h.basis_element(w)?;
            for &g in &gens {
                for y in [h.left_mul_generator(g, &x)?, h.right_mul_generator(&x, g)?] {
                    if !y.is_integral() {
                        return Ok(Some(format!("non-Laurent coefficient in {g}·{w}")));
                    }
                    for (layers, _) in y.terms() {
                        if !valid.contains(&BasisWord { layers: layers.to_vec() }) {
                            return Ok(Some(format!("{g} and {w} leave the basis")));
                        }
                    }
                }
            }
        }
        Ok(None)
    })();
    record_result(&mut report, "generator · word and word · generator stay in the basis", "closure under multiplication", result, basis.len() * gens.len() * 2);

    let result = (|| {
        for w in &basis {
            let x = h.basis_element(w)?;
            for &g in &gens {
                let gx = h.left_mul_generator(g, &x)?;
                for &f in &gens {
                    let y = h.left_mul_generator(f, &gx)?;
                    if !y.is_integral() || y.terms().any(|(l, _)| !valid.contains(&BasisWord { layers: l.to_vec() })) {
                        return Ok(Some(format!("{f} {g} · {w} leaves the basis")));
                    }
                }
            }
        }
        Ok(None)
    })();
    record_result(&mut report, "generator pairs · word stay in the basis", "closure under multiplication", result, basis.len() * gens.len() * gens.len());

    let result = (|| {
        let mut images = HashSet::new();
        for w in &basis {
            let img = h.specialize(&h.basis_element(w)?, 1)?;
            let mut keys = img.keys();
            match (keys.next(), keys.next()) {
                (Some(g), None) if images.insert(g.clone()) => {}
                _ => return Ok(Some(format!("{w} does not go to a new group element"))),
            }
        }
        Ok(None)
    })();
    record_result(&mut report, "basis words specialize to distinct group elements", "the basis deforms the group basis", result, basis.len());
    report
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

/// Group layer of `G(m,1,n)`: the nested normal forms are in bijection with
/// the group, the coset table of `G(m,1,n−1)` has `m·n` vertices and agrees
/// with left multiplication, reduced words evaluate back to their element,
/// and specialization `q ↦ 1` is multiplicative on `pairs` seeded random pairs.
pub fn verify_group(m: usize, n: usize, pairs: usize, seed: u64) -> Report {
    use crate::group::GroupSignature;
    let mut report = Report::new(format!("group layer of G({m},1,{n})"));
    let sig = GroupSignature::finite(m, n);
    let forms = match NestedNormalForm::enumerate(sig) {
        Ok(f) => f,
        Err(e) => {
            report.record_with("enumeration", "normal forms", false, e.to_string());
            return report;
        }
    };
    let mut seen = HashSet::new();
    let bijective = forms.len() as u128 == sig.order().unwrap_or(0)
        && forms.iter().all(|nf| match nf.evaluate(sig) {
            Ok(g) => normal_form(&g) == *nf && seen.insert(g),
            Err(_) => false,
        });
    report.record_with(
        "normal forms ↔ group elements",
        "nested normal form is a bijection",
        bijective,
        format!("{} forms, |G| = {}", forms.len(), sig.order().unwrap_or(0)),
    );

    match coxeter_todd(sig, None) {
        Ok(table) => {
            let ok = (|| -> Option<bool> {
                if table.len() != m * n {
                    return Some(false);
                }
                let reps: Vec<GroupElement> = table.vertices.iter().map(|v| v.word.evaluate(sig).ok()).collect::<Option<_>>()?;
                for (v, r) in table.vertices.iter().zip(&reps) {
                    if coset_label(r) != (v.j, v.alpha) {
                        return Some(false);
                    }
                }
                for action in &table.actions {
                    let g = GroupWord(vec![action.letter]).evaluate(sig).ok()?;
                    for (x, img) in reps.iter().zip(&action.image) {
                        if coset_label(&(&g * x)) != coset_label(&reps[(*img)?]) {
                            return Some(false);
                        }
                    }
                }
                Some(true)
            })();
            report.record_with(
                "coset table has m·n vertices and matches left multiplication",
                "transversal of the parabolic subgroup",
                ok == Some(true),
                format!("{} vertices", table.len()),
            );
        }
        Err(e) => report.record_with("coset table", "transversal of the parabolic subgroup", false, e.to_string()),
    }

    let round_trip = forms.iter().all(|nf| match (reduced_word(nf, sig), nf.evaluate(sig)) {
        (Ok(w), Ok(g)) => w.is_positive() && w.len() == nf.length() && w.evaluate(sig).ok() == Some(g),
        _ => false,
    });
    report.record_with("reduced words evaluate back", "reduced-word form", round_trip, format!("{} forms", forms.len()));

    let h = Hecke::finite(m, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = (|| {
        for i in 0..pairs {
            let x = random_element(&h, &mut rng, 3)?;
            let y = random_element(&h, &mut rng, 3)?;
            let lhs = h.specialize(&h.multiply(&x, &y)?, 1)?;
            let rhs = group_mul(&h.specialize(&x, 1)?, &h.specialize(&y, 1)?, m);
            if lhs != rhs {
                return Ok(Some(format!("pair {i}")));
            }
        }
        Ok(None)
    })();
    record_result(&mut report, "specialization is multiplicative", "deformation of the group algebra", result, pairs);
    report
}
