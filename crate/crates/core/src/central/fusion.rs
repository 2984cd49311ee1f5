//! Primitive idempotents by the fusion procedure, and the weights of `L^γ`.

use serde::Serialize;

use super::{iota_l_gamma, CentralError, Gamma, MTableau, MultiPartition};
use crate::hecke::{AlgebraSignature, Generator, HElement, Hecke, HeckeError};
use crate::report::Report;
use crate::scalars::{bar, char_poly_coeffs, ScalarValue, Var};

fn q_pow(e: i64) -> ScalarValue {
    ScalarValue::var_pow(Var::Q, e as i32)
}

/// `a_t` of the characteristic polynomial, with `a_m = 1`.
fn char_coeff(m: usize, t: usize) -> ScalarValue {
    if t == m {
        ScalarValue::one()
    } else {
        char_poly_coeffs(m)[t].clone()
    }
}

/// `𝔞_i(ρ) = Σ_{t=i}^{m} a_t ρ^{t−i}`, the tails of the characteristic polynomial,
/// for `1 ≤ i ≤ m`.
pub fn char_tail(m: usize, i: usize, rho: &ScalarValue) -> ScalarValue {
    let coeffs = char_poly_coeffs(m);
    // Horner from the top coefficient down to a_i
    let mut acc = ScalarValue::one();
    for t in (i..m).rev() {
        acc = &(&acc * rho) + &coeffs[t];
    }
    acc
}

/// `v_pos q^{−h} − v_k q^{h}`.
fn hook_factor(pos: usize, k: usize, h: i64) -> ScalarValue {
    &(&ScalarValue::v(pos) * &q_pow(-h)) - &(&ScalarValue::v(k) * &q_pow(h))
}

/// `[j]_q = q^{j−1} + q^{j−3} + … + q^{−j+1}`.
fn q_integer(j: i64) -> ScalarValue {
    (0..j).map(|i| q_pow(j - 1 - 2 * i)).sum()
}

/// `F_λ` as a product over nodes of the content times all `m` hook factors.
pub fn f_lambda_products(lambda: &MultiPartition) -> ScalarValue {
    let n = lambda.size() as i32;
    let base = (&q_pow(-1) - &ScalarValue::q()).powi(n);
    lambda.nodes().iter().fold(base, |acc, a| {
        let cc = a.classical_content();
        (1..=lambda.m()).fold(&acc * &a.content(), |acc, k| {
            &(&acc * &q_pow(-cc)) / &hook_factor(a.pos, k, lambda.hook(a, k))
        })
    })
}

/// `F_λ` with the factors of the node's own diagram collected into `q^c/[h]_q`.
pub fn f_lambda_hooks(lambda: &MultiPartition) -> ScalarValue {
    lambda.nodes().iter().fold(ScalarValue::one(), |acc, a| {
        let cc = a.classical_content();
        let own = &q_pow(cc) / &q_integer(lambda.hook(a, a.pos));
        (1..=lambda.m())
            .filter(|&k| k != a.pos)
            .fold(&acc * &own, |acc, k| &(&acc * &q_pow(-cc)) / &hook_factor(a.pos, k, lambda.hook(a, k)))
    })
}

/// `F_λ`, the normalization of the fusion formula; both closed forms are
/// computed and must agree.
pub fn f_lambda(lambda: &MultiPartition) -> Result<ScalarValue, CentralError> {
    let a = f_lambda_products(lambda);
    let b = f_lambda_hooks(lambda);
    if a != b {
        return Err(CentralError::Formula(format!("F for {lambda}: {a} vs {b}")));
    }
    Ok(a)
}

/// The Baxterized element `σ_i(α, β) = σ_i + (q − q⁻¹) β / (α − β)`.
pub fn baxterized_sigma(
    h: &Hecke,
    i: usize,
    alpha: &ScalarValue,
    beta: &ScalarValue,
) -> Result<HElement, CentralError> {
    let coef = baxter_coeff(alpha, beta)?;
    let s = h.generator(Generator::Sigma(i))?;
    Ok(&s + &h.scalar(coef))
}

fn baxter_coeff(alpha: &ScalarValue, beta: &ScalarValue) -> Result<ScalarValue, CentralError> {
    let diff = alpha - beta;
    if diff.is_zero() {
        return Err(CentralError::Input("Baxterized generator with equal parameters".into()));
    }
    Ok(&(&ScalarValue::qdiff() * beta) / &diff)
}

/// `τ(ρ) = Σ_{i=1}^{m} 𝔞_i(ρ) τ^{i−1}`, so that `τ(ρ)(ρ − τ) = χ(ρ)`.
pub fn tau_rho(h: &Hecke, rho: &ScalarValue) -> Result<HElement, CentralError> {
    let m = h.m().ok_or(HeckeError::Unsupported("τ(ρ) needs finite m"))?;
    if h.n() == 0 {
        return Err(HeckeError::Unsupported("τ(ρ) needs n ≥ 1").into());
    }
    Ok(tau_rho_times(h, m, rho, &h.identity())?)
}

fn tau_rho_times(h: &Hecke, m: usize, rho: &ScalarValue, x: &HElement) -> Result<HElement, HeckeError> {
    let mut acc = h.zero();
    let mut power = x.clone();
    for i in 1..=m {
        acc = &acc + &power.scale(&char_tail(m, i, rho));
        if i < m {
            power = h.left_mul_generator(Generator::Tau, &power)?;
        }
    }
    Ok(acc)
}

/// The primitive idempotent `E_T = F_λ Φ(c_1, …, c_n)`, where
/// `Φ(u_1, …, u_n) = φ_n ⋯ φ_1` with
/// `φ_k = σ_{k−1}(u_k, u_{k−1}) ⋯ σ_1(u_k, u_1) τ(u_k) σ_1⁻¹ ⋯ σ_{k−1}⁻¹`,
/// evaluated consecutively at `u_1 = c_1`, then `u_2 = c_2`, and so on.
///
/// Each `φ_k` is applied with `u_k` still free and then `u_k = c_k` is
/// substituted; removable poles cancel in the reduced coefficients.
pub fn fusion_idempotent(t: &MTableau) -> Result<HElement, CentralError> {
    let lambda = t.shape();
    let (m, n) = (lambda.m(), lambda.size());
    let h = Hecke::new(AlgebraSignature::new(Some(m), n)?);
    let contents = t.contents();
    let mut acc = h.identity();
    for k in 1..=n {
        let u = ScalarValue::var(Var::U(k as u16));
        for i in (1..k).rev() {
            acc = h.left_mul_generator(Generator::SigmaInv(i), &acc)?;
        }
        acc = tau_rho_times(&h, m, &u, &acc)?;
        for i in 1..k {
            let coef = baxter_coeff(&u, &contents[i - 1])?;
            let moved = h.left_mul_generator(Generator::Sigma(i), &acc)?;
            acc = &moved + &acc.scale(&coef);
        }
        let slot = Var::U(k as u16);
        acc = acc.try_map_coeffs(|c| c.substitute(slot, &contents[k - 1]))?;
    }
    Ok(acc.scale(&f_lambda(lambda)?))
}

/// Weights of `L^γ` on the block of `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Weights {
    pub lambda: MultiPartition,
    pub f: ScalarValue,
    /// `ι(L^γ)(E_T)` for any standard `T` of shape `λ`.
    pub wtilde: ScalarValue,
    /// `L^γ`-weight `ι⁰(w̃)`.
    pub w: ScalarValue,
    /// `1 / w` when `w ≠ 0`.
    pub schur: Option<ScalarValue>,
}

/// Contents of the column reading tableau; weights do not depend on the tableau.
fn shape_contents(lambda: &MultiPartition) -> Vec<ScalarValue> {
    MTableau::column_reading(lambda).contents()
}

/// The weights of `λ` from the closed formulas. `w̃` is computed in two
/// ways (from `ι⁰(γ_{−a})` and from `γ_0, …, γ_{m−1}`), and `w` both
/// directly and as `ι⁰(w̃)`; any disagreement is an error.
pub fn weights(lambda: &MultiPartition, gamma: &Gamma) -> Result<Weights, CentralError> {
    let m = lambda.m();
    let h = Hecke::new(AlgebraSignature::new(Some(m), 1)?);
    let f = f_lambda(lambda)?;
    let contents = shape_contents(lambda);
    let a0 = char_coeff(m, 0);

    let wtilde: ScalarValue = contents.iter().fold(f.clone(), |acc, c| {
        let s: ScalarValue = (1..=m)
            .map(|t| &char_tail(m, t, c) * &bar(&gamma.value(&h, -(t as i64 - 1))))
            .sum();
        &acc * &s
    });
    let inner: ScalarValue = contents.iter().fold(ScalarValue::one(), |acc, c| {
        let rest: ScalarValue = (1..m)
            .map(|mu| &char_tail(m, mu + 1, c) * &gamma.value(&h, mu as i64))
            .sum();
        let term = &(&c.powi(1 - m as i32) * &gamma.value(&h, 0)) - &(&(&c.powi(2 - m as i32) / &a0) * &rest);
        &acc * &term
    });
    let wtilde2 = &f * &bar(&inner);
    if wtilde != wtilde2 {
        return Err(CentralError::Formula(format!("w̃ for {lambda}: {wtilde} vs {wtilde2}")));
    }

    let w: ScalarValue = contents
        .iter()
        .fold(f.clone(), |acc, c| &acc * &criterion_with(&h, m, gamma, c));
    if w != bar(&wtilde) {
        return Err(CentralError::Formula(format!("w for {lambda} is not ι⁰(w̃)")));
    }
    let schur = (!w.is_zero()).then(|| w.inv());
    Ok(Weights {
        lambda: lambda.clone(),
        f,
        wtilde,
        w,
        schur,
    })
}

/// The weight of `λ` for `γ°` as a product with no cancellation:
/// `(q − q⁻¹)^n ∏_α ∏_k q^{−c(α)} / (q^{h^{(k)}(α)} − v_k⁻¹ v_pos q^{−h^{(k)}(α)})`.
/// The Schur element of `λ` is its inverse.
pub fn cancellation_free_weight(lambda: &MultiPartition) -> ScalarValue {
    let base = ScalarValue::qdiff().powi(lambda.size() as i32);
    lambda.nodes().iter().fold(base, |acc, a| {
        let cc = a.classical_content();
        (1..=lambda.m()).fold(acc, |acc, k| {
            let hk = lambda.hook(a, k);
            let ratio = &ScalarValue::v(a.pos) / &ScalarValue::v(k);
            let den = &q_pow(hk) - &(&ratio * &q_pow(-hk));
            &(&acc * &q_pow(-cc)) / &den
        })
    })
}

fn criterion_with(h: &Hecke, m: usize, gamma: &Gamma, c: &ScalarValue) -> ScalarValue {
    let first = -&(&(&char_coeff(m, 0) * &gamma.value(h, 0)) / c);
    (1..m).fold(first, |acc, mu| {
        &acc + &(&char_tail(m, mu + 1, c) * &gamma.value(h, mu as i64))
    })
}

/// `−a_0 γ_0 / c + Σ_{μ=1}^{m−1} 𝔞_{μ+1}(c) γ_μ`, the factor a node of content
/// `c` contributes to the weight.
pub fn criterion(m: usize, gamma: &Gamma, c: &ScalarValue) -> Result<ScalarValue, CentralError> {
    let h = Hecke::new(AlgebraSignature::new(Some(m), 1)?);
    Ok(criterion_with(&h, m, gamma, c))
}

/// A content `v_p q^{2e}` at which the criterion vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub p: usize,
    pub exponent: i64,
    pub content: ScalarValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub witness: Option<Witness>,
}

/// `L^γ` on `H(m,1,n)` is non-degenerate exactly when the criterion is
/// nonzero at every `v_p q^{±2i}`, `1 ≤ p ≤ m`, `0 ≤ i < n`. Contents are
/// tried for `p = 1, …, m`, then `i = 0, …, n − 1`, `+2i` before `−2i`; the
/// first zero is the witness.
pub fn nondegeneracy_check(m: usize, n: usize, gamma: &Gamma) -> Result<Nondegeneracy, CentralError> {
    let h = Hecke::new(AlgebraSignature::new(Some(m), 1)?);
    for p in 1..=m {
        for i in 0..n as i64 {
            let exps = if i == 0 { vec![0] } else { vec![2 * i, -2 * i] };
            for e in exps {
                let content = &ScalarValue::v(p) * &q_pow(e);
                if criterion_with(&h, m, gamma, &content).is_zero() {
                    return Ok(Nondegeneracy {
                        nondegenerate: false,
                        witness: Some(Witness { p, exponent: e, content }),
                    });
                }
            }
        }
    }
    Ok(Nondegeneracy {
        nondegenerate: true,
        witness: None,
    })
}

/// `(d, d·x)` with `d` a common denominator of the coefficients of `x`, so
/// that products of the cleared elements stay in the Laurent ring.
fn clear_denominators(x: &HElement) -> (ScalarValue, HElement) {
    let mut d = ScalarValue::one();
    for (_, c) in x.terms() {
        let cd = &(c * &d).den().clone();
        d = &d * &ScalarValue::from(cd.clone());
    }
    (d.clone(), x.scale(&d))
}

fn record(report: &mut Report, name: &str, anchor: &str, failure: Option<String>, count: usize) {
    match failure {
        Some(detail) => report.record_with(name, anchor, false, detail),
        None => report.record_with(name, anchor, true, crate::report::cases(count)),
    }
}

/// Fusion idempotents of `H(m,1,n)`: idempotent, pairwise orthogonal,
/// summing to `1`, with `ι(L^γ)(E_T)` equal to the closed weight `w̃_λ`
/// (hence the same for all `T` of a shape), and the sum rule
/// `Σ_λ dim(λ) w_λ = γ_0^n`. For `γ = γ°` the weights are also compared with
/// the cancellation-free product.
pub fn verify_fusion(m: usize, n: usize, gamma: &Gamma) -> Report {
    let mut report = Report::new(format!("fusion idempotents of H({m},1,{n})"));
    let sig = match AlgebraSignature::new(Some(m), n) {
        Ok(sig) => sig,
        Err(e) => {
            report.record_with("signature", "valid algebra", false, e.to_string());
            return report;
        }
    };
    let h = Hecke::new(sig);
    let shapes = MultiPartition::all(m, n);

    let mut blocks = Vec::new();
    let mut f_failure = None;
    for lambda in &shapes {
        let tableaux = MTableau::standard(lambda);
        let idems: Result<Vec<_>, _> = tableaux.iter().map(fusion_idempotent).collect();
        match (weights(lambda, gamma), idems) {
            (Ok(w), Ok(e)) => blocks.push((w, tableaux, e)),
            (Err(e), _) | (_, Err(e)) => {
                f_failure.get_or_insert(format!("{lambda}: {e}"));
            }
        }
    }
    record(
        &mut report,
        "closed forms of F_λ and w_λ agree",
        "normalizing factors and weights",
        f_failure.clone(),
        shapes.len(),
    );
    if f_failure.is_some() {
        return report;
    }

    let all: Vec<(&MTableau, &HElement)> = blocks
        .iter()
        .flat_map(|(_, ts, es)| ts.iter().zip(es.iter()))
        .collect();
    // E_T = N_T / d_T with N_T Laurent; E_T E_T' = δ E_T becomes N_T N_T' = δ d_T N_T
    let cleared: Vec<(ScalarValue, HElement)> = all.iter().map(|(_, e)| clear_denominators(e)).collect();
    let product = |x: &HElement, y: &HElement| h.multiply(x, y).map_err(|e| e.to_string());

    let mut fail = None;
    for ((t, _), (d, x)) in all.iter().zip(&cleared) {
        match product(x, x) {
            Ok(p) if p == x.scale(d) => {}
            Ok(_) => {
                fail = Some(format!("E_T² ≠ E_T for T = {t}"));
                break;
            }
            Err(err) => {
                fail = Some(err);
                break;
            }
        }
    }
    match fail {
        Some(detail) => report.record_with("E_T² = E_T", "idempotents", false, detail),
        None => report.record_with("E_T² = E_T", "idempotents", true, format!("{} idempotents", all.len())),
    }

    let mut fail = None;
    'outer: for (i, (t, _)) in all.iter().enumerate() {
        for (j, (t2, _)) in all.iter().enumerate() {
            if i == j {
                continue;
            }
            match product(&cleared[i].1, &cleared[j].1) {
                Ok(p) if p.is_zero() => {}
                Ok(_) => {
                    fail = Some(format!("E_T E_T' ≠ 0 for T = {t}, T' = {t2}"));
                    break 'outer;
                }
                Err(err) => {
                    fail = Some(err);
                    break 'outer;
                }
            }
        }
    }
    let pairs = all.len() * all.len().saturating_sub(1);
    record(&mut report, "E_T E_T' = 0 for T ≠ T'", "orthogonality", fail, pairs);

    let sum = all.iter().fold(h.zero(), |acc, (_, e)| &acc + *e);
    let fail = (sum != h.identity()).then(|| "the idempotents do not sum to 1".to_string());
    record(&mut report, "Σ_T E_T = 1", "completeness", fail, 1);

    let mut fail = None;
    for (w, ts, es) in &blocks {
        for (t, e) in ts.iter().zip(es) {
            match iota_l_gamma(&h, e, gamma) {
                Ok(v) if v == w.wtilde => {}
                Ok(v) => {
                    fail = Some(format!("T = {t}: {v} vs {}", w.wtilde));
                    break;
                }
                Err(err) => {
                    fail = Some(err.to_string());
                    break;
                }
            }
        }
    }
    record(&mut report, "ι(L^γ)(E_T) = w̃_λ", "weights through the fusion formula", fail, all.len());

    let total: ScalarValue = blocks
        .iter()
        .map(|(w, ts, _)| &w.w * &ScalarValue::int(ts.len() as i64))
        .sum();
    let g0n = gamma.value(&h, 0).powi(n as i32);
    let fail = (total != g0n).then(|| format!("Σ dim(λ) w_λ = {total}"));
    record(&mut report, "Σ_λ dim(λ) w_λ = γ_0^n", "sum rule for the weights", fail, shapes.len());

    if *gamma == Gamma::circ() {
        let fail = blocks
            .iter()
            .find(|(w, _, _)| w.w != cancellation_free_weight(&w.lambda))
            .map(|(w, _, _)| format!("λ = {}", w.lambda));
        record(
            &mut report,
            "w_λ(γ°) equals the cancellation-free product",
            "Schur elements of the canonical symmetrizing form",
            fail,
            shapes.len(),
        );
    }
    report
}
