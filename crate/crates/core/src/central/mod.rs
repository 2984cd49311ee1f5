//! Central forms that are multiplicative along the inductive basis, their
//! weights through the fusion formula, and the non-degeneracy criterion.
//!
//! For a functional `γ` on polynomials in `τ`, with `γ_a = γ(τ^a)`, the form
//! `L^γ_n` is defined on basis words by
//!
//! ```text
//! L^γ_n(t_{j,a} u) = δ_{j, n−1} γ_a L^γ_{n−1}(u),     L^γ_0(1) = 1,
//! ```
//!
//! so it is nonzero only on words whose every layer is `σ_{k−1}⁻¹⋯σ_1⁻¹τ^aσ_1⋯σ_{k−1}`.

mod fusion;
mod tableaux;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hecke::{AlgebraSignature, BasisWord, Generator, GeneratorWord, HElement, Hecke, HeckeError};
use crate::report::Report;
use crate::scalars::{bar, ScalarError, ScalarValue, Var};
use crate::traces::{markov_trace, TraceParams};

pub use fusion::{
    cancellation_free_weight, char_tail, criterion, f_lambda, f_lambda_hooks, f_lambda_products, fusion_idempotent,
    nondegeneracy_check, tau_rho, verify_fusion, weights, baxterized_sigma, Nondegeneracy, Weights, Witness,
};
pub use tableaux::{partitions, MNode, MTableau, MultiPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentralError {
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("closed forms disagree: {0}")]
    Formula(String),
}

/// The values `γ_a`. Entries that are not set are either the indeterminate
/// `γ_a` ([`Var::Gamma`]) or zero, depending on how the functional was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gamma {
    pub values: BTreeMap<i64, ScalarValue>,
    pub unset_generic: bool,
}

impl Gamma {
    /// Every `γ_a` an indeterminate.
    pub fn generic() -> Self {
        Gamma {
            values: BTreeMap::new(),
            unset_generic: true,
        }
    }

    /// `γ°`: `γ_0 = 1`, all other `γ_a = 0`.
    pub fn circ() -> Self {
        Gamma {
            values: BTreeMap::from([(0, ScalarValue::one())]),
            unset_generic: false,
        }
    }

    /// Given values; the remaining ones stay indeterminate.
    pub fn from_values(values: impl IntoIterator<Item = (i64, ScalarValue)>) -> Self {
        Gamma {
            values: values.into_iter().collect(),
            unset_generic: true,
        }
    }

    pub fn with(mut self, a: i64, value: ScalarValue) -> Self {
        self.values.insert(a, value);
        self
    }

    fn base(&self, a: i64) -> ScalarValue {
        match self.values.get(&a) {
            Some(v) => v.clone(),
            None if self.unset_generic => ScalarValue::var(Var::Gamma(a as i32)),
            None => ScalarValue::zero(),
        }
    }

    /// `γ_a`; for finite `m` and `a ∉ {0, …, m−1}`, `τ^a` is reduced first.
    pub fn value(&self, h: &Hecke, a: i64) -> ScalarValue {
        h.tau_power(a).iter().map(|(e, r)| r * &self.base(*e)).sum()
    }

    /// `γ_0, …, γ_{m−1}`.
    pub fn values_up_to(&self, m: usize) -> Vec<ScalarValue> {
        (0..m as i64).map(|a| self.base(a)).collect()
    }
}

/// `Σ_w c_w ∏_k [j_k = k−1] factor(k, a_k)` over the terms of `x`, where
/// `(j_k, a_k)` is the layer of `w` at level `k`.
pub fn layered_form(x: &HElement, factor: impl Fn(usize, i64) -> ScalarValue) -> ScalarValue {
    let n = x.signature().n;
    let mut total = ScalarValue::zero();
    'terms: for (w, c) in x.terms() {
        let mut value = c.clone();
        for (idx, &(j, a)) in w.iter().enumerate() {
            let k = n - idx;
            if j + 1 != k {
                continue 'terms;
            }
            value = &value * &factor(k, a);
        }
        total = &total + &value;
    }
    total
}

fn check(h: &Hecke, x: &HElement) -> Result<(), CentralError> {
    if x.signature() != h.signature() {
        return Err(HeckeError::Mismatch(h.signature(), x.signature()).into());
    }
    Ok(())
}

/// `L^γ_n(x)`.
pub fn l_gamma(h: &Hecke, x: &HElement, gamma: &Gamma) -> Result<ScalarValue, CentralError> {
    check(h, x)?;
    Ok(layered_form(x, |_, a| gamma.value(h, a)))
}

/// `ι(L^γ_n)(x) = ι⁰(L^γ_n(ι(x)))`, with `ι⁰` the bar involution of the ground ring.
pub fn iota_l_gamma(h: &Hecke, x: &HElement, gamma: &Gamma) -> Result<ScalarValue, CentralError> {
    check(h, x)?;
    Ok(bar(&l_gamma(h, &h.iota(x)?, gamma)?))
}

/// The form with a separate functional at every level: `gammas[k−1]` is used at level `k`.
pub fn level_form(h: &Hecke, x: &HElement, gammas: &[Gamma]) -> Result<ScalarValue, CentralError> {
    check(h, x)?;
    if gammas.len() < h.n() {
        return Err(CentralError::Input(format!("need {} functionals, got {}", h.n(), gammas.len())));
    }
    Ok(layered_form(x, |k, a| gammas[k - 1].value(h, a)))
}

fn generators(n: usize) -> Vec<Generator> {
    let mut out = vec![Generator::Tau, Generator::TauInv];
    out.extend((1..n).map(Generator::Sigma));
    out
}

fn record_sweep<T>(
    report: &mut Report,
    name: &str,
    anchor: &str,
    items: impl IntoIterator<Item = T>,
    label: impl Fn(&T) -> String,
    mut f: impl FnMut(&T) -> Result<bool, CentralError>,
) {
    let mut count = 0;
    for item in items {
        count += 1;
        match f(&item) {
            Ok(true) => {}
            Ok(false) => return report.record_with(name, anchor, false, format!("fails at {}", label(&item))),
            Err(e) => return report.record_with(name, anchor, false, format!("error at {}: {e}", label(&item))),
        }
    }
    report.record_with(name, anchor, true, crate::report::cases(count));
}

/// `L(gx) = L(xg)` for every generator `g` and basis word `x`, and
/// `L(ϖ(x)) = L(x)` on basis words, for the form `L^γ`.
pub fn verify_centrality(sig: AlgebraSignature, gamma: &Gamma) -> Report {
    let h = Hecke::new(sig);
    verify_centrality_with(sig, &|x| l_gamma(&h, x, gamma))
}

/// As [`verify_centrality`], for an arbitrary linear form.
pub fn verify_centrality_with(
    sig: AlgebraSignature,
    form: &dyn Fn(&HElement) -> Result<ScalarValue, CentralError>,
) -> Report {
    let h = Hecke::new(sig);
    let mut report = Report::new(format!("central form on {sig}"));
    let basis = h.basis_window(1);
    let gens = generators(sig.n);
    let items = gens.iter().flat_map(|g| basis.iter().map(move |w| (*g, w)));
    record_sweep(
        &mut report,
        "L(gx) = L(xg)",
        "centrality against every generator",
        items,
        |(g, w)| format!("g = {g}, x = {w}"),
        |&(g, w)| {
            let x = h.basis_element(w)?;
            Ok(form(&h.left_mul_generator(g, &x)?)? == form(&h.right_mul_generator(&x, g)?)?)
        },
    );
    record_sweep(
        &mut report,
        "L(ϖ(x)) = L(x)",
        "invariance under the anti-involution fixing the generators",
        basis.iter(),
        |w| format!("x = {w}"),
        |w| {
            let x = h.basis_element(w)?;
            Ok(form(&h.varpi(&x)?)? == form(&x)?)
        },
    );
    report
}

/// The basis `𝓑^γ` (labelled by layers) and the value of `L^γ` on each of its elements.
pub fn bgamma_evaluation(h: &Hecke, gamma: &Gamma) -> Result<Vec<(BasisWord, ScalarValue)>, CentralError> {
    let m = h.m().ok_or(HeckeError::Unsupported("the γ-basis needs finite m"))?;
    let values = gamma.values_up_to(m);
    h.basis()?
        .into_iter()
        .map(|w| {
            let x = h.bgamma_element(&w, &values)?;
            let v = l_gamma(h, &x, gamma)?;
            Ok((w, v))
        })
        .collect()
}

/// Multiplicativity of `L^γ` along `𝓑⁺` and quasi-symmetry of `𝓑^γ`:
/// `L^γ` is `γ_0^n` on `1` and zero on every other element of `𝓑^γ`.
pub fn verify_bases(sig: AlgebraSignature, gamma: &Gamma) -> Report {
    let h = Hecke::new(sig);
    let mut report = Report::new(format!("L^γ on alternative bases of {sig}"));
    let basis = h.basis_window(1);
    record_sweep(
        &mut report,
        "L(t⁺_{j,a} u) = δ γ_a L(u)",
        "multiplicativity along the positive basis",
        basis.iter(),
        |w| format!("{w}"),
        |w| {
            let x = h.bplus_element(w)?;
            let expected = layered_form(&h.basis_element(w)?, |_, a| gamma.value(&h, a));
            Ok(l_gamma(&h, &x, gamma)? == expected)
        },
    );
    if sig.m.is_none() {
        return report;
    }
    match bgamma_evaluation(&h, gamma) {
        Ok(values) => {
            let identity = BasisWord::identity(sig.n);
            let g0n = gamma.value(&h, 0).powi(sig.n as i32);
            let bad = values
                .iter()
                .find(|(w, v)| if *w == identity { *v != g0n } else { !v.is_zero() });
            report.record_with(
                "L^γ on 𝓑^γ is γ_0^n on 1 and 0 elsewhere",
                "quasi-symmetric basis",
                bad.is_none(),
                match bad {
                    Some((w, v)) => format!("value {v} at {w}"),
                    None => format!("{} basis elements", values.len()),
                },
            );
        }
        Err(e) => report.record_with("L^γ on 𝓑^γ", "quasi-symmetric basis", false, e.to_string()),
    }
    report
}

/// Identification of `L^γ` (with `γ_0 = 1`) with Markov traces built from
/// relative traces, on every basis word:
///
/// * `L^γ = Tr` with `D = 0`, `μ_a = γ_a`;
/// * `ι(L^γ) = Tr` with `D = q − q⁻¹`, `μ_a = ι⁰(γ_{−a})`, i.e. `ι(L^γ)` vanishes on
///   `σ_{k−1}⁻¹x` rather than on `σ_{k−1}x`.
///
/// Also checks, for `k = 2, …, n` and `x ∈ H(m,1,k−1)`, `L^γ(σ_{k−1}x) = 0` and
/// `L^γ(σ_{k−1}⋯σ_1τ^aσ_1⁻¹⋯σ_{k−1}⁻¹x) = γ_a L^γ(x)`.
pub fn verify_markov_identification(sig: AlgebraSignature, gamma: &Gamma) -> Report {
    let gamma = gamma.clone().with(0, ScalarValue::one());
    let h = Hecke::new(sig);
    let mut report = Report::new(format!("L^γ and ι(L^γ) as Markov traces on {sig}"));
    let exps: Vec<i64> = match sig.m {
        Some(m) => (0..m as i64).collect(),
        None => (-2..=2).collect(),
    };
    let mut plain = TraceParams::generic().with_d(ScalarValue::zero());
    let mut twisted = TraceParams::generic().with_d(ScalarValue::qdiff());
    for &a in &exps {
        plain = plain.with_mu(a, gamma.value(&h, a));
        twisted = twisted.with_mu(a, bar(&gamma.value(&h, -a)));
    }
    // affine words are only compared inside the exponent window, where the
    // trace parameters are fixed
    let basis = h.basis_window(1);
    record_sweep(
        &mut report,
        "L^γ(x) = Tr(x) with D = 0, μ_a = γ_a",
        "the central form is a Markov trace",
        basis.iter(),
        |w| format!("{w}"),
        |w| {
            let x = h.basis_element(w)?;
            Ok(l_gamma(&h, &x, &gamma)? == markov_trace(&h, &x, &plain)?)
        },
    );
    record_sweep(
        &mut report,
        "ι(L^γ)(x) = Tr(x) with D = q − q^-1, μ_a = ι⁰(γ_-a)",
        "the twisted central form is a Markov trace",
        basis.iter(),
        |w| format!("{w}"),
        |w| {
            let x = h.basis_element(w)?;
            Ok(iota_l_gamma(&h, &x, &gamma)? == markov_trace(&h, &x, &twisted)?)
        },
    );
    for k in 2..=sig.n {
        let lower = Hecke::new(sig.with_n(k - 1));
        let lower_basis = lower.basis_window(1);
        let lift = |x: &HElement| -> Result<HElement, CentralError> {
            let mut x = x.clone();
            let mut cur = lower.clone();
            while cur.n() < sig.n {
                x = cur.embed(&x)?;
                cur = cur.upper();
            }
            Ok(x)
        };
        record_sweep(
            &mut report,
            &format!("L^γ(σ{} x) = 0", k - 1),
            "the central form vanishes on σ_{k−1}x",
            lower_basis.iter(),
            |w| format!("x = {w}"),
            |w| {
                let x = lift(&lower.basis_element(w)?)?;
                let top = h.generator(Generator::Sigma(k - 1))?;
                Ok(l_gamma(&h, &h.multiply(&top, &x)?, &gamma)?.is_zero())
            },
        );
        let items = exps.iter().flat_map(|&a| lower_basis.iter().map(move |w| (a, w)));
        record_sweep(
            &mut report,
            &format!("L^γ(σ{0}…σ1 τ^a σ1^-1…σ{0}^-1 x) = γ_a L^γ(x)", k - 1),
            "values on conjugated powers of τ",
            items,
            |(a, w)| format!("a = {a}, x = {w}"),
            |&(a, w)| {
                let mut letters: Vec<Generator> = (1..k).rev().map(Generator::Sigma).collect();
                let t = if a >= 0 { Generator::Tau } else { Generator::TauInv };
                letters.extend(std::iter::repeat_n(t, a.unsigned_abs() as usize));
                letters.extend((1..k).map(Generator::SigmaInv));
                let y = h.from_word(&GeneratorWord(letters))?;
                let x = lift(&lower.basis_element(w)?)?;
                let lhs = l_gamma(&h, &h.multiply(&y, &x)?, &gamma)?;
                Ok(lhs == &gamma.value(&h, a) * &l_gamma(&h, &x, &gamma)?)
            },
        );
    }
    report
}
