//! Relative traces `Tr_k : H(m,1,k) → H(m,1,k−1)` and the Markov trace they compose to.
//!
//! On the inductive basis, with top layer `(j, a)` at level `k` and lower word `u`:
//!
//! * `Tr_k(t_{j,a} u) = D · t'_{j,a} u` for `j < k−1`, where `t'_{j,a}` is the
//!   same layer read one level down;
//! * `Tr_k(t_{k−1,a} u) = μ_a · u`.
//!
//! `D` and `μ_a` may be concrete scalars or the indeterminate slots
//! [`Var::D`] and [`Var::Mu`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hecke::{AlgebraSignature, BasisWord, Generator, GeneratorWord, HElement, Hecke, HeckeError};
use crate::report::Report;
use crate::sample::index_pairs;
use crate::scalars::{ScalarValue, Var};

/// Parameters `D` and `μ_a` of the relative traces. `μ_0 = 1` always; any
/// `μ_a` left unset is the indeterminate `μ_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceParams {
    pub d: ScalarValue,
    pub mu: BTreeMap<i64, ScalarValue>,
}

impl Default for TraceParams {
    fn default() -> Self {
        Self::generic()
    }
}

impl TraceParams {
    /// `D` and every `μ_a` adjoined as indeterminates.
    pub fn generic() -> Self {
        TraceParams {
            d: ScalarValue::var(Var::D),
            mu: BTreeMap::new(),
        }
    }

    pub fn new(d: ScalarValue, mu: impl IntoIterator<Item = (i64, ScalarValue)>) -> Self {
        TraceParams {
            d,
            mu: mu.into_iter().filter(|(a, _)| *a != 0).collect(),
        }
    }

    pub fn with_d(mut self, d: ScalarValue) -> Self {
        self.d = d;
        self
    }

    pub fn with_mu(mut self, a: i64, value: ScalarValue) -> Self {
        if a != 0 {
            self.mu.insert(a, value);
        }
        self
    }

    fn base_mu(&self, a: i64) -> ScalarValue {
        if a == 0 {
            return ScalarValue::one();
        }
        self.mu
            .get(&a)
            .cloned()
            .unwrap_or_else(|| ScalarValue::var(Var::Mu(a as i32)))
    }

    /// `μ_a = Tr₁(τ^a)`; for finite `m` and `a ∉ {0, …, m−1}` this reduces
    /// `τ^a` through the characteristic polynomial first.
    pub fn mu(&self, h: &Hecke, a: i64) -> ScalarValue {
        h.tau_power(a)
            .iter()
            .map(|(e, r)| r * &self.base_mu(*e))
            .sum()
    }
}

/// A family of linear maps `H(m,1,k) → H(m,1,k−1)`, one per `k ≥ 1`.
///
/// [`TraceParams`] is the canonical implementation; the trait exists so the
/// verification routines can be pointed at a deliberately broken map.
pub trait RelativeTrace {
    /// `Tr_k(x)` for `x` in `h = H(m,1,k)`; the result lives in `h.lower()`.
    fn relative(&self, h: &Hecke, x: &HElement) -> Result<HElement, HeckeError>;

    /// `Tr₁ ∘ ⋯ ∘ Tr_n (x)`.
    fn full(&self, h: &Hecke, x: &HElement) -> Result<ScalarValue, HeckeError> {
        let mut h = h.clone();
        let mut x = x.clone();
        while h.n() > 0 {
            x = self.relative(&h, &x)?;
            h = h.lower();
        }
        Ok(x.coeff(&BasisWord::identity(0)))
    }
}

impl RelativeTrace for TraceParams {
    fn relative(&self, h: &Hecke, x: &HElement) -> Result<HElement, HeckeError> {
        relative_trace(h, x, self)
    }
}

/// `Tr_k(x)` for `x ∈ H(m,1,k)`, `k = h.n() ≥ 1`.
pub fn relative_trace(h: &Hecke, x: &HElement, params: &TraceParams) -> Result<HElement, HeckeError> {
    let k = h.n();
    if k == 0 {
        return Err(HeckeError::Shape("the relative trace needs k ≥ 1".into()));
    }
    if x.signature() != h.signature() {
        return Err(HeckeError::Mismatch(h.signature(), x.signature()));
    }
    let lower = h.lower();
    let mut out = lower.zero();
    for (w, c) in x.terms() {
        let (j, a) = w[0];
        let u = lower.basis_element(&BasisWord { layers: w[1..].to_vec() })?;
        let term = if j + 1 == k {
            u.scale(&(c * &params.mu(h, a)))
        } else {
            lower.layer_product((j, a), &u)?.scale(&(c * &params.d))
        };
        out = &out + &term;
    }
    Ok(out)
}

/// `Tr(x) = Tr₁ ∘ ⋯ ∘ Tr_n (x)`.
pub fn markov_trace(h: &Hecke, x: &HElement, params: &TraceParams) -> Result<ScalarValue, HeckeError> {
    params.full(h, x)
}

fn word_element(h: &Hecke, letters: Vec<Generator>) -> Result<HElement, HeckeError> {
    h.from_word(&GeneratorWord(letters))
}

fn tau_letters(a: i64) -> impl Iterator<Item = Generator> {
    let g = if a >= 0 { Generator::Tau } else { Generator::TauInv };
    std::iter::repeat_n(g, a.unsigned_abs() as usize)
}

/// Generators of `H(m,1,k−1)` together with `1`, as elements of `H(m,1,k)`.
fn lower_generators(k: usize) -> Vec<Option<Generator>> {
    let mut out = vec![None];
    if k >= 2 {
        out.push(Some(Generator::Tau));
        out.push(Some(Generator::TauInv));
        out.extend((1..k - 1).map(|i| Some(Generator::Sigma(i))));
    }
    out
}

fn exponents(h: &Hecke) -> Vec<i64> {
    match h.m() {
        Some(m) => (0..m as i64).collect(),
        None => (-2..=2).collect(),
    }
}

/// Runs `f` over `items` and records one check: passed iff every call returns `true`.
/// Errors count as failures; the first failing item goes into the detail.
fn sweep<T>(
    report: &mut Report,
    name: impl Into<String>,
    anchor: &str,
    items: impl IntoIterator<Item = T>,
    label: impl Fn(&T) -> String,
    mut f: impl FnMut(&T) -> Result<bool, HeckeError>,
) {
    let mut count = 0;
    for item in items {
        count += 1;
        match f(&item) {
            Ok(true) => {}
            Ok(false) => {
                report.record_with(name, anchor, false, format!("fails at {}", label(&item)));
                return;
            }
            Err(e) => {
                report.record_with(name, anchor, false, format!("error at {}: {e}", label(&item)));
                return;
            }
        }
    }
    report.record_with(name, anchor, true, crate::report::cases(count));
}

fn basis_of(h: &Hecke) -> Vec<BasisWord> {
    h.basis_window(1)
}

fn opt_gen(g: &Option<Generator>) -> String {
    g.map(|g| g.to_string()).unwrap_or_else(|| "1".into())
}

/// The defining conditions of the relative traces at level `k = sig.n`,
/// exhaustively over basis words, plus the initial values at level 1 and the
/// two-level identity `Tr₁Tr₂(σ₁⁻¹τ^aσ₁τ^bσ₁) = D μ_{a+b}`.
pub fn verify_trace_axioms(sig: AlgebraSignature, params: &TraceParams) -> Report {
    verify_trace_axioms_for(sig, params, params)
}

/// As [`verify_trace_axioms`], for an arbitrary family of maps `tr`; `params`
/// supplies the expected values of `D` and `μ_a`.
pub fn verify_trace_axioms_for(sig: AlgebraSignature, params: &TraceParams, tr: &dyn RelativeTrace) -> Report {
    let k = sig.n;
    let mut report = Report::new(format!("relative traces on {sig}"));
    let h1 = Hecke::new(sig.with_n(1));
    sweep(
        &mut report,
        "Tr1(τ^a) = μ_a",
        "initial values of Tr_1",
        exponents(&h1),
        |a| format!("a = {a}"),
        |&a| {
            let x = word_element(&h1, tau_letters(a).collect())?;
            Ok(tr.relative(&h1, &x)? == h1.lower().scalar(params.mu(&h1, a)))
        },
    );
    if k < 2 {
        return report;
    }
    let h = Hecke::new(sig);
    let lower = h.lower();
    let basis = basis_of(&h);
    let lower_basis = basis_of(&lower);
    let top = Generator::Sigma(k - 1);
    let top_inv = Generator::SigmaInv(k - 1);

    report.record(
        format!("Tr{k}(1) = 1"),
        "unit is preserved",
        tr.relative(&h, &h.identity()).is_ok_and(|x| x == lower.identity()),
    );
    report.record(
        format!("Tr{k}(σ{}) = D", k - 1),
        "value on the new generator",
        h.generator(top)
            .and_then(|s| tr.relative(&h, &s))
            .is_ok_and(|x| x == lower.scalar(params.d.clone())),
    );

    let gens = lower_generators(k);
    let gens = &gens;
    let triples = basis
        .iter()
        .flat_map(|z| gens.iter().flat_map(move |x| gens.iter().map(move |y| (z, *x, *y))));
    sweep(
        &mut report,
        format!("Tr{k}(XZY) = X Tr{k}(Z) Y"),
        "bimodule property over the subalgebra",
        triples,
        |(z, x, y)| format!("X = {}, Z = {z}, Y = {}", opt_gen(x), opt_gen(y)),
        |&(z, x, y)| {
            let zel = h.basis_element(z)?;
            let mut lhs = zel.clone();
            let mut rhs = tr.relative(&h, &zel)?;
            if let Some(g) = x {
                lhs = h.left_mul_generator(g, &lhs)?;
                rhs = lower.left_mul_generator(g, &rhs)?;
            }
            if let Some(g) = y {
                lhs = h.right_mul_generator(&lhs, g)?;
                rhs = lower.right_mul_generator(&rhs, g)?;
            }
            Ok(tr.relative(&h, &lhs)? == rhs)
        },
    );

    for (eps, l, r) in [("+1", top, top_inv), ("-1", top_inv, top)] {
        sweep(
            &mut report,
            format!("Tr{k}(σ^ε X σ^-ε) = Tr{}(X), ε = {eps}", k - 1),
            "conjugation by the new generator drops one level",
            lower_basis.iter(),
            |w| format!("X = {w}"),
            |w| {
                let x = lower.basis_element(w)?;
                let conj = h.right_mul_generator(&h.left_mul_generator(l, &lower.embed(&x)?)?, r)?;
                let lhs = tr.relative(&h, &conj)?;
                Ok(lhs == lower.lower().embed(&tr.relative(&lower, &x)?)?)
            },
        );
    }

    sweep(
        &mut report,
        format!("Tr{0}Tr{k}(σZ) = Tr{0}Tr{k}(Zσ)", k - 1),
        "two-step commutation with the new generator",
        basis.iter(),
        |w| format!("Z = {w}"),
        |w| {
            let z = h.basis_element(w)?;
            let a = tr.relative(&lower, &tr.relative(&h, &h.left_mul_generator(top, &z)?)?)?;
            let b = tr.relative(&lower, &tr.relative(&h, &h.right_mul_generator(&z, top)?)?)?;
            Ok(a == b)
        },
    );

    let h2 = Hecke::new(sig.with_n(2));
    let bound = sig.m.map_or(2, |m| m as i64);
    let pairs = (-bound..=bound).flat_map(|a| (-bound..=bound).map(move |b| (a, b)));
    sweep(
        &mut report,
        "Tr1Tr2(σ1^-1 τ^a σ1 τ^b σ1) = D μ_(a+b)",
        "two-level trace of a twisted product",
        pairs,
        |(a, b)| format!("a = {a}, b = {b}"),
        |&(a, b)| {
            let mut letters = vec![Generator::SigmaInv(1)];
            letters.extend(tau_letters(a));
            letters.push(Generator::Sigma(1));
            letters.extend(tau_letters(b));
            letters.push(Generator::Sigma(1));
            let x = word_element(&h2, letters)?;
            Ok(tr.full(&h2, &x)? == &params.d * &params.mu(&h2, a + b))
        },
    );
    report
}

/// Markov properties of `Tr = Tr₁ ∘ ⋯ ∘ Tr_n` on `H(m,1,n)`: normalization,
/// the values on `σ_{n−1}X` and on `σ_{n−1}⋯σ_1τ^aσ_1⁻¹⋯σ_{n−1}⁻¹X` for all
/// basis `X` of `H(m,1,n−1)`, compatibility with the chain, and
/// `Tr(ZZ') = Tr(Z'Z)` on up to `budget` basis pairs (seeded when sampled).
pub fn verify_markov_properties(sig: AlgebraSignature, params: &TraceParams, budget: usize, seed: u64) -> Report {
    let n = sig.n;
    let h = Hecke::new(sig);
    let mut report = Report::new(format!("Markov trace on {sig}"));
    report.record(
        "Tr(1) = 1",
        "normalization",
        markov_trace(&h, &h.identity(), params).is_ok_and(|v| v.is_one()),
    );
    if n >= 1 {
        let lower = h.lower();
        let lower_basis = basis_of(&lower);
        sweep(
            &mut report,
            "Tr(X) is unchanged by the embedding",
            "compatibility with the chain",
            lower_basis.iter(),
            |w| format!("X = {w}"),
            |w| {
                let x = lower.basis_element(w)?;
                Ok(markov_trace(&h, &lower.embed(&x)?, params)? == markov_trace(&lower, &x, params)?)
            },
        );
        if n >= 2 {
            sweep(
                &mut report,
                format!("Tr(σ{} X) = D Tr(X)", n - 1),
                "Markov property",
                lower_basis.iter(),
                |w| format!("X = {w}"),
                |w| {
                    let x = lower.basis_element(w)?;
                    let sx = h.left_mul_generator(Generator::Sigma(n - 1), &lower.embed(&x)?)?;
                    Ok(markov_trace(&h, &sx, params)? == &params.d * &markov_trace(&lower, &x, params)?)
                },
            );
        }
        let items = exponents(&h)
            .into_iter()
            .flat_map(|a| lower_basis.iter().map(move |w| (a, w)));
        sweep(
            &mut report,
            "Tr(σ…σ1 τ^a σ1^-1…σ^-1 X) = μ_a Tr(X)",
            "values on conjugated powers of τ",
            items,
            |(a, w)| format!("a = {a}, X = {w}"),
            |&(a, w)| {
                let mut letters: Vec<Generator> = (1..n).rev().map(Generator::Sigma).collect();
                letters.extend(tau_letters(a));
                letters.extend((1..n).map(Generator::SigmaInv));
                let y = word_element(&h, letters)?;
                let x = lower.basis_element(w)?;
                let lhs = markov_trace(&h, &h.multiply(&y, &lower.embed(&x)?)?, params)?;
                Ok(lhs == &params.mu(&h, a) * &markov_trace(&lower, &x, params)?)
            },
        );
    }
    let basis = basis_of(&h);
    sweep(
        &mut report,
        "Tr(ZZ') = Tr(Z'Z)",
        "trace property",
        index_pairs(basis.len(), budget, seed),
        |&(i, j)| format!("Z = {}, Z' = {}", basis[i], basis[j]),
        |&(i, j)| {
            let z = h.basis_element(&basis[i])?;
            let z2 = h.basis_element(&basis[j])?;
            Ok(markov_trace(&h, &h.multiply(&z, &z2)?, params)? == markov_trace(&h, &h.multiply(&z2, &z)?, params)?)
        },
    );
    report
}

/// `Tr_k(Tr_k(Z)X) = Tr_k(Z)X` and `Tr(ZX) = Tr(Tr_k(Z)X)` for every basis `Z` of
/// `H(m,1,k)` and every generator `X` of `H(m,1,k−1)` (and `X = 1`).
pub fn conditional_expectation_check(sig: AlgebraSignature, params: &TraceParams) -> Report {
    let k = sig.n;
    let mut report = Report::new(format!("conditional expectation on {sig}"));
    if k == 0 {
        return report;
    }
    let h = Hecke::new(sig);
    let lower = h.lower();
    let gens = lower_generators(k);
    let basis = basis_of(&h);
    let items: Vec<(&BasisWord, Option<Generator>)> =
        basis.iter().flat_map(|z| gens.iter().map(move |x| (z, *x))).collect();
    let label = |(z, x): &(&BasisWord, Option<Generator>)| format!("Z = {z}, X = {}", opt_gen(x));
    // Tr_k(Z)·X inside H(m,1,k−1), and Z·X inside H(m,1,k)
    let products = |&(z, x): &(&BasisWord, Option<Generator>)| -> Result<(HElement, HElement), HeckeError> {
        let zel = h.basis_element(z)?;
        let t = relative_trace(&h, &zel, params)?;
        Ok(match x {
            Some(g) => (lower.right_mul_generator(&t, g)?, h.right_mul_generator(&zel, g)?),
            None => (t, zel),
        })
    };
    sweep(
        &mut report,
        format!("Tr{k}(Tr{k}(Z) X) = Tr{k}(Z) X"),
        "relative trace fixes the subalgebra",
        items.iter().copied(),
        label,
        |item| {
            let (tx, _) = products(item)?;
            Ok(relative_trace(&h, &lower.embed(&tx)?, params)? == tx)
        },
    );
    sweep(
        &mut report,
        format!("Tr(ZX) = Tr(Tr{k}(Z) X)"),
        "relative trace is the conditional expectation",
        items.iter().copied(),
        label,
        |item| {
            let (tx, zx) = products(item)?;
            Ok(markov_trace(&h, &zx, params)? == markov_trace(&lower, &tx, params)?)
        },
    );
    report
}
