//! Explicit matrix representations and the induction functor from
//! `H(m,1,n−1)`-modules to `H(m,1,n)`-modules.
//!
//! The induced module is `V ⊗ E_m ⊗ M` with `V` free on `w_0, …, w_{n−1}` and
//! `E_m = 𝒜_m[z]/⟨χ⟩` on the monomials `1, z, …, z^{m−1}`. The flat index of
//! `w_j ⊗ z^e ⊗ u` is `(j·m + e)·d + u`, so `u` runs fastest, then `e`, then `j`.
//! With this order the regular representation lines up with the inductive
//! basis of the algebra.

mod matrix;

use serde::Serialize;

use crate::hecke::{AlgebraSignature, Generator, Hecke, HeckeError};
use crate::report::Report;
use crate::scalars::{char_poly_coeffs, ScalarValue};

pub use matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    #[serde(serialize_with = "sig_text")]
    pub sig: AlgebraSignature,
    pub tau: Matrix,
    /// `σ_1, …, σ_{n−1}`.
    pub sigmas: Vec<Matrix>,
}

fn sig_text<S: serde::Serializer>(s: &AlgebraSignature, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.tau.rows()
    }

    /// The module `𝒜_m` of `H(m,1,0)`.
    pub fn trivial(m: usize) -> Self {
        Representation {
            sig: AlgebraSignature::finite(m, 0),
            tau: Matrix::identity(1),
            sigmas: Vec::new(),
        }
    }

    /// The one-dimensional module of `H(m,1,n)` with `σ_i ↦ q` and `τ ↦ v_e`.
    pub fn one_dimensional(m: usize, n: usize, e: usize) -> Result<Self, HeckeError> {
        if e == 0 || e > m {
            return Err(HeckeError::Index(format!("e = {e} outside 1..={m}")));
        }
        let tau = if n == 0 {
            ScalarValue::one()
        } else {
            ScalarValue::v(e)
        };
        Ok(Representation {
            sig: AlgebraSignature::finite(m, n),
            tau: Matrix::scalar(1, &tau),
            sigmas: (1..n)
                .map(|_| Matrix::scalar(1, &ScalarValue::q()))
                .collect(),
        })
    }

    pub fn generator(&self, g: Generator) -> Matrix {
        let d = self.dim();
        match g {
            Generator::Tau => self.tau.clone(),
            Generator::TauInv => tau_inverse(&self.tau, self.sig.m.expect("finite m")),
            Generator::Sigma(i) => self.sigmas[i - 1].clone(),
            Generator::SigmaInv(i) => {
                &self.sigmas[i - 1] - &Matrix::scalar(d, &ScalarValue::qdiff())
            }
        }
    }

    /// Block-diagonal sum of two modules of the same algebra.
    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        Representation {
            sig: self.sig,
            tau: self.tau.direct_sum(&other.tau),
            sigmas: self
                .sigmas
                .iter()
                .zip(&other.sigmas)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }
}

/// `τ⁻¹ = −(1/a_0)(τ^{m−1} + a_{m−1}τ^{m−2} + … + a_1)`.
fn tau_inverse(tau: &Matrix, m: usize) -> Matrix {
    let a = char_poly_coeffs(m);
    let d = tau.rows();
    let mut acc = Matrix::identity(d);
    for i in (1..m).rev() {
        acc = &(&acc * tau) + &Matrix::scalar(d, &a[i]);
    }
    // acc = τ^{m−1} + a_{m−1}τ^{m−2} + … + a_1 after Horner
    acc.scale(&-&a[0].inv())
}

/// Coefficients of `z^c` on `1, …, z^{m−1}` in `E_m`, for `c = 0, …, top`.
fn powers_mod_chi(m: usize, top: usize) -> Vec<Vec<ScalarValue>> {
    let a = char_poly_coeffs(m);
    let mut cur = vec![ScalarValue::zero(); m];
    cur[0] = ScalarValue::one();
    let mut out = vec![cur.clone()];
    for _ in 0..top {
        let lead = cur[m - 1].clone();
        let mut next = vec![ScalarValue::zero(); m];
        for i in (1..m).rev() {
            next[i] = &cur[i - 1] - &(&lead * &a[i]);
        }
        next[0] = -(&lead * &a[0]);
        cur = next;
        out.push(cur.clone());
    }
    out
}

/// The induced module `V ⊗ E_m ⊗ M` of `H(m,1,n)` from a module `M` of `H(m,1,n−1)`.
pub fn induce(rep: &Representation) -> Result<Representation, HeckeError> {
    let m = rep
        .sig
        .m
        .ok_or(HeckeError::Unsupported("induction needs finite m"))?;
    let n = rep.sig.n + 1;
    let d = rep.dim();
    let dim = n * m * d;
    let idx = |j: usize, e: usize, u: usize| (j * m + e) * d + u;
    let qd = ScalarValue::qdiff();

    let mut sigmas = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut f = Matrix::zero(dim, dim);
        for j in 0..n {
            for e in 0..m {
                for u in 0..d {
                    let col = idx(j, e, u);
                    if j + 1 < i || j > i {
                        let s = if j + 1 < i {
                            &rep.sigmas[i - 2]
                        } else {
                            &rep.sigmas[i - 1]
                        };
                        for v in 0..d {
                            let x = s.get(v, u);
                            if !x.is_zero() {
                                f.set(idx(j, e, v), col, x.clone());
                            }
                        }
                    } else if j + 1 == i {
                        f.set(idx(i - 1, e, u), col, qd.clone());
                        f.set(idx(i, e, u), col, ScalarValue::one());
                    } else {
                        f.set(idx(i - 1, e, u), col, ScalarValue::one());
                    }
                }
            }
        }
        sigmas.push(f);
    }

    let pw = powers_mod_chi(m, m);
    let mut tau_pows = vec![Matrix::identity(d)];
    for e in 1..m {
        tau_pows.push(&tau_pows[e - 1] * &rep.tau);
    }
    // β_j = σ_{j−1}⁻¹ ⋯ σ_1⁻¹ on M
    let mut betas = vec![Matrix::identity(d), Matrix::identity(d)];
    for j in 2..n {
        let inv = &rep.sigmas[j - 2] - &Matrix::scalar(d, &qd);
        betas.push(&inv * &betas[j - 1]);
    }
    let mut tau = Matrix::zero(dim, dim);
    for j in 0..n {
        for e in 0..m {
            let shifted = &pw[e + 1];
            for u in 0..d {
                let col = idx(j, e, u);
                if j == 0 {
                    for (f, c) in shifted.iter().enumerate() {
                        if !c.is_zero() {
                            tau.add_at(idx(0, f, u), col, c);
                        }
                    }
                    continue;
                }
                let bt = &betas[j] * &tau_pows[e];
                for v in 0..d {
                    for f in 0..m {
                        let plus = &pw[1][f] * bt.get(v, u);
                        let minus = &shifted[f] * betas[j].get(v, u);
                        let x = &qd * &(&plus - &minus);
                        if !x.is_zero() {
                            tau.add_at(idx(0, f, v), col, &x);
                        }
                    }
                    let x = rep.tau.get(v, u);
                    if !x.is_zero() {
                        tau.add_at(idx(j, e, v), col, x);
                    }
                }
            }
        }
    }
    Ok(Representation {
        sig: rep.sig.with_n(n),
        tau,
        sigmas,
    })
}

/// The Burau-type module `V ⊗ E_m` of `H(m,1,n)`, induced from the
/// one-dimensional module with `σ_i ↦ q`, `τ ↦ v_e` of `H(m,1,n−1)`.
pub fn burau(sig: AlgebraSignature, e: usize) -> Result<Representation, HeckeError> {
    let m = sig
        .m
        .ok_or(HeckeError::Unsupported("the Burau module needs finite m"))?;
    if sig.n == 0 {
        return Err(HeckeError::Shape("n must be positive".into()));
    }
    induce(&Representation::one_dimensional(m, sig.n - 1, e)?)
}

/// The left regular module, by `n`-fold induction from `𝒜_m`.
pub fn regular_rep(sig: AlgebraSignature) -> Result<Representation, HeckeError> {
    let m = sig
        .m
        .ok_or(HeckeError::Unsupported("the regular module needs finite m"))?;
    let mut rep = Representation::trivial(m);
    for _ in 0..sig.n {
        rep = induce(&rep)?;
    }
    Ok(rep)
}

/// Left multiplication matrices of the algebra on its inductive basis, in basis order.
pub fn left_regular_matrices(h: &Hecke) -> Result<Representation, HeckeError> {
    let to_matrix = |g| h.left_matrix(g).map(Matrix::from_rows);
    Ok(Representation {
        sig: h.signature(),
        tau: to_matrix(Generator::Tau)?,
        sigmas: (1..h.n())
            .map(|i| to_matrix(Generator::Sigma(i)))
            .collect::<Result<_, _>>()?,
    })
}

/// Every defining relation as a matrix identity.
pub fn check_relations(rep: &Representation) -> Report {
    let mut report = Report::new(format!(
        "relations of {} on dimension {}",
        rep.sig,
        rep.dim()
    ));
    let n = rep.sig.n;
    let d = rep.dim();
    let s = |i: usize| &rep.sigmas[i - 1];
    let qd = ScalarValue::qdiff();
    for i in 1..n.saturating_sub(1) {
        let l = &(s(i) * s(i + 1)) * s(i);
        let r = &(s(i + 1) * s(i)) * s(i + 1);
        report.record(
            format!("braid σ{i}σ{}σ{i}", i + 1),
            "braid relation",
            l == r,
        );
    }
    for i in 1..n {
        for j in i + 2..n {
            report.record(
                format!("σ{i}σ{j} = σ{j}σ{i}"),
                "distant generators commute",
                s(i) * s(j) == s(j) * s(i),
            );
        }
    }
    if n >= 2 {
        let t = &rep.tau;
        let l = &(&(t * s(1)) * t) * s(1);
        let r = &(&(s(1) * t) * s(1)) * t;
        report.record("τσ1τσ1 = σ1τσ1τ", "type B braid relation", l == r);
    }
    for i in 2..n {
        report.record(
            format!("τσ{i} = σ{i}τ"),
            "τ commutes with σ_i, i > 1",
            &rep.tau * s(i) == s(i) * &rep.tau,
        );
    }
    for i in 1..n {
        let lhs = s(i) * s(i);
        let rhs = &s(i).scale(&qd) + &Matrix::identity(d);
        report.record(
            format!("σ{i}² = (q−q⁻¹)σ{i} + 1"),
            "quadratic relation",
            lhs == rhs,
        );
    }
    if let (Some(m), true) = (rep.sig.m, n >= 1) {
        let mut acc = Matrix::identity(d);
        for j in 1..=m {
            acc = &acc * &(&rep.tau - &Matrix::scalar(d, &ScalarValue::v(j)));
        }
        report.record("(τ−v1)⋯(τ−vm) = 0", "cyclotomic relation", acc.is_zero());
    }
    report
}
