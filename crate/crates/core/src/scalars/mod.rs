//! Exact coefficients: Laurent polynomials over ℚ in `q`, `v_1..v_m` and adjoined
//! parameter slots, their fraction field, and the specialization to cyclotomic
//! numbers.

mod cyclo;
mod dense;
mod gcd;
mod heu;
mod monomial;
mod parse;
mod poly;
mod value;
mod var;

pub use cyclo::{cyclotomic_poly, specialize_group, specialize_scalar, Cyclotomic};
pub use gcd::{content_in, gcd};
pub use monomial::Monomial;
pub use parse::parse_scalar;
pub use poly::{Coeff, LaurentPoly};
pub use value::{normalize_unit, ScalarValue};
pub use var::{Var, VariableTable};

pub use poly::rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of order {order} in slot {slot} survives cancellation")]
    Pole { slot: Var, order: usize },
    #[error("cannot substitute {0} by an expression containing it")]
    SelfSubstitution(Var),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("slot {0} is not allowed here")]
    ForeignSlot(Var),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

/// Ring involution of the ground ring: `q ↦ q⁻¹`, `v_j ↦ v_j⁻¹`, and the
/// formal exchange `γ_a ↔ γ̄_a` of adjoined central-form parameters.
pub fn bar(x: &ScalarValue) -> ScalarValue {
    x.map_monomials(|m| {
        m.map(|v, e| match v {
            Var::Q | Var::V(_) => (v, -e),
            Var::Gamma(a) => (Var::GammaBar(a), e),
            Var::GammaBar(a) => (Var::Gamma(a), e),
            other => (other, e),
        })
    })
}

/// Coefficients `a_0..a_{m-1}` of `(ρ - v_1)…(ρ - v_m) = ρ^m + a_{m-1}ρ^{m-1} + … + a_0`.
pub fn char_poly_coeffs(m: usize) -> Vec<ScalarValue> {
    // ascending coefficients of the running product, leading 1 implicit at the end
    let mut p: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for j in 1..=m {
        let vj = LaurentPoly::var(Var::V(j as u16));
        let mut next = vec![LaurentPoly::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &vj);
        }
        p = next;
    }
    p.truncate(m);
    p.into_iter().map(ScalarValue::from).collect()
}
