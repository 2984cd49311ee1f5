//! The cyclotomic field `ℚ[ζ]/Φ_m(ζ)`, the target of the group specialization.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::rat;
use super::{Coeff, LaurentPoly, ScalarError, ScalarValue, Var};

use super::dense::{dense_divrem, dense_mul, dense_sub, trim, Dense};

/// The `m`-th cyclotomic polynomial, dense and ascending.
pub fn cyclotomic_poly(m: usize) -> Vec<Coeff> {
    assert!(m >= 1);
    let mut p = vec![Coeff::zero(); m + 1];
    p[0] = rat(-1);
    p[m] = rat(1);
    for d in 1..m {
        if m % d == 0 {
            let (q, r) = dense_divrem(&p, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// An element of `ℚ[ζ]/Φ_m`, stored by coefficients of `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    m: usize,
    coeffs: Dense,
}

impl Cyclotomic {
    fn reduce(m: usize, p: Dense) -> Self {
        let (_, mut r) = dense_divrem(&p, &cyclotomic_poly(m));
        trim(&mut r);
        Cyclotomic { m, coeffs: r }
    }

    pub fn zero(m: usize) -> Self {
        Cyclotomic {
            m,
            coeffs: Vec::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Coeff::one())
    }

    pub fn constant(m: usize, c: Coeff) -> Self {
        let mut coeffs = vec![c];
        trim(&mut coeffs);
        Cyclotomic { m, coeffs }
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(m: usize, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut p = vec![Coeff::zero(); e + 1];
        p[e] = Coeff::one();
        Self::reduce(m, p)
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut coeffs: Dense = self.coeffs.iter().map(|x| x * c).collect();
        trim(&mut coeffs);
        Cyclotomic { m: self.m, coeffs }
    }

    /// Field inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi = cyclotomic_poly(self.m);
        // invariant: r_i ≡ s_i * self (mod Φ)
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut s0, mut s1): (Dense, Dense) = (Vec::new(), vec![Coeff::one()]);
        while r1.len() > 1 {
            let (q, r) = dense_divrem(&r0, &r1);
            let s = dense_sub(&s0, &dense_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                return None;
            }
        }
        let c = Coeff::one() / &r1[0];
        Some(Self::reduce(self.m, s1).scale(&c))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, rhs.m);
        let neg: Dense = rhs.coeffs.iter().map(|c| -c).collect();
        Cyclotomic {
            m: self.m,
            coeffs: dense_sub(&self.coeffs, &neg),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, rhs.m);
        Cyclotomic {
            m: self.m,
            coeffs: dense_sub(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, rhs.m);
        Cyclotomic::reduce(self.m, dense_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = LaurentPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            p = &p + &LaurentPoly::term(super::Monomial::pow(Var::Rho, i as i32), c.clone());
        }
        // printed in the formal letter `z`
        write!(f, "{}", p.to_string().replace("rho", "z"))
    }
}

/// Image of a Laurent polynomial under `q ↦ sign`, `v_j ↦ ζ^{j-1}`.
pub fn specialize_group(
    f: &LaurentPoly,
    m: Option<usize>,
    sign: i32,
) -> Result<Cyclotomic, ScalarError> {
    let m = m.ok_or(ScalarError::Unsupported(
        "group specialization needs finite m",
    ))?;
    if sign != 1 && sign != -1 {
        return Err(ScalarError::Unsupported("sign must be +1 or -1"));
    }
    let mut acc = Cyclotomic::zero(m);
    for (mono, c) in f.terms() {
        let mut sgn = 1i64;
        let mut zeta = 0i64;
        for &(v, e) in mono.pairs() {
            match v {
                Var::Q => {
                    if sign == -1 && e % 2 != 0 {
                        sgn = -sgn;
                    }
                }
                Var::V(j) if (j as usize) <= m => zeta += (j as i64 - 1) * e as i64,
                other => return Err(ScalarError::ForeignSlot(other)),
            }
        }
        let term = Cyclotomic::zeta_pow(m, zeta).scale(&(c * rat(sgn)));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Specializes a fraction; the denominator must not vanish.
pub fn specialize_scalar(
    f: &ScalarValue,
    m: Option<usize>,
    sign: i32,
) -> Result<Cyclotomic, ScalarError> {
    let num = specialize_group(f.num(), m, sign)?;
    let den = specialize_group(f.den(), m, sign)?;
    let inv = den.inv().ok_or(ScalarError::DivisionByZero)?;
    Ok(&num * &inv)
}
