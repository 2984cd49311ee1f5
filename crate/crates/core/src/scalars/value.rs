use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::gcd::{gcd, unit_normal};
use super::{Coeff, LaurentPoly, Monomial, ScalarError, Var};

/// An element of the fraction field: `num / den`.
///
/// Values are always stored reduced: `den` has no monomial content, leading
/// coefficient one and no common factor with `num`. A Laurent polynomial has
/// `den == 1`. Structural equality is therefore value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarValue {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for ScalarValue {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for ScalarValue {
    fn from(p: LaurentPoly) -> Self {
        ScalarValue {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

impl From<i64> for ScalarValue {
    fn from(n: i64) -> Self {
        LaurentPoly::int(n).into()
    }
}

impl From<Var> for ScalarValue {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v).into()
    }
}

impl ScalarValue {
    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn int(n: i64) -> Self {
        n.into()
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        LaurentPoly::constant(Coeff::new(n.into(), d.into())).into()
    }

    pub fn var(v: Var) -> Self {
        v.into()
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        LaurentPoly::var_pow(v, e).into()
    }

    pub fn q() -> Self {
        Self::var(Var::Q)
    }

    /// `q - q⁻¹`, the ubiquitous quadratic-relation coefficient.
    pub fn qdiff() -> Self {
        (&LaurentPoly::var(Var::Q) - &LaurentPoly::var_pow(Var::Q, -1)).into()
    }

    pub fn v(j: usize) -> Self {
        Self::var(Var::V(j as u16))
    }

    /// Reduces `num / den` to canonical form.
    pub fn try_new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // Pull the unit part (constant times monomial) of den into num.
        let content = den.monomial_content();
        let lc = den.leading_coeff();
        let unit_inv = Coeff::one() / &lc;
        let den = den.mul_term(&content.inv(), &unit_inv);
        let num = num.mul_term(&content.inv(), &unit_inv);
        if den.is_one() {
            return Ok(num.into());
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return Ok(ScalarValue { num, den });
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        // den/g is again free of units up to a monomial shift
        let content = den.monomial_content();
        let lc = den.leading_coeff();
        let unit_inv = Coeff::one() / &lc;
        Ok(ScalarValue {
            num: num.mul_term(&content.inv(), &unit_inv),
            den: den.mul_term(&content.inv(), &unit_inv),
        })
    }

    /// Normalizes units only; the caller guarantees `gcd(num, den) = 1`.
    fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let content = den.monomial_content();
        let unit_inv = Coeff::one() / den.leading_coeff();
        ScalarValue {
            num: num.mul_term(&content.inv(), &unit_inv),
            den: den.mul_term(&content.inv(), &unit_inv),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        Self::try_new(num, den).expect("zero denominator")
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in the Laurent ring.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        ScalarValue {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        Self::try_new(self.den.clone(), self.num.clone())
    }

    pub fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self * &rhs.inv())
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, k: i32) -> Self {
        if k < 0 {
            return self.inv().powi(-k);
        }
        if self.den.is_one() && self.num.is_monomial() {
            let (m, c) = &self.num.terms()[0];
            let c = num_traits::pow(c.clone(), k as usize);
            return LaurentPoly::term(m.powi(k), c).into();
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Applies a monomial map to numerator and denominator (used for ring
    /// automorphisms such as the bar involution).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let num = self.num.map_monomials(&f);
        if self.den.is_one() {
            return num.into();
        }
        Self::new(num, self.den.map_monomials(&f))
    }

    /// Substitutes `v ↦ value`, cancelling removable poles at `value`.
    ///
    /// Numerator and denominator are divided by `(v - value)` while both
    /// vanish there; a denominator that still vanishes is a genuine pole.
    pub fn substitute(&self, v: Var, value: &ScalarValue) -> Result<Self, ScalarError> {
        if value.contains(v) {
            return Err(ScalarError::SelfSubstitution(v));
        }
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let (nlo, ncoef) = self.num.to_univariate(v);
        let (dlo, dcoef) = self.den.to_univariate(v);
        // Clear negative powers of v in both parts at once.
        let shift = nlo.min(dlo).min(0);
        let mut n = pad(nlo - shift, ncoef);
        let mut d = pad(dlo - shift, dcoef);
        let mut order = 0usize;
        loop {
            let dv = horner(&d, value);
            if !dv.is_zero() {
                let nv = horner(&n, value);
                return Ok(&nv / &dv);
            }
            let nv = horner(&n, value);
            if !nv.is_zero() {
                return Err(ScalarError::Pole {
                    slot: v,
                    order: order + 1,
                });
            }
            n = synthetic_div(&n, value);
            d = synthetic_div(&d, value);
            order += 1;
        }
    }

    /// Substitutes several slots in the given order.
    pub fn substitute_all(&self, subs: &[(Var, ScalarValue)]) -> Result<Self, ScalarError> {
        let mut acc = self.clone();
        for (v, val) in subs {
            acc = acc.substitute(*v, val)?;
        }
        Ok(acc)
    }
}

fn pad(lo: i32, coeffs: Vec<LaurentPoly>) -> Vec<ScalarValue> {
    let mut out = vec![ScalarValue::zero(); lo as usize];
    out.extend(coeffs.into_iter().map(ScalarValue::from));
    out
}

fn horner(coeffs: &[ScalarValue], x: &ScalarValue) -> ScalarValue {
    let mut acc = ScalarValue::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Quotient by `(v - x)`; the caller has checked the remainder vanishes.
fn synthetic_div(coeffs: &[ScalarValue], x: &ScalarValue) -> Vec<ScalarValue> {
    let d = coeffs.len() - 1;
    let mut out = vec![ScalarValue::zero(); d];
    let mut carry = ScalarValue::zero();
    for i in (1..=d).rev() {
        carry = &coeffs[i] + &(&carry * x);
        out[i - 1] = carry.clone();
    }
    out
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &LaurentPoly| {
                if p.len() > 1 {
                    format!("({p})")
                } else {
                    format!("{p}")
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl<'a> Add<&'a ScalarValue> for &'a ScalarValue {
    type Output = ScalarValue;
    fn add(self, rhs: &ScalarValue) -> ScalarValue {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return (&self.num + &rhs.num).into();
            }
            return ScalarValue::new(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return ScalarValue {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return ScalarValue {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            };
        }
        let mut g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let mut num = &(&self.num * &b) + &(&rhs.num * &a);
        let mut den = &a * &rhs.den;
        // Common factors of num and den can only come from g.
        while !g.is_one() && !num.is_zero() {
            let h = gcd(&num, &g);
            if h.is_one() {
                break;
            }
            num = num.div_exact(&h).unwrap();
            den = den.div_exact(&h).unwrap();
            g = g.div_exact(&h).unwrap();
        }
        ScalarValue::from_coprime(num, den)
    }
}

impl<'a> Sub<&'a ScalarValue> for &'a ScalarValue {
    type Output = ScalarValue;
    fn sub(self, rhs: &ScalarValue) -> ScalarValue {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ScalarValue> for &'a ScalarValue {
    type Output = ScalarValue;
    fn mul(self, rhs: &ScalarValue) -> ScalarValue {
        if self.is_zero() || rhs.is_zero() {
            return ScalarValue::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        // Cross-cancel; the inputs are reduced, so the product is too.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        ScalarValue::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a ScalarValue> for &'a ScalarValue {
    type Output = ScalarValue;
    /// Panics on division by zero; see [`ScalarValue::try_div`].
    fn div(self, rhs: &ScalarValue) -> ScalarValue {
        self.try_div(rhs).expect("division by zero")
    }
}

impl Neg for &ScalarValue {
    type Output = ScalarValue;
    fn neg(self) -> ScalarValue {
        ScalarValue {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ScalarValue {
    type Output = ScalarValue;
    fn neg(self) -> ScalarValue {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<ScalarValue> for ScalarValue {
            type Output = ScalarValue;
            fn $f(self, rhs: ScalarValue) -> ScalarValue {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a ScalarValue> for ScalarValue {
            type Output = ScalarValue;
            fn $f(self, rhs: &ScalarValue) -> ScalarValue {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl std::iter::Sum for ScalarValue {
    fn sum<I: Iterator<Item = ScalarValue>>(iter: I) -> Self {
        iter.fold(ScalarValue::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for ScalarValue {
    fn product<I: Iterator<Item = ScalarValue>>(iter: I) -> Self {
        iter.fold(ScalarValue::one(), |a, b| &a * &b)
    }
}

/// JSON shape `{ "num": "...", "den": "..." }` with canonical polynomial text.
#[derive(Serialize, Deserialize)]
struct ScalarJson {
    num: String,
    den: String,
}

impl Serialize for ScalarValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarJson {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScalarValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        let num = super::parse_scalar(&j.num).map_err(serde::de::Error::custom)?;
        let den = super::parse_scalar(&j.den).map_err(serde::de::Error::custom)?;
        num.try_div(&den).map_err(serde::de::Error::custom)
    }
}

/// Unit-normal form of a Laurent polynomial; exposed for tests of the gcd layer.
pub fn normalize_unit(p: &LaurentPoly) -> LaurentPoly {
    unit_normal(p)
}
