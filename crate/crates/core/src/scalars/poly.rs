use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Var};

pub type Coeff = BigRational;

/// An integer as a rational coefficient.
pub fn rat(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// Terms are kept sorted by decreasing monomial, so equal polynomials have
/// identical term vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Coeff)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Coeff::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::monomial(Monomial::pow(v, e))
    }

    /// Collects terms in any order, combining repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut map: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Coeff::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn trailing(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.last()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.contains(v))
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.vars()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Largest monomial dividing every term (exponentwise minimum).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m0, _)) => it.fold(m0.clone(), |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_polynomial())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Multiplication by a monomial keeps the term order.
    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        if mono.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.mul(mono), d * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Degree range `(min, max)` in one slot; `(0, 0)` when absent.
    pub fn degree_range(&self, v: Var) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (m, _) in &self.terms {
            let e = m.exp(v);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (lo, hi)
        }
    }

    /// Splits into coefficients of `v^lo, v^(lo+1), ...`.
    pub fn to_univariate(&self, v: Var) -> (i32, Vec<LaurentPoly>) {
        let (lo, hi) = self.degree_range(v);
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); (hi - lo + 1) as usize];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            buckets[(e - lo) as usize].push((rest, c.clone()));
        }
        let coeffs = buckets
            .into_iter()
            .map(|mut b| {
                b.sort_by(|x, y| y.0.cmp(&x.0));
                LaurentPoly { terms: b }
            })
            .collect();
        (lo, coeffs)
    }

    pub fn from_univariate(v: Var, lo: i32, coeffs: &[LaurentPoly]) -> Self {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let mono = Monomial::pow(v, lo + i as i32);
            for (m, k) in &c.terms {
                terms.push((m.mul(&mono), k.clone()));
            }
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        LaurentPoly { terms }
    }

    /// Applies a monomial-to-monomial map (a ring endomorphism permuting
    /// monomials, such as inverting `q`).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Exact division by a monomial-free or arbitrary divisor; `None` if `divisor`
    /// does not divide `self` in the Laurent ring.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.terms.len() == 1 {
            let (m, c) = &divisor.terms[0];
            return Some(self.mul_term(&m.inv(), &(Coeff::one() / c)));
        }
        let (lead_m, lead_c) = divisor.leading().unwrap();
        // Quotient exponents are confined to a box, which bounds the loop.
        let mut vars = self.vars();
        vars.extend(divisor.vars());
        vars.sort();
        vars.dedup();
        let bounds: Vec<(Var, i32, i32)> = vars
            .iter()
            .map(|&v| {
                let (alo, ahi) = self.degree_range(v);
                let (blo, bhi) = divisor.degree_range(v);
                (v, alo - blo, ahi - bhi)
            })
            .collect();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let t = m.div(lead_m);
            if bounds.iter().any(|&(v, lo, hi)| {
                let e = t.exp(v);
                e < lo || e > hi
            }) {
                return None;
            }
            let k = &c / lead_c;
            rem = &rem - &divisor.mul_term(&t, &k);
            quot.push((t, k));
        }
        Some(LaurentPoly { terms: quot })
    }

    /// Substitutes `v ↦ value` in a polynomial with no negative powers of `v`.
    pub fn eval_poly_var(&self, v: Var, value: &LaurentPoly) -> LaurentPoly {
        let (lo, coeffs) = self.to_univariate(v);
        assert!(lo >= 0, "negative power in polynomial evaluation");
        let mut acc = LaurentPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        &acc * &value.pow(lo as u32)
    }

    pub fn leading_coeff(&self) -> Coeff {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&(Coeff::one() / c)),
        }
    }

    fn fmt_coeff_mono(f: &mut fmt::Formatter<'_>, c: &Coeff, m: &Monomial) -> fmt::Result {
        let c = c.abs();
        if m.is_one() {
            write!(f, "{c}")
        } else if c.is_one() {
            write!(f, "{m}")
        } else {
            write!(f, "{c}*{m}")
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            Self::fmt_coeff_mono(f, c, m)?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate { -b } else { b.clone() };
    }
    let (x, y) = (&a.terms, &b.terms);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &Coeff| if negate { -c } else { c.clone() };
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(x[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((y[j].0.clone(), sign(&y[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate {
                    &x[i].1 - &y[j].1
                } else {
                    &x[i].1 + &y[j].1
                };
                if !c.is_zero() {
                    out.push((x[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(x[i..].iter().cloned());
    out.extend(y[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
    LaurentPoly { terms: out }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut map: HashMap<Monomial, Coeff> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *map.entry(m1.mul(m2)).or_insert_with(Coeff::zero) += c1 * c2;
            }
        }
        LaurentPoly::from_map(map)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
