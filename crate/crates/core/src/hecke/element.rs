use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalars::ScalarValue;

use super::engine::{add_scaled, add_term, Lin};
use super::{AlgebraSignature, BasisWord, Hecke, HeckeError, Layer};

/// A finite combination of basis words of `H(m,1,n)` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElement {
    sig: AlgebraSignature,
    terms: Lin,
}

impl HElement {
    pub(crate) fn from_lin(sig: AlgebraSignature, terms: Lin) -> Self {
        HElement { sig, terms }
    }

    pub(crate) fn lin(&self) -> &Lin {
        &self.terms
    }

    /// Builds an element from `(word, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        sig: AlgebraSignature,
        terms: impl IntoIterator<Item = (BasisWord, ScalarValue)>,
    ) -> Result<Self, HeckeError> {
        let mut lin = Lin::new();
        for (w, c) in terms {
            w.validate(sig)?;
            add_term(&mut lin, w.layers, &c);
        }
        Ok(HElement { sig, terms: lin })
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of the words.
    pub fn terms(&self) -> impl Iterator<Item = (&[Layer], &ScalarValue)> {
        self.terms.iter().map(|(w, c)| (&w[..], c))
    }

    pub fn coeff(&self, w: &BasisWord) -> ScalarValue {
        self.terms.get(&w.layers).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &ScalarValue) -> Self {
        let mut out = Lin::new();
        add_scaled(&mut out, &self.terms, c);
        HElement {
            sig: self.sig,
            terms: out,
        }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&ScalarValue) -> ScalarValue) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        HElement {
            sig: self.sig,
            terms,
        }
    }

    pub fn try_map_coeffs<E>(
        &self,
        mut f: impl FnMut(&ScalarValue) -> Result<ScalarValue, E>,
    ) -> Result<Self, E> {
        let mut terms = Lin::new();
        for (w, c) in &self.terms {
            let x = f(c)?;
            if !x.is_zero() {
                terms.insert(w.clone(), x);
            }
        }
        Ok(HElement {
            sig: self.sig,
            terms,
        })
    }

    /// Whether every coefficient has a monomial denominator, i.e. lies in the
    /// Laurent polynomial ring.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.den().is_monomial())
    }

    fn combine(&self, other: &Self, sign: &ScalarValue) -> Self {
        assert_eq!(self.sig, other.sig, "signature mismatch");
        let mut out = self.terms.clone();
        add_scaled(&mut out, &other.terms, sign);
        HElement {
            sig: self.sig,
            terms: out,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, HeckeError> {
        serde_json::from_str(text).map_err(|e| HeckeError::Parse(e.to_string()))
    }
}

impl<'a> Add<&'a HElement> for &'a HElement {
    type Output = HElement;
    fn add(self, rhs: &'a HElement) -> HElement {
        self.combine(rhs, &ScalarValue::one())
    }
}

impl<'a> Sub<&'a HElement> for &'a HElement {
    type Output = HElement;
    fn sub(self, rhs: &'a HElement) -> HElement {
        self.combine(rhs, &ScalarValue::int(-1))
    }
}

impl Neg for &HElement {
    type Output = HElement;
    fn neg(self) -> HElement {
        self.scale(&ScalarValue::int(-1))
    }
}

/// Panics on a signature mismatch; use [`Hecke::multiply`] for a checked product.
impl<'a> Mul<&'a HElement> for &'a HElement {
    type Output = HElement;
    fn mul(self, rhs: &'a HElement) -> HElement {
        Hecke::new(self.sig)
            .multiply(self, rhs)
            .expect("signature mismatch")
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{}", BasisWord { layers: w.clone() })?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SigJson {
    m: MJson,
    n: usize,
}

/// `m` as a number, or the string `"inf"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MJson {
    Finite(usize),
    Text(String),
}

impl SigJson {
    fn from_sig(s: AlgebraSignature) -> Self {
        let m = match s.m {
            Some(m) => MJson::Finite(m),
            None => MJson::Text("inf".into()),
        };
        SigJson { m, n: s.n }
    }

    fn to_sig(&self) -> Result<AlgebraSignature, String> {
        let m = match &self.m {
            MJson::Finite(m) => Some(*m),
            MJson::Text(t) if t == "inf" => None,
            MJson::Text(t) => return Err(format!("bad m {t:?}")),
        };
        AlgebraSignature::new(m, self.n).map_err(|e| e.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    layers: Vec<[i64; 2]>,
    coeff: ScalarValue,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    signature: SigJson,
    terms: Vec<TermJson>,
}

impl Serialize for HElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| TermJson {
                layers: w.iter().map(|&(j, a)| [j as i64, a]).collect(),
                coeff: c.clone(),
            })
            .collect();
        ElementJson {
            signature: SigJson::from_sig(self.sig),
            terms,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let sig = raw.signature.to_sig().map_err(D::Error::custom)?;
        let mut pairs = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let mut layers = Vec::with_capacity(t.layers.len());
            for [j, a] in t.layers {
                let j = usize::try_from(j).map_err(|_| D::Error::custom("negative layer index"))?;
                layers.push((j, a));
            }
            pairs.push((BasisWord { layers }, t.coeff));
        }
        HElement::from_terms(sig, pairs).map_err(D::Error::custom)
    }
}
