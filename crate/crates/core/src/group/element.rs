use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroupError, GroupSignature};

/// An element `(v, ω)` of the wreath product `C_m ≀ S_n`.
///
/// Multiplication is `(v, ω)(v', ω') = (v + ω·v', ωω')` where
/// `(ω·v')_b = v'_{ω⁻¹(b)}`. Positions are 0-based internally; the
/// permutation serializes with 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    m: Option<usize>,
    colors: Vec<i64>,
    perm: Vec<usize>,
}

impl GroupElement {
    pub fn identity(sig: GroupSignature) -> Self {
        GroupElement {
            m: sig.m,
            colors: vec![0; sig.n],
            perm: (0..sig.n).collect(),
        }
    }

    /// Builds an element from colors and a 0-based permutation (`perm[a] = ω(a)`).
    pub fn new(
        sig: GroupSignature,
        colors: Vec<i64>,
        perm: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if colors.len() != sig.n || perm.len() != sig.n {
            return Err(GroupError::Shape(format!("expected length {}", sig.n)));
        }
        let mut seen = vec![false; sig.n];
        for &p in &perm {
            if p >= sig.n || seen[p] {
                return Err(GroupError::Shape("perm is not a bijection".into()));
            }
            seen[p] = true;
        }
        let mut g = GroupElement {
            m: sig.m,
            colors,
            perm,
        };
        g.reduce();
        Ok(g)
    }

    /// `t`: color 1 on the first position.
    pub fn t(sig: GroupSignature) -> Self {
        let mut g = Self::identity(sig);
        g.colors[0] = 1;
        g.reduce();
        g
    }

    /// The transposition `s_i` of positions `i` and `i+1` (1-based `i`).
    pub fn s(sig: GroupSignature, i: usize) -> Result<Self, GroupError> {
        if i == 0 || i >= sig.n {
            return Err(GroupError::Index(format!("s{i} with n = {}", sig.n)));
        }
        let mut g = Self::identity(sig);
        g.perm.swap(i - 1, i);
        Ok(g)
    }

    pub fn signature(&self) -> GroupSignature {
        GroupSignature {
            m: self.m,
            n: self.colors.len(),
        }
    }

    pub fn colors(&self) -> &[i64] {
        &self.colors
    }

    /// 0-based images: `perm()[a] = ω(a)`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.colors.iter().all(|&c| c == 0) && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn reduce(&mut self) {
        if let Some(m) = self.m {
            for c in &mut self.colors {
                *c = c.rem_euclid(m as i64);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), GroupError> {
        if self.signature() != other.signature() {
            return Err(GroupError::Mismatch);
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.colors.len();
        let mut colors = self.colors.clone();
        let mut perm = vec![0; n];
        for a in 0..n {
            // (ω·v')_{ω(a)} = v'_a
            colors[self.perm[a]] += other.colors[a];
            perm[a] = self.perm[other.perm[a]];
        }
        let mut g = GroupElement {
            m: self.m,
            colors,
            perm,
        };
        g.reduce();
        g
    }

    pub fn inv(&self) -> Self {
        let n = self.colors.len();
        let mut perm = vec![0; n];
        for a in 0..n {
            perm[self.perm[a]] = a;
        }
        // (v, ω)⁻¹ = (−ω⁻¹·v, ω⁻¹), and (ω⁻¹·v)_a = v_{ω(a)}
        let colors = (0..n).map(|a| -self.colors[self.perm[a]]).collect();
        let mut g = GroupElement {
            m: self.m,
            colors,
            perm,
        };
        g.reduce();
        g
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::identity(self.signature());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        acc
    }

    /// Restriction to the first `n − 1` positions, if the last one is fixed with color 0.
    pub fn restrict(&self) -> Option<Self> {
        let n = self.colors.len();
        if n == 0 || self.perm[n - 1] != n - 1 || self.colors[n - 1] != 0 {
            return None;
        }
        Some(GroupElement {
            m: self.m,
            colors: self.colors[..n - 1].to_vec(),
            perm: self.perm[..n - 1].to_vec(),
        })
    }

    /// Embedding into one more position, fixed with color 0.
    pub fn extend(&self) -> Self {
        let mut g = self.clone();
        g.colors.push(0);
        g.perm.push(self.perm.len());
        g
    }
}

impl std::ops::Mul for &GroupElement {
    type Output = GroupElement;
    /// Panics on a signature mismatch; use [`GroupElement::try_mul`] to get an error.
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("signature mismatch")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<usize> = self.perm.iter().map(|p| p + 1).collect();
        write!(f, "colors {:?} perm {:?}", self.colors, perm)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    colors: Vec<i64>,
    perm: Vec<usize>,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementJson {
            colors: self.colors.clone(),
            perm: self.perm.iter().map(|p| p + 1).collect(),
        }
        .serialize(s)
    }
}

impl GroupElement {
    /// Parses `{"colors": [...], "perm": [...]}` with a 1-based permutation.
    pub fn from_json(sig: GroupSignature, text: &str) -> Result<Self, GroupError> {
        let raw: ElementJson =
            serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))?;
        if raw.perm.contains(&0) {
            return Err(GroupError::Shape("perm is 1-based".into()));
        }
        Self::new(sig, raw.colors, raw.perm.iter().map(|p| p - 1).collect())
    }
}
