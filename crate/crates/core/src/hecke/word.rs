use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AlgebraSignature, HeckeError};

/// One layer `(j, a)` of a basis word.
pub type Layer = (usize, i64);

/// A word `u_n u_{n−1} ⋯ u_1` of the inductive basis, with
/// `u_k = σ_j⁻¹ ⋯ σ_1⁻¹ τ^a σ_1 ⋯ σ_{k−1}`.
///
/// Layers are stored top first: `layers[0]` is `u_n`. The derived order is
/// lexicographic on that tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisWord {
    pub layers: Vec<Layer>,
}

impl BasisWord {
    pub fn identity(n: usize) -> Self {
        BasisWord {
            layers: (0..n).rev().map(|k| (k, 0)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.layers.len()
    }

    pub fn validate(&self, sig: AlgebraSignature) -> Result<(), HeckeError> {
        if self.layers.len() != sig.n {
            return Err(HeckeError::Shape(format!(
                "expected {} layers, got {}",
                sig.n,
                self.layers.len()
            )));
        }
        for (idx, &(j, a)) in self.layers.iter().enumerate() {
            let k = sig.n - idx;
            if j >= k || !sig.exponent_ok(a) {
                return Err(HeckeError::Index(format!("layer {k}: ({j}, {a})")));
            }
        }
        Ok(())
    }

    /// The defining generator word, leftmost letter first.
    ///
    /// A layer with `a = 0` is written as `σ_{j+1} ⋯ σ_{k−1}`, which is equal.
    pub fn letters(&self) -> GeneratorWord {
        let n = self.n();
        let mut out = Vec::new();
        for (idx, &(j, a)) in self.layers.iter().enumerate() {
            out.extend(layer_letters(n - idx, j, a));
        }
        GeneratorWord(out)
    }
}

/// Letters of `u_k` for the layer `(j, a)`.
pub(crate) fn layer_letters(k: usize, j: usize, a: i64) -> Vec<Generator> {
    if a == 0 {
        return (j + 1..k).map(Generator::Sigma).collect();
    }
    let mut out: Vec<Generator> = (1..=j).rev().map(Generator::SigmaInv).collect();
    let t = if a > 0 {
        Generator::Tau
    } else {
        Generator::TauInv
    };
    out.extend(std::iter::repeat_n(t, a.unsigned_abs() as usize));
    out.extend((1..k).map(Generator::Sigma));
    out
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "()");
        }
        for (j, a) in &self.layers {
            write!(f, "({j},{a})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Tau,
    TauInv,
    Sigma(usize),
    SigmaInv(usize),
}

impl Generator {
    pub fn inverse(self) -> Self {
        match self {
            Generator::Tau => Generator::TauInv,
            Generator::TauInv => Generator::Tau,
            Generator::Sigma(i) => Generator::SigmaInv(i),
            Generator::SigmaInv(i) => Generator::Sigma(i),
        }
    }

    /// Smallest `n` for which the letter lives in `H(m,1,n)`.
    pub fn min_n(self) -> usize {
        match self {
            Generator::Tau | Generator::TauInv => 1,
            Generator::Sigma(i) | Generator::SigmaInv(i) => i + 1,
        }
    }

    pub fn validate(self, n: usize) -> Result<(), HeckeError> {
        let bad = matches!(self, Generator::Sigma(0) | Generator::SigmaInv(0));
        if bad || self.min_n() > n {
            return Err(HeckeError::Index(format!("{self} with n = {n}")));
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Tau => write!(f, "T"),
            Generator::TauInv => write!(f, "T^-1"),
            Generator::Sigma(i) => write!(f, "G{i}"),
            Generator::SigmaInv(i) => write!(f, "G{i}^-1"),
        }
    }
}

/// A word in `τ^{±1}` and `σ_i^{±1}`; the product is taken left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn validate(&self, n: usize) -> Result<(), HeckeError> {
        self.0.iter().try_for_each(|g| g.validate(n))
    }

    /// The word of inverses in reverse order.
    pub fn inverse(&self) -> Self {
        GeneratorWord(self.0.iter().rev().map(|g| g.inverse()).collect())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = HeckeError;

    /// Letters `T`, `G<i>`, each with an optional integer power `^k`,
    /// separated by whitespace or `*`. `1` is the empty word.
    fn from_str(text: &str) -> Result<Self, HeckeError> {
        let mut out = Vec::new();
        for tok in text
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|s| !s.is_empty())
        {
            if tok == "1" {
                continue;
            }
            let bad = || HeckeError::Parse(format!("bad letter {tok:?}"));
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let g = if base == "T" {
                Generator::Tau
            } else if let Some(i) = base.strip_prefix('G') {
                Generator::Sigma(i.parse().map_err(|_| bad())?)
            } else {
                return Err(bad());
            };
            let g = if power < 0 { g.inverse() } else { g };
            out.extend(std::iter::repeat_n(g, power.unsigned_abs() as usize));
        }
        Ok(GeneratorWord(out))
    }
}
