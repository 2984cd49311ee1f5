//! Two alternative layered bases, both labelled by the same `(j, a)` layers as
//! the inductive basis.
//!
//! * `𝓑⁺` replaces the top layer by `t⁺_{j,a} = σ_j ⋯ σ_1 τ^a σ_1 ⋯ σ_{k−1}`
//!   (no inverses; `t⁺_{j,0} = σ_{j+1} ⋯ σ_{k−1}`).
//! * `𝓑^γ` replaces it by `t_{j,a} − (γ_a/γ_0) t_{j,0}` for `a ≠ 0` and keeps
//!   `t_{j,0}`. The form `L^γ` vanishes on every such word except `1`.
//!
//! Coordinates are found layer by layer. Rewriting `t⁺_{j,a} y` in the
//! inductive basis gives `t_{j,a} y` plus terms whose top layer has a smaller
//! `j`, so peeling off top layers in decreasing `j` is a triangular solve.

use std::collections::BTreeMap;

use crate::scalars::ScalarValue;

use super::engine::{add_scaled, add_term, prefix, Lin};
use super::word::layer_letters;
use super::{BasisWord, Generator, HElement, Hecke, HeckeError, Layer};

/// Letters of `t⁺_{j,a}` at level `k`.
pub(crate) fn plus_letters(k: usize, j: usize, a: i64) -> Vec<Generator> {
    if a == 0 {
        return layer_letters(k, j, 0);
    }
    let mut out: Vec<Generator> = (1..=j).rev().map(Generator::Sigma).collect();
    let t = if a > 0 {
        Generator::Tau
    } else {
        Generator::TauInv
    };
    out.extend(std::iter::repeat_n(t, a.unsigned_abs() as usize));
    out.extend((1..k).map(Generator::Sigma));
    out
}

/// Splits a combination by its top layer.
fn by_top(x: &Lin) -> BTreeMap<Layer, Lin> {
    let mut out: BTreeMap<Layer, Lin> = BTreeMap::new();
    for (w, c) in x {
        out.entry(w[0])
            .or_default()
            .insert(w[1..].to_vec(), c.clone());
    }
    out
}

impl Hecke {
    fn gamma_ratios(&self, gamma: &[ScalarValue]) -> Result<Vec<ScalarValue>, HeckeError> {
        let m = self
            .m()
            .ok_or(HeckeError::Unsupported("the γ-basis needs finite m"))?;
        if gamma.len() != m {
            return Err(HeckeError::Shape(format!(
                "expected {m} values γ_0..γ_{}",
                m - 1
            )));
        }
        let inv = gamma[0].try_inv()?;
        Ok(gamma.iter().map(|g| g * &inv).collect())
    }

    /// The `𝓑⁺` element with the given layers, as a product in the algebra.
    pub fn bplus_element(&self, w: &BasisWord) -> Result<HElement, HeckeError> {
        w.validate(self.signature())?;
        let n = self.n();
        let letters: Vec<Generator> = w
            .layers
            .iter()
            .enumerate()
            .flat_map(|(idx, &(j, a))| plus_letters(n - idx, j, a))
            .collect();
        self.from_word(&super::GeneratorWord(letters))
    }

    /// The `𝓑^γ` element with the given layers, as a product in the algebra.
    pub fn bgamma_element(
        &self,
        w: &BasisWord,
        gamma: &[ScalarValue],
    ) -> Result<HElement, HeckeError> {
        w.validate(self.signature())?;
        let r = self.gamma_ratios(gamma)?;
        let n = self.n();
        let mut acc = self.identity();
        for (idx, &(j, a)) in w.layers.iter().enumerate() {
            let k = n - idx;
            let mut layer = self.from_word(&super::GeneratorWord(layer_letters(k, j, a)))?;
            if a != 0 {
                let base = self.from_word(&super::GeneratorWord(layer_letters(k, j, 0)))?;
                layer = &layer - &base.scale(&r[a as usize]);
            }
            acc = self.multiply(&acc, &layer)?;
        }
        Ok(acc)
    }

    /// Coordinates of `x` in `𝓑⁺`, keyed by layer labels.
    pub fn to_bplus(&self, x: &HElement) -> Result<BTreeMap<BasisWord, ScalarValue>, HeckeError> {
        self.check_sig(x)?;
        Ok(self
            .bplus_lin(self.n(), x.lin().clone())
            .into_iter()
            .map(|(w, c)| (BasisWord { layers: w }, c))
            .collect())
    }

    fn bplus_lin(&self, k: usize, mut rem: Lin) -> Lin {
        if k == 0 {
            return rem;
        }
        let lower = Hecke::new(self.signature().with_n(k));
        let mut out = Lin::new();
        // the largest top index still present; new terms only ever appear below it
        while let Some(top) = rem.keys().map(|w| w[0]).max() {
            let y: Lin = rem
                .iter()
                .filter(|(w, _)| w[0] == top)
                .map(|(w, c)| (w[1..].to_vec(), c.clone()))
                .collect();
            let (j, a) = top;
            if a == 0 {
                rem.retain(|w, _| w[0] != top);
            } else {
                let lifted = prefix((k - 1, 0), &y);
                let img = lower.apply_letters(&plus_letters(k, j, a), lifted);
                add_scaled(&mut rem, &img, &ScalarValue::int(-1));
                debug_assert!(rem.keys().all(|w| w[0] != top), "triangularity");
            }
            out.extend(prefix(top, &self.bplus_lin(k - 1, y)));
        }
        out
    }

    pub fn from_bplus(
        &self,
        coords: &BTreeMap<BasisWord, ScalarValue>,
    ) -> Result<HElement, HeckeError> {
        let mut acc = self.zero();
        for (w, c) in coords {
            acc = &acc + &self.bplus_element(w)?.scale(c);
        }
        Ok(acc)
    }

    /// Coordinates of `x` in `𝓑^γ`; needs `γ_0` invertible.
    pub fn to_bgamma(
        &self,
        x: &HElement,
        gamma: &[ScalarValue],
    ) -> Result<BTreeMap<BasisWord, ScalarValue>, HeckeError> {
        self.check_sig(x)?;
        let r = self.gamma_ratios(gamma)?;
        Ok(bgamma_lin(x.lin(), &r)
            .into_iter()
            .map(|(w, c)| (BasisWord { layers: w }, c))
            .collect())
    }

    pub fn from_bgamma(
        &self,
        coords: &BTreeMap<BasisWord, ScalarValue>,
        gamma: &[ScalarValue],
    ) -> Result<HElement, HeckeError> {
        let mut acc = self.zero();
        for (w, c) in coords {
            acc = &acc + &self.bgamma_element(w, gamma)?.scale(c);
        }
        Ok(acc)
    }
}

fn bgamma_lin(x: &Lin, r: &[ScalarValue]) -> Lin {
    if x.keys().next().is_none_or(|w| w.is_empty()) {
        return x.clone();
    }
    let parts = by_top(x);
    let mut coords: BTreeMap<Layer, Lin> = BTreeMap::new();
    for (&(j, a), y) in &parts {
        if a != 0 {
            let slot = coords.entry((j, 0)).or_default();
            add_scaled(slot, y, &r[a as usize]);
        }
        let slot = coords.entry((j, a)).or_default();
        add_scaled(slot, y, &ScalarValue::one());
    }
    let mut out = Lin::new();
    for (top, y) in coords {
        for (w, c) in prefix(top, &bgamma_lin(&y, r)) {
            add_term(&mut out, w, &c);
        }
    }
    out
}
