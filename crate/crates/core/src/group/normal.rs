use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GroupElement, GroupError, GroupLetter, GroupSignature, GroupWord};

/// Layered coordinates `((j_k, α_k))` of a group element, stored top layer first:
/// `layers[0]` belongs to `k = n`, the last entry to `k = 1`.
///
/// The element is `L_n L_{n−1} ⋯ L_1` with `L_k = s_j ⋯ s_1 t^α s_1 ⋯ s_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NestedNormalForm {
    pub layers: Vec<(usize, i64)>,
}

/// The word `s_j ⋯ s_1 t^α s_1 ⋯ s_{k−1}` (no cancellation when `α = 0`).
pub fn transversal_word(k: usize, j: usize, alpha: i64) -> GroupWord {
    let mut w = GroupWord::new();
    for i in (1..=j).rev() {
        w.push(GroupLetter::S(i));
    }
    if alpha != 0 {
        w.push(GroupLetter::T(alpha));
    }
    for i in 1..k {
        w.push(GroupLetter::S(i));
    }
    w
}

impl NestedNormalForm {
    pub fn identity(n: usize) -> Self {
        NestedNormalForm {
            layers: (1..=n).rev().map(|k| (k - 1, 0)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.layers.len()
    }

    pub fn validate(&self, sig: GroupSignature) -> Result<(), GroupError> {
        if self.layers.len() != sig.n {
            return Err(GroupError::Shape(format!("expected {} layers", sig.n)));
        }
        for (idx, &(j, a)) in self.layers.iter().enumerate() {
            let k = sig.n - idx;
            let a_ok = sig.m.is_none_or(|m| (0..m as i64).contains(&a));
            if j >= k || !a_ok {
                return Err(GroupError::Index(format!("layer {k}: ({j}, {a})")));
            }
        }
        Ok(())
    }

    /// Concatenation of the layer words, top layer first.
    pub fn word(&self) -> GroupWord {
        let n = self.n();
        let mut w = GroupWord::new();
        for (idx, &(j, a)) in self.layers.iter().enumerate() {
            w.0.extend(transversal_word(n - idx, j, a).0);
        }
        w
    }

    pub fn evaluate(&self, sig: GroupSignature) -> Result<GroupElement, GroupError> {
        self.validate(sig)?;
        self.word().evaluate(sig)
    }

    /// Letter count after the cancellation `s_j ⋯ s_1 s_1 ⋯ s_{k−1} = s_{j+1} ⋯ s_{k−1}`
    /// in layers with `α = 0`.
    pub fn length(&self) -> usize {
        let n = self.n();
        self.layers
            .iter()
            .enumerate()
            .map(|(idx, &(j, a))| {
                let k = n - idx;
                if a == 0 {
                    k - 1 - j
                } else {
                    j + a.unsigned_abs() as usize + k - 1
                }
            })
            .sum()
    }

    /// All forms for a finite signature, in lexicographic order of the layers.
    pub fn enumerate(sig: GroupSignature) -> Result<Vec<NestedNormalForm>, GroupError> {
        let m = sig
            .m
            .ok_or(GroupError::Unsupported("enumeration needs finite m"))? as i64;
        let mut out = vec![Vec::new()];
        for k in (1..=sig.n).rev() {
            let mut next = Vec::with_capacity(out.len() * k * m as usize);
            for prefix in &out {
                for j in 0..k {
                    for a in 0..m {
                        let mut p: Vec<(usize, i64)> = prefix.clone();
                        p.push((j, a));
                        next.push(p);
                    }
                }
            }
            out = next;
        }
        Ok(out
            .into_iter()
            .map(|layers| NestedNormalForm { layers })
            .collect())
    }
}

impl fmt::Display for NestedNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, a) in &self.layers {
            write!(f, "({j},{a})")?;
        }
        Ok(())
    }
}

/// Peels off the top layer repeatedly: the layer `(j, α)` records where the
/// top position is sent and the color riding along with it.
pub fn normal_form(g: &GroupElement) -> NestedNormalForm {
    let sig = g.signature();
    let mut layers = Vec::with_capacity(sig.n);
    let mut cur = g.clone();
    for k in (1..=sig.n).rev() {
        let j = cur.perm()[k - 1];
        let alpha = cur.colors()[j];
        let sk = GroupSignature { m: sig.m, n: k };
        let l = transversal_word(k, j, alpha)
            .evaluate(sk)
            .expect("indices in range");
        layers.push((j, alpha));
        cur = l
            .inv()
            .mul_unchecked(&cur)
            .restrict()
            .expect("top layer stripped");
    }
    NestedNormalForm { layers }
}

/// A positive word of Bremke–Malle shape `π · t_{k₁,a₁} ⋯ t_{k_r,a_r}` where
/// `π` is a word in the `s_i` and `t_{k,a} = t^a s_1 ⋯ s_{k−1}`.
///
/// Layers are absorbed top-down. A layer with `α ≠ 0` contributes
/// `s_j ⋯ s_1` to `π` and the block `t_{k,α}`; pushing that block past the
/// lower `π` shifts its indices up by one. A layer with `α = 0` contributes
/// `s_{j+1} ⋯ s_{k−1}` to `π` only.
pub fn reduced_word(nf: &NestedNormalForm, sig: GroupSignature) -> Result<GroupWord, GroupError> {
    if sig.m.is_none() {
        return Err(GroupError::Unsupported("reduced words need finite m"));
    }
    nf.validate(sig)?;
    let (pi, blocks) = bm_parts(&nf.layers);
    let mut w = GroupWord(pi.into_iter().map(GroupLetter::S).collect());
    for (k, a) in blocks {
        w.push(GroupLetter::T(a));
        for i in 1..k {
            w.push(GroupLetter::S(i));
        }
    }
    Ok(w)
}

fn bm_parts(layers: &[(usize, i64)]) -> (Vec<usize>, Vec<(usize, i64)>) {
    let Some(&(j, a)) = layers.first() else {
        return (Vec::new(), Vec::new());
    };
    let k = layers.len();
    let (pi_low, blocks_low) = bm_parts(&layers[1..]);
    if a == 0 {
        let mut pi: Vec<usize> = (j + 1..k).collect();
        pi.extend(pi_low);
        (pi, blocks_low)
    } else {
        let mut pi: Vec<usize> = (1..=j).rev().collect();
        pi.extend(pi_low.into_iter().map(|i| i + 1));
        let mut blocks = vec![(k, a)];
        blocks.extend(blocks_low);
        (pi, blocks)
    }
}
