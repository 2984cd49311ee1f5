//! Left action of the generators on basis words.
//!
//! A basis word of length `k` is `T^{(k)}_{j,a,u}` with `(j, a)` its top
//! layer and `u` the rest. The action rewrites the top layer and descends
//! into `u` through the action of `H(m,1,k−1)`, so every result is again a
//! combination of basis words and no completion is ever needed.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::scalars::{char_poly_coeffs, ScalarValue};

use super::word::{Generator, Layer};

/// Linear combination of basis words of one fixed length.
pub(crate) type Lin = BTreeMap<Vec<Layer>, ScalarValue>;

pub(crate) fn add_scaled(target: &mut Lin, src: &Lin, c: &ScalarValue) {
    for (w, x) in src {
        add_term(target, w.clone(), &(x * c));
    }
}

pub(crate) fn add_term(target: &mut Lin, w: Vec<Layer>, c: &ScalarValue) {
    if c.is_zero() {
        return;
    }
    match target.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Prepends a layer to every word.
pub(crate) fn prefix(layer: Layer, lin: &Lin) -> Lin {
    lin.iter()
        .map(|(w, c)| {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(layer);
            v.extend_from_slice(w);
            (v, c.clone())
        })
        .collect()
}

pub(crate) fn single(w: Vec<Layer>) -> Lin {
    BTreeMap::from([(w, ScalarValue::one())])
}

pub(crate) struct Engine {
    m: Option<usize>,
    qd: ScalarValue,
    /// `a_0, …, a_{m−1}` of the characteristic polynomial of `τ`.
    chi: Vec<ScalarValue>,
    act_cache: Mutex<HashMap<(Generator, Vec<Layer>), Arc<Lin>>>,
    right_cache: Mutex<HashMap<(Generator, Vec<Layer>), Arc<Lin>>>,
    pow_cache: Mutex<HashMap<i64, Arc<Vec<(i64, ScalarValue)>>>>,
}

impl Engine {
    pub fn new(m: Option<usize>) -> Self {
        Engine {
            m,
            qd: ScalarValue::qdiff(),
            chi: m.map(char_poly_coeffs).unwrap_or_default(),
            act_cache: Mutex::new(HashMap::new()),
            right_cache: Mutex::new(HashMap::new()),
            pow_cache: Mutex::new(HashMap::new()),
        }
    }

    /// `z^c` reduced modulo the characteristic polynomial, as `(exponent, coefficient)` pairs.
    pub fn power(&self, c: i64) -> Arc<Vec<(i64, ScalarValue)>> {
        let Some(m) = self.m else {
            return Arc::new(vec![(c, ScalarValue::one())]);
        };
        if (0..m as i64).contains(&c) {
            return Arc::new(vec![(c, ScalarValue::one())]);
        }
        if let Some(hit) = self.pow_cache.lock().unwrap().get(&c) {
            return hit.clone();
        }
        let mut v = vec![ScalarValue::zero(); m];
        v[0] = ScalarValue::one();
        let step = |v: &mut Vec<ScalarValue>, up: bool| {
            if up {
                // z · Σ v_i z^i, with z^m = −Σ a_i z^i
                let top = v[m - 1].clone();
                for i in (1..m).rev() {
                    v[i] = &v[i - 1] - &(&top * &self.chi[i]);
                }
                v[0] = -(&top * &self.chi[0]);
            } else {
                // z⁻¹ = −(1/a_0)(z^{m−1} + a_{m−1} z^{m−2} + … + a_1)
                let low = v[0].clone();
                let scale = -(&low / &self.chi[0]);
                for i in 0..m - 1 {
                    v[i] = v[i + 1].clone();
                }
                v[m - 1] = ScalarValue::zero();
                for i in 0..m {
                    let a_next = if i + 1 == m {
                        ScalarValue::one()
                    } else {
                        self.chi[i + 1].clone()
                    };
                    v[i] = &v[i] + &(&scale * &a_next);
                }
            }
        };
        for _ in 0..c.unsigned_abs() {
            step(&mut v, c > 0);
        }
        let out: Vec<(i64, ScalarValue)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i as i64, x))
            .collect();
        let out = Arc::new(out);
        self.pow_cache.lock().unwrap().insert(c, out.clone());
        out
    }

    /// `g · w` for a basis word `w` of length `k ≥ g.min_n()`.
    pub fn act(&self, g: Generator, w: &[Layer]) -> Arc<Lin> {
        let key = (g, w.to_vec());
        if let Some(hit) = self.act_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = Arc::new(self.act_raw(g, w));
        self.act_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Memoized `w · g`, computed by `f` on a miss.
    pub fn right_cached(&self, g: Generator, w: &[Layer], f: impl FnOnce() -> Lin) -> Arc<Lin> {
        let key = (g, w.to_vec());
        if let Some(hit) = self.right_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let out = Arc::new(f());
        self.right_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn qd(&self) -> &ScalarValue {
        &self.qd
    }

    pub fn apply(&self, g: Generator, x: &Lin) -> Lin {
        let mut out = Lin::new();
        for (w, c) in x {
            add_scaled(&mut out, &self.act(g, w), c);
        }
        out
    }

    /// Applies `gens` in the given order (first element acts first).
    pub fn apply_seq(&self, gens: impl IntoIterator<Item = Generator>, x: Lin) -> Lin {
        gens.into_iter().fold(x, |acc, g| self.apply(g, &acc))
    }

    fn tau_power_letters(a: i64) -> impl Iterator<Item = Generator> {
        let g = if a >= 0 {
            Generator::Tau
        } else {
            Generator::TauInv
        };
        std::iter::repeat_n(g, a.unsigned_abs() as usize)
    }

    /// `β_j τ^a u`, acting first with `τ^a`, then `σ_1⁻¹, …, σ_{j−1}⁻¹`.
    fn beta_tau(&self, j: usize, a: i64, u: &[Layer]) -> Lin {
        let gens = Self::tau_power_letters(a).chain((1..j).map(Generator::SigmaInv));
        self.apply_seq(gens, single(u.to_vec()))
    }

    /// `Σ_e r_e T_{0,e,x}` for `z^c = Σ_e r_e z^e`.
    fn top_zero_power(&self, c: i64, x: &Lin, scale: &ScalarValue, out: &mut Lin) {
        for (e, r) in self.power(c).iter() {
            add_scaled(out, &prefix((0, *e), x), &(r * scale));
        }
    }

    fn act_raw(&self, g: Generator, w: &[Layer]) -> Lin {
        let (j, a) = w[0];
        let u = &w[1..];
        let mut out = Lin::new();
        match g {
            Generator::Sigma(i) => {
                if j + 1 < i {
                    out = prefix((j, a), &self.act(Generator::Sigma(i - 1), u));
                } else if j + 1 == i {
                    let mut lo = w.to_vec();
                    lo[0] = (i - 1, a);
                    let mut hi = w.to_vec();
                    hi[0] = (i, a);
                    add_term(&mut out, lo, &self.qd);
                    add_term(&mut out, hi, &ScalarValue::one());
                } else if j == i {
                    let mut lo = w.to_vec();
                    lo[0] = (i - 1, a);
                    add_term(&mut out, lo, &ScalarValue::one());
                } else {
                    out = prefix((j, a), &self.act(Generator::Sigma(i), u));
                }
            }
            Generator::SigmaInv(i) => {
                out = (*self.act(Generator::Sigma(i), w)).clone();
                add_term(&mut out, w.to_vec(), &-&self.qd);
            }
            Generator::Tau => {
                if j == 0 {
                    self.top_zero_power(a + 1, &single(u.to_vec()), &ScalarValue::one(), &mut out);
                } else {
                    let first = self.beta_tau(j, a, u);
                    self.top_zero_power(1, &first, &self.qd, &mut out);
                    let second = self.beta_tau(j, 0, u);
                    self.top_zero_power(a + 1, &second, &-&self.qd, &mut out);
                    let third = prefix((j, a), &self.act(Generator::Tau, u));
                    add_scaled(&mut out, &third, &ScalarValue::one());
                }
            }
            Generator::TauInv => match self.m {
                Some(m) => {
                    // τ⁻¹ = −(1/a_0) Σ_{i<m} a_{i+1} τ^i with a_m = 1
                    let inv_a0 = -&self.chi[0].inv();
                    let mut pw = single(w.to_vec());
                    for i in 0..m {
                        let a_next = if i + 1 == m {
                            ScalarValue::one()
                        } else {
                            self.chi[i + 1].clone()
                        };
                        add_scaled(&mut out, &pw, &(&inv_a0 * &a_next));
                        if i + 1 < m {
                            pw = self.apply(Generator::Tau, &pw);
                        }
                    }
                }
                None => {
                    if j == 0 {
                        let mut v = w.to_vec();
                        v[0] = (0, a - 1);
                        add_term(&mut out, v, &ScalarValue::one());
                    } else {
                        let third = prefix((j, a), &self.act(Generator::TauInv, u));
                        add_scaled(&mut out, &third, &ScalarValue::one());
                        let first = self.beta_tau(j, a - 1, u);
                        add_scaled(&mut out, &prefix((0, 0), &first), &-&self.qd);
                        let second = self.beta_tau(j, -1, u);
                        add_scaled(&mut out, &prefix((0, a), &second), &self.qd);
                    }
                }
            },
        }
        out
    }
}
