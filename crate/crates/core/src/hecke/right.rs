//! Right action of the generators on basis words.
//!
//! Letters other than `σ_{n−1}` commute past the top layer and act on the
//! lower word. For `σ_{n−1}` the two top layers `(j, a)`, `(k, b)` are
//! rewritten in closed form; exponents that leave `{0, …, m−1}` are reduced
//! through the characteristic polynomial of `τ`.

use std::sync::Arc;

use crate::scalars::ScalarValue;

use super::engine::{add_scaled, add_term, prefix, Engine, Lin};
use super::word::{Generator, Layer};

pub(crate) fn act(engine: &Engine, g: Generator, w: &[Layer]) -> Arc<Lin> {
    engine.right_cached(g, w, || act_raw(engine, g, w))
}

fn act_raw(engine: &Engine, g: Generator, w: &[Layer]) -> Lin {
    let n = w.len();
    let (j, a) = w[0];
    match g {
        Generator::SigmaInv(i) => {
            let mut out = (*act(engine, Generator::Sigma(i), w)).clone();
            add_term(&mut out, w.to_vec(), &-engine.qd());
            out
        }
        Generator::Tau | Generator::TauInv if n == 1 => {
            let c = if g == Generator::Tau { a + 1 } else { a - 1 };
            let mut out = Lin::new();
            for (e, r) in engine.power(c).iter() {
                add_term(&mut out, vec![(0, *e)], r);
            }
            out
        }
        Generator::Sigma(i) if i + 1 == n => sigma_top(engine, w),
        _ => prefix((j, a), &act(engine, g, &w[1..])),
    }
}

/// `T_{j,e₁,T_{k,e₂,rest}}` with both exponents reduced.
fn two_layers(
    engine: &Engine,
    out: &mut Lin,
    top: (usize, i64),
    inner: (usize, i64),
    rest: &[Layer],
    c: &ScalarValue,
) {
    for (e, r) in engine.power(top.1).iter() {
        for (f, s) in engine.power(inner.1).iter() {
            let mut v = Vec::with_capacity(rest.len() + 2);
            v.push((top.0, *e));
            v.push((inner.0, *f));
            v.extend_from_slice(rest);
            add_term(out, v, &(&(r * s) * c));
        }
    }
}

fn sigma_top(engine: &Engine, w: &[Layer]) -> Lin {
    let (j, a) = w[0];
    let (k, b) = w[1];
    let rest = &w[2..];
    let qd = engine.qd().clone();
    let one = ScalarValue::one();
    let neg = ScalarValue::int(-1);

    let mut bracket = Lin::new();
    two_layers(engine, &mut bracket, (j, a + b), (k, 0), rest, &one);
    if a > 0 {
        for c in 1..=a {
            two_layers(engine, &mut bracket, (j, c), (k, a + b - c), rest, &one);
            two_layers(engine, &mut bracket, (j, c + b), (k, a - c), rest, &neg);
        }
    } else if a < 0 {
        for c in 1..=-a {
            two_layers(engine, &mut bracket, (j, c + a + b), (k, -c), rest, &one);
            two_layers(engine, &mut bracket, (j, c + a), (k, b - c), rest, &neg);
        }
    }
    let mut out = Lin::new();
    add_scaled(&mut out, &bracket, &qd);
    if j <= k {
        two_layers(engine, &mut out, (k + 1, b), (j, a), rest, &one);
    } else {
        two_layers(engine, &mut out, (k, b), (j - 1, a), rest, &one);
        two_layers(engine, &mut out, (j, b), (k, a), rest, &-&qd);
    }
    out
}
