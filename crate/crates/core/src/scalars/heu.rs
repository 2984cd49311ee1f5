//! Heuristic polynomial gcd by evaluation at large integers.
//!
//! Each slot in turn is evaluated at an integer `ξ` large enough that the
//! gcd of the images can be read back as a `ξ`-adic expansion. A candidate is
//! accepted only if it divides both inputs exactly, so a wrong guess costs
//! time but never correctness. Failure returns `None` and the caller falls
//! back to a remainder sequence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coeff, LaurentPoly, Monomial, Var};

type Exps = Vec<u32>;
type IPoly = BTreeMap<Exps, BigInt>;

const ATTEMPTS: usize = 6;

/// gcd of two polynomials (no negative powers), up to a rational factor.
pub(crate) fn heuristic_gcd(a: &LaurentPoly, b: &LaurentPoly, vars: &[Var]) -> Option<LaurentPoly> {
    let f = to_int(a, vars)?;
    let g = to_int(b, vars)?;
    let h = heu(&f, &g, vars.len())?;
    Some(from_int(&h, vars))
}

fn to_int(p: &LaurentPoly, vars: &[Var]) -> Option<IPoly> {
    let lcm = p
        .terms()
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out = IPoly::new();
    for (m, c) in p.terms() {
        let mut e = vec![0u32; vars.len()];
        for &(v, k) in m.pairs() {
            let i = vars.iter().position(|&w| w == v)?;
            e[i] = u32::try_from(k).ok()?;
        }
        out.insert(e, c.numer() * (&lcm / c.denom()));
    }
    Some(out)
}

fn from_int(p: &IPoly, vars: &[Var]) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().map(|(e, c)| {
        let pairs = vars.iter().zip(e).map(|(&v, &k)| (v, k as i32));
        (Monomial::from_pairs(pairs), Coeff::from_integer(c.clone()))
    }))
}

fn content(p: &IPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn max_norm(p: &IPoly) -> BigInt {
    p.values().map(|c| c.abs()).max().unwrap_or_default()
}

fn is_constant(p: &IPoly) -> bool {
    p.keys().all(|e| e.iter().all(|&k| k == 0))
}

fn eval_first(p: &IPoly, xi: &BigInt) -> IPoly {
    let mut out = IPoly::new();
    for (e, c) in p {
        let term = c * num_traits::pow(xi.clone(), e[0] as usize);
        *out.entry(e[1..].to_vec()).or_default() += term;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Recovers a polynomial in one more slot from its value at `xi`.
fn interpolate(h: &IPoly, xi: &BigInt) -> IPoly {
    let half = xi / 2;
    let mut rest = h.clone();
    let mut out = IPoly::new();
    let mut power = 0u32;
    while !rest.is_empty() {
        let mut next = IPoly::new();
        for (e, c) in &rest {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                let mut ee = Vec::with_capacity(e.len() + 1);
                ee.push(power);
                ee.extend_from_slice(e);
                out.insert(ee, r.clone());
            }
            let q = (c - r) / xi;
            if !q.is_zero() {
                next.insert(e.clone(), q);
            }
        }
        rest = next;
        power += 1;
    }
    out
}

fn divides(h: &IPoly, f: &IPoly, nvars: usize) -> bool {
    let vars: Vec<Var> = (0..nvars as u16).map(Var::U).collect();
    from_int(f, &vars).div_exact(&from_int(h, &vars)).is_some()
}

fn heu(f: &IPoly, g: &IPoly, nvars: usize) -> Option<IPoly> {
    let cf = content(f);
    let cg = content(g);
    let gc = cf.gcd(&cg);
    if nvars == 0 {
        return Some(IPoly::from([(vec![], gc)]));
    }
    let f: IPoly = f.iter().map(|(e, c)| (e.clone(), c / &cf)).collect();
    let g: IPoly = g.iter().map(|(e, c)| (e.clone(), c / &cg)).collect();
    if is_constant(&f) || is_constant(&g) {
        return Some(IPoly::from([(vec![0; nvars], gc)]));
    }
    let fn_ = max_norm(&f);
    let gn = max_norm(&g);
    // Below 2·min(|f|, |g|) + 2 a proper divisor of the gcd can pass the
    // division test, so the starting point never goes under that bound.
    let mut xi: BigInt = 2 * fn_.min(gn) + 29;
    for _ in 0..ATTEMPTS {
        let ff = eval_first(&f, &xi);
        let gg = eval_first(&g, &xi);
        if !ff.is_empty() && !gg.is_empty() {
            if let Some(h) = heu(&ff, &gg, nvars - 1) {
                let mut h = interpolate(&h, &xi);
                let c = content(&h);
                if !c.is_zero() {
                    h.values_mut().for_each(|x| *x /= &c);
                    if divides(&h, &f, nvars) && divides(&h, &g, nvars) {
                        h.values_mut().for_each(|x| *x *= &gc);
                        return Some(h);
                    }
                }
            }
        }
        xi = (73794 * &xi * xi.sqrt().sqrt()) / 27011;
    }
    None
}
