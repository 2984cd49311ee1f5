//! Greatest common divisors in the Laurent ring `ℚ[x₁^±, …]`.
//!
//! Units of that ring are the nonzero monomials, so a gcd is only defined up to a
//! monomial factor. The normal form returned here has no monomial content
//! and leading coefficient one.

use super::dense::gcd_degree;
use super::heu::heuristic_gcd;
use super::{rat, Coeff, LaurentPoly, Var};

/// Removes the monomial content and makes the leading coefficient one.
pub fn unit_normal(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    let content = p.monomial_content();
    p.mul_monomial(&content.inv()).monic()
}

pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return unit_normal(b);
    }
    if b.is_zero() {
        return unit_normal(a);
    }
    poly_gcd(unit_normal(a), unit_normal(b))
}

/// gcd of inputs already in unit-normal form.
fn poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::one();
    }
    if a == b {
        return a;
    }
    if a.len() == 1 || b.len() == 1 {
        // a unit-normal monomial is 1
        return LaurentPoly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    // A slot present on one side only: fold the other side against the
    // coefficients in that slot, which usually collapses to 1 at once.
    if let Some(&x) = va.iter().find(|v| !vb.contains(v)) {
        return fold_coeffs(b, &a, x);
    }
    if let Some(&x) = vb.iter().find(|v| !va.contains(v)) {
        return fold_coeffs(a, &b, x);
    }
    if provably_coprime(&a, &b, &va) {
        return LaurentPoly::one();
    }
    if let Some(g) = heuristic_gcd(&a, &b, &va) {
        return unit_normal(&g);
    }
    // Prefer the slot of lowest degree to keep the remainder sequence short.
    let x = *va
        .iter()
        .min_by_key(|&&v| {
            let (_, ha) = a.degree_range(v);
            let (_, hb) = b.degree_range(v);
            ha.max(hb)
        })
        .unwrap();
    univariate_gcd(&a, &b, x)
}

/// Image of `p` in `ℚ[x]` after evaluating every other slot at `point`.
fn image(p: &LaurentPoly, x: Var, point: &impl Fn(Var) -> Coeff) -> Vec<Coeff> {
    let (_, hi) = p.degree_range(x);
    let mut out = vec![Coeff::from_integer(0.into()); hi.max(0) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = c.clone();
        for &(v, e) in m.pairs() {
            if v != x {
                val *= num_traits::pow(point(v), e as usize);
            }
        }
        out[m.exp(x) as usize] += val;
    }
    out
}

/// Cheap certificate that two polynomials share no factor.
///
/// A common factor of positive degree in `x` survives evaluation of the other
/// slots at any point where both leading coefficients in `x` stay nonzero, so
/// a constant gcd of the images proves the true gcd has degree zero in `x`.
/// `false` means "unknown".
fn provably_coprime(a: &LaurentPoly, b: &LaurentPoly, vars: &[Var]) -> bool {
    'vars: for &x in vars {
        let (_, da) = a.degree_range(x);
        let (_, db) = b.degree_range(x);
        for attempt in 0..3i64 {
            let point = |v: Var| {
                let h = var_hash(v) as i64;
                rat(2 + (h * 7919 + attempt * 104_729 + 13 * x_hash(x)) % 97)
            };
            let ia = image(a, x, &point);
            let ib = image(b, x, &point);
            let lead_ok = |im: &[Coeff], d: i32| im.get(d as usize).is_some_and(|c| *c != rat(0));
            if !lead_ok(&ia, da) || !lead_ok(&ib, db) {
                continue;
            }
            if gcd_degree(&ia, &ib) == Some(0) {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

fn var_hash(v: Var) -> u32 {
    match v {
        Var::Q => 1,
        Var::V(j) => 10 + j as u32,
        Var::D => 3,
        Var::Mu(a) => 100 + (a + 50) as u32,
        Var::Gamma(a) => 300 + (a + 50) as u32,
        Var::GammaBar(a) => 500 + (a + 50) as u32,
        Var::U(k) => 700 + k as u32,
        Var::Rho => 5,
    }
}

fn x_hash(x: Var) -> i64 {
    var_hash(x) as i64
}

fn fold_coeffs(start: LaurentPoly, p: &LaurentPoly, x: Var) -> LaurentPoly {
    let (_, mut coeffs) = p.to_univariate(x);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    let mut g = start;
    for c in coeffs {
        g = poly_gcd(g, unit_normal(&c));
        if g.is_one() {
            break;
        }
    }
    g
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &LaurentPoly, x: Var) -> LaurentPoly {
    let (_, coeffs) = p.to_univariate(x);
    coeff_gcd(&coeffs)
}

fn coeff_gcd(coeffs: &[LaurentPoly]) -> LaurentPoly {
    let mut nonzero: Vec<&LaurentPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    // small coefficients first: the running gcd collapses faster
    nonzero.sort_by_key(|c| c.len());
    let mut g = LaurentPoly::zero();
    for c in nonzero {
        g = if g.is_zero() {
            unit_normal(c)
        } else {
            poly_gcd(g, unit_normal(c))
        };
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(v: &mut Vec<LaurentPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as dense coefficient vectors in one slot.
fn prem(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(bc * &lr);
        }
        trim(&mut r);
    }
    r
}

fn primitive(v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let c = coeff_gcd(v);
    v.iter()
        .map(|x| x.div_exact(&c).expect("content divides"))
        .collect()
}

fn univariate_gcd(a: &LaurentPoly, b: &LaurentPoly, x: Var) -> LaurentPoly {
    // Inputs have no monomial content, so the lowest x-power is zero.
    let (_, ua) = a.to_univariate(x);
    let (_, ub) = b.to_univariate(x);
    let ca = coeff_gcd(&ua);
    let cb = coeff_gcd(&ub);
    let c = poly_gcd(ca, cb);
    let mut p = primitive(&ua);
    let mut r = primitive(&ub);
    if p.len() < r.len() {
        std::mem::swap(&mut p, &mut r);
    }
    loop {
        let rem = prem(&p, &r);
        if rem.is_empty() {
            break;
        }
        if rem.len() == 1 {
            r = vec![LaurentPoly::one()];
            break;
        }
        p = r;
        r = primitive(&rem);
    }
    let g = LaurentPoly::from_univariate(x, 0, &r);
    unit_normal(&(&c * &g))
}
