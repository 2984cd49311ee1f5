//! Dense univariate polynomials over ℚ, ascending coefficients.

use num_traits::Zero;

use super::Coeff;

pub(crate) type Dense = Vec<Coeff>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn dense_mul(a: &[Coeff], b: &[Coeff]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Coeff::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn dense_sub(a: &[Coeff], b: &[Coeff]) -> Dense {
    let mut out = vec![Coeff::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder over ℚ.
pub(crate) fn dense_divrem(a: &[Coeff], b: &[Coeff]) -> (Dense, Dense) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![Coeff::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let k = &r[dr] / &lb;
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &k * bc;
        }
        quot[dr - db] = k;
        trim(&mut r);
    }
    (quot, r)
}

/// Degree of the gcd over ℚ (`None` when both inputs are zero).
pub(crate) fn gcd_degree(a: &[Coeff], b: &[Coeff]) -> Option<usize> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    if x.is_empty() {
        None
    } else {
        Some(x.len() - 1)
    }
}
