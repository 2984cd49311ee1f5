use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::Var;

/// A Laurent monomial: sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: i32) -> Self {
        let mut s = SmallVec::new();
        if e != 0 {
            s.push((v, e));
        }
        Monomial(s)
    }

    /// Builds from arbitrary pairs, merging repeats and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Self {
        pairs
            .into_iter()
            .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::pow(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.exp(v) != 0
    }

    fn merge(&self, other: &Self, f: impl Fn(i32, i32) -> i32) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len().max(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, f(a[i - 1].1, 0))
            } else if i >= a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, f(0, b[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, f(a[i - 1].1, b[j - 1].1))
            };
            if e != 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        self.merge(other, |x, y| x + y)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.merge(other, |x, y| x - y)
    }

    pub fn inv(&self) -> Self {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn powi(&self, k: i32) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Componentwise minimum of exponents (missing slots count as zero).
    pub fn meet(&self, other: &Self) -> Self {
        self.merge(other, |x, y| x.min(y))
    }

    /// Componentwise maximum of exponents (missing slots count as zero).
    pub fn join(&self, other: &Self) -> Self {
        self.merge(other, |x, y| x.max(y))
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&(_, e)| e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Drops the slot `v`, returning its exponent and the rest.
    pub fn split(&self, v: Var) -> (i32, Monomial) {
        let e = self.exp(v);
        (
            e,
            Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()),
        )
    }

    /// Applies `f` to every pair; the result is re-sorted and merged.
    pub fn map(&self, f: impl Fn(Var, i32) -> (Var, i32)) -> Self {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| f(v, e)))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Lexicographic order on exponent vectors, `q` first. Compatible with
    /// multiplication, also for negative exponents.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            let (x, y) = match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => (e, 0),
                (None, Some(&(_, f))) => (0, f),
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => {
                        i += 1;
                        if e != 0 {
                            return e.cmp(&0);
                        }
                        continue;
                    }
                    Ordering::Greater => {
                        j += 1;
                        if f != 0 {
                            return 0.cmp(&f);
                        }
                        continue;
                    }
                    Ordering::Equal => (e, f),
                },
            };
            match x.cmp(&y) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                o => return o,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
