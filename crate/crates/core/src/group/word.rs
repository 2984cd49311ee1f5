use std::fmt;
use std::str::FromStr;

use super::{GroupElement, GroupError, GroupSignature};

/// A generator power: `t^k` (k may be negative) or `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLetter {
    T(i64),
    S(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<GroupLetter>);

impl GroupWord {
    pub fn new() -> Self {
        GroupWord(Vec::new())
    }

    pub fn letters(&self) -> &[GroupLetter] {
        &self.0
    }

    pub fn push(&mut self, l: GroupLetter) {
        self.0.push(l);
    }

    /// Number of letters with `t^k` counted `|k|` times.
    pub fn len(&self) -> usize {
        self.0
            .iter()
            .map(|l| match l {
                GroupLetter::T(k) => k.unsigned_abs() as usize,
                GroupLetter::S(_) => 1,
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True if no letter is a negative power of `t`.
    pub fn is_positive(&self) -> bool {
        self.0
            .iter()
            .all(|l| !matches!(l, GroupLetter::T(k) if *k < 0))
    }

    /// Expands `t^k` into `|k|` copies of `t` or `t^-1`.
    pub fn expanded(&self) -> GroupWord {
        let mut out = Vec::new();
        for &l in &self.0 {
            match l {
                GroupLetter::T(k) => out.extend(std::iter::repeat_n(
                    GroupLetter::T(k.signum()),
                    k.unsigned_abs() as usize,
                )),
                s => out.push(s),
            }
        }
        GroupWord(out)
    }

    pub fn validate(&self, sig: GroupSignature) -> Result<(), GroupError> {
        for l in &self.0 {
            if let GroupLetter::S(i) = *l {
                if i == 0 || i >= sig.n {
                    return Err(GroupError::Index(format!("s{i} with n = {}", sig.n)));
                }
            }
            if matches!(l, GroupLetter::T(_)) && sig.n == 0 {
                return Err(GroupError::Index("t with n = 0".into()));
            }
        }
        Ok(())
    }

    /// The product of the generator images, left to right.
    pub fn evaluate(&self, sig: GroupSignature) -> Result<GroupElement, GroupError> {
        self.validate(sig)?;
        let t = GroupElement::t(sig);
        let mut acc = GroupElement::identity(sig);
        for &l in &self.0 {
            let g = match l {
                GroupLetter::T(k) => t.pow(k),
                GroupLetter::S(i) => GroupElement::s(sig, i)?,
            };
            acc = acc.mul_unchecked(&g);
        }
        Ok(acc)
    }
}

/// Shorthand for [`GroupWord::evaluate`].
pub fn word_to_element(w: &GroupWord, sig: GroupSignature) -> Result<GroupElement, GroupError> {
    w.evaluate(sig)
}

impl fmt::Display for GroupLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLetter::T(1) => write!(f, "t"),
            GroupLetter::T(k) => write!(f, "t^{k}"),
            GroupLetter::S(i) => write!(f, "s{i}"),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = GroupError;

    /// Letters `t`, `t^k`, `s<i>` separated by whitespace or `*`; `1` is the empty word.
    fn from_str(text: &str) -> Result<Self, GroupError> {
        let mut out = Vec::new();
        for tok in text
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|s| !s.is_empty())
        {
            let bad = || GroupError::Parse(format!("bad letter {tok:?}"));
            if tok == "1" {
                continue;
            }
            if let Some(rest) = tok.strip_prefix('t') {
                let k = match rest.strip_prefix('^') {
                    None if rest.is_empty() => 1,
                    Some(e) => e.parse::<i64>().map_err(|_| bad())?,
                    None => return Err(bad()),
                };
                out.push(GroupLetter::T(k));
            } else if let Some(rest) = tok.strip_prefix('s') {
                out.push(GroupLetter::S(rest.parse().map_err(|_| bad())?));
            } else {
                return Err(bad());
            }
        }
        Ok(GroupWord(out))
    }
}
