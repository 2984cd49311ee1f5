use std::fmt;

/// A variable slot of the coefficient ring.
///
/// The derived order doubles as the variable priority of the monomial order:
/// `q` is the most significant slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q,
    /// Root `v_j` of the cyclotomic relation, 1-based.
    V(u16),
    /// Trace parameter attached to `σ_{k-1}`.
    D,
    /// Trace parameter `μ_a = Tr₁(τ^a)`.
    Mu(i32),
    /// Central-form parameter `γ_a = γ(τ^a)`.
    Gamma(i32),
    /// Formal image of `γ_a` under the bar involution of the ground ring.
    GammaBar(i32),
    /// Spectral parameter `u_k`, 1-based.
    U(u16),
    Rho,
}

fn fmt_index(i: i32) -> String {
    if i < 0 {
        format!("n{}", -i)
    } else {
        i.to_string()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Q => write!(f, "q"),
            Var::V(j) => write!(f, "v{j}"),
            Var::D => write!(f, "D"),
            Var::Mu(a) => write!(f, "mu{}", fmt_index(a)),
            Var::Gamma(a) => write!(f, "g{}", fmt_index(a)),
            Var::GammaBar(a) => write!(f, "gbar{}", fmt_index(a)),
            Var::U(k) => write!(f, "u{k}"),
            Var::Rho => write!(f, "rho"),
        }
    }
}

impl Var {
    /// Parses the textual name produced by `Display`.
    pub fn parse(name: &str) -> Option<Var> {
        fn index(s: &str) -> Option<i32> {
            if let Some(rest) = s.strip_prefix('n') {
                rest.parse::<i32>().ok().filter(|&x| x > 0).map(|x| -x)
            } else {
                s.parse::<i32>().ok().filter(|&x| x >= 0)
            }
        }
        match name {
            "q" => return Some(Var::Q),
            "D" => return Some(Var::D),
            "rho" => return Some(Var::Rho),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("gbar") {
            return index(rest).map(Var::GammaBar);
        }
        if let Some(rest) = name.strip_prefix("gamma") {
            return index(rest).map(Var::Gamma);
        }
        if let Some(rest) = name.strip_prefix("mu") {
            return index(rest).map(Var::Mu);
        }
        if let Some(rest) = name.strip_prefix('g') {
            return index(rest).map(Var::Gamma);
        }
        let positive = |s: &str| s.parse::<u16>().ok().filter(|&x| x > 0);
        if let Some(rest) = name.strip_prefix('v') {
            return positive(rest).map(Var::V);
        }
        if let Some(rest) = name.strip_prefix('u') {
            return positive(rest).map(Var::U);
        }
        None
    }

    /// True for the slots of the ground ring `𝒜_m` itself (`q` and the `v_j`).
    pub fn is_ground(self) -> bool {
        matches!(self, Var::Q | Var::V(_))
    }
}

/// The slots in play for one computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableTable {
    vars: Vec<Var>,
}

impl VariableTable {
    /// `q` and `v_1..v_m` (no `v` slots when `m` is `None`, the affine case).
    pub fn ground(m: Option<usize>) -> Self {
        let mut vars = vec![Var::Q];
        if let Some(m) = m {
            vars.extend((1..=m as u16).map(Var::V));
        }
        VariableTable { vars }
    }

    pub fn with(mut self, var: Var) -> Self {
        if !self.vars.contains(&var) {
            self.vars.push(var);
            self.vars.sort();
        }
        self
    }

    pub fn with_spectral(mut self, n: usize) -> Self {
        for k in 1..=n as u16 {
            self = self.with(Var::U(k));
        }
        self
    }

    pub fn contains(&self, var: Var) -> bool {
        self.vars.contains(&var)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }
}
