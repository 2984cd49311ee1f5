//! The algebra `H(m,1,n)` on its inductive basis.
//!
//! Every element is a finite combination of basis words (see [`BasisWord`]).
//! Products are computed by letting generators act on the left of basis words;
//! each step lands back in the basis, so there is no rewriting system to
//! complete. `m = None` is the affine algebra, where layer exponents range over
//! all integers.

mod bases;
mod element;
mod engine;
mod right;
mod word;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupSignature, NestedNormalForm};
use crate::scalars::{bar, specialize_scalar, Cyclotomic, ScalarError, ScalarValue};

pub use element::HElement;
pub use word::{BasisWord, Generator, GeneratorWord, Layer};

use engine::{add_scaled, prefix, single, Engine, Lin};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("index out of range: {0}")]
    Index(String),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("signature mismatch: {0} vs {1}")]
    Mismatch(AlgebraSignature, AlgebraSignature),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `(m, n)` for `H(m,1,n)`; `m = None` is `m = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSignature {
    pub m: Option<usize>,
    pub n: usize,
}

impl AlgebraSignature {
    pub fn new(m: Option<usize>, n: usize) -> Result<Self, HeckeError> {
        if m == Some(0) {
            return Err(HeckeError::Shape("m must be positive".into()));
        }
        Ok(AlgebraSignature { m, n })
    }

    pub fn finite(m: usize, n: usize) -> Self {
        Self::new(Some(m), n).expect("m positive")
    }

    pub fn affine(n: usize) -> Self {
        AlgebraSignature { m: None, n }
    }

    /// Whether `a` lies in the exponent set `{0, …, m−1}` (all of `ℤ` for `m = ∞`).
    pub fn exponent_ok(&self, a: i64) -> bool {
        self.m.is_none_or(|m| (0..m as i64).contains(&a))
    }

    /// `m^n n!`, or `None` for the affine algebra.
    pub fn dimension(&self) -> Option<u128> {
        self.group().order()
    }

    pub fn group(&self) -> GroupSignature {
        GroupSignature {
            m: self.m,
            n: self.n,
        }
    }

    pub fn with_n(&self, n: usize) -> Self {
        AlgebraSignature { m: self.m, n }
    }
}

impl fmt::Display for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "H({m},1,{})", self.n),
            None => write!(f, "H(∞,1,{})", self.n),
        }
    }
}

/// One shared engine per `m`, so caches survive across contexts.
fn engine_for(m: Option<usize>) -> Arc<Engine> {
    static ENGINES: OnceLock<Mutex<HashMap<Option<usize>, Arc<Engine>>>> = OnceLock::new();
    let map = ENGINES.get_or_init(|| Mutex::new(HashMap::new()));
    map.lock()
        .unwrap()
        .entry(m)
        .or_insert_with(|| Arc::new(Engine::new(m)))
        .clone()
}

/// Operations on `H(m,1,n)` for one fixed signature.
#[derive(Clone)]
pub struct Hecke {
    sig: AlgebraSignature,
    engine: Arc<Engine>,
}

impl fmt::Debug for Hecke {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hecke({})", self.sig)
    }
}

impl Hecke {
    pub fn new(sig: AlgebraSignature) -> Self {
        Hecke {
            sig,
            engine: engine_for(sig.m),
        }
    }

    pub fn finite(m: usize, n: usize) -> Self {
        Self::new(AlgebraSignature::finite(m, n))
    }

    pub fn affine(n: usize) -> Self {
        Self::new(AlgebraSignature::affine(n))
    }

    pub fn signature(&self) -> AlgebraSignature {
        self.sig
    }

    pub fn m(&self) -> Option<usize> {
        self.sig.m
    }

    pub fn n(&self) -> usize {
        self.sig.n
    }

    /// The context one level down, `H(m,1,n−1)`.
    pub fn lower(&self) -> Hecke {
        Hecke {
            sig: self.sig.with_n(self.sig.n - 1),
            engine: self.engine.clone(),
        }
    }

    pub fn upper(&self) -> Hecke {
        Hecke {
            sig: self.sig.with_n(self.sig.n + 1),
            engine: self.engine.clone(),
        }
    }

    /// All basis words in lexicographic order of the layer tuple.
    pub fn basis(&self) -> Result<Vec<BasisWord>, HeckeError> {
        let m = self
            .sig
            .m
            .ok_or(HeckeError::Unsupported("the affine basis is infinite"))?;
        Ok(self.enumerate(0..m as i64))
    }

    /// Basis words with every exponent in `range`; for the affine algebra this is a finite window.
    pub fn basis_window(&self, bound: i64) -> Vec<BasisWord> {
        match self.sig.m {
            Some(m) => self.enumerate(0..m as i64),
            None => self.enumerate(-bound..bound + 1),
        }
    }

    fn enumerate(&self, range: std::ops::Range<i64>) -> Vec<BasisWord> {
        let mut out = vec![Vec::new()];
        for k in (1..=self.sig.n).rev() {
            let mut next = Vec::new();
            for p in &out {
                for j in 0..k {
                    for a in range.clone() {
                        let mut v: Vec<Layer> = p.clone();
                        v.push((j, a));
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|layers| BasisWord { layers }).collect()
    }

    pub fn zero(&self) -> HElement {
        HElement::from_lin(self.sig, Lin::new())
    }

    pub fn identity(&self) -> HElement {
        self.basis_element(&BasisWord::identity(self.sig.n))
            .expect("identity word is valid")
    }

    pub fn scalar(&self, c: ScalarValue) -> HElement {
        self.identity().scale(&c)
    }

    pub fn basis_element(&self, w: &BasisWord) -> Result<HElement, HeckeError> {
        w.validate(self.sig)?;
        Ok(HElement::from_lin(self.sig, single(w.layers.clone())))
    }

    pub fn generator(&self, g: Generator) -> Result<HElement, HeckeError> {
        self.left_mul_generator(g, &self.identity())
    }

    pub(crate) fn check_sig(&self, x: &HElement) -> Result<(), HeckeError> {
        if x.signature() != self.sig {
            return Err(HeckeError::Mismatch(self.sig, x.signature()));
        }
        Ok(())
    }

    pub fn left_mul_generator(&self, g: Generator, x: &HElement) -> Result<HElement, HeckeError> {
        g.validate(self.sig.n)?;
        self.check_sig(x)?;
        Ok(HElement::from_lin(self.sig, self.engine.apply(g, x.lin())))
    }

    /// The product of the letters, computed by letting them act on `1` from right to left.
    pub fn from_word(&self, w: &GeneratorWord) -> Result<HElement, HeckeError> {
        w.validate(self.sig.n)?;
        let start = single(BasisWord::identity(self.sig.n).layers);
        Ok(HElement::from_lin(
            self.sig,
            self.apply_letters(w.letters(), start),
        ))
    }

    /// `τ^c` in terms of `1, τ, …, τ^{m−1}` (a single term for the affine algebra).
    pub fn tau_power(&self, c: i64) -> Vec<(i64, ScalarValue)> {
        self.engine.power(c).as_ref().clone()
    }

    /// `t · x`, where `t` is the layer word `(j, a)` at the top level of this algebra.
    pub fn layer_product(&self, (j, a): Layer, x: &HElement) -> Result<HElement, HeckeError> {
        self.check_sig(x)?;
        if j >= self.sig.n.max(1) || !self.sig.exponent_ok(a) {
            return Err(HeckeError::Index(format!("layer ({j},{a}) at level {}", self.sig.n)));
        }
        let letters = word::layer_letters(self.sig.n, j, a);
        Ok(HElement::from_lin(self.sig, self.apply_letters(&letters, x.lin().clone())))
    }

    pub(crate) fn apply_letters(&self, letters: &[Generator], x: Lin) -> Lin {
        self.engine.apply_seq(letters.iter().rev().copied(), x)
    }

    pub fn parse_word(&self, text: &str) -> Result<HElement, HeckeError> {
        self.from_word(&text.parse()?)
    }

    pub fn multiply(&self, x: &HElement, y: &HElement) -> Result<HElement, HeckeError> {
        self.check_sig(x)?;
        self.check_sig(y)?;
        Ok(HElement::from_lin(self.sig, self.mul_lin(x.lin(), y.lin())))
    }

    pub(crate) fn mul_lin(&self, x: &Lin, y: &Lin) -> Lin {
        let mut out = Lin::new();
        for (w, c) in x {
            let letters = BasisWord { layers: w.clone() }.letters();
            add_scaled(
                &mut out,
                &self.apply_letters(letters.letters(), y.clone()),
                c,
            );
        }
        out
    }

    /// `x · g`, by the right-action formulas on basis words (independent of [`Hecke::multiply`]).
    pub fn right_mul_generator(&self, x: &HElement, g: Generator) -> Result<HElement, HeckeError> {
        g.validate(self.sig.n)?;
        self.check_sig(x)?;
        let mut out = Lin::new();
        for (w, c) in x.lin() {
            add_scaled(&mut out, &right::act(&self.engine, g, w), c);
        }
        Ok(HElement::from_lin(self.sig, out))
    }

    /// The ring involution inverting `τ`, `σ_i` and the ground-ring variables.
    pub fn iota(&self, x: &HElement) -> Result<HElement, HeckeError> {
        self.check_sig(x)?;
        let mut out = Lin::new();
        let start = single(BasisWord::identity(self.sig.n).layers);
        for (w, c) in x.lin() {
            let inv: Vec<Generator> = BasisWord { layers: w.clone() }
                .letters()
                .0
                .into_iter()
                .map(Generator::inverse)
                .collect();
            add_scaled(&mut out, &self.apply_letters(&inv, start.clone()), &bar(c));
        }
        Ok(HElement::from_lin(self.sig, out))
    }

    /// The anti-involution fixing every generator.
    pub fn varpi(&self, x: &HElement) -> Result<HElement, HeckeError> {
        self.check_sig(x)?;
        let mut out = Lin::new();
        let start = single(BasisWord::identity(self.sig.n).layers);
        for (w, c) in x.lin() {
            let mut rev = BasisWord { layers: w.clone() }.letters().0;
            rev.reverse();
            add_scaled(&mut out, &self.apply_letters(&rev, start.clone()), c);
        }
        Ok(HElement::from_lin(self.sig, out))
    }

    /// The image of `x ∈ H(m,1,n)` in `H(m,1,n+1)`.
    pub fn embed(&self, x: &HElement) -> Result<HElement, HeckeError> {
        self.check_sig(x)?;
        Ok(HElement::from_lin(
            self.sig.with_n(self.sig.n + 1),
            prefix((self.sig.n, 0), x.lin()),
        ))
    }

    /// The matrix of left multiplication by `g` on the basis, column `c` holding `g · basis[c]`.
    pub fn left_matrix(&self, g: Generator) -> Result<Vec<Vec<ScalarValue>>, HeckeError> {
        g.validate(self.sig.n)?;
        let basis = self.basis()?;
        let index: HashMap<&[Layer], usize> = basis
            .iter()
            .enumerate()
            .map(|(i, w)| (&w.layers[..], i))
            .collect();
        let d = basis.len();
        let mut mat = vec![vec![ScalarValue::zero(); d]; d];
        for (col, w) in basis.iter().enumerate() {
            for (v, c) in self.engine.act(g, &w.layers).iter() {
                mat[index[&v[..]]][col] = c.clone();
            }
        }
        Ok(mat)
    }

    /// The image in the group algebra of `G(m,1,n)` over `ℚ[ζ]/Φ_m` under
    /// `q ↦ sign`, `v_j ↦ ζ^{j−1}`; a basis word goes to the group element
    /// with the same layered normal form.
    pub fn specialize(
        &self,
        x: &HElement,
        sign: i32,
    ) -> Result<BTreeMap<GroupElement, Cyclotomic>, HeckeError> {
        self.check_sig(x)?;
        let gs = self.sig.group();
        if gs.m.is_none() {
            return Err(HeckeError::Unsupported(
                "group specialization needs finite m",
            ));
        }
        let mut out: BTreeMap<GroupElement, Cyclotomic> = BTreeMap::new();
        for (w, c) in x.lin() {
            let g = NestedNormalForm { layers: w.clone() }.evaluate(gs)?;
            let v = specialize_scalar(c, gs.m, sign)?;
            let e = out
                .entry(g)
                .or_insert_with(|| Cyclotomic::zero(gs.m.unwrap()));
            *e = &*e + &v;
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }
}
