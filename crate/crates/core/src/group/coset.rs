//! Left cosets of `G(m,1,n−1)` in `G(m,1,n)`.
//!
//! For finite `m` the table comes from coset enumeration on the defining
//! presentation (Hasselgrove–Leech–Trotter strategy with coincidence
//! processing). Enumeration yields right cosets `W·y`; the left coset `y⁻¹W`
//! corresponds, and left multiplication by `g` is the right action of `g⁻¹`.

use std::collections::VecDeque;

use serde::Serialize;

use super::{
    normal::transversal_word, GroupElement, GroupError, GroupLetter, GroupSignature, GroupWord,
};

const NONE: usize = usize::MAX;

/// One left coset `L_{j,α} W`, where `L_{j,α} = s_j ⋯ s_1 t^α s_1 ⋯ s_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetVertex {
    pub j: usize,
    pub alpha: i64,
    #[serde(serialize_with = "word_text")]
    pub word: GroupWord,
}

fn word_text<S: serde::Serializer>(w: &GroupWord, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorAction {
    #[serde(serialize_with = "letter_text")]
    pub letter: GroupLetter,
    /// Image vertex under left multiplication; `None` outside a truncated window.
    pub image: Vec<Option<usize>>,
}

fn letter_text<S: serde::Serializer>(l: &GroupLetter, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&l.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetTable {
    pub m: Option<usize>,
    pub n: usize,
    pub vertices: Vec<CosetVertex>,
    /// Actions of `t` and `s_1, …, s_{n−1}`, in that order.
    pub actions: Vec<GeneratorAction>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, j: usize, alpha: i64) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.j == j && v.alpha == alpha)
    }

    pub fn action(&self, letter: GroupLetter) -> Option<&GeneratorAction> {
        self.actions.iter().find(|a| a.letter == letter)
    }
}

/// Label `(j, α)` of the left coset `gW`: where `g` sends the top position and its color.
pub fn coset_label(g: &GroupElement) -> (usize, i64) {
    let n = g.signature().n;
    let j = g.perm()[n - 1];
    (j, g.colors()[j])
}

/// The coset table. `depth` bounds `|α|` for `m = ∞` and is ignored otherwise.
pub fn coxeter_todd(sig: GroupSignature, depth: Option<usize>) -> Result<CosetTable, GroupError> {
    if sig.n == 0 {
        return Err(GroupError::Shape("n must be positive".into()));
    }
    match sig.m {
        Some(m) => Ok(enumerate_finite(sig, m)),
        None => {
            let d = depth.ok_or(GroupError::Unsupported("m = ∞ needs a depth bound"))?;
            Ok(window(sig, d as i64))
        }
    }
}

/// Column layout: `t`, `t⁻¹`, then `s_1 … s_{n−1}`.
struct Enumerator {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    inverse: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Enumerator {
    fn new(cols: usize, inverse: Vec<usize>) -> Self {
        Enumerator {
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            inverse,
            queue: VecDeque::new(),
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        let d = self.table.len();
        self.table.push(vec![NONE; self.inverse.len()]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][self.inverse[x]] = c;
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.inverse.len() {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                let xi = self.inverse[x];
                if self.table[d][xi] == g {
                    self.table[d][xi] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let other = self.table[mu][x];
                    self.merge(nu, other);
                } else if self.table[nu][xi] != NONE {
                    let other = self.table[nu][xi];
                    self.merge(mu, other);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][xi] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.table[b][self.inverse[w[j as usize]]] != NONE {
                b = self.table[b][self.inverse[w[j as usize]]];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][self.inverse[x]] = f;
                return;
            }
            self.define(f, w[i as usize]);
        }
    }
}

fn relators(m: usize, n: usize) -> Vec<Vec<usize>> {
    let s = |i: usize| i + 1; // column of s_i
    let (t, ti) = (0, 1);
    let mut rels = vec![vec![t; m]];
    for i in 1..n {
        rels.push(vec![s(i), s(i)]);
        if i >= 2 {
            rels.push(vec![t, s(i), ti, s(i)]);
        }
        if i + 1 < n {
            rels.push([s(i), s(i + 1)].repeat(3));
        }
        for k in i + 2..n {
            rels.push([s(i), s(k)].repeat(2));
        }
    }
    if n >= 2 {
        rels.push(vec![t, s(1), t, s(1), ti, s(1), ti, s(1)]);
    }
    rels
}

fn enumerate_finite(sig: GroupSignature, m: usize) -> CosetTable {
    let n = sig.n;
    let cols = n + 1;
    let mut inverse: Vec<usize> = (0..cols).collect();
    inverse[0] = 1;
    inverse[1] = 0;
    let mut e = Enumerator::new(cols, inverse);
    let rels = relators(m, n);
    // W = G(m,1,n−1) = ⟨t, s_1, …, s_{n−2}⟩, trivial when n = 1
    if n >= 2 {
        e.scan_and_fill(0, &[0]);
    }
    for i in 1..n.saturating_sub(1) {
        e.scan_and_fill(0, &[i + 1]);
    }
    let mut c = 0;
    while c < e.table.len() {
        if e.alive(c) {
            for r in &rels {
                e.scan_and_fill(c, r);
                if !e.alive(c) {
                    break;
                }
            }
            if e.alive(c) {
                for x in 0..cols {
                    if e.table[c][x] == NONE {
                        e.define(c, x);
                    }
                }
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..e.table.len()).filter(|&c| e.alive(c)).collect();
    // A word y with W·y = coset, found breadth-first through the right action.
    let mut reach: Vec<Option<GroupWord>> = vec![None; e.table.len()];
    reach[0] = Some(GroupWord::new());
    let mut bfs = VecDeque::from([0usize]);
    while let Some(c) = bfs.pop_front() {
        for x in 0..cols {
            let d = e.table[c][x];
            if reach[d].is_none() {
                let mut w = reach[c].clone().unwrap();
                w.push(column_letter(x));
                reach[d] = Some(w);
                bfs.push_back(d);
            }
        }
    }
    let label_of = |c: usize| {
        let y = reach[c]
            .as_ref()
            .expect("table is connected")
            .evaluate(sig)
            .expect("valid word");
        coset_label(&y.inv())
    };
    let mut labelled: Vec<((usize, i64), usize)> = live.iter().map(|&c| (label_of(c), c)).collect();
    labelled.sort();
    let pos = |c: usize| labelled.iter().position(|&(_, d)| d == c).unwrap();

    let vertices = labelled
        .iter()
        .map(|&((j, alpha), _)| CosetVertex {
            j,
            alpha,
            word: transversal_word(n, j, alpha),
        })
        .collect();
    let mut actions = Vec::with_capacity(n);
    // left multiplication by t is the right action of t⁻¹
    let mut letters = vec![(GroupLetter::T(1), 1)];
    letters.extend((1..n).map(|i| (GroupLetter::S(i), i + 1)));
    for (letter, col) in letters {
        let image = labelled
            .iter()
            .map(|&(_, c)| Some(pos(e.table[c][col])))
            .collect();
        actions.push(GeneratorAction { letter, image });
    }
    CosetTable {
        m: Some(m),
        n,
        vertices,
        actions,
    }
}

fn column_letter(x: usize) -> GroupLetter {
    match x {
        0 => GroupLetter::T(1),
        1 => GroupLetter::T(-1),
        i => GroupLetter::S(i - 1),
    }
}

/// The infinite line of cosets cut to `|α| ≤ depth`, computed from the wreath model.
fn window(sig: GroupSignature, depth: i64) -> CosetTable {
    let n = sig.n;
    let mut vertices = Vec::new();
    for j in 0..n {
        for alpha in -depth..=depth {
            vertices.push(CosetVertex {
                j,
                alpha,
                word: transversal_word(n, j, alpha),
            });
        }
    }
    let reps: Vec<GroupElement> = vertices
        .iter()
        .map(|v| v.word.evaluate(sig).expect("valid word"))
        .collect();
    let mut letters = vec![GroupLetter::T(1)];
    letters.extend((1..n).map(GroupLetter::S));
    let actions = letters
        .into_iter()
        .map(|letter| {
            let g = GroupWord(vec![letter]).evaluate(sig).expect("valid letter");
            let image = reps
                .iter()
                .map(|x| {
                    let (j, a) = coset_label(&g.mul_unchecked(x));
                    vertices.iter().position(|v| v.j == j && v.alpha == a)
                })
                .collect();
            GeneratorAction { letter, image }
        })
        .collect();
    CosetTable {
        m: None,
        n,
        vertices,
        actions,
    }
}
