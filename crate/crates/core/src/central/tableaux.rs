//! Multipartitions, their nodes, and standard multitableaux.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::{ScalarValue, Var};

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// An `m`-tuple of partitions; serialized as nested integer arrays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiPartition {
    pub parts: Vec<Vec<usize>>,
}

/// A node in row `row`, column `col` (both 1-based) of diagram `pos` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MNode {
    pub pos: usize,
    pub row: usize,
    pub col: usize,
}

impl MNode {
    /// `col − row`.
    pub fn classical_content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    /// `v_pos · q^{2(col − row)}`.
    pub fn content(&self) -> ScalarValue {
        &ScalarValue::v(self.pos) * &ScalarValue::var_pow(Var::Q, 2 * self.classical_content() as i32)
    }
}

impl MultiPartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self, String> {
        if parts.is_empty() {
            return Err("a multipartition needs at least one component".into());
        }
        for p in &parts {
            if p.contains(&0) || p.windows(2).any(|w| w[0] < w[1]) {
                return Err(format!("{p:?} is not a partition"));
            }
        }
        Ok(MultiPartition { parts })
    }

    /// All `m`-partitions of `n`, ordered by the sizes of the components
    /// (largest first in the first component) and then by the components.
    pub fn all(m: usize, n: usize) -> Vec<MultiPartition> {
        fn go(m: usize, n: usize, prefix: &mut Vec<Vec<usize>>, out: &mut Vec<MultiPartition>) {
            if prefix.len() + 1 == m {
                for p in partitions(n) {
                    prefix.push(p);
                    out.push(MultiPartition { parts: prefix.clone() });
                    prefix.pop();
                }
                return;
            }
            for size in (0..=n).rev() {
                for p in partitions(size) {
                    prefix.push(p);
                    go(m, n - size, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        if m > 0 {
            go(m, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().flatten().sum()
    }

    /// Length of row `x` of diagram `j` (both 1-based), `0` past the end.
    pub fn row_len(&self, j: usize, x: usize) -> usize {
        self.parts[j - 1].get(x - 1).copied().unwrap_or(0)
    }

    /// Length of column `y` of diagram `j` (both 1-based).
    pub fn col_len(&self, j: usize, y: usize) -> usize {
        self.parts[j - 1].iter().take_while(|&&r| r >= y).count()
    }

    /// Nodes in diagram order, then row by row.
    pub fn nodes(&self) -> Vec<MNode> {
        let mut out = Vec::new();
        for (k, p) in self.parts.iter().enumerate() {
            for (x, &len) in p.iter().enumerate() {
                for y in 1..=len {
                    out.push(MNode { pos: k + 1, row: x + 1, col: y });
                }
            }
        }
        out
    }

    pub fn contains(&self, node: &MNode) -> bool {
        node.pos >= 1 && node.pos <= self.m() && node.row >= 1 && node.col >= 1 && self.row_len(node.pos, node.row) >= node.col
    }

    /// Generalized hook length `h^{(j)}(α)`: the length of row `x` in diagram
    /// `j`, plus the length of column `y` in the node's own diagram, minus
    /// `x + y − 1`. For `j = pos(α)` this is the ordinary hook length.
    pub fn hook(&self, node: &MNode, j: usize) -> i64 {
        self.row_len(j, node.row) as i64 + self.col_len(node.pos, node.col) as i64
            - node.row as i64
            - node.col as i64
            + 1
    }

    /// Number of standard tableaux: `n!` over the product of the ordinary hook
    /// lengths of all nodes (hook length formula per component, times the
    /// multinomial for distributing the entries).
    pub fn dimension(&self) -> u128 {
        let hooks: u128 = self.nodes().iter().map(|a| self.hook(a, a.pos) as u128).product();
        (1..=self.size() as u128).product::<u128>() / hooks
    }

    /// Nodes that can be added keeping every component a partition.
    fn addable(&self) -> Vec<MNode> {
        let mut out = Vec::new();
        for (k, p) in self.parts.iter().enumerate() {
            for x in 0..=p.len() {
                let len = p.get(x).copied().unwrap_or(0);
                let above = if x == 0 { usize::MAX } else { p[x - 1] };
                if len < above {
                    out.push(MNode { pos: k + 1, row: x + 1, col: len + 1 });
                }
            }
        }
        out
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if p.is_empty() {
                write!(f, "∅")?;
            } else {
                let rows: Vec<String> = p.iter().map(|r| r.to_string()).collect();
                write!(f, "({})", rows.join(","))?;
            }
        }
        write!(f, ")")
    }
}

/// A standard filling: `entries[i]` is the node holding `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MTableau {
    pub shape: MultiPartition,
    pub entries: Vec<MNode>,
}

impl MTableau {
    /// Checks that `entries` is a bijection onto the nodes of `shape` with
    /// rows and columns increasing in every diagram.
    pub fn new(shape: MultiPartition, entries: Vec<MNode>) -> Result<Self, String> {
        if entries.len() != shape.size() {
            return Err(format!("{} entries for a shape of size {}", entries.len(), shape.size()));
        }
        let mut seen = std::collections::HashMap::new();
        for (i, node) in entries.iter().enumerate() {
            if !shape.contains(node) {
                return Err(format!("node {node:?} is outside the shape"));
            }
            if seen.insert(*node, i).is_some() {
                return Err(format!("node {node:?} is filled twice"));
            }
        }
        for (node, &i) in &seen {
            let left = MNode { col: node.col.wrapping_sub(1), ..*node };
            let up = MNode { row: node.row.wrapping_sub(1), ..*node };
            for nb in [left, up] {
                if let Some(&j) = seen.get(&nb) {
                    if j > i {
                        return Err(format!("entries decrease into node {node:?}"));
                    }
                }
            }
        }
        Ok(MTableau { shape, entries })
    }

    pub fn shape(&self) -> &MultiPartition {
        &self.shape
    }

    /// Quantum contents `c_1, …, c_n` of the nodes holding `1, …, n`.
    pub fn contents(&self) -> Vec<ScalarValue> {
        self.entries.iter().map(MNode::content).collect()
    }

    /// All standard tableaux of a shape, in a fixed order.
    pub fn standard(shape: &MultiPartition) -> Vec<MTableau> {
        fn go(shape: &MultiPartition, current: &mut MultiPartition, entries: &mut Vec<MNode>, out: &mut Vec<MTableau>) {
            if entries.len() == shape.size() {
                out.push(MTableau { shape: shape.clone(), entries: entries.clone() });
                return;
            }
            for node in current.addable() {
                if !shape.contains(&node) {
                    continue;
                }
                let part = &mut current.parts[node.pos - 1];
                if node.row > part.len() {
                    part.push(1);
                } else {
                    part[node.row - 1] += 1;
                }
                entries.push(node);
                go(shape, current, entries, out);
                entries.pop();
                let part = &mut current.parts[node.pos - 1];
                if part[node.row - 1] == 1 {
                    part.pop();
                } else {
                    part[node.row - 1] -= 1;
                }
            }
        }
        let mut out = Vec::new();
        let mut current = MultiPartition { parts: vec![Vec::new(); shape.m()] };
        go(shape, &mut current, &mut Vec::new(), &mut out);
        out
    }

    /// Fills diagram 1 column by column (top to bottom), then diagram 2, and so on.
    pub fn column_reading(shape: &MultiPartition) -> MTableau {
        let mut entries = Vec::with_capacity(shape.size());
        for k in 1..=shape.m() {
            let width = shape.parts[k - 1].first().copied().unwrap_or(0);
            for y in 1..=width {
                for x in 1..=shape.col_len(k, y) {
                    entries.push(MNode { pos: k, row: x, col: y });
                }
            }
        }
        MTableau { shape: shape.clone(), entries }
    }
}

impl fmt::Display for MTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for k in 1..=self.shape.m() {
            if k > 1 {
                write!(f, " | ")?;
            }
            let rows: Vec<String> = (1..=self.shape.parts[k - 1].len())
                .map(|x| {
                    let cells: Vec<String> = (1..=self.shape.row_len(k, x))
                        .map(|y| {
                            let i = self.entries.iter().position(|a| *a == MNode { pos: k, row: x, col: y }).unwrap();
                            (i + 1).to_string()
                        })
                        .collect();
                    cells.join(" ")
                })
                .collect();
            write!(f, "{}", if rows.is_empty() { "∅".to_string() } else { rows.join(" / ") })?;
        }
        write!(f, ")")
    }
}
