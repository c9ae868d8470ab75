//! Integer partitions, node residues, dominance, and ladders.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
///
/// The derived `Ord` is lexicographic on the part vectors. For partitions of
/// equal size, descending lexicographic order refines the dominance order,
/// which is what the canonical basis algorithms need from a linear extension.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A cell of a Young diagram, with 1-based row and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Partition {
    /// Trims trailing zeros; rejects any increase or an interior zero.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Parse(format!(
                "parts {parts:?} are not weakly decreasing positive"
            )));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// The `i`-th part, 1-based; zero beyond the last row.
    pub fn part(&self, i: u32) -> u32 {
        self.parts.get(i as usize - 1).copied().unwrap_or(0)
    }

    /// Dominance: equal sizes and every partial sum of `self` at least the
    /// matching partial sum of `other`. Reflexive.
    pub fn dominates(&self, other: &Self) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut sum_self = 0u64;
        let mut sum_other = 0u64;
        for i in 0..self.parts.len().max(other.parts.len()) {
            sum_self += u64::from(self.parts.get(i).copied().unwrap_or(0));
            sum_other += u64::from(other.parts.get(i).copied().unwrap_or(0));
            if sum_self < sum_other {
                return false;
            }
        }
        true
    }

    /// No part repeated `e` or more times.
    pub fn is_e_regular(&self, e: u32) -> bool {
        self.parts
            .chunk_by(|a, b| a == b)
            .all(|run| run.len() < e as usize)
    }

    /// Residue of a cell: `(col - row) mod e`, in `0..e`.
    pub fn residue(node: Node, e: u32) -> u32 {
        (i64::from(node.col) - i64::from(node.row)).rem_euclid(i64::from(e)) as u32
    }

    fn row_has_addable(&self, row: u32) -> bool {
        row == 1 || self.part(row - 1) > self.part(row)
    }

    fn row_has_removable(&self, row: u32) -> bool {
        self.part(row) > 0 && self.part(row + 1) < self.part(row)
    }

    /// Addable cells of residue `i`, in ascending row order.
    pub fn addable_nodes(&self, e: u32, i: u32) -> Vec<Node> {
        (1..=self.parts.len() as u32 + 1)
            .filter(|&r| self.row_has_addable(r))
            .map(|r| Node {
                row: r,
                col: self.part(r) + 1,
            })
            .filter(|&n| Self::residue(n, e) == i)
            .collect()
    }

    /// Removable cells of residue `i`, in ascending row order.
    pub fn removable_nodes(&self, e: u32, i: u32) -> Vec<Node> {
        (1..=self.parts.len() as u32)
            .filter(|&r| self.row_has_removable(r))
            .map(|r| Node {
                row: r,
                col: self.part(r),
            })
            .filter(|&n| Self::residue(n, e) == i)
            .collect()
    }

    pub fn with_node_added(&self, node: Node) -> Result<Self> {
        if node.col != self.part(node.row) + 1 || !self.row_has_addable(node.row) {
            return Err(Error::NotAddable);
        }
        let mut parts = self.parts.clone();
        if node.row as usize == parts.len() + 1 {
            parts.push(node.col);
        } else {
            parts[node.row as usize - 1] = node.col;
        }
        Ok(Self { parts })
    }

    /// The ladder of a cell is `row + (e-1)(col-1)`; every cell on ladder
    /// `l` has residue `(1 - l) mod e`. For an e-regular partition the cells
    /// are grouped here by ladder, in ascending ladder order, as
    /// `(residue, count)` letters; applying the corresponding divided powers
    /// to the empty partition in this order rebuilds the partition as the
    /// leading term.
    pub fn ladder_residue_sequence(&self, e: u32) -> Result<Vec<(u32, u32)>> {
        if !self.is_e_regular(e) {
            return Err(Error::NotRegular {
                partition: self.to_string(),
                e,
            });
        }
        let mut counts: std::collections::BTreeMap<u64, u32> = std::collections::BTreeMap::new();
        for (row0, &p) in self.parts.iter().enumerate() {
            for col in 1..=u64::from(p) {
                let ladder = row0 as u64 + 1 + u64::from(e - 1) * (col - 1);
                *counts.entry(ladder).or_insert(0) += 1;
            }
        }
        Ok(counts
            .into_iter()
            .map(|(ladder, count)| (((1 - ladder as i64).rem_euclid(i64::from(e))) as u32, count))
            .collect())
    }
}

/// Sorts so that whenever `a` strictly dominates `b`, `a` comes first.
/// Descending lexicographic order is such a linear extension.
pub fn dominance_descending_order(mut partitions: Vec<Partition>) -> Vec<Partition> {
    partitions.sort_by(|a, b| b.cmp(a));
    partitions
}

/// All partitions of `n`, in descending lexicographic order.
pub fn partitions_of(n: u64) -> Vec<Partition> {
    fn rec(remaining: u64, max_part: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= 1 {
            prefix.push(part as u32);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    /// Exponent shorthand with the empty partition as `-`: `(4,4,3)` prints
    /// as `4^2,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for run in self.parts.chunk_by(|a, b| a == b) {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if run.len() == 1 {
                write!(f, "{}", run[0])?;
            } else {
                write!(f, "{}^{}", run[0], run.len())?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts the exponent shorthand or a plain comma-separated part list.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "-" || compact.is_empty() {
            return Ok(Self::empty());
        }
        let bad = || Error::Parse(format!("invalid partition {s:?}"));
        let mut parts = Vec::new();
        for chunk in compact.split(',') {
            let (part, mult) = match chunk.split_once('^') {
                Some((p, m)) => (p, m),
                None => (chunk, "1"),
            };
            let part: u32 = part.parse().map_err(|_| bad())?;
            let mult: u32 = mult.parse().map_err(|_| bad())?;
            if mult == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat(part).take(mult as usize));
        }
        Self::new(parts).map_err(|_| bad())
    }
}

impl serde::Serialize for Partition {
    /// JSON form: plain array of parts.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Self::new(parts).map_err(serde::de::Error::custom)
    }
}
