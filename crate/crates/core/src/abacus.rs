//! The e-abacus with k beads: bijection with partitions, runner residues,
//! cores and weights, and the empty-runner insertion behind the λ ↦ λ⁺ map.

use crate::partition::Partition;
use crate::{Error, Result};

/// A bead configuration on `e` runners.
///
/// Position `p` sits on runner `p mod e`, row `p div e`. Beads are stored as
/// a strictly increasing position list; the bead count `k` is its length and
/// is part of the partition correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abacus {
    e: u32,
    beads: Vec<u64>,
}

impl Abacus {
    /// Beads at `{λ_{k−m+1} + m − 1 : m = 1..k}`, reading parts beyond the
    /// length as zero.
    pub fn from_partition(lambda: &Partition, e: u32, k: usize) -> Result<Self> {
        assert!(e >= 2, "an abacus needs at least two runners");
        if k < lambda.len() {
            return Err(Error::TooFewBeads {
                needed: lambda.len(),
                got: k,
            });
        }
        let beads = (1..=k as u64)
            .map(|m| u64::from(lambda.part((k as u64 - m + 1) as u32)) + m - 1)
            .collect();
        Ok(Self { e, beads })
    }

    /// Inverse of [`Abacus::from_partition`]: sorted beads `β_1 < … < β_k`
    /// give `λ_{k−s+1} = β_s − (s−1)`.
    pub fn to_partition(&self) -> Partition {
        let mut parts: Vec<u32> = self
            .beads
            .iter()
            .enumerate()
            .map(|(s0, &b)| u32::try_from(b - s0 as u64).expect("part fits in u32"))
            .collect();
        parts.reverse();
        Partition::new(parts).expect("increasing beads give weakly decreasing parts")
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn k(&self) -> usize {
        self.beads.len()
    }

    pub fn beads(&self) -> &[u64] {
        &self.beads
    }

    /// Residues attached to the runners, indexed by runner.
    ///
    /// The runner holding the largest bead has residue `(λ_1 − 1) mod e` and
    /// residues increase by one from left to right. Equivalently runner `r`
    /// has residue `(r − k) mod e`, independent of the partition.
    pub fn runner_residues(&self) -> Result<Vec<u32>> {
        if self.beads.is_empty() {
            return Err(Error::NoBeads);
        }
        let e = i64::from(self.e);
        let last = *self.beads.last().unwrap();
        let r_last = (last % u64::from(self.e)) as i64;
        let lambda1 = last - (self.beads.len() as u64 - 1);
        let res_last = (lambda1 as i64 - 1).rem_euclid(e);
        Ok((0..e)
            .map(|r| ((res_last + r - r_last).rem_euclid(e)) as u32)
            .collect())
    }

    /// Inserts an empty runner before runner `alpha` (after the last when
    /// `alpha = e`), producing an `(e+1)`-runner abacus with the same beads:
    /// `q·e + r` maps to `q·(e+1) + r`, plus one when `r ≥ alpha`.
    pub fn insert_empty_runner(&self, alpha: u32) -> Abacus {
        assert!(alpha <= self.e, "insertion index must lie in 0..=e");
        let e = u64::from(self.e);
        let beads = self
            .beads
            .iter()
            .map(|&p| {
                let (q, r) = (p / e, p % e);
                q * (e + 1) + r + u64::from(r >= u64::from(alpha))
            })
            .collect();
        Abacus {
            e: self.e + 1,
            beads,
        }
    }

    fn runner_rows(&self) -> Vec<Vec<u64>> {
        let mut rows = vec![Vec::new(); self.e as usize];
        for &p in &self.beads {
            rows[(p % u64::from(self.e)) as usize].push(p / u64::from(self.e));
        }
        rows
    }

    /// Slides every bead up its runner into the lowest free rows and reads
    /// off the partition.
    pub fn e_core(&self) -> Partition {
        let mut beads: Vec<u64> = self
            .runner_rows()
            .iter()
            .enumerate()
            .flat_map(|(r, rows)| {
                (0..rows.len() as u64).map(move |row| row * u64::from(self.e) + r as u64)
            })
            .collect();
        beads.sort_unstable();
        Abacus { e: self.e, beads }.to_partition()
    }

    /// Number of empty positions above the beads, runner by runner; equals
    /// the number of rim e-hooks removed to reach the core.
    pub fn e_weight(&self) -> u64 {
        self.runner_rows()
            .iter()
            .map(|rows| {
                rows.iter()
                    .enumerate()
                    .map(|(j, &row)| row - j as u64)
                    .sum::<u64>()
            })
            .sum()
    }

    /// Bullet/dot grid with the residue header row; rows shown through one
    /// past the last occupied row.
    pub fn render(&self) -> Result<String> {
        let residues = self.runner_residues()?;
        let max_row = self.beads.last().unwrap() / u64::from(self.e);
        let mut lines = vec![residues
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")];
        for row in 0..=max_row + 1 {
            let cells: Vec<&str> = (0..u64::from(self.e))
                .map(|r| {
                    if self.beads.binary_search(&(row * u64::from(self.e) + r)).is_ok() {
                        "●"
                    } else {
                        "·"
                    }
                })
                .collect();
            lines.push(cells.join(" "));
        }
        Ok(lines.join("\n"))
    }
}

/// The runner-insertion image: the partition of the `(e+1)`-abacus obtained
/// by inserting an empty runner at `alpha` into the `k`-bead `e`-abacus of
/// `lambda`. Depends on both `k` and `alpha`.
pub fn plus(lambda: &Partition, e: u32, k: usize, alpha: u32) -> Result<Partition> {
    Ok(Abacus::from_partition(lambda, e, k)?
        .insert_empty_runner(alpha)
        .to_partition())
}

/// Same size and same e-core.
pub fn same_block(lambda: &Partition, mu: &Partition, e: u32, k: usize) -> Result<bool> {
    let a = Abacus::from_partition(lambda, e, k)?;
    let b = Abacus::from_partition(mu, e, k)?;
    Ok(lambda.size() == mu.size() && a.e_core() == b.e_core())
}

/// Dominance via bead positions: equal sizes and every tail sum
/// `Σ_{s=t..k} β_s` of `lambda` at least that of `mu`. Agrees with
/// [`Partition::dominates`].
pub fn dominates_via_beads(lambda: &Partition, mu: &Partition, e: u32, k: usize) -> Result<bool> {
    let a = Abacus::from_partition(lambda, e, k)?;
    let b = Abacus::from_partition(mu, e, k)?;
    if lambda.size() != mu.size() {
        return Ok(false);
    }
    let mut tail_a = 0u64;
    let mut tail_b = 0u64;
    for s in (0..k).rev() {
        tail_a += a.beads[s];
        tail_b += b.beads[s];
        if tail_a < tail_b {
            return Ok(false);
        }
    }
    Ok(true)
}
