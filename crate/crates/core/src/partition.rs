//! Partition combinatorics: Young diagrams, dominance, proper pairings,
//! admissible multipartitions and nilpotent orbit dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing, got {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("dimension vector must have at least one entry")]
    EmptyDimensionVector,
    #[error("partition {partition} has size {size} but vertex {vertex} has dimension {expected}")]
    DimensionMismatch {
        vertex: usize,
        partition: Partition,
        size: usize,
        expected: usize,
    },
    #[error("multipartition has {got} entries, dimension vector has {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the unique partition of zero.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Self(parts))
        } else {
            Err(PartitionError::NotAPartition(parts))
        }
    }

    /// Sorts and drops zeros; any multiset of sizes is a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The one-column partition `(1^d)`.
    pub fn column(d: usize) -> Self {
        Self(vec![1; d])
    }

    /// The single-row partition `(d)`, or the empty partition for `d = 0`.
    pub fn row(d: usize) -> Self {
        if d == 0 {
            Self::empty()
        } else {
            Self(vec![d])
        }
    }

    /// The balanced two-row partition `(⌈d/2⌉, ⌊d/2⌋)`.
    pub fn balanced_two_row(d: usize) -> Self {
        Self::from_unsorted(vec![d.div_ceil(2), d / 2])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Width of the diagram, `λ₁`, or 0 for the empty partition.
    pub fn width(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Column lengths of the Young diagram.
    pub fn transpose(&self) -> Self {
        let w = self.width();
        Self(
            (1..=w)
                .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// Removes the first column: every part drops by one and ones vanish.
    pub fn truncate_first_column(&self) -> Self {
        Self(self.0.iter().filter(|&&p| p >= 2).map(|p| p - 1).collect())
    }

    /// `t` applied `k` times.
    pub fn truncate_columns(&self, k: usize) -> Self {
        Self(self.0.iter().filter(|&&p| p > k).map(|p| p - k).collect())
    }

    /// Cellwise containment of Young diagrams: `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }

    /// Dominance at equal size, strict size comparison otherwise.
    pub fn dominance_geq(&self, other: &Partition) -> bool {
        let (a, b) = (self.size(), other.size());
        if a != b {
            return a > b;
        }
        let n = self.len().max(other.len());
        let (mut sa, mut sb) = (0, 0);
        for i in 0..n {
            sa += self.part(i);
            sb += other.part(i);
            if sa < sb {
                return false;
            }
        }
        true
    }

    /// Diagram criterion for the existence of a proper pairing:
    /// `t(self) ⊆ other` and `t(other) ⊆ self`.
    pub fn has_proper_pairing(&self, other: &Partition) -> bool {
        other.contains(&self.truncate_first_column()) && self.contains(&other.truncate_first_column())
    }

    /// Dimension of the nilpotent orbit of Jordan type `self`:
    /// `d² − Σ (λᵀᵢ)²`.
    pub fn orbit_dim(&self) -> usize {
        let d = self.size();
        d * d - self.transpose().0.iter().map(|c| c * c).sum::<usize>()
    }

    /// Whether no pair of jointly nilpotent operators has a commutator of
    /// this Jordan type, i.e. the diagram is wider than `(d+1)/2`.
    pub fn xlambda_is_empty(&self) -> bool {
        2 * self.width() > self.size() + 1
    }

    /// Multiplicity of each part value, largest value first.
    fn value_counts(&self) -> Vec<(usize, usize)> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts.into_iter().rev().collect()
    }

    /// Comma-separated parts without parentheses; the key format used by the
    /// χ cache and the symbolic census output.
    pub fn to_key(&self) -> String {
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_key())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `3,1`, `(3,1)`, `()` and the empty string.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Self::new(parts).map_err(|_| PartitionError::Parse(s.to_string()))
    }
}

/// All partitions of `d` in lexicographically descending order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// Dimension vector `v = (v₁, …, vₙ)`, `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimensionVector(Vec<usize>);

impl DimensionVector {
    pub fn new(dims: Vec<usize>) -> Result<Self, PartitionError> {
        if dims.is_empty() {
            return Err(PartitionError::EmptyDimensionVector);
        }
        Ok(Self(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `Σ vᵢ vᵢ₊₁`, the dimension of the line-quiver nilpotent cone.
    pub fn adjacent_products(&self) -> usize {
        self.0.windows(2).map(|w| w[0] * w[1]).sum()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<usize>> for DimensionVector {
    type Error = PartitionError;

    fn try_from(dims: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(dims)
    }
}

impl From<DimensionVector> for Vec<usize> {
    fn from(v: DimensionVector) -> Self {
        v.0
    }
}

impl FromStr for DimensionVector {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let dims = s
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Self::new(dims)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// One partition per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(entries: Vec<Partition>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &Partition {
        self.0.last().expect("multipartition has at least one entry")
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(Partition::size).collect()
    }

    /// Checks `Λ ⊢ v`.
    pub fn check_sizes(&self, v: &DimensionVector) -> Result<(), PartitionError> {
        if self.len() != v.len() {
            return Err(PartitionError::LengthMismatch {
                got: self.len(),
                expected: v.len(),
            });
        }
        for (i, (p, &d)) in self.0.iter().zip(v.dims()).enumerate() {
            if p.size() != d {
                return Err(PartitionError::DimensionMismatch {
                    vertex: i + 1,
                    partition: p.clone(),
                    size: p.size(),
                    expected: d,
                });
            }
        }
        Ok(())
    }

    /// Every adjacent pair admits a proper pairing.
    pub fn is_chain_pairable(&self) -> bool {
        self.0.windows(2).all(|w| w[0].has_proper_pairing(&w[1]))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(";"))
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `(1);(2,1);(1)`; an empty entry denotes the empty partition.
impl FromStr for Multipartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(';')
            .map(Partition::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

/// Admissible multipartitions: `λ¹ = first`, `λⁿ = last`, consecutive
/// entries properly pairable. Deterministic order (lexicographically
/// descending at each vertex, left to right).
pub fn enumerate_admissible(
    v: &DimensionVector,
    first: &Partition,
    last: &Partition,
) -> Result<Vec<Multipartition>, PartitionError> {
    for (vertex, p, d) in [(1, first, v.first()), (v.len(), last, v.last())] {
        if p.size() != d {
            return Err(PartitionError::DimensionMismatch {
                vertex,
                partition: p.clone(),
                size: p.size(),
                expected: d,
            });
        }
    }
    Ok(enumerate_chains(v, Some(first), Some(last)))
}

/// Like [`enumerate_admissible`] but either end may be left free.
pub fn enumerate_chains(
    v: &DimensionVector,
    first: Option<&Partition>,
    last: Option<&Partition>,
) -> Vec<Multipartition> {
    let n = v.len();
    let choices: Vec<Vec<Partition>> = (0..n)
        .map(|i| {
            let fixed = match (i, first, last) {
                (0, Some(p), _) => Some(p),
                (i, _, Some(p)) if i + 1 == n => Some(p),
                _ => None,
            };
            let all = partitions_of(v.dims()[i]);
            match fixed {
                Some(p) => all.into_iter().filter(|q| q == p).collect(),
                None => all,
            }
        })
        .collect();
    // n = 1 with both ends fixed: the single entry must match both.
    let choices = if n == 1 {
        let mut c = choices;
        if let (Some(a), Some(b)) = (first, last) {
            c[0].retain(|p| p == a && p == b);
        }
        c
    } else {
        choices
    };

    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::with_capacity(n);
    fn rec(choices: &[Vec<Partition>], cur: &mut Vec<Partition>, out: &mut Vec<Multipartition>) {
        let i = cur.len();
        if i == choices.len() {
            out.push(Multipartition(cur.clone()));
            return;
        }
        for p in &choices[i] {
            if let Some(prev) = cur.last() {
                if !prev.has_proper_pairing(p) {
                    continue;
                }
            }
            cur.push(p.clone());
            rec(choices, cur, out);
            cur.pop();
        }
    }
    rec(&choices, &mut cur, &mut out);
    out
}

/// A matching between parts of `λ` and parts of `μ` (0-based part indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProperPairing {
    pub matches: Vec<(usize, usize)>,
}

impl ProperPairing {
    pub fn empty() -> Self {
        Self {
            matches: Vec::new(),
        }
    }

    /// Checks the matching invariants against `(λ, μ)`.
    pub fn is_valid_for(&self, lambda: &Partition, mu: &Partition) -> bool {
        let mut used_l = vec![false; lambda.len()];
        let mut used_m = vec![false; mu.len()];
        for &(i, j) in &self.matches {
            if i >= lambda.len() || j >= mu.len() || used_l[i] || used_m[j] {
                return false;
            }
            used_l[i] = true;
            used_m[j] = true;
            if lambda.part(i).abs_diff(mu.part(j)) > 1 {
                return false;
            }
        }
        let covered = |p: &Partition, used: &[bool]| {
            p.parts().iter().zip(used).all(|(&x, &u)| x < 2 || u)
        };
        covered(lambda, &used_l) && covered(mu, &used_m)
    }

    /// The multiset of matched part values, which identifies the pairing up
    /// to interchanging equal parts.
    pub fn value_pairs(&self, lambda: &Partition, mu: &Partition) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self
            .matches
            .iter()
            .map(|&(i, j)| (lambda.part(i), mu.part(j)))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// All proper pairings between `λ` and `μ`, one per multiset of matched
/// value pairs. Empty iff [`Partition::has_proper_pairing`] is false.
pub fn enumerate_proper_pairings(lambda: &Partition, mu: &Partition) -> Vec<ProperPairing> {
    let lv = lambda.value_counts();
    let mv = mu.value_counts();
    // Cells (value of λ, value of μ) that may be matched.
    let cells: Vec<(usize, usize)> = (0..lv.len())
        .flat_map(|a| (0..mv.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| lv[a].0.abs_diff(mv[b].0) <= 1)
        .collect();

    let mut row_left: Vec<usize> = lv.iter().map(|&(_, m)| m).collect();
    let mut col_left: Vec<usize> = mv.iter().map(|&(_, m)| m).collect();
    let mut counts = vec![0usize; cells.len()];
    let mut tables = Vec::new();

    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        counts: &mut [usize],
        row_left: &mut [usize],
        col_left: &mut [usize],
        lv: &[(usize, usize)],
        mv: &[(usize, usize)],
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == cells.len() {
            let rows_ok = lv.iter().zip(row_left.iter()).all(|(&(x, _), &l)| x < 2 || l == 0);
            let cols_ok = mv.iter().zip(col_left.iter()).all(|(&(x, _), &l)| x < 2 || l == 0);
            if rows_ok && cols_ok {
                out.push(counts.to_vec());
            }
            return;
        }
        let (a, b) = cells[k];
        let max = row_left[a].min(col_left[b]);
        for c in (0..=max).rev() {
            counts[k] = c;
            row_left[a] -= c;
            col_left[b] -= c;
            rec(k + 1, cells, counts, row_left, col_left, lv, mv, out);
            row_left[a] += c;
            col_left[b] += c;
        }
        counts[k] = 0;
    }
    rec(
        0,
        &cells,
        &mut counts,
        &mut row_left,
        &mut col_left,
        &lv,
        &mv,
        &mut tables,
    );

    // Part indices for each value, in order.
    let index_of = |p: &Partition, vals: &[(usize, usize)]| -> Vec<Vec<usize>> {
        vals.iter()
            .map(|&(x, _)| (0..p.len()).filter(|&i| p.part(i) == x).collect())
            .collect()
    };
    let li = index_of(lambda, &lv);
    let mi = index_of(mu, &mv);

    tables
        .into_iter()
        .map(|table| {
            let mut next_l = vec![0usize; lv.len()];
            let mut next_m = vec![0usize; mv.len()];
            let mut matches = Vec::new();
            for (&(a, b), &c) in cells.iter().zip(&table) {
                for _ in 0..c {
                    matches.push((li[a][next_l[a]], mi[b][next_m[b]]));
                    next_l[a] += 1;
                    next_m[b] += 1;
                }
            }
            matches.sort_unstable();
            ProperPairing { matches }
        })
        .collect()
}
