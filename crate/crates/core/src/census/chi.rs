//! Component counts `χ(λ, μ)` of the edge strata, solved recursively from
//! the Kostant partition function.
//!
//! For a pair `(λ, μ)` we build the line quiver with `λ₁ + μ₁` vertices whose
//! dimensions are the sizes of the column truncations of `λ` (ascending) and
//! then of `μ` (descending). Summing `χ(Λ)` over its admissible
//! multipartitions with one-column ends gives the Kostant number of that
//! dimension vector. In that sum the pair `(λ, μ)` occurs only at the peak,
//! every other pair at the peak is dominated by it, and all remaining pairs
//! have smaller total size, so the identity can be solved for `χ(λ, μ)`.
//!
//! When `μ = t(λ)` (or `λ = t(μ)`) the pair one step left (right) of the
//! peak has the same total size and can be `(μ, λ)` itself. χ is symmetric
//! (swap the two spaces), so the unknown then appears squared. The solver
//! therefore treats the identity as a polynomial with nonnegative
//! coefficients in the unknown and takes its unique nonnegative integer root.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use super::kostant::kostant;
use crate::partition::{enumerate_admissible, DimensionVector, Multipartition, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChiError {
    #[error("recursion cycle: χ{0} depends on itself")]
    Cycle(String),
    #[error("no nonnegative integer solves the Kostant identity for χ{pair}: K = {kostant}, coefficients {coefficients:?}")]
    NoSolution {
        pair: String,
        kostant: u64,
        coefficients: Vec<u64>,
    },
    #[error("the Kostant identity does not involve χ{0}")]
    Underdetermined(String),
    #[error("integer overflow while solving for χ{0}")]
    Overflow(String),
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad cache key {0:?}")]
    Key(String),
}

/// Memo of χ keyed by unordered pairs of partitions.
#[derive(Clone, Debug, Default)]
pub struct ChiTable {
    memo: HashMap<(Partition, Partition), u64>,
}

fn canonical(a: &Partition, b: &Partition) -> (Partition, Partition) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn pair_label(a: &Partition, b: &Partition) -> String {
    format!("({a}, {b})")
}

impl ChiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, a: &Partition, b: &Partition) -> Option<u64> {
        self.memo.get(&canonical(a, b)).copied()
    }

    pub fn insert(&mut self, a: &Partition, b: &Partition, value: u64) {
        self.memo.insert(canonical(a, b), value);
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Adds every entry of `other`, keeping existing values.
    pub fn merge(&mut self, other: &ChiTable) {
        for (k, v) in &other.memo {
            self.memo.entry(k.clone()).or_insert(*v);
        }
    }

    /// JSON object `{"λ|μ": χ}` with comma-separated parts, sorted by key.
    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, u64> = self
            .memo
            .iter()
            .map(|((a, b), v)| (format!("{}|{}", a.to_key(), b.to_key()), *v))
            .collect();
        serde_json::to_string_pretty(&map).expect("map of strings to integers serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CacheError> {
        let map: BTreeMap<String, u64> = serde_json::from_str(s)?;
        let mut table = Self::new();
        for (k, v) in map {
            let (a, b) = k.split_once('|').ok_or_else(|| CacheError::Key(k.clone()))?;
            let a: Partition = a.parse().map_err(|_| CacheError::Key(k.clone()))?;
            let b: Partition = b.parse().map_err(|_| CacheError::Key(k.clone()))?;
            table.insert(&a, &b, v);
        }
        Ok(table)
    }

    /// Loads a cache file; a missing file yields an empty table.
    pub fn load(path: &Path) -> Result<Self, CacheError> {
        match fs::read_to_string(path) {
            Ok(s) => Self::from_json(&s),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), CacheError> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

/// The line-quiver dimension vector used to solve for `χ(λ, μ)`, together
/// with the 0-based index of the vertex carrying `λ`.
pub fn peak_quiver(lambda: &Partition, mu: &Partition) -> (DimensionVector, usize) {
    let mut dims: Vec<usize> = (0..lambda.width())
        .rev()
        .map(|k| lambda.truncate_columns(k).size())
        .collect();
    dims.extend((0..mu.width()).map(|k| mu.truncate_columns(k).size()));
    let peak = lambda.width() - 1;
    (DimensionVector::new(dims).expect("both partitions nonempty"), peak)
}

/// `χ(λ, μ)`: the number of irreducible components of the edge stratum.
pub fn chi(lambda: &Partition, mu: &Partition, table: &mut ChiTable) -> Result<u64, ChiError> {
    let mut in_progress = HashSet::new();
    chi_rec(lambda, mu, table, &mut in_progress)
}

fn chi_rec(
    lambda: &Partition,
    mu: &Partition,
    table: &mut ChiTable,
    in_progress: &mut HashSet<(Partition, Partition)>,
) -> Result<u64, ChiError> {
    if !lambda.has_proper_pairing(mu) {
        return Ok(0);
    }
    // One side zero-dimensional: the stratum is a single point.
    if lambda.is_empty() || mu.is_empty() {
        return Ok(1);
    }
    if let Some(x) = table.get(lambda, mu) {
        return Ok(x);
    }
    let key = canonical(lambda, mu);
    let label = pair_label(lambda, mu);
    if !in_progress.insert(key.clone()) {
        return Err(ChiError::Cycle(label));
    }

    let overflow = || ChiError::Overflow(pair_label(lambda, mu));
    let (v, _) = peak_quiver(lambda, mu);
    let k = kostant(&v);
    let strata = enumerate_admissible(
        &v,
        &Partition::column(v.first()),
        &Partition::column(v.last()),
    )
    .expect("ends have the right sizes by construction");

    // coefficients[e] = Σ over strata containing the unknown e times of the
    // product of the other factors.
    let mut coefficients: Vec<u64> = vec![0];
    for stratum in &strata {
        let mut power = 0usize;
        let mut coef: u64 = 1;
        for w in stratum.entries().windows(2) {
            if canonical(&w[0], &w[1]) == key {
                power += 1;
                continue;
            }
            let x = chi_rec(&w[0], &w[1], table, in_progress)?;
            coef = coef.checked_mul(x).ok_or_else(overflow)?;
            if coef == 0 {
                break;
            }
        }
        if coefficients.len() <= power {
            coefficients.resize(power + 1, 0);
        }
        coefficients[power] = coefficients[power].checked_add(coef).ok_or_else(overflow)?;
    }

    in_progress.remove(&key);
    let x = solve_monotone(&coefficients, k).map_err(|kind| match kind {
        SolveFailure::Constant => ChiError::Underdetermined(label.clone()),
        SolveFailure::NoRoot => ChiError::NoSolution {
            pair: label.clone(),
            kostant: k,
            coefficients: coefficients.clone(),
        },
    })?;
    table.insert(lambda, mu, x);
    Ok(x)
}

enum SolveFailure {
    Constant,
    NoRoot,
}

/// Nonnegative integer root of `Σ c_e x^e = target` for nonnegative `c_e`.
fn solve_monotone(coefficients: &[u64], target: u64) -> Result<u64, SolveFailure> {
    if coefficients.iter().skip(1).all(|&c| c == 0) {
        return Err(SolveFailure::Constant);
    }
    // Evaluates the polynomial, saturating at u128::MAX.
    let eval = |x: u64| -> u128 {
        let mut acc: u128 = 0;
        let mut pw: u128 = 1;
        for &c in coefficients {
            acc = acc.saturating_add((c as u128).saturating_mul(pw));
            pw = pw.saturating_mul(x as u128);
        }
        acc
    };
    let target = target as u128;
    let (mut lo, mut hi) = (0u64, target as u64);
    if eval(lo) > target {
        return Err(SolveFailure::NoRoot);
    }
    // smallest x with eval(x) >= target
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if eval(mid) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if eval(lo) == target {
        Ok(lo)
    } else {
        Err(SolveFailure::NoRoot)
    }
}

/// `χ(Λ) = ∏ χ(λⁱ, λⁱ⁺¹)`.
pub fn chi_multipartition(stratum: &Multipartition, table: &mut ChiTable) -> Result<u64, ChiError> {
    let mut acc: u64 = 1;
    for w in stratum.entries().windows(2) {
        let x = chi(&w[0], &w[1], table)?;
        acc = acc
            .checked_mul(x)
            .ok_or_else(|| ChiError::Overflow(stratum.to_string()))?;
        if acc == 0 {
            break;
        }
    }
    Ok(acc)
}
