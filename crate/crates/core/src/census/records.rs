use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::chi::{chi_multipartition, ChiError, ChiTable};
use super::kostant::kostant;
use crate::partition::{enumerate_admissible, enumerate_chains, DimensionVector, Multipartition, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error(transparent)]
    Chi(#[from] ChiError),
    #[error("the loop vertex must have dimension 1 or 2, got {0}")]
    LoopTooLarge(usize),
    #[error("{0} violates the hypotheses of the two-row top stratum family")]
    NotTopStratumFamily(DimensionVector),
}

/// Component count and dimension of one loop-vertex stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiEntry {
    pub count: u64,
    pub dim: u64,
}

/// Known values of `ψ(λ)` together with the dimension of the corresponding
/// commutator strata. Lookups never invent values: anything outside the
/// enabled families and the explicit table is reported as unknown.
#[derive(Clone, Debug, Default)]
pub struct PsiOracle {
    families: bool,
    table: BTreeMap<Partition, PsiEntry>,
}

impl PsiOracle {
    /// No values at all.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The two known families: commuting pairs `(1^d) ↦ (1, d²−1)` and the
    /// balanced two-row stratum `(⌈d/2⌉, ⌊d/2⌋) ↦ (1, 3d(d−1)/2)`.
    pub fn standard() -> Self {
        Self {
            families: true,
            table: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, lambda: Partition, entry: PsiEntry) {
        self.table.insert(lambda, entry);
    }

    pub fn lookup(&self, lambda: &Partition) -> Option<PsiEntry> {
        if let Some(e) = self.table.get(lambda) {
            return Some(*e);
        }
        if !self.families {
            return None;
        }
        let d = lambda.size() as u64;
        if *lambda == Partition::column(lambda.size()) {
            // d = 0 is a point: keep the count, dimension 0.
            return Some(PsiEntry {
                count: 1,
                dim: (d * d).saturating_sub(1),
            });
        }
        if *lambda == Partition::balanced_two_row(lambda.size()) {
            return Some(PsiEntry {
                count: 1,
                dim: 3 * d * (d - 1) / 2,
            });
        }
        None
    }
}

/// Number of components of a stratum, possibly pending an unknown `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentCount {
    Known(u64),
    Symbolic { chi: u64, psi_of: Partition },
}

/// Dimension of the components of a stratum, possibly pending an unknown
/// commutator-stratum dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentDim {
    Known(i64),
    Symbolic { base: i64, x_dim_of: Partition },
}

fn unknown_label(p: &Partition) -> String {
    format!("unknown({})", p.to_key())
}

fn parse_unknown<E: serde::de::Error>(s: &str) -> Result<Partition, E> {
    let inner = s
        .strip_prefix("unknown(")
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| E::custom(format!("expected unknown(...), got {s:?}")))?;
    inner.parse().map_err(E::custom)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CountRepr {
    Known(u64),
    Symbolic { chi: u64, psi: String },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DimRepr {
    Known(i64),
    Symbolic { base: i64, x_dim: String },
}

impl Serialize for ComponentCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Known(x) => CountRepr::Known(*x),
            Self::Symbolic { chi, psi_of } => CountRepr::Symbolic {
                chi: *chi,
                psi: unknown_label(psi_of),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComponentCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match CountRepr::deserialize(d)? {
            CountRepr::Known(x) => Self::Known(x),
            CountRepr::Symbolic { chi, psi } => Self::Symbolic {
                chi,
                psi_of: parse_unknown(&psi)?,
            },
        })
    }
}

impl Serialize for ComponentDim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Known(x) => DimRepr::Known(*x),
            Self::Symbolic { base, x_dim_of } => DimRepr::Symbolic {
                base: *base,
                x_dim: unknown_label(x_dim_of),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComponentDim {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match DimRepr::deserialize(d)? {
            DimRepr::Known(x) => Self::Known(x),
            DimRepr::Symbolic { base, x_dim } => Self::Symbolic {
                base,
                x_dim_of: parse_unknown(&x_dim)?,
            },
        })
    }
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Known(x) => write!(f, "{x}"),
            Self::Symbolic { chi, psi_of } => write!(f, "{chi}·ψ{psi_of}"),
        }
    }
}

impl fmt::Display for ComponentDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Known(x) => write!(f, "{x}"),
            Self::Symbolic { base, x_dim_of } => write!(f, "dim X{x_dim_of} {base:+}"),
        }
    }
}

/// One Jordan stratum of the tadpole nilpotent cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub stratum: Multipartition,
    pub count: ComponentCount,
    pub dim: ComponentDim,
}

/// Census of the line-quiver nilpotent cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnCensus {
    pub count: u64,
    pub dim: usize,
    /// `χ(Λ)` for every admissible stratum.
    pub strata: Vec<(Multipartition, u64)>,
}

impl AnCensus {
    /// `Σ χ(Λ) = K(v)`.
    pub fn is_consistent(&self) -> bool {
        self.strata.iter().map(|(_, x)| x).sum::<u64>() == self.count
    }
}

pub fn census_an(v: &DimensionVector, table: &mut ChiTable) -> Result<AnCensus, CensusError> {
    let strata = enumerate_admissible(v, &Partition::column(v.first()), &Partition::column(v.last()))
        .expect("one-column ends match v");
    let strata = strata
        .into_iter()
        .map(|s| chi_multipartition(&s, table).map(|x| (s, x)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnCensus {
        count: kostant(v),
        dim: v.adjacent_products(),
        strata,
    })
}

/// Upper-bound census of the tadpole nilpotent cone, one record per
/// nonempty stratum.
pub fn census_tn_strata(
    v: &DimensionVector,
    psi: &PsiOracle,
    table: &mut ChiTable,
) -> Result<Vec<CensusRecord>, CensusError> {
    let first = Partition::column(v.first());
    let line = v.adjacent_products() as i64;
    let mut out = Vec::new();
    for stratum in enumerate_chains(v, Some(&first), None) {
        let last = stratum.last().clone();
        if last.xlambda_is_empty() {
            continue;
        }
        let chi = chi_multipartition(&stratum, table)?;
        let base = line - (last.orbit_dim() / 2) as i64;
        let (count, dim) = match psi.lookup(&last) {
            Some(e) => (
                ComponentCount::Known(chi * e.count),
                ComponentDim::Known(base + e.dim as i64),
            ),
            None => (
                ComponentCount::Symbolic {
                    chi,
                    psi_of: last.clone(),
                },
                ComponentDim::Symbolic {
                    base,
                    x_dim_of: last.clone(),
                },
            ),
        };
        out.push(CensusRecord { stratum, count, dim });
    }
    Ok(out)
}

/// Loop vertex of dimension 1 or 2: the cone is the line cone times the
/// commuting nilpotent pairs.
pub fn small_loop_census(v: &DimensionVector) -> Result<(u64, usize), CensusError> {
    let d = v.last();
    if !(1..=2).contains(&d) {
        return Err(CensusError::LoopTooLarge(d));
    }
    Ok((kostant(v), v.adjacent_products() + d * d - 1))
}

/// The open stratum whose loop commutator has balanced two-row type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopStratum {
    pub lambda: Partition,
    pub count: u64,
    pub dim: usize,
    pub codim: usize,
}

pub fn top_stratum_components(
    v: &DimensionVector,
    table: &mut ChiTable,
) -> Result<TopStratum, CensusError> {
    let n = v.len();
    let dims = v.dims();
    let even = dims[n - 1] == 2 * n && dims.iter().enumerate().all(|(i, &x)| x >= 2 * (i + 1));
    let odd = dims[n - 1] == 2 * n - 1 && dims.iter().enumerate().all(|(i, &x)| x + 1 >= 2 * (i + 1));
    if !(even || odd) {
        return Err(CensusError::NotTopStratumFamily(v.clone()));
    }
    let d = v.last();
    let lambda = Partition::balanced_two_row(d);
    let mut count = 0u64;
    for s in enumerate_admissible(v, &Partition::column(v.first()), &lambda)
        .expect("end sizes match v")
    {
        count += chi_multipartition(&s, table)?;
    }
    Ok(TopStratum {
        lambda,
        count,
        dim: v.adjacent_products() + d * d - n,
        codim: n - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(d: &[usize]) -> DimensionVector {
        DimensionVector::new(d.to_vec()).unwrap()
    }

    #[test]
    fn psi_families_agree_where_they_overlap() {
        let o = PsiOracle::standard();
        assert_eq!(o.lookup(&Partition::column(1)), Some(PsiEntry { count: 1, dim: 0 }));
        assert_eq!(o.lookup(&Partition::column(2)), Some(PsiEntry { count: 1, dim: 3 }));
        assert_eq!(
            o.lookup(&"3,2".parse().unwrap()),
            Some(PsiEntry { count: 1, dim: 30 })
        );
        assert_eq!(o.lookup(&"2,1,1".parse().unwrap()), None);
        assert_eq!(PsiOracle::empty().lookup(&Partition::column(3)), None);
    }

    #[test]
    fn an_census_examples() {
        let mut t = ChiTable::new();
        let c = census_an(&dv(&[2, 3]), &mut t).unwrap();
        assert_eq!((c.count, c.dim), (3, 6));
        assert!(c.is_consistent());
        let c = census_an(&dv(&[4]), &mut t).unwrap();
        assert_eq!((c.count, c.dim), (1, 0));
        let c = census_an(&dv(&[1, 2, 1]), &mut t).unwrap();
        assert_eq!((c.count, c.dim), (5, 4));
        assert!(c.is_consistent());
    }

    #[test]
    fn tn_single_vertex() {
        let mut t = ChiTable::new();
        let r = census_tn_strata(&dv(&[1]), &PsiOracle::standard(), &mut t).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].count, ComponentCount::Known(1));
        assert_eq!(r[0].dim, ComponentDim::Known(0));
    }

    #[test]
    fn tn_excludes_empty_commutator_strata() {
        let mut t = ChiTable::new();
        let r = census_tn_strata(&dv(&[1, 2]), &PsiOracle::standard(), &mut t).unwrap();
        assert!(r.iter().all(|rec| rec.stratum.last() == &Partition::column(2)));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].count, ComponentCount::Known(2));
        assert_eq!(r[0].dim, ComponentDim::Known(2 + 3));
    }

    #[test]
    fn tn_symbolic_entries() {
        let mut t = ChiTable::new();
        let r = census_tn_strata(&dv(&[2, 4]), &PsiOracle::standard(), &mut t).unwrap();
        let two_row = r
            .iter()
            .find(|rec| rec.stratum.last() == &"2,2".parse().unwrap())
            .unwrap();
        // 8 + 18 − ½·8 = 22
        assert_eq!(two_row.dim, ComponentDim::Known(22));
        let hook = r
            .iter()
            .find(|rec| rec.stratum.last() == &"2,1,1".parse().unwrap())
            .unwrap();
        assert!(matches!(hook.count, ComponentCount::Symbolic { .. }));
        let json = serde_json::to_string(hook).unwrap();
        assert!(json.contains("\"psi\":\"unknown(2,1,1)\""), "{json}");
        assert!(json.contains("\"x_dim\":\"unknown(2,1,1)\""), "{json}");
        let back: CensusRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, hook);
    }

    #[test]
    fn small_loop_examples() {
        assert_eq!(small_loop_census(&dv(&[1, 1])).unwrap(), (2, 1));
        assert_eq!(small_loop_census(&dv(&[2, 2])).unwrap(), (3, 7));
        assert_eq!(small_loop_census(&dv(&[3])), Err(CensusError::LoopTooLarge(3)));
    }

    #[test]
    fn top_stratum_examples() {
        let mut t = ChiTable::new();
        let r = top_stratum_components(&dv(&[1]), &mut t).unwrap();
        assert_eq!((r.count, r.dim, r.codim), (1, 0, 0));
        let r = top_stratum_components(&dv(&[2]), &mut t).unwrap();
        assert_eq!((r.count, r.dim, r.codim), (1, 3, 0));
        let r = top_stratum_components(&dv(&[1, 3]), &mut t).unwrap();
        assert_eq!(r.lambda, "2,1".parse().unwrap());
        assert_eq!((r.dim, r.codim), (10, 1));
        assert!(top_stratum_components(&dv(&[3]), &mut t).is_err());
        assert!(top_stratum_components(&dv(&[1, 4]), &mut t).is_err());
    }
}
