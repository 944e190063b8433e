//! JSON form of rational representations:
//! `{"kind": "A"|"T", "v": [..], "maps": [{"edge": i, "B": [[num, den], ..], "Bbar": [..]}]}`
//! with edges numbered from 1 and matrices flattened row-major. Integers
//! outside the `i64` range are written as decimal strings.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{QuiverKind, QuiverRep, RepError};
use crate::linalg::Matrix;
use crate::partition::DimensionVector;
use crate::Rational;

#[derive(Debug, Error)]
pub enum RepJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("unknown quiver kind {0:?}")]
    Kind(String),
    #[error("bad dimension vector: {0}")]
    Dims(String),
    #[error("edge {edge}: {what}")]
    Entry { edge: usize, what: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn from_big(x: &BigInt) -> Self {
        x.to_i64().map_or_else(|| Self::Big(x.to_string()), Self::Small)
    }

    fn to_big(&self) -> Option<BigInt> {
        match self {
            Self::Small(x) => Some(BigInt::from(*x)),
            Self::Big(s) => s.parse().ok(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    edge: usize,
    #[serde(rename = "B")]
    b: Vec<(Int, Int)>,
    #[serde(rename = "Bbar")]
    bbar: Vec<(Int, Int)>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    kind: String,
    v: Vec<usize>,
    maps: Vec<EdgeJson>,
}

fn flatten(m: &Matrix<Rational>) -> Vec<(Int, Int)> {
    m.entries()
        .iter()
        .map(|q| (Int::from_big(q.numer()), Int::from_big(q.denom())))
        .collect()
}

fn unflatten(
    edge: usize,
    rows: usize,
    cols: usize,
    flat: &[(Int, Int)],
) -> Result<Matrix<Rational>, RepJsonError> {
    let bad = |what: String| RepJsonError::Entry { edge, what };
    if flat.len() != rows * cols {
        return Err(bad(format!("expected {} entries, got {}", rows * cols, flat.len())));
    }
    let mut entries = Vec::with_capacity(flat.len());
    for (n, d) in flat {
        let (n, d) = n
            .to_big()
            .zip(d.to_big())
            .ok_or_else(|| bad("unparseable integer".into()))?;
        if d.is_zero() {
            return Err(bad("zero denominator".into()));
        }
        entries.push(Rational::new(n, d));
    }
    let mut it = entries.into_iter();
    Ok(Matrix::from_fn(rows, cols, |_, _| it.next().expect("length checked")))
}

impl QuiverRep<Rational> {
    pub fn to_json(&self) -> String {
        let doc = RepJson {
            kind: self.kind().letter().to_string(),
            v: self.dims().dims().to_vec(),
            maps: self
                .maps()
                .iter()
                .enumerate()
                .map(|(e, (b, bb))| EdgeJson {
                    edge: e + 1,
                    b: flatten(b),
                    bbar: flatten(bb),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("representation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, RepJsonError> {
        let doc: RepJson = serde_json::from_str(s)?;
        let kind = match doc.kind.as_str() {
            "A" => QuiverKind::Line,
            "T" => QuiverKind::Tadpole,
            other => return Err(RepJsonError::Kind(other.to_string())),
        };
        let v = DimensionVector::new(doc.v).map_err(|e| RepJsonError::Dims(e.to_string()))?;
        let mut edges = doc.maps;
        edges.sort_by_key(|e| e.edge);
        let shape = super::QuiverShape::new(kind, v.len());
        if edges.iter().map(|e| e.edge).ne(1..=shape.edges.len()) {
            return Err(RepJsonError::Entry {
                edge: 0,
                what: format!("expected edges 1..={}", shape.edges.len()),
            });
        }
        let maps = edges
            .iter()
            .zip(&shape.edges)
            .map(|(e, &(i, o))| {
                let (di, dout) = (v.dims()[i - 1], v.dims()[o - 1]);
                Ok((
                    unflatten(e.edge, dout, di, &e.b)?,
                    unflatten(e.edge, di, dout, &e.bbar)?,
                ))
            })
            .collect::<Result<Vec<_>, RepJsonError>>()?;
        Ok(Self::new(kind, v, maps)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn roundtrip() {
        let big = Rational::new(BigInt::from(10).pow(30), BigInt::from(7));
        let b = Matrix::from_fn(2, 1, |r, _| {
            if r == 0 {
                Rational::new(BigInt::from(-3), BigInt::from(4))
            } else {
                big.clone()
            }
        });
        let rep = QuiverRep::new(
            QuiverKind::Tadpole,
            DimensionVector::new(vec![1, 2]).unwrap(),
            vec![(b, Matrix::zeros(1, 2)), (Matrix::identity(2), Matrix::zeros(2, 2))],
        )
        .unwrap();
        let s = rep.to_json();
        assert!(s.starts_with("{\"kind\":\"T\",\"v\":[1,2],\"maps\":[{\"edge\":1,\"B\":[[-3,4],"), "{s}");
        assert_eq!(QuiverRep::from_json(&s).unwrap(), rep);
    }

    #[test]
    fn rejects_malformed() {
        let bad_count = r#"{"kind":"A","v":[1,1],"maps":[{"edge":1,"B":[],"Bbar":[[0,1]]}]}"#;
        assert!(matches!(
            QuiverRep::from_json(bad_count),
            Err(RepJsonError::Entry { edge: 1, .. })
        ));
        let zero_den = r#"{"kind":"A","v":[1,1],"maps":[{"edge":1,"B":[[1,0]],"Bbar":[[0,1]]}]}"#;
        assert!(QuiverRep::from_json(zero_den).is_err());
        let kind = r#"{"kind":"D","v":[1],"maps":[]}"#;
        assert!(matches!(QuiverRep::from_json(kind), Err(RepJsonError::Kind(_))));
    }
}
