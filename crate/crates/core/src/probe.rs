//! Local dimension bounds from the rank of the moment-map differential, and
//! sampling of commutator Jordan types.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::partition::{DimensionVector, Partition};
use crate::rep::{jordan_type, sample_strict_upper_pair, QuiverKind, QuiverRep};
use crate::scalar::Field;

/// Coordinates in which the local dimension is bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// The full representation space; bounds the local dimension of `μ⁻¹(0)`.
    Moment,
    /// Line maps free, loop pair parametrized by `(ξ, δx, δy) ↦
    /// (e^ξ(X+δx)e^{−ξ}, e^ξ(Y+δy)e^{−ξ})` with `ξ` strictly lower and `δ`
    /// strictly upper in a basis adapted to the unique invariant flag of the
    /// pair. The image is the jointly nilpotent locus near the point, so this
    /// bounds the local dimension of the nilpotent cone itself.
    Flag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianReport {
    pub kind: String,
    pub v: Vec<usize>,
    pub chart: Chart,
    /// `dim M = Σ 2 v_in v_out` over the edges.
    pub ambient_dim: usize,
    pub chart_dim: usize,
    pub jac_rank: usize,
    /// `chart_dim − jac_rank`.
    pub local_dim_bound: usize,
    pub predicted_dim: Option<usize>,
    /// Bound equals prediction.
    pub certified: bool,
}

/// Coordinates are the entries of `B_h` then `B_h̄` for each edge, row-major.
fn ambient_dim<F: Field>(b: &QuiverRep<F>) -> usize {
    b.maps()
        .iter()
        .map(|(x, y)| x.entries().len() + y.entries().len())
        .sum()
}

/// `dμ_B(δ)ᵢ = Σ_{tail(e)=i} (δ̄B + B̄δ) − Σ_{head(e)=i} (δB̄ + Bδ̄)`.
fn moment_differential<F: Field>(b: &QuiverRep<F>, delta: &[(Matrix<F>, Matrix<F>)]) -> Vec<F> {
    let mut ops: Vec<Matrix<F>> = b.dims().dims().iter().map(|&d| Matrix::zeros(d, d)).collect();
    for ((&(i, o), (x, y)), (dx, dy)) in b.shape().edges.iter().zip(b.maps()).zip(delta) {
        let at_tail = &(dy * x) + &(y * dx);
        let at_head = &(dx * y) + &(x * dy);
        ops[i - 1] = &ops[i - 1] + &at_tail;
        ops[o - 1] = &ops[o - 1] - &at_head;
    }
    ops.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// Unit direction number `k` in the flattened coordinates.
fn unit_direction<F: Field>(b: &QuiverRep<F>, k: usize) -> Vec<(Matrix<F>, Matrix<F>)> {
    let mut offset = 0;
    let mut place = |m: &Matrix<F>| {
        let mut d = Matrix::zeros(m.rows(), m.cols());
        let len = m.entries().len();
        if (offset..offset + len).contains(&k) {
            let j = k - offset;
            d[(j / m.cols(), j % m.cols())] = F::one();
        }
        offset += len;
        d
    };
    b.maps().iter().map(|(x, y)| (place(x), place(y))).collect()
}

/// Matrix of `dμ_B` from the flattened representation space to `⊕ 𝔤𝔩(Vᵢ)`.
pub fn moment_jacobian<F: Field>(b: &QuiverRep<F>) -> Matrix<F> {
    let rows: usize = b.dims().dims().iter().map(|d| d * d).sum();
    let columns: Vec<Vec<F>> = (0..ambient_dim(b))
        .map(|k| moment_differential(b, &unit_direction(b, k)))
        .collect();
    Matrix::from_columns(rows, &columns)
}

pub fn moment_jacobian_rank<F: Field>(b: &QuiverRep<F>) -> usize {
    moment_jacobian(b).rank()
}

/// Basis `P` (as columns) adapted to the joint kernel filtration of the
/// pair, if that filtration is a complete flag: then `P⁻¹XP`, `P⁻¹YP` are
/// strictly upper triangular and the flag is the only invariant one.
pub fn unique_flag_basis<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Option<Matrix<F>> {
    let d = x.rows();
    let mut basis: Vec<Vec<F>> = Vec::with_capacity(d);
    // Annihilator rows of the current subspace V_k.
    let mut q = Matrix::<F>::identity(d);
    for k in 1..=d {
        let stacked = Matrix::vstack(d, &[&(&q * x), &(&q * y)]);
        let next = stacked.row_basis();
        if d - next.rows() != k {
            return None;
        }
        // The new vector: any element of V_k outside span(basis).
        let kernel = next.nullspace();
        let mut rank = basis.len();
        for w in kernel {
            let mut trial = basis.clone();
            trial.push(w.clone());
            let r = Matrix::from_rows(d, trial).rank();
            if r > rank {
                basis.push(w);
                rank = r;
                break;
            }
        }
        q = next;
    }
    Some(Matrix::from_columns(d, &basis))
}

/// Dimension bound in the requested chart. Returns `None` for the flag chart
/// when the loop pair has no unique invariant flag (or there is no loop).
pub fn local_dim_bound<F: Field>(b: &QuiverRep<F>, chart: Chart) -> Option<(usize, usize)> {
    match chart {
        Chart::Moment => Some((ambient_dim(b), moment_jacobian_rank(b))),
        Chart::Flag => flag_chart_bound(b),
    }
}

fn flag_chart_bound<F: Field>(b: &QuiverRep<F>) -> Option<(usize, usize)> {
    let (x, y) = b.loop_pair()?;
    let p = unique_flag_basis(x, y)?;
    let n = b.dims().len();
    let mut g: Vec<Matrix<F>> = b.dims().dims().iter().map(|&d| Matrix::identity(d)).collect();
    g[n - 1] = p.inverse().expect("flag basis is a basis");
    let b = b.base_change(&g).expect("same shape");
    let (x, y) = b.loop_pair().expect("tadpole");
    let d = x.rows();

    let jac = moment_jacobian(&b);
    let ambient = ambient_dim(&b);
    // The loop is the last edge.
    let loop_offset = ambient - 2 * d * d;

    let embed_loop = |dx: &Matrix<F>, dy: &Matrix<F>| {
        let mut col = vec![F::zero(); ambient];
        for (k, e) in dx.entries().iter().chain(dy.entries()).enumerate() {
            col[loop_offset + k] = e.clone();
        }
        col
    };
    let mut columns: Vec<Vec<F>> = (0..loop_offset)
        .map(|k| {
            let mut col = vec![F::zero(); ambient];
            col[k] = F::one();
            col
        })
        .collect();
    for r in 0..d {
        for c in 0..r {
            let xi = Matrix::unit(d, d, r, c);
            columns.push(embed_loop(&xi.commutator(x), &xi.commutator(y)));
        }
    }
    for r in 0..d {
        for c in r + 1..d {
            let e = Matrix::unit(d, d, r, c);
            columns.push(embed_loop(&e, &Matrix::zeros(d, d)));
            columns.push(embed_loop(&Matrix::zeros(d, d), &e));
        }
    }
    let chart_dim = columns.len();
    let d_phi = Matrix::from_columns(ambient, &columns);
    Some((chart_dim, (&jac * &d_phi).rank()))
}

/// Bounds the local dimension of the nilpotent cone at `b` and compares it
/// with `predicted`. Tadpole points use the flag chart when the loop pair
/// has a unique invariant flag and fall back to the moment chart otherwise.
pub fn probe_component_dim<F: Field>(b: &QuiverRep<F>, predicted: Option<usize>) -> JacobianReport {
    let (chart, (chart_dim, rank)) = match b.kind() {
        QuiverKind::Tadpole => match flag_chart_bound(b) {
            Some(r) => (Chart::Flag, r),
            None => (Chart::Moment, local_dim_bound(b, Chart::Moment).expect("always available")),
        },
        QuiverKind::Line => (Chart::Moment, local_dim_bound(b, Chart::Moment).expect("always available")),
    };
    report(b, chart, chart_dim, rank, predicted)
}

/// As [`probe_component_dim`] but in a fixed chart.
pub fn probe_in_chart<F: Field>(
    b: &QuiverRep<F>,
    chart: Chart,
    predicted: Option<usize>,
) -> Option<JacobianReport> {
    let (chart_dim, rank) = local_dim_bound(b, chart)?;
    Some(report(b, chart, chart_dim, rank, predicted))
}

fn report<F: Field>(
    b: &QuiverRep<F>,
    chart: Chart,
    chart_dim: usize,
    jac_rank: usize,
    predicted_dim: Option<usize>,
) -> JacobianReport {
    let local_dim_bound = chart_dim - jac_rank;
    JacobianReport {
        kind: b.kind().letter().to_string(),
        v: b.dims().dims().to_vec(),
        chart,
        ambient_dim: ambient_dim(b),
        chart_dim,
        jac_rank,
        local_dim_bound,
        predicted_dim,
        certified: predicted_dim == Some(local_dim_bound),
    }
}

/// A random point of the component of the line-quiver nilpotent cone indexed
/// by `segments` (0-based inclusive intervals): `B` is the direct sum of the
/// interval representations and `B̄` a random integer combination of a basis
/// of `{B̄ : μ(B, B̄) = 0}`, the conormal fibre of the orbit of `B`.
pub fn generic_line_point<F: Field>(
    v: &DimensionVector,
    segments: &[(usize, usize)],
    seed: u64,
) -> QuiverRep<F> {
    let n = v.len();
    let mut counts = vec![0usize; n];
    let mut maps: Vec<(Matrix<F>, Matrix<F>)> = (0..n.saturating_sub(1))
        .map(|e| (Matrix::zeros(v.dims()[e + 1], v.dims()[e]), Matrix::zeros(v.dims()[e], v.dims()[e + 1])))
        .collect();
    for &(i, j) in segments {
        let idx: Vec<usize> = (i..=j).map(|k| counts[k]).collect();
        for k in i..j {
            maps[k].0[(idx[k + 1 - i], idx[k - i])] = F::one();
        }
        for k in i..=j {
            counts[k] += 1;
        }
    }
    assert_eq!(counts, v.dims(), "segments must sum to v");
    let b = QuiverRep::new(QuiverKind::Line, v.clone(), maps).expect("shapes match");

    // μ is linear in B̄ once B is fixed: its columns on the unit B̄'s.
    let total: usize = (0..n.saturating_sub(1)).map(|e| v.dims()[e] * v.dims()[e + 1]).sum();
    let rows: usize = v.dims().iter().map(|d| d * d).sum();
    let columns: Vec<Vec<F>> = (0..total)
        .map(|k| {
            let with_unit = with_bbar(&b, &unit_bbar(&b, k));
            with_unit
                .moment_map()
                .ops
                .iter()
                .flat_map(|m| m.entries().iter().cloned())
                .collect()
        })
        .collect();
    let kernel = Matrix::from_columns(rows, &columns).nullspace();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flat = vec![F::zero(); total];
    for w in &kernel {
        let c = F::from_int(rng.random_range(-9..=9));
        for (f, x) in flat.iter_mut().zip(w) {
            *f = f.clone() + c.clone() * x.clone();
        }
    }
    with_bbar(&b, &flat)
}

fn unit_bbar<F: Field>(b: &QuiverRep<F>, k: usize) -> Vec<F> {
    let total: usize = b.maps().iter().map(|(_, y)| y.entries().len()).sum();
    let mut flat = vec![F::zero(); total];
    flat[k] = F::one();
    flat
}

fn with_bbar<F: Field>(b: &QuiverRep<F>, flat: &[F]) -> QuiverRep<F> {
    let mut it = flat.iter().cloned();
    let maps = b
        .maps()
        .iter()
        .map(|(x, y)| {
            let yb = Matrix::from_fn(y.rows(), y.cols(), |_, _| it.next().expect("enough entries"));
            (x.clone(), yb)
        })
        .collect();
    QuiverRep::new(b.kind(), b.dims().clone(), maps).expect("shapes unchanged")
}

/// Jordan types of `[h̄, h]` over `trials` samples of strictly upper pairs,
/// trial `t` drawn from its own stream so the result does not depend on how
/// the trials are scheduled.
pub fn commutator_type_histogram<F: Field + Send + Sync>(
    d: usize,
    trials: u64,
    seed: u64,
) -> BTreeMap<Partition, u64> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let (x, y) = sample_strict_upper_pair::<F>(d, seed, t);
            let ty = jordan_type(&y.commutator(&x)).expect("commutator of strictly upper matrices");
            BTreeMap::from([(ty, 1u64)])
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::multisegments;
    use crate::rep::QuiverKind;
    use crate::Rational;

    type Q = Matrix<Rational>;

    fn dv(d: &[usize]) -> DimensionVector {
        DimensionVector::new(d.to_vec()).unwrap()
    }

    fn a2(x: i64, y: i64) -> QuiverRep<Rational> {
        QuiverRep::new(
            QuiverKind::Line,
            dv(&[1, 1]),
            vec![(Q::from_ints(&[&[x]]), Q::from_ints(&[&[y]]))],
        )
        .unwrap()
    }

    #[test]
    fn jacobian_rank_examples() {
        assert_eq!(moment_jacobian_rank(&QuiverRep::<Rational>::zero(QuiverKind::Tadpole, dv(&[2, 3]))), 0);
        assert_eq!(moment_jacobian_rank(&a2(1, 0)), 1);
    }

    #[test]
    fn probe_examples() {
        let r = probe_component_dim(&a2(0, 0), Some(1));
        assert_eq!((r.ambient_dim, r.jac_rank, r.local_dim_bound), (2, 0, 2));
        assert!(!r.certified);
        let r = probe_component_dim(&a2(1, 0), Some(1));
        assert_eq!(r.local_dim_bound, 1);
        assert!(r.certified);
    }

    #[test]
    fn generic_line_points_lie_on_the_cone() {
        let v = dv(&[2, 3, 2]);
        for (k, segs) in multisegments(&v).iter().enumerate() {
            let b: QuiverRep<Rational> = generic_line_point(&v, segs, k as u64);
            assert!(b.moment_map().is_zero());
            assert!(b.is_nilpotent(crate::rep::NilpotencyMode::Path).unwrap());
        }
    }

    #[test]
    fn unique_flag_of_regular_pair() {
        let x = Q::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let p = unique_flag_basis(&x, &Q::zeros(3, 3)).unwrap();
        let (xc, zc) = (x.conjugate_by(&p), Q::zeros(3, 3));
        for r in 0..3 {
            for c in 0..=r {
                assert_eq!(xc[(r, c)], Rational::from_integer(0.into()));
            }
        }
        assert!(zc.is_zero());
        assert!(unique_flag_basis(&Q::zeros(2, 2), &Q::zeros(2, 2)).is_none());
    }

    #[test]
    fn histogram_small_cases() {
        let h = commutator_type_histogram::<Rational>(1, 20, 0);
        assert_eq!(h, BTreeMap::from([(Partition::column(1), 20)]));
        let h = commutator_type_histogram::<Rational>(2, 50, 4);
        assert_eq!(h, BTreeMap::from([(Partition::column(2), 50)]));
    }
}
