use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::jordan::{is_nilpotent_set, jordan_basis, jordan_type};
use super::{QuiverKind, QuiverRep, RepError};
use crate::linalg::Matrix;
use crate::partition::{DimensionVector, Multipartition, Partition, ProperPairing};
use crate::scalar::Field;

fn offsets(p: &Partition) -> Vec<usize> {
    p.parts()
        .iter()
        .scan(0, |acc, &x| {
            let o = *acc;
            *acc += x;
            Some(o)
        })
        .collect()
}

/// A point `(h, h̄)` with `h : U₁ → U₂`, `h̄ : U₂ → U₁`, `h̄h = J_λ` and
/// `hh̄ = J_μ` exactly (see [`jordan_matrix`](super::jordan_matrix)).
///
/// Each matched pair of parts `(a, b)` becomes a zig-zag string of length
/// `a + b` alternating between the two spaces, starting on the side of the
/// larger part (on `U₁` when `a = b`). Unmatched parts, which are all 1,
/// are one-dimensional summands on which both maps vanish.
pub fn build_h_point<F: Field>(
    lambda: &Partition,
    mu: &Partition,
    pairing: &ProperPairing,
) -> Result<(Matrix<F>, Matrix<F>), RepError> {
    if !pairing.is_valid_for(lambda, mu) {
        return Err(RepError::InvalidPairing {
            index: 0,
            lambda: lambda.to_string(),
            mu: mu.to_string(),
        });
    }
    let (lo, mo) = (offsets(lambda), offsets(mu));
    let mut h = Matrix::zeros(mu.size(), lambda.size());
    let mut hbar = Matrix::zeros(lambda.size(), mu.size());
    for &(i, j) in &pairing.matches {
        let (a, b) = (lambda.part(i), mu.part(j));
        let starts_in_u1 = a >= b;
        // Position p of the string lies in U₁ iff p has the parity of the
        // starting side; its index inside its block is p / 2.
        let in_u1 = |p: usize| (p % 2 == 0) == starts_in_u1;
        for p in 0..a + b - 1 {
            if in_u1(p) {
                let from = lo[i] + block_index(p, starts_in_u1);
                let to = mo[j] + block_index(p + 1, !starts_in_u1);
                h[(to, from)] = F::one();
            } else {
                let from = mo[j] + block_index(p, !starts_in_u1);
                let to = lo[i] + block_index(p + 1, starts_in_u1);
                hbar[(to, from)] = F::one();
            }
        }
    }
    Ok((h, hbar))
}

/// Index within its block of string position `p`, for a space that holds the
/// even positions when `even` is true and the odd ones otherwise.
fn block_index(p: usize, even: bool) -> usize {
    if even {
        p / 2
    } else {
        (p - 1) / 2
    }
}

fn check_line_part(
    lambda: &Multipartition,
    pairings: &[ProperPairing],
) -> Result<DimensionVector, RepError> {
    if lambda.is_empty() {
        return Err(RepError::Inadmissible("empty multipartition".into()));
    }
    let v = DimensionVector::new(lambda.sizes()).expect("nonempty");
    if lambda.entries()[0] != Partition::column(v.first()) {
        return Err(RepError::Inadmissible(format!(
            "first entry must be {}, got {}",
            Partition::column(v.first()),
            lambda.entries()[0]
        )));
    }
    if pairings.len() + 1 != lambda.len() {
        return Err(RepError::Inadmissible(format!(
            "{} vertices need {} pairings, got {}",
            lambda.len(),
            lambda.len() - 1,
            pairings.len()
        )));
    }
    for (k, (w, p)) in lambda.entries().windows(2).zip(pairings).enumerate() {
        if !p.is_valid_for(&w[0], &w[1]) {
            return Err(RepError::InvalidPairing {
                index: k + 1,
                lambda: w[0].to_string(),
                mu: w[1].to_string(),
            });
        }
    }
    Ok(v)
}

fn line_maps<F: Field>(
    lambda: &Multipartition,
    pairings: &[ProperPairing],
) -> Vec<(Matrix<F>, Matrix<F>)> {
    lambda
        .entries()
        .windows(2)
        .zip(pairings)
        .map(|(w, p)| build_h_point(&w[0], &w[1], p).expect("pairings checked"))
        .collect()
}

/// A point of the line-quiver nilpotent cone in the stratum `Λ`. Each edge
/// is an [`build_h_point`] output; both of its end operators are Jordan
/// matrices, so consecutive edges glue with `μ = 0` exactly.
pub fn build_an_point<F: Field>(
    lambda: &Multipartition,
    pairings: &[ProperPairing],
) -> Result<QuiverRep<F>, RepError> {
    let v = check_line_part(lambda, pairings)?;
    let last = lambda.last();
    if *last != Partition::column(v.last()) {
        return Err(RepError::Inadmissible(format!(
            "last entry must be {}, got {last}",
            Partition::column(v.last())
        )));
    }
    QuiverRep::new(QuiverKind::Line, v, line_maps(lambda, pairings))
}

/// A point of the tadpole nilpotent cone in the stratum `Λ` with the given
/// loop pair. The loop pair is conjugated into a Jordan basis of its
/// commutator `B̄B − BB̄`, which then matches the end operator of the line
/// part.
pub fn build_tn_point<F: Field>(
    lambda: &Multipartition,
    pairings: &[ProperPairing],
    loop_pair: (&Matrix<F>, &Matrix<F>),
) -> Result<QuiverRep<F>, RepError> {
    let v = check_line_part(lambda, pairings)?;
    let (x, y) = loop_pair;
    let d = v.last();
    if x.shape() != (d, d) || y.shape() != (d, d) {
        return Err(RepError::Shape(format!(
            "loop pair must be {d}×{d}, got {:?} and {:?}",
            x.shape(),
            y.shape()
        )));
    }
    if !is_nilpotent_set(&[x.clone(), y.clone()])? {
        return Err(RepError::LoopNotNilpotent);
    }
    let c = y.commutator(x);
    let (found, p) = jordan_basis(&c).map_err(|_| RepError::LoopNotNilpotent)?;
    if found != *lambda.last() {
        return Err(RepError::CommutatorType {
            expected: lambda.last().to_string(),
            found: found.to_string(),
        });
    }
    let mut maps = line_maps(lambda, pairings);
    maps.push((x.conjugate_by(&p), y.conjugate_by(&p)));
    QuiverRep::new(QuiverKind::Tadpole, v, maps)
}

/// The upper shift `e_{j+1} ↦ e_j` of size `d`.
pub fn strict_upper_shift<F: Field>(d: usize) -> Matrix<F> {
    Matrix::from_fn(d, d, |r, c| if c == r + 1 { F::one() } else { F::zero() })
}

/// Trial `trial` of the sampler: two strictly upper-triangular matrices with
/// independent uniform entries in `{−2, …, 2}`, drawn from the ChaCha stream
/// `trial` under `seed` so every trial is reproducible on its own.
pub fn sample_strict_upper_pair<F: Field>(d: usize, seed: u64, trial: u64) -> (Matrix<F>, Matrix<F>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut draw = || {
        Matrix::from_fn(d, d, |r, c| {
            if c > r {
                F::from_int(rng.random_range(-2..=2))
            } else {
                F::zero()
            }
        })
    };
    let x = draw();
    let y = draw();
    (x, y)
}

/// Searches for a jointly nilpotent pair whose commutator has Jordan type
/// `λ`. Returns the pair from the smallest successful trial index, or
/// `None` after `trials` attempts.
pub fn loop_pair_search<F: Field + Send + Sync>(
    d: usize,
    lambda: &Partition,
    trials: u64,
    seed: u64,
) -> Option<(Matrix<F>, Matrix<F>)> {
    if lambda.size() != d {
        return None;
    }
    if *lambda == Partition::column(d) {
        return Some((strict_upper_shift(d), Matrix::zeros(d, d)));
    }
    (0..trials).into_par_iter().find_map_first(|t| {
        let (x, y) = sample_strict_upper_pair::<F>(d, seed, t);
        let ty = jordan_type(&y.commutator(&x)).expect("commutator of strictly upper matrices");
        (ty == *lambda).then_some((x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{jordan_matrix, NilpotencyMode};
    use crate::Rational;

    type Q = Matrix<Rational>;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn pairing(m: &[(usize, usize)]) -> ProperPairing {
        ProperPairing { matches: m.to_vec() }
    }

    #[test]
    fn h_point_examples() {
        let (h, hb): (Q, Q) = build_h_point(&p("1"), &p("1"), &ProperPairing::empty()).unwrap();
        assert!(h.is_zero() && hb.is_zero());

        for (l, m) in [("2", "1"), ("2", "2"), ("1", "2"), ("3,1", "2,2"), ("2,1,1", "3,1")] {
            let (l, m) = (p(l), p(m));
            for pr in crate::partition::enumerate_proper_pairings(&l, &m) {
                let (h, hb): (Q, Q) = build_h_point(&l, &m, &pr).unwrap();
                assert_eq!(&hb * &h, jordan_matrix(&l), "{l} {m} {pr:?}");
                assert_eq!(&h * &hb, jordan_matrix(&m), "{l} {m} {pr:?}");
            }
        }
        assert!(build_h_point::<Rational>(&p("3"), &p("1"), &pairing(&[(0, 0)])).is_err());
    }

    #[test]
    fn an_point_examples() {
        let z: QuiverRep<Rational> =
            build_an_point(&"(1);(1)".parse().unwrap(), &[ProperPairing::empty()]).unwrap();
        assert!(z.b(0).is_zero() && z.bbar(0).is_zero());

        let lam: Multipartition = "(1);(2);(1)".parse().unwrap();
        let b: QuiverRep<Rational> =
            build_an_point(&lam, &[pairing(&[(0, 0)]), pairing(&[(0, 0)])]).unwrap();
        assert!(b.moment_map().is_zero());
        assert!(b.is_nilpotent(NilpotencyMode::Path).unwrap());
        assert_eq!(jordan_type(&b.vertex_operators().ops[1]).unwrap(), p("2"));

        let bad = build_an_point::<Rational>(&"(2);(1,1)".parse().unwrap(), &[pairing(&[(0, 0)])]);
        assert!(matches!(bad, Err(RepError::Inadmissible(_))));
    }

    #[test]
    fn tn_point_with_commuting_loop() {
        let lam: Multipartition = "(1,1)".parse().unwrap();
        let j = strict_upper_shift::<Rational>(2);
        let b = build_tn_point(&lam, &[], (&j, &Q::zeros(2, 2))).unwrap();
        assert!(b.moment_map().is_zero());
        assert!(b.is_nilpotent(NilpotencyMode::Local).unwrap());
    }

    #[test]
    fn tn_point_rejects_wrong_loop() {
        let lam: Multipartition = "(1);(2,1)".parse().unwrap();
        let pr = pairing(&[(0, 0)]);
        let j = strict_upper_shift::<Rational>(3);
        let r = build_tn_point(&lam, &[pr.clone()], (&j, &Q::zeros(3, 3)));
        assert!(matches!(r, Err(RepError::CommutatorType { .. })));
        let r = build_tn_point(&lam, &[pr], (&Q::identity(3), &Q::zeros(3, 3)));
        assert_eq!(r, Err(RepError::LoopNotNilpotent));
    }

    #[test]
    fn loop_search() {
        let (x, y) = loop_pair_search::<Rational>(3, &p("2,1"), 200, 7).unwrap();
        assert_eq!(jordan_type(&y.commutator(&x)).unwrap(), p("2,1"));
        assert!(loop_pair_search::<Rational>(2, &p("2"), 300, 1).is_none());
        let (x, y) = loop_pair_search::<Rational>(4, &p("1,1,1,1"), 0, 0).unwrap();
        assert!(y.is_zero() && !x.is_zero());
    }

    #[test]
    fn loop_search_is_deterministic() {
        let a = loop_pair_search::<Rational>(4, &p("2,2"), 500, 3);
        let b = loop_pair_search::<Rational>(4, &p("2,2"), 500, 3);
        assert!(a.is_some());
        assert_eq!(a, b);
    }
}
