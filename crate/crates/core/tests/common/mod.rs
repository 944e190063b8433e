//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nilcone::{DimensionVector, Matrix, Partition, Rational};

/// A string module of the two-vertex cyclic quiver: start vertex (0 or 1)
/// and length.
pub type Str = (u8, usize);

/// Blocks `(on U₁, on U₂)` contributed by a string.
fn blocks((t, l): Str) -> (usize, usize) {
    let (long, short) = ((l + 1) / 2, l / 2);
    if t == 0 {
        (long, short)
    } else {
        (short, long)
    }
}

/// All multisets of strings whose `U₁` blocks form `λ` and `U₂` blocks `μ`.
pub fn string_modules(lambda: &Partition, mu: &Partition) -> Vec<Vec<Str>> {
    fn rec(l: &mut Vec<usize>, m: &mut Vec<usize>, cur: &mut Vec<Str>, out: &mut BTreeSet<Vec<Str>>) {
        let take = |v: &mut Vec<usize>, x: usize| -> bool {
            if x == 0 {
                return true;
            }
            match v.iter().position(|&y| y == x) {
                Some(i) => {
                    v.remove(i);
                    true
                }
                None => false,
            }
        };
        let (side, first) = match (l.first(), m.first()) {
            (Some(&a), _) => (0u8, a),
            (None, Some(&b)) => (1u8, b),
            (None, None) => {
                let mut s = cur.clone();
                s.sort();
                out.insert(s);
                return;
            }
        };
        // Strings whose block on `side` equals `first`.
        for t in 0..2u8 {
            for len in [2 * first - 1, 2 * first, 2 * first + 1] {
                let s = (t, len);
                let (a, b) = blocks(s);
                let own = if side == 0 { a } else { b };
                if own != first {
                    continue;
                }
                let (mut l2, mut m2) = (l.clone(), m.clone());
                if take(&mut l2, a) && take(&mut m2, b) {
                    cur.push(s);
                    rec(&mut l2, &mut m2, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    rec(
        &mut lambda.parts().to_vec(),
        &mut mu.parts().to_vec(),
        &mut Vec::new(),
        &mut out,
    );
    out.into_iter().collect()
}

/// `dim Hom(S, S')`: positions `j` of `S'` at the start vertex of `S` whose
/// remaining length fits inside `S`.
fn hom((t, l): Str, (t2, l2): Str) -> usize {
    (0..l2)
        .filter(|&j| (t2 as usize + j) % 2 == t as usize && l2 - j <= l)
        .count()
}

pub fn orbit_dim(module: &[Str]) -> usize {
    let (d1, d2) = module
        .iter()
        .map(|&s| blocks(s))
        .fold((0, 0), |(x, y), (a, b)| (x + a, y + b));
    let end: usize = module
        .iter()
        .flat_map(|&s| module.iter().map(move |&s2| hom(s, s2)))
        .sum();
    d1 * d1 + d2 * d2 - end
}

/// Components of the edge stratum counted as the orbits of top dimension
/// `|λ||μ| + ½ dim O_λ + ½ dim O_μ`.
pub fn string_orbit_chi(lambda: &Partition, mu: &Partition) -> u64 {
    let target = lambda.size() * mu.size() + orbit_dim_formula(lambda) / 2 + orbit_dim_formula(mu) / 2;
    let modules = string_modules(lambda, mu);
    let dims: Vec<usize> = modules.iter().map(|m| orbit_dim(m)).collect();
    assert!(dims.iter().all(|&d| d <= target), "orbit above the stratum dimension");
    dims.iter().filter(|&&d| d == target).count() as u64
}

fn orbit_dim_formula(p: &Partition) -> usize {
    let d = p.size();
    let t = p.transpose();
    d * d - t.parts().iter().map(|c| c * c).sum::<usize>()
}

/// Centralizer dimension of `J_λ` by exact rank of `X ↦ JX − XJ`; orbit
/// dimension is `d²` minus it.
pub fn orbit_dim_by_centralizer(lambda: &Partition) -> usize {
    let d = lambda.size();
    let j = nilcone::rep::jordan_matrix::<Rational>(lambda);
    let columns: Vec<Vec<Rational>> = (0..d * d)
        .map(|k| {
            let e = Matrix::unit(d, d, k / d, k % d);
            j.commutator(&e).entries().to_vec()
        })
        .collect();
    let rank = Matrix::from_columns(d * d, &columns).rank();
    rank
}

/// Kostant partition function by direct recursion: remove the interval that
/// starts at the leftmost nonzero vertex, intervals in nondecreasing order.
pub fn kostant_brute(v: &DimensionVector) -> u64 {
    fn rec(v: &mut [usize], min_end: usize, min_start: usize) -> u64 {
        let Some(i) = v.iter().position(|&x| x > 0) else {
            return 1;
        };
        let mut total = 0;
        for j in i..v.len() {
            if v[j] == 0 {
                break;
            }
            if (i, j) < (min_start, min_end) {
                continue;
            }
            v[i..=j].iter_mut().for_each(|x| *x -= 1);
            total += rec(v, j, i);
            v[i..=j].iter_mut().for_each(|x| *x += 1);
        }
        total
    }
    rec(&mut v.dims().to_vec(), 0, 0)
}

/// Whether some matching of part indices pairs every part `≥ 2` with a part
/// of the other partition differing by at most one.
pub fn matching_exists(lambda: &Partition, mu: &Partition) -> bool {
    fn rec(l: &[usize], i: usize, mu: &[usize], used: &mut Vec<bool>) -> bool {
        if i == l.len() {
            return mu.iter().zip(used.iter()).all(|(&b, &u)| b < 2 || u);
        }
        if l[i] < 2 && rec(l, i + 1, mu, used) {
            return true;
        }
        for j in 0..mu.len() {
            if !used[j] && l[i].abs_diff(mu[j]) <= 1 {
                used[j] = true;
                let ok = rec(l, i + 1, mu, used);
                used[j] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(lambda.parts(), 0, mu.parts(), &mut vec![false; mu.len()])
}

/// The closed form stated for `χ((2^a 1^b), (2^c 1^d))`.
pub fn family2_formula(a: usize, b: usize, c: usize, d: usize) -> u64 {
    if a + b < c || c + d < a {
        return 0;
    }
    (a.min(b) + (a + b - c).min(c + d - a) + 1) as u64
}

pub fn two_one(a: usize, b: usize) -> Partition {
    let mut parts = vec![2; a];
    parts.extend(std::iter::repeat(1).take(b));
    Partition::new(parts).unwrap()
}
