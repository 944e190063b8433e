use crate::partition::DimensionVector;

/// Kostant partition function of type A: the number of ways to write `v`
/// as an unordered sum of interval vectors `e_i + … + e_j`.
///
/// Unbounded-knapsack DP over the positive roots on a dense mixed-radix
/// table of all vectors `≤ v`.
pub fn kostant(v: &DimensionVector) -> u64 {
    let dims = v.dims();
    let n = dims.len();
    // stride[i] = ∏_{k<i} (v_k + 1)
    let mut stride = vec![1usize; n + 1];
    for i in 0..n {
        stride[i + 1] = stride[i] * (dims[i] + 1);
    }
    let states = stride[n];
    let mut table = vec![0u64; states];
    table[0] = 1;

    for i in 0..n {
        for j in i..n {
            let offset: usize = (i..=j).map(|k| stride[k]).sum();
            for s in 0..states {
                // s ≥ root componentwise ⇔ each coordinate in i..=j is ≥ 1
                if (i..=j).all(|k| (s / stride[k]) % (dims[k] + 1) >= 1) {
                    table[s] = table[s].saturating_add(table[s - offset]);
                }
            }
        }
    }
    table[states - 1]
}

/// Explicit list of multisegments (root multisets) of `v`: each entry is a
/// sorted list of intervals `(i, j)`, 0-based inclusive.
pub fn multisegments(v: &DimensionVector) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rest: &mut [usize],
        min_root: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(i) = rest.iter().position(|&x| x > 0) else {
            out.push(cur.clone());
            return;
        };
        // The leftmost nonzero vertex must be the start of some interval;
        // roots are emitted in nondecreasing order to avoid duplicates.
        for j in i..rest.len() {
            if rest[j] == 0 {
                break;
            }
            if (i, j) < min_root {
                continue;
            }
            for x in &mut rest[i..=j] {
                *x -= 1;
            }
            cur.push((i, j));
            rec(rest, (i, j), cur, out);
            cur.pop();
            for x in &mut rest[i..=j] {
                *x += 1;
            }
        }
    }
    let mut rest = v.dims().to_vec();
    let mut out = Vec::new();
    rec(&mut rest, (0, 0), &mut Vec::new(), &mut out);
    out
}
