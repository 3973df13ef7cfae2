//! Exact integer linear algebra for small homology computations.

use num_integer::Integer;

/// Rank over the rationals of the given integer row vectors.
///
/// Fraction-free elimination with per-row gcd normalization; entries stay
/// small for the matrices this crate builds (incidence and cocycle data).
pub fn exact_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    for r in m.iter_mut() {
        r.resize(ncols, 0);
    }
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let prow = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let a = row[col];
            if a == 0 {
                continue;
            }
            let p = prow[col];
            let mut g = 0i128;
            for (x, &y) in row.iter_mut().zip(prow.iter()) {
                *x = *x * p - y * a;
                g = g.gcd(x);
            }
            if g > 1 {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of `extra` modulo the span of `base`: rank(base ∪ extra) − rank(base).
pub fn relative_rank(base: &[Vec<i64>], extra: &[Vec<i64>]) -> usize {
    let mut all = base.to_vec();
    all.extend_from_slice(extra);
    exact_rank(&all) - exact_rank(base)
}
