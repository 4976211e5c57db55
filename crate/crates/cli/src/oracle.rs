//! Brute-force oracles that share no code with the closed forms they check.

use ringprob::Ring;

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = (1..p).find(|&i| rows[rank][c] * i % p == 1).unwrap();
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + (p - f) * pv) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every `k x n` matrix in reduced row echelon form over `GF(p)`, one per
/// `k`-dimensional subspace.
fn rref_matrices(p: u64, n: usize, k: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(p, n, k, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(
    p: u64,
    n: usize,
    k: usize,
    from: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<u64>>>,
) {
    if pivots.len() == k {
        fill_free(p, n, pivots, out);
        return;
    }
    for c in from..n {
        pivots.push(c);
        choose_pivots(p, n, k, c + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free(p: u64, n: usize, pivots: &[usize], out: &mut Vec<Vec<Vec<u64>>>) {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| {
            ((c + 1)..n)
                .filter(|j| !pivots.contains(j))
                .map(move |j| (i, j))
        })
        .collect();
    let combos = p.pow(free.len() as u32);
    for mut code in 0..combos {
        let mut m = vec![vec![0u64; n]; pivots.len()];
        for (i, &c) in pivots.iter().enumerate() {
            m[i][c] = 1;
        }
        for &(i, j) in &free {
            m[i][j] = code % p;
            code /= p;
        }
        out.push(m);
    }
}

/// Number of `k`-dimensional subspaces of `GF(p)^n` containing the span of
/// the first `r` standard basis vectors, by enumeration. `p` must be prime.
pub fn subspaces_containing(p: u64, n: usize, r: usize, k: usize) -> u64 {
    if r > k || k > n {
        return 0;
    }
    rref_matrices(p, n, k)
        .into_iter()
        .filter(|m| {
            (0..r).all(|j| {
                let mut rows = m.clone();
                let mut e = vec![0u64; n];
                e[j] = 1;
                rows.push(e);
                rank_mod_p(rows, p) == k
            })
        })
        .count() as u64
}

/// `{x : x^m = 0 for some m <= |R|}`.
pub fn nilradical(ring: &Ring) -> Vec<usize> {
    (0..ring.size())
        .filter(|&x| {
            let mut power = x;
            for _ in 0..ring.size() {
                if power == 0 {
                    return true;
                }
                power = ring.mul(power, x);
            }
            power == 0
        })
        .collect()
}
