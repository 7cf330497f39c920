//! Exact integer row reduction.
//!
//! Matrices here are tiny (at most 8×6 with 0/1 entries), so plain `i64`
//! arithmetic with extended-gcd style elimination never comes close to
//! overflowing.

/// Result of reducing `M` with unimodular row operations: `transform · M = reduced`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    /// Echelon form with positive pivots; rows past `rank` are zero.
    pub reduced: Vec<Vec<i64>>,
    /// Unimodular transform, one row per input row.
    pub transform: Vec<Vec<i64>>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Transform rows annihilating `M`: a basis of the integer left kernel.
    pub fn kernel_rows(&self) -> &[Vec<i64>] {
        &self.transform[self.rank()..]
    }
}

fn sub_row(rows: &mut [Vec<i64>], target: usize, source: usize, q: i64) {
    if q == 0 {
        return;
    }
    for c in 0..rows[target].len() {
        rows[target][c] -= q * rows[source][c];
    }
}

/// Hermite-style reduction over the integers.
pub fn row_echelon(m: &[Vec<i64>]) -> RowEchelon {
    let n = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<i64>> = m.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        loop {
            // smallest nonzero entry at or below r moves up to r
            let best = (r..n)
                .filter(|&i| h[i][col] != 0)
                .min_by_key(|&i| h[i][col].abs());
            let Some(best) = best else { break };
            h.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..n {
                if h[i][col] != 0 {
                    let q = h[i][col].div_euclid(h[r][col]);
                    sub_row(&mut h, i, r, q);
                    sub_row(&mut u, i, r, q);
                    if h[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][col] == 0 {
            continue;
        }
        if h[r][col] < 0 {
            h[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = h[i][col].div_euclid(h[r][col]);
            sub_row(&mut h, i, r, q);
            sub_row(&mut u, i, r, q);
        }
        pivots.push(col);
        r += 1;
    }
    RowEchelon {
        reduced: h,
        transform: u,
        pivots,
    }
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    row_echelon(m).rank()
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Shortens a lattice basis by repeated pairwise size reduction in the L1 norm,
/// then fixes signs (first nonzero entry positive) and sorts. The lattice is unchanged.
pub fn reduce_basis(mut basis: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand: Vec<i64> = basis[i]
                        .iter()
                        .zip(&basis[j])
                        .map(|(a, b)| a - sign * b)
                        .collect();
                    if l1(&cand) < l1(&basis[i]) {
                        basis[i] = cand;
                        improved = true;
                    }
                }
            }
        }
    }
    for v in basis.iter_mut() {
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    basis.sort_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| b.cmp(a)));
    basis
}

/// A basis of `{u ∈ ℤⁿ : uᵀM = 0}`. The lattice is saturated by construction.
pub fn integer_left_kernel(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    reduce_basis(row_echelon(m).kernel_rows().to_vec())
}

/// Whether `v` is an integer combination of the rows of `basis`.
pub fn in_span(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut rest = v.to_vec();
    if !basis.is_empty() {
        let ech = row_echelon(basis);
        for (row, &col) in ech.pivots.iter().enumerate() {
            let p = ech.reduced[row][col];
            if rest[col] % p != 0 {
                return false;
            }
            let q = rest[col] / p;
            for (r, x) in rest.iter_mut().zip(&ech.reduced[row]) {
                *r -= q * x;
            }
        }
    }
    rest.iter().all(|&x| x == 0)
}

/// Equality of the integer lattices spanned by the rows of `a` and of `b`.
pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    a.iter().all(|v| in_span(b, v)) && b.iter().all(|v| in_span(a, v))
}

pub fn mat_vec_left(u: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| u.iter().zip(m).map(|(a, row)| a * row[c]).sum())
        .collect()
}
