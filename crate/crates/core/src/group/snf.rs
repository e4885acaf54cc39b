//! Smith normal form over the integers with exact big-integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += a * &other.data[k][j];
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `d_1 | d_2 | ...`, all non-negative, length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    /// Unimodular, `rows × rows`.
    pub u: IntMatrix,
    /// Unimodular, `cols × cols`.
    pub v: IntMatrix,
}

/// `U · M · V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (diagonal, u, v) = reduce(m, true);
    SmithForm {
        diagonal,
        u: u.expect("tracked"),
        v: v.expect("tracked"),
    }
}

/// Diagonal only, skipping the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    reduce(m, false).0
}

fn reduce(m: &IntMatrix, track: bool) -> (Vec<BigInt>, Option<IntMatrix>, Option<IntMatrix>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut u = track.then(|| IntMatrix::identity(rows));
    let mut v = track.then(|| IntMatrix::identity(cols));
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        // smallest non-zero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                    if a[i][j].abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| a[bi][bj].abs().is_one()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        if let Some(u) = u.as_mut() {
            u.data.swap(t, pi);
        }
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            if let Some(v) = v.as_mut() {
                for row in v.data.iter_mut() {
                    row.swap(t, pj);
                }
            }
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            row_sub(&mut a, i, t, &q, t);
            if let Some(u) = u.as_mut() {
                row_sub(&mut u.data, i, t, &q, 0);
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            col_sub(&mut a, j, t, &q, t);
            if let Some(v) = v.as_mut() {
                col_sub(&mut v.data, j, t, &q, 0);
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).find_map(|i| {
            (t + 1..cols)
                .find(|&j| !(&a[i][j] % &a[t][t]).is_zero())
                .map(|_| i)
        });
        if let Some(i) = bad {
            let one = BigInt::from(-1);
            row_sub(&mut a, t, i, &one, t);
            if let Some(u) = u.as_mut() {
                row_sub(&mut u.data, t, i, &one, 0);
            }
            continue;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            if let Some(u) = u.as_mut() {
                for x in u.data[t].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        t += 1;
    }
    let diagonal = (0..steps).map(|i| a[i][i].clone()).collect();
    (diagonal, u, v)
}

/// `row[i] -= q · row[k]` from column `from` on.
fn row_sub(a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt, from: usize) {
    let (src, dst) = if i < k {
        let (lo, hi) = a.split_at_mut(k);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[k], &mut hi[0])
    };
    for j in from..src.len() {
        if !src[j].is_zero() {
            dst[j] -= q * &src[j];
        }
    }
}

/// `col[j] -= q · col[k]`.
fn col_sub(a: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt, from: usize) {
    for row in a.iter_mut().skip(from) {
        if !row[k].is_zero() {
            let d = q * &row[k];
            row[j] -= d;
        }
    }
}
