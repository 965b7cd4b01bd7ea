//! Smith normal form of small integer matrices.
//!
//! Entries are `i64` but every intermediate value is kept below `2^31` in
//! magnitude; anything larger is reported as [`Error::Overflow`].

use crate::error::{Error, Result};

const ENTRY_LIMIT: i64 = 1 << 31;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self[(i, k)] as i128 * other[(k, j)] as i128;
                }
                out[(i, j)] = checked(acc)?;
            }
        }
        Ok(out)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

fn checked(v: i128) -> Result<i64> {
    if v.abs() >= ENTRY_LIMIT as i128 {
        Err(Error::Overflow)
    } else {
        Ok(v as i64)
    }
}

/// `P * A * Q = D` with `P`, `Q` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    /// Diagonal of `D`, length `min(rows, cols)`; nonnegative.
    pub diagonal: Vec<i64>,
    pub rank: usize,
}

struct Reducer {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
}

impl Reducer {
    // row_i += k * row_t
    fn add_row(&mut self, i: usize, t: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for m in [&mut self.a, &mut self.p] {
            for c in 0..m.cols {
                m[(i, c)] = checked(m[(i, c)] as i128 + k as i128 * m[(t, c)] as i128)?;
            }
        }
        // inverse update on the right: col_t -= k * col_i
        let pi = &mut self.p_inv;
        for r in 0..pi.rows {
            pi[(r, t)] = checked(pi[(r, t)] as i128 - k as i128 * pi[(r, i)] as i128)?;
        }
        Ok(())
    }

    // col_j += k * col_t
    fn add_col(&mut self, j: usize, t: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for m in [&mut self.a, &mut self.q] {
            for r in 0..m.rows {
                m[(r, j)] = checked(m[(r, j)] as i128 + k as i128 * m[(r, t)] as i128)?;
            }
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        for m in [&mut self.a, &mut self.p] {
            for c in 0..m.cols {
                m.data.swap(i * m.cols + c, t * m.cols + c);
            }
        }
        let pi = &mut self.p_inv;
        for r in 0..pi.rows {
            pi.data.swap(r * pi.cols + i, r * pi.cols + t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for m in [&mut self.a, &mut self.q] {
            for r in 0..m.rows {
                m.data.swap(r * m.cols + j, r * m.cols + t);
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for m in [&mut self.a, &mut self.p] {
            for c in 0..m.cols {
                m[(t, c)] = -m[(t, c)];
            }
        }
        let pi = &mut self.p_inv;
        for r in 0..pi.rows {
            pi[(r, t)] = -pi[(r, t)];
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = self.a[(i, j)].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce_at(&mut self, t: usize) -> Result<bool> {
        let Some((i, j)) = self.smallest_nonzero(t) else {
            return Ok(false);
        };
        self.swap_rows(t, i);
        self.swap_cols(t, j);
        loop {
            let pivot = self.a[(t, t)];
            let mut dirty = false;
            for i in t + 1..self.a.rows {
                let q = self.a[(i, t)].div_euclid(pivot);
                self.add_row(i, t, -q)?;
                dirty |= self.a[(i, t)] != 0;
            }
            for j in t + 1..self.a.cols {
                let q = self.a[(t, j)].div_euclid(pivot);
                self.add_col(j, t, -q)?;
                dirty |= self.a[(t, j)] != 0;
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let offender =
                    (t + 1..self.a.rows).find(|&i| (t + 1..self.a.cols).any(|j| self.a[(i, j)] % pivot != 0));
                match offender {
                    None => break,
                    Some(i) => self.add_row(t, i, 1)?,
                }
            }
            // bring the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..self.a.rows {
                let v = self.a[(i, t)].abs();
                if v != 0 && v < self.a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..self.a.cols {
                let v = self.a[(t, j)].abs();
                if v != 0 && v < self.a[best].abs() {
                    best = (t, j);
                }
            }
            self.swap_rows(t, best.0);
            self.swap_cols(t, best.1);
        }
        if self.a[(t, t)] < 0 {
            self.negate_row(t);
        }
        Ok(true)
    }
}

/// Computes the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithForm> {
    if a.data.iter().any(|v| v.abs() >= ENTRY_LIMIT) {
        return Err(Error::Overflow);
    }
    let mut r = Reducer {
        a: a.clone(),
        p: IntMatrix::identity(a.rows),
        p_inv: IntMatrix::identity(a.rows),
        q: IntMatrix::identity(a.cols),
    };
    let n = a.rows.min(a.cols);
    let mut rank = 0;
    while rank < n && r.reduce_at(rank)? {
        rank += 1;
    }
    let diagonal = (0..n).map(|i| r.a[(i, i)]).collect();
    Ok(SmithForm { p: r.p, p_inv: r.p_inv, q: r.q, diagonal, rank })
}

/// A basis of the integer kernel `{v : A v = 0}`, as columns.
pub fn integer_kernel(a: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(a)?;
    let mut k = IntMatrix::zeros(a.cols, a.cols - snf.rank);
    for (c, j) in (snf.rank..a.cols).enumerate() {
        for i in 0..a.cols {
            k[(i, c)] = snf.q[(i, j)];
        }
    }
    Ok(k)
}
