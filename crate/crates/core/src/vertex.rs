//! Brute-force vertex enumeration for small bounded LPs, used as an
//! optimality oracle independent of the simplex code.

/// `maximize c·x` over `{x ≥ 0, eq·x = eq_rhs, le·x ≤ le_rhs}` by trying every
/// choice of active constraints. Returns `None` when no vertex is feasible.
/// The feasible set must be bounded for the maximum over vertices to be the optimum.
pub fn best_vertex(
    c: &[f64],
    eq: &[Vec<f64>],
    eq_rhs: &[f64],
    le: &[Vec<f64>],
    le_rhs: &[f64],
    tol: f64,
) -> Option<(f64, Vec<f64>)> {
    let n = c.len();
    if eq.len() > n {
        return None;
    }
    // candidate active rows: inequality rows, then bounds x_j = 0
    let mut candidates: Vec<(Vec<f64>, f64)> = le.iter().cloned().zip(le_rhs.iter().copied()).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        candidates.push((e, 0.0));
    }
    let need = n - eq.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut pick: Vec<usize> = (0..need).collect();
    if need > candidates.len() {
        return None;
    }
    loop {
        let mut a: Vec<Vec<f64>> = eq.to_vec();
        let mut b: Vec<f64> = eq_rhs.to_vec();
        for &k in &pick {
            a.push(candidates[k].0.clone());
            b.push(candidates[k].1);
        }
        if let Some(x) = solve_square(a, b) {
            let feasible = x.iter().all(|&v| v >= -tol)
                && eq.iter().zip(eq_rhs).all(|(r, &rhs)| (dot(r, &x) - rhs).abs() <= tol)
                && le.iter().zip(le_rhs).all(|(r, &rhs)| dot(r, &x) <= rhs + tol);
            if feasible {
                let v = dot(c, &x);
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, x));
                }
            }
        }
        if !next_combination(&mut pick, candidates.len()) {
            break;
        }
    }
    best
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Gaussian elimination with partial pivoting; `None` when (numerically) singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let k = a[r][col] / a[col][col];
            if k != 0.0 {
                for c in col..n {
                    a[r][c] -= k * a[col][c];
                }
                b[r] -= k * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}
