//! Dense elimination for the dual-pair computations.
//!
//! Everything here works on row lists (`Vec<Vec<f64>>`) at desk scale.
//! Pivots are chosen by partial pivoting and a pivot counts only when its
//! magnitude clears `REL_TOL` times the largest entry of the input matrix.

/// Relative pivot threshold shared by rank, solve, and null-space routines.
pub const REL_TOL: f64 = 1e-9;

fn max_abs(rows: &[Vec<f64>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, &v| m.max(v.abs()))
}

/// Reduced row echelon form in place. Returns the pivot column of each
/// eliminated row, in order.
fn rref(rows: &mut [Vec<f64>], tol: f64) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let (best, best_abs) = (r..nrows)
            .map(|i| (i, rows[i][c].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if best_abs <= tol {
            continue;
        }
        rows.swap(r, best);
        let p = rows[r][c];
        for v in rows[r].iter_mut() {
            *v /= p;
        }
        for i in 0..nrows {
            if i != r {
                let f = rows[i][c];
                if f != 0.0 {
                    for k in 0..ncols {
                        let sub = f * rows[r][k];
                        rows[i][k] -= sub;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by pivot count.
pub fn rank(rows: &[Vec<f64>]) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let tol = REL_TOL * max_abs(&m);
    rref(&mut m, tol).len()
}

/// Solves `sum_i lambda_i rows[i] = target` if the system is consistent,
/// taking free coefficients as 0. `None` means the target leaves the span.
pub fn combination_coefficients(target: &[f64], rows: &[Vec<f64>]) -> Option<Vec<f64>> {
    let d = target.len();
    let n = rows.len();
    // Augmented transpose system: d equations over the n coefficients.
    let mut m: Vec<Vec<f64>> = (0..d)
        .map(|k| {
            let mut row: Vec<f64> = rows.iter().map(|f| f[k]).collect();
            row.push(target[k]);
            row
        })
        .collect();
    let tol = REL_TOL * max_abs(&m);
    let pivots = rref(&mut m, tol);
    if pivots.contains(&n) {
        return None;
    }
    let mut lambda = vec![0.0; n];
    for (row, &col) in pivots.iter().enumerate() {
        lambda[col] = m[row][n];
    }
    Some(lambda)
}

/// Basis of the common kernel of the row functionals: one vector per free
/// column of the reduced system. An empty row list yields the standard
/// basis of R^dim.
pub fn null_space_basis(rows: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let tol = REL_TOL * max_abs(&m);
    let pivots = rref(&mut m, tol);
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; dim];
        v[free] = 1.0;
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -m[row][free];
        }
        basis.push(v);
    }
    basis
}
