//! Classical multidimensional scaling, used to emit 2-D plot data for a
//! distance matrix.

use nalgebra::{DMatrix, SymmetricEigen};

/// Coordinates in `dim` dimensions whose Euclidean distances approximate
/// `d`. Axes with non-positive eigenvalues collapse to zero. Each axis is
/// signed so that its largest-magnitude coordinate is positive, which
/// makes the output independent of the eigensolver's sign choice.
pub fn classical_mds(d: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Vec::new();
    }
    let sq = DMatrix::from_fn(n, n, |i, j| d[i][j] * d[i][j]);
    let row_mean: Vec<f64> = (0..n).map(|i| sq.row(i).sum() / n as f64).collect();
    let total = row_mean.iter().sum::<f64>() / n as f64;
    let b = DMatrix::from_fn(n, n, |i, j| -0.5 * (sq[(i, j)] - row_mean[i] - row_mean[j] + total));
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut out = vec![vec![0.0; dim]; n];
    for (axis, &k) in order.iter().take(dim).enumerate() {
        let lambda = eig.eigenvalues[k];
        if lambda <= 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        let pivot = (0..n).fold(0, |p, i| if v[i].abs() > v[p].abs() { i } else { p });
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        let s = lambda.sqrt() * sign;
        for i in 0..n {
            out[i][axis] = v[i] * s;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_planar_configuration() {
        let pts: [[f64; 2]; 4] = [[0.0, 0.0], [0.3, 0.0], [0.0, 0.4], [0.3, 0.4]];
        let d: Vec<Vec<f64>> = pts
            .iter()
            .map(|p| pts.iter().map(|q| ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()).collect())
            .collect();
        let x = classical_mds(&d, 2);
        for i in 0..4 {
            for j in 0..4 {
                let e = ((x[i][0] - x[j][0]).powi(2) + (x[i][1] - x[j][1]).powi(2)).sqrt();
                assert!((e - d[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(classical_mds(&[], 2).is_empty());
        assert_eq!(classical_mds(&[vec![0.0]], 2), vec![vec![0.0, 0.0]]);
    }
}
