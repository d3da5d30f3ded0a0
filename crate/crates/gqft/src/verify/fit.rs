//! Least-squares polynomial fitting for the cost-scaling reports.

/// Coefficients (constant term first) of the degree-`degree` least-squares
/// fit through `(xs, ys)`, via normal equations and Gaussian elimination.
pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = degree + 1;
    let mut ata = vec![vec![0.0f64; n]; n];
    let mut atb = vec![0.0f64; n];
    for (&x, &y) in xs.iter().zip(ys) {
        let mut powers = vec![1.0; n];
        for i in 1..n {
            powers[i] = powers[i - 1] * x;
        }
        for i in 0..n {
            atb[i] += powers[i] * y;
            for j in 0..n {
                ata[i][j] += powers[i] * powers[j];
            }
        }
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| ata[a][col].abs().total_cmp(&ata[b][col].abs()))
            .unwrap();
        ata.swap(col, pivot);
        atb.swap(col, pivot);
        let p = ata[col][col];
        if p.abs() < 1e-12 {
            continue;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = ata[row][col] / p;
            for k in 0..n {
                ata[row][k] -= factor * ata[col][k];
            }
            atb[row] -= factor * atb[col];
        }
    }
    (0..n)
        .map(|i| if ata[i][i].abs() < 1e-12 { 0.0 } else { atb[i] / ata[i][i] })
        .collect()
}

pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Largest relative deviation of the fit from the data.
pub fn max_relative_residual(coeffs: &[f64], xs: &[f64], ys: &[f64]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| ((poly_eval(coeffs, x) - y) / y.max(1.0)).abs())
        .fold(0.0, f64::max)
}
