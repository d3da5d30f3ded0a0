//! Small dense complex matrices.
//!
//! Representation dimensions in this crate stay at desk scale (a few hundred
//! at most), so a plain row-major `Vec<Complex64>` is all we need.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// `exp(2πi k / order)`, computed from the angle directly so repeated powers
/// of the same root stay phase-coherent.
pub fn root_of_unity(order: u64, k: i64) -> Complex64 {
    debug_assert!(order > 0);
    let m = k.rem_euclid(order as i64) as f64;
    Complex64::from_polar(1.0, TAU * m / order as f64)
}

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// The order-n discrete Fourier matrix `F[b, j] = ω_n^{bj} / √n`.
    pub fn dft(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        let scale = 1.0 / (n as f64).sqrt();
        for b in 0..n {
            for j in 0..n {
                m[(b, j)] = root_of_unity(n as u64, (b * j) as i64) * scale;
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(A†A - I)_{ij}|`; zero for a unitary matrix.
    pub fn unitarity_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols);
        self.adjoint().mul(self).max_abs_diff(&Mat::identity(self.rows))
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, c: Complex64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out[(i, j)] = self[(r, c)];
            }
        }
        out
    }
}

// JSON form: {"rows": r, "cols": c, "data": [[re, im], …]} with decimal
// floats that parse back bit-exactly.
impl serde::Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Mat", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let data: Vec<[f64; 2]> = self.data.iter().map(|z| [z.re, z.im]).collect();
        st.serialize_field("data", &data)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Mat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            rows: usize,
            cols: usize,
            data: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(de)?;
        if raw.data.len() != raw.rows * raw.cols {
            return Err(serde::de::Error::custom("matrix data length mismatch"));
        }
        Ok(Mat {
            rows: raw.rows,
            cols: raw.cols,
            data: raw.data.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
        })
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_is_unitary() {
        for n in 1..=16 {
            assert!(Mat::dft(n).unitarity_residual() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn roots_of_unity_cycle() {
        let w = root_of_unity(6, 1);
        assert!((w.powu(6) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((root_of_unity(6, 7) - w).norm() < 1e-14);
        assert!((root_of_unity(6, -1) - w.conj()).norm() < 1e-14);
    }

    #[test]
    fn adjoint_product_identity() {
        let f = Mat::dft(5);
        assert!(f.adjoint().mul(&f).max_abs_diff(&Mat::identity(5)) < 1e-13);
    }
}
