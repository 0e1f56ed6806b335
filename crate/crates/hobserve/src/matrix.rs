//! Dense quaternion matrices under the right-module convention: matrices act
//! from the left, scalars multiply on the right. Solving and rank use
//! determinant-free Gaussian elimination with left-division by pivots;
//! right spectra go through the complex-adjoint embedding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eig::{self, CMatrix};
use crate::error::{Error, Result};
use crate::quat::{sort_classes, Quat, SimilarityClass};
use crate::tol::Tol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Quat>>", into = "Vec<Vec<Quat>>")]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Quat::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quat::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quat>>) -> Result<QMatrix> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows must be nonempty and equal length".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn column(entries: Vec<Quat>) -> QMatrix {
        let rows = entries.len();
        QMatrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn row_vector(entries: Vec<Quat>) -> QMatrix {
        let cols = entries.len();
        QMatrix {
            rows: 1,
            cols,
            data: entries,
        }
    }

    /// n-th canonical basis column of dimension `dim` (1 in position `idx`).
    pub fn basis_column(dim: usize, idx: usize) -> QMatrix {
        let mut v = QMatrix::zeros(dim, 1);
        v.set(idx, 0, Quat::ONE);
        v
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Quat {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Quat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Quat] {
        &self.data
    }

    /// Conjugate transpose. Satisfies the mixed rule (A B)* = B* A*.
    pub fn adjoint(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Entrywise right scalar multiplication A * q.
    pub fn scale_right(&self, q: Quat) -> QMatrix {
        let mut out = self.clone();
        for e in &mut out.data {
            *e = *e * q;
        }
        out
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        let mut out = self.clone();
        for e in &mut out.data {
            *e = e.scale(s);
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    pub fn approx_eq(&self, other: &QMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(*b, tol))
    }

    /// Max componentwise absolute deviation.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let d = *a - *b;
                d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
            })
            .fold(0.0, f64::max)
    }

    pub fn column_slice(&self, j: usize) -> Vec<Quat> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Assemble a square matrix from columns.
    pub fn from_columns(cols: &[QMatrix]) -> Result<QMatrix> {
        let rows = cols[0].rows;
        if cols.iter().any(|c| c.cols != 1 || c.rows != rows) {
            return Err(Error::Dimension("from_columns expects equal-height column vectors".into()));
        }
        let mut out = QMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                out.set(i, j, c.get(i, 0));
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Quat::ZERO;
                for k in 0..self.cols {
                    // Order matters: A's entry on the left of B's entry.
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn powi(&self, k: usize) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("powi needs a square matrix".into()));
        }
        let mut out = QMatrix::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    fn scale_factor(&self) -> f64 {
        self.frobenius_norm().max(1.0)
    }

    /// Solve A X = B by Gaussian elimination. Pivots are chosen by maximal
    /// quaternion norm in the column and eliminated by left-division
    /// (pivot inverse applied on the left), which respects right-linearity.
    pub fn solve(&self, b: &QMatrix) -> Result<QMatrix> {
        self.solve_tol(b, &Tol::default())
    }

    pub fn solve_tol(&self, b: &QMatrix, tol: &Tol) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("solve needs a square A".into()));
        }
        if self.rows != b.rows {
            return Err(Error::Dimension("solve: row counts of A and B differ".into()));
        }
        let n = self.rows;
        let threshold = tol.pivot * self.scale_factor();
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let mut best = col;
            for r in col + 1..n {
                if a.get(r, col).norm() > a.get(best, col).norm() {
                    best = r;
                }
            }
            let pivot = a.get(best, col);
            if pivot.norm() < threshold {
                return Err(Error::Singular {
                    pivot: pivot.norm(),
                    threshold,
                });
            }
            if best != col {
                for j in 0..n {
                    let tmp = a.get(col, j);
                    a.set(col, j, a.get(best, j));
                    a.set(best, j, tmp);
                }
                for j in 0..x.cols {
                    let tmp = x.get(col, j);
                    x.set(col, j, x.get(best, j));
                    x.set(best, j, tmp);
                }
            }
            let pinv = pivot.inv()?;
            for j in 0..n {
                a.set(col, j, pinv * a.get(col, j));
            }
            for j in 0..x.cols {
                x.set(col, j, pinv * x.get(col, j));
            }
            for r in col + 1..n {
                let f = a.get(r, col);
                if f == Quat::ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j) - f * a.get(col, j);
                    a.set(r, j, v);
                }
                for j in 0..x.cols {
                    let v = x.get(r, j) - f * x.get(col, j);
                    x.set(r, j, v);
                }
            }
        }
        // Back substitution; the reduced A is unit upper triangular.
        for col in (0..n).rev() {
            for r in 0..col {
                let f = a.get(r, col);
                if f == Quat::ZERO {
                    continue;
                }
                for j in 0..x.cols {
                    let v = x.get(r, j) - f * x.get(col, j);
                    x.set(r, j, v);
                }
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        self.solve(&QMatrix::identity(self.rows))
    }

    /// Quaternionic rank: number of pivots surviving elimination.
    pub fn rank(&self) -> usize {
        self.rank_tol(&Tol::default())
    }

    pub fn rank_tol(&self, tol: &Tol) -> usize {
        let threshold = tol.rank * self.scale_factor();
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..a.cols {
            if row >= a.rows {
                break;
            }
            let mut best = row;
            for r in row..a.rows {
                if a.get(r, col).norm() > a.get(best, col).norm() {
                    best = r;
                }
            }
            if a.get(best, col).norm() <= threshold {
                continue;
            }
            if best != row {
                for j in 0..a.cols {
                    let tmp = a.get(row, j);
                    a.set(row, j, a.get(best, j));
                    a.set(best, j, tmp);
                }
            }
            let pinv = a.get(row, col).inv().expect("pivot above threshold");
            for j in 0..a.cols {
                a.set(row, j, pinv * a.get(row, j));
            }
            for r in row + 1..a.rows {
                let f = a.get(r, col);
                for j in col..a.cols {
                    let v = a.get(r, j) - f * a.get(row, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Complex-adjoint embedding. Writing A = A1 + A2 j with complex blocks,
    /// returns the 2n x 2n matrix [[A1, A2], [-conj(A2), conj(A1)]].
    pub fn complex_adjoint(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("complex_adjoint needs a square matrix".into()));
        }
        let n = self.rows;
        let mut out = CMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let (a1, a2) = self.get(i, j).complex_parts();
                out.set(i, j, a1);
                out.set(i, j + n, a2);
                out.set(i + n, j, -a2.conj());
                out.set(i + n, j + n, a1.conj());
            }
        }
        Ok(out)
    }

    /// Right spectrum as a multiset of similarity classes, one per conjugate
    /// pair of the complex-adjoint spectrum.
    pub fn right_spectrum(&self) -> Result<RightSpectrum> {
        self.right_spectrum_tol(&Tol::default())
    }

    pub fn right_spectrum_tol(&self, tol: &Tol) -> Result<RightSpectrum> {
        let adj = self.complex_adjoint()?;
        let n = self.rows;
        let eigs = eig::eigenvalues(&adj, 100 * (2 * n).max(1))?;
        Ok(RightSpectrum::from_adjoint_eigenvalues(&eigs, tol.pair))
    }

    /// Stable iff every right-eigenvalue class has negative real part.
    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.right_spectrum()?.classes.iter().all(|c| c.re < 0.0))
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += *b;
        }
        out
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= *b;
        }
        out
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " , ")?;
                }
                write!(f, "{:.4}", self.get(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

// JSON wire format: nested row-major arrays of quaternion 4-arrays.
impl TryFrom<Vec<Vec<Quat>>> for QMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Quat>>) -> Result<QMatrix> {
        QMatrix::from_rows(rows)
    }
}

impl From<QMatrix> for Vec<Vec<Quat>> {
    fn from(m: QMatrix) -> Vec<Vec<Quat>> {
        (0..m.rows)
            .map(|i| (0..m.cols).map(|j| m.get(i, j)).collect())
            .collect()
    }
}

/// Multiset of similarity classes, sorted lexicographically by (re, im_norm).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RightSpectrum {
    pub classes: Vec<SimilarityClass>,
}

impl RightSpectrum {
    pub fn new(mut classes: Vec<SimilarityClass>) -> RightSpectrum {
        sort_classes(&mut classes);
        RightSpectrum { classes }
    }

    /// Collapse the 2n eigenvalues of the complex adjoint (closed under
    /// conjugation) into n classes: map each to (re, |im|), sort, and merge
    /// adjacent pairs.
    pub fn from_adjoint_eigenvalues(eigs: &[Complex64], pair_tol: f64) -> RightSpectrum {
        let mut reps: Vec<SimilarityClass> = eigs
            .iter()
            .map(|l| SimilarityClass::new(l.re, l.im.abs()))
            .collect();
        sort_classes(&mut reps);
        let mut classes = Vec::with_capacity(reps.len() / 2);
        let mut i = 0;
        while i + 1 < reps.len() {
            let a = reps[i];
            let b = reps[i + 1];
            debug_assert!(a.approx_eq(b, pair_tol.max(1e-5)), "unpaired adjoint eigenvalue");
            classes.push(SimilarityClass::new(
                0.5 * (a.re + b.re),
                0.5 * (a.im_norm + b.im_norm),
            ));
            i += 2;
        }
        RightSpectrum { classes }
    }

    /// Multiset comparison after sorting, absolute tolerance per coordinate.
    pub fn matches(&self, other: &RightSpectrum, tol: f64) -> bool {
        self.classes.len() == other.classes.len()
            && self
                .classes
                .iter()
                .zip(&other.classes)
                .all(|(a, b)| a.approx_eq(*b, tol))
    }

    /// Largest per-coordinate deviation between sorted class multisets.
    pub fn max_deviation(&self, other: &RightSpectrum) -> f64 {
        if self.classes.len() != other.classes.len() {
            return f64::INFINITY;
        }
        self.classes
            .iter()
            .zip(&other.classes)
            .map(|(a, b)| (a.re - b.re).abs().max((a.im_norm - b.im_norm).abs()))
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for RightSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn q(w: f64, x: f64, y: f64, z: f64) -> Quat {
        Quat::new(w, x, y, z)
    }

    fn bench_a() -> QMatrix {
        QMatrix::from_rows(vec![
            vec![q(-0.5, 0.0, 0.25, 0.0), q(0.0, 0.25, 0.0, 0.0)],
            vec![q(0.0, 0.25, 0.0, 0.0), q(-0.5, 0.0, -0.25, 0.0)],
        ])
        .unwrap()
    }

    fn bench_c() -> QMatrix {
        QMatrix::row_vector(vec![Quat::J, Quat::K])
    }

    fn bench_obs() -> QMatrix {
        let a = bench_a();
        let c = bench_c();
        let ca = &c * &a;
        QMatrix::from_rows(vec![
            (0..2).map(|j| c.get(0, j)).collect(),
            (0..2).map(|j| ca.get(0, j)).collect(),
        ])
        .unwrap()
    }

    #[test]
    fn identity_product() {
        let a = bench_a();
        let i = QMatrix::identity(2);
        assert!((&i * &a).approx_eq(&a, 0.0));
    }

    #[test]
    fn mixed_adjoint_rule() {
        let a = bench_a();
        let b = QMatrix::from_rows(vec![
            vec![q(1.0, 2.0, 0.0, -1.0), q(0.0, 0.0, 3.0, 0.0)],
            vec![q(0.5, 0.0, 0.0, 0.0), q(-1.0, 1.0, 1.0, 1.0)],
        ])
        .unwrap();
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn solve_identity_and_benchmark_inverse() {
        let o = bench_obs();
        // Paper: O^-1 = 1/2 [[-1-3j, -4j], [i+k, 4k]]
        let expect = QMatrix::from_rows(vec![
            vec![q(-0.5, 0.0, -1.5, 0.0), q(0.0, 0.0, -2.0, 0.0)],
            vec![q(0.0, 0.5, 0.0, 0.5), q(0.0, 0.0, 0.0, 2.0)],
        ])
        .unwrap();
        let oinv = o.inverse().unwrap();
        assert!(oinv.approx_eq(&expect, 1e-12), "{oinv}");
        // O * s = e_n
        let s = oinv.matmul(&QMatrix::basis_column(2, 1)).unwrap();
        let e2 = o.matmul(&s).unwrap();
        assert!(e2.approx_eq(&QMatrix::basis_column(2, 1), 1e-12));
    }

    #[test]
    fn solve_residual_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8usize {
            let a = QMatrix::from_rows(
                (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                q(
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                )
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let x = a.solve(&QMatrix::identity(n)).unwrap();
            let residual = (&a.matmul(&x).unwrap() - &QMatrix::identity(n)).frobenius_norm();
            assert!(
                residual <= 1e-9 * (1.0 + a.frobenius_norm() * x.frobenius_norm()),
                "n={n} residual {residual}"
            );
        }
    }

    #[test]
    fn rank_cases() {
        assert_eq!(QMatrix::identity(3).rank(), 3);
        // [v, v*q] has rank 1 (right dependence).
        let v = vec![Quat::I, Quat::J];
        let scaled: Vec<Quat> = v.iter().map(|e| *e * q(1.0, -2.0, 0.5, 0.0)).collect();
        let m = QMatrix::from_rows(vec![
            vec![v[0], scaled[0]],
            vec![v[1], scaled[1]],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(bench_obs().rank(), 2);
    }

    #[test]
    fn complex_adjoint_structure() {
        // A real => adjoint = diag(A, A)
        let a = QMatrix::from_rows(vec![
            vec![Quat::real(1.0), Quat::real(2.0)],
            vec![Quat::real(3.0), Quat::real(4.0)],
        ])
        .unwrap();
        let adj = a.complex_adjoint().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(adj.get(i, j), Complex64::new(a.get(i, j).w, 0.0));
                assert_eq!(adj.get(i + 2, j + 2), Complex64::new(a.get(i, j).w, 0.0));
                assert_eq!(adj.get(i, j + 2).norm(), 0.0);
                assert_eq!(adj.get(i + 2, j).norm(), 0.0);
            }
        }
        // A = [j] => [[0, 1], [-1, 0]]
        let a = QMatrix::from_rows(vec![vec![Quat::J]]).unwrap();
        let adj = a.complex_adjoint().unwrap();
        assert_eq!(adj.get(0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(adj.get(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(adj.get(1, 0), Complex64::new(-1.0, 0.0));
        assert_eq!(adj.get(1, 1), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn spectrum_and_stability() {
        let d = QMatrix::from_rows(vec![
            vec![Quat::real(-1.0), Quat::ZERO],
            vec![Quat::ZERO, Quat::real(-2.0)],
        ])
        .unwrap();
        let spec = d.right_spectrum().unwrap();
        assert!(spec.matches(
            &RightSpectrum::new(vec![
                SimilarityClass::new(-1.0, 0.0),
                SimilarityClass::new(-2.0, 0.0)
            ]),
            1e-10
        ));
        assert!(d.is_stable().unwrap());
        assert!(bench_a().is_stable().unwrap());
        let u = QMatrix::from_rows(vec![vec![Quat::real(1.0)]]).unwrap();
        assert!(!u.is_stable().unwrap());
    }

    #[test]
    fn spectrum_similarity_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(2..=4);
            let rnd = |rng: &mut rand_chacha::ChaCha8Rng| {
                q(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
            };
            let a = QMatrix::from_rows(
                (0..n).map(|_| (0..n).map(|_| rnd(&mut rng)).collect()).collect(),
            )
            .unwrap();
            let s = loop {
                let s = QMatrix::from_rows(
                    (0..n).map(|_| (0..n).map(|_| rnd(&mut rng)).collect()).collect(),
                )
                .unwrap();
                if s.rank() == n {
                    break s;
                }
            };
            let sim = s.inverse().unwrap().matmul(&a).unwrap().matmul(&s).unwrap();
            let spec_a = a.right_spectrum().unwrap();
            let spec_s = sim.right_spectrum().unwrap();
            assert!(
                spec_a.matches(&spec_s, 1e-6),
                "spectra differ: {spec_a} vs {spec_s}"
            );
        }
    }

    #[test]
    fn adjoint_spectrum_conjugate_closed() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let n = 3;
        let a = QMatrix::from_rows(
            (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            q(
                                rng.gen_range(-1.0..1.0),
                                rng.gen_range(-1.0..1.0),
                                rng.gen_range(-1.0..1.0),
                                rng.gen_range(-1.0..1.0),
                            )
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let eigs = crate::eig::eigenvalues(&a.complex_adjoint().unwrap(), 1000).unwrap();
        for l in &eigs {
            let has_conj = eigs.iter().any(|m| (m.conj() - l).norm() < 1e-8);
            assert!(has_conj, "eigenvalue {l} lacks a conjugate partner");
        }
    }

    #[test]
    fn rank_matches_complex_adjoint_rank() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let n = rng.gen_range(2..=4);
            let a = QMatrix::from_rows(
                (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                q(
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                    rng.gen_range(-1.0..1.0),
                                )
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let adj_rank = a.complex_adjoint().unwrap().rank(1e-10);
            assert_eq!(a.rank(), adj_rank / 2);
        }
    }
}
