//! Dense complex eigensolver: Householder reduction to upper Hessenberg form
//! followed by explicitly shifted QR iteration with the Wilkinson shift.
//!
//! Only eigenvalues are computed. Matrices here are small (the complex
//! adjoint of an n x n quaternion matrix is 2n x 2n), so the explicit
//! shifted QR step with Givens rotations is adequate.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Square complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> CMatrix {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rank over C by Gaussian elimination with partial pivoting.
    pub fn rank(&self, tol: f64) -> usize {
        let n = self.n;
        let mut a = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let mut best = row;
            for r in row..n {
                if a.get(r, col).norm() > a.get(best, col).norm() {
                    best = r;
                }
            }
            if row >= n || a.get(best, col).norm() <= tol {
                continue;
            }
            for j in 0..n {
                let tmp = a.get(row, j);
                a.set(row, j, a.get(best, j));
                a.set(best, j, tmp);
            }
            let piv = a.get(row, col);
            for r in row + 1..n {
                let f = a.get(r, col) / piv;
                for j in col..n {
                    let v = a.get(r, j) - f * a.get(row, j);
                    a.set(r, j, v);
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }
}

/// Reduce to upper Hessenberg form in place via Householder reflections.
fn hessenberg(a: &mut CMatrix) {
    let n = a.n;
    for col in 0..n.saturating_sub(2) {
        // Householder vector for column entries below the subdiagonal.
        let mut xnorm = 0.0;
        for i in col + 1..n {
            xnorm += a.get(i, col).norm_sqr();
        }
        let xnorm = xnorm.sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a.get(col + 1, col);
        let alpha = if x0.norm() == 0.0 {
            Complex64::new(-xnorm, 0.0)
        } else {
            -(x0 / x0.norm()) * xnorm
        };
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[col + 1] = x0 - alpha;
        for i in col + 2..n {
            v[i] = a.get(i, col);
        }
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sq;
        // A <- (I - beta v v*) A
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for i in col + 1..n {
                s += v[i].conj() * a.get(i, j);
            }
            s *= beta;
            for i in col + 1..n {
                let val = a.get(i, j) - v[i] * s;
                a.set(i, j, val);
            }
        }
        // A <- A (I - beta v v*)
        for i in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for j in col + 1..n {
                s += a.get(i, j) * v[j];
            }
            s *= beta;
            for j in col + 1..n {
                let val = a.get(i, j) - s * v[j].conj();
                a.set(i, j, val);
            }
        }
        // Clean out the annihilated entries.
        a.set(col + 1, col, alpha);
        for i in col + 2..n {
            a.set(i, col, Complex64::new(0.0, 0.0));
        }
    }
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - det.scale(4.0)).sqrt();
    let l1 = (tr + disc).scale(0.5);
    let l2 = (tr - disc).scale(0.5);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of a general complex matrix. `max_sweeps` bounds the total
/// number of QR sweeps; the caller sizes it as 100 * n.
pub fn eigenvalues(a: &CMatrix, max_sweeps: usize) -> Result<Vec<Complex64>> {
    let n = a.n;
    if n == 0 {
        return Ok(vec![]);
    }
    let mut h = a.clone();
    hessenberg(&mut h);
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n; // active block is rows/cols 0..hi
    let mut sweeps = 0;
    let mut stall = 0; // sweeps since the block last shrank
    let scale = h.frobenius_norm().max(1.0);

    while hi > 0 {
        if hi == 1 {
            eigs.push(h.get(0, 0));
            hi = 0;
            continue;
        }
        // Deflate negligible subdiagonal entries.
        let mut deflated = false;
        for i in (1..hi).rev() {
            let sub = h.get(i, i - 1).norm();
            let local = h.get(i - 1, i - 1).norm() + h.get(i, i).norm();
            if sub <= f64::EPSILON * local.max(scale * f64::EPSILON) {
                h.set(i, i - 1, Complex64::new(0.0, 0.0));
                if i == hi - 1 {
                    eigs.push(h.get(hi - 1, hi - 1));
                    hi -= 1;
                    stall = 0;
                    deflated = true;
                    break;
                }
            }
        }
        if deflated {
            continue;
        }
        // Find the start of the active unreduced block.
        let mut lo = 0;
        for i in (1..hi).rev() {
            if h.get(i, i - 1).norm() == 0.0 {
                lo = i;
                break;
            }
        }
        if sweeps >= max_sweeps {
            return Err(Error::NonConvergence(max_sweeps));
        }
        sweeps += 1;
        stall += 1;

        // An exceptional shift breaks the cycles the Wilkinson shift can
        // fall into on matrices with symmetric eigenvalue pairings.
        let shift = if stall % 12 == 0 {
            let mag = h.get(hi - 1, hi - 2).norm()
                + if hi >= 3 { h.get(hi - 2, hi - 3).norm() } else { 0.0 };
            h.get(hi - 1, hi - 1) + Complex64::new(0.75 * mag, 0.0625 * mag)
        } else {
            wilkinson_shift(
                h.get(hi - 2, hi - 2),
                h.get(hi - 2, hi - 1),
                h.get(hi - 1, hi - 2),
                h.get(hi - 1, hi - 1),
            )
        };

        // Explicit shifted QR on the active block via Givens rotations:
        // H - shift I = Q R, then H <- R Q + shift I.
        for i in lo..hi {
            let v = h.get(i, i) - shift;
            h.set(i, i, v);
        }
        let mut rot = Vec::with_capacity(hi - lo - 1);
        for i in lo..hi - 1 {
            let a0 = h.get(i, i);
            let b0 = h.get(i + 1, i);
            let r = (a0.norm_sqr() + b0.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (a0 / r, b0 / r)
            };
            // Apply G* from the left to rows i, i+1.
            for j in i..hi {
                let x = h.get(i, j);
                let y = h.get(i + 1, j);
                h.set(i, j, c.conj() * x + s.conj() * y);
                h.set(i + 1, j, -s * x + c * y);
            }
            rot.push((c, s));
        }
        for (idx, (c, s)) in rot.iter().enumerate() {
            let i = lo + idx;
            // Apply G from the right to columns i, i+1.
            for rrow in lo..(i + 2).min(hi) {
                let x = h.get(rrow, i);
                let y = h.get(rrow, i + 1);
                h.set(rrow, i, x * *c + y * *s);
                h.set(rrow, i + 1, -x * s.conj() + y * c.conj());
            }
        }
        for i in lo..hi {
            let v = h.get(i, i) + shift;
            h.set(i, i, v);
        }
    }
    Ok(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(n: usize, entries: &[(f64, f64)]) -> CMatrix {
        CMatrix {
            n,
            data: entries.iter().map(|&(r, i)| Complex64::new(r, i)).collect(),
        }
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal() {
        let a = cm(2, &[(3.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-1.0, 2.0)]);
        let e = sorted(eigenvalues(&a, 200).unwrap());
        assert!((e[0] - Complex64::new(-1.0, 2.0)).norm() < 1e-12);
        assert!((e[1] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_block() {
        // [[0, 1], [-1, 0]] has eigenvalues +-i.
        let a = cm(2, &[(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)]);
        let e = sorted(eigenvalues(&a, 200).unwrap());
        assert!((e[0] - Complex64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((e[1] - Complex64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn companion_of_cubic() {
        // Companion of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6.
        let a = cm(
            3,
            &[
                (0.0, 0.0),
                (0.0, 0.0),
                (6.0, 0.0),
                (1.0, 0.0),
                (0.0, 0.0),
                (-11.0, 0.0),
                (0.0, 0.0),
                (1.0, 0.0),
                (6.0, 0.0),
            ],
        );
        let e = sorted(eigenvalues(&a, 300).unwrap());
        for (got, want) in e.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - Complex64::new(want, 0.0)).norm() < 1e-8, "{got}");
        }
    }

    #[test]
    fn random_trace_determinant_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..=8 {
            let data: Vec<Complex64> = (0..n * n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let a = CMatrix { n, data };
            let e = eigenvalues(&a, 100 * n).unwrap();
            assert_eq!(e.len(), n);
            let trace: Complex64 = (0..n).map(|i| a.get(i, i)).sum();
            let esum: Complex64 = e.iter().sum();
            assert!(
                (trace - esum).norm() < 1e-8 * (1.0 + trace.norm()),
                "n={n} trace {trace} vs {esum}"
            );
        }
    }
}
