//! Quaternionic polynomials with a central indeterminate: left/right
//! evaluation at scalars, left substitution at matrices, construction from
//! prescribed right roots, root classes via the companion matrix, and
//! isolated/spherical zero classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, RightSpectrum};
use crate::quat::Quat;
use crate::tol::Tol;

/// Coefficients in ascending degree: `coeffs[k]` multiplies `lambda^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QPoly {
    pub coeffs: Vec<Quat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroKind {
    Isolated,
    Spherical,
}

impl QPoly {
    pub fn new(coeffs: Vec<Quat>) -> QPoly {
        QPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| Quat::real(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self, tol: f64) -> bool {
        match self.coeffs.last() {
            Some(lead) => lead.approx_eq(Quat::ONE, tol),
            None => false,
        }
    }

    pub fn has_real_coeffs(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_real(tol))
    }

    /// Right value: sum of `p_k * q^k` (coefficients on the left of powers).
    pub fn eval_right(&self, q: Quat) -> Quat {
        let mut acc = Quat::ZERO;
        let mut power = Quat::ONE;
        for c in &self.coeffs {
            acc += *c * power;
            power = power * q;
        }
        acc
    }

    /// Left value: sum of `q^k * p_k`.
    pub fn eval_left(&self, q: Quat) -> Quat {
        let mut acc = Quat::ZERO;
        let mut power = Quat::ONE;
        for c in &self.coeffs {
            acc += power * *c;
            power = power * q;
        }
        acc
    }

    /// Left substitution at a square matrix: sum of `M^k * p_k`, the
    /// coefficient multiplying the matrix power on the right.
    pub fn left_substitute_matrix(&self, m: &QMatrix) -> Result<QMatrix> {
        if !m.is_square() {
            return Err(Error::Dimension("left substitution needs a square matrix".into()));
        }
        let n = m.rows();
        let mut acc = QMatrix::zeros(n, n);
        let mut power = QMatrix::identity(n);
        for c in &self.coeffs {
            acc = &acc + &power.scale_right(*c);
            power = power.matmul(m)?;
        }
        Ok(acc)
    }

    /// Observable companion matrix: unit subdiagonal, last column
    /// `-[p_0, ..., p_{n-1}]`. Requires a monic polynomial.
    pub fn companion_matrix(&self) -> Result<QMatrix> {
        if !self.is_monic(1e-12) {
            return Err(Error::NotMonic);
        }
        let n = self.degree();
        if n == 0 {
            return Err(Error::Dimension("degree must be at least 1".into()));
        }
        let mut m = QMatrix::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, Quat::ONE);
        }
        for i in 0..n {
            m.set(i, n - 1, -self.coeffs[i]);
        }
        Ok(m)
    }

    /// Similarity classes of the right zeros, via the right spectrum of the
    /// observable companion matrix.
    pub fn right_root_classes(&self) -> Result<RightSpectrum> {
        self.right_root_classes_tol(&Tol::default())
    }

    pub fn right_root_classes_tol(&self, tol: &Tol) -> Result<RightSpectrum> {
        self.companion_matrix()?.right_spectrum_tol(tol)
    }

    /// Right eigenvector of the companion matrix for a right zero, by the
    /// backward recurrence v_n = 1, v_{j-1} = a_{j-1} + v_j * lambda.
    pub fn eigenvector_from_right_root(&self, root: Quat) -> Result<QMatrix> {
        let residual = self.eval_right(root).norm();
        if residual > 1e-8 {
            return Err(Error::NotARoot(root, residual));
        }
        let n = self.degree();
        let mut v = vec![Quat::ZERO; n];
        v[n - 1] = Quat::ONE;
        for j in (1..n).rev() {
            v[j - 1] = self.coeffs[j] + v[j] * root;
        }
        Ok(QMatrix::column(v))
    }

    /// Classify a nonreal right zero as isolated or spherical by evaluating
    /// at three representatives of its class (imaginary direction rotated to
    /// i, j, k). Real zeros are always isolated and rejected here.
    pub fn classify_zero(&self, q: Quat, tol: f64) -> Result<ZeroKind> {
        let residual = self.eval_right(q).norm();
        if residual > tol.max(1e-8) {
            return Err(Error::NotARoot(q, residual));
        }
        let im = q.im_norm();
        if im <= tol {
            return Err(Error::UnsupportedRoots(
                "real zeros are trivially isolated; classification applies to nonreal zeros".into(),
            ));
        }
        let reps = [
            Quat::new(q.re(), im, 0.0, 0.0),
            Quat::new(q.re(), 0.0, im, 0.0),
            Quat::new(q.re(), 0.0, 0.0, im),
        ];
        let all_vanish = reps.iter().all(|r| self.eval_right(*r).norm() <= tol);
        Ok(if all_vanish {
            ZeroKind::Spherical
        } else {
            ZeroKind::Isolated
        })
    }

    /// Product with central indeterminate: (p * q)_k = sum p_i q_j, i+j = k.
    /// Coefficient order follows the factors (self's coefficients on the left).
    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = vec![Quat::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        QPoly::new(out)
    }
}

/// Monic polynomial with the requested quaternions among its right zeros.
///
/// Supported root configurations:
/// - any number of real roots, each a linear factor;
/// - exact complex-conjugate pairs `q, conj(q)` (nonreal), each a real
///   quadratic factor `lambda^2 - 2 Re(q) lambda + |q|^2`;
/// - exactly two unpaired nonreal roots in distinct similarity classes,
///   handled by the adjusted-root construction
///   `b = (l2 - l1) l2 (l2 - l1)^-1`,
///   `lambda^2 - (l1 + b) lambda + b l1`.
///
/// The quaternionic quadratic is composed with the remaining real factors by
/// left multiplication of the factor polynomials.
pub fn poly_from_right_roots(roots: &[Quat]) -> Result<QPoly> {
    poly_from_right_roots_tol(roots, 1e-9)
}

pub fn poly_from_right_roots_tol(roots: &[Quat], tol: f64) -> Result<QPoly> {
    if roots.is_empty() {
        return Err(Error::UnsupportedRoots("empty root list".into()));
    }
    let mut real_roots = Vec::new();
    let mut nonreal: Vec<Quat> = Vec::new();
    for &r in roots {
        if r.is_real(tol) {
            real_roots.push(r.re());
        } else {
            nonreal.push(r);
        }
    }
    // Match exact conjugate pairs among the nonreal roots.
    let mut unpaired: Vec<Quat> = Vec::new();
    let mut pair_factors: Vec<QPoly> = Vec::new();
    while let Some(r) = nonreal.pop() {
        if let Some(pos) = nonreal.iter().position(|s| s.approx_eq(r.conj(), tol)) {
            let mate = nonreal.remove(pos);
            let _ = mate;
            pair_factors.push(QPoly::from_real(&[r.norm_sq(), -2.0 * r.re(), 1.0]));
        } else {
            unpaired.push(r);
        }
    }

    let quat_factor = match unpaired.len() {
        0 => None,
        2 => {
            let (l1, l2) = (unpaired[1], unpaired[0]);
            if l1.similarity_class().approx_eq(l2.similarity_class(), tol) {
                return Err(Error::UnsupportedRoots(
                    "two quaternionic roots in the same similarity class".into(),
                ));
            }
            let diff = l2 - l1;
            let b = diff * l2 * diff.inv()?;
            Some(QPoly::new(vec![b * l1, -(l1 + b), Quat::ONE]))
        }
        k => {
            return Err(Error::UnsupportedRoots(format!(
                "{k} unpaired quaternionic roots; supported are conjugate pairs or exactly two roots in distinct classes"
            )))
        }
    };

    let mut acc = QPoly::new(vec![Quat::ONE]);
    for r in &real_roots {
        acc = acc.mul(&QPoly::from_real(&[-r, 1.0]));
    }
    for f in &pair_factors {
        acc = acc.mul(f);
    }
    if let Some(qf) = quat_factor {
        // Real factors are central, so left multiplication keeps the
        // quaternionic roots as right zeros of the product.
        acc = acc.mul(&qf);
    }
    Ok(acc)
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.4})", c)?;
            if k == 1 {
                write!(f, " L")?;
            } else if k > 1 {
                write!(f, " L^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::SimilarityClass;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quat {
        Quat::new(w, x, y, z)
    }

    #[test]
    fn eval_right_basics() {
        let p = QPoly::from_real(&[2.0, 3.0, 1.0]);
        assert!(p.eval_right(Quat::real(-1.0)).norm() < 1e-15);
        assert!(p.eval_right(Quat::real(-2.0)).norm() < 1e-15);
        let p = QPoly::from_real(&[1.0, 0.0, 1.0]);
        assert!(p.eval_right(Quat::J).norm() < 1e-15);
    }

    #[test]
    fn eval_left_vs_right() {
        // Real coefficients: left and right values agree.
        let p = QPoly::from_real(&[1.0, -2.0, 0.5, 1.0]);
        let at = q(0.3, -0.7, 1.1, 0.2);
        assert_eq!(p.eval_left(at), p.eval_right(at));
        // p = lambda - i at j
        let p = QPoly::new(vec![-Quat::I, Quat::ONE]);
        assert!(p.eval_left(Quat::J).approx_eq(Quat::J - Quat::I, 1e-15));
        // p = i*lambda: left value j*i = -k, right value i*j = k.
        let p = QPoly::new(vec![Quat::ZERO, Quat::I]);
        assert!(p.eval_left(Quat::J).approx_eq(-Quat::K, 1e-15));
        assert!(p.eval_right(Quat::J).approx_eq(Quat::K, 1e-15));
    }

    #[test]
    fn left_substitution_identity_poly() {
        let m = QMatrix::from_rows(vec![
            vec![q(0.0, 1.0, 0.0, 0.0), q(1.0, 0.0, 0.0, 0.0)],
            vec![q(0.0, 0.0, 1.0, 0.0), q(0.0, 0.0, 0.0, 1.0)],
        ])
        .unwrap();
        let p = QPoly::new(vec![Quat::ZERO, Quat::ONE]);
        assert!(p.left_substitute_matrix(&m).unwrap().approx_eq(&m, 0.0));
    }

    #[test]
    fn left_substitution_central_similarity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let n = 3;
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
        let s = QMatrix::from_rows(
            (0..n).map(|_| (0..n).map(|_| rnd(&mut rng)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(s.rank(), n);
        let p = QPoly::from_real(&[0.5, -1.0, 2.0, 1.0]);
        let sim = s.inverse().unwrap().matmul(&a).unwrap().matmul(&s).unwrap();
        let lhs = p.left_substitute_matrix(&sim).unwrap();
        let rhs = s
            .inverse()
            .unwrap()
            .matmul(&p.left_substitute_matrix(&a).unwrap())
            .unwrap()
            .matmul(&s)
            .unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-8));
    }

    #[test]
    fn roots_real_pair() {
        let p = poly_from_right_roots(&[Quat::real(-1.0), Quat::real(-2.0)]).unwrap();
        assert_eq!(p, QPoly::from_real(&[2.0, 3.0, 1.0]));
    }

    #[test]
    fn roots_complex_pair() {
        let p = poly_from_right_roots(&[q(-1.0, 1.0, 0.0, 0.0), q(-1.0, -1.0, 0.0, 0.0)]).unwrap();
        assert_eq!(p, QPoly::from_real(&[2.0, 2.0, 1.0]));
    }

    #[test]
    fn roots_quaternionic_pair() {
        // l1 = -1+j, l2 = -2+k; exact coefficients from the adjusted-root
        // construction, confirmed against both requested roots.
        let l1 = q(-1.0, 0.0, 1.0, 0.0);
        let l2 = q(-2.0, 0.0, 0.0, 1.0);
        let p = poly_from_right_roots(&[l1, l2]).unwrap();
        let a0 = q(8.0 / 3.0, -1.0, -4.0 / 3.0, 1.0 / 3.0);
        let a1 = q(3.0, -2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0);
        assert!(p.coeffs[0].approx_eq(a0, 1e-12), "{:?}", p.coeffs[0]);
        assert!(p.coeffs[1].approx_eq(a1, 1e-12), "{:?}", p.coeffs[1]);
        assert!(p.coeffs[2].approx_eq(Quat::ONE, 0.0));
        assert!(p.eval_right(l1).norm() < 1e-12);
        assert!(p.eval_right(l2).norm() < 1e-12);
    }

    #[test]
    fn roots_coincident_class_rejected() {
        let l1 = q(-1.0, 0.0, 1.0, 0.0);
        let l2 = q(-1.0, 1.0, 0.0, 0.0); // same class (-1, 1)
        assert!(matches!(
            poly_from_right_roots(&[l1, l2]),
            Err(Error::UnsupportedRoots(_))
        ));
        assert!(matches!(poly_from_right_roots(&[]), Err(Error::UnsupportedRoots(_))));
    }

    #[test]
    fn root_classes() {
        let p = QPoly::from_real(&[2.0, 3.0, 1.0]);
        let spec = p.right_root_classes().unwrap();
        assert!(spec.matches(
            &RightSpectrum::new(vec![
                SimilarityClass::new(-1.0, 0.0),
                SimilarityClass::new(-2.0, 0.0)
            ]),
            1e-8
        ));
        let p = QPoly::from_real(&[1.0, 0.0, 1.0]);
        let spec = p.right_root_classes().unwrap();
        assert_eq!(spec.classes.len(), 2);
        for c in &spec.classes {
            assert!(c.approx_eq(SimilarityClass::new(0.0, 1.0), 1e-8));
        }
        let spec = QPoly::from_real(&[2.0, 1.0]).right_root_classes().unwrap();
        assert_eq!(spec.classes.len(), 1);
        assert!(spec.classes[0].approx_eq(SimilarityClass::new(-2.0, 0.0), 1e-8));
        assert!(matches!(
            QPoly::from_real(&[1.0, 2.0, 3.0]).right_root_classes(),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn eigenvector_recurrence() {
        let p = QPoly::from_real(&[2.0, 3.0, 1.0]);
        let v = p.eigenvector_from_right_root(Quat::real(-1.0)).unwrap();
        assert!(v.get(0, 0).approx_eq(Quat::real(2.0), 1e-12));
        assert!(v.get(1, 0).approx_eq(Quat::ONE, 1e-12));
        let ao = p.companion_matrix().unwrap();
        let av = ao.matmul(&v).unwrap();
        assert!(av.approx_eq(&v.scale(-1.0), 1e-12));

        let p = QPoly::from_real(&[1.0, 0.0, 1.0]);
        let v = p.eigenvector_from_right_root(Quat::I).unwrap();
        assert!(v.get(0, 0).approx_eq(Quat::I, 1e-12));
        let ao = p.companion_matrix().unwrap();
        let av = ao.matmul(&v).unwrap();
        assert!(av.approx_eq(&v.scale_right(Quat::I), 1e-12));

        assert!(matches!(
            p.eigenvector_from_right_root(Quat::real(5.0)),
            Err(Error::NotARoot(..))
        ));
    }

    #[test]
    fn zero_classification() {
        let p = QPoly::from_real(&[1.0, 0.0, 1.0]);
        assert_eq!(p.classify_zero(Quat::I, 1e-8).unwrap(), ZeroKind::Spherical);

        let l1 = q(-1.0, 0.0, 1.0, 0.0);
        let l2 = q(-2.0, 0.0, 0.0, 1.0);
        let p = poly_from_right_roots(&[l1, l2]).unwrap();
        assert_eq!(p.classify_zero(l1, 1e-8).unwrap(), ZeroKind::Isolated);

        let p = QPoly::from_real(&[2.0, 3.0, 1.0]);
        assert!(p.classify_zero(Quat::real(-1.0), 1e-8).is_err());
    }
}
