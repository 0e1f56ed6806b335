//! Quaternion scalar arithmetic and similarity classes.
//!
//! A quaternion `q = w + x i + y j + z k` is a hypercomplex scalar over 64-bit
//! reals. Multiplication follows the defining relations
//! `i^2 = j^2 = k^2 = ijk = -1` and is associative but not commutative.
//! Two quaternions are similar (`q = a^-1 r a` for some nonzero `a`) exactly
//! when their real parts and imaginary norms agree; the pair
//! `(Re q, |Im q|)` therefore identifies the similarity class.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::de::{Deserializer, Error as DeError};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Quat {
        Quat { w, x, y, z }
    }

    pub const fn real(w: f64) -> Quat {
        Quat::new(w, 0.0, 0.0, 0.0)
    }

    pub fn conj(self) -> Quat {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn re(self) -> f64 {
        self.w
    }

    /// `|Im q|`, the norm of the imaginary part.
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.im_norm() <= tol
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn inv(self) -> Result<Quat> {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn scale(self, s: f64) -> Quat {
        Quat::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn powi(self, k: usize) -> Quat {
        let mut out = Quat::ONE;
        for _ in 0..k {
            out = out * self;
        }
        out
    }

    /// Split into the complex pair `(q1, q2)` with `q = q1 + q2 * j`,
    /// `q1 = w + x i`, `q2 = y + z i`. This is the Cayley-Dickson view used
    /// by the complex-adjoint embedding.
    pub fn complex_parts(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    pub fn similarity_class(self) -> SimilarityClass {
        SimilarityClass {
            re: self.re(),
            im_norm: self.im_norm(),
        }
    }

    pub fn approx_eq(self, other: Quat, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
}

pub fn are_similar(a: Quat, b: Quat, tol: f64) -> bool {
    a.similarity_class().approx_eq(b.similarity_class(), tol)
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, rhs: Quat) -> Quat {
        Quat::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl AddAssign for Quat {
    fn add_assign(&mut self, rhs: Quat) {
        *self = *self + rhs;
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, rhs: Quat) -> Quat {
        Quat::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl SubAssign for Quat {
    fn sub_assign(&mut self, rhs: Quat) {
        *self = *self - rhs;
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quat {
    type Output = Quat;
    /// Hamilton product. Not commutative: `i * j = k` but `j * i = -k`.
    fn mul(self, r: Quat) -> Quat {
        Quat::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl fmt::Display for Quat {
    /// Fixed component order `w + x i + y j + z k`; precision via `{:.N}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(6);
        write!(
            f,
            "{:.p$} {} {:.p$}i {} {:.p$}j {} {:.p$}k",
            self.w,
            if self.x < 0.0 { "-" } else { "+" },
            self.x.abs(),
            if self.y < 0.0 { "-" } else { "+" },
            self.y.abs(),
            if self.z < 0.0 { "-" } else { "+" },
            self.z.abs(),
            p = p
        )
    }
}

// JSON wire format: four-element array [w, x, y, z].
impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(4))?;
        for c in [self.w, self.x, self.y, self.z] {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Quat, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        if v.len() != 4 {
            return Err(D::Error::custom(format!(
                "quaternion must be a 4-element array, got {} elements",
                v.len()
            )));
        }
        Ok(Quat::new(v[0], v[1], v[2], v[3]))
    }
}

/// Similarity class `[q]`, identified by `(Re q, |Im q|)`. The standard
/// representative is the complex number `re + im_norm * i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilarityClass {
    pub re: f64,
    pub im_norm: f64,
}

impl SimilarityClass {
    pub fn new(re: f64, im_norm: f64) -> SimilarityClass {
        debug_assert!(im_norm >= 0.0);
        SimilarityClass { re, im_norm }
    }

    /// Standard complex representative with nonnegative imaginary part.
    pub fn representative(self) -> Quat {
        Quat::new(self.re, self.im_norm, 0.0, 0.0)
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.im_norm <= tol
    }

    /// Absolute tolerance on re and im_norm separately.
    pub fn approx_eq(self, other: SimilarityClass, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.im_norm - other.im_norm).abs() <= tol
    }

    pub fn sort_key(self) -> (f64, f64) {
        (self.re, self.im_norm)
    }
}

impl fmt::Display for SimilarityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6})", self.re, self.im_norm)
    }
}

pub fn sort_classes(classes: &mut [SimilarityClass]) {
    classes.sort_by(|a, b| {
        a.re.total_cmp(&b.re)
            .then_with(|| a.im_norm.total_cmp(&b.im_norm))
    });
}
