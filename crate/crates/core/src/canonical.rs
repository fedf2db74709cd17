//! Moving an octonionic vector into generic position by an automorphism.
//!
//! Given `v = (x, y, z)` with `[v] != 0`, Gram-Schmidt on the imaginary parts
//! yields a Cayley triple `(u1, u2, u4)`:
//!
//! ```text
//! u1 = Im(x) / |Im(x)|
//! u2 = Im(y) minus its u1 part, normalized
//! u4 = Im(z) minus its u1, u2, u1u2 parts, normalized
//! ```
//!
//! The map `i -> u1, j -> u2, l -> u4` extends to the automorphism `φ` whose
//! basis images are `(1, u1, u2, u1u2, (u1u2)u4, u2u4, u1u4, u4)`, and
//! `φ^-1(v)` has the generic component pattern with `x2, y3, z8 > 0`.
//!
//! This runs in floating point. [`BasisTransform::rationalize`] recovers an
//! exact transform when the images happen to be rational, which is the case
//! for the eigenvectors of the first worked example.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::jordan::{JordanMatrix, OctVector, GENERIC_PATTERN};
use crate::octonion::{BasisUnit, FloatOctonion, Octonion};
use crate::scalar::{Field, Rational, Scalar};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Rounding errors above this are reported as poor approximations.
pub const POOR_APPROXIMATION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CanonicalError {
    #[error("QuaternionicInput: {0} (the associator vanishes within tolerance)")]
    QuaternionicInput(&'static str),
    #[error("transform is not an exact automorphism: {0}")]
    NotExact(String),
}

/// Basis images of the automorphism determined by a Cayley triple.
pub fn cayley_images<T: Field>(
    u1: &Octonion<T>,
    u2: &Octonion<T>,
    u4: &Octonion<T>,
) -> [Octonion<T>; 8] {
    let u3 = u1 * u2;
    [
        Octonion::one(),
        u1.clone(),
        u2.clone(),
        u3.clone(),
        &u3 * u4,
        u2 * u4,
        u1 * u4,
        u4.clone(),
    ]
}

fn combine<T: Field>(images: &[Octonion<T>; 8], w: &Octonion<T>) -> Octonion<T> {
    images
        .iter()
        .zip(w.coeffs())
        .fold(Octonion::zero(), |acc, (img, c)| &acc + &img.scale(c))
}

fn project<T: Field>(images: &[Octonion<T>; 8], w: &Octonion<T>) -> Octonion<T> {
    Octonion::new(std::array::from_fn(|k| w.dot(&images[k])))
}

/// Largest `|φ(e_r e_s) - φ(e_r) φ(e_s)|` over the 64 basis pairs.
fn automorphism_defect(images: &[FloatOctonion; 8]) -> f64 {
    let mut worst: f64 = 0.0;
    for r in BasisUnit::ALL {
        for s in BasisUnit::ALL {
            let (sign, unit) = r.times(s);
            let lhs = images[unit.slot()].scale(&(sign as f64));
            let rhs = &images[r.slot()] * &images[s.slot()];
            worst = worst.max((&lhs - &rhs).norm_sq().sqrt());
        }
    }
    worst
}

/// Floating-point change of basis; column `k` is the image of basis unit `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisTransform {
    images: [FloatOctonion; 8],
    pub tolerance: f64,
}

impl BasisTransform {
    pub fn identity(tolerance: f64) -> Self {
        BasisTransform {
            images: BasisUnit::ALL.map(FloatOctonion::unit),
            tolerance,
        }
    }

    pub fn from_images(images: [FloatOctonion; 8], tolerance: f64) -> Self {
        BasisTransform { images, tolerance }
    }

    pub fn image(&self, unit: BasisUnit) -> &FloatOctonion {
        &self.images[unit.slot()]
    }

    /// Row-major 8x8 matrix whose columns are the basis images.
    pub fn matrix(&self) -> [[f64; 8]; 8] {
        std::array::from_fn(|row| std::array::from_fn(|col| self.images[col].coeffs()[row]))
    }

    pub fn apply(&self, w: &FloatOctonion) -> FloatOctonion {
        combine(&self.images, w)
    }

    /// `φ^-1(w)`, using that `φ` is orthogonal.
    pub fn apply_inverse(&self, w: &FloatOctonion) -> FloatOctonion {
        project(&self.images, w)
    }

    pub fn automorphism_defect(&self) -> f64 {
        automorphism_defect(&self.images)
    }

    /// Largest entry of `M^T M - I`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (r, a) in self.images.iter().enumerate() {
            for (s, b) in self.images.iter().enumerate() {
                let target = if r == s { 1.0 } else { 0.0 };
                worst = worst.max((a.dot(b) - target).abs());
            }
        }
        worst
    }

    /// Rounds every entry to a nearby rational and checks the result is an
    /// exact automorphism.
    pub fn rationalize(&self, max_denominator: u64) -> Result<ExactTransform, CanonicalError> {
        let images = self
            .images
            .each_ref()
            .map(|img| round_to_rational(img, max_denominator).value);
        ExactTransform::from_images(images)
    }
}

/// Result of [`canonicalize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Canonical {
    pub transform: BasisTransform,
    /// `φ^-1(v)`.
    pub generic: OctVector<f64>,
    /// Largest magnitude among components outside the generic pattern.
    pub residual_offgeneric: f64,
}

fn normalized(w: FloatOctonion, tol: f64, what: &'static str) -> Result<FloatOctonion, CanonicalError> {
    let norm = w.norm_sq().sqrt();
    if norm.is_nan() || norm <= tol {
        return Err(CanonicalError::QuaternionicInput(what));
    }
    Ok(w.scale(&norm.recip()))
}

fn remove_component(w: &FloatOctonion, u: &FloatOctonion) -> FloatOctonion {
    w - &u.scale(&w.dot(u))
}

/// Largest magnitude of a component that generic form requires to vanish.
pub fn offgeneric_residual(v: &OctVector<f64>) -> f64 {
    v.components()
        .iter()
        .zip(GENERIC_PATTERN)
        .flat_map(|(w, allowed)| {
            BasisUnit::ALL
                .into_iter()
                .filter(move |u| !allowed.contains(u))
                .map(move |u| w.coeff(u).abs())
        })
        .fold(0.0, f64::max)
}

/// Finds an automorphism carrying `v` to generic form.
pub fn canonicalize(v: &OctVector<f64>, tol: f64) -> Result<Canonical, CanonicalError> {
    let assoc = v.associator().norm_sq().sqrt();
    if assoc.is_nan() || assoc <= tol {
        return Err(CanonicalError::QuaternionicInput("|[v]| is below tolerance"));
    }
    let u1 = normalized(v.x.im(), tol, "Im(x) vanishes")?;
    let u2 = normalized(remove_component(&v.y.im(), &u1), tol, "Im(y) is parallel to Im(x)")?;
    let u3 = &u1 * &u2;
    let mut rest = v.z.im();
    for u in [&u1, &u2, &u3] {
        rest = remove_component(&rest, u);
    }
    let u4 = normalized(rest, tol, "z lies in the quaternion subalgebra of x and y")?;

    let transform = BasisTransform::from_images(cayley_images(&u1, &u2, &u4), tol);
    let generic = v.map(|w| transform.apply_inverse(w));
    let residual_offgeneric = offgeneric_residual(&generic);
    Ok(Canonical {
        transform,
        generic,
        residual_offgeneric,
    })
}

/// An exact automorphism of the octonions, stored by basis images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTransform {
    images: [Octonion; 8],
}

impl ExactTransform {
    pub fn identity() -> Self {
        ExactTransform {
            images: BasisUnit::ALL.map(Octonion::unit),
        }
    }

    /// Accepts the images only if they are orthonormal, fix `1`, and respect
    /// every product of basis units exactly.
    pub fn from_images(images: [Octonion; 8]) -> Result<Self, CanonicalError> {
        if images[0] != Octonion::one() {
            return Err(CanonicalError::NotExact("1 is not fixed".into()));
        }
        for (r, a) in images.iter().enumerate() {
            for (s, b) in images.iter().enumerate() {
                let expected = if r == s { Scalar::one() } else { Scalar::zero() };
                if a.dot(b) != expected {
                    return Err(CanonicalError::NotExact(format!(
                        "images {r} and {s} are not orthonormal"
                    )));
                }
            }
        }
        for r in BasisUnit::ALL {
            for s in BasisUnit::ALL {
                let (sign, unit) = r.times(s);
                let lhs = images[unit.slot()].scale(&Scalar::from(sign as i64));
                if lhs != &images[r.slot()] * &images[s.slot()] {
                    return Err(CanonicalError::NotExact(format!(
                        "product {r}*{s} is not preserved"
                    )));
                }
            }
        }
        Ok(ExactTransform { images })
    }

    pub fn from_cayley_triple(
        u1: &Octonion,
        u2: &Octonion,
        u4: &Octonion,
    ) -> Result<Self, CanonicalError> {
        Self::from_images(cayley_images(u1, u2, u4))
    }

    pub fn images(&self) -> &[Octonion; 8] {
        &self.images
    }

    pub fn apply(&self, w: &Octonion) -> Octonion {
        combine(&self.images, w)
    }

    pub fn apply_inverse(&self, w: &Octonion) -> Octonion {
        project(&self.images, w)
    }

    /// `φ ∘ other`.
    pub fn compose(&self, other: &ExactTransform) -> ExactTransform {
        ExactTransform {
            images: other.images.each_ref().map(|w| self.apply(w)),
        }
    }

    pub fn apply_vector(&self, v: &OctVector) -> OctVector {
        v.map(|w| self.apply(w))
    }

    pub fn apply_inverse_vector(&self, v: &OctVector) -> OctVector {
        v.map(|w| self.apply_inverse(w))
    }

    /// Applies `φ^-1` entrywise. The diagonal is real and stays fixed.
    pub fn apply_inverse_matrix(&self, a: &JordanMatrix) -> JordanMatrix {
        JordanMatrix::new(
            a.p.clone(),
            a.m.clone(),
            a.n.clone(),
            self.apply_inverse(&a.a),
            self.apply_inverse(&a.b),
            self.apply_inverse(&a.c),
        )
    }

    pub fn to_float(&self) -> BasisTransform {
        BasisTransform::from_images(self.images.each_ref().map(Octonion::to_float), 0.0)
    }
}

/// Octonion with rational coefficients and the worst rounding error.
#[derive(Debug, Clone, PartialEq)]
pub struct Rationalized {
    pub value: Octonion,
    pub max_error: f64,
}

impl Rationalized {
    pub fn is_poor(&self) -> bool {
        self.max_error.is_nan() || self.max_error > POOR_APPROXIMATION
    }
}

/// Rounds every coefficient to the closest rational with denominator at most
/// `max_denominator`.
pub fn round_to_rational(w: &FloatOctonion, max_denominator: u64) -> Rationalized {
    let mut max_error: f64 = 0.0;
    let value = w.map(|&c| {
        let r = limit_denominator(c, max_denominator);
        let err = match &r {
            Some(r) => (c - Field::to_f64(r)).abs(),
            None => f64::INFINITY,
        };
        max_error = max_error.max(err);
        Scalar::Rational(r.unwrap_or_else(Rational::zero))
    });
    Rationalized { value, max_error }
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// from the continued-fraction convergents and the last semiconvergent.
/// `None` for non-finite input.
pub fn limit_denominator(x: f64, max_den: u64) -> Option<Rational> {
    let exact = Rational::from_float(x)?;
    let max_den = BigInt::from(max_den.max(1));
    if exact.denom() <= &max_den {
        return Some(exact);
    }
    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let r = &n - &a * &d;
        (n, d) = (d, r);
    }
    let k = (&max_den - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    let dist = |r: &Rational| (r - &exact).abs();
    Some(if dist(&conv) <= dist(&semi) { conv } else { semi })
}
