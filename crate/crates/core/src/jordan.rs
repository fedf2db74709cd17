//! 3x3 Hermitian octonionic matrices and the right eigenvalue equation
//! `A v = v λ`.

use std::ops::{Add, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::octonion::{associator, BasisUnit, Octonion};
use crate::scalar::{Field, Scalar};

/// Number of real coordinates of a Jordan matrix: `p, m, n` and three
/// octonions.
pub const COORDS: usize = 27;

/// A column vector `(x, y, z)` of octonions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Octonion<T>: Serialize",
    deserialize = "Octonion<T>: Deserialize<'de>"
))]
pub struct OctVector<T = Scalar> {
    pub x: Octonion<T>,
    pub y: Octonion<T>,
    pub z: Octonion<T>,
}

impl<T> OctVector<T> {
    pub fn new(x: Octonion<T>, y: Octonion<T>, z: Octonion<T>) -> Self {
        OctVector { x, y, z }
    }

    pub fn components(&self) -> [&Octonion<T>; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&Octonion<T>) -> Octonion<U>) -> OctVector<U> {
        OctVector::new(f(&self.x), f(&self.y), f(&self.z))
    }
}

/// Components allowed to be nonzero in generic position, per entry.
pub const GENERIC_PATTERN: [&[BasisUnit]; 3] = [
    &[BasisUnit::One, BasisUnit::I],
    &[BasisUnit::One, BasisUnit::I, BasisUnit::J],
    &[
        BasisUnit::One,
        BasisUnit::I,
        BasisUnit::J,
        BasisUnit::K,
        BasisUnit::L,
    ],
];

impl<T: Field> OctVector<T> {
    pub fn zero() -> Self {
        OctVector::new(Octonion::zero(), Octonion::zero(), Octonion::zero())
    }

    /// `[x, y, z]`.
    pub fn associator(&self) -> Octonion<T> {
        associator(&self.x, &self.y, &self.z)
    }

    pub fn real_parts(&self) -> [T; 3] {
        [self.x.re(), self.y.re(), self.z.re()]
    }

    /// True when all three real parts vanish.
    pub fn is_imaginary(&self) -> bool {
        self.components().iter().all(|w| w.is_imaginary())
    }

    /// x in span{1, i}, y in span{1, i, j}, z in span{1, i, j, k, l}.
    pub fn is_generic_form(&self) -> bool {
        self.components()
            .iter()
            .zip(GENERIC_PATTERN)
            .all(|(w, allowed)| w.support().all(|u| allowed.contains(&u)))
    }

    /// Componentwise right multiplication `(x λ, y λ, z λ)`.
    pub fn right_mul(&self, lambda: &Octonion<T>) -> Self {
        self.map(|w| w * lambda)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|w| w.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|w| w.is_zero())
    }

    /// The 24 real components, entry by entry.
    pub fn flatten(&self) -> Vec<T> {
        self.components()
            .iter()
            .flat_map(|w| w.coeffs().iter().cloned())
            .collect()
    }
}

impl<T: Field> Add for &OctVector<T> {
    type Output = OctVector<T>;
    fn add(self, rhs: &OctVector<T>) -> OctVector<T> {
        OctVector::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl<T: Field> Sub for &OctVector<T> {
    type Output = OctVector<T>;
    fn sub(self, rhs: &OctVector<T>) -> OctVector<T> {
        OctVector::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

/// Hermitian matrix
///
/// ```text
/// | p        a        conj(c) |
/// | conj(a)  m        b       |
/// | c        conj(b)  n       |
/// ```
///
/// Only `p, m, n, a, b, c` are stored, so Hermiticity holds by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: Serialize, Octonion<T>: Serialize",
    deserialize = "T: Deserialize<'de>, Octonion<T>: Deserialize<'de>"
))]
pub struct JordanMatrix<T = Scalar> {
    pub p: T,
    pub m: T,
    pub n: T,
    pub a: Octonion<T>,
    pub b: Octonion<T>,
    pub c: Octonion<T>,
}

impl<T: Field> JordanMatrix<T> {
    pub fn new(p: T, m: T, n: T, a: Octonion<T>, b: Octonion<T>, c: Octonion<T>) -> Self {
        JordanMatrix { p, m, n, a, b, c }
    }

    pub fn zero() -> Self {
        Self::diagonal(T::zero(), T::zero(), T::zero())
    }

    pub fn identity() -> Self {
        Self::diagonal(T::one(), T::one(), T::one())
    }

    pub fn diagonal(p: T, m: T, n: T) -> Self {
        JordanMatrix::new(p, m, n, Octonion::zero(), Octonion::zero(), Octonion::zero())
    }

    /// Entry `(row, col)`, zero-based; conjugate entries are derived.
    pub fn entry(&self, row: usize, col: usize) -> Octonion<T> {
        match (row, col) {
            (0, 0) => Octonion::real(self.p.clone()),
            (1, 1) => Octonion::real(self.m.clone()),
            (2, 2) => Octonion::real(self.n.clone()),
            (0, 1) => self.a.clone(),
            (1, 0) => self.a.conj(),
            (1, 2) => self.b.clone(),
            (2, 1) => self.b.conj(),
            (2, 0) => self.c.clone(),
            (0, 2) => self.c.conj(),
            _ => panic!("entry ({row}, {col}) out of range for a 3x3 matrix"),
        }
    }

    /// `A v`, each row evaluated as a sum of binary products:
    ///
    /// ```text
    /// p x + a y + conj(c) z
    /// conj(a) x + m y + b z
    /// c x + conj(b) y + n z
    /// ```
    pub fn apply(&self, v: &OctVector<T>) -> OctVector<T> {
        let (a_bar, b_bar, c_bar) = (self.a.conj(), self.b.conj(), self.c.conj());
        OctVector::new(
            &(&v.x.scale(&self.p) + &(&self.a * &v.y)) + &(&c_bar * &v.z),
            &(&(&a_bar * &v.x) + &v.y.scale(&self.m)) + &(&self.b * &v.z),
            &(&(&self.c * &v.x) + &(&b_bar * &v.y)) + &v.z.scale(&self.n),
        )
    }

    /// `A v - v λ`; zero exactly when `(v, λ)` is a right eigenpair.
    pub fn residual(&self, pair: &EigenPair<T>) -> OctVector<T> {
        &self.apply(&pair.vector) - &pair.vector.right_mul(&pair.eigenvalue)
    }

    pub fn is_eigenpair(&self, pair: &EigenPair<T>) -> bool {
        self.residual(pair).is_zero()
    }

    /// `A + t I`. Eigenpairs `(v, λ)` of `A` become `(v, λ + t)`.
    pub fn shift_identity(&self, t: &T) -> Self {
        let mut out = self.clone();
        out.p = out.p + t.clone();
        out.m = out.m + t.clone();
        out.n = out.n + t.clone();
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        JordanMatrix::new(
            self.p.clone() * s.clone(),
            self.m.clone() * s.clone(),
            self.n.clone() * s.clone(),
            self.a.scale(s),
            self.b.scale(s),
            self.c.scale(s),
        )
    }

    /// Real coordinates in the order `p, m, n, a1..a8, b1..b8, c1..c8`.
    pub fn coordinates(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(COORDS);
        out.extend([self.p.clone(), self.m.clone(), self.n.clone()]);
        for w in [&self.a, &self.b, &self.c] {
            out.extend(w.coeffs().iter().cloned());
        }
        out
    }

    /// Inverse of [`coordinates`](Self::coordinates). Panics unless given 27
    /// values.
    pub fn from_coordinates(coords: &[T]) -> Self {
        assert_eq!(coords.len(), COORDS, "a Jordan matrix has 27 coordinates");
        let oct = |start: usize| {
            Octonion::new(std::array::from_fn(|k| coords[start + k].clone()))
        };
        JordanMatrix::new(
            coords[0].clone(),
            coords[1].clone(),
            coords[2].clone(),
            oct(3),
            oct(11),
            oct(19),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates().iter().all(Zero::is_zero)
    }
}

impl<T: Field> Add for &JordanMatrix<T> {
    type Output = JordanMatrix<T>;
    fn add(self, rhs: &JordanMatrix<T>) -> JordanMatrix<T> {
        JordanMatrix::new(
            self.p.clone() + rhs.p.clone(),
            self.m.clone() + rhs.m.clone(),
            self.n.clone() + rhs.n.clone(),
            &self.a + &rhs.a,
            &self.b + &rhs.b,
            &self.c + &rhs.c,
        )
    }
}

impl<T: Field> Sub for &JordanMatrix<T> {
    type Output = JordanMatrix<T>;
    fn sub(self, rhs: &JordanMatrix<T>) -> JordanMatrix<T> {
        JordanMatrix::new(
            self.p.clone() - rhs.p.clone(),
            self.m.clone() - rhs.m.clone(),
            self.n.clone() - rhs.n.clone(),
            &self.a - &rhs.a,
            &self.b - &rhs.b,
            &self.c - &rhs.c,
        )
    }
}

/// Name of coordinate `index` in [`JordanMatrix::coordinates`] order.
pub fn coordinate_name(index: usize) -> String {
    match index {
        0 => "p".into(),
        1 => "m".into(),
        2 => "n".into(),
        3..=26 => {
            let block = ["a", "b", "c"][(index - 3) / 8];
            format!("{block}{}", (index - 3) % 8 + 1)
        }
        _ => panic!("coordinate index {index} out of range"),
    }
}

/// A right eigenpair candidate `(v, λ)` for `A v = v λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "Octonion<T>: Serialize",
    deserialize = "Octonion<T>: Deserialize<'de>"
))]
pub struct EigenPair<T = Scalar> {
    pub vector: OctVector<T>,
    pub eigenvalue: Octonion<T>,
}

impl<T: Field> EigenPair<T> {
    pub fn new(vector: OctVector<T>, eigenvalue: Octonion<T>) -> Self {
        EigenPair { vector, eigenvalue }
    }

    /// Pair whose eigenvalue is the associator of the vector.
    pub fn with_associator(vector: OctVector<T>) -> Self {
        let eigenvalue = vector.associator();
        EigenPair { vector, eigenvalue }
    }
}
