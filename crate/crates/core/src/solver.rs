//! Constructing every Jordan matrix that has a given imaginary vector `v`
//! as a right eigenvector with eigenvalue `[v]`.
//!
//! With `v` in generic position and `[v] = 2 x2 y3 z8 kl != 0`, the
//! off-diagonal entry `b` is pinned down up to three free components
//! (`b1, b4, b7`), `b5` vanishes, and `b2, b3, b6, b8` follow from closed
//! formulas in the free data `b1, b4, b7, p, m, n`. The remaining entries
//! come from back-substitution:
//!
//! ```text
//! conj(a) = (y(λ - m) - b z) conj(x) / |x|^2
//! c       = (z(λ - n) - conj(b) y) conj(x) / |x|^2
//! ```

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jordan::{JordanMatrix, OctVector, COORDS};
use crate::linalg::{self, Matrix};
use crate::octonion::{BasisUnit, Octonion};
use crate::scalar::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("DegenerateVector: associator vanishes (x2 y3 z8 = 0)")]
    DegenerateVector,
    #[error("NotGeneric: vector is not in generic form; canonicalize it first")]
    NotGeneric,
    #[error("NonzeroRealPart: vector has a nonzero real part, so no matrix admits it with eigenvalue [v]")]
    NonzeroRealPart,
    #[error("zero denominator `{0}`")]
    ZeroDenominator(&'static str),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The six free parameters of the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverParams {
    pub b1: Scalar,
    pub b4: Scalar,
    pub b7: Scalar,
    pub p: Scalar,
    pub m: Scalar,
    pub n: Scalar,
}

impl SolverParams {
    pub const NAMES: [&'static str; 6] = ["b1", "b4", "b7", "p", "m", "n"];

    pub fn zero() -> Self {
        Self::from_array(std::array::from_fn(|_| Scalar::zero()))
    }

    pub fn from_array([b1, b4, b7, p, m, n]: [Scalar; 6]) -> Self {
        SolverParams { b1, b4, b7, p, m, n }
    }

    pub fn to_array(&self) -> [Scalar; 6] {
        [
            self.b1.clone(),
            self.b4.clone(),
            self.b7.clone(),
            self.p.clone(),
            self.m.clone(),
            self.n.clone(),
        ]
    }
}

/// `x = x2 i`, `y = y2 i + y3 j`, `z = z2 i + z3 j + z4 k + z8 l` with
/// `x2 y3 z8 != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericImaginaryVector {
    x2: Scalar,
    y2: Scalar,
    y3: Scalar,
    z2: Scalar,
    z3: Scalar,
    z4: Scalar,
    z8: Scalar,
}

impl GenericImaginaryVector {
    pub fn new(
        x2: Scalar,
        y2: Scalar,
        y3: Scalar,
        z2: Scalar,
        z3: Scalar,
        z4: Scalar,
        z8: Scalar,
    ) -> Result<Self, SolverError> {
        if x2.is_zero() || y3.is_zero() || z8.is_zero() {
            return Err(SolverError::DegenerateVector);
        }
        Ok(GenericImaginaryVector {
            x2,
            y2,
            y3,
            z2,
            z3,
            z4,
            z8,
        })
    }

    /// Accepts a vector already in generic form with vanishing real parts.
    pub fn from_vector(v: &OctVector) -> Result<Self, SolverError> {
        if !v.is_generic_form() {
            return Err(SolverError::NotGeneric);
        }
        use BasisUnit::*;
        let c = |w: &Octonion, u| w.coeff(u).clone();
        let x2 = c(&v.x, I);
        let y3 = c(&v.y, J);
        let z8 = c(&v.z, L);
        if x2.is_zero() || y3.is_zero() || z8.is_zero() {
            return Err(SolverError::DegenerateVector);
        }
        if !v.is_imaginary() {
            return Err(SolverError::NonzeroRealPart);
        }
        Self::new(x2, c(&v.y, I), y3, c(&v.z, I), c(&v.z, J), c(&v.z, K), z8)
    }

    pub fn to_vector(&self) -> OctVector {
        use BasisUnit::*;
        OctVector::new(
            Octonion::scaled_unit(I, self.x2.clone()),
            Octonion::from_terms([(I, self.y2.clone()), (J, self.y3.clone())]),
            Octonion::from_terms([
                (I, self.z2.clone()),
                (J, self.z3.clone()),
                (K, self.z4.clone()),
                (L, self.z8.clone()),
            ]),
        )
    }

    /// `[v] = 2 x2 y3 z8 kl`.
    pub fn associator(&self) -> Octonion {
        let coeff = Scalar::from(2) * self.x2.clone() * self.y3.clone() * self.z8.clone();
        Octonion::scaled_unit(BasisUnit::KL, coeff)
    }

    fn symbols(&self) -> formulas::Symbols {
        formulas::Symbols::imaginary(self)
    }
}

/// The closed-form component formulas, written for a generic vector that may
/// still have real parts `x1, y1, z1`.
pub mod formulas {
    use super::*;

    /// Components of a generic-form vector.
    #[derive(Debug, Clone)]
    pub struct Symbols {
        pub x1: Scalar,
        pub x2: Scalar,
        pub y1: Scalar,
        pub y2: Scalar,
        pub y3: Scalar,
        pub z1: Scalar,
        pub z2: Scalar,
        pub z3: Scalar,
        pub z4: Scalar,
        pub z8: Scalar,
    }

    impl Symbols {
        /// Reads the symbols off a generic-form vector.
        pub fn from_vector(v: &OctVector) -> Result<Self, SolverError> {
            if !v.is_generic_form() {
                return Err(SolverError::NotGeneric);
            }
            use BasisUnit::*;
            Ok(Symbols {
                x1: v.x.coeff(One).clone(),
                x2: v.x.coeff(I).clone(),
                y1: v.y.coeff(One).clone(),
                y2: v.y.coeff(I).clone(),
                y3: v.y.coeff(J).clone(),
                z1: v.z.coeff(One).clone(),
                z2: v.z.coeff(I).clone(),
                z3: v.z.coeff(J).clone(),
                z4: v.z.coeff(K).clone(),
                z8: v.z.coeff(L).clone(),
            })
        }

        pub(super) fn imaginary(v: &GenericImaginaryVector) -> Self {
            Symbols {
                x1: Scalar::zero(),
                x2: v.x2.clone(),
                y1: Scalar::zero(),
                y2: v.y2.clone(),
                y3: v.y3.clone(),
                z1: Scalar::zero(),
                z2: v.z2.clone(),
                z3: v.z3.clone(),
                z4: v.z4.clone(),
                z8: v.z8.clone(),
            }
        }
    }

    /// `coeff * Π base^exp`.
    fn mono(coeff: i64, factors: &[(&Scalar, u32)]) -> Scalar {
        factors.iter().fold(Scalar::from(coeff), |acc, &(base, exp)| {
            (0..exp).fold(acc, |acc, _| acc * base.clone())
        })
    }

    fn sum(terms: impl IntoIterator<Item = Scalar>) -> Scalar {
        terms.into_iter().fold(Scalar::zero(), |acc, t| acc + t)
    }

    fn quotient(num: Scalar, den: Scalar, what: &'static str) -> Result<Scalar, SolverError> {
        if den.is_zero() {
            return Err(SolverError::ZeroDenominator(what));
        }
        Ok(num.try_div(&den)?)
    }

    /// `b8`, from the `k` component of the master equation.
    pub fn b8(s: &Symbols, b6: &Scalar, b7: &Scalar) -> Result<Scalar, SolverError> {
        let Symbols {
            x1, x2, y1, y2, y3, z2, z8, ..
        } = s;
        let num = sum([
            mono(2, &[(y3, 1), (z2, 1), (z8, 1), (x2, 2)]),
            mono(1, &[(b6, 1), (y1, 1), (x2, 1)]),
            mono(-1, &[(b6, 1), (x1, 1), (y2, 1)]),
            mono(1, &[(b7, 1), (x1, 1), (y3, 1)]),
        ]);
        quotient(num, mono(1, &[(x2, 1), (y3, 1)]), "x2 y3")
    }

    /// `b2`, valid once `b5 = z1 = y1 = 0`.
    pub fn b2(s: &Symbols, b4: &Scalar, b6: &Scalar, b7: &Scalar) -> Result<Scalar, SolverError> {
        let Symbols {
            x1, x2, y2, y3, z2, z3, z4, z8, ..
        } = s;
        let num = sum([
            mono(1, &[(y3, 2), (z8, 1), (x2, 5)]),
            mono(-1, &[(y3, 2), (z8, 3), (x2, 3)]),
            mono(-1, &[(y3, 4), (z8, 1), (x2, 3)]),
            mono(1, &[(x1, 2), (y3, 2), (z8, 1), (x2, 3)]),
            mono(1, &[(y2, 2), (y3, 2), (z8, 1), (x2, 3)]),
            mono(1, &[(y3, 2), (z2, 2), (z8, 1), (x2, 3)]),
            mono(-1, &[(y3, 2), (z3, 2), (z8, 1), (x2, 3)]),
            mono(-1, &[(y3, 2), (z4, 2), (z8, 1), (x2, 3)]),
            mono(1, &[(b6, 1), (y3, 2), (z4, 1), (x2, 2)]),
            mono(-2, &[(x1, 1), (y2, 1), (y3, 1), (z2, 1), (z4, 1), (z8, 1), (x2, 2)]),
            mono(1, &[(b7, 1), (x1, 1), (y3, 2), (z2, 1), (x2, 1)]),
            mono(-1, &[(b7, 1), (x1, 1), (y2, 1), (y3, 1), (z3, 1), (x2, 1)]),
            mono(1, &[(b4, 1), (x1, 1), (y2, 1), (y3, 1), (z8, 1), (x2, 1)]),
            mono(1, &[(b6, 1), (x1, 2), (y2, 2), (z4, 1)]),
            mono(-1, &[(b7, 1), (x1, 2), (y2, 1), (y3, 1), (z4, 1)]),
        ]);
        quotient(num, mono(1, &[(x2, 2), (y3, 2), (z8, 1)]), "x2^2 y3^2 z8")
    }

    /// `b3`, valid once `b5 = z1 = y1 = 0`.
    pub fn b3(s: &Symbols, b4: &Scalar, b6: &Scalar, b7: &Scalar) -> Result<Scalar, SolverError> {
        let Symbols {
            x1, x2, y2, y3, z2, z3, z4, z8, ..
        } = s;
        let num = sum([
            mono(2, &[(y2, 1), (y3, 2), (z8, 1), (x2, 3)]),
            mono(2, &[(y3, 1), (z2, 1), (z3, 1), (z8, 1), (x2, 3)]),
            mono(-1, &[(b7, 1), (y3, 1), (z4, 1), (x2, 2)]),
            mono(-2, &[(x1, 1), (y3, 1), (z2, 1), (z4, 1), (z8, 1), (x2, 2)]),
            mono(1, &[(b6, 1), (x1, 1), (y3, 1), (z2, 1), (x2, 1)]),
            mono(-1, &[(b6, 1), (x1, 1), (y2, 1), (z3, 1), (x2, 1)]),
            mono(1, &[(b4, 1), (x1, 1), (y3, 1), (z8, 1), (x2, 1)]),
            mono(1, &[(b6, 1), (x1, 2), (y2, 1), (z4, 1)]),
            mono(-1, &[(b7, 1), (x1, 2), (y3, 1), (z4, 1)]),
        ]);
        quotient(num, mono(1, &[(x2, 2), (y3, 1), (z8, 1)]), "x2^2 y3 z8")
    }

    /// `b6` for an imaginary vector (`x1 = y1 = z1 = 0`), in terms of the
    /// free parameters.
    pub fn b6(s: &Symbols, params: &SolverParams) -> Result<Scalar, SolverError> {
        let Symbols {
            x2, y2, y3, z2, z3, z4, z8, ..
        } = s;
        let SolverParams { b1, b4, b7, p, m, n } = params;
        let num = sum([
            mono(-2, &[(y3, 1), (z4, 1), (z8, 1), (x2, 3)]),
            mono(-1, &[(p, 1), (z8, 1), (x2, 2)]),
            mono(2, &[(y3, 1), (z4, 1), (z8, 3), (x2, 1)]),
            mono(2, &[(y3, 1), (z4, 3), (z8, 1), (x2, 1)]),
            mono(2, &[(y3, 3), (z4, 1), (z8, 1), (x2, 1)]),
            mono(-2, &[(y3, 1), (z2, 2), (z4, 1), (z8, 1), (x2, 1)]),
            mono(2, &[(y3, 1), (z3, 2), (z4, 1), (z8, 1), (x2, 1)]),
            mono(2, &[(y2, 2), (y3, 1), (z4, 1), (z8, 1), (x2, 1)]),
            mono(4, &[(y2, 1), (z2, 1), (z3, 1), (z4, 1), (z8, 1), (x2, 1)]),
            mono(1, &[(n, 1), (z8, 3)]),
            mono(-2, &[(b7, 1), (y2, 1), (z4, 2)]),
            mono(-2, &[(b7, 1), (y2, 1), (z8, 2)]),
            mono(1, &[(m, 1), (y2, 2), (z8, 1)]),
            mono(1, &[(m, 1), (y3, 2), (z8, 1)]),
            mono(1, &[(n, 1), (z2, 2), (z8, 1)]),
            mono(1, &[(n, 1), (z3, 2), (z8, 1)]),
            mono(1, &[(n, 1), (z4, 2), (z8, 1)]),
            mono(2, &[(b1, 1), (y2, 1), (z2, 1), (z8, 1)]),
            mono(2, &[(b4, 1), (y3, 1), (z2, 1), (z8, 1)]),
            mono(-2, &[(b4, 1), (y2, 1), (z3, 1), (z8, 1)]),
            mono(2, &[(b1, 1), (y3, 1), (z3, 1), (z8, 1)]),
        ]);
        let den = mono(2, &[(y3, 1)]) * (mono(1, &[(z4, 2)]) + mono(1, &[(z8, 2)]));
        quotient(num, den, "2 y3 (z4^2 + z8^2)")
    }

    /// `LHS - RHS` of the equation left after eliminating `a` and `c`:
    ///
    /// ```text
    /// (x(conj(λ)conj(y) - conj(z)conj(b)))y + (x(conj(λ)conj(z) - conj(y)b))z - xλ|x|^2
    ///     = x(m|y|^2 + n|z|^2 - p|x|^2)
    /// ```
    ///
    /// with `λ = [v]`. For `x != 0` it vanishes exactly when the matrix
    /// obtained by back-substitution has `v` as an eigenvector.
    pub fn master_equation(
        v: &OctVector,
        b: &Octonion,
        p: &Scalar,
        m: &Scalar,
        n: &Scalar,
    ) -> Octonion {
        let OctVector { x, y, z } = v;
        let lambda = v.associator();
        let (lb, yb, zb, bb) = (lambda.conj(), y.conj(), z.conj(), b.conj());
        let first = &(x * &(&(&lb * &yb) - &(&zb * &bb))) * y;
        let second = &(x * &(&(&lb * &zb) - &(&yb * b))) * z;
        let lhs = &(&first + &second) - &(x * &lambda).scale(&x.norm_sq());
        let real = m.clone() * y.norm_sq() + n.clone() * z.norm_sq() - p.clone() * x.norm_sq();
        &lhs - &x.scale(&real)
    }
}

/// Solves the first two rows of the eigen-equation for `a` and `c`, given
/// the diagonal and `b`.
fn back_substitute(
    v: &OctVector,
    lambda: &Octonion,
    b: &Octonion,
    m: &Scalar,
    n: &Scalar,
) -> Result<(Octonion, Octonion), SolverError> {
    let OctVector { x, y, z } = v;
    let x_norm = x.norm_sq();
    if x_norm.is_zero() {
        return Err(SolverError::ZeroDenominator("|x|^2"));
    }
    let inv = x_norm.try_inv()?;
    let x_bar = x.conj();
    let shift = |s: &Scalar| lambda - &Octonion::real(s.clone());
    let a_bar = (&(&(y * &shift(m)) - &(b * z)) * &x_bar).scale(&inv);
    let c = (&(&(z * &shift(n)) - &(&b.conj() * y)) * &x_bar).scale(&inv);
    Ok((a_bar.conj(), c))
}

/// Builds the member of the family selected by `params`. The result
/// satisfies `A v = v [v]` exactly.
pub fn construct(
    v: &GenericImaginaryVector,
    params: &SolverParams,
) -> Result<JordanMatrix, SolverError> {
    let sym = v.symbols();
    let b6 = formulas::b6(&sym, params)?;
    let b8 = formulas::b8(&sym, &b6, &params.b7)?;
    let b2 = formulas::b2(&sym, &params.b4, &b6, &params.b7)?;
    let b3 = formulas::b3(&sym, &params.b4, &b6, &params.b7)?;
    let b = Octonion::new([
        params.b1.clone(),
        b2,
        b3,
        params.b4.clone(),
        Scalar::zero(),
        b6,
        params.b7.clone(),
        b8,
    ]);
    let vector = v.to_vector();
    let lambda = v.associator();
    let (a, c) = back_substitute(&vector, &lambda, &b, &params.m, &params.n)?;
    Ok(JordanMatrix::new(
        params.p.clone(),
        params.m.clone(),
        params.n.clone(),
        a,
        b,
        c,
    ))
}

/// The family as an affine map `params -> base + Σ params_k directions[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMap {
    pub base: JordanMatrix,
    /// Directions for `b1, b4, b7, p, m, n`, in that order.
    pub directions: [JordanMatrix; 6],
}

impl FamilyMap {
    pub fn eval(&self, params: &SolverParams) -> JordanMatrix {
        self.directions
            .iter()
            .zip(params.to_array())
            .fold(self.base.clone(), |acc, (d, t)| &acc + &d.scale(&t))
    }

    /// Direction coordinate vectors.
    pub fn direction_coordinates(&self) -> Vec<Vec<Scalar>> {
        self.directions.iter().map(JordanMatrix::coordinates).collect()
    }
}

/// Base point and unit finite differences of [`construct`]. Exact, since
/// `construct` is affine in the parameters.
pub fn family_map(v: &GenericImaginaryVector) -> Result<FamilyMap, SolverError> {
    let base = construct(v, &SolverParams::zero())?;
    let mut directions = Vec::with_capacity(6);
    for k in 0..6 {
        let mut unit: [Scalar; 6] = std::array::from_fn(|_| Scalar::zero());
        unit[k] = Scalar::one();
        let point = construct(v, &SolverParams::from_array(unit))?;
        directions.push(&point - &base);
    }
    let directions = directions
        .try_into()
        .expect("six directions were pushed");
    Ok(FamilyMap { base, directions })
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Containment {
    Member(SolverParams),
    NotMember,
}

/// Decides whether `a` belongs to the family for `v` by an exact linear
/// solve, returning the witnessing parameters.
pub fn contains(v: &GenericImaginaryVector, a: &JordanMatrix) -> Result<Containment, SolverError> {
    let family = family_map(v)?;
    let system = Matrix::from_columns(&family.direction_coordinates());
    let target: Vec<Scalar> = a
        .coordinates()
        .into_iter()
        .zip(family.base.coordinates())
        .map(|(t, b)| t - b)
        .collect();
    debug_assert_eq!(target.len(), COORDS);
    let solution = linalg::solve(&system, &target);
    let Some(particular) = solution.particular else {
        return Ok(Containment::NotMember);
    };
    let params = SolverParams::from_array(
        particular
            .try_into()
            .expect("six unknowns in the membership system"),
    );
    debug_assert_eq!(&family.eval(&params), a);
    Ok(Containment::Member(params))
}

/// `(A - Re(λ) I, Im(λ))`: the member of `A`'s identity-shift family whose
/// eigenvalue for the same eigenvector is purely imaginary.
pub fn imaginary_shift(a: &JordanMatrix, lambda: &Octonion) -> (JordanMatrix, Octonion) {
    (a.shift_identity(&-lambda.re()), lambda.im())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::EigenPair;
    use crate::octonion::associator;
    use crate::scalar::ratio;
    use BasisUnit::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn o(text: &str) -> Octonion {
        text.parse().unwrap()
    }

    fn ijl() -> GenericImaginaryVector {
        GenericImaginaryVector::from_vector(&OctVector::new(o("i"), o("j"), o("l"))).unwrap()
    }

    fn params(vals: [&str; 6]) -> SolverParams {
        SolverParams::from_array(vals.map(s))
    }

    fn sample_vector() -> GenericImaginaryVector {
        GenericImaginaryVector::new(s("2"), s("-1/3"), s("3/2"), s("5"), s("-2"), s("7/4"), s("-3"))
            .unwrap()
    }

    #[test]
    fn unit_vector_with_zero_params() {
        // x2 = y3 = z8 = 1: b8 and b3 vanish, b2 = 1 - 1 - 1 = -1, b6 = 0.
        let a = construct(&ijl(), &SolverParams::zero()).unwrap();
        assert_eq!(a.b, o("-i"));
        assert_eq!(a.a, o("-l"));
        assert_eq!(a.c, o("-j"));
        assert!(a.is_eigenpair(&EigenPair::with_associator(ijl().to_vector())));
    }

    #[test]
    fn unit_vector_keeps_diagonal_in_b6() {
        let a = construct(&ijl(), &params(["0", "0", "0", "3", "5", "-4"])).unwrap();
        // b6 = (m + n - p) / 2
        assert_eq!(a.b.coeff(JL), &ratio(-1, 1).into());
        assert_eq!(a.b.coeff(I), &s("-1"));
        for u in [J, KL, L] {
            assert!(a.b.coeff(u).is_zero(), "b component {u}");
        }
        assert_eq!((a.p.clone(), a.m.clone(), a.n.clone()), (s("3"), s("5"), s("-4")));
    }

    #[test]
    fn degenerate_vectors_are_rejected() {
        let v = OctVector::new(o("i"), o("j"), o("k"));
        assert_eq!(
            GenericImaginaryVector::from_vector(&v),
            Err(SolverError::DegenerateVector)
        );
        assert_eq!(
            GenericImaginaryVector::new(s("1"), s("0"), s("1"), s("0"), s("0"), s("0"), s("0")),
            Err(SolverError::DegenerateVector)
        );
    }

    #[test]
    fn non_generic_and_real_parts_are_rejected() {
        let v = OctVector::new(o("j"), o("i"), o("l"));
        assert_eq!(
            GenericImaginaryVector::from_vector(&v),
            Err(SolverError::NotGeneric)
        );
        let v = OctVector::new(o("1+i"), o("j"), o("l"));
        assert_eq!(
            GenericImaginaryVector::from_vector(&v),
            Err(SolverError::NonzeroRealPart)
        );
    }

    #[test]
    fn constructed_matrices_are_eigen() {
        let v = sample_vector();
        let pair = EigenPair::with_associator(v.to_vector());
        for vals in [
            ["0", "0", "0", "0", "0", "0"],
            ["1", "-2", "3/5", "7", "-1/2", "4"],
            ["sqrt5", "0", "1", "0", "2-sqrt5", "1"],
        ] {
            let a = construct(&v, &params(vals)).unwrap();
            assert!(a.residual(&pair).is_zero(), "params {vals:?}");
            assert!(a.b.coeff(KL).is_zero());
        }
    }

    #[test]
    fn family_map_matches_construct() {
        let v = sample_vector();
        let family = family_map(&v).unwrap();
        let p = params(["3", "-1/7", "2", "1/2", "0", "-5"]);
        assert_eq!(family.eval(&p), construct(&v, &p).unwrap());
        assert_eq!(linalg::span_rank(&family.direction_coordinates()), 6);
    }

    #[test]
    fn contains_round_trip_and_rejection() {
        let v = sample_vector();
        let p = params(["1/3", "2", "-1", "4", "5/2", "-3"]);
        let a = construct(&v, &p).unwrap();
        assert_eq!(contains(&v, &a).unwrap(), Containment::Member(p));

        let mut bumped = a.clone();
        bumped.b.set(KL, bumped.b.coeff(KL).clone() + Scalar::one());
        assert_eq!(contains(&v, &bumped).unwrap(), Containment::NotMember);
    }

    #[test]
    fn imaginary_shift_cases() {
        let a = JordanMatrix::new(s("2"), s("3"), s("4"), o("i"), o("1+k"), o("j"));
        let (shifted, lambda) = imaginary_shift(&a, &o("5-kl"));
        assert_eq!(lambda, o("-kl"));
        assert_eq!((shifted.p, shifted.m, shifted.n), (s("-3"), s("-2"), s("-1")));
        let (same, l) = imaginary_shift(&a, &o("kl"));
        assert_eq!((same, l), (a.clone(), o("kl")));
        let (_, l) = imaginary_shift(&a, &o("7"));
        assert!(l.is_zero());
    }

    fn generic_with_reals() -> OctVector {
        OctVector::new(o("2+3i"), o("-1+2i+5j"), o("3/2+i-j+2k+4l"))
    }

    #[test]
    fn master_equation_identities() {
        let v = generic_with_reals();
        let sym = formulas::Symbols::from_vector(&v).unwrap();
        let b = o("1+2i-3j+k+5kl-jl+2il+3l");
        let (p, m, n) = (s("2"), s("-1"), s("1/3"));

        // Left-multiplying by conj(x): the i coefficient is 2|x|^2 y3 z8 b5.
        let x_norm = v.x.norm_sq();
        let lhs = &formulas::master_equation(&v, &b, &p, &m, &n) + &v.x.scale(
            &(m.clone() * v.y.norm_sq() + n.clone() * v.z.norm_sq() - p.clone() * x_norm.clone()),
        );
        let left = &v.x.conj() * &lhs;
        let expected = Scalar::from(2) * x_norm.clone() * sym.y3.clone() * sym.z8.clone()
            * b.coeff(KL).clone();
        assert_eq!(left.coeff(I), &expected);

        // With b5 = 0 the j component is 4 x2^2 y3 z8^2 z1.
        let mut b0 = b.clone();
        b0.set(KL, Scalar::zero());
        let master = formulas::master_equation(&v, &b0, &p, &m, &n);
        let j = Scalar::from(4) * sym.x2.clone() * sym.x2.clone() * sym.y3.clone()
            * sym.z8.clone() * sym.z8.clone() * sym.z1.clone();
        assert_eq!(master.coeff(J), &j);
    }

    #[test]
    fn real_part_elimination_chain() {
        // z1 = 0 already; substitute b8 and check the l component.
        let v = OctVector::new(o("2+3i"), o("-1+2i+5j"), o("i-j+2k+4l"));
        let sym = formulas::Symbols::from_vector(&v).unwrap();
        let (b4, b6, b7) = (s("3"), s("-2"), s("1/2"));
        let b8 = formulas::b8(&sym, &b6, &b7).unwrap();
        let b = Octonion::new([s("1"), s("2"), s("-1"), b4.clone(), s("0"), b6.clone(), b7.clone(), b8.clone()]);
        let (p, m, n) = (s("1"), s("2"), s("3"));
        let master = formulas::master_equation(&v, &b, &p, &m, &n);
        assert!(master.coeff(K).is_zero(), "b8 solves the k component");
        let l = Scalar::from(-4) * sym.x2.clone() * sym.x2.clone() * sym.y3.clone() * sym.y3.clone()
            * sym.z8.clone() * sym.y1.clone();
        assert_eq!(master.coeff(L), &l);

        // y1 = 0 as well: b2, b3 clear every component except the real, i and kl
        // parts, and the kl part is -2 x1 |x|^2 times the kl coefficient of λ.
        let v = OctVector::new(o("2+3i"), o("2i+5j"), o("i-j+2k+4l"));
        let sym = formulas::Symbols::from_vector(&v).unwrap();
        let b8 = formulas::b8(&sym, &b6, &b7).unwrap();
        let b2 = formulas::b2(&sym, &b4, &b6, &b7).unwrap();
        let b3 = formulas::b3(&sym, &b4, &b6, &b7).unwrap();
        let b = Octonion::new([s("1"), b2, b3, b4, s("0"), b6, b7, b8]);
        let master = formulas::master_equation(&v, &b, &p, &m, &n);
        for u in [J, K, JL, IL, L] {
            assert!(master.coeff(u).is_zero(), "component {u}");
        }
        let lambda = associator(&v.x, &v.y, &v.z);
        let kl = Scalar::from(-2) * sym.x1.clone() * v.x.norm_sq() * lambda.coeff(KL).clone();
        assert_eq!(master.coeff(KL), &kl);
    }

    #[test]
    fn master_equation_vanishes_on_constructed_b() {
        let v = sample_vector();
        let p = params(["1", "2", "3", "-1", "1/2", "2"]);
        let a = construct(&v, &p).unwrap();
        assert!(formulas::master_equation(&v.to_vector(), &a.b, &p.p, &p.m, &p.n).is_zero());
    }
}
