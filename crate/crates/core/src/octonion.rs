//! Octonions over an exact (or floating) coefficient field.
//!
//! Components are stored in the order `1, i, j, k, kl, jl, il, l`, i.e. an
//! octonion is `w1 + w2 i + w3 j + w4 k + w5 kl + w6 jl + w7 il + w8 l`.
//! The product is the Cayley-Dickson doubling of the quaternions,
//!
//! ```text
//! (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),   a + b l <-> (a, b),
//! ```
//!
//! tabulated once on basis units. With this rule `i l = il`, `k l = kl` and
//! `[i, j, l] = 2 kl`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{split_terms, Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctonionError {
    #[error("invalid octonion term `{0}`")]
    Parse(String),
    #[error("octonion JSON must carry exactly 8 coefficients, found {0}")]
    Length(usize),
}

impl From<ScalarError> for OctonionError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::Parse(tok) => OctonionError::Parse(tok),
            other => OctonionError::Parse(other.to_string()),
        }
    }
}

/// One of the eight basis units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisUnit {
    One,
    I,
    J,
    K,
    KL,
    JL,
    IL,
    L,
}

impl BasisUnit {
    pub const ALL: [BasisUnit; 8] = [
        BasisUnit::One,
        BasisUnit::I,
        BasisUnit::J,
        BasisUnit::K,
        BasisUnit::KL,
        BasisUnit::JL,
        BasisUnit::IL,
        BasisUnit::L,
    ];

    /// Zero-based storage slot.
    pub const fn slot(self) -> usize {
        self as usize
    }

    /// One-based component index, so `KL` is 5 and `L` is 8.
    pub fn index(self) -> usize {
        self.slot() + 1
    }

    pub fn from_slot(slot: usize) -> Option<BasisUnit> {
        BasisUnit::ALL.get(slot).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisUnit::One => "1",
            BasisUnit::I => "i",
            BasisUnit::J => "j",
            BasisUnit::K => "k",
            BasisUnit::KL => "kl",
            BasisUnit::JL => "jl",
            BasisUnit::IL => "il",
            BasisUnit::L => "l",
        }
    }

    pub fn from_name(name: &str) -> Option<BasisUnit> {
        BasisUnit::ALL.into_iter().find(|u| u.name() == name)
    }

    /// `self * other = sign * unit`.
    pub fn times(self, other: BasisUnit) -> (i8, BasisUnit) {
        let (sign, slot) = table()[self.slot()][other.slot()];
        (sign, BasisUnit::ALL[slot as usize])
    }
}

impl fmt::Display for BasisUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Table = [[(i8, u8); 8]; 8];

/// Signed product table of basis units, generated from the doubling rule.
pub fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i8, 0u8); 8]; 8];
        for r in 0..8 {
            for s in 0..8 {
                let mut u = [0i64; 8];
                let mut v = [0i64; 8];
                u[r] = 1;
                v[s] = 1;
                let w = doubling_mul(&u, &v);
                let (slot, &val) = w
                    .iter()
                    .enumerate()
                    .find(|(_, &c)| c != 0)
                    .expect("product of units is a unit");
                t[r][s] = (val as i8, slot as u8);
            }
        }
        t
    })
}

type Quat = [i64; 4];

fn quat_mul(a: &Quat, b: &Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn quat_conj(a: &Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

// w = a + b l with a = (w1, w2, w3, w4) and b = (w8, w7, w6, w5), since
// b l = b0 l + b1 il + b2 jl + b3 kl.
fn split(w: &[i64; 8]) -> (Quat, Quat) {
    ([w[0], w[1], w[2], w[3]], [w[7], w[6], w[5], w[4]])
}

fn join(a: Quat, b: Quat) -> [i64; 8] {
    [a[0], a[1], a[2], a[3], b[3], b[2], b[1], b[0]]
}

/// Direct Cayley-Dickson product on integer octonions.
pub fn doubling_mul(u: &[i64; 8], v: &[i64; 8]) -> [i64; 8] {
    let (a, b) = split(u);
    let (c, d) = split(v);
    let ac = quat_mul(&a, &c);
    let db = quat_mul(&quat_conj(&d), &b);
    let da = quat_mul(&d, &a);
    let bc = quat_mul(&b, &quat_conj(&c));
    let first = [ac[0] - db[0], ac[1] - db[1], ac[2] - db[2], ac[3] - db[3]];
    let second = [da[0] + bc[0], da[1] + bc[1], da[2] + bc[2], da[3] + bc[3]];
    join(first, second)
}

/// An octonion with coefficients in `T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Octonion<T = Scalar> {
    coeffs: [T; 8],
}

/// Octonion with machine-float coefficients.
pub type FloatOctonion = Octonion<f64>;

impl<T> Octonion<T> {
    pub const fn new(coeffs: [T; 8]) -> Self {
        Octonion { coeffs }
    }

    pub fn coeffs(&self) -> &[T; 8] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> [T; 8] {
        self.coeffs
    }

    pub fn coeff(&self, unit: BasisUnit) -> &T {
        &self.coeffs[unit.slot()]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Octonion<U> {
        Octonion::new(self.coeffs.each_ref().map(f))
    }
}

impl<T: Field> Octonion<T> {
    pub fn zero() -> Self {
        Octonion::new(std::array::from_fn(|_| T::zero()))
    }

    pub fn one() -> Self {
        Self::unit(BasisUnit::One)
    }

    pub fn unit(unit: BasisUnit) -> Self {
        Self::scaled_unit(unit, T::one())
    }

    pub fn scaled_unit(unit: BasisUnit, coeff: T) -> Self {
        let mut w = Self::zero();
        w.coeffs[unit.slot()] = coeff;
        w
    }

    pub fn real(value: T) -> Self {
        Self::scaled_unit(BasisUnit::One, value)
    }

    /// Builds an octonion from `(unit, coefficient)` pairs; repeated units add.
    pub fn from_terms(terms: impl IntoIterator<Item = (BasisUnit, T)>) -> Self {
        let mut w = Self::zero();
        for (unit, c) in terms {
            let slot = unit.slot();
            w.coeffs[slot] = w.coeffs[slot].clone() + c;
        }
        w
    }

    pub fn set(&mut self, unit: BasisUnit, value: T) {
        self.coeffs[unit.slot()] = value;
    }

    pub fn re(&self) -> T {
        self.coeffs[0].clone()
    }

    pub fn im(&self) -> Self {
        let mut w = self.clone();
        w.coeffs[0] = T::zero();
        w
    }

    pub fn conj(&self) -> Self {
        let mut w = self.clone();
        for c in &mut w.coeffs[1..] {
            *c = -c.clone();
        }
        w
    }

    /// Euclidean inner product of coefficient vectors, `Re(u conj(v))`.
    pub fn dot(&self, other: &Self) -> T {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `|w|^2`, the sum of squared coefficients.
    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    /// Multiplies every coefficient by the real `s`.
    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// Units with a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = BasisUnit> + '_ {
        BasisUnit::ALL
            .into_iter()
            .filter(|u| !self.coeffs[u.slot()].is_zero())
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    /// Multiplicative inverse `conj(w) / |w|^2`.
    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        let inv = self.norm_sq().try_inv()?;
        Ok(self.conj().scale(&inv))
    }
}

/// `[x, y, z] = (xy)z - x(yz)`.
pub fn associator<T: Field>(x: &Octonion<T>, y: &Octonion<T>, z: &Octonion<T>) -> Octonion<T> {
    &(x * y) * z - x * &(y * z)
}

impl<T: Field> Mul for &Octonion<T> {
    type Output = Octonion<T>;

    fn mul(self, rhs: &Octonion<T>) -> Octonion<T> {
        let t = table();
        let mut out = Octonion::<T>::zero();
        for (r, u) in self.coeffs.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (s, v) in rhs.coeffs.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (sign, slot) = t[r][s];
                let slot = slot as usize;
                let prod = u.clone() * v.clone();
                let acc = std::mem::replace(&mut out.coeffs[slot], T::zero());
                out.coeffs[slot] = if sign > 0 { acc + prod } else { acc - prod };
            }
        }
        out
    }
}

impl<T: Field> Mul for Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: Octonion<T>) -> Octonion<T> {
        &self * &rhs
    }
}

impl<T: Field> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion::new(std::array::from_fn(|k| {
            self.coeffs[k].clone() + rhs.coeffs[k].clone()
        }))
    }
}

impl<T: Field> Add for Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: Octonion<T>) -> Octonion<T> {
        &self + &rhs
    }
}

impl<T: Field> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion::new(std::array::from_fn(|k| {
            self.coeffs[k].clone() - rhs.coeffs[k].clone()
        }))
    }
}

impl<T: Field> Sub for Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: Octonion<T>) -> Octonion<T> {
        &self - &rhs
    }
}

impl<T: Field> Neg for &Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Field> Neg for Octonion<T> {
    type Output = Octonion<T>;
    fn neg(self) -> Octonion<T> {
        -&self
    }
}

impl<T: Field> Zero for Octonion<T> {
    fn zero() -> Self {
        Octonion::zero()
    }
    fn is_zero(&self) -> bool {
        Octonion::is_zero(self)
    }
}

impl<T: Field> One for Octonion<T> {
    fn one() -> Self {
        Octonion::one()
    }
}

impl Octonion<Scalar> {
    pub fn to_float(&self) -> FloatOctonion {
        self.map(Field::to_f64)
    }
}

impl fmt::Display for Octonion<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for unit in BasisUnit::ALL {
            let c = self.coeff(unit);
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let term = if unit == BasisUnit::One {
                text
            } else if c.is_one() {
                unit.name().to_string()
            } else if (-c.clone()).is_one() {
                format!("-{unit}")
            } else if matches!(c, Scalar::Rational(r) if r.is_integer()) {
                format!("{text}{unit}")
            } else if split_terms(&text).len() > 1 {
                format!("({text})*{unit}")
            } else {
                format!("{text}*{unit}")
            };
            if !first && !term.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&term)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

const UNIT_SUFFIXES: [(&str, BasisUnit); 7] = [
    ("kl", BasisUnit::KL),
    ("jl", BasisUnit::JL),
    ("il", BasisUnit::IL),
    ("i", BasisUnit::I),
    ("j", BasisUnit::J),
    ("k", BasisUnit::K),
    ("l", BasisUnit::L),
];

fn parse_term(term: &str) -> Result<(BasisUnit, Scalar), OctonionError> {
    let bad = || OctonionError::Parse(term.to_string());
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (unit, coef) = UNIT_SUFFIXES
        .iter()
        .find_map(|&(name, unit)| body.strip_suffix(name).map(|rest| (unit, rest)))
        .unwrap_or((BasisUnit::One, body));
    let coef = if unit == BasisUnit::One {
        coef
    } else {
        coef.strip_suffix('*').unwrap_or(coef)
    };
    let value = if coef.is_empty() && unit != BasisUnit::One {
        Scalar::one()
    } else {
        coef.parse::<Scalar>().map_err(|_| bad())?
    };
    Ok((unit, if sign < 0 { -value } else { value }))
}

impl FromStr for Octonion<Scalar> {
    type Err = OctonionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s.contains(char::is_whitespace) {
            return Err(OctonionError::Parse(s.to_string()));
        }
        let terms = split_terms(s)
            .into_iter()
            .map(parse_term)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Octonion::from_terms(terms))
    }
}

#[derive(Serialize)]
struct CoeffsRef<'a, T> {
    coeffs: &'a [T; 8],
}

impl<T: Serialize> Serialize for Octonion<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CoeffsRef {
            coeffs: &self.coeffs,
        }
        .serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OctonionRepr {
    Coeffs { coeffs: Vec<Scalar> },
    Text(String),
}

impl<'de> Deserialize<'de> for Octonion<Scalar> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match OctonionRepr::deserialize(deserializer)? {
            OctonionRepr::Coeffs { coeffs } => {
                let len = coeffs.len();
                let arr: [Scalar; 8] = coeffs
                    .try_into()
                    .map_err(|_| D::Error::custom(OctonionError::Length(len)))?;
                Ok(Octonion::new(arr))
            }
            OctonionRepr::Text(text) => text.parse().map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisUnit::*;

    fn o(text: &str) -> Octonion {
        text.parse().unwrap()
    }

    fn u(unit: BasisUnit) -> Octonion {
        Octonion::unit(unit)
    }

    #[test]
    fn quaternion_subalgebra() {
        assert_eq!(&u(I) * &u(J), u(K));
        assert_eq!(&u(J) * &u(K), u(I));
        assert_eq!(&u(K) * &u(I), u(J));
    }

    #[test]
    fn doubling_anchors() {
        assert_eq!(&u(L) * &u(L), -u(One));
        assert_eq!(&u(I) * &u(L), u(IL));
        assert_eq!(&u(J) * &u(L), u(JL));
        assert_eq!(&u(K) * &u(L), u(KL));
        assert_eq!(associator(&u(I), &u(J), &u(L)), Octonion::scaled_unit(KL, 2.into()));
    }

    #[test]
    fn units_square_to_minus_one() {
        for unit in BasisUnit::ALL {
            let expected = if unit == One { u(One) } else { -u(One) };
            assert_eq!(&u(unit) * &u(unit), expected, "{unit}^2");
        }
    }

    #[test]
    fn distinct_imaginary_units_anticommute() {
        for a in &BasisUnit::ALL[1..] {
            for b in &BasisUnit::ALL[1..] {
                if a != b {
                    assert_eq!(&u(*a) * &u(*b), -(&u(*b) * &u(*a)));
                }
            }
        }
    }

    #[test]
    fn quaternionic_triple_associates() {
        assert!(associator(&u(I), &u(J), &u(K)).is_zero());
    }

    #[test]
    fn conjugation() {
        assert_eq!(o("1+i").conj(), o("1-i"));
        assert_eq!(u(KL).conj(), -u(KL));
        assert!(Octonion::<Scalar>::zero().conj().is_zero());
    }

    #[test]
    fn real_imaginary_norm() {
        let w = o("3+2i");
        assert_eq!(w.re(), Scalar::from(3));
        assert_eq!(w.im(), o("2i"));
        assert_eq!(o("1+i+j+k").norm_sq(), Scalar::from(4));
        let w = o("1/2-3j+sqrt5*kl");
        assert_eq!(&w * &w.conj(), Octonion::real(w.norm_sq()));
    }

    #[test]
    fn inverse() {
        let w = o("1+2i-il+3l");
        assert_eq!(&w * &w.try_inv().unwrap(), Octonion::one());
        assert!(Octonion::<Scalar>::zero().try_inv().is_err());
    }

    #[test]
    fn indices_follow_component_order() {
        assert_eq!(KL.index(), 5);
        assert_eq!(L.index(), 8);
        assert_eq!(BasisUnit::from_name("jl"), Some(JL));
    }

    #[test]
    fn text_forms() {
        for text in [
            "0", "3", "2kl", "-kl", "i", "1+i", "sqrt5*j-2il", "1+sqrt5*kl", "1/2*k",
            "(1+sqrt5)*l", "-1/6*sqrt5*k", "1-sqrt5+3i",
        ] {
            assert_eq!(o(text).to_string(), text, "round trip of {text}");
        }
        assert_eq!(o("3k"), Octonion::scaled_unit(K, 3.into()));
        assert_eq!(o("sqrt5*j-2*il"), o("sqrt5j-2il"));
        assert_eq!(o("k+k"), o("2k"));
        assert_eq!(o("-(1+sqrt5)*l"), o("-l-sqrt5*l"));
    }

    #[test]
    fn parse_errors_name_the_term() {
        assert_eq!("2q".parse::<Octonion>(), Err(OctonionError::Parse("2q".into())));
        assert_eq!(
            "i+x*j".parse::<Octonion>(),
            Err(OctonionError::Parse("+x*j".into()))
        );
        assert!("".parse::<Octonion>().is_err());
        assert!("i+".parse::<Octonion>().is_err());
    }

    #[test]
    fn json_forms() {
        let w = o("1/2+sqrt5*kl");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"coeffs":["1/2","0","0","0","sqrt5","0","0","0"]}"#);
        assert_eq!(serde_json::from_str::<Octonion>(&json).unwrap(), w);
        assert_eq!(serde_json::from_str::<Octonion>(r#""1/2+sqrt5*kl""#).unwrap(), w);
        assert!(serde_json::from_str::<Octonion>(r#"{"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn table_agrees_with_direct_doubling() {
        let u = [3, -1, 4, 1, -5, 9, 2, -6];
        let v = [2, 7, -1, 8, 2, -8, 1, 8];
        let a = Octonion::new(u.map(Scalar::from));
        let b = Octonion::new(v.map(Scalar::from));
        assert_eq!(&a * &b, Octonion::new(doubling_mul(&u, &v).map(Scalar::from)));
    }
}
