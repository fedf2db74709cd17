//! Formula-free check of the eigen-equation.
//!
//! For fixed `v` and `λ`, `A v - v λ` is affine in the 27 real coordinates of
//! a Hermitian `A`. The system is assembled by evaluating [`JordanMatrix::apply`]
//! on each coordinate basis matrix and solved by exact Gauss-Jordan
//! elimination, so nothing here depends on the closed-form solution.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::jordan::{coordinate_name, JordanMatrix, OctVector, COORDS};
use crate::linalg::{self, Matrix};
use crate::octonion::{BasisUnit, Octonion};
use crate::scalar::{Field, Scalar};
use crate::solver::{self, GenericImaginaryVector, SolverError, SolverParams};

/// Row count: three octonion equations, eight real components each.
pub const EQUATIONS: usize = 24;

/// Index of `b5` among the Jordan coordinates.
pub const B5: usize = 3 + 8 + BasisUnit::KL.slot();

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// `matrix * coords(A) = rhs` encodes `A v = v λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLinearSystem<T = Scalar> {
    pub matrix: Matrix<T>,
    pub rhs: Vec<T>,
}

impl<T: Field> RealLinearSystem<T> {
    /// `matrix * coords - rhs`, which is the flattened residual of `A`.
    pub fn evaluate(&self, coords: &[T]) -> Vec<T> {
        self.matrix
            .mul_vec(coords)
            .into_iter()
            .zip(&self.rhs)
            .map(|(l, r)| l - r.clone())
            .collect()
    }

    pub fn is_solution(&self, coords: &[T]) -> bool {
        self.evaluate(coords).iter().all(Zero::is_zero)
    }

    /// True when `direction` solves the homogeneous system.
    pub fn is_null_direction(&self, direction: &[T]) -> bool {
        self.matrix.mul_vec(direction).iter().all(Zero::is_zero)
    }
}

/// Assembles the system for `A v = v λ`.
pub fn build_system<T: Field>(v: &OctVector<T>, lambda: &Octonion<T>) -> RealLinearSystem<T> {
    let columns: Vec<Vec<T>> = (0..COORDS)
        .map(|u| {
            let mut coords = vec![T::zero(); COORDS];
            coords[u] = T::one();
            JordanMatrix::from_coordinates(&coords).apply(v).flatten()
        })
        .collect();
    RealLinearSystem {
        matrix: Matrix::from_columns(&columns),
        rhs: v.right_mul(lambda).flatten(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Empty,
    Nonempty,
}

/// All Hermitian solutions: `particular + span(nullspace_basis)`.
///
/// The null space of the coefficient matrix is reported even when the system
/// is inconsistent, so `nullity == nullspace_basis.len() == 27 - rank` always.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSolutionSet<T = Scalar> {
    pub status: Status,
    pub particular: Option<Vec<T>>,
    pub nullspace_basis: Vec<Vec<T>>,
    pub nullity: usize,
}

impl<T: Field> AffineSolutionSet<T> {
    pub fn is_empty(&self) -> bool {
        self.status == Status::Empty
    }

    /// Re-substitutes the particular solution and every basis direction.
    pub fn verify(&self, system: &RealLinearSystem<T>) -> bool {
        self.particular
            .as_ref()
            .is_none_or(|s| system.is_solution(s))
            && self
                .nullspace_basis
                .iter()
                .all(|d| system.is_null_direction(d))
    }

    pub fn particular_matrix(&self) -> Option<JordanMatrix<T>> {
        self.particular
            .as_deref()
            .map(JordanMatrix::from_coordinates)
    }
}

pub fn solve<T: Field>(system: &RealLinearSystem<T>) -> AffineSolutionSet<T> {
    let sol = linalg::solve(&system.matrix, &system.rhs);
    let set = AffineSolutionSet {
        status: if sol.particular.is_some() {
            Status::Nonempty
        } else {
            Status::Empty
        },
        particular: sol.particular,
        nullity: COORDS - sol.rank,
        nullspace_basis: sol.nullspace,
    };
    debug_assert!(set.verify(system));
    set
}

/// Solution set of `A v = v λ`.
pub fn solution_set<T: Field>(v: &OctVector<T>, lambda: &Octonion<T>) -> AffineSolutionSet<T> {
    solve(&build_system(v, lambda))
}

/// JSON report of a solution set.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionReport {
    pub status: Status,
    pub nullity: usize,
    pub unknowns: Vec<String>,
    pub particular: Option<Vec<Scalar>>,
    pub basis: Vec<Vec<Scalar>>,
}

impl From<&AffineSolutionSet> for SolutionReport {
    fn from(set: &AffineSolutionSet) -> Self {
        SolutionReport {
            status: set.status,
            nullity: set.nullity,
            unknowns: (0..COORDS).map(coordinate_name).collect(),
            particular: set.particular.clone(),
            basis: set.nullspace_basis.clone(),
        }
    }
}

/// Outcome of comparing the closed-form family with the oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub nullity: usize,
    pub nullity_is_six: bool,
    pub constructed_solve_system: bool,
    pub b5_vanishes: bool,
    pub spans_agree: bool,
    /// Human-readable description of each failed check with its witness.
    pub failures: Vec<String>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for one vector:
/// 1. the oracle's solution set has nullity 6;
/// 2. each `construct(v, P)` for `P` in `samples` solves the oracle system;
/// 3. `b5 = 0` on the particular solution and every null direction;
/// 4. the six family directions span exactly the oracle's null space.
pub fn cross_validate(
    v: &GenericImaginaryVector,
    samples: &[SolverParams],
) -> Result<CrossValidation, OracleError> {
    let vector = v.to_vector();
    let system = build_system(&vector, &v.associator());
    let set = solve(&system);
    let mut failures = Vec::new();

    let nullity_is_six = set.nullity == 6 && !set.is_empty();
    if !nullity_is_six {
        failures.push(format!(
            "oracle: status {:?}, nullity {} (expected nonempty, 6)",
            set.status, set.nullity
        ));
    }

    let mut constructed_solve_system = true;
    for params in samples {
        let a = solver::construct(v, params)?;
        if !system.is_solution(&a.coordinates()) {
            constructed_solve_system = false;
            failures.push(format!(
                "construct({:?}) does not solve the system: residual {:?}",
                params.to_array().map(|s| s.to_string()),
                system
                    .evaluate(&a.coordinates())
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            ));
        }
    }

    let mut b5_vanishes = true;
    for (label, coords) in set
        .particular
        .iter()
        .map(|p| ("particular", p))
        .chain(set.nullspace_basis.iter().map(|d| ("basis", d)))
    {
        if !coords[B5].is_zero() {
            b5_vanishes = false;
            failures.push(format!("{label} solution has b5 = {}", coords[B5]));
        }
    }

    let family = solver::family_map(v)?;
    let directions = family.direction_coordinates();
    let rank_dirs = linalg::span_rank(&directions);
    let mut joint = directions.clone();
    joint.extend(set.nullspace_basis.iter().cloned());
    let rank_joint = linalg::span_rank(&joint);
    let spans_agree = rank_dirs == 6 && rank_joint == 6 && set.nullity == 6;
    if !spans_agree {
        failures.push(format!(
            "span mismatch: rank(directions) = {rank_dirs}, rank(directions + null space) = {rank_joint}, nullity = {}",
            set.nullity
        ));
    }

    Ok(CrossValidation {
        nullity: set.nullity,
        nullity_is_six,
        constructed_solve_system,
        b5_vanishes,
        spans_agree,
        failures,
    })
}
