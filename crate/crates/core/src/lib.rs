//! Exact Haar integrals of monomials in the entries of O(d), U(d) and
//! Sp(2d), as rational functions of the dimension `d`.
//!
//! ```
//! use haar_core::{integrate_orthogonal, OrthogonalSpec};
//!
//! let spec = OrthogonalSpec::from_rows(&[[2u32, 0], [0, 2]]).unwrap();
//! let r = integrate_orthogonal(&spec);
//! assert_eq!(r.value.to_factored_string(), "(d + 1)/((d - 1)*d*(d + 2))");
//! assert_eq!(r.validity_floor, 2);
//! ```

pub mod arith;
pub mod combinatorics;
pub mod gaussian;
pub mod integrate;
pub mod monomial;

pub use arith::{ArithError, BigInt, BigRational, PolyD, RationalFunction};
pub use integrate::{
    integrate, integrate_orthogonal, integrate_symplectic, integrate_unitary, one_vector_orthogonal,
    one_vector_symplectic, one_vector_unitary, weingarten_balance_check, IntegralResult, Integrator,
    MemoCache,
};
pub use monomial::{
    ExponentMatrix, ExponentSpec, Group, MemoKey, OrthogonalSpec, SpecError, SymplecticSpec,
    UnitarySpec,
};
