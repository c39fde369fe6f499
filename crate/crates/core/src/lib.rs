//! Exact representation theory of nilpotent liftings of quantum planes.
//!
//! The library constructs, from a defining datum (G, a, b, chi), the
//! Hopf algebra H(D) generated by a finite abelian group G and two
//! skew-primitive generators x, y with `x^n = y^n = 0`, builds its
//! simple modules as explicit matrices over the cyclotomic field
//! Q(zeta_E), and computes the trace of the antipode on the
//! endomorphism algebra of every self-dual simple module by three
//! independent exact routes that must agree:
//!
//! * a closed product formula in q-integers,
//! * `Tr(A^-1 A^T)` for the closed-form S-adjoint form matrix A,
//! * the same with A recomputed entrywise from the antipode action.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals
//! reduced modulo cyclotomic polynomials, and all comparisons are exact
//! field equality.
//!
//! # Example
//!
//! ```
//! use qplane::datum::uqsl2_datum;
//! use qplane::modules::{exponent, is_self_dual, simple, ModuleRep};
//! use qplane::trace::{form_matrix_semantic, trace_bruteforce, trace_closed};
//! use qplane::CycNumber;
//!
//! let datum = uqsl2_datum(3)?;
//! for lambda in datum.group().characters() {
//!     let module = simple(&datum, &lambda)?;
//!     assert_eq!(module.dim(), exponent(&datum, &lambda)? + 1);
//!     assert!(is_self_dual(&datum, &lambda)?);
//!
//!     // The closed trace formula agrees with Tr(A^-1 A^T) for the
//!     // S-adjoint form matrix computed from the antipode action.
//!     let closed = trace_closed(&datum, &lambda)?;
//!     let form = form_matrix_semantic(&datum, &lambda)?;
//!     assert_eq!(closed, trace_bruteforce(&form)?);
//!
//!     // Traces 1, 1, 0 for exponents 0, 1, 2.
//!     let expected = if module.dim() == 3 {
//!         CycNumber::zero()
//!     } else {
//!         CycNumber::one()
//!     };
//!     assert_eq!(closed, expected);
//! }
//! # Ok::<(), qplane::Error>(())
//! ```

pub mod abelian;
pub mod classify;
pub mod cyclotomic;
pub mod datum;
pub mod error;
pub mod hopf;
pub mod matrix;
pub mod modules;
pub mod trace;

pub use crate::abelian::{AbelianGroup, Character, GroupElement};
pub use crate::cyclotomic::{CycNumber, Rational};
pub use crate::datum::{drinfeld_taft_datum, uqsl2_datum, Datum, DatumSpec};
pub use crate::error::{Error, Result};
pub use crate::hopf::{AlgebraElement, BasisMonomial, TensorElement};
pub use crate::matrix::Matrix;
pub use crate::modules::{SimpleModule, VermaModule};
