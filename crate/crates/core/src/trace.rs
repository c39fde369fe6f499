//! The S-adjoint form matrix of a self-dual simple module and the trace
//! of the antipode on its endomorphism algebra, computed by three
//! independent routes that must agree exactly:
//!
//! 1. [`trace_closed`]: the closed formula
//!    `(-1)^e lambda(a)^e q^(-C(e+1,2)) (e+1)_q`.
//! 2. `trace_bruteforce(form_matrix_closed(..))`: `Tr(A^-1 A^T)` with
//!    the closed anti-diagonal entries
//!    `a_{i,e-i} = (-1)^i q^(-C(i,2)+e i) lambda(a)^-i`, where the
//!    inverse is taken by full Gaussian elimination.
//! 3. `trace_bruteforce(form_matrix_semantic(..))`: the same with the
//!    form matrix computed entrywise from first principles, as
//!    `a_{i,j} = f_0(S(x^i) . v_j)` through the antipode in H(D) and the
//!    module's action matrices (`f_0` is the functional dual to the top
//!    basis vector).

use crate::abelian::Character;
use crate::cyclotomic::{balanced_q_integer, q_integer, CycNumber};
use crate::datum::Datum;
use crate::error::{Error, Result};
use crate::hopf::AlgebraElement;
use crate::matrix::Matrix;
use crate::modules::{exponent, is_self_dual, simple, ModuleRep};

/// The matrix of the S-adjoint bilinear form on L(lambda) in the
/// standard basis. For a self-dual weight its support is the
/// anti-diagonal i + j = e, with every anti-diagonal entry nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    matrix: Matrix<CycNumber>,
}

impl FormMatrix {
    pub fn new(matrix: Matrix<CycNumber>) -> Self {
        assert_eq!(matrix.rows(), matrix.cols());
        FormMatrix { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<CycNumber> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycNumber {
        &self.matrix[(i, j)]
    }

    /// Whether the support is exactly the full anti-diagonal.
    pub fn is_anti_diagonal(&self) -> bool {
        let e = self.size() - 1;
        for i in 0..self.size() {
            for j in 0..self.size() {
                let on_diag = i + j == e;
                if self.matrix[(i, j)].is_zero() == on_diag {
                    return false;
                }
            }
        }
        true
    }
}

/// The form matrix from the closed entry formula
/// `a_{i,e-i} = (-1)^i q^(-C(i,2) + e i) lambda(a)^-i`.
pub fn form_matrix_closed(datum: &Datum, lambda: &Character) -> Result<FormMatrix> {
    if !is_self_dual(datum, lambda)? {
        return Err(Error::NotSelfDual);
    }
    let e = exponent(datum, lambda)?;
    let lam_a_inv = lambda.eval(datum.a())?.inv().expect("root of unity");
    let mut out = Matrix::zeros(e + 1, e + 1);
    for i in 0..=e {
        let sign = if i % 2 == 0 {
            CycNumber::one()
        } else {
            -CycNumber::one()
        };
        let binom2 = (i * i.saturating_sub(1) / 2) as i64;
        let q_pow = datum.q_pow(-binom2 + (e * i) as i64);
        out[(i, e - i)] = &(&sign * &q_pow) * &lam_a_inv.pow(i as i64);
    }
    Ok(FormMatrix::new(out))
}

/// The form matrix computed with no closed formula: entry (i, j) is the
/// top coordinate of `S(x^i)` applied to basis vector j of L(lambda),
/// with the antipode taken in H(D).
pub fn form_matrix_semantic(datum: &Datum, lambda: &Character) -> Result<FormMatrix> {
    if !is_self_dual(datum, lambda)? {
        return Err(Error::NotSelfDual);
    }
    let module = simple(datum, lambda)?;
    let e = module.exponent();
    let x = AlgebraElement::x(datum);
    let mut out = Matrix::zeros(e + 1, e + 1);
    let mut x_pow = AlgebraElement::one(datum);
    for i in 0..=e {
        let s_xi = x_pow.antipode();
        for j in 0..=e {
            let mut v = vec![CycNumber::zero(); e + 1];
            v[j] = CycNumber::one();
            let image = module.apply(&s_xi, &v)?;
            out[(i, j)] = image[e].clone();
        }
        if i < e {
            x_pow = x_pow.normal_product(&x)?;
        }
    }
    Ok(FormMatrix::new(out))
}

/// `Tr(A^-1 A^T)`, with the inverse taken by full Gaussian elimination
/// (deliberately ignoring the anti-diagonal structure).
pub fn trace_bruteforce(form: &FormMatrix) -> Result<CycNumber> {
    let inv = form.matrix().inverse()?;
    Ok(inv.mul(&form.matrix().transpose()).trace())
}

/// The closed trace formula `(-1)^e lambda(a)^e q^(-C(e+1,2)) (e+1)_q`.
pub fn trace_closed(datum: &Datum, lambda: &Character) -> Result<CycNumber> {
    if !is_self_dual(datum, lambda)? {
        return Err(Error::NotSelfDual);
    }
    let e = exponent(datum, lambda)? as u64;
    let sign = if e.is_multiple_of(2) {
        CycNumber::one()
    } else {
        -CycNumber::one()
    };
    let lam_a = lambda.eval(datum.a())?;
    let binom2 = ((e + 1) * e / 2) as i64;
    let value = &(&sign * &lam_a.pow(e as i64)) * &datum.q_pow(-binom2);
    Ok(&value * &q_integer(e + 1, datum.q()))
}

/// The specialization for u_q(sl2): `(-1)^e [e+1]_r` in the balanced
/// q-integer.
pub fn trace_special_sl2(e: u64, r: &CycNumber) -> Result<CycNumber> {
    let value = balanced_q_integer(e + 1, r)?;
    Ok(if e.is_multiple_of(2) { value } else { -value })
}
