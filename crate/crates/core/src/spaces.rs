//! Hardy, anti-Hardy and pluriharmonic projections as Fourier-support filters.

use crate::error::OpError;
use crate::poly::{Laurent, LaurentPoly, MonomialIndex};
use crate::scalar::Coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Z1,
    Z2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `P`: onto `H²(T²)`, keeps `i ≥ 0, j ≥ 0`.
pub fn project_p<C: Coefficient>(f: &Laurent<C>) -> Laurent<C> {
    f.filter(MonomialIndex::is_holomorphic)
}

/// `P⁻`: onto the conjugate Hardy space, keeps `i ≤ 0, j ≤ 0`.
pub fn project_pminus<C: Coefficient>(f: &Laurent<C>) -> Laurent<C> {
    f.filter(MonomialIndex::is_antiholomorphic)
}

/// `Q = P + P⁻ − P(·)(0)`: onto `h²(T²)`.
pub fn project_q<C: Coefficient>(f: &Laurent<C>) -> Laurent<C> {
    f.filter(MonomialIndex::is_pluriharmonic)
}

/// `Q − P`: keeps `i ≤ 0, j ≤ 0` without the constant.
pub fn project_q_minus_p<C: Coefficient>(f: &Laurent<C>) -> Laurent<C> {
    f.filter(|m| m.is_antiholomorphic() && *m != MonomialIndex::ONE)
}

/// One-variable projections `P₁, P₂, P₁⁻, P₂⁻`.
pub fn project_partial<C: Coefficient>(f: &Laurent<C>, axis: Axis, sign: Sign) -> Laurent<C> {
    f.filter(|m| {
        let e = match axis {
            Axis::Z1 => m.i,
            Axis::Z2 => m.j,
        };
        match sign {
            Sign::Plus => e >= 0,
            Sign::Minus => e <= 0,
        }
    })
}

pub fn is_pluriharmonic<C: Coefficient>(f: &Laurent<C>) -> bool {
    f.support().all(MonomialIndex::is_pluriharmonic)
}

pub fn is_holomorphic<C: Coefficient>(f: &Laurent<C>) -> bool {
    f.support().all(MonomialIndex::is_holomorphic)
}

/// Membership in the conjugate of `H²₀`: anti-holomorphic, zero constant.
pub fn is_antiholomorphic_zero<C: Coefficient>(f: &Laurent<C>) -> bool {
    f.support()
        .all(|m| m.is_antiholomorphic() && *m != MonomialIndex::ONE)
}

/// `f = f₊ + f₋` with `f₊ = Pf` and `f₋ = (Q − P)f`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub plus: LaurentPoly,
    pub minus: LaurentPoly,
}

pub fn decompose(f: &LaurentPoly) -> Result<Decomposition, OpError> {
    if !is_pluriharmonic(f) {
        return Err(OpError::NotPluriharmonic(f.to_string()));
    }
    Ok(Decomposition {
        plus: project_p(f),
        minus: project_q_minus_p(f),
    })
}
