//! Chern numbers of the desingularized `(Z/2)^(d-1)` cover `Y` branched
//! along an arrangement, as closed forms in the arrangement data.
//!
//! `Y -> X~` is the cover of the blow-up of `X` at the points of
//! multiplicity at least 3. Values are stored divided by `2^(d-3)`; the
//! absolute numbers are available on demand.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::arrangement::ArrangementProfile;
use crate::error::{Error, Result};
use crate::num::{frac, int, is_integer, pow2, Rational};
use crate::surface::{NumClass, RuledSurface};

/// Invariants of a component `F_p` of the preimage of the exceptional
/// curve over a point of multiplicity `r_p >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCurveInvariants {
    pub r_p: u32,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub self_intersection: BigInt,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub euler_characteristic: BigInt,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub genus: Rational,
}

pub fn fp_invariants(r_p: u32) -> Result<ExceptionalCurveInvariants> {
    if r_p < 3 {
        return Err(Error::Precondition(format!("F_p is only defined for r_p >= 3, got {r_p}")));
    }
    let scale = pow2(r_p - 2);
    let euler = &scale * (4 - BigInt::from(r_p));
    let genus = frac(2 - &euler, 2);
    Ok(ExceptionalCurveInvariants {
        r_p,
        self_intersection: -scale,
        euler_characteristic: euler,
        genus,
    })
}

/// Inputs of the Chern-number formulas. Counts are rational so the same
/// formulas can be evaluated on solved (possibly non-integral) multiplicity
/// data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernInputs {
    pub g: Rational,
    pub e: Rational,
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
    pub f0: Rational,
    pub f1: Rational,
    pub t2: Rational,
}

impl ChernInputs {
    pub fn new(s: RuledSurface, cls: NumClass, d: u32, f0: Rational, f1: Rational, t2: Rational) -> Self {
        Self {
            g: int(s.genus),
            e: int(s.invariant_e),
            a: int(cls.a),
            b: int(cls.b),
            d: int(d),
            f0,
            f1,
            t2,
        }
    }

    pub fn from_profile(p: &ArrangementProfile) -> Self {
        Self::new(
            p.surface,
            p.cls,
            p.d,
            int(p.moment(0)),
            int(p.moment(1)),
            int(p.t_big(2)),
        )
    }

    /// `e(Y) / 2^(d-3) = 16 - 16g + d(-2a^2 e + 4ab + 2ae + 4ag - 4a - 4b) + f1 - t2`.
    pub fn euler_norm(&self) -> Rational {
        let Self { g, e, a, b, d, f1, t2, .. } = self;
        let coeff = -int(2) * a * a * e + int(4) * a * b + int(2) * a * e + int(4) * a * g
            - int(4) * a
            - int(4) * b;
        int(16) - int(16) * g + d * coeff + f1 - t2
    }

    /// `c1^2(Y) / 2^(d-3) = 32 - 32g + d(-a^2 e + 2ab + 4ae + 8ag - 8a - 8b) - 9 f0 + 5 f1 + t2`.
    pub fn c1_sq_norm(&self) -> Rational {
        let Self { g, e, a, b, d, f0, f1, t2 } = self;
        let coeff = -(a * a * e) + int(2) * a * b + int(4) * a * e + int(8) * a * g
            - int(8) * a
            - int(8) * b;
        int(32) - int(32) * g + d * coeff - int(9) * f0 + int(5) * f1 + t2
    }

    /// `(3e(Y) - c1^2(Y)) / 2^(d-3) = 16 - 16g + d[(2b - ae)(5a - 2) + 4a(g - 1)] + 9 f0 - 2 f1 - 4 t2`.
    pub fn three_e_minus_c1_sq_norm(&self) -> Rational {
        let Self { g, e, a, b, d, f0, f1, t2 } = self;
        let coeff = (int(2) * b - a * e) * (int(5) * a - int(2)) + int(4) * a * (g - int(1));
        int(16) - int(16) * g + d * coeff + int(9) * f0 - int(2) * f1 - int(4) * t2
    }

    /// The same `K_Y^2` written as `32 + (8ad - 32) g + d(a(2b - ae) + 4a(e - 2) - 8b) + 5 f1 - 9 f0 + t2`.
    pub fn c1_sq_norm_regrouped(&self) -> Rational {
        let Self { g, e, a, b, d, f0, f1, t2 } = self;
        int(32) + (int(8) * a * d - int(32)) * g
            + d * (a * (int(2) * b - a * e) + int(4) * a * (e - int(2)) - int(8) * b)
            + int(5) * f1
            - int(9) * f0
            + t2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    /// `d - 3`: normalized values are the true ones divided by `2^(d-3)`.
    pub scale_exponent: u32,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub e_y_norm: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub c1_sq_norm: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub three_e_minus_c1_sq_norm: Rational,
    /// Disjoint `(-2)`-curves over the triple points: `2^(d-4) t_3`.
    #[serde(serialize_with = "crate::num::ser_int")]
    pub minus_two_curve_count: BigInt,
    /// Elliptic `(-4)`-curves over the quadruple points: `2^(d-5) t_4`.
    #[serde(serialize_with = "crate::num::ser_int")]
    pub elliptic_minus_four_count: BigInt,
}

impl CoverInvariants {
    pub fn scale(&self) -> BigInt {
        pow2(self.scale_exponent)
    }

    pub fn euler_characteristic(&self) -> Rational {
        &self.e_y_norm * int(self.scale())
    }

    pub fn c1_sq(&self) -> Rational {
        &self.c1_sq_norm * int(self.scale())
    }
}

pub fn cover_invariants(p: &ArrangementProfile) -> Result<CoverInvariants> {
    p.require_star()?;
    let inputs = ChernInputs::from_profile(p);
    let e_y_norm = inputs.euler_norm();
    let c1_sq_norm = inputs.c1_sq_norm();
    let three = inputs.three_e_minus_c1_sq_norm();
    if &e_y_norm * int(3) - &c1_sq_norm != three {
        return Err(Error::Inconsistent(format!(
            "3 e(Y) - c1^2(Y) = {} but closed form gives {three}",
            &e_y_norm * int(3) - &c1_sq_norm
        )));
    }

    // validate_star guarantees d >= 4
    let d = p.d;
    let minus_two_curve_count = pow2(d - 4) * p.t_big(3);
    let elliptic_minus_four_count = if d >= 5 {
        pow2(d - 5) * p.t_big(4)
    } else {
        let t4 = p.t_big(4);
        let q = frac(t4, 2);
        if !is_integer(&q) {
            return Err(Error::NonIntegralCount(format!("2^(d-5) t_4 = {q}")));
        }
        q.to_integer()
    };

    Ok(CoverInvariants {
        scale_exponent: d - 3,
        e_y_norm,
        c1_sq_norm,
        three_e_minus_c1_sq_norm: three,
        minus_two_curve_count,
        elliptic_minus_four_count,
    })
}

/// `H_C(2) = (3e(Y) - c1^2(Y)) / 2^(d-3)`; zero is necessary for `Y` to be a
/// ball quotient.
pub fn hirzebruch_polynomial(p: &ArrangementProfile) -> Result<Rational> {
    Ok(cover_invariants(p)?.three_e_minus_c1_sq_norm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalHint {
    /// `K_Y^2 / 2^(d-3)`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub c1_sq_norm: Rational,
    pub positive: bool,
    /// `a >= 8`: positivity of `K_Y^2` (hence general type) is then guaranteed.
    pub general_type_guaranteed: bool,
}

pub fn canonical_positivity_hint(p: &ArrangementProfile) -> Result<CanonicalHint> {
    let inv = cover_invariants(p)?;
    let regrouped = ChernInputs::from_profile(p).c1_sq_norm_regrouped();
    if regrouped != inv.c1_sq_norm {
        return Err(Error::Inconsistent(format!(
            "K_Y^2 forms disagree: {} vs {regrouped}",
            inv.c1_sq_norm
        )));
    }
    Ok(CanonicalHint {
        positive: inv.c1_sq_norm.is_positive(),
        c1_sq_norm: inv.c1_sq_norm,
        general_type_guaranteed: p.cls.a >= 8,
    })
}

/// True when the normalized values are whole numbers and the curve counts
/// are non-negative.
pub fn all_integral(inv: &CoverInvariants) -> bool {
    [&inv.e_y_norm, &inv.c1_sq_norm, &inv.three_e_minus_c1_sq_norm]
        .iter()
        .all(|q| is_integer(q))
        && !inv.minus_two_curve_count.is_negative()
        && !inv.elliptic_minus_four_count.is_negative()
}
