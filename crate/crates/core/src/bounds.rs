//! Lower bounds on Harbourne constants and the Hirzebruch-type inequalities
//! they come from.
//!
//! The inequalities follow from a Miyaoka-Sakai type bound on the cover `Y`,
//! which needs `K_Y` nef. That is known under the extra four-curve
//! hypothesis; bounds are still evaluated when it is not established, and
//! the report says so.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arrangement::{ArrangementProfile, CheckName, CheckStatus};
use crate::error::{Error, Result};
use crate::incidence::CurveStats;
use crate::num::{frac, int, Rational};
use crate::surface::RuledSurface;

/// Hirzebruch's contribution `m(E)` for the two curve types that occur.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MValue {
    /// A single smooth rational `(-2)`-curve.
    MinusTwoRational,
    /// A smooth rational curve of self-intersection `-e`.
    RationalSelfIntersectionMinusE { e: i64 },
}

impl MValue {
    pub fn value(&self) -> Rational {
        match *self {
            MValue::MinusTwoRational => frac(9, 2),
            MValue::RationalSelfIntersectionMinusE { e } => int(2 + e) + frac(1, e),
        }
    }
}

/// `T . E_p = -1 + (r_p - 1)/2`.
pub fn t_dot_exceptional(r_p: u32) -> Result<Rational> {
    if r_p < 3 {
        return Err(Error::Precondition(format!("only points with r_p >= 3 are blown up, got {r_p}")));
    }
    Ok(int(-1) + frac(i64::from(r_p) - 1, 2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictTransformDot {
    pub curve_index: u32,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub value: Rational,
    pub nonnegative: bool,
    /// `f0^j - t2^j / 2`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub excess: Rational,
    /// `h (d - 1) / k` for the largest multiplicity `k` on the curve.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub excess_lower: Rational,
    /// `f0^j - t2^j/2 >= h(d-1)/k >= h`.
    pub chain_holds: bool,
}

/// `T . C_j' = 2ae - 2b + (2g - e - 2)a + h/2 + f0^j - t2^j/2`.
pub fn t_dot_strict_transform(p: &ArrangementProfile, cs: &CurveStats) -> Result<StrictTransformDot> {
    p.require_star()?;
    let h = p.h();
    for (&k, &n) in &cs.t_k_j {
        if n > p.t_k(k) {
            return Err(Error::InconsistentCurveStats(format!(
                "curve {} has {n} points of multiplicity {k}, profile has {}",
                cs.curve_index,
                p.t_k(k)
            )));
        }
    }
    let excess_sum = BigInt::from(cs.excess_sum());
    let expected = &h * BigInt::from(p.d - 1);
    if excess_sum != expected {
        return Err(Error::InconsistentCurveStats(format!(
            "curve {}: sum (r_p - 1) = {excess_sum}, expected h (d - 1) = {expected}",
            cs.curve_index
        )));
    }
    let (a, b) = (int(p.cls.a), int(p.cls.b));
    let (g, e) = (int(p.surface.genus), int(p.surface.invariant_e));
    let excess = int(cs.f0_j) - frac(cs.t2_j as i64, 2);
    let value = int(2) * &a * &e - int(2) * &b + (int(2) * &g - &e - int(2)) * &a
        + frac(h.clone(), 2)
        + &excess;
    let k = cs.max_multiplicity().unwrap_or(2);
    let excess_lower = frac(&h * BigInt::from(p.d - 1), k);
    let chain_holds = excess >= excess_lower && excess_lower >= int(h);
    Ok(StrictTransformDot {
        curve_index: cs.curve_index,
        nonnegative: !value.is_negative(),
        value,
        excess,
        excess_lower,
        chain_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchCheck {
    /// `t2 + (3/4) t3`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub lhs: Rational,
    /// `-16 + 16g + sum_{k>=5} (2k - 9) t_k + d(e(5a^2 - 2a) - 10ab - 4ag + 4a + 4b)`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub rhs: Rational,
    pub holds: bool,
    /// `16 - 16g + d(2ae - 5a^2 e + 10ab + 4ag - 4a - 4b) + 9 f0 - 2 f1 - 4 t2 - t4 - (9/4) t3`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub unrearranged_residual: Rational,
    pub unrearranged_holds: bool,
}

fn high_multiplicity_sum(p: &ArrangementProfile) -> Rational {
    p.t.iter()
        .filter(|(&k, _)| k >= 5)
        .map(|(&k, &n)| int(2 * i64::from(k) - 9) * int(n))
        .sum()
}

fn lhs_t2_t3(p: &ArrangementProfile) -> Rational {
    int(p.t_big(2)) + frac(3, 4) * int(p.t_big(3))
}

pub fn hirzebruch_inequality(p: &ArrangementProfile) -> Result<HirzebruchCheck> {
    p.require_star()?;
    let (a, b) = (int(p.cls.a), int(p.cls.b));
    let (g, e, d) = (int(p.surface.genus), int(p.surface.invariant_e), int(p.d));

    let lhs = lhs_t2_t3(p);
    let rhs = int(-16)
        + int(16) * &g
        + high_multiplicity_sum(p)
        + &d * (&e * (int(5) * &a * &a - int(2) * &a) - int(10) * &a * &b - int(4) * &a * &g
            + int(4) * &a
            + int(4) * &b);

    let st = p.stats();
    let residual = int(16) - int(16) * &g
        + &d * (int(2) * &a * &e - int(5) * &a * &a * &e + int(10) * &a * &b + int(4) * &a * &g
            - int(4) * &a
            - int(4) * &b)
        + int(9) * int(st.f0)
        - int(2) * int(st.f1)
        - int(4) * int(p.t_big(2))
        - int(p.t_big(4))
        - frac(9, 4) * int(p.t_big(3));

    let check = HirzebruchCheck {
        holds: lhs >= rhs,
        unrearranged_holds: !residual.is_negative(),
        lhs,
        rhs,
        unrearranged_residual: residual,
    };
    if check.holds != check.unrearranged_holds || &check.lhs - &check.rhs != check.unrearranged_residual {
        return Err(Error::Inconsistent(format!(
            "Hirzebruch inequality forms disagree: lhs - rhs = {}, residual = {}",
            &check.lhs - &check.rhs,
            check.unrearranged_residual
        )));
    }
    Ok(check)
}

fn nonzero_f0(p: &ArrangementProfile) -> Result<Rational> {
    let f0 = p.moment(0);
    if f0.is_zero() {
        return Err(Error::EmptySingularLocus);
    }
    Ok(int(f0))
}

fn tail_terms(p: &ArrangementProfile, f0: &Rational) -> Rational {
    let g = int(p.surface.genus);
    (int(16) * g + int(4) * int(p.t_big(2)) + int(p.t_big(4))) / (int(2) * f0)
        + int(9) * int(p.t_big(3)) / (int(8) * f0)
}

/// `-9/2 - 8/f0 + (d/f0)((ae - 2b)(3a - 2)/2 - 2a(g - 1)) + (16g + 4t2 + t4)/(2 f0) + 9 t3/(8 f0)`.
pub fn thm47_bound(p: &ArrangementProfile) -> Result<Rational> {
    let f0 = nonzero_f0(p)?;
    p.require_star()?;
    let (a, b) = (int(p.cls.a), int(p.cls.b));
    let (g, e, d) = (int(p.surface.genus), int(p.surface.invariant_e), int(p.d));
    let coeff = (&a * &e - int(2) * &b) * (int(3) * &a - int(2)) / int(2) - int(2) * &a * (&g - int(1));
    Ok(frac(-9, 2) - int(8) / &f0 + &d / &f0 * coeff + tail_terms(p, &f0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropC0Bound {
    /// `-9/2 + (d/f0)(ae(2 - 3a) - 4a(g - 1))/2 + (16g + 4t2 + t4)/(2 f0) + 9 t3/(8 f0)`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub value: Rational,
    /// `t2 + (3/4) t3`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub lhs: Rational,
    /// `4(e + 1/e) - 8 + 16g + sum_{k>=5}(2k - 9) t_k + d(-5a^2 e + 2ae - 4ag + 4a)`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub modified_rhs: Rational,
    pub modified_holds: bool,
    /// Same with `4(e + 1/e) - 8` replaced by its lower bound `9` for `e >= 4`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub relaxed_rhs: Rational,
    pub relaxed_holds: bool,
}

/// Bound for arrangements missing the normalized section `C0`; such curves
/// have `0 = C.C0 = b - ae`.
pub fn prop_c0_bound(p: &ArrangementProfile) -> Result<PropC0Bound> {
    if !p.c0_disjoint {
        return Err(Error::C0DisjointRequired);
    }
    let f0 = nonzero_f0(p)?;
    p.require_star()?;
    let (ai, bi, ei) = (p.cls.a, p.cls.b, p.surface.invariant_e);
    if BigInt::from(bi) != BigInt::from(ai) * BigInt::from(ei) {
        return Err(Error::BNotAe { a: ai, b: bi, e: ei });
    }
    let (a, g, e, d) = (int(ai), int(p.surface.genus), int(ei), int(p.d));

    let coeff = (&a * &e * (int(2) - int(3) * &a) - int(4) * &a * (&g - int(1))) / int(2);
    let value = frac(-9, 2) + &d / &f0 * coeff + tail_terms(p, &f0);

    let lhs = lhs_t2_t3(p);
    let common = int(16) * &g
        + high_multiplicity_sum(p)
        + &d * (int(-5) * &a * &a * &e + int(2) * &a * &e - int(4) * &a * &g + int(4) * &a);
    let modified_rhs = int(4) * (&e + int(1) / &e) - int(8) + &common;
    let relaxed_rhs = int(9) + common;
    Ok(PropC0Bound {
        value,
        modified_holds: lhs >= modified_rhs,
        relaxed_holds: lhs >= relaxed_rhs,
        lhs,
        modified_rhs,
        relaxed_rhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalBranch {
    /// `b > ae`.
    StrictB,
    /// `b = ae`.
    BoundaryB,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalBound {
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub value: Rational,
    pub branch: GlobalBranch,
}

/// Lower bound for `H_{a,b}(X)`, the infimum over admissible arrangements:
/// `-11/2 + (ae - 2b)(3a - 2)/2 - 2ag` when `b > ae`,
/// `-9/2 + (ae(2 - 3a) - 4ag)/2` when `b = ae`.
pub fn global_bound(s: RuledSurface, a: i64, b: i64) -> Result<GlobalBound> {
    if s.invariant_e < 4 || a <= 0 {
        return Err(Error::ParameterRange(format!(
            "global bound needs e >= 4 and a > 0, got e = {}, a = {a}",
            s.invariant_e
        )));
    }
    let ae = BigInt::from(a) * s.e();
    let (aq, bq, g, e) = (int(a), int(b), int(s.genus), int(s.invariant_e));
    let b_big = BigInt::from(b);
    if b_big > ae {
        let value = frac(-11, 2) + (&aq * &e - int(2) * &bq) * (int(3) * &aq - int(2)) / int(2)
            - int(2) * &aq * &g;
        Ok(GlobalBound { value, branch: GlobalBranch::StrictB })
    } else if b_big == ae {
        let value = frac(-9, 2) + (&aq * &e * (int(2) - int(3) * &aq) - int(4) * &aq * &g) / int(2);
        Ok(GlobalBound { value, branch: GlobalBranch::BoundaryB })
    } else {
        Err(Error::ParameterRange(format!("global bound needs b >= ae, got b = {b}, ae = {ae}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollarySideConditions {
    #[serde(serialize_with = "crate::num::ser_int")]
    pub f0: BigInt,
    /// `2ab - a^2 e + 2`.
    #[serde(serialize_with = "crate::num::ser_int")]
    pub f0_lower: BigInt,
    pub f0_exceeds_h_plus_1: bool,
    pub f0_at_least_8: bool,
}

/// The counting facts the global bound rests on: `f0 >= 2ab - a^2 e + 2`
/// and, for `b > ae`, `f0 >= 8`.
pub fn corollary_side_conditions(p: &ArrangementProfile) -> CorollarySideConditions {
    let f0 = p.moment(0);
    let f0_lower = p.h() + 2;
    CorollarySideConditions {
        f0_exceeds_h_plus_1: f0 >= f0_lower,
        f0_at_least_8: f0 >= BigInt::from(8),
        f0,
        f0_lower,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrictTransformVariant {
    General,
    C0Disjoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictTransformBound {
    pub variant: StrictTransformVariant,
    /// Self-intersection of the strict transform after blowing up every
    /// singular point: `f0 H`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub dtilde_sq: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub dtilde_sq_lower: Rational,
    pub holds: bool,
}

pub fn strict_transform_bound(p: &ArrangementProfile) -> Result<StrictTransformBound> {
    let f0 = nonzero_f0(p)?;
    let harbourne = p.harbourne_constant()?;
    let (a, b) = (int(p.cls.a), int(p.cls.b));
    let (g, e, d) = (int(p.surface.genus), int(p.surface.invariant_e), int(p.d));
    let (t2, t3, t4) = (int(p.t_big(2)), int(p.t_big(3)), int(p.t_big(4)));
    let tail = int(8) * &g + int(2) * &t2 + &t4 / int(2) + int(9) * &t3 / int(8);

    let c0_variant = p.c0_disjoint && p.cls.b as i128 == p.cls.a as i128 * p.surface.invariant_e as i128;
    let (variant, lower, via_h_bound) = if c0_variant {
        let lower = frac(-9, 2) * &f0
            + &d * ((&a * &e * (int(2) - int(3) * &a) - int(4) * &a * (&g - int(1))) / int(2))
            + tail;
        (StrictTransformVariant::C0Disjoint, lower, prop_c0_bound(p)?.value * &f0)
    } else {
        let lower = int(-8) - frac(9, 2) * &f0
            + &d * ((&a * &e - int(2) * &b) * (int(3) * &a - int(2)) / int(2) - int(2) * &a * (&g - int(1)))
            + tail;
        (StrictTransformVariant::General, lower, thm47_bound(p)? * &f0)
    };
    if lower != via_h_bound {
        return Err(Error::Inconsistent(format!(
            "strict transform bound {lower} differs from f0 times the H-bound {via_h_bound}"
        )));
    }
    let dtilde_sq = harbourne * &f0;
    Ok(StrictTransformBound { variant, holds: dtilde_sq >= lower, dtilde_sq, dtilde_sq_lower: lower })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub harbourne: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub thm47_rhs: Rational,
    #[serde(serialize_with = "crate::num::ser_opt_rational")]
    pub prop_c0_rhs: Option<Rational>,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub hirzebruch_lhs: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub hirzebruch_rhs: Rational,
    pub global_bound: Option<GlobalBound>,
    pub strict_transform: StrictTransformBound,
    /// Status of the four-curve hypothesis under which the bounds are theorems.
    pub extra_assumption: CheckStatus,
    /// `b = ae`: the sign remark in the global corollary uses `b > ae`.
    pub boundary_b_eq_ae: bool,
    pub satisfied: BTreeMap<String, bool>,
}

impl BoundReport {
    /// True iff the hypotheses are established and some guaranteed
    /// inequality nevertheless fails: the input cannot come from an honest
    /// arrangement.
    pub fn falsifies_hypotheses(&self) -> bool {
        self.extra_assumption == CheckStatus::Pass && self.satisfied.values().any(|ok| !ok)
    }
}

pub fn evaluate(p: &ArrangementProfile) -> Result<BoundReport> {
    let harbourne = p.harbourne_constant()?;
    let thm47_rhs = thm47_bound(p)?;
    let hirz = hirzebruch_inequality(p)?;
    let strict_transform = strict_transform_bound(p)?;
    let extra_assumption = p
        .validate_extra()
        .status_of(CheckName::FourCurveCondition)
        .unwrap_or(CheckStatus::Unverifiable);
    let boundary = BigInt::from(p.cls.b) == BigInt::from(p.cls.a) * p.surface.e();

    let mut satisfied = BTreeMap::new();
    satisfied.insert("harbourne_ge_thm47".to_owned(), harbourne >= thm47_rhs);
    satisfied.insert("hirzebruch_inequality".to_owned(), hirz.holds);
    satisfied.insert("strict_transform_bound".to_owned(), strict_transform.holds);

    let prop = if p.c0_disjoint && boundary { Some(prop_c0_bound(p)?) } else { None };
    if let Some(pc) = &prop {
        satisfied.insert("harbourne_ge_prop_c0".to_owned(), harbourne >= pc.value);
        satisfied.insert("modified_hirzebruch_inequality".to_owned(), pc.modified_holds);
        satisfied.insert("relaxed_modified_hirzebruch_inequality".to_owned(), pc.relaxed_holds);
    }

    let global = global_bound(p.surface, p.cls.a, p.cls.b)?;
    satisfied.insert("harbourne_ge_global".to_owned(), harbourne >= global.value);
    match global.branch {
        GlobalBranch::StrictB => {
            satisfied.insert("thm47_ge_global".to_owned(), thm47_rhs >= global.value);
            let side = corollary_side_conditions(p);
            satisfied.insert("f0_exceeds_h_plus_1".to_owned(), side.f0_exceeds_h_plus_1);
            satisfied.insert("f0_at_least_8".to_owned(), side.f0_at_least_8);
        }
        GlobalBranch::BoundaryB => {
            if let Some(pc) = &prop {
                satisfied.insert("prop_c0_ge_global".to_owned(), pc.value >= global.value);
            }
        }
    }
    satisfied.insert("f0_at_least_d".to_owned(), p.moment(0) >= BigInt::from(p.d));

    Ok(BoundReport {
        harbourne,
        thm47_rhs,
        prop_c0_rhs: prop.map(|pc| pc.value),
        hirzebruch_lhs: hirz.lhs,
        hirzebruch_rhs: hirz.rhs,
        global_bound: Some(global),
        strict_transform,
        extra_assumption,
        boundary_b_eq_ae: boundary,
        satisfied,
    })
}
