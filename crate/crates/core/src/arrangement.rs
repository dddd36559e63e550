//! Abstract transversal-arrangement profiles.
//!
//! A profile records the ambient surface, the common class `aC0 + bf` of
//! the `d` curves, and the multiplicity counts `t_k` (number of points on
//! exactly `k` curves). Every invariant the rest of the crate computes is a
//! function of this data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{frac, Rational};
use crate::surface::{NumClass, RuledSurface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementProfile {
    pub surface: RuledSurface,
    #[serde(rename = "class")]
    pub cls: NumClass,
    pub d: u32,
    /// Sparse map `k -> t_k`. Zero entries are allowed but carry no data.
    pub t: BTreeMap<u32, u64>,
    /// No curve of the arrangement meets the normalized section.
    #[serde(default)]
    pub c0_disjoint: bool,
    /// User assertion that some four curves have no common point (only
    /// consulted when `a = 1`).
    #[serde(default)]
    pub a1_four_curve_flag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileStats {
    /// Pairwise intersection number `2ab - a^2 e`.
    #[serde(serialize_with = "crate::num::ser_int")]
    pub h: BigInt,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub f0: BigInt,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub f1: BigInt,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub f2: BigInt,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub sum_rp_sq: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    #[serde(rename = "e_at_least_4")]
    EAtLeast4,
    #[serde(rename = "d_at_least_4")]
    DAtLeast4,
    APositive,
    BAtLeastAe,
    #[serde(rename = "multiplicities_at_least_2")]
    MultiplicitiesAtLeast2,
    NoPointOnAllCurves,
    NoMultiplicityAboveD,
    CountingIdentity,
    FourCurveCondition,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::EAtLeast4 => "e_at_least_4",
            CheckName::DAtLeast4 => "d_at_least_4",
            CheckName::APositive => "a_positive",
            CheckName::BAtLeastAe => "b_at_least_ae",
            CheckName::MultiplicitiesAtLeast2 => "multiplicities_at_least_2",
            CheckName::NoPointOnAllCurves => "no_point_on_all_curves",
            CheckName::NoMultiplicityAboveD => "no_multiplicity_above_d",
            CheckName::CountingIdentity => "counting_identity",
            CheckName::FourCurveCondition => "four_curve_condition",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unverifiable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: CheckName,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: CheckName, ok: bool, detail: impl Into<String>) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.checks.push(Check { name, status, detail: detail.into() });
    }

    /// True when no check failed. `Unverifiable` does not count as a failure.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn fully_verified(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> Vec<CheckName> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name)
            .collect()
    }

    pub fn status_of(&self, name: CheckName) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::ValidationFailed(
                self.failures().into_iter().map(|n| n.as_str().to_owned()).collect(),
            ))
        }
    }
}

impl ArrangementProfile {
    pub fn new(surface: RuledSurface, cls: NumClass, d: u32, t: BTreeMap<u32, u64>) -> Self {
        Self { surface, cls, d, t, c0_disjoint: false, a1_four_curve_flag: false }
    }

    pub fn t_k(&self, k: u32) -> u64 {
        self.t.get(&k).copied().unwrap_or(0)
    }

    pub fn t_big(&self, k: u32) -> BigInt {
        BigInt::from(self.t_k(k))
    }

    pub fn max_multiplicity(&self) -> Option<u32> {
        self.t.iter().filter(|(_, &n)| n > 0).map(|(&k, _)| k).max()
    }

    pub fn h(&self) -> BigInt {
        self.surface.pairwise_intersection(self.cls)
    }

    pub fn moment(&self, i: u32) -> BigInt {
        self.t
            .iter()
            .map(|(&k, &n)| num_traits::pow(BigInt::from(k), i as usize) * BigInt::from(n))
            .sum()
    }

    pub fn stats(&self) -> ProfileStats {
        let f2 = self.moment(2);
        ProfileStats {
            h: self.h(),
            f0: self.moment(0),
            f1: self.moment(1),
            sum_rp_sq: f2.clone(),
            f2,
        }
    }

    pub fn validate_star(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let e = self.surface.invariant_e;
        let NumClass { a, b } = self.cls;
        let st = self.stats();

        r.push(CheckName::EAtLeast4, e >= 4, format!("e = {e}"));
        r.push(CheckName::DAtLeast4, self.d >= 4, format!("d = {}", self.d));
        r.push(CheckName::APositive, a > 0, format!("a = {a}"));
        let ae = BigInt::from(a) * BigInt::from(e);
        r.push(CheckName::BAtLeastAe, BigInt::from(b) >= ae, format!("b = {b}, ae = {ae}"));

        let low: Vec<u32> = self.t.iter().filter(|(&k, &n)| k < 2 && n > 0).map(|(&k, _)| k).collect();
        r.push(
            CheckName::MultiplicitiesAtLeast2,
            low.is_empty(),
            format!("nonzero t_k with k < 2: {low:?}"),
        );
        let t_d = self.t_k(self.d);
        r.push(CheckName::NoPointOnAllCurves, t_d == 0, format!("t_d = {t_d}"));
        let high: Vec<u32> =
            self.t.iter().filter(|(&k, &n)| k > self.d && n > 0).map(|(&k, _)| k).collect();
        r.push(
            CheckName::NoMultiplicityAboveD,
            high.is_empty(),
            format!("nonzero t_k with k > d: {high:?}"),
        );

        let d = BigInt::from(self.d);
        let lhs = &st.f2 - &st.f1;
        let rhs = &st.h * &d * (&d - 1);
        r.push(
            CheckName::CountingIdentity,
            lhs == rhs,
            format!("f2 - f1 = {lhs}, h d (d - 1) = {rhs}"),
        );
        r
    }

    /// The extra hypothesis used for nefness: `a >= 2`, or `a = 1` together
    /// with four curves sharing no common point. A profile cannot witness the
    /// latter, so without the user flag it is `Unverifiable`.
    pub fn validate_extra(&self) -> ValidationReport {
        let mut r = self.validate_star();
        let a = self.cls.a;
        let check = if a >= 2 {
            Check {
                name: CheckName::FourCurveCondition,
                status: CheckStatus::Pass,
                detail: format!("a = {a} >= 2"),
            }
        } else if a == 1 && self.a1_four_curve_flag {
            Check {
                name: CheckName::FourCurveCondition,
                status: CheckStatus::Pass,
                detail: "a = 1, four-curve condition asserted".into(),
            }
        } else if a == 1 {
            Check {
                name: CheckName::FourCurveCondition,
                status: CheckStatus::Unverifiable,
                detail: "a = 1: check an incidence structure with check_four_curve".into(),
            }
        } else {
            Check {
                name: CheckName::FourCurveCondition,
                status: CheckStatus::Fail,
                detail: format!("a = {a} < 1"),
            }
        };
        r.checks.push(check);
        r
    }

    pub fn require_star(&self) -> Result<()> {
        self.validate_star().into_result().map(|_| ())
    }

    /// `H(X, C) = (D^2 - sum r_p^2) / s` with `D^2 = h d^2`.
    pub fn harbourne_constant(&self) -> Result<Rational> {
        let st = self.stats();
        if st.f0.is_zero() {
            return Err(Error::EmptySingularLocus);
        }
        self.require_star()?;
        let d = BigInt::from(self.d);
        let by_f2 = frac(&st.h * &d * &d - &st.f2, st.f0.clone());
        let by_f1 = frac(&st.h * &d - &st.f1, st.f0.clone());
        if by_f2 != by_f1 {
            return Err(Error::Inconsistent(format!(
                "harbourne constant forms disagree: {by_f2} vs {by_f1}"
            )));
        }
        Ok(by_f2)
    }

    /// All singular points are double points: `t_2 = binom(d, 2) h`.
    pub fn generic(surface: RuledSurface, cls: NumClass, d: u32) -> Result<Self> {
        if d < 4 {
            return Err(Error::Precondition(format!("generic profile needs d >= 4, got {d}")));
        }
        if surface.invariant_e < 4 {
            return Err(Error::Precondition(format!(
                "generic profile needs e >= 4, got {}",
                surface.invariant_e
            )));
        }
        if cls.a <= 0 || BigInt::from(cls.b) < BigInt::from(cls.a) * surface.e() {
            return Err(Error::Precondition(format!(
                "generic profile needs a > 0 and b >= ae, got ({}, {})",
                cls.a, cls.b
            )));
        }
        let h = surface.pairwise_intersection(cls);
        let pairs = BigInt::from(d) * BigInt::from(d - 1) / 2;
        let t2 = u64::try_from(pairs * h)
            .map_err(|_| Error::ParameterRange("t_2 exceeds u64".into()))?;
        Ok(Self::new(surface, cls, d, BTreeMap::from([(2, t2)])))
    }
}

/// Fill in `t_2` so that the counting identity `f2 - f1 = h d (d - 1)`
/// holds for the given higher multiplicities. Errors when the higher
/// multiplicities already account for too many incidences.
pub fn complete_with_double_points(
    surface: RuledSurface,
    cls: NumClass,
    d: u32,
    higher: &BTreeMap<u32, u64>,
) -> Result<ArrangementProfile> {
    let h = surface.pairwise_intersection(cls);
    let target = h * BigInt::from(d) * BigInt::from(d.saturating_sub(1));
    let used: BigInt = higher
        .iter()
        .filter(|(&k, _)| k != 2)
        .map(|(&k, &n)| BigInt::from(k) * BigInt::from(k.saturating_sub(1)) * BigInt::from(n))
        .sum();
    let rest = target - used;
    if rest.is_negative() {
        return Err(Error::ParameterRange(format!(
            "higher multiplicities exceed the {} available pair incidences",
            rest
        )));
    }
    // k(k-1) is even, so rest is even
    let t2 = u64::try_from(rest / 2u32).map_err(|_| Error::ParameterRange("t_2 exceeds u64".into()))?;
    let mut t: BTreeMap<u32, u64> = higher.iter().filter(|(&k, _)| k != 2).map(|(&k, &n)| (k, n)).collect();
    if t2 > 0 {
        t.insert(2, t2);
    }
    Ok(ArrangementProfile::new(surface, cls, d, t))
}

pub fn generic_profile(surface: RuledSurface, cls: NumClass, d: u32) -> Result<ArrangementProfile> {
    ArrangementProfile::generic(surface, cls, d)
}

/// `(h d^2 - sum k^2 t_k) / sum t_k` straight from counts, without any
/// surface data.
pub fn harbourne_from_counts(h: &BigInt, d: u32, t: &BTreeMap<u32, u64>) -> Result<Rational> {
    let f0: BigInt = t.values().map(|&n| BigInt::from(n)).sum();
    if f0.is_zero() || f0.is_negative() {
        return Err(Error::EmptySingularLocus);
    }
    let f2: BigInt = t.iter().map(|(&k, &n)| BigInt::from(k) * k * n).sum();
    let d = BigInt::from(d);
    Ok(frac(h * &d * &d - f2, f0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::int;
    use proptest::prelude::*;

    fn klein_pullback(e: i64) -> ArrangementProfile {
        let m = e as u64;
        let mut p = ArrangementProfile::new(
            RuledSurface::new(0, e),
            NumClass::new(1, e),
            21,
            BTreeMap::from([(3, 28 * m), (4, 21 * m)]),
        );
        p.c0_disjoint = true;
        p
    }

    #[test]
    fn stats_examples() {
        let st = klein_pullback(4).stats();
        assert_eq!(st.f0, BigInt::from(196));
        assert_eq!(st.f1, BigInt::from(672));
        assert_eq!(st.f2, BigInt::from(2352));
        assert_eq!(st.h, BigInt::from(4));

        let empty = ArrangementProfile::new(RuledSurface::new(0, 4), NumClass::new(1, 4), 4, BTreeMap::new());
        let st = empty.stats();
        assert!(st.f0.is_zero() && st.f1.is_zero() && st.f2.is_zero());

        let toy = ArrangementProfile::new(
            RuledSurface::new(0, 4),
            NumClass::new(1, 4),
            4,
            BTreeMap::from([(2, 6)]),
        );
        let st = toy.stats();
        assert_eq!((st.f0, st.f1, st.f2), (6.into(), 12.into(), 24.into()));
        assert!(!toy.validate_star().passed());
    }

    #[test]
    fn validate_star_examples() {
        assert!(klein_pullback(4).validate_star().fully_verified());

        let mut p = klein_pullback(4);
        p.t.insert(21, 1);
        let r = p.validate_star();
        assert!(r.failures().contains(&CheckName::NoPointOnAllCurves));

        let mut p = klein_pullback(4);
        p.cls.b = 3;
        assert!(p.validate_star().failures().contains(&CheckName::BAtLeastAe));
    }

    #[test]
    fn validate_extra_examples() {
        let p = ArrangementProfile::generic(RuledSurface::new(0, 4), NumClass::new(2, 8), 5).unwrap();
        assert_eq!(p.validate_extra().status_of(CheckName::FourCurveCondition), Some(CheckStatus::Pass));

        let mut p = klein_pullback(4);
        assert_eq!(
            p.validate_extra().status_of(CheckName::FourCurveCondition),
            Some(CheckStatus::Unverifiable)
        );
        assert!(p.validate_extra().passed());
        assert!(!p.validate_extra().fully_verified());
        p.a1_four_curve_flag = true;
        assert!(p.validate_extra().fully_verified());
    }

    #[test]
    fn harbourne_examples() {
        for e in 4..=10 {
            assert_eq!(klein_pullback(e).harbourne_constant().unwrap(), int(-3));
        }
        let wiman = ArrangementProfile::new(
            RuledSurface::new(0, 4),
            NumClass::new(1, 4),
            45,
            BTreeMap::from([(3, 480), (4, 180), (5, 144)]),
        );
        assert_eq!(wiman.harbourne_constant().unwrap(), frac(-225, 67));

        // d = 5, h = 4: t_2 = 40
        let p = ArrangementProfile::generic(RuledSurface::new(0, 4), NumClass::new(1, 4), 5).unwrap();
        assert_eq!(p.t_k(2), 40);
        assert_eq!(p.harbourne_constant().unwrap(), frac(-3, 2));

        let empty = ArrangementProfile::new(RuledSurface::new(0, 4), NumClass::new(1, 4), 4, BTreeMap::new());
        assert_eq!(empty.harbourne_constant(), Err(Error::EmptySingularLocus));
    }

    #[test]
    fn generic_examples() {
        let s = RuledSurface::new(0, 4);
        let p = ArrangementProfile::generic(s, NumClass::new(1, 4), 4).unwrap();
        assert_eq!(p.t_k(2), 24);
        assert_eq!(p.harbourne_constant().unwrap(), frac(-4, 3));
        let p = ArrangementProfile::generic(RuledSurface::new(2, 5), NumClass::new(3, 17), 10).unwrap();
        assert_eq!(p.t_k(2), 45 * p.h().to_string().parse::<u64>().unwrap());
        assert_eq!(p.harbourne_constant().unwrap(), frac(-16, 9));

        assert!(ArrangementProfile::generic(s, NumClass::new(1, 4), 3).is_err());
        assert!(ArrangementProfile::generic(s, NumClass::new(1, 3), 5).is_err());
        assert!(ArrangementProfile::generic(RuledSurface::new(0, 3), NumClass::new(1, 3), 5).is_err());
    }

    #[test]
    fn profile_json_format() {
        let json = r#"{"surface":{"g":0,"e":4},"class":{"a":1,"b":4},"d":21,
                       "t":{"3":112,"4":84},"c0_disjoint":true,"a1_four_curve_flag":false}"#;
        let p: ArrangementProfile = serde_json::from_str(json).unwrap();
        assert_eq!(p, klein_pullback(4));

        let bad = r#"{"surface":{"g":0,"e":4},"class":{"a":1,"b":4},"d":21,"t":{},"extra":1}"#;
        assert!(serde_json::from_str::<ArrangementProfile>(bad).is_err());
        let bad = r#"{"surface":{"g":0,"e":4,"h":2},"class":{"a":1,"b":4},"d":21,"t":{}}"#;
        assert!(serde_json::from_str::<ArrangementProfile>(bad).is_err());
    }

    fn valid_class() -> impl Strategy<Value = (RuledSurface, NumClass)> {
        (0u32..=6, 4i64..=12, 1i64..=6, 0i64..=10)
            .prop_map(|(g, e, a, off)| (RuledSurface::new(g, e), NumClass::new(a, a * e + off)))
    }

    proptest! {
        #[test]
        fn generic_family_formula((s, c) in valid_class(), d in 4u32..=100) {
            let p = ArrangementProfile::generic(s, c, d).unwrap();
            prop_assert!(p.validate_star().fully_verified());
            let expected = frac(-2 * (i64::from(d) - 2), i64::from(d) - 1);
            prop_assert_eq!(p.harbourne_constant().unwrap(), expected);
        }

        #[test]
        fn pullback_scaling_invariance(
            t3 in 0u64..50, t4 in 0u64..50, t5 in 0u64..50, t2 in 1u64..50,
            h in 1i64..10, d in 6u32..30, m in 1u64..20,
        ) {
            let t = BTreeMap::from([(2, t2), (3, t3), (4, t4), (5, t5)]);
            let scaled: BTreeMap<u32, u64> = t.iter().map(|(&k, &n)| (k, n * m)).collect();
            let h = BigInt::from(h);
            prop_assert_eq!(
                harbourne_from_counts(&h, d, &t).unwrap(),
                harbourne_from_counts(&(&h * m), d, &scaled).unwrap()
            );
        }

        #[test]
        fn perturbation_breaks_counting_identity(
            (s, c) in valid_class(), d in 5u32..=30, k in 2u32..=4, up in proptest::bool::ANY,
        ) {
            let mut p = ArrangementProfile::generic(s, c, d).unwrap();
            let entry = p.t.entry(k).or_insert(0);
            if up || *entry == 0 { *entry += 1 } else { *entry -= 1 }
            prop_assert_eq!(p.validate_star().status_of(CheckName::CountingIdentity), Some(CheckStatus::Fail));
        }

        #[test]
        fn moment_ordering(t in proptest::collection::btree_map(2u32..40, 0u64..1000, 0..8)) {
            let p = ArrangementProfile::new(RuledSurface::new(0, 4), NumClass::new(1, 4), 50, t);
            let st = p.stats();
            prop_assert!(st.f1 >= &st.f0 * 2);
            prop_assert!(st.f2 >= st.f1);
        }
    }
}
