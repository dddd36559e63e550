//! Ball-quotient feasibility for the covers of arrangements with only
//! double and six-fold points.
//!
//! If `Y` is a ball quotient then every point blown up has `r_p = 6`, so the
//! arrangement has only `t2` and `t6`. Relative proportionality on each curve
//! plus the pair count pin `t2` and `t6` down, and `3e(Y) = c1^2(Y)` then
//! reduces to a single equation in `(g, e, a, b, d)` that has no solutions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::ArrangementProfile;
use crate::covering::ChernInputs;
use crate::error::{Error, Result};
use crate::incidence::CurveStats;
use crate::num::{int, is_integer, pow2, Rational};
use crate::surface::{NumClass, RuledSurface};

/// `prop(F_p) = 2^(r_p - 2) (r_p - 6)`.
pub fn prop_exceptional(r_p: u32) -> Result<BigInt> {
    if r_p < 3 {
        return Err(Error::Precondition(format!("r_p must be at least 3, got {r_p}")));
    }
    Ok(pow2(r_p - 2) * (i64::from(r_p) - 6))
}

/// `a' = C_i . C_j` and `b' = K_X . C_i`.
pub fn a_b_prime(s: RuledSurface, cls: NumClass) -> (BigInt, BigInt) {
    (s.pairwise_intersection(cls), s.intersect(s.canonical_class(), cls))
}

fn require_binary_26(t: &BTreeMap<u32, u64>) -> Result<()> {
    match t.iter().find(|(&k, &n)| n > 0 && k != 2 && k != 6) {
        Some((&k, _)) => Err(Error::MultiplicityProfileNotBinary26(k)),
        None => Ok(()),
    }
}

/// `prop(D_j) / 2^(d-3) = 4a' + 2b' - t6^j + t2^j`. Only defined for
/// arrangements whose points are all double or six-fold.
pub fn prop_strict_transform(p: &ArrangementProfile, cs: &CurveStats) -> Result<Rational> {
    p.require_star()?;
    require_binary_26(&p.t)?;
    require_binary_26(&cs.t_k_j)?;
    for k in [2, 6] {
        if cs.t_k(k) > p.t_k(k) {
            return Err(Error::InconsistentCurveStats(format!(
                "curve {} has {} points of multiplicity {k}, profile has {}",
                cs.curve_index,
                cs.t_k(k),
                p.t_k(k)
            )));
        }
    }
    let (ap, bp) = a_b_prime(p.surface, p.cls);
    Ok(int(4 * ap + 2 * bp) - int(cs.t6_j) + int(cs.t2_j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Violation {
    Integrality,
    Nonnegativity,
    HC2Nonzero,
    Eq55,
    /// `d[(3a - 1)(2b - ae) - 2a] > 0` together with `(2ad - 16) g >= 0`
    /// makes the right-hand side of the reduced equation positive.
    PositivityArgument,
    /// For `a = 1`, `4 <= d <= 7`: `16 - 4d + 4(3d - d(d - 1)/10) > 0`.
    SmallDCheck,
}

impl Violation {
    pub const ALL: [Violation; 6] = [
        Violation::Integrality,
        Violation::Nonnegativity,
        Violation::HC2Nonzero,
        Violation::Eq55,
        Violation::PositivityArgument,
        Violation::SmallDCheck,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Violation::Integrality => "Integrality",
            Violation::Nonnegativity => "Nonnegativity",
            Violation::HC2Nonzero => "HC2Nonzero",
            Violation::Eq55 => "Eq55",
            Violation::PositivityArgument => "PositivityArgument",
            Violation::SmallDCheck => "SmallDCheck",
        }
    }

    fn is_shortcut(&self) -> bool {
        matches!(self, Violation::PositivityArgument | Violation::SmallDCheck)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallQuotientVerdict {
    pub g: u32,
    pub e: i64,
    pub a: i64,
    pub b: i64,
    pub d: u32,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub a_prime: BigInt,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub b_prime: BigInt,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub t2_required: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub t6_required: Rational,
    /// Per-curve counts forced by the two linear equations on each curve.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub t2_per_curve: Rational,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub t6_per_curve: Rational,
    pub integrality_ok: bool,
    pub nonnegativity_ok: bool,
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub hc2_value: Rational,
    /// `16 - 16g + d[(2b - ae)(5a - 2) + 4a(g - 1)] + t2 - 3 t6`.
    #[serde(serialize_with = "crate::num::ser_rational")]
    pub expanded_residual: Rational,
    #[serde(serialize_with = "crate::num::ser_int")]
    pub eq55_lhs: BigInt,
    /// `d[(3a - 1)(2b - ae) - 2a] + (2ad - 16) g`.
    #[serde(serialize_with = "crate::num::ser_int")]
    pub eq55_rhs: BigInt,
    pub feasible: bool,
    pub violated: Vec<Violation>,
}

fn check_range(s: RuledSurface, a: i64, b: i64, d: u32) -> Result<()> {
    let e = s.invariant_e;
    if e < 4 {
        return Err(Error::ParameterRange(format!("e must be at least 4, got {e}")));
    }
    if d < 4 {
        return Err(Error::ParameterRange(format!("d must be at least 4, got {d}")));
    }
    if a <= 0 {
        return Err(Error::ParameterRange(format!("a must be positive, got {a}")));
    }
    if BigInt::from(b) < BigInt::from(a) * BigInt::from(e) {
        return Err(Error::ParameterRange(format!("b = {b} is below ae = {}", BigInt::from(a) * e)));
    }
    Ok(())
}

/// `t2 = (a'd^2 - 21a'd - 10b'd)/12`, `t6 = (a'd^2 + 3a'd + 2b'd)/36`.
/// Only the count fields and their flags are meaningful in the result; use
/// [`feasibility`] for the full verdict.
pub fn solve_t2_t6(s: RuledSurface, a: i64, b: i64, d: u32) -> Result<BallQuotientVerdict> {
    if d < 4 {
        return Err(Error::ParameterRange(format!("d must be at least 4, got {d}")));
    }
    let cls = NumClass::new(a, b);
    let (ap, bp) = a_b_prime(s, cls);
    let dd = BigInt::from(d);
    let t2 = Rational::new(&ap * &dd * &dd - 21 * &ap * &dd - 10 * &bp * &dd, BigInt::from(12));
    let t6 = Rational::new(&ap * &dd * &dd + 3 * &ap * &dd + 2 * &bp * &dd, BigInt::from(36));
    let t6j = Rational::new(&ap * (&dd + 3) + 2 * &bp, BigInt::from(6));
    let t2j = &t6j - int(4 * &ap + 2 * &bp);
    let integrality_ok = is_integer(&t2) && is_integer(&t6);
    let nonnegativity_ok = !t2.is_negative() && !t6.is_negative();
    Ok(BallQuotientVerdict {
        g: s.genus,
        e: s.invariant_e,
        a,
        b,
        d,
        a_prime: ap,
        b_prime: bp,
        t2_required: t2,
        t6_required: t6,
        t2_per_curve: t2j,
        t6_per_curve: t6j,
        integrality_ok,
        nonnegativity_ok,
        hc2_value: Rational::zero(),
        expanded_residual: Rational::zero(),
        eq55_lhs: BigInt::from(-16),
        eq55_rhs: BigInt::zero(),
        feasible: false,
        violated: Vec::new(),
    })
}

/// `d[(3a - 1)(2b - ae) - 2a]` and `(2ad - 16) g`, the two parts of the
/// right-hand side of the reduced equation.
fn eq55_parts(s: RuledSurface, a: i64, b: i64, d: u32) -> (BigInt, BigInt) {
    let (a, b, e, d, g) = (BigInt::from(a), BigInt::from(b), s.e(), BigInt::from(d), s.g());
    let first = &d * ((3 * &a - 1) * (2 * &b - &a * &e) - 2 * &a);
    let second = (2 * &a * &d - 16) * g;
    (first, second)
}

fn small_d_expression(d: u32) -> Rational {
    let d = int(d);
    int(16) - int(4) * &d + int(4) * (int(3) * &d - &d * (&d - int(1)) / int(10))
}

pub fn feasibility(s: RuledSurface, a: i64, b: i64, d: u32) -> Result<BallQuotientVerdict> {
    check_range(s, a, b, d)?;
    let mut v = solve_t2_t6(s, a, b, d)?;
    let cls = NumClass::new(a, b);

    let t2 = v.t2_required.clone();
    let t6 = v.t6_required.clone();
    let f0 = &t2 + &t6;
    let f1 = int(2) * &t2 + int(6) * &t6;
    v.hc2_value = ChernInputs::new(s, cls, d, f0, f1, t2.clone()).three_e_minus_c1_sq_norm();

    let (ai, bi, ei, gi, di) = (int(a), int(b), int(s.invariant_e), int(s.genus), int(d));
    v.expanded_residual = int(16) - int(16) * &gi
        + &di
            * ((int(2) * &bi - &ai * &ei) * (int(5) * &ai - int(2))
                + int(4) * &ai * (&gi - int(1)))
        + &t2
        - int(3) * &t6;

    let (first, second) = eq55_parts(s, a, b, d);
    v.eq55_rhs = &first + &second;

    let mut violated = Vec::new();
    if !v.integrality_ok {
        violated.push(Violation::Integrality);
    }
    if !v.nonnegativity_ok {
        violated.push(Violation::Nonnegativity);
    }
    if !v.hc2_value.is_zero() {
        violated.push(Violation::HC2Nonzero);
    }
    if v.eq55_rhs != v.eq55_lhs {
        violated.push(Violation::Eq55);
    }
    let positivity_applies = a >= 2 || d >= 8;
    if positivity_applies && first.is_positive() && !second.is_negative() {
        violated.push(Violation::PositivityArgument);
    }
    if a == 1 && (4..=7).contains(&d) && small_d_expression(d).is_positive() {
        violated.push(Violation::SmallDCheck);
    }
    v.feasible = v.integrality_ok && v.nonnegativity_ok && v.hc2_value.is_zero() && v.eq55_rhs == v.eq55_lhs;
    v.violated = violated;
    Ok(v)
}

pub fn shortcut_fired(v: &BallQuotientVerdict) -> bool {
    v.violated.iter().any(Violation::is_shortcut)
}

/// Inclusive parameter ranges; `b = ae + b_offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanGrid {
    pub g: [u32; 2],
    pub e: [i64; 2],
    pub a: [i64; 2],
    pub b_offset: [i64; 2],
    pub d: [u32; 2],
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self { g: [0, 5], e: [4, 10], a: [1, 5], b_offset: [0, 10], d: [4, 50] }
    }
}

fn span_i(r: [i64; 2]) -> u64 {
    if r[1] < r[0] {
        0
    } else {
        (r[1] - r[0]) as u64 + 1
    }
}

fn span_u(r: [u32; 2]) -> u64 {
    span_i([i64::from(r[0]), i64::from(r[1])])
}

impl ScanGrid {
    pub fn check(&self) -> Result<()> {
        if self.e[0] < 4 {
            return Err(Error::ParameterRange(format!("e range must start at 4 or above, got {}", self.e[0])));
        }
        if self.d[0] < 4 {
            return Err(Error::ParameterRange(format!("d range must start at 4 or above, got {}", self.d[0])));
        }
        if self.a[0] < 1 {
            return Err(Error::ParameterRange(format!("a range must start at 1 or above, got {}", self.a[0])));
        }
        if self.b_offset[0] < 0 {
            return Err(Error::ParameterRange(format!("b_offset must be non-negative, got {}", self.b_offset[0])));
        }
        Ok(())
    }

    pub fn len(&self) -> u64 {
        span_u(self.g) * span_i(self.e) * span_i(self.a) * span_i(self.b_offset) * span_u(self.d)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th point in lexicographic `(g, e, a, b_offset, d)` order.
    fn point(&self, mut i: u64) -> (u32, i64, i64, i64, u32) {
        let nd = span_u(self.d);
        let nb = span_i(self.b_offset);
        let na = span_i(self.a);
        let ne = span_i(self.e);
        let d = self.d[0] + (i % nd) as u32;
        i /= nd;
        let off = self.b_offset[0] + (i % nb) as i64;
        i /= nb;
        let a = self.a[0] + (i % na) as i64;
        i /= na;
        let e = self.e[0] + (i % ne) as i64;
        i /= ne;
        let g = self.g[0] + i as u32;
        (g, e, a, a * e + off, d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub g: u32,
    pub e: i64,
    pub a: i64,
    pub b: i64,
    pub d: u32,
}

impl From<&BallQuotientVerdict> for GridPoint {
    fn from(v: &BallQuotientVerdict) -> Self {
        GridPoint { g: v.g, e: v.e, a: v.a, b: v.b, d: v.d }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub grid: Option<ScanGrid>,
    pub total: u64,
    pub infeasible: u64,
    pub feasible_count: u64,
    pub feasible_witnesses: Vec<GridPoint>,
    pub tallies: BTreeMap<String, u64>,
    /// Points where a shortcut argument fired.
    pub shortcut_fired: u64,
    /// Points where a shortcut fired but the direct check found the point
    /// feasible. Must be empty.
    pub shortcut_disagreements: Vec<GridPoint>,
    /// Infeasible points no shortcut argument covers.
    pub shortcut_uncovered: u64,
}

impl ScanReport {
    fn absorb(&mut self, v: &BallQuotientVerdict) {
        self.total += 1;
        if v.feasible {
            self.feasible_count += 1;
            self.feasible_witnesses.push(v.into());
        } else {
            self.infeasible += 1;
        }
        for x in &v.violated {
            *self.tallies.entry(x.as_str().to_string()).or_insert(0) += 1;
        }
        let fired = shortcut_fired(v);
        if fired {
            self.shortcut_fired += 1;
            if v.feasible {
                self.shortcut_disagreements.push(v.into());
            }
        } else if !v.feasible {
            self.shortcut_uncovered += 1;
        }
    }

    fn merge(mut self, other: ScanReport) -> ScanReport {
        self.total += other.total;
        self.infeasible += other.infeasible;
        self.feasible_count += other.feasible_count;
        self.feasible_witnesses.extend(other.feasible_witnesses);
        for (k, n) in other.tallies {
            *self.tallies.entry(k).or_insert(0) += n;
        }
        self.shortcut_fired += other.shortcut_fired;
        self.shortcut_disagreements.extend(other.shortcut_disagreements);
        self.shortcut_uncovered += other.shortcut_uncovered;
        self
    }

    pub fn shortcuts_agree(&self) -> bool {
        self.shortcut_disagreements.is_empty()
    }
}

fn verdict_at(grid: &ScanGrid, i: u64) -> BallQuotientVerdict {
    let (g, e, a, b, d) = grid.point(i);
    feasibility(RuledSurface::new(g, e), a, b, d).expect("grid was range-checked")
}

const CHUNK: u64 = 4096;

fn scan_chunk(grid: &ScanGrid, c: u64) -> ScanReport {
    let mut r = ScanReport::default();
    for i in c * CHUNK..((c + 1) * CHUNK).min(grid.len()) {
        r.absorb(&verdict_at(grid, i));
    }
    r
}

/// Evaluates [`feasibility`] at every grid point. Chunks are merged in grid
/// order, so the report does not depend on how work was scheduled.
pub fn scan(grid: &ScanGrid) -> Result<ScanReport> {
    grid.check()?;
    let chunks = grid.len().div_ceil(CHUNK);

    #[cfg(feature = "parallel")]
    let parts: Vec<ScanReport> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(|c| scan_chunk(grid, c)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<ScanReport> = (0..chunks).map(|c| scan_chunk(grid, c)).collect();

    let mut report = parts.into_iter().fold(ScanReport::default(), ScanReport::merge);
    report.grid = Some(grid.clone());
    Ok(report)
}

/// Sequential reference used to check that partitioning does not matter.
pub fn scan_sequential(grid: &ScanGrid) -> Result<ScanReport> {
    grid.check()?;
    let mut report = ScanReport::default();
    for i in 0..grid.len() {
        report.absorb(&verdict_at(grid, i));
    }
    report.grid = Some(grid.clone());
    Ok(report)
}

/// The double/six-fold profile with the solved counts, when they are
/// non-negative integers.
pub fn synthesized_profile(v: &BallQuotientVerdict) -> Option<ArrangementProfile> {
    if !(v.integrality_ok && v.nonnegativity_ok) {
        return None;
    }
    let t2 = v.t2_required.to_integer();
    let t6 = v.t6_required.to_integer();
    let mut t = BTreeMap::new();
    if !t2.is_zero() {
        t.insert(2, u64::try_from(t2).ok()?);
    }
    if !t6.is_zero() {
        t.insert(6, u64::try_from(t6).ok()?);
    }
    Some(ArrangementProfile::new(RuledSurface::new(v.g, v.e), NumClass::new(v.a, v.b), v.d, t))
}
