//! Pull-backs of plane line arrangements to Hirzebruch surfaces `X_e`.
//!
//! The degree-`e` map `X_e -> X_1` (with `X_1` the plane blown up at a point
//! off `L`) sends the lines of `L` to `d` sections in class `C0 + e f`, each
//! singular point of `L` having `e` preimages of the same multiplicity. Only
//! that combinatorial effect is modelled.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arrangement::ArrangementProfile;
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::num::Rational;
use crate::surface::{NumClass, RuledSurface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineArrangement {
    pub d: u32,
    pub t: BTreeMap<u32, u64>,
}

impl LineArrangement {
    /// Checks that every pair of lines meets exactly once:
    /// `sum_k C(k,2) t_k = C(d,2)`.
    pub fn new(d: u32, t: BTreeMap<u32, u64>) -> Result<Self> {
        let l = Self { d, t };
        l.check()?;
        Ok(l)
    }

    pub fn check(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Precondition("a line arrangement needs at least one line".into()));
        }
        if let Some((&k, _)) = self.t.iter().find(|(&k, &n)| n > 0 && (k < 2 || k > self.d)) {
            return Err(Error::Precondition(format!("multiplicity {k} outside 2..={}", self.d)));
        }
        let pairs: BigInt = self
            .t
            .iter()
            .map(|(&k, &n)| BigInt::from(k) * BigInt::from(k - 1) / 2u32 * BigInt::from(n))
            .sum();
        let expected = BigInt::from(self.d) * BigInt::from(self.d - 1) / 2u32;
        if pairs != expected {
            return Err(Error::Precondition(format!(
                "pair count {pairs} differs from C(d,2) = {expected}"
            )));
        }
        Ok(())
    }

    /// `H(P^2, L) = (d^2 - sum k^2 t_k) / sum t_k`.
    pub fn harbourne_constant(&self) -> Result<Rational> {
        let f0: BigInt = self.t.values().map(|&n| BigInt::from(n)).sum();
        if f0.is_zero() {
            return Err(Error::EmptySingularLocus);
        }
        let f2: BigInt = self.t.iter().map(|(&k, &n)| BigInt::from(k) * BigInt::from(k) * BigInt::from(n)).sum();
        let d = BigInt::from(self.d);
        Ok(Rational::new(&d * &d - f2, f0))
    }
}

/// The 21 lines of the Klein arrangement: `t3 = 28`, `t4 = 21`.
pub fn klein() -> LineArrangement {
    LineArrangement { d: 21, t: BTreeMap::from([(3, 28), (4, 21)]) }
}

/// The 45 lines of the Wiman arrangement: `t3 = 120`, `t4 = 45`, `t5 = 36`.
pub fn wiman() -> LineArrangement {
    LineArrangement { d: 45, t: BTreeMap::from([(3, 120), (4, 45), (5, 36)]) }
}

/// `d` lines in general position.
pub fn generic_lines(d: u32) -> Result<LineArrangement> {
    if d < 2 {
        return Err(Error::ParameterRange(format!("generic arrangement needs d >= 2, got {d}")));
    }
    let pairs = u64::from(d) * u64::from(d - 1) / 2;
    LineArrangement::new(d, BTreeMap::from([(2, pairs)]))
}

pub fn pullback(l: &LineArrangement, e: i64) -> Result<ArrangementProfile> {
    if e < 4 {
        return Err(Error::ParameterRange(format!("pull-back needs e >= 4, got {e}")));
    }
    l.check()?;
    let scale = u64::try_from(e).expect("e >= 4");
    let t = l
        .t
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(&k, &n)| {
            n.checked_mul(scale)
                .map(|m| (k, m))
                .ok_or_else(|| Error::ParameterRange("point count overflows u64".into()))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let mut p = ArrangementProfile::new(RuledSurface::new(0, e), NumClass::new(1, e), l.d, t);
    p.c0_disjoint = true;
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub arrangement: LineArrangement,
}

pub fn gallery() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry { name: "klein", arrangement: klein() },
        GalleryEntry { name: "wiman", arrangement: wiman() },
    ]
}

pub fn lookup(name: &str) -> Option<LineArrangement> {
    gallery().into_iter().find(|g| g.name == name).map(|g| g.arrangement)
}

// 3x3 matrices over F_2, one bitmask per row.
type Mat = [u8; 3];

const IDENTITY: Mat = [0b001, 0b010, 0b100];

fn mul(x: &Mat, y: &Mat) -> Mat {
    let mut out = [0u8; 3];
    for (i, row) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if row >> j & 1 == 1 {
                out[i] ^= yj;
            }
        }
    }
    out
}

fn invertible(m: &Mat) -> bool {
    let [r0, r1, r2] = *m;
    [r0, r1, r2, r0 ^ r1, r0 ^ r2, r1 ^ r2, r0 ^ r1 ^ r2].iter().all(|&v| v != 0)
}

/// The Klein arrangement as an incidence structure, built from
/// `GL(3,2) = PSL(2,7)`: lines are the 21 involutions, quadruple points are
/// indexed by involutions `u` (through the 4 other involutions commuting
/// with `u`), and triple points by subgroups `<c>` of order 3 (through the
/// involutions inverting `c`).
pub fn klein_incidence() -> IncidenceStructure {
    let group: Vec<Mat> = (0u32..512)
        .map(|bits| [(bits & 7) as u8, (bits >> 3 & 7) as u8, (bits >> 6 & 7) as u8])
        .filter(invertible)
        .collect();
    debug_assert_eq!(group.len(), 168);

    let involutions: Vec<Mat> =
        group.iter().copied().filter(|m| *m != IDENTITY && mul(m, m) == IDENTITY).collect();
    let mut order3: Vec<(Mat, Mat)> = group
        .iter()
        .copied()
        .filter(|m| *m != IDENTITY && mul(m, &mul(m, m)) == IDENTITY)
        .map(|c| {
            let c2 = mul(&c, &c);
            if c < c2 {
                (c, c2)
            } else {
                (c2, c)
            }
        })
        .collect();
    order3.sort();
    order3.dedup();

    let mut points = Vec::with_capacity(49);
    for u in &involutions {
        let through = (1u32..)
            .zip(&involutions)
            .filter(|(_, s)| *s != u && mul(s, u) == mul(u, s))
            .map(|(i, _)| i)
            .collect();
        points.push(through);
    }
    for (c, c_inv) in &order3 {
        let through = (1u32..)
            .zip(&involutions)
            .filter(|(_, s)| mul(s, &mul(c, s)) == *c_inv)
            .map(|(i, _)| i)
            .collect();
        points.push(through);
    }
    IncidenceStructure::new(involutions.len() as u32, points).expect("Klein incidence is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn builtins_pair_count() {
        klein().check().unwrap();
        wiman().check().unwrap();
        assert_eq!(3 * 28 + 6 * 21, 21 * 20 / 2);
        assert_eq!(3 * 120 + 6 * 45 + 10 * 36, 45 * 44 / 2);
    }

    #[test]
    fn plane_constants() {
        assert_eq!(klein().harbourne_constant().unwrap(), int(-3));
        assert_eq!(wiman().harbourne_constant().unwrap(), frac(-225, 67));
    }

    #[test]
    fn klein_pullback_e5() {
        let p = pullback(&klein(), 5).unwrap();
        assert_eq!(p.moment(0), BigInt::from(245));
        assert_eq!(p.cls, NumClass::new(1, 5));
        assert!(p.c0_disjoint);
        assert!(p.validate_star().passed());
        assert_eq!(p.harbourne_constant().unwrap(), int(-3));
    }

    #[test]
    fn pullback_rejects_small_e_and_bad_arrangements() {
        assert!(pullback(&klein(), 3).is_err());
        let bad = LineArrangement { d: 21, t: BTreeMap::from([(3, 27), (4, 21)]) };
        assert!(pullback(&bad, 4).is_err());
        assert!(LineArrangement::new(4, BTreeMap::from([(2, 5)])).is_err());
    }

    #[test]
    fn klein_incidence_structure() {
        let inc = klein_incidence();
        assert_eq!(inc.d(), 21);
        assert_eq!(inc.global_t(), klein().t);
        assert!(inc.audit(&BigInt::from(1)).passed());
        assert!(inc.check_four_curve().unwrap());
        for cs in inc.curve_stats() {
            assert_eq!(cs.t_k(3), 4);
            assert_eq!(cs.t_k(4), 4);
        }
    }

    #[test]
    fn klein_incidence_pulls_back() {
        for e in 4..=7u32 {
            let inc = klein_incidence().replicate(e);
            let s = RuledSurface::new(0, i64::from(e));
            let p = inc.profile_of(s, NumClass::new(1, i64::from(e))).unwrap();
            assert_eq!(p.t, pullback(&klein(), i64::from(e)).unwrap().t);
        }
    }

    #[test]
    fn generic_lines_family() {
        let l = generic_lines(10).unwrap();
        assert_eq!(l.harbourne_constant().unwrap(), frac(100 - 4 * 45, 45));
        assert!(generic_lines(1).is_err());
    }

    proptest! {
        #[test]
        fn pullback_invariance(e1 in 4i64..200, e2 in 4i64..200, which in 0usize..2) {
            let l = gallery()[which].arrangement.clone();
            let h = l.harbourne_constant().unwrap();
            let p1 = pullback(&l, e1).unwrap();
            let p2 = pullback(&l, e2).unwrap();
            prop_assert!(p1.validate_star().passed());
            prop_assert_eq!(p1.harbourne_constant().unwrap(), h.clone());
            prop_assert_eq!(p2.harbourne_constant().unwrap(), h);
            prop_assert_eq!(p1.cls.b, p1.cls.a * e1);
        }

        #[test]
        fn generic_pullback_matches_plane(d in 4u32..80, e in 4i64..30) {
            let l = generic_lines(d).unwrap();
            let p = pullback(&l, e).unwrap();
            prop_assert!(p.validate_star().passed());
            prop_assert_eq!(p.harbourne_constant().unwrap(), l.harbourne_constant().unwrap());
        }
    }
}
