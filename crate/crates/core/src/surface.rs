//! Numerical lattice of a geometrically ruled surface.
//!
//! `Num(X)` is generated by the normalized section `C0` and the fiber class
//! `f`, with `C0^2 = -e`, `C0.f = 1` and `f^2 = 0`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ruled surface `P(E) -> C` over a curve of genus `genus`, with invariant
/// `e = deg(det E)` for the normalized bundle `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuledSurface {
    #[serde(rename = "g")]
    pub genus: u32,
    #[serde(rename = "e")]
    pub invariant_e: i64,
}

/// The numerical class `a*C0 + b*f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumClass {
    pub a: i64,
    pub b: i64,
}

impl NumClass {
    pub const SECTION: NumClass = NumClass { a: 1, b: 0 };
    pub const FIBER: NumClass = NumClass { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }
}

impl std::ops::Add for NumClass {
    type Output = NumClass;

    fn add(self, rhs: NumClass) -> NumClass {
        NumClass::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl RuledSurface {
    pub fn new(genus: u32, invariant_e: i64) -> Self {
        Self { genus, invariant_e }
    }

    pub fn g(&self) -> BigInt {
        BigInt::from(self.genus)
    }

    pub fn e(&self) -> BigInt {
        BigInt::from(self.invariant_e)
    }

    pub fn intersect(&self, x: NumClass, y: NumClass) -> BigInt {
        let (xa, xb) = (BigInt::from(x.a), BigInt::from(x.b));
        let (ya, yb) = (BigInt::from(y.a), BigInt::from(y.b));
        &xa * &yb + &xb * &ya - self.e() * xa * ya
    }

    /// `K_X = -2 C0 + (2g - 2 - e) f`.
    pub fn canonical_class(&self) -> NumClass {
        NumClass::new(-2, 2 * i64::from(self.genus) - 2 - self.invariant_e)
    }

    /// A class is ample iff `a > 0` and `b > ae`. Only stated for `e >= 0`.
    pub fn is_ample(&self, x: NumClass) -> Result<bool> {
        if self.invariant_e < 0 {
            return Err(Error::NonNegativeEOnly(self.invariant_e));
        }
        Ok(x.a > 0 && BigInt::from(x.b) > BigInt::from(x.a) * self.e())
    }

    pub fn euler_characteristic(&self) -> BigInt {
        4 - 4 * self.g()
    }

    /// `K_X^2 = 8(1 - g)`.
    pub fn canonical_self_intersection(&self) -> BigInt {
        8 * (1 - self.g())
    }

    /// `2g(C) - 2` for a smooth curve `C` in class `x`.
    pub fn curve_genus_term(&self, x: NumClass) -> BigInt {
        let (a, b) = (BigInt::from(x.a), BigInt::from(x.b));
        let (g, e) = (self.g(), self.e());
        -(&a * &a * &e) + 2 * &a * &b + &a * &e + &a * (2 * g - 2) - 2 * b
    }

    /// Pairwise intersection `2ab - a^2 e` of two curves in class `x`.
    pub fn pairwise_intersection(&self, x: NumClass) -> BigInt {
        self.intersect(x, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_products() {
        let s = RuledSurface::new(0, 4);
        assert_eq!(s.intersect(NumClass::SECTION, NumClass::SECTION), BigInt::from(-4));
        assert_eq!(s.intersect(NumClass::FIBER, NumClass::FIBER), BigInt::from(0));
        assert_eq!(s.intersect(NumClass::SECTION, NumClass::FIBER), BigInt::from(1));
        assert_eq!(s.intersect(NumClass::new(1, 4), NumClass::new(1, 4)), BigInt::from(4));
    }

    #[test]
    fn canonical_class_values() {
        assert_eq!(RuledSurface::new(0, 4).canonical_class(), NumClass::new(-2, -6));
        assert_eq!(RuledSurface::new(1, 4).canonical_class(), NumClass::new(-2, -4));
        assert_eq!(RuledSurface::new(0, 0).canonical_class(), NumClass::new(-2, -2));
    }

    #[test]
    fn ampleness() {
        let s = RuledSurface::new(0, 4);
        assert!(s.is_ample(NumClass::new(1, 5)).unwrap());
        assert!(!s.is_ample(NumClass::new(1, 4)).unwrap());
        assert!(!s.is_ample(NumClass::new(0, 1)).unwrap());
        assert_eq!(
            RuledSurface::new(0, -1).is_ample(NumClass::new(1, 5)),
            Err(Error::NonNegativeEOnly(-1))
        );
    }

    #[test]
    fn euler_and_canonical_square() {
        assert_eq!(RuledSurface::new(0, 4).euler_characteristic(), BigInt::from(4));
        assert_eq!(RuledSurface::new(1, 4).euler_characteristic(), BigInt::from(0));
        assert_eq!(RuledSurface::new(3, 4).euler_characteristic(), BigInt::from(-8));
        assert_eq!(RuledSurface::new(0, 4).canonical_self_intersection(), BigInt::from(8));
        assert_eq!(RuledSurface::new(1, 4).canonical_self_intersection(), BigInt::from(0));
        let s = RuledSurface::new(0, 7);
        let k = s.canonical_class();
        assert_eq!(k, NumClass::new(-2, -9));
        assert_eq!(s.intersect(k, k), BigInt::from(8));
    }

    #[test]
    fn genus_term_examples() {
        assert_eq!(RuledSurface::new(0, 4).curve_genus_term(NumClass::new(1, 4)), BigInt::from(-2));
        assert_eq!(RuledSurface::new(0, 4).curve_genus_term(NumClass::new(1, 5)), BigInt::from(-2));
        assert_eq!(RuledSurface::new(1, 4).curve_genus_term(NumClass::new(1, 4)), BigInt::from(0));
    }

    fn class() -> impl Strategy<Value = NumClass> {
        (-100i64..=100, -100i64..=100).prop_map(|(a, b)| NumClass::new(a, b))
    }

    proptest! {
        #[test]
        fn bilinear_and_symmetric(g in 0u32..50, e in -50i64..=50, x in class(), y in class(), z in class()) {
            let s = RuledSurface::new(g, e);
            prop_assert_eq!(s.intersect(x + y, z), s.intersect(x, z) + s.intersect(y, z));
            prop_assert_eq!(s.intersect(x, y), s.intersect(y, x));
        }

        #[test]
        fn canonical_square_matches_pairing(g in 0u32..=50, e in -50i64..=50) {
            let s = RuledSurface::new(g, e);
            let k = s.canonical_class();
            prop_assert_eq!(s.canonical_self_intersection(), s.intersect(k, k));
        }

        #[test]
        fn adjunction(g in 0u32..=50, e in -50i64..=50, x in class()) {
            let s = RuledSurface::new(g, e);
            let k = s.canonical_class();
            prop_assert_eq!(s.curve_genus_term(x), s.intersect(x, x) + s.intersect(x, k));
        }

        #[test]
        fn pairwise_intersection_positive(e in 4i64..=50, a in 1i64..=20, extra in 0i64..=50) {
            let s = RuledSurface::new(0, e);
            let x = NumClass::new(a, a * e + extra);
            let h = s.pairwise_intersection(x);
            prop_assert_eq!(&h, &BigInt::from(a * (2 * x.b - a * e)));
            prop_assert!(h >= BigInt::from(a * a * e));
            prop_assert!(h >= BigInt::from(4));
        }
    }
}
