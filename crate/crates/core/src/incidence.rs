//! Concrete point/curve incidence structures.
//!
//! Points are anonymous: a point is just the set of curves through it.
//! Curves are numbered `1..=d`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::ArrangementProfile;
use crate::error::{Error, Result};
use crate::surface::{NumClass, RuledSurface};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IncidenceDoc", into = "IncidenceDoc")]
pub struct IncidenceStructure {
    d: u32,
    points: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IncidenceDoc {
    d: u32,
    points: Vec<Vec<u32>>,
}

impl TryFrom<IncidenceDoc> for IncidenceStructure {
    type Error = Error;

    fn try_from(doc: IncidenceDoc) -> Result<Self> {
        IncidenceStructure::new(doc.d, doc.points)
    }
}

impl From<IncidenceStructure> for IncidenceDoc {
    fn from(inc: IncidenceStructure) -> Self {
        IncidenceDoc { d: inc.d, points: inc.points }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveStats {
    pub curve_index: u32,
    pub t_k_j: BTreeMap<u32, u64>,
    pub f0_j: u64,
    pub t2_j: u64,
    pub t6_j: u64,
}

impl CurveStats {
    pub fn t_k(&self, k: u32) -> u64 {
        self.t_k_j.get(&k).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> Option<u32> {
        self.t_k_j.iter().filter(|(_, &n)| n > 0).map(|(&k, _)| k).max()
    }

    /// `sum_{p on C_j} (r_p - 1)`.
    pub fn excess_sum(&self) -> u64 {
        self.t_k_j.iter().map(|(&k, &n)| (u64::from(k) - 1) * n).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl AuditCheck {
    fn from_first(counterexample: Option<String>) -> Self {
        Self { passed: counterexample.is_none(), counterexample }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    #[serde(serialize_with = "crate::num::ser_int")]
    pub expected_h: BigInt,
    /// Every pair of curves shares exactly `h` points.
    pub pair_cooccurrence: AuditCheck,
    /// `sum_{p on C_j} (r_p - 1) = h (d - 1)` for each curve.
    pub per_curve_excess: AuditCheck,
    /// `sum_j t_k^j = k t_k` for each multiplicity.
    pub multiplicity_double_count: AuditCheck,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.pair_cooccurrence.passed
            && self.per_curve_excess.passed
            && self.multiplicity_double_count.passed
    }
}

impl IncidenceStructure {
    /// Each point must be a set of at least two distinct curves in `1..=d`.
    pub fn new(d: u32, points: Vec<Vec<u32>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("incidence structure needs d >= 1".into()));
        }
        let mut normalized = Vec::with_capacity(points.len());
        for (i, mut p) in points.into_iter().enumerate() {
            p.sort_unstable();
            let len = p.len();
            p.dedup();
            if p.len() != len {
                return Err(Error::Precondition(format!("point {i} repeats a curve")));
            }
            if p.len() < 2 {
                return Err(Error::Precondition(format!("point {i} lies on fewer than two curves")));
            }
            if let Some(&c) = p.iter().find(|&&c| c == 0 || c > d) {
                return Err(Error::Precondition(format!("point {i} references curve {c} outside 1..={d}")));
            }
            normalized.push(p);
        }
        Ok(Self { d, points: normalized })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// `binom(d, 2) * h` double points, `h` for each pair, ordered by `(i, j, copy)`.
    pub fn realize_generic(d: u32, h: u32) -> Result<Self> {
        if d < 2 || h < 1 {
            return Err(Error::Precondition(format!("realize_generic needs d >= 2, h >= 1 (got {d}, {h})")));
        }
        let mut points = Vec::new();
        for i in 1..=d {
            for j in i + 1..=d {
                for _ in 0..h {
                    points.push(vec![i, j]);
                }
            }
        }
        Ok(Self { d, points })
    }

    /// Each point replaced by `m` copies: the combinatorial effect of a
    /// degree-`m` pull-back that is unramified over the singular points.
    pub fn replicate(&self, m: u32) -> Self {
        let points = self
            .points
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.clone(), m as usize))
            .collect();
        Self { d: self.d, points }
    }

    pub fn global_t(&self) -> BTreeMap<u32, u64> {
        let mut t = BTreeMap::new();
        for p in &self.points {
            *t.entry(p.len() as u32).or_insert(0) += 1;
        }
        t
    }

    pub fn curve_stats(&self) -> Vec<CurveStats> {
        let mut per: Vec<BTreeMap<u32, u64>> = vec![BTreeMap::new(); self.d as usize];
        for p in &self.points {
            let k = p.len() as u32;
            for &c in p {
                *per[(c - 1) as usize].entry(k).or_insert(0) += 1;
            }
        }
        per.into_iter()
            .enumerate()
            .map(|(i, t_k_j)| {
                let get = |k| t_k_j.get(&k).copied().unwrap_or(0);
                CurveStats {
                    curve_index: i as u32 + 1,
                    f0_j: t_k_j.values().sum(),
                    t2_j: get(2),
                    t6_j: get(6),
                    t_k_j,
                }
            })
            .collect()
    }

    /// `G[i][j] = v_i . v_j` for the 0/1 incidence vectors `v_i`.
    pub fn gram_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.d as usize;
        let mut g = vec![vec![0u64; n]; n];
        for p in &self.points {
            for &x in p {
                for &y in p {
                    g[(x - 1) as usize][(y - 1) as usize] += 1;
                }
            }
        }
        g
    }

    #[allow(clippy::needless_range_loop)] // symmetric matrix, index pairs read better
    pub fn audit(&self, expected_h: &BigInt) -> AuditReport {
        let gram = self.gram_matrix();
        let n = self.d as usize;

        let mut pair_bad = None;
        'pairs: for i in 0..n {
            for j in i + 1..n {
                if BigInt::from(gram[i][j]) != *expected_h {
                    pair_bad = Some(format!(
                        "curves {} and {} share {} points, expected {expected_h}",
                        i + 1,
                        j + 1,
                        gram[i][j]
                    ));
                    break 'pairs;
                }
            }
        }

        let stats = self.curve_stats();
        let target = expected_h * BigInt::from(self.d.saturating_sub(1));
        let excess_bad = stats.iter().find_map(|cs| {
            let sum = BigInt::from(cs.excess_sum());
            (sum != target).then(|| {
                format!("curve {}: sum (r_p - 1) = {sum}, expected {target}", cs.curve_index)
            })
        });

        let global = self.global_t();
        let mut summed: BTreeMap<u32, u64> = BTreeMap::new();
        for cs in &stats {
            for (&k, &v) in &cs.t_k_j {
                *summed.entry(k).or_insert(0) += v;
            }
        }
        let double_bad = global.iter().find_map(|(&k, &tk)| {
            let s = summed.get(&k).copied().unwrap_or(0);
            (s != u64::from(k) * tk).then(|| format!("k = {k}: sum_j t_k^j = {s}, k t_k = {}", u64::from(k) * tk))
        });

        AuditReport {
            expected_h: expected_h.clone(),
            pair_cooccurrence: AuditCheck::from_first(pair_bad),
            per_curve_excess: AuditCheck::from_first(excess_bad),
            multiplicity_double_count: AuditCheck::from_first(double_bad),
        }
    }

    /// True iff some four curves have no point in common.
    pub fn check_four_curve(&self) -> Result<bool> {
        if self.d < 4 {
            return Err(Error::Precondition(format!("four-curve check needs d >= 4, got {}", self.d)));
        }
        let total = binom(u64::from(self.d), 4);
        let covered_upper: u64 = self
            .points
            .iter()
            .map(|p| binom(p.len() as u64, 4))
            .fold(0u64, |acc, x| acc.saturating_add(x));
        if covered_upper < total {
            return Ok(true);
        }
        let mut covered: HashSet<[u32; 4]> = HashSet::new();
        for p in self.points.iter().filter(|p| p.len() >= 4) {
            for_each_quadruple(p, |q| {
                covered.insert(q);
            });
            if covered.len() as u64 == total {
                return Ok(false);
            }
        }
        Ok((covered.len() as u64) < total)
    }

    /// Exact rank over Q of the `d x f0` incidence matrix (rows are curves).
    pub fn incidence_rank(&self) -> usize {
        let mut rows: Vec<Vec<BigRational>> = (1..=self.d)
            .map(|c| {
                self.points
                    .iter()
                    .map(|p| {
                        if p.binary_search(&c).is_ok() {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        rational_rank(&mut rows)
    }

    /// Replace points `i` and `j` (disjoint curve sets) by their union,
    /// deleting one double point `{x, y}` for every `x` in one and `y` in the
    /// other so that pairwise co-occurrence counts are unchanged. Returns
    /// false (leaving `self` untouched) if the merge is impossible or the
    /// union would have more than `max_multiplicity` curves.
    pub fn merge(&mut self, i: usize, j: usize, max_multiplicity: usize) -> bool {
        if i == j || i >= self.points.len() || j >= self.points.len() {
            return false;
        }
        let (p, q) = (&self.points[i], &self.points[j]);
        if p.iter().any(|c| q.binary_search(c).is_ok()) || p.len() + q.len() > max_multiplicity {
            return false;
        }
        let mut doomed: HashSet<usize> = HashSet::from([i, j]);
        for &x in p {
            for &y in q {
                let pair = if x < y { [x, y] } else { [y, x] };
                let found = self
                    .points
                    .iter()
                    .enumerate()
                    .find(|(idx, pt)| !doomed.contains(idx) && pt.as_slice() == pair);
                match found {
                    Some((idx, _)) => {
                        doomed.insert(idx);
                    }
                    None => return false,
                }
            }
        }
        let mut union: Vec<u32> = p.iter().chain(q.iter()).copied().collect();
        union.sort_unstable();
        let mut idx = 0;
        self.points.retain(|_| {
            let keep = !doomed.contains(&idx);
            idx += 1;
            keep
        });
        self.points.push(union);
        true
    }

    /// A structure with constant pairwise co-occurrence `h`, obtained from
    /// the generic one by up to `attempts` random merges. Multiplicities stay
    /// below `d`, so no point lies on every curve.
    pub fn random_merged<R: Rng + ?Sized>(d: u32, h: u32, attempts: usize, rng: &mut R) -> Result<Self> {
        let mut inc = Self::realize_generic(d, h)?;
        let cap = (d as usize).saturating_sub(1);
        for _ in 0..attempts {
            let n = inc.points.len();
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            inc.merge(i, j, cap);
        }
        inc.points.shuffle(rng);
        Ok(inc)
    }

    /// Profile of this structure on surface `s` with curves in class `cls`.
    /// The audit must pass against `h = 2ab - a^2 e`.
    pub fn profile_of(&self, s: RuledSurface, cls: NumClass) -> Result<ArrangementProfile> {
        let h = s.pairwise_intersection(cls);
        let report = self.audit(&h);
        if !report.passed() {
            let reason = [
                &report.pair_cooccurrence,
                &report.per_curve_excess,
                &report.multiplicity_double_count,
            ]
            .iter()
            .find_map(|c| c.counterexample.clone())
            .unwrap_or_default();
            return Err(Error::AuditFailed(reason));
        }
        let mut profile = ArrangementProfile::new(s, cls, self.d, self.global_t());
        profile.a1_four_curve_flag = self.d >= 4 && self.check_four_curve()?;
        Ok(profile)
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc.to_u64().unwrap_or(u64::MAX)
}

fn for_each_quadruple(p: &[u32], mut f: impl FnMut([u32; 4])) {
    let n = p.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    f([p[a], p[b], p[c], p[d]]);
                }
            }
        }
    }
}

/// Gaussian elimination over Q; pivot is the first nonzero entry scanning
/// columns left to right and rows top to bottom.
fn rational_rank(rows: &mut [Vec<BigRational>]) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pivot) = (rank..n_rows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(pivot_row.iter()).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Fraction-free determinant (Bareiss) of an integer matrix; used as an
    /// independent route to full rank via `det(V V^T) != 0`.
    fn bareiss_det(m: &[Vec<u64>]) -> BigInt {
        let n = m.len();
        let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    #[test]
    fn audit_generic_d4_h1() {
        let inc = IncidenceStructure::realize_generic(4, 1).unwrap();
        assert_eq!(inc.point_count(), 6);
        let r = inc.audit(&h(1));
        assert!(r.passed(), "{r:?}");
        for cs in inc.curve_stats() {
            assert_eq!(cs.excess_sum(), 3);
        }
    }

    #[test]
    fn audit_detects_missing_point() {
        let mut pts = IncidenceStructure::realize_generic(4, 1).unwrap().points().to_vec();
        let removed = pts.remove(2);
        let inc = IncidenceStructure::new(4, pts).unwrap();
        let r = inc.audit(&h(1));
        assert!(!r.pair_cooccurrence.passed);
        let msg = r.pair_cooccurrence.counterexample.unwrap();
        assert!(msg.contains(&format!("curves {} and {}", removed[0], removed[1])), "{msg}");
    }

    #[test]
    fn audit_triple_point_structure() {
        let inc = IncidenceStructure::new(4, vec![vec![1, 2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]).unwrap();
        assert!(inc.audit(&h(1)).passed());
        assert_eq!(inc.global_t(), BTreeMap::from([(2, 3), (3, 1)]));
        // h = 1 is impossible for a valid class (h >= a^2 e >= 4)
        let err = inc.profile_of(RuledSurface::new(0, 4), NumClass::new(1, 4)).unwrap_err();
        assert!(matches!(err, Error::AuditFailed(_)));
    }

    #[test]
    fn profile_of_generic() {
        let inc = IncidenceStructure::realize_generic(4, 4).unwrap();
        let p = inc.profile_of(RuledSurface::new(0, 4), NumClass::new(1, 4)).unwrap();
        assert_eq!(p.t, BTreeMap::from([(2, 24)]));
        assert!(p.a1_four_curve_flag);
        assert!(!p.c0_disjoint);
        assert!(p.validate_star().fully_verified());
    }

    #[test]
    fn realize_generic_sizes() {
        assert_eq!(IncidenceStructure::realize_generic(4, 4).unwrap().point_count(), 24);
        assert_eq!(IncidenceStructure::realize_generic(21, 4).unwrap().point_count(), 840);
        let inc = IncidenceStructure::realize_generic(3, 2).unwrap();
        assert_eq!(inc.points(), &[vec![1, 2], vec![1, 2], vec![1, 3], vec![1, 3], vec![2, 3], vec![2, 3]]);
        assert!(IncidenceStructure::realize_generic(1, 1).is_err());
        assert!(IncidenceStructure::realize_generic(4, 0).is_err());
    }

    #[test]
    fn realize_generic_always_audits() {
        for d in 2..=30 {
            for hh in 1..=10 {
                let inc = IncidenceStructure::realize_generic(d, hh).unwrap();
                assert!(inc.audit(&h(hh.into())).passed(), "d={d} h={hh}");
            }
        }
    }

    #[test]
    fn four_curve_examples() {
        assert!(IncidenceStructure::realize_generic(4, 1).unwrap().check_four_curve().unwrap());
        let all = IncidenceStructure::new(4, vec![vec![1, 2, 3, 4], vec![1, 2, 3, 4]]).unwrap();
        assert!(!all.check_four_curve().unwrap());
        let small = IncidenceStructure::realize_generic(3, 1).unwrap();
        assert!(small.check_four_curve().is_err());
        // every 4-subset of 5 curves covered by some point
        let pts: Vec<Vec<u32>> = (1..=5).map(|skip| (1..=5).filter(|&c| c != skip).collect()).collect();
        assert!(!IncidenceStructure::new(5, pts.clone()).unwrap().check_four_curve().unwrap());
        assert!(IncidenceStructure::new(5, pts[1..].to_vec()).unwrap().check_four_curve().unwrap());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IncidenceStructure::realize_generic(4, 4).unwrap().incidence_rank(), 4);
        let single = IncidenceStructure::new(4, vec![vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(single.incidence_rank(), 1);
        let inc = IncidenceStructure::new(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        assert_eq!(inc.incidence_rank(), 3);
        let inc = IncidenceStructure::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(inc.incidence_rank(), 2);
    }

    #[test]
    fn merge_preserves_cooccurrence() {
        let mut inc = IncidenceStructure::realize_generic(5, 2).unwrap();
        // points 0 = {1,2}, 2 = {1,3}: not disjoint
        assert!(!inc.merge(0, 2, 4));
        // {1,2} and {3,4} -> {1,2,3,4}, consuming {1,3},{1,4},{2,3},{2,4}
        let i = inc.points().iter().position(|p| p == &[1, 2]).unwrap();
        let j = inc.points().iter().position(|p| p == &[3, 4]).unwrap();
        assert!(inc.merge(i, j, 4));
        assert_eq!(inc.point_count(), 20 - 6 + 1);
        assert!(inc.audit(&h(2)).passed());
        assert_eq!(inc.global_t(), BTreeMap::from([(2, 14), (4, 1)]));
        // cap respected
        let mut inc = IncidenceStructure::realize_generic(4, 2).unwrap();
        assert!(!inc.merge(0, 11, 3));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn random_structures_full_rank_and_gram() {
        let seed = 0x5eed_0001;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for round in 0..60 {
            let d = rng.gen_range(4..=9);
            let hh = rng.gen_range(1..=5);
            let inc = IncidenceStructure::random_merged(d, hh, 200, &mut rng).unwrap();
            let hb = h(hh.into());
            assert!(inc.audit(&hb).passed(), "seed {seed} round {round}");
            assert_eq!(inc.global_t().get(&d), None);
            assert_eq!(inc.incidence_rank(), d as usize, "seed {seed} round {round}");
            assert!(inc.point_count() >= d as usize);

            let gram = inc.gram_matrix();
            for i in 0..d as usize {
                for j in 0..d as usize {
                    if i == j {
                        assert!(gram[i][i] > u64::from(hh));
                    } else {
                        assert_eq!(gram[i][j], u64::from(hh));
                    }
                }
            }
            assert!(!bareiss_det(&gram).is_zero());

            let f1: u64 = inc.global_t().iter().map(|(&k, &n)| u64::from(k) * n).sum();
            let f0_sum: u64 = inc.curve_stats().iter().map(|c| c.f0_j).sum();
            assert_eq!(f0_sum, f1);
        }
    }

    #[test]
    fn bareiss_oracle_sanity() {
        assert_eq!(bareiss_det(&[vec![2, 1], vec![1, 2]]), h(3));
        assert_eq!(bareiss_det(&[vec![1, 1], vec![1, 1]]), h(0));
        assert_eq!(bareiss_det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 5]]), h(-5));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let inc: IncidenceStructure = serde_json::from_str(r#"{"d":4,"points":[[2,1,3],[1,4],[2,4],[3,4]]}"#).unwrap();
        assert_eq!(inc.points()[0], vec![1, 2, 3]);
        let back = serde_json::to_string(&inc).unwrap();
        assert_eq!(back, r#"{"d":4,"points":[[1,2,3],[1,4],[2,4],[3,4]]}"#);
        assert!(serde_json::from_str::<IncidenceStructure>(r#"{"d":4,"points":[[1]]}"#).is_err());
        assert!(serde_json::from_str::<IncidenceStructure>(r#"{"d":4,"points":[[1,5]]}"#).is_err());
        assert!(serde_json::from_str::<IncidenceStructure>(r#"{"d":4,"points":[[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<IncidenceStructure>(r#"{"d":4,"points":[],"x":1}"#).is_err());
    }
}
