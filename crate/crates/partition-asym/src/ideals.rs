//! Partition-ideal machinery: the subpartition order, unions, basis-avoiding
//! counts, the Cohen-Remmel equality check, growth-bound checks, and a
//! growth-exponent probe. The oscillating interval-ideal construction lives
//! in [`oscillation`].

pub mod oscillation;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::asym::hr_constant;
use crate::count::{
    enumerate_partitions, PartSet, PartitionMultiset, PartitionTable, DEFAULT_EXACT_CAP,
    SUBSET_CAP,
};
use crate::error::{Error, Result};
use crate::xreal::XReal;

/// Enumeration guard for basis-avoiding counts.
pub const BASIS_ENUM_CAP: u64 = 60;
/// Cohen-Remmel sequence-length cap (2^len index sets).
pub const COHEN_REMMEL_LEN_CAP: usize = 15;
/// Cohen-Remmel count-range cap (counts verified for all n <= N).
pub const COHEN_REMMEL_N_CAP: u64 = 60;

/// True iff every part's multiplicity in `a` is at most its multiplicity in
/// `b` (the subpartition order).
pub fn is_subpartition(a: &PartitionMultiset, b: &PartitionMultiset) -> bool {
    a.entries()
        .iter()
        .all(|&(part, mult)| b.multiplicity(part) >= mult)
}

fn union_pair(a: &PartitionMultiset, b: &PartitionMultiset) -> PartitionMultiset {
    let mut entries: Vec<(u64, u64)> = Vec::with_capacity(a.entries().len() + b.entries().len());
    let (mut i, mut j) = (0, 0);
    let (ae, be) = (a.entries(), b.entries());
    while i < ae.len() || j < be.len() {
        match (ae.get(i), be.get(j)) {
            (Some(&(pa, ma)), Some(&(pb, mb))) => {
                if pa == pb {
                    entries.push((pa, ma.max(mb)));
                    i += 1;
                    j += 1;
                } else if pa < pb {
                    entries.push((pa, ma));
                    i += 1;
                } else {
                    entries.push((pb, mb));
                    j += 1;
                }
            }
            (Some(&e), None) => {
                entries.push(e);
                i += 1;
            }
            (None, Some(&e)) => {
                entries.push(e);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    PartitionMultiset::from_entries(entries).expect("merged entries are valid")
}

/// Per-part maximum of multiplicities over the inputs; the empty list gives
/// the empty partition. Every input is a subpartition of the result.
pub fn union<'a>(ps: impl IntoIterator<Item = &'a PartitionMultiset>) -> PartitionMultiset {
    ps.into_iter()
        .fold(PartitionMultiset::empty(), |acc, p| union_pair(&acc, p))
}

/// An antichain of forbidden partitions: no element is a subpartition of
/// another (checked at construction, duplicates included).
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    elements: Vec<PartitionMultiset>,
}

impl Basis {
    pub fn empty() -> Self {
        Basis {
            elements: Vec::new(),
        }
    }

    pub fn new(elements: Vec<PartitionMultiset>) -> Result<Self> {
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                if i != j && is_subpartition(a, b) {
                    return Err(Error::domain(format!(
                        "basis is not an antichain: {a} is a subpartition of {b}"
                    )));
                }
            }
        }
        Ok(Basis { elements })
    }

    pub fn elements(&self) -> &[PartitionMultiset] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<PartitionMultiset>::deserialize(deserializer)?;
        Basis::new(elements).map_err(D::Error::custom)
    }
}

/// Count partitions of n that contain no element of `forbidden` as a
/// subpartition, by exhaustive enumeration. Works for arbitrary lists, not
/// just antichains.
pub fn avoiding_count_enum_list(n: u64, forbidden: &[PartitionMultiset]) -> Result<BigUint> {
    if n > BASIS_ENUM_CAP {
        return Err(Error::cap("basis-enumeration argument n", n, BASIS_ENUM_CAP));
    }
    let mut count = BigUint::zero();
    for p in enumerate_partitions(n)? {
        if forbidden.iter().all(|z| !is_subpartition(z, &p)) {
            count += BigUint::one();
        }
    }
    Ok(count)
}

/// Same count by signed inclusion-exclusion over unions:
/// p_{-Z}(n) = sum_{I subset Z} (-1)^{|I|} p(n - |union_{i in I} z_i|).
/// Containing every element of I is equivalent to containing their union,
/// and partitions containing a fixed multiset mu biject with partitions of
/// n - |mu|.
pub fn avoiding_count_ie_list(
    n: u64,
    forbidden: &[PartitionMultiset],
    table: &PartitionTable,
) -> Result<BigUint> {
    if forbidden.len() > SUBSET_CAP {
        return Err(Error::cap(
            "basis inclusion-exclusion size |Z|",
            forbidden.len(),
            SUBSET_CAP,
        ));
    }
    table.ensure(n)?;
    let mut plus = BigUint::zero();
    let mut minus = BigUint::zero();
    ie_union_walk(
        forbidden,
        0,
        &PartitionMultiset::empty(),
        false,
        n,
        table,
        &mut plus,
        &mut minus,
    )?;
    Ok(plus - minus)
}

#[allow(clippy::too_many_arguments)]
fn ie_union_walk(
    elems: &[PartitionMultiset],
    idx: usize,
    current: &PartitionMultiset,
    odd: bool,
    n: u64,
    table: &PartitionTable,
    plus: &mut BigUint,
    minus: &mut BigUint,
) -> Result<()> {
    if idx == elems.len() {
        let norm = current.norm();
        let arg = n as i128 - norm as i128;
        let term = table.partition_count_signed(arg)?;
        if odd {
            *minus += term;
        } else {
            *plus += term;
        }
        return Ok(());
    }
    ie_union_walk(elems, idx + 1, current, odd, n, table, plus, minus)?;
    let merged = union_pair(current, &elems[idx]);
    ie_union_walk(elems, idx + 1, &merged, !odd, n, table, plus, minus)
}

/// Enumeration-based count for a checked basis.
pub fn basis_avoiding_count_enum(n: u64, z: &Basis) -> Result<BigUint> {
    avoiding_count_enum_list(n, z.elements())
}

/// Inclusion-exclusion count for a checked basis.
pub fn basis_avoiding_count_ie(n: u64, z: &Basis, table: &PartitionTable) -> Result<BigUint> {
    avoiding_count_ie_list(n, z.elements(), table)
}

#[derive(Clone, Debug, Serialize)]
pub struct CohenRemmelRow {
    pub n: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub lambda_count: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub gamma_count: BigUint,
}

fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Outcome of a Cohen-Remmel verification run. Violations are report
/// content, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct CohenRemmelReport {
    pub hypothesis_holds: bool,
    /// Index sets (0-based) with unequal union norms; listing capped at 64.
    pub violated_index_sets: Vec<Vec<usize>>,
    pub violated_total: usize,
    /// Per-n counts, present when the hypothesis holds.
    pub rows: Vec<CohenRemmelRow>,
    /// n values where the two counting algorithms or the two sequences
    /// disagreed (always empty when the theorem applies).
    pub count_mismatches: Vec<u64>,
    pub pass: bool,
}

/// Verify the Cohen-Remmel hypothesis |union_I lambda| = |union_I gamma| for
/// every index set I, then the implied count equality p_{-Lambda}(n) =
/// p_{-Gamma}(n) for all n <= n_max, by both counting algorithms.
pub fn cohen_remmel_check(
    lambda: &[PartitionMultiset],
    gamma: &[PartitionMultiset],
    n_max: u64,
    table: &PartitionTable,
) -> Result<CohenRemmelReport> {
    if lambda.len() != gamma.len() {
        return Err(Error::domain("sequences must have equal length"));
    }
    if lambda.len() > COHEN_REMMEL_LEN_CAP {
        return Err(Error::cap(
            "Cohen-Remmel sequence length",
            lambda.len(),
            COHEN_REMMEL_LEN_CAP,
        ));
    }
    if n_max > COHEN_REMMEL_N_CAP {
        return Err(Error::cap("Cohen-Remmel count range N", n_max, COHEN_REMMEL_N_CAP));
    }
    let k = lambda.len();
    let mut violated: Vec<Vec<usize>> = Vec::new();
    let mut violated_total = 0usize;
    for mask in 1u32..(1 << k) {
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let lu = union(idx.iter().map(|&i| &lambda[i]));
        let gu = union(idx.iter().map(|&i| &gamma[i]));
        if lu.norm() != gu.norm() {
            violated_total += 1;
            if violated.len() < 64 {
                violated.push(idx);
            }
        }
    }
    let hypothesis_holds = violated_total == 0;
    let mut rows = Vec::new();
    let mut count_mismatches = Vec::new();
    if hypothesis_holds {
        for n in 0..=n_max {
            let le = avoiding_count_enum_list(n, lambda)?;
            let li = avoiding_count_ie_list(n, lambda, table)?;
            let ge = avoiding_count_enum_list(n, gamma)?;
            let gi = avoiding_count_ie_list(n, gamma, table)?;
            if le != li || ge != gi || le != ge {
                count_mismatches.push(n);
            }
            rows.push(CohenRemmelRow {
                n,
                lambda_count: le,
                gamma_count: ge,
            });
        }
    }
    let pass = hypothesis_holds && count_mismatches.is_empty();
    Ok(CohenRemmelReport {
        hypothesis_holds,
        violated_index_sets: violated,
        violated_total,
        rows,
        count_mismatches,
        pass,
    })
}

/// Growth-bound report: values of p_{-Gamma}(n) * n^k * e^{-C sqrt(n)} over a
/// grid, checked against a pinned constant.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthBoundReport {
    pub k: usize,
    pub norms: Vec<u64>,
    pub rows: Vec<GrowthBoundRow>,
    pub max_value: XReal,
    pub bound: XReal,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthBoundRow {
    pub n: u64,
    pub value: XReal,
}

/// For a basis with at least 2k-1 pairwise independent elements (disjoint
/// part sets), compare the counting function against the e^{C sqrt(n)} n^{-k}
/// envelope. The 2k-1 elements of smallest norm are selected and replaced by
/// the singleton partitions of their norms.
pub fn growth_bound_check(
    z: &Basis,
    k: usize,
    n_grid: &[u64],
    bound: &XReal,
    table: &PartitionTable,
    prec: usize,
) -> Result<GrowthBoundReport> {
    if k < 1 {
        return Err(Error::domain("k must be at least 1"));
    }
    let t = 2 * k - 1;
    if z.len() < t {
        return Err(Error::domain(format!(
            "basis has {} elements; need 2k-1 = {t} pairwise independent ones",
            z.len()
        )));
    }
    let mut sorted: Vec<&PartitionMultiset> = z.elements().iter().collect();
    sorted.sort_by_key(|p| p.norm());
    let chosen = &sorted[..t];
    for (i, a) in chosen.iter().enumerate() {
        for b in chosen.iter().skip(i + 1) {
            let shared = a
                .entries()
                .iter()
                .map(|&(p, _)| p)
                .find(|&p| b.multiplicity(p) > 0);
            if let Some(p) = shared {
                return Err(Error::domain(format!(
                    "elements {a} and {b} are not independent: shared part {p}"
                )));
            }
        }
    }
    let mut norms = Vec::with_capacity(t);
    for p in chosen {
        let norm = u64::try_from(p.norm())
            .map_err(|_| Error::domain("element norm exceeds u64 range"))?;
        norms.push(norm);
    }
    let gamma = PartSet::new(norms.iter().copied())
        .map_err(|_| Error::domain("selected elements must have distinct norms"))?;

    let c = hr_constant(prec);
    let mut rows = Vec::with_capacity(n_grid.len());
    let mut max_value = XReal::zero(prec);
    for &n in n_grid {
        if n < 1 {
            return Err(Error::domain("grid points must be positive"));
        }
        let count = table.avoiding_count_ie(n, &gamma)?;
        let nx = XReal::from_u64(n, prec);
        let value = if count.is_zero() {
            XReal::zero(prec)
        } else {
            XReal::from_biguint(&count, prec)
                .ln()
                .add(&XReal::from_u64(k as u64, prec).mul(&nx.ln()))
                .sub(&c.mul(&nx.sqrt()))
                .exp()
        };
        max_value = max_value.max(&value);
        rows.push(GrowthBoundRow { n, value });
    }
    let pass = max_value <= *bound;
    Ok(GrowthBoundReport {
        k,
        norms: gamma.parts().to_vec(),
        rows,
        max_value,
        bound: bound.clone(),
        pass,
    })
}

/// Least-squares fit of log p(n,X) - C sqrt(n) against log K - (1+k) log n.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthFit {
    pub k_hat: XReal,
    pub big_k_hat: XReal,
    /// Nearest m/2 to k_hat.
    pub nearest_half_integer: f64,
    pub half_integer_distance: XReal,
}

/// Exploratory exponent probe: fit (K, k) in p(n,X) ~ K e^{C sqrt(n)} n^{-1-k}
/// from a table of exact counts. Requires at least 8 ascending points.
pub fn fit_growth_exponent(counts: &[(u64, BigUint)], prec: usize) -> Result<GrowthFit> {
    if counts.len() < 8 {
        return Err(Error::domain(format!(
            "exponent fit needs at least 8 points, got {}",
            counts.len()
        )));
    }
    for w in counts.windows(2) {
        if w[0].0 >= w[1].0 {
            return Err(Error::domain("fit points must be strictly ascending in n"));
        }
    }
    if counts.first().is_some_and(|(n, _)| *n < 1) {
        return Err(Error::domain("fit points must be positive"));
    }
    let c = hr_constant(prec);
    let m = XReal::from_u64(counts.len() as u64, prec);
    let mut sx = XReal::zero(prec);
    let mut sy = XReal::zero(prec);
    let mut sxx = XReal::zero(prec);
    let mut sxy = XReal::zero(prec);
    for (n, count) in counts {
        if count.is_zero() {
            return Err(Error::domain("fit requires positive counts"));
        }
        let nx = XReal::from_u64(*n, prec);
        let x = nx.ln();
        let y = XReal::from_biguint(count, prec).ln().sub(&c.mul(&nx.sqrt()));
        sx = sx.add(&x);
        sy = sy.add(&y);
        sxx = sxx.add(&x.mul(&x));
        sxy = sxy.add(&x.mul(&y));
    }
    let slope = sxy.sub(&sx.mul(&sy).div(&m)).div(&sxx.sub(&sx.mul(&sx).div(&m)));
    let intercept = sy.sub(&slope.mul(&sx)).div(&m);
    let k_hat = slope.neg().sub(&XReal::one(prec));
    let big_k_hat = intercept.exp();
    let k_f64 = k_hat.to_f64_lossy();
    let mut nearest_half_integer = (2.0 * k_f64).round() / 2.0;
    if nearest_half_integer == 0.0 {
        nearest_half_integer = 0.0; // normalize -0.0
    }
    let half_integer_distance = k_hat
        .sub(&XReal::from_f64(nearest_half_integer, prec))
        .abs();
    Ok(GrowthFit {
        k_hat,
        big_k_hat,
        nearest_half_integer,
        half_integer_distance,
    })
}

/// One stage of an interval ideal: parts from [s, t] with multiplicity at
/// most t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageSpec {
    pub s: u64,
    pub t: u64,
}

/// A family of disjoint increasing part intervals [s_i, t_i] with per-stage
/// multiplicity cap t_i.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalIdealSpec {
    stages: Vec<StageSpec>,
}

impl IntervalIdealSpec {
    pub fn new(stages: Vec<(u64, u64)>) -> Result<Self> {
        let stages: Vec<StageSpec> = stages.into_iter().map(|(s, t)| StageSpec { s, t }).collect();
        for st in &stages {
            if st.s < 1 || st.s > st.t {
                return Err(Error::domain(format!(
                    "stage needs 1 <= s <= t, got s = {}, t = {}",
                    st.s, st.t
                )));
            }
        }
        for w in stages.windows(2) {
            if w[1].s <= w[0].t {
                return Err(Error::domain(format!(
                    "intervals must be disjoint and increasing: s = {} follows t = {}",
                    w[1].s, w[0].t
                )));
            }
        }
        Ok(IntervalIdealSpec { stages })
    }

    pub fn stages(&self) -> &[StageSpec] {
        &self.stages
    }
}

impl Serialize for IntervalIdealSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.stages.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalIdealSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let stages = Vec::<StageSpec>::deserialize(deserializer)?;
        IntervalIdealSpec::new(stages.into_iter().map(|st| (st.s, st.t)).collect())
            .map_err(D::Error::custom)
    }
}

/// Exact count of partitions of n drawing parts only from the given stage
/// intervals, with per-stage multiplicity caps: bounded-multiplicity DP with
/// a sliding subtraction window, O(n) big-int operations per part.
pub fn interval_ideal_count(n: u64, spec: &IntervalIdealSpec) -> Result<BigUint> {
    if n > DEFAULT_EXACT_CAP {
        return Err(Error::cap("interval-ideal argument n", n, DEFAULT_EXACT_CAP));
    }
    let n = n as usize;
    let mut dp = vec![BigUint::zero(); n + 1];
    dp[0] = BigUint::one();
    for st in &spec.stages {
        let cap = st.t as u128;
        for j in st.s..=st.t {
            let j = j as usize;
            if j > n {
                break;
            }
            // S[v] = prev[v] + S[v-j] - prev[v-(cap+1)j]
            let prev = dp.clone();
            let window = (cap + 1).saturating_mul(j as u128);
            for v in j..=n {
                let mut val = prev[v].clone();
                val += &dp[v - j];
                if (v as u128) >= window {
                    val -= &prev[v - window as usize];
                }
                dp[v] = val;
            }
        }
    }
    Ok(dp[n].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::global_table;
    use proptest::prelude::*;

    fn pm(parts: &[u64]) -> PartitionMultiset {
        PartitionMultiset::from_parts(parts).unwrap()
    }

    #[test]
    fn subpartition_examples() {
        assert!(is_subpartition(&pm(&[2, 2]), &pm(&[2, 2, 5])));
        assert!(!is_subpartition(&pm(&[2, 2, 2]), &pm(&[2, 2, 5])));
        assert!(is_subpartition(&PartitionMultiset::empty(), &pm(&[1, 9])));
    }

    #[test]
    fn union_examples() {
        let u = union([&pm(&[2, 2, 3]), &pm(&[2, 3, 3])]);
        assert_eq!(u, pm(&[2, 2, 3, 3]));
        assert_eq!(u.norm(), 10);
        assert_eq!(union([&pm(&[1, 4])]), pm(&[1, 4]));
        assert_eq!(union([&pm(&[1]), &pm(&[2])]), pm(&[1, 2]));
        assert_eq!(union([]), PartitionMultiset::empty());
    }

    #[test]
    fn basis_rejects_comparable_elements() {
        assert!(Basis::new(vec![pm(&[2]), pm(&[2, 2])]).is_err());
        assert!(Basis::new(vec![pm(&[2]), pm(&[2])]).is_err());
        assert!(Basis::new(vec![pm(&[2, 2]), pm(&[2, 3])]).is_ok());
    }

    #[test]
    fn basis_counts_match_spec_examples() {
        let t = global_table();
        // Z = {(1,1)}, n = 4: partitions of 4 with at most one part 1.
        let z = Basis::new(vec![pm(&[1, 1])]).unwrap();
        assert_eq!(basis_avoiding_count_enum(4, &z).unwrap(), BigUint::from(3u32));
        // p(4) - p(2) = 5 - 2 = 3 by inclusion-exclusion.
        assert_eq!(basis_avoiding_count_ie(4, &z, t).unwrap(), BigUint::from(3u32));

        // Empty basis counts everything.
        assert_eq!(
            basis_avoiding_count_enum(7, &Basis::empty()).unwrap(),
            t.partition_count(7).unwrap()
        );

        // Z = {(1)}: no part 1 at all; matches the part-set route.
        let z1 = Basis::new(vec![pm(&[1])]).unwrap();
        assert_eq!(basis_avoiding_count_enum(4, &z1).unwrap(), BigUint::from(2u32));
        assert_eq!(
            basis_avoiding_count_ie(4, &z1, t).unwrap(),
            t.avoiding_count_dp(4, &PartSet::new([1]).unwrap()).unwrap()
        );

        // Z = {(2,2),(2,3)}, n = 8: p(8)-p(4)-p(3)+p(1) = 22-5-3+1 = 15.
        let z2 = Basis::new(vec![pm(&[2, 2]), pm(&[2, 3])]).unwrap();
        assert_eq!(basis_avoiding_count_ie(8, &z2, t).unwrap(), BigUint::from(15u32));
        assert_eq!(basis_avoiding_count_enum(8, &z2).unwrap(), BigUint::from(15u32));
    }

    #[test]
    fn singleton_bases_reduce_to_part_sets() {
        let t = global_table();
        let z = Basis::new(vec![pm(&[2]), pm(&[5]), pm(&[9])]).unwrap();
        let s = PartSet::new([2, 5, 9]).unwrap();
        for n in [0u64, 5, 17, 30] {
            assert_eq!(
                basis_avoiding_count_ie(n, &z, t).unwrap(),
                t.avoiding_count_ie(n, &s).unwrap()
            );
        }
    }

    #[test]
    fn enumeration_guard_is_enforced() {
        let z = Basis::new(vec![pm(&[1])]).unwrap();
        assert!(matches!(
            basis_avoiding_count_enum(BASIS_ENUM_CAP + 1, &z),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn cohen_remmel_euler_pair_small() {
        let t = global_table();
        let lambda: Vec<_> = (1..=6u64).map(|i| pm(&[i, i])).collect();
        let gamma: Vec<_> = (1..=6u64).map(|i| pm(&[2 * i])).collect();
        let report = cohen_remmel_check(&lambda, &gamma, 20, t).unwrap();
        assert!(report.pass, "violations: {:?}", report.violated_index_sets);
        // Distinct = odd at n = 10: both count 10.
        assert_eq!(report.rows[10].lambda_count, BigUint::from(10u32));
        assert_eq!(report.rows[10].gamma_count, BigUint::from(10u32));
    }

    #[test]
    fn cohen_remmel_identical_sequences_trivially_pass() {
        let t = global_table();
        let seq = vec![pm(&[1, 2]), pm(&[4])];
        let report = cohen_remmel_check(&seq, &seq, 12, t).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn cohen_remmel_detects_norm_mismatch() {
        let t = global_table();
        let report = cohen_remmel_check(&[pm(&[1])], &[pm(&[2])], 5, t).unwrap();
        assert!(!report.hypothesis_holds);
        assert_eq!(report.violated_index_sets, vec![vec![0]]);
        assert!(!report.pass);
    }

    #[test]
    fn growth_bound_k1_with_part_one() {
        let t = global_table();
        let z = Basis::new(vec![pm(&[1]), pm(&[2, 2])]).unwrap();
        let bound = XReal::from_f64(0.1, 256);
        let grid: Vec<u64> = (1..=20).map(|i| i * 100).collect();
        let report = growth_bound_check(&z, 1, &grid, &bound, t, 256).unwrap();
        assert!(report.pass, "max {}", report.max_value);
        assert_eq!(report.norms, vec![1]);
    }

    #[test]
    fn growth_bound_k2_bounded_through_2000() {
        let t = global_table();
        let z = Basis::new(vec![pm(&[1]), pm(&[2]), pm(&[3])]).unwrap();
        let bound = XReal::from_f64(crate::tolerances::GROWTH_BOUND_CONSTANT, 256);
        let grid: Vec<u64> = (1..=20).map(|i| i * 100).collect();
        let report = growth_bound_check(&z, 2, &grid, &bound, t, 256).unwrap();
        assert!(report.pass, "max {}", report.max_value);
        assert_eq!(report.norms, vec![1, 2, 3]);
        // The sequence decays, so the maximum sits at the smallest n.
        assert_eq!(report.max_value, report.rows[0].value);
    }

    #[test]
    fn growth_bound_rejects_dependent_elements() {
        let t = global_table();
        let z = Basis::new(vec![pm(&[2, 3]), pm(&[3, 4])]).unwrap();
        let bound = XReal::one(256);
        let err = growth_bound_check(&z, 2, &[100], &bound, t, 256);
        assert!(err.is_err());
        let z_ok = Basis::new(vec![pm(&[2, 3]), pm(&[4])]).unwrap();
        assert!(growth_bound_check(&z_ok, 2, &[100], &bound, t, 256).is_err()); // needs 3 elements
    }

    #[test]
    fn interval_ideal_toy_counts() {
        // Single stage (2,3) with cap 3: parts {2,3}, each at most 3 times.
        let spec = IntervalIdealSpec::new(vec![(2, 3)]).unwrap();
        assert_eq!(interval_ideal_count(28, &spec).unwrap(), BigUint::zero());
        assert_eq!(interval_ideal_count(5, &spec).unwrap(), BigUint::one());
        assert_eq!(interval_ideal_count(0, &spec).unwrap(), BigUint::one());
        // Max representable mass is 3*(2+3) = 15.
        assert_eq!(interval_ideal_count(15, &spec).unwrap(), BigUint::one());
        assert_eq!(interval_ideal_count(16, &spec).unwrap(), BigUint::zero());
    }

    #[test]
    fn interval_ideal_matches_brute_force() {
        // Cross-check the windowed DP against direct enumeration with caps.
        let spec = IntervalIdealSpec::new(vec![(1, 2), (4, 5)]).unwrap();
        for n in 0..=30u64 {
            let brute = enumerate_partitions(n)
                .unwrap()
                .filter(|p| {
                    p.entries().iter().all(|&(part, mult)| {
                        spec.stages()
                            .iter()
                            .any(|st| part >= st.s && part <= st.t && mult <= st.t)
                    })
                })
                .count();
            assert_eq!(
                interval_ideal_count(n, &spec).unwrap(),
                BigUint::from(brute),
                "n = {n}"
            );
        }
    }

    #[test]
    fn interval_spec_validation() {
        assert!(IntervalIdealSpec::new(vec![(3, 2)]).is_err());
        assert!(IntervalIdealSpec::new(vec![(0, 2)]).is_err());
        assert!(IntervalIdealSpec::new(vec![(2, 3), (3, 5)]).is_err());
        assert!(IntervalIdealSpec::new(vec![(2, 3), (4, 9)]).is_ok());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = IntervalIdealSpec::new(vec![(2, 3), (29, 40)]).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"[{"s":2,"t":3},{"s":29,"t":40}]"#);
        let back: IntervalIdealSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);

        let basis: Basis = serde_json::from_str("[[1,1],[2,3]]").unwrap();
        assert_eq!(basis.elements()[0], pm(&[1, 1]));
        assert!(serde_json::from_str::<Basis>("[[1],[1,1]]").is_err());
    }

    #[test]
    fn fit_recovers_known_exponents() {
        let t = global_table();
        // X with no restriction: k ~ 0.
        let grid: Vec<u64> = vec![2500, 3536, 5000, 7071, 10000, 14142, 20000, 28284, 40000];
        let counts: Vec<(u64, BigUint)> = grid
            .iter()
            .map(|&n| (n, t.partition_count(n).unwrap()))
            .collect();
        let fit = fit_growth_exponent(&counts, 256).unwrap();
        assert!(
            fit.k_hat.abs() < XReal::from_f64(0.1, 256),
            "k_hat = {}",
            fit.k_hat
        );
        assert_eq!(fit.nearest_half_integer, 0.0);

        assert!(fit_growth_exponent(&counts[..7], 256).is_err());
        let mut with_zero = counts.clone();
        with_zero[0].0 = 0;
        assert!(fit_growth_exponent(&with_zero, 256).is_err());
    }

    prop_compose! {
        // Random multisets with small parts/multiplicities.
        fn arb_pm()(entries in proptest::collection::vec((1u64..=6, 1u64..=3), 0..=3))
            -> PartitionMultiset
        {
            let mut seen = std::collections::BTreeMap::new();
            for (p, m) in entries { seen.entry(p).or_insert(m); }
            PartitionMultiset::from_entries(seen).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn prop_subpartition_is_partial_order(a in arb_pm(), b in arb_pm(), c in arb_pm()) {
            prop_assert!(is_subpartition(&a, &a));
            if is_subpartition(&a, &b) && is_subpartition(&b, &a) {
                prop_assert_eq!(&a, &b);
            }
            if is_subpartition(&a, &b) && is_subpartition(&b, &c) {
                prop_assert!(is_subpartition(&a, &c));
            }
        }

        #[test]
        fn prop_union_laws(a in arb_pm(), b in arb_pm(), c in arb_pm()) {
            prop_assert_eq!(union([&a, &a]), a.clone());
            prop_assert_eq!(union([&a, &b]), union([&b, &a]));
            prop_assert_eq!(union([&union([&a, &b]), &c]), union([&a, &union([&b, &c])]));
            prop_assert!(is_subpartition(&a, &union([&a, &b])));
            prop_assert!(is_subpartition(&b, &union([&a, &b])));
        }

        #[test]
        fn prop_enum_equals_ie_on_random_bases(
            raw in proptest::collection::vec(
                proptest::collection::vec((1u64..=6, 1u64..=3), 1..=2), 1..=4),
            n in 0u64..=40,
        ) {
            let t = global_table();
            let elems: Vec<PartitionMultiset> = raw.into_iter().map(|entries| {
                let mut seen = std::collections::BTreeMap::new();
                for (p, m) in entries { seen.entry(p).or_insert(m); }
                PartitionMultiset::from_entries(seen).unwrap()
            }).collect();
            // Lists need not be antichains; both algorithms accept that.
            let by_enum = avoiding_count_enum_list(n, &elems).unwrap();
            let by_ie = avoiding_count_ie_list(n, &elems, t).unwrap();
            prop_assert_eq!(by_enum, by_ie);
        }
    }
}
