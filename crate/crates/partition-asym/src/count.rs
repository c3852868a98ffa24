//! Exact arbitrary-precision partition counting.
//!
//! Four routes to the same numbers, deliberately independent of each other so
//! they can cross-check:
//!
//! - [`PartitionTable::partition_count`]: unrestricted p(n) via Euler's
//!   pentagonal-number recurrence, memoized (O(n^1.5) big-int additions).
//! - [`PartitionTable::restricted_count`]: partitions using only a given set
//!   of parts, by knapsack-style DP.
//! - [`PartitionTable::avoiding_count_dp`] / [`PartitionTable::avoiding_count_ie`]:
//!   partitions using no part from a forbidden set, by DP and by signed
//!   inclusion-exclusion over subset sums respectively.
//! - [`enumerate_partitions`]: brute-force enumeration in a fixed canonical
//!   order; the oracle everything else is tested against.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on arguments to the exact counting routines.
pub const DEFAULT_EXACT_CAP: u64 = 100_000;
/// Brute-force enumeration guard.
pub const ENUM_CAP: u64 = 80;
/// Inclusion-exclusion subset cap (2^t signed terms).
pub const SUBSET_CAP: usize = 20;

/// A partition stored as (part, multiplicity) pairs, sorted by part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionMultiset {
    entries: Vec<(u64, u64)>,
}

impl PartitionMultiset {
    pub fn empty() -> Self {
        PartitionMultiset { entries: Vec::new() }
    }

    /// Build from a list of parts with repetition, e.g. `[2, 2, 3]`.
    pub fn from_parts(parts: &[u64]) -> Result<Self> {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let mut entries: Vec<(u64, u64)> = Vec::new();
        for p in sorted {
            if p == 0 {
                return Err(Error::domain("partition parts must be positive"));
            }
            match entries.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => entries.push((p, 1)),
            }
        }
        Ok(PartitionMultiset { entries })
    }

    /// Build from (part, multiplicity) pairs in any order.
    pub fn from_entries(entries: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut v: Vec<(u64, u64)> = entries.into_iter().collect();
        v.sort_unstable();
        for w in v.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::domain(format!(
                    "duplicate part {} in multiset entries",
                    w[0].0
                )));
            }
        }
        if v.iter().any(|&(p, m)| p == 0 || m == 0) {
            return Err(Error::domain(
                "parts and multiplicities must both be positive",
            ));
        }
        Ok(PartitionMultiset { entries: v })
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.entries
            .binary_search_by_key(&part, |&(p, _)| p)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Sum of all parts with multiplicity.
    pub fn norm(&self) -> u128 {
        self.entries
            .iter()
            .map(|&(p, m)| p as u128 * m as u128)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parts expanded with repetition, ascending. `[2, 2, 3]` style.
    pub fn expanded_parts(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &(p, m) in &self.entries {
            for _ in 0..m {
                out.push(p);
            }
        }
        out
    }
}

impl fmt::Display for PartitionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut first = true;
        for &(p, m) in &self.entries {
            for _ in 0..m {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
                first = false;
            }
        }
        write!(f, ")")
    }
}

// JSON form: array of parts with repetition, ascending.
impl Serialize for PartitionMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.expanded_parts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PartitionMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u64>::deserialize(deserializer)?;
        PartitionMultiset::from_parts(&parts).map_err(D::Error::custom)
    }
}

/// A finite set of positive integer parts, strictly increasing internally.
/// Used both as a forbidden set S and as an allowed set; duplicates are
/// rejected at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartSet {
    parts: Vec<u64>,
}

impl PartSet {
    pub fn empty() -> Self {
        PartSet { parts: Vec::new() }
    }

    pub fn new(parts: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = parts.into_iter().collect();
        v.sort_unstable();
        if v.first() == Some(&0) {
            return Err(Error::domain("part sets contain positive integers only"));
        }
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::domain(format!("duplicate part {} in set", w[0])));
            }
        }
        Ok(PartSet { parts: v })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, part: u64) -> bool {
        self.parts.binary_search(&part).is_ok()
    }

    pub fn max(&self) -> Option<u64> {
        self.parts.last().copied()
    }

    /// gcd of the set; 0 for the empty set.
    pub fn gcd(&self) -> u64 {
        self.parts.iter().fold(0, |g, &p| num_integer::gcd(g, p))
    }
}

impl fmt::Display for PartSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Memoized table of p(n) values plus the exact-count cap. Safe for
/// concurrent readers with exclusive extension; results are bit-identical
/// regardless of which thread extends it first.
pub struct PartitionTable {
    cap: u64,
    memo: RwLock<Vec<BigUint>>,
}

impl Default for PartitionTable {
    fn default() -> Self {
        PartitionTable::with_cap(DEFAULT_EXACT_CAP)
    }
}

impl PartitionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(cap: u64) -> Self {
        PartitionTable {
            cap,
            memo: RwLock::new(vec![BigUint::one()]),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    fn check_cap(&self, n: u64) -> Result<()> {
        if n > self.cap {
            return Err(Error::cap("exact-count argument n", n, self.cap));
        }
        Ok(())
    }

    /// Extend the memo through index `n` with the pentagonal recurrence
    ///   p(i) = sum_{k>=1} (-1)^{k+1} [p(i - k(3k-1)/2) + p(i - k(3k+1)/2)].
    pub fn ensure(&self, n: u64) -> Result<()> {
        self.check_cap(n)?;
        let n = n as usize;
        {
            let memo = self.memo.read().expect("memo lock");
            if memo.len() > n {
                return Ok(());
            }
        }
        let mut memo = self.memo.write().expect("memo lock");
        for i in memo.len()..=n {
            let mut plus = BigUint::zero();
            let mut minus = BigUint::zero();
            let mut k: u64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let positive = k % 2 == 1;
                if positive {
                    plus += &memo[i - g1];
                } else {
                    minus += &memo[i - g1];
                }
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    if positive {
                        plus += &memo[i - g2];
                    } else {
                        minus += &memo[i - g2];
                    }
                }
                k += 1;
            }
            memo.push(plus - minus);
        }
        Ok(())
    }

    /// Exact p(n). A call for n populates all m <= n.
    pub fn partition_count(&self, n: u64) -> Result<BigUint> {
        self.ensure(n)?;
        let memo = self.memo.read().expect("memo lock");
        Ok(memo[n as usize].clone())
    }

    /// p(n) extended by 0 for negative arguments, as used inside
    /// inclusion-exclusion.
    pub fn partition_count_signed(&self, n: i128) -> Result<BigUint> {
        if n < 0 {
            return Ok(BigUint::zero());
        }
        let n = u64::try_from(n).map_err(|_| Error::cap("exact-count argument n", n, self.cap))?;
        self.partition_count(n)
    }

    /// Number of memoized values.
    pub fn cached_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// Counts of partitions of every m <= limit into parts from `allowed`.
    /// Independent of the pentagonal memo (it never reads it).
    pub fn restricted_table(&self, limit: u64, allowed: &PartSet) -> Result<Vec<BigUint>> {
        self.check_cap(limit)?;
        if allowed.is_empty() {
            return Err(Error::domain("allowed part set must be nonempty"));
        }
        let limit = limit as usize;
        let mut dp = vec![BigUint::zero(); limit + 1];
        dp[0] = BigUint::one();
        for &j in allowed.parts() {
            let j = j as usize;
            if j > limit {
                break;
            }
            for v in j..=limit {
                let (lo, hi) = dp.split_at_mut(v);
                hi[0] += &lo[v - j];
            }
        }
        Ok(dp)
    }

    /// Exact count of partitions of n using only parts from `allowed`.
    pub fn restricted_count(&self, n: u64, allowed: &PartSet) -> Result<BigUint> {
        Ok(self.restricted_table(n, allowed)?.pop().expect("nonempty"))
    }

    /// Counts of partitions of every m <= limit avoiding all parts in `s`,
    /// by DP over the complement parts. Independent of the pentagonal memo.
    pub fn avoiding_table(&self, limit: u64, s: &PartSet) -> Result<Vec<BigUint>> {
        self.check_cap(limit)?;
        let limit = limit as usize;
        let mut dp = vec![BigUint::zero(); limit + 1];
        dp[0] = BigUint::one();
        for j in 1..=limit {
            if s.contains(j as u64) {
                continue;
            }
            for v in j..=limit {
                let (lo, hi) = dp.split_at_mut(v);
                hi[0] += &lo[v - j];
            }
        }
        Ok(dp)
    }

    /// Exact p_{-S}(n) by dynamic programming.
    pub fn avoiding_count_dp(&self, n: u64, s: &PartSet) -> Result<BigUint> {
        Ok(self.avoiding_table(n, s)?.pop().expect("nonempty"))
    }

    /// Exact p_{-S}(n) by inclusion-exclusion:
    ///   p_{-S}(n) = sum_{J subset S} (-1)^{|J|} p(n - sum(J)),
    /// with p(m) = 0 for m < 0. Evaluates 2^|S| signed terms.
    pub fn avoiding_count_ie(&self, n: u64, s: &PartSet) -> Result<BigUint> {
        if s.len() > SUBSET_CAP {
            return Err(Error::cap("inclusion-exclusion set size |S|", s.len(), SUBSET_CAP));
        }
        self.ensure(n)?;
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        self.ie_walk(s.parts(), 0, n as i128, false, &mut plus, &mut minus)?;
        Ok(plus - minus)
    }

    fn ie_walk(
        &self,
        parts: &[u64],
        idx: usize,
        remaining: i128,
        odd: bool,
        plus: &mut BigUint,
        minus: &mut BigUint,
    ) -> Result<()> {
        if idx == parts.len() {
            let term = self.partition_count_signed(remaining)?;
            if odd {
                *minus += term;
            } else {
                *plus += term;
            }
            return Ok(());
        }
        self.ie_walk(parts, idx + 1, remaining, odd, plus, minus)?;
        self.ie_walk(
            parts,
            idx + 1,
            remaining - parts[idx] as i128,
            !odd,
            plus,
            minus,
        )
    }
}

/// Process-wide table with the default cap, shared by the CLI and tests so
/// the pentagonal memo is filled once.
pub fn global_table() -> &'static PartitionTable {
    static TABLE: OnceLock<PartitionTable> = OnceLock::new();
    TABLE.get_or_init(PartitionTable::new)
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Iterator over all partitions of n in reverse-lexicographic order on
/// non-increasing part lists: (n) first, (1,1,...,1) last.
pub struct PartitionIter {
    current: Option<Vec<u64>>,
    empty_pending: bool,
}

impl Iterator for PartitionIter {
    type Item = PartitionMultiset;

    fn next(&mut self) -> Option<Self::Item> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(PartitionMultiset::empty());
        }
        let cur = self.current.take()?;
        let out = PartitionMultiset::from_parts(&cur).expect("positive parts");
        // Advance: find the last part > 1, decrement it, and redistribute the
        // tail greedily into parts of the new size.
        if let Some(j) = cur.iter().rposition(|&p| p > 1) {
            let mut next = cur[..j].to_vec();
            let tail: u64 = cur[j..].iter().sum();
            let s = cur[j] - 1;
            let full = tail / s;
            let rem = tail % s;
            next.extend(std::iter::repeat_n(s, full as usize));
            if rem > 0 {
                next.push(rem);
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Enumerate every partition of n exactly once (reverse-lexicographic order).
/// Guarded by [`ENUM_CAP`].
pub fn enumerate_partitions(n: u64) -> Result<PartitionIter> {
    if n > ENUM_CAP {
        return Err(Error::cap("enumeration argument n", n, ENUM_CAP));
    }
    Ok(PartitionIter {
        current: if n == 0 { None } else { Some(vec![n]) },
        empty_pending: n == 0,
    })
}
