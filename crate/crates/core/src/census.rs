//! Exhaustive and sampled birationality counts over small prime fields.
//!
//! The space surveyed is the set of projective classes of (n+1)-tuples of
//! degree-d forms over F_p. Each class has exactly one coefficient vector
//! whose first nonzero entry (component-major, monomials in descending
//! graded-lex order) equals 1; classes are identified with the ranks of
//! those vectors, ordered by the position of the leading 1 and then by the
//! base-p value of the remaining digits. Ranks are swept in contiguous
//! ranges, so work partitions are leading-prefix ranges and merge by plain
//! addition; the result is independent of the partitioning.
//!
//! Every class counted as birational carries an inverse-and-cofactor
//! certificate that was re-verified by substitution when it was built.

use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::cremona::certify_birational;
use crate::polyring::{FieldKind, HomogeneousPoly, Monomial, Scalar};
use crate::wspace::MapTuple;
use crate::Error;

/// Default cap on the number of classes a census is willing to visit.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Identifier of the pseudo-random source used by [`sample_random`]:
/// ChaCha8 keyed by the seed, with plain rejection reduction to a range.
pub const RNG_ALGORITHM: &str = "chacha8-rj";

/// How a report's classes were chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sample {
        /// Requested trial count (the examined field holds the number of
        /// distinct classes actually visited).
        trials: u128,
        seed: u64,
        /// Always [`RNG_ALGORITHM`]; recorded for reproducibility.
        rng: &'static str,
    },
}

/// Outcome of a census run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    /// (p^N - 1)/(p - 1) where N counts coefficient slots.
    pub total_classes: u128,
    /// Number of distinct classes actually tested.
    pub examined: u128,
    /// Classes certified birational.
    pub birational: u128,
    /// Entry i counts certified classes of reduced degree i + 1; the
    /// entries sum to `birational`.
    pub strata: Vec<u128>,
    pub mode: CensusMode,
    /// Wall-clock time of the run; always 0 from this module (callers that
    /// time the run fill it in, and deterministic serializations skip it).
    pub duration_ms: u64,
}

/// Counters produced by one partition of a sweep; merging is commutative
/// and associative, so any partitioning yields the same totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCounts {
    pub examined: u128,
    pub birational: u128,
    pub strata: Vec<u128>,
}

impl PartitionCounts {
    pub fn empty(d: usize) -> PartitionCounts {
        PartitionCounts {
            examined: 0,
            birational: 0,
            strata: alloc::vec![0; d],
        }
    }

    pub fn merge(&mut self, other: &PartitionCounts) {
        debug_assert_eq!(self.strata.len(), other.strata.len());
        self.examined += other.examined;
        self.birational += other.birational;
        for (a, b) in self.strata.iter_mut().zip(&other.strata) {
            *a += b;
        }
    }
}

/// Deterministic Miller-Rabin, exact for every u64.
pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if p == q {
            return true;
        }
        if p % q == 0 {
            return false;
        }
    }
    let mut d = p - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Number of coefficient slots of an (n+1)-tuple of degree-d forms.
fn slot_count(n: usize, d: usize) -> Option<usize> {
    // C(d + n, n) monomials per component.
    let mut binom: u128 = 1;
    for i in 1..=n {
        binom = binom.checked_mul((d + i) as u128)? / i as u128;
    }
    let total = binom.checked_mul((n + 1) as u128)?;
    usize::try_from(total).ok()
}

/// Number of projective classes: (p^N - 1)/(p - 1).
pub fn class_count(n: usize, d: usize, p: u64) -> Result<u128, Error> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let slots = slot_count(n, d).ok_or_else(too_large)?;
    let pn = checked_pow(p as u128, slots).ok_or_else(too_large)?;
    Ok((pn - 1) / (p as u128 - 1))
}

fn too_large() -> Error {
    Error::Unsupported(alloc::string::String::from(
        "class count does not fit in 128 bits",
    ))
}

/// The canonical representative tuple of the class with the given rank.
/// Ranks sort classes by the slot of the leading 1, then by the base-p
/// value of the remaining digits (big-endian).
pub fn unrank_class(n: usize, d: usize, p: u64, rank: u128) -> Result<MapTuple, Error> {
    let total = class_count(n, d, p)?;
    if rank >= total {
        return Err(Error::IndexOutOfRange {
            index: usize::try_from(rank).unwrap_or(usize::MAX),
            bound: usize::try_from(total).unwrap_or(usize::MAX),
        });
    }
    let slots = slot_count(n, d).expect("validated by class_count");
    let field = FieldKind::Prime(p);

    // Locate the leading slot: blocks of size p^(slots - 1 - j).
    let mut digits: Vec<u64> = alloc::vec![0; slots];
    let mut rank = rank;
    let mut lead = 0usize;
    loop {
        let block = checked_pow(p as u128, slots - 1 - lead).expect("within class count");
        if rank < block {
            break;
        }
        rank -= block;
        lead += 1;
    }
    digits[lead] = 1;
    for j in (lead + 1..slots).rev() {
        digits[j] = (rank % p as u128) as u64;
        rank /= p as u128;
    }

    let monomials = Monomial::all_of_degree(n + 1, d);
    let per = monomials.len();
    let mut comps = Vec::with_capacity(n + 1);
    for c in 0..=n {
        let part = &digits[c * per..(c + 1) * per];
        let poly = HomogeneousPoly::from_terms(
            field,
            n + 1,
            d,
            monomials
                .iter()
                .zip(part)
                .filter(|(_, &v)| v != 0)
                .map(|(m, &v)| (m.clone(), Scalar::from_integer(field, v as i64))),
        )?;
        comps.push(poly);
    }
    MapTuple::new(comps)
}

/// Splits `0..total` into `partitions` contiguous rank ranges (the final
/// ranges may be one element shorter).
pub fn partition_ranges(total: u128, partitions: usize) -> Vec<(u128, u128)> {
    let k = partitions.max(1) as u128;
    let base = total / k;
    let rem = total % k;
    let mut ranges = Vec::with_capacity(partitions.max(1));
    let mut start = 0u128;
    for i in 0..k {
        let len = base + u128::from(i < rem);
        ranges.push((start, start + len));
        start += len;
    }
    ranges
}

/// Tests every class with rank in `start..end` and returns its counters.
pub fn enumerate_range(
    n: usize,
    d: usize,
    p: u64,
    start: u128,
    end: u128,
) -> Result<PartitionCounts, Error> {
    let mut counts = PartitionCounts::empty(d);
    for rank in start..end {
        let tuple = unrank_class(n, d, p, rank)?;
        counts.examined += 1;
        if let Some(map) = certify_birational(&tuple) {
            counts.birational += 1;
            let deg = map.forward().degree();
            debug_assert!(deg >= 1 && deg <= d);
            counts.strata[deg - 1] += 1;
        }
    }
    Ok(counts)
}

fn report_from_counts(
    n: usize,
    d: usize,
    p: u64,
    total: u128,
    counts: PartitionCounts,
    mode: CensusMode,
) -> CensusReport {
    CensusReport {
        n,
        d,
        p,
        total_classes: total,
        examined: counts.examined,
        birational: counts.birational,
        strata: counts.strata,
        mode,
        duration_ms: 0,
    }
}

/// Sweeps every class, in `partitions` merged prefix ranges. The sweep is
/// refused outright if the class count exceeds `budget`.
pub fn enumerate_hd(
    n: usize,
    d: usize,
    p: u64,
    partitions: usize,
    budget: u128,
) -> Result<CensusReport, Error> {
    let total = class_count(n, d, p)?;
    if total > budget {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let mut counts = PartitionCounts::empty(d);
    for (start, end) in partition_ranges(total, partitions) {
        counts.merge(&enumerate_range(n, d, p, start, end)?);
    }
    Ok(report_from_counts(
        n,
        d,
        p,
        total,
        counts,
        CensusMode::Exhaustive,
    ))
}

/// Draws 128 uniform bits (low word first, for a stable stream layout).
fn next_u128(rng: &mut rand_chacha::ChaCha8Rng) -> u128 {
    let lo = rng.next_u64() as u128;
    let hi = rng.next_u64() as u128;
    (hi << 64) | lo
}

/// Uniform value in `0..m` by rejection; `m` must be nonzero.
fn random_below(rng: &mut rand_chacha::ChaCha8Rng, m: u128) -> u128 {
    debug_assert!(m > 0);
    let limit = u128::MAX - (u128::MAX % m + 1) % m;
    loop {
        let v = next_u128(rng);
        if v <= limit {
            return v % m;
        }
    }
}

/// Tests a uniform sample of `trials` distinct classes (Floyd's algorithm,
/// so a class is never tested twice); `trials >= total` degenerates to the
/// exhaustive sweep. Identical inputs give identical reports.
pub fn sample_random(
    n: usize,
    d: usize,
    p: u64,
    trials: u128,
    seed: u64,
) -> Result<CensusReport, Error> {
    let total = class_count(n, d, p)?;
    let mode = CensusMode::Sample {
        trials,
        seed,
        rng: RNG_ALGORITHM,
    };
    if trials >= total {
        let mut counts = PartitionCounts::empty(d);
        for (start, end) in partition_ranges(total, 1) {
            counts.merge(&enumerate_range(n, d, p, start, end)?);
        }
        return Ok(report_from_counts(n, d, p, total, counts, mode));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: alloc::collections::BTreeSet<u128> = alloc::collections::BTreeSet::new();
    for j in (total - trials)..total {
        let t = random_below(&mut rng, j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut counts = PartitionCounts::empty(d);
    for rank in chosen {
        counts.merge(&enumerate_range(n, d, p, rank, rank + 1)?);
    }
    Ok(report_from_counts(n, d, p, total, counts, mode))
}
