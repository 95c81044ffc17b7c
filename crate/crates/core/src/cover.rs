//! Uniform multiset covers of a small ground set `{0, .., n-1}`.
//!
//! A multiset of subsets is a uniform cover for an ordered partition
//! `A_1, .., A_t` when every element of `A_i` is covered exactly `r_i` times
//! and `r_1 > r_2 > .. > r_t >= 0`. [`find_uniform_subcover`] extracts a
//! sub-multiset that is again uniform for the same partition while keeping
//! its top coverage `r'_1` as small as possible.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ground set a [`Signature`] can describe.
pub const MAX_GROUND: usize = 64;
/// Largest ground set accepted by [`enumerate_irreducible`].
pub const MAX_ENUMERATION_GROUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("subset {signature} reaches outside the ground set of size {n}")]
    OutOfRange { signature: Signature, n: usize },
    #[error("ground set of size {0} exceeds the supported maximum")]
    GroundTooLarge(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cover is not uniform for the given partition")]
    NotUniform,
}

/// Subset of the ground set stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Signature(u64);

impl Signature {
    pub const EMPTY: Signature = Signature(0);

    pub fn from_bits(bits: u64) -> Self {
        Signature(bits)
    }

    /// Panics if an element is `>= MAX_GROUND`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Signature(elements.into_iter().fold(0, |acc, e| {
            assert!(e < MAX_GROUND, "element {e} out of range");
            acc | 1 << e
        }))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, element: usize) -> bool {
        element < MAX_GROUND && self.0 >> element & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Signature) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..MAX_GROUND).filter(move |&e| self.contains(e))
    }

    fn fits(self, n: usize) -> bool {
        n >= MAX_GROUND || self.0 >> n == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Multiset of subsets, grouped by signature. Multiplicities are positive.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoverMultiset {
    entries: BTreeMap<Signature, u64>,
}

impl CoverMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `multiplicity` copies of `signature`.
    pub fn insert(&mut self, signature: Signature, multiplicity: u64) {
        if multiplicity > 0 {
            *self.entries.entry(signature).or_insert(0) += multiplicity;
        }
    }

    /// Number of copies of `signature`, written `w(B)` for a set `B`.
    pub fn multiplicity(&self, signature: Signature) -> u64 {
        self.entries.get(&signature).copied().unwrap_or(0)
    }

    /// `(signature, multiplicity)` pairs in ascending signature order.
    pub fn iter(&self) -> impl Iterator<Item = (Signature, u64)> + '_ {
        self.entries.iter().map(|(&s, &m)| (s, m))
    }

    /// Number of distinct signatures.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Sum of multiplicities.
    pub fn total_size(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entrywise `self <= other`.
    pub fn is_submultiset_of(&self, other: &CoverMultiset) -> bool {
        self.iter().all(|(s, m)| m <= other.multiplicity(s))
    }

    /// Entrywise `self - other`; `other` must be a sub-multiset.
    pub fn difference(&self, other: &CoverMultiset) -> CoverMultiset {
        debug_assert!(other.is_submultiset_of(self));
        let mut out = CoverMultiset::new();
        for (s, m) in self.iter() {
            out.insert(s, m - other.multiplicity(s).min(m));
        }
        out
    }
}

impl FromIterator<(Signature, u64)> for CoverMultiset {
    fn from_iter<I: IntoIterator<Item = (Signature, u64)>>(iter: I) -> Self {
        let mut c = CoverMultiset::new();
        for (s, m) in iter {
            c.insert(s, m);
        }
        c
    }
}

impl fmt::Display for CoverMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, m)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}x{m}")?;
        }
        Ok(())
    }
}

/// Ordered partition of `{0, .., n-1}` into nonempty parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        if n > MAX_GROUND {
            return Err(CoverError::GroundTooLarge(n));
        }
        let mut seen = vec![false; n];
        let mut parts = parts;
        for part in &mut parts {
            if part.is_empty() {
                return Err(CoverError::InvalidPartition("empty part".into()));
            }
            part.sort_unstable();
            for &e in part.iter() {
                if e >= n {
                    return Err(CoverError::InvalidPartition(format!("element {e} outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[e], true) {
                    return Err(CoverError::InvalidPartition(format!("element {e} appears twice")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(CoverError::InvalidPartition(format!("element {missing} is not covered")));
        }
        Ok(Self { n, parts })
    }

    /// Groups elements with equal values, parts ordered by decreasing value.
    pub fn by_decreasing_value(values: &[u64]) -> Result<Self, CoverError> {
        let mut groups: BTreeMap<std::cmp::Reverse<u64>, Vec<usize>> = BTreeMap::new();
        for (e, &v) in values.iter().enumerate() {
            groups.entry(std::cmp::Reverse(v)).or_default().push(e);
        }
        Self::new(values.len(), groups.into_values().collect())
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of every element.
    pub fn part_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (i, part) in self.parts.iter().enumerate() {
            for &e in part {
                out[e] = i;
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}", Signature::from_elements(part.iter().copied()))?;
        }
        Ok(())
    }
}

/// Partition together with the per-part coverage values `r_1 > .. > r_t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionProfile {
    pub partition: Partition,
    pub targets: Vec<u64>,
}

/// Outcome of [`find_uniform_subcover`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcoverResult {
    pub subcover: CoverMultiset,
    pub profile: PartitionProfile,
    /// Cap level at which the search succeeded; `profile.targets[0] <= cap_used`.
    pub cap_used: u64,
    /// The only strictly decreasing sub-cover was the input itself.
    pub is_full_cover: bool,
}

/// Coverage count of every element of `{0, .., n-1}`.
pub fn coverage_profile(c: &CoverMultiset, n: usize) -> Result<Vec<u64>, CoverError> {
    let mut out = vec![0u64; n];
    for (s, m) in c.iter() {
        if !s.fits(n) {
            return Err(CoverError::OutOfRange { signature: s, n });
        }
        for e in s.elements() {
            out[e] += m;
        }
    }
    Ok(out)
}

/// Profile of `c` if its coverage is constant on each part and strictly
/// decreasing in part order.
pub fn check_uniform(c: &CoverMultiset, partition: &Partition) -> Option<PartitionProfile> {
    let coverage = coverage_profile(c, partition.ground_size()).ok()?;
    let mut targets = Vec::with_capacity(partition.len());
    for part in partition.parts() {
        let value = coverage[part[0]];
        if part.iter().any(|&e| coverage[e] != value) {
            return None;
        }
        if targets.last().is_some_and(|&prev| prev <= value) {
            return None;
        }
        targets.push(value);
    }
    Some(PartitionProfile { partition: partition.clone(), targets })
}

/// Finds a sub-multiset of the uniform cover `c` that is uniform for the same
/// partition with strictly decreasing values, minimizing the top value `r'_1`
/// and then the number of sets.
///
/// The search walks `r'_1` upwards from `t - 1`, in cap levels that start at
/// `max(cap, t - 1)` and double until a solution appears. The input itself is
/// always a solution, so the search ends by `r'_1 = r_1`. With a single part
/// the empty sub-cover (profile `(0)`) is returned.
pub fn find_uniform_subcover(c: &CoverMultiset, partition: &Partition, cap: u64) -> Result<SubcoverResult, CoverError> {
    if partition.is_empty() {
        return Err(CoverError::InvalidPartition("empty ground set".into()));
    }
    let full = check_uniform(c, partition).ok_or(CoverError::NotUniform)?;
    let search = SubcoverSearch::new(c, partition);
    let t = partition.len() as u64;
    let top = full.targets[0];
    let total = c.total_size();

    let mut lo = t - 1;
    let mut hi = cap.max(t - 1);
    loop {
        for r1 in lo..=hi.min(top) {
            if let Some(counts) = search.solve_for_top(r1, &full.targets) {
                let subcover: CoverMultiset = search.signatures.iter().copied().zip(counts).collect();
                let profile = check_uniform(&subcover, partition).expect("search returns uniform sub-covers");
                debug_assert_eq!(profile.targets[0], r1);
                return Ok(SubcoverResult {
                    is_full_cover: subcover == *c,
                    subcover,
                    profile,
                    cap_used: hi,
                });
            }
        }
        if hi >= top {
            // unreachable for uniform input: the full cover solves r1 = top
            return Err(CoverError::NotUniform);
        }
        lo = hi + 1;
        hi = hi.saturating_mul(2).max(hi + 1).min(total.max(top));
    }
}

/// Exact search for sub-multisets with prescribed per-part coverage.
struct SubcoverSearch {
    signatures: Vec<Signature>,
    capacity: Vec<u64>,
    part_of: Vec<usize>,
    parts: usize,
}

struct Incumbent {
    size: u64,
    counts: Vec<u64>,
}

impl SubcoverSearch {
    fn new(c: &CoverMultiset, partition: &Partition) -> Self {
        let mut entries: Vec<(Signature, u64)> = c.iter().filter(|(s, _)| !s.is_empty()).collect();
        // larger sets first so the first solutions found are already small
        entries.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        Self {
            signatures: entries.iter().map(|e| e.0).collect(),
            capacity: entries.iter().map(|e| e.1).collect(),
            part_of: partition.part_of(),
            parts: partition.len(),
        }
    }

    /// Smallest sub-multiset whose profile is strictly decreasing with top
    /// value `r1`, bounded entrywise by `limits` (the full cover's profile).
    fn solve_for_top(&self, r1: u64, limits: &[u64]) -> Option<Vec<u64>> {
        if r1 > limits[0] {
            return None;
        }
        let mut best: Option<Incumbent> = None;
        let mut targets = vec![0u64; self.parts];
        targets[0] = r1;
        self.targets_from(1, &mut targets, limits, &mut best);
        best.map(|b| b.counts)
    }

    /// Enumerates strictly decreasing target vectors in lexicographic order.
    fn targets_from(&self, i: usize, targets: &mut [u64], limits: &[u64], best: &mut Option<Incumbent>) {
        if i == self.parts {
            self.solve_targets(targets, best);
            return;
        }
        let remaining_below = (self.parts - 1 - i) as u64;
        let upper = limits[i].min(targets[i - 1] - 1);
        for value in remaining_below..=upper {
            targets[i] = value;
            self.targets_from(i + 1, targets, limits, best);
        }
    }

    fn solve_targets(&self, targets: &[u64], best: &mut Option<Incumbent>) {
        let mut residual: Vec<u64> = self.part_of.iter().map(|&p| targets[p]).collect();
        let mut counts = vec![0u64; self.signatures.len()];
        let mut banned = vec![false; self.signatures.len()];
        self.branch(&mut residual, &mut counts, &mut banned, 0, best);
    }

    fn usable(&self, s: usize, residual: &[u64], counts: &[u64], banned: &[bool]) -> u64 {
        if banned[s] {
            return 0;
        }
        let room = self.capacity[s] - counts[s];
        self.signatures[s].elements().map(|e| residual[e]).fold(room, u64::min)
    }

    fn branch(&self, residual: &mut [u64], counts: &mut [u64], banned: &mut [bool], size: u64, best: &mut Option<Incumbent>) {
        let sum: u64 = residual.iter().sum();
        if sum == 0 {
            if best.as_ref().is_none_or(|b| size < b.size) {
                *best = Some(Incumbent { size, counts: counts.to_vec() });
            }
            return;
        }

        let usable: Vec<u64> = (0..self.signatures.len())
            .map(|s| self.usable(s, residual, counts, banned))
            .collect();
        let widest = (0..self.signatures.len())
            .filter(|&s| usable[s] > 0)
            .map(|s| self.signatures[s].len() as u64)
            .max();
        let Some(widest) = widest else { return };
        let max_residual = residual.iter().copied().max().unwrap_or(0);
        let lower = size + max_residual.max(sum.div_ceil(widest));
        if best.as_ref().is_some_and(|b| lower >= b.size) {
            return;
        }

        // every element with residual demand needs enough usable supply;
        // branch on the element with the fewest candidate signatures
        let mut pivot: Option<(usize, usize)> = None;
        for (e, &need) in residual.iter().enumerate() {
            if need == 0 {
                continue;
            }
            let mut supply = 0;
            let mut options = 0;
            for (s, &u) in usable.iter().enumerate() {
                if u > 0 && self.signatures[s].contains(e) {
                    supply += u;
                    options += 1;
                }
            }
            if supply < need {
                return;
            }
            if pivot.is_none_or(|(_, o)| options < o) {
                pivot = Some((e, options));
            }
        }
        let (element, _) = pivot.expect("positive residual has a pivot");

        // solutions are split by the first option (in order) they use again
        let options: Vec<usize> = (0..self.signatures.len())
            .filter(|&s| usable[s] > 0 && self.signatures[s].contains(element))
            .collect();
        let mut newly_banned = Vec::with_capacity(options.len());
        for &s in &options {
            let sig = self.signatures[s];
            for e in sig.elements() {
                residual[e] -= 1;
            }
            counts[s] += 1;
            self.branch(residual, counts, banned, size + 1, best);
            counts[s] -= 1;
            for e in sig.elements() {
                residual[e] += 1;
            }
            banned[s] = true;
            newly_banned.push(s);
        }
        for s in newly_banned {
            banned[s] = false;
        }
    }
}

/// Uniform cover that admits no proper strictly decreasing uniform sub-cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleCover {
    pub profile: PartitionProfile,
    pub cover: CoverMultiset,
}

/// All nonempty irreducible uniform covers of `{0, .., n-1}` using nonempty
/// subsets with multiplicity at most `bound`, in enumeration order.
///
/// The coverage vector of a multiset fixes the only ordered partition it can
/// be uniform for, so each multiset is tested once. A cover is irreducible
/// exactly when the minimizing sub-cover search returns the cover itself.
pub fn enumerate_irreducible(n: usize, bound: u64) -> Result<Vec<IrreducibleCover>, CoverError> {
    if n == 0 {
        return Err(CoverError::InvalidPartition("empty ground set".into()));
    }
    if n > MAX_ENUMERATION_GROUND {
        return Err(CoverError::GroundTooLarge(n));
    }
    let subsets: Vec<Signature> = (1u64..1 << n).map(Signature::from_bits).collect();
    let mut counts = vec![0u64; subsets.len()];
    let mut out = Vec::new();
    loop {
        // odometer increment; the all-zero assignment is skipped
        let mut i = 0;
        while i < counts.len() && counts[i] == bound {
            counts[i] = 0;
            i += 1;
        }
        if i == counts.len() {
            break;
        }
        counts[i] += 1;

        let cover: CoverMultiset = subsets.iter().copied().zip(counts.iter().copied()).collect();
        let coverage = coverage_profile(&cover, n)?;
        let partition = Partition::by_decreasing_value(&coverage)?;
        let result = find_uniform_subcover(&cover, &partition, 0)?;
        if result.is_full_cover {
            let profile = check_uniform(&cover, &partition).expect("coverage grouping is uniform");
            out.push(IrreducibleCover { profile, cover });
        }
    }
    Ok(out)
}

/// Largest `r_1` among the irreducible covers, 0 when there are none.
pub fn empirical_f(covers: &[IrreducibleCover]) -> u64 {
    covers.iter().map(|c| c.profile.targets[0]).max().unwrap_or(0)
}

/// CSV table with columns `n, partition, profile, cover`.
pub fn irreducible_table_csv(n: usize, covers: &[IrreducibleCover]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["n", "partition", "profile", "cover"])?;
    for c in covers {
        let profile = c.profile.targets.iter().map(u64::to_string).collect::<Vec<_>>().join(";");
        writer.write_record([n.to_string(), c.profile.partition.to_string(), profile, c.cover.to_string()])?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(elements: &[usize]) -> Signature {
        Signature::from_elements(elements.iter().copied())
    }

    fn cover(entries: &[(&[usize], u64)]) -> CoverMultiset {
        entries.iter().map(|&(e, m)| (sig(e), m)).collect()
    }

    fn singletons(n: usize) -> Partition {
        Partition::new(n, (0..n).map(|e| vec![e]).collect()).unwrap()
    }

    /// Minimizing `(r'_1, size)` over every sub-multiset, by enumeration.
    fn brute_force_best(c: &CoverMultiset, partition: &Partition) -> Option<(u64, u64)> {
        let entries: Vec<(Signature, u64)> = c.iter().collect();
        let mut counts = vec![0u64; entries.len()];
        let mut best: Option<(u64, u64)> = None;
        loop {
            let sub: CoverMultiset = entries.iter().zip(&counts).map(|(&(s, _), &m)| (s, m)).collect();
            if let Some(p) = check_uniform(&sub, partition) {
                let key = (p.targets[0], sub.total_size());
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
            let mut i = 0;
            while i < counts.len() && counts[i] == entries[i].1 {
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                return best;
            }
            counts[i] += 1;
        }
    }

    /// Every proper sub-multiset fails to be strictly decreasing uniform.
    fn brute_force_irreducible(c: &CoverMultiset, partition: &Partition) -> bool {
        let entries: Vec<(Signature, u64)> = c.iter().collect();
        let mut counts = vec![0u64; entries.len()];
        loop {
            let sub: CoverMultiset = entries.iter().zip(&counts).map(|(&(s, _), &m)| (s, m)).collect();
            if sub != *c && check_uniform(&sub, partition).is_some() {
                return false;
            }
            let mut i = 0;
            while i < counts.len() && counts[i] == entries[i].1 {
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                return true;
            }
            counts[i] += 1;
        }
    }

    #[test]
    fn coverage_profile_examples() {
        assert_eq!(coverage_profile(&cover(&[(&[0, 1], 1)]), 2), Ok(vec![1, 1]));
        assert_eq!(coverage_profile(&cover(&[(&[0], 2), (&[0, 1], 1)]), 2), Ok(vec![3, 1]));
        assert_eq!(coverage_profile(&CoverMultiset::new(), 3), Ok(vec![0, 0, 0]));
        assert!(matches!(
            coverage_profile(&cover(&[(&[2], 1)]), 2),
            Err(CoverError::OutOfRange { n: 2, .. })
        ));
    }

    #[test]
    fn check_uniform_examples() {
        let p = check_uniform(&cover(&[(&[0], 2), (&[0, 1], 1)]), &singletons(2)).unwrap();
        assert_eq!(p.targets, vec![3, 1]);
        assert_eq!(check_uniform(&cover(&[(&[0], 1), (&[1], 1)]), &singletons(2)), None);
        let whole = Partition::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(check_uniform(&cover(&[(&[0, 1], 5)]), &whole).unwrap().targets, vec![5]);
        // increasing in part order is not uniform
        let reversed = Partition::new(2, vec![vec![1], vec![0]]).unwrap();
        assert_eq!(check_uniform(&cover(&[(&[0], 2), (&[0, 1], 1)]), &reversed), None);
        // non-constant on a part
        assert_eq!(check_uniform(&cover(&[(&[0], 2), (&[0, 1], 1)]), &whole), None);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0], vec![1]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 1], vec![]]).is_err());
        assert!(Partition::new(2, vec![vec![0, 2]]).is_err());
        let p = Partition::by_decreasing_value(&[1, 3, 1, 2]).unwrap();
        assert_eq!(p.parts(), &[vec![1], vec![3], vec![0, 2]]);
    }

    #[test]
    fn subcover_examples() {
        let c = cover(&[(&[0], 3), (&[0, 1], 1)]);
        assert_eq!(brute_force_best(&c, &singletons(2)), Some((1, 1)));
        let r = find_uniform_subcover(&c, &singletons(2), 1).unwrap();
        assert_eq!(r.subcover, cover(&[(&[0], 1)]));
        assert_eq!(r.profile.targets, vec![1, 0]);
        assert!(!r.is_full_cover);

        let whole = Partition::new(2, vec![vec![0, 1]]).unwrap();
        let r = find_uniform_subcover(&cover(&[(&[0, 1], 1)]), &whole, 1).unwrap();
        assert!(r.subcover.is_empty());
        assert_eq!(r.profile.targets, vec![0]);

        let flat = cover(&[(&[0], 1), (&[1], 1), (&[0, 1], 1)]);
        assert_eq!(find_uniform_subcover(&flat, &singletons(2), 1), Err(CoverError::NotUniform));
    }

    #[test]
    fn irreducible_input_returns_itself() {
        // {0,1} and {0} over three singleton parts: profile (2,1,0) has no
        // proper strictly decreasing sub-cover
        let c = cover(&[(&[0, 1], 1), (&[0], 1)]);
        assert!(brute_force_irreducible(&c, &singletons(3)));
        let r = find_uniform_subcover(&c, &singletons(3), 0).unwrap();
        assert!(r.is_full_cover);
        assert_eq!(r.subcover, c);
        assert_eq!(r.cap_used, 2);
    }

    #[test]
    fn cap_escalates_from_minimum() {
        // three parts force r'_1 >= 2
        let c = cover(&[(&[0], 4), (&[0, 1], 2), (&[1], 1), (&[0, 1, 2], 1)]);
        let r = find_uniform_subcover(&c, &singletons(3), 0).unwrap();
        assert_eq!(r.profile.targets, vec![2, 1, 0]);
        assert_eq!(r.cap_used, 2);
        assert_eq!(r.subcover.total_size(), 2);
    }

    #[test]
    fn enumerate_single_element() {
        // the empty sub-cover reduces every one-part cover
        assert!(enumerate_irreducible(1, 1).unwrap().is_empty());
        let covers = enumerate_irreducible(1, 3).unwrap();
        assert!(covers.is_empty());
        assert_eq!(empirical_f(&covers), 0);
    }

    /// Compares the enumeration with a brute-force irreducibility test over
    /// every multiset with multiplicities up to `bound`.
    fn cross_check_enumeration(n: usize, bound: u64) -> Vec<IrreducibleCover> {
        let covers = enumerate_irreducible(n, bound).unwrap();
        for c in &covers {
            assert!(brute_force_irreducible(&c.cover, &c.profile.partition), "{}", c.cover);
        }
        let subsets: Vec<Signature> = (1u64..1 << n).map(Signature::from_bits).collect();
        let mut counts = vec![0u64; subsets.len()];
        let mut expected = 0;
        loop {
            let c: CoverMultiset = subsets.iter().copied().zip(counts.iter().copied()).collect();
            if !c.is_empty() {
                let p = Partition::by_decreasing_value(&coverage_profile(&c, n).unwrap()).unwrap();
                if brute_force_irreducible(&c, &p) {
                    expected += 1;
                    assert!(covers.iter().any(|x| x.cover == c), "missed {c}");
                }
            }
            let mut i = 0;
            while i < counts.len() && counts[i] == bound {
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                break;
            }
            counts[i] += 1;
        }
        assert_eq!(expected, covers.len());
        covers
    }

    #[test]
    fn enumerate_two_elements_cross_checked() {
        // a decreasing profile needs a singleton, which alone is a sub-cover
        let covers = cross_check_enumeration(2, 2);
        let found: Vec<CoverMultiset> = covers.iter().map(|c| c.cover.clone()).collect();
        assert_eq!(found, vec![cover(&[(&[0], 1)]), cover(&[(&[1], 1)])]);
        assert_eq!(empirical_f(&covers), 1);
    }

    #[test]
    fn enumerate_three_elements_cross_checked() {
        let covers = cross_check_enumeration(3, 2);
        assert!(covers.iter().any(|c| c.cover == cover(&[(&[0, 1], 1), (&[0], 1)])));
        assert!(empirical_f(&covers) >= 2);
    }

    #[test]
    fn enumerate_rejects_large_ground() {
        assert_eq!(enumerate_irreducible(5, 1), Err(CoverError::GroundTooLarge(5)));
    }

    #[test]
    fn csv_table_has_header_and_rows() {
        let covers = enumerate_irreducible(3, 1).unwrap();
        assert!(!covers.is_empty());
        let csv = irreducible_table_csv(3, &covers).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,partition,profile,cover"));
        assert_eq!(lines.count(), covers.len());
    }

    fn small_uniform_cover() -> impl Strategy<Value = (CoverMultiset, Partition)> {
        (1usize..=3)
            .prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..=3, (1usize << n) - 1)))
            .prop_filter_map("nonempty", |(n, counts)| {
                let c: CoverMultiset = (1u64..1 << n).map(Signature::from_bits).zip(counts).collect();
                if c.is_empty() {
                    return None;
                }
                let p = Partition::by_decreasing_value(&coverage_profile(&c, n).unwrap()).unwrap();
                Some((c, p))
            })
    }

    proptest! {
        #[test]
        fn subcover_matches_enumeration((c, p) in small_uniform_cover()) {
            let r = find_uniform_subcover(&c, &p, 0).unwrap();
            prop_assert!(r.subcover.is_submultiset_of(&c));
            let profile = check_uniform(&r.subcover, &p);
            prop_assert_eq!(profile.as_ref(), Some(&r.profile));
            prop_assert!(r.profile.targets[0] <= r.cap_used);
            let best = brute_force_best(&c, &p).unwrap();
            prop_assert_eq!((r.profile.targets[0], r.subcover.total_size()), best);

            // removing the sub-cover keeps coverage constant on parts
            let full = check_uniform(&c, &p).unwrap();
            let rest = coverage_profile(&c.difference(&r.subcover), p.ground_size()).unwrap();
            for (i, part) in p.parts().iter().enumerate() {
                for &e in part {
                    prop_assert_eq!(rest[e], full.targets[i] - r.profile.targets[i]);
                }
            }

            prop_assert_eq!(find_uniform_subcover(&c, &p, 0).unwrap(), r);
        }
    }
}
