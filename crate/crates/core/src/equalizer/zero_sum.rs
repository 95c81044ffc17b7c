//! Short subsequences with a prescribed sum.
//!
//! Any sequence of vectors in `[-r, r]^d` whose total `z` lies in
//! `[-q, q]^d` and whose length is at least
//! `B(r, q, d) = (⌈q/r⌉ + 2)(2rd + 1)^d` has a subsequence of length at most
//! `B` with sum `z`. [`bounded_subsequence_sum`] finds one constructively:
//! it starts from the whole sequence and keeps removing nonempty zero-sum
//! sub-multisets, which leaves the total unchanged, until none is found.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, Index};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Integer vector; coordinates are bounded by whoever builds it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(Vec<i64>);

impl IntVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of `vectors`, or the zero vector of dimension `dim` when empty.
    pub fn sum<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a IntVector>) -> IntVector {
        let mut total = IntVector::zeros(dim);
        for v in vectors {
            total += v;
        }
        total
    }
}

impl AddAssign<&IntVector> for IntVector {
    fn add_assign(&mut self, rhs: &IntVector) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Index<usize> for IntVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZeroSumError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsequenceSum {
    /// Ascending indices into the input whose vectors sum to `z`.
    pub indices: Vec<usize>,
    /// `B(r, q, d)`, saturated at `u64::MAX`.
    pub bound: u64,
    /// `indices` is longer than `bound`.
    pub bound_exceeded: bool,
}

/// `(⌈q/r⌉ + 2)(2rd + 1)^d`, saturating.
pub fn subsequence_bound(r: i64, q: i64, d: usize) -> u64 {
    let r = r.max(1) as u64;
    let q = q.max(0) as u64;
    let side = 2 * r * d as u64 + 1;
    let volume = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(side)).unwrap_or(u64::MAX);
    (q.div_ceil(r) + 2).saturating_mul(volume)
}

/// Indices of a subsequence of `xs` summing to `z`, of length at most
/// `B(r, q, d)` whenever the zero-sum shrinking succeeds.
///
/// Zero-sum sub-multisets are searched by meet-in-the-middle for `d <= 3`
/// and by depth-bounded branch and bound otherwise; both return a smallest
/// one within their search limits. Among vectors of one value the
/// highest indices are removed first.
pub fn bounded_subsequence_sum(xs: &[IntVector], z: &IntVector, r: i64, q: i64, d: usize) -> Result<SubsequenceSum, ZeroSumError> {
    let fail = |msg: String| Err(ZeroSumError::PreconditionViolation(msg));
    if r < 1 {
        return fail(format!("r must be positive, got {r}"));
    }
    if q < 0 {
        return fail(format!("q must be non-negative, got {q}"));
    }
    if z.dim() != d || z.norm_inf() > q {
        return fail(format!("target {z} is not in [-{q},{q}]^{d}"));
    }
    for (i, x) in xs.iter().enumerate() {
        if x.dim() != d || x.norm_inf() > r {
            return fail(format!("element {i} = {x} is not in [-{r},{r}]^{d}"));
        }
    }
    let total = IntVector::sum(d, xs);
    if total != *z {
        return fail(format!("sequence sums to {total}, not {z}"));
    }

    let mut groups: BTreeMap<&IntVector, Vec<usize>> = BTreeMap::new();
    for (i, x) in xs.iter().enumerate() {
        groups.entry(x).or_default().push(i);
    }
    // zero vectors are zero-sum on their own
    let groups: Vec<(&IntVector, Vec<usize>)> = groups.into_iter().filter(|(v, _)| !v.is_zero()).collect();
    let types: Vec<&IntVector> = groups.iter().map(|(v, _)| *v).collect();
    let mut counts: Vec<u64> = groups.iter().map(|(_, idx)| idx.len() as u64).collect();

    let search = ZeroSumSearch::new(&types, r, d);
    while let Some(found) = search.smallest(&counts) {
        let repeats = found
            .iter()
            .zip(&counts)
            .filter(|(&y, _)| y > 0)
            .map(|(&y, &c)| c / y)
            .min()
            .expect("zero-sum sets are nonempty");
        for (c, y) in counts.iter_mut().zip(&found) {
            *c -= repeats * y;
        }
    }

    let mut indices: Vec<usize> = groups
        .iter()
        .zip(&counts)
        .flat_map(|((_, idx), &c)| idx[..c as usize].iter().copied())
        .collect();
    indices.sort_unstable();
    let bound = subsequence_bound(r, q, d);
    Ok(SubsequenceSum { bound_exceeded: indices.len() as u64 > bound, indices, bound })
}

/// States of one meet-in-the-middle half must stay below this many sums.
const HALF_STATE_LIMIT: usize = 1 << 16;
/// Node budget of one branch-and-bound call.
const NODE_BUDGET: u64 = 2_000_000;

/// Finds a smallest nonempty count vector `y <= counts` with `Σ y_t·t = 0`.
pub(crate) struct ZeroSumSearch<'a> {
    types: &'a [&'a IntVector],
    r: i64,
    d: usize,
}

impl<'a> ZeroSumSearch<'a> {
    pub(crate) fn new(types: &'a [&'a IntVector], r: i64, d: usize) -> Self {
        Self { types, r, d }
    }

    /// Upper bound on the length of a minimal zero-sum sequence: partial
    /// sums of a suitable ordering stay in a box of side `2rd + 1`.
    fn minimal_length_bound(&self) -> u64 {
        subsequence_bound(self.r, 0, self.d) / 2
    }

    pub(crate) fn smallest(&self, counts: &[u64]) -> Option<Vec<u64>> {
        if counts.iter().all(|&c| c == 0) {
            return None;
        }
        if self.d <= 3 {
            self.meet_in_the_middle(counts)
        } else {
            self.branch_and_bound(counts)
        }
    }

    pub(crate) fn meet_in_the_middle(&self, counts: &[u64]) -> Option<Vec<u64>> {
        let mut radius = (self.r as u64).saturating_mul(self.minimal_length_bound()) as usize;
        while radius > 0 && (2 * radius + 1).saturating_pow(self.d as u32) > HALF_STATE_LIMIT {
            radius -= 1;
        }
        let mid = self.types.len() / 2;
        let left = HalfTable::build(&self.types[..mid], &counts[..mid], radius, self.d);
        let right = HalfTable::build(&self.types[mid..], &counts[mid..], radius, self.d);

        let mut best: Option<(u64, usize, usize)> = None;
        let mut consider = |size: u64, l: usize, r: usize| {
            if size > 0 && best.is_none_or(|(s, _, _)| size < s) {
                best = Some((size, l, r));
            }
        };
        let zero = left.encode_zero();
        if let Some(s) = left.size(zero, true) {
            consider(s, left.state(zero, true), right.state(zero, false));
        }
        if let Some(s) = right.size(zero, true) {
            consider(s, left.state(zero, false), right.state(zero, true));
        }
        for sum in 0..left.sums() {
            if sum == zero {
                continue;
            }
            let (Some(ls), Some(opposite)) = (left.size(sum, true), left.negate(sum)) else { continue };
            if let Some(rs) = right.size(opposite, true) {
                consider(ls + rs, left.state(sum, true), right.state(opposite, true));
            }
        }
        let (_, l, r) = best?;
        let mut y = left.reconstruct(l);
        y.extend(right.reconstruct(r));
        Some(y)
    }

    pub(crate) fn branch_and_bound(&self, counts: &[u64]) -> Option<Vec<u64>> {
        let mut budget = NODE_BUDGET;
        let limit = self.minimal_length_bound().min(counts.iter().sum());
        let mut y = vec![0u64; counts.len()];
        let mut partial = vec![0i64; self.d];
        for size in 1..=limit {
            if self.dfs(0, size, counts, &mut y, &mut partial, &mut budget) {
                return Some(y);
            }
            if budget == 0 {
                return None;
            }
        }
        None
    }

    /// Chooses counts for types `t..` adding exactly `left` more vectors.
    fn dfs(&self, t: usize, left: u64, counts: &[u64], y: &mut [u64], partial: &mut [i64], budget: &mut u64) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let reach = self.r.saturating_mul(left as i64);
        if partial.iter().any(|c| c.abs() > reach) {
            return false;
        }
        if left == 0 {
            return partial.iter().all(|&c| c == 0);
        }
        if t == self.types.len() {
            return false;
        }
        let coords = self.types[t].coords();
        for take in (0..=counts[t].min(left)).rev() {
            for (p, c) in partial.iter_mut().zip(coords) {
                *p += c * take as i64;
            }
            y[t] = take;
            let found = self.dfs(t + 1, left - take, counts, y, partial, budget);
            for (p, c) in partial.iter_mut().zip(coords) {
                *p -= c * take as i64;
            }
            if found {
                return true;
            }
            y[t] = 0;
        }
        false
    }
}

/// Bounded-knapsack table over the vector sums reachable by one half of the
/// types. States are `(sum, nonempty)`; each keeps the smallest count.
struct HalfTable {
    radius: usize,
    side: usize,
    d: usize,
    /// `layers[t][state] = (taken copies of type t, previous state)`.
    layers: Vec<Vec<(u32, u32)>>,
    best: Vec<u64>,
}

const UNREACHED: u64 = u64::MAX;

impl HalfTable {
    fn build(types: &[&IntVector], counts: &[u64], radius: usize, d: usize) -> Self {
        let side = 2 * radius + 1;
        let sums = side.pow(d as u32);
        let mut table = Self { radius, side, d, layers: Vec::with_capacity(types.len()), best: vec![UNREACHED; 2 * sums] };
        let zero = table.encode_zero();
        let start = table.state(zero, false);
        table.best[start] = 0;

        for (t, &count) in types.iter().zip(counts) {
            let copies = count.min(2 * radius as u64);
            let mut next = table.best.clone();
            let mut choice: Vec<(u32, u32)> = (0..next.len()).map(|s| (0, s as u32)).collect();
            for state in 0..table.best.len() {
                let size = table.best[state];
                if size == UNREACHED {
                    continue;
                }
                let mut coords = table.decode(state / 2);
                for take in 1..=copies {
                    for (c, dt) in coords.iter_mut().zip(t.coords()) {
                        *c += dt;
                    }
                    let Some(sum) = table.encode(&coords) else { break };
                    let target = table.state(sum, true);
                    if size + take < next[target] {
                        next[target] = size + take;
                        choice[target] = (take as u32, state as u32);
                    }
                }
            }
            table.best = next;
            table.layers.push(choice);
        }
        table
    }

    fn sums(&self) -> usize {
        self.best.len() / 2
    }

    fn state(&self, sum: usize, nonempty: bool) -> usize {
        2 * sum + nonempty as usize
    }

    fn size(&self, sum: usize, nonempty: bool) -> Option<u64> {
        let s = self.best[self.state(sum, nonempty)];
        (s != UNREACHED).then_some(s)
    }

    fn encode(&self, coords: &[i64]) -> Option<usize> {
        let mut out = 0;
        for &c in coords.iter().rev() {
            let shifted = c + self.radius as i64;
            if shifted < 0 || shifted >= self.side as i64 {
                return None;
            }
            out = out * self.side + shifted as usize;
        }
        Some(out)
    }

    fn encode_zero(&self) -> usize {
        self.encode(&vec![0; self.d]).expect("zero is in the box")
    }

    fn decode(&self, mut sum: usize) -> Vec<i64> {
        (0..self.d)
            .map(|_| {
                let c = (sum % self.side) as i64 - self.radius as i64;
                sum /= self.side;
                c
            })
            .collect()
    }

    fn negate(&self, sum: usize) -> Option<usize> {
        let neg: Vec<i64> = self.decode(sum).into_iter().map(|c| -c).collect();
        self.encode(&neg)
    }

    fn reconstruct(&self, mut state: usize) -> Vec<u64> {
        let mut y = vec![0u64; self.layers.len()];
        for (t, layer) in self.layers.iter().enumerate().rev() {
            let (take, prev) = layer[state];
            y[t] = take as u64;
            state = prev as usize;
        }
        y
    }
}
