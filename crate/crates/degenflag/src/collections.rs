//! Admissible collections: fixed-point labels of the degenerate flag variety,
//! their enumeration, smoothness tests and structural bijections.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::subset::Subset;

/// Default enumeration bound for materializing APIs.
pub const DEFAULT_MAX_N: usize = 12;

/// An admissible collection (S_1, ..., S_n) of subsets of {1, ..., n+1}:
/// |S_k| = k and S_k is contained in S_{k+1} union {k+1}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AdmissibleCollection {
    sets: Vec<Subset>,
}

/// Checks the admissibility conditions; rejects malformed input.
pub fn is_admissible(sets: &[Subset]) -> Result<bool> {
    let n = sets.len();
    for (k, s) in sets.iter().enumerate() {
        if s.ambient() != n + 1 {
            return Err(Error::Validation(format!(
                "set {} has ambient {}, expected {}",
                k + 1,
                s.ambient(),
                n + 1
            )));
        }
    }
    for (k, s) in sets.iter().enumerate() {
        if s.card() != k + 1 {
            return Ok(false);
        }
    }
    for k in 0..n.saturating_sub(1) {
        // S_{k+1} subset of S_{k+2} u {k+2} in 1-based labels
        let allowed = sets[k + 1].with(k + 2);
        if !sets[k].is_subset_of(&allowed) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl AdmissibleCollection {
    pub fn new(sets: Vec<Subset>) -> Result<Self> {
        if is_admissible(&sets)? {
            Ok(AdmissibleCollection { sets })
        } else {
            Err(Error::Validation(format!(
                "collection {:?} is not admissible",
                sets
            )))
        }
    }

    pub(crate) fn from_masks(masks: &[u32]) -> Self {
        let n = masks.len();
        AdmissibleCollection {
            sets: masks.iter().map(|&m| Subset::from_mask(m, n + 1)).collect(),
        }
    }

    /// Length n of the collection; subsets live in {1, ..., n+1}.
    pub fn n(&self) -> usize {
        self.sets.len()
    }

    /// S_k for k in 1..=n.
    pub fn set(&self, k: usize) -> &Subset {
        &self.sets[k - 1]
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    /// True when S_1 ⊆ S_2 ⊆ ... ⊆ S_n.
    pub fn is_nested(&self) -> bool {
        self.sets.windows(2).all(|w| w[0].is_subset_of(&w[1]))
    }

    /// Compact display form, e.g. "1|13|124"; labels are comma-separated
    /// once the ambient set reaches two-digit labels.
    pub fn text(&self) -> String {
        let wide = self.n() + 1 > 9;
        let mut out = String::new();
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            for (j, m) in s.iter().enumerate() {
                if wide && j > 0 {
                    out.push(',');
                }
                out.push_str(&m.to_string());
            }
        }
        out
    }

    /// Parse the `text` form back into a collection.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split('|').collect();
        let n = parts.len();
        let mut sets = Vec::with_capacity(n);
        for part in parts {
            let labels: Vec<usize> = if part.contains(',') {
                part.split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| Error::Validation(format!("bad label {t:?}")))
                    })
                    .collect::<Result<_>>()?
            } else {
                part.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Validation(format!("bad label {c:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            sets.push(Subset::new(labels, n + 1)?);
        }
        Self::new(sets)
    }
}

impl fmt::Debug for AdmissibleCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.text())
    }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Calls `f(sub)` for every `k`-element submask of `pool`.
fn for_each_ksubset(pool: u32, k: usize, f: &mut impl FnMut(u32)) {
    fn rec(remaining: u32, k: usize, acc: u32, f: &mut impl FnMut(u32)) {
        if k == 0 {
            f(acc);
            return;
        }
        if (remaining.count_ones() as usize) < k {
            return;
        }
        let low = remaining & remaining.wrapping_neg();
        // branch: include the lowest remaining bit or skip it
        rec(remaining ^ low, k - 1, acc | low, f);
        rec(remaining ^ low, k, acc, f);
    }
    rec(pool, k, 0, f);
}

/// Streaming fold over all admissible collections for a given `n`.
///
/// Work is partitioned by the choice of S_n and descends through
/// S_{n-1}, ..., S_1; the reduce must be associative and commutative so the
/// result does not depend on the schedule. Visit order is unspecified.
pub fn fold_admissible<A>(
    n: usize,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &AdmissibleCollection) + Sync + Send,
    reduce: impl Fn(A, A) -> A + Sync + Send,
) -> A
where
    A: Send,
{
    assert!(n >= 1);
    let full = (1u32 << (n + 1)) - 1;
    let mut tops = Vec::new();
    for_each_ksubset(full, n, &mut |m| tops.push(m));
    tops.sort_unstable();

    let init = &init;
    par::map_reduce(
        tops,
        |top| {
            let mut acc = init();
            let mut masks = vec![0u32; n];
            masks[n - 1] = top;
            descend(n - 1, &mut masks, &mut |ms| {
                visit(&mut acc, &AdmissibleCollection::from_masks(ms))
            });
            acc
        },
        init,
        reduce,
    )
}

/// Fill masks[k-1] for k = level down to 1, given masks[level] fixed
/// (level is the 1-based index of the already-chosen set).
fn descend(level: usize, masks: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if level == 0 {
        emit(masks);
        return;
    }
    // S_level is a level-subset of S_{level+1} u {level+1}
    let pool = masks[level] | 1 << level;
    let mut subs = Vec::new();
    for_each_ksubset(pool, level, &mut |m| subs.push(m));
    for m in subs {
        masks[level - 1] = m;
        descend(level - 1, masks, emit);
    }
}

/// All admissible collections for `n`, in canonical lexicographic order.
pub fn enumerate_admissible(n: usize) -> Result<Vec<AdmissibleCollection>> {
    enumerate_admissible_bounded(n, DEFAULT_MAX_N)
}

pub fn enumerate_admissible_bounded(
    n: usize,
    bound: usize,
) -> Result<Vec<AdmissibleCollection>> {
    if n > bound {
        return Err(Error::ResourceLimit { n, bound });
    }
    let mut all = fold_admissible(
        n,
        Vec::new,
        |acc, s| acc.push(s.clone()),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    all.sort_unstable();
    Ok(all)
}

/// Independent enumeration order: builds S_1 upward instead of S_n downward.
/// Serves as the cross-check for `enumerate_admissible`.
pub fn enumerate_admissible_bottom_up(n: usize) -> Result<Vec<AdmissibleCollection>> {
    if n > DEFAULT_MAX_N {
        return Err(Error::ResourceLimit { n, bound: DEFAULT_MAX_N });
    }
    assert!(n >= 1);
    let full = (1u32 << (n + 1)) - 1;
    let mut out = Vec::new();
    let mut masks = vec![0u32; n];

    fn ascend(level: usize, n: usize, full: u32, masks: &mut Vec<u32>, out: &mut Vec<AdmissibleCollection>) {
        if level == n {
            out.push(AdmissibleCollection::from_masks(masks));
            return;
        }
        // choose S_{level+1} ⊇ S_level \ {level+1}  (1-based labels)
        let required = if level == 0 {
            0
        } else {
            masks[level - 1] & !(1u32 << level)
        };
        let free = full & !required;
        let need = level + 1 - required.count_ones() as usize;
        let mut exts = Vec::new();
        for_each_ksubset(free, need, &mut |m| exts.push(m));
        for m in exts {
            masks[level] = required | m;
            ascend(level + 1, n, full, masks, out);
        }
    }
    ascend(0, n, full, &mut masks, &mut out);
    out.sort_unstable();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Smoothness
// ---------------------------------------------------------------------------

/// Combinatorial smoothness test: for all 1 <= j < i <= n,
/// i in S_j implies j+1 in S_i.
pub fn is_smooth(s: &AdmissibleCollection) -> bool {
    let n = s.n();
    for j in 1..=n {
        for i in (j + 1)..=n {
            if s.set(j).contains(i) && !s.set(i).contains(j + 1) {
                return false;
            }
        }
    }
    true
}

/// Streaming fold over the smooth admissible collections for `n`.
///
/// Smooth collections are nested chains, so they are generated by
/// backtracking over the element added at each step; the smoothness
/// condition for a pair (a, b) is checked as soon as S_b is complete.
pub fn fold_smooth<A>(
    n: usize,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &AdmissibleCollection) + Sync + Send,
    reduce: impl Fn(A, A) -> A + Sync + Send,
) -> A
where
    A: Send,
{
    assert!(n >= 1);
    let tasks: Vec<usize> = (1..=n + 1).collect();
    let init = &init;
    par::map_reduce(
        tasks,
        |first| {
            let mut acc = init();
            let mut masks = vec![0u32; n];
            masks[0] = 1 << (first - 1);
            if smooth_step_ok(&masks, 1, n) {
                grow_smooth(1, n, &mut masks, &mut |ms| {
                    visit(&mut acc, &AdmissibleCollection::from_masks(ms))
                });
            }
            acc
        },
        init,
        reduce,
    )
}

/// All completed constraints involving the just-fixed S_b (b = level, 1-based).
fn smooth_step_ok(masks: &[u32], b: usize, n: usize) -> bool {
    if b > n {
        return true;
    }
    let sb = masks[b - 1];
    for a in 1..b {
        let sa = masks[a - 1];
        if sa >> (b - 1) & 1 == 1 && sb >> a & 1 == 0 {
            return false;
        }
    }
    true
}

fn grow_smooth(level: usize, n: usize, masks: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if level == n {
        emit(masks);
        return;
    }
    let prev = masks[level - 1];
    let full = (1u32 << (n + 1)) - 1;
    let mut rest = full & !prev;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        rest ^= low;
        masks[level] = prev | low;
        if smooth_step_ok(masks, level + 1, n) {
            grow_smooth(level + 1, n, masks, emit);
        }
    }
}

/// All smooth collections in canonical order.
pub fn enumerate_smooth(n: usize) -> Vec<AdmissibleCollection> {
    let mut all = fold_smooth(
        n,
        Vec::new,
        |acc, s| acc.push(s.clone()),
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    all.sort_unstable();
    all
}

// ---------------------------------------------------------------------------
// Partial flags
// ---------------------------------------------------------------------------

/// A strictly increasing step vector d_1 < ... < d_k with 1 <= d_1, d_k <= n.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct DVector {
    steps: Vec<usize>,
}

impl DVector {
    pub fn new(steps: Vec<usize>, n: usize) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Validation("empty step vector".into()));
        }
        if steps[0] < 1 || *steps.last().unwrap() > n {
            return Err(Error::Validation(format!(
                "steps {steps:?} out of range 1..={n}"
            )));
        }
        if !steps.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation(format!(
                "steps {steps:?} not strictly increasing"
            )));
        }
        Ok(DVector { steps })
    }

    pub fn complete(n: usize) -> Self {
        DVector {
            steps: (1..=n).collect(),
        }
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_complete(&self, n: usize) -> bool {
        self.steps.len() == n
    }
}

/// A d-admissible collection (S_{d_1}, ..., S_{d_k}).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct PartialCollection {
    sets: Vec<Subset>,
}

impl PartialCollection {
    pub fn new(d: &DVector, sets: Vec<Subset>, n: usize) -> Result<Self> {
        if sets.len() != d.len() {
            return Err(Error::Validation("set count does not match steps".into()));
        }
        for (i, s) in sets.iter().enumerate() {
            if s.ambient() != n + 1 {
                return Err(Error::Validation("wrong ambient".into()));
            }
            if s.card() != d.steps()[i] {
                return Err(Error::Validation(format!(
                    "set {i} has cardinality {}, expected {}",
                    s.card(),
                    d.steps()[i]
                )));
            }
        }
        for i in 0..d.len() - 1 {
            // S_{d_i} ⊆ S_{d_{i+1}} u {d_i+1, ..., d_{i+1}}
            let mut allowed = sets[i + 1];
            for b in d.steps()[i] + 1..=d.steps()[i + 1] {
                allowed = allowed.with(b);
            }
            if !sets[i].is_subset_of(&allowed) {
                return Err(Error::Validation(format!(
                    "collection {sets:?} is not d-admissible"
                )));
            }
        }
        Ok(PartialCollection { sets })
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn text(&self) -> String {
        let wide = self.sets.first().map_or(false, |s| s.ambient() > 9);
        let mut out = String::new();
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            for (j, m) in s.iter().enumerate() {
                if wide && j > 0 {
                    out.push(',');
                }
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

/// Forgets the sets outside d: (S_1, ..., S_n) -> (S_{d_1}, ..., S_{d_k}).
pub fn project_to_partial(s: &AdmissibleCollection, d: &DVector) -> Result<PartialCollection> {
    if d.steps().last().copied().unwrap_or(0) > s.n() {
        return Err(Error::Validation("step vector exceeds n".into()));
    }
    let sets = d.steps().iter().map(|&k| *s.set(k)).collect();
    PartialCollection::new(d, sets, s.n())
}

/// All d-admissible collections, canonical order.
pub fn enumerate_d_admissible(n: usize, d: &DVector) -> Result<Vec<PartialCollection>> {
    if n > DEFAULT_MAX_N {
        return Err(Error::ResourceLimit { n, bound: DEFAULT_MAX_N });
    }
    if d.steps().last().copied().unwrap_or(0) > n {
        return Err(Error::Validation("step vector exceeds n".into()));
    }
    let k = d.len();
    let full = (1u32 << (n + 1)) - 1;
    let mut out = Vec::new();
    let mut masks = vec![0u32; k];

    // choose S_{d_k} first, then each S_{d_i} inside S_{d_{i+1}} u {d_i+1..d_{i+1}}
    fn rec(
        i: usize,
        n: usize,
        d: &DVector,
        full: u32,
        masks: &mut Vec<u32>,
        out: &mut Vec<PartialCollection>,
    ) {
        let steps = d.steps();
        let pool = if i + 1 == d.len() {
            full
        } else {
            let mut pool = masks[i + 1];
            for b in steps[i] + 1..=steps[i + 1] {
                pool |= 1 << (b - 1);
            }
            pool
        };
        let mut subs = Vec::new();
        for_each_ksubset(pool, steps[i], &mut |m| subs.push(m));
        for m in subs {
            masks[i] = m;
            if i == 0 {
                let sets = masks
                    .iter()
                    .map(|&mm| Subset::from_mask(mm, n + 1))
                    .collect();
                out.push(PartialCollection { sets });
            } else {
                rec(i - 1, n, d, full, masks, out);
            }
        }
    }
    rec(k - 1, n, d, full, &mut masks, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Smoothness criterion for partial collections: whenever b in S_{d_i} falls
/// in the step block (d_j, d_{j+1}] for some j >= i, the whole block
/// {d_i+1, ..., d_{i+1}} must lie in S_{d_{j+1}}.
pub fn is_smooth_partial(p: &PartialCollection, d: &DVector) -> bool {
    let steps = d.steps();
    let k = steps.len();
    for i in 0..k - 1 {
        for b in p.sets[i].iter() {
            let Some(j) = (i..k - 1).find(|&j| steps[j] < b && b <= steps[j + 1]) else {
                continue;
            };
            let block_in = (steps[i] + 1..=steps[i + 1]).all(|x| p.sets[j + 1].contains(x));
            if !block_in {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Permutation encoding
// ---------------------------------------------------------------------------

/// A permutation of {1, ..., n+1} given by its image list.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x < 1 || x > m || seen[x] {
                return Err(Error::Validation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, m: usize) -> usize {
        self.images[m - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Position of value x, i.e. the inverse permutation.
    pub fn preimage(&self, x: usize) -> usize {
        self.images.iter().position(|&y| y == x).unwrap() + 1
    }
}

/// Reads off pi(m) = S_m \ S_{m-1}; requires a nested collection.
pub fn to_permutation(s: &AdmissibleCollection) -> Result<Permutation> {
    if !s.is_nested() {
        return Err(Error::Domain(format!("{s:?} is not nested")));
    }
    let n = s.n();
    let mut images = Vec::with_capacity(n + 1);
    let mut prev = Subset::new([], n + 1)?;
    for m in 1..=n {
        let cur = *s.set(m);
        let added = cur.iter().find(|&x| !prev.contains(x)).ok_or_else(|| {
            Error::Domain("no new element at step".into())
        })?;
        images.push(added);
        prev = cur;
    }
    let last = (1..=n + 1).find(|&x| !prev.contains(x)).unwrap();
    images.push(last);
    Permutation::new(images)
}

/// Inverse of `to_permutation`: S_m = {pi(1), ..., pi(m)}.
pub fn from_permutation(p: &Permutation) -> Result<AdmissibleCollection> {
    let n = p.degree() - 1;
    let mut sets = Vec::with_capacity(n);
    let mut cur = Subset::new([], n + 1)?;
    for m in 1..=n {
        cur = cur.with(p.image(m));
        sets.push(cur);
    }
    AdmissibleCollection::new(sets)
}

/// Permutation-side smoothness: for all 1 <= a < b <= n,
/// pi^{-1}(b) <= a implies pi^{-1}(a+1) <= b.
pub fn is_smooth_permutation(p: &Permutation) -> bool {
    let n = p.degree() - 1;
    let mut pos = vec![0usize; n + 2];
    for m in 1..=n + 1 {
        pos[p.image(m)] = m;
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if pos[b] <= a && pos[a + 1] > b {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The involution sigma
// ---------------------------------------------------------------------------

/// Result of applying the label swap 1 <-> n+1 to each set.
#[derive(Clone, Debug)]
pub enum SigmaOutcome {
    /// The swapped collection is again admissible.
    Admissible(AdmissibleCollection),
    /// The swapped sets left the admissible set (possible only for
    /// non-smooth input); carries the raw sets.
    LeftDomain(Vec<Subset>),
}

impl SigmaOutcome {
    pub fn admissible(self) -> Option<AdmissibleCollection> {
        match self {
            SigmaOutcome::Admissible(s) => Some(s),
            SigmaOutcome::LeftDomain(_) => None,
        }
    }
}

/// Swaps labels 1 and n+1 in every set.
pub fn sigma(s: &AdmissibleCollection) -> SigmaOutcome {
    let n = s.n();
    let sets: Vec<Subset> = s.sets.iter().map(|t| t.swap_labels(1, n + 1)).collect();
    match is_admissible(&sets) {
        Ok(true) => SigmaOutcome::Admissible(AdmissibleCollection { sets }),
        _ => SigmaOutcome::LeftDomain(sets),
    }
}

// ---------------------------------------------------------------------------
// The splitting bijection F = (f, g) on smooth collections with S_1 = {k}
// ---------------------------------------------------------------------------

/// Splits a smooth collection with S_1 = {k}, k >= 2, into a pair of smooth
/// collections of lengths k-2 and n+1-k.
pub fn split_f(s: &AdmissibleCollection) -> Result<(AdmissibleCollection, AdmissibleCollection)> {
    let n = s.n();
    if !is_smooth(s) {
        return Err(Error::Domain(format!("{s:?} is not smooth")));
    }
    let k = s.set(1).iter().next().unwrap();
    if k < 2 {
        return Err(Error::Domain("S_1 = {1} is outside the split domain".into()));
    }

    // left factor: length k-2, ambient k-1
    let mut left_sets = Vec::with_capacity(k - 2);
    for a in 1..=k.saturating_sub(2) {
        let sm = s.set(a + 1);
        let mut members: Vec<usize> = sm.iter().filter(|&x| 2 <= x && x <= k - 1).map(|x| x - 1).collect();
        let inside = sm.iter().all(|x| 2 <= x && x <= k);
        if !inside {
            members.push(k - 1);
        }
        left_sets.push(Subset::new(members, k - 1)?);
    }
    let left = AdmissibleCollection::new(left_sets)?;

    // right factor: length n+1-k, ambient n+2-k
    let mut right_sets = Vec::with_capacity(n + 1 - k);
    for a in 1..=n + 1 - k {
        let sm = s.set(a + k - 1);
        let mut members: Vec<usize> = sm.iter().filter(|&x| x >= k + 1).map(|x| x - k + 1).collect();
        if sm.contains(1) {
            members.push(1);
        }
        right_sets.push(Subset::new(members, n + 2 - k)?);
    }
    let right = AdmissibleCollection::new(right_sets)?;

    debug_assert!(left.n() == 0 || is_smooth(&left));
    debug_assert!(right.n() == 0 || is_smooth(&right));
    Ok((left, right))
}

/// Inverse of `split_f`: reconstructs the unique smooth collection with
/// S_1 = {k} mapping to the given pair.
pub fn merge_f(
    left: &AdmissibleCollection,
    right: &AdmissibleCollection,
    k: usize,
    n: usize,
) -> Result<AdmissibleCollection> {
    if k < 2 || k > n + 1 {
        return Err(Error::Domain(format!("k = {k} out of range 2..={}", n + 1)));
    }
    if left.n() != k - 2 || right.n() != n + 1 - k {
        return Err(Error::Validation(format!(
            "factor lengths ({}, {}) do not match (k-2, n+1-k) = ({}, {})",
            left.n(),
            right.n(),
            k - 2,
            n + 1 - k
        )));
    }

    let lift = |i: usize| if i == 1 { 1 } else { i + k - 1 };

    // the one element of S_k outside {2, ..., k}
    let extra = if k == n + 1 {
        1
    } else {
        lift(right.set(1).iter().next().unwrap())
    };

    let mut sets = Vec::with_capacity(n);
    sets.push(Subset::new([k], n + 1)?);
    for m in 2..=k - 1 {
        let la = left.set(m - 1);
        let mut members: Vec<usize> = vec![k];
        for i in la.iter() {
            if i <= k - 2 {
                members.push(i + 1);
            } else {
                members.push(extra);
            }
        }
        sets.push(Subset::new(members, n + 1)?);
    }
    for m in k..=n {
        let ra = right.set(m - k + 1);
        let mut members: Vec<usize> = (2..=k).collect();
        for i in ra.iter() {
            members.push(lift(i));
        }
        sets.push(Subset::new(members, n + 1)?);
    }
    let merged = AdmissibleCollection::new(sets)?;
    if !is_smooth(&merged) {
        return Err(Error::Integrity(format!("merge produced non-smooth {merged:?}")));
    }
    Ok(merged)
}

/// For a smooth collection with S_1 = {1}: drops the label 1 from
/// S_2, ..., S_n and shifts the remaining labels down, giving the length
/// n-1 smooth collection with S'_a = {i : i+1 in S_{a+1}}.
pub fn strip_leading_one(s: &AdmissibleCollection) -> Result<AdmissibleCollection> {
    let n = s.n();
    if s.set(1).iter().next() != Some(1) {
        return Err(Error::Domain("S_1 must be {1}".into()));
    }
    if !is_smooth(s) {
        return Err(Error::Domain(format!("{s:?} is not smooth")));
    }
    let mut sets = Vec::with_capacity(n - 1);
    for a in 2..=n {
        let members = s.set(a).iter().filter(|&x| x >= 2).map(|x| x - 1);
        sets.push(Subset::new(members, n)?);
    }
    AdmissibleCollection::new(sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(text: &str) -> AdmissibleCollection {
        AdmissibleCollection::parse(text).unwrap()
    }

    #[test]
    fn admissibility_examples() {
        let n = 3;
        let s = |v: &[&[usize]]| -> Vec<Subset> {
            v.iter()
                .map(|m| Subset::new(m.iter().copied(), n + 1).unwrap())
                .collect()
        };
        assert!(is_admissible(&s(&[&[1], &[1, 2], &[1, 2, 3]])).unwrap());
        assert!(!is_admissible(&s(&[&[3], &[1, 2], &[1, 2, 3]])).unwrap());
        assert!(is_admissible(&s(&[&[1], &[1, 3], &[1, 2, 4]])).unwrap());
    }

    #[test]
    fn enumerate_small_counts() {
        assert_eq!(enumerate_admissible(1).unwrap().len(), 2);
        assert_eq!(enumerate_admissible(2).unwrap().len(), 7);
        assert_eq!(enumerate_admissible(3).unwrap().len(), 38);
        assert_eq!(enumerate_admissible(4).unwrap().len(), 295);
    }

    #[test]
    fn enumerate_n1_explicit() {
        let all = enumerate_admissible(1).unwrap();
        assert_eq!(all, vec![coll("1"), coll("2")]);
    }

    #[test]
    fn both_orders_agree() {
        for n in 1..=5 {
            assert_eq!(
                enumerate_admissible(n).unwrap(),
                enumerate_admissible_bottom_up(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn brute_force_completeness() {
        // direct product scan over all tuples with |S_k| = k, n <= 4
        for n in 1..=4usize {
            let full = (1u32 << (n + 1)) - 1;
            let mut layers: Vec<Vec<u32>> = Vec::new();
            for k in 1..=n {
                let mut v = Vec::new();
                for_each_ksubset(full, k, &mut |m| v.push(m));
                layers.push(v);
            }
            let mut brute = Vec::new();
            let mut stack = vec![0u32; n];
            fn scan(
                k: usize,
                n: usize,
                layers: &[Vec<u32>],
                stack: &mut Vec<u32>,
                out: &mut Vec<AdmissibleCollection>,
            ) {
                if k == n {
                    let sets: Vec<Subset> =
                        stack.iter().map(|&m| Subset::from_mask(m, n + 1)).collect();
                    if is_admissible(&sets).unwrap() {
                        out.push(AdmissibleCollection::new(sets).unwrap());
                    }
                    return;
                }
                for &m in &layers[k] {
                    stack[k] = m;
                    scan(k + 1, n, layers, stack, out);
                }
            }
            scan(0, n, &layers, &mut stack, &mut brute);
            brute.sort_unstable();
            assert_eq!(enumerate_admissible(n).unwrap(), brute, "n = {n}");
        }
    }

    #[test]
    fn smoothness_examples() {
        assert!(is_smooth(&coll("1|12|123")));
        assert!(!is_smooth(&coll("1|13|124")));
        assert!(is_smooth(&coll("2|12")));
        // exactly one singular collection for n = 2
        let singular: Vec<_> = enumerate_admissible(2)
            .unwrap()
            .into_iter()
            .filter(|s| !is_smooth(s))
            .collect();
        assert_eq!(singular, vec![coll("2|13")]);
    }

    #[test]
    fn smooth_enumeration_matches_filter() {
        for n in 1..=5 {
            let filtered: Vec<_> = enumerate_admissible(n)
                .unwrap()
                .into_iter()
                .filter(is_smooth)
                .collect();
            assert_eq!(enumerate_smooth(n), filtered, "n = {n}");
        }
    }

    #[test]
    fn partial_enumeration() {
        let d = DVector::new(vec![2], 3).unwrap();
        assert_eq!(enumerate_d_admissible(3, &d).unwrap().len(), 6);

        let complete = DVector::complete(3);
        let partials = enumerate_d_admissible(3, &complete).unwrap();
        let completes = enumerate_admissible(3).unwrap();
        assert_eq!(partials.len(), completes.len());
        for (p, c) in partials.iter().zip(&completes) {
            assert_eq!(p.sets(), c.sets());
        }
    }

    #[test]
    fn partial_projection_surjective() {
        let d = DVector::new(vec![1, 3], 3).unwrap();
        let mut images: Vec<_> = enumerate_admissible(3)
            .unwrap()
            .iter()
            .map(|s| project_to_partial(s, &d).unwrap())
            .collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images, enumerate_d_admissible(3, &d).unwrap());
    }

    #[test]
    fn partial_projection_example() {
        let d = DVector::new(vec![1, 3], 3).unwrap();
        let p = project_to_partial(&coll("1|13|124"), &d).unwrap();
        assert_eq!(p.text(), "1|124");
    }

    #[test]
    fn partial_smooth_single_step_always() {
        for n in 1..=4 {
            for k in 1..=n {
                let d = DVector::new(vec![k], n).unwrap();
                for p in enumerate_d_admissible(n, &d).unwrap() {
                    assert!(is_smooth_partial(&p, &d));
                }
            }
        }
    }

    #[test]
    fn partial_smooth_complete_agrees() {
        let d = DVector::complete(3);
        for s in enumerate_admissible(3).unwrap() {
            let p = project_to_partial(&s, &d).unwrap();
            assert_eq!(is_smooth_partial(&p, &d), is_smooth(&s), "{s:?}");
        }
    }

    #[test]
    fn permutation_encoding() {
        let p = to_permutation(&coll("1|12|123")).unwrap();
        assert_eq!(p.images(), &[1, 2, 3, 4]);
        let p = to_permutation(&coll("2|23|234")).unwrap();
        assert_eq!(p.images(), &[2, 3, 4, 1]);
        assert!(to_permutation(&coll("2|13")).is_err());
    }

    #[test]
    fn permutation_roundtrip_smooth() {
        for n in 1..=6 {
            for s in enumerate_smooth(n) {
                let p = to_permutation(&s).unwrap();
                assert!(is_smooth_permutation(&p), "{s:?}");
                assert_eq!(from_permutation(&p).unwrap(), s);
            }
        }
    }

    #[test]
    fn smooth_permutation_counts() {
        // number of smooth permutations of S_{n+1}
        fn count(n: usize) -> usize {
            let mut images: Vec<usize> = (1..=n + 1).collect();
            let mut total = 0;
            permute(&mut images, 0, &mut |im| {
                let p = Permutation::new(im.to_vec()).unwrap();
                if is_smooth_permutation(&p) {
                    total += 1;
                }
            });
            total
        }
        fn permute(v: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
            if i == v.len() {
                f(v);
                return;
            }
            for j in i..v.len() {
                v.swap(i, j);
                permute(v, i + 1, f);
                v.swap(i, j);
            }
        }
        assert_eq!(count(2), 6);
        assert_eq!(count(3), 22);
    }

    #[test]
    fn sigma_examples() {
        let out = sigma(&coll("1|12|123")).admissible().unwrap();
        assert_eq!(out, coll("4|24|234"));
        // involution on smooth collections, no fixed points
        for n in 1..=5 {
            for s in enumerate_smooth(n) {
                let t = sigma(&s).admissible().expect("sigma leaves smooth inside");
                assert!(is_smooth(&t));
                assert_ne!(t, s);
                assert_eq!(sigma(&t).admissible().unwrap(), s);
            }
        }
    }

    #[test]
    fn split_merge_roundtrip() {
        // n=2, S = ({2},{12}): left factor empty, right length 1
        let s = coll("2|12");
        let (l, r) = split_f(&s).unwrap();
        assert_eq!(l.n(), 0);
        assert_eq!(r, coll("1"));
        assert_eq!(merge_f(&l, &r, 2, 2).unwrap(), s);

        for n in 1..=6 {
            for s in enumerate_smooth(n) {
                let k = s.set(1).iter().next().unwrap();
                if k == 1 {
                    assert!(split_f(&s).is_err());
                    continue;
                }
                let (l, r) = split_f(&s).unwrap();
                assert_eq!(merge_f(&l, &r, k, n).unwrap(), s, "{s:?}");
            }
        }
    }

    #[test]
    fn split_counts_multiply() {
        // |LS_n with S_1 = {k}| = rbar_{k-2} * rbar_{n+1-k}
        let rbar = |n: usize| -> usize {
            if n == 0 {
                1
            } else {
                enumerate_smooth(n).len()
            }
        };
        for n in 1..=6 {
            let all = enumerate_smooth(n);
            for k in 2..=n + 1 {
                let cnt = all
                    .iter()
                    .filter(|s| s.set(1).iter().next().unwrap() == k)
                    .count();
                assert_eq!(cnt, rbar(k - 2) * rbar(n + 1 - k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn strip_one_bijects() {
        // S_1 = {1} smooth collections correspond to length n-1 smooth ones
        let strip = strip_leading_one(&coll("1|13|134")).unwrap();
        assert_eq!(strip, coll("2|23"));
        for n in 2..=6 {
            let mut images: Vec<_> = enumerate_smooth(n)
                .into_iter()
                .filter(|s| s.set(1).contains(1))
                .map(|s| strip_leading_one(&s).unwrap())
                .collect();
            images.sort_unstable();
            assert_eq!(images, enumerate_smooth(n - 1), "n = {n}");
        }
    }

    #[test]
    fn text_roundtrip_wide_labels() {
        let all = enumerate_admissible(3).unwrap();
        for s in &all {
            assert_eq!(&AdmissibleCollection::parse(&s.text()).unwrap(), s);
        }
        // two-digit ambient uses commas
        let sets: Vec<Subset> = (1..=9)
            .map(|k| Subset::new(1..=k, 10).unwrap())
            .collect();
        let s = AdmissibleCollection::new(sets).unwrap();
        assert!(s.text().starts_with("1|1,2|"));
        assert_eq!(AdmissibleCollection::parse(&s.text()).unwrap(), s);
    }

    #[test]
    fn resource_limit() {
        assert!(matches!(
            enumerate_admissible(13),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn json_form() {
        let s = coll("1|13|124");
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            "[[1],[1,3],[1,2,4]]"
        );
    }
}
