//! Interval representations of the equioriented A_n quiver and the
//! tangent-space computation at a fixed point.
//!
//! The ambient module P ⊕ I decomposes into 2n interval summands; a fixed
//! point selects a sub-interval of each summand, and tangent dimensions are
//! sums of hom/ext dimensions between intervals.

use serde::Serialize;

use crate::collections::AdmissibleCollection;
use crate::subset::Subset;

/// The interval representation supported on quiver vertices lo..=hi.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(lo >= 1 && lo <= hi);
        Interval { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }
}

/// dim Hom(R_{i,j}, R_{k,l}): 1 iff k <= i <= l <= j, else 0.
pub fn hom_dim(a: Interval, b: Interval) -> usize {
    usize::from(b.lo <= a.lo && a.lo <= b.hi && b.hi <= a.hi)
}

/// dim Ext^1(R_{i,j}, R_{k,l}): 1 iff i+1 <= k <= j+1 <= l, else 0.
pub fn ext_dim(a: Interval, b: Interval) -> usize {
    usize::from(a.lo + 1 <= b.lo && b.lo <= a.hi + 1 && a.hi + 1 <= b.hi)
}

/// The Euler form <d, e> = sum d_i e_i - sum d_i e_{i+1} on dimension
/// vectors indexed by quiver vertices 1..=n.
pub fn euler_form(d: &[i64], e: &[i64]) -> i64 {
    assert_eq!(d.len(), e.len());
    let n = d.len();
    let mut acc = 0;
    for i in 0..n {
        acc += d[i] * e[i];
        if i + 1 < n {
            acc -= d[i] * e[i + 1];
        }
    }
    acc
}

/// Which of the 2n summands a given index names.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// Projective summand P_{label}, supported on [label, n].
    Projective,
    /// Injective summand I_{label}, supported on [1, label-1].
    Injective,
}

/// One of the 2n summands of the ambient module, for a given n.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Summand {
    pub index: usize,
    pub side: Side,
    pub label: usize,
    pub support: Interval,
}

/// The 2n summands in row order: indices 1..=n are the projective side with
/// labels n+1-i, indices n+1..=2n the injective side with labels 2n+2-i.
pub fn summands(n: usize) -> Vec<Summand> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let label = n + 1 - i;
        out.push(Summand {
            index: i,
            side: Side::Projective,
            label,
            support: Interval::new(label, n),
        });
    }
    for i in n + 1..=2 * n {
        let label = 2 * n + 2 - i;
        out.push(Summand {
            index: i,
            side: Side::Injective,
            label,
            support: Interval::new(1, label - 1),
        });
    }
    out
}

/// First index k >= u with u in S_k, if any.
pub(crate) fn first_late(s: &AdmissibleCollection, u: usize) -> Option<usize> {
    (u..=s.n()).find(|&k| s.set(k).contains(u))
}

/// First index k < u with u in S_k, if any.
pub(crate) fn first_early(s: &AdmissibleCollection, u: usize) -> Option<usize> {
    (1..u.min(s.n() + 1)).find(|&k| s.set(k).contains(u))
}

/// The sub/quotient intervals a fixed point carves out of one summand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SummandSlice {
    pub summand: Summand,
    pub sub: Option<Interval>,
    pub quot: Option<Interval>,
}

/// Full module-theoretic decomposition of a fixed point.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub slices: Vec<SummandSlice>,
}

/// Splits each of the 2n summands into the sub-interval spanned by the fixed
/// point and its quotient. Subs are suffixes of the supports, quotients
/// prefixes; a missing part is `None`.
pub fn decompose_fixed_point(s: &AdmissibleCollection) -> Decomposition {
    let n = s.n();
    let mut slices = Vec::with_capacity(2 * n);
    for summand in summands(n) {
        let (sub, quot) = match summand.side {
            Side::Projective => {
                let u = summand.label;
                match first_late(s, u) {
                    Some(l) => (
                        Some(Interval::new(l, n)),
                        (l > u).then(|| Interval::new(u, l - 1)),
                    ),
                    None => (None, Some(Interval::new(u, n))),
                }
            }
            Side::Injective => {
                let u = summand.label;
                match first_early(s, u) {
                    Some(k) => (
                        Some(Interval::new(k, u - 1)),
                        (k > 1).then(|| Interval::new(1, k - 1)),
                    ),
                    None => (None, Some(Interval::new(1, u - 1))),
                }
            }
        };
        slices.push(SummandSlice { summand, sub, quot });
    }
    Decomposition { slices }
}

impl Decomposition {
    pub fn subs(&self) -> impl Iterator<Item = Interval> + '_ {
        self.slices.iter().filter_map(|sl| sl.sub)
    }

    pub fn quots(&self) -> impl Iterator<Item = Interval> + '_ {
        self.slices.iter().filter_map(|sl| sl.quot)
    }

    /// JSON form: one record per summand.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .slices
            .iter()
            .map(|sl| {
                serde_json::json!({
                    "index": sl.summand.index,
                    "side": match sl.summand.side {
                        Side::Projective => "P",
                        Side::Injective => "I",
                    },
                    "label": sl.summand.label,
                    "support": [sl.summand.support.lo, sl.summand.support.hi],
                    "sub": sl.sub.map(|iv| vec![iv.lo, iv.hi]),
                    "quot": sl.quot.map(|iv| vec![iv.lo, iv.hi]),
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Number of independent first-order deformations beyond the cell dimension
/// count: the sum of ext dimensions from injective-side subs to
/// projective-side quotients.
pub fn ext1_defect(s: &AdmissibleCollection) -> usize {
    let dec = decompose_fixed_point(s);
    let mut defect = 0;
    for sl_a in &dec.slices {
        if sl_a.summand.side != Side::Injective {
            continue;
        }
        let Some(a) = sl_a.sub else { continue };
        for sl_b in &dec.slices {
            if sl_b.summand.side != Side::Projective {
                continue;
            }
            let Some(b) = sl_b.quot else { continue };
            defect += ext_dim(a, b);
        }
    }
    defect
}

/// Tangent space dimension at the fixed point: the total hom count between
/// all subs and all quotients.
pub fn tangent_dim(s: &AdmissibleCollection) -> usize {
    let dec = decompose_fixed_point(s);
    let mut dim = 0;
    for a in dec.subs() {
        for b in dec.quots() {
            dim += hom_dim(a, b);
        }
    }
    dim
}

/// Tangent-space smoothness test: no excess deformations.
pub fn is_smooth_ext(s: &AdmissibleCollection) -> bool {
    ext1_defect(s) == 0
}

/// Torus weights of the tangent space: one pair (i, j) of summand indices
/// per hom contribution, with weight e_j - e_i in the 2n-dimensional
/// character lattice.
pub fn tangent_weight_pairs(s: &AdmissibleCollection) -> Vec<(usize, usize)> {
    let dec = decompose_fixed_point(s);
    let mut pairs = Vec::new();
    for sl_a in &dec.slices {
        let Some(a) = sl_a.sub else { continue };
        for sl_b in &dec.slices {
            let Some(b) = sl_b.quot else { continue };
            if hom_dim(a, b) == 1 {
                pairs.push((sl_a.summand.index, sl_b.summand.index));
            }
        }
    }
    pairs
}

/// Dimension vector of an interval inside quiver vertices 1..=n.
pub fn dim_vector(iv: Option<Interval>, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    if let Some(iv) = iv {
        for x in iv.lo..=iv.hi {
            v[x - 1] = 1;
        }
    }
    v
}

/// Convenience accessor: the occurrence set of a label u, i.e. all k with
/// u in S_k, as a subset of {1, ..., n}.
pub fn occurrence_set(s: &AdmissibleCollection, u: usize) -> Subset {
    let n = s.n();
    Subset::new((1..=n).filter(|&k| s.set(k).contains(u)), n.max(1)).unwrap()
}
