//! Fibers of the resolution over a fixed point: the intermediate-space
//! construction, the reduced collection one size down, and the singleton
//! test by recursion.

use serde::Serialize;

use crate::collections::AdmissibleCollection;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// The intermediate sets S_{i,i+1}, i = 1, ..., n-1: the set S_i when it
/// avoids i+1, otherwise S_{i+1} with i+1 removed. Fails with the offending
/// index when some i+1 lies in S_i but not in S_{i+1}, since the two
/// candidates then disagree in size.
pub fn intermediate_sets(s: &AdmissibleCollection) -> Result<Vec<Subset>> {
    let n = s.n();
    if let Some(a) = (1..n).find(|&a| s.set(a).contains(a + 1) && !s.set(a + 1).contains(a + 1)) {
        return Err(Error::Domain(format!(
            "element {} lies in S_{a} but not in S_{}",
            a + 1,
            a + 1
        )));
    }
    let mut out = Vec::with_capacity(n - 1);
    for i in 1..n {
        let t = if !s.set(i).contains(i + 1) {
            *s.set(i)
        } else {
            s.set(i + 1).without(i + 1)
        };
        debug_assert_eq!(t.card(), i);
        out.push(t);
    }
    Ok(out)
}

/// The reduced collection of length n-1 obtained by deleting the label i+1
/// from the window of S_{i,i+1} and closing up the gap.
pub fn bar_collection(s: &AdmissibleCollection) -> Result<AdmissibleCollection> {
    let n = s.n();
    if n < 2 {
        return Err(Error::Domain("reduction needs n >= 2".into()));
    }
    let inter = intermediate_sets(s)?;
    let mut sets = Vec::with_capacity(n - 1);
    for (idx, t) in inter.iter().enumerate() {
        let i = idx + 1;
        let members = t.iter().map(|a| if a <= i { a } else { a - 1 });
        sets.push(Subset::new(members, n)?);
    }
    AdmissibleCollection::new(sets)
        .map_err(|e| Error::Integrity(format!("reduced collection invalid: {e}")))
}

/// Whether the resolution fiber over the fixed point is a single point:
/// true when the intermediate sets exist at every recursion level.
pub fn fiber_is_singleton(s: &AdmissibleCollection) -> bool {
    if s.n() == 1 {
        return true;
    }
    match bar_collection(s) {
        Ok(bar) => fiber_is_singleton(&bar),
        Err(_) => false,
    }
}

/// The least offset k >= 1 admitting a witness a with a + k in S_a while
/// a + 1 is not in S_{a+k}; returns (k, a) with the smallest such a, or
/// `None` when no offset works.
pub fn first_obstruction(s: &AdmissibleCollection) -> Option<(usize, usize)> {
    let n = s.n();
    for k in 1..n {
        for a in 1..=n - k {
            if s.set(a).contains(a + k) && !s.set(a + k).contains(a + 1) {
                return Some((k, a));
            }
        }
    }
    None
}

/// One level of the fiber recursion, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct FiberStep {
    pub n: usize,
    pub collection: String,
    /// index a blocking the reduction at this level, if any
    pub obstruction: Option<usize>,
}

/// The full recursion trace ending either at n = 1 or at the first level
/// where the reduction fails.
pub fn fiber_trace(s: &AdmissibleCollection) -> Vec<FiberStep> {
    let mut out = Vec::new();
    let mut cur = s.clone();
    loop {
        let n = cur.n();
        let obstruction =
            (1..n).find(|&a| cur.set(a).contains(a + 1) && !cur.set(a + 1).contains(a + 1));
        out.push(FiberStep {
            n,
            collection: cur.text(),
            obstruction,
        });
        if n == 1 || obstruction.is_some() {
            return out;
        }
        cur = bar_collection(&cur).expect("no obstruction at this level");
    }
}
