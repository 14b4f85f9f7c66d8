//! Subdiagonal lattice paths with east, north and diagonal steps, their
//! counting polynomials, and the step-pairing structure on smooth fixed
//! points that explains the (1+q)-divisibility of the smooth series.

use std::fmt;

use crate::cells::cell_dim;
use crate::collections::{enumerate_smooth, sigma, AdmissibleCollection};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// One step of a subdiagonal path.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Step {
    /// (1, 0)
    E,
    /// (1, 1)
    D,
    /// (0, 1)
    N,
}

/// A lattice path from (0,0) to (n,n) staying weakly below the diagonal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SchroederPath {
    steps: Vec<Step>,
}

impl SchroederPath {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn diagonal_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::D).count()
    }
}

impl fmt::Debug for SchroederPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

/// All paths for a given n, in lexicographic step order E < D < N.
pub fn enumerate_paths(n: usize) -> Vec<SchroederPath> {
    let mut out = Vec::new();
    let mut steps = Vec::new();
    fn rec(x: usize, y: usize, n: usize, steps: &mut Vec<Step>, out: &mut Vec<SchroederPath>) {
        if x == n && y == n {
            out.push(SchroederPath { steps: steps.clone() });
            return;
        }
        if x < n {
            steps.push(Step::E);
            rec(x + 1, y, n, steps, out);
            steps.pop();
        }
        if x < n && y < n {
            steps.push(Step::D);
            rec(x + 1, y + 1, n, steps, out);
            steps.pop();
        }
        if y < x {
            steps.push(Step::N);
            rec(x, y + 1, n, steps, out);
            steps.pop();
        }
    }
    rec(0, 0, n, &mut steps, &mut out);
    out
}

/// Path count (value of `r_poly` at q = 1): 2, 6, 22, 90, ...
pub fn r_number(n: usize) -> u64 {
    r_poly(n).eval(1) as u64
}

/// Counting polynomial of paths by number of diagonal steps, computed by a
/// grid dynamic program.
pub fn r_poly(n: usize) -> IntPolynomial {
    // table[x][y] = series for paths from (x, y) to (n, n), y <= x
    let mut table = vec![vec![IntPolynomial::zero(); n + 1]; n + 1];
    table[n][n] = IntPolynomial::one();
    for x in (0..=n).rev() {
        for y in (0..=x.min(n)).rev() {
            if x == n && y == n {
                continue;
            }
            let mut acc = IntPolynomial::zero();
            if x < n {
                acc += &table[x + 1][y];
            }
            if x < n && y < n {
                acc += &table[x + 1][y + 1].shift(1);
            }
            if y < x {
                acc += &table[x][y + 1];
            }
            table[x][y] = acc;
        }
    }
    table[0][0].clone()
}

/// Same polynomial via the first-return recurrence
/// r_n = q r_{n-1} + sum_{k} r_k r_{n-1-k}; independent of the grid walk.
pub fn r_poly_recursive(n: usize) -> IntPolynomial {
    let mut rs: Vec<IntPolynomial> = vec![IntPolynomial::one()];
    for m in 1..=n {
        let mut acc = rs[m - 1].shift(1);
        for k in 0..m {
            acc += &(&rs[k] * &rs[m - 1 - k]);
        }
        rs.push(acc);
    }
    rs[n].clone()
}

/// The half polynomial: r_n / (1+q), exact for n >= 1.
pub fn s_poly(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Domain("no half polynomial for n = 0".into()));
    }
    r_poly(n).div_exact_one_plus_q()
}

/// Binomial-coefficient value of the Catalan number C(2n, n)/(n+1), used as
/// an oracle for the diagonal-free coefficient.
pub fn catalan(n: u64) -> u64 {
    let mut binom: u128 = 1;
    for i in 0..n as u128 {
        binom = binom * (2 * n as u128 - i) / (i + 1);
    }
    (binom / (n as u128 + 1)) as u64
}

/// One orbit of the label-swap involution on smooth fixed points.
#[derive(Clone, Debug)]
pub struct SigmaOrbit {
    /// the member whose cell dimension is smaller
    pub low: AdmissibleCollection,
    pub high: AdmissibleCollection,
    pub low_dim: usize,
}

/// Summary of the pairing: every smooth fixed point sits in a two-element
/// orbit whose cell dimensions differ by exactly one.
#[derive(Clone, Debug)]
pub struct SigmaPairingReport {
    pub n: usize,
    pub orbits: Vec<SigmaOrbit>,
    /// sum of q^{low_dim} over orbits; equals the smooth series divided
    /// by (1+q)
    pub half_series: IntPolynomial,
}

/// Pairs the smooth fixed points into involution orbits, verifying the
/// dimension-difference invariant along the way.
pub fn sigma_pairing_report(n: usize) -> Result<SigmaPairingReport> {
    let all = enumerate_smooth(n);
    let mut orbits = Vec::with_capacity(all.len() / 2);
    let mut half_series = IntPolynomial::zero();
    for s in &all {
        let t = sigma(s).admissible().ok_or_else(|| {
            Error::Integrity(format!("involution left the admissible set at {s:?}"))
        })?;
        if t == *s {
            return Err(Error::Integrity(format!("involution fixes {s:?}")));
        }
        if t < *s {
            continue; // orbit handled from its smaller member
        }
        let (ds, dt) = (cell_dim(s), cell_dim(&t));
        if ds.abs_diff(dt) != 1 {
            return Err(Error::Integrity(format!(
                "orbit {{{s:?}, {t:?}}} has dimensions {ds}, {dt}"
            )));
        }
        let (low, high, low_dim) = if ds < dt {
            (s.clone(), t.clone(), ds)
        } else {
            (t.clone(), s.clone(), dt)
        };
        half_series.add_term(low_dim as u32, 1);
        orbits.push(SigmaOrbit { low, high, low_dim });
    }
    if orbits.len() * 2 != all.len() {
        return Err(Error::Integrity("orbit count mismatch".into()));
    }
    Ok(SigmaPairingReport {
        n,
        orbits,
        half_series,
    })
}
