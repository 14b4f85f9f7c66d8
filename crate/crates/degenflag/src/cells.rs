//! Attracting-cell dimensions and the generating polynomials built from
//! them: Poincare polynomials, the two-variable refinement by tangent
//! defect, and the smooth-locus series.

use std::collections::BTreeMap;

use crate::collections::{fold_admissible, fold_smooth, AdmissibleCollection, DEFAULT_MAX_N};
use crate::error::{Error, Result};
use crate::poly::{BiPolynomial, IntPolynomial};
use crate::quiver::{ext1_defect, first_early, first_late};

/// The three pair counts whose sum is the cell dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CellStats {
    /// pairs k < l with k on the projective side strictly above l injective
    pub n_pi: usize,
    /// projective-projective inversions
    pub n_pp: usize,
    /// injective-injective inversions
    pub n_ii: usize,
}

impl CellStats {
    pub fn dim(&self) -> usize {
        self.n_pi + self.n_pp + self.n_ii
    }
}

/// Cell statistics in O(n^2) from the first-occurrence indices
/// k_x = min{t < x : x in S_t} and l_x = min{t >= x : x in S_t}.
pub fn cell_stats(s: &AdmissibleCollection) -> CellStats {
    let n = s.n();
    let inf = usize::MAX;
    let mut early = vec![inf; n + 2];
    let mut late = vec![inf; n + 2];
    for x in 1..=n + 1 {
        early[x] = first_early(s, x).unwrap_or(inf);
        late[x] = first_late(s, x).unwrap_or(inf);
    }

    let mut st = CellStats {
        n_pi: 0,
        n_pp: 0,
        n_ii: 0,
    };
    for k in 1..=n {
        for l in k + 1..=n + 1 {
            if late[k] != inf && late[k] <= l - 1 && late[k] < early[l] {
                st.n_pi += 1;
            }
            if l <= n && late[l] <= n && late[l] < late[k] {
                st.n_pp += 1;
            }
            if k >= 2 && early[l] <= k - 1 && early[l] < early[k] {
                st.n_ii += 1;
            }
        }
    }
    st
}

/// Direct transcription of the pair conditions, one scan per pair; kept as
/// an independent check for `cell_stats`.
pub fn cell_stats_naive(s: &AdmissibleCollection) -> CellStats {
    let n = s.n();
    let mut st = CellStats {
        n_pi: 0,
        n_pp: 0,
        n_ii: 0,
    };
    for k in 1..=n + 1 {
        for l in k + 1..=n + 1 {
            if (k..l.min(n + 1)).any(|t| s.set(t).contains(k) && !s.set(t).contains(l)) {
                st.n_pi += 1;
            }
            if l <= n && (l..=n).any(|t| s.set(t).contains(l) && !s.set(t).contains(k)) {
                st.n_pp += 1;
            }
            if k >= 2 && (1..k).any(|t| s.set(t).contains(l) && !s.set(t).contains(k)) {
                st.n_ii += 1;
            }
        }
    }
    st
}

/// Dimension of the attracting cell of a fixed point.
pub fn cell_dim(s: &AdmissibleCollection) -> usize {
    cell_stats(s).dim()
}

fn check_bound(n: usize) -> Result<()> {
    if n > DEFAULT_MAX_N {
        return Err(Error::ResourceLimit {
            n,
            bound: DEFAULT_MAX_N,
        });
    }
    Ok(())
}

/// Poincare polynomial: sum of q^{cell dim} over all fixed points.
pub fn poincare(n: usize) -> Result<IntPolynomial> {
    check_bound(n)?;
    Ok(fold_admissible(
        n,
        IntPolynomial::zero,
        |acc, s| acc.add_term(cell_dim(s) as u32, 1),
        |mut a, b| {
            a += &b;
            a
        },
    ))
}

/// Number of fixed points (the value of `poincare` at q = 1).
pub fn euler_characteristic(n: usize) -> Result<u64> {
    check_bound(n)?;
    Ok(fold_admissible(n, || 0u64, |acc, _| *acc += 1, |a, b| a + b))
}

/// Two-variable refinement: sum of q^{cell dim} t^{tangent defect}.
pub fn qt_genocchi(n: usize) -> Result<BiPolynomial> {
    check_bound(n)?;
    Ok(fold_admissible(
        n,
        BiPolynomial::zero,
        |acc, s| acc.add_term(cell_dim(s) as u32, ext1_defect(s) as u32, 1),
        |mut a, b| {
            a += &b;
            a
        },
    ))
}

/// Counts of fixed points by tangent defect.
pub fn defect_histogram(n: usize) -> Result<BTreeMap<usize, u64>> {
    check_bound(n)?;
    Ok(fold_admissible(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<usize, u64>, s| {
            *acc.entry(ext1_defect(s)).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

/// Poincare polynomial of the smooth locus.
pub fn smooth_poincare(n: usize) -> Result<IntPolynomial> {
    check_bound(n)?;
    Ok(fold_smooth(
        n,
        IntPolynomial::zero,
        |acc, s| acc.add_term(cell_dim(s) as u32, 1),
        |mut a, b| {
            a += &b;
            a
        },
    ))
}

/// Number of smooth fixed points.
pub fn smooth_count(n: usize) -> Result<u64> {
    check_bound(n)?;
    Ok(fold_smooth(n, || 0u64, |acc, _| *acc += 1, |a, b| a + b))
}

/// Counts of singular cells by codimension (total dimension minus cell
/// dimension). Empty map when every cell is smooth (n = 1).
pub fn singular_codim_profile(n: usize) -> Result<BTreeMap<usize, u64>> {
    check_bound(n)?;
    let total = n * (n + 1) / 2;
    Ok(fold_admissible(
        n,
        BTreeMap::new,
        |acc: &mut BTreeMap<usize, u64>, s| {
            if ext1_defect(s) > 0 {
                *acc.entry(total - cell_dim(s)).or_insert(0) += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

/// Codimension of the singular locus: the least codimension of a singular
/// cell, or `None` when there is none.
pub fn singular_min_codim(n: usize) -> Result<Option<usize>> {
    Ok(singular_codim_profile(n)?.keys().next().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collections::enumerate_admissible;

    fn coll(text: &str) -> AdmissibleCollection {
        AdmissibleCollection::parse(text).unwrap()
    }

    #[test]
    fn stats_fast_matches_naive() {
        for n in 1..=5 {
            for s in enumerate_admissible(n).unwrap() {
                assert_eq!(cell_stats(&s), cell_stats_naive(&s), "{s:?}");
            }
        }
    }

    #[test]
    fn dimensions_n2() {
        assert_eq!(cell_dim(&coll("2|13")), 0);
        assert_eq!(cell_dim(&coll("1|12")), 3);
        let dims: Vec<usize> = enumerate_admissible(2)
            .unwrap()
            .iter()
            .map(cell_dim)
            .collect();
        let mut sorted = dims.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn top_cell_is_unique_and_nested() {
        for n in 1..=5 {
            let top = n * (n + 1) / 2;
            let tops: Vec<_> = enumerate_admissible(n)
                .unwrap()
                .into_iter()
                .filter(|s| cell_dim(s) == top)
                .collect();
            assert_eq!(tops.len(), 1);
            let expect: Vec<_> = (1..=n)
                .map(|k| crate::subset::Subset::new(1..=k, n + 1).unwrap())
                .collect();
            assert_eq!(tops[0].sets(), expect);
        }
    }

    #[test]
    fn poincare_n3() {
        // coefficients are the out-degree histogram of the n = 3 reference
        // graph: 1, 3, 7, 10, 10, 6, 1
        assert_eq!(
            poincare(3).unwrap(),
            IntPolynomial::from_coeffs(&[1, 3, 7, 10, 10, 6, 1])
        );
    }

    #[test]
    fn euler_characteristics() {
        let expect = [2u64, 7, 38, 295, 3098];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(euler_characteristic(i + 1).unwrap(), e);
        }
    }

    #[test]
    fn qt_n2() {
        let h3 = qt_genocchi(2).unwrap();
        assert_eq!(
            h3,
            BiPolynomial::from_terms([(1, 0, 2), (2, 0, 3), (3, 0, 1), (0, 1, 1)])
        );
    }

    #[test]
    fn qt_n3() {
        // h_4 = q^3(5+10q+6q^2+q^3) + tq(2+7q+5q^2) + t^2(1+q)
        let h4 = qt_genocchi(3).unwrap();
        let expect = BiPolynomial::from_terms([
            (3, 0, 5),
            (4, 0, 10),
            (5, 0, 6),
            (6, 0, 1),
            (1, 1, 2),
            (2, 1, 7),
            (3, 1, 5),
            (0, 2, 1),
            (1, 2, 1),
        ]);
        assert_eq!(h4, expect);
    }

    #[test]
    fn qt_specializations() {
        for n in 1..=5 {
            let h = qt_genocchi(n).unwrap();
            assert_eq!(h.eval_t(1), poincare(n).unwrap());
            assert_eq!(h.eval_t(0), smooth_poincare(n).unwrap());
            assert_eq!(h.eval(1, 1) as u64, euler_characteristic(n).unwrap());
        }
    }

    #[test]
    fn defect_histogram_n3() {
        let h = defect_histogram(3).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 22), (1, 14), (2, 2)]));
    }

    #[test]
    fn smooth_counts_schroeder() {
        let expect = [2u64, 6, 22, 90, 394, 1806];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(smooth_count(i + 1).unwrap(), e);
        }
    }

    #[test]
    fn singular_codims() {
        assert_eq!(singular_min_codim(1).unwrap(), None);
        assert_eq!(singular_min_codim(2).unwrap(), Some(3));
        let profile = singular_codim_profile(2).unwrap();
        assert_eq!(profile, BTreeMap::from([(3, 1)]));
        // the profile totals must recover the singular-point count
        for n in 3..=5 {
            let total: u64 = singular_codim_profile(n).unwrap().values().sum();
            let singular = euler_characteristic(n).unwrap() - smooth_count(n).unwrap();
            assert_eq!(total, singular, "n = {n}");
        }
    }

    #[test]
    fn split_dimension_laws() {
        use crate::collections::{enumerate_smooth, split_f, strip_leading_one};
        for n in 2..=5 {
            for s in enumerate_smooth(n) {
                let k = s.set(1).iter().next().unwrap();
                if k == 1 {
                    let stripped = strip_leading_one(&s).unwrap();
                    assert_eq!(cell_dim(&s), cell_dim(&stripped) + n, "{s:?}");
                } else {
                    let (l, r) = split_f(&s).unwrap();
                    let (dl, dr) = (
                        if l.n() == 0 { 0 } else { cell_dim(&l) },
                        if r.n() == 0 { 0 } else { cell_dim(&r) },
                    );
                    assert_eq!(cell_dim(&s), dl + dr + (k - 1) * (n + 2 - k) - 1, "{s:?}");
                }
            }
        }
    }

    #[test]
    fn smooth_series_recursion() {
        // P_n = q^n P_{n-1} + sum_l q^{(l+1)(n-l)-1} P_l P_{n-1-l}
        let ps: Vec<IntPolynomial> = (0..=5)
            .map(|n| {
                if n == 0 {
                    IntPolynomial::one()
                } else {
                    smooth_poincare(n).unwrap()
                }
            })
            .collect();
        for n in 1..=5usize {
            let mut rhs = ps[n - 1].shift(n as u32);
            for l in 0..n {
                let shift = ((l + 1) * (n - l) - 1) as u32;
                rhs += &(&ps[l] * &ps[n - 1 - l]).shift(shift);
            }
            assert_eq!(ps[n], rhs, "n = {n}");
        }
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(poincare(13), Err(Error::ResourceLimit { .. })));
    }
}
