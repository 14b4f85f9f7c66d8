//! Bit-set subsets of the label set {1, ..., ambient}.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A subset of {1, ..., ambient}, stored as a bitmask (bit k-1 <=> label k).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    mask: u32,
    ambient: u8,
}

impl Subset {
    pub fn new(members: impl IntoIterator<Item = usize>, ambient: usize) -> Result<Self> {
        let mut mask = 0u32;
        for m in members {
            if m < 1 || m > ambient {
                return Err(Error::Validation(format!(
                    "label {m} out of range 1..={ambient}"
                )));
            }
            mask |= 1 << (m - 1);
        }
        Ok(Subset {
            mask,
            ambient: ambient as u8,
        })
    }

    pub(crate) fn from_mask(mask: u32, ambient: usize) -> Self {
        debug_assert_eq!(mask & !((1u32 << ambient) - 1), 0);
        Subset {
            mask,
            ambient: ambient as u8,
        }
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    #[inline]
    pub fn card(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn contains(&self, label: usize) -> bool {
        label >= 1 && label <= self.ambient() && self.mask >> (label - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn with(&self, label: usize) -> Self {
        debug_assert!(label >= 1 && label <= self.ambient());
        Subset {
            mask: self.mask | 1 << (label - 1),
            ambient: self.ambient,
        }
    }

    pub fn without(&self, label: usize) -> Self {
        debug_assert!(label >= 1 && label <= self.ambient());
        Subset {
            mask: self.mask & !(1 << (label - 1)),
            ambient: self.ambient,
        }
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let label = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                Some(label)
            }
        })
    }

    /// Swap two labels wherever they occur.
    pub fn swap_labels(&self, a: usize, b: usize) -> Self {
        let has_a = self.contains(a);
        let has_b = self.contains(b);
        let mut s = *self;
        if has_a != has_b {
            if has_a {
                s = s.without(a).with(b);
            } else {
                s = s.without(b).with(a);
            }
        }
        s
    }
}

/// Lexicographic order on the sorted member tuples: compare smallest
/// elements first, a proper prefix sorts before its extensions.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.mask, other.mask);
        loop {
            match (a == 0, b == 0) {
                (true, true) => return Ordering::Equal,
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (false, false) => {}
            }
            let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
            match la.cmp(&lb) {
                Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                ord => return ord,
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.card()))?;
        for m in self.iter() {
            seq.serialize_element(&m)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_lex_order() {
        let n = 5;
        let s = |v: &[usize]| Subset::new(v.iter().copied(), n).unwrap();
        assert!(s(&[1, 4]) < s(&[2, 3]));
        assert!(s(&[1, 3]) < s(&[1, 4]));
        assert!(s(&[2]) < s(&[2, 3]));
        assert_eq!(s(&[2, 3]).cmp(&s(&[2, 3])), Ordering::Equal);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(Subset::new([5], 4).is_err());
        assert!(Subset::new([0], 4).is_err());
    }

    #[test]
    fn swap_labels_moves_single_occurrence() {
        let s = Subset::new([1, 3], 4).unwrap();
        let t = s.swap_labels(1, 4);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![3, 4]);
        assert_eq!(t.swap_labels(1, 4), s);
    }
}
