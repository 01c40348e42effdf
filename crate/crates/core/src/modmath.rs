//! Cyclic arithmetic on 1-based indices.
//!
//! Users, nodes, subfiles, and tracks are all numbered from 1 and wrap around
//! a ring of size `q`, so residues live in `[1, q]` instead of `[0, q-1]`:
//! [`mod1`] maps multiples of `q` to `q` and everything else to its least
//! positive residue. [`cyclic_range`] walks the ring from `a` to `b`
//! inclusive, wrapping as needed.

use crate::{Error, Result};

/// Reduces `a` onto the 1-based residue ring `[1, q]`.
///
/// Negative inputs are fine; the placement formulas routinely feed values
/// like `k - gamma * L + 1` that drop below zero.
pub fn mod1(a: i64, q: i64) -> Result<i64> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    Ok(mod1_raw(a, q))
}

/// `mod1` for moduli already known to be positive.
#[inline]
pub(crate) fn mod1_raw(a: i64, q: i64) -> i64 {
    debug_assert!(q >= 1);
    let r = a.rem_euclid(q);
    if r == 0 {
        q
    } else {
        r
    }
}

/// The ordered sequence `mod1(a, q), mod1(a+1, q), ..., mod1(b, q)`.
///
/// Empty when `b = a - 1`; `b < a - 1` is rejected. The result has exactly
/// `b - a + 1` entries and may revisit residues when the walk is longer than
/// the ring.
pub fn cyclic_range(a: i64, b: i64, q: i64) -> Result<Vec<i64>> {
    if q < 1 {
        return Err(Error::InvalidModulus(q));
    }
    if b < a - 1 {
        return Err(Error::InvalidRange { start: a, end: b });
    }
    Ok((a..=b).map(|x| mod1_raw(x, q)).collect())
}

/// A 1-based residue tied to its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicIndex {
    value: i64,
    modulus: i64,
}

impl CyclicIndex {
    /// Reduces `a` modulo `q` onto `[1, q]`.
    pub fn new(a: i64, q: i64) -> Result<Self> {
        Ok(CyclicIndex {
            value: mod1(a, q)?,
            modulus: q,
        })
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// The index shifted by `delta` steps around the ring.
    pub fn shift(&self, delta: i64) -> Self {
        CyclicIndex {
            value: mod1_raw(self.value + delta, self.modulus),
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mod1_multiples_map_to_q() {
        assert_eq!(mod1(10, 5).unwrap(), 5);
        assert_eq!(mod1(0, 7).unwrap(), 7);
        assert_eq!(mod1(-14, 7).unwrap(), 7);
    }

    #[test]
    fn mod1_ordinary_residues() {
        assert_eq!(mod1(7, 5).unwrap(), 2);
        assert_eq!(mod1(-4, 10).unwrap(), 6);
        assert_eq!(mod1(1, 1).unwrap(), 1);
    }

    #[test]
    fn mod1_rejects_bad_modulus() {
        assert!(matches!(mod1(3, 0), Err(Error::InvalidModulus(0))));
        assert!(matches!(mod1(3, -2), Err(Error::InvalidModulus(-2))));
    }

    #[test]
    fn cyclic_range_wraps() {
        assert_eq!(cyclic_range(9, 11, 10).unwrap(), vec![9, 10, 1]);
        assert_eq!(cyclic_range(2, 4, 10).unwrap(), vec![2, 3, 4]);
        assert_eq!(cyclic_range(6, 11, 10).unwrap(), vec![6, 7, 8, 9, 10, 1]);
    }

    #[test]
    fn cyclic_range_empty_and_invalid() {
        assert_eq!(cyclic_range(4, 3, 10).unwrap(), Vec::<i64>::new());
        assert!(matches!(
            cyclic_range(4, 2, 10),
            Err(Error::InvalidRange { start: 4, end: 2 })
        ));
    }

    #[test]
    fn cyclic_index_shift_wraps() {
        let i = CyclicIndex::new(9, 10).unwrap();
        assert_eq!(i.shift(3).value(), 2);
        assert_eq!(i.shift(-9).value(), 10);
    }

    proptest! {
        #[test]
        fn mod1_is_congruent(a in -10_000i64..10_000, q in 1i64..500) {
            let r = mod1(a, q).unwrap();
            prop_assert!((1..=q).contains(&r));
            prop_assert_eq!((r - a).rem_euclid(q), 0);
        }

        #[test]
        fn mod1_is_periodic(a in -10_000i64..10_000, q in 1i64..500) {
            prop_assert_eq!(mod1(a + q, q).unwrap(), mod1(a, q).unwrap());
        }

        #[test]
        fn cyclic_range_length_and_distinctness(
            a in -200i64..200,
            len in 0i64..40,
            q in 1i64..60,
        ) {
            let b = a + len - 1;
            let seq = cyclic_range(a, b, q).unwrap();
            prop_assert_eq!(seq.len() as i64, len);
            if len <= q {
                let mut sorted = seq.clone();
                sorted.sort_unstable();
                sorted.dedup();
                prop_assert_eq!(sorted.len() as i64, len);
            }
        }
    }
}
