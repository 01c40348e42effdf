//! The largest coded caching gain any PDA can reach under the consecutive
//! cyclic placement, the matching rate lower bound, and the multiplicity
//! feasibility inequality behind them.
//!
//! A symbol repeated `g` times needs `g` cells in distinct rows and columns
//! whose crossing positions are all stars. On the cyclic star pattern each
//! cell's column must fall inside every other row's service window of length
//! `t`, which caps `g` at
//!
//! ```text
//! g* = 2*floor(K/(K-t+1))       if <K>_{K-t+1} <= floor((K-t)/2) or (K-t+1) | K
//! g* = 2*floor(K/(K-t+1)) + 1   otherwise
//! ```
//!
//! so any such PDA transmits at rate at least `(K-t)/g*`. The constructions
//! meet `g*` exactly in the divisible and remainder-match cases and fall
//! short by one otherwise; whether `g*` itself is reachable there is open.

use num_rational::Rational64;

use crate::modmath::mod1_raw;
use crate::{Error, Result};

/// Which branch of the gain formula fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundBranch {
    /// Small cyclic remainder, or exact division: the even bound.
    Floor,
    /// Large cyclic remainder: one extra repetition fits.
    FloorPlusOne,
    /// `t = K`: nothing is ever transmitted; the bound is moot and the rate
    /// is zero by convention.
    AllCached,
}

/// The gain bound `g*` and the induced rate lower bound `(K-t)/g*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GainBound {
    pub users: usize,
    pub coverage: usize,
    pub gain: usize,
    pub rate: Rational64,
    pub branch: BoundBranch,
}

/// Evaluates the bound for `(K, t)`. Errors when `t > K`.
pub fn optimal_gain(users: usize, coverage: usize) -> Result<GainBound> {
    let (k, t) = (users, coverage);
    if k < 1 {
        return Err(Error::ParamDomain(format!("K = {k} violates K >= 1")));
    }
    if t > k {
        return Err(Error::ParamDomain(format!(
            "t = {t} violates t <= K = {k}"
        )));
    }
    if t == k {
        return Ok(GainBound {
            users: k,
            coverage: t,
            gain: 2 * k,
            rate: Rational64::new(0, 1),
            branch: BoundBranch::AllCached,
        });
    }
    let w = k - t + 1;
    let n = k / w;
    let remainder = mod1_raw(k as i64, w as i64) as usize;
    let (gain, branch) = if remainder <= (k - t) / 2 || k % w == 0 {
        (2 * n, BoundBranch::Floor)
    } else {
        (2 * n + 1, BoundBranch::FloorPlusOne)
    };
    Ok(GainBound {
        users: k,
        coverage: t,
        gain,
        rate: Rational64::new((k - t) as i64, gain as i64),
        branch,
    })
}

/// Whether a symbol can repeat `multiplicity` times at all:
/// `(g - 2) * K <= g * (t - 1)`.
pub fn multiplicity_feasible(users: usize, coverage: usize, multiplicity: usize) -> bool {
    let (k, t, g) = (users as i64, coverage as i64, multiplicity as i64);
    (g - 2) * k <= g * (t - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_on_worked_examples() {
        let b = optimal_gain(10, 6).unwrap();
        assert_eq!((b.gain, b.branch), (4, BoundBranch::Floor));
        assert_eq!(b.rate, Rational64::new(1, 1));

        let b = optimal_gain(5, 2).unwrap();
        assert_eq!((b.gain, b.branch), (2, BoundBranch::Floor));
        assert_eq!(b.rate, Rational64::new(3, 2));

        let b = optimal_gain(11, 6).unwrap();
        assert_eq!((b.gain, b.branch), (3, BoundBranch::FloorPlusOne));
    }

    #[test]
    fn bound_with_nothing_cached() {
        for k in 1..=20 {
            let b = optimal_gain(k, 0).unwrap();
            assert_eq!(b.gain, 1);
            assert_eq!(b.rate, Rational64::new(k as i64, 1));
        }
    }

    #[test]
    fn bound_with_everything_cached() {
        let b = optimal_gain(6, 6).unwrap();
        assert_eq!(b.branch, BoundBranch::AllCached);
        assert_eq!(b.rate, Rational64::new(0, 1));
    }

    #[test]
    fn coverage_above_users_is_rejected() {
        assert!(optimal_gain(5, 6).is_err());
    }

    #[test]
    fn branches_partition() {
        for k in 1..=40 {
            for t in 0..k {
                let b = optimal_gain(k, t).unwrap();
                let w = k - t + 1;
                let n = k / w;
                match b.branch {
                    BoundBranch::Floor => assert_eq!(b.gain, 2 * n),
                    BoundBranch::FloorPlusOne => assert_eq!(b.gain, 2 * n + 1),
                    BoundBranch::AllCached => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn feasibility_inequality() {
        assert!(multiplicity_feasible(10, 6, 4)); // equality: 20 = 20
        assert!(!multiplicity_feasible(10, 6, 5)); // 30 > 25
        assert!(multiplicity_feasible(33, 1, 2)); // left side zero
        assert!(multiplicity_feasible(33, 0, 1)); // negative left side
        // g = 2 needs t >= 1; at t = 0 only singleton symbols exist.
        assert!(!multiplicity_feasible(33, 0, 2));
    }
}
