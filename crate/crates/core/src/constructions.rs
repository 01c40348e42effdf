//! PDA constructions under the consecutive cyclic placement, the case
//! dispatcher, and the closed forms for the achieved rate and
//! subpacketization.
//!
//! Non-star cells at a fixed cyclic diagonal offset `d = mod1(j - k, K)`
//! form a *track*. Tracks `d` and `K-t+1-d` pair up into a class, and labels
//! are two-component: the class number first, then a position along the
//! track. Two regimes:
//!
//! - **Direct** (`(K-t+1) | K` or `K-t = 1`): a `K x K` array with one row
//!   per subfile. Each label repeats `2K/(K-t+1)` times and the rate is
//!   `(K-t)(K-t+1) / 2K`.
//! - **Packet-split** (everything else with `t < K`): each subfile splits
//!   into `g` packets, giving a `gK x K` array whose labels repeat `g`
//!   times, where `g` is `2*floor(K/(K-t+1))`, plus one when the cyclic
//!   remainder of `K` equals `K-t`. The rate is `(K-t)/g`.
//!
//! `t = K` caches everything; the array is all stars and nothing is sent.

use num_rational::Rational64;

use crate::modmath::mod1_raw;
use crate::params::{case_for, CaseKind, SystemParams};
use crate::pda::{Cell, Label, Pda, Provenance, RowId};
use crate::{Error, Result};

/// A constructed scheme with its claimed parameters.
///
/// `gain` is the uniform symbol multiplicity (0 for the all-star array),
/// `rate` and `subpacketization` the closed-form values; the verifier
/// reproduces all three from the grid alone.
#[derive(Clone, Debug)]
pub struct SchemeResult {
    pub pda: Pda,
    pub gain: usize,
    pub rate: Rational64,
    pub subpacketization: usize,
    pub case: CaseKind,
}

/// The `K x K` construction for the divisible case.
///
/// With `d = mod1(j - k, K)` and `w = K - t + 1`, cell `(j, k)` is a star
/// for `d > K - t` and otherwise labeled
///
/// - `(d, mod1(k, w))` when `2d < w`,
/// - `(w - d, mod1(j, w))` when `2d > w`,
/// - `(d, mod1(k, w/2))` on the midpoint track `2d = w`.
pub fn build_direct(params: &SystemParams) -> Result<Pda> {
    let case = params.case();
    if case != CaseKind::Divisible {
        return Err(Error::WrongCase {
            construction: "the direct K x K construction",
            case,
        });
    }
    let k = params.users() as i64;
    let t = params.coverage() as i64;
    let w = k - t + 1;
    let mut grid = Vec::with_capacity((k * k) as usize);
    for j in 1..=k {
        for col in 1..=k {
            let d = mod1_raw(j - col, k);
            let cell = if d > k - t {
                Cell::Star
            } else if 2 * d < w {
                Cell::Entry(Label::Pair(d as u64, mod1_raw(col, w) as u64))
            } else if 2 * d > w {
                Cell::Entry(Label::Pair((w - d) as u64, mod1_raw(j, w) as u64))
            } else {
                // The midpoint track exists only when w is even, i.e. K - t
                // is odd; w/2 below must be exact.
                assert!((k - t) % 2 == 1, "midpoint track reached with even K - t");
                Cell::Entry(Label::Pair(d as u64, mod1_raw(col, w / 2) as u64))
            };
            grid.push(cell);
        }
    }
    let rows = (1..=k as usize).map(RowId::Subfile).collect();
    Pda::new(k as usize, rows, grid, Provenance::Construction1)
}

/// The symbol multiplicity of the packet-split construction.
pub fn packetized_gain(users: usize, coverage: usize) -> usize {
    let (k, t) = (users, coverage);
    let w = k - t + 1;
    let n = k / w;
    if mod1_raw(k as i64, w as i64) == (k - t) as i64 {
        2 * n + 1
    } else {
        2 * n
    }
}

/// The `gK x K` construction for the non-divisible cases (including
/// `gamma = 0`, where it degenerates to `g = 1` and every cell gets its own
/// symbol).
///
/// Rows are pairs `(i, j)` with packet `i` in `[1, g]` and subfile `j`. With
/// `d = mod1(j - k, K)` and `w = K - t + 1`, non-star cells are labeled
///
/// - `(d, mod1(k - (i-1)/2 * w, K))` for odd `i`,
/// - `(w - d, mod1(j - i/2 * w, K))` for even `i`.
pub fn build_packetized(params: &SystemParams) -> Result<Pda> {
    let case = params.case();
    if !matches!(case, CaseKind::RemainderMatch | CaseKind::General) {
        return Err(Error::WrongCase {
            construction: "the packet-split construction",
            case,
        });
    }
    let k = params.users() as i64;
    let t = params.coverage() as i64;
    let w = k - t + 1;
    let g = packetized_gain(params.users(), params.coverage()) as i64;
    let mut rows = Vec::with_capacity((g * k) as usize);
    let mut grid = Vec::with_capacity((g * k * k) as usize);
    for i in 1..=g {
        for j in 1..=k {
            rows.push(RowId::Packet {
                packet: i as usize,
                subfile: j as usize,
            });
            for col in 1..=k {
                let d = mod1_raw(j - col, k);
                let cell = if d > k - t {
                    Cell::Star
                } else if i % 2 == 1 {
                    Cell::Entry(Label::Pair(
                        d as u64,
                        mod1_raw(col - (i - 1) / 2 * w, k) as u64,
                    ))
                } else {
                    Cell::Entry(Label::Pair(
                        (w - d) as u64,
                        mod1_raw(j - i / 2 * w, k) as u64,
                    ))
                };
                grid.push(cell);
            }
        }
    }
    let provenance = if params.coverage() == 0 {
        Provenance::Construction2Uncached
    } else {
        Provenance::Construction2
    };
    Pda::new(k as usize, rows, grid, provenance)
}

/// The achieved rate as an exact rational.
pub fn achievable_rate(users: usize, coverage: usize) -> Rational64 {
    let (k, t) = (users, coverage);
    match case_for(k, t) {
        CaseKind::AllCached => Rational64::new(0, 1),
        CaseKind::Divisible => {
            Rational64::new(((k - t) * (k - t + 1)) as i64, (2 * k) as i64)
        }
        CaseKind::RemainderMatch | CaseKind::General => {
            Rational64::new((k - t) as i64, packetized_gain(k, t) as i64)
        }
    }
}

/// The achieved subpacketization: `K` where one row per subfile suffices,
/// `gK` when subfiles split into `g` packets.
pub fn scheme_subpacketization(users: usize, coverage: usize) -> usize {
    let (k, t) = (users, coverage);
    match case_for(k, t) {
        CaseKind::AllCached | CaseKind::Divisible => k,
        CaseKind::RemainderMatch | CaseKind::General => packetized_gain(k, t) * k,
    }
}

/// Builds the scheme for `params`, dispatching on the case.
pub fn build_scheme(params: &SystemParams) -> SchemeResult {
    let k = params.users();
    let t = params.coverage();
    let case = params.case();
    let pda = match case {
        CaseKind::AllCached => all_star(k),
        CaseKind::Divisible => build_direct(params).expect("case checked"),
        CaseKind::RemainderMatch | CaseKind::General => {
            build_packetized(params).expect("case checked")
        }
    };
    let gain = match case {
        CaseKind::AllCached => 0,
        CaseKind::Divisible => 2 * k / (k - t + 1),
        CaseKind::RemainderMatch | CaseKind::General => packetized_gain(k, t),
    };
    SchemeResult {
        pda,
        gain,
        rate: achievable_rate(k, t),
        subpacketization: scheme_subpacketization(k, t),
        case,
    }
}

fn all_star(k: usize) -> Pda {
    let rows = (1..=k).map(RowId::Subfile).collect();
    Pda::new(k, rows, vec![Cell::Star; k * k], Provenance::AllStar).expect("square all-star grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::verify;

    fn params(k: usize, l: usize, gamma: usize) -> SystemParams {
        SystemParams::new(k, l, gamma, k).unwrap()
    }

    #[test]
    fn direct_construction_worked_entries() {
        let pda = build_direct(&params(10, 3, 2)).unwrap();
        assert_eq!(pda.cell(1, 1), Cell::Star);
        assert_eq!(pda.cell(2, 1), Cell::Entry(Label::Pair(1, 1)));
        assert_eq!(pda.cell(4, 1), Cell::Entry(Label::Pair(2, 4)));
    }

    #[test]
    fn direct_construction_example_statistics() {
        let pda = build_direct(&params(10, 3, 2)).unwrap();
        let stats = verify(&pda).unwrap();
        assert_eq!(
            (stats.cols, stats.rows, stats.stars_per_column, stats.symbol_count),
            (10, 10, 6, 10)
        );
        assert!(stats.regular);
        assert_eq!(stats.g_max, 4);
    }

    #[test]
    fn direct_construction_single_track() {
        // K - t = 1: every non-star cell sits on the midpoint track and
        // shares the single label (1,1).
        let pda = build_direct(&params(5, 1, 4)).unwrap();
        let stats = verify(&pda).unwrap();
        assert_eq!(stats.symbol_count, 1);
        assert_eq!(stats.g_max, 5);
        for j in 1..=5 {
            for k in 1..=5 {
                if pda.cell(j, k) != Cell::Star {
                    assert_eq!(pda.cell(j, k), Cell::Entry(Label::Pair(1, 1)));
                }
            }
        }
    }

    #[test]
    fn packetized_construction_worked_entries() {
        let pda = build_packetized(&params(5, 2, 1)).unwrap();
        // Rows are (packet, subfile), packet-major: row 1 = (1,1),
        // row 2 = (1,2), row 7 = (2,2).
        assert_eq!(pda.cell(1, 1), Cell::Star);
        assert_eq!(pda.cell(2, 1), Cell::Entry(Label::Pair(1, 1)));
        assert_eq!(pda.cell(7, 1), Cell::Entry(Label::Pair(3, 3)));
    }

    #[test]
    fn packetized_construction_example_statistics() {
        let pda = build_packetized(&params(5, 2, 1)).unwrap();
        let stats = verify(&pda).unwrap();
        assert_eq!(
            (stats.cols, stats.rows, stats.stars_per_column, stats.symbol_count),
            (5, 10, 4, 15)
        );
        assert!(stats.regular);
        assert_eq!(stats.g_max, 2);
    }

    #[test]
    fn packetized_construction_with_nothing_cached() {
        let pda = build_packetized(&params(7, 1, 0)).unwrap();
        assert_eq!(pda.provenance(), Provenance::Construction2Uncached);
        let stats = verify(&pda).unwrap();
        assert_eq!(stats.rows, 7);
        assert_eq!(stats.stars_per_column, 0);
        assert_eq!(stats.symbol_count, 49);
        assert_eq!(stats.g_max, 1);
    }

    #[test]
    fn packetized_gain_values() {
        assert_eq!(packetized_gain(5, 2), 2);
        assert_eq!(packetized_gain(7, 0), 1);
        assert_eq!(packetized_gain(11, 6), 3);
    }

    #[test]
    fn scheme_closed_forms() {
        let r = build_scheme(&params(10, 3, 2));
        assert_eq!(r.rate, Rational64::new(1, 1));
        assert_eq!(r.subpacketization, 10);
        assert_eq!(r.gain, 4);

        let r = build_scheme(&params(5, 2, 1));
        assert_eq!(r.rate, Rational64::new(3, 2));
        assert_eq!(r.subpacketization, 10);
        assert_eq!(r.gain, 2);

        let r = build_scheme(&params(6, 2, 3));
        assert_eq!(r.case, CaseKind::AllCached);
        assert_eq!(r.rate, Rational64::new(0, 1));
        assert_eq!(r.subpacketization, 6);
        assert!(verify(&r.pda).unwrap().symbol_count == 0);
    }

    #[test]
    fn constructions_reject_wrong_cases() {
        assert!(matches!(
            build_direct(&params(5, 2, 1)),
            Err(Error::WrongCase { .. })
        ));
        assert!(matches!(
            build_packetized(&params(10, 3, 2)),
            Err(Error::WrongCase { .. })
        ));
    }

    #[test]
    fn record_round_trip_on_packetized_array() {
        let pda = build_packetized(&params(5, 2, 1)).unwrap();
        let parsed = Pda::from_record_str(&pda.to_record_string()).unwrap();
        assert_eq!(parsed, pda);
    }

    #[test]
    fn smallest_system_builds() {
        // K = 1, gamma = 0 lands in the divisible case through K - t = 1.
        let r = build_scheme(&params(1, 1, 0));
        assert_eq!(r.case, CaseKind::Divisible);
        let stats = verify(&r.pda).unwrap();
        assert_eq!((stats.rows, stats.stars_per_column, stats.symbol_count), (1, 0, 1));
        assert_eq!(r.rate, Rational64::new(1, 1));
    }
}
