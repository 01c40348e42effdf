//! Cross-module invariants of the constructed schemes, swept over small
//! parameter ranges. The acceptance suite in the CLI crate repeats the
//! heavier sweeps at full scale.

use macc_core::bounds::{multiplicity_feasible, optimal_gain, BoundBranch};
use macc_core::constructions::{build_scheme, packetized_gain};
use macc_core::oracle::naive_pda_check;
use macc_core::pda::{verify, verify_against_placement, Cell};
use macc_core::{CaseKind, SystemParams};

fn all_params(max_users: usize) -> Vec<SystemParams> {
    let mut out = Vec::new();
    for k in 1..=max_users {
        for l in 1..=k {
            for gamma in 0..=(k / l) {
                out.push(SystemParams::new(k, l, gamma, k).unwrap());
            }
        }
    }
    out
}

#[test]
fn constructed_arrays_satisfy_their_claims() {
    for params in all_params(15) {
        let (k, t) = (params.users(), params.coverage());
        let tag = format!("K={k} L={} gamma={}", params.access(), params.cached_per_node());
        let scheme = build_scheme(&params);
        let stats = verify(&scheme.pda)
            .unwrap_or_else(|v| panic!("{tag}: rejected with {} violations: {:?}", v.len(), v[0]));

        // Shape and regularity of the constructed family.
        assert!(stats.regular, "{tag}: not regular");
        match scheme.case {
            CaseKind::AllCached => {
                assert_eq!((stats.rows, stats.stars_per_column, stats.symbol_count), (k, k, 0));
            }
            CaseKind::Divisible => {
                let expected_s = (k - t) * (k - t + 1) / 2;
                assert_eq!(
                    (stats.rows, stats.stars_per_column, stats.symbol_count),
                    (k, t, expected_s),
                    "{tag}"
                );
                assert_eq!(stats.g_max, 2 * k / (k - t + 1), "{tag}");
            }
            CaseKind::RemainderMatch | CaseKind::General => {
                let g = packetized_gain(k, t);
                assert_eq!(
                    (stats.rows, stats.stars_per_column, stats.symbol_count),
                    (g * k, g * t, k * (k - t)),
                    "{tag}"
                );
                assert_eq!(stats.g_max, g, "{tag}");
            }
        }

        // Closed forms agree with what the verifier measured.
        assert_eq!(stats.rate, scheme.rate, "{tag}");
        assert_eq!(stats.rows, scheme.subpacketization, "{tag}");
        if scheme.case != CaseKind::AllCached {
            assert_eq!(stats.g_max, scheme.gain, "{tag}");
        }

        // Cell bookkeeping: F*K = Z*K + sum of multiplicities.
        let entries: usize = stats.multiplicities.iter().sum();
        assert_eq!(stats.rows * k, stats.stars_per_column * k + entries, "{tag}");

        // Star pattern matches the placement, and the unoptimized checker
        // agrees with the grouped verifier.
        assert!(verify_against_placement(&scheme.pda, &params).unwrap(), "{tag}");
        assert!(naive_pda_check(&scheme.pda), "{tag}");

        // Every multiplicity satisfies the feasibility inequality.
        for &g in &stats.multiplicities {
            assert!(multiplicity_feasible(k, t, g), "{tag}: g_s = {g}");
        }

        // Achieved gain never exceeds the bound; it meets the bound in the
        // divisible and remainder-match cases and, within the general case,
        // exactly when the even branch fires.
        if t < k {
            let bound = optimal_gain(k, t).unwrap();
            assert!(scheme.gain <= bound.gain, "{tag}: {} > {}", scheme.gain, bound.gain);
            match scheme.case {
                CaseKind::Divisible | CaseKind::RemainderMatch => {
                    assert_eq!(scheme.gain, bound.gain, "{tag}")
                }
                CaseKind::General => {
                    assert_eq!(
                        scheme.gain == bound.gain,
                        bound.branch == BoundBranch::Floor,
                        "{tag}"
                    )
                }
                CaseKind::AllCached => unreachable!(),
            }
        }
    }
}

#[test]
fn subpacketization_stays_below_users_squared() {
    for params in all_params(15) {
        let k = params.users();
        let f = build_scheme(&params).subpacketization;
        if k > 1 {
            assert!(f < k * k, "K={k}: F={f}");
        } else {
            assert_eq!(f, 1);
        }
    }
}

/// Relabeling any single star with any existing symbol must trip the
/// crossing axiom, whatever else it also breaks.
#[test]
fn verifier_flags_every_star_relabeling() {
    let mut targets = all_params(9);
    targets.push(SystemParams::new(10, 3, 2, 10).unwrap());
    targets.push(SystemParams::new(5, 2, 1, 5).unwrap());
    for params in targets {
        let t = params.coverage();
        if t == 0 || t == params.users() {
            continue; // need both stars and symbols
        }
        let pda = build_scheme(&params).pda;
        let mut labels = Vec::new();
        for row in 1..=pda.row_count() {
            for col in 1..=pda.cols() {
                if let Cell::Entry(label) = pda.cell(row, col) {
                    if !labels.contains(&label) {
                        labels.push(label);
                    }
                }
            }
        }
        for row in 1..=pda.row_count() {
            for col in 1..=pda.cols() {
                if pda.cell(row, col) != Cell::Star {
                    continue;
                }
                for &label in &labels {
                    let corrupted = pda.with_cell(row, col, Cell::Entry(label));
                    let violations = verify(&corrupted).expect_err("corruption must be rejected");
                    assert!(
                        violations.iter().any(|v| v.condition() == 3),
                        "no crossing violation for star ({row}, {col}) relabeled {label:?}"
                    );
                }
            }
        }
    }
}
