//! Shared benchmark inputs.

use macc_core::SystemParams;

/// Parameter points spanning the construction regimes: two divisible cases,
/// a general packet-split case, and a remainder-match case.
pub fn representative_params() -> Vec<(&'static str, SystemParams)> {
    vec![
        ("divisible_10_3_2", SystemParams::new(10, 3, 2, 10).unwrap()),
        ("divisible_36_5_7", SystemParams::new(36, 5, 7, 36).unwrap()),
        ("general_36_5_3", SystemParams::new(36, 5, 3, 36).unwrap()),
        ("remainder_11_2_3", SystemParams::new(11, 2, 3, 11).unwrap()),
    ]
}
