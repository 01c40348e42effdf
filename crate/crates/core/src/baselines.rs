//! Closed-form rate and subpacketization of prior multi-access schemes, and
//! the comparison-table generator.
//!
//! Inapplicability is data, not an error: every row carries a reason string
//! so CSV consumers can filter instead of crash. Two deliberate omissions:
//! the SPE scheme is tabulated by subpacketization only (its rate is known
//! only through a gain bound), and the RK2021 scheme is left out entirely
//! (its rate has no closed form; it is bounded by RK1's and CW's, with
//! RK1's subpacketization).
//!
//! Subpacketizations involve binomials and grow fast; they are computed in
//! arbitrary precision. Rates stay small and use exact 64-bit rationals.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::constructions::{achievable_rate, scheme_subpacketization};
use crate::params::SystemParams;
use crate::{Error, Result};

fn check_domain(users: usize, access: usize, cached: usize) -> Result<()> {
    SystemParams::new(users, access, cached, 1).map(|_| ())
}

fn binom(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(r))
}

/// Rate of the HKD scheme: `(K - L*gamma)/(1 + gamma)` when `L | K`, else
/// `(K - gamma)/(1 + gamma)`. Its subpacketization is known only
/// asymptotically and is not tabulated.
pub fn rate_hkd(users: usize, access: usize, cached: usize) -> Result<Rational64> {
    check_domain(users, access, cached)?;
    let (k, l, g) = (users as i64, access as i64, cached as i64);
    Ok(if k % l == 0 {
        Rational64::new(k - l * g, 1 + g)
    } else {
        Rational64::new(k - g, 1 + g)
    })
}

/// Rate of the RK1 scheme: `(K - gamma*L)^2 / K`.
pub fn rate_rk1(users: usize, access: usize, cached: usize) -> Result<Rational64> {
    check_domain(users, access, cached)?;
    let (k, l, g) = (users as i64, access as i64, cached as i64);
    Ok(Rational64::new((k - g * l) * (k - g * l), k))
}

/// Subpacketization of the RK1 scheme:
/// `(K/gamma) * C(K - gamma(L-1) - 1, gamma - 1)`, defined as 1 for
/// `gamma = 0`.
pub fn subpacketization_rk1(users: usize, access: usize, cached: usize) -> Result<BigUint> {
    check_domain(users, access, cached)?;
    if cached == 0 {
        return Ok(BigUint::one());
    }
    let product = BigUint::from(users) * binom(users - cached * (access - 1) - 1, cached - 1);
    let gamma = BigUint::from(cached);
    assert!(
        (&product % &gamma).is_zero(),
        "K * C(K - gamma(L-1) - 1, gamma - 1) is not divisible by gamma"
    );
    Ok(product / gamma)
}

/// Rate of the CW scheme: `(K - gamma*L)/(gamma + 1)`.
pub fn rate_cw(users: usize, access: usize, cached: usize) -> Result<Rational64> {
    check_domain(users, access, cached)?;
    let (k, l, g) = (users as i64, access as i64, cached as i64);
    Ok(Rational64::new(k - g * l, g + 1))
}

/// Subpacketization of the CW scheme: `K * C(K - gamma(L-1), gamma)`.
pub fn subpacketization_cw(users: usize, access: usize, cached: usize) -> Result<BigUint> {
    check_domain(users, access, cached)?;
    Ok(BigUint::from(users) * binom(users - cached * (access - 1), cached))
}

/// Why SR2 does not apply at these parameters, if it does not.
pub fn sr2_inapplicability(users: usize, access: usize, cached: usize) -> Option<String> {
    if cached == 0 {
        return Some("requires gamma >= 1".into());
    }
    if !users.is_multiple_of(cached) {
        return Some(format!("gamma = {cached} does not divide K = {users}"));
    }
    let span = users - cached * access + cached;
    if !users.is_multiple_of(span) {
        return Some(format!("K - gamma L + gamma = {span} does not divide K = {users}"));
    }
    None
}

/// Rate of the SR2 scheme where applicable:
/// `(K - gamma L)(K - gamma L + gamma) / 2K`, with subpacketization `K`.
pub fn rate_sr2(users: usize, access: usize, cached: usize) -> Result<Option<Rational64>> {
    check_domain(users, access, cached)?;
    if sr2_inapplicability(users, access, cached).is_some() {
        return Ok(None);
    }
    let (k, l, g) = (users as i64, access as i64, cached as i64);
    Ok(Some(Rational64::new((k - g * l) * (k - g * l + g), 2 * k)))
}

/// Rate of the MR scheme (gamma = 1 only):
/// `ceil(K(K-L) / (2 + floor(L/(K-L+1)) + floor((L-1)/(K-L+1)))) / K`,
/// with subpacketization `K`.
pub fn rate_mr(users: usize, access: usize) -> Result<Rational64> {
    check_domain(users, access, 1)?;
    let (k, l) = (users as i64, access as i64);
    let window = k - l + 1;
    let divisor = 2 + l / window + (l - 1) / window;
    let numerator = k * (k - l);
    let ceiling = (numerator + divisor - 1) / divisor;
    Ok(Rational64::new(ceiling, k))
}

/// Subpacketization of the SPE scheme (gamma = 2 only):
/// `K(K - 2L + 2)/4` when that is an integer, `None` otherwise. Its rate is
/// known only through a gain bound and is deliberately not computed.
pub fn subpacketization_spe(users: usize, access: usize) -> Result<Option<u64>> {
    check_domain(users, access, 2)?;
    let product = (users as u64) * (users as u64 - 2 * access as u64 + 2);
    Ok(product.is_multiple_of(4).then_some(product / 4))
}

/// Scheme tags, ordered by display name for stable CSV output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scheme {
    Cw,
    Hkd,
    Mr,
    New,
    Rk1,
    Spe,
    Sr2,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Cw => "CW",
            Scheme::Hkd => "HKD",
            Scheme::Mr => "MR",
            Scheme::New => "NEW",
            Scheme::Rk1 => "RK1",
            Scheme::Spe => "SPE-subpacketization-only",
            Scheme::Sr2 => "SR2",
        }
    }

    const ALL: [Scheme; 7] = [
        Scheme::Cw,
        Scheme::Hkd,
        Scheme::Mr,
        Scheme::New,
        Scheme::Rk1,
        Scheme::Spe,
        Scheme::Sr2,
    ];
}

/// One scheme's figures at one `gamma`. Missing entries carry a reason.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub gamma: usize,
    pub scheme: Scheme,
    pub applicable: bool,
    pub rate: Option<Rational64>,
    pub subpacketization: Option<BigUint>,
    /// `(K - t)/R`, tabulated for the linear-subpacketization schemes.
    pub gain: Option<Rational64>,
    pub reason: Option<String>,
}

fn gain_from_rate(users: usize, coverage: usize, rate: Rational64) -> Option<Rational64> {
    if rate.is_zero() {
        None
    } else {
        Some(Rational64::new((users - coverage) as i64, 1) / rate)
    }
}

fn row(
    gamma: usize,
    scheme: Scheme,
    rate: Option<Rational64>,
    subpacketization: Option<BigUint>,
    gain: Option<Rational64>,
    reason: Option<String>,
) -> ComparisonRow {
    ComparisonRow {
        gamma,
        scheme,
        applicable: rate.is_some() || subpacketization.is_some(),
        rate,
        subpacketization,
        gain,
        reason,
    }
}

/// Builds the comparison table for `gamma` in `[gamma_lo, gamma_hi]`,
/// sorted by `gamma` then scheme name.
pub fn compare_table(
    users: usize,
    access: usize,
    gamma_lo: usize,
    gamma_hi: usize,
) -> Result<Vec<ComparisonRow>> {
    check_domain(users, access, 0)?;
    let max_gamma = users / access;
    if gamma_lo > gamma_hi || gamma_hi > max_gamma {
        return Err(Error::ParamDomain(format!(
            "gamma range [{gamma_lo}, {gamma_hi}] violates 0 <= lo <= hi <= floor(K/L) = {max_gamma}"
        )));
    }

    let mut rows = Vec::new();
    for gamma in gamma_lo..=gamma_hi {
        let coverage = gamma * access;
        for scheme in Scheme::ALL {
            let entry = match scheme {
                Scheme::Cw => row(
                    gamma,
                    scheme,
                    Some(rate_cw(users, access, gamma)?),
                    Some(subpacketization_cw(users, access, gamma)?),
                    None,
                    None,
                ),
                Scheme::Hkd => row(
                    gamma,
                    scheme,
                    Some(rate_hkd(users, access, gamma)?),
                    None,
                    None,
                    Some("subpacketization known only asymptotically".into()),
                ),
                Scheme::Mr => {
                    if gamma == 1 {
                        let rate = rate_mr(users, access)?;
                        let gain = gain_from_rate(users, coverage, rate);
                        row(gamma, scheme, Some(rate), Some(BigUint::from(users)), gain, None)
                    } else {
                        row(gamma, scheme, None, None, None, Some("requires gamma = 1".into()))
                    }
                }
                Scheme::New => {
                    let rate = achievable_rate(users, coverage);
                    let gain = gain_from_rate(users, coverage, rate);
                    row(
                        gamma,
                        scheme,
                        Some(rate),
                        Some(BigUint::from(scheme_subpacketization(users, coverage))),
                        gain,
                        None,
                    )
                }
                Scheme::Rk1 => row(
                    gamma,
                    scheme,
                    Some(rate_rk1(users, access, gamma)?),
                    Some(subpacketization_rk1(users, access, gamma)?),
                    None,
                    None,
                ),
                Scheme::Spe => {
                    if gamma != 2 {
                        row(gamma, scheme, None, None, None, Some("requires gamma = 2".into()))
                    } else {
                        match subpacketization_spe(users, access)? {
                            Some(f) => row(
                                gamma,
                                scheme,
                                None,
                                Some(BigUint::from(f)),
                                None,
                                Some("rate has no closed form".into()),
                            ),
                            None => row(
                                gamma,
                                scheme,
                                None,
                                None,
                                None,
                                Some("subpacketization formula is not an integer".into()),
                            ),
                        }
                    }
                }
                Scheme::Sr2 => match sr2_inapplicability(users, access, gamma) {
                    Some(reason) => row(gamma, scheme, None, None, None, Some(reason)),
                    None => {
                        let rate = rate_sr2(users, access, gamma)?.expect("applicability checked");
                        let gain = gain_from_rate(users, coverage, rate);
                        row(gamma, scheme, Some(rate), Some(BigUint::from(users)), gain, None)
                    }
                },
            };
            rows.push(entry);
        }
    }
    Ok(rows)
}

/// The pinned CSV header.
pub const CSV_HEADER: &str =
    "gamma,scheme,applicable,rate_num,rate_den,subpacketization,gain_num,gain_den,reason";

/// Renders rows as CSV with exact rationals split into numerator and
/// denominator columns. Empty fields mean "not available".
pub fn to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let (rate_num, rate_den) = match r.rate {
            Some(rate) => (rate.numer().to_string(), rate.denom().to_string()),
            None => (String::new(), String::new()),
        };
        let sub = r
            .subpacketization
            .as_ref()
            .map(|f| f.to_string())
            .unwrap_or_default();
        let (gain_num, gain_den) = match r.gain {
            Some(gain) => (gain.numer().to_string(), gain.denom().to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.gamma,
            r.scheme.name(),
            r.applicable,
            rate_num,
            rate_den,
            sub,
            gain_num,
            gain_den,
            r.reason.as_deref().unwrap_or("")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn hkd_rate() {
        assert_eq!(rate_hkd(10, 5, 1).unwrap(), rat(5, 2));
        assert_eq!(rate_hkd(36, 5, 3).unwrap(), rat(33, 4));
        assert_eq!(rate_hkd(12, 4, 0).unwrap(), rat(12, 1));
    }

    #[test]
    fn rk1_rate_and_subpacketization() {
        assert_eq!(rate_rk1(10, 3, 2).unwrap(), rat(8, 5));
        assert_eq!(subpacketization_rk1(10, 3, 2).unwrap(), BigUint::from(25u32));
        assert_eq!(rate_rk1(6, 3, 2).unwrap(), rat(0, 1));
        assert_eq!(subpacketization_rk1(9, 2, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn rk1_subpacketization_is_integral_across_the_sweep() {
        for k in 1..=40 {
            for l in 1..=k {
                for gamma in 0..=(k / l) {
                    // The assert inside would fire on a non-integer.
                    let _ = subpacketization_rk1(k, l, gamma).unwrap();
                }
            }
        }
    }

    #[test]
    fn cw_rate_and_subpacketization() {
        assert_eq!(rate_cw(10, 3, 2).unwrap(), rat(4, 3));
        assert_eq!(subpacketization_cw(10, 3, 2).unwrap(), BigUint::from(150u32));
        assert_eq!(rate_cw(10, 2, 0).unwrap(), rat(10, 1));
        assert_eq!(subpacketization_cw(10, 2, 0).unwrap(), BigUint::from(10u32));
        assert_eq!(rate_cw(36, 5, 3).unwrap(), rat(21, 4));
    }

    #[test]
    fn sr2_applicability_and_rate() {
        assert!(sr2_inapplicability(10, 3, 2).is_some()); // 6 does not divide 10
        assert_eq!(rate_sr2(10, 3, 2).unwrap(), None);
        assert_eq!(rate_sr2(12, 4, 2).unwrap(), Some(rat(1, 1)));
        // Everything cached with gamma | K: rate zero.
        assert_eq!(rate_sr2(4, 2, 2).unwrap(), Some(rat(0, 1)));
    }

    #[test]
    fn mr_rate() {
        assert_eq!(rate_mr(5, 2).unwrap(), rat(8, 5));
        assert_eq!(rate_mr(45, 7).unwrap(), rat(19, 1));
        assert_eq!(rate_mr(6, 6).unwrap(), rat(0, 1));
    }

    #[test]
    fn spe_subpacketization() {
        assert_eq!(subpacketization_spe(10, 3).unwrap(), Some(15));
        assert_eq!(subpacketization_spe(8, 3).unwrap(), Some(8));
        assert_eq!(subpacketization_spe(7, 3).unwrap(), None); // 7*3 = 21
    }

    #[test]
    fn table_covers_every_scheme_per_gamma() {
        let rows = compare_table(36, 5, 0, 7).unwrap();
        assert_eq!(rows.len(), 8 * 7);
        // Sorted by gamma then name.
        let mut sorted = rows.clone();
        sorted.sort_by_key(|a| (a.gamma, a.scheme));
        assert!(rows
            .iter()
            .zip(&sorted)
            .all(|(a, b)| (a.gamma, a.scheme) == (b.gamma, b.scheme)));

        // Worked spot checks at gamma = 3 and gamma = 7.
        let new3 = rows
            .iter()
            .find(|r| r.gamma == 3 && r.scheme == Scheme::New)
            .unwrap();
        assert_eq!(new3.rate, Some(rat(21, 2)));
        assert_eq!(new3.subpacketization, Some(BigUint::from(72u32)));
        let new7 = rows
            .iter()
            .find(|r| r.gamma == 7 && r.scheme == Scheme::New)
            .unwrap();
        assert_eq!(new7.rate, Some(rat(1, 36)));
        assert_eq!(new7.subpacketization, Some(BigUint::from(36u32)));
    }

    #[test]
    fn inapplicable_rows_carry_reasons() {
        let rows = compare_table(10, 3, 2, 2).unwrap();
        for r in &rows {
            if !r.applicable {
                assert!(r.reason.is_some(), "{:?} lacks a reason", r.scheme);
                assert!(r.rate.is_none() && r.subpacketization.is_none());
            }
        }
        let sr2 = rows.iter().find(|r| r.scheme == Scheme::Sr2).unwrap();
        assert!(!sr2.applicable);
    }

    #[test]
    fn csv_layout() {
        let rows = compare_table(10, 3, 0, 0).unwrap();
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        // gamma = 0: every applicable scheme transmits the whole library.
        let new_line = csv
            .lines()
            .find(|l| l.starts_with("0,NEW,"))
            .unwrap();
        assert_eq!(new_line, "0,NEW,true,10,1,10,1,1,");
        // Reasons stay comma-free so the CSV needs no quoting.
        for r in &rows {
            if let Some(reason) = &r.reason {
                assert!(!reason.contains(','));
            }
        }
    }
}
