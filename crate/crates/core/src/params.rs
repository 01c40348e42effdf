//! System parameters and the case split that selects a construction.

use crate::modmath::mod1_raw;
use crate::{Error, Result};

/// Validated parameters of a multi-access caching system.
///
/// `users` is the number of users (and of cache nodes), `access` the number
/// of consecutive nodes each user reads, `cached_per_node` the number of
/// subfiles of each file a node stores (so a node holds a fraction
/// `cached_per_node / users` of the library), and `files` the library size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SystemParams {
    users: usize,
    access: usize,
    cached_per_node: usize,
    files: usize,
}

impl SystemParams {
    /// Validates `(K, L, gamma, N)`, naming the violated bound on failure.
    pub fn new(users: usize, access: usize, cached_per_node: usize, files: usize) -> Result<Self> {
        if users < 1 {
            return Err(Error::ParamDomain(format!("K = {users} violates K >= 1")));
        }
        if access < 1 || access > users {
            return Err(Error::ParamDomain(format!(
                "L = {access} violates 1 <= L <= K = {users}"
            )));
        }
        let max_cached = users / access;
        if cached_per_node > max_cached {
            return Err(Error::ParamDomain(format!(
                "gamma = {cached_per_node} violates gamma <= floor(K/L) = {max_cached}"
            )));
        }
        if files < 1 {
            return Err(Error::ParamDomain(format!("N = {files} violates N >= 1")));
        }
        Ok(SystemParams {
            users,
            access,
            cached_per_node,
            files,
        })
    }

    /// K, the number of users and of cache nodes.
    pub fn users(&self) -> usize {
        self.users
    }

    /// L, the number of consecutive nodes each user reads.
    pub fn access(&self) -> usize {
        self.access
    }

    /// gamma, the number of subfiles of each file stored per node.
    pub fn cached_per_node(&self) -> usize {
        self.cached_per_node
    }

    /// N, the number of files in the library.
    pub fn files(&self) -> usize {
        self.files
    }

    /// t = gamma * L, the number of consecutive users able to retrieve each
    /// subfile.
    pub fn coverage(&self) -> usize {
        self.access * self.cached_per_node
    }

    pub fn case(&self) -> CaseKind {
        case_for(self.users, self.coverage())
    }
}

/// The four regimes of `(K, t)`; exactly one holds for any valid parameters.
///
/// `AllCached` (t = K) gets an all-star array. `Divisible`
/// (`(K-t+1) | K` or `K-t = 1`) admits a K x K construction with one row per
/// subfile. `RemainderMatch` (`K mod (K-t+1) = K-t` in the 1-based sense,
/// with `K-t > 1`) and `General` both split each subfile further and differ
/// only in the resulting gain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseKind {
    AllCached,
    Divisible,
    RemainderMatch,
    General,
}

/// Classifies `(K, t)` into its [`CaseKind`]. Requires `t <= K`.
pub fn case_for(users: usize, coverage: usize) -> CaseKind {
    let (k, t) = (users, coverage);
    assert!(t <= k, "coverage t = {t} exceeds K = {k}");
    if t == k {
        return CaseKind::AllCached;
    }
    let q = (k - t + 1) as i64;
    if k % (k - t + 1) == 0 || k - t == 1 {
        CaseKind::Divisible
    } else if mod1_raw(k as i64, q) == (k - t) as i64 {
        CaseKind::RemainderMatch
    } else {
        CaseKind::General
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_worked_parameter_sets() {
        let p = SystemParams::new(10, 3, 2, 10).unwrap();
        assert_eq!(p.coverage(), 6);
        let p = SystemParams::new(5, 2, 1, 5).unwrap();
        assert_eq!(p.coverage(), 2);
    }

    #[test]
    fn rejects_out_of_domain_parameters() {
        assert!(matches!(
            SystemParams::new(10, 3, 4, 10),
            Err(Error::ParamDomain(_))
        ));
        assert!(matches!(
            SystemParams::new(3, 5, 0, 3),
            Err(Error::ParamDomain(_))
        ));
        assert!(matches!(
            SystemParams::new(0, 1, 0, 1),
            Err(Error::ParamDomain(_))
        ));
        assert!(matches!(
            SystemParams::new(4, 2, 1, 0),
            Err(Error::ParamDomain(_))
        ));
    }

    #[test]
    fn classifies_worked_cases() {
        assert_eq!(case_for(10, 6), CaseKind::Divisible); // 5 | 10
        assert_eq!(case_for(5, 2), CaseKind::General); // <5>_4 = 1 != 3
        assert_eq!(case_for(7, 0), CaseKind::RemainderMatch); // <7>_8 = 7
        assert_eq!(case_for(6, 6), CaseKind::AllCached);
        assert_eq!(case_for(11, 6), CaseKind::RemainderMatch); // <11>_6 = 5
        assert_eq!(case_for(7, 6), CaseKind::Divisible); // K - t = 1
    }

    #[test]
    fn classification_is_total_up_to_k_40() {
        for k in 1..=40 {
            for l in 1..=k {
                for gamma in 0..=(k / l) {
                    let p = SystemParams::new(k, l, gamma, 1).unwrap();
                    // One variant applies; the accessor must not panic.
                    let _ = p.case();
                }
            }
        }
    }
}
