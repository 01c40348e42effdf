//! Brute-force certification machinery: the exact maximum number of times a
//! single symbol can repeat on the consecutive cyclic star pattern, plus an
//! unoptimized re-implementation of the axiom check for differential
//! testing.
//!
//! Cells carrying one symbol must occupy distinct rows and columns with
//! stars at every crossing position, which on the `K x K` star pattern is a
//! maximum-clique problem over the non-star cells. Packet-split arrays
//! repeat each subfile's star pattern row-for-row, and one symbol can never
//! sit on two rows with identical star patterns (the crossing condition
//! would contradict the cells being non-star), so the `K`-row pattern bounds
//! every array under this placement.
//!
//! The star pattern is invariant under the simultaneous cyclic shift of rows
//! and columns, so the search anchors one cell in column 1 and loses
//! nothing; that cuts the space by roughly a factor of `K`.

use std::collections::HashSet;

use crate::modmath::{cyclic_range, mod1_raw};
use crate::pda::{Cell, Label, Pda};
use crate::{Error, Result};

/// Default cap on `K` for [`max_single_symbol_gain`]; the search is
/// exponential in principle and the cap turns runaway instances into an
/// error instead of a hang.
pub const DEFAULT_SEARCH_LIMIT: usize = 16;

/// Outcome of the exhaustive gain search.
#[derive(Clone, Debug)]
pub struct GainSearchResult {
    pub users: usize,
    pub coverage: usize,
    /// The exact maximum multiplicity.
    pub g_max: usize,
    /// Cells of one maximum set, as 1-based `(row, column)` pairs.
    pub witness: Vec<(usize, usize)>,
    /// Search-effort counter (recursion nodes).
    pub nodes_explored: u64,
}

struct Search {
    users: i64,
    coverage: i64,
    nodes: u64,
    best: Vec<(usize, usize)>,
    chosen: Vec<(usize, usize)>,
}

impl Search {
    fn non_star(&self, row: usize, col: usize) -> bool {
        mod1_raw(row as i64 - col as i64, self.users) <= self.users - self.coverage
    }

    fn star(&self, row: usize, col: usize) -> bool {
        !self.non_star(row, col)
    }

    fn compatible(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.star(a.0, b.1) && self.star(b.0, a.1)
    }

    fn extend(&mut self, col: usize) {
        self.nodes += 1;
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let k = self.users as usize;
        if col > k || self.chosen.len() + (k - col + 1) <= self.best.len() {
            return;
        }
        for row in 1..=k {
            if self.non_star(row, col)
                && self.chosen.iter().all(|&c| self.compatible(c, (row, col)))
            {
                self.chosen.push((row, col));
                self.extend(col + 1);
                self.chosen.pop();
            }
        }
        self.extend(col + 1);
    }
}

/// Exhaustively computes the maximum single-symbol multiplicity on the
/// `(K, t)` star pattern.
///
/// Requires `t < K` (with `t = K` there are no non-star cells to label) and
/// `K` at most `limit` (default [`DEFAULT_SEARCH_LIMIT`]).
pub fn max_single_symbol_gain(
    users: usize,
    coverage: usize,
    limit: Option<usize>,
) -> Result<GainSearchResult> {
    if users < 1 {
        return Err(Error::ParamDomain(format!("K = {users} violates K >= 1")));
    }
    if coverage >= users {
        return Err(Error::ParamDomain(format!(
            "t = {coverage} violates t < K = {users}"
        )));
    }
    let limit = limit.unwrap_or(DEFAULT_SEARCH_LIMIT);
    if users > limit {
        return Err(Error::SearchLimitExceeded { users, limit });
    }

    let mut search = Search {
        users: users as i64,
        coverage: coverage as i64,
        nodes: 0,
        best: Vec::new(),
        chosen: Vec::new(),
    };
    // Anchor in column 1; any candidate set shifts onto one that meets it.
    for row in 1..=users {
        if search.non_star(row, 1) {
            search.chosen.push((row, 1));
            search.extend(2);
            search.chosen.pop();
        }
    }
    debug_assert!(witness_is_valid(users, coverage, &search.best));
    Ok(GainSearchResult {
        users,
        coverage,
        g_max: search.best.len(),
        witness: search.best,
        nodes_explored: search.nodes,
    })
}

/// Direct pairwise re-check of a witness: all cells non-star, pairwise in
/// distinct rows and columns, stars at both crossings.
pub fn witness_is_valid(users: usize, coverage: usize, cells: &[(usize, usize)]) -> bool {
    let (k, t) = (users as i64, coverage as i64);
    let star = |row: usize, col: usize| mod1_raw(row as i64 - col as i64, k) > k - t;
    for (i, &(r1, c1)) in cells.iter().enumerate() {
        if star(r1, c1) {
            return false;
        }
        for &(r2, c2) in &cells[i + 1..] {
            if r1 == r2 || c1 == c2 || !star(r1, c2) || !star(r2, c1) {
                return false;
            }
        }
    }
    true
}

/// The same condition in interval form: each cell's column lies in every
/// other row's service window `[j, j + t - 1]` around the ring.
pub fn witness_in_intersection_form(
    users: usize,
    coverage: usize,
    cells: &[(usize, usize)],
) -> bool {
    let (k, t) = (users as i64, coverage as i64);
    cells.iter().enumerate().all(|(u, &(_, col))| {
        cells
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != u)
            .all(|(_, &(row, _))| {
                cyclic_range(row as i64, row as i64 + t - 1, k)
                    .expect("window is well formed")
                    .contains(&(col as i64))
            })
    })
}

/// Re-checks the PDA axioms with the direct quadratic pass over all entry
/// pairs and no grouping. Differential partner for [`crate::pda::verify`];
/// the two must agree on every input.
pub fn naive_pda_check(pda: &Pda) -> bool {
    let f = pda.row_count();
    let k = pda.cols();

    let reference = (1..=f).filter(|&r| pda.cell(r, 1) == Cell::Star).count();
    for col in 2..=k {
        if (1..=f).filter(|&r| pda.cell(r, col) == Cell::Star).count() != reference {
            return false;
        }
    }

    let mut entries: Vec<(usize, usize, Label)> = Vec::new();
    for row in 1..=f {
        for col in 1..=k {
            if let Cell::Entry(label) = pda.cell(row, col) {
                entries.push((row, col, label));
            }
        }
    }

    let all_ints = entries.iter().all(|(_, _, l)| matches!(l, Label::Int(_)));
    if all_ints && !entries.is_empty() {
        let mut present = HashSet::new();
        let mut largest = 0u64;
        for (_, _, label) in &entries {
            let Label::Int(v) = label else { unreachable!() };
            if *v == 0 {
                return false;
            }
            present.insert(*v);
            largest = largest.max(*v);
        }
        if (1..=largest).any(|s| !present.contains(&s)) {
            return false;
        }
    }

    for (i, &(r1, c1, l1)) in entries.iter().enumerate() {
        for &(r2, c2, l2) in &entries[i + 1..] {
            if l1 != l2 {
                continue;
            }
            if r1 == r2 || c1 == c2 {
                return false;
            }
            if pda.cell(r1, c2) != Cell::Star || pda.cell(r2, c1) != Cell::Star {
                return false;
            }
        }
    }
    true
}
