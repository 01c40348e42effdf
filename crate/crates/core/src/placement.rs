//! The consecutive cyclic placement: which node stores which subfile, and
//! which user can therefore retrieve it.
//!
//! Every file is split into `K` subfiles. Node `k` stores subfile
//! `mod1(k - i*L + 1, K)` for `i in [1, gamma]`, so subfile `j` sits at the
//! nodes at cyclic offsets `L-1, 2L-1, ..., gamma*L - 1` from `j` and is
//! retrievable by the `t = gamma*L` consecutive users `j, j+1, ..., j+t-1`.
//! Any `L` neighbouring nodes store pairwise disjoint subfile sets, so every
//! user sees `gamma * L` distinct subfiles of each file: the local caching
//! gain is maximal.

use crate::modmath::mod1_raw;
use crate::params::SystemParams;
use crate::{Error, Result};

/// The node placement grid and the user retrieval grid, both `K x K`.
///
/// Rows are subfile indices, columns are node/user indices, all 1-based.
/// The user grid is derived from the node grid through the access pattern
/// and double-checked against the closed-form rule
/// `mod1(j - k, K) > K - t` at build time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementArrays {
    users: usize,
    coverage: usize,
    node: Vec<bool>,
    user: Vec<bool>,
}

impl PlacementArrays {
    pub fn users(&self) -> usize {
        self.users
    }

    /// t = gamma * L.
    pub fn coverage(&self) -> usize {
        self.coverage
    }

    /// True when node `k` stores subfile `j` (1-based).
    pub fn node_has(&self, subfile: usize, node: usize) -> bool {
        self.node[self.idx(subfile, node)]
    }

    /// True when user `k` can retrieve subfile `j` (1-based).
    pub fn user_has(&self, subfile: usize, user: usize) -> bool {
        self.user[self.idx(subfile, user)]
    }

    fn idx(&self, row: usize, col: usize) -> usize {
        assert!(
            (1..=self.users).contains(&row) && (1..=self.users).contains(&col),
            "placement index ({row}, {col}) out of [1, {}]",
            self.users
        );
        (row - 1) * self.users + (col - 1)
    }

    /// The node grid as text: `*` where stored, `.` elsewhere, subfile 1 on
    /// the top row, node 1 in the left column.
    pub fn node_grid_string(&self) -> String {
        render(self.users, |j, k| self.node_has(j, k))
    }

    /// The user grid in the same layout.
    pub fn user_grid_string(&self) -> String {
        render(self.users, |j, k| self.user_has(j, k))
    }
}

fn render(k: usize, starred: impl Fn(usize, usize) -> bool) -> String {
    let mut out = String::with_capacity(k * (2 * k));
    for j in 1..=k {
        for col in 1..=k {
            if col > 1 {
                out.push(' ');
            }
            out.push(if starred(j, col) { '*' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// The subfile indices stored at `node`, sorted ascending.
pub fn node_cache_contents(params: &SystemParams, node: usize) -> Result<Vec<usize>> {
    let k = params.users();
    if !(1..=k).contains(&node) {
        return Err(Error::ParamDomain(format!(
            "node index {node} violates 1 <= k <= K = {k}"
        )));
    }
    let l = params.access() as i64;
    let mut contents: Vec<usize> = (1..=params.cached_per_node() as i64)
        .map(|i| mod1_raw(node as i64 - i * l + 1, k as i64) as usize)
        .collect();
    contents.sort_unstable();
    contents
        .windows(2)
        .for_each(|w| debug_assert_ne!(w[0], w[1], "cache contents must be distinct"));
    Ok(contents)
}

/// Builds both grids and cross-asserts the two derivations of the user grid.
pub fn build_placement_arrays(params: &SystemParams) -> PlacementArrays {
    let k = params.users();
    let t = params.coverage();
    let mut node = vec![false; k * k];
    for col in 1..=k {
        for subfile in node_cache_contents(params, col).expect("node index in range") {
            node[(subfile - 1) * k + (col - 1)] = true;
        }
    }

    // Derivation 1: a user sees the union of its L nodes.
    let mut user = vec![false; k * k];
    for col in 1..=k {
        for offset in 0..params.access() {
            let n = mod1_raw((col + offset) as i64, k as i64) as usize;
            for row in 1..=k {
                if node[(row - 1) * k + (n - 1)] {
                    user[(row - 1) * k + (col - 1)] = true;
                }
            }
        }
    }

    // Derivation 2: the closed-form star rule. The two must agree cell by
    // cell for the construction and delivery machinery to be sound.
    for row in 1..=k {
        for col in 1..=k {
            let starred = mod1_raw(row as i64 - col as i64, k as i64) > (k - t) as i64;
            assert_eq!(
                user[(row - 1) * k + (col - 1)],
                starred,
                "user grid disagrees with the star rule at ({row}, {col})"
            );
        }
    }

    PlacementArrays {
        users: k,
        coverage: t,
        node,
        user,
    }
}

/// True when every window of `L` consecutive nodes stores pairwise disjoint
/// subfile sets, i.e. every user can retrieve `gamma * L` distinct subfiles.
pub fn check_local_gain(params: &SystemParams) -> bool {
    let k = params.users();
    (1..=k).all(|start| {
        let mut seen = vec![false; k + 1];
        let mut total = 0usize;
        for offset in 0..params.access() {
            let node = mod1_raw((start + offset) as i64, k as i64) as usize;
            for subfile in node_cache_contents(params, node).expect("node index in range") {
                if seen[subfile] {
                    return false;
                }
                seen[subfile] = true;
                total += 1;
            }
        }
        total == params.coverage()
    })
}
