//! Byte-level realization of a scheme: split files into packets, fill the
//! node caches, serve a demand vector with one XOR multicast per symbol, and
//! decode at every user.
//!
//! The server always sends all `S` messages, one per symbol, whatever the
//! demand looks like; the schemes are built for the worst case and no
//! redundancy elimination is attempted. Transmitted bytes over file size is
//! therefore exactly `S/F`.

use num_rational::Rational64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::modmath::mod1_raw;
use crate::params::SystemParams;
use crate::pda::{Cell, Pda};
use crate::placement::node_cache_contents;
use crate::{Error, Result};

/// The library: `files` files of `rows * subpacket_len` bytes each, the
/// packet at row `r` of file `n` addressable directly.
#[derive(Clone, Debug)]
pub struct FileStore {
    files: usize,
    rows: usize,
    subpacket_len: usize,
    data: Vec<u8>,
}

impl FileStore {
    /// Deterministic pseudo-random contents from `seed`.
    pub fn random(files: usize, rows: usize, subpacket_len: usize, seed: u64) -> FileStore {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut data = vec![0u8; files * rows * subpacket_len];
        rng.fill_bytes(&mut data);
        FileStore {
            files,
            rows,
            subpacket_len,
            data,
        }
    }

    pub fn files(&self) -> usize {
        self.files
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn subpacket_len(&self) -> usize {
        self.subpacket_len
    }

    pub fn file_size(&self) -> usize {
        self.rows * self.subpacket_len
    }

    /// The packet at `row` of `file`, both 1-based.
    pub fn subpacket(&self, file: usize, row: usize) -> &[u8] {
        let start = ((file - 1) * self.rows + (row - 1)) * self.subpacket_len;
        &self.data[start..start + self.subpacket_len]
    }

    /// The whole of `file`, packets concatenated in row order.
    pub fn file_bytes(&self, file: usize) -> &[u8] {
        let start = (file - 1) * self.rows * self.subpacket_len;
        &self.data[start..start + self.rows * self.subpacket_len]
    }
}

/// Which packet rows each node stores. Contents are file-independent: a node
/// caching subfile `j` holds row `r` of every file whenever row `r` belongs
/// to subfile `j`.
#[derive(Clone, Debug)]
pub struct NodeCaches {
    rows_per_node: Vec<Vec<usize>>,
}

impl NodeCaches {
    /// Rows stored at `node` (1-based), ascending.
    pub fn rows_of(&self, node: usize) -> &[usize] {
        &self.rows_per_node[node - 1]
    }

    /// Bytes held at `node` for the given library.
    pub fn bytes_at_node(&self, node: usize, store: &FileStore) -> usize {
        self.rows_of(node).len() * store.files() * store.subpacket_len()
    }
}

/// Fills the node caches for `pda` under the consecutive cyclic placement.
pub fn place(params: &SystemParams, pda: &Pda, store: &FileStore) -> Result<NodeCaches> {
    let k = params.users();
    if pda.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "array has {} columns, system has K = {k}",
            pda.cols()
        )));
    }
    if store.rows() != pda.row_count() {
        return Err(Error::DimensionMismatch(format!(
            "library is split into {} packets, array has {} rows",
            store.rows(),
            pda.row_count()
        )));
    }
    let mut rows_per_node = Vec::with_capacity(k);
    for node in 1..=k {
        let mut cached = vec![false; k + 1];
        for subfile in node_cache_contents(params, node)? {
            cached[subfile] = true;
        }
        let rows: Vec<usize> = (1..=pda.row_count())
            .filter(|&r| {
                let subfile = pda.row_id(r).subfile();
                subfile <= k && cached[subfile]
            })
            .collect();
        rows_per_node.push(rows);
    }
    Ok(NodeCaches { rows_per_node })
}

/// One XOR multicast.
#[derive(Clone, Debug)]
pub struct Message {
    /// Canonical symbol id in `[1, S]`.
    pub symbol: usize,
    pub payload: Vec<u8>,
    /// `(user, row)` pairs this message serves, in row-major cell order.
    pub serves: Vec<(usize, usize)>,
}

/// The full delivery: one message per symbol, in canonical symbol order.
#[derive(Clone, Debug)]
pub struct DeliveryTranscript {
    pub messages: Vec<Message>,
    pub subpacket_len: usize,
    /// F, for byte accounting.
    pub rows: usize,
}

impl DeliveryTranscript {
    pub fn total_bytes(&self) -> usize {
        self.messages.len() * self.subpacket_len
    }

    /// Transmitted bytes over file size, exact: `S/F`.
    pub fn rate(&self) -> Rational64 {
        Rational64::new(self.messages.len() as i64, self.rows as i64)
    }

    /// Structured text dump: one line per message, then totals.
    pub fn dump_string(&self) -> String {
        let mut out = String::new();
        for message in &self.messages {
            out.push_str(&format!(
                "message {}: {} bytes, serves",
                message.symbol,
                message.payload.len()
            ));
            for (user, row) in &message.serves {
                out.push_str(&format!(" (user {user}, row {row})"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "total: {} messages, {} bytes, rate {}\n",
            self.messages.len(),
            self.total_bytes(),
            self.rate()
        ));
        out
    }
}

fn xor_into(dst: &mut [u8], src: &[u8]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn check_demand(params: &SystemParams, store: &FileStore, demand: &[usize]) -> Result<()> {
    if demand.len() != params.users() {
        return Err(Error::DimensionMismatch(format!(
            "demand vector has {} entries, system has K = {}",
            demand.len(),
            params.users()
        )));
    }
    for (user, &file) in demand.iter().enumerate() {
        if file < 1 || file > store.files() {
            return Err(Error::DemandOutOfRange {
                user: user + 1,
                file,
                files: store.files(),
            });
        }
    }
    Ok(())
}

/// Serves `demand`: for each symbol `s`, XORs the demanded packets of all
/// cells labeled `s` into one message.
pub fn deliver(
    params: &SystemParams,
    pda: &Pda,
    store: &FileStore,
    demand: &[usize],
) -> Result<DeliveryTranscript> {
    check_demand(params, store, demand)?;
    if store.rows() != pda.row_count() {
        return Err(Error::DimensionMismatch(format!(
            "library is split into {} packets, array has {} rows",
            store.rows(),
            pda.row_count()
        )));
    }
    let layout = pda.symbol_layout();
    let mut messages = Vec::with_capacity(layout.symbol_count());
    for symbol in 1..=layout.symbol_count() {
        let mut payload = vec![0u8; store.subpacket_len()];
        let mut serves = Vec::new();
        for &(row, col) in layout.cells_of(symbol) {
            xor_into(&mut payload, store.subpacket(demand[col - 1], row));
            serves.push((col, row));
        }
        messages.push(Message {
            symbol,
            payload,
            serves,
        });
    }
    Ok(DeliveryTranscript {
        messages,
        subpacket_len: store.subpacket_len(),
        rows: pda.row_count(),
    })
}

/// Reconstructs user `user`'s requested file from its accessible caches and
/// the transcript.
///
/// Starred rows are read from a cache; for labeled rows the user XORs the
/// symbol's message with every other contributing packet, all of which must
/// be accessible. A failure here means the array was not a valid PDA for
/// this placement and names the offending row and message.
pub fn decode(
    params: &SystemParams,
    pda: &Pda,
    caches: &NodeCaches,
    store: &FileStore,
    transcript: &DeliveryTranscript,
    user: usize,
    demand: &[usize],
) -> Result<Vec<u8>> {
    let k = params.users();
    check_demand(params, store, demand)?;
    if !(1..=k).contains(&user) {
        return Err(Error::ParamDomain(format!(
            "user index {user} violates 1 <= k <= K = {k}"
        )));
    }

    let mut accessible = vec![false; pda.row_count() + 1];
    for offset in 0..params.access() {
        let node = mod1_raw((user + offset) as i64, k as i64) as usize;
        for &row in caches.rows_of(node) {
            accessible[row] = true;
        }
    }

    let layout = pda.symbol_layout();
    let want = demand[user - 1];
    let mut out = Vec::with_capacity(store.file_size());
    for row in 1..=pda.row_count() {
        match pda.cell(row, user) {
            Cell::Star => {
                if !accessible[row] {
                    return Err(Error::DecodeFailure {
                        user,
                        row,
                        symbol: 0,
                        detail: "starred packet is not cached at any accessible node".into(),
                    });
                }
                out.extend_from_slice(store.subpacket(want, row));
            }
            Cell::Entry(_) => {
                let symbol = layout.id_at(row, user).expect("entry cell has a symbol");
                let message = transcript
                    .messages
                    .get(symbol - 1)
                    .filter(|m| m.symbol == symbol)
                    .ok_or_else(|| Error::DecodeFailure {
                        user,
                        row,
                        symbol,
                        detail: "message missing from transcript".into(),
                    })?;
                let mut packet = message.payload.clone();
                for &(other_user, other_row) in &message.serves {
                    if (other_user, other_row) == (user, row) {
                        continue;
                    }
                    if !accessible[other_row] {
                        return Err(Error::DecodeFailure {
                            user,
                            row,
                            symbol,
                            detail: format!(
                                "side-information row {other_row} is not accessible"
                            ),
                        });
                    }
                    xor_into(&mut packet, store.subpacket(demand[other_user - 1], other_row));
                }
                out.extend_from_slice(&packet);
            }
        }
    }
    Ok(out)
}

/// Demand presets for batch runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DemandKind {
    /// All-distinct demands when the library allows, round-robin otherwise.
    Worst,
    /// Everyone requests file 1.
    Equal,
    /// Uniform per-user demands from `seed`.
    Random,
}

pub fn demand_preset(params: &SystemParams, kind: DemandKind, seed: u64) -> Vec<usize> {
    let k = params.users();
    let n = params.files();
    match kind {
        DemandKind::Worst => {
            if n >= k {
                (1..=k).collect()
            } else {
                (1..=k)
                    .map(|u| mod1_raw(u as i64, n as i64) as usize)
                    .collect()
            }
        }
        DemandKind::Equal => vec![1; k],
        DemandKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k).map(|_| rng.gen_range(1..=n)).collect()
        }
    }
}
