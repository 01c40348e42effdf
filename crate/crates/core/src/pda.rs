//! The placement delivery array: data structure, axiom verifier, symbol
//! canonicalization, and serialization.
//!
//! An `F x K` array over a star symbol and integer labels describes a coded
//! caching scheme: rows are packet indices, columns are users, a star at
//! `(j, k)` means user `k` can retrieve packet `j` from its nodes, and equal
//! labels mark packets that ride the same XOR multicast. The array is valid
//! when
//!
//! 1. every column carries the same number of stars,
//! 2. the labels, canonicalized, are exactly `1..=S` with no gaps, and
//! 3. any two cells with equal labels sit in distinct rows and columns and
//!    have stars at both crossing positions.
//!
//! Condition 3 is what lets every served user peel the other packets out of
//! the multicast. The verifier reports violations as data, with witnesses,
//! rather than as errors.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::modmath::mod1_raw;
use crate::params::SystemParams;
use crate::{Error, Result};

/// A cell label: either a plain integer or the two-component form produced
/// by the constructions (track number, position along the track).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Int(u64),
    Pair(u64, u64),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Pair(a, b) => write!(f, "{a},{b}"),
        }
    }
}

/// One cell of the array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Star,
    Entry(Label),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Star => write!(f, "*"),
            Cell::Entry(label) => write!(f, "{label}"),
        }
    }
}

impl FromStr for Cell {
    type Err = String;

    fn from_str(token: &str) -> std::result::Result<Self, String> {
        if token == "*" {
            return Ok(Cell::Star);
        }
        if let Some((a, b)) = token.split_once(',') {
            let a = a
                .parse::<u64>()
                .map_err(|_| format!("bad label component {a:?}"))?;
            let b = b
                .parse::<u64>()
                .map_err(|_| format!("bad label component {b:?}"))?;
            return Ok(Cell::Entry(Label::Pair(a, b)));
        }
        token
            .parse::<u64>()
            .map(|v| Cell::Entry(Label::Int(v)))
            .map_err(|_| format!("expected `*`, an integer, or `a,b`, got {token:?}"))
    }
}

/// Identifies a row: either a bare subfile index, or a (packet, subfile)
/// pair for arrays that split each subfile into several packets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RowId {
    Subfile(usize),
    Packet { packet: usize, subfile: usize },
}

impl RowId {
    /// The subfile this row belongs to.
    pub fn subfile(&self) -> usize {
        match self {
            RowId::Subfile(j) => *j,
            RowId::Packet { subfile, .. } => *subfile,
        }
    }
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowId::Subfile(j) => write!(f, "{j}"),
            RowId::Packet { packet, subfile } => write!(f, "({packet},{subfile})"),
        }
    }
}

/// How an array came to be; carried through serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Everything cached, no transmissions.
    AllStar,
    /// K x K construction for the divisible case.
    Construction1,
    /// Packet-split construction for the remaining cases.
    Construction2,
    /// Packet-split construction applied with nothing cached (gamma = 0).
    Construction2Uncached,
    /// Parsed from text; origin unknown.
    External,
}

/// An `F x K` placement delivery array candidate.
///
/// Rows and columns are addressed 1-based, matching the rest of the crate.
/// The grid is immutable; [`Pda::with_cell`] clones on write and exists for
/// fault-injection tests and tooling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pda {
    cols: usize,
    rows: Vec<RowId>,
    grid: Vec<Cell>,
    provenance: Provenance,
}

impl Pda {
    pub fn new(cols: usize, rows: Vec<RowId>, grid: Vec<Cell>, provenance: Provenance) -> Result<Self> {
        if cols == 0 || rows.is_empty() {
            return Err(Error::Shape("array must have at least one row and column".into()));
        }
        if grid.len() != cols * rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} cells, expected {} x {}",
                grid.len(),
                rows.len(),
                cols
            )));
        }
        let mut seen = HashSet::with_capacity(rows.len());
        for row in &rows {
            if row.subfile() == 0 {
                return Err(Error::Shape(format!("row id {row} has no valid subfile")));
            }
            if let RowId::Packet { packet: 0, .. } = row {
                return Err(Error::Shape(format!("row id {row} has packet index 0")));
            }
            if !seen.insert(*row) {
                return Err(Error::Shape(format!("duplicate row id {row}")));
            }
        }
        Ok(Pda {
            cols,
            rows,
            grid,
            provenance,
        })
    }

    /// K, the number of columns (users).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// F, the number of rows (packets).
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row_id(&self, row: usize) -> RowId {
        self.rows[row - 1]
    }

    pub fn row_ids(&self) -> &[RowId] {
        &self.rows
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The cell at 1-based `(row, col)`.
    pub fn cell(&self, row: usize, col: usize) -> Cell {
        assert!(
            (1..=self.rows.len()).contains(&row) && (1..=self.cols).contains(&col),
            "cell ({row}, {col}) out of {} x {}",
            self.rows.len(),
            self.cols
        );
        self.grid[(row - 1) * self.cols + (col - 1)]
    }

    /// A copy with one cell replaced.
    pub fn with_cell(&self, row: usize, col: usize, cell: Cell) -> Pda {
        let mut copy = self.clone();
        copy.grid[(row - 1) * self.cols + (col - 1)] = cell;
        copy
    }

    /// Canonical symbol layout: labels numbered `1..=S` in row-major order
    /// of first occurrence, with the cell list of each symbol.
    pub fn symbol_layout(&self) -> SymbolLayout {
        let mut first_seen: HashMap<Label, usize> = HashMap::new();
        let mut ids = vec![None; self.grid.len()];
        let mut cells: Vec<Vec<(usize, usize)>> = Vec::new();
        for row in 1..=self.rows.len() {
            for col in 1..=self.cols {
                if let Cell::Entry(label) = self.grid[(row - 1) * self.cols + (col - 1)] {
                    let next = first_seen.len() + 1;
                    let id = *first_seen.entry(label).or_insert(next);
                    if id == cells.len() + 1 {
                        cells.push(Vec::new());
                    }
                    cells[id - 1].push((row, col));
                    ids[(row - 1) * self.cols + (col - 1)] = Some(id);
                }
            }
        }
        SymbolLayout { cols: self.cols, ids, cells }
    }

    /// A copy with every label replaced by its canonical integer.
    pub fn canonicalize_symbols(&self) -> Pda {
        let layout = self.symbol_layout();
        let grid = self
            .grid
            .iter()
            .enumerate()
            .map(|(i, cell)| match cell {
                Cell::Star => Cell::Star,
                Cell::Entry(_) => {
                    Cell::Entry(Label::Int(layout.ids[i].expect("entry cell has an id") as u64))
                }
            })
            .collect();
        Pda {
            cols: self.cols,
            rows: self.rows.clone(),
            grid,
            provenance: self.provenance,
        }
    }

    /// Human grid form: one row per line, cells space-separated.
    pub fn to_grid_string(&self) -> String {
        let mut out = String::new();
        for row in 1..=self.rows.len() {
            for col in 1..=self.cols {
                if col > 1 {
                    out.push(' ');
                }
                out.push_str(&self.cell(row, col).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the grid form. Rows get bare subfile ids `1..=F` and
    /// provenance [`Provenance::External`].
    pub fn from_grid_str(text: &str) -> Result<Pda> {
        let mut grid = Vec::new();
        let mut cols = 0usize;
        let mut row_count = 0usize;
        for (line_no, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            row_count += 1;
            let mut row_cells = 0usize;
            for (cell_no, token) in line.split_whitespace().enumerate() {
                let cell = Cell::from_str(token).map_err(|message| Error::GridParse {
                    line: line_no + 1,
                    column: cell_no + 1,
                    message,
                })?;
                grid.push(cell);
                row_cells += 1;
            }
            if cols == 0 {
                cols = row_cells;
            } else if row_cells != cols {
                return Err(Error::GridParse {
                    line: line_no + 1,
                    column: row_cells,
                    message: format!("expected {cols} cells, found {row_cells}"),
                });
            }
        }
        if row_count == 0 {
            return Err(Error::GridParse {
                line: 1,
                column: 1,
                message: "empty grid".into(),
            });
        }
        let rows = (1..=row_count).map(RowId::Subfile).collect();
        Pda::new(cols, rows, grid, Provenance::External)
    }

    /// Structured record form (JSON); lossless, including row ids, label
    /// components, and provenance.
    pub fn to_record_string(&self) -> String {
        let record = Record {
            cols: self.cols,
            rows: self.rows.clone(),
            provenance: self.provenance,
            grid: (1..=self.rows.len())
                .map(|row| {
                    (1..=self.cols)
                        .map(|col| self.cell(row, col).to_string())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&record).expect("record serialization cannot fail")
    }

    /// Parses the record form.
    pub fn from_record_str(text: &str) -> Result<Pda> {
        let record: Record = serde_json::from_str(text)?;
        if record.grid.len() != record.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "record has {} row ids but {} grid rows",
                record.rows.len(),
                record.grid.len()
            )));
        }
        let mut grid = Vec::with_capacity(record.cols * record.rows.len());
        for (row_no, row) in record.grid.iter().enumerate() {
            if row.len() != record.cols {
                return Err(Error::DimensionMismatch(format!(
                    "record row {} has {} cells, expected {}",
                    row_no + 1,
                    row.len(),
                    record.cols
                )));
            }
            for (cell_no, token) in row.iter().enumerate() {
                grid.push(Cell::from_str(token).map_err(|message| Error::GridParse {
                    line: row_no + 1,
                    column: cell_no + 1,
                    message,
                })?);
            }
        }
        Pda::new(record.cols, record.rows, grid, record.provenance)
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    cols: usize,
    rows: Vec<RowId>,
    provenance: Provenance,
    grid: Vec<Vec<String>>,
}

/// Canonical symbol numbering of an array. Symbol ids run `1..=S` in
/// row-major order of first occurrence.
#[derive(Clone, Debug)]
pub struct SymbolLayout {
    cols: usize,
    ids: Vec<Option<usize>>,
    cells: Vec<Vec<(usize, usize)>>,
}

impl SymbolLayout {
    /// S, the number of distinct symbols.
    pub fn symbol_count(&self) -> usize {
        self.cells.len()
    }

    /// The canonical id of the entry at `(row, col)`, `None` for stars.
    pub fn id_at(&self, row: usize, col: usize) -> Option<usize> {
        self.ids[(row - 1) * self.cols + (col - 1)]
    }

    /// All cells carrying symbol `s`, in row-major order.
    pub fn cells_of(&self, symbol: usize) -> &[(usize, usize)] {
        &self.cells[symbol - 1]
    }
}

/// A concrete axiom violation, with the witnessing cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Column star count differs from column 1's.
    StarCountMismatch {
        column: usize,
        stars: usize,
        expected: usize,
    },
    /// An integer label lies outside `[1, S]`.
    LabelOutOfRange { row: usize, col: usize, value: u64 },
    /// Integer `symbol` never occurs although a larger label does.
    MissingSymbol { symbol: u64, largest: u64 },
    /// Equal labels twice in one row.
    SameRowPair {
        row: usize,
        col_a: usize,
        col_b: usize,
    },
    /// Equal labels twice in one column.
    SameColumnPair {
        col: usize,
        row_a: usize,
        row_b: usize,
    },
    /// Equal labels whose crossing cell is not a star.
    CrossNotStar {
        first: (usize, usize),
        second: (usize, usize),
        cross: (usize, usize),
    },
}

impl Violation {
    /// The axiom this violation falls under: 1, 2, or 3.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::StarCountMismatch { .. } => 1,
            Violation::LabelOutOfRange { .. } | Violation::MissingSymbol { .. } => 2,
            Violation::SameRowPair { .. }
            | Violation::SameColumnPair { .. }
            | Violation::CrossNotStar { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StarCountMismatch {
                column,
                stars,
                expected,
            } => write!(
                f,
                "C1: column {column} has {stars} stars, column 1 has {expected}"
            ),
            Violation::LabelOutOfRange { row, col, value } => {
                write!(f, "C2: label {value} at ({row}, {col}) is not a positive integer")
            }
            Violation::MissingSymbol { symbol, largest } => {
                write!(f, "C2: symbol {symbol} missing although {largest} occurs")
            }
            Violation::SameRowPair { row, col_a, col_b } => write!(
                f,
                "C3: equal symbols at ({row}, {col_a}) and ({row}, {col_b}) share a row"
            ),
            Violation::SameColumnPair { col, row_a, row_b } => write!(
                f,
                "C3: equal symbols at ({row_a}, {col}) and ({row_b}, {col}) share a column"
            ),
            Violation::CrossNotStar {
                first,
                second,
                cross,
            } => write!(
                f,
                "C3: equal symbols at ({}, {}) and ({}, {}) but ({}, {}) is not a star",
                first.0, first.1, second.0, second.1, cross.0, cross.1
            ),
        }
    }
}

/// Verified statistics of a valid array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdaStats {
    /// K.
    pub cols: usize,
    /// F.
    pub rows: usize,
    /// Z, stars per column (uniform by axiom 1).
    pub stars_per_column: usize,
    /// S.
    pub symbol_count: usize,
    /// Occurrence count of each symbol, in canonical order.
    pub multiplicities: Vec<usize>,
    pub g_min: usize,
    pub g_max: usize,
    /// True when every symbol occurs equally often (vacuously for S = 0).
    pub regular: bool,
    /// S / F.
    pub rate: Rational64,
    /// Z / F.
    pub memory_ratio: Rational64,
}

const MAX_REPORTED: usize = 32;

/// Checks the three axioms, grouping cells by symbol so that the pairwise
/// crossing checks cost `O(sum g_s^2)` on top of one grid scan.
///
/// Returns statistics on success and the violation list otherwise. An
/// all-star array is valid with `S = 0` and rate zero.
pub fn verify(pda: &Pda) -> std::result::Result<PdaStats, Vec<Violation>> {
    let f = pda.row_count();
    let k = pda.cols();
    let mut violations = Vec::new();

    // Axiom 1: uniform star count across columns.
    let mut star_counts = vec![0usize; k];
    for row in 1..=f {
        for col in 1..=k {
            if pda.cell(row, col) == Cell::Star {
                star_counts[col - 1] += 1;
            }
        }
    }
    let z = star_counts[0];
    if let Some((col0, &stars)) = star_counts.iter().enumerate().find(|(_, &c)| c != z) {
        violations.push(Violation::StarCountMismatch {
            column: col0 + 1,
            stars,
            expected: z,
        });
    }

    // Group entries by label, remembering first-occurrence order.
    let mut groups: BTreeMap<Label, Vec<(usize, usize)>> = BTreeMap::new();
    let mut order: Vec<Label> = Vec::new();
    for row in 1..=f {
        for col in 1..=k {
            if let Cell::Entry(label) = pda.cell(row, col) {
                let slot = groups.entry(label).or_default();
                if slot.is_empty() {
                    order.push(label);
                }
                slot.push((row, col));
            }
        }
    }

    // Axiom 2: integer labels must cover [1, max] without gaps. Two-component
    // labels carry no intrinsic order and canonicalize densely, so only
    // all-integer arrays can violate this.
    let all_ints = groups.keys().all(|l| matches!(l, Label::Int(_)));
    if all_ints && !groups.is_empty() {
        let mut largest = 0u64;
        for (label, cells) in &groups {
            let Label::Int(v) = label else { unreachable!() };
            if *v == 0 {
                let (row, col) = cells[0];
                violations.push(Violation::LabelOutOfRange { row, col, value: 0 });
            }
            largest = largest.max(*v);
        }
        for missing in 1..=largest {
            if violations.len() >= MAX_REPORTED {
                break;
            }
            if !groups.contains_key(&Label::Int(missing)) {
                violations.push(Violation::MissingSymbol {
                    symbol: missing,
                    largest,
                });
            }
        }
    }

    // Axiom 3: pairwise crossing checks within each symbol group.
    'groups: for cells in groups.values() {
        for (i, &(r1, c1)) in cells.iter().enumerate() {
            for &(r2, c2) in &cells[i + 1..] {
                let violation = if r1 == r2 {
                    Some(Violation::SameRowPair {
                        row: r1,
                        col_a: c1,
                        col_b: c2,
                    })
                } else if c1 == c2 {
                    Some(Violation::SameColumnPair {
                        col: c1,
                        row_a: r1,
                        row_b: r2,
                    })
                } else if pda.cell(r1, c2) != Cell::Star {
                    Some(Violation::CrossNotStar {
                        first: (r1, c1),
                        second: (r2, c2),
                        cross: (r1, c2),
                    })
                } else if pda.cell(r2, c1) != Cell::Star {
                    Some(Violation::CrossNotStar {
                        first: (r1, c1),
                        second: (r2, c2),
                        cross: (r2, c1),
                    })
                } else {
                    None
                };
                if let Some(v) = violation {
                    violations.push(v);
                    if violations.len() >= MAX_REPORTED {
                        break 'groups;
                    }
                    // One witness per group is enough.
                    continue 'groups;
                }
            }
        }
    }

    if !violations.is_empty() {
        return Err(violations);
    }

    let multiplicities: Vec<usize> = order.iter().map(|l| groups[l].len()).collect();
    let s = multiplicities.len();
    let g_min = multiplicities.iter().copied().min().unwrap_or(0);
    let g_max = multiplicities.iter().copied().max().unwrap_or(0);
    Ok(PdaStats {
        cols: k,
        rows: f,
        stars_per_column: z,
        symbol_count: s,
        multiplicities,
        g_min,
        g_max,
        regular: g_min == g_max,
        rate: Rational64::new(s as i64, f as i64),
        memory_ratio: Rational64::new(z as i64, f as i64),
    })
}

/// Checks that the star pattern matches the consecutive cyclic placement
/// cell by cell: star at `(row, col)` exactly when
/// `mod1(subfile(row) - col, K) > K - t`.
///
/// Rows must carry a subfile index in `[1, K]`; grid-parsed arrays whose row
/// count differs from `K` cannot be checked and yield a shape error.
pub fn verify_against_placement(pda: &Pda, params: &SystemParams) -> Result<bool> {
    let k = params.users();
    let t = params.coverage();
    if pda.cols() != k {
        return Err(Error::DimensionMismatch(format!(
            "array has {} columns, system has K = {k}",
            pda.cols()
        )));
    }
    for row in 1..=pda.row_count() {
        let subfile = pda.row_id(row).subfile();
        if subfile > k {
            return Err(Error::Shape(format!(
                "row {row} has subfile {subfile}, outside [1, {k}]; \
                 the array rows do not map onto subfiles"
            )));
        }
        for col in 1..=k {
            let starred = mod1_raw(subfile as i64 - col as i64, k as i64) > (k - t) as i64;
            if (pda.cell(row, col) == Cell::Star) != starred {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(cells: &[&str], cols: usize) -> Pda {
        let grid: Vec<Cell> = cells.iter().map(|t| t.parse().unwrap()).collect();
        let rows = (1..=grid.len() / cols).map(RowId::Subfile).collect();
        Pda::new(cols, rows, grid, Provenance::External).unwrap()
    }

    #[test]
    fn all_star_array_is_valid_with_rate_zero() {
        let pda = tiny(&["*"; 9], 3);
        let stats = verify(&pda).unwrap();
        assert_eq!(stats.stars_per_column, 3);
        assert_eq!(stats.symbol_count, 0);
        assert_eq!(stats.rate, Rational64::new(0, 1));
        assert!(stats.regular);
    }

    #[test]
    fn repeated_symbol_in_a_row_is_rejected() {
        let pda = tiny(&["1", "1", "*", "*"], 2);
        let violations = verify(&pda).unwrap_err();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::SameRowPair { row: 1, .. })));
    }

    #[test]
    fn cross_position_must_be_star() {
        // Valid 2x2: symbol 1 on the antidiagonal.
        let good = tiny(&["*", "1", "1", "*"], 2);
        let stats = verify(&good).unwrap();
        assert_eq!(stats.symbol_count, 1);
        assert_eq!(stats.g_max, 2);

        // Break one crossing star.
        let bad = good.with_cell(1, 1, Cell::Entry(Label::Int(2)));
        let violations = verify(&bad).unwrap_err();
        assert!(violations.iter().any(|v| v.condition() == 3));
    }

    #[test]
    fn missing_symbol_is_a_gap() {
        let pda = tiny(&["1", "*", "*", "3"], 2);
        let violations = verify(&pda).unwrap_err();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::MissingSymbol { symbol: 2, .. })));
    }

    #[test]
    fn uneven_star_columns_are_rejected() {
        let pda = tiny(&["*", "1", "1", "*", "*", "2"], 2);
        let violations = verify(&pda).unwrap_err();
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::StarCountMismatch { .. })));
    }

    #[test]
    fn canonicalization_numbers_by_first_occurrence() {
        let grid = vec![
            Cell::Entry(Label::Pair(1, 1)),
            Cell::Entry(Label::Pair(1, 2)),
            Cell::Entry(Label::Pair(2, 1)),
            Cell::Entry(Label::Pair(1, 1)),
        ];
        let rows = vec![RowId::Subfile(1), RowId::Subfile(2)];
        let pda = Pda::new(2, rows, grid, Provenance::External).unwrap();
        let canon = pda.canonicalize_symbols();
        assert_eq!(canon.cell(1, 1), Cell::Entry(Label::Int(1)));
        assert_eq!(canon.cell(1, 2), Cell::Entry(Label::Int(2)));
        assert_eq!(canon.cell(2, 1), Cell::Entry(Label::Int(3)));
        assert_eq!(canon.cell(2, 2), Cell::Entry(Label::Int(1)));
    }

    #[test]
    fn canonicalizing_all_stars_is_identity() {
        let pda = tiny(&["*"; 4], 2);
        assert_eq!(pda.canonicalize_symbols(), pda);
    }

    #[test]
    fn grid_line_parses_mixed_cells() {
        let pda = Pda::from_grid_str("* 1,1 * 2,4\n* * 1,1 *\n").unwrap();
        assert_eq!(pda.cell(1, 1), Cell::Star);
        assert_eq!(pda.cell(1, 2), Cell::Entry(Label::Pair(1, 1)));
        assert_eq!(pda.cell(1, 4), Cell::Entry(Label::Pair(2, 4)));
    }

    #[test]
    fn grid_parse_errors_carry_positions() {
        match Pda::from_grid_str("* 1\nx *\n") {
            Err(Error::GridParse { line: 2, column: 1, .. }) => {}
            other => panic!("expected positioned parse error, got {other:?}"),
        }
        assert!(Pda::from_grid_str("").is_err());
        match Pda::from_grid_str("* 1 2\n* 1\n") {
            Err(Error::GridParse { line: 2, .. }) => {}
            other => panic!("expected ragged-row error, got {other:?}"),
        }
    }

    #[test]
    fn record_round_trip_preserves_everything() {
        let rows = vec![
            RowId::Packet { packet: 1, subfile: 1 },
            RowId::Packet { packet: 2, subfile: 1 },
        ];
        let grid = vec![
            Cell::Star,
            Cell::Entry(Label::Pair(1, 1)),
            Cell::Entry(Label::Pair(1, 1)),
            Cell::Star,
        ];
        let pda = Pda::new(2, rows, grid, Provenance::Construction2).unwrap();
        let text = pda.to_record_string();
        assert_eq!(Pda::from_record_str(&text).unwrap(), pda);
    }

    #[test]
    fn grid_round_trip_preserves_cells() {
        let pda = tiny(&["*", "1", "1", "*"], 2);
        let text = pda.to_grid_string();
        assert_eq!(Pda::from_grid_str(&text).unwrap(), pda);
    }

    #[test]
    fn placement_check_needs_subfile_rows() {
        let params = SystemParams::new(2, 1, 1, 2).unwrap();
        // Four plain rows on K = 2 columns: rows cannot be subfiles.
        let pda = tiny(&["*", "1", "1", "*", "*", "2", "2", "*"], 2);
        assert!(matches!(
            verify_against_placement(&pda, &params),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn duplicate_row_ids_are_rejected() {
        let rows = vec![RowId::Subfile(1), RowId::Subfile(1)];
        let grid = vec![Cell::Star; 4];
        assert!(matches!(
            Pda::new(2, rows, grid, Provenance::External),
            Err(Error::Shape(_))
        ));
    }
}
