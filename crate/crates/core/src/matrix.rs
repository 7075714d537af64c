//! Shared data types: the expression matrix, chromosomes and biclusters.
//!
//! Indices are 0-based everywhere. Rows are genes, columns are conditions.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of finite values with unique row and column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpressionMatrix {
    values: Vec<f64>,
    rows: usize,
    cols: usize,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl ExpressionMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        values: Vec<f64>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        if row_labels.len() != rows || col_labels.len() != cols {
            return Err(Error::Shape(format!(
                "{} row labels and {} column labels for a {rows}x{cols} matrix",
                row_labels.len(),
                col_labels.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i / cols, col: i % cols });
        }
        check_unique("row", &row_labels)?;
        check_unique("column", &col_labels)?;
        Ok(Self { values, rows, cols, row_labels, col_labels })
    }

    /// Builds a matrix with generated labels (`g0..`, `c0..`).
    pub fn from_flat(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        Self::new(rows, cols, values, default_labels("g", rows), default_labels("c", cols))
    }

    pub fn from_rows(data: &[Vec<f64>]) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if let Some(r) = data.iter().position(|row| row.len() != cols) {
            return Err(Error::Shape(format!(
                "row {r} has {} entries, expected {cols}",
                data[r].len()
            )));
        }
        Self::from_flat(rows, cols, data.concat())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// Applies `f` to every value, keeping labels. Fails if a result is not finite.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.rows,
            self.cols,
            self.values.iter().map(|&v| f(v)).collect(),
            self.row_labels.clone(),
            self.col_labels.clone(),
        )
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.values[row * self.cols + col] = value;
    }
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_unique(axis: &'static str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel { axis, label: label.clone() });
        }
    }
    Ok(())
}

/// An ordered series of distinct columns. Rows whose values increase along
/// this order form the bicluster the chromosome stands for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chromosome(Vec<usize>);

impl Chromosome {
    pub fn new(columns: Vec<usize>, num_cols: usize) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::InvalidChromosome(format!(
                "needs at least 2 columns, got {}",
                columns.len()
            )));
        }
        if let Some(&c) = columns.iter().find(|&&c| c >= num_cols) {
            return Err(Error::InvalidChromosome(format!(
                "column {c} out of range for {num_cols} columns"
            )));
        }
        let mut seen = HashSet::with_capacity(columns.len());
        if let Some(&c) = columns.iter().find(|&&c| !seen.insert(c)) {
            return Err(Error::InvalidChromosome(format!("column {c} repeated")));
        }
        Ok(Self(columns))
    }

    /// Caller guarantees the invariants (distinct, in range, length >= 2).
    pub(crate) fn from_vec_unchecked(columns: Vec<usize>) -> Self {
        debug_assert!(columns.len() >= 2);
        Self(columns)
    }

    #[inline]
    pub fn columns(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, col: usize) -> bool {
        self.0.contains(&col)
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    pub fn digest(&self) -> u64 {
        chromosome_hash(self)
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a over the little-endian 64-bit words of the column indices.
///
/// Order-sensitive and independent of platform word size.
pub fn chromosome_hash(c: &Chromosome) -> u64 {
    c.columns().iter().fold(FNV_OFFSET, |h, &col| {
        (col as u64)
            .to_le_bytes()
            .iter()
            .fold(h, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
    })
}

#[derive(Deserialize)]
struct RawBicluster {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl TryFrom<RawBicluster> for Bicluster {
    type Error = Error;

    fn try_from(raw: RawBicluster) -> Result<Self> {
        Bicluster::new(raw.rows, raw.cols)
    }
}

/// A submatrix given by sorted, duplicate-free row and column index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBicluster")]
pub struct Bicluster {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Bicluster {
    /// Sorts and deduplicates both index lists; both must end up nonempty.
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::InvalidBicluster(format!(
                "{} rows and {} columns; both must be nonempty",
                rows.len(),
                cols.len()
            )));
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Number of cells, `|rows| * |cols|`.
    pub fn size(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn check_bounds(&self, num_rows: usize, num_cols: usize) -> Result<()> {
        let max_row = *self.rows.last().expect("nonempty");
        let max_col = *self.cols.last().expect("nonempty");
        if max_row >= num_rows || max_col >= num_cols {
            return Err(Error::InvalidBicluster(format!(
                "index ({max_row}, {max_col}) outside a {num_rows}x{num_cols} matrix"
            )));
        }
        Ok(())
    }

    /// Number of cells shared with `other`. Cartesian products intersect
    /// componentwise, so this is `|rows ∩| * |cols ∩|`.
    pub fn shared_cells(&self, other: &Bicluster) -> usize {
        sorted_intersection_len(&self.rows, &other.rows)
            * sorted_intersection_len(&self.cols, &other.cols)
    }
}

/// Size of the intersection of two strictly increasing slices.
pub(crate) fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiclusterSet {
    pub biclusters: Vec<Bicluster>,
}

impl BiclusterSet {
    pub fn new(biclusters: Vec<Bicluster>) -> Self {
        Self { biclusters }
    }

    pub fn len(&self) -> usize {
        self.biclusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.biclusters.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Bicluster> {
        self.biclusters.iter()
    }

    pub fn check_bounds(&self, num_rows: usize, num_cols: usize) -> Result<()> {
        self.biclusters.iter().try_for_each(|b| b.check_bounds(num_rows, num_cols))
    }
}

impl From<Vec<Bicluster>> for BiclusterSet {
    fn from(biclusters: Vec<Bicluster>) -> Self {
        Self { biclusters }
    }
}

impl<'a> IntoIterator for &'a BiclusterSet {
    type Item = &'a Bicluster;
    type IntoIter = std::slice::Iter<'a, Bicluster>;

    fn into_iter(self) -> Self::IntoIter {
        self.biclusters.iter()
    }
}

/// All `(row, col)` cells covered by `b`.
pub fn bicluster_cells(b: &Bicluster) -> BTreeSet<(usize, usize)> {
    b.rows.iter().flat_map(|&r| b.cols.iter().map(move |&c| (r, c))).collect()
}

/// Jaccard index of the cell sets of two biclusters.
pub fn cell_jaccard(a: &Bicluster, b: &Bicluster) -> f64 {
    let shared = a.shared_cells(b);
    let union = a.size() + b.size() - shared;
    shared as f64 / union as f64
}

/// Shared cells as a fraction of the smaller bicluster (overlap coefficient).
/// Unlike [`cell_jaccard`], a small bicluster lying almost entirely inside a
/// large one scores close to 1.
pub fn cell_containment(a: &Bicluster, b: &Bicluster) -> f64 {
    a.shared_cells(b) as f64 / a.size().min(b.size()) as f64
}
