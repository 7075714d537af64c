//! Comparison of found biclusters against ground truth: Clustering Error
//! over cell intersections, and row-Jaccard recovery / relevance.
//!
//! Clustering Error is reported as a goodness of fit, `D_max / |U|`, where
//! `D_max` is the optimal one-to-one matching value of the intersection
//! matrix and `U` the union of all covered cells, counted with multiplicity
//! where biclusters of one set overlap. 1 is a perfect match.

mod hungarian;

pub use hungarian::hungarian_max;

use crate::error::{Error, Result};
use crate::matrix::{sorted_intersection_len, Bicluster, BiclusterSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    /// `counts[i][j]` = cells shared by found `i` and truth `j`.
    pub counts: Vec<Vec<i64>>,
    pub found_sizes: Vec<usize>,
    pub truth_sizes: Vec<usize>,
    /// Covered cells; a cell covered `a` times by found and `b` times by
    /// truth counts `max(a, b)` times.
    pub union_size: usize,
}

pub fn intersection_matrix(
    found: &BiclusterSet,
    truth: &BiclusterSet,
) -> Result<IntersectionMatrix> {
    if found.is_empty() && truth.is_empty() {
        return Err(Error::UndefinedMetric("both bicluster sets are empty"));
    }
    let counts =
        found.iter().map(|f| truth.iter().map(|t| f.shared_cells(t) as i64).collect()).collect();
    Ok(IntersectionMatrix {
        counts,
        found_sizes: found.iter().map(Bicluster::size).collect(),
        truth_sizes: truth.iter().map(Bicluster::size).collect(),
        union_size: union_size(found, truth),
    })
}

/// Size of the union of two bicluster sets with each cell counted as often
/// as the side that covers it more times. Without overlaps inside either set
/// this is the plain number of covered cells; with them, a set compared
/// against itself still has `D_max == |U|`.
fn union_size(found: &BiclusterSet, truth: &BiclusterSet) -> usize {
    let all = || found.iter().chain(truth.iter());
    let max_row = all().map(|b| *b.rows().last().unwrap()).max().unwrap_or(0);
    let max_col = all().map(|b| *b.cols().last().unwrap()).max().unwrap_or(0);
    let width = max_col + 1;
    let coverage = |set: &BiclusterSet| {
        let mut counts = vec![0u32; (max_row + 1) * width];
        for b in set {
            for &r in b.rows() {
                for &c in b.cols() {
                    counts[r * width + c] += 1;
                }
            }
        }
        counts
    };
    let (f, t) = (coverage(found), coverage(truth));
    f.iter().zip(&t).map(|(a, b)| *a.max(b) as usize).sum()
}

/// `D_max / |U|`. Errors when both sets are empty.
pub fn clustering_error(found: &BiclusterSet, truth: &BiclusterSet) -> Result<f64> {
    let im = intersection_matrix(found, truth)?;
    let (_, d_max) = hungarian_max(&im.counts);
    Ok(d_max as f64 / im.union_size as f64)
}

fn row_jaccard(a: &Bicluster, b: &Bicluster) -> f64 {
    let shared = sorted_intersection_len(a.rows(), b.rows());
    shared as f64 / (a.rows().len() + b.rows().len() - shared) as f64
}

fn mean_best_match(from: &BiclusterSet, to: &BiclusterSet) -> f64 {
    let total: f64 =
        from.iter().map(|a| to.iter().map(|b| row_jaccard(a, b)).fold(0.0, f64::max)).sum();
    total / from.len() as f64
}

/// How well each found bicluster matches some true one (mean best row Jaccard).
pub fn relevance(found: &BiclusterSet, truth: &BiclusterSet) -> Result<f64> {
    if found.is_empty() {
        return Err(Error::UndefinedMetric("relevance of an empty found set"));
    }
    Ok(mean_best_match(found, truth))
}

/// How well each true bicluster is found (mean best row Jaccard).
pub fn recovery(found: &BiclusterSet, truth: &BiclusterSet) -> Result<f64> {
    if truth.is_empty() {
        return Err(Error::UndefinedMetric("recovery of an empty truth set"));
    }
    Ok(mean_best_match(truth, found))
}
