//! Synthetic benchmark generator: Gaussian backgrounds with implanted
//! patterns and exact ground truth.
//!
//! Every dataset is a pure function of its [`ScenarioSpec`]. Background
//! values, implant placement and implant values draw from separate streams
//! of the seeded generator, so changing the matrix width leaves placement
//! untouched.

use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Bicluster, BiclusterSet, ExpressionMatrix};

const BACKGROUND_STREAM: u64 = 0;
const PLACEMENT_STREAM: u64 = 1;
const PATTERN_STREAM: u64 = 2;

/// Implants in the widening-background scenario stay inside this many
/// leading columns, so every width variant shares the same ground truth.
pub const COLIN1000_BASE_COLS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    SixTypes,
    Overlap,
    Narrow,
    Noise,
    Colincrease,
    Colin1000,
    Different,
    LargeVariant,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::SixTypes,
        Scenario::Overlap,
        Scenario::Narrow,
        Scenario::Noise,
        Scenario::Colincrease,
        Scenario::Colin1000,
        Scenario::Different,
        Scenario::LargeVariant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::SixTypes => "six_types",
            Scenario::Overlap => "overlap",
            Scenario::Narrow => "narrow",
            Scenario::Noise => "noise",
            Scenario::Colincrease => "colincrease",
            Scenario::Colin1000 => "colin1000",
            Scenario::Different => "different",
            Scenario::LargeVariant => "large_variant",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown scenario {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    Trend,
    ColumnConst,
    RowConst,
    Shift,
    Scale,
    ShiftScale,
}

impl Pattern {
    pub const ALL: [Pattern; 6] = [
        Pattern::Trend,
        Pattern::ColumnConst,
        Pattern::RowConst,
        Pattern::Shift,
        Pattern::Scale,
        Pattern::ShiftScale,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Trend => "trend",
            Pattern::ColumnConst => "column_const",
            Pattern::RowConst => "row_const",
            Pattern::Shift => "shift",
            Pattern::Scale => "scale",
            Pattern::ShiftScale => "shift_scale",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown pattern {s:?}")))
    }
}

/// Distribution parameters for implanted values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternParams {
    /// Standard deviation of additive per-cell noise.
    pub noise_sigma: f64,
    /// Added to every implant cell.
    pub mean_shift: f64,
    /// Standard deviation of per-row offsets (shift patterns).
    pub shift_sigma: f64,
    /// Range of per-row factors (scale patterns).
    pub scale_min: f64,
    pub scale_max: f64,
}

impl Default for PatternParams {
    fn default() -> Self {
        Self { noise_sigma: 0.0, mean_shift: 0.0, shift_sigma: 1.0, scale_min: 0.5, scale_max: 2.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    /// Test-case label within the scenario, e.g. `noise/sigma0.2`.
    pub case: String,
    pub pattern: Pattern,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub bic_rows: usize,
    pub bic_cols: usize,
    pub num_biclusters: usize,
    /// Rows × columns shared by consecutive implants (overlap scenario only).
    pub overlap_cells: (usize, usize),
    pub noise_sigma: f64,
    pub mean_shift: f64,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.matrix_rows == 0 || self.matrix_cols == 0 {
            return fail("matrix dimensions must be positive".into());
        }
        if self.bic_rows == 0 || self.bic_cols == 0 || self.num_biclusters == 0 {
            return fail("bicluster dimensions and count must be positive".into());
        }
        if self.bic_rows > self.matrix_rows || self.bic_cols > self.matrix_cols {
            return fail(format!(
                "{}x{} bicluster does not fit a {}x{} matrix",
                self.bic_rows, self.bic_cols, self.matrix_rows, self.matrix_cols
            ));
        }
        if self.overlap_cells.0 > self.bic_rows || self.overlap_cells.1 > self.bic_cols {
            return fail(format!("overlap {:?} exceeds bicluster size", self.overlap_cells));
        }
        if !(self.noise_sigma.is_finite() && self.noise_sigma >= 0.0) {
            return fail(format!("noise_sigma {} must be >= 0", self.noise_sigma));
        }
        if !(self.mean_shift.is_finite() && self.mean_shift >= 0.0) {
            return fail(format!("mean_shift {} must be >= 0", self.mean_shift));
        }
        Ok(())
    }

    pub fn pattern_params(&self) -> PatternParams {
        PatternParams {
            noise_sigma: self.noise_sigma,
            mean_shift: self.mean_shift,
            ..PatternParams::default()
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedDataset {
    pub matrix: ExpressionMatrix,
    pub truth: BiclusterSet,
    pub spec: ScenarioSpec,
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// I.i.d. standard normal matrix.
pub fn gen_background(rows: usize, cols: usize, seed: u64) -> ExpressionMatrix {
    let mut rng = stream(seed, BACKGROUND_STREAM);
    let values = (0..rows * cols).map(|_| StandardNormal.sample(&mut rng)).collect();
    ExpressionMatrix::from_flat(rows, cols, values).expect("normal samples are finite")
}

/// Overwrites `rows × cols` with `pattern`, then adds noise and the mean shift.
///
/// For [`Pattern::Trend`] each row gets its own sorted normal sample laid out
/// along one random order of `cols` shared by all rows. The other patterns
/// build on a base row of normals: shift adds a per-row offset, scale
/// multiplies by a per-row positive factor.
pub fn implant_pattern<R: Rng + ?Sized>(
    mut m: ExpressionMatrix,
    pattern: Pattern,
    rows: &[usize],
    cols: &[usize],
    params: &PatternParams,
    rng: &mut R,
) -> Result<(ExpressionMatrix, Bicluster)> {
    let bicluster = Bicluster::new(rows.to_vec(), cols.to_vec())?;
    bicluster.check_bounds(m.rows(), m.cols())?;
    let k = cols.len();
    let normal = |rng: &mut R| -> f64 { StandardNormal.sample(rng) };
    let scale = Uniform::new_inclusive(params.scale_min, params.scale_max)
        .map_err(|e| Error::InvalidParams(format!("scale range: {e}")))?;

    match pattern {
        Pattern::Trend => {
            let mut order = cols.to_vec();
            order.shuffle(rng);
            for &r in rows {
                let mut sample: Vec<f64> = (0..k).map(|_| normal(rng)).collect();
                sample.sort_by(f64::total_cmp);
                for (&c, v) in order.iter().zip(sample) {
                    m.set(r, c, v);
                }
            }
        }
        Pattern::ColumnConst => {
            let column_values: Vec<f64> = (0..k).map(|_| normal(rng)).collect();
            for &r in rows {
                for (&c, &v) in cols.iter().zip(&column_values) {
                    m.set(r, c, v);
                }
            }
        }
        Pattern::RowConst => {
            for &r in rows {
                let v = normal(rng);
                for &c in cols {
                    m.set(r, c, v);
                }
            }
        }
        Pattern::Shift | Pattern::Scale | Pattern::ShiftScale => {
            let base: Vec<f64> = (0..k).map(|_| normal(rng)).collect();
            for &r in rows {
                let factor = match pattern {
                    Pattern::Shift => 1.0,
                    _ => scale.sample(rng),
                };
                let offset = match pattern {
                    Pattern::Scale => 0.0,
                    _ => params.shift_sigma * normal(rng),
                };
                for (&c, &b) in cols.iter().zip(&base) {
                    m.set(r, c, b * factor + offset);
                }
            }
        }
    }

    if params.noise_sigma > 0.0 || params.mean_shift != 0.0 {
        let noise = Normal::new(params.mean_shift, params.noise_sigma)
            .map_err(|e| Error::InvalidParams(format!("noise: {e}")))?;
        for &r in rows {
            for &c in cols {
                let v = m.get(r, c) + noise.sample(rng);
                m.set(r, c, v);
            }
        }
    }
    Ok((m, bicluster))
}

/// Draws `n` indices from `pool` without replacement, removing them from it.
fn take_from<R: Rng + ?Sized>(pool: &mut Vec<usize>, n: usize, rng: &mut R) -> Vec<usize> {
    let picked = index::sample(rng, pool.len(), n).into_vec();
    let taken: Vec<usize> = picked.iter().map(|&i| pool[i]).collect();
    let mut drop = picked;
    drop.sort_unstable_by(|a, b| b.cmp(a));
    for i in drop {
        pool.swap_remove(i);
    }
    taken
}

/// Row and column index sets for every implant.
fn place(spec: &ScenarioSpec, rng: &mut ChaCha8Rng) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let n = spec.num_biclusters;
    let col_domain = match spec.scenario {
        Scenario::Colin1000 => spec.matrix_cols.min(COLIN1000_BASE_COLS),
        _ => spec.matrix_cols,
    };
    if spec.bic_cols > col_domain {
        return Err(Error::Placement(format!(
            "{} implant columns exceed the {col_domain} placeable columns",
            spec.bic_cols
        )));
    }
    let (ov_r, ov_c) = match spec.scenario {
        Scenario::Overlap => spec.overlap_cells,
        _ => (0, 0),
    };
    let rows_needed = spec.bic_rows + (n - 1) * (spec.bic_rows - ov_r);
    if rows_needed > spec.matrix_rows {
        return Err(Error::Placement(format!(
            "{n} implants of {} rows need {rows_needed} distinct rows, matrix has {}",
            spec.bic_rows, spec.matrix_rows
        )));
    }
    let cols_needed = spec.bic_cols + (n - 1) * (spec.bic_cols - ov_c);
    let disjoint_cols = cols_needed <= col_domain;
    if spec.scenario == Scenario::Overlap && !disjoint_cols {
        return Err(Error::Placement(format!(
            "overlapping implants need {cols_needed} distinct columns, {col_domain} available"
        )));
    }

    let mut row_pool: Vec<usize> = (0..spec.matrix_rows).collect();
    let mut col_pool: Vec<usize> = (0..col_domain).collect();
    let mut placements: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(n);
    // Fresh (non-inherited) indices of the previous implant.
    let mut prev_fresh: Option<(Vec<usize>, Vec<usize>)> = None;
    for _ in 0..n {
        let (mut rows, mut cols) = (Vec::new(), Vec::new());
        if let Some((fr, fc)) = &prev_fresh {
            rows.extend(index::sample(rng, fr.len(), ov_r).into_iter().map(|i| fr[i]));
            cols.extend(index::sample(rng, fc.len(), ov_c).into_iter().map(|i| fc[i]));
        }
        let inherited = (rows.len(), cols.len());
        rows.extend(take_from(&mut row_pool, spec.bic_rows - inherited.0, rng));
        if disjoint_cols {
            cols.extend(take_from(&mut col_pool, spec.bic_cols - inherited.1, rng));
        } else {
            cols = index::sample(rng, col_domain, spec.bic_cols).into_vec();
        }
        prev_fresh = Some((rows[inherited.0..].to_vec(), cols[inherited.1..].to_vec()));
        placements.push((rows, cols));
    }
    Ok(placements)
}

/// Background plus every implant of `spec`, with ground truth in implant order.
pub fn gen_scenario(spec: &ScenarioSpec) -> Result<GeneratedDataset> {
    spec.validate()?;
    let mut matrix = gen_background(spec.matrix_rows, spec.matrix_cols, spec.seed);
    let placements = place(spec, &mut stream(spec.seed, PLACEMENT_STREAM))?;
    let mut rng = stream(spec.seed, PATTERN_STREAM);
    let params = spec.pattern_params();
    let mut truth = Vec::with_capacity(placements.len());
    for (rows, cols) in placements {
        let (m, b) = implant_pattern(matrix, spec.pattern, &rows, &cols, &params, &mut rng)?;
        matrix = m;
        truth.push(b);
    }
    Ok(GeneratedDataset { matrix, truth: truth.into(), spec: spec.clone() })
}

/// `n` replicates with seeds `seed, seed + 1, ..`.
pub fn replicate_suite(spec: &ScenarioSpec, n: usize) -> Result<Vec<GeneratedDataset>> {
    (0..n as u64).map(|i| gen_scenario(&spec.with_seed(spec.seed.wrapping_add(i)))).collect()
}

/// Optional overrides for [`scenario_cases`]. Overriding the dimension a
/// scenario varies collapses it to a single test case.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecOverrides {
    pub pattern: Option<Pattern>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub bic_rows: Option<usize>,
    pub bic_cols: Option<usize>,
    pub num_biclusters: Option<usize>,
    pub overlap: Option<usize>,
    pub noise: Option<f64>,
    pub mean_shift: Option<f64>,
    pub seed: Option<u64>,
}

fn fmt_real(x: f64) -> String {
    format!("{x}")
}

/// The test cases of a benchmark scenario.
///
/// | scenario | matrix | implants | varied |
/// |---|---|---|---|
/// | six_types | 300×200 | 1 square | pattern × side {10, 20, 30} |
/// | overlap | 100×100 | 2 of 25×25 | shared side {0, 3, 6, 9} |
/// | narrow | 1000×100 | 3 of 100 rows | width {10, 20, 30} |
/// | noise | 1000×100 | 3 of 100×10 | sigma {0, 0.1, 0.2, 0.3} |
/// | colincrease | 1000×200 | 3 of 100 rows | width {15, 30, 60, 120} |
/// | colin1000 | 1000 rows | 3 of 100×10 | matrix width {500, 1000, 1500, 2000} |
/// | different | 1000×100 | 3 of 100×10 | mean shift {0, 2, 4, 6} |
/// | large_variant | 20000×250 | 3 of 200×20 | none |
pub fn scenario_cases(scenario: Scenario, o: &SpecOverrides) -> Vec<ScenarioSpec> {
    let base = |rows, cols, bic_rows, bic_cols, n| ScenarioSpec {
        scenario,
        case: scenario.name().to_string(),
        pattern: o.pattern.unwrap_or(Pattern::Trend),
        matrix_rows: o.rows.unwrap_or(rows),
        matrix_cols: o.cols.unwrap_or(cols),
        bic_rows: o.bic_rows.unwrap_or(bic_rows),
        bic_cols: o.bic_cols.unwrap_or(bic_cols),
        num_biclusters: o.num_biclusters.unwrap_or(n),
        overlap_cells: (0, 0),
        noise_sigma: o.noise.unwrap_or(0.0),
        mean_shift: o.mean_shift.unwrap_or(0.0),
        seed: o.seed.unwrap_or(0),
    };
    let label = |spec: ScenarioSpec, suffix: String| ScenarioSpec {
        case: format!("{}/{suffix}", scenario.name()),
        ..spec
    };

    match scenario {
        Scenario::SixTypes => {
            let patterns = o.pattern.map_or(Pattern::ALL.to_vec(), |p| vec![p]);
            let sides: Vec<(usize, usize)> = match (o.bic_rows, o.bic_cols) {
                (None, None) => vec![(10, 10), (20, 20), (30, 30)],
                (r, c) => {
                    let side = r.or(c).unwrap();
                    vec![(r.unwrap_or(side), c.unwrap_or(side))]
                }
            };
            patterns
                .iter()
                .flat_map(|&pattern| {
                    sides.iter().map(move |&(r, c)| {
                        let spec = ScenarioSpec {
                            pattern,
                            bic_rows: r,
                            bic_cols: c,
                            ..base(300, 200, r, c, 1)
                        };
                        label(spec, format!("{pattern}/{r}x{c}"))
                    })
                })
                .collect()
        }
        Scenario::Overlap => {
            let overlaps = o.overlap.map_or(vec![0, 3, 6, 9], |v| vec![v]);
            overlaps
                .into_iter()
                .map(|v| {
                    let spec = ScenarioSpec { overlap_cells: (v, v), ..base(100, 100, 25, 25, 2) };
                    label(spec, format!("overlap{v}x{v}"))
                })
                .collect()
        }
        Scenario::Narrow | Scenario::Colincrease => {
            let (cols, default_widths) = match scenario {
                Scenario::Narrow => (100, vec![10, 20, 30]),
                _ => (200, vec![15, 30, 60, 120]),
            };
            let widths = o.bic_cols.map_or(default_widths, |w| vec![w]);
            widths
                .into_iter()
                .map(|w| {
                    let spec = ScenarioSpec { bic_cols: w, ..base(1000, cols, 100, w, 3) };
                    label(spec, format!("cols{w}"))
                })
                .collect()
        }
        Scenario::Noise => {
            let sigmas = o.noise.map_or(vec![0.0, 0.1, 0.2, 0.3], |s| vec![s]);
            sigmas
                .into_iter()
                .map(|s| {
                    let spec = ScenarioSpec { noise_sigma: s, ..base(1000, 100, 100, 10, 3) };
                    label(spec, format!("sigma{}", fmt_real(s)))
                })
                .collect()
        }
        Scenario::Colin1000 => {
            let widths = o.cols.map_or(vec![500, 1000, 1500, 2000], |c| vec![c]);
            widths
                .into_iter()
                .map(|c| {
                    let spec = ScenarioSpec { matrix_cols: c, ..base(1000, c, 100, 10, 3) };
                    label(spec, format!("cols{c}"))
                })
                .collect()
        }
        Scenario::Different => {
            let shifts = o.mean_shift.map_or(vec![0.0, 2.0, 4.0, 6.0], |s| vec![s]);
            shifts
                .into_iter()
                .map(|s| {
                    let spec = ScenarioSpec { mean_shift: s, ..base(1000, 100, 100, 10, 3) };
                    label(spec, format!("shift{}", fmt_real(s)))
                })
                .collect()
        }
        Scenario::LargeVariant => {
            let spec = base(20_000, 250, 200, 20, 3);
            let pattern = spec.pattern;
            vec![label(spec, pattern.to_string())]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{cell_jaccard, Chromosome};
    use crate::trend::{row_supports, TrendParams};

    fn spec(pattern: Pattern) -> ScenarioSpec {
        ScenarioSpec {
            scenario: Scenario::SixTypes,
            case: "t".into(),
            pattern,
            matrix_rows: 60,
            matrix_cols: 30,
            bic_rows: 12,
            bic_cols: 6,
            num_biclusters: 2,
            overlap_cells: (0, 0),
            noise_sigma: 0.0,
            mean_shift: 0.0,
            seed: 5,
        }
    }

    #[test]
    fn background_is_deterministic() {
        assert_eq!(gen_background(20, 10, 1), gen_background(20, 10, 1));
        assert_ne!(gen_background(20, 10, 1), gen_background(20, 10, 2));
    }

    #[test]
    fn background_moments() {
        let m = gen_background(1000, 100, 3);
        let n = m.values().len() as f64;
        let mean = m.values().iter().sum::<f64>() / n;
        let var = m.values().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var.sqrt() - 1.0).abs() < 0.02, "sd {}", var.sqrt());
    }

    #[test]
    fn trend_implant_rows_follow_some_order() {
        let bg = gen_background(40, 20, 0);
        let rows: Vec<usize> = (5..15).collect();
        let cols = vec![2, 7, 11, 3, 19];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (m, b) =
            implant_pattern(bg, Pattern::Trend, &rows, &cols, &PatternParams::default(), &mut rng)
                .unwrap();
        // Recover the generating order from the first row, then check all rows.
        let mut order = b.cols().to_vec();
        order.sort_by(|&x, &y| m.get(rows[0], x).total_cmp(&m.get(rows[0], y)));
        let c = Chromosome::new(order, 20).unwrap();
        let p = TrendParams { approx: 0.0, ..TrendParams::default() };
        assert!(rows.iter().all(|&r| row_supports(&m, r, &c, &p)));
    }

    #[test]
    fn shift_and_scale_structure() {
        let rows: Vec<usize> = (0..6).collect();
        let cols = vec![1, 4, 6, 8];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let params = PatternParams::default();
        let (m, _) = implant_pattern(
            gen_background(10, 10, 0),
            Pattern::Shift,
            &rows,
            &cols,
            &params,
            &mut rng,
        )
        .unwrap();
        for &r in &rows[1..] {
            let d: Vec<f64> = cols.iter().map(|&c| m.get(r, c) - m.get(0, c)).collect();
            assert!(d.iter().all(|x| (x - d[0]).abs() < 1e-12), "{d:?}");
        }
        let (m, _) = implant_pattern(
            gen_background(10, 10, 0),
            Pattern::Scale,
            &rows,
            &cols,
            &params,
            &mut rng,
        )
        .unwrap();
        for &r in &rows[1..] {
            let q: Vec<f64> = cols.iter().map(|&c| m.get(r, c) / m.get(0, c)).collect();
            assert!(q.iter().all(|x| (x - q[0]).abs() < 1e-12), "{q:?}");
            assert!(q[0] > 0.0);
        }
    }

    #[test]
    fn constant_patterns() {
        let rows = vec![0, 2, 4];
        let cols = vec![1, 3];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = PatternParams::default();
        let (m, _) = implant_pattern(
            gen_background(6, 5, 0),
            Pattern::RowConst,
            &rows,
            &cols,
            &params,
            &mut rng,
        )
        .unwrap();
        assert!(rows.iter().all(|&r| m.get(r, 1) == m.get(r, 3)));
        let (m, _) = implant_pattern(
            gen_background(6, 5, 0),
            Pattern::ColumnConst,
            &rows,
            &cols,
            &params,
            &mut rng,
        )
        .unwrap();
        assert!(cols.iter().all(|&c| m.get(0, c) == m.get(2, c) && m.get(2, c) == m.get(4, c)));
    }

    #[test]
    fn scenario_is_deterministic_and_disjoint() {
        for pattern in Pattern::ALL {
            let a = gen_scenario(&spec(pattern)).unwrap();
            let b = gen_scenario(&spec(pattern)).unwrap();
            assert_eq!(a.matrix, b.matrix);
            assert_eq!(a.truth, b.truth);
            assert_eq!(a.truth.len(), 2);
            assert_eq!(cell_jaccard(&a.truth.biclusters[0], &a.truth.biclusters[1]), 0.0);
            a.truth.check_bounds(60, 30).unwrap();
        }
    }

    #[test]
    fn overlap_shares_exact_block() {
        let s = ScenarioSpec {
            scenario: Scenario::Overlap,
            num_biclusters: 3,
            bic_rows: 10,
            bic_cols: 8,
            overlap_cells: (3, 2),
            ..spec(Pattern::Trend)
        };
        let d = gen_scenario(&s).unwrap();
        let t = &d.truth.biclusters;
        assert_eq!(t[0].shared_cells(&t[1]), 6);
        assert_eq!(t[1].shared_cells(&t[2]), 6);
        assert_eq!(t[0].shared_cells(&t[2]), 0);
    }

    #[test]
    fn placement_failure_is_an_error() {
        let s = ScenarioSpec { num_biclusters: 6, ..spec(Pattern::Trend) };
        assert!(matches!(gen_scenario(&s), Err(Error::Placement(_))));
    }

    #[test]
    fn colin1000_truth_is_width_independent() {
        let cases = scenario_cases(
            Scenario::Colin1000,
            &SpecOverrides { rows: Some(300), ..SpecOverrides::default() },
        );
        let truths: Vec<BiclusterSet> =
            cases.iter().map(|s| gen_scenario(s).unwrap().truth).collect();
        assert_eq!(truths.len(), 4);
        assert!(truths.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn replicates() {
        let s = spec(Pattern::Trend);
        let reps = replicate_suite(&s, 5).unwrap();
        assert_eq!(reps.len(), 5);
        assert_eq!(reps[0].matrix, gen_scenario(&s).unwrap().matrix);
        for i in 0..5 {
            assert_eq!(reps[i].spec.seed, 5 + i as u64);
            for j in i + 1..5 {
                assert_ne!(reps[i].matrix, reps[j].matrix);
            }
        }
    }

    #[test]
    fn catalog_shapes() {
        let o = SpecOverrides::default();
        let narrow = scenario_cases(Scenario::Narrow, &o);
        assert_eq!(narrow.len(), 3);
        assert!(narrow
            .iter()
            .all(|s| (s.matrix_rows, s.matrix_cols, s.bic_rows) == (1000, 100, 100)));
        assert_eq!(narrow.iter().map(|s| s.bic_cols).collect::<Vec<_>>(), vec![10, 20, 30]);
        assert_eq!(scenario_cases(Scenario::SixTypes, &o).len(), 18);
        let noise =
            scenario_cases(Scenario::Noise, &SpecOverrides { noise: Some(0.0), ..o.clone() });
        assert_eq!(noise.len(), 1);
        assert_eq!(noise[0].case, "noise/sigma0");
        let large = &scenario_cases(Scenario::LargeVariant, &o)[0];
        assert_eq!((large.matrix_rows, large.matrix_cols), (20_000, 250));
        for sc in Scenario::ALL {
            assert_eq!(sc.name().parse::<Scenario>().unwrap(), sc);
            for case in scenario_cases(sc, &o) {
                case.validate().unwrap();
            }
        }
    }
}
