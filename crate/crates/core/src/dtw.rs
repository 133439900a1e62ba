//! Absement between feature sequences via dynamic time warping.
//!
//! The absement of a query X against a template Y is the minimal sum of
//! Euclidean frame distances along a monotone, continuous warping path
//! through the X-by-Y distance grid, using the symmetric step set
//! {(1,0), (0,1), (1,1)} with unit weights and no warping radius. That sum
//! is a discrete stand-in for the time integral of distance between the two
//! trajectories.
//!
//! Raw absement grows with sequence length, which biases template matching
//! toward short templates; [`scaled_absement`] divides by the square root of
//! the template's frame count to counter that.
//!
//! The cost is symmetric in its arguments but is not a metric: it does not
//! satisfy the triangle inequality, so nothing here (or in callers) may rely
//! on it.

use std::io::Write;

use crate::error::{Error, Result};
use crate::frontend::FeatureMatrix;
use crate::num::Scalar;

/// Options for the alignment. `radius` documents the classical banded-DTW
/// extension; any value is rejected because only exact, unconstrained
/// alignment is implemented.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DtwOptions {
    pub radius: Option<usize>,
}

impl DtwOptions {
    pub fn validate(&self) -> Result<()> {
        match self.radius {
            Some(r) => Err(Error::UnsupportedRadius(r)),
            None => Ok(()),
        }
    }
}

/// Which sequence a distance profile is indexed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    Query,
    Template,
}

/// A warping path: 1-based index pairs `(i, j)`, `i` into the query and `j`
/// into the template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpPath {
    steps: Vec<(usize, usize)>,
}

impl WarpPath {
    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Boundary, monotonicity and continuity checks against the aligned
    /// sequence lengths: starts at (1,1), ends at (query_len, template_len),
    /// and consecutive steps differ by exactly (1,0), (0,1) or (1,1).
    pub fn is_valid(&self, query_len: usize, template_len: usize) -> bool {
        if self.steps.first() != Some(&(1, 1))
            || self.steps.last() != Some(&(query_len, template_len))
        {
            return false;
        }
        self.steps.windows(2).all(|w| {
            let (di, dj) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            w[1].0 >= w[0].0 && w[1].1 >= w[0].1 && matches!((di, dj), (1, 0) | (0, 1) | (1, 1))
        })
    }

    fn from_backtrack(mut rev: Vec<(usize, usize)>) -> Self {
        rev.reverse();
        Self { steps: rev }
    }
}

/// Absement of a query against a template, with the optimal path.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsementResult<S> {
    /// Minimal cumulative frame distance: the absement a(X, Y).
    pub cost: S,
    /// One optimal warping path (ties resolved diagonal-first).
    pub path: WarpPath,
    /// `cost / sqrt(template_len)`.
    pub scaled_cost: S,
    pub query_len: usize,
    pub template_len: usize,
}

impl<S: Scalar> AbsementResult<S> {
    /// Write the path as CSV rows `i,j,step_distance` against the matrices
    /// it was computed from.
    pub fn write_path_csv<W: Write>(
        &self,
        query: &FeatureMatrix<S>,
        template: &FeatureMatrix<S>,
        mut out: W,
    ) -> std::io::Result<()> {
        writeln!(out, "i,j,step_distance")?;
        for &(i, j) in self.path.steps() {
            let d = frame_distance(query.frame(i - 1), template.frame(j - 1));
            writeln!(out, "{i},{j},{d}")?;
        }
        Ok(())
    }
}

/// Per-frame sums of path distances, indexed by one of the two sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile<S> {
    per_frame: Vec<S>,
}

impl<S: Scalar> DistanceProfile<S> {
    pub fn per_frame(&self) -> &[S] {
        &self.per_frame
    }

    pub fn len(&self) -> usize {
        self.per_frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_frame.is_empty()
    }

    /// Sum of the profile; equals the DTW cost of the pair it came from.
    pub fn total(&self) -> S {
        self.per_frame.iter().copied().sum()
    }

    /// Write CSV rows `frame_index,distance_sum` (frame_index is 1-based,
    /// matching warp path indices).
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "frame_index,distance_sum")?;
        for (t, d) in self.per_frame.iter().enumerate() {
            writeln!(out, "{},{d}", t + 1)?;
        }
        Ok(())
    }
}

/// Euclidean distance between two equal-length vectors.
pub fn euclidean_distance<S: Scalar>(x: &[S], y: &[S]) -> Result<S> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyInput("distance vectors"));
    }
    Ok(frame_distance(x, y))
}

fn frame_distance<S: Scalar>(x: &[S], y: &[S]) -> S {
    frame_distance_squared(x, y).sqrt()
}

fn frame_distance_squared<S: Scalar>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    x.iter()
        .zip(y)
        .map(|(&a, &b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

fn check_pair<S: Scalar>(x: &FeatureMatrix<S>, y: &FeatureMatrix<S>) -> Result<()> {
    if x.coeffs() != y.coeffs() {
        return Err(Error::CoeffMismatch {
            left: x.coeffs(),
            right: y.coeffs(),
        });
    }
    Ok(())
}

/// DTW cost only, without path recovery.
///
/// Keeps a rolling pair of rows, so memory is O(min(T_X, T_Y)); use this for
/// lexicon-scale scans where the path is not needed. Equal to
/// [`dtw_absement`]`(x, y).cost`.
pub fn dtw_cost<S: Scalar>(x: &FeatureMatrix<S>, y: &FeatureMatrix<S>) -> Result<S> {
    check_pair(x, y)?;
    // The step set and frame distance are symmetric, so costs are too; put
    // the shorter sequence on the rolling axis.
    let (a, b) = if y.frames() <= x.frames() {
        (x, y)
    } else {
        (y, x)
    };
    let n = b.frames();

    let mut prev = vec![S::zero(); n];
    let mut curr = vec![S::zero(); n];

    let first = a.frame(0);
    curr[0] = frame_distance(first, b.frame(0));
    for j in 1..n {
        curr[j] = curr[j - 1] + frame_distance(first, b.frame(j));
    }
    for i in 1..a.frames() {
        std::mem::swap(&mut prev, &mut curr);
        let row = a.frame(i);
        curr[0] = prev[0] + frame_distance(row, b.frame(0));
        for j in 1..n {
            let best = prev[j].min(curr[j - 1]).min(prev[j - 1]);
            curr[j] = best + frame_distance(row, b.frame(j));
        }
    }
    Ok(curr[n - 1])
}

/// Fill the full cumulative-cost grid under an arbitrary frame divergence
/// and recover one optimal path. Backtracking prefers the (1,1) step, then
/// (0,1), then (1,0) on ties, so the returned path is deterministic.
fn dtw_full<S: Scalar>(
    x: &FeatureMatrix<S>,
    y: &FeatureMatrix<S>,
    dist: impl Fn(&[S], &[S]) -> S,
) -> (S, WarpPath) {
    let (m, n) = (x.frames(), y.frames());

    let mut acc = vec![S::zero(); m * n];
    acc[0] = dist(x.frame(0), y.frame(0));
    for j in 1..n {
        acc[j] = acc[j - 1] + dist(x.frame(0), y.frame(j));
    }
    for i in 1..m {
        let row = x.frame(i);
        acc[i * n] = acc[(i - 1) * n] + dist(row, y.frame(0));
        for j in 1..n {
            let diag = acc[(i - 1) * n + j - 1];
            let up = acc[(i - 1) * n + j];
            let left = acc[i * n + j - 1];
            acc[i * n + j] = diag.min(up).min(left) + dist(row, y.frame(j));
        }
    }
    let cost = acc[m * n - 1];

    let mut rev = Vec::with_capacity(m.max(n));
    let (mut i, mut j) = (m - 1, n - 1);
    loop {
        rev.push((i + 1, j + 1));
        match (i, j) {
            (0, 0) => break,
            (0, _) => j -= 1,
            (_, 0) => i -= 1,
            _ => {
                let diag = acc[(i - 1) * n + j - 1];
                let left = acc[i * n + j - 1];
                let up = acc[(i - 1) * n + j];
                if diag <= left && diag <= up {
                    i -= 1;
                    j -= 1;
                } else if left <= up {
                    j -= 1;
                } else {
                    i -= 1;
                }
            }
        }
    }
    let path = WarpPath::from_backtrack(rev);
    debug_assert!(path.is_valid(m, n));
    (cost, path)
}

/// Full DTW between a query and a template: minimal cumulative cost, one
/// optimal path recovered by backtracking, and the sqrt-of-template-length
/// scaled cost.
///
/// Needs the full T_X-by-T_Y cumulative matrix for backtracking; when only
/// the cost matters, prefer [`dtw_cost`].
pub fn dtw_absement<S: Scalar>(
    x: &FeatureMatrix<S>,
    y: &FeatureMatrix<S>,
) -> Result<AbsementResult<S>> {
    check_pair(x, y)?;
    let (cost, path) = dtw_full(x, y, frame_distance);
    Ok(AbsementResult {
        cost,
        path,
        scaled_cost: scaled_absement(cost, y.frames())?,
        query_len: x.frames(),
        template_len: y.frames(),
    })
}

/// Alignment under squared Euclidean frame divergence, for barycenter
/// averaging: the arithmetic-mean frame update is exactly optimal for the
/// squared divergence, which is what makes the averaging objective
/// non-increasing. Same step set and tie-breaking as [`dtw_absement`].
pub(crate) fn dtw_squared<S: Scalar>(
    x: &FeatureMatrix<S>,
    y: &FeatureMatrix<S>,
) -> Result<(S, WarpPath)> {
    check_pair(x, y)?;
    Ok(dtw_full(x, y, frame_distance_squared))
}

/// As [`dtw_absement`], with options validated first.
pub fn dtw_absement_with<S: Scalar>(
    x: &FeatureMatrix<S>,
    y: &FeatureMatrix<S>,
    opts: &DtwOptions,
) -> Result<AbsementResult<S>> {
    opts.validate()?;
    dtw_absement(x, y)
}

/// Absement divided by the square root of the template length in frames.
pub fn scaled_absement<S: Scalar>(cost: S, template_len: usize) -> Result<S> {
    if template_len == 0 {
        return Err(Error::InvalidTemplateLen(template_len));
    }
    Ok(cost / crate::num::scalar::<S>(template_len as f64).sqrt())
}

/// Distances along the optimal path summed per frame of the chosen
/// reference sequence. When a reference frame is stretched over several
/// frames of the other sequence, those distances all land on it, so the
/// profile total equals the DTW cost.
pub fn distance_profile<S: Scalar>(
    x: &FeatureMatrix<S>,
    y: &FeatureMatrix<S>,
    reference: Reference,
) -> Result<DistanceProfile<S>> {
    let result = dtw_absement(x, y)?;
    let len = match reference {
        Reference::Query => x.frames(),
        Reference::Template => y.frames(),
    };
    let mut per_frame = vec![S::zero(); len];
    for &(i, j) in result.path.steps() {
        let d = frame_distance(x.frame(i - 1), y.frame(j - 1));
        let idx = match reference {
            Reference::Query => i - 1,
            Reference::Template => j - 1,
        };
        per_frame[idx] += d;
    }
    Ok(DistanceProfile { per_frame })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All monotone, continuous paths through an m-by-n grid, found by plain
    /// recursive enumeration. Test-only oracle, independent of the DP.
    fn enumerate_paths(m: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
        fn go(
            i: usize,
            j: usize,
            m: usize,
            n: usize,
            prefix: &mut Vec<(usize, usize)>,
            out: &mut Vec<Vec<(usize, usize)>>,
        ) {
            prefix.push((i, j));
            if i == m - 1 && j == n - 1 {
                out.push(prefix.clone());
            } else {
                if i + 1 < m {
                    go(i + 1, j, m, n, prefix, out);
                }
                if j + 1 < n {
                    go(i, j + 1, m, n, prefix, out);
                }
                if i + 1 < m && j + 1 < n {
                    go(i + 1, j + 1, m, n, prefix, out);
                }
            }
            prefix.pop();
        }
        let mut out = Vec::new();
        go(0, 0, m, n, &mut Vec::new(), &mut out);
        out
    }

    fn brute_force_cost(x: &FeatureMatrix<f64>, y: &FeatureMatrix<f64>) -> f64 {
        enumerate_paths(x.frames(), y.frames())
            .iter()
            .map(|path| {
                path.iter()
                    .map(|&(i, j)| euclidean_distance(x.frame(i), y.frame(j)).unwrap())
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    }

    fn series(values: &[f64]) -> FeatureMatrix<f64> {
        FeatureMatrix::from_rows(values.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, frames: usize, coeffs: usize) -> FeatureMatrix<f64> {
        let values = (0..frames * coeffs)
            .map(|_| rng.random_range(-3.0..3.0))
            .collect();
        FeatureMatrix::from_flat(frames, coeffs, values).unwrap()
    }

    #[test]
    fn euclidean_identity_is_zero() {
        let v = vec![1.5, -2.0, 0.25];
        assert_eq!(euclidean_distance(&v, &v).unwrap(), 0.0);
    }

    #[test]
    fn euclidean_3_4_5() {
        assert_eq!(euclidean_distance(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
    }

    #[test]
    fn euclidean_matches_componentwise_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let x: Vec<f64> = (0..13).map(|_| rng.random_range(-5.0..5.0)).collect();
            let y: Vec<f64> = (0..13).map(|_| rng.random_range(-5.0..5.0)).collect();
            let mut sq = 0.0f64;
            for k in 0..13 {
                sq += (x[k] - y[k]).abs().powi(2);
            }
            let expect = sq.sqrt();
            let got = euclidean_distance(&x, &y).unwrap();
            assert!((got - expect).abs() / expect.max(1e-300) < 1e-12);
        }
    }

    #[test]
    fn euclidean_length_mismatch_errors() {
        let err = euclidean_distance(&[1.0], &[1.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn identical_sequences_align_on_the_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_matrix(&mut rng, 7, 3);
        let r = dtw_absement(&x, &x).unwrap();
        assert_eq!(r.cost, 0.0);
        assert_eq!(r.scaled_cost, 0.0);
        let diagonal: Vec<(usize, usize)> = (1..=7).map(|i| (i, i)).collect();
        assert_eq!(r.path.steps(), &diagonal[..]);
    }

    #[test]
    fn exact_stretch_costs_zero() {
        let x = series(&[1.0, 2.0, 3.0]);
        let y = series(&[1.0, 2.0, 2.0, 3.0]);
        assert_eq!(dtw_absement(&x, &y).unwrap().cost, 0.0);
    }

    #[test]
    fn two_against_one_collapses_onto_the_single_frame() {
        let x = series(&[0.0, 0.0]);
        let y = series(&[3.0]);
        let r = dtw_absement(&x, &y).unwrap();
        assert_eq!(r.cost, 6.0);
        assert_eq!(r.path.steps(), &[(1, 1), (2, 1)]);
        // Independent confirmation by full path enumeration.
        assert_eq!(brute_force_cost(&x, &y), 6.0);
    }

    #[test]
    fn cost_equals_sum_of_path_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let x_len = rng.random_range(1..20);

            let x = random_matrix(&mut rng, x_len, 5);
            let y_len = rng.random_range(1..20);

            let y = random_matrix(&mut rng, y_len, 5);
            let r = dtw_absement(&x, &y).unwrap();
            let along_path: f64 = r
                .path
                .steps()
                .iter()
                .map(|&(i, j)| euclidean_distance(x.frame(i - 1), y.frame(j - 1)).unwrap())
                .sum();
            assert!((r.cost - along_path).abs() <= 1e-9 * r.cost.max(1.0));
        }
    }

    #[test]
    fn cost_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let x_len = rng.random_range(1..25);

            let x = random_matrix(&mut rng, x_len, 4);
            let y_len = rng.random_range(1..25);

            let y = random_matrix(&mut rng, y_len, 4);
            let a = dtw_absement(&x, &y).unwrap().cost;
            let b = dtw_absement(&y, &x).unwrap().cost;
            assert!((a - b).abs() <= 1e-9 * a.max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn rolling_cost_agrees_with_full_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let x_len = rng.random_range(1..30);

            let x = random_matrix(&mut rng, x_len, 6);
            let y_len = rng.random_range(1..30);

            let y = random_matrix(&mut rng, y_len, 6);
            let full = dtw_absement(&x, &y).unwrap().cost;
            let rolling = dtw_cost(&x, &y).unwrap();
            assert!((full - rolling).abs() <= 1e-9 * full.max(1.0));
        }
    }

    #[test]
    fn endpoint_distances_lower_bound_the_cost() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let x_len = rng.random_range(2..15);

            let x = random_matrix(&mut rng, x_len, 3);
            let y_len = rng.random_range(2..15);

            let y = random_matrix(&mut rng, y_len, 3);
            let r = dtw_absement(&x, &y).unwrap();
            let first = euclidean_distance(x.frame(0), y.frame(0)).unwrap();
            let last =
                euclidean_distance(x.frame(x.frames() - 1), y.frame(y.frames() - 1)).unwrap();
            assert!(r.cost >= first - 1e-12);
            assert!(r.cost >= first + last - 1e-9);
        }
    }

    #[test]
    fn small_grids_match_exhaustive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..100 {
            let x_len = rng.random_range(1..=5);

            let x = random_matrix(&mut rng, x_len, 2);
            let y_len = rng.random_range(1..=5);

            let y = random_matrix(&mut rng, y_len, 2);
            let got = dtw_absement(&x, &y).unwrap().cost;
            let expect = brute_force_cost(&x, &y);
            assert!((got - expect).abs() <= 1e-9 * expect.max(1.0));
        }
    }

    #[test]
    fn scaled_absement_examples() {
        assert_eq!(scaled_absement(10.0, 4).unwrap(), 5.0);
        assert_eq!(scaled_absement(0.0, 17).unwrap(), 0.0);
        let got: f64 = scaled_absement(7.0, 2).unwrap();
        assert!((got - 4.949747468305833).abs() < 1e-9);
        assert!(matches!(
            scaled_absement(1.0, 0),
            Err(Error::InvalidTemplateLen(0))
        ));
    }

    #[test]
    fn scaled_absement_monotone_in_both_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..200 {
            let cost = rng.random_range(0.001..100.0);
            let bump = rng.random_range(0.001..10.0);
            let len = rng.random_range(1..500usize);
            assert!(
                scaled_absement(cost + bump, len).unwrap() > scaled_absement(cost, len).unwrap()
            );
            assert!(scaled_absement(cost, len + 1).unwrap() < scaled_absement(cost, len).unwrap());
        }
    }

    #[test]
    fn profile_of_identical_pair_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let x = random_matrix(&mut rng, 9, 4);
        let p = distance_profile(&x, &x, Reference::Query).unwrap();
        assert_eq!(p.len(), 9);
        assert!(p.per_frame().iter().all(|&d| d == 0.0));
    }

    #[test]
    fn profile_of_collapse_example() {
        let x = series(&[0.0, 0.0]);
        let y = series(&[3.0]);
        let by_template = distance_profile(&x, &y, Reference::Template).unwrap();
        assert_eq!(by_template.per_frame(), &[6.0]);
        let by_query = distance_profile(&x, &y, Reference::Query).unwrap();
        assert_eq!(by_query.per_frame(), &[3.0, 3.0]);
    }

    #[test]
    fn profile_sums_to_cost_for_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let x_len = rng.random_range(1..20);

            let x = random_matrix(&mut rng, x_len, 3);
            let y_len = rng.random_range(1..20);

            let y = random_matrix(&mut rng, y_len, 3);
            let cost = dtw_absement(&x, &y).unwrap().cost;
            for reference in [Reference::Query, Reference::Template] {
                let p = distance_profile(&x, &y, reference).unwrap();
                assert!((p.total() - cost).abs() <= 1e-9 * cost.max(1.0));
            }
        }
    }

    #[test]
    fn coefficient_mismatch_is_rejected() {
        let x = FeatureMatrix::from_rows(vec![vec![1.0, 2.0]]).unwrap();
        let y = series(&[1.0]);
        assert!(matches!(
            dtw_absement(&x, &y),
            Err(Error::CoeffMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(dtw_cost(&x, &y), Err(Error::CoeffMismatch { .. })));
    }

    #[test]
    fn radius_option_is_rejected() {
        let x = series(&[1.0, 2.0]);
        let err = dtw_absement_with(&x, &x, &DtwOptions { radius: Some(5) }).unwrap_err();
        assert!(matches!(err, Error::UnsupportedRadius(5)));
        assert!(dtw_absement_with(&x, &x, &DtwOptions::default()).is_ok());
    }

    #[test]
    fn path_csv_has_expected_shape() {
        let x = series(&[0.0, 0.0]);
        let y = series(&[3.0]);
        let r = dtw_absement(&x, &y).unwrap();
        let mut buf = Vec::new();
        r.write_path_csv(&x, &y, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "i,j,step_distance\n1,1,3\n2,1,3\n"
        );
    }

    #[test]
    fn profile_csv_has_expected_shape() {
        let x = series(&[0.0, 0.0]);
        let y = series(&[3.0]);
        let p = distance_profile(&x, &y, Reference::Query).unwrap();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "frame_index,distance_sum\n1,3\n2,3\n"
        );
    }

    #[test]
    fn f32_and_f64_costs_agree_loosely() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let rows64: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..4).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let rows32: Vec<Vec<f32>> = rows64
            .iter()
            .map(|r| r.iter().map(|&v| v as f32).collect())
            .collect();
        let x64 = FeatureMatrix::from_rows(rows64.clone()).unwrap();
        let y64 = FeatureMatrix::from_rows(rows64.iter().rev().cloned().collect()).unwrap();
        let x32 = FeatureMatrix::from_rows(rows32.clone()).unwrap();
        let y32 = FeatureMatrix::from_rows(rows32.iter().rev().cloned().collect()).unwrap();
        let c64 = dtw_cost(&x64, &y64).unwrap();
        let c32 = dtw_cost(&x32, &y32).unwrap();
        assert!((c64 - c32 as f64).abs() < 1e-4 * c64.max(1.0));
    }
}
