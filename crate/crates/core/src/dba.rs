//! Dynamic barycenter averaging.
//!
//! Builds one average template from several productions of the same word.
//! Each round aligns every input to the current average, then replaces
//! every average frame with the arithmetic mean of all input frames that
//! aligned to it. The average keeps the frame count of the sequence it was
//! initialized from.
//!
//! Alignment uses the same exact dynamic program as [`crate::dtw`] (same
//! step set, same tie-breaking, no radius) but under *squared* Euclidean
//! frame divergence. The arithmetic mean is the exact minimizer of a sum of
//! squared distances, so with the squared divergence each round provably
//! never increases the objective; under plain Euclidean distance the mean
//! update can increase it. The objective trace reports the squared-
//! divergence alignment costs.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dtw::dtw_squared;
use crate::error::{Error, Result};
use crate::frontend::FeatureMatrix;
use crate::num::Scalar;

/// How the initial average sequence is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbaInit {
    /// Use the input at this index.
    Index(usize),
    /// Pick an input uniformly with a ChaCha8 generator seeded by this value.
    Random(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DbaConfig {
    pub max_iterations: usize,
    /// Stop once the relative decrease of the objective falls below this.
    pub rel_tolerance: f64,
    pub init: DbaInit,
}

impl Default for DbaConfig {
    fn default() -> Self {
        Self {
            max_iterations: 10,
            rel_tolerance: 1e-6,
            init: DbaInit::Index(0),
        }
    }
}

impl DbaConfig {
    fn validate(&self, n_inputs: usize) -> Result<usize> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        if !(self.rel_tolerance.is_finite() && self.rel_tolerance >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rel_tolerance {} must be a nonnegative real",
                self.rel_tolerance
            )));
        }
        match self.init {
            DbaInit::Index(i) if i >= n_inputs => Err(Error::InvalidInitIndex {
                index: i,
                len: n_inputs,
            }),
            DbaInit::Index(i) => Ok(i),
            DbaInit::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(rng.random_range(0..n_inputs))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DbaOutcome<S> {
    pub average: FeatureMatrix<S>,
    /// Sum of squared-divergence alignment costs from the average to every
    /// input, one entry per iteration, measured before that iteration's
    /// update. Non-increasing.
    pub objective_trace: Vec<S>,
    pub iterations_run: usize,
    /// Which input seeded the average (resolved from [`DbaInit`]).
    pub init_index: usize,
}

/// One averaging round: align every input to `current`, mean the aligned
/// frames, and report the pre-update objective.
///
/// The mean is computed as sum-then-divide per frame, so the result does not
/// depend on input order beyond float rounding.
pub fn dba_iteration<S: Scalar>(
    current: &FeatureMatrix<S>,
    inputs: &[FeatureMatrix<S>],
) -> Result<(FeatureMatrix<S>, S)> {
    if inputs.is_empty() {
        return Err(Error::EmptyInput("dba inputs"));
    }
    let coeffs = current.coeffs();
    for input in inputs {
        if input.coeffs() != coeffs {
            return Err(Error::CoeffMismatch {
                left: coeffs,
                right: input.coeffs(),
            });
        }
    }

    let frames = current.frames();
    let mut sums = vec![S::zero(); frames * coeffs];
    let mut counts = vec![0usize; frames];
    let mut objective = S::zero();

    for input in inputs {
        let (cost, path) = dtw_squared(current, input)?;
        objective += cost;
        for &(i, j) in path.steps() {
            let row = input.frame(j - 1);
            let slot = &mut sums[(i - 1) * coeffs..i * coeffs];
            for (acc, &v) in slot.iter_mut().zip(row) {
                *acc += v;
            }
            counts[i - 1] += 1;
        }
    }

    // Path boundary and continuity guarantee every frame of `current` was
    // touched by every alignment.
    let mut values = Vec::with_capacity(frames * coeffs);
    for t in 0..frames {
        let div = crate::num::scalar::<S>(counts[t] as f64);
        for c in 0..coeffs {
            values.push(sums[t * coeffs + c] / div);
        }
    }
    let average = FeatureMatrix::from_flat(frames, coeffs, values)?.with_provenance("average");
    Ok((average, objective))
}

/// Iterate [`dba_iteration`] from a chosen input until the objective stops
/// improving (relative decrease below `rel_tolerance`, or an exact zero) or
/// `max_iterations` rounds have run.
pub fn dba_average<S: Scalar>(
    inputs: &[FeatureMatrix<S>],
    cfg: &DbaConfig,
) -> Result<DbaOutcome<S>> {
    if inputs.is_empty() {
        return Err(Error::EmptyInput("dba inputs"));
    }
    let init_index = cfg.validate(inputs.len())?;
    let mut current = inputs[init_index].clone().with_provenance("average");
    let mut trace: Vec<S> = Vec::new();

    loop {
        let (next, objective) = dba_iteration(&current, inputs)?;
        trace.push(objective);
        current = next;
        if objective.is_zero() || trace.len() >= cfg.max_iterations {
            break;
        }
        if trace.len() >= 2 {
            let prev = trace[trace.len() - 2];
            let decrease = (prev - objective) / prev;
            if decrease < crate::num::scalar(cfg.rel_tolerance) {
                break;
            }
        }
    }

    Ok(DbaOutcome {
        average: current,
        iterations_run: trace.len(),
        objective_trace: trace,
        init_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series(values: &[f64]) -> FeatureMatrix<f64> {
        FeatureMatrix::from_rows(values.iter().map(|&v| vec![v]).collect()).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, frames: usize, coeffs: usize) -> FeatureMatrix<f64> {
        let values = (0..frames * coeffs)
            .map(|_| rng.random_range(-2.0..2.0))
            .collect();
        FeatureMatrix::from_flat(frames, coeffs, values).unwrap()
    }

    #[test]
    fn single_input_is_a_bit_exact_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let x = random_matrix(&mut rng, 12, 5);
        let out = dba_average(std::slice::from_ref(&x), &DbaConfig::default()).unwrap();
        assert_eq!(out.iterations_run, 1);
        assert_eq!(out.objective_trace, vec![0.0]);
        assert_eq!(out.average.values(), x.values());
        assert_eq!(out.average.provenance(), "average");
    }

    #[test]
    fn identical_inputs_average_to_themselves() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let x = random_matrix(&mut rng, 8, 3);
        let (avg, objective) = dba_iteration(&x, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(objective, 0.0);
        assert_eq!(avg.values(), x.values());
    }

    #[test]
    fn constant_series_average_is_the_midpoint() {
        let a = series(&[2.0, 2.0, 2.0]);
        let b = series(&[5.0, 5.0, 5.0]);
        let (avg, objective) = dba_iteration(&a, &[a.clone(), b.clone()]).unwrap();
        // Hand alignment: both paths are the forced diagonal, so every frame
        // averages one frame of each input. The objective is the squared
        // divergence summed along the second path: 3 steps of (5-2)^2.
        assert_eq!(avg.values(), &[3.5, 3.5, 3.5]);
        assert_eq!(objective, 27.0);
    }

    #[test]
    fn time_aligned_pair_averages_framewise() {
        // Strongly increasing frames force the diagonal alignment for both
        // inputs, so DBA must reduce to the plain frame-wise mean.
        let a = series(&[0.0, 10.0, 20.0, 30.0]);
        let b = series(&[0.4, 10.4, 20.4, 30.4]);
        let out = dba_average(&[a.clone(), b.clone()], &DbaConfig::default()).unwrap();
        let expect: Vec<f64> = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(&x, &y)| (x + y) / 2.0)
            .collect();
        for (got, want) in out.average.values().iter().zip(&expect) {
            assert!((got - want).abs() < 1e-12);
        }
        for w in out.objective_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn objective_trace_never_increases_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..25 {
            let len_a = rng.random_range(4..20);
            let len_b = rng.random_range(4..20);
            let inputs = [
                random_matrix(&mut rng, len_a, 3),
                random_matrix(&mut rng, len_b, 3),
            ];
            let out = dba_average(&inputs, &DbaConfig::default()).unwrap();
            for w in out.objective_trace.windows(2) {
                assert!(
                    w[1] <= w[0] + 1e-9 * w[0].max(1.0),
                    "trace {:?}",
                    out.objective_trace
                );
            }
            assert_eq!(out.average.frames(), inputs[out.init_index].frames());
        }
    }

    #[test]
    fn permutation_of_inputs_changes_nothing_material() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let a = random_matrix(&mut rng, 10, 4);
        let b = random_matrix(&mut rng, 14, 4);
        let c = random_matrix(&mut rng, 7, 4);
        let fwd = dba_average(
            &[a.clone(), b.clone(), c.clone()],
            &DbaConfig {
                init: DbaInit::Index(0),
                ..DbaConfig::default()
            },
        )
        .unwrap();
        let rev = dba_average(
            &[c, b, a],
            &DbaConfig {
                init: DbaInit::Index(2),
                ..DbaConfig::default()
            },
        )
        .unwrap();
        assert_eq!(fwd.average.frames(), rev.average.frames());
        for (x, y) in fwd.average.values().iter().zip(rev.average.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn seeded_init_is_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let inputs = [
            random_matrix(&mut rng, 9, 2),
            random_matrix(&mut rng, 13, 2),
            random_matrix(&mut rng, 11, 2),
        ];
        let cfg = DbaConfig {
            init: DbaInit::Random(99),
            ..DbaConfig::default()
        };
        let first = dba_average(&inputs, &cfg).unwrap();
        let second = dba_average(&inputs, &cfg).unwrap();
        assert_eq!(first.init_index, second.init_index);
        assert_eq!(first.average, second.average);
        assert_eq!(first.objective_trace, second.objective_trace);
    }

    #[test]
    fn average_keeps_init_frame_count_every_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let inputs = [
            random_matrix(&mut rng, 6, 2),
            random_matrix(&mut rng, 19, 2),
        ];
        let mut current = inputs[1].clone();
        for _ in 0..4 {
            let (next, _) = dba_iteration(&current, &inputs).unwrap();
            assert_eq!(next.frames(), inputs[1].frames());
            current = next;
        }
    }

    #[test]
    fn validation_errors() {
        let x = series(&[1.0]);
        let wide = FeatureMatrix::from_rows(vec![vec![1.0, 2.0]]).unwrap();
        assert!(matches!(
            dba_iteration(&x, &[]),
            Err(Error::EmptyInput("dba inputs"))
        ));
        assert!(matches!(
            dba_iteration(&x, &[wide]),
            Err(Error::CoeffMismatch { .. })
        ));
        assert!(matches!(
            dba_average::<f64>(&[], &DbaConfig::default()),
            Err(Error::EmptyInput(_))
        ));
        let bad_init = DbaConfig {
            init: DbaInit::Index(5),
            ..DbaConfig::default()
        };
        assert!(matches!(
            dba_average(std::slice::from_ref(&x), &bad_init),
            Err(Error::InvalidInitIndex { index: 5, len: 1 })
        ));
        let bad_iter = DbaConfig {
            max_iterations: 0,
            ..DbaConfig::default()
        };
        assert!(matches!(
            dba_average(std::slice::from_ref(&x), &bad_iter),
            Err(Error::InvalidConfig(_))
        ));
    }
}
