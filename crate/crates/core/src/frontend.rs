//! Audio-to-feature frontend.
//!
//! Converts decoded waveforms into MFCC-by-time matrices. The pipeline is
//! pre-emphasis, framing (25 ms window / 10 ms hop by default, final partial
//! frame dropped), Hamming window, magnitude spectrum via an FFT zero-padded
//! to the next power of two, triangular mel filterbank, floored natural log,
//! orthonormal DCT-II, and finally coefficient 0 is overwritten with the
//! frame's log energy. Log energy is taken on the pre-emphasized frame
//! before windowing.
//!
//! Everything here is a pure function of its inputs; batch featurization may
//! run on any number of threads and stays deterministic per file.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::num::Scalar;

/// Decoded mono audio, samples normalized to `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform<S> {
    samples: Vec<S>,
    sample_rate: u32,
}

impl<S: Scalar> Waveform<S> {
    pub fn new(samples: Vec<S>, sample_rate: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput("waveform samples"));
        }
        if sample_rate == 0 {
            return Err(Error::InvalidConfig("sample_rate must be > 0".into()));
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[S] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }
}

/// Frontend parameters.
///
/// The defaults (25 ms / 10 ms, 13 coefficients, 26 mel filters, 0.97
/// pre-emphasis, Hamming window, full 0 Hz..Nyquist band, orthonormal
/// DCT-II, log floor 1e-10) are ordinary ASR settings. Other toolchains
/// differ in these internals, so every knob is exposed here; feature values
/// are only comparable between runs that share a configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontendConfig {
    /// Analysis window length in milliseconds.
    pub window_ms: u32,
    /// Frame advance in milliseconds.
    pub hop_ms: u32,
    /// Cepstral coefficients kept per frame (including the log-energy slot 0).
    pub n_coeffs: usize,
    /// Triangular filters in the mel filterbank.
    pub n_mel_filters: usize,
    /// Pre-emphasis coefficient in `[0, 1)`; 0 disables the filter.
    pub pre_emphasis: f64,
    /// Lower edge of the mel band in Hz.
    pub mel_low_hz: f64,
    /// Upper edge of the mel band in Hz; `None` means the Nyquist frequency.
    pub mel_high_hz: Option<f64>,
    /// Floor applied inside every logarithm.
    pub log_floor: f64,
}

impl Default for FrontendConfig {
    fn default() -> Self {
        Self {
            window_ms: 25,
            hop_ms: 10,
            n_coeffs: 13,
            n_mel_filters: 26,
            pre_emphasis: 0.97,
            mel_low_hz: 0.0,
            mel_high_hz: None,
            log_floor: 1e-10,
        }
    }
}

impl FrontendConfig {
    /// Window length in samples at `sample_rate`: `round(window_ms * rate / 1000)`.
    pub fn window_samples(&self, sample_rate: u32) -> usize {
        ms_to_samples(self.window_ms, sample_rate)
    }

    /// Hop length in samples at `sample_rate`: `round(hop_ms * rate / 1000)`.
    pub fn hop_samples(&self, sample_rate: u32) -> usize {
        ms_to_samples(self.hop_ms, sample_rate)
    }

    /// Upper mel band edge resolved against the sample rate.
    pub fn mel_high(&self, sample_rate: u32) -> f64 {
        self.mel_high_hz.unwrap_or(sample_rate as f64 / 2.0)
    }

    /// Check all invariants that can be checked against a concrete sample rate.
    pub fn validate(&self, sample_rate: u32) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.hop_ms == 0 {
            return fail("hop_ms must be > 0".into());
        }
        if self.window_ms < self.hop_ms {
            return fail(format!(
                "window_ms ({}) must be >= hop_ms ({})",
                self.window_ms, self.hop_ms
            ));
        }
        if self.n_coeffs == 0 {
            return fail("n_coeffs must be >= 1".into());
        }
        if self.n_coeffs > self.n_mel_filters {
            return fail(format!(
                "n_coeffs ({}) must not exceed n_mel_filters ({})",
                self.n_coeffs, self.n_mel_filters
            ));
        }
        if !(0.0..1.0).contains(&self.pre_emphasis) {
            return fail(format!("pre_emphasis {} outside [0, 1)", self.pre_emphasis));
        }
        if !(self.log_floor.is_finite() && self.log_floor > 0.0) {
            return fail(format!(
                "log_floor {} must be a positive real",
                self.log_floor
            ));
        }
        let nyquist = sample_rate as f64 / 2.0;
        let high = self.mel_high(sample_rate);
        if !(self.mel_low_hz >= 0.0 && self.mel_low_hz < high) {
            return fail(format!(
                "mel band [{}, {}] Hz is not an increasing range",
                self.mel_low_hz, high
            ));
        }
        if high > nyquist {
            return fail(format!(
                "mel_high_hz {} exceeds the Nyquist frequency {}",
                high, nyquist
            ));
        }
        if self.window_samples(sample_rate) == 0 {
            return fail(format!(
                "window of {} ms is shorter than one sample at {} Hz",
                self.window_ms, sample_rate
            ));
        }
        Ok(())
    }
}

fn ms_to_samples(ms: u32, sample_rate: u32) -> usize {
    ((ms as u64 * sample_rate as u64 + 500) / 1000) as usize
}

/// A frames-by-coefficients real matrix.
///
/// Row `t` is the feature vector of frame `t`. For matrices produced by
/// [`mfcc`], column 0 holds the frame log energy rather than cepstral
/// coefficient 0. Values are validated finite at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix<S> {
    frames: usize,
    coeffs: usize,
    values: Vec<S>,
    provenance: String,
}

impl<S: Scalar> FeatureMatrix<S> {
    /// Build from a flat row-major buffer of `frames * coeffs` values.
    pub fn from_flat(frames: usize, coeffs: usize, values: Vec<S>) -> Result<Self> {
        if frames == 0 || coeffs == 0 {
            return Err(Error::EmptyInput("feature matrix dimensions"));
        }
        if values.len() != frames * coeffs {
            return Err(Error::InvalidConfig(format!(
                "expected {} values for a {frames}x{coeffs} matrix, got {}",
                frames * coeffs,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("feature value {bad:?}")));
        }
        Ok(Self {
            frames,
            coeffs,
            values,
            provenance: String::new(),
        })
    }

    /// Build from per-frame rows, all of equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let frames = rows.len();
        if frames == 0 {
            return Err(Error::EmptyInput("feature matrix rows"));
        }
        let coeffs = rows[0].len();
        for row in &rows {
            if row.len() != coeffs {
                return Err(Error::LengthMismatch {
                    left: coeffs,
                    right: row.len(),
                });
            }
        }
        Self::from_flat(frames, coeffs, rows.into_iter().flatten().collect())
    }

    pub fn with_provenance(mut self, label: impl Into<String>) -> Self {
        self.provenance = label.into();
        self
    }

    pub fn set_provenance(&mut self, label: impl Into<String>) {
        self.provenance = label.into();
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn coeffs(&self) -> usize {
        self.coeffs
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Feature vector of frame `t` (0-based).
    pub fn frame(&self, t: usize) -> &[S] {
        &self.values[t * self.coeffs..(t + 1) * self.coeffs]
    }

    /// Iterate over frames in time order.
    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.values.chunks_exact(self.coeffs)
    }

    /// Flat row-major view of all values.
    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Number of analysis frames for a signal of `n_samples`.
///
/// `floor((n_samples - window_samples) / hop_samples) + 1`; the final
/// partial frame is dropped. Errors if the signal is shorter than one
/// window.
pub fn frame_count(n_samples: usize, sample_rate: u32, cfg: &FrontendConfig) -> Result<usize> {
    cfg.validate(sample_rate)?;
    let window = cfg.window_samples(sample_rate);
    let hop = cfg.hop_samples(sample_rate);
    if n_samples < window {
        return Err(Error::SignalTooShort {
            n_samples,
            window_samples: window,
        });
    }
    Ok((n_samples - window) / hop + 1)
}

/// Natural log of a frame's energy: `ln(max(sum s_i^2, log_floor))`.
///
/// The floor guards the all-zero frame, so this never fails or returns a
/// non-finite value for finite input.
pub fn log_energy<S: Scalar>(frame: &[S], log_floor: S) -> S {
    debug_assert!(!frame.is_empty(), "log_energy of an empty frame");
    let energy: S = frame.iter().map(|&s| s * s).sum();
    energy.max(log_floor).ln()
}

/// Compute the MFCC matrix of a waveform.
///
/// Output is `frame_count` rows by `cfg.n_coeffs` columns with column 0
/// replaced by the frame log energy.
pub fn mfcc<S: Scalar>(w: &Waveform<S>, cfg: &FrontendConfig) -> Result<FeatureMatrix<S>> {
    let rate = w.sample_rate();
    let n_frames = frame_count(w.samples().len(), rate, cfg)?;
    let window_len = cfg.window_samples(rate);
    let hop = cfg.hop_samples(rate);
    let fft_size = window_len.next_power_of_two();
    let n_bins = fft_size / 2 + 1;
    let floor = crate::num::scalar::<S>(cfg.log_floor);

    let emphasized = pre_emphasize(w.samples(), cfg.pre_emphasis);
    let window = hamming_window::<S>(window_len);
    let filterbank = mel_filterbank::<S>(cfg, rate, fft_size);
    let dct = dct_ii_table::<S>(cfg.n_coeffs, cfg.n_mel_filters);

    let zero = Complex::new(S::zero(), S::zero());
    let fft = FftPlanner::<S>::new().plan_fft_forward(fft_size);
    let mut buf: Vec<Complex<S>> = vec![zero; fft_size];
    let mut scratch = vec![zero; fft.get_inplace_scratch_len()];
    let mut magnitudes = vec![S::zero(); n_bins];
    let mut log_mel = vec![S::zero(); cfg.n_mel_filters];

    let mut values = Vec::with_capacity(n_frames * cfg.n_coeffs);
    for t in 0..n_frames {
        let frame = &emphasized[t * hop..t * hop + window_len];
        let energy = log_energy(frame, floor);

        for (slot, (&s, &w)) in buf.iter_mut().zip(frame.iter().zip(&window)) {
            *slot = Complex::new(s * w, S::zero());
        }
        for slot in buf.iter_mut().skip(window_len) {
            *slot = zero;
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (m, slot) in magnitudes.iter_mut().zip(&buf) {
            *m = (slot.re * slot.re + slot.im * slot.im).sqrt();
        }

        for (lm, filter) in log_mel.iter_mut().zip(&filterbank) {
            let e: S = filter.iter().zip(&magnitudes).map(|(&w, &m)| w * m).sum();
            *lm = e.max(floor).ln();
        }

        for k in 0..cfg.n_coeffs {
            let row = &dct[k * cfg.n_mel_filters..(k + 1) * cfg.n_mel_filters];
            let c: S = row.iter().zip(&log_mel).map(|(&a, &b)| a * b).sum();
            values.push(c);
        }
        let base = values.len() - cfg.n_coeffs;
        values[base] = energy;
    }

    FeatureMatrix::from_flat(n_frames, cfg.n_coeffs, values)
}

fn pre_emphasize<S: Scalar>(signal: &[S], coeff: f64) -> Vec<S> {
    if coeff == 0.0 {
        return signal.to_vec();
    }
    let c = crate::num::scalar::<S>(coeff);
    let mut out = Vec::with_capacity(signal.len());
    out.push(signal[0]);
    for i in 1..signal.len() {
        out.push(signal[i] - c * signal[i - 1]);
    }
    out
}

fn hamming_window<S: Scalar>(len: usize) -> Vec<S> {
    if len == 1 {
        return vec![S::one()];
    }
    (0..len)
        .map(|n| {
            let x = 2.0 * std::f64::consts::PI * n as f64 / (len - 1) as f64;
            crate::num::scalar(0.54 - 0.46 * x.cos())
        })
        .collect()
}

fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// Triangular filters with continuous frequency-domain weights, rows of
/// length `fft_size / 2 + 1`.
fn mel_filterbank<S: Scalar>(
    cfg: &FrontendConfig,
    sample_rate: u32,
    fft_size: usize,
) -> Vec<Vec<S>> {
    let n_bins = fft_size / 2 + 1;
    let mel_lo = hz_to_mel(cfg.mel_low_hz);
    let mel_hi = hz_to_mel(cfg.mel_high(sample_rate));
    let n = cfg.n_mel_filters;

    let edges: Vec<f64> = (0..n + 2)
        .map(|i| mel_to_hz(mel_lo + (mel_hi - mel_lo) * i as f64 / (n + 1) as f64))
        .collect();

    let bin_hz = sample_rate as f64 / fft_size as f64;
    (0..n)
        .map(|m| {
            let (left, center, right) = (edges[m], edges[m + 1], edges[m + 2]);
            (0..n_bins)
                .map(|k| {
                    let f = k as f64 * bin_hz;
                    let w = if f <= left || f >= right {
                        0.0
                    } else if f <= center {
                        (f - left) / (center - left)
                    } else {
                        (right - f) / (right - center)
                    };
                    crate::num::scalar(w)
                })
                .collect()
        })
        .collect()
}

/// Orthonormal DCT-II coefficients, `n_out` rows of `n_in` values, row-major.
fn dct_ii_table<S: Scalar>(n_out: usize, n_in: usize) -> Vec<S> {
    let norm0 = (1.0 / n_in as f64).sqrt();
    let norm = (2.0 / n_in as f64).sqrt();
    let mut table = Vec::with_capacity(n_out * n_in);
    for k in 0..n_out {
        let scale = if k == 0 { norm0 } else { norm };
        for n in 0..n_in {
            let angle = std::f64::consts::PI * (2 * n + 1) as f64 * k as f64 / (2 * n_in) as f64;
            table.push(crate::num::scalar(scale * angle.cos()));
        }
    }
    table
}
