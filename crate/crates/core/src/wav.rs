//! 16-bit PCM WAV reading and writing.
//!
//! Only integer PCM with 1 or 2 channels is accepted; anything else is an
//! `UnsupportedWav` error so callers can tell conversion problems from
//! corrupt files. Samples are normalized to `[-1, 1]` by `1/32768` and
//! stereo input is averaged to mono.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use crate::error::{Error, Result};
use crate::frontend::Waveform;
use crate::num::Scalar;

/// Decode a 16-bit PCM RIFF/WAVE file into a mono [`Waveform`].
pub fn load_wav<S: Scalar>(path: impl AsRef<Path>) -> Result<Waveform<S>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile {
            path: path.to_path_buf(),
        },
        _ => Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;

    let mut reader =
        hound::WavReader::new(BufReader::new(file)).map_err(|e| map_hound_error(path, e))?;
    let spec = reader.spec();

    if spec.sample_format != hound::SampleFormat::Int || spec.bits_per_sample != 16 {
        return Err(Error::UnsupportedWav {
            path: path.to_path_buf(),
            detail: format!(
                "{}-bit {:?} samples; only 16-bit integer PCM is supported",
                spec.bits_per_sample, spec.sample_format
            ),
        });
    }
    if spec.channels == 0 || spec.channels > 2 {
        return Err(Error::UnsupportedWav {
            path: path.to_path_buf(),
            detail: format!(
                "{} channels; only mono or stereo is supported",
                spec.channels
            ),
        });
    }

    let channels = spec.channels as usize;
    let norm = S::from_f64(1.0 / 32768.0).unwrap();
    let chan_div = S::from_usize(channels).unwrap();

    let mut samples = Vec::with_capacity(reader.len() as usize / channels);
    let mut frame_acc = S::zero();
    let mut in_frame = 0usize;
    for sample in reader.samples::<i16>() {
        let s = sample.map_err(|e| map_hound_error(path, e))?;
        frame_acc += S::from_i16(s).unwrap();
        in_frame += 1;
        if in_frame == channels {
            samples.push(frame_acc / chan_div * norm);
            frame_acc = S::zero();
            in_frame = 0;
        }
    }

    Waveform::new(samples, spec.sample_rate)
}

/// Encode mono samples in `[-1, 1]` as 16-bit PCM WAV bytes.
///
/// Values are quantized by `round(s * 32768)` clamped to the i16 range, the
/// inverse of the normalization applied by [`load_wav`].
pub fn wav_pcm16_bytes<S: Scalar>(sample_rate: u32, samples: &[S]) -> Vec<u8> {
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut cursor = std::io::Cursor::new(Vec::new());
    {
        // Writing to an in-memory cursor cannot fail.
        let mut writer = hound::WavWriter::new(&mut cursor, spec).expect("in-memory wav header");
        let scale = S::from_f64(32768.0).unwrap();
        for &s in samples {
            let q = (s * scale)
                .round()
                .to_f64()
                .unwrap()
                .clamp(i16::MIN as f64, i16::MAX as f64) as i16;
            writer.write_sample(q).expect("in-memory wav sample");
        }
        writer.finalize().expect("in-memory wav finalize");
    }
    cursor.into_inner()
}

/// Write mono samples in `[-1, 1]` as a 16-bit PCM WAV file; see
/// [`wav_pcm16_bytes`] for the quantization.
pub fn write_wav_pcm16<S: Scalar>(
    path: impl AsRef<Path>,
    sample_rate: u32,
    samples: &[S],
) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, wav_pcm16_bytes(sample_rate, samples)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn map_hound_error(path: &Path, e: hound::Error) -> Error {
    match e {
        hound::Error::Unsupported => Error::UnsupportedWav {
            path: path.to_path_buf(),
            detail: "encoding not supported by the decoder".into(),
        },
        hound::Error::FormatError(detail) => Error::MalformedWav {
            path: path.to_path_buf(),
            detail: detail.into(),
        },
        hound::Error::IoError(source) if source.kind() == std::io::ErrorKind::UnexpectedEof => {
            Error::MalformedWav {
                path: path.to_path_buf(),
                detail: "truncated file".into(),
            }
        }
        hound::Error::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::MalformedWav {
            path: path.to_path_buf(),
            detail: other.to_string(),
        },
    }
}
