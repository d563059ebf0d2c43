use std::io::Write;

use clap::ValueEnum;

use crate::error::Result;
use crate::fracjump::{FractionalJump, GeneratorState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// CSV rows of n residues, one point per row.
    Points,
    /// One residue per line, in snake order.
    Scalars,
    /// Raw bytes extracted from the scalar stream.
    Bytes,
}

/// Turns residues in `[0, p)` into uniform bytes by rejection.
///
/// For `p >= 256` a residue `v` is kept when `v < 256 floor(p / 256)` and
/// contributes the byte `v mod 256`. For smaller `p`, with `k = floor(log2 p)`,
/// residues `v < 2^k` are kept and contribute `k` bits, packed most
/// significant first.
#[derive(Clone, Debug)]
pub struct ByteExtractor {
    mode: ExtractMode,
    bits: u32,
    pending: u32,
}

#[derive(Clone, Copy, Debug)]
enum ExtractMode {
    Whole { limit: u64 },
    Packed { width: u32 },
}

impl ByteExtractor {
    pub fn new(p: u64) -> Self {
        let mode = if p >= 256 {
            ExtractMode::Whole {
                limit: 256 * (p / 256),
            }
        } else {
            ExtractMode::Packed {
                width: 63 - p.leading_zeros(),
            }
        };
        ByteExtractor {
            mode,
            bits: 0,
            pending: 0,
        }
    }

    /// Feeds one residue; returns a completed byte, if any.
    #[inline]
    pub fn push(&mut self, v: u64) -> Option<u8> {
        match self.mode {
            ExtractMode::Whole { limit } => (v < limit).then_some(v as u8),
            ExtractMode::Packed { width } => {
                if v >> width != 0 {
                    return None;
                }
                self.bits = (self.bits << width) | v as u32;
                self.pending += width;
                if self.pending >= 8 {
                    self.pending -= 8;
                    let byte = (self.bits >> self.pending) as u8;
                    self.bits &= (1 << self.pending) - 1;
                    Some(byte)
                } else {
                    None
                }
            }
        }
    }
}

/// Writes `count` items of the stream started at `seed`.
///
/// Points start with `psi(seed)`; scalars and bytes start with the
/// coordinates of `seed` itself.
pub fn write_stream(
    jump: &FractionalJump,
    seed: &[u64],
    format: OutputFormat,
    count: u64,
    out: &mut dyn Write,
) -> Result<()> {
    let mut state = GeneratorState::new(jump, seed)?;
    match format {
        OutputFormat::Points => {
            let mut line = String::new();
            for _ in 0..count {
                line.clear();
                for (k, c) in state.next_point(jump).iter().enumerate() {
                    if k > 0 {
                        line.push(',');
                    }
                    line.push_str(&c.to_string());
                }
                line.push('\n');
                out.write_all(line.as_bytes())?;
            }
        }
        OutputFormat::Scalars => {
            for _ in 0..count {
                writeln!(out, "{}", state.next_scalar(jump))?;
            }
        }
        OutputFormat::Bytes => {
            let mut extractor = ByteExtractor::new(jump.modulus().p());
            let mut buf = Vec::with_capacity(count.min(1 << 16) as usize);
            let mut written = 0;
            while written < count {
                if let Some(b) = extractor.push(state.next_scalar(jump)) {
                    buf.push(b);
                    written += 1;
                    if buf.len() == 1 << 16 {
                        out.write_all(&buf)?;
                        buf.clear();
                    }
                }
            }
            out.write_all(&buf)?;
        }
    }
    out.flush()?;
    Ok(())
}
