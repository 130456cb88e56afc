//! The `flatset v1` text format for point sets.
//!
//! ```text
//! # flatset v1
//! r=<int>
//! mode=points|hexmask
//! <payload>
//! ```
//!
//! `points` mode lists one point per line as an r-character binary string,
//! coordinate 0 leftmost, sorted ascending by word value. `hexmask` mode
//! dumps the 2^r-bit characteristic mask as hex digits, low nibble first,
//! wrapped at 64 digits per line; padding bits past 2^r must be zero.
//! Round-trips are bit-exact in both modes.

use std::path::Path;

use crate::error::{Error, Result};
use crate::f2::{Dim, PointF2, PointSetF2};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlatsetMode {
    Points,
    Hexmask,
}

const HEADER: &str = "# flatset v1";
const LINE_WIDTH: usize = 64;

pub fn write_flatset(set: &PointSetF2, mode: FlatsetMode) -> String {
    let r = set.dim();
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("r={}\n", r.get()));
    match mode {
        FlatsetMode::Points => {
            out.push_str("mode=points\n");
            for p in set.iter() {
                out.push_str(&p.to_bit_string(r));
                out.push('\n');
            }
        }
        FlatsetMode::Hexmask => {
            out.push_str("mode=hexmask\n");
            let nibbles = (set.dim().point_count() as usize).div_ceil(4);
            let words = set.mask_words();
            let mut line = String::with_capacity(LINE_WIDTH);
            for t in 0..nibbles {
                let w = words[t / 16];
                let nib = (w >> ((t % 16) * 4)) & 0xf;
                line.push(char::from_digit(nib as u32, 16).unwrap());
                if line.len() == LINE_WIDTH {
                    out.push_str(&line);
                    out.push('\n');
                    line.clear();
                }
            }
            if !line.is_empty() {
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    out
}

pub fn read_flatset(text: &str) -> Result<PointSetF2> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty file".into()))?;
    if header.trim_end() != HEADER {
        return Err(Error::Format(format!(
            "bad header {header:?}, expected {HEADER:?}"
        )));
    }
    let rline = lines
        .next()
        .ok_or_else(|| Error::Format("missing r= line".into()))?;
    let r_val: u32 = rline
        .trim_end()
        .strip_prefix("r=")
        .ok_or_else(|| Error::Format(format!("bad r line {rline:?}")))?
        .parse()
        .map_err(|_| Error::Format(format!("bad r value in {rline:?}")))?;
    let r = Dim::new(r_val)?;
    let mline = lines
        .next()
        .ok_or_else(|| Error::Format("missing mode= line".into()))?;
    let mode = match mline.trim_end() {
        "mode=points" => FlatsetMode::Points,
        "mode=hexmask" => FlatsetMode::Hexmask,
        other => return Err(Error::Format(format!("bad mode line {other:?}"))),
    };

    match mode {
        FlatsetMode::Points => {
            let mut set = PointSetF2::empty(r)?;
            for line in lines {
                let line = line.trim_end();
                if line.is_empty() {
                    continue;
                }
                set.insert(PointF2::parse_bit_string(line, r)?);
            }
            Ok(set)
        }
        FlatsetMode::Hexmask => {
            let expected = (r.point_count() as usize).div_ceil(4);
            let mut set = PointSetF2::empty(r)?;
            let mut t = 0usize;
            for line in lines {
                for c in line.trim_end().chars() {
                    let nib = c
                        .to_digit(16)
                        .ok_or_else(|| Error::Format(format!("invalid hex digit {c:?}")))?
                        as u64;
                    if t >= expected {
                        return Err(Error::Format("hexmask longer than 2^r bits".into()));
                    }
                    for b in 0..4 {
                        if (nib >> b) & 1 == 1 {
                            let idx = (t * 4 + b) as u64;
                            if idx >= (1u64 << r.get()) {
                                return Err(Error::Format(
                                    "hexmask padding bits must be zero".into(),
                                ));
                            }
                            set.insert(PointF2::from_bits(idx));
                        }
                    }
                    t += 1;
                }
            }
            if t != expected {
                return Err(Error::Format(format!(
                    "hexmask has {t} nibbles, expected {expected}"
                )));
            }
            Ok(set)
        }
    }
}

pub fn write_flatset_file(path: &Path, set: &PointSetF2, mode: FlatsetMode) -> Result<()> {
    std::fs::write(path, write_flatset(set, mode))?;
    Ok(())
}

pub fn read_flatset_file(path: &Path) -> Result<PointSetF2> {
    let text = std::fs::read_to_string(path)?;
    read_flatset(&text)
}
