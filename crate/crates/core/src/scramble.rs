//! Blockwise byte scrambler keyed by a valid transform.
//!
//! This is a linear map and is NOT a secure cipher. Anyone holding a few
//! plaintext/frame block pairs can recover the key by solving a linear
//! system. It exists to exercise the transform on real data.
//!
//! Frame layout:
//!
//! ```text
//! "NHT1" | input length (u64, big-endian) | body
//! ```
//!
//! The input is read as an MSB-first bitstream and cut into `k`-bit digits,
//! `k = floor(log2 m)`. The final partial digit is zero-padded, and then the
//! digit sequence is zero-padded to a whole number of `2n`-digit blocks.
//! Each block is transformed and every output residue is written big-endian
//! in `w = ceil(bits(m - 1) / 8)` bytes.

use rayon::prelude::*;
use thiserror::Error;

use crate::modular::Modulus;
use crate::nht::NhtSpec;

pub const MAGIC: &[u8; 4] = b"NHT1";
pub const HEADER_LEN: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScrambleError {
    #[error("modulus {0} is too small for digit packing (need m >= 3)")]
    ModulusTooSmall(u64),
    #[error("key spec is not a valid transform")]
    InvalidKey,
    #[error("malformed frame: {0}")]
    MalformedFrame(String),
    #[error("key does not match frame geometry: {0}")]
    KeyMismatch(String),
}

fn malformed(msg: impl Into<String>) -> ScrambleError {
    ScrambleError::MalformedFrame(msg.into())
}

/// Bits per digit, `floor(log2 m)`.
pub fn digit_bits(m: Modulus) -> Result<u32, ScrambleError> {
    if m.get() < 3 {
        return Err(ScrambleError::ModulusTooSmall(m.get()));
    }
    Ok(63 - m.get().leading_zeros())
}

/// Serialized bytes per residue, `ceil(bits(m - 1) / 8)`.
pub fn residue_width(m: Modulus) -> usize {
    let bits = 64 - (m.get() - 1).leading_zeros() as usize;
    bits.div_ceil(8)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrambleKey {
    spec: NhtSpec,
    bits: u32,
    width: usize,
}

impl ScrambleKey {
    pub fn new(spec: NhtSpec) -> Result<Self, ScrambleError> {
        let bits = digit_bits(spec.modulus())?;
        if !spec.is_valid() {
            return Err(ScrambleError::InvalidKey);
        }
        let width = residue_width(spec.modulus());
        Ok(ScrambleKey { spec, bits, width })
    }

    pub fn spec(&self) -> &NhtSpec {
        &self.spec
    }

    pub fn block_len(&self) -> usize {
        self.spec.size()
    }

    pub fn digit_bits(&self) -> u32 {
        self.bits
    }

    pub fn residue_width(&self) -> usize {
        self.width
    }

    /// Exact body size in bytes for an input of `len` bytes.
    pub fn body_len(&self, len: u64) -> u128 {
        let digits = (8 * len as u128).div_ceil(self.bits as u128);
        let block = self.block_len() as u128;
        digits.div_ceil(block) * block * self.width as u128
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    /// Original input length in bytes.
    pub length: u64,
    pub body: Vec<u8>,
}

impl Frame {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.body.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.length.to_be_bytes());
        out.extend_from_slice(&self.body);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, ScrambleError> {
        if bytes.len() < HEADER_LEN {
            return Err(malformed(format!("{} bytes is shorter than the header", bytes.len())));
        }
        if &bytes[..4] != MAGIC {
            return Err(malformed("bad magic"));
        }
        let length = u64::from_be_bytes(bytes[4..12].try_into().expect("8 bytes"));
        Ok(Frame {
            length,
            body: bytes[HEADER_LEN..].to_vec(),
        })
    }
}

/// Packs `data` into `floor(log2 m)`-bit digits, then zero-pads to a multiple
/// of `block` digits.
pub fn bytes_to_digits(data: &[u8], m: Modulus, block: usize) -> Result<Vec<u64>, ScrambleError> {
    let k = digit_bits(m)?;
    let mask = (1u64 << k) - 1;
    let mut out = Vec::with_capacity((data.len() * 8).div_ceil(k as usize) + block);
    let (mut acc, mut nbits) = (0u64, 0u32);
    for &b in data {
        acc = (acc << 8) | b as u64;
        nbits += 8;
        while nbits >= k {
            nbits -= k;
            out.push((acc >> nbits) & mask);
        }
        acc &= (1u64 << nbits) - 1;
    }
    if nbits > 0 {
        out.push((acc << (k - nbits)) & mask);
    }
    let block = block.max(1);
    out.resize(out.len().div_ceil(block) * block, 0);
    Ok(out)
}

/// Inverse of [`bytes_to_digits`]; rejects anything that packing could not
/// have produced.
pub fn digits_to_bytes(digits: &[u64], m: Modulus, len: usize) -> Result<Vec<u8>, ScrambleError> {
    let k = digit_bits(m)?;
    let used = (8 * len).div_ceil(k as usize);
    if used > digits.len() {
        return Err(malformed("too few digits for the recorded length"));
    }
    if let Some(d) = digits.iter().find(|&&d| d >> k != 0) {
        return Err(malformed(format!("digit {d} does not fit in {k} bits")));
    }
    if digits[used..].iter().any(|&d| d != 0) {
        return Err(malformed("nonzero padding digits"));
    }
    let mut out = Vec::with_capacity(len);
    let (mut acc, mut nbits) = (0u64, 0u32);
    for &d in &digits[..used] {
        acc = (acc << k) | d;
        nbits += k;
        while nbits >= 8 && out.len() < len {
            nbits -= 8;
            out.push((acc >> nbits) as u8);
        }
        acc &= (1u64 << nbits) - 1;
    }
    if acc != 0 {
        return Err(malformed("nonzero padding bits"));
    }
    Ok(out)
}

pub fn scramble(data: &[u8], key: &ScrambleKey) -> Frame {
    let m = key.spec.modulus();
    let block = key.block_len();
    let width = key.width;
    let digits = bytes_to_digits(data, m, block).expect("key modulus checked at construction");
    let mut body = vec![0u8; digits.len() * width];
    body.par_chunks_mut(block * width)
        .zip(digits.par_chunks(block))
        .for_each_init(
            || vec![0u64; block],
            |out, (dst, src)| {
                key.spec.forward_into(src, out);
                for (bytes, &r) in dst.chunks_mut(width).zip(out.iter()) {
                    bytes.copy_from_slice(&r.to_be_bytes()[8 - width..]);
                }
            },
        );
    Frame {
        length: data.len() as u64,
        body,
    }
}

pub fn descramble(frame: &Frame, key: &ScrambleKey) -> Result<Vec<u8>, ScrambleError> {
    let m = key.spec.modulus();
    let block = key.block_len();
    let width = key.width;
    let block_bytes = block * width;
    if !frame.body.len().is_multiple_of(block_bytes) {
        return Err(malformed(format!(
            "body of {} bytes is not a multiple of {block_bytes}",
            frame.body.len()
        )));
    }
    let expected = key.body_len(frame.length);
    if frame.body.len() as u128 != expected {
        return Err(ScrambleError::KeyMismatch(format!(
            "length {} needs a {expected}-byte body for this key, found {}",
            frame.length,
            frame.body.len()
        )));
    }
    let len = usize::try_from(frame.length).map_err(|_| malformed("length overflows usize"))?;

    let mut residues = vec![0u64; frame.body.len() / width];
    for (slot, bytes) in residues.iter_mut().zip(frame.body.chunks(width)) {
        let mut buf = [0u8; 8];
        buf[8 - width..].copy_from_slice(bytes);
        *slot = u64::from_be_bytes(buf);
        if *slot >= m.get() {
            return Err(malformed(format!("residue {} is not below modulus {m}", *slot)));
        }
    }
    let mut digits = vec![0u64; residues.len()];
    digits
        .par_chunks_mut(block)
        .zip(residues.par_chunks(block))
        .for_each(|(dst, src)| key.spec.inverse_into(src, dst));
    digits_to_bytes(&digits, m, len)
}
