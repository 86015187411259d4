//! Bit-sequence helpers shared by the container and pipeline.
//!
//! Bit streams are MSB-first within bytes throughout the payload format.

/// Unpacks bytes into bits, most significant bit of each byte first.
pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    let mut out = Vec::with_capacity(bytes.len() * 8);
    for &b in bytes {
        for shift in (0..8).rev() {
            out.push((b >> shift) & 1 == 1);
        }
    }
    out
}

/// Packs bits into bytes MSB-first, zero-padding the final byte.
pub fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    let mut out = vec![0u8; bits.len().div_ceil(8)];
    for (i, &bit) in bits.iter().enumerate() {
        if bit {
            out[i / 8] |= 1 << (7 - i % 8);
        }
    }
    out
}

/// Appends the `n` low bits of `value`, most significant first.
pub fn push_uint(bits: &mut Vec<bool>, value: u64, n: u32) {
    for shift in (0..n).rev() {
        bits.push((value >> shift) & 1 == 1);
    }
}

/// Reads bits as an MSB-first unsigned integer. Returns `None` on underrun.
pub fn read_uint(bits: &[bool], pos: &mut usize, n: u32) -> Option<u64> {
    if bits.len() - *pos < n as usize {
        return None;
    }
    let mut v = 0u64;
    for _ in 0..n {
        v = (v << 1) | bits[*pos] as u64;
        *pos += 1;
    }
    Some(v)
}
