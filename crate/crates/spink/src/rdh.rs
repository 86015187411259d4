//! Single-channel histogram-shifting reversible data hiding.
//!
//! One embedding round works on one 8-bit plane: pick the histogram peak `pp`
//! and a zero (or lowest) point `zp`, shift every value strictly between them
//! one step toward `zp` to free the bin adjacent to `pp`, then walk the
//! peak-valued pixels in raster order and move each one step toward `zp` for a
//! payload bit of 1, leaving it in place for 0. Every pixel moves at most one
//! gray level per round, and the whole round inverts exactly given the
//! `(pp, zp)` pair and — when a lowest point stood in for a zero point — the
//! location map of the pixels that originally held that value.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RdhError {
    #[error("payload of {payload} bits exceeds round capacity of {capacity}")]
    CapacityExceeded { payload: usize, capacity: usize },
    #[error("image too small for LSB side information (width must be at least 16)")]
    ImageTooSmall,
    #[error("invalid side information: {0}")]
    InvalidSideInfo(&'static str),
    #[error("no usable zero or lowest point in histogram")]
    NoUsableZp,
}

/// One 8-bit color plane in raster order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Channel {
    width: u32,
    height: u32,
    samples: Vec<u8>,
}

impl Channel {
    pub fn from_samples(width: u32, height: u32, samples: Vec<u8>) -> Self {
        assert_eq!(samples.len(), width as usize * height as usize);
        Self { width, height, samples }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Pixel-value frequency counts with bin size 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    bins: [u64; 256],
}

impl Histogram {
    pub fn bins(&self) -> &[u64; 256] {
        &self.bins
    }

    pub fn count(&self, value: u8) -> u64 {
        self.bins[value as usize]
    }
}

/// Everything one round must remember to invert itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundRecord {
    pub pp: u8,
    pub zp: u8,
    pub used_lp: bool,
    /// Raster indices that held the lowest-point value before the shift,
    /// strictly increasing. Empty unless `used_lp`.
    pub lp_map: Vec<u32>,
    pub bits_embedded: u32,
}

/// The `(pp, zp)` pair stored in the LSBs of the first 16 bottom-row pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideInfo {
    pub pp: u8,
    pub zp: u8,
}

pub fn compute_histogram(ch: &Channel) -> Histogram {
    let mut bins = [0u64; 256];
    for &v in ch.samples() {
        bins[v as usize] += 1;
    }
    Histogram { bins }
}

/// The smallest pixel value among the maximum-frequency bins.
pub fn select_pp(h: &Histogram) -> u8 {
    let mut best = 0usize;
    for v in 1..256 {
        if h.bins[v] > h.bins[best] {
            best = v;
        }
    }
    best as u8
}

/// Picks the zero point: the empty bin nearest `pp` (ties broken toward the
/// larger value), or, when every bin is occupied, the lowest-frequency bin
/// (ties broken toward the smaller value). The returned flag is true when a
/// lowest point had to stand in for a zero point.
pub fn select_zp(h: &Histogram, pp: u8) -> Result<(u8, bool), RdhError> {
    let mut nearest_empty: Option<u8> = None;
    for v in 0..256usize {
        if v as u8 == pp || h.bins[v] != 0 {
            continue;
        }
        let better = match nearest_empty {
            None => true,
            Some(cur) => {
                let (dc, dv) = (dist(cur, pp), dist(v as u8, pp));
                dv < dc || (dv == dc && v as u8 > cur)
            }
        };
        if better {
            nearest_empty = Some(v as u8);
        }
    }
    if let Some(zp) = nearest_empty {
        return Ok((zp, false));
    }
    let mut lp: Option<u8> = None;
    for v in 0..256usize {
        if v as u8 == pp {
            continue;
        }
        if lp.is_none() || h.bins[v] < h.bins[lp.unwrap() as usize] {
            lp = Some(v as u8);
        }
    }
    lp.map(|v| (v, true)).ok_or(RdhError::NoUsableZp)
}

fn dist(a: u8, b: u8) -> u8 {
    a.abs_diff(b)
}

/// The number of payload bits one round can carry.
pub fn round_capacity(h: &Histogram) -> u64 {
    h.count(select_pp(h))
}

/// Runs one embedding round. The payload may be shorter than the capacity;
/// unvisited peak pixels read back as padding zeros on extraction.
pub fn shift_and_embed(
    ch: &Channel,
    pp: u8,
    zp: u8,
    used_lp: bool,
    payload_bits: &[bool],
) -> Result<(Channel, RoundRecord), RdhError> {
    if pp == zp {
        return Err(RdhError::InvalidSideInfo("pp equals zp"));
    }
    let capacity = ch.samples().iter().filter(|&&v| v == pp).count();
    if payload_bits.len() > capacity {
        return Err(RdhError::CapacityExceeded { payload: payload_bits.len(), capacity });
    }

    let lp_map: Vec<u32> = if used_lp {
        ch.samples()
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == zp)
            .map(|(i, _)| i as u32)
            .collect()
    } else {
        debug_assert_eq!(ch.samples().iter().filter(|&&v| v == zp).count(), 0);
        Vec::new()
    };

    let mut samples = ch.samples().to_vec();
    let (lo, hi) = (pp.min(zp), pp.max(zp));
    let toward_zp: i16 = if pp < zp { 1 } else { -1 };
    // Free the bin next to pp by shifting the open interval one step toward zp.
    for v in samples.iter_mut() {
        if *v > lo && *v < hi {
            *v = (*v as i16 + toward_zp) as u8;
        }
    }
    // Peak pixels carry the bits in raster order: 1 moves, 0 stays.
    let mut bit_iter = payload_bits.iter();
    for v in samples.iter_mut() {
        if *v == pp {
            match bit_iter.next() {
                Some(true) => *v = (*v as i16 + toward_zp) as u8,
                Some(false) => {}
                None => break,
            }
        }
    }

    let record = RoundRecord {
        pp,
        zp,
        used_lp,
        lp_map,
        bits_embedded: capacity as u32,
    };
    Ok((Channel::from_samples(ch.width, ch.height, samples), record))
}

/// Inverts one round: reads the payload back from the peak and its emptied
/// neighbor, then undoes the shift, skipping pixels the location map marks as
/// original lowest-point occupants.
pub fn extract_and_unshift(
    ch: &Channel,
    pp: u8,
    zp: u8,
    used_lp: bool,
    lp_map: &[u32],
) -> Result<(Channel, Vec<bool>), RdhError> {
    if pp == zp {
        return Err(RdhError::InvalidSideInfo("pp equals zp"));
    }
    if lp_map.windows(2).any(|w| w[0] >= w[1])
        || lp_map.last().is_some_and(|&i| i as usize >= ch.len())
    {
        return Err(RdhError::InvalidSideInfo("malformed lp location map"));
    }
    let toward_zp: i16 = if pp < zp { 1 } else { -1 };
    let adj = (pp as i16 + toward_zp) as u8;
    let in_lp_map = |i: usize| used_lp && lp_map.binary_search(&(i as u32)).is_ok();

    // When zp sits right next to pp, original lowest-point pixels share the
    // bit-1 value; the location map tells them apart from payload pixels.
    let mut bits = Vec::new();
    for (i, &v) in ch.samples().iter().enumerate() {
        if v == adj && adj == zp && in_lp_map(i) {
            continue;
        }
        if v == pp {
            bits.push(false);
        } else if v == adj {
            bits.push(true);
        }
    }

    let mut samples = ch.samples().to_vec();
    for (i, v) in samples.iter_mut().enumerate() {
        let in_interval = if pp < zp { *v > pp && *v <= zp } else { *v >= zp && *v < pp };
        if in_interval && !(*v == zp && in_lp_map(i)) {
            *v = (*v as i16 - toward_zp) as u8;
        }
    }
    Ok((Channel::from_samples(ch.width, ch.height, samples), bits))
}

/// Writes `pp` then `zp` MSB-first into the LSBs of the first 16 pixels of the
/// bottom row, returning the 16 displaced LSBs for inclusion in the payload.
pub fn write_lsb_sideinfo(ch: &Channel, info: SideInfo) -> Result<(Channel, [bool; 16]), RdhError> {
    if ch.width < 16 || ch.height == 0 {
        return Err(RdhError::ImageTooSmall);
    }
    let base = (ch.height as usize - 1) * ch.width as usize;
    let mut samples = ch.samples().to_vec();
    let mut original = [false; 16];
    let packed = ((info.pp as u16) << 8) | info.zp as u16;
    for k in 0..16 {
        let px = &mut samples[base + k];
        original[k] = *px & 1 == 1;
        *px = (*px & !1) | ((packed >> (15 - k)) & 1) as u8;
    }
    Ok((Channel::from_samples(ch.width, ch.height, samples), original))
}

/// Reads back the `(pp, zp)` pair placed by [`write_lsb_sideinfo`].
pub fn read_lsb_sideinfo(ch: &Channel) -> Result<SideInfo, RdhError> {
    if ch.width < 16 || ch.height == 0 {
        return Err(RdhError::ImageTooSmall);
    }
    let base = (ch.height as usize - 1) * ch.width as usize;
    let mut packed = 0u16;
    for k in 0..16 {
        packed = (packed << 1) | (ch.samples()[base + k] & 1) as u16;
    }
    Ok(SideInfo { pp: (packed >> 8) as u8, zp: (packed & 0xFF) as u8 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ch(samples: &[u8]) -> Channel {
        Channel::from_samples(samples.len() as u32, 1, samples.to_vec())
    }

    #[test]
    fn histogram_counts() {
        let h = compute_histogram(&ch(&[5, 5, 7]));
        assert_eq!(h.count(5), 2);
        assert_eq!(h.count(7), 1);
        assert_eq!(h.bins().iter().sum::<u64>(), 3);

        assert_eq!(compute_histogram(&ch(&[0])).count(0), 1);
        assert_eq!(compute_histogram(&ch(&[255; 4])).count(255), 4);
    }

    #[test]
    fn pp_is_smallest_peak() {
        let mut samples = vec![5u8; 3];
        samples.extend_from_slice(&[9, 9, 9, 2]);
        assert_eq!(select_pp(&compute_histogram(&ch(&samples))), 5);

        assert_eq!(select_pp(&compute_histogram(&ch(&[0; 10]))), 0);

        // all bins tied
        let uniform: Vec<u8> = (0..=255).collect();
        assert_eq!(select_pp(&compute_histogram(&ch(&uniform))), 0);
    }

    #[test]
    fn pp_invariant_under_permutation() {
        let samples = [3u8, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5];
        let mut shuffled = samples;
        shuffled.reverse();
        assert_eq!(
            select_pp(&compute_histogram(&ch(&samples))),
            select_pp(&compute_histogram(&ch(&shuffled)))
        );
    }

    /// Enumeration oracle: nearest empty bin with ties broken upward.
    fn nearest_empty_oracle(h: &Histogram, pp: u8) -> Option<u8> {
        let empties: Vec<u8> =
            (0..=255u8).filter(|&v| v != pp && h.count(v) == 0).collect();
        empties.into_iter().min_by_key(|&v| (v.abs_diff(pp), 255 - v))
    }

    #[test]
    fn zp_adjacent_tie_breaks_upward() {
        let h = compute_histogram(&ch(&[5, 5, 5]));
        assert_eq!(nearest_empty_oracle(&h, 5), Some(6));
        assert_eq!(select_zp(&h, 5).unwrap(), (6, false));
    }

    #[test]
    fn zp_nearest_empty_bin() {
        // occupy 0..200, leave 200..=255 empty
        let mut samples: Vec<u8> = (0..200u8).collect();
        samples.extend(0..200u8);
        let h = compute_histogram(&ch(&samples));
        assert_eq!(nearest_empty_oracle(&h, 10), Some(200));
        assert_eq!(select_zp(&h, 10).unwrap(), (200, false));
    }

    #[test]
    fn zp_falls_back_to_lowest_point() {
        // every bin occupied, one copy each, except value 5 (three) and 77 staying at one
        let mut samples: Vec<u8> = (0..=255u8).flat_map(|v| [v, v]).collect();
        samples.retain(|&v| v != 77 || samples_seen(&samples, v) < 1);
        // simpler: rebuild explicitly
        let mut samples: Vec<u8> = Vec::new();
        for v in 0..=255u8 {
            samples.push(v);
            if v != 77 {
                samples.push(v);
            }
        }
        samples.extend_from_slice(&[5, 5]);
        let h = compute_histogram(&ch(&samples));
        // argmin oracle over occupied bins
        let lp = (0..=255u8)
            .filter(|&v| v != 5)
            .min_by_key(|&v| (h.count(v), v))
            .unwrap();
        assert_eq!(lp, 77);
        assert_eq!(select_zp(&h, 5).unwrap(), (77, true));
    }

    fn samples_seen(samples: &[u8], v: u8) -> usize {
        samples.iter().filter(|&&s| s == v).count()
    }

    #[test]
    fn zp_never_returns_pp_on_flat_histogram() {
        let uniform: Vec<u8> = (0..=255).collect();
        let h = compute_histogram(&ch(&uniform));
        let (zp, used_lp) = select_zp(&h, 0).unwrap();
        assert!(used_lp);
        assert_eq!(zp, 1);
    }

    #[test]
    fn capacity_is_peak_population() {
        let h = compute_histogram(&ch(&[5, 5, 5, 7]));
        assert_eq!(round_capacity(&h), 3);
        assert_eq!(round_capacity(&compute_histogram(&ch(&[9; 16]))), 16);
        let uniform: Vec<u8> = (0..=255).flat_map(|v| [v, v, v]).collect();
        assert_eq!(round_capacity(&compute_histogram(&ch(&uniform))), 3);
    }

    #[test]
    fn embed_moves_peak_pixels_for_one_bits() {
        let (marked, rec) =
            shift_and_embed(&ch(&[5, 5, 7, 9]), 5, 6, false, &[true, false]).unwrap();
        assert_eq!(marked.samples(), &[6, 5, 7, 9]);
        assert_eq!(rec.bits_embedded, 2);
        assert!(rec.lp_map.is_empty());
    }

    #[test]
    fn embed_shifts_open_interval() {
        let (marked, _) = shift_and_embed(&ch(&[5, 6, 8]), 5, 8, false, &[false]).unwrap();
        assert_eq!(marked.samples(), &[5, 7, 8]);
    }

    #[test]
    fn embed_downward_direction() {
        let (marked, _) = shift_and_embed(&ch(&[9, 7]), 9, 6, false, &[true]).unwrap();
        assert_eq!(marked.samples(), &[8, 7]);
    }

    #[test]
    fn embed_rejects_oversized_payload() {
        let err = shift_and_embed(&ch(&[5, 7]), 5, 6, false, &[true, true]).unwrap_err();
        assert_eq!(err, RdhError::CapacityExceeded { payload: 2, capacity: 1 });
    }

    #[test]
    fn extract_inverts_embed_examples() {
        let (restored, bits) = extract_and_unshift(&ch(&[6, 5, 7, 9]), 5, 6, false, &[]).unwrap();
        assert_eq!(restored.samples(), &[5, 5, 7, 9]);
        assert_eq!(bits, vec![true, false]);

        let (restored, bits) = extract_and_unshift(&ch(&[5, 7, 8]), 5, 8, false, &[]).unwrap();
        assert_eq!(restored.samples(), &[5, 6, 8]);
        assert_eq!(bits, vec![false]);
    }

    #[test]
    fn lp_pixels_survive_round_trip() {
        let original = ch(&[3, 5, 5]);
        let (marked, rec) = shift_and_embed(&original, 5, 3, true, &[true, false]).unwrap();
        assert_eq!(marked.samples(), &[3, 4, 5]);
        assert_eq!(rec.lp_map, vec![0]);
        let (restored, bits) = extract_and_unshift(&marked, 5, 3, true, &rec.lp_map).unwrap();
        assert_eq!(restored, original);
        assert_eq!(bits, vec![true, false]);
    }

    #[test]
    fn lp_adjacent_to_pp_disambiguated_by_map() {
        // zp == pp - 1: payload-1 pixels and original lowest-point pixels
        // share a value after embedding
        let original = ch(&[4, 5, 5, 4]);
        let (marked, rec) = shift_and_embed(&original, 5, 4, true, &[true, false]).unwrap();
        assert_eq!(marked.samples(), &[4, 4, 5, 4]);
        assert_eq!(rec.lp_map, vec![0, 3]);
        let (restored, bits) = extract_and_unshift(&marked, 5, 4, true, &rec.lp_map).unwrap();
        assert_eq!(restored, original);
        assert_eq!(bits, vec![true, false]);
    }

    #[test]
    fn extract_rejects_degenerate_sideinfo() {
        assert!(matches!(
            extract_and_unshift(&ch(&[1, 2]), 3, 3, false, &[]),
            Err(RdhError::InvalidSideInfo(_))
        ));
    }

    #[test]
    fn sideinfo_bit_layout() {
        let bottom = Channel::from_samples(16, 1, vec![0xFF; 16]);
        let (marked, original) =
            write_lsb_sideinfo(&bottom, SideInfo { pp: 0x05, zp: 0x03 }).unwrap();
        let lsbs: Vec<u8> = marked.samples().iter().map(|v| v & 1).collect();
        assert_eq!(lsbs, [0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1]);
        assert_eq!(original, [true; 16]);
        assert_eq!(read_lsb_sideinfo(&marked).unwrap(), SideInfo { pp: 5, zp: 3 });
    }

    #[test]
    fn sideinfo_extreme_values() {
        let bottom = Channel::from_samples(16, 2, vec![0u8; 32]);
        let (marked, _) = write_lsb_sideinfo(&bottom, SideInfo { pp: 0, zp: 255 }).unwrap();
        let lsbs: Vec<u8> = marked.samples()[16..].iter().map(|v| v & 1).collect();
        assert_eq!(lsbs, [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(read_lsb_sideinfo(&marked).unwrap(), SideInfo { pp: 0, zp: 255 });
    }

    #[test]
    fn sideinfo_requires_width_16() {
        let small = Channel::from_samples(8, 1, vec![0; 8]);
        assert_eq!(
            write_lsb_sideinfo(&small, SideInfo { pp: 1, zp: 2 }).unwrap_err(),
            RdhError::ImageTooSmall
        );
        assert_eq!(read_lsb_sideinfo(&small).unwrap_err(), RdhError::ImageTooSmall);
    }

    proptest! {
        /// Reversibility over arbitrary channels, including forced-LP cases.
        #[test]
        fn round_trip_identity(
            samples in proptest::collection::vec(0u8..=255, 1..400),
            payload_seed in any::<u64>(),
            force_full in any::<bool>(),
        ) {
            let mut samples = samples;
            if force_full {
                // occupy every bin so the lowest point must stand in
                samples.extend(0..=255u8);
            }
            let channel = ch(&samples);
            let h = compute_histogram(&channel);
            let pp = select_pp(&h);
            let (zp, used_lp) = select_zp(&h, pp).unwrap();
            prop_assert_eq!(used_lp, force_full || (0..=255u8).all(|v| h.count(v) > 0));

            let capacity = h.count(pp) as usize;
            let mut state = payload_seed;
            let payload: Vec<bool> = (0..capacity).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                state >> 63 == 1
            }).collect();

            let (marked, rec) = shift_and_embed(&channel, pp, zp, used_lp, &payload).unwrap();
            for (a, b) in channel.samples().iter().zip(marked.samples()) {
                prop_assert!(a.abs_diff(*b) <= 1);
            }
            let (restored, bits) = extract_and_unshift(&marked, pp, zp, used_lp, &rec.lp_map).unwrap();
            prop_assert_eq!(&restored, &channel);
            prop_assert_eq!(bits, payload);
        }

        /// Bits shorter than capacity read back zero-padded, in raster order.
        #[test]
        fn padding_and_order(
            samples in proptest::collection::vec(0u8..=7, 4..64),
            take in 0usize..8,
        ) {
            let channel = ch(&samples);
            let h = compute_histogram(&channel);
            let pp = select_pp(&h);
            let (zp, used_lp) = select_zp(&h, pp).unwrap();
            let capacity = h.count(pp) as usize;
            let payload: Vec<bool> = (0..take.min(capacity)).map(|i| i % 2 == 0).collect();
            let (marked, rec) = shift_and_embed(&channel, pp, zp, used_lp, &payload).unwrap();
            let (_, bits) = extract_and_unshift(&marked, pp, zp, used_lp, &rec.lp_map).unwrap();
            prop_assert_eq!(bits.len(), capacity);
            let mut expected = payload.clone();
            expected.resize(capacity, false);
            prop_assert_eq!(bits, expected);
        }
    }
}
