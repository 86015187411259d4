//! PNG codec limited to the raster kinds this crate works with: 8-bit RGB,
//! 8-bit grayscale, and 1-bit grayscale for bilevel layers (0 = black = ink).
//! Alpha, palettes, and 16-bit depths are rejected rather than converted so
//! that the embedding pipeline never sees silently transformed pixels.

use super::{AnyImage, BiLevelImage, GrayImage, ImageIoError, RgbImage};

pub fn read(data: &[u8]) -> Result<AnyImage, ImageIoError> {
    let decoder = png::Decoder::new(data);
    let mut reader = decoder
        .read_info()
        .map_err(|e| ImageIoError::CorruptFile(e.to_string()))?;
    let info = reader.info();
    let (color, depth) = (info.color_type, info.bit_depth);
    let (width, height) = (info.width, info.height);
    match (color, depth) {
        (png::ColorType::Rgb, png::BitDepth::Eight)
        | (png::ColorType::Grayscale, png::BitDepth::Eight)
        | (png::ColorType::Grayscale, png::BitDepth::One) => {}
        _ => {
            return Err(ImageIoError::UnsupportedBitDepth(format!(
                "PNG {color:?}/{depth:?}, only 8-bit gray, 8-bit RGB, 1-bit gray supported"
            )))
        }
    }
    let mut buf = vec![0u8; reader.output_buffer_size()];
    let out = reader
        .next_frame(&mut buf)
        .map_err(|e| ImageIoError::CorruptFile(e.to_string()))?;
    buf.truncate(out.buffer_size());
    match (color, depth) {
        (png::ColorType::Rgb, _) => {
            let samples = buf.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
            Ok(AnyImage::Rgb(RgbImage::from_samples(width, height, samples)))
        }
        (png::ColorType::Grayscale, png::BitDepth::Eight) => {
            Ok(AnyImage::Gray(GrayImage::from_samples(width, height, buf)))
        }
        _ => {
            // 1-bit rows are packed MSB-first; black (0) is ink (1)
            let row_bytes = (width as usize).div_ceil(8);
            let mut bits = Vec::with_capacity(width as usize * height as usize);
            for row in buf.chunks_exact(row_bytes) {
                for x in 0..width as usize {
                    let white = (row[x / 8] >> (7 - x % 8)) & 1;
                    bits.push(1 - white);
                }
            }
            Ok(AnyImage::BiLevel(BiLevelImage::from_bits(width, height, bits)))
        }
    }
}

pub fn write(img: &AnyImage) -> Result<Vec<u8>, ImageIoError> {
    let mut out = Vec::new();
    let (width, height, color, depth, data) = match img {
        AnyImage::Rgb(c) => {
            let data: Vec<u8> = c.samples().iter().flatten().copied().collect();
            (c.width(), c.height(), png::ColorType::Rgb, png::BitDepth::Eight, data)
        }
        AnyImage::Gray(g) => (
            g.width(),
            g.height(),
            png::ColorType::Grayscale,
            png::BitDepth::Eight,
            g.samples().to_vec(),
        ),
        AnyImage::BiLevel(b) => {
            let row_bytes = (b.width() as usize).div_ceil(8);
            let mut data = vec![0u8; row_bytes * b.height() as usize];
            for (y, row) in b.bits().chunks(b.width() as usize).enumerate() {
                for (x, &bit) in row.iter().enumerate() {
                    if bit == 0 {
                        // no ink -> white
                        data[y * row_bytes + x / 8] |= 1 << (7 - x % 8);
                    }
                }
            }
            (b.width(), b.height(), png::ColorType::Grayscale, png::BitDepth::One, data)
        }
    };
    {
        let mut encoder = png::Encoder::new(&mut out, width, height);
        encoder.set_color(color);
        encoder.set_depth(depth);
        let mut writer = encoder
            .write_header()
            .map_err(|e| ImageIoError::CorruptFile(e.to_string()))?;
        writer
            .write_image_data(&data)
            .map_err(|e| ImageIoError::CorruptFile(e.to_string()))?;
    }
    Ok(out)
}
