//! Raster buffer types and the on-disk formats used by every other module.
//!
//! Supported formats are PNG (8-bit gray or RGB, plus 1-bit gray for bilevel
//! images) and the full PNM family P1–P6 with maxval 255. All round trips are
//! lossless. Bilevel files use the PBM ink convention: 1 = black = ink.

mod png_io;
mod pnm;

use std::fs::File;
use std::io::{BufReader, BufWriter, Read};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImageIoError {
    #[error("unsupported image format")]
    UnsupportedFormat,
    #[error("corrupt image file: {0}")]
    CorruptFile(String),
    #[error("unsupported bit depth or color type: {0}")]
    UnsupportedBitDepth(String),
    #[error("image kind is not representable in the requested format")]
    FormatMismatch,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// 24-bit color raster: the general color layer and source of the R/G/B planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    samples: Vec<[u8; 3]>,
}

impl RgbImage {
    /// Builds an image from row-major RGB triples; `samples` must hold
    /// exactly `width * height` entries.
    pub fn from_samples(width: u32, height: u32, samples: Vec<[u8; 3]>) -> Self {
        assert_eq!(samples.len(), width as usize * height as usize);
        Self { width, height, samples }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn samples(&self) -> &[[u8; 3]] {
        &self.samples
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        self.samples[y as usize * self.width as usize + x as usize]
    }

    /// Copies out one color plane (0 = R, 1 = G, 2 = B) in raster order.
    pub fn plane(&self, idx: usize) -> Vec<u8> {
        assert!(idx < 3);
        self.samples.iter().map(|px| px[idx]).collect()
    }

    /// Reassembles an image from three planes of matching length.
    pub fn from_planes(width: u32, height: u32, r: &[u8], g: &[u8], b: &[u8]) -> Self {
        let n = width as usize * height as usize;
        assert!(r.len() == n && g.len() == n && b.len() == n);
        let samples = (0..n).map(|i| [r[i], g[i], b[i]]).collect();
        Self { width, height, samples }
    }
}

/// 8-bit grayscale raster; carries the 3-bit layer on disk and luminance planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    samples: Vec<u8>,
}

impl GrayImage {
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
}

/// 1-bit raster: the binary special color layer and concatenated bit planes.
/// Bit value 1 means ink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiLevelImage {
    width: u32,
    height: u32,
    bits: Vec<u8>,
}

impl BiLevelImage {
    pub fn from_bits(width: u32, height: u32, bits: Vec<u8>) -> Self {
        assert_eq!(bits.len(), width as usize * height as usize);
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Self { width, height, bits }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.bits[y as usize * self.width as usize + x as usize]
    }
}

/// The result of decoding a file: whichever raster kind the contents describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyImage {
    Rgb(RgbImage),
    Gray(GrayImage),
    BiLevel(BiLevelImage),
}

/// On-disk formats accepted by [`write_image`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    Png,
    /// P1
    PbmAscii,
    /// P2
    PgmAscii,
    /// P3
    PpmAscii,
    /// P4
    PbmBinary,
    /// P5
    PgmBinary,
    /// P6
    PpmBinary,
}

/// Decodes a PNG or PNM file, detecting the format from its magic bytes.
pub fn read_image(path: impl AsRef<Path>) -> Result<AnyImage, ImageIoError> {
    let mut data = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut data)?;
    read_image_bytes(&data)
}

/// Decodes an in-memory PNG or PNM byte string.
pub fn read_image_bytes(data: &[u8]) -> Result<AnyImage, ImageIoError> {
    if data.starts_with(b"\x89PNG\r\n\x1a\n") {
        png_io::read(data)
    } else if data.len() >= 2 && data[0] == b'P' && (b'1'..=b'6').contains(&data[1]) {
        pnm::read(data)
    } else {
        Err(ImageIoError::UnsupportedFormat)
    }
}

/// Encodes an image to disk. The format must be compatible with the image
/// kind (e.g. a grayscale image cannot be written as PBM).
pub fn write_image(
    img: &AnyImage,
    path: impl AsRef<Path>,
    format: ImageFormat,
) -> Result<(), ImageIoError> {
    let bytes = encode_image(img, format)?;
    std::io::Write::write_all(&mut BufWriter::new(File::create(path)?), &bytes)?;
    Ok(())
}

/// Encodes an image into an in-memory byte string.
pub fn encode_image(img: &AnyImage, format: ImageFormat) -> Result<Vec<u8>, ImageIoError> {
    use ImageFormat::*;
    match (img, format) {
        (_, Png) => png_io::write(img),
        (AnyImage::BiLevel(b), PbmAscii) => Ok(pnm::write_pbm_ascii(b)),
        (AnyImage::BiLevel(b), PbmBinary) => Ok(pnm::write_pbm_binary(b)),
        (AnyImage::Gray(g), PgmAscii) => Ok(pnm::write_pgm_ascii(g)),
        (AnyImage::Gray(g), PgmBinary) => Ok(pnm::write_pgm_binary(g)),
        (AnyImage::Rgb(c), PpmAscii) => Ok(pnm::write_ppm_ascii(c)),
        (AnyImage::Rgb(c), PpmBinary) => Ok(pnm::write_ppm_binary(c)),
        _ => Err(ImageIoError::FormatMismatch),
    }
}
