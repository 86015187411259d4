//! PNM (P1–P6) codec with maxval fixed at 255.
//!
//! PBM follows the standard ink convention: 1 = black = ink. Binary variants
//! pack PBM rows MSB-first with row padding, per the format specification.

use super::{AnyImage, BiLevelImage, GrayImage, ImageIoError, RgbImage};

pub fn read(data: &[u8]) -> Result<AnyImage, ImageIoError> {
    let mut p = Parser { data, pos: 2 };
    let kind = data[1];
    let width = p.read_number()?;
    let height = p.read_number()?;
    if width == 0 || height == 0 {
        return Err(ImageIoError::CorruptFile("zero image dimension".into()));
    }
    if matches!(kind, b'2' | b'3' | b'5' | b'6') {
        let maxval = p.read_number()?;
        if maxval != 255 {
            return Err(ImageIoError::UnsupportedBitDepth(format!(
                "PNM maxval {maxval}, only 255 supported"
            )));
        }
    }
    let n = width as usize * height as usize;
    match kind {
        b'1' => {
            let mut bits = Vec::with_capacity(n);
            for _ in 0..n {
                // P1 allows the digits to run together without whitespace
                bits.push(p.read_bit_digit()?);
            }
            Ok(AnyImage::BiLevel(BiLevelImage::from_bits(width, height, bits)))
        }
        b'2' => {
            let mut samples = Vec::with_capacity(n);
            for _ in 0..n {
                samples.push(p.read_sample()?);
            }
            Ok(AnyImage::Gray(GrayImage::from_samples(width, height, samples)))
        }
        b'3' => {
            let mut samples = Vec::with_capacity(n);
            for _ in 0..n {
                samples.push([p.read_sample()?, p.read_sample()?, p.read_sample()?]);
            }
            Ok(AnyImage::Rgb(RgbImage::from_samples(width, height, samples)))
        }
        b'4' => {
            p.skip_single_whitespace()?;
            let row_bytes = (width as usize).div_ceil(8);
            let mut bits = Vec::with_capacity(n);
            for _ in 0..height {
                let row = p.take(row_bytes)?;
                for x in 0..width as usize {
                    bits.push((row[x / 8] >> (7 - x % 8)) & 1);
                }
            }
            Ok(AnyImage::BiLevel(BiLevelImage::from_bits(width, height, bits)))
        }
        b'5' => {
            p.skip_single_whitespace()?;
            let samples = p.take(n)?.to_vec();
            Ok(AnyImage::Gray(GrayImage::from_samples(width, height, samples)))
        }
        b'6' => {
            p.skip_single_whitespace()?;
            let raw = p.take(n * 3)?;
            let samples = raw.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
            Ok(AnyImage::Rgb(RgbImage::from_samples(width, height, samples)))
        }
        _ => Err(ImageIoError::UnsupportedFormat),
    }
}

struct Parser<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_space_and_comments(&mut self) -> Result<(), ImageIoError> {
        loop {
            match self.data.get(self.pos) {
                Some(b'#') => {
                    while !matches!(self.data.get(self.pos), None | Some(b'\n')) {
                        self.pos += 1;
                    }
                }
                Some(c) if c.is_ascii_whitespace() => self.pos += 1,
                _ => return Ok(()),
            }
        }
    }

    fn read_number(&mut self) -> Result<u32, ImageIoError> {
        self.skip_space_and_comments()?;
        let start = self.pos;
        while matches!(self.data.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageIoError::CorruptFile("expected number in PNM header".into()));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| ImageIoError::CorruptFile("bad number in PNM header".into()))
    }

    fn read_sample(&mut self) -> Result<u8, ImageIoError> {
        let v = self.read_number()?;
        u8::try_from(v).map_err(|_| ImageIoError::CorruptFile(format!("sample {v} exceeds maxval")))
    }

    fn read_bit_digit(&mut self) -> Result<u8, ImageIoError> {
        self.skip_space_and_comments()?;
        match self.data.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(0)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(1)
            }
            _ => Err(ImageIoError::CorruptFile("expected 0 or 1 in P1 data".into())),
        }
    }

    // Binary PNM: exactly one whitespace byte separates header from raster.
    fn skip_single_whitespace(&mut self) -> Result<(), ImageIoError> {
        match self.data.get(self.pos) {
            Some(c) if c.is_ascii_whitespace() => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ImageIoError::CorruptFile("missing separator before raster".into())),
        }
    }

    fn take(&mut self, n: usize) -> Result<&[u8], ImageIoError> {
        if self.data.len() - self.pos < n {
            return Err(ImageIoError::CorruptFile("truncated raster data".into()));
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
}

pub fn write_pbm_ascii(img: &BiLevelImage) -> Vec<u8> {
    let mut out = format!("P1\n{} {}\n", img.width(), img.height()).into_bytes();
    for row in img.bits().chunks(img.width() as usize) {
        let line: Vec<&str> = row.iter().map(|&b| if b == 1 { "1" } else { "0" }).collect();
        out.extend_from_slice(line.join(" ").as_bytes());
        out.push(b'\n');
    }
    out
}

pub fn write_pbm_binary(img: &BiLevelImage) -> Vec<u8> {
    let mut out = format!("P4\n{} {}\n", img.width(), img.height()).into_bytes();
    let row_bytes = (img.width() as usize).div_ceil(8);
    for row in img.bits().chunks(img.width() as usize) {
        let mut packed = vec![0u8; row_bytes];
        for (x, &b) in row.iter().enumerate() {
            if b == 1 {
                packed[x / 8] |= 1 << (7 - x % 8);
            }
        }
        out.extend_from_slice(&packed);
    }
    out
}

pub fn write_pgm_ascii(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P2\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    for row in img.samples().chunks(img.width() as usize) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.extend_from_slice(line.join(" ").as_bytes());
        out.push(b'\n');
    }
    out
}

pub fn write_pgm_binary(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.samples());
    out
}

pub fn write_ppm_ascii(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P3\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    for row in img.samples().chunks(img.width() as usize) {
        let line: Vec<String> =
            row.iter().flat_map(|px| px.iter().map(|v| v.to_string())).collect();
        out.extend_from_slice(line.join(" ").as_bytes());
        out.push(b'\n');
    }
    out
}

pub fn write_ppm_binary(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    for px in img.samples() {
        out.extend_from_slice(px);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_tolerates_comments_and_packed_digits() {
        let img = read(b"P1\n# comment\n4 1\n1011").unwrap();
        match img {
            AnyImage::BiLevel(b) => assert_eq!(b.bits(), &[1, 0, 1, 1]),
            _ => panic!("expected bilevel"),
        }
    }

    #[test]
    fn p4_row_padding() {
        // 9 wide: rows pad to 2 bytes
        let img = BiLevelImage::from_bits(9, 2, vec![1; 18]);
        let bytes = write_pbm_binary(&img);
        assert!(bytes.ends_with(&[0xFF, 0x80, 0xFF, 0x80]));
        assert_eq!(read(&bytes).unwrap(), AnyImage::BiLevel(img));
    }

    #[test]
    fn maxval_other_than_255_rejected() {
        assert!(matches!(
            read(b"P5\n2 2\n65535\n\0\0\0\0\0\0\0\0"),
            Err(ImageIoError::UnsupportedBitDepth(_))
        ));
    }

    #[test]
    fn truncated_raster_rejected() {
        assert!(matches!(
            read(b"P6\n2 2\n255\n\x01\x02"),
            Err(ImageIoError::CorruptFile(_))
        ));
    }

    #[test]
    fn sample_above_maxval_rejected() {
        assert!(matches!(
            read(b"P2\n1 1\n255\n300"),
            Err(ImageIoError::CorruptFile(_))
        ));
    }
}
