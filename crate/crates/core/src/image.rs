// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! In-memory RGB images and patches.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Errors from image construction and region access.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageError {
    ZeroDimension,
    DataSizeMismatch { expected: usize, actual: usize },
    RegionOutOfBounds,
}

impl fmt::Display for ImageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageError::ZeroDimension => write!(f, "image dimensions must be positive"),
            ImageError::DataSizeMismatch { expected, actual } => {
                write!(f, "pixel buffer holds {actual} bytes, expected {expected}")
            }
            ImageError::RegionOutOfBounds => write!(f, "region exceeds image bounds"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ImageError {}

/// An 8-bit RGB image, row-major, three bytes per pixel.
#[derive(Clone, PartialEq, Eq)]
pub struct PixelImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl PixelImage {
    /// A black image of the given size.
    pub fn new(width: u32, height: u32) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        Ok(PixelImage {
            width,
            height,
            data: vec![0; width as usize * height as usize * 3],
        })
    }

    /// Wraps an existing RGB byte buffer.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let expected = width as usize * height as usize * 3;
        if data.len() != expected {
            return Err(ImageError::DataSizeMismatch {
                expected,
                actual: data.len(),
            });
        }
        Ok(PixelImage { width, height, data })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    fn index(&self, row: u32, col: u32) -> usize {
        (row as usize * self.width as usize + col as usize) * 3
    }

    /// RGB triple at (row, col). Panics on out-of-bounds access.
    #[inline]
    pub fn get(&self, row: u32, col: u32) -> [u8; 3] {
        assert!(row < self.height && col < self.width);
        let i = self.index(row, col);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    #[inline]
    pub fn set(&mut self, row: u32, col: u32, rgb: [u8; 3]) {
        assert!(row < self.height && col < self.width);
        let i = self.index(row, col);
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    /// Copies out the `height x width` region with top-left at (row, col).
    pub fn crop_region(
        &self,
        row: u32,
        col: u32,
        height: u32,
        width: u32,
    ) -> Result<PixelImage, ImageError> {
        if height == 0 || width == 0 {
            return Err(ImageError::ZeroDimension);
        }
        if row + height > self.height || col + width > self.width {
            return Err(ImageError::RegionOutOfBounds);
        }
        let mut data = Vec::with_capacity(height as usize * width as usize * 3);
        for r in row..row + height {
            let start = self.index(r, col);
            data.extend_from_slice(&self.data[start..start + width as usize * 3]);
        }
        PixelImage::from_raw(width, height, data)
    }

    /// Pastes `patch` with its top-left at (row, col).
    pub fn paste(&mut self, row: u32, col: u32, patch: &PixelImage) -> Result<(), ImageError> {
        if row + patch.height > self.height || col + patch.width > self.width {
            return Err(ImageError::RegionOutOfBounds);
        }
        for r in 0..patch.height {
            let src = patch.index(r, 0);
            let dst = self.index(row + r, col);
            self.data[dst..dst + patch.width as usize * 3]
                .copy_from_slice(&patch.data[src..src + patch.width as usize * 3]);
        }
        Ok(())
    }
}

impl fmt::Debug for PixelImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PixelImage({}x{})", self.width, self.height)
    }
}

/// A sub-image plus the pixel coordinates of its top-left corner within
/// the parent image. The origin keys patch identity for the simulated
/// watermark channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePatch {
    /// (row, col) of the top-left pixel within the parent image.
    pub origin: (u32, u32),
    pub pixels: PixelImage,
}

impl ImagePatch {
    pub fn new(origin: (u32, u32), pixels: PixelImage) -> Self {
        ImagePatch { origin, pixels }
    }

    pub fn height(&self) -> u32 {
        self.pixels.height()
    }

    pub fn width(&self) -> u32 {
        self.pixels.width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crop_and_paste_round_trip() {
        let mut img = PixelImage::new(8, 6).unwrap();
        for r in 0..6 {
            for c in 0..8 {
                img.set(r, c, [r as u8, c as u8, (r * c) as u8]);
            }
        }
        let region = img.crop_region(2, 3, 4, 5).unwrap();
        assert_eq!(region.get(0, 0), img.get(2, 3));
        let mut copy = PixelImage::new(8, 6).unwrap();
        copy.paste(2, 3, &region).unwrap();
        assert_eq!(copy.get(5, 7), img.get(5, 7));
    }

    #[test]
    fn bounds_are_enforced() {
        let img = PixelImage::new(4, 4).unwrap();
        assert_eq!(
            img.crop_region(2, 2, 4, 4).unwrap_err(),
            ImageError::RegionOutOfBounds
        );
        assert!(PixelImage::new(0, 4).is_err());
        assert!(PixelImage::from_raw(2, 2, vec![0; 5]).is_err());
    }
}
