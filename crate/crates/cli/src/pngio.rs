// Copyright (c) 2026 sigmark contributors
// SPDX-License-Identifier: Apache-2.0

//! PNG input/output. Lossless, so LSB payloads survive disk round trips.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use image::{ImageFormat, ImageReader, RgbImage};

use sigmark_core::image::PixelImage;

pub fn load_png(path: &Path) -> Result<PixelImage> {
    let dynamic = ImageReader::open(path)
        .with_context(|| format!("opening {}", path.display()))?
        .decode()
        .with_context(|| format!("decoding {}", path.display()))?;
    let rgb = dynamic.to_rgb8();
    let (width, height) = rgb.dimensions();
    PixelImage::from_raw(width, height, rgb.into_raw())
        .map_err(|e| anyhow!("invalid image data: {e}"))
}

pub fn save_png(path: &Path, image: &PixelImage) -> Result<()> {
    let rgb = RgbImage::from_raw(image.width(), image.height(), image.data().to_vec())
        .expect("buffer size matches dimensions");
    rgb.save_with_format(path, ImageFormat::Png)
        .with_context(|| format!("writing {}", path.display()))
}
