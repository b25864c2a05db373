//! Pan-sharpening toolkit: statistical edge-guided LMMSE interpolation,
//! IHS fusion, reduced-reference SSIM quality assessment, synthetic scene
//! generation, and TIFF/PNG raster I/O.
//!
//! The crate is organized around small pure functions over normalized
//! [`raster::ImageGrid`] values:
//!
//! - [`raster`]: grid containers, band metadata, normalization
//! - [`interp`]: LMMSE 2x doubling and classical resamplers
//! - [`color`]: hexcone RGB/HSV conversions
//! - [`fusion`]: IHS intensity substitution
//! - [`qa`]: global SSIM and similarity reports
//! - [`synth`]: seeded scenes and Wald-protocol degradation
//! - [`io`]: TIFF/PNG decode and encode with opaque geo pass-through

pub mod color;
pub mod error;
pub mod fusion;
pub mod interp;
pub mod io;
pub mod qa;
pub mod raster;
pub mod synth;

pub use error::{Error, Result};
