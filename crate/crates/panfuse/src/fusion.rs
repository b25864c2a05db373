//! IHS pan-sharpening: swap the intensity of an upsampled multispectral
//! image for the panchromatic band.
//!
//! The multispectral triplet is decomposed per pixel into HSV. Hue is a
//! circular quantity, so it travels through interpolation as a unit-circle
//! embedding: cosine and sine planes affinely mapped into [0, 1]. Hue and
//! saturation planes are doubled with the configured interpolator, the
//! value plane is replaced by the panchromatic band (optionally moment
//! matched), and the result converts back to RGB.

use crate::color::{hsv_to_rgb, rgb_to_hsv, HsvPixel, RgbPixel};
use crate::error::{Error, Result};
use crate::interp::{upscale2x, InterpolatorKind};
use crate::raster::{ImageGrid, MultibandImage};

/// Pan-variance floor below which the pan band counts as constant.
const EPS_STD: f64 = 1e-12;

/// One fusion request: co-registered inputs plus policy knobs.
#[derive(Debug, Clone)]
pub struct FusionJob {
    /// Exactly the R, G, B bands, in that order.
    pub ms: MultibandImage,
    /// Panchromatic band at exactly twice the MS dimensions.
    pub pan: ImageGrid,
    pub interpolator: InterpolatorKind,
    /// When set, the pan band is affinely matched to the upsampled
    /// intensity's mean and standard deviation before substitution.
    pub pan_match: bool,
}

/// Record of what produced a fused image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionProvenance {
    pub interpolator: InterpolatorKind,
    pub pan_match: bool,
    pub ms_dims: (usize, usize),
    pub pan_dims: (usize, usize),
}

/// Pan-sharpened RGB triplet at pan resolution.
#[derive(Debug, Clone)]
pub struct FusedImage {
    pub r: ImageGrid,
    pub g: ImageGrid,
    pub b: ImageGrid,
    pub provenance: FusionProvenance,
}

impl FusedImage {
    pub fn dimensions(&self) -> (usize, usize) {
        self.r.dimensions()
    }
}

/// Affine radiometric match: rescales `pan` to the mean and standard
/// deviation of `intensity`, clamping into [0, 1]. A constant pan band
/// carries no structure to rescale and collapses to the intensity mean.
pub fn match_pan(pan: &ImageGrid, intensity: &ImageGrid) -> Result<ImageGrid> {
    if pan.dimensions() != intensity.dimensions() {
        return Err(Error::DimensionMismatch {
            context: "pan and intensity must share a shape for moment matching",
            expected: intensity.dimensions(),
            actual: pan.dimensions(),
        });
    }
    let mean_p = pan.mean();
    let std_p = pan.std_dev();
    let mean_i = intensity.mean();
    let std_i = intensity.std_dev();
    let (h, w) = pan.dimensions();
    if std_p < EPS_STD {
        return ImageGrid::constant(h, w, mean_i.clamp(0.0, 1.0));
    }
    let gain = std_i / std_p;
    let data = pan
        .as_slice()
        .iter()
        .map(|&v| (mean_i + (v - mean_p) * gain).clamp(0.0, 1.0))
        .collect();
    Ok(ImageGrid::from_vec_unchecked(h, w, data))
}

/// Runs the four-step IHS pipeline and returns the sharpened triplet.
pub fn ihs_fuse(job: &FusionJob) -> Result<FusedImage> {
    let [r, g, b] = job.ms.rgb()?;
    let (mh, mw) = job.ms.dimensions();
    let expected = (2 * mh, 2 * mw);
    if job.pan.dimensions() != expected {
        return Err(Error::DimensionMismatch {
            context: "pan band must be exactly twice the MS dimensions",
            expected,
            actual: job.pan.dimensions(),
        });
    }

    // Decompose to HSV planes; hue becomes two planes on the unit circle,
    // mapped into [0, 1] so they are valid grids. The map is affine and all
    // interpolators here commute with affine maps, so interpolating the
    // embedded planes interpolates the cosine/sine pair itself.
    let n = mh * mw;
    let mut hcos = Vec::with_capacity(n);
    let mut hsin = Vec::with_capacity(n);
    let mut sat = Vec::with_capacity(n);
    let mut val = Vec::with_capacity(n);
    for ((rv, gv), bv) in r.as_slice().iter().zip(g.as_slice()).zip(b.as_slice()) {
        let hsv = rgb_to_hsv(RgbPixel { r: *rv, g: *gv, b: *bv });
        let rad = hsv.h.to_radians();
        hcos.push((rad.cos() + 1.0) / 2.0);
        hsin.push((rad.sin() + 1.0) / 2.0);
        sat.push(hsv.s);
        val.push(hsv.v);
    }
    let hcos = ImageGrid::from_vec_unchecked(mh, mw, hcos);
    let hsin = ImageGrid::from_vec_unchecked(mh, mw, hsin);
    let sat = ImageGrid::from_vec_unchecked(mh, mw, sat);

    let hcos_up = upscale2x(&hcos, job.interpolator)?;
    let hsin_up = upscale2x(&hsin, job.interpolator)?;
    let sat_up = upscale2x(&sat, job.interpolator)?;

    // Intensity substitution: the value plane is the pan band, optionally
    // matched to the moments the upsampled MS intensity would have had.
    let value_plane = if job.pan_match {
        let val = ImageGrid::from_vec_unchecked(mh, mw, val);
        let val_up = upscale2x(&val, job.interpolator)?;
        match_pan(&job.pan, &val_up)?
    } else {
        job.pan.clone()
    };

    let (oh, ow) = expected;
    let mut out_r = Vec::with_capacity(oh * ow);
    let mut out_g = Vec::with_capacity(oh * ow);
    let mut out_b = Vec::with_capacity(oh * ow);
    for idx in 0..oh * ow {
        let ch = 2.0 * hcos_up.as_slice()[idx] - 1.0;
        let sh = 2.0 * hsin_up.as_slice()[idx] - 1.0;
        let h = sh.atan2(ch).to_degrees();
        let rgb = hsv_to_rgb(HsvPixel {
            h,
            s: sat_up.as_slice()[idx],
            v: value_plane.as_slice()[idx],
        });
        out_r.push(rgb.r);
        out_g.push(rgb.g);
        out_b.push(rgb.b);
    }

    Ok(FusedImage {
        r: ImageGrid::from_vec_unchecked(oh, ow, out_r),
        g: ImageGrid::from_vec_unchecked(oh, ow, out_g),
        b: ImageGrid::from_vec_unchecked(oh, ow, out_b),
        provenance: FusionProvenance {
            interpolator: job.interpolator,
            pan_match: job.pan_match,
            ms_dims: (mh, mw),
            pan_dims: expected,
        },
    })
}
