//! Hexcone RGB/HSV conversions used by the IHS fusion step.
//!
//! Hue is measured in degrees on [0, 360) with 0 canonical for achromatic
//! pixels, saturation and value live in [0, 1]. Both directions clamp their
//! outputs so accumulated floating-point noise can never leak out-of-range
//! channels into downstream grids.

/// RGB triple with channels in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgbPixel {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

/// HSV triple: hue in degrees [0, 360), saturation and value in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsvPixel {
    pub h: f64,
    pub s: f64,
    pub v: f64,
}

/// Hexcone RGB -> HSV.
///
/// Value is the channel maximum, saturation the normalized chroma, and the
/// hue sector follows which channel holds the max. Black and gray pixels
/// (zero chroma) report hue 0 and, for black, saturation 0.
pub fn rgb_to_hsv(p: RgbPixel) -> HsvPixel {
    let r = p.r.clamp(0.0, 1.0);
    let g = p.g.clamp(0.0, 1.0);
    let b = p.b.clamp(0.0, 1.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;

    let v = max;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta <= 0.0 {
        0.0
    } else if max == r {
        60.0 * ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    HsvPixel {
        h: h.rem_euclid(360.0),
        s,
        v,
    }
}

/// Hexcone HSV -> RGB; accepts any finite hue and wraps it onto [0, 360).
pub fn hsv_to_rgb(p: HsvPixel) -> RgbPixel {
    let h = p.h.rem_euclid(360.0);
    let s = p.s.clamp(0.0, 1.0);
    let v = p.v.clamp(0.0, 1.0);

    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    RgbPixel {
        r: (r1 + m).clamp(0.0, 1.0),
        g: (g1 + m).clamp(0.0, 1.0),
        b: (b1 + m).clamp(0.0, 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn frozen_example_round_trips() {
        let hsv = rgb_to_hsv(RgbPixel { r: 0.2, g: 0.4, b: 0.6 });
        assert!(close(hsv.h, 210.0, 1e-12), "h = {}", hsv.h);
        assert!(close(hsv.s, 2.0 / 3.0, 1e-12));
        assert!(close(hsv.v, 0.6, 1e-12));
        let rgb = hsv_to_rgb(hsv);
        assert!(close(rgb.r, 0.2, 1e-12));
        assert!(close(rgb.g, 0.4, 1e-12));
        assert!(close(rgb.b, 0.6, 1e-12));
    }

    #[test]
    fn primaries_hit_cardinal_hues() {
        assert_eq!(rgb_to_hsv(RgbPixel { r: 1.0, g: 0.0, b: 0.0 }).h, 0.0);
        assert_eq!(rgb_to_hsv(RgbPixel { r: 0.0, g: 1.0, b: 0.0 }).h, 120.0);
        assert_eq!(rgb_to_hsv(RgbPixel { r: 0.0, g: 0.0, b: 1.0 }).h, 240.0);
    }

    #[test]
    fn achromatic_pixels_are_canonical() {
        let gray = rgb_to_hsv(RgbPixel { r: 0.5, g: 0.5, b: 0.5 });
        assert_eq!((gray.h, gray.s, gray.v), (0.0, 0.0, 0.5));
        let black = rgb_to_hsv(RgbPixel { r: 0.0, g: 0.0, b: 0.0 });
        assert_eq!((black.h, black.s, black.v), (0.0, 0.0, 0.0));
        let white = rgb_to_hsv(RgbPixel { r: 1.0, g: 1.0, b: 1.0 });
        assert_eq!((white.h, white.s, white.v), (0.0, 0.0, 1.0));
    }

    #[test]
    fn negative_sector_wraps_into_range() {
        // max == r with g < b lands in the negative branch before wrapping.
        let hsv = rgb_to_hsv(RgbPixel { r: 1.0, g: 0.0, b: 0.5 });
        assert!(hsv.h >= 330.0 && hsv.h < 360.0, "h = {}", hsv.h);
    }

    #[test]
    fn hue_accepts_wrapped_input() {
        let a = hsv_to_rgb(HsvPixel { h: 390.0, s: 0.5, v: 0.8 });
        let b = hsv_to_rgb(HsvPixel { h: 30.0, s: 0.5, v: 0.8 });
        assert!(close(a.r, b.r, 1e-12) && close(a.g, b.g, 1e-12) && close(a.b, b.b, 1e-12));
    }

    #[test]
    fn value_is_channel_max_after_round_trip() {
        let rgb = hsv_to_rgb(HsvPixel { h: 77.3, s: 0.41, v: 0.63 });
        assert!(close(rgb.r.max(rgb.g).max(rgb.b), 0.63, 1e-12));
    }

    proptest! {
        #[test]
        fn round_trip_is_tight(r in 0.0f64..=1.0, g in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let back = hsv_to_rgb(rgb_to_hsv(RgbPixel { r, g, b }));
            prop_assert!(close(back.r, r, 1e-9) && close(back.g, g, 1e-9) && close(back.b, b, 1e-9),
                "({r},{g},{b}) -> ({},{},{})", back.r, back.g, back.b);
        }

        #[test]
        fn channel_rotation_shifts_hue_120(r in 0.0f64..=1.0, g in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let base = rgb_to_hsv(RgbPixel { r, g, b });
            prop_assume!(base.s > 1e-6);
            let rotated = rgb_to_hsv(RgbPixel { r: b, g: r, b: g });
            let diff = (rotated.h - base.h).rem_euclid(360.0);
            prop_assert!(close(diff, 120.0, 1e-6), "diff = {diff}");
        }

        #[test]
        fn outputs_always_in_range(h in -720.0f64..720.0, s in 0.0f64..=1.0, v in 0.0f64..=1.0) {
            let rgb = hsv_to_rgb(HsvPixel { h, s, v });
            for ch in [rgb.r, rgb.g, rgb.b] {
                prop_assert!((0.0..=1.0).contains(&ch));
            }
            let hsv = rgb_to_hsv(rgb);
            prop_assert!((0.0..360.0).contains(&hsv.h));
            prop_assert!((0.0..=1.0).contains(&hsv.s));
            prop_assert!((0.0..=1.0).contains(&hsv.v));
        }
    }
}
