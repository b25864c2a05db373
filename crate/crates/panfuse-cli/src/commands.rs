//! Subcommand implementations: input assembly, the five pipelines, and
//! report printing. All functions return library errors; exit-code
//! mapping stays in `main`.

use std::fs;
use std::path::{Path, PathBuf};

use panfuse::error::{Error, Result};
use panfuse::fusion::{ihs_fuse, FusedImage, FusionJob, FusionProvenance};
use panfuse::interp::{upscale2x, upscale_classical, InterpolatorKind};
use panfuse::io::{
    read_raster_with_depth, stack_bands_with_depth, write_raster, ByteOrder, RasterData,
    RasterFile, RasterFormat,
};
use panfuse::qa::{full_reference_qa, reduced_reference_qa, SsimConfig};
use panfuse::raster::{BandSpec, BitDepth, ImageGrid, MultibandImage};
use panfuse::synth::{gen_gmrf, gen_scene_pair, GmrfParams, SceneParams};

use crate::{BenchArgs, FuseArgs, InterpolateArgs, MsArgs, QaArgs, ReportFormat, SynthArgs};

/// Output container by extension: .png writes PNG, everything else TIFF.
fn format_for(path: &Path) -> RasterFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("png") => RasterFormat::Png,
        _ => RasterFormat::Tiff,
    }
}

fn read_ms(args: &MsArgs, depth: Option<BitDepth>) -> Result<MultibandImage> {
    if let Some(path) = &args.ms {
        let (data, _) = read_raster_with_depth(path, depth)?;
        match data {
            RasterData::Rgb([r, g, b]) => MultibandImage::new(vec![
                (BandSpec::oli_red(), r),
                (BandSpec::oli_green(), g),
                (BandSpec::oli_blue(), b),
            ]),
            RasterData::Gray(_) => Err(Error::InvalidParameter(format!(
                "--ms file {} is single-band; pass bands as --ms-r/--ms-g/--ms-b",
                path.display()
            ))),
        }
    } else {
        // clap guarantees all three band flags are present together.
        stack_bands_with_depth(
            args.ms_r.as_ref().unwrap(),
            args.ms_g.as_ref().unwrap(),
            args.ms_b.as_ref().unwrap(),
            depth,
        )
    }
}

fn read_gray(path: &Path, depth: Option<BitDepth>) -> Result<(ImageGrid, RasterFile)> {
    let (data, file) = read_raster_with_depth(path, depth)?;
    match data {
        RasterData::Gray(grid) => Ok((grid, file)),
        RasterData::Rgb(_) => Err(Error::InvalidParameter(format!(
            "{} is not a single-band raster",
            path.display()
        ))),
    }
}

fn write_gray(path: &Path, grid: &ImageGrid, depth: BitDepth) -> Result<()> {
    let file = RasterFile {
        path: path.to_path_buf(),
        format: format_for(path),
        bit_depth: depth,
        bands: 1,
        byte_order: ByteOrder::Little,
        geo_metadata: Vec::new(),
    };
    write_raster(&RasterData::Gray(grid.clone()), &file)
}

fn write_rgb(path: &Path, bands: [ImageGrid; 3], depth: BitDepth) -> Result<()> {
    let file = RasterFile {
        path: path.to_path_buf(),
        format: format_for(path),
        bit_depth: depth,
        bands: 3,
        byte_order: ByteOrder::Little,
        geo_metadata: Vec::new(),
    };
    write_raster(&RasterData::Rgb(bands), &file)
}

fn provenance_kv(p: &FusionProvenance) -> String {
    format!(
        "interpolator={}\npan_match={}\nms_dims={}x{}\npan_dims={}x{}\n",
        p.interpolator, p.pan_match, p.ms_dims.0, p.ms_dims.1, p.pan_dims.0, p.pan_dims.1
    )
}

pub(crate) fn run_fuse(args: &FuseArgs) -> Result<()> {
    let ms = read_ms(&args.ms, args.read_depth)?;
    let (pan, pan_file) = read_gray(&args.pan, args.read_depth)?;
    let job = FusionJob {
        ms,
        pan,
        interpolator: args.interp,
        pan_match: args.pan_match,
    };
    let fused = ihs_fuse(&job)?;
    let provenance = fused.provenance;

    // The output inherits the pan band's container contract: its bit
    // depth (or the explicit read depth), its byte order, and its geo
    // block, which PNG output cannot carry.
    let format = format_for(&args.out);
    let mut geo = pan_file.geo_metadata;
    if format == RasterFormat::Png && !geo.is_empty() {
        eprintln!(
            "note: PNG output drops the geo metadata block carried by {}",
            args.pan.display()
        );
        geo.clear();
    }
    let out_file = RasterFile {
        path: args.out.clone(),
        format,
        bit_depth: args.read_depth.unwrap_or(pan_file.bit_depth),
        bands: 3,
        byte_order: pan_file.byte_order,
        geo_metadata: geo,
    };
    write_raster(&RasterData::Rgb([fused.r, fused.g, fused.b]), &out_file)?;
    print!("{}", provenance_kv(&provenance));
    Ok(())
}

pub(crate) fn run_qa(args: &QaArgs) -> Result<()> {
    let ms = read_ms(&args.ms, args.read_depth)?;
    let (fused_data, _) = read_raster_with_depth(&args.fused, args.read_depth)?;
    let RasterData::Rgb([r, g, b]) = fused_data else {
        return Err(Error::InvalidParameter(format!(
            "--fused file {} is not a three-band raster",
            args.fused.display()
        )));
    };
    // Carrier provenance only; the report never reads it.
    let fused = FusedImage {
        provenance: FusionProvenance {
            interpolator: InterpolatorKind::Lmmse,
            pan_match: false,
            ms_dims: ms.dimensions(),
            pan_dims: r.dimensions(),
        },
        r,
        g,
        b,
    };
    let report = reduced_reference_qa(&fused, &ms, SsimConfig::default())?;
    match args.format {
        ReportFormat::Table => print!("{}", report.to_table_string()),
        ReportFormat::Kv => print!("{}", report.to_kv_string()),
    }
    Ok(())
}

fn resolve_interp(kind: InterpolatorKind, cc_a: Option<f64>) -> Result<InterpolatorKind> {
    match (kind, cc_a) {
        (InterpolatorKind::CubicConvolution { .. }, Some(a)) => {
            if !a.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "--cc-a must be finite, got {a}"
                )));
            }
            Ok(InterpolatorKind::CubicConvolution { a })
        }
        (other, Some(_)) => Err(Error::InvalidParameter(format!(
            "--cc-a only applies to the cc interpolator, not {other}"
        ))),
        (kind, None) => Ok(kind),
    }
}

pub(crate) fn run_interpolate(args: &InterpolateArgs) -> Result<()> {
    let kind = resolve_interp(args.interp, args.cc_a)?;
    let (grid, file) = read_gray(&args.input, args.read_depth)?;
    let upscaled = if args.factor == 2 {
        upscale2x(&grid, kind)?
    } else {
        upscale_classical(&grid, args.factor, kind)?
    };
    write_gray(
        &args.out,
        &upscaled,
        args.read_depth.unwrap_or(file.bit_depth),
    )
}

fn resolve_scene_params(args: &SynthArgs) -> Result<SceneParams> {
    if let Some(path) = &args.params {
        SceneParams::parse(&fs::read_to_string(path)?)
    } else {
        let (height, width) = args.size;
        let mut params = SceneParams::new(height, width, args.seed);
        params.rho = args.rho;
        params.sigma = args.sigma;
        params.edge_mix = args.edge_mix;
        Ok(params)
    }
}

/// Appends a suffix to a path prefix, keeping any directory part.
fn prefixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

pub(crate) fn run_synth(args: &SynthArgs) -> Result<()> {
    let params = resolve_scene_params(args)?;
    if args.emit_params {
        print!("{}", params.to_kv_string());
    }
    if let Some(out) = &args.out {
        let field = gen_gmrf(GmrfParams {
            height: params.height,
            width: params.width,
            rho: params.rho,
            sigma: params.sigma,
            seed: params.seed,
        })?;
        write_gray(out, &field, BitDepth::B16)
    } else {
        let prefix = args.scene_prefix.as_ref().unwrap();
        let pair = gen_scene_pair(params)?;
        write_rgb(&prefixed(prefix, "_ref.tif"), pair.reference_rgb, BitDepth::B16)?;
        let ms = pair.ms.rgb()?;
        write_gray(&prefixed(prefix, "_ms_r.tif"), ms[0], BitDepth::B16)?;
        write_gray(&prefixed(prefix, "_ms_g.tif"), ms[1], BitDepth::B16)?;
        write_gray(&prefixed(prefix, "_ms_b.tif"), ms[2], BitDepth::B16)?;
        write_gray(&prefixed(prefix, "_pan.tif"), &pair.pan, BitDepth::B16)?;
        fs::write(prefixed(prefix, ".scene"), params.to_kv_string())?;
        Ok(())
    }
}

pub(crate) fn run_bench(args: &BenchArgs) -> Result<()> {
    if args.scenes == 0 {
        return Err(Error::InvalidParameter(
            "--scenes must be at least 1".into(),
        ));
    }
    if args.interps.is_empty() {
        return Err(Error::InvalidParameter(
            "--interps must name at least one interpolator".into(),
        ));
    }
    let (height, width) = args.size;
    if height < 32 || width < 32 || height % 2 != 0 || width % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "--size must be even and at least 32x32, got {height}x{width}"
        )));
    }
    let cfg = SsimConfig::default();
    let mut csv = String::from("scene,interp,ssim_r,ssim_g,ssim_b,avg,similarity_pct\n");
    let mut totals = vec![0.0f64; args.interps.len()];
    for i in 0..args.scenes {
        eprintln!("scene {}/{}", i + 1, args.scenes);
        let mut params = SceneParams::new(height, width, args.seed + i as u64);
        params.edge_mix = args.edge_mix;
        let pair = gen_scene_pair(params)?;
        for (k, &interp) in args.interps.iter().enumerate() {
            // Pan is always moment-matched to the upsampled intensity:
            // scoring against ground truth would otherwise be dominated by
            // the radiometric offset between the pan band and the V plane,
            // the same for every interpolator.
            let job = FusionJob {
                ms: pair.ms.clone(),
                pan: pair.pan.clone(),
                interpolator: interp,
                pan_match: true,
            };
            let fused = ihs_fuse(&job)?;
            let report = full_reference_qa(&fused, &pair.reference_rgb, cfg)?;
            let s: Vec<f64> = report.per_band.iter().map(|(_, v)| *v).collect();
            csv.push_str(&format!(
                "{},{},{:.6},{:.6},{:.6},{:.6},{:.2}\n",
                i, interp, s[0], s[1], s[2], report.average, report.similarity_percent
            ));
            totals[k] += report.average;
        }
    }
    fs::write(&args.out, &csv)?;
    let mut best = 0;
    for (k, &interp) in args.interps.iter().enumerate() {
        let mean = totals[k] / args.scenes as f64;
        println!("{interp}: mean ssim {mean:.6}");
        if totals[k] > totals[best] {
            best = k;
        }
    }
    println!("winner: {}", args.interps[best]);
    Ok(())
}
