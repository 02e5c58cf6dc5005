//! Command-line front end for the spherical-mean toolkit.
//!
//! Every subcommand reads/writes the crate's file formats, so full
//! experiments chain through the filesystem:
//!
//! ```text
//! smrt phantom --out ph.txt
//! smrt project --phantom ph.txt --out clean.prj --truth-out truth.vol
//! smrt noise --input clean.prj --out noisy.prj --level 0.15 --seed 7
//! smrt reconstruct --input noisy.prj --out recon.vol
//! smrt metrics --input recon.vol --truth truth.vol
//! smrt slice --input recon.vol --axis z --out mid.pgm
//! ```
//!
//! Numeric/enum parameters may come from a `key = value` config file
//! (`--config`); explicit flags override it. File paths are always flags.

use clap::{Parser, Subcommand, ValueEnum};
use smrt::io::{
    read_config, read_phantom, read_projections, read_volume, write_phantom, write_projections,
    write_volume, SliceFormat,
};
use smrt::{
    add_noise, make_grid, project_phantom, rasterize_phantom, reconstruct_fast_timed,
    reconstruct_reference, reconstruct_reference_forced, Ball, BoxRegion, Error, FilterSpec,
    GridSpec, Phantom, Result, StageTimings, VolumeImage,
};
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "smrt",
    version,
    about = "Spherical-mean transform toolkit: analytic projector, fast series inversion, reference oracle"
)]
struct Cli {
    /// Config file (`key = value` lines) supplying parameter defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    /// Ring of eight balls of graded radii (the standard test phantom).
    EightBall,
    /// One centered ball of radius 0.25.
    CenterBall,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Fast,
    Reference,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    Cosine,
    None,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Pgm,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Write a ball-phantom description file.
    Phantom {
        #[arg(long)]
        out: PathBuf,
        /// Which built-in phantom to emit.
        #[arg(long, value_enum)]
        preset: Option<PresetArg>,
    },
    /// Compute spherical-mean projections of a phantom on the cube faces.
    Project {
        #[arg(long)]
        phantom: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the grid-sampled phantom (ground truth) as a volume.
        #[arg(long)]
        truth_out: Option<PathBuf>,
        /// Grid nodes per axis.
        #[arg(long)]
        n: Option<usize>,
        /// Cube side length.
        #[arg(long, short = 'R')]
        side: Option<f64>,
        /// Cube corner in phantom coordinates, `x,y,z`.
        #[arg(long)]
        cube_origin: Option<String>,
        /// Allow phantom material outside the measurement cube.
        #[arg(long)]
        exterior: bool,
    },
    /// Add calibrated Gaussian noise to a projection file.
    Noise {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Noise-to-signal ratio in L²: ‖noise‖ = level·‖data‖.
        #[arg(long)]
        level: Option<f64>,
        /// RNG seed; identical seeds give bitwise-identical output.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Invert a projection file to a volume.
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, value_enum)]
        filter: Option<FilterArg>,
        /// Filter cutoff λ; defaults to the grid's Nyquist limit.
        #[arg(long)]
        cutoff: Option<f64>,
        /// Largest eigenfunction index per axis (reference method only).
        #[arg(long)]
        m_max: Option<usize>,
        /// Run the reference method past its n ≤ 65 size guard.
        #[arg(long)]
        force: bool,
    },
    /// Compare a reconstructed volume against ground truth.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// Mask box: `lo,hi` (all axes) or `x0,y0,z0,x1,y1,z1`, or `none`.
        #[arg(long)]
        mask: Option<String>,
    },
    /// Export one grid plane as a 16-bit PGM image or CSV.
    Slice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        axis: Option<AxisArg>,
        /// Node index along the sliced axis; defaults to the middle plane.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Time the fast pipeline per stage across grid sizes (3-run medians).
    Bench {
        /// Comma-separated grid sizes.
        #[arg(long)]
        sizes: Option<String>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Config lookup parsed into `T`, with the key named on parse failure.
fn cfg_get<T: FromStr>(cfg: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    match cfg.get(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<T>()
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("config key `{key}`: cannot parse `{s}`"))),
    }
}

/// Config lookup through clap's enum-name matching (`fast`, `cosine`, …).
fn cfg_enum<T: ValueEnum>(cfg: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    match cfg.get(key) {
        None => Ok(None),
        Some(s) => T::from_str(s, true)
            .map(Some)
            .map_err(|_| Error::InvalidInput(format!("config key `{key}`: unknown value `{s}`"))),
    }
}

fn parse_triple(s: &str, what: &str) -> Result<[f64; 3]> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("{what}: expected `x,y,z`, got `{s}`")))?;
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!("{what}: expected 3 components, got {}", parts.len())));
    }
    Ok([parts[0], parts[1], parts[2]])
}

fn parse_mask(s: &str) -> Result<Option<BoxRegion>> {
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("mask: expected numbers, got `{s}`")))?;
    match parts.len() {
        2 => Ok(Some(BoxRegion { lo: [parts[0]; 3], hi: [parts[1]; 3] })),
        6 => Ok(Some(BoxRegion { lo: [parts[0], parts[1], parts[2]], hi: [parts[3], parts[4], parts[5]] })),
        k => Err(Error::InvalidInput(format!("mask: expected 2 or 6 components (or `none`), got {k}"))),
    }
}

fn filter_from(kind: FilterArg, cutoff: Option<f64>, grid: &GridSpec) -> FilterSpec {
    let cut = cutoff.unwrap_or(grid.lambda_nyq);
    match kind {
        FilterArg::Cosine => FilterSpec::cosine(cut),
        FilterArg::None => FilterSpec::none(cut),
    }
}

fn preset_phantom(preset: PresetArg) -> Phantom {
    match preset {
        PresetArg::EightBall => Phantom::eight_ball_ring(),
        PresetArg::CenterBall => {
            Phantom::new(vec![Ball { center: [0.5, 0.5, 0.5], radius: 0.25, amplitude: 1.0 }])
                .expect("static phantom is valid")
        }
    }
}

fn print_timings(t: &StageTimings) {
    println!(
        "radial={:.3}s faces={:.3}s assemble={:.3}s synthesize={:.3}s total={:.3}s",
        t.radial.as_secs_f64(),
        t.faces.as_secs_f64(),
        t.assemble.as_secs_f64(),
        t.synthesize.as_secs_f64(),
        t.total().as_secs_f64()
    );
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => read_config(path)?,
        None => HashMap::new(),
    };
    match cli.command {
        Command::Phantom { out, preset } => {
            let preset = match preset {
                Some(p) => p,
                None => cfg_enum(&cfg, "preset")?.unwrap_or(PresetArg::EightBall),
            };
            let phantom = preset_phantom(preset);
            write_phantom(&out, &phantom)?;
            println!("wrote {} ({} balls)", out.display(), phantom.balls.len());
        }
        Command::Project { phantom, out, truth_out, n, side, cube_origin, exterior } => {
            let n = match n {
                Some(v) => v,
                None => cfg_get(&cfg, "n")?.unwrap_or(129),
            };
            let side = match side {
                Some(v) => v,
                None => cfg_get(&cfg, "R")?.unwrap_or(1.0),
            };
            let origin_text = cube_origin.or_else(|| cfg.get("cube-origin").cloned());
            let origin = match origin_text {
                Some(s) => parse_triple(&s, "cube-origin")?,
                None => [0.0; 3],
            };
            let grid = make_grid(n, side)?;
            let ph = read_phantom(&phantom)?;
            if !exterior && !ph.contained_in_cube(origin, side) {
                return Err(Error::InvalidInput(
                    "phantom extends outside the measurement cube; pass --exterior if that is intended"
                        .into(),
                ));
            }
            let proj = project_phantom(&ph, &grid, origin)?;
            write_projections(&out, &proj)?;
            println!(
                "wrote {} (6 faces x {} detectors x {} radii, n={n}, R={side})",
                out.display(),
                grid.nd() * grid.nd(),
                grid.n1
            );
            if let Some(truth_path) = truth_out {
                let truth = rasterize_phantom(&ph, &grid, origin)?;
                write_volume(&truth_path, &truth)?;
                println!("wrote {} (ground-truth volume)", truth_path.display());
            }
        }
        Command::Noise { input, out, level, seed } => {
            let level = match level {
                Some(v) => v,
                None => cfg_get(&cfg, "level")?.unwrap_or(0.15),
            };
            let seed = match seed {
                Some(v) => v,
                None => cfg_get(&cfg, "seed")?.unwrap_or(0),
            };
            let proj = read_projections(&input)?;
            let noisy = add_noise(&proj, level, seed)?;
            write_projections(&out, &noisy)?;
            println!("wrote {} (level={level}, seed={seed})", out.display());
        }
        Command::Reconstruct { input, out, method, filter, cutoff, m_max, force } => {
            let method = match method {
                Some(v) => v,
                None => cfg_enum(&cfg, "method")?.unwrap_or(MethodArg::Fast),
            };
            let filter_kind = match filter {
                Some(v) => v,
                None => cfg_enum(&cfg, "filter")?.unwrap_or(FilterArg::Cosine),
            };
            let cutoff = match cutoff {
                Some(v) => Some(v),
                None => cfg_get(&cfg, "cutoff")?,
            };
            let proj = read_projections(&input)?;
            let grid = *proj.grid();
            let spec = filter_from(filter_kind, cutoff, &grid);
            let vol = match method {
                MethodArg::Fast => {
                    let (vol, timings) = reconstruct_fast_timed(&proj, &spec)?;
                    print_timings(&timings);
                    vol
                }
                MethodArg::Reference => {
                    let m_max = match m_max {
                        Some(v) => v,
                        None => cfg_get(&cfg, "m-max")?.unwrap_or(grid.nd()),
                    };
                    if force {
                        reconstruct_reference_forced(&proj, &spec, m_max)?
                    } else {
                        reconstruct_reference(&proj, &spec, m_max)?
                    }
                }
            };
            write_volume(&out, &vol)?;
            println!("wrote {} (n={}, R={})", out.display(), grid.n, grid.side);
        }
        Command::Metrics { input, truth, mask } => {
            let mask_text = mask.or_else(|| cfg.get("mask").cloned());
            let region = match mask_text {
                Some(s) => parse_mask(&s)?,
                None => Some(BoxRegion { lo: [0.05; 3], hi: [0.95; 3] }),
            };
            let recon = read_volume(&input)?;
            let truth_vol = read_volume(&truth)?;
            let m = smrt::compute_metrics(&recon, &truth_vol, region.as_ref())?;
            println!("rel_l2 = {}", m.rel_l2);
            println!("max_abs_err = {}", m.max_abs_err);
            match m.trough_depth {
                Some(t) => println!("trough_depth = {t}"),
                None => println!("trough_depth = n/a"),
            }
        }
        Command::Slice { input, out, axis, index, format } => {
            let axis = match axis {
                Some(v) => v,
                None => cfg_enum(&cfg, "axis")?.unwrap_or(AxisArg::Z),
            };
            let format = match format {
                Some(v) => v,
                None => cfg_enum(&cfg, "format")?.unwrap_or(FormatArg::Pgm),
            };
            let vol = read_volume(&input)?;
            let index = match index {
                Some(v) => v,
                None => match cfg_get(&cfg, "index")? {
                    Some(v) => v,
                    None => vol.grid().n / 2,
                },
            };
            let axis_id = match axis {
                AxisArg::X => 0,
                AxisArg::Y => 1,
                AxisArg::Z => 2,
            };
            let fmt = match format {
                FormatArg::Pgm => SliceFormat::Pgm,
                FormatArg::Csv => SliceFormat::Csv,
            };
            smrt::io::export_slice(&out, &vol, axis_id, index, fmt)?;
            println!("wrote {} (axis={axis_id}, index={index})", out.display());
        }
        Command::Bench { sizes } => {
            let text = match sizes {
                Some(s) => s,
                None => cfg.get("sizes").cloned().unwrap_or_else(|| "33,65,129".into()),
            };
            let sizes: Vec<usize> = text
                .split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidInput(format!("sizes: expected integers, got `{text}`")))?;
            bench(&sizes)?;
        }
    }
    Ok(())
}

/// Median of three durations, in seconds.
fn median3(mut v: [f64; 3]) -> f64 {
    v.sort_by(f64::total_cmp);
    v[1]
}

fn bench(sizes: &[usize]) -> Result<()> {
    let mut totals = Vec::new();
    for &n in sizes {
        let grid = make_grid(n, 1.0)?;
        let phantom = preset_phantom(PresetArg::CenterBall);
        let t0 = Instant::now();
        let proj = project_phantom(&phantom, &grid, [0.0; 3])?;
        let project_s = t0.elapsed().as_secs_f64();
        let filter = FilterSpec::cosine(grid.lambda_nyq);
        let mut stage = [[0.0f64; 3]; 5];
        let mut sink = 0.0;
        for run in 0..3 {
            let (vol, t) = reconstruct_fast_timed(&proj, &filter)?;
            sink += checksum(&vol);
            for (slot, s) in stage.iter_mut().zip([
                t.radial.as_secs_f64(),
                t.faces.as_secs_f64(),
                t.assemble.as_secs_f64(),
                t.synthesize.as_secs_f64(),
                t.total().as_secs_f64(),
            ]) {
                slot[run] = s;
            }
        }
        let med: Vec<f64> = stage.iter().map(|s| median3(*s)).collect();
        println!(
            "n={n} project={project_s:.3}s radial={:.3}s faces={:.3}s assemble={:.3}s synthesize={:.3}s total={:.3}s",
            med[0], med[1], med[2], med[3], med[4]
        );
        eprintln!("# checksum n={n}: {sink:.6e}");
        totals.push(med[4]);
    }
    for (pair, t) in sizes.windows(2).zip(totals.windows(2)) {
        if t[0] > 0.0 {
            println!("scaling n={}/n={}: total_ratio={:.2}", pair[1], pair[0], t[1] / t[0]);
        }
    }
    Ok(())
}

/// Cheap value derived from the volume so the optimizer cannot discard
/// benchmark reconstructions.
fn checksum(vol: &VolumeImage) -> f64 {
    let n = vol.grid().n;
    vol.at(n / 2, n / 2, n / 2)
}
