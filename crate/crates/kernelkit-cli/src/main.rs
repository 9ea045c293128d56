//! Command-line surface for the kernel toolkit.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use kernelkit::catalog::{blowup_probe, default_blowup_deltas, paths, Kernel, KernelId};
use kernelkit::projections::{bergman_project_samples, szego_project_samples};
use kernelkit::suites::{run_suite, Suite};
use kernelkit::{ComplexPoint, Domain, Error, QuadratureRule};

const AFTER_HELP: &str = "\
points:     one complex variable: --z re,im       two: --z re1,im1,re2,im2
numbers:    printed in shortest round-trip form (up to 17 significant digits)
exit codes: 0 success, 2 domain error, 3 pole, 4 i/o, 5 input format
csv grids:  header re_z,im_z,re_k,im_k,abs_k; raster order, top row first;
            points outside the domain are omitted
pgm grids:  plain P2, 8-bit; v = round(255*clamp((log10|K| - lo)/(hi - lo)))
            with lo/hi the grid's min/max finite log-magnitudes; skipped
            points render as 0";

#[derive(Parser)]
#[command(name = "kernelkit", version, about = "Reproducing kernels on model domains", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridFormat {
    Csv,
    Pgm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Hardy,
    Bergman,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathArg {
    /// disc or annulus: z = R_boundary -/+ delta on the real axis
    Radial,
    /// half-plane: z = i delta
    Vertical,
    /// quarter plane: corner approach parametrized by distance to the origin
    Corner,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a kernel at a pair of points
    Eval {
        /// bergman-disc, szego-disc, poisson-szego-disc, bergman-halfplane,
        /// bergman-quarterplane, bergman-ball2, szego-ball2,
        /// poisson-szego-ball2, or bergman-annulus (series evaluator)
        #[arg(long)]
        kernel: String,
        /// first argument, re,im (or re1,im1,re2,im2)
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// second argument, same syntax
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Sample a kernel over a grid and write CSV or PGM
    Grid {
        #[arg(long)]
        kernel: String,
        /// fixed second argument; omit for diagonal mode K(z, z)
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// grid resolution per axis
        #[arg(long, default_value_t = 64)]
        res: usize,
        /// bounding box re_min,re_max,im_min,im_max
        #[arg(long = "box", default_value = "-0.95,0.95,-0.95,0.95", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
        format: GridFormat,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run a verification suite and print one line per check
    Verify {
        /// disc, annulus, transport, projections, ball, or all
        #[arg(long)]
        suite: String,
    },
    /// Project boundary or interior samples read from CSV
    Project {
        #[arg(long, value_enum)]
        space: SpaceArg,
        /// hardy: rows t,re_f,im_f at uniform t over [0,2pi).
        /// bergman: rows re_z,im_z,re_f,im_f at the nodes of the default
        /// 32x128 disc rule, in rule order
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Fit the boundary blowup exponent of a kernel along a canonical path
    Blowup {
        #[arg(long)]
        kernel: String,
        #[arg(long, value_enum)]
        path: PathArg,
        /// comma-separated decreasing deltas; default 2^-6..2^-13
        #[arg(long, allow_hyphen_values = true)]
        deltas: Option<String>,
    },
}

/// Shortest round-trip decimal form, with negative zero normalized.
fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

fn parse_point(s: &str) -> Result<ComplexPoint, Error> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Format(format!("cannot parse point '{s}'")))?;
    match parts.len() {
        2 => ComplexPoint::scalar(Complex64::new(parts[0], parts[1])),
        4 => ComplexPoint::pair(
            Complex64::new(parts[0], parts[1]),
            Complex64::new(parts[2], parts[3]),
        ),
        n => Err(Error::Format(format!(
            "a point needs 2 or 4 comma-separated reals, got {n}"
        ))),
    }
}

fn lookup_kernel(name: &str) -> Result<Kernel, Error> {
    if name == "bergman-annulus" {
        return Ok(Kernel::annulus_series());
    }
    let id: KernelId = name.parse()?;
    Ok(Kernel::closed_form(id))
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => 2,
        Error::Pole(_) => 3,
        Error::Io(_) => 4,
        Error::Format(_) | Error::NonFiniteSample { .. } => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Eval { kernel, z, w } => {
            let k = lookup_kernel(&kernel)?;
            let zp = parse_point(&z)?;
            let wp = parse_point(&w)?;
            let v = k.evaluate(&zp, &wp)?;
            println!("{} {}", fmt_f64(v.re), fmt_f64(v.im));
            Ok(0)
        }
        Cmd::Grid {
            kernel,
            w,
            res,
            bbox,
            format,
            output,
        } => grid(&kernel, w.as_deref(), res, &bbox, format, &output),
        Cmd::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite);
            for line in report.lines() {
                println!("{line}");
            }
            Ok(if report.overall_pass() { 0 } else { 1 })
        }
        Cmd::Project { space, input, z } => project(space, &input, &z),
        Cmd::Blowup {
            kernel,
            path,
            deltas,
        } => blowup(&kernel, path, deltas.as_deref()),
    }
}

fn grid(
    kernel: &str,
    w: Option<&str>,
    res: usize,
    bbox: &str,
    format: GridFormat,
    output: &PathBuf,
) -> Result<u8, Error> {
    let k = lookup_kernel(kernel)?;
    if k.domain().dim() != 1 {
        return Err(Error::Domain(
            "grid rendering covers the one-variable domains; ball2 kernels have \
             no planar grid"
                .into(),
        ));
    }
    if res < 2 {
        return Err(Error::Format("resolution must be at least 2".into()));
    }
    let b: Vec<f64> = bbox
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Format(format!("cannot parse box '{bbox}'")))?;
    if b.len() != 4 || b[0] >= b[1] || b[2] >= b[3] {
        return Err(Error::Format(
            "box must be re_min,re_max,im_min,im_max with min < max".into(),
        ));
    }
    let fixed = w.map(parse_point).transpose()?;
    let domain = k.domain();
    // raster order: top row (largest im) first, re ascending within a row
    let mut cells: Vec<Option<(Complex64, Complex64)>> = Vec::with_capacity(res * res);
    for iy in 0..res {
        let im = b[3] - (b[3] - b[2]) * iy as f64 / (res - 1) as f64;
        for ix in 0..res {
            let re = b[0] + (b[1] - b[0]) * ix as f64 / (res - 1) as f64;
            let z = Complex64::new(re, im);
            let zp = ComplexPoint::scalar(z)?;
            if !domain.contains(&zp) {
                cells.push(None);
                continue;
            }
            let value = match &fixed {
                None => k.evaluate(&zp, &zp),
                Some(wp) => k.evaluate(&zp, wp),
            };
            match value {
                Ok(v) => cells.push(Some((z, v))),
                Err(Error::Domain(_)) | Err(Error::Pole(_)) => cells.push(None),
                Err(other) => return Err(other),
            }
        }
    }
    let mut out = String::new();
    match format {
        GridFormat::Csv => {
            out.push_str("re_z,im_z,re_k,im_k,abs_k\n");
            for cell in cells.iter().flatten() {
                let (z, v) = cell;
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_f64(z.re),
                    fmt_f64(z.im),
                    fmt_f64(v.re),
                    fmt_f64(v.im),
                    fmt_f64(v.norm())
                ));
            }
        }
        GridFormat::Pgm => {
            let logs: Vec<Option<f64>> = cells
                .iter()
                .map(|c| {
                    c.map(|(_, v)| v.norm().log10())
                        .filter(|l| l.is_finite())
                })
                .collect();
            let finite: Vec<f64> = logs.iter().flatten().copied().collect();
            let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            out.push_str(&format!("P2\n{res} {res}\n255\n"));
            for row in logs.chunks(res) {
                let mut vals = Vec::with_capacity(res);
                for l in row {
                    let v = match l {
                        Some(l) if hi > lo => {
                            (255.0 * ((l - lo) / (hi - lo)).clamp(0.0, 1.0)).round() as u32
                        }
                        Some(_) => 255,
                        None => 0,
                    };
                    vals.push(v.to_string());
                }
                // keep plain-PGM lines short
                for chunk in vals.chunks(16) {
                    out.push_str(&chunk.join(" "));
                    out.push('\n');
                }
            }
        }
    }
    let mut file = std::fs::File::create(output)?;
    file.write_all(out.as_bytes())?;
    Ok(0)
}

fn read_csv_rows(path: &PathBuf, fields: usize) -> Result<Vec<Vec<f64>>, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parsed: Result<Vec<f64>, _> =
            line.split(',').map(|p| p.trim().parse::<f64>()).collect();
        match parsed {
            Ok(vals) if vals.len() == fields => rows.push(vals),
            Ok(vals) => {
                return Err(Error::Format(format!(
                    "row {} has {} fields, expected {fields}",
                    i + 1,
                    vals.len()
                )))
            }
            Err(_) if i == 0 => continue, // header row
            Err(_) => {
                return Err(Error::Format(format!("cannot parse row {}", i + 1)));
            }
        }
    }
    Ok(rows)
}

fn project(space: SpaceArg, input: &PathBuf, z: &str) -> Result<u8, Error> {
    let zp = parse_point(z)?;
    let result = match space {
        SpaceArg::Hardy => {
            let rows = read_csv_rows(input, 3)?;
            let m = rows.len();
            if m < 8 {
                return Err(Error::Format("need at least 8 boundary samples".into()));
            }
            let step = 2.0 * std::f64::consts::PI / m as f64;
            for (k, row) in rows.iter().enumerate() {
                if (row[0] - step * k as f64).abs() > 1e-9 {
                    return Err(Error::Format(format!(
                        "non-uniform t grid at row {}: t = {}, expected {}",
                        k + 1,
                        row[0],
                        step * k as f64
                    )));
                }
            }
            let samples: Vec<Complex64> =
                rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
            let rule = QuadratureRule::boundary(Domain::Disc, m)?;
            szego_project_samples(&samples, &zp, &rule)?
        }
        SpaceArg::Bergman => {
            let rows = read_csv_rows(input, 4)?;
            let rule = QuadratureRule::area(Domain::Disc, 32, 128)?;
            if rows.len() != rule.len() {
                return Err(Error::Format(format!(
                    "{} rows for the default 32x128 rule ({} nodes)",
                    rows.len(),
                    rule.len()
                )));
            }
            let mut samples = Vec::with_capacity(rows.len());
            for (k, row) in rows.iter().enumerate() {
                let node = rule.nodes()[k].as_scalar()?;
                if (node.re - row[0]).abs() > 1e-9 || (node.im - row[1]).abs() > 1e-9 {
                    return Err(Error::Format(format!(
                        "row {} does not match rule node ({}, {})",
                        k + 1,
                        node.re,
                        node.im
                    )));
                }
                samples.push(Complex64::new(row[2], row[3]));
            }
            bergman_project_samples(&samples, &zp, &rule)?
        }
    };
    if let Some(warning) = &result.warning {
        eprintln!("warning: {warning}");
    }
    println!("{} {}", fmt_f64(result.value.re), fmt_f64(result.value.im));
    Ok(0)
}

fn blowup(kernel: &str, path: PathArg, deltas: Option<&str>) -> Result<u8, Error> {
    let k = lookup_kernel(kernel)?;
    let deltas = match deltas {
        None => default_blowup_deltas(),
        Some(s) => s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|_| Error::Format(format!("cannot parse deltas '{s}'")))?,
    };
    let report = match (path, k.domain()) {
        (PathArg::Radial, Domain::Disc) => blowup_probe(&k, paths::disc_radial, &deltas)?,
        (PathArg::Radial, Domain::Annulus) => {
            blowup_probe(&k, paths::annulus_outer_radial, &deltas)?
        }
        (PathArg::Vertical, Domain::HalfPlane) => {
            blowup_probe(&k, paths::halfplane_vertical(0.0), &deltas)?
        }
        (PathArg::Corner, Domain::QuarterPlane) => {
            blowup_probe(&k, paths::quarterplane_corner, &deltas)?
        }
        _ => {
            return Err(Error::Domain(format!(
                "no such path for the {} domain",
                k.domain().name()
            )))
        }
    };
    println!("{} {}", fmt_f64(report.fitted_exponent), fmt_f64(report.fitted_constant));
    Ok(0)
}
