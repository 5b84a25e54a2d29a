//! `dlat`: double-lattice packing toolkit.
//!
//! Subcommands: planar density computation, the heptagon certificate run,
//! the 3-ball report, and SVG packing rendering. Exit codes: 0 on success,
//! 1 when a verification check fails, 2 on input errors.

mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};

use dlat::ball3d::{self, ConvexBody3};
use dlat::cert;
use dlat::field::rat;
use dlat::field::FieldElement;
use dlat::geom2d::{self, builtin::Builtin, ConvexPolygon};

/// Default seed for randomized probe batteries; overridden by the
/// PESSIMAL_SEED environment variable or the --seed flag.
const DEFAULT_SEED: u64 = 20140906;

#[derive(Parser)]
#[command(
    name = "dlat",
    version,
    about = "Double-lattice packings: planar density, the heptagon certificate, and the 3-ball apparatus"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the double-lattice packing density of a planar convex body.
    Density2d(Density2dArgs),
    /// Run the heptagon local-minimality certificate checks.
    CertifyHeptagon(CertifyArgs),
    /// Report the 3-ball apparatus for a body: mean width, eta, the
    /// perturbed lattice, and the density bound.
    Ball3d(Ball3dArgs),
    /// Render a double-lattice packing to SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct Density2dArgs {
    /// Built-in body: heptagon, square, triangle, ngon:k, disk:k.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Polygon JSON file: {"vertices": [[x, y], ...]} counterclockwise.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the full result as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Coarse sweep resolution.
    #[arg(long, default_value_t = 2048)]
    sweep: usize,
}

#[derive(Args)]
struct CertifyArgs {
    /// Comma-separated subset of checks to run (default: all, plus the
    /// local probe). Known names: tables, null-sum, solution-space,
    /// gradient-fidelity, hessian-fidelity, positive-definite,
    /// psi-gradient, phi2-gradient, farkas, cone-triviality, local-probe.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Number of random perturbations in the local-minimality probe.
    #[arg(long, default_value_t = 10_000)]
    probe_samples: usize,
    /// RNG seed for the probe (PESSIMAL_SEED overrides the default).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Corrupt one table entry by 1e-6 before checking (index 0..13);
    /// the run must then fail. Diagnostic for the exact-check machinery.
    #[arg(long, hide = true)]
    mutate_table: Option<usize>,
}

#[derive(Args)]
struct Ball3dArgs {
    /// Built-in body: ball, cube, octahedron, box:LX,LY,LZ.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Body JSON file: {"vertices": [[x, y, z], ...]}.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Minkowski parameter for the density bound.
    #[arg(long, default_value_t = 0.05)]
    lambda: f64,
    /// Maximal spherical-harmonic degree for the rotation search.
    #[arg(long, default_value_t = 12)]
    lmax: usize,
    /// Write the exact Legendre coefficients c_l up to this degree as CSV.
    #[arg(long)]
    legendre: Option<u32>,
    /// CSV output path for --legendre (default: stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Built-in body: heptagon, square, triangle, ngon:k, disk:k.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Polygon JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Translation shells to draw.
    #[arg(long, default_value_t = 2)]
    shells: i64,
    /// Output SVG path.
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Density2d(args) => cmd_density2d(args),
        Cmd::CertifyHeptagon(args) => cmd_certify(args),
        Cmd::Ball3d(args) => cmd_ball3d(args),
        Cmd::Render(args) => cmd_render(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_polygon(builtin: &Option<String>, input: &Option<PathBuf>) -> Result<(String, ConvexPolygon)> {
    match (builtin, input) {
        (Some(name), None) => {
            let b = Builtin::from_str(name).map_err(|e| anyhow!(e))?;
            Ok((name.clone(), b.polygon()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let poly: ConvexPolygon = serde_json::from_str(&text)
                .with_context(|| format!("parsing polygon JSON {}", path.display()))?;
            Ok((path.display().to_string(), poly))
        }
        _ => Err(anyhow!("exactly one of --builtin or --input is required")),
    }
}

fn cmd_density2d(args: Density2dArgs) -> Result<bool> {
    let (name, poly) = load_polygon(&args.builtin, &args.input)?;
    if args.sweep < 8 {
        return Err(anyhow!("--sweep must be at least 8"));
    }
    let result = geom2d::density_with_samples(&poly, args.sweep);
    println!("body:      {name} ({} vertices)", poly.len());
    println!("area:      {:.9}", result.area);
    println!("delta:     {:.9}", result.delta);
    println!("theta*:    {:.9} rad", result.minimizing_direction.angle());
    println!("density:   {:.6}", result.density);
    if let Some(path) = args.json {
        let json = serde_json::to_string_pretty(&result)?;
        std::fs::write(&path, json.clone() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(true)
}

fn seed_from(args_seed: Option<u64>) -> u64 {
    if let Some(s) = args_seed {
        return s;
    }
    if let Ok(var) = std::env::var("PESSIMAL_SEED") {
        if let Ok(s) = var.parse() {
            return s;
        }
    }
    DEFAULT_SEED
}

fn cmd_certify(args: CertifyArgs) -> Result<bool> {
    if let Some(coord) = args.mutate_table {
        if coord >= cert::DIM_X {
            return Err(anyhow!("--mutate-table index out of range"));
        }
        let mut file = cert::Tables::get().file.clone();
        file.f0[coord] = &file.f0[coord] + &FieldElement::from_rational(rat(1, 1_000_000));
        let tables = cert::Tables::from_file(file);
        let mut checks = vec![cert::check_null_sum_of(&tables)];
        checks.push(cert::check_solution_space_of(&tables).to_check());
        let report = cert::CertificateReport { checks };
        print!("{report}");
        println!("note: table entry {coord} deliberately corrupted by 1e-6");
        return Ok(report.all_passed());
    }

    let seed = seed_from(args.seed);
    let known = {
        let mut v: Vec<&str> = cert::CHECK_NAMES.to_vec();
        v.push("local-probe");
        v
    };
    if let Some(list) = &args.checks {
        for name in list {
            if !known.contains(&name.as_str()) {
                return Err(anyhow!(
                    "unknown check {name:?}; known checks: {}",
                    known.join(", ")
                ));
            }
        }
    }
    let report = match &args.checks {
        None => cert::certificate_report(args.probe_samples, seed),
        Some(list) => cert::certificate_report_filtered(
            |name| list.iter().any(|x| x == name),
            args.probe_samples,
            seed,
        ),
    };
    print!("{report}");
    if let Some(path) = args.json {
        let json = serde_json::to_string_pretty(&report)?;
        std::fs::write(&path, json + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.all_passed())
}

fn load_body(builtin: &Option<String>, input: &Option<PathBuf>) -> Result<(String, ConvexBody3)> {
    match (builtin, input) {
        (Some(name), None) => {
            let body = match name.as_str() {
                "ball" => ConvexBody3::ball(1.0),
                "cube" => ball3d::cube(1.0),
                "octahedron" => ball3d::octahedron(1.0),
                other => {
                    if let Some(dims) = other.strip_prefix("box:") {
                        let parts: Vec<f64> = dims
                            .split(',')
                            .map(|p| p.trim().parse::<f64>())
                            .collect::<Result<_, _>>()
                            .with_context(|| format!("parsing box dimensions {dims:?}"))?;
                        if parts.len() != 3 || parts.iter().any(|&l| l <= 0.0) {
                            return Err(anyhow!("box needs three positive dimensions"));
                        }
                        ball3d::cuboid(parts[0], parts[1], parts[2])
                    } else {
                        return Err(anyhow!(
                            "unknown builtin {other:?} (expected ball, cube, octahedron, box:LX,LY,LZ)"
                        ));
                    }
                }
            };
            Ok((name.clone(), body))
        }
        (None, Some(path)) => {
            #[derive(serde::Deserialize)]
            struct BodyFile {
                vertices: Vec<[f64; 3]>,
            }
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let file: BodyFile = serde_json::from_str(&text)
                .with_context(|| format!("parsing body JSON {}", path.display()))?;
            let pts: Vec<ball3d::Vec3> = file
                .vertices
                .iter()
                .map(|&[x, y, z]| ball3d::vec3(x, y, z))
                .collect();
            let body = ConvexBody3::from_vertices(&pts)?;
            Ok((path.display().to_string(), body))
        }
        _ => Err(anyhow!("exactly one of --builtin or --input is required")),
    }
}

fn cmd_ball3d(args: Ball3dArgs) -> Result<bool> {
    if let Some(lmax) = args.legendre {
        let rows = ball3d::coefficients(lmax);
        let mut out = String::from("l,c_l,c_l_float\n");
        for c in &rows {
            out.push_str(&format!("{},{},{:.12e}\n", c.l, c.value, c.value_f64()));
        }
        match &args.csv {
            Some(path) => std::fs::write(path, out)
                .with_context(|| format!("writing {}", path.display()))?,
            None => print!("{out}"),
        }
        return Ok(true);
    }

    let (name, raw) = load_body(&args.builtin, &args.input)?;
    if !(0.0..=1.0).contains(&args.lambda) {
        return Err(anyhow!("--lambda must lie in [0, 1]"));
    }
    let ball_vol = 4.0 * std::f64::consts::PI / 3.0;
    let body = raw.normalize_volume(ball_vol);
    let w = ball3d::mean_width(&body);
    let residual = ball3d::min_width_residual(&body);
    println!("body:               {name} (volume normalized to 4 pi / 3)");
    println!("mean width w:       {:.9}", w);
    println!("w/2:                {:.9}", w / 2.0);
    println!("min-width residual: {:.3e}", residual);

    let rotated = match ball3d::find_low_eta_rotation(&body, args.lmax) {
        Ok(found) => {
            println!("eta after rotation: {:.9} (margin {:.3e})", found.eta, found.margin);
            body.rotate(&found.rotation)
        }
        Err(ball3d::BallError::NoLowEtaRotation { margin }) => {
            println!("no eta-lowering rotation found (margin {margin:.3e}); body is ball-like");
            body.clone()
        }
        Err(e) => return Err(e.into()),
    };
    let eta = ball3d::eta(&rotated);
    println!("eta:                {:.9}", eta);

    // Perturbed h.c.p. lattice for the Minkowski combination at lambda.
    let heights = ball3d::support_heights(&rotated);
    let mixed: [f64; 12] = std::array::from_fn(|i| (1.0 - args.lambda) + args.lambda * heights[i]);
    match ball3d::build_hcp_double_lattice(&mixed) {
        Ok(lat) => println!("d(Xi') at lambda:   {:.9}", lat.mean_volume()),
        Err(e) => println!("d(Xi') at lambda:   unavailable ({e})"),
    }

    let bound = ball3d::near_ball_bound(&rotated, args.lambda)?;
    println!("bound(lambda):      {:.9}", bound.bound);
    println!("excess over ball:   {:.3e}", bound.excess);
    println!("beta (implied):     {:.6}", bound.beta);
    Ok(true)
}

fn cmd_render(args: RenderArgs) -> Result<bool> {
    let (_, poly) = load_polygon(&args.builtin, &args.input)?;
    if args.shells < 1 {
        return Err(anyhow!("--shells must be at least 1"));
    }
    let result = geom2d::double_lattice_density(&poly);
    let lattice = geom2d::build_double_lattice(&poly, &result.parallelogram)
        .map_err(|e| anyhow!("lattice construction failed: {e}"))?;
    let svg = svg::render_packing(&poly, &lattice, args.shells);
    std::fs::write(&args.out, svg)
        .with_context(|| format!("writing {}", args.out.display()))?;
    let copies = geom2d::packing_copies(&poly, &lattice, args.shells);
    println!(
        "wrote {} ({} copies, density {:.6})",
        args.out.display(),
        copies.len(),
        result.density
    );
    Ok(true)
}
