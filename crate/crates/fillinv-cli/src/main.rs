//! Command-line interface: validate complexes, compute homology and
//! filling invariants, and run the comparison/extension experiments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use fillinv::error::Error as FillError;
use fillinv::experiment::{comparison_experiment, extension_experiment};
use fillinv::extension::{attach_cell, AttachingCycle};
use fillinv::fillrad::{filling_radius_of_cycle, FillRadCertificate};
use fillinv::fillvol::{fillvol_upper, AmbientSpec, FillVolCertificate, SearchBudget};
use fillinv::fixtures;
use fillinv::homology::homology_summary;
use fillinv::json;
use fillinv::linalg::ChainOps;
use fillinv::maps::{check_monotone, degree, SimplicialMap};
use fillinv::metric::MetricComplex;
use fillinv::ring::{Coeff, RingSpec, Z2};
use fillinv::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "fillinv", about = "Filling invariants of metric simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputOpts {
    /// Fixture spec: cycle:N:LENGTH, sphere2:LEVEL, rp2:LEVEL, torus:M:K,
    /// s3_boundary
    #[arg(long)]
    fixture: Option<String>,
    /// Path to a complex+metric JSON file
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Coefficient ring
    #[arg(long, default_value = "z2")]
    ring: RingSpec,
    /// Nerve dimension cap (defaults to n + 1)
    #[arg(long)]
    max_dim: Option<usize>,
    /// Absolute slack for report-level comparisons
    #[arg(long, default_value_t = 0.0)]
    tolerance: f64,
    /// Output file (stdout otherwise)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for seeded map choices
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex description
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Betti numbers and torsion over a ring
    Homology {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Filling radius with death-scale probe log
    Fillrad {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Filling volume upper bound
    Fillvol {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        /// Ambient: "cone" or "nerve:SCALE"
        #[arg(long, default_value = "cone")]
        ambient: String,
    },
    /// Simplicial map checks
    Map {
        #[command(subcommand)]
        action: MapAction,
    },
    /// Attach a cell and verify strong isometry
    Extend {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        /// Cell spec: "pair:P:Q" or "loop:A,B,C,..."
        #[arg(long)]
        cell: String,
        /// Attachment radius
        #[arg(long)]
        radius: String,
        /// Cross-section / longitudinal subdivision count
        #[arg(long, default_value_t = 1)]
        mesh: usize,
    },
    /// Lipschitz extension checks
    Lipschitz {
        #[command(subcommand)]
        action: LipschitzAction,
    },
    /// Experiment harnesses
    Experiment {
        #[command(subcommand)]
        action: ExperimentAction,
    },
    /// Fixture generators
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum ComplexAction {
    Validate {
        #[command(flatten)]
        input: InputOpts,
        /// Reject inputs whose faces are not all listed
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MapAction {
    Check {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        /// Map spec: "identity", "translate" (torus, uses --seed), or
        /// "vertices:0,1,2,..."
        #[arg(long, default_value = "identity")]
        map: String,
        /// Monotonicity bound d
        #[arg(long, default_value_t = 1)]
        degree_bound: usize,
    },
}

#[derive(Subcommand)]
enum LipschitzAction {
    /// Extend a partial map and print the dilation profile before and
    /// after
    Check {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        /// Domain subset, e.g. "0,1,2"
        #[arg(long)]
        domain: String,
        /// Use seeded random rational values instead of the Kuratowski
        /// restriction
        #[arg(long)]
        random_values: bool,
    },
}

#[derive(Subcommand)]
enum ExperimentAction {
    /// Comparison run over interpolated pullback metrics
    Compare {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value = "identity")]
        map: String,
        /// Interpolation parameters, e.g. "1,1/2,1/4"
        #[arg(long, default_value = "1,1/2,1/4")]
        t: String,
        /// Also compute filling-volume upper bounds
        #[arg(long)]
        fillvol: bool,
    },
    /// Extension run: attach a cell and compare filling radii
    Extend {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        cell: String,
        #[arg(long)]
        radius: String,
        #[arg(long, default_value_t = 1)]
        mesh: usize,
        #[arg(long)]
        fillvol: bool,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Write a fixture as complex+metric JSON
    Emit {
        /// Fixture spec, e.g. cycle:48:6.283185307
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // exit 1 on bad flags; code 2 is reserved for budget exhaustion
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let budget = err
                .downcast_ref::<FillError>()
                .map(|e| matches!(e, FillError::SearchBudgetExceeded(_)))
                .unwrap_or(false);
            if budget {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Complex { action } => match action {
            ComplexAction::Validate { input, strict, out } => {
                cmd_validate(&input, strict, out.as_deref())
            }
        },
        Command::Homology { input, common } => cmd_homology(&input, &common),
        Command::Fillrad { input, common } => cmd_fillrad(&input, &common),
        Command::Fillvol { input, common, ambient } => {
            cmd_fillvol(&input, &common, &ambient)
        }
        Command::Map { action } => match action {
            MapAction::Check { input, common, map, degree_bound } => {
                cmd_map_check(&input, &common, &map, degree_bound)
            }
        },
        Command::Extend { input, common, cell, radius, mesh } => {
            cmd_extend(&input, &common, &cell, &radius, mesh)
        }
        Command::Lipschitz { action } => match action {
            LipschitzAction::Check { input, common, domain, random_values } => {
                cmd_lipschitz_check(&input, &common, &domain, random_values)
            }
        },
        Command::Experiment { action } => match action {
            ExperimentAction::Compare { input, common, map, t, fillvol } => {
                cmd_experiment_compare(&input, &common, &map, &t, fillvol)
            }
            ExperimentAction::Extend { input, common, cell, radius, mesh, fillvol } => {
                cmd_experiment_extend(&input, &common, &cell, &radius, mesh, fillvol)
            }
        },
        Command::Fixture { action } => match action {
            FixtureAction::Emit { fixture, out } => cmd_fixture_emit(&fixture, out.as_deref()),
        },
    }
}

// ---------------------------------------------------------------------------
// input plumbing
// ---------------------------------------------------------------------------

fn parse_fixture(spec: &str) -> anyhow::Result<MetricComplex> {
    let parts: Vec<&str> = spec.split(':').collect();
    let mc = match parts[0] {
        "cycle" => {
            if parts.len() != 3 {
                bail!("cycle takes N and LENGTH, e.g. cycle:48:6.283185307");
            }
            let n: usize = parts[1].parse().context("cycle vertex count")?;
            let total = Scalar::parse(parts[2]).map_err(|e| anyhow!("{e}"))?;
            fixtures::cycle(n, &total)?
        }
        "sphere2" => {
            let level: usize =
                parts.get(1).unwrap_or(&"0").parse().context("sphere2 level")?;
            fixtures::sphere2(level)?
        }
        "rp2" => {
            let level: usize = parts.get(1).unwrap_or(&"0").parse().context("rp2 level")?;
            fixtures::rp2(level)?
        }
        "torus" => {
            if parts.len() != 3 {
                bail!("torus takes M and K, e.g. torus:4:4");
            }
            fixtures::torus(parts[1].parse()?, parts[2].parse()?)?
        }
        "s3_boundary" => fixtures::s3_boundary(),
        other => bail!("unknown fixture {other:?}"),
    };
    Ok(mc)
}

fn load_metric(input: &InputOpts) -> anyhow::Result<MetricComplex> {
    match (&input.fixture, &input.input) {
        (Some(spec), None) => parse_fixture(spec),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(json::metric_from_str(&text)?)
        }
        _ => bail!("exactly one of --fixture or --input is required"),
    }
}

/// The metric space the filling radius runs on: true geodesic sample
/// distances for the round fixtures, the 1-skeleton path metric otherwise.
fn load_space(
    input: &InputOpts,
) -> anyhow::Result<(MetricComplex, fillinv::metric::FiniteMetricSpace)> {
    if let Some(spec) = &input.fixture {
        let parts: Vec<&str> = spec.split(':').collect();
        match parts[0] {
            "sphere2" => {
                let level: usize =
                    parts.get(1).unwrap_or(&"0").parse().context("sphere2 level")?;
                return Ok(fixtures::sphere2_space(level)?);
            }
            "rp2" => {
                let level: usize =
                    parts.get(1).unwrap_or(&"0").parse().context("rp2 level")?;
                return Ok(fixtures::rp2_space(level)?);
            }
            _ => {}
        }
    }
    let mc = load_metric(input)?;
    let fms = mc.path_metric()?;
    Ok((mc, fms))
}

fn parse_cell(spec: &str) -> anyhow::Result<AttachingCycle> {
    if let Some(rest) = spec.strip_prefix("pair:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            bail!("pair cell takes two vertices, e.g. pair:0:5");
        }
        return Ok(AttachingCycle::Pair(parts[0].parse()?, parts[1].parse()?));
    }
    if let Some(rest) = spec.strip_prefix("loop:") {
        let vs: Vec<usize> = rest
            .split(',')
            .map(|v| v.trim().parse::<usize>())
            .collect::<Result<_, _>>()?;
        return Ok(AttachingCycle::Loop(vs));
    }
    bail!("cell must be pair:P:Q or loop:A,B,C,...")
}

fn parse_map(
    spec: &str,
    mc: &MetricComplex,
    input: &InputOpts,
    seed: u64,
) -> anyhow::Result<SimplicialMap> {
    match spec {
        "identity" => Ok(SimplicialMap::identity(mc.complex())),
        "translate" => {
            let Some(fix) = &input.fixture else {
                bail!("translate maps need a torus fixture");
            };
            let parts: Vec<&str> = fix.split(':').collect();
            if parts[0] != "torus" || parts.len() != 3 {
                bail!("translate maps need a torus:M:K fixture");
            }
            Ok(fixtures::torus_translation(parts[1].parse()?, parts[2].parse()?, seed)?)
        }
        other => {
            let Some(rest) = other.strip_prefix("vertices:") else {
                bail!("map must be identity, translate, or vertices:v0,v1,...");
            };
            let images: Vec<usize> = rest
                .split(',')
                .map(|v| v.trim().parse::<usize>())
                .collect::<Result<_, _>>()?;
            Ok(SimplicialMap::new(mc.complex().clone(), mc.complex().clone(), images)?)
        }
    }
}

fn write_out(out: Option<&std::path::Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn fmt_scalar(s: &Scalar) -> String {
    format!("{}", s.to_f64())
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

fn cmd_validate(
    input: &InputOpts,
    strict: bool,
    out: Option<&std::path::Path>,
) -> anyhow::Result<()> {
    let complex = match (&input.fixture, &input.input) {
        (Some(spec), None) => parse_fixture(spec)?.complex().clone(),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let parsed: json::ComplexJson =
                serde_json::from_str(&text).map_err(|e| anyhow!("bad JSON: {e}"))?;
            if strict {
                let mut all = Vec::new();
                for (key, list) in &parsed.simplices {
                    let _dim: usize = key.parse().map_err(|_| anyhow!("bad key {key}"))?;
                    all.extend(list.iter().cloned());
                }
                fillinv::complex::SimplicialComplex::validate(
                    parsed.vertex_count,
                    all,
                    fillinv::complex::FaceMode::Strict,
                )?
            } else {
                parsed.to_complex()?
            }
        }
        _ => bail!("exactly one of --fixture or --input is required"),
    };
    let counts: Vec<String> = complex.counts().iter().map(|c| c.to_string()).collect();
    let report = format!(
        "valid: vertices {}, dimension {}, counts {}, connected {}, inferred_faces {}\n",
        complex.vertex_count(),
        complex.dim().map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
        counts.join("/"),
        complex.is_connected(),
        complex.inferred_faces().len(),
    );
    write_out(out, &report)
}

fn cmd_homology(input: &InputOpts, common: &CommonOpts) -> anyhow::Result<()> {
    let mc = load_metric(input)?;
    let summary = homology_summary(mc.complex(), common.ring);
    let mut text = format!("ring {}\n", common.ring);
    for d in &summary.per_dim {
        if d.torsion.is_empty() {
            text.push_str(&format!("dim {}: rank {}\n", d.dim, d.rank));
        } else {
            let tors: Vec<String> = d.torsion.iter().map(|t| t.to_string()).collect();
            text.push_str(&format!(
                "dim {}: rank {} torsion [{}]\n",
                d.dim,
                d.rank,
                tors.join(", ")
            ));
        }
    }
    write_out(common.out.as_deref(), &text)
}

fn fillrad_csv<K: Coeff>(cert: &FillRadCertificate<K>) -> String {
    let mut csv = String::from("scale,nerve_simplex_counts,class_bounds\n");
    for probe in &cert.probes {
        let counts: Vec<String> = probe.counts.iter().map(|c| c.to_string()).collect();
        csv.push_str(&format!(
            "{},{},{}\n",
            probe.scale.to_f64(),
            counts.join("|"),
            u8::from(probe.bounds)
        ));
    }
    csv.push_str(&format!(
        "radius,{},{}\n",
        cert.radius.to_f64(),
        cert.witness.support_size()
    ));
    csv
}

fn cmd_fillrad(input: &InputOpts, common: &CommonOpts) -> anyhow::Result<()> {
    let (mc, fms) = load_space(input)?;
    fn go<K: ChainOps>(
        mc: &MetricComplex,
        fms: &fillinv::metric::FiniteMetricSpace,
        common: &CommonOpts,
    ) -> anyhow::Result<()> {
        let z = fillinv::homology::fundamental_cycle::<K>(mc.complex())?
            .ok_or(FillError::NoFundamentalClass)?;
        let cert = filling_radius_of_cycle::<K>(fms, &z, common.max_dim)?;
        println!(
            "fillrad over {}: radius {} (death scale {}, witness size {})",
            K::RING,
            fmt_scalar(&cert.radius),
            fmt_scalar(&cert.death_scale),
            cert.witness.support_size()
        );
        if let Some(out) = &common.out {
            fs::write(out, fillrad_csv(&cert))?;
        }
        Ok(())
    }
    match common.ring {
        RingSpec::IntegersZ => go::<BigInt>(&mc, &fms, common),
        RingSpec::RationalsQ => go::<BigRational>(&mc, &fms, common),
        RingSpec::ModTwoZ2 => go::<Z2>(&mc, &fms, common),
    }
}

fn fillvol_json<K: Coeff>(cert: &FillVolCertificate<K>) -> String {
    let chain: Vec<serde_json::Value> = cert
        .chain
        .iter()
        .map(|(s, c)| serde_json::json!([s, c.to_string()]))
        .collect();
    let json = serde_json::json!({
        "mode": cert.mode.label(),
        "ring": cert.ring.flag(),
        "value": cert.value.to_f64(),
        "is_certified_optimal": cert.certified_optimal,
        "chain": chain,
    });
    serde_json::to_string_pretty(&json).expect("serializable") + "\n"
}

fn cmd_fillvol(input: &InputOpts, common: &CommonOpts, ambient: &str) -> anyhow::Result<()> {
    let mc = load_metric(input)?;
    let ambient = if ambient == "cone" {
        AmbientSpec::Cone
    } else if let Some(rest) = ambient.strip_prefix("nerve:") {
        AmbientSpec::NerveAtScale(Scalar::parse(rest)?)
    } else {
        bail!("ambient must be cone or nerve:SCALE");
    };
    fn go<K: fillinv::fillvol::OptimalChain>(
        mc: &MetricComplex,
        ambient: &AmbientSpec,
        common: &CommonOpts,
    ) -> anyhow::Result<()> {
        let cert = fillvol_upper::<K>(mc, ambient, &SearchBudget::default())?;
        println!(
            "fillvol upper bound over {}: {} (certified optimal for these weights: {})",
            K::RING,
            fmt_scalar(&cert.value),
            cert.certified_optimal
        );
        if let Some(out) = &common.out {
            fs::write(out, fillvol_json(&cert))?;
        }
        Ok(())
    }
    match common.ring {
        RingSpec::IntegersZ => go::<BigInt>(&mc, &ambient, common),
        RingSpec::RationalsQ => go::<BigRational>(&mc, &ambient, common),
        RingSpec::ModTwoZ2 => go::<Z2>(&mc, &ambient, common),
    }
}

fn cmd_map_check(
    input: &InputOpts,
    common: &CommonOpts,
    map: &str,
    degree_bound: usize,
) -> anyhow::Result<()> {
    let mc = load_metric(input)?;
    let f = parse_map(map, &mc, input, common.seed)?;
    let n = f.source().dim().ok_or_else(|| anyhow!("empty complex"))?;
    let report = check_monotone(&f, n, degree_bound)?;
    let mut text = format!(
        "({}, {})-monotone: {} (max preimages {})\n",
        report.n, report.d, report.is_monotone, report.max_preimages
    );
    let deg = match common.ring {
        RingSpec::IntegersZ => degree::<BigInt>(&f).map(|d| d.to_string()),
        RingSpec::RationalsQ => degree::<BigRational>(&f).map(|d| d.to_string()),
        RingSpec::ModTwoZ2 => degree::<Z2>(&f).map(|d| d.to_string()),
    };
    match deg {
        Ok(d) => text.push_str(&format!("degree over {}: {}\n", common.ring, d)),
        Err(e) => text.push_str(&format!("degree over {}: undefined ({e})\n", common.ring)),
    }
    write_out(common.out.as_deref(), &text)
}

fn cmd_extend(
    input: &InputOpts,
    common: &CommonOpts,
    cell: &str,
    radius: &str,
    mesh: usize,
) -> anyhow::Result<()> {
    let mc = load_metric(input)?;
    let cycle = parse_cell(cell)?;
    let r = Scalar::parse(radius)?;
    let ext = attach_cell(&mc, &cycle, &r, mesh)?;
    let text = format!(
        "attached {}-cell: vertices {} -> {}, strong isometry verified\n",
        ext.cells[0].k,
        mc.complex().vertex_count(),
        ext.result.complex().vertex_count()
    );
    if let Some(out) = &common.out {
        fs::write(out, json::metric_to_string(&ext.result))?;
    }
    print!("{text}");
    Ok(())
}

fn cmd_lipschitz_check(
    input: &InputOpts,
    common: &CommonOpts,
    domain_spec: &str,
    random_values: bool,
) -> anyhow::Result<()> {
    let (_, fms) = load_space(input)?;
    let domain: Vec<usize> = domain_spec
        .split(',')
        .map(|v| v.trim().parse::<usize>())
        .collect::<Result<_, _>>()?;
    let kp = fillinv::metric::kuratowski_embed(&fms)?;
    let values: Vec<Vec<Scalar>> = if random_values {
        // deterministic rationals from the seed
        let mut state = common.seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut next = move || {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        domain
            .iter()
            .map(|_| {
                (0..kp.ambient_dim())
                    .map(|_| Scalar::from_ratio((next() % 65) as i64 - 32, 8))
                    .collect()
            })
            .collect()
    } else {
        domain.iter().map(|&y| kp.point(y).to_vec()).collect()
    };
    let pm = fillinv::lipschitz::PartialMap::new(fms.clone(), domain.clone(), values)?;
    let before = fillinv::lipschitz::dilation(&pm)?;
    let extended =
        fillinv::lipschitz::mcshane_extend(&pm, fillinv::lipschitz::ExtensionRule::PerPoint)?;
    let after = extended.dilation_profile(&fms);

    let mut text = format!("global dilation before {}
", before.global.to_f64());
    for (y, d) in &before.per_point {
        text.push_str(&format!("before y={y} dil={}
", d.to_f64()));
    }
    text.push_str(&format!("global dilation after {}
", after.global.to_f64()));
    for &y in &domain {
        text.push_str(&format!("after y={y} dil={}
", after.per_point[&y].to_f64()));
    }
    let preserved = after.global == before.global
        && domain.iter().all(|y| after.per_point[y] == before.per_point[y]);
    text.push_str(&format!("per-point dilations preserved: {preserved}
"));
    write_out(common.out.as_deref(), &text)?;
    if !preserved {
        bail!("extension failed to preserve dilations");
    }
    Ok(())
}

fn comparison_csv(report: &fillinv::experiment::ComparisonReport) -> String {
    let mut csv = String::from("t,ring,fillrad_V,fillrad_W,vol_V,vol_W,ok\n");
    for row in &report.rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.t.to_f64(),
            row.ring.flag(),
            row.fillrad_source.to_f64(),
            row.fillrad_target.to_f64(),
            row.vol_source.to_f64(),
            row.vol_target.to_f64(),
            u8::from(row.ok)
        ));
    }
    csv
}

fn cmd_experiment_compare(
    input: &InputOpts,
    common: &CommonOpts,
    map: &str,
    t_spec: &str,
    with_fillvol: bool,
) -> anyhow::Result<()> {
    let mc = load_metric(input)?;
    let f = parse_map(map, &mc, input, common.seed)?;
    let t_values: Vec<Scalar> = t_spec
        .split(',')
        .map(|t| Scalar::parse(t.trim()))
        .collect::<Result<_, _>>()?;
    let report = match common.ring {
        RingSpec::IntegersZ => comparison_experiment::<BigInt>(
            &f,
            &mc,
            &mc,
            &t_values,
            common.max_dim,
            with_fillvol,
        )?,
        RingSpec::RationalsQ => comparison_experiment::<BigRational>(
            &f,
            &mc,
            &mc,
            &t_values,
            common.max_dim,
            with_fillvol,
        )?,
        RingSpec::ModTwoZ2 => {
            comparison_experiment::<Z2>(&f, &mc, &mc, &t_values, common.max_dim, with_fillvol)?
        }
    };
    let csv = comparison_csv(&report);
    println!(
        "comparison over {}: {} rows, all_ok {}",
        common.ring,
        report.rows.len(),
        report.all_ok
    );
    if let Some(out) = &common.out {
        fs::write(out, csv)?;
    } else {
        print!("{csv}");
    }
    if !report.all_ok {
        bail!("comparison inequality violated");
    }
    Ok(())
}

fn cmd_experiment_extend(
    input: &InputOpts,
    common: &CommonOpts,
    cell: &str,
    radius: &str,
    mesh: usize,
    with_fillvol: bool,
) -> anyhow::Result<()> {
    let mc = load_metric(input)?;
    let cycle = parse_cell(cell)?;
    let r = Scalar::parse(radius)?;
    let ext = attach_cell(&mc, &cycle, &r, mesh)?;
    let report = match common.ring {
        RingSpec::IntegersZ => extension_experiment::<BigInt>(&ext, common.max_dim, with_fillvol)?,
        RingSpec::RationalsQ => {
            extension_experiment::<BigRational>(&ext, common.max_dim, with_fillvol)?
        }
        RingSpec::ModTwoZ2 => extension_experiment::<Z2>(&ext, common.max_dim, with_fillvol)?,
    };
    if common.tolerance < 0.0 {
        bail!("--tolerance must be nonnegative");
    }
    let drift =
        (report.fillrad_extended.to_f64() - report.fillrad_base.to_f64()).abs();
    let ok = report.within_gap || drift <= common.tolerance;
    let mut csv = String::from("t,ring,fillrad_V,fillrad_W,vol_V,vol_W,ok\n");
    csv.push_str(&format!(
        ",{},{},{},{},{},{}\n",
        report.ring.flag(),
        report.fillrad_extended.to_f64(),
        report.fillrad_base.to_f64(),
        fillinv::maps::total_volume(&ext.result)?.to_f64(),
        fillinv::maps::total_volume(&ext.base)?.to_f64(),
        u8::from(ok)
    ));
    println!(
        "extension over {}: base radius {}, extended radius {}, equal {}",
        common.ring,
        report.fillrad_base.to_f64(),
        report.fillrad_extended.to_f64(),
        report.equal_exactly
    );
    if let Some(out) = &common.out {
        fs::write(out, csv)?;
    } else {
        print!("{csv}");
    }
    if !ok {
        bail!("extension experiment outside the allowed gap");
    }
    Ok(())
}

fn cmd_fixture_emit(fixture: &str, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    let mc = parse_fixture(fixture)?;
    let text = json::metric_to_string(&mc) + "\n";
    write_out(out, &text)
}
