//! `ncsep`: build model graphs, report flag vectors, and find, verify and
//! certify separators.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use ncsep::bounds::{certified_lower_bound, coordinate_cut_size, model_vertex_count};
use ncsep::export::read_graph_json;
use ncsep::flags::{
    cross_check_double_prime, cross_check_nc4, cross_check_prime, facet_census_double_prime, facet_census_prime,
    is_simple_flag, FactoredFlag, FacetShape, FlagComparison, NC4, NC4_DOUBLE_PRIME, NC4_PRIME,
};
use ncsep::separators::{certify_lower_bound_with, SeparatorError};
use ncsep::{
    best_coordinate_cut, build_ncc_graph, cartesian_product_with_cube, coordinate_cut_separator, export_graph,
    level_set_separator, lift_cube_separator, lift_to_product, refine_separator, stacked_triangulation,
    verify_separator, BoundCertificate, BoundsRow, ClusteredGraph, CubeLabeling, FacetCensus, Format, Graph,
    HarperProfile, ProductGraph, SeparationConstant, Separator, Triangulation, VerificationReport,
};

/// Largest `m` accepted by `bounds`; the Harper profile has `2^m + 1` entries.
const MAX_BOUNDS_M: u32 = 22;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Inconsistent(_) => 3,
        }
    }
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "ncsep", version, about = "Separators of doubly truncated neighborly cubical polytope graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the model graph and print its counts.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Write the graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the three flag vectors, facet censuses and cross-checks.
    Flags {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Blueprint for the edge-prism split of the census.
        #[arg(long)]
        blueprint: Option<PathBuf>,
    },
    /// Produce, verify and certify a separator.
    Separate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        constants: ConstantArgs,
        #[arg(long, value_enum, default_value_t = Method::Coordinate)]
        method: Method,
        /// Cut direction, 1-based (coordinate method; default: smallest blueprint degree).
        #[arg(long)]
        direction: Option<usize>,
        /// Weight of the cube layer to lift (level-lift; default: floor(m/2)).
        #[arg(long)]
        level: Option<u32>,
        /// Refinement passes.
        #[arg(long, default_value_t = 5)]
        passes: u32,
        /// Write the separator JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print one JSON record instead of the text report.
        #[arg(long)]
        json: bool,
    },
    /// Check a separator file against a graph.
    Verify {
        /// Graph JSON written by `construct` or `export`.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        separator: PathBuf,
        /// Override the separator's constant.
        #[arg(long)]
        c: Option<SeparationConstant>,
        #[arg(long = "c-prime")]
        c_prime: Option<SeparationConstant>,
    },
    /// Certified lower bound and coordinate-cut size as a CSV table.
    Bounds {
        /// A single m, or a range such as 6-14 or 6..=14.
        #[arg(long)]
        m: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        blueprint_degree: Option<usize>,
        #[command(flatten)]
        constants: ConstantArgs,
    },
    /// Write the model graph in an exchange format.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        /// Convert this graph JSON instead of building one.
        #[arg(long, conflicts_with_all = ["m", "blueprint"])]
        from: Option<PathBuf>,
        #[arg(long, default_value = "metis")]
        format: Format,
        /// Output path (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Cube dimension, at least 4.
    #[arg(long)]
    m: Option<u32>,
    /// Dimension of the extra cube factor.
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Seed of the stacked blueprint.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rotation-system file (lines `i: j1 j2 ...`, 1-based) instead of a stacked blueprint.
    #[arg(long)]
    blueprint: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantArgs {
    /// Separation constant, as p/q or a decimal.
    #[arg(long, default_value = "1/3")]
    c: SeparationConstant,
    /// Certification constant c' < c (default c/2).
    #[arg(long = "c-prime")]
    c_prime: Option<SeparationConstant>,
}

impl ConstantArgs {
    fn resolve(&self) -> Result<(SeparationConstant, SeparationConstant)> {
        let c_prime = self.c_prime.unwrap_or_else(|| self.c.half());
        if c_prime >= self.c {
            return Err(CliError::Usage(format!("--c-prime {c_prime} must be smaller than --c {}", self.c)));
        }
        Ok((self.c, c_prime))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Coordinate,
    LevelLift,
    Refine,
}

fn read_blueprint(path: &Path) -> Result<Triangulation> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    text.parse().map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn blueprint_for(m: Option<u32>, seed: u64, path: Option<&Path>) -> Result<(u32, Triangulation, Option<u64>)> {
    match (m, path) {
        (_, Some(path)) => {
            let h = read_blueprint(path)?;
            let count = h.vertex_count() as u32;
            if m.is_some_and(|m| m != count) {
                return Err(CliError::Usage(format!("--m {} but the blueprint has {count} vertices", m.unwrap_or(0))));
            }
            Ok((count, h, None))
        }
        (Some(m), None) => {
            if m < 4 {
                return Err(CliError::Usage(format!("--m must be at least 4, got {m}")));
            }
            let h = stacked_triangulation(m as usize, seed).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok((m, h, Some(seed)))
        }
        (None, None) => Err(CliError::Usage("either --m or --blueprint is required".into())),
    }
}

impl GraphArgs {
    fn build(&self) -> Result<ProductGraph> {
        let (m, h, seed) = blueprint_for(self.m, self.seed, self.blueprint.as_deref())?;
        let base = build_ncc_graph(m, &h).map_err(|e| CliError::Usage(e.to_string()))?.with_seed(seed);
        cartesian_product_with_cube(&base, self.k).map_err(|e| CliError::Usage(e.to_string()))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| io_error(path, e))
}

fn write_graph(g: &ProductGraph, format: Format, out: Option<&Path>) -> Result<()> {
    let result = match out {
        Some(path) => {
            let mut sink = create(path)?;
            export_graph(g, format, &mut sink).and_then(|_| sink.flush().map_err(Into::into))
        }
        None => {
            let stdout = io::stdout();
            let mut sink = BufWriter::new(stdout.lock());
            export_graph(g, format, &mut sink).and_then(|_| sink.flush().map_err(Into::into))
        }
    };
    result.map_err(|e| CliError::Io(e.to_string()))
}

fn cmd_construct(graph: &GraphArgs, format: Format, out: Option<&Path>) -> Result<()> {
    let g = graph.build()?;
    let base = g.base();
    let m = base.m();
    let k = g.extra_dim();
    println!("m = {m}, k = {k}, blueprint degrees = {:?}", ncsep::degree_profile(base.blueprint()));
    println!("n = {}", g.vertex_count());
    println!("edges = {} (degree {})", g.edge_count(), 4 + k);
    println!("intra-cluster edges = {}", base.intra_edge_count() << k);
    println!("inter-cluster edges = {}", base.inter_edge_count() << k);
    println!("extra-cube edges = {}", g.edge_count() - ((base.intra_edge_count() + base.inter_edge_count()) << k));

    let fv = NC4_DOUBLE_PRIME.evaluate::<BigInt>(m).map_err(|e| CliError::Inconsistent(e.to_string()))?;
    let n_base = BigInt::from(base.vertex_count());
    let e_base = BigInt::from(base.edge_count());
    let matches = n_base == fv.f0 && e_base == fv.f1;
    println!(
        "flag vector of NC4(m)'': f0 = {}, f1 = {} ({})",
        fv.f0,
        fv.f1,
        if matches { "matches the base graph" } else { "MISMATCH" }
    );
    if let Some(path) = out {
        write_graph(&g, format, Some(path))?;
        println!("wrote {format} graph to {}", path.display());
    }
    if !matches {
        return Err(CliError::Inconsistent(format!(
            "base graph has n = {n_base}, edges = {e_base}; flag vector says {} and {}",
            fv.f0, fv.f1
        )));
    }
    Ok(())
}

fn print_flag(flag: &FactoredFlag, m: u32) -> Result<()> {
    let fv = flag.evaluate::<BigInt>(m).map_err(|e| CliError::Usage(e.to_string()))?;
    let factor = flag.factor::<BigInt>(m);
    let simple = is_simple_flag(&fv, 4).map_err(|e| CliError::Inconsistent(e.to_string()))?;
    println!("{:<10} {}", flag.name, flag.template());
    println!("{:<10} = {factor}*2^{} = {fv}", "", m - 2);
    println!("{:<10} euler residual = {}, simple = {}", "", fv.euler_residual(), if simple { "yes" } else { "no" });
    Ok(())
}

fn print_census(title: &str, census: &FacetCensus) {
    println!("{title}");
    for family in &census.families {
        let shape = match &family.shape {
            FacetShape::Fixed(f) => format!("f = ({}, {}, {})", f[0], f[1], f[2]),
            FacetShape::Prism { k } => format!("prism over {k}-gon"),
            FacetShape::PrismRange { min_k, max_k } => format!("prisms over {min_k}..{max_k}-gons"),
        };
        println!("  {:<28} {:>16}  {:<26} incidences {}", family.name, family.count, shape, family.incidences);
    }
    println!("  {:<28} {:>16}  {:<26} incidences {}", "total", census.facet_count(), "", census.incidences());
}

fn print_check(name: &str, check: &FlagComparison<BigInt>) {
    if check.agrees() {
        println!("{name:<10} printed = recount = {}", check.printed);
    } else {
        println!("{name:<10} MISMATCH on {}", check.mismatches.join(", "));
        println!("{:<10} printed {}", "", check.printed);
        println!("{:<10} recount {}", "", check.derived);
    }
}

fn cmd_flags(m: u32, seed: u64, blueprint: Option<&Path>) -> Result<()> {
    if m < 4 {
        return Err(CliError::Usage(format!("--m must be at least 4, got {m}")));
    }
    let (_, h, _) = blueprint_for(Some(m), seed, blueprint)?;
    let flag_err = |e: ncsep::flags::FlagError| CliError::Usage(e.to_string());
    println!("flag vectors (f0, f1, f2, f3; f03) at m = {m}");
    for flag in [&NC4, &NC4_PRIME, &NC4_DOUBLE_PRIME] {
        print_flag(flag, m)?;
    }
    println!();
    print_census("facet census of NC4(m)'", &facet_census_prime::<BigInt>(m).map_err(flag_err)?);
    print_census("facet census of NC4(m)''", &facet_census_double_prime::<BigInt>(m, Some(&h)).map_err(flag_err)?);
    println!();
    println!("cross-checks against independent recounts");
    let checks = [
        ("NC4(m)", cross_check_nc4::<BigInt>(m)),
        ("NC4(m)'", cross_check_prime::<BigInt>(m)),
        ("NC4(m)''", cross_check_double_prime::<BigInt>(m)),
    ];
    let mut failed = Vec::new();
    for (name, check) in checks {
        let check = check.map_err(|e| CliError::Inconsistent(format!("{name}: {e}")))?;
        print_check(name, &check);
        if !check.agrees() {
            failed.push(format!("{name} ({})", check.mismatches.join(", ")));
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Inconsistent(format!("cross-check failed for {}", failed.join("; "))))
    }
}

fn sep_error(e: SeparatorError) -> CliError {
    match e {
        SeparatorError::Unbalanced(_) | SeparatorError::Invalid(_) | SeparatorError::AbCubeEdge { .. } => {
            CliError::Verification(e.to_string())
        }
        SeparatorError::Inconsistent(_) => CliError::Inconsistent(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

#[derive(Serialize)]
struct Record<'a> {
    n: usize,
    separator: &'a Separator,
    report: &'a VerificationReport,
    certificate: &'a BoundCertificate,
    upper: u64,
}

fn build_separator(
    g: &ProductGraph,
    method: Method,
    c: SeparationConstant,
    direction: Option<usize>,
    level: Option<u32>,
    passes: u32,
    seed: u64,
) -> Result<Separator> {
    let base = g.base();
    let m = base.m();
    let coordinate = || -> Result<Separator> {
        let sep = match direction {
            Some(d) if d == 0 || d > m as usize => {
                return Err(CliError::Usage(format!("--direction must be in 1..={m}, got {d}")));
            }
            Some(d) => coordinate_cut_separator(base, d - 1).map_err(sep_error)?,
            None => best_coordinate_cut(base),
        };
        Ok(lift_to_product(g, &sep).with_constant(c))
    };
    match method {
        Method::Coordinate => coordinate(),
        Method::Refine => Ok(refine_separator(g, &coordinate()?, passes, seed)),
        Method::LevelLift => {
            let level = level.unwrap_or(m / 2);
            let cube_sep = level_set_separator(m, level).map_err(|e| CliError::Usage(e.to_string()))?;
            let labeling = CubeLabeling::from_cube_separator(m, &cube_sep).map_err(sep_error)?;
            let sep = lift_cube_separator(g, &labeling, None).map_err(sep_error)?;
            Ok(sep.with_constant(c))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_separate(
    graph: &GraphArgs,
    constants: &ConstantArgs,
    method: Method,
    direction: Option<usize>,
    level: Option<u32>,
    passes: u32,
    out: Option<&Path>,
    json: bool,
) -> Result<()> {
    let (c, c_prime) = constants.resolve()?;
    let g = graph.build()?;
    let sep = build_separator(&g, method, c, direction, level, passes, graph.seed)?;
    if let Some(path) = out {
        let mut sink = create(path)?;
        serde_json::to_writer(&mut sink, &sep).map_err(|e| io_error(path, e))?;
        writeln!(sink).and_then(|_| sink.flush()).map_err(|e| io_error(path, e))?;
    }
    let report = verify_separator(&g, &sep);
    if !report.is_valid() {
        print!("{report}");
        return Err(CliError::Verification(format!("the {} separator is not valid at c = {c}", sep.provenance.method)));
    }
    let profile = HarperProfile::new(g.cube_dim()).map_err(|e| CliError::Usage(e.to_string()))?;
    let cert = certify_lower_bound_with(&profile, &g, &sep, Some(c_prime)).map_err(sep_error)?;
    // The coordinate cut bounds the optimum only where it is valid at this c.
    let cut = lift_to_product(&g, &best_coordinate_cut(g.base())).with_constant(c);
    let upper = if verify_separator(&g, &cut).is_valid() { cut.size().min(sep.size()) } else { sep.size() } as u64;
    let n = g.vertex_count();
    if json {
        let record = Record { n, separator: &sep, report: &report, certificate: &cert, upper };
        let text = serde_json::to_string_pretty(&record).map_err(|e| CliError::Io(e.to_string()))?;
        println!("{text}");
        return Ok(());
    }
    let nf = n as f64;
    println!("method = {}", sep.provenance.method);
    print!("{report}");
    println!(
        "certificate: {} c-clusters ({} a, {} b), linear threshold {}, Harper bound {}, certified {}, case {:?}",
        cert.c_cluster_count,
        cert.a_clusters,
        cert.b_clusters,
        cert.linear_threshold,
        cert.harper_bound,
        cert.certified_bound,
        cert.verdict
    );
    println!(
        "{} <= min |C| <= {} (certified lower bound, best of this separator and the coordinate cut; this |C| = {})",
        cert.certified_bound,
        upper,
        sep.size()
    );
    println!("n = {n}, n/ln n = {:.1}, n/ln^1.5 n = {:.1}", nf / nf.ln(), nf / nf.ln().powf(1.5));
    if let Some(path) = out {
        println!("wrote separator to {}", path.display());
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn cmd_verify(
    graph: &Path,
    separator: &Path,
    c: Option<SeparationConstant>,
    c_prime: Option<SeparationConstant>,
) -> Result<()> {
    let file = File::open(graph).map_err(|e| io_error(graph, e))?;
    let doc = read_graph_json(BufReader::new(file)).map_err(|e| CliError::Usage(format!("{}: {e}", graph.display())))?;
    let g = doc.rebuild().map_err(|e| CliError::Usage(format!("{}: {e}", graph.display())))?;
    let mut sep: Separator = read_json(separator)?;
    if let Some(c) = c {
        sep = sep.with_constant(c);
    }
    let report = verify_separator(&g, &sep);
    print!("{report}");
    if !report.is_valid() {
        return Err(CliError::Verification(format!("{} violation(s)", report.violations.len())));
    }
    if let Some(cp) = c_prime {
        if cp >= sep.constant {
            return Err(CliError::Usage(format!("--c-prime {cp} must be smaller than c = {}", sep.constant)));
        }
    }
    let profile = HarperProfile::new(g.cube_dim()).map_err(|e| CliError::Usage(e.to_string()))?;
    let cert = certify_lower_bound_with(&profile, &g, &sep, c_prime).map_err(sep_error)?;
    println!("certified lower bound {} <= |C| = {}", cert.certified_bound, sep.size());
    Ok(())
}

fn parse_range(text: &str) -> Result<(u32, u32)> {
    let bad = || CliError::Usage(format!("cannot parse m range {text:?} (use 8, 6-14 or 6..=14)"));
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        (num(a)?, num(b)?.checked_sub(1).ok_or_else(bad)?)
    } else if let Some((a, b)) = text.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let m = num(text)?;
        (m, m)
    };
    if lo < 4 || lo > hi || hi > MAX_BOUNDS_M {
        return Err(CliError::Usage(format!("m range {lo}..={hi} must lie within 4..={MAX_BOUNDS_M}")));
    }
    Ok((lo, hi))
}

fn cmd_bounds(range: &str, seed: u64, blueprint_degree: Option<usize>, constants: &ConstantArgs) -> Result<()> {
    let (c, c_prime) = constants.resolve()?;
    let (lo, hi) = parse_range(range)?;
    let stdout = io::stdout();
    let mut writer = csv::Writer::from_writer(stdout.lock());
    for m in lo..=hi {
        let min_degree = match blueprint_degree {
            Some(d) if !(3..m as usize).contains(&d) => {
                return Err(CliError::Usage(format!("--blueprint-degree must be in 3..{m}, got {d}")));
            }
            Some(d) => d,
            None => {
                let h = stacked_triangulation(m as usize, seed).map_err(|e| CliError::Usage(e.to_string()))?;
                ncsep::degree_profile(&h).into_iter().min().unwrap_or(3)
            }
        };
        let profile = HarperProfile::new(m).map_err(|e| CliError::Usage(e.to_string()))?;
        let lower = certified_lower_bound(&profile, c, c_prime).map_err(sep_error)?;
        let row = BoundsRow::new(m, model_vertex_count(m, 0), lower, coordinate_cut_size(m, 0, min_degree));
        writer.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| CliError::Io(e.to_string()))
}

fn cmd_export(graph: &GraphArgs, from: Option<&Path>, format: Format, out: Option<&Path>) -> Result<()> {
    let g = match from {
        Some(path) => {
            let file = File::open(path).map_err(|e| io_error(path, e))?;
            let doc =
                read_graph_json(BufReader::new(file)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            doc.rebuild().map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        None => graph.build()?,
    };
    write_graph(&g, format, out)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct { graph, format, out } => cmd_construct(&graph, format, out.as_deref()),
        Command::Flags { m, seed, blueprint } => cmd_flags(m, seed, blueprint.as_deref()),
        Command::Separate { graph, constants, method, direction, level, passes, out, json } => {
            cmd_separate(&graph, &constants, method, direction, level, passes, out.as_deref(), json)
        }
        Command::Verify { graph, separator, c, c_prime } => cmd_verify(&graph, &separator, c, c_prime),
        Command::Bounds { m, seed, blueprint_degree, constants } => cmd_bounds(&m, seed, blueprint_degree, &constants),
        Command::Export { graph, from, format, out } => cmd_export(&graph, from.as_deref(), format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
