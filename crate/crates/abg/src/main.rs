use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use abg::algebra::{boundary_maps_from_complex, homology, Ring};
use abg::lattice::{
    cell_count_closed_forms, cubical_cell_count, euler_from_cell_counts, ConstructionParams,
    GroupKind,
};
use abg::pipeline::{default_checks, run_pipeline, RunConfig};
use abg::report::Report;
use abg::scx::{read_scx, to_scx_string};
use abg::{Error, Result};

#[derive(Parser)]
#[command(
    name = "abg",
    version,
    about = "Builds closed hypersurfaces from cubical lattice quotients and verifies their structure"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads; defaults to ABG_THREADS or all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the hypersurface for given parameters, run checks, write artifacts.
    Build(BuildArgs),
    /// Rebuild from parameters, run checks, and compare a stored hypersurface.
    Verify(VerifyArgs),
    /// Homology of a stored complex.
    Invariants(InvariantsArgs),
    /// Independent closed-form cross-checks.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    k: u32,
    #[arg(long = "L")]
    l: u32,
    /// G (full lattice) or Ghat (index-two, integral generators).
    #[arg(long)]
    group: String,
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated check names; defaults depend on k.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Also write the neighborhoods and companion hypersurface.
    #[arg(long)]
    emit_neighborhoods: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// K,L,GROUP
    #[arg(long)]
    params: String,
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
}

#[derive(Args)]
struct InvariantsArgs {
    file: PathBuf,
    /// Highest homology degree to compute; defaults to the complex dimension.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Z or Z2.
    #[arg(long, default_value = "Z")]
    coeff: String,
    /// Write the JSON here as well as to stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(subcommand)]
    which: OracleCmd,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Cubical cell counts and Euler characteristic of the skeleton quotient.
    Euler {
        #[arg(long)]
        k: u32,
        #[arg(long = "L")]
        l: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads(cli.threads);
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn init_threads(flag: Option<usize>) {
    let n = flag.or_else(|| {
        std::env::var("ABG_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Build(args) => build(args),
        Cmd::Verify(args) => verify(args),
        Cmd::Invariants(args) => invariants(args),
        Cmd::Oracle(args) => oracle(args),
    }
}

fn parse_group(s: &str) -> Result<GroupKind> {
    s.parse()
}

fn print_checks(report: &Report) {
    for c in &report.checks {
        println!("[{}] {}", c.status, c.name);
    }
}

fn exit_by_verdict(report: &Report) -> ExitCode {
    if report.all_passed() {
        println!("all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("FAILURES present");
        ExitCode::from(1)
    }
}

fn build(args: BuildArgs) -> Result<ExitCode> {
    let params = ConstructionParams::new(args.k, args.l, parse_group(&args.group)?)?;
    let cfg = RunConfig {
        params,
        checks: args.checks.unwrap_or_else(|| default_checks(args.k)),
        out_dir: Some(args.out.clone()),
        emit_neighborhoods: args.emit_neighborhoods,
    };
    let (report, _) = run_pipeline(&cfg)?;
    print_checks(&report);
    println!("report: {}", args.out.join("report.json").display());
    Ok(exit_by_verdict(&report))
}

fn parse_params(s: &str) -> Result<ConstructionParams> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::ParseError(format!(
            "expected K,L,GROUP, got '{}'",
            s
        )));
    }
    let k = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::ParseError(format!("bad k '{}'", parts[0])))?;
    let l = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::ParseError(format!("bad L '{}'", parts[1])))?;
    ConstructionParams::new(k, l, parse_group(parts[2].trim())?)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let stored = read_scx(&args.file)?;
    let params = parse_params(&args.params)?;
    let cfg = RunConfig {
        params,
        checks: args.checks.unwrap_or_else(|| default_checks(params.k)),
        out_dir: None,
        emit_neighborhoods: false,
    };
    let (mut report, built) = run_pipeline(&cfg)?;
    let matches = to_scx_string(&stored) == to_scx_string(&built.x.complex);
    report.input_match = Some(matches);
    print_checks(&report);
    println!(
        "[{}] input file matches rebuilt hypersurface",
        if matches { "pass" } else { "FAIL" }
    );
    Ok(exit_by_verdict(&report))
}

fn invariants(args: InvariantsArgs) -> Result<ExitCode> {
    let complex = read_scx(&args.file)?;
    let ring = match args.coeff.as_str() {
        "Z" => Ring::Z,
        "Z2" => Ring::Z2,
        other => {
            return Err(Error::ParseError(format!(
                "coefficients must be Z or Z2, got '{}'",
                other
            )))
        }
    };
    let max_dim = args.max_dim.unwrap_or_else(|| complex.dim());
    let maps = boundary_maps_from_complex(&complex);
    let mut degrees = Vec::new();
    for d in 0..=max_dim {
        let h = homology(&maps, d, ring)?;
        degrees.push(serde_json::json!({
            "degree": d,
            "betti": h.betti,
            "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        }));
    }
    let out = serde_json::json!({
        "ring": ring.to_string(),
        "f_vector": complex.f_vector(),
        "euler": complex.euler_characteristic(),
        "homology": degrees,
    });
    let mut text = serde_json::to_string_pretty(&out).expect("json prints");
    text.push('\n');
    print!("{}", text);
    if let Some(path) = args.json {
        std::fs::write(path, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(args: OracleArgs) -> Result<ExitCode> {
    match args.which {
        OracleCmd::Euler { k, l } => {
            let params = ConstructionParams::new(k, l, GroupKind::Ghat)?;
            for i in 0..=params.skeleton_dim() {
                let counted = cubical_cell_count(params, i)?;
                let (ours, published) = cell_count_closed_forms(params, i);
                println!(
                    "dim {}: cells={} closed_form={} published_variant={}",
                    i, counted, ours, published
                );
            }
            println!("euler: {}", euler_from_cell_counts(params)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
