use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use atiyah::lab::{self, ExperimentConfig, FieldSpec, JobKind, JobParams, JobSpec, Report, Status};
use atiyah::Error;

#[derive(Parser)]
#[command(name = "atiyah-lab", version, about = "Exact experiments with fat points on the Atiyah ruled surface")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Overrides the seed of the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory for report.json and report.csv.
    #[arg(long, global = true, env = "ATIYAH_OUT_DIR", default_value = "atiyah-out")]
    out: PathBuf,
    /// Which report files to write.
    #[arg(long, global = true, value_enum, default_value_t = Format::Both)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Runs every job of a TOML configuration.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Re-checks every certificate in a JSON report.
    Verify { report: PathBuf },
    /// Section dimensions of O(nE) and O(lE + f_q) over a level range.
    H0(Single),
    /// Sections vanishing to given orders at fat points.
    H0Fat(Single),
    /// Least level with a curve of multiplicity m at a point.
    Lambda(Single),
    /// Largest multiplicity reachable at each level.
    Mu(Single),
    /// Checks h0(O(nE)) against 1, or floor(n/p) + 1 in characteristic p.
    VerifyProp22(Single),
    /// Checks h0(O(lE + f_q)) = l + 1.
    VerifyProp23(Single),
    /// Builds and checks the characteristic p witness curves for m > p.
    VerifyProp27(Single),
    /// Emptiness over Q against an explicit curve in characteristic p.
    ExampleTheorem(Single),
    /// Counts the points of the curve over a finite field.
    GroupOrder(Single),
    /// Compares fat-point dimensions over Q and modulo a prime.
    CompareChar(Single),
}

#[derive(Args)]
struct Single {
    /// Weierstrass coefficients a1,a2,a3,a4,a6.
    #[arg(long, value_parser = parse_curve, allow_hyphen_values = true)]
    curve: [String; 5],
    /// Characteristic of the base field, 0 for the rationals.
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Extension degree k of F_{p^k}.
    #[arg(long, default_value_t = 1)]
    degree: u32,
    /// Marked point q; defaults to the first affine point found.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    q: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    t: Option<Vec<String>>,
    /// Inclusive level range `LO HI`, or a single level.
    #[arg(long, num_args = 1..=2)]
    levels: Vec<usize>,
    /// Multiplicities, comma-separated.
    #[arg(long = "m", value_delimiter = ',')]
    multiplicities: Vec<usize>,
    /// `LEVEL:M` rows for compare-char.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pairs: Vec<(usize, usize)>,
    /// Sample point `X Y [W0]`; repeatable.
    #[arg(long = "point", num_args = 2..=3, action = clap::ArgAction::Append, allow_negative_numbers = true)]
    points: Vec<String>,
    /// Number of random sample points when no --point is given.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    cap: Option<usize>,
    /// Target characteristic for compare-char.
    #[arg(long)]
    target_p: Option<u64>,
    #[arg(long)]
    target_k: Option<u32>,
    /// Expected group order for group-order.
    #[arg(long)]
    expect: Option<u64>,
}

fn parse_curve(s: &str) -> Result<[String; 5], String> {
    let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
    parts.try_into().map_err(|v: Vec<String>| format!("expected five comma-separated coefficients, got {}", v.len()))
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (l, m) = s.split_once(':').ok_or_else(|| format!("expected LEVEL:M, got {s:?}"))?;
    Ok((l.parse().map_err(|e| format!("{e}"))?, m.parse().map_err(|e| format!("{e}"))?))
}

fn pair(v: Option<Vec<String>>) -> Option<[String; 2]> {
    v.map(|v| [v[0].clone(), v[1].clone()])
}

impl Single {
    fn into_config(self, kind: JobKind, raw_points: Vec<Vec<String>>) -> ExperimentConfig {
        let job = JobSpec {
            id: kind.name().to_string(),
            kind,
            curve: None,
            field: None,
            q: None,
            t: None,
            params: JobParams {
                levels: self.levels,
                multiplicities: self.multiplicities,
                pairs: self.pairs,
                points: raw_points,
                samples: self.samples,
                cap: self.cap,
                p: self.target_p,
                k: self.target_k,
                expect: self.expect,
            },
        };
        ExperimentConfig {
            seed: 0,
            curve: Some(self.curve),
            field: Some(FieldSpec { p: self.characteristic, k: self.degree }),
            q: pair(self.q),
            t: pair(self.t),
            jobs: vec![job],
        }
    }
}

fn grouped_points(matches: &clap::ArgMatches) -> Vec<Vec<String>> {
    let Some((_, sub)) = matches.subcommand() else { return Vec::new() };
    match sub.try_get_occurrences::<String>("points") {
        Ok(Some(occ)) => occ.map(|o| o.cloned().collect()).collect(),
        _ => Vec::new(),
    }
}

fn write_report(report: &Report, out: &Path, format: Format) -> Result<(), Error> {
    std::fs::create_dir_all(out)?;
    if format != Format::Csv {
        std::fs::write(out.join("report.json"), report.to_json()? + "\n")?;
    }
    if format != Format::Json {
        report.write_csv(std::fs::File::create(out.join("report.csv"))?)?;
    }
    Ok(())
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Config(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn verify(path: &Path) -> ExitCode {
    let report = match std::fs::read_to_string(path).map_err(Error::from).and_then(|t| Report::from_json(&t)) {
        Ok(r) => r,
        Err(e) => return exit_for(&Error::Config(e.to_string())),
    };
    match report.verify_certificates() {
        Ok(checks) => {
            let mut ok = true;
            for (job, label, good) in &checks {
                ok &= good;
                println!("{} {job}: {label}", if *good { "PASS" } else { "FAIL" });
            }
            println!("{} certificates checked", checks.len());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => exit_for(&e),
    }
}

fn main() -> ExitCode {
    let matches = <Cli as clap::CommandFactory>::command().get_matches();
    let points = grouped_points(&matches);
    let cli = match <Cli as clap::FromArgMatches>::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let (kind, single) = match cli.command {
        Command::Verify { report } => return verify(&report),
        Command::Run { config } => {
            let cfg = match ExperimentConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return exit_for(&e),
            };
            return execute(cfg, &cli.output);
        }
        Command::H0(s) => (JobKind::H0, s),
        Command::H0Fat(s) => (JobKind::H0Fat, s),
        Command::Lambda(s) => (JobKind::Lambda, s),
        Command::Mu(s) => (JobKind::Mu, s),
        Command::VerifyProp22(s) => (JobKind::VerifyProp22, s),
        Command::VerifyProp23(s) => (JobKind::VerifyProp23, s),
        Command::VerifyProp27(s) => (JobKind::VerifyProp27, s),
        Command::ExampleTheorem(s) => (JobKind::ExampleTheorem, s),
        Command::GroupOrder(s) => (JobKind::GroupOrder, s),
        Command::CompareChar(s) => (JobKind::CompareChar, s),
    };
    execute(single.into_config(kind, points), &cli.output)
}

fn execute(mut cfg: ExperimentConfig, output: &OutputArgs) -> ExitCode {
    if let Some(seed) = output.seed {
        cfg.seed = seed;
    }
    let report = match lab::run(&cfg, output.jobs) {
        Ok(r) => r,
        Err(e) => return exit_for(&e),
    };
    for row in &report.rows {
        println!("{} {} ({}, {} ms)", row.status.as_str(), row.job_id, row.kind.name(), row.wall_ms);
    }
    if let Err(e) = write_report(&report, &output.out, output.format) {
        return exit_for(&e);
    }
    match report.status() {
        Status::Fail => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
