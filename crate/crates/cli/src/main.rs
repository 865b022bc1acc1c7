use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use novikov_cli::commands::{summary_certify, summary_compute, summary_sample, write_csv};
use novikov_cli::report::to_json;
use novikov_cli::selftest::{bless, selftest};
use novikov_cli::{run_certify, run_compute, run_sample, ClassSpec, CliError, JobInput, JobSpec, Result};
use novikov_core::{load_complex_str, RankMethod};

/// Novikov-Betti numbers, Novikov torsion and free-subgroup certificates.
#[derive(Parser, Debug)]
#[command(name = "novikov", version, arg_required_else_help = true)]
struct Cli {
    /// Recompute the bundled corpus and diff against the expected reports.
    #[arg(long)]
    selftest: bool,
    /// Rewrite the expected corpus reports into DIR.
    #[arg(long, value_name = "DIR", hide = true)]
    bless: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers, optional torsion and a sampler cross-check.
    Compute(JobArgs),
    /// Free-subgroup certificate over explicit or scanned classes.
    Certify(JobArgs),
    /// Homology dimensions with coefficients in flat line bundles.
    Sample(JobArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    /// Presentation such as "<a, b | a b a^-1 = b^2>".
    #[arg(long, conflicts_with_all = ["complex", "job"])]
    pres: Option<String>,
    /// Boundary complex JSON document.
    #[arg(long, value_name = "FILE", conflicts_with = "job")]
    complex: Option<String>,
    /// Job file; option flags below override its options.
    #[arg(long, value_name = "FILE")]
    job: Option<String>,
    /// A rank-1 class `a=1,b=0` (repeatable, one class each).
    #[arg(long, value_name = "k=v,...", conflicts_with_all = ["xi_rows", "scan", "xi_given"])]
    xi: Vec<String>,
    /// One class given by several rows, one per line.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["scan", "xi_given"])]
    xi_rows: Option<String>,
    /// The complex's ring already encodes the class.
    #[arg(long, conflicts_with = "scan")]
    xi_given: bool,
    /// Scan N classes: basis directions, then random primitive classes.
    #[arg(long, value_name = "N")]
    scan: Option<usize>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    #[arg(long, value_name = "exact|modular|auto")]
    method: Option<RankMethod>,
    /// Largest rows*cols confirmed exactly under `auto` [default: 400].
    #[arg(long, value_name = "N")]
    exact_bound: Option<usize>,
    /// Compute torsion counts in both directions (rank-1 classes).
    #[arg(long)]
    torsion: bool,
    /// Torsion by diagonalization instead of minor enumeration.
    #[arg(long)]
    diagonalize: bool,
    /// Cap on the number of minors enumerated [default: 1000000].
    #[arg(long, value_name = "N")]
    minor_cap: Option<u64>,
    /// Random bundle samples over F_p [default: 20].
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
    /// Explicit rational bundle point, coordinates comma-separated (repeatable).
    #[arg(long, value_name = "x,...")]
    point: Vec<String>,
    /// Check that b_1 vanishes on every evaluated class.
    #[arg(long)]
    assert_amenable: bool,
    /// Include boundary matrices in the report.
    #[arg(long)]
    echo: bool,
    /// Write the JSON report here and a summary to standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
    /// Write the betti/torsion table as CSV (compute only).
    #[arg(long, value_name = "FILE")]
    csv: Option<String>,
    /// Record wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

impl JobArgs {
    fn job(&self) -> Result<JobSpec> {
        let mut job = match (&self.job, &self.pres, &self.complex) {
            (Some(path), _, _) => JobSpec::load(path)?,
            (None, Some(text), _) => JobSpec::presentation(text.clone()),
            (None, None, Some(path)) => {
                let text = read(path)?;
                // validate early so the message names the file
                load_complex_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                JobSpec {
                    input: JobInput::Complex {
                        document: serde_json::from_str(&text)?,
                    },
                    ..JobSpec::presentation("")
                }
            }
            (None, None, None) => return Err(CliError::Input("one of --pres, --complex, --job is required".into())),
        };
        if !self.xi.is_empty() {
            job.classes = Some(ClassSpec::Explicit {
                classes: self.xi.iter().map(|x| vec![x.clone()]).collect(),
            });
        }
        if let Some(path) = &self.xi_rows {
            let rows: Vec<String> = read(path)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect();
            job.classes = Some(ClassSpec::Explicit { classes: vec![rows] });
        }
        if self.xi_given {
            job.classes = Some(ClassSpec::Given);
        }
        if let Some(budget) = self.scan {
            job.classes = Some(ClassSpec::Scan { budget });
        }
        let o = &mut job.options;
        if let Some(s) = self.seed {
            job.seed = s;
        }
        if let Some(m) = self.method {
            o.method = m;
        }
        if let Some(b) = self.exact_bound {
            o.exact_bound = b;
        }
        if let Some(c) = self.minor_cap {
            o.minor_cap = c;
        }
        if let Some(n) = self.samples {
            o.samples = n;
        }
        o.torsion |= self.torsion;
        o.diagonalize |= self.diagonalize;
        o.assert_amenable |= self.assert_amenable;
        o.echo |= self.echo;
        o.points.extend(self.point.iter().cloned());
        Ok(job)
    }

    fn emit(&self, json: String, summary: String) -> Result<()> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, json).map_err(|e| CliError::io(path, e))?;
                print!("{summary}");
            }
            None => print!("{json}"),
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(dir) = &cli.bless {
        bless(dir)?;
        return Ok(ExitCode::SUCCESS);
    }
    if cli.selftest {
        let outcomes = selftest()?;
        let mut ok = true;
        for o in &outcomes {
            match &o.mismatch {
                None => println!("ok    {}", o.name),
                Some(path) => {
                    ok = false;
                    println!("FAIL  {} (differs at {path})", o.name);
                }
            }
        }
        return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    let Some(command) = cli.command else {
        return Err(CliError::Input("no command given".into()));
    };
    match command {
        Command::Compute(args) => {
            let report = run_compute(&args.job()?, args.timings)?;
            if let Some(path) = &args.csv {
                let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
                write_csv(&report, file)?;
            }
            args.emit(to_json(&report), summary_compute(&report))?;
        }
        Command::Certify(args) => {
            let report = run_certify(&args.job()?, args.timings)?;
            args.emit(to_json(&report), summary_certify(&report))?;
        }
        Command::Sample(args) => {
            let report = run_sample(&args.job()?, args.timings)?;
            args.emit(to_json(&report), summary_sample(&report))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
