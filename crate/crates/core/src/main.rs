use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use revbridge::atpg;
use revbridge::circuit::{derive_pprm, expand_network, normalize_zero_controls, parse_circuit, ParseOptions, ReversibleCircuit};
use revbridge::fault::enumerate_faults;
use revbridge::pattern::{parse_test_set, DcPolicy, Origin};
use revbridge::report::{self, Command, ExitStatus, Format, Report, RunConfig};
use revbridge::sim::{self, DEFAULT_ORACLE_CAP};
use revbridge::worked_example;

#[derive(Debug, Parser)]
#[command(name = "revbridge", version, about = "Bridging-fault ATPG and fault simulation for reversible k-CNOT circuits")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// How 'd' bits are driven during simulation (fill-zero or fill-one).
    #[arg(long, global = true, default_value_t = DcPolicy::FillZero)]
    dc_policy: DcPolicy,
    /// Largest input width (n + p) the exhaustive oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP, value_parser = parse_cap)]
    oracle_cap: usize,
    /// Do not repair residual coverage with extra patterns.
    #[arg(long, global = true)]
    no_fallback: bool,
    /// Drop patterns that are identical after don't-care resolution.
    #[arg(long, global = true)]
    dedup: bool,
    /// Omit the generation timestamp, making reports byte-reproducible.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Include bridges between the constant-one line and data inputs.
    #[arg(long, global = true)]
    include_aux: bool,
    /// Also count net pairs outside the four modeled fault classes.
    #[arg(long, global = true)]
    out_of_model: bool,
    /// Worker threads for fault simulation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Parse and normalize a circuit, then print it back.
    Parse { file: PathBuf },
    /// Print the Reed-Muller form of every output.
    Pprm { file: PathBuf },
    /// List the enumerated bridging faults.
    Faults { file: PathBuf },
    /// Generate test sets.
    Atpg {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "T1,T2,T3,T4,T5", value_parser = parse_set)]
        sets: Vec<Origin>,
    },
    /// Fault-simulate a given test set.
    Simulate {
        file: PathBuf,
        /// Test-set file, or a json report from atpg/verify.
        #[arg(long)]
        tests: PathBuf,
    },
    /// Generate, simulate, and classify every fault.
    Verify {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "T1,T2,T3,T4,T5", value_parser = parse_set)]
        sets: Vec<Origin>,
    },
}

fn parse_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if (1..=62).contains(&v) => Ok(v),
        _ => Err(format!("`{s}` is not an oracle cap in 1..=62")),
    }
}

fn parse_set(s: &str) -> Result<Origin, String> {
    match s.parse()? {
        o @ (Origin::T1 | Origin::T2 | Origin::T3 | Origin::T4 | Origin::T5) => Ok(o),
        o => Err(format!("`{o}` is not a generated test set (expected T1..T5)")),
    }
}

enum Failure {
    Usage(String),
    Parse(String),
    Io(String),
}

impl Failure {
    fn report(self) -> ExitStatus {
        let (status, msg) = match self {
            Failure::Usage(m) => (ExitStatus::Usage, m),
            Failure::Parse(m) => (ExitStatus::Parse, m),
            Failure::Io(m) => (ExitStatus::Io, m),
        };
        eprintln!("revbridge: {msg}");
        status
    }
}

fn config(cli: &Cli) -> RunConfig {
    let (command, file, sets, tests) = match &cli.command {
        Cmd::Parse { file } => (Command::Parse, file, None, None),
        Cmd::Pprm { file } => (Command::Pprm, file, None, None),
        Cmd::Faults { file } => (Command::Faults, file, None, None),
        Cmd::Atpg { file, sets } => (Command::Atpg, file, Some(sets), None),
        Cmd::Simulate { file, tests } => (Command::Simulate, file, None, Some(tests)),
        Cmd::Verify { file, sets } => (Command::Verify, file, Some(sets), None),
    };
    let mut c = RunConfig::new(command, file);
    if let Some(sets) = sets {
        c.sets = sets.clone();
        c.sets.sort();
        c.sets.dedup();
    }
    c.tests = tests.cloned();
    c.dc_policy = cli.dc_policy;
    c.oracle_cap = cli.oracle_cap;
    c.fallback = !cli.no_fallback;
    c.dedup = cli.dedup;
    c.include_aux = cli.include_aux;
    c.out_of_model = cli.out_of_model;
    c.format = cli.format;
    c.out = cli.out.clone();
    c.timestamp = !cli.no_timestamp;
    c
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Result<ReversibleCircuit, Failure> {
    let text = read(path)?;
    let mut c = parse_circuit(&text, ParseOptions::default()).map_err(|e| Failure::Parse(format!("{}:{e}", path.display())))?;
    c.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(normalize_zero_controls(c))
}

fn run(cfg: &RunConfig) -> Result<(Report, ExitStatus), Failure> {
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let circuit = load_circuit(&cfg.input)?;
    let net = expand_network(&circuit);
    let pprms = derive_pprm(&circuit);
    let (body, status) = match cfg.command {
        Command::Parse => (report::parse_body(&circuit), ExitStatus::Ok),
        Command::Pprm => (report::pprm_body(&pprms), ExitStatus::Ok),
        Command::Faults => {
            let faults = enumerate_faults(&net, cfg.include_aux);
            (report::faults_body(&net, &faults, cfg.out_of_model), ExitStatus::Ok)
        }
        Command::Atpg => {
            let v = atpg::verify(&net, &pprms, &cfg.atpg_options()).expect("generated patterns fit the circuit");
            (report::atpg_body(&v), ExitStatus::Ok)
        }
        Command::Verify => {
            let v = atpg::verify(&net, &pprms, &cfg.atpg_options()).expect("generated patterns fit the circuit");
            let notes = worked_example::is_worked_example(&circuit).then(|| worked_example::notes(&net, &pprms, &v.generated));
            let status = ExitStatus::of(&v.coverage);
            (report::verify_body(&net, &v, notes, cfg.out_of_model), status)
        }
        Command::Simulate => {
            let path = cfg.tests.as_deref().expect("validated");
            let text = read(path)?;
            let patterns = if text.trim_start().starts_with('{') {
                report::patterns_from_json(&text, net.p(), net.inputs())
            } else {
                parse_test_set(&text, net.p(), net.inputs())
            }
            .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
            let faults = enumerate_faults(&net, cfg.include_aux);
            let mut coverage = sim::evaluate_test_set(&net, &faults, &patterns, cfg.dc_policy).expect("patterns checked against circuit width");
            atpg::classify_residuals(&net, &mut coverage, cfg.oracle_cap);
            let status = ExitStatus::of(&coverage);
            (report::simulate_body(&net, &faults, &patterns, &coverage, cfg.out_of_model), status)
        }
    };
    Ok((Report::new(cfg, &circuit, body), status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("revbridge: {e}");
            return ExitCode::from(ExitStatus::Usage.code() as u8);
        }
    }
    let cfg = config(&cli);
    let status = match run(&cfg) {
        Ok((report, status)) => {
            let bytes = report::emit_report(&report, cfg.format);
            let written = match &cfg.out {
                Some(path) => fs::write(path, bytes).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
                None => {
                    print!("{bytes}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => status,
                Err(f) => f.report(),
            }
        }
        Err(f) => f.report(),
    };
    ExitCode::from(status.code() as u8)
}
