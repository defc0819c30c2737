use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_ch2::ingest::{fan_record, list_inputs, read_file, write_native};
use toric_ch2::report::{format_tau, to_csv, to_jsonl, ReportOptions};
use toric_ch2::{
    batch_classify, facet_enumeration, gen_fan, is_reflexive, polar_dual_vertices, scan_surfaces, BatchItem, BigInt,
    BuiltinFamily, ClassifyOptions, Error, Family, Fan, InputFormat, InputKind, InputRecord, LatticePolytope,
    Payload,
};

/// Second Chern character positivity checks for smooth toric Fano varieties.
#[derive(Parser, Debug)]
#[command(name = "toric-ch2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify fans or polytopes and write a report.
    Classify(ClassifyArgs),
    /// List every Picard-two surface of one fan with its value of 2 ch_2 . S.
    Scan(SourceArgs),
    /// Write the fan of a builtin family in native format.
    Gen(GenArgs),
    /// Check smoothness and the two-cones-per-wall condition.
    Validate(FileArgs),
    /// Write the vertices of the polar dual of a reflexive polytope.
    Dual(DualArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    DualPolytope,
    FanPolytope,
    Fan,
}

impl From<KindArg> for InputKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::DualPolytope => InputKind::DualPolytope,
            KindArg::FanPolytope => InputKind::FanPolytope,
            KindArg::Fan => InputKind::Fan,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum FormatArg {
    #[default]
    Native,
    Polymake,
}

impl From<FormatArg> for InputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Native => InputFormat::Native,
            FormatArg::Polymake => InputFormat::Polymake,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Pd,
    TildeV,
    V,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Pd => Family::ProjectiveSpace,
            FamilyArg::TildeV => Family::PseudoDelPezzoTilde,
            FamilyArg::V => Family::PseudoDelPezzoV,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

#[derive(Args, Debug)]
struct ReadArgs {
    /// How to interpret input files; native files declare their own kind.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Input file or directory (directories are read in file-name order).
    #[arg(long, num_args = 1.., group = "source")]
    input: Vec<PathBuf>,
    /// Builtin family instead of input files.
    #[arg(long = "gen", value_enum, group = "source", requires = "dim")]
    family: Option<FamilyArg>,
}

#[derive(Args, Debug)]
struct SourceArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    read: ReadArgs,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    src: SourceArgs,
    /// Worker threads.
    #[arg(long, env = "TORIC_CH2_JOBS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Abort with exit code 1 on the first record that cannot be read or classified.
    #[arg(long)]
    strict: bool,
    /// Evaluate every Picard-two surface instead of stopping at the first witness.
    #[arg(long)]
    exhaustive: bool,
    /// Report path (standard output if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    output_format: OutputFormat,
    /// Leave runtime_ms empty so reports are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FileArgs {
    path: PathBuf,
    #[command(flatten)]
    read: ReadArgs,
}

#[derive(Args, Debug)]
struct DualArgs {
    path: PathBuf,
    #[command(flatten)]
    read: ReadArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failed command: message for standard error and the exit code.
struct Failure(String, u8);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Io { .. }) { 2 } else { 1 };
        Failure(e.to_string(), code)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(msg.into(), 2)
}

type Run = Result<(), Failure>;

fn emit(out: Option<&Path>, text: &str) -> Run {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure(e.to_string(), 1)),
    }
}

fn builtin(family: FamilyArg, dim: Option<usize>) -> Result<(String, Fan), Failure> {
    let dim = dim.ok_or_else(|| usage("--gen needs --dim"))?;
    let b = BuiltinFamily::new(family.into(), dim)?;
    Ok((b.name(), gen_fan(&b)?))
}

fn expand_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, Failure> {
    let mut out = Vec::new();
    for p in inputs {
        if p.is_dir() {
            out.extend(list_inputs(p)?);
        } else if p.is_file() {
            out.push(p.clone());
        } else {
            return Err(usage(format!("{}: no such file or directory", p.display())));
        }
    }
    Ok(out)
}

fn read_one(path: &Path, read: &ReadArgs) -> toric_ch2::Result<InputRecord> {
    read_file(path, read.kind.map(Into::into), read.format.into())
}

/// `(id, fan)` pairs for every input, read errors kept per record.
fn gather(args: &SourceArgs) -> Result<Vec<BatchItem>, Failure> {
    if let Some(family) = args.source.family {
        let (id, fan) = builtin(family, args.dim)?;
        return Ok(vec![BatchItem { id, fan: Ok(fan) }]);
    }
    Ok(expand_inputs(&args.source.input)?
        .into_iter()
        .map(|p| {
            let rec = read_one(&p, &args.read);
            let id = match &rec {
                Ok(r) => r.id.clone(),
                Err(_) => p.file_name().map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned()),
            };
            BatchItem { id, fan: rec.and_then(|r| r.to_fan()) }
        })
        .collect())
}

fn classify(args: ClassifyArgs) -> Run {
    let items = gather(&args.src)?;
    if args.strict {
        if let Some(BatchItem { id, fan: Err(e) }) = items.iter().find(|i| i.fan.is_err()) {
            return Err(Failure(format!("{id}: {e}"), 1));
        }
    }
    let opts = ClassifyOptions { stop_at_first_witness: !args.exhaustive };
    let report = batch_classify(items, args.jobs as usize, opts)?;
    if args.strict {
        if let Some(e) = report.errors().next() {
            return Err(Failure(format!("{}: {}", e.id, e.error), 1));
        }
    }
    for e in report.errors() {
        eprintln!("{}: {}", e.id, e.error);
    }
    let ropts = ReportOptions { timing: !args.no_timing };
    let text = match args.output_format {
        OutputFormat::Csv => to_csv(&report, ropts),
        OutputFormat::Jsonl => to_jsonl(&report, ropts),
    };
    emit(args.out.as_deref(), &text)?;
    let s = report.summary();
    eprintln!(
        "{} records: {} Ch2Positive_ProjectiveSpace, {} NotCh2Positive ({} Picard-two witness, {} VdPattern), {} Undetermined, {} errors",
        report.records.len(),
        s.projective_space,
        s.not_positive,
        s.not_positive_rho2,
        s.not_positive_vd,
        s.undetermined,
        s.errors
    );
    Ok(())
}

fn single_fan(args: &SourceArgs) -> Result<Fan, Failure> {
    let mut items = gather(args)?;
    if items.len() != 1 {
        return Err(usage(format!("expected a single fan, got {} inputs", items.len())));
    }
    let item = items.pop().expect("one item");
    item.fan.map_err(|e| Failure(format!("{}: {e}", item.id), 1))
}

fn scan(args: SourceArgs) -> Run {
    let fan = single_fan(&args)?;
    fan.validate_smooth()?;
    fan.validate_walls()?;
    let values = scan_surfaces(&fan, false)?;
    let mut out = String::new();
    if values.is_empty() {
        out.push_str("no Picard-two surfaces\n");
    }
    for v in values {
        out += &format!("tau={} value={}\n", format_tau(&v.face.ray_indices), v.value);
    }
    emit(None, &out)
}

fn gen(args: GenArgs) -> Run {
    let (id, fan) = builtin(args.family, Some(args.dim))?;
    emit(args.out.as_deref(), &write_native(&fan_record(&id, fan)))
}

fn validate(args: FileArgs) -> Run {
    let rec = read_one(&args.path, &args.read)?;
    let fan = rec.to_fan()?;
    let smooth = fan.validate_smooth();
    let walls = fan.validate_walls();
    let smooth_s = match &smooth {
        Ok(()) => "yes".to_string(),
        Err(e) => format!("no ({e})"),
    };
    let walls_s = match &walls {
        Ok(()) => "ok".to_string(),
        Err(e) => format!("defect ({e})"),
    };
    emit(None, &format!("smooth: {smooth_s}, walls: {walls_s}\n"))?;
    if smooth.is_err() || walls.is_err() {
        return Err(Failure(format!("{}: validation failed", rec.id), 1));
    }
    Ok(())
}

fn dual(args: DualArgs) -> Run {
    let rec = read_one(&args.path, &args.read)?;
    let Payload::Polytope(p) = &rec.payload else {
        return Err(Failure(format!("{}: dual needs a polytope, got a fan", rec.id), 1));
    };
    let facets = facet_enumeration(p)?;
    if !is_reflexive(p, &facets) {
        return Err(Failure(format!("{}: polytope is not reflexive", rec.id), 1));
    }
    let vertices = polar_dual_vertices(p, &facets)?;
    let kind = match rec.kind {
        InputKind::FanPolytope => InputKind::DualPolytope,
        _ => InputKind::FanPolytope,
    };
    let out = InputRecord::<BigInt> {
        id: rec.id.clone(),
        kind,
        payload: Payload::Polytope(LatticePolytope::new(p.dim(), vertices)?),
    };
    emit(args.out.as_deref(), &write_native(&out))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(a) => classify(a),
        Command::Scan(a) => scan(a),
        Command::Gen(a) => gen(a),
        Command::Validate(a) => validate(a),
        Command::Dual(a) => dual(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg, code)) => {
            eprintln!("toric-ch2: {msg}");
            ExitCode::from(code)
        }
    }
}
