use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use nht_core::catalog::{self, CatalogEntry};
use nht_core::scramble::{Frame, ScrambleKey};
use nht_core::solver::DEFAULT_BUDGET;
use nht_core::{
    descramble, exhaustive_search, find_scalar_shape_pairs, random_search, scramble, transform_pair,
    verify_solution, Modulus, NhtSpec, ResidueVector, SearchConfig, SolutionStream,
};
use serde_json::json;

use super::{Command, Format, SpecArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable files, unparsable documents.
    Usage(String),
    /// Well-formed input that fails a domain check.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Domain(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

type CmdResult = Result<ExitCode, CliError>;

pub fn run(command: Command) -> CmdResult {
    match command {
        Command::Verify { spec } => verify(&spec),
        Command::Transform {
            spec,
            input,
            output,
            inverse,
        } => transform(&spec, &input, output.as_deref(), inverse),
        Command::Search {
            size,
            modulus,
            exhaustive,
            random: _,
            trials,
            seed,
            dedup,
            limit,
            allow_zero,
            force_budget,
            format,
            output,
        } => {
            if size == 0 || size % 2 != 0 {
                return Err(usage(format!("--size must be a positive even number, got {size}")));
            }
            let m = Modulus::new(modulus).map_err(usage)?;
            let n = (size / 2) as usize;
            let cfg = if exhaustive {
                SearchConfig::exhaustive(n, m)
                    .with_budget(if force_budget { u128::MAX } else { DEFAULT_BUDGET })
            } else {
                SearchConfig::randomized(n, m, trials.unwrap_or(100_000), seed.unwrap_or(0))
            };
            let cfg = cfg
                .with_dedup(dedup)
                .with_allow_zero(allow_zero)
                .with_limit(limit);
            search(&cfg, format, output.as_deref())
        }
        Command::Eigen {
            spec,
            format,
            output,
        } => eigen(&spec, format, output.as_deref()),
        Command::Scramble {
            spec,
            input,
            output,
        } => {
            let key = load_key(&spec)?;
            let data = read(&input)?;
            let frame = scramble(&data, &key);
            write_out(output.as_deref(), &frame.to_bytes())?;
            eprintln!(
                "scrambled {} bytes into a {}-byte frame",
                data.len(),
                frame.body.len() + nht_core::scramble::HEADER_LEN
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Descramble {
            spec,
            input,
            output,
        } => {
            let key = load_key(&spec)?;
            let bytes = read(&input)?;
            let frame = Frame::from_bytes(&bytes).map_err(domain)?;
            let data = descramble(&frame, &key).map_err(domain)?;
            write_out(output.as_deref(), &data)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PaperTables { format, output } => paper_tables(format, output.as_deref()),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(usage)
        }
    }
}

fn load_spec(args: &SpecArgs) -> Result<NhtSpec, CliError> {
    let text = read_text(&args.spec)?;
    let spec = NhtSpec::from_json(&text, args.allow_zero)
        .map_err(|e| usage(format!("{}: {e}", args.spec.display())))?;
    if args.allow_zero && spec.coefficients().contains(&0) {
        eprintln!("note: spec has zero coefficients (allow-zero)");
    }
    Ok(spec)
}

fn load_key(args: &SpecArgs) -> Result<ScrambleKey, CliError> {
    ScrambleKey::new(load_spec(args)?).map_err(domain)
}

fn verify(args: &SpecArgs) -> CmdResult {
    let spec = load_spec(args)?;
    let report = verify_solution(&spec);
    let mut text = format!("spec: {spec}\n{}\n", report.conditions);
    text += &format!(
        "gram: {}\n",
        if report.gram_identity { "identity" } else { "not identity" }
    );
    if !report.agreement {
        text += "warning: conditions and gram verdicts disagree\n";
    }
    text += if report.is_valid() { "valid\n" } else { "invalid\n" };
    write_out(None, text.as_bytes())?;
    Ok(if report.is_valid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn transform(args: &SpecArgs, input: &Path, output: Option<&Path>, inverse: bool) -> CmdResult {
    let spec = load_spec(args)?;
    let text = read_text(input)?;
    let (v, reduced) = ResidueVector::parse(&text, spec.modulus()).map_err(usage)?;
    if reduced {
        eprintln!("warning: input values reduced mod {}", spec.modulus());
    }
    let out = if inverse {
        spec.inverse(&v)
    } else {
        spec.forward(&v)
    }
    .map_err(domain)?;
    write_out(output, format!("{}\n", out.to_csv_line()).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn search(cfg: &SearchConfig, format: Format, output: Option<&Path>) -> CmdResult {
    if cfg.allow_zero {
        eprintln!("note: zero coefficients permitted (allow-zero)");
    }
    let stream = match cfg.mode {
        nht_core::SearchMode::Exhaustive => exhaustive_search(cfg),
        nht_core::SearchMode::Randomized { .. } => random_search(cfg),
    }
    .map_err(|e| match e {
        nht_core::SearchError::BudgetExceeded { .. } => {
            domain(format!("{e}; pass --force-budget to run anyway"))
        }
        other => domain(other),
    })?;
    let body = match format {
        Format::Jsonl => stream.to_jsonl(),
        Format::Csv => search_csv(cfg, &stream)?,
    };
    write_out(output, body.as_bytes())?;
    eprintln!(
        "{} solutions, {} candidates examined, {:.3}s",
        stream.summary.count,
        stream.summary.candidates,
        stream.summary.elapsed.as_secs_f64()
    );
    Ok(ExitCode::SUCCESS)
}

fn csv_string(build: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    build(&mut w).map_err(usage)?;
    let bytes = w.into_inner().map_err(usage)?;
    String::from_utf8(bytes).map_err(usage)
}

fn search_csv(cfg: &SearchConfig, stream: &SolutionStream) -> Result<String, CliError> {
    csv_string(|w| {
        let mut header = vec!["size".to_string(), "modulus".to_string()];
        header.extend((0..cfg.n).map(|i| format!("c{i}")));
        w.write_record(&header)?;
        for s in &stream.solutions {
            let mut row = vec![s.size().to_string(), s.modulus().to_string()];
            row.extend(s.coefficients().iter().map(u64::to_string));
            w.write_record(&row)?;
        }
        Ok(())
    })
}

fn eigen(args: &SpecArgs, format: Format, output: Option<&Path>) -> CmdResult {
    let spec = load_spec(args)?;
    let pairs = find_scalar_shape_pairs(&spec).map_err(domain)?;
    let body = match format {
        Format::Csv => csv_string(|w| {
            let mut header = vec!["lambda".to_string()];
            header.extend((0..spec.size()).map(|i| format!("v{i}")));
            w.write_record(&header)?;
            for p in &pairs {
                for v in &p.basis {
                    let mut row = vec![p.lambda.value().to_string()];
                    row.extend(v.entries().iter().map(u64::to_string));
                    w.write_record(&row)?;
                }
            }
            Ok(())
        })?,
        Format::Jsonl => pairs
            .iter()
            .map(|p| {
                let basis: Vec<&[u64]> = p.basis.iter().map(ResidueVector::entries).collect();
                json!({"lambda": p.lambda.value(), "basis": basis}).to_string() + "\n"
            })
            .collect(),
    };
    write_out(output, body.as_bytes())?;
    eprintln!("{} eigenvalues", pairs.len());
    Ok(ExitCode::SUCCESS)
}

struct CheckRow {
    check: String,
    spec: NhtSpec,
    residues: String,
    gram_identity: Option<bool>,
    input: String,
    output: String,
    pass: bool,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn check_rows() -> Vec<CheckRow> {
    let mut entries: Vec<CatalogEntry> = catalog::published();
    entries.push(catalog::TABLE_16_ROW1_TRANSPOSED);
    let mut rows: Vec<CheckRow> = entries
        .iter()
        .map(|e| {
            let spec = e.spec();
            let report = verify_solution(&spec);
            CheckRow {
                check: e.label.to_string(),
                residues: join(&report.conditions.residues),
                gram_identity: Some(report.gram_identity),
                input: String::new(),
                output: String::new(),
                pass: report.is_valid(),
                spec,
            }
        })
        .collect();

    let mut counters = [0usize; 2];
    for (spec, f) in catalog::pair_inputs() {
        let slot = usize::from(spec.size() == 16);
        counters[slot] += 1;
        let pair = transform_pair(&spec, &f).expect("catalog inputs have the right length");
        let reference = spec.forward_reference(&f).expect("same length");
        rows.push(CheckRow {
            check: format!("pair-{}pt-{}", spec.size(), counters[slot]),
            residues: String::new(),
            gram_identity: None,
            input: join(pair.input.entries()),
            output: join(pair.output.entries()),
            pass: pair.output == reference,
            spec,
        });
    }
    rows
}

fn paper_tables(format: Format, output: Option<&Path>) -> CmdResult {
    let rows = check_rows();
    let status = |pass: bool| if pass { "pass" } else { "fail" };
    let body = match format {
        Format::Csv => csv_string(|w| {
            w.write_record([
                "check",
                "size",
                "modulus",
                "coefficients",
                "residues",
                "gram_identity",
                "input",
                "output",
                "status",
            ])?;
            for r in &rows {
                w.write_record([
                    r.check.as_str(),
                    &r.spec.size().to_string(),
                    &r.spec.modulus().to_string(),
                    &join(r.spec.coefficients()),
                    &r.residues,
                    &r.gram_identity.map(|g| g.to_string()).unwrap_or_default(),
                    &r.input,
                    &r.output,
                    status(r.pass),
                ])?;
            }
            Ok(())
        })?,
        Format::Jsonl => rows
            .iter()
            .map(|r| {
                json!({
                    "check": r.check,
                    "size": r.spec.size(),
                    "modulus": r.spec.modulus().get(),
                    "coefficients": r.spec.coefficients(),
                    "residues": r.residues,
                    "gram_identity": r.gram_identity,
                    "input": r.input,
                    "output": r.output,
                    "status": status(r.pass),
                })
                .to_string()
                    + "\n"
            })
            .collect(),
    };
    write_out(output, body.as_bytes())?;
    let failed: Vec<&CheckRow> = rows.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        eprintln!(
            "fail: {} {} residues [{}]",
            r.check,
            r.spec,
            r.residues
        );
    }
    let gram_ok = rows.iter().all(|r| r.gram_identity != Some(false));
    eprintln!("{} checks, {} failed", rows.len(), failed.len());
    Ok(if gram_ok && failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
