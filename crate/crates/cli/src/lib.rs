//! Command-line front end: argument parsing, dataset resolution and output
//! rendering for the `qshell` binary.

use std::io::Write;
use std::path::Path;

use clap::{CommandFactory, Parser, ValueEnum};
use serde::Serialize;

use qshell::empirics::{self, FitConfig};
use qshell::{
    build_scheme, detect_shells, fit_tau, match_magics, parse_dataset, primary_counts,
    render_table, ExperimentalDataset, LevelScheme, MagicGrade, MagicRecord, ModelParameters,
};

/// Overrides the location of the bundled dataset files.
pub const DATA_DIR_ENV: &str = "QSHELL_DATA_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Energy-ordered level list
    Levels,
    /// Primary magic numbers
    Magics,
    /// Level table with shell gaps
    Table,
    /// Compare predicted magic numbers with a dataset
    Compare,
    /// Grid search for tau against a dataset
    Fit,
    /// Levels and closures in a machine-readable form
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            lo: 0.02,
            hi: 0.06,
            step: 0.002,
        }
    }
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(format!("expected lo:hi:step, got `{s}`"));
    };
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{v}` is not a number"))
    };
    Ok(GridSpec {
        lo: num(lo)?,
        hi: num(hi)?,
        step: num(step)?,
    })
}

/// Validated invocation settings.
#[derive(Debug, Clone, PartialEq, Parser, Serialize)]
#[command(
    name = "qshell",
    version,
    about = "Level schemes and magic numbers of the 3-dimensional q-deformed oscillator"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Deformation exponent, q = e^tau
    #[arg(long, default_value_t = qshell::DEFAULT_TAU, allow_negative_numbers = true)]
    pub tau: f64,

    /// Energy unit ħω0
    #[arg(long = "hbar-omega0", default_value_t = 1.0)]
    pub hbar_omega0: f64,

    /// Highest oscillator shell enumerated
    #[arg(long = "n-max", default_value_t = qshell::DEFAULT_N_MAX)]
    pub n_max: u32,

    /// Gaps strictly above this close a shell
    #[arg(long = "gap", visible_alias = "primary-gap", default_value_t = qshell::DEFAULT_PRIMARY_GAP)]
    pub primary_gap: f64,

    /// Gaps above this (up to --gap) are secondary closures
    #[arg(long = "secondary-gap", default_value_t = qshell::DEFAULT_SECONDARY_GAP)]
    pub secondary_gap: f64,

    /// Fill levels until this many particles are accommodated
    #[arg(long = "count-limit", default_value_t = qshell::DEFAULT_COUNT_LIMIT)]
    pub count_limit: u32,

    /// Bundled dataset name or path to a dataset file
    #[arg(long)]
    pub dataset: Option<String>,

    /// Extra tolerance added to every observed uncertainty
    #[arg(long, default_value_t = 0)]
    pub slack: u32,

    /// Match parenthesized (weak) dataset entries too
    #[arg(long = "include-paren")]
    pub include_paren: bool,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Fit grid as lo:hi:step [default: 0.02:0.06:0.002]
    #[arg(long = "grid", value_parser = parse_grid)]
    pub tau_grid: Option<GridSpec>,
}

impl RunConfig {
    fn validate(&self) -> Result<(), String> {
        if !self.tau.is_finite() {
            return Err(format!("--tau must be finite, got {}", self.tau));
        }
        if !(self.hbar_omega0.is_finite() && self.hbar_omega0 > 0.0) {
            return Err(format!(
                "--hbar-omega0 must be positive, got {}",
                self.hbar_omega0
            ));
        }
        if self.n_max < 1 {
            return Err("--n-max must be at least 1".into());
        }
        if !(self.primary_gap.is_finite() && self.primary_gap > 0.0) {
            return Err(format!("--gap must be positive, got {}", self.primary_gap));
        }
        if !(self.secondary_gap.is_finite() && self.secondary_gap > 0.0) {
            return Err(format!(
                "--secondary-gap must be positive, got {}",
                self.secondary_gap
            ));
        }
        if self.secondary_gap >= self.primary_gap {
            return Err(format!(
                "--secondary-gap ({}) must be below --gap ({})",
                self.secondary_gap, self.primary_gap
            ));
        }
        if self.count_limit < 2 {
            return Err(format!(
                "--count-limit must be at least 2, got {}",
                self.count_limit
            ));
        }
        if let Some(g) = self.tau_grid {
            let grid =
                empirics::tau_grid(g.lo, g.hi, g.step).map_err(|e| format!("--grid: {e}"))?;
            if grid[0] <= 0.0 {
                return Err("--grid values must be positive".into());
            }
        }
        if matches!(self.command, Command::Compare | Command::Fit) && self.dataset.is_none() {
            return Err(format!(
                "--dataset is required for `{}`",
                self.command_name()
            ));
        }
        Ok(())
    }

    fn command_name(&self) -> &'static str {
        match self.command {
            Command::Levels => "levels",
            Command::Magics => "magics",
            Command::Table => "table",
            Command::Compare => "compare",
            Command::Fit => "fit",
            Command::Export => "export",
        }
    }

    pub fn model(&self) -> qshell::Result<ModelParameters> {
        ModelParameters::with_tau(self.hbar_omega0, self.tau, self.n_max)
    }
}

/// Parses `argv` (including the program name). Help and version requests
/// come back as errors whose exit code is 0.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = RunConfig::try_parse_from(argv)?;
    config
        .validate()
        .map_err(|msg| RunConfig::command().error(clap::error::ErrorKind::ValueValidation, msg))?;
    Ok(config)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] qshell::Error),
    #[error("unknown dataset `{0}`: not a file and not one of the bundled names")]
    UnknownDataset(String),
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Dataset { path: String, source: qshell::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownDataset(_) => EXIT_USAGE,
            _ => EXIT_COMPUTE,
        }
    }
}

/// Resolves a dataset argument. An existing file path wins; otherwise the
/// bundled name is looked up, in `QSHELL_DATA_DIR` when that is set.
pub fn resolve_dataset(spec: &str) -> Result<ExperimentalDataset, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let source = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
        return load_file(path, source);
    }
    if !empirics::BUNDLED.iter().any(|(name, _)| *name == spec) {
        return Err(CliError::UnknownDataset(spec.to_string()));
    }
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => load_file(&Path::new(&dir).join(format!("{spec}.txt")), spec),
        None => Ok(ExperimentalDataset::bundled(spec).expect("name checked above")),
    }
}

fn load_file(path: &Path, source: &str) -> Result<ExperimentalDataset, CliError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: display.clone(),
        source,
    })?;
    parse_dataset(source, &text).map_err(|source| CliError::Dataset {
        path: display,
        source,
    })
}

/// Executes `config`, writing data to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Err(msg) = config.validate() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    let mut buf = Vec::new();
    match execute(config, &mut buf) {
        Ok(()) => match out.write_all(&buf).and_then(|_| out.flush()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_COMPUTE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(config: &RunConfig, out: &mut Vec<u8>) -> Result<(), CliError> {
    // resolve the dataset first so that usage problems win over model errors
    let dataset = config.dataset.as_deref().map(resolve_dataset).transpose()?;
    match config.command {
        Command::Fit => {
            let dataset = dataset.expect("validated");
            return write_fit(config, &dataset, out);
        }
        Command::Compare => {
            let (_, records) = model_output(config)?;
            return write_compare(config, &records, &dataset.expect("validated"), out);
        }
        _ => {}
    }
    let (scheme, records) = model_output(config)?;
    match (config.command, config.format) {
        (Command::Levels, Format::Text) => {
            out.extend_from_slice(render_table(&scheme, &[]).as_bytes())
        }
        (Command::Table, Format::Text) => {
            out.extend_from_slice(render_table(&scheme, &records).as_bytes())
        }
        (Command::Magics, Format::Text) => {
            for count in primary_counts(&records) {
                writeln!(out, "{count}")?;
            }
        }
        (Command::Magics, Format::Csv) => write_records_csv(&records, out)?,
        (Command::Magics, Format::Json) => {
            let rows: Vec<RecordRow> = records.iter().map(RecordRow::from).collect();
            write_json(
                out,
                &Envelope {
                    config,
                    levels: None,
                    magics: Some(rows),
                },
            )?;
        }
        (_, Format::Csv) => write_levels_csv(&scheme, &records, out)?,
        (_, Format::Json) | (Command::Export, Format::Text) => {
            let levels = level_rows(&scheme, &records);
            let magics = records.iter().map(RecordRow::from).collect();
            write_json(
                out,
                &Envelope {
                    config,
                    levels: Some(levels),
                    magics: Some(magics),
                },
            )?;
        }
        (Command::Compare | Command::Fit, _) => unreachable!("handled above"),
    }
    Ok(())
}

fn model_output(config: &RunConfig) -> Result<(LevelScheme, Vec<MagicRecord>), CliError> {
    let scheme = build_scheme(&config.model()?, config.count_limit)?;
    let records = detect_shells(&scheme, config.primary_gap, config.secondary_gap);
    Ok((scheme, records))
}

/// One level in machine-readable output.
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct LevelRow {
    pub n: u32,
    pub l: u32,
    pub energy: f64,
    pub degeneracy: u32,
    pub cumulative: u32,
    pub gap_to_next: f64,
    pub magic_grade: String,
}

pub fn level_rows(scheme: &LevelScheme, records: &[MagicRecord]) -> Vec<LevelRow> {
    scheme
        .levels()
        .iter()
        .enumerate()
        .map(|(i, level)| {
            let cumulative = scheme.cumulative()[i];
            let grade = records
                .iter()
                .find(|r| r.count == cumulative)
                .map_or("", |r| r.grade.as_str());
            LevelRow {
                n: level.n,
                l: level.l,
                energy: level.energy,
                degeneracy: level.degeneracy,
                cumulative,
                gap_to_next: scheme.gap_after(i),
                magic_grade: grade.to_string(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct RecordRow {
    count: u32,
    grade: MagicGrade,
    gap: f64,
    n: u32,
    l: u32,
    energy: f64,
}

impl From<&MagicRecord> for RecordRow {
    fn from(r: &MagicRecord) -> Self {
        Self {
            count: r.count,
            grade: r.grade,
            gap: r.gap,
            n: r.after_level.n,
            l: r.after_level.l,
            energy: r.after_level.energy,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    config: &'a RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<LevelRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    magics: Option<Vec<RecordRow>>,
}

fn write_json<T: Serialize>(out: &mut Vec<u8>, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.push(b'\n');
    Ok(())
}

fn write_levels_csv(
    scheme: &LevelScheme,
    records: &[MagicRecord],
    out: &mut Vec<u8>,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for row in level_rows(scheme, records) {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_records_csv(records: &[MagicRecord], out: &mut Vec<u8>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["count", "grade", "gap", "n", "l", "energy"])?;
    for r in records {
        let row = RecordRow::from(r);
        w.write_record([
            row.count.to_string(),
            row.grade.as_str().to_string(),
            row.gap.to_string(),
            row.n.to_string(),
            row.l.to_string(),
            row.energy.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_compare(
    config: &RunConfig,
    records: &[MagicRecord],
    dataset: &ExperimentalDataset,
    out: &mut Vec<u8>,
) -> Result<(), CliError> {
    let predicted = primary_counts(records);
    let report = match_magics(&predicted, dataset, config.slack, config.include_paren);
    match config.format {
        Format::Text => {
            writeln!(
                out,
                "dataset: {} ({} entries)",
                dataset.source,
                dataset.entries().len()
            )?;
            writeln!(out, "predicted: {} primary magic numbers", predicted.len())?;
            writeln!(
                out,
                "matched: {}  unmatched predictions: {}  unmatched observations: {}",
                report.true_positives, report.false_positives, report.false_negatives
            )?;
            writeln!(out, "f1: {:.6}", report.f1)?;
            writeln!(out, "predicted  observed")?;
            for (p, o) in &report.matched_pairs {
                writeln!(out, "{p:>9} {o:>9}")?;
            }
            writeln!(
                out,
                "unmatched predicted: {}",
                join(&report.unmatched_predicted)
            )?;
            writeln!(
                out,
                "unmatched observed: {}",
                join(&report.unmatched_observed)
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["predicted", "observed"])?;
            for (p, o) in &report.matched_pairs {
                w.write_record([p.to_string(), o.to_string()])?;
            }
            for p in &report.unmatched_predicted {
                w.write_record([p.to_string(), String::new()])?;
            }
            for o in &report.unmatched_observed {
                w.write_record([String::new(), o.to_string()])?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: &'a RunConfig,
                dataset: &'a str,
                predicted: &'a [u32],
                report: &'a qshell::MatchReport,
            }
            write_json(
                out,
                &Out {
                    config,
                    dataset: &dataset.source,
                    predicted: &predicted,
                    report: &report,
                },
            )?;
        }
    }
    Ok(())
}

fn write_fit(
    config: &RunConfig,
    dataset: &ExperimentalDataset,
    out: &mut Vec<u8>,
) -> Result<(), CliError> {
    let spec = config.tau_grid.unwrap_or_default();
    let grid = empirics::tau_grid(spec.lo, spec.hi, spec.step)?;
    let fit_config = FitConfig {
        base: config.model()?,
        primary_gap: config.primary_gap,
        count_limit: config.count_limit,
        slack: config.slack,
        include_paren: config.include_paren,
    };
    let fit = fit_tau(dataset, &grid, &fit_config)?;
    match config.format {
        Format::Text => {
            writeln!(out, "dataset: {}", dataset.source)?;
            writeln!(out, "best tau: {}  f1: {:.6}", fit.tau_best, fit.score_best)?;
            writeln!(out, "{:>10} {:>10}", "tau", "f1")?;
            for (tau, score) in &fit.grid {
                writeln!(out, "{tau:>10} {score:>10.6}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["tau", "f1"])?;
            for (tau, score) in &fit.grid {
                w.write_record([tau.to_string(), score.to_string()])?;
            }
            w.flush()?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: &'a RunConfig,
                dataset: &'a str,
                fit: &'a qshell::FitResult,
            }
            write_json(
                out,
                &Out {
                    config,
                    dataset: &dataset.source,
                    fit: &fit,
                },
            )?;
        }
    }
    Ok(())
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
