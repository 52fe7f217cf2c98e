//! The `ethline` command line.
//!
//! Settings resolve in this order: command-line flag, `ETHLINE_*`
//! environment variable, `--config` file, built-in default. Config files
//! hold `key = value` lines named after the long flags; `#` starts a
//! comment.
//!
//! Exit codes: 0 success (an empty rule set included), 1 usage or invalid
//! parameters, 2 I/O or malformed input, 3 no transactions to mine.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::miner::{mine_with, MinerOptions, MiningParams};
use crate::pipeline::{
    clean, load_notifications, load_users, notifications_to_csv, prepare, to_transactions, users_to_csv,
    EncodingConfig, PracticeKind, PreparedDataset,
};
use crate::report::{
    annotate_actions, default_mappings, export_graph, load_rules_csv, render_report, render_table, rules_to_csv,
    Format, RuleReport, RuleRow,
};
use crate::synth::{fixture_tables, generate, GeneratorSpec};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;

/// Written by `mine` next to the rule tables so `report` can label them.
pub const PARAMS_FILE: &str = "mining_params.txt";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EmptyDatabase | Error::ZeroSupport(_) => EXIT_EMPTY,
            Error::InvalidParams(_) | Error::InvalidSpec(_) | Error::UnknownFormat(_) => EXIT_USAGE,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "ethline",
    version,
    about = "Association-rule mining over ethics-line notifications"
)]
struct Cli {
    /// Config file of `key = value` lines.
    #[arg(long, global = true, env = "ETHLINE_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write synthetic users.csv and notifications.csv.
    Generate(GenerateArgs),
    /// Clean raw tables and write the prepared datasets.
    Prepare(PrepareArgs),
    /// Mine rules from prepared datasets.
    Mine(MineArgs),
    /// Render rule tables, sentences, graphs and recommended actions.
    Report(ReportArgs),
    /// Run every stage in turn.
    Pipeline(PipelineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dataset {
    Bad,
    Good,
    Both,
}

impl Dataset {
    fn kinds(self) -> Vec<PracticeKind> {
        match self {
            Dataset::Bad => vec![PracticeKind::Bad],
            Dataset::Good => vec![PracticeKind::Good],
            Dataset::Both => vec![PracticeKind::Bad, PracticeKind::Good],
        }
    }
}

impl FromStr for Dataset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Dataset as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Args)]
struct OutArgs {
    /// Directory for inputs and outputs [default: .]
    #[arg(long, env = "ETHLINE_OUT")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct GenArgs {
    /// Number of users to generate [default: 50]
    #[arg(long, env = "ETHLINE_USERS")]
    users: Option<usize>,
    /// Number of notifications to generate [default: 200]
    #[arg(long, env = "ETHLINE_NOTIFICATIONS")]
    notifications: Option<usize>,
    /// Generator seed [default: 7]
    #[arg(long, env = "ETHLINE_SEED")]
    seed: Option<u64>,
    /// Share of bad-practice notifications [default: 0.6]
    #[arg(long, env = "ETHLINE_BAD_FRACTION")]
    bad_fraction: Option<f64>,
}

impl GenArgs {
    fn any(&self) -> bool {
        self.users.is_some() || self.notifications.is_some() || self.seed.is_some() || self.bad_fraction.is_some()
    }
}

#[derive(Debug, Clone, Args)]
struct RawInputArgs {
    /// Users table [default: <out>/users.csv]
    #[arg(long, env = "ETHLINE_USERS_CSV")]
    users_csv: Option<PathBuf>,
    /// Notifications table [default: <out>/notifications.csv]
    #[arg(long, env = "ETHLINE_NOTIFICATIONS_CSV")]
    notifications_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct ParamArgs {
    /// Minimum rule support [default: 0.4]
    #[arg(long, env = "ETHLINE_SUPPORT")]
    support: Option<f64>,
    /// Minimum rule confidence [default: 0.8]
    #[arg(long, env = "ETHLINE_CONFIDENCE")]
    confidence: Option<f64>,
    /// Minimum items per rule [default: 2]
    #[arg(long, env = "ETHLINE_MINLEN")]
    minlen: Option<usize>,
    /// Maximum items per rule [default: 10]
    #[arg(long, env = "ETHLINE_MAXLEN")]
    maxlen: Option<usize>,
    /// Maximum consequent items [default: 1]
    #[arg(long, env = "ETHLINE_MAX_CONSEQUENT")]
    max_consequent: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct MineOnlyArgs {
    /// Counting threads; output does not depend on it [default: 1]
    #[arg(long, env = "ETHLINE_THREADS")]
    threads: Option<usize>,
    /// Comma-separated columns kept out of the items
    /// [default: practice,reporting_user,reported_user]
    #[arg(long, env = "ETHLINE_EXCLUDE")]
    exclude: Option<String>,
    /// Bad-practice prepared dataset [default: <out>/prepared_bad.csv]
    #[arg(long, env = "ETHLINE_PREPARED_BAD")]
    prepared_bad: Option<PathBuf>,
    /// Good-practice prepared dataset [default: <out>/prepared_good.csv]
    #[arg(long, env = "ETHLINE_PREPARED_GOOD")]
    prepared_good: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct ReportOnlyArgs {
    /// Comma-separated outputs among text, md, csv [default: text,md]
    #[arg(long, env = "ETHLINE_FORMAT")]
    format: Option<String>,
    /// Bad-practice rules [default: <out>/rules_bad.csv]
    #[arg(long, env = "ETHLINE_RULES_BAD")]
    rules_bad: Option<PathBuf>,
    /// Good-practice rules [default: <out>/rules_good.csv]
    #[arg(long, env = "ETHLINE_RULES_GOOD")]
    rules_good: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct DatasetArg {
    /// Which dataset to process [default: both]
    #[arg(long, env = "ETHLINE_DATASET")]
    dataset: Option<Dataset>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    out: OutArgs,
    #[command(flatten)]
    gen: GenArgs,
}

#[derive(Debug, Args)]
struct PrepareArgs {
    #[command(flatten)]
    out: OutArgs,
    #[command(flatten)]
    raw: RawInputArgs,
}

#[derive(Debug, Args)]
struct MineArgs {
    #[command(flatten)]
    out: OutArgs,
    #[command(flatten)]
    dataset: DatasetArg,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    mine: MineOnlyArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    out: OutArgs,
    #[command(flatten)]
    dataset: DatasetArg,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    report: ReportOnlyArgs,
}

#[derive(Debug, Args)]
struct PipelineArgs {
    /// Start from the built-in reference fixtures (implies maxlen 2)
    #[arg(long, conflicts_with = "generate")]
    fixtures: bool,
    /// Start from generated tables; implied by any generator flag
    #[arg(long)]
    generate: bool,
    #[command(flatten)]
    out: OutArgs,
    #[command(flatten)]
    gen: GenArgs,
    #[command(flatten)]
    raw: RawInputArgs,
    #[command(flatten)]
    dataset: DatasetArg,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    mine: MineOnlyArgs,
    #[command(flatten)]
    report: ReportOnlyArgs,
}

/// Key-value layers below the command line, highest priority first.
#[derive(Debug, Default)]
struct Settings {
    layers: Vec<(PathBuf, HashMap<String, String>)>,
}

fn parse_config(text: &str, path: &Path) -> CliResult<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "{}:{}: expected `key = value`",
                path.display(),
                i + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::usage(format!(
                "{}:{}: unknown key `{key}`",
                path.display(),
                i + 1
            )));
        }
        map.insert(key, value.trim().to_owned());
    }
    Ok(map)
}

const KNOWN_KEYS: [&str; 20] = [
    "out",
    "users",
    "notifications",
    "seed",
    "bad-fraction",
    "users-csv",
    "notifications-csv",
    "support",
    "confidence",
    "minlen",
    "maxlen",
    "max-consequent",
    "threads",
    "exclude",
    "prepared-bad",
    "prepared-good",
    "format",
    "rules-bad",
    "rules-good",
    "dataset",
];

impl Settings {
    fn load(config: Option<&Path>) -> CliResult<Self> {
        let mut s = Settings::default();
        if let Some(path) = config {
            s.push_file(path)?;
        }
        Ok(s)
    }

    fn push_file(&mut self, path: &Path) -> CliResult<()> {
        let text = fs::read_to_string(path).map_err(|e| CliError::from(Error::io(path, e)))?;
        let map = parse_config(&text, path)?;
        self.layers.push((path.to_owned(), map));
        Ok(())
    }

    fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        for (path, map) in &self.layers {
            if let Some(raw) = map.get(key) {
                return raw
                    .parse()
                    .map(Some)
                    .map_err(|e| CliError::usage(format!("{}: invalid {key} `{raw}`: {e}", path.display())));
            }
        }
        Ok(None)
    }

    fn or<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.get(flag, key)?.unwrap_or(default))
    }

    fn out_dir(&self, args: &OutArgs) -> CliResult<PathBuf> {
        self.or(args.out.clone(), "out", PathBuf::from("."))
    }

    fn params(&self, args: &ParamArgs, default_maxlen: usize) -> CliResult<MiningParams> {
        let d = MiningParams::default();
        let p = MiningParams {
            min_support: self.or(args.support, "support", d.min_support)?,
            min_confidence: self.or(args.confidence, "confidence", d.min_confidence)?,
            min_len: self.or(args.minlen, "minlen", d.min_len)?,
            max_len: self.or(args.maxlen, "maxlen", default_maxlen)?,
            max_consequent_len: self.or(args.max_consequent, "max-consequent", d.max_consequent_len)?,
        };
        p.validate()?;
        Ok(p)
    }

    fn spec(&self, args: &GenArgs) -> CliResult<GeneratorSpec> {
        let d = GeneratorSpec::default();
        let spec = GeneratorSpec {
            n_users: self.or(args.users, "users", d.n_users)?,
            n_notifications: self.or(args.notifications, "notifications", d.n_notifications)?,
            seed: self.or(args.seed, "seed", d.seed)?,
            bad_fraction: self.or(args.bad_fraction, "bad-fraction", d.bad_fraction)?,
            ..d
        };
        spec.validate()?;
        Ok(spec)
    }

    fn dataset(&self, args: &DatasetArg) -> CliResult<Dataset> {
        self.or(args.dataset, "dataset", Dataset::Both)
    }

    fn formats(&self, args: &ReportOnlyArgs) -> CliResult<Vec<Format>> {
        let list: String = self.or(args.format.clone(), "format", "text,md".to_owned())?;
        let mut formats = Vec::new();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let f: Format = part.parse()?;
            if !formats.contains(&f) {
                formats.push(f);
            }
        }
        if formats.is_empty() {
            return Err(CliError::usage("--format names no output"));
        }
        Ok(formats)
    }

    fn encoding(&self, args: &MineOnlyArgs) -> CliResult<EncodingConfig> {
        Ok(match self.get(args.exclude.clone(), "exclude")? {
            Some(list) => EncodingConfig {
                excluded: list
                    .split(',')
                    .map(str::trim)
                    .filter(|c| !c.is_empty())
                    .map(str::to_owned)
                    .collect(),
            },
            None => EncodingConfig::default(),
        })
    }

    fn path(&self, flag: &Option<PathBuf>, key: &str, out: &Path, file: &str) -> CliResult<PathBuf> {
        Ok(self.get(flag.clone(), key)?.unwrap_or_else(|| out.join(file)))
    }
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e).into())
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e).into())
}

fn require(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError {
            code: EXIT_INPUT,
            message: format!("{}: no such file", path.display()),
        })
    }
}

fn stage_generate(spec: &GeneratorSpec, out: &Path) -> CliResult<String> {
    let (users, notifications) = generate(spec)?;
    ensure_dir(out)?;
    write(&out.join("users.csv"), &users)?;
    write(&out.join("notifications.csv"), &notifications)?;
    Ok(format!(
        "generate: {} users, {} notifications (seed {}) -> {}",
        spec.n_users,
        spec.n_notifications,
        spec.seed,
        out.display()
    ))
}

fn stage_fixtures(out: &Path) -> CliResult<String> {
    let (users, notifications) = fixture_tables();
    ensure_dir(out)?;
    write(&out.join("users.csv"), &users_to_csv(&users))?;
    write(&out.join("notifications.csv"), &notifications_to_csv(&notifications))?;
    Ok(format!(
        "fixtures: {} users, {} notifications -> {}",
        users.len(),
        notifications.len(),
        out.display()
    ))
}

fn stage_prepare(users_path: &Path, notifications_path: &Path, out: &Path) -> CliResult<String> {
    require(users_path)?;
    require(notifications_path)?;
    let users = load_users(users_path)?;
    let notifications = load_notifications(notifications_path)?;
    let (users, notifications, log) = clean(users, notifications);
    let (bad, good) = prepare(&users, &notifications)?;
    ensure_dir(out)?;
    bad.write_csv(&out.join("prepared_bad.csv"))?;
    good.write_csv(&out.join("prepared_good.csv"))?;
    write(&out.join("cleaning_report.txt"), &format!("{log}\n"))?;
    Ok(format!(
        "prepare: {} bad rows, {} good rows, {} cleaning actions",
        bad.len(),
        good.len(),
        log.entries.len()
    ))
}

struct MineJob {
    out: PathBuf,
    kinds: Vec<PracticeKind>,
    inputs: Vec<PathBuf>,
    params: MiningParams,
    options: MinerOptions,
    encoding: EncodingConfig,
}

fn params_file(p: &MiningParams) -> String {
    format!(
        "support = {}\nconfidence = {}\nminlen = {}\nmaxlen = {}\nmax-consequent = {}\n",
        p.min_support, p.min_confidence, p.min_len, p.max_len, p.max_consequent_len
    )
}

fn stage_mine(job: &MineJob) -> CliResult<String> {
    for input in &job.inputs {
        require(input)?;
    }
    ensure_dir(&job.out)?;
    let mut parts = Vec::new();
    let mut empty = Vec::new();
    for (&kind, input) in job.kinds.iter().zip(&job.inputs) {
        let ds = PreparedDataset::load_csv(input)?;
        if ds.kind != kind {
            return Err(Error::schema(input, Some(1), format!("expected a {kind} dataset, found {}", ds.kind)).into());
        }
        let db = to_transactions(&ds, &job.encoding)?;
        let target = job.out.join(format!("rules_{}.csv", kind.short()));
        if db.is_empty() {
            write(&target, &rules_to_csv(&[]))?;
            parts.push(format!("{} no transactions", kind.short()));
            empty.push(input.display().to_string());
            continue;
        }
        let rules = mine_with(&db, &job.params, &job.options)?;
        let rows: Vec<RuleRow> = rules.iter().map(|r| RuleRow::from_rule(r, db.dictionary())).collect();
        write(&target, &rules_to_csv(&rows))?;
        parts.push(format!(
            "{} {} rules from {} transactions",
            kind.short(),
            rows.len(),
            db.len()
        ));
    }
    if empty.len() == job.kinds.len() {
        return Err(CliError {
            code: EXIT_EMPTY,
            message: format!("no transactions in {}", empty.join(", ")),
        });
    }
    write(&job.out.join(PARAMS_FILE), &params_file(&job.params))?;
    Ok(format!("mine: {}", parts.join(", ")))
}

struct ReportJob {
    out: PathBuf,
    kinds: Vec<PracticeKind>,
    inputs: Vec<PathBuf>,
    params: MiningParams,
    formats: Vec<Format>,
}

fn stage_report(job: &ReportJob) -> CliResult<String> {
    for input in &job.inputs {
        require(input)?;
    }
    let mut reports = Vec::new();
    for (&kind, input) in job.kinds.iter().zip(&job.inputs) {
        let rows = load_rules_csv(input)?;
        reports.push(annotate_actions(
            RuleReport::new(kind, job.params, rows),
            &default_mappings(),
        ));
    }
    ensure_dir(&job.out)?;
    let mut written = Vec::new();
    let mut emit = |name: String, contents: &str| -> CliResult<()> {
        write(&job.out.join(&name), contents)?;
        written.push(name);
        Ok(())
    };
    for format in &job.formats {
        match format {
            Format::Text => emit("report.txt".into(), &render_report(&reports))?,
            Format::Markdown => {
                for r in &reports {
                    let mut md = format!("# {} rules\n\n", r.kind);
                    md.push_str(&render_table(r, Format::Markdown));
                    emit(format!("rules_{}.md", r.kind.short()), &md)?;
                }
            }
            Format::Csv => {
                for r in &reports {
                    emit(format!("report_{}.csv", r.kind.short()), &render_table(r, Format::Csv))?;
                }
            }
        }
    }
    let dot: String = reports.iter().map(export_graph).collect();
    emit("rules.dot".into(), &dot)?;
    let mut line = String::from("report:");
    for r in &reports {
        let _ = write!(line, " {} {} rules,", r.kind.short(), r.rules.len());
    }
    let _ = write!(line, " wrote {}", written.join(", "));
    Ok(line)
}

impl Settings {
    fn mine_job(
        &self,
        out: &Path,
        d: &DatasetArg,
        p: &ParamArgs,
        m: &MineOnlyArgs,
        maxlen: usize,
    ) -> CliResult<MineJob> {
        let kinds = self.dataset(d)?.kinds();
        let inputs = kinds
            .iter()
            .map(|k| match k {
                PracticeKind::Bad => self.path(&m.prepared_bad, "prepared-bad", out, "prepared_bad.csv"),
                PracticeKind::Good => self.path(&m.prepared_good, "prepared-good", out, "prepared_good.csv"),
            })
            .collect::<CliResult<_>>()?;
        let threads = self.or(m.threads, "threads", 1)?;
        if threads == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        Ok(MineJob {
            out: out.to_owned(),
            kinds,
            inputs,
            params: self.params(p, maxlen)?,
            options: MinerOptions {
                threads,
                ..MinerOptions::default()
            },
            encoding: self.encoding(m)?,
        })
    }

    fn report_job(
        &self,
        out: &Path,
        d: &DatasetArg,
        p: &ParamArgs,
        r: &ReportOnlyArgs,
        maxlen: usize,
    ) -> CliResult<ReportJob> {
        let kinds = self.dataset(d)?.kinds();
        let inputs = kinds
            .iter()
            .map(|k| match k {
                PracticeKind::Bad => self.path(&r.rules_bad, "rules-bad", out, "rules_bad.csv"),
                PracticeKind::Good => self.path(&r.rules_good, "rules-good", out, "rules_good.csv"),
            })
            .collect::<CliResult<_>>()?;
        Ok(ReportJob {
            out: out.to_owned(),
            kinds,
            inputs,
            params: self.params(p, maxlen)?,
            formats: self.formats(r)?,
        })
    }
}

fn execute(cli: Cli) -> CliResult<()> {
    let mut settings = Settings::load(cli.config.as_deref())?;
    let default_maxlen = MiningParams::default().max_len;
    match cli.command {
        Command::Generate(a) => {
            let spec = settings.spec(&a.gen)?;
            let out = settings.out_dir(&a.out)?;
            println!("{}", stage_generate(&spec, &out)?);
        }
        Command::Prepare(a) => {
            let out = settings.out_dir(&a.out)?;
            let users = settings.path(&a.raw.users_csv, "users-csv", &out, "users.csv")?;
            let notes = settings.path(&a.raw.notifications_csv, "notifications-csv", &out, "notifications.csv")?;
            println!("{}", stage_prepare(&users, &notes, &out)?);
        }
        Command::Mine(a) => {
            let out = settings.out_dir(&a.out)?;
            let job = settings.mine_job(&out, &a.dataset, &a.params, &a.mine, default_maxlen)?;
            println!("{}", stage_mine(&job)?);
        }
        Command::Report(a) => {
            let out = settings.out_dir(&a.out)?;
            let recorded = out.join(PARAMS_FILE);
            if recorded.is_file() {
                settings.push_file(&recorded)?;
            }
            let job = settings.report_job(&out, &a.dataset, &a.params, &a.report, default_maxlen)?;
            println!("{}", stage_report(&job)?);
        }
        Command::Pipeline(a) => {
            let out = settings.out_dir(&a.out)?;
            // Validate every setting before the first stage writes anything.
            let maxlen = if a.fixtures { 2 } else { default_maxlen };
            let spec = settings.spec(&a.gen)?;
            let mine = settings.mine_job(&out, &a.dataset, &a.params, &a.mine, maxlen)?;
            let mut report = settings.report_job(&out, &a.dataset, &a.params, &a.report, maxlen)?;
            report.inputs = mine
                .kinds
                .iter()
                .map(|k| out.join(format!("rules_{}.csv", k.short())))
                .collect();

            let (users, notes) = if a.fixtures {
                println!("{}", stage_fixtures(&out)?);
                (out.join("users.csv"), out.join("notifications.csv"))
            } else if a.generate || a.gen.any() {
                println!("{}", stage_generate(&spec, &out)?);
                (out.join("users.csv"), out.join("notifications.csv"))
            } else {
                let users = settings.path(&a.raw.users_csv, "users-csv", &out, "users.csv")?;
                let notes = settings.path(&a.raw.notifications_csv, "notifications-csv", &out, "notifications.csv")?;
                require(&users)?;
                require(&notes)?;
                (users, notes)
            };
            println!("{}", stage_prepare(&users, &notes, &out)?);
            let mine = MineJob {
                inputs: mine
                    .kinds
                    .iter()
                    .map(|k| out.join(format!("prepared_{}.csv", k.short())))
                    .collect(),
                ..mine
            };
            println!("{}", stage_mine(&mine)?);
            println!("{}", stage_report(&report)?);
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_lines() {
        let text = "# thresholds\nsupport = 0.3   # lower than usual\n\nmax_consequent=2\n";
        let map = parse_config(text, Path::new("c.conf")).unwrap();
        assert_eq!(map["support"], "0.3");
        assert_eq!(map["max-consequent"], "2");
        assert_eq!(parse_config("speed = 3", Path::new("c")).unwrap_err().code, EXIT_USAGE);
        assert_eq!(parse_config("support", Path::new("c")).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn flags_beat_config() {
        let mut s = Settings::default();
        s.layers.push((
            "c".into(),
            parse_config("support = 0.3\nmaxlen = 3", Path::new("c")).unwrap(),
        ));
        let args = ParamArgs {
            support: Some(0.5),
            confidence: None,
            minlen: None,
            maxlen: None,
            max_consequent: None,
        };
        let p = s.params(&args, 10).unwrap();
        assert_eq!((p.min_support, p.max_len, p.min_confidence), (0.5, 3, 0.8));
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::EmptyDatabase).code, EXIT_EMPTY);
        assert_eq!(CliError::from(Error::InvalidParams("x".into())).code, EXIT_USAGE);
        assert_eq!(CliError::from(Error::DuplicateUser("u1".into())).code, EXIT_INPUT);
    }

    #[test]
    fn help_is_success() {
        assert_eq!(run(["ethline", "--help"]), 0);
        assert_eq!(run(["ethline", "mine", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["ethline"]), EXIT_USAGE);
    }
}
