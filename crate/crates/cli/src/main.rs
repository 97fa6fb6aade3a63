use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use parikh_core::bsl::Socle;
use parikh_core::check::{compare_words, crosscheck, Verdict};
use parikh_core::flatten::{bounded_pa_to_cqdd, bsl_to_cqdd, PipelineReport};
use parikh_core::format::Model;
use parikh_core::Limits;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parikh automata toolkit: membership, determinization pipeline,
/// bounded cross-checks and Graphviz export.
#[derive(Parser)]
#[command(name = "parikh-kit", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Candidate cap of the Diophantine solver.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    solver_cap: Option<u64>,
    /// Element cap for matrix monoids and matrix powers.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    monoid_cap: Option<u64>,
    /// Verify constraint determinism up to this word length in the pipeline.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cd_bound: Option<u64>,
    /// Word length used by crosscheck.
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a word; exit 0 on ACCEPT, 1 on REJECT.
    Member { model: PathBuf, word: String },
    /// Convert a BSL or a bounded PA into a union of flat deterministic CAs.
    Pipeline {
        model: PathBuf,
        /// Socle words, comma separated; required for PA input.
        #[arg(long, value_delimiter = ',')]
        socle: Option<Vec<String>>,
        /// Where to write the resulting model; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two models on every word up to --max-len.
    Crosscheck {
        left: PathBuf,
        right: PathBuf,
        /// Additional random words longer than --max-len.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Export a model as a Graphviz digraph.
    Dot {
        model: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct RunConfig {
    limits: Limits,
    check_length: usize,
    seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            check_length: 10,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Applies `key=value,...` overrides as found in `PARIKH_KIT_CAPS`.
    fn apply_env(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .with_context(|| format!("PARIKH_KIT_CAPS: expected key=value, got {item:?}"))?;
            let n: usize = value
                .trim()
                .parse()
                .with_context(|| format!("PARIKH_KIT_CAPS: bad value for {key}"))?;
            match key.trim().replace('-', "_").as_str() {
                "solver_cap" => self.limits.solver_cap = positive(key, n)?,
                "monoid_cap" => self.limits.monoid_cap = positive(key, n)?,
                "support_cap" => self.limits.support_cap = positive(key, n)?,
                "cd_bound" => self.limits.cd_bound = Some(positive(key, n)?),
                "max_len" | "check_length" => self.check_length = n,
                "seed" => self.seed = n as u64,
                other => bail!("PARIKH_KIT_CAPS: unknown key {other:?}"),
            }
        }
        Ok(())
    }

    fn apply_flags(&mut self, a: &ConfigArgs) {
        if let Some(n) = a.solver_cap {
            self.limits.solver_cap = n as usize;
        }
        if let Some(n) = a.monoid_cap {
            self.limits.monoid_cap = n as usize;
        }
        if let Some(n) = a.cd_bound {
            self.limits.cd_bound = Some(n as usize);
        }
        if let Some(n) = a.max_len {
            self.check_length = n;
        }
        if let Some(s) = a.seed {
            self.seed = s;
        }
    }
}

fn positive(key: &str, n: usize) -> Result<usize> {
    if n == 0 {
        bail!("PARIKH_KIT_CAPS: {key} must be at least 1");
    }
    Ok(n)
}

fn load(path: &Path) -> Result<Model> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Model::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show_word(w: &[char]) -> String {
    format!("{:?}", w.iter().collect::<String>())
}

fn verdict_str(b: bool) -> &'static str {
    if b {
        "ACCEPT"
    } else {
        "REJECT"
    }
}

fn render_report(report: &PipelineReport, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(report).expect("report is serializable") + "\n";
    }
    let mut s = String::from("stage            states  transitions  dimension  components\n");
    for r in &report.stages {
        s += &format!(
            "{:<16} {:>6}  {:>11}  {:>9}  {:>10}\n",
            r.stage, r.states, r.transitions, r.dimension, r.components
        );
    }
    s
}

fn member(cfg: &RunConfig, path: &Path, word: &str) -> Result<ExitCode> {
    let model = load(path)?;
    let w: Vec<char> = word.chars().collect();
    let ok = model.accepts(&w, &cfg.limits)?;
    println!("{}", verdict_str(ok));
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn pipeline(
    cfg: &RunConfig,
    json: bool,
    path: &Path,
    socle: Option<&[String]>,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let model = load(path)?;
    let (cqdd, report) = match (&model, socle) {
        (Model::Pa(pa), Some(words)) => {
            let socle = Socle::parse(words)?;
            bounded_pa_to_cqdd(pa, &socle, &cfg.limits)?
        }
        (Model::Pa(_), None) => bail!("a PA input needs --socle"),
        (Model::Bsl(bsl), None) => bsl_to_cqdd(bsl, &cfg.limits)?,
        (Model::Bsl(_), Some(_)) => bail!("a BSL input carries its own socle; drop --socle"),
        (m, _) => bail!("pipeline expects a BSL or PA, got {}", m.kind()),
    };
    let text = Model::Cqdd(cqdd).to_json() + "\n";
    let report = render_report(&report, json);
    match out {
        Some(p) => {
            emit(Some(p), &text)?;
            print!("{report}");
        }
        None => {
            print!("{text}");
            eprint!("{report}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_verdict(v: &Verdict, json: bool) {
    match (v, json) {
        (Verdict::EqualUpTo(n), false) => println!("EQUAL-UP-TO({n})"),
        (Verdict::EqualUpTo(n), true) => {
            println!("{}", serde_json::json!({"verdict": "equal", "max_len": n}))
        }
        (Verdict::Counterexample { word, left, right }, false) => println!(
            "COUNTEREXAMPLE {} left={} right={}",
            show_word(word),
            verdict_str(*left),
            verdict_str(*right)
        ),
        (Verdict::Counterexample { word, left, right }, true) => println!(
            "{}",
            serde_json::json!({
                "verdict": "counterexample",
                "word": word.iter().collect::<String>(),
                "left": left,
                "right": right,
            })
        ),
    }
}

fn crosscheck_cmd(
    cfg: &RunConfig,
    json: bool,
    left: &Path,
    right: &Path,
    samples: usize,
) -> Result<ExitCode> {
    let (a, b) = (load(left)?, load(right)?);
    let mut verdict = crosscheck(&a, &b, cfg.check_length, &cfg.limits)?;
    if verdict == Verdict::EqualUpTo(cfg.check_length) && samples > 0 {
        let mut alphabet = a.alphabet();
        alphabet.extend(b.alphabet());
        alphabet.sort_unstable();
        alphabet.dedup();
        if !alphabet.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let lo = cfg.check_length + 1;
            let words: Vec<Vec<char>> = (0..samples)
                .map(|_| {
                    let len = rng.gen_range(lo..=2 * lo);
                    (0..len)
                        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                        .collect()
                })
                .collect();
            if let Some(v) = compare_words(&a, &b, &words, &cfg.limits)? {
                verdict = v;
            }
        }
    }
    print_verdict(&verdict, json);
    Ok(match verdict {
        Verdict::EqualUpTo(_) => ExitCode::SUCCESS,
        Verdict::Counterexample { .. } => ExitCode::from(1),
    })
}

fn dot(path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let model = load(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".into());
    emit(out, &model.to_dot(&name))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = RunConfig::default();
    if let Ok(spec) = std::env::var("PARIKH_KIT_CAPS") {
        cfg.apply_env(&spec)?;
    }
    cfg.apply_flags(&cli.config);
    let json = cli.config.json;
    match &cli.command {
        Command::Member { model, word } => member(&cfg, model, word),
        Command::Pipeline { model, socle, out } => {
            pipeline(&cfg, json, model, socle.as_deref(), out.as_deref())
        }
        Command::Crosscheck {
            left,
            right,
            samples,
        } => crosscheck_cmd(&cfg, json, left, right, *samples),
        Command::Dot { model, out } => dot(model, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
