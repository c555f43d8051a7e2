//! Command-line surface: `verify`, `export` and `cache`.
//!
//! Flags may be combined with a TOML file given by `--config`; flags win.
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affine::{
    build_pi_chain, check_budget, demazure_translation, rhs_tensor, character_report,
    translation_report, verify_orderings, Report, Status, TranslationSides,
};
use crate::crystal::{demazure_generate, highest_weight_crystal, Crystal};
use crate::pathspace::{AffineWeight, Path, PathJson};
use crate::rational::{format_q, parse_q};
use crate::rootsystem::{CartanType, RootSystem, Weight};
use crate::skein::verify_level_one;
use crate::{Error, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const CACHE_ENV: &str = "PATHCRYSTAL_CACHE";
const DEFAULT_CACHE_DIR: &str = ".pathcrystal-cache";
const DEFAULT_BUDGET: usize = 100_000;
const DEFAULT_DEPTH: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "pathcrystal", version, about = "Exact Littelmann path crystals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run Demazure/tensor, character and level-one checks.
    Verify(VerifyArgs),
    /// Write a crystal as JSON and/or DOT.
    Export(ExportArgs),
    /// Inspect or clear the crystal cache.
    Cache(CacheArgs),
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// Cartan type letter (A–G).
    #[arg(long = "type")]
    pub type_label: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Node budget for closures and Demazure sweeps.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_cache: bool,
    /// Cache root; defaults to $PATHCRYSTAL_CACHE, then .pathcrystal-cache.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Checks to run: 1 (characters), 3 (translation sets), 4 (level-one skeins).
    #[arg(long, value_delimiter = ',')]
    pub thm: Vec<u8>,
    /// Minuscule node sequence, e.g. 1,1,1.
    #[arg(long, value_delimiter = ',')]
    pub nodes: Option<Vec<usize>>,
    /// Operator-word depth for the level-one bisimulation.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Also check every distinct ordering of the nodes.
    #[arg(long)]
    pub orderings: bool,
    /// Write the Demazure side as a crystal JSON next to the report.
    #[arg(long)]
    pub export_lhs: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug, Default)]
pub struct ExportArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub format: Vec<Format>,
    /// Highest weight in fundamental coordinates, e.g. 1,0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<i64>>,
    /// Seed path as path JSON.
    #[arg(long)]
    pub seed_file: Option<PathBuf>,
    /// Demazure word applied to the seed, right to left.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub word: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum CacheAction {
    #[default]
    Status,
    Clear,
}

#[derive(Args, Debug, Default)]
pub struct CacheArgs {
    #[arg(value_enum, default_value = "status")]
    pub action: CacheAction,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "type")]
    pub type_label: Option<String>,
    pub rank: Option<usize>,
    pub thm: Option<Vec<u8>>,
    pub nodes: Option<Vec<usize>>,
    pub depth: Option<usize>,
    pub budget: Option<usize>,
    pub out: Option<PathBuf>,
    pub no_cache: Option<bool>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Vec<Format>>,
    pub lambda: Option<Vec<i64>>,
    pub seed_file: Option<PathBuf>,
    pub word: Option<Vec<usize>>,
}

impl ConfigFile {
    pub fn load(path: &FsPath) -> Result<ConfigFile> {
        let text = fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved job description.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub thms: Vec<u8>,
    pub nodes: Vec<usize>,
    pub depth: usize,
    pub budget: usize,
    pub out: PathBuf,
    pub use_cache: bool,
    pub cache_dir: PathBuf,
    pub formats: Vec<Format>,
    pub lambda: Option<Vec<i64>>,
    pub seed_file: Option<PathBuf>,
    pub word: Option<Vec<usize>>,
    pub orderings: bool,
    pub export_lhs: bool,
}

fn cache_root(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

impl RunConfig {
    fn resolve(common: CommonArgs, file: &ConfigFile) -> Result<RunConfig> {
        let label = common
            .type_label
            .or_else(|| file.type_label.clone())
            .ok_or_else(|| Error::Usage("--type is required".into()))?;
        let cartan_type: CartanType = label.parse()?;
        let rank = common
            .rank
            .or(file.rank)
            .ok_or_else(|| Error::Usage("--rank is required".into()))?;
        let budget = common.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET);
        if budget == 0 {
            return Err(Error::Usage("--budget must be positive".into()));
        }
        Ok(RunConfig {
            cartan_type,
            rank,
            thms: file.thm.clone().unwrap_or_default(),
            nodes: file.nodes.clone().unwrap_or_default(),
            depth: file.depth.unwrap_or(DEFAULT_DEPTH),
            budget,
            out: common
                .out
                .or_else(|| file.out.clone())
                .unwrap_or_else(|| PathBuf::from("reports")),
            use_cache: !(common.no_cache || file.no_cache.unwrap_or(false)),
            cache_dir: cache_root(common.cache_dir.or_else(|| file.cache_dir.clone())),
            formats: file.format.clone().unwrap_or_default(),
            lambda: file.lambda.clone(),
            seed_file: file.seed_file.clone(),
            word: file.word.clone(),
            orderings: false,
            export_lhs: false,
        })
    }

    pub fn from_verify(args: VerifyArgs) -> Result<RunConfig> {
        let file = load_config(&args.common.config)?;
        let mut cfg = RunConfig::resolve(args.common, &file)?;
        if !args.thm.is_empty() {
            cfg.thms = args.thm;
        }
        if let Some(n) = args.nodes {
            cfg.nodes = n;
        }
        if let Some(d) = args.depth {
            cfg.depth = d;
        }
        cfg.orderings = args.orderings;
        cfg.export_lhs = args.export_lhs;
        if cfg.thms.is_empty() {
            return Err(Error::Usage("--thm is required".into()));
        }
        if let Some(t) = cfg.thms.iter().find(|t| ![1, 3, 4].contains(*t)) {
            return Err(Error::Usage(format!("unknown theorem {t}; expected 1, 3 or 4")));
        }
        if cfg.depth == 0 {
            return Err(Error::Usage("--depth must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn from_export(args: ExportArgs) -> Result<RunConfig> {
        let file = load_config(&args.common.config)?;
        let mut cfg = RunConfig::resolve(args.common, &file)?;
        if !args.format.is_empty() {
            cfg.formats = args.format;
        }
        if cfg.formats.is_empty() {
            cfg.formats = vec![Format::Json];
        }
        if args.lambda.is_some() {
            cfg.lambda = args.lambda;
        }
        if args.seed_file.is_some() {
            cfg.seed_file = args.seed_file;
        }
        if args.word.is_some() {
            cfg.word = args.word;
        }
        if cfg.lambda.is_some() == cfg.seed_file.is_some() {
            return Err(Error::Usage("give exactly one of --lambda or --seed-file".into()));
        }
        Ok(cfg)
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        RootSystem::new(self.cartan_type, self.rank)
    }

    /// Nodes must exist and be minuscule.
    fn validate_nodes(&self, rs: &RootSystem) -> Result<()> {
        for &n in &self.nodes {
            rs.check_node(n).map_err(|e| Error::Usage(e.to_string()))?;
            if !rs.is_minuscule(n) {
                let avail = rs.minuscule_nodes();
                return Err(Error::Usage(if avail.is_empty() {
                    format!("{} has no minuscule nodes", rs.label())
                } else {
                    format!("node {n} is not minuscule in {} (minuscule: {avail:?})", rs.label())
                }));
            }
        }
        Ok(())
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<ConfigFile> {
    match path {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// Entry existed but could not be used; it was rebuilt.
    Recomputed,
    Disabled,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    description: String,
    /// One string per path: steps `level:c_1,…,c_r` joined by `;`.
    paths: Vec<String>,
}

fn encode_path(p: &Path) -> String {
    let steps: Vec<String> = p
        .steps()
        .iter()
        .map(|s| {
            let c: Vec<String> = s.finite.coords().iter().map(format_q).collect();
            format!("{}:{}", format_q(&s.level), c.join(","))
        })
        .collect();
    steps.join(";")
}

fn decode_path(text: &str) -> Result<Path> {
    if text.is_empty() {
        return Ok(Path::empty());
    }
    let steps = text
        .split(';')
        .map(|step| {
            let (level, coords) = step
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad step {step}")))?;
            let coords = coords.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
            Ok(AffineWeight::new(parse_q(level)?, Weight::from_coords(coords)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Path::canonicalize(steps))
}

/// Content-addressed store of path sets, keyed by the SHA-256 of a job
/// description (type, rank, seed, word).
pub struct Cache {
    root: PathBuf,
    enabled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheStatus {
    pub root: String,
    pub entries: usize,
    pub bytes: u64,
}

impl Cache {
    pub fn new(root: PathBuf, enabled: bool) -> Cache {
        Cache { root, enabled }
    }

    pub fn key(description: &str) -> String {
        format!("{:x}", Sha256::digest(description.as_bytes()))
    }

    pub fn entry_path(&self, description: &str) -> PathBuf {
        self.root.join(format!("{}.json", Cache::key(description)))
    }

    pub fn get_or_compute<F>(&self, description: &str, compute: F) -> Result<(Vec<Path>, CacheOutcome)>
    where
        F: FnOnce() -> Result<Vec<Path>>,
    {
        if !self.enabled {
            return Ok((compute()?, CacheOutcome::Disabled));
        }
        let file = self.entry_path(description);
        let mut outcome = CacheOutcome::Miss;
        if file.exists() {
            match self.read(&file, description) {
                Ok(paths) => {
                    info!("cache hit {}", file.display());
                    return Ok((paths, CacheOutcome::Hit));
                }
                Err(e) => {
                    warn!("corrupt cache entry {} ({e}); recomputing", file.display());
                    outcome = CacheOutcome::Recomputed;
                }
            }
        }
        let paths = compute()?;
        fs::create_dir_all(&self.root)?;
        let entry = CacheEntry {
            description: description.to_string(),
            paths: paths.iter().map(encode_path).collect(),
        };
        let tmp = file.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, &file)?;
        Ok((paths, outcome))
    }

    fn read(&self, file: &FsPath, description: &str) -> Result<Vec<Path>> {
        let entry: CacheEntry = serde_json::from_slice(&fs::read(file)?)?;
        if entry.description != description {
            return Err(Error::Parse("description mismatch".into()));
        }
        entry.paths.iter().map(|p| decode_path(p)).collect()
    }

    pub fn status(&self) -> Result<CacheStatus> {
        let mut entries = 0;
        let mut bytes = 0;
        if self.root.exists() {
            for e in fs::read_dir(&self.root)? {
                let e = e?;
                if e.path().extension().is_some_and(|x| x == "json") {
                    entries += 1;
                    bytes += e.metadata()?.len();
                }
            }
        }
        Ok(CacheStatus {
            root: self.root.display().to_string(),
            entries,
            bytes,
        })
    }

    pub fn clear(&self) -> Result<usize> {
        let n = self.status()?.entries;
        if self.root.exists() {
            for e in fs::read_dir(&self.root)? {
                let p = e?.path();
                if p.extension().is_some_and(|x| x == "json" || x == "tmp") {
                    fs::remove_file(p)?;
                }
            }
        }
        Ok(n)
    }
}

fn seed_digest(p: &Path) -> Result<String> {
    Ok(Cache::key(&serde_json::to_string(&p.to_json())?))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Result of one `verify` invocation.
pub struct VerifyOutcome {
    pub reports: Vec<Report>,
    pub written: Vec<PathBuf>,
    pub cache: Vec<CacheOutcome>,
}

impl VerifyOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.status == Status::Fail) {
            EXIT_FAIL
        } else if self.reports.iter().any(|r| r.status == Status::Inconclusive) {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        }
    }
}

fn cached_sides(
    rs: &RootSystem,
    nodes: &[usize],
    cfg: &RunConfig,
    cache: &Cache,
    events: &mut Vec<CacheOutcome>,
) -> Result<TranslationSides> {
    check_budget(rs, nodes, cfg.budget)?;
    let chain = build_pi_chain(rs, nodes)?;
    let seed = chain.last().expect("chain has π₀").clone();
    let label = rs.label();
    let lhs_key = format!(
        "{label}|seed={}|word=translation:{}",
        seed_digest(&seed)?,
        join(nodes)
    );
    let (lhs, ev) = cache.get_or_compute(&lhs_key, || {
        let mut v: Vec<Path> = demazure_translation(rs, nodes, &seed, cfg.budget)?
            .into_iter()
            .collect();
        v.sort();
        Ok(v)
    })?;
    events.push(ev);
    // the tensor side is cheaper to rebuild than to load
    let rhs = rhs_tensor(rs, nodes, cfg.budget)?;
    Ok(TranslationSides {
        chain,
        lhs: lhs.into_iter().collect(),
        rhs: rhs.into_iter().collect(),
    })
}

fn report_name(r: &Report, suffix: &str) -> String {
    let nodes: Vec<String> = r.nodes.iter().map(|n| n.to_string()).collect();
    format!("theorem{}-{}{}-{}{}", r.theorem, r.type_label, r.rank, nodes.join("-"), suffix)
}

fn write_json<T: Serialize>(dir: &FsPath, name: &str, value: &T) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyOutcome> {
    let rs = cfg.root_system()?;
    cfg.validate_nodes(&rs)?;
    let cache = Cache::new(cfg.cache_dir.clone(), cfg.use_cache);
    let mut out = VerifyOutcome {
        reports: Vec::new(),
        written: Vec::new(),
        cache: Vec::new(),
    };
    for &thm in &cfg.thms {
        let started = Instant::now();
        let report = match thm {
            1 | 3 => {
                let blank = Report::new(thm, &rs, &cfg.nodes);
                match cached_sides(&rs, &cfg.nodes, cfg, &cache, &mut out.cache) {
                    Ok(sides) => {
                        if cfg.export_lhs && thm == 3 {
                            let c = Crystal::from_paths(
                                &rs,
                                sides.lhs.iter().cloned(),
                                &rs.affine_index_set(),
                                vec![sides.chain.last().expect("chain has π₀").clone()],
                            );
                            out.written
                                .push(write_json(&cfg.out, &report_name(&blank, "-lhs.json"), &c.to_json())?);
                        }
                        if thm == 1 {
                            character_report(&rs, blank, &sides, started)?
                        } else {
                            translation_report(&rs, blank, &sides, started)
                        }
                    }
                    Err(e) => blank.from_error(e, started)?,
                }
            }
            4 => {
                let nodes = if cfg.nodes.is_empty() {
                    rs.minuscule_nodes()
                } else {
                    cfg.nodes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
                };
                if nodes.is_empty() {
                    return Err(Error::Usage(format!("{} has no minuscule nodes", rs.label())));
                }
                for &n in &nodes[..nodes.len() - 1] {
                    let r = verify_level_one(&rs, n, cfg.depth, cfg.budget)?;
                    out.written.push(write_json(&cfg.out, &report_name(&r, ".json"), &r)?);
                    out.reports.push(r);
                }
                verify_level_one(&rs, nodes[nodes.len() - 1], cfg.depth, cfg.budget)?
            }
            _ => unreachable!("validated"),
        };
        out.written.push(write_json(&cfg.out, &report_name(&report, ".json"), &report)?);
        out.reports.push(report);
        if thm == 3 && cfg.orderings {
            let r = verify_orderings(&rs, &cfg.nodes, cfg.budget)?;
            out.written
                .push(write_json(&cfg.out, &report_name(&r, "-orderings.json"), &r)?);
            out.reports.push(r);
        }
    }
    Ok(out)
}

pub fn cmd_export(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let rs = cfg.root_system()?;
    let cache = Cache::new(cfg.cache_dir.clone(), cfg.use_cache);
    let (crystal, stem) = if let Some(lambda) = &cfg.lambda {
        if lambda.len() != rs.rank() {
            return Err(Error::Usage(format!(
                "--lambda has {} coordinates, rank is {}",
                lambda.len(),
                rs.rank()
            )));
        }
        let w = Weight::from_ints(lambda);
        if !w.is_dominant() {
            return Err(Error::Usage(format!("{w} is not dominant")));
        }
        let seed = Path::straight_finite(w.clone());
        let key = format!("{}|seed={}|closure", rs.label(), seed_digest(&seed)?);
        let (nodes, _) = cache.get_or_compute(&key, || {
            Ok(highest_weight_crystal(&rs, &w)?.nodes().to_vec())
        })?;
        let c = Crystal::from_paths(&rs, nodes, &rs.finite_index_set(), vec![seed]);
        (c, format!("crystal-{}-{}", rs.label(), join(lambda).replace(',', "_")))
    } else {
        let file = cfg.seed_file.as_ref().expect("validated");
        let json: PathJson = serde_json::from_str(&fs::read_to_string(file)?)?;
        let seed = Path::from_json(&json)?;
        if seed.steps().iter().any(|s| s.rank() != rs.rank()) {
            return Err(Error::Usage("seed rank differs from --rank".into()));
        }
        let word = cfg.word.clone().unwrap_or_default();
        for &i in &word {
            if i > rs.rank() {
                return Err(Error::Usage(format!("word letter {i} out of range")));
            }
        }
        let key = format!("{}|seed={}|word={}", rs.label(), seed_digest(&seed)?, join(&word));
        let (nodes, _) = cache.get_or_compute(&key, || {
            Ok(demazure_generate(&rs, &seed, &word)?.nodes().to_vec())
        })?;
        let affine = word.contains(&0) || seed.steps().iter().any(|s| s.level != 0.into());
        let index_set = if affine {
            rs.affine_index_set()
        } else {
            rs.finite_index_set()
        };
        let c = Crystal::from_paths(&rs, nodes, &index_set, vec![seed]);
        (c, format!("demazure-{}-{}", rs.label(), join(&word).replace(',', "_")))
    };
    let mut written = Vec::new();
    for f in &cfg.formats {
        match f {
            Format::Json => written.push(write_json(&cfg.out, &format!("{stem}.json"), &crystal.to_json())?),
            Format::Dot => {
                fs::create_dir_all(&cfg.out)?;
                let p = cfg.out.join(format!("{stem}.dot"));
                fs::write(&p, crystal.to_dot())?;
                written.push(p);
            }
        }
    }
    Ok(written)
}

pub fn cmd_cache(args: &CacheArgs) -> Result<CacheStatus> {
    let cache = Cache::new(cache_root(args.cache_dir.clone()), true);
    if args.action == CacheAction::Clear {
        cache.clear()?;
    }
    cache.status()
}

fn usage_like(e: &Error) -> bool {
    matches!(
        e,
        Error::Usage(_)
            | Error::InvalidType { .. }
            | Error::NotMinuscule(_)
            | Error::NodeOutOfRange { .. }
            | Error::DimensionMismatch { .. }
    )
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => RunConfig::from_verify(a).and_then(|cfg| {
            let out = cmd_verify(&cfg)?;
            for r in &out.reports {
                println!("{}", r.summary_line());
            }
            Ok(out.exit_code())
        }),
        Command::Export(a) => RunConfig::from_export(a).and_then(|cfg| {
            for p in cmd_export(&cfg)? {
                println!("wrote {}", p.display());
            }
            Ok(EXIT_PASS)
        }),
        Command::Cache(a) => cmd_cache(&a).map(|s| {
            println!("cache {}: {} entries, {} bytes", s.root, s.entries, s.bytes);
            EXIT_PASS
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) if usage_like(&e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(args: &[&str]) -> i32 {
        let mut argv = vec!["pathcrystal", "verify", "--no-cache"];
        argv.extend_from_slice(args);
        run(argv)
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        assert_eq!(verify(&["--type", "A", "--rank", "2", "--thm", "3", "--nodes", "1,2", "--out", out]), 0);
        assert_eq!(verify(&["--type", "F", "--rank", "4", "--thm", "3", "--nodes", "1", "--out", out]), 64);
        assert_eq!(
            verify(&["--type", "A", "--rank", "2", "--thm", "3", "--nodes", "1,2,1", "--budget", "5", "--out", out]),
            2
        );
        assert_eq!(verify(&["--type", "A", "--rank", "2", "--thm", "7", "--nodes", "1"]), 64);
        assert_eq!(run(["pathcrystal", "verify", "--bogus"]), 64);
        assert_eq!(verify(&["--type", "Q", "--rank", "2", "--thm", "3"]), 64);
    }

    #[test]
    fn flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let cfg_path = dir.path().join("run.toml");
        fs::write(&cfg_path, "type = \"A\"\nrank = 3\nthm = [3]\nnodes = [1]\nbudget = 50\n").unwrap();
        let cli = Cli::try_parse_from([
            "pathcrystal",
            "verify",
            "--config",
            cfg_path.to_str().unwrap(),
            "--rank",
            "2",
        ])
        .unwrap();
        let Command::Verify(a) = cli.command else { panic!() };
        let cfg = RunConfig::from_verify(a).unwrap();
        assert_eq!((cfg.rank, cfg.budget, cfg.nodes.clone()), (2, 50, vec![1]));

        fs::write(&cfg_path, "colour = 3\n").unwrap();
        let cli = Cli::try_parse_from(["pathcrystal", "verify", "--config", cfg_path.to_str().unwrap()]).unwrap();
        let Command::Verify(a) = cli.command else { panic!() };
        assert!(matches!(RunConfig::from_verify(a), Err(Error::Usage(_))));
    }

    #[test]
    fn cache_hit_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf(), true);
        let p = vec![Path::empty()];
        let (_, o) = cache.get_or_compute("k", || Ok(p.clone())).unwrap();
        assert_eq!(o, CacheOutcome::Miss);
        let (v, o) = cache.get_or_compute("k", || unreachable!()).unwrap();
        assert_eq!((v, o), (p.clone(), CacheOutcome::Hit));
        fs::write(cache.entry_path("k"), b"{not json").unwrap();
        let (v, o) = cache.get_or_compute("k", || Ok(p.clone())).unwrap();
        assert_eq!((v, o), (p.clone(), CacheOutcome::Recomputed));
        assert_eq!(cache.status().unwrap().entries, 1);
        assert_eq!(cache.clear().unwrap(), 1);
        assert_eq!(cache.status().unwrap().entries, 0);
        let (_, o) = cache.get_or_compute("k", || Ok(p.clone())).unwrap();
        assert_eq!(o, CacheOutcome::Miss);
    }
}
