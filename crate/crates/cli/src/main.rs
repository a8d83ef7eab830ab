//! `hpl`: command-line access to LS paths, Hecke paths and their galleries.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_core::galleries::{codim_tilde, decorate_maximal, parameter_pattern};
use hecke_core::io::{PathFile, SystemFile};
use hecke_core::model::{
    enumerate_hecke, freudenthal_multiplicity, generate_ls_paths, multiplicity,
};
use hecke_core::paths::{is_hecke, is_ls, root_operator, stats, LambdaPath, RootOperator};
use hecke_core::rational::fmt_rat;
use hecke_core::root_system::{named, TitsMembership};
use hecke_core::{Error, RootSystem, Vector};

#[derive(Parser, Debug)]
#[command(
    name = "hpl",
    version,
    about = "Littelmann paths, Hecke paths and folded galleries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Check a system file (and optionally a path file) and summarize it.
    Validate,
    /// Decide whether each path is a Hecke path.
    CheckHecke,
    /// Decide whether each path is an LS path, with the statistics cross-check.
    CheckLs,
    /// Wall statistics ddim, codim and dim.
    Stats,
    /// Apply a root operator e, f or etilde.
    ApplyOp,
    /// LS paths of shape --lambda generated from the straight path.
    Crystal,
    /// Weight multiplicity of --mu in the module of highest weight --lambda.
    Mult,
    /// All Hecke paths of shape --lambda from --y0 to --y1.
    EnumerateHecke,
    /// Folded gallery trace at each breakpoint of a Hecke path.
    Gallery,
    /// Parameter pattern of a Hecke path.
    Pattern,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(clap::Args, Debug)]
struct RunConfig {
    /// System file (JSON), or one of A1, A2, B2, G2, A1~.
    #[arg(long, global = true)]
    system: Option<String>,
    /// Path file (JSON); may be repeated.
    #[arg(long, global = true)]
    path: Vec<PathBuf>,
    /// Height bound for root enumeration.
    #[arg(long = "h", global = true, env = "HPL_HEIGHT_BOUND", default_value_t = 20,
          value_parser = clap::value_parser!(u32).range(1..))]
    h: u32,
    #[arg(long, global = true, default_value_t = 200, value_parser = positive)]
    depth_cap: usize,
    /// Step cap for the Tits cone test.
    #[arg(long, global = true, default_value_t = 10000, value_parser = positive)]
    step_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comma-separated coordinates, e.g. "1,1" or "1/2,0".
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    y0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    y1: Option<String>,
    /// e, f or etilde.
    #[arg(long, global = true)]
    op: Option<String>,
    /// 1-based simple index.
    #[arg(long, global = true)]
    index: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}: {1}")]
    Read(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    File(PathBuf, Error),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("oracle disagreement: {0}")]
    Oracle(String),
}

/// What a command produced: exit status plus the report in every format it supports.
struct Report {
    status: u8,
    json: Value,
    text: String,
    dot: Option<String>,
}

impl Report {
    fn new(status: u8, json: Value, text: String) -> Self {
        Report {
            status,
            json,
            text,
            dot: None,
        }
    }
}

impl RunConfig {
    fn system(&self) -> Result<RootSystem, CliError> {
        let spec = self
            .system
            .as_deref()
            .ok_or_else(|| CliError::Usage("--system is required".into()))?;
        let builtin = match spec {
            "A1" => Some(named::a1()),
            "A2" => Some(named::a2()),
            "B2" => Some(named::b2()),
            "G2" => Some(named::g2()),
            "A1~" => Some(named::a1_affine()),
            _ => None,
        };
        if let Some(gcm) = builtin {
            return Ok(RootSystem::from_gcm(gcm)?);
        }
        let p = PathBuf::from(spec);
        let text = read(&p)?;
        SystemFile::parse(&text)
            .and_then(|f| f.build())
            .map_err(|e| CliError::File(p, e))
    }

    fn paths(&self, sys: &RootSystem) -> Result<Vec<(PathBuf, LambdaPath)>, CliError> {
        if self.path.is_empty() {
            return Err(CliError::Usage("--path is required".into()));
        }
        self.path
            .iter()
            .map(|p| {
                let text = read(p)?;
                let path = PathFile::parse(&text)
                    .and_then(|f| f.build(sys))
                    .map_err(|e| CliError::File(p.clone(), e))?;
                Ok((p.clone(), path))
            })
            .collect()
    }

    fn vector(
        &self,
        name: &str,
        value: &Option<String>,
        sys: &RootSystem,
    ) -> Result<Option<Vector>, CliError> {
        let Some(s) = value else { return Ok(None) };
        let items: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
        let v = Vector::parse(&items).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
        sys.check_dim(&v)
            .map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
        Ok(Some(v))
    }

    fn required(
        &self,
        name: &str,
        value: &Option<String>,
        sys: &RootSystem,
    ) -> Result<Vector, CliError> {
        self.vector(name, value, sys)?
            .ok_or_else(|| CliError::Usage(format!("--{name} is required")))
    }
}

fn read(p: &Path) -> Result<String, CliError> {
    fs::read_to_string(p).map_err(|e| CliError::Read(p.to_path_buf(), e))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Runs each path through `f` and merges the reports; the status is the worst one.
fn per_path(
    cfg: &RunConfig,
    f: impl Fn(&RootSystem, &LambdaPath) -> Result<Report, CliError>,
) -> Result<Report, CliError> {
    let sys = cfg.system()?;
    let mut status = 0;
    let mut json = Vec::new();
    let mut text = String::new();
    let paths = cfg.paths(&sys)?;
    let many = paths.len() > 1;
    for (file, path) in &paths {
        let r = f(&sys, path)?;
        status = status.max(r.status);
        json.push(json!({ "file": file.display().to_string(), "report": r.json }));
        if many {
            text.push_str(&format!("== {}\n", file.display()));
        }
        text.push_str(&r.text);
    }
    let json = if many {
        Value::Array(json)
    } else {
        json.pop().unwrap()["report"].take()
    };
    Ok(Report::new(status, json, text))
}

fn certificates_text(certs: &[hecke_core::paths::ChainCertificate]) -> String {
    let mut s = String::new();
    for c in certs {
        let roots: Vec<String> = c.roots.iter().map(|r| r.to_string()).collect();
        s.push_str(&format!(
            "  t={}: chain [{}]\n",
            fmt_rat(&c.t),
            roots.join(", ")
        ));
    }
    s
}

fn validate(cfg: &RunConfig) -> Result<Report, CliError> {
    let sys = cfg.system()?;
    let kind = match sys.kind() {
        hecke_core::root_system::SystemKind::Finite => "finite".to_string(),
        hecke_core::root_system::SystemKind::Affine { .. } => "affine".to_string(),
        hecke_core::root_system::SystemKind::Indefinite => "indefinite".to_string(),
    };
    let roots = sys.real_roots_up_to_height(cfg.h);
    let mut json = json!({
        "kind": kind,
        "rank": sys.rank(),
        "rank_x": sys.dim(),
        "names": sys.names(),
        "symmetrizer": sys.symmetrizer().iter().map(fmt_rat).collect::<Vec<_>>(),
        "positive_roots_up_to_h": roots.len(),
    });
    let mut text = format!(
        "valid {kind} system of rank {} on Z^{}; {} positive real roots of height <= {}\n",
        sys.rank(),
        sys.dim(),
        roots.len(),
        cfg.h
    );
    if let Some(l) = cfg.vector("lambda", &cfg.lambda, &sys)? {
        let m = sys.tits_cone_membership(&l, cfg.step_cap);
        let verdict = match &m {
            TitsMembership::In(w) => format!("in the Tits cone (witness {w})"),
            TitsMembership::Out => "outside the Tits cone".into(),
            TitsMembership::Unknown => format!("undecided after {} steps", cfg.step_cap),
        };
        text.push_str(&format!("lambda {l}: {verdict}\n"));
        json["tits_cone"] = to_json(&m);
    }
    if !cfg.path.is_empty() {
        let mut files = Vec::new();
        for (file, p) in cfg.paths(&sys)? {
            text.push_str(&format!(
                "{}: valid path from {} to {}\n",
                file.display(),
                p.start(),
                p.end()
            ));
            files.push(json!({
                "file": file.display().to_string(),
                "vertices": p.vertices(),
                "in_y": p.in_y(),
            }));
        }
        json["paths"] = Value::Array(files);
    }
    Ok(Report::new(0, json, text))
}

fn check_hecke(cfg: &RunConfig) -> Result<Report, CliError> {
    per_path(cfg, |sys, p| {
        let v = is_hecke(sys, p, cfg.h)?;
        let text = match &v.failure {
            None => format!("Hecke path\n{}", certificates_text(&v.certificates)),
            Some(f) => format!("not a Hecke path: {f}\n"),
        };
        Ok(Report::new(if v.holds { 0 } else { 1 }, to_json(&v), text))
    })
}

fn check_ls(cfg: &RunConfig) -> Result<Report, CliError> {
    per_path(cfg, |sys, p| {
        let v = is_ls(sys, p, cfg.h)?;
        let mut text = match &v.failure {
            None => format!("LS path\n{}", certificates_text(&v.certificates)),
            Some(f) => format!("not an LS path: {f}\n"),
        };
        if let Some(c) = &v.cross_check {
            text.push_str(&format!(
                "cross-check: Hecke = {}, ddim = {}, rho(lambda - nu) = {}, agrees = {}\n",
                c.is_hecke,
                c.ddim,
                c.rho_gap.as_deref().unwrap_or("undefined"),
                c.agrees
            ));
        }
        Ok(Report::new(if v.holds { 0 } else { 1 }, to_json(&v), text))
    })
}

fn stats_cmd(cfg: &RunConfig) -> Result<Report, CliError> {
    per_path(cfg, |sys, p| {
        let st = stats(sys, p, cfg.h)?;
        let dim = st
            .dim
            .map(|d| d.to_string())
            .unwrap_or_else(|| "n/a".into());
        let text = format!("ddim = {}\ncodim = {}\ndim = {dim}\n", st.ddim, st.codim);
        Ok(Report::new(0, to_json(&st), text))
    })
}

fn apply_op(cfg: &RunConfig) -> Result<Report, CliError> {
    let op: RootOperator = cfg
        .op
        .as_deref()
        .ok_or_else(|| CliError::Usage("--op is required".into()))?
        .parse()?;
    let i = cfg
        .index
        .ok_or_else(|| CliError::Usage("--index is required".into()))?;
    if i == 0 {
        return Err(CliError::Usage("--index is 1-based".into()));
    }
    per_path(cfg, |sys, p| match root_operator(sys, op, i - 1, p) {
        Ok(q) => {
            let file = PathFile::from_path(&q);
            let text = format!("{op}_{i}: {}\n", file.to_json());
            Ok(Report::new(0, to_json(&file), text))
        }
        Err(Error::Undefined(why)) => Ok(Report::new(
            1,
            json!({ "undefined": why }),
            format!("{op}_{i} is undefined: {why}\n"),
        )),
        Err(e) => Err(e.into()),
    })
}

fn crystal(cfg: &RunConfig) -> Result<Report, CliError> {
    let sys = cfg.system()?;
    let lambda = cfg.required("lambda", &cfg.lambda, &sys)?;
    let g = generate_ls_paths(&sys, &lambda, cfg.depth_cap)?;
    let mut text = format!(
        "{} LS paths of shape {lambda}{}\n",
        g.len(),
        if g.partial { " (partial)" } else { "" }
    );
    for (w, n) in g.weights() {
        text.push_str(&format!("  {w}: {n}\n"));
    }
    Ok(Report {
        status: 0,
        json: g.to_json(),
        text,
        dot: Some(g.to_dot()),
    })
}

fn mult(cfg: &RunConfig) -> Result<Report, CliError> {
    let sys = cfg.system()?;
    let lambda = cfg.required("lambda", &cfg.lambda, &sys)?;
    let mu = cfg.required("mu", &cfg.mu, &sys)?;
    let m = multiplicity(&sys, &lambda, &mu, cfg.depth_cap)?;
    let oracle = match freudenthal_multiplicity(&sys, &lambda, &mu) {
        Ok(o) => Some(o),
        Err(Error::UnsupportedType(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let agreement = match oracle {
        Some(o) if o as usize == m => format!("Freudenthal oracle agrees: {o}"),
        Some(o) => return Err(CliError::Oracle(format!("LS count {m}, Freudenthal {o}"))),
        None => "Freudenthal oracle unavailable for this type".to_string(),
    };
    let json = json!({ "lambda": lambda, "mu": mu, "multiplicity": m, "freudenthal": oracle });
    Ok(Report::new(0, json, format!("{m}\n{agreement}\n")))
}

fn enumerate(cfg: &RunConfig) -> Result<Report, CliError> {
    let sys = cfg.system()?;
    let lambda = cfg.required("lambda", &cfg.lambda, &sys)?;
    let y0 = cfg
        .vector("y0", &cfg.y0, &sys)?
        .unwrap_or_else(|| Vector::zero(sys.dim()));
    let y1 = cfg.required("y1", &cfg.y1, &sys)?;
    let found = enumerate_hecke(&sys, &lambda, &y0, &y1, cfg.h)?;
    let mut text = format!(
        "{} Hecke paths of shape {lambda} from {y0} to {y1}\n",
        found.len()
    );
    let mut entries = Vec::new();
    for hp in &found {
        let p = hp.lambda_path();
        let ls = is_ls(&sys, p, cfg.h)?.holds;
        let st = stats(&sys, p, cfg.h)?;
        text.push_str(&format!(
            "  {}  ddim={} codim={}{}\n",
            hp.path.to_json(),
            st.ddim,
            st.codim,
            if ls { "  LS" } else { "" }
        ));
        entries.push(json!({ "path": hp.path, "certificates": hp.certificates, "ls": ls, "ddim": st.ddim, "codim": st.codim }));
    }
    Ok(Report::new(0, Value::Array(entries), text))
}

fn require_hecke(sys: &RootSystem, p: &LambdaPath, h: u32) -> Result<Option<Report>, CliError> {
    let v = is_hecke(sys, p, h)?;
    Ok(v.failure.map(|f| {
        Report::new(
            1,
            json!({ "not_hecke": f }),
            format!("not a Hecke path: {f}\n"),
        )
    }))
}

fn gallery(cfg: &RunConfig) -> Result<Report, CliError> {
    per_path(cfg, |sys, p| {
        if let Some(r) = require_hecke(sys, p, cfg.h)? {
            return Ok(r);
        }
        let d = decorate_maximal(sys, p, cfg.h)?;
        let ct = codim_tilde(sys, p, &d, cfg.h)?;
        let codim = stats(sys, p, cfg.h)?.codim;
        let text = format!("{}codim_tilde = {ct}\ncodim = {codim}\n", d.to_text());
        Ok(Report::new(
            0,
            json!({ "decoration": d, "codim_tilde": ct, "codim": codim }),
            text,
        ))
    })
}

fn pattern(cfg: &RunConfig) -> Result<Report, CliError> {
    per_path(cfg, |sys, p| {
        if let Some(r) = require_hecke(sys, p, cfg.h)? {
            return Ok(r);
        }
        let pat = parameter_pattern(sys, p, cfg.h)?;
        Ok(Report::new(0, to_json(&pat), format!("{pat}\n")))
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = &cli.config;
    if cfg.format == Format::Dot && cli.command != Command::Crystal {
        return Err(CliError::Usage(
            "--format dot is only available for crystal".into(),
        ));
    }
    match cli.command {
        Command::Validate => validate(cfg),
        Command::CheckHecke => check_hecke(cfg),
        Command::CheckLs => check_ls(cfg),
        Command::Stats => stats_cmd(cfg),
        Command::ApplyOp => apply_op(cfg),
        Command::Crystal => crystal(cfg),
        Command::Mult => mult(cfg),
        Command::EnumerateHecke => enumerate(cfg),
        Command::Gallery => gallery(cfg),
        Command::Pattern => pattern(cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.config.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r.json).expect("json values print")
                ),
                Format::Text => print!("{}", r.text),
                Format::Dot => print!("{}", r.dot.unwrap_or_default()),
            }
            ExitCode::from(r.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
