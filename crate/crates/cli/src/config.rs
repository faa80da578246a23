//! Run configuration: CLI flags merged over an optional `key = value`
//! config file (flags win).

use rbf_weno::flux::EulerMode;
use rbf_weno::harness;
use rbf_weno::problems::Problem;
use rbf_weno::reconstruction::Scheme;
use std::collections::HashMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: Problem,
    pub scheme: Scheme,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub euler_mode: EulerMode,
    pub monotone_guard: bool,
    pub out: PathBuf,
    pub resolutions: Vec<usize>,
}

/// Raw option bag before validation; every field optional so the file and
/// the flags can each fill any subset.
#[derive(Debug, Default, Clone)]
pub struct RawConfig {
    pub problem: Option<String>,
    pub scheme: Option<String>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub euler_mode: Option<String>,
    pub monotone_guard: Option<String>,
    pub out: Option<PathBuf>,
    pub resolutions: Option<String>,
}

pub fn parse_config_file(path: &Path) -> Result<RawConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {} is not `key = value`", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    let mut raw = RawConfig::default();
    let parse_usize = |v: &str, key: &str| {
        v.parse::<usize>()
            .map_err(|_| format!("config key {key}: invalid integer `{v}`"))
    };
    let parse_f64 = |v: &str, key: &str| {
        v.parse::<f64>()
            .map_err(|_| format!("config key {key}: invalid number `{v}`"))
    };
    for (key, value) in map {
        match key.as_str() {
            "problem" => raw.problem = Some(value),
            "scheme" => raw.scheme = Some(value),
            "k" => raw.k = Some(parse_usize(&value, "k")?),
            "n" => raw.n = Some(parse_usize(&value, "n")?),
            "m" => raw.m = Some(parse_usize(&value, "m")?),
            "cfl" => raw.cfl = Some(parse_f64(&value, "cfl")?),
            "t_end" => raw.t_end = Some(parse_f64(&value, "t_end")?),
            "euler_mode" => raw.euler_mode = Some(value),
            "monotone_guard" => raw.monotone_guard = Some(value),
            "out" => raw.out = Some(PathBuf::from(value)),
            "resolutions" => raw.resolutions = Some(value),
            other => return Err(format!("unknown config key `{other}`")),
        }
    }
    Ok(raw)
}

/// Merge flag values over file values.
pub fn merge(flags: RawConfig, file: RawConfig) -> RawConfig {
    RawConfig {
        problem: flags.problem.or(file.problem),
        scheme: flags.scheme.or(file.scheme),
        k: flags.k.or(file.k),
        n: flags.n.or(file.n),
        m: flags.m.or(file.m),
        cfl: flags.cfl.or(file.cfl),
        t_end: flags.t_end.or(file.t_end),
        euler_mode: flags.euler_mode.or(file.euler_mode),
        monotone_guard: flags.monotone_guard.or(file.monotone_guard),
        out: flags.out.or(file.out),
        resolutions: flags.resolutions.or(file.resolutions),
    }
}

pub fn parse_resolutions(s: &str) -> Result<Vec<usize>, String> {
    let list: Result<Vec<usize>, _> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect();
    let list = list.map_err(|_| format!("invalid resolution list `{s}`"))?;
    if list.is_empty() {
        return Err("resolution list is empty".into());
    }
    Ok(list)
}

/// Validate the merged bag into a full run configuration.
pub fn resolve(raw: RawConfig, needs_n: bool) -> Result<RunConfig, String> {
    let problem_name = raw.problem.ok_or("missing --problem")?;
    let problem =
        Problem::parse(&problem_name).ok_or_else(|| format!("unknown problem `{problem_name}`"))?;
    let scheme_name = raw.scheme.ok_or("missing --scheme")?;
    let scheme =
        Scheme::parse(&scheme_name).ok_or_else(|| format!("unknown scheme `{scheme_name}`"))?;
    let k = raw.k.unwrap_or(2);
    if k != 2 && k != 3 {
        return Err(format!("k must be 2 or 3, got {k}"));
    }
    let n = match raw.n {
        Some(n) if n > 0 => n,
        Some(_) => return Err("n must be positive".into()),
        None if needs_n => return Err("missing --n".into()),
        None => 0,
    };
    let m = match raw.m {
        Some(m) if m > 0 => m,
        Some(_) => return Err("m must be positive".into()),
        None => n / 4, // double Mach reflection keeps a 4:1 aspect
    };
    let cfl = raw.cfl.unwrap_or(harness::DEFAULT_CFL);
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(format!("cfl must be in (0, 1], got {cfl}"));
    }
    let t_end = raw.t_end.unwrap_or_else(|| problem.default_t_end());
    if !(t_end >= 0.0) {
        return Err(format!("t_end must be nonnegative, got {t_end}"));
    }
    let euler_mode = match raw.euler_mode.as_deref() {
        None => EulerMode::Characteristic,
        Some(s) => EulerMode::parse(s).ok_or_else(|| format!("unknown euler mode `{s}`"))?,
    };
    let monotone_guard = match raw.monotone_guard.as_deref() {
        None | Some("auto") => harness::default_guard(problem, k),
        Some("on") => true,
        Some("off") => false,
        Some(s) => return Err(format!("monotone guard must be auto|on|off, got `{s}`")),
    };
    let out = raw.out.unwrap_or_else(|| PathBuf::from("."));
    let resolutions = match raw.resolutions {
        Some(s) => parse_resolutions(&s)?,
        None => harness::TABLE_RESOLUTIONS.to_vec(),
    };
    Ok(RunConfig {
        problem,
        scheme,
        k,
        n,
        m,
        cfl,
        t_end,
        euler_mode,
        monotone_guard,
        out,
        resolutions,
    })
}
