//! Resolution of global options against an optional flat config file, plus
//! the loaders that turn manifest entries into library objects.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chancap::channels::{factory, QuantumOperation};
use chancap::linops::io::OperatorJson;
use chancap::linops::matrix::CMat;
use chancap::linops::{random, State};
use chancap::roof::OptimizerConfig;

use crate::cli::{Common, Format};
use crate::error::{CliError, CliResult};
use crate::manifest::{Budget, ChannelSpec};

/// Fully resolved global options (CLI flag, else config entry, else default).
#[derive(Debug, Clone)]
pub struct Context {
    pub seed: u64,
    pub dim: usize,
    pub restarts: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub members: Option<usize>,
    pub bits: bool,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Context {
    pub fn resolve(common: &Common) -> CliResult<Self> {
        let config = match &common.config {
            Some(path) => parse_config(path)?,
            None => BTreeMap::new(),
        };
        let lookup = |key: &str| config.get(key).cloned();
        let parse_num = |key: &str, text: String| {
            text.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("config key {key} is not a number: {text}")))
        };

        let mut ctx = Context {
            seed: 0,
            dim: 2,
            restarts: 32,
            tol: 1e-6,
            max_iters: 0,
            members: None,
            bits: false,
            out: None,
            format: Format::Json,
        };
        if let Some(v) = lookup("seed") {
            ctx.seed = parse_num("seed", v)? as u64;
        }
        if let Some(v) = lookup("dim") {
            ctx.dim = parse_num("dim", v)? as usize;
        }
        if let Some(v) = lookup("restarts") {
            ctx.restarts = parse_num("restarts", v)? as usize;
        }
        if let Some(v) = lookup("tol") {
            ctx.tol = parse_num("tol", v)?;
        }
        if let Some(v) = lookup("max-iters") {
            ctx.max_iters = parse_num("max-iters", v)? as usize;
        }
        if let Some(v) = lookup("members") {
            ctx.members = Some(parse_num("members", v)? as usize);
        }
        if let Some(v) = lookup("bits") {
            ctx.bits = v == "true" || v == "1";
        }
        if let Some(v) = lookup("out") {
            ctx.out = Some(PathBuf::from(v));
        }
        if let Some(v) = lookup("format") {
            ctx.format = match v.as_str() {
                "json" => Format::Json,
                "csv" => Format::Csv,
                other => return Err(CliError::Usage(format!("unknown format {other}"))),
            };
        }

        // CLI flags win
        if let Some(s) = common.seed {
            ctx.seed = s;
        }
        if let Some(d) = common.dim {
            ctx.dim = d;
        }
        if let Some(r) = common.restarts {
            ctx.restarts = r;
        }
        if let Some(t) = common.tol {
            ctx.tol = t;
        }
        if let Some(m) = common.max_iters {
            ctx.max_iters = m;
        }
        if let Some(m) = common.members {
            ctx.members = Some(m);
        }
        if common.bits {
            ctx.bits = true;
        }
        if let Some(o) = &common.out {
            ctx.out = Some(o.clone());
        }
        if let Some(f) = common.format {
            ctx.format = f;
        }
        if ctx.dim < 2 {
            return Err(CliError::Usage("dimension must be at least 2".into()));
        }
        Ok(ctx)
    }

    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            max_iters: self.max_iters,
            tol: self.tol,
            seed: self.seed,
        }
    }

    pub fn budget(&self) -> Budget {
        Budget {
            restarts: self.restarts,
            tol: self.tol,
            max_iters: self.max_iters,
        }
    }

    /// Entropic value in the display unit.
    pub fn unit(&self, nats: f64) -> f64 {
        if self.bits {
            nats / std::f64::consts::LN_2
        } else {
            nats
        }
    }
}

/// Flat `key = value` configuration lines; `#` starts a comment.
fn parse_config(path: &Path) -> CliResult<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {} is not key = value", i + 1))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

/// Instantiate the channel named by a spec at the given input dimension.
pub fn build_channel(spec: &ChannelSpec, dim: usize, seed: u64) -> CliResult<QuantumOperation> {
    let op = match spec.factory.as_str() {
        "identity" => factory::identity(dim),
        "depolarizing" => factory::depolarizing(dim, spec.params[0])?,
        "amplitude-damping" => {
            require_dim(dim, 2, "amplitude-damping")?;
            factory::amplitude_damping(spec.params[0])?
        }
        "dephasing" => {
            require_dim(dim, 2, "dephasing")?;
            factory::dephasing(spec.params[0])?
        }
        "random" => {
            let kraus = spec.params[0] as usize;
            if kraus == 0 {
                return Err(CliError::Usage("random channel needs kraus count >= 1".into()));
            }
            let mut rng = random::rng_for(seed, 0xc4a7);
            factory::random_channel(&mut rng, dim, dim, kraus)
        }
        "measure-prepare" => match &spec.file {
            Some(path) => load_measure_prepare(Path::new(path))?,
            None => {
                let mut rng = random::rng_for(seed, 0xc4a8);
                factory::random_measure_prepare(&mut rng, dim)
            }
        },
        "complementary-measure-prepare" => {
            let mut rng = random::rng_for(seed, 0xc4a8);
            factory::random_measure_prepare(&mut rng, dim).complementary()
        }
        "file" => {
            let path = spec.file.as_ref().expect("checked at parse");
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {path}: {e}")))?;
            serde_json::from_str::<QuantumOperation>(&text)
                .map_err(|e| CliError::Validation(format!("bad operation file {path}: {e}")))?
        }
        other => return Err(CliError::Usage(format!("unknown channel factory '{other}'"))),
    };
    if spec.factory != "file" && op.dim_in() != dim {
        return Err(CliError::Validation(format!(
            "channel input dimension {} does not match --dim {dim}",
            op.dim_in()
        )));
    }
    Ok(op)
}

fn require_dim(dim: usize, expected: usize, what: &str) -> CliResult<()> {
    if dim != expected {
        return Err(CliError::Usage(format!(
            "{what} is a dimension-{expected} factory, got --dim {dim}"
        )));
    }
    Ok(())
}

#[derive(serde::Deserialize)]
struct MeasurePrepareJson {
    pairs: Vec<(OperatorJson, OperatorJson)>,
}

fn load_measure_prepare(path: &Path) -> CliResult<QuantumOperation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let parsed: MeasurePrepareJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("bad measure-prepare file: {e}")))?;
    let pairs = parsed
        .pairs
        .iter()
        .map(|(m, s)| -> CliResult<(CMat, State)> {
            Ok((m.to_matrix()?, State::new(s.to_matrix()?)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(factory::measure_prepare(&pairs)?)
}

/// Input state: a file when given, otherwise a seeded random full-rank state.
pub fn load_state(path: Option<&Path>, dim: usize, seed: u64) -> CliResult<(State, String)> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", p.display())))?;
            let state: State = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("bad state file: {e}")))?;
            if state.dim() != dim {
                return Err(CliError::Validation(format!(
                    "state dimension {} does not match --dim {dim}",
                    state.dim()
                )));
            }
            Ok((state, p.display().to_string()))
        }
        None => {
            let mut rng = random::rng_for(seed, 0x57a7e);
            Ok((
                State::new(random::random_full_rank_density(&mut rng, dim))
                    .map_err(CliError::from)?,
                "seeded-random".to_string(),
            ))
        }
    }
}

/// Hamiltonian: a file when given, otherwise the diagonal ladder 0..d-1.
pub fn load_hamiltonian(path: Option<&Path>, dim: usize) -> CliResult<(CMat, String)> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", p.display())))?;
            let op: OperatorJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("bad operator file: {e}")))?;
            let m = op.to_matrix()?;
            if m.nrows() != dim {
                return Err(CliError::Validation(format!(
                    "Hamiltonian dimension {} does not match --dim {dim}",
                    m.nrows()
                )));
            }
            Ok((m, p.display().to_string()))
        }
        None => {
            let m = CMat::from_fn(dim, dim, |i, j| {
                if i == j {
                    chancap::linops::matrix::cr(i as f64)
                } else {
                    chancap::linops::matrix::czero()
                }
            });
            Ok((m, "ladder".to_string()))
        }
    }
}

