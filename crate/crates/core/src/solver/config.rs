//! Solver configuration and its flat `key=value` file format.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key {key:?} given twice")]
    Duplicate { line: usize, key: String },
    #[error("key {key:?}: cannot parse {value:?}")]
    Value { key: String, value: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error("cannot read config file: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ImexEuler,
    Picard,
}

impl FromStr for Scheme {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "imex_euler" => Ok(Scheme::ImexEuler),
            "picard" => Ok(Scheme::Picard),
            _ => Err(()),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::ImexEuler => "imex_euler",
            Scheme::Picard => "picard",
        })
    }
}

/// Initial-data recipe.
#[derive(Debug, Clone, PartialEq)]
pub enum InitKind {
    /// Seeded random phases with algebraic amplitude decay
    /// `⟨η⟩^{-decay_x}(1+|α|)^{-decay_v}`, Hermitian in `η`.
    Rough,
    /// A single basis element `Φ_α` placed in mode `η` (and its mirror).
    Basis { alpha: [usize; 3], eta: Vec<i64> },
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Hermite degree cap.
    pub n: usize,
    /// Fourier cutoff per axis.
    pub k: usize,
    /// Spatial dimension, 0 for the homogeneous problem.
    pub d_x: usize,
    pub dt: f64,
    /// Final time.
    pub t_final: f64,
    /// Sobolev exponent of the `H^r_x(L²_v)` norm.
    pub r: f64,
    pub scheme: Scheme,
    pub picard_tol: f64,
    pub picard_max_iter: usize,
    /// Weight strength used by diagnostics.
    pub c0: f64,
    pub seed: u64,
    pub init: InitKind,
    /// `H^r_x(L²_v)` norm of the initial datum (ignored for `Basis`, which
    /// uses it as the coefficient).
    pub amplitude: f64,
    pub decay_x: f64,
    pub decay_v: f64,
    /// Include `Γ(g, g)`; when false the linear equation is solved.
    pub nonlinear: bool,
    /// Record spectra every this many steps.
    pub record_every: usize,
    /// Write a snapshot every this many steps (0 disables).
    pub snapshot_every: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n: 16,
            k: 8,
            d_x: 1,
            dt: 1e-3,
            t_final: 1.0,
            r: 2.0,
            scheme: Scheme::ImexEuler,
            picard_tol: 1e-10,
            picard_max_iter: 20,
            c0: 1.0 / 32.0,
            seed: 1,
            init: InitKind::Rough,
            amplitude: 1e-3,
            decay_x: 3.0,
            decay_v: 2.0,
            nonlinear: true,
            record_every: 50,
            snapshot_every: 0,
        }
    }
}

const KEYS: &[&str] = &[
    "N", "K", "d_x", "dt", "T", "r", "scheme", "picard_tol", "picard_max_iter", "c0", "seed", "init",
    "alpha", "eta", "amplitude", "decay_x", "decay_v", "nonlinear", "record_every", "snapshot_every",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Value {
        key: key.to_string(),
        value: value.to_string(),
    })
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(|s| parse(key, s.trim()))
        .collect()
}

impl SolverConfig {
    /// Parse the `key=value` format: one pair per line, `#` starts a comment,
    /// blank lines ignored, keys match the field names (`N`, `K`, `T`, …).
    pub fn parse_str(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = SolverConfig::default();
        let mut seen: Vec<String> = Vec::new();
        let mut init_name = None;
        let mut alpha = [0usize; 3];
        let mut eta: Option<Vec<i64>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                text: raw.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            }
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError::Duplicate {
                    line,
                    key: key.to_string(),
                });
            }
            seen.push(key.to_string());
            match key {
                "N" => cfg.n = parse(key, value)?,
                "K" => cfg.k = parse(key, value)?,
                "d_x" => cfg.d_x = parse(key, value)?,
                "dt" => cfg.dt = parse(key, value)?,
                "T" => cfg.t_final = parse(key, value)?,
                "r" => cfg.r = parse(key, value)?,
                "scheme" => cfg.scheme = parse(key, value)?,
                "picard_tol" => cfg.picard_tol = parse(key, value)?,
                "picard_max_iter" => cfg.picard_max_iter = parse(key, value)?,
                "c0" => cfg.c0 = parse(key, value)?,
                "seed" => cfg.seed = parse(key, value)?,
                "init" => init_name = Some(value.to_string()),
                "alpha" => {
                    let v: Vec<usize> = parse_list(key, value)?;
                    alpha = v.try_into().map_err(|_| ConfigError::Value {
                        key: key.to_string(),
                        value: value.to_string(),
                    })?;
                }
                "eta" => eta = Some(parse_list(key, value)?),
                "amplitude" => cfg.amplitude = parse(key, value)?,
                "decay_x" => cfg.decay_x = parse(key, value)?,
                "decay_v" => cfg.decay_v = parse(key, value)?,
                "nonlinear" => cfg.nonlinear = parse(key, value)?,
                "record_every" => cfg.record_every = parse(key, value)?,
                "snapshot_every" => cfg.snapshot_every = parse(key, value)?,
                _ => unreachable!("key list checked above"),
            }
        }
        cfg.init = match init_name.as_deref() {
            None | Some("rough") => InitKind::Rough,
            Some("zero") => InitKind::Zero,
            Some("basis") => InitKind::Basis {
                alpha,
                eta: eta.unwrap_or_else(|| vec![0; cfg.d_x]),
            },
            Some(other) => {
                return Err(ConfigError::Value {
                    key: "init".into(),
                    value: other.into(),
                })
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Render in the file format; `parse_str(to_config_string())` round-trips.
    pub fn to_config_string(&self) -> String {
        let mut s = format!(
            "N={}\nK={}\nd_x={}\ndt={}\nT={}\nr={}\nscheme={}\npicard_tol={}\npicard_max_iter={}\nc0={}\nseed={}\n",
            self.n, self.k, self.d_x, self.dt, self.t_final, self.r, self.scheme, self.picard_tol,
            self.picard_max_iter, self.c0, self.seed
        );
        match &self.init {
            InitKind::Rough => s.push_str("init=rough\n"),
            InitKind::Zero => s.push_str("init=zero\n"),
            InitKind::Basis { alpha, eta } => {
                s.push_str(&format!("init=basis\nalpha={},{},{}\n", alpha[0], alpha[1], alpha[2]));
                if !eta.is_empty() {
                    let e: Vec<String> = eta.iter().map(|v| v.to_string()).collect();
                    s.push_str(&format!("eta={}\n", e.join(",")));
                }
            }
        }
        s.push_str(&format!(
            "amplitude={}\ndecay_x={}\ndecay_v={}\nnonlinear={}\nrecord_every={}\nsnapshot_every={}\n",
            self.amplitude, self.decay_x, self.decay_v, self.nonlinear, self.record_every, self.snapshot_every
        ));
        s
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if !(self.r > 1.5) {
            return bad(format!("r must exceed 3/2, got {}", self.r));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if self.n < 4 {
            return bad(format!("N must be at least 4, got {}", self.n));
        }
        if self.d_x > 3 {
            return bad(format!("d_x must be 0..=3, got {}", self.d_x));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return bad(format!("T must be non-negative, got {}", self.t_final));
        }
        if !(self.picard_tol > 0.0) || self.picard_max_iter == 0 {
            return bad("picard_tol must be positive and picard_max_iter at least 1".into());
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return bad(format!("amplitude must be non-negative, got {}", self.amplitude));
        }
        if self.record_every == 0 {
            return bad("record_every must be at least 1".into());
        }
        if let InitKind::Basis { alpha, eta } = &self.init {
            if alpha.iter().sum::<usize>() > self.n {
                return bad(format!("alpha {alpha:?} exceeds N = {}", self.n));
            }
            if eta.len() != self.d_x || eta.iter().any(|e| e.unsigned_abs() as usize > self.k) {
                return bad(format!("eta {eta:?} is not a mode of the lattice"));
            }
        }
        Ok(())
    }

    /// Number of time steps, `round(T/dt)`.
    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        let text = "# desk run\nN = 12\nK=4\nd_x=1\ndt=0.002 # step\nT=0.5\nr=2.5\nscheme=picard\nseed=9\ninit=basis\nalpha=1,1,0\neta=2\n";
        let cfg = SolverConfig::parse_str(text).unwrap();
        assert_eq!(cfg.n, 12);
        assert_eq!(cfg.scheme, Scheme::Picard);
        assert_eq!(
            cfg.init,
            InitKind::Basis {
                alpha: [1, 1, 0],
                eta: vec![2]
            }
        );
        assert_eq!(SolverConfig::parse_str(&cfg.to_config_string()).unwrap(), cfg);
        assert_eq!(cfg.steps(), 250);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SolverConfig::parse_str("N"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(SolverConfig::parse_str("Q=1"), Err(ConfigError::UnknownKey { .. })));
        assert!(matches!(SolverConfig::parse_str("N=5\nN=6"), Err(ConfigError::Duplicate { line: 2, .. })));
        assert!(matches!(SolverConfig::parse_str("r=1.5"), Err(ConfigError::Invalid(_))));
        assert!(matches!(SolverConfig::parse_str("N=3"), Err(ConfigError::Invalid(_))));
        assert!(matches!(SolverConfig::parse_str("dt=0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(SolverConfig::parse_str("scheme=rk4"), Err(ConfigError::Value { .. })));
    }
}
