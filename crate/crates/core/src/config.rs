//! Run configuration: a plain-text `key = value` file with command-line
//! overrides.  Unknown keys are errors; enumerations are validated at parse
//! time; even periods are rejected because the construction needs odd N.

use crate::error::Error;
use crate::lattice::Plane;
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Integrator {
    Euler,
    Rk4,
    Midpoint,
}

impl Integrator {
    pub fn parse(s: &str) -> Option<Integrator> {
        match s {
            "euler" => Some(Integrator::Euler),
            "rk4" => Some(Integrator::Rk4),
            "midpoint" => Some(Integrator::Midpoint),
            _ => None,
        }
    }
    pub fn name(&self) -> &'static str {
        match self {
            Integrator::Euler => "euler",
            Integrator::Rk4 => "rk4",
            Integrator::Midpoint => "midpoint",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarMode {
    Float,
    /// Exact rational arithmetic; supported by the algebra layer and the
    /// `check` property suite, not by the time loop.
    Rational,
}

#[derive(Clone, PartialEq, Debug)]
pub enum InitRecipe {
    Random,
    /// One Fourier mode injected into the generator's given orientation.
    SingleMode { k: [i64; 3], orientation: Plane },
    TaylorGreen,
}

impl InitRecipe {
    pub fn parse(s: &str) -> Result<InitRecipe, String> {
        if s == "random" {
            return Ok(InitRecipe::Random);
        }
        if s == "taylor_green" {
            return Ok(InitRecipe::TaylorGreen);
        }
        if let Some(rest) = s.strip_prefix("single_mode:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 4 {
                return Err("single_mode takes kx,ky,kz,orientation".into());
            }
            let mut k = [0i64; 3];
            for (i, p) in parts[..3].iter().enumerate() {
                k[i] = p.trim().parse().map_err(|_| format!("bad wavevector component `{p}`"))?;
            }
            let orientation = match parts[3].trim() {
                "yz" => Plane::Yz,
                "zx" => Plane::Zx,
                "xy" => Plane::Xy,
                other => return Err(format!("bad orientation `{other}` (yz|zx|xy)")),
            };
            return Ok(InitRecipe::SingleMode { k, orientation });
        }
        Err(format!("unknown init recipe `{s}` (random|taylor_green|single_mode:kx,ky,kz,plane)"))
    }

    pub fn describe(&self) -> String {
        match self {
            InitRecipe::Random => "random".into(),
            InitRecipe::TaylorGreen => "taylor_green".into(),
            InitRecipe::SingleMode { k, orientation } => {
                let o = match orientation {
                    Plane::Yz => "yz",
                    Plane::Zx => "zx",
                    Plane::Xy => "xy",
                };
                format!("single_mode:{},{},{},{}", k[0], k[1], k[2], o)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub n: usize,
    pub dt: f64,
    pub steps: u64,
    pub integrator: Integrator,
    pub midpoint_tol: f64,
    pub seed: u64,
    pub init: InitRecipe,
    pub diag_every: u64,
    pub snapshot_every: u64,
    pub out_dir: PathBuf,
    pub scalar_mode: ScalarMode,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 5,
            dt: 1e-3,
            steps: 0,
            integrator: Integrator::Rk4,
            midpoint_tol: 1e-10,
            seed: 42,
            init: InitRecipe::Random,
            diag_every: 1,
            snapshot_every: 0,
            out_dir: PathBuf::from("."),
            scalar_mode: ScalarMode::Float,
        }
    }
}

impl SimConfig {
    fn apply(&mut self, key: &str, value: &str) -> Result<(), Error> {
        let bad = |msg: String| Error::Config { key: key.to_string(), msg };
        match key {
            "N" => {
                let n: usize = value.parse().map_err(|_| bad(format!("not an integer: `{value}`")))?;
                if n % 2 == 0 {
                    return Err(bad(format!("N must be odd (got {n}); the 2h-stick basis only spans the h-stick space for odd periods")));
                }
                if n < 3 {
                    return Err(bad(format!("N must be at least 3 (got {n})")));
                }
                self.n = n;
            }
            "dt" => {
                let dt: f64 = value.parse().map_err(|_| bad(format!("not a number: `{value}`")))?;
                if !(dt > 0.0) {
                    return Err(bad(format!("dt must be positive (got {dt})")));
                }
                self.dt = dt;
            }
            "steps" => {
                self.steps = value.parse().map_err(|_| bad(format!("not an integer: `{value}`")))?;
            }
            "integrator" => {
                self.integrator = Integrator::parse(value)
                    .ok_or_else(|| bad(format!("unknown integrator `{value}` (euler|rk4|midpoint)")))?;
            }
            "midpoint_tol" => {
                let t: f64 = value.parse().map_err(|_| bad(format!("not a number: `{value}`")))?;
                if !(t > 0.0) {
                    return Err(bad(format!("midpoint_tol must be positive (got {t})")));
                }
                self.midpoint_tol = t;
            }
            "seed" => {
                self.seed = value.parse().map_err(|_| bad(format!("not an integer: `{value}`")))?;
            }
            "init" => {
                self.init = InitRecipe::parse(value).map_err(bad)?;
            }
            "diag_every" => {
                let v: u64 = value.parse().map_err(|_| bad(format!("not an integer: `{value}`")))?;
                if v == 0 {
                    return Err(bad("diag_every must be positive".into()));
                }
                self.diag_every = v;
            }
            "snapshot_every" => {
                self.snapshot_every = value.parse().map_err(|_| bad(format!("not an integer: `{value}`")))?;
            }
            "out_dir" => {
                self.out_dir = PathBuf::from(value);
            }
            "scalar_mode" => {
                self.scalar_mode = match value {
                    "float" => ScalarMode::Float,
                    "rational" => ScalarMode::Rational,
                    other => return Err(bad(format!("unknown scalar_mode `{other}` (float|rational)"))),
                };
            }
            _ => return Err(Error::UnknownKey { key: key.to_string() }),
        }
        Ok(())
    }
}

/// Parse a config file (may be absent) and apply `key=value` overrides in
/// order.  Override syntax matches the file: `N=7` or `("dt", "0.01")` pairs
/// collected from `--key value` flags by the CLI.
pub fn parse_config(file: Option<&Path>, overrides: &[(String, String)]) -> Result<SimConfig, Error> {
    let mut cfg = SimConfig::default();
    if let Some(path) = file {
        let text = std::fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                key: format!("line {}", lineno + 1),
                msg: format!("expected `key = value`, got `{raw}`"),
            })?;
            cfg.apply(key.trim(), value.trim())?;
        }
    }
    for (key, value) in overrides {
        cfg.apply(key, value)?;
    }
    Ok(cfg)
}

/// Canonical serialization, written next to run outputs for reproducibility.
pub fn render_config(cfg: &SimConfig) -> String {
    let mode = match cfg.scalar_mode {
        ScalarMode::Float => "float",
        ScalarMode::Rational => "rational",
    };
    format!(
        "N = {}\ndt = {}\nsteps = {}\nintegrator = {}\nmidpoint_tol = {}\nseed = {}\ninit = {}\ndiag_every = {}\nsnapshot_every = {}\nout_dir = {}\nscalar_mode = {}\n",
        cfg.n,
        cfg.dt,
        cfg.steps,
        cfg.integrator.name(),
        cfg.midpoint_tol,
        cfg.seed,
        cfg.init.describe(),
        cfg.diag_every,
        cfg.snapshot_every,
        cfg.out_dir.display(),
        mode,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_a_valid_file() {
        let f = write_tmp("N = 5\ndt = 0.001\nsteps = 100\nintegrator = rk4\n");
        let cfg = parse_config(Some(f.path()), &[]).unwrap();
        assert_eq!(cfg.n, 5);
        assert_eq!(cfg.dt, 0.001);
        assert_eq!(cfg.steps, 100);
        assert_eq!(cfg.integrator, Integrator::Rk4);
    }

    #[test]
    fn rejects_even_n() {
        let f = write_tmp("N = 4\n");
        let err = parse_config(Some(f.path()), &[]).unwrap_err();
        assert!(err.to_string().contains("odd"), "{err}");
    }

    #[test]
    fn overrides_win() {
        let f = write_tmp("N = 5\ndt = 0.001\n");
        let cfg = parse_config(Some(f.path()), &[("dt".into(), "0.01".into())]).unwrap();
        assert_eq!(cfg.dt, 0.01);
    }

    #[test]
    fn unknown_keys_are_errors() {
        let f = write_tmp("viscosity = 0.1\n");
        let err = parse_config(Some(f.path()), &[]).unwrap_err();
        assert!(matches!(err, Error::UnknownKey { .. }), "{err}");
    }

    #[test]
    fn malformed_values_name_the_key() {
        let f = write_tmp("dt = fast\n");
        let err = parse_config(Some(f.path()), &[]).unwrap_err();
        assert!(err.to_string().contains("dt"), "{err}");
    }

    #[test]
    fn init_recipes_parse() {
        assert_eq!(InitRecipe::parse("random").unwrap(), InitRecipe::Random);
        assert_eq!(InitRecipe::parse("taylor_green").unwrap(), InitRecipe::TaylorGreen);
        let sm = InitRecipe::parse("single_mode:1,2,0,xy").unwrap();
        assert_eq!(sm, InitRecipe::SingleMode { k: [1, 2, 0], orientation: Plane::Xy });
        assert!(InitRecipe::parse("vortex").is_err());
        let rt = InitRecipe::parse(&sm.describe()).unwrap();
        assert_eq!(rt, sm);
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let f = write_tmp("# a comment\n\nN = 7  # trailing\n");
        let cfg = parse_config(Some(f.path()), &[]).unwrap();
        assert_eq!(cfg.n, 7);
    }
}
