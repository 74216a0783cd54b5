//! Diagnostics CSV emission, binary state snapshots, the Green-set cache, and
//! the file-backed simulation runner.
//!
//! Snapshot layout: magic `FCEU`, version u32, N u32, then the three
//! orientation fields u_yz, u_zx, u_xy, each N³ little-endian f64 in
//! x-fastest order.  Round-trips are bit-exact.
//!
//! Green-set cache layout: magic `FCGR`, version u32, N u32, then for each
//! axis x, y, z the three orientation fields of π((axis)_0), each N³
//! little-endian f64 in x-fastest order.

use crate::chain::Chain2;
use crate::config::{render_config, ScalarMode, SimConfig};
use crate::error::Error;
use crate::hodge::{build_green_set, GreenSet, PoissonRoute};
use crate::lattice::Lattice;
use crate::sim::{self, Diagnostics, FluidState};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

const SNAPSHOT_MAGIC: &[u8; 4] = b"FCEU";
const GREEN_MAGIC: &[u8; 4] = b"FCGR";
const FORMAT_VERSION: u32 = 1;

pub const DIAG_HEADER: &str = "step,time,energy,helicity,rhs_energy_residual,rhs_helicity_residual";

/// One CSV row, full 17-significant-digit decimals.
pub fn diag_row(d: &Diagnostics) -> String {
    format!(
        "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
        d.step, d.time, d.energy, d.helicity, d.rhs_energy_residual, d.rhs_helicity_residual
    )
}

/// CSV writer that emits the header once.
pub struct DiagWriter<W: Write> {
    out: W,
    wrote_header: bool,
}

impl<W: Write> DiagWriter<W> {
    pub fn new(out: W) -> Self {
        DiagWriter { out, wrote_header: false }
    }

    pub fn write(&mut self, d: &Diagnostics) -> Result<(), Error> {
        if !self.wrote_header {
            writeln!(self.out, "{DIAG_HEADER}")?;
            self.wrote_header = true;
        }
        writeln!(self.out, "{}", diag_row(d))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), Error> {
        self.out.flush()?;
        Ok(())
    }
}

fn write_fields(w: &mut impl Write, fields: &[&crate::lattice::Field<f64>]) -> Result<(), Error> {
    for f in fields {
        for v in f.as_slice() {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_header(r: &mut impl Read, magic: &[u8; 4], what: &str) -> Result<usize, Error> {
    let mut m = [0u8; 4];
    r.read_exact(&mut m)?;
    if &m != magic {
        return Err(Error::SnapshotFormat(format!("bad {what} magic {m:?}")));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != FORMAT_VERSION {
        return Err(Error::SnapshotFormat(format!("unsupported {what} version {version}")));
    }
    r.read_exact(&mut b4)?;
    Ok(u32::from_le_bytes(b4) as usize)
}

pub fn write_snapshot(path: &Path, x: &Chain2<f64>) -> Result<(), Error> {
    let lat = x.lattice();
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(SNAPSHOT_MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(lat.n() as u32).to_le_bytes())?;
    write_fields(&mut w, &[&x.u[0], &x.u[1], &x.u[2]])?;
    w.flush()?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<Chain2<f64>, Error> {
    let mut r = BufReader::new(File::open(path)?);
    let n = read_header(&mut r, SNAPSHOT_MAGIC, "snapshot")?;
    let lat = Lattice::new(n).map_err(|_| Error::SnapshotFormat(format!("bad period {n}")))?;
    let mut x = Chain2::zeros(lat);
    let mut b8 = [0u8; 8];
    for pl in 0..3 {
        for v in x.u[pl].as_mut_slice() {
            r.read_exact(&mut b8)?;
            *v = f64::from_le_bytes(b8);
        }
    }
    let mut rest = Vec::new();
    r.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::SnapshotFormat(format!("{} trailing bytes", rest.len())));
    }
    Ok(x)
}

pub fn write_green_cache(path: &Path, green: &GreenSet) -> Result<(), Error> {
    let lat = green.lattice();
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(GREEN_MAGIC)?;
    w.write_all(&FORMAT_VERSION.to_le_bytes())?;
    w.write_all(&(lat.n() as u32).to_le_bytes())?;
    for ax in 0..3 {
        write_fields(&mut w, &[&green.g[ax].u[0], &green.g[ax].u[1], &green.g[ax].u[2]])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_green_cache(path: &Path) -> Result<GreenSet, Error> {
    let mut r = BufReader::new(File::open(path)?);
    let n = read_header(&mut r, GREEN_MAGIC, "green cache")
        .map_err(|e| Error::GreenCacheFormat(e.to_string()))?;
    let lat = Lattice::new(n).map_err(|_| Error::GreenCacheFormat(format!("bad period {n}")))?;
    let mut g = [Chain2::zeros(lat), Chain2::zeros(lat), Chain2::zeros(lat)];
    let mut b8 = [0u8; 8];
    for item in g.iter_mut() {
        for pl in 0..3 {
            for v in item.u[pl].as_mut_slice() {
                r.read_exact(&mut b8)?;
                *v = f64::from_le_bytes(b8);
            }
        }
    }
    Ok(GreenSet::from_fields(lat, g))
}

/// Outcome of a file-backed run.
pub struct RunSummary {
    pub final_state: FluidState,
    pub diag_path: PathBuf,
    pub snapshots: Vec<PathBuf>,
}

/// Run a configured simulation, writing `diag.csv`, scheduled snapshots, and
/// a `config.txt` replica into `cfg.out_dir`.  Deterministic for a fixed
/// config: identical bytes on reruns.
pub fn run_to_dir(cfg: &SimConfig, green: Option<&GreenSet>) -> Result<RunSummary, Error> {
    if cfg.scalar_mode == ScalarMode::Rational {
        return Err(Error::Config {
            key: "scalar_mode".into(),
            msg: "rational mode backs the algebra tests and `check`; the time loop is float-only".into(),
        });
    }
    let lat = Lattice::new(cfg.n)?;
    let built;
    let green = match green {
        Some(g) => g,
        None => {
            built = build_green_set(lat, PoissonRoute::ConjugateGradient)?;
            &built
        }
    };
    std::fs::create_dir_all(&cfg.out_dir)?;
    std::fs::write(cfg.out_dir.join("config.txt"), render_config(cfg))?;
    let diag_path = cfg.out_dir.join("diag.csv");
    let mut diag = DiagWriter::new(BufWriter::new(File::create(&diag_path)?));
    let mut snapshots = Vec::new();

    let mut state = sim::init_state(&cfg.init, cfg.seed, lat)?;
    diag.write(&sim::diagnostics(0, &state, green)?)?;
    for step in 1..=cfg.steps {
        state = sim::step(cfg, &state, green)
            .map_err(|e| Error::StepFailed { step, source: Box::new(e) })?;
        if step % cfg.diag_every == 0 {
            diag.write(&sim::diagnostics(step, &state, green)?)?;
        }
        if cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 {
            let p = cfg.out_dir.join(format!("snapshot_{step:08}.bin"));
            write_snapshot(&p, &state.x)?;
            snapshots.push(p);
        }
    }
    diag.finish()?;
    Ok(RunSummary { final_state: state, diag_path, snapshots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::InitRecipe;
    use crate::sim::init_state;

    #[test]
    fn snapshot_round_trip_is_bit_exact() {
        let lat = Lattice::new(5).unwrap();
        let s = init_state(&InitRecipe::Random, 99, lat).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.bin");
        write_snapshot(&p, &s.x).unwrap();
        let back = read_snapshot(&p).unwrap();
        for pl in 0..3 {
            for (a, b) in s.x.u[pl].as_slice().iter().zip(back.u[pl].as_slice()) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn snapshot_rejects_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.bin");
        std::fs::write(&p, b"NOPE").unwrap();
        assert!(read_snapshot(&p).is_err());
    }

    #[test]
    fn green_cache_round_trip() {
        let lat = Lattice::new(3).unwrap();
        let g = build_green_set(lat, PoissonRoute::ConjugateGradient).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("green.bin");
        write_green_cache(&p, &g).unwrap();
        let back = read_green_cache(&p).unwrap();
        for ax in 0..3 {
            for pl in 0..3 {
                for (a, b) in g.g[ax].u[pl].as_slice().iter().zip(back.g[ax].u[pl].as_slice()) {
                    assert_eq!(a.to_bits(), b.to_bits());
                }
            }
        }
    }

    #[test]
    fn zero_steps_emits_initial_diagnostics_only() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SimConfig {
            n: 3,
            steps: 0,
            out_dir: dir.path().to_path_buf(),
            ..SimConfig::default()
        };
        let summary = run_to_dir(&cfg, None).unwrap();
        let text = std::fs::read_to_string(summary.diag_path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], DIAG_HEADER);
        assert!(lines[1].starts_with("0,"));
        assert!(summary.snapshots.is_empty());
    }

    #[test]
    fn csv_has_17_significant_digits() {
        let d = Diagnostics {
            step: 3,
            time: 0.003,
            energy: 1.0 / 3.0,
            helicity: -2.0e-11,
            rhs_energy_residual: 0.0,
            rhs_helicity_residual: 1.5,
        };
        let row = diag_row(&d);
        assert!(row.starts_with("3,3.0000000000000001e-3,3.3333333333333331e-1,"), "{row}");
    }
}
