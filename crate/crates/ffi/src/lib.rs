//! C ABI over the lattice Euler simulator: an opaque simulation handle with
//! status-code returns, suitable for binding from other languages.  The
//! generated header lands in `include/lattice_euler.h`.

use lattice_euler::config::{InitRecipe, Integrator, SimConfig};
use lattice_euler::hodge::{build_green_set, GreenSet, PoissonRoute};
use lattice_euler::sim::{self, FluidState};
use lattice_euler::{Error, Lattice};
use std::ffi::{c_char, CStr};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(PartialEq, Eq, Clone, Copy, Debug)]
pub enum LeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    IntegratorFailure = 3,
    SolverFailure = 4,
}

/// Square orientations for field access.
#[repr(C)]
#[derive(Clone, Copy)]
pub enum LePlane {
    Yz = 0,
    Zx = 1,
    Xy = 2,
}

/// Opaque simulation handle.
pub struct LeSim {
    cfg: SimConfig,
    green: GreenSet,
    state: FluidState,
    step: u64,
}

fn status_of(e: &Error) -> LeStatus {
    match e {
        Error::MidpointDiverged { .. } => LeStatus::IntegratorFailure,
        Error::CgDiverged { .. } | Error::PoissonUnsolvable { .. } => LeStatus::SolverFailure,
        _ => LeStatus::InvalidArgument,
    }
}

/// Create a simulation. `integrator`: 0 = euler, 1 = rk4, 2 = midpoint.
/// `init` is a recipe string (`random`, `taylor_green`,
/// `single_mode:kx,ky,kz,plane`).  On success writes the handle to `out`.
///
/// # Safety
/// `init` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn le_sim_new(
    n: usize,
    dt: f64,
    seed: u64,
    integrator: u32,
    midpoint_tol: f64,
    init: *const c_char,
    out: *mut *mut LeSim,
) -> LeStatus {
    if out.is_null() || init.is_null() {
        return LeStatus::NullPointer;
    }
    let init_str = match CStr::from_ptr(init).to_str() {
        Ok(s) => s,
        Err(_) => return LeStatus::InvalidArgument,
    };
    let recipe = match InitRecipe::parse(init_str) {
        Ok(r) => r,
        Err(_) => return LeStatus::InvalidArgument,
    };
    let integrator = match integrator {
        0 => Integrator::Euler,
        1 => Integrator::Rk4,
        2 => Integrator::Midpoint,
        _ => return LeStatus::InvalidArgument,
    };
    if !(dt > 0.0) || !(midpoint_tol > 0.0) {
        return LeStatus::InvalidArgument;
    }
    let lat = match Lattice::new(n) {
        Ok(l) => l,
        Err(_) => return LeStatus::InvalidArgument,
    };
    let green = match build_green_set(lat, PoissonRoute::ConjugateGradient) {
        Ok(g) => g,
        Err(e) => return status_of(&e),
    };
    let state = match sim::init_state(&recipe, seed, lat) {
        Ok(s) => s,
        Err(e) => return status_of(&e),
    };
    let cfg = SimConfig { n, dt, integrator, midpoint_tol, seed, init: recipe, ..SimConfig::default() };
    let sim = Box::new(LeSim { cfg, green, state, step: 0 });
    *out = Box::into_raw(sim);
    LeStatus::Ok
}

/// Advance the simulation by `steps` time steps.
///
/// # Safety
/// `sim` must be a live handle from `le_sim_new`.
#[no_mangle]
pub unsafe extern "C" fn le_sim_step(sim: *mut LeSim, steps: u64) -> LeStatus {
    let Some(sim) = sim.as_mut() else {
        return LeStatus::NullPointer;
    };
    for _ in 0..steps {
        match sim::step(&sim.cfg, &sim.state, &sim.green) {
            Ok(s) => sim.state = s,
            Err(e) => return status_of(&e),
        }
        sim.step += 1;
    }
    LeStatus::Ok
}

/// Current simulation time.
///
/// # Safety
/// `sim` live handle; `t` valid pointer.
#[no_mangle]
pub unsafe extern "C" fn le_sim_time(sim: *const LeSim, t: *mut f64) -> LeStatus {
    let (Some(sim), false) = (sim.as_ref(), t.is_null()) else {
        return LeStatus::NullPointer;
    };
    *t = sim.state.t;
    LeStatus::Ok
}

/// Energy, helicity and conservation residuals of the current state, written
/// to a 4-element array [energy, helicity, (rhs,X), (rhs,DX)].
///
/// # Safety
/// `sim` live handle; `out4` valid for 4 writes.
#[no_mangle]
pub unsafe extern "C" fn le_sim_diagnostics(sim: *const LeSim, out4: *mut f64) -> LeStatus {
    let (Some(sim), false) = (sim.as_ref(), out4.is_null()) else {
        return LeStatus::NullPointer;
    };
    match sim::diagnostics(sim.step, &sim.state, &sim.green) {
        Ok(d) => {
            let out = std::slice::from_raw_parts_mut(out4, 4);
            out[0] = d.energy;
            out[1] = d.helicity;
            out[2] = d.rhs_energy_residual;
            out[3] = d.rhs_helicity_residual;
            LeStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Copy one orientation field of the state (N³ doubles, x-fastest) into `buf`.
///
/// # Safety
/// `sim` live handle; `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn le_sim_field(
    sim: *const LeSim,
    plane: LePlane,
    buf: *mut f64,
    len: usize,
) -> LeStatus {
    let (Some(sim), false) = (sim.as_ref(), buf.is_null()) else {
        return LeStatus::NullPointer;
    };
    let src = sim.state.x.u[plane as usize].as_slice();
    if len < src.len() {
        return LeStatus::InvalidArgument;
    }
    std::slice::from_raw_parts_mut(buf, src.len()).copy_from_slice(src);
    LeStatus::Ok
}

/// Lattice period of the handle.
///
/// # Safety
/// `sim` live handle; `n` valid pointer.
#[no_mangle]
pub unsafe extern "C" fn le_sim_period(sim: *const LeSim, n: *mut usize) -> LeStatus {
    let (Some(sim), false) = (sim.as_ref(), n.is_null()) else {
        return LeStatus::NullPointer;
    };
    *n = sim.cfg.n;
    LeStatus::Ok
}

/// Destroy a handle.  A null pointer is a no-op.
///
/// # Safety
/// `sim` must be null or a handle not previously freed.
#[no_mangle]
pub unsafe extern "C" fn le_sim_free(sim: *mut LeSim) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}
