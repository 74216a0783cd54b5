//! The property suite behind the CLI `check` subcommand: algebra axioms in
//! exact rational arithmetic, spectral and solver cross-checks in floats.
//! Each check returns `Ok(summary)` or `Err(what failed)`.

use crate::chain::{Chain1, Chain2};
use crate::complex::{boundary1, boundary2, expand2h, square_basis, star2, unit_square};
use crate::config::InitRecipe;
use crate::hodge::{build_green_set, green_p_field, green_rhs, PoissonRoute};
use crate::intersection::{
    imap, intersect12, intersect22, linking, metric, metric_pairing_route, pair_stick_square,
    triple,
};
use crate::complex::laplacian;
use crate::lattice::Lattice;
use crate::linalg::{curl_rank, v_basis};
use crate::scalar::{Rational, Scalar, ScalarToF64};
use crate::sim::{init_state, rhs, v_membership_residual};
use crate::vorticity::{curl, nonlinear_generic, nonlinear_optimized};

pub type CheckResult = Result<String, String>;

/// Deterministic random rational 2-chain with small dyadic coefficients.
pub fn rand_rational_chain2(lat: Lattice, seed: u64) -> Chain2<Rational> {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0xdead_beef);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as i64
    };
    let mut x = Chain2::zeros(lat);
    for pl in 0..3 {
        for s in lat.sites() {
            let n = next().rem_euclid(13) - 6;
            let d = 1i64 << next().rem_euclid(3);
            x.u[pl].set(s, Rational::from_ratio(n, d));
        }
    }
    x
}

/// Graded product rule ∂(a⋔b) = ∂a⋔b − a⋔∂b over all ordered pairs of basis
/// squares, chain-level, exact.
pub fn check_product_rule(lat: Lattice) -> CheckResult {
    let basis = square_basis(lat);
    let chains: Vec<Chain2<Rational>> = basis.iter().map(|&(pl, s)| unit_square(lat, pl, s)).collect();
    let boundaries: Vec<Chain1<Rational>> =
        chains.iter().map(|a| expand2h(&boundary2(a))).collect();
    let mut pairs = 0usize;
    for (i, a) in chains.iter().enumerate() {
        for (j, b) in chains.iter().enumerate() {
            let lhs = boundary1(&intersect22(a, b));
            let mut rhs = intersect12(&boundaries[i], b);
            rhs.coeff.sub_field(&intersect12(&boundaries[j], a).coeff);
            if lhs != rhs {
                return Err(format!("product rule fails for basis pair ({i}, {j})"));
            }
            pairs += 1;
        }
    }
    Ok(format!("product rule exact on {pairs} ordered basis pairs (N={})", lat.n()))
}

/// ⟨a,b⟩ = ⟨b,a⟩ on random rational chains, exact.
pub fn check_linking_symmetry(lat: Lattice, count: usize) -> CheckResult {
    for seed in 0..count as u64 {
        let a = rand_rational_chain2(lat, 2 * seed);
        let b = rand_rational_chain2(lat, 2 * seed + 1);
        if linking(&a, &b) != linking(&b, &a) {
            return Err(format!("linking symmetry fails at seed {seed}"));
        }
    }
    Ok(format!("linking form symmetric on {count} random chain pairs"))
}

/// Full alternation of the triple bracket on random rational chains, exact.
pub fn check_triple_alternation(lat: Lattice, count: usize) -> CheckResult {
    for seed in 0..count as u64 {
        let a = rand_rational_chain2(lat, 3 * seed);
        let b = rand_rational_chain2(lat, 3 * seed + 1);
        let c = rand_rational_chain2(lat, 3 * seed + 2);
        let t = triple(&a, &b, &c);
        if triple(&a, &a, &b) != Rational::zero()
            || t != triple(&b, &a, &c).neg()
            || t != triple(&b, &c, &a)
            || t != triple(&a, &c, &b).neg()
        {
            return Err(format!("triple alternation fails at seed {seed}"));
        }
    }
    Ok(format!("triple bracket alternating on {count} random triples"))
}

/// Eigenvalues of the one-orientation Gram block are the triple products of
/// the 1-D profile 1 + cos(2πj/N); all positive.
pub fn check_metric_spectrum(lat: Lattice, tol: f64) -> CheckResult {
    let n = lat.n();
    let vol = lat.volume();
    let mut gram = nalgebra::DMatrix::<f64>::zeros(vol, vol);
    for s in lat.sites() {
        let i = lat.index(s);
        for dx in -1i64..=1 {
            for dy in -1i64..=1 {
                for dz in -1i64..=1 {
                    let j = lat.index(lat.shift(s, [dx, dy, dz]));
                    gram[(i, j)] += 0.5f64.powi((dx.abs() + dy.abs() + dz.abs()) as i32);
                }
            }
        }
    }
    let mut ev: Vec<f64> = gram.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut expect = Vec::with_capacity(vol);
    let one_d: Vec<f64> = (0..n)
        .map(|j| 1.0 + (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
        .collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                expect.push(one_d[a] * one_d[b] * one_d[c]);
            }
        }
    }
    expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut dev: f64 = 0.0;
    for (e, x) in ev.iter().zip(&expect) {
        dev = dev.max((e - x).abs());
    }
    if dev > tol {
        return Err(format!("spectrum deviates by {dev:.3e} (tol {tol:.0e})"));
    }
    if ev[0] <= 0.0 {
        return Err(format!("minimum eigenvalue {} not positive", ev[0]));
    }
    Ok(format!(
        "Gram spectrum matches the separable profile to {dev:.2e}; min eigenvalue {:.6}",
        ev[0]
    ))
}

/// Exact rank of the curl operator: 2(N³−1) (the Fourier symbol s(k)× has
/// rank 2 off the zero mode).
pub fn check_curl_rank(lat: Lattice) -> CheckResult {
    let r = curl_rank(lat);
    let expect = 2 * (lat.volume() - 1);
    if r != expect {
        return Err(format!("curl rank {r}, expected 2(N^3-1) = {expect}"));
    }
    Ok(format!("curl rank = {r} = 2(N^3-1) at N={}", lat.n()))
}

/// Generic and optimized nonlinear paths agree exactly over rationals.
pub fn check_rhs_paths_exact(lat: Lattice, count: usize) -> CheckResult {
    for seed in 0..count as u64 {
        let x = rand_rational_chain2(lat, 71 + seed);
        if nonlinear_generic(&x) != nonlinear_optimized(&x) {
            return Err(format!("paths differ at seed {seed}"));
        }
    }
    Ok(format!("nonlinear paths exactly equal on {count} rational states (N={})", lat.n()))
}

/// Generic and optimized nonlinear paths agree in floats to a relative bound.
pub fn check_rhs_paths_float(lat: Lattice, count: usize, tol: f64) -> CheckResult {
    let mut worst: f64 = 0.0;
    for seed in 0..count as u64 {
        let s = init_state(&InitRecipe::Random, 1000 + seed, lat).map_err(|e| e.to_string())?;
        let g = nonlinear_generic(&s.x);
        let o = nonlinear_optimized(&s.x);
        let mut scale: f64 = 0.0;
        let mut dev: f64 = 0.0;
        for ax in 0..3 {
            for (a, b) in g.inf[ax].as_slice().iter().zip(o.inf[ax].as_slice()) {
                scale = scale.max(a.abs());
                dev = dev.max((a - b).abs());
            }
        }
        worst = worst.max(dev / scale.max(1e-300));
    }
    if worst > tol {
        return Err(format!("paths differ by {worst:.3e} relative (tol {tol:.0e})"));
    }
    Ok(format!("nonlinear paths agree to {worst:.2e} relative on {count} float states (N={})", lat.n()))
}

/// The closed-form Poisson potential solves its stencil equation, and the
/// Green sets built through either solver agree.
pub fn check_poisson_routes(lat: Lattice, tol: f64) -> CheckResult {
    let p = green_p_field(lat);
    let lp = laplacian(&p);
    let rhs0 = green_rhs(lat);
    let mut dev: f64 = 0.0;
    for (a, b) in lp.coeff.as_slice().iter().zip(rhs0.coeff.as_slice()) {
        dev = dev.max((a - b).abs());
    }
    if dev > tol {
        return Err(format!("closed-form potential misses the stencil equation by {dev:.3e}"));
    }
    let gcg = build_green_set(lat, PoissonRoute::ConjugateGradient).map_err(|e| e.to_string())?;
    let gcl = build_green_set(lat, PoissonRoute::ClosedForm).map_err(|e| e.to_string())?;
    let mut gdev: f64 = 0.0;
    for ax in 0..3 {
        for pl in 0..3 {
            for (a, b) in gcg.g[ax].u[pl].as_slice().iter().zip(gcl.g[ax].u[pl].as_slice()) {
                gdev = gdev.max((a - b).abs());
            }
        }
    }
    if gdev > tol {
        return Err(format!("green sets from the two solvers differ by {gdev:.3e}"));
    }
    Ok(format!("closed form solves its equation to {dev:.2e}; solver routes agree to {gdev:.2e} (N={})", lat.n()))
}

/// Defining property of π against a computed basis of V, for every basis
/// infinitesimal stick.
pub fn check_pi_property(lat: Lattice, tol: f64) -> CheckResult {
    let green = build_green_set(lat, PoissonRoute::ConjugateGradient).map_err(|e| e.to_string())?;
    let vb = v_basis(lat);
    let vb_float: Vec<Chain2<f64>> = vb.iter().map(rational_chain_to_f64).collect();
    let mut worst: f64 = 0.0;
    for ax in crate::lattice::AXES {
        for site in lat.sites() {
            let a: Chain1<f64> = crate::complex::unit_inf(lat, ax, site);
            let pia = crate::hodge::project_pi(&a, &green).map_err(|e| e.to_string())?;
            let sp = expand2h(&star2(&pia));
            for v in &vb_float {
                let lhs = pair_stick_square(&sp, v);
                let rhs_val = pair_stick_square(&a, v);
                worst = worst.max((lhs - rhs_val).abs());
            }
        }
    }
    if worst > tol {
        return Err(format!("pi defining property off by {worst:.3e} (tol {tol:.0e})"));
    }
    Ok(format!(
        "pi property holds to {worst:.2e} over {} sticks x {} basis vectors of V (N={})",
        3 * lat.volume(),
        vb.len(),
        lat.n()
    ))
}

fn rational_chain_to_f64(x: &Chain2<Rational>) -> Chain2<f64> {
    let lat = x.lattice();
    let mut out = Chain2::zeros(lat);
    for pl in 0..3 {
        for s in lat.sites() {
            out.u[pl].set(s, x.u[pl].get(s).to_f64());
        }
    }
    out
}

/// Instantaneous conservation through the full right-hand side.
pub fn check_conservation(lat: Lattice, states: usize, tol: f64) -> CheckResult {
    let green = build_green_set(lat, PoissonRoute::ConjugateGradient).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for seed in 0..states as u64 {
        let s = init_state(&InitRecipe::Random, 500 + seed, lat).map_err(|e| e.to_string())?;
        let f = rhs(&s.x, &green).map_err(|e| e.to_string())?;
        let scale = metric(&f, &f).sqrt() * metric(&s.x, &s.x).sqrt();
        if scale == 0.0 {
            continue;
        }
        worst = worst.max(metric(&f, &s.x).abs() / scale);
        worst = worst.max(metric(&f, &curl(&s.x)).abs() / scale);
        let memb = v_membership_residual(&f) / f.linf().max(1e-300);
        worst = worst.max(memb);
    }
    if worst > tol {
        return Err(format!("conservation residual {worst:.3e} (tol {tol:.0e})"));
    }
    Ok(format!("rhs conservation and V-membership residuals <= {worst:.2e} on {states} states (N={})", lat.n()))
}

/// Metric route equality and imap pairing preservation on random chains.
pub fn check_pairing_consistency(lat: Lattice, count: usize) -> CheckResult {
    for seed in 0..count as u64 {
        let a = rand_rational_chain2(lat, 900 + 2 * seed);
        let b = rand_rational_chain2(lat, 901 + 2 * seed);
        if metric(&a, &b) != metric_pairing_route(&a, &b) {
            return Err(format!("metric routes differ at seed {seed}"));
        }
        let h = expand2h(&boundary2(&a));
        if pair_stick_square(&h, &b) != pair_stick_square(&imap(&h), &b) {
            return Err(format!("imap pairing preservation fails at seed {seed}"));
        }
    }
    Ok(format!("metric routes equal and imap preserves pairings on {count} random chains"))
}

/// The full suite at desk scale; returns (name, result) pairs.
pub fn run_all() -> Vec<(&'static str, CheckResult)> {
    let l3 = Lattice::new(3).unwrap();
    let l5 = Lattice::new(5).unwrap();
    let l7 = Lattice::new(7).unwrap();
    vec![
        ("product_rule_n3", check_product_rule(l3)),
        ("linking_symmetry", check_linking_symmetry(l3, 50)),
        ("triple_alternation", check_triple_alternation(l3, 50)),
        ("pairing_consistency", check_pairing_consistency(l3, 20)),
        ("metric_spectrum_n3", check_metric_spectrum(l3, 1e-10)),
        ("curl_rank_n3", check_curl_rank(l3)),
        ("rhs_paths_exact_n3", check_rhs_paths_exact(l3, 10)),
        ("rhs_paths_float_n5", check_rhs_paths_float(l5, 10, 1e-12)),
        ("poisson_routes_n3", check_poisson_routes(l3, 1e-10)),
        ("poisson_routes_n5", check_poisson_routes(l5, 1e-10)),
        ("poisson_routes_n7", check_poisson_routes(l7, 1e-10)),
        ("pi_property_n3", check_pi_property(l3, 1e-10)),
        ("conservation_n5", check_conservation(l5, 10, 1e-10)),
    ]
}
