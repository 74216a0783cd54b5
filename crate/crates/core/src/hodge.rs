//! The Poisson layer: the r-map from infinitesimal sticks to 2h-sticks, the
//! lattice Poisson solve (conjugate gradient and the closed-form spectral
//! solution), the Hodge decomposition q = e + f + c on 2h 1-chains, and the
//! projector π applied through precomputed Green fields.

use crate::chain::{Chain0, Chain1, Chain2, TwoHChain1};
use crate::complex::{cboundary1, cgrad, harmonic_part, laplacian, star1};
use crate::error::Error;
use crate::lattice::{Field, Lattice, AXES};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// r: I₁ → C₁.  The unit infinitesimal stick (e)_c maps to
/// Σ_{k=0}^{N−1} (−1)^k (N−2k)/8 times the 2h-stick centred c + k·e; the
/// image has the same transverse pairings with every 2-chain as the input.
pub fn rmap<S: Scalar>(g: &Chain1<S>) -> Result<TwoHChain1<S>, Error> {
    if !g.hstick_is_zero() {
        return Err(Error::NonZeroStickPart);
    }
    let lat = g.lattice();
    let n = lat.n() as i64;
    let weights: Vec<S> = (0..n)
        .map(|k| {
            let w = S::from_ratio(n - 2 * k, 8);
            if k % 2 == 0 {
                w
            } else {
                w.neg()
            }
        })
        .collect();
    let mut out = TwoHChain1::zeros(lat);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let c = g.inf[ax.index()].get(s);
            if c.is_zero() {
                continue;
            }
            for (k, w) in weights.iter().enumerate() {
                let k = k as i64;
                out.stick[ax.index()].add_at(lat.shift(s, [k * e[0], k * e[1], k * e[2]]), &c.mul(w));
            }
        }
    }
    Ok(out)
}

/// Conjugate gradient for Δp = rhs on the 2h stencil, gauge-fixed to the
/// zero-mean representative.  Rejects right-hand sides with nonzero mean
/// (the equation is only solvable on the orthogonal complement of constants).
pub fn solve_poisson_cg(rhs: &Chain0<f64>, tol: f64, max_iter: usize) -> Result<Chain0<f64>, Error> {
    let lat = rhs.coeff.lattice();
    let scale = rhs.coeff.linf().max(1.0);
    let mean = rhs.coeff.mean();
    if mean.abs() > 1e-12 * scale {
        return Err(Error::PoissonUnsolvable { mean });
    }
    let vol = lat.volume();
    // solve (-lap) x = -(rhs - mean) in the zero-mean subspace
    let mut b = rhs.coeff.clone();
    for v in b.as_mut_slice() {
        *v = -(*v - mean);
    }
    let bnorm = b.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut x = Field::zeros(lat);
    if bnorm == 0.0 {
        return Ok(Chain0 { coeff: x });
    }
    let apply = |f: &Field<f64>| {
        let mut out = laplacian(&Chain0 { coeff: f.clone() }).coeff;
        for v in out.as_mut_slice() {
            *v = -*v;
        }
        out
    };
    let mut r = b.clone();
    let mut p = r.clone();
    let mut rs: f64 = r.as_slice().iter().map(|v| v * v).sum();
    let mut achieved = rs.sqrt();
    for _ in 0..max_iter {
        let ap = apply(&p);
        let pap: f64 = p.as_slice().iter().zip(ap.as_slice()).map(|(a, b)| a * b).sum();
        let alpha = rs / pap;
        for (xi, pi) in x.as_mut_slice().iter_mut().zip(p.as_slice()) {
            *xi += alpha * pi;
        }
        for (ri, api) in r.as_mut_slice().iter_mut().zip(ap.as_slice()) {
            *ri -= alpha * api;
        }
        let rs_new: f64 = r.as_slice().iter().map(|v| v * v).sum();
        achieved = rs_new.sqrt();
        if achieved <= tol * bnorm {
            let m = x.sum() / vol as f64;
            for v in x.as_mut_slice() {
                *v -= m;
            }
            return Ok(Chain0 { coeff: x });
        }
        let beta = rs_new / rs;
        for (pi, ri) in p.as_mut_slice().iter_mut().zip(r.as_slice()) {
            *pi = ri + beta * *pi;
        }
        rs = rs_new;
    }
    Err(Error::CgDiverged { tol, iters: max_iter, achieved: achieved / bnorm })
}

/// Closed-form solution of Δp = (1/2)(−1)^{a₁−1} δ_{a₁≠0} δ_{a₂=0} δ_{a₃=0}:
/// a double mode sum with tan(πl/N), sin(2π(la₁+ma₂)/N) and the quartic-root
/// profile ν_{l,m} in the third coordinate.  Zero-mean by construction.
pub fn green_p_field(lat: Lattice) -> Chain0<f64> {
    let n = lat.n();
    let nf = n as f64;
    let mut p = Field::zeros(lat);
    for l in 1..n {
        for m in 0..n {
            let cl = (4.0 * std::f64::consts::PI * l as f64 / nf).cos();
            let cm = (4.0 * std::f64::consts::PI * m as f64 / nf).cos();
            let nu = nu_root(cl, cm);
            let nun = nu.powi(n as i32);
            let tanl = (std::f64::consts::PI * l as f64 / nf).tan();
            let pref = tanl / (nu * nu - 1.0 / (nu * nu));
            for s in lat.sites() {
                let (a1, a2, a3) = (s[0] as f64, s[1] as f64, s[2] as i32);
                let sinv = (2.0 * std::f64::consts::PI * (l as f64 * a1 + m as f64 * a2) / nf).sin();
                let plus = (nu.powi(a3) + nu.powi(n as i32 - a3)) / (1.0 - nun);
                let neg = ((-nu).powi(a3) + (-nu).powi(n as i32 - a3)) / (1.0 + nun);
                p.add_at(s, &(pref * sinv * (plus + neg)));
            }
        }
    }
    let scale = 1.0 / (4.0 * nf * nf);
    for v in p.as_mut_slice() {
        *v *= scale;
    }
    Chain0 { coeff: p }
}

/// Largest root of ν² + ν⁻² = 6 − 2cos(4πl/N) − 2cos(4πm/N).
pub fn nu_root(cl: f64, cm: f64) -> f64 {
    (1.0 - 0.5 * cl - 0.5 * cm).sqrt() + (2.0 - 0.5 * cl - 0.5 * cm).sqrt()
}

/// The dipole line source of the Green construction: Δp for p the x-axis
/// Green potential.
pub fn green_rhs(lat: Lattice) -> Chain0<f64> {
    let mut rhs = Chain0::zeros(lat);
    for a1 in 1..lat.n() as i64 {
        let v = 0.5 * if (a1 - 1) % 2 == 0 { 1.0 } else { -1.0 };
        rhs.coeff.set([a1, 0, 0], v);
    }
    rhs
}

/// Hodge decomposition q = e + f + c on 2h 1-chains: c the axis means, f the
/// gradient part through the Poisson solve, e the divergence-free zero-mean
/// remainder (the image-of-∂ part).
#[derive(Clone, Debug)]
pub struct HodgeSplit {
    pub e: TwoHChain1<f64>,
    pub f: TwoHChain1<f64>,
    pub c: TwoHChain1<f64>,
}

pub fn hodge_split(q: &TwoHChain1<f64>) -> Result<HodgeSplit, Error> {
    let c = harmonic_part(q);
    let p = solve_poisson_cg(&cboundary1(q), 1e-13, 10 * q.lattice().volume())?;
    let f = cgrad(&p);
    let mut e = q.clone();
    e.sub(&f);
    e.sub(&c);
    Ok(HodgeSplit { e, f, c })
}

/// Which Poisson route builds the gradient part of the Green fields.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PoissonRoute {
    ConjugateGradient,
    ClosedForm,
}

/// π-images of the three unit infinitesimal sticks at the origin; π for
/// arbitrary infinitesimal chains is translation of these by linearity.
#[derive(Clone, Debug)]
pub struct GreenSet {
    lat: Lattice,
    /// g[axis] is a Chain2 in V: π((axis)_0).
    pub g: [Chain2<f64>; 3],
}

impl GreenSet {
    pub fn lattice(&self) -> Lattice {
        self.lat
    }

    /// Reassemble from stored fields (the cache reader).
    pub fn from_fields(lat: Lattice, g: [Chain2<f64>; 3]) -> GreenSet {
        GreenSet { lat, g }
    }
}

/// Build the Green set: for each axis, r-map the unit stick, Hodge-split, and
/// star the e-part back to squares.  `route` selects the Poisson solver for
/// the gradient part; the two routes agree to solver tolerance.
pub fn build_green_set(lat: Lattice, route: PoissonRoute) -> Result<GreenSet, Error> {
    let mut fields: Vec<Chain2<f64>> = Vec::with_capacity(3);
    for ax in AXES {
        let g: Chain1<f64> = crate::complex::unit_inf(lat, ax, [0, 0, 0]);
        let q = rmap(&g)?;
        let e = match route {
            PoissonRoute::ConjugateGradient => hodge_split(&q)?.e,
            PoissonRoute::ClosedForm => {
                // the closed form is the x-axis potential; permute it to `ax`
                let p = green_p_field(lat);
                let p_ax = permute_chain0_to_axis(&p, ax.index());
                let f = cgrad(&p_ax);
                let c = harmonic_part(&q);
                let mut e = q.clone();
                e.sub(&f);
                e.sub(&c);
                e
            }
        };
        fields.push(star1(&e));
    }
    let mut it = fields.into_iter();
    Ok(GreenSet { lat, g: [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()] })
}

/// Cyclic coordinate permutation sending the x-axis construction to `ax`:
/// for ax = y the potential at (a₁,a₂,a₃) is the x-potential at (a₂,a₃,a₁).
fn permute_chain0_to_axis(p: &Chain0<f64>, ax: usize) -> Chain0<f64> {
    let lat = p.coeff.lattice();
    let mut out = Chain0::zeros(lat);
    for s in lat.sites() {
        let src = match ax {
            0 => s,
            1 => [s[1], s[2], s[0]],
            _ => [s[2], s[0], s[1]],
        };
        out.coeff.set(s, *p.coeff.get(src));
    }
    out
}

/// π applied to an infinitesimal 1-chain: cyclic convolution of the Green
/// fields with the coefficients, out[pl][c] = Σ_ax Σ_s a[ax][s]·G[ax][pl][c−s].
/// Each output site is owned by one task and accumulated in a fixed order, so
/// the result is bit-reproducible and exactly translation-equivariant.
pub fn project_pi(a: &Chain1<f64>, green: &GreenSet) -> Result<Chain2<f64>, Error> {
    if !a.hstick_is_zero() {
        return Err(Error::NonZeroStickPart);
    }
    let lat = green.lat;
    let n = lat.n();
    let n2 = n * n;
    let mut out = Chain2::zeros(lat);
    // wrap-difference table: widx[c][s] = (c - s) mod n
    let mut widx = vec![0usize; n2];
    for c in 0..n {
        for s in 0..n {
            widx[c * n + s] = (c + n - s) % n;
        }
    }
    for pl in 0..3 {
        let gf: [&[f64]; 3] = [
            green.g[0].u[pl].as_slice(),
            green.g[1].u[pl].as_slice(),
            green.g[2].u[pl].as_slice(),
        ];
        out.u[pl]
            .as_mut_slice()
            .par_chunks_mut(n2)
            .enumerate()
            .for_each(|(ck, slab)| {
                // iterate the Green offset in fixed order so a shifted input
                // accumulates identical summands in identical order
                for ax in 0..3 {
                    let af = a.inf[ax].as_slice();
                    let g = gf[ax];
                    for dk in 0..n {
                        let gz = dk * n2;
                        let az = widx[ck * n + dk] * n2;
                        for cj in 0..n {
                            for dj in 0..n {
                                let gzy = gz + dj * n;
                                let ay = az + widx[cj * n + dj] * n;
                                let grow = &g[gzy..gzy + n];
                                let arow = &af[ay..ay + n];
                                let orow = &mut slab[cj * n..cj * n + n];
                                for (ci, o) in orow.iter_mut().enumerate() {
                                    let gci = ci * n;
                                    let mut acc = 0.0;
                                    for (di, gv) in grow.iter().enumerate() {
                                        acc += gv * arow[widx[gci + di]];
                                    }
                                    *o += acc;
                                }
                            }
                        }
                    }
                }
            });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{boundary2, expand2h, star2, unit_inf, unit_square};
    use crate::intersection::pair_stick_square;
    use crate::lattice::{Axis, Plane};
    use crate::vorticity::curl;

    fn lat(n: usize) -> Lattice {
        Lattice::new(n).unwrap()
    }

    #[test]
    fn rmap_values_n3() {
        let l = lat(3);
        let g: Chain1<f64> = unit_inf(l, Axis::X, [0, 0, 0]);
        let q = rmap(&g).unwrap();
        assert_eq!(*q.stick[0].get([0, 0, 0]), 3.0 / 8.0);
        assert_eq!(*q.stick[0].get([1, 0, 0]), -1.0 / 8.0);
        assert_eq!(*q.stick[0].get([2, 0, 0]), -1.0 / 8.0);
        assert!(q.stick[1].is_zero() && q.stick[2].is_zero());
    }

    #[test]
    fn rmap_rejects_sticks() {
        let l = lat(3);
        let mut g: Chain1<f64> = Chain1::zeros(l);
        g.hstick[0].set([0, 0, 0], 1.0);
        assert!(matches!(rmap(&g), Err(Error::NonZeroStickPart)));
    }

    #[test]
    fn rmap_preserves_pairings_exactly() {
        // exact rational check across all basis squares
        use crate::scalar::Rational;
        let l = lat(5);
        let g: Chain1<Rational> = unit_inf(l, Axis::X, [0, 0, 0]);
        let q = rmap(&g).unwrap();
        let h = expand2h(&q);
        for pl in crate::lattice::PLANES {
            for s in l.sites() {
                let v: Chain2<Rational> = unit_square(l, pl, s);
                assert_eq!(pair_stick_square(&h, &v), pair_stick_square(&g, &v));
            }
        }
    }

    #[test]
    fn rmap_harmonic_mean() {
        let l = lat(5);
        let g: Chain1<f64> = unit_inf(l, Axis::X, [0, 0, 0]);
        let q = rmap(&g).unwrap();
        let c = harmonic_part(&q);
        let expect = 1.0 / (8.0 * l.volume() as f64);
        assert!((c.stick[0].get([1, 2, 3]) - expect).abs() < 1e-15);
        assert!(c.stick[1].is_zero());
        // the boundary of the r-image is the dipole line of the Poisson source
        let b = cboundary1(&q);
        for s in l.sites() {
            let expect = if s[1] == 0 && s[2] == 0 && s[0] != 0 {
                0.5 * if (s[0] - 1) % 2 == 0 { 1.0 } else { -1.0 }
            } else {
                0.0
            };
            assert!((b.coeff.get(s) - expect).abs() < 1e-15, "site {s:?}");
        }
    }

    #[test]
    fn poisson_cg_inverts_laplacian() {
        let l = lat(5);
        let mut p0 = Chain0::zeros(l);
        let mut v: f64 = 0.3;
        for s in l.sites() {
            v = (v * 97.0 + 13.0).rem_euclid(7.0) - 3.0;
            p0.coeff.set(s, v);
        }
        let m = p0.coeff.mean();
        for w in p0.coeff.as_mut_slice() {
            *w -= m;
        }
        let rhs = laplacian(&p0);
        let p = solve_poisson_cg(&rhs, 1e-13, 5000).unwrap();
        let mut dev: f64 = 0.0;
        for s in l.sites() {
            dev = dev.max((p.coeff.get(s) - p0.coeff.get(s)).abs());
        }
        assert!(dev < 1e-10, "dev {dev}");
        // zero rhs -> zero solution
        let z = solve_poisson_cg(&Chain0::zeros(l), 1e-13, 100).unwrap();
        assert!(z.coeff.is_zero());
    }

    #[test]
    fn poisson_rejects_nonzero_mean() {
        let l = lat(3);
        let mut rhs = Chain0::zeros(l);
        rhs.coeff.set([0, 0, 0], 1.0);
        assert!(matches!(solve_poisson_cg(&rhs, 1e-12, 100), Err(Error::PoissonUnsolvable { .. })));
    }

    #[test]
    fn green_field_solves_eq11() {
        for n in [3usize, 5, 7, 9] {
            let l = lat(n);
            let p = green_p_field(l);
            let lp = laplacian(&p);
            let rhs = green_rhs(l);
            let mut dev: f64 = 0.0;
            for s in l.sites() {
                dev = dev.max((lp.coeff.get(s) - rhs.coeff.get(s)).abs());
            }
            assert!(dev < 1e-12, "N={n} dev {dev}");
            assert!(p.coeff.mean().abs() < 1e-12);
        }
    }

    #[test]
    fn nu_satisfies_quartic() {
        let n = 7.0f64;
        for l in 1..7 {
            for m in 0..7 {
                let cl = (4.0 * std::f64::consts::PI * l as f64 / n).cos();
                let cm = (4.0 * std::f64::consts::PI * m as f64 / n).cos();
                let nu = nu_root(cl, cm);
                assert!(nu > 1.0);
                let lhs = nu * nu + 1.0 / (nu * nu);
                let rhs = 6.0 - 2.0 * cl - 2.0 * cm;
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hodge_split_cases() {
        let l = lat(5);
        // pure gradient input
        let mut p0 = Chain0::zeros(l);
        p0.coeff.set([1, 2, 3], 2.0);
        p0.coeff.set([0, 0, 0], -2.0);
        let q = cgrad(&p0);
        let hs = hodge_split(&q).unwrap();
        assert!(hs.e.stick[0].linf() < 1e-10 && hs.e.stick[1].linf() < 1e-10 && hs.e.stick[2].linf() < 1e-10);
        assert!(hs.c.stick[0].linf() < 1e-15);
        // constant input
        let mut c = TwoHChain1::zeros(l);
        for s in l.sites() {
            c.stick[2].set(s, 0.25);
        }
        let hs = hodge_split(&c).unwrap();
        assert!(hs.e.stick[2].linf() < 1e-12 && hs.f.stick[2].linf() < 1e-12);
        assert!((hs.c.stick[2].get([0, 0, 0]) - 0.25).abs() < 1e-15);
        // boundary input: f = 0 and c = 0
        let mut w = Chain2::zeros(l);
        w.u[0].set([0, 0, 0], 1.0);
        w.u[1].set([2, 1, 0], -0.5);
        let q = boundary2(&w);
        let hs = hodge_split(&q).unwrap();
        for ax in 0..3 {
            assert!(hs.f.stick[ax].linf() < 1e-12);
            assert!(hs.c.stick[ax].linf() < 1e-15);
        }
    }

    #[test]
    fn green_set_routes_agree_and_live_in_v() {
        for n in [3usize, 5] {
            let l = lat(n);
            let gcg = build_green_set(l, PoissonRoute::ConjugateGradient).unwrap();
            let gcl = build_green_set(l, PoissonRoute::ClosedForm).unwrap();
            for ax in 0..3 {
                for pl in 0..3 {
                    let mut dev: f64 = 0.0;
                    for (a, b) in gcg.g[ax].u[pl].as_slice().iter().zip(gcl.g[ax].u[pl].as_slice()) {
                        dev = dev.max((a - b).abs());
                    }
                    assert!(dev < 1e-10, "N={n} axis {ax} plane {pl}: {dev}");
                }
                // membership in V: zero divergence and zero means of the stick image
                let st = star2(&gcg.g[ax]);
                assert!(cboundary1(&st).coeff.linf() < 1e-10);
                for f in &harmonic_part(&st).stick {
                    assert!(f.linf() < 1e-12);
                }
            }
            // G_y is the cyclic permutation image of G_x: planes shift by one
            // and coordinates rotate
            let gy = &gcg.g[1];
            let gx = &gcg.g[0];
            let mut dev: f64 = 0.0;
            for pl in 0..3 {
                for s in l.sites() {
                    let src = [s[1], s[2], s[0]];
                    dev = dev.max((gy.u[pl].get(s) - gx.u[(pl + 2) % 3].get(src)).abs());
                }
            }
            assert!(dev < 1e-10, "cyclic symmetry dev {dev}");
        }
    }

    #[test]
    fn pi_defining_property_spot() {
        let l = lat(3);
        let green = build_green_set(l, PoissonRoute::ConjugateGradient).unwrap();
        let a: Chain1<f64> = unit_inf(l, Axis::Y, [1, 0, 2]);
        let pia = project_pi(&a, &green).unwrap();
        let sp = expand2h(&star2(&pia));
        for pl in crate::lattice::PLANES {
            for s in l.sites() {
                let w: Chain2<f64> = unit_square(l, pl, s);
                let v = curl(&w);
                let lhs = pair_stick_square(&sp, &v);
                let rhs = pair_stick_square(&a, &v);
                assert!((lhs - rhs).abs() < 1e-11, "v from {pl:?}@{s:?}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn pi_translation_equivariance_bit_exact() {
        let l = lat(5);
        let green = build_green_set(l, PoissonRoute::ConjugateGradient).unwrap();
        // dense input: bit-exactness requires the offset-ordered accumulation
        let mut a: Chain1<f64> = Chain1::zeros(l);
        let mut v: f64 = 0.37;
        for ax in 0..3 {
            for s in l.sites() {
                v = (v * 73.0 + 0.11).rem_euclid(5.0) - 2.5;
                a.inf[ax].set(s, v);
            }
        }
        let base = project_pi(&a, &green).unwrap();
        let d = [1i64, 4, 2];
        let mut shifted_in: Chain1<f64> = Chain1::zeros(l);
        for ax in 0..3 {
            for s in l.sites() {
                shifted_in.inf[ax].set(l.shift(s, d), *a.inf[ax].get(s));
            }
        }
        let shifted_out = project_pi(&shifted_in, &green).unwrap();
        for pl in 0..3 {
            for s in l.sites() {
                assert_eq!(*shifted_out.u[pl].get(l.shift(s, d)), *base.u[pl].get(s));
            }
        }
    }

    #[test]
    fn pi_kills_uniform_infinitesimal_fields() {
        let l = lat(5);
        let green = build_green_set(l, PoissonRoute::ConjugateGradient).unwrap();
        // a uniform x-infinitesimal field pairs to zero with every element of V
        let mut a: Chain1<f64> = Chain1::zeros(l);
        for s in l.sites() {
            a.inf[0].set(s, 1.0);
        }
        let w = unit_square::<f64>(l, Plane::Zx, [1, 2, 0]);
        assert!(pair_stick_square(&a, &curl(&w)).abs() < 1e-14);
        let pia = project_pi(&a, &green).unwrap();
        assert!(pia.linf() < 1e-10);
    }

    #[test]
    fn pi_inverts_pairing_representation_on_v() {
        let l = lat(3);
        let green = build_green_set(l, PoissonRoute::ConjugateGradient).unwrap();
        let x = curl(&unit_square::<f64>(l, Plane::Yz, [0, 0, 0]));
        let g = crate::intersection::imap(&expand2h(&star2(&x)));
        let back = project_pi(&g, &green).unwrap();
        let mut dev: f64 = 0.0;
        for pl in 0..3 {
            for s in l.sites() {
                dev = dev.max((back.u[pl].get(s) - x.u[pl].get(s)).abs());
            }
        }
        assert!(dev < 1e-10, "pi does not invert on V: {dev}");
    }
}
