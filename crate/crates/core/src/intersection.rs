//! Transverse intersection products, the i-map, and the three forms of the
//! fluid algebra (metric, linking form, triple bracket).
//!
//! The stick/square pairing kernel: an infinitesimal stick along e meets only
//! squares of the orthogonal orientation, requires coinciding in-axis
//! coordinates, and weighs (1/4)·2^{−(|d₂|+|d₃|)} over in-plane offsets
//! d ∈ {−1,0,1}².  The kernel is pinned as the unique solution of the
//! circulant relation 2f(d−e) + 4f(d) + 2f(d+e) = 2^{−‖d‖₁}·δ_{‖d‖∞≤1}
//! forced by the i-map together with the closed-form metric (see the
//! `kernel_derivation` test).  h-sticks pair as twice the infinitesimal
//! pairing of each endpoint.
//!
//! Square products are evaluated by a stencil sweep over covering
//! representatives of the axis offset, so the N = 3 wrap (where an offset of
//! 1 is also an offset of −2) double-counts correctly.

use crate::chain::{Chain0, Chain1, Chain2};
use crate::complex::{augmentation, boundary2, expand2h, star2};
use crate::lattice::{Field, AXES};
use crate::scalar::Scalar;

/// Pairing weight of the unit infinitesimal stick along `ax` at in-plane
/// offsets (dp, dq) from an orthogonal square centre (canonical wrapped).
fn kernel_weight<S: Scalar>(dp: i64, dq: i64) -> S {
    S::from_ratio(1, 4).mul(&S::half_pow((dp.unsigned_abs() + dq.unsigned_abs()) as u32))
}

/// For each axis, the field K[c] = Σ_{dp,dq} w(dp,dq) · u[plane(ax)](c + dp·e_p + dq·e_q):
/// the pairing of the unit infinitesimal (ax)_c against the square chain.
fn kernel_contraction<S: Scalar>(v: &Chain2<S>) -> [Field<S>; 3] {
    let lat = v.lattice();
    let mut out = [Field::zeros(lat), Field::zeros(lat), Field::zeros(lat)];
    for ax in AXES {
        let p = AXES[(ax.index() + 1) % 3].unit();
        let q = AXES[(ax.index() + 2) % 3].unit();
        let field = &v.u[ax.index()];
        for s in lat.sites() {
            let mut acc = S::zero();
            for dp in -1i64..=1 {
                for dq in -1i64..=1 {
                    let w: S = kernel_weight(dp, dq);
                    let site = lat.shift(s, [dp * p[0] + dq * q[0], dp * p[1] + dq * q[1], dp * p[2] + dq * q[2]]);
                    acc.mul_add_assign(&w, field.get(site));
                }
            }
            out[ax.index()].set(s, acc);
        }
    }
    out
}

/// Chain-level product FC₁ × FC₂ → FC₀.  Infinitesimal sticks contribute the
/// kernel weight at their own site; h-sticks contribute twice the endpoint
/// kernel at whichever endpoint lies in the square's plane.
pub fn intersect12<S: Scalar>(a: &Chain1<S>, v: &Chain2<S>) -> Chain0<S> {
    let lat = a.lattice();
    let k = kernel_contraction(v);
    let mut out = Chain0::zeros(lat);
    let two = S::from_int(2);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let ci = a.inf[ax.index()].get(s);
            if !ci.is_zero() {
                out.coeff.add_at(s, &ci.mul(k[ax.index()].get(s)));
            }
            let ch = a.hstick[ax.index()].get(s);
            if !ch.is_zero() {
                let upper = lat.shift(s, e);
                out.coeff.add_at(s, &two.mul(ch).mul(k[ax.index()].get(s)));
                out.coeff.add_at(upper, &two.mul(ch).mul(k[ax.index()].get(upper)));
            }
        }
    }
    out
}

/// #(a ⋔ v): the scalar pairing of a 1-chain with a 2-chain.
pub fn pair_stick_square<S: Scalar>(a: &Chain1<S>, v: &Chain2<S>) -> S {
    augmentation(&intersect12(a, v))
}

/// Replace h-sticks by the pairing-equivalent infinitesimal combination:
/// identity on infinitesimals, h-stick ↦ 2·(each endpoint).
pub fn imap<S: Scalar>(a: &Chain1<S>) -> Chain1<S> {
    let lat = a.lattice();
    let mut out = Chain1::zeros(lat);
    let two = S::from_int(2);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let ci = a.inf[ax.index()].get(s);
            if !ci.is_zero() {
                out.inf[ax.index()].add_at(s, ci);
            }
            let ch = a.hstick[ax.index()].get(s);
            if !ch.is_zero() {
                let w = two.mul(ch);
                out.inf[ax.index()].add_at(s, &w);
                out.inf[ax.index()].add_at(lat.shift(s, e), &w);
            }
        }
    }
    out
}

/// Transverse product FC₂ × FC₂ → FC₁.
///
/// For the ordered cyclic pair (zx_a, xy_b) the output is along x and is
/// (1/2)^{|a₂−b₂|+|a₃−b₃|} times: the infinitesimal at the midpoint when the
/// axis offset is ±2; the h-stick between a₁ and b₁ when ±1; the 2h-stick at
/// a₁ minus infinitesimals at its endpoints when 0.  The pairs (xy, yz) and
/// (yz, zx) follow by cyclic permutation, reversed orders by anticommutativity,
/// and parallel orientations vanish.
pub fn intersect22<S: Scalar>(a: &Chain2<S>, b: &Chain2<S>) -> Chain1<S> {
    let lat = a.lattice();
    let mut out = Chain1::zeros(lat);
    for p1 in 0..3 {
        let p2 = (p1 + 1) % 3;
        // ordered cyclic (p1, p2): +table; reversed: anticommute
        accumulate22(&mut out, &a.u[p1], &b.u[p2], p1, false);
        accumulate22(&mut out, &b.u[p1], &a.u[p2], p1, true);
    }
    out
}

/// Accumulate the table for the ordered cyclic pair (p1, p1+1) with first
/// factor field `fa` (centres a) and second `fb` (centres b); `negate` applies
/// the anticommutation sign for reversed argument order.
fn accumulate22<S: Scalar>(out: &mut Chain1<S>, fa: &Field<S>, fb: &Field<S>, p1: usize, negate: bool) {
    let lat = fa.lattice();
    let e = (p1 + 2) % 3; // output axis
    let e1 = (e + 1) % 3; // output coordinate from the first factor
    let e2 = (e + 2) % 3; // output coordinate from the second factor
    let ue = AXES[e].unit();
    let u1 = AXES[e1].unit();
    let u2 = AXES[e2].unit();
    for s in lat.sites() {
        let ca = fa.get(s);
        if ca.is_zero() {
            continue;
        }
        for d1 in -1i64..=1 {
            for d2 in -1i64..=1 {
                // covering representatives of the axis offset; for N = 3 two
                // of the five coincide modulo N and both contribute
                for da in -2i64..=2 {
                    let b = lat.shift(
                        s,
                        [
                            da * ue[0] - d1 * u1[0] - d2 * u2[0],
                            da * ue[1] - d1 * u1[1] - d2 * u2[1],
                            da * ue[2] - d1 * u1[2] - d2 * u2[2],
                        ],
                    );
                    let cb = fb.get(b);
                    if cb.is_zero() {
                        continue;
                    }
                    let mut w = ca
                        .mul(cb)
                        .mul(&S::half_pow((d1.unsigned_abs() + d2.unsigned_abs()) as u32));
                    if negate {
                        w = w.neg();
                    }
                    // output transverse coordinates: e1 from a, e2 from b
                    let base = lat.shift(s, [-d2 * u2[0], -d2 * u2[1], -d2 * u2[2]]);
                    match da {
                        2 | -2 => {
                            let c = lat.shift(base, [ue[0] * (da / 2), ue[1] * (da / 2), ue[2] * (da / 2)]);
                            out.inf[e].add_at(c, &w);
                        }
                        1 | -1 => {
                            let lo = if da > 0 { base } else { lat.shift(base, [-ue[0], -ue[1], -ue[2]]) };
                            out.hstick[e].add_at(lo, &w);
                        }
                        _ => {
                            out.hstick[e].add_at(lat.shift(base, [-ue[0], -ue[1], -ue[2]]), &w);
                            out.hstick[e].add_at(base, &w);
                            out.inf[e].sub_at(lat.shift(base, [-ue[0], -ue[1], -ue[2]]), &w);
                            out.inf[e].sub_at(lat.shift(base, ue), &w);
                        }
                    }
                }
            }
        }
    }
}

/// The metric (a, b) = #(a ⋔ *b): parallel squares only, Gram entry
/// 2^{−‖d‖₁} for centre offsets with ‖d‖∞ ≤ 1.
pub fn metric<S: Scalar>(a: &Chain2<S>, b: &Chain2<S>) -> S {
    let lat = a.lattice();
    let mut tot = S::zero();
    for pl in 0..3 {
        for s in lat.sites() {
            let ca = a.u[pl].get(s);
            if ca.is_zero() {
                continue;
            }
            for dx in -1i64..=1 {
                for dy in -1i64..=1 {
                    for dz in -1i64..=1 {
                        let cb = b.u[pl].get(lat.shift(s, [dx, dy, dz]));
                        if cb.is_zero() {
                            continue;
                        }
                        let w = S::half_pow((dx.unsigned_abs() + dy.unsigned_abs() + dz.unsigned_abs()) as u32);
                        tot.add_assign(&ca.mul(cb).mul(&w));
                    }
                }
            }
        }
    }
    tot
}

/// The metric through the intersection pairing, (a, b) = #(*b ⋔ a); kept as an
/// independent route and tested equal to the closed form.
pub fn metric_pairing_route<S: Scalar>(a: &Chain2<S>, b: &Chain2<S>) -> S {
    pair_stick_square(&expand2h(&star2(b)), a)
}

/// Linking form ⟨a, b⟩ = #(a ⋔ ∂b).
pub fn linking<S: Scalar>(a: &Chain2<S>, b: &Chain2<S>) -> S {
    pair_stick_square(&expand2h(&boundary2(b)), a)
}

/// Triple intersection form {a, b, c} = #(a ⋔ b ⋔ c).
pub fn triple<S: Scalar>(a: &Chain2<S>, b: &Chain2<S>, c: &Chain2<S>) -> S {
    pair_stick_square(&intersect22(a, b), c)
}
