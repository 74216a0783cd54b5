//! Boundary, star and augmentation operators on the graded chain spaces, the
//! 2h-stick/h-stick basis conversions, and the operators of the coarse complex
//! generated by 2h-cells (`cboundary1`, `cgrad`, `laplacian`, `harmonic_part`).
//!
//! Orientation conventions: squares are oriented by their spanning frame
//! (yz, zx, xy), sticks positively along their axis, and the boundary of an
//! h-stick with lower endpoint a along e is ∅_a − ∅_{a+e}.  With the square
//! boundary and the intersection kernels of [`crate::intersection`], this is
//! the unique assignment under which the graded product rule
//! ∂(a⋔b) = ∂a⋔b − a⋔∂b holds with a positive-definite metric.

use crate::chain::{Chain0, Chain1, Chain2, TwoHChain1};
use crate::error::Error;
use crate::lattice::{Axis, AXES, PLANES};
use crate::scalar::Scalar;

/// Boundary of 2h-squares as signed 2h-sticks:
/// ∂(square_n at a) = p@(a−e_q) + q@(a+e_p) − p@(a+e_q) − q@(a−e_p)
/// where (p, q) are the in-plane axes of orientation n.
pub fn boundary2<S: Scalar>(x: &Chain2<S>) -> TwoHChain1<S> {
    let lat = x.lattice();
    let mut out = TwoHChain1::zeros(lat);
    for n in 0..3 {
        let p = (n + 1) % 3;
        let q = (n + 2) % 3;
        let ep = AXES[p].unit();
        let eq = AXES[q].unit();
        for s in lat.sites() {
            let c = x.u[n].get(s);
            if c.is_zero() {
                continue;
            }
            out.stick[p].add_at(lat.shift(s, [-eq[0], -eq[1], -eq[2]]), c);
            out.stick[q].add_at(lat.shift(s, ep), c);
            out.stick[p].sub_at(lat.shift(s, eq), c);
            out.stick[q].sub_at(lat.shift(s, [-ep[0], -ep[1], -ep[2]]), c);
        }
    }
    out
}

/// Boundary FC₁ → FC₀. Infinitesimal sticks bound nothing; the h-stick with
/// lower endpoint a along e maps to ∅_a − ∅_{a+e}.
pub fn boundary1<S: Scalar>(x: &Chain1<S>) -> Chain0<S> {
    let lat = x.lattice();
    let mut out = Chain0::zeros(lat);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let c = x.hstick[ax.index()].get(s);
            if c.is_zero() {
                continue;
            }
            out.coeff.add_at(s, c);
            out.coeff.sub_at(lat.shift(s, e), c);
        }
    }
    out
}

/// Star: 2h-square ↦ orthogonal 2h-stick through the same centre.
pub fn star2<S: Scalar>(x: &Chain2<S>) -> TwoHChain1<S> {
    TwoHChain1 { stick: x.u.clone() }
}

/// Star: 2h-stick ↦ orthogonal 2h-square through the same centre.
pub fn star1<S: Scalar>(x: &TwoHChain1<S>) -> Chain2<S> {
    Chain2 { u: x.stick.clone() }
}

/// Write each 2h-stick centred at a as the h-sticks spanning [a−e, a] and [a, a+e].
pub fn expand2h<S: Scalar>(x: &TwoHChain1<S>) -> Chain1<S> {
    let lat = x.lattice();
    let mut out = Chain1::zeros(lat);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let c = x.stick[ax.index()].get(s);
            if c.is_zero() {
                continue;
            }
            out.hstick[ax.index()].add_at(lat.shift(s, [-e[0], -e[1], -e[2]]), c);
            out.hstick[ax.index()].add_at(s, c);
        }
    }
    out
}

/// Invert [`expand2h`] on chains with no infinitesimal part.  Per axis line the
/// system t_m + t_{m+1} = s_m is circulant and, for odd N, inverted in closed
/// form by t_m = (1/2) Σ_k (−1)^k s_{m+k}.
pub fn collapse2h<S: Scalar>(x: &Chain1<S>) -> Result<TwoHChain1<S>, Error> {
    if !x.inf_is_zero() {
        return Err(Error::NonZeroInfinitesimalPart);
    }
    let lat = x.lattice();
    let n = lat.n() as i64;
    let half = S::from_ratio(1, 2);
    let mut out = TwoHChain1::zeros(lat);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let mut acc = S::zero();
            let mut sign = true;
            for k in 0..n {
                let v = x.hstick[ax.index()].get(lat.shift(s, [e[0] * k, e[1] * k, e[2] * k]));
                if sign {
                    acc.add_assign(v);
                } else {
                    acc.sub_assign(v);
                }
                sign = !sign;
            }
            out.stick[ax.index()].set(s, acc.mul(&half));
        }
    }
    Ok(out)
}

/// Augmentation FC₀ → scalars: ∅_a ↦ 1.
pub fn augmentation<S: Scalar>(x: &Chain0<S>) -> S {
    x.coeff.sum()
}

/// Boundary of the coarse complex on 2h-sticks: stick centred a along e maps
/// to ∅_{a+e} − ∅_{a−e}.
pub fn cboundary1<S: Scalar>(q: &TwoHChain1<S>) -> Chain0<S> {
    let lat = q.lattice();
    let mut out = Chain0::zeros(lat);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let c = q.stick[ax.index()].get(s);
            if c.is_zero() {
                continue;
            }
            out.coeff.add_at(lat.shift(s, e), c);
            out.coeff.sub_at(lat.shift(s, [-e[0], -e[1], -e[2]]), c);
        }
    }
    out
}

/// Coboundary fixed so that `cboundary1 ∘ cgrad` is exactly the 2h Laplacian
/// stencil: (cgrad p) at centre c along e has coefficient p_{c−e} − p_{c+e}.
pub fn cgrad<S: Scalar>(p: &Chain0<S>) -> TwoHChain1<S> {
    let lat = p.lattice();
    let mut out = TwoHChain1::zeros(lat);
    for ax in AXES {
        let e = ax.unit();
        for s in lat.sites() {
            let lo = p.coeff.get(lat.shift(s, [-e[0], -e[1], -e[2]])).clone();
            let hi = p.coeff.get(lat.shift(s, e));
            out.stick[ax.index()].set(s, lo.sub(hi));
        }
    }
    out
}

/// (Δp)_a = Σ_e p_{a+2e} + p_{a−2e} − 6 p_a.
pub fn laplacian<S: Scalar>(p: &Chain0<S>) -> Chain0<S> {
    let lat = p.lattice();
    let mut out = Chain0::zeros(lat);
    let six = S::from_int(6);
    for s in lat.sites() {
        let mut acc = p.coeff.get(s).mul(&six).neg();
        for ax in AXES {
            let e = ax.unit();
            acc.add_assign(p.coeff.get(lat.shift(s, [2 * e[0], 2 * e[1], 2 * e[2]])));
            acc.add_assign(p.coeff.get(lat.shift(s, [-2 * e[0], -2 * e[1], -2 * e[2]])));
        }
        out.coeff.set(s, acc);
    }
    out
}

/// The constant field per axis whose value is the mean of the coefficients
/// along that axis — the harmonic part of the 2h Hodge decomposition.
pub fn harmonic_part<S: Scalar>(q: &TwoHChain1<S>) -> TwoHChain1<S> {
    let lat = q.lattice();
    let mut out = TwoHChain1::zeros(lat);
    for ax in 0..3 {
        let m = q.stick[ax].mean();
        for s in lat.sites() {
            out.stick[ax].set(s, m.clone());
        }
    }
    out
}

/// Single basis square as a chain.
pub fn unit_square<S: Scalar>(lat: crate::lattice::Lattice, pl: crate::lattice::Plane, s: crate::lattice::Site) -> Chain2<S> {
    let mut x = Chain2::zeros(lat);
    x.u[pl.index()].set(s, S::one());
    x
}

/// Single infinitesimal stick as a chain.
pub fn unit_inf<S: Scalar>(lat: crate::lattice::Lattice, ax: Axis, s: crate::lattice::Site) -> Chain1<S> {
    let mut x = Chain1::zeros(lat);
    x.inf[ax.index()].set(s, S::one());
    x
}

/// All 3N³ basis squares, plane-major.
pub fn square_basis(lat: crate::lattice::Lattice) -> Vec<(crate::lattice::Plane, crate::lattice::Site)> {
    let mut v = Vec::with_capacity(3 * lat.volume());
    for pl in PLANES {
        for s in lat.sites() {
            v.push((pl, s));
        }
    }
    v
}
