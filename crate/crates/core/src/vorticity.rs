//! The discrete curl D = *∂ and the nonlinear Euler term i(X ⋔ *∂X), computed
//! by two independently implemented paths: a generic route through the chain
//! products (test oracle) and the production O(N³) stencil route through
//! smeared fields.

use crate::chain::{Chain1, Chain2};
use crate::intersection::{imap, intersect22};
use crate::lattice::{Field, Lattice, Site, AXES};
use crate::scalar::Scalar;

/// v = *∂X componentwise:
/// v^{yz}_a = u^{zx}_{a−k} − u^{zx}_{a+k} + u^{xy}_{a+j} − u^{xy}_{a−j},
/// and the two cyclic analogues.
pub fn curl<S: Scalar>(x: &Chain2<S>) -> Chain2<S> {
    let lat = x.lattice();
    let mut out = Chain2::zeros(lat);
    for n in 0..3 {
        let p = (n + 1) % 3; // contributes along axis e_{n+2}
        let q = (n + 2) % 3;
        let ep = AXES[p].unit();
        let eq = AXES[q].unit();
        for s in lat.sites() {
            let mut acc = x.u[p].get(lat.shift(s, [-eq[0], -eq[1], -eq[2]])).clone();
            acc.sub_assign(x.u[p].get(lat.shift(s, eq)));
            acc.add_assign(x.u[q].get(lat.shift(s, ep)));
            acc.sub_assign(x.u[q].get(lat.shift(s, [-ep[0], -ep[1], -ep[2]])));
            out.u[n].set(s, acc);
        }
    }
    out
}

/// i(X ⋔ *∂X) assembled through the chain products; retained as the oracle
/// for the optimized path.
pub fn nonlinear_generic<S: Scalar>(x: &Chain2<S>) -> Chain1<S> {
    imap(&intersect22(x, &curl(x)))
}

fn shifted<S: Scalar>(f: &Field<S>, lat: Lattice, s: Site, ax: usize, d: i64) -> S {
    let e = AXES[ax].unit();
    f.get(lat.shift(s, [d * e[0], d * e[1], d * e[2]])).clone()
}

/// Three-term axis smear: f + (1/2) f(·−e) + (1/2) f(·+e).
fn smear<S: Scalar>(f: &Field<S>, ax: usize) -> Field<S> {
    let lat = f.lattice();
    let half = S::from_ratio(1, 2);
    let mut out = Field::zeros(lat);
    for s in lat.sites() {
        let mut acc = f.get(s).clone();
        acc.add_assign(&half.mul(&shifted(f, lat, s, ax, -1)));
        acc.add_assign(&half.mul(&shifted(f, lat, s, ax, 1)));
        out.set(s, acc);
    }
    out
}

/// The twelve smeared fields of the optimized nonlinear term: `u[p][r]` is the
/// three-term r-smear of the orientation-p coefficients, `v[p][r]` the
/// ten-term combination equal to the r-smear of the curl coefficients
/// (the two analytically cancelling terms already dropped).  Only the six
/// off-diagonal (p ≠ r) entries of each are populated.
pub struct SmearedFields<S> {
    pub u: [[Option<Field<S>>; 3]; 3],
    pub v: [[Option<Field<S>>; 3]; 3],
}

impl<S: Scalar> SmearedFields<S> {
    pub fn build(x: &Chain2<S>) -> Self {
        let mut u: [[Option<Field<S>>; 3]; 3] = [[None, None, None], [None, None, None], [None, None, None]];
        let mut v: [[Option<Field<S>>; 3]; 3] = [[None, None, None], [None, None, None], [None, None, None]];
        for p in 0..3 {
            for r in 0..3 {
                if p == r {
                    continue;
                }
                u[p][r] = Some(smear(&x.u[p], r));
                v[p][r] = Some(ten_term_v(x, p, r));
            }
        }
        SmearedFields { u, v }
    }

    pub fn u_field(&self, plane: usize, axis: usize) -> &Field<S> {
        self.u[plane][axis].as_ref().expect("diagonal smear is unused")
    }

    pub fn v_field(&self, plane: usize, axis: usize) -> &Field<S> {
        self.v[plane][axis].as_ref().expect("diagonal smear is unused")
    }
}

/// The ten-term expansion of the r-smear of v^{plane}.  The plain part is the
/// four-term curl stencil; the 1/2 part collects the six surviving shifts.
fn ten_term_v<S: Scalar>(x: &Chain2<S>, plane: usize, r: usize) -> Field<S> {
    let lat = x.lattice();
    let half = S::from_ratio(1, 2);
    // curl stencil for this plane: v^n = u^p(·−e_q) − u^p(·+e_q) + u^q(·+e_p) − u^q(·−e_p)
    let n = plane;
    let p = (n + 1) % 3;
    let q = (n + 2) % 3;
    let mut out = Field::zeros(lat);
    for s in lat.sites() {
        let mut acc = sh2(x, p, lat, s, q, -1, 0, 0);
        acc.sub_assign(&sh2(x, p, lat, s, q, 1, 0, 0));
        acc.add_assign(&sh2(x, q, lat, s, p, 1, 0, 0));
        acc.sub_assign(&sh2(x, q, lat, s, p, -1, 0, 0));
        // the half part: smearing axis r coincides with the stencil axis of one
        // of the two contributing orientations; that orientation's terms
        // telescope to a ±2-shift pair and the other spreads over r = ±1.
        let mut halfacc = S::zero();
        if r == q {
            // u^p stencil axis is q = r: telescoped pair u^p(·∓2e_q)
            halfacc.add_assign(&sh2(x, p, lat, s, q, -2, 0, 0));
            halfacc.sub_assign(&sh2(x, p, lat, s, q, 2, 0, 0));
            for dr in [-1i64, 1] {
                halfacc.add_assign(&sh2(x, q, lat, s, p, 1, r, dr));
                halfacc.sub_assign(&sh2(x, q, lat, s, p, -1, r, dr));
            }
        } else {
            // r == p: u^q stencil axis is p = r: telescoped pair u^q(·±2e_p)
            halfacc.add_assign(&sh2(x, q, lat, s, p, 2, 0, 0));
            halfacc.sub_assign(&sh2(x, q, lat, s, p, -2, 0, 0));
            for dr in [-1i64, 1] {
                halfacc.add_assign(&sh2(x, p, lat, s, q, -1, r, dr));
                halfacc.sub_assign(&sh2(x, p, lat, s, q, 1, r, dr));
            }
        }
        acc.add_assign(&half.mul(&halfacc));
        out.set(s, acc);
    }
    out
}

/// x.u[pl] at s + d1·e_{a1} + d2·e_{a2}.
fn sh2<S: Scalar>(x: &Chain2<S>, pl: usize, lat: Lattice, s: Site, a1: usize, d1: i64, a2: usize, d2: i64) -> S {
    let e1 = AXES[a1].unit();
    let e2 = AXES[a2].unit();
    x.u[pl]
        .get(lat.shift(s, [d1 * e1[0] + d2 * e2[0], d1 * e1[1] + d2 * e2[1], d1 * e1[2] + d2 * e2[2]]))
        .clone()
}

/// The production right-hand side i(X ⋔ *∂X): per output axis e the 18-term
/// combination of U^{(e+1)-plane, (e+2)-smear} with V^{(e+2)-plane, (e+1)-smear}
/// (and their swap) at offsets 0, ±e with weights 4, 2, 1.
pub fn nonlinear_optimized<S: Scalar>(x: &Chain2<S>) -> Chain1<S> {
    let sf = SmearedFields::build(x);
    nonlinear_from_smears(x.lattice(), &sf)
}

pub fn nonlinear_from_smears<S: Scalar>(lat: Lattice, sf: &SmearedFields<S>) -> Chain1<S> {
    let mut out = Chain1::zeros(lat);
    let two = S::from_int(2);
    let four = S::from_int(4);
    for e in 0..3 {
        let p1 = (e + 1) % 3;
        let p2 = (e + 2) % 3;
        let ua = sf.u_field(p1, p2); // U first factor
        let vb = sf.v_field(p2, p1); // V second factor
        let ub = sf.u_field(p2, p1); // swapped pair
        let va = sf.v_field(p1, p2);
        let at = |f: &Field<S>, s: Site, d: i64| shifted(f, lat, s, e, d);
        for s in lat.sites() {
            let mut acc = S::zero();
            // (a1, b1) = (c−e, c+e) and (c+e, c−e), weight 1
            acc.add_assign(&at(ua, s, -1).mul(&at(vb, s, 1)));
            acc.sub_assign(&at(ub, s, 1).mul(&at(va, s, -1)));
            acc.add_assign(&at(ua, s, 1).mul(&at(vb, s, -1)));
            acc.sub_assign(&at(ub, s, -1).mul(&at(va, s, 1)));
            // (c, c±e), weight 2
            let mut w2 = at(ua, s, 0).mul(&at(vb, s, 1));
            w2.sub_assign(&at(ub, s, 1).mul(&at(va, s, 0)));
            w2.add_assign(&at(ua, s, 0).mul(&at(vb, s, -1)));
            w2.sub_assign(&at(ub, s, -1).mul(&at(va, s, 0)));
            // (c±e, c), weight 2
            w2.add_assign(&at(ua, s, 1).mul(&at(vb, s, 0)));
            w2.sub_assign(&at(ub, s, 0).mul(&at(va, s, 1)));
            w2.add_assign(&at(ua, s, -1).mul(&at(vb, s, 0)));
            w2.sub_assign(&at(ub, s, 0).mul(&at(va, s, -1)));
            acc.add_assign(&two.mul(&w2));
            // (c, c), weight 4
            let mut w4 = at(ua, s, 0).mul(&at(vb, s, 0));
            w4.sub_assign(&at(ub, s, 0).mul(&at(va, s, 0)));
            acc.add_assign(&four.mul(&w4));
            // (c±e, c±e), weight 1
            acc.add_assign(&at(ua, s, 1).mul(&at(vb, s, 1)));
            acc.sub_assign(&at(ub, s, 1).mul(&at(va, s, 1)));
            acc.add_assign(&at(ua, s, -1).mul(&at(vb, s, -1)));
            acc.sub_assign(&at(ub, s, -1).mul(&at(va, s, -1)));
            out.inf[e].set(s, acc);
        }
    }
    out
}
