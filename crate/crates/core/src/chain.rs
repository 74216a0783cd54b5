//! The graded chain spaces.
//!
//! - [`Chain0`]: coefficients of points, one field.
//! - [`Chain1`]: infinitesimal sticks (3 fields, indexed by site) plus h-sticks
//!   (3 fields, indexed by the lower endpoint along the axis); dim 6N³.
//! - [`TwoHChain1`]: 2h-sticks indexed by their centre, an alternative basis of
//!   the h-stick span for odd N; dim 3N³.
//! - [`Chain2`]: 2h-squares of the three orientations indexed by their centre;
//!   dim 3N³.  The fluid state lives here.

use crate::lattice::{Field, Lattice};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Chain0<S> {
    pub coeff: Field<S>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Chain1<S> {
    /// Coefficient of the infinitesimal stick (e)_a, per axis.
    pub inf: [Field<S>; 3],
    /// Coefficient of the h-stick with lower endpoint a along the axis.
    pub hstick: [Field<S>; 3],
}

#[derive(Clone, PartialEq, Debug)]
pub struct TwoHChain1<S> {
    /// Coefficient of the 2h-stick centred at a along the axis.
    pub stick: [Field<S>; 3],
}

#[derive(Clone, PartialEq, Debug)]
pub struct Chain2<S> {
    /// Coefficient of the 2h-square of each orientation centred at a,
    /// indexed by `Plane`.
    pub u: [Field<S>; 3],
}

fn three<S: Scalar>(lat: Lattice) -> [Field<S>; 3] {
    [Field::zeros(lat), Field::zeros(lat), Field::zeros(lat)]
}

impl<S: Scalar> Chain0<S> {
    pub fn zeros(lat: Lattice) -> Self {
        Chain0 { coeff: Field::zeros(lat) }
    }
    pub fn lattice(&self) -> Lattice {
        self.coeff.lattice()
    }
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl<S: Scalar> Chain1<S> {
    pub fn zeros(lat: Lattice) -> Self {
        Chain1 { inf: three(lat), hstick: three(lat) }
    }
    pub fn lattice(&self) -> Lattice {
        self.inf[0].lattice()
    }
    pub fn is_zero(&self) -> bool {
        self.inf.iter().all(Field::is_zero) && self.hstick.iter().all(Field::is_zero)
    }
    pub fn inf_is_zero(&self) -> bool {
        self.inf.iter().all(Field::is_zero)
    }
    pub fn hstick_is_zero(&self) -> bool {
        self.hstick.iter().all(Field::is_zero)
    }
}

impl<S: Scalar> TwoHChain1<S> {
    pub fn zeros(lat: Lattice) -> Self {
        TwoHChain1 { stick: three(lat) }
    }
    pub fn lattice(&self) -> Lattice {
        self.stick[0].lattice()
    }
    pub fn is_zero(&self) -> bool {
        self.stick.iter().all(Field::is_zero)
    }
    pub fn add(&mut self, o: &Self) {
        for (a, b) in self.stick.iter_mut().zip(&o.stick) {
            a.add_field(b);
        }
    }
    pub fn sub(&mut self, o: &Self) {
        for (a, b) in self.stick.iter_mut().zip(&o.stick) {
            a.sub_field(b);
        }
    }
}

impl<S: Scalar> Chain2<S> {
    pub fn zeros(lat: Lattice) -> Self {
        Chain2 { u: three(lat) }
    }
    pub fn lattice(&self) -> Lattice {
        self.u[0].lattice()
    }
    pub fn is_zero(&self) -> bool {
        self.u.iter().all(Field::is_zero)
    }
    pub fn add(&mut self, o: &Self) {
        for (a, b) in self.u.iter_mut().zip(&o.u) {
            a.add_field(b);
        }
    }
    pub fn sub(&mut self, o: &Self) {
        for (a, b) in self.u.iter_mut().zip(&o.u) {
            a.sub_field(b);
        }
    }
    pub fn scale(&mut self, f: &S) {
        for a in &mut self.u {
            a.scale_assign(f);
        }
    }
    /// self += f * o
    pub fn axpy(&mut self, f: &S, o: &Self) {
        for (a, b) in self.u.iter_mut().zip(&o.u) {
            a.axpy(f, b);
        }
    }
}

impl Chain2<f64> {
    pub fn linf(&self) -> f64 {
        self.u.iter().fold(0.0, |m, f| m.max(f.linf()))
    }
}
