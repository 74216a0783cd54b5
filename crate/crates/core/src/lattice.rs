//! Periodic cubic lattice of odd period N, axis/plane enums, and dense scalar
//! fields stored x-fastest.

use crate::error::Error;
use crate::scalar::Scalar;

/// Coordinate axes of the lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
}

/// Square orientations, named by their spanning plane. `Plane::Yz` is
/// orthogonal to `Axis::X` and so on; the star operator pairs the two.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Plane {
    Yz = 0,
    Zx = 1,
    Xy = 2,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
pub const PLANES: [Plane; 3] = [Plane::Yz, Plane::Zx, Plane::Xy];

impl Axis {
    pub fn index(self) -> usize {
        self as usize
    }
    pub fn from_index(i: usize) -> Axis {
        AXES[i]
    }
    /// Cyclic successor: x -> y -> z -> x.
    pub fn next(self) -> Axis {
        AXES[(self as usize + 1) % 3]
    }
    /// The orthogonal plane (x <-> yz, ...).
    pub fn plane(self) -> Plane {
        PLANES[self as usize]
    }
    pub fn unit(self) -> [i64; 3] {
        let mut u = [0i64; 3];
        u[self as usize] = 1;
        u
    }
}

impl Plane {
    pub fn index(self) -> usize {
        self as usize
    }
    pub fn from_index(i: usize) -> Plane {
        PLANES[i]
    }
    /// The orthogonal axis (normal direction).
    pub fn axis(self) -> Axis {
        AXES[self as usize]
    }
}

/// Lattice site; components live in 0..N.
pub type Site = [i64; 3];

/// Periodic lattice with odd period `n >= 3` and spacing fixed to 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Lattice {
    n: usize,
}

impl Lattice {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::BadPeriod { n });
        }
        Ok(Lattice { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn volume(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn wrap(&self, c: i64) -> usize {
        c.rem_euclid(self.n as i64) as usize
    }

    /// Canonical representative of a coordinate difference in (-N/2, N/2].
    pub fn wrap_delta(&self, d: i64) -> i64 {
        let n = self.n as i64;
        let r = d.rem_euclid(n);
        if r > n / 2 {
            r - n
        } else {
            r
        }
    }

    pub fn index(&self, s: Site) -> usize {
        let n = self.n;
        self.wrap(s[0]) + n * (self.wrap(s[1]) + n * self.wrap(s[2]))
    }

    pub fn site(&self, idx: usize) -> Site {
        let n = self.n;
        [(idx % n) as i64, ((idx / n) % n) as i64, ((idx / (n * n)) % n) as i64]
    }

    pub fn shift(&self, s: Site, d: [i64; 3]) -> Site {
        [s[0] + d[0], s[1] + d[1], s[2] + d[2]]
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.volume()).map(move |i| self.site(i))
    }
}

/// Dense scalar field over the lattice, x-fastest storage.
#[derive(Clone, PartialEq, Debug)]
pub struct Field<S> {
    lat: Lattice,
    data: Vec<S>,
}

impl<S: Scalar> Field<S> {
    pub fn zeros(lat: Lattice) -> Self {
        Field { lat, data: vec![S::zero(); lat.volume()] }
    }

    pub fn lattice(&self) -> Lattice {
        self.lat
    }

    pub fn get(&self, s: Site) -> &S {
        &self.data[self.lat.index(s)]
    }

    pub fn set(&mut self, s: Site, v: S) {
        let i = self.lat.index(s);
        self.data[i] = v;
    }

    pub fn add_at(&mut self, s: Site, v: &S) {
        let i = self.lat.index(s);
        self.data[i].add_assign(v);
    }

    pub fn sub_at(&mut self, s: Site, v: &S) {
        let i = self.lat.index(s);
        self.data[i].sub_assign(v);
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn sum(&self) -> S {
        let mut t = S::zero();
        for v in &self.data {
            t.add_assign(v);
        }
        t
    }

    pub fn mean(&self) -> S {
        self.sum().mul(&S::from_ratio(1, self.lat.volume() as i64))
    }

    pub fn scale_assign(&mut self, f: &S) {
        for v in &mut self.data {
            *v = v.mul(f);
        }
    }

    pub fn add_field(&mut self, o: &Field<S>) {
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.add_assign(b);
        }
    }

    pub fn sub_field(&mut self, o: &Field<S>) {
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.sub_assign(b);
        }
    }

    /// self += f * o
    pub fn axpy(&mut self, f: &S, o: &Field<S>) {
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.add_assign(&f.mul(b));
        }
    }

    /// Pointwise dot product (no metric weights).
    pub fn dot(&self, o: &Field<S>) -> S {
        let mut t = S::zero();
        for (a, b) in self.data.iter().zip(&o.data) {
            t.mul_add_assign(a, b);
        }
        t
    }
}

impl Field<f64> {
    pub fn linf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_must_be_odd_and_at_least_three() {
        assert!(Lattice::new(3).is_ok());
        assert!(Lattice::new(7).is_ok());
        assert!(Lattice::new(4).is_err());
        assert!(Lattice::new(1).is_err());
        assert!(Lattice::new(0).is_err());
    }

    #[test]
    fn wrap_delta_is_canonical() {
        let lat = Lattice::new(5).unwrap();
        assert_eq!(lat.wrap_delta(3), -2);
        assert_eq!(lat.wrap_delta(-3), 2);
        assert_eq!(lat.wrap_delta(7), 2);
        let lat3 = Lattice::new(3).unwrap();
        assert_eq!(lat3.wrap_delta(2), -1);
    }

    #[test]
    fn index_is_x_fastest() {
        let lat = Lattice::new(3).unwrap();
        assert_eq!(lat.index([1, 0, 0]), 1);
        assert_eq!(lat.index([0, 1, 0]), 3);
        assert_eq!(lat.index([0, 0, 1]), 9);
        assert_eq!(lat.site(13), [1, 1, 1]);
    }
}
