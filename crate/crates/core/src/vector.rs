//! Three-vectors over [`Real`] and over [`ExactQ5`].

use std::ops::{Add, Neg, Sub};

use crate::scalar::{ExactQ5, Real};

/// A point or direction with certified-real coordinates.
#[derive(Clone, Debug)]
pub struct Vec3(pub [Real; 3]);

impl Vec3 {
    pub fn new(x: Real, y: Real, z: Real) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3([Real::zero(), Real::zero(), Real::zero()])
    }

    pub fn from_exact(p: &ExactVec3) -> Self {
        Vec3(p.clone().map(Real::exact))
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3([Real::from_int(x), Real::from_int(y), Real::from_int(z)])
    }

    /// All three coordinates when they are exact.
    pub fn as_exact(&self) -> Option<ExactVec3> {
        let [x, y, z] = &self.0;
        Some([
            x.as_exact()?.clone(),
            y.as_exact()?.clone(),
            z.as_exact()?.clone(),
        ])
    }

    pub fn x(&self) -> &Real {
        &self.0[0]
    }

    pub fn y(&self) -> &Real {
        &self.0[1]
    }

    pub fn z(&self) -> &Real {
        &self.0[2]
    }

    pub fn dot(&self, o: &Vec3) -> Real {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        a * d + b * e + c * f
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        Vec3([b * f - c * e, c * d - a * f, a * e - b * d])
    }

    pub fn scale(&self, k: &Real) -> Vec3 {
        Vec3(self.0.clone().map(|c| &c * k))
    }

    pub fn div(&self, k: &Real) -> Vec3 {
        Vec3(self.0.clone().map(|c| &c / k))
    }

    pub fn norm_squared(&self) -> Real {
        self.dot(self)
    }

    pub fn approx(&self) -> [f64; 3] {
        [self.0[0].approx(), self.0[1].approx(), self.0[2].approx()]
    }
}

impl<'a> Add<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn add(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl<'a> Sub<&'a Vec3> for &'a Vec3 {
    type Output = Vec3;
    fn sub(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3(self.0.clone().map(|c| -c))
    }
}

/// Mean of a nonempty list of points.
pub fn centroid(points: &[Vec3]) -> Vec3 {
    assert!(!points.is_empty(), "centroid of no points");
    let sum = points.iter().skip(1).fold(points[0].clone(), |acc, p| &acc + p);
    sum.div(&Real::from_int(points.len() as i64))
}

pub type ExactVec3 = [ExactQ5; 3];

pub fn exact_sub(a: &ExactVec3, b: &ExactVec3) -> ExactVec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn exact_add(a: &ExactVec3, b: &ExactVec3) -> ExactVec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn exact_dot(a: &ExactVec3, b: &ExactVec3) -> ExactQ5 {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn exact_cross(a: &ExactVec3, b: &ExactVec3) -> ExactVec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn exact_scale(a: &ExactVec3, k: &ExactQ5) -> ExactVec3 {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

pub fn exact_is_zero(a: &ExactVec3) -> bool {
    a.iter().all(ExactQ5::is_zero)
}

/// Lexicographic comparison of exact coordinates.
pub fn exact_cmp(a: &ExactVec3, b: &ExactVec3) -> std::cmp::Ordering {
    a[0].cmp(&b[0])
        .then_with(|| a[1].cmp(&b[1]))
        .then_with(|| a[2].cmp(&b[2]))
}
