//! Exact integer primitives on the lattice ℤ².
//!
//! Everything here is arbitrary precision. There is no floating point
//! representation of a lattice point anywhere in the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A point of ℤ².
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticeVector {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        LatticeVector::new(0, 0)
    }

    pub fn e1() -> Self {
        LatticeVector::new(1, 0)
    }

    pub fn e2() -> Self {
        LatticeVector::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// gcd of the absolute coordinates; 0 for the zero vector.
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    /// Divides out the content. The zero vector has no primitive part.
    pub fn primitive_part(&self) -> Result<LatticeVector> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.content();
        Ok(LatticeVector::new(&self.x / &g, &self.y / &g))
    }

    pub fn scale(&self, c: &BigInt) -> LatticeVector {
        LatticeVector::new(&self.x * c, &self.y * c)
    }

    /// Sum of absolute coordinates, used to order points along a ray.
    pub fn l1_norm(&self) -> BigInt {
        self.x.abs() + self.y.abs()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a LatticeVector> for &'a LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<'a> Sub<&'a LatticeVector> for &'a LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-&self.x, -&self.y)
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl Mul<&LatticeVector> for &BigInt {
    type Output = LatticeVector;
    fn mul(self, rhs: &LatticeVector) -> LatticeVector {
        rhs.scale(self)
    }
}

/// `a.x * b.y - a.y * b.x`.
pub fn det2(a: &LatticeVector, b: &LatticeVector) -> BigInt {
    &a.x * &b.y - &a.y * &b.x
}

pub fn is_primitive(v: &LatticeVector) -> bool {
    !v.is_zero() && v.content().is_one()
}

/// Sign of a nonzero determinant; the orientation of an ordered pair of
/// generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

impl Orientation {
    /// `None` for a zero determinant.
    pub fn of_det(det: &BigInt) -> Option<Orientation> {
        if det.is_positive() {
            Some(Orientation::CounterClockwise)
        } else if det.is_negative() {
            Some(Orientation::Clockwise)
        } else {
            None
        }
    }

    pub fn sign(self) -> BigInt {
        match self {
            Orientation::CounterClockwise => BigInt::one(),
            Orientation::Clockwise => -BigInt::one(),
        }
    }
}

/// Some `w` with `det2(v, w) == orientation.sign()`, built from the extended
/// gcd of the coordinates. Any valid representative may be returned.
pub fn unimodular_companion(v: &LatticeVector, orientation: Orientation) -> Result<LatticeVector> {
    if !is_primitive(v) {
        return Err(Error::NotPrimitive(v.clone()));
    }
    // a*x + b*y = g with g = ±1
    let egcd = v.x.extended_gcd(&v.y);
    let s = orientation.sign() * &egcd.gcd;
    let w = LatticeVector::new(-(&egcd.y * &s), &egcd.x * &s);
    debug_assert_eq!(det2(v, &w), orientation.sign());
    Ok(w)
}

/// A 2D cone `⟨v1, v2⟩` with primitive, non-collinear generators.
///
/// The generator order is significant: resolution walks from `v1` to `v2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone2 {
    v1: LatticeVector,
    v2: LatticeVector,
}

impl Cone2 {
    pub fn new(v1: LatticeVector, v2: LatticeVector) -> Result<Cone2> {
        for v in [&v1, &v2] {
            if v.is_zero() {
                return Err(Error::ZeroVector);
            }
            if !is_primitive(v) {
                return Err(Error::NotPrimitive(v.clone()));
            }
        }
        if det2(&v1, &v2).is_zero() {
            if v1 == -&v2 {
                return Err(Error::Antipodal(Box::new(v1), Box::new(v2)));
            }
            return Err(Error::Collinear(Box::new(v1), Box::new(v2)));
        }
        Ok(Cone2 { v1, v2 })
    }

    /// Like [`Cone2::new`], but first replaces each generator by its
    /// primitive part. A cone only depends on the real span of its rays.
    pub fn primitivized(v1: LatticeVector, v2: LatticeVector) -> Result<Cone2> {
        Cone2::new(v1.primitive_part()?, v2.primitive_part()?)
    }

    pub fn v1(&self) -> &LatticeVector {
        &self.v1
    }

    pub fn v2(&self) -> &LatticeVector {
        &self.v2
    }

    pub fn det(&self) -> BigInt {
        det2(&self.v1, &self.v2)
    }

    pub fn orientation(&self) -> Orientation {
        Orientation::of_det(&self.det()).expect("cone determinant is nonzero")
    }

    /// True iff `u` is a nonnegative real combination of the generators.
    pub fn contains(&self, u: &LatticeVector) -> bool {
        let s = self.orientation().sign();
        !(det2(&self.v1, u) * &s).is_negative() && !(det2(u, &self.v2) * &s).is_negative()
    }
}

impl fmt::Display for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.v1, self.v2)
    }
}

/// Integer 2×2 matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Matrix2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Matrix2 {
        Matrix2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Matrix2 {
        Matrix2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            &self.a * &v.x + &self.b * &v.y,
            &self.c * &v.x + &self.d * &v.y,
        )
    }

    pub fn compose(&self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}
