//! Complete 2D fans: weighted projective planes `P(1, m, n)`, Hirzebruch
//! surfaces, their minimal resolutions and refinement checks.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::desing::{desingularize, DesingularizationTrace};
use crate::error::{Error, Result};
use crate::lattice::{det2, is_primitive, Cone2, LatticeVector};

/// Counterclockwise angle order starting at `(1, 0)`: first the half plane
/// `y > 0` (plus the positive x axis), then the rest.
fn angle_cmp(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    let half = |v: &LatticeVector| {
        if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let d = det2(a, b);
        if d.is_positive() {
            Ordering::Less
        } else if d.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// A complete fan in ℤ², stored as its rays in canonical counterclockwise
/// order. Maximal cones are the cyclically adjacent pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan2D {
    rays: Vec<LatticeVector>,
}

impl Fan2D {
    /// Sorts the rays counterclockwise from `(1, 0)` and checks that every
    /// adjacent pair spans a strictly convex cone.
    pub fn from_rays(mut rays: Vec<LatticeVector>) -> Result<Fan2D> {
        if rays.len() < 3 {
            return Err(Error::InvalidFan(format!(
                "a complete fan needs at least 3 rays, got {}",
                rays.len()
            )));
        }
        if let Some(bad) = rays.iter().find(|r| !is_primitive(r)) {
            return Err(Error::NotPrimitive(bad.clone()));
        }
        rays.sort_by(angle_cmp);
        let n = rays.len();
        for i in 0..n {
            let (a, b) = (&rays[i], &rays[(i + 1) % n]);
            if a == b {
                return Err(Error::InvalidFan(format!("duplicate ray {a}")));
            }
            if !det2(a, b).is_positive() {
                return Err(Error::InvalidFan(format!(
                    "rays {a} and {b} do not span a strictly convex cone"
                )));
            }
        }
        Ok(Fan2D { rays })
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains_ray(&self, r: &LatticeVector) -> bool {
        self.rays.contains(r)
    }

    /// Index pairs `(i, i + 1 mod len)` of the maximal cones.
    pub fn max_cone_indices(&self) -> Vec<(usize, usize)> {
        let n = self.rays.len();
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    /// The maximal cone starting at ray `i`, oriented counterclockwise.
    pub fn cone(&self, i: usize) -> Cone2 {
        let n = self.rays.len();
        Cone2::new(self.rays[i].clone(), self.rays[(i + 1) % n].clone())
            .expect("fan cones are valid")
    }

    pub fn cones(&self) -> impl Iterator<Item = Cone2> + '_ {
        (0..self.rays.len()).map(|i| self.cone(i))
    }

    pub fn is_smooth(&self) -> bool {
        self.cones().all(|c| c.det().is_one())
    }
}

impl fmt::Display for Fan2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

/// Weights of `P(1, m, n)` with `1 <= m < n` coprime, and `n = m·k + r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightTriple {
    m: BigInt,
    n: BigInt,
    k: BigInt,
    r: BigInt,
}

impl WeightTriple {
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<WeightTriple> {
        let (m, n) = (m.into(), n.into());
        let invalid = |reason| Error::InvalidWeights {
            m: m.clone(),
            n: n.clone(),
            reason,
        };
        if m < BigInt::one() {
            return Err(invalid("weights must be positive"));
        }
        if m >= n {
            return Err(invalid("expected m < n"));
        }
        if !m.gcd(&n).is_one() {
            return Err(invalid("weights must be coprime"));
        }
        let (k, r) = if m.is_one() {
            (n.clone(), BigInt::zero())
        } else {
            n.div_rem(&m)
        };
        Ok(WeightTriple { m, n, k, r })
    }

    /// Accepts the two weights in either order; swapping them is the
    /// lattice isomorphism exchanging `e1` and `e2`.
    pub fn normalized(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<WeightTriple> {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            WeightTriple::new(a, b)
        } else {
            WeightTriple::new(b, a)
        }
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn ceil_ratio(&self) -> BigInt {
        if self.r.is_zero() {
            self.k.clone()
        } else {
            &self.k + 1u32
        }
    }

    pub fn floor_ratio(&self) -> BigInt {
        self.k.clone()
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(1, {}, {})", self.m, self.n)
    }
}

fn v(x: impl Into<BigInt>, y: impl Into<BigInt>) -> LatticeVector {
    LatticeVector::new(x, y)
}

/// Rays `e1, e2, -m·e1 - n·e2`.
pub fn wps_fan(w: &WeightTriple) -> Fan2D {
    Fan2D::from_rays(vec![v(1, 0), v(0, 1), v(-w.m(), -w.n())]).expect("P(1,m,n) fan is valid")
}

/// Rays `e1, e2, -e1 - e2`.
pub fn projective_plane_fan() -> Fan2D {
    Fan2D::from_rays(vec![v(1, 0), v(0, 1), v(-1, -1)]).expect("P^2 fan is valid")
}

/// Rays `e1, e2, -e1 - n·e2, -e2` of the Hirzebruch surface `F_n`.
pub fn hirzebruch_fan(n: impl Into<BigInt>) -> Result<Fan2D> {
    let n = n.into();
    if n.is_negative() {
        return Err(Error::InvalidFamily(format!(
            "Hirzebruch index must be >= 0, got {n}"
        )));
    }
    Fan2D::from_rays(vec![v(1, 0), v(0, 1), v(-1, -n), v(0, -1)])
}

/// A maximal cone with `|det| > 1`, identified by the index of its first ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SingularCone {
    pub index: usize,
    pub det: BigInt,
}

pub fn singular_cone_indices(fan: &Fan2D) -> Vec<SingularCone> {
    fan.cones()
        .enumerate()
        .filter_map(|(index, c)| {
            let det = c.det().abs();
            (!det.is_one()).then_some(SingularCone { index, det })
        })
        .collect()
}

/// The smooth fan obtained by resolving every singular cone of `fan`,
/// together with the trace of each resolution, in cone order.
pub fn resolve_fan(fan: &Fan2D) -> Result<(Fan2D, Vec<DesingularizationTrace>)> {
    let mut rays = Vec::new();
    let mut traces = Vec::new();
    for (i, c) in fan.cones().enumerate() {
        rays.push(fan.rays()[i].clone());
        if c.det().is_one() {
            continue;
        }
        let t = desingularize(&c)?;
        rays.extend(t.interior_rays().iter().cloned());
        traces.push(t);
    }
    Ok((Fan2D::from_rays(rays)?, traces))
}

/// The fan of `D(1, m, n)`, the minimal resolution of `P(1, m, n)`.
pub fn minimal_desingularization(w: &WeightTriple) -> Result<Fan2D> {
    resolve_fan(&wps_fan(w)).map(|(fan, _)| fan)
}

/// Families whose minimal resolution has a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `D(1, 2, 2k + 1)`, `k >= 1`.
    M2 { k: BigInt },
    /// `D(1, m, mk + 1)`, `m >= 2`, `k >= 1`.
    R1 { m: BigInt, k: BigInt },
    /// `D(1, m, mk + m - 1)`, `m >= 2`, `k >= 1`.
    RM1 { m: BigInt, k: BigInt },
    /// `F_n = D(1, 1, n)`, `n >= 2`.
    Hirz { n: BigInt },
}

impl Family {
    fn validate(&self) -> Result<()> {
        let one = BigInt::one();
        let two = BigInt::from(2);
        let ok = match self {
            Family::M2 { k } => *k >= one,
            Family::R1 { m, k } | Family::RM1 { m, k } => *m >= two && *k >= one,
            Family::Hirz { n } => *n >= two,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("{self:?}")))
        }
    }

    /// The weights whose resolution this family describes.
    pub fn weights(&self) -> Result<WeightTriple> {
        self.validate()?;
        match self {
            Family::M2 { k } => WeightTriple::new(2, k * 2u32 + 1u32),
            Family::R1 { m, k } => WeightTriple::new(m.clone(), m * k + 1u32),
            Family::RM1 { m, k } => WeightTriple::new(m.clone(), m * k + m - 1u32),
            Family::Hirz { n } => WeightTriple::new(1, n.clone()),
        }
    }
}

/// The literal ray lists of the closed-form families.
pub fn closed_form_fan(family: &Family) -> Result<Fan2D> {
    family.validate()?;
    let rays = match family {
        Family::M2 { k } => vec![
            v(1, 0),
            v(0, 1),
            v(-1, -k),
            v(-2, -(k * 2u32 + 1u32)),
            v(-1, -(k + 1u32)),
            v(0, -1),
        ],
        Family::R1 { m, k } => {
            let mut rays = vec![v(1, 0), v(0, 1), v(-1, -k)];
            let mut j = BigInt::zero();
            while j <= *m {
                rays.push(v(-&j, -(&j * k + 1u32)));
                j += 1u32;
            }
            rays
        }
        Family::RM1 { m, k } => {
            let mut rays = vec![v(1, 0), v(0, -1), v(-1, -(k + 1u32))];
            let mut j = BigInt::zero();
            while j <= *m {
                rays.push(v(-&j, -(&j * k + &j - 1u32)));
                j += 1u32;
            }
            rays
        }
        Family::Hirz { n } => return hirzebruch_fan(n.clone()),
    };
    Fan2D::from_rays(rays)
}

/// True iff every ray of `coarse` is a ray of `fine` and every maximal
/// cone of `fine` lies inside a maximal cone of `coarse`, so that the
/// identity of ℤ² induces a toric morphism `X(fine) -> X(coarse)`.
pub fn is_refinement(fine: &Fan2D, coarse: &Fan2D) -> bool {
    if !coarse.rays().iter().all(|r| fine.contains_ray(r)) {
        return false;
    }
    let coarse_cones: Vec<Cone2> = coarse.cones().collect();
    fine.cones().all(|fc| {
        coarse_cones
            .iter()
            .any(|cc| cc.contains(fc.v1()) && cc.contains(fc.v2()))
    })
}

/// For each ray `u_i` the integer `a_i` with `u_{i-1} + u_{i+1} = -a_i·u_i`;
/// this is the self-intersection of the divisor `D(u_i)`.
pub fn self_intersections(fan: &Fan2D) -> Result<Vec<BigInt>> {
    for (index, c) in fan.cones().enumerate() {
        let det = c.det();
        if !det.is_one() {
            return Err(Error::NotSmooth { index, det });
        }
    }
    let rays = fan.rays();
    let n = rays.len();
    (0..n)
        .map(|i| {
            let u = &rays[i];
            let s = &rays[(i + n - 1) % n] + &rays[(i + 1) % n];
            let a = if !u.x.is_zero() {
                -(&s.x / &u.x)
            } else {
                -(&s.y / &u.y)
            };
            if u.scale(&-&a) != s {
                return Err(Error::InvariantViolation(format!(
                    "neighbors of {u} do not sum to a multiple of it"
                )));
            }
            Ok(a)
        })
        .collect()
}
