//! Minimal resolution of a single 2D cone.
//!
//! A cone `⟨v1, v2⟩` is normalized to `v2 = p0·v1 + q0·n1` where `{v1, n1}`
//! is a lattice basis with the cone's orientation, `q0 = |det(v1, v2)|` and
//! `0 < p0 <= q0`. The smooth cone is exactly `p0 = q0 = 1`. Otherwise
//! `q0 / (q0 - p0) = [[b_1, ..., b_s]]` and the subdivision rays follow from
//!
//! ```text
//! l_{j+1} = l_j + n_{j+1}
//! n_{j+1} = (b_j - 2)·l_{j-1} + (b_j - 1)·n_j
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::hjcfrac::{hj_expand, HJExpansion};
use crate::lattice::{det2, unimodular_companion, Cone2, LatticeVector, Orientation};

/// Normalized starting data for the subdivision recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InitData {
    pub n1: LatticeVector,
    pub p0: BigInt,
    pub q0: BigInt,
}

impl InitData {
    pub fn is_smooth(&self) -> bool {
        self.p0 == self.q0
    }
}

/// Everything produced while resolving one cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DesingularizationTrace {
    pub cone: Cone2,
    pub init: InitData,
    pub expansion: HJExpansion,
    /// `l_0 = v1, l_1, ..., l_{s+1} = v2`.
    pub rays: Vec<LatticeVector>,
    /// `n_1, ..., n_{s+1}`.
    pub companions: Vec<LatticeVector>,
    /// `-b_1, ..., -b_s`, aligned with the interior rays `l_1, ..., l_s`.
    pub self_intersections: Vec<BigInt>,
}

impl DesingularizationTrace {
    pub fn interior_rays(&self) -> &[LatticeVector] {
        &self.rays[1..self.rays.len() - 1]
    }

    pub fn orientation(&self) -> Orientation {
        self.cone.orientation()
    }

    /// The smooth subcones `⟨l_j, l_{j+1}⟩`.
    pub fn subcones(&self) -> impl Iterator<Item = (&LatticeVector, &LatticeVector)> {
        self.rays.windows(2).map(|w| (&w[0], &w[1]))
    }
}

pub fn is_smooth_cone(cone: &Cone2) -> bool {
    cone.det().abs().is_one()
}

/// Picks the unique companion `n1` for which `p0` lands in `(0, q0]`.
pub fn init_data(cone: &Cone2) -> InitData {
    let orientation = cone.orientation();
    let sign = orientation.sign();
    let (v1, v2) = (cone.v1(), cone.v2());
    let q0 = cone.det().abs();
    let w = unimodular_companion(v1, orientation).expect("cone generators are primitive");
    // v2 = a·v1 + q0·w
    let a = &sign * det2(v2, &w);
    let p0 = (&a - 1u32).mod_floor(&q0) + 1u32;
    let t = (&a - &p0) / &q0;
    let n1 = &w + &v1.scale(&t);
    debug_assert_eq!(&(v1.scale(&p0)) + &n1.scale(&q0), *v2);
    InitData { n1, p0, q0 }
}

/// Resolves `cone` into smooth subcones and records the full trace.
pub fn desingularize(cone: &Cone2) -> Result<DesingularizationTrace> {
    let init = init_data(cone);
    let v1 = cone.v1().clone();

    if init.is_smooth() {
        return Ok(DesingularizationTrace {
            cone: cone.clone(),
            rays: vec![v1, cone.v2().clone()],
            companions: vec![init.n1.clone()],
            init,
            expansion: HJExpansion::empty(),
            self_intersections: Vec::new(),
        });
    }

    let expansion = hj_expand(init.q0.clone(), &init.q0 - &init.p0)?;
    let mut rays = Vec::with_capacity(expansion.len() + 2);
    let mut companions = Vec::with_capacity(expansion.len() + 1);
    rays.push(v1.clone());
    rays.push(&v1 + &init.n1);
    companions.push(init.n1.clone());
    for (j, b) in expansion.entries().iter().enumerate() {
        // rays[j] = l_{j-1} relative to b = b_j (1-based); rays[j+1] = l_j
        let n_next = &rays[j].scale(&(b - 2u32)) + &companions[j].scale(&(b - 1u32));
        let l_next = &rays[j + 1] + &n_next;
        companions.push(n_next);
        rays.push(l_next);
    }

    if rays.last() != Some(cone.v2()) {
        return Err(Error::InvariantViolation(format!(
            "resolution of {cone} ended at {} instead of {}",
            rays.last().expect("nonempty"),
            cone.v2()
        )));
    }

    let self_intersections = expansion.entries().iter().map(|b| -b).collect();
    Ok(DesingularizationTrace {
        cone: cone.clone(),
        init,
        expansion,
        rays,
        companions,
        self_intersections,
    })
}

/// Rays from the three-term recurrence `l_{j+1} = b_j·l_j - l_{j-1}`,
/// seeded by `l_0 = v1` and `l_1 = v1 + n1`. For the smooth case this is
/// `[v1, v1 + n1]`.
pub fn rays_by_three_term(v1: &LatticeVector, n1: &LatticeVector, exp: &HJExpansion) -> Vec<LatticeVector> {
    let mut rays = vec![v1.clone(), v1 + n1];
    for b in exp.entries() {
        let j = rays.len() - 1;
        let next = &rays[j].scale(b) - &rays[j - 1];
        rays.push(next);
    }
    rays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hjcfrac::{hj_eval, Rational};
    use crate::lattice::is_primitive;
    use crate::testutil::special_unimodular;
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn cone(a: (i64, i64), b: (i64, i64)) -> Cone2 {
        Cone2::new(v(a.0, a.1), v(b.0, b.1)).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn init_data_examples() {
        let d = init_data(&cone((0, 1), (-2, -5)));
        assert_eq!(d, InitData { n1: v(-1, -3), p0: 1.into(), q0: 2.into() });

        let d = init_data(&cone((1, 0), (-2, -5)));
        assert_eq!(d, InitData { n1: v(-1, -1), p0: 3.into(), q0: 5.into() });

        let d = init_data(&cone((1, 0), (0, 1)));
        assert_eq!(d, InitData { n1: v(-1, 1), p0: 1.into(), q0: 1.into() });
    }

    #[test]
    fn desingularize_examples() {
        let t = desingularize(&cone((1, 0), (-1, -3))).unwrap();
        assert_eq!(t.rays, vec![v(1, 0), v(0, -1), v(-1, -3)]);
        assert_eq!(t.expansion.entries(), ints(&[3]));
        assert_eq!(t.self_intersections, ints(&[-3]));

        let t = desingularize(&cone((0, 1), (-2, -5))).unwrap();
        assert_eq!(t.rays, vec![v(0, 1), v(-1, -2), v(-2, -5)]);
        assert_eq!(t.expansion.entries(), ints(&[2]));

        let t = desingularize(&cone((1, 0), (-2, -5))).unwrap();
        assert_eq!(t.rays, vec![v(1, 0), v(0, -1), v(-1, -3), v(-2, -5)]);
        assert_eq!(t.expansion.entries(), ints(&[3, 2]));
        assert_eq!(t.companions, vec![v(-1, -1), v(-1, -2), v(-1, -2)]);

        let t = desingularize(&cone((1, 0), (0, 1))).unwrap();
        assert_eq!(t.rays, vec![v(1, 0), v(0, 1)]);
        assert!(t.expansion.is_empty());
        assert!(t.self_intersections.is_empty());
    }

    #[test]
    fn hirzebruch_companion_steps() {
        // ⟨e1, -e1 - n e2⟩: n1 = -e1 - e2, n2 = -e1 - (n-1) e2
        for n in 2..20 {
            let t = desingularize(&cone((1, 0), (-1, -n))).unwrap();
            assert_eq!(t.init.p0, BigInt::from(n - 1));
            assert_eq!(t.companions, vec![v(-1, -1), v(-1, -(n - 1))]);
        }
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth_cone(&cone((1, 0), (0, 1))));
        assert!(!is_smooth_cone(&cone((-1, -4), (1, 0))));
        assert!(is_smooth_cone(&cone((0, 1), (1, 0))));
    }

    #[test]
    fn orientation_reversed_cone_gives_reversed_rays() {
        let fwd = desingularize(&cone((1, 0), (-2, -5))).unwrap();
        let back = desingularize(&cone((-2, -5), (1, 0))).unwrap();
        let mut rev = fwd.rays.clone();
        rev.reverse();
        assert_eq!(back.rays, rev);
    }

    #[test]
    fn resolves_large_coordinates() {
        let big: BigInt = "1000000000000000000000000000057".parse().unwrap();
        let c = Cone2::new(LatticeVector::new(1, 0), LatticeVector::new(-3, -big.clone())).unwrap();
        let t = desingularize(&c).unwrap();
        assert_eq!(t.rays.last().unwrap(), c.v2());
        for (a, b) in t.subcones() {
            assert_eq!(det2(a, b), BigInt::from(-1));
        }
    }

    fn primitive_vector() -> impl Strategy<Value = LatticeVector> {
        (-60i64..60, -60i64..60)
            .prop_filter("nonzero", |(x, y)| (*x, *y) != (0, 0))
            .prop_map(|(x, y)| v(x, y).primitive_part().unwrap())
    }

    fn any_cone() -> impl Strategy<Value = Cone2> {
        (primitive_vector(), primitive_vector())
            .prop_filter_map("collinear", |(a, b)| Cone2::new(a, b).ok())
    }

    proptest! {
        #[test]
        fn trace_invariants(c in any_cone()) {
            let t = desingularize(&c).unwrap();
            let d = &t.init;
            let sign = c.orientation().sign();
            prop_assert_eq!(det2(c.v1(), &d.n1), sign.clone());
            prop_assert_eq!(&(c.v1().scale(&d.p0)) + &d.n1.scale(&d.q0), c.v2().clone());
            prop_assert!(d.p0.is_positive() && d.p0 <= d.q0);
            prop_assert_eq!(&d.q0, &c.det().abs());
            prop_assert!(d.p0.gcd(&d.q0).is_one());

            prop_assert_eq!(&t.rays[0], c.v1());
            prop_assert_eq!(t.rays.last().unwrap(), c.v2());
            prop_assert_eq!(t.rays.len(), t.expansion.len() + 2);
            prop_assert!(t.rays.iter().all(is_primitive));
            for (a, b) in t.subcones() {
                prop_assert_eq!(det2(a, b), sign.clone());
            }
            for (j, b) in t.expansion.entries().iter().enumerate() {
                prop_assert!(*b >= BigInt::from(2));
                prop_assert_eq!(&t.rays[j] + &t.rays[j + 2], t.rays[j + 1].scale(b));
            }
            for (l, n) in t.rays.iter().zip(&t.companions) {
                prop_assert_eq!(det2(l, n), sign.clone());
            }
            if !t.expansion.is_empty() {
                prop_assert_eq!(
                    hj_eval(&t.expansion).unwrap(),
                    Rational::new(d.q0.clone(), &d.q0 - &d.p0)
                );
            }
            prop_assert_eq!(rays_by_three_term(c.v1(), &d.n1, &t.expansion), t.rays.clone());
        }

        #[test]
        fn restart_reproduces_tail(c in any_cone()) {
            let t = desingularize(&c).unwrap();
            let s = t.expansion.len();
            for j in 0..=s {
                let sub = Cone2::new(t.rays[j].clone(), c.v2().clone()).unwrap();
                let rt = desingularize(&sub).unwrap();
                prop_assert_eq!(&rt.rays[..], &t.rays[j..]);
                prop_assert_eq!(rt.expansion, t.expansion.tail(j));
            }
        }

        #[test]
        fn unimodular_equivariance(c in any_cone(), u in special_unimodular()) {
            prop_assert_eq!(u.det(), BigInt::from(1));
            let t = desingularize(&c).unwrap();
            let moved = Cone2::new(u.apply(c.v1()), u.apply(c.v2())).unwrap();
            let tm = desingularize(&moved).unwrap();
            let mapped: Vec<_> = t.rays.iter().map(|r| u.apply(r)).collect();
            prop_assert_eq!(tm.rays, mapped);
            prop_assert_eq!(tm.expansion, t.expansion);
        }
    }
}
