//! Brute-force verifiers that share no code path with the continued
//! fraction engine.
//!
//! The hull oracle recovers the resolution rays of a cone geometrically:
//! the lattice points on the compact boundary of `conv(σ ∩ ℤ² \ {0})`,
//! walked from `v1` to `v2`, are exactly the rays of the minimal
//! resolution. Only points of the parallelogram `α·v1 + β·v2`,
//! `0 <= α, β <= 1`, are enumerated; the boundary between `v1` and `v2`
//! lies inside the triangle `0, v1, v2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::desing::DesingularizationTrace;
use crate::error::{Error, Result};
use crate::fan::{
    closed_form_fan, hirzebruch_fan, resolve_fan, self_intersections, singular_cone_indices,
    wps_fan, Family, WeightTriple,
};
use crate::hjcfrac::{hj_eval, Rational};
use crate::lattice::{det2, is_primitive, unimodular_companion, Cone2, LatticeVector};

pub const DEFAULT_DET_BOUND: u64 = 200;

/// Boundary lattice points of the cone's hull, from `v1` to `v2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullWitness {
    pub cone: Cone2,
    pub boundary_points: Vec<LatticeVector>,
    /// `is_vertex[i]` is false when `boundary_points[i]` sits in the
    /// interior of a hull edge.
    pub is_vertex: Vec<bool>,
}

impl HullWitness {
    /// Strict corners of the boundary path.
    pub fn vertices(&self) -> Vec<LatticeVector> {
        self.boundary_points
            .iter()
            .zip(&self.is_vertex)
            .filter(|(_, &v)| v)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// The predicted resolution rays: every lattice point on the boundary
    /// path. Edge-interior points correspond to `b_j = 2`.
    pub fn predicted_rays(&self) -> &[LatticeVector] {
        &self.boundary_points
    }
}

/// Enumerates the parallelogram of `cone` and returns the lattice points
/// on the boundary of its hull facing the origin.
pub fn hull_boundary_rays(cone: &Cone2, det_bound: &BigInt) -> Result<HullWitness> {
    let det = cone.det().abs();
    if det > *det_bound {
        return Err(Error::DeterminantBoundExceeded {
            det,
            bound: det_bound.clone(),
        });
    }
    let (v1, v2) = (cone.v1(), cone.v2());
    // Work in the frame {v1, w}: v1 = (1, 0), v2 = (a, det). A unimodular
    // change of coordinates preserves lattice points and convexity, and the
    // parallelogram holds only O(det) of them.
    let w = unimodular_companion(v1, cone.orientation())?;
    let a = cone.orientation().sign() * det2(v2, &w);
    let to_lattice = |x: &BigInt, y: &BigInt| &v1.scale(x) + &w.scale(y);

    let mut points: Vec<(BigInt, BigInt)> = Vec::new();
    let mut y = BigInt::zero();
    while y <= det {
        // α = x - a·y/det in [0, 1]
        let ay = &a * &y;
        let lo = ay.div_ceil(&det);
        let hi = ay.div_floor(&det) + 1u32;
        let mut x = lo;
        while x <= hi {
            if !(x.is_zero() && y.is_zero()) {
                points.push((x.clone(), y.clone()));
            }
            x += 1u32;
        }
        y += 1u32;
    }

    // Angular order from v1 = (1, 0) towards v2, nearest point first on
    // each ray through the origin.
    let cross = |p: &(BigInt, BigInt), q: &(BigInt, BigInt)| &p.0 * &q.1 - &p.1 * &q.0;
    points.sort_by(|p, q| {
        let c = cross(p, q);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            (p.0.abs() + p.1.abs()).cmp(&(q.0.abs() + q.1.abs()))
        }
    });
    points.dedup_by(|later, earlier| cross(earlier, later).is_zero());

    // The near boundary turns clockwise; drop every point that would make
    // a counterclockwise turn. Collinear points stay on the path.
    let turn = |a: &(BigInt, BigInt), b: &(BigInt, BigInt), c: &(BigInt, BigInt)| {
        (&b.0 - &a.0) * (&c.1 - &b.1) - (&b.1 - &a.1) * (&c.0 - &b.0)
    };
    let mut chain: Vec<(BigInt, BigInt)> = Vec::new();
    for p in points {
        while chain.len() >= 2 && turn(&chain[chain.len() - 2], &chain[chain.len() - 1], &p).is_positive() {
            chain.pop();
        }
        chain.push(p);
    }

    let n = chain.len();
    let is_vertex = (0..n)
        .map(|i| i == 0 || i + 1 == n || !turn(&chain[i - 1], &chain[i], &chain[i + 1]).is_zero())
        .collect();
    let boundary_points: Vec<_> = chain.iter().map(|(x, y)| to_lattice(x, y)).collect();
    debug_assert_eq!(boundary_points.first(), Some(v1));
    debug_assert_eq!(boundary_points.last(), Some(v2));
    Ok(HullWitness {
        cone: cone.clone(),
        boundary_points,
        is_vertex,
    })
}

/// One named property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>) -> Check {
        Check {
            name: name.into(),
            pass: failure.is_none(),
            detail: failure,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn push(&mut self, name: &str, failure: Option<String>) {
        self.checks.push(Check::new(name, failure));
    }

    fn push_note(&mut self, name: &str, note: String) {
        self.checks.push(Check {
            name: name.into(),
            pass: true,
            detail: Some(note),
        });
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }
}

fn first_failure<I: IntoIterator<Item = Option<String>>>(it: I) -> Option<String> {
    it.into_iter().flatten().next()
}

/// Re-checks every trace invariant from scratch, plus agreement with the
/// hull oracle when `|det| <= det_bound`.
pub fn verify_trace(trace: &DesingularizationTrace, det_bound: &BigInt) -> Report {
    let mut report = Report::default();
    let cone = &trace.cone;
    let rays = &trace.rays;
    let b = trace.expansion.entries();
    let sign = cone.orientation().sign();
    let init = &trace.init;

    report.push(
        "init data",
        first_failure([
            (&cone.v1().scale(&init.p0) + &init.n1.scale(&init.q0) != *cone.v2())
                .then(|| "v2 != p0·v1 + q0·n1".to_string()),
            (det2(cone.v1(), &init.n1) != sign).then(|| "{v1, n1} is not an oriented basis".into()),
            (!(init.p0.is_positive() && init.p0 <= init.q0)).then(|| "p0 outside (0, q0]".into()),
            (init.q0 != cone.det().abs()).then(|| "q0 != |det(v1, v2)|".into()),
        ]),
    );

    report.push(
        "endpoints",
        (rays.first() != Some(cone.v1()) || rays.last() != Some(cone.v2()))
            .then(|| "rays do not run from v1 to v2".into()),
    );

    report.push(
        "ray count",
        (rays.len() != b.len() + 2)
            .then(|| format!("{} rays for {} partial quotients", rays.len(), b.len())),
    );

    report.push(
        "primitive rays",
        rays.iter()
            .find(|r| !is_primitive(r))
            .map(|r| format!("{r} is not primitive")),
    );

    report.push(
        "adjacent determinant",
        rays.windows(2).enumerate().find_map(|(j, w)| {
            let d = det2(&w[0], &w[1]);
            (d != sign).then(|| format!("adjacent determinant ≠ 1 at l_{j}, l_{}: {d}", j + 1))
        }),
    );

    let two = BigInt::from(2);
    report.push(
        "partial quotients >= 2",
        b.iter().find(|x| **x < two).map(|x| format!("entry {x} below 2")),
    );

    report.push(
        "three-term law",
        if rays.len() != b.len() + 2 {
            Some("length mismatch".into())
        } else {
            b.iter().enumerate().find_map(|(j, bj)| {
                (&rays[j] + &rays[j + 2] != rays[j + 1].scale(bj))
                    .then(|| format!("l_{j} + l_{} != b_{}·l_{}", j + 2, j + 1, j + 1))
            })
        },
    );

    let expected_si: Vec<BigInt> = b.iter().map(|x| -x).collect();
    report.push(
        "self-intersections",
        (trace.self_intersections != expected_si).then(|| "self-intersections != -b_j".into()),
    );

    report.push(
        "continued fraction",
        if b.is_empty() {
            (init.p0 != init.q0).then(|| "empty expansion for a singular cone".into())
        } else {
            match hj_eval(&trace.expansion) {
                Ok(val) if !init.p0.is_positive() || init.p0 >= init.q0 => {
                    Some(format!("expansion {val} for a smooth or invalid cone"))
                }
                Ok(val) => {
                    let want = Rational::new(init.q0.clone(), &init.q0 - &init.p0);
                    (val != want).then(|| format!("[[b]] = {val}, expected {want}"))
                }
                Err(e) => Some(e.to_string()),
            }
        },
    );

    match hull_boundary_rays(cone, det_bound) {
        Ok(hull) => report.push(
            "hull oracle",
            (hull.predicted_rays() != &rays[..]).then(|| {
                let (h, r) = (hull.predicted_rays(), &rays[..]);
                match h.iter().zip(r).position(|(a, b)| a != b) {
                    Some(j) => format!("hull boundary point {j} is {}, trace ray is {}", h[j], r[j]),
                    None => format!("hull boundary has {} points, trace has {} rays", h.len(), r.len()),
                }
            }),
        ),
        Err(Error::DeterminantBoundExceeded { det, bound }) => {
            report.push_note("hull oracle", format!("skipped: |det| = {det} > {bound}"))
        }
        Err(e) => report.push("hull oracle", Some(e.to_string())),
    }

    report
}

/// The closed-form family a pair of weights belongs to, if any.
pub fn family_of(w: &WeightTriple) -> Option<Family> {
    let (m, k, r) = (w.m(), w.k(), w.r());
    if m.is_one() {
        return (*w.n() >= BigInt::from(2)).then(|| Family::Hirz { n: w.n().clone() });
    }
    if *m == BigInt::from(2) {
        return Some(Family::M2 { k: k.clone() });
    }
    if r.is_one() {
        return Some(Family::R1 { m: m.clone(), k: k.clone() });
    }
    if *r == m - 1u32 {
        return Some(Family::RM1 { m: m.clone(), k: k.clone() });
    }
    None
}

/// The whole per-weight check suite: resolution traces, fan smoothness,
/// closed forms, the Hirzebruch projection pair and the self-intersection
/// sum.
pub fn verify_weights(w: &WeightTriple, det_bound: &BigInt) -> Report {
    let mut report = Report::default();
    let coarse = wps_fan(w);
    let (fine, traces) = match resolve_fan(&coarse) {
        Ok(x) => x,
        Err(e) => {
            report.push("resolution", Some(e.to_string()));
            return report;
        }
    };
    for t in &traces {
        report.extend(&format!("cone {}: ", t.cone), verify_trace(t, det_bound));
    }
    report.merge_fan_checks(w, &fine);
    report
}

impl Report {
    fn merge_fan_checks(&mut self, w: &WeightTriple, fine: &crate::fan::Fan2D) {
        let coarse = wps_fan(w);
        self.push(
            "smooth fan",
            (!singular_cone_indices(fine).is_empty()).then(|| "singular cone remains".into()),
        );
        self.push(
            "original rays kept",
            coarse
                .rays()
                .iter()
                .find(|r| !fine.contains_ray(r))
                .map(|r| format!("{r} missing")),
        );
        if let Some(fam) = family_of(w) {
            self.push(
                "closed form",
                match closed_form_fan(&fam) {
                    Ok(cf) => (cf != *fine).then(|| format!("{fam:?} gives {cf}, algorithm gives {fine}")),
                    Err(e) => Some(e.to_string()),
                },
            );
        }
        if !w.m().is_one() {
            for (label, idx) in [("ceil", w.ceil_ratio()), ("floor", w.floor_ratio())] {
                let target = hirzebruch_fan(idx.clone()).expect("index >= 1");
                self.push(
                    &format!("refines F_{idx} ({label})"),
                    (!crate::fan::is_refinement(fine, &target)).then(|| "not a refinement".into()),
                );
            }
        }
        match self_intersections(fine) {
            Ok(a) => {
                if !w.m().is_one() {
                    let minus_e2 = LatticeVector::new(0, -1);
                    let got = fine
                        .rays()
                        .iter()
                        .position(|r| *r == minus_e2)
                        .map(|i| a[i].clone());
                    let want = -(w.k() + 1u32);
                    self.push(
                        "self-intersection of -e2",
                        (got.as_ref() != Some(&want)).then(|| format!("got {got:?}, expected {want}")),
                    );
                }
                let sum: BigInt = a.iter().sum();
                let want = BigInt::from(12) - BigInt::from(3 * fine.len());
                self.push(
                    "Noether sum",
                    (sum != want).then(|| format!("sum {sum}, expected {want}")),
                );
            }
            Err(e) => self.push("self-intersections", Some(e.to_string())),
        }
    }
}

/// All coprime `(m, n)` with `2 <= m <= m_max`, `m < n <= n_max`, in
/// lexicographic order.
pub fn coprime_pairs(m_max: u64, n_max: u64) -> Vec<(u64, u64)> {
    (2..=m_max)
        .flat_map(|m| ((m + 1)..=n_max).map(move |n| (m, n)))
        .filter(|(m, n)| m.gcd(n) == 1)
        .collect()
}
