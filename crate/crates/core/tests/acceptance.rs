//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use toric_hj::desing::{desingularize, DesingularizationTrace};
use toric_hj::fan::{
    closed_form_fan, hirzebruch_fan, is_refinement, minimal_desingularization,
    projective_plane_fan, resolve_fan, self_intersections, wps_fan, Family,
};
use toric_hj::hjcfrac::{beta_sequence, hj_eval, hj_expand, r_sequence, Rational};
use toric_hj::lattice::{det2, Cone2, LatticeVector};
use toric_hj::oracle::{coprime_pairs, hull_boundary_rays, DEFAULT_DET_BOUND};
use toric_hj::{Fan2D, WeightTriple};

type Outcome = Result<String, String>;

fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

fn ray_set(fan: &Fan2D) -> BTreeSet<LatticeVector> {
    fan.rays().iter().cloned().collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

/// State shared between criteria so the big sweep runs once.
#[derive(Default)]
struct Sweep {
    traces: Vec<DesingularizationTrace>,
    fans: Vec<Fan2D>,
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let exp = hj_expand(182, 27).map_err(|e| e.to_string())?;
    let betas = beta_sequence(&Rational::new(182.into(), 27.into())).map_err(|e| e.to_string())?;
    let r = r_sequence(182, 27).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let ints = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    ensure(exp.entries() == ints(&[7, 4, 7]), || format!("expansion {exp}"))?;
    let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
    ensure(betas == vec![q(182, 27), q(27, 7), q(7, 1)], || format!("betas {betas:?}"))?;
    ensure(r.terms() == ints(&[182, 27, 7, 1]), || format!("r {:?}", r.terms()))?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("[[7, 4, 7]], betas and r-sequence exact in {elapsed:?}"))
}

fn criterion_2(fans: &mut Vec<Fan2D>) -> Outcome {
    let start = Instant::now();
    for n in 2..=100i64 {
        let w = WeightTriple::new(1, n).map_err(|e| e.to_string())?;
        let d = minimal_desingularization(&w).map_err(|e| e.to_string())?;
        let want: BTreeSet<_> = [v(1, 0), v(0, 1), v(-1, -n), v(0, -1)].into_iter().collect();
        ensure(ray_set(&d) == want, || format!("D(1,1,{n}) = {d}"))?;
        fans.push(d);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("D(1,1,n) = F_n for 2 <= n <= 100 in {elapsed:?}"))
}

fn criterion_3(fans: &mut Vec<Fan2D>) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for k in 1..=40i64 {
        let w = WeightTriple::new(2, 2 * k + 1).map_err(|e| e.to_string())?;
        let d = minimal_desingularization(&w).map_err(|e| e.to_string())?;
        let want: BTreeSet<_> = [
            v(1, 0),
            v(0, 1),
            v(-1, -k),
            v(-2, -(2 * k + 1)),
            v(-1, -(k + 1)),
            v(0, -1),
        ]
        .into_iter()
        .collect();
        ensure(ray_set(&d) == want, || format!("D(1,2,{}) = {d}", 2 * k + 1))?;
        let cf = closed_form_fan(&Family::M2 { k: k.into() }).map_err(|e| e.to_string())?;
        ensure(cf == d, || format!("closed form M2 k={k}"))?;
        fans.push(d);
        checked += 1;
    }
    for m in 2..=40i64 {
        for k in 1..=40i64 {
            // n = mk + 1
            let w = WeightTriple::new(m, m * k + 1).map_err(|e| e.to_string())?;
            let d = minimal_desingularization(&w).map_err(|e| e.to_string())?;
            let mut want: BTreeSet<_> = [v(1, 0), v(0, 1), v(-1, -k)].into_iter().collect();
            want.extend((0..=m).map(|j| v(-j, -(j * k + 1))));
            ensure(ray_set(&d) == want, || format!("D(1,{m},{}) = {d}", m * k + 1))?;
            let cf = closed_form_fan(&Family::R1 { m: m.into(), k: k.into() })
                .map_err(|e| e.to_string())?;
            ensure(cf == d, || format!("closed form R1 m={m} k={k}"))?;
            fans.push(d);

            // n = mk + m - 1, with v_0 = e2
            let n = m * k + m - 1;
            let w = WeightTriple::new(m, n).map_err(|e| e.to_string())?;
            let d = minimal_desingularization(&w).map_err(|e| e.to_string())?;
            let mut want: BTreeSet<_> = [v(1, 0), v(0, -1), v(-1, -(k + 1))].into_iter().collect();
            want.extend((0..=m).map(|j| v(-j, -(j * k + j - 1))));
            ensure(ray_set(&d) == want, || format!("D(1,{m},{n}) = {d}"))?;
            let cf = closed_form_fan(&Family::RM1 { m: m.into(), k: k.into() })
                .map_err(|e| e.to_string())?;
            ensure(cf == d, || format!("closed form RM1 m={m} k={k}"))?;
            fans.push(d);
            checked += 2;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("{checked} closed-form fans match in {elapsed:?}"))
}

fn criterion_4(sweep: &mut Sweep) -> Outcome {
    let start = Instant::now();
    let pairs = coprime_pairs(299, 300);
    let two = BigInt::from(2);
    for &(m, n) in &pairs {
        let w = WeightTriple::new(m, n).map_err(|e| e.to_string())?;
        let (fan, traces) = resolve_fan(&wps_fan(&w)).map_err(|e| e.to_string())?;
        for c in fan.cones() {
            ensure(c.det().is_one(), || format!("({m},{n}): cone {c} has det {}", c.det()))?;
        }
        for t in &traces {
            let b = t.expansion.entries();
            let rays = &t.rays;
            ensure(b.iter().all(|x| *x >= two), || format!("({m},{n}): {} has b < 2", t.cone))?;
            ensure(rays.last() == Some(t.cone.v2()), || format!("({m},{n}): endpoint"))?;
            for (j, bj) in b.iter().enumerate() {
                ensure(&rays[j] + &rays[j + 2] == rays[j + 1].scale(bj), || {
                    format!("({m},{n}): three-term law at j={}", j + 1)
                })?;
            }
            let sign = t.cone.orientation().sign();
            for pair in rays.windows(2) {
                ensure(det2(&pair[0], &pair[1]) == sign, || format!("({m},{n}): subcone det"))?;
            }
            let val = hj_eval(&t.expansion).map_err(|e| e.to_string())?;
            let want = Rational::new(t.init.q0.clone(), &t.init.q0 - &t.init.p0);
            ensure(val == want, || format!("({m},{n}): [[b]] = {val}, want {want}"))?;
        }
        sweep.traces.extend(traces);
        sweep.fans.push(fan);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{} weight pairs, {} singular cones resolved in {elapsed:?}",
        pairs.len(),
        sweep.traces.len()
    ))
}

fn criterion_5(sweep: &Sweep) -> Outcome {
    let start = Instant::now();
    let bound = BigInt::from(DEFAULT_DET_BOUND);
    let mut checked = 0;
    for t in &sweep.traces {
        if t.cone.det().magnitude() > bound.magnitude() {
            continue;
        }
        let hull = hull_boundary_rays(&t.cone, &bound).map_err(|e| e.to_string())?;
        ensure(hull.predicted_rays() == &t.rays[..], || {
            format!("hull of {} disagrees with the resolution", t.cone)
        })?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{checked} cones with |det| <= {bound} agree with the hull in {elapsed:?}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let pairs = coprime_pairs(99, 100);
    let minus_e2 = v(0, -1);
    for &(m, n) in &pairs {
        let w = WeightTriple::new(m, n).map_err(|e| e.to_string())?;
        let d = minimal_desingularization(&w).map_err(|e| e.to_string())?;
        let k = (n / m) as i64;
        let ceil = n.div_ceil(m);
        let floor = n / m;
        let up = hirzebruch_fan(ceil).map_err(|e| e.to_string())?;
        let down = hirzebruch_fan(floor).map_err(|e| e.to_string())?;
        ensure(is_refinement(&d, &up), || format!("D(1,{m},{n}) does not refine F_{ceil}"))?;
        ensure(is_refinement(&d, &down), || format!("D(1,{m},{n}) does not refine F_{floor}"))?;
        let a = self_intersections(&d).map_err(|e| e.to_string())?;
        let idx = d
            .rays()
            .iter()
            .position(|r| *r == minus_e2)
            .ok_or_else(|| format!("D(1,{m},{n}) lacks -e2"))?;
        ensure(a[idx] == BigInt::from(-(k + 1)), || {
            format!("D(1,{m},{n}): D(-e2)^2 = {}, want {}", a[idx], -(k + 1))
        })?;
        // Same value on F_{k+1}, one more on F_k.
        let on = |f: &Fan2D| {
            let i = f.rays().iter().position(|r| *r == minus_e2).unwrap();
            self_intersections(f).unwrap()[i].clone()
        };
        ensure(on(&up) == a[idx], || format!("F_{ceil} value differs"))?;
        ensure(on(&down) == &a[idx] + 1, || format!("F_{floor} value is not one more"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{} pairs refine both F_ceil and F_floor in {elapsed:?}", pairs.len()))
}

fn criterion_7(sweep: &Sweep) -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    let sample: Vec<_> = sweep.traces.choose_multiple(&mut rng, 50).collect();
    ensure(sample.len() == 50, || "fewer than 50 cones".into())?;
    let mut restarts = 0;
    for t in sample {
        let s = t.expansion.len();
        for j in 1..=s {
            let sub = Cone2::new(t.rays[j].clone(), t.cone.v2().clone()).map_err(|e| e.to_string())?;
            let rt = desingularize(&sub).map_err(|e| e.to_string())?;
            ensure(rt.rays[..] == t.rays[j..], || format!("{}: restart at l_{j} rays", t.cone))?;
            ensure(rt.expansion == t.expansion.tail(j), || {
                format!("{}: restart at l_{j} expansion", t.cone)
            })?;
            restarts += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{restarts} restarts over 50 sampled cones in {elapsed:?}"))
}

/// Direct computation on P^2 and F_0..F_5 before the identity is trusted.
fn noether_holds(fan: &Fan2D) -> Result<(), String> {
    let sum: BigInt = self_intersections(fan).map_err(|e| e.to_string())?.iter().sum();
    let want = BigInt::from(12 - 3 * fan.len() as i64);
    ensure(sum == want, || format!("{fan}: sum {sum}, want {want}"))
}

fn criterion_8(fans: &[Fan2D]) -> Outcome {
    let p2 = projective_plane_fan();
    ensure(
        self_intersections(&p2).map_err(|e| e.to_string())? == vec![BigInt::one(); 3],
        || "P^2 self-intersections".into(),
    )?;
    noether_holds(&p2)?;
    for n in 0..=5i64 {
        let f = hirzebruch_fan(n).map_err(|e| e.to_string())?;
        let a = self_intersections(&f).map_err(|e| e.to_string())?;
        let want: Vec<BigInt> = [0, n, 0, -n].iter().map(|&x| BigInt::from(x)).collect();
        ensure(a == want, || format!("F_{n}: {a:?}"))?;
        noether_holds(&f)?;
    }
    for f in fans {
        noether_holds(f)?;
    }
    Ok(format!("validated on P^2, F_0..F_5; holds on {} fans", fans.len()))
}

fn main() {
    let mut sweep = Sweep::default();
    let mut fans = Vec::new();

    let mut results: Vec<(&str, Outcome)> = vec![
        ("1 worked example exactness", criterion_1()),
        ("2 Hirzebruch identification", criterion_2(&mut fans)),
        ("3 closed-form families", criterion_3(&mut fans)),
        ("4 smoothness and minimality sweep", criterion_4(&mut sweep)),
        ("5 hull oracle equivalence", criterion_5(&sweep)),
        ("6 Hirzebruch projection pair", criterion_6()),
        ("7 restart consistency", criterion_7(&sweep)),
    ];
    fans.extend(sweep.fans.iter().cloned());
    results.push(("8 Noether identity", criterion_8(&fans)));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({msg})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg})");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
