//! The four subcommands. Each returns an [`Outcome`]: the machine document,
//! its human-readable rendering and, when asked for, an SVG figure.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

use toric_hj::desing::{desingularize, DesingularizationTrace};
use toric_hj::fan::{
    hirzebruch_fan, is_refinement, resolve_fan, self_intersections, singular_cone_indices, wps_fan, Fan2D,
    WeightTriple,
};
use toric_hj::hjcfrac::{beta_sequence, hj_eval, hj_expand, r_sequence, Rational};
use toric_hj::lattice::{Cone2, LatticeVector};
use toric_hj::oracle::{coprime_pairs, verify_trace, verify_weights, Report};

use crate::doc::{
    check_entries, ints, point, points, CheckEntry, HjBlock, InitBlock, JsonInt, OutputDocument, ResolutionBlock,
    SingularEntry, SourceBlock, SummaryBlock, TargetBlock,
};
use crate::svg::{self, Panel, RayKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] toric_hj::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Flags shared by all subcommands.
#[derive(Clone, Debug)]
pub struct Options {
    pub trace: bool,
    pub verify: bool,
    pub primitivize: bool,
    pub want_svg: bool,
    /// Determinant bound for the hull oracle.
    pub max_det: BigInt,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            trace: false,
            verify: false,
            primitivize: false,
            want_svg: false,
            max_det: BigInt::from(toric_hj::oracle::DEFAULT_DET_BOUND),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub doc: OutputDocument,
    pub text: String,
    pub svg: Option<String>,
}

impl Outcome {
    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.doc.all_checks_passed() {
            0
        } else {
            1
        }
    }
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn write_checks(text: &mut String, checks: &[CheckEntry]) {
    for c in checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        match &c.detail {
            Some(d) => {
                let _ = writeln!(text, "{}: {verdict} ({d})", c.name);
            }
            None => {
                let _ = writeln!(text, "{}: {verdict}", c.name);
            }
        }
    }
}

fn no_svg(command: &str, opts: &Options) -> CliResult<()> {
    if opts.want_svg {
        return Err(CliError::Input(format!("--svg is not available for `{command}`")));
    }
    Ok(())
}

fn push(report: &mut Report, name: &str, failure: Option<String>) {
    report.checks.push(toric_hj::oracle::Check {
        name: name.into(),
        pass: failure.is_none(),
        detail: failure,
    });
}

/// `hj a b`: the expansion of `max(a, b) / min(a, b)`.
pub fn cmd_hj(a: &BigInt, b: &BigInt, opts: &Options) -> CliResult<Outcome> {
    no_svg("hj", opts)?;
    if !a.is_positive() || !b.is_positive() {
        return Err(CliError::Input(format!("both arguments must be positive, got {a} and {b}")));
    }
    let (num, den) = if a >= b { (a, b) } else { (b, a) };
    // Validate before reducing so the message shows the input as given.
    hj_expand(num.clone(), den.clone())?;
    let g = num.gcd(den);
    let (num, den) = (num / &g, den / &g);
    let exp = hj_expand(num.clone(), den.clone())?;

    let mut text = String::new();
    let _ = writeln!(text, "{num}/{den} = {exp}");
    let _ = writeln!(text, "b = {}", list(exp.entries()));

    let mut block = HjBlock {
        num: JsonInt::from(&num),
        den: JsonInt::from(&den),
        b: ints(exp.entries()),
        r_sequence: None,
        beta_sequence: None,
    };
    let rs = r_sequence(num.clone(), den.clone())?;
    let betas = beta_sequence(&Rational::new(num.clone(), den.clone()))?;
    if opts.trace {
        let _ = writeln!(text, "r = {}", list(rs.terms()));
        let _ = writeln!(text, "beta = {}", list(&betas));
        block.r_sequence = Some(ints(rs.terms()));
        block.beta_sequence = Some(betas.iter().map(|x| x.to_string()).collect());
    }

    let mut doc = OutputDocument {
        hj: Some(block),
        ..Default::default()
    };
    if opts.verify {
        let mut report = Report::default();
        let ceilings: Vec<BigInt> = betas.iter().map(|x| x.ceil().to_integer()).collect();
        push(
            &mut report,
            "r/beta agreement",
            (ceilings != exp.entries() || rs.partial_quotients() != exp.entries())
                .then(|| "integer and rational routes differ".into()),
        );
        push(
            &mut report,
            "evaluation",
            match hj_eval(&exp) {
                Ok(v) => (v != Rational::new(num.clone(), den.clone())).then(|| format!("[[b]] = {v}")),
                Err(e) => Some(e.to_string()),
            },
        );
        let checks = check_entries(&report);
        write_checks(&mut text, &checks);
        doc.checks = Some(checks);
    }
    Ok(Outcome { doc, text, svg: None })
}

fn init_block(t: &DesingularizationTrace) -> InitBlock {
    InitBlock {
        n1: point(&t.init.n1),
        p0: JsonInt::from(&t.init.p0),
        q0: JsonInt::from(&t.init.q0),
    }
}

fn resolution_block(t: &DesingularizationTrace) -> ResolutionBlock {
    ResolutionBlock {
        cone: [point(t.cone.v1()), point(t.cone.v2())],
        det: JsonInt(t.cone.det()),
        init: init_block(t),
        b: ints(t.expansion.entries()),
        rays: points(&t.rays),
    }
}

/// `cone v1x v1y v2x v2y`: the resolution trace of `⟨v1, v2⟩`.
pub fn cmd_cone(coords: [&BigInt; 4], opts: &Options) -> CliResult<Outcome> {
    let v1 = LatticeVector::new(coords[0].clone(), coords[1].clone());
    let v2 = LatticeVector::new(coords[2].clone(), coords[3].clone());
    let cone = if opts.primitivize {
        Cone2::primitivized(v1, v2)
    } else {
        Cone2::new(v1, v2)
    }
    .map_err(|e| CliError::Input(format!("invalid cone: {e}")))?;
    let t = desingularize(&cone)?;
    let (p0, q0) = (&t.init.p0, &t.init.q0);

    let mut text = String::new();
    let _ = writeln!(text, "cone {cone}, det {}", cone.det());
    let _ = writeln!(text, "init: n1 = {}, p0 = {p0}, q0 = {q0}", t.init.n1);
    let _ = writeln!(text, "b = {}", list(t.expansion.entries()));
    let _ = writeln!(text, "rays = {}", list(&t.rays));
    let _ = writeln!(text, "self-intersections = {}", list(&t.self_intersections));

    let mut block = HjBlock {
        num: JsonInt::from(q0),
        den: JsonInt(q0 - p0),
        b: ints(t.expansion.entries()),
        r_sequence: None,
        beta_sequence: None,
    };
    if opts.trace {
        let _ = writeln!(text, "companions = {}", list(&t.companions));
        if !t.expansion.is_empty() {
            let rs = r_sequence(q0.clone(), q0 - p0)?;
            let betas = beta_sequence(&Rational::new(q0.clone(), q0 - p0))?;
            let _ = writeln!(text, "r = {}", list(rs.terms()));
            let _ = writeln!(text, "beta = {}", list(&betas));
            block.r_sequence = Some(ints(rs.terms()));
            block.beta_sequence = Some(betas.iter().map(|x| x.to_string()).collect());
        }
    }

    let mut doc = OutputDocument {
        rays: points(&t.rays),
        max_cones: (0..t.rays.len() - 1).map(|j| [j, j + 1]).collect(),
        self_intersections: Some(ints(&t.self_intersections)),
        hj: Some(block),
        init: Some(init_block(&t)),
        ..Default::default()
    };
    if opts.verify {
        let checks = check_entries(&verify_trace(&t, &opts.max_det));
        write_checks(&mut text, &checks);
        doc.checks = Some(checks);
    }

    let svg = opts.want_svg.then(|| {
        let last = t.rays.len() - 1;
        svg::render(&[Panel {
            title: format!("cone {cone}"),
            rays: t
                .rays
                .iter()
                .enumerate()
                .map(|(j, r)| {
                    let kind = if j == 0 || j == last {
                        RayKind::Original
                    } else {
                        RayKind::Subdivision
                    };
                    (r.clone(), kind)
                })
                .collect(),
        }])
    });
    Ok(Outcome { doc, text, svg })
}

fn cyclic_cones(fan: &Fan2D) -> Vec<[usize; 2]> {
    fan.max_cone_indices().into_iter().map(|(i, j)| [i, j]).collect()
}

fn minus_e2_self_intersection(fan: &Fan2D) -> CliResult<BigInt> {
    let a = self_intersections(fan)?;
    let minus_e2 = LatticeVector::new(0, -1);
    fan.rays()
        .iter()
        .position(|r| *r == minus_e2)
        .map(|i| a[i].clone())
        .ok_or_else(|| CliError::Input(format!("{fan} has no ray -e2")))
}

/// `wps m n`: `P(1, m, n)`, its minimal resolution and the two Hirzebruch
/// surfaces the resolution maps onto.
pub fn cmd_wps(m: &BigInt, n: &BigInt, opts: &Options) -> CliResult<Outcome> {
    if !m.is_positive() || !n.is_positive() {
        return Err(CliError::Input(format!("weights must be positive, got {m} and {n}")));
    }
    if m == n {
        return Err(CliError::Input(format!("weights must be distinct, got {m} and {n}")));
    }
    let w = WeightTriple::normalized(m.clone(), n.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    let coarse = wps_fan(&w);
    let singular = singular_cone_indices(&coarse);
    let (fine, traces) = resolve_fan(&coarse)?;
    let si = self_intersections(&fine)?;

    let mut text = String::new();
    let _ = writeln!(text, "{w}: fan {coarse}");
    for s in &singular {
        let c = coarse.cone(s.index);
        let _ = writeln!(text, "singular cone {c}: det {}", s.det);
    }
    if opts.trace {
        for t in &traces {
            let _ = writeln!(
                text,
                "  {}: n1 = {}, p0 = {}, q0 = {}, b = {}, rays = {}",
                t.cone,
                t.init.n1,
                t.init.p0,
                t.init.q0,
                list(t.expansion.entries()),
                list(&t.rays)
            );
        }
    }
    let _ = writeln!(text, "resolution: {} rays", fine.len());
    for (r, a) in fine.rays().iter().zip(&si) {
        let _ = writeln!(text, "  {r}: {a}");
    }

    let minus_e2 = minus_e2_self_intersection(&fine)?;
    let mut targets = Vec::new();
    for (label, idx) in [("ceil", w.ceil_ratio()), ("floor", w.floor_ratio())] {
        let target = hirzebruch_fan(idx.clone())?;
        let refines = is_refinement(&fine, &target);
        let target_si = minus_e2_self_intersection(&target)?;
        let preserves = target_si == minus_e2;
        let _ = writeln!(
            text,
            "target F_{idx} ({label}): {}, D(-e2)^2 = {target_si}{}",
            if refines { "refined" } else { "not refined" },
            if preserves { ", preserved" } else { "" }
        );
        targets.push(TargetBlock {
            label: label.into(),
            n: JsonInt(idx),
            rays: points(target.rays()),
            refines,
            minus_e2_self_intersection: JsonInt(target_si),
            preserves_minus_e2: preserves,
        });
    }

    let mut doc = OutputDocument {
        weights: Some([JsonInt::from(1), JsonInt::from(w.m()), JsonInt::from(w.n())]),
        rays: points(fine.rays()),
        max_cones: cyclic_cones(&fine),
        self_intersections: Some(ints(&si)),
        source: Some(SourceBlock {
            rays: points(coarse.rays()),
            singular_cones: singular
                .iter()
                .map(|s| SingularEntry {
                    index: s.index,
                    det: JsonInt::from(&s.det),
                })
                .collect(),
        }),
        resolutions: Some(traces.iter().map(resolution_block).collect()),
        targets: Some(targets.clone()),
        ..Default::default()
    };
    let mut failed_target = false;
    if opts.verify {
        let checks = check_entries(&verify_weights(&w, &opts.max_det));
        write_checks(&mut text, &checks);
        doc.checks = Some(checks);
    } else {
        failed_target = targets.iter().any(|t| !t.refines);
    }
    if failed_target {
        // A refinement failure is a failed check even without --verify.
        doc.checks = Some(
            targets
                .iter()
                .map(|t| CheckEntry {
                    name: format!("refines F_{} ({})", t.n, t.label),
                    pass: t.refines,
                    detail: None,
                })
                .collect(),
        );
    }

    let svg = opts.want_svg.then(|| {
        let source = Panel {
            title: w.to_string(),
            rays: coarse.rays().iter().map(|r| (r.clone(), RayKind::Original)).collect(),
        };
        let resolved = Panel {
            title: format!("D(1, {}, {})", w.m(), w.n()),
            rays: fine
                .rays()
                .iter()
                .map(|r| {
                    let kind = if coarse.contains_ray(r) {
                        RayKind::Original
                    } else {
                        RayKind::Subdivision
                    };
                    (r.clone(), kind)
                })
                .collect(),
        };
        svg::render(&[source, resolved])
    });
    Ok(Outcome { doc, text, svg })
}

/// Corrupts one interior ray of the first singular cone so that the
/// verifier has something to catch.
fn faulty_report(w: &WeightTriple, det_bound: &BigInt) -> Report {
    let mut report = Report::default();
    let Ok((_, traces)) = resolve_fan(&wps_fan(w)) else {
        return report;
    };
    if let Some(t) = traces.first() {
        let mut bad = t.clone();
        if bad.rays.len() > 2 {
            bad.rays[1] = &bad.rays[1] + &bad.rays[0];
        } else {
            bad.rays.insert(1, &bad.rays[0] + &bad.rays[1]);
        }
        report.extend("injected fault: ", verify_trace(&bad, det_bound));
    }
    report
}

/// `sweep m_max n_max`: the full check suite on every coprime pair
/// `2 <= m < n` within the bounds. Results are collected in `(m, n)` order,
/// so the output does not depend on the number of threads.
pub fn cmd_sweep(
    m_max: u64,
    n_max: u64,
    inject_fault: bool,
    threads: Option<usize>,
    opts: &Options,
) -> CliResult<Outcome> {
    no_svg("sweep", opts)?;
    if m_max < 2 || n_max < 2 {
        return Err(CliError::Input(format!("bounds must be at least 2, got {m_max} and {n_max}")));
    }
    let pairs = coprime_pairs(m_max, n_max);
    let run = || -> Vec<Report> {
        pairs
            .par_iter()
            .map(|&(m, n)| {
                let w = WeightTriple::new(m, n).expect("coprime pair with m < n");
                let mut report = verify_weights(&w, &opts.max_det);
                if inject_fault {
                    let bad = faulty_report(&w, &opts.max_det);
                    report.checks.extend(bad.checks);
                }
                report
            })
            .collect()
    };
    let reports = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start {t} threads: {e}")))?
            .install(run),
        None => run(),
    };

    let mut failed = Vec::new();
    for (&(m, n), report) in pairs.iter().zip(&reports) {
        for c in report.failures() {
            failed.push(CheckEntry {
                name: format!("P(1, {m}, {n}) {}", c.name),
                pass: false,
                detail: c.detail.clone(),
            });
        }
    }
    let mut text = String::new();
    write_checks(&mut text, &failed);
    let _ = writeln!(text, "{} failures, {} pairs checked", failed.len(), pairs.len());
    let doc = OutputDocument {
        checks: Some(failed.clone()),
        summary: Some(SummaryBlock {
            pairs_checked: pairs.len(),
            failures: failed.len(),
        }),
        ..Default::default()
    };
    Ok(Outcome { doc, text, svg: None })
}
