//! Acceptance checks 1–12, each evaluated exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactfield::QuadRat;
use crate::homalg::rank_and_cokernel;
use crate::lineorbits::{candidate_lines, GammaParam};
use crate::oracle::oracle_lambdas;
use crate::pointorbits::{lambda_classes, Parity};
use crate::report::{compute, CohomologyReport};
use crate::window::{build_window, enumerate_cubes, slice, verify_counts, CubeKind};

const PIPELINE_BUDGET: Duration = Duration::from_secs(60);
const WINDOW_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_SAMPLES: usize = 20;
const ORACLE_SEED: u64 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {}: {} ({})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

fn q(a: i64, b: i64, c: i64, d: i64) -> QuadRat {
    QuadRat::from_parts(a, b, c, d)
}

fn r(n: i64, d: i64) -> QuadRat {
    QuadRat::ratio(n, d)
}

/// `x ∈ G = Z[√3]`.
fn in_g(x: &QuadRat) -> bool {
    x.rational().is_integer() && x.surd().is_integer()
}

/// `x ∈ (1/(2√3))G` iff `2√3·x = 6q + 2p√3` has integer parts.
fn in_inv_two_sqrt3_g(x: &QuadRat) -> bool {
    let two = num_rational::BigRational::from_integer(2.into());
    let six = num_rational::BigRational::from_integer(6.into());
    (x.surd() * six).is_integer() && (x.rational() * two).is_integer()
}

/// Expected L1 on samples of each region of the shift square.
pub fn region_samples() -> Vec<((QuadRat, QuadRat), usize)> {
    let s3 = |n, d| q(0, 1, n, d);
    vec![
        ((r(0, 1), r(0, 1)), 6),
        ((r(0, 1), r(1, 2)), 9),
        ((s3(1, 3), r(0, 1)), 9),
        ((s3(1, 3), s3(1, 3)), 12),
        ((r(0, 1), s3(1, 6)), 12),
        ((r(1, 2), r(1, 2)), 12),
        ((r(1, 5), r(1, 7)), 24),
        ((r(1, 2), r(0, 1)), 9),
        ((r(1, 2), s3(1, 3)), 15),
        ((r(1, 2), s3(1, 6)), 18),
        ((r(1, 2), r(1, 7)), 21),
        ((r(0, 1), s3(1, 3)), 9),
        ((r(0, 1), r(1, 7)), 15),
        ((s3(1, 3), r(1, 2)), 15),
        ((s3(1, 3), s3(1, 6)), 18),
        ((s3(1, 3), r(1, 7)), 18),
        ((s3(1, 6), r(0, 1)), 12),
        ((s3(1, 6), r(1, 2)), 18),
        ((s3(1, 6), s3(1, 3)), 18),
        ((s3(1, 6), s3(1, 6)), 24),
        ((r(1, 7), r(0, 1)), 15),
        ((r(1, 7), r(1, 2)), 21),
        ((r(1, 7), s3(1, 3)), 18),
    ]
}

struct Runs {
    reports: BTreeMap<String, std::result::Result<CohomologyReport, String>>,
}

impl Runs {
    fn get(&mut self, g1: &QuadRat, g2: &QuadRat) -> std::result::Result<&CohomologyReport, String> {
        let key = format!("{g1},{g2}");
        self.reports
            .entry(key)
            .or_insert_with(|| compute(g1, g2).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| e.clone())
    }
}

struct Check {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check { failures: Vec::new(), notes: Vec::new() }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got == want {
            self.notes.push(format!("{what}={got:?}"));
        } else {
            self.failures.push(format!("{what}={got:?} want {want:?}"));
        }
    }

    fn that(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(format!("{what} fails"));
        }
    }

    fn finish(self, id: u32, title: &str) -> CriterionResult {
        let pass = self.failures.is_empty();
        let detail = if pass { self.notes.join(", ") } else { self.failures.join("; ") };
        CriterionResult { id, title: title.to_string(), pass, detail }
    }
}

fn profiles(rep: &CohomologyReport) -> BTreeSet<[usize; 5]> {
    rep.types.iter().map(|t| t.profile).collect()
}

fn totals(rep: &CohomologyReport, parity: Option<Parity>) -> BTreeSet<usize> {
    rep.types
        .iter()
        .filter(|t| parity.is_none_or(|p| t.parity == p))
        .map(|t| t.total)
        .collect()
}

struct Expect {
    l1: Option<usize>,
    sum: Option<usize>,
    l0: Option<usize>,
    e: Option<i64>,
    h2: Option<i64>,
}

fn check_counts(c: &mut Check, rep: &CohomologyReport, want: &Expect) {
    if let Some(v) = want.l1 {
        c.eq("L1", rep.l1, v);
    }
    if let Some(v) = want.sum {
        c.eq("ΣL0α", rep.sum_l0_alpha, v);
    }
    if let Some(v) = want.l0 {
        c.eq("L0", rep.l0, v);
    }
    if let Some(v) = want.e {
        c.eq("e", rep.e, v);
    }
    if let Some(v) = want.h2 {
        c.eq("h2", rep.ranks.h2, v);
    }
    if rep.elapsed.is_some_and(|t| t > PIPELINE_BUDGET) {
        c.failures.push("pipeline exceeded 60 s".into());
    }
}

fn pipeline_case(
    runs: &mut Runs,
    id: u32,
    title: &str,
    gammas: &[(QuadRat, QuadRat)],
    each: &dyn Fn(usize, &mut Check, &CohomologyReport),
) -> CriterionResult {
    let mut c = Check::new();
    for (k, (g1, g2)) in gammas.iter().enumerate() {
        match runs.get(g1, g2) {
            Ok(rep) => each(k, &mut c, rep),
            Err(e) => c.failures.push(format!("({g1}, {g2}): {e}")),
        }
    }
    c.finish(id, title)
}

fn criterion_1() -> CriterionResult {
    let mut c = Check::new();
    let start = Instant::now();
    let built = build_window().and_then(|w| enumerate_cubes(&w).map(|cubes| verify_counts(&w, &cubes)));
    let took = start.elapsed();
    match built {
        Ok(rep) => {
            c.eq("vertices", rep.vertices, 52);
            c.eq("edges", rep.edges, 132);
            c.eq("2-faces", rep.faces, 120);
            c.eq("cubes", rep.cubes, 40);
            c.eq("long", rep.long_cubes, 4);
            c.failures.extend(rep.mismatches.iter().cloned());
            if rep.mismatches.is_empty() {
                c.notes.push("valency 4:12 5:24 6:16, cubes per vertex 4/6/8".into());
            }
        }
        Err(e) => c.failures.push(e.to_string()),
    }
    c.that("window verification under 5 s", took < WINDOW_BUDGET);
    c.finish(1, "window combinatorics")
}

fn criterion_2() -> CriterionResult {
    let mut c = Check::new();
    match build_window().and_then(|w| enumerate_cubes(&w)) {
        Ok(cubes) => {
            let generic = slice(&GammaParam::reduce(&r(1, 5), &r(1, 7)), &cubes);
            c.eq("incidences at (1/5,1/7)", generic.incidences, 72);
            let axis = slice(&GammaParam::reduce(&r(0, 1), &r(1, 5)), &cubes);
            let vertical: BTreeSet<usize> = cubes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.kind == CubeKind::Long && c.edges == [1, 5, 9])
                .map(|(i, _)| i)
                .collect();
            let sliced: BTreeSet<usize> = axis.long_cubes_sliced.iter().copied().collect();
            c.eq("long cubes sliced at (0,1/5)", sliced.len(), 2);
            c.that("sliced long cubes are the vertical ones", sliced == vertical);
        }
        Err(e) => c.failures.push(e.to_string()),
    }
    c.finish(2, "slicing census")
}

fn criterion_3() -> CriterionResult {
    let mut c = Check::new();
    let s = rank_and_cokernel();
    c.eq("R", s.rank, 3);
    let nonzero: Vec<i64> = s.factors.iter().copied().filter(|f| *f != 0).collect();
    c.eq("invariant factors", nonzero, vec![1, 1, 1]);
    c.eq("torsion-free", s.torsion_free, true);
    c.finish(3, "homological constants")
}

fn criterion_4(runs: &mut Runs) -> CriterionResult {
    pipeline_case(runs, 4, "γ = (0, 0)", &[(r(0, 1), r(0, 1))], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: Some(6), sum: Some(36), l0: Some(14), e: Some(22), h2: Some(28) });
        c.eq("ranks", (rep.ranks.h0, rep.ranks.h1, rep.ranks.h2), (1, 7, 28));
        c.eq("profiles", profiles(rep), BTreeSet::from([[3, 2, 0, 0, 1]]));
    })
}

fn criterion_5(runs: &mut Runs) -> CriterionResult {
    pipeline_case(runs, 5, "γ = (0, 1/2)", &[(r(0, 1), r(1, 2))], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: Some(9), sum: Some(90), l0: Some(36), e: Some(54), h2: Some(63) });
        c.eq("type totals", totals(rep, None), BTreeSet::from([8, 10, 12]));
    })
}

fn criterion_6(runs: &mut Runs) -> CriterionResult {
    pipeline_case(runs, 6, "γ = (√3/3, 0)", &[(q(0, 1, 1, 3), r(0, 1))], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: Some(9), sum: Some(99), l0: Some(43), e: Some(56), h2: Some(65) });
    })
}

fn criterion_7(runs: &mut Runs) -> CriterionResult {
    pipeline_case(runs, 7, "γ = (√3/3, √3/3)", &[(q(0, 1, 1, 3), q(0, 1, 1, 3))], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: Some(12), sum: Some(180), l0: Some(80), e: Some(100), h2: Some(112) });
        c.eq("profiles", profiles(rep), BTreeSet::from([[12, 1, 0, 0, 2]]));
    })
}

fn criterion_8(runs: &mut Runs) -> CriterionResult {
    let (g1, g2) = (q(0, 1, 1, 3), r(1, 3));
    let mut result = pipeline_case(runs, 8, "γ = (√3/3, 1/3)", &[(g1.clone(), g2.clone())], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: None, sum: None, l0: Some(78), e: None, h2: Some(114) });
    });
    let lhs = &(&g1 * &QuadRat::integer(2)) + &(&QuadRat::sqrt3() * &g2);
    if !in_g(&lhs) || in_inv_two_sqrt3_g(&g2) {
        result.pass = false;
        result.detail.push_str("; region membership fails");
    }
    result
}

fn criterion_9(runs: &mut Runs) -> CriterionResult {
    pipeline_case(runs, 9, "γ = (0, √3/6)", &[(r(0, 1), q(0, 1, 1, 6))], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: None, sum: None, l0: Some(78), e: None, h2: Some(114) });
        c.eq("odd type totals", totals(rep, Some(Parity::Odd)), BTreeSet::from([10, 14]));
    })
}

fn criterion_10(runs: &mut Runs) -> CriterionResult {
    let gammas = [(r(1, 2), q(0, 1, 1, 2)), (r(1, 2), q(1, 2, 1, 2))];
    let mut result = pipeline_case(runs, 10, "γ = (1/2, √3/2) and (1/2, (1+√3)/2)", &gammas, &|k, c, rep| {
        let want = if k == 0 {
            Expect { l1: None, sum: None, l0: Some(56), e: Some(88), h2: Some(100) }
        } else {
            Expect { l1: None, sum: None, l0: Some(99), e: Some(117), h2: Some(129) }
        };
        check_counts(c, rep, &want);
    });
    let (g1, g2) = &gammas[0];
    let ratio = (g1 + g2).checked_div(&q(1, 2, 1, 2));
    if !ratio.is_ok_and(|x| in_g(&x)) {
        result.pass = false;
        result.detail.push_str("; region membership fails");
    }
    result
}

fn criterion_11(runs: &mut Runs) -> CriterionResult {
    let gamma = (q(1, 7, 1, 11), q(1, 13, 1, 17));
    pipeline_case(runs, 11, "generic γ = (1/7+√3/11, 1/13+√3/17)", &[gamma], &|_, c, rep| {
        check_counts(c, rep, &Expect { l1: Some(24), sum: Some(1056), l0: Some(516), e: Some(540), h2: Some(564) });
        c.eq("ranks", (rep.ranks.h0, rep.ranks.h1, rep.ranks.h2), (1, 25, 564));
        c.eq("profiles", profiles(rep), BTreeSet::from([[42, 0, 2, 0, 0]]));
    })
}

fn random_shift(rng: &mut ChaCha8Rng) -> QuadRat {
    let mut part = || QuadRat::ratio(rng.random_range(-40..=40), rng.random_range(1..=40));
    let (a, b) = (part(), part());
    &a + &(&b * &QuadRat::sqrt3())
}

/// Oracle equivalence of λ-sets on seeded random shifts.
pub fn oracle_sweep(samples: usize, seed: u64) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let gamma = GammaParam::reduce(&random_shift(&mut rng), &random_shift(&mut rng));
        let cands = candidate_lines(&gamma);
        for (idx, c) in cands.iter().enumerate() {
            let mut engine = BTreeSet::new();
            for other in cands.iter().filter(|o| o.line.direction != c.line.direction) {
                engine.extend(lambda_classes(&c.line, &other.line)?.into_iter().map(|r| r.value));
            }
            if engine != oracle_lambdas(&gamma, c) {
                mismatches.push(format!("{gamma} line {idx}"));
            }
        }
    }
    Ok(mismatches)
}

fn criterion_12(runs: &mut Runs) -> CriterionResult {
    let mut c = Check::new();
    let samples = region_samples();
    let mut wrong_l1 = Vec::new();
    for ((g1, g2), want) in &samples {
        let got = crate::report::line_orbits(&GammaParam::reduce(g1, g2), Default::default()).map(|o| o.l1);
        if got.as_ref().ok() != Some(want) {
            wrong_l1.push(format!("({g1}, {g2}): {got:?} want {want}"));
        }
    }
    if wrong_l1.is_empty() {
        c.notes.push(format!("L1 on {} region samples", samples.len()));
    } else {
        c.failures.push(format!("L1 {}", wrong_l1.join(", ")));
    }

    match oracle_sweep(ORACLE_SAMPLES, ORACLE_SEED) {
        Ok(m) if m.is_empty() => c.notes.push(format!("table oracle on {ORACLE_SAMPLES} random γ")),
        Ok(m) => c.failures.push(format!("table oracle differs on {}", m.join(", "))),
        Err(e) => c.failures.push(e.to_string()),
    }

    for ((g1, g2), _) in &samples {
        let _ = runs.get(g1, g2);
    }
    let mut dependent = Vec::new();
    let mut over_bound = Vec::new();
    let mut broken = Vec::new();
    for (key, rep) in &runs.reports {
        match rep {
            Ok(rep) => {
                if !rep.representatives.independent() {
                    dependent.push(format!("({key})"));
                }
                if rep.lines.iter().any(|l| l.l0 > 44) {
                    over_bound.push(format!("({key})"));
                }
                let recovered: usize = rep.multiplicities.values().sum();
                let weighted: usize = rep.multiplicities.iter().map(|(p, n)| p * n).sum();
                let incidences: usize = rep.lines.iter().map(|l| l.profile.iter().sum::<usize>()).sum();
                if recovered != rep.l0 || weighted != incidences || incidences != rep.sum_l0_alpha {
                    broken.push(format!("({key})"));
                }
            }
            Err(e) => broken.push(format!("({key}): {e}")),
        }
    }
    let runs_checked = runs.reports.len();
    if dependent.is_empty() {
        c.notes.push(format!("representative-independent on {runs_checked} runs"));
    } else {
        c.failures.push(format!(
            "representative-dependent on {} of {runs_checked} runs: {}",
            dependent.len(),
            dependent.join(" ")
        ));
    }
    if broken.is_empty() {
        c.notes.push("double counting holds".into());
    } else {
        c.failures.push(format!("double counting fails on {}", broken.join(" ")));
    }
    if over_bound.is_empty() {
        c.notes.push("L0α ≤ 44".into());
    } else {
        c.failures.push(format!("L0α > 44 on {}", over_bound.join(" ")));
    }
    c.finish(12, "property suites")
}

pub fn run_all() -> Vec<CriterionResult> {
    let mut runs = Runs { reports: BTreeMap::new() };
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(&mut runs),
        criterion_5(&mut runs),
        criterion_6(&mut runs),
        criterion_7(&mut runs),
        criterion_8(&mut runs),
        criterion_9(&mut runs),
        criterion_10(&mut runs),
        criterion_11(&mut runs),
        criterion_12(&mut runs),
    ]
}
