//! End-to-end computation of the cohomology ranks for one shift γ.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cyclotomic::TransLattice;
use crate::error::{Error, Result};
use crate::exactfield::QuadRat;
use crate::homalg::{rank_and_cokernel, RankSummary};
use crate::lineorbits::{candidate_lines, orbit_partition_in, GammaParam, LineOrbitSet, SingularLine};
use crate::pointorbits::{build_tables, representative_check, IntersectionTables, LineType, RepresentativeCheck};
use crate::window::{build_window, enumerate_cubes, slice};

pub const SCHEMA_VERSION: u32 = 1;

/// Where the 1-singularities come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineSource {
    /// Closed-form list of 24 lines, orbits under Δ₀.
    #[default]
    Candidates,
    /// Lines cut from the cubes of W, orbits under Z[x].
    Sliced,
}

impl std::str::FromStr for LineSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "candidates" => Ok(LineSource::Candidates),
            "sliced" => Ok(LineSource::Sliced),
            _ => Err(Error::Parse(format!("unknown line source {s:?}"))),
        }
    }
}

impl fmt::Display for LineSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineSource::Candidates => "candidates",
            LineSource::Sliced => "sliced",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranks {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

impl Ranks {
    pub fn from_counts(l1: usize, e: i64, r: usize) -> Ranks {
        let (l1, r) = (l1 as i64, r as i64);
        Ranks { h0: 1, h1: 4 + l1 - r, h2: 3 + l1 + e - r }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSummary {
    pub direction: usize,
    pub anchor: String,
    pub members: usize,
    pub l0: usize,
    pub profile: [usize; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub schema: u32,
    pub gamma: (QuadRat, QuadRat),
    pub line_source: LineSource,
    pub l1: usize,
    pub per_direction: [usize; 6],
    pub lines: Vec<LineSummary>,
    pub types: Vec<LineType>,
    /// point-class multiplicity → number of classes
    pub multiplicities: BTreeMap<usize, usize>,
    pub sum_l0_alpha: usize,
    pub l0: usize,
    pub e: i64,
    pub beta: RankSummary,
    pub ranks: Ranks,
    pub representatives: RepresentativeCheck,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl CohomologyReport {
    /// Every internal identity holds; ranks are trustworthy.
    pub fn consistent(&self) -> bool {
        self.representatives.independent()
            && self.ranks.h1 - self.ranks.h2 == 1 - self.e
            && self.e == self.sum_l0_alpha as i64 - self.l0 as i64
    }

    pub fn summary_row(&self) -> String {
        format!(
            "{} | {} | {} | {} | {} | {} | {}",
            self.sum_l0_alpha, self.l0, self.l1, self.e, self.ranks.h2, self.ranks.h1, self.ranks.h0
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "γ = ({}, {})   lines: {}", self.gamma.0, self.gamma.1, self.line_source);
        let dirs: Vec<String> = self.per_direction.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "L1 = {}   per direction {}", self.l1, dirs.join(" "));
        let _ = writeln!(s);
        let _ = writeln!(s, "parity   p=2  p=3  p=4  p=5  p=6   L0α  lines  directions");
        for t in &self.types {
            let mut d = t.directions.clone();
            d.dedup();
            let d: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(
                s,
                "{:<6} {:>5}{:>5}{:>5}{:>5}{:>5} {:>5} {:>6}  {}",
                format!("{:?}", t.parity).to_lowercase(),
                t.profile[0],
                t.profile[1],
                t.profile[2],
                t.profile[3],
                t.profile[4],
                t.total,
                t.count,
                d.join(",")
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "ΣL0α | L0 | L1 | e | h2 | h1 | h0");
        let _ = writeln!(s, "{}", self.summary_row());
        let factors: Vec<String> = self.beta.factors.iter().filter(|f| **f != 0).map(|f| f.to_string()).collect();
        let _ = writeln!(
            s,
            "β: rank {}, invariant factors {}{}",
            self.beta.rank,
            factors.join(","),
            if self.beta.torsion_free { " (torsion-free)" } else { "" }
        );
        if self.representatives.independent() {
            let _ = writeln!(s, "representatives: independent ({} alternatives)", self.representatives.variants);
        } else {
            let _ = writeln!(
                s,
                "representatives: DEPENDENT ({} of {} alternatives differ)",
                self.representatives.mismatches.len(),
                self.representatives.variants
            );
            for m in &self.representatives.mismatches {
                let _ = writeln!(s, "  {m}");
            }
        }
        if let Some(t) = self.elapsed {
            let _ = writeln!(s, "time: {:.3}s", t.as_secs_f64());
        }
        s
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

pub fn line_orbits(gamma: &GammaParam, source: LineSource) -> Result<LineOrbitSet> {
    match source {
        LineSource::Candidates => {
            let lines: Vec<SingularLine> = candidate_lines(gamma).into_iter().map(|c| c.line).collect();
            orbit_partition_in(&lines, TransLattice::Delta0)
        }
        LineSource::Sliced => {
            let window = build_window()?;
            let cubes = enumerate_cubes(&window)?;
            orbit_partition_in(&slice(gamma, &cubes).distinct_lines(), TransLattice::ZX)
        }
    }
}

/// Tables and orbits behind a report.
pub struct Pipeline {
    pub gamma: GammaParam,
    pub orbits: LineOrbitSet,
    pub tables: IntersectionTables,
}

pub fn run_pipeline(g1: &QuadRat, g2: &QuadRat, source: LineSource) -> Result<Pipeline> {
    let gamma = GammaParam::reduce(g1, g2);
    let orbits = line_orbits(&gamma, source)?;
    let tables = build_tables(&orbits)?;
    Ok(Pipeline { gamma, orbits, tables })
}

pub fn compute(g1: &QuadRat, g2: &QuadRat) -> Result<CohomologyReport> {
    compute_with(g1, g2, LineSource::Candidates)
}

pub fn compute_with(g1: &QuadRat, g2: &QuadRat, source: LineSource) -> Result<CohomologyReport> {
    let start = Instant::now();
    let Pipeline { gamma, orbits, tables } = run_pipeline(g1, g2, source)?;
    let representatives = representative_check(&orbits, &tables)?;
    let beta = rank_and_cokernel();
    let ranks = Ranks::from_counts(orbits.l1, tables.e, beta.rank);
    let mut multiplicities = BTreeMap::new();
    for g in &tables.globals {
        *multiplicities.entry(g.multiplicity()).or_insert(0) += 1;
    }
    let lines = tables
        .lines
        .iter()
        .map(|l| LineSummary {
            direction: l.direction,
            anchor: l.anchor.to_string(),
            members: orbits.orbits[l.orbit].members.len(),
            l0: l.l0,
            profile: l.profile,
        })
        .collect();
    let report = CohomologyReport {
        schema: SCHEMA_VERSION,
        gamma: (gamma.g1, gamma.g2),
        line_source: source,
        l1: orbits.l1,
        per_direction: orbits.per_direction,
        lines,
        types: tables.types,
        multiplicities,
        sum_l0_alpha: tables.sum_l0_alpha,
        l0: tables.l0,
        e: tables.e,
        beta,
        ranks,
        representatives,
        elapsed: Some(start.elapsed()),
    };
    if report.ranks.h1 - report.ranks.h2 != 1 - report.e {
        return Err(Error::Consistency("h1 − h2 differs from 1 − e".into()));
    }
    Ok(report)
}
