//! Candidate 1-singularities for a shift γ and their partition into orbits.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{inv_sqrt3, PlanePoint, TransLattice};
use crate::error::{Error, Result};
use crate::exactfield::{LatticeId, QuadRat};

/// Shift parameter with both coordinates reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaParam {
    pub g1: QuadRat,
    pub g2: QuadRat,
}

impl GammaParam {
    /// Reduces each coordinate modulo 1.
    pub fn reduce(g1: &QuadRat, g2: &QuadRat) -> Self {
        GammaParam { g1: g1.fract(), g2: g2.fract() }
    }

    pub fn zero() -> Self {
        GammaParam { g1: QuadRat::zero(), g2: QuadRat::zero() }
    }

    pub fn is_reduced(&self) -> bool {
        let unit = QuadRat::one();
        [&self.g1, &self.g2].iter().all(|g| g.signum() >= 0 && **g < unit)
    }

    /// Parses `"<q>,<q>"`.
    pub fn parse(text: &str) -> Result<(QuadRat, QuadRat)> {
        let (a, b) = text
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected two comma-separated numbers, got {text:?}")))?;
        Ok((a.parse()?, b.parse()?))
    }
}

impl fmt::Display for GammaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g1, self.g2)
    }
}

pub fn reduce_gamma(g1: &QuadRat, g2: &QuadRat) -> GammaParam {
    GammaParam::reduce(g1, g2)
}

/// A line `anchor + R·x^direction` in the internal plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingularLine {
    pub direction: usize,
    pub anchor: PlanePoint,
}

impl SingularLine {
    pub fn new(direction: usize, anchor: PlanePoint) -> Self {
        assert!(direction < 6, "direction {direction} out of range");
        SingularLine { direction, anchor }
    }

    /// Same line with the anchor's component along the direction removed.
    pub fn reduced(&self) -> SingularLine {
        let i = self.direction as i64;
        let (_, perp) = self
            .anchor
            .decompose(i, i + 3)
            .expect("x^i and x^(i+3) are independent");
        SingularLine::new(self.direction, PlanePoint::xpow(i + 3).scale(&perp))
    }

    pub fn point_at(&self, t: &QuadRat) -> PlanePoint {
        &self.anchor + &PlanePoint::xpow(self.direction as i64).scale(t)
    }
}

impl fmt::Display for SingularLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + λ·x^{}", self.anchor, self.direction)
    }
}

/// Shape of a candidate anchor, for direction `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// even `i`: `(γ1·x^i + γ2·x^{i+1})/√3`
    A,
    /// even `i`: `(γ1·x^{i+2} + γ2·x^{i+1})/√3`
    B,
    /// odd `i`: `(γ2·x^{i+4} + γ1·x^{i+1})/√3`
    C,
    /// odd `i`: `(γ2·x^{i+6} + γ1·x^{i+1})/√3`
    D,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub line: SingularLine,
    pub family: Family,
    pub negated: bool,
}

/// The 24 candidate lines. Coincident entries are kept.
pub fn candidate_lines(gamma: &GammaParam) -> Vec<Candidate> {
    let a = gamma.g1.clone() * inv_sqrt3();
    let b = gamma.g2.clone() * inv_sqrt3();
    let term = |coef: &QuadRat, k: i64| PlanePoint::xpow(k).scale(coef);
    let mut out = Vec::with_capacity(24);
    for i in 0..6i64 {
        let (first, second) = if i % 2 == 0 {
            (
                (Family::A, &term(&a, i) + &term(&b, i + 1)),
                (Family::B, &term(&a, i + 2) + &term(&b, i + 1)),
            )
        } else {
            (
                (Family::C, &term(&b, i + 4) + &term(&a, i + 1)),
                (Family::D, &term(&b, i + 6) + &term(&a, i + 1)),
            )
        };
        for negated in [false, true] {
            for (family, anchor) in [&first, &second] {
                let anchor = if negated { -anchor } else { anchor.clone() };
                out.push(Candidate {
                    line: SingularLine::new(i as usize, anchor),
                    family: *family,
                    negated,
                });
            }
        }
    }
    out
}

/// Whether two parallel lines differ by a translation in `lattice`.
///
/// With `d = l2.anchor − l1.anchor = c·x^i + c'·x^{i+3}`, the lines are
/// identified iff `√3·c' ∈ ½G` for Δ₀ and `c' ∈ ½G` for Z[x].
pub fn same_orbit_in(l1: &SingularLine, l2: &SingularLine, lattice: TransLattice) -> Result<bool> {
    if l1.direction != l2.direction {
        return Err(Error::DirectionMismatch(l1.direction, l2.direction));
    }
    let i = l1.direction as i64;
    let d = &l2.anchor - &l1.anchor;
    let (_, perp) = d.decompose(i, i + 3)?;
    let scaled = match lattice {
        TransLattice::Delta0 => perp * QuadRat::sqrt3(),
        TransLattice::ZX => perp,
    };
    Ok(scaled.member_of(LatticeId::HalfG))
}

pub fn same_orbit(l1: &SingularLine, l2: &SingularLine) -> Result<bool> {
    same_orbit_in(l1, l2, TransLattice::Delta0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOrbit {
    pub direction: usize,
    /// Indices into the partitioned list; the first is the representative.
    pub members: Vec<usize>,
    pub representative: SingularLine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineOrbitSet {
    pub lattice: TransLattice,
    pub lines: Vec<SingularLine>,
    pub orbits: Vec<LineOrbit>,
    pub per_direction: [usize; 6],
    pub l1: usize,
}

impl LineOrbitSet {
    pub fn representatives(&self) -> Vec<SingularLine> {
        self.orbits.iter().map(|o| o.representative.clone()).collect()
    }

    /// Orbit index of each input line.
    pub fn orbit_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.lines.len()];
        for (k, orbit) in self.orbits.iter().enumerate() {
            for &m in &orbit.members {
                out[m] = k;
            }
        }
        out
    }

    /// Same partition with the representative of `orbit` replaced by the
    /// member at position `member` of its member list.
    pub fn with_representative(&self, orbit: usize, member: usize) -> LineOrbitSet {
        let mut out = self.clone();
        let o = &mut out.orbits[orbit];
        o.members.swap(0, member);
        o.representative = self.lines[o.members[0]].clone();
        out
    }
}

/// Union-find over the orbit relation, one direction at a time.
pub fn orbit_partition_in(lines: &[SingularLine], lattice: TransLattice) -> Result<LineOrbitSet> {
    let mut uf = UnionFind::<usize>::new(lines.len());
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i].direction == lines[j].direction
                && same_orbit_in(&lines[i], &lines[j], lattice)?
            {
                uf.union(i, j);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut orbits: Vec<LineOrbit> = Vec::new();
    let mut root_to_orbit = std::collections::HashMap::new();
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by_key(|&k| (lines[k].direction, k));
    for k in order {
        let idx = *root_to_orbit.entry(labels[k]).or_insert_with(|| {
            orbits.push(LineOrbit {
                direction: lines[k].direction,
                members: Vec::new(),
                representative: lines[k].clone(),
            });
            orbits.len() - 1
        });
        orbits[idx].members.push(k);
    }
    let mut per_direction = [0; 6];
    for o in &orbits {
        per_direction[o.direction] += 1;
    }
    Ok(LineOrbitSet {
        lattice,
        lines: lines.to_vec(),
        l1: orbits.len(),
        orbits,
        per_direction,
    })
}

pub fn orbit_partition(lines: &[SingularLine]) -> Result<LineOrbitSet> {
    orbit_partition_in(lines, TransLattice::Delta0)
}
