//! 0-singularities: intersection parameters on each line orbit, their
//! classes modulo G, and the global classes modulo Z[x].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::PlanePoint;
use crate::error::{Error, Result};
use crate::exactfield::{CosetRep, LatticeId, QuadRat};
use crate::lineorbits::{LineOrbitSet, SingularLine};

/// First coordinates, modulo G, of Z[x] written in the basis `(1, x^d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSet {
    pub d: usize,
    pub offsets: Vec<QuadRat>,
}

const CLOSURE_LIMIT: usize = 64;

fn close_offsets(d: usize) -> Result<CosetSet> {
    let gens: Vec<QuadRat> = (0..4)
        .map(|k| {
            PlanePoint::xpow(k)
                .decompose(0, d as i64)
                .map(|(c, _)| c.canon_g())
        })
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<QuadRat> = BTreeSet::from([QuadRat::zero()]);
    let mut frontier = vec![QuadRat::zero()];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = (&x + g).canon_g();
            if seen.insert(y.clone()) {
                if seen.len() > CLOSURE_LIMIT {
                    return Err(Error::ClosureOverflow(d));
                }
                frontier.push(y);
            }
        }
    }
    Ok(CosetSet { d, offsets: seen.into_iter().collect() })
}

pub fn coset_set(d: usize) -> Result<CosetSet> {
    if !(1..=5).contains(&d) {
        return Err(Error::DegenerateBasis(0, d as i64));
    }
    static CACHE: OnceLock<Vec<CosetSet>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (1..=5)
            .map(|d| close_offsets(d).expect("closure over Z[x] is finite"))
            .collect()
    });
    Ok(all[d - 1].clone())
}

fn offsets(d: usize) -> &'static [QuadRat] {
    static CACHE: OnceLock<Vec<Vec<QuadRat>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (1..=5)
            .map(|d| close_offsets(d).expect("closure over Z[x] is finite").offsets)
            .collect()
    });
    &all[d - 1]
}

/// Classes modulo G of the parameters `λ` where `alpha` meets a Z[x]
/// translate of `beta`.
pub fn lambda_classes(alpha: &SingularLine, beta: &SingularLine) -> Result<Vec<CosetRep>> {
    Ok(lambda_values(alpha, beta)?
        .into_iter()
        .map(|value| CosetRep { value, modulus: LatticeId::G })
        .collect())
}

fn lambda_values(alpha: &SingularLine, beta: &SingularLine) -> Result<Vec<QuadRat>> {
    if alpha.direction == beta.direction {
        return Err(Error::ParallelLines(alpha.direction));
    }
    let d = (beta.direction + 6 - alpha.direction) % 6;
    let (base, _) = (&beta.anchor - &alpha.anchor)
        .decompose(alpha.direction as i64, beta.direction as i64)?;
    let set: BTreeSet<QuadRat> = offsets(d).iter().map(|c| (&base + c).canon_g()).collect();
    Ok(set.into_iter().collect())
}

/// Z[x]-class of the point at parameter `lambda` on `alpha`.
pub fn global_key(alpha: &SingularLine, lambda: &CosetRep) -> PlanePoint {
    alpha.point_at(&lambda.value).canon_zx()
}

pub fn cmp_points(a: &PlanePoint, b: &PlanePoint) -> Ordering {
    a.u.cmp(&b.u).then_with(|| a.v.cmp(&b.v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(direction: usize) -> Parity {
        if direction.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Per-orbit intersection data. `profile[k]` counts on-line classes lying on
/// exactly `k + 2` line orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTable {
    pub orbit: usize,
    pub direction: usize,
    pub anchor: PlanePoint,
    pub lambdas: Vec<QuadRat>,
    pub l0: usize,
    pub profile: [usize; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalClass {
    pub key: PlanePoint,
    pub incident: Vec<usize>,
}

impl GlobalClass {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }
}

/// Line orbits sharing parity and profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineType {
    pub parity: Parity,
    pub profile: [usize; 5],
    pub total: usize,
    pub count: usize,
    pub directions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTables {
    pub lines: Vec<LineTable>,
    pub globals: Vec<GlobalClass>,
    pub types: Vec<LineType>,
    pub sum_l0_alpha: usize,
    pub l0: usize,
    pub e: i64,
}

pub fn build_tables(orbits: &LineOrbitSet) -> Result<IntersectionTables> {
    let reps = orbits.representatives();
    let mut on_line: Vec<Vec<QuadRat>> = Vec::with_capacity(reps.len());
    for alpha in &reps {
        let mut set = BTreeSet::new();
        for beta in reps.iter().filter(|b| b.direction != alpha.direction) {
            set.extend(lambda_values(alpha, beta)?);
        }
        on_line.push(set.into_iter().collect());
    }

    let mut global: HashMap<PlanePoint, BTreeSet<usize>> = HashMap::new();
    for (k, alpha) in reps.iter().enumerate() {
        for lambda in &on_line[k] {
            global
                .entry(alpha.point_at(lambda).canon_zx())
                .or_default()
                .insert(k);
        }
    }

    let mut lines = Vec::with_capacity(reps.len());
    for (k, alpha) in reps.iter().enumerate() {
        let mut profile = [0usize; 5];
        for lambda in &on_line[k] {
            let incident = &global[&alpha.point_at(lambda).canon_zx()];
            let p = incident.len();
            if !(2..=6).contains(&p) {
                return Err(Error::Consistency(format!(
                    "point on orbit {k} has multiplicity {p}"
                )));
            }
            profile[p - 2] += 1;
        }
        lines.push(LineTable {
            orbit: k,
            direction: alpha.direction,
            anchor: alpha.anchor.clone(),
            lambdas: on_line[k].clone(),
            l0: on_line[k].len(),
            profile,
        });
    }

    let mut globals: Vec<GlobalClass> = global
        .into_iter()
        .map(|(key, incident)| GlobalClass { key, incident: incident.into_iter().collect() })
        .collect();
    globals.sort_by(|a, b| cmp_points(&a.key, &b.key));
    for g in &globals {
        let dirs: BTreeSet<usize> = g.incident.iter().map(|&k| reps[k].direction).collect();
        if dirs.len() != g.incident.len() {
            return Err(Error::Consistency(format!(
                "class {} meets two orbits of one direction",
                g.key
            )));
        }
    }

    let sum_l0_alpha: usize = lines.iter().map(|l| l.l0).sum();
    let l0 = globals.len();
    check_double_counting(&lines, l0)?;

    Ok(IntersectionTables {
        types: line_types(&lines),
        lines,
        globals,
        sum_l0_alpha,
        l0,
        e: sum_l0_alpha as i64 - l0 as i64,
    })
}

fn check_double_counting(lines: &[LineTable], l0: usize) -> Result<()> {
    let mut recovered = 0;
    for k in 0..5 {
        let p = k + 2;
        let column: usize = lines.iter().map(|l| l.profile[k]).sum();
        if !column.is_multiple_of(p) {
            return Err(Error::Consistency(format!(
                "{column} incidences of multiplicity {p} is not a multiple of {p}"
            )));
        }
        recovered += column / p;
    }
    if recovered != l0 {
        return Err(Error::Consistency(format!(
            "double counting gives {recovered} classes, found {l0}"
        )));
    }
    Ok(())
}

fn line_types(lines: &[LineTable]) -> Vec<LineType> {
    let mut groups: BTreeMap<(Parity, [usize; 5]), Vec<usize>> = BTreeMap::new();
    for l in lines {
        groups
            .entry((Parity::of(l.direction), l.profile))
            .or_default()
            .push(l.direction);
    }
    let mut types: Vec<LineType> = groups
        .into_iter()
        .map(|((parity, profile), directions)| LineType {
            parity,
            profile,
            total: profile.iter().sum(),
            count: directions.len(),
            directions,
        })
        .collect();
    types.sort_by(|a, b| {
        a.parity
            .cmp(&b.parity)
            .then(b.total.cmp(&a.total))
            .then(b.profile.cmp(&a.profile))
    });
    types
}

pub fn euler(tables: &IntersectionTables) -> i64 {
    tables.sum_l0_alpha as i64 - tables.l0 as i64
}

/// Counts that must not depend on which orbit member is the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Signature {
    per_orbit: Vec<(usize, [usize; 5])>,
    l0: usize,
}

fn signature(t: &IntersectionTables) -> Signature {
    Signature {
        per_orbit: t.lines.iter().map(|l| (l.l0, l.profile)).collect(),
        l0: t.l0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeCheck {
    pub variants: usize,
    pub mismatches: Vec<String>,
}

impl RepresentativeCheck {
    pub fn independent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Rebuilds the tables once per alternative orbit member and compares.
pub fn representative_check(orbits: &LineOrbitSet, base: &IntersectionTables) -> Result<RepresentativeCheck> {
    let reference = signature(base);
    let mut variants = 0;
    let mut mismatches = Vec::new();
    for (k, orbit) in orbits.orbits.iter().enumerate() {
        for m in 1..orbit.members.len() {
            let alt = orbits.with_representative(k, m);
            if alt.orbits[k].representative == orbit.representative {
                continue;
            }
            variants += 1;
            let sig = match build_tables(&alt) {
                Ok(t) => signature(&t),
                Err(e) => {
                    mismatches.push(format!("orbit {k} member {}: {e}", orbit.members[m]));
                    continue;
                }
            };
            if sig != reference {
                let total: usize = sig.per_orbit.iter().map(|p| p.0).sum();
                mismatches.push(format!(
                    "orbit {k} member {}: sum {} L0 {} (expected {} / {})",
                    orbit.members[m],
                    total,
                    sig.l0,
                    base.sum_l0_alpha,
                    base.l0
                ));
            }
        }
    }
    Ok(RepresentativeCheck { variants, mismatches })
}
