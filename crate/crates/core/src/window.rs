//! The window W, the projection of the unit 6-cube to the internal plane
//! times F, its 40 cubes, and their slices by the planes `F = γ + Z²`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::PlanePoint;
use crate::error::{Error, Result};
use crate::exactfield::QuadRat;
use crate::homalg::IntMatrix;
use crate::lineorbits::{GammaParam, SingularLine};

pub type Lattice6 = [i64; 6];

/// F-parts of the generators `g_1..g_6` in the basis `{A, B}`.
pub const DELTA: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 0), (0, 1)];

/// Edge code `k` is the signed generator whose internal part is `x^k/√3`.
const CODE_GEN: [(usize, i64); 12] = [
    (0, 1),
    (5, 1),
    (4, -1),
    (3, 1),
    (2, -1),
    (1, 1),
    (0, -1),
    (5, -1),
    (4, 1),
    (3, -1),
    (2, 1),
    (1, -1),
];

pub fn code_generator(code: u8) -> (usize, i64) {
    CODE_GEN[code as usize % 12]
}

pub fn unit(j: usize) -> Lattice6 {
    let mut n = [0; 6];
    n[j] = 1;
    n
}

pub fn fperp(n: &Lattice6) -> PlanePoint {
    n.iter().enumerate().fold(PlanePoint::zero(), |acc, (j, &c)| {
        &acc + &PlanePoint::f_vector(j + 1).scale(&QuadRat::integer(c))
    })
}

pub fn fpart(n: &Lattice6) -> (i64, i64) {
    n.iter()
        .zip(DELTA)
        .fold((0, 0), |(a, b), (&c, (da, db))| (a + c * da, b + c * db))
}

fn add(a: &Lattice6, b: &Lattice6) -> Lattice6 {
    std::array::from_fn(|j| a[j] + b[j])
}

fn signed_gen(code: u8) -> Lattice6 {
    let (j, s) = code_generator(code);
    let mut n = [0; 6];
    n[j] = s;
    n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowVertex {
    pub n: Lattice6,
    pub fperp: PlanePoint,
    pub fpart: (i64, i64),
}

impl WindowVertex {
    pub fn from_lattice(n: Lattice6) -> Self {
        WindowVertex { fperp: fperp(&n), fpart: fpart(&n), n }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PlaneShape {
    Point,
    Triangle,
    Hexagon,
}

/// Hull vertices of W; each plane lists its polygon in counter-clockwise
/// order in `(u, v)` coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Window {
    pub vertices: Vec<WindowVertex>,
    #[serde(with = "plane_entries")]
    pub planes: BTreeMap<(i64, i64), Vec<usize>>,
}

// JSON object keys must be strings; planes go out as `[[a, b], [ix...]]` pairs.
mod plane_entries {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    type Planes = BTreeMap<(i64, i64), Vec<usize>>;

    pub fn serialize<S: Serializer>(planes: &Planes, s: S) -> Result<S::Ok, S::Error> {
        planes.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Planes, D::Error> {
        Ok(Vec::<((i64, i64), Vec<usize>)>::deserialize(d)?.into_iter().collect())
    }
}

impl Window {
    pub fn shape(&self, plane: (i64, i64)) -> Option<PlaneShape> {
        match self.planes.get(&plane)?.len() {
            1 => Some(PlaneShape::Point),
            3 => Some(PlaneShape::Triangle),
            6 => Some(PlaneShape::Hexagon),
            _ => None,
        }
    }

    pub fn index_of(&self, n: &Lattice6) -> Option<usize> {
        self.vertices.iter().position(|v| &v.n == n)
    }

    pub fn polygon(&self, plane: (i64, i64)) -> Vec<Lattice6> {
        self.planes
            .get(&plane)
            .map(|ix| ix.iter().map(|&i| self.vertices[i].n).collect())
            .unwrap_or_default()
    }
}

fn orient(o: &PlanePoint, a: &PlanePoint, b: &PlanePoint) -> i32 {
    (a - o).cross(&(b - o)).signum()
}

fn lex(a: &PlanePoint, b: &PlanePoint) -> std::cmp::Ordering {
    a.u.cmp(&b.u).then_with(|| a.v.cmp(&b.v))
}

/// Strict convex hull, counter-clockwise from the lexicographic minimum.
pub fn convex_hull(points: &[(Lattice6, PlanePoint)]) -> Vec<Lattice6> {
    let mut pts: Vec<&(Lattice6, PlanePoint)> = points.iter().collect();
    pts.sort_by(|a, b| lex(&a.1, &b.1));
    pts.dedup_by(|a, b| a.1 == b.1);
    if pts.len() < 3 {
        return pts.iter().map(|p| p.0).collect();
    }
    let mut hull: Vec<&(Lattice6, PlanePoint)> = Vec::with_capacity(2 * pts.len());
    for pass in [false, true] {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &&(Lattice6, PlanePoint)>> =
            if pass { Box::new(pts.iter().rev()) } else { Box::new(pts.iter()) };
        for p in iter {
            while hull.len() >= start + 2
                && orient(&hull[hull.len() - 2].1, &hull[hull.len() - 1].1, &p.1) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull.iter().map(|p| p.0).collect()
}

pub fn build_window() -> Result<Window> {
    let mut by_plane: BTreeMap<(i64, i64), Vec<(Lattice6, PlanePoint)>> = BTreeMap::new();
    for mask in 0u32..64 {
        let n: Lattice6 = std::array::from_fn(|j| ((mask >> j) & 1) as i64);
        by_plane.entry(fpart(&n)).or_default().push((n, fperp(&n)));
    }
    let mut vertices = Vec::new();
    let mut planes = BTreeMap::new();
    for (plane, pts) in by_plane {
        let hull = convex_hull(&pts);
        if ![1, 3, 6].contains(&hull.len()) {
            return Err(Error::Consistency(format!(
                "plane {plane:?} has a hull with {} vertices",
                hull.len()
            )));
        }
        let ix = hull
            .into_iter()
            .map(|n| {
                vertices.push(WindowVertex::from_lattice(n));
                vertices.len() - 1
            })
            .collect();
        planes.insert(plane, ix);
    }
    Ok(Window { vertices, planes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CubeKind {
    Long,
    Isolated,
    Triangle,
}

/// `{base; x^a, x^b, x^c}`: the parallelepiped spanned at `base` by the
/// signed generators of three edge codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cube {
    pub base: Lattice6,
    pub edges: [u8; 3],
    pub kind: CubeKind,
}

impl Cube {
    pub fn corners(&self) -> Vec<Lattice6> {
        (0..8u8)
            .map(|eps| {
                (0..3).fold(self.base, |acc, k| {
                    if eps >> k & 1 == 1 {
                        add(&acc, &signed_gen(self.edges[k]))
                    } else {
                        acc
                    }
                })
            })
            .collect()
    }

    /// Same point set written with positive generators: `(base', [j1<j2<j3])`.
    pub fn normalized(&self) -> (Lattice6, [usize; 3]) {
        let mut base = self.base;
        let mut gens = [0usize; 3];
        for (k, &code) in self.edges.iter().enumerate() {
            let (j, s) = code_generator(code);
            if s < 0 {
                base[j] -= 1;
            }
            gens[k] = j;
        }
        gens.sort_unstable();
        (base, gens)
    }

    pub fn planes(&self) -> BTreeSet<(i64, i64)> {
        self.corners().iter().map(fpart).collect()
    }

    fn faces(&self) -> Vec<BTreeSet<Lattice6>> {
        let c = self.corners();
        let mut out = Vec::with_capacity(6);
        for k in 0..3 {
            for bit in 0..2 {
                out.push((0..8).filter(|e| (e >> k) & 1 == bit).map(|e| c[e]).collect());
            }
        }
        out
    }

    fn edge_pairs(&self) -> Vec<(Lattice6, Lattice6)> {
        let c = self.corners();
        let mut out = Vec::with_capacity(12);
        for e in 0..8usize {
            for k in 0..3 {
                if (e >> k) & 1 == 0 {
                    let (a, b) = (c[e], c[e | (1 << k)]);
                    out.push(if a <= b { (a, b) } else { (b, a) });
                }
            }
        }
        out
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .base
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match c {
                1 => format!("g{}", j + 1),
                _ => format!("{c}g{}", j + 1),
            })
            .collect();
        let base = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        write!(f, "{{{base}; x^{}, x^{}, x^{}}}", self.edges[0], self.edges[1], self.edges[2])
    }
}

fn lattice(terms: &[usize]) -> Lattice6 {
    terms.iter().fold([0; 6], |acc, &j| add(&acc, &unit(j - 1)))
}

/// The isolated vertices, bottom-left first, counter-clockwise.
pub fn isolated_vertices() -> [Lattice6; 4] {
    [lattice(&[3, 4]), lattice(&[2, 3, 6]), lattice(&[1, 2, 5, 6]), lattice(&[1, 4, 5])]
}

fn triples(shape: [i64; 2], starts: [i64; 3]) -> Vec<[u8; 3]> {
    starts
        .iter()
        .map(|&i| {
            let m = |k: i64| (k.rem_euclid(12)) as u8;
            [m(i), m(i + shape[0]), m(i + shape[1])]
        })
        .collect()
}

pub fn enumerate_cubes(window: &Window) -> Result<Vec<Cube>> {
    let [v1, v2, v3, v4] = isolated_vertices();
    let mut cubes = Vec::with_capacity(40);
    for (base, edges) in [(v1, [1, 5, 9]), (v4, [1, 5, 9]), (v1, [0, 4, 8]), (v2, [0, 4, 8])] {
        cubes.push(Cube { base, edges, kind: CubeKind::Long });
    }
    let isolated = [
        (v1, triples([3, 4], [1, 5, 9]), triples([1, 4], [0, 4, 8])),
        (v2, triples([1, 4], [3, 7, 11]), triples([3, 4], [0, 4, 8])),
        (v3, triples([3, 4], [3, 7, 11]), triples([1, 4], [2, 6, 10])),
        (v4, triples([1, 4], [1, 5, 9]), triples([3, 4], [2, 6, 10])),
    ];
    for (base, a, b) in isolated {
        for edges in a.into_iter().chain(b) {
            cubes.push(Cube { base, edges, kind: CubeKind::Isolated });
        }
    }
    let triangles = [
        ((-1, 0), triples([5, 4], [0, 4, 8])),
        ((0, -1), triples([-1, 4], [1, 5, 9])),
        ((2, 1), triples([5, 4], [2, 6, 10])),
        ((1, 2), triples([-1, 4], [3, 7, 11])),
    ];
    let hull: BTreeSet<Lattice6> = window.vertices.iter().map(|v| v.n).collect();
    for (plane, list) in triangles {
        let corners = window.polygon(plane);
        if corners.len() != 3 {
            return Err(Error::Consistency(format!("plane {plane:?} is not a triangle")));
        }
        for edges in list {
            let fits: Vec<Lattice6> = corners
                .iter()
                .copied()
                .filter(|&base| {
                    Cube { base, edges, kind: CubeKind::Triangle }
                        .corners()
                        .iter()
                        .all(|c| hull.contains(c))
                })
                .collect();
            match fits.as_slice() {
                [base] => cubes.push(Cube { base: *base, edges, kind: CubeKind::Triangle }),
                _ => {
                    return Err(Error::Consistency(format!(
                        "{} admissible bases for triple {edges:?} on plane {plane:?}",
                        fits.len()
                    )))
                }
            }
        }
    }
    for cube in &cubes {
        for c in cube.corners() {
            if !hull.contains(&c) {
                return Err(Error::Consistency(format!("{cube}: corner {c:?} is not a window vertex")));
            }
        }
    }
    Ok(cubes)
}

/// Combinatorial census of W with any disagreement spelled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cubes: usize,
    pub long_cubes: usize,
    pub isolated_points: usize,
    pub triangles: usize,
    pub hexagons: usize,
    pub valency: BTreeMap<usize, usize>,
    /// valency → the distinct numbers of cubes containing such a vertex
    pub cube_membership: BTreeMap<usize, BTreeSet<usize>>,
    pub edge_length_sq: Vec<QuadRat>,
    pub plane_preserving_is_zx: bool,
    pub mismatches: Vec<String>,
}

impl WindowReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for WindowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices        {}", self.vertices)?;
        writeln!(f, "edges           {}", self.edges)?;
        writeln!(f, "2-faces         {}", self.faces)?;
        writeln!(f, "cubes           {} ({} long)", self.cubes, self.long_cubes)?;
        writeln!(
            f,
            "planes          {} points, {} triangles, {} hexagons",
            self.isolated_points, self.triangles, self.hexagons
        )?;
        for (val, n) in &self.valency {
            let cubes: Vec<String> =
                self.cube_membership[val].iter().map(|c| c.to_string()).collect();
            writeln!(f, "valency {val}       {n} vertices, in {} cubes", cubes.join("/"))?;
        }
        let lens: Vec<String> = self.edge_length_sq.iter().map(|l| l.to_string()).collect();
        writeln!(f, "edge length²    {}", lens.join(", "))?;
        writeln!(f, "plane-preserving sublattice = Z[x]: {}", self.plane_preserving_is_zx)?;
        for m in &self.mismatches {
            writeln!(f, "MISMATCH {m}")?;
        }
        Ok(())
    }
}

/// Integer coordinates of `p` in the Z-basis `{1, √3, x, √3x}` of Z[x].
fn zx_coordinates(p: &PlanePoint) -> Option<[i64; 4]> {
    let parts = [p.u.rational(), p.u.surd(), p.v.rational(), p.v.surd()];
    let mut out = [0i64; 4];
    for (o, r) in out.iter_mut().zip(parts) {
        if !r.is_integer() {
            return None;
        }
        *o = r.to_integer().to_i64()?;
    }
    Some(out)
}

/// True iff `{n ∈ Z⁶ : F-part(n) = 0}` projects onto exactly Z[x].
pub fn plane_preserving_is_zx() -> bool {
    let kernel: [Lattice6; 4] = [
        lattice(&[1, 3]),
        lattice(&[3, 5]),
        lattice(&[2, 4]),
        lattice(&[4, 6]),
    ];
    if kernel.iter().any(|n| fpart(n) != (0, 0)) {
        return false;
    }
    let mut cols: Vec<Vec<i64>> = kernel.iter().map(|n| n.to_vec()).collect();
    cols.push(unit(0).to_vec());
    cols.push(unit(1).to_vec());
    let spans_kernel = IntMatrix::from_columns(&cols).det().abs() == 1.into();
    let images: Option<Vec<[i64; 4]>> = kernel.iter().map(|n| zx_coordinates(&fperp(n))).collect();
    match images {
        Some(img) => spans_kernel && IntMatrix::from_columns(&img).det().abs() == 1.into(),
        None => false,
    }
}

pub fn verify_counts(window: &Window, cubes: &[Cube]) -> WindowReport {
    let mut mismatches = Vec::new();
    let mut expect = |what: &str, got: usize, want: usize| {
        if got != want {
            mismatches.push(format!("{what}: {got}, expected {want}"));
        }
    };

    let edges: BTreeSet<(Lattice6, Lattice6)> =
        cubes.iter().flat_map(|c| c.edge_pairs()).collect();
    let faces: BTreeSet<BTreeSet<Lattice6>> = cubes.iter().flat_map(|c| c.faces()).collect();
    let shape_count = |s: PlaneShape| window.planes.keys().filter(|p| window.shape(**p) == Some(s)).count();
    let long_cubes = cubes.iter().filter(|c| c.kind == CubeKind::Long).count();

    let mut degree: BTreeMap<Lattice6, usize> = BTreeMap::new();
    for (a, b) in &edges {
        *degree.entry(*a).or_default() += 1;
        *degree.entry(*b).or_default() += 1;
    }
    let mut in_cubes: BTreeMap<Lattice6, usize> = BTreeMap::new();
    for c in cubes {
        for n in c.corners() {
            *in_cubes.entry(n).or_default() += 1;
        }
    }
    let mut valency = BTreeMap::new();
    let mut cube_membership: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for v in &window.vertices {
        let d = degree.get(&v.n).copied().unwrap_or(0);
        *valency.entry(d).or_insert(0) += 1;
        cube_membership
            .entry(d)
            .or_default()
            .insert(in_cubes.get(&v.n).copied().unwrap_or(0));
    }
    let lengths: BTreeSet<QuadRat> = edges
        .iter()
        .map(|(a, b)| (&fperp(a) - &fperp(b)).norm_sq())
        .collect();
    let plane_ok = plane_preserving_is_zx();

    expect("vertices", window.vertices.len(), 52);
    expect("edges", edges.len(), 132);
    expect("2-faces", faces.len(), 120);
    expect("cubes", cubes.len(), 40);
    expect("long cubes", long_cubes, 4);
    expect("isolated points", shape_count(PlaneShape::Point), 4);
    expect("triangles", shape_count(PlaneShape::Triangle), 8);
    expect("hexagons", shape_count(PlaneShape::Hexagon), 4);
    let want_valency = BTreeMap::from([(4, 12), (5, 24), (6, 16)]);
    if valency != want_valency {
        mismatches.push(format!("valency histogram {valency:?}, expected {want_valency:?}"));
    }
    let want_membership: BTreeMap<usize, BTreeSet<usize>> =
        BTreeMap::from([(4, [4].into()), (5, [6].into()), (6, [8].into())]);
    if cube_membership != want_membership {
        mismatches.push(format!("cube membership {cube_membership:?}, expected {want_membership:?}"));
    }
    if lengths != BTreeSet::from([QuadRat::ratio(1, 3)]) {
        mismatches.push("edges are not all of squared length 1/3".into());
    }
    if !plane_ok {
        mismatches.push("plane-preserving sublattice does not project onto Z[x]".into());
    }

    WindowReport {
        vertices: window.vertices.len(),
        edges: edges.len(),
        faces: faces.len(),
        cubes: cubes.len(),
        long_cubes,
        isolated_points: shape_count(PlaneShape::Point),
        triangles: shape_count(PlaneShape::Triangle),
        hexagons: shape_count(PlaneShape::Hexagon),
        valency,
        cube_membership,
        edge_length_sq: lengths.into_iter().collect(),
        plane_preserving_is_zx: plane_ok,
        mismatches,
    }
}

/// A line of a slice, moved to the plane through γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicedLine {
    pub line: SingularLine,
    pub cube: usize,
    /// `D` with the slicing plane at F-part `δ(base) − D`
    pub shift: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceResult {
    pub lines: Vec<SlicedLine>,
    pub incidences: usize,
    pub long_cubes_sliced: Vec<usize>,
}

impl SliceResult {
    pub fn distinct_lines(&self) -> Vec<SingularLine> {
        let mut out: Vec<SingularLine> = Vec::new();
        for s in &self.lines {
            if !out.contains(&s.line) {
                out.push(s.line.clone());
            }
        }
        out
    }
}

const SHIFT_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

fn in_range(t: &QuadRat, lo: i64, hi: i64, open: bool) -> bool {
    let a = (t - &QuadRat::integer(lo)).signum();
    let b = (&QuadRat::integer(hi) - t).signum();
    if open {
        a > 0 && b > 0
    } else {
        a >= 0 && b >= 0
    }
}

struct Frame {
    f: [PlanePoint; 3],
    d: [(i64, i64); 3],
}

impl Frame {
    fn d(&self, k: usize, axis: usize) -> i64 {
        if axis == 0 {
            self.d[k].0
        } else {
            self.d[k].1
        }
    }

    // Segment where generators r and s meet `Σ α d = t` along `axis`.
    fn pair_line(&self, axis: usize, r: usize, s: usize, t: &QuadRat, base: &PlanePoint) -> Option<SingularLine> {
        let (hr, hs) = (self.d(r, axis), self.d(s, axis));
        let lo = hr.min(0) + hs.min(0);
        let hi = hr.max(0) + hs.max(0);
        if !in_range(t, lo, hi, true) {
            return None;
        }
        let pt = base + &self.f[r].scale(&(t * &QuadRat::integer(hr)));
        let dir = &self.f[r].scale(&QuadRat::integer(hs)) - &self.f[s].scale(&QuadRat::integer(hr));
        let direction = dir.direction_index()?;
        Some(SingularLine::new(direction, pt))
    }
}

fn slice_cube(gens: &[usize; 3], t: &[QuadRat; 2]) -> Vec<SingularLine> {
    let frame = Frame {
        f: gens.map(|j| PlanePoint::f_vector(j + 1)),
        d: gens.map(|j| DELTA[j]),
    };
    let hor: Vec<usize> = (0..3).filter(|&k| frame.d[k].1 == 0).collect();
    let ver: Vec<usize> = (0..3).filter(|&k| frame.d[k].0 == 0).collect();
    let mut out = Vec::new();
    if hor.len() == 2 || ver.len() == 2 {
        let (pair, single, ci, cs) =
            if hor.len() == 2 { (hor, ver[0], 0, 1) } else { (ver, hor[0], 1, 0) };
        let alpha = &t[cs] * &QuadRat::integer(frame.d(single, cs));
        if in_range(&alpha, 0, 1, false) {
            let base = frame.f[single].scale(&alpha);
            out.extend(frame.pair_line(ci, pair[0], pair[1], &t[ci], &base));
        }
        return out;
    }
    let (ci, cs) = if hor.len() == 3 { (0, 1) } else { (1, 0) };
    if !t[cs].is_zero() {
        return out;
    }
    let lo: i64 = (0..3).map(|k| frame.d(k, ci).min(0)).sum();
    let hi: i64 = (0..3).map(|k| frame.d(k, ci).max(0)).sum();
    if !in_range(&t[ci], lo, hi, true) {
        return out;
    }
    for k in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
        for c in 0..2 {
            let tt = &t[ci] - &QuadRat::integer(c * frame.d(k, ci));
            let base = frame.f[k].scale(&QuadRat::integer(c));
            out.extend(frame.pair_line(ci, others[0], others[1], &tt, &base));
        }
    }
    out
}

pub fn slice(gamma: &GammaParam, cubes: &[Cube]) -> SliceResult {
    let mut lines = Vec::new();
    let mut incidences = 0;
    let mut long_cubes_sliced = Vec::new();
    let f1 = PlanePoint::f_vector(1);
    let f2 = PlanePoint::f_vector(2);
    for (id, cube) in cubes.iter().enumerate() {
        let (_, gens) = cube.normalized();
        let mut hit = false;
        for d1 in SHIFT_RANGE {
            for d2 in SHIFT_RANGE {
                let t = [&gamma.g1 - &QuadRat::integer(d1), &gamma.g2 - &QuadRat::integer(d2)];
                let found = slice_cube(&gens, &t);
                if found.is_empty() {
                    continue;
                }
                incidences += 1;
                hit = true;
                let shift = &f1.scale(&QuadRat::integer(d1)) + &f2.scale(&QuadRat::integer(d2));
                for l in found {
                    let line = SingularLine::new(l.direction, &l.anchor + &shift).reduced();
                    lines.push(SlicedLine { line, cube: id, shift: (d1, d2) });
                }
            }
        }
        if hit && cube.kind == CubeKind::Long {
            long_cubes_sliced.push(id);
        }
    }
    SliceResult { lines, incidences, long_cubes_sliced }
}

/// Facet cubes of the zonotope computed from normals, as `(base, gens)`.
pub fn zonotope_facets() -> Vec<(Lattice6, [usize; 3])> {
    let coords: Vec<[QuadRat; 4]> = (0..6)
        .map(|j| {
            let p = PlanePoint::f_vector(j + 1);
            [p.u, p.v, QuadRat::integer(DELTA[j].0), QuadRat::integer(DELTA[j].1)]
        })
        .collect();
    let det3 = |m: [[&QuadRat; 3]; 3]| {
        m[0][0] * &(m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * &(m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * &(m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let mut out = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            for c in b + 1..6 {
                let tri = [a, b, c];
                let normal: Vec<QuadRat> = (0..4)
                    .map(|col| {
                        let keep: Vec<usize> = (0..4).filter(|&k| k != col).collect();
                        let row = |j: usize| [&coords[j][keep[0]], &coords[j][keep[1]], &coords[j][keep[2]]];
                        let d = det3([row(a), row(b), row(c)]);
                        if col % 2 == 0 { d } else { -d }
                    })
                    .collect();
                for sign in [1, -1] {
                    let mut base = [0i64; 6];
                    for j in (0..6).filter(|j| !tri.contains(j)) {
                        let dot = normal
                            .iter()
                            .zip(&coords[j])
                            .fold(QuadRat::zero(), |acc, (n, g)| &acc + &(n * g));
                        if dot.signum() * sign > 0 {
                            base[j] = 1;
                        }
                    }
                    out.push((base, tri));
                }
            }
        }
    }
    out
}
