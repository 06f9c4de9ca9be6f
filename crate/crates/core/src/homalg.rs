//! Direction stabilizers, the exterior-square map β and its Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::PlanePoint;
use crate::exactfield::QuadRat;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            for (j, &x) in row.as_ref().iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_columns<C: AsRef<[i64]>>(cols: &[C]) -> Self {
        IntMatrix::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", self[(i, j)].to_string()))
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `u · m · v = diag(factors)` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|f| !f.is_zero()).count()
    }

    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

/// Smith normal form, pivoting on the entry of least absolute value.
pub fn smith(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);
    for t in 0..n {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[x].abs().cmp(&a[y].abs()));
            let Some((pi, pj)) = pivot else {
                return finish(a, u, v, n);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let k = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &k);
                u.add_row(i, t, &k);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let k = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &k);
                v.add_col(j, t, &k);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..r)
                .find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(a, u, v, n)
}

fn finish(a: IntMatrix, u: IntMatrix, v: IntMatrix, n: usize) -> SmithForm {
    let factors = (0..n).map(|i| a[(i, i)].clone()).collect();
    SmithForm { factors, u, v }
}

/// Generators of the stabilizer of direction `f_direction`, as integer
/// coordinates over `f1..f4` (with `f5 = f3 − f1`, `f6 = f4 − f2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerBasis {
    pub direction: usize,
    pub gens: [[i64; 4]; 2],
}

/// `f1..f6` in the `f1..f4` basis.
const F_COORDS: [[i64; 4]; 6] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 1, 0],
    [0, -1, 0, 1],
];

fn combo(terms: &[(i64, usize)]) -> [i64; 4] {
    let mut out = [0; 4];
    for &(k, i) in terms {
        for (o, c) in out.iter_mut().zip(F_COORDS[i - 1]) {
            *o += k * c;
        }
    }
    out
}

pub fn stabilizer_basis(direction: usize) -> StabilizerBasis {
    let second = match direction {
        1 => combo(&[(1, 6), (-1, 2)]),
        2 => combo(&[(1, 1), (1, 3)]),
        3 => combo(&[(1, 2), (1, 4)]),
        4 => combo(&[(1, 3), (1, 5)]),
        5 => combo(&[(1, 4), (1, 6)]),
        6 => combo(&[(1, 1), (-1, 5)]),
        _ => panic!("direction {direction} out of range"),
    };
    StabilizerBasis { direction, gens: [F_COORDS[direction - 1], second] }
}

impl StabilizerBasis {
    /// Plane vector of a generator.
    pub fn point(&self, which: usize) -> PlanePoint {
        let mut p = PlanePoint::zero();
        for (k, &c) in self.gens[which].iter().enumerate() {
            p = &p + &PlanePoint::f_vector(k + 1).scale(&QuadRat::integer(c));
        }
        p
    }

    pub fn is_parallel(&self) -> bool {
        let dir = PlanePoint::f_vector(self.direction);
        (0..2).all(|w| self.point(w).is_parallel_to(&dir))
    }

    /// `a ∧ b` in the basis 12, 13, 14, 23, 24, 34.
    pub fn wedge(&self) -> [i64; 6] {
        let [a, b] = self.gens;
        let mut out = [0; 6];
        let mut idx = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                out[idx] = a[i] * b[j] - a[j] * b[i];
                idx += 1;
            }
        }
        out
    }
}

/// Column `i` is the exterior square of the stabilizer of direction `i + 1`.
pub fn beta_matrix() -> IntMatrix {
    let cols: Vec<[i64; 6]> = (1..=6).map(|i| stabilizer_basis(i).wedge()).collect();
    IntMatrix::from_columns(&cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSummary {
    pub rank: usize,
    pub torsion_free: bool,
    pub coker_rank: usize,
    pub factors: Vec<i64>,
}

pub fn rank_and_cokernel() -> RankSummary {
    let m = beta_matrix();
    let s = smith(&m);
    let rank = s.rank();
    RankSummary {
        rank,
        torsion_free: s.factors.iter().filter(|f| !f.is_zero()).all(|f| f.is_one()),
        coker_rank: m.rows() - rank,
        factors: s
            .factors
            .iter()
            .map(|f| i64::try_from(f).expect("small invariant factor"))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_certificate(m: &IntMatrix, s: &SmithForm) {
        let d = s.u.mul(m).mul(&s.v);
        assert_eq!(d, s.diagonal(m.rows(), m.cols()));
        assert!(s.u.det().abs().is_one());
        assert!(s.v.det().abs().is_one());
        for w in s.factors.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{:?}", s.factors);
            } else {
                assert!(w[1].is_zero());
            }
        }
    }

    // Fraction-free elimination over Q, independent of the Smith routine.
    fn rank_by_elimination(m: &IntMatrix) -> usize {
        let mut a = m.clone();
        let mut rank = 0;
        for col in 0..a.cols() {
            let Some(p) = (rank..a.rows()).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..a.rows() {
                let f = a[(i, col)].clone();
                let g = a[(rank, col)].clone();
                for j in 0..a.cols() {
                    let v = &a[(i, j)] * &g - &a[(rank, j)] * &f;
                    a[(i, j)] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn stabilizer_rows() {
        assert_eq!(stabilizer_basis(1).gens, [[1, 0, 0, 0], [0, -2, 0, 1]]);
        assert_eq!(stabilizer_basis(4).gens, [[0, 0, 0, 1], [-1, 0, 2, 0]]);
        for i in 1..=6 {
            assert!(stabilizer_basis(i).is_parallel(), "direction {i}");
        }
    }

    #[test]
    fn beta_columns() {
        let m = beta_matrix();
        assert_eq!(m.column(0), big(&[-2, 0, 1, 0, 0, 0]));
        assert_eq!(m.column(1), big(&[-1, 0, 0, 1, 0, 0]));
        assert_eq!(m.column(2), big(&[0, 0, 0, -1, 0, 1]));
        assert_eq!(m.column(3), big(&[0, 0, 1, 0, 0, -2]));
        assert_eq!(m.column(4), big(&[1, 0, -2, 1, 0, 2]));
        assert_eq!(m.column(5), big(&[2, 0, -2, 1, 0, 1]));
    }

    #[test]
    fn beta_relations() {
        let m = beta_matrix();
        let col = |j: usize| m.column(j);
        let combo = |ks: [i64; 3]| -> Vec<BigInt> {
            (0..6)
                .map(|r| {
                    (0..3).map(|j| BigInt::from(ks[j]) * &col(j)[r]).sum::<BigInt>()
                })
                .collect()
        };
        assert_eq!(col(3), combo([1, -2, -2]));
        assert_eq!(col(4), combo([-2, 3, 2]));
        assert_eq!(col(5), combo([-2, 2, 1]));
    }

    #[test]
    fn smith_examples() {
        let d = IntMatrix::from_rows(&[[2, 0], [0, 4]]);
        assert_eq!(smith(&d).factors, big(&[2, 4]));
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let s = smith(&m);
        assert_eq!(s.factors, big(&[1, 1]));
        check_certificate(&m, &s);
        let m = IntMatrix::from_rows(&[[4, 0], [0, 6]]);
        assert_eq!(smith(&m).factors, big(&[2, 12]));
        let b = beta_matrix();
        let s = smith(&b);
        assert_eq!(s.factors, big(&[1, 1, 1, 0, 0, 0]));
        check_certificate(&b, &s);
    }

    #[test]
    fn beta_rank() {
        let r = rank_and_cokernel();
        assert_eq!(r.rank, 3);
        assert!(r.torsion_free);
        assert_eq!(r.coker_rank, 3);
        assert_eq!(rank_by_elimination(&beta_matrix()), 3);
    }

    #[test]
    fn degenerate_shapes() {
        let z = IntMatrix::zeros(3, 2);
        let s = smith(&z);
        assert_eq!(s.factors, big(&[0, 0]));
        check_certificate(&z, &s);
        let row = IntMatrix::from_rows(&[[6, 10, 15]]);
        let s = smith(&row);
        assert_eq!(s.factors, big(&[1]));
        check_certificate(&row, &s);
    }

    fn matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..10, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.to_vec()).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    // Product of random elementary operations.
    fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec((0..n, 0..n, -3i64..4, any::<bool>()), 0..12).prop_map(move |ops| {
            let mut m = IntMatrix::identity(n);
            for (i, j, k, swap) in ops {
                if swap {
                    m.swap_rows(i, j);
                } else if i != j {
                    m.add_row(i, j, &BigInt::from(k));
                }
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn certificate_holds(m in matrix(8)) {
            let s = smith(&m);
            check_certificate(&m, &s);
        }

        #[test]
        fn rank_agrees_with_elimination(m in matrix(8)) {
            prop_assert_eq!(smith(&m).rank(), rank_by_elimination(&m));
        }

        #[test]
        fn invariant_under_unimodular(
            (m, u, v) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
                (
                    prop::collection::vec(-9i64..10, r * c).prop_map(move |x| {
                        let rows: Vec<Vec<i64>> = x.chunks(c).map(|ch| ch.to_vec()).collect();
                        IntMatrix::from_rows(&rows)
                    }),
                    unimodular(r),
                    unimodular(c),
                )
            })
        ) {
            let a = smith(&m).factors;
            let b = smith(&u.mul(&m).mul(&v)).factors;
            prop_assert_eq!(a, b);
        }
    }
}
