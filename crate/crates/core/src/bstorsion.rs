//! Truncations of `Π ⊙_π Π` for `π = BS(1, m)` and their Smith normal forms.
//!
//! Generators are `a_z` for `z = j / m^N`, `0 ≤ j < m^{N+1}`, with index
//! arithmetic mod `m`. Relations are the symmetry `a_z = a_{(m - z) mod m}`
//! and the doubling `a_z = m Σ_{k<m} a_{k + z/m}` wherever `z/m` is still
//! in the truncation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged integer matrix".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { BigInt::one() } else { sign * &a[n - 1][n - 1] })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// `row_i += c · row_j`.
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = &self.data[j][k] * c;
            self.data[i][k] += v;
        }
    }

    /// `col_i += c · col_j`.
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in &mut self.data {
            let v = &r[j] * c;
            r[i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -std::mem::take(v);
        }
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.data.iter().map(|r| r.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

fn big_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::from(n.to_string()), Value::from)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    /// Diagonal entries, `min(rows, cols)` of them, each dividing the next.
    pub divisors: Vec<BigInt>,
    /// `U A V = D` with `U`, `V` unimodular.
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl Smith {
    pub fn nonzero(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Rank of the free part of the cokernel of `A` (as a map on row vectors).
    pub fn free_rank(&self) -> usize {
        self.d.cols() - self.nonzero()
    }
}

/// Smith normal form with unimodular transforms, pivoting on the entry of
/// least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.data[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| d.data[i][j].abs().cmp(&d.data[k][l].abs()))
        else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = d.data[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = -(&d.data[i][t] / &p);
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= d.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = -(&d.data[t][j] / &p);
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                clean &= d.data[t][j].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot is left: move it in
                let best = (t + 1..rows)
                    .map(|i| (i, t))
                    .chain((t + 1..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| !d.data[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| d.data[i][j].abs().cmp(&d.data[k][l].abs()))
                    .expect("unclean pivot row/column has a nonzero entry");
                if best.1 == t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.data[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    let divisors = (0..rows.min(cols)).map(|i| d.data[i][i].clone()).collect();
    Smith { divisors, u, v, d }
}

/// The truncated generating set, as numerators over `m^depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    pub m: u64,
    pub depth: u32,
    pub numerators: Vec<u64>,
}

impl IndexSet {
    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn denominator(&self) -> u64 {
        self.m.pow(self.depth)
    }

    /// `j / m^N` in lowest terms, e.g. `3/2` or `1`.
    pub fn label(&self, j: u64) -> String {
        let (mut num, mut den) = (j, self.denominator());
        while den > 1 && num % self.m == 0 {
            num /= self.m;
            den /= self.m;
        }
        if den == 1 {
            num.to_string()
        } else {
            format!("{num}/{den}")
        }
    }
}

fn check_params(m: u64, depth: u32) -> Result<()> {
    if m < 2 || depth < 1 {
        return Err(Error::InvalidArgument(format!("need m ≥ 2 and depth ≥ 1, got m = {m}, depth = {depth}")));
    }
    m.checked_pow(depth + 1)
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::InvalidArgument(format!("truncation m^(depth+1) too large for m = {m}, depth = {depth}")))?;
    Ok(())
}

pub fn truncated_generators(m: u64, depth: u32) -> Result<IndexSet> {
    check_params(m, depth)?;
    Ok(IndexSet { m, depth, numerators: (0..m.pow(depth + 1)).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationMatrix {
    pub basis: IndexSet,
    pub matrix: IntMatrix,
    pub symmetry_rows: usize,
    pub doubling_rows: usize,
}

pub fn relation_matrix(m: u64, depth: u32) -> Result<RelationMatrix> {
    let basis = truncated_generators(m, depth)?;
    let n = basis.len() as u64;
    let den = basis.denominator();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for j in 0..n {
        let partner = (n - j) % n;
        if j < partner {
            let mut r = vec![0i64; n as usize];
            r[j as usize] = 1;
            r[partner as usize] = -1;
            rows.push(r);
        }
    }
    let symmetry_rows = rows.len();
    for j in (0..n).step_by(m as usize) {
        let mut r = vec![0i64; n as usize];
        r[j as usize] += 1;
        for k in 0..m {
            r[(k * den + j / m) as usize] -= m as i64;
        }
        rows.push(r);
    }
    let doubling_rows = rows.len() - symmetry_rows;
    let matrix = if rows.is_empty() { IntMatrix::zero(0, n as usize) } else { IntMatrix::from_rows(rows)? };
    Ok(RelationMatrix { basis, matrix, symmetry_rows, doubling_rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub m: u64,
    pub depth: u32,
    pub basis_size: usize,
    pub symmetry_rows: usize,
    pub doubling_rows: usize,
    pub divisors: Vec<BigInt>,
    pub free_rank: usize,
    pub torsion_free: bool,
}

impl TorsionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "depth": self.depth,
            "basis_size": self.basis_size,
            "symmetry_rows": self.symmetry_rows,
            "doubling_rows": self.doubling_rows,
            "divisors": self.divisors.iter().map(big_json).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "torsion_free": self.torsion_free,
        })
    }
}

pub fn torsion_report(m: u64, depth: u32) -> Result<TorsionReport> {
    let rel = relation_matrix(m, depth)?;
    let snf = smith_normal_form(&rel.matrix);
    Ok(TorsionReport {
        m,
        depth,
        basis_size: rel.basis.len(),
        symmetry_rows: rel.symmetry_rows,
        doubling_rows: rel.doubling_rows,
        torsion_free: snf.divisors.iter().all(|d| d.is_zero() || d.is_one()),
        free_rank: snf.free_rank(),
        divisors: snf.divisors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        for w in s.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
        }
        s
    }

    #[test]
    fn index_sets() {
        let b = truncated_generators(2, 1).unwrap();
        let labels: Vec<String> = b.numerators.iter().map(|&j| b.label(j)).collect();
        assert_eq!(labels, ["0", "1/2", "1", "3/2"]);
        assert_eq!(truncated_generators(2, 2).unwrap().len(), 8);
        assert_eq!(truncated_generators(3, 1).unwrap().len(), 9);
        assert!(truncated_generators(1, 1).is_err());
        assert!(truncated_generators(2, 0).is_err());
    }

    #[test]
    fn m2_depth1_matrix() {
        let r = relation_matrix(2, 1).unwrap();
        let rows: Vec<Vec<BigInt>> = (0..r.matrix.rows()).map(|i| r.matrix.row(i).to_vec()).collect();
        assert_eq!(rows, vec![ints(&[0, 1, 0, -1]), ints(&[-1, 0, -2, 0]), ints(&[0, -2, 1, -2])]);
    }

    #[test]
    fn m3_doubling_pattern() {
        let r = relation_matrix(3, 1).unwrap();
        for i in r.symmetry_rows..r.matrix.rows() {
            let mut nz: Vec<i64> = r.matrix.row(i).iter().filter(|c| !c.is_zero()).map(|c| c.to_i64().unwrap()).collect();
            nz.sort();
            // a_z with z ≠ k + z/3 for every k, except z = 0 where the 1 merges
            assert!(nz == [-3, -3, -3, 1] || nz == [-3, -3, -2]);
        }
    }

    #[test]
    fn smith_examples() {
        let s = check(&IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]).unwrap());
        assert_eq!(s.divisors, ints(&[1, 6]));
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.divisors, ints(&[1, 1, 1]));
        let s = check(&IntMatrix::from_rows(vec![vec![0]]).unwrap());
        assert_eq!(s.divisors, ints(&[0]));
        let s = check(&IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap());
        assert_eq!(s.divisors, ints(&[2, 6, 12]));
    }

    #[test]
    fn bs_reports() {
        let r = torsion_report(2, 1).unwrap();
        assert_eq!(r.divisors, ints(&[1, 1, 1]));
        assert_eq!(r.free_rank, 1);
        assert!(r.torsion_free);
        for (m, n) in [(2, 2), (2, 3), (4, 1)] {
            let r = torsion_report(m, n).unwrap();
            assert!(r.torsion_free, "m={m} N={n}: {:?}", r.divisors);
            check(&relation_matrix(m, n).unwrap().matrix);
        }
        // For odd m the z = 0 row is (1 - m) a_0 - 2m Σ_{k<m/2} a_k after the
        // symmetry identifications, and a_0 occurs nowhere else: one Z/2.
        for (m, n) in [(3, 1), (3, 2), (5, 1)] {
            let r = torsion_report(m, n).unwrap();
            let units: Vec<&BigInt> = r.divisors.iter().filter(|d| !d.is_zero() && !d.is_one()).collect();
            assert_eq!(units, vec![&BigInt::from(2)], "m={m} N={n}");
            check(&relation_matrix(m, n).unwrap().matrix);
        }
    }

    #[test]
    fn truncation_is_monotone() {
        for (m, n) in [(2, 1), (2, 2), (3, 1)] {
            let small = relation_matrix(m, n).unwrap();
            let big = relation_matrix(m, n + 1).unwrap();
            let embed = |row: &[BigInt]| {
                let mut out = vec![BigInt::zero(); big.basis.len()];
                for (j, c) in row.iter().enumerate() {
                    out[j * m as usize] = c.clone();
                }
                out
            };
            let big_rows: Vec<Vec<BigInt>> = (0..big.matrix.rows()).map(|i| big.matrix.row(i).to_vec()).collect();
            for i in 0..small.matrix.rows() {
                let e = embed(small.matrix.row(i));
                let neg: Vec<BigInt> = e.iter().map(|c| -c).collect();
                assert!(big_rows.contains(&e) || big_rows.contains(&neg));
            }
        }
    }
}
