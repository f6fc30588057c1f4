//! Small exact linear algebra over `i64` and `Rational64`: matrix helpers,
//! Smith normal form with both transforms, and finitely generated quotients.

use num_rational::Rational64;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

pub type Q = Rational64;
pub type Mat = Vec<Vec<i64>>;

/// Scalars the Weyl group machinery is generic over.
pub trait Scalar:
    Clone
    + PartialOrd
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<i64>
    + std::fmt::Debug
{
}

impl Scalar for i64 {}
impl Scalar for Q {}

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Returns the integer vector if every entry has denominator one.
pub fn to_integral(v: &[Q]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
        .collect()
}

pub fn dot<T: Scalar>(a: &[i64], b: &[T]) -> T {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        if *x != 0 {
            s = s + T::from(*x) * y.clone();
        }
    }
    s
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_vec(m: &Mat, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_vec_q(m: &Mat, v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &Mat) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(k: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| k * x).collect()
}

/// Inverse of a square integer matrix over the rationals, `None` if singular.
pub fn inverse_q(m: &Mat) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| q(x)).collect();
            r.extend((0..n).map(|j| q(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Smith normal form `u * m * v = d` with unimodular `u`, `v` and their inverses.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i64>,
    pub rank: usize,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

pub fn smith(m: &Mat, rows: usize) -> Smith {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut a = m.clone();
    if a.is_empty() {
        a = vec![Vec::new(); rows];
    }
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0
                        && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                a.swap(t, pi);
                u.swap(t, pi);
                for row in u_inv.iter_mut() {
                    row.swap(t, pi);
                }
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
                v_inv.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t] / p;
                if f != 0 {
                    for j in 0..cols {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[t][j];
                    }
                    for row in u_inv.iter_mut() {
                        row[t] += f * row[i];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                    for k in 0..cols {
                        v_inv[t][k] += f * v_inv[j][k];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                for j in 0..cols {
                    a[t][j] += a[i][j];
                }
                for j in 0..rows {
                    u[t][j] += u[i][j];
                }
                for row in u_inv.iter_mut() {
                    row[i] -= row[t];
                }
                continue;
            }
            break;
        }
        if a[t][t] == 0 {
            break;
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
        rank = t + 1;
    }
    let diag = (0..rank).map(|t| a[t][t]).collect();
    Smith { diag, rank, u, u_inv, v, v_inv }
}

/// An element of a finitely generated abelian group `Z^f + Z/d_1 + ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().map(|x| format!("{x}~")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The quotient `Z^n / L` for a sublattice `L` given by generating columns.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub dim: usize,
    /// Orders of the nontrivial torsion factors.
    pub torsion: Vec<i64>,
    /// Row indices of `u` used for torsion coordinates.
    torsion_rows: Vec<usize>,
    /// Row indices of `u` used for free coordinates.
    free_rows: Vec<usize>,
    u: Mat,
    u_inv: Mat,
}

impl Quotient {
    /// `gens` are the generators of `L`, each a vector of length `dim`.
    pub fn new(dim: usize, gens: &[Vec<i64>]) -> Quotient {
        let m: Mat = (0..dim)
            .map(|i| gens.iter().map(|g| g[i]).collect())
            .collect();
        let s = smith(&m, dim);
        let mut torsion = Vec::new();
        let mut torsion_rows = Vec::new();
        for (i, &d) in s.diag.iter().enumerate() {
            if d > 1 {
                torsion.push(d);
                torsion_rows.push(i);
            }
        }
        let free_rows: Vec<usize> = (s.rank..dim).collect();
        let mut u = s.u;
        let mut u_inv = s.u_inv;
        // Free rows can be negated without changing the quotient; pick the sign
        // making the first nonzero entry positive so classes print stably.
        for &i in &free_rows {
            if u[i].iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                for x in u[i].iter_mut() {
                    *x = -*x;
                }
                for row in u_inv.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
        Quotient { dim, torsion, torsion_rows, free_rows, u, u_inv }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rows.len()
    }

    pub fn project(&self, v: &[i64]) -> GroupElement {
        let y = mat_vec(&self.u, v);
        GroupElement {
            free: self.free_rows.iter().map(|&i| y[i]).collect(),
            torsion: self
                .torsion_rows
                .iter()
                .zip(&self.torsion)
                .map(|(&i, &d)| y[i].rem_euclid(d))
                .collect(),
        }
    }

    /// A vector of `Z^n` projecting to `c`.
    pub fn lift(&self, c: &GroupElement) -> Vec<i64> {
        let mut y = vec![0; self.dim];
        for (&i, &x) in self.free_rows.iter().zip(&c.free) {
            y[i] = x;
        }
        for (&i, &x) in self.torsion_rows.iter().zip(&c.torsion) {
            y[i] = x;
        }
        mat_vec(&self.u_inv, &y)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rows.len()],
            torsion: vec![0; self.torsion.len()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            free: add_vec(&a.free, &b.free),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), d)| (x + y).rem_euclid(*d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.torsion)
                .map(|(x, d)| (-x).rem_euclid(*d))
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Basis of the kernel of an integer matrix (`rows x n`), as columns of `v`.
pub fn kernel_basis(m: &Mat, n: usize) -> Vec<Vec<i64>> {
    let rows = m.len();
    if rows == 0 {
        return identity(n);
    }
    let s = smith(m, rows);
    (s.rank..n)
        .map(|j| (0..n).map(|i| s.v[i][j]).collect())
        .collect()
}

/// Integer solution `x` of `sum_j x_j gens[j] = target`, if one exists.
pub fn solve_integral(gens: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let dim = target.len();
    if gens.is_empty() {
        return target.iter().all(|&t| t == 0).then(Vec::new);
    }
    let m: Mat = (0..dim).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    let s = smith(&m, dim);
    let y = mat_vec(&s.u, target);
    let mut z = vec![0; gens.len()];
    for (i, &yi) in y.iter().enumerate() {
        if i < s.rank {
            if yi % s.diag[i] != 0 {
                return None;
            }
            z[i] = yi / s.diag[i];
        } else if yi != 0 {
            return None;
        }
    }
    Some(mat_vec(&s.v, &z))
}
