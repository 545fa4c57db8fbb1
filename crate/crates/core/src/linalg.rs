//! Dense exact linear algebra over ℚ and univariate polynomials.

use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, Q};

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            let x = &a[i][l];
            if x.is_zero() {
                continue;
            }
            for j in 0..m {
                if !brow[j].is_zero() {
                    out[i][j] += x * &brow[j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// In-place reduced row echelon form; returns pivot columns in row order.
/// Zero rows are dropped.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    Inconsistent,
    Underdetermined { free: usize },
}

/// Solution set of `A X = B` (B has `k` columns): a particular solution and a
/// basis of the null space of `A`.
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: Matrix,
    pub kernel: Vec<Vec<Q>>,
}

pub fn solve_affine(a: &Matrix, b: &Matrix, unknowns: usize) -> Result<AffineSolution, SolveError> {
    let k = b.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            let mut r = ra.clone();
            r.extend(rb.iter().cloned());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.iter().any(|&c| c >= unknowns) {
        return Err(SolveError::Inconsistent);
    }
    let mut particular = zeros(unknowns, k);
    for (row, &c) in aug.iter().zip(&piv) {
        particular[c] = row[unknowns..].to_vec();
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !piv.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); unknowns];
            v[f] = Q::one();
            for (row, &c) in aug.iter().zip(&piv) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect();
    Ok(AffineSolution { particular, kernel })
}

/// Unique solution of `A X = B`.
pub fn solve_unique(a: &Matrix, b: &Matrix, unknowns: usize) -> Result<Matrix, SolveError> {
    let sol = solve_affine(a, b, unknowns)?;
    if sol.kernel.is_empty() {
        Ok(sol.particular)
    } else {
        Err(SolveError::Underdetermined { free: sol.kernel.len() })
    }
}

/// Polynomial in one variable with coefficients listed from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        let ld = d.lead();
        while r.len() > dd {
            let top = r.len() - 1;
            let f = &r[top] / &ld;
            if !f.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.len();
        let mut acc = zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = mat_mul(&acc, m);
            for (i, row) in acc.iter_mut().enumerate() {
                row[i] += c;
            }
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().rev().map(|(i, c)| {
            let sym = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            (c.clone(), sym)
        });
        write!(f, "{}", crate::rational::join_terms(terms, "*"))
    }
}

/// Minimal polynomial of `m` restricted to the cyclic subspace generated by `v`
/// (the Krylov sequence v, Mv, M²v, … until the first dependency).
pub fn krylov_minimal_polynomial(m: &Matrix, v: &[Q]) -> UniPoly {
    let n = v.len();
    let mut seq: Vec<Vec<Q>> = vec![v.to_vec()];
    loop {
        let k = seq.len() - 1;
        // columns are the Krylov vectors; solve sum c_i M^i v = M^k v for i < k
        let a: Matrix = (0..n).map(|r| seq[..k].iter().map(|col| col[r].clone()).collect()).collect();
        let b: Matrix = (0..n).map(|r| vec![seq[k][r].clone()]).collect();
        if let Ok(sol) = solve_affine(&a, &b, k) {
            let mut coeffs: Vec<Q> = sol.particular.iter().map(|r| -r[0].clone()).collect();
            coeffs.push(Q::one());
            return UniPoly::new(coeffs);
        }
        let next = mat_vec(m, &seq[k]);
        seq.push(next);
        assert!(seq.len() <= n + 2, "Krylov sequence exceeded dimension");
    }
}

pub fn fmt_vec(v: &[Q]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_q).collect();
    format!("[{}]", parts.join(", "))
}
