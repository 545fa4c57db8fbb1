//! Partitions and exact symmetric-function arithmetic.
//!
//! Two product engines live here:
//!
//! * [`lr_product`] enumerates Littlewood–Richardson tableaux (successive
//!   horizontal strips whose reverse reading word is a lattice word).
//! * [`pq_product`] multiplies Schur P/Q-functions by writing the right factor
//!   in the basis of products of the one-row functions `q_r` and applying the
//!   Pieri rule `P_λ q_r = Σ 2^{a(μ/λ)} P_μ` repeatedly.
//!
//! The polynomial constructors ([`schur_polynomial`], [`pq_polynomial`]) sum
//! over (marked shifted) tableaux directly and share no code with the product
//! engines, so they serve as oracles for them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lincomb::LinComb;
use crate::linalg::inverse;
use crate::poly::Poly;
use crate::rational::{int, pow2, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("invalid strict partition {0:?}: parts must be positive and strictly decreasing")]
    InvalidStrictPartition(Vec<u32>),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("polynomial is not symmetric: swapping x{0} and x{1} changes it")]
    NotSymmetric(usize, usize),
    #[error("partition {partition} has more than {vars} parts")]
    TooManyParts { partition: String, vars: usize },
}

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else that is not weakly decreasing is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(SymError::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(k: u32) -> Self {
        Partition::new(vec![k]).unwrap()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Fits in a box with at most `rows` parts, each at most `cols`.
    pub fn fits_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.part(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_weight(n: u32) -> Vec<Partition> {
        fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

fn parse_parts(s: &str) -> Result<Vec<u32>, SymError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(SymError::Parse(s.to_string()));
    }
    t.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| SymError::Parse(s.to_string())))
        .collect()
}

impl FromStr for Partition {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        Partition::new(parse_parts(s)?)
    }
}

/// Strictly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StrictPartition(Vec<u32>);

impl StrictPartition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) || parts.contains(&0) {
            return Err(SymError::InvalidStrictPartition(parts));
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn all_of_weight(n: u32) -> Vec<StrictPartition> {
        Partition::all_of_weight(n)
            .into_iter()
            .filter_map(|p| StrictPartition::new(p.0).ok())
            .collect()
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Partition(self.0.clone()), f)
    }
}

impl FromStr for StrictPartition {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        StrictPartition::new(parse_parts(s)?)
    }
}

pub type SchurExpansion = LinComb<Partition>;

/// Common weight of all keys, if there is one.
pub fn homogeneous_weight(e: &SchurExpansion) -> Option<u32> {
    let mut w = e.keys().map(Partition::weight);
    let first = w.next()?;
    w.all(|x| x == first).then_some(first)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PQFamily {
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PQExpansion {
    pub family: PQFamily,
    pub terms: LinComb<StrictPartition>,
}

impl PQExpansion {
    /// The same class written in the other family. Since `Q_λ = 2^{ℓ(λ)} P_λ`,
    /// a P-coefficient `a` on `λ` becomes the Q-coefficient `a / 2^{ℓ(λ)}`.
    pub fn to_family(&self, family: PQFamily) -> PQExpansion {
        if family == self.family {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                let f = pow2(k.len() as u32);
                let c = match family {
                    PQFamily::Q => v / f,
                    PQFamily::P => v * f,
                };
                (k.clone(), c)
            })
            .collect();
        PQExpansion { family, terms }
    }
}

/// Symmetric polynomial in `m` variables (symmetry is checked by consumers,
/// not at construction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    poly: Poly,
}

impl SymPoly {
    pub fn new(poly: Poly) -> Self {
        SymPoly { poly }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    /// First adjacent transposition that changes the polynomial, if any.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (1..self.nvars()).map(|i| (i - 1, i)).find(|&(i, j)| self.poly.swap_vars(i, j) != self.poly)
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("y{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.poly.display_with(&refs))
    }
}

// ---------------------------------------------------------------------------
// Littlewood–Richardson
// ---------------------------------------------------------------------------

/// `s_λ · s_μ = Σ c^ν_{λμ} s_ν`.
pub fn lr_product(lam: &Partition, mu: &Partition) -> SchurExpansion {
    let rows = lam.len() + mu.len();
    let mut shape: Vec<u32> = (0..rows).map(|i| lam.part(i)).collect();
    let mut out = SchurExpansion::new();
    lr_place(mu.parts(), 0, &mut shape, None, &mut out);
    out
}

fn lr_place(mu: &[u32], k: usize, shape: &mut Vec<u32>, prev: Option<&[u32]>, out: &mut SchurExpansion) {
    if k == mu.len() {
        out.add_term(Partition::new(shape.clone()).expect("valid shape"), Q::one());
        return;
    }
    let old = shape.clone();
    let mut added = vec![0u32; shape.len()];
    strip_rows(mu[k], 0, 0, 0, &old, prev, &mut added, &mut |added| {
        for (s, (o, a)) in shape.iter_mut().zip(old.iter().zip(added)) {
            *s = o + a;
        }
        lr_place(mu, k + 1, shape, Some(added), out);
    });
    shape.copy_from_slice(&old);
}

/// Enumerates horizontal strips of `left` boxes on `old`, row by row. When
/// `prev` holds the per-row counts of the previous letter, the lattice
/// condition (letters in rows ≤ r never exceed previous letters in rows < r)
/// is enforced.
#[allow(clippy::too_many_arguments)]
fn strip_rows(
    left: u32,
    r: usize,
    placed: u32,
    prev_above: u32,
    old: &[u32],
    prev: Option<&[u32]>,
    added: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if left == 0 {
        for a in added[r..].iter_mut() {
            *a = 0;
        }
        emit(added);
        return;
    }
    if r == old.len() {
        return;
    }
    let room = if r == 0 { left } else { old[r - 1] - old[r] };
    let mut max = left.min(room);
    if prev.is_some() {
        max = max.min(prev_above.saturating_sub(placed));
    }
    let next_prev = prev_above + prev.map_or(0, |p| p[r]);
    for a in 0..=max {
        added[r] = a;
        strip_rows(left - a, r + 1, placed + a, next_prev, old, prev, added, emit);
    }
    added[r] = 0;
}

// ---------------------------------------------------------------------------
// Schur and monomial symmetric polynomials
// ---------------------------------------------------------------------------

/// Sum of all distinct monomials whose exponent multiset is `lam`.
pub fn monomial_symmetric(lam: &Partition, m: usize) -> Result<SymPoly, SymError> {
    if lam.len() > m {
        return Err(SymError::TooManyParts { partition: lam.to_string(), vars: m });
    }
    let mut exps: Vec<u32> = (0..m).map(|i| lam.part(i)).collect();
    exps.sort_unstable();
    let mut poly = Poly::zero(m);
    loop {
        poly.add_term(exps.clone(), Q::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    Ok(SymPoly::new(poly))
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `s_λ(x_1, …, x_m)` as a sum over semistandard tableaux: the cells holding
/// the largest letter form a horizontal strip, peeled off recursively.
pub fn schur_polynomial(lam: &Partition, m: usize) -> SymPoly {
    let mut poly = Poly::zero(m);
    if lam.len() <= m {
        let mut exps = vec![0u32; m];
        peel_strips(lam.parts().to_vec(), m, &mut exps, &mut poly);
    }
    SymPoly::new(poly)
}

fn peel_strips(shape: Vec<u32>, vars: usize, exps: &mut Vec<u32>, out: &mut Poly) {
    if vars == 0 {
        if shape.iter().all(|&p| p == 0) {
            out.add_term(exps.clone(), Q::one());
        }
        return;
    }
    if shape.iter().filter(|&&p| p > 0).count() > vars {
        return;
    }
    // inner shape μ with λ/μ a horizontal strip: λ_{i+1} ≤ μ_i ≤ λ_i
    let n = shape.len();
    let mut inner = vec![0u32; n];
    fn rec(i: usize, shape: &[u32], inner: &mut Vec<u32>, vars: usize, exps: &mut Vec<u32>, out: &mut Poly) {
        if i == shape.len() {
            let removed: u32 = shape.iter().zip(inner.iter()).map(|(a, b)| a - b).sum();
            exps[vars - 1] = removed;
            peel_strips(inner.clone(), vars - 1, exps, out);
            exps[vars - 1] = 0;
            return;
        }
        let lo = shape.get(i + 1).copied().unwrap_or(0);
        for v in lo..=shape[i] {
            inner[i] = v;
            rec(i + 1, shape, inner, vars, exps, out);
        }
    }
    rec(0, &shape, &mut inner, vars, exps, out);
}

/// Number of semistandard tableaux of shape `lam` with content `content`
/// (any composition; the answer is symmetric in its entries).
pub fn kostka(lam: &Partition, content: &[u32]) -> u64 {
    if content.iter().sum::<u32>() != lam.weight() {
        return 0;
    }
    fn rec(shape: &[u32], content: &[u32], target: &[u32]) -> u64 {
        let Some((&c, rest)) = content.split_first() else {
            return u64::from(shape == target);
        };
        let mut total = 0;
        let mut next = shape.to_vec();
        strips(0, c, shape, target, &mut next, &mut |s| total += rec(s, rest, target));
        total
    }
    fn strips(r: usize, left: u32, old: &[u32], target: &[u32], next: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if r == old.len() {
            if left == 0 {
                f(next);
            }
            return;
        }
        let cap = if r == 0 { target[0] } else { old[r - 1].min(target[r]) };
        let max = cap.saturating_sub(old[r]).min(left);
        for a in 0..=max {
            next[r] = old[r] + a;
            strips(r + 1, left - a, old, target, next, f);
        }
        next[r] = old[r];
    }
    let target = lam.parts().to_vec();
    rec(&vec![0; target.len()], content, &target)
}

/// Expands a symmetric polynomial in Schur polynomials `s_λ(x_1..x_m)`,
/// peeling off the lexicographically leading monomial at each step.
pub fn schur_expand(p: &SymPoly) -> Result<SchurExpansion, SymError> {
    if let Some((i, j)) = p.asymmetry() {
        return Err(SymError::NotSymmetric(i + 1, j + 1));
    }
    let m = p.nvars();
    let mut rest = p.poly().clone();
    let mut out = SchurExpansion::new();
    while let Some((lead, c)) = rest.terms().iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        let lam = Partition::new(lead).expect("leading exponent of a symmetric polynomial is a partition");
        let s = schur_polynomial(&lam, m);
        rest = &rest - &s.poly().scale(&c);
        out.add_term(lam, c);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Schur P- and Q-functions
// ---------------------------------------------------------------------------

/// `P_λ · q_r` in the P-basis: strict μ ⊃ λ with μ/λ a horizontal strip of
/// size `r`, weighted by `2^{a}` where `a` counts the columns `c` of the strip
/// such that column `c + 1` holds no strip box.
pub fn pieri_q(lam: &StrictPartition, r: u32) -> LinComb<StrictPartition> {
    let mut out = LinComb::new();
    if r == 0 {
        out.add_term(lam.clone(), Q::one());
        return out;
    }
    let rows = lam.len() + 1;
    let old: Vec<u32> = (0..rows).map(|i| lam.part(i)).collect();
    let mut added = vec![0u32; rows];
    strip_rows(r, 0, 0, 0, &old, None, &mut added, &mut |added| {
        let mu: Vec<u32> = old.iter().zip(added).map(|(a, b)| a + b).collect();
        let Ok(mu) = StrictPartition::new(mu) else { return };
        let mut cols = Vec::new();
        for (i, &a) in added.iter().enumerate() {
            cols.extend(old[i] + 1..=old[i] + a);
        }
        let a = cols.iter().filter(|&&c| !cols.contains(&(c + 1))).count() as u32;
        out.add_term(mu, pow2(a));
    });
    out
}

/// `q_{α_1} q_{α_2} ⋯` applied to `P_λ` by repeated Pieri steps.
fn apply_q_word(start: &LinComb<StrictPartition>, word: &[u32]) -> LinComb<StrictPartition> {
    let mut cur = start.clone();
    for &r in word {
        let mut next = LinComb::new();
        for (k, v) in cur.iter() {
            next.add_scaled(&pieri_q(k, r), v);
        }
        cur = next;
    }
    cur
}

/// `P_μ` written as a combination of the products `q_α = q_{α_1} q_{α_2} ⋯`
/// over strict α of the same weight (these form a basis of the degree-|μ| part).
fn p_in_q_basis(mu: &StrictPartition) -> Vec<(StrictPartition, Q)> {
    let basis = StrictPartition::all_of_weight(mu.weight());
    let unit = LinComb::single(StrictPartition::empty(), Q::one());
    // rows: q_α expanded in the P basis
    let t: Vec<Vec<Q>> = basis
        .iter()
        .map(|alpha| {
            let e = apply_q_word(&unit, alpha.parts());
            basis.iter().map(|nu| e.coeff(nu)).collect()
        })
        .collect();
    let inv = inverse(&t).expect("q-products of strict partitions form a basis");
    let row = basis.iter().position(|b| b == mu).expect("μ in basis");
    // P = T^{-1} q, so P_μ = Σ_α (T^{-1})_{μα} q_α
    basis.iter().cloned().zip(inv[row].iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
}

/// Structure constants of Schur P- (or Q-) functions in the universal ring.
pub fn pq_product(lam: &StrictPartition, mu: &StrictPartition, family: PQFamily) -> PQExpansion {
    let start = LinComb::single(lam.clone(), Q::one());
    let mut p_result = LinComb::new();
    for (alpha, c) in p_in_q_basis(mu) {
        p_result.add_scaled(&apply_q_word(&start, alpha.parts()), &c);
    }
    match family {
        PQFamily::P => PQExpansion { family, terms: p_result },
        PQFamily::Q => {
            // Q_λ Q_μ = 2^{ℓλ+ℓμ} P_λ P_μ, rewritten in the Q basis
            let scale = pow2((lam.len() + mu.len()) as u32);
            let class = PQExpansion { family: PQFamily::P, terms: p_result.scale(&scale) };
            class.to_family(PQFamily::Q)
        }
    }
}

/// Coefficient of `x^content` in `P_λ` or `Q_λ`: the number of marked shifted
/// tableaux of shape `λ` with that content (for P, diagonal entries unmarked).
pub fn shifted_tableau_count(lam: &StrictPartition, content: &[u32], family: PQFamily) -> u64 {
    if content.iter().sum::<u32>() != lam.weight() {
        return 0;
    }
    let target = lam.parts().to_vec();
    fn rec(shape: &[u32], content: &[u32], target: &[u32], family: PQFamily) -> u64 {
        let Some((&c, rest)) = content.split_first() else {
            return u64::from(shape == target);
        };
        let mut total = 0;
        let mut next = shape.to_vec();
        grow(0, c, shape, target, &mut next, &mut |nu| {
            let marks = count_markings(shape, nu, family);
            if marks > 0 {
                total += marks * rec(nu, rest, target, family);
            }
        });
        total
    }
    // any ν with shape ⊆ ν ⊆ target, ν strict, |ν/shape| = left
    fn grow(r: usize, left: u32, old: &[u32], target: &[u32], next: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if r == old.len() {
            if left == 0 {
                if next.windows(2).all(|w| w[0] > w[1] || w[1] == 0) {
                    f(next);
                }
            }
            return;
        }
        let max = (target[r] - old[r]).min(left);
        for a in 0..=max {
            next[r] = old[r] + a;
            grow(r + 1, left - a, old, target, next, f);
        }
        next[r] = old[r];
    }
    rec(&vec![0; target.len()], content, &target, family)
}

/// Number of ways to mark the cells of the shifted skew shape `outer/inner`
/// with one letter k' or k: rows read k'…k with at most one k', columns read
/// k'…k with at most one k.
fn count_markings(inner: &[u32], outer: &[u32], family: PQFamily) -> u64 {
    // shifted coordinates: row i occupies columns i..i+len
    let cells: Vec<(usize, usize)> = inner
        .iter()
        .zip(outer)
        .enumerate()
        .flat_map(|(i, (&a, &b))| (a..b).map(move |j| (i, i + j as usize)))
        .collect();
    let n = cells.len();
    if n == 0 {
        return 1;
    }
    let mut count = 0;
    'mask: for mask in 0u64..(1 << n) {
        let primed = |k: usize| mask >> k & 1 == 1;
        for (k, &(r, c)) in cells.iter().enumerate() {
            if family == PQFamily::P && r == c && primed(k) {
                continue 'mask;
            }
            for (l, &(r2, c2)) in cells.iter().enumerate() {
                if k == l {
                    continue;
                }
                if r == r2 && c < c2 && (!primed(k) && primed(l) || primed(k) && primed(l)) {
                    // row: unmarked before marked, or two marked
                    continue 'mask;
                }
                if c == c2 && r < r2 && (!primed(k) && primed(l) || !primed(k) && !primed(l)) {
                    // column: unmarked above marked, or two unmarked
                    continue 'mask;
                }
            }
        }
        count += 1;
    }
    count
}

/// The polynomial `P_λ(y_1..y_m)` or `Q_λ(y_1..y_m)` by tableau summation.
pub fn pq_polynomial(lam: &StrictPartition, m: usize, family: PQFamily) -> SymPoly {
    let n = lam.weight();
    let mut poly = Poly::zero(m);
    let mut comp = vec![0u32; m];
    fn compositions(i: usize, left: u32, comp: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i + 1 == comp.len() {
            comp[i] = left;
            f(comp);
            comp[i] = 0;
            return;
        }
        for a in 0..=left {
            comp[i] = a;
            compositions(i + 1, left - a, comp, f);
        }
        comp[i] = 0;
    }
    if m == 0 {
        if n == 0 {
            return SymPoly::new(Poly::constant(0, Q::one()));
        }
        return SymPoly::new(poly);
    }
    compositions(0, n, &mut comp, &mut |beta| {
        let c = shifted_tableau_count(lam, beta, family);
        if c > 0 {
            poly.add_term(beta.to_vec(), int(c as i64));
        }
    });
    SymPoly::new(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn sp(v: &[u32]) -> StrictPartition {
        StrictPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation_and_serialization() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[4, 1, 0]).parts(), &[4, 1]);
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!("4,1".parse::<Partition>().unwrap(), p(&[4, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("4,,1".parse::<Partition>().is_err());
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::all_of_weight(5).len(), 7);
        assert_eq!(StrictPartition::all_of_weight(6).len(), 4);
    }

    #[test]
    fn lr_small_cases() {
        let e = lr_product(&p(&[1]), &p(&[1]));
        assert_eq!(e, [(p(&[2]), int(1)), (p(&[1, 1]), int(1))].into_iter().collect());
        let lam = p(&[3, 2, 1]);
        assert_eq!(lr_product(&Partition::empty(), &lam), LinComb::single(lam.clone(), int(1)));
        assert_eq!(lr_product(&lam, &Partition::empty()), LinComb::single(lam, int(1)));
        // s21 * s21 has the famous coefficient 2 on s321
        assert_eq!(lr_product(&p(&[2, 1]), &p(&[2, 1])).coeff(&p(&[3, 2, 1])), int(2));
    }

    #[test]
    fn lr_two_row_part_of_41_times_22() {
        let e = lr_product(&p(&[4, 1]), &p(&[2, 2]));
        assert_eq!(e.coeff(&p(&[6, 3])), int(1));
        assert_eq!(e.coeff(&p(&[5, 4])), int(0));
    }

    #[test]
    fn monomial_symmetric_examples() {
        let m5 = monomial_symmetric(&p(&[5]), 2).unwrap();
        assert_eq!(m5.to_string(), "y2^5 + y1^5");
        let m41 = monomial_symmetric(&p(&[4, 1]), 2).unwrap();
        assert_eq!(m41.poly().terms().len(), 2);
        assert_eq!(m41.poly().coeff(&[4, 1]), int(1));
        assert_eq!(m41.poly().coeff(&[1, 4]), int(1));
        assert_eq!(monomial_symmetric(&p(&[1]), 1).unwrap().poly(), &Poly::var(1, 0));
        assert!(matches!(monomial_symmetric(&p(&[1, 1, 1]), 2), Err(SymError::TooManyParts { .. })));
    }

    #[test]
    fn schur_expand_examples() {
        let m41 = monomial_symmetric(&p(&[4, 1]), 2).unwrap();
        let m32 = monomial_symmetric(&p(&[3, 2]), 2).unwrap();
        let poly = &m41.poly().scale(&int(2)) + &m32.poly().scale(&int(4));
        let e = schur_expand(&SymPoly::new(poly)).unwrap();
        assert_eq!(e, [(p(&[4, 1]), int(2)), (p(&[3, 2]), int(2))].into_iter().collect());

        let m5 = monomial_symmetric(&p(&[5]), 2).unwrap();
        let e = schur_expand(&m5).unwrap();
        assert_eq!(e, [(p(&[5]), int(1)), (p(&[4, 1]), int(-1))].into_iter().collect());

        let one = SymPoly::new(Poly::one(3));
        assert_eq!(schur_expand(&one).unwrap(), LinComb::single(Partition::empty(), int(1)));

        let x1 = SymPoly::new(Poly::var(2, 0));
        assert_eq!(schur_expand(&x1), Err(SymError::NotSymmetric(1, 2)));
    }

    #[test]
    fn kostka_numbers() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[4, 1]), &[3, 2]), 1);
        assert_eq!(kostka(&p(&[3, 2]), &[4, 1]), 0);
        assert_eq!(kostka(&p(&[2, 1]), &[0, 1, 2]), 1);
    }

    #[test]
    fn schur_polynomial_matches_kostka() {
        let s = schur_polynomial(&p(&[2, 1]), 3);
        assert_eq!(s.poly().coeff(&[1, 1, 1]), int(2));
        assert_eq!(s.poly().coeff(&[2, 1, 0]), int(1));
        assert_eq!(s.poly().coeff(&[0, 1, 2]), int(1));
        assert!(s.is_symmetric());
        assert!(schur_polynomial(&p(&[1, 1, 1]), 2).poly().is_zero());
    }

    #[test]
    fn pq_small_products() {
        let e = pq_product(&sp(&[1]), &sp(&[1]), PQFamily::P);
        assert_eq!(e.terms, LinComb::single(sp(&[2]), int(1)));
        let e = pq_product(&sp(&[1]), &sp(&[1]), PQFamily::Q);
        assert_eq!(e.terms, LinComb::single(sp(&[2]), int(2)));
        let lam = sp(&[3, 1]);
        assert_eq!(pq_product(&StrictPartition::empty(), &lam, PQFamily::P).terms, LinComb::single(lam, int(1)));
        let e = pq_product(&sp(&[1]), &sp(&[2]), PQFamily::P);
        assert_eq!(e.terms, [(sp(&[3]), int(1)), (sp(&[2, 1]), int(1))].into_iter().collect());
    }

    #[test]
    fn pq_polynomial_examples() {
        let p1 = pq_polynomial(&sp(&[1]), 2, PQFamily::P);
        let p2 = pq_polynomial(&sp(&[2]), 2, PQFamily::P);
        assert_eq!(p1.poly().pow(2), *p2.poly());
        assert_eq!(p2.poly().coeff(&[2, 0]), int(1));
        assert_eq!(p2.poly().coeff(&[1, 1]), int(2));

        let q1 = pq_polynomial(&sp(&[1]), 3, PQFamily::Q);
        let expect = (0..3).fold(Poly::zero(3), |acc, i| &acc + &Poly::var(3, i)).scale(&int(2));
        assert_eq!(q1.poly(), &expect);

        let unit = pq_polynomial(&StrictPartition::empty(), 1, PQFamily::P);
        assert_eq!(unit.poly(), &Poly::one(1));
    }

    #[test]
    fn pq_polynomials_are_symmetric() {
        for lam in StrictPartition::all_of_weight(4) {
            assert!(pq_polynomial(&lam, 3, PQFamily::P).is_symmetric(), "{lam}");
        }
    }
}
