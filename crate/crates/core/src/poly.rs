//! Sparse multivariate polynomials over ℚ in a fixed number of variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Q;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Q::one())
    }

    pub fn monomial(exps: Exponents, c: Q) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Weighted degree of every term, `None` for the zero polynomial or mixed degrees.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| weighted(e, weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.weighted_degree(weights).is_some()
    }

    pub fn homogeneous_parts(&self, weights: &[u32]) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(weighted(e, weights))
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f.swap(i, j);
            out.add_term(f, c.clone());
        }
        out
    }

    /// Sets variable `i` to a constant, keeping the variable slot (exponent becomes 0).
    pub fn specialize(&self, i: usize, value: &Q) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = std::mem::replace(&mut f[i], 0);
            let mut v = c.clone();
            for _ in 0..k {
                v *= value;
            }
            out.add_term(f, v);
        }
        out
    }

    /// Renders with the given variable names, e.g. `3*s^2 - h^2*s`.
    pub fn display_with(&self, names: &[&str]) -> String {
        use crate::rational::join_terms;
        // later variables dominate the ordering
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| b.0.iter().rev().cmp(a.0.iter().rev()));
        let terms = sorted.into_iter().map(|(e, c)| {
            let sym: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            (c.clone(), sym.join("*"))
        });
        join_terms(terms, "*")
    }
}

pub fn weighted(e: &[u32], weights: &[u32]) -> u32 {
    e.iter().zip(weights).map(|(a, w)| a * w).sum()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

/// All exponent vectors with the given weighted degree.
pub fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Exponents> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = if w == 0 { 0 } else { left / w };
        for k in 0..=max {
            cur[i] = k;
            rec(weights, i + 1, left - k * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(weights, 0, degree, &mut vec![0; weights.len()], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.coeff(&[1, 1]), int(2));
        assert_eq!(sq.terms().len(), 3);
        let zero = &sq - &sq;
        assert!(zero.is_zero());
        assert_eq!(sq.weighted_degree(&[1, 1]), Some(2));
        assert_eq!((&sq + &x).weighted_degree(&[1, 1]), None);
    }

    #[test]
    fn weighted_monomials() {
        // h of degree 1, s of degree 2: degree 4 has h^4, h^2 s, s^2
        let m = monomials_of_degree(&[1, 2], 4);
        assert_eq!(m.len(), 3);
        assert!(monomials_of_degree(&[3], 4).is_empty());
    }

    #[test]
    fn display() {
        let h = Poly::var(2, 0);
        let s = Poly::var(2, 1);
        let r4 = &s.pow(2).scale(&int(3)) - &(&h.pow(2) * &s);
        assert_eq!(r4.display_with(&["h", "s"]), "3*s^2 - h^2*s");
    }
}
