//! Finitely presented graded commutative ℚ-algebras.
//!
//! Every degree is handled separately: the degree-`d` part of the relation
//! ideal is the span of `m · R` over relations `R` and monomials `m` of the
//! complementary degree. Row reduction of that span picks out standard
//! monomials (a basis of the quotient) and the normal form of every other
//! monomial. A generator named `q` is treated as the quantum parameter.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{inverse, krylov_minimal_polynomial, mat_vec, rref, Matrix, UniPoly};
use crate::expr::{Evaluator, PolyExpr};
use crate::poly::{monomials_of_degree, weighted, Exponents, Poly};
use crate::rational::Q;

/// Name of the generator treated as the quantum parameter.
pub const QUANTUM_PARAMETER: &str = "q";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("relation {index} is not homogeneous")]
    InhomogeneousRelation { index: usize },
    #[error("relation {index} has {found} variables, expected {expected}")]
    WrongArity { index: usize, found: usize, expected: usize },
    #[error("Hilbert function mismatch in degree {degree}: expected {expected}, found {found}")]
    HilbertMismatch { degree: usize, expected: usize, found: usize },
    #[error("degree {degree} is beyond the computed range 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("ring has no quantum parameter named q")]
    NoQuantumParameter,
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate or invalid generator {0:?}")]
    BadGenerator(String),
    #[error("top degree {degree} has dimension {dim}, expected 1")]
    TopDegree { degree: u32, dim: usize },
    #[error("normalization monomial has degree {found}, expected {expected}")]
    NormalizationDegree { found: u32, expected: u32 },
    #[error("normalization monomial vanishes in the ring")]
    NormalizationVanishes,
    #[error("ring does not vanish in degree {degree} above the top degree")]
    NotFinite { degree: u32 },
    #[error("quantum deformation is not flat in degree {degree}")]
    NonFlat { degree: u32 },
    #[error("elements do not form a basis of degree {degree}")]
    NotABasis { degree: u32 },
    #[error("Poincaré pairing is degenerate in degree {degree}")]
    DegeneratePairing { degree: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: &str, degree: u32) -> Self {
        Generator { name: name.to_string(), degree }
    }
}

/// `∫ generator^exponent = value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub generator: String,
    pub exponent: u32,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Poly>,
    pub top_degree: u32,
    pub normalization: Normalization,
}

impl RingPresentation {
    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }
}

struct DegreeData {
    /// Standard monomials, h-heavy first.
    basis: Vec<Exponents>,
    /// Normal form of every monomial of this degree, in `basis` coordinates.
    reduce: HashMap<Exponents, Vec<Q>>,
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

pub struct GradedRing {
    id: u64,
    pres: RingPresentation,
    weights: Vec<u32>,
    q_index: Option<usize>,
    max_degree: u32,
    degrees: Vec<DegreeData>,
    /// `∫` of the standard monomial spanning the top degree (classical rings only).
    top_integral: Q,
    classical: Option<Box<GradedRing>>,
}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRing")
            .field("generators", &self.pres.names())
            .field("top_degree", &self.pres.top_degree)
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

/// Homogeneous components of a ring element in standard-monomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElt {
    ring_id: u64,
    comps: BTreeMap<u32, Vec<Q>>,
}

impl RingElt {
    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self) -> Option<u32> {
        if self.comps.len() == 1 {
            self.comps.keys().next().copied()
        } else {
            None
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.comps.keys().copied()
    }

    pub fn component(&self, d: u32) -> Option<&[Q]> {
        self.comps.get(&d).map(Vec::as_slice)
    }

    pub fn scale(&self, c: &Q) -> RingElt {
        let mut out = RingElt { ring_id: self.ring_id, comps: BTreeMap::new() };
        if c.is_zero() {
            return out;
        }
        for (d, v) in &self.comps {
            out.comps.insert(*d, v.iter().map(|x| x * c).collect());
        }
        out
    }

    pub fn try_add(&self, other: &RingElt) -> Result<RingElt, RingError> {
        if self.ring_id != other.ring_id {
            return Err(RingError::RingMismatch);
        }
        let mut out = self.clone();
        for (d, v) in &other.comps {
            out.add_component(*d, v, &Q::one());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &RingElt) -> Result<RingElt, RingError> {
        self.try_add(&other.scale(&-Q::one()))
    }

    fn add_component(&mut self, d: u32, v: &[Q], c: &Q) {
        let entry = self.comps.entry(d).or_insert_with(|| vec![Q::zero(); v.len()]);
        for (x, y) in entry.iter_mut().zip(v) {
            *x += y * c;
        }
        if entry.iter().all(Zero::is_zero) {
            self.comps.remove(&d);
        }
    }
}

impl std::ops::Add for &RingElt {
    type Output = RingElt;
    fn add(self, rhs: &RingElt) -> RingElt {
        self.try_add(rhs).expect("elements of one ring")
    }
}

impl std::ops::Sub for &RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &RingElt) -> RingElt {
        self.try_sub(rhs).expect("elements of one ring")
    }
}

impl std::ops::Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        self.scale(&-Q::one())
    }
}

/// Columns that should become pivots come first: low powers of `q`, then
/// monomials with high powers of the later generators.
fn column_order(a: &Exponents, b: &Exponents, q: Option<usize>) -> Ordering {
    let qa = q.map_or(0, |i| a[i]);
    let qb = q.map_or(0, |i| b[i]);
    qa.cmp(&qb).then_with(|| b.iter().rev().cmp(a.iter().rev()))
}

fn degree_data(weights: &[u32], relations: &[(u32, Poly)], d: u32, q: Option<usize>) -> DegreeData {
    let mut monos = monomials_of_degree(weights, d);
    monos.sort_by(|a, b| column_order(a, b, q));
    let index: HashMap<&Exponents, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Matrix = Vec::new();
    for (e, rel) in relations {
        if *e > d {
            continue;
        }
        for m in monomials_of_degree(weights, d - e) {
            let mut row = vec![Q::zero(); monos.len()];
            for (exps, c) in rel.terms() {
                let prod: Exponents = exps.iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&prod]] += c;
            }
            rows.push(row);
        }
    }
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
    let mut reduce = HashMap::new();
    for (k, &c) in free.iter().enumerate() {
        let mut v = vec![Q::zero(); free.len()];
        v[k] = Q::one();
        reduce.insert(monos[c].clone(), v);
    }
    for (row, &c) in rows.iter().zip(&pivots) {
        let v = free.iter().map(|&f| -row[f].clone()).collect();
        reduce.insert(monos[c].clone(), v);
    }
    // display order is the reverse of the elimination order
    let mut basis: Vec<Exponents> = free.iter().map(|&c| monos[c].clone()).collect();
    let mut perm: Vec<usize> = (0..basis.len()).collect();
    perm.reverse();
    basis.reverse();
    for v in reduce.values_mut() {
        *v = perm.iter().map(|&i| v[i].clone()).collect();
    }
    DegreeData { basis, reduce }
}

impl GradedRing {
    pub fn build(pres: RingPresentation, expected_hilbert: Option<&[usize]>) -> Result<GradedRing, RingError> {
        let n = pres.generators.len();
        for (i, g) in pres.generators.iter().enumerate() {
            if g.degree == 0 || g.name.is_empty() || pres.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(RingError::BadGenerator(g.name.clone()));
            }
        }
        let weights = pres.weights();
        let mut relations = Vec::new();
        for (index, r) in pres.relations.iter().enumerate() {
            if r.nvars() != n {
                return Err(RingError::WrongArity { index, found: r.nvars(), expected: n });
            }
            if r.is_zero() {
                continue;
            }
            let d = r.weighted_degree(&weights).ok_or(RingError::InhomogeneousRelation { index })?;
            relations.push((d, r.clone()));
        }
        let q_index = pres.generator_index(QUANTUM_PARAMETER);
        let ring = match q_index {
            None => GradedRing::build_classical(pres, weights, relations)?,
            Some(qi) => GradedRing::build_quantum(pres, weights, relations, qi)?,
        };
        if let Some(expected) = expected_hilbert {
            let found = ring.hilbert();
            for d in 0..expected.len().max(found.len()) {
                let (e, f) = (expected.get(d).copied().unwrap_or(0), found.get(d).copied().unwrap_or(0));
                if e != f {
                    return Err(RingError::HilbertMismatch { degree: d, expected: e, found: f });
                }
            }
        }
        Ok(ring)
    }

    fn build_classical(
        pres: RingPresentation,
        weights: Vec<u32>,
        relations: Vec<(u32, Poly)>,
    ) -> Result<GradedRing, RingError> {
        let top = pres.top_degree;
        let max_gen = weights.iter().copied().max().unwrap_or(1);
        let max_degree = top + max_gen;
        let degrees: Vec<DegreeData> = (0..=max_degree).map(|d| degree_data(&weights, &relations, d, None)).collect();
        for d in top + 1..=max_degree {
            if !degrees[d as usize].basis.is_empty() {
                return Err(RingError::NotFinite { degree: d });
            }
        }
        let top_dim = degrees[top as usize].basis.len();
        if top_dim != 1 {
            return Err(RingError::TopDegree { degree: top, dim: top_dim });
        }
        let norm = &pres.normalization;
        let gi = pres.generator_index(&norm.generator).ok_or_else(|| RingError::UnknownGenerator(norm.generator.clone()))?;
        let mut exps = vec![0; weights.len()];
        exps[gi] = norm.exponent;
        let nd = weighted(&exps, &weights);
        if nd != top {
            return Err(RingError::NormalizationDegree { found: nd, expected: top });
        }
        let c = degrees[top as usize].reduce[&exps][0].clone();
        if c.is_zero() {
            return Err(RingError::NormalizationVanishes);
        }
        let top_integral = &norm.value / c;
        Ok(GradedRing {
            id: NEXT_RING_ID.fetch_add(1, AtomicOrdering::Relaxed),
            pres,
            weights,
            q_index: None,
            max_degree,
            degrees,
            top_integral,
            classical: None,
        })
    }

    fn build_quantum(
        pres: RingPresentation,
        weights: Vec<u32>,
        relations: Vec<(u32, Poly)>,
        qi: usize,
    ) -> Result<GradedRing, RingError> {
        // classical companion: drop q and set it to zero in every relation
        let keep: Vec<usize> = (0..weights.len()).filter(|&i| i != qi).collect();
        let classical_rel: Vec<Poly> = pres
            .relations
            .iter()
            .map(|r| {
                let mut p = Poly::zero(keep.len());
                for (e, c) in r.terms() {
                    if e[qi] == 0 {
                        p.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
                    }
                }
                p
            })
            .collect();
        let classical_pres = RingPresentation {
            generators: keep.iter().map(|&i| pres.generators[i].clone()).collect(),
            relations: classical_rel,
            top_degree: pres.top_degree,
            normalization: pres.normalization.clone(),
        };
        let classical = GradedRing::build(classical_pres, None)?;
        let top = pres.top_degree;
        let qdeg = weights[qi];
        let max_degree = (top + 2 * qdeg).max(2 * top);
        let degrees: Vec<DegreeData> =
            (0..=max_degree).map(|d| degree_data(&weights, &relations, d, Some(qi))).collect();
        for (d, data) in degrees.iter().enumerate() {
            let d = d as u32;
            let mut expected: Vec<Exponents> = Vec::new();
            let mut a = 0;
            while a * qdeg <= d {
                let cd = d - a * qdeg;
                if cd <= top {
                    for m in &classical.degrees[cd as usize].basis {
                        let mut e = Vec::with_capacity(weights.len());
                        let mut it = m.iter();
                        for i in 0..weights.len() {
                            e.push(if i == qi { a } else { *it.next().expect("arity") });
                        }
                        expected.push(e);
                    }
                }
                a += 1;
            }
            let mut found = data.basis.clone();
            found.sort();
            expected.sort();
            if found != expected {
                return Err(RingError::NonFlat { degree: d });
            }
        }
        let top_integral = classical.top_integral.clone();
        Ok(GradedRing {
            id: NEXT_RING_ID.fetch_add(1, AtomicOrdering::Relaxed),
            pres,
            weights,
            q_index: Some(qi),
            max_degree,
            degrees,
            top_integral,
            classical: Some(Box::new(classical)),
        })
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.pres
    }

    pub fn top_degree(&self) -> u32 {
        self.pres.top_degree
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn is_quantum(&self) -> bool {
        self.q_index.is_some()
    }

    /// The ring itself when classical, its `q = 0` companion when quantum.
    pub fn classical(&self) -> &GradedRing {
        self.classical.as_deref().unwrap_or(self)
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.pres.names()
    }

    pub fn basis(&self, d: u32) -> &[Exponents] {
        self.degrees.get(d as usize).map_or(&[], |x| x.basis.as_slice())
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis(d).len()
    }

    /// `dim A^d` for `d = 0..=top` (of the classical companion for quantum rings).
    pub fn hilbert(&self) -> Vec<usize> {
        let c = self.classical();
        (0..=c.top_degree()).map(|d| c.dim(d)).collect()
    }

    pub fn zero(&self) -> RingElt {
        RingElt { ring_id: self.id, comps: BTreeMap::new() }
    }

    pub fn constant(&self, c: Q) -> RingElt {
        let mut out = self.zero();
        out.add_component(0, &[c], &Q::one());
        out
    }

    pub fn one(&self) -> RingElt {
        self.constant(Q::one())
    }

    /// Homogeneous element of degree `d` with the given standard-monomial coordinates.
    pub fn element(&self, d: u32, coords: &[Q]) -> Result<RingElt, RingError> {
        if d > self.max_degree {
            return Err(RingError::DegreeOutOfRange { degree: d, max: self.max_degree });
        }
        assert_eq!(coords.len(), self.dim(d), "coordinate count");
        let mut out = self.zero();
        if !coords.is_empty() {
            out.add_component(d, coords, &Q::one());
        }
        Ok(out)
    }

    /// Evaluates an expression; identifiers are looked up in `symbols`, then among the generators.
    pub fn eval_expr(&self, e: &PolyExpr, symbols: &BTreeMap<String, RingElt>) -> Result<RingElt, EvalError> {
        e.eval(&mut RingEval { ring: self, symbols })
    }

    pub fn generator(&self, name: &str) -> Result<RingElt, RingError> {
        let i = self.pres.generator_index(name).ok_or_else(|| RingError::UnknownGenerator(name.to_string()))?;
        let mut e = vec![0; self.weights.len()];
        e[i] = 1;
        self.monomial(&e)
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<RingElt, RingError> {
        self.normal_form(&Poly::monomial(exps.to_vec(), Q::one()))
    }

    fn check(&self, a: &RingElt) -> Result<(), RingError> {
        if a.ring_id != self.id {
            return Err(RingError::RingMismatch);
        }
        Ok(())
    }

    fn add_monomial(&self, out: &mut RingElt, exps: &Exponents, c: &Q) -> Result<(), RingError> {
        let d = weighted(exps, &self.weights);
        if d > self.max_degree {
            if self.is_quantum() {
                return Err(RingError::DegreeOutOfRange { degree: d, max: self.max_degree });
            }
            // classical rings vanish above the top degree
            return Ok(());
        }
        let v = &self.degrees[d as usize].reduce[exps];
        if !v.is_empty() {
            out.add_component(d, v, c);
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &Poly) -> Result<RingElt, RingError> {
        if p.nvars() != self.weights.len() {
            return Err(RingError::WrongArity { index: 0, found: p.nvars(), expected: self.weights.len() });
        }
        let mut out = self.zero();
        for (e, c) in p.terms() {
            self.add_monomial(&mut out, e, c)?;
        }
        Ok(out)
    }

    /// Canonical polynomial representative: a combination of standard monomials.
    pub fn to_poly(&self, a: &RingElt) -> Poly {
        let mut p = Poly::zero(self.weights.len());
        for (d, v) in &a.comps {
            for (m, c) in self.degrees[*d as usize].basis.iter().zip(v) {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn display(&self, a: &RingElt) -> String {
        self.to_poly(a).display_with(&self.pres.names())
    }

    pub fn mult(&self, a: &RingElt, b: &RingElt) -> Result<RingElt, RingError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (da, va) in &a.comps {
            for (db, vb) in &b.comps {
                for (ma, ca) in self.degrees[*da as usize].basis.iter().zip(va) {
                    if ca.is_zero() {
                        continue;
                    }
                    for (mb, cb) in self.degrees[*db as usize].basis.iter().zip(vb) {
                        if cb.is_zero() {
                            continue;
                        }
                        let e: Exponents = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                        self.add_monomial(&mut out, &e, &(ca * cb))?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &RingElt, k: u32) -> Result<RingElt, RingError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mult(&acc, a)?;
        }
        Ok(acc)
    }

    /// Image in the `q = 0` companion (identity for classical rings).
    pub fn to_classical(&self, a: &RingElt) -> Result<RingElt, RingError> {
        self.check(a)?;
        let Some(qi) = self.q_index else { return Ok(a.clone()) };
        let c = self.classical();
        let mut p = Poly::zero(self.weights.len() - 1);
        for (e, coef) in self.to_poly(a).terms() {
            if e[qi] == 0 {
                let mut f = e.clone();
                f.remove(qi);
                p.add_term(f, coef.clone());
            }
        }
        c.normal_form(&p)
    }

    /// Lifts an element of the `q = 0` companion into this quantum ring.
    pub fn lift_classical(&self, a: &RingElt) -> Result<RingElt, RingError> {
        let Some(qi) = self.q_index else {
            self.check(a)?;
            return Ok(a.clone());
        };
        let c = self.classical();
        c.check(a)?;
        let mut p = Poly::zero(self.weights.len());
        for (e, coef) in c.to_poly(a).terms() {
            let mut f = e.clone();
            f.insert(qi, 0);
            p.add_term(f, coef.clone());
        }
        self.normal_form(&p)
    }

    /// `∫ a`: the top-degree component against the normalization (the `q⁰`
    /// part for quantum rings); lower degrees integrate to zero.
    pub fn integrate(&self, a: &RingElt) -> Result<Q, RingError> {
        let c = self.to_classical(a)?;
        let top = self.top_degree();
        let cl = self.classical();
        Ok(c.comps.get(&top).map_or_else(Q::zero, |v| &v[0] * &cl.top_integral))
    }

    /// `∫ b_i c_j` over the standard bases of degrees `d` and `top − d`.
    pub fn pairing_matrix(&self, d: u32) -> Result<Matrix, RingError> {
        let cl = self.classical();
        let top = cl.top_degree();
        if d > top {
            return Err(RingError::DegreeOutOfRange { degree: d, max: top });
        }
        let left = cl.basis(d).to_vec();
        let right = cl.basis(top - d).to_vec();
        let mut m = Vec::new();
        for b in &left {
            let bb = cl.monomial(b)?;
            let mut row = Vec::new();
            for c in &right {
                row.push(cl.integrate(&cl.mult(&bb, &cl.monomial(c)?)?)?);
            }
            m.push(row);
        }
        Ok(m)
    }

    /// Elements `b*_j` of degree `top − d` with `∫ b_i b*_j = δ_ij`.
    pub fn dual_basis(&self, basis: &[RingElt], d: u32) -> Result<Vec<RingElt>, RingError> {
        let cl = self.classical();
        let top = cl.top_degree();
        if d > top {
            return Err(RingError::DegreeOutOfRange { degree: d, max: top });
        }
        let n = cl.dim(d);
        if basis.len() != n {
            return Err(RingError::NotABasis { degree: d });
        }
        let mut coords: Matrix = Vec::new();
        for b in basis {
            let c = self.to_classical(b)?;
            if c.degrees().any(|x| x != d) {
                return Err(RingError::NotABasis { degree: d });
            }
            coords.push(c.component(d).map_or_else(|| vec![Q::zero(); n], <[Q]>::to_vec));
        }
        if n > 0 && inverse(&coords).is_none() {
            return Err(RingError::NotABasis { degree: d });
        }
        let partners: Vec<RingElt> =
            cl.basis(top - d).iter().map(|m| cl.monomial(m)).collect::<Result<_, _>>()?;
        // M[i][k] = ∫ b_i e_k; want X with Σ_k X[j][k] M[i][k] = δ_ij, i.e. X = (Mᵀ)⁻¹
        let mut m: Matrix = Vec::new();
        for b in basis {
            let bc = self.to_classical(b)?;
            let row = partners
                .iter()
                .map(|e| cl.integrate(&cl.mult(&bc, e)?))
                .collect::<Result<Vec<Q>, _>>()?;
            m.push(row);
        }
        let mt: Matrix = (0..n).map(|k| (0..n).map(|i| m[i][k].clone()).collect()).collect();
        let x = if n == 0 { Vec::new() } else { inverse(&mt).ok_or(RingError::DegeneratePairing { degree: d })? };
        x.iter()
            .map(|row| {
                let mut acc = cl.zero();
                for (c, e) in row.iter().zip(&partners) {
                    acc = &acc + &e.scale(c);
                }
                self.lift_classical(&acc)
            })
            .collect()
    }

    /// Quotient by `q − value`, on the classical standard monomials.
    pub fn specialize_q(&self, value: &Q) -> Result<FiniteAlgebra, RingError> {
        let Some(qi) = self.q_index else { return Err(RingError::NoQuantumParameter) };
        let cl = self.classical();
        let mut basis: Vec<Exponents> = Vec::new();
        for d in 0..=cl.top_degree() {
            basis.extend(cl.basis(d).iter().cloned());
        }
        let names = basis.iter().map(|e| Poly::monomial(e.clone(), Q::one()).display_with(&cl.pres.names())).collect();
        let lifted: Vec<Exponents> = basis
            .iter()
            .map(|e| {
                let mut f = e.clone();
                f.insert(qi, 0);
                f
            })
            .collect();
        let mut structure = Vec::new();
        for a in &lifted {
            let mut row = Vec::new();
            for b in &lifted {
                let prod: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let elt = self.monomial(&prod)?;
                row.push(self.specialize_coords(&elt, value, qi, &basis));
            }
            structure.push(row);
        }
        let mut unit = vec![Q::zero(); basis.len()];
        unit[0] = Q::one();
        Ok(FiniteAlgebra { names, structure, unit })
    }

    fn specialize_coords(&self, a: &RingElt, value: &Q, qi: usize, basis: &[Exponents]) -> Vec<Q> {
        let mut v = vec![Q::zero(); basis.len()];
        for (e, c) in self.to_poly(a).terms() {
            let mut f = e.clone();
            let k = f.remove(qi);
            let i = basis.iter().position(|b| *b == f).expect("flat deformation");
            let mut x = c.clone();
            for _ in 0..k {
                x *= value;
            }
            v[i] += x;
        }
        v
    }

    /// Coordinates of `a` in [`GradedRing::specialize_q`]`(value)`.
    pub fn specialize_element(&self, a: &RingElt, value: &Q) -> Result<Vec<Q>, RingError> {
        let Some(qi) = self.q_index else { return Err(RingError::NoQuantumParameter) };
        self.check(a)?;
        let cl = self.classical();
        let basis: Vec<Exponents> = (0..=cl.top_degree()).flat_map(|d| cl.basis(d).iter().cloned()).collect();
        Ok(self.specialize_coords(a, value, qi, &basis))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

struct RingEval<'a> {
    ring: &'a GradedRing,
    symbols: &'a BTreeMap<String, RingElt>,
}

impl Evaluator for RingEval<'_> {
    type Value = RingElt;
    type Error = EvalError;

    fn constant(&mut self, c: &Q) -> Result<RingElt, EvalError> {
        Ok(self.ring.constant(c.clone()))
    }

    fn var(&mut self, name: &str) -> Result<RingElt, EvalError> {
        if let Some(x) = self.symbols.get(name) {
            return Ok(x.clone());
        }
        self.ring.generator(name).map_err(|_| EvalError::UnknownSymbol(name.to_string()))
    }

    fn add(&mut self, a: RingElt, b: RingElt) -> Result<RingElt, EvalError> {
        Ok(a.try_add(&b)?)
    }

    fn mul(&mut self, a: RingElt, b: RingElt) -> Result<RingElt, EvalError> {
        Ok(self.ring.mult(&a, &b)?)
    }

    fn scale(&mut self, a: RingElt, c: &Q) -> Result<RingElt, EvalError> {
        Ok(a.scale(c))
    }
}

/// Finite-dimensional commutative algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    /// `structure[i][j]` = coordinates of `b_i b_j`.
    structure: Vec<Vec<Vec<Q>>>,
    unit: Vec<Q>,
}

impl FiniteAlgebra {
    pub fn new(names: Vec<String>, structure: Vec<Vec<Vec<Q>>>, unit: Vec<Q>) -> Self {
        let n = names.len();
        assert!(structure.len() == n && structure.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n)));
        assert_eq!(unit.len(), n);
        FiniteAlgebra { names, structure, unit }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Q] {
        &self.structure[i][j]
    }

    pub fn mult(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o += &ab * s;
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y` (column `j` is `x·b_j`).
    pub fn lmul_matrix(&self, x: &[Q]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|j| {
                let mut e = vec![Q::zero(); n];
                e[j] = Q::one();
                self.mult(x, &e)
            })
            .collect();
        (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleCertificate {
    pub element: Vec<Q>,
    pub minimal_polynomial: UniPoly,
    pub squarefree: bool,
    pub generates: bool,
    /// `p(L_x) = 0` and the gcd with `p′` were recomputed independently.
    pub verified: bool,
}

impl SemisimpleCertificate {
    pub fn semisimple(&self) -> bool {
        self.squarefree && self.generates && self.verified
    }
}

pub fn semisimple_certificate(alg: &FiniteAlgebra, x: &[Q]) -> SemisimpleCertificate {
    let l = alg.lmul_matrix(x);
    let p = krylov_minimal_polynomial(&l, alg.unit());
    let g = p.gcd(&p.derivative());
    let squarefree = g.degree() == Some(0);
    let generates = p.degree() == Some(alg.dim());
    // re-check: p(x) = 0 as a matrix identity, and p has no repeated root modulo p'
    let annihilates = p.eval_matrix(&l).iter().all(|r| r.iter().all(Zero::is_zero));
    let power_check = {
        let mut acc = vec![Q::zero(); alg.dim()];
        let mut pw = alg.unit().to_vec();
        for c in p.coeffs() {
            for (a, b) in acc.iter_mut().zip(&pw) {
                *a += c * b;
            }
            pw = mat_vec(&l, &pw);
        }
        acc.iter().all(Zero::is_zero)
    };
    let gcd_again = p.derivative().gcd(&p) == g;
    SemisimpleCertificate {
        element: x.to_vec(),
        minimal_polynomial: p,
        squarefree,
        generates,
        verified: annihilates && power_check && gcd_again,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Poly {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.to_vec(), int(*c));
        }
        p
    }

    fn g2(quantum: bool) -> GradedRing {
        let mut generators = vec![Generator::new("h", 1), Generator::new("s", 2)];
        let n = if quantum { 3 } else { 2 };
        let ext = |e: &[u32]| {
            let mut v = e.to_vec();
            v.resize(n, 0);
            v
        };
        let mut r4 = poly(n, &[(&ext(&[0, 2]), 3), (&ext(&[2, 1]), -1)]);
        let mut r6 = poly(n, &[(&ext(&[4, 1]), 28), (&ext(&[6, 0]), -9)]);
        if quantum {
            generators.push(Generator::new("q", 4));
            r4 = &r4 + &poly(3, &[(&[0, 0, 1], 1)]);
            r6 = &r6 + &poly(3, &[(&[2, 0, 1], 8), (&[0, 1, 1], 24)]);
        }
        let pres = RingPresentation {
            generators,
            relations: vec![r4, r6],
            top_degree: 7,
            normalization: Normalization { generator: "h".into(), exponent: 7, value: int(56) },
        };
        GradedRing::build(pres, Some(&[1, 1, 2, 2, 2, 2, 1, 1])).unwrap()
    }

    #[test]
    fn projective_line() {
        let pres = RingPresentation {
            generators: vec![Generator::new("h", 1)],
            relations: vec![poly(1, &[(&[2], 1)])],
            top_degree: 1,
            normalization: Normalization { generator: "h".into(), exponent: 1, value: int(1) },
        };
        let r = GradedRing::build(pres, Some(&[1, 1])).unwrap();
        assert_eq!(r.pairing_matrix(0).unwrap(), vec![vec![int(1)]]);
        let dual = r.dual_basis(&[r.one()], 0).unwrap();
        assert_eq!(r.integrate(&dual[0]).unwrap(), int(1));
    }

    #[test]
    fn g2_classical_ring() {
        let r = g2(false);
        let h = r.generator("h").unwrap();
        let s = r.generator("s").unwrap();
        assert_eq!(r.integrate(&r.pow(&h, 7).unwrap()).unwrap(), int(56));
        let h5s = r.mult(&r.pow(&h, 5).unwrap(), &s).unwrap();
        assert_eq!(r.integrate(&h5s).unwrap(), int(18));
        // σ·(h² − 3σ) = 0
        let t2 = &r.pow(&h, 2).unwrap() - &s.scale(&int(3));
        assert!(r.mult(&s, &t2).unwrap().is_zero());
        assert_eq!(r.display(&r.pow(&h, 6).unwrap()), "h^6");
    }

    #[test]
    fn hilbert_mismatch_reports_degree() {
        let pres = RingPresentation {
            generators: vec![Generator::new("h", 1)],
            relations: vec![poly(1, &[(&[2], 1)])],
            top_degree: 1,
            normalization: Normalization { generator: "h".into(), exponent: 1, value: int(1) },
        };
        let err = GradedRing::build(pres, Some(&[1, 2])).unwrap_err();
        assert_eq!(err, RingError::HilbertMismatch { degree: 1, expected: 2, found: 1 });
    }

    #[test]
    fn inhomogeneous_relation() {
        let pres = RingPresentation {
            generators: vec![Generator::new("h", 1)],
            relations: vec![poly(1, &[(&[2], 1), (&[1], 1)])],
            top_degree: 1,
            normalization: Normalization { generator: "h".into(), exponent: 1, value: int(1) },
        };
        assert_eq!(GradedRing::build(pres, None).unwrap_err(), RingError::InhomogeneousRelation { index: 0 });
    }

    #[test]
    fn ring_mismatch() {
        let a = g2(false);
        let b = g2(false);
        assert_eq!(a.mult(&a.one(), &b.one()), Err(RingError::RingMismatch));
    }

    #[test]
    fn g2_quantum_ring() {
        let r = g2(true);
        assert!(r.is_quantum());
        assert_eq!(r.dim(4), 3);
        let alg = r.specialize_q(&int(1)).unwrap();
        assert_eq!(alg.dim(), 12);
        let h = r.specialize_element(&r.generator("h").unwrap(), &int(1)).unwrap();
        let cert = semisimple_certificate(&alg, &h);
        assert!(cert.verified);
        assert!(cert.generates);
        assert!(r.classical().specialize_q(&int(0)).is_err());
    }

    #[test]
    fn two_point_algebra() {
        let names = vec!["1".to_string(), "x".to_string()];
        let structure = vec![
            vec![vec![int(1), int(0)], vec![int(0), int(1)]],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        ];
        let alg = FiniteAlgebra::new(names, structure, vec![int(1), int(0)]);
        let cert = semisimple_certificate(&alg, &[int(0), int(1)]);
        assert!(cert.semisimple());
        assert_eq!(cert.minimal_polynomial.to_string(), "t^2 - 1");
    }
}
