//! Top Chern classes of twisted and external tensor products, and the
//! fundamental class of the G₂ two-orbit variety inside `G(2,8)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lincomb::LinComb;
use crate::poly::Poly;
use crate::rational::{int, Q};
use crate::schubert::{evaluate_against, grass_mult, GrassCtx, SchubertCycle, SchubertError};
use crate::symfunc::{monomial_symmetric, schur_expand, schur_polynomial, Partition, SchurExpansion, SymPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("bundle of rank {rank} needs {rank} Chern classes, got {got}")]
    WrongLength { rank: usize, got: usize },
    #[error("c_{index} must be homogeneous of degree {index}")]
    WrongDegree { index: usize },
    #[error(transparent)]
    Schubert(#[from] SchubertError),
}

/// Chern classes `c_1 … c_rank` of a vector bundle on a Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleChern {
    ctx: GrassCtx,
    chern: Vec<SchubertCycle>,
}

impl BundleChern {
    pub fn new(ctx: GrassCtx, chern: Vec<SchubertCycle>) -> Result<Self, ChernError> {
        for (i, c) in chern.iter().enumerate() {
            if c.ctx() != ctx {
                return Err(SchubertError::ContextMismatch(ctx, c.ctx()).into());
            }
            if !c.is_zero() && c.degree() != Some(i as u32 + 1) {
                return Err(ChernError::WrongDegree { index: i + 1 });
            }
        }
        if chern.is_empty() {
            return Err(ChernError::WrongLength { rank: 1, got: 0 });
        }
        Ok(BundleChern { ctx, chern })
    }

    /// Universal quotient bundle: `c_m = σ_(m)`.
    pub fn quotient(ctx: GrassCtx) -> Self {
        let r = ctx.cols();
        BundleChern { ctx, chern: (1..=r).map(|m| SchubertCycle::special(ctx, m)).collect() }
    }

    pub fn trivial(ctx: GrassCtx, rank: usize) -> Self {
        BundleChern { ctx, chern: vec![SchubertCycle::zero(ctx); rank] }
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.chern.len()
    }

    /// `c_i`, with `c_0 = 1`.
    pub fn c(&self, i: usize) -> SchubertCycle {
        if i == 0 {
            SchubertCycle::unit(self.ctx)
        } else {
            self.chern[i - 1].clone()
        }
    }
}

/// `c_r(E* ⊗ O(1)) = Σ (−1)^i c_i(E) σ_1^{r−i}`.
pub fn twisted_dual_top_chern(e: &BundleChern) -> SchubertCycle {
    let r = e.rank();
    let h = SchubertCycle::hyperplane(e.ctx);
    let mut out = SchubertCycle::zero(e.ctx);
    for i in 0..=r {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        let term = grass_mult(&e.c(i), &h.pow((r - i) as u32)).expect("same context").scale(&sign);
        out = out.add(&term).expect("same context");
    }
    out
}

/// `c_{rs}(E ⊠ U*)` before any change of basis on the second factor: each
/// monomial-symmetric function `m_μ(y_1..y_s)` paired with its class on the
/// first factor.
pub fn external_tensor_monomial_form(e: &BundleChern, s: usize) -> BTreeMap<Partition, SchubertCycle> {
    let r = e.rank() as u32;
    let mut out: BTreeMap<Partition, SchubertCycle> = BTreeMap::new();
    // y_1^{a_1} ⋯ y_s^{a_s} carries Π c_{r−a_j}(E); one representative per orbit suffices
    let mut exps = vec![0u32; s];
    loop {
        if exps.windows(2).all(|w| w[0] >= w[1]) {
            let mut cls = SchubertCycle::unit(e.ctx);
            for &a in &exps {
                cls = grass_mult(&cls, &e.c((r - a) as usize)).expect("same context");
            }
            if !cls.is_zero() {
                out.insert(Partition::new(exps.clone()).expect("sorted"), cls);
            }
        }
        let Some(i) = exps.iter().rposition(|&a| a < r) else { break };
        exps[i] += 1;
        for a in exps[i + 1..].iter_mut() {
            *a = 0;
        }
    }
    out
}

/// A class on a product `G_A × G_B`, keyed by pairs of Schubert indices.
/// The second factor is described by its `s` tautological Chern roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedClass {
    left: GrassCtx,
    right_rank: usize,
    terms: LinComb<(Partition, Partition)>,
}

impl BigradedClass {
    pub fn left_ctx(&self) -> GrassCtx {
        self.left
    }

    pub fn right_rank(&self) -> usize {
        self.right_rank
    }

    pub fn terms(&self) -> &LinComb<(Partition, Partition)> {
        &self.terms
    }

    pub fn total_degree(&self) -> Option<u32> {
        let mut w = self.terms.keys().map(|(a, b)| a.weight() + b.weight());
        let first = w.next()?;
        w.all(|x| x == first).then_some(first)
    }

    /// Part of bidegree `(d, *)`.
    pub fn slice(&self, left_degree: u32) -> BigradedClass {
        let mut terms = self.terms.clone();
        terms.retain(|(a, _)| a.weight() == left_degree);
        BigradedClass { terms, ..self.clone() }
    }

    pub fn add(&self, other: &BigradedClass) -> BigradedClass {
        BigradedClass { terms: &self.terms + &other.terms, ..self.clone() }
    }

    pub fn render(&self, left: &str, right: &str) -> String {
        self.terms.render(|(a, b)| format!("{left}[{a}]⊗{right}[{b}]"))
    }
}

/// `c_{rs}(E ⊠ U*) = Π_j (y_j^r + y_j^{r−1} c_1(E) + … + c_r(E))`, both factors in Schubert bases.
pub fn external_tensor_top_chern(e: &BundleChern, s: usize) -> BigradedClass {
    let mut terms = LinComb::new();
    for (mu, cls) in external_tensor_monomial_form(e, s) {
        let y = schur_expand(&monomial_symmetric(&mu, s).expect("at most s parts")).expect("symmetric");
        for (lam, a) in cls.terms().iter() {
            for (nu, b) in y.iter() {
                terms.add_term((lam.clone(), nu.clone()), a * b);
            }
        }
    }
    BigradedClass { left: e.ctx, right_rank: s, terms }
}

/// Stages of the computation of `[X] ∈ A*(G(2,8))`.
#[derive(Clone, Debug)]
pub struct G2FundamentalClass {
    /// `c_5(Q*(1))` on `G(2,7)`: the class of `G₂/P₂`.
    pub closed_orbit: SchubertCycle,
    /// Bidegree (5,5) part of `c_10(Q ⊠ U*)`, as `m_μ(y) ↦ class on G(2,7)`.
    pub slice: Vec<(Partition, SchubertCycle)>,
    /// `∫_{G₂/P₂}` of each left factor.
    pub evaluations: Vec<(Partition, Q)>,
    /// Surviving y-side combination in the monomial basis.
    pub y_side: LinComb<Partition>,
    pub class: SchubertCycle,
}

pub fn g2_fundamental_class() -> G2FundamentalClass {
    let g27 = GrassCtx::new(2, 7).expect("valid");
    let g28 = GrassCtx::new(2, 8).expect("valid");
    let q = BundleChern::quotient(g27);
    let closed_orbit = twisted_dual_top_chern(&q);
    let slice: Vec<(Partition, SchubertCycle)> = external_tensor_monomial_form(&q, 2)
        .into_iter()
        .filter(|(mu, _)| mu.weight() == 5)
        .rev()
        .collect();
    let evaluations: Vec<(Partition, Q)> = slice
        .iter()
        .map(|(mu, cls)| (mu.clone(), evaluate_against(&closed_orbit, cls).expect("complementary degrees")))
        .collect();
    let y_side: LinComb<Partition> = evaluations.iter().cloned().collect();
    let mut poly = Poly::zero(2);
    for (mu, c) in y_side.iter() {
        poly = &poly + &monomial_symmetric(mu, 2).expect("two parts").poly().scale(c);
    }
    let schur = schur_expand(&SymPoly::new(poly)).expect("symmetric");
    G2FundamentalClass { closed_orbit, slice, evaluations, y_side, class: SchubertCycle::truncated(g28, schur) }
}

/// `2·σ_2(σ_1³ − σ_1σ_2)` expanded in Schur polynomials of two variables, placed on `G(2,8)`.
pub fn g2_fundamental_class_by_schur() -> SchubertCycle {
    let g28 = GrassCtx::new(2, 8).expect("valid");
    let s1 = schur_polynomial(&Partition::row(1), 2).into_poly();
    let s2 = schur_polynomial(&Partition::row(2), 2).into_poly();
    let inner = &s1.pow(3) - &(&s1 * &s2);
    let poly = (&s2 * &inner).scale(&int(2));
    let e: SchurExpansion = schur_expand(&SymPoly::new(poly)).expect("symmetric");
    SchubertCycle::truncated(g28, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundle_twist() {
        let g = GrassCtx::new(2, 4).unwrap();
        let e = BundleChern::trivial(g, 1);
        assert_eq!(twisted_dual_top_chern(&e), SchubertCycle::hyperplane(g));
        let e = BundleChern::trivial(g, 2);
        assert_eq!(twisted_dual_top_chern(&e).to_string(), "σ[2] + σ[1,1]");
    }

    #[test]
    fn closed_orbit_class() {
        let g = GrassCtx::new(2, 7).unwrap();
        let c = twisted_dual_top_chern(&BundleChern::quotient(g));
        assert_eq!(c.render("τ"), "2τ[4,1] + 2τ[3,2]");
    }

    #[test]
    fn bundle_validation() {
        let g = GrassCtx::new(2, 4).unwrap();
        let h = SchubertCycle::hyperplane(g);
        assert!(BundleChern::new(g, vec![h.clone(), h]).is_err());
        assert!(BundleChern::new(g, vec![]).is_err());
    }

    #[test]
    fn pipeline_stages() {
        let r = g2_fundamental_class();
        let evals: Vec<String> = r.evaluations.iter().map(|(m, v)| format!("{m}:{v}")).collect();
        assert_eq!(evals, ["5:0", "4,1:2", "3,2:4"]);
        assert_eq!(r.class.to_string(), "2σ[4,1] + 2σ[3,2]");
        assert_eq!(r.class, g2_fundamental_class_by_schur());
    }
}
