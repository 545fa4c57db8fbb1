//! Schubert calculus on Grassmannians `G(k, n)` and on the spinor variety `OG(5, 10)`.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::lincomb::LinComb;
use crate::rational::Q;
use crate::symfunc::{homogeneous_weight, lr_product, pq_product, PQFamily, Partition, SchurExpansion, StrictPartition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error("invalid Grassmannian G({k},{n}): need 0 < k < n")]
    InvalidContext { k: usize, n: usize },
    #[error("classes live on different Grassmannians: {0} and {1}")]
    ContextMismatch(GrassCtx, GrassCtx),
    #[error("class is not homogeneous")]
    Inhomogeneous,
    #[error("degrees {0} + {1} do not add up to the dimension {2}")]
    DegreeMismatch(u32, u32, u32),
    #[error("partition {partition} does not fit the {rows}x{cols} box")]
    OutsideBox { partition: String, rows: usize, cols: u32 },
    #[error("strict partition {0} does not fit in (4,3,2,1)")]
    OutsideStaircase(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassCtx {
    k: usize,
    n: usize,
}

impl GrassCtx {
    pub fn new(k: usize, n: usize) -> Result<Self, SchubertError> {
        if k == 0 || k >= n {
            return Err(SchubertError::InvalidContext { k, n });
        }
        Ok(GrassCtx { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> u32 {
        (self.n - self.k) as u32
    }

    pub fn dimension(&self) -> u32 {
        self.k as u32 * self.cols()
    }

    pub fn fits(&self, lam: &Partition) -> bool {
        lam.fits_box(self.k, self.cols())
    }

    /// The full `k × (n−k)` box: the point class.
    pub fn full_box(&self) -> Partition {
        Partition::new(vec![self.cols(); self.k]).expect("rectangle")
    }

    /// Complement of `lam` in the box, rotated by 180 degrees.
    pub fn complement(&self, lam: &Partition) -> Partition {
        Partition::new((0..self.k).rev().map(|i| self.cols() - lam.part(i)).collect()).expect("complement")
    }

    /// Every partition in the box, by weight then decreasing lexicographic order.
    pub fn basis(&self) -> Vec<Partition> {
        (0..=self.dimension())
            .flat_map(|w| Partition::all_of_weight(w).into_iter().filter(|p| self.fits(p)))
            .collect()
    }
}

impl fmt::Display for GrassCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.k, self.n)
    }
}

/// Rational combination of Schubert classes on one Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertCycle {
    ctx: GrassCtx,
    terms: SchurExpansion,
}

impl SchubertCycle {
    pub fn zero(ctx: GrassCtx) -> Self {
        SchubertCycle { ctx, terms: SchurExpansion::new() }
    }

    pub fn unit(ctx: GrassCtx) -> Self {
        SchubertCycle::truncated(ctx, LinComb::single(Partition::empty(), Q::one()))
    }

    pub fn class(ctx: GrassCtx, lam: Partition) -> Result<Self, SchubertError> {
        if !ctx.fits(&lam) {
            return Err(SchubertError::OutsideBox { partition: lam.to_string(), rows: ctx.k, cols: ctx.cols() });
        }
        Ok(SchubertCycle { ctx, terms: LinComb::single(lam, Q::one()) })
    }

    /// Special class `σ_(m)`; zero when `m` exceeds `n − k`.
    pub fn special(ctx: GrassCtx, m: u32) -> Self {
        SchubertCycle::truncated(ctx, LinComb::single(Partition::row(m), Q::one()))
    }

    pub fn hyperplane(ctx: GrassCtx) -> Self {
        SchubertCycle::special(ctx, 1)
    }

    /// Keeps only the classes fitting in the box.
    pub fn truncated(ctx: GrassCtx, mut terms: SchurExpansion) -> Self {
        terms.retain(|p| ctx.fits(p));
        SchubertCycle { ctx, terms }
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn terms(&self) -> &SchurExpansion {
        &self.terms
    }

    pub fn coeff(&self, lam: &Partition) -> Q {
        self.terms.coeff(lam)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        homogeneous_weight(&self.terms)
    }

    pub fn scale(&self, c: &Q) -> Self {
        SchubertCycle { ctx: self.ctx, terms: self.terms.scale(c) }
    }

    pub fn add(&self, other: &SchubertCycle) -> Result<Self, SchubertError> {
        same_ctx(self, other)?;
        Ok(SchubertCycle { ctx: self.ctx, terms: &self.terms + &other.terms })
    }

    pub fn sub(&self, other: &SchubertCycle) -> Result<Self, SchubertError> {
        same_ctx(self, other)?;
        Ok(SchubertCycle { ctx: self.ctx, terms: &self.terms - &other.terms })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = SchubertCycle::unit(self.ctx);
        for _ in 0..e {
            acc = grass_mult(&acc, self).expect("same context");
        }
        acc
    }

    /// Renders with the given class symbol, e.g. `2τ[4,1] + 2τ[3,2]`.
    pub fn render(&self, symbol: &str) -> String {
        self.terms.render(|p| if p.is_empty() { String::new() } else { format!("{symbol}[{p}]") })
    }
}

impl fmt::Display for SchubertCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("σ"))
    }
}

fn same_ctx(a: &SchubertCycle, b: &SchubertCycle) -> Result<(), SchubertError> {
    if a.ctx != b.ctx {
        return Err(SchubertError::ContextMismatch(a.ctx, b.ctx));
    }
    Ok(())
}

pub fn grass_mult(a: &SchubertCycle, b: &SchubertCycle) -> Result<SchubertCycle, SchubertError> {
    same_ctx(a, b)?;
    let mut out = SchurExpansion::new();
    for (l, x) in a.terms.iter() {
        for (m, y) in b.terms.iter() {
            out.add_scaled(&lr_product(l, m), &(x * y));
        }
    }
    Ok(SchubertCycle::truncated(a.ctx, out))
}

/// Coefficient of the point class; zero for homogeneous classes of lower degree.
pub fn grass_integrate(a: &SchubertCycle) -> Result<Q, SchubertError> {
    if a.is_zero() {
        return Ok(Q::zero());
    }
    a.degree().ok_or(SchubertError::Inhomogeneous)?;
    Ok(a.coeff(&a.ctx.full_box()))
}

/// `∫ fund · alpha`, the integral of `alpha` over a subvariety of class `fund`.
pub fn evaluate_against(fund: &SchubertCycle, alpha: &SchubertCycle) -> Result<Q, SchubertError> {
    same_ctx(fund, alpha)?;
    let dim = fund.ctx.dimension();
    if fund.is_zero() || alpha.is_zero() {
        return Ok(Q::zero());
    }
    let (Some(d1), Some(d2)) = (fund.degree(), alpha.degree()) else {
        return Err(SchubertError::Inhomogeneous);
    };
    if d1 + d2 != dim {
        return Err(SchubertError::DegreeMismatch(d1, d2, dim));
    }
    grass_integrate(&grass_mult(fund, alpha)?)
}

/// Largest allowed part of a Schubert index on the spinor variety.
pub const SPINOR_MAX_PART: u32 = 4;
/// Dimension of the spinor variety.
pub const SPINOR_DIMENSION: u32 = 10;

pub fn spinor_point() -> StrictPartition {
    StrictPartition::new(vec![4, 3, 2, 1]).expect("staircase")
}

fn spinor_fits(lam: &StrictPartition) -> bool {
    lam.part(0) <= SPINOR_MAX_PART
}

/// Rational combination of Schubert classes `γ_λ` on the spinor variety.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpinorCycle {
    terms: LinComb<StrictPartition>,
}

impl SpinorCycle {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        SpinorCycle { terms: LinComb::single(StrictPartition::empty(), Q::one()) }
    }

    pub fn class(lam: StrictPartition) -> Result<Self, SchubertError> {
        if !spinor_fits(&lam) {
            return Err(SchubertError::OutsideStaircase(lam.to_string()));
        }
        Ok(SpinorCycle { terms: LinComb::single(lam, Q::one()) })
    }

    pub fn truncated(mut terms: LinComb<StrictPartition>) -> Self {
        terms.retain(spinor_fits);
        SpinorCycle { terms }
    }

    /// Every strict partition inside (4,3,2,1), by weight.
    pub fn basis() -> Vec<StrictPartition> {
        (0..=SPINOR_DIMENSION)
            .flat_map(|w| StrictPartition::all_of_weight(w).into_iter().filter(spinor_fits))
            .collect()
    }

    pub fn terms(&self) -> &LinComb<StrictPartition> {
        &self.terms
    }

    pub fn coeff(&self, lam: &StrictPartition) -> Q {
        self.terms.coeff(lam)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        let mut w = self.terms.keys().map(StrictPartition::weight);
        let first = w.next()?;
        w.all(|x| x == first).then_some(first)
    }

    pub fn scale(&self, c: &Q) -> Self {
        SpinorCycle { terms: self.terms.scale(c) }
    }

    pub fn add(&self, other: &SpinorCycle) -> Self {
        SpinorCycle { terms: &self.terms + &other.terms }
    }

    pub fn sub(&self, other: &SpinorCycle) -> Self {
        SpinorCycle { terms: &self.terms - &other.terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(SpinorCycle::unit(), |acc, _| spinor_mult(&acc, self))
    }
}

impl fmt::Display for SpinorCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.terms.render(|p| if p.is_empty() { String::new() } else { format!("γ[{p}]") });
        write!(f, "{s}")
    }
}

pub fn spinor_mult(a: &SpinorCycle, b: &SpinorCycle) -> SpinorCycle {
    let mut out = LinComb::new();
    for (l, x) in a.terms.iter() {
        for (m, y) in b.terms.iter() {
            out.add_scaled(&pq_product(l, m, PQFamily::P).terms, &(x * y));
        }
    }
    SpinorCycle::truncated(out)
}

pub fn spinor_integrate(a: &SpinorCycle) -> Result<Q, SchubertError> {
    if a.is_zero() {
        return Ok(Q::zero());
    }
    a.degree().ok_or(SchubertError::Inhomogeneous)?;
    Ok(a.coeff(&spinor_point()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn cls(ctx: GrassCtx, v: &[u32]) -> SchubertCycle {
        SchubertCycle::class(ctx, p(v)).unwrap()
    }

    #[test]
    fn contexts() {
        assert!(GrassCtx::new(0, 3).is_err());
        assert!(GrassCtx::new(3, 3).is_err());
        let g = GrassCtx::new(2, 7).unwrap();
        assert_eq!(g.dimension(), 10);
        assert_eq!(g.basis().len(), 21);
        assert_eq!(g.complement(&p(&[4, 1])), p(&[4, 1]));
        assert_eq!(g.complement(&p(&[5])), p(&[5]));
        assert_eq!(g.complement(&Partition::empty()), p(&[5, 5]));
    }

    #[test]
    fn truncation_in_g27() {
        let g = GrassCtx::new(2, 7).unwrap();
        let prod = grass_mult(&cls(g, &[4, 1]), &cls(g, &[2, 2])).unwrap();
        assert!(prod.is_zero());
        let g8 = GrassCtx::new(2, 8).unwrap();
        let prod = grass_mult(&cls(g8, &[4, 1]), &cls(g8, &[2, 2])).unwrap();
        assert_eq!(prod.to_string(), "σ[6,3]");
    }

    #[test]
    fn integrals() {
        let g = GrassCtx::new(2, 4).unwrap();
        assert_eq!(grass_integrate(&SchubertCycle::hyperplane(g).pow(4)).unwrap(), int(2));
        let g = GrassCtx::new(2, 7).unwrap();
        assert_eq!(grass_integrate(&cls(g, &[5, 5])).unwrap(), int(1));
        assert_eq!(grass_integrate(&cls(g, &[5, 4])).unwrap(), int(0));
        let mixed = cls(g, &[5, 5]).add(&cls(g, &[1])).unwrap();
        assert_eq!(grass_integrate(&mixed), Err(SchubertError::Inhomogeneous));
    }

    #[test]
    fn mismatches() {
        let a = SchubertCycle::hyperplane(GrassCtx::new(2, 7).unwrap());
        let b = SchubertCycle::hyperplane(GrassCtx::new(2, 8).unwrap());
        assert!(matches!(grass_mult(&a, &b), Err(SchubertError::ContextMismatch(..))));
        assert!(matches!(evaluate_against(&a, &a), Err(SchubertError::DegreeMismatch(1, 1, 10))));
    }

    #[test]
    fn spinor_basics() {
        assert_eq!(SpinorCycle::basis().len(), 16);
        let g1 = SpinorCycle::class(StrictPartition::new(vec![1]).unwrap()).unwrap();
        let g2 = SpinorCycle::class(StrictPartition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(spinor_mult(&g1, &g1), g2);
        assert_eq!(spinor_integrate(&SpinorCycle::class(spinor_point()).unwrap()).unwrap(), int(1));
        assert!(SpinorCycle::class(StrictPartition::new(vec![5]).unwrap()).is_err());
    }
}
