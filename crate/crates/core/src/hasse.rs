//! Hasse diagrams: vertices are Schubert-type classes, weighted edges encode
//! multiplication by the hyperplane class `h`, q-edges its quantum corrections.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::parse_expr;
use crate::linalg::{identity, inverse, mat_mul, mat_vec, rank, solve_affine, zeros, Matrix};
use crate::lincomb::LinComb;
use crate::rational::{fmt_q, join_terms, serde_q, Q};
use crate::report::CheckReport;
use crate::ringkit::{GradedRing, RingElt, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HasseError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("edge {from} -> {to} does not raise the degree by one")]
    EdgeDegree { from: String, to: String },
    #[error("q-edge {from} -> {to} has inconsistent degrees")]
    QEdgeDegree { from: String, to: String },
    #[error("{0}")]
    BadEndpoints(String),
    #[error("element mixes degrees")]
    MixedDegrees,
    #[error("missing seed for vertex {0:?}")]
    MissingSeed(String),
    #[error("Chevalley system is inconsistent in degree {degree}")]
    Inconsistent { degree: u32 },
    #[error("Chevalley system leaves {free} free parameters in degree {degree}")]
    Underdetermined { degree: u32, free: usize },
    #[error("vertex classes do not form a basis in degree {degree}")]
    NotSpanned { degree: u32 },
    #[error("pairing is degenerate in degree {degree}")]
    DegeneratePairing { degree: u32 },
    #[error("vertex {0:?} is not paired exactly once")]
    BadPairing(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Y,
    Z,
    Shared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub degree: u32,
    pub family: Family,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    #[serde(with = "serde_q")]
    pub mult: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QEdge {
    pub from: String,
    pub to: String,
    #[serde(with = "serde_q")]
    pub coeff: Q,
    pub q_power: u32,
}

/// Combination of `q^a · v` terms, keyed by `(a, vertex index)`.
pub type QCombo = LinComb<(u32, usize)>;

/// Unicode rendering of a vertex or generator id: `t'2` → `τ'2`, `t6p` → `τ6⁺`, `s` → `σ`.
pub fn display_name(id: &str, ascii: bool) -> String {
    if ascii {
        return id.to_string();
    }
    let mut chars: Vec<char> = id.chars().collect();
    match chars.first() {
        Some('s') => chars[0] = 'σ',
        Some('t') => chars[0] = 'τ',
        Some('g') => chars[0] = 'γ',
        _ => {}
    }
    let n = chars.len();
    if n >= 2 && chars[n - 2].is_ascii_digit() {
        match chars[n - 1] {
            'p' => chars[n - 1] = '⁺',
            'm' => chars[n - 1] = '⁻',
            _ => {}
        }
    }
    chars.into_iter().collect()
}

/// Renders an expression over vertex ids and generators for humans:
/// `2*t'4 + 3*s4` → `2τ'4 + 3σ4`, `t'2*s2` → `τ'2·σ2`.
pub fn pretty_expr(text: &str, ascii: bool) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '\'' || chars[i] == '_') {
                i += 1;
            }
            let id: String = chars[start..i].iter().collect();
            out.push_str(&display_name(&id, ascii));
            continue;
        }
        if c == '*' {
            let before_number = out.trim_end_matches(|p: char| p.is_ascii_digit());
            let prev_digit = before_number.len() < out.len() && !before_number.ends_with(['/', '^']);
            let next_alpha = chars.get(i + 1).is_some_and(|n| n.is_ascii_alphabetic() || *n == '(');
            if !(prev_digit && next_alpha) {
                out.push('·');
            }
        } else {
            out.push(c);
        }
        i += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    q_edges: Vec<QEdge>,
    unit: usize,
    point: usize,
    index: u32,
    lookup: HashMap<String, usize>,
    out: Vec<Vec<(usize, Q)>>,
    q_out: Vec<Vec<(usize, Q, u32)>>,
}

impl HasseDiagram {
    /// `index` is the degree of `q` (the Fano index).
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, q_edges: Vec<QEdge>, index: u32) -> Result<Self, HasseError> {
        let mut lookup = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if lookup.insert(v.id.clone(), i).is_some() {
                return Err(HasseError::DuplicateVertex(v.id.clone()));
            }
        }
        let find = |id: &str| lookup.get(id).copied().ok_or_else(|| HasseError::UnknownVertex(id.to_string()));
        let mut out = vec![Vec::new(); vertices.len()];
        for e in &edges {
            let (a, b) = (find(&e.from)?, find(&e.to)?);
            if vertices[b].degree != vertices[a].degree + 1 {
                return Err(HasseError::EdgeDegree { from: e.from.clone(), to: e.to.clone() });
            }
            out[a].push((b, e.mult.clone()));
        }
        let mut q_out = vec![Vec::new(); vertices.len()];
        for e in &q_edges {
            let (a, b) = (find(&e.from)?, find(&e.to)?);
            if e.q_power == 0 || vertices[b].degree + e.q_power * index != vertices[a].degree + 1 {
                return Err(HasseError::QEdgeDegree { from: e.from.clone(), to: e.to.clone() });
            }
            q_out[a].push((b, e.coeff.clone(), e.q_power));
        }
        let zeros: Vec<usize> = (0..vertices.len()).filter(|&i| vertices[i].degree == 0).collect();
        let top = vertices.iter().map(|v| v.degree).max().unwrap_or(0);
        let tops: Vec<usize> = (0..vertices.len()).filter(|&i| vertices[i].degree == top).collect();
        if zeros.len() != 1 || tops.len() != 1 {
            return Err(HasseError::BadEndpoints("need exactly one vertex of degree 0 and one of top degree".into()));
        }
        Ok(HasseDiagram { vertices, edges, q_edges, unit: zeros[0], point: tops[0], index, lookup, out, q_out })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn q_edges(&self) -> &[QEdge] {
        &self.q_edges
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn top_degree(&self) -> u32 {
        self.vertices[self.point].degree
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize, HasseError> {
        self.lookup.get(id).copied().ok_or_else(|| HasseError::UnknownVertex(id.to_string()))
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn degree_of(&self, v: usize) -> u32 {
        self.vertices[v].degree
    }

    /// Vertices of degree `d`, in list order.
    pub fn of_degree(&self, d: u32) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].degree == d).collect()
    }

    pub fn counts_per_degree(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.of_degree(d).len()).collect()
    }

    pub fn single(&self, id: &str) -> Result<QCombo, HasseError> {
        Ok(QCombo::single((0, self.vertex_index(id)?), Q::one()))
    }

    /// `h · x` read off the edges (and q-edges when `quantum`).
    pub fn chevalley_apply(&self, x: &QCombo, quantum: bool) -> Result<QCombo, HasseError> {
        let mut degs = x.keys().map(|(a, v)| self.vertices[*v].degree + a * self.index);
        if let Some(first) = degs.next() {
            if degs.any(|d| d != first) {
                return Err(HasseError::MixedDegrees);
            }
        }
        let mut out = QCombo::new();
        for ((a, v), c) in x.iter() {
            for (w, m) in &self.out[*v] {
                out.add_term((*a, *w), c * m);
            }
            if quantum {
                for (w, m, p) in &self.q_out[*v] {
                    out.add_term((a + p, *w), c * m);
                }
            }
        }
        Ok(out)
    }

    /// Number of weighted paths from each vertex to the point (classical edges).
    pub fn degrees_from_hasse(&self) -> Vec<Q> {
        let mut deg = vec![Q::zero(); self.vertices.len()];
        deg[self.point] = Q::one();
        for d in (0..self.top_degree()).rev() {
            for v in self.of_degree(d) {
                deg[v] = self.out[v].iter().map(|(w, m)| m * &deg[*w]).sum();
            }
        }
        deg
    }

    /// Matrix of `h: V_d → V_{d+1}` (rows: degree `d+1` vertices).
    pub fn classical_matrix(&self, d: u32) -> Matrix {
        let src = self.of_degree(d);
        let dst = self.of_degree(d + 1);
        let mut m = zeros(dst.len(), src.len());
        for (j, &v) in src.iter().enumerate() {
            for (w, c) in &self.out[v] {
                let i = dst.iter().position(|x| x == w).expect("edge target in next degree");
                m[i][j] += c;
            }
        }
        m
    }

    /// Renders `Σ c q^a v` ordered by q-power, then vertex order; the unit vertex prints as `1`.
    pub fn render(&self, x: &QCombo, ascii: bool) -> String {
        let terms = x.iter().map(|((a, v), c)| {
            let q = match a {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{a}"),
            };
            let vname = if *v == self.unit { String::new() } else { display_name(self.id(*v), ascii) };
            let sym = match (q.is_empty(), vname.is_empty()) {
                (true, _) => vname,
                (false, true) => q,
                (false, false) => format!("{q}·{vname}"),
            };
            (c.clone(), sym)
        });
        join_terms(terms, "")
    }

    /// Solves `h · X_v = Σ mult · X_w (+ q-terms)` degree by degree, starting from `seeds`.
    /// q-edges are used exactly when the ring has a quantum parameter.
    pub fn giambelli_solve(
        &self,
        ring: &GradedRing,
        seeds: &BTreeMap<String, RingElt>,
    ) -> Result<Vec<RingElt>, HasseError> {
        let quantum = ring.is_quantum();
        let mut known: Vec<Option<RingElt>> = vec![None; self.vertices.len()];
        for (id, x) in seeds {
            known[self.vertex_index(id)?] = Some(x.clone());
        }
        if known[self.unit].is_none() {
            return Err(HasseError::MissingSeed(self.id(self.unit).to_string()));
        }
        let h = ring.generator("h")?;
        let q = if quantum { Some(ring.generator("q")?) } else { None };
        let qterm = |w: usize, c: &Q, p: u32, known: &[Option<RingElt>]| -> Result<RingElt, HasseError> {
            let qp = ring.pow(q.as_ref().expect("quantum"), p)?;
            let xw = known[w].as_ref().ok_or(HasseError::Inconsistent { degree: self.degree_of(w) })?;
            Ok(ring.mult(&qp, xw)?.scale(c))
        };
        let top = self.top_degree();
        for d in 0..top {
            let src = self.of_degree(d);
            let unknown: Vec<usize> = self.of_degree(d + 1).into_iter().filter(|&w| known[w].is_none()).collect();
            if unknown.is_empty() {
                continue;
            }
            let dim = ring.dim(d + 1);
            let mut a = Vec::new();
            let mut b = Vec::new();
            for &v in &src {
                let xv = known[v].as_ref().ok_or(HasseError::Inconsistent { degree: d })?;
                let mut rhs = ring.mult(&h, xv)?;
                a.push(unknown.iter().map(|w| self.edge_mult(v, *w)).collect::<Vec<Q>>());
                for (w, m) in &self.out[v] {
                    if !unknown.contains(w) {
                        let xw = known[*w].as_ref().expect("seeded");
                        rhs = &rhs - &xw.scale(m);
                    }
                }
                if quantum {
                    for (w, c, p) in &self.q_out[v] {
                        rhs = &rhs - &qterm(*w, c, *p, &known)?;
                    }
                }
                b.push(coords(&rhs, d + 1, dim)?);
            }
            let sol = solve_affine(&a, &b, unknown.len()).map_err(|_| HasseError::Inconsistent { degree: d + 1 })?;
            if !sol.kernel.is_empty() {
                return Err(HasseError::Underdetermined { degree: d + 1, free: sol.kernel.len() });
            }
            for (k, &w) in unknown.iter().enumerate() {
                known[w] = Some(ring.element(d + 1, &sol.particular[k])?);
            }
        }
        let classes: Vec<RingElt> = known
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| HasseError::MissingSeed(self.id(i).to_string())))
            .collect::<Result<_, _>>()?;
        // every Chevalley line, including those leaving the top degree, must hold
        for v in 0..self.vertices.len() {
            let mut rhs = ring.zero();
            for (w, m) in &self.out[v] {
                rhs = &rhs + &classes[*w].scale(m);
            }
            if quantum {
                for (w, c, p) in &self.q_out[v] {
                    let qp = ring.pow(q.as_ref().expect("quantum"), *p)?;
                    rhs = &rhs + &ring.mult(&qp, &classes[*w])?.scale(c);
                }
            }
            if ring.mult(&h, &classes[v])? != rhs {
                return Err(HasseError::Inconsistent { degree: self.degree_of(v) + 1 });
            }
        }
        Ok(classes)
    }

    fn edge_mult(&self, v: usize, w: usize) -> Q {
        self.out[v].iter().filter(|(x, _)| *x == w).map(|(_, m)| m.clone()).sum()
    }
}

fn coords(x: &RingElt, d: u32, dim: usize) -> Result<Vec<Q>, HasseError> {
    if x.degrees().any(|e| e != d) {
        return Err(HasseError::MixedDegrees);
    }
    Ok(x.component(d).map_or_else(|| vec![Q::zero(); dim], <[Q]>::to_vec))
}

/// Vertex classes as a basis of the ring: `q^a · X_v` span each degree.
#[derive(Clone, Debug)]
pub struct SchubertBasis {
    classes: Vec<RingElt>,
    /// Per degree: the spanning terms and the inverse of their coordinate matrix.
    blocks: BTreeMap<u32, Option<(Vec<(u32, usize)>, Matrix)>>,
}

impl SchubertBasis {
    pub fn new(diag: &HasseDiagram, ring: &GradedRing, classes: Vec<RingElt>) -> Result<Self, HasseError> {
        let quantum = ring.is_quantum();
        let q = if quantum { Some(ring.generator("q")?) } else { None };
        let mut blocks = BTreeMap::new();
        let max = if quantum { ring.max_degree() } else { ring.top_degree() };
        for big_d in 0..=max {
            let mut terms = Vec::new();
            let mut a = 0;
            while a * diag.index() <= big_d {
                let d = big_d - a * diag.index();
                if d <= diag.top_degree() {
                    terms.extend(diag.of_degree(d).into_iter().map(|v| (a, v)));
                }
                if !quantum {
                    break;
                }
                a += 1;
            }
            let dim = ring.dim(big_d);
            if terms.len() != dim {
                blocks.insert(big_d, None);
                continue;
            }
            let mut cols = Vec::new();
            for &(a, v) in &terms {
                let x = match &q {
                    Some(q) => ring.mult(&ring.pow(q, a)?, &classes[v])?,
                    None => classes[v].clone(),
                };
                cols.push(coords(&x, big_d, dim)?);
            }
            let m: Matrix = (0..dim).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            blocks.insert(big_d, inverse(&m).map(|inv| (terms, inv)));
        }
        Ok(SchubertBasis { classes, blocks })
    }

    pub fn classes(&self) -> &[RingElt] {
        &self.classes
    }

    pub fn class(&self, v: usize) -> &RingElt {
        &self.classes[v]
    }

    pub fn expand(&self, ring: &GradedRing, x: &RingElt) -> Result<QCombo, HasseError> {
        let mut out = QCombo::new();
        for d in x.degrees() {
            let Some(Some((terms, inv))) = self.blocks.get(&d) else {
                return Err(HasseError::NotSpanned { degree: d });
            };
            let c = mat_vec(inv, &coords(&component_only(ring, x, d)?, d, ring.dim(d))?);
            for (t, v) in terms.iter().zip(c) {
                out.add_term(*t, v);
            }
        }
        Ok(out)
    }

    /// Inverse of [`SchubertBasis::expand`].
    pub fn assemble(&self, ring: &GradedRing, x: &QCombo) -> Result<RingElt, HasseError> {
        let mut out = ring.zero();
        let q = if ring.is_quantum() { Some(ring.generator("q")?) } else { None };
        for ((a, v), c) in x.iter() {
            let mut term = self.classes[*v].scale(c);
            if *a > 0 {
                term = ring.mult(&ring.pow(q.as_ref().ok_or(RingError::NoQuantumParameter)?, *a)?, &term)?;
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

fn component_only(ring: &GradedRing, x: &RingElt, d: u32) -> Result<RingElt, HasseError> {
    let c = x.component(d).map_or_else(|| vec![Q::zero(); ring.dim(d)], <[Q]>::to_vec);
    Ok(ring.element(d, &c)?)
}

/// One row of a multiplication table: `a · b = rhs`, all expressions over vertex ids and generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub a: String,
    pub b: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Symbol table mapping vertex ids to their classes.
pub fn symbols(diag: &HasseDiagram, classes: &[RingElt]) -> BTreeMap<String, RingElt> {
    diag.vertices().iter().zip(classes).map(|(v, x)| (v.id.clone(), x.clone())).collect()
}

/// Evaluates an expression string in the ring.
pub fn eval_symbolic(
    ring: &GradedRing,
    syms: &BTreeMap<String, RingElt>,
    text: &str,
) -> Result<RingElt, String> {
    let e = parse_expr(text).map_err(|e| e.to_string())?;
    ring.eval_expr(&e, syms).map_err(|e| e.to_string())
}

/// Compares every `a · b` with its expected right-hand side.
pub fn verify_table(
    diag: &HasseDiagram,
    ring: &GradedRing,
    basis: &SchubertBasis,
    syms: &BTreeMap<String, RingElt>,
    entries: &[TableEntry],
    id_prefix: &str,
) -> CheckReport {
    let mut report = CheckReport::new();
    for e in entries {
        let id = format!("{id_prefix}.{}*{}", e.a, e.b);
        let summary = format!("{}·{} = {}", pretty_expr(&e.a, false), pretty_expr(&e.b, false), pretty_expr(&e.rhs, false));
        let computed = eval_symbolic(ring, syms, &e.a).and_then(|a| {
            let b = eval_symbolic(ring, syms, &e.b)?;
            ring.mult(&a, &b).map_err(|e| e.to_string())
        });
        let expected = eval_symbolic(ring, syms, &e.rhs);
        match (computed, expected) {
            (Ok(l), Ok(r)) => {
                let show = |x: &RingElt| basis.expand(ring, x).map_or_else(|_| ring.display(x), |c| diag.render(&c, false));
                report.compare(id, summary, show(&l), show(&r), l == r);
            }
            (Err(msg), _) | (_, Err(msg)) => report.error(id, summary, msg),
        }
    }
    report
}

/// Poincaré-dual data: the reversed diagram and which dual vertex is dual to which first-basis vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualData {
    pub diagram: HasseDiagram,
    /// `(dual vertex, first-basis vertex)`.
    pub pairing: Vec<(String, String)>,
}

/// Classes of the dual diagram's vertices, obtained from [`GradedRing::dual_basis`].
pub fn dual_classes(
    diag: &HasseDiagram,
    ring: &GradedRing,
    classes: &[RingElt],
    dual: &DualData,
) -> Result<Vec<RingElt>, HasseError> {
    let mut partner: HashMap<usize, usize> = HashMap::new();
    for (u, v) in &dual.pairing {
        let (ui, vi) = (dual.diagram.vertex_index(u)?, diag.vertex_index(v)?);
        if partner.insert(vi, ui).is_some() {
            return Err(HasseError::BadPairing(v.clone()));
        }
    }
    let mut out: Vec<Option<RingElt>> = vec![None; dual.diagram.vertices().len()];
    for d in 0..=diag.top_degree() {
        let vs = diag.of_degree(d);
        let basis: Vec<RingElt> = vs.iter().map(|&v| classes[v].clone()).collect();
        let duals = ring.dual_basis(&basis, d)?;
        for (v, x) in vs.iter().zip(duals) {
            let u = *partner.get(v).ok_or_else(|| HasseError::BadPairing(diag.id(*v).to_string()))?;
            out[u] = Some(x);
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| HasseError::BadPairing(dual.diagram.id(i).to_string())))
        .collect()
}

/// Checks the reversed diagram against `h`-multiplication in the dual basis, and that dualizing twice is the identity.
pub fn dual_diagram_check(
    diag: &HasseDiagram,
    ring: &GradedRing,
    classes: &[RingElt],
    dual: &DualData,
    id_prefix: &str,
) -> (CheckReport, Option<Vec<RingElt>>) {
    let mut report = CheckReport::new();
    let dd = &dual.diagram;
    let duals = match dual_classes(diag, ring, classes, dual) {
        Ok(x) => x,
        Err(e) => {
            report.error(format!("{id_prefix}.dual.basis"), "Poincaré dual basis", e.to_string());
            return (report, None);
        }
    };
    let basis = match SchubertBasis::new(dd, ring, duals.clone()) {
        Ok(b) => b,
        Err(e) => {
            report.error(format!("{id_prefix}.dual.basis"), "Poincaré dual basis", e.to_string());
            return (report, None);
        }
    };
    let h = ring.generator("h").expect("hyperplane generator");
    for (u, vert) in dd.vertices().iter().enumerate() {
        let id = format!("{id_prefix}.dual.edge.{}", vert.id);
        let expected = dd.chevalley_apply(&QCombo::single((0, u), Q::one()), false).expect("single degree");
        let summary = format!("h·{} = {}", display_name(&vert.id, false), dd.render(&expected, false));
        match ring.mult(&h, &duals[u]).map_err(HasseError::from).and_then(|x| basis.expand(ring, &x)) {
            Ok(got) => report.compare(id, summary, dd.render(&got, false), dd.render(&expected, false), got == expected),
            Err(e) => report.error(id, summary, e.to_string()),
        }
    }
    for d in 0..=diag.top_degree() {
        let id = format!("{id_prefix}.dual.involution.{d}");
        let vs = diag.of_degree(d);
        let back: Result<Vec<RingElt>, HasseError> = (|| {
            let mut us = Vec::new();
            for &v in &vs {
                let (u, _) = dual.pairing.iter().find(|(_, w)| w == diag.id(v)).expect("paired");
                us.push(duals[dd.vertex_index(u)?].clone());
            }
            // the dual of the dual basis (in degree top − d) is the original basis
            Ok(ring.dual_basis(&us, diag.top_degree() - d)?)
        })();
        let summary = format!("dualizing degree {d} twice is the identity");
        match back {
            Ok(xs) => {
                let ok = xs.iter().zip(&vs).all(|(x, &v)| *x == classes[v]);
                report.check(id, summary, ok, "");
            }
            Err(e) => report.error(id, summary, e.to_string()),
        }
    }
    (report, Some(duals))
}

/// `∫ X_v X_w` for `deg v = d`, `deg w = top − d`, over diagram vertices.
pub fn vertex_pairing(diag: &HasseDiagram, ring: &GradedRing, classes: &[RingElt]) -> Result<BTreeMap<u32, Matrix>, HasseError> {
    let top = diag.top_degree();
    let mut out = BTreeMap::new();
    for d in 0..=top {
        let mut m = Vec::new();
        for &v in &diag.of_degree(d) {
            let mut row = Vec::new();
            for &w in &diag.of_degree(top - d) {
                row.push(ring.integrate(&ring.mult(&classes[v], &classes[w])?)?);
            }
            m.push(row);
        }
        out.insert(d, m);
    }
    Ok(out)
}

/// Matrices of multiplication by `x` (homogeneous of degree `k`) from `V_d` to `V_{d+k}`, classical part.
pub fn operator_matrices(
    diag: &HasseDiagram,
    ring: &GradedRing,
    basis: &SchubertBasis,
    x: &RingElt,
) -> Result<BTreeMap<u32, Matrix>, HasseError> {
    let k = x.degree().ok_or(HasseError::MixedDegrees)?;
    let top = diag.top_degree();
    let mut out = BTreeMap::new();
    for d in 0..=top.saturating_sub(k) {
        let src = diag.of_degree(d);
        let dst = diag.of_degree(d + k);
        let mut m = zeros(dst.len(), src.len());
        for (j, &v) in src.iter().enumerate() {
            let prod = basis.expand(ring, &ring.mult(x, basis.class(v))?)?;
            for ((a, w), c) in prod.iter() {
                if *a == 0 {
                    let i = dst.iter().position(|y| y == w).ok_or(HasseError::MixedDegrees)?;
                    m[i][j] = c.clone();
                }
            }
        }
        out.insert(d, m);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub sigma: String,
    pub unknowns: usize,
    pub equations: usize,
    pub constraint_rank: usize,
    /// Dimension of the affine solution space; `None` when the constraints are inconsistent.
    pub solution_dimension: Option<usize>,
    /// Whether the ring's own operator satisfies every constraint (`None` when not supplied).
    pub contains_true: Option<bool>,
    /// Particular solution with all free parameters set to zero, per source degree.
    pub sample: Option<BTreeMap<u32, Matrix>>,
    pub sample_commutes: bool,
    pub sample_cyclic: bool,
    pub sample_associative: bool,
    pub sample_is_true: Option<bool>,
}

impl fmt::Display for ReconstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "second generator: {}", display_name(&self.sigma, false))?;
        writeln!(f, "unknowns: {}", self.unknowns)?;
        writeln!(f, "equations: {} (rank {})", self.equations, self.constraint_rank)?;
        match self.solution_dimension {
            Some(d) => writeln!(f, "solution space dimension: {d}")?,
            None => writeln!(f, "solution space: empty")?,
        }
        if let Some(c) = self.contains_true {
            writeln!(f, "contains_true: {}", yn(c))?;
        }
        if let Some(t) = self.sample_is_true {
            writeln!(f, "sample equals true operator: {}", yn(t))?;
        }
        writeln!(f, "sample commutes with h: {}", yn(self.sample_commutes))?;
        writeln!(f, "sample cyclic: {}", yn(self.sample_cyclic))?;
        write!(f, "sample induces an associative commutative product: {}", yn(self.sample_associative))
    }
}

/// Searches for operators `M: V_d → V_{d+k}` (candidate multiplication by the
/// vertex `sigma` of degree `k`) with `M(1) = sigma`, `MC = CM` and `M`
/// self-adjoint for `pairing`.
pub fn reconstruct_second_generator(
    diag: &HasseDiagram,
    pairing: &BTreeMap<u32, Matrix>,
    sigma: &str,
    true_operator: Option<&BTreeMap<u32, Matrix>>,
) -> Result<ReconstructionReport, HasseError> {
    let top = diag.top_degree();
    let sv = diag.vertex_index(sigma)?;
    let k = diag.degree_of(sv);
    let n = |d: u32| if d <= top { diag.of_degree(d).len() } else { 0 };
    for d in 0..=top {
        let p = pairing.get(&d).ok_or(HasseError::DegeneratePairing { degree: d })?;
        if p.len() != n(d) || p.iter().any(|r| r.len() != n(top - d)) || n(d) != n(top - d) || inverse(p).is_none() {
            return Err(HasseError::DegeneratePairing { degree: d });
        }
    }
    if k == 0 || k > top {
        return Err(HasseError::BadEndpoints(format!("{sigma} has degree {k}")));
    }
    let last = top - k;
    let mut offset = BTreeMap::new();
    let mut unknowns = 0;
    for d in 0..=last {
        offset.insert(d, unknowns);
        unknowns += n(d + k) * n(d);
    }
    let var = |d: u32, i: usize, j: usize| offset[&d] + i * n(d) + j;
    let mut rows: Matrix = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let new_row = || vec![Q::zero(); unknowns];
    // M(1) = sigma
    let kv = diag.of_degree(k);
    for (i, &w) in kv.iter().enumerate() {
        let mut r = new_row();
        r[var(0, i, 0)] = Q::one();
        rows.push(r);
        rhs.push(if w == sv { Q::one() } else { Q::zero() });
    }
    // C_{d+k} M_d = M_{d+1} C_d
    for d in 0..=last {
        if d + k + 1 > top {
            continue;
        }
        let c_hi = diag.classical_matrix(d + k);
        let c_lo = diag.classical_matrix(d);
        for i in 0..n(d + k + 1) {
            for j in 0..n(d) {
                let mut r = new_row();
                for l in 0..n(d + k) {
                    r[var(d, l, j)] += &c_hi[i][l];
                }
                if d + 1 <= last {
                    for l in 0..n(d + 1) {
                        r[var(d + 1, i, l)] -= &c_lo[l][j];
                    }
                }
                rows.push(r);
                rhs.push(Q::zero());
            }
        }
    }
    // M_dᵀ P_{d+k} = P_d M_{top−d−k}
    for d in 0..=last {
        let e = top - d - k;
        let (p_hi, p_lo) = (&pairing[&(d + k)], &pairing[&d]);
        for i in 0..n(d) {
            for j in 0..n(e) {
                let mut r = new_row();
                for l in 0..n(d + k) {
                    r[var(d, l, i)] += &p_hi[l][j];
                }
                for l in 0..n(top - d) {
                    r[var(e, l, j)] -= &p_lo[i][l];
                }
                rows.push(r);
                rhs.push(Q::zero());
            }
        }
    }
    let equations = rows.len();
    let constraint_rank = rank(&rows);
    let b: Matrix = rhs.iter().map(|x| vec![x.clone()]).collect();
    let flatten = |ops: &BTreeMap<u32, Matrix>| -> Vec<Q> {
        let mut v = vec![Q::zero(); unknowns];
        for d in 0..=last {
            if let Some(m) = ops.get(&d) {
                for i in 0..n(d + k) {
                    for j in 0..n(d) {
                        v[var(d, i, j)] = m[i][j].clone();
                    }
                }
            }
        }
        v
    };
    let contains_true = true_operator.map(|t| {
        let v = flatten(t);
        rows.iter().zip(&rhs).all(|(r, c)| r.iter().zip(&v).map(|(a, x)| a * x).sum::<Q>() == *c)
    });
    let solution = solve_affine(&rows, &b, unknowns).ok();
    let mut report = ReconstructionReport {
        sigma: sigma.to_string(),
        unknowns,
        equations,
        constraint_rank,
        solution_dimension: solution.as_ref().map(|s| s.kernel.len()),
        contains_true,
        sample: None,
        sample_commutes: false,
        sample_cyclic: false,
        sample_associative: false,
        sample_is_true: None,
    };
    let Some(sol) = solution else { return Ok(report) };
    let mut sample = BTreeMap::new();
    for d in 0..=last {
        let m: Matrix = (0..n(d + k)).map(|i| (0..n(d)).map(|j| sol.particular[var(d, i, j)][0].clone()).collect()).collect();
        sample.insert(d, m);
    }
    report.sample_is_true = true_operator.map(|t| flatten(t) == flatten(&sample));
    let (commutes, cyclic, associative) = induced_structure(diag, &sample, k);
    report.sample_commutes = commutes;
    report.sample_cyclic = cyclic;
    report.sample_associative = associative;
    report.sample = Some(sample);
    Ok(report)
}

/// Full operators on `V = ⊕ V_d` for `h` and the sample `M`; checks that they
/// commute, that the unit is a cyclic vector, and that the product
/// `x · y = p_x(h, M) y` is commutative and associative.
fn induced_structure(diag: &HasseDiagram, m_blocks: &BTreeMap<u32, Matrix>, k: u32) -> (bool, bool, bool) {
    let top = diag.top_degree();
    let mut order: Vec<usize> = Vec::new();
    for d in 0..=top {
        order.extend(diag.of_degree(d));
    }
    let big_n = order.len();
    let start = |d: u32| (0..d).map(|e| diag.of_degree(e).len()).sum::<usize>();
    let mut c = zeros(big_n, big_n);
    let mut m = zeros(big_n, big_n);
    for d in 0..top {
        let cm = diag.classical_matrix(d);
        for (i, row) in cm.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                c[start(d + 1) + i][start(d) + j] = x.clone();
            }
        }
    }
    for (d, blk) in m_blocks {
        for (i, row) in blk.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m[start(d + k) + i][start(*d) + j] = x.clone();
            }
        }
    }
    let commutes = mat_mul(&c, &m) == mat_mul(&m, &c);
    // spanning words applied to the unit
    let mut unit = vec![Q::zero(); big_n];
    unit[start(0)] = Q::one();
    let mut span: Vec<(Vec<Q>, Matrix)> = vec![(unit.clone(), identity(big_n))];
    let mut queue = vec![0usize];
    while let Some(idx) = queue.pop() {
        for g in [&c, &m] {
            let v = mat_vec(g, &span[idx].0);
            let mut test: Matrix = span.iter().map(|(x, _)| x.clone()).collect();
            test.push(v.clone());
            if rank(&test) == span.len() + 1 {
                let w = mat_mul(g, &span[idx].1);
                span.push((v, w));
                queue.push(span.len() - 1);
            }
        }
    }
    let cyclic = span.len() == big_n;
    if !(cyclic && commutes) {
        return (commutes, cyclic, false);
    }
    let s: Matrix = (0..big_n).map(|r| span.iter().map(|(v, _)| v[r].clone()).collect()).collect();
    let s_inv = inverse(&s).expect("spanning set is a basis");
    // L_j: multiplication by the j-th basis vector
    let ops: Vec<Matrix> = (0..big_n)
        .map(|j| {
            let mut acc = zeros(big_n, big_n);
            for (i, (_, w)) in span.iter().enumerate() {
                let a = &s_inv[i][j];
                if a.is_zero() {
                    continue;
                }
                for (ra, rw) in acc.iter_mut().zip(w) {
                    for (x, y) in ra.iter_mut().zip(rw) {
                        *x += a * y;
                    }
                }
            }
            acc
        })
        .collect();
    let col = |mat: &Matrix, j: usize| -> Vec<Q> { mat.iter().map(|r| r[j].clone()).collect() };
    let lin = |x: &[Q]| -> Matrix {
        let mut acc = zeros(big_n, big_n);
        for (j, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (ra, rl) in acc.iter_mut().zip(&ops[j]) {
                for (p, y) in ra.iter_mut().zip(rl) {
                    *p += a * y;
                }
            }
        }
        acc
    };
    let mut associative = true;
    'outer: for i in 0..big_n {
        for j in 0..big_n {
            if col(&ops[i], j) != col(&ops[j], i) {
                associative = false;
                break 'outer;
            }
            if mat_mul(&ops[i], &ops[j]) != lin(&col(&ops[i], j)) {
                associative = false;
                break 'outer;
            }
        }
    }
    (commutes, cyclic, associative)
}

/// `deg(v)` as printed: `τ'0:56 τ'1:56 …`.
pub fn format_degrees(diag: &HasseDiagram, degrees: &[Q], order: &[usize], ascii: bool) -> String {
    order
        .iter()
        .map(|&v| format!("{}:{}", display_name(diag.id(v), ascii), fmt_q(&degrees[v])))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(id: &str, degree: u32) -> Vertex {
        Vertex { id: id.into(), degree, family: Family::Shared }
    }

    fn e(from: &str, to: &str, m: i64) -> Edge {
        Edge { from: from.into(), to: to.into(), mult: int(m) }
    }

    #[test]
    fn names() {
        assert_eq!(display_name("t'2", false), "τ'2");
        assert_eq!(display_name("t6p", false), "τ6⁺");
        assert_eq!(display_name("s3m", false), "σ3⁻");
        assert_eq!(display_name("s", false), "σ");
        assert_eq!(display_name("h", false), "h");
        assert_eq!(display_name("t'2", true), "t'2");
        assert_eq!(pretty_expr("2*t'4 + 3*s4", false), "2τ'4 + 3σ4");
        assert_eq!(pretty_expr("h^7/12 - 5/12*q", false), "h^7/12 - 5/12·q");
    }

    #[test]
    fn projective_plane_paths() {
        let d = HasseDiagram::new(vec![v("a", 0), v("b", 1), v("c", 2)], vec![e("a", "b", 1), e("b", "c", 2)], vec![], 3)
            .unwrap();
        assert_eq!(d.degrees_from_hasse(), vec![int(2), int(2), int(1)]);
        let x = d.chevalley_apply(&d.single("b").unwrap(), false).unwrap();
        assert_eq!(d.render(&x, true), "2c");
    }

    #[test]
    fn validation() {
        assert!(matches!(
            HasseDiagram::new(vec![v("a", 0), v("b", 2)], vec![e("a", "b", 1)], vec![], 1),
            Err(HasseError::EdgeDegree { .. })
        ));
        assert!(matches!(
            HasseDiagram::new(vec![v("a", 0), v("a", 1)], vec![], vec![], 1),
            Err(HasseError::DuplicateVertex(_))
        ));
        let d = HasseDiagram::new(vec![v("a", 0), v("b", 1)], vec![], vec![], 1).unwrap();
        let mixed: QCombo = [((0, 0), int(1)), ((0, 1), int(1))].into_iter().collect();
        assert_eq!(d.chevalley_apply(&mixed, false), Err(HasseError::MixedDegrees));
    }

    #[test]
    fn degenerate_toy_pairing() {
        let d = HasseDiagram::new(vec![v("a", 0), v("b", 1)], vec![], vec![], 1).unwrap();
        let pairing: BTreeMap<u32, Matrix> = [(0, vec![vec![int(0)]]), (1, vec![vec![int(0)]])].into_iter().collect();
        assert_eq!(
            reconstruct_second_generator(&d, &pairing, "b", None),
            Err(HasseError::DegeneratePairing { degree: 0 })
        );
    }
}
