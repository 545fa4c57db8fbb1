//! Variety definitions: the JSON format, its validation, the built-in G₂ and
//! Spin₇ entries and the verification suite that replays their tables.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chern::{g2_fundamental_class, g2_fundamental_class_by_schur};
use crate::expr::{parse_expr, parse_poly, Evaluator, PolyExpr};
use crate::hasse::{
    display_name, dual_classes, dual_diagram_check, eval_symbolic, operator_matrices, pretty_expr,
    reconstruct_second_generator, symbols, verify_table, vertex_pairing, DualData, Edge, HasseDiagram, HasseError,
    QCombo, QEdge, ReconstructionReport, SchubertBasis, TableEntry, Vertex,
};
use crate::linalg::{inverse, solve_unique};
use crate::poly::{monomials_of_degree, Poly};
use crate::rational::{fmt_q, parse_q, serde_q, Q};
use crate::report::CheckReport;
use crate::ringkit::{
    semisimple_certificate, Generator, GradedRing, Normalization, RingElt, RingError, RingPresentation,
    SemisimpleCertificate, QUANTUM_PARAMETER,
};
use crate::schubert::{grass_mult, spinor_integrate, spinor_mult, SchubertCycle, SpinorCycle};
use crate::symfunc::{Partition, StrictPartition};

pub const BUILTIN_NAMES: [&str; 2] = ["g2", "spin7"];

const G2_DOCUMENT: &str = include_str!("../data/g2.json");
const SPIN7_DOCUMENT: &str = include_str!("../data/spin7.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("unknown variety {0:?}")]
    UnknownVariety(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Hasse(#[from] HasseError),
    #[error("{0}")]
    Eval(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietySpec {
    pub name: String,
    pub group: String,
    pub dimension: u32,
    pub index: u32,
    pub generators: Vec<GeneratorSpec>,
    pub relations: RelationSpec,
    pub normalization: NormalizationSpec,
    pub hasse: HasseSpec,
    pub seeds: BTreeMap<String, String>,
    pub golden: Golden,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub classical: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quantum: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizationSpec {
    pub generator: String,
    pub exponent: u32,
    #[serde(with = "serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HasseSpec {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q_edges: Vec<QEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Identity {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

impl Identity {
    fn summary(&self) -> String {
        self.summary.clone().unwrap_or_else(|| format!("{} = {}", pretty_expr(&self.lhs, false), pretty_expr(&self.rhs, false)))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    #[default]
    First,
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table {
    pub name: String,
    #[serde(default)]
    pub basis: Basis,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Golden {
    pub hilbert: Vec<usize>,
    pub degrees: BTreeMap<String, String>,
    pub giambelli: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<Identity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthogonal: Option<Orthogonality>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumGolden>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fundamental_class: Option<FundamentalClassGolden>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<SemisimpleGolden>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruct: Option<ReconstructGolden>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSpec {
    pub hasse: HasseSpec,
    /// Dual vertex → the first-basis vertex it is dual to.
    pub pairing: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub formulas: BTreeMap<String, String>,
}

/// Two families of classes whose pairwise products vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Orthogonality {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumGolden {
    /// Number of vertices whose `h`-multiplication acquires q-terms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected_lines: Option<usize>,
    pub giambelli: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<Identity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evaluation {
    pub partition: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FundamentalClassGolden {
    pub closed_orbit: String,
    pub evaluations: Vec<Evaluation>,
    pub class: String,
    /// Combination of Schubert classes of the ambient Grassmannian killed by `[X]`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub annihilates: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemisimpleGolden {
    pub q: String,
    pub candidates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructGolden {
    pub sigma: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Triple {
    pub group: String,
    pub p_y: String,
    pub p_z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinorData {
    /// Ring generators and vertices ↦ spinor-variety classes written with `g<parts>` (`g21` = γ₂₁).
    pub restriction: BTreeMap<String, String>,
    pub identities: Vec<Identity>,
    pub relation: String,
    pub restricts_to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub case: u32,
    pub triple: Triple,
    pub module_dimension: Option<u32>,
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spinor: Option<SpinorData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One family of smooth projective two-orbit varieties with Picard group ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub case: u32,
    pub group: &'static str,
    pub p_y: &'static str,
    pub p_z: &'static str,
    pub conditions: &'static str,
    pub module_dimension: &'static str,
    pub k: &'static str,
    pub builtin: Option<&'static str>,
}

pub fn families() -> Vec<FamilyInfo> {
    let f = |case, group, p_y, p_z, conditions, module_dimension, k, builtin| FamilyInfo {
        case,
        group,
        p_y,
        p_z,
        conditions,
        module_dimension,
        k,
        builtin,
    };
    vec![
        f(1, "B_m", "P(w_{m-1})", "P(w_m)", "m >= 3", "2^m", "1", None),
        f(2, "B3", "P(w1)", "P(w3)", "", "-", "-", Some("spin7")),
        f(3, "C_m", "P(w_{i+1})", "P(w_i)", "m >= 2, 1 <= i <= m-1", "2m", "1 <= k < m", None),
        f(4, "F4", "P(w2)", "P(w3)", "", "26", "2", None),
        f(5, "G2", "P(w2)", "P(w1)", "", "7", "1", Some("g2")),
    ]
}

/// The shipped JSON document for a built-in variety.
pub fn builtin_document(name: &str) -> Result<&'static str, CatalogError> {
    match name {
        "g2" => Ok(G2_DOCUMENT),
        "spin7" => Ok(SPIN7_DOCUMENT),
        _ => Err(CatalogError::UnknownVariety(name.to_string())),
    }
}

pub fn builtin(name: &str) -> Result<VarietySpec, CatalogError> {
    load_spec(builtin_document(name)?)
}

pub fn load_spec(document: &str) -> Result<VarietySpec, CatalogError> {
    let spec: VarietySpec = serde_json::from_str(document).map_err(|e| CatalogError::Schema(e.to_string()))?;
    validate(&spec)?;
    Ok(spec)
}

pub fn to_json(spec: &VarietySpec) -> String {
    serde_json::to_string_pretty(spec).expect("spec serializes")
}

fn violation(msg: impl Into<String>) -> CatalogError {
    CatalogError::InvariantViolation(msg.into())
}

fn diagram_of(h: &HasseSpec, index: u32) -> Result<HasseDiagram, CatalogError> {
    HasseDiagram::new(h.vertices.clone(), h.edges.clone(), h.q_edges.clone(), index).map_err(|e| violation(e.to_string()))
}

fn classical_names(spec: &VarietySpec) -> Vec<&str> {
    spec.generators.iter().map(|g| g.name.as_str()).filter(|n| *n != QUANTUM_PARAMETER).collect()
}

fn all_names(spec: &VarietySpec) -> Vec<&str> {
    spec.generators.iter().map(|g| g.name.as_str()).collect()
}

fn validate(spec: &VarietySpec) -> Result<(), CatalogError> {
    let mut seen = BTreeSet::new();
    for g in &spec.generators {
        if g.degree == 0 || !seen.insert(g.name.as_str()) {
            return Err(violation(format!("generator {:?} is repeated or has degree 0", g.name)));
        }
        if g.name == QUANTUM_PARAMETER && g.degree != spec.index {
            return Err(violation(format!("quantum parameter has degree {} but the index is {}", g.degree, spec.index)));
        }
    }
    let has_q = spec.generators.iter().any(|g| g.name == QUANTUM_PARAMETER);
    if !spec.relations.quantum.is_empty() && !has_q {
        return Err(violation("quantum relations need a generator named q"));
    }
    let cl = classical_names(spec);
    let all = all_names(spec);
    let weights: Vec<u32> = spec.generators.iter().filter(|g| g.name != QUANTUM_PARAMETER).map(|g| g.degree).collect();
    for r in &spec.relations.classical {
        parse_poly(r, &cl).map_err(|e| violation(format!("classical relation {r:?}: {e}")))?;
    }
    for r in &spec.relations.quantum {
        parse_poly(r, &all).map_err(|e| violation(format!("quantum relation {r:?}: {e}")))?;
    }
    let norm = &spec.normalization;
    let ng = spec
        .generators
        .iter()
        .find(|g| g.name == norm.generator && g.name != QUANTUM_PARAMETER)
        .ok_or_else(|| violation(format!("normalization generator {:?} is not a generator", norm.generator)))?;
    if ng.degree * norm.exponent != spec.dimension {
        return Err(violation("normalization monomial is not of top degree"));
    }
    let diag = diagram_of(&spec.hasse, spec.index)?;
    if diag.top_degree() != spec.dimension {
        return Err(violation(format!("diagram top degree {} differs from the dimension {}", diag.top_degree(), spec.dimension)));
    }
    if !spec.seeds.contains_key(diag.id(diag.unit())) {
        return Err(violation("seeds must include the unit vertex"));
    }
    for (v, text) in &spec.seeds {
        let vi = diag.vertex_index(v).map_err(|e| violation(e.to_string()))?;
        let p = parse_poly(text, &cl).and_then(|e| e.to_poly(&cl)).map_err(|e| violation(format!("seed {v}: {e}")))?;
        let deg = if p.is_zero() { None } else { p.weighted_degree(&weights) };
        if deg != Some(diag.degree_of(vi)) {
            return Err(violation(format!("seed {v} is not homogeneous of degree {}", diag.degree_of(vi))));
        }
    }
    let mut known: BTreeSet<String> = all.iter().map(|s| s.to_string()).collect();
    known.extend(spec.hasse.vertices.iter().map(|v| v.id.clone()));
    let golden = &spec.golden;
    if let Some(d) = &golden.dual {
        let dd = diagram_of(&d.hasse, spec.index)?;
        let mut partners = BTreeSet::new();
        for (u, v) in &d.pairing {
            let ui = dd.vertex_index(u).map_err(|e| violation(e.to_string()))?;
            let vi = diag.vertex_index(v).map_err(|e| violation(e.to_string()))?;
            if dd.degree_of(ui) + diag.degree_of(vi) != spec.dimension || !partners.insert(vi) {
                return Err(violation(format!("pairing {u} ↔ {v} is not a degree-complementary bijection")));
            }
        }
        if d.pairing.len() != spec.hasse.vertices.len() || d.hasse.vertices.len() != spec.hasse.vertices.len() {
            return Err(violation("dual pairing must cover every vertex"));
        }
        known.extend(d.hasse.vertices.iter().map(|v| v.id.clone()));
        for (k, f) in &d.formulas {
            dd.vertex_index(k).map_err(|e| violation(e.to_string()))?;
            resolve(f, &known)?;
        }
    }
    for key in golden.degrees.keys().chain(golden.giambelli.keys()) {
        diag.vertex_index(key).map_err(|e| violation(e.to_string()))?;
    }
    for v in golden.degrees.values() {
        parse_q(v).ok_or_else(|| violation(format!("degree {v:?} is not a rational")))?;
    }
    let mut exprs: Vec<&str> = golden.giambelli.values().map(String::as_str).collect();
    let mut tables: Vec<&Table> = golden.tables.iter().collect();
    let mut identities: Vec<&Identity> = golden.identities.iter().collect();
    if let Some(q) = &golden.quantum {
        if !has_q {
            return Err(violation("quantum golden data needs a generator named q"));
        }
        for key in q.giambelli.keys() {
            diag.vertex_index(key).map_err(|e| violation(e.to_string()))?;
        }
        exprs.extend(q.giambelli.values().map(String::as_str));
        tables.extend(&q.tables);
        identities.extend(&q.identities);
    }
    for t in tables {
        if t.basis == Basis::Dual && golden.dual.is_none() {
            return Err(violation(format!("table {} uses the dual basis but no dual data is given", t.name)));
        }
        for e in &t.entries {
            exprs.extend([e.a.as_str(), e.b.as_str(), e.rhs.as_str()]);
        }
    }
    for i in identities {
        exprs.extend([i.lhs.as_str(), i.rhs.as_str()]);
    }
    if let Some(o) = &golden.orthogonal {
        exprs.extend(o.left.iter().chain(&o.right).map(String::as_str));
    }
    if let Some(r) = &golden.reconstruct {
        diag.vertex_index(&r.sigma).map_err(|e| violation(e.to_string()))?;
    }
    if let Some(s) = &golden.semisimple {
        parse_q(&s.q).ok_or_else(|| violation("semisimple q is not a rational"))?;
        for c in &s.candidates {
            parse_poly(c, &all).map_err(|e| violation(format!("candidate {c:?}: {e}")))?;
        }
    }
    for e in exprs {
        resolve(e, &known)?;
    }
    if let Some(sp) = &spec.metadata.spinor {
        for (k, v) in &sp.restriction {
            if !known.contains(k) {
                return Err(violation(format!("restriction key {k:?} is neither a generator nor a vertex")));
            }
            spinor_symbols(v)?;
        }
        for i in &sp.identities {
            spinor_symbols(&i.lhs)?;
            spinor_symbols(&i.rhs)?;
        }
        spinor_symbols(&sp.relation)?;
        parse_poly(&sp.restricts_to, &cl).map_err(|e| violation(format!("restricts_to: {e}")))?;
    }
    Ok(())
}

fn resolve(text: &str, known: &BTreeSet<String>) -> Result<(), CatalogError> {
    let e = parse_expr(text).map_err(|e| violation(format!("{text:?}: {e}")))?;
    for id in e.identifiers() {
        if !known.contains(id) {
            return Err(violation(format!("symbol {id:?} in {text:?} does not name a vertex or generator")));
        }
    }
    Ok(())
}

fn spinor_symbols(text: &str) -> Result<PolyExpr, CatalogError> {
    let e = parse_expr(text).map_err(|e| violation(format!("{text:?}: {e}")))?;
    for id in e.identifiers() {
        spinor_partition(id).map_err(violation)?;
    }
    Ok(e)
}

fn spinor_partition(id: &str) -> Result<StrictPartition, String> {
    let digits = id.strip_prefix('g').filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()));
    let digits = digits.ok_or_else(|| format!("{id:?} is not a spinor class name like g21"))?;
    StrictPartition::new(digits.chars().map(|c| c.to_digit(10).expect("digit")).collect()).map_err(|e| e.to_string())
}

struct SpinorEval;

impl Evaluator for SpinorEval {
    type Value = SpinorCycle;
    type Error = String;

    fn constant(&mut self, c: &Q) -> Result<SpinorCycle, String> {
        Ok(SpinorCycle::unit().scale(c))
    }

    fn var(&mut self, name: &str) -> Result<SpinorCycle, String> {
        SpinorCycle::class(spinor_partition(name)?).map_err(|e| e.to_string())
    }

    fn add(&mut self, a: SpinorCycle, b: SpinorCycle) -> Result<SpinorCycle, String> {
        Ok(a.add(&b))
    }

    fn mul(&mut self, a: SpinorCycle, b: SpinorCycle) -> Result<SpinorCycle, String> {
        Ok(spinor_mult(&a, &b))
    }

    fn scale(&mut self, a: SpinorCycle, c: &Q) -> Result<SpinorCycle, String> {
        Ok(a.scale(c))
    }
}

pub fn eval_spinor(text: &str) -> Result<SpinorCycle, String> {
    parse_expr(text).map_err(|e| e.to_string())?.eval(&mut SpinorEval)
}

struct Substitute<'a> {
    nvars: usize,
    map: &'a BTreeMap<String, Poly>,
}

impl Evaluator for Substitute<'_> {
    type Value = Poly;
    type Error = String;

    fn constant(&mut self, c: &Q) -> Result<Poly, String> {
        Ok(Poly::constant(self.nvars, c.clone()))
    }

    fn var(&mut self, name: &str) -> Result<Poly, String> {
        self.map.get(name).cloned().ok_or_else(|| format!("no expression for {name:?}"))
    }

    fn add(&mut self, a: Poly, b: Poly) -> Result<Poly, String> {
        Ok(&a + &b)
    }

    fn mul(&mut self, a: Poly, b: Poly) -> Result<Poly, String> {
        Ok(&a * &b)
    }

    fn scale(&mut self, a: Poly, c: &Q) -> Result<Poly, String> {
        Ok(a.scale(c))
    }
}

/// A validated spec together with its diagrams.
#[derive(Clone, Debug)]
pub struct Variety {
    spec: VarietySpec,
    diagram: HasseDiagram,
    dual: Option<DualData>,
}

/// A ring with the vertex classes of the diagram (and of the dual diagram, if any).
#[derive(Debug)]
pub struct Model {
    pub ring: GradedRing,
    pub classes: Vec<RingElt>,
    pub basis: SchubertBasis,
    pub dual_classes: Option<Vec<RingElt>>,
    pub dual_basis: Option<SchubertBasis>,
}

impl Model {
    /// Vertex ids of both diagrams mapped to their classes.
    pub fn symbols(&self, v: &Variety) -> BTreeMap<String, RingElt> {
        let mut syms = symbols(&v.diagram, &self.classes);
        if let (Some(d), Some(dc)) = (&v.dual, &self.dual_classes) {
            syms.extend(symbols(&d.diagram, dc));
        }
        syms
    }
}

impl Variety {
    pub fn new(spec: VarietySpec) -> Result<Variety, CatalogError> {
        validate(&spec)?;
        let diagram = diagram_of(&spec.hasse, spec.index)?;
        let dual = match &spec.golden.dual {
            Some(d) => Some(DualData {
                diagram: diagram_of(&d.hasse, spec.index)?,
                pairing: d.pairing.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
            }),
            None => None,
        };
        Ok(Variety { spec, diagram, dual })
    }

    pub fn builtin(name: &str) -> Result<Variety, CatalogError> {
        Variety::new(builtin(name)?)
    }

    pub fn spec(&self) -> &VarietySpec {
        &self.spec
    }

    pub fn diagram(&self) -> &HasseDiagram {
        &self.diagram
    }

    pub fn dual(&self) -> Option<&DualData> {
        self.dual.as_ref()
    }

    pub fn has_quantum(&self) -> bool {
        !self.spec.relations.quantum.is_empty()
    }

    pub fn presentation(&self, quantum: bool) -> Result<RingPresentation, CatalogError> {
        let names = if quantum { all_names(&self.spec) } else { classical_names(&self.spec) };
        let texts = if quantum { &self.spec.relations.quantum } else { &self.spec.relations.classical };
        let relations = texts
            .iter()
            .map(|t| parse_poly(t, &names).and_then(|e| e.to_poly(&names)))
            .collect::<Result<Vec<Poly>, _>>()
            .map_err(|e| violation(e.to_string()))?;
        let generators = self
            .spec
            .generators
            .iter()
            .filter(|g| quantum || g.name != QUANTUM_PARAMETER)
            .map(|g| Generator::new(&g.name, g.degree))
            .collect();
        let n = &self.spec.normalization;
        Ok(RingPresentation {
            generators,
            relations,
            top_degree: self.spec.dimension,
            normalization: Normalization { generator: n.generator.clone(), exponent: n.exponent, value: n.value.clone() },
        })
    }

    pub fn ring(&self, quantum: bool) -> Result<GradedRing, CatalogError> {
        if quantum && !self.has_quantum() {
            return Err(RingError::NoQuantumParameter.into());
        }
        Ok(GradedRing::build(self.presentation(quantum)?, None)?)
    }

    pub fn model(&self, quantum: bool) -> Result<Model, CatalogError> {
        let ring = self.ring(quantum)?;
        self.model_in(ring)
    }

    fn model_in(&self, ring: GradedRing) -> Result<Model, CatalogError> {
        let mut seeds = BTreeMap::new();
        for (v, text) in &self.spec.seeds {
            seeds.insert(v.clone(), eval_symbolic(&ring, &BTreeMap::new(), text).map_err(CatalogError::Eval)?);
        }
        let classes = self.diagram.giambelli_solve(&ring, &seeds)?;
        let basis = SchubertBasis::new(&self.diagram, &ring, classes.clone())?;
        let (dual_classes, dual_basis) = match &self.dual {
            None => (None, None),
            Some(d) => {
                let dc = if ring.is_quantum() {
                    // same combinations of vertex classes as in the classical ring
                    let cl = self.model(false)?;
                    let duals = cl.dual_classes.expect("dual data present");
                    duals
                        .iter()
                        .map(|x| basis.assemble(&ring, &cl.basis.expand(&cl.ring, x)?))
                        .collect::<Result<Vec<_>, HasseError>>()?
                } else {
                    dual_classes(&self.diagram, &ring, &classes, d)?
                };
                let db = SchubertBasis::new(&d.diagram, &ring, dc.clone())?;
                (Some(dc), Some(db))
            }
        };
        Ok(Model { ring, classes, basis, dual_classes, dual_basis })
    }

    fn diagram_for(&self, basis: Basis) -> Option<&HasseDiagram> {
        match basis {
            Basis::First => Some(&self.diagram),
            Basis::Dual => self.dual.as_ref().map(|d| &d.diagram),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub a: String,
    pub b: String,
    pub product: String,
}

/// Products of all pairs of non-unit vertices, then of every vertex with each
/// generator other than `h`, computed in the model's ring.
pub fn multiplication_table(v: &Variety, m: &Model, basis: Basis, ascii: bool) -> Result<Vec<TableRow>, CatalogError> {
    let diag = v.diagram_for(basis).ok_or_else(|| violation("this variety has no dual basis"))?;
    let (classes, sb) = match basis {
        Basis::First => (&m.classes, &m.basis),
        Basis::Dual => (
            m.dual_classes.as_ref().ok_or_else(|| violation("no dual classes"))?,
            m.dual_basis.as_ref().ok_or_else(|| violation("no dual classes"))?,
        ),
    };
    let verts: Vec<usize> = (0..diag.vertices().len()).filter(|&i| i != diag.unit()).collect();
    let mut rows = Vec::new();
    for (k, &i) in verts.iter().enumerate() {
        for &j in &verts[k..] {
            let p = sb.expand(&m.ring, &m.ring.mult(&classes[i], &classes[j])?)?;
            rows.push(TableRow {
                a: display_name(diag.id(i), ascii),
                b: display_name(diag.id(j), ascii),
                product: diag.render(&p, ascii),
            });
        }
    }
    for g in &v.spec.generators {
        if g.name == "h" || g.name == QUANTUM_PARAMETER {
            continue;
        }
        let x = m.ring.generator(&g.name)?;
        for &i in &verts {
            let p = sb.expand(&m.ring, &m.ring.mult(&classes[i], &x)?)?;
            rows.push(TableRow {
                a: display_name(diag.id(i), ascii),
                b: display_name(&g.name, ascii),
                product: diag.render(&p, ascii),
            });
        }
    }
    Ok(rows)
}

/// Path-count degrees and ring degrees `∫ h^{top−d} X_v`, in vertex order.
pub fn degrees(v: &Variety, m: &Model) -> Result<(Vec<Q>, Vec<Q>), CatalogError> {
    let h = m.ring.generator("h")?;
    let top = v.diagram.top_degree();
    let paths = v.diagram.degrees_from_hasse();
    let ring = (0..v.diagram.vertices().len())
        .map(|i| {
            let hp = m.ring.pow(&h, top - v.diagram.degree_of(i))?;
            m.ring.integrate(&m.ring.mult(&hp, &m.classes[i])?)
        })
        .collect::<Result<Vec<Q>, RingError>>()?;
    Ok((paths, ring))
}

#[derive(Clone, Debug)]
pub struct SemisimpleResult {
    pub candidate: String,
    pub q: Q,
    pub certificate: SemisimpleCertificate,
}

/// Tries the candidates in order and returns the first certified one (or the last attempt).
pub fn find_semisimple(v: &Variety, quantum: &Model, q: &Q, candidates: &[String]) -> Result<SemisimpleResult, CatalogError> {
    let alg = quantum.ring.specialize_q(q)?;
    let mut last = None;
    for c in candidates {
        let x = eval_symbolic(&quantum.ring, &BTreeMap::new(), c).map_err(CatalogError::Eval)?;
        let coords = quantum.ring.specialize_element(&x, q)?;
        let certificate = semisimple_certificate(&alg, &coords);
        let res = SemisimpleResult { candidate: c.clone(), q: q.clone(), certificate };
        if res.certificate.semisimple() {
            return Ok(res);
        }
        last = Some(res);
    }
    last.ok_or_else(|| violation(format!("{}: no semisimplicity candidates", v.spec.name)))
}

/// Runs the second-generator reconstruction on the classical diagram.
pub fn reconstruct(v: &Variety, classical: &Model, sigma: &str) -> Result<ReconstructionReport, CatalogError> {
    let pairing = vertex_pairing(&v.diagram, &classical.ring, &classical.classes)?;
    let sv = v.diagram.vertex_index(sigma)?;
    let truth = operator_matrices(&v.diagram, &classical.ring, &classical.basis, &classical.classes[sv])?;
    Ok(reconstruct_second_generator(&v.diagram, &pairing, sigma, Some(&truth))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub classical: bool,
    pub quantum: bool,
    pub fundamental_class: bool,
    pub reconstruct: bool,
    pub semisimple: bool,
}

impl SuiteOptions {
    pub fn all() -> Self {
        SuiteOptions { classical: true, quantum: true, fundamental_class: true, reconstruct: true, semisimple: true }
    }

    pub fn classical() -> Self {
        SuiteOptions { classical: true, quantum: false, fundamental_class: false, reconstruct: false, semisimple: false }
    }

    pub fn quantum() -> Self {
        SuiteOptions { classical: false, quantum: true, fundamental_class: false, reconstruct: false, semisimple: true }
    }
}

pub fn run_suite(spec: &VarietySpec, options: SuiteOptions) -> CheckReport {
    let p = spec.name.clone();
    let mut report = CheckReport::new();
    let v = match Variety::new(spec.clone()) {
        Ok(v) => v,
        Err(e) => {
            report.error(format!("{p}.spec"), "variety definition", e.to_string());
            return report;
        }
    };
    let classical = match v.model(false) {
        Ok(m) => Some(m),
        Err(e) => {
            report.error(format!("{p}.ring.build"), "Chow ring and vertex classes", e.to_string());
            None
        }
    };
    if options.classical {
        if let Some(m) = &classical {
            classical_checks(&v, m, &mut report);
        }
    }
    let quantum = if (options.quantum || options.semisimple) && v.has_quantum() {
        match v.model(true) {
            Ok(m) => Some(m),
            Err(e) => {
                report.error(format!("{p}.quantum.build"), "quantum ring and vertex classes", e.to_string());
                None
            }
        }
    } else {
        None
    };
    if options.quantum {
        if let (Some(q), Some(c)) = (&quantum, &classical) {
            quantum_checks(&v, c, q, &mut report);
        }
    }
    if options.semisimple {
        if let (Some(q), Some(g)) = (&quantum, &spec.golden.semisimple) {
            let value = parse_q(&g.q).expect("validated");
            let id = format!("{p}.quantum.semisimple");
            let summary = format!("generic semisimplicity at q={}", fmt_q(&value));
            match find_semisimple(&v, q, &value, &g.candidates) {
                Ok(r) => {
                    let c = &r.certificate;
                    let detail = format!(
                        "x = {}, minimal polynomial of degree {}, squarefree: {}, generates: {}",
                        pretty_expr(&r.candidate, false),
                        c.minimal_polynomial.degree().unwrap_or(0),
                        c.squarefree,
                        c.generates
                    );
                    report.check(id, summary, c.semisimple(), detail);
                }
                Err(e) => report.error(id, summary, e.to_string()),
            }
        }
    }
    if options.fundamental_class {
        if let Some(g) = &spec.golden.fundamental_class {
            fundamental_class_checks(&p, g, &mut report);
        }
    }
    if options.reconstruct {
        if let (Some(g), Some(c)) = (&spec.golden.reconstruct, &classical) {
            let base = format!("{p}.reconstruct");
            match reconstruct(&v, c, &g.sigma) {
                Ok(r) => {
                    let dim = r.solution_dimension.map_or("empty".to_string(), |d| d.to_string());
                    report.check(
                        format!("{base}.contains_true"),
                        format!("multiplication by {} satisfies the diagram constraints", display_name(&g.sigma, false)),
                        r.contains_true == Some(true),
                        format!("solution space dimension {dim}"),
                    );
                    let sample_ok = r.sample_commutes && r.sample_cyclic && r.sample_associative;
                    report.check(
                        format!("{base}.sample"),
                        "sampled operator induces a commutative associative product",
                        sample_ok,
                        format!(
                            "commutes: {}, cyclic: {}, associative: {}",
                            r.sample_commutes, r.sample_cyclic, r.sample_associative
                        ),
                    );
                }
                Err(e) => report.error(base, "second-generator reconstruction", e.to_string()),
            }
        }
    }
    report
}

fn classical_checks(v: &Variety, m: &Model, report: &mut CheckReport) {
    let spec = &v.spec;
    let p = &spec.name;
    let g = &spec.golden;
    let diag = &v.diagram;
    let ring = &m.ring;
    let fmt_list = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let hil = ring.hilbert();
    report.compare(
        format!("{p}.ring.hilbert"),
        format!("Hilbert function ({})", fmt_list(&g.hilbert)),
        fmt_list(&hil),
        fmt_list(&g.hilbert),
        hil == g.hilbert,
    );
    let total: usize = hil.iter().sum();
    report.compare(
        format!("{p}.ring.rank"),
        format!("rank {}", g.hilbert.iter().sum::<usize>()),
        total.to_string(),
        diag.vertices().len().to_string(),
        total == diag.vertices().len() && total == g.hilbert.iter().sum::<usize>(),
    );
    let counts = diag.counts_per_degree();
    report.compare(
        format!("{p}.hasse.counts"),
        "vertices per degree match the Hilbert function",
        fmt_list(&counts),
        fmt_list(&hil),
        counts == hil,
    );
    for d in 0..=ring.top_degree() {
        let id = format!("{p}.ring.pairing.{d}");
        let summary = format!("Poincaré pairing is perfect in degree {d}");
        match ring.pairing_matrix(d) {
            Ok(mat) => report.check(id, summary, inverse(&mat).is_some(), ""),
            Err(e) => report.error(id, summary, e.to_string()),
        }
    }
    let syms = m.symbols(v);
    giambelli_checks(v, m, &g.giambelli, &format!("{p}.giambelli"), report);
    chevalley_checks(v, m, false, &format!("{p}.chevalley"), report);
    match degrees(v, m) {
        Ok((paths, integrals)) => {
            for (i, vert) in diag.vertices().iter().enumerate() {
                let Some(expected) = g.degrees.get(&vert.id).and_then(|s| parse_q(s)) else { continue };
                let name = display_name(&vert.id, false);
                let summary = format!("deg {name} = {}", fmt_q(&expected));
                report.compare(format!("{p}.degrees.hasse.{}", vert.id), summary.clone(), fmt_q(&paths[i]), fmt_q(&expected), paths[i] == expected);
                report.compare(format!("{p}.degrees.ring.{}", vert.id), summary, fmt_q(&integrals[i]), fmt_q(&expected), integrals[i] == expected);
            }
        }
        Err(e) => report.error(format!("{p}.degrees"), "degrees of the vertex classes", e.to_string()),
    }
    identity_checks(ring, &syms, &g.identities, &format!("{p}.relation"), report);
    for t in &g.tables {
        table_checks(v, m, &syms, t, &format!("{p}.table.{}", t.name), report);
    }
    if let (Some(d), Some(ds)) = (&v.dual, &g.dual) {
        let (r, _) = dual_diagram_check(diag, ring, &m.classes, d, p);
        report.extend(r);
        if let Some(dc) = &m.dual_classes {
            for (u, f) in &ds.formulas {
                let id = format!("{p}.dual.formula.{u}");
                let summary = format!("{} = {}", display_name(u, false), pretty_expr(f, false));
                let ui = d.diagram.vertex_index(u).expect("validated");
                match eval_symbolic(ring, &syms, f) {
                    Ok(x) => {
                        let show = |y: &RingElt| m.basis.expand(ring, y).map_or_else(|_| ring.display(y), |c| diag.render(&c, false));
                        report.compare(id, summary, show(&dc[ui]), show(&x), dc[ui] == x);
                    }
                    Err(e) => report.error(id, summary, e),
                }
            }
        }
    }
    if let Some(o) = &g.orthogonal {
        let mut bad = Vec::new();
        for a in &o.left {
            for b in &o.right {
                match eval_symbolic(ring, &syms, &format!("({a})*({b})")) {
                    Ok(x) if x.is_zero() => {}
                    Ok(_) => bad.push(format!("{a}*{b}")),
                    Err(e) => bad.push(e),
                }
            }
        }
        let lhs = o.left.iter().map(|x| display_name(x, false)).collect::<Vec<_>>().join(",");
        let rhs = o.right.iter().map(|x| display_name(x, false)).collect::<Vec<_>>().join(",");
        report.check(format!("{p}.orthogonality"), format!("⟨{lhs}⟩·⟨{rhs}⟩ = 0"), bad.is_empty(), bad.join(", "));
    }
    if let Some(sp) = &spec.metadata.spinor {
        spinor_checks(v, m, sp, report);
    }
}

fn giambelli_checks(v: &Variety, m: &Model, golden: &BTreeMap<String, String>, base: &str, report: &mut CheckReport) {
    let ring = &m.ring;
    for (i, vert) in v.diagram.vertices().iter().enumerate() {
        let Some(text) = golden.get(&vert.id) else { continue };
        let id = format!("{base}.{}", vert.id);
        let summary = format!("{} = {}", display_name(&vert.id, false), pretty_expr(text, false));
        match eval_symbolic(ring, &BTreeMap::new(), text) {
            Ok(x) => report.compare(id, summary, ring.display(&m.classes[i]), ring.display(&x), m.classes[i] == x),
            Err(e) => report.error(id, summary, e),
        }
    }
}

fn chevalley_checks(v: &Variety, m: &Model, quantum: bool, base: &str, report: &mut CheckReport) {
    let diag = &v.diagram;
    let ring = &m.ring;
    let h = match ring.generator("h") {
        Ok(h) => h,
        Err(e) => {
            report.error(base, "Chevalley formula", e.to_string());
            return;
        }
    };
    for (i, vert) in diag.vertices().iter().enumerate() {
        if i == diag.unit() {
            continue;
        }
        let expected = diag.chevalley_apply(&QCombo::single((0, i), Q::one()), quantum).expect("single vertex");
        let summary = format!("{}·h = {}", display_name(&vert.id, false), diag.render(&expected, false));
        let got = ring.mult(&m.classes[i], &h).map_err(HasseError::from).and_then(|x| m.basis.expand(ring, &x));
        match got {
            Ok(c) => report.compare(format!("{base}.{}", vert.id), summary, diag.render(&c, false), diag.render(&expected, false), c == expected),
            Err(e) => report.error(format!("{base}.{}", vert.id), summary, e.to_string()),
        }
    }
}

fn identity_checks(ring: &GradedRing, syms: &BTreeMap<String, RingElt>, ids: &[Identity], base: &str, report: &mut CheckReport) {
    for i in ids {
        let id = format!("{base}.{}", i.id);
        match (eval_symbolic(ring, syms, &i.lhs), eval_symbolic(ring, syms, &i.rhs)) {
            (Ok(l), Ok(r)) => report.compare(id, i.summary(), ring.display(&l), ring.display(&r), l == r),
            (Err(e), _) | (_, Err(e)) => report.error(id, i.summary(), e),
        }
    }
}

fn table_checks(v: &Variety, m: &Model, syms: &BTreeMap<String, RingElt>, t: &Table, base: &str, report: &mut CheckReport) {
    let (diag, basis) = match t.basis {
        Basis::First => (&v.diagram, &m.basis),
        Basis::Dual => match (&v.dual, &m.dual_basis) {
            (Some(d), Some(b)) => (&d.diagram, b),
            _ => {
                report.error(base, format!("table {}", t.name), "dual basis unavailable");
                return;
            }
        },
    };
    report.extend(verify_table(diag, &m.ring, basis, syms, &t.entries, base));
}

fn quantum_checks(v: &Variety, classical: &Model, m: &Model, report: &mut CheckReport) {
    let spec = &v.spec;
    let p = &spec.name;
    let diag = &v.diagram;
    chevalley_checks(v, m, true, &format!("{p}.quantum.chevalley"), report);
    let corrected: Vec<&str> = diag
        .vertices()
        .iter()
        .filter(|x| diag.q_edges().iter().any(|e| e.from == x.id))
        .map(|x| x.id.as_str())
        .collect();
    let Some(g) = &spec.golden.quantum else { return };
    if let Some(n) = g.corrected_lines {
        let names = corrected.iter().map(|x| display_name(x, false)).collect::<Vec<_>>().join(", ");
        report.compare(
            format!("{p}.quantum.corrections"),
            format!("q-terms appear in exactly {n} Chevalley lines"),
            format!("{} ({names})", corrected.len()),
            n.to_string(),
            corrected.len() == n,
        );
    }
    giambelli_checks(v, m, &g.giambelli, &format!("{p}.quantum.giambelli"), report);
    let syms = m.symbols(v);
    identity_checks(&m.ring, &syms, &g.identities, &format!("{p}.quantum.relation"), report);
    for t in &g.tables {
        table_checks(v, m, &syms, t, &format!("{p}.quantum.table.{}", t.name), report);
    }
    // structure constants at q = 0
    let n = diag.vertices().len();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i..n {
            let cl = classical
                .ring
                .mult(&classical.classes[i], &classical.classes[j])
                .map_err(HasseError::from)
                .and_then(|x| classical.basis.expand(&classical.ring, &x));
            let qu = m.ring.mult(&m.classes[i], &m.classes[j]).map_err(HasseError::from).and_then(|x| m.basis.expand(&m.ring, &x));
            match (cl, qu) {
                (Ok(a), Ok(mut b)) => {
                    b.retain(|(qp, _)| *qp == 0);
                    if a != b {
                        bad.push(format!("{}*{}", diag.id(i), diag.id(j)));
                    }
                }
                (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
            }
        }
    }
    report.check(format!("{p}.quantum.degeneration"), "quantum products reduce to classical ones at q=0", bad.is_empty(), bad.join(", "));
}

fn fundamental_class_checks(p: &str, g: &FundamentalClassGolden, report: &mut CheckReport) {
    let base = format!("{p}.fundamental_class");
    let r = g2_fundamental_class();
    let co = r.closed_orbit.render("τ");
    report.compare(format!("{base}.closed_orbit"), format!("c5(Q*(1)) = {}", g.closed_orbit), co.clone(), g.closed_orbit.clone(), co == g.closed_orbit);
    let got: Vec<String> = r.evaluations.iter().map(|(m, x)| format!("{m}:{}", fmt_q(x))).collect();
    let want: Vec<String> = g.evaluations.iter().map(|e| format!("{}:{}", e.partition, e.value)).collect();
    report.compare(
        format!("{base}.evaluations"),
        format!("evaluations on the closed orbit {}", want.join(" ")),
        got.join(" "),
        want.join(" "),
        got == want,
    );
    let cls = r.class.to_string();
    report.compare(format!("{base}.class"), format!("[X] = {}", g.class), cls.clone(), g.class.clone(), cls == g.class);
    let schur = g2_fundamental_class_by_schur();
    report.compare(
        format!("{base}.schur_route"),
        "2σ2(σ1³ − σ1σ2) gives the same class",
        schur.to_string(),
        cls,
        schur == r.class,
    );
    if !g.annihilates.is_empty() {
        let ctx = r.class.ctx();
        let combo: Result<SchubertCycle, String> = g.annihilates.iter().try_fold(SchubertCycle::zero(ctx), |acc, (lam, c)| {
            let lam: Partition = lam.parse().map_err(|e: crate::symfunc::SymError| e.to_string())?;
            let c = parse_q(c).ok_or_else(|| format!("bad coefficient {c:?}"))?;
            let cls = SchubertCycle::class(ctx, lam).map_err(|e| e.to_string())?;
            acc.add(&cls.scale(&c)).map_err(|e| e.to_string())
        });
        let id = format!("{base}.annihilates");
        match combo {
            Ok(x) => {
                let summary = format!("[X]·({}) = 0", x);
                match grass_mult(&r.class, &x) {
                    Ok(prod) => report.compare(id, summary, prod.to_string(), "0".into(), prod.is_zero()),
                    Err(e) => report.error(id, summary, e.to_string()),
                }
            }
            Err(e) => report.error(id, "[X] annihilates a Schubert combination", e),
        }
    }
}

/// Writes each γ-class appearing in `names` as a polynomial in the ring
/// generators, using the restriction of the generators.
fn spinor_generator_expressions(
    ring: &GradedRing,
    restriction: &BTreeMap<String, String>,
    wanted: &[&str],
) -> Result<BTreeMap<String, Poly>, String> {
    let names = ring.generator_names();
    let weights = ring.presentation().weights();
    let images: Vec<SpinorCycle> = names
        .iter()
        .map(|n| restriction.get(*n).ok_or_else(|| format!("no restriction for generator {n}")).and_then(|t| eval_spinor(t)))
        .collect::<Result<_, _>>()?;
    let mut out = BTreeMap::new();
    for w in wanted {
        let lam = spinor_partition(w)?;
        let d = lam.weight();
        let monos = monomials_of_degree(&weights, d);
        let targets = StrictPartition::all_of_weight(d);
        let targets: Vec<StrictPartition> = targets.into_iter().filter(|t| t.parts().iter().all(|&x| x <= crate::schubert::SPINOR_MAX_PART)).collect();
        let cols: Vec<SpinorCycle> = monos
            .iter()
            .map(|e| {
                e.iter().zip(&images).fold(SpinorCycle::unit(), |acc, (k, img)| spinor_mult(&acc, &img.pow(*k)))
            })
            .collect();
        let a: Vec<Vec<Q>> = targets.iter().map(|t| cols.iter().map(|c| c.coeff(t)).collect()).collect();
        let b: Vec<Vec<Q>> = targets.iter().map(|t| vec![if *t == lam { Q::one() } else { Q::zero() }]).collect();
        let x = solve_unique(&a, &b, monos.len()).map_err(|e| format!("cannot express {w} through the generators: {e:?}"))?;
        let mut poly = Poly::zero(names.len());
        for (e, c) in monos.iter().zip(&x) {
            poly.add_term(e.clone(), c[0].clone());
        }
        out.insert(w.to_string(), poly);
    }
    Ok(out)
}

fn spinor_checks(v: &Variety, m: &Model, sp: &SpinorData, report: &mut CheckReport) {
    let p = &v.spec.name;
    let base = format!("{p}.spinor");
    for i in &sp.identities {
        let id = format!("{base}.{}", i.id);
        match (eval_spinor(&i.lhs), eval_spinor(&i.rhs)) {
            (Ok(l), Ok(r)) => report.compare(id, i.summary(), l.to_string(), r.to_string(), l == r),
            (Err(e), _) | (_, Err(e)) => report.error(id, i.summary(), e),
        }
    }
    let n = &v.spec.normalization;
    if let Some(img) = sp.restriction.get(&n.generator) {
        let id = format!("{base}.degree");
        let summary = format!("∫ ({})^{} over the spinor variety = ∫ {}^{} = {}", pretty_expr(img, false), n.exponent + 1, n.generator, n.exponent, fmt_q(&n.value));
        match eval_spinor(img).map(|x| x.pow(n.exponent + 1)).and_then(|x| spinor_integrate(&x).map_err(|e| e.to_string())) {
            Ok(val) => report.compare(id, summary, fmt_q(&val), fmt_q(&n.value), val == n.value),
            Err(e) => report.error(id, summary, e),
        }
    }
    let ring = &m.ring;
    let rel = match parse_expr(&sp.relation) {
        Ok(e) => e,
        Err(e) => {
            report.error(format!("{base}.relation"), "restricted spinor relation", e.to_string());
            return;
        }
    };
    let mut wanted: Vec<&str> = rel.identifiers();
    for (k, t) in &sp.restriction {
        if ring.presentation().generator_index(k).is_none() {
            wanted.push(t.as_str());
        }
    }
    wanted.sort();
    wanted.dedup();
    let exprs = match spinor_generator_expressions(ring, &sp.restriction, &wanted) {
        Ok(x) => x,
        Err(e) => {
            report.error(format!("{base}.relation"), "restricted spinor relation", e);
            return;
        }
    };
    let names = ring.generator_names();
    for (w, poly) in &exprs {
        report.pass(
            format!("{base}.restriction.{w}"),
            format!("{} restricts to {}", display_name(w, false), pretty_expr(&poly.display_with(&names), false)),
            "",
        );
    }
    let restricted = rel.eval(&mut Substitute { nvars: names.len(), map: &exprs });
    let expected = parse_poly(&sp.restricts_to, &names).and_then(|e| e.to_poly(&names));
    let summary = format!("{} restricts to {}", pretty_expr(&sp.relation, false), pretty_expr(&sp.restricts_to, false));
    match (restricted, expected) {
        (Ok(r), Ok(e)) => {
            report.compare(format!("{base}.relation.identity"), summary, r.display_with(&names), e.display_with(&names), r == e);
            match ring.normal_form(&r) {
                Ok(nf) => report.compare(
                    format!("{base}.relation.vanishes"),
                    "the restricted relation is zero in the ring",
                    ring.display(&nf),
                    "0".into(),
                    nf.is_zero(),
                ),
                Err(e) => report.error(format!("{base}.relation.vanishes"), "the restricted relation is zero in the ring", e.to_string()),
            }
        }
        (Err(e), _) => report.error(format!("{base}.relation.identity"), summary, e),
        (_, Err(e)) => report.error(format!("{base}.relation.identity"), summary, e.to_string()),
    }
    for (k, t) in &sp.restriction {
        let Ok(vi) = v.diagram.vertex_index(k) else { continue };
        let id = format!("{base}.vertex.{k}");
        let summary = format!("{} is the restriction of {}", display_name(k, false), pretty_expr(t, false));
        match exprs.get(t.as_str()).map(|poly| ring.normal_form(poly)) {
            Some(Ok(x)) => report.compare(id, summary, ring.display(&m.classes[vi]), ring.display(&x), m.classes[vi] == x),
            Some(Err(e)) => report.error(id, summary, e.to_string()),
            None => report.error(id, summary, "restriction not computed"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        let g2 = builtin("g2").unwrap();
        assert_eq!((g2.dimension, g2.index), (7, 4));
        let s = builtin("spin7").unwrap();
        assert_eq!((s.dimension, s.index), (9, 7));
        assert_eq!(builtin("f4"), Err(CatalogError::UnknownVariety("f4".into())));
    }

    #[test]
    fn q_degree_must_match_index() {
        let doc = G2_DOCUMENT.replace("{ \"name\": \"q\", \"degree\": 4 }", "{ \"name\": \"q\", \"degree\": 5 }");
        assert!(matches!(load_spec(&doc), Err(CatalogError::InvariantViolation(_))));
    }
}
