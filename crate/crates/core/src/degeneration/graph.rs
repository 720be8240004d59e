//! The degeneration digraph over catalog nodes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use super::witness::{trivial_scaling_witness, verify_change, verify_witness, WitnessError};
use crate::catalog::{Catalog, Node, SpecializationPlan};
use crate::exactnum::{GaussianRational, RatFun};
use crate::invariants::{certify, Analyzed, CertifierConfig, NondegenerationCertificate, DEFAULT_IJ_SAMPLES};
use crate::superalg::SuperAlgebra;

type Q = GaussianRational;

/// Which members of the target node a family-limit edge reaches.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "scope", content = "text", rename_all = "snake_case")]
pub enum TargetScope {
    Orbit,
    Covered(String),
    Special(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeKind {
    /// Every member of the source reaches the (single-orbit) target.
    AllMembers,
    /// Each target member is reached; verified at sampled parameters.
    FamilySweep { covered: String },
    /// Some members of the target family are reached.
    SpecialMember { constraint: String },
    /// The source parameter moves with `t`; only the family closure reaches the target.
    FamilyLimit { binding: String, scope: TargetScope },
}

impl EdgeKind {
    fn scope(&self) -> TargetScope {
        match self {
            EdgeKind::AllMembers => TargetScope::Orbit,
            EdgeKind::FamilySweep { covered } => TargetScope::Covered(covered.clone()),
            EdgeKind::SpecialMember { constraint } => TargetScope::Special(constraint.clone()),
            EdgeKind::FamilyLimit { scope, .. } => scope.clone(),
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self, EdgeKind::FamilyLimit { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", content = "via", rename_all = "snake_case")]
pub enum Provenance {
    WitnessVerified(String),
    TrivialScaling,
    TransitiveVia(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DegenerationEdge {
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
    /// The source stratum when only some source members are used.
    pub source_constraint: Option<String>,
    pub provenance: Provenance,
}

impl DegenerationEdge {
    fn key(&self) -> (String, String, String, Option<String>) {
        let k = match &self.kind {
            EdgeKind::AllMembers => "all".to_string(),
            EdgeKind::FamilySweep { .. } => "sweep".to_string(),
            EdgeKind::SpecialMember { constraint } => format!("special:{}", constraint),
            EdgeKind::FamilyLimit { scope, .. } => format!("limit:{:?}", scope),
        };
        (self.from.clone(), self.to.clone(), k, self.source_constraint.clone())
    }

    /// Reaches every generic member of the target.
    pub fn covers_target(&self, target_is_orbit: bool) -> bool {
        target_is_orbit || !matches!(self.kind.scope(), TargetScope::Special(_))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge {from} -> {to} contradicts certificate: {reason}")]
    InconsistentGraph { from: String, to: String, reason: String },
    #[error("node {0} has no valid sample")]
    BadNode(String),
    #[error("witness {id} names unknown node {node}")]
    UnknownNode { id: String, node: String },
    #[error("closure is not antisymmetric: {0} <-> {1}")]
    Cycle(String, String),
}

#[derive(Debug, Clone)]
pub struct GraphConfig {
    pub plan: SpecializationPlan,
    /// Use witnesses whose source parameter depends on `t`.
    pub include_family_limits: bool,
    /// Compute certificates for pairs without an edge.
    pub certify: bool,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig { plan: SpecializationPlan::default(), include_family_limits: true, certify: true }
    }
}

/// Verification outcome of one stored witness.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessOutcome {
    pub id: String,
    pub row: Option<String>,
    pub expected_success: bool,
    /// `None` when every sample verified.
    pub failure: Option<String>,
    pub samples: usize,
}

pub struct DegenerationGraph {
    pub nodes: Vec<Node>,
    pub samples: BTreeMap<String, Vec<SuperAlgebra<Q>>>,
    pub orbit_dims: BTreeMap<String, usize>,
    /// Orbit dimension plus the number of free parameters.
    pub closure_dims: BTreeMap<String, usize>,
    /// Witness and trivial edges together with everything composable from them.
    pub edges: Vec<DegenerationEdge>,
    pub certificates: BTreeMap<(String, String), NondegenerationCertificate>,
    pub witness_outcomes: Vec<WitnessOutcome>,
}

fn edge_kind(spec_kind: &str, text: &str, target_orbit: bool) -> EdgeKind {
    match spec_kind {
        "all" => EdgeKind::AllMembers,
        "sweep" => EdgeKind::FamilySweep { covered: text.to_string() },
        "special" => EdgeKind::SpecialMember { constraint: text.to_string() },
        "limit-sweep" => EdgeKind::FamilyLimit { binding: text.to_string(), scope: TargetScope::Covered("all".into()) },
        _ if target_orbit => EdgeKind::FamilyLimit { binding: text.to_string(), scope: TargetScope::Orbit },
        _ => EdgeKind::FamilyLimit { binding: text.to_string(), scope: TargetScope::Special(text.to_string()) },
    }
}

fn compose(e1: &DegenerationEdge, e2: &DegenerationEdge, orbit: &BTreeMap<String, bool>) -> Option<DegenerationEdge> {
    if e1.to != e2.from || e1.from == e2.to {
        return None;
    }
    let mid_orbit = orbit[&e1.to];
    let e1_covers = e1.covers_target(mid_orbit);
    if let Some(c) = &e2.source_constraint {
        let matches = matches!(&e1.kind.scope(), TargetScope::Special(s) if s == c);
        if !(e1_covers || matches) {
            return None;
        }
    }
    let scope = if orbit[&e2.to] {
        TargetScope::Orbit
    } else {
        match e2.kind.scope() {
            TargetScope::Covered(c) if e1_covers => TargetScope::Covered(c),
            TargetScope::Covered(_) => match e1.kind.scope() {
                TargetScope::Special(s) => TargetScope::Special(format!("image of {} in {}", s, e1.to)),
                _ => unreachable!("non-covering edges are special"),
            },
            other => other,
        }
    };
    let kind = match (&e1.kind, &e2.kind) {
        (EdgeKind::FamilyLimit { binding: a, .. }, EdgeKind::FamilyLimit { binding: b, .. }) => {
            EdgeKind::FamilyLimit { binding: format!("{}; {}", a, b), scope }
        }
        (EdgeKind::FamilyLimit { binding, .. }, _) | (_, EdgeKind::FamilyLimit { binding, .. }) => {
            EdgeKind::FamilyLimit { binding: binding.clone(), scope }
        }
        _ => match scope {
            TargetScope::Orbit => EdgeKind::AllMembers,
            TargetScope::Covered(c) => EdgeKind::FamilySweep { covered: c },
            TargetScope::Special(c) => EdgeKind::SpecialMember { constraint: c },
        },
    };
    Some(DegenerationEdge {
        from: e1.from.clone(),
        to: e2.to.clone(),
        kind,
        source_constraint: e1.source_constraint.clone(),
        provenance: Provenance::TransitiveVia(e1.to.clone()),
    })
}

/// Closes `edges` under composition. Earlier edges win on duplicate keys.
pub fn transitive_closure(edges: &[DegenerationEdge], orbit: &BTreeMap<String, bool>) -> Vec<DegenerationEdge> {
    let mut out: Vec<DegenerationEdge> = Vec::new();
    let mut keys = BTreeSet::new();
    for e in edges {
        if keys.insert(e.key()) {
            out.push(e.clone());
        }
    }
    let mut start = 0;
    loop {
        let mut fresh = Vec::new();
        let n = out.len();
        for i in 0..n {
            for j in 0..n {
                if i < start && j < start {
                    continue;
                }
                if let Some(e) = compose(&out[i], &out[j], orbit) {
                    if keys.insert(e.key()) {
                        fresh.push(e);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return out;
        }
        start = n;
        out.extend(fresh);
    }
}

fn sample_node(catalog: &Catalog, node: &Node, plan: &SpecializationPlan) -> Result<Vec<SuperAlgebra<Q>>, GraphError> {
    let assignments = plan.assignments(&node.id, &node.free);
    let out: Vec<_> = assignments
        .iter()
        .filter_map(|a| {
            let vals: Vec<Q> = node.free.iter().map(|f| a[f].clone()).collect();
            node.instantiate(catalog, &vals).ok()
        })
        .collect();
    if out.is_empty() {
        return Err(GraphError::BadNode(node.id.clone()));
    }
    Ok(out)
}

/// Verifies a witness at the plan's samples for its free symbols.
pub fn verify_at_samples(
    w: &super::Witness,
    catalog: &Catalog,
    plan: &SpecializationPlan,
) -> (usize, Result<(), WitnessError>) {
    let free = w.free_symbols();
    let assignments = plan.assignments(&w.id, &free);
    for a in &assignments {
        if let Err(e) = verify_witness(w, catalog, a) {
            return (assignments.len(), Err(e));
        }
    }
    (assignments.len(), Ok(()))
}

/// Verifies stored witnesses, adds trivial scalings to LS0, closes the edge set, and
/// certifies every ordered pair left without an edge.
pub fn build_graph(catalog: &Catalog, cfg: &GraphConfig) -> Result<DegenerationGraph, GraphError> {
    let nodes: Vec<Node> = catalog.nodes().to_vec();
    let mut samples = BTreeMap::new();
    let mut orbit_dims = BTreeMap::new();
    let mut closure_dims = BTreeMap::new();
    let orbit: BTreeMap<String, bool> = nodes.iter().map(|n| (n.id.clone(), n.is_orbit())).collect();
    for n in &nodes {
        let s = sample_node(catalog, n, &cfg.plan)?;
        let od = crate::invariants::orbit_dim(&s[0]);
        orbit_dims.insert(n.id.clone(), od);
        closure_dims.insert(n.id.clone(), od + n.free.len());
        samples.insert(n.id.clone(), s);
    }

    let mut base = Vec::new();
    let mut witness_outcomes = Vec::new();
    for w in catalog.witnesses() {
        let limit = w.edge.as_ref().is_some_and(|e| e.kind.starts_with("limit"));
        if limit && !cfg.include_family_limits {
            continue;
        }
        let (count, res) = verify_at_samples(w, catalog, &cfg.plan);
        witness_outcomes.push(WitnessOutcome {
            id: w.id.clone(),
            row: w.row.clone(),
            expected_success: w.status.expects_success(),
            failure: res.as_ref().err().map(|e| e.to_string()),
            samples: count,
        });
        let (Some(spec), Ok(())) = (&w.edge, res) else { continue };
        for id in [&spec.from, &spec.to] {
            if !orbit.contains_key(id) {
                return Err(GraphError::UnknownNode { id: w.id.clone(), node: id.clone() });
            }
        }
        base.push(DegenerationEdge {
            from: spec.from.clone(),
            to: spec.to.clone(),
            kind: edge_kind(&spec.kind, &spec.text, orbit[&spec.to]),
            source_constraint: w.source_constraint.clone(),
            provenance: Provenance::WitnessVerified(w.id.clone()),
        });
    }
    if let Some(zero) = samples.get("LS0").map(|s| s[0].clone()) {
        for n in &nodes {
            if n.id == "LS0" {
                continue;
            }
            let a = &samples[&n.id][0];
            let src = a.map(|x| RatFun::constant(x.clone()));
            if verify_change(&src, &trivial_scaling_witness(a.dim()), &zero).is_ok() {
                base.push(DegenerationEdge {
                    from: n.id.clone(),
                    to: "LS0".into(),
                    kind: EdgeKind::AllMembers,
                    source_constraint: None,
                    provenance: Provenance::TrivialScaling,
                });
            }
        }
    }
    let edges = transitive_closure(&base, &orbit);
    for e in &edges {
        if edges.iter().any(|f| f.from == e.to && f.to == e.from && !e.kind.is_limit() && !f.kind.is_limit()) {
            return Err(GraphError::Cycle(e.from.clone(), e.to.clone()));
        }
    }

    let mut graph = DegenerationGraph {
        nodes,
        samples,
        orbit_dims,
        closure_dims,
        edges,
        certificates: BTreeMap::new(),
        witness_outcomes,
    };
    if cfg.certify {
        graph.certify_pairs(cfg)?;
    }
    Ok(graph)
}

fn params_of(a: &SuperAlgebra<Q>) -> Vec<Q> {
    let mut out = Vec::new();
    for i in 0..a.size() {
        for j in 0..a.size() {
            for k in 0..a.size() {
                let c = a.constant(i, j, k);
                if !c.is_zero() && !c.is_real() && !out.contains(c) {
                    out.push(c.clone());
                }
            }
        }
    }
    out
}

impl DegenerationGraph {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.edges.iter().any(|e| e.from == from && e.to == to)
    }

    pub fn edges_between(&self, from: &str, to: &str) -> Vec<&DegenerationEdge> {
        self.edges.iter().filter(|e| e.from == from && e.to == to).collect()
    }

    fn certify_pairs(&mut self, cfg: &GraphConfig) -> Result<(), GraphError> {
        let seed = cfg.plan.seed;
        let analyzed: BTreeMap<&str, Vec<Analyzed>> = self
            .samples
            .iter()
            .map(|(id, s)| {
                (id.as_str(), s.iter().map(|a| Analyzed::new(a.clone(), DEFAULT_IJ_SAMPLES, seed)).collect())
            })
            .collect();
        let mut certs = BTreeMap::new();
        for n in &self.nodes {
            for m in &self.nodes {
                if n.id == m.id {
                    continue;
                }
                let (gs, hs) = (&analyzed[n.id.as_str()], &analyzed[m.id.as_str()]);
                let k = gs.len().max(hs.len());
                let cert_at = |i: usize| {
                    let (g, h) = (&gs[i % gs.len()], &hs[i % hs.len()]);
                    let mut params = params_of(&g.alg);
                    params.extend(params_of(&h.alg));
                    certify(g, h, &CertifierConfig::with_parameters(&params), 1)
                };
                let covering = self.edges.iter().find(|e| {
                    e.from == n.id
                        && e.to == m.id
                        && m.is_orbit()
                        && e.source_constraint.is_none()
                        && !e.kind.is_limit()
                });
                if let Some(e) = covering {
                    for i in 0..k {
                        if let Some(c) = cert_at(i) {
                            if c.is_family_sound() {
                                return Err(GraphError::InconsistentGraph {
                                    from: e.from.clone(),
                                    to: e.to.clone(),
                                    reason: c.human_reason,
                                });
                            }
                        }
                    }
                    continue;
                }
                if self.has_edge(&n.id, &m.id) {
                    continue;
                }
                let all: Option<Vec<_>> = (0..k).map(cert_at).collect();
                if let Some(mut v) = all {
                    let sound = v.iter().position(|c| !c.is_family_sound()).is_none();
                    let c = if sound {
                        v.remove(0)
                    } else {
                        v.into_iter().find(|c| !c.is_family_sound()).expect("present")
                    };
                    certs.insert((n.id.clone(), m.id.clone()), c);
                }
            }
        }
        self.certificates = certs;
        Ok(())
    }
}

/// One reduced edge; `labels` lists constraints when only special members are reached,
/// `source_constraint` the source stratum when only that stratum degenerates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HasseEdge {
    pub from: String,
    pub to: String,
    pub labels: Vec<String>,
    pub source_constraint: Option<String>,
}

impl HasseEdge {
    pub fn label(&self) -> String {
        let mut parts = self.labels.clone();
        if let Some(c) = &self.source_constraint {
            parts.push(format!("from {}", c));
        }
        parts.join(", ")
    }
}

fn node_relation(graph: &DegenerationGraph) -> BTreeSet<(String, String)> {
    graph
        .edges
        .iter()
        .filter(|e| !e.kind.is_limit() && e.from != e.to)
        .map(|e| (e.from.clone(), e.to.clone()))
        .collect()
}

/// Transitive closure of a plain relation.
pub fn close_relation(rel: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut out = rel.clone();
    loop {
        let mut add = Vec::new();
        for (a, b) in &out {
            for (c, d) in out.range((b.clone(), String::new())..) {
                if c != b {
                    break;
                }
                if a != d && !out.contains(&(a.clone(), d.clone())) {
                    add.push((a.clone(), d.clone()));
                }
            }
        }
        if add.is_empty() {
            return out;
        }
        out.extend(add);
    }
}

/// Transitive reduction of the node relation given by non-limit edges.
pub fn hasse_reduction(graph: &DegenerationGraph) -> Vec<HasseEdge> {
    let rel = node_relation(graph);
    let mut out = Vec::new();
    for (a, b) in &rel {
        let implied = rel.iter().any(|(x, c)| x == a && c != b && rel.contains(&(c.clone(), b.clone())));
        if implied {
            continue;
        }
        let between = graph.edges_between(a, b);
        let labels: BTreeSet<String> = if between.iter().any(|e| !matches!(e.kind, EdgeKind::SpecialMember { .. })) {
            BTreeSet::new()
        } else {
            between
                .iter()
                .filter_map(|e| match &e.kind {
                    EdgeKind::SpecialMember { constraint } => Some(constraint.clone()),
                    _ => None,
                })
                .collect()
        };
        let source_constraint = if between.iter().all(|e| e.source_constraint.is_some()) {
            between.first().and_then(|e| e.source_constraint.clone())
        } else {
            None
        };
        out.push(HasseEdge { from: a.clone(), to: b.clone(), labels: labels.into_iter().collect(), source_constraint });
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

impl DegenerationGraph {
    /// Graphviz text of the Hasse reduction; `rigid` nodes are drawn doubled.
    pub fn to_dot(&self, rigid: &BTreeSet<String>) -> String {
        let mut s = String::from("digraph degenerations {\n  rankdir=TB;\n  node [shape=box];\n");
        let mut nodes: Vec<&Node> = self.nodes.iter().collect();
        nodes.sort_by(|a, b| self.closure_dims[&b.id].cmp(&self.closure_dims[&a.id]).then(a.id.cmp(&b.id)));
        for n in nodes {
            let style = if rigid.contains(&n.id) { ", peripheries=2, style=bold" } else { "" };
            let _ = writeln!(s, "  {} [label={}{}];", dot_id(&n.id), dot_id(&n.id), style);
        }
        for e in hasse_reduction(self) {
            let label = e.label();
            if label.is_empty() {
                let _ = writeln!(s, "  {} -> {};", dot_id(&e.from), dot_id(&e.to));
            } else {
                let _ = writeln!(s, "  {} -> {} [label={}];", dot_id(&e.from), dot_id(&e.to), dot_id(&label));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Why a node `M` cannot dominate a candidate component `N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "by", rename_all = "snake_case")]
pub enum Exclusion {
    /// `closure dim(M) ≤ closure dim(N)`.
    Dimension {
        other: usize,
        own: usize,
    },
    /// `N` already reaches `M`.
    ReverseEdge,
    Certificate {
        rule: String,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Justification {
    /// `"rigid orbit"` or `"family"`.
    pub kind: String,
    pub exclusions: Vec<(String, Exclusion)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub node: String,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
    /// Dominated node and the edge that dominates it.
    pub domination: BTreeMap<String, DegenerationEdge>,
    /// `(N, M)` where nothing rules out `M` dominating the undominated node `N`.
    pub inconclusive: Vec<(String, String)>,
}

impl ComponentReport {
    pub fn component_ids(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.node.as_str()).collect()
    }

    pub fn is_conclusive(&self) -> bool {
        self.inconclusive.is_empty()
    }
}

/// Undominated nodes with exclusion records against every other node.
pub fn components(graph: &DegenerationGraph) -> ComponentReport {
    let mut domination = BTreeMap::new();
    for n in &graph.nodes {
        let dom = graph
            .edges
            .iter()
            .filter(|e| e.to == n.id && e.from != n.id && e.covers_target(n.is_orbit()))
            .min_by_key(|e| (matches!(e.provenance, Provenance::TransitiveVia(_)), e.from.clone()));
        if let Some(e) = dom {
            domination.insert(n.id.clone(), e.clone());
        }
    }
    let mut comps = Vec::new();
    let mut inconclusive = Vec::new();
    for n in &graph.nodes {
        if domination.contains_key(&n.id) {
            continue;
        }
        let own = graph.closure_dims[&n.id];
        let mut exclusions = Vec::new();
        let mut ok = true;
        for m in &graph.nodes {
            if m.id == n.id {
                continue;
            }
            let other = graph.closure_dims[&m.id];
            let ex = if other <= own {
                Some(Exclusion::Dimension { other, own })
            } else if graph.edges.iter().any(|e| e.from == n.id && e.to == m.id && e.covers_target(m.is_orbit())) {
                Some(Exclusion::ReverseEdge)
            } else {
                graph
                    .certificates
                    .get(&(m.id.clone(), n.id.clone()))
                    .filter(|c| c.is_family_sound())
                    .map(|c| Exclusion::Certificate { rule: c.rule_name(), reason: c.human_reason.clone() })
            };
            match ex {
                Some(e) => exclusions.push((m.id.clone(), e)),
                None => {
                    ok = false;
                    inconclusive.push((n.id.clone(), m.id.clone()));
                }
            }
        }
        if ok {
            let kind = if n.is_orbit() { "rigid orbit" } else { "family" };
            comps
                .push(Component { node: n.id.clone(), justification: Justification { kind: kind.into(), exclusions } });
        }
    }
    ComponentReport { components: comps, domination, inconclusive }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn graph() -> &'static DegenerationGraph {
        static G: OnceLock<DegenerationGraph> = OnceLock::new();
        G.get_or_init(|| build_graph(Catalog::builtin(), &GraphConfig::default()).expect("consistent"))
    }

    fn edge(from: &str, to: &str, kind: EdgeKind, src: Option<&str>) -> DegenerationEdge {
        DegenerationEdge {
            from: from.into(),
            to: to.into(),
            kind,
            source_constraint: src.map(String::from),
            provenance: Provenance::TrivialScaling,
        }
    }

    #[test]
    fn composition_rules() {
        let orbit: BTreeMap<String, bool> =
            [("A", false), ("B", false), ("C", false), ("O", true)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let special = edge("A", "B", EdgeKind::SpecialMember { constraint: "α = 0".into() }, None);
        let sweep = edge("B", "C", EdgeKind::FamilySweep { covered: "all".into() }, None);
        let e = compose(&special, &sweep, &orbit).unwrap();
        assert_eq!(e.kind, EdgeKind::SpecialMember { constraint: "image of α = 0 in B".into() });
        let restricted = edge("B", "O", EdgeKind::AllMembers, Some("α = 1"));
        assert!(compose(&special, &restricted, &orbit).is_none());
        let restricted = edge("B", "O", EdgeKind::AllMembers, Some("α = 0"));
        assert_eq!(compose(&special, &restricted, &orbit).unwrap().kind, EdgeKind::AllMembers);
        let closed = transitive_closure(&[special, sweep.clone(), restricted], &orbit);
        assert_eq!(closed.len(), 5);
        assert_eq!(transitive_closure(&closed, &orbit).len(), closed.len());
    }

    #[test]
    fn closure_contains_expected_edges() {
        let g = graph();
        assert!(g.has_edge("LS19", "LS3"));
        for n in &g.nodes {
            if n.id != "LS0" {
                assert!(g.has_edge(&n.id, "LS0"), "{}", n.id);
            }
        }
        assert!(g.witness_outcomes.iter().all(|w| w.failure.is_none() == w.expected_success), "witness verdicts");
        let c = &g.certificates[&("LS5".to_string(), "LS1".to_string())];
        assert_eq!(c.rule_name(), "GammaVanishing");
        assert!(!g.has_edge("LS1", "LS19"));
    }

    #[test]
    fn hasse_examples() {
        let h = hasse_reduction(graph());
        let from = |n: &str| h.iter().filter(|e| e.from == n).map(|e| e.to.as_str()).collect::<Vec<_>>();
        assert_eq!(from("LS1"), vec!["LS4"]);
        assert!(!from("LS19").contains(&"LS3"));
        let e = h.iter().find(|e| e.from == "LS7" && e.to == "LS6").unwrap();
        assert_eq!(e.label(), "α = -1");
        let rel = node_relation(graph());
        let reduced: BTreeSet<_> = h.iter().map(|e| (e.from.clone(), e.to.clone())).collect();
        assert_eq!(close_relation(&reduced), close_relation(&rel));
        assert_eq!(close_relation(&close_relation(&rel)), close_relation(&rel));
        assert!(graph().to_dot(&BTreeSet::new()).contains("\"LS7\" -> \"LS6\" [label=\"α = -1\"];"));
    }

    #[test]
    fn seven_components() {
        let r = components(graph());
        assert!(r.is_conclusive());
        let mut ids = r.component_ids();
        ids.sort();
        assert_eq!(ids, vec!["LS1", "LS13", "LS14", "LS15", "LS18", "LS19", "LS5"]);
        assert!(r.domination.contains_key("LS17"));
        let ls5 = r.components.iter().find(|c| c.node == "LS5").unwrap();
        assert_eq!(ls5.justification.kind, "rigid orbit");
        assert_eq!(ls5.justification.exclusions.len(), 22);
    }
}
