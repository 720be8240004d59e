//! The twenty classes and families of (2,2)-dimensional complex Lie superalgebras,
//! the graph nodes built from them, the witness database and distinctness checks.

mod distinct;
mod plan;
mod table1;
mod table2;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::degeneration::{parse_witnesses, Witness, WitnessStatus};
use crate::exactnum::{parse_expr, Env, Expr, GaussianRational, RatFun, TMode};
use crate::superalg::SuperAlgebra;
use crate::superalg::{parse_algebra_files, AlgebraFile};

pub use distinct::{
    distinctness_report, fingerprint, monomial_iso_search, DistinctnessReport, Fingerprint, PairVerdict,
};
pub use plan::{SpecializationPlan, SPECIAL_VALUES};
pub use table1::{
    check_table1, ls14_delta_check, table1_rows, DeltaCheck, IjExpectation, Table1Outcome, Table1Row, Table1Sample,
};
pub use table2::{
    certify_table2, table2_rows, CitedDerivation, FunctorIdentification, Table2Outcome, Table2Row, Table2Sample,
};

type Q = GaussianRational;

const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");
const WITNESS_TEXT: &str = include_str!("../../data/witnesses.txt");
const ISO_TEXT: &str = include_str!("../../data/isomorphisms.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("{name} takes {expected} parameters, got {got}")]
    ArityMismatch { name: String, expected: usize, got: usize },
    #[error("{node}: excluded parameter value ({condition})")]
    ExcludedParameter { node: String, condition: String },
    #[error("{0}")]
    Invalid(String),
}

/// A recorded equivalence between members of one family, with the witness that proves it.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoCondition {
    pub description: String,
    pub witness_id: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub template: AlgebraFile,
    pub iso_conditions: Vec<IsoCondition>,
}

impl CatalogEntry {
    pub fn params(&self) -> &[String] {
        &self.template.params
    }
}

/// A vertex of the degeneration graph: a whole family, a stratum of it, or one orbit.
#[derive(Debug, Clone)]
pub struct Node {
    pub id: String,
    pub entry: String,
    /// Free parameters of the stratum.
    pub free: Vec<String>,
    /// Entry parameters as expressions in `free`.
    pub params: Vec<Expr>,
    /// Pairs `(lhs, rhs)` meaning `lhs ≠ rhs` on this stratum.
    pub exclusions: Vec<(Expr, Expr)>,
}

impl Node {
    pub fn is_orbit(&self) -> bool {
        self.free.is_empty()
    }

    pub fn param_values(&self, values: &[Q]) -> Result<Vec<Q>, CatalogError> {
        if values.len() != self.free.len() {
            return Err(CatalogError::ArityMismatch {
                name: self.id.clone(),
                expected: self.free.len(),
                got: values.len(),
            });
        }
        let mut env = Env { t_mode: TMode::Forbidden, ..Env::default() };
        for (n, v) in self.free.iter().zip(values) {
            env.params.insert(n.clone(), RatFun::constant(v.clone()));
        }
        let eval = |e: &Expr| -> Result<Q, CatalogError> {
            e.eval_scalar(&env)
                .ok()
                .and_then(|v| v.as_constant())
                .ok_or_else(|| CatalogError::Invalid(format!("{}: cannot evaluate {}", self.id, e)))
        };
        for (l, r) in &self.exclusions {
            if eval(l)? == eval(r)? {
                return Err(CatalogError::ExcludedParameter {
                    node: self.id.clone(),
                    condition: format!("{} ≠ {}", l, r),
                });
            }
        }
        self.params.iter().map(eval).collect()
    }

    pub fn instantiate(&self, catalog: &Catalog, values: &[Q]) -> Result<SuperAlgebra<Q>, CatalogError> {
        let p = self.param_values(values)?;
        Ok(catalog.instantiate(&self.entry, &p)?.with_label(self.label(values)))
    }

    pub fn label(&self, values: &[Q]) -> String {
        if self.is_orbit() || values.is_empty() {
            return self.id.clone();
        }
        let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        format!("{}[{}]", self.entry, vals.join(","))
    }
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    nodes: Vec<Node>,
    witnesses: Vec<Witness>,
    isomorphisms: Vec<Witness>,
}

fn node(id: &str, entry: &str, free: &[&str], params: &[&str], exclusions: &[(&str, &str)]) -> Node {
    let p = |s: &str| parse_expr(s).expect("built-in node expression");
    Node {
        id: id.to_string(),
        entry: entry.to_string(),
        free: free.iter().map(|s| s.to_string()).collect(),
        params: params.iter().map(|s| p(s)).collect(),
        exclusions: exclusions.iter().map(|(l, r)| (p(l), p(r))).collect(),
    }
}

fn builtin_nodes() -> Vec<Node> {
    let mut out = Vec::new();
    for k in [0, 1, 2, 3, 4, 5, 7, 8, 9, 10, 11, 12, 17, 19] {
        let id = format!("LS{}", k);
        out.push(node(&id, &id, &[], &[], &[]));
    }
    out.push(node("LS6", "LS6", &["a"], &["a"], &[("a", "1")]));
    out.push(node("LS6^1", "LS6", &[], &["1"], &[]));
    out.push(node("LS13", "LS13", &["a", "b"], &["a", "b"], &[("a", "b")]));
    out.push(node("LS13^aa", "LS13", &["a"], &["a", "a"], &[]));
    out.push(node("LS14", "LS14", &["a"], &["a"], &[]));
    out.push(node("LS15", "LS15", &["a"], &["a"], &[("a", "-1/2")]));
    out.push(node("LS15^-1/2", "LS15", &[], &["-1/2"], &[]));
    out.push(node("LS16", "LS16", &["a"], &["a"], &[]));
    out.push(node("LS18", "LS18", &["a"], &["a"], &[]));
    out
}

impl Catalog {
    /// The built-in catalog, parsed once.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_texts(CATALOG_TEXT, WITNESS_TEXT, ISO_TEXT).expect("built-in catalog data"))
    }

    pub fn from_texts(catalog: &str, witnesses: &str, isos: &str) -> Result<Catalog, CatalogError> {
        let files = parse_algebra_files(catalog).map_err(|e| CatalogError::Invalid(e.to_string()))?;
        let isomorphisms = parse_witnesses(isos).map_err(|e| CatalogError::Invalid(e.to_string()))?;
        let entries = files
            .into_iter()
            .map(|template| {
                let iso_conditions = isomorphisms
                    .iter()
                    .filter(|w| w.source.name == template.name && w.status == WitnessStatus::Isomorphism)
                    .filter_map(|w| {
                        let d = w.note.clone()?;
                        Some(IsoCondition { description: d, witness_id: w.id.clone() })
                    })
                    .collect();
                CatalogEntry { name: template.name.clone(), template, iso_conditions }
            })
            .collect();
        let witnesses = parse_witnesses(witnesses).map_err(|e| CatalogError::Invalid(e.to_string()))?;
        Ok(Catalog { entries, nodes: builtin_nodes(), witnesses, isomorphisms })
    }

    /// No entries, nodes or witnesses.
    pub fn empty() -> Catalog {
        Catalog { entries: Vec::new(), nodes: Vec::new(), witnesses: Vec::new(), isomorphisms: Vec::new() }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
    }

    pub fn instantiate(&self, name: &str, params: &[Q]) -> Result<SuperAlgebra<Q>, CatalogError> {
        let e = self.entry(name)?;
        if params.len() != e.params().len() {
            return Err(CatalogError::ArityMismatch {
                name: name.to_string(),
                expected: e.params().len(),
                got: params.len(),
            });
        }
        let a = e.template.instantiate(params).map_err(CatalogError::Invalid)?;
        let label = if params.is_empty() {
            name.to_string()
        } else {
            format!("{}[{}]", name, params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
        };
        Ok(a.with_label(label))
    }

    /// Instantiates a reference such as `LS13[2,-1/2]` or `LS19`.
    pub fn instantiate_ref(&self, text: &str) -> Result<SuperAlgebra<Q>, CatalogError> {
        let r = crate::degeneration::EntryRef::parse(text).map_err(CatalogError::Invalid)?;
        let env = Env { t_mode: TMode::Forbidden, ..Env::default() };
        let values = r
            .params
            .iter()
            .map(|e| {
                e.eval_scalar(&env)
                    .ok()
                    .and_then(|v| v.as_constant())
                    .ok_or_else(|| CatalogError::Invalid(format!("{}: parameter {} is not a number", text, e)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.instantiate(&r.name, &values)?.with_label(text.trim()))
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn witness(&self, id: &str) -> Option<&Witness> {
        self.witnesses.iter().chain(&self.isomorphisms).find(|w| w.id == id)
    }

    pub fn isomorphisms(&self) -> &[Witness] {
        &self.isomorphisms
    }

    /// Entry parameters of each iso condition's image, keyed by condition witness id.
    pub fn iso_images(&self, name: &str, params: &[Q]) -> Vec<(String, Vec<Q>)> {
        let Ok(entry) = self.entry(name) else { return Vec::new() };
        entry
            .iso_conditions
            .iter()
            .filter_map(|c| {
                let w = self.witness(&c.witness_id)?;
                let free = source_assignment(w, params)?;
                let mut env = Env { t_mode: TMode::Forbidden, ..Env::default() };
                for (k, v) in &free {
                    env.params.insert(k.clone(), RatFun::constant(v.clone()));
                }
                let image = w
                    .target
                    .params
                    .iter()
                    .map(|e| e.eval_scalar(&env).ok().and_then(|v| v.as_constant()))
                    .collect::<Option<Vec<_>>>()?;
                Some((c.witness_id.clone(), image))
            })
            .collect()
    }
}

/// Values for a witness's free symbols when its source parameters are plain symbols.
pub fn source_assignment(w: &Witness, params: &[Q]) -> Option<BTreeMap<String, Q>> {
    if w.source.params.len() != params.len() {
        return None;
    }
    let mut out = BTreeMap::new();
    for (e, v) in w.source.params.iter().zip(params) {
        match e {
            Expr::Ident(n) => {
                out.insert(n.clone(), v.clone());
            }
            _ => return None,
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::verify_witness;
    use crate::invariants::orbit_dim;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn twenty_entries_and_twenty_three_nodes() {
        let c = Catalog::builtin();
        assert_eq!(c.entries().len(), 20);
        assert_eq!(c.nodes().len(), 23);
        for (k, e) in c.entries().iter().enumerate() {
            assert_eq!(e.name, format!("LS{}", k));
        }
    }

    #[test]
    fn instantiate_examples() {
        let c = Catalog::builtin();
        assert!(c.instantiate("LS19", &[]).unwrap().validate().is_valid());
        assert!(c.instantiate("LS0", &[]).unwrap().is_zero());
        assert_eq!(orbit_dim(&c.instantiate("LS13", &[q(2), q(2)]).unwrap()), 2);
        assert!(matches!(c.instantiate("LS13", &[q(2)]), Err(CatalogError::ArityMismatch { .. })));
        assert!(matches!(c.instantiate("LS20", &[]), Err(CatalogError::UnknownEntry(_))));
    }

    #[test]
    fn node_exclusions_are_enforced() {
        let c = Catalog::builtin();
        let n = c.node("LS15").unwrap();
        let e = n.instantiate(c, &[Q::ratio(-1, 2)]).unwrap_err();
        assert!(matches!(e, CatalogError::ExcludedParameter { .. }));
        assert!(n.instantiate(c, &[q(3)]).is_ok());
        assert!(c.node("LS13").unwrap().instantiate(c, &[q(2), q(2)]).is_err());
    }

    #[test]
    fn iso_conditions_have_verified_witnesses() {
        let c = Catalog::builtin();
        assert_eq!(c.entry("LS13").unwrap().iso_conditions.len(), 1);
        assert_eq!(c.entry("LS14").unwrap().iso_conditions.len(), 1);
        assert!(c.entry("LS6").unwrap().iso_conditions.is_empty());
        let free = [("a".to_string(), q(2)), ("b".to_string(), q(5))].into_iter().collect();
        let w = c.witness(&c.entry("LS13").unwrap().iso_conditions[0].witness_id).unwrap();
        verify_witness(w, c, &free).unwrap();
        let images = c.iso_images("LS14", &[q(1)]);
        assert_eq!(images[0].1, vec![q(-2)]);
    }
}
