//! Non-degeneration rows of the classification, split into one target per row.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Catalog, SpecializationPlan};
use crate::degeneration::{BasisChange, EntryRef};
use crate::exactnum::{parse_expr, Env, Expr, GaussianRational, RatFun, TMode};
use crate::invariants::{certify, Analyzed, CertifierConfig, DerivationQuery, NondegenerationCertificate};
use crate::linalg::Matrix;
use crate::superalg::{Functor, SuperAlgebra};

type Q = GaussianRational;

/// A derivation-space dimension cited as the reason for a row.
#[derive(Debug, Clone, PartialEq)]
pub struct CitedDerivation {
    pub triple: [Expr; 3],
    pub parity: u8,
    pub source_dim: Option<usize>,
    pub target_dim: Option<usize>,
}

impl CitedDerivation {
    pub fn query(&self, values: &BTreeMap<String, Q>) -> Result<DerivationQuery, String> {
        let mut env = Env { t_mode: TMode::Forbidden, ..Env::default() };
        for (k, v) in values {
            env.params.insert(k.clone(), RatFun::constant(v.clone()));
        }
        let ev = |e: &Expr| e.eval_scalar(&env).and_then(|v| v.as_constant().ok_or_else(|| "not constant".to_string()));
        Ok(DerivationQuery::new(ev(&self.triple[0])?, ev(&self.triple[1])?, ev(&self.triple[2])?, self.parity))
    }
}

/// `which(g) ≅ image`, optionally after swapping the two odd basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctorIdentification {
    pub which: Functor,
    pub image: EntryRef,
    pub swap_odd: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub id: usize,
    pub source: EntryRef,
    pub target: EntryRef,
    /// Symbols sampled jointly for the row.
    pub vars: Vec<String>,
    pub cited: Option<CitedDerivation>,
    pub identification: Option<FunctorIdentification>,
    pub note: Option<&'static str>,
}

impl Table2Row {
    /// Entry parameters of source and target at the given values.
    pub fn instance_params(&self, values: &BTreeMap<String, Q>) -> Result<(Vec<Q>, Vec<Q>), String> {
        Ok((eval_ref(&self.source, values)?, eval_ref(&self.target, values)?))
    }
}

fn eval_ref(r: &EntryRef, values: &BTreeMap<String, Q>) -> Result<Vec<Q>, String> {
    let mut env = Env { t_mode: TMode::Forbidden, ..Env::default() };
    for (k, v) in values {
        env.params.insert(k.clone(), RatFun::constant(v.clone()));
    }
    r.params
        .iter()
        .map(|e| e.eval_scalar(&env).and_then(|v| v.as_constant().ok_or_else(|| "not constant".to_string())))
        .collect()
}

struct Spec {
    source: &'static str,
    target: &'static str,
    cited: Option<(&'static str, Option<usize>, Option<usize>)>,
    ident: Option<(Functor, &'static str, bool)>,
    note: Option<&'static str>,
}

fn d(source: &'static str, target: &'static str, triple: &'static str, l: usize, r: Option<usize>) -> Spec {
    Spec { source, target, cited: Some((triple, Some(l), r)), ident: None, note: None }
}

fn f(source: &'static str, target: &'static str, which: Functor, image: &'static str, swap: bool) -> Spec {
    Spec { source, target, cited: None, ident: Some((which, image, swap)), note: None }
}

fn specs() -> Vec<Spec> {
    use Functor::{Ab, F};
    let mut v = vec![
        d("LS13[1,1/g]", "LS13[g,g]", "1,1,-1", 1, Some(0)),
        d("LS13[a,b]", "LS6[1]", "1/a,1,-1", 1, Some(0)),
        d("LS13[1,2]", "LS13[1/2,1/2]", "1,1,-1", 1, Some(0)),
        d("LS13[1,-2]", "LS13[-1/2,-1/2]", "1,1,-1", 1, Some(0)),
        d("LS13[1,-1/2]", "LS13[-2,-2]", "1,1,-1", 1, Some(0)),
        d("LS13[a,-1/2]", "LS6[1]", "-2,1,-1", 1, Some(0)),
        d("LS9", "LS6[-1]", "1,1,0", 1, Some(0)),
        f("LS14[a]", "LS13[b,b+1]", F, "LS13[a,-(a+1)]", false),
        f("LS14[a]", "LS13[b,-1/2]", F, "LS13[a,-(a+1)]", false),
        f("LS14[a]", "LS6[1]", F, "LS13[a,-(a+1)]", false),
        d("LS14[1]", "LS16[-1/2]", "-1/2,1,-1", 1, Some(0)),
        d("LS14[1]", "LS15[-1/2]", "-1/2,1,-1", 1, Some(0)),
        d("LS14[0]", "LS6[-1]", "0,1,-1", 8, Some(2)),
        f("LS14[-1/2]", "LS13[a,a+1]", F, "LS13[-1/2,-1/2]", false),
        f("LS14[-1/2]", "LS13[a,-(a+1)]", F, "LS13[-1/2,-1/2]", false),
        d("LS14[-1/2]", "LS16[-1/2]", "-2,1,-1", 2, None),
        f("LS14[-1/2]", "LS11", F, "LS13[-1/2,-1/2]", false),
        f("LS14[-1/2]", "LS12", F, "LS13[-1/2,-1/2]", false),
        f("LS15[-1/2]", "LS11", F, "LS13[-1/2,-1/2]", false),
        f("LS15[a]", "LS2", Ab, "LS3", true),
        f("LS15[a]", "LS6[b]", F, "LS13[a,-1/2]", false),
        f("LS15[a]", "LS10", F, "LS13[a,-1/2]", false),
        f("LS15[a]", "LS13[b,c]", F, "LS13[a,-1/2]", false),
        f("LS15[a]", "LS16[b]", F, "LS13[a,-1/2]", false),
        f("LS15[a]", "LS15[-1/2]", F, "LS13[a,-1/2]", false),
        f("LS17", "LS13[a,a+1]", F, "LS16[-1/2]", false),
        f("LS17", "LS13[a,-(a+1)]", F, "LS16[-1/2]", false),
        d("LS18[-2/3]", "LS13[-3/2,-1/2]", "2/3,1,-1", 1, Some(0)),
        d("LS18[-2]", "LS13[1/2,-1/2]", "-1,1,-1", 1, Some(0)),
        d("LS18[-1/3]", "LS13[3/2,-1/2]", "1/3,1,-1", 1, Some(0)),
        d("LS18[-3]", "LS13[3/2,-1/2]", "3,1,-1", 1, Some(0)),
        d("LS18[1]", "LS16[1/2]", "1/2,1,-1", 1, Some(0)),
        d("LS18[1]", "LS13[1/2,1/2]", "1/2,1,-1", 1, Some(0)),
        d("LS18[g/(1-g)]", "LS13[g,1-g]", "1-g,1,-1", 1, Some(0)),
        d("LS18[-2]", "LS13[2,-1]", "2,1,0", 1, Some(0)),
        d("LS18[(1-g)/g]", "LS13[1-g,g]", "g,1,-1", 1, Some(0)),
        d("LS18[-2]", "LS13[2,-1]", "2,1,0", 1, Some(0)),
        d("LS18[0]", "LS6[1]", "0,1,-1", 8, Some(2)),
        d("LS18[0]", "LS10", "0,1,-1", 8, Some(2)),
        d("LS18[a]", "LS6[b]", "1,1,-1", 2, Some(0)),
    ];
    v[34].note = Some("γ = 2; the choices γ = (1 ± √−3)/2 lie outside ℚ(i) and are not sampled");
    v[36].note = Some("γ = −1; the choices γ = (1 ± √−3)/2 lie outside ℚ(i) and are not sampled");
    v
}

/// The 40 rows, numbered from 1 in table order.
pub fn table2_rows() -> Vec<Table2Row> {
    specs()
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            let source = EntryRef::parse(s.source).expect("built-in row");
            let target = EntryRef::parse(s.target).expect("built-in row");
            let mut vars = Vec::new();
            for e in source.params.iter().chain(&target.params) {
                e.idents(&mut vars);
            }
            let cited = s.cited.map(|(t, l, r)| {
                let parts: Vec<Expr> = t.split(',').map(|p| parse_expr(p).expect("built-in triple")).collect();
                let [a, b, c]: [Expr; 3] = parts.try_into().expect("three entries");
                CitedDerivation { triple: [a, b, c], parity: 1, source_dim: l, target_dim: r }
            });
            let identification = s.ident.map(|(which, image, swap_odd)| FunctorIdentification {
                which,
                image: EntryRef::parse(image).expect("built-in image"),
                swap_odd,
            });
            Table2Row { id: k + 1, source, target, vars, cited, identification, note: s.note }
        })
        .collect()
}

/// One sampled instance of a row.
#[derive(Debug, Clone, Serialize)]
pub struct Table2Sample {
    pub source: String,
    pub target: String,
    pub certificate: Option<NondegenerationCertificate>,
    /// Computed `(source, target)` dimensions of the cited derivation space.
    pub derivation_dims: Option<(usize, usize)>,
    pub cited_match: Option<bool>,
    pub identification_ok: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table2Outcome {
    pub row: usize,
    pub source: String,
    pub target: String,
    pub cited: Option<String>,
    pub note: Option<&'static str>,
    pub samples: Vec<Table2Sample>,
}

impl Table2Outcome {
    pub fn certified(&self) -> bool {
        self.samples.iter().all(|s| s.certificate.is_some() && s.error.is_none())
    }

    /// `None` when the row cites no derivation dimensions.
    pub fn cited_dims_match(&self) -> Option<bool> {
        let v: Vec<bool> = self.samples.iter().filter_map(|s| s.cited_match).collect();
        (!v.is_empty()).then(|| v.iter().all(|&b| b))
    }

    pub fn identification_ok(&self) -> Option<bool> {
        let v: Vec<bool> = self.samples.iter().filter_map(|s| s.identification_ok).collect();
        (!v.is_empty()).then(|| v.iter().all(|&b| b))
    }
}

fn swap_odd(a: &SuperAlgebra<Q>) -> SuperAlgebra<Q> {
    let d = a.dim();
    let mut p = Matrix::zeros(d.n, d.n);
    for k in 0..d.n {
        p[(k, d.n - 1 - k)] = Q::one();
    }
    BasisChange::new(Matrix::identity(d.m), p).expect("permutation").act(a).expect("same shape")
}

fn sample_row(
    catalog: &Catalog,
    row: &Table2Row,
    values: &BTreeMap<String, Q>,
    plan: &SpecializationPlan,
) -> Table2Sample {
    let label = |r: &EntryRef, p: &[Q]| {
        if p.is_empty() {
            r.name.clone()
        } else {
            format!("{}[{}]", r.name, p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        }
    };
    let mut out = Table2Sample {
        source: label(&row.source, &[]),
        target: label(&row.target, &[]),
        certificate: None,
        derivation_dims: None,
        cited_match: None,
        identification_ok: None,
        error: None,
    };
    let (sp, tp) = match row.instance_params(values) {
        Ok(p) => p,
        Err(e) => {
            out.error = Some(e);
            return out;
        }
    };
    out.source = label(&row.source, &sp);
    out.target = label(&row.target, &tp);
    let (g, h) = match (catalog.instantiate(&row.source.name, &sp), catalog.instantiate(&row.target.name, &tp)) {
        (Ok(g), Ok(h)) => (g, h),
        (Err(e), _) | (_, Err(e)) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    let ga = Analyzed::new(g, crate::invariants::DEFAULT_IJ_SAMPLES, plan.seed);
    let ha = Analyzed::new(h, crate::invariants::DEFAULT_IJ_SAMPLES, plan.seed);
    let mut params: Vec<Q> = values.values().cloned().collect();
    params.extend(sp.iter().chain(&tp).cloned());
    out.certificate = certify(&ga, &ha, &CertifierConfig::with_parameters(&params), 1);

    if let Some(c) = &row.cited {
        match c.query(values) {
            Ok(q) => {
                let dims = (ga.derivation_dim(&q), ha.derivation_dim(&q));
                out.derivation_dims = Some(dims);
                out.cited_match = Some(c.source_dim == Some(dims.0) && c.target_dim.is_none_or(|t| t == dims.1));
            }
            Err(e) => out.error = Some(e),
        }
    }
    if let Some(id) = &row.identification {
        let image = eval_ref(&id.image, values)
            .and_then(|p| catalog.instantiate(&id.image.name, &p).map_err(|e| e.to_string()));
        match image {
            Ok(img) => {
                let mut fa = ga.alg.functor_apply(id.which);
                if id.swap_odd {
                    fa = swap_odd(&fa);
                }
                out.identification_ok = Some(fa.same_constants(&img));
            }
            Err(e) => out.error = Some(e),
        }
    }
    out
}

/// Runs the certifier on every row at sampled values of its free symbols, checks the cited
/// derivation dimensions and the functor identifications.
pub fn certify_table2(catalog: &Catalog, plan: &SpecializationPlan) -> Vec<Table2Outcome> {
    table2_rows()
        .iter()
        .map(|row| {
            let samples = plan
                .assignments(&format!("table2.{}", row.id), &row.vars)
                .iter()
                .map(|v| sample_row(catalog, row, v, plan))
                .collect();
            Table2Outcome {
                row: row.id,
                source: row.source.text.clone(),
                target: row.target.text.clone(),
                cited: row.cited.as_ref().map(|c| {
                    let q = c.triple.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
                    match c.target_dim {
                        Some(t) => format!("D({})_1: {} > {}", q, c.source_dim.unwrap_or(0), t),
                        None => format!("D({})_1: {}", q, c.source_dim.unwrap_or(0)),
                    }
                }),
                note: row.note,
                samples,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_rows_with_free_symbols() {
        let rows = table2_rows();
        assert_eq!(rows.len(), 40);
        assert_eq!(rows[0].vars, vec!["g".to_string()]);
        assert_eq!(rows[22].vars, vec!["a".to_string(), "b".to_string(), "c".to_string()]);
        assert!(rows[6].vars.is_empty());
        let vals: BTreeMap<String, Q> = [("g".to_string(), Q::from_int(3))].into_iter().collect();
        let (s, t) = rows[33].instance_params(&vals).unwrap();
        assert_eq!(s, vec![Q::ratio(-3, 2)]);
        assert_eq!(t, vec![Q::from_int(3), Q::from_int(-2)]);
        assert_eq!(rows[33].cited.as_ref().unwrap().query(&vals).unwrap().to_string(), "D(-2,1,-1)_1");
    }
}
