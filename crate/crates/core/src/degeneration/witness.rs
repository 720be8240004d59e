//! Witness files: a source template, a target template and a basis change over ℚ(i)(t).
//!
//! ```text
//! witness LS14[a] -> LS7
//! row T4.2
//! edge LS14 -> LS7 limit α(t) = -1/t
//! bind a = -1/t
//! x1 = e1
//! x2 = -t e2
//! y1 = f1
//! y2 = f2
//! ```
//!
//! Columns are the new basis vectors written in the old basis. Missing columns default to
//! the identity. Free symbols (here none) are parameters sampled by the caller.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::BasisChange;
use crate::catalog::Catalog;
use crate::exactnum::{parse_expr, Env, Expr, GaussianRational, RatFun, TMode};
use crate::linalg::Matrix;
use crate::superalg::{format_vector, SuperAlgebra};

type Q = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown catalog entry '{0}'")]
    UnknownEntry(String),
    #[error("{what}: {msg}")]
    Eval { what: String, msg: String },
    #[error("column {0} mixes parities")]
    NotBlockDiagonal(String),
    #[error("the basis change is singular")]
    Singular,
    #[error("structure constant {constant} has a pole at t = 0")]
    PoleAtZero { constant: String },
    #[error("structure constant {constant}: limit {got}, target {expected}")]
    LimitMismatch { constant: String, got: Box<Q>, expected: Box<Q> },
    #[error("parameter '{0}' has no value")]
    MissingValue(String),
}

/// `LS13[a, -(a+1)]` style reference to a catalog template.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryRef {
    pub name: String,
    pub params: Vec<Expr>,
    pub text: String,
}

impl EntryRef {
    pub fn parse(text: &str) -> Result<EntryRef, String> {
        let text = text.trim();
        let (name, params) = match text.find('[') {
            None => (text, Vec::new()),
            Some(p) => {
                let inner = text[p + 1..].strip_suffix(']').ok_or("missing ']'")?;
                let mut parts = Vec::new();
                let (mut depth, mut start) = (0i32, 0);
                for (k, c) in inner.char_indices() {
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        ',' if depth == 0 => {
                            parts.push(&inner[start..k]);
                            start = k + 1;
                        }
                        _ => {}
                    }
                }
                parts.push(&inner[start..]);
                let params =
                    parts.iter().map(|s| parse_expr(s).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
                (&text[..p], params)
            }
        };
        if name.is_empty() {
            return Err("missing entry name".into());
        }
        Ok(EntryRef { name: name.to_string(), params, text: text.to_string() })
    }
}

impl fmt::Display for EntryRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStatus {
    /// Verifies as printed.
    Verified,
    /// A repaired version of a misprinted row.
    Corrected,
    /// The printed form, kept to show that it fails.
    Misprint,
    /// The printed form fails and the target is provably out of reach.
    Refuted,
    /// An isomorphism between two catalog instances.
    Isomorphism,
}

impl WitnessStatus {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "verified" => WitnessStatus::Verified,
            "corrected" => WitnessStatus::Corrected,
            "misprint" => WitnessStatus::Misprint,
            "refuted" => WitnessStatus::Refuted,
            "isomorphism" => WitnessStatus::Isomorphism,
            _ => return None,
        })
    }

    /// Whether verification is expected to succeed.
    pub fn expects_success(self) -> bool {
        matches!(self, WitnessStatus::Verified | WitnessStatus::Corrected | WitnessStatus::Isomorphism)
    }
}

/// Graph edge declared by a witness: node ids, kind keyword and free text.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
    pub kind: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub id: String,
    pub row: Option<String>,
    pub source: EntryRef,
    pub target: EntryRef,
    pub binds: Vec<(String, Expr)>,
    pub uses_sqrt: bool,
    pub columns: BTreeMap<String, Expr>,
    pub edge: Option<EdgeSpec>,
    pub source_constraint: Option<String>,
    pub status: WitnessStatus,
    pub note: Option<String>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> WitnessError {
    WitnessError::Parse { line, col, msg: msg.into() }
}

/// Parses every `witness` block in `text`. Lines after `#` are comments.
pub fn parse_witnesses(text: &str) -> Result<Vec<Witness>, WitnessError> {
    let mut out: Vec<Witness> = Vec::new();
    let mut seen_ids = std::collections::BTreeSet::new();
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("witness ") {
            let (s, t) = rest.split_once("->").ok_or_else(|| perr(ln, 9, "expected '<source> -> <target>'"))?;
            let source = EntryRef::parse(s).map_err(|m| perr(ln, 9, m))?;
            let target = EntryRef::parse(t).map_err(|m| perr(ln, 9 + s.len() + 2, m))?;
            out.push(Witness {
                id: format!("w{}", out.len() + 1),
                row: None,
                source,
                target,
                binds: Vec::new(),
                uses_sqrt: false,
                columns: BTreeMap::new(),
                edge: None,
                source_constraint: None,
                status: WitnessStatus::Verified,
                note: None,
            });
            continue;
        }
        let w = out.last_mut().ok_or_else(|| perr(ln, 1, "expected 'witness'"))?;
        let (key, value) = match line.split_once([' ', '=']) {
            Some((k, _)) => (k.trim(), line[k.len()..].trim_start().trim_start_matches('=').trim()),
            None => (line, ""),
        };
        let value_col = line.len() - value.len() + 1;
        match key {
            "id" => w.id = value.to_string(),
            "row" => w.row = Some(value.to_string()),
            "uses_sqrt" => {
                w.uses_sqrt = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(perr(ln, value_col, "expected true or false")),
                }
            }
            "status" => w.status = WitnessStatus::parse(value).ok_or_else(|| perr(ln, value_col, "unknown status"))?,
            "note" => w.note = Some(value.to_string()),
            "source_constraint" => w.source_constraint = Some(value.to_string()),
            "edge" => {
                let (from, rest) =
                    value.split_once("->").ok_or_else(|| perr(ln, value_col, "expected '<from> -> <to> <kind>'"))?;
                let mut parts = rest.trim().splitn(3, ' ');
                let to = parts.next().unwrap_or("").to_string();
                let kind = parts.next().ok_or_else(|| perr(ln, value_col, "missing edge kind"))?.to_string();
                if !["all", "sweep", "special", "limit", "limit-sweep"].contains(&kind.as_str()) {
                    return Err(perr(ln, value_col, format!("unknown edge kind '{}'", kind)));
                }
                let text = parts.next().unwrap_or("").trim().to_string();
                w.edge = Some(EdgeSpec { from: from.trim().to_string(), to, kind, text });
            }
            "bind" => {
                let (name, rhs) =
                    value.split_once('=').ok_or_else(|| perr(ln, value_col, "expected 'bind <p> = <expr>'"))?;
                let e = parse_expr(rhs).map_err(|e| perr(ln, value_col + name.len() + e.col, e.msg))?;
                w.binds.push((name.trim().to_string(), e));
            }
            col if (col.starts_with('x') || col.starts_with('y')) && col[1..].parse::<usize>().is_ok() => {
                let e = parse_expr(value).map_err(|e| perr(ln, value_col + e.col - 1, e.msg))?;
                if w.columns.insert(col.to_string(), e).is_some() {
                    return Err(perr(ln, 1, format!("duplicate column {}", col)));
                }
            }
            other => return Err(perr(ln, 1, format!("unrecognised line '{}'", other))),
        }
    }
    for w in &out {
        if !seen_ids.insert(w.id.clone()) {
            return Err(perr(0, 0, format!("duplicate witness id {}", w.id)));
        }
    }
    Ok(out)
}

/// Outcome of a successful check.
#[derive(Debug, Clone)]
pub struct VerifiedDegeneration {
    pub id: String,
    pub limit: SuperAlgebra<Q>,
    pub free: BTreeMap<String, Q>,
}

impl Witness {
    pub fn t_mode(&self) -> TMode {
        if self.uses_sqrt {
            TMode::Sqrt
        } else {
            TMode::Plain
        }
    }

    /// Symbols that must be supplied by the caller.
    pub fn free_symbols(&self) -> Vec<String> {
        let mut ids = Vec::new();
        for e in self.source.params.iter().chain(&self.target.params) {
            e.idents(&mut ids);
        }
        for (_, e) in &self.binds {
            e.idents(&mut ids);
        }
        ids.retain(|s| s != "t" && s != "i" && !self.binds.iter().any(|(b, _)| b == s));
        ids
    }

    fn env(&self, free: &BTreeMap<String, Q>) -> Result<Env, WitnessError> {
        let mut env = Env { t_mode: self.t_mode(), ..Env::default() };
        for s in self.free_symbols() {
            let v = free.get(&s).ok_or_else(|| WitnessError::MissingValue(s.clone()))?;
            env.params.insert(s, RatFun::constant(v.clone()));
        }
        for (name, e) in &self.binds {
            let v = e.eval_scalar(&env).map_err(|msg| WitnessError::Eval { what: format!("bind {}", name), msg })?;
            env.params.insert(name.clone(), v);
        }
        Ok(env)
    }

    /// Source algebra over ℚ(i)(t) (over ℚ(i)(s), `t = s²`, when `uses_sqrt`).
    pub fn source_algebra(
        &self,
        catalog: &Catalog,
        free: &BTreeMap<String, Q>,
    ) -> Result<SuperAlgebra<RatFun>, WitnessError> {
        let env = self.env(free)?;
        let entry =
            catalog.entry(&self.source.name).map_err(|_| WitnessError::UnknownEntry(self.source.name.clone()))?;
        let values = self
            .source
            .params
            .iter()
            .map(|e| e.eval_scalar(&env))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|msg| WitnessError::Eval { what: format!("source {}", self.source), msg })?;
        entry
            .template
            .instantiate_ratfun(&values, self.t_mode())
            .map_err(|msg| WitnessError::Eval { what: format!("source {}", self.source), msg })
    }

    pub fn target_algebra(
        &self,
        catalog: &Catalog,
        free: &BTreeMap<String, Q>,
    ) -> Result<SuperAlgebra<Q>, WitnessError> {
        let mut env = self.env(free)?;
        env.t_mode = TMode::Forbidden;
        for (b, _) in &self.binds {
            env.params.remove(b);
        }
        let what = || format!("target {}", self.target);
        let values = self
            .target
            .params
            .iter()
            .map(|e| e.eval_scalar(&env).and_then(|v| v.as_constant().ok_or_else(|| "depends on t".to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|msg| WitnessError::Eval { what: what(), msg })?;
        catalog
            .instantiate(&self.target.name, &values)
            .map_err(|e| WitnessError::Eval { what: what(), msg: e.to_string() })
    }

    pub fn basis_change(
        &self,
        dim: crate::superalg::SuperDim,
        free: &BTreeMap<String, Q>,
    ) -> Result<BasisChange<RatFun>, WitnessError> {
        let mut env = self.env(free)?;
        env.basis = dim.basis_names();
        let n = dim.total();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (prefix, count, offset) in [("x", dim.m, 0), ("y", dim.n, dim.m)] {
            for k in 0..count {
                let name = format!("{}{}", prefix, k + 1);
                let v = match self.columns.get(&name) {
                    Some(e) => {
                        let lv = e.eval_linear(&env).map_err(|msg| WitnessError::Eval { what: name.clone(), msg })?;
                        if !lv.scalar.is_zero() {
                            return Err(WitnessError::Eval { what: name.clone(), msg: "not a vector".into() });
                        }
                        lv.vector
                    }
                    None => crate::superalg::unit(n, offset + k),
                };
                let (own, other) = if offset == 0 { (0..dim.m, dim.m..n) } else { (dim.m..n, 0..dim.m) };
                if other.clone().any(|j| !v[j].is_zero()) {
                    return Err(WitnessError::NotBlockDiagonal(name));
                }
                let col: Vec<RatFun> = v[own].to_vec();
                if offset == 0 {
                    even.push(col);
                } else {
                    odd.push(col);
                }
            }
        }
        for key in self.columns.keys() {
            let (p, k) = key.split_at(1);
            let k: usize = k.parse().unwrap_or(0);
            let limit = if p == "x" { dim.m } else { dim.n };
            if k == 0 || k > limit {
                return Err(WitnessError::Eval { what: key.clone(), msg: "no such basis vector".into() });
            }
        }
        BasisChange::from_new_basis(Matrix::from_columns(&even), Matrix::from_columns(&odd))
            .map_err(|_| WitnessError::Singular)
    }
}

/// Acts by `change` and compares the `t → 0` limit with `target`.
pub fn verify_change(
    source: &SuperAlgebra<RatFun>,
    change: &BasisChange<RatFun>,
    target: &SuperAlgebra<Q>,
) -> Result<SuperAlgebra<Q>, WitnessError> {
    let moved = change.act(source).map_err(|_| WitnessError::Singular)?;
    let d = source.dim();
    let names = d.basis_names();
    let n = d.total();
    let mut limit = SuperAlgebra::zero(d);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let name = || format!("[{},{}] along {}", names[i], names[j], names[k]);
                let v = moved
                    .constant(i, j, k)
                    .limit_at_zero()
                    .map_err(|_| WitnessError::PoleAtZero { constant: name() })?;
                limit.set_constant_raw(i, j, k, v);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (got, want) = (limit.constant(i, j, k), target.constant(i, j, k));
                if got != want {
                    return Err(WitnessError::LimitMismatch {
                        constant: format!(
                            "[{},{}] = {} (target {})",
                            names[i],
                            names[j],
                            format_vector(limit.product(i, j), &names),
                            format_vector(target.product(i, j), &names)
                        ),
                        got: Box::new(got.clone()),
                        expected: Box::new(want.clone()),
                    });
                }
            }
        }
    }
    Ok(limit)
}

/// Checks the witness with the given values for its free symbols.
pub fn verify_witness(
    w: &Witness,
    catalog: &Catalog,
    free: &BTreeMap<String, Q>,
) -> Result<VerifiedDegeneration, WitnessError> {
    let source = w.source_algebra(catalog, free)?;
    let target = w.target_algebra(catalog, free)?;
    let change = w.basis_change(source.dim(), free)?;
    let limit = verify_change(&source, &change, &target)?;
    Ok(VerifiedDegeneration { id: w.id.clone(), limit, free: free.clone() })
}

/// `g_t = t⁻¹ I`, which multiplies every constant by `t` and so contracts any algebra
/// to the abelian one.
pub fn trivial_scaling_witness(dim: crate::superalg::SuperDim) -> BasisChange<RatFun> {
    BasisChange::scalar(dim, RatFun::t().inv().expect("t is invertible"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_refs_split_on_top_level_commas() {
        let r = EntryRef::parse("LS13[a, -(a+1)]").unwrap();
        assert_eq!(r.name, "LS13");
        assert_eq!(r.params.len(), 2);
        assert!(EntryRef::parse("LS4").unwrap().params.is_empty());
    }

    #[test]
    fn parse_reports_positions() {
        let e = parse_witnesses("witness LS1 -> LS4\nx1 = 2 +* e1\n").unwrap_err();
        assert!(matches!(e, WitnessError::Parse { line: 2, .. }), "{e}");
        let e = parse_witnesses("x1 = e1\n").unwrap_err();
        assert!(matches!(e, WitnessError::Parse { line: 1, .. }));
    }

    #[test]
    fn scaling_contracts_to_zero() {
        let cat = Catalog::builtin();
        let a = cat.instantiate("LS19", &[]).unwrap();
        let src = a.map(|x| RatFun::constant(x.clone()));
        let zero = cat.instantiate("LS0", &[]).unwrap();
        verify_change(&src, &trivial_scaling_witness(a.dim()), &zero).unwrap();
    }

    #[test]
    fn misprinted_row_reports_the_offending_constant() {
        let w = &parse_witnesses(
            "witness LS4 -> LS2\nx1 = e1\nx2 = e2\ny1 = -i/(2 t) f1 + i t f2\ny2 = 1/(2t) f1 + t f2\n",
        )
        .unwrap()[0];
        verify_witness(w, Catalog::builtin(), &BTreeMap::new()).unwrap();
        let bad =
            &parse_witnesses("witness LS4 -> LS2\ny1 = -i/(2 t) f1 + i t f2\ny2 = 1/(2t) f1 + t^2 f2\n").unwrap()[0];
        assert!(verify_witness(bad, Catalog::builtin(), &BTreeMap::new()).is_err());
    }
}
