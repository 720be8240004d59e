//! Line-oriented text format for algebras and algebra templates.
//!
//! ```text
//! superalgebra LS14 dim (2,2)
//! params a
//! [e1,e2] = e1
//! [e2,f1] = a f1
//! [e2,f2] = -(a+1) f2
//! [f1,f2] = e1
//! ```
//!
//! `params` is only used by catalog templates. `param t` allows the formal variable and
//! `uses_sqrt true` additionally allows `sqrt(t)`.

use thiserror::Error;

use super::{format_vector, SuperAlgebra, SuperDim};
use crate::exactnum::{parse_expr, Env, Expr, GaussianRational, RatFun, TMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductLine {
    pub left: usize,
    pub right: usize,
    pub rhs: Expr,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: SuperDim,
    pub params: Vec<String>,
    pub param_t: bool,
    pub uses_sqrt: bool,
    pub products: Vec<ProductLine>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError { line, col, msg: msg.into() }
}

fn parse_header(line: &str, ln: usize) -> Result<(String, SuperDim), FormatError> {
    let rest = line.strip_prefix("superalgebra").ok_or_else(|| err(ln, 1, "expected 'superalgebra'"))?;
    let (name, dim) =
        rest.split_once(" dim ").ok_or_else(|| err(ln, 1, "expected 'superalgebra <name> dim (<m>,<n>)'"))?;
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(err(ln, 14, "bad algebra name"));
    }
    let col = line.find(" dim ").map_or(1, |p| p + 6);
    let inner = dim
        .trim()
        .strip_prefix('(')
        .and_then(|d| d.strip_suffix(')'))
        .ok_or_else(|| err(ln, col, "expected (<m>,<n>)"))?;
    let (m, n) = inner.split_once(',').ok_or_else(|| err(ln, col, "expected (<m>,<n>)"))?;
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| err(ln, col, "bad dimension"));
    Ok((name.to_string(), SuperDim::new(parse(m)?, parse(n)?)))
}

fn parse_block(lines: &[(usize, &str)]) -> Result<AlgebraFile, FormatError> {
    let (ln, head) = lines[0];
    let (name, dim) = parse_header(head, ln)?;
    let names = dim.basis_names();
    let mut file =
        AlgebraFile { name, dim, params: Vec::new(), param_t: false, uses_sqrt: false, products: Vec::new() };
    let mut seen = std::collections::BTreeSet::new();
    for &(ln, line) in &lines[1..] {
        if let Some(p) = line.strip_prefix("params ") {
            file.params = p.split([' ', ',']).filter(|s| !s.is_empty()).map(String::from).collect();
        } else if line == "param t" {
            file.param_t = true;
        } else if let Some(v) = line.strip_prefix("uses_sqrt ") {
            file.uses_sqrt = match v.trim() {
                "true" => true,
                "false" => false,
                _ => return Err(err(ln, 11, "expected true or false")),
            };
        } else if line.starts_with('[') {
            let close = line.find(']').ok_or_else(|| err(ln, 1, "missing ']'"))?;
            let (a, b) = line[1..close].split_once(',').ok_or_else(|| err(ln, 2, "expected [x,y]"))?;
            let idx = |s: &str, col| {
                names
                    .iter()
                    .position(|n| n == s.trim())
                    .ok_or_else(|| err(ln, col, format!("unknown basis element '{}'", s.trim())))
            };
            let left = idx(a, 2)?;
            let right = idx(b, 3 + a.len())?;
            let after = &line[close + 1..];
            let eq = after.find('=').ok_or_else(|| err(ln, close + 2, "expected '='"))?;
            let rhs_text = &after[eq + 1..];
            let rhs_col = close + eq + 3;
            let rhs = parse_expr(rhs_text).map_err(|e| err(ln, rhs_col + e.col - 1, e.msg))?;
            let key = (left.min(right), left.max(right));
            if !seen.insert(key) {
                return Err(err(ln, 1, "duplicate product"));
            }
            if left == right && dim.parity(left) == 0 {
                return Err(err(ln, 1, "the bracket of an even element with itself is zero"));
            }
            file.products.push(ProductLine { left, right, rhs, source: rhs_text.trim().to_string() });
        } else {
            return Err(err(ln, 1, format!("unrecognised line '{}'", line)));
        }
    }
    Ok(file)
}

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut files = parse_algebra_files(text)?;
    match files.len() {
        1 => Ok(files.remove(0)),
        0 => Err(err(1, 1, "empty file")),
        _ => Err(err(1, 1, "expected a single algebra")),
    }
}

/// Parses a file holding several algebras, each starting with a `superalgebra` header.
pub fn parse_algebra_files(text: &str) -> Result<Vec<AlgebraFile>, FormatError> {
    let lines = content_lines(text);
    if let Some(&(ln, l)) = lines.first() {
        if !l.starts_with("superalgebra") {
            return Err(err(ln, 1, "expected 'superalgebra'"));
        }
    }
    let mut blocks: Vec<Vec<(usize, &str)>> = Vec::new();
    for (ln, l) in lines {
        if l.starts_with("superalgebra") {
            blocks.push(Vec::new());
        }
        blocks.last_mut().expect("header first").push((ln, l));
    }
    blocks.iter().map(|b| parse_block(b)).collect()
}

impl AlgebraFile {
    /// Text that parses back to `self`.
    pub fn to_text(&self) -> String {
        let names = self.dim.basis_names();
        let mut out = format!("superalgebra {} dim ({},{})\n", self.name, self.dim.m, self.dim.n);
        if !self.params.is_empty() {
            out.push_str(&format!("params {}\n", self.params.join(" ")));
        }
        if self.param_t {
            out.push_str("param t\n");
        }
        if self.uses_sqrt {
            out.push_str("uses_sqrt true\n");
        }
        for p in &self.products {
            out.push_str(&format!("[{},{}] = {}\n", names[p.left], names[p.right], p.source));
        }
        out
    }

    fn env(&self, values: &[RatFun], t_mode: TMode) -> Result<Env, String> {
        if values.len() != self.params.len() {
            return Err(format!("{} expects {} parameters, got {}", self.name, self.params.len(), values.len()));
        }
        let mut env = Env { basis: self.dim.basis_names(), t_mode, ..Env::default() };
        for (p, v) in self.params.iter().zip(values) {
            env.params.insert(p.clone(), v.clone());
        }
        Ok(env)
    }

    /// Instantiates over ℚ(i)(t).
    pub fn instantiate_ratfun(&self, values: &[RatFun], t_mode: TMode) -> Result<SuperAlgebra<RatFun>, String> {
        let env = self.env(values, t_mode)?;
        let mut a = SuperAlgebra::zero(self.dim).with_label(self.name.clone());
        for p in &self.products {
            let v = p.rhs.eval_linear(&env)?;
            if !v.scalar.is_zero() {
                return Err(format!(
                    "[{},{}]: right-hand side is not a combination of basis elements",
                    p.left, p.right
                ));
            }
            a.set_product(p.left, p.right, v.vector);
        }
        Ok(a)
    }

    /// Instantiates at constant parameter values; `t` is rejected unless `param t` is set.
    pub fn instantiate(&self, values: &[GaussianRational]) -> Result<SuperAlgebra<GaussianRational>, String> {
        let mode = match (self.param_t, self.uses_sqrt) {
            (_, true) => TMode::Sqrt,
            (true, false) => TMode::Plain,
            (false, false) => TMode::Forbidden,
        };
        let rf: Vec<RatFun> = values.iter().cloned().map(RatFun::constant).collect();
        let a = self.instantiate_ratfun(&rf, mode)?;
        a.try_map(|x| x.as_constant().ok_or_else(|| "constant depends on t".to_string()))
    }
}

/// Canonical text for a constant algebra; `parse(print(a))` reproduces `a`.
pub fn print_algebra(a: &SuperAlgebra<GaussianRational>, name: &str) -> String {
    let d = a.dim();
    let names = d.basis_names();
    let mut out = format!("superalgebra {} dim ({},{})\n", name, d.m, d.n);
    for i in 0..d.total() {
        for j in i..d.total() {
            if i == j && d.parity(i) == 0 {
                continue;
            }
            let v = a.product(i, j);
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            out.push_str(&format!("[{},{}] = {}\n", names[i], names[j], format_vector(v, &names)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LS14: &str =
        "superalgebra LS14 dim (2,2)\nparams a\n[e1,e2] = e1\n[e2,f1] = a f1\n[e2,f2] = -(a+1) f2\n[f1,f2] = e1\n";

    #[test]
    fn template_round_trip() {
        let f = parse_algebra_file(LS14).unwrap();
        assert_eq!(f.params, vec!["a"]);
        let a = f.instantiate(&[GaussianRational::ratio(2, 3)]).unwrap();
        assert!(a.validate().is_valid());
        let text = print_algebra(&a, "x");
        let b = parse_algebra_file(&text).unwrap().instantiate(&[]).unwrap();
        assert_eq!(a, b.with_label("LS14"));
        assert_eq!(parse_algebra_file(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_algebra_file("superalgebra g dim (2,2)\n[e1,e3] = e1\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        let e = parse_algebra_file("superalgebra g dim (2,2)\n[e1,e2] = e1 +\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_algebra_file("superalgebra g dim (2,2)\n[e1,e1] = e2\n").is_err());
        assert!(parse_algebra_file("superalgebra g dim (2,2)\n[e1,e2] = t e1\n").unwrap().instantiate(&[]).is_err());
    }

    #[test]
    fn odd_odd_lines_imply_symmetric_partner() {
        let f = parse_algebra_file("superalgebra g dim (2,2)\n[f1,f2] = e1\n").unwrap();
        let a = f.instantiate(&[]).unwrap();
        assert_eq!(a.product(3, 2), a.product(2, 3));
        assert!(a.validate().is_valid());
    }
}
