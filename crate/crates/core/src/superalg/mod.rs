//! Lie superalgebras given by graded structure constants.

mod format;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{Field, GaussianRational};
use crate::linalg::Matrix;

pub use format::{parse_algebra_file, parse_algebra_files, print_algebra, AlgebraFile, FormatError, ProductLine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Graded dimension `(m, n)`: `m` even and `n` odd basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SuperDim {
    pub m: usize,
    pub n: usize,
}

impl SuperDim {
    pub fn new(m: usize, n: usize) -> Self {
        SuperDim { m, n }
    }

    pub fn total(&self) -> usize {
        self.m + self.n
    }

    pub fn parity(&self, idx: usize) -> u8 {
        u8::from(idx >= self.m)
    }

    /// `e1..em, f1..fn`.
    pub fn basis_names(&self) -> Vec<String> {
        (1..=self.m).map(|k| format!("e{}", k)).chain((1..=self.n).map(|k| format!("f{}", k))).collect()
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Sign `(-1)^(a·b)` for parities `a`, `b`.
pub fn koszul(a: u8, b: u8) -> i64 {
    if a & b & 1 == 1 {
        -1
    } else {
        1
    }
}

pub(crate) fn signed<S: Field>(sign: i64, x: S) -> S {
    if sign < 0 {
        -x
    } else {
        x
    }
}

/// An element written in the homogeneous basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<S> {
    pub even: Vec<S>,
    pub odd: Vec<S>,
}

impl<S: Field> Element<S> {
    pub fn zero(dim: SuperDim) -> Self {
        Element { even: vec![S::zero(); dim.m], odd: vec![S::zero(); dim.n] }
    }

    pub fn basis(dim: SuperDim, idx: usize) -> Self {
        let mut c = vec![S::zero(); dim.total()];
        c[idx] = S::one();
        Element::from_coords(dim, c)
    }

    pub fn from_coords(dim: SuperDim, mut coords: Vec<S>) -> Self {
        let odd = coords.split_off(dim.m);
        Element { even: coords, odd }
    }

    pub fn coords(&self) -> Vec<S> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }

    /// Parity if the element is homogeneous and nonzero.
    pub fn parity(&self) -> Option<u8> {
        let e = self.even.iter().any(|x| !x.is_zero());
        let o = self.odd.iter().any(|x| !x.is_zero());
        match (e, o) {
            (true, false) => Some(0),
            (false, true) => Some(1),
            _ => None,
        }
    }
}

/// Which constant blocks a forgetful construction keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Functor {
    /// Only the even-even products.
    A,
    /// Only the odd-odd products.
    Ab,
    /// Everything except the odd-odd products.
    F,
}

impl Functor {
    pub const ALL: [Functor; 3] = [Functor::A, Functor::Ab, Functor::F];
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functor::A => "A",
            Functor::Ab => "ab",
            Functor::F => "F",
        })
    }
}

/// One failed structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `[x,y] ≠ -(-1)^{|x||y|}[y,x]` at output coordinate `k`.
    SkewSymmetry { x: String, y: String, k: String },
    /// `[x,y]` has a component of the wrong parity.
    Grading { x: String, y: String, k: String },
    /// Nonzero super Jacobi residual on the triple.
    Jacobi { x: String, y: String, z: String, residual: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SkewSymmetry { x, y, k } => write!(f, "super skew-symmetry fails for [{},{}] at {}", x, y, k),
            Violation::Grading { x, y, k } => write!(f, "[{},{}] has a {} component of the wrong parity", x, y, k),
            Violation::Jacobi { x, y, z, residual } => {
                write!(f, "super Jacobi fails on ({},{},{}): residual {}", x, y, z, residual)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structure constants stored as the full bilinear table `[b_i, b_j] = Σ_k table[i][j][k] b_k`
/// over the basis `e1..em, f1..fn`. The blocks `c`, `ρ`, `Γ` are views into it.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperAlgebra<S> {
    dim: SuperDim,
    table: Vec<S>,
    pub label: Option<String>,
}

impl<S: Field> SuperAlgebra<S> {
    pub fn zero(dim: SuperDim) -> Self {
        let n = dim.total();
        SuperAlgebra { dim, table: vec![S::zero(); n * n * n], label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.dim.total()
    }

    pub fn parity(&self, idx: usize) -> u8 {
        self.dim.parity(idx)
    }

    fn at(&self, i: usize, j: usize) -> usize {
        let n = self.size();
        (i * n + j) * n
    }

    pub fn product(&self, i: usize, j: usize) -> &[S] {
        let s = self.at(i, j);
        &self.table[s..s + self.size()]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.table[self.at(i, j) + k]
    }

    /// Sets `[b_i, b_j]` and its super skew-symmetric partner `[b_j, b_i]`.
    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<S>) {
        assert_eq!(v.len(), self.size());
        let sign = -koszul(self.parity(i), self.parity(j));
        let partner: Vec<S> = v.iter().map(|x| signed(sign, x.clone())).collect();
        let (a, b) = (self.at(i, j), self.at(j, i));
        let n = self.size();
        self.table[b..b + n].clone_from_slice(&partner);
        self.table[a..a + n].clone_from_slice(&v);
    }

    /// Sets one constant without touching its partner.
    pub fn set_constant_raw(&mut self, i: usize, j: usize, k: usize, v: S) {
        let p = self.at(i, j) + k;
        self.table[p] = v;
    }

    /// `c_{ij}^k` for even indices `i, j, k` (zero-based within the even block).
    pub fn c(&self, i: usize, j: usize, k: usize) -> &S {
        self.constant(i, j, k)
    }

    /// `ρ_{ij}^k`: `[e_i, f_j] = Σ ρ_{ij}^k f_k`.
    pub fn rho(&self, i: usize, j: usize, k: usize) -> &S {
        let m = self.dim.m;
        self.constant(i, m + j, m + k)
    }

    /// `Γ_{ij}^k`: `[f_i, f_j] = Σ Γ_{ij}^k e_k`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &S {
        let m = self.dim.m;
        self.constant(m + i, m + j, k)
    }

    /// Equality of dimensions and constants, ignoring labels.
    pub fn same_constants(&self, o: &SuperAlgebra<S>) -> bool {
        self.dim == o.dim && self.table == o.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|x| x.is_zero())
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> SuperAlgebra<T> {
        SuperAlgebra { dim: self.dim, table: self.table.iter().map(f).collect(), label: self.label.clone() }
    }

    pub fn try_map<T: Field, E>(&self, f: impl Fn(&S) -> Result<T, E>) -> Result<SuperAlgebra<T>, E> {
        Ok(SuperAlgebra {
            dim: self.dim,
            table: self.table.iter().map(f).collect::<Result<_, _>>()?,
            label: self.label.clone(),
        })
    }

    /// Bracket of coordinate vectors.
    pub fn bracket_coords(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.size();
        let mut out = vec![S::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coef = xi.clone() * yj.clone();
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + coef.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element<S>, y: &Element<S>) -> Result<Element<S>, AlgError> {
        for e in [x, y] {
            let got = e.even.len() + e.odd.len();
            if e.even.len() != self.dim.m || e.odd.len() != self.dim.n {
                return Err(AlgError::DimensionMismatch { expected: self.size(), got });
            }
        }
        Ok(Element::from_coords(self.dim, self.bracket_coords(&x.coords(), &y.coords())))
    }

    /// Matrix of `y ↦ [x, y]`; column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[S]) -> Result<Matrix<S>, AlgError> {
        if x.len() != self.size() {
            return Err(AlgError::DimensionMismatch { expected: self.size(), got: x.len() });
        }
        let cols: Vec<Vec<S>> = (0..self.size()).map(|j| self.bracket_coords(x, &unit::<S>(self.size(), j))).collect();
        Ok(Matrix::from_columns(&cols))
    }

    pub fn validate(&self) -> ValidityReport {
        let names = self.dim.basis_names();
        let n = self.size();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (self.parity(i), self.parity(j));
                for k in 0..n {
                    let a = self.constant(i, j, k).clone();
                    if a.is_zero() {
                        continue;
                    }
                    if self.parity(k) != (pi ^ pj) {
                        violations.push(Violation::Grading {
                            x: names[i].clone(),
                            y: names[j].clone(),
                            k: names[k].clone(),
                        });
                    }
                }
                if i <= j {
                    for k in 0..n {
                        let lhs = self.constant(i, j, k).clone();
                        let rhs = signed(-koszul(pi, pj), self.constant(j, i, k).clone());
                        if lhs != rhs {
                            violations.push(Violation::SkewSymmetry {
                                x: names[i].clone(),
                                y: names[j].clone(),
                                k: names[k].clone(),
                            });
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let r = self.jacobi_residual(x, y, z);
                    if r.iter().any(|v| !v.is_zero()) {
                        let residual = format_vector(&r, &names);
                        violations.push(Violation::Jacobi {
                            x: names[x].clone(),
                            y: names[y].clone(),
                            z: names[z].clone(),
                            residual,
                        });
                    }
                }
            }
        }
        ValidityReport { violations }
    }

    /// `(-1)^{|x||z|}[[x,y],z] + (-1)^{|x||y|}[[y,z],x] + (-1)^{|y||z|}[[z,x],y]`.
    pub fn jacobi_residual(&self, x: usize, y: usize, z: usize) -> Vec<S> {
        let (px, py, pz) = (self.parity(x), self.parity(y), self.parity(z));
        let n = self.size();
        let e = |k| unit::<S>(n, k);
        let t1 = self.bracket_coords(self.product(x, y), &e(z));
        let t2 = self.bracket_coords(self.product(y, z), &e(x));
        let t3 = self.bracket_coords(self.product(z, x), &e(y));
        (0..n)
            .map(|k| {
                signed(koszul(px, pz), t1[k].clone())
                    + signed(koszul(px, py), t2[k].clone())
                    + signed(koszul(py, pz), t3[k].clone())
            })
            .collect()
    }

    pub fn functor_apply(&self, which: Functor) -> SuperAlgebra<S> {
        let mut out = SuperAlgebra::zero(self.dim);
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let kind = self.parity(i) + self.parity(j);
                let keep = match which {
                    Functor::A => kind == 0,
                    Functor::Ab => kind == 2,
                    Functor::F => kind < 2,
                };
                if keep {
                    for k in 0..n {
                        out.set_constant_raw(i, j, k, self.constant(i, j, k).clone());
                    }
                }
            }
        }
        out.label = self.label.as_ref().map(|l| format!("{}({})", which, l));
        out
    }

    /// Dimensions of the even and odd parts of `[g, g]`.
    pub fn derived_dims(&self) -> (usize, usize) {
        let (m, n) = (self.dim.m, self.dim.n);
        let mut even = Matrix::<S>::zeros(0, m);
        let mut odd = Matrix::<S>::zeros(0, n);
        for i in 0..self.size() {
            for j in 0..self.size() {
                let v = self.product(i, j);
                if m > 0 {
                    even.push_row(v[..m].to_vec());
                }
                if n > 0 {
                    odd.push_row(v[m..].to_vec());
                }
            }
        }
        (if m > 0 { even.rank() } else { 0 }, if n > 0 { odd.rank() } else { 0 })
    }

    /// Rank of `Γ` as a map from unordered odd pairs to the even part.
    pub fn gamma_rank(&self) -> usize {
        let (m, n) = (self.dim.m, self.dim.n);
        let mut cols = Vec::new();
        for i in 0..n {
            for j in i..n {
                cols.push((0..m).map(|k| self.gamma(i, j, k).clone()).collect::<Vec<S>>());
            }
        }
        if cols.is_empty() || m == 0 {
            return 0;
        }
        Matrix::from_columns(&cols).rank()
    }

    pub fn gamma_vanishes(&self) -> bool {
        self.gamma_rank() == 0
    }

    /// True iff `tr ad(b) = 0` for every basis element (ordinary trace).
    pub fn is_traceless(&self) -> bool {
        (0..self.size()).all(|b| {
            let t = (0..self.size()).fold(S::zero(), |acc, j| acc + self.constant(b, j, j).clone());
            t.is_zero()
        })
    }
}

impl SuperAlgebra<GaussianRational> {
    pub fn to_text(&self) -> String {
        print_algebra(self, self.label.as_deref().unwrap_or("g"))
    }
}

pub(crate) fn unit<S: Field>(n: usize, k: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[k] = S::one();
    v
}

/// `c1 b1 + c2 b2 ...` with zero entries skipped; `0` for the zero vector.
pub fn format_vector<S: Field>(v: &[S], names: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, b)| {
            if *c == S::one() {
                b.clone()
            } else if *c == -S::one() {
                format!("-{}", b)
            } else {
                format!("{} {}", c, b)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational as Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    /// LS19 written by hand, independent of the catalog text.
    fn ls19() -> SuperAlgebra<Q> {
        let d = SuperDim::new(2, 2);
        let mut a = SuperAlgebra::zero(d);
        let v = |c: [i64; 4]| c.iter().map(|&x| q(x)).collect::<Vec<_>>();
        a.set_product(0, 1, v([1, 0, 0, 0]));
        a.set_product(0, 3, v([0, 0, 1, 0]));
        a.set_product(1, 2, v([0, 0, -1, 0]));
        a.set_product(2, 3, v([1, 0, 0, 0]));
        a.set_product(3, 3, v([0, 2, 0, 0]));
        a
    }

    #[test]
    fn ls19_is_valid_and_breaks_when_perturbed() {
        let a = ls19();
        assert!(a.validate().is_valid());
        let mut b = a.clone();
        b.set_product(3, 3, vec![q(0), q(1), q(0), q(0)]);
        let r = b.validate();
        assert!(!r.is_valid());
        assert!(r
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Jacobi { x, y, z, .. } if x == "f2" || y == "f2" || z == "f2")));
    }

    #[test]
    fn skew_symmetry_of_bracket() {
        let a = ls19();
        let d = a.dim();
        for i in 0..4 {
            for j in 0..4 {
                let x = Element::<Q>::basis(d, i);
                let y = Element::<Q>::basis(d, j);
                let l = a.bracket(&x, &y).unwrap().coords();
                let r = a.bracket(&y, &x).unwrap().coords();
                let s = -koszul(d.parity(i), d.parity(j));
                assert!(l.iter().zip(&r).all(|(u, v)| *u == signed(s, v.clone())));
            }
        }
    }

    #[test]
    fn ad_of_e2_in_ls19() {
        let a = ls19();
        let ad = a.ad_matrix(&[q(0), q(1), q(0), q(0)]).unwrap();
        assert_eq!(ad[(0, 0)], q(-1));
        assert_eq!(ad[(2, 2)], q(-1));
        assert_eq!(ad.trace(), q(-2));
        assert!(a.ad_matrix(&vec![q(0); 4]).unwrap().is_zero());
        assert!(a.ad_matrix(&vec![q(0); 3]).is_err());
    }

    #[test]
    fn functors_and_derived_dims() {
        let a = ls19();
        let fa = a.functor_apply(Functor::A);
        assert!(fa.validate().is_valid());
        assert_eq!(fa.derived_dims(), (1, 0));
        assert_eq!(*fa.c(0, 1, 0), q(1));
        assert_eq!(a.derived_dims(), (2, 1));
        assert_eq!(a.gamma_rank(), 2);
        assert!(!a.is_traceless());
        let z = SuperAlgebra::<Q>::zero(SuperDim::new(2, 2));
        assert_eq!(z.functor_apply(Functor::Ab), z);
        assert_eq!(z.derived_dims(), (0, 0));
        assert!(z.is_traceless());
    }
}
