//! Degeneration-monotone invariants and the non-degeneration certifier.
//!
//! `(α,β,γ)`-derivations of parity `p` are the maps `D` of parity `p` with
//! `α·D[x,y] = β·[Dx,y] + γ·(-1)^{p|x|}·[x,Dy]` for every ordered pair of basis elements.

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::exactnum::GaussianRational as Q;
use crate::linalg::Matrix;
use crate::superalg::{koszul, Functor, SuperAlgebra};

/// Seed of the `(i,j)`-invariant sampler unless overridden.
pub const DEFAULT_SEED: u64 = 2718;
/// Number of `(x, y)` pairs drawn by the `(i,j)`-invariant sampler.
pub const DEFAULT_IJ_SAMPLES: usize = 5;

/// Per-sample `(numerator, denominator)` of every `(i,j)` ratio.
pub type IjTerms = BTreeMap<(u32, u32), Vec<(Q, Q)>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DerivationQuery {
    pub alpha: Q,
    pub beta: Q,
    pub gamma: Q,
    pub parity: u8,
}

impl DerivationQuery {
    pub fn new(alpha: Q, beta: Q, gamma: Q, parity: u8) -> Self {
        DerivationQuery { alpha, beta, gamma, parity }
    }

    pub fn ints(a: i64, b: i64, c: i64, parity: u8) -> Self {
        DerivationQuery::new(Q::from_int(a), Q::from_int(b), Q::from_int(c), parity)
    }

    /// `(1,1,1)` with parity 0: ordinary even derivations.
    pub fn even_derivations() -> Self {
        DerivationQuery::ints(1, 1, 1, 0)
    }
}

impl fmt::Display for DerivationQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{},{})_{}", self.alpha, self.beta, self.gamma, self.parity)
    }
}

pub fn derivation_dim(a: &SuperAlgebra<Q>, q: &DerivationQuery) -> usize {
    let n = a.size();
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| a.parity(r) ^ a.parity(c) == q.parity)
        .collect();
    let col = |r: usize, c: usize| unknowns.iter().position(|&u| u == (r, c));
    let mut m = Matrix::<Q>::zeros(0, unknowns.len());
    for x in 0..n {
        for y in 0..n {
            let sign = koszul(q.parity, a.parity(x));
            let xy = a.product(x, y);
            for k in 0..n {
                let mut row = vec![Q::zero(); unknowns.len()];
                for (l, v) in xy.iter().enumerate() {
                    if let (false, Some(u)) = (v.is_zero(), col(k, l)) {
                        row[u] = &row[u] + &(&q.alpha * v);
                    }
                }
                for r in 0..n {
                    let v = a.constant(r, y, k);
                    if let (false, Some(u)) = (v.is_zero(), col(r, x)) {
                        row[u] = &row[u] - &(&q.beta * v);
                    }
                    let w = a.constant(x, r, k);
                    if let (false, Some(u)) = (w.is_zero(), col(r, y)) {
                        let g = if sign < 0 { -&q.gamma } else { q.gamma.clone() };
                        row[u] = &row[u] - &(&g * w);
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    m.push_row(row);
                }
            }
        }
    }
    if m.rows() == 0 {
        return unknowns.len();
    }
    m.nullity()
}

/// `m² + n² − dim Der₀`.
pub fn orbit_dim(a: &SuperAlgebra<Q>) -> usize {
    let d = a.dim();
    d.m * d.m + d.n * d.n - derivation_dim(a, &DerivationQuery::even_derivations())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IJInvariantResult {
    Exists(Q),
    NotDefined,
}

impl Serialize for IJInvariantResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            IJInvariantResult::Exists(v) => v.serialize(s),
            IJInvariantResult::NotDefined => s.serialize_str("undefined"),
        }
    }
}

impl fmt::Display for IJInvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IJInvariantResult::Exists(v) => write!(f, "{}", v),
            IJInvariantResult::NotDefined => write!(f, "undefined"),
        }
    }
}

/// Random nonzero even elements with coordinates in `{-3..3} + {-3..3}i`.
pub fn sample_even_pairs(a: &SuperAlgebra<Q>, samples: usize, seed: u64) -> Vec<(Vec<Q>, Vec<Q>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = a.dim();
    let draw = |rng: &mut ChaCha8Rng| loop {
        let mut v = vec![Q::zero(); d.total()];
        for c in v.iter_mut().take(d.m) {
            *c = Q::complex((rng.gen_range(-3..=3), 1), (rng.gen_range(-3..=3), 1));
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    };
    (0..samples).map(|_| (draw(&mut rng), draw(&mut rng))).collect()
}

fn powers(m: &Matrix<Q>, max: u32) -> Vec<Matrix<Q>> {
    let mut out = vec![Matrix::identity(m.rows())];
    for k in 1..=max as usize {
        out.push(out[k - 1].mul(m));
    }
    out
}

/// `(tr (ad x)^i · tr (ad y)^j, tr((ad x)^i (ad y)^j))` for each sampled pair and grid point.
pub fn ij_terms(a: &SuperAlgebra<Q>, grid: &[(u32, u32)], samples: usize, seed: u64) -> IjTerms {
    let max = grid.iter().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
    let pairs: Vec<_> = sample_even_pairs(a, samples, seed)
        .iter()
        .map(|(x, y)| {
            let ax = a.ad_matrix(x).expect("dimension");
            let ay = a.ad_matrix(y).expect("dimension");
            (powers(&ax, max), powers(&ay, max))
        })
        .collect();
    grid.iter()
        .map(|&(i, j)| {
            let terms = pairs
                .iter()
                .map(|(px, py)| {
                    let (xi, yj) = (&px[i as usize], &py[j as usize]);
                    (&xi.trace() * &yj.trace(), xi.mul(yj).trace())
                })
                .collect();
            ((i, j), terms)
        })
        .collect()
}

fn ij_from_terms(terms: &[(Q, Q)]) -> IJInvariantResult {
    let mut value: Option<Q> = None;
    for (num, den) in terms {
        if num.is_zero() || den.is_zero() {
            continue;
        }
        let r = num / den;
        match &value {
            None => value = Some(r),
            Some(v) if *v != r => return IJInvariantResult::NotDefined,
            _ => {}
        }
    }
    value.map_or(IJInvariantResult::NotDefined, IJInvariantResult::Exists)
}

/// `(i,j)`-invariants on a grid, all from the same sampled pairs.
pub fn ij_grid(
    a: &SuperAlgebra<Q>,
    grid: &[(u32, u32)],
    samples: usize,
    seed: u64,
) -> BTreeMap<(u32, u32), IJInvariantResult> {
    ij_terms(a, grid, samples, seed).into_iter().map(|(k, t)| (k, ij_from_terms(&t))).collect()
}

pub fn ij_invariant(a: &SuperAlgebra<Q>, i: u32, j: u32, samples: usize, seed: u64) -> IJInvariantResult {
    ij_grid(a, &[(i, j)], samples, seed).remove(&(i, j)).expect("grid entry")
}

pub fn default_grid() -> Vec<(u32, u32)> {
    (1..=3).flat_map(|i| (1..=3).map(move |j| (i, j))).collect()
}

/// Triples cited by the non-degeneration table, all with odd parity.
pub fn table_triples() -> Vec<(Q, Q, Q)> {
    let r = Q::ratio;
    [
        (r(1, 1), 1, -1),
        (r(1, 1), 1, 0),
        (r(-2, 1), 1, -1),
        (r(-1, 2), 1, -1),
        (r(0, 1), 1, -1),
        (r(2, 3), 1, -1),
        (r(-1, 1), 1, -1),
        (r(1, 3), 1, -1),
        (r(3, 1), 1, -1),
        (r(1, 2), 1, -1),
    ]
    .into_iter()
    .map(|(a, b, c)| (a, Q::from_int(b), Q::from_int(c)))
    .collect()
}

/// Even and odd `(1,1,1)` plus every cited triple in odd parity.
pub fn default_queries() -> Vec<DerivationQuery> {
    let mut q = vec![DerivationQuery::even_derivations(), DerivationQuery::ints(1, 1, 1, 1)];
    q.extend(table_triples().into_iter().map(|(a, b, c)| DerivationQuery::new(a, b, c, 1)));
    q
}

/// Odd queries whose first entry depends on a family parameter `p`:
/// `1/p`, `p`, `1−p`, `p/(p−1)` and `(p−1)/p`.
pub fn parameter_queries(params: &[Q]) -> Vec<DerivationQuery> {
    let one = Q::one();
    let mut out = Vec::new();
    let mut push = |a: Q, c: i64| {
        let q = DerivationQuery::new(a, Q::one(), Q::from_int(c), 1);
        if !out.contains(&q) {
            out.push(q);
        }
    };
    for p in params {
        push(p.clone(), -1);
        push(&one - p, -1);
        if !p.is_zero() {
            push(&one / p, -1);
            push(&(p - &one) / p, 0);
        }
        if *p != one {
            push(p / &(p - &one), 0);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantProfile {
    pub orbit_dim: usize,
    pub gamma_rank: usize,
    pub derived: (usize, usize),
    pub traceless: bool,
    pub ij: BTreeMap<String, IJInvariantResult>,
    pub derivation_dims: Vec<(String, usize)>,
}

pub fn invariant_profile(
    a: &SuperAlgebra<Q>,
    grid: &[(u32, u32)],
    queries: &[DerivationQuery],
    samples: usize,
    seed: u64,
) -> InvariantProfile {
    InvariantProfile {
        orbit_dim: orbit_dim(a),
        gamma_rank: a.gamma_rank(),
        derived: a.derived_dims(),
        traceless: a.is_traceless(),
        ij: ij_grid(a, grid, samples, seed).into_iter().map(|((i, j), v)| (format!("{},{}", i, j), v)).collect(),
        derivation_dims: queries.iter().map(|q| (q.to_string(), derivation_dim(a, q))).collect(),
    }
}

/// An algebra together with lazily computed invariants, shared by repeated certifier calls.
pub struct Analyzed {
    pub alg: SuperAlgebra<Q>,
    samples: usize,
    seed: u64,
    orbit: OnceCell<usize>,
    gamma_rank: OnceCell<usize>,
    derived: OnceCell<(usize, usize)>,
    traceless: OnceCell<bool>,
    ij_terms: OnceCell<IjTerms>,
    derivations: RefCell<HashMap<DerivationQuery, usize>>,
    functors: OnceCell<Vec<Analyzed>>,
}

impl Analyzed {
    pub fn new(alg: SuperAlgebra<Q>, samples: usize, seed: u64) -> Self {
        Analyzed {
            alg,
            samples,
            seed,
            orbit: OnceCell::new(),
            gamma_rank: OnceCell::new(),
            derived: OnceCell::new(),
            traceless: OnceCell::new(),
            ij_terms: OnceCell::new(),
            derivations: RefCell::new(HashMap::new()),
            functors: OnceCell::new(),
        }
    }

    pub fn orbit_dim(&self) -> usize {
        let d = self.alg.dim();
        *self.orbit.get_or_init(|| d.m * d.m + d.n * d.n - self.derivation_dim(&DerivationQuery::even_derivations()))
    }

    pub fn gamma_rank(&self) -> usize {
        *self.gamma_rank.get_or_init(|| self.alg.gamma_rank())
    }

    pub fn derived(&self) -> (usize, usize) {
        *self.derived.get_or_init(|| self.alg.derived_dims())
    }

    pub fn traceless(&self) -> bool {
        *self.traceless.get_or_init(|| self.alg.is_traceless())
    }

    fn terms(&self, i: u32, j: u32) -> Vec<(Q, Q)> {
        let grid = self.ij_terms.get_or_init(|| ij_terms(&self.alg, &default_grid(), self.samples, self.seed));
        match grid.get(&(i, j)) {
            Some(t) => t.clone(),
            None => ij_terms(&self.alg, &[(i, j)], self.samples, self.seed).remove(&(i, j)).expect("grid entry"),
        }
    }

    pub fn ij(&self, i: u32, j: u32) -> IJInvariantResult {
        ij_from_terms(&self.terms(i, j))
    }

    /// A sampled pair on which `tr (ad x)^i · tr (ad y)^j = c · tr((ad x)^i (ad y)^j)` fails,
    /// as `(lhs, rhs)`.
    pub fn ij_identity_violation(&self, i: u32, j: u32, c: &Q) -> Option<(Q, Q)> {
        self.terms(i, j).into_iter().map(|(n, d)| (n, c * &d)).find(|(n, r)| n != r)
    }

    pub fn derivation_dim(&self, q: &DerivationQuery) -> usize {
        if let Some(&v) = self.derivations.borrow().get(q) {
            return v;
        }
        let v = derivation_dim(&self.alg, q);
        self.derivations.borrow_mut().insert(q.clone(), v);
        v
    }

    pub fn functor(&self, which: Functor) -> &Analyzed {
        let fs = self.functors.get_or_init(|| {
            Functor::ALL.iter().map(|&w| Analyzed::new(self.alg.functor_apply(w), self.samples, self.seed)).collect()
        });
        &fs[Functor::ALL.iter().position(|&w| w == which).expect("functor")]
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Rule {
    OrbitDim,
    GammaVanishing,
    DerivedDims {
        parity: u8,
    },
    DerivationDims(DerivationQuery),
    Traceless,
    IJInvariant {
        i: u32,
        j: u32,
    },
    /// `c_{i,j}(g) = c` makes `tr (ad x)^i · tr (ad y)^j = c · tr((ad x)^i (ad y)^j)` a
    /// polynomial identity on `g`, and so on its orbit closure; `h` violates it.
    IJIdentity {
        i: u32,
        j: u32,
    },
    FunctorRecursion {
        which: Functor,
        inner: Box<NondegenerationCertificate>,
    },
}

/// A checkable reason why `g → h` is impossible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NondegenerationCertificate {
    pub rule: Rule,
    pub lhs_value: String,
    pub rhs_value: String,
    pub human_reason: String,
}

impl NondegenerationCertificate {
    /// Whether the certificate also rules out degenerations from the closure of a whole
    /// family of orbits of `g`. Closed conditions qualify; orbit dimension and
    /// `(i,j)`-values vary inside families and do not.
    pub fn is_family_sound(&self) -> bool {
        match &self.rule {
            Rule::OrbitDim | Rule::IJInvariant { .. } | Rule::IJIdentity { .. } => false,
            Rule::FunctorRecursion { inner, .. } => inner.is_family_sound(),
            _ => true,
        }
    }

    /// Short rule name, e.g. `DerivationDims` or `F/Traceless`.
    pub fn rule_name(&self) -> String {
        match &self.rule {
            Rule::OrbitDim => "OrbitDim".into(),
            Rule::GammaVanishing => "GammaVanishing".into(),
            Rule::DerivedDims { .. } => "DerivedDims".into(),
            Rule::DerivationDims(_) => "DerivationDims".into(),
            Rule::Traceless => "Traceless".into(),
            Rule::IJInvariant { .. } => "IJInvariant".into(),
            Rule::IJIdentity { .. } => "IJIdentity".into(),
            Rule::FunctorRecursion { which, inner } => format!("{}/{}", which, inner.rule_name()),
        }
    }

    /// Re-evaluates the cited invariant on both algebras.
    pub fn recheck(&self, g: &Analyzed, h: &Analyzed) -> bool {
        let values = match &self.rule {
            Rule::OrbitDim => (g.orbit_dim().to_string(), h.orbit_dim().to_string()),
            Rule::GammaVanishing => (g.gamma_rank().to_string(), h.gamma_rank().to_string()),
            Rule::DerivedDims { .. } => (format!("{:?}", g.derived()), format!("{:?}", h.derived())),
            Rule::DerivationDims(q) => (g.derivation_dim(q).to_string(), h.derivation_dim(q).to_string()),
            Rule::Traceless => (g.traceless().to_string(), h.traceless().to_string()),
            Rule::IJInvariant { i, j } => (g.ij(*i, *j).to_string(), h.ij(*i, *j).to_string()),
            Rule::IJIdentity { i, j } => match g.ij(*i, *j) {
                IJInvariantResult::Exists(c) => match h.ij_identity_violation(*i, *j, &c) {
                    Some((l, r)) => (c.to_string(), format!("{} ≠ {}", l, r)),
                    None => return false,
                },
                IJInvariantResult::NotDefined => return false,
            },
            Rule::FunctorRecursion { which, inner } => {
                return inner.recheck(g.functor(*which), h.functor(*which));
            }
        };
        values == (self.lhs_value.clone(), self.rhs_value.clone())
    }
}

impl fmt::Display for NondegenerationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.human_reason)
    }
}

#[derive(Debug, Clone)]
pub struct CertifierConfig {
    pub queries: Vec<DerivationQuery>,
    pub grid: Vec<(u32, u32)>,
    pub depth: u32,
}

impl Default for CertifierConfig {
    fn default() -> Self {
        CertifierConfig { queries: default_queries(), grid: default_grid(), depth: 1 }
    }
}

impl CertifierConfig {
    /// Default queries plus those built from the given parameter values.
    pub fn with_parameters(params: &[Q]) -> Self {
        let mut c = CertifierConfig::default();
        for q in parameter_queries(params) {
            if !c.queries.contains(&q) {
                c.queries.push(q);
            }
        }
        c
    }
}

fn cert(rule: Rule, l: impl ToString, r: impl ToString, reason: String) -> Option<NondegenerationCertificate> {
    Some(NondegenerationCertificate { rule, lhs_value: l.to_string(), rhs_value: r.to_string(), human_reason: reason })
}

/// Some invariant other than orbit dimension differs (undefined `(i,j)`-values never count).
fn separated(g: &Analyzed, h: &Analyzed, cfg: &CertifierConfig) -> Option<String> {
    if g.gamma_rank() != h.gamma_rank() {
        return Some("rk Γ".into());
    }
    if g.derived() != h.derived() {
        return Some("derived dimensions".into());
    }
    if g.traceless() != h.traceless() {
        return Some("tracelessness".into());
    }
    for q in &cfg.queries {
        if g.derivation_dim(q) != h.derivation_dim(q) {
            return Some(format!("dim {}", q));
        }
    }
    for &(i, j) in &cfg.grid {
        if let (IJInvariantResult::Exists(a), IJInvariantResult::Exists(b)) = (g.ij(i, j), h.ij(i, j)) {
            if a != b {
                return Some(format!("c_{{{},{}}}", i, j));
            }
        }
    }
    None
}

/// First rule showing that `g` cannot degenerate to `h`. Rules are tried in this order:
/// smaller orbit, Γ vanishing, derived dimensions, derivation dimensions, tracelessness,
/// `(i,j)`-invariants, the identity behind `c_{i,j}(g)`, equal orbits of distinct algebras, then
/// the same on `A`, `ab`, `F`.
pub fn certify(g: &Analyzed, h: &Analyzed, cfg: &CertifierConfig, depth: u32) -> Option<NondegenerationCertificate> {
    if g.alg.dim() != h.alg.dim() || g.alg.same_constants(&h.alg) {
        return None;
    }
    let (og, oh) = (g.orbit_dim(), h.orbit_dim());
    if og < oh {
        return cert(Rule::OrbitDim, og, oh, format!("dim O(g) = {} < {} = dim O(h)", og, oh));
    }
    if g.gamma_rank() == 0 && h.gamma_rank() > 0 {
        return cert(
            Rule::GammaVanishing,
            g.gamma_rank(),
            h.gamma_rank(),
            format!("Γ(g) = 0 but rk Γ(h) = {}", h.gamma_rank()),
        );
    }
    let (dg, dh) = (g.derived(), h.derived());
    for (p, (a, b)) in [(0u8, (dg.0, dh.0)), (1, (dg.1, dh.1))] {
        if a < b {
            return cert(
                Rule::DerivedDims { parity: p },
                format!("{:?}", dg),
                format!("{:?}", dh),
                format!("dim (g¹)_{} = {} < {} = dim (h¹)_{}", p, a, b, p),
            );
        }
    }
    for q in &cfg.queries {
        let (a, b) = (g.derivation_dim(q), h.derivation_dim(q));
        if a > b {
            return cert(Rule::DerivationDims(q.clone()), a, b, format!("dim {}(g) = {} > {} = dim {}(h)", q, a, b, q));
        }
    }
    if g.traceless() && !h.traceless() {
        return cert(Rule::Traceless, true, false, "g is traceless but h is not".into());
    }
    for &(i, j) in &cfg.grid {
        if let (IJInvariantResult::Exists(a), IJInvariantResult::Exists(b)) = (g.ij(i, j), h.ij(i, j)) {
            if a != b {
                return cert(
                    Rule::IJInvariant { i, j },
                    &a,
                    &b,
                    format!("c_{{{},{}}}(g) = {} but c_{{{},{}}}(h) = {}", i, j, a, i, j, b),
                );
            }
        }
    }
    for &(i, j) in &cfg.grid {
        if let IJInvariantResult::Exists(c) = g.ij(i, j) {
            if let Some((l, r)) = h.ij_identity_violation(i, j, &c) {
                return cert(
                    Rule::IJIdentity { i, j },
                    &c,
                    format!("{} ≠ {}", l, r),
                    format!(
                        "c_{{{},{}}}(g) = {} but tr(ad x)^{} tr(ad y)^{} = {} ≠ {} = {}·tr((ad x)^{}(ad y)^{}) on h",
                        i, j, c, i, j, l, r, c, i, j
                    ),
                );
            }
        }
    }
    if og == oh {
        if let Some(what) = separated(g, h, cfg) {
            return cert(
                Rule::OrbitDim,
                og,
                oh,
                format!("dim O(g) = dim O(h) = {} and the algebras differ in {}", og, what),
            );
        }
    }
    if depth > 0 {
        for w in Functor::ALL {
            if let Some(inner) = certify(g.functor(w), h.functor(w), cfg, depth - 1) {
                let reason = format!("{}(g) ↛ {}(h): {}", w, w, inner.human_reason);
                let (l, r) = (inner.lhs_value.clone(), inner.rhs_value.clone());
                return cert(Rule::FunctorRecursion { which: w, inner: Box::new(inner) }, l, r, reason);
            }
        }
    }
    None
}

/// Convenience wrapper on plain algebras with the default configuration.
pub fn certify_nondegeneration(
    g: &SuperAlgebra<Q>,
    h: &SuperAlgebra<Q>,
    depth: u32,
) -> Option<NondegenerationCertificate> {
    let ga = Analyzed::new(g.clone(), DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
    let ha = Analyzed::new(h.clone(), DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
    certify(&ga, &ha, &CertifierConfig::default(), depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn ls(name: &str, p: &[Q]) -> SuperAlgebra<Q> {
        Catalog::builtin().instantiate(name, p).unwrap()
    }

    #[test]
    fn derivation_dimensions() {
        // Both orders of every pair are imposed, so D(1,1,0) also forces D[x,y] = ±[x,Dy].
        assert_eq!(derivation_dim(&ls("LS9", &[]), &DerivationQuery::ints(1, 1, 0, 1)), 0);
        assert_eq!(derivation_dim(&ls("LS14", &[Q::zero()]), &DerivationQuery::ints(0, 1, -1, 1)), 2);
        assert_eq!(derivation_dim(&ls("LS0", &[]), &DerivationQuery::ints(1, 1, 1, 0)), 8);
        assert_eq!(derivation_dim(&ls("LS5", &[]), &DerivationQuery::ints(1, 1, 1, 0)), 2);
        assert_eq!(derivation_dim(&ls("LS6", &[Q::from_int(-1)]), &DerivationQuery::ints(0, 1, -1, 1)), 2);
    }

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dim(&ls("LS13", &[Q::from_int(3), Q::from_int(3)])), 2);
        assert_eq!(orbit_dim(&ls("LS5", &[])), 6);
        assert_eq!(orbit_dim(&ls("LS0", &[])), 0);
    }

    #[test]
    fn ij_values() {
        let v = |n: &str, p: &[Q], i, j| ij_invariant(&ls(n, p), i, j, DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
        assert_eq!(v("LS8", &[], 1, 1), IJInvariantResult::Exists(Q::one()));
        assert_eq!(v("LS1", &[], 1, 1), IJInvariantResult::NotDefined);
        assert_eq!(v("LS6", &[Q::from_int(2)], 1, 1), IJInvariantResult::Exists(Q::ratio(9, 5)));
        assert_eq!(v("LS19", &[], 2, 2), IJInvariantResult::Exists(Q::from_int(2)));
    }

    #[test]
    fn certifier_rules() {
        let c = certify_nondegeneration(&ls("LS5", &[]), &ls("LS1", &[]), 1).unwrap();
        assert_eq!(c.rule, Rule::GammaVanishing);
        assert!(c.is_family_sound());
        let c = certify_nondegeneration(&ls("LS0", &[]), &ls("LS3", &[]), 1).unwrap();
        assert_eq!(c.rule, Rule::OrbitDim);
        for name in ["LS19", "LS0", "LS12"] {
            assert!(certify_nondegeneration(&ls(name, &[]), &ls(name, &[]), 1).is_none());
        }
    }

    #[test]
    fn ij_identity_separates_ls9_from_ls6_minus_one() {
        let g = Analyzed::new(ls("LS9", &[]), DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
        let h = Analyzed::new(ls("LS6", &[Q::from_int(-1)]), DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
        assert_eq!(h.ij(1, 1), IJInvariantResult::NotDefined);
        let c = certify(&g, &h, &CertifierConfig::default(), 1).unwrap();
        assert_eq!(c.rule, Rule::IJIdentity { i: 1, j: 1 });
        assert_eq!(c.lhs_value, "2");
        assert!(c.recheck(&g, &h));
        assert!(!c.is_family_sound());
    }

    #[test]
    fn certificates_recheck() {
        let g = Analyzed::new(ls("LS5", &[]), DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
        let h = Analyzed::new(ls("LS4", &[]), DEFAULT_IJ_SAMPLES, DEFAULT_SEED);
        let c = certify(&g, &h, &CertifierConfig::default(), 1).unwrap();
        assert!(c.recheck(&g, &h));
    }

    #[test]
    fn profile_queries_are_labelled() {
        let p = invariant_profile(&ls("LS9", &[]), &default_grid(), &default_queries(), 3, 1);
        assert_eq!(p.ij.len(), 9);
        assert!(p.derivation_dims.iter().any(|(k, v)| k == "D(1,1,1)_0" && *v == 3));
    }
}
