//! Site functionals, boundary cocycles and Chevalley–Eilenberg cohomology of
//! finite corner windows.
//!
//! Sign conventions:
//! `(d eta)(X, Y) = eta([X, Y])` and
//! `(d omega)(X, Y, Z) = omega([X,Y], Z) + omega([Y,Z], X) + omega([Z,X], Y)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{BasisSymbol, Element, GaussRational, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseRow};
use crate::sample::all_symbols;

/// Nonzero entries `(q, x_pq)` in row `p` of an element's matrix.
fn row_entries(x: &Element, p: u32) -> Vec<(u32, Scalar)> {
    let mut row: BTreeMap<u32, Scalar> = BTreeMap::new();
    for (s, c) in x.terms() {
        let q = match *s {
            BasisSymbol::Fwd(n) => p.checked_sub(n),
            BasisSymbol::Bwd(n) => Some(p + n),
            BasisSymbol::Corner(a, b) => (a == p).then_some(b),
        };
        if let Some(q) = q {
            *row.entry(q).or_default() += c;
        }
    }
    row.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `<e_p, x y e_q>` summed over intermediate sites, without the structure constants.
fn product_entry(x: &Element, y: &Element, p: u32, q: u32) -> Scalar {
    let mut out = Scalar::zero();
    for (k, xpk) in row_entries(x, p) {
        let ykq = y.entry(k, q);
        if !ykq.is_zero() {
            out += &(&xpk * &ykq);
        }
    }
    out
}

/// A finitely supported functional `A -> sum c_pq <e_p, A e_q>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Functional {
    coeffs: BTreeMap<(u32, u32), Scalar>,
}

impl Functional {
    pub fn new<I: IntoIterator<Item = ((u32, u32), Scalar)>>(coeffs: I) -> Self {
        let mut f = Functional::default();
        for ((p, q), c) in coeffs {
            let slot = f.coeffs.entry((p, q)).or_default();
            *slot += &c;
            if slot.is_zero() {
                f.coeffs.remove(&(p, q));
            }
        }
        f
    }

    /// The site functional `phi_j(A) = <e_j, A e_j>`.
    pub fn site(j: u32) -> Self {
        Self::new([((j, j), Scalar::one())])
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, x: &Element) -> Scalar {
        let mut out = Scalar::zero();
        for ((p, q), c) in &self.coeffs {
            let e = x.entry(*p, *q);
            if !e.is_zero() {
                out += &(c * &e);
            }
        }
        out
    }

    /// `(d eta)(x, y) = eta([x, y])`, evaluated through matrix coefficients of
    /// the two products rather than through the structure constants.
    pub fn coboundary(&self, x: &Element, y: &Element) -> Scalar {
        let mut out = Scalar::zero();
        for ((p, q), c) in &self.coeffs {
            let v = &product_entry(x, y, *p, *q) - &product_entry(y, x, *p, *q);
            if !v.is_zero() {
                out += &(c * &v);
            }
        }
        out
    }

    /// The diagonal part `sum_j c_jj phi_j`.
    pub fn diagonal(&self) -> Functional {
        Functional::new(self.coeffs.iter().filter(|((p, q), _)| p == q).map(|(k, c)| (*k, c.clone())))
    }

    pub fn sub(&self, rhs: &Functional) -> Functional {
        Functional::new(
            self.coeffs
                .iter()
                .map(|(k, c)| (*k, c.clone()))
                .chain(rhs.coeffs.iter().map(|(k, c)| (*k, -c))),
        )
    }
}

/// `omega_j(x, y) = <e_j, [x, y] e_j>`.
pub fn omega(j: u32, x: &Element, y: &Element) -> Scalar {
    x.commutator(y).entry(j, j)
}

/// Antisymmetric table of values on pairs of basis symbols; pairs absent from
/// the table evaluate to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitCochain {
    table: BTreeMap<(BasisSymbol, BasisSymbol), Scalar>,
}

impl ExplicitCochain {
    /// Builds the table, rejecting non-antisymmetric input.
    pub fn new<I: IntoIterator<Item = ((BasisSymbol, BasisSymbol), Scalar)>>(entries: I) -> Result<Self> {
        let mut table: BTreeMap<(BasisSymbol, BasisSymbol), Scalar> = BTreeMap::new();
        for ((s, t), v) in entries {
            if s == t {
                if !v.is_zero() {
                    return Err(Error::Invalid(format!("cochain value on ({s}, {s}) must vanish")));
                }
                continue;
            }
            let (key, val) = if s < t { ((s, t), v) } else { ((t, s), -&v) };
            match table.get(&key) {
                Some(old) if *old != val => {
                    return Err(Error::Invalid(format!("cochain is not antisymmetric on ({}, {})", key.0, key.1)));
                }
                _ => {
                    if !val.is_zero() {
                        table.insert(key, val);
                    }
                }
            }
        }
        Ok(Self { table })
    }

    fn value(&self, s: BasisSymbol, t: BasisSymbol) -> Scalar {
        match s.cmp(&t) {
            std::cmp::Ordering::Equal => Scalar::zero(),
            std::cmp::Ordering::Less => self.table.get(&(s, t)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.table.get(&(t, s)).map(|v| -v).unwrap_or_default(),
        }
    }
}

/// A 2-cochain on the boundary algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cochain2 {
    /// `(x, y) -> psi([x, y])`.
    FromFunctional(Functional),
    Explicit(ExplicitCochain),
}

impl Cochain2 {
    pub fn boundary(j: u32) -> Self {
        Cochain2::FromFunctional(Functional::site(j))
    }

    pub fn eval(&self, x: &Element, y: &Element) -> Scalar {
        match self {
            Cochain2::FromFunctional(f) => f.eval(&x.commutator(y)),
            Cochain2::Explicit(t) => {
                let mut out = Scalar::zero();
                for (s, a) in x.terms() {
                    for (u, b) in y.terms() {
                        let v = t.value(*s, *u);
                        if !v.is_zero() {
                            out += &(&(a * b) * &v);
                        }
                    }
                }
                out
            }
        }
    }
}

/// `omega([x,y], z) + omega([y,z], x) + omega([z,x], y)`.
pub fn d2_check(omega: &Cochain2, x: &Element, y: &Element, z: &Element) -> Scalar {
    let a = omega.eval(&x.commutator(y), z);
    let b = omega.eval(&y.commutator(z), x);
    let c = omega.eval(&z.commutator(x), y);
    &(&a + &b) + &c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessWitness {
    pub site: u32,
    pub window: u32,
    /// The primitive `phi_j` with `omega_j = d phi_j`.
    pub primitive: Functional,
    pub pairs_checked: usize,
    /// Pairs on which `omega_j` and `d phi_j` disagree.
    pub residual: usize,
}

/// Checks `omega_j = d phi_j` on every ordered pair of basis symbols with
/// indices at most `window`.
pub fn exactness_witness(j: u32, window: u32) -> ExactnessWitness {
    let phi = Functional::site(j);
    let symbols = all_symbols(window);
    let mut residual = 0;
    let mut pairs_checked = 0;
    for s in &symbols {
        let x = Element::from(*s);
        for t in &symbols {
            let y = Element::from(*t);
            pairs_checked += 1;
            if omega(j, &x, &y) != phi.coboundary(&x, &y) {
                residual += 1;
            }
        }
    }
    ExactnessWitness { site: j, window, primitive: phi, pairs_checked, residual }
}

/// `M[j][k] = omega_k(C(j,0), C(0,j))` for `0 <= j, k <= big_j`.
pub fn separating_matrix(big_j: u32) -> Vec<Vec<Scalar>> {
    (0..=big_j)
        .map(|j| {
            let bracket = Element::from(BasisSymbol::Corner(j, 0)).commutator(&BasisSymbol::Corner(0, j).into());
            (0..=big_j).map(|k| bracket.entry(k, k)).collect()
        })
        .collect()
}

/// Rows `m = 1..=big_j+1`: `omega_k(U^m, U*^m)` for `0 <= k <= big_j`.
pub fn independence_matrix(big_j: u32) -> Vec<Vec<Scalar>> {
    (1..=big_j + 1)
        .map(|m| {
            let bracket = Element::from(BasisSymbol::Fwd(m)).commutator(&BasisSymbol::Bwd(m).into());
            (0..=big_j).map(|k| bracket.entry(k, k)).collect()
        })
        .collect()
}

/// Exact rank of a matrix of `eps`-free scalars.
pub fn scalar_matrix_rank(m: &[Vec<Scalar>]) -> Result<usize> {
    Ok(linalg::rank(constant_matrix(m)?))
}

/// Solves `sum_k alpha_k omega_k(U^m, U*^m) = 0` for all rows; returns the
/// unique solution (all zeros when the matrix is invertible).
pub fn independence_solution(big_j: u32) -> Result<Option<Vec<GaussRational>>> {
    let m = constant_matrix(&independence_matrix(big_j))?;
    let zeros = vec![GaussRational::zero(); m.len()];
    Ok(linalg::solve(&m, &zeros))
}

fn constant_matrix(m: &[Vec<Scalar>]) -> Result<Vec<Vec<GaussRational>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    if s.is_constant() {
                        Ok(s.coefficient(0))
                    } else {
                        Err(Error::Invalid(format!("matrix entry {s} depends on eps")))
                    }
                })
                .collect()
        })
        .collect()
}

/// A Lie algebra on `dim` basis vectors given by its structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `[e_i, e_j]` for `i < j`; absent means zero.
    bracket: BTreeMap<(usize, usize), SparseRow<GaussRational>>,
}

type Bracket = ((usize, usize), SparseRow<GaussRational>);

impl FiniteLieAlgebra {
    /// Builds the algebra and verifies antisymmetry and the Jacobi identity on
    /// every basis triple.
    pub fn new(labels: Vec<String>, entries: impl IntoIterator<Item = Bracket>) -> Result<Self> {
        let dim = labels.len();
        let mut bracket: BTreeMap<(usize, usize), SparseRow<GaussRational>> = BTreeMap::new();
        for ((i, j), mut v) in entries {
            if i >= dim || j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Invalid(format!("bracket index out of range for dimension {dim}")));
            }
            v.retain(|(_, c)| !c.is_zero());
            v.sort_by_key(|e| e.0);
            if i == j {
                if !v.is_empty() {
                    return Err(Error::Invalid(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let (key, val) = if i < j { ((i, j), v) } else { ((j, i), v.into_iter().map(|(k, c)| (k, -c)).collect()) };
            if let Some(old) = bracket.get(&key) {
                if *old != val {
                    return Err(Error::Invalid(format!("bracket table is not antisymmetric at ({}, {})", key.0, key.1)));
                }
            } else if !val.is_empty() {
                bracket.insert(key, val);
            }
        }
        let alg = Self { dim, labels, bracket };
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(Error::Invalid(format!("Jacobi identity fails on basis triple ({i}, {j}, {k})")));
        }
        Ok(alg)
    }

    /// Abelian algebra with the given basis labels.
    pub fn abelian(labels: Vec<String>) -> Self {
        Self { dim: labels.len(), labels, bracket: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.is_empty()
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket(&self, i: usize, j: usize) -> SparseRow<GaussRational> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => vec![],
            std::cmp::Ordering::Less => self.bracket.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => {
                self.bracket.get(&(j, i)).map(|v| v.iter().map(|(k, c)| (*k, -c)).collect()).unwrap_or_default()
            }
        }
    }

    /// `[v, e_k]` for a sparse vector `v`.
    fn bracket_vec(&self, v: &SparseRow<GaussRational>, k: usize) -> BTreeMap<usize, GaussRational> {
        let mut out: BTreeMap<usize, GaussRational> = BTreeMap::new();
        for (i, c) in v {
            for (l, d) in self.bracket(*i, k) {
                let slot = out.entry(l).or_insert_with(GaussRational::zero);
                *slot = &*slot + &(c * &d);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// First basis triple `i < j < k` on which the Jacobiator is nonzero.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    // [[i,j],k] + [[j,k],i] + [[k,i],j]
                    let mut acc: BTreeMap<usize, GaussRational> = BTreeMap::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, v) in self.bracket_vec(&self.bracket(a, b), c) {
                            let slot = acc.entry(l).or_insert_with(GaussRational::zero);
                            *slot = &*slot + &v;
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// The closed corner window `span{C(a,b) : a, b <= m}`, basis ordered
/// lexicographically by `(a, b)`.
pub fn corner_window(m: u32) -> Result<FiniteLieAlgebra> {
    let symbols: Vec<BasisSymbol> =
        (0..=m).flat_map(|a| (0..=m).map(move |b| BasisSymbol::Corner(a, b))).collect();
    let index: BTreeMap<BasisSymbol, usize> = symbols.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut entries = Vec::new();
    for (i, s) in symbols.iter().enumerate() {
        for (j, t) in symbols.iter().enumerate().skip(i + 1) {
            let br = Element::from(*s).commutator(&Element::from(*t));
            let mut v: SparseRow<GaussRational> = Vec::new();
            for (u, c) in br.terms() {
                let k = *index
                    .get(u)
                    .ok_or_else(|| Error::Invalid(format!("corner window {m} is not closed under brackets")))?;
                v.push((k, c.coefficient(0)));
            }
            entries.push(((i, j), v));
        }
    }
    FiniteLieAlgebra::new(symbols.iter().map(ToString::to_string).collect(), entries)
}

/// Index of the pair `i < j` in the lexicographic basis of the second exterior power.
fn pair_index(i: usize, j: usize, dim: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

fn pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |i| (i + 1..dim).map(move |j| (i, j)))
}

/// Coordinates of `omega(e_l, e_k)` on the pair basis, as `(index, sign)`.
fn pair_coord(l: usize, k: usize, dim: usize) -> Option<(usize, bool)> {
    match l.cmp(&k) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => Some((pair_index(l, k, dim), true)),
        std::cmp::Ordering::Greater => Some((pair_index(k, l, dim), false)),
    }
}

fn add_into(acc: &mut BTreeMap<usize, GaussRational>, k: usize, v: &GaussRational) {
    let slot = acc.entry(k).or_insert_with(GaussRational::zero);
    *slot = &*slot + v;
}

fn to_row(acc: BTreeMap<usize, GaussRational>) -> SparseRow<GaussRational> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Column `k` of `d1`: the 2-cochain `(x_i, x_j) -> c_ij^k`.
fn d1_column(alg: &FiniteLieAlgebra, k: usize) -> SparseRow<GaussRational> {
    let mut acc = BTreeMap::new();
    for (i, j) in pairs(alg.dim) {
        if let Some((_, c)) = alg.bracket(i, j).into_iter().find(|(l, _)| *l == k) {
            add_into(&mut acc, pair_index(i, j, alg.dim), &c);
        }
    }
    to_row(acc)
}

/// Row of `d2` for the triple `(i, j, k)`, over the pair basis.
fn d2_row(alg: &FiniteLieAlgebra, i: usize, j: usize, k: usize) -> SparseRow<GaussRational> {
    let mut acc = BTreeMap::new();
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        for (l, v) in alg.bracket(a, b) {
            if let Some((idx, positive)) = pair_coord(l, c, alg.dim) {
                add_into(&mut acc, idx, &if positive { v } else { -v });
            }
        }
    }
    to_row(acc)
}

fn dot(a: &SparseRow<GaussRational>, b: &SparseRow<GaussRational>) -> GaussRational {
    let mut out = GaussRational::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out = &out + &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Second cohomology of a finite corner window, computed by brute force.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Report {
    #[serde(rename = "M")]
    pub m: u32,
    pub dim: usize,
    pub rank_d1: usize,
    pub dim_ker_d2: usize,
    pub betti2: usize,
    /// Whether each `omega_j`, `j <= M`, lies in the image of `d1`.
    pub omega_exactness: Vec<bool>,
    /// `d2 d1 = 0` held entrywise.
    #[serde(skip)]
    pub complex_ok: bool,
    #[serde(skip)]
    pub rank_d2: usize,
    /// Basis of `ker d2` over the lexicographic pair basis.
    #[serde(skip)]
    pub cocycle_basis: Vec<SparseRow<GaussRational>>,
}

pub const H2_MAX_WINDOW: u32 = 5;

pub fn truncated_h2(m: u32) -> Result<H2Report> {
    if m == 0 || m > H2_MAX_WINDOW {
        return Err(Error::Invalid(format!("H2 window must satisfy 1 <= M <= {H2_MAX_WINDOW}, got {m}")));
    }
    let alg = corner_window(m)?;
    let dim = alg.dim();
    let npairs = dim * (dim - 1) / 2;

    let d1_cols: Vec<SparseRow<GaussRational>> = (0..dim).map(|k| d1_column(&alg, k)).collect();
    let mut image = Echelon::new(npairs);
    for col in &d1_cols {
        image.insert(col.clone());
    }
    let rank_d1 = image.rank();

    let mut d2 = Echelon::new(npairs);
    let mut complex_ok = true;
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let row = d2_row(&alg, i, j, k);
                if row.is_empty() {
                    continue;
                }
                if d1_cols.iter().any(|c| !dot(&row, c).is_zero()) {
                    complex_ok = false;
                }
                d2.insert(row);
            }
        }
    }
    let rank_d2 = d2.rank();
    let dim_ker_d2 = npairs - rank_d2;
    let cocycle_basis = d2.kernel();

    let omega_exactness = (0..=m)
        .map(|j| {
            let v: SparseRow<GaussRational> = pairs(dim)
                .enumerate()
                .filter_map(|(idx, (a, b))| {
                    let x = symbol_of(&alg, a);
                    let y = symbol_of(&alg, b);
                    let val = omega(j, &x, &y);
                    (!val.is_zero()).then(|| (idx, val.coefficient(0)))
                })
                .collect();
            image.contains(v)
        })
        .collect();

    Ok(H2Report {
        m,
        dim,
        rank_d1,
        dim_ker_d2,
        betti2: dim_ker_d2 - rank_d1,
        omega_exactness,
        complex_ok,
        rank_d2,
        cocycle_basis,
    })
}

fn symbol_of(alg: &FiniteLieAlgebra, idx: usize) -> Element {
    let n = (alg.dim() as f64).sqrt().round() as u32;
    let idx = idx as u32;
    BasisSymbol::Corner(idx / n, idx % n).into()
}

/// Data for a central extension of an abelian algebra by a skew form `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub base: FiniteLieAlgebra,
    pub c: Vec<Vec<GaussRational>>,
}

/// `base (+) C Z` with `[X + aZ, Y + bZ] = c(X, Y) Z`.
pub fn central_extension(spec: &ExtensionSpec) -> Result<FiniteLieAlgebra> {
    let d = spec.base.dim();
    if !spec.base.is_abelian() {
        return Err(Error::Invalid("central extension requires an abelian base algebra".into()));
    }
    if spec.c.len() != d || spec.c.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: spec.c.len() });
    }
    for i in 0..d {
        for j in 0..d {
            if spec.c[i][j] != -&spec.c[j][i] {
                return Err(Error::Invalid(format!("extension form is not antisymmetric at ({i}, {j})")));
            }
        }
    }
    let mut labels = spec.base.labels().to_vec();
    labels.push("Z".into());
    let entries = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), vec![(d, spec.c[i][j].clone())]));
    FiniteLieAlgebra::new(labels, entries)
}

/// Outcome of checking that `psi([X,Y])` is the coboundary of `psi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalReduction {
    pub window: u32,
    pub pairs_checked: usize,
    /// Pairs where `psi([X,Y]) != (d psi)(X,Y)`.
    pub coboundary_residual: usize,
    /// Pairs where `omega_psi - sum_j c_jj omega_j` differs from
    /// `d(psi - sum_j c_jj phi_j)`.
    pub remainder_residual: usize,
    /// `(j, c_jj)` for the diagonal part.
    pub diagonal: Vec<(u32, String)>,
}

impl DiagonalReduction {
    pub fn holds(&self) -> bool {
        self.coboundary_residual == 0 && self.remainder_residual == 0
    }
}

pub fn diagonal_reduction_check(psi: &Functional, window: u32) -> DiagonalReduction {
    let diag = psi.diagonal();
    let off = psi.sub(&diag);
    let sites: BTreeSet<u32> = diag.coeffs().map(|((j, _), _)| *j).collect();
    let symbols = all_symbols(window);
    let (mut pairs_checked, mut coboundary_residual, mut remainder_residual) = (0, 0, 0);
    for s in &symbols {
        let x = Element::from(*s);
        for t in &symbols {
            let y = Element::from(*t);
            pairs_checked += 1;
            let br = x.commutator(&y);
            let omega_psi = psi.eval(&br);
            if omega_psi != psi.coboundary(&x, &y) {
                coboundary_residual += 1;
            }
            let diag_part = diag.eval(&br);
            if &omega_psi - &diag_part != off.coboundary(&x, &y) {
                remainder_residual += 1;
            }
        }
    }
    DiagonalReduction {
        window,
        pairs_checked,
        coboundary_residual,
        remainder_residual,
        diagonal: diag
            .coeffs()
            .filter(|((j, _), _)| sites.contains(j))
            .map(|((j, _), c)| (*j, c.to_string()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisSymbol::{Bwd, Corner, Fwd};

    fn c(a: u32, b: u32) -> Element {
        Corner(a, b).into()
    }

    fn ints(m: &[Vec<Scalar>]) -> Vec<Vec<i64>> {
        m.iter()
            .map(|r| r.iter().map(|s| s.coefficient(0).re.to_integer().try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn omega_examples() {
        assert!(omega(1, &c(1, 0), &c(0, 1)).is_one());
        assert_eq!(omega(0, &c(1, 0), &c(0, 1)), Scalar::from_int(-1));
        let x = &c(2, 3) + &Element::from(Fwd(1));
        assert!(omega(3, &x, &x).is_zero());
    }

    #[test]
    fn coboundary_route_agrees_with_structure_constants() {
        let phi = Functional::site(2);
        let x = &Element::from(Fwd(2)) + &c(0, 1);
        let y = &Element::from(Bwd(3)) + &c(2, 0);
        assert_eq!(phi.coboundary(&x, &y), omega(2, &x, &y));
    }

    #[test]
    fn d2_vanishes_on_samples() {
        let w1 = Cochain2::boundary(1);
        assert!(d2_check(&w1, &c(1, 0), &c(0, 1), &c(0, 0)).is_zero());
        let w0 = Cochain2::boundary(0);
        assert!(d2_check(&w0, &Fwd(1).into(), &Fwd(2).into(), &Fwd(3).into()).is_zero());
    }

    #[test]
    fn explicit_cochain_antisymmetry() {
        let ok = ExplicitCochain::new([((Corner(0, 1), Corner(1, 0)), Scalar::one())]).unwrap();
        let w = Cochain2::Explicit(ok);
        assert_eq!(w.eval(&c(1, 0), &c(0, 1)), Scalar::from_int(-1));
        let bad = ExplicitCochain::new([
            ((Corner(0, 1), Corner(1, 0)), Scalar::one()),
            ((Corner(1, 0), Corner(0, 1)), Scalar::one()),
        ]);
        assert!(bad.is_err());
        assert!(ExplicitCochain::new([((Fwd(1), Fwd(1)), Scalar::one())]).is_err());
    }

    #[test]
    fn exactness_witnesses() {
        for (j, w) in [(1, 5), (0, 3), (4, 6)] {
            let wit = exactness_witness(j, w);
            assert_eq!(wit.residual, 0);
            assert_eq!(wit.primitive, Functional::site(j));
        }
    }

    #[test]
    fn separating_matrix_j2() {
        assert_eq!(ints(&separating_matrix(2)), vec![vec![0, 0, 0], vec![-1, 1, 0], vec![-1, 0, 1]]);
    }

    #[test]
    fn independence_matrix_j2() {
        let m = independence_matrix(2);
        assert_eq!(ints(&m), vec![vec![-1, 0, 0], vec![-1, -1, 0], vec![-1, -1, -1]]);
        assert_eq!(scalar_matrix_rank(&m), Ok(3));
        let alpha = independence_solution(2).unwrap().unwrap();
        assert!(alpha.iter().all(GaussRational::is_zero));
    }

    #[test]
    fn h2_small_windows() {
        let r1 = truncated_h2(1).unwrap();
        assert_eq!((r1.dim, r1.rank_d1, r1.betti2), (4, 3, 0));
        assert!(r1.complex_ok);
        assert!(r1.omega_exactness.iter().all(|&b| b));
        let r2 = truncated_h2(2).unwrap();
        assert_eq!((r2.dim, r2.rank_d1, r2.betti2), (9, 8, 0));
        assert_eq!(r2.cocycle_basis.len(), r2.dim_ker_d2);
        assert!(truncated_h2(0).is_err());
        assert!(truncated_h2(6).is_err());
    }

    #[test]
    fn heisenberg_extension() {
        let base = FiniteLieAlgebra::abelian(vec!["x".into(), "y".into(), "w".into()]);
        let mut form = vec![vec![GaussRational::zero(); 3]; 3];
        form[0][1] = GaussRational::one();
        form[1][0] = GaussRational::from_int(-1);
        let h = central_extension(&ExtensionSpec { base: base.clone(), c: form.clone() }).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(h.bracket(0, 1), vec![(3, GaussRational::one())]);
        assert_eq!(h.bracket(1, 0), vec![(3, GaussRational::from_int(-1))]);
        let zero = central_extension(&ExtensionSpec { base: base.clone(), c: vec![vec![GaussRational::zero(); 3]; 3] })
            .unwrap();
        assert!(zero.is_abelian());
        form[1][0] = GaussRational::one();
        assert!(central_extension(&ExtensionSpec { base, c: form }).is_err());
    }

    #[test]
    fn non_abelian_base_is_rejected() {
        let base = corner_window(1).unwrap();
        let c = vec![vec![GaussRational::zero(); 4]; 4];
        assert!(central_extension(&ExtensionSpec { base, c }).is_err());
    }

    #[test]
    fn jacobi_failure_is_detected() {
        // [e0,e1] = e2, [e1,e2] = e0, [e0,e2] = e0 violates Jacobi.
        let labels = (0..3).map(|i| format!("e{i}")).collect();
        let one = GaussRational::one;
        let bad = FiniteLieAlgebra::new(
            labels,
            [((0, 1), vec![(2, one())]), ((1, 2), vec![(0, one())]), ((0, 2), vec![(0, one())])],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn diagonal_reduction_samples() {
        for psi in [
            Functional::site(2),
            Functional::new([((0, 1), Scalar::one())]),
            Functional::new([((0, 0), Scalar::from_int(3)), ((1, 2), Scalar::eps()), ((2, 1), Scalar::from_int(-2))]),
        ] {
            let r = diagonal_reduction_check(&psi, 5);
            assert!(r.holds(), "{r:?}");
        }
    }
}
