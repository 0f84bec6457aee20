use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg;

use super::scalar::{GaussRational, Scalar};
use super::symbol::{product, BasisSymbol, Corner};

/// A finite linear combination of basis symbols with [`Scalar`] coefficients.
///
/// Zero coefficients are never stored, so `==` is equality in the algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisSymbol, Scalar>,
}

/// Rows and columns touched by the corner part of an element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CornerSupport {
    pub rows: BTreeSet<u32>,
    pub cols: BTreeSet<u32>,
}

/// Whether [`Element::corner_rank`] may ignore surviving band terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankScope {
    /// Reject elements with band terms left after substitution.
    Strict,
    /// Rank of the corner part alone.
    CornerOnly,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::symbol(BasisSymbol::IDENTITY)
    }

    pub fn symbol(s: BasisSymbol) -> Self {
        Self::term(Scalar::one(), s)
    }

    pub fn term(c: Scalar, s: BasisSymbol) -> Self {
        let mut e = Self::zero();
        e.add_term(s, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Scalar, BasisSymbol)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (c, s) in terms {
            e.add_term(s, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisSymbol, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &BasisSymbol) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, s: BasisSymbol, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (s, v) in &self.terms {
            out.add_term(*s, &(v * c));
        }
        out
    }

    /// Product through the structure constants; fails if an index would pass
    /// the cap.
    pub fn try_mul(&self, rhs: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                let expansion = product(*s, *t)?;
                if expansion.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, u) in expansion {
                    match k {
                        1 => out.add_term(u, &ab),
                        -1 => out.add_term(u, &-&ab),
                        k => out.add_term(u, &ab.scale(&GaussRational::from_int(k))),
                    }
                }
            }
        }
        Ok(out)
    }

    /// Panics when an index passes [`super::INDEX_CAP`]; use [`Element::try_mul`]
    /// to handle that case.
    pub fn mul(&self, rhs: &Element) -> Element {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_commutator(&self, rhs: &Element) -> Result<Element> {
        Ok(&self.try_mul(rhs)? - &rhs.try_mul(self)?)
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, rhs: &Element) -> Element {
        self.try_commutator(rhs).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_pow(&self, k: u32) -> Result<Element> {
        let mut acc = Element::identity();
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Element {
        self.try_pow(k).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Exact matrix entry `<e_p, x e_q>`.
    pub fn entry(&self, p: u32, q: u32) -> Scalar {
        let mut out = Scalar::zero();
        for (s, c) in &self.terms {
            if s.entry(p, q) {
                out += c;
            }
        }
        out
    }

    /// Largest index over all symbols present (0 for the zero element).
    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(BasisSymbol::max_index).max().unwrap_or(0)
    }

    /// Largest forward or backward shift degree present.
    pub fn band_degree(&self) -> u32 {
        self.terms
            .keys()
            .filter(|s| !s.is_corner())
            .map(BasisSymbol::max_index)
            .max()
            .unwrap_or(0)
    }

    pub fn has_band_terms(&self) -> bool {
        self.terms.keys().any(|s| !s.is_corner())
    }

    /// Largest power of `eps` appearing in any coefficient.
    pub fn eps_degree(&self) -> u32 {
        self.terms.values().filter_map(Scalar::degree).max().unwrap_or(0)
    }

    /// Corner part only.
    pub fn corner_part(&self) -> Element {
        Element { terms: self.terms.iter().filter(|(s, _)| s.is_corner()).map(|(s, c)| (*s, c.clone())).collect() }
    }

    pub fn corner_support(&self) -> CornerSupport {
        let mut sup = CornerSupport::default();
        for s in self.terms.keys() {
            if let Corner(a, b) = *s {
                sup.rows.insert(a);
                sup.cols.insert(b);
            }
        }
        sup
    }

    /// Substitute `eps = value`, leaving an element with constant coefficients.
    pub fn substitute(&self, value: &GaussRational) -> Element {
        let mut out = Element::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, &Scalar::constant(c.eval(value)));
        }
        out
    }

    /// The coefficient of `eps^k`, as an element with constant coefficients.
    pub fn eps_order(&self, k: u32) -> Element {
        let mut out = Element::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, &c.take_order(k));
        }
        out
    }

    /// Exact rank of the corner coefficient matrix after `eps = value`.
    pub fn corner_rank(&self, value: &GaussRational, scope: RankScope) -> Result<usize> {
        let sub = self.substitute(value);
        if scope == RankScope::Strict {
            if let Some(s) = sub.terms.keys().find(|s| !s.is_corner()) {
                return Err(Error::BandTermSurvives { symbol: s.to_string(), eps: value.to_string() });
            }
        }
        let sup = sub.corner_support();
        let rows: Vec<u32> = sup.rows.into_iter().collect();
        let cols: Vec<u32> = sup.cols.into_iter().collect();
        let matrix: Vec<Vec<GaussRational>> = rows
            .iter()
            .map(|&a| cols.iter().map(|&b| sub.coefficient(&Corner(a, b)).coefficient(0)).collect())
            .collect();
        Ok(linalg::rank(matrix))
    }

    /// Generic corner rank: evaluated at `eps = 1` and `eps = 2/3`, and if those
    /// disagree, at a third rational drawn from a fixed seed; the maximum wins.
    pub fn generic_corner_rank(&self, scope: RankScope) -> Result<usize> {
        let r1 = self.corner_rank(&GaussRational::one(), scope)?;
        let r2 = self.corner_rank(&GaussRational::ratio(2, 3), scope)?;
        if r1 == r2 {
            return Ok(r1);
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0e95);
        let third = GaussRational::ratio(rng.gen_range(1..1000), rng.gen_range(1000..2000));
        let r3 = self.corner_rank(&third, scope)?;
        Ok(r1.max(r2).max(r3))
    }

    /// Exact compression `P_n x P_n` as a dense matrix of scalars.
    pub fn truncate_exact(&self, n: usize) -> Vec<Vec<Scalar>> {
        (0..n as u32).map(|p| (0..n as u32).map(|q| self.entry(p, q)).collect()).collect()
    }
}

impl From<BasisSymbol> for Element {
    fn from(s: BasisSymbol) -> Self {
        Element::symbol(s)
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, c);
        }
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, &-c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        Element::mul(self, rhs)
    }
}

impl Mul<&Element> for &Scalar {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl std::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        iter.fold(Element::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::super::symbol::{Bwd, Fwd};
    use super::*;

    fn c(a: u32, b: u32) -> Element {
        Corner(a, b).into()
    }

    #[test]
    fn corner_product_from_table() {
        assert_eq!(c(1, 0).mul(&c(0, 1)), c(1, 1));
        assert!(c(1, 0).mul(&c(1, 0)).is_zero());
    }

    #[test]
    fn identity_is_neutral() {
        let x = &(&Element::from(Fwd(2)) + &c(3, 1)).scale(&Scalar::eps()) + &Element::from(Bwd(4));
        assert_eq!(Element::identity().mul(&x), x);
        assert_eq!(x.mul(&Element::identity()), x);
    }

    #[test]
    fn shift_times_adjoint() {
        let got = Element::from(Fwd(2)).mul(&Bwd(1).into());
        assert_eq!(got, &Element::from(Fwd(1)) - &c(1, 0));
    }

    #[test]
    fn corner_commutator_example() {
        assert_eq!(c(1, 0).commutator(&c(0, 1)), &c(1, 1) - &c(0, 0));
        let hop = &Element::from(Fwd(1)) + &Element::from(Bwd(1));
        assert_eq!(hop.commutator(&c(0, 0)), &c(1, 0) - &c(0, 1));
    }

    #[test]
    fn forward_powers_commute() {
        for m in 0..5 {
            for n in 0..5 {
                assert!(Element::from(Fwd(m)).commutator(&Fwd(n).into()).is_zero());
            }
        }
    }

    #[test]
    fn entries_and_support() {
        assert!(c(2, 3).entry(2, 3).is_one());
        assert!(Element::from(Fwd(1)).entry(1, 0).is_one());
        assert!(Element::from(Bwd(2)).entry(0, 2).is_one());
        let sup = c(5, 7).corner_support();
        assert_eq!(sup.rows, BTreeSet::from([5]));
        assert_eq!(sup.cols, BTreeSet::from([7]));
    }

    #[test]
    fn corner_rank_scopes() {
        let diag = &c(0, 0) + &c(1, 1);
        assert_eq!(diag.corner_rank(&GaussRational::ratio(3, 7), RankScope::Strict), Ok(2));
        let with_band = &diag + &Element::from(Fwd(1));
        assert!(matches!(
            with_band.corner_rank(&GaussRational::one(), RankScope::Strict),
            Err(Error::BandTermSurvives { .. })
        ));
        assert_eq!(with_band.corner_rank(&GaussRational::one(), RankScope::CornerOnly), Ok(2));
        // a band term whose coefficient vanishes at the chosen eps is fine
        let vanishing = &diag + &Element::term(&Scalar::eps() - &Scalar::one(), Fwd(1));
        assert_eq!(vanishing.corner_rank(&GaussRational::one(), RankScope::Strict), Ok(2));
        assert_eq!(Element::zero().corner_rank(&GaussRational::one(), RankScope::Strict), Ok(0));
    }

    #[test]
    fn generic_rank_sees_through_special_points() {
        // (eps - 1) C(0,0) + C(1,1): rank 1 at eps = 1, rank 2 generically
        let x = &Element::term(&Scalar::eps() - &Scalar::one(), Corner(0, 0)) + &c(1, 1);
        assert_eq!(x.corner_rank(&GaussRational::one(), RankScope::Strict), Ok(1));
        assert_eq!(x.generic_corner_rank(RankScope::Strict), Ok(2));
    }

    #[test]
    fn cap_overflow_fails_loudly() {
        let big = Element::from(Fwd(40));
        assert!(big.try_mul(&big).is_err());
        assert!(big.try_pow(2).is_err());
    }

    #[test]
    #[should_panic(expected = "exceeds the per-symbol cap")]
    fn panicking_mul_reports_cap() {
        let big = Element::from(Fwd(40));
        let _ = big.mul(&big);
    }
}
