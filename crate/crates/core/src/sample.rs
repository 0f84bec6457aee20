//! Seeded random elements for property runs and the audit.

use rand::Rng;

use crate::algebra::{BasisSymbol, Element, GaussRational, Scalar};

/// A basis symbol with every index at most `max_index`.
pub fn basis_symbol<R: Rng + ?Sized>(rng: &mut R, max_index: u32) -> BasisSymbol {
    match rng.gen_range(0..3) {
        0 => BasisSymbol::Fwd(rng.gen_range(0..=max_index)),
        1 if max_index > 0 => BasisSymbol::Bwd(rng.gen_range(1..=max_index)),
        _ => BasisSymbol::Corner(rng.gen_range(0..=max_index), rng.gen_range(0..=max_index)),
    }
}

/// A corner symbol with both indices at most `max_index`.
pub fn corner_symbol<R: Rng + ?Sized>(rng: &mut R, max_index: u32) -> BasisSymbol {
    BasisSymbol::Corner(rng.gen_range(0..=max_index), rng.gen_range(0..=max_index))
}

/// A small nonzero Gaussian rational, imaginary part present half the time.
pub fn gauss<R: Rng + ?Sized>(rng: &mut R) -> GaussRational {
    let part = |rng: &mut R| {
        let num = loop {
            let n = rng.gen_range(-5i64..=5);
            if n != 0 {
                break n;
            }
        };
        GaussRational::ratio(num, rng.gen_range(1..=4))
    };
    let re = part(rng);
    if rng.gen_bool(0.5) {
        let im = part(rng);
        &re + &(&im * &GaussRational::i())
    } else {
        re
    }
}

/// A coefficient polynomial in `eps` of degree at most `max_eps`.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, max_eps: u32) -> Scalar {
    let mut s = Scalar::zero();
    for _ in 0..rng.gen_range(1..=2) {
        s.add_monomial(rng.gen_range(0..=max_eps), &gauss(rng));
    }
    if s.is_zero() {
        Scalar::one()
    } else {
        s
    }
}

/// An element with `terms` random terms over symbols with indices at most `max_index`.
pub fn element<R: Rng + ?Sized>(rng: &mut R, terms: usize, max_index: u32) -> Element {
    Element::from_terms((0..terms).map(|_| (scalar(rng, 2), basis_symbol(rng, max_index))))
}

/// A combination of corner symbols only.
pub fn corner_element<R: Rng + ?Sized>(rng: &mut R, terms: usize, max_index: u32) -> Element {
    Element::from_terms((0..terms).map(|_| (Scalar::constant(gauss(rng)), corner_symbol(rng, max_index))))
}

/// All basis symbols with every index at most `max_index`.
pub fn all_symbols(max_index: u32) -> Vec<BasisSymbol> {
    let mut out: Vec<BasisSymbol> = (0..=max_index).map(BasisSymbol::Fwd).collect();
    out.extend((1..=max_index).map(BasisSymbol::Bwd));
    for a in 0..=max_index {
        for b in 0..=max_index {
            out.push(BasisSymbol::Corner(a, b));
        }
    }
    out
}
