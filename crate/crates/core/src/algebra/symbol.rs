use std::fmt;

use crate::error::{Error, Result};

/// Largest index any basis symbol may carry. Products that would exceed it
/// fail instead of being truncated.
pub const INDEX_CAP: u32 = 64;

/// A basis operator of the boundary algebra on the half-lattice.
///
/// * `Fwd(n)` is the forward shift power `S^n`; `Fwd(0)` is the identity.
/// * `Bwd(n)` is the adjoint power `S*^n`, `n >= 1`.
/// * `Corner(a, b)` is the matrix unit `|e_a><e_b| = S^a E S*^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisSymbol {
    Fwd(u32),
    Bwd(u32),
    Corner(u32, u32),
}

pub use BasisSymbol::{Bwd, Corner, Fwd};

fn check(index: u64) -> Result<u32> {
    if index > u64::from(INDEX_CAP) {
        Err(Error::IndexCap { index, cap: INDEX_CAP })
    } else {
        Ok(index as u32)
    }
}

impl BasisSymbol {
    pub const IDENTITY: BasisSymbol = Fwd(0);
    pub const E: BasisSymbol = Corner(0, 0);

    pub fn fwd(n: u64) -> Result<Self> {
        Ok(Fwd(check(n)?))
    }

    /// `Bwd(0)` normalizes to the identity.
    pub fn bwd(n: u64) -> Result<Self> {
        Ok(match check(n)? {
            0 => Fwd(0),
            n => Bwd(n),
        })
    }

    pub fn corner(a: u64, b: u64) -> Result<Self> {
        Ok(Corner(check(a)?, check(b)?))
    }

    pub fn is_corner(&self) -> bool {
        matches!(self, Corner(..))
    }

    /// Largest index carried: the shift degree or the larger corner index.
    pub fn max_index(&self) -> u32 {
        match *self {
            Fwd(n) | Bwd(n) => n,
            Corner(a, b) => a.max(b),
        }
    }

    /// Checks the canonical-form and cap invariants.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Bwd(0) => Err(Error::Invalid("Bwd(0) is not canonical; use Fwd(0)".into())),
            s => check(u64::from(s.max_index())).map(|_| ()),
        }
    }

    /// Exact matrix entry `<e_p, s e_q>`.
    pub fn entry(&self, p: u32, q: u32) -> bool {
        match *self {
            Fwd(n) => p == q + n,
            Bwd(n) => p + n == q,
            Corner(a, b) => p == a && q == b,
        }
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Fwd(0) => write!(f, "I"),
            Fwd(n) => write!(f, "U^{n}"),
            Bwd(n) => write!(f, "U*^{n}"),
            Corner(a, b) => write!(f, "C({a},{b})"),
        }
    }
}

/// A product of two basis symbols as a signed sum of basis symbols.
pub(crate) type Expansion = Vec<(i64, BasisSymbol)>;

/// Structure constants of the boundary algebra.
pub(crate) fn product(x: BasisSymbol, y: BasisSymbol) -> Result<Expansion> {
    let sym = |s: BasisSymbol| -> Result<Expansion> {
        s.validate()?;
        Ok(vec![(1, s)])
    };
    match (x, y) {
        (Fwd(m), Fwd(n)) => sym(BasisSymbol::fwd(u64::from(m) + u64::from(n))?),
        (Bwd(m), Bwd(n)) => sym(BasisSymbol::bwd(u64::from(m) + u64::from(n))?),
        (Bwd(n), Fwd(m)) => sym(if m >= n { Fwd(m - n) } else { Bwd(n - m) }),
        // S^m S*^n = S^(m-n) (I - sum of the first n diagonal units) for m >= n,
        // (I - sum of the first m units) S*^(n-m) otherwise.
        (Fwd(m), Bwd(n)) => {
            let mut out = Vec::with_capacity(1 + m.min(n) as usize);
            if m >= n {
                out.push((1, Fwd(m - n)));
                out.extend((0..n).map(|j| (-1, Corner(m - n + j, j))));
            } else {
                out.push((1, Bwd(n - m)));
                out.extend((0..m).map(|j| (-1, Corner(j, j + n - m))));
            }
            Ok(out)
        }
        (Fwd(n), Corner(a, b)) => sym(BasisSymbol::corner(u64::from(a) + u64::from(n), u64::from(b))?),
        (Corner(a, b), Fwd(n)) => Ok(if b >= n { vec![(1, Corner(a, b - n))] } else { vec![] }),
        (Bwd(n), Corner(a, b)) => Ok(if a >= n { vec![(1, Corner(a - n, b))] } else { vec![] }),
        (Corner(a, b), Bwd(n)) => sym(BasisSymbol::corner(u64::from(a), u64::from(b) + u64::from(n))?),
        (Corner(a, b), Corner(c, d)) => Ok(if b == c { vec![(1, Corner(a, d))] } else { vec![] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bwd_zero_normalizes_to_identity() {
        assert_eq!(BasisSymbol::bwd(0).unwrap(), Fwd(0));
        assert!(Bwd(0).validate().is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(BasisSymbol::fwd(64).is_ok());
        assert_eq!(BasisSymbol::fwd(65), Err(Error::IndexCap { index: 65, cap: INDEX_CAP }));
        assert!(product(Fwd(40), Fwd(30)).is_err());
        assert!(product(Fwd(40), Corner(30, 0)).is_err());
        // shrinking products stay legal
        assert!(product(Corner(3, 60), Fwd(60)).is_ok());
    }

    #[test]
    fn table_samples() {
        assert_eq!(product(Corner(1, 0), Corner(0, 1)).unwrap(), vec![(1, Corner(1, 1))]);
        assert_eq!(product(Fwd(2), Bwd(1)).unwrap(), vec![(1, Fwd(1)), (-1, Corner(1, 0))]);
        assert_eq!(product(Fwd(1), Bwd(3)).unwrap(), vec![(1, Bwd(2)), (-1, Corner(0, 2))]);
        assert_eq!(product(Corner(0, 1), Fwd(2)).unwrap(), vec![]);
        assert_eq!(product(Bwd(2), Fwd(2)).unwrap(), vec![(1, Fwd(0))]);
    }
}
