//! Polynomial input: the factored data model, text parsing, rational-root
//! factorization and the reduction to roots that are p-adic integers.

mod factor;
mod parse;

pub use factor::{compute_lf, find_rational_roots, reduce_to_integral_roots};
pub use parse::parse_poly;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::{Error, QPoly, Rational, Result, ZPoly};

/// `unit * prod (x - root)^multiplicity` with pairwise distinct roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    unit: Rational,
    roots: Vec<(Rational, u32)>,
}

impl FactoredPoly {
    /// Merges repeated roots by summing multiplicities; zero multiplicities
    /// are dropped.
    pub fn new(unit: Rational, roots: impl IntoIterator<Item = (Rational, u32)>) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut merged: Vec<(Rational, u32)> = Vec::new();
        for (root, e) in roots {
            if e == 0 {
                continue;
            }
            match merged.iter_mut().find(|(r, _)| *r == root) {
                Some((_, m)) => *m += e,
                None => merged.push((root, e)),
            }
        }
        Ok(FactoredPoly { unit, roots: merged })
    }

    /// The monic polynomial with the given roots.
    pub fn monic(roots: impl IntoIterator<Item = (Rational, u32)>) -> Result<Self> {
        FactoredPoly::new(Rational::one(), roots)
    }

    pub fn unit(&self) -> &Rational {
        &self.unit
    }

    pub fn roots(&self) -> &[(Rational, u32)] {
        &self.roots
    }

    pub fn degree(&self) -> u32 {
        self.roots.iter().map(|(_, e)| e).sum()
    }

    pub fn expand(&self) -> QPoly {
        self.roots.iter().fold(QPoly::constant(self.unit.clone()), |acc, (r, e)| {
            &acc * &QPoly::x_minus(r.clone()).pow(*e)
        })
    }

    /// The expansion, if every coefficient is an integer.
    pub fn integer_poly(&self) -> Result<ZPoly> {
        to_integer_poly(&self.expand()).ok_or(Error::IntegralityError)
    }
}

impl fmt::Display for FactoredPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.unit.is_one() || self.roots.is_empty() {
            parts.push(self.unit.to_string());
        }
        for (r, e) in &self.roots {
            let factor = if r.is_zero() {
                "(x)".to_string()
            } else if r.is_negative() {
                format!("(x + {})", -r)
            } else {
                format!("(x - {r})")
            };
            parts.push(if *e == 1 { factor } else { format!("{factor}^{e}") });
        }
        f.write_str(&parts.join("*"))
    }
}

/// Result of [`parse_poly`]: an expanded or a factored polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedPoly {
    Dense(QPoly),
    Factored(FactoredPoly),
}

impl ParsedPoly {
    pub fn to_dense(&self) -> QPoly {
        match self {
            ParsedPoly::Dense(p) => p.clone(),
            ParsedPoly::Factored(f) => f.expand(),
        }
    }

    /// Factors dense input; factored input is returned as is.
    pub fn into_factored(self) -> Result<FactoredPoly> {
        match self {
            ParsedPoly::Dense(p) => find_rational_roots(&p),
            ParsedPoly::Factored(f) => {
                if f.roots.is_empty() {
                    return Err(Error::ConstantPolynomial);
                }
                Ok(f)
            }
        }
    }
}

/// `f = t^shift`-equivalent reduction: the roots of `fplus` are exactly the
/// roots of `f` with nonnegative valuation, and `Z(t, f) = t^shift Z(t, fplus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInput {
    pub shift: i64,
    pub fplus: FactoredPoly,
}

pub(crate) fn to_integer_poly(p: &QPoly) -> Option<ZPoly> {
    p.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(ZPoly::new)
}
