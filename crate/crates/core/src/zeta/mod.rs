//! Local zeta functions as finite sums of terms
//! `coeff * t^a / (1 - p^(-1) t^b)` with `t = p^(-s)`.
//!
//! Two independent evaluators produce such sums: [`generating_function`]
//! reads one term off every vertex of the residue-class tree, and
//! [`spf_eval`] recurses through the stationary phase formula. They agree as
//! rational functions on every valid input.

mod rational;
mod render;
mod spf;

pub use rational::RationalFunction;
pub use render::{RationalDocument, TermDocument, ZetaDocument};
pub use spf::{classify, dilate, spf_eval, ResidueClassification, ResidueGroup};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::arith::PAdicContext;
use crate::polyio::{compute_lf, reduce_to_integral_roots, FactoredPoly, ReducedInput};
use crate::tree::{build_tree, minimal_weight_one_set, Vertex, WeightedTree};
use crate::{QPoly, Rational, Result};

/// `coeff * t^t_pow`, divided by `1 - p^(-1) t^den_pow` when `den_pow > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaTerm {
    pub t_pow: u64,
    pub den_pow: u64,
    pub coeff: Rational,
}

impl ZetaTerm {
    pub fn new(coeff: Rational, t_pow: u64, den_pow: u64) -> Self {
        ZetaTerm {
            t_pow,
            den_pow,
            coeff,
        }
    }
}

/// `t^shift` times a sum of [`ZetaTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    ctx: PAdicContext,
    shift: i64,
    terms: Vec<ZetaTerm>,
}

impl ZetaFunction {
    /// Zero coefficients are dropped.
    pub fn new(ctx: PAdicContext, shift: i64, terms: impl IntoIterator<Item = ZetaTerm>) -> Self {
        let terms = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        ZetaFunction { ctx, shift, terms }
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn terms(&self) -> &[ZetaTerm] {
        &self.terms
    }

    pub fn with_shift(mut self, shift: i64) -> Self {
        self.shift = shift;
        self
    }

    /// Terms sorted, for comparison as a multiset.
    pub fn sorted_terms(&self) -> Vec<ZetaTerm> {
        let mut terms = self.terms.clone();
        terms.sort();
        terms
    }

    /// The term sum at `t = 1`; the total Haar measure, so always 1.
    pub fn eval_at_one(&self) -> Rational {
        let geometric = Rational::one() - self.ctx.pow_rational(-1);
        self.terms
            .iter()
            .map(|term| {
                if term.den_pow == 0 {
                    term.coeff.clone()
                } else {
                    &term.coeff / &geometric
                }
            })
            .sum()
    }

    /// Combines the terms over the common denominator
    /// `prod_b (p - t^b)`, one factor per distinct `den_pow`, then reduces.
    pub fn normalize(&self) -> RationalFunction {
        let p = self.ctx.p_rational();
        let factor = |b: u64| -> QPoly {
            &QPoly::constant(p.clone()) - &QPoly::monomial(Rational::one(), b as usize)
        };
        let den_pows: BTreeSet<u64> =
            self.terms.iter().map(|t| t.den_pow).filter(|&b| b > 0).collect();
        let others = |skip: u64| -> QPoly {
            den_pows
                .iter()
                .filter(|&&b| b != skip)
                .fold(QPoly::one(), |acc, &b| &acc * &factor(b))
        };
        let cofactors: BTreeMap<u64, QPoly> = std::iter::once(0)
            .chain(den_pows.iter().copied())
            .map(|b| (b, others(b)))
            .collect();

        let mut num = QPoly::zero();
        for term in &self.terms {
            let mut c = term.coeff.clone();
            if term.den_pow > 0 {
                c *= &p;
            }
            let monomial = QPoly::monomial(c, term.t_pow as usize);
            num = &num + &(&monomial * &cofactors[&term.den_pow]);
        }
        let mut den = cofactors[&0].clone();
        if self.shift >= 0 {
            num = num.shift(self.shift as usize);
        } else {
            den = den.shift(self.shift.unsigned_abs() as usize);
        }
        RationalFunction::new(num, den)
    }

    /// `H(t) = (1 - t Z(t)) / (1 - t)`.
    ///
    /// Panics if `1 - t` fails to divide `1 - t Z(t)`, which would mean
    /// `Z(1) != 1`.
    pub fn poincare(&self) -> RationalFunction {
        poincare_of(&self.normalize())
    }

    /// Human-readable sum in powers of `p^(-s)`.
    pub fn display_terms(&self) -> String {
        render::display_terms(self)
    }

    pub fn to_document(&self) -> ZetaDocument {
        ZetaDocument::from(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        render::from_json(text)
    }
}

/// `(1 - t Z) / (1 - t)` with the factor `1 - t` cancelled exactly.
pub fn poincare_of(z: &RationalFunction) -> RationalFunction {
    let (n, d) = z.to_q_parts();
    let top = &d - &n.shift(1);
    let one_minus_t = QPoly::new(vec![Rational::one(), -Rational::one()]);
    let (quot, rem) = top.div_rem(&one_minus_t);
    assert!(rem.is_zero(), "Z(1) != 1: 1 - t does not cancel");
    RationalFunction::new(quot, d)
}

/// The contribution `L_u` of one vertex, or `None` when it vanishes.
///
/// * leaf level `l + 1`, `W >= 2`: `(1 - 1/p) p^(-level) t^(W*) / (1 - t^W / p)`
/// * level `<= l`, `W != 1`: `(p - Val)/p * p^(-level) t^(W*)`
/// * minimal weight-one vertex: `(1 - 1/p) p^(-level) t^(W*) / (1 - t / p)`
/// * any other weight-one vertex: nothing
pub fn vertex_term(u: &Vertex, tree: &WeightedTree, minimal: &BTreeSet<usize>) -> Option<ZetaTerm> {
    let p = Rational::from_integer(tree.p().clone());
    let scale = Rational::one() / num_traits::pow(p.clone(), u.level as usize);
    let unit_part = Rational::one() - Rational::one() / &p;
    if u.weight == 1 {
        return minimal
            .contains(&u.id)
            .then(|| ZetaTerm::new(unit_part * scale, u.stalk_weight, 1));
    }
    if u.level == tree.lf() + 1 {
        return Some(ZetaTerm::new(unit_part * scale, u.stalk_weight, u.weight));
    }
    let free = &p - Rational::from_integer(u.valence.into());
    if free.is_zero() {
        return None;
    }
    Some(ZetaTerm::new(free / &p * scale, u.stalk_weight, 0))
}

/// Sum of [`vertex_term`] over the whole tree, times `t^shift`.
pub fn generating_function(tree: &WeightedTree, shift: i64) -> ZetaFunction {
    let minimal = minimal_weight_one_set(tree);
    let ctx = PAdicContext::new(tree.p().clone()).expect("tree built from a prime");
    let terms = tree
        .vertices()
        .iter()
        .filter_map(|u| vertex_term(u, tree, &minimal));
    ZetaFunction::new(ctx, shift, terms)
}

/// Everything computed on the way from a factored polynomial to `Z(s, f)`.
#[derive(Debug, Clone)]
pub struct ZetaComputation {
    pub reduced: ReducedInput,
    pub lf: u32,
    pub tree: WeightedTree,
    pub zeta: ZetaFunction,
}

/// Reduce to integral roots, compute `l_f`, build `T(f, l_f)` and read off
/// `G(s, T(f, l_f), p) = Z(s, f)`.
pub fn compute_zeta(f: &FactoredPoly, ctx: &PAdicContext) -> Result<ZetaComputation> {
    let reduced = reduce_to_integral_roots(f, ctx);
    let lf = compute_lf(&reduced.fplus, ctx)?;
    let tree = build_tree(&reduced.fplus, ctx, lf)?;
    let zeta = generating_function(&tree, reduced.shift);
    Ok(ZetaComputation {
        reduced,
        lf,
        tree,
        zeta,
    })
}

/// `Z(s, f)` through the stationary phase recursion instead of the tree.
pub fn compute_zeta_spf(f: &FactoredPoly, ctx: &PAdicContext) -> Result<ZetaFunction> {
    let reduced = reduce_to_integral_roots(f, ctx);
    Ok(spf_eval(reduced.fplus.roots(), ctx)?.with_shift(reduced.shift))
}
