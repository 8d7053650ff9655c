use std::collections::BTreeMap;

use num_traits::One;

use super::{ZetaFunction, ZetaTerm};
use crate::arith::PAdicContext;
use crate::polyio::{compute_lf, FactoredPoly};
use crate::{Error, Integer, Rational, Result};

/// Roots sharing one residue class modulo `p`, of total multiplicity at
/// least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueGroup {
    pub xi: Integer,
    pub multiplicity: u64,
    pub members: Vec<(Rational, u32)>,
}

/// How the roots of `f` fall into the residue classes modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClassification {
    /// Classes containing no root.
    pub nu: Integer,
    /// Classes containing exactly one simple root.
    pub delta: u64,
    pub groups: Vec<ResidueGroup>,
}

pub fn classify(roots: &[(Rational, u32)], ctx: &PAdicContext) -> Result<ResidueClassification> {
    let mut classes: BTreeMap<Integer, Vec<(Rational, u32)>> = BTreeMap::new();
    for (alpha, e) in roots {
        let xi = ctx.residue(alpha, 1)?;
        classes.entry(xi).or_default().push((alpha.clone(), *e));
    }
    let nu = ctx.p() - Integer::from(classes.len());
    let mut delta = 0;
    let mut groups = Vec::new();
    for (xi, members) in classes {
        let multiplicity: u64 = members.iter().map(|&(_, e)| u64::from(e)).sum();
        if multiplicity == 1 {
            delta += 1;
        } else {
            groups.push(ResidueGroup {
                xi,
                multiplicity,
                members,
            });
        }
    }
    Ok(ResidueClassification { nu, delta, groups })
}

/// The roots `(alpha - xi) / p` of the polynomial seen on `xi + p Z_p`.
pub fn dilate(group: &ResidueGroup, ctx: &PAdicContext) -> Vec<(Rational, u32)> {
    let xi = Rational::from_integer(group.xi.clone());
    let p = ctx.p_rational();
    group
        .members
        .iter()
        .map(|(alpha, e)| ((alpha - &xi) / &p, *e))
        .collect()
}

/// `Z(s, f)` for `f = prod (x - alpha)^e` with every `alpha` in `Z_p`, by
/// splitting `Z_p` into residue classes and recursing on the crowded ones.
///
/// Fails with [`Error::RecursionDepthExceeded`] if the recursion goes deeper
/// than `l_f + 1`, and with [`Error::NegativeValuation`] for a root outside
/// `Z_p`.
pub fn spf_eval(roots: &[(Rational, u32)], ctx: &PAdicContext) -> Result<ZetaFunction> {
    let limit = if roots.is_empty() {
        1
    } else {
        compute_lf(&FactoredPoly::monic(roots.iter().cloned())?, ctx)? + 1
    };
    let mut terms = Vec::new();
    recurse(roots, ctx, Rational::one(), 0, 0, limit, &mut terms)?;
    Ok(ZetaFunction::new(ctx.clone(), 0, terms))
}

fn recurse(
    roots: &[(Rational, u32)],
    ctx: &PAdicContext,
    scale: Rational,
    t_pow: u64,
    depth: u32,
    limit: u32,
    out: &mut Vec<ZetaTerm>,
) -> Result<()> {
    if depth > limit {
        return Err(Error::RecursionDepthExceeded(limit));
    }
    let p = ctx.p_rational();
    let unit_part = Rational::one() - Rational::one() / &p;
    match roots {
        [] => {
            out.push(ZetaTerm::new(scale, t_pow, 0));
            return Ok(());
        }
        [(alpha, e)] => {
            // |x - alpha|^(e s) integrates to (1 - 1/p) / (1 - t^e / p)
            ctx.residue(alpha, 1)?;
            out.push(ZetaTerm::new(scale * unit_part, t_pow, u64::from(*e)));
            return Ok(());
        }
        _ => {}
    }
    let class = classify(roots, ctx)?;
    let weight = &scale / &p;
    out.push(ZetaTerm::new(
        &weight * Rational::from_integer(class.nu.clone()),
        t_pow,
        0,
    ));
    out.push(ZetaTerm::new(
        &weight * &unit_part * Rational::from_integer(class.delta.into()),
        t_pow + 1,
        1,
    ));
    for group in &class.groups {
        let inner = dilate(group, ctx);
        recurse(
            &inner,
            ctx,
            weight.clone(),
            t_pow + group.multiplicity,
            depth + 1,
            limit,
            out,
        )?;
    }
    Ok(())
}
