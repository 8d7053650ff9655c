//! Solution counts `N_m(f, p) = #{x mod p^m : f(x) = 0 mod p^m}`, read off
//! the zeta function or counted directly.
//!
//! With `Z(s, f) = sum_m c_m t^m`, `c_m` is the measure of the set where
//! `f` has valuation exactly `m`, so `N_n = p^n (1 - c_0 - ... - c_(n-1))`.

use num_integer::Integer as _;
use num_traits::{One, PrimInt, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::PAdicContext;
use crate::zeta::ZetaFunction;
use crate::{Error, Integer, QPoly, Rational, Result, ZPoly};

/// Default bound on `p^n` for [`brute_counts`].
pub const DEFAULT_BRUTE_CAP: u64 = 10_000_000;

/// `N_0 ..= N_n` together with `c_0 .. c_(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub p: Integer,
    pub counts: Vec<Integer>,
    pub coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct CountDocument {
    p: String,
    counts: Vec<String>,
    coeffs: Vec<String>,
}

impl CountSequence {
    /// Counts up to `N_n` from the power series of `z`.
    pub fn from_zeta(z: &ZetaFunction, n: usize) -> Result<Self> {
        let coeffs = if n == 0 { Vec::new() } else { coeff_stream(z, n - 1)? };
        let counts = counts_from_coeffs(&coeffs, z.ctx(), n)?;
        Ok(CountSequence {
            p: z.ctx().p().clone(),
            counts,
            coeffs,
        })
    }

    /// Recovers `c_j = N_j / p^j - N_(j+1) / p^(j+1)` from the counts.
    pub fn from_counts(ctx: &PAdicContext, counts: Vec<Integer>) -> Self {
        let density = |j: usize| Rational::new(counts[j].clone(), ctx.pow(j as u32));
        let coeffs = (1..counts.len()).map(|j| density(j - 1) - density(j)).collect();
        CountSequence {
            p: ctx.p().clone(),
            counts,
            coeffs,
        }
    }

    pub fn text(&self) -> String {
        self.counts
            .iter()
            .enumerate()
            .map(|(m, n)| format!("N_{m} = {n}\n"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = CountDocument {
            p: self.p.to_string(),
            counts: self.counts.iter().map(|c| c.to_string()).collect(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}

/// Power-series coefficients `c_0 ..= c_m` of `Z(s, f)` in `t`, expanded
/// term by term.
pub fn coeff_stream(z: &ZetaFunction, m: usize) -> Result<Vec<Rational>> {
    if z.shift() < 0 {
        return Err(Error::NegativeShift(z.shift()));
    }
    let shift = z.shift() as u64;
    let mut out = vec![Rational::zero(); m + 1];
    let inv_p = Rational::one() / z.ctx().p_rational();
    for term in z.terms() {
        let mut k = shift + term.t_pow;
        let mut c = term.coeff.clone();
        while k <= m as u64 {
            out[k as usize] += &c;
            if term.den_pow == 0 {
                break;
            }
            c *= &inv_p;
            k += term.den_pow;
        }
    }
    Ok(out)
}

/// `N_0 ..= N_n` with `N_j = p^j (1 - c_0 - ... - c_(j-1))`; needs at least
/// `n` coefficients.
///
/// Fails with [`Error::NonIntegralCount`] if some value is not a
/// nonnegative integer, which cannot happen for a polynomial with integer
/// coefficients.
pub fn counts_from_coeffs(coeffs: &[Rational], ctx: &PAdicContext, n: usize) -> Result<Vec<Integer>> {
    assert!(coeffs.len() >= n, "need {n} coefficients, got {}", coeffs.len());
    let mut counts = vec![Integer::one()];
    let mut tail = Rational::one();
    for j in 1..=n {
        tail -= &coeffs[j - 1];
        let value = &tail * Rational::from_integer(ctx.pow(j as u32));
        if !value.is_integer() || value.is_negative() {
            return Err(Error::NonIntegralCount { n: j, j: j - 1 });
        }
        counts.push(value.to_integer());
    }
    Ok(counts)
}

/// The polynomial with its coefficients as integers, or
/// [`Error::NonIntegerCoefficients`].
pub fn integer_coefficients(f: &QPoly) -> Result<ZPoly> {
    if f.coeffs().iter().all(|c| c.is_integer()) {
        Ok(f.map(|c| c.to_integer()))
    } else {
        Err(Error::NonIntegerCoefficients)
    }
}

/// `N_0 ..= N_n` by evaluating `f` at every residue modulo `p^n`.
///
/// Refuses with [`Error::CapExceeded`] when `p^n > cap`.
pub fn brute_counts(f: &ZPoly, ctx: &PAdicContext, n: usize, cap: u64) -> Result<Vec<Integer>> {
    let p = ctx
        .p_u64()
        .ok_or_else(|| Error::PrimeTooLarge(ctx.p().to_string()))?;
    let modulus = ctx.pow(n as u32);
    let too_big = || Error::CapExceeded {
        modulus: modulus.to_string(),
        cap,
    };
    let m = modulus.to_u64().ok_or_else(too_big)?;
    if m > cap {
        return Err(too_big());
    }
    let coeffs: Vec<u128> = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&modulus).to_u128().expect("reduced"))
        .collect();
    let hits = if m <= u64::from(u32::MAX) {
        let narrow: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
        valuation_histogram(&narrow, m, p, n)
    } else {
        valuation_histogram(&coeffs, u128::from(m), u128::from(p), n)
    };
    let mut counts = Vec::with_capacity(n + 1);
    let mut at_least: u64 = hits.iter().sum();
    for (k, &h) in hits.iter().enumerate() {
        let lifts = ctx.pow((n - k) as u32);
        counts.push(Integer::from(at_least) / lifts);
        at_least -= h;
    }
    Ok(counts)
}

/// `hits[k]` counts residues `x mod m = p^n` where `f(x)` has valuation
/// exactly `k`, with `k = n` standing for "at least n". `T` must hold `m^2`.
fn valuation_histogram<T: PrimInt>(coeffs: &[T], m: T, p: T, n: usize) -> Vec<u64> {
    let mut hits = vec![0u64; n + 1];
    let mut x = T::zero();
    while x < m {
        let mut value = coeffs.iter().rev().fold(T::zero(), |acc, &c| (acc * x + c) % m);
        let mut k = 0;
        while k < n && (value % p).is_zero() {
            value = value / p;
            k += 1;
        }
        hits[k] += 1;
        x = x + T::one();
    }
    hits
}

/// `N_n` alone; see [`brute_counts`].
pub fn brute_count(f: &ZPoly, ctx: &PAdicContext, n: usize, cap: u64) -> Result<Integer> {
    Ok(brute_counts(f, ctx, n, cap)?.pop().expect("nonempty"))
}
