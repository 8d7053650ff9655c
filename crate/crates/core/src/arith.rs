//! p-adic valuations, absolute values, modular inverses and digit expansions
//! of rationals.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Integer, Rational, Result};

/// p-adic order of a rational; zero has order `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

const TRIAL_LIMIT: u32 = 1_000_000;
const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &prime)| prime.then_some(k as u32))
            .collect()
    })
}

fn miller_rabin(n: &BigInt, witness: u32) -> bool {
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let mut x = BigInt::from(witness).modpow(&d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Trial division by every prime up to 10^6, then Miller-Rabin with the
/// first thirteen prime bases. Exact below 3.3 * 10^24.
pub fn is_prime(n: &Integer) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &q in small_primes() {
        let q = BigInt::from(q);
        if &q * &q > *n {
            return true;
        }
        if (n % &q).is_zero() {
            return *n == q;
        }
    }
    WITNESSES.iter().all(|&w| miller_rabin(n, w))
}

/// A validated prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicContext {
    p: Integer,
}

impl PAdicContext {
    pub fn new(p: impl Into<Integer>) -> Result<Self> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(PAdicContext { p })
    }

    pub fn p(&self) -> &Integer {
        &self.p
    }

    pub fn p_u64(&self) -> Option<u64> {
        self.p.to_u64()
    }

    pub fn p_rational(&self) -> Rational {
        Rational::from_integer(self.p.clone())
    }

    /// `p^k` as an integer.
    pub fn pow(&self, k: u32) -> Integer {
        num_traits::pow(self.p.clone(), k as usize)
    }

    /// `p^k` as a rational, for any sign of `k`.
    pub fn pow_rational(&self, k: i64) -> Rational {
        let magnitude = self.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Rational::from_integer(magnitude)
        } else {
            Rational::new(BigInt::one(), magnitude)
        }
    }

    /// Exponent of `p` in a nonzero integer.
    pub fn vp_integer(&self, n: &Integer) -> Valuation {
        if n.is_zero() {
            return Valuation::Infinity;
        }
        let mut n = n.abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&self.p);
            if !r.is_zero() {
                return Valuation::Finite(v);
            }
            n = q;
            v += 1;
        }
    }

    /// The reduction of `x` into `{0, ..., p^k - 1}`; `x` must have `v_p(x) >= 0`.
    pub fn residue(&self, x: &Rational, k: u32) -> Result<Integer> {
        if vp(x, self) < Valuation::Finite(0) {
            return Err(Error::NegativeValuation(x.to_string()));
        }
        let modulus = self.pow(k);
        if modulus.is_one() {
            return Ok(BigInt::zero());
        }
        let inv = x
            .denom()
            .extended_gcd(&modulus)
            .x
            .mod_floor(&modulus);
        Ok((x.numer() * inv).mod_floor(&modulus))
    }
}

impl fmt::Display for PAdicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// p-adic order `v_p(x) = v_p(numerator) - v_p(denominator)`.
pub fn vp(x: &Rational, ctx: &PAdicContext) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    let num = ctx.vp_integer(x.numer()).finite().unwrap_or(0);
    let den = ctx.vp_integer(x.denom()).finite().unwrap_or(0);
    Valuation::Finite(num - den)
}

/// `|x|_p = p^(-v_p(x))`, with `|0|_p = 0`.
pub fn abs_p(x: &Rational, ctx: &PAdicContext) -> Rational {
    match vp(x, ctx) {
        Valuation::Infinity => Rational::zero(),
        Valuation::Finite(v) => ctx.pow_rational(-v),
    }
}

/// The `y` in `{1, ..., p-1}` with `y * b = 1 (mod p)`.
pub fn mod_inverse(b: &Integer, ctx: &PAdicContext) -> Result<Integer> {
    let p = ctx.p();
    let g = b.mod_floor(p).extended_gcd(p);
    if !g.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: b.to_string(),
            p: p.to_string(),
        });
    }
    Ok(g.x.mod_floor(p))
}

/// Digits `a_0, ..., a_m` of a p-adic integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicExpansion {
    p: Integer,
    digits: Vec<Integer>,
}

impl PAdicExpansion {
    pub fn p(&self) -> &Integer {
        &self.p
    }

    pub fn digits(&self) -> &[Integer] {
        &self.digits
    }

    /// `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`, the residue modulo `p^k`.
    pub fn truncate(&self, k: usize) -> Integer {
        self.digits[..k]
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, d| acc * &self.p + d)
    }

    pub fn value(&self) -> Integer {
        self.truncate(self.digits.len())
    }
}

/// Expands `gamma = c/b` modulo `p^(m+1)`.
///
/// With `y = b^(-1) mod p`: `a_0 = y c mod p`, then
/// `c_i = (c_{i-1} - a_{i-1} b) / p` and `a_i = y c_i mod p`.
pub fn padic_expand(gamma: &Rational, ctx: &PAdicContext, m: usize) -> Result<PAdicExpansion> {
    if vp(gamma, ctx) < Valuation::Finite(0) {
        return Err(Error::NegativeValuation(gamma.to_string()));
    }
    let p = ctx.p();
    let b = gamma.denom();
    let y = mod_inverse(b, ctx)?;
    let mut c = gamma.numer().clone();
    let mut digits = Vec::with_capacity(m + 1);
    for i in 0..=m {
        if i > 0 {
            let prev: &Integer = &digits[i - 1];
            let shifted = &c - prev * b;
            debug_assert!((&shifted % p).is_zero());
            c = shifted / p;
        }
        digits.push((&y * &c).mod_floor(p));
    }
    Ok(PAdicExpansion {
        p: p.clone(),
        digits,
    })
}
