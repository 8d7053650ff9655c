//! Linear feedback shift registers over `F_p`, their rational generating
//! functions, and the keystream `N_0, ..., N_u` of a polynomial.
//!
//! A register of length `r` with taps `q_1 .. q_r` outputs `a_0, a_1, ...`
//! where `a_n = -(q_1 a_(n-1) + ... + q_r a_(n-r))` for `n >= r`. Writing
//! `R(x) = 1 + q_1 x + ... + q_r x^r`, the output series `g` satisfies
//! `g R = L` with `deg L < r`.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, PAdicContext};
use crate::polyio::FactoredPoly;
use crate::series::CountSequence;
use crate::zeta::compute_zeta;
use crate::{Error, Integer, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lfsr {
    p: u64,
    taps: Vec<u64>,
    state: Vec<u64>,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl Lfsr {
    /// `taps` are `q_1 .. q_r` and `state` is `a_0 .. a_(r-1)`; entries are
    /// reduced modulo `p`.
    pub fn new(p: u64, taps: Vec<u64>, state: Vec<u64>) -> Result<Self> {
        if !is_prime(&Integer::from(p)) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if taps.is_empty() {
            return Err(Error::InvalidLfsr("length must be at least 1".into()));
        }
        if taps.len() != state.len() {
            return Err(Error::InvalidLfsr(format!(
                "{} taps but {} state cells",
                taps.len(),
                state.len()
            )));
        }
        Ok(Lfsr {
            p,
            taps: taps.into_iter().map(|q| q % p).collect(),
            state: state.into_iter().map(|a| a % p).collect(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn taps(&self) -> &[u64] {
        &self.taps
    }

    pub fn state(&self) -> &[u64] {
        &self.state
    }

    /// Emits the oldest cell and shifts in the next term.
    pub fn step(&mut self) -> u64 {
        let r = self.len();
        let p = self.p;
        let feedback = (1..=r).fold(0u64, |acc, i| {
            (acc + mul_mod(self.taps[i - 1], self.state[r - i], p)) % p
        });
        let out = self.state.remove(0);
        self.state.push((p - feedback) % p);
        out
    }

    /// The first `steps` outputs, leaving `self` untouched.
    pub fn run(&self, steps: usize) -> Vec<u64> {
        let mut l = self.clone();
        (0..steps).map(|_| l.step()).collect()
    }

    /// `L / R` as above. Requires `q_r != 0`.
    pub fn generating_function(&self) -> Result<FpRational> {
        let p = self.p;
        if self.taps.last() == Some(&0) {
            return Err(Error::DegenerateTaps);
        }
        let mut den = vec![1 % p];
        den.extend(&self.taps);
        let num = (0..self.len())
            .map(|k| {
                (0..=k).fold(0u64, |acc, i| (acc + mul_mod(den[i], self.state[k - i], p)) % p)
            })
            .collect();
        Ok(FpRational::new(p, num, den))
    }

    /// The register whose output series is `g`.
    ///
    /// Needs `deg L < deg R` ([`Error::DegreeViolation`]) and `R(0) != 0`.
    pub fn from_rational(g: &FpRational) -> Result<Self> {
        let p = g.p;
        let r = g.den.len().saturating_sub(1);
        if r == 0 {
            return Err(Error::InvalidLfsr("denominator must have positive degree".into()));
        }
        if g.num.len() > r {
            return Err(Error::DegreeViolation(r));
        }
        if g.den[0] == 0 {
            return Err(Error::InvalidLfsr("denominator vanishes at 0".into()));
        }
        let inv = inv_mod(g.den[0], p);
        let taps = g.den[1..].iter().map(|&d| mul_mod(d, inv, p)).collect();
        Lfsr::new(p, taps, g.series(r))
    }

    /// Output sequence period, ignoring any preperiod.
    pub fn period(&self) -> u64 {
        period_of(self).1
    }
}

/// `(preperiod, period)` of the state sequence, by Brent's cycle detection.
pub fn period_of(l: &Lfsr) -> (u64, u64) {
    let next = |s: &Lfsr| {
        let mut s = s.clone();
        s.step();
        s
    };
    let mut power = 1u64;
    let mut lambda = 1u64;
    let mut tortoise = l.clone();
    let mut hare = next(l);
    while tortoise.state != hare.state {
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = next(&hare);
        lambda += 1;
    }
    let mut tortoise = l.clone();
    let mut hare = l.clone();
    for _ in 0..lambda {
        hare = next(&hare);
    }
    let mut mu = 0;
    while tortoise.state != hare.state {
        tortoise = next(&tortoise);
        hare = next(&hare);
        mu += 1;
    }
    (mu, lambda)
}

/// `a_0, ..., a_(steps-1)`; see [`Lfsr::run`].
pub fn lfsr_run(l: &Lfsr, steps: usize) -> Vec<u64> {
    l.run(steps)
}

/// A quotient of polynomials over `F_p`, ascending coefficients, kept
/// unreduced so the register length stays visible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpRational {
    pub p: u64,
    pub num: Vec<u64>,
    pub den: Vec<u64>,
}

impl FpRational {
    /// Reduces coefficients and trims trailing zeros.
    pub fn new(p: u64, num: Vec<u64>, den: Vec<u64>) -> Self {
        let trim = |v: Vec<u64>| {
            let mut v: Vec<u64> = v.into_iter().map(|c| c % p).collect();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        FpRational {
            p,
            num: trim(num),
            den: trim(den),
        }
    }

    /// First `n` power-series coefficients. Panics if `den(0) = 0`.
    pub fn series(&self, n: usize) -> Vec<u64> {
        let p = self.p;
        let d0 = *self.den.first().filter(|&&d| d != 0).expect("den(0) != 0");
        let inv = inv_mod(d0, p);
        let mut out: Vec<u64> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.num.get(k).copied().unwrap_or(0);
            for j in 1..self.den.len().min(k + 1) {
                acc = (acc + p - mul_mod(self.den[j], out[k - j], p)) % p;
            }
            out.push(mul_mod(acc, inv, p));
        }
        out
    }
}

/// `N_0, ..., N_u` for a polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Keystream {
    #[serde(with = "crate::decimal")]
    pub p: Integer,
    #[serde(with = "crate::decimal")]
    pub u: usize,
    #[serde(with = "crate::decimal::vec")]
    pub values: Vec<Integer>,
}

impl Keystream {
    /// One decimal value per line.
    pub fn text(&self) -> String {
        self.values.iter().map(|v| format!("{v}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    /// `p` then each value as ASCII decimal, every field prefixed with its
    /// byte length as a big-endian `u32`.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for field in std::iter::once(&self.p).chain(&self.values) {
            let digits = field.to_string();
            out.extend((digits.len() as u32).to_be_bytes());
            out.extend(digits.as_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = || Error::Document("truncated keystream bytes".into());
        let mut fields = Vec::new();
        let mut rest = bytes;
        while !rest.is_empty() {
            let (len, tail) = rest.split_first_chunk::<4>().ok_or_else(bad)?;
            let len = u32::from_be_bytes(*len) as usize;
            let digits = tail.get(..len).ok_or_else(bad)?;
            let text = std::str::from_utf8(digits).map_err(|_| bad())?;
            fields.push(text.parse::<Integer>().map_err(|_| bad())?);
            rest = &tail[len..];
        }
        if fields.len() < 2 {
            return Err(bad());
        }
        let p = fields.remove(0);
        Ok(Keystream {
            p,
            u: fields.len() - 1,
            values: fields,
        })
    }
}

/// `N_0 .. N_u` of `f` through zeta function and coefficient stream.
///
/// Fails with [`Error::IntegralityError`] unless `f` has integer
/// coefficients.
pub fn keystream(f: &FactoredPoly, ctx: &PAdicContext, u: usize) -> Result<Keystream> {
    f.integer_poly()?;
    let zeta = compute_zeta(f, ctx)?.zeta;
    let counts = CountSequence::from_zeta(&zeta, u)?;
    Ok(Keystream {
        p: ctx.p().clone(),
        u,
        values: counts.counts,
    })
}
