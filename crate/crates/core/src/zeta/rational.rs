use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::{Error, Integer, QPoly, Rational, Result, ZPoly};

/// A rational function of `t` in canonical form: integer coefficients with
/// overall content 1, numerator and denominator coprime over the rationals,
/// and the lowest-order nonzero denominator coefficient positive. Zero is
/// `0/1`. Canonical forms of equal functions are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunction {
    /// Panics if `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;

        let lcm = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let to_int = |p: &QPoly| -> Vec<Integer> {
            p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect()
        };
        let (mut n, mut d) = (to_int(&num), to_int(&den));
        let content = n.iter().chain(&d).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lowest = d.iter().find(|c| !c.is_zero()).expect("nonzero denominator");
        let content = if lowest.is_negative() { -content } else { content };
        for c in n.iter_mut().chain(d.iter_mut()) {
            *c = &*c / &content;
        }
        RationalFunction {
            num: ZPoly::new(n),
            den: ZPoly::new(d),
        }
    }

    pub fn from_integer_parts(num: ZPoly, den: ZPoly) -> Self {
        RationalFunction::new(to_q(&num), to_q(&den))
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::new(QPoly::constant(c), QPoly::one())
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction::new(p, QPoly::one())
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        RationalFunction::from_poly(QPoly::monomial(Rational::one(), 1))
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cross-multiplication test `n1 * d2 == n2 * d1`; independent of the
    /// canonical form.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let d = to_q(&self.den).eval(t);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(t.to_string()));
        }
        Ok(to_q(&self.num).eval(t) / d)
    }

    /// Power-series coefficients of `t^0 .. t^order` by exact long division.
    pub fn series(&self, order: usize) -> Result<Vec<Rational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtPoint("0".to_string()));
        }
        let d0 = Rational::from_integer(d0);
        let den = to_q(&self.den);
        let num = to_q(&self.num);
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(den.coeffs().len().saturating_sub(1)) {
                acc -= den.coeff(j) * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    pub fn to_q_parts(&self) -> (QPoly, QPoly) {
        (to_q(&self.num), to_q(&self.den))
    }
}

pub(crate) fn to_q(p: &ZPoly) -> QPoly {
    p.map(|c| Rational::from_integer(c.clone()))
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &ZPoly| {
            let s = p.display_in("t");
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num.display_in("t"))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let (a, b) = (self.to_q_parts(), rhs.to_q_parts());
        RationalFunction::new(&(&a.0 * &b.1) + &(&b.0 * &a.1), &a.1 * &b.1)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let (a, b) = (self.to_q_parts(), rhs.to_q_parts());
        RationalFunction::new(&a.0 * &b.0, &a.1 * &b.1)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;

    /// Panics on division by zero.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        let (a, b) = (self.to_q_parts(), rhs.to_q_parts());
        RationalFunction::new(&a.0 * &b.1, &a.1 * &b.0)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
