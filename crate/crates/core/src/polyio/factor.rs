use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FactoredPoly, ReducedInput};
use crate::arith::{is_prime, vp, PAdicContext, Valuation};
use crate::{Error, Integer, QPoly, Rational, Result, ZPoly};

/// Primes tried when looking for a modulus that keeps the square-free part
/// square-free; bad primes all divide the leading coefficient or the
/// discriminant, so this bound is never reached for reasonable input.
const MAX_MODULI: usize = 1000;

/// Consecutive fruitless primes before falling back to the exact
/// square-free decomposition.
const DEFLATION_ROUNDS: usize = 16;

/// Factors `f` completely over the rationals.
///
/// Every root `a/b` of the primitive integer form `g` has `b` dividing the
/// leading coefficient `L`, so `L * root` is an integer. A root of
/// multiplicity `e` is a simple root of `g^(e-1)`; modulo a small prime `q`
/// it is usually still simple there, so Newton iteration lifts it until
/// `q^k` exceeds twice the bound on `|L * root|`. Each candidate is checked
/// exactly and divided out of `g`. When some residue stays ambiguous for
/// every prime tried, the rest is handled through `gcd(g, g')` over the
/// rationals.
pub fn find_rational_roots(f: &QPoly) -> Result<FactoredPoly> {
    let degree = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    let unit = f.leading().cloned().expect("nonzero");
    let mut g = primitive(f);
    let mut roots = Vec::new();

    let zeros = g.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push((Rational::zero(), zeros as u32));
        g = ZPoly::new(g.coeffs()[zeros..].to_vec());
    }

    let complete = deflate(&mut g, &mut roots);
    if !complete && g.degree() > Some(0) {
        let rest = g.map(|c| Rational::from_integer(c.clone()));
        let squarefree = rest.div_rem(&rest.gcd(&rest.derivative())).0;
        for root in squarefree_roots(&primitive(&squarefree))? {
            let e = divide_out(&mut g, &root);
            debug_assert!(e > 0);
            roots.push((root, e));
        }
    }

    let found: u32 = roots.iter().map(|(_, e)| e).sum();
    if found as usize != degree {
        return Err(Error::SplittingFieldNotQ);
    }
    FactoredPoly::new(unit, roots)
}

/// Scales to integer coefficients with content 1 and positive leading term.
fn primitive(p: &QPoly) -> ZPoly {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Integer> = p.coeffs().iter().map(|c| (c * &lcm).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|l| l.is_negative()) { -1 } else { 1 };
    ZPoly::new(ints.into_iter().map(|c| c / &content * sign).collect())
}

fn eval_mod(h: &[u64], x: u64, q: u64) -> u64 {
    h.iter().rev().fold(0, |acc, &c| (acc * x + c) % q)
}

fn eval_mod_big(h: &ZPoly, x: &Integer, m: &Integer) -> Integer {
    h.coeffs()
        .iter()
        .rev()
        .fold(Integer::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// `b^n g(a/b)`, zero exactly when `a/b` is a root.
fn eval_homogeneous(g: &ZPoly, root: &Rational) -> Integer {
    let (a, b) = (root.numer(), root.denom());
    let mut acc = Integer::zero();
    let mut b_pow = Integer::one();
    for c in g.coeffs().iter().rev() {
        acc = acc * a + c * &b_pow;
        b_pow *= b;
    }
    acc
}

/// Exact quotient of `g` by `b x - a`, if it divides.
fn divide_linear(g: &ZPoly, root: &Rational) -> Option<ZPoly> {
    let (a, b) = (root.numer(), root.denom());
    let n = g.degree()?;
    let mut h = vec![Integer::zero(); n];
    let mut carry = Integer::zero();
    for i in (1..=n).rev() {
        let (quot, rem) = (&g.coeffs()[i] + a * &carry).div_rem(b);
        if !rem.is_zero() {
            return None;
        }
        h[i - 1] = quot.clone();
        carry = quot;
    }
    (-(a * &carry) == g.coeffs()[0]).then(|| ZPoly::new(h))
}

/// Divides `root` out of `g` as often as possible; returns the count.
fn divide_out(g: &mut ZPoly, root: &Rational) -> u32 {
    let mut e = 0;
    while let Some(h) = divide_linear(g, root) {
        *g = h;
        e += 1;
    }
    e
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime(&n.into()) {
            return n;
        }
    }
}

fn reduce_mod(p: &ZPoly, q: u64) -> Vec<u64> {
    let qi = BigInt::from(q);
    p.coeffs().iter().map(|c| c.mod_floor(&qi).to_u64().unwrap()).collect()
}

/// Removes rational roots from `g` by lifting modular roots of `g` and its
/// derivatives. Returns true once no rational root can remain in `g`.
fn deflate(g: &mut ZPoly, roots: &mut Vec<(Rational, u32)>) -> bool {
    let mut q = next_prime(g.degree().unwrap_or(0).max(2) as u64);
    let mut idle = 0;
    while idle < DEFLATION_ROUNDS {
        let Some(n) = g.degree().filter(|&n| n > 0) else {
            return true;
        };
        let lead = g.leading().expect("nonzero").clone();
        if (&lead % q).is_zero() || q <= n as u64 {
            q = next_prime(q.max(n as u64));
            continue;
        }
        let start = g.clone();
        let bound = lift_bound(&start);
        // derivatives[k] is the k-th derivative, computed on demand
        let mut derivatives = vec![start.clone(), start.derivative()];
        let mut reduced = vec![reduce_mod(&derivatives[0], q), reduce_mod(&derivatives[1], q)];
        let mut ambiguous = false;
        let mut progress = false;
        let residues: Vec<u64> = (0..q).filter(|&x| eval_mod(&reduced[0], x, q) == 0).collect();
        for x0 in residues {
            let mut k = 0;
            loop {
                if reduced.len() == k + 1 {
                    let next = derivatives[k].derivative();
                    reduced.push(reduce_mod(&next, q));
                    derivatives.push(next);
                }
                if eval_mod(&reduced[k + 1], x0, q) != 0 {
                    break;
                }
                k += 1;
            }
            let found = lift_and_check(&start, &derivatives[k], &derivatives[k + 1], x0, q, &bound);
            match found {
                Some(root) => {
                    let e = divide_out(g, &root);
                    if e > 0 {
                        roots.push((root, e));
                        progress = true;
                    }
                    if k > 0 {
                        ambiguous = true;
                    }
                }
                None if k > 0 => ambiguous = true,
                None => {}
            }
        }
        if !ambiguous {
            return true;
        }
        if progress {
            idle = 0;
        } else {
            idle += 1;
            q = next_prime(q);
        }
    }
    false
}

/// Rational roots of a primitive square-free integer polynomial.
fn squarefree_roots(h: &ZPoly) -> Result<Vec<Rational>> {
    let degree = h.degree().expect("nonconstant");
    let lead = h.leading().expect("nonzero").clone();
    let derivative = h.derivative();

    let mut q = next_prime(degree.max(2) as u64);
    for _ in 0..MAX_MODULI {
        if (&lead % q).is_zero() {
            q = next_prime(q);
            continue;
        }
        let (hq, dq) = (reduce_mod(h, q), reduce_mod(&derivative, q));
        let residues: Vec<u64> = (0..q).filter(|&x| eval_mod(&hq, x, q) == 0).collect();
        if residues.iter().any(|&x| eval_mod(&dq, x, q) == 0) {
            q = next_prime(q);
            continue;
        }
        let bound = lift_bound(h);
        let mut roots = Vec::new();
        for x0 in residues {
            if let Some(root) = lift_and_check(h, h, &derivative, x0, q, &bound) {
                roots.push(root);
            }
        }
        return Ok(roots);
    }
    Err(Error::CandidateOverflow(MAX_MODULI))
}

/// `2 * |L| * (1 + max |h_i / L|) + 1`, exceeding twice `|L * root|` for every root.
fn lift_bound(h: &ZPoly) -> Integer {
    let lead = h.leading().expect("nonzero").abs();
    let max = h.coeffs().iter().map(|c| c.abs()).max().expect("nonzero");
    let cauchy = Integer::one() + max.div_ceil(&lead);
    lead * cauchy * 2 + 1
}

/// Lifts the simple root `x0` of `d` modulo `q` and returns it if the
/// rational number it determines is a root of `h`.
fn lift_and_check(
    h: &ZPoly,
    d: &ZPoly,
    dd: &ZPoly,
    x0: u64,
    q: u64,
    bound: &Integer,
) -> Option<Rational> {
    let q = BigInt::from(q);
    let mut modulus = q.clone();
    let mut x = BigInt::from(x0);
    while &modulus < bound {
        modulus = &modulus * &modulus;
        let value = eval_mod_big(d, &x, &modulus);
        let slope = eval_mod_big(dd, &x, &modulus);
        let inverse = slope.extended_gcd(&modulus);
        debug_assert!(inverse.gcd.is_one());
        x = (&x - value * inverse.x).mod_floor(&modulus);
    }
    let lead = h.leading().expect("nonzero");
    let mut beta = (lead * &x).mod_floor(&modulus);
    if &beta * 2 > modulus {
        beta -= &modulus;
    }
    let candidate = Rational::new(beta, lead.clone());
    eval_homogeneous(h, &candidate).is_zero().then_some(candidate)
}

/// Splits off the roots with negative valuation. Each such factor has the
/// constant absolute value `|root|_p` on the p-adic integers, so
/// `shift = v_p(unit) + sum e_i v_p(root_i)` over those roots.
pub fn reduce_to_integral_roots(f: &FactoredPoly, ctx: &PAdicContext) -> ReducedInput {
    let mut shift = vp(f.unit(), ctx).finite().expect("unit is nonzero");
    let mut kept = Vec::new();
    for (root, e) in f.roots() {
        match vp(root, ctx) {
            Valuation::Finite(v) if v < 0 => shift += i64::from(*e) * v,
            _ => kept.push((root.clone(), *e)),
        }
    }
    ReducedInput {
        shift,
        fplus: FactoredPoly::monic(kept).expect("unit one"),
    }
}

/// `l_f = 1 + max v_p(root_i - root_j)`, or 1 with fewer than two roots.
pub fn compute_lf(f: &FactoredPoly, ctx: &PAdicContext) -> Result<u32> {
    let roots = f.roots();
    if let Some((r, _)) = roots.iter().find(|(r, _)| vp(r, ctx) < Valuation::Finite(0)) {
        return Err(Error::NegativeValuation(r.to_string()));
    }
    let mut max = 0i64;
    for (i, (a, _)) in roots.iter().enumerate() {
        for (b, _) in &roots[i + 1..] {
            let v = vp(&(a - b), ctx).finite().expect("roots are distinct");
            max = max.max(v);
        }
    }
    Ok(1 + max as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyio::parse_poly;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn qp(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn sorted(f: &FactoredPoly) -> Vec<(Rational, u32)> {
        let mut r = f.roots().to_vec();
        r.sort();
        r
    }

    /// Rational-root-theorem oracle: every root is +-(divisor of a_0)/(divisor of a_n).
    fn candidate_roots(p: &ZPoly) -> Vec<Rational> {
        let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
        let p = &ZPoly::new(p.coeffs()[zeros..].to_vec());
        let divisors = |n: &Integer| -> Vec<i64> {
            let n = n.abs().to_i64().unwrap();
            (1..=n).filter(|d| n % d == 0).collect()
        };
        let lead = divisors(p.leading().unwrap());
        let c0 = divisors(&p.coeff(0));
        let mut out = Vec::new();
        for a in &c0 {
            for b in &lead {
                for s in [1, -1] {
                    let r = q(s * a, *b);
                    let value = p.map(|c| Rational::from_integer(c.clone())).eval(&r);
                    if value.is_zero() && !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn small_factorizations() {
        let f = find_rational_roots(&qp(&[2, -3, 1])).unwrap();
        assert_eq!(f.unit(), &q(1, 1));
        assert_eq!(sorted(&f), vec![(q(1, 1), 1), (q(2, 1), 1)]);

        let f = find_rational_roots(&qp(&[1, -2, 1])).unwrap();
        assert_eq!(sorted(&f), vec![(q(1, 1), 2)]);

        let f = find_rational_roots(&qp(&[0, 0, -5, 5])).unwrap();
        assert_eq!(f.unit(), &q(5, 1));
        assert_eq!(sorted(&f), vec![(q(0, 1), 2), (q(1, 1), 1)]);

        // 6x^2 - x - 1 = (2x - 1)(3x + 1)
        let f = find_rational_roots(&qp(&[-1, -1, 6])).unwrap();
        assert_eq!(sorted(&f), vec![(q(-1, 3), 1), (q(1, 2), 1)]);
    }

    #[test]
    fn factorization_errors() {
        assert_eq!(find_rational_roots(&qp(&[1, 0, 1])), Err(Error::SplittingFieldNotQ));
        assert_eq!(find_rational_roots(&qp(&[-2, 0, 1])), Err(Error::SplittingFieldNotQ));
        // a rational root alone is not enough
        assert_eq!(find_rational_roots(&qp(&[-1, 1, -1, 1])), Err(Error::SplittingFieldNotQ));
        // repeated irrational factor keeps every prime ambiguous
        let f = &qp(&[-2, 0, 1]).pow(2) * &qp(&[-1, 1]);
        assert_eq!(find_rational_roots(&f), Err(Error::SplittingFieldNotQ));
        let f = &(&qp(&[1, -3]).pow(3) * &qp(&[-2, 1]).pow(2)) * &qp(&[1, 0, 1]);
        assert_eq!(find_rational_roots(&f), Err(Error::SplittingFieldNotQ));
        assert_eq!(find_rational_roots(&qp(&[7])), Err(Error::ConstantPolynomial));
        assert_eq!(find_rational_roots(&qp(&[])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn roots_colliding_modulo_small_primes() {
        // 0, 101, 202 share a residue modulo 101; multiplicities force derivative lifting
        let roots = [(q(0, 1), 2), (q(101, 1), 3), (q(202, 1), 1), (q(-5, 7), 2), (q(96, 7), 1)];
        let f = FactoredPoly::monic(roots.iter().cloned()).unwrap();
        let g = find_rational_roots(&f.expand()).unwrap();
        assert_eq!(sorted(&g), sorted(&f));
    }

    #[test]
    fn large_dense_input() {
        // roots -15..15 with varying multiplicity; constant term far beyond trial division
        let roots: Vec<(Rational, u32)> = (-15..=15).map(|k| (q(k, 1), 1 + (k.rem_euclid(3)) as u32)).collect();
        let f = FactoredPoly::new(q(7, 2), roots.clone()).unwrap();
        let g = find_rational_roots(&f.expand()).unwrap();
        assert_eq!(g.unit(), &q(7, 2));
        let mut expected = roots;
        expected.sort();
        assert_eq!(sorted(&g), expected);
    }

    #[test]
    fn reduction() {
        let f = FactoredPoly::new(q(3, 1), [(q(1, 5), 1), (q(2, 1), 1)]).unwrap();
        let red = reduce_to_integral_roots(&f, &ctx(5));
        assert_eq!(red.shift, -1);
        assert_eq!(red.fplus.roots(), &[(q(2, 1), 1)]);

        // oracle: v_5(f(x)) = -1 + v_5(x - 2) on x in 0..25
        let c = ctx(5);
        let dense = f.expand();
        for x in 0..25 {
            let x = q(x, 1);
            let lhs = vp(&dense.eval(&x), &c);
            let rhs = Valuation::Finite(-1) + vp(&(&x - q(2, 1)), &c);
            assert_eq!(lhs, rhs);
        }

        let f = FactoredPoly::new(q(7, 1), [(q(0, 1), 1)]).unwrap();
        let red = reduce_to_integral_roots(&f, &ctx(7));
        assert_eq!(red.shift, 1);
        assert_eq!(red.fplus.roots(), &[(q(0, 1), 1)]);

        let f = FactoredPoly::monic([(q(1, 1), 2), (q(5, 2), 1)]).unwrap();
        let red = reduce_to_integral_roots(&f, &ctx(3));
        assert_eq!(red.shift, 0);
        assert_eq!(red.fplus, f);
    }

    #[test]
    fn lf_values() {
        let lf = |roots: &[i64], p| {
            let f = FactoredPoly::monic(roots.iter().map(|&r| (q(r, 1), 1))).unwrap();
            compute_lf(&f, &ctx(p)).unwrap()
        };
        assert_eq!(lf(&[1, 4], 3), 2);
        assert_eq!(lf(&[6], 5), 1);
        assert_eq!(lf(&[0, 9], 3), 3);
        assert_eq!(lf(&[0, 1, 2], 7), 1);
        let f = FactoredPoly::monic([(q(1, 3), 1)]).unwrap();
        assert!(matches!(compute_lf(&f, &ctx(3)), Err(Error::NegativeValuation(_))));
    }

    fn root_set() -> impl Strategy<Value = Vec<(i64, i64, u32)>> {
        prop::collection::vec((-30i64..30, 1i64..6, 1u32..4), 1..6)
    }

    proptest! {
        #[test]
        fn factor_then_expand_is_identity(roots in root_set(), unit in 1i64..20) {
            let f = FactoredPoly::new(q(unit, 3), roots.iter().map(|&(n, d, e)| (q(n, d), e))).unwrap();
            let dense = f.expand();
            let g = find_rational_roots(&dense).unwrap();
            prop_assert_eq!(g.expand(), dense);
            prop_assert_eq!(sorted(&g), sorted(&f));
        }

        #[test]
        fn agrees_with_candidate_oracle(roots in prop::collection::vec((-12i64..12, 1i64..4), 1..4)) {
            let f = FactoredPoly::monic(roots.iter().map(|&(n, d)| (q(n, d), 1))).unwrap();
            let ints = primitive(&f.expand());
            let mut oracle = candidate_roots(&ints);
            if f.roots().iter().any(|(r, _)| r.is_zero()) {
                oracle.push(q(0, 1));
            }
            oracle.sort();
            let found: Vec<Rational> = sorted(&find_rational_roots(&f.expand()).unwrap())
                .into_iter().map(|(r, _)| r).collect();
            prop_assert_eq!(found, oracle);
        }

        #[test]
        fn integral_input_has_nonnegative_shift(coeffs in prop::collection::vec(-9i64..9, 1..4),
                                                p in prop::sample::select(vec![2u64, 3, 5])) {
            // product of (b x - a) keeps integer coefficients
            let mut f = QPoly::one();
            let mut roots = Vec::new();
            for (i, a) in coeffs.iter().enumerate() {
                let b = (i as i64 % 3) + 1;
                f = &f * &qp(&[-a, b]);
                roots.push((q(*a, b), 1));
            }
            let fac = FactoredPoly::new(f.leading().unwrap().clone(), roots).unwrap();
            prop_assert!(reduce_to_integral_roots(&fac, &ctx(p)).shift >= 0);
        }

        #[test]
        fn roots_separate_at_lf(roots in prop::collection::btree_set(-200i64..200, 1..8),
                                p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let c = ctx(p);
            let f = FactoredPoly::monic(roots.iter().map(|&r| (q(r, 1), 1))).unwrap();
            let lf = compute_lf(&f, &c).unwrap();
            prop_assert!(lf >= 1);
            let residues: std::collections::BTreeSet<Integer> = f.roots().iter()
                .map(|(r, _)| c.residue(r, lf).unwrap()).collect();
            prop_assert_eq!(residues.len(), f.roots().len());
        }
    }

    #[test]
    fn parsed_input_round_trip() {
        let parsed = parse_poly("x^3 - 7*x + 6").unwrap();
        let f = parsed.into_factored().unwrap();
        assert_eq!(sorted(&f), vec![(q(-3, 1), 1), (q(1, 1), 1), (q(2, 1), 1)]);
    }
}
