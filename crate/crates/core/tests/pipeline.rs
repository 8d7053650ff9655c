use igusa_core::polyio::{find_rational_roots, parse_poly};
use igusa_core::series::{brute_counts, CountSequence};
use igusa_core::zeta::{compute_zeta, compute_zeta_spf};
use igusa_core::{FactoredPoly, PAdicContext, QPoly, Rational, WeightedTree, ZetaFunction};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn roots_strategy() -> impl Strategy<Value = Vec<(i64, i64, u32)>> {
    prop::collection::vec((-40i64..40, 1i64..5, 1u32..4), 1..5)
}

fn build(roots: &[(i64, i64, u32)], p: u64) -> Option<FactoredPoly> {
    let mut kept: Vec<(Rational, u32)> = Vec::new();
    for &(a, b, e) in roots {
        let r = q(a, b);
        if b as u64 % p == 0 || kept.iter().any(|(k, _)| *k == r) {
            continue;
        }
        kept.push((r, e));
    }
    // clearing denominators keeps integer coefficients
    let unit = kept
        .iter()
        .map(|(r, e)| num_traits::pow(Rational::from_integer(r.denom().clone()), *e as usize))
        .product();
    FactoredPoly::new(unit, kept).ok().filter(|f| f.degree() > 0)
}

#[test]
fn string_to_counts() {
    let ctx = PAdicContext::new(3).unwrap();
    for text in ["x^3 - 6*x^2 + 9*x - 4", "(x - 1)^2*(x - 4)"] {
        let f = match parse_poly(text).unwrap() {
            igusa_core::ParsedPoly::Dense(d) => find_rational_roots(&d).unwrap(),
            igusa_core::ParsedPoly::Factored(f) => f,
        };
        let z = compute_zeta(&f, &ctx).unwrap().zeta;
        let seq = CountSequence::from_zeta(&z, 5).unwrap();
        let expected: Vec<_> = [1, 1, 3, 9, 18, 36].iter().map(|&n: &i64| n.into()).collect();
        assert_eq!(seq.counts, expected);
    }
}

#[test]
fn large_prime_zeta() {
    // p beyond 64 bits: the tree still works, brute force refuses
    let p: igusa_core::Integer = "18446744073709551629".parse().unwrap();
    let ctx = PAdicContext::new(p).unwrap();
    let f = FactoredPoly::monic([(q(0, 1), 2), (q(1, 1), 1)]).unwrap();
    let z = compute_zeta(&f, &ctx).unwrap().zeta;
    assert_eq!(z.eval_at_one(), q(1, 1));
    assert!(z.normalize().equals(&compute_zeta_spf(&f, &ctx).unwrap().normalize()));
    let g = f.integer_poly().unwrap();
    assert!(brute_counts(&g, &ctx, 1, 10_000_000).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dense_input_factors_back(roots in roots_strategy(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let Some(f) = build(&roots, p) else { return Ok(()); };
        let text = f.expand().to_string();
        let dense: QPoly = parse_poly(&text).unwrap().to_dense();
        let g = find_rational_roots(&dense).unwrap();
        let ctx = PAdicContext::new(p).unwrap();
        let a = compute_zeta(&f, &ctx).unwrap().zeta.normalize();
        let b = compute_zeta(&g, &ctx).unwrap().zeta.normalize();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn zeta_and_tree_documents_round_trip(roots in roots_strategy(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let Some(f) = build(&roots, p) else { return Ok(()); };
        let ctx = PAdicContext::new(p).unwrap();
        let run = compute_zeta(&f, &ctx).unwrap();
        prop_assert_eq!(ZetaFunction::from_json(&run.zeta.to_json()).unwrap(), run.zeta.clone());
        prop_assert_eq!(WeightedTree::from_json(&run.tree.to_json()).unwrap(), run.tree);
    }

    #[test]
    fn counts_match_enumeration(roots in roots_strategy(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let Some(f) = build(&roots, p) else { return Ok(()); };
        let ctx = PAdicContext::new(p).unwrap();
        let n = match p { 2 => 10, 3 => 6, _ => 4 };
        let z = compute_zeta(&f, &ctx).unwrap().zeta;
        let seq = CountSequence::from_zeta(&z, n).unwrap();
        let brute = brute_counts(&f.integer_poly().unwrap(), &ctx, n, 100_000).unwrap();
        prop_assert_eq!(seq.counts, brute);
    }
}
