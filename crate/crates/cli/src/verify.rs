use std::fmt::Write as _;

use igusa_core::series::{brute_counts, coeff_stream, CountSequence};
use igusa_core::zeta::{compute_zeta, compute_zeta_spf, RationalFunction};
use igusa_core::{QPoly, Rational};
use num_traits::One;

use crate::commands::{context, factored, Failure, Outcome};

enum Verdict {
    Pass,
    Fail(String),
    Skip(String),
}

/// Runs every cross-check on one input; any failure makes the whole run a
/// verification failure.
pub fn verify(poly: &str, prime: &str, max_m: usize, cap: u64) -> Outcome {
    let ctx = context(prime)?;
    let f = factored(poly)?;
    let z = compute_zeta(&f, &ctx)?.zeta;
    let spf = compute_zeta_spf(&f, &ctx)?;
    let zr = z.normalize();
    let integer = f.integer_poly().ok();
    let order = max_m.max(10);

    let mut checks: Vec<(&str, Verdict)> = Vec::new();
    let check = |ok: bool, detail: String| if ok { Verdict::Pass } else { Verdict::Fail(detail) };

    checks.push((
        "tree and stationary phase agree",
        check(zr == spf.normalize(), format!("{zr} vs {}", spf.normalize())),
    ));
    let at_one = zr.eval(&Rational::one());
    checks.push(("Z(1) = 1", check(at_one == Ok(Rational::one()), format!("{at_one:?}"))));

    let one_minus_t = RationalFunction::from_poly(QPoly::new(vec![Rational::one(), -Rational::one()]));
    let lhs = &(&one_minus_t * &z.poincare()) + &(&RationalFunction::t() * &zr);
    checks.push(("(1 - t) H + t Z = 1", check(lhs == RationalFunction::one(), lhs.to_string())));

    checks.push((
        "term expansion matches long division",
        match coeff_stream(&z, order) {
            Ok(stream) => check(zr.series(order) == Ok(stream), format!("order {order}")),
            Err(e) => Verdict::Skip(e.to_string()),
        },
    ));

    let counts = integer
        .as_ref()
        .map(|_| CountSequence::from_zeta(&z, max_m).map(|s| s.counts));
    checks.push((
        "counts are integers with N_(n+1) <= p N_n",
        match &counts {
            None => Verdict::Skip("coefficients are not integers".into()),
            Some(Err(e)) => Verdict::Fail(e.to_string()),
            Some(Ok(c)) => check(
                c.windows(2).all(|w| w[1] <= &w[0] * ctx.p()),
                format!("{c:?}"),
            ),
        },
    ));

    checks.push((
        "brute force matches",
        match (&integer, &counts) {
            (Some(g), Some(Ok(c))) => {
                let depth = (0..=max_m)
                    .take_while(|&n| ctx.pow(n as u32) <= cap.into())
                    .last()
                    .unwrap_or(0);
                match brute_counts(g, &ctx, depth, cap) {
                    Ok(b) => check(b[..] == c[..=depth], format!("brute {b:?}")),
                    Err(e) => Verdict::Skip(e.to_string()),
                }
            }
            _ => Verdict::Skip("no counts to compare".into()),
        },
    ));

    let mut report = String::new();
    let mut failed = false;
    for (name, verdict) in checks {
        let _ = match verdict {
            Verdict::Pass => writeln!(report, "PASS {name}"),
            Verdict::Skip(why) => writeln!(report, "SKIP {name}: {why}"),
            Verdict::Fail(why) => {
                failed = true;
                writeln!(report, "FAIL {name}: {why}")
            }
        };
    }
    if failed {
        Err(Failure::Verify(report))
    } else {
        Ok(report)
    }
}
