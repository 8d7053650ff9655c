use std::fmt::Write as _;

use igusa_core::lfsr::{self, period_of, Lfsr};
use igusa_core::polyio::{find_rational_roots, parse_poly};
use igusa_core::series::{brute_counts, CountSequence};
use igusa_core::zeta::{compute_zeta, compute_zeta_spf};
use igusa_core::{Error, FactoredPoly, Integer, PAdicContext, ParsedPoly, WeightedTree};
use serde_json::json;

use crate::{Format, Method};

#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

pub type Outcome = Result<String, Failure>;

pub fn context(prime: &str) -> Result<PAdicContext, Failure> {
    let p: Integer = prime
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--prime: not an integer: {prime}")))?;
    Ok(PAdicContext::new(p)?)
}

/// Parses and, for expanded input, factors over the rationals.
pub fn factored(poly: &str) -> Result<FactoredPoly, Failure> {
    Ok(match parse_poly(poly)? {
        ParsedPoly::Factored(f) => f,
        ParsedPoly::Dense(d) => find_rational_roots(&d)?,
    })
}

fn reject(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("format {format:?} is not available here")))
    }
}

pub fn zeta(poly: &str, prime: &str, format: Format) -> Outcome {
    reject(format, &[Format::Text, Format::Json])?;
    let ctx = context(prime)?;
    let z = compute_zeta(&factored(poly)?, &ctx)?.zeta;
    Ok(match format {
        Format::Json => z.to_json() + "\n",
        _ => format!(
            "Z = {}, t = {}^(-s)\nZ = {}\n",
            z.normalize(),
            ctx.p(),
            z.display_terms()
        ),
    })
}

pub fn poincare(poly: &str, prime: &str, format: Format) -> Outcome {
    reject(format, &[Format::Text, Format::Json])?;
    let ctx = context(prime)?;
    let h = compute_zeta(&factored(poly)?, &ctx)?.zeta.poincare();
    Ok(match format {
        Format::Json => {
            let strings = |c: &[Integer]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let doc = json!({
                "p": ctx.p().to_string(),
                "num": strings(h.numerator().coeffs()),
                "den": strings(h.denominator().coeffs()),
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        _ => format!("H = {h}, t = {}^(-s)\n", ctx.p()),
    })
}

fn brute(f: &FactoredPoly, ctx: &PAdicContext, max_m: usize, cap: u64) -> Result<CountSequence, Failure> {
    let counts = brute_counts(&f.integer_poly()?, ctx, max_m, cap)?;
    Ok(CountSequence::from_counts(ctx, counts))
}

/// Deepest `n <= max_m` with `p^n <= cap`.
fn brute_depth(ctx: &PAdicContext, max_m: usize, cap: u64) -> usize {
    (0..=max_m)
        .take_while(|&n| ctx.pow(n as u32) <= Integer::from(cap))
        .last()
        .unwrap_or(0)
}

pub fn count(poly: &str, prime: &str, max_m: usize, method: Method, format: Format, cap: u64) -> Outcome {
    reject(format, &[Format::Text, Format::Json])?;
    let ctx = context(prime)?;
    let f = factored(poly)?;
    f.integer_poly()?;
    let by_tree = || -> Result<CountSequence, Failure> {
        Ok(CountSequence::from_zeta(&compute_zeta(&f, &ctx)?.zeta, max_m)?)
    };
    let by_spf = || -> Result<CountSequence, Failure> {
        Ok(CountSequence::from_zeta(&compute_zeta_spf(&f, &ctx)?, max_m)?)
    };
    let single = match method {
        Method::Tree => Some(by_tree()?),
        Method::Spf => Some(by_spf()?),
        Method::Brute => Some(brute(&f, &ctx, max_m, cap)?),
        Method::All => None,
    };
    if let Some(seq) = single {
        return Ok(match format {
            Format::Json => seq.to_json() + "\n",
            _ => seq.text(),
        });
    }

    let tree = by_tree()?;
    let spf = by_spf()?;
    let depth = brute_depth(&ctx, max_m, cap);
    let brute = brute(&f, &ctx, depth, cap)?;
    let agree = tree.counts == spf.counts && brute.counts[..] == tree.counts[..=depth];
    let out = match format {
        Format::Json => {
            let strings = |c: &[Integer]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let doc = json!({
                "p": ctx.p().to_string(),
                "counts": strings(&tree.counts),
                "coeffs": tree.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "methods": {
                    "tree": strings(&tree.counts),
                    "spf": strings(&spf.counts),
                    "brute": strings(&brute.counts),
                },
                "agree": agree,
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        _ => {
            let mut out = String::from("# tree spf brute\n");
            for m in 0..=max_m {
                let b = brute.counts.get(m).map_or("-".to_string(), |n| n.to_string());
                let _ = writeln!(out, "N_{m} = {}  {}  {b}", tree.counts[m], spf.counts[m]);
            }
            out
        }
    };
    if agree {
        Ok(out)
    } else {
        Err(Failure::Verify(out + "methods disagree\n"))
    }
}

pub fn keystream(poly: &str, prime: &str, length: usize, format: Format) -> Outcome {
    reject(format, &[Format::Text, Format::Json])?;
    let ctx = context(prime)?;
    let k = lfsr::keystream(&factored(poly)?, &ctx, length)?;
    Ok(match format {
        Format::Json => k.to_json() + "\n",
        _ => k.text(),
    })
}

fn tree_text(t: &WeightedTree) -> String {
    let mut out = format!("p = {}, l_f = {}\n", t.p(), t.lf());
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let v = t.vertex(id);
        let _ = writeln!(
            out,
            "{}level={} residue={} W={} W*={} Val={}",
            "  ".repeat(v.level as usize),
            v.level,
            v.residue,
            v.weight,
            v.stalk_weight,
            v.valence
        );
        stack.extend(v.children.iter().rev());
    }
    out
}

pub fn tree(poly: &str, prime: &str, format: Format) -> Outcome {
    let ctx = context(prime)?;
    let t = compute_zeta(&factored(poly)?, &ctx)?.tree;
    Ok(match format {
        Format::Json => t.to_json() + "\n",
        Format::Dot => t.to_dot(),
        Format::Text => tree_text(&t),
    })
}

pub fn lfsr(p: u64, taps: Vec<u64>, init: Vec<u64>, steps: usize, period: bool, format: Format) -> Outcome {
    reject(format, &[Format::Text, Format::Json])?;
    let l = Lfsr::new(p, taps, init)?;
    let out = l.run(steps);
    let cycle = period.then(|| period_of(&l));
    Ok(match format {
        Format::Json => {
            let mut doc = json!({
                "p": p.to_string(),
                "output": out.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            });
            if let Some((mu, lambda)) = cycle {
                doc["preperiod"] = json!(mu.to_string());
                doc["period"] = json!(lambda.to_string());
            }
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        _ => {
            let line: Vec<String> = out.iter().map(|a| a.to_string()).collect();
            let mut text = line.join(",") + "\n";
            if let Some((mu, lambda)) = cycle {
                let _ = writeln!(text, "preperiod = {mu}\nperiod = {lambda}");
            }
            text
        }
    })
}
