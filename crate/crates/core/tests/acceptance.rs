//! Acceptance criteria, each run at its full documented range with exact
//! equality mod p. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use fmzv::bernoulli::{Zk, L2};
use fmzv::evaluator::eval_zeta2;
use fmzv::identities::{self as id, alternate_split, reconstruct_ratio, one_odd_pattern, Report, Suite};
use fmzv::modmath::sieve_primes;
use fmzv::relations::{self, dimension_estimate, express_stable, fib, odd_basis, weight_columns, Stability};
use fmzv::{Index, Prime, Rational, ResidueCache, Variant};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn primes(lo: u64, hi: u64) -> Vec<Prime> {
    sieve_primes(lo, hi).unwrap()
}

fn p(v: u64) -> Prime {
    Prime::new(v).unwrap()
}

fn idx(s: &str) -> Index {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn clean(r: &Report) -> Result<(), String> {
    match r.failures().next() {
        None if r.summary.total > 0 => Ok(()),
        None => Err(format!("suite {} produced no cases", r.suite)),
        Some(f) => Err(format!(
            "suite {}: {} of {} cases fail, first {} at p={:?}: {} vs {}",
            r.suite, r.summary.failed, r.summary.total, f.case, f.prime, f.lhs, f.rhs
        )),
    }
}

fn row_sides(r: &Report, case: &str, prime: u64) -> Result<(String, String), String> {
    r.cases
        .iter()
        .find(|c| c.case == case && c.prime == Some(prime))
        .map(|c| (c.lhs.clone(), c.rhs.clone()))
        .ok_or_else(|| format!("missing row {case} at {prime}"))
}

fn depth_one(cache: &ResidueCache) -> Outcome {
    let r = id::verify_depth_one(9, &primes(5, 300), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    ensure(eval_zeta2(&idx("1"), p(7)) == 3, "zeta2(1) at 7")?;
    ensure(L2(p(7)) == 2, "L(2) at 7")?;
    ensure(Zk(3, p(7)).unwrap() == 1, "Z(3) at 7")?;
    let even_zero = r.cases.iter().filter(|c| ["k=2", "k=4", "k=6", "k=8"].contains(&c.case.as_str())).all(|c| c.lhs == "0");
    ensure(even_zero, "even single values vanish")?;
    Ok(format!("{} cases", r.summary.total))
}

fn depth_two(cache: &ResidueCache) -> Outcome {
    let r = id::verify_depth_two(9, &primes(5, 300), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    ensure(row_sides(&r, "(1,2)", 7)?.0 == "1", "zeta2(1,2) at 7")?;
    ensure(row_sides(&r, "(2,1)", 7)?.0 == "5", "zeta2(2,1) at 7")?;
    Ok(format!("{} cases", r.summary.total))
}

fn key_and_parity(cache: &ResidueCache) -> Outcome {
    let ps = primes(5, 200);
    let a = id::verify_key_identity(7, &ps, cache).map_err(|e| e.to_string())?;
    let b = id::verify_parity(7, &ps, cache).map_err(|e| e.to_string())?;
    clean(&a)?;
    clean(&b)?;
    let indices = a.cases.iter().map(|c| c.case.as_str()).collect::<std::collections::BTreeSet<_>>().len();
    ensure(indices == 127, format!("expected 127 indices, saw {indices}"))?;
    Ok(format!("{} + {} cases", a.summary.total, b.summary.total))
}

fn antipode(cache: &ResidueCache) -> Outcome {
    let r = id::verify_antipode(8, 5, &primes(5, 100), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    let symbolic = r.cases.iter().filter(|c| c.prime.is_none()).count();
    let expected = Index::all_up_to_weight(8).iter().filter(|i| i.depth() <= 5).count();
    ensure(symbolic == expected, format!("{symbolic} symbolic rows, expected {expected}"))?;
    Ok(format!("{symbolic} symbolic, {} numeric", r.summary.total - symbolic))
}

fn even_odd(cache: &ResidueCache) -> Outcome {
    let r = id::verify_even_odd(6, &primes(5, 200), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    Ok(format!("{} cases", r.summary.total))
}

fn lemmas(_: &ResidueCache) -> Outcome {
    let r = id::verify_lemmas(10, 8);
    clean(&r)?;
    let g = r.cases.iter().filter(|c| c.case.starts_with('g')).count();
    Ok(format!("{g} g/g1 identities, {} R identities", r.summary.total - g))
}

fn sum_formulas(cache: &ResidueCache) -> Outcome {
    let r = id::verify_sum_formula(10, &primes(5, 200), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    ensure(row_sides(&r, "S(3,2)", 7)? == ("6".into(), "6".into()), "S(3,2) at 7")?;
    Ok(format!("{} cases", r.summary.total))
}

fn one_odd(cache: &ResidueCache) -> Outcome {
    let r = id::verify_one_odd(6, 9, &primes(5, 200), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    let stable = r.cases.iter().filter(|c| c.case.ends_with("stable")).count();
    ensure(stable > 0, "no reconstruction rows")?;
    // (4,1) with disjoint ranges below and above 200
    let pat = one_odd_pattern(5, 2, 2);
    let lo = reconstruct_ratio(&pat, 5, &primes(8, 200), cache).map_err(|e| e.to_string())?;
    let hi = reconstruct_ratio(&pat, 5, &primes(201, 400), cache).map_err(|e| e.to_string())?;
    ensure(lo.constant.is_some() && lo.constant == hi.constant, format!("(4,1): {:?} vs {:?}", lo.constant, hi.constant))?;
    let c = r
        .annotations
        .iter()
        .filter(|a| a.key == "c")
        .map(|a| a.value.as_str())
        .collect::<Vec<_>>();
    Ok(format!("{} cases, {stable} constants, e.g. c = {}", r.summary.total, c.first().unwrap_or(&"?")))
}

fn weighted(cache: &ResidueCache) -> Outcome {
    let ps = primes(5, 200);
    let one = id::run_suite(Suite::Weighted1, Default::default(), &ps, cache).map_err(|e| e.to_string())?;
    let two = id::run_suite(Suite::Weighted2, Default::default(), &ps, cache).map_err(|e| e.to_string())?;
    clean(&one)?;
    clean(&two)?;
    let n1 = Index::all_up_to_weight(8).iter().filter(|i| i.depth() <= 4).count();
    let n2 = Index::all_up_to_weight(9).iter().filter(|i| i.depth() <= 4 && id::weighted_level2_applies(i)).count();
    let seen = |r: &Report| r.cases.iter().map(|c| c.case.clone()).collect::<std::collections::BTreeSet<_>>().len();
    ensure(seen(&one) == n1 && seen(&two) == n2, "index coverage")?;
    ensure(row_sides(&one, "(1,2)", 7)? == ("1".into(), "1".into()), "level-1 anchor")?;
    ensure(row_sides(&two, "(2,1)", 7)? == ("3".into(), "3".into()), "level-2 anchor")?;
    Ok(format!("{n1} level-1 and {n2} level-2 indices"))
}

fn twos_vanishing(cache: &ResidueCache) -> Outcome {
    let r = id::verify_twos_vanishing(8, &primes(5, 200), cache).map_err(|e| e.to_string())?;
    clean(&r)?;
    ensure(row_sides(&r, "r=2 a=1", 7)?.0 == "0", "anchor")?;
    Ok(format!("{} cases", r.summary.total))
}

fn basis(cache: &ResidueCache) -> Outcome {
    let mut expressed = 0;
    for k in 3..=5u32 {
        let ps = primes(k as u64 + 3, 400);
        let b = odd_basis(k, 1);
        for col in weight_columns(k, Variant::Zeta2) {
            if b.contains(&col) {
                continue;
            }
            let e = express_stable(&col, &b, &ps, relations::DEFAULT_HEIGHT, cache).map_err(|e| e.to_string())?;
            ensure(e.status == Stability::Stable, format!("{col}: {}", e.status))?;
            let (a, bb) = alternate_split(&ps);
            ensure(a.iter().all(|q| !bb.contains(q)), "prime sets overlap")?;
            expressed += 1;
        }
    }
    let b3 = odd_basis(3, 1);
    let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    for (t, c) in [("2,1", q(-1, 4)), ("1,2", q(-3, 4))] {
        let e = express_stable(&t.parse().unwrap(), &b3, &primes(6, 400), relations::DEFAULT_HEIGHT, cache)
            .map_err(|e| e.to_string())?;
        let three = b3.iter().position(|x| x.index == idx("3")).unwrap();
        ensure(e.coefficients.as_ref().map(|v| v[three].clone()) == Some(c.clone()), format!("{t}: {:?}", e.coefficients))?;
    }
    let mut dims = Vec::new();
    for k in 1..=6 {
        let d = dimension_estimate(k, Variant::Zeta2, &primes(5, 400), relations::DEFAULT_HEIGHT, cache)
            .map_err(|e| e.to_string())?;
        ensure(d.dimension as u64 == fib(k), format!("weight {k}: {} vs F = {}", d.dimension, fib(k)))?;
        dims.push(d.dimension.to_string());
    }
    Ok(format!("{expressed} expressions stable, dims {}", dims.join(",")))
}

fn run_bin(args: &[&str], cache: Option<&std::path::Path>) -> Result<(i32, Vec<u8>), String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fmzv"));
    cmd.args(args).env_remove("FMZV_CACHE");
    if let Some(c) = cache {
        cmd.arg("--cache").arg(c);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn determinism(_: &ResidueCache) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache.csv");
    let commands: [&[&str]; 4] = [
        &["--format", "json", "verify", "--suite", "parity", "--wmax", "5", "--primes", "5..120"],
        &["--format", "csv", "verify", "--suite", "oneodd", "--rmax", "3", "--wmax", "5", "--primes", "5..200"],
        &["--format", "json", "discover", "--target", "1,1,2", "--basis", "odd", "--primes", "5..300"],
        &["--format", "text", "dims", "--weight", "4", "--primes", "5..300"],
    ];
    for args in commands {
        let (c0, cold) = run_bin(args, Some(&cache))?;
        let (c1, warm) = run_bin(args, Some(&cache))?;
        let mut serial_args = vec!["--jobs", "1"];
        serial_args.extend_from_slice(args);
        let (c2, serial) = run_bin(&serial_args, None)?;
        let mut wide_args = vec!["--jobs", "8"];
        wide_args.extend_from_slice(args);
        let (c3, wide) = run_bin(&wide_args, None)?;
        ensure([c0, c1, c2, c3] == [0; 4], format!("{args:?}: exit codes {:?}", [c0, c1, c2, c3]))?;
        ensure(cold == warm, format!("{args:?}: warm-cache output differs"))?;
        ensure(serial == wide && serial == cold, format!("{args:?}: parallel output differs"))?;
    }
    let (c, _) = run_bin(&["cache", "verify"], Some(&cache))?;
    ensure(c == 0, "cache verify failed")?;
    Ok(format!("{} commands byte-identical", commands.len()))
}

fn main() {
    let criteria: [(&str, fn(&ResidueCache) -> Outcome); 12] = [
        ("depth-one closed forms", depth_one),
        ("depth-two closed form", depth_two),
        ("key and parity identities", key_and_parity),
        ("antipode identity", antipode),
        ("even and odd rewrites", even_odd),
        ("symbolic lemmas", lemmas),
        ("sum formulas", sum_formulas),
        ("explicit (2,..,1,..,2) values and pattern constants", one_odd),
        ("permutation-weighted sums", weighted),
        ("{1,2} weighted vanishing", twos_vanishing),
        ("basis expressions and dimensions", basis),
        ("determinism", determinism),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let cache = ResidueCache::in_memory();
    let mut failed = 0;
    let stdout = std::io::stdout();
    for (n, (name, f)) in criteria.iter().enumerate() {
        let n = n + 1;
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&cache))).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let line = match &outcome {
            Ok(detail) => format!("criterion {n:>2} PASS  {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                format!("criterion {n:>2} FAIL  {name}: {why} ({secs:.1}s)")
            }
        };
        let _ = writeln!(stdout.lock(), "{line}");
    }
    if failed > 0 {
        let _ = writeln!(stdout.lock(), "{failed} criteria failed");
        std::process::exit(1);
    }
}
