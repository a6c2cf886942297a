//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use liedim::bounds::{find_crossover, leading_coeff_check, local_lower, selmer_upper, BoundParams};
use liedim::combinatorics::{
    binomial, relation_image_upper_bound, witt_dimension, zn_n_lower_bound, zn_nprime_formula,
};
use liedim::eigen::{f0_count, f0_upper_bound, sym_eigen_dims};
use liedim::hall::verify_hall_spans;
use liedim::oracle::{Oracle, Pairing};
use liedim::quotient::QuotientDims;
use liedim::zeros::{
    count_vanishing_indices, fiber_partition, kernel_box_count, AnnihilatorProfile, ExponentMatrix,
    H2Params,
};
use liedim::BigCount;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn metabelian_formula() -> Outcome {
    let start = Instant::now();
    let q =
        QuotientDims::new(Oracle::default(), 2, Pairing::default()).map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for n in 2..=7 {
        let exact = q.zn_nprime_exact(n).map_err(|e| e.to_string())?;
        let formula = zn_nprime_formula(2, n as u64).unwrap();
        ensure(exact == formula, || {
            format!("n={n}: exact {exact} formula {formula}")
        })?;
        seen.push(exact.to_string());
    }
    ensure(seen[..3] == ["6", "20", "45"], || {
        format!("values {seen:?}")
    })?;
    Ok(format!(
        "values {} ({})",
        seen.join(","),
        within(start, Duration::from_secs(300))?
    ))
}

fn hall_spanning() -> Outcome {
    let start = Instant::now();
    let oracle = Oracle::default();
    for n in 1..=7 {
        let r = verify_hall_spans(&oracle, 4, n).map_err(|e| e.to_string())?;
        let witt = witt_dimension(4, n as u64);
        ensure(witt == r.total_rank as u64, || {
            format!("n={n}: rank {} witt {witt}", r.total_rank)
        })?;
        ensure(
            r.deep_rank == r.derived_rank && r.union_rank == r.derived_rank,
            || {
                format!(
                    "n={n}: level>=2 rank {} derived {} union {}",
                    r.deep_rank, r.derived_rank, r.union_rank
                )
            },
        )?;
        if n == 4 {
            ensure((r.total_rank, r.deep_rank) == (60, 15), || {
                format!("degree 4: {r:?}")
            })?;
        }
    }
    Ok(format!(
        "k=4, n<=7 ({})",
        within(start, Duration::from_secs(300))?
    ))
}

fn lower_bound_soundness() -> Outcome {
    let cases: [(usize, std::ops::RangeInclusive<usize>); 2] = [(2, 2..=7), (3, 2..=5)];
    let mut checked = 0;
    for (g, range) in cases {
        let q = QuotientDims::new(Oracle::default(), g, Pairing::default())
            .map_err(|e| e.to_string())?;
        for n in range {
            let r = q.check_lower_bound(n).map_err(|e| e.to_string())?;
            let (gu, nu) = (g as u64, n as u64);
            let lower = zn_n_lower_bound(gu, nu).unwrap();
            ensure(r.dim_zn >= lower, || {
                format!("g={g} n={n}: {} < {lower}", r.dim_zn)
            })?;
            let bound = binomial(nu + 2 * gu - 3, 2 * gu - 1);
            ensure(bound == relation_image_upper_bound(gu, nu).unwrap(), || {
                "relation bound formula".into()
            })?;
            ensure(r.relation_image_exact <= bound, || {
                format!(
                    "g={g} n={n}: relation image {} > {bound}",
                    r.relation_image_exact
                )
            })?;
            if g == 2 && (n == 2 || n == 3) {
                let expected = if n == 2 { 5u64 } else { 16 };
                ensure(r.dim_zn == expected && lower == expected, || {
                    format!(
                        "g=2 n={n}: exact {} lower {lower}, expected {expected}",
                        r.dim_zn
                    )
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} cases"))
}

/// Sign-weighted count of monomials f^alpha, |alpha| = m, straight from the definition.
fn enumerate_split(g: usize, m: u64) -> (u64, u64) {
    fn rec(slot: usize, g: usize, left: u64, minus: u64, acc: &mut (u64, u64)) {
        if slot == 2 * g {
            if left == 0 {
                if minus.is_multiple_of(2) {
                    acc.0 += 1
                } else {
                    acc.1 += 1
                }
            }
            return;
        }
        for a in 0..=left {
            rec(
                slot + 1,
                g,
                left - a,
                if slot >= g { minus + a } else { minus },
                acc,
            );
        }
    }
    let mut acc = (0, 0);
    rec(0, g, m, 0, &mut acc);
    acc
}

fn eigenspace_identities() -> Outcome {
    for g in 1..=4u64 {
        for m in 0..=21u64 {
            let s = sym_eigen_dims(g, m);
            let total = binomial(m + 2 * g - 1, 2 * g - 1);
            ensure(s.total() == total, || {
                format!("g={g} m={m}: total {} vs {total}", s.total())
            })?;
            ensure(m % 2 == 0 || s.plus == s.minus, || {
                format!("g={g} m={m}: odd split {s:?}")
            })?;
        }
    }
    for g in 1..=3u64 {
        for m in 0..=10u64 {
            let (p, q) = enumerate_split(g as usize, m);
            let s = sym_eigen_dims(g, m);
            ensure(s.plus == p && s.minus == q, || {
                format!("g={g} m={m}: {s:?} vs ({p},{q})")
            })?;
        }
    }
    Ok("g<=4, m<=21; enumeration g<=3, m<=10".into())
}

fn f0_counting() -> Outcome {
    for g in 1..=5 {
        for n in 2..=30 {
            let (c, b) = (f0_count(g, n).unwrap(), f0_upper_bound(g, n).unwrap());
            ensure(c <= b, || format!("g={g} n={n}: {c} > {b}"))?;
        }
    }
    for n in [2, 3] {
        let (c, b) = (f0_count(2, n).unwrap(), f0_upper_bound(2, n).unwrap());
        ensure(c == b, || format!("g=2 n={n}: {c} != {b}"))?;
    }
    Ok("g<=5, n<=30".into())
}

fn fiber_identities() -> Outcome {
    let start = Instant::now();
    let d = ExponentMatrix::new(vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1]], 1)
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut profiles = 0;
    for n in 2..=12u64 {
        let r = fiber_partition(&d, 2, n).map_err(|e| e.to_string())?;
        let sum: BigCount = r.fibers.iter().map(|f| f.size.clone()).sum();
        ensure(sum == binomial(n + 2, 4), || {
            format!("n={n}: fibers sum to {sum}")
        })?;
        let kernel = kernel_box_count(&d, n).map_err(|e| e.to_string())?;
        ensure(r.max_fiber <= kernel, || {
            format!("n={n}: max fiber {} > {kernel}", r.max_fiber)
        })?;
        if n == 5 {
            ensure(kernel == 49u64, || format!("n=5 kernel box {kernel}"))?;
        }
        for _ in 0..100 {
            let l = rng.gen_range(1..=4u64);
            let mut roots = BTreeMap::new();
            for prefix in -1..=(n as i64) {
                if rng.gen_bool(0.6) {
                    let set: BTreeSet<i64> = (0..l).map(|_| rng.gen_range(-1..=n as i64)).collect();
                    roots.insert(vec![prefix], set);
                }
            }
            let p = AnnihilatorProfile::new(l, rng.gen_range(1..=3), roots)
                .map_err(|e| e.to_string())?;
            let v = count_vanishing_indices(&d, &p, 2, n).map_err(|e| e.to_string())?;
            ensure(v.within_bound(), || {
                format!("n={n}: vanishing {} > {}", v.count, v.bound)
            })?;
            profiles += 1;
        }
    }
    Ok(format!(
        "n<=12, {profiles} random profiles ({})",
        within(start, Duration::from_secs(60))?
    ))
}

fn crossover_existence() -> Outcome {
    let start = Instant::now();
    let params = BoundParams::new(2, H2Params::default(), 0, 200).map_err(|e| e.to_string())?;
    let report = find_crossover(&params).map_err(|e| e.to_string())?;
    let n0 = report
        .n0
        .ok_or_else(|| format!("no crossover: {:?}", report.diagnostic))?;
    for n in n0..=200 {
        let (u, l) = (
            selmer_upper(&params, n).unwrap(),
            local_lower(2, n).unwrap(),
        );
        ensure(u < l, || format!("n={n}: upper {u} >= lower {l}"))?;
    }
    ensure(leading_coeff_check(2) && report.leading_ok, || {
        "leading coefficient at g=2".into()
    })?;
    ensure((2..=20).all(leading_coeff_check), || {
        "leading coefficient for g in 2..=20".into()
    })?;
    ensure(!leading_coeff_check(1), || {
        "leading coefficient at g=1".into()
    })?;
    Ok(format!(
        "n0={n0} ({})",
        within(start, Duration::from_secs(10))?
    ))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_liedim"))
            .args(["verify", "--g", "2", "--max-n", "6"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(
        a.status.code() == Some(0) && b.status.code() == Some(0),
        || format!("exit codes {:?}, {:?}", a.status.code(), b.status.code()),
    )?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    ensure(!a.stdout.is_empty(), || "empty report".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("metabelian formula matches oracle", metabelian_formula),
        ("Hall elements span", hall_spanning),
        ("surface lower bound is sound", lower_bound_soundness),
        ("eigenspace identities", eigenspace_identities),
        ("F0 counting", f0_counting),
        ("fiber partition identities", fiber_identities),
        ("crossover exists", crossover_existence),
        ("verify output is deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
