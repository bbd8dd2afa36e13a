//! Acceptance report: one PASS/FAIL line per criterion, with timings.
//! Runs without the libtest harness so the report is always printed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use repnum::factor::{
    factorize, find_nontrivial_factor, is_prime, primality, FactorConfig, Factorizer, Primality,
};
use repnum::natural::{divmod, Natural};
use repnum::published::published_table;
use repnum::puzzle::{new_puzzle, permuted_chains, solve, verify_transcript, ChainOrder, Verdict};
use repnum::repetition::{co_divisor, DigitGuard};
use repnum::sequences::{a_term, b_term, reproduce_table, TableRow};
use repnum::transcript::read_transcript;

type Outcome = Result<String, String>;

fn nat(s: &str) -> Natural {
    s.parse().unwrap()
}

fn guard() -> DigitGuard {
    DigitGuard::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Checks a reproduced table row by row.
///
/// Every value must be the expected closed form, every factor prime and the
/// product exact. Rows whose verified prime multiset differs from the printed
/// one must be exactly `misprinted`, and only those rows carry an annotation.
fn check_table(
    which: u8,
    rows: &[TableRow],
    expected_value: impl Fn(usize, usize) -> String,
    misprinted: &[usize],
) -> Result<(), String> {
    let published = published_table(which).unwrap();
    ensure(rows.len() == published.len(), || {
        format!("{} rows", rows.len())
    })?;
    let mut differing = BTreeSet::new();
    for (row, pubrow) in rows.iter().zip(published) {
        let id = if which == 2 { row.r } else { row.k };
        let want = expected_value(row.k, row.r);
        ensure(row.value.to_string() == want, || {
            format!("row {id}: value {} != {want}", row.value)
        })?;
        ensure(row.value.to_string() == pubrow.value, || {
            format!("row {id}: printed value differs")
        })?;
        ensure(row.factorization.is_complete(), || {
            format!("row {id}: incomplete")
        })?;
        ensure(row.factorization.product() == row.value, || {
            format!("row {id}: product check")
        })?;
        for (p, _) in row.factorization.factors() {
            ensure(is_prime(p), || format!("row {id}: {p} not prime"))?;
        }
        let mut printed: Vec<Natural> = pubrow.factors.iter().map(|s| nat(s)).collect();
        printed.sort();
        if printed != row.factorization.primes_with_multiplicity() {
            differing.insert(id);
            ensure(row.paper_discrepancy.is_some(), || {
                format!("row {id}: not annotated")
            })?;
        } else {
            ensure(row.paper_discrepancy.is_none(), || {
                format!("row {id}: spurious annotation")
            })?;
        }
    }
    let expected: BTreeSet<usize> = misprinted.iter().copied().collect();
    ensure(differing == expected, || {
        format!("rows differing from print {differing:?}, expected {expected:?}")
    })
}

fn row(rows: &[TableRow], k: usize, r: usize) -> &TableRow {
    rows.iter().find(|x| x.k == k && x.r == r).unwrap()
}

fn table_1() -> Outcome {
    let fz = Factorizer::new(FactorConfig::default());
    let rows = reproduce_table(1, &fz, guard()).map_err(|e| e.to_string())?;
    check_table(
        1,
        &rows,
        |k, _| {
            if k == 0 {
                "1".into()
            } else {
                format!("1{}1", "0".repeat(k - 1))
            }
        },
        &[11, 21],
    )?;
    let f9 = row(&rows, 9, 2).factorization.to_string();
    ensure(f9 == "7 · 11 · 13 · 19 · 52579", || f9.clone())?;
    let f23 = row(&rows, 23, 2).factorization.to_string();
    ensure(f23 == "11 · 47 · 139 · 2531 · 549797184491917", || {
        f23.clone()
    })?;
    let f11 = row(&rows, 11, 2).factorization.to_string();
    ensure(f11 == "11^2 · 23 · 4093 · 8779", || f11.clone())?;
    let f21 = row(&rows, 21, 2).factorization.to_string();
    ensure(
        f21 == "7^2 · 11 · 13 · 127 · 2689 · 459691 · 909091",
        || f21.clone(),
    )?;
    Ok("26 rows; k=11, k=21 annotated as misprints (11^2, 7^2)".into())
}

fn table_2() -> Outcome {
    let fz = Factorizer::new(FactorConfig::default());
    let rows = reproduce_table(2, &fz, guard()).map_err(|e| e.to_string())?;
    check_table(
        2,
        &rows,
        |_, r| {
            let mut s = String::from("1");
            for _ in 1..r {
                s.push_str("001");
            }
            s
        },
        &[4, 9],
    )?;
    let r9 = row(&rows, 3, 9);
    let f9 = r9.factorization.to_string();
    ensure(f9 == "3^2 · 757 · 333667 · 440334654777631", || {
        f9.clone()
    })?;
    let note = r9.paper_discrepancy.as_deref().unwrap_or_default();
    ensure(note.contains("33 · 757"), || format!("r=9 note: {note}"))?;
    let f4 = row(&rows, 3, 4).factorization.to_string();
    ensure(f4 == "7 · 11 · 13 · 101 · 9901", || f4.clone())?;
    Ok("9 rows; r=9 annotated (\"33\"), r=4 annotated (9091 for 9901)".into())
}

fn table_3() -> Outcome {
    let fz = Factorizer::new(FactorConfig::default());
    let rows = reproduce_table(3, &fz, guard()).map_err(|e| e.to_string())?;
    check_table(
        3,
        &rows,
        |k, r| {
            let block = format!("1{}", "0".repeat(k - 1));
            format!("{}1", block.repeat(r - 1))
        },
        &[],
    )?;
    let f = row(&rows, 7, 5).factorization.to_string();
    ensure(
        f == "41 · 71 · 271 · 123551 · 102598800232111471",
        || f.clone(),
    )?;
    Ok("10 rows, all match".into())
}

fn divide_chain(n: &str, chain: &[&str], expect: &str) -> Outcome {
    let mut current = nat(n);
    for d in chain {
        let dm = divmod(&current, &nat(d)).map_err(|e| e.to_string())?;
        ensure(dm.remainder.is_zero(), || {
            format!("{current} / {d} leaves {}", dm.remainder)
        })?;
        current = dm.quotient;
    }
    ensure(current == nat(expect), || format!("ended at {current}"))?;
    Ok(format!("{n} -> {current}, all remainders 0"))
}

const RELAY: &str = r#"{
  "k": "4",
  "r": "8",
  "generator": "2019",
  "big_number": "20192019201920192019201920192019",
  "steps": [
    { "divisor": "17", "quotient": "1187765835407070118776583540707" },
    { "divisor": "73", "quotient": "16270764868590001627076486859" },
    { "divisor": "137", "quotient": "118764707070000011876470707" },
    { "divisor": "353", "quotient": "336443929376770571888019" },
    { "divisor": "449", "quotient": "749318328233342030931" },
    { "divisor": "641", "quotient": "1168983351378068691" },
    { "divisor": "1409", "quotient": "829654614178899" },
    { "divisor": "69857", "quotient": "11876470707" },
    { "divisor": "5882353", "quotient": "2019" }
  ],
  "final": "2019"
}"#;

fn relay() -> Outcome {
    let t = read_transcript(RELAY, guard()).map_err(|e| e.to_string())?;
    let fz = Factorizer::new(FactorConfig::default());
    let p = new_puzzle(4, 8, 0, ChainOrder::Ascending, &fz, guard()).map_err(|e| e.to_string())?;
    ensure(p.chain() == t.instance().chain(), || {
        "chain differs from s(4,8) factors".into()
    })?;
    let quotients = solve(t.instance());
    let printed: Vec<Natural> = t
        .steps()
        .iter()
        .map(|s| s.quotient.clone().unwrap())
        .collect();
    ensure(quotients == printed, || "quotients differ".into())?;
    ensure(quotients.last() == Some(&nat("2019")), || {
        "does not end at 2019".into()
    })?;
    let v = verify_transcript(&t);
    ensure(v == Verdict::Pass, || format!("{v:?}"))?;
    Ok("9 quotients reproduced, verify PASS".into())
}

fn round_trips() -> Outcome {
    let fz = Factorizer::new(FactorConfig::default());
    let mut permuted = 0usize;
    let mut orderings = 0usize;
    for seed in 0..1000u64 {
        let k = 1 + (seed % 9) as usize;
        let r = 1 + ((seed / 9) % 6) as usize;
        let p = new_puzzle(k, r, seed, ChainOrder::Shuffled, &fz, guard())
            .map_err(|e| format!("k={k} r={r}: {e}"))?;
        let g = p.generator().value();
        ensure(solve(&p).last() == Some(&g), || {
            format!("seed {seed}: round trip")
        })?;
        if permuted < 50 && p.chain().len() <= 6 && seed % 7 == 0 {
            permuted += 1;
            for q in permuted_chains(&p) {
                orderings += 1;
                ensure(solve(&q).last() == Some(&g), || {
                    format!("seed {seed}: permuted chain")
                })?;
            }
        }
    }
    ensure(permuted == 50, || {
        format!("only {permuted} instances permuted")
    })?;
    Ok(format!("1000 puzzles; 50 instances, {orderings} orderings"))
}

fn identities() -> Outcome {
    for k in 1..=20 {
        let nines = nat(&"9".repeat(k));
        for r in 1..=20 {
            let s = co_divisor(k, r, guard()).map_err(|e| e.to_string())?;
            let lhs = (s.value() * &nines) + Natural::one();
            ensure(lhs == Natural::pow10(k * r), || format!("k={k} r={r}"))?;
        }
    }
    for k in 1..=50 {
        let s = co_divisor(k, 2, guard()).unwrap().into_value();
        ensure(s == a_term(k, guard()).unwrap(), || {
            format!("s({k},2) != a({k})")
        })?;
    }
    for r in 1..=50 {
        let s = co_divisor(3, r, guard()).unwrap().into_value();
        ensure(s == b_term(r - 1, guard()).unwrap(), || {
            format!("s(3,{r}) != b({})", r - 1)
        })?;
    }
    Ok("400 + 50 + 50 identities".into())
}

fn compositeness() -> Outcome {
    let config = FactorConfig::default();
    let mut factors = Vec::new();
    for n in 1..=40 {
        let b = b_term(n, guard()).unwrap();
        let f = find_nontrivial_factor(&b, &config)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("b({n}) reported prime"))?;
        let dm = divmod(&b, &f).unwrap();
        ensure(!f.is_one() && f != b && dm.remainder.is_zero(), || {
            format!("b({n}): bad factor {f}")
        })?;
        factors.push(f.to_string());
    }
    Ok(format!("b(1..40) composite, factors {}", factors.join(",")))
}

fn ten_power_plus_one_composite() -> Outcome {
    for n in 3..=200 {
        let a = a_term(n, guard()).unwrap();
        ensure(primality(&a) == Primality::Composite, || {
            format!("a({n}) passed")
        })?;
    }
    Ok("a(3..200) all composite".into())
}

fn oracle() -> Outcome {
    const LIMIT: usize = 1_000_000;
    let mut spf = vec![0u32; LIMIT + 1];
    for i in 2..=LIMIT {
        if spf[i] == 0 {
            let mut j = i;
            while j <= LIMIT {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let config = FactorConfig::default();
    for n in 1..=LIMIT {
        let mut expected: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = spf[m] as u64;
            m /= p as usize;
            match expected.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => expected.push((p, 1)),
            }
        }
        let natural = Natural::from(n as u64);
        let f = factorize(&natural, &config).map_err(|e| e.to_string())?;
        let got: Vec<(u64, u32)> = f
            .factors()
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect();
        ensure(f.is_complete() && got == expected, || {
            format!("factorize({n})")
        })?;
        let prime = n >= 2 && spf[n] as usize == n;
        ensure(is_prime(&natural) == prime, || format!("is_prime({n})"))?;
    }
    let zero = factorize(&Natural::zero(), &config);
    ensure(zero.is_err(), || "factorize(0) accepted".into())?;
    ensure(!is_prime(&Natural::zero()), || "is_prime(0)".into())?;
    Ok("n <= 10^6 agree with trial division".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "table 1 (10^k+1, k=0..25)",
            limit: secs(60),
            run: table_1,
        },
        Criterion {
            id: 2,
            name: "table 2 (b(r-1), r=1..9)",
            limit: secs(30),
            run: table_2,
        },
        Criterion {
            id: 3,
            name: "table 3 (s(j,r), j+r=11)",
            limit: secs(60),
            run: table_3,
        },
        Criterion {
            id: 4,
            name: "394394 / 7 / 11 / 13",
            limit: None,
            run: || divide_chain("394394", &["7", "11", "13"], "394"),
        },
        Criterion {
            id: 5,
            name: "451220125 replicated / 7 11 13 19 52579",
            limit: None,
            run: || {
                divide_chain(
                    "451220125451220125",
                    &["7", "11", "13", "19", "52579"],
                    "451220125",
                )
            },
        },
        Criterion {
            id: 6,
            name: "relay on 2019 replicated 8 times",
            limit: None,
            run: relay,
        },
        Criterion {
            id: 7,
            name: "round-trip and permutation suite",
            limit: secs(120),
            run: round_trips,
        },
        Criterion {
            id: 8,
            name: "co-divisor identities",
            limit: None,
            run: identities,
        },
        Criterion {
            id: 9,
            name: "b(n) compositeness, 1 <= n <= 40",
            limit: None,
            run: compositeness,
        },
        Criterion {
            id: 10,
            name: "a(n) composite, 3 <= n <= 200",
            limit: secs(60),
            run: ten_power_plus_one_composite,
        },
        Criterion {
            id: 11,
            name: "factorize/is_prime vs trial division",
            limit: None,
            run: oracle,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!(
                "took {:.2}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            )),
            (o, _) => o,
        };
        let limit = c
            .limit
            .map(|l| format!(" (limit {}s)", l.as_secs()))
            .unwrap_or_default();
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{status} [{:>2}] {} in {:.3}s{limit}: {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
