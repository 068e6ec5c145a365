//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use divseq::reproduce::C_DIGITS;
use divseq::run;
use divseq_core::{
    a_seq, b_closed_form, b_seq, c_enclosure, delta, divisor_list, divisor_list_factored,
    k3_enclosure, middle_pair_3x2k, relation_check, render_digits, survivor_recurrence,
    survivor_simulation, survivor_via_ow, two_thirds_pow, verify_divisor_count_3x2k,
    verify_middle_pair_3x2k, verify_theorem, Factorization, Limits, Path, Term,
};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_d1c5;
const RANDOM_POINTS: usize = 10_000;
const RANDOM_MAX: u64 = 1_000_000;
const C_TERMS: u64 = 200;
const C_MAX_WIDTH_EXP: u32 = 27;
const RELATION_MIN_PLACES: usize = 24;
const JOSEPHUS_MAX_N: u64 = 10_000;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("divseq").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    if code != 0 {
        return Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn values(bfile: &str) -> Vec<String> {
    bfile
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap_or("").to_string())
        .collect()
}

fn first_terms() -> Check {
    let a = values(&cli(&["seq", "a", "--max", "7", "--path", "oracle"])?);
    ensure(a == ["4", "3", "4", "2", "4", "8", "16", "64"], || {
        format!("a = {a:?}")
    })?;
    let b = values(&cli(&["seq", "b", "--max", "9"])?);
    ensure(b == ["1", "1", "1", "2", "3", "4", "6", "9", "14"], || {
        format!("b = {b:?}")
    })?;
    Ok("a_0..a_7 and b_1..b_9 exact".into())
}

fn theorem(limits: &Limits) -> Check {
    let oracle = verify_theorem(10, Path::Oracle, limits).map_err(|e| e.to_string())?;
    ensure(oracle.all_passed(), || {
        format!("oracle: {:?}", oracle.failures().next())
    })?;
    let factored = verify_theorem(40, Path::Factored, limits).map_err(|e| e.to_string())?;
    ensure(factored.all_passed(), || {
        format!("factored: {:?}", factored.failures().next())
    })?;
    Ok(format!(
        "{} oracle + {} factored indices",
        oracle.entries.len(),
        factored.entries.len()
    ))
}

fn lemma_one(limits: &Limits) -> Check {
    let r = verify_divisor_count_3x2k(1000, limits).map_err(|e| e.to_string())?;
    ensure(r.all_passed() && r.entries.len() == 1000, || {
        format!("{:?}", r.failures().next())
    })?;
    for k in 1..=30u64 {
        let n = divisor_list(3 << k, limits)
            .map_err(|e| e.to_string())?
            .len() as u64;
        ensure(n == 2 * k + 2, || format!("k = {k}: {n} divisors"))?;
    }
    Ok("enumeration k <= 30, formula k <= 1000".into())
}

fn lemma_two(limits: &Limits) -> Check {
    ensure(delta(48, limits) == Ok(2), || "delta(48) != 2".into())?;
    let mut printed_mismatch = 0;
    for k in 1..=30u64 {
        let brute = BigUint::from(delta(3 << k, limits).map_err(|e| e.to_string())?);
        let middle = middle_pair_3x2k(k).map_err(|e| e.to_string())?.difference;
        let corrected = BigUint::from(1u32) << (k.div_ceil(2) - 1);
        ensure(brute == middle && brute == corrected, || {
            format!("k = {k}: brute {brute}, middle {middle}, 2^(ceil(k/2)-1) {corrected}")
        })?;
        if brute != BigUint::from(1u32) << k.div_ceil(2) {
            printed_mismatch += 1;
        }
    }
    let report = verify_middle_pair_3x2k(30, limits).map_err(|e| e.to_string())?;
    ensure(report.all_passed() && !report.findings.is_empty(), || {
        "report did not record the printed-formula finding".into()
    })?;
    Ok(format!(
        "delta(48) = 2; flagged: printed 2^ceil(k/2) differs at {printed_mismatch}/30 k"
    ))
}

fn constant_c() -> Check {
    let iv = c_enclosure(C_TERMS).map_err(|e| e.to_string())?;
    let bound = BigRational::new(BigInt::from(1), BigInt::from(10).pow(C_MAX_WIDTH_EXP));
    ensure(iv.lo() < iv.hi(), || "empty enclosure".into())?;
    ensure(iv.width() <= bound, || "width above 1e-27".into())?;
    let cert = render_digits(&iv, 1000).map_err(|e| e.to_string())?;
    ensure(cert.decimal_prefix.starts_with(C_DIGITS), || {
        format!("prefix {}", cert.decimal_prefix)
    })?;
    Ok(format!(
        "{} ({} places)",
        cert.decimal_prefix, cert.certified_places
    ))
}

fn relation() -> Check {
    let r = relation_check(C_TERMS).map_err(|e| e.to_string())?;
    ensure(r.overlap, || "no overlap".into())?;
    ensure(r.agreeing_places >= RELATION_MIN_PLACES, || {
        format!("{} places", r.agreeing_places)
    })?;
    Ok(format!("overlap, {} agreeing places", r.agreeing_places))
}

fn closed_form() -> Check {
    let iv = c_enclosure(C_TERMS).map_err(|e| e.to_string())?;
    let b = b_seq(100).map_err(|e| e.to_string())?;
    for (n, term) in b.indexed() {
        let v = b_closed_form(n, &iv).map_err(|e| e.to_string())?;
        ensure(&Term::Value(v.clone()) == term, || {
            format!("n = {n}: closed form {v}, recurrence {term}")
        })?;
    }
    Ok("b_1..b_100 reproduced".into())
}

fn josephus(limits: &Limits) -> Check {
    for q in 2..=5u64 {
        for n in 1..=JOSEPHUS_MAX_N {
            let r = survivor_recurrence(n, q)
                .map_err(|e| e.to_string())?
                .survivor;
            let s = survivor_simulation(n, q, limits)
                .map_err(|e| e.to_string())?
                .survivor;
            let o = survivor_via_ow(n, q).map_err(|e| e.to_string())?.survivor;
            ensure(r == s && s == o, || {
                format!("n = {n}, q = {q}: {r} {s} {o}")
            })?;
            if q == 2 {
                let l = n - (1 << n.ilog2());
                ensure(r == 2 * l + 1, || format!("n = {n}: {r} != 2L+1"))?;
            }
        }
    }
    Ok(format!(
        "n <= {JOSEPHUS_MAX_N}, q in 2..=5, q=2 closed form"
    ))
}

fn properties(limits: &Limits) -> Check {
    let mut prev_c = c_enclosure(1).map_err(|e| e.to_string())?;
    let mut prev_k = k3_enclosure(1).map_err(|e| e.to_string())?;
    for n in 2..=C_TERMS {
        let c = c_enclosure(n).map_err(|e| e.to_string())?;
        let k = k3_enclosure(n).map_err(|e| e.to_string())?;
        ensure(c.is_subset_of(&prev_c) && k.is_subset_of(&prev_k), || {
            format!("nesting fails at n = {n}")
        })?;
        let law = two_thirds_pow(n as u32);
        ensure(c.width() <= law, || format!("c width law fails at n = {n}"))?;
        ensure(
            k.width() == &law * BigRational::from_integer(BigInt::from(2)),
            || format!("K(3) width law fails at n = {n}"),
        )?;
        prev_c = c;
        prev_k = k;
    }

    let fast = a_seq(40, Path::Fast, limits).map_err(|e| e.to_string())?;
    let factored = a_seq(40, Path::Factored, limits).map_err(|e| e.to_string())?;
    let oracle = a_seq(10, Path::Oracle, limits).map_err(|e| e.to_string())?;
    ensure(fast.terms == factored.terms, || "fast != factored".into())?;
    ensure(oracle.terms[..] == fast.terms[..oracle.terms.len()], || {
        "oracle != fast".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..RANDOM_POINTS {
        let m = rng.gen_range(1..=RANDOM_MAX);
        let small = divisor_list(m, limits).map_err(|e| e.to_string())?;
        let f = Factorization::of(m).map_err(|e| e.to_string())?;
        let mut big = divisor_list_factored(&f, limits).map_err(|e| e.to_string())?;
        big.sort();
        let small: Vec<BigUint> = small.into_iter().map(BigUint::from).collect();
        ensure(small == big, || format!("divisor lists differ at m = {m}"))?;
    }
    Ok(format!(
        "nesting/width n <= {C_TERMS}, paths to 40, {RANDOM_POINTS} random m <= {RANDOM_MAX}"
    ))
}

fn main() -> ExitCode {
    let limits = Limits::default();
    let criteria: [(&str, Duration, &dyn Fn() -> Check); 9] = [
        ("first terms", Duration::from_secs(1), &first_terms),
        ("a_n = 2^(b_n)", Duration::from_secs(30), &|| {
            theorem(&limits)
        }),
        ("divisor count of 3*2^k", Duration::from_secs(5), &|| {
            lemma_one(&limits)
        }),
        ("delta of 3*2^k", Duration::from_secs(5), &|| {
            lemma_two(&limits)
        }),
        ("constant c", Duration::from_secs(10), &constant_c),
        ("c = (2/9) K(3)", Duration::from_secs(10), &relation),
        ("closed form for b_n", Duration::from_secs(5), &closed_form),
        ("Josephus three-way", Duration::from_secs(30), &|| {
            josephus(&limits)
        }),
        ("property suites", Duration::from_secs(20), &|| {
            properties(&limits)
        }),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= *budget => {
                format!("PASS criterion {}: {name}: {detail}", i + 1)
            }
            Ok(detail) => format!(
                "FAIL criterion {}: {name}: {detail}, but took {elapsed:.2?} (budget {budget:?})",
                i + 1
            ),
            Err(e) => format!("FAIL criterion {}: {name}: {e}", i + 1),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict} [{elapsed:.2?}]");
    }
    if failed == 0 {
        println!("all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
