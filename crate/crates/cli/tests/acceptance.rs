//! Acceptance suite. Every criterion prints exactly one `PASS`/`FAIL` line;
//! the test fails if any criterion does. All comparisons are exact.

use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use hecke_cli::run_with;
use hecke_core::conjectures::{constant_term_fit, held_out_validation, BFile};
use hecke_core::exactnum::{digit_sum, integer, ord_p};
use hecke_core::hecke::{canonical_expansion, nome_relation, DirectSource, HeckeParameters, Memoized};
use hecke_core::{Family, PAdicOrder, Rational, RationalPolynomial};
use serde_json::Value as Json;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn ensure(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

/// Writes to the process stdout directly so the line shows up even when the
/// test harness captures `println!`.
fn report_line(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

/// Runs `f`, folds the time limit into the verdict and prints one line.
fn criterion(results: &mut Vec<bool>, number: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let mut outcome = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed >= limit {
            outcome.ok = false;
            outcome.detail = format!("{}; exceeded {:?}", outcome.detail, limit);
        }
    }
    report_line(&format!(
        "criterion {number:>2} {}  {title}: {} [{:.2?}]",
        if outcome.ok { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed
    ));
    results.push(outcome.ok);
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("hecke").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn records<'a>(report: &'a Json, id: &str) -> Vec<&'a Json> {
    report["records"].as_array().unwrap().iter().filter(|r| r["id"] == id).collect()
}

fn all_pass(records: &[&Json]) -> bool {
    !records.is_empty() && records.iter().all(|r| r["pass"] == true)
}

fn without_timestamp(path: &Path) -> Json {
    let mut doc: Json = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    doc.as_object_mut().unwrap().remove("generated_at");
    doc
}

fn golden_expansion() -> Outcome {
    let (code, out, err) = cli(&["--no-cache", "expand", "--m", "3", "--terms", "4", "--family", "bar", "--format", "json"]);
    if code != 0 {
        return fail(format!("exit {code}: {err}"));
    }
    let doc: Json = serde_json::from_str(&out).unwrap();
    let got: Vec<(i64, String)> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["index"].as_i64().unwrap(), c["value"].as_str().unwrap().to_string()))
        .collect();
    let want: Vec<(i64, String)> = [(-1, "1"), (0, "744"), (1, "196884"), (2, "21493760")]
        .into_iter()
        .map(|(i, v)| (i, v.to_string()))
        .collect();
    ensure(got == want, format!("{got:?}"))
}

fn canonical_constant() -> Outcome {
    for m in 3..=40u32 {
        let params = HeckeParameters::new(m).unwrap();
        // e_1 = 1/2 - 2ab, from the first step of the Frobenius recurrence.
        let oracle = Rational::new(1.into(), 2.into()) - integer(2) * params.ab();
        let closed = Rational::new(3.into(), 8.into()) + Rational::new(1.into(), (2 * m * m).into());
        let got = canonical_expansion(m, 1).unwrap().j.coefficient(0).unwrap();
        if got != oracle || got != closed {
            return fail(format!("m = {m}: {got} vs {oracle} / {closed}"));
        }
    }
    pass("coefficient(J, 0) = 3/8 + 1/(2m^2) = 1/2 - 2ab for m = 3..40")
}

fn interpolation_anchor() -> Outcome {
    let fit = constant_term_fit(&DirectSource, 1).unwrap();
    let poly = &fit.fit.polynomial;
    let at3 = poly.evaluate(&integer(3));
    ensure(
        *poly == RationalPolynomial::from_ints(&[0, 32, 0, 24]) && at3 == integer(744),
        format!("{poly}, value at 3 = {at3}"),
    )
}

fn conjecture_two(report: &Json) -> Outcome {
    let source = Memoized::new(DirectSource);
    let reference = BFile::bundled_a005148();
    let head = [1i64, 47, 2488, 138799];
    for (k, want) in (1..=4u32).zip(head) {
        let fit = constant_term_fit(&source, k).unwrap();
        let expected = integer(24 * want);
        if *fit.nu() != expected || reference.aligned_term(k).unwrap() != want.into() {
            return fail(format!("k = {k}: nu = {}", fit.nu()));
        }
    }
    let ids = ["C2.1", "C2.2", "C2.3", "C2.4", "A005148"];
    for id in ids {
        let recs = records(report, id);
        let ks: Vec<i64> = recs.iter().map(|r| r["k"].as_i64().unwrap()).collect();
        if !all_pass(&recs) || ks != (1..=12).collect::<Vec<_>>() {
            return fail(format!("{id} records for k = {ks:?} not all passing"));
        }
    }
    pass("a_1..a_4 = 1, 47, 2488, 138799; C2.1-C2.4 and the b-file match for k = 1..12")
}

fn corollary_one(report: &Json) -> Outcome {
    let recs = records(report, "COR1");
    let by_p = |p: i64| recs.iter().filter(|r| r["p"] == p).count();
    if by_p(2) != 24 || by_p(3) != 24 {
        return fail(format!("expected 24 records per prime, got {} and {}", by_p(2), by_p(3)));
    }
    // Recompute every point directly from powers of the m = 3 series.
    let e = canonical_expansion(3, 23).unwrap();
    for k in 1..=24u32 {
        let a = e.power_coefficient(Family::KBar, k, 0).unwrap();
        let d2 = i64::from(k.count_ones());
        let d3 = digit_sum(u64::from(k), 3).unwrap() as i64;
        let (o2, o3) = (ord_p(&a, 2).unwrap(), ord_p(&a, 3).unwrap());
        if o2 != PAdicOrder::Finite(3 * d2) || o3 != PAdicOrder::Finite(d3) {
            return fail(format!("k = {k}: ord_2 = {o2}, ord_3 = {o3}"));
        }
    }
    ensure(all_pass(&recs), "ord_2 = 3 d_2(k), ord_3 = d_3(k) directly and in 48 report records")
}

fn nsz(report: &Json) -> Outcome {
    let recs = records(report, "NSZ");
    ensure(recs.len() == 12 && all_pass(&recs), format!("{} records", recs.len()))
}

fn conjecture_grids(report: &Json) -> Outcome {
    let expected = [("C3", 12), ("C4", 4), ("C5", 4), ("C6", 16), ("C7", 9), ("C8", 12), ("C9", 6), ("C10", 25)];
    for (id, count) in expected {
        let recs = records(report, id);
        if recs.len() != count || !all_pass(&recs) {
            return fail(format!("{id}: {} records, expected {count} all passing", recs.len()));
        }
    }
    pass("C3-C10 default grids all pass")
}

fn conjecture_eleven(report: &Json) -> Outcome {
    let c11 = records(report, "C11.1");
    let ok_values = c11.iter().all(|r| {
        let p = r["p"].as_i64().unwrap();
        r["computed"] == -2 - 2 * p
    });
    let scale = records(report, "SCALE");
    let scale_primes: Vec<i64> = scale.iter().filter(|r| r["k"] == r["p"]).map(|r| r["p"].as_i64().unwrap()).collect();
    let report_only = records(report, "C11.2").len() + records(report, "C11.3").len();
    let not_gated = ["C11.2", "C11.3"]
        .iter()
        .flat_map(|id| records(report, id))
        .all(|r| r["gated"] == false);
    ensure(
        c11.len() == 3 && all_pass(&c11) && ok_values && all_pass(&scale) && scale_primes == [3, 5, 7] && report_only > 0 && not_gated,
        format!("C11.1 and SCALE pass for p = 3, 5, 7; {report_only} report-only C11.2/C11.3 records emitted"),
    )
}

fn series_engine() -> Outcome {
    // Reversion round trip on the nome map to order 40.
    let q = nome_relation(&HeckeParameters::new(3).unwrap(), 40).unwrap();
    let t = q.revert().unwrap();
    if t.revert().unwrap() != q {
        return fail("nome map reversion round trip");
    }
    // Power against repeated multiplication.
    let j = canonical_expansion(5, 10).unwrap().j;
    let mut naive = j.clone();
    for k in 2..=5 {
        naive = naive.multiply(&j);
        if naive != j.power(k).unwrap() {
            return fail(format!("power {k} differs from repeated multiplication"));
        }
    }
    // Multinomial brute force for (k, m) = (3, 5).
    let c = |n: i64| j.coefficient(n).unwrap();
    let mut brute = Rational::from_integer(0.into());
    for n1 in -1..=2i64 {
        for n2 in -1..=2i64 {
            let n3 = -n1 - n2;
            if n3 >= -1 {
                brute += c(n1) * c(n2) * c(n3);
            }
        }
    }
    if brute != canonical_expansion(5, 2).unwrap().power_coefficient(Family::K, 3, 0).unwrap() {
        return fail("multinomial constant term");
    }
    // Bar/canonical scaling on every coefficient of every power.
    for m in [3u32, 5, 8] {
        let e = canonical_expansion(m, 8).unwrap();
        let s = HeckeParameters::new(m).unwrap().scale().clone();
        for k in 1..=4i64 {
            let (pk, pb) = (e.j.power(k).unwrap(), e.j_bar.power(k).unwrap());
            for (n, a) in pk.terms() {
                if pb.coefficient(n).unwrap() != a * num_traits::pow(s.clone(), (n + k) as usize) {
                    return fail(format!("scaling identity at m = {m}, k = {k}, n = {n}"));
                }
            }
        }
    }
    pass("reversion to order 40, power = naive product, multinomial (3, 5), scaling identity")
}

fn held_out() -> Outcome {
    let source = Memoized::new(DirectSource);
    let mut checked = 0;
    for k in 1..=4u32 {
        for n in [-1i64, 0, 1] {
            let (_, samples) = held_out_validation(&source, k, n, 4).unwrap();
            for s in &samples {
                if s.interpolated != s.direct {
                    return fail(format!("k = {k}, n = {n}, m = {}: {} vs {}", s.m, s.interpolated, s.direct));
                }
            }
            checked += samples.len();
        }
    }
    pass(format!("{checked} held-out values reproduced exactly"))
}

#[test]
fn acceptance() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let cache = cache.to_str().unwrap();
    let cold_path = tmp.path().join("cold.json");
    let warm_path = tmp.path().join("warm.json");

    let mut results = Vec::new();
    criterion(&mut results, 1, "m = 3 golden expansion", Some(Duration::from_secs(1)), golden_expansion);
    criterion(&mut results, 2, "canonical constant term, m = 3..40", Some(Duration::from_secs(10)), canonical_constant);
    criterion(&mut results, 3, "interpolation anchor", Some(Duration::from_secs(10)), interpolation_anchor);

    // One cold and one warm `check --all`; criteria 4-8 read the cold report.
    let (cold_code, _, cold_err) = cli(&["--cache-dir", cache, "--jobs", "4", "check", "--all", "--report", cold_path.to_str().unwrap()]);
    let (warm_code, _, warm_err) = cli(&["--cache-dir", cache, "--jobs", "4", "check", "--all", "--report", warm_path.to_str().unwrap()]);
    assert_eq!(cold_code, 0, "cold check --all: {cold_err}");
    let report = without_timestamp(&cold_path);

    criterion(&mut results, 4, "C2 suite, k = 1..12", None, || conjecture_two(&report));
    criterion(&mut results, 5, "COR1 at m = 3, k = 1..24", Some(Duration::from_secs(120)), || corollary_one(&report));
    criterion(&mut results, 6, "NSZ property, k = 1..12", None, || nsz(&report));
    criterion(&mut results, 7, "conjecture grids", None, || conjecture_grids(&report));
    criterion(&mut results, 8, "C11.1 and scaling consistency", None, || conjecture_eleven(&report));
    criterion(&mut results, 9, "series-engine properties", None, series_engine);
    criterion(&mut results, 10, "held-out interpolation", None, held_out);
    criterion(&mut results, 11, "cold vs warm determinism", None, || {
        let same = warm_code == cold_code && without_timestamp(&warm_path) == report;
        let bytes_same = {
            let strip = |p: &Path| {
                std::fs::read_to_string(p)
                    .unwrap()
                    .lines()
                    .filter(|l| !l.trim_start().starts_with("\"generated_at\""))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            strip(&cold_path) == strip(&warm_path)
        };
        ensure(same && bytes_same && warm_err.is_empty(), "reports byte-identical apart from generated_at")
    });

    let failed = results.iter().filter(|ok| !**ok).count();
    report_line(&format!("acceptance: {} of {} criteria passed", results.len() - failed, results.len()));
    assert_eq!(failed, 0);
}
