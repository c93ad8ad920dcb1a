use std::io::Write;

use hecke_core::conjectures::{verify_against_bfile, BFile, CheckId, CheckRecord, Checker, DefaultBounds, default_grid, sort_records};
use hecke_core::exactnum::{catalan, catalan_ord2_one_indexed, integer, ord_p_int};
use hecke_core::hecke::{power_coefficient_from, ExpansionSource};
use hecke_core::polyfit::{decompose, stabilized_fit};
use hecke_core::{Family, LaurentSeries, Rational};
use serde_json::json;

use crate::args::{
    CatalanArgs, CheckArgs, ConstantsArgs, ExpandArgs, FetchArgs, InterpArgs, OeisVerifyArgs, OutputFormat, PowerArgs,
};
use crate::error::{CliError, CliResult};
use crate::report::{emit_report, ConfigEcho, RecordRow, ReportDocument};

/// What a command wants the process to exit with.
pub type Exit = i32;

fn io(e: std::io::Error) -> CliError {
    CliError::Failure(format!("cannot write output: {e}"))
}

/// `(index, value)` rows in the requested format.
fn emit_coefficients(
    out: &mut dyn Write,
    format: OutputFormat,
    header: serde_json::Value,
    series: &LaurentSeries,
) -> CliResult<()> {
    match format {
        OutputFormat::Text => {
            for (n, c) in series.terms() {
                writeln!(out, "{n}\t{c}").map_err(io)?;
            }
        }
        OutputFormat::Json => {
            let mut doc = header;
            doc["coefficients"] = series
                .terms()
                .map(|(n, c)| json!({ "index": n, "value": c.to_string() }))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "index,value").map_err(io)?;
            for (n, c) in series.terms() {
                writeln!(out, "{n},{c}").map_err(io)?;
            }
        }
    }
    Ok(())
}

/// Keeps every index of `f` in `lower..=lower + terms - 1`, including zeros.
fn window(f: &LaurentSeries, lower: i64, terms: u32) -> CliResult<LaurentSeries> {
    let last = lower + i64::from(terms) - 1;
    let coeffs = (lower..=last).map(|n| f.coefficient(n)).collect::<hecke_core::Result<Vec<_>>>()?;
    Ok(LaurentSeries::with_order(lower, coeffs, last)?)
}

pub fn expand(source: &dyn ExpansionSource, a: &ExpandArgs, out: &mut dyn Write) -> CliResult<Exit> {
    let order = i64::from(a.terms) - 2;
    let e = source.expansion(a.m, order.max(1))?;
    let family = Family::from(a.family);
    let f = window(e.series(family), -1, a.terms)?;
    emit_coefficients(out, a.format, json!({ "m": a.m, "family": family.name() }), &f)?;
    Ok(0)
}

pub fn power(source: &dyn ExpansionSource, a: &PowerArgs, out: &mut dyn Write) -> CliResult<Exit> {
    // J^k through X^(terms - 1 - k) needs J through X^(terms - 2).
    let order = i64::from(a.terms) - 2;
    let family = Family::from(a.family);
    let e = source.expansion(a.m, order.max(1))?;
    let f = e.series(family).truncate(order.max(-1))?;
    let k = i64::from(a.k);
    let pow = f.power(k)?;
    let pow = window(&pow, -k, a.terms)?;
    emit_coefficients(out, a.format, json!({ "m": a.m, "k": a.k, "family": family.name() }), &pow)?;
    Ok(0)
}

pub fn constants(source: &dyn ExpansionSource, a: &ConstantsArgs, out: &mut dyn Write) -> CliResult<Exit> {
    if a.m_from < 3 || a.m_to < a.m_from {
        return Err(CliError::Usage(format!("invalid m range {}..={}; need 3 <= from <= to", a.m_from, a.m_to)));
    }
    let family = Family::from(a.family);
    let rows = (a.m_from..=a.m_to)
        .map(|m| power_coefficient_from(source, family, a.k, m, 0).map(|v| (m, v)))
        .collect::<hecke_core::Result<Vec<(u32, Rational)>>>()?;
    match a.format {
        OutputFormat::Text => {
            for (m, v) in &rows {
                writeln!(out, "{m}\t{v}").map_err(io)?;
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "k": a.k,
                "family": family.name(),
                "constants": rows.iter().map(|(m, v)| json!({ "m": m, "value": v.to_string() })).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "m,value").map_err(io)?;
            for (m, v) in &rows {
                writeln!(out, "{m},{v}").map_err(io)?;
            }
        }
    }
    Ok(0)
}

pub fn interp(source: &dyn ExpansionSource, a: &InterpArgs, out: &mut dyn Write) -> CliResult<Exit> {
    if i64::from(a.k) + a.n < 0 {
        return Err(CliError::Usage(format!("n = {} is below the leading index -{}", a.n, a.k)));
    }
    let family = Family::from(a.family);
    let fit = stabilized_fit(|m| power_coefficient_from(source, family, a.k, m, a.n), 3, a.cap).map_err(|e| {
        CliError::Failure(format!(
            "{e}; the {} family coefficient is likely not polynomial in m",
            family.name()
        ))
    })?;
    let poly = &fit.polynomial;
    let parts = (!poly.is_zero()).then(|| decompose(poly)).transpose()?;
    match a.format {
        OutputFormat::Json => {
            let mut doc = json!({
                "family": family.name(),
                "k": a.k,
                "n": a.n,
                "polynomial": poly.to_string(),
                "coefficients": poly.coefficients().iter().map(Rational::to_string).collect::<Vec<_>>(),
                "degree": poly.degree(),
                "window": [3, fit.window_end],
            });
            if let Some(d) = &parts {
                doc["nu"] = json!(d.nu.to_string());
                doc["monic_part"] = json!(d.monic_part.to_string());
                doc["monic_part_at_3"] = json!(d.monic_part.evaluate(&integer(3)).to_string());
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        }
        OutputFormat::Text | OutputFormat::Csv => {
            writeln!(out, "family\t{}\nk\t{}\nn\t{}", family.name(), a.k, a.n).map_err(io)?;
            writeln!(out, "polynomial\t{poly}").map_err(io)?;
            writeln!(out, "window\t3..={}", fit.window_end).map_err(io)?;
            if let Some(d) = &parts {
                writeln!(out, "nu\t{}", d.nu).map_err(io)?;
                writeln!(out, "monic_part\t{}", d.monic_part).map_err(io)?;
                writeln!(out, "monic_part_at_3\t{}", d.monic_part.evaluate(&integer(3))).map_err(io)?;
            }
        }
    }
    Ok(0)
}

pub fn check(source: &dyn ExpansionSource, a: &CheckArgs, out: &mut dyn Write) -> CliResult<Exit> {
    let defaults = DefaultBounds::default();
    let bounds = DefaultBounds {
        fit_k_max: a.fit_k_max.unwrap_or(defaults.fit_k_max),
        cor1_k_max: a.cor1_k_max.unwrap_or(defaults.cor1_k_max),
    };
    let ids: Vec<CheckId> = if a.all {
        CheckId::ALL.to_vec()
    } else {
        let mut ids = a.id.clone();
        ids.sort();
        ids.dedup();
        ids
    };
    let reference = BFile::bundled_a005148();
    let checker = Checker::new(source, &reference);
    let records: Vec<CheckRecord> = if a.all {
        checker.check_all(&bounds)?
    } else {
        let mut records = Vec::new();
        for &id in &ids {
            records.extend(checker.check_grid(id, &default_grid(id, &bounds))?);
        }
        sort_records(&mut records);
        records
    };
    let doc = ReportDocument::new(ConfigEcho::default_grid(&ids, &bounds), &ids, &records);
    match &a.report {
        Some(path) => {
            emit_report(&doc, a.format, path)?;
            let s = &doc.summary;
            writeln!(
                out,
                "{} records: {} passed, {} failed ({} report-only); verdict: {}",
                s.total, s.passed, s.failed, s.report_only, s.verdict
            )
            .map_err(io)?;
        }
        None => out.write_all(a.format.render(&doc)?.as_bytes()).map_err(io)?,
    }
    Ok(if doc.summary.all_gated_pass() { 0 } else { 1 })
}

pub fn oeis_verify(source: &dyn ExpansionSource, a: &OeisVerifyArgs, out: &mut dyn Write) -> CliResult<Exit> {
    let reference = match &a.bfile {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read b-file {}: {e}", path.display())))?;
            BFile::parse(&text).map_err(|e| CliError::Usage(e.to_string()))?
        }
        None => BFile::bundled_a005148(),
    };
    let checker = Checker::new(source, &reference);
    let seq = checker.derive_a005148(a.k_max)?;
    let records = verify_against_bfile(&seq, &reference)?;
    let complete = records.len() == a.k_max as usize && seq.findings.is_empty();
    let ok = complete && records.iter().all(|r| r.pass);
    match a.format {
        OutputFormat::Json => {
            let doc = json!({
                "sequence": seq.name,
                "derived": seq.display_terms().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "records": records.iter().map(RecordRow::from).collect::<Vec<_>>(),
                "findings": seq.findings,
                "verdict": if ok { "pass" } else { "fail" },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io)?;
        }
        OutputFormat::Text | OutputFormat::Csv => {
            writeln!(out, "k\tderived\treference\tpass").map_err(io)?;
            for r in &records {
                let show = |v: &Option<hecke_core::conjectures::Value>| v.as_ref().map_or(String::new(), ToString::to_string);
                writeln!(out, "{}\t{}\t{}\t{}", r.point.k, show(&r.computed), show(&r.predicted), r.pass).map_err(io)?;
            }
            for f in &seq.findings {
                writeln!(out, "finding: {f}").map_err(io)?;
            }
            writeln!(out, "verdict: {}", if ok { "pass" } else { "fail" }).map_err(io)?;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

/// `A005148` -> `https://oeis.org/A005148/b005148.txt`.
pub fn bfile_url(id: &str) -> CliResult<String> {
    let digits = id
        .strip_prefix('A')
        .or_else(|| id.strip_prefix('a'))
        .filter(|d| d.len() == 6 && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| CliError::Usage(format!("{id:?} is not an OEIS id like A005148")))?;
    Ok(format!("https://oeis.org/A{digits}/b{digits}.txt"))
}

pub fn oeis_fetch(a: &FetchArgs, out: &mut dyn Write) -> CliResult<Exit> {
    let url = bfile_url(&a.id)?;
    log::info!("fetching {url}");
    let fetch_err = |e: reqwest::Error| CliError::Failure(format!("fetching {url}: {e}"));
    let body = reqwest::blocking::get(&url)
        .and_then(|r| r.error_for_status())
        .and_then(|r| r.text())
        .map_err(fetch_err)?;
    let parsed = BFile::parse(&body).map_err(|e| CliError::Failure(format!("downloaded b-file is invalid: {e}")))?;
    match &a.output {
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(std::path::Path::new("."));
            let unwritable = |e: std::io::Error| CliError::Usage(format!("cannot write {}: {e}", path.display()));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(unwritable)?;
            tmp.write_all(body.as_bytes()).map_err(unwritable)?;
            tmp.persist(path).map_err(|e| unwritable(e.error))?;
            writeln!(out, "wrote {} terms to {}", parsed.terms.len(), path.display()).map_err(io)?;
        }
        None => out.write_all(body.as_bytes()).map_err(io)?,
    }
    Ok(0)
}

pub fn catalan_cmd(a: &CatalanArgs, out: &mut dyn Write) -> CliResult<Exit> {
    if let Some(n) = a.n {
        let c = catalan(n);
        let ord2 = ord_p_int(&c.clone().into(), 2)?;
        writeln!(out, "C_{n}\t{c}\tord_2 {ord2}").map_err(io)?;
    }
    if let Some(i) = a.ord2_one {
        let (index, c) = catalan_ord2_one_indexed(i)?;
        writeln!(out, "C_{index}\t{c}\tord_2 1\t(#{i} with ord_2 = 1)").map_err(io)?;
    }
    Ok(0)
}
