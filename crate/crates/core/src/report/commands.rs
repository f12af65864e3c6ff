//! Subcommand bodies: each returns a JSON document and a text summary.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::criteria::{poly_terms, run_criterion};
use super::{CriterionResult, ReportBundle, Session};
use crate::arith::{CycField, CycNum};
use crate::error::{Error, Result};
use crate::fermat::{tau_points, LineTag, ProjLine};
use crate::groebner::reduction::{audit_primes, SAMPLE_PRIMES};
use crate::polarization::{classify_degree4, is_x56_configuration, polarization_from_config, X56Config};
use crate::quartic::{cyc, data as qdata, LineSource};

/// What a subcommand produced.
#[derive(Clone, Debug)]
pub struct Output {
    /// File stem of the JSON report.
    pub name: String,
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

impl Output {
    fn new(name: &str, json: Value, text: String, criteria: &[CriterionResult]) -> Self {
        Output { name: name.into(), json, text, pass: criteria.iter().all(|c| c.pass) }
    }
}

/// Writes `<dir>/<name>.json` with a trailing newline.
pub fn write_output(dir: &Path, out: &Output) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.json", out.name));
    let mut text = serde_json::to_string_pretty(&out.json)?;
    text.push('\n');
    fs::write(&path, text)?;
    Ok(path)
}

pub fn criterion_line(c: &CriterionResult) -> String {
    let verdict = if c.pass { "PASS" } else { "FAIL" };
    match c.failure() {
        Some(why) => format!("{verdict} criterion {:>2}: {} ({why})", c.number, c.title),
        None => format!("{verdict} criterion {:>2}: {}", c.number, c.title),
    }
}

fn criteria_text(cs: &[CriterionResult]) -> String {
    cs.iter().map(criterion_line).collect::<Vec<_>>().join("\n")
}

fn to_value(v: impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn cyc_strings(v: &[CycNum]) -> Vec<String> {
    v.iter().map(CycNum::to_basis_string).collect()
}

fn line_equations(l: &ProjLine<CycNum>) -> Vec<Vec<String>> {
    l.echelon().iter().map(|r| cyc_strings(r)).collect()
}

fn run_all(s: &Session, ns: &[u8]) -> Vec<CriterionResult> {
    ns.iter().map(|&n| run_criterion(n, s)).collect()
}

pub fn fermat(s: &Session) -> Result<Output> {
    let criteria = run_all(s, &[1, 2, 3, 4, 5, 6]);
    let m = s.model()?;
    let po = s.pair_orbits()?;
    let pd = s.period()?;
    let lines: Vec<Value> =
        m.tags.iter().zip(&m.classes).map(|(t, c)| json!({ "tag": t.to_string(), "class": c })).collect();
    let taus: Vec<Value> = tau_points(m)
        .iter()
        .map(|t| json!({ "point": cyc_strings(&t.point), "lines": t.lines.iter().map(|&i| m.tags[i].to_string()).collect::<Vec<_>>() }))
        .collect();
    let json = json!({
        "gram_hash": s.gram_hash()?,
        "gram": m.lattice.int_gram(),
        "h48": m.h48,
        "lines": lines,
        "tau_points": taus,
        "pair_orbits": po.orbits,
        "period_group": pd.gamma,
        "group_orders": { "G48": s.aut48()?.perms.len(), "G48tilde": s.stabilizer48()?.len() },
        "criteria": criteria,
    });
    Ok(Output::new("fermat", json, criteria_text(&criteria), &criteria))
}

pub fn census(s: &Session, d: i64) -> Result<Output> {
    let c = s.census(d)?;
    let counts: BTreeMap<String, Value> =
        c.counts.iter().map(|(st, n)| (st.to_string(), json!({ "vectors": n.vectors, "orbits": n.orbits }))).collect();
    let mut text = format!("H{d}: {} vectors in {} orbits", c.vectors.len(), c.orbits.len());
    for (st, n) in &c.counts {
        text.push_str(&format!("\n  {st}: {} vectors, {} orbits", n.vectors, n.orbits));
    }
    let json = json!({
        "relative_degree": d,
        "vector_count": c.vectors.len(),
        "orbit_count": c.orbits.len(),
        "counts": counts,
        "orbits": c.orbits,
    });
    Ok(Output::new(&format!("census_h{d}"), json, text, &[]))
}

/// Parses seven tags `i,μ,ν` separated by `;`.
pub fn parse_config(text: &str) -> Result<X56Config> {
    let tags = text.split(';').map(|t| t.trim().parse::<LineTag>()).collect::<Result<Vec<_>>>()?;
    let tags: [LineTag; 7] =
        tags.try_into().map_err(|v: Vec<LineTag>| Error::Input(format!("expected 7 tags, found {}", v.len())))?;
    Ok(tags.map(|t| t.index()))
}

pub fn configs(s: &Session, seed: Option<&str>) -> Result<Output> {
    let m = s.model()?;
    let po = s.pair_orbits()?;
    let configs = s.configurations()?;
    let seed = match seed {
        Some(text) => parse_config(text)?,
        None => crate::polarization::seed_config()?,
    };
    if !is_x56_configuration(po, &seed) {
        return Err(Error::Input("the given seven lines do not form an X56-configuration".into()));
    }
    let h = polarization_from_config(m, po, &seed)?;
    let verdict = classify_degree4(m, &h)?;
    let seed_tags: Vec<String> = seed.iter().map(|&i| m.tags[i].to_string()).collect();
    let text = format!(
        "{} X56-configurations\nseed {}\n  h = {:?}\n  <h,h48> = {}, <h,h> = {}, {} with {} lines",
        configs.len(),
        seed_tags.join(" "),
        h,
        m.pair(&h, &m.h48),
        m.pair(&h, &h),
        verdict.status,
        verdict.line_classes.len(),
    );
    let json = json!({
        "configuration_count": configs.len(),
        "seed": {
            "lines": seed_tags,
            "h": h,
            "h_dot_h48": m.pair(&h, &m.h48),
            "h_square": m.pair(&h, &h),
            "status": verdict.status,
            "line_count": verdict.line_classes.len(),
        },
    });
    Ok(Output::new("configs", json, text, &[]))
}

pub fn derive_psi(s: &Session) -> Result<Output> {
    let criteria = run_all(s, &[9]);
    let d = s.derivation()?;
    let text = format!(
        "kernel of the {}x{} system has dimension {}\nPsi = {}\n{}",
        d.matrix_shape.0,
        d.matrix_shape.1,
        d.kernel_dimension,
        d.psi.render(&CycField, &["y1", "y2", "y3", "y4"]),
        criteria_text(&criteria)
    );
    let json = json!({
        "matrix_shape": d.matrix_shape,
        "kernel_dimension": d.kernel_dimension,
        "psi": poly_terms(&d.psi),
        "A": cyc(&qdata::PSI_A).to_basis_string(),
        "B": cyc(&qdata::PSI_B).to_basis_string(),
        "criteria": criteria,
    });
    Ok(Output::new("derive_psi", json, text, &criteria))
}

pub fn lines_x56(s: &Session) -> Result<Output> {
    let criteria = run_all(s, &[10]);
    let m = s.model()?;
    let x56 = s.x56()?;
    let orbits = &s.aut56()?.orbits;
    let lines: Vec<Value> = x56
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let source = match &l.source {
                LineSource::FermatImage(k) => json!({ "fermat_image": m.tags[*k].to_string() }),
                LineSource::CommonIntersection(ks) => json!({ "common_intersection": ks }),
            };
            json!({
                "index": i,
                "class": l.class,
                "equations": line_equations(&l.line),
                "source": source,
                "orbit_size": orbits.iter().find(|o| o.contains(&i)).map(|o| o.len()),
            })
        })
        .collect();
    let images = x56.lines.iter().filter(|l| matches!(l.source, LineSource::FermatImage(_))).count();
    let text = format!(
        "{} lines: {} images of Fermat lines, {} common intersecting lines\n{}",
        x56.lines.len(),
        images,
        x56.lines.len() - images,
        criteria_text(&criteria)
    );
    Ok(Output::new("lines_x56", json!({ "h56": x56.h56, "lines": lines, "criteria": criteria }), text, &criteria))
}

pub fn aut_x56(s: &Session) -> Result<Output> {
    let criteria = run_all(s, &[11]);
    let aut = s.aut56()?;
    let matrices: Vec<Vec<Vec<String>>> = aut.matrices.iter().map(|g| g.iter().map(|r| cyc_strings(r)).collect()).collect();
    let text = format!(
        "stabilizer of h56: {}, automorphisms: {}, orbits {:?}\n{}",
        aut.stabilizer.len(),
        aut.isometries.len(),
        aut.orbits.iter().map(Vec::len).collect::<Vec<_>>(),
        criteria_text(&criteria)
    );
    let json = json!({
        "stabilizer_order": aut.stabilizer.len(),
        "order": aut.isometries.len(),
        // Only the order and the generator orders are verified.
        "isomorphism_type": "unresolved",
        "orbits": aut.orbits,
        "matrices": matrices,
        "criteria": criteria,
    });
    Ok(Output::new("aut_x56", json, text, &criteria))
}

/// With a prime: audits every prime of `ℤ[ζ]` above it. Without: the
/// smoothness certificate and audits above the bad-prime bound and the sample primes.
pub fn reduce(s: &Session, prime: Option<u64>, all_orderings: bool) -> Result<Output> {
    let x56 = s.x56()?;
    let dual = s.dual()?;
    let (ps, certificate) = match prime {
        Some(p) => (vec![p], Value::Null),
        None => {
            let cert = s.smoothness(all_orderings)?;
            let mut ps: Vec<u64> = cert.bad_prime_bound.iter().chain(&SAMPLE_PRIMES).copied().collect();
            ps.sort();
            ps.dedup();
            (ps, to_value(cert)?)
        }
    };
    let reports = audit_primes(x56, dual, &ps)?;
    let mut text = String::new();
    if let Some(bound) = certificate.get("bad_prime_bound") {
        text.push_str(&format!("bad prime bound S = {bound}\n"));
    }
    for r in &reports {
        let lines = r.line_count.map_or("-".to_string(), |n| n.to_string());
        text.push_str(&format!(
            "{:<24} {:<6} {:<12} lines={:<4} hermitian={}\n",
            r.prime,
            r.residue_field,
            serde_json::to_value(r.status)?.as_str().unwrap_or("?"),
            lines,
            r.hermitian
        ));
    }
    let name = prime.map_or("reduce".to_string(), |p| format!("reduce_p{p}"));
    let json = json!({ "certificate": certificate, "reports": reports });
    Ok(Output::new(&name, json, text.trim_end().to_string(), &[]))
}

pub fn verify_all(s: &Session) -> Result<(ReportBundle, Output)> {
    let criteria = run_all(s, &super::CRITERIA.map(|c| c.number));
    let bundle = ReportBundle::new(s.gram_hash()?, criteria);
    let passed = bundle.criteria.iter().filter(|c| c.pass).count();
    let text = format!("{}\n{passed}/{} criteria pass", criteria_text(&bundle.criteria), bundle.criteria.len());
    let out = Output::new("verify_all", to_value(&bundle)?, text, &bundle.criteria);
    Ok((bundle, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_seed_configuration() {
        let c = parse_config("2,1,1; 2,5,5; 2,1,5; 3,1,1; 3,3,3; 4,1,7; 3,1,3").unwrap();
        assert_eq!(c, crate::polarization::seed_config().unwrap());
        assert!(parse_config("2,1,1;2,5,5").is_err());
        assert!(parse_config("2,1,1;2,5,5;2,1,5;3,1,1;3,3,3;4,1,7;3,2,3").is_err());
    }
}
