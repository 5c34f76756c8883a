//! One function per subcommand, each producing an envelope and its text rendering.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rigidcy_core::census::{count_dc3_klein, count_dc3_triple, scan_klein_subsets, verify_dc3_profiles};
use rigidcy_core::embedverify::{
    k4_equivalence, load_shipped, mutation_suite, superelliptic_differentials, verify, CertificateData, MutationSummary,
    VerificationReport, PRIMARY,
};
use rigidcy_core::orbifold::{classify_appendix, cyclotomic_class_number, report as orbifold_report, OrbifoldReport};
use rigidcy_core::profsearch::{search as run_search, ExactValue, ModuliOutcome, SearchError, SearchReport, SearchStatus};
use serde::Serialize;
use serde_json::{json, Value};

use crate::envelope::{Outcome, ReportEnvelope, Status, VERSION};

/// An envelope together with its human-readable lines.
pub struct Report {
    pub envelope: ReportEnvelope,
    pub text: Vec<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn envelope(command: &str, input: &[(&str, String)], payload: Value, statuses: Vec<Status>) -> ReportEnvelope {
    ReportEnvelope {
        command: command.into(),
        input: input.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        payload,
        statuses,
        version: VERSION.into(),
    }
}

pub const ORBIFOLD_CASES: [&str; 2] = ["z3", "z7"];

fn orbifold_lines(r: &OrbifoldReport, out: &mut Vec<String>) {
    let fl = &r.fixed_locus;
    let res = &r.resolution;
    let fiber = (res.chi_cross_check - res.chi_open) / res.sing as i64;
    out.push(format!("case {}: {} (order {})", r.case, r.label, r.order));
    out.push(format!("  singular points |Sing|: {}", r.sing));
    out.push(format!("  fixed subgroup of the generator: {}", r.fixed.structure));
    out.push(format!("  dim H^2(T)^G: {}", r.cohomology[2]));
    out.push(format!("  dim H^3(T)^G: {}", r.cohomology[3]));
    out.push(format!("  fixed-locus identity: {} - {} = {} = 2 * {}", fl.t_g_mod_g, fl.t_g / fl.order as u64, fl.lhs, fl.h2));
    out.push(format!("  crepant divisors per singular point (age one): {}", res.divisors_per_point));
    out.push(format!("  h11 = h22: {}", r.h11));
    out.push(format!("  h30, h21: {}, {}", res.h30, res.h21));
    out.push(format!("  Euler characteristic: {}", r.chi));
    out.push(format!("  Euler cross-check: {} + {} * {} = {}", res.chi_open, res.sing, fiber, res.chi_cross_check));
}

pub fn orbifold(case: Option<&str>) -> Report {
    let cases: Vec<&str> = match case {
        Some(c) => vec![c],
        None => ORBIFOLD_CASES.to_vec(),
    };
    let mut statuses = Vec::new();
    let mut reports = Vec::new();
    let mut text = Vec::new();
    for c in &cases {
        match orbifold_report(c) {
            Ok(r) => {
                let fl = &r.fixed_locus;
                statuses.push(Status::pass_if(
                    format!("{c} fixed-locus identity"),
                    fl.holds && fl.lhs == fl.rhs,
                    format!("{} = {}", fl.lhs, fl.rhs),
                ));
                statuses.push(Status::pass_if(
                    format!("{c} Euler cross-check"),
                    r.resolution.chi_cross_check == r.chi,
                    format!("{} = {}", r.resolution.chi_cross_check, r.chi),
                ));
                orbifold_lines(&r, &mut text);
                reports.push(r);
            }
            Err(e) => statuses.push(Status::new(format!("{c} report"), Outcome::Fail, e.to_string())),
        }
    }
    let payload = match (case, reports.as_slice()) {
        (Some(_), [r]) => to_value(r),
        _ => json!({ "cases": reports }),
    };
    let input: Vec<(&str, String)> = case.map(|c| ("case", c.to_string())).into_iter().collect();
    Report { envelope: envelope("orbifold report", &input, payload, statuses), text }
}

pub fn census_triple() -> Report {
    let c = count_dc3_triple();
    let mut statuses = vec![Status::pass_if(
        "labels give distinct curves",
        c.collisions == 0,
        format!("{} coinciding label pairs", c.collisions),
    )];
    statuses.push(match verify_dc3_profiles() {
        Ok(n) => Status::new("ramification profiles of the quotient maps", Outcome::Pass, format!("{n} labels checked")),
        Err(e) => Status::new("ramification profiles of the quotient maps", Outcome::Fail, e.to_string()),
    });
    let text = vec![
        format!("curves with one non-constant coordinate: {}", c.l1),
        format!("curves with two non-constant coordinates: {}", c.l2),
        format!("curves with three non-constant coordinates: {}", c.l3),
        format!("total: {}", c.total),
    ];
    let payload = json!({ "l1": c.l1, "l2": c.l2, "l3": c.l3, "total": c.total });
    Report { envelope: envelope("census triple", &[], payload, statuses), text }
}

/// `Err` carries a usage message for a malformed subset.
pub fn census_klein(subset: Option<&[u8]>) -> Result<Report, String> {
    match subset {
        Some(s) => {
            let k = count_dc3_klein(s).ok_or_else(|| format!("subset {s:?} must be three distinct residues mod 7 including 0"))?;
            let mut text = vec![
                format!("subset: {{{}, {}, {}}}", k.subset[0], k.subset[1], k.subset[2]),
                format!("labels: {}", k.labels),
                format!("distinct curves: {}", k.count),
                format!("asymmetric: {}", k.asymmetric),
            ];
            if let Some(f) = &k.flag {
                text.push(format!("flag: {f}"));
            }
            let statuses = vec![Status::pass_if("translates of the subset are distinct", k.translates_distinct, "7 translates")];
            let input = [("subset", format!("{},{},{}", k.subset[0], k.subset[1], k.subset[2]))];
            Ok(Report { envelope: envelope("census klein", &input, to_value(&k), statuses), text })
        }
        None => {
            let scan = scan_klein_subsets();
            let asym: Vec<_> = scan.iter().filter(|k| k.asymmetric).collect();
            let flagged = scan.len() - asym.len();
            let counts: std::collections::BTreeSet<usize> = asym.iter().map(|k| k.count).collect();
            let mut text: Vec<String> = scan
                .iter()
                .map(|k| {
                    let tag = if k.asymmetric { "asymmetric" } else { "flagged: -S is a translate of S" };
                    format!("{{{}, {}, {}}}: {} curves ({tag})", k.subset[0], k.subset[1], k.subset[2], k.count)
                })
                .collect();
            text.push(format!("subsets: {} ({} asymmetric, {} flagged)", scan.len(), asym.len(), flagged));
            let statuses = vec![
                Status::pass_if("scan covers every 3-subset containing 0", scan.len() == 15, format!("{} subsets", scan.len())),
                Status::pass_if(
                    "asymmetric subsets agree",
                    counts.len() == 1,
                    format!("counts {:?}", counts.iter().collect::<Vec<_>>()),
                ),
            ];
            let payload = json!({ "subsets": scan, "asymmetric": asym.len(), "flagged": flagged });
            Ok(Report { envelope: envelope("census klein", &[], payload, statuses), text })
        }
    }
}

pub fn appendix_classify() -> Report {
    let class_number = |d| cyclotomic_class_number(d).expect("classified orders have phi(d) <= 6");
    let (payload, statuses, text) = match classify_appendix(class_number) {
        Ok(c) => {
            let mut text = vec![format!(
                "orders d with phi(d) | 6: {{{}}}",
                c.orders.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            )];
            for r in &c.rows {
                let verdict = if r.special { "volume-preserving".to_string() } else { format!("rejected, product {}", r.witness) };
                text.push(format!("  d = {:>2}  {:<30} {:<20} {}", r.d, r.torus, r.generator, verdict));
            }
            text.push(format!("special pairs: {}", c.special_pairs.join(", ")));
            let witnessed = c.rows.iter().filter(|r| !r.special).all(|r| r.witness != "1");
            let statuses = vec![
                Status::pass_if("every rejected row has a witness", witnessed, format!("{} rows", c.rows.len())),
                Status::pass_if("special pairs", c.special_pairs.len() == 2, format!("{} found", c.special_pairs.len())),
            ];
            (to_value(&c), statuses, text)
        }
        Err(e) => (Value::Null, vec![Status::new("classification", Outcome::Fail, e.to_string())], Vec::new()),
    };
    Report { envelope: envelope("appendix classify", &[], payload, statuses), text }
}

#[derive(Serialize)]
struct Root {
    value: ExactValue,
    multiplicity: usize,
}

#[derive(Serialize)]
struct CertificateResult {
    id: String,
    tower: String,
    curve_exponent: u32,
    lead: ExactValue,
    roots: Vec<Root>,
    maps: Vec<String>,
    report: VerificationReport,
    mutations: MutationSummary,
}

fn check_certificate(data: &CertificateData) -> CertificateResult {
    let report = verify(data);
    let mutations = mutation_suite(data);
    let maps = data.x_maps().map(|m| m.iter().map(|f| f.fmt_var("X")).collect()).unwrap_or_default();
    CertificateResult {
        id: data.id.clone(),
        tower: data.tower.name().to_string(),
        curve_exponent: data.curve.n,
        lead: ExactValue::of(&data.curve.lead),
        roots: data.curve.roots.iter().map(|(a, m)| Root { value: ExactValue::of(a), multiplicity: *m }).collect(),
        maps,
        report,
        mutations,
    }
}

pub const VERIFY_CASES: [&str; 7] = ["6444", "6442", "6422", "222i", "222ii", "222iii", "all"];

pub fn verify_embedding(case: &str) -> Report {
    let ids: Vec<&str> = if case == "all" { PRIMARY.to_vec() } else { vec![case] };
    let loaded: Vec<Result<CertificateData, String>> =
        ids.iter().map(|id| load_shipped(id).map_err(|e| e.to_string())).collect();
    let results: Vec<Result<CertificateResult, String>> =
        loaded.par_iter().map(|d| d.as_ref().map(check_certificate).map_err(|e| e.clone())).collect();
    let mut statuses = Vec::new();
    let mut text = Vec::new();
    let mut ok = Vec::new();
    for (id, r) in ids.iter().zip(results) {
        match r {
            Ok(c) => {
                let failed: Vec<&str> = c.report.checks.iter().filter(|k| !k.passed).map(|k| k.name).collect();
                statuses.push(Status::pass_if(
                    format!("{id} certificate"),
                    c.report.passed,
                    if failed.is_empty() { "all checks pass".into() } else { format!("failed: {}", failed.join(", ")) },
                ));
                statuses.push(Status::pass_if(
                    format!("{id} mutations rejected"),
                    c.mutations.escaped.is_empty(),
                    format!("{}/{}", c.mutations.rejected, c.mutations.total),
                ));
                text.push(format!("{id} over {}: {}", c.tower, if c.report.passed { "certified" } else { "REJECTED" }));
                for k in &c.report.checks {
                    text.push(format!("  {:<14} {}  {}", k.name, if k.passed { "ok  " } else { "FAIL" }, k.detail));
                }
                let prof: Vec<String> =
                    c.report.profile.iter().map(|p| format!("({}, {}, {})", p.gamma0, p.gamma1, p.delta)).collect();
                text.push(format!("  (gamma0, gamma1, delta) per coordinate: {}", prof.join(" ")));
                text.push(format!("  mutations rejected: {}/{}", c.mutations.rejected, c.mutations.total));
                ok.push(c);
            }
            Err(e) => statuses.push(Status::new(format!("{id} certificate"), Outcome::Fail, e)),
        }
    }
    let total: usize = ok.iter().map(|c| c.mutations.total).sum();
    let rejected: usize = ok.iter().map(|c| c.mutations.rejected).sum();
    text.push(format!("mutation suite: {rejected}/{total} corruptions rejected"));
    let payload = json!({ "certificates": ok, "mutations_total": total, "mutations_rejected": rejected });
    Report { envelope: envelope("verify embedding", &[("case", case.to_string())], payload, statuses), text }
}

#[derive(Serialize)]
struct SolutionEntry {
    family: String,
    tower: String,
    values: BTreeMap<String, ExactValue>,
    maps: Vec<String>,
}

fn solutions(r: &SearchReport) -> Vec<SolutionEntry> {
    let Some(s) = &r.sextic else { return Vec::new() };
    s.families
        .iter()
        .flat_map(|f| {
            f.solutions().iter().map(|sol| SolutionEntry {
                family: f.label.clone(),
                tower: sol.tower.clone(),
                values: sol.values.iter().cloned().collect(),
                maps: sol.maps.clone(),
            })
        })
        .collect()
}

fn search_statuses(r: &SearchReport) -> Vec<Status> {
    let mut st = Vec::new();
    if let Some(x) = &r.exclusion {
        st.push(Status::pass_if(
            "combinatorial exclusion",
            x.is_empty(),
            format!("{} coordinate triples examined, {} survive", x.triples_examined, x.survivors),
        ));
    }
    if let Some(s) = &r.sextic {
        for f in &s.families {
            st.push(match &f.outcome {
                ModuliOutcome::Solutions(v) => Status::new(format!("family {}", f.label), Outcome::Pass, format!("{} solutions", v.len())),
                ModuliOutcome::Empty(e) => Status::new(format!("family {}", f.label), Outcome::Pass, format!("empty: {}", e.reason)),
                ModuliOutcome::Inconclusive(why) => Status::new(format!("family {}", f.label), Outcome::Inconclusive, why.clone()),
            });
        }
        for c in &s.cross_checks {
            st.push(Status::pass_if(
                format!("{} regenerates {}", c.source, c.certificate),
                c.verified && c.equivalent,
                c.map.clone().unwrap_or_else(|| "no equivalence found".into()),
            ));
        }
    }
    if let Some(s) = &r.septic {
        let uncovered: u64 = s.scan.iter().map(|c| c.uncovered).sum();
        st.push(Status::new(
            "class scan covers every surviving triple",
            if s.conclusive() { Outcome::Pass } else { Outcome::Inconclusive },
            format!("{uncovered} uncovered"),
        ));
        for c in &s.cases {
            st.push(Status::pass_if(
                format!("case {} over {}", c.case, c.tower),
                c.embeddings.is_empty(),
                format!("{} embeddings", c.embeddings.len()),
            ));
        }
    }
    st.push(Status::new(
        "search status",
        match r.status {
            SearchStatus::Confirmed | SearchStatus::Found => Outcome::Pass,
            SearchStatus::Inconclusive => Outcome::Inconclusive,
        },
        r.summary.clone(),
    ));
    st
}

fn search_lines(r: &SearchReport, sols: &[SolutionEntry]) -> Vec<String> {
    let mut text = vec![format!("d = {}: {}", r.d, r.summary)];
    let rows: Vec<String> = r.rows.iter().map(|h| format!("(g0={}, g1={}, delta={})", h.gamma0, h.gamma1, h.delta)).collect();
    text.push(format!("Hurwitz rows: {}", rows.join(" ")));
    if let Some(x) = &r.exclusion {
        text.push(format!("coordinate triples examined: {}, surviving: {}", x.triples_examined, x.survivors));
    }
    if let Some(s) = &r.sextic {
        for f in &s.families {
            let what = match &f.outcome {
                ModuliOutcome::Solutions(v) => format!("{} solutions", v.len()),
                ModuliOutcome::Empty(e) => match &e.eliminant {
                    Some(el) => format!("empty ({}; eliminant {el})", e.reason),
                    None => format!("empty ({})", e.reason),
                },
                ModuliOutcome::Inconclusive(w) => format!("inconclusive: {w}"),
            };
            text.push(format!("family {:<5} {what}", f.label));
            if let ModuliOutcome::Empty(e) = &f.outcome {
                for w in &e.witnesses {
                    let pt: Vec<String> = w.point.iter().map(|(k, v)| format!("{k} = {v}")).collect();
                    text.push(format!("  degenerate at {}: {}", pt.join(", "), w.violation));
                }
            }
        }
        for sol in sols {
            let vals: Vec<String> = sol.values.iter().map(|(k, v)| format!("{k} = {}", v.display)).collect();
            text.push(format!("  {:<5} {}", sol.family, vals.join(", ")));
        }
        for c in &s.quartic.classes {
            text.push(format!("quartic class {}: {} members", c.certificate.as_deref().unwrap_or("unmatched"), c.members));
        }
        for c in &s.cross_checks {
            let m = c.map.as_deref().unwrap_or("none");
            text.push(format!("{} ~ {} via {m} (regenerated over {})", c.source, c.certificate, c.regenerated_tower));
        }
    }
    if let Some(s) = &r.septic {
        for c in &s.scan {
            text.push(format!(
                "class-1 points {}: {} triples, {} surviving, {} uncovered",
                c.k, c.triples, c.survivors, c.uncovered
            ));
        }
        for c in &s.cases {
            text.push(format!("case {} over {}: x1 = {}, {} embeddings", c.case, c.tower, c.first, c.embeddings.len()));
        }
    }
    text
}

pub fn search(d: usize) -> Report {
    let input = [("d", d.to_string())];
    match run_search(d) {
        Ok(r) => {
            let sols = solutions(&r);
            let classes = r.sextic.as_ref().map(|s| s.class_labels()).unwrap_or_default();
            let statuses = search_statuses(&r);
            let text = search_lines(&r, &sols);
            let payload = json!({
                "d": d,
                "result": r.summary,
                "classes": classes,
                "solutions": sols,
                "trace": r,
            });
            Report { envelope: envelope("search", &input, payload, statuses), text }
        }
        Err(e) => {
            let outcome = match e {
                SearchError::Inconclusive(_) => Outcome::Inconclusive,
                _ => Outcome::Fail,
            };
            let payload = json!({ "d": d, "result": e.to_string(), "classes": [], "solutions": [] });
            Report {
                envelope: envelope("search", &input, payload, vec![Status::new("search", outcome, e.to_string())]),
                text: vec![format!("d = {d}: {e}")],
            }
        }
    }
}

pub const DIFFERENTIAL_KS: [u32; 4] = [1, 2, 3, 5];

pub fn differentials(k: Option<u32>) -> Report {
    let ks: Vec<u32> = match k {
        Some(k) => vec![k],
        None => DIFFERENTIAL_KS.to_vec(),
    };
    let mut rows = Vec::new();
    let mut statuses = Vec::new();
    let mut text = Vec::new();
    for &k in &ks {
        match superelliptic_differentials(7, k, 1) {
            Ok(b) => {
                let forms = b.render();
                text.push(format!(
                    "k = {k}: y^7 = {} (x-1), genus {}, basis {}, eigenvalue product mu^{}{}",
                    if k == 1 { "x".to_string() } else { format!("x^{k}") },
                    b.genus,
                    forms.join(", "),
                    b.product_exponent,
                    if b.special { "  [special]" } else { "" }
                ));
                rows.push(json!({ "k": k, "basis": b, "forms": forms }));
            }
            Err(e) => statuses.push(Status::new(format!("k = {k}"), Outcome::Fail, e.to_string())),
        }
    }
    let special: Vec<u32> =
        rows.iter().filter(|r| r["basis"]["special"] == Value::Bool(true)).map(|r| r["k"].as_u64().unwrap() as u32).collect();
    let mut payload = json!({ "rows": rows, "special": special });
    if k.is_none() {
        match k4_equivalence() {
            Ok(e) => {
                statuses.push(Status::pass_if(
                    "k = 4 is isomorphic to k = 2",
                    e.curve_identity && e.matches_direct,
                    e.map.clone(),
                ));
                text.push(format!("k = 4 reduces to k = 2 via {}", e.map));
                payload["k4"] = to_value(&e);
            }
            Err(e) => statuses.push(Status::new("k = 4 is isomorphic to k = 2", Outcome::Fail, e.to_string())),
        }
    }
    statuses.push(Status::new("rows computed", Outcome::Pass, format!("{} rows", rows.len())));
    let input: Vec<(&str, String)> = k.map(|k| ("k", k.to_string())).into_iter().collect();
    Report { envelope: envelope("differentials", &input, payload, statuses), text }
}
