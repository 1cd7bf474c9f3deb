use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use enriques_core::autlab::AutomorphismSpec;
use enriques_core::corpus::{self, Cover};
use enriques_core::curvegraph::{CurveGraph, DynkinType};
use enriques_core::derivation::DerivationSpec;
use enriques_core::fibration::{
    affine_to_fibers, conductrix_lookup, conductrix_table, enumerate_blowup_rows, is_extremal, FiberConfiguration,
    BLOWUP_HEADER, CONDUCTRIX_TABLE, TYPE_FIBRATIONS,
};
use enriques_core::lattice::AMBIENT_RANK;
use enriques_core::vinberg::{maximal_parabolic_census, vinberg_check, Census};
use serde_json::json;

use crate::report::{InputError, RunReport};

pub const DEFAULT_SEED: u64 = 20240601;

/// A file from disk, or failing that a shipped corpus file addressed by its
/// path under `data/` (a leading `data/` is accepted) or by its stem within
/// the kind of file the command expects.
pub struct Input {
    pub name: String,
    pub text: String,
}

pub fn load(path: &str, by_stem: fn(&str) -> Option<&'static corpus::DataFile>) -> Result<Input, InputError> {
    if Path::new(path).is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
        return Ok(Input { name: path.to_string(), text });
    }
    let rel = path.trim_start_matches("./");
    let rel = rel.strip_prefix("crates/core/").unwrap_or(rel);
    let rel = rel.strip_prefix("data/").unwrap_or(rel);
    let shipped = corpus::find(rel)
        .or_else(|| corpus::all_files().find(|f| f.path.ends_with(&format!("/{rel}"))))
        .or_else(|| by_stem(rel));
    match shipped {
        Some(f) => Ok(Input { name: format!("data/{}", f.path), text: f.text.to_string() }),
        None => Err(InputError(format!("{path}: no such file"))),
    }
}

fn graph_file(stem: &str) -> Option<&'static corpus::DataFile> {
    corpus::graph(stem.trim_end_matches(".graph"))
}

fn fiber_alternatives(t: DynkinType) -> String {
    let kinds: Vec<String> = affine_to_fibers(t).iter().map(|k| k.to_string()).collect();
    if kinds.len() == 1 {
        kinds[0].clone()
    } else {
        format!("({})", kinds.join(" | "))
    }
}

fn census_pairs(census: &Census) -> Vec<(String, usize)> {
    census.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn census_lines(report: &mut RunReport, census: &Census) {
    report.line("maximal parabolic census:");
    for (key, count) in census {
        let fibres: Vec<String> = key.0.iter().map(|t| fiber_alternatives(*t)).collect();
        report.line(format!("  {key} x{count}  fibres {}", fibres.join(" + ")));
    }
}

fn vinberg_checks(report: &mut RunReport, graph: &CurveGraph, ambient_rank: usize) -> Result<bool, InputError> {
    let r = vinberg_check(graph, ambient_rank)?;
    report.line(format!(
        "{}: {} vertices, Gram rank {}, {} connected parabolic subdiagrams",
        graph.name(),
        r.vertices,
        r.gram_rank,
        r.connected_parabolic_count
    ));
    report.check(
        format!("{}: nondegenerate", graph.name()),
        r.nondegenerate,
        format!("Gram rank {} (need {ambient_rank})", r.gram_rank),
    );
    let triples: Vec<String> =
        r.triple_lines.iter().map(|&(i, j)| format!("{}={}", graph.label(i), graph.label(j))).collect();
    report.check(format!("{}: no lines of multiplicity >= 3", graph.name()), r.no_triple_lines, triples.join(" "));
    let witnesses: Vec<String> =
        r.failures.iter().map(|p| format!("{{{}}} ~{}", p.sub.labels(graph).join(","), p.kind)).collect();
    for w in &witnesses {
        report.line(format!("  not a component of a rank-8 parabolic: {w}"));
    }
    report.check(
        format!("{}: every connected parabolic extends to rank 8", graph.name()),
        r.failures.is_empty(),
        witnesses.first().cloned().unwrap_or_default(),
    );
    Ok(r.passed())
}

fn parse_graph(input: &Input) -> Result<CurveGraph, InputError> {
    CurveGraph::from_json(&input.text).map_err(|e| InputError(format!("{}: {e}", input.name)))
}

pub fn check_vinberg(path: &str, census: bool, ambient_rank: usize) -> Result<RunReport, InputError> {
    let input = load(path, graph_file)?;
    let graph = parse_graph(&input)?;
    let mut report = RunReport::new("check-vinberg", vec![input.name.clone()]);
    let passed = vinberg_checks(&mut report, &graph, ambient_rank)?;
    report.line(format!("verdict: {}", if passed { "pass" } else { "fail" }));
    if census {
        let c = maximal_parabolic_census(&graph)?;
        census_lines(&mut report, &c);
        report.data = json!({ "census": census_pairs(&c).into_iter().collect::<BTreeMap<_, _>>() });
    }
    Ok(report.finish())
}

pub fn census(path: &str) -> Result<RunReport, InputError> {
    let input = load(path, graph_file)?;
    let graph = parse_graph(&input)?;
    let mut report = RunReport::new("census", vec![input.name.clone()]);
    let c = maximal_parabolic_census(&graph)?;
    census_lines(&mut report, &c);
    report.data = json!({ "census": census_pairs(&c).into_iter().collect::<BTreeMap<_, _>>() });
    Ok(report.finish())
}

fn cycles(graph: &CurveGraph, perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(graph.label(v));
            v = perm[v];
        }
        out.push(format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out.join("")
    }
}

pub fn symmetries(path: &str) -> Result<RunReport, InputError> {
    let input = load(path, graph_file)?;
    let graph = parse_graph(&input)?;
    let mut report = RunReport::new("symmetries", vec![input.name.clone()]);
    let group = graph.symmetry_group();
    report.line(format!("{}: symmetry group of order {}", graph.name(), group.order));
    let gens: Vec<String> = group.generators.iter().map(|g| cycles(&graph, g)).collect();
    for g in &gens {
        report.line(format!("  generator {g}"));
    }
    report.data = json!({ "order": group.order.to_string(), "generators": gens });
    Ok(report.finish())
}

pub fn fibrations(configs: &[String]) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("fibrations", configs.to_vec());
    let mut rows = Vec::new();
    let mut check_one = |report: &mut RunReport, label: String, src: &str| -> Result<(), InputError> {
        let config = FiberConfiguration::parse(src)?;
        let extremal = is_extremal(&config)?;
        let sing = conductrix_lookup(&config).map(|r| r.singularities.to_string()).ok();
        let note = sing.as_ref().map(|s| format!("  [canonical cover: {s}]")).unwrap_or_default();
        report.line(format!("{label}{config}{note}"));
        report.check(format!("extremal {config}"), extremal, String::new());
        rows.push(json!({ "config": config.to_string(), "extremal": extremal, "singularities": sing }));
        Ok(())
    };
    if configs.is_empty() {
        for (ty, cover, list) in TYPE_FIBRATIONS {
            let label = if cover.is_empty() { format!("{ty}: ") } else { format!("{ty} {cover}: ") };
            for src in *list {
                check_one(&mut report, label.clone(), src)?;
            }
        }
    } else {
        for src in configs {
            check_one(&mut report, String::new(), src)?;
        }
    }
    report.data = json!({ "fibrations": rows });
    Ok(report.finish())
}

pub fn conductrix(config: &str) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("conductrix", vec![config.to_string()]);
    let parsed = FiberConfiguration::parse(config)?;
    match conductrix_lookup(&parsed) {
        Ok(rec) => {
            report.line(rec.to_string());
            report.line(format!("singularities: {}", rec.singularities));
            if !rec.is_empty() {
                report.check("A^2 = -2", rec.self_pairing() == -2, format!("A^2 = {}", rec.self_pairing()));
            }
            report.data = json!({
                "config": rec.config.to_string(),
                "shape": rec.shape,
                "components": rec.components.iter().map(|c| (c.multiplicity, c.self_intersection)).collect::<Vec<_>>(),
                "edges": rec.edges,
                "cusp": rec.cusp,
                "singularities": rec.singularities.to_string(),
            });
        }
        Err(e) => report.check("listed in the conductrix tables", false, e.to_string()),
    }
    Ok(report.finish())
}

pub fn default_ac_min(pa: u32) -> i32 {
    if pa == 0 {
        -2
    } else {
        0
    }
}

pub fn blowup_table(pa: u32, ac_min: Option<i32>) -> Result<RunReport, InputError> {
    if pa > 1 {
        return Err(InputError(format!("arithmetic genus must be 0 or 1, got {pa}")));
    }
    let ac_min = ac_min.unwrap_or_else(|| default_ac_min(pa));
    let mut report = RunReport::new("blowup-table", vec![pa.to_string(), ac_min.to_string()]);
    let rows = enumerate_blowup_rows(pa, ac_min);
    report.line(BLOWUP_HEADER);
    for r in &rows {
        report.line(r.to_string());
    }
    let c2 = if pa == 0 { -2 } else { 0 };
    let consistent = rows.iter().all(|r| {
        let m = r.m.unwrap_or(0) as i32;
        let s = r.s as i32;
        2 * r.ctilde2 == (c2 - m * m * r.r as i32) * s * s && 2 * r.pa_tilde - 2 == r.ctilde2 - s * r.ac
    });
    report.check("rows satisfy both blow-up formulas", consistent, format!("{} rows", rows.len()));
    report.data = json!({
        "rows": rows.iter().map(|r| json!({
            "sing": r.sing.to_string(), "r": r.r, "m": r.m, "s": r.s, "ac": r.ac, "ctilde2": r.ctilde2, "pa_tilde": r.pa_tilde,
        })).collect::<Vec<_>>()
    });
    Ok(report.finish())
}

pub fn verify_derivation(path: &str) -> Result<RunReport, InputError> {
    let input = load(path, corpus::derivation)?;
    let spec = DerivationSpec::parse(&input.text).map_err(|e| InputError(format!("{}: {e}", input.name)))?;
    let mut report = RunReport::new("verify-derivation", vec![input.name.clone()]);
    let result = spec.verify();
    report.line(format!("{}: {}", result.name, spec.description));
    for c in &result.checks {
        report.check(c.name.clone(), c.passed, c.detail.clone());
    }
    Ok(report.finish())
}

pub fn verify_aut(path: &str, seed: u64, trials: Option<u32>) -> Result<RunReport, InputError> {
    let input = load(path, corpus::automorphism)?;
    let spec = AutomorphismSpec::parse(&input.text).map_err(|e| InputError(format!("{}: {e}", input.name)))?;
    let mut report = RunReport::new("verify-aut", vec![input.name.clone(), format!("seed={seed}")]);
    let result = spec.verify(seed, trials);
    report.line(format!("{}: {}", result.name, spec.description));
    report.line(format!("expected group {} over {} trials in GF(2^{})", result.expected, result.trials, spec.field.degree()));
    if let Some(a) = &result.asserted {
        report.line(format!("full group {a} asserted, not machine-checked"));
    }
    for c in &result.checks {
        report.check(c.name.clone(), c.passed, c.detail.clone());
    }
    Ok(report.finish())
}

/// The whole shipped corpus plus the static tables.
pub fn verify_all(seed: u64, trials: Option<u32>) -> Result<RunReport, InputError> {
    let mut report = RunReport::new("verify-all", vec![format!("seed={seed}")]);
    let mut used: BTreeSet<&'static str> = BTreeSet::new();
    let mut censuses: BTreeMap<&str, String> = BTreeMap::new();
    let mut groups: BTreeMap<&str, String> = BTreeMap::new();
    let mut derivations: BTreeMap<&str, bool> = BTreeMap::new();
    let mut orders: BTreeMap<&str, String> = BTreeMap::new();

    report.line("== dual graphs");
    for f in corpus::GRAPHS {
        used.insert(f.path);
        let graph = CurveGraph::from_json(f.text)?;
        let mut sub = RunReport::new("", Vec::new());
        vinberg_checks(&mut sub, &graph, AMBIENT_RANK)?;
        report.checks.extend(sub.checks);
        let census = maximal_parabolic_census(&graph)?;
        let pairs = census_pairs(&census);
        let rendered: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        censuses.insert(f.stem(), rendered.join(" "));
        let order = graph.symmetry_group().order.to_string();
        orders.insert(f.stem(), order.clone());
        report.line(format!("  {}: census {}; symmetry order {order}", f.stem(), rendered.join(" ")));
        match corpus::expectation(f.stem()) {
            Some(e) => {
                let bad = e.census_mismatches(&pairs);
                report.check(format!("{}: census", f.stem()), bad.is_empty(), bad.join("; "));
                report.check(
                    format!("{}: symmetry order", f.stem()),
                    order == e.symmetry_order.to_string(),
                    format!("{order} (expected {})", e.symmetry_order),
                );
            }
            None => report.check(format!("{}: expectation", f.stem()), false, "no expectation recorded"),
        }
    }

    report.line("== negative controls");
    for f in corpus::CONTROLS {
        used.insert(f.path);
        let graph = CurveGraph::from_json(f.text)?;
        let mut sub = RunReport::new("", Vec::new());
        let passed = vinberg_checks(&mut sub, &graph, AMBIENT_RANK)?;
        let witness = sub.checks.iter().find(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.witness));
        report.line(format!("  {}: {}", f.stem(), witness.clone().unwrap_or_else(|| "passes".into())));
        report.check(format!("{}: rejected with a witness", f.stem()), !passed && witness.is_some(), witness.unwrap_or_default());
    }

    report.line("== fibrations");
    let mut all_extremal = true;
    for (_, _, list) in TYPE_FIBRATIONS {
        for src in *list {
            all_extremal &= is_extremal(&FiberConfiguration::parse(src)?)?;
        }
    }
    report.check("every listed fibration is extremal", all_extremal, String::new());
    for src in ["(I2*) elliptic", "(I0*) elliptic"] {
        let e = is_extremal(&FiberConfiguration::parse(src)?)?;
        report.check(format!("{src} is not extremal"), !e, String::new());
    }

    report.line("== conductrix tables");
    used.extend(corpus::TABLES.iter().filter(|t| t.text == CONDUCTRIX_TABLE).map(|t| t.path));
    let bad: Vec<String> = conductrix_table()
        .iter()
        .filter(|r| !r.is_empty() && r.self_pairing() != -2)
        .map(|r| format!("{}: {}", r.config, r.self_pairing()))
        .collect();
    let nonempty = conductrix_table().iter().filter(|r| !r.is_empty()).count();
    report.line(format!("  {} rows, {nonempty} nonempty", conductrix_table().len()));
    report.check("every nonempty conductrix has A^2 = -2", bad.is_empty(), bad.join("; "));

    report.line("== blow-up tables");
    for pa in [0u32, 1] {
        let rows = enumerate_blowup_rows(pa, default_ac_min(pa));
        let want = if pa == 0 { 6 } else { 9 };
        report.check(format!("p_a = {pa} table has {want} rows"), rows.len() == want, format!("{} rows", rows.len()));
    }

    report.line("== derivations");
    for f in corpus::DERIVATIONS {
        used.insert(f.path);
        let spec = DerivationSpec::parse(f.text)?;
        let r = spec.verify();
        let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        derivations.insert(f.stem(), r.passed());
        report.check(
            format!("derivation {}", f.stem()),
            r.passed(),
            if failed.is_empty() { format!("{} checks", r.checks.len()) } else { failed.join("; ") },
        );
    }

    report.line("== automorphisms");
    for f in corpus::AUTOMORPHISMS {
        used.insert(f.path);
        let spec = AutomorphismSpec::parse(f.text)?;
        let r = spec.verify(seed, trials);
        let failed: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        groups.insert(f.stem(), if r.passed() { r.expected.to_string() } else { format!("{}?", r.expected) });
        report.check(
            format!("automorphisms {}", f.stem()),
            r.passed(),
            if failed.is_empty() { format!("{} over {} trials", r.expected, r.trials) } else { failed.join("; ") },
        );
    }

    let missing: Vec<&str> = corpus::all_files().map(|f| f.path).filter(|p| !used.contains(p)).collect();
    report.check("every shipped data file was exercised", missing.is_empty(), missing.join(" "));

    report.line("== classification");
    report.line(format!("  {:<14} {:<22} {:<12} {:<16} {:<12} {}", "cover", "type", "Aut(X)", "checked", "derivation", "census"));
    let mut table = Vec::new();
    for row in corpus::CLASSIFICATION {
        let checked = if let Some(n) = row.graph_symmetry {
            let got = orders.get(row.graph).cloned().unwrap_or_default();
            if got == n.to_string() {
                format!("graph order {got}")
            } else {
                format!("graph order {got}?")
            }
        } else {
            let gs: Vec<String> = row.automorphisms.iter().map(|a| groups.get(a).cloned().unwrap_or_default()).collect();
            gs.join(", ")
        };
        let deriv = if row.derivations.is_empty() {
            "-".to_string()
        } else if row.derivations.iter().all(|d| derivations.get(d).copied().unwrap_or(false)) {
            "verified".to_string()
        } else {
            "FAILED".to_string()
        };
        let census = censuses.get(row.graph).cloned().unwrap_or_default();
        let cover = match row.cover {
            Cover::Supersingular => "supersingular",
            Cover::Classical => "classical",
        };
        report.line(format!("  {cover:<14} {:<22} {:<12} {checked:<16} {deriv:<12} {census}", row.label, row.aut));
        table.push(json!({
            "cover": cover, "type": row.label, "aut": row.aut, "checked": checked, "derivation": deriv, "census": census,
        }));
    }
    report.data = json!({ "classification": table });
    Ok(report.finish())
}
