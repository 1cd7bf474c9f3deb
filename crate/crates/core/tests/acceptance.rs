//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when a
//! criterion fails that is not listed in `KNOWN_FAILURES`, or when a listed
//! one starts passing.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_graphs, brute_force_connected_parabolics, control_graphs, corpus_graph, count_symmetries, inertia_by_descartes};
use enriques_core::algebra::{FieldElement, FiniteField};
use enriques_core::autlab::AutomorphismSpec;
use enriques_core::corpus::{self, AUTOMORPHISMS, DERIVATIONS, GRAPH_EXPECTATIONS};
use enriques_core::derivation::{rs_deg_isolated, DerivationSpec, DivisorBookkeeping};
use enriques_core::fibration::{
    conductrix_lookup, conductrix_table, enumerate_blowup_rows, is_extremal, FiberConfiguration, TYPE_FIBRATIONS,
};
use enriques_core::lattice::{self, AMBIENT_RANK};
use enriques_core::vinberg::{enumerate_connected_parabolics, maximal_parabolic_census, vinberg_check};
use num_bigint::BigUint;

/// Criteria expected to fail, with the reason printed next to the FAIL line.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    3,
    "the shipped type VIII graph has 48 symmetries (confirmed by backtracking); 24 would need an extra constraint the graph does not carry",
)];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn within(elapsed: Duration, limit_secs: u64, what: String) -> Outcome {
    if elapsed.as_secs() >= limit_secs {
        Err(format!("{what}; took {elapsed:.1?}, limit {limit_secs} s"))
    } else {
        Ok(what)
    }
}

fn vinberg_suite() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (name, g) in all_graphs() {
        let report = vinberg_check(&g, AMBIENT_RANK).map_err(|e| e.to_string())?;
        if !report.passed() {
            problems.push(format!("{name} fails the criterion"));
        }
        let Some(exp) = corpus::expectation(&name) else {
            problems.push(format!("{name} has no census expectation"));
            continue;
        };
        let census: Vec<(String, usize)> = maximal_parabolic_census(&g)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(k, c)| (k.to_string(), c))
            .collect();
        problems.extend(exp.census_mismatches(&census).into_iter().map(|m| format!("{name}: {m}")));
    }
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    within(start.elapsed(), 60, format!("{} graphs pass, censuses exact", GRAPH_EXPECTATIONS.len()))
}

fn negative_controls() -> Outcome {
    let start = Instant::now();
    let controls = control_graphs();
    if controls.len() < 3 {
        return Err(format!("only {} controls", controls.len()));
    }
    let mut witnesses = Vec::new();
    for (name, g) in &controls {
        let r = vinberg_check(g, AMBIENT_RANK).map_err(|e| e.to_string())?;
        if r.passed() {
            return Err(format!("{name} passes"));
        }
        let witness = if let Some(&(a, b)) = r.triple_lines.first() {
            format!("{}={}", g.label(a), g.label(b))
        } else if let Some(p) = r.failures.first() {
            format!("~{} {{{}}}", p.kind, p.sub.labels(g).join(","))
        } else if !r.nondegenerate {
            format!("rank {}", r.gram_rank)
        } else {
            return Err(format!("{name} fails without a witness"));
        };
        witnesses.push(format!("{name}: {witness}"));
    }
    within(start.elapsed(), 10, witnesses.join("; "))
}

fn symmetry_suite() -> Outcome {
    let mut problems = Vec::new();
    let mut seen = Vec::new();
    for exp in GRAPH_EXPECTATIONS {
        let g = corpus_graph(exp.graph);
        let order = g.symmetry_group().order;
        let oracle = count_symmetries(&g);
        if order != BigUint::from(oracle) {
            problems.push(format!("{}: {order} disagrees with backtracking {oracle}", exp.graph));
        }
        if order != BigUint::from(exp.symmetry_order) {
            problems.push(format!("{}: {order} (expected {})", exp.graph, exp.symmetry_order));
        }
        seen.push(format!("{}={order}", exp.graph));
    }
    if problems.is_empty() {
        Ok(seen.join(" "))
    } else {
        Err(problems.join("; "))
    }
}

fn extremality_suite() -> Outcome {
    let mut count = 0;
    for (ty, cover, configs) in TYPE_FIBRATIONS {
        for c in *configs {
            let config = FiberConfiguration::parse(c).map_err(|e| e.to_string())?;
            if !is_extremal(&config).map_err(|e| e.to_string())? {
                return Err(format!("{ty} {cover}: {c} not extremal"));
            }
            count += 1;
        }
    }
    for c in ["(I2*) elliptic", "(I0*) elliptic"] {
        if is_extremal(&FiberConfiguration::parse(c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? {
            return Err(format!("{c} reported extremal"));
        }
    }
    Ok(format!("{count} listed fibrations extremal, (I2*) and (I0*) elliptic rejected"))
}

fn blowup_tables() -> Outcome {
    let start = Instant::now();
    let fmt = |rows: Vec<enriques_core::fibration::BlowupRow>| -> Vec<String> {
        let mut v: Vec<String> = rows
            .iter()
            .map(|r| format!("{} {} {} {} {} {} {}", r.sing, r.r, r.m.map_or("-".into(), |m| m.to_string()), r.s, r.ac, r.ctilde2, r.pa_tilde))
            .collect();
        v.sort();
        v
    };
    let sorted = |rows: &[&str]| -> Vec<String> {
        let mut v: Vec<String> = rows.iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    };
    let rational = sorted(&["- 0 - 1 1 -1 0", "- 0 - 2 -1 -4 0", "- 2 1 1 0 -2 0", "- 4 1 1 -1 -3 0", "- 6 1 1 -2 -4 0", "- 1 1 2 -2 -6 0"]);
    let genus_one = sorted(&[
        "sm 0 - 1 0 0 1",
        "sm 0 - 2 0 0 1",
        "n 1 2 1 0 -2 0",
        "c 0 - 1 0 0 1",
        "c 0 - 2 0 0 1",
        "c 1 2 1 0 -2 0",
        "c 4 1 1 0 -2 0",
        "c 2 1 1 1 -1 0",
        "c 0 - 1 2 0 0",
    ]);
    let got0 = fmt(enumerate_blowup_rows(0, -2));
    let got1 = fmt(enumerate_blowup_rows(1, 0));
    if got0 != rational {
        return Err(format!("genus 0 rows {got0:?}"));
    }
    if got1 != genus_one {
        return Err(format!("genus 1 rows {got1:?}"));
    }
    within(start.elapsed(), 1, "6 and 9 rows, row for row".into())
}

fn conductrix_suite() -> Outcome {
    let table = conductrix_table();
    for rec in table.iter().filter(|r| !r.is_empty()) {
        if rec.self_pairing() != -2 {
            return Err(format!("{}: A^2 = {}", rec.config, rec.self_pairing()));
        }
    }
    let lookups = [
        ("(I4*) elliptic", "4A1"),
        ("(II*) elliptic", "D4"),
        ("(2III, I8) elliptic", "12A1"),
        ("(III, I8) elliptic", "D4, 8A1"),
        ("(IV, 2IV*) elliptic", "D4"),
        ("(2I0*, 2I0*) quasi-elliptic", "4A1"),
        ("(2II*) quasi-elliptic", "4A1 or D4"),
    ];
    for (c, want) in lookups {
        let config = FiberConfiguration::parse(c).map_err(|e| e.to_string())?;
        let got = conductrix_lookup(&config).map_err(|e| e.to_string())?.singularities.to_string();
        if got != want {
            return Err(format!("{c}: {got} (expected {want})"));
        }
    }
    let nonempty = table.iter().filter(|r| !r.is_empty()).count();
    Ok(format!("{nonempty} nonempty conductrices with A^2 = -2; lookups verbatim"))
}

fn derivation_suite() -> Outcome {
    let start = Instant::now();
    for f in DERIVATIONS {
        let report = DerivationSpec::parse(f.text).map_err(|e| format!("{}: {e}", f.path))?.verify();
        if !report.passed() {
            let bad: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            return Err(format!("{}: {}", report.name, bad.join(", ")));
        }
    }
    let book = DivisorBookkeeping {
        curves: vec![],
        intersections: None,
        divisor: vec![],
        canonical: vec![],
        c2: 16,
        claimed: Some((-12, -4)),
    };
    let deg = rs_deg_isolated(&book).isolated_degree;
    if deg != 0 {
        return Err(format!("rs_deg_isolated(-12, -4, 16) = {deg}"));
    }
    within(start.elapsed(), 30, format!("{} specs verify; isolated degree 0", DERIVATIONS.len()))
}

fn automorphism_suite() -> Outcome {
    let start = Instant::now();
    let expected = [
        ("e8_supersingular", "Z/11"),
        ("e8_classical", "1"),
        ("e7a1_supersingular_generic", "Z/2"),
        ("e7a1_supersingular_special", "Z/14"),
        ("e7a1_classical_iii", "Z/2"),
        ("e7a1_classical_2iii", "Z/2"),
        ("d8_supersingular", "Q8"),
        ("d8_classical", "Z/2"),
        ("d4d4", "(Z/2)^3"),
        ("e6a2_supersingular", "Z/10"),
    ];
    for (stem, group) in expected {
        let spec = AutomorphismSpec::parse(corpus::automorphism(stem).ok_or(format!("no {stem}"))?.text)
            .map_err(|e| e.to_string())?;
        if spec.verify(0, Some(1)).expected.name() != group {
            return Err(format!("{stem} declares the wrong group"));
        }
    }
    let mut checks = 0;
    for f in AUTOMORPHISMS {
        let spec = AutomorphismSpec::parse(f.text).map_err(|e| format!("{}: {e}", f.path))?;
        for seed in [1u64, 2, 3] {
            let report = spec.verify(seed, Some(3));
            if !report.passed() {
                let bad: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
                return Err(format!("{} seed {seed}: {}", report.name, bad.join(", ")));
            }
            checks += report.checks.len();
        }
    }
    within(start.elapsed(), 60, format!("{} specs x 3 seeds x 3 trials, {checks} checks", AUTOMORPHISMS.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut graphs = 0;
    for (name, g) in all_graphs().into_iter().chain(control_graphs()).filter(|(_, g)| g.len() <= 13) {
        let mut fast: Vec<u32> =
            enumerate_connected_parabolics(&g).map_err(|e| e.to_string())?.iter().map(|p| p.mask() as u32).collect();
        fast.sort_unstable();
        if fast != brute_force_connected_parabolics(&g) {
            return Err(format!("{name}: enumeration disagrees with brute force"));
        }
        graphs += 1;
    }
    for degree in 1..=10 {
        let field = FiniteField::new(degree).map_err(|e| e.to_string())?;
        for a in field.elements() {
            let r = field.sqrt(a);
            if field.mul(r, r) != a {
                return Err(format!("sqrt wrong in GF(2^{degree})"));
            }
        }
        let q = field.group_order();
        for n in (1..=q.min(100)).filter(|n| n % 2 == 1 && q % n == 0) {
            let z = field.root_of_unity(n).map_err(|e| e.to_string())?;
            let mut x = z;
            let mut k = 1;
            while x != FieldElement::ONE {
                x = field.mul(x, z);
                k += 1;
            }
            if k != n {
                return Err(format!("root of unity of order {n} in GF(2^{degree}) has order {k}"));
            }
        }
    }
    let vals = [-2i64, -1, 0, 1, 2];
    let mut matrices = 0;
    for code in 0..vals.len().pow(6) {
        let mut c = code;
        let mut e = [0i64; 6];
        for slot in &mut e {
            *slot = vals[c % 5];
            c /= 5;
        }
        let m = vec![vec![e[0], e[1], e[2]], vec![e[1], e[3], e[4]], vec![e[2], e[4], e[5]]];
        let s = lattice::signature(&m).map_err(|e| e.to_string())?;
        if (s.positive, s.negative, s.zero) != inertia_by_descartes(&m) {
            return Err(format!("inertia of {m:?}"));
        }
        matrices += 1;
    }
    Ok(format!("{graphs} graphs, GF(2^1..10), {matrices} 3x3 matrices"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "vinberg suite", vinberg_suite),
        (2, "negative controls", negative_controls),
        (3, "symmetry suite", symmetry_suite),
        (4, "extremality suite", extremality_suite),
        (5, "blow-up tables", blowup_tables),
        (6, "conductrix suite", conductrix_suite),
        (7, "derivation suite", derivation_suite),
        (8, "automorphism suite", automorphism_suite),
        (9, "oracle equivalence", oracle_equivalence),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        match (&outcome, known) {
            (Ok(detail), None) => println!("PASS {id} {name} ({secs:.2} s): {detail}"),
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("PASS {id} {name} ({secs:.2} s): {detail} [listed as a known failure; update the list]");
            }
            (Err(detail), Some(why)) => println!("FAIL {id} {name} ({secs:.2} s): {detail} [known: {why}]"),
            (Err(detail), None) => {
                unexpected += 1;
                println!("FAIL {id} {name} ({secs:.2} s): {detail}");
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
