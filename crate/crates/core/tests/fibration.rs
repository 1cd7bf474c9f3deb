use enriques_core::fibration::{
    conductrix_lookup, conductrix_table, enumerate_blowup_rows, is_extremal, singular_vs_supersingular,
    BlowupRow, CoverType, FiberConfiguration, Sing, LANG_LIST, TYPE_FIBRATIONS,
};

fn config(s: &str) -> FiberConfiguration {
    FiberConfiguration::parse(s).unwrap()
}

#[test]
fn every_listed_type_fibration_is_extremal() {
    for (ty, cover, configs) in TYPE_FIBRATIONS {
        for c in *configs {
            assert!(is_extremal(&config(c)).unwrap(), "{ty} {cover}: {c}");
        }
    }
}

#[test]
fn small_star_fibrations_are_not_extremal() {
    assert!(!is_extremal(&config("(I2*) elliptic")).unwrap());
    assert!(!is_extremal(&config("(I0*) elliptic")).unwrap());
}

#[test]
fn extremal_lists_are_rank_eight() {
    for c in LANG_LIST {
        assert_eq!(config(c).rank(), 8, "{c}");
    }
}

#[test]
fn multiplicity_flags_do_not_change_extremality() {
    assert_eq!(is_extremal(&config("(2III*, III) quasi-elliptic")), is_extremal(&config("(III*, III) quasi-elliptic")));
    assert!(is_extremal(&config("(I8, 2III)")).unwrap());
}

#[test]
fn overfull_configuration_is_an_error() {
    assert!(is_extremal(&config("(II*, I4)")).is_err());
}

fn row(sing: Sing, r: u32, m: Option<u32>, s: u32, ac: i32, ctilde2: i32, pa_tilde: i32) -> BlowupRow {
    BlowupRow { sing, r, m, s, ac, ctilde2, pa_tilde }
}

#[test]
fn rational_curve_rows() {
    use Sing::NotApplicable as NA;
    let mut expected = vec![
        row(NA, 0, None, 1, 1, -1, 0),
        row(NA, 0, None, 2, -1, -4, 0),
        row(NA, 2, Some(1), 1, 0, -2, 0),
        row(NA, 4, Some(1), 1, -1, -3, 0),
        row(NA, 6, Some(1), 1, -2, -4, 0),
        row(NA, 1, Some(1), 2, -2, -6, 0),
    ];
    expected.sort();
    assert_eq!(enumerate_blowup_rows(0, -2), expected);
}

#[test]
fn genus_one_curve_rows() {
    use Sing::{Cuspidal as C, Nodal as N, Smooth as S};
    let mut expected = vec![
        row(S, 0, None, 1, 0, 0, 1),
        row(S, 0, None, 2, 0, 0, 1),
        row(N, 1, Some(2), 1, 0, -2, 0),
        row(C, 0, None, 1, 0, 0, 1),
        row(C, 0, None, 2, 0, 0, 1),
        row(C, 1, Some(2), 1, 0, -2, 0),
        row(C, 4, Some(1), 1, 0, -2, 0),
        row(C, 2, Some(1), 1, 1, -1, 0),
        row(C, 0, None, 1, 2, 0, 0),
    ];
    expected.sort();
    assert_eq!(enumerate_blowup_rows(1, 0), expected);
}

#[test]
fn rows_satisfy_both_formulas() {
    for (pa, c2, ac_min) in [(0u32, -2i32, -2), (1, 0, 0)] {
        for r in enumerate_blowup_rows(pa, ac_min) {
            let m = r.m.unwrap_or(0) as i32;
            let s = r.s as i32;
            assert_eq!(2 * r.ctilde2, (c2 - m * m * r.r as i32) * s * s, "{r}");
            assert_eq!(2 * r.pa_tilde - 2, r.ctilde2 - s * r.ac, "{r}");
        }
    }
}

#[test]
fn every_nonempty_conductrix_has_square_minus_two() {
    let table = conductrix_table();
    assert_eq!(table.len(), 31);
    for rec in table.iter().filter(|r| !r.is_empty()) {
        assert_eq!(rec.self_pairing(), -2, "{rec}");
    }
}

#[test]
fn conductrix_edges_form_trees() {
    for rec in conductrix_table().iter().filter(|r| !r.is_empty()) {
        assert_eq!(rec.edges.len() + 1, rec.components.len(), "{rec}");
    }
}

#[test]
fn singularity_column_is_verbatim() {
    let cases = [
        ("(I4*) elliptic", "4A1"),
        ("(II*) elliptic", "D4"),
        ("(2III, I8) elliptic", "12A1"),
        ("(III, I8) elliptic", "D4, 8A1"),
        ("(2I1*, I4) elliptic", "4A1"),
        ("(IV, 2IV*) elliptic", "D4"),
        ("(IV, I2, I6) elliptic", "D4, 8A1"),
        ("(I3, I3, I3, I3) elliptic", "12A1"),
        ("(2II*) quasi-elliptic", "4A1 or D4"),
        ("(2I0*, 2I0*) quasi-elliptic", "4A1"),
        ("(8xIII) quasi-elliptic", "4A1 or D4"),
    ];
    for (c, sing) in cases {
        assert_eq!(conductrix_lookup(&config(c)).unwrap().singularities.to_string(), sing, "{c}");
    }
}

#[test]
fn empty_conductrix_rows() {
    let rec = conductrix_lookup(&config("(2III, I8) elliptic")).unwrap();
    assert!(rec.is_empty());
    let count = conductrix_table().iter().filter(|r| r.is_empty()).count();
    assert_eq!(count, 7);
}

#[test]
fn unknown_configuration_lookup_fails() {
    assert!(conductrix_lookup(&config("(I2*) elliptic")).is_err());
}

#[test]
fn double_fibres_decide_cover_type() {
    let qe = config("(2I0*, 2I0*) quasi-elliptic");
    assert_eq!(singular_vs_supersingular(&qe, 2), CoverType::Classical);
    assert_eq!(singular_vs_supersingular(&qe, 1), CoverType::Inconsistent);
    let one = config("(2II*) quasi-elliptic");
    assert_eq!(singular_vs_supersingular(&one, 1), CoverType::SupersingularCompatible);
    assert_eq!(singular_vs_supersingular(&config("(II*) elliptic"), 1), CoverType::Inconsistent);
}

#[test]
fn parse_round_trips_through_display() {
    for c in ["(2I4*, I1) elliptic", "(I0*, 4xIII) quasi-elliptic", "(I9, I1, I1, I1)"] {
        let parsed = config(c);
        assert_eq!(config(&parsed.to_string()), parsed);
    }
    assert!(FiberConfiguration::parse("(I2**)").is_err());
    assert!(FiberConfiguration::parse("I4*").is_err());
}
