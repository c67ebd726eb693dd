//! Golden tests over the shipped case files: every file in `cases/`
//! parses to exactly the compiled-in model, so the parser is exercised
//! by the same fixtures the library tests run on.

use gmcr_core::cases::{load_case, CaseId};
use gmcr_core::model::DmId;
use gmcr_core::TruthValue;
use gmcr_cli::{parse_model, serialize_model};

fn shipped(name: &str) -> String {
    let path = format!("{}/../../cases/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn every_shipped_file_parses_to_its_compiled_case() {
    for id in CaseId::ALL {
        let text = shipped(&format!("{}.gmcr", id.name()));
        let parsed = parse_model(&text).unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(parsed, load_case(id), "{id}");
        assert!(parsed.validate().is_empty(), "{id}");
    }
}

#[test]
fn shipped_files_round_trip_through_the_serializer() {
    for id in CaseId::ALL {
        let text = shipped(&format!("{}.gmcr", id.name()));
        let parsed = parse_model(&text).unwrap();
        let reparsed = parse_model(&serialize_model(&parsed)).unwrap();
        assert_eq!(reparsed, parsed, "{id}");
    }
}

#[test]
fn elmira_import_file_yields_the_four_valued_abandonment_state() {
    let model = parse_model(&shipped("elmira-binary.gmcr")).unwrap();
    use TruthValue::{Both, True};
    assert_eq!(
        model.space.states()[8].assignment,
        vec![Both, Both, Both, True, Both]
    );
    // Reachability rows in the file match the compiled arcs.
    let reach = gmcr_core::reach::reachable(&model, DmId(2), gmcr_core::StateId(1)).unwrap();
    assert_eq!(
        reach,
        [3, 9].map(gmcr_core::StateId).into_iter().collect()
    );
}

#[test]
fn shipped_mapping_file_matches_the_comparison_mapping() {
    let mapping = gmcr_cli::format::parse_mapping(&shipped("pd.map")).unwrap();
    let expected: Vec<(usize, usize)> = vec![(1, 1), (2, 3), (3, 2), (4, 4)];
    assert_eq!(mapping.len(), expected.len());
    for (a, b) in expected {
        assert_eq!(mapping[&gmcr_core::StateId(a)], gmcr_core::StateId(b));
    }
}
