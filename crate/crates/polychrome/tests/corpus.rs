//! The checked-in `corpus/` directory is a set of generator snapshots, not
//! hand-maintained data. These tests pin that down: the files are exactly
//! what the preset generators produce under the recorded parameters, and
//! every instance actually runs.

use std::collections::BTreeSet;
use std::path::PathBuf;

use polychrome::experiment::corpus::{build_preset, preset, PRESETS, SNAPSHOTS};
use polychrome::experiment::to_json_line;
use polychrome::geometry::{enumerate_hyperedges, PointSet, RangeFamily};
use polychrome::shallow::{
    bl_tl_shallow_hitting_with, bottomless_shallow_hitting_with, unit_height_shallow_hitting_with,
    SweepOptions,
};
use polychrome::strips::strips_shallow_hitting;
use polychrome::verify::{oracle_edges, same_edge_sets, ORACLE_MAX_N};

const INSTRUMENTED: SweepOptions = SweepOptions { instrument: true };

fn corpus_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus"))
}

fn load(name: &str) -> PointSet {
    let path = corpus_dir().join(format!("{name}.json"));
    let data = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    serde_json::from_str(&data).unwrap_or_else(|e| panic!("parsing {}: {e}", path.display()))
}

/// Every corpus file regenerates byte for byte from its recorded
/// `(preset, n, seed)`, and nothing undocumented sits in the directory.
#[test]
fn corpus_files_match_the_pinned_generators() {
    let on_disk: BTreeSet<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    let recorded: BTreeSet<String> =
        SNAPSHOTS.iter().map(|&(name, _, _)| name.to_string()).collect();
    assert_eq!(on_disk, recorded, "corpus directory and snapshot manifest disagree");
    assert_eq!(SNAPSHOTS.len(), PRESETS.len(), "every preset has exactly one snapshot");

    for (name, n, seed) in SNAPSHOTS {
        let built = build_preset(name, n, seed).unwrap();
        assert_eq!(built.dim(), preset(name).unwrap().dim, "{name}");
        let shipped = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(
            to_json_line(&built).unwrap(),
            shipped,
            "{name}.json drifted from build_preset({name:?}, {n}, {seed})"
        );
    }
}

/// The planar instances stay clear of the unit-height degeneracies (integer
/// y-coordinates, exact unit y-gaps), so every family can run on them.
#[test]
fn planar_corpus_instances_are_nondegenerate() {
    for p in PRESETS.iter().filter(|p| p.dim == 2) {
        load(p.name)
            .check_unit_height_preconditions()
            .unwrap_or_else(|e| panic!("{}: {e}", p.name));
    }
}

/// The `tiny` instance is small enough for the definition-direct oracle;
/// enumeration agrees with it on every family and edge size.
#[test]
fn tiny_instance_agrees_with_the_oracle() {
    let ps = load("tiny");
    assert!(ps.len() <= ORACLE_MAX_N);
    for family in RangeFamily::ALL {
        for m in 1..=4usize {
            let (h, _) = enumerate_hyperedges(&ps, family, m).unwrap();
            let oracle = oracle_edges(&ps, family, m).unwrap();
            assert!(same_edge_sets(&h, &oracle), "{family} m={m}");
        }
    }
}

/// Each preset's stressing family runs instrumented on its snapshot and the
/// result verifies by enumeration within the claimed depth.
#[test]
fn every_corpus_instance_runs_its_target_family() {
    for p in PRESETS {
        let ps = load(p.name);
        let mut rep = match p.family {
            RangeFamily::Bottomless | RangeFamily::Topless => {
                bottomless_shallow_hitting_with(&ps, 17, INSTRUMENTED).unwrap()
            }
            RangeFamily::BottomlessOrTopless => {
                bl_tl_shallow_hitting_with(&ps, 17, INSTRUMENTED).unwrap()
            }
            RangeFamily::UnitHeight => {
                unit_height_shallow_hitting_with(&ps, 17, INSTRUMENTED).unwrap()
            }
            RangeFamily::StripsAxisAligned => strips_shallow_hitting(&ps, 8).unwrap(),
        };
        let checks = rep.verify_against(&ps).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{}: {checks:?}", p.name);
        assert!(rep.guarantee_respected(), "{}", p.name);
    }
}
