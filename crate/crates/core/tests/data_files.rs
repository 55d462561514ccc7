//! The JSON files under `data/` describe the same objects as the built-in
//! corpus.

use std::fs;
use std::path::PathBuf;

use jetspace::corpus;
use jetspace::jets::AffineScheme;
use jetspace::zeta::{numerical_data, BlowupTower, ResolutionData};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn read(kind: &str, name: &str) -> String {
    let path = data_dir().join(kind).join(format!("{name}.json"));
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn listed(kind: &str) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(data_dir().join(kind))
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

fn sorted(names: impl IntoIterator<Item = &'static str>) -> Vec<String> {
    let mut v: Vec<String> = names.into_iter().map(String::from).collect();
    v.sort();
    v
}

#[test]
fn scheme_files_match_the_corpus() {
    assert_eq!(listed("schemes"), sorted(corpus::scheme_names()));
    for name in corpus::scheme_names() {
        assert_eq!(AffineScheme::from_json(&read("schemes", name)).unwrap(), corpus::scheme(name).unwrap(), "{name}");
    }
}

#[test]
fn resolution_files_match_the_corpus() {
    assert_eq!(listed("resolutions"), sorted(corpus::RESOLUTION_NAMES.iter().copied()));
    for name in corpus::RESOLUTION_NAMES {
        let r = ResolutionData::from_json(&read("resolutions", name)).unwrap();
        assert_eq!(r, corpus::resolution(name).unwrap(), "{name}");
    }
}

#[test]
fn tower_files_match_the_corpus() {
    assert_eq!(listed("towers"), sorted(corpus::TOWER_NAMES.iter().copied()));
    for name in corpus::TOWER_NAMES {
        let t = BlowupTower::from_json(&read("towers", name)).unwrap();
        assert_eq!(t, corpus::tower(name).unwrap(), "{name}");
    }
    let point = BlowupTower::from_json(&read("towers", "point-blowup")).unwrap();
    assert_eq!(numerical_data(&point).unwrap(), vec![(1, 3)]);
}
