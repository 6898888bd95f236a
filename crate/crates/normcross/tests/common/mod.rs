#![allow(dead_code)]

pub mod alexander;
pub mod flip_graph;
pub mod hilbert_oracle;

use std::path::PathBuf;

use normcross::triangulation::Triangulation;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub isosig: String,
    pub meridian_edge: usize,
    pub file: String,
}

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

pub fn manifest() -> Vec<Fixture> {
    let text = std::fs::read_to_string(fixture_dir().join("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn fixture(name: &str) -> Fixture {
    manifest().into_iter().find(|f| f.name == name).unwrap()
}

pub fn load(name: &str) -> (Triangulation, usize) {
    let f = fixture(name);
    let text = std::fs::read_to_string(fixture_dir().join(&f.file)).unwrap();
    (Triangulation::from_json(&text).unwrap(), f.meridian_edge)
}
