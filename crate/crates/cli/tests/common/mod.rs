#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn phlgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phlgen"))
        .args(args)
        .env_remove("PHL_RESOURCES")
        .output()
        .expect("running phlgen")
}

pub fn ok(args: &[&str]) -> Output {
    let out = phlgen(args);
    assert!(
        out.status.success(),
        "phlgen {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs `generate` over the caption fixture into `dir/<name>.jsonl` and
/// `dir/<name>.stats.json`, with the caption and 1000-sentence pool.
pub fn generate(dir: &Path, name: &str, extra: &[&str]) -> (PathBuf, PathBuf) {
    let out = dir.join(format!("{name}.jsonl"));
    let stats = dir.join(format!("{name}.stats.json"));
    let captions = fixture("captions/captions100.conllu");
    let pool = fixture("captions/pool1000.conllu");
    let resources = fixture("captions");
    let mut args = vec![
        "generate",
        "--input",
        s(&captions),
        "--pool-input",
        s(&captions),
        s(&pool),
        "--resources",
        s(&resources),
        "--out",
        s(&out),
        "--stats",
        s(&stats),
    ];
    args.extend_from_slice(extra);
    ok(&args);
    (out, stats)
}

pub fn read_rows(path: &Path) -> Vec<serde_json::Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

pub fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Total triplets for a tag in a stats file.
pub fn tag_count(stats: &serde_json::Value, tag: &str) -> u64 {
    stats["per_transform"]
        .get(tag)
        .map(|c| ["entailment", "contradiction", "neutral"].iter().map(|l| c[l].as_u64().unwrap()).sum())
        .unwrap_or(0)
}
