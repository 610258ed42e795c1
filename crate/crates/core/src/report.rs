//! Review sheets and count tables over generated triplets.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use rand::seq::index::sample;

use crate::composer::{DatasetStats, PhlTriplet};
use crate::label::LabelCounts;
use crate::rng::keyed_rng;

/// Default sample size per transform on a review sheet.
pub const DEFAULT_SAMPLE: usize = 50;

/// Up to `n` triplets per transform tag, sampled with a stream keyed by
/// the tag. Tags come in sorted order; within a tag, input order is kept.
pub fn validation_sample(triplets: &[PhlTriplet], n: usize, seed: u64) -> Vec<&PhlTriplet> {
    let mut by_tag: BTreeMap<&str, Vec<&PhlTriplet>> = BTreeMap::new();
    for t in triplets {
        by_tag.entry(t.transform.as_str()).or_default().push(t);
    }
    let mut out = Vec::new();
    for (tag, rows) in by_tag {
        if rows.len() <= n {
            out.extend(rows);
            continue;
        }
        let mut rng = keyed_rng(seed, "validate", tag);
        let mut picked = sample(&mut rng, rows.len(), n).into_vec();
        picked.sort_unstable();
        out.extend(picked.into_iter().map(|i| rows[i]));
    }
    out
}

fn cell(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// Writes a TSV review sheet with an empty verdict column.
pub fn write_sheet<W: Write>(mut w: W, rows: &[&PhlTriplet]) -> io::Result<()> {
    writeln!(w, "premise\thypothesis\tlabel\ttransform\tverdict")?;
    for t in rows {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t",
            cell(&t.premise),
            cell(&t.hypothesis),
            t.label,
            cell(&t.transform)
        )?;
    }
    w.flush()
}

/// Transform × label counts.
pub fn label_matrix(triplets: &[PhlTriplet]) -> BTreeMap<String, LabelCounts> {
    let mut m: BTreeMap<String, LabelCounts> = BTreeMap::new();
    for t in triplets {
        m.entry(t.transform.clone()).or_default().add(t.label);
    }
    m
}

pub fn render_matrix(m: &BTreeMap<String, LabelCounts>) -> String {
    let width = m.keys().map(String::len).max().unwrap_or(0).max("transform".len());
    let mut out = format!("{:<width$}  {:>13}  {:>13}  {:>13}  {:>8}\n", "transform", "entailment", "contradiction", "neutral", "total");
    let mut totals = LabelCounts::default();
    for (tag, c) in m {
        let _ = writeln!(
            out,
            "{tag:<width$}  {:>13}  {:>13}  {:>13}  {:>8}",
            c.entailment,
            c.contradiction,
            c.neutral,
            c.total()
        );
        totals.merge(c);
    }
    let _ = writeln!(
        out,
        "{:<width$}  {:>13}  {:>13}  {:>13}  {:>8}",
        "all",
        totals.entailment,
        totals.contradiction,
        totals.neutral,
        totals.total()
    );
    out
}

/// Triplet counts per transform (rows) and source (columns), headed by
/// the number of premises per source.
pub fn render_source_table(stats: &DatasetStats) -> String {
    let sources: Vec<&String> = stats.raw_sentences.keys().collect();
    let width = stats
        .per_transform
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("raw sentences".len());
    let col = |s: &str| s.len().max(8);
    let mut out = format!("{:<width$}", "transform");
    for s in &sources {
        let _ = write!(out, "  {:>w$}", s, w = col(s));
    }
    out.push('\n');
    let _ = write!(out, "{:<width$}", "raw sentences");
    for s in &sources {
        let _ = write!(out, "  {:>w$}", stats.raw_sentences[*s], w = col(s));
    }
    out.push('\n');
    for tag in stats.per_transform.keys() {
        let _ = write!(out, "{tag:<width$}");
        for s in &sources {
            let n = stats
                .per_source
                .get(*s)
                .and_then(|m| m.get(tag))
                .copied()
                .unwrap_or(0);
            let _ = write!(out, "  {:>w$}", n, w = col(s));
        }
        out.push('\n');
    }
    out
}
