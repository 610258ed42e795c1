#![allow(dead_code)]

pub mod scan;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use phl_core::conllu::{parse_conllu, ParseOptions, ParsedSentence};
use phl_core::lexicon::Lexicon;
use phl_core::transform::{ParaphraseTable, ParseCache, Resources};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn load_conllu(rel: &str) -> Vec<ParsedSentence> {
    let file = File::open(fixture(rel)).unwrap();
    parse_conllu(BufReader::new(file), &ParseOptions::strict(rel)).unwrap().sentences
}

pub fn by_id(sentences: Vec<ParsedSentence>) -> BTreeMap<String, ParsedSentence> {
    sentences.into_iter().map(|s| (s.id.clone(), s)).collect()
}

pub fn lexicon(rel: &str) -> Lexicon {
    Lexicon::load(&[fixture(rel)]).unwrap().0
}

/// Resources for one fixture directory: lexicon, paraphrases and reparse
/// cache.
pub fn resources(dir: &str, lexicon_file: &str) -> Resources {
    Resources::new(lexicon(&format!("{dir}/{lexicon_file}")))
        .with_paraphrases(ParaphraseTable::load(&fixture(&format!("{dir}/paraphrases.tsv"))).unwrap())
        .with_reparse(Box::new(ParseCache::new(load_conllu(&format!("{dir}/reparse.conllu")))))
}

/// Word and punctuation tokens, with the indefinite article normalised and
/// case folded, for multiset comparisons between premise and hypothesis.
pub fn words(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if c.is_alphanumeric() || c == '\'' {
            cur.extend(c.to_lowercase());
        } else {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                out.push(c.to_string());
            }
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    for w in &mut out {
        if w == "an" {
            *w = "a".into();
        }
    }
    out
}

/// True if every element of `small` occurs in `big` at least as often.
pub fn sub_multiset(small: &[String], big: &[String]) -> bool {
    let mut counts: BTreeMap<&str, isize> = BTreeMap::new();
    for w in big {
        *counts.entry(w).or_default() += 1;
    }
    for w in small {
        let c = counts.entry(w).or_default();
        *c -= 1;
        if *c < 0 {
            return false;
        }
    }
    true
}

/// The caption corpus as one source, with resources whose pool holds the
/// captions plus the 1000-sentence pool fixture.
pub fn caption_setup() -> (Vec<phl_core::Corpus>, Resources) {
    let captions = load_conllu("captions/captions100.conllu");
    let mut pool = captions.clone();
    pool.extend(load_conllu("captions/pool1000.conllu"));
    let res = resources("captions", "captions.lexicon.tsv")
        .with_pool(phl_core::PremisePool::build(pool).unwrap());
    let corpus = phl_core::Corpus {
        name: "captions".into(),
        sentences: captions,
    };
    (vec![corpus], res)
}
