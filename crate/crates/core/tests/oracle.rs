mod common;

use std::fs::File;
use std::io::BufReader;

use common::scan::{check_maxprob, check_pool, TAUS};
use common::{lexicon, load_conllu};
use phl_core::composer::read_jsonl;
use phl_core::pool::PremisePool;
use phl_core::pseudo::{maxprob_filter, Prediction};

#[test]
fn pool_queries_match_linear_scan() {
    let sentences = load_conllu("captions/pool1000.conllu");
    assert!(sentences.len() <= 1000);
    let lex = lexicon("captions/captions.lexicon.tsv");
    let pool = PremisePool::build(sentences.clone()).unwrap();
    let mut queries = load_conllu("captions/captions100.conllu");
    queries.extend(sentences.iter().step_by(7).cloned());
    let hits = check_pool(&sentences, &pool, &queries, &lex).unwrap();
    // The fixture must exercise every query.
    assert!(hits.iter().all(|&n| n > 0), "{hits:?}");
    for q in &queries {
        let all = pool.irrelevant_candidates(q);
        let sampled = pool.irrelevant_sentences(q, 3, 13);
        assert!(sampled.len() <= 3 && sampled.iter().all(|id| all.contains(id)));
        assert_eq!(sampled, pool.irrelevant_sentences(q, 3, 13));
    }
}

#[test]
fn golden_pool_where_everyone_shares_a_subject() {
    let golden = common::by_id(load_conllu("golden/golden.conllu"));
    let s = &golden["g10"];
    let others: Vec<_> = ["g10", "g12", "g13"].iter().map(|id| golden[*id].clone()).collect();
    let pool = PremisePool::build(others).unwrap();
    assert!(pool.irrelevant_candidates(s).is_empty());
    assert!(pool.irrelevant_sentences(s, 3, 13).is_empty());
    assert!(pool.irrelevant_sentences(&golden["g20"], 0, 13).is_empty());
}

fn predictions() -> Vec<Prediction<f64>> {
    let file = File::open(common::fixture("captions/preds50.jsonl")).unwrap();
    read_jsonl(BufReader::new(file)).unwrap()
}

#[test]
fn maxprob_matches_scan_and_nests() {
    let rows = predictions();
    assert_eq!(rows.len(), 50);
    check_maxprob(&rows).unwrap();
    for tau in TAUS {
        let (kept, report) = maxprob_filter(&rows, tau).unwrap();
        assert_eq!(report.input, 50);
        assert_eq!(report.selected.total(), kept.len());
        assert!(kept.iter().all(|t| t.transform == "pseudo"));
    }
    assert_eq!(maxprob_filter(&rows, 0.0).unwrap().0.len(), 50);
    let at_one = maxprob_filter(&rows, 1.0).unwrap().0.len();
    assert!(at_one > 0 && at_one < 50);
}

#[test]
fn malformed_row_is_reported_by_position() {
    let mut rows = predictions();
    rows[7].probs = [0.7, 0.7, 0.1];
    let (at, _) = maxprob_filter(&rows, 0.5).unwrap_err();
    assert_eq!(at, 7);
}
