use phl_core::conllu::{parse_str, ParsedSentence};
use phl_core::pseudo::{maxprob_filter, pseudo_label, Prediction};
use phl_core::Token;
use proptest::prelude::*;

const RELS: [&str; 6] = ["nsubj", "dobj", "det", "amod", "prep", "obl:tmod"];
const UPOS: [&str; 5] = ["NOUN", "VERB", "ADJ", "DET", "ADP"];

/// Random well-formed trees: a shuffled attachment order where each token
/// hangs off one placed before it, so there is one root and no cycle.
fn sentence() -> impl Strategy<Value = ParsedSentence> {
    (1usize..12)
        .prop_flat_map(|n| {
            (
                Just((1..=n).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(any::<usize>(), n),
                prop::collection::vec(("[a-z]{1,6}", "[a-z]{1,6}", 0..5usize, 0..6usize, any::<bool>(), any::<bool>()), n),
            )
        })
        .prop_map(|(order, picks, fields)| {
            let mut heads = vec![0; order.len() + 1];
            for k in 1..order.len() {
                heads[order[k]] = order[picks[k] % k];
            }
            let tokens = fields
                .into_iter()
                .enumerate()
                .map(|(i, (form, lemma, u, r, space_after, plural))| Token {
                    index: i + 1,
                    form,
                    lemma,
                    upos: UPOS[u].into(),
                    xpos: None,
                    feats: plural.then(|| "Number=Plur".into()),
                    head: heads[i + 1],
                    deprel: if heads[i + 1] == 0 { "root".into() } else { RELS[r].into() },
                    misc: None,
                    space_after,
                })
                .collect();
            ParsedSentence::from_tokens("prop-1", tokens)
        })
}

fn probs() -> impl Strategy<Value = [f64; 3]> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("non-zero mass", |(a, b, c)| a + b + c > 1e-3)
        .prop_map(|(a, b, c)| {
            let s = a + b + c;
            [a / s, b / s, c / s]
        })
}

fn pred(p: [f64; 3]) -> Prediction<f64> {
    Prediction {
        premise: "p".into(),
        hypothesis: "h".into(),
        probs: p,
    }
}

proptest! {
    #[test]
    fn conllu_round_trip(s in sentence()) {
        let out = parse_str(&s.to_conllu(), "prop").unwrap();
        prop_assert_eq!(out.sentences.len(), 1);
        prop_assert_eq!(&out.sentences[0], &s);
    }

    #[test]
    fn subtree_nested_in_ancestor_subtrees(s in sentence()) {
        for t in &s.tokens {
            let own = s.subtree_tokens(t.index);
            prop_assert!(own.contains(&t.index));
            for a in s.ancestors(t.index) {
                let up = s.subtree_tokens(a);
                prop_assert!(own.iter().all(|i| up.contains(i)));
            }
        }
        let root = s.root().unwrap();
        prop_assert_eq!(s.subtree_tokens(root).len(), s.len());
    }

    #[test]
    fn argmax_survives_rescaling(p in probs(), c in 0.01f64..100.0) {
        let scaled = p.map(|x| x * c);
        let sum: f64 = scaled.iter().sum();
        let renorm = scaled.map(|x| x / sum);
        prop_assert_eq!(
            pseudo_label(&pred(p)).unwrap().label,
            pseudo_label(&pred(renorm)).unwrap().label
        );
    }

    #[test]
    fn filter_is_order_preserving_subset(
        rows in prop::collection::vec(("[a-zA-Z ]{0,12}", "[a-zA-Z\t ]{0,12}", probs()), 0..20),
        tau in 0.0f64..=1.0,
    ) {
        let preds: Vec<Prediction<f64>> = rows
            .into_iter()
            .map(|(premise, hypothesis, probs)| Prediction { premise, hypothesis, probs })
            .collect();
        let (kept, report) = maxprob_filter(&preds, tau).unwrap();
        prop_assert!(kept.len() <= preds.len());
        prop_assert_eq!(report.selected.total(), kept.len());
        let mut it = preds.iter();
        for t in &kept {
            let found = it.any(|p| p.premise == t.premise && p.hypothesis == t.hypothesis);
            prop_assert!(found);
        }
    }
}
