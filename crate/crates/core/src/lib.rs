//! Rule-based generation of labelled NLI triplets from dependency-parsed
//! sentences.
//!
//! Sentences come in as CoNLL-U ([`conllu`]), word relations as TSV
//! ([`lexicon`]). The transforms in [`transform`] turn a premise into
//! hypotheses with labels, [`composer`] assembles a dataset from them and
//! [`pseudo`] filters model predictions by confidence.

pub mod composer;
pub mod conllu;
pub mod edit;
pub mod label;
pub mod lexicon;
pub mod morph;
pub mod pool;
pub mod pseudo;
pub mod report;
pub mod rng;
pub mod syntax;
pub mod transform;

pub use composer::{generate_dataset, Corpus, DatasetStats, GenerationConfig, PhlTriplet};
pub use conllu::{parse_conllu, ParseOptions, ParsedSentence, Token};
pub use label::{Label, LabelCounts};
pub use lexicon::Lexicon;
pub use pool::PremisePool;
pub use pseudo::{FilterReport, Prediction};
pub use transform::{Resources, Transform, TransformOutcome};

/// Prediction record with double-precision probabilities.
pub type PredictionRecord = pseudo::Prediction<f64>;
/// Prediction record with single-precision probabilities.
pub type PredictionRecordF32 = pseudo::Prediction<f32>;
