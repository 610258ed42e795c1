//! Pseudo-labelling of model predictions and maxProb filtering.

use std::collections::HashSet;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::composer::{PhlTriplet, PSEUDO_TAG};
use crate::label::{Label, LabelCounts};

/// Allowed deviation of a probability vector's sum from one.
pub const SUM_TOLERANCE: f64 = 1e-4;

/// Default maxProb threshold.
pub const DEFAULT_THRESHOLD: f64 = 0.9;

/// A model's three-way prediction for a premise/hypothesis pair, with
/// probabilities in (E, C, N) order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction<F> {
    pub premise: String,
    pub hypothesis: String,
    pub probs: [F; 3],
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid probability vector {probs:?}: {reason}")]
pub struct InvalidProbabilityVector {
    pub probs: [f64; 3],
    pub reason: &'static str,
}

impl<F: Float> Prediction<F> {
    pub fn validate(&self) -> Result<(), InvalidProbabilityVector> {
        let as_f64 = self.probs.map(|p| p.to_f64().unwrap_or(f64::NAN));
        let fail = |reason| Err(InvalidProbabilityVector { probs: as_f64, reason });
        if as_f64.iter().any(|p| !p.is_finite()) {
            return fail("non-finite component");
        }
        if as_f64.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return fail("component outside [0, 1]");
        }
        if (as_f64.iter().sum::<f64>() - 1.0).abs() > SUM_TOLERANCE {
            return fail("components do not sum to 1");
        }
        Ok(())
    }

    pub fn max_prob(&self) -> F {
        self.probs.iter().copied().fold(F::neg_infinity(), F::max)
    }

    /// Argmax label; ties go to the earlier label in E, C, N order.
    pub fn argmax(&self) -> Label {
        let mut best = 0;
        for i in 1..3 {
            if self.probs[i] > self.probs[best] {
                best = i;
            }
        }
        Label::ALL[best]
    }
}

pub fn pseudo_label<F: Float>(r: &Prediction<F>) -> Result<PhlTriplet, InvalidProbabilityVector> {
    r.validate()?;
    Ok(PhlTriplet {
        premise: r.premise.clone(),
        hypothesis: r.hypothesis.clone(),
        label: r.argmax(),
        transform: PSEUDO_TAG.to_owned(),
        source_id: String::new(),
        swapped: false,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub input: usize,
    pub selected: LabelCounts,
    pub threshold: f64,
}

/// Keeps records whose maximum probability reaches `threshold`, in input
/// order, pseudo-labelled. Fails on the first invalid record with its
/// position.
pub fn maxprob_filter<F: Float>(
    records: &[Prediction<F>],
    threshold: F,
) -> Result<(Vec<PhlTriplet>, FilterReport), (usize, InvalidProbabilityVector)> {
    let mut report = FilterReport {
        input: records.len(),
        threshold: threshold.to_f64().unwrap_or(f64::NAN),
        ..FilterReport::default()
    };
    let mut kept = Vec::new();
    for (i, r) in records.iter().enumerate() {
        let t = pseudo_label(r).map_err(|e| (i, e))?;
        if r.max_prob() >= threshold {
            report.selected.add(t.label);
            kept.push(t);
        }
    }
    Ok((kept, report))
}

/// Filtered pseudo-labelled triplets followed by the generated ones that
/// do not repeat a (premise, hypothesis) pair already present.
pub fn augment_with_tp(filtered: Vec<PhlTriplet>, generated: Vec<PhlTriplet>) -> Vec<PhlTriplet> {
    let mut seen = HashSet::new();
    filtered
        .into_iter()
        .chain(generated)
        .filter(|t| seen.insert((t.premise.clone(), t.hypothesis.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(p: [f64; 3]) -> Prediction<f64> {
        Prediction {
            premise: "p".into(),
            hypothesis: "h".into(),
            probs: p,
        }
    }

    #[test]
    fn argmax_and_ties() {
        assert_eq!(rec([1.0, 0.0, 0.0]).argmax(), Label::Entailment);
        assert_eq!(rec([0.2, 0.5, 0.3]).argmax(), Label::Contradiction);
        assert_eq!(rec([0.4, 0.4, 0.2]).argmax(), Label::Entailment);
        assert_eq!(rec([0.2, 0.4, 0.4]).argmax(), Label::Contradiction);
    }

    #[test]
    fn rejects_bad_vectors() {
        assert!(pseudo_label(&rec([0.5, 0.5, 0.5])).is_err());
        assert!(pseudo_label(&rec([-0.1, 0.6, 0.5])).is_err());
        assert!(pseudo_label(&rec([f64::NAN, 0.5, 0.5])).is_err());
        assert!(pseudo_label(&rec([0.33334, 0.33333, 0.33333])).is_ok());
    }

    #[test]
    fn threshold_edges() {
        let rs = vec![rec([0.9, 0.05, 0.05]), rec([1.0, 0.0, 0.0])];
        assert_eq!(maxprob_filter(&rs, 0.0).unwrap().0.len(), 2);
        assert_eq!(maxprob_filter(&rs, 1.0).unwrap().0.len(), 1);
        let single = Prediction {
            premise: "p".into(),
            hypothesis: "h".into(),
            probs: [0.9f32, 0.05, 0.05],
        };
        assert_eq!(maxprob_filter(&[single], 0.9f32).unwrap().0.len(), 1);
    }
}
