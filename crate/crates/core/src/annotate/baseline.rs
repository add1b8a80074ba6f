use std::marker::PhantomData;

use ndarray::{Array1, Array2};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AnnotateError, Label};
use crate::embed::SkipGramModel;

#[derive(Debug, Clone)]
pub struct BaselineConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            epochs: 200,
            learning_rate: 0.5,
            seed: 17,
        }
    }
}

/// Multinomial logistic regression over averaged word embeddings.
/// Weights start at zero, so the initial cross-entropy is exactly ln C.
#[derive(Debug, Clone)]
pub struct BaselineClassifier<L: Label> {
    weights: Array2<f64>, // C×L
    bias: Array1<f64>,    // C
    _labels: PhantomData<L>,
}

/// One classification decision with its score simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<L: Label> {
    pub label: L,
    pub scores: Vec<f64>,
    /// No in-vocabulary tokens: fallback label, uniform scores.
    pub low_confidence: bool,
}

/// Average of the input vectors of in-vocabulary tokens.
pub fn embed_average(model: &SkipGramModel, tokens: &[String]) -> Option<Array1<f64>> {
    let mut sum = Array1::<f64>::zeros(model.dim());
    let mut n = 0usize;
    for token in tokens {
        if let Some(v) = model.vector(token) {
            sum += &Array1::from_iter(v.iter().copied());
            n += 1;
        }
    }
    if n == 0 {
        None
    } else {
        Some(sum / n as f64)
    }
}

pub(crate) fn softmax(logits: &Array1<f64>) -> Array1<f64> {
    let max = logits.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let exp = logits.mapv(|z| (z - max).exp());
    let sum = exp.sum();
    exp / sum
}

/// Cross-entropy and gradients for one example; shared by training and
/// the finite-difference check.
pub(crate) fn example_loss_grads(
    weights: &Array2<f64>,
    bias: &Array1<f64>,
    features: &Array1<f64>,
    class: usize,
) -> (f64, Array2<f64>, Array1<f64>) {
    let logits = weights.dot(features) + bias;
    let probs = softmax(&logits);
    let loss = -probs[class].max(1e-300).ln();
    let mut dlogits = probs;
    dlogits[class] -= 1.0;
    let grad_w = dlogits
        .view()
        .insert_axis(ndarray::Axis(1))
        .dot(&features.view().insert_axis(ndarray::Axis(0)));
    (loss, grad_w, dlogits)
}

/// Train by per-example SGD with manually derived gradients. Documents
/// without in-vocabulary tokens are skipped with a warning.
pub fn train_baseline<L: Label>(
    documents: &[(Vec<String>, L)],
    model: &SkipGramModel,
    config: &BaselineConfig,
) -> Result<(BaselineClassifier<L>, Vec<f64>), AnnotateError> {
    let examples: Vec<(Array1<f64>, usize)> = documents
        .iter()
        .filter_map(|(tokens, label)| match embed_average(model, tokens) {
            Some(features) => Some((features, label.index())),
            None => {
                log::warn!("baseline training: document with no in-vocabulary tokens skipped");
                None
            }
        })
        .collect();
    if examples.is_empty() {
        return Err(AnnotateError::EmptyTrainingSet);
    }

    let classes = L::ALL.len();
    let dim = model.dim();
    let mut classifier = BaselineClassifier {
        weights: Array2::zeros((classes, dim)),
        bias: Array1::zeros(classes),
        _labels: PhantomData,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut epoch_losses = Vec::with_capacity(config.epochs);
    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        let mut total = 0.0;
        for &i in &order {
            let (features, class) = &examples[i];
            let (loss, grad_w, grad_b) =
                example_loss_grads(&classifier.weights, &classifier.bias, features, *class);
            classifier.weights.scaled_add(-config.learning_rate, &grad_w);
            classifier.bias.scaled_add(-config.learning_rate, &grad_b);
            total += loss;
        }
        epoch_losses.push(total / examples.len() as f64);
    }
    Ok((classifier, epoch_losses))
}

impl<L: Label> BaselineClassifier<L> {
    /// Mean cross-entropy without updating, used to probe the initial loss.
    pub fn mean_loss(&self, documents: &[(Vec<String>, L)], model: &SkipGramModel) -> f64 {
        let mut total = 0.0;
        let mut n = 0usize;
        for (tokens, label) in documents {
            if let Some(features) = embed_average(model, tokens) {
                let (loss, _, _) =
                    example_loss_grads(&self.weights, &self.bias, &features, label.index());
                total += loss;
                n += 1;
            }
        }
        total / n.max(1) as f64
    }

    /// Zero-parameter classifier, useful as the untrained reference.
    pub fn untrained(dim: usize) -> Self {
        BaselineClassifier {
            weights: Array2::zeros((L::ALL.len(), dim)),
            bias: Array1::zeros(L::ALL.len()),
            _labels: PhantomData,
        }
    }

    /// Label = argmax of softmax scores; exact ties resolve to the first
    /// label in the fixed enum order.
    pub fn classify(&self, model: &SkipGramModel, tokens: &[String]) -> Classification<L> {
        let Some(features) = embed_average(model, tokens) else {
            let uniform = 1.0 / L::ALL.len() as f64;
            return Classification {
                label: L::FALLBACK,
                scores: vec![uniform; L::ALL.len()],
                low_confidence: true,
            };
        };
        let probs = softmax(&(self.weights.dot(&features) + &self.bias));
        let mut best = 0usize;
        for (i, &p) in probs.iter().enumerate() {
            if p > probs[best] {
                best = i;
            }
        }
        Classification {
            label: L::ALL[best],
            scores: probs.to_vec(),
            low_confidence: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::SentimentLabel;
    use crate::embed::{train_skipgram, SkipGramConfig};

    /// Tiny corpus with three disjoint vocabularies, one per class; the
    /// averaged embeddings are linearly separable after skip-gram training.
    fn separable() -> (SkipGramModel, Vec<(Vec<String>, SentimentLabel)>) {
        let mut sentences = Vec::new();
        for _ in 0..60 {
            sentences.push(vec!["bad".to_string(), "awful".to_string()]);
            sentences.push(vec!["meh".to_string(), "plain".to_string()]);
            sentences.push(vec!["good".to_string(), "great".to_string()]);
        }
        let config = SkipGramConfig {
            dim: 8,
            epochs: 3,
            ..SkipGramConfig::default()
        };
        let model = train_skipgram(&sentences, &config).unwrap().model;
        let docs = vec![
            (vec!["bad".into(), "awful".into()], SentimentLabel::Negative),
            (vec!["awful".into()], SentimentLabel::Negative),
            (vec!["meh".into(), "plain".into()], SentimentLabel::Neutral),
            (vec!["plain".into()], SentimentLabel::Neutral),
            (vec!["good".into(), "great".into()], SentimentLabel::Positive),
            (vec!["great".into()], SentimentLabel::Positive),
        ];
        (model, docs)
    }

    #[test]
    fn zero_epochs_keeps_loss_at_ln_c() {
        let (model, docs) = separable();
        let untrained = BaselineClassifier::<SentimentLabel>::untrained(model.dim());
        let loss = untrained.mean_loss(&docs, &model);
        assert!((loss - (3.0f64).ln()).abs() < 0.01, "loss {loss}");
    }

    #[test]
    fn separable_fixture_reaches_full_training_accuracy() {
        let (model, docs) = separable();
        let config = BaselineConfig {
            epochs: 200,
            ..BaselineConfig::default()
        };
        let (clf, losses) = train_baseline(&docs, &model, &config).unwrap();
        let correct = docs
            .iter()
            .filter(|(tokens, label)| clf.classify(&model, tokens).label == *label)
            .count();
        assert_eq!(correct, docs.len());
        assert!(losses.last().unwrap() < &losses[0]);
    }

    #[test]
    fn cross_entropy_decreases_on_separable_fixture() {
        let (model, docs) = separable();
        let (_, losses) = train_baseline(&docs, &model, &BaselineConfig::default()).unwrap();
        let non_decreasing = losses.windows(2).filter(|w| w[1] >= w[0]).count();
        assert!(non_decreasing <= losses.len() / 10);
    }

    /// Analytic gradients for a 3-class, 4-dimensional example match
    /// central finite differences to better than 1e-5 relative error.
    #[test]
    fn gradient_matches_finite_differences() {
        let weights = Array2::from_shape_fn((3, 4), |(i, j)| 0.1 * (i as f64) - 0.07 * (j as f64));
        let bias = Array1::from_vec(vec![0.05, -0.02, 0.01]);
        let features = Array1::from_vec(vec![0.3, -0.8, 0.5, 0.9]);
        let class = 1usize;
        let (_, grad_w, grad_b) = example_loss_grads(&weights, &bias, &features, class);

        let h = 1e-6;
        let mut max_rel = 0.0f64;
        for i in 0..3 {
            for j in 0..4 {
                let mut wp = weights.clone();
                wp[(i, j)] += h;
                let mut wm = weights.clone();
                wm[(i, j)] -= h;
                let (lp, _, _) = example_loss_grads(&wp, &bias, &features, class);
                let (lm, _, _) = example_loss_grads(&wm, &bias, &features, class);
                let numeric = (lp - lm) / (2.0 * h);
                let analytic = grad_w[(i, j)];
                let rel = (numeric - analytic).abs() / analytic.abs().max(1e-8);
                max_rel = max_rel.max(rel);
            }
        }
        for i in 0..3 {
            let mut bp = bias.clone();
            bp[i] += h;
            let mut bm = bias.clone();
            bm[i] -= h;
            let (lp, _, _) = example_loss_grads(&weights, &bp, &features, class);
            let (lm, _, _) = example_loss_grads(&weights, &bm, &features, class);
            let rel = ((lp - lm) / (2.0 * h) - grad_b[i]).abs() / grad_b[i].abs().max(1e-8);
            max_rel = max_rel.max(rel);
        }
        assert!(max_rel < 1e-5, "max relative error {max_rel}");
    }

    #[test]
    fn argmax_and_tie_rules() {
        let (model, _) = separable();
        let mut clf = BaselineClassifier::<SentimentLabel>::untrained(model.dim());
        // zero weights give an exact three-way tie: first label in order
        let c = clf.classify(&model, &["bad".to_string()]);
        assert_eq!(c.label, SentimentLabel::Negative);
        assert!(!c.low_confidence);
        // out-of-vocabulary input: fallback label, uniform scores, flagged
        let c = clf.classify(&model, &["zzz".to_string()]);
        assert_eq!(c.label, SentimentLabel::Neutral);
        assert!(c.low_confidence);
        assert!(c.scores.iter().all(|s| (s - 1.0 / 3.0).abs() < 1e-12));
        // score simplex
        clf.bias[2] = 3.0;
        let c = clf.classify(&model, &["bad".to_string()]);
        assert_eq!(c.label, SentimentLabel::Positive);
        assert!((c.scores.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}
