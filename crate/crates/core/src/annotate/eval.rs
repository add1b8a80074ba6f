use super::{AnnotateError, Label};

/// Accuracy, macro metrics, and the per-class confusion matrix
/// (rows = gold, columns = predicted, in the label enum order).
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub labels: Vec<&'static str>,
    pub accuracy: f64,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub confusion: Vec<Vec<usize>>,
}

/// Macro metrics as unweighted means of per-class precision, recall, and
/// F1. A class absent from the gold labels is left out of the macro mean;
/// a class present in gold but never predicted contributes zeros. Zero
/// denominators read as zero.
pub fn evaluate<L: Label>(predictions: &[L], gold: &[L]) -> Result<EvalReport, AnnotateError> {
    if predictions.len() != gold.len() {
        return Err(AnnotateError::LengthMismatch {
            predictions: predictions.len(),
            gold: gold.len(),
        });
    }
    let c = L::ALL.len();
    let mut confusion = vec![vec![0usize; c]; c];
    for (p, g) in predictions.iter().zip(gold) {
        confusion[g.index()][p.index()] += 1;
    }
    let total = gold.len();
    let correct: usize = (0..c).map(|i| confusion[i][i]).sum();
    let accuracy = if total == 0 {
        0.0
    } else {
        correct as f64 / total as f64
    };

    let mut sum_p = 0.0;
    let mut sum_r = 0.0;
    let mut sum_f = 0.0;
    let mut classes_in_gold = 0usize;
    for k in 0..c {
        let gold_count: usize = confusion[k].iter().sum();
        if gold_count == 0 {
            continue;
        }
        classes_in_gold += 1;
        let tp = confusion[k][k];
        let pred_count: usize = (0..c).map(|g| confusion[g][k]).sum();
        let precision = if pred_count == 0 {
            0.0
        } else {
            tp as f64 / pred_count as f64
        };
        let recall = tp as f64 / gold_count as f64;
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        sum_p += precision;
        sum_r += recall;
        sum_f += f1;
    }
    let denom = classes_in_gold.max(1) as f64;
    Ok(EvalReport {
        labels: L::ALL.iter().map(|l| l.as_str()).collect(),
        accuracy,
        macro_precision: sum_p / denom,
        macro_recall: sum_r / denom,
        macro_f1: sum_f / denom,
        confusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::{HateLabel, SentimentLabel};
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn perfect_predictions_score_one() {
        let gold = vec![
            SentimentLabel::Negative,
            SentimentLabel::Neutral,
            SentimentLabel::Positive,
        ];
        let r = evaluate(&gold, &gold).unwrap();
        assert_eq!(r.accuracy, 1.0);
        assert_eq!(r.macro_precision, 1.0);
        assert_eq!(r.macro_recall, 1.0);
        assert_eq!(r.macro_f1, 1.0);
    }

    #[test]
    fn constant_predictions_on_balanced_gold() {
        let mut gold = Vec::new();
        for l in SentimentLabel::ALL {
            gold.extend(std::iter::repeat(*l).take(10));
        }
        let preds = vec![SentimentLabel::Negative; 30];
        let r = evaluate(&preds, &gold).unwrap();
        assert!((r.accuracy - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.macro_recall - 1.0 / 3.0).abs() < 1e-12);
    }

    /// Hand-computed oracle for the confusion matrix
    /// [[5,1,0],[2,3,1],[0,0,8]]: accuracy 16/20; per-class
    /// P = (5/7, 3/4, 8/9), R = (5/6, 1/2, 1), F1 = (10/13, 3/5, 16/17).
    #[test]
    fn confusion_matrix_fixture_matches_hand_oracle() {
        let mut preds = Vec::new();
        let mut gold = Vec::new();
        let matrix = [[5, 1, 0], [2, 3, 1], [0, 0, 8]];
        for (g, row) in matrix.iter().enumerate() {
            for (p, &n) in row.iter().enumerate() {
                for _ in 0..n {
                    gold.push(HateLabel::ALL[g]);
                    preds.push(HateLabel::ALL[p]);
                }
            }
        }
        let r = evaluate(&preds, &gold).unwrap();
        assert_eq!(
            r.confusion,
            vec![vec![5, 1, 0], vec![2, 3, 1], vec![0, 0, 8]]
        );
        assert!((r.accuracy - 16.0 / 20.0).abs() < 1e-15);
        let p = (5.0 / 7.0 + 3.0 / 4.0 + 8.0 / 9.0) / 3.0;
        let rc = (5.0 / 6.0 + 0.5 + 1.0) / 3.0;
        let f = (10.0 / 13.0 + 3.0 / 5.0 + 16.0 / 17.0) / 3.0;
        assert!((r.macro_precision - p).abs() < 1e-15);
        assert!((r.macro_recall - rc).abs() < 1e-15);
        assert!((r.macro_f1 - f).abs() < 1e-15);
        // row sums equal per-class gold counts
        for (k, row) in r.confusion.iter().enumerate() {
            let row_sum: usize = row.iter().sum();
            let gold_count = gold.iter().filter(|g| g.index() == k).count();
            assert_eq!(row_sum, gold_count);
        }
    }

    #[test]
    fn length_mismatch_is_fatal() {
        let gold = vec![SentimentLabel::Neutral; 3];
        let preds = vec![SentimentLabel::Neutral; 2];
        assert!(matches!(
            evaluate(&preds, &gold),
            Err(AnnotateError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn order_permutation_does_not_change_the_report() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let gold: Vec<HateLabel> = (0..200)
            .map(|_| HateLabel::ALL[rng.gen_range(0..3)])
            .collect();
        let preds: Vec<HateLabel> = (0..200)
            .map(|_| HateLabel::ALL[rng.gen_range(0..3)])
            .collect();
        let base = evaluate(&preds, &gold).unwrap();
        use rand::seq::SliceRandom;
        let mut idx: Vec<usize> = (0..gold.len()).collect();
        idx.shuffle(&mut rng);
        let gold2: Vec<HateLabel> = idx.iter().map(|&i| gold[i]).collect();
        let preds2: Vec<HateLabel> = idx.iter().map(|&i| preds[i]).collect();
        assert_eq!(evaluate(&preds2, &gold2).unwrap(), base);
    }

    /// Random predictions on balanced gold land near 1/3 macro F1.
    #[test]
    fn random_macro_f1_concentrates_near_one_third() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut gold = Vec::new();
        for l in SentimentLabel::ALL {
            gold.extend(std::iter::repeat(*l).take(1000));
        }
        let preds: Vec<SentimentLabel> = (0..3000)
            .map(|_| SentimentLabel::ALL[rng.gen_range(0..3)])
            .collect();
        let r = evaluate(&preds, &gold).unwrap();
        assert!(
            (r.macro_f1 - 1.0 / 3.0).abs() <= 0.08,
            "macro F1 {} strays from 1/3",
            r.macro_f1
        );
    }
}
