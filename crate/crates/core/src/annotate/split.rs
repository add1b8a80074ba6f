use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AnnotateError, Label};

/// Index partitions into the original slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

/// Stratified split preserving per-class proportions within rounding.
///
/// Each class is shuffled with the seeded generator and allocated by
/// largest remainder, so partitions are disjoint, exhaustive, and
/// reproducible. Classes with fewer than 3 examples are fatal.
pub fn stratified_split<L: Label>(
    labels: &[L],
    ratios: (f64, f64, f64),
    seed: u64,
) -> Result<Split, AnnotateError> {
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        by_class.entry(label.index()).or_default().push(i);
    }
    for (class, members) in &by_class {
        if members.len() < 3 {
            return Err(AnnotateError::ClassTooSmall(
                L::ALL[*class].as_str().to_string(),
            ));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut split = Split {
        train: Vec::new(),
        validation: Vec::new(),
        test: Vec::new(),
    };
    for members in by_class.values() {
        let mut members = members.clone();
        members.shuffle(&mut rng);
        let counts = largest_remainder(members.len(), ratios);
        let (train, rest) = members.split_at(counts[0]);
        let (validation, test) = rest.split_at(counts[1]);
        split.train.extend_from_slice(train);
        split.validation.extend_from_slice(validation);
        split.test.extend_from_slice(test);
    }
    split.train.sort_unstable();
    split.validation.sort_unstable();
    split.test.sort_unstable();
    Ok(split)
}

/// Integer allocation of `n` items to three ratio buckets: floors first,
/// remainders to the largest fractional parts, ties broken in bucket
/// order (train, validation, test).
pub(crate) fn largest_remainder(n: usize, ratios: (f64, f64, f64)) -> [usize; 3] {
    let targets = [ratios.0, ratios.1, ratios.2].map(|r| r * n as f64);
    let mut counts = targets.map(|t| t.floor() as usize);
    let mut leftover = n - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| {
        let fa = targets[a] - targets[a].floor();
        let fb = targets[b] - targets[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for bucket in order {
        if leftover == 0 {
            break;
        }
        counts[bucket] += 1;
        leftover -= 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::HateLabel;

    fn labels(counts: [usize; 3]) -> Vec<HateLabel> {
        let mut out = Vec::new();
        for (i, &n) in counts.iter().enumerate() {
            out.extend(std::iter::repeat(HateLabel::ALL[i]).take(n));
        }
        out
    }

    fn class_counts(labels: &[HateLabel], indices: &[usize]) -> [usize; 3] {
        let mut c = [0usize; 3];
        for &i in indices {
            c[labels[i].index()] += 1;
        }
        c
    }

    #[test]
    fn balanced_thirty_splits_exactly() {
        let l = labels([10, 10, 10]);
        let s = stratified_split(&l, (0.8, 0.1, 0.1), 7).unwrap();
        assert_eq!(class_counts(&l, &s.train), [8, 8, 8]);
        assert_eq!(class_counts(&l, &s.validation), [1, 1, 1]);
        assert_eq!(class_counts(&l, &s.test), [1, 1, 1]);
    }

    /// Class sizes shaped like the hate-speech benchmark: the test
    /// partition lands within one example of 782 / 548 / 594 per class.
    #[test]
    fn benchmark_sized_split_matches_published_test_row() {
        let l = labels([5935, 5480, 7813]); // hate, offensive, normal
        let s = stratified_split(&l, (0.8, 0.1, 0.1), 13).unwrap();
        let test = class_counts(&l, &s.test);
        let expected = [594usize, 548, 782];
        for (got, want) in test.iter().zip(expected) {
            assert!(
                got.abs_diff(want) <= 1,
                "test counts {test:?} vs published {expected:?}"
            );
        }
        assert_eq!(
            s.train.len() + s.validation.len() + s.test.len(),
            l.len(),
            "partitions must be exhaustive"
        );
    }

    #[test]
    fn same_seed_reproduces_partitions() {
        let l = labels([40, 25, 35]);
        let a = stratified_split(&l, (0.8, 0.1, 0.1), 99).unwrap();
        let b = stratified_split(&l, (0.8, 0.1, 0.1), 99).unwrap();
        assert_eq!(a, b);
        let c = stratified_split(&l, (0.8, 0.1, 0.1), 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn partitions_are_disjoint() {
        let l = labels([9, 6, 12]);
        let s = stratified_split(&l, (0.8, 0.1, 0.1), 5).unwrap();
        let mut all: Vec<usize> = s
            .train
            .iter()
            .chain(&s.validation)
            .chain(&s.test)
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), l.len());
    }

    #[test]
    fn tiny_class_is_fatal() {
        let l = labels([2, 5, 5]);
        assert!(matches!(
            stratified_split(&l, (0.8, 0.1, 0.1), 1),
            Err(AnnotateError::ClassTooSmall(c)) if c == "hate"
        ));
    }
}
