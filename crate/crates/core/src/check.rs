//! Bounded language comparison of two models.

use rayon::prelude::*;

use crate::automata::{words_up_to, Letter};
use crate::error::Result;
use crate::format::Model;
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Both models agree on every word up to this length.
    EqualUpTo(usize),
    /// The length-lexicographically smallest word on which they differ.
    Counterexample {
        word: Vec<Letter>,
        left: bool,
        right: bool,
    },
}

/// Compares membership on all words over the union of both alphabets, in
/// length-lexicographic order. Words are evaluated in parallel; the result
/// does not depend on scheduling.
pub fn crosscheck(left: &Model, right: &Model, max_len: usize, limits: &Limits) -> Result<Verdict> {
    let mut alphabet = left.alphabet();
    alphabet.extend(right.alphabet());
    alphabet.sort_unstable();
    alphabet.dedup();
    let words = words_up_to(&alphabet, max_len);
    compare_words(left, right, &words, limits).map(|c| c.unwrap_or(Verdict::EqualUpTo(max_len)))
}

/// The first word of `words` (in the given order) on which the models
/// differ, if any.
pub fn compare_words(
    left: &Model,
    right: &Model,
    words: &[Vec<Letter>],
    limits: &Limits,
) -> Result<Option<Verdict>> {
    let verdicts: Vec<(bool, bool)> = words
        .par_iter()
        .map(|w| Ok((left.accepts(w, limits)?, right.accepts(w, limits)?)))
        .collect::<Result<_>>()?;
    Ok(words
        .iter()
        .zip(verdicts)
        .find(|(_, (l, r))| l != r)
        .map(|(w, (left, right))| Verdict::Counterexample {
            word: w.clone(),
            left,
            right,
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::fixtures::anbn_pa;
    use crate::models::Pa;
    use crate::semilinear::SemilinearSet;

    #[test]
    fn identical_models_are_equal() {
        let m = Model::Pa(anbn_pa());
        assert_eq!(
            crosscheck(&m, &m, 6, &Limits::default()).unwrap(),
            Verdict::EqualUpTo(6)
        );
    }

    #[test]
    fn perturbed_constraint_gives_smallest_counterexample() {
        let pa = anbn_pa();
        let shifted = Pa::new(
            pa.automaton().clone(),
            2,
            pa.vectors().to_vec(),
            SemilinearSet::from_points(2, [vec![0, 0], vec![2, 2]]).unwrap(),
        )
        .unwrap();
        let v = crosscheck(&Model::Pa(pa), &Model::Pa(shifted), 6, &Limits::default()).unwrap();
        assert_eq!(
            v,
            Verdict::Counterexample {
                word: vec!['a', 'b'],
                left: true,
                right: false
            }
        );
    }
}
