//! Recognising many triangulations at once. Entries are independent, so
//! with the `parallel` feature they are spread over the rayon pool; the
//! search inside each entry stays sequential.

use crate::error::Result;
use crate::pipeline::{recognize, RecognizeOptions, Verdict};
use crate::tri::Triangulation;

/// One result per input, in input order.
pub fn recognize_sequential(inputs: &[&Triangulation], opts: &RecognizeOptions) -> Vec<Result<Verdict>> {
    inputs.iter().map(|t| recognize(t, opts)).collect()
}

/// As [`recognize_sequential`], over the current rayon pool.
#[cfg(feature = "parallel")]
pub fn recognize_parallel(inputs: &[&Triangulation], opts: &RecognizeOptions) -> Vec<Result<Verdict>> {
    use rayon::prelude::*;
    inputs.par_iter().map(|t| recognize(t, opts)).collect()
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn recognize_all(inputs: &[&Triangulation], opts: &RecognizeOptions) -> Vec<Result<Verdict>> {
    #[cfg(feature = "parallel")]
    return recognize_parallel(inputs, opts);
    #[cfg(not(feature = "parallel"))]
    return recognize_sequential(inputs, opts);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Answer;

    #[test]
    fn batch_matches_one_by_one() {
        let st = Triangulation::solid_torus();
        let inputs = [&st, &st];
        let opts = RecognizeOptions::default();
        let seq = recognize_sequential(&inputs, &opts);
        let all = recognize_all(&inputs, &opts);
        for (a, b) in seq.iter().zip(&all) {
            let (a, b) = (a.as_ref().unwrap(), b.as_ref().unwrap());
            assert_eq!(a.answer, Answer::Trivial);
            assert_eq!((a.answer, &a.certificate), (b.answer, &b.certificate));
        }
    }
}
