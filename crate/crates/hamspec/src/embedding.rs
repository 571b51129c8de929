//! The distance-scaling injection of [q]^n into binary space.
//!
//! Each symbol is replaced by a codeword of the binary simplex code S_2(m),
//! where 2^m is the smallest power of two covering the source alphabet.
//! Distinct labels sit at distance exactly 2^m / 2 from each other, so every
//! pairwise Hamming distance scales by that same factor and the distance
//! spectrum is preserved up to scaling.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hamming::{PointSet, Word};
use crate::simplex::generate_simplex_with_budget;

#[derive(Clone, Debug)]
pub struct EmbeddingSpec {
    source_q: u32,
    target_q: u32,
    m: u32,
    block_length: u32,
    /// labels[x] = codeword of message integer x, for x in 0..source_q.
    labels: Vec<Word>,
}

impl EmbeddingSpec {
    pub fn source_q(&self) -> u32 {
        self.source_q
    }

    /// q' = 2^m, the smallest power of two >= source_q.
    pub fn target_q(&self) -> u32 {
        self.target_q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Length q' - 1 of one label block.
    pub fn block_length(&self) -> u32 {
        self.block_length
    }

    /// The uniform distance q'/2 between distinct labels.
    pub fn scale(&self) -> u32 {
        self.target_q / 2
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    /// Concatenation of the labels of x's symbols: a binary word of length
    /// n (q' - 1).
    pub fn embed_word(&self, x: &Word) -> Result<Word> {
        if x.q() != self.source_q {
            return Err(Error::AlphabetMismatch {
                left: self.source_q,
                right: x.q(),
            });
        }
        let n = x.n() as usize;
        let mut symbols = Vec::with_capacity(n * self.block_length as usize);
        for i in 0..n {
            let s = x.symbol(i) as usize;
            symbols.extend(self.labels[s].symbols());
        }
        Word::new(2, &symbols)
    }

    /// Embeds every word; injectivity makes the image the same size.
    pub fn embed_set(&self, s: &PointSet) -> Result<PointSet> {
        if s.q() != self.source_q {
            return Err(Error::AlphabetMismatch {
                left: self.source_q,
                right: s.q(),
            });
        }
        let words = s
            .words()
            .iter()
            .map(|w| self.embed_word(w))
            .collect::<Result<Vec<_>>>()?;
        let n = s.n() * self.block_length;
        let image = PointSet::new(2, n, words).map_err(|e| match e {
            Error::DuplicateWord => {
                Error::VerificationFailed("embedding collided on distinct words".into())
            }
            other => other,
        })?;
        Ok(image)
    }
}

/// Builds the labeling for a source alphabet of any size >= 2. The alphabet
/// needs no field structure; only symbol identity matters.
pub fn make_embedding(source_q: u32) -> Result<EmbeddingSpec> {
    if source_q < 2 {
        return Err(Error::Precondition("source alphabet must have >= 2 symbols".into()));
    }
    let m = 32 - (source_q - 1).leading_zeros();
    let target_q = 1u32 << m;
    let gf2 = FieldSpec::new(2, 1)?;
    let code = generate_simplex_with_budget(&gf2, m, u64::from(target_q) * 2)?;
    let labels: Vec<Word> = code.codewords()[..source_q as usize].to_vec();

    // Distinct simplex codewords differ by a nonzero codeword, so every
    // label pair must sit at distance exactly q'/2; check it exhaustively.
    let scale = target_q / 2;
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i + 1..] {
            let d = a.distance(b)?;
            if d != scale {
                return Err(Error::VerificationFailed(format!(
                    "labels at distance {d}, expected {scale}"
                )));
            }
        }
    }

    Ok(EmbeddingSpec {
        source_q,
        target_q,
        m,
        block_length: target_q - 1,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::random_pointset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn binary_source_is_identity() {
        let e = make_embedding(2).unwrap();
        assert_eq!((e.target_q(), e.m(), e.block_length()), (2, 1, 1));
        let x = Word::new(2, &[1, 0, 1]).unwrap();
        assert_eq!(e.embed_word(&x).unwrap(), x);
    }

    #[test]
    fn ternary_labels_match_message_order() {
        let e = make_embedding(3).unwrap();
        assert_eq!((e.target_q(), e.m(), e.block_length()), (4, 2, 3));
        let labels: Vec<Vec<u16>> = e.labels().iter().map(|w| w.symbols()).collect();
        assert_eq!(
            labels,
            vec![vec![0, 0, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
        let x = Word::new(3, &[0, 1]).unwrap();
        assert_eq!(e.embed_word(&x).unwrap().symbols(), vec![0, 0, 0, 1, 0, 1]);
        let y = Word::new(3, &[2, 2]).unwrap();
        assert_eq!(e.embed_word(&y).unwrap().symbols(), vec![0, 1, 1, 0, 1, 1]);
    }

    #[test]
    fn round_up_bound() {
        for q in 2..=40u32 {
            let e = make_embedding(q).unwrap();
            assert!(q <= e.target_q() && e.target_q() <= 2 * q - 1, "q={q}");
        }
        assert_eq!(make_embedding(5).unwrap().target_q(), 8);
    }

    #[test]
    fn embed_set_scales_distances() {
        let e = make_embedding(3).unwrap();
        let s = PointSet::from_rows(3, &[vec![0, 1], vec![2, 1]]).unwrap();
        let image = e.embed_set(&s).unwrap();
        assert_eq!(image.len(), 2);
        assert_eq!(image.distance_set().values(), &[2]); // (4/2) * 1

        let f = FieldSpec::new(3, 1).unwrap();
        let code = crate::simplex::generate_simplex(&f, 2).unwrap();
        let image = e.embed_set(&code.to_pointset()).unwrap();
        assert_eq!(image.distance_set().values(), &[6]); // 2 * 3

        let singleton = PointSet::from_rows(3, &[vec![1, 2]]).unwrap();
        assert_eq!(e.embed_set(&singleton).unwrap().len(), 1);
    }

    #[test]
    fn scaling_law_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u32, 3, 4, 5, 6, 7, 8] {
            let e = make_embedding(q).unwrap();
            let scale = e.scale();
            for _ in 0..2_000 {
                let n = rng.gen_range(1..40u32);
                let a: Vec<u16> = (0..n).map(|_| rng.gen_range(0..q) as u16).collect();
                let b: Vec<u16> = (0..n).map(|_| rng.gen_range(0..q) as u16).collect();
                let x = Word::new(q, &a).unwrap();
                let y = Word::new(q, &b).unwrap();
                let tx = e.embed_word(&x).unwrap();
                let ty = e.embed_word(&y).unwrap();
                assert_eq!(
                    tx.distance(&ty).unwrap(),
                    scale * x.distance(&y).unwrap()
                );
                assert_eq!(tx.n(), n * e.block_length());
            }
        }
    }

    #[test]
    fn injective_on_random_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for q in [3u32, 5, 6] {
            let e = make_embedding(q).unwrap();
            let s = random_pointset(q, 10, 400, &mut rng).unwrap();
            let image = e.embed_set(&s).unwrap();
            assert_eq!(image.len(), s.len());
            assert_eq!(image.distance_set().len(), s.distance_set().len());
        }
    }

    #[test]
    fn wrong_alphabet_rejected() {
        let e = make_embedding(3).unwrap();
        let x = Word::new(4, &[3, 0]).unwrap();
        assert!(matches!(
            e.embed_word(&x),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
