//! The q-ary simplex code S_q(m) and the few-distance concatenation
//! construction built from it.
//!
//! The generator matrix has one column per one-dimensional subspace of
//! F_q^m, in canonical order; every nonzero codeword then has weight exactly
//! q^(m-1), so the code spans a single Hamming distance.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{monic_representatives, FieldSpec};
use crate::hamming::{PointSet, Word};

/// Default cap on materialized code/set sizes.
pub const DEFAULT_SIZE_BUDGET: u64 = 1 << 20;

/// Number of points materialized when a product set exceeds the budget.
const SAMPLE_SIZE: usize = 4096;

#[derive(Clone, Debug)]
pub struct SimplexCode {
    field: FieldSpec,
    m: u32,
    length: u32,
    /// m rows of length `length`: row i holds coordinate i of every column.
    generator: Vec<Vec<u32>>,
    /// q^m codewords ordered by message integer (big-endian base-q digits).
    codewords: Vec<Word>,
}

impl SimplexCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Block length (q^m - 1)/(q - 1).
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    /// The common weight q^(m-1) of every nonzero codeword.
    pub fn nonzero_weight(&self) -> u32 {
        self.field.q().pow(self.m - 1)
    }

    pub fn to_pointset(&self) -> PointSet {
        PointSet::new(self.field.q(), self.length, self.codewords.clone())
            .expect("codewords are distinct and uniform")
    }
}

pub fn generate_simplex(f: &FieldSpec, m: u32) -> Result<SimplexCode> {
    generate_simplex_with_budget(f, m, DEFAULT_SIZE_BUDGET)
}

pub fn generate_simplex_with_budget(f: &FieldSpec, m: u32, budget: u64) -> Result<SimplexCode> {
    if m < 1 {
        return Err(Error::Precondition("m must be >= 1".into()));
    }
    let q = f.q() as u128;
    let size = q.checked_pow(m).ok_or(Error::ResourceLimit {
        needed: u128::MAX,
        budget: budget as u128,
    })?;
    if size > budget as u128 {
        return Err(Error::ResourceLimit {
            needed: size,
            budget: budget as u128,
        });
    }
    let columns = monic_representatives(f, m)?;
    let length = columns.len() as u32;

    let mut generator = vec![vec![0u32; columns.len()]; m as usize];
    for (j, col) in columns.iter().enumerate() {
        for (i, &e) in col.iter().enumerate() {
            generator[i][j] = e;
        }
    }

    let expected_weight = f.q().pow(m - 1);
    let mut codewords = Vec::with_capacity(size as usize);
    let mut message = vec![0u32; m as usize];
    for msg in 0..size {
        let mut v = msg;
        for i in (0..m as usize).rev() {
            message[i] = (v % q) as u32;
            v /= q;
        }
        let mut symbols = vec![0u16; columns.len()];
        for (i, &u) in message.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, s) in symbols.iter_mut().enumerate() {
                let term = f.mul(u, generator[i][j])?;
                *s = f.add(*s as u32, term)? as u16;
            }
        }
        let word = Word::new(f.q(), &symbols)?;
        if msg != 0 && word.weight() != expected_weight {
            return Err(Error::VerificationFailed(format!(
                "simplex codeword {msg} has weight {} instead of {expected_weight}",
                word.weight()
            )));
        }
        codewords.push(word);
    }

    Ok(SimplexCode {
        field: f.clone(),
        m,
        length,
        generator,
        codewords,
    })
}

/// Output of [`few_distance_set`]: a set in [q]^n spanning exactly k
/// distances {j q^(m-1) : 1 <= j <= k}.
#[derive(Clone, Debug)]
pub struct FewDistanceSet {
    pub set: PointSet,
    /// Simplex dimension actually used (maximal feasible).
    pub m: u32,
    /// Block length of one simplex factor.
    pub block_length: u32,
    /// Trailing zero coordinates appended after the k blocks.
    pub padding: u32,
    /// False when the full product exceeded the budget and a seeded uniform
    /// sample was materialized instead.
    pub exact: bool,
    pub seed: u64,
}

pub fn few_distance_set(f: &FieldSpec, n: u32, k: u32) -> Result<FewDistanceSet> {
    few_distance_set_with(f, n, k, DEFAULT_SIZE_BUDGET, 0)
}

/// The k-fold simplex product padded with zeros to length n. When the full
/// q^(mk) product exceeds `budget`, a seeded sample of 4096 points is
/// returned instead and its distances are verified to stay inside
/// {j q^(m-1)}.
pub fn few_distance_set_with(
    f: &FieldSpec,
    n: u32,
    k: u32,
    budget: u64,
    seed: u64,
) -> Result<FewDistanceSet> {
    if k < 1 {
        return Err(Error::Precondition("k must be >= 1".into()));
    }
    let q = f.q() as u128;
    // Largest m >= 1 with k * (q^m - 1)/(q - 1) <= n.
    let block_len = |m: u32| -> Option<u128> {
        let p = q.checked_pow(m)?;
        Some((p - 1) / (q - 1))
    };
    if (k as u128) > n as u128 {
        return Err(Error::Infeasible(format!(
            "need n >= k for at least one simplex block per factor (n = {n}, k = {k})"
        )));
    }
    let mut m = 1u32;
    while let Some(next) = block_len(m + 1) {
        if k as u128 * next <= n as u128 {
            m += 1;
        } else {
            break;
        }
    }
    let code = generate_simplex_with_budget(f, m, budget)?;
    let block = code.length();
    let n0 = k * block;
    let padding = n - n0;

    let code_size = q.pow(m);
    let total = code_size.checked_pow(k).unwrap_or(u128::MAX);
    let exact = total <= budget as u128;

    let build_word = |tuple: &[u64]| -> Result<Word> {
        let mut symbols = Vec::with_capacity(n as usize);
        for &t in tuple {
            symbols.extend(code.codewords()[t as usize].symbols());
        }
        symbols.resize(n as usize, 0);
        Word::new(f.q(), &symbols)
    };

    let words = if exact {
        let mut words = Vec::with_capacity(total as usize);
        let mut tuple = vec![0u64; k as usize];
        loop {
            words.push(build_word(&tuple)?);
            // Odometer over k digits base q^m.
            let mut pos = k as usize;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if (tuple[pos] as u128) < code_size {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&t| t == 0) {
                break;
            }
        }
        words
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let target = (budget as usize).min(SAMPLE_SIZE);
        while seen.len() < target {
            let tuple: Vec<u64> = (0..k)
                .map(|_| rng.gen_range(0..code_size as u64))
                .collect();
            seen.insert(tuple);
        }
        seen.iter().map(|t| build_word(t)).collect::<Result<Vec<_>>>()?
    };

    let set = PointSet::new(f.q(), n, words)?;

    if !exact {
        let step = code.nonzero_weight();
        let allowed: HashSet<u32> = (1..=k).map(|j| j * step).collect();
        let observed = set.distance_set();
        if let Some(&bad) = observed.values().iter().find(|d| !allowed.contains(d)) {
            return Err(Error::VerificationFailed(format!(
                "sampled product set spans distance {bad} outside {{j*{step}}}"
            )));
        }
    }

    Ok(FewDistanceSet {
        set,
        m,
        block_length: block,
        padding,
        exact,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_simplex_m3() {
        let f = FieldSpec::new(2, 1).unwrap();
        let code = generate_simplex(&f, 3).unwrap();
        assert_eq!(code.length(), 7);
        assert_eq!(code.codewords().len(), 8);
        for cw in &code.codewords()[1..] {
            assert_eq!(cw.weight(), 4);
        }
        assert_eq!(code.to_pointset().distance_set().values(), &[4]);
    }

    #[test]
    fn ternary_simplex_m2() {
        let f = FieldSpec::new(3, 1).unwrap();
        let code = generate_simplex(&f, 2).unwrap();
        assert_eq!(code.length(), 4);
        assert_eq!(code.generator(), &[vec![0, 1, 1, 1], vec![1, 0, 1, 2]]);
        assert_eq!(code.codewords().len(), 9);

        // Oracle: rebuild all 9 combinations with plain mod-3 arithmetic.
        let rows = [[0u16, 1, 1, 1], [1, 0, 1, 2]];
        let mut expected = Vec::new();
        for u0 in 0..3u16 {
            for u1 in 0..3u16 {
                let cw: Vec<u16> = (0..4)
                    .map(|j| (u0 * rows[0][j] + u1 * rows[1][j]) % 3)
                    .collect();
                expected.push(cw);
            }
        }
        let got: Vec<Vec<u16>> = code.codewords().iter().map(|w| w.symbols()).collect();
        assert_eq!(got, expected);
        for cw in &code.codewords()[1..] {
            assert_eq!(cw.weight(), 3);
        }
    }

    #[test]
    fn degenerate_m1() {
        let f = FieldSpec::new(2, 1).unwrap();
        let code = generate_simplex(&f, 1).unwrap();
        assert_eq!(code.length(), 1);
        let rows: Vec<Vec<u16>> = code.codewords().iter().map(|w| w.symbols()).collect();
        assert_eq!(rows, vec![vec![0], vec![1]]);
    }

    #[test]
    fn linearity_exhaustive() {
        for (q, m) in [(2u32, 4u32), (3, 3), (4, 2), (5, 2), (8, 2)] {
            let f = FieldSpec::from_order(q).unwrap();
            let code = generate_simplex(&f, m).unwrap();
            let words: HashSet<Vec<u16>> =
                code.codewords().iter().map(|w| w.symbols()).collect();
            for a in code.codewords() {
                for b in code.codewords() {
                    let sum: Vec<u16> = a
                        .symbols()
                        .iter()
                        .zip(b.symbols())
                        .map(|(&x, y)| f.add(x as u32, y as u32).unwrap() as u16)
                        .collect();
                    assert!(words.contains(&sum), "q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert!(matches!(
            generate_simplex_with_budget(&f, 12, 1 << 10),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn few_distance_binary_n30_k3() {
        let f = FieldSpec::new(2, 1).unwrap();
        let fd = few_distance_set(&f, 30, 3).unwrap();
        assert_eq!(fd.m, 3);
        assert_eq!(fd.block_length, 7);
        assert_eq!(fd.padding, 9);
        assert!(fd.exact);
        assert_eq!(fd.set.len(), 512);
        assert_eq!(fd.set.distance_set().values(), &[4, 8, 12]);
    }

    #[test]
    fn few_distance_ternary_no_padding() {
        let f = FieldSpec::new(3, 1).unwrap();
        let fd = few_distance_set(&f, 4, 1).unwrap();
        assert_eq!(fd.m, 2);
        assert_eq!(fd.padding, 0);
        assert_eq!(fd.set.len(), 9);
        assert_eq!(fd.set.distance_set().values(), &[3]);
    }

    #[test]
    fn few_distance_full_cube_case() {
        let f = FieldSpec::new(2, 1).unwrap();
        let fd = few_distance_set(&f, 3, 3).unwrap();
        assert_eq!(fd.m, 1);
        assert_eq!(fd.set.len(), 8);
        assert_eq!(fd.set.distance_set().values(), &[1, 2, 3]);
    }

    #[test]
    fn few_distance_infeasible() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert!(matches!(
            few_distance_set(&f, 2, 3),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn few_distance_sampled_mode() {
        let f = FieldSpec::new(2, 1).unwrap();
        // m = 2, so the full product has 4^4 = 256 points > budget 128.
        let fd = few_distance_set_with(&f, 12, 4, 128, 9).unwrap();
        assert!(!fd.exact);
        assert_eq!(fd.set.len(), 128);
        let allowed = [2u32, 4, 6, 8];
        for &d in fd.set.distance_set().values() {
            assert!(allowed.contains(&d));
        }
        // Same seed, same sample.
        let fd2 = few_distance_set_with(&f, 12, 4, 128, 9).unwrap();
        assert_eq!(fd.set, fd2.set);
    }
}
