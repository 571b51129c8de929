//! Sidon (B2) sets of integers: construction, greedy extraction, and an
//! exact maximum-subset search.
//!
//! A set is Sidon when all pairwise differences of distinct elements are
//! distinct, equivalently when all sums a + b over index pairs i <= j are
//! distinct (doubles included). The difference form is what the rainbow
//! machinery needs: along a chain, Hamming distances are weight differences,
//! so distinct differences transfer directly to distinct distances.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Exact search is limited to universes of this many elements.
pub const MAX_EXACT_SIDON: usize = 24;

/// A verified Sidon set inside {1, ..., universe_bound}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidonSet {
    universe_bound: u64,
    elements: Vec<u64>,
}

impl SidonSet {
    pub fn new(universe_bound: u64, elements: Vec<u64>) -> Result<Self> {
        let mut sorted = elements;
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first().is_some_and(|&e| e < 1) {
            return Err(Error::Precondition("Sidon elements must be >= 1".into()));
        }
        if sorted.last().is_some_and(|&e| e > universe_bound) {
            return Err(Error::Precondition(format!(
                "Sidon elements must be <= {universe_bound}"
            )));
        }
        if !is_sidon(&sorted) {
            return Err(Error::VerificationFailed(
                "pairwise differences are not distinct".into(),
            ));
        }
        Ok(SidonSet {
            universe_bound,
            elements: sorted,
        })
    }

    pub fn universe_bound(&self) -> u64 {
        self.universe_bound
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// True iff all pairwise differences of distinct elements are distinct.
/// `elements` must be sorted and duplicate-free.
pub fn is_sidon(elements: &[u64]) -> bool {
    let mut seen = HashSet::new();
    for (i, &a) in elements.iter().enumerate() {
        for &b in &elements[i + 1..] {
            if !seen.insert(b - a) {
                return false;
            }
        }
    }
    true
}

/// The quadratic construction {2pi + (i^2 mod p) + 1 : 0 <= i < p} for the
/// largest prime p with 2p^2 <= n; tiny n fall back to {1} (n = 2) or {1, 2}.
/// The result is re-verified by brute force before returning.
pub fn erdos_turan_sidon(n: u64) -> Result<SidonSet> {
    if n < 2 {
        return Err(Error::Precondition("need n >= 2".into()));
    }
    let elements = match largest_prime_with_double_square_below(n) {
        Some(p) => (0..p).map(|i| 2 * p * i + (i * i) % p + 1).collect(),
        None if n >= 3 => vec![1, 2],
        None => vec![1],
    };
    if !is_sidon(&elements) {
        return Err(Error::VerificationFailed(
            "quadratic construction failed the Sidon check".into(),
        ));
    }
    SidonSet::new(n, elements)
}

fn largest_prime_with_double_square_below(n: u64) -> Option<u64> {
    let mut p = ((n / 2) as f64).sqrt() as u64 + 1;
    while p >= 2 {
        if 2 * p * p <= n && is_prime_u64(p) {
            return Some(p);
        }
        p -= 1;
    }
    None
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn validate_universe(a: &[u64]) -> Result<Vec<u64>> {
    if a.is_empty() {
        return Err(Error::Precondition("universe must be nonempty".into()));
    }
    if a.contains(&0) {
        return Err(Error::Precondition("universe elements must be >= 1".into()));
    }
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("universe elements must be distinct".into()));
    }
    Ok(sorted)
}

/// Scans the universe in increasing order, keeping an element whenever the
/// kept set stays Sidon. Fast, no size guarantee.
pub fn greedy_sidon_subset(a: &[u64]) -> Result<SidonSet> {
    let sorted = validate_universe(a)?;
    let bound = *sorted.last().unwrap();
    let mut kept: Vec<u64> = Vec::new();
    let mut diffs: HashSet<u64> = HashSet::new();
    for &e in &sorted {
        if kept.iter().all(|&b| !diffs.contains(&(e - b))) {
            for &b in &kept {
                diffs.insert(e - b);
            }
            kept.push(e);
        }
    }
    SidonSet::new(bound, kept)
}

/// Maximum-size Sidon subset by depth-first branch and bound; universes are
/// limited to [`MAX_EXACT_SIDON`] elements. Deterministic: elements are
/// scanned in increasing order with the include branch first, and the
/// incumbent is replaced only by strictly larger subsets.
pub fn max_sidon_subset(a: &[u64]) -> Result<SidonSet> {
    let sorted = validate_universe(a)?;
    if sorted.len() > MAX_EXACT_SIDON {
        return Err(Error::Precondition(format!(
            "exact Sidon search handles at most {MAX_EXACT_SIDON} elements, got {}",
            sorted.len()
        )));
    }
    let bound = *sorted.last().unwrap();

    struct Search<'a> {
        universe: &'a [u64],
        chosen: Vec<u64>,
        diffs: HashSet<u64>,
        best: Vec<u64>,
    }

    impl Search<'_> {
        fn run(&mut self, next: usize) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            if next == self.universe.len()
                || self.chosen.len() + (self.universe.len() - next) <= self.best.len()
            {
                return;
            }
            let e = self.universe[next];
            if self.chosen.iter().all(|&b| !self.diffs.contains(&(e - b))) {
                let added: Vec<u64> = self.chosen.iter().map(|&b| e - b).collect();
                for &d in &added {
                    self.diffs.insert(d);
                }
                self.chosen.push(e);
                self.run(next + 1);
                self.chosen.pop();
                for &d in &added {
                    self.diffs.remove(&d);
                }
            }
            self.run(next + 1);
        }
    }

    let mut search = Search {
        universe: &sorted,
        chosen: Vec::new(),
        diffs: HashSet::new(),
        best: Vec::new(),
    };
    search.run(0);
    SidonSet::new(bound, search.best)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive oracle: the true maximum Sidon subset size over all 2^|A|
    /// subsets, skipping masks that cannot beat the incumbent.
    pub(crate) fn max_sidon_by_enumeration(a: &[u64]) -> usize {
        let mut best = 0usize;
        for mask in 0u32..(1u32 << a.len()) {
            if (mask.count_ones() as usize) <= best {
                continue;
            }
            let subset: Vec<u64> = a
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if is_sidon(&subset) {
                best = subset.len();
            }
        }
        best
    }

    #[test]
    fn sidon_predicate() {
        assert!(is_sidon(&[1, 2, 4]));
        assert!(!is_sidon(&[1, 2, 3])); // 2-1 = 3-2
        assert!(is_sidon(&[5]));
        assert!(is_sidon(&[]));
        assert!(!is_sidon(&[1, 3, 7, 9])); // 3-1 = 9-7
    }

    #[test]
    fn quadratic_construction_examples() {
        let b = erdos_turan_sidon(8).unwrap();
        assert_eq!(b.elements(), &[1, 6]); // p = 2

        let b = erdos_turan_sidon(50).unwrap();
        assert_eq!(b.elements(), &[1, 12, 25, 35, 42]); // p = 5
        assert_eq!(b.len(), 5);

        let b = erdos_turan_sidon(2).unwrap();
        assert_eq!(b.elements(), &[1]);
        let b = erdos_turan_sidon(5).unwrap();
        assert_eq!(b.elements(), &[1, 2]);
    }

    #[test]
    fn quadratic_construction_stays_in_range() {
        for n in 2..400u64 {
            let b = erdos_turan_sidon(n).unwrap();
            assert!(b.elements().iter().all(|&e| (1..=n).contains(&e)), "n={n}");
            if let Some(p) = largest_prime_with_double_square_below(n) {
                assert_eq!(b.len() as u64, p, "n={n}");
            }
        }
        // Theorem-scale instance: p = 13 at n = 2 * 13^2.
        let b = erdos_turan_sidon(338).unwrap();
        assert_eq!(b.len(), 13);
    }

    #[test]
    fn greedy_keeps_a_sidon_set() {
        let b = greedy_sidon_subset(&[1, 2, 3, 4, 5]).unwrap();
        // 3 collides with {1, 2} (3-2 = 2-1) and 5 with {1, 2, 4} (5-2 = 4-1),
        // so greedy keeps {1, 2, 4}.
        assert_eq!(b.elements(), &[1, 2, 4]);

        let already = [2u64, 3, 5, 11];
        assert!(is_sidon(&already));
        assert_eq!(greedy_sidon_subset(&already).unwrap().elements(), &already);

        assert_eq!(greedy_sidon_subset(&[1]).unwrap().elements(), &[1]);
    }

    #[test]
    fn exact_matches_enumeration_on_small_universes() {
        let a: Vec<u64> = (1..=5).collect();
        assert_eq!(max_sidon_subset(&a).unwrap().len(), 3);
        assert_eq!(max_sidon_by_enumeration(&a), 3);

        // Only 8 distinct differences fit in {0..8}, so 5 elements never fit.
        let a: Vec<u64> = (1..=9).collect();
        let exact = max_sidon_subset(&a).unwrap();
        assert_eq!(exact.len(), 4);
        assert_eq!(max_sidon_by_enumeration(&a), 4);
    }

    #[test]
    fn exact_search_size_limited() {
        let a: Vec<u64> = (1..=25).collect();
        assert!(matches!(max_sidon_subset(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn bad_universes_rejected() {
        assert!(greedy_sidon_subset(&[]).is_err());
        assert!(greedy_sidon_subset(&[0, 1]).is_err());
        assert!(greedy_sidon_subset(&[3, 3]).is_err());
    }
}
