//! The distinct-distance lower bound and the sphere-decomposition trace that
//! certifies it on binary sets.
//!
//! The bound says every S in [q]^n spans at least log|S| / (2 log(2nq))
//! distances. The trace follows the counting argument behind it: pick a
//! center, split S into distance classes, keep the largest class S' on one
//! sphere, read its points as r-subsets of [n], and compare |S'| against both
//! the pigeonhole floor (|S|-1)/d and the Ray-Chaudhuri-Wilson ceiling
//! C(n, d') where d' counts distinct pairwise intersection sizes.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hamming::{PointSet, Word};

/// Evaluation of the lower bound on one instance.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub set_size: u64,
    pub n: u32,
    pub q: u32,
    /// |distance_set(S)| computed by the pairwise oracle.
    pub observed_distances: u32,
    /// log2|S| / (2 log2(2nq)); the ratio is base-invariant.
    pub bound_value: f64,
    pub holds: bool,
    pub slack: f64,
}

/// Certificate of the sphere decomposition on a binary set.
#[derive(Clone, Debug)]
pub struct SphereTrace {
    pub center: Word,
    /// (distance, class size) for every nonempty class from the center.
    pub distance_classes: Vec<(u32, u64)>,
    /// Distance of the largest class (smallest such distance on ties).
    pub chosen_r: u32,
    /// |S'|, the size of the largest class.
    pub subset_size: u64,
    /// (|S| - 1) / d where d is the number of nonempty classes.
    pub pigeonhole_lower: f64,
    /// Distinct |F ∩ F'| over distinct pairs of translated supports.
    pub intersection_sizes: Vec<u32>,
    pub d_prime: u32,
    /// C(n, d'), saturating at u64::MAX.
    pub rw_upper: u64,
    pub rw_holds: bool,
}

impl SphereTrace {
    /// True when the Ray-Chaudhuri-Wilson ceiling is met with equality.
    pub fn is_tight(&self) -> bool {
        self.subset_size == self.rw_upper
    }
}

/// log2(set_size) / (2 log2(2 n q)); monotone increasing in set_size.
pub fn distance_lower_bound(set_size: u64, n: u32, q: u32) -> f64 {
    (set_size as f64).log2() / (2.0 * (2.0 * n as f64 * q as f64).log2())
}

/// Checks the lower bound on a concrete set. A false `holds` signals an
/// implementation bug, not a counterexample.
pub fn verify_thm1(s: &PointSet) -> Result<BoundReport> {
    if s.len() < 2 {
        return Err(Error::Precondition(
            "bound verification needs at least 2 points".into(),
        ));
    }
    let observed = s.distance_set().len() as u32;
    let bound_value = distance_lower_bound(s.len() as u64, s.n(), s.q());
    Ok(BoundReport {
        set_size: s.len() as u64,
        n: s.n(),
        q: s.q(),
        observed_distances: observed,
        bound_value,
        holds: observed as f64 >= bound_value,
        slack: observed as f64 - bound_value,
    })
}

/// Binomial coefficient, saturating at u64::MAX.
pub fn binomial_saturating(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        if acc > u128::MAX / (n - i) as u128 {
            return u64::MAX;
        }
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Builds the sphere trace for a binary set: center choice maximizes the
/// largest distance class (ties to the lexicographically smallest center).
pub fn rw_sphere_trace(s: &PointSet) -> Result<SphereTrace> {
    if s.q() != 2 {
        return Err(Error::BinaryOnly(s.q()));
    }
    if s.len() < 2 {
        return Err(Error::Precondition(
            "sphere trace needs at least 2 points".into(),
        ));
    }

    let words = s.words();
    let mut best: Option<(u64, usize, BTreeMap<u32, u64>)> = None;
    for (i, center) in words.iter().enumerate() {
        let mut classes: BTreeMap<u32, u64> = BTreeMap::new();
        for (j, other) in words.iter().enumerate() {
            if i == j {
                continue;
            }
            *classes.entry(center.distance(other)?).or_insert(0) += 1;
        }
        let largest = classes.values().copied().max().unwrap_or(0);
        // Strict improvement keeps the earliest (lexicographically smallest)
        // center on ties, since words are in canonical order.
        if best.as_ref().map_or(true, |(b, _, _)| largest > *b) {
            best = Some((largest, i, classes));
        }
    }
    let (subset_size, center_idx, classes) = best.expect("at least two points");
    let center = words[center_idx].clone();
    let chosen_r = classes
        .iter()
        .find(|(_, &count)| count == subset_size)
        .map(|(&d, _)| d)
        .expect("largest class exists");
    let d = classes.len() as u64;
    let pigeonhole_lower = (s.len() as f64 - 1.0) / d as f64;

    // Translate the sphere to center 0 and read supports as r-subsets.
    let supports: Vec<Word> = words
        .iter()
        .enumerate()
        .filter(|(j, w)| {
            *j != center_idx && center.distance(w).expect("uniform set") == chosen_r
        })
        .map(|(_, w)| w.xor(&center))
        .collect();
    debug_assert_eq!(supports.len() as u64, subset_size);

    let mut intersection_sizes = BTreeSet::new();
    for (i, a) in supports.iter().enumerate() {
        let ab = a.blocks().expect("binary word");
        for b in &supports[i + 1..] {
            let bb = b.blocks().expect("binary word");
            let inter: u32 = ab.iter().zip(bb).map(|(x, y)| (x & y).count_ones()).sum();
            intersection_sizes.insert(inter);
        }
    }
    let d_prime = intersection_sizes.len() as u32;
    let rw_upper = binomial_saturating(s.n() as u64, d_prime as u64);
    let rw_holds = subset_size <= rw_upper;

    Ok(SphereTrace {
        center,
        distance_classes: classes.into_iter().collect(),
        chosen_r,
        subset_size,
        pigeonhole_lower,
        intersection_sizes: intersection_sizes.into_iter().collect(),
        d_prime,
        rw_upper,
        rw_holds,
    })
}
