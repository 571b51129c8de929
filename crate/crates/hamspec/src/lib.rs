//! Hamming distance spectra of finite point sets over [q]^n.
//!
//! The crate builds and checks the objects behind a family of extremal
//! results about the set of Hamming distances Δ(S) spanned by a finite set S:
//!
//! - [`field`]: GF(p^k) arithmetic and canonical subspace representatives.
//! - [`hamming`]: words, point sets, distance sets, and the dominance order.
//! - [`simplex`]: the q-ary simplex code and the k-fold product set that
//!   realizes polynomially large sets spanning exactly k distances.
//! - [`embedding`]: the symbolwise injection into binary space that scales
//!   every distance by the same factor.
//! - [`bounds`]: the log|S| / (2 log 2nq) lower bound on |Δ(S)| and its
//!   sphere-decomposition certificate.
//! - [`sidon`]: B2 sets of integers, constructed and extracted.
//! - [`rainbow`]: rainbow subsets (all pairwise distances distinct), the
//!   many-distances/no-rainbow gap family, and the chain/Sidon extraction
//!   pipeline for dense binary sets.
//! - [`io`] and [`report`]: the point-set text format and the JSON report
//!   emitted by the CLI.

pub mod bounds;
pub mod embedding;
pub mod error;
pub mod field;
pub mod hamming;
pub mod io;
pub mod rainbow;
pub mod report;
pub mod sidon;
pub mod simplex;

pub use bounds::{distance_lower_bound, rw_sphere_trace, verify_thm1, BoundReport, SphereTrace};
pub use embedding::{make_embedding, EmbeddingSpec};
pub use error::{Error, ParseError, Result};
pub use field::{monic_representatives, ColumnVector, FieldSpec};
pub use hamming::{random_pointset, DistanceSet, PointSet, Word};
pub use io::{parse_pointset, serialize_pointset};
pub use rainbow::{
    best_chain_shift, gap_binary, gap_construction, is_rainbow, prefix_rainbow,
    rainbow_in_large_set, rho_exact, ChainWitness, PipelineOutcome, RainbowReport, RhoOutcome,
};
pub use report::Report;
pub use sidon::{erdos_turan_sidon, greedy_sidon_subset, is_sidon, max_sidon_subset, SidonSet};
pub use simplex::{few_distance_set, few_distance_set_with, generate_simplex, FewDistanceSet, SimplexCode};
