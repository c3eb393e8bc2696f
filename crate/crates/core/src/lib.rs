//! Crossing hypergraphs for woven, knitted and braided textiles.
//!
//! A textile is modelled as a set of crossings of two threads; each crossing
//! records which thread lies on top and where the four thread ends lead.
//! From that structure the crate extracts k-neighbourhood fingerprints,
//! compares them with seven multiset distance measures, ranks corpora by
//! similarity and clusters them, and evaluates both tasks against category
//! labels. Synthetic corpora of sixteen textile families come from
//! [`generators`].
//!
//! ```
//! use textile_core::{fingerprint, generators::{generate, Family, PatternSpec}};
//!
//! let g = generate(&PatternSpec::new(Family::PlainWeave, 2, 2, 0)).unwrap();
//! let fp = fingerprint::fingerprint(&g, 1).unwrap();
//! assert_eq!(fp.distinct(), 1);
//! assert_eq!(fp.total(), 4);
//! ```

pub mod clustering;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod experiment;
pub mod fingerprint;
pub mod generators;
pub mod graph;
pub mod retrieval;

pub use distance::{CorpusStats, DistanceMatrix, Measure, SparseVector};
pub use error::{Error, Result};
pub use fingerprint::{fingerprint, EdgeLabel, Fingerprint, Neighbourhood, Vocabulary};
pub use graph::{parse, serialize, validate, TextileGraph};
