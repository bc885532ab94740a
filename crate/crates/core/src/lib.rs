//! termweaver: fully unsupervised multi-word term recognition over a
//! domain-specific corpus.
//!
//! The pipeline extracts candidate noun phrases by part-of-speech
//! pattern, normalizes variants into set-based concept keys, recognizes
//! and disambiguates acronyms, ranks candidates by C-value, and emits a
//! term dictionary, standoff annotations, inline HTML markup and
//! concordances.
//!
//! ```
//! use termweaver::extract::{compile_pattern, DEFAULT_PATTERN};
//! use termweaver::preprocess::CoarseTag::{Jj, Nn};
//!
//! let pattern = compile_pattern(DEFAULT_PATTERN).unwrap();
//! assert!(pattern.accepts(&[Jj, Nn]));
//! ```

pub mod acronyms;
pub mod error;
pub mod extract;
pub mod markup;
pub mod normalize;
pub mod pipeline;
pub mod preprocess;
pub mod score;

pub use error::{Error, Result};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineResult};
