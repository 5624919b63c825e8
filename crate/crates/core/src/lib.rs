//! Hybrid partial parser that locates the subject of a declarative sentence
//! and the head of that subject.
//!
//! A rule-based generator proposes bracketed tag strings, a prohibition
//! table and a small grammar prune them, and single-layer nets trained on
//! hand-marked text pick the winners.

pub mod candgen;
pub mod constraints;
pub mod encoder;
pub mod error;
pub mod net;
pub mod pipeline;
pub mod resources;
pub mod tagger;
pub mod tagset;

pub use candgen::{CandidateString, Placement};
pub use constraints::{ExclusionReason, GenerationLimits, Grammar, ProhibitionTable};
pub use encoder::{FeatureMode, FeatureSet, TruncationPolicy};
pub use error::{Error, Result};
pub use net::{SingleLayerNet, TrainConfig, TrainStats};
pub use pipeline::{Config, GoldEntry, ParseResult, Parser};
pub use resources::Resources;
pub use tagger::{Lexicon, TaggedSentence};
pub use tagset::{Mode, Stage, Symbol, Tagset};
