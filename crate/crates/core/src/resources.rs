//! Shipped data files and the loaded resource bundle.

use crate::constraints::{GenerationLimits, Grammar, ProhibitionTable};
use crate::error::Result;
use crate::tagger::Lexicon;
use crate::tagset::Tagset;

pub const MODE1_TAGSET: &str = include_str!("../data/mode1.tagset");
pub const MODE2_TAGSET: &str = include_str!("../data/mode2.tagset");
pub const MODE1_MAPPING: &str = include_str!("../data/mode1.map");
pub const MODE2_MAPPING: &str = include_str!("../data/mode2.map");
pub const LEXICON: &str = include_str!("../data/lexicon.txt");
pub const PROHIBITIONS: &str = include_str!("../data/prohibit.txt");
pub const GRAMMAR: &str = include_str!("../data/grammar.txt");
pub const CORPUS: &str = include_str!("../data/corpus.txt");

/// Everything the two stages need apart from the nets.
#[derive(Debug, Clone)]
pub struct Resources {
    pub mode1: Tagset,
    pub mode2: Tagset,
    pub lexicon: Lexicon,
    /// Subject-stage prohibitions over the mode-1 alphabet.
    pub prohibitions: ProhibitionTable,
    pub grammar: Grammar,
    pub limits: GenerationLimits,
}

/// Source texts for [`Resources::from_sources`].
#[derive(Debug, Clone, Copy)]
pub struct Sources<'a> {
    pub mode1: &'a str,
    pub mode2: &'a str,
    pub lexicon: &'a str,
    pub prohibitions: &'a str,
    pub grammar: &'a str,
}

impl Default for Sources<'static> {
    fn default() -> Self {
        Sources {
            mode1: MODE1_TAGSET,
            mode2: MODE2_TAGSET,
            lexicon: LEXICON,
            prohibitions: PROHIBITIONS,
            grammar: GRAMMAR,
        }
    }
}

impl Resources {
    pub fn from_sources(src: Sources<'_>, limits: GenerationLimits) -> Result<Resources> {
        let mode1 = Tagset::load(src.mode1)?;
        let mode2 = Tagset::load(src.mode2)?;
        let lexicon = Lexicon::load(src.lexicon, &mode1, &mode2)?;
        let prohibitions = ProhibitionTable::load(src.prohibitions, &mode1)?;
        let grammar = Grammar::load(src.grammar, &mode1)?;
        Ok(Resources {
            mode1,
            mode2,
            lexicon,
            prohibitions,
            grammar,
            limits,
        })
    }
}

impl Default for Resources {
    /// The shipped data with the default limits.
    fn default() -> Self {
        Resources::from_sources(Sources::default(), GenerationLimits::default())
            .expect("shipped data files are valid")
    }
}
