//! Sparse binary features: adjacent symbol pairs (bipos) and triples
//! (tripos) over a truncated candidate string.

use std::collections::BTreeSet;
use std::fmt;

use crate::candgen::CandidateString;
use crate::error::{Error, Result};
use crate::tagset::{Stage, Symbol, Tagset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FeatureMode {
    #[default]
    Tripos,
    Both,
}

impl FeatureMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureMode::Tripos => "tripos",
            FeatureMode::Both => "both",
        }
    }

    pub fn parse(s: &str) -> Option<FeatureMode> {
        match s {
            "tripos" => Some(FeatureMode::Tripos),
            "both" => Some(FeatureMode::Both),
            _ => None,
        }
    }
}

impl fmt::Display for FeatureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Bi([Symbol; 2]),
    Tri([Symbol; 3]),
}

impl Feature {
    /// `b:<s1>,<s2>` or `t:<s1>,<s2>,<s3>`.
    pub fn canonical(&self, tagset: &Tagset) -> String {
        match self {
            Feature::Bi([a, b]) => format!("b:{},{}", tagset.name(*a), tagset.name(*b)),
            Feature::Tri([a, b, c]) => {
                format!("t:{},{},{}", tagset.name(*a), tagset.name(*b), tagset.name(*c))
            }
        }
    }

    pub fn parse(s: &str, tagset: &Tagset) -> Option<Feature> {
        let (kind, rest) = s.split_once(':')?;
        let syms: Vec<Symbol> = rest
            .split(',')
            .map(|n| tagset.symbol(n))
            .collect::<Option<_>>()?;
        match (kind, syms.as_slice()) {
            ("b", &[a, b]) => Some(Feature::Bi([a, b])),
            ("t", &[a, b, c]) => Some(Feature::Tri([a, b, c])),
            _ => None,
        }
    }
}

/// Set of active tuples; each tuple is either present or absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureSet {
    pub bipos: BTreeSet<[Symbol; 2]>,
    pub tripos: BTreeSet<[Symbol; 3]>,
    pub mode: FeatureMode,
}

impl FeatureSet {
    pub fn len(&self) -> usize {
        self.bipos.len() + self.tripos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bipos.is_empty() && self.tripos.is_empty()
    }

    /// Features in a fixed order: pairs first, then triples.
    pub fn iter(&self) -> impl Iterator<Item = Feature> + '_ {
        self.bipos
            .iter()
            .map(|&p| Feature::Bi(p))
            .chain(self.tripos.iter().map(|&t| Feature::Tri(t)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationPolicy {
    /// Number of token symbols kept beyond CLOSE.
    pub window: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { window: 2 }
    }
}

/// Keeps everything through CLOSE plus `window` token symbols after it.
pub fn truncate(candidate: &CandidateString, policy: TruncationPolicy, tagset: &Tagset) -> Result<Vec<Symbol>> {
    let close = tagset.close();
    let at = candidate
        .symbols
        .iter()
        .position(|&s| s == close)
        .ok_or(Error::MissingClose)?;
    let mut out = candidate.symbols[..=at].to_vec();
    let mut kept = 0;
    for &sym in &candidate.symbols[at + 1..] {
        if kept == policy.window {
            break;
        }
        out.push(sym);
        if tagset.is_tag(sym) {
            kept += 1;
        }
    }
    Ok(out)
}

/// Features of an already truncated symbol sequence.
pub fn encode_symbols(seq: &[Symbol], mode: FeatureMode) -> Result<FeatureSet> {
    if seq.len() < 3 {
        return Err(Error::TooShortToEncode(seq.len()));
    }
    let mut set = FeatureSet {
        mode,
        ..FeatureSet::default()
    };
    if mode == FeatureMode::Both {
        set.bipos = seq.windows(2).map(|w| [w[0], w[1]]).collect();
    }
    set.tripos = seq.windows(3).map(|w| [w[0], w[1], w[2]]).collect();
    Ok(set)
}

pub fn encode(
    candidate: &CandidateString,
    policy: TruncationPolicy,
    mode: FeatureMode,
    tagset: &Tagset,
) -> Result<FeatureSet> {
    encode_symbols(&truncate(candidate, policy, tagset)?, mode)
}

/// Upper bound on distinct input tuples: `A^3 + A^2` for the stage alphabet size `A`.
pub fn feature_space_bound(tagset: &Tagset, stage: Stage) -> u64 {
    alphabet_bound(tagset.symbol_count(stage) as u64)
}

pub fn alphabet_bound(a: u64) -> u64 {
    a * a * a + a * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::candgen::Placement;
    use crate::resources::Resources;

    fn syms(ts: &Tagset, names: &str) -> Vec<Symbol> {
        names.split_whitespace().map(|n| ts.symbol(n).unwrap()).collect()
    }

    #[test]
    fn truncation_window() {
        let res = Resources::default();
        let ts = &res.mode1;
        let tags = syms(ts, "DET NOUN NOUN NOUN NOUN NOUN MODAL BE ADV VPART PREP NOUN PUNCT");
        let c = CandidateString::assemble(ts, Placement::new(0, 6), tags.clone(), None, true);
        let t = truncate(&c, TruncationPolicy { window: 2 }, ts).unwrap();
        assert_eq!(t, syms(ts, "START OPEN DET NOUN NOUN NOUN NOUN NOUN CLOSE MODAL BE"));
        let t0 = truncate(&c, TruncationPolicy { window: 0 }, ts).unwrap();
        assert_eq!(*t0.last().unwrap(), ts.close());

        let short = syms(ts, "DET NOUN VERB PUNCT");
        let c = CandidateString::assemble(ts, Placement::new(0, 2), short, None, true);
        let t = truncate(&c, TruncationPolicy { window: 5 }, ts).unwrap();
        assert_eq!(t, syms(ts, "START OPEN DET NOUN CLOSE VERB PUNCT"));
    }

    #[test]
    fn truncation_skips_boundaries_in_count() {
        let res = Resources::default();
        let ts = &res.mode2;
        let c = CandidateString {
            symbols: syms(ts, "START OPEN NOUN-sg CLOSE HOPEN MODAL HCLOSE BE-sg PUNCT"),
            placement: Placement::new(0, 1),
            tag_choice: vec![],
            head: None,
            terminal_punct: true,
            source: 0,
        };
        let t = truncate(&c, TruncationPolicy { window: 2 }, ts).unwrap();
        assert_eq!(t, syms(ts, "START OPEN NOUN-sg CLOSE HOPEN MODAL HCLOSE BE-sg"));
    }

    #[test]
    fn encode_counts() {
        let res = Resources::default();
        let ts = &res.mode1;
        let seq = syms(ts, "START OPEN DET NOUN CLOSE VERB");
        let f = encode_symbols(&seq, FeatureMode::Both).unwrap();
        assert_eq!((f.bipos.len(), f.tripos.len()), (5, 4));
        let f = encode_symbols(&seq, FeatureMode::Tripos).unwrap();
        assert!(f.bipos.is_empty());
        assert_eq!(f.tripos.len(), 4);

        let seq = syms(ts, "START NOUN NOUN NOUN");
        let f = encode_symbols(&seq, FeatureMode::Both).unwrap();
        assert_eq!(f.bipos.len(), 2);
        assert_eq!(f.tripos.len(), 2);

        assert!(matches!(
            encode_symbols(&seq[..2], FeatureMode::Both),
            Err(Error::TooShortToEncode(2))
        ));
    }

    #[test]
    fn missing_close() {
        let res = Resources::default();
        let ts = &res.mode1;
        let c = CandidateString {
            symbols: syms(ts, "START NOUN VERB"),
            placement: Placement::new(0, 1),
            tag_choice: vec![],
            head: None,
            terminal_punct: false,
            source: 0,
        };
        assert!(matches!(encode(&c, TruncationPolicy::default(), FeatureMode::Tripos, ts), Err(Error::MissingClose)));
    }

    #[test]
    fn bounds() {
        let res = Resources::default();
        assert_eq!(feature_space_bound(&res.mode2, Stage::Subject), 30752);
        assert_eq!(feature_space_bound(&res.mode1, Stage::Subject), 14400);
        assert_eq!(alphabet_bound(3), 36);
    }

    #[test]
    fn canonical_spelling_round_trip() {
        let res = Resources::default();
        let ts = &res.mode2;
        let f = Feature::Tri([ts.start(), ts.open(), ts.symbol("NOUN-pl").unwrap()]);
        assert_eq!(f.canonical(ts), "t:START,OPEN,NOUN-pl");
        assert_eq!(Feature::parse("t:START,OPEN,NOUN-pl", ts), Some(f));
        let b = Feature::Bi([ts.close(), ts.symbol("MODAL").unwrap()]);
        assert_eq!(Feature::parse(&b.canonical(ts), ts), Some(b));
        assert_eq!(Feature::parse("t:START,OPEN", ts), None);
        assert_eq!(Feature::parse("x:START,OPEN", ts), None);
        assert_eq!(Feature::parse("b:START,NOPE", ts), None);
    }
}
