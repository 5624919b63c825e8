//! Candidate string generation.
//!
//! For the subject stage every tag disambiguation is combined with every
//! legal OPEN/CLOSE placement. Construction runs left to right and a branch
//! is abandoned as soon as the trailing pair or triple is prohibited, so the
//! full cross product is never materialized.

use std::collections::HashSet;
use std::ops::Range;

use crate::constraints::{check_grammar, check_semilocal, GenerationLimits, Grammar, ProhibitionTable, Verdict};
use crate::tagger::TaggedSentence;
use crate::tagset::{Category, Symbol, Tagset};

/// Subject boundary placement.
///
/// `open_before` is the number of pre-subject tokens; the subject covers the
/// token indices `open_before..close_after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub open_before: usize,
    pub close_after: usize,
}

impl Placement {
    pub fn new(open_before: usize, close_after: usize) -> Placement {
        Placement {
            open_before,
            close_after,
        }
    }

    pub fn pre_subject_len(&self) -> usize {
        self.open_before
    }

    pub fn subject_len(&self) -> usize {
        self.close_after - self.open_before
    }

    pub fn subject(&self) -> Range<usize> {
        self.open_before..self.close_after
    }

    /// Whether this placement satisfies the limits for a sentence of
    /// `n_tokens` tokens.
    pub fn is_legal(&self, n_tokens: usize, terminal_punct: bool, limits: &GenerationLimits) -> bool {
        let last_word = if terminal_punct { n_tokens.saturating_sub(1) } else { n_tokens };
        self.close_after > self.open_before
            && self.open_before < limits.max_pre_subject
            && self.subject_len() <= limits.max_subject
            && self.close_after < last_word
    }
}

/// One fully disambiguated tag string with boundary symbols inserted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateString {
    pub symbols: Vec<Symbol>,
    pub placement: Placement,
    /// Chosen tag for each token, in order.
    pub tag_choice: Vec<Symbol>,
    /// Head token index, for head-stage candidates.
    pub head: Option<usize>,
    pub terminal_punct: bool,
    /// Index of the sentence this candidate was generated from.
    pub source: usize,
}

impl CandidateString {
    /// Lays out the symbol sequence for a placement, tag choice and optional head.
    pub fn assemble(
        tagset: &Tagset,
        placement: Placement,
        tag_choice: Vec<Symbol>,
        head: Option<usize>,
        terminal_punct: bool,
    ) -> CandidateString {
        let mut symbols = Vec::with_capacity(tag_choice.len() + 5);
        symbols.push(tagset.start());
        for (i, &tag) in tag_choice.iter().enumerate() {
            if i == placement.open_before {
                symbols.push(tagset.open());
            }
            if head == Some(i) {
                symbols.push(tagset.hopen());
                symbols.push(tag);
                symbols.push(tagset.hclose());
            } else {
                symbols.push(tag);
            }
            if i + 1 == placement.close_after {
                symbols.push(tagset.close());
            }
        }
        CandidateString {
            symbols,
            placement,
            tag_choice,
            head,
            terminal_punct,
            source: 0,
        }
    }

    /// Space-separated symbol names, e.g. `START ADV OPEN DET NOUN CLOSE ...`.
    pub fn render(&self, tagset: &Tagset) -> String {
        self.symbols
            .iter()
            .map(|&s| tagset.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Tags of the tokens before the subject, inside it, and after it.
    pub fn regions(&self) -> [&[Symbol]; 3] {
        let p = self.placement;
        [
            &self.tag_choice[..p.open_before],
            &self.tag_choice[p.open_before..p.close_after],
            &self.tag_choice[p.close_after..],
        ]
    }
}

/// All legal placements ordered by `(open_before, close_after)`.
pub fn enumerate_placements(n_tokens: usize, terminal_punct: bool, limits: &GenerationLimits) -> Vec<Placement> {
    let mut out = Vec::new();
    for open in 0..limits.max_pre_subject.min(n_tokens) {
        for len in 1..=limits.max_subject {
            let p = Placement::new(open, open + len);
            if p.is_legal(n_tokens, terminal_punct, limits) {
                out.push(p);
            }
        }
    }
    out
}

/// Size of the unpruned search space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expansions {
    pub count: u64,
    /// The true count exceeds `u64::MAX`; `count` is saturated.
    pub saturated: bool,
}

/// Product of per-token tag-set sizes times the number of placements.
pub fn count_expansions(sentence: &TaggedSentence, limits: &GenerationLimits) -> Expansions {
    let placements = enumerate_placements(sentence.len(), sentence.terminal_punct, limits).len() as u64;
    let mut count: Option<u64> = Some(placements);
    for tok in &sentence.tokens {
        count = count.and_then(|c| c.checked_mul(tok.tags.len() as u64));
    }
    match count {
        Some(count) => Expansions {
            count,
            saturated: false,
        },
        None => Expansions {
            count: u64::MAX,
            saturated: true,
        },
    }
}

struct Generator<'a> {
    sentence: &'a TaggedSentence,
    table: &'a ProhibitionTable,
    grammar: &'a Grammar,
    limits: &'a GenerationLimits,
    tagset: &'a Tagset,
    placement: Placement,
    symbols: Vec<Symbol>,
    choice: Vec<Symbol>,
    seen: HashSet<Vec<Symbol>>,
    out: Vec<CandidateString>,
}

impl Generator<'_> {
    /// Pushes `sym` and reports whether the trailing pair and triple are allowed.
    fn emit(&mut self, sym: Symbol) -> bool {
        self.symbols.push(sym);
        let n = self.symbols.len();
        let window = &self.symbols[n.saturating_sub(3)..];
        window.len() < 2 || self.table.tuple_allowed(window)
    }

    fn extend(&mut self, pos: usize) {
        let n = self.sentence.len();
        if pos == n {
            self.finish();
            return;
        }
        let mark = self.symbols.len();
        if pos == self.placement.open_before && !self.emit(self.tagset.open()) {
            self.symbols.truncate(mark);
            return;
        }
        let inner = self.symbols.len();
        for &tag in &self.sentence.tokens[pos].tags {
            let ok = self.emit(tag)
                && (pos + 1 != self.placement.close_after || self.emit(self.tagset.close()));
            if ok {
                self.choice.push(tag);
                self.extend(pos + 1);
                self.choice.pop();
            }
            self.symbols.truncate(inner);
        }
        self.symbols.truncate(mark);
    }

    fn finish(&mut self) {
        let candidate = CandidateString {
            symbols: self.symbols.clone(),
            placement: self.placement,
            tag_choice: self.choice.clone(),
            head: None,
            terminal_punct: self.sentence.terminal_punct,
            source: 0,
        };
        if check_grammar(&candidate, self.grammar, self.limits, self.tagset) != Verdict::Pass {
            return;
        }
        if check_semilocal(&candidate, self.grammar, self.tagset) != Verdict::Pass {
            return;
        }
        if self.seen.insert(candidate.symbols.clone()) {
            self.out.push(candidate);
        }
    }
}

/// Subject-stage candidates in enumeration order: placements outermost, then
/// tag choices with the first token varying slowest.
pub fn generate_candidates(
    sentence: &TaggedSentence,
    limits: &GenerationLimits,
    table: &ProhibitionTable,
    grammar: &Grammar,
    tagset: &Tagset,
) -> Vec<CandidateString> {
    let mut gen = Generator {
        sentence,
        table,
        grammar,
        limits,
        tagset,
        placement: Placement::new(0, 1),
        symbols: Vec::with_capacity(sentence.len() + 3),
        choice: Vec::with_capacity(sentence.len()),
        seen: HashSet::new(),
        out: Vec::new(),
    };
    for placement in enumerate_placements(sentence.len(), sentence.terminal_punct, limits) {
        gen.placement = placement;
        gen.symbols.clear();
        gen.symbols.push(tagset.start());
        gen.extend(0);
    }
    gen.out
}

/// Head-stage candidates for a fixed subject.
///
/// `mode2_tags[i]` holds the mode-2 options of token `i`. Tokens other than
/// the hypothesised head take their first option. One candidate is produced
/// for every noun-category option of every token inside the subject.
pub fn generate_head_candidates(
    subject: &CandidateString,
    mode2_tags: &[Vec<Symbol>],
    tagset: &Tagset,
) -> Vec<CandidateString> {
    let base: Vec<Symbol> = mode2_tags.iter().map(|opts| opts[0]).collect();
    let mut out = Vec::new();
    for pos in subject.placement.subject() {
        for &tag in &mode2_tags[pos] {
            if tagset.category(tag) != Category::Noun {
                continue;
            }
            let mut choice = base.clone();
            choice[pos] = tag;
            let mut cand =
                CandidateString::assemble(tagset, subject.placement, choice, Some(pos), subject.terminal_punct);
            cand.source = subject.source;
            out.push(cand);
        }
    }
    out
}
