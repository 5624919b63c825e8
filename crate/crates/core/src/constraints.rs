//! Pruning: generation limits, prohibited tag pairs and triples, the
//! skeletal grammar, and semi-local constraints.
//!
//! Nothing here generates strings. Anything not expressly prohibited is
//! allowed.

use std::collections::HashSet;
use std::fmt;

use regex::Regex;

use crate::candgen::{enumerate_placements, CandidateString};
use crate::error::{Error, Result};
use crate::tagger::TaggedSentence;
use crate::tagset::{Category, Symbol, Tagset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationLimits {
    pub max_pre_subject: usize,
    pub max_subject: usize,
}

impl GenerationLimits {
    pub fn new(max_pre_subject: usize, max_subject: usize) -> Result<GenerationLimits> {
        if max_pre_subject == 0 || max_subject == 0 {
            return Err(Error::invalid("limits", "generation limits must be at least 1"));
        }
        Ok(GenerationLimits {
            max_pre_subject,
            max_subject,
        })
    }
}

impl Default for GenerationLimits {
    fn default() -> Self {
        GenerationLimits {
            max_pre_subject: 15,
            max_subject: 12,
        }
    }
}

/// Adjacent symbol pairs and triples that abort candidate construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProhibitionTable {
    pairs: HashSet<[Symbol; 2]>,
    triples: HashSet<[Symbol; 3]>,
}

impl ProhibitionTable {
    /// Parses `pair A B` / `triple A B C` lines. Symbols may be tag names or
    /// boundary symbols of `tagset`.
    pub fn load(source: &str, tagset: &Tagset) -> Result<ProhibitionTable> {
        const FILE: &str = "prohibitions";
        let mut table = ProhibitionTable::default();
        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let resolve = |name: &str| {
                tagset
                    .symbol(name)
                    .ok_or_else(|| Error::syntax(FILE, line_no, format!("unknown symbol `{name}`")))
            };
            match fields.as_slice() {
                ["pair", a, b] => {
                    table.pairs.insert([resolve(a)?, resolve(b)?]);
                }
                ["triple", a, b, c] => {
                    table.triples.insert([resolve(a)?, resolve(b)?, resolve(c)?]);
                }
                _ => {
                    return Err(Error::syntax(
                        FILE,
                        line_no,
                        "expected `pair A B` or `triple A B C`",
                    ))
                }
            }
        }
        Ok(table)
    }

    pub fn from_tuples(
        pairs: impl IntoIterator<Item = [Symbol; 2]>,
        triples: impl IntoIterator<Item = [Symbol; 3]>,
    ) -> ProhibitionTable {
        ProhibitionTable {
            pairs: pairs.into_iter().collect(),
            triples: triples.into_iter().collect(),
        }
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.triples.is_empty()
    }

    /// `window` holds the last two or three emitted symbols. The trailing
    /// pair is consulted first, then the triple when three symbols are given.
    pub fn tuple_allowed(&self, window: &[Symbol]) -> bool {
        match *window {
            [a, b] => !self.pairs.contains(&[a, b]),
            [a, b, c] => !self.pairs.contains(&[b, c]) && !self.triples.contains(&[a, b, c]),
            _ => panic!("window must hold 2 or 3 symbols, got {}", window.len()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    PreSubject,
    Subject,
    PostSubject,
}

impl Region {
    fn parse(s: &str) -> Option<Region> {
        match s {
            "pre-subject" => Some(Region::PreSubject),
            "subject" => Some(Region::Subject),
            "post-subject" => Some(Region::PostSubject),
            _ => None,
        }
    }

    fn index(self) -> usize {
        match self {
            Region::PreSubject => 0,
            Region::Subject => 1,
            Region::PostSubject => 2,
        }
    }
}

/// A pattern over the tags of one region. Elements are tag names,
/// `@category`, or `.` for any tag, each optionally followed by `*`, `+` or
/// `?`; `^` and `$` anchor at the region edges.
#[derive(Debug, Clone)]
pub struct CustomPattern {
    pub region: Region,
    pub require: bool,
    pub source: String,
    regex: Regex,
}

/// Tags are matched as characters in a private-use block.
fn symbol_char(sym: Symbol) -> char {
    char::from_u32(0xE000 + sym.0 as u32).expect("private use area")
}

impl CustomPattern {
    fn compile(region: Region, require: bool, elements: &[&str], tagset: &Tagset) -> std::result::Result<Self, String> {
        if elements.is_empty() {
            return Err("empty pattern".into());
        }
        let mut re = String::from("(?s)");
        for element in elements {
            match *element {
                "^" => {
                    re.push('^');
                    continue;
                }
                "$" => {
                    re.push('$');
                    continue;
                }
                _ => {}
            }
            let (atom, quant) = match element.char_indices().last() {
                Some((i, q @ ('*' | '+' | '?'))) if i > 0 => (&element[..i], Some(q)),
                _ => (*element, None),
            };
            if atom == "." {
                re.push('.');
            } else if let Some(cat) = atom.strip_prefix('@') {
                let cat = Category::parse(cat).ok_or_else(|| format!("unknown category `{cat}`"))?;
                let members: String = tagset
                    .tag_symbols()
                    .filter(|&s| tagset.category(s) == cat)
                    .map(symbol_char)
                    .collect();
                if members.is_empty() {
                    // matches nothing
                    re.push_str("[^\\s\\S]");
                } else {
                    re.push('[');
                    re.push_str(&members);
                    re.push(']');
                }
            } else {
                let sym = tagset
                    .symbol(atom)
                    .filter(|&s| tagset.is_tag(s))
                    .ok_or_else(|| format!("unknown tag `{atom}`"))?;
                re.push_str(&regex::escape(&symbol_char(sym).to_string()));
            }
            if let Some(q) = quant {
                re.push(q);
            }
        }
        let regex = Regex::new(&re).map_err(|e| e.to_string())?;
        Ok(CustomPattern {
            region,
            require,
            source: elements.join(" "),
            regex,
        })
    }

    fn holds(&self, tags: &[Symbol]) -> bool {
        let text: String = tags.iter().map(|&s| symbol_char(s)).collect();
        self.regex.is_match(&text) == self.require
    }
}

#[derive(Debug, Clone)]
pub enum RuleKind {
    SubjectContainsNoun,
    RelpronRequiresVerb,
    LengthLimit,
    PostSubjectWord,
    CustomPattern(CustomPattern),
}

#[derive(Debug, Clone)]
pub struct GrammarRule {
    pub id: String,
    pub kind: RuleKind,
}

/// Skeletal grammar rules and semi-local constraints, each checked in file order.
#[derive(Debug, Clone, Default)]
pub struct Grammar {
    pub rules: Vec<GrammarRule>,
    pub semilocal: Vec<GrammarRule>,
}

impl Grammar {
    /// Parses `rule <id> <kind> [params]` and `constraint <id> <kind> [params]`
    /// lines. Kinds: `subject-contains-noun`, `relpron-requires-verb`,
    /// `length-limit`, `post-subject-word`, and
    /// `custom-pattern <region> <require|forbid> <elements...>`.
    pub fn load(source: &str, tagset: &Tagset) -> Result<Grammar> {
        const FILE: &str = "grammar";
        let mut grammar = Grammar::default();
        let mut ids = HashSet::new();
        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 3 || !matches!(fields[0], "rule" | "constraint") {
                return Err(Error::syntax(FILE, line_no, "expected `rule|constraint <id> <kind> [params]`"));
            }
            let id = fields[1];
            if !ids.insert(id.to_string()) {
                return Err(Error::syntax(FILE, line_no, format!("duplicate rule id `{id}`")));
            }
            let params = &fields[3..];
            let bare = |kind: RuleKind| {
                if params.is_empty() {
                    Ok(kind)
                } else {
                    Err(Error::syntax(FILE, line_no, format!("`{}` takes no parameters", fields[2])))
                }
            };
            let kind = match fields[2] {
                "subject-contains-noun" => bare(RuleKind::SubjectContainsNoun)?,
                "relpron-requires-verb" => bare(RuleKind::RelpronRequiresVerb)?,
                "length-limit" => bare(RuleKind::LengthLimit)?,
                "post-subject-word" => bare(RuleKind::PostSubjectWord)?,
                "custom-pattern" => {
                    let [region, polarity, elements @ ..] = params else {
                        return Err(Error::syntax(FILE, line_no, "custom-pattern needs <region> <require|forbid> <pattern>"));
                    };
                    let region = Region::parse(region)
                        .ok_or_else(|| Error::syntax(FILE, line_no, format!("unknown region `{region}`")))?;
                    let require = match *polarity {
                        "require" => true,
                        "forbid" => false,
                        other => return Err(Error::syntax(FILE, line_no, format!("expected require|forbid, got `{other}`"))),
                    };
                    let pattern = CustomPattern::compile(region, require, elements, tagset)
                        .map_err(|e| Error::syntax(FILE, line_no, e))?;
                    RuleKind::CustomPattern(pattern)
                }
                other => return Err(Error::syntax(FILE, line_no, format!("unknown rule kind `{other}`"))),
            };
            let rule = GrammarRule {
                id: id.to_string(),
                kind,
            };
            if fields[0] == "rule" {
                grammar.rules.push(rule);
            } else {
                grammar.semilocal.push(rule);
            }
        }
        Ok(grammar)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

fn rule_holds(rule: &GrammarRule, cand: &CandidateString, limits: &GenerationLimits, tagset: &Tagset) -> bool {
    let regions = cand.regions();
    match &rule.kind {
        RuleKind::SubjectContainsNoun => regions[1].iter().any(|&t| tagset.category(t) == Category::Noun),
        RuleKind::RelpronRequiresVerb => regions.iter().all(|r| relpron_followed_by_verb(r, tagset)),
        RuleKind::LengthLimit => {
            let p = cand.placement;
            p.pre_subject_len() < limits.max_pre_subject && (1..=limits.max_subject).contains(&p.subject_len())
        }
        RuleKind::PostSubjectWord => {
            let after = regions[2].len();
            after > usize::from(cand.terminal_punct)
        }
        RuleKind::CustomPattern(p) => p.holds(regions[p.region.index()]),
    }
}

fn relpron_followed_by_verb(tags: &[Symbol], tagset: &Tagset) -> bool {
    let mut pending = false;
    for &t in tags {
        match tagset.category(t) {
            Category::Relpron => pending = true,
            Category::Verb => pending = false,
            _ => {}
        }
    }
    !pending
}

/// Checks the skeletal grammar; reports the first violated rule.
pub fn check_grammar(
    candidate: &CandidateString,
    grammar: &Grammar,
    limits: &GenerationLimits,
    tagset: &Tagset,
) -> Verdict {
    for rule in &grammar.rules {
        if !rule_holds(rule, candidate, limits, tagset) {
            return Verdict::Fail(rule.id.clone());
        }
    }
    Verdict::Pass
}

/// Checks the semi-local constraints. Each constituent delimited by the
/// subject brackets is checked on its own.
pub fn check_semilocal(candidate: &CandidateString, grammar: &Grammar, tagset: &Tagset) -> Verdict {
    let limits = GenerationLimits {
        max_pre_subject: usize::MAX,
        max_subject: usize::MAX,
    };
    for rule in &grammar.semilocal {
        if !rule_holds(rule, candidate, &limits, tagset) {
            return Verdict::Fail(rule.id.clone());
        }
    }
    Verdict::Pass
}

/// Why a sentence was not parsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExclusionReason {
    TooShort,
    PreSubjectTooLong,
    NoCandidates,
    NoHeadCandidate,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::TooShort => "too-short",
            ExclusionReason::PreSubjectTooLong => "pre-subject-too-long",
            ExclusionReason::NoCandidates => "no-candidates",
            ExclusionReason::NoHeadCandidate => "no-head-candidate",
        }
    }
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rejects sentences for which no placement can host a noun-type subject
/// within the limits.
pub fn exclusion_check(
    sentence: &TaggedSentence,
    limits: &GenerationLimits,
    tagset: &Tagset,
) -> std::result::Result<(), ExclusionReason> {
    let placements = enumerate_placements(sentence.len(), sentence.terminal_punct, limits);
    if placements.is_empty() {
        return Err(ExclusionReason::TooShort);
    }
    let noun_capable: Vec<bool> = sentence
        .tokens
        .iter()
        .map(|t| t.tags.iter().any(|&s| tagset.category(s) == Category::Noun))
        .collect();
    let reachable = placements
        .iter()
        .any(|p| p.subject().any(|i| noun_capable[i]));
    if reachable {
        Ok(())
    } else {
        Err(ExclusionReason::PreSubjectTooLong)
    }
}
