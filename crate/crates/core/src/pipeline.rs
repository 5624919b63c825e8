//! Two-stage orchestration: find the subject, then its head.
//!
//! Also builds training items from gold markup, scores a corpus, and runs
//! the autodidactic check that flags gold entries a net trained on them
//! still disagrees with.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::candgen::{
    count_expansions, generate_candidates, generate_head_candidates, CandidateString, Expansions, Placement,
};
use crate::constraints::{exclusion_check, ExclusionReason};
use crate::encoder::{encode, truncate, FeatureMode, FeatureSet, TruncationPolicy};
use crate::error::{Error, Result};
use crate::net::{Label, SingleLayerNet, TrainConfig, TrainStats, TrainingItem};
use crate::resources::Resources;
use crate::tagger::TaggedSentence;
use crate::tagset::{Category, Number, Stage, Symbol, Tagset};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub window: TruncationPolicy,
    pub features: FeatureMode,
    pub train: TrainConfig,
    /// Drop excluded sentences from accuracy denominators.
    pub exclude_from_denominator: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            window: TruncationPolicy::default(),
            features: FeatureMode::default(),
            train: TrainConfig::default(),
            exclude_from_denominator: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldToken {
    pub form: String,
    /// Mode-1 gold tag.
    pub tag: Symbol,
    /// Optional mode-2 gold tag.
    pub mode2: Option<Symbol>,
}

/// One hand-marked sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldEntry {
    pub tokens: Vec<GoldToken>,
    pub subject: Placement,
    pub head: usize,
}

impl GoldEntry {
    /// Parses one corpus line: `form/TAG` or `form/TAG/TAG2` tokens with
    /// standalone `[S`, `S]`, `[H`, `H]` markers.
    pub fn parse(line: &str, mode1: &Tagset, mode2: &Tagset) -> std::result::Result<GoldEntry, String> {
        let mut tokens = Vec::new();
        let (mut s_open, mut s_close, mut h_open, mut h_close) = (None, None, None, None);
        for item in line.split_whitespace() {
            let slot = match item {
                "[S" => &mut s_open,
                "S]" => &mut s_close,
                "[H" => &mut h_open,
                "H]" => &mut h_close,
                _ => {
                    let parts: Vec<&str> = item.split('/').collect();
                    let (form, tag, tag2) = match parts.as_slice() {
                        [form, tag] => (*form, *tag, None),
                        [form, tag, tag2] => (*form, *tag, Some(*tag2)),
                        _ => return Err(format!("token `{item}` is not form/TAG or form/TAG/TAG2")),
                    };
                    if form.is_empty() {
                        return Err(format!("token `{item}` has an empty form"));
                    }
                    let tag = mode1
                        .symbol(tag)
                        .filter(|&s| mode1.is_tag(s))
                        .ok_or_else(|| format!("unknown mode-1 tag `{tag}`"))?;
                    let mode2_tag = match tag2 {
                        None => None,
                        Some(name) => {
                            let sym = mode2
                                .symbol(name)
                                .filter(|&s| mode2.is_tag(s))
                                .ok_or_else(|| format!("unknown mode-2 tag `{name}`"))?;
                            if mode2.project(sym, mode1) != Some(tag) {
                                return Err(format!("mode-2 tag `{name}` does not refine `{}`", mode1.name(tag)));
                            }
                            Some(sym)
                        }
                    };
                    tokens.push(GoldToken {
                        form: form.to_string(),
                        tag,
                        mode2: mode2_tag,
                    });
                    continue;
                }
            };
            if slot.is_some() {
                return Err(format!("marker `{item}` appears twice"));
            }
            *slot = Some(tokens.len());
        }
        let (Some(open), Some(close)) = (s_open, s_close) else {
            return Err("missing subject markers `[S` / `S]`".into());
        };
        let (Some(h_open), Some(h_close)) = (h_open, h_close) else {
            return Err("missing head markers `[H` / `H]`".into());
        };
        if close <= open {
            return Err("subject is empty or its markers are reversed".into());
        }
        if h_close != h_open + 1 {
            return Err("head markers must enclose exactly one token".into());
        }
        let head = h_open;
        if !(open..close).contains(&head) {
            return Err("head lies outside the subject".into());
        }
        if mode1.category(tokens[head].tag) != Category::Noun {
            return Err(format!("head `{}` is not noun-type", tokens[head].form));
        }
        Ok(GoldEntry {
            tokens,
            subject: Placement::new(open, close),
            head,
        })
    }

    /// Sentence text as the tagger should see it; joined units are split back.
    pub fn text(&self) -> String {
        self.tokens
            .iter()
            .map(|t| t.form.replace('_', " "))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn forms(&self) -> Vec<String> {
        self.tokens.iter().map(|t| t.form.clone()).collect()
    }

    pub fn tags(&self) -> Vec<Symbol> {
        self.tokens.iter().map(|t| t.tag).collect()
    }

    pub fn render(&self) -> String {
        render_brackets(&self.forms(), Some(self.subject), Some(self.head))
    }

    /// Tags the text with the lexicon and checks that the tokens line up with
    /// the gold tokens and that every gold tag was proposed.
    pub fn retag(&self, res: &Resources) -> std::result::Result<TaggedSentence, String> {
        let sentence = res.lexicon.tag_sentence(&self.text()).map_err(|e| e.to_string())?;
        if sentence.forms() != self.tokens.iter().map(|t| t.form.as_str()).collect::<Vec<_>>() {
            return Err(format!("tokenizer output `{}` differs from gold tokens", sentence.forms().join(" ")));
        }
        for (tok, gold) in sentence.tokens.iter().zip(&self.tokens) {
            if !tok.tags.contains(&gold.tag) {
                return Err(format!(
                    "lexicon does not propose gold tag {} for `{}`",
                    res.mode1.name(gold.tag),
                    gold.form
                ));
            }
            if let Some(t2) = gold.mode2 {
                if !tok.mode2_tags.contains(&t2) {
                    return Err(format!(
                        "lexicon does not propose gold mode-2 tag {} for `{}`",
                        res.mode2.name(t2),
                        gold.form
                    ));
                }
            }
        }
        Ok(sentence)
    }
}

/// Reads a gold corpus, one sentence per line. Blank and `#` lines are skipped.
pub fn load_corpus(source: &str, res: &Resources) -> Result<Vec<GoldEntry>> {
    let mut out = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let entry = GoldEntry::parse(line, &res.mode1, &res.mode2).map_err(|m| Error::syntax("corpus", idx + 1, m))?;
        out.push(entry);
    }
    Ok(out)
}

/// Renders forms with `[ ... ]` around the subject and, nested, the head.
pub fn render_brackets(forms: &[String], subject: Option<Placement>, head: Option<usize>) -> String {
    let mut out: Vec<&str> = Vec::with_capacity(forms.len() + 4);
    for (i, form) in forms.iter().enumerate() {
        if subject.is_some_and(|p| p.open_before == i) {
            out.push("[");
        }
        if head == Some(i) {
            out.extend(["[", form, "]"]);
        } else {
            out.push(form);
        }
        if subject.is_some_and(|p| p.close_after == i + 1) {
            out.push("]");
        }
    }
    out.join(" ")
}

#[derive(Debug, Clone)]
pub struct SubjectChoice {
    pub candidate: CandidateString,
    pub gammas: Vec<f64>,
    pub expansions: Expansions,
    pub n_candidates: usize,
}

/// Exclusion check, pruned generation, encoding, and selection.
pub fn find_subject(
    sentence: &TaggedSentence,
    net: &SingleLayerNet,
    res: &Resources,
    config: &Config,
) -> std::result::Result<SubjectChoice, ExclusionReason> {
    exclusion_check(sentence, &res.limits, &res.mode1)?;
    let expansions = count_expansions(sentence, &res.limits);
    let candidates = generate_candidates(sentence, &res.limits, &res.prohibitions, &res.grammar, &res.mode1);
    if candidates.is_empty() {
        return Err(ExclusionReason::NoCandidates);
    }
    let features = encode_all(&candidates, config, &res.mode1);
    let (winner, gammas) = net.select(&features).expect("candidates are non-empty");
    let n_candidates = candidates.len();
    Ok(SubjectChoice {
        candidate: candidates.into_iter().nth(winner).expect("winner in range"),
        gammas,
        expansions,
        n_candidates,
    })
}

fn encode_all(candidates: &[CandidateString], config: &Config, tagset: &Tagset) -> Vec<FeatureSet> {
    candidates
        .iter()
        .map(|c| encode(c, config.window, config.features, tagset).expect("candidates hold START, OPEN and CLOSE"))
        .collect()
}

/// Mode-2 options of each token, restricted to refinements of the chosen
/// mode-1 tag. Falls back to every refinement when the lexicon offers none.
pub fn mode2_options(sentence: &TaggedSentence, chosen: &[Symbol], res: &Resources) -> Vec<Vec<Symbol>> {
    sentence
        .tokens
        .iter()
        .zip(chosen)
        .map(|(tok, &tag)| {
            let fitting: Vec<Symbol> = tok
                .mode2_tags
                .iter()
                .copied()
                .filter(|&t2| res.mode2.project(t2, &res.mode1) == Some(tag))
                .collect();
            if fitting.is_empty() {
                res.mode2.refinements(tag, &res.mode1)
            } else {
                fitting
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct HeadChoice {
    /// Winning head-stage candidate, over the mode-2 alphabet.
    pub candidate: CandidateString,
    pub head: usize,
    pub head_tag: Symbol,
    pub gammas: Vec<f64>,
    pub n_candidates: usize,
}

/// Retags in mode 2, hypothesises each noun-type subject token as head, and
/// lets the head net choose. No prohibitions are applied at this stage.
pub fn find_head(
    sentence: &TaggedSentence,
    subject: &CandidateString,
    net: &SingleLayerNet,
    res: &Resources,
    config: &Config,
) -> std::result::Result<HeadChoice, ExclusionReason> {
    let options = mode2_options(sentence, &subject.tag_choice, res);
    let candidates = generate_head_candidates(subject, &options, &res.mode2);
    if candidates.is_empty() {
        return Err(ExclusionReason::NoHeadCandidate);
    }
    let features = encode_all(&candidates, config, &res.mode2);
    let (winner, gammas) = net.select(&features).expect("candidates are non-empty");
    let n_candidates = candidates.len();
    let candidate = candidates.into_iter().nth(winner).expect("winner in range");
    let head = candidate.head.expect("head candidates carry a head");
    Ok(HeadChoice {
        head_tag: candidate.tag_choice[head],
        head,
        candidate,
        gammas,
        n_candidates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    Unknown,
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::Unknown => "unknown",
        }
    }
}

/// Number agreement between two mode-2 tags.
pub fn assess_agreement(head_tag: Symbol, verb_tag: Symbol, mode2: &Tagset) -> Agreement {
    match (mode2.number(head_tag), mode2.number(verb_tag)) {
        (Number::Unmarked, _) | (_, Number::Unmarked) => Agreement::Unknown,
        (a, b) if a == b => Agreement::Agree,
        _ => Agreement::Disagree,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Parsed,
    Excluded(ExclusionReason),
}

#[derive(Debug, Clone)]
pub struct ParseResult {
    pub forms: Vec<String>,
    pub status: Status,
    pub subject: Option<Placement>,
    pub head: Option<usize>,
    /// Chosen mode-1 tags, empty when the subject stage excluded the sentence.
    pub tags: Vec<Symbol>,
    pub head_tag: Option<Symbol>,
    /// Mode-2 tag of the first verb-type token after the subject.
    pub verb_tag: Option<Symbol>,
    pub agreement: Option<Agreement>,
    pub subject_gammas: Vec<f64>,
    pub head_gammas: Vec<f64>,
    pub expansions: Option<Expansions>,
    pub subject_candidates: usize,
    pub head_candidates: usize,
}

impl ParseResult {
    fn excluded(forms: Vec<String>, reason: ExclusionReason) -> ParseResult {
        ParseResult {
            forms,
            status: Status::Excluded(reason),
            subject: None,
            head: None,
            tags: Vec::new(),
            head_tag: None,
            verb_tag: None,
            agreement: None,
            subject_gammas: Vec::new(),
            head_gammas: Vec::new(),
            expansions: None,
            subject_candidates: 0,
            head_candidates: 0,
        }
    }

    pub fn is_parsed(&self) -> bool {
        self.status == Status::Parsed
    }

    /// `[ Still waters ] run deep .`
    pub fn render_subject(&self) -> String {
        render_brackets(&self.forms, self.subject, None)
    }

    /// Subject and head brackets together.
    pub fn render(&self) -> String {
        render_brackets(&self.forms, self.subject, self.head)
    }

    pub fn head_form(&self) -> Option<&str> {
        self.head.map(|h| self.forms[h].as_str())
    }
}

/// Resources, configuration, and both trained nets.
#[derive(Debug, Clone, Copy)]
pub struct Parser<'a> {
    pub res: &'a Resources,
    pub config: &'a Config,
    pub subject_net: &'a SingleLayerNet,
    pub head_net: &'a SingleLayerNet,
}

impl<'a> Parser<'a> {
    pub fn new(
        res: &'a Resources,
        config: &'a Config,
        subject_net: &'a SingleLayerNet,
        head_net: &'a SingleLayerNet,
    ) -> Result<Parser<'a>> {
        for (net, stage, tagset) in [(subject_net, Stage::Subject, &res.mode1), (head_net, Stage::Head, &res.mode2)] {
            if net.stage() != stage {
                return Err(Error::StageMismatch {
                    expected: stage.to_string(),
                    found: net.stage().to_string(),
                });
            }
            if net.tagset_id() != tagset.identity() {
                return Err(Error::TagsetMismatch {
                    expected: tagset.identity(),
                    found: net.tagset_id().to_string(),
                });
            }
        }
        Ok(Parser {
            res,
            config,
            subject_net,
            head_net,
        })
    }

    pub fn parse_text(&self, text: &str) -> Result<ParseResult> {
        let sentence = self.res.lexicon.tag_sentence(text)?;
        Ok(self.parse_sentence(&sentence))
    }

    pub fn parse_sentence(&self, sentence: &TaggedSentence) -> ParseResult {
        let forms: Vec<String> = sentence.tokens.iter().map(|t| t.form.clone()).collect();
        let subject = match find_subject(sentence, self.subject_net, self.res, self.config) {
            Ok(s) => s,
            Err(reason) => return ParseResult::excluded(forms, reason),
        };
        let mut result = ParseResult {
            forms,
            status: Status::Parsed,
            subject: Some(subject.candidate.placement),
            head: None,
            tags: subject.candidate.tag_choice.clone(),
            head_tag: None,
            verb_tag: None,
            agreement: None,
            subject_gammas: subject.gammas,
            head_gammas: Vec::new(),
            expansions: Some(subject.expansions),
            subject_candidates: subject.n_candidates,
            head_candidates: 0,
        };
        match find_head(sentence, &subject.candidate, self.head_net, self.res, self.config) {
            Ok(head) => {
                let mode2 = &self.res.mode2;
                let verb = head.candidate.tag_choice[head.candidate.placement.close_after..]
                    .iter()
                    .copied()
                    .find(|&t| mode2.category(t) == Category::Verb);
                result.head = Some(head.head);
                result.head_tag = Some(head.head_tag);
                result.verb_tag = verb;
                result.agreement = verb.map(|v| assess_agreement(head.head_tag, v, mode2));
                result.head_gammas = head.gammas;
                result.head_candidates = head.n_candidates;
            }
            Err(reason) => result.status = Status::Excluded(reason),
        }
        result
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFault {
    pub entry: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct TrainingSet {
    pub items: Vec<TrainingItem>,
    pub faults: Vec<CorpusFault>,
    pub excluded: Vec<(usize, ExclusionReason)>,
    /// Entries that contributed items.
    pub used_entries: usize,
}

impl TrainingSet {
    pub fn correct_count(&self) -> usize {
        self.items.iter().filter(|i| i.label == Label::Correct).count()
    }
}

/// Labels each candidate of each gold entry: the one matching the gold markup
/// is correct, the rest incorrect. Incorrect candidates whose truncated
/// string equals the gold one, or repeats an earlier incorrect one, are
/// dropped because the net cannot tell them apart.
pub fn build_training_set(corpus: &[GoldEntry], stage: Stage, res: &Resources, config: &Config) -> Result<TrainingSet> {
    if corpus.is_empty() {
        return Err(Error::NoTrainingItems);
    }
    let mut set = TrainingSet::default();
    for (idx, entry) in corpus.iter().enumerate() {
        let sentence = match entry.retag(res) {
            Ok(s) => s,
            Err(reason) => {
                set.faults.push(CorpusFault { entry: idx, reason });
                continue;
            }
        };
        let outcome = match stage {
            Stage::Subject => subject_candidates(entry, &sentence, res),
            Stage::Head => head_candidates(entry, &sentence, res),
        };
        let (candidates, gold, tagset) = match outcome {
            Ok(Ok(found)) => found,
            Ok(Err(reason)) => {
                set.excluded.push((idx, reason));
                continue;
            }
            Err(reason) => {
                set.faults.push(CorpusFault { entry: idx, reason });
                continue;
            }
        };
        let gold_seq = truncate(&candidates[gold], config.window, tagset)?;
        let mut seen = HashSet::new();
        for (i, cand) in candidates.iter().enumerate() {
            let seq = truncate(cand, config.window, tagset)?;
            let label = if i == gold {
                Label::Correct
            } else if seq == gold_seq || !seen.insert(seq) {
                continue;
            } else {
                Label::Incorrect
            };
            set.items.push(TrainingItem {
                features: encode(cand, config.window, config.features, tagset)?,
                label,
            });
        }
        set.used_entries += 1;
    }
    Ok(set)
}

type StageCandidates<'t> = (Vec<CandidateString>, usize, &'t Tagset);

fn subject_candidates<'t>(
    entry: &GoldEntry,
    sentence: &TaggedSentence,
    res: &'t Resources,
) -> std::result::Result<std::result::Result<StageCandidates<'t>, ExclusionReason>, String> {
    if let Err(reason) = exclusion_check(sentence, &res.limits, &res.mode1) {
        return Ok(Err(reason));
    }
    let candidates = generate_candidates(sentence, &res.limits, &res.prohibitions, &res.grammar, &res.mode1);
    if candidates.is_empty() {
        return Ok(Err(ExclusionReason::NoCandidates));
    }
    let gold_tags = entry.tags();
    let gold = candidates
        .iter()
        .position(|c| c.placement == entry.subject && c.tag_choice == gold_tags)
        .ok_or_else(|| {
            let gold = CandidateString::assemble(&res.mode1, entry.subject, gold_tags, None, sentence.terminal_punct);
            format!("gold candidate `{}` was pruned", gold.render(&res.mode1))
        })?;
    Ok(Ok((candidates, gold, &res.mode1)))
}

fn head_candidates<'t>(
    entry: &GoldEntry,
    sentence: &TaggedSentence,
    res: &'t Resources,
) -> std::result::Result<std::result::Result<StageCandidates<'t>, ExclusionReason>, String> {
    if !entry.subject.is_legal(sentence.len(), sentence.terminal_punct, &res.limits) {
        return Err("gold subject placement is outside the generation limits".into());
    }
    let gold_tags = entry.tags();
    let mut options = mode2_options(sentence, &gold_tags, res);
    for (opts, tok) in options.iter_mut().zip(&entry.tokens) {
        if let Some(t2) = tok.mode2 {
            *opts = vec![t2];
        }
    }
    let subject = CandidateString::assemble(&res.mode1, entry.subject, gold_tags, None, sentence.terminal_punct);
    let candidates = generate_head_candidates(&subject, &options, &res.mode2);
    if candidates.is_empty() {
        return Ok(Err(ExclusionReason::NoHeadCandidate));
    }
    let gold = candidates
        .iter()
        .position(|c| c.head == Some(entry.head))
        .ok_or_else(|| format!("no head candidate at gold head `{}`", entry.tokens[entry.head].form))?;
    Ok(Ok((candidates, gold, &res.mode2)))
}

/// Builds the stage's training set and trains a fresh net on it.
pub fn train_stage(
    corpus: &[GoldEntry],
    stage: Stage,
    res: &Resources,
    config: &Config,
) -> Result<(SingleLayerNet, TrainStats, TrainingSet)> {
    let set = build_training_set(corpus, stage, res, config)?;
    let tagset = match stage {
        Stage::Subject => &res.mode1,
        Stage::Head => &res.mode2,
    };
    let mut net = SingleLayerNet::new(tagset, stage, config.features);
    let stats = net.train(&set.items, config.train)?;
    Ok((net, stats, set))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    pub n_sentences: usize,
    pub n_faults: usize,
    pub excluded: BTreeMap<ExclusionReason, usize>,
    pub subject_found: usize,
    pub measure_a: usize,
    pub subject_and_head: usize,
    pub total_candidates: usize,
    pub max_candidates: usize,
    pub single_candidate: usize,
    pub exclude_from_denominator: bool,
}

impl EvalReport {
    pub fn n_excluded(&self) -> usize {
        self.excluded.values().sum()
    }

    /// Sentences that reached the net.
    pub fn n_parsed(&self) -> usize {
        self.n_sentences - self.n_faults - self.n_excluded()
    }

    pub fn denominator(&self) -> usize {
        if self.exclude_from_denominator {
            self.n_parsed()
        } else {
            self.n_sentences - self.n_faults
        }
    }

    fn frac(num: usize, den: usize) -> f64 {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    pub fn excluded_fraction(&self) -> f64 {
        Self::frac(self.n_excluded(), self.n_sentences - self.n_faults)
    }

    pub fn subject_found_fraction(&self) -> f64 {
        Self::frac(self.subject_found, self.denominator())
    }

    pub fn measure_a_fraction(&self) -> f64 {
        Self::frac(self.measure_a, self.denominator())
    }

    pub fn subject_and_head_fraction(&self) -> f64 {
        Self::frac(self.subject_and_head, self.denominator())
    }

    pub fn mean_candidates(&self) -> f64 {
        Self::frac(self.total_candidates, self.n_parsed())
    }

    pub fn single_candidate_fraction(&self) -> f64 {
        Self::frac(self.single_candidate, self.n_parsed())
    }

    /// Aligned human-readable table.
    pub fn render_table(&self) -> String {
        let pct = |f: f64| format!("{:.1}%", 100.0 * f);
        let rows = [
            ("sentences", self.n_sentences.to_string()),
            ("corpus faults", self.n_faults.to_string()),
            ("excluded", format!("{} ({})", self.n_excluded(), pct(self.excluded_fraction()))),
            ("subject found", pct(self.subject_found_fraction())),
            ("correct measure A", pct(self.measure_a_fraction())),
            ("subject and head found", pct(self.subject_and_head_fraction())),
            ("mean candidates", format!("{:.2}", self.mean_candidates())),
            ("max candidates", self.max_candidates.to_string()),
            ("single candidate", pct(self.single_candidate_fraction())),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v:>12}");
        }
        out
    }

    /// `key=value` lines.
    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sentences={}", self.n_sentences);
        let _ = writeln!(out, "faults={}", self.n_faults);
        let _ = writeln!(out, "excluded={}", self.n_excluded());
        for (reason, n) in &self.excluded {
            let _ = writeln!(out, "excluded.{reason}={n}");
        }
        let _ = writeln!(out, "excluded_fraction={:.6}", self.excluded_fraction());
        let _ = writeln!(out, "denominator={}", self.denominator());
        let _ = writeln!(out, "subject_found={:.6}", self.subject_found_fraction());
        let _ = writeln!(out, "measure_a={:.6}", self.measure_a_fraction());
        let _ = writeln!(out, "subject_and_head={:.6}", self.subject_and_head_fraction());
        let _ = writeln!(out, "mean_candidates={:.6}", self.mean_candidates());
        let _ = writeln!(out, "max_candidates={}", self.max_candidates);
        let _ = writeln!(out, "single_candidate_fraction={:.6}", self.single_candidate_fraction());
        out
    }
}

/// Outcome of parsing one gold entry.
#[derive(Debug, Clone)]
pub enum Scored {
    Fault(String),
    Excluded(ExclusionReason),
    Parsed {
        result: ParseResult,
        subject_found: bool,
        measure_a: bool,
        head_found: bool,
    },
}

pub fn score_entry(entry: &GoldEntry, parser: &Parser<'_>) -> Scored {
    let sentence = match entry.retag(parser.res) {
        Ok(s) => s,
        Err(reason) => return Scored::Fault(reason),
    };
    let result = parser.parse_sentence(&sentence);
    if let Status::Excluded(reason) = result.status {
        return Scored::Excluded(reason);
    }
    let subject_found = result.subject == Some(entry.subject);
    let p = entry.subject;
    let measure_a = subject_found && result.tags[p.subject()] == entry.tags()[p.subject()];
    let head_found = subject_found && result.head == Some(entry.head);
    Scored::Parsed {
        result,
        subject_found,
        measure_a,
        head_found,
    }
}

pub fn evaluate(corpus: &[GoldEntry], parser: &Parser<'_>) -> EvalReport {
    let mut report = EvalReport {
        n_sentences: corpus.len(),
        exclude_from_denominator: parser.config.exclude_from_denominator,
        ..EvalReport::default()
    };
    for entry in corpus {
        match score_entry(entry, parser) {
            Scored::Fault(_) => report.n_faults += 1,
            Scored::Excluded(reason) => *report.excluded.entry(reason).or_default() += 1,
            Scored::Parsed {
                result,
                subject_found,
                measure_a,
                head_found,
            } => {
                report.subject_found += usize::from(subject_found);
                report.measure_a += usize::from(measure_a);
                report.subject_and_head += usize::from(head_found);
                report.total_candidates += result.subject_candidates;
                report.max_candidates = report.max_candidates.max(result.subject_candidates);
                report.single_candidate += usize::from(result.subject_candidates == 1);
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub entry: usize,
    pub gold: String,
    pub predicted: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub flagged: Vec<Flag>,
    pub excluded: Vec<(usize, String)>,
    pub faults: Vec<CorpusFault>,
}

/// Reparses the corpus the nets were trained on and flags every entry whose
/// subject or head selection disagrees with its markup.
pub fn autodidactic_check(corpus: &[GoldEntry], parser: &Parser<'_>) -> CheckReport {
    let mut report = CheckReport::default();
    for (idx, entry) in corpus.iter().enumerate() {
        match score_entry(entry, parser) {
            Scored::Fault(reason) => report.faults.push(CorpusFault { entry: idx, reason }),
            Scored::Excluded(reason) => report.excluded.push((idx, reason.to_string())),
            Scored::Parsed {
                result,
                subject_found,
                head_found,
                ..
            } => {
                if !(subject_found && head_found) {
                    report.flagged.push(Flag {
                        entry: idx,
                        gold: entry.render(),
                        predicted: result.render(),
                    });
                }
            }
        }
    }
    report
}
