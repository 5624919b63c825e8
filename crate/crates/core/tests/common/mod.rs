//! Shared oracles and fixtures for the integration tests.

#![allow(dead_code)]

use hodyne::candgen::{CandidateString, Placement};
use hodyne::constraints::{check_grammar, check_semilocal, GenerationLimits, Grammar, ProhibitionTable, Verdict};
use hodyne::tagger::{TaggedSentence, Token};
use hodyne::tagset::{Symbol, Tagset};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// Placements by direct enumeration of every (open, close) pair.
pub fn oracle_placements(n: usize, terminal: bool, limits: &GenerationLimits) -> Vec<Placement> {
    let last = if terminal { n.saturating_sub(1) } else { n };
    let mut out = Vec::new();
    for open in 0..n {
        for close in open + 1..=n {
            let fits = open < limits.max_pre_subject && close - open <= limits.max_subject && close < last;
            if fits {
                out.push(Placement::new(open, close));
            }
        }
    }
    out
}

/// Every placement and tag choice, assembled in full, then filtered.
pub fn oracle_candidates(
    sentence: &TaggedSentence,
    limits: &GenerationLimits,
    table: &ProhibitionTable,
    grammar: &Grammar,
    tagset: &Tagset,
) -> Vec<(Placement, Vec<Symbol>)> {
    let mut out: Vec<(Placement, Vec<Symbol>)> = Vec::new();
    for p in oracle_placements(sentence.len(), sentence.terminal_punct, limits) {
        let choices = sentence.tokens.iter().map(|t| t.tags.clone()).multi_cartesian_product();
        for choice in choices {
            let mut symbols = vec![tagset.start()];
            for (i, &tag) in choice.iter().enumerate() {
                if i == p.open_before {
                    symbols.push(tagset.open());
                }
                symbols.push(tag);
                if i + 1 == p.close_after {
                    symbols.push(tagset.close());
                }
            }
            let pairs_ok = symbols.windows(2).all(|w| table.tuple_allowed(w));
            let triples_ok = symbols.windows(3).all(|w| table.tuple_allowed(w));
            if !(pairs_ok && triples_ok) {
                continue;
            }
            let cand = CandidateString {
                symbols: symbols.clone(),
                placement: p,
                tag_choice: choice.clone(),
                head: None,
                terminal_punct: sentence.terminal_punct,
                source: 0,
            };
            if check_grammar(&cand, grammar, limits, tagset) != Verdict::Pass
                || check_semilocal(&cand, grammar, tagset) != Verdict::Pass
            {
                continue;
            }
            if !out.iter().any(|(_, s)| *s == symbols) {
                out.push((p, symbols));
            }
        }
    }
    out
}

pub fn sentence_from_tags(tags: Vec<Vec<Symbol>>, terminal: bool) -> TaggedSentence {
    let n = tags.len();
    let tokens = tags
        .into_iter()
        .enumerate()
        .map(|(i, tags)| Token {
            form: if terminal && i + 1 == n { ".".to_string() } else { format!("w{i}") },
            mode2_tags: tags.clone(),
            tags,
            joined_from: None,
        })
        .collect();
    TaggedSentence::new(tokens)
}

/// Random sentence of 2..=12 tokens with one or two tags per token.
pub fn random_sentence(rng: &mut impl Rng, tagset: &Tagset) -> TaggedSentence {
    let all: Vec<Symbol> = tagset.tag_symbols().collect();
    let punct = tagset.symbol("PUNCT").expect("PUNCT tag");
    let n = rng.gen_range(2..=12);
    let terminal = rng.gen_bool(0.7);
    let mut tags: Vec<Vec<Symbol>> = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            let mut t: Vec<Symbol> = all.choose_multiple(rng, k).copied().collect();
            t.sort();
            t
        })
        .collect();
    if terminal {
        tags[n - 1] = vec![punct];
    }
    sentence_from_tags(tags, terminal)
}

/// Small random prohibition table over the subject-stage alphabet.
pub fn random_table(rng: &mut impl Rng, tagset: &Tagset) -> ProhibitionTable {
    let alphabet: Vec<Symbol> = tagset.tag_symbols().chain([tagset.start(), tagset.open(), tagset.close()]).collect();
    let n_pairs = rng.gen_range(0..=30);
    let n_triples = rng.gen_range(0..=30);
    let mut pick = || *alphabet.choose(rng).expect("non-empty");
    let pairs: Vec<[Symbol; 2]> = (0..n_pairs).map(|_| [pick(), pick()]).collect();
    let triples: Vec<[Symbol; 3]> = (0..n_triples).map(|_| [pick(), pick(), pick()]).collect();
    ProhibitionTable::from_tuples(pairs, triples)
}
