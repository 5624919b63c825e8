//! Lexicon-driven tagging front end.
//!
//! Every token receives the full set of tags it could take in both modes.
//! Disambiguation is left to candidate selection downstream.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tagset::{Category, Symbol, Tagset};

/// Forms treated as end-of-sentence marks.
pub const TERMINAL_FORMS: [&str; 3] = [".", "!", "?"];

/// Candidate tags of one word in both modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagSets {
    pub mode1: Vec<Symbol>,
    pub mode2: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub form: String,
    /// Mode-1 candidate tags, sorted, never empty.
    pub tags: Vec<Symbol>,
    /// Mode-2 candidate tags, sorted, never empty.
    pub mode2_tags: Vec<Symbol>,
    pub joined_from: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub tokens: Vec<Token>,
    pub terminal_punct: bool,
}

impl TaggedSentence {
    pub fn new(tokens: Vec<Token>) -> TaggedSentence {
        let terminal_punct = tokens
            .last()
            .is_some_and(|t| TERMINAL_FORMS.contains(&t.form.as_str()));
        TaggedSentence {
            tokens,
            terminal_punct,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn forms(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.form.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinMatch {
    Tag(Symbol),
    Category(Category),
}

/// Joins `<form> <next>` into one lexical unit when the next token can take
/// the given tag or category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinRule {
    pub form: String,
    pub next: JoinMatch,
    pub tags: TagSets,
}

impl JoinRule {
    fn matches(&self, first: &Token, second: &Token, mode1: &Tagset) -> bool {
        if first.form.to_lowercase() != self.form {
            return false;
        }
        match self.next {
            JoinMatch::Tag(sym) => second.tags.contains(&sym),
            JoinMatch::Category(cat) => second.tags.iter().any(|&s| mode1.category(s) == cat),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    mode1: Tagset,
    mode2: Tagset,
    words: HashMap<String, TagSets>,
    /// Longest suffix first.
    suffixes: Vec<(String, TagSets)>,
    default: TagSets,
    joins: Vec<JoinRule>,
}

impl Lexicon {
    /// Parses a lexicon file against the two tagsets.
    ///
    /// Lines are `word <form> <TAGS>`, `suffix <string> <TAGS>`,
    /// `default <TAGS>` and `join <form> <TAG|@category> -> <TAGS>`, where
    /// `<TAGS>` is a comma-separated mode-1 list optionally followed by a
    /// mode-2 list. Without the mode-2 list every number refinement of the
    /// mode-1 tags is allowed.
    pub fn load(source: &str, mode1: &Tagset, mode2: &Tagset) -> Result<Lexicon> {
        const FILE: &str = "lexicon";
        let mut words = HashMap::new();
        let mut suffixes = Vec::new();
        let mut default = None;
        let mut joins = Vec::new();

        let tag_sets = |fields: &[&str], line: usize| -> Result<TagSets> {
            let (m1, m2) = match fields {
                [m1] => (*m1, None),
                [m1, m2] => (*m1, Some(*m2)),
                _ => return Err(Error::syntax(FILE, line, "expected mode-1 tags and optional mode-2 tags")),
            };
            let mode1_tags = mode1.parse_tag_list(m1, FILE, line)?;
            let mode2_tags = match m2 {
                Some(list) => {
                    let tags = mode2.parse_tag_list(list, FILE, line)?;
                    for &t in &tags {
                        let fits = mode2
                            .project(t, mode1)
                            .is_some_and(|p| mode1_tags.contains(&p));
                        if !fits {
                            return Err(Error::syntax(
                                FILE,
                                line,
                                format!("mode-2 tag `{}` refines none of the mode-1 tags", mode2.name(t)),
                            ));
                        }
                    }
                    tags
                }
                None => {
                    let mut tags: Vec<Symbol> = mode1_tags
                        .iter()
                        .flat_map(|&t| mode2.refinements(t, mode1))
                        .collect();
                    tags.sort();
                    tags.dedup();
                    if tags.is_empty() {
                        return Err(Error::syntax(FILE, line, "no mode-2 refinement for these tags"));
                    }
                    tags
                }
            };
            Ok(TagSets {
                mode1: mode1_tags,
                mode2: mode2_tags,
            })
        };

        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "word" if fields.len() >= 3 => {
                    let form = fields[1].to_lowercase();
                    let sets = tag_sets(&fields[2..], line_no)?;
                    if words.insert(form, sets).is_some() {
                        return Err(Error::syntax(FILE, line_no, format!("duplicate word `{}`", fields[1])));
                    }
                }
                "suffix" if fields.len() >= 3 => {
                    let sets = tag_sets(&fields[2..], line_no)?;
                    suffixes.push((fields[1].to_lowercase(), sets));
                }
                "default" if fields.len() >= 2 => {
                    if default.is_some() {
                        return Err(Error::syntax(FILE, line_no, "default declared twice"));
                    }
                    default = Some(tag_sets(&fields[1..], line_no)?);
                }
                "join" if fields.len() >= 5 && fields[3] == "->" => {
                    let next = match fields[2].strip_prefix('@') {
                        Some(cat) => JoinMatch::Category(Category::parse(cat).ok_or_else(|| {
                            Error::syntax(FILE, line_no, format!("unknown category `{cat}`"))
                        })?),
                        None => JoinMatch::Tag(mode1.symbol(fields[2]).filter(|&s| mode1.is_tag(s)).ok_or_else(
                            || Error::syntax(FILE, line_no, format!("unknown tag `{}`", fields[2])),
                        )?),
                    };
                    joins.push(JoinRule {
                        form: fields[1].to_lowercase(),
                        next,
                        tags: tag_sets(&fields[4..], line_no)?,
                    });
                }
                _ => return Err(Error::syntax(FILE, line_no, format!("malformed lexicon line `{line}`"))),
            }
        }

        let default = default.ok_or_else(|| Error::invalid(FILE, "missing `default` line"))?;
        suffixes.sort_by_key(|s| std::cmp::Reverse(s.0.chars().count()));
        Ok(Lexicon {
            mode1: mode1.clone(),
            mode2: mode2.clone(),
            words,
            suffixes,
            default,
            joins,
        })
    }

    pub fn mode1(&self) -> &Tagset {
        &self.mode1
    }

    pub fn mode2(&self) -> &Tagset {
        &self.mode2
    }

    pub fn join_rules(&self) -> &[JoinRule] {
        &self.joins
    }

    /// Lexicon entry, else longest matching suffix rule, else the default set.
    pub fn tag_token(&self, form: &str) -> &TagSets {
        let lower = form.to_lowercase();
        if let Some(sets) = self.words.get(&lower) {
            return sets;
        }
        self.suffixes
            .iter()
            .find(|(suffix, _)| lower.len() > suffix.len() && lower.ends_with(suffix.as_str()))
            .map(|(_, sets)| sets)
            .unwrap_or(&self.default)
    }

    pub fn token(&self, form: &str) -> Token {
        let sets = self.tag_token(form);
        Token {
            form: form.to_string(),
            tags: sets.mode1.clone(),
            mode2_tags: sets.mode2.clone(),
            joined_from: None,
        }
    }

    pub fn tag_sentence(&self, text: &str) -> Result<TaggedSentence> {
        let tokens = tokenize(text)?
            .iter()
            .map(|form| self.token(form))
            .collect();
        Ok(TaggedSentence::new(join_multiwords(tokens, &self.joins, &self.mode1)))
    }
}

/// Splits on whitespace and detaches leading and trailing punctuation, one
/// token per punctuation character.
pub fn tokenize(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let Some(first) = chars.iter().position(|c| c.is_alphanumeric()) else {
            out.extend(chars.iter().map(|c| c.to_string()));
            continue;
        };
        let last = chars.iter().rposition(|c| c.is_alphanumeric()).unwrap_or(first);
        out.extend(chars[..first].iter().map(|c| c.to_string()));
        out.push(chars[first..=last].iter().collect());
        out.extend(chars[last + 1..].iter().map(|c| c.to_string()));
    }
    if out.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(out)
}

/// Left-to-right, non-overlapping greedy joining of adjacent token pairs.
pub fn join_multiwords(tokens: Vec<Token>, rules: &[JoinRule], mode1: &Tagset) -> Vec<Token> {
    let mut out = Vec::with_capacity(tokens.len());
    let mut iter = tokens.into_iter().peekable();
    while let Some(tok) = iter.next() {
        let rule = iter
            .peek()
            .and_then(|next| rules.iter().find(|r| r.matches(&tok, next, mode1)));
        match rule {
            Some(rule) => {
                let next = iter.next().expect("peeked");
                out.push(Token {
                    form: format!("{}_{}", tok.form, next.form),
                    tags: rule.tags.mode1.clone(),
                    mode2_tags: rule.tags.mode2.clone(),
                    joined_from: Some(vec![tok.form, next.form]),
                });
            }
            None => out.push(tok),
        }
    }
    out
}
