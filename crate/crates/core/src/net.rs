//! Single-layer, two-output net over sparse tuple features.
//!
//! Links are created lazily: a tuple gets a link to an output only when it
//! is presented in training with that output as the desired answer. Training
//! is error driven. A miss multiplies every link of the item's tuples by a
//! bounded factor, up on the desired side and down on the other side.

use std::collections::HashMap;
use std::io::Write;
use std::time::{Duration, Instant};

use crate::encoder::{Feature, FeatureMode, FeatureSet};
use crate::error::{Error, Result};
use crate::tagset::{Stage, Tagset};

const MAGIC: &str = "hodyne-net v1";

/// Weight range observed in practice after training; outside it is unusual.
pub const TYPICAL_WEIGHT_RANGE: (f64, f64) = (1e-3, 5.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Strengthen,
    Weaken,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Strengthen => 1.0,
            Direction::Weaken => -1.0,
        }
    }
}

/// Multiplicative update factor `1 + d*w / (1 + (d*w)^4)` with `d = ±1`.
pub fn update_factor(w: f64, direction: Direction) -> f64 {
    let x = direction.sign() * w;
    1.0 + x / (1.0 + x.powi(4))
}

pub fn update_weight(w: f64, direction: Direction) -> f64 {
    update_factor(w, direction) * w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Correct,
    Incorrect,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingItem {
    pub features: FeatureSet,
    pub label: Label,
}

/// Weights on the links from one tuple to the yes and no outputs.
/// `None` is a disabled link.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkPair {
    pub yes: Option<f64>,
    pub no: Option<f64>,
}

impl LinkPair {
    fn side(&mut self, label: Label) -> &mut Option<f64> {
        match label {
            Label::Correct => &mut self.yes,
            Label::Incorrect => &mut self.no,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub threshold: f64,
    pub max_cycles: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            threshold: 0.97,
            max_cycles: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainStats {
    pub cycles: usize,
    /// Online accuracy of the last pass.
    pub accuracy: f64,
    pub errors_per_cycle: Vec<usize>,
    pub wall_time: Duration,
    pub link_count: usize,
    pub converged: bool,
    pub weight_range: Option<(f64, f64)>,
}

impl TrainStats {
    pub fn weights_typical(&self) -> bool {
        self.weight_range
            .is_none_or(|(lo, hi)| lo > TYPICAL_WEIGHT_RANGE.0 && hi < TYPICAL_WEIGHT_RANGE.1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingleLayerNet {
    links: HashMap<Feature, LinkPair>,
    mode: FeatureMode,
    stage: Stage,
    tagset_id: String,
    trained: bool,
}

impl SingleLayerNet {
    pub fn new(tagset: &Tagset, stage: Stage, mode: FeatureMode) -> SingleLayerNet {
        SingleLayerNet {
            links: HashMap::new(),
            mode,
            stage,
            tagset_id: tagset.identity(),
            trained: false,
        }
    }

    pub fn mode(&self) -> FeatureMode {
        self.mode
    }

    pub fn stage(&self) -> Stage {
        self.stage
    }

    pub fn tagset_id(&self) -> &str {
        &self.tagset_id
    }

    pub fn is_trained(&self) -> bool {
        self.trained
    }

    /// Number of tuples with at least one enabled link.
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn link(&self, feature: &Feature) -> Option<LinkPair> {
        self.links.get(feature).copied()
    }

    pub fn set_link(&mut self, feature: Feature, links: LinkPair) {
        if links.yes.is_none() && links.no.is_none() {
            self.links.remove(&feature);
        } else {
            self.links.insert(feature, links);
        }
    }

    /// Multiplies every enabled weight by `c`.
    pub fn scale(&mut self, c: f64) {
        for pair in self.links.values_mut() {
            pair.yes = pair.yes.map(|w| w * c);
            pair.no = pair.no.map(|w| w * c);
        }
    }

    pub fn weight_range(&self) -> Option<(f64, f64)> {
        self.links
            .values()
            .flat_map(|p| [p.yes, p.no])
            .flatten()
            .fold(None, |acc, w| match acc {
                None => Some((w, w)),
                Some((lo, hi)) => Some((lo.min(w), hi.max(w))),
            })
    }

    /// Summed link weights into the yes and no outputs. Unseen tuples and
    /// disabled links contribute nothing.
    pub fn forward(&self, features: &FeatureSet) -> (f64, f64) {
        let mut yes = 0.0;
        let mut no = 0.0;
        for f in features.iter() {
            if let Some(pair) = self.links.get(&f) {
                yes += pair.yes.unwrap_or(0.0);
                no += pair.no.unwrap_or(0.0);
            }
        }
        (yes, no)
    }

    /// Grammaticality score: yes activation minus no activation.
    pub fn gamma(&self, features: &FeatureSet) -> f64 {
        let (yes, no) = self.forward(features);
        yes - no
    }

    /// Presents one item; returns whether the desired output won. A tie is
    /// a miss.
    pub fn train_item(&mut self, item: &TrainingItem) -> bool {
        for f in item.features.iter() {
            let pair = self.links.entry(f).or_default();
            pair.side(item.label).get_or_insert(1.0);
        }
        let (yes, no) = self.forward(&item.features);
        let hit = match item.label {
            Label::Correct => yes > no,
            Label::Incorrect => no > yes,
        };
        if hit {
            return true;
        }
        let wrong = match item.label {
            Label::Correct => Label::Incorrect,
            Label::Incorrect => Label::Correct,
        };
        for f in item.features.iter() {
            let pair = self.links.get_mut(&f).expect("link created above");
            if let Some(w) = pair.side(item.label) {
                *w = update_weight(*w, Direction::Strengthen);
            }
            if let Some(w) = pair.side(wrong) {
                *w = update_weight(*w, Direction::Weaken);
            }
        }
        false
    }

    /// Full passes over `items` in order until the online accuracy of a pass
    /// reaches the threshold or `max_cycles` passes have run.
    pub fn train(&mut self, items: &[TrainingItem], config: TrainConfig) -> Result<TrainStats> {
        if items.is_empty() {
            return Err(Error::NoTrainingItems);
        }
        let started = Instant::now();
        let mut errors_per_cycle = Vec::new();
        let mut accuracy = 0.0;
        let mut converged = false;
        while errors_per_cycle.len() < config.max_cycles {
            let misses = items.iter().filter(|item| !self.train_item(item)).count();
            errors_per_cycle.push(misses);
            accuracy = (items.len() - misses) as f64 / items.len() as f64;
            if accuracy >= config.threshold {
                converged = true;
                break;
            }
        }
        self.trained = true;
        Ok(TrainStats {
            cycles: errors_per_cycle.len(),
            accuracy,
            errors_per_cycle,
            wall_time: started.elapsed(),
            link_count: self.links.len(),
            converged,
            weight_range: self.weight_range(),
        })
    }

    /// Index of the highest score, lowest index on ties, with every score.
    pub fn select(&self, candidates: &[FeatureSet]) -> Result<(usize, Vec<f64>)> {
        if candidates.is_empty() {
            return Err(Error::NoCandidates);
        }
        let gammas: Vec<f64> = candidates.iter().map(|f| self.gamma(f)).collect();
        let mut best = 0;
        for (i, &g) in gammas.iter().enumerate().skip(1) {
            if g > gammas[best] {
                best = i;
            }
        }
        Ok((best, gammas))
    }

    /// Writes the text weight file. Lines are sorted by canonical tuple.
    pub fn save<W: Write>(&self, tagset: &Tagset, mut sink: W) -> Result<()> {
        if !self.trained {
            return Err(Error::Untrained);
        }
        self.check_tagset(tagset)?;
        writeln!(
            sink,
            "{MAGIC} mode={} tagset={} stage={}",
            self.mode, self.tagset_id, self.stage
        )?;
        let mut lines: Vec<(String, LinkPair)> = self
            .links
            .iter()
            .map(|(f, pair)| (f.canonical(tagset), *pair))
            .collect();
        lines.sort_by(|a, b| a.0.cmp(&b.0));
        let weight = |w: Option<f64>| w.map_or_else(|| "-".to_string(), |w| format!("{w:?}"));
        for (name, pair) in lines {
            writeln!(sink, "{name} {} {}", weight(pair.yes), weight(pair.no))?;
        }
        Ok(())
    }

    pub fn to_text(&self, tagset: &Tagset) -> Result<String> {
        let mut buf = Vec::new();
        self.save(tagset, &mut buf)?;
        Ok(String::from_utf8(buf).expect("weight files are UTF-8"))
    }

    /// Reads a weight file written for `tagset`. The result is marked trained.
    pub fn load(source: &str, tagset: &Tagset) -> Result<SingleLayerNet> {
        const FILE: &str = "net";
        let mut lines = source.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::invalid(FILE, "empty weight file"))?;
        let rest = header
            .strip_prefix(MAGIC)
            .ok_or_else(|| Error::syntax(FILE, 1, format!("header must start with `{MAGIC}`")))?;
        let mut mode = None;
        let mut tagset_id = None;
        let mut stage = None;
        for field in rest.split_whitespace() {
            match field.split_once('=') {
                Some(("mode", v)) => mode = FeatureMode::parse(v),
                Some(("tagset", v)) => tagset_id = Some(v.to_string()),
                Some(("stage", v)) => stage = Stage::parse(v),
                _ => return Err(Error::syntax(FILE, 1, format!("unexpected header field `{field}`"))),
            }
        }
        let (Some(mode), Some(tagset_id), Some(stage)) = (mode, tagset_id, stage) else {
            return Err(Error::syntax(FILE, 1, "header needs mode=, tagset= and stage="));
        };
        if tagset_id != tagset.identity() {
            return Err(Error::TagsetMismatch {
                expected: tagset.identity(),
                found: tagset_id,
            });
        }

        let mut links = HashMap::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [tuple, yes, no] = fields.as_slice() else {
                return Err(Error::syntax(FILE, line_no, "expected `<tuple> <w_yes|-> <w_no|->`"));
            };
            let feature = Feature::parse(tuple, tagset)
                .ok_or_else(|| Error::syntax(FILE, line_no, format!("bad tuple `{tuple}`")))?;
            let weight = |s: &str| -> Result<Option<f64>> {
                if s == "-" {
                    return Ok(None);
                }
                let w: f64 = s
                    .parse()
                    .map_err(|_| Error::syntax(FILE, line_no, format!("bad weight `{s}`")))?;
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::syntax(FILE, line_no, format!("weight `{s}` must be finite and non-negative")));
                }
                Ok(Some(w))
            };
            let pair = LinkPair {
                yes: weight(yes)?,
                no: weight(no)?,
            };
            if links.insert(feature, pair).is_some() {
                return Err(Error::syntax(FILE, line_no, format!("duplicate tuple `{tuple}`")));
            }
        }
        Ok(SingleLayerNet {
            links,
            mode,
            stage,
            tagset_id,
            trained: true,
        })
    }

    fn check_tagset(&self, tagset: &Tagset) -> Result<()> {
        if self.tagset_id != tagset.identity() {
            return Err(Error::TagsetMismatch {
                expected: tagset.identity(),
                found: self.tagset_id.clone(),
            });
        }
        Ok(())
    }
}
