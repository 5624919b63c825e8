mod common;

use hodyne::candgen::{generate_candidates, CandidateString, Placement};
use hodyne::encoder::{encode, encode_symbols, Feature, FeatureMode, TruncationPolicy};
use hodyne::net::{update_factor, update_weight, Direction, Label, LinkPair, SingleLayerNet, TrainingItem};
use hodyne::pipeline::{evaluate, load_corpus, Config, Parser, Status};
use hodyne::resources::{Resources, CORPUS};
use hodyne::tagger::tokenize;
use hodyne::tagset::{Category, Stage, Symbol};
use proptest::prelude::*;
use std::sync::OnceLock;

fn res() -> &'static Resources {
    static RES: OnceLock<Resources> = OnceLock::new();
    RES.get_or_init(Resources::default)
}

proptest! {
    #[test]
    fn update_factor_is_bounded_and_directed(w in 1e-9f64..=100.0) {
        let up = update_factor(w, Direction::Strengthen);
        let down = update_factor(w, Direction::Weaken);
        prop_assert!(up > 1.0 && up < 2.0);
        prop_assert!(down > 0.0 && down < 1.0);
        prop_assert!(update_weight(w, Direction::Strengthen) > w);
        let lowered = update_weight(w, Direction::Weaken);
        prop_assert!(lowered > 0.0 && lowered < w);
    }

    #[test]
    fn repeated_weakening_stays_positive(w in 1e-3f64..=10.0, n in 1usize..500) {
        let mut x = w;
        for _ in 0..n {
            x = update_weight(x, Direction::Weaken);
        }
        prop_assert!(x > 0.0);
    }

    #[test]
    fn tokenize_keeps_every_visible_character(text in "[A-Za-z0-9 ,.;:!?()'-]{1,60}") {
        prop_assume!(!text.trim().is_empty());
        let tokens = tokenize(&text).unwrap();
        let joined: String = tokens.concat();
        let visible: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(joined, visible);
        prop_assert!(tokens.iter().all(|t| !t.is_empty() && !t.contains(char::is_whitespace)));
    }

    #[test]
    fn interior_symbols_sit_in_two_pairs_and_three_triples(len in 5usize..20, offset in 0u16..8) {
        // Distinct symbols, so windows never collapse.
        let seq: Vec<Symbol> = (0..len as u16).map(|i| Symbol(i + offset)).collect();
        let f = encode_symbols(&seq, FeatureMode::Both).unwrap();
        prop_assert_eq!(f.tripos.len(), len - 2);
        prop_assert_eq!(f.bipos.len(), len - 1);
        for &s in &seq[2..len - 2] {
            prop_assert_eq!(f.bipos.iter().filter(|w| w.contains(&s)).count(), 2);
            prop_assert_eq!(f.tripos.iter().filter(|w| w.contains(&s)).count(), 3);
        }
    }

    #[test]
    fn gamma_scales_with_weights(weights in prop::collection::vec((0.01f64..5.0, 0.01f64..5.0), 1..12), c in 0.01f64..10.0) {
        let ts = &res().mode1;
        let mut net = SingleLayerNet::new(ts, Stage::Subject, FeatureMode::Tripos);
        let seq: Vec<Symbol> = (0..weights.len() as u16 + 2).map(Symbol).collect();
        let feats = encode_symbols(&seq, FeatureMode::Tripos).unwrap();
        for (f, &(y, n)) in feats.iter().zip(&weights) {
            net.set_link(f, LinkPair { yes: Some(y), no: Some(n) });
        }
        let before = net.gamma(&feats);
        net.scale(c);
        let after = net.gamma(&feats);
        prop_assert!((after - c * before).abs() <= 1e-9 * (1.0 + after.abs()));
    }

    #[test]
    fn random_training_keeps_weights_positive(
        trace in prop::collection::vec((prop::collection::vec(0u16..6, 3..7), any::<bool>()), 1..40),
        cycles in 1usize..30,
    ) {
        let ts = &res().mode1;
        let items: Vec<TrainingItem> = trace
            .iter()
            .map(|(seq, correct)| TrainingItem {
                features: encode_symbols(&seq.iter().map(|&s| Symbol(s)).collect::<Vec<_>>(), FeatureMode::Both).unwrap(),
                label: if *correct { Label::Correct } else { Label::Incorrect },
            })
            .collect();
        let mut net = SingleLayerNet::new(ts, Stage::Subject, FeatureMode::Both);
        let config = hodyne::TrainConfig { threshold: 1.1, max_cycles: cycles };
        net.train(&items, config).unwrap();
        let (lo, _) = net.weight_range().unwrap();
        prop_assert!(lo > 0.0);
    }

    #[test]
    fn training_is_deterministic(seed in 0u64..1000) {
        let ts = &res().mode1;
        let items: Vec<TrainingItem> = (0..30u64)
            .map(|i| {
                let x = seed.wrapping_mul(31).wrapping_add(i * 7919);
                let seq: Vec<Symbol> = (0..5).map(|k| Symbol(((x >> (k * 3)) % 21) as u16)).collect();
                TrainingItem {
                    features: encode_symbols(&seq, FeatureMode::Both).unwrap(),
                    label: if x % 3 == 0 { Label::Correct } else { Label::Incorrect },
                }
            })
            .collect();
        let run = || {
            let mut net = SingleLayerNet::new(ts, Stage::Subject, FeatureMode::Both);
            net.train(&items, Default::default()).unwrap();
            net.to_text(ts).unwrap()
        };
        prop_assert_eq!(run(), run());
    }
}

#[test]
fn error_free_pass_changes_nothing() {
    let ts = &res().mode1;
    let item = |seq: [u16; 4], label| TrainingItem {
        features: encode_symbols(&seq.map(Symbol), FeatureMode::Tripos).unwrap(),
        label,
    };
    let items = [item([0, 1, 2, 3], Label::Correct), item([4, 5, 6, 7], Label::Incorrect)];
    let mut net = SingleLayerNet::new(ts, Stage::Subject, FeatureMode::Tripos);
    let config = hodyne::TrainConfig { threshold: 1.0, max_cycles: 50 };
    let stats = net.train(&items, config).unwrap();
    assert_eq!(*stats.errors_per_cycle.last().unwrap(), 0);
    let before = net.to_text(ts).unwrap();
    let again = net.train(&items, hodyne::TrainConfig { threshold: 1.0, max_cycles: 1 }).unwrap();
    assert_eq!(again.errors_per_cycle, [0]);
    assert_eq!(net.to_text(ts).unwrap(), before);
}

#[test]
fn unseen_tuples_score_zero() {
    let ts = &res().mode1;
    let mut net = SingleLayerNet::new(ts, Stage::Subject, FeatureMode::Tripos);
    net.set_link(Feature::Tri([Symbol(0), Symbol(1), Symbol(2)]), LinkPair { yes: Some(2.0), no: Some(0.5) });
    let unseen = encode_symbols(&[Symbol(5), Symbol(6), Symbol(7), Symbol(8)], FeatureMode::Both).unwrap();
    assert_eq!(net.gamma(&unseen), 0.0);
}

/// Any net, even one that knows nothing or holds arbitrary weights, picks a
/// legal placement and a noun-type head inside the subject.
#[test]
fn selections_respect_invariants_for_arbitrary_nets() {
    let res = res();
    let config = Config::default();
    let corpus = load_corpus(CORPUS, res).unwrap();
    let zero_s = SingleLayerNet::new(&res.mode1, Stage::Subject, FeatureMode::Tripos);
    let zero_h = SingleLayerNet::new(&res.mode2, Stage::Head, FeatureMode::Tripos);
    let mut odd_s = zero_s.clone();
    let mut odd_h = zero_h.clone();
    // Arbitrary weights keyed off the tuple symbols.
    for entry in corpus.iter().take(40) {
        let s = res.lexicon.tag_sentence(&entry.text()).unwrap();
        for c in generate_candidates(&s, &res.limits, &res.prohibitions, &res.grammar, &res.mode1) {
            for f in encode(&c, config.window, config.features, &res.mode1).unwrap().iter() {
                let Feature::Tri([a, b, d]) = f else { continue };
                let w = f64::from((a.0 * 7 + b.0 * 13 + d.0 * 3) % 17) / 4.0 + 0.1;
                odd_s.set_link(f, LinkPair { yes: Some(w), no: Some(2.0) });
            }
        }
    }
    for (i, t) in res.mode2.tag_symbols().enumerate() {
        let f = Feature::Tri([res.mode2.hopen(), t, res.mode2.hclose()]);
        odd_h.set_link(f, LinkPair { yes: Some(i as f64), no: None });
    }
    for (s_net, h_net) in [(&zero_s, &zero_h), (&odd_s, &odd_h)] {
        let parser = Parser::new(res, &config, s_net, h_net).unwrap();
        for entry in &corpus {
            let s = res.lexicon.tag_sentence(&entry.text()).unwrap();
            let r = parser.parse_sentence(&s);
            if r.status != Status::Parsed {
                continue;
            }
            let p = r.subject.expect("parsed results carry a subject");
            assert!(p.is_legal(s.len(), s.terminal_punct, &res.limits));
            let h = r.head.expect("parsed results carry a head");
            assert!(p.subject().contains(&h));
            assert_eq!(res.mode2.category(r.head_tag.unwrap()), Category::Noun);
        }
    }
}

#[test]
fn evaluation_is_order_independent() {
    let res = res();
    let config = Config::default();
    let corpus = load_corpus(CORPUS, res).unwrap();
    let (s_net, _, _) = hodyne::pipeline::train_stage(&corpus[..100], Stage::Subject, res, &config).unwrap();
    let (h_net, _, _) = hodyne::pipeline::train_stage(&corpus[..100], Stage::Head, res, &config).unwrap();
    let parser = Parser::new(res, &config, &s_net, &h_net).unwrap();
    let forward = evaluate(&corpus, &parser);
    let mut reversed = corpus.clone();
    reversed.reverse();
    reversed.rotate_left(37);
    assert_eq!(forward, evaluate(&reversed, &parser));
    assert_eq!(forward, evaluate(&corpus, &parser));
}

#[test]
fn one_correct_item_per_usable_entry() {
    let res = res();
    let config = Config::default();
    let corpus = load_corpus(CORPUS, res).unwrap();
    for stage in [Stage::Subject, Stage::Head] {
        let set = hodyne::pipeline::build_training_set(&corpus, stage, res, &config).unwrap();
        let usable = corpus.len() - set.faults.len() - set.excluded.len();
        assert_eq!(set.used_entries, usable);
        assert_eq!(set.correct_count(), usable);
    }
}

#[test]
fn candidate_helper_matches_truncation_window() {
    let ts = &res().mode1;
    let tags: Vec<Symbol> = ["DET", "NOUN", "VERB", "DET", "NOUN", "PUNCT"].iter().map(|n| ts.symbol(n).unwrap()).collect();
    let c = CandidateString::assemble(ts, Placement::new(0, 2), tags, None, true);
    let f = encode(&c, TruncationPolicy { window: 2 }, FeatureMode::Tripos, ts).unwrap();
    // START OPEN DET NOUN CLOSE VERB DET
    assert_eq!(f.tripos.len(), 5);
}
