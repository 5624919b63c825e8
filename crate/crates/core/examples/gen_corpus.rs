//! Writes a synthetic gold corpus of maintenance-manual sentences to stdout.
//!
//! Usage: `cargo run --example gen_corpus -- [count] [seed] > data/corpus.txt`

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const FIXED: &[&str] = &[
    "If/SUBCONJ a/DET cooler/NOUN is/BE fitted/VPART to/PREP the/DET gearbox/NOUN ,/COMMA [S the/DET pipe/NOUN [H connections/NOUN/NOUN-pl H] of/PREP the/DET cooler/NOUN S] must/MODAL be/BE regularly/ADV checked/VPART for/PREP corrosion/NOUN ./PUNCT",
    "[S Still/ADJ [H waters/NOUN/NOUN-pl H] S] run/VERB deep/ADV ./PUNCT",
    "Then/ADV [S the/DET [H performance/NOUN/NOUN-sg H] of/PREP the/DET pump/NOUN S] must/MODAL be/BE monitored/VPART ./PUNCT",
];

const NOUNS: &[(&str, &str)] = &[
    ("pump", "pumps"),
    ("engine", "engines"),
    ("filter", "filters"),
    ("valve", "valves"),
    ("cooler", "coolers"),
    ("gearbox", "gearboxes"),
    ("pipe", "pipes"),
    ("tank", "tanks"),
    ("seal", "seals"),
    ("motor", "motors"),
    ("shaft", "shafts"),
    ("cover", "covers"),
    ("switch", "switches"),
    ("cable", "cables"),
    ("sensor", "sensors"),
    ("belt", "belts"),
    ("system", "systems"),
    ("housing", "housings"),
    ("bearing", "bearings"),
    ("drive", "drives"),
];
const MODIFIERS: &[&str] = &["oil", "fuel", "water", "pipe", "pressure", "temperature", "pump", "cooler", "drive", "control"];
const ADJS: &[&str] = &["large", "small", "main", "new", "old", "spare", "hydraulic", "electric", "upper", "rear", "faulty"];
const PRED_ADJS: &[&str] = &["hot", "cold", "full", "empty", "faulty", "dry", "clean", "worn", "low", "high"];
const PREPS: &[&str] = &["of", "in", "on", "for", "from", "with", "under", "near"];
const PARTS: &[&str] = &[
    "checked", "monitored", "fitted", "replaced", "cleaned", "inspected", "tested", "removed", "tightened", "adjusted",
    "drained", "installed", "connected", "mounted",
];
const MODALS: &[&str] = &["must", "should", "can", "will", "may"];
const ADVS: &[&str] = &["regularly", "carefully", "always", "never", "often", "usually", "first"];
const PRE_ADVS: &[&str] = &["Then", "Now", "Usually", "First", "Also", "Often"];
const INTRANS: &[(&str, &str)] = &[("leaks", "leak"), ("runs", "run"), ("fails", "fail"), ("works", "work")];
const INTRANS_ADVS: &[&str] = &["quickly", "slowly", "often", "now", "here", "still", "deep"];
const TRANS: &[(&str, &str)] = &[
    ("requires", "require"),
    ("drives", "drive"),
    ("contains", "contain"),
    ("supplies", "supply"),
    ("holds", "hold"),
    ("needs", "need"),
    ("controls", "control"),
    ("reduces", "reduce"),
];
const INFS: &[&str] = &["drain", "replace", "remove", "adjust", "inspect", "check", "clean", "seal", "cover"];
const SUBCONJS: &[&str] = &["If", "When", "While", "Once", "Although", "Before", "After"];
const PP_PREPS: &[&str] = &["In", "During", "After", "Before", "On", "Under"];
const PP_NOUNS: &[&str] = &["winter", "inspection", "test", "operation", "service"];

#[derive(Clone, Copy, PartialEq)]
enum Num {
    Sg,
    Pl,
}

struct Sentence {
    items: Vec<String>,
}

impl Sentence {
    fn push(&mut self, form: &str, tag: &str) {
        self.items.push(format!("{form}/{tag}"));
    }

    fn mark(&mut self, m: &str) {
        self.items.push(m.to_string());
    }

    fn head(&mut self, form: &str, tag: &str, num: Num) {
        let base = if tag == "PRON" { "PRON" } else { "NOUN" };
        let n = if num == Num::Sg { "sg" } else { "pl" };
        self.mark("[H");
        self.items.push(format!("{form}/{tag}/{base}-{n}"));
        self.mark("H]");
    }
}

fn pick<'a, T>(rng: &mut StdRng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty")
}

fn noun(rng: &mut StdRng, num: Num) -> &'static str {
    let (sg, pl) = *pick(rng, NOUNS);
    if num == Num::Sg {
        sg
    } else {
        pl
    }
}

fn det(rng: &mut StdRng, num: Num) -> &'static str {
    match num {
        Num::Sg => pick(rng, &["the", "the", "a", "this", "each"]),
        Num::Pl => pick(rng, &["the", "the", "these", "some"]),
    }
}

fn any_num(rng: &mut StdRng) -> Num {
    if rng.gen_bool(0.5) {
        Num::Sg
    } else {
        Num::Pl
    }
}

fn simple_np(s: &mut Sentence, rng: &mut StdRng) {
    let num = any_num(rng);
    s.push(det(rng, num), "DET");
    s.push(noun(rng, num), "NOUN");
}

fn pre_subject(s: &mut Sentence, rng: &mut StdRng) {
    match rng.gen_range(0..10) {
        0..=3 => {}
        4 | 5 => s.push(pick(rng, PRE_ADVS), "ADV"),
        6 => {
            s.push("However", "ADV");
            s.push(",", "COMMA");
        }
        7 => {
            s.push(pick(rng, SUBCONJS), "SUBCONJ");
            let num = any_num(rng);
            s.push(det(rng, num), "DET");
            s.push(noun(rng, num), "NOUN");
            if rng.gen_bool(0.5) {
                s.push(if num == Num::Sg { "is" } else { "are" }, "BE");
                s.push(pick(rng, PRED_ADJS), "ADJ");
            } else {
                s.push(if num == Num::Sg { "is" } else { "are" }, "BE");
                s.push(pick(rng, PARTS), "VPART");
                s.push("to", "PREP");
                simple_np(s, rng);
            }
            s.push(",", "COMMA");
        }
        8 => {
            s.push(pick(rng, PP_PREPS), "PREP");
            s.push("the", "DET");
            s.push(pick(rng, PP_NOUNS), "NOUN");
            s.push(",", "COMMA");
        }
        _ => {
            s.push("To", "TO");
            s.push(pick(rng, INFS), "VINF");
            s.push("the", "DET");
            s.push(noun(rng, Num::Sg), "NOUN");
            s.push(",", "COMMA");
        }
    }
}

/// Writes the subject and returns the number of its head.
fn subject(s: &mut Sentence, rng: &mut StdRng) -> Num {
    let num = any_num(rng);
    s.mark("[S");
    match rng.gen_range(0..12) {
        0 | 1 => {
            s.push(det(rng, num), "DET");
            s.head(noun(rng, num), "NOUN", num);
        }
        2 | 3 => {
            s.push(det(rng, num), "DET");
            s.push(pick(rng, ADJS), "ADJ");
            s.head(noun(rng, num), "NOUN", num);
        }
        4 => {
            s.push(det(rng, num), "DET");
            s.push(pick(rng, MODIFIERS), "NOUN");
            s.head(noun(rng, num), "NOUN", num);
        }
        5 | 6 => {
            s.push(det(rng, num), "DET");
            s.head(noun(rng, num), "NOUN", num);
            s.push(pick(rng, PREPS), "PREP");
            simple_np(s, rng);
        }
        7 => {
            s.push(det(rng, num), "DET");
            s.push(pick(rng, MODIFIERS), "NOUN");
            s.head(noun(rng, num), "NOUN", num);
            s.push(pick(rng, PREPS), "PREP");
            simple_np(s, rng);
        }
        8 => {
            let num = Num::Pl;
            s.push(pick(rng, ADJS), "ADJ");
            s.head(noun(rng, num), "NOUN", num);
            s.mark("S]");
            return num;
        }
        9 => {
            s.head(if num == Num::Sg { "it" } else { "they" }, "PRON", num);
        }
        10 => {
            s.push(det(rng, num), "DET");
            s.head(noun(rng, num), "NOUN", num);
            s.push(pick(rng, &["which", "that"]), "RELPRON");
            s.push(if num == Num::Sg { "is" } else { "are" }, "BE");
            s.push(pick(rng, PARTS), "VPART");
            s.push(pick(rng, &["to", "on", "in"]), "PREP");
            simple_np(s, rng);
        }
        _ => {
            let num = Num::Pl;
            s.push(pick(rng, &["two", "three", "four"]), "NUM");
            s.head(noun(rng, num), "NOUN", num);
            s.mark("S]");
            return num;
        }
    }
    s.mark("S]");
    num
}

fn predicate(s: &mut Sentence, rng: &mut StdRng, num: Num) {
    let sg = num == Num::Sg;
    match rng.gen_range(0..8) {
        0 | 1 => {
            s.push(pick(rng, MODALS), "MODAL");
            s.push("be", "BE");
            if rng.gen_bool(0.4) {
                s.push(pick(rng, ADVS), "ADV");
            }
            s.push(pick(rng, PARTS), "VPART");
            if rng.gen_bool(0.5) {
                s.push(pick(rng, &["to", "in", "on", "for"]), "PREP");
                simple_np(s, rng);
            }
        }
        2 => {
            let (v_sg, v_pl) = *pick(rng, TRANS);
            s.push(if sg { v_sg } else { v_pl }, "VERB");
            simple_np(s, rng);
        }
        3 => {
            let (v_sg, v_pl) = *pick(rng, INTRANS);
            s.push(if sg { v_sg } else { v_pl }, "VERB");
            s.push(pick(rng, INTRANS_ADVS), "ADV");
        }
        4 => {
            s.push(pick(rng, if sg { &["is", "was"][..] } else { &["are", "were"][..] }), "BE");
            s.push(pick(rng, PRED_ADJS), "ADJ");
        }
        5 => {
            s.push(if sg { "is" } else { "are" }, "BE");
            s.push(pick(rng, PARTS), "VPART");
            s.push(pick(rng, &["to", "in", "on", "near"]), "PREP");
            simple_np(s, rng);
        }
        6 => {
            s.push(pick(rng, MODALS), "MODAL");
            s.push(pick(rng, INFS), "VINF");
            simple_np(s, rng);
        }
        _ => {
            s.push(if sg { "has" } else { "have" }, "HAVE");
            s.push("a", "DET");
            s.push(pick(rng, ADJS), "ADJ");
            s.push(noun(rng, Num::Sg), "NOUN");
        }
    }
    s.push(".", "PUNCT");
}

fn capitalise(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn sentence(rng: &mut StdRng) -> String {
    let mut s = Sentence { items: Vec::new() };
    pre_subject(&mut s, rng);
    let num = subject(&mut s, rng);
    predicate(&mut s, rng, num);
    // Capitalise the first word, which may sit behind a marker.
    if let Some(first) = s.items.iter_mut().find(|t| t.contains('/')) {
        *first = capitalise(first);
    }
    s.items.join(" ")
}

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(300, |a| a.parse().expect("count"));
    let seed: u64 = args.next().map_or(1998, |a| a.parse().expect("seed"));
    let mut rng = StdRng::seed_from_u64(seed);
    println!("# Gold corpus: one sentence per line, tokens `form/TAG` or");
    println!("# `form/TAG/MODE2-TAG`, subject in `[S .. S]`, head in `[H .. H]`.");
    println!("# Generated by `cargo run --example gen_corpus -- {count} {seed}`; the first");
    println!("# three lines are fixed examples.");
    let mut seen = std::collections::HashSet::new();
    for line in FIXED {
        seen.insert(line.to_string());
        println!("{line}");
    }
    while seen.len() < count {
        let line = sentence(&mut rng);
        if seen.insert(line.clone()) {
            println!("{line}");
        }
    }
}
