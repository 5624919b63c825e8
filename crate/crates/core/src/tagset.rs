//! Tag inventories for the two processing modes.
//!
//! A [`Tagset`] owns the symbol space of one mode: every tag gets a dense
//! [`Symbol`] id, and the five reserved boundary symbols follow the tags.
//! Mode 1 is number-blind and drives subject placement; mode 2 splits the
//! noun, pronoun and finite-verb classes by number and drives head finding.
//!
//! Mode-2 tags that carry a number are named `<BASE>-sg` / `<BASE>-pl`, where
//! `<BASE>` is the mode-1 tag they refine. Unmarked mode-2 tags share their
//! mode-1 name. [`Tagset::project`] relies on this convention.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hasher;

use fnv::FnvHasher;

use crate::error::{Error, Result};

/// Names of the reserved boundary symbols, in symbol-id order after the tags.
pub const RESERVED: [&str; 5] = ["START", "OPEN", "CLOSE", "HOPEN", "HCLOSE"];

/// Dense id of a tag or boundary symbol within one tagset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    One,
    Two,
}

impl Mode {
    pub fn number(self) -> u8 {
        match self {
            Mode::One => 1,
            Mode::Two => 2,
        }
    }
}

/// Processing stage. The head stage adds HOPEN/HCLOSE to the alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Subject,
    Head,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Subject => "subject",
            Stage::Head => "head",
        }
    }

    pub fn parse(s: &str) -> Option<Stage> {
        match s {
            "subject" => Some(Stage::Subject),
            "head" => Some(Stage::Head),
            _ => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Noun,
    Verb,
    Relpron,
    Other,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Noun => "noun",
            Category::Verb => "verb",
            Category::Relpron => "relpron",
            Category::Other => "other",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        match s {
            "noun" => Some(Category::Noun),
            "verb" => Some(Category::Verb),
            "relpron" => Some(Category::Relpron),
            "other" => Some(Category::Other),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Number {
    Singular,
    Plural,
    Unmarked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tag {
    pub name: String,
    pub category: Category,
    pub number: Number,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tagset {
    mode: Mode,
    tags: Vec<Tag>,
    by_name: HashMap<String, Symbol>,
}

/// Checks the lexical rules shared by every symbol name in the resource files.
pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '/' | '|' | ','))
}

impl Tagset {
    /// Parses a tagset file: a `mode <1|2>` line followed by
    /// `tag <NAME> <category> [sg|pl]` lines. `#` starts a comment line.
    pub fn load(source: &str) -> Result<Tagset> {
        const FILE: &str = "tagset";
        let mut mode = None;
        let mut tags: Vec<Tag> = Vec::new();
        let mut by_name = HashMap::new();

        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "mode" => {
                    if mode.is_some() {
                        return Err(Error::syntax(FILE, line_no, "mode declared twice"));
                    }
                    mode = match fields.get(1..) {
                        Some(["1"]) => Some(Mode::One),
                        Some(["2"]) => Some(Mode::Two),
                        _ => {
                            return Err(Error::syntax(FILE, line_no, "expected `mode 1` or `mode 2`"))
                        }
                    };
                }
                "tag" => {
                    if !(3..=4).contains(&fields.len()) {
                        return Err(Error::syntax(
                            FILE,
                            line_no,
                            "expected `tag <NAME> <category> [sg|pl]`",
                        ));
                    }
                    let name = fields[1];
                    if !valid_name(name) {
                        return Err(Error::syntax(FILE, line_no, format!("invalid tag name `{name}`")));
                    }
                    if RESERVED.contains(&name) {
                        return Err(Error::syntax(
                            FILE,
                            line_no,
                            format!("`{name}` is a reserved boundary symbol"),
                        ));
                    }
                    if by_name.contains_key(name) {
                        return Err(Error::syntax(FILE, line_no, format!("duplicate tag `{name}`")));
                    }
                    let category = Category::parse(fields[2]).ok_or_else(|| {
                        Error::syntax(FILE, line_no, format!("unknown category `{}`", fields[2]))
                    })?;
                    let number = match fields.get(3) {
                        None => Number::Unmarked,
                        Some(&"sg") => Number::Singular,
                        Some(&"pl") => Number::Plural,
                        Some(other) => {
                            return Err(Error::syntax(FILE, line_no, format!("unknown number `{other}`")))
                        }
                    };
                    if number != Number::Unmarked && mode == Some(Mode::One) {
                        return Err(Error::syntax(
                            FILE,
                            line_no,
                            format!("mode-1 tag `{name}` cannot carry a number"),
                        ));
                    }
                    if mode.is_none() {
                        return Err(Error::syntax(FILE, line_no, "`mode` must precede the first tag"));
                    }
                    by_name.insert(name.to_string(), Symbol(tags.len() as u16));
                    tags.push(Tag {
                        name: name.to_string(),
                        category,
                        number,
                    });
                }
                other => {
                    return Err(Error::syntax(FILE, line_no, format!("unknown directive `{other}`")))
                }
            }
        }

        let mode = mode.ok_or_else(|| Error::invalid(FILE, "missing `mode` line"))?;
        if !tags.iter().any(|t| t.category == Category::Noun) {
            return Err(Error::invalid(FILE, "no tag has category noun"));
        }
        if !tags.iter().any(|t| t.category == Category::Verb) {
            return Err(Error::invalid(FILE, "no tag has category verb"));
        }
        Ok(Tagset { mode, tags, by_name })
    }

    /// Canonical text form; [`Tagset::load`] of this text yields an equal tagset.
    pub fn to_text(&self) -> String {
        let mut out = format!("mode {}\n", self.mode.number());
        for tag in &self.tags {
            out.push_str("tag ");
            out.push_str(&tag.name);
            out.push(' ');
            out.push_str(tag.category.as_str());
            match tag.number {
                Number::Singular => out.push_str(" sg"),
                Number::Plural => out.push_str(" pl"),
                Number::Unmarked => {}
            }
            out.push('\n');
        }
        out
    }

    /// Short stable hash of the canonical text, stored in net files.
    pub fn identity(&self) -> String {
        let mut hasher = FnvHasher::default();
        hasher.write(self.to_text().as_bytes());
        format!("{:016x}", hasher.finish())
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tag_symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.tags.len()).map(|i| Symbol(i as u16))
    }

    fn reserved(&self, k: usize) -> Symbol {
        Symbol((self.tags.len() + k) as u16)
    }

    pub fn start(&self) -> Symbol {
        self.reserved(0)
    }

    pub fn open(&self) -> Symbol {
        self.reserved(1)
    }

    pub fn close(&self) -> Symbol {
        self.reserved(2)
    }

    pub fn hopen(&self) -> Symbol {
        self.reserved(3)
    }

    pub fn hclose(&self) -> Symbol {
        self.reserved(4)
    }

    pub fn is_boundary(&self, sym: Symbol) -> bool {
        sym.index() >= self.tags.len()
    }

    pub fn is_tag(&self, sym: Symbol) -> bool {
        sym.index() < self.tags.len()
    }

    /// Looks up a tag or reserved symbol by name.
    pub fn symbol(&self, name: &str) -> Option<Symbol> {
        if let Some(&sym) = self.by_name.get(name) {
            return Some(sym);
        }
        RESERVED
            .iter()
            .position(|r| *r == name)
            .map(|k| self.reserved(k))
    }

    pub fn name(&self, sym: Symbol) -> &str {
        match self.tags.get(sym.index()) {
            Some(tag) => &tag.name,
            None => RESERVED[sym.index() - self.tags.len()],
        }
    }

    pub fn tag(&self, sym: Symbol) -> Option<&Tag> {
        self.tags.get(sym.index())
    }

    /// Category of a tag symbol; boundary symbols are `Other`.
    pub fn category(&self, sym: Symbol) -> Category {
        self.tag(sym).map_or(Category::Other, |t| t.category)
    }

    pub fn number(&self, sym: Symbol) -> Number {
        self.tag(sym).map_or(Number::Unmarked, |t| t.number)
    }

    /// Size of the symbol alphabet a stage may emit: tags, START, OPEN, CLOSE,
    /// plus HOPEN and HCLOSE for the head stage.
    pub fn symbol_count(&self, stage: Stage) -> usize {
        self.alphabet(stage).len()
    }

    pub fn alphabet(&self, stage: Stage) -> Vec<Symbol> {
        let reserved = match stage {
            Stage::Subject => 3,
            Stage::Head => 5,
        };
        (0..self.tags.len() + reserved)
            .map(|i| Symbol(i as u16))
            .collect()
    }

    /// Maps a tag of this tagset onto the tag of `coarse` it refines, by
    /// dropping a `-sg`/`-pl` suffix from number-marked tags.
    pub fn project(&self, sym: Symbol, coarse: &Tagset) -> Option<Symbol> {
        let tag = self.tag(sym)?;
        let base = match tag.number {
            Number::Unmarked => tag.name.as_str(),
            Number::Singular => tag.name.strip_suffix("-sg").unwrap_or(&tag.name),
            Number::Plural => tag.name.strip_suffix("-pl").unwrap_or(&tag.name),
        };
        coarse.by_name.get(base).copied()
    }

    /// All tags of this tagset that project onto `coarse_sym` of `coarse`.
    pub fn refinements(&self, coarse_sym: Symbol, coarse: &Tagset) -> Vec<Symbol> {
        self.tag_symbols()
            .filter(|&s| self.project(s, coarse) == Some(coarse_sym))
            .collect()
    }

    /// Resolves a comma-separated list of tag names (boundary symbols refused).
    pub(crate) fn parse_tag_list(
        &self,
        list: &str,
        file: &'static str,
        line: usize,
    ) -> Result<Vec<Symbol>> {
        let mut out = Vec::new();
        for name in list.split(',') {
            let sym = self
                .by_name
                .get(name)
                .copied()
                .ok_or_else(|| Error::syntax(file, line, format!("unknown tag `{name}`")))?;
            if !out.contains(&sym) {
                out.push(sym);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Mapping from an external fine-grained tag inventory onto one mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineTagMapping {
    mode: Mode,
    entries: BTreeMap<String, Vec<Symbol>>,
}

impl FineTagMapping {
    /// Parses `map <FINE> -> <NAME>[,<NAME>...]` lines against `tagset`.
    pub fn load(source: &str, tagset: &Tagset) -> Result<FineTagMapping> {
        const FILE: &str = "mapping";
        let mut entries = BTreeMap::new();
        for (idx, raw) in source.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["map", fine, "->", targets] => {
                    let tags = tagset.parse_tag_list(targets, FILE, line_no)?;
                    if entries.insert(fine.to_string(), tags).is_some() {
                        return Err(Error::syntax(FILE, line_no, format!("duplicate fine tag `{fine}`")));
                    }
                }
                _ => {
                    return Err(Error::syntax(
                        FILE,
                        line_no,
                        "expected `map <FINE> -> <NAME>[,<NAME>...]`",
                    ))
                }
            }
        }
        Ok(FineTagMapping {
            mode: tagset.mode(),
            entries,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The customised tags a fine-grained tag maps onto; never empty.
    pub fn map_fine_tag(&self, fine: &str, mode: Mode) -> Result<&[Symbol]> {
        if mode != self.mode {
            return Err(Error::ModeMismatch {
                have: self.mode.number(),
                want: mode.number(),
            });
        }
        self.entries
            .get(fine)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownFineTag(fine.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources;

    fn toy() -> Tagset {
        Tagset::load("mode 2\ntag N noun sg\ntag V verb pl\ntag D other\n").unwrap()
    }

    #[test]
    fn shipped_tagsets_have_published_sizes() {
        let one = Tagset::load(resources::MODE1_TAGSET).unwrap();
        let two = Tagset::load(resources::MODE2_TAGSET).unwrap();
        assert_eq!(one.len(), 21);
        assert_eq!(two.len(), 28);
        assert_eq!(one.mode(), Mode::One);
        assert_eq!(two.mode(), Mode::Two);
    }

    #[test]
    fn symbol_counts() {
        let one = Tagset::load(resources::MODE1_TAGSET).unwrap();
        let two = Tagset::load(resources::MODE2_TAGSET).unwrap();
        assert_eq!(two.symbol_count(Stage::Subject), 31);
        assert_eq!(one.symbol_count(Stage::Subject), 24);
        assert_eq!(two.symbol_count(Stage::Head), 33);
    }

    #[test]
    fn rejects_duplicates_and_collisions() {
        let dup = Tagset::load("mode 1\ntag NOUN noun\ntag NOUN noun\ntag V verb\n");
        match dup {
            Err(Error::Syntax { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("duplicate"));
            }
            other => panic!("expected duplicate error, got {other:?}"),
        }
        assert!(Tagset::load("mode 1\ntag OPEN noun\ntag V verb\n").is_err());
        assert!(Tagset::load("mode 1\ntag N thing\ntag V verb\n").is_err());
        assert!(Tagset::load("mode 1\ntag N noun sg\ntag V verb\n").is_err());
        assert!(Tagset::load("mode 1\ntag N noun\n").is_err());
        assert!(Tagset::load("tag N noun\ntag V verb\n").is_err());
        assert!(Tagset::load("mode 1\ntag N/X noun\ntag V verb\n").is_err());
    }

    #[test]
    fn reserved_symbols_follow_tags() {
        let ts = toy();
        assert_eq!(ts.start(), Symbol(3));
        assert_eq!(ts.name(ts.hclose()), "HCLOSE");
        assert_eq!(ts.symbol("CLOSE"), Some(ts.close()));
        assert_eq!(ts.symbol("N"), Some(Symbol(0)));
        assert!(ts.is_boundary(ts.open()));
        assert!(!ts.is_boundary(Symbol(2)));
    }

    #[test]
    fn text_round_trip() {
        for src in [resources::MODE1_TAGSET, resources::MODE2_TAGSET] {
            let ts = Tagset::load(src).unwrap();
            let again = Tagset::load(&ts.to_text()).unwrap();
            assert_eq!(ts, again);
            assert_eq!(ts.identity(), again.identity());
        }
    }

    #[test]
    fn projection_between_modes() {
        let one = Tagset::load(resources::MODE1_TAGSET).unwrap();
        let two = Tagset::load(resources::MODE2_TAGSET).unwrap();
        let noun = one.symbol("NOUN").unwrap();
        let refined: Vec<&str> = two
            .refinements(noun, &one)
            .into_iter()
            .map(|s| two.name(s))
            .collect();
        assert_eq!(refined, ["NOUN-sg", "NOUN-pl"]);
        let modal = two.symbol("MODAL").unwrap();
        assert_eq!(two.project(modal, &one), one.symbol("MODAL"));
        // Every mode-2 tag refines some mode-1 tag.
        for sym in two.tag_symbols() {
            assert!(two.project(sym, &one).is_some(), "{}", two.name(sym));
        }
    }

    #[test]
    fn fine_tag_mapping() {
        let one = Tagset::load(resources::MODE1_TAGSET).unwrap();
        let map = FineTagMapping::load(resources::MODE1_MAPPING, &one).unwrap();
        let names = |syms: &[Symbol]| syms.iter().map(|&s| one.name(s).to_string()).collect::<Vec<_>>();
        assert_eq!(names(map.map_fine_tag("JJT", Mode::One).unwrap()), ["NOUN", "ADJ"]);
        assert_eq!(names(map.map_fine_tag("AT", Mode::One).unwrap()), ["DET"]);
        assert!(matches!(
            map.map_fine_tag("XX9", Mode::One),
            Err(Error::UnknownFineTag(t)) if t == "XX9"
        ));
        assert!(matches!(map.map_fine_tag("AT", Mode::Two), Err(Error::ModeMismatch { .. })));

        let two = Tagset::load(resources::MODE2_TAGSET).unwrap();
        let map2 = FineTagMapping::load(resources::MODE2_MAPPING, &two).unwrap();
        assert_eq!(map2.len(), map.len());
        assert!(FineTagMapping::load("map X -> NOPE\n", &one).is_err());
        assert!(FineTagMapping::load("map X NOUN\n", &one).is_err());
    }
}
