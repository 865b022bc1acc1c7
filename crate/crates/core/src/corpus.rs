//! Bundled example presentations with a default class each.

use crate::error::Result;
use crate::presentation::{parse_character_row, parse_presentation, validate_character, CharacterClass, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub presentation: &'static str,
    /// Default rank-1 class, `name=value,...`.
    pub class: &'static str,
    /// Known amenable fundamental group.
    pub amenable: bool,
}

impl CorpusEntry {
    pub fn presentation(&self) -> Presentation {
        parse_presentation(self.presentation).expect("corpus presentations parse")
    }

    pub fn default_class(&self) -> Result<CharacterClass> {
        let p = self.presentation();
        let row = parse_character_row(&p, self.class)?;
        Ok(validate_character(&p, vec![row])?)
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "free2",
        presentation: "<a, b | >",
        class: "a=1,b=0",
        amenable: false,
    },
    CorpusEntry {
        name: "z2",
        presentation: "<a, b | a b a^-1 b^-1>",
        class: "a=1,b=0",
        amenable: true,
    },
    CorpusEntry {
        name: "klein",
        presentation: "<a, b | a b a b^-1>",
        class: "a=0,b=1",
        amenable: true,
    },
    CorpusEntry {
        name: "bs12",
        presentation: "<a, b | a b a^-1 = b^2>",
        class: "a=1,b=0",
        amenable: true,
    },
    CorpusEntry {
        name: "genus2",
        presentation: "<a1, b1, a2, b2 | a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1>",
        class: "a1=1",
        amenable: false,
    },
    CorpusEntry {
        name: "trefoil",
        presentation: "<a, b | a^2 = b^3>",
        class: "a=3,b=2",
        amenable: false,
    },
];

pub fn corpus_entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}
