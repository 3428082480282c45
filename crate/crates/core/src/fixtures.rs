//! Transcribed historical and newly constructed squares, stored as CSV files
//! under `fixtures/` and checked against `fixtures/SHA256SUMS` on load.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::parse_csv;
use crate::square::{AuxPair, Square};
use crate::verify::Label;

/// Environment variable naming a directory that replaces the embedded
/// corpus (same file names plus `SHA256SUMS`).
pub const FIXTURE_DIR_ENV: &str = "FRANKLIN_FIXTURE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FixtureKind {
    Square,
    AuxPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Square(Square),
    Pair(AuxPair),
}

/// Labels the stored data classifies as. For pairs, one set per member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Expected {
    Square(BTreeSet<Label>),
    Pair {
        quotient: BTreeSet<Label>,
        remainder: BTreeSet<Label>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureEntry {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub source: &'static str,
    /// Set when part of the grid was filled in rather than transcribed.
    pub reconstructed: bool,
    /// The square/pair fixture printed alongside this one, if any.
    pub partner: Option<&'static str>,
    pub expected: Expected,
    pub payload: Payload,
}

impl FixtureEntry {
    pub fn square(&self) -> Option<&Square> {
        match &self.payload {
            Payload::Square(sq) => Some(sq),
            Payload::Pair(_) => None,
        }
    }

    pub fn pair(&self) -> Option<&AuxPair> {
        match &self.payload {
            Payload::Pair(pair) => Some(pair),
            Payload::Square(_) => None,
        }
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn order(&self) -> usize {
        match &self.payload {
            Payload::Square(sq) => sq.order(),
            Payload::Pair(pair) => pair.order(),
        }
    }
}

use Label::*;

const NSM: &[Label] = &[Natural, SemiMagic];
const NSMM: &[Label] = &[Natural, SemiMagic, Magic];
const NF: &[Label] = &[Natural, SemiMagic, Franklin];
const NP: &[Label] = &[Natural, SemiMagic, Magic, Pandiagonal];
const NALL: &[Label] = &[Natural, SemiMagic, Magic, Pandiagonal, Franklin, PandiagonalFranklin];
const B: &[Label] = &[Balanced];
const BF: &[Label] = &[Balanced, SemiMagic, Franklin];
const BP: &[Label] = &[Balanced, SemiMagic, Magic, Pandiagonal];
const BALL: &[Label] = &[Balanced, SemiMagic, Magic, Pandiagonal, Franklin, PandiagonalFranklin];

enum Shape {
    Square(&'static str, &'static [Label]),
    Pair(&'static str, &'static str, &'static [Label], &'static [Label]),
}

struct Spec {
    name: &'static str,
    source: &'static str,
    reconstructed: bool,
    partner: Option<&'static str>,
    shape: Shape,
}

const fn sq(
    name: &'static str,
    partner: Option<&'static str>,
    labels: &'static [Label],
    source: &'static str,
) -> Spec {
    Spec {
        name,
        source,
        reconstructed: false,
        partner,
        shape: Shape::Square(name, labels),
    }
}

const fn pair(
    name: &'static str,
    files: (&'static str, &'static str),
    partner: Option<&'static str>,
    labels: (&'static [Label], &'static [Label]),
    source: &'static str,
) -> Spec {
    Spec {
        name,
        source,
        reconstructed: false,
        partner,
        shape: Shape::Pair(files.0, files.1, labels.0, labels.1),
    }
}

const MANIFEST: &[Spec] = &[
    sq("m6_franklin_1769", Some("m6_franklin_1769_aux"), NSM, "Franklin's order-6 square, 1769 letter"),
    pair("m6_franklin_1769_aux", ("m6_franklin_1769_q", "m6_franklin_1769_r"), Some("m6_franklin_1769"), (B, B),
        "decomposition of Franklin's order-6 square"),
    sq("m6_euler", Some("m6_euler_aux"), NSMM, "Euler's order-6 natural magic square"),
    pair("m6_euler_aux", ("m6_euler_q", "m6_euler_r"), Some("m6_euler"), (B, B),
        "decomposition of Euler's order-6 square"),
    sq("m6_xian", Some("m6_xian_aux"), NSMM, "order-6 magic square held by the Xian historical museum"),
    pair("m6_xian_aux", ("m6_xian_q", "m6_xian_r"), Some("m6_xian"), (B, B),
        "decomposition of the Xian order-6 square"),
    sq("f8_1769", Some("f8_1769_aux"), NF, "Franklin's order-8 square, 1769 letter"),
    pair("f8_1769_aux", ("f8_1769_q", "f8_1769_r"), Some("f8_1769"), (BF, BALL),
        "decomposition of Franklin's 1769 order-8 square"),
    sq("f8_pandiagonal", Some("f8_pandiagonal_aux"), NP, "Franklin's pandiagonal order-8 square"),
    pair("f8_pandiagonal_aux", ("f8_pandiagonal_q", "f8_pandiagonal_r"), Some("f8_pandiagonal"), (BP, BP),
        "decomposition of Franklin's pandiagonal order-8 square"),
    sq("f8_third", Some("f8_third_aux"), NF, "a further order-8 Franklin square by Franklin"),
    pair("f8_third_aux", ("f8_third_q", "f8_third_r"), Some("f8_third"), (BALL, BF),
        "decomposition of the further order-8 Franklin square"),
    sq("f8_schindel_2574", Some("f8_schindel_2574_aux"), NALL, "entry 2574 of Schindel's order-8 enumeration"),
    pair("f8_schindel_2574_aux", ("f8_schindel_2574_q", "f8_schindel_2574_r"), Some("f8_schindel_2574"), (BALL, BALL),
        "decomposition of Schindel's entry 2574"),
    sq("f16_1769", Some("f16_1769_aux"), NF, "Franklin's order-16 square, 1769 letter"),
    Spec {
        reconstructed: true,
        ..pair("f16_1769_aux", ("f16_1769_q", "f16_1769_r"), Some("f16_1769"), (BF, BALL),
            "decomposition of Franklin's order-16 square; elided quotient rows continue the two-row period")
    },
    sq("f16_pandiagonal", Some("f16_pandiagonal_aux"), NALL, "Franklin's pandiagonal order-16 square"),
    pair("f16_pandiagonal_aux", ("f16_pandiagonal_q", "f16_pandiagonal_r"), Some("f16_pandiagonal"), (BALL, BALL),
        "decomposition of Franklin's pandiagonal order-16 square"),
    sq("f16_new_pandiagonal", None, NP, "order-16 square from generalized order-8 pandiagonal auxiliaries"),
    sq("f16_new_second", None, NF, "second new order-16 Franklin square"),
    pair("q24_r24", ("q24", "r24"), None, (BF, BALL), "quotient and remainder of an order-24 Franklin square"),
    sq("f40", None, NF, "order-40 Franklin square, stitched from three column blocks"),
];

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../fixtures/", $name, ".csv")))),*]
    };
}

const EMBEDDED_FILES: &[(&str, &str)] = embedded!(
    "m6_franklin_1769", "m6_franklin_1769_q", "m6_franklin_1769_r",
    "m6_euler", "m6_euler_q", "m6_euler_r",
    "m6_xian", "m6_xian_q", "m6_xian_r",
    "f8_1769", "f8_1769_q", "f8_1769_r",
    "f8_pandiagonal", "f8_pandiagonal_q", "f8_pandiagonal_r",
    "f8_third", "f8_third_q", "f8_third_r",
    "f8_schindel_2574", "f8_schindel_2574_q", "f8_schindel_2574_r",
    "f16_1769", "f16_1769_q", "f16_1769_r",
    "f16_pandiagonal", "f16_pandiagonal_q", "f16_pandiagonal_r",
    "f16_new_pandiagonal", "f16_new_second",
    "q24", "r24", "f40",
);

const EMBEDDED_SUMS: &str = include_str!("../fixtures/SHA256SUMS");

/// A loaded, checksum-verified set of fixtures.
#[derive(Debug, Clone)]
pub struct Corpus {
    entries: Vec<FixtureEntry>,
}

impl Corpus {
    pub fn embedded() -> Result<Corpus> {
        let files: BTreeMap<String, String> = EMBEDDED_FILES
            .iter()
            .map(|&(name, text)| (format!("{name}.csv"), text.to_string()))
            .collect();
        Corpus::build(&files, EMBEDDED_SUMS)
    }

    /// Loads `<name>.csv` files and `SHA256SUMS` from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Corpus> {
        let read = |file: &str| {
            std::fs::read_to_string(dir.join(file))
                .map_err(|e| Error::Io(format!("{}: {e}", dir.join(file).display())))
        };
        let sums = read("SHA256SUMS")?;
        let mut files = BTreeMap::new();
        for &(name, _) in EMBEDDED_FILES {
            let file = format!("{name}.csv");
            files.insert(file.clone(), read(&file)?);
        }
        Corpus::build(&files, &sums)
    }

    /// The directory named by [`FIXTURE_DIR_ENV`] if set, else the
    /// embedded corpus.
    pub fn from_env() -> Result<Corpus> {
        match std::env::var_os(FIXTURE_DIR_ENV) {
            Some(dir) => Corpus::from_dir(Path::new(&dir)),
            None => Corpus::embedded(),
        }
    }

    fn build(files: &BTreeMap<String, String>, sums: &str) -> Result<Corpus> {
        let listed = parse_sums(sums)?;
        for (file, text) in files {
            let digest = hex(&Sha256::digest(text.as_bytes()));
            if listed.get(file.as_str()) != Some(&digest) {
                return Err(Error::Checksum { file: file.clone() });
            }
        }
        let load = |stem: &str| {
            let file = format!("{stem}.csv");
            let text = files.get(&file).ok_or_else(|| Error::Io(format!("missing {file}")))?;
            parse_csv(text).map_err(|e| Error::Io(format!("{file}: {e}")))
        };
        let set = |labels: &[Label]| labels.iter().copied().collect::<BTreeSet<_>>();
        let mut entries = Vec::with_capacity(MANIFEST.len());
        for spec in MANIFEST {
            let (kind, payload, expected) = match spec.shape {
                Shape::Square(file, labels) => (
                    FixtureKind::Square,
                    Payload::Square(load(file)?),
                    Expected::Square(set(labels)),
                ),
                Shape::Pair(q, r, ql, rl) => (
                    FixtureKind::AuxPair,
                    Payload::Pair(AuxPair::new(load(q)?, load(r)?)?),
                    Expected::Pair {
                        quotient: set(ql),
                        remainder: set(rl),
                    },
                ),
            };
            entries.push(FixtureEntry {
                name: spec.name,
                kind,
                source: spec.source,
                reconstructed: spec.reconstructed,
                partner: spec.partner,
                expected,
                payload,
            });
        }
        Ok(Corpus { entries })
    }

    pub fn get(&self, name: &str) -> Result<&FixtureEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn entries(&self) -> &[FixtureEntry] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.name)
    }
}

fn parse_sums(text: &str) -> Result<BTreeMap<&str, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (digest, file) = line.split_once(char::is_whitespace).ok_or(Error::Parse {
            line: i + 1,
            message: "expected `<sha256>  <file>`".to_string(),
        })?;
        let file = file.trim_start().trim_start_matches('*');
        out.insert(file, digest.to_ascii_lowercase());
    }
    Ok(out)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn embedded_corpus() -> Result<&'static Corpus> {
    static CORPUS: OnceLock<Result<Corpus>> = OnceLock::new();
    CORPUS.get_or_init(Corpus::embedded).as_ref().map_err(Clone::clone)
}

/// Looks up a fixture in the embedded corpus.
pub fn fixture(name: &str) -> Result<&'static FixtureEntry> {
    embedded_corpus()?.get(name)
}

/// Names of all fixtures in the embedded corpus, in manifest order.
pub fn list() -> Vec<&'static str> {
    MANIFEST.iter().map(|s| s.name).collect()
}
