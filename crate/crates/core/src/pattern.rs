//! Auxiliary squares expanded from seed vectors, composition of generated
//! pairs, named presets, and a backtracking search for remainder seeds.
//!
//! Four archetypes are supported, with `c(v) = n - 1 - v`:
//!
//! * `ROW_ALTERNATE`: even rows are the seed, odd rows its complement.
//! * `COLUMN_ALTERNATE`: the same along columns.
//! * `BLOCK_PAIR`: rows `2i` and `2i+1` are `[s_i, c(s_i), s_i, ...]`.
//! * `FOUR_ROW_CYCLE`: row `r` starts from the seed with adjacent pairs
//!   swapped when `r / band` is odd and is complemented when `r` is odd.
//!   The default band of 2 gives the cycle seed, c(seed), swap, c(swap).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::compose::{compose, is_orthogonal};
use crate::error::{Error, Result};
use crate::fixtures::{fixture, Payload};
use crate::square::{aux_constant, is_balanced, AuxPair, IndexTargets, Square, Value};
use crate::verify::{verify, PropertyReport};

pub const DEFAULT_BAND: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Archetype {
    RowAlternate,
    ColumnAlternate,
    BlockPair,
    FourRowCycle { band: usize },
}

impl Archetype {
    pub fn four_row_cycle() -> Self {
        Archetype::FourRowCycle { band: DEFAULT_BAND }
    }

    /// Expected seed length at order `n`.
    pub fn seed_len(self, n: usize) -> usize {
        match self {
            Archetype::BlockPair => n / 2,
            _ => n,
        }
    }
}

impl fmt::Display for Archetype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Archetype::RowAlternate => f.write_str("ROW_ALTERNATE"),
            Archetype::ColumnAlternate => f.write_str("COLUMN_ALTERNATE"),
            Archetype::BlockPair => f.write_str("BLOCK_PAIR"),
            Archetype::FourRowCycle { band: DEFAULT_BAND } => f.write_str("FOUR_ROW_CYCLE"),
            Archetype::FourRowCycle { band } => write!(f, "FOUR_ROW_CYCLE:{band}"),
        }
    }
}

/// Accepts the tag names case-insensitively with `-` or `_`, and
/// `FOUR_ROW_CYCLE:<band>` for a non-default band.
impl FromStr for Archetype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownArchetype(s.to_string());
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        let (tag, band) = match norm.split_once(':') {
            Some((tag, band)) => (tag.to_string(), Some(band.parse().map_err(|_| unknown())?)),
            None => (norm, None),
        };
        match (tag.as_str(), band) {
            ("ROW_ALTERNATE", None) => Ok(Archetype::RowAlternate),
            ("COLUMN_ALTERNATE", None) => Ok(Archetype::ColumnAlternate),
            ("BLOCK_PAIR", None) => Ok(Archetype::BlockPair),
            ("FOUR_ROW_CYCLE", band) => Ok(Archetype::FourRowCycle {
                band: band.unwrap_or(DEFAULT_BAND),
            }),
            _ => Err(unknown()),
        }
    }
}

impl Serialize for Archetype {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedPattern {
    archetype: Archetype,
    order: usize,
    seed: Vec<usize>,
}

impl SeedPattern {
    pub fn new(archetype: Archetype, order: usize, seed: Vec<usize>) -> Result<Self> {
        let pattern = SeedPattern {
            archetype,
            order,
            seed,
        };
        pattern.expand()?;
        Ok(pattern)
    }

    pub fn archetype(&self) -> Archetype {
        self.archetype
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn seed(&self) -> &[usize] {
        &self.seed
    }

    pub fn expand(&self) -> Result<Square> {
        let (seed, n) = (&self.seed[..], self.order);
        match self.archetype {
            Archetype::RowAlternate => expand_quotient(seed, n),
            Archetype::ColumnAlternate => expand_remainder(seed, n),
            Archetype::BlockPair => expand_block_pair(seed, n),
            Archetype::FourRowCycle { band } => expand_banded_cycle(seed, n, band),
        }
    }
}

/// `seed[j] = (j + 3n/4) mod n`, the first quotient row shared by the
/// classic order-8, 16 and 24 squares.
pub fn canonical_row_seed(n: usize) -> Result<Vec<usize>> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::NotMultipleOfFour(n));
    }
    Ok((0..n).map(|j| (j + 3 * n / 4) % n).collect())
}

fn check_order(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::ZeroOrder),
        n if n % 2 != 0 => Err(Error::EvenOrderRequired(n)),
        _ => Ok(()),
    }
}

fn check_seed(seed: &[usize], n: usize, len: usize, permutation: bool) -> Result<()> {
    if seed.len() != len {
        return Err(Error::SeedLength {
            actual: seed.len(),
            expected: len,
        });
    }
    let mut seen = vec![false; n];
    for &value in seed {
        if value >= n {
            return Err(Error::SeedValue { value, order: n });
        }
        if permutation && std::mem::replace(&mut seen[value], true) {
            return Err(Error::NotPermutation(n));
        }
    }
    Ok(())
}

fn build(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Square> {
    Square::from_fn(n, |r, c| f(r, c) as Value)
}

/// `ROW_ALTERNATE` expansion.
pub fn expand_quotient(seed: &[usize], n: usize) -> Result<Square> {
    check_order(n)?;
    check_seed(seed, n, n, true)?;
    build(n, |r, c| if r % 2 == 0 { seed[c] } else { n - 1 - seed[c] })
}

/// `COLUMN_ALTERNATE` expansion; `seed` is the first column.
pub fn expand_remainder(seed: &[usize], n: usize) -> Result<Square> {
    check_order(n)?;
    check_seed(seed, n, n, true)?;
    build(n, |r, c| if c % 2 == 0 { seed[r] } else { n - 1 - seed[r] })
}

/// `BLOCK_PAIR` expansion from `n/2` block values.
pub fn expand_block_pair(seed: &[usize], n: usize) -> Result<Square> {
    check_order(n)?;
    check_seed(seed, n, n / 2, false)?;
    build(n, |r, c| {
        let v = seed[r / 2];
        if c % 2 == 0 {
            v
        } else {
            n - 1 - v
        }
    })
}

/// `FOUR_ROW_CYCLE` expansion with the default band of 2.
pub fn expand_four_row_cycle(seed: &[usize], n: usize) -> Result<Square> {
    expand_banded_cycle(seed, n, DEFAULT_BAND)
}

/// `FOUR_ROW_CYCLE` expansion; rows repeat with period `2 * band`.
pub fn expand_banded_cycle(seed: &[usize], n: usize, band: usize) -> Result<Square> {
    check_order(n)?;
    if band == 0 || n % (2 * band) != 0 {
        return Err(if band == DEFAULT_BAND {
            Error::NotMultipleOfFour(n)
        } else {
            Error::InvalidBand { band, order: n }
        });
    }
    check_seed(seed, n, n, true)?;
    build(n, |r, c| {
        let swapped = (r / band) % 2 == 1;
        let v = if swapped { seed[c ^ 1] } else { seed[c] };
        if r % 2 == 1 {
            n - 1 - v
        } else {
            v
        }
    })
}

/// A composed square together with its auxiliary pair and natural-target
/// verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generated {
    pub pair: AuxPair,
    pub square: Square,
    pub report: PropertyReport,
}

pub fn generate(q: &SeedPattern, r: &SeedPattern) -> Result<Generated> {
    if q.order() != r.order() {
        return Err(Error::OrderMismatch {
            left: q.order(),
            right: r.order(),
        });
    }
    let quotient = q.expand()?;
    let remainder = r.expand()?;
    if !is_balanced(&quotient) {
        return Err(Error::Unbalanced("quotient"));
    }
    if !is_balanced(&remainder) {
        return Err(Error::Unbalanced("remainder"));
    }
    let pair = AuxPair::new(quotient, remainder)?;
    if !is_orthogonal(&pair) {
        return Err(Error::NotOrthogonal);
    }
    let square = compose(&pair)?;
    let report = verify(&square, &IndexTargets::natural(square.order()))?;
    Ok(Generated {
        pair,
        square,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Preset {
    Square(Square),
    Pair(AuxPair),
}

const R8_1769: [usize; 8] = [3, 5, 4, 2, 6, 0, 1, 7];
const R16_1769: [usize; 16] = [7, 9, 5, 11, 8, 6, 10, 4, 12, 2, 14, 0, 3, 13, 1, 15];
const R24: [usize; 24] = [
    11, 13, 9, 15, 7, 17, 12, 10, 14, 8, 16, 6, 18, 4, 20, 2, 22, 0, 5, 19, 3, 21, 1, 23,
];
const R40: [usize; 40] = [
    19, 21, 17, 23, 15, 25, 13, 27, 11, 29, 20, 18, 22, 16, 24, 14, 26, 12, 28, 10, 30, 8, 32, 6,
    34, 4, 36, 2, 38, 0, 9, 31, 7, 33, 5, 35, 3, 37, 1, 39,
];
const Q8_PAN: [usize; 4] = [0, 6, 5, 3];
const R8_PAN: [usize; 8] = [1, 0, 5, 4, 7, 6, 3, 2];
const Q16_PAN: [usize; 8] = [0, 14, 13, 3, 4, 10, 9, 7];
const R16_PAN: [usize; 16] = [15, 14, 1, 0, 13, 12, 3, 2, 11, 10, 5, 4, 9, 8, 7, 6];
const R16_NEW: [usize; 16] = [1, 0, 5, 4, 9, 8, 13, 12, 15, 14, 11, 10, 7, 6, 3, 2];

/// Presets rebuilt from seeds; any other fixture name falls back to the
/// stored grid.
pub const SEEDED_PRESETS: [&str; 8] = [
    "f8_1769",
    "f16_1769",
    "f24",
    "q24_r24",
    "f40",
    "f8_pandiagonal",
    "f16_pandiagonal",
    "f16_new_pandiagonal",
];

/// Seed patterns for a seeded preset name.
pub fn preset_seeds(name: &str) -> Option<(SeedPattern, SeedPattern)> {
    let classic = |n: usize, r: &[usize]| {
        (
            SeedPattern::new(Archetype::RowAlternate, n, canonical_row_seed(n).ok()?).ok()?,
            SeedPattern::new(Archetype::ColumnAlternate, n, r.to_vec()).ok()?,
        )
            .into()
    };
    let cycle = |n: usize, q: &[usize], r: &[usize], band: usize| {
        (
            SeedPattern::new(Archetype::BlockPair, n, q.to_vec()).ok()?,
            SeedPattern::new(Archetype::FourRowCycle { band }, n, r.to_vec()).ok()?,
        )
            .into()
    };
    match name {
        "f8_1769" => classic(8, &R8_1769),
        "f16_1769" => classic(16, &R16_1769),
        "f24" | "q24_r24" => classic(24, &R24),
        "f40" => classic(40, &R40),
        "f8_pandiagonal" => cycle(8, &Q8_PAN, &R8_PAN, 2),
        "f16_pandiagonal" => cycle(16, &Q16_PAN, &R16_PAN, 4),
        "f16_new_pandiagonal" => cycle(16, &Q16_PAN, &R16_NEW, 2),
        _ => None,
    }
}

pub fn preset(name: &str) -> Result<Preset> {
    if let Some((q, r)) = preset_seeds(name) {
        let generated = generate(&q, &r)?;
        return Ok(if name == "q24_r24" {
            Preset::Pair(generated.pair)
        } else {
            Preset::Square(generated.square)
        });
    }
    Ok(match fixture(name)?.payload() {
        Payload::Square(sq) => Preset::Square(sq.clone()),
        Payload::Pair(pair) => Preset::Pair(pair.clone()),
    })
}

/// Lists, in lexicographic order, the permutations `s` of `0..n` whose
/// `COLUMN_ALTERNATE` expansion is orthogonal to `quotient` and satisfies
/// every Franklin condition at the auxiliary constant. Stops after `limit`
/// results when given.
///
/// For such an expansion rows, columns, half-rows, 2x2 blocks and the
/// `BENT_DOWN`/`BENT_UP` families hold for every permutation once `4 | n`.
/// What remains is checked during the walk: the first half of the seed must
/// sum to half the auxiliary constant (half-columns), and the alternating
/// sums `sum (-1)^r s[r]` over both halves must agree (`BENT_RIGHT` and
/// `BENT_LEFT`). Every emitted seed is re-checked with the verifier.
pub fn find_remainder_seeds(
    n: usize,
    quotient: &Square,
    limit: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    check_order(n)?;
    if quotient.order() != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: quotient.order(),
        });
    }
    if !is_balanced(quotient) {
        return Err(Error::Unbalanced("quotient"));
    }
    let mut out = Vec::new();
    if n % 4 != 0 || limit == Some(0) {
        // The half-line target n(n-1)/4 is fractional.
        return Ok(out);
    }
    let mut walk = SeedWalk {
        n,
        half_target: aux_constant(n) as i64 / 2,
        quotient,
        seed: Vec::with_capacity(n),
        used: vec![false; n],
        pairs: vec![false; n * n],
        limit: limit.unwrap_or(usize::MAX),
        out: &mut out,
    };
    walk.descend(0, 0);
    Ok(out)
}

struct SeedWalk<'a> {
    n: usize,
    half_target: i64,
    quotient: &'a Square,
    seed: Vec<usize>,
    used: Vec<bool>,
    // (q, r) pairs already taken by the rows placed so far.
    pairs: Vec<bool>,
    limit: usize,
    out: &'a mut Vec<Vec<usize>>,
}

impl SeedWalk<'_> {
    fn done(&self) -> bool {
        self.out.len() >= self.limit
    }

    fn descend(&mut self, half_sum: i64, alternating: i64) {
        let n = self.n;
        let h = n / 2;
        let row = self.seed.len();
        if row == n {
            if alternating == 0 {
                self.accept();
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let next_half = if row < h { half_sum + v as i64 } else { half_sum };
            self.used[v] = true;
            if (row >= h || self.half_feasible(row + 1, next_half)) && self.claim_row(row, v) {
                let sign = if row % 2 == 0 { 1 } else { -1 };
                let side = if row < h { 1 } else { -1 };
                self.seed.push(v);
                self.descend(next_half, alternating + sign * side * v as i64);
                self.seed.pop();
                self.release_row(row, v);
            }
            self.used[v] = false;
            if self.done() {
                return;
            }
        }
    }

    // Whether the upper-half slots after `placed` rows can still bring the
    // half sum to target with unused values.
    fn half_feasible(&self, placed: usize, sum: i64) -> bool {
        let slots = self.n / 2 - placed;
        let need = self.half_target - sum;
        if slots == 0 {
            return need == 0;
        }
        let free: Vec<i64> = (0..self.n)
            .filter(|&v| !self.used[v])
            .map(|v| v as i64)
            .collect();
        let low: i64 = free.iter().take(slots).sum();
        let high: i64 = free.iter().rev().take(slots).sum();
        (low..=high).contains(&need)
    }

    fn row_value(&self, c: usize, v: usize) -> usize {
        if c % 2 == 0 {
            v
        } else {
            self.n - 1 - v
        }
    }

    fn claim_row(&mut self, row: usize, v: usize) -> bool {
        let n = self.n;
        for c in 0..n {
            let slot = self.quotient.get(row, c) as usize * n + self.row_value(c, v);
            if self.pairs[slot] {
                for undo in 0..c {
                    let slot = self.quotient.get(row, undo) as usize * n + self.row_value(undo, v);
                    self.pairs[slot] = false;
                }
                return false;
            }
            self.pairs[slot] = true;
        }
        true
    }

    fn release_row(&mut self, row: usize, v: usize) {
        let n = self.n;
        for c in 0..n {
            let slot = self.quotient.get(row, c) as usize * n + self.row_value(c, v);
            self.pairs[slot] = false;
        }
    }

    fn accept(&mut self) {
        let n = self.n;
        let remainder = expand_remainder(&self.seed, n).expect("seed is a permutation");
        let report = verify(&remainder, &IndexTargets::balanced(n)).expect("same order");
        let pair = AuxPair::new(self.quotient.clone(), remainder).expect("aux range");
        assert!(
            report.flags.franklin && report.flags.balanced && is_orthogonal(&pair),
            "seed walk emitted an invalid seed {:?}",
            self.seed
        );
        self.out.push(self.seed.clone());
    }
}
