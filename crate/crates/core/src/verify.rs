//! Line-sum verification and classification.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lines::{family_lines, Cell, LineDescriptor, LineFamily};
use crate::square::{is_balanced, is_natural, IndexTargets, Square, Target};

/// Outcome of one condition section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    /// The condition is undefined at this order (odd order for the
    /// bent, half-line and subsquare families).
    NotApplicable,
    /// The target is not an integer, so no integer grid can meet it.
    Unsatisfiable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Rows,
    Columns,
    Diagonals,
    Pandiagonals,
    BentDown,
    BentUp,
    BentRight,
    BentLeft,
    HalfLines,
    Subsquares,
}

impl Condition {
    pub const ALL: [Condition; 10] = [
        Condition::Rows,
        Condition::Columns,
        Condition::Diagonals,
        Condition::Pandiagonals,
        Condition::BentDown,
        Condition::BentUp,
        Condition::BentRight,
        Condition::BentLeft,
        Condition::HalfLines,
        Condition::Subsquares,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Condition::Rows => "rows",
            Condition::Columns => "columns",
            Condition::Diagonals => "diagonals",
            Condition::Pandiagonals => "pandiagonals",
            Condition::BentDown => "bent_down",
            Condition::BentUp => "bent_up",
            Condition::BentRight => "bent_right",
            Condition::BentLeft => "bent_left",
            Condition::HalfLines => "half_lines",
            Condition::Subsquares => "subsquares",
        }
    }

    pub fn families(self) -> &'static [LineFamily] {
        match self {
            Condition::Rows => &[LineFamily::Row],
            Condition::Columns => &[LineFamily::Column],
            Condition::Diagonals => &[LineFamily::MainDiagonal, LineFamily::CrossDiagonal],
            Condition::Pandiagonals => &[LineFamily::PandiagDownright, LineFamily::PandiagDownleft],
            Condition::BentDown => &[LineFamily::BentDown],
            Condition::BentUp => &[LineFamily::BentUp],
            Condition::BentRight => &[LineFamily::BentRight],
            Condition::BentLeft => &[LineFamily::BentLeft],
            Condition::HalfLines => &[
                LineFamily::HalfRowLeft,
                LineFamily::HalfRowRight,
                LineFamily::HalfColUpper,
                LineFamily::HalfColLower,
            ],
            Condition::Subsquares => &[LineFamily::Subsquare2x2],
        }
    }

    pub fn target(self, targets: &IndexTargets) -> Target {
        match self {
            Condition::HalfLines => targets.half_line(),
            Condition::Subsquares => targets.subsquare(),
            _ => targets.line(),
        }
    }

    fn needs_even_order(self) -> bool {
        self.families()[0].needs_even_order()
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineFailure {
    pub family: LineFamily,
    pub shift: usize,
    pub cells: Vec<Cell>,
    pub actual: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub target: Target,
    pub status: Status,
    pub lines_checked: usize,
    /// Every failing line, sorted by family then shift.
    pub failures: Vec<LineFailure>,
}

impl ConditionResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }

    /// Shifts of `family` that failed, in ascending order.
    pub fn failing_shifts(&self, family: LineFamily) -> Vec<usize> {
        self.failures
            .iter()
            .filter(|f| f.family == family)
            .map(|f| f.shift)
            .collect()
    }

    fn not_applicable(condition: Condition, target: Target) -> Self {
        ConditionResult {
            condition,
            target,
            status: Status::NotApplicable,
            lines_checked: 0,
            failures: Vec::new(),
        }
    }
}

/// Sums every line and compares it against `target` as
/// `target.parts * sum == target.total`.
pub fn check_lines(
    sq: &Square,
    condition: Condition,
    lines: &[LineDescriptor],
    target: Target,
) -> Result<ConditionResult> {
    let mut failures = Vec::new();
    for line in lines {
        if line.order() != sq.order() {
            return Err(Error::OrderMismatch {
                left: sq.order(),
                right: line.order(),
            });
        }
        let sum = line_sum(sq, line.cells());
        if !target.accepts(sum) {
            failures.push(LineFailure {
                family: line.family(),
                shift: line.shift(),
                cells: line.cells().to_vec(),
                actual: sum,
            });
        }
    }
    failures.sort_by_key(|f| (f.family, f.shift));
    let status = if !target.is_integral() {
        Status::Unsatisfiable
    } else if failures.is_empty() {
        Status::Passed
    } else {
        Status::Failed
    };
    Ok(ConditionResult {
        condition,
        target,
        status,
        lines_checked: lines.len(),
        failures,
    })
}

pub fn line_sum(sq: &Square, cells: &[Cell]) -> i128 {
    cells.iter().map(|&(r, c)| sq.get(r, c) as i128).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Flags {
    pub natural: bool,
    pub balanced: bool,
    pub semi_magic: bool,
    pub magic: bool,
    pub pandiagonal: bool,
    pub franklin: bool,
    pub pandiagonal_franklin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub order: usize,
    pub targets: IndexTargets,
    /// One entry per [`Condition`], in [`Condition::ALL`] order.
    pub conditions: Vec<ConditionResult>,
    pub flags: Flags,
}

impl PropertyReport {
    pub fn condition(&self, condition: Condition) -> &ConditionResult {
        &self.conditions[condition as usize]
    }

    pub fn passed(&self, condition: Condition) -> bool {
        self.condition(condition).passed()
    }
}

type LineSets = Rc<Vec<Rc<Vec<LineDescriptor>>>>;

// Line sets are rebuilt per order only once per thread; the searcher
// re-verifies every leaf.
fn condition_lines(n: usize, condition: Condition) -> Result<Rc<Vec<LineDescriptor>>> {
    thread_local! {
        static CACHE: RefCell<HashMap<usize, LineSets>> = RefCell::new(HashMap::new());
    }
    let cached = CACHE.with(|cache| cache.borrow().get(&n).cloned());
    let sets = match cached {
        Some(sets) => sets,
        None => {
            let mut sets = Vec::with_capacity(Condition::ALL.len());
            for c in Condition::ALL {
                let mut lines = Vec::new();
                let skip = c.needs_even_order() && n % 2 != 0;
                for &family in c.families().iter().filter(|_| !skip) {
                    lines.extend(family_lines(n, family)?);
                }
                sets.push(Rc::new(lines));
            }
            let sets: LineSets = Rc::new(sets);
            CACHE.with(|cache| cache.borrow_mut().insert(n, sets.clone()));
            sets
        }
    };
    Ok(sets[condition as usize].clone())
}

/// Evaluates every condition family against `targets`.
pub fn verify(sq: &Square, targets: &IndexTargets) -> Result<PropertyReport> {
    let n = sq.order();
    if targets.order != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: targets.order,
        });
    }
    let even = n % 2 == 0;
    let mut conditions = Vec::with_capacity(Condition::ALL.len());
    for condition in Condition::ALL {
        let target = condition.target(targets);
        if condition.needs_even_order() && !even {
            conditions.push(ConditionResult::not_applicable(condition, target));
            continue;
        }
        let lines = condition_lines(n, condition)?;
        conditions.push(check_lines(sq, condition, &lines, target)?);
    }

    let ok = |c: Condition| conditions[c as usize].passed();
    let semi_magic = ok(Condition::Rows) && ok(Condition::Columns);
    let magic = semi_magic && ok(Condition::Diagonals);
    let pandiagonal = ok(Condition::Pandiagonals);
    let franklin = semi_magic
        && ok(Condition::BentDown)
        && ok(Condition::BentUp)
        && ok(Condition::BentRight)
        && ok(Condition::BentLeft)
        && ok(Condition::HalfLines)
        && ok(Condition::Subsquares);
    let flags = Flags {
        natural: is_natural(sq),
        balanced: is_balanced(sq),
        semi_magic,
        magic,
        pandiagonal,
        franklin,
        pandiagonal_franklin: pandiagonal && franklin,
    };
    Ok(PropertyReport {
        order: n,
        targets: *targets,
        conditions,
        flags,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Natural,
    Balanced,
    SemiMagic,
    Magic,
    Pandiagonal,
    Franklin,
    PandiagonalFranklin,
}

impl Label {
    pub const ALL: [Label; 7] = [
        Label::Natural,
        Label::Balanced,
        Label::SemiMagic,
        Label::Magic,
        Label::Pandiagonal,
        Label::Franklin,
        Label::PandiagonalFranklin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Natural => "natural",
            Label::Balanced => "balanced",
            Label::SemiMagic => "semi-magic",
            Label::Magic => "magic",
            Label::Pandiagonal => "pandiagonal",
            Label::Franklin => "franklin",
            Label::PandiagonalFranklin => "pandiagonal-franklin",
        }
    }

    pub fn parse(s: &str) -> Result<Label> {
        Label::ALL
            .into_iter()
            .find(|l| l.as_str() == s || l.as_str().replace('-', "_") == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl Flags {
    pub fn labels(&self) -> BTreeSet<Label> {
        let pairs = [
            (self.natural, Label::Natural),
            (self.balanced, Label::Balanced),
            (self.semi_magic, Label::SemiMagic),
            (self.magic, Label::Magic),
            (self.pandiagonal, Label::Pandiagonal),
            (self.franklin, Label::Franklin),
            (self.pandiagonal_franklin, Label::PandiagonalFranklin),
        ];
        pairs.into_iter().filter(|p| p.0).map(|p| p.1).collect()
    }

    pub fn has(&self, label: Label) -> bool {
        self.labels().contains(&label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub labels: BTreeSet<Label>,
    pub targets: IndexTargets,
    /// True when the square is neither natural nor balanced and the line
    /// target was taken from the first row.
    pub inferred: bool,
    pub report: PropertyReport,
}

/// Picks targets from the square's value range and verifies against them.
pub fn classify(sq: &Square) -> Classification {
    let n = sq.order();
    let (targets, inferred) = if is_natural(sq) {
        (IndexTargets::natural(n), false)
    } else if is_balanced(sq) {
        (IndexTargets::balanced(n), false)
    } else {
        let row0 = sq.row(0).iter().map(|&v| v as i128).sum();
        (IndexTargets::new(n, row0), true)
    };
    let report = verify(sq, &targets).expect("targets built for this order");
    Classification {
        labels: report.flags.labels(),
        targets,
        inferred,
        report,
    }
}
