//! Cell sets of every line family: rows, columns, diagonals, broken
//! diagonals, the four bent-diagonal families, half-lines and wraparound 2x2
//! subsquares.
//!
//! Bent diagonals are V-shaped lines of `n` cells that bend at the midline of
//! an even-order grid. `BentDown` and `BentUp` run left to right and wrap on
//! the row index; `BentRight` and `BentLeft` run top to bottom and wrap on the
//! column index. The shift `s` selects the line within its family; the `n`
//! shifts of one family partition the grid.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `(row, col)`, both 0-based.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineFamily {
    Row,
    Column,
    MainDiagonal,
    CrossDiagonal,
    PandiagDownright,
    PandiagDownleft,
    BentDown,
    BentUp,
    BentRight,
    BentLeft,
    HalfRowLeft,
    HalfRowRight,
    HalfColUpper,
    HalfColLower,
    Subsquare2x2,
}

impl LineFamily {
    pub const ALL: [LineFamily; 15] = [
        LineFamily::Row,
        LineFamily::Column,
        LineFamily::MainDiagonal,
        LineFamily::CrossDiagonal,
        LineFamily::PandiagDownright,
        LineFamily::PandiagDownleft,
        LineFamily::BentDown,
        LineFamily::BentUp,
        LineFamily::BentRight,
        LineFamily::BentLeft,
        LineFamily::HalfRowLeft,
        LineFamily::HalfRowRight,
        LineFamily::HalfColUpper,
        LineFamily::HalfColLower,
        LineFamily::Subsquare2x2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LineFamily::Row => "ROW",
            LineFamily::Column => "COLUMN",
            LineFamily::MainDiagonal => "MAIN_DIAGONAL",
            LineFamily::CrossDiagonal => "CROSS_DIAGONAL",
            LineFamily::PandiagDownright => "PANDIAG_DOWNRIGHT",
            LineFamily::PandiagDownleft => "PANDIAG_DOWNLEFT",
            LineFamily::BentDown => "BENT_DOWN",
            LineFamily::BentUp => "BENT_UP",
            LineFamily::BentRight => "BENT_RIGHT",
            LineFamily::BentLeft => "BENT_LEFT",
            LineFamily::HalfRowLeft => "HALF_ROW_LEFT",
            LineFamily::HalfRowRight => "HALF_ROW_RIGHT",
            LineFamily::HalfColUpper => "HALF_COL_UPPER",
            LineFamily::HalfColLower => "HALF_COL_LOWER",
            LineFamily::Subsquare2x2 => "SUBSQUARE_2x2",
        }
    }

    /// Number of cells on one line of this family in an order-`n` grid.
    pub fn cardinality(self, n: usize) -> usize {
        match self {
            LineFamily::HalfRowLeft
            | LineFamily::HalfRowRight
            | LineFamily::HalfColUpper
            | LineFamily::HalfColLower => n / 2,
            LineFamily::Subsquare2x2 => 4,
            _ => n,
        }
    }

    /// Whether lines of this family only exist for even orders.
    pub fn needs_even_order(self) -> bool {
        matches!(
            self,
            LineFamily::BentDown
                | LineFamily::BentUp
                | LineFamily::BentRight
                | LineFamily::BentLeft
                | LineFamily::HalfRowLeft
                | LineFamily::HalfRowRight
                | LineFamily::HalfColUpper
                | LineFamily::HalfColLower
                | LineFamily::Subsquare2x2
        )
    }
}

impl fmt::Display for LineFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LineFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LineFamily::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl Serialize for LineFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bent {
    Down,
    Up,
    Right,
    Left,
}

impl Bent {
    pub const ALL: [Bent; 4] = [Bent::Down, Bent::Up, Bent::Right, Bent::Left];

    pub fn family(self) -> LineFamily {
        match self {
            Bent::Down => LineFamily::BentDown,
            Bent::Up => LineFamily::BentUp,
            Bent::Right => LineFamily::BentRight,
            Bent::Left => LineFamily::BentLeft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    DownRight,
    DownLeft,
}

impl Direction {
    pub fn family(self) -> LineFamily {
        match self {
            Direction::DownRight => LineFamily::PandiagDownright,
            Direction::DownLeft => LineFamily::PandiagDownleft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfLine {
    RowLeft,
    RowRight,
    ColUpper,
    ColLower,
}

impl HalfLine {
    pub const ALL: [HalfLine; 4] = [
        HalfLine::RowLeft,
        HalfLine::RowRight,
        HalfLine::ColUpper,
        HalfLine::ColLower,
    ];

    pub fn family(self) -> LineFamily {
        match self {
            HalfLine::RowLeft => LineFamily::HalfRowLeft,
            HalfLine::RowRight => LineFamily::HalfRowRight,
            HalfLine::ColUpper => LineFamily::HalfColUpper,
            HalfLine::ColLower => LineFamily::HalfColLower,
        }
    }
}

/// A validated line: `n` (or `n/2`, or 4) distinct in-bounds cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineDescriptor {
    family: LineFamily,
    shift: usize,
    #[serde(skip)]
    order: usize,
    cells: Vec<Cell>,
}

impl LineDescriptor {
    pub fn new(order: usize, family: LineFamily, shift: usize, cells: Vec<Cell>) -> Result<Self> {
        let expected = family.cardinality(order);
        if cells.len() != expected {
            return Err(Error::LineLength {
                family: family.as_str(),
                actual: cells.len(),
                expected,
            });
        }
        let mut seen = HashSet::with_capacity(cells.len());
        for &(row, col) in &cells {
            if row >= order || col >= order {
                return Err(Error::LineOutOfBounds { row, col, order });
            }
            if !seen.insert((row, col)) {
                return Err(Error::DuplicateCell { row, col });
            }
        }
        Ok(LineDescriptor {
            family,
            shift,
            order,
            cells,
        })
    }

    // For lines built by this module, which are correct by construction.
    fn trusted(order: usize, family: LineFamily, shift: usize, cells: Vec<Cell>) -> Self {
        debug_assert!(LineDescriptor::new(order, family, shift, cells.clone()).is_ok());
        LineDescriptor {
            family,
            shift,
            order,
            cells,
        }
    }

    pub fn family(&self) -> LineFamily {
        self.family
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }
}

fn require_even(n: usize) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        Err(Error::EvenOrderRequired(n))
    } else {
        Ok(())
    }
}

fn require_index(index: usize, n: usize) -> Result<()> {
    if index >= n {
        Err(Error::ShiftOutOfRange { index, limit: n })
    } else {
        Ok(())
    }
}

/// Cells of the bent diagonal with the given shift, listed in column order
/// for `Down`/`Up` and row order for `Right`/`Left`.
pub fn bent_diagonal_cells(n: usize, bent: Bent, shift: usize) -> Result<Vec<Cell>> {
    require_even(n)?;
    require_index(shift, n)?;
    let h = n / 2;
    // Offset from the apex side: i for the first half, n-1-i after the bend.
    let offset = |i: usize| if i < h { i } else { n - 1 - i };
    let plus = |i: usize| (shift + offset(i)) % n;
    let minus = |i: usize| (shift + n - offset(i)) % n;
    let cells = (0..n)
        .map(|i| match bent {
            Bent::Down => (plus(i), i),
            Bent::Up => (minus(i), i),
            Bent::Right => (i, plus(i)),
            Bent::Left => (i, minus(i)),
        })
        .collect();
    Ok(cells)
}

/// Cells of a (possibly broken) diagonal. `DownRight` with shift 0 is the
/// main diagonal, `DownLeft` with shift `n-1` the cross diagonal.
pub fn pandiagonal_cells(n: usize, direction: Direction, shift: usize) -> Vec<Cell> {
    (0..n)
        .map(|r| match direction {
            Direction::DownRight => (r, (shift + r) % n),
            Direction::DownLeft => (r, (shift % n + n * n - r) % n),
        })
        .collect()
}

pub fn half_line_cells(n: usize, kind: HalfLine, index: usize) -> Result<Vec<Cell>> {
    require_even(n)?;
    require_index(index, n)?;
    let h = n / 2;
    let cells = match kind {
        HalfLine::RowLeft => (0..h).map(|c| (index, c)).collect(),
        HalfLine::RowRight => (h..n).map(|c| (index, c)).collect(),
        HalfLine::ColUpper => (0..h).map(|r| (r, index)).collect(),
        HalfLine::ColLower => (h..n).map(|r| (r, index)).collect(),
    };
    Ok(cells)
}

/// The 2x2 block anchored at `(r, c)`, wrapping on both axes.
pub fn subsquare_cells(n: usize, r: usize, c: usize) -> [Cell; 4] {
    let r1 = (r + 1) % n;
    let c1 = (c + 1) % n;
    [(r, c), (r, c1), (r1, c), (r1, c1)]
}

/// Every line of `family` in an order-`n` grid, ordered by shift. Subsquare
/// shifts are the row-major anchor index `r * n + c`.
pub fn family_lines(n: usize, family: LineFamily) -> Result<Vec<LineDescriptor>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if family.needs_even_order() {
        require_even(n)?;
    }
    let line = |shift: usize, cells: Vec<Cell>| Ok(LineDescriptor::trusted(n, family, shift, cells));
    match family {
        LineFamily::Row => (0..n).map(|r| line(r, (0..n).map(|c| (r, c)).collect())).collect(),
        LineFamily::Column => (0..n).map(|c| line(c, (0..n).map(|r| (r, c)).collect())).collect(),
        LineFamily::MainDiagonal => {
            Ok(vec![line(0, pandiagonal_cells(n, Direction::DownRight, 0))?])
        }
        LineFamily::CrossDiagonal => Ok(vec![line(
            n - 1,
            pandiagonal_cells(n, Direction::DownLeft, n - 1),
        )?]),
        LineFamily::PandiagDownright => (0..n)
            .map(|s| line(s, pandiagonal_cells(n, Direction::DownRight, s)))
            .collect(),
        LineFamily::PandiagDownleft => (0..n)
            .map(|s| line(s, pandiagonal_cells(n, Direction::DownLeft, s)))
            .collect(),
        LineFamily::BentDown | LineFamily::BentUp | LineFamily::BentRight | LineFamily::BentLeft => {
            let bent = Bent::ALL
                .into_iter()
                .find(|b| b.family() == family)
                .expect("bent family");
            (0..n)
                .map(|s| line(s, bent_diagonal_cells(n, bent, s)?))
                .collect()
        }
        LineFamily::HalfRowLeft
        | LineFamily::HalfRowRight
        | LineFamily::HalfColUpper
        | LineFamily::HalfColLower => {
            let kind = HalfLine::ALL
                .into_iter()
                .find(|k| k.family() == family)
                .expect("half-line family");
            (0..n)
                .map(|i| line(i, half_line_cells(n, kind, i)?))
                .collect()
        }
        LineFamily::Subsquare2x2 => (0..n * n)
            .map(|a| line(a, subsquare_cells(n, a / n, a % n).to_vec()))
            .collect(),
    }
}
