//! Grid value types, index numbers, and the naturalness / balance predicates.

use std::fmt;
use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};

/// A single cell value.
pub type Value = i64;

/// An order-`n` grid of integers stored row-major with 0-based `(row, col)`
/// addressing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Square {
    order: usize,
    cells: Vec<Value>,
}

impl Square {
    pub fn new(order: usize, cells: Vec<Value>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let expected = order * order;
        if cells.len() != expected {
            return Err(Error::CellCount {
                order,
                expected,
                actual: cells.len(),
            });
        }
        Ok(Square { order, cells })
    }

    /// Builds a square from a list of equally long rows.
    pub fn from_rows<R: AsRef<[Value]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for (row, values) in rows.iter().enumerate() {
            let values = values.as_ref();
            if values.len() != order {
                return Err(Error::Ragged {
                    row,
                    len: values.len(),
                    expected: order,
                });
            }
            cells.extend_from_slice(values);
        }
        Square::new(order, cells)
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Value) -> Result<Self> {
        let mut cells = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                cells.push(f(r, c));
            }
        }
        Square::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[Value] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Value {
        self.cells[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[Value] {
        &self.cells[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Value]> + '_ {
        self.cells.chunks(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<Value>> {
        self.rows().map(<[Value]>::to_vec).collect()
    }

    pub fn total(&self) -> i128 {
        self.cells.iter().map(|&v| v as i128).sum()
    }

    pub fn transpose(&self) -> Square {
        self.remap(|_, r, c| (c, r))
    }

    /// Quarter turn clockwise.
    pub fn rotate_90(&self) -> Square {
        self.remap(|n, r, c| (n - 1 - c, r))
    }

    pub fn rotate_180(&self) -> Square {
        self.remap(|n, r, c| (n - 1 - r, n - 1 - c))
    }

    /// Mirror image left to right.
    pub fn mirror(&self) -> Square {
        self.remap(|n, r, c| (r, n - 1 - c))
    }

    /// The eight images of this square under the dihedral group of the grid.
    pub fn dihedral_images(&self) -> [Square; 8] {
        let r1 = self.rotate_90();
        let r2 = r1.rotate_90();
        let r3 = r2.rotate_90();
        let m0 = self.mirror();
        let m1 = r1.mirror();
        let m2 = r2.mirror();
        let m3 = r3.mirror();
        [self.clone(), r1, r2, r3, m0, m1, m2, m3]
    }

    // `source(n, r, c)` gives the coordinates in `self` that land at (r, c).
    fn remap(&self, source: impl Fn(usize, usize, usize) -> (usize, usize)) -> Square {
        let n = self.order;
        let mut cells = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let (sr, sc) = source(n, r, c);
                cells.push(self.get(sr, sc));
            }
        }
        Square { order: n, cells }
    }
}

impl Index<(usize, usize)> for Square {
    type Output = Value;

    fn index(&self, (row, col): (usize, usize)) -> &Value {
        &self.cells[row * self.order + col]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .cells
            .iter()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Quotient and remainder squares of an Eulerian composition. Every cell of
/// both members lies in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxPair {
    quotient: Square,
    remainder: Square,
}

impl AuxPair {
    pub fn new(quotient: Square, remainder: Square) -> Result<Self> {
        if quotient.order() != remainder.order() {
            return Err(Error::OrderMismatch {
                left: quotient.order(),
                right: remainder.order(),
            });
        }
        check_aux_range(&quotient)?;
        check_aux_range(&remainder)?;
        Ok(AuxPair {
            quotient,
            remainder,
        })
    }

    pub fn order(&self) -> usize {
        self.quotient.order()
    }

    pub fn quotient(&self) -> &Square {
        &self.quotient
    }

    pub fn remainder(&self) -> &Square {
        &self.remainder
    }

    pub fn into_parts(self) -> (Square, Square) {
        (self.quotient, self.remainder)
    }
}

fn check_aux_range(sq: &Square) -> Result<()> {
    let n = sq.order();
    for (i, &value) in sq.cells().iter().enumerate() {
        if !(0..n as Value).contains(&value) {
            return Err(Error::AuxValueOutOfRange {
                row: i / n,
                col: i % n,
                value,
                order: n,
            });
        }
    }
    Ok(())
}

/// A possibly fractional line target `total / parts`. A line meets it when
/// `parts * sum == total`, which keeps odd index numbers in integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Target {
    pub total: i128,
    pub parts: i128,
}

impl Target {
    pub fn whole(value: i128) -> Self {
        Target {
            total: value,
            parts: 1,
        }
    }

    pub fn fraction(total: i128, parts: i128) -> Self {
        assert!(parts > 0, "target denominator must be positive");
        Target { total, parts }
    }

    pub fn accepts(&self, sum: i128) -> bool {
        self.parts * sum == self.total
    }

    pub fn is_integral(&self) -> bool {
        self.total % self.parts == 0
    }

    /// The integer value of the target, if it has one.
    pub fn value(&self) -> Option<i128> {
        self.is_integral().then(|| self.total / self.parts)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}/{}", self.total, self.parts),
        }
    }
}

/// Line-sum targets for an order-`n` square: the common line sum and the
/// half-line and 2x2 targets derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexTargets {
    pub order: usize,
    pub line_sum: i128,
}

impl IndexTargets {
    pub fn new(order: usize, line_sum: i128) -> Self {
        IndexTargets { order, line_sum }
    }

    /// Targets for a natural square, `m = n(n^2+1)/2`.
    pub fn natural(order: usize) -> Self {
        IndexTargets::new(order, magic_constant(order))
    }

    /// Targets for a balanced auxiliary square, `n(n-1)/2`.
    pub fn balanced(order: usize) -> Self {
        IndexTargets::new(order, aux_constant(order))
    }

    pub fn line(&self) -> Target {
        Target::whole(self.line_sum)
    }

    pub fn half_line(&self) -> Target {
        Target::fraction(self.line_sum, 2)
    }

    pub fn subsquare(&self) -> Target {
        Target::fraction(4 * self.line_sum, self.order as i128)
    }
}

/// Index number of a natural order-`n` square.
pub fn magic_constant(n: usize) -> i128 {
    let n = n as i128;
    n * (n * n + 1) / 2
}

/// Line sum of a balanced auxiliary square of order `n`.
pub fn aux_constant(n: usize) -> i128 {
    let n = n as i128;
    n * (n - 1) / 2
}

/// True iff the cells are exactly `1, 2, ..., n^2` in some order.
pub fn is_natural(sq: &Square) -> bool {
    let count = sq.cells().len();
    let mut seen = vec![false; count];
    for &v in sq.cells() {
        if v < 1 || v as u64 > count as u64 {
            return false;
        }
        let slot = &mut seen[(v - 1) as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// True iff every value `0..n` occurs exactly `n` times and nothing else does.
pub fn is_balanced(sq: &Square) -> bool {
    let n = sq.order();
    let mut counts = vec![0usize; n];
    for &v in sq.cells() {
        if v < 0 || v as u64 >= n as u64 {
            return false;
        }
        counts[v as usize] += 1;
    }
    counts.iter().all(|&k| k == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(magic_constant(6), 111);
        assert_eq!(magic_constant(1), 1);
        assert_eq!(magic_constant(8), 260);
        assert_eq!(aux_constant(8), 28);
        assert_eq!(aux_constant(16), 120);
        assert_eq!(aux_constant(6), 15);
        for n in 1..=64usize {
            let n128 = n as i128;
            assert_eq!(2 * magic_constant(n), n128 * (n128 * n128 + 1));
            assert_eq!(2 * aux_constant(n), n128 * (n128 - 1));
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(Square::new(0, vec![]), Err(Error::ZeroOrder));
        assert!(matches!(
            Square::new(2, vec![1, 2, 3]),
            Err(Error::CellCount { expected: 4, .. })
        ));
        assert!(matches!(
            Square::from_rows(&[vec![1, 2], vec![3]]),
            Err(Error::Ragged { row: 1, .. })
        ));
    }

    #[test]
    fn natural_and_balanced() {
        let ones = Square::new(2, vec![1; 4]).unwrap();
        assert!(!is_natural(&ones));
        let zeros = Square::new(2, vec![0; 4]).unwrap();
        assert!(!is_balanced(&zeros));
        let nat = Square::from_rows(&[[4, 1], [2, 3]]).unwrap();
        assert!(is_natural(&nat));
        assert!(!is_balanced(&nat));
        let bal = Square::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(is_balanced(&bal));
        assert!(!is_natural(&bal));
        assert!(is_natural(&Square::new(1, vec![1]).unwrap()));
    }

    #[test]
    fn aux_pair_range() {
        let q = Square::from_rows(&[[0, 1], [1, 2]]).unwrap();
        let r = Square::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(
            AuxPair::new(q, r),
            Err(Error::AuxValueOutOfRange { row: 1, col: 1, value: 2, .. })
        ));
    }

    #[test]
    fn dihedral_images_are_distinct_for_asymmetric_grid() {
        let sq = Square::from_fn(3, |r, c| (r * 3 + c) as Value).unwrap();
        let mut images = sq.dihedral_images().to_vec();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 8);
        assert_eq!(sq.rotate_90().rotate_90(), sq.rotate_180());
        assert_eq!(sq.transpose(), sq.rotate_90().mirror());
    }

    #[test]
    fn targets() {
        let t = IndexTargets::natural(6);
        assert_eq!(t.half_line().to_string(), "111/2");
        assert!(!t.half_line().is_integral());
        assert_eq!(t.subsquare().to_string(), "74");
        assert_eq!(IndexTargets::natural(8).subsquare().value(), Some(130));
        assert!(IndexTargets::natural(8).half_line().accepts(130));
    }
}
