//! Euler's composition `M = nQ + R + 1` and its inverse.

use crate::error::{Error, Result};
use crate::square::{AuxPair, Square, Value};

pub fn compose(pair: &AuxPair) -> Result<Square> {
    let n = pair.order();
    let scale = Value::try_from(n).map_err(|_| Error::Overflow(n))?;
    let cells = pair
        .quotient()
        .cells()
        .iter()
        .zip(pair.remainder().cells())
        .map(|(&q, &r)| {
            q.checked_mul(scale)
                .and_then(|v| v.checked_add(r))
                .and_then(|v| v.checked_add(1))
                .ok_or(Error::Overflow(n))
        })
        .collect::<Result<Vec<_>>>()?;
    Square::new(n, cells)
}

/// Splits `sq` into quotient and remainder squares. Every cell must be at
/// least 1 and at most `n^2`.
pub fn decompose(sq: &Square) -> Result<AuxPair> {
    let n = sq.order();
    let modulus = n as Value;
    let mut quotient = Vec::with_capacity(n * n);
    let mut remainder = Vec::with_capacity(n * n);
    for (i, &value) in sq.cells().iter().enumerate() {
        let (row, col) = (i / n, i % n);
        if value < 1 {
            return Err(Error::CellBelowOne { row, col, value });
        }
        let shifted = value - 1;
        let r = shifted % modulus;
        let q = (shifted - r) / modulus;
        if q >= modulus {
            return Err(Error::QuotientOutOfRange {
                row,
                col,
                quotient: q,
                order: n,
            });
        }
        quotient.push(q);
        remainder.push(r);
    }
    AuxPair::new(Square::new(n, quotient)?, Square::new(n, remainder)?)
}

/// True iff the `n^2` ordered pairs `(Q[r][c], R[r][c])` are all distinct.
pub fn is_orthogonal(pair: &AuxPair) -> bool {
    let n = pair.order();
    let mut seen = vec![false; n * n];
    for (&q, &r) in pair.quotient().cells().iter().zip(pair.remainder().cells()) {
        let slot = &mut seen[q as usize * n + r as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}
