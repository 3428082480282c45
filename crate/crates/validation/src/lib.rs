//! Reference checks written straight from the definitions of the line
//! conditions. Nothing here calls into `franklin`; the acceptance run
//! compares the library against these.
//!
//! Grids are plain `Vec<Vec<i64>>`, addressed `(row, col)` from 0.

use std::collections::HashSet;

pub type Grid = Vec<Vec<i64>>;
pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bend {
    Down,
    Up,
    Right,
    Left,
}

impl Bend {
    pub const ALL: [Bend; 4] = [Bend::Down, Bend::Up, Bend::Right, Bend::Left];
}

/// Each of `1..=n^2` exactly once.
pub fn is_natural(g: &Grid) -> bool {
    let n = g.len() as i64;
    let mut values = g.concat();
    values.sort_unstable();
    values.into_iter().eq(1..=n * n)
}

/// Each of `0..n` exactly `n` times.
pub fn is_balanced(g: &Grid) -> bool {
    let n = g.len();
    let mut counts = vec![0usize; n];
    for &v in g.iter().flatten() {
        match usize::try_from(v) {
            Ok(v) if v < n => counts[v] += 1,
            _ => return false,
        }
    }
    counts.iter().all(|&c| c == n)
}

pub fn row_sums(g: &Grid) -> Vec<i64> {
    g.iter().map(|row| row.iter().sum()).collect()
}

pub fn column_sums(g: &Grid) -> Vec<i64> {
    (0..g.len())
        .map(|c| g.iter().map(|row| row[c]).sum())
        .collect()
}

fn sum(g: &Grid, cells: &[Cell]) -> i64 {
    cells.iter().map(|&(r, c)| g[r][c]).sum()
}

/// Cells of the bent diagonal starting at `shift`: one cell per column for
/// `Down`/`Up` (per row for `Right`/`Left`), the offset stepping by one for
/// the first half, holding across the middle, then stepping back.
pub fn bent_cells(n: usize, bend: Bend, shift: usize) -> Vec<Cell> {
    let h = n / 2;
    let mut off = 0isize;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 && i < h {
            off += 1;
        } else if i > h {
            off -= 1;
        }
        let across = match bend {
            Bend::Down | Bend::Right => shift as isize + off,
            Bend::Up | Bend::Left => shift as isize - off,
        }
        .rem_euclid(n as isize) as usize;
        out.push(match bend {
            Bend::Down | Bend::Up => (across, i),
            Bend::Right | Bend::Left => (i, across),
        });
    }
    out
}

fn rows_and_columns(g: &Grid, m: i64, out: &mut Vec<String>) {
    for (r, s) in row_sums(g).into_iter().enumerate() {
        if s != m {
            out.push(format!("row {r} sums to {s}"));
        }
    }
    for (c, s) in column_sums(g).into_iter().enumerate() {
        if s != m {
            out.push(format!("column {c} sums to {s}"));
        }
    }
}

/// Lines missing the target `m` under the ordinary magic conditions.
pub fn magic_failures(g: &Grid, m: i64) -> Vec<String> {
    let n = g.len();
    let mut out = Vec::new();
    rows_and_columns(g, m, &mut out);
    let main: i64 = (0..n).map(|i| g[i][i]).sum();
    let cross: i64 = (0..n).map(|i| g[i][n - 1 - i]).sum();
    if main != m {
        out.push(format!("main diagonal sums to {main}"));
    }
    if cross != m {
        out.push(format!("cross diagonal sums to {cross}"));
    }
    out
}

/// Lines missing `m` among rows, columns and all broken diagonals.
pub fn pandiagonal_failures(g: &Grid, m: i64) -> Vec<String> {
    let n = g.len();
    let mut out = Vec::new();
    rows_and_columns(g, m, &mut out);
    for k in 0..n {
        let down: i64 = (0..n).map(|r| g[r][(r + k) % n]).sum();
        let up: i64 = (0..n).map(|r| g[r][(k + n * n - r) % n]).sum();
        if down != m {
            out.push(format!("broken diagonal {k} sums to {down}"));
        }
        if up != m {
            out.push(format!("broken antidiagonal {k} sums to {up}"));
        }
    }
    out
}

/// Lines missing the Franklin conditions at line sum `m`: rows, columns,
/// the four bent families, half-rows and half-columns at `m/2`, and every
/// wrapped 2x2 block at `4m/n`. Order must be even.
pub fn franklin_failures(g: &Grid, m: i64) -> Vec<String> {
    let n = g.len();
    assert!(n % 2 == 0, "Franklin conditions need even order");
    let h = n / 2;
    let mut out = Vec::new();
    rows_and_columns(g, m, &mut out);
    for bend in Bend::ALL {
        for s in 0..n {
            let total = sum(g, &bent_cells(n, bend, s));
            if total != m {
                out.push(format!("{bend:?} bent diagonal {s} sums to {total}"));
            }
        }
    }
    for i in 0..n {
        for (half, range) in [("first", 0..h), ("second", h..n)] {
            let row: i64 = range.clone().map(|c| g[i][c]).sum();
            let col: i64 = range.map(|r| g[r][i]).sum();
            if 2 * row != m {
                out.push(format!("{half} half of row {i} sums to {row}"));
            }
            if 2 * col != m {
                out.push(format!("{half} half of column {i} sums to {col}"));
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            let (r1, c1) = ((r + 1) % n, (c + 1) % n);
            let block = g[r][c] + g[r][c1] + g[r1][c] + g[r1][c1];
            if n as i64 * block != 4 * m {
                out.push(format!("2x2 block at ({r},{c}) sums to {block}"));
            }
        }
    }
    out
}

pub fn compose(q: &Grid, r: &Grid) -> Grid {
    let n = q.len() as i64;
    q.iter()
        .zip(r)
        .map(|(qr, rr)| qr.iter().zip(rr).map(|(&a, &b)| n * a + b + 1).collect())
        .collect()
}

pub fn decompose(m: &Grid) -> (Grid, Grid) {
    let n = m.len() as i64;
    let split = |f: fn(i64, i64) -> i64| -> Grid {
        m.iter()
            .map(|row| row.iter().map(|&v| f(v - 1, n)).collect())
            .collect()
    };
    (split(i64::div_euclid), split(i64::rem_euclid))
}

/// Every `(q, r)` value pair occurs exactly once.
pub fn is_orthogonal(q: &Grid, r: &Grid) -> bool {
    let n = q.len();
    let pairs: HashSet<(i64, i64)> = q
        .iter()
        .flatten()
        .copied()
        .zip(r.iter().flatten().copied())
        .collect();
    pairs.len() == n * n
}

/// Grid whose even columns are `seed` and odd columns its complement
/// `n - 1 - seed`.
pub fn column_alternate(seed: &[usize]) -> Grid {
    let n = seed.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let v = if c % 2 == 0 { seed[r] } else { n - 1 - seed[r] };
                    v as i64
                })
                .collect()
        })
        .collect()
}
