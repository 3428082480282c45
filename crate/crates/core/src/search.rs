//! Backtracking enumeration of natural Franklin squares.
//!
//! Cells are filled in a fixed order (see [`FillOrder`]) with values
//! `1..=n^2`. Every constrained line
//! carries an integer target; placing a value narrows the admissible range
//! of each line through the cell using the smallest and largest sums the
//! line's remaining cells could still take from unused values. When the
//! cell is the last free one of some line, its value is forced.
//!
//! The tree is split at a fixed prefix depth into tasks that workers pull
//! in order. Results are merged by task index, so witnesses come out in
//! the same order as a sequential run.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::mpsc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lines::{family_lines, LineFamily};
use crate::square::{magic_constant, IndexTargets, Square, Value};
use crate::verify::verify;

/// Largest order the searcher accepts.
pub const MAX_ORDER: usize = 16;

/// Default number of cells fixed before the tree is split into tasks.
pub const DEFAULT_SPLIT_DEPTH: usize = 2;

// Node counts are published to the shared total this often when no budget
// is set.
const FLUSH_EVERY: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Count,
    First,
    Stream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pruning {
    /// Prune on every Franklin line.
    Full,
    /// Prune on rows and columns only; Franklin conditions are checked at
    /// the leaves. Used to cross-check the full pruning.
    SemiMagicOnly,
}

/// Order in which cells receive values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FillOrder {
    /// `Shell` with full pruning, `RowMajor` with semi-magic pruning, where
    /// no 2x2 blocks force values.
    Auto,
    RowMajor,
    /// L-shaped shells `max(r, c) = k` for `k = 0, 1, ...`; within a shell
    /// the column part `(0..k, k)` comes first, then the row part
    /// `(k, 0..=k)`. Once `(0, k)` and `(k, 0)` are placed every other
    /// cell of the shell closes a 2x2 block and is forced, so a choice
    /// on the first row meets the first column's constraints early.
    Shell,
}

impl FillOrder {
    /// Cell indices (`r * n + c`) in fill order.
    pub fn cells(self, n: usize, pruning: Pruning) -> Vec<usize> {
        match self {
            FillOrder::Auto => match pruning {
                Pruning::Full => FillOrder::Shell.cells(n, pruning),
                Pruning::SemiMagicOnly => FillOrder::RowMajor.cells(n, pruning),
            },
            FillOrder::RowMajor => (0..n * n).collect(),
            FillOrder::Shell => {
                let mut out = Vec::with_capacity(n * n);
                for k in 0..n {
                    out.extend((0..k).map(|r| r * n + k));
                    out.extend((0..=k).map(|c| k * n + c));
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub order: usize,
    pub mode: SearchMode,
    pub node_budget: Option<u64>,
    pub parallel_width: usize,
    /// Required for enumerations that are not desk-scale.
    pub long_run: bool,
    pub pruning: Pruning,
    /// Count only the lexicographically smallest of each square's eight
    /// rotations and reflections.
    pub symmetry_reduction: bool,
    pub split_depth: usize,
    pub fill_order: FillOrder,
}

impl SearchOptions {
    pub fn new(order: usize) -> Self {
        SearchOptions {
            order,
            mode: SearchMode::Count,
            node_budget: None,
            parallel_width: 1,
            long_run: false,
            pruning: Pruning::Full,
            symmetry_reduction: false,
            split_depth: DEFAULT_SPLIT_DEPTH,
            fill_order: FillOrder::Auto,
        }
    }

    pub fn fill_order(mut self, order: FillOrder) -> Self {
        self.fill_order = order;
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn node_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn workers(mut self, width: usize) -> Self {
        self.parallel_width = width;
        self
    }

    pub fn long_run(mut self, on: bool) -> Self {
        self.long_run = on;
        self
    }

    pub fn pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn symmetry_reduction(mut self, on: bool) -> Self {
        self.symmetry_reduction = on;
        self
    }

    pub fn split_depth(mut self, depth: usize) -> Self {
        self.split_depth = depth;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.order;
        if n < 2 || n > MAX_ORDER {
            return Err(if n % 2 == 1 {
                Error::EvenOrderRequired(n)
            } else {
                Error::SearchOrder {
                    order: n,
                    max: MAX_ORDER,
                }
            });
        }
        if n % 2 != 0 {
            return Err(Error::EvenOrderRequired(n));
        }
        let heavy = n >= 12
            || (n >= 8 && self.mode != SearchMode::First)
            || (n >= 6 && self.pruning == Pruning::SemiMagicOnly);
        if heavy && self.node_budget.is_none() && !self.long_run {
            return Err(Error::LongRunRequired(n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub order: usize,
    /// Franklin squares found (equivalence classes under symmetry
    /// reduction). In FIRST mode, 0 or 1.
    pub count: u64,
    /// True iff the whole tree was covered.
    pub exhausted: bool,
    /// Complete grids reached; with `SemiMagicOnly` pruning these are all
    /// the semi-magic squares.
    pub leaves: u64,
    pub nodes_visited: u64,
    #[serde(skip)]
    pub witnesses: Vec<Square>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Progress {
    pub nodes_visited: u64,
    pub tasks_done: usize,
    pub tasks_total: usize,
    /// Depth at which the tree was split.
    pub frontier_depth: usize,
}

/// Optional callbacks; both run on the calling thread.
#[derive(Default)]
pub struct Hooks<'a> {
    pub progress: Option<&'a mut dyn FnMut(&Progress)>,
    /// Receives STREAM-mode witnesses in deterministic order. When set,
    /// witnesses are not collected into the outcome.
    pub sink: Option<&'a mut dyn FnMut(&Square)>,
}

pub fn search_natural_franklin(opts: &SearchOptions) -> Result<SearchOutcome> {
    search_with(opts, Hooks::default())
}

pub fn search_with(opts: &SearchOptions, mut hooks: Hooks<'_>) -> Result<SearchOutcome> {
    opts.validate()?;
    let n = opts.order;
    let Some(model) = Model::new(n, opts.pruning, opts.fill_order)? else {
        // Some target is fractional, so no integer grid meets it.
        return Ok(SearchOutcome {
            order: n,
            count: 0,
            exhausted: true,
            leaves: 0,
            nodes_visited: 0,
            witnesses: Vec::new(),
        });
    };
    let shared = Shared {
        model: &model,
        opts,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        best_task: AtomicUsize::new(usize::MAX),
    };

    let depth = opts.split_depth.clamp(1, model.cells - 1);
    let mut splitter = Walker::new(&shared, usize::MAX);
    let mut prefixes = Vec::new();
    let split_complete = splitter.split(0, depth, &mut prefixes);
    splitter.flush();

    let total_tasks = prefixes.len();
    let next = AtomicUsize::new(0);
    let width = opts.parallel_width.max(1).min(total_tasks.max(1));
    let mut runs: Vec<Option<TaskRun>> = vec![None; total_tasks];
    let mut reorder = Reorder::default();
    let stream_to_sink = opts.mode == SearchMode::Stream && hooks.sink.is_some();

    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<TaskRun>();
        for _ in 0..width {
            let tx = tx.clone();
            let (shared, prefixes, next) = (&shared, &prefixes, &next);
            scope.spawn(move || loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= prefixes.len() {
                    break;
                }
                let run = run_task(shared, index, &prefixes[index]);
                if tx.send(run).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut done = 0usize;
        for mut run in rx {
            done += 1;
            if stream_to_sink {
                let sink = hooks.sink.as_mut().expect("sink present");
                for batch in reorder.push(run.index, std::mem::take(&mut run.witnesses)) {
                    batch.iter().for_each(|sq| sink(sq));
                }
            }
            let index = run.index;
            runs[index] = Some(run);
            if let Some(progress) = hooks.progress.as_mut() {
                progress(&Progress {
                    nodes_visited: shared.nodes.load(Ordering::Relaxed),
                    tasks_done: done,
                    tasks_total: total_tasks,
                    frontier_depth: depth,
                });
            }
        }
    });

    let runs: Vec<TaskRun> = runs.into_iter().map(|r| r.expect("every task reports")).collect();
    let nodes_visited = shared.nodes.load(Ordering::Relaxed);
    let mut outcome = SearchOutcome {
        order: n,
        count: 0,
        exhausted: split_complete,
        leaves: 0,
        nodes_visited,
        witnesses: Vec::new(),
    };
    if opts.mode == SearchMode::First {
        let best = runs.iter().position(|r| !r.witnesses.is_empty());
        let upto = best.map_or(runs.len(), |b| b + 1);
        outcome.leaves = runs[..upto].iter().map(|r| r.leaves).sum();
        outcome.exhausted &= best.is_none() && runs.iter().all(|r| r.complete);
        if let Some(b) = best {
            outcome.count = 1;
            outcome.witnesses.push(runs[b].witnesses[0].clone());
        }
    } else {
        for run in runs {
            outcome.count += run.count;
            outcome.leaves += run.leaves;
            outcome.exhausted &= run.complete;
            outcome.witnesses.extend(run.witnesses);
        }
    }
    Ok(outcome)
}

/// Releases items tagged `0, 1, 2, ...` in index order, whatever order
/// they arrive in.
#[derive(Debug)]
struct Reorder<T> {
    next: usize,
    pending: BTreeMap<usize, T>,
}

impl<T> Default for Reorder<T> {
    fn default() -> Self {
        Reorder {
            next: 0,
            pending: BTreeMap::new(),
        }
    }
}

impl<T> Reorder<T> {
    fn push(&mut self, index: usize, item: T) -> Vec<T> {
        self.pending.insert(index, item);
        let mut ready = Vec::new();
        while let Some(item) = self.pending.remove(&self.next) {
            ready.push(item);
            self.next += 1;
        }
        ready
    }
}

struct LineSpec {
    len: u32,
    target: i64,
}

struct Model {
    n: usize,
    cells: usize,
    // Cell index filled at each depth.
    fill: Vec<usize>,
    lines: Vec<LineSpec>,
    // Line indices through each cell.
    cell_lines: Vec<Vec<u32>>,
    pruning: Pruning,
}

impl Model {
    fn new(n: usize, pruning: Pruning, fill: FillOrder) -> Result<Option<Model>> {
        let m = magic_constant(n);
        let families: &[(LineFamily, i128, i128)] = match pruning {
            Pruning::SemiMagicOnly => &[(LineFamily::Row, 1, 1), (LineFamily::Column, 1, 1)],
            Pruning::Full => &[
                (LineFamily::Row, 1, 1),
                (LineFamily::Column, 1, 1),
                (LineFamily::HalfRowLeft, 1, 2),
                (LineFamily::HalfRowRight, 1, 2),
                (LineFamily::HalfColUpper, 1, 2),
                (LineFamily::HalfColLower, 1, 2),
                (LineFamily::Subsquare2x2, 4, n as i128),
                (LineFamily::BentDown, 1, 1),
                (LineFamily::BentUp, 1, 1),
                (LineFamily::BentRight, 1, 1),
                (LineFamily::BentLeft, 1, 1),
            ],
        };
        let cells = n * n;
        let mut lines = Vec::new();
        let mut cell_lines = vec![Vec::new(); cells];
        for &(family, scale, parts) in families {
            let total = scale * m;
            if total % parts != 0 {
                return Ok(None);
            }
            let target = (total / parts) as i64;
            for line in family_lines(n, family)? {
                let id = lines.len() as u32;
                for &(r, c) in line.cells() {
                    cell_lines[r * n + c].push(id);
                }
                lines.push(LineSpec {
                    len: line.cells().len() as u32,
                    target,
                });
            }
        }
        Ok(Some(Model {
            n,
            cells,
            fill: fill.cells(n, pruning),
            lines,
            cell_lines,
            pruning,
        }))
    }
}

struct Shared<'a> {
    model: &'a Model,
    opts: &'a SearchOptions,
    nodes: AtomicU64,
    stop: AtomicBool,
    best_task: AtomicUsize,
}

#[derive(Clone)]
struct TaskRun {
    index: usize,
    count: u64,
    leaves: u64,
    complete: bool,
    witnesses: Vec<Square>,
}

fn run_task(shared: &Shared<'_>, index: usize, prefix: &[Value]) -> TaskRun {
    let mut run = TaskRun {
        index,
        count: 0,
        leaves: 0,
        complete: false,
        witnesses: Vec::new(),
    };
    let skip = shared.opts.mode == SearchMode::First
        && shared.best_task.load(Ordering::Relaxed) < index;
    if skip || shared.stop.load(Ordering::Relaxed) {
        return run;
    }
    let mut walker = Walker::new(shared, index);
    for (depth, &v) in prefix.iter().enumerate() {
        walker.place(depth, v);
    }
    let complete = walker.descend(prefix.len());
    walker.flush();
    run.count = walker.count;
    run.leaves = walker.leaves;
    run.witnesses = walker.witnesses;
    run.complete = complete;
    run
}

/// Unused values `1..=n^2` as a bitset, for quick k-smallest/k-largest
/// sums.
#[derive(Clone)]
struct FreeSet {
    words: [u64; 5],
}

impl FreeSet {
    fn full(max: usize) -> Self {
        let mut words = [0u64; 5];
        for v in 1..=max {
            words[v / 64] |= 1 << (v % 64);
        }
        FreeSet { words }
    }

    /// Smallest free value `>= v`.
    fn next_from(&self, v: usize) -> Option<usize> {
        let mut w = v / 64;
        if w >= self.words.len() {
            return None;
        }
        let mut bits = self.words[w] & (!0u64 << (v % 64));
        loop {
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            bits = self.words[w];
        }
    }

    fn toggle(&mut self, v: usize) {
        self.words[v / 64] ^= 1 << (v % 64);
    }

    /// `out[k]` = sum of the `k` smallest free values, for `k <= len`.
    fn low_sums(&self, len: usize, out: &mut [i64]) {
        let mut k = 0;
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 && k < len {
                let v = (w * 64 + bits.trailing_zeros() as usize) as i64;
                out[k + 1] = out[k] + v;
                k += 1;
                bits &= bits - 1;
            }
        }
    }

    /// `out[k]` = sum of the `k` largest free values, for `k <= len`.
    fn high_sums(&self, len: usize, out: &mut [i64]) {
        let mut k = 0;
        for (w, &word) in self.words.iter().enumerate().rev() {
            let mut bits = word;
            while bits != 0 && k < len {
                let top = 63 - bits.leading_zeros() as usize;
                out[k + 1] = out[k] + (w * 64 + top) as i64;
                k += 1;
                bits &= !(1 << top);
            }
        }
    }
}

/// Depth-first walker over one part of the tree.
struct Walker<'s, 'a> {
    shared: &'s Shared<'a>,
    task: usize,
    first_mode: bool,
    grid: Vec<Value>,
    free: FreeSet,
    line_sum: Vec<i64>,
    line_left: Vec<u32>,
    pending_nodes: u64,
    count: u64,
    leaves: u64,
    witnesses: Vec<Square>,
}

impl<'s, 'a> Walker<'s, 'a> {
    fn new(shared: &'s Shared<'a>, task: usize) -> Self {
        let model = shared.model;
        Walker {
            shared,
            task,
            first_mode: shared.opts.mode == SearchMode::First,
            grid: vec![0; model.cells],
            free: FreeSet::full(model.cells),
            line_sum: vec![0; model.lines.len()],
            line_left: model.lines.iter().map(|l| l.len).collect(),
            pending_nodes: 0,
            count: 0,
            leaves: 0,
            witnesses: Vec::new(),
        }
    }

    fn place(&mut self, depth: usize, v: Value) {
        let cell = self.shared.model.fill[depth];
        self.grid[cell] = v;
        self.free.toggle(v as usize);
        for &l in &self.shared.model.cell_lines[cell] {
            self.line_sum[l as usize] += v;
            self.line_left[l as usize] -= 1;
        }
    }

    fn unplace(&mut self, depth: usize, v: Value) {
        let cell = self.shared.model.fill[depth];
        self.grid[cell] = 0;
        self.free.toggle(v as usize);
        for &l in &self.shared.model.cell_lines[cell] {
            self.line_sum[l as usize] -= v;
            self.line_left[l as usize] += 1;
        }
    }

    fn flush(&mut self) {
        if self.pending_nodes > 0 {
            self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed);
            self.pending_nodes = 0;
        }
    }

    /// Accounts for one node; false if the walk must stop.
    fn tick(&mut self) -> bool {
        let shared = self.shared;
        if shared.stop.load(Ordering::Relaxed) {
            return false;
        }
        if self.first_mode && shared.best_task.load(Ordering::Relaxed) < self.task {
            return false;
        }
        if let Some(budget) = shared.opts.node_budget {
            if shared.nodes.fetch_add(1, Ordering::Relaxed) >= budget {
                shared.nodes.fetch_sub(1, Ordering::Relaxed);
                shared.stop.store(true, Ordering::Relaxed);
                return false;
            }
        } else {
            self.pending_nodes += 1;
            if self.pending_nodes >= FLUSH_EVERY {
                self.flush();
            }
        }
        true
    }

    /// Inclusive range of values admissible at the cell filled at `depth`,
    /// or `None`.
    fn candidates(&self, depth: usize) -> Option<(i64, i64)> {
        let model = self.shared.model;
        let lines = &model.cell_lines[model.fill[depth]];
        let (mut lo, mut hi) = (1i64, model.cells as i64);
        let mut max_rem = 0;
        for &l in lines {
            let l = l as usize;
            let rem = self.line_left[l] as usize - 1;
            if rem == 0 {
                let need = model.lines[l].target - self.line_sum[l];
                lo = lo.max(need);
                hi = hi.min(need);
            }
            max_rem = max_rem.max(rem);
        }
        if lo > hi {
            return None;
        }
        if max_rem == 0 {
            return Some((lo, hi));
        }
        // The bounds include the value about to be placed among the free
        // ones, which only loosens them.
        let mut low = [0i64; MAX_ORDER + 1];
        let mut high = [0i64; MAX_ORDER + 1];
        self.free.low_sums(max_rem, &mut low);
        self.free.high_sums(max_rem, &mut high);
        for &l in lines {
            let l = l as usize;
            let rem = self.line_left[l] as usize - 1;
            let need = model.lines[l].target - self.line_sum[l];
            lo = lo.max(need - high[rem]);
            hi = hi.min(need - low[rem]);
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    /// Returns true iff the subtree was covered completely.
    fn descend(&mut self, depth: usize) -> bool {
        if depth == self.shared.model.cells {
            return self.leaf();
        }
        let Some((lo, hi)) = self.candidates(depth) else {
            return true;
        };
        let mut from = lo as usize;
        while let Some(next) = self.free.next_from(from) {
            if next as i64 > hi {
                break;
            }
            from = next + 1;
            let v = next as Value;
            if !self.tick() {
                return false;
            }
            self.place(depth, v);
            let complete = self.descend(depth + 1);
            self.unplace(depth, v);
            if !complete {
                return false;
            }
        }
        true
    }

    /// Same walk down to `limit`, recording the values of each surviving
    /// prefix.
    fn split(&mut self, depth: usize, limit: usize, out: &mut Vec<Vec<Value>>) -> bool {
        if depth == limit {
            let fill = &self.shared.model.fill;
            out.push(fill[..limit].iter().map(|&cell| self.grid[cell]).collect());
            return true;
        }
        let Some((lo, hi)) = self.candidates(depth) else {
            return true;
        };
        let mut from = lo as usize;
        while let Some(next) = self.free.next_from(from) {
            if next as i64 > hi {
                break;
            }
            from = next + 1;
            let v = next as Value;
            if !self.tick() {
                return false;
            }
            self.place(depth, v);
            let complete = self.split(depth + 1, limit, out);
            self.unplace(depth, v);
            if !complete {
                return false;
            }
        }
        true
    }

    fn leaf(&mut self) -> bool {
        let shared = self.shared;
        let model = shared.model;
        self.leaves += 1;
        let sq = Square::new(model.n, self.grid.clone()).expect("full grid");
        let report = verify(&sq, &IndexTargets::natural(model.n)).expect("same order");
        assert!(report.flags.natural, "search produced a non-natural grid");
        let franklin = match model.pruning {
            Pruning::Full => {
                assert!(
                    report.flags.franklin,
                    "search leaf failed re-verification:\n{sq}"
                );
                true
            }
            Pruning::SemiMagicOnly => {
                assert!(report.flags.semi_magic, "search leaf is not semi-magic:\n{sq}");
                report.flags.franklin
            }
        };
        if !franklin {
            return true;
        }
        if shared.opts.symmetry_reduction {
            let least = sq.dihedral_images().into_iter().min().expect("eight images");
            if least != sq {
                return true;
            }
        }
        self.count += 1;
        match shared.opts.mode {
            SearchMode::Count => true,
            SearchMode::Stream => {
                self.witnesses.push(sq);
                true
            }
            SearchMode::First => {
                self.witnesses.push(sq);
                shared.best_task.fetch_min(self.task, Ordering::Relaxed);
                false
            }
        }
    }
}
