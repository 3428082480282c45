//! JSON and plain-text renderings of verification reports and search
//! outcomes.
//!
//! JSON output uses 0-based `[row, col]` cells and line shifts as the
//! library defines them. The text summary numbers rows, columns and
//! lines from 1.

use std::fmt::Write;

use franklin::search::Progress;
use franklin::{PropertyReport, SearchMode, SearchOutcome, Square, Status, Target};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Where the line target came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetSource {
    Natural,
    Balanced,
    Explicit,
    /// Taken from the first row of a square that is neither natural nor
    /// balanced.
    Inferred,
}

impl TargetSource {
    fn as_str(self) -> &'static str {
        match self {
            TargetSource::Natural => "natural",
            TargetSource::Balanced => "balanced",
            TargetSource::Explicit => "explicit",
            TargetSource::Inferred => "inferred",
        }
    }
}

fn big(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(v) => v.into(),
        Err(_) => v.to_string().into(),
    }
}

fn target(t: Target) -> Value {
    match t.value() {
        Some(v) => big(v),
        None => t.to_string().into(),
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Passed => "passed",
        Status::Failed => "failed",
        Status::NotApplicable => "not_applicable",
        Status::Unsatisfiable => "unsatisfiable",
    }
}

pub fn report_json(report: &PropertyReport, source: TargetSource) -> Value {
    let conditions: Vec<Value> = report
        .conditions
        .iter()
        .map(|c| {
            let failures: Vec<Value> = c
                .failures
                .iter()
                .map(|f| {
                    json!({
                        "family": f.family.as_str(),
                        "shift": f.shift,
                        "cells": f.cells.iter().map(|&(r, c)| [r, c]).collect::<Vec<_>>(),
                        "actual": big(f.actual),
                    })
                })
                .collect();
            json!({
                "condition": c.condition.as_str(),
                "target": target(c.target),
                "status": status(c.status),
                "passed": c.passed(),
                "lines_checked": c.lines_checked,
                "failures": failures,
            })
        })
        .collect();
    let f = &report.flags;
    json!({
        "schema_version": SCHEMA_VERSION,
        "order": report.order,
        "line_target": big(report.targets.line_sum),
        "target_source": source.as_str(),
        "labels": f.labels().iter().map(|l| l.as_str()).collect::<Vec<_>>(),
        "flags": {
            "natural": f.natural,
            "balanced": f.balanced,
            "semi_magic": f.semi_magic,
            "magic": f.magic,
            "pandiagonal": f.pandiagonal,
            "franklin": f.franklin,
            "pandiagonal_franklin": f.pandiagonal_franklin,
        },
        "conditions": conditions,
    })
}

pub fn report_summary(report: &PropertyReport, source: TargetSource) -> String {
    let mut out = String::new();
    let labels: Vec<&str> = report.flags.labels().iter().map(|l| l.as_str()).collect();
    let _ = writeln!(
        out,
        "order {}, line target {} ({})",
        report.order,
        report.targets.line_sum,
        source.as_str()
    );
    let labels = if labels.is_empty() {
        "none".to_string()
    } else {
        labels.join(", ")
    };
    let _ = writeln!(out, "labels: {labels}");
    for c in &report.conditions {
        let detail = match c.status {
            Status::Passed => format!("{} lines", c.lines_checked),
            Status::Failed => format!("{} of {} lines off", c.failures.len(), c.lines_checked),
            Status::NotApplicable => "odd order".to_string(),
            Status::Unsatisfiable => format!("target {} is not an integer", c.target),
        };
        let _ = writeln!(
            out,
            "  {:<13}{:<15}{detail}",
            c.condition.as_str(),
            status(c.status)
        );
        for f in &c.failures {
            let cells: Vec<String> = f
                .cells
                .iter()
                .map(|&(r, c)| format!("({},{})", r + 1, c + 1))
                .collect();
            let _ = writeln!(
                out,
                "    {} #{}: sum {}, want {} at {}",
                f.family,
                f.shift + 1,
                f.actual,
                c.target,
                cells.join(" ")
            );
        }
    }
    out
}

fn mode(m: SearchMode) -> &'static str {
    match m {
        SearchMode::Count => "count",
        SearchMode::First => "first",
        SearchMode::Stream => "stream",
    }
}

pub fn outcome_json(outcome: &SearchOutcome, m: SearchMode) -> Value {
    let mut obj = json!({
        "schema_version": SCHEMA_VERSION,
        "order": outcome.order,
        "mode": mode(m),
        "count": outcome.count,
        "exhausted": outcome.exhausted,
        "leaves": outcome.leaves,
        "nodes_visited": outcome.nodes_visited,
    });
    if m == SearchMode::First {
        obj["witness"] = match outcome.witnesses.first() {
            Some(sq) => sq.to_rows().into(),
            None => Value::Null,
        };
    }
    obj
}

pub fn witness_json(sq: &Square) -> Value {
    json!({ "witness": sq.to_rows() })
}

pub fn progress_json(p: &Progress) -> Value {
    json!({
        "progress": {
            "nodes_visited": p.nodes_visited,
            "tasks_done": p.tasks_done,
            "tasks_total": p.tasks_total,
            "frontier_depth": p.frontier_depth,
        }
    })
}
