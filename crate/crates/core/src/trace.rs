//! Per-iteration best-so-far records and their CSV form.

use std::io::Write;

use crate::error::{Error, Result};

pub const TRACE_CSV_HEADER: &str = "iteration,black_best,red_best,global_best";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    /// 1-based iteration index.
    pub iteration: usize,
    /// Best-so-far of the black group (the only group in single-colony runs).
    pub black_best: u64,
    /// Best-so-far of the red group, absent for single-colony runs.
    pub red_best: Option<u64>,
    pub global_best: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConvergenceTrace {
    rows: Vec<TraceRow>,
}

impl ConvergenceTrace {
    pub fn new(rows: Vec<TraceRow>) -> Self {
        ConvergenceTrace { rows }
    }

    pub fn push(&mut self, row: TraceRow) {
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[TraceRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    pub fn is_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].global_best <= w[0].global_best)
    }
}

/// Writes the trace as CSV and returns the number of data rows.
///
/// A missing red column is written as an empty field.
pub fn emit_trace_csv<W: Write>(trace: &ConvergenceTrace, mut sink: W) -> std::io::Result<usize> {
    writeln!(sink, "{TRACE_CSV_HEADER}")?;
    for row in &trace.rows {
        match row.red_best {
            Some(red) => writeln!(
                sink,
                "{},{},{},{}",
                row.iteration, row.black_best, red, row.global_best
            )?,
            None => writeln!(sink, "{},{},,{}", row.iteration, row.black_best, row.global_best)?,
        }
    }
    sink.flush()?;
    Ok(trace.rows.len())
}

/// Reads CSV produced by [`emit_trace_csv`].
pub fn parse_trace_csv(text: &str) -> Result<ConvergenceTrace> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == TRACE_CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header {TRACE_CSV_HEADER:?}"),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse {
            line: idx + 1,
            message: format!("bad {what} field in {line:?}"),
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad("count of"));
        }
        let red_best = if fields[2].is_empty() {
            None
        } else {
            Some(fields[2].parse().map_err(|_| bad("red_best"))?)
        };
        rows.push(TraceRow {
            iteration: fields[0].parse().map_err(|_| bad("iteration"))?,
            black_best: fields[1].parse().map_err(|_| bad("black_best"))?,
            red_best,
            global_best: fields[3].parse().map_err(|_| bad("global_best"))?,
        });
    }
    Ok(ConvergenceTrace { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn emit(trace: &ConvergenceTrace) -> (usize, String) {
        let mut buf = Vec::new();
        let n = emit_trace_csv(trace, &mut buf).unwrap();
        (n, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn empty_trace_is_header_only() {
        let (n, text) = emit(&ConvergenceTrace::default());
        assert_eq!(n, 0);
        assert_eq!(text, format!("{TRACE_CSV_HEADER}\n"));
    }

    #[test]
    fn rows_in_iteration_order() {
        let trace = ConvergenceTrace::new(vec![
            TraceRow { iteration: 1, black_best: 450, red_best: Some(447), global_best: 447 },
            TraceRow { iteration: 2, black_best: 440, red_best: Some(447), global_best: 440 },
            TraceRow { iteration: 3, black_best: 440, red_best: Some(431), global_best: 431 },
        ]);
        let (n, text) = emit(&trace);
        assert_eq!(n, 3);
        assert_eq!(
            text,
            "iteration,black_best,red_best,global_best\n1,450,447,447\n2,440,447,440\n3,440,431,431\n"
        );
        assert!(trace.is_monotone());
    }

    #[test]
    fn single_colony_rows_leave_red_empty() {
        let trace = ConvergenceTrace::new(vec![TraceRow {
            iteration: 1,
            black_best: 12,
            red_best: None,
            global_best: 12,
        }]);
        assert!(emit(&trace).1.ends_with("1,12,,12\n"));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_trace_csv("a,b\n").is_err());
        assert!(parse_trace_csv(&format!("{TRACE_CSV_HEADER}\n1,2,3\n")).is_err());
        assert!(parse_trace_csv(&format!("{TRACE_CSV_HEADER}\n1,x,,3\n")).is_err());
    }

    proptest! {
        #[test]
        fn csv_round_trip(rows in prop::collection::vec((any::<u32>(), any::<u64>(), any::<Option<u64>>(), any::<u64>()), 0..40)) {
            let trace = ConvergenceTrace::new(rows.into_iter().map(|(i, b, r, g)| TraceRow {
                iteration: i as usize, black_best: b, red_best: r, global_best: g,
            }).collect());
            let (_, text) = emit(&trace);
            prop_assert_eq!(parse_trace_csv(&text).unwrap(), trace);
        }
    }
}
