//! The `.bmcp` text format.
//!
//! ```text
//! BMCP 1
//! m n C
//! w_1 .. w_m
//! p_1 .. p_n
//! k e_1 .. e_k        (one line per item, 1-based ascending element indices)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, ParseErrorKind, Result};
use crate::instance::Instance;

pub const MAGIC: &str = "BMCP";
pub const VERSION: &str = "1";
pub const EXTENSION: &str = "bmcp";

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    fn next_line(&mut self) -> Result<(usize, Vec<&'a str>)> {
        match self.inner.next() {
            Some((idx, line)) => {
                self.last = idx + 1;
                Ok((idx + 1, line.split_whitespace().collect()))
            }
            None => Err(Error::parse(self.last + 1, ParseErrorKind::UnexpectedEof)),
        }
    }
}

fn number(line: usize, tok: &str) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| Error::parse(line, ParseErrorKind::InvalidNumber(tok.to_string())))
}

fn positive_values(line: usize, toks: &[&str], expected: usize, what: &str) -> Result<Vec<u64>> {
    if toks.len() != expected {
        return Err(Error::parse(
            line,
            ParseErrorKind::CountMismatch {
                expected,
                found: toks.len(),
            },
        ));
    }
    toks.iter()
        .enumerate()
        .map(|(k, t)| {
            let v = number(line, t)?;
            if v == 0 {
                Err(Error::parse(
                    line,
                    ParseErrorKind::Nonpositive(format!("{what} {}", k + 1)),
                ))
            } else {
                Ok(v)
            }
        })
        .collect()
}

/// Parses an instance, reporting the first deviation with its line number.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);

    let (ln, toks) = lines.next_line()?;
    if toks != [MAGIC, VERSION] {
        return Err(Error::parse(
            ln,
            ParseErrorKind::MalformedHeader(format!("expected `{MAGIC} {VERSION}`")),
        ));
    }

    let (ln, toks) = lines.next_line()?;
    if toks.len() != 3 {
        return Err(Error::parse(
            ln,
            ParseErrorKind::MalformedHeader("expected `m n C`".into()),
        ));
    }
    let m = number(ln, toks[0])?;
    let n = number(ln, toks[1])?;
    let capacity = number(ln, toks[2])?;
    if m == 0 || n == 0 {
        return Err(Error::parse(
            ln,
            ParseErrorKind::MalformedHeader("m and n must be positive".into()),
        ));
    }
    let m = usize::try_from(m)
        .map_err(|_| Error::parse(ln, ParseErrorKind::MalformedHeader("m too large".into())))?;
    let n = usize::try_from(n)
        .ok()
        .filter(|&n| n <= u32::MAX as usize)
        .ok_or_else(|| Error::parse(ln, ParseErrorKind::MalformedHeader("n too large".into())))?;

    let (ln, toks) = lines.next_line()?;
    let weights = positive_values(ln, &toks, m, "weight of item")?;
    let (ln, toks) = lines.next_line()?;
    let profits = positive_values(ln, &toks, n, "profit of element")?;

    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, toks) = lines.next_line()?;
        let Some((head, rest)) = toks.split_first() else {
            return Err(Error::parse(
                ln,
                ParseErrorKind::CountMismatch {
                    expected: 1,
                    found: 0,
                },
            ));
        };
        let k = number(ln, head)? as usize;
        if rest.len() != k {
            return Err(Error::parse(
                ln,
                ParseErrorKind::CountMismatch {
                    expected: k,
                    found: rest.len(),
                },
            ));
        }
        let mut row = Vec::with_capacity(k);
        for t in rest {
            let e = number(ln, t)?;
            if e == 0 || e > n as u64 {
                return Err(Error::parse(
                    ln,
                    ParseErrorKind::IndexOutOfRange { index: e, max: n },
                ));
            }
            let e = (e - 1) as u32;
            if row.last().is_some_and(|&prev| prev >= e) {
                return Err(Error::parse(ln, ParseErrorKind::NotAscending));
            }
            row.push(e);
        }
        rows.push(row);
    }

    for (idx, line) in lines.inner.by_ref() {
        if !line.trim().is_empty() {
            return Err(Error::parse(idx + 1, ParseErrorKind::TrailingContent));
        }
    }

    let inst = Instance::new(capacity, weights, profits, rows)?;
    for i in inst.empty_rows() {
        log::warn!("item {} covers no element", i + 1);
    }
    for j in inst.uncovered_elements() {
        log::warn!("element {} is not covered by any item", j + 1);
    }
    Ok(inst)
}

/// Canonical text: single spaces, `\n` line endings, trailing newline.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let join = |vals: &mut dyn Iterator<Item = u64>| {
        vals.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    };
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(
        out,
        "{} {} {}",
        inst.item_count(),
        inst.element_count(),
        inst.capacity()
    );
    let _ = writeln!(out, "{}", join(&mut inst.weights().iter().copied()));
    let _ = writeln!(out, "{}", join(&mut inst.profits().iter().copied()));
    for row in inst.rows() {
        out.push_str(&row.len().to_string());
        for &e in row {
            let _ = write!(out, " {}", e + 1);
        }
        out.push('\n');
    }
    out
}

pub fn read_instance_file(path: impl AsRef<Path>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn write_instance_file(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    std::fs::write(path, write_instance(inst))?;
    Ok(())
}
