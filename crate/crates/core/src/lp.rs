//! 0-1 integer program in CPLEX LP format.
//!
//! Item variables are `y1..ym`, element variables `x1..xn`. The coverage
//! indicator `x_j = [H_j > 0]` is linearized as `x_j - sum_{i: j in E_i} y_i <= 0`,
//! which is exact under maximization because every profit is positive.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// Terms per output line before wrapping; keeps rows well below the LP
/// format's line-length limit.
const TERMS_PER_LINE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `y_i`, 0-based item.
    Item(usize),
    /// `x_j`, 0-based element.
    Element(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Item(i) => write!(f, "y{}", i + 1),
            Var::Element(j) => write!(f, "x{}", j + 1),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown LP variable `{s}`"));
        let (kind, idx) = s.split_at_checked(1).ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match kind {
            "y" => Ok(Var::Item(idx - 1)),
            "x" => Ok(Var::Element(idx - 1)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coef: i64,
    pub var: Var,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<Term>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn is_satisfied(&self, value: impl Fn(Var) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|t| t.coef * value(t.var)).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// A maximization model with binary variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpModel {
    pub objective: Vec<Term>,
    pub constraints: Vec<Constraint>,
    pub binaries: Vec<Var>,
}

impl LpModel {
    pub fn from_instance(inst: &Instance) -> Self {
        let m = inst.item_count();
        let n = inst.element_count();
        let objective = (0..n)
            .map(|j| Term {
                coef: inst.profit(j) as i64,
                var: Var::Element(j),
            })
            .collect();

        let mut constraints = Vec::with_capacity(n + 1);
        constraints.push(Constraint {
            name: "capacity".into(),
            terms: (0..m)
                .map(|i| Term {
                    coef: inst.weight(i) as i64,
                    var: Var::Item(i),
                })
                .collect(),
            sense: Sense::Le,
            rhs: inst.capacity() as i64,
        });

        let mut covering: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..m {
            for &e in inst.row(i) {
                covering[e as usize].push(i);
            }
        }
        for (j, items) in covering.into_iter().enumerate() {
            let mut terms = vec![Term {
                coef: 1,
                var: Var::Element(j),
            }];
            terms.extend(items.into_iter().map(|i| Term {
                coef: -1,
                var: Var::Item(i),
            }));
            constraints.push(Constraint {
                name: format!("cover{}", j + 1),
                terms,
                sense: Sense::Le,
                rhs: 0,
            });
        }

        let binaries = (0..m)
            .map(Var::Item)
            .chain((0..n).map(Var::Element))
            .collect();
        Self {
            objective,
            constraints,
            binaries,
        }
    }

    pub fn to_lp_string(&self) -> String {
        let mut out = String::from("Maximize\n obj: ");
        write_terms(&mut out, &self.objective);
        out.push_str("\nSubject To\n");
        for c in &self.constraints {
            let _ = write!(out, " {}: ", c.name);
            write_terms(&mut out, &c.terms);
            let _ = writeln!(out, " {} {}", c.sense.symbol(), c.rhs);
        }
        out.push_str("Binary\n");
        let items: Vec<String> = self
            .binaries
            .iter()
            .filter(|v| matches!(v, Var::Item(_)))
            .map(Var::to_string)
            .collect();
        let elements: Vec<String> = self
            .binaries
            .iter()
            .filter(|v| matches!(v, Var::Element(_)))
            .map(Var::to_string)
            .collect();
        for group in [items, elements] {
            for chunk in group.chunks(TERMS_PER_LINE * 2) {
                let _ = writeln!(out, " {}", chunk.join(" "));
            }
        }
        out.push_str("End\n");
        out
    }
}

fn write_terms(out: &mut String, terms: &[Term]) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (k, t) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if t.coef < 0 { "-" } else { "+" };
        if k == 0 {
            if t.coef < 0 {
                out.push_str("- ");
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let abs = t.coef.unsigned_abs();
        if abs != 1 {
            let _ = write!(out, "{abs} ");
        }
        let _ = write!(out, "{}", t.var);
    }
}

/// Emitted LP text for `inst`.
pub fn export_lp(inst: &Instance) -> String {
    LpModel::from_instance(inst).to_lp_string()
}

/// Parses the subset of LP format that [`LpModel::to_lp_string`] produces.
pub fn parse_lp(text: &str) -> Result<LpModel> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Objective,
        Constraints,
        Binary,
    }
    let err = |msg: String| Error::InvalidInput(format!("LP: {msg}"));

    let mut section = Section::None;
    let mut objective_tokens: Vec<&str> = Vec::new();
    let mut constraint_tokens: Vec<&str> = Vec::new();
    let mut binaries = Vec::new();
    let mut ended = false;

    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('\\') {
            continue;
        }
        match trimmed.to_ascii_lowercase().as_str() {
            "maximize" | "maximum" | "max" => {
                section = Section::Objective;
                continue;
            }
            "subject to" | "st" | "s.t." => {
                section = Section::Constraints;
                continue;
            }
            "binary" | "binaries" | "bin" => {
                section = Section::Binary;
                continue;
            }
            "end" => {
                ended = true;
                break;
            }
            _ => {}
        }
        let toks = trimmed.split_whitespace();
        match section {
            Section::None => return Err(err(format!("content before a section: `{trimmed}`"))),
            Section::Objective => objective_tokens.extend(toks),
            Section::Constraints => constraint_tokens.extend(toks),
            Section::Binary => {
                for t in toks {
                    binaries.push(t.parse::<Var>()?);
                }
            }
        }
    }
    if !ended {
        return Err(err("missing End".into()));
    }

    let mut toks = objective_tokens.as_slice();
    if toks.first().is_some_and(|t| t.ends_with(':')) {
        toks = &toks[1..];
    }
    let objective = parse_terms(toks)?;

    let mut constraints = Vec::new();
    let mut rest = constraint_tokens.as_slice();
    while !rest.is_empty() {
        let name = rest[0]
            .strip_suffix(':')
            .ok_or_else(|| err(format!("constraint without a name at `{}`", rest[0])))?
            .to_string();
        rest = &rest[1..];
        let sense_pos = rest
            .iter()
            .position(|t| matches!(*t, "<=" | ">=" | "=" | "=<" | "=>"))
            .ok_or_else(|| err(format!("constraint {name} has no sense")))?;
        let terms = parse_terms(&rest[..sense_pos])?;
        let sense = match rest[sense_pos] {
            "<=" | "=<" => Sense::Le,
            ">=" | "=>" => Sense::Ge,
            _ => Sense::Eq,
        };
        let rhs = rest
            .get(sense_pos + 1)
            .ok_or_else(|| err(format!("constraint {name} has no right-hand side")))?
            .parse::<i64>()
            .map_err(|_| err(format!("constraint {name}: bad right-hand side")))?;
        constraints.push(Constraint {
            name,
            terms,
            sense,
            rhs,
        });
        rest = &rest[sense_pos + 2..];
    }

    Ok(LpModel {
        objective,
        constraints,
        binaries,
    })
}

fn parse_terms(toks: &[&str]) -> Result<Vec<Term>> {
    let err = |msg: String| Error::InvalidInput(format!("LP: {msg}"));
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coef: Option<i64> = None;
    for &t in toks {
        match t {
            "+" => sign = 1,
            "-" => sign = -1,
            "0" if terms.is_empty() && coef.is_none() => {}
            _ => {
                if let Ok(c) = t.parse::<i64>() {
                    if coef.is_some() {
                        return Err(err(format!("two coefficients in a row at `{t}`")));
                    }
                    coef = Some(c);
                } else {
                    let var = t.parse::<Var>()?;
                    terms.push(Term {
                        coef: sign * coef.take().unwrap_or(1),
                        var,
                    });
                    sign = 1;
                }
            }
        }
    }
    if coef.is_some() {
        return Err(err("dangling coefficient".into()));
    }
    Ok(terms)
}
