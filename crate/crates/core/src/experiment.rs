//! Batch experiments, the perturbation ablation, and their file outputs.

use std::io::Write;

use serde::Serialize;

use crate::driver::{batch, BatchSummary, SolverConfig};
use crate::error::{Error, Result};
use crate::instance::{Instance, SelectionVector};
use crate::learning::PerturbationPolicy;
use crate::stats::{wilcoxon_signed_rank, PairedSample, WilcoxonResult};

#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub name: String,
    pub instance: Instance,
}

/// One CSV line: `instance,policy,runs,f_best,f_avg,std,t_avg,p_value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub instance: String,
    pub policy: String,
    pub runs: usize,
    pub f_best: u64,
    pub f_avg: String,
    pub std: String,
    pub t_avg: String,
    pub p_value: String,
}

impl ResultRow {
    pub fn new(instance: &str, policy: PerturbationPolicy, summary: &BatchSummary) -> Self {
        Self {
            instance: instance.to_string(),
            policy: policy.label().to_string(),
            runs: summary.per_run.len(),
            f_best: summary.f_best,
            f_avg: format!("{:.2}", summary.f_avg),
            std: format!("{:.2}", summary.std),
            t_avg: format!("{:.3}", summary.t_avg),
            p_value: String::new(),
        }
    }

    pub fn with_p_value(mut self, p: f64) -> Self {
        self.p_value = format_significant(p, 3);
        self
    }
}

pub fn write_rows<W: Write>(out: W, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidInput(format!("csv: {other:?}")),
    }
}

/// `value` rounded to `digits` significant digits, in plain notation.
pub fn format_significant(value: f64, digits: i32) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    format!("{value:.decimals$}")
}

#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub instance: String,
    pub probability: BatchSummary,
    pub random: BatchSummary,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    /// Paired on per-instance `f_avg` with several instances, or on the
    /// per-run bests (same seeds) when there is only one.
    pub test: WilcoxonResult,
}

impl Comparison {
    /// Instances where the probability policy's average is at least the
    /// random policy's.
    pub fn probability_not_worse(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.probability.f_avg >= r.random.f_avg)
            .count()
    }

    pub fn to_rows(&self) -> Vec<ResultRow> {
        let p = self.test.p_value;
        self.rows
            .iter()
            .flat_map(|r| {
                [
                    ResultRow::new(&r.instance, PerturbationPolicy::Probability, &r.probability)
                        .with_p_value(p),
                    ResultRow::new(&r.instance, PerturbationPolicy::Random, &r.random)
                        .with_p_value(p),
                ]
            })
            .collect()
    }
}

/// Runs `runs` seeds of both perturbation policies on every instance and
/// tests the paired difference with a two-sided Wilcoxon signed-rank test.
pub fn compare(instances: &[NamedInstance], cfg: &SolverConfig, runs: usize) -> Result<Comparison> {
    if instances.is_empty() {
        return Err(Error::Config("compare needs at least one instance".into()));
    }
    let mut rows = Vec::with_capacity(instances.len());
    for named in instances {
        let with = |perturbation| SolverConfig {
            perturbation,
            ..cfg.clone()
        };
        let probability = batch(&named.instance, &with(PerturbationPolicy::Probability), runs)?;
        let random = batch(&named.instance, &with(PerturbationPolicy::Random), runs)?;
        log::info!(
            "{}: PLTS f_avg {:.2}, PLTS0 f_avg {:.2}",
            named.name,
            probability.f_avg,
            random.f_avg
        );
        rows.push(ComparisonRow {
            instance: named.name.clone(),
            probability,
            random,
        });
    }

    let sample = if rows.len() > 1 {
        PairedSample::new(rows.iter().map(|r| (r.probability.f_avg, r.random.f_avg)).collect())?
    } else {
        let r = &rows[0];
        PairedSample::new(
            r.probability
                .per_run
                .iter()
                .zip(&r.random.per_run)
                .map(|(a, b)| (a.best_objective as f64, b.best_objective as f64))
                .collect(),
        )?
    };
    let test = wilcoxon_signed_rank(&sample);
    Ok(Comparison { rows, test })
}

/// `<name> <item> <item> ...` with 1-based item indices.
pub fn format_solution(name: &str, selection: &SelectionVector) -> String {
    let mut line = name.to_string();
    for i in selection.iter_selected() {
        line.push(' ');
        line.push_str(&(i + 1).to_string());
    }
    line.push('\n');
    line
}

/// Parses a solution line back into its instance name and 0-based items.
pub fn parse_solution(text: &str) -> Result<(String, Vec<usize>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let line = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty solution file".into()))?;
    if lines.next().is_some() {
        return Err(Error::InvalidInput("solution file must be a single line".into()));
    }
    let mut toks = line.split_whitespace();
    let name = toks.next().unwrap_or_default().to_string();
    let items = toks
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::InvalidInput(format!("bad item index `{t}` in solution"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((name, items))
}

/// Rebuilds a parsed solution against `inst`; returns `(objective, weight)`.
pub fn validate_solution(inst: &Instance, items: &[usize]) -> Result<(u64, u64)> {
    let selection = SelectionVector::from_items(inst.item_count(), items)?;
    let weight = inst.total_weight(&selection);
    if weight > inst.capacity() {
        return Err(Error::Infeasible {
            weight,
            capacity: inst.capacity(),
        });
    }
    Ok((inst.full_objective(&selection), weight))
}
