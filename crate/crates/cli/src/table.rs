//! Ratio tables: measured greedy ratio, closed form and e-based limit per `k`.

use std::io::Write;

use anyhow::{bail, Result};
use augment_core::families::{
    critical_closed_form_ratio, critical_limit, CriticalFunction, CriticalParams, Descriptor,
};
use augment_core::mcflow::{gk_ratio_closed_form, make_lower_bound_instance, FlowObjective};
use augment_core::rational::{decimal, format_sig, to_f64};
use augment_core::{
    approximation_ratio, brute_force_optimum, greedy_adaptive, ExtRational, GreedyVariant,
    Rational, TiePolicy,
};
use rayon::prelude::*;

pub struct TableOpts {
    pub ks: Vec<usize>,
    /// `γ` values for the critical family; empty means the descriptor's own.
    pub gammas: Vec<Rational>,
    /// `α` values for the critical and `G_k` families; empty means the descriptor's own.
    pub alphas: Vec<Rational>,
    pub tie: TiePolicy,
    /// Largest ground set brute-forced for function families.
    pub guard: usize,
    /// Largest sink count brute-forced for flow families.
    pub lp_guard: usize,
    pub tol: f64,
    pub decimal: bool,
}

#[derive(Clone, Debug)]
enum Point {
    Critical(CriticalParams),
    Gk { alpha: usize, k: usize },
    /// A fixed oracle measured at cardinality `k`.
    Fixed { k: usize },
}

struct Row {
    family: &'static str,
    gamma: String,
    alpha: String,
    k: usize,
    measured: Option<ExtRational>,
    closed: Option<Rational>,
    limit: Option<f64>,
    note: String,
}

impl Row {
    fn gap(&self) -> Option<f64> {
        Some((to_f64(self.closed.as_ref()?) - self.limit?).abs())
    }

    fn group(&self) -> (&str, &str, &str) {
        (self.family, &self.gamma, &self.alpha)
    }
}

fn grid(desc: &Descriptor, opts: &TableOpts) -> Result<Vec<Point>> {
    let mut points = Vec::new();
    let mut bad = Vec::new();
    match desc {
        Descriptor::Critical { gamma, alpha, .. } => {
            let gammas = if opts.gammas.is_empty() { vec![gamma.clone()] } else { opts.gammas.clone() };
            let alphas = if opts.alphas.is_empty() { vec![alpha.clone()] } else { opts.alphas.clone() };
            for g in &gammas {
                for a in &alphas {
                    for &k in &opts.ks {
                        match CriticalParams::new(g.clone(), a.clone(), k) {
                            Ok(p) => points.push(Point::Critical(p)),
                            Err(e) => bad.push(format!("(γ={g}, α={a}, k={k}): {e}")),
                        }
                    }
                }
            }
        }
        Descriptor::Gk { alpha, .. } => {
            let alphas = if opts.alphas.is_empty() {
                vec![*alpha]
            } else {
                let mut out = Vec::new();
                for a in &opts.alphas {
                    match a.is_integer().then(|| a.to_integer().try_into().ok()).flatten() {
                        Some(v) if v >= 1 => out.push(v),
                        _ => bad.push(format!("α={a}: G_k needs a positive integer α")),
                    }
                }
                out
            };
            for &a in &alphas {
                for &k in &opts.ks {
                    if k < 2 {
                        bad.push(format!("(α={a}, k={k}): G_k needs k ≥ 2"));
                    } else {
                        points.push(Point::Gk { alpha: a, k });
                    }
                }
            }
        }
        _ => {
            let n = desc.build_oracle()?.n();
            for &k in &opts.ks {
                if k == 0 || k > n {
                    bad.push(format!("k={k}: must lie in 1..={n}"));
                } else {
                    points.push(Point::Fixed { k });
                }
            }
        }
    }
    if !bad.is_empty() {
        bail!("invalid grid points:\n  {}", bad.join("\n  "));
    }
    Ok(points)
}

fn evaluate(desc: &Descriptor, point: &Point, opts: &TableOpts) -> Result<Row> {
    let out_of_guard = || "out of guard: closed form only".to_string();
    Ok(match point {
        Point::Critical(p) => {
            let g = to_f64(&p.gamma);
            let a = to_f64(&p.alpha);
            let (measured, note) = if 2 * p.k <= opts.guard {
                let f = CriticalFunction::new(p.clone())?;
                let rep = approximation_ratio(&f, &opts.tie, GreedyVariant::Adaptive)?;
                (Some(rep.ratio), String::new())
            } else {
                (None, out_of_guard())
            };
            Row {
                family: "critical",
                gamma: p.gamma.to_string(),
                alpha: p.alpha.to_string(),
                k: p.k,
                measured,
                closed: Some(critical_closed_form_ratio(p)),
                limit: Some(critical_limit(g, a)),
                note,
            }
        }
        &Point::Gk { alpha, k } => {
            let steps = alpha * k;
            let (measured, note) = if 2 * steps <= opts.lp_guard {
                let f = FlowObjective::new(make_lower_bound_instance(alpha, k)?)?;
                let greedy = greedy_adaptive(&f, steps, &opts.tie)?;
                let opt = brute_force_optimum(&f, steps)?;
                (
                    Some(ExtRational::quotient(&opt.best_value, greedy.final_value())),
                    String::new(),
                )
            } else {
                (None, out_of_guard())
            };
            Row {
                family: "gk",
                gamma: "1".into(),
                alpha: alpha.to_string(),
                k,
                measured,
                closed: Some(gk_ratio_closed_form(alpha, k)?),
                limit: Some(critical_limit(1.0, alpha as f64)),
                note,
            }
        }
        &Point::Fixed { k } => {
            let f = desc.build_oracle()?;
            let (measured, note) = if f.n() <= opts.guard {
                let rep = approximation_ratio(&f, &opts.tie, GreedyVariant::Adaptive)?;
                (Some(rep.rows[k - 1].ratio.clone()), String::new())
            } else {
                (None, "out of guard".to_string())
            };
            Row {
                family: desc.family(),
                gamma: String::new(),
                alpha: String::new(),
                k,
                measured,
                closed: None,
                limit: None,
                note,
            }
        }
    })
}

fn flag(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

/// The evaluated rows of a ratio table, in grid order.
pub struct Table {
    rows: Vec<Row>,
    decimal: bool,
    tol: f64,
}

/// Validates the whole grid, then evaluates its points in parallel.
pub fn compute(desc: &Descriptor, opts: &TableOpts) -> Result<Table> {
    let points = grid(desc, opts)?;
    let rows = points
        .par_iter()
        .map(|p| evaluate(desc, p, opts))
        .collect::<Result<_>>()?;
    Ok(Table {
        rows,
        decimal: opts.decimal,
        tol: opts.tol,
    })
}

impl Table {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let rows = &self.rows;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![
            "family", "gamma", "alpha", "k", "measured", "closed_form", "limit", "gap",
            "converging", "within_tol", "exact", "note",
        ];
        if self.decimal {
            header.extend(["measured_decimal", "closed_form_decimal"]);
        }
        w.write_record(&header)?;
        for (i, row) in rows.iter().enumerate() {
            let prev = rows[..i].iter().rev().find(|r| r.group() == row.group());
            let converging = match (prev.and_then(Row::gap), row.gap()) {
                (Some(before), Some(now)) => Some(now < before),
                _ => None,
            };
            let exact = match (&row.measured, &row.closed) {
                (Some(m), Some(c)) => Some(m.finite() == Some(c)),
                _ => None,
            };
            let mut rec = vec![
                row.family.to_string(),
                row.gamma.clone(),
                row.alpha.clone(),
                row.k.to_string(),
                row.measured.as_ref().map(ToString::to_string).unwrap_or_default(),
                row.closed.as_ref().map(ToString::to_string).unwrap_or_default(),
                row.limit.map(|l| format_sig(l, 15)).unwrap_or_default(),
                row.gap().map(|g| format_sig(g, 6)).unwrap_or_default(),
                flag(converging),
                flag(row.gap().map(|g| g <= self.tol)),
                flag(exact),
                row.note.clone(),
            ];
            if self.decimal {
                rec.push(
                    row.measured
                        .as_ref()
                        .map(|m| match m {
                            ExtRational::Finite(r) => decimal(r),
                            ExtRational::Infinite => "inf".into(),
                        })
                        .unwrap_or_default(),
                );
                rec.push(row.closed.as_ref().map(decimal).unwrap_or_default());
            }
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Distinct `(family, γ, α)` columns in first-appearance order.
    pub fn groups(&self) -> Vec<Group> {
        let mut groups: Vec<Group> = Vec::new();
        for row in &self.rows {
            if !groups.iter().any(|g| g.key() == row.group()) {
                groups.push(Group {
                    family: row.family.to_string(),
                    gamma: row.gamma.clone(),
                    alpha: row.alpha.clone(),
                    limit: row.limit,
                });
            }
        }
        groups
    }
}

pub struct Group {
    pub family: String,
    pub gamma: String,
    pub alpha: String,
    pub limit: Option<f64>,
}

impl Group {
    fn key(&self) -> (&str, &str, &str) {
        (&self.family, &self.gamma, &self.alpha)
    }
}

/// A gnuplot script drawing each group's closed form (measured, for fixed
/// oracles) against `k`, with its limit as a dashed line.
pub fn gnuplot_script(csv_path: &str, groups: &[Group]) -> String {
    let mut plots = Vec::new();
    for g in groups {
        let column = if g.limit.is_some() { "closed_form_decimal" } else { "measured_decimal" };
        let title = if g.gamma.is_empty() {
            g.family.clone()
        } else {
            format!("{} gamma={} alpha={}", g.family, g.gamma, g.alpha)
        };
        plots.push(format!(
            "'{csv_path}' using 4:((strcol(1) eq '{}' && strcol(2) eq '{}' && strcol(3) eq '{}') ? column('{column}') : 1/0) with linespoints title '{title}'",
            g.family, g.gamma, g.alpha
        ));
        if let Some(limit) = g.limit {
            plots.push(format!("{} with lines dashtype 2 title '{title} limit'", format_sig(limit, 15)));
        }
    }
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key outside right\n");
    s.push_str("set xlabel 'k'\n");
    s.push_str("set ylabel 'approximation ratio'\n");
    if plots.is_empty() {
        s.push_str("# no rows\n");
    } else {
        s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use augment_core::rational::{int, ratio};

    fn opts(ks: Vec<usize>) -> TableOpts {
        TableOpts {
            ks,
            gammas: vec![],
            alphas: vec![],
            tie: TiePolicy::LowestIndex,
            guard: 16,
            lp_guard: 8,
            tol: 1e-2,
            decimal: false,
        }
    }

    fn table(desc: &Descriptor, o: &TableOpts) -> String {
        let mut buf = Vec::new();
        compute(desc, o).unwrap().write_csv(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn critical_rows_are_exact_and_converge() {
        let d = Descriptor::Critical {
            gamma: int(1),
            alpha: int(1),
            k: 2,
            inner: Default::default(),
        };
        let csv = table(&d, &opts(vec![2, 4, 8, 12]));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("critical,1,1,2,4/3,4/3,1.58197670686933"), "{}", lines[1]);
        assert!(lines[2].contains(",true,"), "{}", lines[2]);
        assert!(lines[3].ends_with(",true,false,true,"), "{}", lines[3]);
        assert!(lines[4].contains("out of guard"), "{}", lines[4]);
    }

    #[test]
    fn invalid_points_are_reported_up_front() {
        let d = Descriptor::Critical {
            gamma: ratio(1, 2),
            alpha: int(2),
            k: 3,
            inner: Default::default(),
        };
        let err = compute(&d, &opts(vec![2, 3])).err().unwrap();
        assert!(err.to_string().contains("k=2"), "{err}");
    }

    #[test]
    fn empty_k_list_is_header_only() {
        let d = Descriptor::ThreeSink { alpha: 2 };
        let csv = table(&d, &opts(vec![]));
        assert_eq!(csv.lines().count(), 1);
    }

    #[test]
    fn gk_rows() {
        let d = Descriptor::Gk {
            alpha: 2,
            k: 2,
            perturbed: false,
        };
        let csv = table(&d, &opts(vec![2, 3]));
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[1].starts_with("gk,1,2,2,32/15,32/15,"), "{}", lines[1]);
        assert!(lines[2].starts_with("gk,1,2,3,,"), "{}", lines[2]);
        let script = gnuplot_script("t.csv", &compute(&d, &opts(vec![2])).unwrap().groups());
        assert!(script.contains("'t.csv' using 4:"));
        assert!(script.contains("dashtype 2"));
    }
}
