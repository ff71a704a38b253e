//! A one-shot runner over the library's reproducible claims, with a
//! machine-readable summary.

use std::io::Write;
use std::str::FromStr;

use anyhow::{bail, Result};
use augment_core::audit::{
    certify_flat_bound, certify_greedy_bound, check_alpha_augmentable, check_exchange_lemma,
    check_gamma_alpha_augmentable, min_alpha_for, rank_quotient, weak_submodularity_ratio,
};
use augment_core::families::{
    critical_closed_form_ratio, make_f_gamma, make_f_q, make_square_cardinality,
    weighted_rank_oracle, CriticalFunction, CriticalParams,
};
use augment_core::mcflow::{
    gk_greedy_value, gk_optimum_value, gk_ratio_closed_form, make_three_sink_instance,
    make_lower_bound_instance, make_two_sink_instance, FlowObjective,
};
use augment_core::rational::{int, ratio};
use augment_core::setfn::Modular;
use augment_core::{
    approximation_ratio, brute_force_optimum, greedy_adaptive, AuditConfig, ExtRational,
    GreedyVariant, IndependenceSystem, Rational, SetFunction, Subset, TiePolicy,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

/// Deliberate corruptions, used to confirm that checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Every critical function gets `ξ_2` doubled.
    Xi2Doubled,
}

impl FromStr for Mutation {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi2-doubled" => Ok(Mutation::Xi2Doubled),
            other => bail!("unknown mutation `{other}` (known: xi2-doubled)"),
        }
    }
}

struct Ctx {
    mutation: Option<Mutation>,
}

impl Ctx {
    fn critical(&self, g: Rational, a: Rational, k: usize) -> Result<CriticalFunction, Fail> {
        let f = CriticalFunction::new(CriticalParams::new(g, a, k).map_err(fail)?).map_err(fail)?;
        match self.mutation {
            None => Ok(f),
            Some(Mutation::Xi2Doubled) => {
                let mut xi = f.xi().to_vec();
                xi[1] *= int(2);
                f.with_xi(xi).map_err(fail)
            }
        }
    }
}

struct Fail {
    message: String,
    witness: Value,
}

fn fail<E: std::fmt::Display>(e: E) -> Fail {
    Fail {
        message: e.to_string(),
        witness: Value::Null,
    }
}

fn ensure(cond: bool, message: impl FnOnce() -> String, witness: impl FnOnce() -> Value) -> Result<(), Fail> {
    if cond {
        Ok(())
    } else {
        Err(Fail {
            message: message(),
            witness: witness(),
        })
    }
}

type Outcome = Result<String, Fail>;

fn set_json<F: SetFunction + ?Sized>(f: &F, s: Subset) -> Value {
    Value::String(f.ground().render(s))
}

fn critical_pick_order(ctx: &Ctx) -> Outcome {
    let grid = [
        (int(1), int(1), 2),
        (int(1), int(1), 4),
        (ratio(1, 2), int(1), 3),
        (int(1), int(2), 3),
        (ratio(1, 4), ratio(1, 4), 4),
    ];
    for (g, a, k) in grid {
        let f = ctx.critical(g.clone(), a.clone(), k)?;
        let want = f.params().xi();
        let trace = greedy_adaptive(&f, k, &TiePolicy::LowestIndex).map_err(fail)?;
        for (step, xi) in want.iter().enumerate() {
            let (pick, gain) = (trace.picks[step], &trace.gains[step]);
            ensure(
                pick == step && gain == xi,
                || format!("F({g},{a},{k}) deviates at step {}", step + 1),
                || {
                    json!({
                        "params": {"gamma": g.to_string(), "alpha": a.to_string(), "k": k},
                        "step": step + 1,
                        "expected": {"pick": f.ground().label(step), "gain": xi.to_string()},
                        "got": {"pick": f.ground().label(pick), "gain": gain.to_string()},
                    })
                },
            )?;
        }
    }
    Ok("greedy takes a_1, …, a_k with gains ξ_1, …, ξ_k on 5 parameter sets".into())
}

fn critical_ratio(ctx: &Ctx) -> Outcome {
    let mut count = 0;
    for g in [int(1), ratio(1, 2), ratio(1, 4)] {
        let mut alphas = vec![g.clone(), int(1), int(2)];
        alphas.dedup();
        for a in alphas {
            for k in 2..=5usize {
                if Rational::from_integer(k.into()) <= a {
                    continue;
                }
                let f = ctx.critical(g.clone(), a.clone(), k)?;
                let want = critical_closed_form_ratio(f.params());
                let rep = approximation_ratio(&f, &TiePolicy::LowestIndex, GreedyVariant::Adaptive)
                    .map_err(fail)?;
                ensure(
                    rep.ratio == ExtRational::Finite(want.clone()) && rep.witness_k == k,
                    || format!("F({g},{a},{k}): measured ratio differs from the closed form"),
                    || json!({"measured": rep.ratio.to_string(), "at_k": rep.witness_k, "closed_form": want.to_string()}),
                )?;
                let cert = certify_greedy_bound(&f, &g, &a, &TiePolicy::LowestIndex).map_err(fail)?;
                ensure(
                    cert.holds(),
                    || format!("F({g},{a},{k}): greedy bound violated"),
                    || json!(cert.first_violation()),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("ratio equals (α/γ)/(1−(1−α/k)^k) at k* = k and the greedy bound holds on {count} points"))
}

fn critical_weak_class(ctx: &Ctx) -> Outcome {
    let weak = AuditConfig::weak();
    let mut count = 0;
    for (g, a, k) in [
        (int(1), int(1), 3),
        (ratio(1, 2), ratio(1, 2), 3),
        (ratio(1, 2), int(2), 4),
        (ratio(1, 4), int(1), 4),
    ] {
        let f = ctx.critical(g.clone(), a.clone(), k)?;
        let rep = check_gamma_alpha_augmentable(&f, &g, &a, &weak).map_err(fail)?;
        ensure(
            rep.is_member(),
            || format!("F({g},{a},{k}) fails the weak {g}-{a} audit"),
            || json!(rep.witness),
        )?;
        count += 1;
    }
    Ok(format!("{count} critical functions in their weak γ-α class"))
}

fn critical_strong_alpha(ctx: &Ctx) -> Outcome {
    let strong = AuditConfig::strong();
    for (a, k) in [(1, 2), (1, 3), (2, 3)] {
        let f = ctx.critical(int(1), int(a), k)?;
        let rep = check_alpha_augmentable(&f, &int(a), &strong).map_err(fail)?;
        ensure(
            rep.is_member(),
            || format!("F(1,{a},{k}) is not {a}-augmentable"),
            || json!(rep.witness),
        )?;
    }
    Ok("F(1,α,k) strongly α-augmentable for (α,k) ∈ {(1,2),(1,3),(2,3)}".into())
}

fn critical_separates(ctx: &Ctx) -> Outcome {
    let strong = AuditConfig::strong();
    for (a, k) in [(int(1), 2), (int(1), 3)] {
        let f = ctx.critical(ratio(1, 2), a.clone(), k)?;
        for ap in [int(1), ratio(3, 2), int(2), int(4)] {
            let rep = check_alpha_augmentable(&f, &ap, &strong).map_err(fail)?;
            ensure(
                !rep.is_member() && rep.witness_reproduces(&f),
                || format!("F(1/2,{a},{k}) passes the α={ap} audit"),
                || Value::Null,
            )?;
        }
    }
    Ok("F(1/2,1,k) fails every tested α audit with reproducible witnesses".into())
}

fn f_gamma_separates(_: &Ctx) -> Outcome {
    for g in [ratio(1, 2), ratio(1, 4)] {
        let f = make_f_gamma(&g).map_err(fail)?;
        let w = weak_submodularity_ratio(&f, &AuditConfig::weak()).map_err(fail)?;
        ensure(
            w.gamma == g,
            || format!("f^{g} has weak ratio {}", w.gamma),
            || json!({"x": set_json(&f, w.witness.0), "y": set_json(&f, w.witness.1)}),
        )?;
        for a in [1, 2, 4] {
            let rep = check_alpha_augmentable(&f, &int(a), &AuditConfig::strong()).map_err(fail)?;
            ensure(!rep.is_member(), || format!("f^{g} passes the α={a} audit"), || Value::Null)?;
        }
        let rep = check_gamma_alpha_augmentable(&f, &g, &g, &AuditConfig::weak()).map_err(fail)?;
        ensure(rep.is_member(), || format!("f^{g} fails the weak {g}-{g} audit"), || json!(rep.witness))?;
    }
    Ok("f^γ: weak ratio γ, no α audit passes, weak γ-γ member".into())
}

fn f_q_separates(_: &Ctx) -> Outcome {
    let fq = make_f_q(&ratio(1, 2), &int(1), 1, 2).map_err(fail)?;
    let rq = rank_quotient(&fq.system).map_err(fail)?;
    ensure(rq.q == ratio(1, 2), || format!("rank quotient {}", rq.q), || json!(rq))?;
    let cfg = AuditConfig::weak().with_tie(fq.witness_priority());
    let w = weak_submodularity_ratio(&fq.oracle, &cfg).map_err(fail)?;
    ensure(
        w.gamma == int(0) && w.witness.0 == fq.witness_x(),
        || format!("weak ratio {}", w.gamma),
        || json!({"x": set_json(&fq.oracle, w.witness.0), "y": set_json(&fq.oracle, w.witness.1)}),
    )?;
    let rep = check_gamma_alpha_augmentable(&fq.oracle, &int(1), &int(2), &AuditConfig::weak())
        .map_err(fail)?;
    ensure(rep.is_member(), || "f^q fails the weak 1-(1/q) audit".into(), || json!(rep.witness))?;
    Ok(format!(
        "f^q: rank quotient 1/2, weak ratio 0 at X = {}",
        fq.oracle.ground().render(w.witness.0)
    ))
}

fn square_greedy_optimal(_: &Ctx) -> Outcome {
    let f = make_square_cardinality(3).map_err(fail)?;
    for a in [ratio(1, 2), int(1), int(2)] {
        let rep = check_gamma_alpha_augmentable(&f, &ratio(1, 2), &a, &AuditConfig::weak()).map_err(fail)?;
        ensure(
            !rep.is_member() && rep.witness.as_ref().is_some_and(|w| w.x.is_empty()),
            || format!("|X|² at α={a}: expected a violation at X = ∅"),
            || json!(rep.witness),
        )?;
    }
    let rep = approximation_ratio(&f, &TiePolicy::LowestIndex, GreedyVariant::Adaptive).map_err(fail)?;
    ensure(
        rep.rows.iter().all(|r| r.ratio == ExtRational::Finite(int(1))),
        || "greedy is not optimal on |X|²".into(),
        || json!(rep.rows),
    )?;
    Ok("|X|² outside every weak 1/2-α class yet greedy-optimal".into())
}

fn small_systems() -> Result<Vec<(String, IndependenceSystem)>, Fail> {
    let tri = IndependenceSystem::matchings(&[(0, 1), (1, 2), (0, 2), (2, 3)], vec![int(2), int(1), int(3), int(1)])
        .map_err(fail)?;
    let uni = IndependenceSystem::uniform(2, vec![int(1), ratio(5, 2), int(2), int(0)]).map_err(fail)?;
    let sets = [Subset::from_bits(0b0011), Subset::from_bits(0b1100), Subset::from_bits(0b10001)];
    let gen = IndependenceSystem::from_maximal_sets(5, &sets, vec![int(3), int(1), int(2), int(2), ratio(1, 3)])
        .map_err(fail)?;
    let fq = make_f_q(&ratio(1, 2), &int(1), 1, 2).map_err(fail)?;
    Ok(vec![
        ("matchings".into(), tri),
        ("uniform".into(), uni),
        ("down-closure".into(), gen),
        ("f^q".into(), fq.system),
    ])
}

fn containment(_: &Ctx) -> Outcome {
    let weak = AuditConfig::weak();
    let mut oracles: Vec<(String, Box<dyn SetFunction>, Option<IndependenceSystem>)> = vec![
        ("modular".into(), Box::new(Modular::new(vec![int(2), int(1), int(0)]).map_err(fail)?), None),
        ("f^1/2".into(), Box::new(make_f_gamma(&ratio(1, 2)).map_err(fail)?), None),
        ("|X|^2".into(), Box::new(make_square_cardinality(3).map_err(fail)?), None),
    ];
    for (name, sys) in small_systems()? {
        oracles.push((name, Box::new(weighted_rank_oracle(&sys).map_err(fail)?), Some(sys)));
    }
    let two = FlowObjective::new(make_two_sink_instance(2).map_err(fail)?).map_err(fail)?;
    oracles.push(("two-sink".into(), Box::new(two), None));
    let mut count = 0;
    for (name, f, sys) in &oracles {
        for a in [int(1), int(2)] {
            if check_alpha_augmentable(f, &a, &AuditConfig::strong()).map_err(fail)?.is_member() {
                let rep = check_gamma_alpha_augmentable(f, &int(1), &a, &weak).map_err(fail)?;
                ensure(rep.is_member(), || format!("{name}: {a}-augmentable but not weak 1-{a}"), || json!(rep.witness))?;
                count += 1;
            }
        }
        let g = weak_submodularity_ratio(f, &weak).map_err(fail)?.gamma;
        if g > int(0) {
            let rep = check_gamma_alpha_augmentable(f, &g, &g, &weak).map_err(fail)?;
            ensure(rep.is_member(), || format!("{name}: ratio {g} but not weak {g}-{g}"), || json!(rep.witness))?;
            count += 1;
        }
        if let Some(sys) = sys {
            let q = rank_quotient(sys).map_err(fail)?.q;
            for gam in [int(1), ratio(1, 2)] {
                let a = &gam / &q;
                let rep = check_gamma_alpha_augmentable(f, &gam, &a, &weak).map_err(fail)?;
                ensure(rep.is_member(), || format!("{name}: quotient {q} but not weak {gam}-{a}"), || json!(rep.witness))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} implications hold on {} oracles", oracles.len()))
}

fn independence_bound(_: &Ctx) -> Outcome {
    let mut count = 0;
    for (name, sys) in small_systems()? {
        let f = weighted_rank_oracle(&sys).map_err(fail)?;
        for g in [int(1), ratio(1, 2)] {
            let m = min_alpha_for(&f, &g, &AuditConfig::weak()).map_err(fail)?;
            let ExtRational::Finite(a) = m.alpha else {
                continue;
            };
            let cert = certify_flat_bound(&f, &g, &a, &TiePolicy::LowestIndex).map_err(fail)?;
            ensure(cert.holds(), || format!("{name}: (γ/α) bound fails at γ={g}, α={a}"), || json!(cert.first_violation()))?;
            count += 1;
        }
        let ex = check_exchange_lemma(&sys, &TiePolicy::LowestIndex).map_err(fail)?;
        ensure(ex.holds(), || format!("{name}: exchange lemma fails"), || json!(ex.violations))?;
    }
    Ok(format!("{count} flat-bound certificates, exchange lemma on 4 systems"))
}

fn flow_two_sink(_: &Ctx) -> Outcome {
    for alpha in 1..=2usize {
        let f = FlowObjective::new(make_two_sink_instance(alpha).map_err(fail)?).map_err(fail)?;
        let vals: Vec<Rational> = (0..4).map(|b| f.value(Subset::from_bits(b))).collect();
        ensure(
            vals == [int(0), int(2), int(2), int(3)],
            || format!("two-sink α={alpha}: wrong values"),
            || json!(vals.iter().map(ToString::to_string).collect::<Vec<_>>()),
        )?;
        let a = int(alpha as i64);
        let rep = check_alpha_augmentable(&f, &a, &AuditConfig::strong()).map_err(fail)?;
        ensure(rep.is_member(), || format!("two-sink not {alpha}-augmentable"), || json!(rep.witness))?;
    }
    Ok("two-sink: 0/2/2/3 and α-augmentable at α = 1, 2".into())
}

fn flow_three_sink(_: &Ctx) -> Outcome {
    let f = FlowObjective::new(make_three_sink_instance(2).map_err(fail)?).map_err(fail)?;
    let w = weak_submodularity_ratio(&f, &AuditConfig::weak()).map_err(fail)?;
    ensure(w.gamma == int(0), || format!("weak ratio {}", w.gamma), || Value::Null)?;
    let t = greedy_adaptive(&f, 1, &TiePolicy::LowestIndex).map_err(fail)?;
    let first = f.ground().label(t.picks[0]);
    ensure(first == "t2", || format!("first pick {first}"), || Value::Null)?;
    let rep = check_alpha_augmentable(&f, &int(2), &AuditConfig::strong()).map_err(fail)?;
    ensure(rep.is_member(), || "three-sink instance not 2-augmentable".into(), || json!(rep.witness))?;
    Ok(format!(
        "weak ratio 0 at X = {}, Y = {}; first pick t2; 2-augmentable",
        f.ground().render(w.witness.0),
        f.ground().render(w.witness.1)
    ))
}

fn gk_lower_bound(_: &Ctx) -> Outcome {
    let mut parts = Vec::new();
    for k in [2usize, 3] {
        let f = FlowObjective::new(make_lower_bound_instance(1, k).map_err(fail)?).map_err(fail)?;
        let t = greedy_adaptive(&f, k, &TiePolicy::LowestIndex).map_err(fail)?;
        ensure(
            t.picks == (0..k).collect::<Vec<_>>(),
            || format!("G_{k}: greedy leaves t_1..t_k"),
            || json!(t.picks.iter().map(|&p| f.ground().label(p)).collect::<Vec<_>>()),
        )?;
        let greedy = t.final_value().clone();
        let opt = brute_force_optimum(&f, k).map_err(fail)?;
        let want = (gk_greedy_value(1, k).map_err(fail)?, gk_optimum_value(1, k).map_err(fail)?);
        ensure(
            greedy == want.0 && opt.best_value == want.1,
            || format!("G_{k}: values differ from the closed forms"),
            || json!({"greedy": greedy.to_string(), "optimum": opt.best_value.to_string()}),
        )?;
        let r = &opt.best_value / &greedy;
        ensure(
            r == gk_ratio_closed_form(1, k).map_err(fail)?,
            || format!("G_{k}: ratio {r}"),
            || Value::Null,
        )?;
        parts.push(format!("k={k}: {r}"));
    }
    Ok(format!("G_k ratios {}", parts.join(", ")))
}

type CheckFn = fn(&Ctx) -> Outcome;

/// Every check, in report order.
const CHECKS: [(&str, CheckFn); 13] = [
    ("critical-pick-order", critical_pick_order),
    ("critical-ratio", critical_ratio),
    ("critical-weak-class", critical_weak_class),
    ("critical-strong-alpha", critical_strong_alpha),
    ("critical-separates", critical_separates),
    ("f-gamma-separates", f_gamma_separates),
    ("f-q-separates", f_q_separates),
    ("square-greedy-optimal", square_greedy_optimal),
    ("containment", containment),
    ("independence-bound", independence_bound),
    ("flow-two-sink", flow_two_sink),
    ("flow-three-sink", flow_three_sink),
    ("gk-lower-bound", gk_lower_bound),
];

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(id, _)| *id)
}

#[derive(Serialize)]
struct CheckResult {
    id: &'static str,
    pass: bool,
    detail: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    witness: Value,
}

#[derive(Serialize)]
pub struct Summary {
    mutation: Option<String>,
    passed: usize,
    failed: usize,
    checks: Vec<CheckResult>,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// `only = None` runs everything; an empty list runs nothing.
pub fn run<W: Write>(only: Option<&[String]>, mutation: Option<Mutation>, mut out: W) -> Result<Summary> {
    let selected: Vec<(&'static str, CheckFn)> = match only {
        None => CHECKS.to_vec(),
        Some(ids) => {
            if let Some(bad) = ids.iter().find(|id| !CHECKS.iter().any(|(c, _)| c == id)) {
                let known: Vec<_> = CHECKS.iter().map(|(c, _)| *c).collect();
                bail!("unknown check `{bad}` (known: {})", known.join(", "));
            }
            CHECKS.iter().filter(|(c, _)| ids.iter().any(|id| id == c)).copied().collect()
        }
    };
    let ctx = Ctx { mutation };
    let checks: Vec<CheckResult> = selected
        .par_iter()
        .map(|&(id, check)| {
            log::info!("running {id}");
            match check(&ctx) {
                Ok(detail) => CheckResult {
                    id,
                    pass: true,
                    detail,
                    witness: Value::Null,
                },
                Err(f) => CheckResult {
                    id,
                    pass: false,
                    detail: f.message,
                    witness: f.witness,
                },
            }
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    let summary = Summary {
        mutation: mutation.map(|_| "xi2-doubled".to_string()),
        passed: checks.len() - failed,
        failed,
        checks,
    };
    serde_json::to_writer_pretty(&mut out, &summary)?;
    writeln!(out)?;
    Ok(summary)
}
