use std::io::Write;

use anyhow::{bail, Result};
use augment_core::families::Descriptor;
use augment_core::rational::decimal;
use augment_core::{greedy_adaptive, greedy_nonadaptive, GreedyVariant, TiePolicy};

pub struct TraceOpts {
    pub k: usize,
    pub tie: TiePolicy,
    pub variant: GreedyVariant,
    pub decimal: bool,
}

/// One CSV row per greedy step: `step,pick,gain,value,tie_count,tied`, with
/// `gain_decimal,value_decimal` appended under `decimal`.
pub fn run<W: Write>(desc: &Descriptor, opts: &TraceOpts, out: W) -> Result<()> {
    let f = desc.build_oracle()?;
    if opts.k > f.n() {
        bail!("k = {} exceeds the ground set size {}", opts.k, f.n());
    }
    let trace = match opts.variant {
        GreedyVariant::Adaptive => greedy_adaptive(&f, opts.k, &opts.tie)?,
        GreedyVariant::NonAdaptive => greedy_nonadaptive(&f, opts.k, &opts.tie)?,
    };
    let g = f.ground();
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["step", "pick", "gain", "value", "tie_count", "tied"];
    if opts.decimal {
        header.extend(["gain_decimal", "value_decimal"]);
    }
    w.write_record(&header)?;
    for (i, &pick) in trace.picks.iter().enumerate() {
        let tied: Vec<String> = trace.ties[i].iter().map(|&x| g.label(x)).collect();
        let mut row = vec![
            (i + 1).to_string(),
            g.label(pick),
            trace.gains[i].to_string(),
            trace.values[i + 1].to_string(),
            trace.ties[i].len().to_string(),
            tied.join(" "),
        ];
        if opts.decimal {
            row.push(decimal(&trace.gains[i]));
            row.push(decimal(&trace.values[i + 1]));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
