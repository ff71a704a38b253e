use std::io::Write;

use anyhow::Result;
use augment_core::families::Descriptor;

/// The canonical, self-contained form of a descriptor: flow families are
/// expanded to `{"family": "flow", "instance": ...}`, the rest are checked by
/// building their oracle and echoed back.
pub fn run<W: Write>(desc: &Descriptor, mut out: W) -> Result<()> {
    let expanded = match desc.flow_instance() {
        Some(inst) => Descriptor::Flow { instance: inst? },
        None => {
            desc.build_oracle()?;
            desc.clone()
        }
    };
    serde_json::to_writer_pretty(&mut out, &expanded)?;
    writeln!(out)?;
    Ok(())
}
