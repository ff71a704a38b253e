use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};
use crate::setfn::{GroundSet, Subset, MAX_ELEMENTS};

/// A directed graph with a source, an ordered sink list and one capacity map
/// per commodity.
///
/// The sink list order is the element order of the induced set function, so
/// sink `i` of `sinks` is element `i` of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowInstance {
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub source: usize,
    pub sinks: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
    /// `capacities[i][e]`: capacity of arc `e` for commodity `i`; `"inf"` allowed.
    pub capacities: Vec<Vec<ExtRational>>,
    /// Optional `ε` coefficients, same shape as `capacities`: arc `e` carries
    /// `μ_i(e) + epsilon[i][e]·ε` for an infinitesimal `ε > 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<Vec<ExtRational>>>,
}

impl FlowInstance {
    pub fn commodities(&self) -> usize {
        self.capacities.len()
    }

    pub fn capacity(&self, commodity: usize, arc: usize) -> &ExtRational {
        &self.capacities[commodity][arc]
    }

    /// `ε` coefficient of an arc, zero when no perturbation is set.
    pub fn epsilon(&self, commodity: usize, arc: usize) -> Rational {
        match &self.epsilon {
            Some(eps) => eps[commodity][arc]
                .finite()
                .cloned()
                .unwrap_or_else(Rational::zero),
            None => Rational::zero(),
        }
    }

    pub fn vertex_label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("v{v}"),
        }
    }

    /// Ground set over the sinks, labelled by vertex label.
    pub fn ground(&self) -> Result<GroundSet> {
        GroundSet::with_labels(self.sinks.iter().map(|&t| self.vertex_label(t)).collect())
    }

    pub fn sink_vertices(&self, x: Subset) -> Vec<usize> {
        x.iter().map(|i| self.sinks[i]).collect()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.sinks.contains(&v)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedInstance(m));
        if self.vertices == 0 {
            return bad("no vertices".into());
        }
        if self.source >= self.vertices {
            return bad(format!("source {} out of range", self.source));
        }
        if self.sinks.is_empty() || self.sinks.len() > MAX_ELEMENTS {
            return bad(format!("need 1..={MAX_ELEMENTS} sinks, got {}", self.sinks.len()));
        }
        for (i, &t) in self.sinks.iter().enumerate() {
            if t >= self.vertices {
                return bad(format!("sink {t} out of range"));
            }
            if t == self.source {
                return bad("the source cannot be a sink".into());
            }
            if self.sinks[..i].contains(&t) {
                return bad(format!("sink {t} listed twice"));
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != self.vertices {
                return bad(format!("{} labels for {} vertices", l.len(), self.vertices));
            }
        }
        if let Some(&(u, v)) = self
            .arcs
            .iter()
            .find(|&&(u, v)| u >= self.vertices || v >= self.vertices)
        {
            return bad(format!("arc ({u},{v}) leaves the vertex range"));
        }
        if self.capacities.is_empty() {
            return bad("at least one commodity is required".into());
        }
        check_shape(&self.capacities, self.arcs.len(), "capacities")?;
        for row in &self.capacities {
            if let Some(c) = row.iter().find(|c| c.finite().is_some_and(|r| *r < Rational::zero())) {
                return bad(format!("negative capacity {c}"));
            }
        }
        if let Some(eps) = &self.epsilon {
            if eps.len() != self.commodities() {
                return bad("epsilon needs one row per commodity".into());
            }
            check_shape(eps, self.arcs.len(), "epsilon")?;
            if eps.iter().flatten().any(ExtRational::is_infinite) {
                return bad("epsilon coefficients must be finite".into());
            }
        }
        Ok(())
    }

    /// Whether commodity `i` has a path of infinite-capacity arcs from the
    /// source to `target`.
    pub fn has_infinite_path(&self, commodity: usize, target: usize) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(u) = stack.pop() {
            if u == target {
                return true;
            }
            for (e, &(a, b)) in self.arcs.iter().enumerate() {
                if a == u && !seen[b] && self.capacities[commodity][e].is_infinite() {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        false
    }

    /// Deterministic pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let inst: FlowInstance =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }
}

fn check_shape(rows: &[Vec<ExtRational>], arcs: usize, what: &str) -> Result<()> {
    match rows.iter().position(|r| r.len() != arcs) {
        Some(i) => Err(Error::MalformedInstance(format!(
            "{what} row {i} has {} entries for {arcs} arcs",
            rows[i].len()
        ))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn tiny() -> FlowInstance {
        FlowInstance {
            vertices: 3,
            labels: None,
            source: 0,
            sinks: vec![2],
            arcs: vec![(0, 1), (1, 2)],
            capacities: vec![vec![ExtRational::Infinite, ExtRational::Finite(int(5))]],
            epsilon: None,
        }
    }

    #[test]
    fn json_round_trip_keeps_inf_token() {
        let inst = tiny();
        let text = inst.to_json();
        assert!(text.contains("\"inf\""));
        assert_eq!(FlowInstance::from_json(&text).unwrap(), inst);
    }

    #[test]
    fn validation_errors() {
        let mut inst = tiny();
        inst.sinks = vec![0];
        assert!(inst.validate().is_err());
        let mut inst = tiny();
        inst.capacities[0].pop();
        assert!(inst.validate().is_err());
        let mut inst = tiny();
        inst.capacities[0][1] = ExtRational::Finite(int(-1));
        assert!(inst.validate().is_err());
        let mut inst = tiny();
        inst.arcs[0] = (0, 7);
        assert!(inst.validate().is_err());
    }

    #[test]
    fn infinite_paths() {
        let inst = tiny();
        assert!(inst.has_infinite_path(0, 1));
        assert!(!inst.has_infinite_path(0, 2));
    }
}
