use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use super::instance::FlowInstance;
use crate::error::{Error, Result};
use crate::rational::{ExtRational, Rational};
use crate::setfn::Subset;

struct Edge {
    to: usize,
    cap: Rational,
    rev: usize,
}

struct Residual {
    adj: Vec<Vec<Edge>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual {
            adj: (0..n).map(|_| Vec::new()).collect(),
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: Rational) {
        let (ru, rv) = (self.adj[v].len(), self.adj[u].len());
        self.adj[u].push(Edge { to: v, cap, rev: ru });
        self.adj[v].push(Edge {
            to: u,
            cap: Rational::zero(),
            rev: rv,
        });
    }

    /// Shortest augmenting paths until none is left.
    fn run(&mut self, s: usize, t: usize) -> Rational {
        let mut total = Rational::zero();
        loop {
            let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(u) = queue.pop_front() {
                for (i, e) in self.adj[u].iter().enumerate() {
                    if e.cap.is_positive() && e.to != s && parent[e.to].is_none() {
                        parent[e.to] = Some((u, i));
                        if e.to == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(e.to);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                return total;
            }
            let mut push: Option<Rational> = None;
            let mut v = t;
            while let Some((u, i)) = parent[v] {
                let c = &self.adj[u][i].cap;
                if push.as_ref().is_none_or(|p| c < p) {
                    push = Some(c.clone());
                }
                v = u;
            }
            let push = push.expect("path has an arc");
            let mut v = t;
            while let Some((u, i)) = parent[v] {
                self.adj[u][i].cap -= &push;
                let rev = self.adj[u][i].rev;
                self.adj[v][rev].cap += &push;
                v = u;
            }
            total += push;
        }
    }
}

/// Maximum flow of one commodity from the source into the sinks in `sinks`
/// (indices into the instance's sink list), by Edmonds–Karp.
///
/// Infinite arcs are replaced by one plus the sum of the commodity's finite
/// capacities, which no flow value can reach unless an all-infinite path
/// exists; that case is rejected.
pub fn max_flow(inst: &FlowInstance, commodity: usize, sinks: Subset) -> Result<Rational> {
    if commodity >= inst.commodities() {
        return Err(Error::param(format!(
            "commodity {commodity} out of range for {} commodities",
            inst.commodities()
        )));
    }
    if let Some(i) = sinks.iter().find(|&i| i >= inst.sinks.len()) {
        return Err(Error::param(format!("sink index {i} out of range")));
    }
    if let Some(i) = sinks
        .iter()
        .find(|&i| inst.has_infinite_path(commodity, inst.sinks[i]))
    {
        return Err(Error::UnboundedFlow { sink: i });
    }
    if sinks.is_empty() {
        return Ok(Rational::zero());
    }
    let big = inst.capacities[commodity]
        .iter()
        .filter_map(ExtRational::finite)
        .fold(Rational::from_integer(1.into()), |acc, c| acc + c);
    let super_sink = inst.vertices;
    let mut g = Residual::new(inst.vertices + 1);
    for (e, &(u, v)) in inst.arcs.iter().enumerate() {
        let cap = match &inst.capacities[commodity][e] {
            ExtRational::Finite(c) => c.clone(),
            ExtRational::Infinite => big.clone(),
        };
        if cap.is_positive() && u != v {
            g.add(u, v, cap);
        }
    }
    for i in sinks.iter() {
        g.add(inst.sinks[i], super_sink, big.clone());
    }
    Ok(g.run(inst.source, super_sink))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn fin(n: i64) -> ExtRational {
        ExtRational::Finite(int(n))
    }

    fn diamond() -> FlowInstance {
        // s=0 → 1, 2 → t=3, plus 1 → 2.
        FlowInstance {
            vertices: 4,
            labels: None,
            source: 0,
            sinks: vec![3, 2],
            arcs: vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)],
            capacities: vec![vec![fin(3), fin(2), fin(1), fin(2), ExtRational::Infinite]],
            epsilon: None,
        }
    }

    #[test]
    fn diamond_flows() {
        let inst = diamond();
        assert_eq!(max_flow(&inst, 0, Subset::singleton(0)).unwrap(), int(5));
        assert_eq!(max_flow(&inst, 0, Subset::singleton(1)).unwrap(), int(3));
        assert_eq!(max_flow(&inst, 0, Subset::full(2)).unwrap(), int(5));
        assert_eq!(max_flow(&inst, 0, Subset::EMPTY).unwrap(), int(0));
    }

    #[test]
    fn all_infinite_path_is_rejected() {
        let mut inst = diamond();
        inst.capacities[0][1] = ExtRational::Infinite;
        assert_eq!(
            max_flow(&inst, 0, Subset::singleton(0)),
            Err(Error::UnboundedFlow { sink: 0 })
        );
    }

    #[test]
    fn infinite_head_arc_is_bounded_by_the_tail() {
        let inst = FlowInstance {
            vertices: 3,
            labels: None,
            source: 0,
            sinks: vec![2],
            arcs: vec![(0, 1), (1, 2)],
            capacities: vec![vec![ExtRational::Infinite, fin(5)]],
            epsilon: None,
        };
        assert_eq!(max_flow(&inst, 0, Subset::singleton(0)).unwrap(), int(5));
    }
}
