//! LS crystals, weight multiplicities and Hecke path enumeration.

mod freudenthal;
mod hecke;

pub use freudenthal::freudenthal_multiplicity;
pub use hecke::{enumerate_hecke, HeckePath};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::PathFile;
use crate::paths::{root_operator, LambdaPath, RootOperator};
use crate::rational::Vector;
use crate::root_system::RootSystem;

/// An `f_i`-edge between two nodes (0-based node and generator indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub index: usize,
    pub to: usize,
}

/// LS paths of a fixed shape generated from `π_λ` by the operators `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    pub shape: Vector,
    /// Nodes in breadth-first order; node 0 is `π_λ`.
    pub nodes: Vec<LambdaPath>,
    pub edges: Vec<Edge>,
    /// Number of `f_i` applications from `π_λ` to each node.
    pub depth: Vec<usize>,
    pub depth_cap: usize,
    /// Some node at the cap still has a defined `f_i`.
    pub partial: bool,
}

#[derive(Serialize, Deserialize)]
struct NodeExport {
    id: usize,
    depth: usize,
    end: Vector,
    path: PathFile,
}

#[derive(Serialize, Deserialize)]
struct EdgeExport {
    from: usize,
    to: usize,
    /// 1-based generator index.
    index: usize,
}

#[derive(Serialize, Deserialize)]
struct CrystalExport {
    shape: Vector,
    depth_cap: usize,
    partial: bool,
    nodes: Vec<NodeExport>,
    edges: Vec<EdgeExport>,
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of nodes ending at each weight.
    pub fn weights(&self) -> BTreeMap<Vector, usize> {
        let mut out = BTreeMap::new();
        for p in &self.nodes {
            *out.entry(p.end()).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let export = CrystalExport {
            shape: self.shape.clone(),
            depth_cap: self.depth_cap,
            partial: self.partial,
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, p)| NodeExport {
                    id,
                    depth: self.depth[id],
                    end: p.end(),
                    path: PathFile::from_path(p),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeExport {
                    from: e.from,
                    to: e.to,
                    index: e.index + 1,
                })
                .collect(),
        };
        serde_json::to_value(export).expect("crystal serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for (id, p) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{id} [label=\"{}\"];", p.end());
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"f{}\"];",
                e.from,
                e.to,
                e.index + 1
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first closure of `{π_λ}` under the operators `f_i`, at most
/// `depth_cap` applications deep. Outside finite type the result is usually
/// partial; the flag records it.
pub fn generate_ls_paths(
    sys: &RootSystem,
    lambda: &Vector,
    depth_cap: usize,
) -> Result<CrystalGraph> {
    sys.check_dim(lambda)?;
    if !sys.is_dominant(lambda) || !lambda.is_integral() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let root = LambdaPath::straight(sys, lambda)?;
    let mut index: HashMap<LambdaPath, usize> = HashMap::from([(root.clone(), 0)]);
    let mut nodes = vec![root];
    let mut depth = vec![0];
    let mut edges = Vec::new();
    let mut partial = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for i in 0..sys.rank() {
            let next = match root_operator(sys, RootOperator::F, i, &nodes[k]) {
                Ok(p) => p,
                Err(Error::Undefined(_)) => continue,
                Err(e) => return Err(e),
            };
            if depth[k] == depth_cap {
                partial = true;
                continue;
            }
            let to = match index.get(&next) {
                Some(&to) => to,
                None => {
                    let to = nodes.len();
                    index.insert(next.clone(), to);
                    nodes.push(next);
                    depth.push(depth[k] + 1);
                    queue.push_back(to);
                    to
                }
            };
            edges.push(Edge {
                from: k,
                index: i,
                to,
            });
        }
    }
    Ok(CrystalGraph {
        shape: lambda.clone(),
        nodes,
        edges,
        depth,
        depth_cap,
        partial,
    })
}

/// Number of LS paths of shape `λ` from `0` to `μ`.
///
/// Fails with [`Error::CapHit`] when such paths may lie beyond the depth cap.
pub fn multiplicity(
    sys: &RootSystem,
    lambda: &Vector,
    mu: &Vector,
    depth_cap: usize,
) -> Result<usize> {
    sys.check_dim(mu)?;
    let graph = generate_ls_paths(sys, lambda, depth_cap)?;
    let coords = match sys.coroot_coordinates(&(lambda - mu)) {
        Some(c) if c.iter().all(|x| x.is_integer() && !x.is_negative()) => c,
        _ => return Ok(0),
    };
    let height: i128 = coords.iter().map(|c| c.to_integer()).sum();
    if graph.partial && height > depth_cap as i128 {
        return Err(Error::CapHit(format!(
            "weight {mu} lies {height} steps below the shape, cap is {depth_cap}"
        )));
    }
    Ok(graph.nodes.iter().filter(|p| p.end() == *mu).count())
}
