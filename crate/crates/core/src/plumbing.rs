//! Star-shaped plumbing graphs of Seifert homology spheres.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::neg_cont_frac;
use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::seifert::SeifertInvariants;

/// Central vertex of weight `-e` with one chain per singular fiber. Each
/// chain lists its weights from the center outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub central_weight: i64,
    pub arms: Vec<Vec<i64>>,
}

impl PlumbingGraph {
    pub fn rank(&self) -> usize {
        1 + self.arms.iter().map(Vec::len).sum::<usize>()
    }

    /// Vertex weights in vertex order: center first, then each arm outward.
    pub fn weights(&self) -> Vec<i64> {
        std::iter::once(self.central_weight)
            .chain(self.arms.iter().flatten().copied())
            .collect()
    }

    /// Edges as vertex index pairs, in the same numbering as [`weights`].
    ///
    /// [`weights`]: PlumbingGraph::weights
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.rank().saturating_sub(1));
        let mut next = 1;
        for arm in &self.arms {
            let mut prev = 0;
            for _ in arm {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        edges
    }

    /// Intersection lattice of the plumbing, validated to be negative
    /// definite and unimodular.
    pub fn gram_matrix(&self) -> Result<GramLattice> {
        let n = self.rank();
        let mut gram = vec![vec![0i64; n]; n];
        for (i, w) in self.weights().into_iter().enumerate() {
            gram[i][i] = w;
        }
        for (i, j) in self.edges() {
            gram[i][j] = 1;
            gram[j][i] = 1;
        }
        GramLattice::new(gram)
    }

    /// Graphviz rendering; vertices are labelled by their weights.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph plumbing {\n");
        for (i, w) in self.weights().into_iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{w}\"];");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  v{i} -- v{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Plumbing graph of canonical Seifert data: central weight `-e`, and for
/// every `a_k >= 2` a chain `-x_{k,1}, ..., -x_{k,m_k}` where
/// `a_k/b_k = [x_{k,1}, ..., x_{k,m_k}]`. Regular slots get no chain.
pub fn plumbing_graph(inv: &SeifertInvariants) -> Result<PlumbingGraph> {
    inv.validate()?;
    let small = |x: &BigInt| {
        x.to_i64()
            .ok_or_else(|| Error::TooLarge(format!("plumbing weight {x}")))
    };
    let mut arms = Vec::new();
    for (a, b) in &inv.pairs {
        if a.is_one() {
            continue;
        }
        let cf = neg_cont_frac(a, b)?;
        arms.push(
            cf.entries()
                .iter()
                .map(|x| small(x).map(|x| -x))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(PlumbingGraph {
        central_weight: -small(&inv.e)?,
        arms,
    })
}

/// Same as [`PlumbingGraph::to_dot`].
pub fn export_dot(g: &PlumbingGraph) -> String {
    g.to_dot()
}
