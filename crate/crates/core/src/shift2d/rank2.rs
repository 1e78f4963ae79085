use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge, GraphMorphism};
use crate::textile::TextileSystem;

/// Two graphs on a common vertex list with a factorization bijection
/// `theta: (alpha, beta) -> (beta', alpha')` from composable pairs of
/// `G1^1 * G2^1` (`s(alpha) = r(beta)`) onto `G2^1 * G1^1`
/// (`s(beta') = r(alpha')`), with `r(alpha) = r(beta')` and `s(beta) = s(alpha')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTwoData {
    g1: Arc<DirectedGraph>,
    g2: Arc<DirectedGraph>,
    theta: Vec<((usize, usize), (usize, usize))>,
}

impl RankTwoData {
    /// `theta` lists `((alpha, beta), (beta', alpha'))` with `alpha, alpha'`
    /// edges of `g1` and `beta, beta'` edges of `g2`.
    pub fn new(
        g1: Arc<DirectedGraph>,
        g2: Arc<DirectedGraph>,
        theta: Vec<((usize, usize), (usize, usize))>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidRankTwo(msg));
        if g1.vertices() != g2.vertices() {
            return bad("G1 and G2 must have the same vertex list".into());
        }
        let (m1, m2) = (g1.vertex_matrix(), g2.vertex_matrix());
        if m1.checked_mul(&m2)? != m2.checked_mul(&m1)? {
            return bad("vertex matrices do not commute".into());
        }
        let mut image: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        let mut preimage: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for &((a, b), (b2, a2)) in &theta {
            if a >= g1.edge_count() || a2 >= g1.edge_count() || b >= g2.edge_count() || b2 >= g2.edge_count() {
                return bad("edge index out of range".into());
            }
            let name = || format!("({}, {})", g1.edge_name(a), g2.edge_name(b));
            if g1.source(a) != g2.range(b) {
                return bad(format!("{} is not composable", name()));
            }
            if g2.source(b2) != g1.range(a2) {
                return bad(format!(
                    "image ({}, {}) of {} is not composable",
                    g2.edge_name(b2),
                    g1.edge_name(a2),
                    name()
                ));
            }
            if g1.range(a) != g2.range(b2) {
                return bad(format!("r(alpha) != r(beta') at {}", name()));
            }
            if g2.source(b) != g1.source(a2) {
                return bad(format!("s(beta) != s(alpha') at {}", name()));
            }
            if image.insert((a, b), (b2, a2)).is_some() {
                return bad(format!("theta defined twice on {}", name()));
            }
            if preimage.insert((b2, a2), (a, b)).is_some() {
                return bad(format!("theta is not injective at {}", name()));
            }
        }
        let composable = |first: &DirectedGraph, second: &DirectedGraph| -> usize {
            (0..first.edge_count())
                .map(|x| {
                    (0..second.edge_count())
                        .filter(|&y| first.source(x) == second.range(y))
                        .count()
                })
                .sum()
        };
        if image.len() != composable(&g1, &g2) {
            return bad("theta is not defined on every composable pair".into());
        }
        if preimage.len() != composable(&g2, &g1) {
            return bad("theta is not onto".into());
        }
        let mut theta = theta;
        theta.sort_unstable();
        Ok(RankTwoData { g1, g2, theta })
    }

    pub fn g1(&self) -> &Arc<DirectedGraph> {
        &self.g1
    }

    pub fn g2(&self) -> &Arc<DirectedGraph> {
        &self.g2
    }

    /// Pairs sorted by `(alpha, beta)`.
    pub fn theta(&self) -> &[((usize, usize), (usize, usize))] {
        &self.theta
    }
}

/// The textile of a rank-two graph: `G^0 = G1^1`, `G^1` the composable pairs
/// `(alpha, beta)` with `s = alpha`, `r = alpha'`, `p = beta'`, `q = beta`,
/// and `H` the opposite of `G2`.
pub fn from_rank2(d: &RankTwoData) -> Result<TextileSystem> {
    let (g1, g2) = (&d.g1, &d.g2);
    let h = Arc::new(g2.opposite());
    let edges = d
        .theta
        .iter()
        .map(|&((a, b), (_, a2))| Edge {
            name: format!("{}*{}", g1.edge_name(a), g2.edge_name(b)),
            source: a,
            range: a2,
        })
        .collect();
    let g = Arc::new(DirectedGraph::from_parts(
        g1.edges().iter().map(|e| e.name.clone()).collect(),
        edges,
    )?);
    let p = GraphMorphism::new(
        g.clone(),
        h.clone(),
        (0..g1.edge_count()).map(|a| g1.range(a)).collect(),
        d.theta.iter().map(|&(_, (b2, _))| b2).collect(),
    )?;
    let q = GraphMorphism::new(
        g,
        h,
        (0..g1.edge_count()).map(|a| g1.source(a)).collect(),
        d.theta.iter().map(|&((_, b), _)| b).collect(),
    )?;
    TextileSystem::try_new(p, q)
}
