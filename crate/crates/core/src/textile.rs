//! Textile systems `(G, H, p, q)`, their duals and Wang tiles, and the
//! path-lifting hierarchy of graph morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge, GraphMorphism, MorphismReport};
use crate::Matrix;

/// Default bound on `|G^0| + |G^1|` for [`are_isomorphic`].
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextileSystem {
    g: Arc<DirectedGraph>,
    h: Arc<DirectedGraph>,
    p: GraphMorphism,
    q: GraphMorphism,
}

/// Outcome of checking the textile axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextileReport {
    pub p: MorphismReport,
    pub q: MorphismReport,
    /// Pairs of distinct edges with the same `(p(e), q(e), r(e), s(e))`.
    pub collisions: Vec<(usize, usize)>,
}

impl TextileReport {
    pub fn is_valid(&self) -> bool {
        self.p.is_morphism()
            && self.q.is_morphism()
            && self.p.is_surjective()
            && self.q.is_surjective()
            && self.collisions.is_empty()
    }

    pub fn describe(&self, t: &TextileSystem) -> String {
        let mut problems = Vec::new();
        for (name, rep) in [("p", &self.p), ("q", &self.q)] {
            for f in &rep.commutation_failures {
                problems.push(format!(
                    "{name} does not commute with {} at edge {}",
                    if f.source_ok { "r" } else { "s" },
                    t.g.edge_name(f.edge)
                ));
            }
            if !rep.vertex_surjective {
                problems.push(format!("{name} is not onto vertices"));
            }
            if !rep.edge_surjective {
                problems.push(format!("{name} is not onto edges"));
            }
        }
        for &(a, b) in &self.collisions {
            problems.push(format!(
                "edges {} and {} have identical (p, q, r, s)",
                t.g.edge_name(a),
                t.g.edge_name(b)
            ));
        }
        if problems.is_empty() {
            "valid".into()
        } else {
            problems.join("; ")
        }
    }
}

impl TextileSystem {
    /// Pairs two morphisms with a common domain and codomain. The textile
    /// axioms themselves are checked by [`TextileSystem::validate`].
    pub fn new(p: GraphMorphism, q: GraphMorphism) -> Result<Self> {
        if p.domain() != q.domain() || p.codomain() != q.codomain() {
            return Err(Error::InvalidTextile(
                "p and q must share domain and codomain".into(),
            ));
        }
        Ok(TextileSystem {
            g: p.domain().clone(),
            h: p.codomain().clone(),
            p,
            q,
        })
    }

    /// Like [`TextileSystem::new`] but rejects systems that fail validation.
    pub fn try_new(p: GraphMorphism, q: GraphMorphism) -> Result<Self> {
        let t = Self::new(p, q)?;
        t.ensure_valid()?;
        Ok(t)
    }

    pub fn g(&self) -> &Arc<DirectedGraph> {
        &self.g
    }

    pub fn h(&self) -> &Arc<DirectedGraph> {
        &self.h
    }

    pub fn p(&self) -> &GraphMorphism {
        &self.p
    }

    pub fn q(&self) -> &GraphMorphism {
        &self.q
    }

    pub fn morphism(&self, which: Which) -> &GraphMorphism {
        match which {
            Which::P => &self.p,
            Which::Q => &self.q,
        }
    }

    fn signature(&self, e: usize) -> (usize, usize, usize, usize) {
        (
            self.p.on_edge(e),
            self.q.on_edge(e),
            self.g.range(e),
            self.g.source(e),
        )
    }

    pub fn validate(&self) -> TextileReport {
        let mut seen: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
        let mut collisions = Vec::new();
        for e in 0..self.g.edge_count() {
            if let Some(&first) = seen.get(&self.signature(e)) {
                collisions.push((first, e));
            } else {
                seen.insert(self.signature(e), e);
            }
        }
        TextileReport {
            p: self.p.validate(),
            q: self.q.validate(),
            collisions,
        }
    }

    /// `Err(InvalidTextile)` describing every failed axiom.
    pub fn ensure_valid(&self) -> Result<()> {
        let rep = self.validate();
        if rep.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidTextile(rep.describe(self)))
        }
    }

    /// The dual system: edges of `G` now run from `p(e)` to `q(e)` between
    /// edges of `H`, and the old source and range maps become the morphisms.
    /// Fails with `InvalidTextile` when `s` or `r` is not onto.
    pub fn dual(&self) -> Result<TextileSystem> {
        self.ensure_valid()?;
        let (g, h) = (&self.g, &self.h);
        let g_bar = DirectedGraph::from_parts(
            h.edges().iter().map(|b| b.name.clone()).collect(),
            (0..g.edge_count())
                .map(|e| Edge {
                    name: g.edge_name(e).to_string(),
                    source: self.p.on_edge(e),
                    range: self.q.on_edge(e),
                })
                .collect(),
        )?;
        let h_bar = DirectedGraph::from_parts(
            h.vertices().to_vec(),
            (0..g.vertex_count())
                .map(|v| Edge {
                    name: g.vertex_name(v).to_string(),
                    source: self.p.on_vertex(v),
                    range: self.q.on_vertex(v),
                })
                .collect(),
        )?;
        let (g_bar, h_bar) = (Arc::new(g_bar), Arc::new(h_bar));
        let s = GraphMorphism::new(
            g_bar.clone(),
            h_bar.clone(),
            (0..h.edge_count()).map(|b| h.source(b)).collect(),
            (0..g.edge_count()).map(|e| g.source(e)).collect(),
        )?;
        let r = GraphMorphism::new(
            g_bar,
            h_bar,
            (0..h.edge_count()).map(|b| h.range(b)).collect(),
            (0..g.edge_count()).map(|e| g.range(e)).collect(),
        )?;
        TextileSystem::try_new(s, r)
    }

    /// One tile per edge of `G`, in edge order.
    pub fn wang_tiles(&self) -> Vec<WangTile> {
        (0..self.g.edge_count())
            .map(|e| WangTile {
                edge: self.g.edge_name(e).to_string(),
                left: self.h.edge_name(self.p.on_edge(e)).to_string(),
                right: self.h.edge_name(self.q.on_edge(e)).to_string(),
                bottom: self.g.vertex_name(self.g.source(e)).to_string(),
                top: self.g.vertex_name(self.g.range(e)).to_string(),
            })
            .collect()
    }

    pub fn lifting_report(&self) -> LiftReport {
        LiftReport {
            p: morphism_lifting(&self.p),
            q: morphism_lifting(&self.q),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangTile {
    pub edge: String,
    pub left: String,
    pub right: String,
    pub bottom: String,
    pub top: String,
}

/// Whether lifts are anchored at the source or at the range of edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftDirection {
    Source,
    Range,
}

/// A `(vertex, codomain edge)` pair with zero or several lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftWitness {
    pub direction: LiftDirection,
    pub vertex: String,
    pub h_edge: String,
    pub lifts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismLifting {
    pub s_lift_exists: bool,
    pub s_lift_unique: bool,
    pub r_lift_exists: bool,
    pub r_lift_unique: bool,
    pub failure_witnesses: Vec<LiftWitness>,
}

impl MorphismLifting {
    pub fn is_fibration(&self) -> bool {
        self.s_lift_exists && self.r_lift_exists
    }

    pub fn is_covering(&self) -> bool {
        self.is_fibration() && self.s_lift_unique && self.r_lift_unique
    }

    /// Assembles flags from `(direction, vertex, edge, lift count)` tallies.
    pub fn from_counts(counts: impl IntoIterator<Item = (LiftDirection, String, String, usize)>) -> Self {
        let mut out = MorphismLifting {
            s_lift_exists: true,
            s_lift_unique: true,
            r_lift_exists: true,
            r_lift_unique: true,
            failure_witnesses: Vec::new(),
        };
        for (direction, vertex, h_edge, lifts) in counts {
            let (exists, unique) = match direction {
                LiftDirection::Source => (&mut out.s_lift_exists, &mut out.s_lift_unique),
                LiftDirection::Range => (&mut out.r_lift_exists, &mut out.r_lift_unique),
            };
            if lifts == 0 {
                *exists = false;
                *unique = false;
            } else if lifts > 1 {
                *unique = false;
            }
            if lifts != 1 {
                out.failure_witnesses.push(LiftWitness {
                    direction,
                    vertex,
                    h_edge,
                    lifts,
                });
            }
        }
        out
    }

    pub fn summary(&self) -> &'static str {
        if self.is_covering() {
            "covering"
        } else if self.is_fibration() {
            "fibration"
        } else {
            "no path lifting"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub p: MorphismLifting,
    pub q: MorphismLifting,
}

impl LiftReport {
    pub fn get(&self, which: Which) -> &MorphismLifting {
        match which {
            Which::P => &self.p,
            Which::Q => &self.q,
        }
    }
}

fn morphism_lifting(phi: &GraphMorphism) -> MorphismLifting {
    let (g, h) = (phi.domain(), phi.codomain());
    let mut tallies = Vec::new();
    for direction in [LiftDirection::Source, LiftDirection::Range] {
        let end = |graph: &DirectedGraph, e: usize| match direction {
            LiftDirection::Source => graph.source(e),
            LiftDirection::Range => graph.range(e),
        };
        for v in 0..g.vertex_count() {
            for b in 0..h.edge_count() {
                if end(h, b) != phi.on_vertex(v) {
                    continue;
                }
                let lifts = (0..g.edge_count())
                    .filter(|&a| end(g, a) == v && phi.on_edge(a) == b)
                    .count();
                tallies.push((
                    direction,
                    g.vertex_name(v).to_string(),
                    h.edge_name(b).to_string(),
                    lifts,
                ));
            }
        }
    }
    MorphismLifting::from_counts(tallies)
}

/// Lift counts of one codomain path, per domain vertex over its anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCounts {
    pub per_vertex: Vec<(usize, BigUint)>,
    pub total: BigUint,
}

/// Counts the paths of `G` that `phi` maps onto `path`, starting (`Source`)
/// or ending (`Range`) at each vertex above the path's anchor. `anchor` is
/// required for the empty path and must agree with the path otherwise.
pub fn count_lifts(
    phi: &GraphMorphism,
    anchor: Option<usize>,
    path: &[usize],
    direction: LiftDirection,
) -> Result<LiftCounts> {
    let (g, h) = (phi.domain(), phi.codomain());
    if let Some(&bad) = path.iter().find(|&&b| b >= h.edge_count()) {
        return Err(Error::UnknownEdge(format!("#{bad}")));
    }
    for w in path.windows(2) {
        if h.range(w[0]) != h.source(w[1]) {
            return Err(Error::NonComposablePath(format!(
                "{} then {}",
                h.edge_name(w[0]),
                h.edge_name(w[1])
            )));
        }
    }
    let implied = match direction {
        LiftDirection::Source => path.first().map(|&b| h.source(b)),
        LiftDirection::Range => path.last().map(|&b| h.range(b)),
    };
    let anchor = match (anchor, implied) {
        (Some(a), Some(i)) if a != i => {
            return Err(Error::NonComposablePath(format!(
                "anchor {} does not match the path",
                h.vertex_name(a)
            )))
        }
        (Some(a), _) if a >= h.vertex_count() => return Err(Error::UnknownVertex(format!("#{a}"))),
        (Some(a), _) => a,
        (None, Some(i)) => i,
        (None, None) => {
            return Err(Error::NonComposablePath(
                "empty path needs an anchor vertex".into(),
            ))
        }
    };

    // product of per-edge transfer matrices T_b(v, w) = #{a : v -a-> w, phi(a) = b}
    let n = g.vertex_count();
    let mut product: Matrix<BigUint> = Matrix::identity(n);
    for &b in path {
        let mut step: Matrix<BigUint> = Matrix::zeros(n, n);
        for a in 0..g.edge_count() {
            if phi.on_edge(a) == b {
                step[(g.source(a), g.range(a))] += 1u32;
            }
        }
        product = product.checked_mul(&step)?;
    }
    let per_vertex: Vec<(usize, BigUint)> = (0..n)
        .filter(|&v| phi.on_vertex(v) == anchor)
        .map(|v| {
            let count = match direction {
                LiftDirection::Source => product.row(v).iter().sum(),
                LiftDirection::Range => (0..n).map(|u| product[(u, v)].clone()).sum(),
            };
            (v, count)
        })
        .collect();
    let total = per_vertex
        .iter()
        .fold(BigUint::zero(), |acc, (_, c)| acc + c);
    Ok(LiftCounts { per_vertex, total })
}

/// An isomorphism of textile systems, as index maps from the first system to the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextileIsomorphism {
    pub g_vertices: Vec<usize>,
    pub g_edges: Vec<usize>,
    pub h_vertices: Vec<usize>,
    pub h_edges: Vec<usize>,
}

/// Backtracking search for the lexicographically least isomorphism
/// (ordered by the `G`-vertex map, then the `H`-edge map). The remaining
/// components are forced: `H`-vertices by surjectivity of `p` and
/// `G`-edges by determinacy.
pub fn are_isomorphic(
    t1: &TextileSystem,
    t2: &TextileSystem,
    bound: usize,
) -> Result<Option<TextileIsomorphism>> {
    let size = t1.g.vertex_count() + t1.g.edge_count();
    if size > bound {
        return Err(Error::SizeBoundExceeded { size, bound });
    }
    t1.ensure_valid()?;
    t2.ensure_valid()?;
    let dims = |t: &TextileSystem| {
        (
            t.g.vertex_count(),
            t.g.edge_count(),
            t.h.vertex_count(),
            t.h.edge_count(),
        )
    };
    if dims(t1) != dims(t2) {
        return Ok(None);
    }
    let search = IsoSearch::new(t1, t2);
    Ok(search.run())
}

struct IsoSearch<'a> {
    t1: &'a TextileSystem,
    t2: &'a TextileSystem,
    vertex_sig1: Vec<[usize; 3]>,
    vertex_sig2: Vec<[usize; 3]>,
    hedge_sig1: Vec<[usize; 2]>,
    hedge_sig2: Vec<[usize; 2]>,
    by_signature2: HashMap<(usize, usize, usize, usize), usize>,
}

impl<'a> IsoSearch<'a> {
    fn new(t1: &'a TextileSystem, t2: &'a TextileSystem) -> Self {
        let vsig = |t: &TextileSystem| -> Vec<[usize; 3]> {
            (0..t.g.vertex_count())
                .map(|v| {
                    [
                        t.g.out_edges(v).count(),
                        t.g.in_edges(v).count(),
                        t.g.out_edges(v).filter(|&e| t.g.range(e) == v).count(),
                    ]
                })
                .collect()
        };
        let hsig = |t: &TextileSystem| -> Vec<[usize; 2]> {
            (0..t.h.edge_count())
                .map(|b| {
                    [
                        t.p.edge_map().iter().filter(|&&x| x == b).count(),
                        t.q.edge_map().iter().filter(|&&x| x == b).count(),
                    ]
                })
                .collect()
        };
        let by_signature2 = (0..t2.g.edge_count())
            .map(|e| (t2.signature(e), e))
            .collect();
        IsoSearch {
            t1,
            t2,
            vertex_sig1: vsig(t1),
            vertex_sig2: vsig(t2),
            hedge_sig1: hsig(t1),
            hedge_sig2: hsig(t2),
            by_signature2,
        }
    }

    fn run(&self) -> Option<TextileIsomorphism> {
        let n = self.t1.g.vertex_count();
        let mut sigma = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.assign_vertex(&mut sigma, &mut used)
    }

    fn assign_vertex(&self, sigma: &mut Vec<usize>, used: &mut [bool]) -> Option<TextileIsomorphism> {
        let (t1, t2) = (self.t1, self.t2);
        let v = sigma.len();
        if v == t1.g.vertex_count() {
            let tau0 = self.induced_h_vertices(sigma)?;
            let mut tau1 = Vec::with_capacity(t1.h.edge_count());
            let mut hused = vec![false; t1.h.edge_count()];
            return self.assign_h_edge(sigma, &tau0, &mut tau1, &mut hused);
        }
        for w in 0..t2.g.vertex_count() {
            if used[w] || self.vertex_sig1[v] != self.vertex_sig2[w] {
                continue;
            }
            // edges among already-mapped vertices must be preserved with multiplicity
            let consistent = (0..=v).all(|u| {
                let wu = if u == v { w } else { sigma[u] };
                let m1 = t1.g.out_edges(v).filter(|&e| t1.g.range(e) == u).count();
                let m2 = t2.g.out_edges(w).filter(|&e| t2.g.range(e) == wu).count();
                let n1 = t1.g.out_edges(u).filter(|&e| t1.g.range(e) == v).count();
                let n2 = t2.g.out_edges(wu).filter(|&e| t2.g.range(e) == w).count();
                m1 == m2 && n1 == n2
            });
            if !consistent {
                continue;
            }
            sigma.push(w);
            used[w] = true;
            if let Some(found) = self.assign_vertex(sigma, used) {
                return Some(found);
            }
            used[w] = false;
            sigma.pop();
        }
        None
    }

    fn induced_h_vertices(&self, sigma: &[usize]) -> Option<Vec<usize>> {
        let (t1, t2) = (self.t1, self.t2);
        let mut tau0 = vec![usize::MAX; t1.h.vertex_count()];
        for (v, &w) in sigma.iter().enumerate() {
            for (m1, m2) in [(&t1.p, &t2.p), (&t1.q, &t2.q)] {
                let (x, y) = (m1.on_vertex(v), m2.on_vertex(w));
                if tau0[x] == usize::MAX {
                    tau0[x] = y;
                } else if tau0[x] != y {
                    return None;
                }
            }
        }
        let mut hit = vec![false; t2.h.vertex_count()];
        for &y in &tau0 {
            if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        Some(tau0)
    }

    fn assign_h_edge(
        &self,
        sigma: &[usize],
        tau0: &[usize],
        tau1: &mut Vec<usize>,
        used: &mut [bool],
    ) -> Option<TextileIsomorphism> {
        let (t1, t2) = (self.t1, self.t2);
        let b = tau1.len();
        if b == t1.h.edge_count() {
            let g_edges = (0..t1.g.edge_count())
                .map(|e| {
                    let key = (
                        tau1[t1.p.on_edge(e)],
                        tau1[t1.q.on_edge(e)],
                        sigma[t1.g.range(e)],
                        sigma[t1.g.source(e)],
                    );
                    self.by_signature2.get(&key).copied()
                })
                .collect::<Option<Vec<_>>>()?;
            return Some(TextileIsomorphism {
                g_vertices: sigma.to_vec(),
                g_edges,
                h_vertices: tau0.to_vec(),
                h_edges: tau1.clone(),
            });
        }
        for c in 0..t2.h.edge_count() {
            if used[c]
                || self.hedge_sig1[b] != self.hedge_sig2[c]
                || tau0[t1.h.source(b)] != t2.h.source(c)
                || tau0[t1.h.range(b)] != t2.h.range(c)
            {
                continue;
            }
            tau1.push(c);
            used[c] = true;
            if let Some(found) = self.assign_h_edge(sigma, tau0, tau1, used) {
                return Some(found);
            }
            used[c] = false;
            tau1.pop();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn builtin_textiles_validate() {
        for name in ["ex1", "ex2", "ex3", "nonlifting"] {
            let t = examples::textile(name);
            assert!(t.validate().is_valid(), "{name}");
        }
    }

    #[test]
    fn determinacy_collision_is_reported() {
        let g = Arc::new(
            DirectedGraph::new(
                ["u"],
                [
                    ("a".to_string(), "u".to_string(), "u".to_string()),
                    ("b".to_string(), "u".to_string(), "u".to_string()),
                ],
            )
            .unwrap(),
        );
        let h = Arc::new(
            DirectedGraph::new(["w"], [("x".to_string(), "w".to_string(), "w".to_string())]).unwrap(),
        );
        let p = GraphMorphism::new(g.clone(), h.clone(), vec![0], vec![0, 0]).unwrap();
        let t = TextileSystem::new(p.clone(), p).unwrap();
        let rep = t.validate();
        assert_eq!(rep.collisions, vec![(0, 1)]);
        assert!(!rep.is_valid());
        assert!(t.dual().is_err());
        assert!(rep.describe(&t).contains("edges a and b"));
    }

    #[test]
    fn wang_tiles_of_ex1() {
        let tiles = examples::textile("ex1").wang_tiles();
        assert_eq!(
            tiles[0],
            WangTile {
                edge: "a".into(),
                left: "x".into(),
                right: "x".into(),
                bottom: "u".into(),
                top: "v".into()
            }
        );
        assert_eq!((tiles[1].bottom.as_str(), tiles[1].top.as_str()), ("v", "u"));
    }

    #[test]
    fn dual_of_ex1_has_one_vertex() {
        let d = examples::textile("ex1").dual().unwrap();
        assert_eq!(d.g().vertex_count(), 1);
        assert_eq!(d.g().edge_count(), 2);
        assert!(d.validate().is_valid());
    }

    #[test]
    fn nonlifting_witnesses() {
        let rep = examples::textile("nonlifting").lifting_report();
        assert!(!rep.p.s_lift_exists);
        assert!(rep.p.failure_witnesses.iter().any(|w| w.direction == LiftDirection::Source
            && w.vertex == "u"
            && w.h_edge == "f"
            && w.lifts == 0));
        assert!(!rep.q.s_lift_exists);
        assert!(rep.q.failure_witnesses.iter().any(|w| w.direction == LiftDirection::Source
            && w.vertex == "v"
            && w.h_edge == "e"
            && w.lifts == 0));
    }

    #[test]
    fn count_lifts_errors_and_empty_path() {
        let t = examples::textile("ex2");
        let h = t.h();
        let (e, f) = (h.edge_id("e").unwrap(), h.edge_id("f").unwrap());
        let c = count_lifts(t.p(), None, &[e, f, e], LiftDirection::Source).unwrap();
        assert_eq!(c.total, BigUint::from(4u32));
        let empty = count_lifts(t.p(), Some(0), &[], LiftDirection::Source).unwrap();
        assert_eq!(empty.total, BigUint::from(1u32));
        assert!(count_lifts(t.p(), None, &[], LiftDirection::Range).is_err());

        let nl = examples::textile("nonlifting");
        // H has a single vertex, so every path composes; an out-of-range edge does not
        assert!(count_lifts(nl.p(), None, &[7], LiftDirection::Source).is_err());
    }

    #[test]
    fn isomorphism_basics() {
        let ex1 = examples::textile("ex1");
        let ex2 = examples::textile("ex2");
        let id = are_isomorphic(&ex2, &ex2, DEFAULT_ISOMORPHISM_BOUND)
            .unwrap()
            .unwrap();
        assert_eq!(id.g_vertices, vec![0]);
        assert_eq!(id.g_edges, vec![0, 1, 2]);
        assert!(are_isomorphic(&ex1, &ex2, DEFAULT_ISOMORPHISM_BOUND)
            .unwrap()
            .is_none());
        assert!(matches!(
            are_isomorphic(&ex1, &ex1, 2),
            Err(Error::SizeBoundExceeded { .. })
        ));
    }
}
