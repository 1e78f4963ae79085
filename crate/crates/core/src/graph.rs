//! Finite directed multigraphs and graph morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

/// A finite directed multigraph. Vertex and edge order is declaration order
/// and every matrix derived from the graph uses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
}

impl DirectedGraph {
    /// Builds a graph from vertex names and `(edge, source, range)` name triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let vertex_index = index_names(&vertices, "vertex")?;
        let mut resolved = Vec::new();
        for (name, src, dst) in edges {
            let source = *vertex_index
                .get(&src)
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let range = *vertex_index
                .get(&dst)
                .ok_or_else(|| Error::UnknownVertex(dst.clone()))?;
            resolved.push(Edge {
                name,
                source,
                range,
            });
        }
        Self::from_parts(vertices, resolved)
    }

    pub fn from_parts(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let vertex_index = index_names(&vertices, "vertex")?;
        for e in &edges {
            for v in [e.source, e.range] {
                if v >= vertices.len() {
                    return Err(Error::UnknownVertex(format!("#{v} (edge {})", e.name)));
                }
            }
        }
        let names: Vec<String> = edges.iter().map(|e| e.name.clone()).collect();
        let edge_index = index_names(&names, "edge")?;
        Ok(DirectedGraph {
            vertices,
            edges,
            vertex_index,
            edge_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edge_index.get(name).copied()
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].range
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].source == v)
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].range == v)
    }

    /// Vertices with no outgoing edge.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.out_edges(v).next().is_none())
            .collect()
    }

    /// `M(i, j)` = number of edges from vertex `i` to vertex `j`.
    pub fn vertex_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for e in &self.edges {
            m[(e.source, e.range)] += 1;
        }
        m
    }

    /// `E(e, f) = 1` iff `r(e) = s(f)`.
    pub fn edge_adjacency_matrix(&self) -> IntMatrix {
        let n = self.edge_count();
        IntMatrix::from_fn(n, n, |e, f| {
            u64::from(self.edges[e].range == self.edges[f].source)
        })
    }

    /// Same vertices and edges with source and range interchanged.
    pub fn opposite(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                name: e.name.clone(),
                source: e.range,
                range: e.source,
            })
            .collect();
        DirectedGraph {
            vertices: self.vertices.clone(),
            edges,
            vertex_index: self.vertex_index.clone(),
            edge_index: self.edge_index.clone(),
        }
    }
}

fn index_names(names: &[String], kind: &'static str) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::Duplicate {
                kind,
                name: n.clone(),
            });
        }
    }
    Ok(index)
}

/// A pair of total maps on vertices and edges. Commutation with source and
/// range is checked by [`GraphMorphism::validate`], not at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMorphism {
    domain: Arc<DirectedGraph>,
    codomain: Arc<DirectedGraph>,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationFailure {
    pub edge: usize,
    pub source_ok: bool,
    pub range_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub commutation_failures: Vec<CommutationFailure>,
    pub vertex_surjective: bool,
    pub edge_surjective: bool,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.commutation_failures.is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        self.vertex_surjective && self.edge_surjective
    }
}

impl GraphMorphism {
    pub fn new(
        domain: Arc<DirectedGraph>,
        codomain: Arc<DirectedGraph>,
        vertex_map: Vec<usize>,
        edge_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.vertex_count() || edge_map.len() != domain.edge_count() {
            return Err(Error::InvalidMorphism("maps are not total".into()));
        }
        if vertex_map.iter().any(|&w| w >= codomain.vertex_count())
            || edge_map.iter().any(|&f| f >= codomain.edge_count())
        {
            return Err(Error::InvalidMorphism("image outside codomain".into()));
        }
        Ok(GraphMorphism {
            domain,
            codomain,
            vertex_map,
            edge_map,
        })
    }

    /// Builds a morphism from name pairs; every domain vertex and edge must be mapped.
    pub fn from_names(
        domain: Arc<DirectedGraph>,
        codomain: Arc<DirectedGraph>,
        vertex_pairs: &[(String, String)],
        edge_pairs: &[(String, String)],
    ) -> Result<Self> {
        let mut vmap = vec![None; domain.vertex_count()];
        for (v, w) in vertex_pairs {
            let i = domain
                .vertex_id(v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            let j = codomain
                .vertex_id(w)
                .ok_or_else(|| Error::UnknownVertex(w.clone()))?;
            vmap[i] = Some(j);
        }
        let mut emap = vec![None; domain.edge_count()];
        for (e, f) in edge_pairs {
            let i = domain.edge_id(e).ok_or_else(|| Error::UnknownEdge(e.clone()))?;
            let j = codomain
                .edge_id(f)
                .ok_or_else(|| Error::UnknownEdge(f.clone()))?;
            emap[i] = Some(j);
        }
        let vertex_map = vmap
            .iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    Error::InvalidMorphism(format!("vertex `{}` is unmapped", domain.vertex_name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let edge_map = emap
            .iter()
            .enumerate()
            .map(|(i, f)| {
                f.ok_or_else(|| {
                    Error::InvalidMorphism(format!("edge `{}` is unmapped", domain.edge_name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GraphMorphism::new(domain, codomain, vertex_map, edge_map)
    }

    pub fn domain(&self) -> &Arc<DirectedGraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DirectedGraph> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    pub fn on_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn on_edge(&self, e: usize) -> usize {
        self.edge_map[e]
    }

    pub fn validate(&self) -> MorphismReport {
        let (g, h) = (&self.domain, &self.codomain);
        let commutation_failures = (0..g.edge_count())
            .filter_map(|e| {
                let f = self.edge_map[e];
                let source_ok = self.vertex_map[g.source(e)] == h.source(f);
                let range_ok = self.vertex_map[g.range(e)] == h.range(f);
                (!(source_ok && range_ok)).then_some(CommutationFailure {
                    edge: e,
                    source_ok,
                    range_ok,
                })
            })
            .collect();
        let mut vhit = vec![false; h.vertex_count()];
        self.vertex_map.iter().for_each(|&w| vhit[w] = true);
        let mut ehit = vec![false; h.edge_count()];
        self.edge_map.iter().for_each(|&f| ehit[f] = true);
        MorphismReport {
            commutation_failures,
            vertex_surjective: vhit.iter().all(|&b| b),
            edge_surjective: ehit.iter().all(|&b| b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str, &str)]) -> DirectedGraph {
        DirectedGraph::new(
            vs.iter().copied(),
            es.iter()
                .map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string())),
        )
        .unwrap()
    }

    #[test]
    fn vertex_matrices() {
        let h = graph(&["0", "1"], &[("00", "0", "0"), ("10", "0", "1"), ("01", "1", "0")]);
        assert_eq!(
            h.vertex_matrix(),
            IntMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).unwrap()
        );
        let lonely = graph(&["v"], &[]);
        assert_eq!(lonely.vertex_matrix(), IntMatrix::zeros(1, 1));
        let ex2 = graph(&["u"], &[("a", "u", "u"), ("b", "u", "u"), ("c", "u", "u")]);
        assert_eq!(ex2.vertex_matrix()[(0, 0)], 3);
    }

    #[test]
    fn opposite_swaps_and_is_an_involution() {
        let g = graph(&["u", "v"], &[("a", "u", "v"), ("b", "v", "u")]);
        let op = g.opposite();
        assert_eq!(op.source(0), 1);
        assert_eq!(op.range(0), 0);
        assert_eq!(op.opposite(), g);
        assert_eq!(op.vertex_matrix(), g.vertex_matrix().transpose());
        let lp = graph(&["u"], &[("l", "u", "u")]);
        assert_eq!(lp.opposite(), lp);
    }

    #[test]
    fn construction_errors() {
        let err = DirectedGraph::new(["u"], [("a".into(), "u".into(), "z".into())]).unwrap_err();
        assert_eq!(err, Error::UnknownVertex("z".into()));
        assert!(DirectedGraph::new(["u", "u"], []).is_err());
        assert!(DirectedGraph::new(
            ["u"],
            [
                ("a".into(), "u".into(), "u".into()),
                ("a".into(), "u".into(), "u".into())
            ]
        )
        .is_err());
    }

    #[test]
    fn morphism_validation() {
        let g = Arc::new(graph(&["u", "v"], &[("a", "u", "v"), ("b", "v", "u")]));
        let h = Arc::new(graph(&["w"], &[("x", "w", "w")]));
        let p = GraphMorphism::new(g.clone(), h.clone(), vec![0, 0], vec![0, 0]).unwrap();
        let rep = p.validate();
        assert!(rep.is_morphism() && rep.is_surjective());

        // a loop sent to a non-loop
        let g2 = Arc::new(graph(&["u"], &[("l", "u", "u")]));
        let h2 = Arc::new(graph(&["x", "y"], &[("f", "x", "y")]));
        let bad = GraphMorphism::new(g2, h2, vec![0], vec![0]).unwrap();
        let rep = bad.validate();
        assert_eq!(
            rep.commutation_failures,
            vec![CommutationFailure {
                edge: 0,
                source_ok: true,
                range_ok: false
            }]
        );
        assert!(!rep.vertex_surjective);

        assert!(GraphMorphism::new(g, h, vec![0], vec![0, 0]).is_err());
    }
}
