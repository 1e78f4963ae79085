use std::collections::HashMap;
use std::sync::Arc;

use super::{Block, Budget, MatrixShift};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge, GraphMorphism};
use crate::textile::TextileSystem;

struct BlockTable {
    blocks: Vec<Block>,
    index: HashMap<Block, usize>,
}

impl BlockTable {
    fn new(x: &MatrixShift, width: usize, height: usize, budget: Budget) -> Result<Self> {
        let blocks = x.enumerate_blocks(width, height, budget)?;
        let index = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        Ok(BlockTable { blocks, index })
    }

    fn id(&self, b: &Block) -> usize {
        // sub-blocks of admissible blocks are admissible
        self.index[b]
    }

    fn names(&self, x: &MatrixShift) -> Vec<String> {
        self.blocks.iter().map(|b| x.block_name(b)).collect()
    }
}

/// Graph whose edges are `edges` (blocks), with `split` returning the
/// (source, range) sub-blocks, both found in `vertices`.
fn block_graph(
    x: &MatrixShift,
    vertices: &BlockTable,
    edges: &BlockTable,
    split: impl Fn(&Block) -> (Block, Block),
) -> Result<DirectedGraph> {
    let edge_list = edges
        .blocks
        .iter()
        .map(|b| {
            let (s, r) = split(b);
            Edge {
                name: x.block_name(b),
                source: vertices.id(&s),
                range: vertices.id(&r),
            }
        })
        .collect();
    DirectedGraph::from_parts(vertices.names(x), edge_list)
}

fn lower(b: &Block) -> Block {
    b.sub_block(0, 0, b.width(), b.height() - 1)
}

fn upper(b: &Block) -> Block {
    b.sub_block(0, 1, b.width(), b.height() - 1)
}

fn left(b: &Block) -> Block {
    b.sub_block(0, 0, b.width() - 1, b.height())
}

fn right(b: &Block) -> Block {
    b.sub_block(1, 0, b.width() - 1, b.height())
}

fn check_sizes(x: &MatrixShift, m: usize, n: usize, budget: Budget) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::DimensionMismatch(format!(
            "textile towers need m, n >= 2 (got {m}, {n})"
        )));
    }
    if x.enumerate_blocks(m, n, budget)?.is_empty() {
        return Err(Error::EmptyBlockSet {
            width: m,
            height: n,
        });
    }
    Ok(())
}

/// `T(m, n)`: `G(m, n)` has the `m x (n-1)` blocks as vertices and the
/// `m x n` blocks as edges (lower to upper); `p`, `q` take the left and right
/// `(m-1) x n` sub-blocks into `G(m-1, n)`.
pub fn textile_of(x: &MatrixShift, m: usize, n: usize, budget: Budget) -> Result<TextileSystem> {
    check_sizes(x, m, n, budget)?;
    let g_vertices = BlockTable::new(x, m, n - 1, budget)?;
    let g_edges = BlockTable::new(x, m, n, budget)?;
    let h_vertices = BlockTable::new(x, m - 1, n - 1, budget)?;
    let h_edges = BlockTable::new(x, m - 1, n, budget)?;

    let g = Arc::new(block_graph(x, &g_vertices, &g_edges, |b| (lower(b), upper(b)))?);
    let h = Arc::new(block_graph(x, &h_vertices, &h_edges, |b| (lower(b), upper(b)))?);
    let morphism = |side: fn(&Block) -> Block| {
        GraphMorphism::new(
            g.clone(),
            h.clone(),
            g_vertices.blocks.iter().map(|b| h_vertices.id(&side(b))).collect(),
            g_edges.blocks.iter().map(|b| h_edges.id(&side(b))).collect(),
        )
    };
    TextileSystem::try_new(morphism(left)?, morphism(right)?)
}

/// `T̄(m, n)`, built directly: `Ḡ(m, n)` has the `(m-1) x n` blocks as
/// vertices and the `m x n` blocks as edges (left to right); the morphisms
/// take lower and upper `m x (n-1)` sub-blocks into `Ḡ(m, n-1)`.
pub fn dual_textile_of(x: &MatrixShift, m: usize, n: usize, budget: Budget) -> Result<TextileSystem> {
    check_sizes(x, m, n, budget)?;
    let g_vertices = BlockTable::new(x, m - 1, n, budget)?;
    let g_edges = BlockTable::new(x, m, n, budget)?;
    let h_vertices = BlockTable::new(x, m - 1, n - 1, budget)?;
    let h_edges = BlockTable::new(x, m, n - 1, budget)?;

    let g = Arc::new(block_graph(x, &g_vertices, &g_edges, |b| (left(b), right(b)))?);
    let h = Arc::new(block_graph(x, &h_vertices, &h_edges, |b| (left(b), right(b)))?);
    let morphism = |side: fn(&Block) -> Block| {
        GraphMorphism::new(
            g.clone(),
            h.clone(),
            g_vertices.blocks.iter().map(|b| h_vertices.id(&side(b))).collect(),
            g_edges.blocks.iter().map(|b| h_edges.id(&side(b))).collect(),
        )
    };
    TextileSystem::try_new(morphism(lower)?, morphism(upper)?)
}
