//! Graph containers: an undirected simple graph stored as an upper-triangular
//! bit array addressed by the lexicographic pair index, and the directed
//! variant over ordered pairs.

use crate::error::{Error, Result};
use crate::pairs;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
    degrees: Vec<usize>,
    num_edges: usize,
}

impl Graph {
    /// Empty graph on n labeled nodes (isolated nodes are meaningful).
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("graph needs at least one node".into()));
        }
        let npairs = n * n.saturating_sub(1) / 2;
        Ok(Graph {
            n,
            bits: vec![0u64; npairs.div_ceil(64)],
            degrees: vec![0; n],
            num_edges: 0,
        })
    }

    /// Build from an edge iterator; edges may come in either order.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (i, j) in edges {
            if !g.add_edge(i, j)? {
                return Err(Error::InvalidInput(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j)?;
            }
        }
        Ok(g)
    }

    /// Insert an edge; returns false if it was already present. Accepts both
    /// orders; rejects self-loops and out-of-range ids.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::InvalidPair(format!("self-loop at node {i}")));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let t = pairs::pair_to_index(a, b, self.n)?;
        let (w, m) = (t / 64, 1u64 << (t % 64));
        if self.bits[w] & m != 0 {
            return Ok(false);
        }
        self.bits[w] |= m;
        self.degrees[a] += 1;
        self.degrees[b] += 1;
        self.num_edges += 1;
        Ok(true)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j || i >= self.n || j >= self.n {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let t = pairs::pair_to_index(a, b, self.n).expect("checked range");
        self.bits[t / 64] & (1u64 << (t % 64)) != 0
    }

    /// Adjacency bit at latent index t (lexicographic pair order).
    pub fn edge_bit(&self, t: usize) -> bool {
        self.bits[t / 64] & (1u64 << (t % 64)) != 0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    /// Degrees as f64, the shape the moment equations consume.
    pub fn degrees_f64(&self) -> Vec<f64> {
        self.degrees.iter().map(|&d| d as f64).collect()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(move |&(i, j)| self.has_edge(i, j))
    }
}

/// Directed simple graph over ordered pairs (i, j), i != j, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    bits: Vec<u64>,
    out_degrees: Vec<usize>,
    in_degrees: Vec<usize>,
}

impl DiGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(
                "directed graph needs at least two nodes".into(),
            ));
        }
        let dim = n * (n - 1);
        Ok(DiGraph {
            n,
            bits: vec![0u64; dim.div_ceil(64)],
            out_degrees: vec![0; n],
            in_degrees: vec![0; n],
        })
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let t = pairs::ordered_pair_to_index(i, j, self.n)?;
        let (w, m) = (t / 64, 1u64 << (t % 64));
        if self.bits[w] & m == 0 {
            self.bits[w] |= m;
            self.out_degrees[i] += 1;
            self.in_degrees[j] += 1;
        }
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j || i >= self.n || j >= self.n {
            return false;
        }
        let t = pairs::ordered_pair_to_index(i, j, self.n).expect("checked range");
        self.bits[t / 64] & (1u64 << (t % 64)) != 0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.out_degrees.iter().sum()
    }

    pub fn out_degrees(&self) -> &[usize] {
        &self.out_degrees
    }

    pub fn in_degrees(&self) -> &[usize] {
        &self.in_degrees
    }
}
