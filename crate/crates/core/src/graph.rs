//! Simple connected graphs with a canonical arc ordering, plus constructors
//! for the graph families with known transfer.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An arc `(tail, head)` between adjacent vertices.
pub type Arc = (usize, usize);

/// Immutable simple connected graph.
///
/// Arcs are numbered in lexicographic `(tail, head)` order, so the arcs
/// leaving `u` occupy the contiguous range `arc_offset(u)..arc_offset(u+1)`
/// and the neighbor order at `u` is ascending vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    reverse: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut sets = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        let neighbors: Vec<Vec<usize>> =
            sets.into_iter().map(|s| s.into_iter().collect()).collect();

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for nb in &neighbors {
            offsets.push(offsets.last().unwrap() + nb.len());
        }
        let mut g = Graph {
            n,
            neighbors,
            offsets,
            reverse: Vec::new(),
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        g.reverse = (0..g.arc_count())
            .map(|i| {
                let (u, v) = g.arc(i);
                g.arc_index(v, u).expect("adjacency is symmetric")
            })
            .collect();
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.arc_count() / 2
    }

    pub fn arc_count(&self) -> usize {
        self.offsets[self.n]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    /// Neighbors of `u` in ascending order; position `j` is the coin index.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Position of `v` in the neighbor order of `u`.
    pub fn position(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors[u].binary_search(&v).ok()
    }

    pub fn arc_offset(&self, u: usize) -> usize {
        self.offsets[u]
    }

    pub fn arc_index(&self, u: usize, v: usize) -> Option<usize> {
        self.position(u, v).map(|p| self.offsets[u] + p)
    }

    pub fn arc(&self, index: usize) -> Arc {
        let u = self.offsets.partition_point(|&o| o <= index) - 1;
        (u, self.neighbors[u][index - self.offsets[u]])
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors[u].iter().map(move |&v| (u, v)))
    }

    /// Index of the reversed arc.
    pub fn reverse_arc(&self, index: usize) -> usize {
        self.reverse[index]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.arcs().filter(|&(u, v)| u < v).collect()
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    pub fn are_twins(&self, a: usize, b: usize) -> bool {
        a != b && self.neighbors[a] == self.neighbors[b]
    }

    /// Graph text format: `n <count>` followed by `u v` edge lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if n.is_none() {
                match toks.as_slice() {
                    ["n", count] => {
                        n = Some(
                            count
                                .parse::<usize>()
                                .map_err(|_| err("bad vertex count"))?,
                        )
                    }
                    _ => return Err(err("expected `n <count>`")),
                }
                continue;
            }
            match toks.as_slice() {
                [u, v] => edges.push((
                    u.parse().map_err(|_| err("bad vertex id"))?,
                    v.parse().map_err(|_| err("bad vertex id"))?,
                )),
                _ => return Err(err("expected `u v`")),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n <count>` header".into(),
        })?;
        Graph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Parameterized graph families with a canonical marked pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `K_{2,m}`; marked vertices are the two vertices of degree `m`.
    CompleteBipartiteK2m { m: usize },
    /// Circulant `X(Z_{2m}, ±{c, d})` with `c + d = m`; marked `0` and `m`.
    Circulant2m { m: usize, c: usize, d: usize },
    /// Double cone over disjoint cycles `C_{4 m_j}`; marked cone vertices.
    DoubleConeOverCycles { quarter_lengths: Vec<usize> },
    /// `k` copies of `P_n` with left and right endpoints identified.
    GeneralizedPath { k: usize, n: usize },
    /// Double cone over an explicit base graph on `n` vertices.
    DoubleConeOverRegular {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// A family graph with its designated sender and receiver.
#[derive(Clone, Debug)]
pub struct FamilyGraph {
    pub graph: Graph,
    pub a: usize,
    pub b: usize,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidFamily(s));
        match *self {
            FamilySpec::CompleteBipartiteK2m { m: 0 } => bad("K_{2,m} needs m >= 1".into()),
            FamilySpec::Circulant2m { m, c, d } => {
                if c + d != m {
                    bad(format!("circulant needs c + d = m, got {c} + {d} != {m}"))
                } else if c == d {
                    bad("circulant needs c != d".into())
                } else if c == 0 || d == 0 {
                    bad("circulant with c = 0 or d = m has loops or repeated edges".into())
                } else {
                    Ok(())
                }
            }
            FamilySpec::DoubleConeOverCycles {
                ref quarter_lengths,
            } => {
                if quarter_lengths.is_empty() || quarter_lengths.contains(&0) {
                    bad(
                        "double cone needs at least one cycle, each of length 4m with m >= 1"
                            .into(),
                    )
                } else {
                    Ok(())
                }
            }
            FamilySpec::GeneralizedPath { k, n } if k == 0 || n < 3 => bad(format!(
                "GP(k, n) needs k >= 1 and n >= 3, got k={k}, n={n}"
            )),
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<FamilyGraph> {
        self.validate()?;
        match self {
            FamilySpec::CompleteBipartiteK2m { m } => {
                let edges: Vec<_> = (2..m + 2).flat_map(|v| [(0, v), (1, v)]).collect();
                Ok(FamilyGraph {
                    graph: Graph::new(m + 2, &edges)?,
                    a: 0,
                    b: 1,
                })
            }
            &FamilySpec::Circulant2m { m, c, d } => {
                let n = 2 * m;
                let mut edges = Vec::new();
                for u in 0..n {
                    for s in [c, d] {
                        edges.push((u, (u + s) % n));
                    }
                }
                Ok(FamilyGraph {
                    graph: Graph::new(n, &edges)?,
                    a: 0,
                    b: m,
                })
            }
            FamilySpec::DoubleConeOverCycles { quarter_lengths } => {
                let mut edges = Vec::new();
                let mut start = 0;
                for &q in quarter_lengths {
                    let len = 4 * q;
                    for i in 0..len {
                        edges.push((start + i, start + (i + 1) % len));
                    }
                    start += len;
                }
                double_cone(start, &edges)
            }
            &FamilySpec::GeneralizedPath { k, n } => {
                let interior = n - 2;
                let b = k * interior + 1;
                let mut edges = Vec::new();
                for p in 0..k {
                    let first = 1 + p * interior;
                    let mut prev = 0;
                    for j in 0..interior {
                        edges.push((prev, first + j));
                        prev = first + j;
                    }
                    edges.push((prev, b));
                }
                Ok(FamilyGraph {
                    graph: Graph::new(b + 1, &edges)?,
                    a: 0,
                    b,
                })
            }
            FamilySpec::DoubleConeOverRegular { n, edges } => double_cone(*n, edges),
        }
    }
}

/// Double cone over a base given as an edge list (the base may be
/// disconnected). Cone vertices are `0` and `1`; base vertex `v` becomes `v + 2`.
pub fn double_cone(base_n: usize, base_edges: &[(usize, usize)]) -> Result<FamilyGraph> {
    let mut edges: Vec<_> = base_edges.iter().map(|&(u, v)| (u + 2, v + 2)).collect();
    for v in 0..base_n {
        edges.push((0, v + 2));
        edges.push((1, v + 2));
    }
    Ok(FamilyGraph {
        graph: Graph::new(base_n + 2, &edges)?,
        a: 0,
        b: 1,
    })
}
