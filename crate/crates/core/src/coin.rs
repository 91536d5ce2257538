//! Rational reflection coins `C_u = 2P_u - I` and per-vertex assignments.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{dot, orthogonalize, parse_rational, q, QMatrix, Q};

/// Reflection about the column space of an exact rational projection.
///
/// `basis` holds pairwise orthogonal primitive integer vectors spanning
/// `col(P)`, indexed by the neighbor order of the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionCoin {
    projection: QMatrix,
    basis: Vec<Vec<Q>>,
}

impl ReflectionCoin {
    /// `(2/d) J - I`.
    pub fn grover(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidCoin("Grover coin needs degree >= 1".into()));
        }
        Self::reflection_about(d, &[vec![q(1); d]])
    }

    /// Reflection about the span of `vectors` (each of length `d`).
    /// An empty list gives `-I`.
    pub fn reflection_about(d: usize, vectors: &[Vec<Q>]) -> Result<Self> {
        for v in vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.len(),
                });
            }
        }
        let basis = orthogonalize(vectors)?;
        let mut projection = QMatrix::zeros(d, d);
        for b in &basis {
            let nn = dot(b, b);
            for i in 0..d {
                if b[i].is_zero() {
                    continue;
                }
                for j in 0..d {
                    projection[(i, j)] += &b[i] * &b[j] / &nn;
                }
            }
        }
        Ok(ReflectionCoin { projection, basis })
    }

    /// Builds a coin from a projection given explicitly; checks `P^2 = P`
    /// and `P^T = P` exactly.
    pub fn from_projection(p: QMatrix) -> Result<Self> {
        if !p.is_symmetric() || p.mul(&p) != p {
            return Err(Error::InvalidCoin(
                "matrix is not an orthogonal projection".into(),
            ));
        }
        let cols: Vec<Vec<Q>> = (0..p.ncols()).map(|j| p.column(j)).collect();
        let mut basis: Vec<Vec<Q>> = Vec::new();
        for c in cols {
            let r = crate::rational::residual(&c, &basis);
            if r.iter().any(|x| !x.is_zero()) {
                basis.push(crate::rational::primitive_direction(&r));
            }
        }
        Ok(ReflectionCoin {
            projection: p,
            basis,
        })
    }

    pub fn degree(&self) -> usize {
        self.projection.nrows()
    }

    /// `rk(C + I)`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn projection(&self) -> &QMatrix {
        &self.projection
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    /// `2P - I`.
    pub fn matrix(&self) -> QMatrix {
        self.projection
            .scale(&q(2))
            .sub(&QMatrix::identity(self.degree()))
    }

    pub fn fixes(&self, w: &[Q]) -> bool {
        w.len() == self.degree() && self.projection.mul_vec(w) == w
    }

    pub fn is_grover(&self) -> bool {
        let d = self.degree();
        let v = Q::new(1.into(), (d as i64).into());
        (0..d).all(|i| (0..d).all(|j| self.projection[(i, j)] == v))
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        self.matrix().to_f64()
    }
}

/// One reflection coin per vertex, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinAssignment {
    graph: Graph,
    coins: Vec<ReflectionCoin>,
}

impl CoinAssignment {
    pub fn grover(graph: &Graph) -> Self {
        let coins = (0..graph.vertex_count())
            .map(|u| {
                ReflectionCoin::grover(graph.degree(u))
                    .expect("connected graphs have no isolated vertices")
            })
            .collect();
        CoinAssignment {
            graph: graph.clone(),
            coins,
        }
    }

    pub fn new(graph: &Graph, coins: Vec<ReflectionCoin>) -> Result<Self> {
        if coins.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                got: coins.len(),
            });
        }
        for (u, c) in coins.iter().enumerate() {
            if c.degree() != graph.degree(u) {
                return Err(Error::DimensionMismatch {
                    expected: graph.degree(u),
                    got: c.degree(),
                });
            }
        }
        Ok(CoinAssignment {
            graph: graph.clone(),
            coins,
        })
    }

    /// Replaces the coin at `u`.
    pub fn with(mut self, u: usize, coin: ReflectionCoin) -> Result<Self> {
        let n = self.graph.vertex_count();
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        if coin.degree() != self.graph.degree(u) {
            return Err(Error::DimensionMismatch {
                expected: self.graph.degree(u),
                got: coin.degree(),
            });
        }
        self.coins[u] = coin;
        Ok(self)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coin(&self, u: usize) -> &ReflectionCoin {
        &self.coins[u]
    }

    pub fn coins(&self) -> &[ReflectionCoin] {
        &self.coins
    }

    /// Parses coin lines on top of an all-Grover default:
    /// `coin <v> grover` or `coin <v> basis <r> <r*deg(v) rationals>`,
    /// the latter listing `r` vectors over the neighbor order of `v`.
    pub fn parse(graph: &Graph, text: &str) -> Result<Self> {
        let mut asg = CoinAssignment::grover(graph);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 3 || toks[0] != "coin" {
                return Err(err("expected `coin <v> grover|basis ...`".into()));
            }
            let v: usize = toks[1]
                .parse()
                .map_err(|_| err(format!("bad vertex `{}`", toks[1])))?;
            if v >= graph.vertex_count() {
                return Err(err(format!("vertex {v} out of range")));
            }
            let d = graph.degree(v);
            let coin = match toks[2] {
                "grover" if toks.len() == 3 => ReflectionCoin::grover(d)?,
                "basis" => {
                    let r: usize = toks
                        .get(3)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err("missing vector count".into()))?;
                    let entries = &toks[4..];
                    if entries.len() != r * d {
                        return Err(err(format!(
                            "expected {} entries for {r} vectors of length {d}",
                            r * d
                        )));
                    }
                    let vals = entries
                        .iter()
                        .map(|t| {
                            parse_rational(t).ok_or_else(|| err(format!("bad rational `{t}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let vectors: Vec<Vec<Q>> =
                        vals.chunks(d.max(1)).take(r).map(<[Q]>::to_vec).collect();
                    ReflectionCoin::reflection_about(d, &vectors)?
                }
                other => return Err(err(format!("unknown coin kind `{other}`"))),
            };
            asg = asg.with(v, coin)?;
        }
        Ok(asg)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (u, c) in self.coins.iter().enumerate() {
            if c.is_grover() {
                continue;
            }
            let entries: Vec<String> = c
                .basis()
                .iter()
                .flatten()
                .map(crate::rational::fmt_rational)
                .collect();
            s.push_str(&format!(
                "coin {u} basis {} {}\n",
                c.rank(),
                entries.join(" ")
            ));
        }
        s
    }
}

/// Parses a subspace file: one `w <d rationals>` line per spanning vector,
/// entries over the neighbor order of a vertex of degree `d`.
pub fn parse_subspace(text: &str, d: usize) -> Result<Vec<Vec<Q>>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] != "w" {
            return Err(err("expected `w <entries>`".into()));
        }
        if toks.len() - 1 != d {
            return Err(err(format!("expected {d} entries, got {}", toks.len() - 1)));
        }
        let v = toks[1..]
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| err(format!("bad rational `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(Error::EmptySubspace);
    }
    Ok(out)
}

/// Identity on `d` positions.
pub fn identity_map(d: usize) -> Vec<usize> {
    (0..d).collect()
}

/// Checks `C^2 = I` exactly.
pub fn is_involution(c: &ReflectionCoin) -> bool {
    let m = c.matrix();
    m.mul(&m) == QMatrix::identity(c.degree())
}

/// `e_i` of length `d`.
pub fn unit(d: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[i] = Q::one();
    v
}
