//! Independent ground truth for the closed-form distance: breadth-first
//! search over the genome space under all DCJ moves, and the classical
//! adjacency-graph formula `n - (c + p/2)`. Also the set-level DCJ on
//! adjacency/telomere partitions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::dcj::{self, apply_dcj};
use crate::exec::Execution;
use crate::genome::Genome;

/// Default cap on `n` for breadth-first search.
pub const BFS_REGION_LIMIT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("genomes have different sizes: {0} vs {1} regions")]
    SizeMismatch(usize, usize),
    #[error("{n} regions exceeds the search limit {limit}; pass allow_large to override")]
    TooLarge { n: usize, limit: usize },
    #[error("point {point} lies outside 1..={degree}")]
    Range { point: usize, degree: usize },
    #[error("a DCJ needs two distinct points, got {0} twice")]
    SamePoint(usize),
    #[error("parts do not partition 1..={0}")]
    NotPartition(usize),
}

fn check_sizes(g1: &Genome, g2: &Genome) -> Result<(), OracleError> {
    if g1.n() != g2.n() {
        return Err(OracleError::SizeMismatch(g1.n(), g2.n()));
    }
    Ok(())
}

fn guard(n: usize, allow_large: bool) -> Result<(), OracleError> {
    if n > BFS_REGION_LIMIT && !allow_large {
        return Err(OracleError::TooLarge {
            n,
            limit: BFS_REGION_LIMIT,
        });
    }
    Ok(())
}

fn neighbors(g: &Genome) -> Vec<Genome> {
    let degree = g.degree();
    let mut out = Vec::with_capacity(degree * degree.saturating_sub(1) / 2);
    for i in 1..=degree {
        for j in (i + 1)..=degree {
            out.push(apply_dcj(g, i, j).expect("points in range").0);
        }
    }
    out
}

// Level-synchronous BFS; stops after the level containing `stop`.
fn bfs(source: &Genome, stop: Option<&Genome>, exec: Execution) -> HashMap<Genome, usize> {
    let mut dist = HashMap::from([(source.clone(), 0)]);
    let mut frontier = vec![source.clone()];
    let mut level = 0;
    while !frontier.is_empty() {
        if stop.is_some_and(|t| dist.contains_key(t)) {
            break;
        }
        level += 1;
        let candidates = exec.flat_map(&frontier, neighbors);
        let mut next = Vec::new();
        for g in candidates {
            if !dist.contains_key(&g) {
                dist.insert(g.clone(), level);
                next.push(g);
            }
        }
        frontier = next;
    }
    dist
}

/// Shortest number of DCJ moves from `g1` to `g2`.
pub fn bfs_distance(g1: &Genome, g2: &Genome, allow_large: bool) -> Result<usize, OracleError> {
    bfs_distance_with(g1, g2, allow_large, Execution::Sequential)
}

pub fn bfs_distance_with(
    g1: &Genome,
    g2: &Genome,
    allow_large: bool,
    exec: Execution,
) -> Result<usize, OracleError> {
    check_sizes(g1, g2)?;
    guard(g1.n(), allow_large)?;
    let dist = bfs(g1, Some(g2), exec);
    Ok(dist[g2])
}

/// Distances from `source` to every genome on the same number of regions.
pub fn bfs_distance_map(
    source: &Genome,
    allow_large: bool,
) -> Result<HashMap<Genome, usize>, OracleError> {
    bfs_distance_map_with(source, allow_large, Execution::Sequential)
}

pub fn bfs_distance_map_with(
    source: &Genome,
    allow_large: bool,
    exec: Execution,
) -> Result<HashMap<Genome, usize>, OracleError> {
    guard(source.n(), allow_large)?;
    Ok(bfs(source, None, exec))
}

/// Breadth-first distances from one genome per cycle type, reused for any
/// pair by relabelling.
///
/// Relabelling every point by a permutation `s` maps `D_ij(g)` to
/// `D_s(i)s(j)(s·g·s⁻¹)`, so `d(g1, g2) = d(r, s·g2·s⁻¹)` whenever
/// `s·g1·s⁻¹ = r`. The representative with `a` adjacencies is
/// `(1,2)(3,4)...(2a-1,2a)`.
#[derive(Debug, Clone)]
pub struct BfsTable {
    n: usize,
    maps: Vec<HashMap<Genome, usize>>,
}

impl BfsTable {
    pub fn new(n: usize, allow_large: bool, exec: Execution) -> Result<Self, OracleError> {
        guard(n, allow_large)?;
        let maps = (0..=n)
            .map(|a| bfs(&representative(n, a), None, exec))
            .collect();
        Ok(BfsTable { n, maps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, g1: &Genome, g2: &Genome) -> Result<usize, OracleError> {
        check_sizes(g1, g2)?;
        if g1.n() != self.n {
            return Err(OracleError::SizeMismatch(g1.n(), self.n));
        }
        let degree = g1.degree();
        // s sends g1's k-th adjacency to (2k+1, 2k+2) and its telomeres
        // to the remaining points in order
        let mut s = vec![0; degree];
        let mut next = 1;
        for (x, y) in g1.adjacencies() {
            s[x - 1] = next;
            s[y - 1] = next + 1;
            next += 2;
        }
        for t in g1.telomeres() {
            s[t - 1] = next;
            next += 1;
        }
        let mut images = vec![0; degree];
        for x in 1..=degree {
            images[s[x - 1] - 1] = s[g2.partner(x) - 1];
        }
        let relabelled = Genome::from_images_unchecked(images);
        Ok(self.maps[g1.adjacencies().len()][&relabelled])
    }
}

fn representative(n: usize, adjacencies: usize) -> Genome {
    let images = (1..=2 * n)
        .map(|x| match x {
            _ if x > 2 * adjacencies => x,
            _ if x % 2 == 1 => x + 1,
            _ => x - 1,
        })
        .collect();
    Genome::from_images_unchecked(images)
}

/// An adjacency or telomere, as a set of one or two extremity labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Telomere(usize),
    /// Stored with the smaller label first.
    Adjacency(usize, usize),
}

impl Vertex {
    pub fn adjacency(a: usize, b: usize) -> Self {
        Vertex::Adjacency(a.min(b), a.max(b))
    }

    pub fn labels(self) -> Vec<usize> {
        match self {
            Vertex::Telomere(a) => vec![a],
            Vertex::Adjacency(a, b) => vec![a, b],
        }
    }

    pub fn contains(self, x: usize) -> bool {
        match self {
            Vertex::Telomere(a) => a == x,
            Vertex::Adjacency(a, b) => a == x || b == x,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Telomere(a) => write!(f, "{{{a}}}"),
            Vertex::Adjacency(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

/// A genome as a partition of `1..=2n` into adjacencies and telomeres.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    degree: usize,
    parts: BTreeSet<Vertex>,
}

impl VertexSet {
    pub fn new(
        degree: usize,
        parts: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, OracleError> {
        let parts: BTreeSet<Vertex> = parts.into_iter().collect();
        let mut seen = vec![false; degree];
        for v in &parts {
            for x in v.labels() {
                if x == 0 || x > degree || std::mem::replace(&mut seen[x - 1], true) {
                    return Err(OracleError::NotPartition(degree));
                }
            }
        }
        if degree % 2 == 1 || seen.contains(&false) {
            return Err(OracleError::NotPartition(degree));
        }
        Ok(VertexSet { degree, parts })
    }

    pub fn from_genome(g: &Genome) -> Self {
        let parts = (1..=g.degree())
            .filter_map(|x| {
                let y = g.partner(x);
                match x.cmp(&y) {
                    std::cmp::Ordering::Equal => Some(Vertex::Telomere(x)),
                    std::cmp::Ordering::Less => Some(Vertex::Adjacency(x, y)),
                    std::cmp::Ordering::Greater => None,
                }
            })
            .collect();
        VertexSet {
            degree: g.degree(),
            parts,
        }
    }

    /// The genomic permutation: each adjacency becomes a 2-cycle.
    pub fn to_genome(&self) -> Genome {
        let mut images: Vec<usize> = (1..=self.degree).collect();
        for v in &self.parts {
            if let Vertex::Adjacency(a, b) = *v {
                images[a - 1] = b;
                images[b - 1] = a;
            }
        }
        Genome::from_images_unchecked(images)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &BTreeSet<Vertex> {
        &self.parts
    }

    fn part_of(&self, x: usize) -> Vertex {
        *self
            .parts
            .iter()
            .find(|v| v.contains(x))
            .expect("parts cover 1..=degree")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// The DCJ acting on the sets containing `i` and `j`:
/// `{i},{j} -> {i,j}`, `{i,j} -> {i},{j}`, `{i,k},{j,l} -> {i,l},{j,k}`,
/// `{i,k},{j} -> {j,k},{i}`.
pub fn graph_dcj_apply(v: &VertexSet, i: usize, j: usize) -> Result<VertexSet, OracleError> {
    for point in [i, j] {
        if point == 0 || point > v.degree {
            return Err(OracleError::Range {
                point,
                degree: v.degree,
            });
        }
    }
    if i == j {
        return Err(OracleError::SamePoint(i));
    }
    let (pi, pj) = (v.part_of(i), v.part_of(j));
    let other = |p: Vertex, x: usize| match p {
        Vertex::Adjacency(a, b) if a == x => Some(b),
        Vertex::Adjacency(a, _) => Some(a),
        Vertex::Telomere(_) => None,
    };
    let mut parts = v.parts.clone();
    parts.remove(&pi);
    parts.remove(&pj);
    if pi == pj {
        parts.insert(Vertex::Telomere(i));
        parts.insert(Vertex::Telomere(j));
    } else {
        match (other(pi, i), other(pj, j)) {
            (None, None) => {
                parts.insert(Vertex::adjacency(i, j));
            }
            (Some(k), Some(l)) => {
                parts.insert(Vertex::adjacency(i, l));
                parts.insert(Vertex::adjacency(j, k));
            }
            (Some(k), None) => {
                parts.insert(Vertex::adjacency(j, k));
                parts.insert(Vertex::Telomere(i));
            }
            (None, Some(l)) => {
                parts.insert(Vertex::adjacency(i, l));
                parts.insert(Vertex::Telomere(j));
            }
        }
    }
    Ok(VertexSet {
        degree: v.degree,
        parts,
    })
}

/// Bipartite multigraph between the vertices of two genomes, with one edge
/// per shared extremity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub n: usize,
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
    /// `(extremity, left index, right index)`, one per extremity.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdjacencyGraphStats {
    pub cycles: usize,
    pub odd_paths: usize,
    pub even_paths: usize,
}

impl AdjacencyGraphStats {
    pub fn distance(&self, n: usize) -> usize {
        n - (self.cycles + self.odd_paths / 2)
    }
}

pub fn adjacency_graph(g1: &Genome, g2: &Genome) -> Result<AdjacencyGraph, OracleError> {
    check_sizes(g1, g2)?;
    let side = |g: &Genome| {
        let parts: Vec<Vertex> = VertexSet::from_genome(g).parts.into_iter().collect();
        let mut index = vec![0; g.degree()];
        for (k, v) in parts.iter().enumerate() {
            for x in v.labels() {
                index[x - 1] = k;
            }
        }
        (parts, index)
    };
    let (left, li) = side(g1);
    let (right, ri) = side(g2);
    let edges = (1..=g1.degree())
        .map(|x| (x, li[x - 1], ri[x - 1]))
        .collect();
    Ok(AdjacencyGraph {
        n: g1.n(),
        left,
        right,
        edges,
    })
}

impl AdjacencyGraph {
    /// True when every vertex has as many incident edges as extremities.
    pub fn degrees_match(&self) -> bool {
        let mut dl = vec![0; self.left.len()];
        let mut dr = vec![0; self.right.len()];
        for &(_, l, r) in &self.edges {
            dl[l] += 1;
            dr[r] += 1;
        }
        self.left
            .iter()
            .zip(&dl)
            .all(|(v, &d)| v.labels().len() == d)
            && self
                .right
                .iter()
                .zip(&dr)
                .all(|(v, &d)| v.labels().len() == d)
    }

    /// Decomposes into cycles and paths; a path's length is its edge count.
    pub fn stats(&self) -> AdjacencyGraphStats {
        let nl = self.left.len();
        let total = nl + self.right.len();
        let mut adj = vec![Vec::new(); total];
        for (k, &(_, l, r)) in self.edges.iter().enumerate() {
            adj[l].push(k);
            adj[nl + r].push(k);
        }
        let mut seen = vec![false; total];
        let mut stats = AdjacencyGraphStats::default();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let (mut vertices, mut degree_sum) = (0, 0);
            while let Some(u) = stack.pop() {
                vertices += 1;
                degree_sum += adj[u].len();
                for &k in &adj[u] {
                    let (_, l, r) = self.edges[k];
                    for w in [l, nl + r] {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            let edges = degree_sum / 2;
            if edges == vertices {
                stats.cycles += 1;
            } else if edges % 2 == 1 {
                stats.odd_paths += 1;
            } else {
                stats.even_paths += 1;
            }
        }
        stats
    }
}

impl fmt::Display for AdjacencyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(x, l, r) in &self.edges {
            writeln!(f, "{x}: {} -- {}", self.left[l], self.right[r])?;
        }
        Ok(())
    }
}

/// `n - (c + p/2)` from the adjacency graph.
pub fn adjacency_distance(g1: &Genome, g2: &Genome) -> Result<usize, OracleError> {
    let ag = adjacency_graph(g1, g2)?;
    Ok(ag.stats().distance(ag.n))
}

/// Indices of pairs on which the closed form and the adjacency-graph
/// distance disagree.
pub fn agreement_sweep(pairs: &[(Genome, Genome)], exec: Execution) -> Vec<usize> {
    let indexed: Vec<(usize, &(Genome, Genome))> = pairs.iter().enumerate().collect();
    exec.filter_map(&indexed, |&(k, (a, b))| {
        let closed = dcj::dcj_distance(a, b);
        let ag = adjacency_distance(a, b);
        match (closed, ag) {
            (Ok(x), Ok(y)) if x == y => None,
            _ => Some(k),
        }
    })
}
