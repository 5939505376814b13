//! Finite simple graphs and the operations the edge-ideal constructions need.
//!
//! Vertices are 0-based internally and carry display labels (`v1`, `v2`, ... by default);
//! the text formats are 1-based.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count; vertex sets are `u64` bitmasks.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Vec<String>,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn whisker_label(label: &str) -> String {
    match label.strip_prefix('v') {
        Some(rest) => format!("w{rest}"),
        None => format!("w_{label}"),
    }
}

impl Graph {
    /// Graph on `n` vertices; edges are 0-based pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::with_labels(default_labels(n), edges)
    }

    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v + 1, n });
                }
            }
            if a == b {
                return Err(Error::Parse(format!("loop at vertex {}", a + 1)));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set, labels })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition("a cycle needs at least 3 vertices".into()));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Named graphs: `K<n>`, `P<n>`, `C<n>`, `E<n>` (edgeless).
    pub fn named(name: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown graph name `{name}`"));
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        match kind.to_ascii_uppercase() {
            'K' => Self::complete(n),
            'P' => Self::path(n),
            'C' => Self::cycle(n),
            'E' => Self::empty(n),
            _ => Err(bad()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v + 1, n: self.n })
        }
    }

    /// Neighbourhood bitmasks, one per vertex.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.has_edge(i, j))
            .collect();
        Graph {
            n: self.n,
            edges,
            labels: self.labels.clone(),
        }
    }

    /// A vertex given as a 1-based index or by its label.
    pub fn find_vertex(&self, text: &str) -> Result<usize> {
        if let Ok(i) = text.parse::<usize>() {
            if i == 0 || i > self.n {
                return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
            }
            return Ok(i - 1);
        }
        self.labels
            .iter()
            .position(|l| l == text)
            .ok_or_else(|| Error::UnknownVariable(text.to_string()))
    }

    /// True iff `v` is adjacent to every other vertex.
    pub fn is_star_vertex(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        Ok((0..self.n).all(|u| u == v || self.has_edge(u, v)))
    }

    pub fn star_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.is_star_vertex(v).unwrap_or(false))
            .collect()
    }

    fn whiskered(&self, skip: Option<usize>) -> Result<Graph> {
        let mut labels = self.labels.clone();
        let mut edges: Vec<(usize, usize)> = self.edges.iter().copied().collect();
        for v in (0..self.n).filter(|&v| Some(v) != skip) {
            edges.push((v, labels.len()));
            labels.push(whisker_label(&self.labels[v]));
        }
        Graph::with_labels(labels, edges)
    }

    /// ΣG: a pendant vertex `w_i` attached to every vertex `v_i`; whiskers follow the
    /// original vertices in order.
    pub fn whisker_all(&self) -> Result<Graph> {
        self.whiskered(None)
    }

    /// Whiskers at every vertex except `v`.
    pub fn whisker_except(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        self.whiskered(Some(v))
    }

    /// Subgraph induced on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = (0..vertices.len())
            .flat_map(|i| (i + 1..vertices.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(vertices[i], vertices[j]));
        Graph::with_labels(labels, edges.collect::<Vec<_>>())
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_masks();
        let mut seen = 0u64;
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = adj[v] & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            comps.push(mask_to_vec(comp));
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// All maximal cliques, each sorted, listed in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_masks();
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut out = Vec::new();
        bron_kerbosch(&adj, 0, all, 0, &mut out);
        let mut cliques: Vec<Vec<usize>> = out.into_iter().map(mask_to_vec).collect();
        cliques.sort();
        cliques
    }

    /// Edge-list text: `n <count>` then one 1-based `i j` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "{} {}", a + 1, b + 1);
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let n = header
            .strip_prefix('n')
            .map(str::trim)
            .and_then(|c| c.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad header `{header}`")))?;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad edge line `{line}`")))?;
            let [a, b] = nums[..] else {
                return Err(Error::Parse(format!("bad edge line `{line}`")));
            };
            if a == 0 || b == 0 {
                return Err(Error::VertexOutOfRange { vertex: 0, n });
            }
            edges.push((a - 1, b - 1));
        }
        Graph::new(n, edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            labels: (self.labels != default_labels(self.n)).then(|| self.labels.clone()),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let labels = match &json.labels {
            Some(l) if l.len() != json.n => {
                return Err(Error::Parse("label count differs from n".into()))
            }
            Some(l) => l.clone(),
            None => default_labels(json.n),
        };
        if json.n > MAX_VERTICES {
            return Err(Error::TooManyVertices(json.n));
        }
        let mut edges = Vec::new();
        for &[a, b] in &json.edges {
            if a == 0 || b == 0 {
                return Err(Error::VertexOutOfRange { vertex: 0, n: json.n });
            }
            edges.push((a - 1, b - 1));
        }
        Graph::with_labels(labels, edges)
    }

    /// Parses either the JSON form or the edge-list form.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            let json: GraphJson =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            Graph::from_json(&json)
        } else {
            Graph::from_edge_list(text)
        }
    }
}

/// JSON form of a graph: `{"n": 3, "edges": [[1,2],[2,3]]}` with optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub(crate) fn mask_to_vec(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

// Bron–Kerbosch with Tomita pivoting on bitmasks.
fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = mask_to_vec(p | x)
        .into_iter()
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("p is nonempty");
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Every labelled simple graph on `n` vertices, each exactly once.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > 8 {
        return Err(Error::CorpusTooLarge(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let count = 1u64 << pairs.len();
    Ok((0..count).map(move |code| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(n, edges.collect::<Vec<_>>()).expect("enumerated edges are valid")
    }))
}

/// All labelled graphs on `1..=max_n` vertices, in enumeration order.
pub fn corpus(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_graphs(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::path(3).unwrap()
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).unwrap().complement(), Graph::empty(3).unwrap());
        let c = p3().complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(c.degree(1), 0);
        assert_eq!(Graph::empty(4).unwrap().complement(), Graph::complete(4).unwrap());
    }

    #[test]
    fn star_vertices() {
        let g = p3();
        assert!(g.is_star_vertex(1).unwrap());
        assert!(!g.is_star_vertex(0).unwrap());
        assert!(Graph::empty(1).unwrap().is_star_vertex(0).unwrap());
        assert!(g.is_star_vertex(3).is_err());
    }

    #[test]
    fn whiskering() {
        let s = Graph::complete(2).unwrap().whisker_all().unwrap();
        assert_eq!(s.n(), 4);
        assert_eq!(s.edge_count(), 3);
        assert_eq!(s.labels(), ["v1", "v2", "w1", "w2"]);
        assert_eq!(Graph::complete(3).unwrap().whisker_all().unwrap().edge_count(), 6);
        let k1 = Graph::empty(1).unwrap().whisker_all().unwrap();
        assert_eq!(k1.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn whisker_except_examples() {
        let g = Graph::complete(2).unwrap().whisker_except(1).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(g.labels(), ["v1", "v2", "w1"]);
        let k1 = Graph::empty(1).unwrap();
        assert_eq!(k1.whisker_except(0).unwrap(), k1);
        let g = p3().whisker_except(1).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2), (2, 4)]);
        assert!(p3().whisker_except(7).is_err());
    }

    #[test]
    fn maximal_clique_examples() {
        assert_eq!(p3().complement().maximal_cliques(), vec![vec![0, 2], vec![1]]);
        assert_eq!(Graph::complete(3).unwrap().maximal_cliques(), vec![vec![0, 1, 2]]);
        assert_eq!(
            Graph::empty(3).unwrap().maximal_cliques(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(Graph::empty(0).unwrap().maximal_cliques(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn corpus_sizes() {
        assert_eq!(enumerate_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(2).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        let all: BTreeSet<_> = enumerate_graphs(4)
            .unwrap()
            .map(|g| g.edges().collect::<Vec<_>>())
            .collect();
        assert_eq!(all.len(), 64);
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn text_formats() {
        let g = p3();
        let text = g.to_edge_list();
        assert_eq!(text, "n 3\n1 2\n2 3\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
        let json = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(json, r#"{"n":3,"edges":[[1,2],[2,3]]}"#);
        assert_eq!(Graph::parse(&json).unwrap(), g);
        let s = g.whisker_all().unwrap();
        let back = Graph::parse(&serde_json::to_string(&s.to_json()).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(Graph::parse("n 2\n1 3\n").is_err());
        assert!(Graph::parse("n 2\n1 1\n").is_err());
    }

    #[test]
    fn clique_brute_force_agrees() {
        for g in enumerate_graphs(5).unwrap() {
            let adj = g.adjacency_masks();
            let is_clique = |m: u64| mask_to_vec(m).iter().all(|&v| m & !(1 << v) & !adj[v] == 0);
            let mut brute: Vec<Vec<usize>> = (1u64..1 << 5)
                .filter(|&m| is_clique(m))
                .filter(|&m| (0..5).all(|v| m >> v & 1 == 1 || !is_clique(m | 1 << v)))
                .map(mask_to_vec)
                .collect();
            brute.sort();
            assert_eq!(g.maximal_cliques(), brute, "{:?}", g);
        }
    }
}
