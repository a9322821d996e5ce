use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Vertex count up to which every triple is checked.
pub const EXHAUSTIVE_LIMIT: usize = 2_000;
/// Number of sampled triples above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLED_TRIPLES: usize = 1_000_000;
const SAMPLE_SEED: u64 = 0x6d65_6469_616e;
const SAMPLED_SOURCES: usize = 64;

/// An undirected graph as read from a document, before any checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(names: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        Graph { names, edges }
    }

    /// Graph on `n` vertices named `v0..v{n-1}`.
    pub fn with_vertices(n: usize, edges: &[(usize, usize)]) -> Self {
        Graph {
            names: (0..n).map(|i| format!("v{i}")).collect(),
            edges: edges.to_vec(),
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::with_vertices(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::with_vertices(n, &edges)
    }

    /// Star with `leaves` leaves; vertex 0 is the center.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::with_vertices(leaves + 1, &edges)
    }

    /// 1-skeleton of the `dim`-cube; vertex `i` has coordinates the bits of `i`.
    pub fn hypercube(dim: usize) -> Self {
        let n = 1usize << dim;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..dim {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        let names = (0..n)
            .map(|v| (0..dim).map(|b| if v >> b & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        Graph::new(names, edges)
    }

    /// `rows x cols` grid graph; vertex `(r, c)` has index `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        let names = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| format!("{r},{c}")))
            .collect();
        Graph::new(names, edges)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// How much of the triple space `verify_median` covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { triples: usize },
}

/// A connected graph with a verified median operation, carrying its
/// hyperplanes (Θ-classes) and the halfspace signature of every vertex.
///
/// Bit `c` of a vertex signature tells which halfspace of class `c` the
/// vertex lies in. The median of three vertices is the vertex whose
/// signature is the bitwise majority of theirs.
#[derive(Clone, Debug)]
pub struct MedianGraph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_class: Vec<usize>,
    classes: Vec<Vec<usize>>,
    sigs: Vec<Bits>,
    lookup: HashMap<Bits, usize>,
    coverage: Coverage,
}

impl PartialEq for MedianGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

/// Check that `graph` is a median graph and build its hyperplane structure.
///
/// Θ-classes are found by the cut method: for an unclassified edge `xy` the
/// class is every edge crossing from `{w : d(w,x) < d(w,y)}` to its
/// complement. The graph is then checked to embed isometrically by these
/// cuts and to have a majority vertex for every triple.
pub fn verify_median(graph: &Graph) -> Result<MedianGraph> {
    let (adj, edges) = normalize(graph)?;
    let n = adj.len();
    if !is_connected(&adj) {
        return Err(Error::Disconnected);
    }
    let m = edges.len();
    let mut edge_class = vec![usize::MAX; m];
    let mut sigs = vec![Bits::zeros(); n];
    let mut class_count = 0;
    for e in 0..m {
        if edge_class[e] != usize::MAX {
            continue;
        }
        let (x, y) = edges[e];
        let dx = bfs(&adj, x);
        let dy = bfs(&adj, y);
        if let Some(w) = (0..n).find(|&w| dx[w] == dy[w]) {
            return Err(not_median(
                (w, x, y),
                "has no median: the graph is not bipartite",
            ));
        }
        let near_y: Vec<bool> = (0..n).map(|w| dy[w] < dx[w]).collect();
        let c = class_count;
        class_count += 1;
        for (f, &(u, v)) in edges.iter().enumerate() {
            if near_y[u] != near_y[v] {
                if edge_class[f] != usize::MAX {
                    return Err(brute_force_witness(&adj).unwrap_or_else(|| {
                        not_median((x, y, u), "lies on overlapping cuts")
                    }));
                }
                edge_class[f] = c;
            }
        }
        let flip = near_y[0];
        for w in 0..n {
            if near_y[w] != flip {
                sigs[w].set(c, true);
            }
        }
    }
    let mg = MedianGraph::from_raw(graph.names.clone(), adj, edges, edge_class, class_count, sigs);
    mg.check_structure()
}

fn not_median(triple: (usize, usize, usize), reason: &str) -> Error {
    let mut t = [triple.0, triple.1, triple.2];
    t.sort_unstable();
    Error::NotMedian {
        triple: (t[0], t[1], t[2]),
        reason: reason.to_string(),
    }
}

impl MedianGraph {
    /// Build from vertex signatures that are already known (e.g. orientations
    /// of a wallspace), then run the same structural checks as
    /// [`verify_median`]. Every edge must flip exactly one signature bit.
    pub fn from_signatures(
        names: Vec<String>,
        edges: Vec<(usize, usize)>,
        sigs: Vec<Bits>,
        class_count: usize,
    ) -> Result<MedianGraph> {
        let graph = Graph::new(names.clone(), edges);
        let (adj, edges) = normalize(&graph)?;
        if !is_connected(&adj) {
            return Err(Error::Disconnected);
        }
        if sigs.len() != adj.len() {
            return Err(Error::InvalidGraph("signature count mismatch".into()));
        }
        let mut edge_class = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            let diff = sigs[u].xor(&sigs[v]);
            let mut ones = diff.ones();
            match (ones.next(), ones.next()) {
                (Some(c), None) if c < class_count => edge_class.push(c),
                _ => {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({u}, {v}) does not flip exactly one hyperplane"
                    )))
                }
            }
        }
        let mg = MedianGraph::from_raw(names, adj, edges, edge_class, class_count, sigs);
        if mg.classes.iter().any(Vec::is_empty) {
            return Err(Error::InvalidGraph("hyperplane without edges".into()));
        }
        mg.check_structure()
    }

    fn from_raw(
        names: Vec<String>,
        adj: Vec<Vec<usize>>,
        edges: Vec<(usize, usize)>,
        edge_class: Vec<usize>,
        class_count: usize,
        sigs: Vec<Bits>,
    ) -> MedianGraph {
        let mut classes = vec![Vec::new(); class_count];
        for (e, &c) in edge_class.iter().enumerate() {
            classes[c].push(e);
        }
        let lookup = sigs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        MedianGraph {
            names,
            adj,
            edges,
            edge_class,
            classes,
            sigs,
            lookup,
            coverage: Coverage::Exhaustive,
        }
    }

    fn check_structure(mut self) -> Result<MedianGraph> {
        let n = self.len();
        if self.lookup.len() != n {
            return Err(brute_force_witness(&self.adj).unwrap_or_else(|| {
                Error::InvalidGraph("two vertices share a signature".into())
            }));
        }
        // Isometric embedding: graph distance equals Hamming distance.
        let sources: Vec<usize> = if n <= EXHAUSTIVE_LIMIT {
            (0..n).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            (0..SAMPLED_SOURCES).map(|_| rng.gen_range(0..n)).collect()
        };
        let bad = sources.par_iter().find_map_first(|&s| {
            let d = bfs(&self.adj, s);
            (0..n).find(|&t| d[t] != self.sigs[s].distance(&self.sigs[t]))
        });
        if bad.is_some() {
            return Err(brute_force_witness(&self.adj).unwrap_or_else(|| {
                Error::InvalidGraph("hyperplane cuts do not realize distances".into())
            }));
        }
        // Every triple has a majority vertex.
        let missing = |x: usize, y: usize, z: usize| {
            let maj = Bits::majority(&self.sigs[x], &self.sigs[y], &self.sigs[z]);
            !self.lookup.contains_key(&maj)
        };
        let witness = if n <= EXHAUSTIVE_LIMIT {
            self.coverage = Coverage::Exhaustive;
            (0..n).into_par_iter().find_map_first(|x| {
                for y in x + 1..n {
                    for z in y + 1..n {
                        if missing(x, y, z) {
                            return Some((x, y, z));
                        }
                    }
                }
                None
            })
        } else {
            self.coverage = Coverage::Sampled {
                triples: SAMPLED_TRIPLES,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let triples: Vec<(usize, usize, usize)> = (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            triples
                .par_iter()
                .find_map_first(|&(x, y, z)| missing(x, y, z).then_some((x, y, z)))
        };
        if let Some(t) = witness {
            return Err(not_median(t, "has no vertex in the intersection of its three intervals"));
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn coverage(&self) -> Coverage {
        self.coverage
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_class(&self, e: usize) -> usize {
        self.edge_class[e]
    }

    /// Edge indices of hyperplane `c`.
    pub fn class_edges(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn signature(&self, v: usize) -> &Bits {
        &self.sigs[v]
    }

    pub fn vertex_with_signature(&self, sig: &Bits) -> Option<usize> {
        self.lookup.get(sig).copied()
    }

    /// Which halfspace of class `c` contains `v`.
    pub fn side(&self, v: usize, c: usize) -> bool {
        self.sigs[v].get(c)
    }

    /// The vertices of halfspace `side` of class `c`, sorted.
    pub fn halfspace(&self, c: usize, side: bool) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.side(v, c) == side).collect()
    }

    /// Number of hyperplanes separating `x` and `y`; equals graph distance.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.sigs[x].distance(&self.sigs[y])
    }

    pub fn separating_classes(&self, x: usize, y: usize) -> Vec<usize> {
        self.sigs[x].xor(&self.sigs[y]).ones().collect()
    }

    /// Majority-vote median.
    pub fn median(&self, x: usize, y: usize, z: usize) -> usize {
        let maj = Bits::majority(&self.sigs[x], &self.sigs[y], &self.sigs[z]);
        self.lookup[&maj]
    }

    /// Vertices on some geodesic from `x` to `y`, sorted.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.median(x, y, z) == z).collect()
    }

    pub fn is_convex(&self, set: &[usize]) -> bool {
        let members: HashSet<usize> = set.iter().copied().collect();
        set.iter().enumerate().all(|(i, &x)| {
            set[i + 1..].iter().all(|&y| {
                (0..self.len()).all(|z| members.contains(&self.median(x, y, z)))
            })
        })
    }

    pub fn diameter(&self) -> usize {
        (0..self.len())
            .flat_map(|x| (x + 1..self.len()).map(move |y| (x, y)))
            .map(|(x, y)| self.distance(x, y))
            .max()
            .unwrap_or(0)
    }

    /// A geodesic from `x` to `y`, breaking ties by lowest vertex index.
    pub fn geodesic(&self, x: usize, y: usize) -> Vec<usize> {
        let mut path = vec![x];
        let mut cur = x;
        while cur != y {
            let d = self.distance(cur, y);
            cur = self.adj[cur]
                .iter()
                .copied()
                .find(|&w| self.distance(w, y) < d)
                .expect("median graphs are geodesic");
            path.push(cur);
        }
        path
    }

    /// True iff `map` (image of each vertex) is a graph automorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        self.check_automorphism(map).is_ok()
    }

    pub fn check_automorphism(&self, map: &[usize]) -> Result<()> {
        let n = self.len();
        if map.len() != n {
            return Err(Error::NotAutomorphism(format!(
                "map has {} entries for {n} vertices",
                map.len()
            )));
        }
        let mut seen = vec![false; n];
        for &w in map {
            if w >= n || std::mem::replace(&mut seen[w], true) {
                return Err(Error::NotAutomorphism("not a bijection".into()));
            }
        }
        for &(u, v) in &self.edges {
            if !self.are_adjacent(map[u], map[v]) {
                return Err(Error::NotAutomorphism(format!(
                    "edge ({}, {}) is not mapped to an edge",
                    self.names[u], self.names[v]
                )));
            }
        }
        Ok(())
    }

    /// Image of hyperplane `c` under an automorphism.
    pub fn class_image(&self, map: &[usize], c: usize) -> usize {
        let (u, v) = self.edges[self.classes[c][0]];
        let e = self
            .edge_index(map[u], map[v])
            .expect("automorphisms map edges to edges");
        self.edge_class[e]
    }

    /// Hyperplanes mapped to themselves with their halfspaces exchanged.
    pub fn swapped_classes(&self, map: &[usize]) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&c| {
                self.class_image(map, c) == c && {
                    let (u, _) = self.edges[self.classes[c][0]];
                    self.side(u, c) != self.side(map[u], c)
                }
            })
            .collect()
    }

    /// Hyperplanes `c`, `d` cross iff all four quarter-spaces are nonempty.
    pub fn classes_cross(&self, c: usize, d: usize) -> bool {
        let mut seen = [false; 4];
        for s in &self.sigs {
            seen[(s.get(c) as usize) << 1 | s.get(d) as usize] = true;
        }
        seen.iter().all(|&b| b)
    }

    /// Cartesian product; vertex `(a, b)` has index `a * other.len() + b`.
    pub fn cartesian_product(&self, other: &MedianGraph) -> MedianGraph {
        let (n1, n2) = (self.len(), other.len());
        let shift = self.num_classes();
        let mut names = Vec::with_capacity(n1 * n2);
        let mut sigs = Vec::with_capacity(n1 * n2);
        for a in 0..n1 {
            for b in 0..n2 {
                names.push(format!("({},{})", self.names[a], other.names[b]));
                let mut s = self.sigs[a].clone();
                for c in other.sigs[b].ones() {
                    s.set(shift + c, true);
                }
                sigs.push(s);
            }
        }
        let mut edges = Vec::new();
        for a in 0..n1 {
            for &(u, v) in &other.edges {
                edges.push((a * n2 + u, a * n2 + v));
            }
        }
        for &(u, v) in &self.edges {
            for b in 0..n2 {
                edges.push((u * n2 + b, v * n2 + b));
            }
        }
        MedianGraph::from_signatures(names, edges, sigs, shift + other.num_classes())
            .expect("products of median graphs are median")
    }

    /// The underlying plain graph.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.names.clone(), self.edges.clone())
    }
}

fn normalize(graph: &Graph) -> Result<(Vec<Vec<usize>>, Vec<(usize, usize)>)> {
    let n = graph.len();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let mut names = HashSet::new();
    for name in &graph.names {
        if !names.insert(name) {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    let mut edges = Vec::with_capacity(graph.edges.len());
    for &(u, v) in &graph.edges {
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange(u.max(v)));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at `{}`", graph.names[u])));
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InvalidGraph(format!(
            "repeated edge ({}, {})",
            graph.names[w[0].0], graph.names[w[0].1]
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    Ok((adj, edges))
}

pub(crate) fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn is_connected(adj: &[Vec<usize>]) -> bool {
    bfs(adj, 0).iter().all(|&d| d != usize::MAX)
}

/// Search for a triple whose three intervals do not meet in exactly one
/// vertex, using graph distances only.
fn brute_force_witness(adj: &[Vec<usize>]) -> Option<Error> {
    let n = adj.len();
    if n > EXHAUSTIVE_LIMIT {
        return None;
    }
    let dist: Vec<Vec<usize>> = (0..n).map(|s| bfs(adj, s)).collect();
    let on = |a: usize, b: usize, w: usize| dist[a][w] + dist[w][b] == dist[a][b];
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let count = (0..n)
                    .filter(|&w| on(x, y, w) && on(y, z, w) && on(x, z, w))
                    .take(2)
                    .count();
                if count != 1 {
                    let reason = if count == 0 {
                        "has no vertex in the intersection of its three intervals"
                    } else {
                        "has more than one median"
                    };
                    return Some(not_median((x, y, z), reason));
                }
            }
        }
    }
    None
}
