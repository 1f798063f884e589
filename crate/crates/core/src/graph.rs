//! Interaction network representation and the structural routines the
//! control models are built on: neighborhoods, source nodes, strongly
//! connected components and maximum bipartite matching.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

const UNVISITED: usize = usize::MAX;

/// An immutable gene interaction network.
///
/// Nodes are dense indices `0..num_nodes()`; the original identifiers are
/// kept in a name table in first-appearance order. Self-loops are dropped
/// and duplicate edges merged at construction. Undirected edges are stored
/// once in canonical `(low, high)` order.
#[derive(Debug, Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    directed: bool,
    edges: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph over `num_nodes` nodes named by their index.
    pub fn from_edges<I>(num_nodes: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let names = (0..num_nodes).map(|i| i.to_string()).collect();
        Self::with_names(names, directed, edges)
    }

    pub fn with_names<I>(names: Vec<String>, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Usage(format!("duplicate node name '{name}'")));
            }
        }

        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for (u, v) in edges {
            for idx in [u, v] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, len: n });
                }
            }
            if u == v {
                continue;
            }
            let e = if directed {
                (u, v)
            } else {
                (u.min(v), u.max(v))
            };
            if seen.insert(e) {
                kept.push(e);
            }
        }

        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = if directed {
            vec![Vec::new(); n]
        } else {
            Vec::new()
        };
        for &(u, v) in &kept {
            out_adj[u].push(v);
            if directed {
                in_adj[v].push(u);
            } else {
                out_adj[v].push(u);
            }
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
        }

        Ok(Self {
            names,
            index,
            directed,
            edges: kept,
            out_adj,
            in_adj,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.num_nodes() {
            Err(Error::IndexOutOfRange {
                index: v,
                len: self.num_nodes(),
            })
        } else {
            Ok(())
        }
    }

    /// Neighbors of `v` in an undirected graph. Never contains `v`.
    pub fn neighborhood(&self, v: usize) -> Result<&[usize]> {
        if self.directed {
            return Err(Error::Usage(
                "neighborhood is defined for undirected graphs; use out_neighbors/in_neighbors"
                    .into(),
            ));
        }
        self.check(v)?;
        Ok(&self.out_adj[v])
    }

    /// Successors of `v`; for undirected graphs, its neighbors.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Predecessors of `v`; for undirected graphs, its neighbors.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        if self.directed {
            &self.in_adj[v]
        } else {
            &self.out_adj[v]
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).len()
    }

    /// Nodes with in-degree zero.
    pub fn source_nodes(&self) -> Result<Vec<usize>> {
        if !self.directed {
            return Err(Error::Usage("source nodes require a directed graph".into()));
        }
        Ok((0..self.num_nodes())
            .filter(|&v| self.in_adj[v].is_empty())
            .collect())
    }

    /// Strongly connected components of the graph with the `removed` nodes
    /// deleted. `removed` may be empty (nothing removed) or have one flag per
    /// node.
    pub fn strongly_connected_components(&self, removed: &[bool]) -> Result<Vec<Vec<usize>>> {
        if !self.directed {
            return Err(Error::Usage("SCCs require a directed graph".into()));
        }
        let mask = self.removal_mask(removed)?;
        let mut comps = Vec::new();
        tarjan(self, &mask, |c| comps.push(c.to_vec()));
        Ok(comps)
    }

    /// Number of non-removed nodes lying in an SCC with at least two members,
    /// i.e. nodes that still sit on some directed cycle.
    pub fn cyclic_node_count(&self, removed: &[bool]) -> Result<usize> {
        if !self.directed {
            return Err(Error::Usage("SCCs require a directed graph".into()));
        }
        let mask = self.removal_mask(removed)?;
        let mut count = 0;
        tarjan(self, &mask, |c| {
            if c.len() >= 2 {
                count += c.len();
            }
        });
        Ok(count)
    }

    fn removal_mask<'a>(&self, removed: &'a [bool]) -> Result<std::borrow::Cow<'a, [bool]>> {
        if removed.is_empty() {
            Ok(std::borrow::Cow::Owned(vec![false; self.num_nodes()]))
        } else if removed.len() != self.num_nodes() {
            Err(Error::DimensionMismatch {
                expected: self.num_nodes(),
                actual: removed.len(),
            })
        } else {
            Ok(std::borrow::Cow::Borrowed(removed))
        }
    }

    /// Maximum matching on the node-splitting bipartite representation
    /// (out-copy of `u` joined to in-copy of `v` for every edge `u -> v`).
    /// Undirected edges are treated as a pair of opposite arcs.
    pub fn maximum_bipartite_matching(&self) -> Matching {
        hopcroft_karp(self)
    }

    /// Node/edge incidence view: left side the nodes, right side the edges.
    pub fn bipartite_view(&self) -> BipartiteView {
        BipartiteView {
            left_size: self.num_nodes(),
            incidences: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// Serializes to the tab-separated edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&self.names[u]);
            out.push('\t');
            out.push_str(&self.names[v]);
            out.push('\n');
        }
        out
    }

    /// One node name per line, in index order.
    pub fn to_node_list(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(name);
            out.push('\n');
        }
        out
    }
}

/// Edge-list ingestion: two identifiers per line, `#` comments, blank lines
/// skipped. Identifiers get indices in order of first appearance.
pub fn parse_edge_list(text: &str, directed: bool) -> Result<Graph> {
    parse_edge_list_with_nodes(None, text, directed)
}

/// Like [`parse_edge_list`], but first registers every identifier of an
/// optional node list (one per line) so isolated nodes keep an index.
pub fn parse_edge_list_with_nodes(
    nodes: Option<&str>,
    text: &str,
    directed: bool,
) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(name) {
            return i;
        }
        let i = names.len();
        names.push(name.to_string());
        index.insert(name.to_string(), i);
        i
    };

    if let Some(nodes) = nodes {
        for (lineno, line) in nodes.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let name = tokens.next().unwrap_or_default();
            if tokens.next().is_some() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: "node list lines hold exactly one identifier".into(),
                });
            }
            intern(name, &mut names);
        }
    }

    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected 2 node identifiers, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0], &mut names);
        let v = intern(tokens[1], &mut names);
        edges.push((u, v));
    }

    Graph::with_names(names, directed, edges)
}

/// Result of [`Graph::maximum_bipartite_matching`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Matched `(out-copy, in-copy)` pairs, sorted by in-copy.
    pub pairs: Vec<(usize, usize)>,
    /// In-copies left unmatched; these are the matching-based driver nodes.
    pub unmatched: Vec<usize>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

/// Bipartite view of an undirected graph: nodes on the left, one right node
/// per edge incident to its two endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteView {
    pub left_size: usize,
    pub incidences: Vec<[usize; 2]>,
}

impl BipartiteView {
    pub fn right_size(&self) -> usize {
        self.incidences.len()
    }
}

/// Iterative Tarjan over the residual graph. `emit` receives each component
/// as a slice of node indices.
fn tarjan<F: FnMut(&[usize])>(g: &Graph, removed: &[bool], mut emit: F) {
    let n = g.num_nodes();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0usize;

    for root in 0..n {
        if removed[root] || index[root] != UNVISITED {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        calls.push((root, 0));

        while let Some(frame) = calls.last_mut() {
            let v = frame.0;
            let adj = &g.out_adj[v];
            if frame.1 < adj.len() {
                let w = adj[frame.1];
                frame.1 += 1;
                if removed[w] {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                calls.pop();
                if let Some(&(u, _)) = calls.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut k = stack.len();
                    loop {
                        k -= 1;
                        on_stack[stack[k]] = false;
                        if stack[k] == v {
                            break;
                        }
                    }
                    emit(&stack[k..]);
                    stack.truncate(k);
                }
            }
        }
    }
}

fn hopcroft_karp(g: &Graph) -> Matching {
    let n = g.num_nodes();
    let mut match_left = vec![UNVISITED; n];
    let mut match_right = vec![UNVISITED; n];
    let mut dist = vec![UNVISITED; n];

    loop {
        // BFS layering from free left vertices.
        let mut queue = std::collections::VecDeque::new();
        for u in 0..n {
            if match_left[u] == UNVISITED {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = UNVISITED;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in g.out_neighbors(u) {
                let w = match_right[v];
                if w == UNVISITED {
                    found = true;
                } else if dist[w] == UNVISITED {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..n {
            if match_left[u] == UNVISITED {
                augment(g, u, &mut match_left, &mut match_right, &mut dist);
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&v| match_right[v] != UNVISITED)
        .map(|v| (match_right[v], v))
        .collect();
    pairs.sort_unstable_by_key(|&(_, v)| v);
    let unmatched = (0..n).filter(|&v| match_right[v] == UNVISITED).collect();
    Matching { pairs, unmatched }
}

fn augment(
    g: &Graph,
    u: usize,
    match_left: &mut [usize],
    match_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in g.out_neighbors(u) {
        let w = match_right[v];
        let ok = if w == UNVISITED {
            true
        } else if dist[w] == dist[u] + 1 {
            augment(g, w, match_left, match_right, dist)
        } else {
            false
        };
        if ok {
            match_left[u] = v;
            match_right[v] = u;
            return true;
        }
    }
    dist[u] = UNVISITED;
    false
}
