//! Orbits, orbital and Schreier graphs, and enriched orbital graphs.
//!
//! An [`EnrichedGraph`] forgets the words at its nodes and keeps, on every
//! edge, the section of the generator after reading the source word. That is
//! all the information needed to extend the graph by one more input letter,
//! so enriched graphs serve as configurations of the expandability search.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::action::{Machine, Word};
use crate::automaton::{SignedState, StateId};
use crate::error::Result;

/// `Q* ∘ u`, computed by breadth-first closure under single states.
pub fn compute_orbit(m: &Machine, u: &[crate::Letter]) -> BTreeSet<Word> {
    let gens: Vec<SignedState> = m.states().collect();
    bfs_words(m, u, &gens).0.into_iter().collect()
}

/// Breadth-first closure of `u` under `gens`: nodes in discovery order and
/// the labelled edges between them.
fn bfs_words(m: &Machine, u: &[crate::Letter], gens: &[SignedState]) -> (Vec<Word>, Vec<(usize, SignedState, usize)>) {
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut nodes = vec![u.to_vec()];
    index.insert(u.to_vec(), 0);
    let mut edges = Vec::new();
    let mut next = 0;
    while next < nodes.len() {
        let v = nodes[next].clone();
        for &g in gens {
            if let Some((w, _)) = m.run(g, &v) {
                let target = *index.entry(w.clone()).or_insert_with(|| {
                    nodes.push(w);
                    nodes.len() - 1
                });
                edges.push((next, g, target));
            }
        }
        next += 1;
    }
    (nodes, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    /// Generators `Q`.
    Orbital,
    /// Generators `Q ⊔ ~Q`.
    Schreier,
}

/// Orbit of a word together with its labelled action edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitalGraph {
    pub mode: GraphMode,
    /// `nodes[0]` is the root.
    pub nodes: Vec<Word>,
    /// `(source, generator, target)` as node indices.
    pub edges: Vec<(usize, SignedState, usize)>,
}

impl OrbitalGraph {
    pub fn root(&self) -> &Word {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Orbital graph (generators `Q`) or Schreier graph (generators `Q ⊔ ~Q`,
/// invertible automata only) of `u`. Nodes are numbered breadth-first with
/// generators in declared order, inverses after originals.
pub fn build_graph(m: &Machine, u: &[crate::Letter], mode: GraphMode) -> Result<OrbitalGraph> {
    let gens: Vec<SignedState> = match mode {
        GraphMode::Orbital => m.states().collect(),
        GraphMode::Schreier => m.signed_states()?,
    };
    let (nodes, edges) = bfs_words(m, u, &gens);
    Ok(OrbitalGraph { mode, nodes, edges })
}

/// Orbital graph with abstract nodes whose edges `(v, q, s, w)` record the
/// generator `q`, its section `s = q · word(v)` and the target `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichedGraph {
    root: usize,
    size: usize,
    gens: usize,
    // node * gens + generator
    adj: Vec<Option<(StateId, u32)>>,
}

impl EnrichedGraph {
    /// Builds a graph from an explicit edge list; at most one edge per
    /// `(source, generator)` is kept (the last one given).
    pub fn from_edges(
        size: usize,
        root: usize,
        gens: usize,
        edges: &[(usize, StateId, StateId, usize)],
    ) -> EnrichedGraph {
        assert!(root < size, "root out of range");
        let mut adj = vec![None; size * gens];
        for &(v, q, s, w) in edges {
            assert!(v < size && w < size && q.index() < gens);
            adj[v * gens + q.index()] = Some((s, w as u32));
        }
        EnrichedGraph { root, size, gens, adj }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_generators(&self) -> usize {
        self.gens
    }

    /// The edge leaving `v` under generator `q`: `(section, target)`.
    pub fn edge(&self, v: usize, q: StateId) -> Option<(StateId, usize)> {
        self.adj[v * self.gens + q.index()].map(|(s, w)| (s, w as usize))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, StateId, StateId, usize)> + '_ {
        (0..self.size).flat_map(move |v| {
            (0..self.gens as u16).filter_map(move |q| self.edge(v, StateId(q)).map(|(s, w)| (v, StateId(q), s, w)))
        })
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().filter(|e| e.is_some()).count()
    }
}

pub fn build_enriched(m: &Machine, u: &[crate::Letter]) -> EnrichedGraph {
    let gens: Vec<SignedState> = m.states().collect();
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut nodes = vec![u.to_vec()];
    index.insert(u.to_vec(), 0);
    let mut adj = Vec::new();
    let mut next = 0;
    while next < nodes.len() {
        let v = nodes[next].clone();
        for &g in &gens {
            let entry = m.run(g, &v).map(|(w, section)| {
                let target = *index.entry(w.clone()).or_insert_with(|| {
                    nodes.push(w);
                    nodes.len() - 1
                });
                (section.base, target as u32)
            });
            adj.push(entry);
        }
        next += 1;
    }
    EnrichedGraph {
        root: 0,
        size: nodes.len(),
        gens: gens.len(),
        adj,
    }
}

/// The enriched graph of `u a` computed from the enriched graph of `u`
/// alone. Nodes are pairs `(v, b)` standing for the word `word(v) b`.
pub fn extend_enriched(m: &Machine, g: &EnrichedGraph, a: crate::Letter) -> EnrichedGraph {
    let mut index: HashMap<(usize, crate::Letter), usize> = HashMap::new();
    let mut nodes = vec![(g.root, a)];
    index.insert((g.root, a), 0);
    let mut adj = Vec::new();
    let mut next = 0;
    while next < nodes.len() {
        let (v, b) = nodes[next];
        for q in 0..g.gens as u16 {
            let entry = g.edge(v, StateId(q)).and_then(|(s, v2)| {
                let (out, section) = m.step(SignedState::plain(s), b)?;
                let key = (v2, out);
                let target = *index.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    nodes.len() - 1
                });
                Some((section.base, target as u32))
            });
            adj.push(entry);
        }
        next += 1;
    }
    EnrichedGraph {
        root: 0,
        size: nodes.len(),
        gens: g.gens,
        adj,
    }
}

/// Canonical form of a rooted enriched graph; equal iff isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<u8>);

/// Renumbers nodes in breadth-first first-visit order from the root
/// (generators in declared order) and serializes the renumbered adjacency.
/// Every node is reachable and each node has at most one edge per
/// generator, so the numbering is forced by the rooted labelled shape.
pub fn canonicalize(g: &EnrichedGraph) -> Signature {
    let mut number = vec![u32::MAX; g.size];
    let mut order = Vec::with_capacity(g.size);
    let mut queue = VecDeque::new();
    number[g.root] = 0;
    order.push(g.root);
    queue.push_back(g.root);
    while let Some(v) = queue.pop_front() {
        for q in 0..g.gens as u16 {
            if let Some((_, w)) = g.edge(v, StateId(q)) {
                if number[w] == u32::MAX {
                    number[w] = order.len() as u32;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::with_capacity(8 + order.len() * g.gens * 8);
    out.extend_from_slice(&(order.len() as u32).to_le_bytes());
    out.extend_from_slice(&(g.gens as u32).to_le_bytes());
    for &v in &order {
        for q in 0..g.gens as u16 {
            match g.edge(v, StateId(q)) {
                None => out.extend_from_slice(&0u32.to_le_bytes()),
                Some((s, w)) => {
                    out.extend_from_slice(&(s.0 as u32 + 1).to_le_bytes());
                    out.extend_from_slice(&number[w].to_le_bytes());
                }
            }
        }
    }
    Signature(out)
}

pub(crate) fn dot_id(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn orbital_dot(m: &Machine, g: &OrbitalGraph) -> String {
    let title = match g.mode {
        GraphMode::Orbital => "orbital",
        GraphMode::Schreier => "schreier",
    };
    let mut out = format!("digraph {} {{\n", dot_id(title));
    let names: Vec<String> = g.nodes.iter().map(|w| dot_id(&m.format_word(w))).collect();
    for n in &names {
        out.push_str(&format!("  {n};\n"));
    }
    for &(v, q, w) in &g.edges {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            names[v],
            names[w],
            dot_id(&m.state_label(q))
        ));
    }
    out.push_str("}\n");
    out
}

pub fn enriched_dot(m: &Machine, g: &EnrichedGraph) -> String {
    let mut out = String::from("digraph \"enriched\" {\n");
    for v in 0..g.size {
        let shape = if v == g.root { " [shape=doublecircle]" } else { "" };
        out.push_str(&format!("  \"n{v}\"{shape};\n"));
    }
    for (v, q, s, w) in g.edges() {
        let label = format!("{} / {}", m.automaton().state_name(q), m.automaton().state_name(s));
        out.push_str(&format!("  \"n{v}\" -> \"n{w}\" [label={}];\n", dot_id(&label)));
    }
    out.push_str("}\n");
    out
}
