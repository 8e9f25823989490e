//! Expandability for automaton groups through the shifted stabilizer.
//!
//! For a G-automaton, `u` is expandable iff some stabilizing sequence of `u`,
//! shifted by `u`, acts non-trivially. Loop labels of a spanning tree of the
//! Schreier graph generate the stabilizer and have length below `2n`, so
//! checking them is enough.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;

use crate::action::{Machine, StateSeq, Word};
use crate::error::Result;
use crate::expand::{Status, Verdict};
use crate::orbit::{build_graph, compute_orbit, GraphMode};
use crate::Letter;

/// Label of the loop at `u` induced by one non-tree Schreier edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopGenerator {
    pub label: StateSeq,
    /// The inducing edge `(source word, generator, target word)`.
    pub edge: (Word, crate::SignedState, Word),
}

impl LoopGenerator {
    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedGenerator {
    pub seq: StateSeq,
    pub is_identity: bool,
    /// A word moved by `seq`, present iff not the identity.
    pub witness: Option<Word>,
}

/// `(2|Q|)^(2n)`.
pub fn group_bound(num_states: u64, n: u64) -> BigUint {
    BigUint::from(2 * num_states).pow((2 * n) as u32)
}

fn invert_seq(seq: &[crate::SignedState]) -> StateSeq {
    seq.iter().rev().map(|s| s.inverse()).collect()
}

/// Loop generators of the stabilizer of `u`, one per edge outside the
/// breadth-first spanning tree of the Schreier graph, in edge order.
pub fn loop_generators(m: &Machine, u: &[Letter]) -> Result<Vec<LoopGenerator>> {
    m.require_group()?;
    let g = build_graph(m, u, GraphMode::Schreier)?;
    let mut tree_edge = vec![None; g.len()];
    // path[v] written leftmost-last: path[v] ∘ u = word(v)
    let mut path: Vec<StateSeq> = vec![Vec::new(); g.len()];
    let mut seen = vec![false; g.len()];
    seen[0] = true;
    for (i, &(v, q, w)) in g.edges.iter().enumerate() {
        if !seen[w] {
            seen[w] = true;
            tree_edge[w] = Some(i);
            let mut p = vec![q];
            p.extend_from_slice(&path[v]);
            path[w] = p;
        }
    }
    let tree: HashSet<usize> = tree_edge.iter().flatten().copied().collect();
    Ok(g.edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !tree.contains(i))
        .map(|(_, &(v, q, w))| {
            let mut label = invert_seq(&path[w]);
            label.push(q);
            label.extend_from_slice(&path[v]);
            LoopGenerator {
                label,
                edge: (g.nodes[v].clone(), q, g.nodes[w].clone()),
            }
        })
        .collect())
}

/// Whether `seq` acts as the identity; otherwise a shortest (then
/// lexicographically least) word it moves.
pub fn is_identity(m: &Machine, seq: &[crate::SignedState]) -> Result<(bool, Option<Word>)> {
    m.require_group()?;
    let mut seen: HashSet<StateSeq> = HashSet::new();
    seen.insert(seq.to_vec());
    let mut queue: VecDeque<(StateSeq, Word)> = VecDeque::new();
    queue.push_back((seq.to_vec(), Vec::new()));
    while let Some((cur, path)) = queue.pop_front() {
        for a in m.letters() {
            let (b, next) = m.act_letter(&cur, a).expect("complete automaton");
            let mut x = path.clone();
            x.push(a);
            if b != a {
                return Ok((false, Some(x)));
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, x));
            }
        }
    }
    Ok((true, None))
}

/// The loop generators shifted by `u`, each with its identity check.
pub fn shifted_generators(m: &Machine, u: &[Letter]) -> Result<Vec<(LoopGenerator, ShiftedGenerator)>> {
    loop_generators(m, u)?
        .into_iter()
        .map(|g| {
            let seq = m.dual(&g.label, u).expect("complete automaton");
            let (is_identity, witness) = is_identity(m, &seq)?;
            Ok((
                g,
                ShiftedGenerator {
                    seq,
                    is_identity,
                    witness,
                },
            ))
        })
        .collect()
}

/// `u` is expandable iff some shifted loop generator is not the identity.
pub fn decide_expandable_group(m: &Machine, u: &[Letter]) -> Result<Verdict> {
    let gens = loop_generators(m, u)?;
    let n = compute_orbit(m, u).len();
    let mut verdict = Verdict {
        status: Status::NotExpandable,
        witness: None,
        orbit_before: n,
        orbit_after: None,
        explored: 0,
        bound: group_bound(m.num_states() as u64, n as u64),
        cap: None,
    };
    for g in &gens {
        verdict.explored += 1;
        let shifted = m.dual(&g.label, u).expect("complete automaton");
        if let (false, Some(x)) = is_identity(m, &shifted)? {
            let mut ux = u.to_vec();
            ux.extend_from_slice(&x);
            verdict.orbit_after = Some(compute_orbit(m, &ux).len());
            verdict.witness = Some(x);
            verdict.status = Status::Expandable;
            break;
        }
    }
    Ok(verdict)
}

/// `Stab¹(u) · u ∘ x`: the orbit of `x` under the group generated by the
/// shifted loop generators.
pub fn shifted_stabilizer_orbit(m: &Machine, u: &[Letter], x: &[Letter]) -> Result<BTreeSet<Word>> {
    let shifted: Vec<StateSeq> = loop_generators(m, u)?
        .iter()
        .map(|g| m.dual(&g.label, u).expect("complete automaton"))
        .collect();
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(x.to_vec());
    let mut queue = vec![x.to_vec()];
    while let Some(y) = queue.pop() {
        for s in &shifted {
            let z = m.act(s, &y).expect("complete automaton");
            if seen.insert(z.clone()) {
                queue.push(z);
            }
        }
    }
    Ok(seen)
}
