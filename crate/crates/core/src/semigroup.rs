//! Word problem, separating words and finite semigroup enumeration.
//!
//! Two sequences are equal as elements when they act as the same partial
//! function: defined on the same words, with the same images. Equality is
//! decided by a terminating breadth-first search over pairs of sections.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;

use crate::action::{words_of_length, Machine, StateSeq, Word};
use crate::automaton::SignedState;
use crate::error::{Error, Result};
use crate::orbit::dot_id;

pub const DEFAULT_CAP: usize = 10_000;

/// Shortest (then lexicographically least) word on which `p` and `q` act
/// differently: one is undefined and the other is not, or both are defined
/// with different images. `None` iff they are equal elements.
pub fn separating_word(m: &Machine, p: &[SignedState], q: &[SignedState]) -> Option<Word> {
    let start = (p.to_vec(), q.to_vec());
    let mut seen: HashSet<(StateSeq, StateSeq)> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, Vec::new())]);
    while let Some(((sp, sq), path)) = queue.pop_front() {
        for a in m.letters() {
            let rp = m.act_letter(&sp, a);
            let rq = m.act_letter(&sq, a);
            let next = match (rp, rq) {
                (None, None) => continue,
                (Some((b, np)), Some((c, nq))) if b == c => (np, nq),
                _ => {
                    let mut x = path;
                    x.push(a);
                    return Some(x);
                }
            };
            if seen.insert(next.clone()) {
                let mut x = path.clone();
                x.push(a);
                queue.push_back((next, x));
            }
        }
    }
    None
}

pub fn elements_equal(m: &Machine, p: &[SignedState], q: &[SignedState]) -> bool {
    separating_word(m, p, q).is_none()
}

/// Shortest word on which `p r` and `q r` act differently.
pub fn difference_witness(m: &Machine, p: &[SignedState], q: &[SignedState], r: &[SignedState]) -> Option<Word> {
    let pr: StateSeq = p.iter().chain(r).copied().collect();
    let qr: StateSeq = q.iter().chain(r).copied().collect();
    separating_word(m, &pr, &qr)
}

/// `|Q|^(|p| + |q| + |r|)`, with `|Q|` counting inverse states when any
/// sequence uses one.
pub fn word_problem_bound(m: &Machine, p: &[SignedState], q: &[SignedState], r: &[SignedState]) -> BigUint {
    let uses_inverse = p.iter().chain(q).chain(r).any(|s| s.inverted);
    let states = if uses_inverse {
        2 * m.num_states()
    } else {
        m.num_states()
    };
    BigUint::from(states).pow((p.len() + q.len() + r.len()) as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupElement {
    /// Shortlex-minimal sequence for this element.
    pub representative: StateSeq,
    /// False only for the zero, undefined on every non-empty word.
    pub defined_anywhere: bool,
}

/// Elements with left multiplication by the generators: an edge
/// `(e, g, f)` means `g · e = f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    pub elements: Vec<SemigroupElement>,
    pub edges: Vec<(usize, SignedState, usize)>,
}

/// Bucketing key: images on all short words. Equal elements share it.
fn fingerprint(m: &Machine, seq: &[SignedState], probes: &[Word]) -> Vec<Option<Word>> {
    probes.iter().map(|w| m.act(seq, w)).collect()
}

struct Closure<'a> {
    m: &'a Machine,
    probes: Vec<Word>,
    buckets: HashMap<Vec<Option<Word>>, Vec<usize>>,
    elements: Vec<SemigroupElement>,
    cap: usize,
}

impl Closure<'_> {
    fn find_or_insert(&mut self, seq: StateSeq) -> Result<(usize, bool)> {
        let key = fingerprint(self.m, &seq, &self.probes);
        if let Some(ids) = self.buckets.get(&key) {
            for &i in ids {
                if elements_equal(self.m, &self.elements[i].representative, &seq) {
                    return Ok((i, false));
                }
            }
        }
        if self.elements.len() >= self.cap {
            return Err(Error::CapExceeded(self.cap));
        }
        let defined_anywhere = self.m.letters().any(|a| self.m.act_letter(&seq, a).is_some());
        let id = self.elements.len();
        self.elements.push(SemigroupElement {
            representative: seq,
            defined_anywhere,
        });
        self.buckets.entry(key).or_default().push(id);
        Ok((id, true))
    }
}

/// Closes the declared states under left multiplication, level by level in
/// shortlex order, and records the left Cayley graph.
pub fn cayley_graph(m: &Machine, cap: usize) -> Result<CayleyGraph> {
    let gens: Vec<SignedState> = m.states().collect();
    let mut probes = Vec::new();
    for len in 1.. {
        let batch: Vec<Word> = words_of_length(m.num_letters(), len).collect();
        if batch.is_empty() || probes.len() + batch.len() > 64 {
            break;
        }
        probes.extend(batch);
    }
    let mut closure = Closure {
        m,
        probes,
        buckets: HashMap::new(),
        elements: Vec::new(),
        cap,
    };
    let mut level = Vec::new();
    for &g in &gens {
        let (id, fresh) = closure.find_or_insert(vec![g])?;
        if fresh {
            level.push(id);
        }
    }
    let mut edges = Vec::new();
    while !level.is_empty() {
        let mut candidates: Vec<(StateSeq, usize, SignedState)> = Vec::new();
        for &e in &level {
            for &g in &gens {
                let mut seq = vec![g];
                seq.extend_from_slice(&closure.elements[e].representative);
                candidates.push((seq, e, g));
            }
        }
        candidates.sort();
        let mut next = Vec::new();
        for (seq, e, g) in candidates {
            let (id, fresh) = closure.find_or_insert(seq)?;
            if fresh {
                next.push(id);
            }
            edges.push((e, g, id));
        }
        level = next;
    }
    edges.sort_by_key(|&(e, g, _)| (e, g));
    Ok(CayleyGraph {
        elements: closure.elements,
        edges,
    })
}

pub fn enumerate_semigroup(m: &Machine, cap: usize) -> Result<Vec<SemigroupElement>> {
    Ok(cayley_graph(m, cap)?.elements)
}

pub fn cayley_dot(m: &Machine, cap: usize) -> Result<String> {
    let g = cayley_graph(m, cap)?;
    Ok(render_cayley(m, &g))
}

pub fn render_cayley(m: &Machine, g: &CayleyGraph) -> String {
    let mut out = String::from("digraph \"cayley\" {\n");
    for (i, e) in g.elements.iter().enumerate() {
        out.push_str(&format!(
            "  \"e{i}\" [label={}];\n",
            dot_id(&m.format_seq(&e.representative))
        ));
    }
    for &(e, gen, f) in &g.edges {
        out.push_str(&format!(
            "  \"e{e}\" -> \"e{f}\" [label={}];\n",
            dot_id(&m.state_label(gen))
        ));
    }
    out.push_str("}\n");
    out
}
