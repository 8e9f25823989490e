//! Deciding `k`-expandability of a word for deterministic automata.
//!
//! The decision procedure is a breadth-first search over enriched orbital
//! graphs, identified up to isomorphism by their [`Signature`]. The enriched
//! graph of `ux` determines the enriched graph, and hence the orbit size, of
//! every `uxy`. A configuration seen before can therefore be dropped, and the
//! search terminates because only finitely many enriched graphs have fewer
//! than `n + k` nodes.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::action::{shortlex_words, Machine, Word};
use crate::orbit::{build_enriched, canonicalize, compute_orbit, extend_enriched, EnrichedGraph, Signature};
use crate::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpandQuery<'a> {
    pub u: &'a [Letter],
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Expandable,
    NotExpandable,
    /// A bounded search ran out of candidates; nothing is proved.
    NotFoundWithinCap,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Expandable => "expandable",
            Status::NotExpandable => "not-expandable",
            Status::NotFoundWithinCap => "not-found-within-cap",
        }
    }
}

/// Outcome of an expandability question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Present iff expandable.
    pub witness: Option<Word>,
    /// `n = |Q* ∘ u|`.
    pub orbit_before: usize,
    /// `|Q* ∘ ux|` for the witness.
    pub orbit_after: Option<usize>,
    /// Distinct configurations examined.
    pub explored: usize,
    /// Witness-length bound applicable to the procedure.
    pub bound: BigUint,
    /// `K = (n + k)|Σ| - 1` for the general procedure.
    pub cap: Option<usize>,
}

impl Verdict {
    pub fn expandable(&self) -> bool {
        self.status == Status::Expandable
    }
}

/// `max{2, |Q|}^(|Σ|(n+k)²) · 2^C(n+k, 2)`.
pub fn expansion_bound(num_states: u64, num_letters: u64, n: u64, k: u64) -> BigUint {
    let nk = n + k;
    let base = BigUint::from(num_states.max(2));
    let exp = num_letters * nk * nk;
    let pairs = nk * nk.saturating_sub(1) / 2;
    base.pow(exp as u32) * (BigUint::from(1u8) << pairs as usize)
}

/// Decides whether some `x` gives `|Q* ∘ ux| - |Q* ∘ u| >= k`.
///
/// The returned witness is shortest, and lexicographically least by
/// alphabet order among the shortest.
pub fn decide_k_expandable(m: &Machine, q: ExpandQuery<'_>) -> Verdict {
    assert!(q.k >= 1, "k must be positive");
    let start = build_enriched(m, q.u);
    let n = start.size();
    let target = n + q.k;
    let letters = m.num_letters();
    let mut verdict = Verdict {
        status: Status::NotExpandable,
        witness: None,
        orbit_before: n,
        orbit_after: None,
        explored: 1,
        bound: expansion_bound(m.num_states() as u64, letters as u64, n as u64, q.k as u64),
        cap: Some((target * letters).saturating_sub(1)),
    };
    let mut visited: HashSet<Signature> = HashSet::new();
    visited.insert(canonicalize(&start));
    let mut frontier: Vec<(EnrichedGraph, Word)> = vec![(start, Vec::new())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (g, path) in &frontier {
            for a in m.letters() {
                let h = extend_enriched(m, g, a);
                let mut x = path.clone();
                x.push(a);
                if h.size() >= target {
                    verdict.status = Status::Expandable;
                    verdict.orbit_after = Some(h.size());
                    verdict.witness = Some(x);
                    verdict.explored = visited.len();
                    return verdict;
                }
                if visited.insert(canonicalize(&h)) {
                    next.push((h, x));
                }
            }
        }
        frontier = next;
    }
    verdict.explored = visited.len();
    verdict
}

/// Exhaustive shortlex enumeration of suffixes up to `max_len`, measuring
/// `|Q* ∘ ux|` directly. A negative answer proves nothing.
pub fn naive_expand_search(m: &Machine, q: ExpandQuery<'_>, max_len: usize) -> Verdict {
    assert!(q.k >= 1, "k must be positive");
    let n = compute_orbit(m, q.u).len();
    let mut verdict = Verdict {
        status: Status::NotFoundWithinCap,
        witness: None,
        orbit_before: n,
        orbit_after: None,
        explored: 0,
        bound: expansion_bound(m.num_states() as u64, m.num_letters() as u64, n as u64, q.k as u64),
        cap: None,
    };
    let mut ux = q.u.to_vec();
    for x in shortlex_words(m.num_letters(), max_len) {
        verdict.explored += 1;
        ux.truncate(q.u.len());
        ux.extend_from_slice(&x);
        let size = compute_orbit(m, &ux).len();
        if size >= n + q.k {
            verdict.status = Status::Expandable;
            verdict.witness = Some(x);
            verdict.orbit_after = Some(size);
            return verdict;
        }
    }
    verdict
}
