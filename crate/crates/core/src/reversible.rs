//! Complete reversible automata: equality is invariant under shifting, and
//! every word is expandable once the semigroup is infinite.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::action::{shortlex_seqs, Machine, StateSeq, Word};
use crate::automaton::SignedState;
use crate::error::{Error, Result};
use crate::expand::{Status, Verdict};
use crate::orbit::compute_orbit;
use crate::semigroup::{difference_witness, elements_equal};
use crate::Letter;

pub const DEFAULT_SEQ_CAP: usize = 6;

fn require_complete_reversible(m: &Machine) -> Result<()> {
    let c = m.classification();
    if c.deterministic && c.complete && c.reversible {
        Ok(())
    } else {
        Err(Error::NotCompleteReversible)
    }
}

/// Returns whether `p = q`, checking that `p · u = q · u` gives the same answer.
pub fn check_shift_equivalence(m: &Machine, p: &[SignedState], q: &[SignedState], u: &[Letter]) -> Result<bool> {
    require_complete_reversible(m)?;
    let before = elements_equal(m, p, q);
    let pu = m.dual(p, u).expect("complete automaton");
    let qu = m.dual(q, u).expect("complete automaton");
    let after = elements_equal(m, &pu, &qu);
    if before != after {
        return Err(Error::LemmaViolation(format!(
            "{} = {} is {before} but after shifting by {} it is {after}",
            m.format_seq(p),
            m.format_seq(q),
            m.format_word(u)
        )));
    }
    Ok(before)
}

/// `|Q|^n`.
pub fn reversible_bound(num_states: u64, n: u64) -> BigUint {
    BigUint::from(num_states).pow(n as u32)
}

/// First pair `(p, q)` (by shortlex position of `q`, then of `p`) of
/// non-empty sequences up to `seq_cap` with `p ∘ u = q ∘ u` but `p ≠ q`.
pub fn find_collision(m: &Machine, u: &[Letter], seq_cap: usize) -> Option<(StateSeq, StateSeq)> {
    let gens: Vec<SignedState> = m.states().collect();
    // image of u -> first sequence (shortlex) producing it
    let mut first: HashMap<Word, StateSeq> = HashMap::new();
    for q in shortlex_seqs(&gens, seq_cap).skip(1) {
        let image = m.act(&q, u).expect("complete automaton");
        match first.get(&image) {
            None => {
                first.insert(image, q);
            }
            Some(p) => {
                if !elements_equal(m, p, &q) {
                    return Some((p.clone(), q));
                }
            }
        }
    }
    None
}

/// Bounded constructive expansion. `NotFoundWithinCap` is inconclusive.
pub fn decide_expandable_reversible(m: &Machine, u: &[Letter], seq_cap: usize) -> Result<Verdict> {
    require_complete_reversible(m)?;
    let n = compute_orbit(m, u).len();
    let mut verdict = Verdict {
        status: Status::NotFoundWithinCap,
        witness: None,
        orbit_before: n,
        orbit_after: None,
        explored: 0,
        bound: reversible_bound(m.num_states() as u64, n as u64),
        cap: Some(seq_cap),
    };
    let Some((p, q)) = find_collision(m, u, seq_cap) else {
        return Ok(verdict);
    };
    let pu = m.dual(&p, u).expect("complete automaton");
    let qu = m.dual(&q, u).expect("complete automaton");
    let x = difference_witness(m, &pu, &qu, &[]).ok_or_else(|| {
        Error::LemmaViolation(format!(
            "{} and {} differ but their shifts by {} agree",
            m.format_seq(&p),
            m.format_seq(&q),
            m.format_word(u)
        ))
    })?;
    let mut ux = u.to_vec();
    ux.extend_from_slice(&x);
    let after = compute_orbit(m, &ux).len();
    if after <= n {
        return Err(Error::LemmaViolation(format!(
            "suffix {} does not grow the orbit of {}",
            m.format_word(&x),
            m.format_word(u)
        )));
    }
    verdict.status = Status::Expandable;
    verdict.orbit_after = Some(after);
    verdict.witness = Some(x);
    verdict.explored = 1;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn toggle_shift_equivalence() {
        let m = Machine::new(&builtins::toggle()).unwrap();
        let s = |t| m.parse_seq(t).unwrap();
        let w = |t| m.parse_word(t).unwrap();
        assert!(check_shift_equivalence(&m, &s("s"), &s("s,s,s"), &w("0")).unwrap());
        assert!(!check_shift_equivalence(&m, &s("s"), &s("s,s"), &w("01")).unwrap());
        assert!(check_shift_equivalence(&m, &s("s,s"), &s("s,s"), &w("1")).unwrap());
    }

    #[test]
    fn toggle_is_inconclusive() {
        let m = Machine::new(&builtins::toggle()).unwrap();
        let v = decide_expandable_reversible(&m, &m.parse_word("0").unwrap(), 4).unwrap();
        assert_eq!(v.status, Status::NotFoundWithinCap);
        assert_eq!(v.bound, BigUint::from(1u8));
    }

    #[test]
    fn preconditions() {
        let m = Machine::new(&builtins::adding_machine()).unwrap();
        let u = m.parse_word("0").unwrap();
        assert_eq!(
            decide_expandable_reversible(&m, &u, 2).unwrap_err(),
            Error::NotCompleteReversible
        );
        let s = m.parse_seq("q").unwrap();
        assert_eq!(
            check_shift_equivalence(&m, &s, &s, &u).unwrap_err(),
            Error::NotCompleteReversible
        );
        let p43 = Machine::new(&builtins::prop43()).unwrap();
        assert!(decide_expandable_reversible(&p43, &[], 2).is_err());
    }
}
