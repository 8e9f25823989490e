//! Named example automata.

use crate::automaton::Automaton;
use crate::error::{Error, Result};

/// The two-state partial automaton `q --a/b--> p`, `p --b/a--> p`.
pub fn prop43() -> Automaton {
    Automaton::new(
        "p43",
        &["q", "p"],
        &["a", "b"],
        &[("q", "a", "b", "p"), ("p", "b", "a", "p")],
    )
    .expect("static automaton")
}

/// The binary adding machine (odometer), least significant digit first.
pub fn adding_machine() -> Automaton {
    Automaton::new(
        "adding-machine",
        &["q", "id"],
        &["0", "1"],
        &[
            ("q", "0", "1", "id"),
            ("q", "1", "0", "q"),
            ("id", "0", "0", "id"),
            ("id", "1", "1", "id"),
        ],
    )
    .expect("static automaton")
}

/// Single state swapping `0` and `1`.
pub fn toggle() -> Automaton {
    Automaton::new(
        "toggle",
        &["s"],
        &["0", "1"],
        &[("s", "0", "1", "s"), ("s", "1", "0", "s")],
    )
    .expect("static automaton")
}

/// A complete reversible two-state automaton.
pub fn rev2() -> Automaton {
    Automaton::new(
        "rev2",
        &["a", "b"],
        &["0", "1"],
        &[
            ("a", "0", "1", "a"),
            ("a", "1", "0", "b"),
            ("b", "0", "0", "b"),
            ("b", "1", "1", "a"),
        ],
    )
    .expect("static automaton")
}

/// The adding-machine variant over `{0, 1, _}` whose words `(_^ℓ 0)^n`
/// need suffixes of length at least `ℓ + 1` to grow their orbit.
///
/// States are `p, q1, …, qℓ, id`.
pub fn lower_bound(ell: usize) -> Result<Automaton> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".into()));
    }
    let q = |i: usize| format!("q{i}");
    let mut states = vec!["p".to_string()];
    states.extend((1..=ell).map(q));
    states.push("id".into());
    let mut trans: Vec<(String, String, String, String)> = Vec::new();
    let mut add = |s: &str, a: &str, b: &str, t: &str| {
        trans.push((s.into(), a.into(), b.into(), t.into()));
    };
    add("p", "0", "0", "p");
    add("p", "1", "1", "p");
    add("p", "_", "_", &q(1));
    for i in 1..ell {
        add(&q(i), "0", "0", &q(i));
        add(&q(i), "1", "1", &q(i));
        add(&q(i), "_", "_", &q(i + 1));
    }
    add(&q(ell), "0", "1", "id");
    add(&q(ell), "1", "0", "p");
    add(&q(ell), "_", "_", &q(ell));
    for a in ["0", "1", "_"] {
        add("id", a, a, "id");
    }
    let alphabet = ["0".to_string(), "1".into(), "_".into()];
    Automaton::new(&format!("lowerbound-{ell}"), &states, &alphabet, &trans)
}

/// Looks up a built-in by its command-line name.
pub fn by_name(name: &str, ell: usize) -> Option<Result<Automaton>> {
    Some(Ok(match name {
        "prop43" | "p43" => prop43(),
        "adding-machine" => adding_machine(),
        "toggle" => toggle(),
        "rev2" => rev2(),
        "lowerbound" | "lower-bound" => return Some(lower_bound(ell)),
        _ => return None,
    }))
}

pub const NAMES: &[&str] = &["prop43", "lowerbound", "adding-machine", "toggle", "rev2"];
