mod common;

use orbitex::action::{shortlex_seqs, shortlex_words};
use orbitex::{builtins, Automaton, Machine, SignedState};
use proptest::prelude::*;

fn builtin_machines() -> Vec<Machine> {
    [
        builtins::prop43(),
        builtins::prop43().with_inverse().unwrap(),
        builtins::adding_machine(),
        builtins::toggle(),
        builtins::rev2(),
        builtins::lower_bound(1).unwrap(),
    ]
    .iter()
    .map(|a| Machine::new(a).unwrap())
    .collect()
}

fn generators(m: &Machine) -> Vec<SignedState> {
    m.signed_states().unwrap_or_else(|_| m.states().collect())
}

#[test]
fn length_preservation_and_cocycle() {
    for m in builtin_machines() {
        let gens = generators(&m);
        let max_seq = if gens.len() > 4 { 3 } else { 4 };
        let words: Vec<_> = shortlex_words(m.num_letters(), 5).collect();
        for seq in shortlex_seqs(&gens, max_seq) {
            for w in &words {
                if let Some((img, sec)) = m.act_dual(&seq, w) {
                    assert_eq!(img.len(), w.len());
                    assert_eq!(sec.len(), seq.len());
                    assert_eq!(m.act(&seq, w), Some(img.clone()));
                }
                if w.len() > 3 {
                    continue;
                }
                for split in 0..=w.len() {
                    let (u, v) = w.split_at(split);
                    let whole = m.dual(&seq, w);
                    let stepwise = m.dual(&seq, u).and_then(|s| m.dual(&s, v));
                    assert_eq!(whole, stepwise);
                    let parts = m
                        .act_dual(&seq, u)
                        .and_then(|(iu, s)| m.act(&s, v).map(|iv| [iu, iv].concat()));
                    assert_eq!(m.act(&seq, w), parts);
                }
            }
        }
    }
}

#[test]
fn complete_automata_act_totally() {
    for m in builtin_machines().into_iter().filter(|m| m.classification().complete) {
        let gens = generators(&m);
        for seq in shortlex_seqs(&gens, 3) {
            for w in shortlex_words(m.num_letters(), 5) {
                assert!(m.act(&seq, &w).is_some());
                assert!(m.dual(&seq, &w).is_some());
            }
        }
    }
}

#[test]
fn reversible_duals_are_injective() {
    let mut autos = common::sample(150, 1, common::random_deterministic);
    autos.retain(|a| a.classify().reversible);
    autos.push(builtins::prop43());
    autos.push(builtins::rev2());
    assert!(autos.len() > 20);
    for aut in autos {
        let m = Machine::new(&aut).unwrap();
        let gens: Vec<_> = m.states().collect();
        for u in shortlex_words(m.num_letters(), 3) {
            for len in 1..=4 {
                let seqs: Vec<_> = shortlex_seqs(&gens, len).filter(|s| s.len() == len).collect();
                let mut images = std::collections::HashMap::new();
                for s in &seqs {
                    if let Some(d) = m.dual(s, &u) {
                        if let Some(prev) = images.insert(d, s.clone()) {
                            panic!(
                                "{} and {} collide under ·{}",
                                m.format_seq(&prev),
                                m.format_seq(s),
                                m.format_word(&u)
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn classification_matches_brute_force() {
    for aut in common::sample(300, 2, common::random_deterministic) {
        let c = aut.classify();
        let mut det = true;
        let mut comp = true;
        let mut inv = true;
        let mut rev = true;
        for s in 0..aut.num_states() {
            for a in 0..aut.num_letters() {
                let t = aut.transitions();
                let from_in = t
                    .iter()
                    .filter(|t| t.source.index() == s && t.input.index() == a)
                    .count();
                let from_out = t
                    .iter()
                    .filter(|t| t.source.index() == s && t.output.index() == a)
                    .count();
                let into = t
                    .iter()
                    .filter(|t| t.target.index() == s && t.input.index() == a)
                    .count();
                det &= from_in <= 1;
                comp &= from_in >= 1;
                inv &= from_out <= 1;
                rev &= into <= 1;
            }
        }
        assert_eq!(
            (c.deterministic, c.complete, c.invertible, c.reversible),
            (det, comp, inv, rev)
        );
        assert_eq!(c.g_automaton, det && inv && comp);
        if c.invertible {
            assert!(aut.invert().unwrap().classify().deterministic);
        }
    }
}

fn arb_automaton() -> impl Strategy<Value = Automaton> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(n, m)| {
        let cell = proptest::option::of((0..m, 0..n));
        proptest::collection::vec(cell, n * m).prop_map(move |cells| {
            let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
            let letters: Vec<String> = ["a", "b", "c"][..m].iter().map(|s| s.to_string()).collect();
            let mut trans = Vec::new();
            for (i, c) in cells.iter().enumerate() {
                if let Some((b, t)) = c {
                    trans.push((
                        states[i / m].clone(),
                        letters[i % m].clone(),
                        letters[*b].clone(),
                        states[*t].clone(),
                    ));
                }
            }
            Automaton::new("arb", &states, &letters, &trans).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn serialize_parse_roundtrip(aut in arb_automaton()) {
        let text = aut.serialize();
        let back = Automaton::parse(&text).unwrap();
        prop_assert_eq!(&back, &aut);
        prop_assert_eq!(back.serialize(), text);
        if aut.classify().invertible {
            let both = aut.with_inverse().unwrap();
            prop_assert_eq!(Automaton::parse(&both.serialize()).unwrap(), both);
            prop_assert_eq!(aut.invert().unwrap().invert().unwrap(), aut);
        }
    }

    #[test]
    fn inverse_undoes_action(aut in arb_automaton(), w in proptest::collection::vec(0u16..3, 0..6)) {
        prop_assume!(aut.classify().sbar_automaton);
        let m = Machine::new(&aut).unwrap();
        let w: Vec<_> = w.into_iter().filter(|&a| (a as usize) < m.num_letters()).map(orbitex::Letter).collect();
        for s in m.states() {
            if let Some(img) = m.act(&[s], &w) {
                prop_assert_eq!(m.act(&[s.inverse()], &img), Some(w.clone()));
            }
        }
    }
}
