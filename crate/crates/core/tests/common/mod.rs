#![allow(dead_code)]

use orbitex::Automaton;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_0b17;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Deterministic, possibly partial, 1..=3 states over 1..=2 letters.
pub fn random_deterministic(rng: &mut impl Rng) -> Automaton {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=2);
    let states = names("s", n);
    let letters: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    let mut trans = Vec::new();
    for s in &states {
        for a in &letters {
            if rng.gen_bool(0.8) {
                let b = letters.choose(rng).unwrap().clone();
                let t = states.choose(rng).unwrap().clone();
                trans.push((s.clone(), a.clone(), b, t));
            }
        }
    }
    Automaton::new("rand", &states, &letters, &trans).unwrap()
}

/// Complete and invertible: every state permutes the letters.
pub fn random_group(rng: &mut impl Rng) -> Automaton {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=2);
    let states = names("g", n);
    let letters: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    let mut trans = Vec::new();
    for s in &states {
        let mut outs = letters.clone();
        outs.shuffle(rng);
        for (a, b) in letters.iter().zip(outs) {
            let t = states.choose(rng).unwrap().clone();
            trans.push((s.clone(), a.clone(), b, t));
        }
    }
    Automaton::new("group", &states, &letters, &trans).unwrap()
}

/// Complete and reversible: for every letter the target map is a permutation.
pub fn random_complete_reversible(rng: &mut impl Rng) -> Automaton {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=2);
    let states = names("r", n);
    let letters: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    let mut trans = Vec::new();
    for a in &letters {
        let mut targets = states.clone();
        targets.shuffle(rng);
        for (s, t) in states.iter().zip(targets) {
            let b = letters.choose(rng).unwrap().clone();
            trans.push((s.clone(), a.clone(), b, t));
        }
    }
    Automaton::new("rev", &states, &letters, &trans).unwrap()
}

pub fn sample<F: FnMut(&mut ChaCha8Rng) -> Automaton>(count: usize, salt: u64, mut f: F) -> Vec<Automaton> {
    let mut r = rng(salt);
    (0..count).map(|_| f(&mut r)).collect()
}
