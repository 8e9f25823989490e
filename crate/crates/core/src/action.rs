//! The partial state action `q ∘ u` and the dual action `q · u`.
//!
//! Sequences are written left to right as `q_l, …, q_1`; the rightmost state
//! acts first. [`Machine`] is the compiled, deterministic form of an
//! [`Automaton`] and carries the inverse states whenever the automaton is
//! invertible.

use crate::automaton::{Automaton, Classification, Letter, SignedState, StateId};
use crate::error::{Error, Result};

pub type Word = Vec<Letter>;
pub type StateSeq = Vec<SignedState>;

/// Deterministic transition table over `Q` (and `~Q` when invertible).
#[derive(Debug, Clone)]
pub struct Machine {
    aut: Automaton,
    class: Classification,
    n: usize,
    m: usize,
    // indexed by generator code * m + letter; code = base, or base + n when inverted
    table: Vec<Option<(Letter, SignedState)>>,
}

impl Machine {
    /// Compiles a deterministic automaton.
    pub fn new(aut: &Automaton) -> Result<Machine> {
        let class = aut.classify();
        if !class.deterministic {
            return Err(Error::NotDeterministic);
        }
        let n = aut.num_states();
        let m = aut.num_letters();
        let codes = if class.invertible { 2 * n } else { n };
        let mut table = vec![None; codes * m];
        for t in aut.transitions() {
            table[t.source.index() * m + t.input.index()] = Some((t.output, SignedState::plain(t.target)));
            if class.invertible {
                table[(t.source.index() + n) * m + t.output.index()] = Some((
                    t.input,
                    SignedState {
                        base: t.target,
                        inverted: true,
                    },
                ));
            }
        }
        Ok(Machine {
            aut: aut.clone(),
            class,
            n,
            m,
            table,
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.aut
    }

    pub fn classification(&self) -> Classification {
        self.class
    }

    pub fn has_inverses(&self) -> bool {
        self.class.invertible
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn num_letters(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.m as u16).map(Letter)
    }

    /// The declared states `Q`, in order.
    pub fn states(&self) -> impl Iterator<Item = SignedState> + Clone {
        (0..self.n as u16).map(|i| SignedState::plain(StateId(i)))
    }

    /// `Q` followed by `~Q`. Requires an invertible automaton.
    pub fn signed_states(&self) -> Result<Vec<SignedState>> {
        if !self.has_inverses() {
            return Err(Error::NotInvertible);
        }
        Ok(self.states().chain(self.states().map(SignedState::inverse)).collect())
    }

    pub fn require_group(&self) -> Result<()> {
        if self.class.g_automaton {
            Ok(())
        } else {
            Err(Error::NotGroup)
        }
    }

    /// One transition; `None` when undefined (or an inverse state is used on a
    /// non-invertible automaton).
    pub fn step(&self, s: SignedState, a: Letter) -> Option<(Letter, SignedState)> {
        let code = s.base.index() + if s.inverted { self.n } else { 0 };
        if s.inverted && !self.has_inverses() {
            return None;
        }
        self.table[code * self.m + a.index()]
    }

    /// Runs a single state on a word: output and final state.
    pub fn run(&self, s: SignedState, w: &[Letter]) -> Option<(Word, SignedState)> {
        let mut out = Vec::with_capacity(w.len());
        let mut cur = s;
        for &a in w {
            let (b, next) = self.step(cur, a)?;
            out.push(b);
            cur = next;
        }
        Some((out, cur))
    }

    /// `seq ∘ w`, or `None` when some run does not exist.
    pub fn act(&self, seq: &[SignedState], w: &[Letter]) -> Option<Word> {
        let mut cur = w.to_vec();
        for &s in seq.iter().rev() {
            cur = self.run(s, &cur)?.0;
        }
        Some(cur)
    }

    /// `seq · w`, or `None` when some run does not exist.
    pub fn dual(&self, seq: &[SignedState], w: &[Letter]) -> Option<StateSeq> {
        Some(self.act_dual(seq, w)?.1)
    }

    /// Both `seq ∘ w` and `seq · w` from one pass.
    pub fn act_dual(&self, seq: &[SignedState], w: &[Letter]) -> Option<(Word, StateSeq)> {
        let mut cur = w.to_vec();
        let mut sections = seq.to_vec();
        for (i, &s) in seq.iter().enumerate().rev() {
            let (out, end) = self.run(s, &cur)?;
            sections[i] = end;
            cur = out;
        }
        Some((cur, sections))
    }

    /// `seq ∘ a` and `seq · a` for a single letter, allocation-free for the word.
    pub fn act_letter(&self, seq: &[SignedState], a: Letter) -> Option<(Letter, StateSeq)> {
        let mut cur = a;
        let mut sections = seq.to_vec();
        for (i, &s) in seq.iter().enumerate().rev() {
            let (b, end) = self.step(s, cur)?;
            sections[i] = end;
            cur = b;
        }
        Some((cur, sections))
    }

    pub fn state_label(&self, s: SignedState) -> String {
        let name = self.aut.state_name(s.base);
        if s.inverted {
            format!("~{name}")
        } else {
            name.to_string()
        }
    }

    /// Resolves a state token, consuming `~` prefixes as inversions when
    /// the token is not itself a declared state.
    pub fn parse_state(&self, tok: &str) -> Result<SignedState> {
        if let Some(id) = self.aut.state_id(tok) {
            return Ok(SignedState::plain(id));
        }
        match tok.strip_prefix('~') {
            Some(rest) if !rest.is_empty() => {
                if !self.has_inverses() {
                    return Err(Error::NotInvertible);
                }
                Ok(self.parse_state(rest)?.inverse())
            }
            _ => Err(Error::UnknownState(tok.to_string())),
        }
    }

    /// Comma-separated state tokens; the empty string (or `ε`) is the empty sequence.
    pub fn parse_seq(&self, text: &str) -> Result<StateSeq> {
        let text = text.trim();
        if text.is_empty() || (text == "ε" && self.aut.state_id("ε").is_none()) {
            return Ok(Vec::new());
        }
        text.split(',').map(|t| self.parse_state(t.trim())).collect()
    }

    pub fn format_seq(&self, seq: &[SignedState]) -> String {
        if seq.is_empty() {
            return "ε".into();
        }
        seq.iter().map(|&s| self.state_label(s)).collect::<Vec<_>>().join(",")
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(&self.aut, text)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        format_word(&self.aut, w)
    }
}

fn single_char_alphabet(aut: &Automaton) -> bool {
    aut.alphabet().iter().all(|a| a.chars().count() == 1)
}

/// Contiguous characters when every symbol is one character, otherwise
/// comma-separated tokens.
pub fn parse_word(aut: &Automaton, text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || (text == "ε" && aut.letter("ε").is_none()) {
        return Ok(Vec::new());
    }
    let lookup = |tok: &str| aut.letter(tok).ok_or_else(|| Error::UnknownSymbol(tok.to_string()));
    if single_char_alphabet(aut) && !text.contains(',') {
        text.chars().map(|c| lookup(c.encode_utf8(&mut [0; 4]))).collect()
    } else {
        text.split(',').map(|t| lookup(t.trim())).collect()
    }
}

pub fn format_word(aut: &Automaton, w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    let sep = if single_char_alphabet(aut) { "" } else { "," };
    w.iter().map(|&a| aut.symbol_name(a)).collect::<Vec<_>>().join(sep)
}

/// All words over `num_letters` letters of length at most `max_len`, in
/// shortlex order (by length, then lexicographically by letter index).
pub fn shortlex_words(num_letters: usize, max_len: usize) -> impl Iterator<Item = Word> {
    (0..=max_len).flat_map(move |len| words_of_length(num_letters, len))
}

/// All words of exactly `len` letters, lexicographically.
pub fn words_of_length(num_letters: usize, len: usize) -> impl Iterator<Item = Word> {
    let total = if num_letters == 0 && len > 0 {
        0
    } else {
        num_letters.pow(len as u32)
    };
    (0..total).map(move |mut idx| {
        let mut w = vec![Letter(0); len];
        for slot in w.iter_mut().rev() {
            *slot = Letter((idx % num_letters) as u16);
            idx /= num_letters;
        }
        w
    })
}

/// All sequences over `alphabet` of length at most `max_len`, in shortlex order.
pub fn shortlex_seqs(alphabet: &[SignedState], max_len: usize) -> impl Iterator<Item = StateSeq> + '_ {
    (0..=max_len).flat_map(move |len| {
        words_of_length(alphabet.len(), len).map(move |w| w.iter().map(|a| alphabet[a.index()]).collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn w(m: &Machine, s: &str) -> Word {
        m.parse_word(s).unwrap()
    }

    fn seq(m: &Machine, s: &str) -> StateSeq {
        m.parse_seq(s).unwrap()
    }

    #[test]
    fn p43_actions() {
        let m = Machine::new(&builtins::prop43()).unwrap();
        assert_eq!(m.act(&seq(&m, "q"), &w(&m, "ab")), Some(w(&m, "ba")));
        assert_eq!(m.act(&seq(&m, "p,q"), &w(&m, "ab")), None);
        assert_eq!(m.act(&[], &w(&m, "ab")), Some(w(&m, "ab")));
        assert_eq!(m.dual(&seq(&m, "q"), &w(&m, "a")), Some(seq(&m, "p")));
        assert_eq!(m.dual(&[], &w(&m, "ab")), Some(vec![]));
        assert_eq!(m.act(&seq(&m, "~q,q"), &w(&m, "abb")), Some(w(&m, "abb")));
    }

    #[test]
    fn adding_machine_dual() {
        let m = Machine::new(&builtins::adding_machine()).unwrap();
        assert_eq!(m.dual(&seq(&m, "q,q"), &w(&m, "0")), Some(seq(&m, "q,id")));
        assert_eq!(m.act(&seq(&m, "q"), &w(&m, "1")), Some(w(&m, "0")));
        assert_eq!(m.dual(&seq(&m, "q"), &w(&m, "1")), Some(seq(&m, "q")));
        assert_eq!(m.act(&seq(&m, "q"), &w(&m, "11")), Some(w(&m, "00")));
    }

    #[test]
    fn inverse_tokens() {
        let m = Machine::new(&builtins::prop43()).unwrap();
        let s = m.parse_state("~~q").unwrap();
        assert_eq!(s, m.parse_state("q").unwrap());
        assert_eq!(m.format_seq(&seq(&m, "~q,p")), "~q,p");
        assert!(matches!(m.parse_state("r"), Err(Error::UnknownState(_))));
        let toggle = Machine::new(&builtins::toggle()).unwrap();
        assert!(toggle.parse_state("~s").is_ok());
        let am = Machine::new(&builtins::adding_machine()).unwrap();
        assert!(am.parse_state("~q").is_ok());
        let nondet = Automaton::new("x", &["q"], &["a", "b"], &[("q", "a", "a", "q"), ("q", "b", "a", "q")]).unwrap();
        let mm = Machine::new(&nondet).unwrap();
        assert_eq!(mm.parse_state("~q"), Err(Error::NotInvertible));
    }

    #[test]
    fn word_syntax() {
        let lb = Machine::new(&builtins::lower_bound(1).unwrap()).unwrap();
        assert_eq!(lb.format_word(&w(&lb, "_0")), "_0");
        assert_eq!(w(&lb, "_,0"), w(&lb, "_0"));
        assert_eq!(lb.format_word(&[]), "ε");
        assert!(w(&lb, "").is_empty());
        let multi = Automaton::new("x", &["s"], &["ab", "c"], &[("s", "ab", "c", "s")]).unwrap();
        let mm = Machine::new(&multi).unwrap();
        let word = mm.parse_word("ab,c,ab").unwrap();
        assert_eq!(word.len(), 3);
        assert_eq!(mm.format_word(&word), "ab,c,ab");
        assert!(matches!(mm.parse_word("abc"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn nondeterministic_automata_do_not_compile() {
        let aut = Automaton::new("x", &["q"], &["a"], &[("q", "a", "a", "q"), ("q", "a", "a", "q")]).unwrap();
        assert!(Machine::new(&aut).is_ok());
        let aut = Automaton::new("x", &["q", "r"], &["a"], &[("q", "a", "a", "q"), ("q", "a", "a", "r")]).unwrap();
        assert_eq!(Machine::new(&aut).unwrap_err(), Error::NotDeterministic);
    }

    #[test]
    fn shortlex_order() {
        let all: Vec<_> = shortlex_words(2, 2).collect();
        let expect: Vec<Word> = vec![
            vec![],
            vec![Letter(0)],
            vec![Letter(1)],
            vec![Letter(0), Letter(0)],
            vec![Letter(0), Letter(1)],
            vec![Letter(1), Letter(0)],
            vec![Letter(1), Letter(1)],
        ];
        assert_eq!(all, expect);
        assert_eq!(shortlex_words(0, 3).count(), 1);
    }
}
