//! Letter-to-letter transducers, their text format and the derived
//! inverse / union-with-inverse constructions.
//!
//! An [`Automaton`] stores its transition *relation*; determinism,
//! completeness, invertibility and reversibility are properties checked on
//! demand by [`Automaton::classify`].

use std::fmt;

use crate::error::{Error, Result};

/// Index of a declared state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u16);

/// Index of a declared alphabet symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A state or the formal inverse of a state.
///
/// Ordering puts every plain state before every inverted one, which is the
/// generator order used throughout: declared states, then their inverses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedState {
    pub inverted: bool,
    pub base: StateId,
}

impl SignedState {
    pub fn plain(base: StateId) -> Self {
        SignedState { base, inverted: false }
    }

    pub fn inverse(self) -> Self {
        SignedState {
            base: self.base,
            inverted: !self.inverted,
        }
    }
}

/// One quadruple `(source, input, output, target)` of the transition relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: StateId,
    pub input: Letter,
    pub output: Letter,
    pub target: StateId,
}

/// Definitional properties of an automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub deterministic: bool,
    pub complete: bool,
    pub invertible: bool,
    pub reversible: bool,
    pub s_automaton: bool,
    pub sbar_automaton: bool,
    pub g_automaton: bool,
}

/// A finite letter-to-letter transducer `(Q, Σ, δ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    name: String,
    states: Vec<String>,
    alphabet: Vec<String>,
    transitions: Vec<Transition>,
}

/// Name of the inverse of a state or automaton: `s` becomes `~s`, `~s` becomes `s`.
pub fn inverse_name(name: &str) -> String {
    match name.strip_prefix('~') {
        Some(rest) => rest.to_string(),
        None => format!("~{name}"),
    }
}

fn is_plain_token(tok: &str) -> bool {
    !tok.is_empty()
        && !tok
            .chars()
            .any(|c| c.is_whitespace() || c == '#' || c == '~' || c == ',')
}

/// State (and automaton) names may additionally carry `~` prefixes.
fn is_state_token(tok: &str) -> bool {
    is_plain_token(tok.trim_start_matches('~'))
}

impl Automaton {
    /// Builds an automaton from names, validating the identifier invariants.
    pub fn new<S: AsRef<str>>(name: &str, states: &[S], alphabet: &[S], transitions: &[(S, S, S, S)]) -> Result<Self> {
        if !is_state_token(name) {
            return Err(Error::InvalidParameter(format!("bad automaton name `{name}`")));
        }
        let mut aut = Automaton {
            name: name.to_string(),
            states: Vec::new(),
            alphabet: Vec::new(),
            transitions: Vec::new(),
        };
        for s in states {
            aut.push_state(s.as_ref())?;
        }
        for a in alphabet {
            aut.push_symbol(a.as_ref())?;
        }
        for (src, input, output, dst) in transitions {
            let t = Transition {
                source: aut.state_named(src.as_ref(), 0)?,
                input: aut.symbol_named(input.as_ref(), 0)?,
                output: aut.symbol_named(output.as_ref(), 0)?,
                target: aut.state_named(dst.as_ref(), 0)?,
            };
            aut.push_transition(t);
        }
        Ok(aut)
    }

    fn push_state(&mut self, s: &str) -> Result<()> {
        if !is_state_token(s) {
            return Err(Error::InvalidParameter(format!("bad state name `{s}`")));
        }
        if self.states.iter().any(|x| x == s) {
            return Err(Error::DuplicateState(s.to_string()));
        }
        if self.states.len() >= u16::MAX as usize {
            return Err(Error::InvalidParameter("too many states".into()));
        }
        self.states.push(s.to_string());
        Ok(())
    }

    fn push_symbol(&mut self, a: &str) -> Result<()> {
        if !is_plain_token(a) {
            return Err(Error::InvalidParameter(format!("bad symbol name `{a}`")));
        }
        if self.alphabet.iter().any(|x| x == a) {
            return Err(Error::DuplicateSymbol(a.to_string()));
        }
        if self.alphabet.len() >= u16::MAX as usize {
            return Err(Error::InvalidParameter("too many symbols".into()));
        }
        self.alphabet.push(a.to_string());
        Ok(())
    }

    fn push_transition(&mut self, t: Transition) {
        if !self.transitions.contains(&t) {
            self.transitions.push(t);
        }
    }

    fn state_named(&self, s: &str, line: usize) -> Result<StateId> {
        self.state_id(s).ok_or_else(|| Error::UndeclaredState {
            line,
            name: s.to_string(),
        })
    }

    fn symbol_named(&self, a: &str, line: usize) -> Result<Letter> {
        self.letter(a).ok_or_else(|| Error::UndeclaredSymbol {
            line,
            name: a.to_string(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(|i| StateId(i as u16))
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|s| s == name).map(|i| Letter(i as u16))
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.index()]
    }

    pub fn symbol_name(&self, a: Letter) -> &str {
        &self.alphabet[a.index()]
    }

    /// Counts, for every `(state, letter)` pair, the transitions leaving
    /// `state` with that input, leaving with that output, and entering with
    /// that input.
    fn counts(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let m = self.num_letters();
        let size = self.num_states() * m;
        let (mut by_input, mut by_output, mut into) = (vec![0; size], vec![0; size], vec![0; size]);
        for t in &self.transitions {
            by_input[t.source.index() * m + t.input.index()] += 1;
            by_output[t.source.index() * m + t.output.index()] += 1;
            into[t.target.index() * m + t.input.index()] += 1;
        }
        (by_input, by_output, into)
    }

    pub fn classify(&self) -> Classification {
        let (by_input, by_output, into) = self.counts();
        let deterministic = by_input.iter().all(|&c| c <= 1);
        let complete = by_input.iter().all(|&c| c >= 1);
        let invertible = by_output.iter().all(|&c| c <= 1);
        let reversible = into.iter().all(|&c| c <= 1);
        Classification {
            deterministic,
            complete,
            invertible,
            reversible,
            s_automaton: deterministic,
            sbar_automaton: deterministic && invertible,
            g_automaton: deterministic && invertible && complete,
        }
    }

    /// The inverse automaton: every `q --a/b--> p` becomes `~q --b/a--> ~p`.
    pub fn invert(&self) -> Result<Automaton> {
        if !self.classify().invertible {
            return Err(Error::NotInvertible);
        }
        Ok(Automaton {
            name: inverse_name(&self.name),
            states: self.states.iter().map(|s| inverse_name(s)).collect(),
            alphabet: self.alphabet.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    source: t.source,
                    input: t.output,
                    output: t.input,
                    target: t.target,
                })
                .collect(),
        })
    }

    /// The disjoint union of the automaton with its inverse, states `Q` then `~Q`.
    pub fn with_inverse(&self) -> Result<Automaton> {
        let inv = self.invert()?;
        let n = self.num_states() as u16;
        let mut out = Automaton {
            name: format!("{}-with-inverse", self.name),
            states: Vec::with_capacity(2 * self.num_states()),
            alphabet: self.alphabet.clone(),
            transitions: self.transitions.clone(),
        };
        for s in self.states.iter().chain(inv.states.iter()) {
            out.push_state(s)?;
        }
        for t in &inv.transitions {
            out.push_transition(Transition {
                source: StateId(t.source.0 + n),
                input: t.input,
                output: t.output,
                target: StateId(t.target.0 + n),
            });
        }
        Ok(out)
    }

    /// Parses the line-oriented text format.
    pub fn parse(text: &str) -> Result<Automaton> {
        Parser::default().run(text)
    }

    /// Emits the text format, preserving declaration order.
    pub fn serialize(&self) -> String {
        let mut out = format!("automaton {}\n", self.name);
        out.push_str("alphabet");
        for a in &self.alphabet {
            out.push(' ');
            out.push_str(a);
        }
        out.push_str("\nstates");
        for s in &self.states {
            out.push(' ');
            out.push_str(s);
        }
        out.push('\n');
        for t in &self.transitions {
            out.push_str(&format!(
                "trans {} {} {} {}\n",
                self.state_name(t.source),
                self.symbol_name(t.input),
                self.symbol_name(t.output),
                self.state_name(t.target)
            ));
        }
        out
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    states: Option<Vec<String>>,
    alphabet: Option<Vec<String>>,
    // (line, column of each of the four tokens, tokens)
    trans: Vec<(usize, [usize; 4], [String; 4])>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Automaton> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(content);
            let Some(&(col, keyword)) = tokens.first() else {
                continue;
            };
            let args = &tokens[1..];
            match keyword {
                "automaton" => {
                    if self.name.is_some() {
                        return Err(syntax(line, col, "repeated `automaton` line"));
                    }
                    match args {
                        [(c, name)] => {
                            if !is_state_token(name) {
                                return Err(syntax(line, *c, format!("invalid name `{name}`")));
                            }
                            self.name = Some(name.to_string());
                        }
                        _ => return Err(syntax(line, col, "expected `automaton <name>`")),
                    }
                }
                "alphabet" | "states" => {
                    let slot = if keyword == "states" {
                        &mut self.states
                    } else {
                        &mut self.alphabet
                    };
                    if slot.is_some() {
                        return Err(syntax(line, col, format!("repeated `{keyword}` line")));
                    }
                    let mut names = Vec::with_capacity(args.len());
                    for &(c, tok) in args {
                        let ok = if keyword == "states" {
                            is_state_token(tok)
                        } else {
                            is_plain_token(tok)
                        };
                        if !ok {
                            return Err(syntax(line, c, format!("invalid identifier `{tok}`")));
                        }
                        names.push(tok.to_string());
                    }
                    *slot = Some(names);
                }
                "trans" => match args {
                    [(c0, t0), (c1, t1), (c2, t2), (c3, t3)] => self.trans.push((
                        line,
                        [*c0, *c1, *c2, *c3],
                        [t0.to_string(), t1.to_string(), t2.to_string(), t3.to_string()],
                    )),
                    _ => {
                        let c = args.get(4).map_or(col, |a| a.0);
                        return Err(syntax(line, c, "expected `trans <src> <in> <out> <dst>`"));
                    }
                },
                other => return Err(syntax(line, col, format!("unknown directive `{other}`"))),
            }
        }
        let end = text.lines().count().max(1);
        let name = self
            .name
            .ok_or_else(|| syntax(end, 1, "missing `automaton <name>` line"))?;
        let states = self.states.ok_or_else(|| syntax(end, 1, "missing `states` line"))?;
        let alphabet = self.alphabet.ok_or_else(|| syntax(end, 1, "missing `alphabet` line"))?;
        let mut aut = Automaton::new::<String>(&name, &states, &alphabet, &[])?;
        for (line, _cols, [src, input, output, dst]) in &self.trans {
            let t = Transition {
                source: aut.state_named(src, *line)?,
                input: aut.symbol_named(input, *line)?,
                output: aut.symbol_named(output, *line)?,
                target: aut.state_named(dst, *line)?,
            };
            aut.push_transition(t);
        }
        Ok(aut)
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c + 1, &line[b..byte]));
            }
        } else if start.is_none() {
            start = Some((col, byte));
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P43: &str = "automaton p43\nalphabet a b\nstates q p\ntrans q a b p\ntrans p b a p\n";

    #[test]
    fn parse_p43() {
        let aut = Automaton::parse(P43).unwrap();
        assert_eq!(aut.num_states(), 2);
        assert_eq!(aut.num_letters(), 2);
        assert_eq!(aut.transitions().len(), 2);
        assert_eq!(aut.serialize(), P43);
    }

    #[test]
    fn empty_transitions_are_fine() {
        let aut = Automaton::parse("automaton e\nalphabet 0\nstates s\n").unwrap();
        assert!(aut.transitions().is_empty());
        let c = aut.classify();
        assert!(c.deterministic && !c.complete);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nautomaton x # name\nalphabet a\n  states s\ntrans s a a s # loop\n";
        let aut = Automaton::parse(text).unwrap();
        assert_eq!(aut.transitions().len(), 1);
    }

    #[test]
    fn undeclared_state_is_reported() {
        let text = "automaton x\nalphabet a b\nstates q\ntrans q a b r\n";
        match Automaton::parse(text) {
            Err(Error::UndeclaredState { line, name }) => {
                assert_eq!(line, 4);
                assert_eq!(name, "r");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Automaton::parse(text)
            .unwrap_err()
            .to_string()
            .contains("undeclared state"));
    }

    #[test]
    fn undeclared_symbol_and_duplicates() {
        let text = "automaton x\nalphabet a\nstates q\ntrans q a c q\n";
        assert!(matches!(
            Automaton::parse(text),
            Err(Error::UndeclaredSymbol { line: 4, .. })
        ));
        assert_eq!(
            Automaton::parse("automaton x\nalphabet a a\nstates q\n"),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert_eq!(
            Automaton::parse("automaton x\nalphabet a\nstates q q\n"),
            Err(Error::DuplicateState("q".into()))
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Automaton::parse("automaton x\nalphabet a\nstates q\n  trans q a\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 4,
                column: 3,
                message: "expected `trans <src> <in> <out> <dst>`".into()
            }
        );
        let err = Automaton::parse("automaton x\nalphabet a,b\nstates q\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 2,
                column: 10,
                ..
            }
        ));
        let err = Automaton::parse("machine x\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, column: 1, .. }));
        assert!(Automaton::parse("alphabet a\nstates q\n").is_err());
    }

    #[test]
    fn classify_p43() {
        let c = Automaton::parse(P43).unwrap().classify();
        assert!(c.deterministic);
        assert!(!c.complete);
        assert!(c.invertible);
        assert!(c.reversible);
        assert!(c.sbar_automaton);
        assert!(!c.g_automaton);
    }

    #[test]
    fn invert_p43() {
        let aut = Automaton::parse(P43).unwrap();
        let inv = aut.invert().unwrap();
        assert_eq!(inv.states(), &["~q".to_string(), "~p".to_string()]);
        assert_eq!(
            inv.serialize(),
            "automaton ~p43\nalphabet a b\nstates ~q ~p\ntrans ~q b a ~p\ntrans ~p a b ~p\n"
        );
        assert_eq!(inv.invert().unwrap(), aut);
        assert!(inv.classify().deterministic);
    }

    #[test]
    fn invert_rejects_output_collision() {
        let aut = Automaton::new(
            "x",
            &["q"],
            &["a", "b", "c"],
            &[("q", "a", "b", "q"), ("q", "c", "b", "q")],
        )
        .unwrap();
        assert_eq!(aut.invert(), Err(Error::NotInvertible));
        assert_eq!(aut.with_inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn with_inverse_p43() {
        let aut = Automaton::parse(P43).unwrap();
        let both = aut.with_inverse().unwrap();
        assert_eq!(both.states(), &["q", "p", "~q", "~p"]);
        assert_eq!(both.transitions().len(), 4);
        let c = both.classify();
        assert!(c.deterministic && !c.complete);
        // the file format accepts `~`-prefixed state names
        assert_eq!(Automaton::parse(&both.serialize()).unwrap(), both);
    }

    #[test]
    fn transition_set_semantics() {
        let text = "automaton x\nalphabet a\nstates q\ntrans q a a q\ntrans q a a q\n";
        assert_eq!(Automaton::parse(text).unwrap().transitions().len(), 1);
    }

    #[test]
    fn inverse_names_nest() {
        assert_eq!(inverse_name("q"), "~q");
        assert_eq!(inverse_name(&inverse_name("q")), "q");
    }
}
