//! The `orbitex` command line. [`run`] does all the work and returns the
//! exit code and both output streams, so tests can drive it in-process.
//!
//! Exit codes: 0 when an answer was computed (negative answers included),
//! 1 for usage, input and parse errors, 2 when the automaton does not meet a
//! command's precondition, 3 when an internal consistency check fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use orbitex::expand::{decide_k_expandable, naive_expand_search, ExpandQuery};
use orbitex::orbit::{build_enriched, build_graph, compute_orbit, enriched_dot, orbital_dot, GraphMode};
use orbitex::{builtins, expand, group, reversible, semigroup};
use orbitex::{Automaton, Machine, Verdict};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "orbitex", version, about = "Orbits and expandability of Mealy automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Automaton file (`-` reads standard input)
    file: String,
    /// Input word (`ε` or an empty string for the empty word)
    word: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an automaton
    Check {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute the orbit Q* ∘ WORD
    Orbit {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Orbital graph of WORD (Schreier graph with --schreier)
    Graph {
        #[command(flatten)]
        target: Target,
        /// Use the states and their inverses as generators
        #[arg(long, conflicts_with = "enriched")]
        schreier: bool,
        /// Label edges with the section state as well
        #[arg(long)]
        enriched: bool,
        /// Write DOT to FILE (`-` for standard output)
        #[arg(long, value_name = "FILE")]
        dot: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether WORD is k-expandable
    Expandable {
        #[command(flatten)]
        target: Target,
        #[arg(short, default_value_t = 1)]
        k: usize,
        /// Print the expanding suffix
        #[arg(long)]
        witness: bool,
        /// Also run the brute-force search over suffixes up to length N
        #[arg(long, value_name = "N")]
        naive_cap: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Decide expandability of WORD through its stabilizer (G-automata)
    ExpandableGroup {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for an expanding suffix (complete reversible automata)
    ExpandableReversible {
        #[command(flatten)]
        target: Target,
        /// Longest state sequence tried
        #[arg(long, default_value_t = reversible::DEFAULT_SEQ_CAP)]
        seq_cap: usize,
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Loop generators of the stabilizer of WORD (G-automata)
    Stabilizer {
        #[command(flatten)]
        target: Target,
        /// Also shift each generator by WORD and test it for the identity
        #[arg(long)]
        shifted: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two state sequences act identically
    Equal {
        file: String,
        p: String,
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Shortest word on which P·R and Q·R differ
    DiffWitness {
        file: String,
        p: String,
        q: String,
        #[arg(default_value = "")]
        r: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the generated semigroup
    Semigroup {
        file: String,
        #[arg(long, default_value_t = semigroup::DEFAULT_CAP)]
        cap: usize,
        /// Write the left Cayley graph as DOT to FILE (`-` for standard output)
        #[arg(long, value_name = "FILE")]
        cayley_dot: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Print a built-in automaton in the file format
    Gen {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(builtins::NAMES))]
        name: String,
        /// Parameter of `lowerbound`
        #[arg(long, default_value_t = 1)]
        ell: usize,
        /// Add the inverse states
        #[arg(long)]
        with_inverse: bool,
    },
    /// Evaluate witness-length bounds
    Bounds {
        #[command(subcommand)]
        kind: Bound,
    },
}

#[derive(Subcommand)]
enum Bound {
    /// max{2,Q}^(S(N+K)²) · 2^C(N+K,2) for k-expandability
    Expansion { q: u64, s: u64, n: u64, k: u64 },
    /// (2Q)^(2N) for G-automata
    Group { q: u64, n: u64 },
    /// Q^N for complete reversible automata
    Reversible { q: u64, n: u64 },
    /// Q^L for the word problem, L the total sequence length
    WordProblem { q: u64, l: u64 },
}

enum Failure {
    Usage(String),
    Core(orbitex::Error),
}

impl From<orbitex::Error> for Failure {
    fn from(e: orbitex::Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Session<'a> {
    stdin: &'a mut dyn Read,
    out: String,
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut s = Session {
        stdin,
        out: String::new(),
    };
    match s.dispatch(cli.command) {
        Ok(()) => Outcome {
            code: 0,
            stdout: s.out,
            stderr: String::new(),
        },
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (1, m),
                Failure::Core(e @ orbitex::Error::LemmaViolation(_)) => (3, e.to_string()),
                Failure::Core(e) if e.is_precondition() => (2, e.to_string()),
                Failure::Core(e) => (1, e.to_string()),
            };
            Outcome {
                code,
                stdout: s.out,
                stderr: format!("orbitex: {msg}\n"),
            }
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn word_or_null(m: &Machine, w: Option<&orbitex::Word>) -> Value {
    w.map_or(Value::Null, |w| Value::String(m.format_word(w)))
}

fn verdict_json(m: &Machine, word: &str, v: &Verdict) -> Value {
    json!({
        "word": word,
        "status": v.status.as_str(),
        "expandable": v.expandable(),
        "witness": word_or_null(m, v.witness.as_ref()),
        "orbit_before": v.orbit_before,
        "orbit_after": v.orbit_after,
        "explored": v.explored,
        "bound": v.bound.to_string(),
        "cap": v.cap,
    })
}

impl Session<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        self.out.push('\n');
    }

    fn emit_json(&mut self, v: Value) {
        self.line(v.to_string());
    }

    fn load(&mut self, file: &str) -> Res<Automaton> {
        let text = if file == "-" {
            let mut t = String::new();
            self.stdin
                .read_to_string(&mut t)
                .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
            t
        } else {
            std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{file}: {e}")))?
        };
        Ok(Automaton::parse(&text)?)
    }

    fn machine(&mut self, file: &str) -> Res<Machine> {
        let aut = self.load(file)?;
        Ok(Machine::new(&aut)?)
    }

    fn write_dot(&mut self, dest: &str, dot: &str) -> Res<()> {
        if dest == "-" {
            self.out.push_str(dot);
            Ok(())
        } else {
            std::fs::write(dest, dot).map_err(|e| Failure::Usage(format!("{dest}: {e}")))
        }
    }

    fn verdict_text(&mut self, m: &Machine, v: &Verdict, show_witness: bool) {
        match (&v.witness, v.orbit_after) {
            (Some(x), Some(after)) => {
                self.line(format!("expandable; orbit size {} -> {after}", v.orbit_before));
                if show_witness {
                    self.line(format!(
                        "witness {} (length {}, bound {})",
                        m.format_word(x),
                        x.len(),
                        v.bound
                    ));
                }
            }
            _ => match v.status {
                orbitex::Status::NotFoundWithinCap => self.line(format!(
                    "no expanding suffix found within cap {}; orbit size {}",
                    v.cap.unwrap_or_default(),
                    v.orbit_before
                )),
                _ => self.line(format!("not expandable; orbit size {}", v.orbit_before)),
            },
        }
    }

    fn dispatch(&mut self, cmd: Command) -> Res<()> {
        match cmd {
            Command::Check { file, json } => {
                let aut = self.load(&file)?;
                let c = aut.classify();
                if json {
                    self.emit_json(json!({
                        "name": aut.name(),
                        "states": aut.num_states(),
                        "symbols": aut.num_letters(),
                        "transitions": aut.transitions().len(),
                        "deterministic": c.deterministic,
                        "complete": c.complete,
                        "invertible": c.invertible,
                        "reversible": c.reversible,
                        "s_automaton": c.s_automaton,
                        "sbar_automaton": c.sbar_automaton,
                        "g_automaton": c.g_automaton,
                    }));
                } else {
                    self.line(format!(
                        "{}: {} states, {} symbols, {} transitions",
                        aut.name(),
                        aut.num_states(),
                        aut.num_letters(),
                        aut.transitions().len()
                    ));
                    for (label, v) in [
                        ("deterministic", c.deterministic),
                        ("complete", c.complete),
                        ("invertible", c.invertible),
                        ("reversible", c.reversible),
                        ("S-automaton", c.s_automaton),
                        ("inverse S-automaton", c.sbar_automaton),
                        ("G-automaton", c.g_automaton),
                    ] {
                        self.line(format!("{label}: {}", yes(v)));
                    }
                }
            }
            Command::Orbit { target, json } => {
                let m = self.machine(&target.file)?;
                let u = m.parse_word(&target.word)?;
                let orbit: Vec<String> = compute_orbit(&m, &u).iter().map(|w| m.format_word(w)).collect();
                if json {
                    self.emit_json(json!({ "word": m.format_word(&u), "size": orbit.len(), "orbit": orbit }));
                } else {
                    self.line(format!("orbit size {}", orbit.len()));
                    for w in orbit {
                        self.line(w);
                    }
                }
            }
            Command::Graph {
                target,
                schreier,
                enriched,
                dot,
                json,
            } => {
                let m = self.machine(&target.file)?;
                let u = m.parse_word(&target.word)?;
                if enriched {
                    let g = build_enriched(&m, &u);
                    if let Some(dest) = dot {
                        return self.write_dot(&dest, &enriched_dot(&m, &g));
                    }
                    let edges: Vec<_> = g.edges().collect();
                    if json {
                        let edges: Vec<Value> = edges
                            .iter()
                            .map(|&(v, q, s, w)| {
                                json!({ "from": v, "state": m.automaton().state_name(q),
                                        "section": m.automaton().state_name(s), "to": w })
                            })
                            .collect();
                        self.emit_json(json!({ "mode": "enriched", "word": m.format_word(&u),
                                               "nodes": g.size(), "root": g.root(), "edges": edges }));
                    } else {
                        self.line(format!(
                            "enriched graph of {}: {} nodes, {} edges",
                            m.format_word(&u),
                            g.size(),
                            edges.len()
                        ));
                        let aut = m.automaton();
                        for (v, q, s, w) in edges {
                            self.line(format!("n{v} --{} / {}--> n{w}", aut.state_name(q), aut.state_name(s)));
                        }
                    }
                    return Ok(());
                }
                let mode = if schreier {
                    GraphMode::Schreier
                } else {
                    GraphMode::Orbital
                };
                let g = build_graph(&m, &u, mode)?;
                if let Some(dest) = dot {
                    return self.write_dot(&dest, &orbital_dot(&m, &g));
                }
                let name = if schreier { "schreier" } else { "orbital" };
                let nodes: Vec<String> = g.nodes.iter().map(|w| m.format_word(w)).collect();
                if json {
                    let edges: Vec<Value> = g
                        .edges
                        .iter()
                        .map(|&(v, q, w)| json!({ "from": nodes[v], "state": m.state_label(q), "to": nodes[w] }))
                        .collect();
                    self.emit_json(json!({ "mode": name, "word": m.format_word(&u), "nodes": nodes, "edges": edges }));
                } else {
                    self.line(format!(
                        "{name} graph of {}: {} nodes, {} edges",
                        nodes[0],
                        nodes.len(),
                        g.edges.len()
                    ));
                    for &(v, q, w) in &g.edges {
                        self.line(format!("{} --{}--> {}", nodes[v], m.state_label(q), nodes[w]));
                    }
                }
            }
            Command::Expandable {
                target,
                k,
                witness,
                naive_cap,
                json,
            } => {
                if k == 0 {
                    return Err(Failure::Core(orbitex::Error::InvalidParameter(
                        "k must be at least 1".into(),
                    )));
                }
                let m = self.machine(&target.file)?;
                let u = m.parse_word(&target.word)?;
                let q = ExpandQuery { u: &u, k };
                let v = decide_k_expandable(&m, q);
                let naive = naive_cap.map(|cap| (cap, naive_expand_search(&m, q, cap)));
                if json {
                    let mut obj = verdict_json(&m, &m.format_word(&u), &v);
                    obj["k"] = json!(k);
                    if let Some((cap, n)) = &naive {
                        obj["naive"] = json!({
                            "max_len": cap,
                            "found": n.witness.is_some(),
                            "witness": word_or_null(&m, n.witness.as_ref()),
                        });
                    }
                    self.emit_json(obj);
                } else {
                    self.verdict_text(&m, &v, witness);
                    if let Some((cap, n)) = naive {
                        match &n.witness {
                            Some(x) => {
                                self.line(format!("naive search up to length {cap}: found {}", m.format_word(x)))
                            }
                            None => self.line(format!("naive search up to length {cap}: nothing found")),
                        }
                    }
                }
            }
            Command::ExpandableGroup { target, witness, json } => {
                let m = self.machine(&target.file)?;
                let u = m.parse_word(&target.word)?;
                let v = group::decide_expandable_group(&m, &u)?;
                if json {
                    self.emit_json(verdict_json(&m, &m.format_word(&u), &v));
                } else {
                    self.verdict_text(&m, &v, witness);
                }
            }
            Command::ExpandableReversible {
                target,
                seq_cap,
                witness,
                json,
            } => {
                let m = self.machine(&target.file)?;
                let u = m.parse_word(&target.word)?;
                let v = reversible::decide_expandable_reversible(&m, &u, seq_cap)?;
                if json {
                    self.emit_json(verdict_json(&m, &m.format_word(&u), &v));
                } else {
                    self.verdict_text(&m, &v, witness);
                }
            }
            Command::Stabilizer { target, shifted, json } => {
                let m = self.machine(&target.file)?;
                let u = m.parse_word(&target.word)?;
                let gens = group::shifted_generators(&m, &u)?;
                let trivial = gens.iter().all(|(_, s)| s.is_identity);
                if json {
                    let list: Vec<Value> = gens
                        .iter()
                        .map(|(g, s)| {
                            let mut obj = json!({
                                "label": m.format_seq(&g.label),
                                "edge": { "from": m.format_word(&g.edge.0), "state": m.state_label(g.edge.1),
                                          "to": m.format_word(&g.edge.2) },
                            });
                            if shifted {
                                obj["shifted"] = json!(m.format_seq(&s.seq));
                                obj["identity"] = json!(s.is_identity);
                                obj["moves"] = word_or_null(&m, s.witness.as_ref());
                            }
                            obj
                        })
                        .collect();
                    let mut obj = json!({ "word": m.format_word(&u), "generators": list });
                    if shifted {
                        obj["shifted_trivial"] = json!(trivial);
                    }
                    self.emit_json(obj);
                } else {
                    self.line(format!("{} loop generators", gens.len()));
                    for (g, s) in &gens {
                        let mut text = format!(
                            "{}  ({} --{}--> {})",
                            m.format_seq(&g.label),
                            m.format_word(&g.edge.0),
                            m.state_label(g.edge.1),
                            m.format_word(&g.edge.2)
                        );
                        if shifted {
                            let _ = write!(text, "  shifted {}", m.format_seq(&s.seq));
                            match &s.witness {
                                Some(x) => {
                                    let _ = write!(text, " moves {}", m.format_word(x));
                                }
                                None => text.push_str(" is the identity"),
                            }
                        }
                        self.line(text);
                    }
                    if shifted {
                        self.line(if trivial {
                            "shifted stabilizer is trivial"
                        } else {
                            "shifted stabilizer is nontrivial"
                        });
                    }
                }
            }
            Command::Equal { file, p, q, json } => {
                let m = self.machine(&file)?;
                let (ps, qs) = (m.parse_seq(&p)?, m.parse_seq(&q)?);
                let sep = semigroup::separating_word(&m, &ps, &qs);
                if json {
                    self.emit_json(json!({
                        "p": m.format_seq(&ps),
                        "q": m.format_seq(&qs),
                        "equal": sep.is_none(),
                        "separating_word": word_or_null(&m, sep.as_ref()),
                    }));
                } else {
                    match sep {
                        None => self.line("equal"),
                        Some(w) => self.line(format!("not equal; they differ on {}", m.format_word(&w))),
                    }
                }
            }
            Command::DiffWitness { file, p, q, r, json } => {
                let m = self.machine(&file)?;
                let (ps, qs, rs) = (m.parse_seq(&p)?, m.parse_seq(&q)?, m.parse_seq(&r)?);
                let w = semigroup::difference_witness(&m, &ps, &qs, &rs);
                let bound = semigroup::word_problem_bound(&m, &ps, &qs, &rs);
                if json {
                    self.emit_json(json!({
                        "p": m.format_seq(&ps),
                        "q": m.format_seq(&qs),
                        "r": m.format_seq(&rs),
                        "witness": word_or_null(&m, w.as_ref()),
                        "length": w.as_ref().map(Vec::len),
                        "bound": bound.to_string(),
                    }));
                } else {
                    match w {
                        Some(w) => self.line(format!(
                            "difference on {} (length {}, bound {bound})",
                            m.format_word(&w),
                            w.len()
                        )),
                        None => self.line("no difference"),
                    }
                }
            }
            Command::Semigroup {
                file,
                cap,
                cayley_dot,
                json,
            } => {
                let m = self.machine(&file)?;
                let g = semigroup::cayley_graph(&m, cap)?;
                if let Some(dest) = cayley_dot {
                    self.write_dot(&dest, &semigroup::render_cayley(&m, &g))?;
                    if dest == "-" {
                        return Ok(());
                    }
                }
                if json {
                    let elements: Vec<Value> = g
                        .elements
                        .iter()
                        .map(|e| json!({ "representative": m.format_seq(&e.representative), "zero": !e.defined_anywhere }))
                        .collect();
                    self.emit_json(json!({ "size": elements.len(), "elements": elements }));
                } else {
                    self.line(format!("{} elements", g.elements.len()));
                    for e in &g.elements {
                        let tag = if e.defined_anywhere { "" } else { "  (zero)" };
                        self.line(format!("{}{tag}", m.format_seq(&e.representative)));
                    }
                }
            }
            Command::Gen {
                name,
                ell,
                with_inverse,
            } => {
                let aut = builtins::by_name(&name, ell)
                    .ok_or_else(|| Failure::Usage(format!("unknown built-in `{name}`")))??;
                let aut = if with_inverse { aut.with_inverse()? } else { aut };
                self.out.push_str(&aut.serialize());
            }
            Command::Bounds { kind } => {
                let positive = |name: &str, v: u64| {
                    if v == 0 {
                        Err(Failure::Usage(format!("{name} must be at least 1")))
                    } else {
                        Ok(v)
                    }
                };
                let value = match kind {
                    Bound::Expansion { q, s, n, k } => expand::expansion_bound(
                        positive("Q", q)?,
                        positive("S", s)?,
                        positive("N", n)?,
                        positive("K", k)?,
                    ),
                    Bound::Group { q, n } => group::group_bound(positive("Q", q)?, positive("N", n)?),
                    Bound::Reversible { q, n } => reversible::reversible_bound(positive("Q", q)?, positive("N", n)?),
                    Bound::WordProblem { q, l } => reversible::reversible_bound(positive("Q", q)?, l),
                };
                self.line(value.to_string());
            }
        }
        Ok(())
    }
}
