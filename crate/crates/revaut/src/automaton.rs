//! Finite Mealy machines whose combined transition/output map is one-to-one.
//!
//! A machine is a finite state set, an input alphabet, an output alphabet,
//! and two total tables: `delta` (next state) and `lambda` (emitted output).
//! The object of interest is the combined step map
//!
//! ```text
//! U : (state, input) -> (delta(state, input), lambda(state, input))
//! ```
//!
//! `U` can be injective even when neither table is, and machines with
//! injective `U` can be run backwards: every configuration has at most one
//! predecessor, so measurements taken by running the machine can be undone
//! step for step.
//!
//! Symbols are opaque tokens compared by equality. Declaration order defines
//! the canonical configuration indexing used everywhere else in the crate:
//! `(state, symbol)` pairs are numbered state-major in declared order.

use std::fmt;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

/// A validated Mealy machine with total transition and output tables.
///
/// Immutable after construction; all operations are pure functions of their
/// arguments, so sharing across threads is safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    states: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    /// next-state index, keyed by `state_idx * |inputs| + input_idx`
    delta: Vec<usize>,
    /// output index, same key
    lambda: Vec<usize>,
}

/// One `(state, symbol)` pair. The symbol is an input before a step and an
/// output after one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: String,
    pub symbol: String,
}

impl Configuration {
    pub fn new(state: impl Into<String>, symbol: impl Into<String>) -> Self {
        Self {
            state: state.into(),
            symbol: symbol.into(),
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.state, self.symbol)
    }
}

/// A recorded run. `closed_loop` runs feed each emitted output back in as
/// the next input, so consecutive entries are related by one application of
/// the combined map. Open-loop runs consume an external input stream and
/// record the pre-step configurations (plus the final post-step one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub steps: Vec<Configuration>,
    pub closed_loop: bool,
}

/// Outcome of the injectivity check on the combined map.
///
/// When not reversible, `collisions` lists the groups of distinct
/// configurations sent to the same image, ordered by image index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub reversible: bool,
    pub collisions: Vec<Vec<Configuration>>,
}

/// A raw table row prior to validation: (state, input, next state, output).
pub type TableRow = (String, String, String, String);

impl Automaton {
    /// Builds and validates a machine from declared alphabets and table rows.
    ///
    /// Rows may come in any order; exactly one row per (state, input) pair is
    /// required. Error line numbers refer to 1-based row positions.
    pub fn new(
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        rows: Vec<TableRow>,
    ) -> Result<Self> {
        let numbered: Vec<(usize, TableRow)> =
            rows.into_iter().enumerate().map(|(i, r)| (i + 1, r)).collect();
        Self::from_numbered_rows(states, inputs, outputs, numbered)
    }

    /// Shared by `new` and the document parser; `rows` carry the line number
    /// to blame in errors.
    fn from_numbered_rows(
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        rows: Vec<(usize, TableRow)>,
    ) -> Result<Self> {
        check_alphabet(&states, 0)?;
        check_alphabet(&inputs, 0)?;
        check_alphabet(&outputs, 0)?;
        let n_slots = states.len() * inputs.len();
        let mut delta = vec![usize::MAX; n_slots];
        let mut lambda = vec![usize::MAX; n_slots];
        for (line, (state, input, next, output)) in rows {
            let s = index_of(&states, &state).ok_or_else(|| Error::UndeclaredSymbol {
                line,
                token: state.clone(),
            })?;
            let i = index_of(&inputs, &input).ok_or_else(|| Error::UndeclaredSymbol {
                line,
                token: input.clone(),
            })?;
            let ns = index_of(&states, &next).ok_or_else(|| Error::UndeclaredSymbol {
                line,
                token: next.clone(),
            })?;
            let o = index_of(&outputs, &output).ok_or_else(|| Error::UndeclaredSymbol {
                line,
                token: output.clone(),
            })?;
            let slot = s * inputs.len() + i;
            if delta[slot] != usize::MAX {
                return Err(Error::DuplicateRow {
                    line,
                    state,
                    input,
                });
            }
            delta[slot] = ns;
            lambda[slot] = o;
        }
        if let Some(slot) = delta.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MissingRow {
                state: states[slot / inputs.len()].clone(),
                input: inputs[slot % inputs.len()].clone(),
            });
        }
        Ok(Self {
            states,
            inputs,
            outputs,
            delta,
            lambda,
        })
    }

    /// Parses the line-oriented automaton description document.
    ///
    /// ```text
    /// # comment
    /// states: s1 s2
    /// inputs: 1 2 3
    /// outputs: 1 2 3
    /// table:
    /// s1 1 -> s1 1
    /// ...
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut states: Option<Vec<String>> = None;
        let mut inputs: Option<Vec<String>> = None;
        let mut outputs: Option<Vec<String>> = None;
        let mut in_table = false;
        let mut rows: Vec<(usize, TableRow)> = Vec::new();

        for (lineno0, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno0 + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !in_table {
                if states.is_none() {
                    let toks = section_tokens(line, "states:", lineno)?;
                    check_alphabet(&toks, lineno)?;
                    states = Some(toks);
                } else if inputs.is_none() {
                    let toks = section_tokens(line, "inputs:", lineno)?;
                    check_alphabet(&toks, lineno)?;
                    inputs = Some(toks);
                } else if outputs.is_none() {
                    let toks = section_tokens(line, "outputs:", lineno)?;
                    check_alphabet(&toks, lineno)?;
                    outputs = Some(toks);
                } else if line == "table:" {
                    in_table = true;
                } else {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: "expected \"table:\"".into(),
                    });
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 || toks[2] != "->" {
                return Err(Error::Malformed {
                    line: lineno,
                    reason: "expected \"<state> <input> -> <next_state> <output>\"".into(),
                });
            }
            rows.push((
                lineno,
                (
                    toks[0].to_string(),
                    toks[1].to_string(),
                    toks[3].to_string(),
                    toks[4].to_string(),
                ),
            ));
        }

        let states = states.ok_or(Error::MissingSection { section: "states:" })?;
        let inputs = inputs.ok_or(Error::MissingSection { section: "inputs:" })?;
        let outputs = outputs.ok_or(Error::MissingSection { section: "outputs:" })?;
        if !in_table {
            return Err(Error::MissingSection { section: "table:" });
        }
        Self::from_numbered_rows(states, inputs, outputs, rows)
    }

    /// Builds the machine realizing a given permutation of the
    /// `states x symbols` configuration set: each image pair is split back
    /// into a `delta` entry (its state part) and a `lambda` entry (its
    /// symbol part). Inputs and outputs are both `symbols`, so the result
    /// is always reversible and closed-loop runnable.
    pub fn from_permutation(
        states: &[&str],
        symbols: &[&str],
        perm: &Permutation,
    ) -> Result<Self> {
        let n = states.len() * symbols.len();
        if perm.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: perm.size(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for (k, &img) in perm.image().iter().enumerate() {
            rows.push((
                states[k / symbols.len()].to_string(),
                symbols[k % symbols.len()].to_string(),
                states[img / symbols.len()].to_string(),
                symbols[img % symbols.len()].to_string(),
            ));
        }
        Self::new(
            states.iter().map(|s| s.to_string()).collect(),
            symbols.iter().map(|s| s.to_string()).collect(),
            symbols.iter().map(|s| s.to_string()).collect(),
            rows,
        )
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    /// Number of `(state, input)` configurations.
    pub fn config_count(&self) -> usize {
        self.states.len() * self.inputs.len()
    }

    /// Canonical index of a configuration whose symbol is an input.
    pub fn config_index(&self, c: &Configuration) -> Result<usize> {
        let s = index_of(&self.states, &c.state)
            .ok_or_else(|| Error::UnknownState(c.state.clone()))?;
        let i = index_of(&self.inputs, &c.symbol)
            .ok_or_else(|| Error::NotAnInput(c.symbol.clone()))?;
        Ok(s * self.inputs.len() + i)
    }

    /// Configuration at a canonical index.
    pub fn config_at(&self, idx: usize) -> Configuration {
        Configuration::new(
            self.states[idx / self.inputs.len()].clone(),
            self.inputs[idx % self.inputs.len()].clone(),
        )
    }

    fn delta_at(&self, slot: usize) -> &str {
        &self.states[self.delta[slot]]
    }

    fn lambda_at(&self, slot: usize) -> &str {
        &self.outputs[self.lambda[slot]]
    }

    pub fn delta(&self, state: &str, input: &str) -> Result<&str> {
        let slot = self.slot(state, input)?;
        Ok(self.delta_at(slot))
    }

    pub fn lambda(&self, state: &str, input: &str) -> Result<&str> {
        let slot = self.slot(state, input)?;
        Ok(self.lambda_at(slot))
    }

    fn slot(&self, state: &str, input: &str) -> Result<usize> {
        let s = index_of(&self.states, state)
            .ok_or_else(|| Error::UnknownState(state.to_string()))?;
        let i = index_of(&self.inputs, input)
            .ok_or_else(|| Error::NotAnInput(input.to_string()))?;
        Ok(s * self.inputs.len() + i)
    }

    /// One application of the combined map.
    pub fn step(&self, c: &Configuration) -> Result<Configuration> {
        let slot = self.slot(&c.state, &c.symbol)?;
        Ok(Configuration::new(
            self.delta_at(slot).to_string(),
            self.lambda_at(slot).to_string(),
        ))
    }

    /// Combined map on canonical indices. Fails if the emitted output is not
    /// a legal input (the image then has no index in `states x inputs`).
    pub fn step_index(&self, idx: usize) -> Result<usize> {
        if idx >= self.config_count() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                size: self.config_count(),
            });
        }
        let out = self.lambda_at(idx);
        let i = index_of(&self.inputs, out)
            .ok_or_else(|| Error::NotAnInput(out.to_string()))?;
        Ok(self.delta[idx] * self.inputs.len() + i)
    }

    /// Runs the machine as an autonomous system for `n` steps: each emitted
    /// output is fed back as the next input. The trajectory holds `n + 1`
    /// configurations starting at `c0`.
    pub fn run_closed(&self, c0: &Configuration, n: usize) -> Result<Trajectory> {
        // validate the start explicitly so a bad c0 is not blamed on feedback
        self.config_index(c0)?;
        let mut steps = vec![c0.clone()];
        for t in 0..n {
            let cur = steps.last().expect("non-empty");
            if index_of(&self.inputs, &cur.symbol).is_none() {
                return Err(Error::FeedbackViolation {
                    step: t,
                    symbol: cur.symbol.clone(),
                });
            }
            steps.push(self.step(cur)?);
        }
        Ok(Trajectory {
            steps,
            closed_loop: true,
        })
    }

    /// Runs the machine on an external input stream. Records each pre-step
    /// configuration and appends the final post-step one, so `n` inputs
    /// yield `n + 1` entries.
    pub fn run_open(&self, start_state: &str, stream: &[&str]) -> Result<Trajectory> {
        index_of(&self.states, start_state)
            .ok_or_else(|| Error::UnknownState(start_state.to_string()))?;
        if stream.is_empty() {
            return Err(Error::InvalidParams("empty input stream".into()));
        }
        let mut steps = Vec::with_capacity(stream.len() + 1);
        let mut state = start_state.to_string();
        let mut last = None;
        for &input in stream {
            let pre = Configuration::new(state.clone(), input.to_string());
            let post = self.step(&pre)?;
            steps.push(pre);
            state = post.state.clone();
            last = Some(post);
        }
        steps.push(last.expect("stream non-empty"));
        Ok(Trajectory {
            steps,
            closed_loop: false,
        })
    }

    /// Decides injectivity of the combined map by counting distinct images.
    pub fn check_reversible(&self) -> ReversibilityReport {
        let n_out = self.outputs.len();
        // group sources by image (next_state, output) pair
        let mut sources: Vec<Vec<usize>> = vec![Vec::new(); self.states.len() * n_out];
        for slot in 0..self.config_count() {
            sources[self.delta[slot] * n_out + self.lambda[slot]].push(slot);
        }
        let collisions: Vec<Vec<Configuration>> = sources
            .into_iter()
            .filter(|group| group.len() > 1)
            .map(|group| group.into_iter().map(|s| self.config_at(s)).collect())
            .collect();
        ReversibilityReport {
            reversible: collisions.is_empty(),
            collisions,
        }
    }

    /// Constructs the inverse machine: inputs and outputs swap roles and the
    /// tables are transposed along the combined map, so stepping the inverse
    /// on `step(a, c)` yields `c` for every legal `c`.
    pub fn invert(&self) -> Result<Self> {
        let report = self.check_reversible();
        if !report.reversible {
            return Err(Error::NotReversible {
                collisions: report.collisions.len(),
            });
        }
        if self.inputs.len() != self.outputs.len() {
            return Err(Error::AlphabetSizeMismatch {
                inputs: self.inputs.len(),
                outputs: self.outputs.len(),
            });
        }
        let n_out = self.outputs.len();
        let n_slots = self.states.len() * n_out;
        let mut delta = vec![usize::MAX; n_slots];
        let mut lambda = vec![usize::MAX; n_slots];
        for slot in 0..self.config_count() {
            let inv_slot = self.delta[slot] * n_out + self.lambda[slot];
            delta[inv_slot] = slot / self.inputs.len();
            lambda[inv_slot] = slot % self.inputs.len();
        }
        // injective + equal alphabet sizes means onto: no hole can remain
        debug_assert!(delta.iter().all(|&v| v != usize::MAX));
        Ok(Self {
            states: self.states.clone(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
            delta,
            lambda,
        })
    }

    /// Walks a closed-loop trajectory backwards with the inverse machine and
    /// returns the recovered starting configuration. Complete information
    /// recycling: the result always equals `t.steps[0]`.
    pub fn undo_trajectory(&self, t: &Trajectory) -> Result<Configuration> {
        if !t.closed_loop {
            return Err(Error::UndoRequiresClosedLoop);
        }
        let last = t.steps.last().ok_or(Error::EmptyTrajectory)?;
        let inverse = self.invert()?;
        let mut cur = last.clone();
        for _ in 0..t.steps.len() - 1 {
            cur = inverse.step(&cur)?;
        }
        Ok(cur)
    }
}

fn index_of(list: &[String], token: &str) -> Option<usize> {
    list.iter().position(|t| t == token)
}

fn section_tokens(line: &str, header: &str, lineno: usize) -> Result<Vec<String>> {
    let rest = line.strip_prefix(header).ok_or_else(|| Error::Malformed {
        line: lineno,
        reason: format!("expected \"{header}\" line"),
    })?;
    let toks: Vec<String> = rest.split_whitespace().map(|t| t.to_string()).collect();
    if toks.is_empty() {
        return Err(Error::Malformed {
            line: lineno,
            reason: format!("\"{header}\" declares no symbols"),
        });
    }
    Ok(toks)
}

fn check_alphabet(tokens: &[String], lineno: usize) -> Result<()> {
    for (i, tok) in tokens.iter().enumerate() {
        if tok == "->" {
            return Err(Error::Malformed {
                line: lineno,
                reason: "\"->\" is not a legal symbol".into(),
            });
        }
        if tokens[..i].contains(tok) {
            return Err(Error::DuplicateSymbol {
                line: lineno,
                token: tok.clone(),
            });
        }
    }
    Ok(())
}

/// Enumerates every reversible machine over the given alphabets whose
/// inputs and outputs coincide: one machine per permutation of the
/// configuration set. `(n_states * n_symbols)!` machines, so keep it small.
pub fn enumerate_reversible(states: &[&str], symbols: &[&str]) -> Vec<Automaton> {
    crate::permutation::all_permutations(states.len() * symbols.len())
        .iter()
        .map(|p| Automaton::from_permutation(states, symbols, p).expect("valid split"))
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::permutation::{all_permutations, to_permutation};

    pub(crate) const TABLE1: &str = "\
# two states, three symbols
states: s1 s2
inputs: 1 2 3
outputs: 1 2 3
table:
s1 1 -> s1 1
s1 2 -> s1 2
s1 3 -> s2 2
s2 1 -> s2 1
s2 2 -> s2 3
s2 3 -> s1 3
";

    fn table1() -> Automaton {
        Automaton::parse(TABLE1).unwrap()
    }

    #[test]
    fn parses_the_reference_document() {
        let a = table1();
        assert_eq!(a.states(), ["s1", "s2"]);
        assert_eq!(a.inputs(), ["1", "2", "3"]);
        assert_eq!(a.outputs(), ["1", "2", "3"]);
        assert_eq!(a.delta("s1", "3").unwrap(), "s2");
        assert_eq!(a.lambda("s1", "3").unwrap(), "2");
    }

    #[test]
    fn parses_single_state_identity_machine() {
        let a = Automaton::parse("states: a\ninputs: 0\noutputs: 0\ntable:\na 0 -> a 0\n")
            .unwrap();
        let c = Configuration::new("a", "0");
        assert_eq!(a.step(&c).unwrap(), c);
    }

    #[test]
    fn missing_row_is_reported_by_pair() {
        let doc = TABLE1.replace("s2 3 -> s1 3\n", "");
        let err = Automaton::parse(&doc).unwrap_err();
        assert_eq!(err.to_string(), "missing pair (s2,3)");
    }

    #[test]
    fn duplicate_row_reports_line_number() {
        let doc = TABLE1.replace("s2 3 -> s1 3", "s1 1 -> s1 1");
        let err = Automaton::parse(&doc).unwrap_err();
        assert!(matches!(err, Error::DuplicateRow { line: 11, .. }), "{err}");
    }

    #[test]
    fn undeclared_symbol_reports_line_number() {
        let doc = TABLE1.replace("s2 3 -> s1 3", "s2 3 -> s9 3");
        let err = Automaton::parse(&doc).unwrap_err();
        assert!(
            matches!(err, Error::UndeclaredSymbol { line: 11, ref token } if token == "s9"),
            "{err}"
        );
    }

    #[test]
    fn malformed_row_reports_line_number() {
        let doc = TABLE1.replace("s2 3 -> s1 3", "s2 3 s1 3");
        let err = Automaton::parse(&doc).unwrap_err();
        assert!(matches!(err, Error::Malformed { line: 11, .. }), "{err}");
    }

    #[test]
    fn table1_is_reversible_though_neither_table_is_injective() {
        let a = table1();
        assert!(a.check_reversible().reversible);
        // delta collides on s2, lambda collides on 2 -- injectivity lives
        // only in the combined map
        assert_eq!(a.delta("s1", "3").unwrap(), a.delta("s2", "1").unwrap());
        assert_eq!(a.lambda("s1", "2").unwrap(), a.lambda("s1", "3").unwrap());
    }

    #[test]
    fn constant_machine_reports_collision_group() {
        let a = Automaton::parse(
            "states: s\ninputs: 0 1\noutputs: 0\ntable:\ns 0 -> s 0\ns 1 -> s 0\n",
        )
        .unwrap();
        let report = a.check_reversible();
        assert!(!report.reversible);
        assert_eq!(
            report.collisions,
            vec![vec![
                Configuration::new("s", "0"),
                Configuration::new("s", "1"),
            ]]
        );
    }

    #[test]
    fn reversibility_matches_distinct_image_count_exhaustively() {
        // every total pair of tables over 1 state x 2 inputs x 2 outputs,
        // and over 2 states x 1 input x 2 outputs
        let shapes = [(1usize, 2usize, 2usize), (2, 1, 2), (2, 2, 1)];
        for (ns, ni, no) in shapes {
            let states: Vec<String> = (0..ns).map(|i| format!("q{i}")).collect();
            let inputs: Vec<String> = (0..ni).map(|i| format!("i{i}")).collect();
            let outputs: Vec<String> = (0..no).map(|i| format!("o{i}")).collect();
            let slots = ns * ni;
            let images = ns * no;
            for code in 0..images.pow(slots as u32) {
                let mut rows = Vec::new();
                let mut c = code;
                let mut image_set = std::collections::BTreeSet::new();
                for slot in 0..slots {
                    let img = c % images;
                    c /= images;
                    image_set.insert(img);
                    rows.push((
                        states[slot / ni].clone(),
                        inputs[slot % ni].clone(),
                        states[img / no].clone(),
                        outputs[img % no].clone(),
                    ));
                }
                let a = Automaton::new(
                    states.clone(),
                    inputs.clone(),
                    outputs.clone(),
                    rows,
                )
                .unwrap();
                let distinct_images = image_set.len();
                assert_eq!(
                    a.check_reversible().reversible,
                    distinct_images == slots,
                    "shape ({ns},{ni},{no}) code {code}"
                );
            }
        }
    }

    #[test]
    fn step_matches_reference_rows() {
        let a = table1();
        assert_eq!(
            a.step(&Configuration::new("s1", "3")).unwrap(),
            Configuration::new("s2", "2")
        );
        assert_eq!(
            a.step(&Configuration::new("s2", "2")).unwrap(),
            Configuration::new("s2", "3")
        );
        assert!(a.step(&Configuration::new("s1", "9")).is_err());
    }

    #[test]
    fn closed_run_traces_the_period_three_orbit() {
        let a = table1();
        let t = a.run_closed(&Configuration::new("s1", "3"), 3).unwrap();
        let rendered: Vec<String> = t.steps.iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered, ["(s1,3)", "(s2,2)", "(s2,3)", "(s1,3)"]);
    }

    #[test]
    fn zero_step_run_is_just_the_start() {
        let a = table1();
        let c0 = Configuration::new("s2", "1");
        let t = a.run_closed(&c0, 0).unwrap();
        assert_eq!(t.steps, vec![c0]);
    }

    #[test]
    fn fixed_point_stays_put_for_five_steps() {
        let a = table1();
        let t = a.run_closed(&Configuration::new("s1", "1"), 5).unwrap();
        assert_eq!(t.steps.len(), 6);
        assert!(t.steps.iter().all(|c| *c == Configuration::new("s1", "1")));
    }

    #[test]
    fn fixed_points_of_the_reference_machine() {
        let a = table1();
        let fixed: Vec<String> = (0..a.config_count())
            .filter(|&k| a.step_index(k).unwrap() == k)
            .map(|k| a.config_at(k).to_string())
            .collect();
        assert_eq!(fixed, ["(s1,1)", "(s1,2)", "(s2,1)"]);
    }

    #[test]
    fn feedback_violation_reports_step_index() {
        let a = Automaton::parse("states: a\ninputs: 0\noutputs: 1\ntable:\na 0 -> a 1\n")
            .unwrap();
        let err = a.run_closed(&Configuration::new("a", "0"), 2).unwrap_err();
        assert!(
            matches!(err, Error::FeedbackViolation { step: 1, ref symbol } if symbol == "1"),
            "{err}"
        );
    }

    #[test]
    fn inverse_undoes_single_steps() {
        let a = table1();
        let inv = a.invert().unwrap();
        assert_eq!(
            inv.step(&Configuration::new("s2", "2")).unwrap(),
            Configuration::new("s1", "3")
        );
        // exhaustive over all six configurations
        for k in 0..a.config_count() {
            let c = a.config_at(k);
            assert_eq!(inv.step(&a.step(&c).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn double_inversion_restores_the_table() {
        let a = table1();
        assert_eq!(a.invert().unwrap().invert().unwrap(), a);
        let id = Automaton::parse("states: a\ninputs: 0\noutputs: 0\ntable:\na 0 -> a 0\n")
            .unwrap();
        assert_eq!(id.invert().unwrap(), id);
    }

    #[test]
    fn invert_rejects_irreversible_and_mismatched_machines() {
        let irrev = Automaton::parse(
            "states: s\ninputs: 0 1\noutputs: 0\ntable:\ns 0 -> s 0\ns 1 -> s 0\n",
        )
        .unwrap();
        assert!(matches!(irrev.invert(), Err(Error::NotReversible { .. })));
        let skew = Automaton::parse(
            "states: s t\ninputs: 0\noutputs: a b\ntable:\ns 0 -> t a\nt 0 -> s b\n",
        )
        .unwrap();
        assert!(matches!(
            skew.invert(),
            Err(Error::AlphabetSizeMismatch { .. })
        ));
    }

    #[test]
    fn undo_restores_the_orbit_start() {
        let a = table1();
        let t = a.run_closed(&Configuration::new("s1", "3"), 3).unwrap();
        assert_eq!(a.undo_trajectory(&t).unwrap(), Configuration::new("s1", "3"));
        let t0 = a.run_closed(&Configuration::new("s2", "2"), 0).unwrap();
        assert_eq!(a.undo_trajectory(&t0).unwrap(), Configuration::new("s2", "2"));
    }

    #[test]
    fn undo_restores_randomized_runs_over_enumerated_machines() {
        // 1,000 (machine, start, n) triples drawn from a deterministic mix
        let machines = enumerate_reversible(&["a", "b"], &["0", "1"]);
        let mut s: u64 = 0x5EED;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s
        };
        for _ in 0..1000 {
            let a = &machines[(next() % 24) as usize];
            let start = a.config_at((next() % 4) as usize);
            let n = (next() % 21) as usize;
            let t = a.run_closed(&start, n).unwrap();
            assert_eq!(a.undo_trajectory(&t).unwrap(), start);
        }
    }

    #[test]
    fn open_loop_records_pre_step_configurations() {
        let a = table1();
        let t = a.run_open("s1", &["3", "1", "2"]).unwrap();
        assert!(!t.closed_loop);
        let rendered: Vec<String> = t.steps.iter().map(|c| c.to_string()).collect();
        // (s1,3) -> s2 emitting 2; external inputs then drive 1, 2
        assert_eq!(rendered, ["(s1,3)", "(s2,1)", "(s2,2)", "(s2,3)"]);
        assert!(matches!(
            a.undo_trajectory(&t),
            Err(Error::UndoRequiresClosedLoop)
        ));
    }

    #[test]
    fn every_split_permutation_yields_a_reversible_machine() {
        for p in all_permutations(4) {
            let a = Automaton::from_permutation(&["a", "b"], &["0", "1"], &p).unwrap();
            assert!(a.check_reversible().reversible);
            assert_eq!(to_permutation(&a).unwrap(), p);
        }
    }
}
