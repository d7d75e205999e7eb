//! The observer/object boundary as an executable object: question-indexed
//! readouts from micro configurations to macro answer symbols.
//!
//! A readout that is one-to-one loses nothing; a many-to-one readout
//! manufactures effective irreversibility out of perfectly reversible micro
//! dynamics, because one macro symbol no longer pins down the micro
//! configuration that produced it. `candidate_filter` makes that loss
//! quantitative: it tracks the set of micro configurations still consistent
//! with everything observed so far, and `reconstructibility_report` sweeps
//! all starting points to measure how gradual the loss is.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::automaton::{Automaton, Trajectory};
use crate::error::{Error, Result};

/// Whether a map loses information.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    OneToOne,
    ManyToOne,
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::OneToOne => write!(f, "one_to_one"),
            MapKind::ManyToOne => write!(f, "many_to_one"),
        }
    }
}

/// User-declared interface regime. Recorded verbatim, never inferred: the
/// same readout table can sit at any of the three, depending on what the
/// symbols physically are.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Classical,
    QuasiClassical,
    Quantum,
}

impl Scenario {
    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "I_classical" => Some(Self::Classical),
            "II_quasi_classical" => Some(Self::QuasiClassical),
            "III_quantum" => Some(Self::Quantum),
            _ => None,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scenario::Classical => write!(f, "I_classical"),
            Scenario::QuasiClassical => write!(f, "II_quasi_classical"),
            Scenario::Quantum => write!(f, "III_quantum"),
        }
    }
}

/// A total, question-indexed readout from micro configuration indices to
/// answer symbols. Asking question `q` about micro state `x` yields
/// `readout(q, x)`; totality means the observer receives an answer for every
/// configuration, for every question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceMap {
    questions: Vec<String>,
    answers: Vec<String>,
    micro_count: usize,
    /// answer index, keyed by `question_idx * micro_count + micro_idx`
    readout: Vec<usize>,
    scenario: Option<Scenario>,
}

impl InterfaceMap {
    /// Builds a readout from explicit entries; every `(question, micro
    /// index)` pair must appear exactly once.
    pub fn from_table(
        questions: Vec<String>,
        answers: Vec<String>,
        micro_count: usize,
        entries: &[(String, usize, String)],
    ) -> Result<Self> {
        if questions.is_empty() {
            return Err(Error::MissingSection {
                section: "questions:",
            });
        }
        if answers.is_empty() {
            return Err(Error::MissingSection { section: "answers:" });
        }
        let mut readout = vec![usize::MAX; questions.len() * micro_count];
        for (question, idx, answer) in entries {
            let q = questions
                .iter()
                .position(|t| t == question)
                .ok_or_else(|| Error::UnknownQuestion(question.clone()))?;
            let a = answers
                .iter()
                .position(|t| t == answer)
                .ok_or_else(|| Error::UnknownAnswer(answer.clone()))?;
            if *idx >= micro_count {
                return Err(Error::IndexOutOfRange {
                    index: *idx,
                    size: micro_count,
                });
            }
            readout[q * micro_count + idx] = a;
        }
        let map = Self {
            questions,
            answers,
            micro_count,
            readout,
            scenario: None,
        };
        map.check_total()?;
        Ok(map)
    }

    fn check_total(&self) -> Result<()> {
        if let Some(pos) = self.readout.iter().position(|&v| v == usize::MAX) {
            return Err(Error::MissingReadout {
                question: self.questions[pos / self.micro_count].clone(),
                index: pos % self.micro_count,
            });
        }
        Ok(())
    }

    /// Parses the line-oriented interface description document against a
    /// machine (micro indices are resolved from `(state, symbol)` pairs).
    ///
    /// ```text
    /// questions: state
    /// answers: s1 s2
    /// scenario: II_quasi_classical   # optional
    /// readout:
    /// state s1 1 -> s1
    /// ...
    /// ```
    pub fn parse(text: &str, a: &Automaton) -> Result<Self> {
        let mut questions: Option<Vec<String>> = None;
        let mut answers: Option<Vec<String>> = None;
        let mut scenario = None;
        let mut in_readout = false;
        let micro_count = a.config_count();
        let mut readout: Vec<usize> = Vec::new();

        for (lineno0, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno0 + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !in_readout {
                if questions.is_none() {
                    let toks = split_section(line, "questions:", lineno)?;
                    readout = vec![usize::MAX; toks.len() * micro_count];
                    questions = Some(toks);
                } else if answers.is_none() {
                    answers = Some(split_section(line, "answers:", lineno)?);
                } else if let Some(rest) = line.strip_prefix("scenario:") {
                    let token = rest.trim();
                    scenario =
                        Some(Scenario::parse(token).ok_or_else(|| Error::Malformed {
                            line: lineno,
                            reason: format!("unknown scenario \"{token}\""),
                        })?);
                } else if line == "readout:" {
                    in_readout = true;
                } else {
                    return Err(Error::Malformed {
                        line: lineno,
                        reason: "expected \"readout:\"".into(),
                    });
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 5 || toks[3] != "->" {
                return Err(Error::Malformed {
                    line: lineno,
                    reason: "expected \"<question> <state> <symbol> -> <answer>\"".into(),
                });
            }
            let qs = questions.as_ref().expect("questions parsed");
            let ans = answers.as_ref().expect("answers parsed");
            let q = qs
                .iter()
                .position(|t| t == toks[0])
                .ok_or_else(|| Error::UndeclaredSymbol {
                    line: lineno,
                    token: toks[0].to_string(),
                })?;
            let idx = a
                .config_index(&crate::automaton::Configuration::new(toks[1], toks[2]))
                .map_err(|_| Error::UndeclaredSymbol {
                    line: lineno,
                    token: format!("{} {}", toks[1], toks[2]),
                })?;
            let ans_idx = ans
                .iter()
                .position(|t| t == toks[4])
                .ok_or_else(|| Error::UndeclaredSymbol {
                    line: lineno,
                    token: toks[4].to_string(),
                })?;
            let slot = q * micro_count + idx;
            if readout[slot] != usize::MAX {
                return Err(Error::DuplicateReadout {
                    line: lineno,
                    question: toks[0].to_string(),
                    state: toks[1].to_string(),
                    symbol: toks[2].to_string(),
                });
            }
            readout[slot] = ans_idx;
        }

        let questions = questions.ok_or(Error::MissingSection {
            section: "questions:",
        })?;
        let answers = answers.ok_or(Error::MissingSection { section: "answers:" })?;
        if !in_readout {
            return Err(Error::MissingSection { section: "readout:" });
        }
        let map = Self {
            questions,
            answers,
            micro_count,
            readout,
            scenario,
        };
        map.check_total()?;
        Ok(map)
    }

    /// Readout answering every question with the configuration's state
    /// label. Many-to-one whenever the machine has more than one input.
    pub fn state_readout(a: &Automaton) -> Self {
        let micro_count = a.config_count();
        let readout = (0..micro_count)
            .map(|idx| idx / a.inputs().len())
            .collect();
        Self {
            questions: vec!["state".to_string()],
            answers: a.states().to_vec(),
            micro_count,
            readout,
            scenario: None,
        }
    }

    /// Lossless readout: one distinct answer per configuration, labeled
    /// `state,symbol`.
    pub fn identity_readout(a: &Automaton) -> Self {
        let micro_count = a.config_count();
        Self {
            questions: vec!["which".to_string()],
            answers: (0..micro_count)
                .map(|idx| {
                    let c = a.config_at(idx);
                    format!("{},{}", c.state, c.symbol)
                })
                .collect(),
            micro_count,
            readout: (0..micro_count).collect(),
            scenario: None,
        }
    }

    /// Readout that answers every question with the same symbol: the
    /// observer learns nothing, ever.
    pub fn constant_readout(micro_count: usize, answer: &str) -> Self {
        Self {
            questions: vec!["any".to_string()],
            answers: vec![answer.to_string()],
            micro_count,
            readout: vec![0; micro_count],
            scenario: None,
        }
    }

    pub fn questions(&self) -> &[String] {
        &self.questions
    }

    pub fn answers(&self) -> &[String] {
        &self.answers
    }

    pub fn micro_count(&self) -> usize {
        self.micro_count
    }

    pub fn scenario(&self) -> Option<Scenario> {
        self.scenario
    }

    pub fn with_scenario(mut self, scenario: Scenario) -> Self {
        self.scenario = Some(scenario);
        self
    }

    fn question_index(&self, question: &str) -> Result<usize> {
        self.questions
            .iter()
            .position(|t| t == question)
            .ok_or_else(|| Error::UnknownQuestion(question.to_string()))
    }

    /// The answer emitted for `question` on micro configuration `idx`.
    pub fn answer(&self, question: &str, idx: usize) -> Result<&str> {
        let q = self.question_index(question)?;
        if idx >= self.micro_count {
            return Err(Error::IndexOutOfRange {
                index: idx,
                size: self.micro_count,
            });
        }
        Ok(&self.answers[self.readout[q * self.micro_count + idx]])
    }

    /// All micro indices answering `answer` to `question`.
    pub fn preimage(&self, question: &str, answer: &str) -> Result<BTreeSet<usize>> {
        let q = self.question_index(question)?;
        let a = self
            .answers
            .iter()
            .position(|t| t == answer)
            .ok_or_else(|| Error::UnknownAnswer(answer.to_string()))?;
        Ok((0..self.micro_count)
            .filter(|idx| self.readout[q * self.micro_count + idx] == a)
            .collect())
    }

    /// Element-wise readout of a micro index sequence.
    pub fn coarse_grain_indices(&self, question: &str, indices: &[usize]) -> Result<Vec<String>> {
        indices
            .iter()
            .map(|&idx| self.answer(question, idx).map(|s| s.to_string()))
            .collect()
    }

    /// Per-question injectivity, decided by exhaustive preimage counting.
    pub fn classify(&self) -> InterfaceClassification {
        let mut per_question = BTreeMap::new();
        let mut preimage_sizes = BTreeMap::new();
        let mut overall = MapKind::OneToOne;
        for (q, question) in self.questions.iter().enumerate() {
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for idx in 0..self.micro_count {
                let ans = &self.answers[self.readout[q * self.micro_count + idx]];
                *counts.entry(ans.clone()).or_insert(0) += 1;
            }
            let kind = if counts.values().all(|&n| n <= 1) {
                MapKind::OneToOne
            } else {
                overall = MapKind::ManyToOne;
                MapKind::ManyToOne
            };
            per_question.insert(question.clone(), kind);
            preimage_sizes.insert(question.clone(), counts);
        }
        InterfaceClassification {
            per_question,
            preimage_sizes,
            overall,
            scenario: self.scenario,
        }
    }
}

fn split_section(line: &str, header: &str, lineno: usize) -> Result<Vec<String>> {
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

/// Injectivity verdicts per question plus the recorded (never inferred)
/// scenario tag. `overall` is one-to-one only if every question is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceClassification {
    pub per_question: BTreeMap<String, MapKind>,
    pub preimage_sizes: BTreeMap<String, BTreeMap<String, usize>>,
    pub overall: MapKind,
    pub scenario: Option<Scenario>,
}

/// Micro configuration indices still consistent with all observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    indices: BTreeSet<usize>,
}

impl CandidateSet {
    pub fn full(micro_count: usize) -> Self {
        Self {
            indices: (0..micro_count).collect(),
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self {
            indices: indices.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.indices.contains(&idx)
    }

    /// The lone member, when the set has been narrowed to one.
    pub fn singleton(&self) -> Option<usize> {
        if self.indices.len() == 1 {
            self.indices.iter().next().copied()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    /// Renders as `{(s1,1),(s2,2)}` using the machine's labels.
    pub fn format_with(&self, a: &Automaton) -> String {
        let parts: Vec<String> = self.indices.iter().map(|&i| a.config_at(i).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Sharpens a candidate set through a sequence of macro observations.
///
/// `out[0]` is `prior` cut down to the preimage of the first observation;
/// each later entry pushes the previous set forward through the machine's
/// combined map and intersects with the next observation's preimage. Sizes
/// never grow (the forward map is injective, intersection only removes), and
/// the true trajectory always survives the cut.
pub fn candidate_filter(
    a: &Automaton,
    m: &InterfaceMap,
    question: &str,
    observations: &[&str],
    prior: &CandidateSet,
) -> Result<Vec<CandidateSet>> {
    if observations.is_empty() {
        return Err(Error::InvalidParams("no observations".into()));
    }
    let report = a.check_reversible();
    if !report.reversible {
        return Err(Error::NotReversible {
            collisions: report.collisions.len(),
        });
    }
    let mut out = Vec::with_capacity(observations.len());
    let mut current: BTreeSet<usize> = BTreeSet::new();
    for (t, obs) in observations.iter().enumerate() {
        let compatible = m.preimage(question, obs)?;
        let carried: BTreeSet<usize> = if t == 0 {
            prior.iter().collect()
        } else {
            current
                .iter()
                .map(|&idx| a.step_index(idx))
                .collect::<Result<_>>()?
        };
        current = carried.intersection(&compatible).copied().collect();
        if current.is_empty() {
            return Err(Error::EmptyCandidates { step: t });
        }
        out.push(CandidateSet {
            indices: current.clone(),
        });
    }
    Ok(out)
}

/// Pulls a final-step candidate back to time zero along the inverse map.
pub fn pull_back(a: &Automaton, idx: usize, steps: usize) -> Result<usize> {
    // invert by exhaustive search over the (injective) forward map
    let mut cur = idx;
    for _ in 0..steps {
        cur = (0..a.config_count())
            .find(|&src| a.step_index(src).ok() == Some(cur))
            .ok_or(Error::NotReversible { collisions: 0 })?;
    }
    Ok(cur)
}

/// Outcome of candidate filtering from one starting configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StartOutcome {
    pub start: usize,
    pub final_size: usize,
    pub unique: bool,
}

/// How reconstructible the micro state is through a given readout, swept
/// over every starting configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructibilityReport {
    pub horizon: usize,
    pub per_start: Vec<StartOutcome>,
    pub fraction_unique: f64,
    pub mean_final_size: f64,
}

/// Closed-loop-runs every initial configuration for `horizon` steps, filters
/// candidates against the resulting macro observations, and aggregates how
/// many starts end uniquely identified. Irreversibility through a lossy
/// readout is a matter of degree, and this is the degree.
pub fn reconstructibility_report(
    a: &Automaton,
    m: &InterfaceMap,
    question: &str,
    horizon: usize,
) -> Result<ReconstructibilityReport> {
    let n = a.config_count();
    let mut per_start = Vec::with_capacity(n);
    let prior = CandidateSet::full(n);
    for start in 0..n {
        let t = a.run_closed(&a.config_at(start), horizon)?;
        let indices = trajectory_indices(a, &t)?;
        let observations = m.coarse_grain_indices(question, &indices)?;
        let obs_refs: Vec<&str> = observations.iter().map(|s| s.as_str()).collect();
        let sets = candidate_filter(a, m, question, &obs_refs, &prior)?;
        let last = sets.last().expect("observations non-empty");
        per_start.push(StartOutcome {
            start,
            final_size: last.len(),
            unique: last.len() == 1,
        });
    }
    let unique_count = per_start.iter().filter(|o| o.unique).count();
    let total_size: usize = per_start.iter().map(|o| o.final_size).sum();
    Ok(ReconstructibilityReport {
        horizon,
        fraction_unique: unique_count as f64 / n as f64,
        mean_final_size: total_size as f64 / n as f64,
        per_start,
    })
}

/// Canonical indices of a trajectory's configurations.
pub fn trajectory_indices(a: &Automaton, t: &Trajectory) -> Result<Vec<usize>> {
    t.steps.iter().map(|c| a.config_index(c)).collect()
}

/// Coarse-grains a trajectory: element-wise readout of its configuration
/// indices. Length is preserved.
pub fn coarse_grain(
    a: &Automaton,
    m: &InterfaceMap,
    question: &str,
    t: &Trajectory,
) -> Result<Vec<String>> {
    let indices = trajectory_indices(a, t)?;
    m.coarse_grain_indices(question, &indices)
}
