//! Command-line front end: every operation on text documents, one
//! subcommand each, deterministic output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use crate::automaton::{Automaton, Configuration};
use crate::error::Error;
use crate::experiments::{eraser_experiment, transcendence_experiment, Agent, CompositeSystem};
use crate::information::{parse_patches, sphere_flow, surface_flow, Distribution, LatticeFlow};
use crate::interface::{candidate_filter, coarse_grain, pull_back, CandidateSet, InterfaceMap};
use crate::permutation::to_permutation;
use crate::sig6;

pub const USAGE: &str = "\
usage: revaut <subcommand> [flags] [paths]

subcommands:
  validate <aut>                    check a machine document, report reversibility
  run <aut> --start <state>,<sym> --steps N [--undo]
                                    closed-loop run, optionally undone afterwards
  perm <aut> [--matrix|--cycles]    permutation image, 0/1 matrix, or cycle form
  coarse <aut> <ifc> --question <q> --start <state>,<sym> --steps N
                                    macro view of a closed-loop run
  estimate <aut> <ifc> --question <q> --obs a,b,c
                                    filter candidate micro states from observations
  entropy --dist p1,p2,...          Shannon entropy of a distribution, in bits
  flux --sphere x,c,i | --patches <file>
                                    information flow through a surface, bits/s
  lattice <file> --ticks N          integer continuity-law run
  eraser --k K [--state o,r] [--seed S]
                                    measure then unmeasure, logging every state
  transcend --k K --agent <immanent|transcendent> --trials N --seed S
                                    four-step protocol statistics
  export-dot <aut>                  flow diagram of a reversible machine, DOT form
";

/// A parsed command line: subcommand name, `--flag [value]` options, and
/// positional document paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub subcommand: String,
    pub flags: BTreeMap<String, String>,
    pub paths: Vec<String>,
}

/// Failures split by exit status: usage problems exit 2, domain problems
/// exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult = Result<String, CliError>;

fn usage_err(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Entry point used by the binary: parses, dispatches, prints, and maps the
/// outcome to an exit status.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if args.is_empty() {
        let _ = write!(err, "{USAGE}");
        return 2;
    }
    if args[0] == "help" || args[0] == "--help" || args[0] == "-h" {
        let _ = write!(out, "{USAGE}");
        return 0;
    }
    match parse_invocation(args).and_then(dispatch) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            let _ = write!(err, "{USAGE}");
            2
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Splits raw arguments into an [`Invocation`], rejecting flags the
/// subcommand does not define.
pub fn parse_invocation(args: &[String]) -> Result<Invocation, CliError> {
    let subcommand = args[0].clone();
    let allowed: &[(&str, bool)] = match subcommand.as_str() {
        "validate" | "export-dot" => &[],
        "run" => &[("start", true), ("steps", true), ("undo", false)],
        "perm" => &[("matrix", false), ("cycles", false)],
        "coarse" => &[("question", true), ("start", true), ("steps", true)],
        "estimate" => &[("question", true), ("obs", true)],
        "entropy" => &[("dist", true)],
        "flux" => &[("sphere", true), ("patches", true)],
        "lattice" => &[("ticks", true)],
        "eraser" => &[("k", true), ("state", true), ("seed", true)],
        "transcend" => &[
            ("k", true),
            ("agent", true),
            ("trials", true),
            ("seed", true),
        ],
        other => return Err(usage_err(format!("unknown subcommand \"{other}\""))),
    };

    let mut flags = BTreeMap::new();
    let mut paths = Vec::new();
    let mut i = 1;
    while i < args.len() {
        let arg = &args[i];
        if let Some(name) = arg.strip_prefix("--") {
            let &(_, takes_value) = allowed
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| usage_err(format!("unknown flag \"--{name}\"")))?;
            let value = if takes_value {
                i += 1;
                args.get(i)
                    .cloned()
                    .ok_or_else(|| usage_err(format!("flag \"--{name}\" needs a value")))?
            } else {
                String::new()
            };
            if flags.insert(name.to_string(), value).is_some() {
                return Err(usage_err(format!("flag \"--{name}\" given twice")));
            }
        } else {
            paths.push(arg.clone());
        }
        i += 1;
    }
    Ok(Invocation {
        subcommand,
        flags,
        paths,
    })
}

/// Runs one parsed invocation and returns its full textual output.
pub fn dispatch(inv: Invocation) -> CliResult {
    match inv.subcommand.as_str() {
        "validate" => cmd_validate(&inv),
        "run" => cmd_run(&inv),
        "perm" => cmd_perm(&inv),
        "coarse" => cmd_coarse(&inv),
        "estimate" => cmd_estimate(&inv),
        "entropy" => cmd_entropy(&inv),
        "flux" => cmd_flux(&inv),
        "lattice" => cmd_lattice(&inv),
        "eraser" => cmd_eraser(&inv),
        "transcend" => cmd_transcend(&inv),
        "export-dot" => cmd_export_dot(&inv),
        _ => unreachable!("parse_invocation filters subcommands"),
    }
}

fn one_path<'a>(inv: &'a Invocation, what: &str) -> Result<&'a str, CliError> {
    if inv.paths.len() != 1 {
        return Err(usage_err(format!(
            "{} takes exactly one {what} path",
            inv.subcommand
        )));
    }
    Ok(&inv.paths[0])
}

fn two_paths(inv: &Invocation) -> Result<(&str, &str), CliError> {
    if inv.paths.len() != 2 {
        return Err(usage_err(format!(
            "{} takes an automaton path and an interface path",
            inv.subcommand
        )));
    }
    Ok((&inv.paths[0], &inv.paths[1]))
}

fn no_paths(inv: &Invocation) -> Result<(), CliError> {
    if !inv.paths.is_empty() {
        return Err(usage_err(format!("{} takes no paths", inv.subcommand)));
    }
    Ok(())
}

fn flag<'a>(inv: &'a Invocation, name: &str) -> Result<&'a str, CliError> {
    inv.flags
        .get(name)
        .map(String::as_str)
        .ok_or_else(|| usage_err(format!("flag \"--{name}\" is required")))
}

fn parse_num<T: std::str::FromStr>(value: &str, what: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| usage_err(format!("cannot parse {what} from \"{value}\"")))
}

fn load_automaton(path: &str) -> Result<Automaton, CliError> {
    let text = std::fs::read_to_string(path).map_err(Error::Io)?;
    Ok(Automaton::parse(&text)?)
}

fn parse_start(value: &str) -> Result<Configuration, CliError> {
    let (state, symbol) = value
        .split_once(',')
        .ok_or_else(|| usage_err(format!("expected <state>,<symbol>, got \"{value}\"")))?;
    Ok(Configuration::new(state, symbol))
}

fn cmd_validate(inv: &Invocation) -> CliResult {
    let a = load_automaton(one_path(inv, "automaton")?)?;
    let report = a.check_reversible();
    let mut out = format!(
        "states={} inputs={} outputs={} rows={}\nreversible={}\n",
        a.states().len(),
        a.inputs().len(),
        a.outputs().len(),
        a.config_count(),
        report.reversible
    );
    for group in &report.collisions {
        let members: Vec<String> = group.iter().map(|c| c.to_string()).collect();
        writeln!(out, "collision: {{{}}}", members.join(",")).unwrap();
    }
    Ok(out)
}

fn cmd_run(inv: &Invocation) -> CliResult {
    let path = one_path(inv, "automaton")?;
    let start = parse_start(flag(inv, "start")?)?;
    let steps: usize = parse_num(flag(inv, "steps")?, "step count")?;
    let a = load_automaton(path)?;
    let t = a.run_closed(&start, steps)?;
    let mut out = String::new();
    for c in &t.steps {
        writeln!(out, "{c}").unwrap();
    }
    if inv.flags.contains_key("undo") {
        let restored = a.undo_trajectory(&t)?;
        writeln!(out, "undo -> {restored}").unwrap();
    }
    Ok(out)
}

fn cmd_perm(inv: &Invocation) -> CliResult {
    let a = load_automaton(one_path(inv, "automaton")?)?;
    let p = to_permutation(&a)?;
    match (
        inv.flags.contains_key("matrix"),
        inv.flags.contains_key("cycles"),
    ) {
        (true, true) => Err(usage_err("choose one of --matrix, --cycles")),
        (true, false) => Ok(p.matrix_text()),
        (false, true) => Ok(format!("{}\n", p.cycle_decomposition())),
        (false, false) => {
            let image: Vec<String> = p.image().iter().map(|v| v.to_string()).collect();
            Ok(format!("image: {}\n", image.join(" ")))
        }
    }
}

fn cmd_coarse(inv: &Invocation) -> CliResult {
    let (aut_path, ifc_path) = two_paths(inv)?;
    let start = parse_start(flag(inv, "start")?)?;
    let steps: usize = parse_num(flag(inv, "steps")?, "step count")?;
    let a = load_automaton(aut_path)?;
    let ifc_text = std::fs::read_to_string(ifc_path).map_err(Error::Io)?;
    let m = InterfaceMap::parse(&ifc_text, &a)?;
    let t = a.run_closed(&start, steps)?;
    let macro_seq = coarse_grain(&a, &m, flag(inv, "question")?, &t)?;
    Ok(format!("{}\n", macro_seq.join(" ")))
}

fn cmd_estimate(inv: &Invocation) -> CliResult {
    let (aut_path, ifc_path) = two_paths(inv)?;
    let question = flag(inv, "question")?;
    let obs: Vec<&str> = flag(inv, "obs")?.split(',').collect();
    if obs.iter().any(|o| o.is_empty()) {
        return Err(usage_err("--obs wants a comma-separated symbol list"));
    }
    let a = load_automaton(aut_path)?;
    let ifc_text = std::fs::read_to_string(ifc_path).map_err(Error::Io)?;
    let m = InterfaceMap::parse(&ifc_text, &a)?;
    let prior = CandidateSet::full(a.config_count());
    let sets = candidate_filter(&a, &m, question, &obs, &prior)?;
    let mut out = String::new();
    for (t, set) in sets.iter().enumerate() {
        writeln!(out, "step {t}: size={} {}", set.len(), set.format_with(&a)).unwrap();
    }
    let last = sets.last().expect("observations non-empty");
    match last.singleton() {
        Some(idx) => {
            let initial = pull_back(&a, idx, sets.len() - 1)?;
            writeln!(out, "unique=true").unwrap();
            writeln!(out, "initial={}", a.config_at(initial)).unwrap();
        }
        None => writeln!(out, "unique=false").unwrap(),
    }
    Ok(out)
}

fn cmd_entropy(inv: &Invocation) -> CliResult {
    no_paths(inv)?;
    let probs: Vec<f64> = flag(inv, "dist")?
        .split(',')
        .map(|t| parse_num(t, "probability"))
        .collect::<Result<_, _>>()?;
    let d = Distribution::new(probs)?;
    Ok(format!("{} bits\n", sig6(d.entropy())))
}

fn cmd_flux(inv: &Invocation) -> CliResult {
    no_paths(inv)?;
    let flow = match (inv.flags.get("sphere"), inv.flags.get("patches")) {
        (Some(values), None) => {
            let parts: Vec<&str> = values.split(',').collect();
            if parts.len() != 3 {
                return Err(usage_err("--sphere wants x,c,i"));
            }
            sphere_flow(
                parse_num(parts[0], "radius")?,
                parse_num(parts[1], "speed")?,
                parse_num(parts[2], "bits per carrier")?,
            )?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(Error::Io)?;
            surface_flow(&parse_patches(&text)?)
        }
        _ => return Err(usage_err("give exactly one of --sphere, --patches")),
    };
    Ok(format!("{} bits/s\n", sig6(flow)))
}

fn cmd_lattice(inv: &Invocation) -> CliResult {
    let path = one_path(inv, "lattice")?;
    let ticks: usize = parse_num(flag(inv, "ticks")?, "tick count")?;
    let text = std::fs::read_to_string(path).map_err(Error::Io)?;
    let mut lattice = LatticeFlow::parse(&text)?;
    let mut out = String::new();
    let mut worst_residual: i128 = 0;
    for tick in 1..=ticks {
        let (next, report) = lattice.tick()?;
        worst_residual = worst_residual.max(report.max_residual());
        writeln!(
            out,
            "tick {tick}: total={} residual_max={}",
            report.total_after,
            report.max_residual()
        )
        .unwrap();
        for r in &report.regions {
            writeln!(
                out,
                "  region {}: outward={} inward={} delta_inside={} ok={}",
                r.name, r.outward, r.inward, r.delta_inside, r.holds
            )
            .unwrap();
        }
        lattice = next;
    }
    writeln!(out, "cell  bits").unwrap();
    for (i, bits) in lattice.cells().iter().enumerate() {
        writeln!(out, "{i:<4}  {bits}").unwrap();
    }
    writeln!(
        out,
        "total_bits={} residual_max={worst_residual}",
        lattice.total_bits()
    )
    .unwrap();
    Ok(out)
}

fn cmd_eraser(inv: &Invocation) -> CliResult {
    no_paths(inv)?;
    let k: u64 = parse_num(flag(inv, "k")?, "modulus")?;
    let seed: u64 = match inv.flags.get("seed") {
        Some(v) => parse_num(v, "seed")?,
        None => 0,
    };
    let initial = match inv.flags.get("state") {
        Some(v) => {
            let (o, r) = v
                .split_once(',')
                .ok_or_else(|| usage_err(format!("expected <object>,<register>, got \"{v}\"")))?;
            CompositeSystem::new(k, parse_num(o, "object state")?, parse_num(r, "register")?)?
        }
        None => CompositeSystem::random(k, seed)?,
    };
    let report = eraser_experiment(initial, seed);
    let mut out = String::from("step  object  register\n");
    for (i, s) in report.steps.iter().enumerate() {
        writeln!(out, "{i:<4}  {:<6}  {}", s.object_state(), s.observer_register()).unwrap();
    }
    writeln!(
        out,
        "restored={} trace_left={} mid_register={} k={k} seed={seed}",
        report.restored, report.trace_left, report.mid_register
    )
    .unwrap();
    Ok(out)
}

fn cmd_transcend(inv: &Invocation) -> CliResult {
    no_paths(inv)?;
    let k: u64 = parse_num(flag(inv, "k")?, "outcome count")?;
    let agent = Agent::parse(flag(inv, "agent")?)
        .ok_or_else(|| usage_err("--agent must be \"immanent\" or \"transcendent\""))?;
    let trials: u64 = parse_num(flag(inv, "trials")?, "trial count")?;
    let seed: u64 = parse_num(flag(inv, "seed")?, "seed")?;
    let report = transcendence_experiment(k, agent, trials, seed)?;
    Ok(format!("{report}\n"))
}

fn cmd_export_dot(inv: &Invocation) -> CliResult {
    let a = load_automaton(one_path(inv, "automaton")?)?;
    Ok(export_dot(&a)?)
}

/// Renders the flow diagram of a reversible machine: one node per
/// configuration, one edge per application of the combined map, fixed
/// points as self-loops. Node order follows the canonical indexing, so the
/// output is deterministic.
pub fn export_dot(a: &Automaton) -> Result<String, Error> {
    let p = to_permutation(a)?;
    let mut out = String::from("digraph flow {\n  rankdir=LR;\n");
    for idx in 0..a.config_count() {
        writeln!(out, "  \"{}\";", a.config_at(idx)).unwrap();
    }
    for (idx, &img) in p.image().iter().enumerate() {
        writeln!(out, "  \"{}\" -> \"{}\";", a.config_at(idx), a.config_at(img)).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn no_arguments_is_a_usage_error() {
        let (code, _, err) = invoke(&[]);
        assert_eq!(code, 2);
        assert!(err.contains("usage:"));
    }

    #[test]
    fn unknown_subcommand_and_flag_are_usage_errors() {
        let (code, _, err) = invoke(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown subcommand"));
        let (code, _, err) = invoke(&["entropy", "--energy", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown flag"));
    }

    #[test]
    fn help_prints_usage_on_stdout() {
        let (code, out, _) = invoke(&["help"]);
        assert_eq!(code, 0);
        assert!(out.contains("subcommands:"));
    }

    #[test]
    fn entropy_subcommand_formats_six_digits() {
        let (code, out, _) = invoke(&["entropy", "--dist", "0.5,0.25,0.25"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1.50000 bits\n");
    }

    #[test]
    fn invalid_distribution_is_a_domain_error() {
        let (code, _, err) = invoke(&["entropy", "--dist", "0.5,0.6"]);
        assert_eq!(code, 1);
        assert!(err.contains("invalid distribution"));
    }

    #[test]
    fn sphere_flux_reproduces_the_reference_figure() {
        let (code, out, _) = invoke(&["flux", "--sphere", "0.13,3e8,1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "6.37115e7 bits/s\n");
    }

    #[test]
    fn flux_wants_exactly_one_source() {
        let (code, _, _) = invoke(&["flux"]);
        assert_eq!(code, 2);
        let (code, _, _) = invoke(&["flux", "--sphere", "1,1,1", "--patches", "x"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn missing_file_is_a_domain_error() {
        let (code, _, err) = invoke(&["validate", "/definitely/not/here.aut"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn eraser_logs_three_states() {
        let (code, out, _) = invoke(&["eraser", "--k", "2", "--state", "1,0"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "step  object  register\n\
             0     1       0\n\
             1     1       1\n\
             2     1       0\n\
             restored=true trace_left=false mid_register=1 k=2 seed=0\n"
        );
    }

    #[test]
    fn dot_export_of_the_identity_machine_is_one_self_loop() {
        let a = Automaton::parse("states: a\ninputs: 0\noutputs: 0\ntable:\na 0 -> a 0\n")
            .unwrap();
        assert_eq!(
            export_dot(&a).unwrap(),
            "digraph flow {\n  rankdir=LR;\n  \"(a,0)\";\n  \"(a,0)\" -> \"(a,0)\";\n}\n"
        );
    }

    #[test]
    fn dot_node_count_equals_configuration_count() {
        for p in crate::permutation::all_permutations(4) {
            let a = Automaton::from_permutation(&["a", "b"], &["0", "1"], &p).unwrap();
            let dot = export_dot(&a).unwrap();
            let nodes = dot
                .lines()
                .filter(|l| l.ends_with("\";") && !l.contains("->"))
                .count();
            assert_eq!(nodes, a.config_count());
        }
    }

    #[test]
    fn transcend_transcendent_is_never_falsified() {
        let (code, out, _) = invoke(&[
            "transcend", "--k", "3", "--agent", "transcendent", "--trials", "100", "--seed", "5",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("match_rate=1.00000 verdict=not_falsified"));
    }
}
