use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use multichoose::io::{
    coloring_to_json, graph_from_json, instance_from_json, instance_to_json, lists_from_map, plane_graph_from_json,
    read_json, write_json, ColoringJson, GraphJson, InstanceJson, ListsJson, PlaneGraphJson,
};
use multichoose::wagner::build_from_tree;
use multichoose::{
    acceptance, build_counterexample, build_gadget, check_certificate, extend_coloring, solve, tv_color, verify_lemma,
    Budget, CertificateVerdict, CheckOptions, ColorSet, ConstructionTree, Error, Family, GadgetKind, InvalidReason,
    LemmaOutcome, Multicoloring, NonChoosabilityCertificate, Precoloring,
};

const SCHEMAS: &str = "\
JSON formats (map keys are decimal vertex ids):
  graph        {\"n\": N, \"edges\": [[u, v], ...], \"labels\": {\"0\": \"1\", ...}}
  plane graph  graph fields + \"rotation\": {\"v\": [neighbors in cyclic order]}, \"outer_face\": [...]
  instance     graph fields + \"b\": B, \"lists\": {\"v\": [colors]}
  lists        {\"lists\": {\"v\": [colors]}}
  coloring     {\"phi\": {\"v\": [colors]}}
  certificate  {\"hubs\": [...], \"hub_list\": [...], \"b\": B, \"copies\": [{\"tuple\": [[...], ...], \"vertices\": [...]}]}
  tree         {\"type\": \"triangulation\", \"n\": N, \"seed\": S} | {\"type\": \"m8\"}
               | {\"type\": \"paste\", \"left\": T, \"right\": T, \"identify\": [[right_v, left_v], ...]}

Color sets on the command line are written {0,1,2} or 0+1+2.

Exit codes: 0 success/SAT/valid/pass, 1 UNSAT/invalid/fail, 2 usage or input error, 3 budget exceeded.";

#[derive(Parser)]
#[command(name = "multichoose", version, about = "Multicoloring and (a:b)-choosability toolkit", after_help = SCHEMAS)]
struct Cli {
    #[command(flatten)]
    run: RunOptions,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunOptions {
    /// Worker threads for certificate checks (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Single worker; outputs are bit-identical across runs.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Search node budget.
    #[arg(long, global = true, env = "MULTICHOOSE_BUDGET_NODES")]
    budget_nodes: Option<u64>,
    /// Search time budget in seconds.
    #[arg(long, global = true, env = "MULTICHOOSE_BUDGET_SECONDS")]
    budget_seconds: Option<f64>,
}

impl RunOptions {
    fn budget(&self) -> Result<Budget, Error> {
        let max_time = match self.budget_seconds {
            Some(s) if !(s >= 0.0 && s.is_finite()) => {
                return Err(Error::Input(format!("budget seconds must be non-negative, got {s}")))
            }
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        Ok(Budget { max_nodes: self.budget_nodes, max_time })
    }

    fn workers(&self) -> Option<usize> {
        if self.deterministic {
            Some(1)
        } else {
            self.workers
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a gadget instance with its standard palette.
    Gadget {
        #[arg(long)]
        kind: GadgetKind,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a counterexample and its certificate into a directory.
    Counterexample {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Clique size parameter for the clique family (builds K_(t-1)).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide whether an instance has a b-fold coloring.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Pin a vertex, e.g. 3={0,1} or 3=0+1. Repeatable.
        #[arg(long)]
        pin: Vec<String>,
        /// Write the coloring here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check the lemma attached to a gadget.
    VerifyLemma {
        #[arg(long)]
        kind: GadgetKind,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Check a non-choosability certificate against an instance.
    CheckCert {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Color a near-triangulation from lists of size 5m.
    ColorPlanar {
        #[arg(long)]
        plane_graph: PathBuf,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        m: usize,
        /// u,v,setU,setV with sets written {..} or a+b.
        #[arg(long)]
        precolor: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a precolored K2 or K3 to a K5-minor-free graph.
    ColorK5mf {
        #[arg(long)]
        graph: PathBuf,
        /// Construction tree the graph must match.
        #[arg(long)]
        tree: Option<PathBuf>,
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        m: usize,
        /// u,v[,w],setU,setV[,setW] with sets written {..} or a+b.
        #[arg(long)]
        precolor: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest,
}

enum Outcome {
    Success,
    Failure,
    Undetermined,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure) => ExitCode::from(1),
        Ok(Outcome::Undetermined) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => 3,
                Error::Internal(_) => 1,
                _ => {
                    eprintln!("\n{SCHEMAS}");
                    2
                }
            })
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let opts = &cli.run;
    match cli.command {
        Command::Gadget { kind, a, b, out } => {
            let palette = multichoose::gadgets::standard_palette(kind, a, b)?;
            let g = build_gadget(kind, &palette)?;
            write_json(&out, &instance_to_json(&g.instance))?;
            let blocks: Vec<String> = palette.blocks().iter().map(|(k, s)| format!("{k}={s:?}")).collect();
            println!("{kind} ({a},{b}): {} vertices, palette {}", g.instance.n(), blocks.join(" "));
            Ok(Outcome::Success)
        }
        Command::Counterexample { family, a, b, t, out } => {
            let (g, cert) = build_counterexample(family, a, b, t)?;
            fs::create_dir_all(&out)?;
            write_json(out.join("instance.json"), &instance_to_json(&g.instance))?;
            write_json(out.join("certificate.json"), &cert)?;
            println!(
                "{family} ({a},{b}): {} vertices, {} edges, {} copies -> {}",
                g.instance.n(),
                g.graph().edge_count(),
                cert.copies.len(),
                out.display()
            );
            Ok(Outcome::Success)
        }
        Command::Solve { instance, pin, out } => {
            let inst = instance_from_json(&read_json::<InstanceJson>(&instance)?)?;
            let pinned = if pin.is_empty() {
                None
            } else {
                let mut phi = Multicoloring::new(inst.b);
                for p in &pin {
                    let (v, s) = parse_pin(p)?;
                    phi.set(v, s);
                }
                Some(phi)
            };
            let r = solve(&inst, &opts.budget()?, pinned.as_ref())?;
            eprintln!("{} ({} nodes)", if r.is_sat() { "SAT" } else { "UNSAT" }, r.stats.nodes);
            match r.witness {
                Some(w) => {
                    emit(&coloring_to_json(&w), out.as_deref())?;
                    Ok(Outcome::Success)
                }
                None => Ok(Outcome::Failure),
            }
        }
        Command::VerifyLemma { kind, a, b } => {
            let r = verify_lemma(kind, a, b, &opts.budget()?)?;
            println!("{r}");
            if let LemmaOutcome::Refuted(w) = &r.outcome {
                println!("{}", serde_json::to_string(&coloring_to_json(w))?);
            }
            Ok(if r.passed() { Outcome::Success } else { Outcome::Failure })
        }
        Command::CheckCert { instance, cert } => {
            let inst = instance_from_json(&read_json::<InstanceJson>(&instance)?)?;
            let cert: NonChoosabilityCertificate = read_json(&cert)?;
            let check = CheckOptions { budget: opts.budget()?, workers: opts.workers() };
            match check_certificate(&inst, &cert, &check)? {
                CertificateVerdict::Valid => {
                    println!("valid: {} copies, no {}-fold coloring exists", cert.copies.len(), inst.b);
                    Ok(Outcome::Success)
                }
                CertificateVerdict::Invalid(InvalidReason::UndeterminedCopy { copy }) => {
                    println!("undetermined: copy {copy} exceeded the budget");
                    Ok(Outcome::Undetermined)
                }
                CertificateVerdict::Invalid(reason) => {
                    println!("invalid ({}): {reason}", reason.code());
                    Ok(Outcome::Failure)
                }
            }
        }
        Command::ColorPlanar { plane_graph, lists, m, precolor, out } => {
            let pg = plane_graph_from_json(&read_json::<PlaneGraphJson>(&plane_graph)?)?;
            let lists = lists_from_map(pg.n(), &read_json::<ListsJson>(&lists)?.lists)?;
            let (vs, sets) = parse_precolor(&precolor)?;
            let [u, v] = vs[..] else {
                return Err(Error::Input("--precolor needs exactly two vertices".into()));
            };
            let pre = Precoloring { u, v, set_u: sets[0], set_v: sets[1] };
            let phi = tv_color(&pg, &lists, m, pre, false)?;
            emit(&coloring_to_json(&phi), out.as_deref())?;
            Ok(Outcome::Success)
        }
        Command::ColorK5mf { graph, tree, lists, m, precolor, out } => {
            let g = graph_from_json(&read_json::<GraphJson>(&graph)?)?;
            if let Some(tree) = tree {
                let tree: ConstructionTree = read_json(&tree)?;
                if build_from_tree(&tree)? != g {
                    return Err(Error::Input("graph does not match its construction tree".into()));
                }
            }
            let lists = lists_from_map(g.n(), &read_json::<ListsJson>(&lists)?.lists)?;
            let (vs, sets) = parse_precolor(&precolor)?;
            let phi = extend_coloring(&g, &lists, m, &vs, &sets)?;
            emit(&coloring_to_json(&phi), out.as_deref())?;
            Ok(Outcome::Success)
        }
        Command::Selftest => {
            println!(
                "seeds: oracle {:#x}, colorer {:#x}, k5mf {:#x}, series-parallel {:#x}",
                acceptance::ORACLE_SEED,
                acceptance::TV_SEED,
                acceptance::WAGNER_SEED,
                acceptance::SP_SEED
            );
            let reports = acceptance::run_all(|r| println!("{r}"));
            let passed = reports.iter().filter(|r| r.passed).count();
            println!("{passed} of {} criteria passed", reports.len());
            Ok(if passed == reports.len() { Outcome::Success } else { Outcome::Failure })
        }
    }
}

fn emit(value: &ColoringJson, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => write_json(path, value),
        None => {
            println!("{}", serde_json::to_string(value)?);
            Ok(())
        }
    }
}

fn parse_set(s: &str) -> Result<ColorSet, Error> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    let colors = inner
        .split(['+', ','])
        .filter(|c| !c.trim().is_empty())
        .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Input(format!("bad color {c:?} in {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let set = ColorSet::try_from_colors(colors.iter().copied())
        .map_err(|c| Error::Input(format!("color {c} is out of range")))?;
    if set.len() != colors.len() {
        return Err(Error::Input(format!("repeated color in {s:?}")));
    }
    Ok(set)
}

fn parse_vertex(s: &str) -> Result<usize, Error> {
    s.trim().parse().map_err(|_| Error::Input(format!("bad vertex {s:?}")))
}

fn parse_pin(s: &str) -> Result<(usize, ColorSet), Error> {
    let (v, set) = s.split_once('=').ok_or_else(|| Error::Input(format!("--pin expects v=colors, got {s:?}")))?;
    Ok((parse_vertex(v)?, parse_set(set)?))
}

/// Splits `u,v,{0,1},{2,3}` at top-level commas: the first half are
/// vertices, the second half their color sets.
fn parse_precolor(s: &str) -> Result<(Vec<usize>, Vec<ColorSet>), Error> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    if parts.len() % 2 != 0 || parts.len() < 4 {
        return Err(Error::Input(format!("--precolor expects vertices then their sets, got {s:?}")));
    }
    let (vs, sets) = parts.split_at(parts.len() / 2);
    Ok((
        vs.iter().map(|v| parse_vertex(v)).collect::<Result<_, _>>()?,
        sets.iter().map(|c| parse_set(c)).collect::<Result<_, _>>()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cs: &[u32]) -> ColorSet {
        ColorSet::try_from_colors(cs.iter().copied()).unwrap()
    }

    #[test]
    fn precolor_forms() {
        let (vs, sets) = parse_precolor("0,2,{1,3},4+5").unwrap();
        assert_eq!(vs, vec![0, 2]);
        assert_eq!(sets, vec![set(&[1, 3]), set(&[4, 5])]);
        assert_eq!(parse_precolor("0,1,2,{0},{1},{2}").unwrap().0, vec![0, 1, 2]);
        assert!(parse_precolor("0,1,{0}").is_err());
        assert!(parse_precolor("0,x,{0},{1}").is_err());
        assert!(parse_pin("3={1,1}").is_err());
        assert_eq!(parse_pin("3=7").unwrap(), (3, set(&[7])));
    }
}
