//! Command-line front end. Exit codes: 0 = query answered positively,
//! 1 = query answered negatively (countermodel found, proof rejected, ...),
//! 2 = usage, IO or format error.

use clap::{Parser, Subcommand, ValueEnum};
use imlkit::decide::{
    countermodel_search, definability_check, SearchBudget, SearchOutcome,
};
use imlkit::filtration::{largest_filtration, smallest_filtration};
use imlkit::proofsys::{check_derivation, parse_script};
use imlkit::semantics::{sat, valid_in_frame, SemanticsVariant, Validity};
use imlkit::structures::json::{self, NamedModel};
use imlkit::structures::{implied_properties_check, FrameClassSpec, FrameProperty};
use imlkit::transform::{
    double_reflexive, double_strict, intersectional_update, partitionize, rooted_join,
    StateMap, StateOrigin,
};
use imlkit::{parse, Model};
use serde_json::json;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "imlkit")]
#[command(about = "Finite-model tools for intuitionistic modal logics on birelational frames")]
#[command(version)]
struct Cli {
    /// Output format for yes/no queries
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical form
    Parse { formula: String },
    /// Evaluate a formula at a state of a model
    Sat {
        model: String,
        state: String,
        formula: String,
        /// Diamond semantics: new, fs or wij
        #[arg(long, default_value = "new")]
        variant: String,
    },
    /// Check validity of a formula on the frame of a model file
    Valid { model: String, formula: String },
    /// Report every frame predicate of a frame file
    Props { frame: String },
    /// Bounded countermodel search over a frame class
    Decide {
        formula: String,
        /// Frame class, e.g. all, fc, ref+tra, fbdc
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        /// Keep only one frame per isomorphism class
        #[arg(long)]
        dedup_isomorphic: bool,
        /// Stop after this many frames
        #[arg(long)]
        max_frames: Option<u64>,
        /// Stop after this many seconds
        #[arg(long)]
        time_limit: Option<f64>,
    },
    /// Filter a model through the closure of a formula
    Filter {
        model: String,
        formula: String,
        /// Use the largest filtration instead of the smallest
        #[arg(long)]
        largest: bool,
    },
    /// Apply a model construction
    Transform {
        model: String,
        #[arg(long)]
        op: TransformOp,
        /// Second model for --op join
        #[arg(long)]
        with: Option<String>,
        /// Join state in the first model
        #[arg(long)]
        at: Option<String>,
        /// Join state in the second model
        #[arg(long)]
        with_at: Option<String>,
    },
    /// Check a proof script
    Prove { script: String },
    /// Exhaustive modal-definability check for a frame predicate
    Defcheck {
        formula: String,
        #[arg(long)]
        predicate: String,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Intersect,
    Double,
    DoubleRefl,
    Partition,
    Join,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_model(path: &str) -> Result<NamedModel, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    json::parse_model(&text).map_err(|e| format!("{path}: {e}"))
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Parse { formula } => {
            let f = parse(formula).map_err(|e| e.to_string())?;
            if cli.format == Format::Json {
                let atoms: Vec<String> = f.atoms().into_iter().collect();
                println!(
                    "{}",
                    json!({
                        "canonical": f.to_string(),
                        "length": f.len(),
                        "atoms": atoms,
                    })
                );
            } else {
                println!("{f}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sat {
            model,
            state,
            formula,
            variant,
        } => {
            let nm = read_model(model)?;
            let s = nm.state_id(state).map_err(|e| e.to_string())?;
            let f = parse(formula).map_err(|e| e.to_string())?;
            let v = SemanticsVariant::parse(variant)
                .ok_or_else(|| format!("unknown variant {variant:?}"))?;
            let holds = sat(&nm.model, s, &f, v);
            if cli.format == Format::Json {
                println!("{}", json!({ "sat": holds }));
            } else {
                println!("{holds}");
            }
            Ok(answer(holds))
        }
        Command::Valid { model, formula } => {
            let nm = read_model(model)?;
            let f = parse(formula).map_err(|e| e.to_string())?;
            match valid_in_frame(nm.frame(), &f) {
                Validity::Valid => {
                    if cli.format == Format::Json {
                        println!("{}", json!({ "valid": true }));
                    } else {
                        println!("valid");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Validity::Refuted { val, state } => {
                    let witness: BTreeMap<String, Vec<String>> = val
                        .iter()
                        .map(|(a, &set)| (a.clone(), nm.set_names(set)))
                        .collect();
                    println!(
                        "{}",
                        json!({
                            "valid": false,
                            "countervaluation": witness,
                            "state": nm.names[state],
                        })
                    );
                    Ok(answer(false))
                }
            }
        }
        Command::Props { frame } => {
            let nm = read_model(frame)?;
            let mut props = serde_json::Map::new();
            for p in FrameProperty::ALL {
                props.insert(p.name().to_string(), json!(p.check(nm.frame())));
            }
            let implications: Vec<serde_json::Value> = implied_properties_check(nm.frame())
                .iter()
                .map(|c| {
                    json!({
                        "stronger": c.stronger.name(),
                        "weaker": c.weaker.name(),
                        "premise_holds": c.premise_holds,
                        "implication_holds": c.implication_holds,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "predicates": props,
                    "implications": implications,
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Decide {
            formula,
            class,
            max_states,
            dedup_isomorphic,
            max_frames,
            time_limit,
        } => {
            let f = parse(formula).map_err(|e| e.to_string())?;
            let spec = FrameClassSpec::parse(class).map_err(|e| e.to_string())?;
            let budget = SearchBudget {
                max_states: (*max_states).max(1),
                dedup_isomorphic: *dedup_isomorphic,
                max_frames: *max_frames,
                time_limit: time_limit.map(Duration::from_secs_f64),
            };
            eprintln!(
                "searching frames of up to {} states over class {} ...",
                budget.max_states, spec
            );
            let result = countermodel_search(&f, &spec, &budget);
            match result.outcome {
                SearchOutcome::Countermodel {
                    model,
                    state,
                    frames_examined,
                } => {
                    let named = NamedModel {
                        names: json::default_names(model.frame().size()),
                        model,
                    };
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "outcome": "countermodel",
                            "model": json::to_file(&named),
                            "state": named.names[state],
                            "frames_examined": frames_examined,
                            "complete": result.complete,
                        }))
                        .unwrap()
                    );
                    Ok(answer(false))
                }
                SearchOutcome::NoneUpToBudget {
                    frames_examined,
                    exhausted,
                } => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "outcome": "none_up_to_budget",
                            "frames_examined": frames_examined,
                            "exhausted": exhausted,
                            "complete": result.complete,
                        }))
                        .unwrap()
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Filter {
            model,
            formula,
            largest,
        } => {
            let nm = read_model(model)?;
            let f = parse(formula).map_err(|e| e.to_string())?;
            let sigma = f.closure();
            let built = if *largest {
                largest_filtration(&nm.model, &sigma)
            } else {
                smallest_filtration(&nm.model, &sigma)
            }
            .map_err(|e| e.to_string())?;
            let (filtered, setting) = built;
            // classes keep the name of their least original state
            let names: Vec<String> = setting
                .representatives()
                .iter()
                .map(|&s| nm.names[s].clone())
                .collect();
            let class_map: BTreeMap<String, String> = (0..nm.names.len())
                .map(|s| (nm.names[s].clone(), names[setting.class_of[s]].clone()))
                .collect();
            let named = NamedModel {
                model: filtered,
                names,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "model": json::to_file(&named),
                    "class_map": class_map,
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            model,
            op,
            with,
            at,
            with_at,
        } => {
            let nm = read_model(model)?;
            let (out, map): (Model, Option<StateMap>) = match op {
                TransformOp::Intersect => (intersectional_update(&nm.model), None),
                TransformOp::Double => {
                    let (m, map) = double_strict(&nm.model);
                    (m, Some(map))
                }
                TransformOp::DoubleRefl => {
                    let (m, map) = double_reflexive(&nm.model).map_err(|e| e.to_string())?;
                    (m, Some(map))
                }
                TransformOp::Partition => {
                    let (m, map) = partitionize(&nm.model).map_err(|e| e.to_string())?;
                    (m, Some(map))
                }
                TransformOp::Join => {
                    let other = read_model(with.as_deref().ok_or("--op join needs --with")?)?;
                    let s1 = nm
                        .state_id(at.as_deref().ok_or("--op join needs --at")?)
                        .map_err(|e| e.to_string())?;
                    let s2 = other
                        .state_id(with_at.as_deref().ok_or("--op join needs --with-at")?)
                        .map_err(|e| e.to_string())?;
                    let (m, map) = rooted_join(&nm.model, s1, &other.model, s2);
                    // names for the join refer to both inputs
                    let names = map
                        .0
                        .iter()
                        .map(|o| match *o {
                            StateOrigin::Root => "root".to_string(),
                            StateOrigin::Left(s) => format!("1.{}", nm.names[s]),
                            StateOrigin::Right(s) => format!("2.{}", other.names[s]),
                            _ => unreachable!("join origins"),
                        })
                        .collect();
                    let named = NamedModel { model: m, names };
                    println!("{}", json::to_json(&named));
                    return Ok(ExitCode::SUCCESS);
                }
            };
            let names = match &map {
                None => nm.names.clone(),
                Some(map) => map
                    .0
                    .iter()
                    .map(|o| match *o {
                        StateOrigin::Original(s) => nm.names[s].clone(),
                        StateOrigin::Copy { state, tag } => {
                            format!("{}.{tag}", nm.names[state])
                        }
                        StateOrigin::PairClass { state, partner } => {
                            let (x, y) = (state.min(partner), state.max(partner));
                            format!("({},{{{},{}}})", nm.names[state], nm.names[x], nm.names[y])
                        }
                        _ => unreachable!("origin for this op"),
                    })
                    .collect(),
            };
            let named = NamedModel { model: out, names };
            println!("{}", json::to_json(&named));
            Ok(ExitCode::SUCCESS)
        }
        Command::Prove { script } => {
            let text = std::fs::read_to_string(script).map_err(|e| format!("{script}: {e}"))?;
            let d = parse_script(&text).map_err(|e| e.to_string())?;
            let report = check_derivation(&d);
            match &report.failure {
                None => {
                    let kind = if report.conclusion_is_theorem() {
                        "theorem"
                    } else {
                        "derivation from hypotheses"
                    };
                    if cli.format == Format::Json {
                        println!(
                            "{}",
                            json!({
                                "ok": true,
                                "kind": kind,
                                "hypotheses": report.hypotheses,
                            })
                        );
                    } else {
                        println!("ok ({kind})");
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Some((line, reason)) => {
                    if cli.format == Format::Json {
                        println!(
                            "{}",
                            json!({ "ok": false, "line": line, "reason": reason })
                        );
                    } else {
                        println!("rejected at line {line}: {reason}");
                    }
                    Ok(answer(false))
                }
            }
        }
        Command::Defcheck {
            formula,
            predicate,
            max_states,
        } => {
            let f = parse(formula).map_err(|e| e.to_string())?;
            let p = FrameProperty::from_name(predicate).map_err(|e| e.to_string())?;
            let outcome = definability_check(&f, p, (*max_states).max(1));
            let frame_json = |frame: &imlkit::Frame| {
                let named = NamedModel {
                    names: json::default_names(frame.size()),
                    model: Model::new(frame.clone(), BTreeMap::new()).unwrap(),
                };
                json::to_file(&named)
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "defines": outcome.holds,
                    "frames_checked": outcome.frames_checked,
                    "refuting_in_class": outcome
                        .refuting_in_class
                        .as_ref()
                        .map(|(frame, _, state)| json!({
                            "frame": frame_json(frame),
                            "state": format!("s{state}"),
                        })),
                    "validating_outside": outcome
                        .validating_outside
                        .as_ref()
                        .map(|frame| json!({ "frame": frame_json(frame) })),
                }))
                .unwrap()
            );
            Ok(answer(outcome.holds))
        }
    }
}

fn answer(positive: bool) -> ExitCode {
    if positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
