//! Shared helpers for the integration suites: seeded random generators for
//! formulas and models, fixture loading, and a brute-force intuitionistic
//! validity oracle independent of the sequent calculus.

#![allow(dead_code)]

use imlkit::decide::preorders;
use imlkit::semantics::valid_in_frame;
use imlkit::structures::json::{self, NamedModel};
use imlkit::structures::Relation;
use imlkit::{Formula, Frame, Model};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::path::PathBuf;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(kind: &str, name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(kind)
        .join(name)
}

pub fn load_model(name: &str) -> NamedModel {
    let path = fixture_path("models", name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    json::parse_model(&text).unwrap_or_else(|e| panic!("parsing {name}: {e}"))
}

pub fn load_script_text(name: &str) -> String {
    let path = fixture_path("scripts", name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

/// Random formula of AST height at most `depth` over the given atoms.
pub fn rand_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth <= 1 {
        return match rng.gen_range(0..6) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    match rng.gen_range(0..8) {
        0 => Formula::boxed(rand_formula(rng, atoms, depth - 1)),
        1 => Formula::dia(rand_formula(rng, atoms, depth - 1)),
        2 | 3 => Formula::imp(
            rand_formula(rng, atoms, depth - 1),
            rand_formula(rng, atoms, depth - 1),
        ),
        4 | 5 => Formula::and(
            rand_formula(rng, atoms, depth - 1),
            rand_formula(rng, atoms, depth - 1),
        ),
        6 | 7 => Formula::or(
            rand_formula(rng, atoms, depth - 1),
            rand_formula(rng, atoms, depth - 1),
        ),
        _ => unreachable!(),
    }
}

/// Random modality-free formula (for the propositional oracle comparisons).
pub fn rand_prop_formula(rng: &mut ChaCha8Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth <= 1 {
        return match rng.gen_range(0..6) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    match rng.gen_range(0..6) {
        0 | 1 => Formula::imp(
            rand_prop_formula(rng, atoms, depth - 1),
            rand_prop_formula(rng, atoms, depth - 1),
        ),
        2 | 3 => Formula::and(
            rand_prop_formula(rng, atoms, depth - 1),
            rand_prop_formula(rng, atoms, depth - 1),
        ),
        _ => Formula::or(
            rand_prop_formula(rng, atoms, depth - 1),
            rand_prop_formula(rng, atoms, depth - 1),
        ),
    }
}

pub fn rand_frame(rng: &mut ChaCha8Rng, max_states: usize) -> Frame {
    let n = rng.gen_range(1..=max_states);
    let mut le = Relation::identity(n);
    let mut r = Relation::empty(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(0.25) {
                le.insert(i, j);
            }
            if rng.gen_bool(0.3) {
                r.insert(i, j);
            }
        }
    }
    Frame::new(le.reflexive_transitive_closure(), r).expect("closed le is a preorder")
}

pub fn rand_model(rng: &mut ChaCha8Rng, max_states: usize, atoms: &[&str]) -> Model {
    let frame = rand_frame(rng, max_states);
    rand_valuation_on(rng, frame, atoms)
}

pub fn rand_valuation_on(rng: &mut ChaCha8Rng, frame: Frame, atoms: &[&str]) -> Model {
    let n = frame.size();
    let val: BTreeMap<String, u64> = atoms
        .iter()
        .map(|a| {
            let raw: u64 = rng.gen_range(0..(1u64 << n));
            (a.to_string(), raw)
        })
        .collect();
    Model::new_upclosed(frame, val)
}

/// Random model whose frame satisfies a predicate, by rejection.
pub fn rand_model_where(
    rng: &mut ChaCha8Rng,
    max_states: usize,
    atoms: &[&str],
    accept: impl Fn(&Frame) -> bool,
) -> Model {
    loop {
        let frame = rand_frame(rng, max_states);
        if accept(&frame) {
            return rand_valuation_on(rng, frame, atoms);
        }
    }
}

/// Random reflexive-relation model (diagonal forced).
pub fn rand_reflexive_model(rng: &mut ChaCha8Rng, max_states: usize, atoms: &[&str]) -> Model {
    let base = rand_frame(rng, max_states);
    let n = base.size();
    let mut r = base.r().clone();
    for i in 0..n {
        r.insert(i, i);
    }
    let frame = Frame::new(base.le().clone(), r).unwrap();
    rand_valuation_on(rng, frame, atoms)
}

/// Random partition-input model: relation made reflexive and symmetric.
pub fn rand_ref_sym_model(rng: &mut ChaCha8Rng, max_states: usize, atoms: &[&str]) -> Model {
    let base = rand_frame(rng, max_states);
    let n = base.size();
    let mut r = base.r().union(&base.r().transpose());
    for i in 0..n {
        r.insert(i, i);
    }
    let frame = Frame::new(base.le().clone(), r).unwrap();
    rand_valuation_on(rng, frame, atoms)
}

/// Brute-force intuitionistic validity: sweep every preorder frame with
/// empty modal relation up to `max_states` states. Modality-free formulas
/// evaluated there follow exactly the intuitionistic Kripke clauses, so this
/// is an oracle for the sequent calculus, not a reimplementation of it.
pub fn ipl_valid_brute(f: &Formula, max_states: usize) -> bool {
    for k in 1..=max_states {
        for &le_mask in preorders(k) {
            let frame = Frame::new(Relation::from_mask(k, le_mask), Relation::empty(k))
                .expect("preorder mask");
            if !valid_in_frame(&frame, f).is_valid() {
                return false;
            }
        }
    }
    true
}
