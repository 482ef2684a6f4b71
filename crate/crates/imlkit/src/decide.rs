//! Exhaustive finite-frame enumeration, bounded countermodel search, and
//! definability checking.
//!
//! Frames are streamed in a canonical order: by state count, then by the
//! row-major bitmask of `le` (over all preorders), then by the bitmask of
//! `r`. Valuations are swept lexicographically over atom-sorted up-set
//! bitmasks, so witnesses are deterministic and parallel runs agree with
//! sequential ones.

use crate::formula::Formula;
use crate::semantics::{CompiledFormula, FrameContext, SemanticsVariant};
use crate::structures::{Frame, FrameClassSpec, FrameProperty, Model, Relation};
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

/// Resource bounds for a search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_states: usize,
    pub dedup_isomorphic: bool,
    pub max_frames: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn with_max_states(max_states: usize) -> SearchBudget {
        assert!(max_states >= 1);
        SearchBudget {
            max_states,
            dedup_isomorphic: false,
            max_frames: None,
            time_limit: None,
        }
    }

    pub fn dedup(mut self, on: bool) -> SearchBudget {
        self.dedup_isomorphic = on;
        self
    }
}

/// Search result. `NoneUpToBudget` is a membership proof only when
/// `complete` is set, which requires `max_states >= 2^len(formula)`.
#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Countermodel {
        model: Model,
        state: usize,
        frames_examined: u64,
    },
    NoneUpToBudget {
        frames_examined: u64,
        exhausted: bool,
    },
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub complete: bool,
}

impl SearchResult {
    pub fn countermodel(&self) -> Option<(&Model, usize)> {
        match &self.outcome {
            SearchOutcome::Countermodel { model, state, .. } => Some((model, *state)),
            SearchOutcome::NoneUpToBudget { .. } => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Preorder enumeration

/// All preorders on `k` labeled points as row-major bitmasks, ascending.
/// Generated by deciding non-diagonal pairs one at a time, propagating
/// transitive consequences and pruning contradictions.
pub fn preorders(k: usize) -> &'static [u64] {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static [u64]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(&v) = guard.get(&k) {
        return v;
    }
    let generated = generate_preorders(k);
    let leaked: &'static [u64] = Box::leak(generated.into_boxed_slice());
    guard.insert(k, leaked);
    leaked
}

fn generate_preorders(k: usize) -> Vec<u64> {
    assert!(k >= 1 && k * k <= 64, "preorder carrier out of range");
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    let diag = {
        let mut d = 0u64;
        for i in 0..k {
            d |= 1 << (i * k + i);
        }
        d
    };
    let mut out = Vec::new();
    let mut rel = diag;
    let mut banned = 0u64;
    decide_pair(k, &pairs, 0, &mut rel, &mut banned, &mut out);
    out.sort_unstable();
    out
}

fn trans_close(k: usize, mut rel: u64) -> u64 {
    loop {
        let mut next = rel;
        for i in 0..k {
            let row_i = (rel >> (i * k)) & ((1 << k) - 1);
            let mut mids = row_i;
            while mids != 0 {
                let j = mids.trailing_zeros() as usize;
                mids &= mids - 1;
                next |= ((rel >> (j * k)) & ((1 << k) - 1)) << (i * k);
            }
        }
        if next == rel {
            return rel;
        }
        rel = next;
    }
}

fn decide_pair(
    k: usize,
    pairs: &[(usize, usize)],
    idx: usize,
    rel: &mut u64,
    banned: &mut u64,
    out: &mut Vec<u64>,
) {
    // find next undecided pair
    let mut idx = idx;
    while idx < pairs.len() {
        let bit = 1u64 << (pairs[idx].0 * k + pairs[idx].1);
        if *rel & bit == 0 && *banned & bit == 0 {
            break;
        }
        idx += 1;
    }
    if idx == pairs.len() {
        out.push(*rel);
        return;
    }
    let bit = 1u64 << (pairs[idx].0 * k + pairs[idx].1);

    // branch: pair absent
    *banned |= bit;
    decide_pair(k, pairs, idx + 1, rel, banned, out);
    *banned &= !bit;

    // branch: pair present, with transitive consequences
    let closed = trans_close(k, *rel | bit);
    if closed & *banned == 0 {
        let saved = *rel;
        *rel = closed;
        decide_pair(k, pairs, idx + 1, rel, banned, out);
        *rel = saved;
    }
}

// ---------------------------------------------------------------------------
// Frame enumeration

/// Stream every frame with at most `max_states` states satisfying `spec`,
/// in canonical order. With `dedup`, only the least frame of each
/// isomorphism class is yielded.
pub fn enumerate_frames(
    max_states: usize,
    spec: &FrameClassSpec,
    dedup: bool,
) -> impl Iterator<Item = Frame> + '_ {
    (1..=max_states).flat_map(move |k| {
        let les = preorders(k);
        let r_count: u64 = 1 << (k * k);
        les.iter().flat_map(move |&le_mask| {
            (0..r_count).filter_map(move |r_mask| {
                if dedup && !is_canonical_form(k, le_mask, r_mask) {
                    return None;
                }
                let frame = Frame::new(
                    Relation::from_mask(k, le_mask),
                    Relation::from_mask(k, r_mask),
                )
                .expect("enumerated le is a preorder");
                spec.check(&frame).then_some(frame)
            })
        })
    })
}

fn permutations(k: usize) -> &'static [Vec<usize>] {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static [Vec<usize>]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(&v) = guard.get(&k) {
        return v;
    }
    fn build(k: usize) -> Vec<Vec<usize>> {
        if k == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for smaller in build(k - 1) {
            for pos in 0..k {
                let mut perm = smaller.clone();
                perm.insert(pos, k - 1);
                out.push(perm);
            }
        }
        out
    }
    let leaked: &'static [Vec<usize>] = Box::leak(build(k).into_boxed_slice());
    guard.insert(k, leaked);
    leaked
}

fn permute_mask(k: usize, mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    for i in 0..k {
        for j in 0..k {
            if mask >> (i * k + j) & 1 == 1 {
                out |= 1 << (perm[i] * k + perm[j]);
            }
        }
    }
    out
}

/// A frame is the canonical member of its isomorphism class when no state
/// relabeling yields a lexicographically smaller `(le, r)` pair.
fn is_canonical_form(k: usize, le_mask: u64, r_mask: u64) -> bool {
    permutations(k).iter().all(|perm| {
        let p_le = permute_mask(k, le_mask, perm);
        let p_r = permute_mask(k, r_mask, perm);
        (le_mask, r_mask) <= (p_le, p_r)
    })
}

// ---------------------------------------------------------------------------
// Countermodel search

fn worker_count() -> usize {
    std::env::var("IMLKIT_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

struct FrameHit {
    k: usize,
    le_mask: u64,
    r_mask: u64,
}

/// Search for a model of at most `budget.max_states` states, based on a
/// frame in `spec`, refuting `f` at some state. Frames, valuations and
/// states are scanned in canonical order; the first witness is returned.
/// Worker count comes from `IMLKIT_THREADS`, defaulting to the machine's
/// parallelism; parallel runs return the same witness as sequential ones.
pub fn countermodel_search(
    f: &Formula,
    spec: &FrameClassSpec,
    budget: &SearchBudget,
) -> SearchResult {
    countermodel_search_with_workers(f, spec, budget, worker_count())
}

pub fn countermodel_search_with_workers(
    f: &Formula,
    spec: &FrameClassSpec,
    budget: &SearchBudget,
    workers: usize,
) -> SearchResult {
    let compiled = CompiledFormula::new(f);
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    let mut frames_examined: u64 = 0;
    let mut exhausted = true;
    let mut hit: Option<FrameHit> = None;

    'sizes: for k in 1..=budget.max_states {
        let les = preorders(k);
        let r_count: u64 = 1 << (k * k);
        let total: u64 = les.len() as u64 * r_count;
        let best = AtomicU64::new(u64::MAX);
        let stop = AtomicBool::new(false);
        let counted = AtomicU64::new(0);
        let next_block = AtomicU64::new(0);
        let budget_left = budget
            .max_frames
            .map(|m| m.saturating_sub(frames_examined));
        let workers = workers.clamp(1, 64);
        const BLOCK: u64 = 4096;

        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| {
                    let mut masks = Vec::new();
                    let mut upset_cache: Option<(u64, Vec<u64>)> = None;
                    loop {
                        let start = next_block.fetch_add(BLOCK, Ordering::Relaxed);
                        if start >= total || stop.load(Ordering::Relaxed) {
                            return;
                        }
                        let end = (start + BLOCK).min(total);
                        for index in start..end {
                            if index >= best.load(Ordering::Relaxed) {
                                return;
                            }
                            if stop.load(Ordering::Relaxed) {
                                return;
                            }
                            if let Some(deadline) = deadline {
                                if Instant::now() >= deadline {
                                    stop.store(true, Ordering::Relaxed);
                                    return;
                                }
                            }
                            let le_mask = les[(index / r_count) as usize];
                            let r_mask = index % r_count;
                            if budget.dedup_isomorphic
                                && !is_canonical_form(k, le_mask, r_mask)
                            {
                                continue;
                            }
                            let frame = Frame::new(
                                Relation::from_mask(k, le_mask),
                                Relation::from_mask(k, r_mask),
                            )
                            .expect("enumerated le is a preorder");
                            if !spec.check(&frame) {
                                continue;
                            }
                            if let Some(limit) = budget_left {
                                if counted.fetch_add(1, Ordering::Relaxed) >= limit {
                                    stop.store(true, Ordering::Relaxed);
                                    return;
                                }
                            } else {
                                counted.fetch_add(1, Ordering::Relaxed);
                            }
                            let ctx = FrameContext::new(&frame);
                            let upsets = match &upset_cache {
                                Some((cached_le, ups)) if *cached_le == le_mask => ups.clone(),
                                _ => {
                                    let ups = frame.upsets();
                                    upset_cache = Some((le_mask, ups.clone()));
                                    ups
                                }
                            };
                            if frame_has_countermodel(&compiled, &ctx, &upsets, &mut masks) {
                                best.fetch_min(index, Ordering::Relaxed);
                            }
                        }
                    }
                });
            }
        });

        let mut examined_this_size = counted.load(Ordering::Relaxed);
        if let Some(limit) = budget_left {
            examined_this_size = examined_this_size.min(limit);
        }
        if stop.load(Ordering::Relaxed) {
            exhausted = false;
        }
        let best_index = best.load(Ordering::Relaxed);
        if best_index != u64::MAX {
            // frames_examined is reported canonically: every spec frame at
            // earlier sizes plus the index within this size.
            frames_examined += count_spec_frames_before(
                k,
                les,
                r_count,
                best_index,
                spec,
                budget.dedup_isomorphic,
            );
            hit = Some(FrameHit {
                k,
                le_mask: les[(best_index / r_count) as usize],
                r_mask: best_index % r_count,
            });
            break 'sizes;
        }
        frames_examined += examined_this_size;
        if !exhausted {
            break;
        }
    }

    let complete = exhausted
        && hit.is_none()
        && (budget.max_states as u128) >= (1u128 << f.len().min(127));
    match hit {
        Some(FrameHit { k, le_mask, r_mask }) => {
            let frame = Frame::new(
                Relation::from_mask(k, le_mask),
                Relation::from_mask(k, r_mask),
            )
            .expect("winning le is a preorder");
            let (model, state) =
                first_refutation(&compiled, &frame).expect("winning frame refutes the formula");
            debug_assert!(spec.check(model.frame()));
            debug_assert!(!crate::semantics::sat(&model, state, f, SemanticsVariant::New));
            SearchResult {
                outcome: SearchOutcome::Countermodel {
                    model,
                    state,
                    frames_examined: frames_examined + 1,
                },
                complete: false,
            }
        }
        None => SearchResult {
            outcome: SearchOutcome::NoneUpToBudget {
                frames_examined,
                exhausted,
            },
            complete,
        },
    }
}

fn count_spec_frames_before(
    k: usize,
    les: &[u64],
    r_count: u64,
    best_index: u64,
    spec: &FrameClassSpec,
    dedup: bool,
) -> u64 {
    let mut count = 0;
    for index in 0..best_index {
        let le_mask = les[(index / r_count) as usize];
        let r_mask = index % r_count;
        if dedup && !is_canonical_form(k, le_mask, r_mask) {
            continue;
        }
        let frame = Frame::new(
            Relation::from_mask(k, le_mask),
            Relation::from_mask(k, r_mask),
        )
        .expect("enumerated le is a preorder");
        if spec.check(&frame) {
            count += 1;
        }
    }
    count
}

/// Odometer sweep over all valuations, re-evaluating only the subformulas
/// that depend on the deepest changed slot.
fn frame_has_countermodel(
    compiled: &CompiledFormula,
    ctx: &FrameContext,
    upsets: &[u64],
    masks: &mut Vec<u64>,
) -> bool {
    let k = compiled.atoms.len();
    if k == 0 {
        return ctx.eval(compiled, &[], SemanticsVariant::New, masks) != ctx.all;
    }
    let mut idx = vec![0usize; k];
    let mut val = vec![upsets[0]; k];
    let mut root = ctx.eval(compiled, &val, SemanticsVariant::New, masks);
    loop {
        if root != ctx.all {
            return true;
        }
        let mut d = k as isize - 1;
        loop {
            if d < 0 {
                return false;
            }
            let du = d as usize;
            idx[du] += 1;
            if idx[du] < upsets.len() {
                val[du] = upsets[idx[du]];
                break;
            }
            idx[du] = 0;
            val[du] = upsets[0];
            d -= 1;
        }
        root = ctx.eval_from(compiled, &val, SemanticsVariant::New, masks, d);
    }
}

/// First refuting (valuation, state) of `f` on `frame`, in canonical order.
fn first_refutation(compiled: &CompiledFormula, frame: &Frame) -> Option<(Model, usize)> {
    let ctx = FrameContext::new(frame);
    let upsets = frame.upsets();
    let mut val = vec![0u64; compiled.atoms.len()];
    let mut masks = Vec::new();
    first_refutation_rec(compiled, &ctx, frame, &upsets, &mut val, &mut masks, 0)
}

fn first_refutation_rec(
    compiled: &CompiledFormula,
    ctx: &FrameContext,
    frame: &Frame,
    upsets: &[u64],
    val: &mut Vec<u64>,
    masks: &mut Vec<u64>,
    depth: usize,
) -> Option<(Model, usize)> {
    if depth == val.len() {
        let root = ctx.eval(compiled, val, SemanticsVariant::New, masks);
        let failing = ctx.all & !root;
        if failing != 0 {
            let assignment: BTreeMap<String, u64> = compiled
                .atoms
                .iter()
                .cloned()
                .zip(val.iter().copied())
                .collect();
            let model = Model::new(frame.clone(), assignment).expect("upsets are closed");
            return Some((model, failing.trailing_zeros() as usize));
        }
        return None;
    }
    for &u in upsets {
        val[depth] = u;
        if let Some(hit) =
            first_refutation_rec(compiled, ctx, frame, upsets, val, masks, depth + 1)
        {
            return Some(hit);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Definability

/// Outcome of an exhaustive definability check at a given size bound.
#[derive(Clone, Debug)]
pub struct DefinabilityOutcome {
    pub holds: bool,
    /// Frame in the class refuting the formula, with its countervaluation.
    pub refuting_in_class: Option<(Frame, BTreeMap<String, u64>, usize)>,
    /// Frame outside the class validating the formula.
    pub validating_outside: Option<Frame>,
    pub frames_checked: u64,
}

/// Does `f` modally define the class of `predicate` over all frames with at
/// most `max_states` states? Checks the biconditional frame by frame and
/// returns the first witness of each failure kind.
pub fn definability_check(
    f: &Formula,
    predicate: FrameProperty,
    max_states: usize,
) -> DefinabilityOutcome {
    let mut outcome = DefinabilityOutcome {
        holds: true,
        refuting_in_class: None,
        validating_outside: None,
        frames_checked: 0,
    };
    let all = FrameClassSpec::all();
    for frame in enumerate_frames(max_states, &all, false) {
        outcome.frames_checked += 1;
        let in_class = predicate.check(&frame);
        let validity = crate::semantics::valid_in_frame(&frame, f);
        match (in_class, validity) {
            (true, crate::semantics::Validity::Refuted { val, state }) => {
                outcome.holds = false;
                if outcome.refuting_in_class.is_none() {
                    outcome.refuting_in_class = Some((frame, val, state));
                }
            }
            (false, crate::semantics::Validity::Valid) => {
                outcome.holds = false;
                if outcome.validating_outside.is_none() {
                    outcome.validating_outside = Some(frame);
                }
            }
            _ => {}
        }
        if outcome.refuting_in_class.is_some() && outcome.validating_outside.is_some() {
            break;
        }
    }
    outcome
}

// ---------------------------------------------------------------------------
// Rule preservation

#[derive(Clone, Debug)]
pub struct RuleInstanceResult {
    pub premise: Formula,
    pub conclusion: Formula,
    pub preserved: bool,
}

#[derive(Clone, Debug)]
pub struct RulePreservationReport {
    /// (rule name, instances) for R1, R2, R3, R4.
    pub rules: Vec<(&'static str, Vec<RuleInstanceResult>)>,
}

impl RulePreservationReport {
    pub fn all_preserved(&self) -> bool {
        self.rules
            .iter()
            .all(|(_, instances)| instances.iter().all(|i| i.preserved))
    }
}

/// For every frame with at most `max_states` states and every instantiation
/// of the rule schemas by atoms from a fixed pool, check that validity of
/// the premise forces validity of the conclusion.
pub fn rule_preservation_check(max_states: usize) -> RulePreservationReport {
    let pool = ["p", "q", "r"].map(Formula::atom);
    let frames: Vec<Frame> =
        enumerate_frames(max_states, &FrameClassSpec::all(), true).collect();
    let preserved_on_all = |premise: &Formula, conclusion: &Formula| {
        frames.iter().all(|frame| {
            !crate::semantics::valid_in_frame(frame, premise).is_valid()
                || crate::semantics::valid_in_frame(frame, conclusion).is_valid()
        })
    };
    let instance = |premise: Formula, conclusion: Formula| RuleInstanceResult {
        preserved: preserved_on_all(&premise, &conclusion),
        premise,
        conclusion,
    };

    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    for a in &pool {
        r1.push(instance(a.clone(), Formula::boxed(a.clone())));
        for b in &pool {
            let imp = Formula::imp(a.clone(), b.clone());
            r2.push(instance(
                imp.clone(),
                Formula::imp(Formula::dia(a.clone()), Formula::dia(b.clone())),
            ));
            r4.push(instance(
                imp.clone(),
                Formula::imp(Formula::boxed(a.clone()), Formula::boxed(b.clone())),
            ));
            for c in &pool {
                let premise = Formula::imp(
                    Formula::dia(a.clone()),
                    Formula::or(b.clone(), Formula::boxed(Formula::imp(a.clone(), c.clone()))),
                );
                let conclusion = Formula::imp(
                    Formula::dia(a.clone()),
                    Formula::or(b.clone(), Formula::dia(c.clone())),
                );
                r3.push(instance(premise, conclusion));
            }
        }
    }
    RulePreservationReport {
        rules: vec![("R1", r1), ("R2", r2), ("R3", r3), ("R4", r4)],
    }
}

// ---------------------------------------------------------------------------
// Inclusion probes

#[derive(Clone, Debug)]
pub struct InclusionProbe {
    /// Set when a spec2 side was requested: whether no countermodel over
    /// spec2 frames exists within the bound.
    pub valid_on_spec2: Option<bool>,
    /// Countermodel over spec1 frames, if one exists within the bound.
    pub refutation_on_spec1: Option<(Model, usize)>,
}

impl InclusionProbe {
    /// Evidence of strictness: valid on the smaller class, refuted on the
    /// larger one.
    pub fn witnesses_strictness(&self) -> bool {
        self.valid_on_spec2 == Some(true) && self.refutation_on_spec1.is_some()
    }
}

/// Desk-scale strictness evidence: `f` valid on every `spec2` frame within
/// the bound but refutable on some `spec1` frame.
pub fn logic_inclusion_probe(
    f: &Formula,
    spec1: &FrameClassSpec,
    spec2: Option<&FrameClassSpec>,
    max_states: usize,
) -> InclusionProbe {
    let valid_on_spec2 = spec2.map(|spec| {
        let budget = SearchBudget::with_max_states(max_states).dedup(true);
        matches!(
            countermodel_search(f, spec, &budget).outcome,
            SearchOutcome::NoneUpToBudget { .. }
        )
    });
    let budget = SearchBudget::with_max_states(max_states);
    let refutation_on_spec1 = match countermodel_search(f, spec1, &budget).outcome {
        SearchOutcome::Countermodel { model, state, .. } => Some((model, state)),
        SearchOutcome::NoneUpToBudget { .. } => None,
    };
    InclusionProbe {
        valid_on_spec2,
        refutation_on_spec1,
    }
}

/// Validity of `f` over every frame of `spec` within the bound, as a plain
/// predicate (dedup is sound here and used for speed).
pub fn valid_up_to(f: &Formula, spec: &FrameClassSpec, max_states: usize) -> bool {
    let budget = SearchBudget::with_max_states(max_states).dedup(true);
    matches!(
        countermodel_search(f, spec, &budget).outcome,
        SearchOutcome::NoneUpToBudget { exhausted: true, .. }
    )
}

/// State-by-state truth agrees between the two frames for every formula of
/// AST height `<= depth` over `atoms`, under every shared valuation. The two
/// frames must share their preorder; this realizes the bounded
/// frame-equivalence checks behind the non-definability fixture pairs.
pub fn bounded_equivalence(f1: &Frame, f2: &Frame, atoms: &[&str], depth: usize) -> bool {
    assert_eq!(f1.size(), f2.size(), "fixture pair shares its carrier");
    assert_eq!(f1.le(), f2.le(), "fixture pair shares its preorder");
    let ctx1 = FrameContext::new(f1);
    let ctx2 = FrameContext::new(f2);
    let upsets = f1.upsets();
    let compiled: Vec<(CompiledFormula, Vec<usize>)> = all_formulas(atoms, depth)
        .iter()
        .map(|f| {
            let c = CompiledFormula::new(f);
            let slots = c
                .atoms
                .iter()
                .map(|a| atoms.iter().position(|x| x == a).expect("atom in pool"))
                .collect();
            (c, slots)
        })
        .collect();
    let mut assignment = vec![0u64; atoms.len()];
    let mut masks = Vec::new();
    let mut ok = true;
    sweep_assignments(&upsets, &mut assignment, 0, &mut |assignment| {
        for (c, slots) in &compiled {
            let val: Vec<u64> = slots.iter().map(|&s| assignment[s]).collect();
            let m1 = ctx1.eval(c, &val, SemanticsVariant::New, &mut masks);
            let m2 = ctx2.eval(c, &val, SemanticsVariant::New, &mut masks);
            if m1 != m2 {
                ok = false;
                return false;
            }
        }
        true
    });
    ok
}

fn sweep_assignments(
    upsets: &[u64],
    assignment: &mut Vec<u64>,
    depth: usize,
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if depth == assignment.len() {
        return visit(assignment);
    }
    for &u in upsets {
        assignment[depth] = u;
        if !sweep_assignments(upsets, assignment, depth + 1, visit) {
            return false;
        }
    }
    true
}

/// Every formula of AST height `<= depth` over the given atoms (plus the
/// constants), deduplicated structurally.
pub fn all_formulas(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut layers: Vec<Vec<Formula>> = Vec::new();
    let mut leaves: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    leaves.push(Formula::Top);
    leaves.push(Formula::Bot);
    layers.push(leaves);
    for _ in 1..depth {
        let prev: Vec<Formula> = layers.iter().flatten().cloned().collect();
        let mut next = Vec::new();
        for f in &prev {
            next.push(Formula::boxed(f.clone()));
            next.push(Formula::dia(f.clone()));
            for g in &prev {
                next.push(Formula::imp(f.clone(), g.clone()));
                next.push(Formula::or(f.clone(), g.clone()));
                next.push(Formula::and(f.clone(), g.clone()));
            }
        }
        layers.push(next);
    }
    let mut all: Vec<Formula> = layers.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn preorder_counts_match_digraph_closures() {
        // reference: closures of all digraphs, deduplicated
        for k in 1..=3 {
            let mut reference: Vec<u64> = (0..1u64 << (k * k))
                .map(|m| {
                    let rel = Relation::from_mask(k, m).reflexive_transitive_closure();
                    rel.mask()
                })
                .collect();
            reference.sort_unstable();
            reference.dedup();
            assert_eq!(preorders(k), &reference[..], "k = {k}");
        }
        assert_eq!(preorders(1).len(), 1);
        assert_eq!(preorders(2).len(), 4);
        assert_eq!(preorders(3).len(), 29);
        assert_eq!(preorders(4).len(), 355);
    }

    #[test]
    fn frame_counts_at_two_states() {
        let all = FrameClassSpec::all();
        assert_eq!(enumerate_frames(1, &all, false).count(), 2);
        // 2 one-state frames + 4 preorders x 16 relations
        assert_eq!(enumerate_frames(2, &all, false).count(), 66);
        let ref_spec = FrameClassSpec::parse("ref").unwrap();
        assert_eq!(enumerate_frames(1, &ref_spec, false).count(), 1);
    }

    #[test]
    fn dedup_keeps_representatives() {
        let all = FrameClassSpec::all();
        let full = enumerate_frames(2, &all, false).count();
        let deduped = enumerate_frames(2, &all, true).count();
        assert!(deduped < full);
        // every frame is isomorphic to some canonical representative
        assert!(deduped >= 2);
    }

    #[test]
    fn box_bot_countermodel_on_dc_is_the_one_state_loop() {
        let spec = FrameClassSpec::parse("dc").unwrap();
        let result = countermodel_search(
            &parse("[]F").unwrap(),
            &spec,
            &SearchBudget::with_max_states(1),
        );
        let (model, state) = result.countermodel().expect("refutable");
        assert_eq!(model.frame().size(), 1);
        assert_eq!(state, 0);
        assert_eq!(model.frame().r().pairs(), vec![(0, 0)]);
    }

    #[test]
    fn a2_has_no_small_countermodel() {
        let result = countermodel_search(
            &parse("[](p|q)->((<>p->[]q)->[]q)").unwrap(),
            &FrameClassSpec::all(),
            &SearchBudget::with_max_states(2),
        );
        assert!(result.countermodel().is_none());
        assert!(!result.complete);
    }

    #[test]
    fn af_refuted_over_all_frames() {
        let result = countermodel_search(
            &parse("<>(p->q)->([]p-><>q)").unwrap(),
            &FrameClassSpec::all(),
            &SearchBudget::with_max_states(3),
        );
        let (model, state) = result.countermodel().expect("Af fails on some frame");
        // re-check the witness from scratch
        assert!(!crate::semantics::sat(
            model,
            state,
            &parse("<>(p->q)->([]p-><>q)").unwrap(),
            SemanticsVariant::New
        ));
        // the canonical witness: s0 <= s1 with R a loop on s0 and the empty
        // valuation; the state above the loop has no box successors, so it
        // keeps []p vacuously while reaching p->q below
        assert_eq!(model.frame().size(), 2);
        assert!(model.frame().le().contains(0, 1));
        assert_eq!(model.frame().r().pairs(), vec![(0, 0)]);
        assert_eq!(model.val_of("p"), 0);
        assert_eq!(model.val_of("q"), 0);
        assert_eq!(state, 0);
    }

    #[test]
    fn search_determinism_sequential_vs_parallel() {
        let f = parse("<>(p->q)->([]p-><>q)").unwrap();
        let spec = FrameClassSpec::all();
        let budget = SearchBudget::with_max_states(3);
        let first = countermodel_search_with_workers(&f, &spec, &budget, 8);
        let second = countermodel_search_with_workers(&f, &spec, &budget, 1);
        match (&first.outcome, &second.outcome) {
            (
                SearchOutcome::Countermodel { model: m1, state: s1, frames_examined: f1 },
                SearchOutcome::Countermodel { model: m2, state: s2, frames_examined: f2 },
            ) => {
                assert_eq!(m1.frame(), m2.frame());
                assert_eq!(m1.val(), m2.val());
                assert_eq!(s1, s2);
                assert_eq!(f1, f2);
            }
            _ => panic!("both searches should find the countermodel"),
        }
    }

    #[test]
    fn max_frames_budget_reports_non_exhaustion() {
        let mut budget = SearchBudget::with_max_states(2);
        budget.max_frames = Some(3);
        let result = countermodel_search(
            &parse("[](p|q)->((<>p->[]q)->[]q)").unwrap(),
            &FrameClassSpec::all(),
            &budget,
        );
        match result.outcome {
            SearchOutcome::NoneUpToBudget { exhausted, frames_examined } => {
                assert!(!exhausted);
                assert!(frames_examined <= 4);
            }
            _ => panic!("A2 has no countermodel"),
        }
    }

    #[test]
    fn uref_definability_holds_at_two_states() {
        let outcome = definability_check(&parse("[]p->p").unwrap(), FrameProperty::Uref, 2);
        assert!(outcome.holds, "{outcome:?}");
    }

    #[test]
    fn ref_is_not_defined_by_t_axiom() {
        let outcome = definability_check(&parse("[]p->p").unwrap(), FrameProperty::Ref, 2);
        assert!(!outcome.holds);
        let validating = outcome.validating_outside.expect("non-ref validating frame");
        assert!(!FrameProperty::Ref.check(&validating));
        assert!(FrameProperty::Uref.check(&validating));
    }

    #[test]
    fn rule_preservation_at_one_state() {
        let report = rule_preservation_check(1);
        assert!(report.all_preserved());
        assert_eq!(report.rules.len(), 4);
        assert_eq!(report.rules[0].1.len(), 3); // R1 over the pool
        assert_eq!(report.rules[1].1.len(), 9); // R2 over pairs
        assert_eq!(report.rules[2].1.len(), 27); // R3 over triples
        assert_eq!(report.rules[3].1.len(), 9); // R4 over pairs
    }

    #[test]
    fn all_formulas_depth_two() {
        let fs = all_formulas(&["p"], 2);
        // depth 1: p, T, F; depth 2: unary (2x3) + binary (3x9)
        assert!(fs.contains(&parse("p").unwrap()));
        assert!(fs.contains(&parse("[]p").unwrap()));
        assert!(fs.contains(&parse("p->F").unwrap()));
        assert_eq!(fs.len(), 3 + 6 + 27);
    }
}
