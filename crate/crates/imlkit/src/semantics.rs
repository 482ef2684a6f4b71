//! Satisfiability, truth and validity on finite models, under the primary
//! diamond clause and the two historical variants.
//!
//! Evaluation computes one satisfaction bitmask per distinct subformula,
//! bottom-up, so every (state, subformula) query is answered from a single
//! pass over the hash-consed subformula table.

use crate::formula::Formula;
use crate::structures::{Frame, Model, Relation, StateSet};
use std::collections::BTreeMap;
use std::collections::HashMap;

/// Which diamond clause to use. `New` is the default everywhere.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SemanticsVariant {
    /// `s |= <>A` iff some `t` with `s >=.R t` satisfies `A`.
    #[default]
    New,
    /// `s |= <>A` iff some `t` with `s R t` satisfies `A`.
    FischerServi,
    /// `s |= <>A` iff every `t >= s` has an `R`-successor satisfying `A`.
    Wijesekera,
}

impl SemanticsVariant {
    pub fn parse(name: &str) -> Option<SemanticsVariant> {
        match name {
            "new" => Some(SemanticsVariant::New),
            "fs" | "fischer-servi" | "fischer_servi" => Some(SemanticsVariant::FischerServi),
            "wij" | "wijesekera" => Some(SemanticsVariant::Wijesekera),
            _ => None,
        }
    }
}

/// Instruction form of a formula: one op per distinct subformula, children
/// referenced by index, atoms resolved to valuation slots.
#[derive(Clone, Debug)]
pub enum Op {
    Atom(usize),
    Top,
    Bot,
    Impl(usize, usize),
    Or(usize, usize),
    And(usize, usize),
    BoxOp(usize),
    DiaOp(usize),
}

/// A formula compiled for repeated evaluation: hash-consed subformula table
/// plus the sorted atom list defining the valuation slot order. `max_dep`
/// records, per op, the largest valuation slot it depends on (-1 for
/// closed subformulas), which drives incremental re-evaluation during
/// valuation sweeps.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    pub ops: Vec<Op>,
    pub subformulas: Vec<Formula>,
    pub atoms: Vec<String>,
    pub max_dep: Vec<isize>,
    pub root: usize,
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> CompiledFormula {
        let atoms: Vec<String> = f.atoms().into_iter().collect();
        let slot: BTreeMap<&str, usize> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.as_str(), i))
            .collect();
        let mut c = CompiledFormula {
            ops: Vec::new(),
            subformulas: Vec::new(),
            atoms: atoms.clone(),
            max_dep: Vec::new(),
            root: 0,
        };
        let mut index: HashMap<Formula, usize> = HashMap::new();
        c.root = c.intern(f, &slot, &mut index);
        c
    }

    fn intern(
        &mut self,
        f: &Formula,
        slot: &BTreeMap<&str, usize>,
        index: &mut HashMap<Formula, usize>,
    ) -> usize {
        if let Some(&i) = index.get(f) {
            return i;
        }
        let op = match f {
            Formula::Atom(p) => Op::Atom(slot[p.as_str()]),
            Formula::Top => Op::Top,
            Formula::Bot => Op::Bot,
            Formula::Impl(a, b) => {
                let (x, y) = (self.intern(a, slot, index), self.intern(b, slot, index));
                Op::Impl(x, y)
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.intern(a, slot, index), self.intern(b, slot, index));
                Op::Or(x, y)
            }
            Formula::And(a, b) => {
                let (x, y) = (self.intern(a, slot, index), self.intern(b, slot, index));
                Op::And(x, y)
            }
            Formula::Box_(a) => Op::BoxOp(self.intern(a, slot, index)),
            Formula::Dia(a) => Op::DiaOp(self.intern(a, slot, index)),
        };
        let dep = match op {
            Op::Atom(slot) => slot as isize,
            Op::Top | Op::Bot => -1,
            Op::Impl(a, b) | Op::Or(a, b) | Op::And(a, b) => {
                self.max_dep[a].max(self.max_dep[b])
            }
            Op::BoxOp(a) | Op::DiaOp(a) => self.max_dep[a],
        };
        let i = self.ops.len();
        self.ops.push(op);
        self.max_dep.push(dep);
        self.subformulas.push(f.clone());
        index.insert(f.clone(), i);
        i
    }
}

/// Frame data prepared for evaluation: the composed accessibility relations
/// behind the box and diamond clauses.
pub struct FrameContext {
    pub all: u64,
    le_rows: Vec<u64>,
    r_rows: Vec<u64>,
    le_r_rows: Vec<u64>,
    ge_r_rows: Vec<u64>,
}

impl FrameContext {
    pub fn new(frame: &Frame) -> FrameContext {
        let ge = frame.le().transpose();
        let le_r = frame.le().compose(frame.r());
        let ge_r = ge.compose(frame.r());
        let rows = |r: &Relation| (0..frame.size()).map(|i| r.row(i)).collect::<Vec<_>>();
        FrameContext {
            all: frame.full_mask(),
            le_rows: rows(frame.le()),
            r_rows: rows(frame.r()),
            le_r_rows: rows(&le_r),
            ge_r_rows: rows(&ge_r),
        }
    }

    #[inline]
    fn pre(rows: &[u64], set: u64) -> u64 {
        let mut out = 0u64;
        for (i, row) in rows.iter().enumerate() {
            out |= u64::from(row & set != 0) << i;
        }
        out
    }

    /// Evaluate all subformulas into `masks` (resized as needed) and return
    /// the root satisfaction set.
    pub fn eval(
        &self,
        c: &CompiledFormula,
        val: &[StateSet],
        variant: SemanticsVariant,
        masks: &mut Vec<u64>,
    ) -> u64 {
        masks.clear();
        masks.resize(c.ops.len(), 0);
        self.eval_ops(c, val, variant, masks, isize::MIN);
        masks[c.root]
    }

    /// Re-evaluate only the subformulas depending on valuation slot
    /// `changed_from` or deeper. `masks` must hold a complete evaluation of
    /// the same formula on the same frame with a valuation agreeing on all
    /// earlier slots.
    pub fn eval_from(
        &self,
        c: &CompiledFormula,
        val: &[StateSet],
        variant: SemanticsVariant,
        masks: &mut Vec<u64>,
        changed_from: isize,
    ) -> u64 {
        if masks.len() != c.ops.len() {
            return self.eval(c, val, variant, masks);
        }
        self.eval_ops(c, val, variant, masks, changed_from);
        masks[c.root]
    }

    fn eval_ops(
        &self,
        c: &CompiledFormula,
        val: &[StateSet],
        variant: SemanticsVariant,
        masks: &mut [u64],
        changed_from: isize,
    ) {
        for (i, op) in c.ops.iter().enumerate() {
            if c.max_dep[i] < changed_from {
                continue;
            }
            masks[i] = match *op {
                Op::Atom(slot) => val[slot],
                Op::Top => self.all,
                Op::Bot => 0,
                Op::And(a, b) => masks[a] & masks[b],
                Op::Or(a, b) => masks[a] | masks[b],
                Op::Impl(a, b) => self.all & !Self::pre(&self.le_rows, masks[a] & !masks[b]),
                Op::BoxOp(a) => self.all & !Self::pre(&self.le_r_rows, self.all & !masks[a]),
                Op::DiaOp(a) => match variant {
                    SemanticsVariant::New => Self::pre(&self.ge_r_rows, masks[a]),
                    SemanticsVariant::FischerServi => Self::pre(&self.r_rows, masks[a]),
                    SemanticsVariant::Wijesekera => {
                        self.all
                            & !Self::pre(
                                &self.le_rows,
                                self.all & !Self::pre(&self.r_rows, masks[a]),
                            )
                    }
                },
            };
        }
    }
}

fn val_slots(m: &Model, c: &CompiledFormula) -> Vec<StateSet> {
    c.atoms.iter().map(|a| m.val_of(a)).collect()
}

/// Satisfaction set of `f` in `m`: the states where `f` holds.
pub fn sat_set(m: &Model, f: &Formula, variant: SemanticsVariant) -> StateSet {
    let c = CompiledFormula::new(f);
    let ctx = FrameContext::new(m.frame());
    let mut masks = Vec::new();
    ctx.eval(&c, &val_slots(m, &c), variant, &mut masks)
}

/// Does `f` hold at state `s` of `m`?
pub fn sat(m: &Model, s: usize, f: &Formula, variant: SemanticsVariant) -> bool {
    assert!(s < m.frame().size(), "state out of range");
    sat_set(m, f, variant) >> s & 1 == 1
}

/// Is `f` true at every state of `m`?
pub fn true_in_model(m: &Model, f: &Formula, variant: SemanticsVariant) -> bool {
    sat_set(m, f, variant) == m.frame().full_mask()
}

/// Satisfaction sets of every distinct subformula of `f`.
pub fn subformula_sat_sets(
    m: &Model,
    f: &Formula,
    variant: SemanticsVariant,
) -> Vec<(Formula, StateSet)> {
    let c = CompiledFormula::new(f);
    let ctx = FrameContext::new(m.frame());
    let mut masks = Vec::new();
    ctx.eval(&c, &val_slots(m, &c), variant, &mut masks);
    c.subformulas.into_iter().zip(masks).collect()
}

/// Outcome of a validity query on a frame.
#[derive(Clone, Debug)]
pub enum Validity {
    Valid,
    Refuted {
        val: BTreeMap<String, StateSet>,
        state: usize,
    },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Check `f` against every valuation of its atoms by `le`-closed sets on
/// `frame`. Valuations are swept in lexicographic order over the atom-sorted
/// up-set bitmasks, so the reported witness is canonical.
pub fn valid_in_frame(frame: &Frame, f: &Formula) -> Validity {
    valid_in_frame_variant(frame, f, SemanticsVariant::New)
}

pub fn valid_in_frame_variant(frame: &Frame, f: &Formula, variant: SemanticsVariant) -> Validity {
    let c = CompiledFormula::new(f);
    let ctx = FrameContext::new(frame);
    let upsets = frame.upsets();
    let mut masks = Vec::new();
    let mut val = vec![0u64; c.atoms.len()];
    match sweep_valuations(&c, &ctx, &upsets, variant, &mut val, &mut masks, 0) {
        None => Validity::Valid,
        Some((val, state)) => Validity::Refuted {
            val: c.atoms.iter().cloned().zip(val).collect(),
            state,
        },
    }
}

fn sweep_valuations(
    c: &CompiledFormula,
    ctx: &FrameContext,
    upsets: &[u64],
    variant: SemanticsVariant,
    val: &mut Vec<u64>,
    masks: &mut Vec<u64>,
    depth: usize,
) -> Option<(Vec<u64>, usize)> {
    if depth == val.len() {
        let root = ctx.eval(c, val, variant, masks);
        let failing = ctx.all & !root;
        if failing != 0 {
            return Some((val.clone(), failing.trailing_zeros() as usize));
        }
        return None;
    }
    for &u in upsets {
        val[depth] = u;
        if let Some(hit) = sweep_valuations(c, ctx, upsets, variant, val, masks, depth + 1) {
            return Some(hit);
        }
    }
    None
}

/// Verify the heredity property on one model: every subformula's
/// satisfaction set is `le`-closed.
pub fn heredity_check(m: &Model, f: &Formula, variant: SemanticsVariant) -> bool {
    subformula_sat_sets(m, f, variant)
        .iter()
        .all(|&(_, set)| m.frame().is_le_closed(set))
}
