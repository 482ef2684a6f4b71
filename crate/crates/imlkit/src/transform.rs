//! Model constructions used in the correctness proofs, each returning a
//! state map so the corresponding satisfaction-preservation claim can be
//! stated exactly.

use crate::error::Error;
use crate::structures::{Frame, Model, Relation};
use std::collections::BTreeMap;

/// Where a state of a constructed model comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StateOrigin {
    /// Same state of the input model.
    Original(usize),
    /// Copy `tag` (0 or 1) of an input state.
    Copy { state: usize, tag: usize },
    /// Class state `(t, {t, partner})` of the partition construction.
    PairClass { state: usize, partner: usize },
    /// State of the left operand of a join.
    Left(usize),
    /// State of the right operand of a join.
    Right(usize),
    /// The fresh root added by a join.
    Root,
}

/// Total map from new states to their origins.
#[derive(Clone, Debug)]
pub struct StateMap(pub Vec<StateOrigin>);

impl StateMap {
    pub fn origin(&self, new_state: usize) -> StateOrigin {
        self.0[new_state]
    }
}

/// Replace `r` by `(le.r.le) & (ge.r.ge)`; states, order and valuation are
/// untouched.
pub fn intersectional_update(m: &Model) -> Model {
    let le = m.frame().le();
    let ge = le.transpose();
    let r = m.frame().r();
    let new_r = le
        .compose(r)
        .compose(le)
        .intersection(&ge.compose(r).compose(&ge));
    let frame = Frame::new(le.clone(), new_r).expect("le unchanged");
    Model::new(frame, m.val().clone()).expect("valuation unchanged")
}

fn doubled(m: &Model, keep_identity: bool) -> (Model, StateMap) {
    let n = m.frame().size();
    let le = m.frame().le();
    let r = m.frame().r();
    // new state (t, j) gets index j*n + t
    let mut le2 = Relation::empty(2 * n);
    let mut r2 = Relation::empty(2 * n);
    for t in 0..n {
        for u in 0..n {
            for j in 0..2 {
                for k in 0..2 {
                    if le.contains(t, u) {
                        le2.insert(j * n + t, k * n + u);
                    }
                    if r.contains(t, u) && j == 0 && k == 1 {
                        r2.insert(j * n + t, k * n + u);
                    }
                }
            }
        }
    }
    if keep_identity {
        for s in 0..2 * n {
            r2.insert(s, s);
        }
    }
    let frame = Frame::new(le2, r2).expect("doubled preorder");
    let val = m
        .val()
        .iter()
        .map(|(a, &set)| {
            let mut out = 0u64;
            for t in 0..n {
                if set >> t & 1 == 1 {
                    out |= 1 << t;
                    out |= 1 << (n + t);
                }
            }
            (a.clone(), out)
        })
        .collect::<BTreeMap<_, _>>();
    let model = Model::new(frame, val).expect("doubled valuation stays closed");
    let map = StateMap(
        (0..2 * n)
            .map(|s| StateOrigin::Copy {
                state: s % n,
                tag: s / n,
            })
            .collect(),
    );
    (model, map)
}

/// Two strict layers: `(t,0) R' (u,1)` iff `t R u`. The result is transitive.
pub fn double_strict(m: &Model) -> (Model, StateMap) {
    doubled(m, false)
}

/// Reflexive doubling: `(t,j) R' (u,k)` iff `(t,j) = (u,k)` or `t R u`,
/// `j = 0`, `k = 1`. Requires a reflexive input; the result is reflexive and
/// transitive.
pub fn double_reflexive(m: &Model) -> Result<(Model, StateMap), Error> {
    if !m.frame().r().is_reflexive() {
        return Err(Error::NotReflexive);
    }
    Ok(doubled(m, true))
}

/// Partition construction over a reflexive and symmetric input: states are
/// the pairs `(t, {t,u})` with `t R u`; the result is a partition frame.
pub fn partitionize(m: &Model) -> Result<(Model, StateMap), Error> {
    let r = m.frame().r();
    if !r.is_reflexive() || !r.is_symmetric() {
        return Err(Error::PreconditionFailed(
            "partitionize needs a reflexive and symmetric frame".into(),
        ));
    }
    let n = m.frame().size();
    let le = m.frame().le();
    // (t, {t,u}) for every t R u; {t,u} kept as an unordered pair
    let mut states: Vec<(usize, (usize, usize))> = Vec::new();
    for t in 0..n {
        for u in 0..n {
            if r.contains(t, u) {
                states.push((t, (t.min(u), t.max(u))));
            }
        }
    }
    states.sort();
    states.dedup();
    let m2 = states.len();
    let mut le2 = Relation::empty(m2);
    let mut r2 = Relation::empty(m2);
    for (i, &(t, set_i)) in states.iter().enumerate() {
        for (j, &(v, set_j)) in states.iter().enumerate() {
            if le.contains(t, v) {
                le2.insert(i, j);
            }
            if r.contains(t, v) && set_i == set_j {
                r2.insert(i, j);
            }
        }
    }
    let frame = Frame::new(le2, r2)?;
    let val = m
        .val()
        .iter()
        .map(|(a, &set)| {
            let mut out = 0u64;
            for (i, &(t, _)) in states.iter().enumerate() {
                if set >> t & 1 == 1 {
                    out |= 1 << i;
                }
            }
            (a.clone(), out)
        })
        .collect::<BTreeMap<_, _>>();
    let model = Model::new(frame, val)?;
    let map = StateMap(
        states
            .iter()
            .map(|&(t, (x, y))| StateOrigin::PairClass {
                state: t,
                partner: if x == t { y } else { x },
            })
            .collect(),
    );
    Ok((model, map))
}

/// Disjoint union of two models plus a fresh root lying below the up-sets of
/// `s1` and `s2`. `R` is untouched and the root satisfies no atom.
pub fn rooted_join(m1: &Model, s1: usize, m2: &Model, s2: usize) -> (Model, StateMap) {
    let n1 = m1.frame().size();
    let n2 = m2.frame().size();
    assert!(s1 < n1 && s2 < n2, "join state out of range");
    let n = 1 + n1 + n2;
    // root = 0, left states 1..=n1, right states n1+1..
    let left = |t: usize| 1 + t;
    let right = |t: usize| 1 + n1 + t;
    let mut le = Relation::identity(n);
    let mut r = Relation::empty(n);
    for t in 0..n1 {
        for u in 0..n1 {
            if m1.frame().le().contains(t, u) {
                le.insert(left(t), left(u));
            }
            if m1.frame().r().contains(t, u) {
                r.insert(left(t), left(u));
            }
        }
        if m1.frame().le().contains(s1, t) {
            le.insert(0, left(t));
        }
    }
    for t in 0..n2 {
        for u in 0..n2 {
            if m2.frame().le().contains(t, u) {
                le.insert(right(t), right(u));
            }
            if m2.frame().r().contains(t, u) {
                r.insert(right(t), right(u));
            }
        }
        if m2.frame().le().contains(s2, t) {
            le.insert(0, right(t));
        }
    }
    // closure is a no-op on this shape but guards composite use
    let le = le.reflexive_transitive_closure();
    let frame = Frame::new(le, r).expect("joined preorder");
    let mut atoms: Vec<&String> = m1.val().keys().chain(m2.val().keys()).collect();
    atoms.sort();
    atoms.dedup();
    let mut val = BTreeMap::new();
    for a in atoms {
        let mut set = 0u64;
        for t in 0..n1 {
            if m1.val_of(a) >> t & 1 == 1 {
                set |= 1 << left(t);
            }
        }
        for t in 0..n2 {
            if m2.val_of(a) >> t & 1 == 1 {
                set |= 1 << right(t);
            }
        }
        val.insert(a.clone(), set);
    }
    // the union valuation must be le-closed, not assumed to be
    let model = Model::new(frame, val).expect("union of closed valuations is closed");
    let mut origins = vec![StateOrigin::Root];
    origins.extend((0..n1).map(StateOrigin::Left));
    origins.extend((0..n2).map(StateOrigin::Right));
    (model, StateMap(origins))
}
