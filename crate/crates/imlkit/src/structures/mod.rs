//! Finite birelational frames and models: relation algebra over bitmask
//! rows, frame construction, the frame-condition predicates, and generated
//! subframes.

pub mod json;

use crate::error::Error;
use std::collections::BTreeMap;

/// Set of states as a bitmask. Frames are capped at 64 states, far beyond
/// anything the exhaustive tools can visit.
pub type StateSet = u64;

/// Binary relation on `{0, .., n-1}`, one bitmask row per source state.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    n: usize,
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        assert!(n <= 64, "relation carrier too large");
        Relation { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.rows[i] = 1 << i;
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Relation {
        let mut r = Relation::empty(n);
        for &(i, j) in pairs {
            assert!(i < n && j < n, "pair out of range");
            r.rows[i] |= 1 << j;
        }
        r
    }

    /// Decode a row-major bitmask (bit `i*n + j` set iff `i R j`).
    pub fn from_mask(n: usize, mask: u64) -> Relation {
        debug_assert!(n * n <= 64);
        let row_bits = (1u64 << n) - 1;
        let rows = (0..n).map(|i| (mask >> (i * n)) & row_bits).collect();
        Relation { n, rows }
    }

    /// Row-major bitmask encoding, the canonical enumeration key.
    pub fn mask(&self) -> u64 {
        assert!(self.n * self.n <= 64, "mask requires n*n <= 64");
        let mut m = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            m |= row << (i * self.n);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `s (self . other) t` iff some `u` has `s self u` and `u other t`.
    pub fn compose(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            let mut acc = 0u64;
            let mut mids = self.rows[i];
            while mids != 0 {
                let j = mids.trailing_zeros() as usize;
                mids &= mids - 1;
                acc |= other.rows[j];
            }
            out.rows[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> Relation {
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.contains(i, j) {
                    out.rows[j] |= 1 << i;
                }
            }
        }
        out
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn reflexive_transitive_closure(&self) -> Relation {
        let mut out = self.clone();
        for i in 0..self.n {
            out.rows[i] |= 1 << i;
        }
        // Warshall over bitmask rows
        for k in 0..self.n {
            for i in 0..self.n {
                if out.contains(i, k) {
                    out.rows[i] |= out.rows[k];
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_subset_of(&self.transpose())
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).is_subset_of(self)
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// States with at least one successor in `set`.
    pub fn preimage(&self, set: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..self.n {
            if self.rows[i] & set != 0 {
                out |= 1 << i;
            }
        }
        out
    }

    /// Relabel states through a permutation (`perm[old] = new`).
    pub fn permute(&self, perm: &[usize]) -> Relation {
        let mut out = Relation::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.contains(i, j) {
                    out.rows[perm[i]] |= 1 << perm[j];
                }
            }
        }
        out
    }
}

/// A frame: nonempty finite state set, a preorder `le`, and an arbitrary
/// relation `r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frame {
    n: usize,
    le: Relation,
    r: Relation,
}

impl Frame {
    pub fn new(le: Relation, r: Relation) -> Result<Frame, Error> {
        let n = le.size();
        if n == 0 {
            return Err(Error::EmptyStateSet);
        }
        if r.size() != n {
            return Err(Error::CarrierMismatch);
        }
        if !le.is_preorder() {
            return Err(Error::NotPreorder);
        }
        Ok(Frame { n, le, r })
    }

    /// Build from generator pairs. With `close`, `le` is the
    /// reflexive-transitive closure of `le_gen`; otherwise `le_gen` must
    /// already be a preorder.
    pub fn build(
        n: usize,
        le_gen: &[(usize, usize)],
        r: &[(usize, usize)],
        close: bool,
    ) -> Result<Frame, Error> {
        if n == 0 {
            return Err(Error::EmptyStateSet);
        }
        if le_gen.iter().chain(r).any(|&(i, j)| i >= n || j >= n) {
            return Err(Error::StateOutOfRange);
        }
        let le = Relation::from_pairs(n, le_gen);
        let le = if close {
            le.reflexive_transitive_closure()
        } else {
            le
        };
        Frame::new(le, Relation::from_pairs(n, r))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn le(&self) -> &Relation {
        &self.le
    }

    pub fn r(&self) -> &Relation {
        &self.r
    }

    pub fn full_mask(&self) -> u64 {
        self.le.full_mask()
    }

    /// Is `set` closed upward under `le`?
    pub fn is_le_closed(&self, set: StateSet) -> bool {
        (0..self.n).all(|s| set >> s & 1 == 0 || self.le.row(s) & !set == 0)
    }

    /// Least superset of `set` closed upward under `le`.
    pub fn le_close(&self, set: StateSet) -> StateSet {
        let mut out = set;
        for s in 0..self.n {
            if set >> s & 1 == 1 {
                out |= self.le.row(s);
            }
        }
        out
    }

    /// All `le`-closed subsets, ascending by bitmask.
    pub fn upsets(&self) -> Vec<StateSet> {
        let full = self.full_mask();
        (0..=full).filter(|&m| self.is_le_closed(m)).collect()
    }

    /// Least generated subframe containing `s`: closed under `le`-successors,
    /// `le`-predecessors and `r`-successors. Returns the subframe and the
    /// (sorted) list of original states it keeps.
    pub fn generated_subframe(&self, s: usize) -> (Frame, Vec<usize>) {
        assert!(s < self.n);
        let ge = self.le.transpose();
        let mut reach = 1u64 << s;
        loop {
            let mut next = reach;
            let mut states = reach;
            while states != 0 {
                let v = states.trailing_zeros() as usize;
                states &= states - 1;
                next |= self.le.row(v) | ge.row(v) | self.r.row(v);
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| reach >> v & 1 == 1).collect();
        let m = kept.len();
        let mut le = Relation::empty(m);
        let mut r = Relation::empty(m);
        for (new_i, &old_i) in kept.iter().enumerate() {
            for (new_j, &old_j) in kept.iter().enumerate() {
                if self.le.contains(old_i, old_j) {
                    le.insert(new_i, new_j);
                }
                if self.r.contains(old_i, old_j) {
                    r.insert(new_i, new_j);
                }
            }
        }
        (Frame { n: m, le, r }, kept)
    }
}

/// Frame-condition predicates from the semantics of the logic family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FrameProperty {
    All,
    Fc,
    Bc,
    Dc,
    Uc,
    Qfc,
    Qbc,
    Qdc,
    Quc,
    Ref,
    Sym,
    Tra,
    Par,
    Uref,
    Dref,
    Usym,
    Dsym,
    Utra,
    Dtra,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 19] = [
        FrameProperty::All,
        FrameProperty::Fc,
        FrameProperty::Bc,
        FrameProperty::Dc,
        FrameProperty::Uc,
        FrameProperty::Qfc,
        FrameProperty::Qbc,
        FrameProperty::Qdc,
        FrameProperty::Quc,
        FrameProperty::Ref,
        FrameProperty::Sym,
        FrameProperty::Tra,
        FrameProperty::Par,
        FrameProperty::Uref,
        FrameProperty::Dref,
        FrameProperty::Usym,
        FrameProperty::Dsym,
        FrameProperty::Utra,
        FrameProperty::Dtra,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FrameProperty::All => "all",
            FrameProperty::Fc => "fc",
            FrameProperty::Bc => "bc",
            FrameProperty::Dc => "dc",
            FrameProperty::Uc => "uc",
            FrameProperty::Qfc => "qfc",
            FrameProperty::Qbc => "qbc",
            FrameProperty::Qdc => "qdc",
            FrameProperty::Quc => "quc",
            FrameProperty::Ref => "ref",
            FrameProperty::Sym => "sym",
            FrameProperty::Tra => "tra",
            FrameProperty::Par => "par",
            FrameProperty::Uref => "uref",
            FrameProperty::Dref => "dref",
            FrameProperty::Usym => "usym",
            FrameProperty::Dsym => "dsym",
            FrameProperty::Utra => "utra",
            FrameProperty::Dtra => "dtra",
        }
    }

    pub fn from_name(name: &str) -> Result<FrameProperty, Error> {
        FrameProperty::ALL
            .iter()
            .find(|p| p.name() == name)
            .copied()
            .ok_or_else(|| Error::UnknownPredicate(name.to_string()))
    }

    pub fn check(&self, f: &Frame) -> bool {
        let le = f.le();
        let r = f.r();
        let ge = le.transpose();
        let mid = || {
            le.compose(r)
                .compose(le)
                .intersection(&ge.compose(r).compose(&ge))
        };
        match self {
            FrameProperty::All => true,
            FrameProperty::Fc => ge.compose(r).is_subset_of(&r.compose(&ge)),
            FrameProperty::Bc => r.compose(le).is_subset_of(&le.compose(r)),
            FrameProperty::Dc => le.compose(r).is_subset_of(&r.compose(le)),
            FrameProperty::Uc => r.compose(&ge).is_subset_of(&ge.compose(r)),
            FrameProperty::Qfc => ge.compose(r).is_subset_of(&mid().compose(&ge)),
            FrameProperty::Qbc => r.compose(le).is_subset_of(&le.compose(&mid())),
            FrameProperty::Qdc => le.compose(r).is_subset_of(&mid().compose(le)),
            FrameProperty::Quc => r.compose(&ge).is_subset_of(&ge.compose(&mid())),
            FrameProperty::Ref => r.is_reflexive(),
            FrameProperty::Sym => r.is_symmetric(),
            FrameProperty::Tra => r.is_transitive(),
            FrameProperty::Par => r.is_reflexive() && r.is_symmetric() && r.is_transitive(),
            FrameProperty::Uref => Relation::identity(f.size())
                .is_subset_of(&le.compose(r).compose(le)),
            FrameProperty::Dref => Relation::identity(f.size())
                .is_subset_of(&ge.compose(r).compose(&ge)),
            FrameProperty::Usym => r.is_subset_of(&le.compose(r).compose(le).transpose()),
            FrameProperty::Dsym => r.is_subset_of(&ge.compose(r).compose(&ge).transpose()),
            FrameProperty::Utra => r
                .compose(le)
                .compose(r)
                .is_subset_of(&le.compose(r).compose(le)),
            FrameProperty::Dtra => r
                .compose(&ge)
                .compose(r)
                .is_subset_of(&ge.compose(r).compose(&ge)),
        }
    }
}

/// Check a single named predicate.
pub fn check_property(f: &Frame, name: &str) -> Result<bool, Error> {
    Ok(FrameProperty::from_name(name)?.check(f))
}

/// Conjunction of named frame predicates selecting a frame class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrameClassSpec {
    props: Vec<FrameProperty>,
}

impl FrameClassSpec {
    pub fn all() -> FrameClassSpec {
        FrameClassSpec {
            props: vec![FrameProperty::All],
        }
    }

    pub fn of(props: Vec<FrameProperty>) -> FrameClassSpec {
        assert!(!props.is_empty(), "empty predicate list");
        FrameClassSpec { props }
    }

    /// Parse a class spec: predicate names joined by `+` or `,`, e.g.
    /// `ref+tra`. A compound confluence name such as `fbdc` expands to its
    /// one-letter confluences (`fc`, `bc`, `dc`).
    pub fn parse(text: &str) -> Result<FrameClassSpec, Error> {
        let mut props = Vec::new();
        for token in text.split(['+', ',']) {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            if let Ok(p) = FrameProperty::from_name(token) {
                props.push(p);
                continue;
            }
            // fbdc-style compounds: letters among f, b, d, u followed by 'c'
            let expanded = token.strip_suffix('c').and_then(|prefix| {
                if !prefix.is_empty() && prefix.chars().all(|c| "fbdu".contains(c)) {
                    prefix
                        .chars()
                        .map(|c| FrameProperty::from_name(&format!("{c}c")).ok())
                        .collect::<Option<Vec<_>>>()
                } else {
                    None
                }
            });
            match expanded {
                Some(mut ps) => props.append(&mut ps),
                None => return Err(Error::UnknownPredicate(token.to_string())),
            }
        }
        if props.is_empty() {
            return Err(Error::UnknownPredicate(text.to_string()));
        }
        Ok(FrameClassSpec { props })
    }

    pub fn props(&self) -> &[FrameProperty] {
        &self.props
    }

    pub fn check(&self, f: &Frame) -> bool {
        self.props.iter().all(|p| p.check(f))
    }

    pub fn is_unconstrained(&self) -> bool {
        self.props.iter().all(|p| *p == FrameProperty::All)
    }
}

impl std::fmt::Display for FrameClassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<&str> = self.props.iter().map(|p| p.name()).collect();
        write!(f, "{}", names.join("+"))
    }
}

/// One row of the stronger-implies-weaker report.
#[derive(Clone, Debug)]
pub struct ImplicationCheck {
    pub stronger: FrameProperty,
    pub weaker: FrameProperty,
    pub premise_holds: bool,
    pub implication_holds: bool,
}

/// Check every stronger-implies-weaker pair on one frame: the confluences
/// against their quasi-variants, and ref/sym against their up/down variants.
pub fn implied_properties_check(f: &Frame) -> Vec<ImplicationCheck> {
    const PAIRS: [(FrameProperty, FrameProperty); 8] = [
        (FrameProperty::Fc, FrameProperty::Qfc),
        (FrameProperty::Bc, FrameProperty::Qbc),
        (FrameProperty::Dc, FrameProperty::Qdc),
        (FrameProperty::Uc, FrameProperty::Quc),
        (FrameProperty::Ref, FrameProperty::Uref),
        (FrameProperty::Ref, FrameProperty::Dref),
        (FrameProperty::Sym, FrameProperty::Usym),
        (FrameProperty::Sym, FrameProperty::Dsym),
    ];
    PAIRS
        .iter()
        .map(|&(stronger, weaker)| {
            let premise_holds = stronger.check(f);
            ImplicationCheck {
                stronger,
                weaker,
                premise_holds,
                implication_holds: !premise_holds || weaker.check(f),
            }
        })
        .collect()
}

/// A model: frame plus a valuation sending atoms to `le`-closed state sets.
/// Atoms absent from the map denote the empty set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Model {
    frame: Frame,
    val: BTreeMap<String, StateSet>,
}

impl Model {
    pub fn new(frame: Frame, val: BTreeMap<String, StateSet>) -> Result<Model, Error> {
        for (atom, &set) in &val {
            if set & !frame.full_mask() != 0 {
                return Err(Error::StateOutOfRange);
            }
            if !frame.is_le_closed(set) {
                return Err(Error::ValuationNotClosed(atom.clone()));
            }
        }
        Ok(Model { frame, val })
    }

    /// Like `new`, but closes every atom's set upward instead of rejecting.
    pub fn new_upclosed(frame: Frame, val: BTreeMap<String, StateSet>) -> Model {
        let closed = val
            .into_iter()
            .map(|(a, s)| {
                let s = s & frame.full_mask();
                let s = frame.le_close(s);
                (a, s)
            })
            .collect();
        Model { frame, val: closed }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn val(&self) -> &BTreeMap<String, StateSet> {
        &self.val
    }

    pub fn val_of(&self, atom: &str) -> StateSet {
        self.val.get(atom).copied().unwrap_or(0)
    }

    /// Restrict the model to a generated subframe, intersecting valuations.
    pub fn generated_submodel(&self, s: usize) -> (Model, Vec<usize>) {
        let (frame, kept) = self.frame.generated_subframe(s);
        let val = self
            .val
            .iter()
            .map(|(a, &set)| {
                let mut sub = 0u64;
                for (new, &old) in kept.iter().enumerate() {
                    if set >> old & 1 == 1 {
                        sub |= 1 << new;
                    }
                }
                (a.clone(), sub)
            })
            .collect();
        (Model { frame, val }, kept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prop16_1_frame() -> Frame {
        // three states a=0, b=1, c=2 with a<=c and a R b
        Frame::build(3, &[(0, 2)], &[(0, 1)], true).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Relation::identity(3);
        let r = Relation::from_pairs(3, &[(0, 1)]);
        assert_eq!(id.compose(&r), r);
        assert_eq!(Relation::empty(3).compose(&r), Relation::empty(3));

        let le = Relation::from_pairs(3, &[(0, 2)]).reflexive_transitive_closure();
        let ge = le.transpose();
        let expected = Relation::from_pairs(3, &[(0, 1), (2, 1)]);
        assert_eq!(ge.compose(&r), expected);
    }

    #[test]
    fn build_frame_examples() {
        let lemma4 = Frame::build(1, &[], &[(0, 0)], true).unwrap();
        assert!(lemma4.le().is_preorder());
        assert!(lemma4.r().contains(0, 0));

        let f = prop16_1_frame();
        assert!(f.le().contains(0, 2));
        assert!(f.le().contains(1, 1));

        let err = Frame::build(2, &[(0, 1)], &[], false).unwrap_err();
        assert!(matches!(err, Error::NotPreorder));
    }

    #[test]
    fn property_examples() {
        let f = prop16_1_frame();
        assert!(!check_property(&f, "fc").unwrap());
        assert!(check_property(&f, "bc").unwrap());
        assert!(check_property(&f, "dc").unwrap());
        assert!(check_property(&f, "uc").unwrap());

        // a=0, c=1, d=2 with a<=c and c R d
        let f3 = Frame::build(3, &[(0, 1)], &[(1, 2)], true).unwrap();
        assert!(!check_property(&f3, "dc").unwrap());

        let loop1 = Frame::build(1, &[], &[(0, 0)], true).unwrap();
        for p in FrameProperty::ALL {
            assert!(p.check(&loop1), "{} on the 1-state loop", p.name());
        }

        assert!(check_property(&f, "zzz").is_err());
    }

    #[test]
    fn transitive_witness_is_not_up_or_down_transitive() {
        // a=0 .. e=4, b<=c<=d, R = {(a,c),(b,e),(d,e)}
        let f = Frame::build(5, &[(1, 2), (2, 3)], &[(0, 2), (1, 4), (3, 4)], true).unwrap();
        assert!(check_property(&f, "tra").unwrap());
        assert!(!check_property(&f, "utra").unwrap());
        assert!(!check_property(&f, "dtra").unwrap());
    }

    #[test]
    fn implied_properties_hold_on_samples() {
        for frame in [
            prop16_1_frame(),
            Frame::build(1, &[], &[(0, 0)], true).unwrap(),
            Frame::build(2, &[(0, 1)], &[(1, 0)], true).unwrap(),
        ] {
            for check in implied_properties_check(&frame) {
                assert!(check.implication_holds);
            }
        }
        let refl = Frame::build(2, &[], &[(0, 0), (1, 1)], true).unwrap();
        assert!(check_property(&refl, "uref").unwrap());
        assert!(check_property(&refl, "dref").unwrap());
    }

    #[test]
    fn symmetric_frames_collapse_confluences() {
        // on symmetric frames fc <=> bc and dc <=> uc
        for le_gen in [vec![], vec![(0usize, 1usize)]] {
            for r_pairs in [
                vec![(0usize, 1usize), (1usize, 0usize)],
                vec![(0, 0), (0, 1), (1, 0)],
            ] {
                let f = Frame::build(2, &le_gen, &r_pairs, true).unwrap();
                if check_property(&f, "sym").unwrap() {
                    assert_eq!(
                        check_property(&f, "fc").unwrap(),
                        check_property(&f, "bc").unwrap()
                    );
                    assert_eq!(
                        check_property(&f, "dc").unwrap(),
                        check_property(&f, "uc").unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn generated_subframe_examples() {
        let one = Frame::build(1, &[], &[(0, 0)], true).unwrap();
        let (sub, kept) = one.generated_subframe(0);
        assert_eq!(sub, one);
        assert_eq!(kept, vec![0]);

        // six states a..f: a<=c, b<=d, c<=e, d<=f, aRb, cRd, eRf
        let six = Frame::build(
            6,
            &[(0, 2), (1, 3), (2, 4), (3, 5)],
            &[(0, 1), (2, 3), (4, 5)],
            true,
        )
        .unwrap();
        let (sub, kept) = six.generated_subframe(0);
        assert_eq!(kept, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(sub.size(), 6);

        // disjoint union of two one-state frames
        let two = Frame::build(2, &[], &[], true).unwrap();
        let (sub, kept) = two.generated_subframe(0);
        assert_eq!(sub.size(), 1);
        assert_eq!(kept, vec![0]);
    }

    #[test]
    fn generated_subframe_idempotent() {
        let six = Frame::build(
            6,
            &[(0, 2), (1, 3), (2, 4), (3, 5)],
            &[(0, 1), (2, 3), (4, 5)],
            true,
        )
        .unwrap();
        let (sub, kept) = six.generated_subframe(1);
        let (sub2, kept2) = sub.generated_subframe(0);
        assert_eq!(sub2.size(), sub.size());
        assert_eq!(kept2.len(), kept.len());
    }

    #[test]
    fn le_closed_examples() {
        let f = prop16_1_frame();
        assert!(f.is_le_closed(0));
        assert!(f.is_le_closed(f.full_mask()));
        assert!(!f.is_le_closed(0b001)); // {a} but a<=c
        assert!(f.is_le_closed(0b100)); // {c}
    }

    #[test]
    fn class_spec_parsing() {
        assert_eq!(
            FrameClassSpec::parse("fbdc").unwrap().props(),
            &[FrameProperty::Fc, FrameProperty::Bc, FrameProperty::Dc]
        );
        assert_eq!(
            FrameClassSpec::parse("ref+tra").unwrap().props(),
            &[FrameProperty::Ref, FrameProperty::Tra]
        );
        assert_eq!(
            FrameClassSpec::parse("dref").unwrap().props(),
            &[FrameProperty::Dref]
        );
        assert!(FrameClassSpec::parse("frc").is_err());
        assert!(FrameClassSpec::parse("all").unwrap().is_unconstrained());
    }

    #[test]
    fn model_valuation_closure_enforced() {
        let f = prop16_1_frame();
        let bad = BTreeMap::from([("p".to_string(), 0b001u64)]);
        assert!(matches!(
            Model::new(f.clone(), bad.clone()),
            Err(Error::ValuationNotClosed(_))
        ));
        let fixed = Model::new_upclosed(f, bad);
        assert_eq!(fixed.val_of("p"), 0b101);
    }
}
