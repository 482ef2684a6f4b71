//! Filtration of finite models through a closed set of formulas: the
//! equivalence setting, the eight filtration conditions, and the smallest
//! and largest constructions.

use crate::error::Error;
use crate::formula::{is_closed, Formula, FormulaSet};
use crate::semantics::{sat_set, SemanticsVariant};
use crate::structures::{Frame, Model, Relation};
use std::collections::BTreeMap;

/// States quotiented by agreement on every formula of a closed set.
#[derive(Clone, Debug)]
pub struct EquivalenceSetting {
    /// Sigma in canonical order: sorted by (length, printed form).
    pub sigma: Vec<Formula>,
    /// Satisfaction set of each sigma member in the original model.
    pub sat_sets: Vec<u64>,
    /// Classes as sorted state lists, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each original state.
    pub class_of: Vec<usize>,
}

impl EquivalenceSetting {
    /// Signature of a state: which sigma members hold there.
    fn signature(&self, s: usize) -> Vec<bool> {
        self.sat_sets.iter().map(|set| set >> s & 1 == 1).collect()
    }

    /// Representative (least) state of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// Canonical ordering of a closed set.
pub fn canonical_sigma(sigma: &FormulaSet) -> Vec<Formula> {
    let mut out: Vec<Formula> = sigma.iter().cloned().collect();
    out.sort_by_key(|f| (f.len(), f.to_string()));
    out
}

/// Partition the states of `m` by agreement on the members of `sigma`.
pub fn equiv_classes(m: &Model, sigma: &FormulaSet) -> Result<EquivalenceSetting, Error> {
    if !is_closed(sigma) {
        let missing = |g: &Formula| {
            if sigma.contains(g) {
                None
            } else {
                Some(g.to_string())
            }
        };
        let witness = sigma
            .iter()
            .find_map(|f| match f {
                Formula::Impl(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                    missing(a).or_else(|| missing(b))
                }
                Formula::Box_(a) | Formula::Dia(a) => missing(a),
                _ => None,
            })
            .unwrap_or_else(|| "a component formula".into());
        return Err(Error::SigmaNotClosed(witness));
    }
    let ordered = canonical_sigma(sigma);
    let sat_sets: Vec<u64> = ordered
        .iter()
        .map(|f| sat_set(m, f, SemanticsVariant::New))
        .collect();
    let n = m.frame().size();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    let mut seen: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
    for s in 0..n {
        let sig: Vec<bool> = sat_sets.iter().map(|set| set >> s & 1 == 1).collect();
        match seen.get(&sig) {
            Some(&c) => {
                classes[c].push(s);
                class_of[s] = c;
            }
            None => {
                let c = classes.len();
                seen.insert(sig, c);
                classes.push(vec![s]);
                class_of[s] = c;
            }
        }
    }
    Ok(EquivalenceSetting {
        sigma: ordered,
        sat_sets,
        classes,
        class_of,
    })
}

fn common_le(setting: &EquivalenceSetting) -> Relation {
    // [s] <= [t] iff every sigma member true at s is true at t
    let k = setting.classes.len();
    let mut le = Relation::empty(k);
    for i in 0..k {
        let sig_i = setting.signature(setting.classes[i][0]);
        for j in 0..k {
            let sig_j = setting.signature(setting.classes[j][0]);
            if sig_i.iter().zip(&sig_j).all(|(a, b)| !a || *b) {
                le.insert(i, j);
            }
        }
    }
    le
}

fn quotient_valuation(
    m: &Model,
    setting: &EquivalenceSetting,
) -> BTreeMap<String, u64> {
    // V'(p) = V(p)/~ for atoms p in sigma
    let mut val = BTreeMap::new();
    for f in &setting.sigma {
        if let Formula::Atom(p) = f {
            let mut set = 0u64;
            for (c, members) in setting.classes.iter().enumerate() {
                if members.iter().any(|&s| m.val_of(p) >> s & 1 == 1) {
                    set |= 1 << c;
                }
            }
            val.insert(p.clone(), set);
        }
    }
    val
}

/// Smallest filtration: `[s] R' [t]` iff some members are `R`-related.
pub fn smallest_filtration(
    m: &Model,
    sigma: &FormulaSet,
) -> Result<(Model, EquivalenceSetting), Error> {
    let setting = equiv_classes(m, sigma)?;
    let k = setting.classes.len();
    let mut r = Relation::empty(k);
    for (i, j) in m.frame().r().pairs() {
        r.insert(setting.class_of[i], setting.class_of[j]);
    }
    let le = common_le(&setting);
    let frame = Frame::new(le, r)?;
    let model = Model::new(frame, quotient_valuation(m, &setting))?;
    Ok((model, setting))
}

/// Largest filtration: `[s] R' [t]` iff the quotient respects every boxed
/// and diamond member of sigma.
pub fn largest_filtration(
    m: &Model,
    sigma: &FormulaSet,
) -> Result<(Model, EquivalenceSetting), Error> {
    let setting = equiv_classes(m, sigma)?;
    let k = setting.classes.len();
    let sat_of = |f: &Formula| sat_set(m, f, SemanticsVariant::New);
    let mut r = Relation::empty(k);
    for i in 0..k {
        let s = setting.classes[i][0];
        for j in 0..k {
            let t = setting.classes[j][0];
            let boxes_ok = setting.sigma.iter().all(|f| match f {
                Formula::Box_(a) => {
                    let s_box = sat_of(f) >> s & 1 == 1;
                    !s_box || sat_of(a) >> t & 1 == 1
                }
                _ => true,
            });
            let dias_ok = setting.sigma.iter().all(|f| match f {
                Formula::Dia(a) => {
                    let t_arg = sat_of(a) >> t & 1 == 1;
                    !t_arg || sat_of(f) >> s & 1 == 1
                }
                _ => true,
            });
            if boxes_ok && dias_ok {
                r.insert(i, j);
            }
        }
    }
    let le = common_le(&setting);
    let frame = Frame::new(le, r)?;
    let model = Model::new(frame, quotient_valuation(m, &setting))?;
    Ok((model, setting))
}

/// Pass/fail of the eight filtration conditions.
#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub conditions: [bool; 8],
}

impl FiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }
}

/// Check a candidate quotient model against all eight filtration conditions.
pub fn is_filtration(
    candidate: &Model,
    original: &Model,
    sigma: &FormulaSet,
    setting: &EquivalenceSetting,
) -> Result<FiltrationReport, Error> {
    if candidate.frame().size() != setting.classes.len() {
        return Err(Error::WrongCarrier);
    }
    if !is_closed(sigma) {
        return Err(Error::SigmaNotClosed("sigma must be closed".into()));
    }
    let n = original.frame().size();
    let cls = |s: usize| setting.class_of[s];
    let le0 = original.frame().le();
    let r0 = original.frame().r();
    let le1 = candidate.frame().le();
    let r1 = candidate.frame().r();
    let ge1 = le1.transpose();
    let sat_of = |f: &Formula| sat_set(original, f, SemanticsVariant::New);

    // 1. carrier: candidate states are the classes (checked above); classes
    //    must also exhaust the original states
    let cond1 = setting.class_of.iter().all(|&c| c < setting.classes.len());

    // 2. s <= t implies [s] <=' [t]
    let mut cond2 = true;
    for (s, t) in le0.pairs() {
        cond2 &= le1.contains(cls(s), cls(t));
    }

    // 3. implications transfer along <='
    let mut cond3 = true;
    for f in sigma {
        if let Formula::Impl(a, b) = f {
            let f_set = sat_of(f);
            let a_set = sat_of(a);
            let b_set = sat_of(b);
            for s in 0..n {
                if f_set >> s & 1 == 0 {
                    continue;
                }
                for t in 0..n {
                    if le1.contains(cls(s), cls(t)) && a_set >> t & 1 == 1 {
                        cond3 &= b_set >> t & 1 == 1;
                    }
                }
            }
        }
    }

    // 4. s <=.R t implies [s] <='.R'.<=' [t]
    let le_r0 = le0.compose(r0);
    let chain_up = le1.compose(r1).compose(le1);
    let mut cond4 = true;
    for (s, t) in le_r0.pairs() {
        cond4 &= chain_up.contains(cls(s), cls(t));
    }

    // 5. boxes transfer along <='.R'
    let le_r1 = le1.compose(r1);
    let mut cond5 = true;
    for f in sigma {
        if let Formula::Box_(a) = f {
            let f_set = sat_of(f);
            let a_set = sat_of(a);
            for s in 0..n {
                if f_set >> s & 1 == 0 {
                    continue;
                }
                for t in 0..n {
                    if le_r1.contains(cls(s), cls(t)) {
                        cond5 &= a_set >> t & 1 == 1;
                    }
                }
            }
        }
    }

    // 6. s >=.R t implies [s] >='.R'.>=' [t]
    let ge0 = le0.transpose();
    let ge_r0 = ge0.compose(r0);
    let chain_down = ge1.compose(r1).compose(&ge1);
    let mut cond6 = true;
    for (s, t) in ge_r0.pairs() {
        cond6 &= chain_down.contains(cls(s), cls(t));
    }

    // 7. diamonds transfer along >='.R'
    let ge_r1 = ge1.compose(r1);
    let mut cond7 = true;
    for f in sigma {
        if let Formula::Dia(a) = f {
            let f_set = sat_of(f);
            let a_set = sat_of(a);
            for t in 0..n {
                if a_set >> t & 1 == 0 {
                    continue;
                }
                for s in 0..n {
                    if ge_r1.contains(cls(s), cls(t)) {
                        cond7 &= f_set >> s & 1 == 1;
                    }
                }
            }
        }
    }

    // 8. V'(p) = V(p)/~ for sigma atoms
    let mut cond8 = true;
    for f in sigma {
        if let Formula::Atom(p) = f {
            let mut quotient = 0u64;
            for s in 0..n {
                if original.val_of(p) >> s & 1 == 1 {
                    quotient |= 1 << cls(s);
                }
            }
            cond8 &= candidate.val_of(p) == quotient;
        }
    }

    Ok(FiltrationReport {
        conditions: [cond1, cond2, cond3, cond4, cond5, cond6, cond7, cond8],
    })
}

/// The filtration lemma: every sigma member holds at `[s]` iff it holds
/// at `s`.
pub fn filtration_lemma_check(
    candidate: &Model,
    original: &Model,
    sigma: &FormulaSet,
    setting: &EquivalenceSetting,
) -> bool {
    sigma.iter().all(|f| {
        let orig = sat_set(original, f, SemanticsVariant::New);
        let quot = sat_set(candidate, f, SemanticsVariant::New);
        (0..original.frame().size())
            .all(|s| (orig >> s & 1 == 1) == (quot >> setting.class_of[s] & 1 == 1))
    })
}
