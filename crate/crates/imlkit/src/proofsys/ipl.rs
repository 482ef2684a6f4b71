//! Decision procedure for intuitionistic propositional consequence: the
//! contraction-free sequent calculus LJT/G4ip. Maximal modal subformulas are
//! frozen as fresh atoms before proving, so any consequence found under
//! frozen modalities is a uniform-substitution instance of a propositional
//! theorem.

use crate::formula::Formula;
use std::collections::HashMap;

/// Decide whether `goal` follows intuitionistically from `premises`,
/// treating maximal `[]`/`<>` subformulas as opaque atoms.
pub fn ipl_prove(premises: &[Formula], goal: &Formula) -> bool {
    let mut freezer = Freezer::default();
    let gamma: Vec<Formula> = premises.iter().map(|f| freezer.freeze(f)).collect();
    let frozen_goal = freezer.freeze(goal);
    prove(gamma, frozen_goal)
}

#[derive(Default)]
struct Freezer {
    names: HashMap<Formula, String>,
}

impl Freezer {
    fn freeze(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Atom(_) | Formula::Top | Formula::Bot => f.clone(),
            Formula::Impl(a, b) => Formula::imp(self.freeze(a), self.freeze(b)),
            Formula::Or(a, b) => Formula::or(self.freeze(a), self.freeze(b)),
            Formula::And(a, b) => Formula::and(self.freeze(a), self.freeze(b)),
            Formula::Box_(_) | Formula::Dia(_) => {
                let next = self.names.len();
                let name = self
                    .names
                    .entry(f.clone())
                    .or_insert_with(|| format!("#m{next}"))
                    .clone();
                Formula::Atom(name)
            }
        }
    }
}

fn prove(mut gamma: Vec<Formula>, mut goal: Formula) -> bool {
    // saturation: invertible rules first
    loop {
        if gamma.iter().any(|f| *f == Formula::Bot) {
            return true;
        }
        match goal {
            Formula::Top => return true,
            Formula::And(a, b) => {
                return prove(gamma.clone(), *a) && prove(gamma, *b);
            }
            Formula::Impl(a, b) => {
                gamma.push(*a);
                goal = *b;
                continue;
            }
            _ => {}
        }
        if let Some(i) = gamma.iter().position(|f| reducible_left(f, &gamma)) {
            let f = gamma.swap_remove(i);
            match f {
                Formula::Top => {}
                Formula::And(a, b) => {
                    gamma.push(*a);
                    gamma.push(*b);
                }
                Formula::Or(a, b) => {
                    let mut left = gamma.clone();
                    left.push(*a);
                    gamma.push(*b);
                    return prove(left, goal.clone()) && prove(gamma, goal);
                }
                Formula::Impl(lhs, rhs) => match *lhs {
                    Formula::Top => gamma.push(*rhs),
                    Formula::Bot => {}
                    Formula::And(a1, a2) => {
                        gamma.push(Formula::imp(*a1, Formula::imp(*a2, *rhs)));
                    }
                    Formula::Or(a1, a2) => {
                        gamma.push(Formula::imp(*a1, (*rhs).clone()));
                        gamma.push(Formula::imp(*a2, *rhs));
                    }
                    Formula::Atom(_) => gamma.push(*rhs), // the atom is in gamma
                    _ => unreachable!("nested implications are not invertible"),
                },
                _ => unreachable!("only reducible shapes are selected"),
            }
            continue;
        }
        break;
    }

    // choice phase: axiom, right disjunction, or a nested implication
    if let Formula::Atom(_) = goal {
        if gamma.contains(&goal) {
            return true;
        }
    }
    if let Formula::Or(a, b) = &goal {
        if prove(gamma.clone(), (**a).clone()) || prove(gamma.clone(), (**b).clone()) {
            return true;
        }
    }
    for i in 0..gamma.len() {
        if let Formula::Impl(lhs, rhs) = &gamma[i] {
            if let Formula::Impl(a, b) = lhs.as_ref() {
                let mut rest: Vec<Formula> = gamma.clone();
                rest.swap_remove(i);
                let mut first = rest.clone();
                first.push(Formula::imp((**b).clone(), (**rhs).clone()));
                if prove(first, Formula::imp((**a).clone(), (**b).clone())) {
                    let mut second = rest;
                    second.push((**rhs).clone());
                    if prove(second, goal.clone()) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn reducible_left(f: &Formula, gamma: &[Formula]) -> bool {
    match f {
        Formula::Top | Formula::And(_, _) | Formula::Or(_, _) => true,
        Formula::Impl(lhs, _) => match lhs.as_ref() {
            Formula::Top | Formula::Bot | Formula::And(_, _) | Formula::Or(_, _) => true,
            Formula::Atom(_) => gamma.iter().any(|g| g == lhs.as_ref()),
            _ => false,
        },
        _ => false,
    }
}
