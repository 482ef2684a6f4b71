//! Formula syntax: the AST, a parser and printer for the ASCII surface
//! grammar, syntactic measures, closed sets, and the accessibility
//! relations between finite sets of formulas.

mod parser;

pub use parser::{parse, ParseError};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A modal formula over named atoms.
///
/// Negation and bi-implication are surface abbreviations (`~a` is `a -> F`,
/// `a <-> b` is `(a -> b) & (b -> a)`); they never appear as AST cases.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(String),
    Impl(Box<Formula>, Box<Formula>),
    Top,
    Bot,
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Box_(Box<Formula>),
    Dia(Box<Formula>),
}

/// Finite set of formulas under structural equality.
pub type FormulaSet = BTreeSet<Formula>;

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box_(Box::new(a))
    }

    pub fn dia(a: Formula) -> Formula {
        Formula::Dia(Box::new(a))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// Number of AST nodes.
    pub fn len(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 1,
            Formula::Impl(a, b) | Formula::Or(a, b) | Formula::And(a, b) => 1 + a.len() + b.len(),
            Formula::Box_(a) | Formula::Dia(a) => 1 + a.len(),
        }
    }

    /// Atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Impl(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::Box_(a) | Formula::Dia(a) => a.collect_atoms(out),
        }
    }

    /// Simultaneous uniform substitution. Atoms outside the map are unchanged.
    pub fn substitute(&self, sigma: &BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Atom(p) => sigma.get(p).cloned().unwrap_or_else(|| self.clone()),
            Formula::Top | Formula::Bot => self.clone(),
            Formula::Impl(a, b) => Formula::imp(a.substitute(sigma), b.substitute(sigma)),
            Formula::Or(a, b) => Formula::or(a.substitute(sigma), b.substitute(sigma)),
            Formula::And(a, b) => Formula::and(a.substitute(sigma), b.substitute(sigma)),
            Formula::Box_(a) => Formula::boxed(a.substitute(sigma)),
            Formula::Dia(a) => Formula::dia(a.substitute(sigma)),
        }
    }

    /// The least closed set of formulas containing `self`.
    pub fn closure(&self) -> FormulaSet {
        let mut out = BTreeSet::new();
        self.collect_closure(&mut out);
        out
    }

    fn collect_closure(&self, out: &mut FormulaSet) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => {}
            Formula::Impl(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_closure(out);
                b.collect_closure(out);
            }
            Formula::Box_(a) | Formula::Dia(a) => a.collect_closure(out),
        }
    }
}

/// Whether `set` satisfies all five closure conditions.
pub fn is_closed(set: &FormulaSet) -> bool {
    set.iter().all(|f| match f {
        Formula::Atom(_) | Formula::Top | Formula::Bot => true,
        Formula::Impl(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
            set.contains(a) && set.contains(b)
        }
        Formula::Box_(a) | Formula::Dia(a) => set.contains(a),
    })
}

/// Closure of a whole set: union of member closures.
pub fn closure_of_set(set: &FormulaSet) -> FormulaSet {
    let mut out = BTreeSet::new();
    for f in set {
        f.collect_closure(&mut out);
    }
    out
}

/// Accessibility between sets of formulas: every `[]B` in `delta` has `B` in
/// `lambda`, and every `B` in `lambda` has `<>B` in `delta`.
pub fn bowtie(delta: &FormulaSet, lambda: &FormulaSet) -> bool {
    let boxes_ok = delta.iter().all(|f| match f {
        Formula::Box_(a) => lambda.contains(a),
        _ => true,
    });
    boxes_ok
        && lambda
            .iter()
            .all(|b| delta.contains(&Formula::dia(b.clone())))
}

/// The `gamma`-relativized accessibility relation, restricted to the
/// disjunctions `A | []B` syntactically present in `delta`: whenever `A` is
/// outside `gamma`, `B` must be in `lambda`; and every member of `lambda`
/// must have its diamond in `delta`.
pub fn bowtie_gamma(gamma: &FormulaSet, delta: &FormulaSet, lambda: &FormulaSet) -> bool {
    let disj_ok = delta.iter().all(|f| match f {
        Formula::Or(a, rhs) => match rhs.as_ref() {
            Formula::Box_(b) if !gamma.contains(a.as_ref()) => lambda.contains(b.as_ref()),
            _ => true,
        },
        _ => true,
    });
    disj_ok
        && lambda
            .iter()
            .all(|b| delta.contains(&Formula::dia(b.clone())))
}

// Printing. Precedence: -> (1, right assoc) < | (2) < & (3) < unary (4).
// `a -> F` prints as `~a`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 1)
    }
}

impl Formula {
    fn prec(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 5,
            Formula::Box_(_) | Formula::Dia(_) => 4,
            Formula::Impl(_, b) if **b == Formula::Bot => 4,
            Formula::And(_, _) => 3,
            Formula::Or(_, _) => 2,
            Formula::Impl(_, _) => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.prec();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Atom(p) => write!(f, "{p}")?,
            Formula::Top => write!(f, "T")?,
            Formula::Bot => write!(f, "F")?,
            Formula::Impl(a, b) if **b == Formula::Bot => {
                write!(f, "~")?;
                a.fmt_prec(f, 4)?;
            }
            Formula::Impl(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "->")?;
                b.fmt_prec(f, 1)?;
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "|")?;
                b.fmt_prec(f, 3)?;
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, "&")?;
                b.fmt_prec(f, 4)?;
            }
            Formula::Box_(a) => {
                write!(f, "[]")?;
                a.fmt_prec(f, 4)?;
            }
            Formula::Dia(a) => {
                write!(f, "<>")?;
                a.fmt_prec(f, 4)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}
