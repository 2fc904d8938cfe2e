//! Three-valued interpretations, the min-reduct, and 3-valued answer sets.
//!
//! A 3-valued answer set `(X⁺, X⁻)` pairs an answer set `X⁺` with a
//! ⊆-minimal set `X⁻` of literals whose default falsity is enough to derive
//! `X⁺`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::semantics::{answer_sets, consequences, reduct, AnswerSets};
use crate::syntax::{format_literal_set, is_consistent_set, Literal, LiteralSet, Program, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpretationError {
    #[error("positive and negative parts overlap on {0}")]
    Overlap(String),
    #[error("positive part {0} is inconsistent")]
    InconsistentPlus(String),
}

/// A pair `(plus, minus)` of disjoint literal sets with `plus` consistent.
/// `minus` may hold both `a` and `-a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThreeValued {
    plus: LiteralSet,
    minus: LiteralSet,
}

impl ThreeValued {
    pub fn new(plus: LiteralSet, minus: LiteralSet) -> Result<Self, InterpretationError> {
        let overlap: LiteralSet = plus.intersection(&minus).cloned().collect();
        if !overlap.is_empty() {
            return Err(InterpretationError::Overlap(format_literal_set(&overlap)));
        }
        if !is_consistent_set(&plus) {
            return Err(InterpretationError::InconsistentPlus(format_literal_set(
                &plus,
            )));
        }
        Ok(ThreeValued { plus, minus })
    }

    pub fn plus(&self) -> &LiteralSet {
        &self.plus
    }

    pub fn minus(&self) -> &LiteralSet {
        &self.minus
    }

    pub(crate) fn with_minus(&self, minus: LiteralSet) -> ThreeValued {
        debug_assert!(self.plus.is_disjoint(&minus));
        ThreeValued {
            plus: self.plus.clone(),
            minus,
        }
    }
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} ; {})",
            format_literal_set(&self.plus),
            format_literal_set(&self.minus)
        )
    }
}

/// `AS₃(P)`. Mirrors [`AnswerSets`]: an inconsistent program yields the
/// distinguished `Inconsistent` marker, a program without answer sets yields
/// `NoAnswerSets`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreeValuedAnswerSets {
    Sets(BTreeSet<ThreeValued>),
    Inconsistent,
    NoAnswerSets,
}

impl ThreeValuedAnswerSets {
    pub fn interpretations(&self) -> impl Iterator<Item = &ThreeValued> {
        let sets = match self {
            ThreeValuedAnswerSets::Sets(s) => Some(s),
            _ => None,
        };
        sets.into_iter().flatten()
    }
}

/// The min-reduct: drop rules whose naf body meets `x⁺`, then erase from the
/// remaining naf bodies the literals assumed false in `x⁻`.
pub fn min_reduct(p: &Program, x: &ThreeValued) -> Program {
    p.iter()
        .filter(|r| r.nbody.is_disjoint(&x.plus))
        .map(|r| Rule {
            head: r.head.clone(),
            pbody: r.pbody.clone(),
            nbody: r.nbody.difference(&x.minus).cloned().collect(),
        })
        .collect()
}

/// `Pgm(X) = {a ← | a ∈ X⁺} ∪ {⊥ ← a | a ∈ X⁻}`.
pub fn canonical_program(x: &ThreeValued) -> Program {
    x.plus
        .iter()
        .map(|l| Rule::fact(l.clone()))
        .chain(x.minus.iter().map(|l| Rule::constraint([l.clone()], [])))
        .collect()
}

/// Checks all conditions on a candidate `(X⁺, X⁻)`:
///
/// 1. the min-reduct with every residual naf literal erased closes to `X⁺`
///    (this also rules out fired constraints);
/// 2. the min-reduct itself, residual `not l` read as fresh atoms, closes to
///    `X⁺`;
/// 3. no strictly smaller `Y⁻ ⊂ X⁻` passes condition 2.
pub fn is_three_valued_answer_set(p: &Program, x: &ThreeValued) -> bool {
    let reduced = min_reduct(p, x);
    let erased = reduct(&reduced, &LiteralSet::new());
    if !consequences(&erased).is_consistent_with(&x.plus) {
        return false;
    }
    if !derives(p, x) {
        return false;
    }
    // Fewer erased naf literals can only shrink the closure, so checking the
    // subsets one element smaller covers every strict subset.
    x.minus.iter().all(|dropped| {
        let mut smaller = x.minus.clone();
        smaller.remove(dropped);
        !derives(p, &x.with_minus(smaller))
    })
}

/// Condition 2: `Cn(P^X) = X⁺`.
fn derives(p: &Program, x: &ThreeValued) -> bool {
    consequences(&min_reduct(p, x)).is_consistent_with(&x.plus)
}

/// `AS₃(P)`: for every answer set `X⁺`, the ⊆-minimal `X⁻` drawn from the
/// naf literals of `p` outside `X⁺`.
pub fn three_valued_answer_sets(p: &Program) -> ThreeValuedAnswerSets {
    let sets = match answer_sets(p) {
        AnswerSets::Sets(sets) => sets,
        AnswerSets::Inconsistent => return ThreeValuedAnswerSets::Inconsistent,
        AnswerSets::NoAnswerSets => return ThreeValuedAnswerSets::NoAnswerSets,
    };
    let naf = p.naf_literals();
    let mut result = BTreeSet::new();
    for plus in sets {
        let base: Vec<Literal> = naf.difference(&plus).cloned().collect();
        let interpretation = ThreeValued {
            plus,
            minus: LiteralSet::new(),
        };
        result.extend(minimal_assumptions(p, &interpretation, &base));
    }
    ThreeValuedAnswerSets::Sets(result)
}

/// Subsets of `base` by increasing size, skipping supersets of sets already
/// accepted; what survives and derives `X⁺` is minimal.
fn minimal_assumptions(p: &Program, x: &ThreeValued, base: &[Literal]) -> Vec<ThreeValued> {
    assert!(base.len() < 32, "too many naf literals to enumerate");
    let mut accepted: Vec<LiteralSet> = Vec::new();
    for size in 0..=base.len() {
        for minus in subsets_of_size(base, size) {
            if accepted.iter().any(|a| a.is_subset(&minus)) {
                continue;
            }
            if derives(p, &x.with_minus(minus.clone())) {
                accepted.push(minus);
            }
        }
    }
    accepted.into_iter().map(|m| x.with_minus(m)).collect()
}

/// All `size`-element subsets of `items`, in lexicographic order of
/// positions.
fn subsets_of_size(items: &[Literal], size: usize) -> Vec<LiteralSet> {
    fn go(
        items: &[Literal],
        size: usize,
        start: usize,
        current: &mut Vec<Literal>,
        out: &mut Vec<LiteralSet>,
    ) {
        if current.len() == size {
            out.push(current.iter().cloned().collect());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - current.len() {
                break;
            }
            current.push(items[i].clone());
            go(items, size, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::new(), &mut out);
    out
}

impl From<&ThreeValuedAnswerSets> for AnswerSets {
    fn from(value: &ThreeValuedAnswerSets) -> Self {
        match value {
            ThreeValuedAnswerSets::Sets(s) => {
                AnswerSets::from_sets(s.iter().map(|x| x.plus.clone()).collect())
            }
            ThreeValuedAnswerSets::Inconsistent => AnswerSets::Inconsistent,
            ThreeValuedAnswerSets::NoAnswerSets => AnswerSets::NoAnswerSets,
        }
    }
}
