//! Consequence operator, Gelfond–Lifschitz reduct, answer sets and
//! (strong) equivalence of extended logic programs.

use std::collections::BTreeSet;

use crate::syntax::{is_consistent_set, Literal, LiteralSet, Program, Rule};

/// Outcome of the consequence operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    Consistent(LiteralSet),
    /// A complementary pair was derived; the closure is the set of all
    /// literals.
    Inconsistent,
    /// A constraint body was derived.
    ConstraintViolated,
}

impl Closure {
    pub fn is_consistent_with(&self, set: &LiteralSet) -> bool {
        matches!(self, Closure::Consistent(s) if s == set)
    }
}

/// The answer sets of a program.
///
/// `Sets` always holds at least one consistent set; a program without
/// answer sets is `NoAnswerSets`, and a program whose only answer set is the
/// set of all literals is `Inconsistent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnswerSets {
    Sets(BTreeSet<LiteralSet>),
    Inconsistent,
    NoAnswerSets,
}

/// One member of an answer-set family: either a consistent literal set or
/// the set of all literals. Used when families are combined by union.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Belief {
    Literals(LiteralSet),
    Everything,
}

impl AnswerSets {
    pub(crate) fn from_sets(sets: BTreeSet<LiteralSet>) -> Self {
        if sets.is_empty() {
            AnswerSets::NoAnswerSets
        } else {
            AnswerSets::Sets(sets)
        }
    }

    /// The consistent answer sets, empty for the two inconsistent cases.
    pub fn sets(&self) -> impl Iterator<Item = &LiteralSet> {
        let sets = match self {
            AnswerSets::Sets(s) => Some(s),
            _ => None,
        };
        sets.into_iter().flatten()
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, AnswerSets::Sets(_))
    }

    pub fn contains(&self, set: &LiteralSet) -> bool {
        matches!(self, AnswerSets::Sets(s) if s.contains(set))
    }

    /// `AS(P)` viewed as a plain set of beliefs: `{𝓛}` for `Inconsistent`
    /// and `∅` for `NoAnswerSets`.
    pub fn family(&self) -> BTreeSet<Belief> {
        match self {
            AnswerSets::Sets(s) => s.iter().cloned().map(Belief::Literals).collect(),
            AnswerSets::Inconsistent => BTreeSet::from([Belief::Everything]),
            AnswerSets::NoAnswerSets => BTreeSet::new(),
        }
    }
}

/// A here-and-there pair `(here, there)` with `here ⊆ there`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeModel {
    pub here: LiteralSet,
    pub there: LiteralSet,
}

/// `Cn(P)`, reading every `not l` as a fresh atom that is never derived.
///
/// A rule fires once its positive body holds and it has no residual naf
/// literals. A derived complementary pair takes precedence over a fired
/// constraint, since the closure is then the set of all literals.
pub fn consequences(p: &Program) -> Closure {
    closure_of(p.iter().filter(|r| r.nbody.is_empty()))
}

/// Least fixpoint of the given rules, ignoring their naf parts.
fn closure_of<'a>(rules: impl Iterator<Item = &'a Rule> + Clone) -> Closure {
    let mut derived = LiteralSet::new();
    let mut changed = true;
    while changed {
        changed = false;
        for rule in rules.clone() {
            if let Some(head) = &rule.head {
                if !derived.contains(head) && rule.pbody.is_subset(&derived) {
                    derived.insert(head.clone());
                    changed = true;
                }
            }
        }
    }
    if !is_consistent_set(&derived) {
        return Closure::Inconsistent;
    }
    let violated = rules
        .clone()
        .any(|r| r.head.is_none() && r.pbody.is_subset(&derived));
    if violated {
        Closure::ConstraintViolated
    } else {
        Closure::Consistent(derived)
    }
}

/// `P^X`: rules whose naf body meets `x` are dropped, the rest lose their
/// naf body.
pub fn reduct(p: &Program, x: &LiteralSet) -> Program {
    p.iter()
        .filter(|r| r.nbody.is_disjoint(x))
        .map(|r| Rule {
            head: r.head.clone(),
            pbody: r.pbody.clone(),
            nbody: LiteralSet::new(),
        })
        .collect()
}

/// `Cn(P^X) = X` with `x` consistent.
pub fn is_answer_set(p: &Program, x: &LiteralSet) -> bool {
    closure_of(p.iter().filter(|r| r.nbody.is_disjoint(x))).is_consistent_with(x)
}

/// `Cn(P^𝓛) = 𝓛`: only the naf-free rules survive the reduct by 𝓛.
fn has_inconsistent_answer_set(p: &Program) -> bool {
    consequences(p) == Closure::Inconsistent
}

/// Calls `visit` on every consistent subset of `base`, choosing for each
/// atom at most one of its literals. Stops early when `visit` returns false.
pub(crate) fn for_each_consistent_subset(
    base: &LiteralSet,
    mut visit: impl FnMut(&LiteralSet) -> bool,
) {
    // Group literals per atom; the ordering keeps `a` and `-a` adjacent.
    let mut choices: Vec<Vec<&Literal>> = Vec::new();
    for lit in base {
        match choices.last_mut() {
            Some(group) if group[0].atom() == lit.atom() => group.push(lit),
            _ => choices.push(vec![lit]),
        }
    }
    let mut current = LiteralSet::new();
    fn go<'a>(
        choices: &[Vec<&'a Literal>],
        current: &mut LiteralSet,
        visit: &mut dyn FnMut(&LiteralSet) -> bool,
    ) -> bool {
        let Some((group, rest)) = choices.split_first() else {
            return visit(current);
        };
        if !go(rest, current, visit) {
            return false;
        }
        for lit in group {
            current.insert((*lit).clone());
            let keep_going = go(rest, current, visit);
            current.remove(*lit);
            if !keep_going {
                return false;
            }
        }
        true
    }
    go(&choices, &mut current, &mut visit);
}

/// All answer sets of `p`.
///
/// Candidates range over the consistent subsets of the head literals of
/// `p`, since `Cn(P^X)` can only contain heads.
pub fn answer_sets(p: &Program) -> AnswerSets {
    if has_inconsistent_answer_set(p) {
        // Every reduct contains the naf-free rules, so no consistent
        // candidate can be stable either.
        return AnswerSets::Inconsistent;
    }
    let mut found = BTreeSet::new();
    for_each_consistent_subset(&p.head_literals(), |x| {
        if is_answer_set(p, x) {
            found.insert(x.clone());
        }
        true
    });
    AnswerSets::from_sets(found)
}

/// A program is consistent iff it has an answer set other than 𝓛.
pub fn is_consistent(p: &Program) -> bool {
    if has_inconsistent_answer_set(p) {
        return false;
    }
    let mut found = false;
    for_each_consistent_subset(&p.head_literals(), |x| {
        found = is_answer_set(p, x);
        !found
    });
    found
}

/// Weak equivalence: identical answer sets.
pub fn equivalent(p: &Program, q: &Program) -> bool {
    answer_sets(p) == answer_sets(q)
}

/// Classical satisfaction of a rule by a consistent interpretation.
fn satisfies(t: &LiteralSet, rule: &Rule) -> bool {
    let body_holds = rule.pbody.is_subset(t) && rule.nbody.is_disjoint(t);
    !body_holds || rule.head.as_ref().is_some_and(|h| t.contains(h))
}

/// SE-models of `p` over its own literal base.
pub fn se_models(p: &Program) -> BTreeSet<SeModel> {
    se_models_over(p, &p.literals())
}

/// SE-models of `p` with `here ⊆ there ⊆ base`, `there` consistent.
pub fn se_models_over(p: &Program, base: &LiteralSet) -> BTreeSet<SeModel> {
    let mut models = BTreeSet::new();
    for_each_consistent_subset(base, |there| {
        if p.iter().all(|r| satisfies(there, r)) {
            let reduced = reduct(p, there);
            for_each_subset(there, |here| {
                if reduced.iter().all(|r| satisfies(here, r)) {
                    models.insert(SeModel {
                        here: here.clone(),
                        there: there.clone(),
                    });
                }
            });
        }
        true
    });
    models
}

/// Consistent sets over `base` closed under the naf-free, non-constraint
/// rules of `p`. These decide whether `P ∪ R` has 𝓛 as its answer set for
/// an arbitrary `R`, which consistent SE-models cannot express.
pub fn explosion_models_over(p: &Program, base: &LiteralSet) -> BTreeSet<LiteralSet> {
    let mut models = BTreeSet::new();
    for_each_consistent_subset(base, |h| {
        let closed = p
            .iter()
            .filter(|r| r.nbody.is_empty() && r.head.is_some())
            .all(|r| satisfies(h, r));
        if closed {
            models.insert(h.clone());
        }
        true
    });
    models
}

fn for_each_subset(set: &LiteralSet, mut visit: impl FnMut(&LiteralSet)) {
    let items: Vec<&Literal> = set.iter().collect();
    assert!(items.len() < 32, "literal set too large to enumerate");
    for mask in 0u32..(1 << items.len()) {
        let subset = items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| (*l).clone())
            .collect();
        visit(&subset);
    }
}

/// Strong equivalence, decided on the joint literal base of both programs
/// by comparing SE-models and the consistent closed sets of the naf-free
/// parts.
pub fn strongly_equivalent(p: &Program, q: &Program) -> bool {
    let mut base = p.literals();
    base.extend(q.literals());
    se_models_over(p, &base) == se_models_over(q, &base)
        && explosion_models_over(p, &base) == explosion_models_over(q, &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;
    use crate::syntax::tests::set;

    fn prog(s: &str) -> Program {
        parse_program(s).unwrap()
    }

    fn sets(items: &[&[&str]]) -> AnswerSets {
        AnswerSets::Sets(items.iter().map(|s| set(s)).collect())
    }

    #[test]
    fn consequences_treat_naf_as_fresh_atoms() {
        assert_eq!(
            consequences(&prog("a. b :- a. c :- not d.")),
            Closure::Consistent(set(&["a", "b"]))
        );
        assert_eq!(
            consequences(&Program::empty()),
            Closure::Consistent(set(&[]))
        );
        assert_eq!(consequences(&prog("a. -a.")), Closure::Inconsistent);
        assert_eq!(consequences(&prog("a. :- a.")), Closure::ConstraintViolated);
        assert_eq!(consequences(&prog("a. -a. :- a.")), Closure::Inconsistent);
    }

    #[test]
    fn reduct_examples() {
        let p = prog("a. b :- a, not c. c :- not b.");
        assert!(reduct(&p, &set(&["a", "b"])).same_rules(&prog("a. b :- a.")));
        let pos = prog("a. b :- a. -c :- b.");
        assert_eq!(reduct(&pos, &set(&["a", "c"])), pos);
        assert!(reduct(&prog("c :- not b."), &set(&["b"])).is_empty());
    }

    #[test]
    fn answer_set_examples() {
        assert_eq!(
            answer_sets(&prog("a. b :- a, not c. c :- not b.")),
            sets(&[&["a", "b"], &["a", "c"]])
        );
        assert_eq!(answer_sets(&Program::empty()), sets(&[&[]]));
        assert_eq!(answer_sets(&prog("a. -a.")), AnswerSets::Inconsistent);
        assert_eq!(answer_sets(&prog("a :- not a.")), AnswerSets::NoAnswerSets);
        assert_eq!(
            answer_sets(&prog("a. b. :- a, b.")),
            AnswerSets::NoAnswerSets
        );
        assert_eq!(
            answer_sets(&prog("a :- not -a. -a :- not a.")),
            sets(&[&["a"], &["-a"]])
        );
    }

    #[test]
    fn consistency() {
        assert!(is_consistent(&prog("a.")));
        assert!(!is_consistent(&prog("a. -a.")));
        assert!(!is_consistent(&prog("a :- not a.")));
        assert!(is_consistent(&Program::empty()));
    }

    #[test]
    fn weak_equivalence() {
        assert!(equivalent(&prog("a."), &prog("a. a :- a.")));
        assert!(equivalent(&prog("a :- not b."), &prog("a :- not c.")));
        assert!(!equivalent(&prog("a."), &prog("b.")));
    }

    #[test]
    fn se_model_examples() {
        let base = set(&["a"]);
        let all = se_models_over(&Program::empty(), &base);
        let expected: BTreeSet<_> = [(&[][..], &[][..]), (&[], &["a"]), (&["a"], &["a"])]
            .iter()
            .map(|(h, t)| SeModel {
                here: set(h),
                there: set(t),
            })
            .collect();
        assert_eq!(all, expected);
        assert_eq!(
            se_models_over(&prog("a."), &base),
            BTreeSet::from([SeModel {
                here: set(&["a"]),
                there: set(&["a"])
            }])
        );
        assert_eq!(
            se_models(&prog(":- a.")),
            BTreeSet::from([SeModel {
                here: set(&[]),
                there: set(&[])
            }])
        );
        for m in se_models(&prog("a :- not b. c :- a, not -a.")) {
            assert!(m.here.is_subset(&m.there));
            assert!(is_consistent_set(&m.there));
        }
    }

    #[test]
    fn strong_equivalence_examples() {
        let p = prog("a :- not b. -b :- a.");
        assert!(strongly_equivalent(&p, &p));
        assert!(strongly_equivalent(&prog("a :- a."), &Program::empty()));
        assert!(!strongly_equivalent(
            &prog("a :- not b."),
            &prog("a :- not c.")
        ));
    }

    #[test]
    fn explosion_models_separate_contradiction_from_violation() {
        // Same consistent SE-models (none), different answer-set behaviour.
        let p = prog("a. -a.");
        let q = prog("a. :- a.");
        let base = set(&["a", "-a"]);
        assert_eq!(se_models_over(&p, &base), se_models_over(&q, &base));
        assert!(!strongly_equivalent(&p, &q));
    }

    #[test]
    fn consistent_subsets_respect_complements() {
        let mut seen = Vec::new();
        for_each_consistent_subset(&set(&["a", "-a", "b"]), |s| {
            seen.push(s.clone());
            true
        });
        assert_eq!(seen.len(), 6);
        assert!(seen.iter().all(is_consistent_set));
    }
}
