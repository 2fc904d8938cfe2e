//! Remainders, revision of program sequences, and revision traces.
//!
//! In `P1 * ... * Pn` later programs take priority as a whole. The 3-valued
//! answer sets of `Pn` are pushed down the sequence: at each step the
//! encoding `Pgm(X)` of the current interpretation is joined with the
//! program built so far, and a ⊆-maximal consistent part of the next
//! lower-priority program is added to it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::{is_consistent, AnswerSets};
use crate::syntax::{render_program, LiteralSet, Program};
use crate::threeval::{
    canonical_program, three_valued_answer_sets, ThreeValued, ThreeValuedAnswerSets,
};

/// Largest lower-priority program whose subsets are enumerated.
pub const MAX_REMAINDER_RULES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RevisionError {
    #[error("a revision needs at least one program")]
    EmptySequence,
    #[error("program has {0} distinct rules; remainders are limited to {MAX_REMAINDER_RULES}")]
    TooManyRules(usize),
}

/// `Rem(P1, P2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Remainders {
    /// Each program is `P' ∪ P2` for a ⊆-maximal `P' ⊆ P1` keeping the union
    /// consistent.
    Programs(Vec<Program>),
    /// `P2` itself is inconsistent.
    Lattice,
}

/// Computes `Rem(p1, p2)`.
///
/// Subsets of `p1` are visited largest first; a consistent subset is kept
/// unless it lies inside one kept earlier.
pub fn remainders(p1: &Program, p2: &Program) -> Result<Remainders, RevisionError> {
    if !is_consistent(p2) {
        return Ok(Remainders::Lattice);
    }
    let p2_rules = p2.rule_set();
    // Rules already in p2 belong to every union; leave them out of the search.
    let candidates: Vec<_> = p1
        .deduplicated()
        .iter()
        .filter(|r| !p2_rules.contains(r))
        .cloned()
        .collect();
    let n = candidates.len();
    if n > MAX_REMAINDER_RULES {
        return Err(RevisionError::TooManyRules(n));
    }
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<u32> = Vec::new();
    for mask in masks {
        if kept.iter().any(|k| mask & k == mask) {
            continue;
        }
        let chosen = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, r)| r.clone());
        let union = Program::new(chosen).union(p2);
        if is_consistent(&union) {
            kept.push(mask);
        }
    }
    // Build in p1's rule order for readable output.
    let mut programs: Vec<Program> = kept
        .iter()
        .map(|mask| {
            let chosen = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, r)| r.clone());
            Program::new(chosen).union(p2)
        })
        .collect();
    programs.sort_by_key(sorted_rules);
    Ok(Remainders::Programs(programs))
}

fn sorted_rules(p: &Program) -> Vec<crate::syntax::Rule> {
    p.rule_set().into_iter().cloned().collect()
}

/// One step `(Pʳᵢ, Xᵢ)` of a revision trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based position of the step in the sequence.
    pub index: usize,
    pub program: Program,
    pub interpretation: ThreeValued,
}

/// The sequence `((Pʳ₁, X₁), …, (Pʳₙ, Xₙ))`, stored from step `n` down to
/// step 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionTrace {
    steps: Vec<TraceStep>,
}

impl RevisionTrace {
    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    /// The last step computed, i.e. step 1.
    pub fn final_step(&self) -> &TraceStep {
        self.steps.last().expect("traces are never empty")
    }

    pub fn answer_set(&self) -> &LiteralSet {
        self.final_step().interpretation.plus()
    }

    /// The minus parts of all steps from `n` down to `index`, accumulated.
    ///
    /// Each step's interpretation is minimal for its own program, where the
    /// assumptions made higher up are already present as constraints. The
    /// accumulated set lists every literal the revision has committed to
    /// being false.
    pub fn cumulative_minus(&self, index: usize) -> LiteralSet {
        self.steps
            .iter()
            .filter(|s| s.index >= index)
            .flat_map(|s| s.interpretation.minus().iter().cloned())
            .collect()
    }

    /// The 3-valued answer set of the whole sequence this trace yields:
    /// step 1's positive part with every assumption made along the way.
    pub fn revision_interpretation(&self) -> ThreeValued {
        let last = self.final_step();
        last.interpretation
            .with_minus(self.cumulative_minus(last.index))
    }
}

/// Answer sets of a revision together with every trace producing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionOutcome {
    pub answer_sets: AnswerSets,
    pub traces: Vec<RevisionTrace>,
}

impl RevisionOutcome {
    /// 3-valued answer sets of the revision, deduplicated.
    pub fn interpretations(&self) -> BTreeSet<ThreeValued> {
        self.traces
            .iter()
            .map(RevisionTrace::revision_interpretation)
            .collect()
    }
}

/// `P1 * P2`.
pub fn revise_pair(p1: &Program, p2: &Program) -> Result<RevisionOutcome, RevisionError> {
    revise_sequence(&[p1.clone(), p2.clone()])
}

/// `P1 * ... * Pn`, with `programs[0]` the lowest priority.
pub fn revise_sequence(programs: &[Program]) -> Result<RevisionOutcome, RevisionError> {
    let Some(top) = programs.last() else {
        return Err(RevisionError::EmptySequence);
    };
    let n = programs.len();
    let initial = match three_valued_answer_sets(top) {
        ThreeValuedAnswerSets::Sets(xs) => xs,
        ThreeValuedAnswerSets::Inconsistent => {
            return Ok(RevisionOutcome {
                answer_sets: AnswerSets::Inconsistent,
                traces: Vec::new(),
            })
        }
        ThreeValuedAnswerSets::NoAnswerSets => {
            return Ok(RevisionOutcome {
                answer_sets: AnswerSets::NoAnswerSets,
                traces: Vec::new(),
            })
        }
    };
    let mut traces = Vec::new();
    for x in initial {
        let mut steps = vec![TraceStep {
            index: n,
            program: top.clone(),
            interpretation: x,
        }];
        extend(programs, &mut steps, &mut traces)?;
    }
    let answer_sets = AnswerSets::from_sets(
        traces
            .iter()
            .map(|t: &RevisionTrace| t.answer_set().clone())
            .collect(),
    );
    Ok(RevisionOutcome {
        answer_sets,
        traces,
    })
}

fn extend(
    programs: &[Program],
    steps: &mut Vec<TraceStep>,
    traces: &mut Vec<RevisionTrace>,
) -> Result<(), RevisionError> {
    let current = steps.last().expect("at least the top step");
    if current.index == 1 {
        traces.push(RevisionTrace {
            steps: steps.clone(),
        });
        return Ok(());
    }
    let index = current.index - 1;
    let committed = current
        .program
        .union(&canonical_program(&current.interpretation));
    let candidates = match remainders(&programs[index - 1], &committed)? {
        Remainders::Programs(ps) => ps,
        // `committed` has the current plus part as an answer set, so it is
        // always consistent.
        Remainders::Lattice => unreachable!("committed program is consistent"),
    };
    for program in candidates {
        for x in three_valued_answer_sets(&program).interpretations() {
            steps.push(TraceStep {
                index,
                program: program.clone(),
                interpretation: x.clone(),
            });
            extend(programs, steps, traces)?;
            steps.pop();
        }
    }
    Ok(())
}

/// `Pʳ₁ ∪ … ∪ Pʳₙ` for a trace. Equal as a rule set to step 1's program.
pub fn merged_program(trace: &RevisionTrace) -> Program {
    trace
        .steps
        .iter()
        .rev()
        .fold(Program::empty(), |acc, step| acc.union(&step.program))
}

/// Serialized form of a trace step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    pub program: String,
    pub plus: Vec<String>,
    pub minus: Vec<String>,
    pub cumulative_minus: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub steps: Vec<StepRecord>,
}

impl From<&RevisionTrace> for TraceRecord {
    fn from(trace: &RevisionTrace) -> Self {
        let names = |s: &LiteralSet| s.iter().map(ToString::to_string).collect();
        TraceRecord {
            steps: trace
                .steps
                .iter()
                .map(|s| StepRecord {
                    index: s.index,
                    program: render_program(&s.program),
                    plus: names(s.interpretation.plus()),
                    minus: names(s.interpretation.minus()),
                    cumulative_minus: names(&trace.cumulative_minus(s.index)),
                })
                .collect(),
        }
    }
}

/// `answer_sets(p)` of a single program, shaped as a one-step revision.
pub fn solve_as_revision(p: &Program) -> RevisionOutcome {
    revise_sequence(std::slice::from_ref(p)).expect("single program with no remainders")
}
