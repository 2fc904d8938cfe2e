//! Answer sets of extended logic programs and program-level revision of
//! program sequences `P1 * ... * Pn`.
//!
//! Sequences are always given lowest priority first: in `[p1, p2]` the
//! program `p2` revises `p1`.

pub mod cli;
pub mod postulates;
pub mod revision;
pub mod semantics;
pub mod syntax;
pub mod threeval;

pub use revision::{
    merged_program, remainders, revise_pair, revise_sequence, Remainders, RevisionError,
    RevisionOutcome, RevisionTrace, TraceStep,
};
pub use semantics::{
    answer_sets, consequences, equivalent, is_consistent, reduct, se_models, strongly_equivalent,
    AnswerSets, Belief, Closure, SeModel,
};
pub use syntax::{
    atoms_of, parse_program, render_program, Atom, Literal, LiteralSet, Program, Rule, SyntaxError,
};
pub use threeval::{
    canonical_program, is_three_valued_answer_set, min_reduct, three_valued_answer_sets,
    ThreeValued, ThreeValuedAnswerSets,
};
