//! Executable checks of the AGM-core and update postulates, plus a seeded
//! random-program generator used to fuzz them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::revision::{
    merged_program, revise_pair, revise_sequence, RevisionError, RevisionOutcome,
};
use crate::semantics::{answer_sets, is_consistent, strongly_equivalent, AnswerSets, Belief};
use crate::syntax::{atoms_of, format_literal_set, render_program, Atom, Literal, Program, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PostulateError {
    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),
    #[error("{postulate} takes {expected} programs, got {actual}")]
    Arity {
        postulate: Postulate,
        expected: usize,
        actual: usize,
    },
    #[error(transparent)]
    Revision(#[from] RevisionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Postulate {
    A1,
    A2,
    A5a,
    A5b,
    A6,
    Initialisation,
    Idempotency,
    Tautology,
    Associativity,
    Absorption,
    SAbsorption,
    Augmentation,
    Disjointness,
    Parallelism,
    NonInterference,
}

impl Postulate {
    pub const ALL: [Postulate; 15] = [
        Postulate::A1,
        Postulate::A2,
        Postulate::A5a,
        Postulate::A5b,
        Postulate::A6,
        Postulate::Initialisation,
        Postulate::Idempotency,
        Postulate::Tautology,
        Postulate::Associativity,
        Postulate::Absorption,
        Postulate::SAbsorption,
        Postulate::Augmentation,
        Postulate::Disjointness,
        Postulate::Parallelism,
        Postulate::NonInterference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::A1 => "A1",
            Postulate::A2 => "A2",
            Postulate::A5a => "A5a",
            Postulate::A5b => "A5b",
            Postulate::A6 => "A6",
            Postulate::Initialisation => "initialisation",
            Postulate::Idempotency => "idempotency",
            Postulate::Tautology => "tautology",
            Postulate::Associativity => "associativity",
            Postulate::Absorption => "absorption",
            Postulate::SAbsorption => "sabsorption",
            Postulate::Augmentation => "augmentation",
            Postulate::Disjointness => "disjointness",
            Postulate::Parallelism => "parallelism",
            Postulate::NonInterference => "non-interference",
        }
    }

    /// Number of programs the postulate is stated over.
    pub fn arity(self) -> usize {
        match self {
            Postulate::Initialisation | Postulate::Idempotency => 1,
            Postulate::A1
            | Postulate::A2
            | Postulate::A5a
            | Postulate::A5b
            | Postulate::Tautology => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Postulate {
    type Err = PostulateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '*' | '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        let found = Postulate::ALL.into_iter().find(|p| {
            p.name()
                .chars()
                .filter(|c| *c != '-')
                .collect::<String>()
                .to_ascii_lowercase()
                == key
        });
        found.ok_or_else(|| PostulateError::UnknownPostulate(s.to_owned()))
    }
}

impl Serialize for Postulate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Postulate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

/// The two sides that were compared when a postulate failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateReport {
    pub postulate: Postulate,
    pub inputs: Vec<Program>,
    /// Vacuously true when the precondition is unmet.
    pub holds: bool,
    pub precondition_met: bool,
    pub witness: Option<Witness>,
}

/// Renders an answer-set family; `Lit` stands for the set of all literals.
pub fn format_family(family: &BTreeSet<Belief>) -> String {
    let items: Vec<String> = family
        .iter()
        .map(|b| match b {
            Belief::Literals(s) => format_literal_set(s),
            Belief::Everything => "Lit".to_owned(),
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

type Family = BTreeSet<Belief>;

fn family(outcome: &RevisionOutcome) -> Family {
    outcome.answer_sets.family()
}

enum Verdict {
    Unmet,
    Compare(Family, Family),
    Custom { ok: bool, lhs: String, rhs: String },
}

/// Evaluates `postulate` on `programs` and compares both sides.
pub fn check_postulate(
    postulate: Postulate,
    programs: &[Program],
) -> Result<PostulateReport, PostulateError> {
    if programs.len() != postulate.arity() {
        return Err(PostulateError::Arity {
            postulate,
            expected: postulate.arity(),
            actual: programs.len(),
        });
    }
    let verdict = evaluate(postulate, programs)?;
    let (precondition_met, holds, witness) = match verdict {
        Verdict::Unmet => (false, true, None),
        Verdict::Compare(lhs, rhs) => {
            let ok = lhs == rhs;
            let witness = (!ok).then(|| Witness {
                lhs: format_family(&lhs),
                rhs: format_family(&rhs),
            });
            (true, ok, witness)
        }
        Verdict::Custom { ok, lhs, rhs } => (true, ok, (!ok).then_some(Witness { lhs, rhs })),
    };
    Ok(PostulateReport {
        postulate,
        inputs: programs.to_vec(),
        holds,
        precondition_met,
        witness,
    })
}

/// [`check_postulate`] with the postulate given by name.
pub fn check_postulate_named(
    name: &str,
    programs: &[Program],
) -> Result<PostulateReport, PostulateError> {
    check_postulate(name.parse()?, programs)
}

fn disjoint_atoms(p: &Program, q: &Program) -> bool {
    atoms_of(p).is_disjoint(&atoms_of(q))
}

fn evaluate(postulate: Postulate, ps: &[Program]) -> Result<Verdict, PostulateError> {
    use Postulate::*;
    let verdict = match postulate {
        A1 => {
            let out = revise_pair(&ps[0], &ps[1])?;
            let ok = match &out.answer_sets {
                AnswerSets::Sets(sets) => sets.iter().all(crate::syntax::is_consistent_set),
                _ => out.traces.is_empty(),
            };
            Verdict::Custom {
                ok,
                lhs: format_family(&family(&out)),
                rhs: "a well-formed family of literal sets".into(),
            }
        }
        A2 => {
            let revising = answer_sets(&ps[1]);
            let out = revise_pair(&ps[0], &ps[1])?;
            match &revising {
                AnswerSets::Sets(sets) => {
                    let missing = sets
                        .iter()
                        .find(|x| !out.answer_sets.sets().any(|y| x.is_subset(y)));
                    Verdict::Custom {
                        ok: missing.is_none(),
                        lhs: format_family(&family(&out)),
                        rhs: match missing {
                            Some(x) => format!("a superset of {}", format_literal_set(x)),
                            None => String::new(),
                        },
                    }
                }
                // The inconsistent cases are A5a/A5b.
                _ => Verdict::Compare(family(&out), revising.family()),
            }
        }
        A5a | A5b => {
            let target = if postulate == A5a {
                AnswerSets::Inconsistent
            } else {
                AnswerSets::NoAnswerSets
            };
            let revising = answer_sets(&ps[1]);
            let out = revise_pair(&ps[0], &ps[1])?;
            Verdict::Custom {
                ok: (out.answer_sets == target) == (revising == target),
                lhs: format_family(&family(&out)),
                rhs: format_family(&revising.family()),
            }
        }
        A6 => {
            if !strongly_equivalent(&ps[1], &ps[2]) {
                Verdict::Unmet
            } else {
                Verdict::Compare(
                    family(&revise_pair(&ps[0], &ps[1])?),
                    family(&revise_pair(&ps[0], &ps[2])?),
                )
            }
        }
        Initialisation => Verdict::Compare(
            family(&revise_pair(&Program::empty(), &ps[0])?),
            answer_sets(&ps[0]).family(),
        ),
        Idempotency => Verdict::Compare(
            family(&revise_pair(&ps[0], &ps[0])?),
            answer_sets(&ps[0]).family(),
        ),
        Tautology => {
            if !ps[1].iter().all(Rule::is_tautology) {
                Verdict::Unmet
            } else {
                Verdict::Compare(
                    family(&revise_pair(&ps[0], &ps[1])?),
                    answer_sets(&ps[0]).family(),
                )
            }
        }
        Associativity => {
            let inner = revise_pair(&ps[1], &ps[2])?;
            let mut right = Family::new();
            if inner.traces.is_empty() {
                right = family(&inner);
            }
            for trace in &inner.traces {
                right.extend(family(&revise_pair(&ps[0], &merged_program(trace))?));
            }
            let outer = revise_pair(&ps[0], &ps[1])?;
            let mut left = Family::new();
            let left_programs: Vec<Program> = if outer.traces.is_empty() {
                vec![ps[0].union(&ps[1])]
            } else {
                outer.traces.iter().map(merged_program).collect()
            };
            for program in left_programs {
                left.extend(family(&revise_pair(&program, &ps[2])?));
            }
            Verdict::Compare(right, left)
        }
        Absorption | SAbsorption => {
            let precondition = if postulate == Absorption {
                answer_sets(&ps[1]) == answer_sets(&ps[2])
            } else {
                strongly_equivalent(&ps[1], &ps[2])
            };
            if !precondition {
                Verdict::Unmet
            } else {
                Verdict::Compare(
                    family(&revise_sequence(ps)?),
                    family(&revise_pair(&ps[0], &ps[1])?),
                )
            }
        }
        Augmentation => {
            if !answer_sets(&ps[1])
                .family()
                .is_subset(&answer_sets(&ps[2]).family())
            {
                Verdict::Unmet
            } else {
                Verdict::Compare(
                    family(&revise_sequence(ps)?),
                    family(&revise_pair(&ps[0], &ps[2])?),
                )
            }
        }
        Disjointness => {
            if !disjoint_atoms(&ps[0], &ps[1]) {
                Verdict::Unmet
            } else {
                let mut rhs = family(&revise_pair(&ps[0], &ps[2])?);
                rhs.extend(family(&revise_pair(&ps[1], &ps[2])?));
                Verdict::Compare(family(&revise_pair(&ps[0].union(&ps[1]), &ps[2])?), rhs)
            }
        }
        Parallelism => {
            if !disjoint_atoms(&ps[1], &ps[2]) {
                Verdict::Unmet
            } else {
                let mut rhs = family(&revise_pair(&ps[0], &ps[1])?);
                rhs.extend(family(&revise_pair(&ps[0], &ps[2])?));
                Verdict::Compare(family(&revise_pair(&ps[0], &ps[1].union(&ps[2]))?), rhs)
            }
        }
        NonInterference => {
            if !disjoint_atoms(&ps[1], &ps[2]) {
                Verdict::Unmet
            } else {
                let swapped = [ps[0].clone(), ps[2].clone(), ps[1].clone()];
                Verdict::Compare(
                    family(&revise_sequence(ps)?),
                    family(&revise_sequence(&swapped)?),
                )
            }
        }
    };
    Ok(verdict)
}

/// Parameters of the random program generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub max_atoms: usize,
    pub max_rules: usize,
    pub max_body: usize,
    pub prob_classical_negation: f64,
    pub prob_naf: f64,
    pub prob_constraint: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            max_atoms: 5,
            max_rules: 6,
            max_body: 3,
            prob_classical_negation: 0.2,
            prob_naf: 0.35,
            prob_constraint: 0.15,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorConfig { seed, ..self }
    }
}

/// A program over atoms `a1 … a<max_atoms>`, fully determined by `cfg`.
///
/// # Panics
///
/// If `cfg.max_atoms` is zero.
pub fn random_program(cfg: &GeneratorConfig) -> Program {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    ProgramGen::new(cfg, &mut rng).program(&alphabet("a", cfg.max_atoms))
}

fn alphabet(prefix: &str, n: usize) -> Vec<Atom> {
    assert!(n >= 1, "the generator needs at least one atom");
    (1..=n)
        .map(|i| Atom::new(&format!("{prefix}{i}")).expect("generated atom names are valid"))
        .collect()
}

struct ProgramGen<'a, R> {
    cfg: &'a GeneratorConfig,
    rng: &'a mut R,
}

impl<'a, R: Rng> ProgramGen<'a, R> {
    fn new(cfg: &'a GeneratorConfig, rng: &'a mut R) -> Self {
        ProgramGen { cfg, rng }
    }

    fn literal(&mut self, atoms: &[Atom]) -> Literal {
        let atom = atoms.choose(self.rng).expect("nonempty alphabet").clone();
        if self.rng.gen_bool(self.cfg.prob_classical_negation) {
            Literal::negative(atom)
        } else {
            Literal::positive(atom)
        }
    }

    fn rule(&mut self, atoms: &[Atom]) -> Rule {
        let body_len = self.rng.gen_range(0..=self.cfg.max_body);
        let mut pbody = Vec::new();
        let mut nbody = Vec::new();
        for _ in 0..body_len {
            let lit = self.literal(atoms);
            if self.rng.gen_bool(self.cfg.prob_naf) {
                nbody.push(lit);
            } else {
                pbody.push(lit);
            }
        }
        let constraint = body_len > 0 && self.rng.gen_bool(self.cfg.prob_constraint);
        let head = (!constraint).then(|| self.literal(atoms));
        Rule::new(head, pbody, nbody)
    }

    fn program(&mut self, atoms: &[Atom]) -> Program {
        let n = self.rng.gen_range(0..=self.cfg.max_rules);
        (0..n).map(|_| self.rule(atoms)).collect()
    }

    /// Rules with `head ∈ body⁺`, at least one.
    fn tautologies(&mut self, atoms: &[Atom]) -> Program {
        let n = self.rng.gen_range(1..=self.cfg.max_rules.max(1));
        (0..n)
            .map(|_| {
                let mut rule = self.rule(atoms);
                let head = match rule.head.take() {
                    Some(h) => h,
                    None => self.literal(atoms),
                };
                rule.pbody.insert(head.clone());
                rule.head = Some(head);
                rule
            })
            .collect()
    }

    /// A program strongly equivalent to `p` by construction: its rules
    /// shuffled, some duplicated, plus tautological rules.
    fn strongly_equivalent_variant(&mut self, p: &Program, atoms: &[Atom]) -> Program {
        let mut rules: Vec<Rule> = p.rules().to_vec();
        for rule in p.iter() {
            if self.rng.gen_bool(0.3) {
                rules.push(rule.clone());
            }
        }
        rules.extend(self.tautologies(atoms).rules().iter().cloned());
        rules.shuffle(self.rng);
        Program::new(rules)
    }
}

/// One counterexample in a fuzzing summary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub programs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Aggregated results for one postulate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulateSummary {
    pub postulate: Postulate,
    pub passes: usize,
    pub failures: usize,
    /// Instances whose precondition did not hold.
    pub skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Builds the input tuple for one fuzzing iteration.
///
/// Preconditions that random programs rarely meet are established by
/// construction: disjoint alphabets for the atom-disjointness postulates,
/// strongly equivalent variants for A6 and SAbsorption, tautological
/// revising programs for tautology.
pub fn fuzz_instance(cfg: &GeneratorConfig, postulate: Postulate, iteration: u64) -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(
        cfg.seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(iteration),
    );
    rng.set_stream(postulate as u64);
    let mut gen = ProgramGen::new(cfg, &mut rng);
    let a = alphabet("a", cfg.max_atoms);
    let b = alphabet("b", cfg.max_atoms);
    let both: Vec<Atom> = a.iter().chain(b.iter()).cloned().collect();
    use Postulate::*;
    match postulate {
        Initialisation | Idempotency => vec![gen.program(&a)],
        A1 | A2 | A5a | A5b => vec![gen.program(&a), gen.program(&a)],
        Tautology => vec![gen.program(&a), gen.tautologies(&a)],
        A6 | SAbsorption => {
            let p1 = gen.program(&a);
            let p2 = gen.program(&a);
            let p3 = gen.strongly_equivalent_variant(&p2, &a);
            vec![p1, p2, p3]
        }
        Absorption => {
            let p1 = gen.program(&a);
            let p2 = gen.program(&a);
            let p3 = match answer_sets(&p2) {
                AnswerSets::Sets(sets) if sets.len() == 1 && gen.rng.gen_bool(0.5) => {
                    let only = sets.into_iter().next().expect("one answer set");
                    only.into_iter().map(Rule::fact).collect()
                }
                _ => gen.strongly_equivalent_variant(&p2, &a),
            };
            vec![p1, p2, p3]
        }
        Disjointness => vec![gen.program(&a), gen.program(&b), gen.program(&both)],
        Parallelism | NonInterference => {
            vec![gen.program(&both), gen.program(&a), gen.program(&b)]
        }
        Augmentation | Associativity => vec![gen.program(&a), gen.program(&a), gen.program(&a)],
    }
}

/// Runs every postulate in `postulates` on `iterations` generated
/// instances. Failures are collected, never fatal.
pub fn fuzz_postulates(
    cfg: &GeneratorConfig,
    iterations: u64,
    postulates: &[Postulate],
) -> Result<Vec<PostulateSummary>, PostulateError> {
    postulates
        .iter()
        .map(|&postulate| {
            let mut summary = PostulateSummary {
                postulate,
                passes: 0,
                failures: 0,
                skipped: 0,
                counterexamples: Vec::new(),
            };
            for i in 0..iterations {
                let programs = fuzz_instance(cfg, postulate, i);
                let report = check_postulate(postulate, &programs)?;
                record(&mut summary, report);
            }
            summary.counterexamples.sort();
            Ok(summary)
        })
        .collect()
}

fn record(summary: &mut PostulateSummary, report: PostulateReport) {
    if !report.precondition_met {
        summary.skipped += 1;
    } else if report.holds {
        summary.passes += 1;
    } else {
        summary.failures += 1;
        let witness = report.witness.expect("failed reports carry a witness");
        summary.counterexamples.push(Counterexample {
            programs: report.inputs.iter().map(render_program).collect(),
            lhs: witness.lhs,
            rhs: witness.rhs,
        });
    }
}

/// True iff `P1` of a tautology instance is consistent.
pub fn tautology_expected_to_hold(programs: &[Program]) -> bool {
    programs.first().is_some_and(is_consistent)
}
