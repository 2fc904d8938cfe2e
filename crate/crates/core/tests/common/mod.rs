#![allow(dead_code)]

use std::collections::BTreeSet;

use lprev::{parse_program, AnswerSets, Atom, Literal, LiteralSet, Program, Rule};
use proptest::prelude::*;

pub fn prog(text: &str) -> Program {
    parse_program(text).unwrap_or_else(|e| panic!("bad test program {text:?}: {e}"))
}

pub fn set(items: &[&str]) -> LiteralSet {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

pub fn sets(items: &[&[&str]]) -> AnswerSets {
    AnswerSets::Sets(items.iter().map(|s| set(s)).collect())
}

/// Literal as a plain `(atom, negated)` pair, so the oracle shares no code
/// with the library's closure machinery.
type Lit = (String, bool);

struct PlainRule {
    head: Option<Lit>,
    pos: Vec<Lit>,
    neg: Vec<Lit>,
}

fn plain(l: &Literal) -> Lit {
    (l.atom().name().to_owned(), l.is_negative())
}

fn plain_rules(p: &Program) -> Vec<PlainRule> {
    p.iter()
        .map(|r| PlainRule {
            head: r.head.as_ref().map(plain),
            pos: r.pbody.iter().map(plain).collect(),
            neg: r.nbody.iter().map(plain).collect(),
        })
        .collect()
}

/// Least model of the naf-free rules; `None` if it holds a complementary
/// pair, `Some((model, violated))` otherwise.
fn least_model(rules: &[&PlainRule]) -> Option<(BTreeSet<Lit>, bool)> {
    let mut model: BTreeSet<Lit> = BTreeSet::new();
    loop {
        let before = model.len();
        for r in rules {
            if let Some(h) = &r.head {
                if r.pos.iter().all(|l| model.contains(l)) {
                    model.insert(h.clone());
                }
            }
        }
        if model.len() == before {
            break;
        }
    }
    if model
        .iter()
        .any(|(a, neg)| model.contains(&(a.clone(), !neg)))
    {
        return None;
    }
    let violated = rules
        .iter()
        .any(|r| r.head.is_none() && r.pos.iter().all(|l| model.contains(l)));
    Some((model, violated))
}

/// Brute-force answer sets: every atom of `p` absent, positive or negative
/// (3^n candidates), plus the inconsistent set.
pub fn oracle_answer_sets(p: &Program) -> AnswerSets {
    let rules = plain_rules(p);
    let atoms: Vec<String> = lprev::atoms_of(p)
        .iter()
        .map(|a| a.name().to_owned())
        .collect();
    let lattice: Vec<&PlainRule> = rules.iter().filter(|r| r.neg.is_empty()).collect();
    if least_model(&lattice).is_none() {
        return AnswerSets::Inconsistent;
    }
    let mut found = BTreeSet::new();
    let total = 3usize.pow(atoms.len() as u32);
    for code in 0..total {
        let mut candidate: BTreeSet<Lit> = BTreeSet::new();
        let mut c = code;
        for atom in &atoms {
            match c % 3 {
                1 => {
                    candidate.insert((atom.clone(), false));
                }
                2 => {
                    candidate.insert((atom.clone(), true));
                }
                _ => {}
            }
            c /= 3;
        }
        let reduct: Vec<&PlainRule> = rules
            .iter()
            .filter(|r| r.neg.iter().all(|l| !candidate.contains(l)))
            .collect();
        if let Some((model, violated)) = least_model(&reduct) {
            if !violated && model == candidate {
                let as_set: LiteralSet = model
                    .into_iter()
                    .map(|(a, neg)| {
                        let atom = Atom::new(&a).unwrap();
                        if neg {
                            Literal::negative(atom)
                        } else {
                            Literal::positive(atom)
                        }
                    })
                    .collect();
                found.insert(as_set);
            }
        }
    }
    if found.is_empty() {
        AnswerSets::NoAnswerSets
    } else {
        AnswerSets::Sets(found)
    }
}

pub fn literal_strategy(atoms: &'static [&'static str]) -> impl Strategy<Value = Literal> {
    (prop::sample::select(atoms), prop::bool::weighted(0.25)).prop_map(|(a, neg)| {
        let atom = Atom::new(a).unwrap();
        if neg {
            Literal::negative(atom)
        } else {
            Literal::positive(atom)
        }
    })
}

pub fn rule_strategy(atoms: &'static [&'static str]) -> impl Strategy<Value = Rule> {
    (
        prop::option::weighted(0.85, literal_strategy(atoms)),
        prop::collection::vec(literal_strategy(atoms), 0..3),
        prop::collection::vec(literal_strategy(atoms), 0..3),
    )
        .prop_filter("constraints need a body", |(h, pos, neg)| {
            h.is_some() || !pos.is_empty() || !neg.is_empty()
        })
        .prop_map(|(h, pos, neg)| Rule::new(h, pos, neg))
}

pub fn program_strategy(
    atoms: &'static [&'static str],
    max_rules: usize,
) -> impl Strategy<Value = Program> {
    prop::collection::vec(rule_strategy(atoms), 0..=max_rules).prop_map(Program::new)
}

pub const ATOMS4: &[&str] = &["a", "b", "c", "d"];
pub const ATOMS3: &[&str] = &["a", "b", "c"];

fn to_literal((a, neg): &Lit) -> Literal {
    let atom = Atom::new(a).unwrap();
    if *neg {
        Literal::negative(atom)
    } else {
        Literal::positive(atom)
    }
}

fn to_set(s: &BTreeSet<Lit>) -> LiteralSet {
    s.iter().map(to_literal).collect()
}

/// Every literal over the atoms of `p`, both polarities.
pub fn literal_base(p: &Program) -> Vec<Literal> {
    lprev::atoms_of(p)
        .into_iter()
        .flat_map(|a| [Literal::positive(a.clone()), Literal::negative(a)])
        .collect()
}

/// Brute-force 3-valued answer sets for a consistent program: every answer
/// set from [`oracle_answer_sets`] paired with every subset of the full
/// literal base outside it, filtered by the definition, then by minimality
/// against all strict subsets.
pub fn oracle_three_valued(p: &Program) -> Option<BTreeSet<(LiteralSet, LiteralSet)>> {
    let AnswerSets::Sets(answer_sets) = oracle_answer_sets(p) else {
        return None;
    };
    let rules = plain_rules(p);
    let base: Vec<Lit> = literal_base(p).iter().map(plain).collect();
    let mut out = BTreeSet::new();
    for plus in answer_sets {
        let plus_plain: BTreeSet<Lit> = plus.iter().map(plain).collect();
        let kept: Vec<&PlainRule> = rules
            .iter()
            .filter(|r| r.neg.iter().all(|l| !plus_plain.contains(l)))
            .collect();
        // Residual naf literals read as fresh atoms never fire; erasing them
        // entirely must give back plus as well.
        let erased_ok = matches!(
            least_model(&kept),
            Some((m, false)) if m == plus_plain
        );
        if !erased_ok {
            continue;
        }
        let outside: Vec<&Lit> = base.iter().filter(|l| !plus_plain.contains(*l)).collect();
        let derives = |minus: &BTreeSet<Lit>| {
            let fire: Vec<&PlainRule> = kept
                .iter()
                .copied()
                .filter(|r| r.neg.iter().all(|l| minus.contains(l)))
                .collect();
            matches!(least_model(&fire), Some((m, false)) if m == plus_plain)
        };
        let mut good: Vec<BTreeSet<Lit>> = Vec::new();
        for mask in 0u32..(1 << outside.len()) {
            let minus: BTreeSet<Lit> = outside
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, l)| (*l).clone())
                .collect();
            if derives(&minus) {
                good.push(minus);
            }
        }
        for m in &good {
            if !good.iter().any(|o| o != m && o.is_subset(m)) {
                out.insert((plus.clone(), to_set(m)));
            }
        }
    }
    Some(out)
}
