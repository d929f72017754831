//! Grounding: replacing variables by all object constants.
//!
//! Programs are grounded rule by rule over the constant universe; theories
//! additionally expand quantifiers into finite conjunctions and disjunctions
//! over the same universe, after taking the universal closure of any free
//! variables.

use crate::ast::{Atom, BodyLit, Formula, ObjLit, Program, Rule, SubjLit, Term, Theory};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroundError {
    #[error("program has variables but no constants are declared or used")]
    NoConstants,
}

type Subst = BTreeMap<String, String>;

fn ground_term(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Const(_) => t.clone(),
        Term::Var(v) => Term::Const(s[v].clone()),
    }
}

fn ground_atom(a: &Atom, s: &Subst) -> Atom {
    Atom { pred: a.pred.clone(), args: a.args.iter().map(|t| ground_term(t, s)).collect() }
}

fn ground_obj(l: &ObjLit, s: &Subst) -> ObjLit {
    match l {
        ObjLit::Not { neg, lit } => ObjLit::Not {
            neg: *neg,
            lit: crate::ast::Lit { atom: ground_atom(&lit.atom, s), positive: lit.positive },
        },
        other => other.clone(),
    }
}

fn rule_vars(r: &Rule) -> BTreeSet<String> {
    let mut vars = BTreeSet::new();
    let mut visit_atom = |a: &Atom| {
        for t in &a.args {
            if let Term::Var(v) = t {
                vars.insert(v.clone());
            }
        }
    };
    for l in &r.head {
        if let Some(lit) = l.as_lit() {
            visit_atom(&lit.atom);
        }
    }
    for l in &r.body {
        match l {
            BodyLit::Obj(o) => {
                if let Some(lit) = o.as_lit() {
                    visit_atom(&lit.atom);
                }
            }
            BodyLit::Subj(su) => {
                if let Some(lit) = su.inner.as_lit() {
                    visit_atom(&lit.atom);
                }
            }
        }
    }
    vars
}

fn substitutions(vars: &[String], constants: &[String]) -> Vec<Subst> {
    let mut out = vec![Subst::new()];
    for v in vars {
        let mut next = Vec::with_capacity(out.len() * constants.len());
        for s in &out {
            for c in constants {
                let mut s2 = s.clone();
                s2.insert(v.clone(), c.clone());
                next.push(s2);
            }
        }
        out = next;
    }
    out
}

/// Grounds a program over a constant universe. Every instance of every rule
/// is produced; duplicates disappear through canonicalization. No safety
/// restriction is imposed: a variable occurring only under a modal operator
/// is instantiated like any other.
pub fn ground_program(program: &Program, constants: &BTreeSet<String>) -> Result<Program, GroundError> {
    let consts: Vec<String> = constants.iter().cloned().collect();
    let mut rules = Vec::new();
    for r in &program.rules {
        let vars: Vec<String> = rule_vars(r).into_iter().collect();
        if vars.is_empty() {
            rules.push(r.clone());
            continue;
        }
        if consts.is_empty() {
            return Err(GroundError::NoConstants);
        }
        for s in substitutions(&vars, &consts) {
            let head = r.head.iter().map(|l| ground_obj(l, &s)).collect();
            let body = r
                .body
                .iter()
                .map(|l| match l {
                    BodyLit::Obj(o) => BodyLit::Obj(ground_obj(o, &s)),
                    BodyLit::Subj(su) => BodyLit::Subj(SubjLit {
                        neg: su.neg,
                        modality: su.modality,
                        inner: ground_obj(&su.inner, &s),
                    }),
                })
                .collect();
            rules.push(Rule::new(head, body));
        }
    }
    // Declared constants are consumed by grounding.
    Ok(Program::new(rules))
}

/// Grounds the program over its own constants (occurring plus declared).
pub fn ground(program: &Program) -> Result<Program, GroundError> {
    ground_program(program, &program.constants())
}

fn subst_formula(f: &Formula, s: &Subst) -> Formula {
    match f {
        Formula::Bot | Formula::Top => f.clone(),
        Formula::Atom(a) => Formula::Atom(ground_atom(a, s)),
        Formula::SNeg(g) => Formula::SNeg(Box::new(subst_formula(g, s))),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| subst_formula(g, s)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| subst_formula(g, s)).collect()),
        Formula::Impl(h, b) => {
            Formula::Impl(Box::new(subst_formula(h, s)), Box::new(subst_formula(b, s)))
        }
        Formula::K(g) => Formula::K(Box::new(subst_formula(g, s))),
        Formula::M(g) => Formula::M(Box::new(subst_formula(g, s))),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let mut s2 = s.clone();
            s2.remove(v);
            let inner = subst_formula(g, &s2);
            match f {
                Formula::Exists(..) => Formula::Exists(v.clone(), Box::new(inner)),
                _ => Formula::Forall(v.clone(), Box::new(inner)),
            }
        }
    }
}

/// Expands quantifiers over the constant universe; the domain consists
/// exactly of the ground terms.
pub fn expand_quantifiers(f: &Formula, constants: &BTreeSet<String>) -> Result<Formula, GroundError> {
    Ok(match f {
        Formula::Bot | Formula::Top | Formula::Atom(_) => f.clone(),
        Formula::SNeg(g) => Formula::SNeg(Box::new(expand_quantifiers(g, constants)?)),
        Formula::And(gs) => Formula::And(
            gs.iter().map(|g| expand_quantifiers(g, constants)).collect::<Result<_, _>>()?,
        ),
        Formula::Or(gs) => Formula::Or(
            gs.iter().map(|g| expand_quantifiers(g, constants)).collect::<Result<_, _>>()?,
        ),
        Formula::Impl(h, b) => Formula::Impl(
            Box::new(expand_quantifiers(h, constants)?),
            Box::new(expand_quantifiers(b, constants)?),
        ),
        Formula::K(g) => Formula::K(Box::new(expand_quantifiers(g, constants)?)),
        Formula::M(g) => Formula::M(Box::new(expand_quantifiers(g, constants)?)),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            if constants.is_empty() {
                return Err(GroundError::NoConstants);
            }
            let mut parts = Vec::with_capacity(constants.len());
            for c in constants {
                let mut s = Subst::new();
                s.insert(v.clone(), c.clone());
                parts.push(expand_quantifiers(&subst_formula(g, &s), constants)?);
            }
            match f {
                Formula::Exists(..) => Formula::Or(parts),
                _ => Formula::And(parts),
            }
        }
    })
}

/// Grounds a theory: free variables are read as universally closed, then
/// quantifiers are expanded over the given constants.
pub fn ground_theory(theory: &Theory, constants: &BTreeSet<String>) -> Result<Theory, GroundError> {
    let mut out = Vec::new();
    for s in &theory.sentences {
        let mut f = s.clone();
        for v in s.free_vars() {
            f = Formula::Forall(v, Box::new(f));
        }
        out.push(expand_quantifiers(&f, constants)?);
    }
    Ok(Theory::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_program;

    #[test]
    fn cwa_rule_grounds_to_three_instances() {
        let p = parse_program("#const a. #const b. #const c. -p(X) :- not M p(X).").unwrap();
        let g = ground(&p).unwrap();
        assert_eq!(g.rules.len(), 3);
        assert!(g.is_ground());
    }

    #[test]
    fn ground_program_is_fixed_point() {
        let p = parse_program("p | q. s :- K p.").unwrap();
        let g = ground(&p).unwrap();
        assert_eq!(g, Program::new(p.rules.clone()));
    }

    #[test]
    fn grounding_is_idempotent() {
        let p = parse_program("#const a. #const b. r(Y) :- K r(X), edge(X,Y).").unwrap();
        let g1 = ground(&p).unwrap();
        let g2 = ground(&g1).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn two_variables_over_two_constants_give_four_instances() {
        let p = parse_program("#const a. #const b. r(Y) :- K r(X), edge(X,Y).").unwrap();
        let g = ground(&p).unwrap();
        // Substitutions enumerated by hand: (X,Y) in {a,b}^2.
        assert_eq!(g.rules.len(), 4);
    }

    #[test]
    fn variables_without_constants_are_an_error() {
        let p = parse_program("-p(X) :- not M p(X).").unwrap();
        assert_eq!(ground(&p).unwrap_err(), GroundError::NoConstants);
    }

    #[test]
    fn quantifier_expansion_builds_finite_connectives() {
        use crate::ast::{Formula, Term};
        let consts: BTreeSet<String> = ["a".to_string(), "b".to_string()].into();
        let f = Formula::Exists(
            "X".into(),
            Box::new(Formula::K(Box::new(Formula::Atom(Atom::new(
                "p",
                vec![Term::Var("X".into())],
            ))))),
        );
        let g = expand_quantifiers(&f, &consts).unwrap();
        match g {
            Formula::Or(parts) => assert_eq!(parts.len(), 2),
            _ => panic!("expected disjunction"),
        }
    }
}
