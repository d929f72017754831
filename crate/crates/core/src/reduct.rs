//! World-view reducts: the transformations that eliminate subjective
//! literals relative to a candidate world view.
//!
//! All three reduct families share one convention: the modal core of a
//! subjective literal is replaced in place, so outer default negations
//! survive (`not K p` against a view knowing `p` becomes `not #true`).

use crate::ast::{BodyLit, Formula, Modality, ObjLit, Program, Rule, SubjLit, Theory};
use crate::belief::{core_value, subjective_value};
use crate::ht::EvalError;
use crate::model::{Universe, World};
use std::collections::BTreeMap;

/// A truth assignment to the modal cores of a program, the object of the
/// guess-and-check world-view search.
pub type CoreValues = BTreeMap<(Modality, ObjLit), bool>;

/// Evaluates every modal core of a program against a world view.
pub fn actual_core_values(
    u: &Universe,
    cores: &[(Modality, ObjLit)],
    world_view: &[World],
) -> CoreValues {
    cores
        .iter()
        .map(|(m, l)| ((*m, l.clone()), core_value(u, world_view, *m, l)))
        .collect()
}

fn constant(neg: u8, value: bool) -> ObjLit {
    let base = if value { ObjLit::True } else { ObjLit::False };
    base.negate(neg)
}

/// The subjective reduct with respect to a signature: subjective literals
/// whose atoms lie inside `in_signature` have their modal core replaced by
/// `#true` or `#false` according to the assignment; others stay. With the
/// full signature this is the reduct used by the G94-style fixpoint.
pub fn subjective_reduct(
    p: &Program,
    values: &CoreValues,
    in_signature: &impl Fn(&SubjLit) -> bool,
) -> Program {
    let rules = p
        .rules
        .iter()
        .map(|r| {
            let body = r
                .body
                .iter()
                .map(|l| match l {
                    BodyLit::Subj(s) if in_signature(s) => {
                        BodyLit::Obj(constant(s.neg, values[&s.core()]))
                    }
                    other => other.clone(),
                })
                .collect();
            Rule::new(r.head.clone(), body)
        })
        .collect();
    Program::new(rules)
}

/// G94-style program reduct: every modal core becomes a truth constant.
pub fn g94_program_reduct(p: &Program, values: &CoreValues) -> Program {
    subjective_reduct(p, values, &|_| true)
}

/// G94 reduct of a program against a concrete world view.
pub fn g94_reduct_wrt(u: &Universe, p: &Program, world_view: &[World]) -> Program {
    let cores = p.modal_cores();
    let values = actual_core_values(u, &cores, world_view);
    g94_program_reduct(p, &values)
}

/// Signature-restricted subjective reduct against a concrete world view:
/// only subjective literals whose atoms are all inside `atoms` are replaced.
pub fn subjective_reduct_sig(
    u: &Universe,
    p: &Program,
    world_view: &[World],
    atoms: &std::collections::BTreeSet<crate::ast::Atom>,
) -> Program {
    let cores = p.modal_cores();
    let values = actual_core_values(u, &cores, world_view);
    subjective_reduct(p, &values, &|s: &SubjLit| {
        s.inner.as_lit().map_or(true, |l| atoms.contains(&l.atom))
    })
}

/// K15-style reduct: a satisfied core `K l` is replaced by `l` itself rather
/// than by a truth constant, stacking the default negations and collapsing
/// triples; an unsatisfied core still becomes `#false`.
pub fn k15_program_reduct(p: &Program, values: &CoreValues) -> Program {
    let rules = p
        .rules
        .iter()
        .map(|r| {
            let body = r
                .body
                .iter()
                .map(|l| match l {
                    BodyLit::Subj(s) => {
                        debug_assert_eq!(s.modality, Modality::K, "K15 expects an expanded program");
                        if values[&s.core()] {
                            BodyLit::Obj(s.inner.clone().negate(s.neg))
                        } else {
                            BodyLit::Obj(constant(s.neg, false))
                        }
                    }
                    other => other.clone(),
                })
                .collect();
            Rule::new(r.head.clone(), body)
        })
        .collect();
    Program::new(rules)
}

/// K15 reduct against a concrete world view.
pub fn k15_reduct_wrt(u: &Universe, p: &Program, world_view: &[World]) -> Program {
    let cores = p.modal_cores();
    let values = actual_core_values(u, &cores, world_view);
    k15_program_reduct(p, &values)
}

/// G11-style reduct, in three steps: unsatisfied subjective literals become
/// `#false` as a whole; satisfied ones under default negation are removed
/// (replaced by `#true`); remaining satisfied `K l` become `l`.
pub fn g11_program_reduct(p: &Program, values: &CoreValues) -> Program {
    let rules = p
        .rules
        .iter()
        .map(|r| {
            let body = r
                .body
                .iter()
                .map(|l| match l {
                    BodyLit::Subj(s) => {
                        debug_assert_eq!(s.modality, Modality::K, "G11 expects an expanded program");
                        let core = values[&s.core()];
                        let lit_value = if s.neg % 2 == 1 { !core } else { core };
                        if !lit_value {
                            BodyLit::Obj(ObjLit::False)
                        } else if s.neg > 0 {
                            BodyLit::Obj(ObjLit::True)
                        } else {
                            BodyLit::Obj(s.inner.clone())
                        }
                    }
                    other => other.clone(),
                })
                .collect();
            Rule::new(r.head.clone(), body)
        })
        .collect();
    Program::new(rules)
}

/// G11 reduct against a concrete world view.
pub fn g11_reduct_wrt(u: &Universe, p: &Program, world_view: &[World]) -> Program {
    let cores = p.modal_cores();
    let values = actual_core_values(u, &cores, world_view);
    g11_program_reduct(p, &values)
}

/// Theory-level reduct: every maximal modal subformula is replaced by
/// `#true` or `#false` according to its truth in the world view. The result
/// is objective.
pub fn theory_reduct(
    u: &Universe,
    theory: &Theory,
    world_view: &[World],
) -> Result<Theory, EvalError> {
    let subs = theory.maximal_modal_subformulas();
    let mut values = BTreeMap::new();
    for s in subs {
        let v = subjective_value(u, world_view, &s)?;
        values.insert(s, v);
    }
    Ok(theory_reduct_with(theory, &values))
}

/// Theory-level reduct for a fixed assignment to the maximal modal nodes.
pub fn theory_reduct_with(theory: &Theory, values: &BTreeMap<Formula, bool>) -> Theory {
    fn go(f: &Formula, values: &BTreeMap<Formula, bool>) -> Formula {
        if let Formula::K(_) | Formula::M(_) = f {
            return if values[f] { Formula::Top } else { Formula::Bot };
        }
        match f {
            Formula::Bot | Formula::Top | Formula::Atom(_) => f.clone(),
            Formula::SNeg(g) => Formula::SNeg(Box::new(go(g, values))),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| go(g, values)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| go(g, values)).collect()),
            Formula::Impl(h, b) => {
                Formula::Impl(Box::new(go(h, values)), Box::new(go(b, values)))
            }
            Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(go(g, values))),
            Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(go(g, values))),
            Formula::K(_) | Formula::M(_) => unreachable!(),
        }
    }
    Theory::new(theory.sentences.iter().map(|s| go(s, values)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Atom;
    use crate::model::Universe;
    use crate::parser::parse_program;

    fn setup(src: &str) -> (Universe, Program) {
        let p = parse_program(src).unwrap();
        let u = Universe::new(p.atoms()).unwrap();
        (u, p)
    }

    fn world(u: &Universe, names: &[&str]) -> World {
        let lits: Vec<crate::ast::Lit> = names
            .iter()
            .map(|n| {
                if let Some(stripped) = n.strip_prefix('-') {
                    crate::ast::Lit::neg(Atom::prop(stripped))
                } else {
                    crate::ast::Lit::pos(Atom::prop(*n))
                }
            })
            .collect();
        u.world_from_lits(lits.iter()).unwrap()
    }

    #[test]
    fn g94_reduct_against_both_views() {
        let (u, p) = setup("p :- K p.");
        let w_empty = vec![0u64];
        let r0 = g94_reduct_wrt(&u, &p, &w_empty);
        assert_eq!(r0, parse_program("p :- #false.").unwrap());
        let wp = vec![world(&u, &["p"])];
        let r1 = g94_reduct_wrt(&u, &p, &wp);
        assert_eq!(r1, parse_program("p :- #true.").unwrap());
    }

    #[test]
    fn g94_reduct_keeps_outer_negation() {
        let (u, p) = setup("p :- not K not p.");
        let r = g94_reduct_wrt(&u, &p, &[0]);
        // K not p holds in the empty view, so the core becomes #true and the
        // outer negation turns the body into not #true (#false).
        assert_eq!(r, parse_program("p :- #false.").unwrap());
    }

    #[test]
    fn k15_reduct_substitutes_the_literal() {
        let (u, p) = setup("p :- not K not p.");
        let r0 = k15_reduct_wrt(&u, &p, &[0]);
        assert_eq!(r0, parse_program("p :- not not p.").unwrap());
        let r1 = k15_reduct_wrt(&u, &p, &[world(&u, &["p"])]);
        assert_eq!(r1, parse_program("p :- not #false.").unwrap());
    }

    #[test]
    fn g11_reduct_three_steps() {
        let (u, p) = setup("p :- K p.");
        let r = g11_reduct_wrt(&u, &p, &[world(&u, &["p"])]);
        assert_eq!(r, parse_program("p :- p.").unwrap());
        let r0 = g11_reduct_wrt(&u, &p, &[0]);
        assert_eq!(r0, parse_program("p :- #false.").unwrap());

        // Objective rules pass through untouched.
        let (u2, q) = setup("a :- b, not c.");
        let r2 = g11_reduct_wrt(&u2, &q, &[0]);
        assert_eq!(r2, q);
    }

    #[test]
    fn signature_restriction_leaves_outside_literals() {
        let (u, p) = setup("s :- K p. t :- K q.");
        let wv = vec![world(&u, &["p"]), world(&u, &["q"])];
        let atoms: std::collections::BTreeSet<Atom> = [Atom::prop("p")].into();
        let r = subjective_reduct_sig(&u, &p, &wv, &atoms);
        // K p fails on the q-world, K q is outside the signature.
        assert_eq!(r, parse_program("s :- #false. t :- K q.").unwrap());
        let empty = subjective_reduct_sig(&u, &p, &wv, &Default::default());
        assert_eq!(empty, p);
    }

    #[test]
    fn theory_reduct_is_objective() {
        let (u, p) = setup("p :- not K not p.");
        let t = crate::ast::program_to_theory(&p);
        let r = theory_reduct(&u, &t, &[0]).unwrap();
        assert!(r.is_objective());
    }
}
