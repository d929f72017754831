//! Operator rewritings: modal interdefinability and the collapse of nested
//! default negations.
//!
//! With `K` primitive, `M G` abbreviates `not K not G`. Rewriting may stack
//! default negations three deep, in which case `not not not F` collapses to
//! `not F`. The `keep_m` mode leaves `M` untouched for the one semantics
//! that treats it as primitive.

use crate::ast::{BodyLit, Formula, Modality, Program, Rule, Theory};

/// Rewrites `not not not F` to `not F`, exhaustively, bottom-up. The
/// rewriting is confluent and terminating: each application strictly reduces
/// the number of implication nodes.
pub fn simplify_triple_negation(f: &Formula) -> Formula {
    let g = match f {
        Formula::Bot | Formula::Top | Formula::Atom(_) => f.clone(),
        Formula::SNeg(g) => Formula::SNeg(Box::new(simplify_triple_negation(g))),
        Formula::And(gs) => Formula::And(gs.iter().map(simplify_triple_negation).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(simplify_triple_negation).collect()),
        Formula::Impl(h, b) => Formula::Impl(
            Box::new(simplify_triple_negation(h)),
            Box::new(simplify_triple_negation(b)),
        ),
        Formula::K(g) => Formula::K(Box::new(simplify_triple_negation(g))),
        Formula::M(g) => Formula::M(Box::new(simplify_triple_negation(g))),
        Formula::Exists(v, g) => {
            Formula::Exists(v.clone(), Box::new(simplify_triple_negation(g)))
        }
        Formula::Forall(v, g) => {
            Formula::Forall(v.clone(), Box::new(simplify_triple_negation(g)))
        }
    };
    // not not not F -> not F at this node.
    if let Some(g1) = g.as_not() {
        if let Some(g2) = g1.as_not() {
            if let Some(g3) = g2.as_not() {
                return simplify_triple_negation(&Formula::not(g3.clone()));
            }
        }
    }
    g
}

/// Expands modal abbreviations in a formula. With `keep_m` false, `M G`
/// becomes `not K not G`; triple negations produced along the way are
/// collapsed. With `keep_m` true the formula is returned with `M` intact.
pub fn expand_modal_abbreviations(f: &Formula, keep_m: bool) -> Formula {
    if keep_m {
        return f.clone();
    }
    fn go(f: &Formula) -> Formula {
        match f {
            Formula::Bot | Formula::Top | Formula::Atom(_) => f.clone(),
            Formula::SNeg(g) => Formula::SNeg(Box::new(go(g))),
            Formula::And(gs) => Formula::And(gs.iter().map(go).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(go).collect()),
            Formula::Impl(h, b) => Formula::Impl(Box::new(go(h)), Box::new(go(b))),
            Formula::K(g) => Formula::K(Box::new(go(g))),
            Formula::M(g) => Formula::not(Formula::k(Formula::not(go(g)))),
            Formula::Exists(v, g) => Formula::Exists(v.clone(), Box::new(go(g))),
            Formula::Forall(v, g) => Formula::Forall(v.clone(), Box::new(go(g))),
        }
    }
    simplify_triple_negation(&go(f))
}

/// Program-level counterpart: every `M l` literal becomes `not K not l`,
/// adjusting the outer and inner default negation counts and collapsing
/// triples on both sides.
pub fn expand_program(p: &Program) -> Program {
    let rules = p
        .rules
        .iter()
        .map(|r| {
            let body = r
                .body
                .iter()
                .map(|l| match l {
                    BodyLit::Subj(s) if s.modality == Modality::M => {
                        let inner = s.inner.clone().negate(1);
                        match BodyLit::subj(1, Modality::K, inner) {
                            BodyLit::Subj(k) => BodyLit::Subj(k.negate(s.neg)),
                            BodyLit::Obj(o) => BodyLit::Obj(o.negate(s.neg)),
                        }
                    }
                    other => other.clone(),
                })
                .collect();
            Rule::new(r.head.clone(), body)
        })
        .collect();
    let mut out = Program::new(rules);
    out.declared_constants = p.declared_constants.clone();
    out
}

/// Expands every sentence of a theory.
pub fn expand_theory(t: &Theory, keep_m: bool) -> Theory {
    Theory::new(t.sentences.iter().map(|s| expand_modal_abbreviations(s, keep_m)).collect())
}

/// True when the formula contains no `M` operator.
pub fn is_m_free(f: &Formula) -> bool {
    match f {
        Formula::Bot | Formula::Top | Formula::Atom(_) => true,
        Formula::M(_) => false,
        Formula::SNeg(g) | Formula::K(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => {
            is_m_free(g)
        }
        Formula::And(gs) | Formula::Or(gs) => gs.iter().all(is_m_free),
        Formula::Impl(h, b) => is_m_free(h) && is_m_free(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Atom, Lit};
    use crate::parser::parse_program;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn m_becomes_not_k_not() {
        let f = Formula::m(p());
        assert_eq!(
            expand_modal_abbreviations(&f, false),
            Formula::not(Formula::k(Formula::not(p())))
        );
    }

    #[test]
    fn k_is_a_fixed_point() {
        let f = Formula::k(p());
        assert_eq!(expand_modal_abbreviations(&f, false), f);
    }

    #[test]
    fn doubly_negated_m_collapses() {
        // not not M p -> not not not K not p -> not K not p
        let f = Formula::not(Formula::not(Formula::m(p())));
        assert_eq!(
            expand_modal_abbreviations(&f, false),
            Formula::not(Formula::k(Formula::not(p())))
        );
    }

    #[test]
    fn keep_m_preserves_the_operator() {
        let f = Formula::m(p());
        assert_eq!(expand_modal_abbreviations(&f, true), f);
    }

    #[test]
    fn triple_negation_simplifies() {
        let f = Formula::not(Formula::not(Formula::not(p())));
        assert_eq!(simplify_triple_negation(&f), Formula::not(p()));
        let g = Formula::not(p());
        assert_eq!(simplify_triple_negation(&g), g);
        // Four negations need two applications.
        let f4 = Formula::not(Formula::not(Formula::not(Formula::not(p()))));
        assert_eq!(
            simplify_triple_negation(&f4),
            Formula::not(Formula::not(p()))
        );
    }

    #[test]
    fn program_expansion_matches_literal_arithmetic() {
        let a = expand_program(&parse_program("p :- M p.").unwrap());
        let b = parse_program("p :- not K not p.").unwrap();
        assert_eq!(a, b);

        let c = expand_program(&parse_program("p :- not not M q.").unwrap());
        let d = parse_program("p :- not K not q.").unwrap();
        assert_eq!(c, d);

        let e = expand_program(&parse_program("p :- not M not not q.").unwrap());
        // not M not not q -> not not K not not not q -> not not K not q
        let f = parse_program("p :- not not K not q.").unwrap();
        assert_eq!(e, f);
    }

    #[test]
    fn expansion_leaves_k_rules_alone() {
        let src = "p :- K p, not K q, not not K -r.";
        let a = expand_program(&parse_program(src).unwrap());
        assert_eq!(a, parse_program(src).unwrap());
        let _ = Lit::pos(Atom::prop("p"));
    }
}
