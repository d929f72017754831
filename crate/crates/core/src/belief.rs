//! Belief and epistemic satisfaction: KD45- and S5-style model checking with
//! explicit negation over finite structures.
//!
//! A belief interpretation pairs a non-empty set of worlds with a `here`
//! world that need not belong to the set. Satisfaction and falsification are
//! mutually recursive; `K` quantifies over all worlds, `M` over some, and
//! explicit negation swaps the two relations.

use crate::ast::{Formula, ObjLit};
use crate::ht::EvalError;
use crate::model::{Universe, World};

/// Classical truth of an objective literal in a single world.
pub fn obj_lit_true(u: &Universe, world: World, l: &ObjLit) -> bool {
    match l {
        ObjLit::True => true,
        ObjLit::False => false,
        ObjLit::Not { neg, lit } => {
            let bit = u.lit_bit(lit).expect("literal outside universe");
            let present = world & (1 << bit) != 0;
            if *neg == 1 {
                !present
            } else {
                present
            }
        }
    }
}

/// Satisfaction of a ground formula by the belief interpretation
/// `(world_view, here)`.
pub fn bi_satisfies(
    u: &Universe,
    world_view: &[World],
    here: World,
    f: &Formula,
) -> Result<bool, EvalError> {
    debug_assert!(!world_view.is_empty());
    Ok(match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(a) => {
            if !a.is_ground() {
                return Err(EvalError::NonGround);
            }
            let i = u.atom_index(a).ok_or_else(|| EvalError::UnknownAtom(a.clone()))?;
            here & (1 << (2 * i)) != 0
        }
        Formula::And(gs) => {
            for g in gs {
                if !bi_satisfies(u, world_view, here, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(gs) => {
            for g in gs {
                if bi_satisfies(u, world_view, here, g)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Impl(h, b) => {
            bi_satisfies(u, world_view, here, h)? || !bi_satisfies(u, world_view, here, b)?
        }
        Formula::K(g) => {
            for w in world_view {
                if !bi_satisfies(u, world_view, *w, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::M(g) => {
            for w in world_view {
                if bi_satisfies(u, world_view, *w, g)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::SNeg(g) => bi_falsifies(u, world_view, here, g)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::NonGround),
    })
}

/// Falsification of a ground formula by `(world_view, here)`.
pub fn bi_falsifies(
    u: &Universe,
    world_view: &[World],
    here: World,
    f: &Formula,
) -> Result<bool, EvalError> {
    debug_assert!(!world_view.is_empty());
    Ok(match f {
        Formula::Bot => true,
        Formula::Top => false,
        Formula::Atom(a) => {
            if !a.is_ground() {
                return Err(EvalError::NonGround);
            }
            let i = u.atom_index(a).ok_or_else(|| EvalError::UnknownAtom(a.clone()))?;
            here & (1 << (2 * i + 1)) != 0
        }
        Formula::And(gs) => {
            for g in gs {
                if bi_falsifies(u, world_view, here, g)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Or(gs) => {
            for g in gs {
                if !bi_falsifies(u, world_view, here, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Impl(h, b) => {
            bi_falsifies(u, world_view, here, h)? && bi_satisfies(u, world_view, here, b)?
        }
        Formula::K(g) => {
            for w in world_view {
                if !bi_falsifies(u, world_view, *w, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::M(g) => {
            for w in world_view {
                if bi_falsifies(u, world_view, *w, g)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::SNeg(g) => bi_satisfies(u, world_view, here, g)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::NonGround),
    })
}

/// Epistemic (S5) satisfaction: every member world satisfies the formula.
pub fn ei_satisfies(u: &Universe, world_view: &[World], f: &Formula) -> Result<bool, EvalError> {
    for w in world_view {
        if !bi_satisfies(u, world_view, *w, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Truth of a subjective formula against a world view. Subjective formulas
/// are `here`-independent, so a single belief check suffices.
pub fn subjective_value(
    u: &Universe,
    world_view: &[World],
    f: &Formula,
) -> Result<bool, EvalError> {
    debug_assert!(f.is_subjective(), "subjective_value needs a subjective formula");
    bi_satisfies(u, world_view, 0, f)
}

/// Truth of a modal core `K l` / `M l` against a world view.
pub fn core_value(
    u: &Universe,
    world_view: &[World],
    modality: crate::ast::Modality,
    inner: &ObjLit,
) -> bool {
    match modality {
        crate::ast::Modality::K => world_view.iter().all(|w| obj_lit_true(u, *w, inner)),
        crate::ast::Modality::M => world_view.iter().any(|w| obj_lit_true(u, *w, inner)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Atom, Lit};
    use crate::model::Universe;

    fn setup() -> (Universe, World, World, World) {
        let u = Universe::new([Atom::prop("p"), Atom::prop("q")]).unwrap();
        let p = u.world_from_lits([&Lit::pos(Atom::prop("p"))]).unwrap();
        let q = u.world_from_lits([&Lit::pos(Atom::prop("q"))]).unwrap();
        let np = u.world_from_lits([&Lit::neg(Atom::prop("p"))]).unwrap();
        (u, p, q, np)
    }

    #[test]
    fn k_needs_all_worlds() {
        let (u, p, q, _) = setup();
        let kp = Formula::k(Formula::atom("p"));
        assert!(bi_satisfies(&u, &[p], 0, &kp).unwrap());
        assert!(!bi_satisfies(&u, &[p, q], p, &kp).unwrap());
    }

    #[test]
    fn m_needs_some_world() {
        let (u, _, _, _) = setup();
        let mp = Formula::m(Formula::atom("p"));
        assert!(!bi_satisfies(&u, &[0], 0, &mp).unwrap());
    }

    #[test]
    fn falsifying_k_needs_falsification_everywhere() {
        let (u, p, _, np) = setup();
        let kp = Formula::k(Formula::atom("p"));
        assert!(bi_falsifies(&u, &[np], np, &kp).unwrap());
        assert!(bi_falsifies(&u, &[np], 0, &Formula::Bot).unwrap());
        assert!(!bi_falsifies(&u, &[p, np], 0, &kp).unwrap());
    }

    #[test]
    fn coherence_on_small_space() {
        // Never both satisfied and falsified, for the M-free fragment:
        // world views with at most two belief sets over at most two atoms.
        let (u, _, _, _) = setup();
        let worlds = u.consistent_worlds();
        let fs = [
            Formula::atom("p"),
            Formula::SNeg(Box::new(Formula::atom("p"))),
            Formula::k(Formula::atom("p")),
            Formula::k(Formula::SNeg(Box::new(Formula::atom("q")))),
            Formula::not(Formula::k(Formula::atom("q"))),
            Formula::impl_(Formula::atom("p"), Formula::k(Formula::atom("p"))),
        ];
        for (ai, &a) in worlds.iter().enumerate() {
            for &b in &worlds[ai..] {
                let wv = if a == b { vec![a] } else { vec![a, b] };
                for here in &worlds {
                    for f in &fs {
                        let sat = bi_satisfies(&u, &wv, *here, f).unwrap();
                        let fal = bi_falsifies(&u, &wv, *here, f).unwrap();
                        assert!(!(sat && fal), "incoherent on {f} at {here:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn m_formulas_may_be_both_satisfied_and_falsified() {
        // The falsification clause for M quantifies existentially, so a view
        // with one q-world and one -q-world both satisfies and falsifies
        // `M -q`. Falsification only ever feeds explicit negation, and the
        // surface syntax confines explicit negation to atoms, so this
        // incoherence is unreachable from program evaluation.
        let (u, _, q, _) = setup();
        let nq = u.world_from_lits([&Lit::neg(Atom::prop("q"))]).unwrap();
        let wv = vec![q, nq];
        let f = Formula::m(Formula::SNeg(Box::new(Formula::atom("q"))));
        assert!(bi_satisfies(&u, &wv, 0, &f).unwrap());
        assert!(bi_falsifies(&u, &wv, 0, &f).unwrap());
    }

    #[test]
    fn km_duality_after_expansion() {
        let (u, _, _, _) = setup();
        let worlds = u.consistent_worlds();
        let g = Formula::atom("p");
        let mg = Formula::m(g.clone());
        let expanded = crate::rewrite::expand_modal_abbreviations(&mg, false);
        for (ai, &a) in worlds.iter().enumerate() {
            for &b in &worlds[ai..] {
                let wv = if a == b { vec![a] } else { vec![a, b] };
                for here in &worlds {
                    assert_eq!(
                        bi_satisfies(&u, &wv, *here, &mg).unwrap(),
                        bi_satisfies(&u, &wv, *here, &expanded).unwrap()
                    );
                }
            }
        }
    }
}
