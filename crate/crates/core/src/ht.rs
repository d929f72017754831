//! Here-and-there satisfaction, falsification, and stable (equilibrium)
//! models for ground objective theories, with explicit negation.
//!
//! Two evaluation paths exist. The generic path walks formulas and is used
//! for arbitrary objective sentences at small scale; it also serves as the
//! raw-enumeration oracle. The compiled path flattens rule-form programs
//! into bit operations and backtracks over explicit literal assignments,
//! which is what the world-view engines run on.

use crate::ast::{Formula, ObjLit, Program, Rule};
use crate::model::{Universe, World};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("formula is not ground (quantifier or variable left after grounding)")]
    NonGround,
    #[error("formula is not objective")]
    NonObjective,
    #[error("atom outside the universe: {0}")]
    UnknownAtom(crate::ast::Atom),
    #[error("{what} needs {actual} atoms, above the cap of {cap}; raise the cap to proceed")]
    CapExceeded { what: &'static str, cap: usize, actual: usize },
}

/// An HT-interpretation: a pair of worlds with `here` a subset of `there`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HtPair {
    pub here: World,
    pub there: World,
}

impl HtPair {
    pub fn new(here: World, there: World) -> Self {
        debug_assert!(here & !there == 0, "here must be a subset of there");
        HtPair { here, there }
    }

    pub fn total(world: World) -> Self {
        HtPair { here: world, there: world }
    }
}

/// Satisfaction at an HT-pair. Implications are checked in both worlds;
/// explicit negation delegates to falsification.
pub fn ht_satisfies(u: &Universe, pair: HtPair, f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Atom(a) => {
            if !a.is_ground() {
                return Err(EvalError::NonGround);
            }
            let i = u.atom_index(a).ok_or_else(|| EvalError::UnknownAtom(a.clone()))?;
            pair.here & (1 << (2 * i)) != 0
        }
        Formula::And(gs) => {
            for g in gs {
                if !ht_satisfies(u, pair, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(gs) => {
            for g in gs {
                if ht_satisfies(u, pair, g)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Impl(h, b) => {
            let here_ok = ht_satisfies(u, pair, h)? || !ht_satisfies(u, pair, b)?;
            if !here_ok {
                return Ok(false);
            }
            let tt = HtPair::total(pair.there);
            ht_satisfies(u, tt, h)? || !ht_satisfies(u, tt, b)?
        }
        Formula::SNeg(g) => ht_falsifies(u, pair, g)?,
        Formula::K(_) | Formula::M(_) => return Err(EvalError::NonObjective),
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::NonGround),
    })
}

/// Falsification at an HT-pair; mutually recursive with satisfaction. The
/// implication clause evaluates its body in the total world.
pub fn ht_falsifies(u: &Universe, pair: HtPair, f: &Formula) -> Result<bool, EvalError> {
    Ok(match f {
        Formula::Bot => true,
        Formula::Top => false,
        Formula::Atom(a) => {
            if !a.is_ground() {
                return Err(EvalError::NonGround);
            }
            let i = u.atom_index(a).ok_or_else(|| EvalError::UnknownAtom(a.clone()))?;
            pair.here & (1 << (2 * i + 1)) != 0
        }
        Formula::And(gs) => {
            for g in gs {
                if ht_falsifies(u, pair, g)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Or(gs) => {
            for g in gs {
                if !ht_falsifies(u, pair, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Impl(h, b) => {
            ht_falsifies(u, pair, h)? && ht_satisfies(u, HtPair::total(pair.there), b)?
        }
        Formula::SNeg(g) => ht_satisfies(u, pair, g)?,
        Formula::K(_) | Formula::M(_) => return Err(EvalError::NonObjective),
        Formula::Exists(..) | Formula::Forall(..) => return Err(EvalError::NonGround),
    })
}

/// Classical (total-world) satisfaction: evaluation at the pair `(T, T)`.
pub fn classical_satisfies(u: &Universe, world: World, f: &Formula) -> Result<bool, EvalError> {
    ht_satisfies(u, HtPair::total(world), f)
}

fn submasks_proper(t: World) -> impl Iterator<Item = World> {
    // Enumerates proper subsets of t, descending, excluding t itself.
    let mut cur = t;
    std::iter::from_fn(move || {
        if cur == 0 {
            return None;
        }
        cur = (cur - 1) & t;
        Some(cur)
    })
}

/// Stable models of a ground objective theory by full enumeration: every
/// consistent world is tested as `(T, T)`, then minimized over all proper
/// subsets `H`. This is the raw oracle path; `cap` bounds the atom count.
pub fn stable_models_enumerated(
    u: &Universe,
    sentences: &[Formula],
    cap: usize,
) -> Result<BTreeSet<World>, EvalError> {
    if u.n_atoms() > cap {
        return Err(EvalError::CapExceeded {
            what: "enumerated stable-model search",
            cap,
            actual: u.n_atoms(),
        });
    }
    let mut out = BTreeSet::new();
    'world: for t in u.consistent_worlds() {
        for s in sentences {
            if !ht_satisfies(u, HtPair::total(t), s)? {
                continue 'world;
            }
        }
        let mut minimal = true;
        'h: for h in submasks_proper(t) {
            for s in sentences {
                if !ht_satisfies(u, HtPair::new(h, t), s)? {
                    continue 'h;
                }
            }
            minimal = false;
            break;
        }
        if minimal {
            out.insert(t);
        }
    }
    Ok(out)
}

/// A literal with a default-negation depth, compiled to a bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CAtom {
    True,
    False,
    Lit { bit: u32, neg: u8 },
}

impl CAtom {
    #[inline]
    fn classical(self, t: World) -> bool {
        match self {
            CAtom::True => true,
            CAtom::False => false,
            CAtom::Lit { bit, neg } => {
                let present = t & (1 << bit) != 0;
                if neg == 1 {
                    !present
                } else {
                    present
                }
            }
        }
    }

    /// Value at an HT-pair: `l` is checked here, `not l` and `not not l`
    /// only depend on the total world.
    #[inline]
    fn ht(self, h: World, t: World) -> bool {
        match self {
            CAtom::True => true,
            CAtom::False => false,
            CAtom::Lit { bit, neg } => match neg {
                0 => h & (1 << bit) != 0,
                1 => t & (1 << bit) == 0,
                _ => t & (1 << bit) != 0,
            },
        }
    }
}

#[derive(Debug, Clone)]
struct CRule {
    head: Vec<CAtom>,
    body: Vec<CAtom>,
    /// Highest atom index occurring in the rule, for early violation checks.
    watermark: usize,
}

impl CRule {
    #[inline]
    fn classical_sat(&self, t: World) -> bool {
        !self.body.iter().all(|c| c.classical(t)) || self.head.iter().any(|c| c.classical(t))
    }

    #[inline]
    fn ht_sat(&self, h: World, t: World) -> bool {
        // The total-world conjunct is assumed checked via classical_sat.
        !self.body.iter().all(|c| c.ht(h, t)) || self.head.iter().any(|c| c.ht(h, t))
    }
}

/// A ground objective program lowered onto a universe.
#[derive(Debug, Clone)]
pub struct CompiledProgram {
    rules: Vec<CRule>,
    /// Literals that occur at depth zero in some head: the only literals a
    /// stable model can contain.
    support: World,
    n_atoms: usize,
}

fn compile_objlit(u: &Universe, l: &ObjLit) -> Result<CAtom, EvalError> {
    Ok(match l {
        ObjLit::True => CAtom::True,
        ObjLit::False => CAtom::False,
        ObjLit::Not { neg, lit } => {
            if !lit.is_ground() {
                return Err(EvalError::NonGround);
            }
            let bit =
                u.lit_bit(lit).ok_or_else(|| EvalError::UnknownAtom(lit.atom.clone()))?;
            CAtom::Lit { bit, neg: *neg }
        }
    })
}

/// Compiles a ground objective program. Literals that cannot appear in any
/// stable model (their bit is outside the head support) are partially
/// evaluated away so the search only branches on supported atoms.
pub fn compile_program(u: &Universe, p: &Program) -> Result<CompiledProgram, EvalError> {
    let mut support: World = 0;
    for r in &p.rules {
        for l in r.head_lits() {
            let bit = u.lit_bit(&l).ok_or_else(|| EvalError::UnknownAtom(l.atom.clone()))?;
            support |= 1 << bit;
        }
    }
    let mut rules = Vec::new();
    'rule: for r in &p.rules {
        if !r.is_objective() {
            return Err(EvalError::NonObjective);
        }
        let mut head = Vec::new();
        for l in &r.head {
            let c = compile_objlit(u, l)?;
            let c = partial_eval(c, support);
            match c {
                CAtom::True => continue 'rule,
                CAtom::False => {}
                other => head.push(other),
            }
        }
        let mut body = Vec::new();
        for l in &r.body {
            let o = match l {
                crate::ast::BodyLit::Obj(o) => o,
                crate::ast::BodyLit::Subj(_) => return Err(EvalError::NonObjective),
            };
            let c = partial_eval(compile_objlit(u, o)?, support);
            match c {
                CAtom::True => {}
                CAtom::False => continue 'rule,
                other => body.push(other),
            }
        }
        let watermark = head
            .iter()
            .chain(body.iter())
            .filter_map(|c| match c {
                CAtom::Lit { bit, .. } => Some((bit / 2) as usize),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        rules.push(CRule { head, body, watermark });
    }
    Ok(CompiledProgram { rules, support, n_atoms: u.n_atoms() })
}

/// Resolves literals whose bit lies outside the support: they are absent
/// from every candidate world, so their truth value is fixed.
fn partial_eval(c: CAtom, support: World) -> CAtom {
    match c {
        CAtom::Lit { bit, neg } if support & (1 << bit) == 0 => {
            if neg == 1 {
                CAtom::True
            } else {
                CAtom::False
            }
        }
        other => other,
    }
}

impl CompiledProgram {
    pub fn classical_model(&self, t: World) -> bool {
        self.rules.iter().all(|r| r.classical_sat(t))
    }

    fn ht_model_given_classical(&self, h: World, t: World) -> bool {
        self.rules.iter().all(|r| r.ht_sat(h, t))
    }

    /// True when `t` is a stable model: a total model with no smaller here
    /// world satisfying the program.
    pub fn is_stable(&self, t: World) -> bool {
        self.classical_model(t)
            && !submasks_proper(t).any(|h| self.ht_model_given_classical(h, t))
    }
}

/// All stable models of a compiled program, found by backtracking over the
/// supported explicit literals (per atom: absent, positive, or explicitly
/// negated), pruning as soon as every atom of a rule is assigned.
///
/// `cap` bounds the number of atoms branched on.
pub fn stable_models(cp: &CompiledProgram, cap: usize) -> Result<BTreeSet<World>, EvalError> {
    let atoms: Vec<usize> = (0..cp.n_atoms)
        .filter(|i| cp.support & (0b11 << (2 * i)) != 0)
        .collect();
    if atoms.len() > cap {
        return Err(EvalError::CapExceeded {
            what: "stable-model search",
            cap,
            actual: atoms.len(),
        });
    }
    // Rules become checkable once all their atoms are assigned; group them
    // by the branching step that completes them.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); atoms.len() + 1];
    for (ri, r) in cp.rules.iter().enumerate() {
        let step = atoms.iter().position(|&a| a == r.watermark).map(|p| p + 1).unwrap_or(0);
        due[step].push(ri);
    }
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, World)> = vec![(0, 0)];
    while let Some((depth, world)) = stack.pop() {
        if due[depth].iter().any(|&ri| !cp.rules[ri].classical_sat(world)) {
            continue;
        }
        if depth == atoms.len() {
            if cp.is_stable(world) {
                out.insert(world);
            }
            continue;
        }
        let i = atoms[depth];
        let pos = 1u64 << (2 * i);
        let neg = 1u64 << (2 * i + 1);
        stack.push((depth + 1, world));
        if cp.support & pos != 0 {
            stack.push((depth + 1, world | pos));
        }
        if cp.support & neg != 0 {
            stack.push((depth + 1, world | neg));
        }
    }
    Ok(out)
}

/// Builds the universe of a ground program (or a wider atom set) and returns
/// its stable models as packed worlds, against that universe.
pub fn program_stable_models(
    u: &Universe,
    p: &Program,
    cap: usize,
) -> Result<BTreeSet<World>, EvalError> {
    let cp = compile_program(u, p)?;
    stable_models(&cp, cap)
}

/// Convenience used by tests and the CLI `ground`/objective path: stable
/// models of a self-contained ground objective program.
pub fn solve_objective(p: &Program, cap: usize) -> Result<(Universe, BTreeSet<World>), EvalError> {
    let u = Universe::new(p.atoms()).map_err(|e| match e {
        crate::model::ModelError::UniverseTooLarge { actual, cap } => {
            EvalError::CapExceeded { what: "universe", cap, actual }
        }
        _ => EvalError::NonGround,
    })?;
    let sms = program_stable_models(&u, p, cap)?;
    Ok((u, sms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Atom, Lit};
    use crate::parser::parse_program;

    fn u1() -> Universe {
        Universe::new([Atom::prop("p")]).unwrap()
    }

    fn lit(n: &str) -> Lit {
        Lit::pos(Atom::prop(n))
    }

    #[test]
    fn atom_satisfaction_clause() {
        let u = u1();
        let p = u.world_from_lits([&lit("p")]).unwrap();
        assert!(ht_satisfies(&u, HtPair::total(p), &Formula::atom("p")).unwrap());
        assert!(!ht_satisfies(&u, HtPair::new(0, p), &Formula::atom("p")).unwrap());
    }

    #[test]
    fn implication_holds_at_partial_pair() {
        // <{}, {p}> satisfies p <- p: here the body fails, there both hold.
        let u = u1();
        let p = u.world_from_lits([&lit("p")]).unwrap();
        let f = Formula::impl_(Formula::atom("p"), Formula::atom("p"));
        assert!(ht_satisfies(&u, HtPair::new(0, p), &f).unwrap());
    }

    #[test]
    fn explicit_negation_uses_falsification() {
        let u = u1();
        let p = u.world_from_lits([&lit("p")]).unwrap();
        let np = u.world_from_lits([&Lit::neg(Atom::prop("p"))]).unwrap();
        let f = Formula::SNeg(Box::new(Formula::atom("p")));
        // <{}, {p}>: -p not in here, so -p is not satisfied.
        assert!(!ht_satisfies(&u, HtPair::new(0, p), &f).unwrap());
        assert!(ht_satisfies(&u, HtPair::total(np), &f).unwrap());
        // Falsifying p needs -p in here.
        assert!(ht_falsifies(&u, HtPair::total(np), &Formula::atom("p")).unwrap());
        assert!(!ht_falsifies(&u, HtPair::total(0), &Formula::atom("p")).unwrap());
        // Falsity is falsified everywhere.
        assert!(ht_falsifies(&u, HtPair::total(0), &Formula::Bot).unwrap());
    }

    fn sm_sets(src: &str) -> Vec<Vec<&'static str>> {
        let p = parse_program(src).unwrap();
        let (u, sms) = solve_objective(&p, 18).unwrap();
        sms.iter()
            .map(|w| {
                u.lits_of(*w)
                    .iter()
                    .map(|l| {
                        let s = l.to_string();
                        Box::leak(s.into_boxed_str()) as &'static str
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn tautological_rule_has_empty_stable_model() {
        assert_eq!(sm_sets("p :- #false."), vec![Vec::<&str>::new()]);
    }

    #[test]
    fn disjunction_has_two_stable_models() {
        assert_eq!(sm_sets("p | q."), vec![vec!["p"], vec!["q"]]);
    }

    #[test]
    fn double_negation_gives_two_stable_models() {
        assert_eq!(sm_sets("p :- not not p."), vec![vec![], vec!["p"]]);
    }

    #[test]
    fn choice_rule_and_constraint() {
        assert_eq!(sm_sets("p | not p. :- not p."), vec![vec!["p"]]);
        assert_eq!(sm_sets("p :- not p."), Vec::<Vec<&str>>::new());
    }

    #[test]
    fn explicit_negation_conflicts_are_excluded() {
        assert_eq!(sm_sets("p. -p."), Vec::<Vec<&str>>::new());
        assert_eq!(sm_sets("-p :- not p."), vec![vec!["-p"]]);
    }

    #[test]
    fn compiled_and_enumerated_paths_agree_on_small_programs() {
        for src in [
            "p | q. r :- p.",
            "p :- not q. q :- not p.",
            "p | not p. q :- not not p.",
            "-a :- not a. b :- -a, not c.",
            "a | b | c. :- a, b. d :- not a.",
        ] {
            let p = parse_program(src).unwrap();
            let u = Universe::new(p.atoms()).unwrap();
            let compiled = program_stable_models(&u, &p, 18).unwrap();
            let theory = crate::ast::program_to_theory(&p);
            let raw = stable_models_enumerated(&u, &theory.sentences, 6).unwrap();
            assert_eq!(compiled, raw, "disagreement on {src}");
        }
    }
}
