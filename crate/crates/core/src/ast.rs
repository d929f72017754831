//! Abstract syntax for epistemic logic programs and theories.
//!
//! Programs are sets of rules built from objective and subjective literals;
//! theories are sets of arbitrary modal sentences. Rules are kept in a
//! canonical form (literals and rules sorted and deduplicated) so that
//! structural equality coincides with set equality and printing is stable.

use std::collections::BTreeSet;
use std::fmt;

/// A term is either a ground constant or a variable (upper-case initial).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn is_ground(&self) -> bool {
        matches!(self, Term::Const(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(v) => write!(f, "{v}"),
        }
    }
}

/// A predicate applied to terms, e.g. `teach(bob, ai)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom { pred: pred.into(), args }
    }

    pub fn prop(pred: impl Into<String>) -> Self {
        Atom { pred: pred.into(), args: Vec::new() }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An explicit literal: an atom or its explicit (strong) negation `-a`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub atom: Atom,
    pub positive: bool,
}

impl Lit {
    pub fn pos(atom: Atom) -> Self {
        Lit { atom, positive: true }
    }

    pub fn neg(atom: Atom) -> Self {
        Lit { atom, positive: false }
    }

    /// The complementary explicit literal; an involution.
    pub fn complement(&self) -> Self {
        Lit { atom: self.atom.clone(), positive: !self.positive }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            write!(f, "-")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// An objective literal: a truth constant or an explicit literal under
/// zero, one or two default negations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjLit {
    True,
    False,
    Not { neg: u8, lit: Lit },
}

impl ObjLit {
    /// Builds an objective literal, normalizing negated truth constants.
    pub fn new(neg: u8, lit: Lit) -> Self {
        debug_assert!(neg <= 2);
        ObjLit::Not { neg, lit }
    }

    pub fn lit(lit: Lit) -> Self {
        ObjLit::Not { neg: 0, lit }
    }

    /// Adds `n` further default negations, collapsing triples (`not not not F`
    /// to `not F`) and simplifying negated truth constants.
    pub fn negate(self, n: u8) -> Self {
        if n == 0 {
            return self;
        }
        match self {
            ObjLit::True => ObjLit::False.negate(n - 1),
            ObjLit::False => ObjLit::True.negate(n - 1),
            ObjLit::Not { neg, lit } => {
                let mut d = neg + n;
                while d > 2 {
                    d -= 2;
                }
                ObjLit::Not { neg: d, lit }
            }
        }
    }

    pub fn neg_depth(&self) -> u8 {
        match self {
            ObjLit::Not { neg, .. } => *neg,
            _ => 0,
        }
    }

    pub fn as_lit(&self) -> Option<&Lit> {
        match self {
            ObjLit::Not { lit, .. } => Some(lit),
            _ => None,
        }
    }

    /// The underlying explicit literal when it carries no default negation.
    pub fn plain_lit(&self) -> Option<&Lit> {
        match self {
            ObjLit::Not { neg: 0, lit } => Some(lit),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.as_lit().map_or(true, Lit::is_ground)
    }
}

impl fmt::Display for ObjLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjLit::True => write!(f, "#true"),
            ObjLit::False => write!(f, "#false"),
            ObjLit::Not { neg, lit } => {
                for _ in 0..*neg {
                    write!(f, "not ")?;
                }
                write!(f, "{lit}")
            }
        }
    }
}

/// Epistemic modality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    K,
    M,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modality::K => write!(f, "K"),
            Modality::M => write!(f, "M"),
        }
    }
}

/// A subjective literal `K l`, `M l`, possibly under one or two default
/// negations. The inner objective literal may itself carry default negation,
/// as in `not K not p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubjLit {
    pub neg: u8,
    pub modality: Modality,
    pub inner: ObjLit,
}

impl SubjLit {
    pub fn new(neg: u8, modality: Modality, inner: ObjLit) -> Self {
        debug_assert!(neg <= 2);
        SubjLit { neg, modality, inner }
    }

    /// The modal core `K l` / `M l` without outer default negation.
    pub fn core(&self) -> (Modality, ObjLit) {
        (self.modality, self.inner.clone())
    }

    pub fn negate(self, n: u8) -> Self {
        let mut d = self.neg + n;
        while d > 2 {
            d -= 2;
        }
        SubjLit { neg: d, ..self }
    }

    pub fn is_ground(&self) -> bool {
        self.inner.is_ground()
    }
}

impl fmt::Display for SubjLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.neg {
            write!(f, "not ")?;
        }
        write!(f, "{} {}", self.modality, self.inner)
    }
}

/// A body literal: objective or subjective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyLit {
    Obj(ObjLit),
    Subj(SubjLit),
}

impl BodyLit {
    /// Wraps a modal literal, collapsing modalities applied to truth
    /// constants (`K #true` is `#true`, `M #false` is `#false`, and so on;
    /// world views are non-empty, so `K`/`M` agree on constants).
    pub fn subj(neg: u8, modality: Modality, inner: ObjLit) -> Self {
        match inner {
            ObjLit::True => BodyLit::Obj(ObjLit::True.negate(neg)),
            ObjLit::False => BodyLit::Obj(ObjLit::False.negate(neg)),
            inner => BodyLit::Subj(SubjLit::new(neg, modality, inner)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            BodyLit::Obj(l) => l.is_ground(),
            BodyLit::Subj(l) => l.is_ground(),
        }
    }
}

impl fmt::Display for BodyLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyLit::Obj(l) => write!(f, "{l}"),
            BodyLit::Subj(l) => write!(f, "{l}"),
        }
    }
}

/// A rule `l1 | ... | lm :- L1, ..., Ln`. An empty head denotes falsity, an
/// empty body the empty conjunction (truth). Head and body are kept sorted
/// and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Vec<ObjLit>,
    pub body: Vec<BodyLit>,
}

impl Rule {
    pub fn new(mut head: Vec<ObjLit>, mut body: Vec<BodyLit>) -> Self {
        head.sort();
        head.dedup();
        body.sort();
        body.dedup();
        Rule { head, body }
    }

    pub fn fact(lit: ObjLit) -> Self {
        Rule::new(vec![lit], vec![])
    }

    pub fn constraint(body: Vec<BodyLit>) -> Self {
        Rule::new(vec![], body)
    }

    pub fn is_ground(&self) -> bool {
        self.head.iter().all(ObjLit::is_ground) && self.body.iter().all(BodyLit::is_ground)
    }

    pub fn is_objective(&self) -> bool {
        self.body.iter().all(|l| matches!(l, BodyLit::Obj(_)))
    }

    /// All atoms occurring anywhere in the rule.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for l in &self.head {
            if let Some(lit) = l.as_lit() {
                out.insert(lit.atom.clone());
            }
        }
        for l in &self.body {
            match l {
                BodyLit::Obj(o) => {
                    if let Some(lit) = o.as_lit() {
                        out.insert(lit.atom.clone());
                    }
                }
                BodyLit::Subj(s) => {
                    if let Some(lit) = s.inner.as_lit() {
                        out.insert(lit.atom.clone());
                    }
                }
            }
        }
        out
    }

    /// Atoms occurring in the head.
    pub fn head_atoms(&self) -> BTreeSet<Atom> {
        self.head.iter().filter_map(|l| l.as_lit().map(|x| x.atom.clone())).collect()
    }

    /// Explicit literals occurring at negation depth zero in the head; these
    /// are the literals the rule can derive.
    pub fn head_lits(&self) -> BTreeSet<Lit> {
        self.head.iter().filter_map(|l| l.plain_lit().cloned()).collect()
    }

    /// Atoms occurring in objective body literals.
    pub fn body_obj_atoms(&self) -> BTreeSet<Atom> {
        self.body
            .iter()
            .filter_map(|l| match l {
                BodyLit::Obj(o) => o.as_lit().map(|x| x.atom.clone()),
                _ => None,
            })
            .collect()
    }

    /// Explicit literals in positive (undefaulted) objective body literals.
    pub fn body_obj_pos_lits(&self) -> BTreeSet<Lit> {
        self.body
            .iter()
            .filter_map(|l| match l {
                BodyLit::Obj(o) => o.plain_lit().cloned(),
                _ => None,
            })
            .collect()
    }

    /// Atoms occurring in subjective body literals.
    pub fn body_subj_atoms(&self) -> BTreeSet<Atom> {
        self.body
            .iter()
            .filter_map(|l| match l {
                BodyLit::Subj(s) => s.inner.as_lit().map(|x| x.atom.clone()),
                _ => None,
            })
            .collect()
    }

    /// Explicit literals inside positive subjective literals: those of the
    /// form `K l` with no default negation outside or inside the modality.
    /// These are the positive epistemic dependencies used by unfounded sets
    /// and epistemic tightness.
    pub fn body_subj_pos_lits(&self) -> BTreeSet<Lit> {
        self.body
            .iter()
            .filter_map(|l| match l {
                BodyLit::Subj(s) if s.neg == 0 && s.modality == Modality::K => {
                    s.inner.plain_lit().cloned()
                }
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.head.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{l}")?;
        }
        if !self.body.is_empty() || self.head.is_empty() {
            if !self.head.is_empty() {
                write!(f, " ")?;
            }
            write!(f, ":-")?;
            for (i, l) in self.body.iter().enumerate() {
                write!(f, "{}{l}", if i > 0 { ", " } else { " " })?;
            }
        }
        write!(f, ".")
    }
}

/// An epistemic logic program: a set of rules plus declared constants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub declared_constants: BTreeSet<String>,
}

impl Program {
    pub fn new(mut rules: Vec<Rule>) -> Self {
        rules.sort();
        rules.dedup();
        Program { rules, declared_constants: BTreeSet::new() }
    }

    pub fn with_constants(mut self, constants: impl IntoIterator<Item = String>) -> Self {
        self.declared_constants.extend(constants);
        self
    }

    pub fn push(&mut self, rule: Rule) {
        if let Err(i) = self.rules.binary_search(&rule) {
            self.rules.insert(i, rule);
        }
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    pub fn is_objective(&self) -> bool {
        self.rules.iter().all(Rule::is_objective)
    }

    /// All atoms occurring in the program.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().flat_map(|r| r.atoms()).collect()
    }

    /// Constants occurring in the program plus declared ones.
    pub fn constants(&self) -> BTreeSet<String> {
        let mut out = self.declared_constants.clone();
        for atom in self.atoms() {
            for t in &atom.args {
                if let Term::Const(c) = t {
                    out.insert(c.clone());
                }
            }
        }
        out
    }

    /// Distinct modal cores `(modality, inner)` of subjective body literals.
    pub fn modal_cores(&self) -> Vec<(Modality, ObjLit)> {
        let mut cores = BTreeSet::new();
        for r in &self.rules {
            for l in &r.body {
                if let BodyLit::Subj(s) = l {
                    cores.insert(s.core());
                }
            }
        }
        cores.into_iter().collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.declared_constants {
            writeln!(f, "#const {c}.")?;
        }
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A modal formula over the full connective set. Conjunction and disjunction
/// are n-ary so that transformations can tell a rule body apart from a
/// connective introduced inside a single body literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Top,
    Atom(Atom),
    /// Explicit (strong) negation.
    SNeg(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    /// `Impl(f, g)` is the implication `f <- g`.
    Impl(Box<Formula>, Box<Formula>),
    K(Box<Formula>),
    M(Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    /// Default negation: `not F` abbreviates `#false <- F`.
    pub fn not(f: Formula) -> Formula {
        Formula::Impl(Box::new(Formula::Bot), Box::new(f))
    }

    pub fn k(f: Formula) -> Formula {
        Formula::K(Box::new(f))
    }

    pub fn m(f: Formula) -> Formula {
        Formula::M(Box::new(f))
    }

    pub fn impl_(head: Formula, body: Formula) -> Formula {
        Formula::Impl(Box::new(head), Box::new(body))
    }

    pub fn atom(pred: impl Into<String>) -> Formula {
        Formula::Atom(Atom::prop(pred))
    }

    pub fn lit(l: &Lit) -> Formula {
        let a = Formula::Atom(l.atom.clone());
        if l.positive {
            a
        } else {
            Formula::SNeg(Box::new(a))
        }
    }

    /// Recognizes `#false <- G` and returns `G`.
    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Impl(h, b) if **h == Formula::Bot => Some(b),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Bot | Formula::Top => {}
                Formula::Atom(a) => {
                    for t in &a.args {
                        if let Term::Var(v) = t {
                            if !bound.contains(v) {
                                out.insert(v.clone());
                            }
                        }
                    }
                }
                Formula::SNeg(g) | Formula::K(g) | Formula::M(g) => go(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        go(g, bound, out);
                    }
                }
                Formula::Impl(h, b) => {
                    go(h, bound, out);
                    go(b, bound, out);
                }
                Formula::Exists(v, g) | Formula::Forall(v, g) => {
                    bound.push(v.clone());
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// True when the formula contains no modal operator.
    pub fn is_objective(&self) -> bool {
        match self {
            Formula::Bot | Formula::Top | Formula::Atom(_) => true,
            Formula::K(_) | Formula::M(_) => false,
            Formula::SNeg(g) => g.is_objective(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(Formula::is_objective),
            Formula::Impl(h, b) => h.is_objective() && b.is_objective(),
            Formula::Exists(_, g) | Formula::Forall(_, g) => g.is_objective(),
        }
    }

    /// True when every atom occurs under a modal operator.
    pub fn is_subjective(&self) -> bool {
        match self {
            Formula::Bot | Formula::Top => true,
            Formula::Atom(_) => false,
            Formula::K(_) | Formula::M(_) => true,
            Formula::SNeg(g) => g.is_subjective(),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().all(Formula::is_subjective),
            Formula::Impl(h, b) => h.is_subjective() && b.is_subjective(),
            Formula::Exists(_, g) | Formula::Forall(_, g) => g.is_subjective(),
        }
    }

    /// All atoms occurring in the formula (ground or not).
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |a| {
            out.insert(a.clone());
        });
        out
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Bot | Formula::Top => {}
            Formula::Atom(a) => f(a),
            Formula::SNeg(g) | Formula::K(g) | Formula::M(g) => g.visit_atoms(f),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.visit_atoms(f);
                }
            }
            Formula::Impl(h, b) => {
                h.visit_atoms(f);
                b.visit_atoms(f);
            }
            Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit_atoms(f),
        }
    }

    /// The maximal subjective subformulas: modal nodes not nested inside
    /// another modal node, structurally deduplicated.
    pub fn maximal_modal_subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        fn go(f: &Formula, out: &mut BTreeSet<Formula>) {
            match f {
                Formula::K(_) | Formula::M(_) => {
                    out.insert(f.clone());
                }
                Formula::Bot | Formula::Top | Formula::Atom(_) => {}
                Formula::SNeg(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => go(g, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        go(g, out);
                    }
                }
                Formula::Impl(h, b) => {
                    go(h, out);
                    go(b, out);
                }
            }
        }
        go(self, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn paren(f: &mut fmt::Formatter<'_>, g: &Formula, atomic: bool) -> fmt::Result {
            let simple = matches!(
                g,
                Formula::Bot | Formula::Top | Formula::Atom(_) | Formula::SNeg(_)
            ) || g.as_not().is_some()
                || (!atomic && matches!(g, Formula::K(_) | Formula::M(_)));
            if simple {
                write!(f, "{g}")
            } else {
                write!(f, "({g})")
            }
        }
        if let Some(g) = self.as_not() {
            write!(f, "not ")?;
            return paren(f, g, true);
        }
        match self {
            Formula::Bot => write!(f, "#false"),
            Formula::Top => write!(f, "#true"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::SNeg(g) => {
                write!(f, "-")?;
                paren(f, g, true)
            }
            Formula::And(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    paren(f, g, false)?;
                }
                Ok(())
            }
            Formula::Or(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    paren(f, g, false)?;
                }
                Ok(())
            }
            Formula::Impl(h, b) => {
                paren(f, h, false)?;
                write!(f, " <- ")?;
                paren(f, b, false)
            }
            Formula::K(g) => {
                write!(f, "K ")?;
                paren(f, g, true)
            }
            Formula::M(g) => {
                write!(f, "M ")?;
                paren(f, g, true)
            }
            Formula::Exists(v, g) => {
                write!(f, "exists {v} ")?;
                paren(f, g, true)
            }
            Formula::Forall(v, g) => {
                write!(f, "forall {v} ")?;
                paren(f, g, true)
            }
        }
    }
}

/// A set of sentences.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    pub sentences: Vec<Formula>,
}

impl Theory {
    pub fn new(mut sentences: Vec<Formula>) -> Self {
        sentences.sort();
        sentences.dedup();
        Theory { sentences }
    }

    pub fn push(&mut self, f: Formula) {
        if let Err(i) = self.sentences.binary_search(&f) {
            self.sentences.insert(i, f);
        }
    }

    pub fn union(mut self, other: Theory) -> Theory {
        for s in other.sentences {
            self.push(s);
        }
        self
    }

    pub fn is_ground(&self) -> bool {
        self.sentences.iter().all(Formula::is_ground)
    }

    pub fn is_objective(&self) -> bool {
        self.sentences.iter().all(Formula::is_objective)
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.sentences.iter().flat_map(|s| s.atoms()).collect()
    }

    pub fn maximal_modal_subformulas(&self) -> BTreeSet<Formula> {
        self.sentences.iter().flat_map(|s| s.maximal_modal_subformulas()).collect()
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sentences {
            writeln!(f, "{s}.")?;
        }
        Ok(())
    }
}

/// An epistemic specification: a theory paired with subjective integrity
/// constraints and an optional declared constant universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicSpec {
    pub theory: Theory,
    pub constraints: Vec<Formula>,
    pub constants: BTreeSet<String>,
}

/// Converts an objective literal to its formula form.
pub fn obj_lit_formula(l: &ObjLit) -> Formula {
    match l {
        ObjLit::True => Formula::Top,
        ObjLit::False => Formula::Bot,
        ObjLit::Not { neg, lit } => {
            let mut f = Formula::lit(lit);
            for _ in 0..*neg {
                f = Formula::not(f);
            }
            f
        }
    }
}

/// Converts a subjective literal to its formula form.
pub fn subj_lit_formula(l: &SubjLit) -> Formula {
    let inner = obj_lit_formula(&l.inner);
    let mut f = match l.modality {
        Modality::K => Formula::k(inner),
        Modality::M => Formula::m(inner),
    };
    for _ in 0..l.neg {
        f = Formula::not(f);
    }
    f
}

fn body_lit_formula(l: &BodyLit) -> Formula {
    match l {
        BodyLit::Obj(o) => obj_lit_formula(o),
        BodyLit::Subj(s) => subj_lit_formula(s),
    }
}

/// Identifies a rule with its implication formula. An empty head becomes
/// `#false`, an empty body the empty conjunction `#true`.
pub fn rule_to_formula(r: &Rule) -> Formula {
    let head = match r.head.len() {
        0 => Formula::Bot,
        1 => obj_lit_formula(&r.head[0]),
        _ => Formula::Or(r.head.iter().map(obj_lit_formula).collect()),
    };
    let body = match r.body.len() {
        0 => Formula::Top,
        1 => body_lit_formula(&r.body[0]),
        _ => Formula::And(r.body.iter().map(body_lit_formula).collect()),
    };
    Formula::impl_(head, body)
}

/// Identifies a program with the theory containing one implication per rule.
pub fn program_to_theory(p: &Program) -> Theory {
    Theory::new(p.rules.iter().map(rule_to_formula).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Lit {
        Lit::pos(Atom::prop("p"))
    }

    #[test]
    fn complement_is_involution() {
        let l = Lit::neg(Atom::prop("q"));
        assert_eq!(l.complement().complement(), l);
    }

    #[test]
    fn triple_negation_collapses_on_construction() {
        let l = ObjLit::lit(p()).negate(3);
        assert_eq!(l, ObjLit::lit(p()).negate(1));
        let l = ObjLit::lit(p()).negate(4);
        assert_eq!(l, ObjLit::lit(p()).negate(2));
    }

    #[test]
    fn negated_truth_constants_normalize() {
        assert_eq!(ObjLit::True.negate(1), ObjLit::False);
        assert_eq!(ObjLit::False.negate(2), ObjLit::False);
        assert_eq!(BodyLit::subj(0, Modality::K, ObjLit::True), BodyLit::Obj(ObjLit::True));
        assert_eq!(BodyLit::subj(1, Modality::M, ObjLit::True), BodyLit::Obj(ObjLit::False));
    }

    #[test]
    fn rule_canonicalizes_duplicates() {
        let r1 = Rule::new(
            vec![ObjLit::lit(p()), ObjLit::lit(p())],
            vec![BodyLit::Obj(ObjLit::lit(Lit::pos(Atom::prop("q"))))],
        );
        assert_eq!(r1.head.len(), 1);
    }

    #[test]
    fn empty_head_reads_as_falsity() {
        let r = Rule::constraint(vec![BodyLit::Obj(ObjLit::lit(p()).negate(1))]);
        let f = rule_to_formula(&r);
        match f {
            Formula::Impl(h, _) => assert_eq!(*h, Formula::Bot),
            _ => panic!("expected implication"),
        }
    }

    #[test]
    fn disjunctive_fact_reads_as_implication_from_top() {
        let r = Rule::new(vec![ObjLit::lit(p()), ObjLit::lit(Lit::pos(Atom::prop("q")))], vec![]);
        let f = rule_to_formula(&r);
        match f {
            Formula::Impl(h, b) => {
                assert!(matches!(*h, Formula::Or(_)));
                assert_eq!(*b, Formula::Top);
            }
            _ => panic!("expected implication"),
        }
    }
}
