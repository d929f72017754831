//! Interpretations, world views, and the packed world representation used by
//! the search engines.
//!
//! A ground atom universe assigns each explicit literal a bit: atom `i` owns
//! bits `2i` (positive) and `2i+1` (explicitly negated). A world is a `u64`
//! mask over these bits; it is consistent when no atom has both bits set.
//! Public results are exposed as ordinary sorted sets of literals.

use crate::ast::{Atom, Lit};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("interpretation contains both {0} and its explicit negation")]
    Inconsistent(Atom),
    #[error("a world view must contain at least one interpretation")]
    EmptyWorldView,
    #[error("atom universe too large: {actual} atoms exceed the cap of {cap}")]
    UniverseTooLarge { actual: usize, cap: usize },
    #[error("atom {0} does not belong to the universe")]
    UnknownAtom(Atom),
}

/// Hard representation limit: 30 atoms fit in a 60-bit world mask.
pub const UNIVERSE_HARD_CAP: usize = 30;

/// A packed world: one bit per explicit literal of the universe.
pub type World = u64;

/// The ground atom universe of one solving context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    atoms: Vec<Atom>,
    index: BTreeMap<Atom, usize>,
}

impl Universe {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Result<Self, ModelError> {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        if set.len() > UNIVERSE_HARD_CAP {
            return Err(ModelError::UniverseTooLarge { actual: set.len(), cap: UNIVERSE_HARD_CAP });
        }
        let atoms: Vec<Atom> = set.into_iter().collect();
        let index = atoms.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Ok(Universe { atoms, index })
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_index(&self, a: &Atom) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// The bit of an explicit literal.
    pub fn lit_bit(&self, l: &Lit) -> Option<u32> {
        self.index.get(&l.atom).map(|i| (2 * i + usize::from(!l.positive)) as u32)
    }

    pub fn bit_lit(&self, bit: u32) -> Lit {
        let atom = self.atoms[(bit / 2) as usize].clone();
        if bit % 2 == 0 {
            Lit::pos(atom)
        } else {
            Lit::neg(atom)
        }
    }

    /// Mask with every literal bit of the universe set.
    pub fn full_mask(&self) -> World {
        if self.atoms.is_empty() {
            0
        } else {
            (1u64 << (2 * self.atoms.len())) - 1
        }
    }

    /// True when no atom occurs together with its explicit negation.
    pub fn is_consistent(&self, w: World) -> bool {
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        (w & (w << 1) & ODD) == 0
    }

    pub fn world_from_lits<'a>(
        &self,
        lits: impl IntoIterator<Item = &'a Lit>,
    ) -> Result<World, ModelError> {
        let mut w = 0u64;
        for l in lits {
            let bit = self.lit_bit(l).ok_or_else(|| ModelError::UnknownAtom(l.atom.clone()))?;
            w |= 1 << bit;
        }
        for (i, a) in self.atoms.iter().enumerate() {
            let pair = 0b11 << (2 * i);
            if w & pair == pair {
                return Err(ModelError::Inconsistent(a.clone()));
            }
        }
        Ok(w)
    }

    pub fn lits_of(&self, w: World) -> BTreeSet<Lit> {
        let mut out = BTreeSet::new();
        let mut m = w;
        while m != 0 {
            let bit = m.trailing_zeros();
            out.insert(self.bit_lit(bit));
            m &= m - 1;
        }
        out
    }

    /// All consistent worlds whose literals are within `support`, in
    /// ascending mask order. With full support this enumerates all 3^n
    /// (per-atom: absent, positive, negated) consistent worlds restricted to
    /// the atoms present in `support`.
    pub fn consistent_worlds_within(&self, support: World) -> Vec<World> {
        let mut out = vec![0u64];
        for i in 0..self.atoms.len() {
            let pos = 1u64 << (2 * i);
            let neg = 1u64 << (2 * i + 1);
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                next.push(*w);
                if support & pos != 0 {
                    next.push(w | pos);
                }
                if support & neg != 0 {
                    next.push(w | neg);
                }
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    pub fn consistent_worlds(&self) -> Vec<World> {
        self.consistent_worlds_within(self.full_mask())
    }

    pub fn interpretation(&self, w: World) -> Interpretation {
        Interpretation { lits: self.lits_of(w) }
    }

    pub fn world_view(&self, worlds: &BTreeSet<World>) -> Result<WorldView, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::EmptyWorldView);
        }
        Ok(WorldView { belief_sets: worlds.iter().map(|w| self.interpretation(*w)).collect() })
    }
}

/// A consistent set of ground explicit literals: one candidate belief set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interpretation {
    lits: BTreeSet<Lit>,
}

impl Interpretation {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Self, ModelError> {
        let lits: BTreeSet<Lit> = lits.into_iter().collect();
        for l in &lits {
            if lits.contains(&l.complement()) {
                return Err(ModelError::Inconsistent(l.atom.clone()));
            }
        }
        Ok(Interpretation { lits })
    }

    pub fn empty() -> Self {
        Interpretation::default()
    }

    pub fn lits(&self) -> &BTreeSet<Lit> {
        &self.lits
    }

    pub fn contains(&self, l: &Lit) -> bool {
        self.lits.contains(l)
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    /// Restriction to the literals whose atoms pass the filter.
    pub fn restrict(&self, keep: &impl Fn(&Atom) -> bool) -> Interpretation {
        Interpretation { lits: self.lits.iter().filter(|l| keep(&l.atom)).cloned().collect() }
    }

    pub fn union(&self, other: &Interpretation) -> Result<Interpretation, ModelError> {
        Interpretation::new(self.lits.iter().chain(other.lits.iter()).cloned())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// A non-empty set of interpretations: one candidate world view.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldView {
    belief_sets: BTreeSet<Interpretation>,
}

impl WorldView {
    pub fn new(belief_sets: impl IntoIterator<Item = Interpretation>) -> Result<Self, ModelError> {
        let belief_sets: BTreeSet<Interpretation> = belief_sets.into_iter().collect();
        if belief_sets.is_empty() {
            return Err(ModelError::EmptyWorldView);
        }
        Ok(WorldView { belief_sets })
    }

    pub fn singleton(i: Interpretation) -> Self {
        WorldView { belief_sets: std::iter::once(i).collect() }
    }

    pub fn belief_sets(&self) -> &BTreeSet<Interpretation> {
        &self.belief_sets
    }

    pub fn len(&self) -> usize {
        self.belief_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: &Interpretation) -> bool {
        self.belief_sets.contains(i)
    }

    /// Restriction of every belief set to atoms passing the filter;
    /// coinciding restrictions collapse.
    pub fn restrict(&self, keep: &impl Fn(&Atom) -> bool) -> WorldView {
        WorldView {
            belief_sets: self.belief_sets.iter().map(|i| i.restrict(keep)).collect(),
        }
    }

    /// Pairwise unions with another world view's belief sets. Pairs whose
    /// union would be inconsistent cannot arise when the two sides use
    /// disjoint atoms; they are rejected as an error otherwise.
    pub fn join(&self, other: &WorldView) -> Result<WorldView, ModelError> {
        let mut out = BTreeSet::new();
        for a in &self.belief_sets {
            for b in &other.belief_sets {
                out.insert(a.union(b)?);
            }
        }
        Ok(WorldView { belief_sets: out })
    }
}

impl fmt::Display for WorldView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, bs) in self.belief_sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{bs}")?;
        }
        write!(f, "]")
    }
}

/// Renders a set of world views one per line, canonically ordered.
pub fn format_world_views(wvs: &[WorldView]) -> String {
    let mut sorted: Vec<&WorldView> = wvs.iter().collect();
    sorted.sort();
    let mut out = String::new();
    for wv in sorted {
        out.push_str(&wv.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Atom;

    fn universe(names: &[&str]) -> Universe {
        Universe::new(names.iter().map(|n| Atom::prop(*n))).unwrap()
    }

    #[test]
    fn consistency_mask_check() {
        let u = universe(&["p", "q"]);
        let p = Lit::pos(Atom::prop("p"));
        let np = Lit::neg(Atom::prop("p"));
        let w = u.world_from_lits([&p]).unwrap();
        assert!(u.is_consistent(w));
        assert!(matches!(u.world_from_lits([&p, &np]), Err(ModelError::Inconsistent(_))));
    }

    #[test]
    fn three_valued_world_enumeration_counts() {
        let u = universe(&["p", "q"]);
        assert_eq!(u.consistent_worlds().len(), 9);
        let u3 = universe(&["p", "q", "r"]);
        assert_eq!(u3.consistent_worlds().len(), 27);
    }

    #[test]
    fn world_round_trip() {
        let u = universe(&["p", "q"]);
        let lits = [Lit::pos(Atom::prop("p")), Lit::neg(Atom::prop("q"))];
        let w = u.world_from_lits(lits.iter()).unwrap();
        assert_eq!(u.lits_of(w), lits.iter().cloned().collect());
    }

    #[test]
    fn world_view_must_be_non_empty() {
        assert!(WorldView::new(std::iter::empty()).is_err());
    }

    #[test]
    fn restriction_collapses_duplicates() {
        let p = Interpretation::new([Lit::pos(Atom::prop("p"))]).unwrap();
        let pq = Interpretation::new([Lit::pos(Atom::prop("p")), Lit::pos(Atom::prop("q"))])
            .unwrap();
        let wv = WorldView::new([p, pq]).unwrap();
        let restricted = wv.restrict(&|a| a.pred == "p");
        assert_eq!(restricted.len(), 1);
    }
}
