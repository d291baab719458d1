//! Emptiness of alternating Büchi automata without building the breakpoint
//! (Miyano-Hayashi) automaton.
//!
//! States of the breakpoint automaton are pairs `⟨s, o⟩` where `s` is a level
//! of a run DAG and `o ⊆ s` the states still owing a visit to an accepting
//! state. Pairs are ordered by componentwise inclusion with the extra rule
//! that `o = ∅` only relates to `o = ∅`. That order is a simulation, so every
//! iterate of the emptiness fixed point is downward closed and can be kept as
//! an antichain of maximal pairs.

use crate::antichain::{Antichain, Preorder};
use crate::automaton::{Abw, Letter, StateSet};
use crate::error::{Error, Timeout};
use crate::fixpoint::{buchi_fix, BuchiDomain, FixOptions};

/// A breakpoint state `⟨s, o⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MhPair {
    pub s: StateSet,
    pub o: StateSet,
}

impl MhPair {
    pub fn new(s: StateSet, o: StateSet) -> MhPair {
        MhPair { s, o }
    }

    pub fn owes_nothing(&self) -> bool {
        self.o.is_clear()
    }
}

impl Preorder for MhPair {
    fn leq(&self, other: &Self) -> bool {
        leq_alt(self, other)
    }
}

pub fn leq_alt(p: &MhPair, q: &MhPair) -> bool {
    p.o.is_clear() == q.o.is_clear() && p.s.is_subset(&q.s) && p.o.is_subset(&q.o)
}

/// The pair whose closure is `↓p ∩ ↓q`, if that intersection is nonempty.
pub fn intersect_alt(p: &MhPair, q: &MhPair) -> Option<MhPair> {
    let mut o = p.o.clone();
    o.intersect_with(&q.o);
    if o.is_clear() && !(p.o.is_clear() && q.o.is_clear()) {
        return None;
    }
    let mut s = p.s.clone();
    s.intersect_with(&q.s);
    Some(MhPair { s, o })
}

/// Maximal elements of the `letter`-predecessors of `↓⟨s', o'⟩`.
///
/// At most two pairs come back: one with an empty owing set, and one with
/// a nonempty owing set.
pub fn pre_alt(abw: &Abw, letter: Letter, target: &MhPair) -> Result<Vec<MhPair>, Error> {
    if !target.o.is_subset(&target.s) {
        return Err(Error::InvalidElement(format!(
            "owing set {:?} is not contained in level set {:?}",
            target.o.ones().collect::<Vec<_>>(),
            target.s.ones().collect::<Vec<_>>()
        )));
    }
    Ok(pre_alt_unchecked(abw, letter, target))
}

fn pre_alt_unchecked(abw: &Abw, letter: Letter, target: &MhPair) -> Vec<MhPair> {
    let accepting = abw.accepting();
    let mut result = Vec::with_capacity(2);

    let mut owing_or_visited = target.s.clone();
    owing_or_visited.intersect_with(accepting);
    owing_or_visited.union_with(&target.o);
    let o = abw.satisfied_by(letter, &owing_or_visited);

    // every successor owes `Y ∖ α`, so a nonempty owing set inside α has no
    // predecessor at all
    if !target.o.is_clear() && target.o.is_subset(accepting) {
        return result;
    }
    result.push(MhPair::new(o.clone(), StateSet::with_capacity(abw.state_count())));
    if !o.is_clear() {
        let s = abw.satisfied_by(letter, &target.s);
        result.push(MhPair::new(s, o));
    }
    result
}

/// The breakpoint automaton of an ABW as an antichain domain.
pub struct AltDomain<'a> {
    abw: &'a Abw,
}

impl<'a> AltDomain<'a> {
    pub fn new(abw: &'a Abw) -> Self {
        AltDomain { abw }
    }

    fn full(&self) -> StateSet {
        let mut s = StateSet::with_capacity(self.abw.state_count());
        s.insert_range(..);
        s
    }
}

impl BuchiDomain for AltDomain<'_> {
    type Set = Antichain<MhPair>;

    fn empty(&self) -> Self::Set {
        Antichain::new()
    }

    fn top(&self) -> Self::Set {
        let all = self.full();
        let none = StateSet::with_capacity(self.abw.state_count());
        [MhPair::new(all.clone(), all.clone()), MhPair::new(all, none)]
            .into_iter()
            .collect()
    }

    fn pre(&self, set: &Self::Set) -> Self::Set {
        let mut result = Antichain::new();
        for pair in set {
            for letter in self.abw.letters() {
                result.extend(pre_alt_unchecked(self.abw, letter, pair));
            }
        }
        result
    }

    fn meet_alpha(&self, set: &Self::Set) -> Self::Set {
        set.filter(MhPair::owes_nothing)
    }

    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set {
        a.union(b)
    }

    fn below(&self, a: &Self::Set, b: &Self::Set) -> bool {
        a.below(b)
    }

    fn absorb(&self, set: &mut Self::Set, add: Self::Set) -> Self::Set {
        set.absorb(add)
    }

    fn contains_initial(&self, set: &Self::Set) -> bool {
        let init = self.abw.initial().index();
        set.iter().any(|p| p.owes_nothing() && p.s.contains(init))
    }
}

/// Whether `L(abw) = ∅`.
pub fn abw_empty(abw: &Abw, opts: &FixOptions) -> Result<bool, Timeout> {
    buchi_fix(&AltDomain::new(abw), opts).map(|nonempty| !nonempty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{PosFormula, StateId};

    fn set(n: usize, members: &[usize]) -> StateSet {
        let mut s = StateSet::with_capacity(n);
        members.iter().for_each(|&m| s.insert(m));
        s
    }

    fn pair(n: usize, s: &[usize], o: &[usize]) -> MhPair {
        MhPair::new(set(n, s), set(n, o))
    }

    fn one_state(accepting: bool, formula: PosFormula) -> Abw {
        Abw::new(
            vec!["a".into()],
            1,
            StateId(0),
            accepting.then_some(StateId(0)),
            [(StateId(0), Letter(0), formula)],
        )
        .unwrap()
    }

    #[test]
    fn order_cases() {
        assert!(leq_alt(&pair(2, &[0], &[]), &pair(2, &[0, 1], &[])));
        assert!(!leq_alt(&pair(2, &[0], &[]), &pair(2, &[0, 1], &[1])));
        assert!(leq_alt(&pair(2, &[0], &[0]), &pair(2, &[0], &[0])));
    }

    #[test]
    fn intersection_cases() {
        let p = pair(2, &[0, 1], &[0]);
        assert_eq!(intersect_alt(&p, &p), Some(p.clone()));
        assert_eq!(intersect_alt(&p, &pair(2, &[0, 1], &[1])), None);
        assert_eq!(
            intersect_alt(&pair(2, &[0], &[]), &pair(2, &[0, 1], &[])),
            Some(pair(2, &[0], &[]))
        );
        assert_eq!(intersect_alt(&pair(2, &[0], &[]), &p), None);
    }

    #[test]
    fn pre_on_accepting_self_loop() {
        // hand enumeration of the breakpoint automaton of q --a--> q, q accepting:
        // ⟨{q},∅⟩ has successor ⟨{q},∅⟩ (o' = s' ∖ α), and ⟨{q},{q}⟩ has
        // successor ⟨{q},∅⟩ as well; ⟨∅,∅⟩ has every ⟨s',∅⟩
        let a = one_state(true, PosFormula::State(StateId(0)));
        let got = pre_alt(&a, Letter(0), &pair(1, &[0], &[])).unwrap();
        assert_eq!(got, vec![pair(1, &[0], &[]), pair(1, &[0], &[0])]);
    }

    #[test]
    fn pre_with_false_transitions() {
        let a = one_state(false, PosFormula::False);
        let got = pre_alt(&a, Letter(0), &pair(1, &[0], &[])).unwrap();
        assert_eq!(got, vec![pair(1, &[], &[])]);
    }

    #[test]
    fn pre_of_accepting_owing_set_is_empty() {
        let f = PosFormula::State(StateId(0));
        let a = Abw::new(
            vec!["a".into()],
            2,
            StateId(0),
            [StateId(0)],
            [(StateId(0), Letter(0), f.clone()), (StateId(1), Letter(0), f)],
        )
        .unwrap();
        assert!(pre_alt(&a, Letter(0), &pair(2, &[0], &[0])).unwrap().is_empty());
        assert_eq!(
            pre_alt(&a, Letter(0), &pair(2, &[0, 1], &[1])).unwrap(),
            vec![pair(2, &[0, 1], &[]), pair(2, &[0, 1], &[0, 1])]
        );
    }

    #[test]
    fn pre_rejects_owing_outside_level() {
        let a = one_state(false, PosFormula::True);
        assert!(matches!(
            pre_alt(&a, Letter(0), &pair(1, &[], &[0])),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn one_state_emptiness() {
        let opts = FixOptions::default();
        assert!(!abw_empty(&one_state(true, PosFormula::State(StateId(0))), &opts).unwrap());
        assert!(abw_empty(&one_state(true, PosFormula::False), &opts).unwrap());
        assert!(abw_empty(&one_state(false, PosFormula::State(StateId(0))), &opts).unwrap());
        // `true` accepts every word: the run DAG has no infinite path
        assert!(!abw_empty(&one_state(false, PosFormula::True), &opts).unwrap());
    }
}
