//! Antichains: downward-closed sets represented by their maximal elements.

/// A pre-order on a domain of elements.
pub trait Preorder {
    /// `self ⪯ other`.
    fn leq(&self, other: &Self) -> bool;

    /// `(self ⪯ other, other ⪯ self)`.
    fn relate(&self, other: &Self) -> (bool, bool) {
        (self.leq(other), other.leq(self))
    }
}

/// The maximal elements of a downward-closed set.
///
/// Element order inside the container is unspecified. Two antichains denote
/// the same set iff each is [`below`](Antichain::below) the other; structural
/// equality is deliberately not provided.
#[derive(Debug, Clone)]
pub struct Antichain<E> {
    elems: Vec<E>,
}

impl<E> Default for Antichain<E> {
    fn default() -> Self {
        Antichain { elems: Vec::new() }
    }
}

impl<E: Preorder> Antichain<E> {
    pub fn new() -> Self {
        Antichain { elems: Vec::new() }
    }

    pub fn singleton(e: E) -> Self {
        Antichain { elems: vec![e] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.elems.iter()
    }

    pub fn into_vec(self) -> Vec<E> {
        self.elems
    }

    /// Whether `e` belongs to the closure.
    pub fn dominates(&self, e: &E) -> bool {
        self.elems.iter().any(|a| e.leq(a))
    }

    /// Adds `e` to the represented set. Returns whether the set grew.
    pub fn insert(&mut self, e: E) -> bool {
        let mut i = 0;
        let mut removed = false;
        while i < self.elems.len() {
            let (below, above) = e.relate(&self.elems[i]);
            if below {
                // an element below e and one above it would be comparable
                debug_assert!(!removed, "antichain invariant broken");
                return false;
            }
            if above {
                self.elems.swap_remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        self.elems.push(e);
        true
    }

    /// Adds every element of `other` and returns an antichain of the ones
    /// that were not already in the closure.
    pub fn absorb(&mut self, other: impl IntoIterator<Item = E>) -> Antichain<E>
    where
        E: Clone,
    {
        let mut fresh = Antichain::new();
        for e in other {
            if self.insert(e.clone()) {
                fresh.insert(e);
            }
        }
        fresh
    }

    pub fn union_with(&mut self, other: Antichain<E>) {
        for e in other.elems {
            self.insert(e);
        }
    }

    pub fn union(&self, other: &Antichain<E>) -> Antichain<E>
    where
        E: Clone,
    {
        let mut result = self.clone();
        for e in &other.elems {
            result.insert(e.clone());
        }
        result
    }

    /// Closure inclusion: every element of `self` is dominated by `other`.
    pub fn below(&self, other: &Antichain<E>) -> bool {
        self.elems.iter().all(|a| other.dominates(a))
    }

    /// Elements of `self` outside the closure of `other`.
    pub fn not_below(&self, other: &Antichain<E>) -> Antichain<E>
    where
        E: Clone,
    {
        self.filter(|e| !other.dominates(e))
    }

    /// Closure equality.
    pub fn equivalent(&self, other: &Antichain<E>) -> bool {
        self.below(other) && other.below(self)
    }

    /// Keeps the elements satisfying `keep`. Any subset of an antichain is an
    /// antichain, so no re-pruning is needed.
    pub fn filter(&self, mut keep: impl FnMut(&E) -> bool) -> Antichain<E>
    where
        E: Clone,
    {
        Antichain {
            elems: self.elems.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }
}

impl<E: Preorder> FromIterator<E> for Antichain<E> {
    fn from_iter<I: IntoIterator<Item = E>>(iter: I) -> Self {
        let mut ac = Antichain::new();
        for e in iter {
            ac.insert(e);
        }
        ac
    }
}

impl<E: Preorder> Extend<E> for Antichain<E> {
    fn extend<I: IntoIterator<Item = E>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

impl<'a, E> IntoIterator for &'a Antichain<E> {
    type Item = &'a E;
    type IntoIter = std::slice::Iter<'a, E>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl<E> IntoIterator for Antichain<E> {
    type Item = E;
    type IntoIter = std::vec::IntoIter<E>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Subsets of a five-element set under inclusion.
    #[derive(Debug, Clone, Copy, PartialEq)]
    struct Sub(u8);

    impl Preorder for Sub {
        fn leq(&self, other: &Self) -> bool {
            self.0 & !other.0 == 0
        }
    }

    #[test]
    fn insert_cases() {
        let a = Sub(0b011);
        let mut ac = Antichain::singleton(a);
        assert!(!ac.insert(a));
        assert_eq!(ac.len(), 1);
        assert!(!ac.insert(Sub(0b001)));
        assert_eq!(ac.len(), 1);
        assert!(ac.insert(Sub(0b100)));
        assert_eq!(ac.len(), 2);
        assert!(ac.insert(Sub(0b111)));
        assert_eq!(ac.len(), 1);
    }

    #[test]
    fn union_cases() {
        let x: Antichain<Sub> = [Sub(0b01), Sub(0b10)].into_iter().collect();
        assert!(x.union(&Antichain::new()).equivalent(&x));
        let u = Antichain::singleton(Sub(0b11)).union(&Antichain::singleton(Sub(0b01)));
        assert_eq!(u.len(), 1);
        assert_eq!(u.iter().next(), Some(&Sub(0b11)));
    }

    #[test]
    fn dominates_and_below() {
        let a = Sub(0b011);
        let empty: Antichain<Sub> = Antichain::new();
        assert!(!empty.dominates(&a));
        assert!(Antichain::singleton(a).dominates(&a));
        assert!(!Antichain::singleton(a).dominates(&Sub(0b100)));
        let x = Antichain::singleton(a);
        assert!(empty.below(&x));
        assert!(x.below(&x));
        assert!(!x.below(&Antichain::singleton(Sub(0b100))));
    }
}
