//! Language inclusion `L(A1) ⊆ L(A2)` as emptiness of the product of `A1`
//! with the implicit complement of `A2`.
//!
//! Product states pair a location of `A1` with a rank pair of `A2`. They are
//! ordered by equality on the first component and the complement's
//! simulation order on the second, so a product antichain is kept as one
//! rank-pair antichain per location of `A1`. The product accepts under the
//! generalized condition `{α₁ × Q₂, Loc₁ × α₂'}`.

use crate::antichain::{Antichain, Preorder};
use crate::automaton::{Letter, Nbw, StateId};
use crate::error::Error;
use crate::fixpoint::{gen_buchi_fix, FixOptions, GenBuchiDomain};
use crate::univ::{intersect_univ, leq_rank, pre_univ, RankPair, RankSpace, UnivDomain};

/// A product state `(ℓ₁, ⟨f_s, f_o⟩)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductElem {
    pub a1: StateId,
    pub rp: RankPair,
}

pub fn leq_inc(p: &ProductElem, q: &ProductElem) -> bool {
    p.a1 == q.a1 && leq_rank(&q.rp, &p.rp)
}

impl Preorder for ProductElem {
    fn leq(&self, other: &Self) -> bool {
        leq_inc(self, other)
    }
}

/// Product predecessors of `↓target` under `letter`: every `A1`-predecessor
/// of the location paired with every rank-pair predecessor.
pub fn pre_inc(
    a1: &Nbw,
    a2: &Nbw,
    space: &RankSpace,
    letter: Letter,
    target: &ProductElem,
) -> Result<Vec<ProductElem>, Error> {
    let rps = pre_univ(a2, space, letter, &target.rp)?;
    let mut result = Vec::new();
    for l1 in a1.states() {
        if a1.successors(l1, letter).contains(&target.a1) {
            result.extend(rps.iter().map(|rp| ProductElem { a1: l1, rp: rp.clone() }));
        }
    }
    Ok(result)
}

/// A product antichain, bucketed by the `A1` location.
#[derive(Debug, Clone)]
pub struct ProductSet {
    buckets: Vec<Antichain<RankPair>>,
}

impl ProductSet {
    fn empty(n: usize) -> ProductSet {
        ProductSet {
            buckets: vec![Antichain::new(); n],
        }
    }

    pub fn bucket(&self, a1: StateId) -> &Antichain<RankPair> {
        &self.buckets[a1.index()]
    }

    pub fn len(&self) -> usize {
        self.buckets.iter().map(Antichain::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.iter().all(Antichain::is_empty)
    }

    pub fn elements(&self) -> impl Iterator<Item = ProductElem> + '_ {
        self.buckets.iter().enumerate().flat_map(|(a1, bucket)| {
            bucket.iter().map(move |rp| ProductElem {
                a1: StateId(a1),
                rp: rp.clone(),
            })
        })
    }

    fn zip_with(&self, other: &ProductSet, f: impl Fn(&Antichain<RankPair>, &Antichain<RankPair>) -> Antichain<RankPair>) -> ProductSet {
        ProductSet {
            buckets: self
                .buckets
                .iter()
                .zip(other.buckets.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

/// The product of `A1` with the implicit complement of `A2`.
pub struct InclDomain<'a> {
    a1: &'a Nbw,
    a2: &'a Nbw,
    univ: UnivDomain<'a>,
    // pred[letter][ℓ'] = A1 locations with a letter-edge into ℓ'
    pred: Vec<Vec<Vec<StateId>>>,
}

impl<'a> InclDomain<'a> {
    /// Both automata must share the same alphabet, letter for letter.
    pub fn new(a1: &'a Nbw, a2: &'a Nbw) -> Result<Self, Error> {
        if a1.alphabet() != a2.alphabet() {
            return Err(Error::AlphabetMismatch {
                left: a1.alphabet().to_vec(),
                right: a2.alphabet().to_vec(),
            });
        }
        let mut pred = vec![vec![Vec::new(); a1.state_count()]; a1.letter_count()];
        for (s, letter, t) in a1.transitions() {
            pred[letter.index()][t.index()].push(s);
        }
        Ok(InclDomain {
            a1,
            a2,
            univ: UnivDomain::new(a2),
            pred,
        })
    }

    pub fn space(&self) -> &RankSpace {
        self.univ.space()
    }
}

impl GenBuchiDomain for InclDomain<'_> {
    type Set = ProductSet;

    fn empty(&self) -> ProductSet {
        ProductSet::empty(self.a1.state_count())
    }

    fn top(&self) -> ProductSet {
        ProductSet {
            buckets: vec![self.univ.top_set(); self.a1.state_count()],
        }
    }

    fn pre(&self, set: &ProductSet) -> ProductSet {
        let mut result = self.empty();
        let space = self.univ.space();
        for (target, bucket) in set.buckets.iter().enumerate() {
            for letter in self.a1.letters() {
                let preds = &self.pred[letter.index()][target];
                if preds.is_empty() || bucket.is_empty() {
                    continue;
                }
                for rp in bucket {
                    let rps = pre_univ(self.a2, space, letter, rp)
                        .expect("product antichains hold valid rank pairs");
                    for l1 in preds {
                        result.buckets[l1.index()].extend(rps.iter().cloned());
                    }
                }
            }
        }
        result
    }

    fn absorb_pre(&self, set: &mut ProductSet, from: &ProductSet) -> ProductSet {
        let mut fresh = self.empty();
        let space = self.univ.space();
        for (target, bucket) in from.buckets.iter().enumerate() {
            for letter in self.a1.letters() {
                let preds = &self.pred[letter.index()][target];
                if preds.is_empty() {
                    continue;
                }
                for rp in bucket {
                    let rps = pre_univ(self.a2, space, letter, rp)
                        .expect("product antichains hold valid rank pairs");
                    for l1 in preds {
                        for p in &rps {
                            if set.buckets[l1.index()].insert(p.clone()) {
                                fresh.buckets[l1.index()].insert(p.clone());
                            }
                        }
                    }
                }
            }
        }
        fresh
    }

    fn meet_beta1(&self, set: &ProductSet) -> ProductSet {
        ProductSet {
            buckets: set
                .buckets
                .iter()
                .enumerate()
                .map(|(a1, bucket)| {
                    if self.a1.is_accepting(StateId(a1)) {
                        bucket.clone()
                    } else {
                        Antichain::new()
                    }
                })
                .collect(),
        }
    }

    fn meet_beta2(&self, set: &ProductSet) -> ProductSet {
        ProductSet {
            buckets: set
                .buckets
                .iter()
                .map(|bucket| bucket.filter(RankPair::owes_nothing))
                .collect(),
        }
    }

    fn meet(&self, a: &ProductSet, b: &ProductSet) -> ProductSet {
        let space = self.univ.space();
        a.zip_with(b, |x, y| {
            let mut out = Antichain::new();
            let (inside, rest): (Vec<&RankPair>, Vec<&RankPair>) = y.iter().partition(|q| x.dominates(q));
            out.extend(inside.into_iter().cloned());
            for p in x {
                for &q in &rest {
                    if let Some(r) = intersect_univ(space, p, q) {
                        out.insert(r);
                    }
                }
            }
            out
        })
    }

    fn union(&self, a: &ProductSet, b: &ProductSet) -> ProductSet {
        a.zip_with(b, |x, y| x.union(y))
    }

    fn below(&self, a: &ProductSet, b: &ProductSet) -> bool {
        a.buckets
            .iter()
            .zip(b.buckets.iter())
            .all(|(x, y)| x.below(y))
    }

    fn absorb(&self, set: &mut ProductSet, add: ProductSet) -> ProductSet {
        ProductSet {
            buckets: set
                .buckets
                .iter_mut()
                .zip(add.buckets)
                .map(|(x, a)| x.absorb(a))
                .collect(),
        }
    }

    fn beta2_within_beta1(&self) -> bool {
        self.a1.states().all(|l| self.a1.is_accepting(l))
    }

    fn contains_initial(&self, set: &ProductSet) -> bool {
        self.univ.holds_initial(set.bucket(self.a1.initial()))
    }
}

/// Whether `L(a1) ⊆ L(a2)`.
pub fn is_included(a1: &Nbw, a2: &Nbw, opts: &FixOptions) -> Result<bool, Error> {
    let domain = InclDomain::new(a1, a2)?;
    Ok(!gen_buchi_fix(&domain, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::univ::is_universal;

    fn nbw(n: usize, acc: &[usize], edges: &[(usize, usize, usize)]) -> Nbw {
        Nbw::new(
            vec!["0".into(), "1".into()],
            n,
            StateId(0),
            acc.iter().map(|&s| StateId(s)),
            edges.iter().map(|&(s, l, t)| (StateId(s), Letter(l), StateId(t))),
        )
        .unwrap()
    }

    fn universal() -> Nbw {
        nbw(1, &[0], &[(0, 0, 0), (0, 1, 0)])
    }

    #[test]
    fn order_cases() {
        let a = universal();
        let space = RankSpace::new(&a);
        let zero = space.pair(space.zero(), space.zero()).unwrap();
        let p = ProductElem { a1: StateId(0), rp: zero.clone() };
        assert!(leq_inc(&p, &p));
        assert!(!leq_inc(&p, &ProductElem { a1: StateId(1), rp: zero }));
    }

    #[test]
    fn pre_cross_product() {
        let a1 = nbw(2, &[], &[(0, 0, 1)]);
        let a2 = universal();
        let space = RankSpace::new(&a2);
        let rp = space.pair(space.zero(), space.empty_fn()).unwrap();
        let unreachable = ProductElem { a1: StateId(0), rp: rp.clone() };
        assert!(pre_inc(&a1, &a2, &space, Letter(0), &unreachable).unwrap().is_empty());
        let target = ProductElem { a1: StateId(1), rp: rp.clone() };
        let got = pre_inc(&a1, &a2, &space, Letter(0), &target).unwrap();
        let rps = pre_univ(&a2, &space, Letter(0), &rp).unwrap();
        assert_eq!(got.len(), rps.len());
        assert!(got.iter().all(|e| e.a1 == StateId(0)));
    }

    #[test]
    fn simple_inclusions() {
        let opts = FixOptions::default();
        let u = universal();
        let b = nbw(2, &[1], &[(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 1), (1, 1, 0)]);
        let empty_lang = nbw(2, &[], &[(0, 0, 1), (1, 1, 0)]);
        assert!(is_included(&b, &b, &opts).unwrap());
        assert!(is_included(&u, &u, &opts).unwrap());
        assert!(is_included(&b, &u, &opts).unwrap());
        assert!(!is_included(&u, &b, &opts).unwrap());
        assert!(is_included(&empty_lang, &b, &opts).unwrap());
        assert_eq!(
            is_included(&u, &b, &opts).unwrap(),
            is_universal(&b, &opts).unwrap()
        );
    }

    #[test]
    fn alphabet_mismatch() {
        let a = universal();
        let b = Nbw::new(vec!["x".into(), "y".into()], 1, StateId(0), [], []).unwrap();
        assert!(matches!(
            is_included(&a, &b, &FixOptions::default()),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
