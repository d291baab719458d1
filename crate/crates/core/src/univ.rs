//! Universality of NBW through the implicit rank-based complement.
//!
//! A state `⟨s, o⟩` of the complement is a pair of sets of ranked locations.
//! Only the minimal rank of each location matters for the simulation order on
//! those states, so every equivalence class is represented by a pair of
//! characteristic functions `⟨f_s, f_o⟩` mapping each location to its
//! minimal rank. Smaller functions denote larger classes: `⟨f, g⟩` stands for
//! every `⟨s, o⟩` with `f ≤ f_s`, `g ≤ f_o`, and `o = ∅` exactly when
//! `g = f_∅`.
//!
//! Ranks live in `[0, k]` with `k = 2(|Loc| − |α|)`; the value `k + 1`
//! ([`RankSpace::top`]) stands for every value above `k`, including the
//! infimum of an empty set. Accepting locations never carry odd ranks.

use std::fmt;

use smallvec::{smallvec, SmallVec};

use crate::antichain::{Antichain, Preorder};
use crate::automaton::{Letter, Nbw, StateId, StateSet};
use crate::error::{Error, Timeout};
use crate::fixpoint::{buchi_fix, BuchiDomain, FixOptions};

/// A characteristic function: the minimal rank of each location.
///
/// Values are packed into 64-bit words, in 8-bit lanes when every value is
/// below 128 and 16-bit lanes otherwise. The top bit of each lane stays
/// clear, so one subtraction per word compares all of its lanes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankFn {
    words: SmallVec<[u64; 4]>,
    len: usize,
    wide: bool,
}

const HIGH8: u64 = 0x8080_8080_8080_8080;
const HIGH16: u64 = 0x8000_8000_8000_8000;

impl RankFn {
    fn from_values(values: &[u16], top: u16) -> RankFn {
        let wide = top > 127;
        let lanes = if wide { 4 } else { 8 };
        let bits = 64 / lanes;
        let mut words: SmallVec<[u64; 4]> = smallvec![0; values.len().div_ceil(lanes)];
        for (i, &v) in values.iter().enumerate() {
            words[i / lanes] |= (v as u64) << ((i % lanes) * bits);
        }
        RankFn {
            words,
            len: values.len(),
            wide,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, s: StateId) -> u16 {
        let i = s.index();
        assert!(i < self.len, "state {} out of range", i);
        if self.wide {
            (self.words[i / 4] >> ((i % 4) * 16)) as u16
        } else {
            (self.words[i / 8] >> ((i % 8) * 8)) as u8 as u16
        }
    }

    pub fn values(&self) -> Vec<u16> {
        (0..self.len).map(|i| self.get(StateId(i))).collect()
    }

    /// Pointwise `self ≤ other`.
    #[inline]
    pub fn le(&self, other: &RankFn) -> bool {
        self.relate(other).0
    }

    /// `(self ≤ other, other ≤ self)`, pointwise.
    #[inline]
    fn relate(&self, other: &RankFn) -> (bool, bool) {
        assert!(
            self.len == other.len && self.wide == other.wide,
            "rank functions of different automata"
        );
        let high = if self.wide { HIGH16 } else { HIGH8 };
        let (mut le, mut ge) = (true, true);
        for (&a, &b) in self.words.iter().zip(other.words.iter()) {
            // a lane keeps its high bit iff nothing borrowed, i.e. b ≥ a there
            le &= ((b | high) - a) & high == high;
            ge &= ((a | high) - b) & high == high;
        }
        (le, ge)
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &RankFn) -> RankFn {
        assert!(
            self.len == other.len && self.wide == other.wide,
            "rank functions of different automata"
        );
        let (high, bits) = if self.wide { (HIGH16, 16) } else { (HIGH8, 8) };
        let lane_ones = (1u64 << bits) - 1;
        let words: SmallVec<[u64; 4]> = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| {
                let b_ge = (((b | high) - a) & high) >> (bits - 1);
                let mask = b_ge * lane_ones;
                (b & mask) | (a & !mask)
            })
            .collect();
        RankFn {
            words,
            len: self.len,
            wide: self.wide,
        }
    }
}

/// A pair `⟨f_s, f_o⟩` of characteristic functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankPair {
    pub fs: RankFn,
    pub fo: RankFn,
    // fo == f_∅
    owes_nothing: bool,
}

impl RankPair {
    /// Whether the owing component is `f_∅`, i.e. the pair stands for
    /// states with `o = ∅`.
    pub fn owes_nothing(&self) -> bool {
        self.owes_nothing
    }
}

/// `p ≤ q`: pointwise on both components, and both or neither owing
/// component is `f_∅`. Equivalently `⟦q⟧ ⊆ ⟦p⟧`.
pub fn leq_rank(p: &RankPair, q: &RankPair) -> bool {
    p.owes_nothing == q.owes_nothing && p.fs.le(&q.fs) && p.fo.le(&q.fo)
}

/// The simulation order of the complement, read on representatives:
/// `p ⪯ q` iff `q`'s functions are pointwise below `p`'s.
impl Preorder for RankPair {
    #[inline]
    fn leq(&self, other: &Self) -> bool {
        leq_rank(other, self)
    }

    #[inline]
    fn relate(&self, other: &Self) -> (bool, bool) {
        if self.owes_nothing != other.owes_nothing {
            return (false, false);
        }
        let (s_le, s_ge) = self.fs.relate(&other.fs);
        if !s_le && !s_ge {
            return (false, false);
        }
        let (o_le, o_ge) = self.fo.relate(&other.fo);
        // reversed: smaller functions denote larger classes
        (s_ge && o_ge, s_le && o_le)
    }
}

/// Shape of the rank domain of one NBW.
#[derive(Debug, Clone)]
pub struct RankSpace {
    state_count: usize,
    k: u16,
    accepting: StateSet,
    empty_fn: RankFn,
}

impl RankSpace {
    pub fn new(nbw: &Nbw) -> RankSpace {
        let n = nbw.state_count();
        let m = nbw.accepting().count_ones(..);
        let k = 2 * (n - m);
        assert!(k < i16::MAX as usize, "automaton too large for rank domain");
        let top = k as u16 + 1;
        RankSpace {
            state_count: n,
            k: k as u16,
            accepting: nbw.accepting().clone(),
            empty_fn: RankFn::from_values(&vec![top; n], top),
        }
    }

    /// `2(|Loc| − |α|)`.
    pub fn k(&self) -> u16 {
        self.k
    }

    /// The canonical value standing for every rank above `k`.
    pub fn top(&self) -> u16 {
        self.k + 1
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    fn constant(&self, value: u16) -> RankFn {
        RankFn::from_values(&vec![value; self.state_count], self.top())
    }

    /// The all-zero function.
    pub fn zero(&self) -> RankFn {
        self.constant(0)
    }

    /// `f_∅`, the characteristic function of the empty set.
    pub fn empty_fn(&self) -> RankFn {
        self.empty_fn.clone()
    }

    pub fn is_empty_fn(&self, f: &RankFn) -> bool {
        *f == self.empty_fn
    }

    /// Builds a function from explicit values, checking range and parity.
    pub fn rank_fn(&self, values: &[u16]) -> Result<RankFn, Error> {
        if values.len() != self.state_count {
            return Err(Error::InvalidElement(format!(
                "rank function has {} entries, expected {}",
                values.len(),
                self.state_count
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v > self.top()) {
            return Err(Error::InvalidElement(format!("rank {} exceeds {}", v, self.top())));
        }
        let f = RankFn::from_values(values, self.top());
        self.check_fn(&f)?;
        Ok(f)
    }

    /// `f_s(ℓ) = inf {n | (ℓ, n) ∈ s}`, with the top value where `ℓ` is absent.
    pub fn to_char(&self, ranked: &[(StateId, u16)]) -> Result<RankFn, Error> {
        let mut values = vec![self.top(); self.state_count];
        for &(s, n) in ranked {
            if s.index() >= self.state_count {
                return Err(Error::InvalidElement(format!("state {} out of range", s)));
            }
            if n > self.k {
                return Err(Error::InvalidElement(format!(
                    "rank {} of state {} exceeds k = {}",
                    n, s, self.k
                )));
            }
            if self.accepting.contains(s.index()) && n % 2 == 1 {
                return Err(Error::InvalidElement(format!(
                    "odd rank {} on accepting state {}",
                    n, s
                )));
            }
            let slot = &mut values[s.index()];
            *slot = (*slot).min(n);
        }
        Ok(RankFn::from_values(&values, self.top()))
    }

    /// Builds a pair, checking `fs ≤ fo` and the parity constraint.
    pub fn pair(&self, fs: RankFn, fo: RankFn) -> Result<RankPair, Error> {
        self.check_fn(&fs)?;
        self.check_fn(&fo)?;
        if !fs.le(&fo) {
            return Err(Error::InvalidElement(
                "level function is not pointwise below owing function".to_string(),
            ));
        }
        Ok(self.pair_unchecked(fs, fo))
    }

    fn pair_unchecked(&self, fs: RankFn, fo: RankFn) -> RankPair {
        let owes_nothing = self.is_empty_fn(&fo);
        RankPair {
            fs,
            fo,
            owes_nothing,
        }
    }

    fn check_fn(&self, f: &RankFn) -> Result<(), Error> {
        if f.len() != self.state_count {
            return Err(Error::InvalidElement(format!(
                "rank function has {} entries, expected {}",
                f.len(),
                self.state_count
            )));
        }
        let top = self.top();
        for i in 0..self.state_count {
            let v = f.get(StateId(i));
            if v > top {
                return Err(Error::InvalidElement(format!("rank {} of state {} exceeds {}", v, i, top)));
            }
            if self.accepting.contains(i) && v % 2 == 1 && v != top {
                return Err(Error::InvalidElement(format!("odd rank {} on accepting state {}", v, i)));
            }
        }
        Ok(())
    }

    /// Whether `p` satisfies every pair invariant of this space.
    pub fn is_valid(&self, p: &RankPair) -> bool {
        self.check_fn(&p.fs).is_ok()
            && self.check_fn(&p.fo).is_ok()
            && p.fs.le(&p.fo)
            && p.owes_nothing == self.is_empty_fn(&p.fo)
    }

    /// Least odd value `≥ n`, saturating at the top value.
    #[inline]
    fn ceil_odd(&self, n: u16) -> u16 {
        (n | 1).min(self.top())
    }

    /// Least even value `≥ n`, or the top value when that exceeds `k`.
    #[inline]
    fn ceil_even(&self, n: u16) -> u16 {
        let e = n + (n & 1);
        if e > self.k {
            self.top()
        } else {
            e
        }
    }
}

/// The representative of `⟦p1⟧ ∩ ⟦p2⟧`, or `None` when the intersection is
/// empty. Pairs from different strata (`f_∅` or not) never intersect.
pub fn intersect_univ(space: &RankSpace, p1: &RankPair, p2: &RankPair) -> Option<RankPair> {
    match (p1.owes_nothing, p2.owes_nothing) {
        (true, true) => Some(space.pair_unchecked(p1.fs.max(&p2.fs), p1.fo.clone())),
        (false, false) => {
            let fo = p1.fo.max(&p2.fo);
            if space.is_empty_fn(&fo) {
                None
            } else {
                Some(space.pair_unchecked(p1.fs.max(&p2.fs), fo))
            }
        }
        _ => None,
    }
}

/// `≤`-minimal elements of `l1 ∪ l2`.
pub fn min_union(l1: &Antichain<RankPair>, l2: &Antichain<RankPair>) -> Antichain<RankPair> {
    l1.union(l2)
}

/// Representatives of the `letter`-predecessors of `⟦target⟧`: at most two
/// pairs, one with `f_∅` as owing component.
pub fn pre_univ(
    nbw: &Nbw,
    space: &RankSpace,
    letter: Letter,
    target: &RankPair,
) -> Result<Vec<RankPair>, Error> {
    if !space.is_valid(target) {
        return Err(Error::InvalidElement(
            "target pair violates the rank pair invariants".to_string(),
        ));
    }
    Ok(pre_univ_unchecked(nbw, space, letter, target, &mut Vec::new()))
}

fn pre_univ_unchecked(
    nbw: &Nbw,
    space: &RankSpace,
    letter: Letter,
    target: &RankPair,
    buf: &mut Vec<u16>,
) -> Vec<RankPair> {
    let n = space.state_count;
    let k = space.k;
    let accepting = &space.accepting;

    buf.clear();
    buf.resize(n, 0);
    let mut owes = false;
    for (l, slot) in buf.iter_mut().enumerate() {
        let mut fo = 0;
        for &t in nbw.successors(StateId(l), letter) {
            let v = if accepting.contains(t.index()) {
                target.fo.get(t)
            } else {
                target.fo.get(t).min(space.ceil_odd(target.fs.get(t)))
            };
            fo = fo.max(v);
        }
        if accepting.contains(l) {
            fo = space.ceil_even(fo);
        }
        owes |= fo <= k;
        *slot = fo;
    }
    let fo = RankFn::from_values(buf, space.top());

    let mut result = Vec::with_capacity(2);
    if owes {
        for (l, slot) in buf.iter_mut().enumerate() {
            let mut fs = 0;
            for &t in nbw.successors(StateId(l), letter) {
                fs = fs.max(target.fs.get(t));
            }
            if accepting.contains(l) {
                fs = space.ceil_even(fs);
            }
            *slot = fs;
        }
        let fs = RankFn::from_values(buf, space.top());
        result.push(space.pair_unchecked(fo.clone(), space.empty_fn()));
        result.push(space.pair_unchecked(fs, fo));
    } else {
        result.push(space.pair_unchecked(fo, space.empty_fn()));
    }
    debug_assert!(
        result.iter().all(|p| space.is_valid(p)),
        "predecessor pair violates rank pair invariants"
    );
    result
}

/// The implicit complement of an NBW as an antichain domain.
pub struct UnivDomain<'a> {
    nbw: &'a Nbw,
    space: RankSpace,
}

impl<'a> UnivDomain<'a> {
    pub fn new(nbw: &'a Nbw) -> Self {
        UnivDomain {
            nbw,
            space: RankSpace::new(nbw),
        }
    }

    pub fn space(&self) -> &RankSpace {
        &self.space
    }

    /// `{⟨0, 0⟩, ⟨0, f_∅⟩}`: the whole state space of the complement.
    pub fn top_set(&self) -> Antichain<RankPair> {
        let zero = self.space.zero();
        [
            self.space.pair_unchecked(zero.clone(), zero.clone()),
            self.space.pair_unchecked(zero, self.space.empty_fn()),
        ]
        .into_iter()
        .collect()
    }

    /// Predecessors of a set over every letter, merged into `into`.
    pub fn pre_into(&self, set: &Antichain<RankPair>, into: &mut Antichain<RankPair>) {
        let mut buf = Vec::with_capacity(self.space.state_count);
        for pair in set {
            for letter in self.nbw.letters() {
                into.extend(pre_univ_unchecked(self.nbw, &self.space, letter, pair, &mut buf));
            }
        }
    }

    /// Whether the closure holds the initial state `⟨{(ι, k)}, ∅⟩`.
    pub fn holds_initial(&self, set: &Antichain<RankPair>) -> bool {
        let init = self.nbw.initial();
        set.iter()
            .any(|p| p.owes_nothing && p.fs.get(init) <= self.space.k)
    }
}

impl BuchiDomain for UnivDomain<'_> {
    type Set = Antichain<RankPair>;

    fn empty(&self) -> Self::Set {
        Antichain::new()
    }

    fn top(&self) -> Self::Set {
        self.top_set()
    }

    fn pre(&self, set: &Self::Set) -> Self::Set {
        let mut result = Antichain::new();
        self.pre_into(set, &mut result);
        result
    }

    fn meet_alpha(&self, set: &Self::Set) -> Self::Set {
        set.filter(RankPair::owes_nothing)
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

    fn absorb_pre(&self, set: &mut Self::Set, from: &Self::Set) -> Self::Set {
        let mut fresh = Antichain::new();
        let mut buf = Vec::with_capacity(self.space.state_count);
        for pair in from {
            for letter in self.nbw.letters() {
                for p in pre_univ_unchecked(self.nbw, &self.space, letter, pair, &mut buf) {
                    if set.insert(p.clone()) {
                        fresh.insert(p);
                    }
                }
            }
        }
        fresh
    }

    fn contains_initial(&self, set: &Self::Set) -> bool {
        self.holds_initial(set)
    }
}

/// Whether `L(nbw) = Σ^ω`: the implicit complement is empty.
pub fn is_universal(nbw: &Nbw, opts: &FixOptions) -> Result<bool, Timeout> {
    buchi_fix(&UnivDomain::new(nbw), opts).map(|nonempty| !nonempty)
}

impl fmt::Display for RankFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RankPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.fs, self.fo)
    }
}
