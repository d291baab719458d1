//! Explicit reference implementations, for cross-checking the antichain
//! algorithms on small automata.
//!
//! Everything here builds state spaces by plain enumeration: the rank-based
//! complement KV, the breakpoint construction MH, their composition KVMH, and
//! the classical fixed points over explicit state sets. Sizes are bounded by
//! a caller-supplied cap on the number of explicit states.

use std::collections::{HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::alt::MhPair;
use crate::automaton::{Abw, Letter, Nbw, PosFormula, StateId, StateSet};
use crate::error::Error;
use crate::univ::RankPair;

/// Default cap on explicit state spaces.
pub const DEFAULT_CAP: usize = 1 << 20;

fn cap_check(needed: u128, cap: usize) -> Result<(), Error> {
    if needed > cap as u128 {
        Err(Error::CapExceeded {
            needed,
            cap: cap as u128,
        })
    } else {
        Ok(())
    }
}

fn set_from_mask(n: usize, mask: u64) -> StateSet {
    let mut s = StateSet::with_capacity(n);
    for i in 0..n {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

fn mask_from_set(s: &StateSet) -> u64 {
    s.ones().fold(0, |m, i| m | 1 << i)
}

fn eval_mask(f: &PosFormula, mask: u64) -> bool {
    match f {
        PosFormula::True => true,
        PosFormula::False => false,
        PosFormula::State(s) => mask >> s.index() & 1 == 1,
        PosFormula::And(cs) => cs.iter().all(|c| eval_mask(c, mask)),
        PosFormula::Or(cs) => cs.iter().any(|c| eval_mask(c, mask)),
    }
}

/// Submasks of `mask`, including `0` and `mask` itself.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

// ---------------------------------------------------------------------------
// classical emptiness

/// An explicit transition system given by its predecessor relation.
pub trait Explicit {
    fn size(&self) -> usize;
    fn initial(&self) -> usize;
    /// Calls `f` on every predecessor of `t` under any letter.
    fn for_each_pred(&self, t: usize, f: &mut dyn FnMut(usize));
}

/// An NBW with predecessor lists over all letters.
pub struct ExplicitNbw<'a> {
    nbw: &'a Nbw,
    preds: Vec<Vec<usize>>,
}

impl<'a> ExplicitNbw<'a> {
    pub fn new(nbw: &'a Nbw) -> Self {
        let mut preds = vec![Vec::new(); nbw.state_count()];
        for (s, _, t) in nbw.transitions() {
            preds[t.index()].push(s.index());
        }
        ExplicitNbw { nbw, preds }
    }
}

impl Explicit for ExplicitNbw<'_> {
    fn size(&self) -> usize {
        self.nbw.state_count()
    }
    fn initial(&self) -> usize {
        self.nbw.initial().index()
    }
    fn for_each_pred(&self, t: usize, f: &mut dyn FnMut(usize)) {
        self.preds[t].iter().for_each(|&p| f(p));
    }
}

fn full_set(n: usize) -> StateSet {
    let mut s = StateSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// `Pre(x)` over any letter.
fn pre_explicit(sys: &dyn Explicit, x: &StateSet) -> StateSet {
    let mut out = StateSet::with_capacity(sys.size());
    for t in x.ones() {
        sys.for_each_pred(t, &mut |p| out.insert(p));
    }
    out
}

/// `μx. Pre(x) ∪ seed`, by backward search from the seed.
fn backward_closure(sys: &dyn Explicit, seed: &StateSet) -> StateSet {
    let mut x = seed.clone();
    let mut queue: VecDeque<usize> = seed.ones().collect();
    while let Some(t) = queue.pop_front() {
        sys.for_each_pred(t, &mut |p| {
            if !x.put(p) {
                queue.push_back(p);
            }
        });
    }
    x
}

/// Evaluates `νy. μx. Pre(x) ∪ (Pre(y) ∩ β₁) ∩ … ∩ μx. Pre(x) ∪ (Pre(y) ∩ βₖ)`.
fn generalized_fix(sys: &dyn Explicit, betas: &[&StateSet]) -> StateSet {
    let mut y = full_set(sys.size());
    loop {
        let pre_y = pre_explicit(sys, &y);
        let mut next = full_set(sys.size());
        for beta in betas {
            let mut seed = pre_y.clone();
            seed.intersect_with(beta);
            next.intersect_with(&backward_closure(sys, &seed));
        }
        if next == y {
            return y;
        }
        y = next;
    }
}

/// Büchi emptiness of an explicit system with accepting set `alpha`.
pub fn classical_empty_of(sys: &dyn Explicit, alpha: &StateSet) -> bool {
    !generalized_fix(sys, &[alpha]).contains(sys.initial())
}

/// Generalized Büchi emptiness with two accepting sets.
pub fn classical_empty_gen_of(sys: &dyn Explicit, beta1: &StateSet, beta2: &StateSet) -> bool {
    !generalized_fix(sys, &[beta1, beta2]).contains(sys.initial())
}

/// `L(nbw) = ∅`, by evaluating the Büchi fixed point on explicit state sets.
pub fn classical_empty(nbw: &Nbw) -> bool {
    classical_empty_of(&ExplicitNbw::new(nbw), nbw.accepting())
}

/// Emptiness of `nbw` under the generalized condition `{β₁, β₂}`.
pub fn classical_empty_gen(nbw: &Nbw, beta1: &StateSet, beta2: &StateSet) -> bool {
    classical_empty_gen_of(&ExplicitNbw::new(nbw), beta1, beta2)
}

/// `L(nbw) = ∅` by searching for a reachable cycle through an accepting state.
pub fn scc_empty(nbw: &Nbw) -> bool {
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<NodeIndex> = nbw.states().map(|s| g.add_node(s.index())).collect();
    for (s, _, t) in nbw.transitions() {
        g.update_edge(nodes[s.index()], nodes[t.index()], ());
    }
    let reach = forward_reach(&g, &[nodes[nbw.initial().index()]]);
    !accepting_cycle(&g, &reach, |v| nbw.is_accepting(StateId(g[v])))
}

fn forward_reach<N>(g: &DiGraph<N, ()>, from: &[NodeIndex]) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    let mut stack: Vec<NodeIndex> = from.to_vec();
    for v in from {
        seen[v.index()] = true;
    }
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn accepting_cycle<N>(
    g: &DiGraph<N, ()>,
    reach: &[bool],
    accepting: impl Fn(NodeIndex) -> bool,
) -> bool {
    tarjan_scc(g).iter().any(|scc| {
        let cyclic = scc.len() > 1 || g.contains_edge(scc[0], scc[0]);
        cyclic && reach[scc[0].index()] && scc.iter().any(|&v| accepting(v))
    })
}

// ---------------------------------------------------------------------------
// lassos

/// The ultimately periodic word `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl Lasso {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> Lasso {
        assert!(!period.is_empty(), "lasso period must be nonempty");
        Lasso { prefix, period }
    }
}

fn after_prefix(nbw: &Nbw, prefix: &[Letter]) -> StateSet {
    let mut cur = StateSet::with_capacity(nbw.state_count());
    cur.insert(nbw.initial().index());
    for &a in prefix {
        let mut next = StateSet::with_capacity(nbw.state_count());
        for s in cur.ones() {
            for t in nbw.successors(StateId(s), a) {
                next.insert(t.index());
            }
        }
        cur = next;
    }
    cur
}

/// Whether `nbw` accepts the lasso word: some node of the unrolled
/// `(state, period position)` graph reachable after the prefix lies on a
/// cycle through an accepting state.
pub fn member_lasso(nbw: &Nbw, w: &Lasso) -> bool {
    let n = nbw.state_count();
    let p = w.period.len();
    let start = after_prefix(nbw, &w.prefix);
    let mut g = DiGraph::<(usize, usize), ()>::with_capacity(n * p, 0);
    for i in 0..p {
        for s in 0..n {
            g.add_node((s, i));
        }
    }
    let node = |s: usize, i: usize| NodeIndex::new(i * n + s);
    for (i, &a) in w.period.iter().enumerate() {
        for s in 0..n {
            for t in nbw.successors(StateId(s), a) {
                g.add_edge(node(s, i), node(t.index(), (i + 1) % p), ());
            }
        }
    }
    let from: Vec<NodeIndex> = start.ones().map(|s| node(s, 0)).collect();
    let reach = forward_reach(&g, &from);
    accepting_cycle(&g, &reach, |v| nbw.is_accepting(StateId(g[v].0)))
}

/// Lasso membership through period summaries: `q →(b) q'` when reading the
/// whole period from `q` can end in `q'`, with `b` set if some run doing so
/// enters an accepting state. The word is accepted iff a summary edge marked
/// `b` lies on a summary cycle reachable from the post-prefix states.
pub fn member_lasso_by_summaries(nbw: &Nbw, w: &Lasso) -> bool {
    let n = nbw.state_count();
    // summary[q] = (plain reach, reach through an accepting visit)
    let summary: Vec<(StateSet, StateSet)> = (0..n)
        .map(|q| {
            let mut plain = StateSet::with_capacity(n);
            let mut marked = StateSet::with_capacity(n);
            plain.insert(q);
            for &a in &w.period {
                let mut np = StateSet::with_capacity(n);
                let mut nm = StateSet::with_capacity(n);
                for s in plain.ones() {
                    for t in nbw.successors(StateId(s), a) {
                        if nbw.is_accepting(*t) {
                            nm.insert(t.index());
                        } else {
                            np.insert(t.index());
                        }
                    }
                }
                for s in marked.ones() {
                    for t in nbw.successors(StateId(s), a) {
                        nm.insert(t.index());
                    }
                }
                np.difference_with(&nm);
                plain = np;
                marked = nm;
            }
            let mut all = plain;
            all.union_with(&marked);
            (all, marked)
        })
        .collect();

    let reach_from = |from: &StateSet| {
        let mut seen = from.clone();
        let mut stack: Vec<usize> = from.ones().collect();
        while let Some(q) = stack.pop() {
            for t in summary[q].0.ones() {
                if !seen.put(t) {
                    stack.push(t);
                }
            }
        }
        seen
    };
    let reachable = reach_from(&after_prefix(nbw, &w.prefix));
    for q in reachable.ones() {
        for t in summary[q].1.ones() {
            let mut single = StateSet::with_capacity(n);
            single.insert(t);
            if reach_from(&single).contains(q) {
                return true;
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// KV

/// Index of the KV state `(ℓ, i)` for ranks `0..=k`.
pub fn kv_state(l: StateId, i: usize, k: usize) -> StateId {
    StateId(l.index() * (k + 1) + i)
}

/// The rank-based complement of an NBW as an explicit ABW.
pub fn kv(nbw: &Nbw, k: usize) -> Result<Abw, Error> {
    if k % 2 == 1 {
        return Err(Error::InvalidElement(format!("rank bound {} is odd", k)));
    }
    let n = nbw.state_count();
    let mut transitions = Vec::new();
    for l in nbw.states() {
        for i in 0..=k {
            for a in nbw.letters() {
                let formula = if nbw.is_accepting(l) && i % 2 == 1 {
                    PosFormula::False
                } else {
                    PosFormula::all_of(nbw.successors(l, a).iter().map(|&t| {
                        PosFormula::any_of((0..=i).rev().map(|j| kv_state(t, j, k)))
                    }))
                };
                transitions.push((kv_state(l, i, k), a, formula));
            }
        }
    }
    let accepting = nbw
        .states()
        .flat_map(|l| (1..=k).step_by(2).map(move |i| kv_state(l, i, k)));
    Ok(Abw::new(
        nbw.alphabet().to_vec(),
        n * (k + 1),
        kv_state(nbw.initial(), k, k),
        accepting,
        transitions,
    )?)
}

// ---------------------------------------------------------------------------
// MH

/// The breakpoint automaton restricted to states reachable from `⟨{ι}, ∅⟩`,
/// with the pair behind each explicit state.
#[derive(Debug, Clone)]
pub struct Mh {
    pub nbw: Nbw,
    pub pairs: Vec<MhPair>,
}

/// Targets of `⟨s, o⟩` under `letter`, as `(s', o' ∖ α)` masks.
fn mh_successors(abw: &Abw, letter: Letter, s: u64, o: u64, alpha: u64) -> Vec<(u64, u64)> {
    let n = abw.state_count();
    let conj = |set: u64, y: u64| {
        (0..n)
            .filter(|&l| set >> l & 1 == 1)
            .all(|l| eval_mask(abw.transition(StateId(l), letter), y))
    };
    let mut out = Vec::new();
    for s2 in 0..(1u64 << n) {
        if !conj(s, s2) {
            continue;
        }
        if o == 0 {
            out.push((s2, s2 & !alpha));
        } else {
            for o2 in submasks(s2) {
                if conj(o, o2) {
                    out.push((s2, o2 & !alpha));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn mh(abw: &Abw, cap: usize) -> Result<Mh, Error> {
    let n = abw.state_count();
    if n > 20 {
        return Err(Error::CapExceeded {
            needed: 1u128 << (2 * n),
            cap: cap as u128,
        });
    }
    let alpha = mask_from_set(abw.accepting());
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut order = vec![(1u64 << abw.initial().index(), 0u64)];
    index.insert(order[0], 0);
    let mut transitions = Vec::new();
    let mut next = 0;
    while next < order.len() {
        let (s, o) = order[next];
        for a in abw.letters() {
            for target in mh_successors(abw, a, s, o, alpha) {
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = order.len();
                        cap_check(id as u128 + 1, cap)?;
                        index.insert(target, id);
                        order.push(target);
                        id
                    }
                };
                transitions.push((StateId(next), a, StateId(id)));
            }
        }
        next += 1;
    }
    let accepting = order
        .iter()
        .enumerate()
        .filter(|(_, &(_, o))| o == 0)
        .map(|(i, _)| StateId(i));
    let nbw = Nbw::new(abw.alphabet().to_vec(), order.len(), StateId(0), accepting, transitions)?;
    let pairs = order
        .into_iter()
        .map(|(s, o)| MhPair::new(set_from_mask(n, s), set_from_mask(n, o)))
        .collect();
    Ok(Mh { nbw, pairs })
}

/// `L(abw) = ∅` through the explicit breakpoint automaton.
pub fn abw_empty_oracle(abw: &Abw, cap: usize) -> Result<bool, Error> {
    Ok(classical_empty(&mh(abw, cap)?.nbw))
}

fn leq_alt_mask(p: (u64, u64), q: (u64, u64)) -> bool {
    (p.1 == 0) == (q.1 == 0) && p.0 & !q.0 == 0 && p.1 & !q.1 == 0
}

/// Every breakpoint state `⟨s, o⟩` with `o ⊆ s` that has a `letter`-successor
/// in `↓target`, as `(s, o)` masks.
pub fn brute_pre_alt(abw: &Abw, letter: Letter, target: &MhPair, cap: usize) -> Result<Vec<(u64, u64)>, Error> {
    let n = abw.state_count();
    cap_check(3u128.pow(n as u32), cap)?;
    let alpha = mask_from_set(abw.accepting());
    let t = (mask_from_set(&target.s), mask_from_set(&target.o));
    let mut out = Vec::new();
    for s in 0..(1u64 << n) {
        for o in submasks(s) {
            if mh_successors(abw, letter, s, o, alpha)
                .into_iter()
                .any(|q| leq_alt_mask(q, t))
            {
                out.push((s, o));
            }
        }
    }
    Ok(out)
}

/// `↓pairs` restricted to pairs with `o ⊆ s`, as masks.
pub fn alt_closure(n: usize, pairs: &[MhPair]) -> Vec<(u64, u64)> {
    let maxima: Vec<(u64, u64)> = pairs
        .iter()
        .map(|p| (mask_from_set(&p.s), mask_from_set(&p.o)))
        .collect();
    let mut out = Vec::new();
    for s in 0..(1u64 << n) {
        for o in submasks(s) {
            if maxima.iter().any(|&m| leq_alt_mask((s, o), m)) {
                out.push((s, o));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// KVMH

/// The explicit complement `KVMH(A, k)` over pairs `⟨s, o⟩` with `o ⊆ s`.
#[derive(Debug, Clone)]
pub struct Kvmh {
    pub nbw: Nbw,
    /// Ranked locations `(ℓ, n)`, `n ≤ k`, without odd ranks on accepting ℓ.
    /// Bit `i` of a state mask stands for `elements[i]`.
    pub elements: Vec<(StateId, u16)>,
    /// `(s, o)` masks of each explicit state.
    pub states: Vec<(u32, u32)>,
    pub k: u16,
}

impl Kvmh {
    /// `f(ℓ) = min {n | (ℓ, n) ∈ set}`, `None` where absent.
    pub fn char_fn(&self, set: u32, state_count: usize) -> Vec<Option<u16>> {
        let mut f = vec![None; state_count];
        for (i, &(l, r)) in self.elements.iter().enumerate() {
            if set >> i & 1 == 1 {
                let slot: &mut Option<u16> = &mut f[l.index()];
                *slot = Some(slot.map_or(r, |v| v.min(r)));
            }
        }
        f
    }

    /// Whether the explicit state `⟨s, o⟩` belongs to `⟦⟨f, g⟩⟧`.
    pub fn in_semantics(&self, state: (u32, u32), p: &RankPair, state_count: usize) -> bool {
        let fs = self.char_fn(state.0, state_count);
        let fo = self.char_fn(state.1, state_count);
        let covers = |bound: &crate::univ::RankFn, actual: &[Option<u16>]| {
            (0..state_count).all(|l| match actual[l] {
                // an absent location has minimal rank ∞
                None => true,
                Some(r) => bound.get(StateId(l)) <= r,
            })
        };
        let g_empty = (0..state_count).all(|l| p.fo.get(StateId(l)) == self.k + 1);
        covers(&p.fs, &fs) && covers(&p.fo, &fo) && g_empty == (state.1 == 0)
    }
}

/// Ranked locations of `KVMH(A, k)`.
pub fn ranked_elements(nbw: &Nbw, k: u16) -> Vec<(StateId, u16)> {
    nbw.states()
        .flat_map(|l| (0..=k).map(move |r| (l, r)))
        .filter(|&(l, r)| !(nbw.is_accepting(l) && r % 2 == 1))
        .collect()
}

/// `2(|Loc| − |α|)`.
pub fn full_rank_bound(nbw: &Nbw) -> u16 {
    (2 * (nbw.state_count() - nbw.accepting().count_ones(..))) as u16
}

/// `masks[y]` is set iff `y` satisfies: for every `(ℓ, n) ∈ x` and every
/// `ℓ' ∈ δ(ℓ, letter)` there is `n' ≤ n` with `(ℓ', n') ∈ y`.
fn rank_step_ok(nbw: &Nbw, elements: &[(StateId, u16)], letter: Letter, x: u32) -> Vec<bool> {
    let m = elements.len();
    let mut requirements: Vec<u32> = Vec::new();
    for (i, &(l, r)) in elements.iter().enumerate() {
        if x >> i & 1 == 0 {
            continue;
        }
        for &t in nbw.successors(l, letter) {
            let req = elements
                .iter()
                .enumerate()
                .filter(|(_, &(l2, r2))| l2 == t && r2 <= r)
                .fold(0u32, |acc, (j, _)| acc | 1 << j);
            requirements.push(req);
        }
    }
    (0..(1u32 << m))
        .map(|y| requirements.iter().all(|&req| y & req != 0))
        .collect()
}

pub fn kvmh(nbw: &Nbw, k: u16, cap: usize) -> Result<Kvmh, Error> {
    if k % 2 == 1 {
        return Err(Error::InvalidElement(format!("rank bound {} is odd", k)));
    }
    let elements = ranked_elements(nbw, k);
    let m = elements.len();
    if m > 20 {
        return Err(Error::CapExceeded {
            needed: 3u128.pow(m as u32),
            cap: cap as u128,
        });
    }
    cap_check(3u128.pow(m as u32), cap)?;
    let odd: u32 = elements
        .iter()
        .enumerate()
        .filter(|(_, &(_, r))| r % 2 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i);

    // index[s << m | o]
    let mut states = Vec::new();
    let mut index = vec![u32::MAX; 1usize << (2 * m)];
    for s in 0..(1u32 << m) {
        for o in submasks(s as u64) {
            index[(s as usize) << m | o as usize] = states.len() as u32;
            states.push((s, o as u32));
        }
    }

    let mut transitions = Vec::new();
    let mut stamp = vec![usize::MAX; states.len()];
    for a in nbw.letters() {
        let ok: Vec<Vec<bool>> = (0..(1u32 << m))
            .map(|x| rank_step_ok(nbw, &elements, a, x))
            .collect();
        for (id, &(s, o)) in states.iter().enumerate() {
            let mark = id;
            let mut push = |target: (u32, u32), transitions: &mut Vec<_>| {
                let t = index[(target.0 as usize) << m | target.1 as usize] as usize;
                if stamp[t] != mark {
                    stamp[t] = mark;
                    transitions.push((StateId(id), a, StateId(t)));
                }
            };
            for s2 in 0..(1u32 << m) {
                if !ok[s as usize][s2 as usize] {
                    continue;
                }
                if o == 0 {
                    push((s2, s2 & !odd), &mut transitions);
                } else {
                    for o2 in submasks(s2 as u64) {
                        if ok[o as usize][o2 as usize] {
                            push((s2, o2 as u32 & !odd), &mut transitions);
                        }
                    }
                }
            }
        }
        stamp.iter_mut().for_each(|v| *v = usize::MAX);
    }

    let init_bit = elements
        .iter()
        .position(|&(l, r)| l == nbw.initial() && r == k)
        .expect("initial ranked location exists");
    let initial = index[1usize << init_bit << m] as usize;
    let accepting = states
        .iter()
        .enumerate()
        .filter(|(_, &(_, o))| o == 0)
        .map(|(i, _)| StateId(i));
    let explicit = Nbw::new(
        nbw.alphabet().to_vec(),
        states.len(),
        StateId(initial),
        accepting,
        transitions,
    )?;
    Ok(Kvmh {
        nbw: explicit,
        elements,
        states,
        k,
    })
}

/// Explicit states of `KVMH(nbw)` with a `letter`-successor in `⟦target⟧`.
pub fn brute_pre_univ(kv: &Kvmh, source: &Nbw, letter: Letter, target: &RankPair) -> StateSet {
    let n = source.state_count();
    let inside: Vec<bool> = kv
        .states
        .iter()
        .map(|&q| kv.in_semantics(q, target, n))
        .collect();
    let mut out = StateSet::with_capacity(kv.states.len());
    for (s, a, t) in kv.nbw.transitions() {
        if a == letter && inside[t.index()] {
            out.insert(s.index());
        }
    }
    out
}

/// Explicit states of `KVMH(nbw)` inside `⟦pairs⟧`.
pub fn univ_semantics(kv: &Kvmh, source: &Nbw, pairs: &[RankPair]) -> StateSet {
    let n = source.state_count();
    let mut out = StateSet::with_capacity(kv.states.len());
    for (i, &q) in kv.states.iter().enumerate() {
        if pairs.iter().any(|p| kv.in_semantics(q, p, n)) {
            out.insert(i);
        }
    }
    out
}

/// `L(nbw) = Σ^ω`, through emptiness of the explicit complement.
pub fn universal_oracle(nbw: &Nbw, cap: usize) -> Result<bool, Error> {
    Ok(classical_empty(&kvmh(nbw, full_rank_bound(nbw), cap)?.nbw))
}

/// The product of `A1` with an explicit complement, without materializing
/// its edges.
struct Product<'a> {
    a1: &'a Nbw,
    a2: &'a Nbw,
    // preds[letter][state]
    preds1: Vec<Vec<Vec<usize>>>,
    preds2: Vec<Vec<Vec<usize>>>,
}

impl<'a> Product<'a> {
    fn new(a1: &'a Nbw, a2: &'a Nbw) -> Self {
        let preds = |a: &Nbw| {
            let mut p = vec![vec![Vec::new(); a.state_count()]; a.letter_count()];
            for (s, l, t) in a.transitions() {
                p[l.index()][t.index()].push(s.index());
            }
            p
        };
        Product {
            a1,
            a2,
            preds1: preds(a1),
            preds2: preds(a2),
        }
    }

    fn id(&self, l1: usize, q: usize) -> usize {
        l1 * self.a2.state_count() + q
    }
}

impl Explicit for Product<'_> {
    fn size(&self) -> usize {
        self.a1.state_count() * self.a2.state_count()
    }
    fn initial(&self) -> usize {
        self.id(self.a1.initial().index(), self.a2.initial().index())
    }
    fn for_each_pred(&self, t: usize, f: &mut dyn FnMut(usize)) {
        let m = self.a2.state_count();
        let (l1, q) = (t / m, t % m);
        for a in 0..self.preds1.len() {
            for &p1 in &self.preds1[a][l1] {
                for &p2 in &self.preds2[a][q] {
                    f(p1 * m + p2);
                }
            }
        }
    }
}

/// `L(a1) ⊆ L(a2)`, through generalized Büchi emptiness of `A1 × KVMH(A2)`.
pub fn include_oracle(a1: &Nbw, a2: &Nbw, cap: usize) -> Result<bool, Error> {
    if a1.alphabet() != a2.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a1.alphabet().to_vec(),
            right: a2.alphabet().to_vec(),
        });
    }
    let comp = kvmh(a2, full_rank_bound(a2), cap)?;
    cap_check(
        a1.state_count() as u128 * comp.nbw.state_count() as u128,
        cap,
    )?;
    let prod = Product::new(a1, &comp.nbw);
    let m = comp.nbw.state_count();
    let mut beta1 = StateSet::with_capacity(prod.size());
    let mut beta2 = StateSet::with_capacity(prod.size());
    for l1 in 0..a1.state_count() {
        for q in 0..m {
            if a1.is_accepting(StateId(l1)) {
                beta1.insert(prod.id(l1, q));
            }
            if comp.nbw.is_accepting(StateId(q)) {
                beta2.insert(prod.id(l1, q));
            }
        }
    }
    Ok(classical_empty_gen_of(&prod, &beta1, &beta2))
}
