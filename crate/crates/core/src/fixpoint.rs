//! Nested fixed points for Büchi and generalized Büchi emptiness, evaluated
//! over an abstract domain of downward-closed sets.
//!
//! The Büchi formula is `νy. μx. Pre(x) ∪ (Pre(y) ∩ α)`; the automaton is
//! nonempty iff its initial state belongs to the result. The generalized
//! form with two accepting sets computes one least fixed point per set and
//! intersects them in each outer round.

use std::time::Instant;

use crate::error::Timeout;

/// A domain of downward-closed sets with the operations the Büchi fixed point
/// needs. `pre`, `meet_alpha` and `union` must preserve closedness and `pre`
/// must be monotone with respect to `below`.
pub trait BuchiDomain {
    type Set;

    fn empty(&self) -> Self::Set;
    fn top(&self) -> Self::Set;
    /// Predecessors of the closure over every letter.
    fn pre(&self, set: &Self::Set) -> Self::Set;
    /// Intersection with the accepting states.
    fn meet_alpha(&self, set: &Self::Set) -> Self::Set;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    /// Closure inclusion.
    fn below(&self, a: &Self::Set, b: &Self::Set) -> bool;
    /// Adds `add` to `set` and returns a set whose closure holds the part of
    /// `add` that was not already in `set`, and lies within the new `set`.
    fn absorb(&self, set: &mut Self::Set, add: Self::Set) -> Self::Set;
    /// `absorb(set, pre(from))`; domains may avoid building `pre(from)`.
    fn absorb_pre(&self, set: &mut Self::Set, from: &Self::Set) -> Self::Set {
        let add = self.pre(from);
        self.absorb(set, add)
    }
    fn contains_initial(&self, set: &Self::Set) -> bool;
}

/// A domain for a generalized Büchi condition with two accepting sets.
pub trait GenBuchiDomain {
    type Set;

    fn empty(&self) -> Self::Set;
    fn top(&self) -> Self::Set;
    fn pre(&self, set: &Self::Set) -> Self::Set;
    fn meet_beta1(&self, set: &Self::Set) -> Self::Set;
    fn meet_beta2(&self, set: &Self::Set) -> Self::Set;
    fn meet(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn below(&self, a: &Self::Set, b: &Self::Set) -> bool;
    fn absorb(&self, set: &mut Self::Set, add: Self::Set) -> Self::Set;
    fn absorb_pre(&self, set: &mut Self::Set, from: &Self::Set) -> Self::Set {
        let add = self.pre(from);
        self.absorb(set, add)
    }
    fn contains_initial(&self, set: &Self::Set) -> bool;
    /// Whether `β₂ ⊆ β₁`. Then the second least fixed point lies inside the
    /// first and their meet is the second alone.
    fn beta2_within_beta1(&self) -> bool {
        false
    }
}

/// Evaluation settings shared by all fixed-point based checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixOptions {
    /// Stop the greatest fixed point as soon as an iterate loses the initial
    /// state. The iterates decrease, so the answer is unchanged.
    pub early_stop: bool,
    /// Checked once per inner and outer iteration.
    pub deadline: Option<Instant>,
}

impl Default for FixOptions {
    fn default() -> Self {
        FixOptions {
            early_stop: true,
            deadline: None,
        }
    }
}

impl FixOptions {
    pub fn with_early_stop(mut self, early_stop: bool) -> Self {
        self.early_stop = early_stop;
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    fn check(&self) -> Result<(), Timeout> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Timeout),
            _ => Ok(()),
        }
    }
}

/// Iteration counts of the last evaluation, for diagnostics and benchmarks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixStats {
    pub outer_rounds: usize,
    pub inner_rounds: usize,
}

// Pre distributes over union, so each round only takes predecessors of the
// elements the previous round added. The iterates are the same as those of
// `x ↦ Pre(x) ∪ seed` from the empty set.
fn least_fixpoint<S>(
    seed: S,
    empty: impl Fn() -> S,
    absorb: impl Fn(&mut S, S) -> S,
    absorb_pre: impl Fn(&mut S, &S) -> S,
    below: impl Fn(&S, &S) -> bool,
    opts: &FixOptions,
    stats: &mut FixStats,
) -> Result<S, Timeout> {
    let none = empty();
    let mut x = empty();
    let mut frontier = absorb(&mut x, seed);
    loop {
        opts.check()?;
        stats.inner_rounds += 1;
        if below(&frontier, &none) {
            return Ok(x);
        }
        frontier = absorb_pre(&mut x, &frontier);
    }
}

/// Whether the initial state belongs to `νy. μx. Pre(x) ∪ (Pre(y) ∩ α)`,
/// i.e. whether the underlying automaton is nonempty.
pub fn buchi_fix<D: BuchiDomain>(domain: &D, opts: &FixOptions) -> Result<bool, Timeout> {
    buchi_fix_with_stats(domain, opts).map(|(answer, _)| answer)
}

pub fn buchi_fix_with_stats<D: BuchiDomain>(
    domain: &D,
    opts: &FixOptions,
) -> Result<(bool, FixStats), Timeout> {
    let mut stats = FixStats::default();
    let mut y = domain.top();
    loop {
        opts.check()?;
        stats.outer_rounds += 1;
        // constant across the inner iteration
        let accepting_pre = domain.meet_alpha(&domain.pre(&y));
        let x = least_fixpoint(
            accepting_pre,
            || domain.empty(),
            |x, add| domain.absorb(x, add),
            |x, from| domain.absorb_pre(x, from),
            |a, b| domain.below(a, b),
            opts,
            &mut stats,
        )?;
        let stable = domain.below(&y, &x);
        y = x;
        if stable {
            break;
        }
        if opts.early_stop && !domain.contains_initial(&y) {
            return Ok((false, stats));
        }
    }
    Ok((domain.contains_initial(&y), stats))
}

/// Whether the initial state belongs to
/// `νy. (μx₁. Pre(x₁) ∪ (Pre(y) ∩ β₁)) ∩ (μx₂. Pre(x₂) ∪ (Pre(y) ∩ β₂))`.
pub fn gen_buchi_fix<D: GenBuchiDomain>(domain: &D, opts: &FixOptions) -> Result<bool, Timeout> {
    gen_buchi_fix_with_stats(domain, opts).map(|(answer, _)| answer)
}

pub fn gen_buchi_fix_with_stats<D: GenBuchiDomain>(
    domain: &D,
    opts: &FixOptions,
) -> Result<(bool, FixStats), Timeout> {
    let mut stats = FixStats::default();
    let mut y = domain.top();
    loop {
        opts.check()?;
        stats.outer_rounds += 1;
        let pre_y = domain.pre(&y);
        let mut lfp = |seed| {
            least_fixpoint(
                seed,
                || domain.empty(),
                |x, add| domain.absorb(x, add),
                |x, from| domain.absorb_pre(x, from),
                |a, b| domain.below(a, b),
                opts,
                &mut stats,
            )
        };
        let x2 = lfp(domain.meet_beta2(&pre_y))?;
        let x = if domain.beta2_within_beta1() {
            x2
        } else {
            let x1 = lfp(domain.meet_beta1(&pre_y))?;
            domain.meet(&x1, &x2)
        };
        let stable = domain.below(&y, &x);
        y = x;
        if stable {
            break;
        }
        if opts.early_stop && !domain.contains_initial(&y) {
            return Ok((false, stats));
        }
    }
    Ok((domain.contains_initial(&y), stats))
}
