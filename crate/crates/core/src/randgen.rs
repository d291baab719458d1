//! Seeded random automata.
//!
//! NBW follow the Tabakov-Vardi model over `{0, 1}`: for each letter a fixed
//! number `round(r·n)` of distinct transitions is drawn uniformly, and
//! `round(f·n)` distinct accepting states. All draws go through a splitmix64
//! stream and a multiply-shift bounded draw, so output is bit-identical on
//! every platform for a given seed.

use crate::automaton::{Abw, Letter, Nbw, PosFormula, StateId};
use crate::error::{Diagnostic, InvalidAutomaton};

/// splitmix64.
#[derive(Debug, Clone)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64) -> Prng {
        Prng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut x = self.state;
        x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        x ^ (x >> 31)
    }

    /// A value in `[0, m)`: the high word of the 128-bit product `next · m`.
    pub fn bounded(&mut self, m: u64) -> u64 {
        assert!(m >= 1, "bound must be positive");
        ((self.next_u64() as u128 * m as u128) >> 64) as u64
    }
}

/// `floor(x + 0.5)`.
pub fn round_half_up(x: f64) -> u64 {
    (x + 0.5).floor() as u64
}

/// Parameters of the Tabakov-Vardi model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TvParams {
    /// Number of states.
    pub n: usize,
    /// Transition density per letter.
    pub r: f64,
    /// Accepting-state density.
    pub f: f64,
    pub seed: u64,
}

impl TvParams {
    pub fn new(n: usize, r: f64, f: f64, seed: u64) -> TvParams {
        TvParams { n, r, f, seed }
    }

    /// Transitions per letter.
    pub fn transitions_per_letter(&self) -> u64 {
        round_half_up(self.r * self.n as f64)
    }

    pub fn accepting_count(&self) -> u64 {
        round_half_up(self.f * self.n as f64)
    }

    pub fn validate(&self) -> Result<(), InvalidAutomaton> {
        let mut diags = Vec::new();
        if self.n == 0 {
            diags.push(Diagnostic::new("size must be at least 1"));
        }
        if !(self.r.is_finite() && self.r >= 0.0) {
            diags.push(Diagnostic::new(format!("transition density {} is not a nonnegative number", self.r)));
        } else if self.transitions_per_letter() > (self.n as u64) * (self.n as u64) {
            diags.push(Diagnostic::new(format!(
                "transition density {} needs {} transitions per letter, more than {}² pairs",
                self.r,
                self.transitions_per_letter(),
                self.n
            )));
        }
        if !(self.f.is_finite() && (0.0..=1.0).contains(&self.f)) {
            diags.push(Diagnostic::new(format!("accepting density {} is outside [0, 1]", self.f)));
        }
        if diags.is_empty() {
            Ok(())
        } else {
            Err(InvalidAutomaton(diags))
        }
    }
}

/// Draws `count` distinct values below `m`, in draw order.
fn distinct_draws(rng: &mut Prng, m: u64, count: u64) -> Vec<u64> {
    let mut seen = std::collections::HashSet::with_capacity(count as usize);
    let mut out = Vec::with_capacity(count as usize);
    while (out.len() as u64) < count {
        let v = rng.bounded(m);
        if seen.insert(v) {
            out.push(v);
        }
    }
    out
}

/// A random NBW over `{0, 1}` with initial state 0.
pub fn tv_generate(p: &TvParams) -> Result<Nbw, InvalidAutomaton> {
    p.validate()?;
    let n = p.n as u64;
    let mut rng = Prng::new(p.seed);
    let per_letter = p.transitions_per_letter();
    let mut transitions = Vec::with_capacity(2 * per_letter as usize);
    for letter in 0..2 {
        for v in distinct_draws(&mut rng, n * n, per_letter) {
            transitions.push((
                StateId((v / n) as usize),
                Letter(letter),
                StateId((v % n) as usize),
            ));
        }
    }
    let accepting = distinct_draws(&mut rng, n, p.accepting_count())
        .into_iter()
        .map(|v| StateId(v as usize));
    Nbw::new(
        vec!["0".to_string(), "1".to_string()],
        p.n,
        StateId(0),
        accepting,
        transitions,
    )
}

/// Shape parameters of random ABW.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbwParams {
    pub n: usize,
    pub letters: usize,
    /// Percent chance that a transition is `true`.
    pub true_pct: u64,
    /// Percent chance that a transition is `false`.
    pub false_pct: u64,
    /// Upper bound on the disjuncts of a transition.
    pub max_disjuncts: usize,
    /// Upper bound on the states in each conjunct.
    pub max_conjuncts: usize,
    /// Percent chance that a state is accepting.
    pub accepting_pct: u64,
    pub seed: u64,
}

impl AbwParams {
    pub fn new(n: usize, seed: u64) -> AbwParams {
        AbwParams {
            n,
            letters: 2,
            true_pct: 5,
            false_pct: 10,
            max_disjuncts: 2,
            max_conjuncts: 2,
            accepting_pct: 40,
            seed,
        }
    }
}

/// A random ABW in disjunctive normal form, with initial state 0.
pub fn random_abw(p: &AbwParams) -> Result<Abw, InvalidAutomaton> {
    let mut rng = Prng::new(p.seed);
    let n = p.n.max(1) as u64;
    let accepting: Vec<StateId> = (0..p.n)
        .filter(|_| rng.bounded(100) < p.accepting_pct)
        .map(StateId)
        .collect();
    let mut transitions = Vec::new();
    for letter in 0..p.letters {
        for s in 0..p.n {
            let roll = rng.bounded(100);
            let formula = if roll < p.true_pct {
                PosFormula::True
            } else if roll < p.true_pct + p.false_pct {
                PosFormula::False
            } else {
                let disjuncts = 1 + rng.bounded(p.max_disjuncts.max(1) as u64);
                let mut ors = Vec::new();
                for _ in 0..disjuncts {
                    let conjuncts = 1 + rng.bounded(p.max_conjuncts.max(1) as u64);
                    let ands = (0..conjuncts)
                        .map(|_| PosFormula::State(StateId(rng.bounded(n) as usize)))
                        .collect::<Vec<_>>();
                    ors.push(PosFormula::all_of(ands));
                }
                if ors.len() == 1 {
                    ors.pop().unwrap()
                } else {
                    PosFormula::Or(ors)
                }
            };
            transitions.push((StateId(s), Letter(letter), formula));
        }
    }
    let alphabet = (0..p.letters).map(|l| l.to_string()).collect();
    Abw::new(alphabet, p.n, StateId(0), accepting, transitions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // reference outputs of splitmix64 from seed 0, computed with
        // independent 128-bit integer arithmetic
        let mut rng = Prng::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
        assert_ne!(Prng::new(0).next_u64(), Prng::new(1).next_u64());
    }

    #[test]
    fn bounded_draws() {
        let mut rng = Prng::new(7);
        assert!((0..100).all(|_| rng.bounded(1) == 0));
        assert!((0..1000).all(|_| rng.bounded(13) < 13));
        let mut a = Prng::new(99);
        let mut b = Prng::new(99);
        assert!((0..50).all(|_| a.bounded(10) == b.bounded(10)));
    }

    #[test]
    fn model_counts() {
        let a = tv_generate(&TvParams::new(10, 1.5, 0.2, 42)).unwrap();
        assert_eq!(a.transition_count(Letter(0)), 15);
        assert_eq!(a.transition_count(Letter(1)), 15);
        assert_eq!(a.accepting().count_ones(..), 2);
        assert_eq!(a.initial(), StateId(0));
        assert_eq!(a.alphabet(), ["0", "1"]);

        let b = tv_generate(&TvParams::new(10, 0.0, 0.5, 1)).unwrap();
        assert_eq!(b.transitions().count(), 0);
    }

    #[test]
    fn parameter_diagnostics() {
        assert!(tv_generate(&TvParams::new(0, 1.0, 0.5, 0)).is_err());
        assert!(tv_generate(&TvParams::new(2, 2.5, 0.5, 0)).is_err());
        assert!(tv_generate(&TvParams::new(2, 2.0, 0.5, 0)).is_ok());
        assert!(tv_generate(&TvParams::new(3, 1.0, 1.5, 0)).is_err());
        assert!(tv_generate(&TvParams::new(3, -1.0, 0.5, 0)).is_err());
    }

    #[test]
    fn deterministic_output() {
        let p = TvParams::new(20, 2.0, 0.3, 5);
        assert_eq!(tv_generate(&p).unwrap(), tv_generate(&p).unwrap());
        let q = AbwParams::new(5, 3);
        assert_eq!(random_abw(&q).unwrap(), random_abw(&q).unwrap());
    }

    #[test]
    fn single_state_abw_entries() {
        let p = AbwParams {
            true_pct: 0,
            false_pct: 0,
            max_disjuncts: 1,
            max_conjuncts: 1,
            ..AbwParams::new(4, 11)
        };
        let a = random_abw(&p).unwrap();
        for s in a.states() {
            for l in a.letters() {
                assert!(matches!(a.transition(s, l), PosFormula::State(_)));
            }
        }
    }
}
