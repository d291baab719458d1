#![allow(dead_code)]

use omega_antichain::randgen::{tv_generate, Prng, TvParams};
use omega_antichain::oracle::Lasso;
use omega_antichain::{Letter, Nbw, RankPair, RankSpace, StateId};

/// Shapes whose explicit complement stays small: at most three locations
/// with at least two accepting, or every location accepting and at most five.
pub const ENVELOPE: &[(usize, f64, f64)] = &[
    (2, 1.0, 1.0),
    (2, 2.0, 1.0),
    (3, 1.0, 0.67),
    (3, 2.0, 0.67),
    (3, 3.0, 0.67),
    (3, 1.0, 1.0),
    (3, 2.0, 1.0),
    (3, 3.0, 1.0),
    (1, 1.0, 1.0),
    (4, 1.0, 1.0),
    (4, 2.0, 1.0),
    (4, 3.0, 1.0),
    (5, 1.0, 1.0),
    (5, 2.0, 1.0),
    (5, 3.0, 1.0),
];

pub fn envelope_nbw(i: usize) -> Nbw {
    let (n, r, f) = ENVELOPE[i % ENVELOPE.len()];
    tv_generate(&TvParams::new(n, r, f, i as u64)).unwrap()
}

pub const R_GRID: [f64; 15] = [
    0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0,
];
pub const F_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Point `i` of the r × f grid, cycling.
pub fn grid_point(i: usize) -> (f64, f64) {
    let j = i % (R_GRID.len() * F_GRID.len());
    (R_GRID[j / F_GRID.len()], F_GRID[j % F_GRID.len()])
}

/// A random NBW over `{0, 1}` with `n` states on some grid point.
pub fn grid_nbw(n: usize, rng: &mut Prng) -> Nbw {
    let r = R_GRID[rng.bounded(R_GRID.len() as u64) as usize].min(n as f64);
    let f = F_GRID[rng.bounded(F_GRID.len() as u64) as usize];
    tv_generate(&TvParams::new(n, r, f, rng.next_u64())).unwrap()
}

/// The one-state automaton accepting every word over `{0, 1}`.
pub fn universal_nbw() -> Nbw {
    Nbw::new(
        vec!["0".into(), "1".into()],
        1,
        StateId(0),
        [StateId(0)],
        [
            (StateId(0), Letter(0), StateId(0)),
            (StateId(0), Letter(1), StateId(0)),
        ],
    )
    .unwrap()
}

pub fn random_lasso(rng: &mut Prng, letters: usize, max_len: u64) -> Lasso {
    let word = |rng: &mut Prng, len: u64| {
        (0..len)
            .map(|_| Letter(rng.bounded(letters as u64) as usize))
            .collect::<Vec<_>>()
    };
    let u = rng.bounded(max_len + 1);
    let v = 1 + rng.bounded(max_len);
    let prefix = word(rng, u);
    let period = word(rng, v);
    Lasso::new(prefix, period)
}

/// Values a location may take in a characteristic function, ascending.
fn allowed(space: &RankSpace, accepting: bool) -> Vec<u16> {
    (0..=space.top())
        .filter(|&v| v == space.top() || !accepting || v % 2 == 0)
        .collect()
}

/// A random valid pair `⟨f_s, f_o⟩`.
pub fn random_rank_pair(nbw: &Nbw, space: &RankSpace, rng: &mut Prng) -> RankPair {
    let n = nbw.state_count();
    let owes_nothing = rng.bounded(4) == 0;
    let mut fs = Vec::with_capacity(n);
    let mut fo = Vec::with_capacity(n);
    for l in nbw.states() {
        let values = allowed(space, nbw.is_accepting(l));
        let a = values[rng.bounded(values.len() as u64) as usize];
        let above: Vec<u16> = values.iter().copied().filter(|&v| v >= a).collect();
        let b = above[rng.bounded(above.len() as u64) as usize];
        fs.push(a);
        fo.push(if owes_nothing { space.top() } else { b });
    }
    space
        .pair(space.rank_fn(&fs).unwrap(), space.rank_fn(&fo).unwrap())
        .unwrap()
}

/// Lower median of `times`, where `None` stands for a run that hit its
/// deadline and sorts above every finished run.
pub fn lower_median(times: &[Option<f64>]) -> Option<f64> {
    let mut sorted: Vec<Option<f64>> = times.to_vec();
    sorted.sort_by(|a, b| match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    sorted[(sorted.len() - 1) / 2]
}
