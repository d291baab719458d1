//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so every line is printed, passing or not.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use omega_antichain::alt::pre_alt;
use omega_antichain::antichain::{Antichain, Preorder};
use omega_antichain::oracle::{
    abw_empty_oracle, alt_closure, brute_pre_alt, brute_pre_univ, include_oracle, kvmh,
    full_rank_bound, member_lasso, univ_semantics, universal_oracle, DEFAULT_CAP,
};
use omega_antichain::randgen::{random_abw, tv_generate, AbwParams, Prng, TvParams};
use omega_antichain::univ::pre_univ;
use omega_antichain::{
    abw_empty, is_included, is_universal, FixOptions, Letter, MhPair, RankSpace, StateId,
    StateSet,
};

use common::*;

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn opts() -> FixOptions {
    FixOptions::default()
}

fn with_deadline(secs: u64) -> FixOptions {
    FixOptions::default().with_deadline(Some(Instant::now() + Duration::from_secs(secs)))
}

fn universality_oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for i in 0..300 {
        let a = envelope_nbw(i);
        let fast = is_universal(&a, &opts()).unwrap();
        let slow = universal_oracle(&a, DEFAULT_CAP).unwrap();
        if fast != slow {
            bad.push(i);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 60.0,
        format!("{}/300 agree, {:.1}s (limit 60s), disagreeing: {:?}", 300 - bad.len(), secs, bad),
    )
}

fn abw_oracle_agreement() -> Outcome {
    let mut bad = Vec::new();
    for i in 0..200u64 {
        let a = random_abw(&AbwParams::new(1 + (i % 6) as usize, 1000 + i)).unwrap();
        if abw_empty(&a, &opts()).unwrap() != abw_empty_oracle(&a, DEFAULT_CAP).unwrap() {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("{}/200 agree, disagreeing: {:?}", 200 - bad.len(), bad))
}

fn inclusion_oracle_agreement() -> Outcome {
    let mut rng = Prng::new(3);
    let mut bad = Vec::new();
    for i in 0..100 {
        let a2 = envelope_nbw(i + 7);
        let n1 = 1 + rng.bounded(4) as usize;
        let a1 = grid_nbw(n1, &mut rng);
        let fast = is_included(&a1, &a2, &opts()).unwrap();
        let slow = include_oracle(&a1, &a2, DEFAULT_CAP).unwrap();
        if fast != slow {
            bad.push(i);
        }
    }
    let mut not_reflexive = Vec::new();
    for i in 0..100 {
        let n = 1 + rng.bounded(30) as usize;
        let a = grid_nbw(n, &mut rng);
        if !is_included(&a, &a, &opts()).unwrap() {
            not_reflexive.push(i);
        }
    }
    outcome(
        bad.is_empty() && not_reflexive.is_empty(),
        format!(
            "{}/100 pairs agree with the oracle, {}/100 reflexive",
            100 - bad.len(),
            100 - not_reflexive.len()
        ),
    )
}

fn pre_matches_brute_force() -> Outcome {
    let mut rng = Prng::new(4);
    let mut alt_ok = 0;
    for i in 0..100u64 {
        let n = 1 + (i % 5) as usize;
        let a = random_abw(&AbwParams::new(n, 2000 + i)).unwrap();
        let s = rng.bounded(1 << n);
        let o = s & rng.bounded(1 << n);
        let target = MhPair::new(mask_set(n, s), mask_set(n, o));
        let letter = Letter(rng.bounded(2) as usize);
        let maxima = pre_alt(&a, letter, &target).unwrap();
        if alt_closure(n, &maxima) == brute_pre_alt(&a, letter, &target, DEFAULT_CAP).unwrap() {
            alt_ok += 1;
        }
    }
    let mut univ_ok = 0;
    for i in 0..100 {
        let a = envelope_nbw(i + 3);
        let kv = kvmh(&a, full_rank_bound(&a), DEFAULT_CAP).unwrap();
        let space = RankSpace::new(&a);
        let target = random_rank_pair(&a, &space, &mut rng);
        let letter = Letter(rng.bounded(2) as usize);
        let maxima = pre_univ(&a, &space, letter, &target).unwrap();
        if univ_semantics(&kv, &a, &maxima) == brute_pre_univ(&kv, &a, letter, &target) {
            univ_ok += 1;
        }
    }
    outcome(
        alt_ok == 100 && univ_ok == 100,
        format!("alternating {}/100, rank {}/100 exact", alt_ok, univ_ok),
    )
}

fn mask_set(n: usize, mask: u64) -> StateSet {
    let mut s = StateSet::with_capacity(n);
    (0..n).filter(|i| mask >> i & 1 == 1).for_each(|i| s.insert(i));
    s
}

fn complement_semantics() -> Outcome {
    let mut rng = Prng::new(5);
    let mut failures = 0;
    for i in 0..100 {
        let a = envelope_nbw(i + 11);
        let comp = kvmh(&a, full_rank_bound(&a), DEFAULT_CAP).unwrap();
        for _ in 0..20 {
            let w = random_lasso(&mut rng, 2, 4);
            if member_lasso(&a, &w) == member_lasso(&comp.nbw, &w) {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{}/2000 lassos accepted by exactly one side", 2000 - failures))
}

fn universality_matches_inclusion() -> Outcome {
    let mut rng = Prng::new(6);
    let u = universal_nbw();
    let mut bad = 0;
    for _ in 0..100 {
        let n = 1 + rng.bounded(20) as usize;
        let a = grid_nbw(n, &mut rng);
        if is_included(&u, &a, &opts()).unwrap() != is_universal(&a, &opts()).unwrap() {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{}/100 agree", 100 - bad))
}

fn early_stop_soundness() -> Outcome {
    let mut bad = 0;
    let mut unfinished = 0;
    for i in 0..200 {
        let (r, f) = grid_point(i);
        let a = tv_generate(&TvParams::new(30, r, f, 3000 + i as u64)).unwrap();
        let on = is_universal(&a, &with_deadline(120));
        let off = is_universal(&a, &with_deadline(120).with_early_stop(false));
        match (on, off) {
            (Ok(x), Ok(y)) if x != y => bad += 1,
            (Ok(_), Ok(_)) => {}
            _ => unfinished += 1,
        }
    }
    outcome(
        bad == 0 && unfinished == 0,
        format!("{} agree, {} differ, {} hit the 120s deadline", 200 - bad - unfinished, bad, unfinished),
    )
}

fn median_time(n: usize, r: f64, f: f64, samples: u64, limit: u64) -> Option<f64> {
    let times: Vec<Option<f64>> = (0..samples)
        .map(|seed| {
            let a = tv_generate(&TvParams::new(n, r, f, seed)).unwrap();
            let start = Instant::now();
            // a run past the limit cannot pull the median below it
            is_universal(&a, &with_deadline(limit))
                .ok()
                .map(|_| start.elapsed().as_secs_f64())
        })
        .collect();
    lower_median(&times)
}

fn timing_point(n: usize, r: f64, f: f64, samples: u64, limit: u64) -> Outcome {
    match median_time(n, r, f, samples, limit) {
        Some(m) => outcome(m <= limit as f64, format!("median {:.2}s over {} (limit {}s)", m, samples, limit)),
        None => outcome(false, format!("median above {}s over {}", limit, samples)),
    }
}

fn universal_fraction(n: usize, r: f64, f: f64, samples: u64) -> f64 {
    let hits = (0..samples)
        .filter(|&seed| {
            let a = tv_generate(&TvParams::new(n, r, f, seed)).unwrap();
            is_universal(&a, &opts()).unwrap()
        })
        .count();
    hits as f64 / samples as f64
}

fn density_trend() -> Outcome {
    let low = universal_fraction(30, 1.0, 0.5, 100);
    let high = universal_fraction(30, 3.0, 0.5, 100);
    outcome(high > low, format!("universal fraction {:.2} at r=1.0, {:.2} at r=3.0", low, high))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Sub(u8);

impl Preorder for Sub {
    fn leq(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }
}

fn antichain_laws(rng: &mut Prng) -> bool {
    for _ in 0..300 {
        let a: Vec<Sub> = (0..rng.bounded(8)).map(|_| Sub(rng.bounded(32) as u8)).collect();
        let b: Vec<Sub> = (0..rng.bounded(8)).map(|_| Sub(rng.bounded(32) as u8)).collect();
        let ca: Antichain<Sub> = a.iter().copied().collect();
        let cb: Antichain<Sub> = b.iter().copied().collect();
        let closure = |xs: &[Sub]| -> Vec<bool> {
            (0..32u8).map(|v| xs.iter().any(|x| Sub(v).leq(x))).collect()
        };
        let members = |c: &Antichain<Sub>| -> Vec<bool> {
            (0..32u8).map(|v| c.dominates(&Sub(v))).collect()
        };
        let elems: Vec<Sub> = ca.iter().copied().collect();
        let incomparable = elems.iter().enumerate().all(|(i, x)| {
            elems.iter().enumerate().all(|(j, y)| i == j || !x.leq(y))
        });
        let union: Vec<Sub> = a.iter().chain(b.iter()).copied().collect();
        let naive_below = closure(&a).iter().zip(closure(&b)).all(|(x, y)| !x || y);
        if !incomparable
            || members(&ca) != closure(&a)
            || members(&ca.union(&cb)) != closure(&union)
            || ca.below(&cb) != naive_below
        {
            return false;
        }
    }
    true
}

fn rank_pre_postconditions(rng: &mut Prng) -> bool {
    for _ in 0..500 {
        let n = 1 + rng.bounded(10) as usize;
        let a = grid_nbw(n, rng);
        let space = RankSpace::new(&a);
        let target = random_rank_pair(&a, &space, rng);
        for letter in a.letters() {
            for p in pre_univ(&a, &space, letter, &target).unwrap() {
                // the checked constructor enforces fs ≤ fo and even ranks on α
                if space.pair(p.fs.clone(), p.fo.clone()).is_err() {
                    return false;
                }
            }
        }
    }
    true
}

fn monotone_under_added_transitions(rng: &mut Prng) -> (usize, usize) {
    let mut checked = 0;
    let mut violations = 0;
    for i in 0..50 {
        let r = [2.0, 2.4, 2.8, 3.0][i % 4];
        let f = F_GRID[rng.bounded(F_GRID.len() as u64) as usize];
        let a = tv_generate(&TvParams::new(30, r, f, rng.next_u64())).unwrap();
        let mut b = a.clone();
        for _ in 0..3 {
            let from = StateId(rng.bounded(30) as usize);
            let to = StateId(rng.bounded(30) as usize);
            let letter = Letter(rng.bounded(2) as usize);
            if let Some(next) = b.with_transition(from, letter, to) {
                b = next;
            }
        }
        let before = is_universal(&a, &opts()).unwrap();
        let after = is_universal(&b, &opts()).unwrap();
        checked += 1;
        if before && !after {
            violations += 1;
        }
    }
    (checked, violations)
}

fn property_suites() -> Outcome {
    let mut rng = Prng::new(11);
    let laws = antichain_laws(&mut rng);
    let post = rank_pre_postconditions(&mut rng);
    let (checked, violations) = monotone_under_added_transitions(&mut rng);
    outcome(
        laws && post && violations == 0,
        format!(
            "antichain laws {}, rank predecessor invariants {}, monotonicity {}/{}",
            if laws { "hold" } else { "broken" },
            if post { "hold" } else { "broken" },
            checked - violations,
            checked
        ),
    )
}

fn main() -> ExitCode {
    let criteria: Vec<Check> = vec![
        ("universality agrees with the explicit oracle", universality_oracle_agreement),
        ("alternating emptiness agrees with the explicit oracle", abw_oracle_agreement),
        ("inclusion agrees with the explicit oracle", inclusion_oracle_agreement),
        ("predecessor maxima match brute force", pre_matches_brute_force),
        ("explicit complement accepts exactly the rejected lassos", complement_semantics),
        ("inclusion of the universal automaton matches universality", universality_matches_inclusion),
        ("early stop does not change answers", early_stop_soundness),
        ("median time at n=120, r=2.0, f=0.5", || timing_point(120, 2.0, 0.5, 50, 20)),
        ("median time at n=30, r=1.8, f=0.1", || timing_point(30, 1.8, 0.1, 100, 11)),
        ("universal fraction grows with transition density", density_trend),
        ("property suites", property_suites),
    ];
    let filter: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        println!(
            "criterion {:>2} {}: {} ({}; {:.1}s)",
            id,
            if result.pass { "PASS" } else { "FAIL" },
            name,
            result.detail,
            start.elapsed().as_secs_f64()
        );
        if !result.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", failed);
        ExitCode::FAILURE
    }
}
