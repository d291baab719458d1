//! Universality sweeps over the random model, one CSV row per instance.

use std::io::{self, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use omega_antichain::randgen::{tv_generate, TvParams};
use omega_antichain::{is_universal, FixOptions, InvalidAutomaton};

pub const CSV_HEADER: &str = "n,r,f,seed,result,time_ms";

#[derive(Debug, Clone)]
pub struct Sweep {
    pub sizes: Vec<usize>,
    pub rs: Vec<f64>,
    pub fs: Vec<f64>,
    pub samples: u64,
    pub timeout: Duration,
    pub jobs: usize,
    pub early_stop: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Universal,
    NonUniversal,
    Timeout,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Universal => "universal",
            Verdict::NonUniversal => "nonuniversal",
            Verdict::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub point: usize,
    pub params: TvParams,
    pub verdict: Verdict,
    pub time: Duration,
}

impl Row {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3}",
            self.params.n,
            self.params.r,
            self.params.f,
            self.params.seed,
            self.verdict.as_str(),
            self.time.as_secs_f64() * 1e3
        )
    }
}

/// Per-point summary printed after the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub r: f64,
    pub f: f64,
    /// `None` when at least half of the runs timed out.
    pub median_ms: Option<f64>,
    pub universal: usize,
    pub timeouts: usize,
    pub samples: usize,
}

impl Sweep {
    fn points(&self) -> Vec<(usize, f64, f64)> {
        let mut points = Vec::new();
        for &n in &self.sizes {
            for &r in &self.rs {
                for &f in &self.fs {
                    points.push((n, r, f));
                }
            }
        }
        points
    }

    /// Checks every grid point before any instance runs.
    pub fn validate(&self) -> Result<(), InvalidAutomaton> {
        for (n, r, f) in self.points() {
            TvParams::new(n, r, f, 0).validate()?;
        }
        Ok(())
    }

    /// Runs the sweep, writing each row to `out` as soon as it is known.
    pub fn run(&self, out: &mut (dyn Write + Send)) -> io::Result<Vec<Summary>> {
        let points = self.points();
        let jobs: Vec<(usize, TvParams)> = points
            .iter()
            .enumerate()
            .flat_map(|(i, &(n, r, f))| {
                (0..self.samples).map(move |seed| (i, TvParams::new(n, r, f, seed)))
            })
            .collect();

        writeln!(out, "{}", CSV_HEADER)?;
        out.flush()?;
        let next = AtomicUsize::new(0);
        let sink = Mutex::new((out, Vec::with_capacity(jobs.len()), None::<io::Error>));
        std::thread::scope(|scope| {
            for _ in 0..self.jobs.max(1) {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&(point, params)) = jobs.get(i) else {
                        break;
                    };
                    let row = self.run_one(point, params);
                    let mut guard = sink.lock().unwrap();
                    let (out, rows, err) = &mut *guard;
                    if err.is_none() {
                        if let Err(e) = writeln!(out, "{}", row.csv()).and_then(|_| out.flush()) {
                            *err = Some(e);
                        }
                    }
                    rows.push(row);
                });
            }
        });
        let (_, rows, err) = sink.into_inner().unwrap();
        if let Some(e) = err {
            return Err(e);
        }
        Ok(points
            .iter()
            .enumerate()
            .map(|(i, &(n, r, f))| summarize(n, r, f, rows.iter().filter(|row| row.point == i)))
            .collect())
    }

    fn run_one(&self, point: usize, params: TvParams) -> Row {
        let nbw = tv_generate(&params).expect("grid points are validated up front");
        let start = Instant::now();
        let opts = FixOptions::default()
            .with_early_stop(self.early_stop)
            .with_deadline(Some(start + self.timeout));
        let verdict = match is_universal(&nbw, &opts) {
            Ok(true) => Verdict::Universal,
            Ok(false) => Verdict::NonUniversal,
            Err(_) => Verdict::Timeout,
        };
        Row {
            point,
            params,
            verdict,
            time: start.elapsed(),
        }
    }
}

fn summarize<'a>(n: usize, r: f64, f: f64, rows: impl Iterator<Item = &'a Row>) -> Summary {
    let rows: Vec<&Row> = rows.collect();
    // timeouts sort above every finished run
    let mut times: Vec<Option<f64>> = rows
        .iter()
        .map(|row| (row.verdict != Verdict::Timeout).then_some(row.time.as_secs_f64() * 1e3))
        .collect();
    times.sort_by(|a, b| match (a, b) {
        (Some(x), Some(y)) => x.total_cmp(y),
        (a, b) => b.is_some().cmp(&a.is_some()),
    });
    Summary {
        n,
        r,
        f,
        median_ms: times.get(times.len().saturating_sub(1) / 2).copied().flatten(),
        universal: rows.iter().filter(|row| row.verdict == Verdict::Universal).count(),
        timeouts: rows.iter().filter(|row| row.verdict == Verdict::Timeout).count(),
        samples: rows.len(),
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} r={} f={} median_ms=", self.n, self.r, self.f)?;
        match self.median_ms {
            Some(m) => write!(f, "{:.1}", m)?,
            None => write!(f, "timeout")?,
        }
        let finished = self.samples - self.timeouts;
        let fraction = if finished == 0 {
            0.0
        } else {
            self.universal as f64 / finished as f64
        };
        write!(
            f,
            " universal={:.2} ({}/{}) timeouts={}",
            fraction, self.universal, finished, self.timeouts
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sweep(timeout: Duration) -> Sweep {
        Sweep {
            sizes: vec![6],
            rs: vec![1.0, 2.5],
            fs: vec![0.5],
            samples: 4,
            timeout,
            jobs: 2,
            early_stop: true,
        }
    }

    fn answers(csv: &str) -> Vec<String> {
        let mut rows: Vec<String> = csv
            .lines()
            .skip(1)
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect();
        rows.sort();
        rows
    }

    #[test]
    fn rows_and_summaries() {
        let mut out = Vec::new();
        let summaries = sweep(Duration::from_secs(60)).run(&mut out).unwrap();
        let csv = String::from_utf8(out).unwrap();
        assert_eq!(csv.lines().next(), Some(CSV_HEADER));
        assert_eq!(csv.lines().count(), 1 + 8);
        assert_eq!(summaries.len(), 2);
        assert!(summaries.iter().all(|s| s.samples == 4 && s.timeouts == 0));
        assert!(summaries.iter().all(|s| s.median_ms.is_some()));
    }

    #[test]
    fn answers_are_reproducible() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        sweep(Duration::from_secs(60)).run(&mut a).unwrap();
        let mut serial = sweep(Duration::from_secs(60));
        serial.jobs = 1;
        serial.run(&mut b).unwrap();
        assert_eq!(
            answers(&String::from_utf8(a).unwrap()),
            answers(&String::from_utf8(b).unwrap())
        );
    }

    #[test]
    fn zero_timeout_times_out_everything() {
        let mut out = Vec::new();
        let summaries = sweep(Duration::ZERO).run(&mut out).unwrap();
        let csv = String::from_utf8(out).unwrap();
        assert!(csv.lines().skip(1).all(|l| l.contains(",timeout,")));
        assert!(summaries.iter().all(|s| s.median_ms.is_none() && s.timeouts == 4));
    }

    #[test]
    fn median_is_the_lower_one() {
        let row = |ms: u64, verdict| Row {
            point: 0,
            params: TvParams::new(1, 1.0, 1.0, 0),
            verdict,
            time: Duration::from_millis(ms),
        };
        let rows = [
            row(40, Verdict::Universal),
            row(10, Verdict::NonUniversal),
            row(0, Verdict::Timeout),
            row(20, Verdict::Universal),
        ];
        let s = summarize(1, 1.0, 1.0, rows.iter());
        assert_eq!(s.median_ms, Some(20.0));
        assert_eq!((s.universal, s.timeouts), (2, 1));
        let s = summarize(1, 1.0, 1.0, rows[1..3].iter());
        assert_eq!(s.median_ms, Some(10.0));
    }
}
