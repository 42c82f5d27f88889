use std::ops::Range;

use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use super::OutagePoint;
use crate::error::{Error, Result};
use crate::rng;
use crate::stats;

/// Samples per substream unless the caller says otherwise.
pub const DEFAULT_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub events: u64,
    pub samples: u64,
    pub estimate: f64,
    pub upper95: f64,
}

impl McEstimate {
    pub fn from_counts(events: u64, samples: u64) -> Self {
        McEstimate {
            events,
            samples,
            estimate: events as f64 / samples as f64,
            upper95: stats::cp_upper(events, samples),
        }
    }

    pub fn interval(&self) -> (f64, f64) {
        stats::clopper_pearson(self.events, self.samples)
    }
}

/// Counts outage events for samples `range` of the stream keyed by `seed`.
///
/// Sample `j` always lives at position `j % chunk` of substream `j / chunk`,
/// and every sample consumes exactly `s.len()` exponential draws, so the count
/// for a range never depends on how the range is split or scheduled.
pub fn count_events(s: &[f64], i: &[f64], r_bar: f64, seed: u64, chunk: u64, range: Range<u64>) -> u64 {
    assert_eq!(s.len(), i.len());
    assert!(chunk > 0);
    if range.is_empty() {
        return 0;
    }
    let threshold = (s.len() as f64 * r_bar).exp2();
    let first = range.start / chunk;
    let last = (range.end - 1) / chunk;
    (first..=last)
        .into_par_iter()
        .map(|c| {
            let lo = (c * chunk).max(range.start);
            let hi = ((c + 1) * chunk).min(range.end);
            let mut rng = rng::substream(seed, c);
            let mut x = vec![0.0f64; s.len()];
            for _ in c * chunk..lo {
                for v in x.iter_mut() {
                    *v = Exp1.sample(&mut rng);
                }
            }
            let mut events = 0u64;
            for _ in lo..hi {
                for v in x.iter_mut() {
                    *v = Exp1.sample(&mut rng);
                }
                // Π(1 + sinr_f) <= 2^(F r_bar) is the outage event; the partial
                // product only grows, so stop as soon as it clears the bar.
                let mut prod = 1.0f64;
                let mut decoded = false;
                for ((&xf, &sf), &inf) in x.iter().zip(s).zip(i) {
                    prod *= 1.0 + sf * xf / (1.0 + inf * xf);
                    if prod > threshold {
                        decoded = true;
                        break;
                    }
                }
                events += u64::from(!decoded);
            }
            events
        })
        .sum()
}

/// Monte Carlo outage at a uniform operating point.
pub fn mc_outage(point: &OutagePoint, n: u64, seed: u64, chunk: u64) -> Result<McEstimate> {
    let s = vec![point.s; point.f_u];
    let i = vec![point.i; point.f_u];
    mc_outage_vectors(&s, &i, point.r_bar_u, n, seed, chunk)
}

/// Monte Carlo outage with per-resource normalized powers.
pub fn mc_outage_vectors(s: &[f64], i: &[f64], r_bar: f64, n: u64, seed: u64, chunk: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::Domain("Monte Carlo needs at least one sample".into()));
    }
    if chunk == 0 {
        return Err(Error::Domain("chunk size must be positive".into()));
    }
    if s.len() != i.len() || s.is_empty() {
        return Err(Error::LengthMismatch {
            what: "normalized interference",
            expected: s.len(),
            got: i.len(),
        });
    }
    let events = count_events(s, i, r_bar, seed, chunk, 0..n);
    Ok(McEstimate::from_counts(events, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::outage::outage_closed_form_1fr;

    #[test]
    fn zero_signal_is_certain_outage() {
        let p = OutagePoint::new(0.0, 3.0, 4, 0.25).unwrap();
        let e = mc_outage(&p, 1000, 1, 128).unwrap();
        assert_eq!(e.estimate, 1.0);
        assert_eq!(e.upper95, 1.0);
    }

    #[test]
    fn rejects_empty_runs() {
        let p = OutagePoint::new(1.0, 0.0, 1, 1.0).unwrap();
        assert!(mc_outage(&p, 0, 1, 16).is_err());
        assert!(mc_outage(&p, 10, 1, 0).is_err());
    }

    #[test]
    fn split_ranges_add_up() {
        let s = [3.0, 5.0];
        let i = [0.5, 0.1];
        let whole = count_events(&s, &i, 1.0, 9, 1000, 0..25_000);
        let parts = count_events(&s, &i, 1.0, 9, 1000, 0..7_345)
            + count_events(&s, &i, 1.0, 9, 1000, 7_345..19_999)
            + count_events(&s, &i, 1.0, 9, 1000, 19_999..25_000);
        assert_eq!(whole, parts);
    }

    #[test]
    fn independent_of_worker_count() {
        let p = OutagePoint::new(20.0, 2.0, 3, 1.0 / 3.0).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| mc_outage(&p, 300_000, 42, 4096).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn single_fr_matches_closed_form() {
        let p = OutagePoint::new(10.0, 0.0, 1, 1.0).unwrap();
        let n = 1_000_000;
        let e = mc_outage(&p, n, 2024, DEFAULT_CHUNK).unwrap();
        let exact = outage_closed_form_1fr(10.0, 0.0, 1.0);
        let sd = crate::stats::binomial_sd(exact, n);
        assert!((e.estimate - exact).abs() <= 3.0 * sd, "{} vs {exact}", e.estimate);
    }
}
