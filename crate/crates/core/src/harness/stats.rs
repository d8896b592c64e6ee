//! Binomial bands around exact predicted probabilities.

use serde::Serialize;

/// An empirical proportion compared with an exact prediction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Band {
    pub hits: u64,
    pub trials: u64,
    pub empirical: f64,
    pub expected: f64,
    /// `sqrt(p (1 - p) / trials)` at the predicted `p`.
    pub sigma: f64,
    pub z: f64,
}

impl Band {
    pub fn new(hits: u64, trials: u64, expected: f64) -> Band {
        assert!(trials > 0, "a band needs at least one trial");
        let empirical = hits as f64 / trials as f64;
        let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
        let diff = empirical - expected;
        let z = if sigma > 0.0 {
            diff / sigma
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        };
        Band {
            hits,
            trials,
            empirical,
            expected,
            sigma,
            z,
        }
    }

    pub fn within(&self, k: f64) -> bool {
        self.z.abs() <= k
    }
}

/// Standard error of an observed proportion, for trend checks without a
/// prediction.
pub fn observed_sigma(hits: u64, trials: u64) -> f64 {
    let p = hits as f64 / trials as f64;
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Whether `rates` never rise by more than `k` combined standard errors from
/// one entry to the next.
pub fn non_increasing_within(rates: &[(u64, u64)], k: f64) -> bool {
    rates.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        let ra = a.0 as f64 / a.1 as f64;
        let rb = b.0 as f64 / b.1 as f64;
        let s = (observed_sigma(a.0, a.1).powi(2) + observed_sigma(b.0, b.1).powi(2)).sqrt();
        rb <= ra + k * s
    })
}

/// Formats a float for CSV with enough digits to round-trip.
pub fn fmt(x: f64) -> String {
    format!("{x:.6e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_z() {
        let b = Band::new(50, 100, 0.5);
        assert_eq!(b.z, 0.0);
        assert!((b.sigma - 0.05).abs() < 1e-12);
        let b = Band::new(64, 100, 0.5);
        assert!((b.z - 2.8).abs() < 1e-9);
        assert!(b.within(3.0) && !b.within(2.7));
        assert_eq!(Band::new(0, 10, 0.0).z, 0.0);
        assert!(Band::new(1, 10, 0.0).z.is_infinite());
    }

    #[test]
    fn trend() {
        assert!(non_increasing_within(&[(100, 1000), (50, 1000), (10, 1000)], 2.0));
        assert!(!non_increasing_within(&[(10, 1000), (100, 1000)], 2.0));
        // a small rise inside the noise is tolerated
        assert!(non_increasing_within(&[(50, 1000), (55, 1000)], 2.0));
    }
}
