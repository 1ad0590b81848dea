use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ladder::{Ladder, Op};
use crate::{Error, Result};

type M4 = Matrix4<Complex64>;

/// Step sizes `2^-3 ..= 2^-7`.
pub const DEFAULT_STEPS: [f64; 5] = [0.125, 0.0625, 0.03125, 0.015625, 0.0078125];

/// Empirical order fit.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericFit {
    /// Mean of the per-trial slopes.
    pub slope: f64,
    pub trial_slopes: Vec<f64>,
}

fn random_matrix(rng: &mut ChaCha8Rng) -> M4 {
    M4::from_fn(|_, _| Complex64::new(rng.random_range(-1.0..1.0), 0.0))
}

fn product(ladder: &Ladder, a: &M4, b: &M4, x: f64) -> M4 {
    ladder.steps().iter().fold(M4::identity(), |acc, s| {
        let g = match s.op {
            Op::A => a,
            Op::B => b,
        };
        acc * (g * (s.t.to_complex() * x)).exp()
    })
}

/// Least-squares slope of `log err` against `log x`.
fn fit_slope(xs: &[f64], errs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Fits the local error order of `ladder` against `e^{x(A+B)}`.
///
/// Each trial draws dense 4×4 matrices `A`, `B` with entries uniform in
/// `[-1, 1)` from a ChaCha stream derived from `seed` and the trial index,
/// measures the Frobenius error at `steps`, and fits a log-log slope. An
/// order-`m` ladder gives a slope near `m + 1`.
pub fn verify_order_numeric(ladder: &Ladder, trials: usize, seed: u64, steps: &[f64]) -> Result<NumericFit> {
    if trials < 3 {
        return Err(Error::InvalidArgument("need at least three trials".into()));
    }
    if steps.len() < 3 || steps.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::InvalidArgument(
            "need at least three positive step sizes".into(),
        ));
    }
    let mut slopes = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let a = random_matrix(&mut rng);
        let b = random_matrix(&mut rng);
        let sum = a + b;
        let mut errs = Vec::with_capacity(steps.len());
        for &x in steps {
            let exact = (sum * Complex64::new(x, 0.0)).exp();
            let err = (product(ladder, &a, &b, x) - exact).norm();
            if !err.is_finite() {
                return Err(Error::NonFinite(format!("error at x = {x} in trial {trial}")));
            }
            if err == 0.0 {
                return Err(Error::NonFinite(format!(
                    "zero error at x = {x} in trial {trial}; slope undefined"
                )));
            }
            errs.push(err);
        }
        slopes.push(fit_slope(steps, &errs));
    }
    Ok(NumericFit {
        slope: slopes.iter().sum::<f64>() / trials as f64,
        trial_slopes: slopes,
    })
}
