use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::DeterminingSystem;
use crate::coeffs::ParamPoly;
use crate::{Error, Result};

const MAX_HALVINGS: usize = 30;

/// Converged solution of a determining system.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// Stage values `p_1..p_r`.
    pub values: Vec<Complex64>,
    /// Free-variable values after ties.
    pub free: Vec<Complex64>,
    pub iterations: usize,
    /// Max-norm of the residual at `values`.
    pub residual: f64,
}

impl Solution {
    /// Real parts, for solutions known to be real.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|z| z.im.abs() <= tol)
    }
}

struct Compiled {
    polys: Vec<ParamPoly>,
    jac: Vec<Vec<ParamPoly>>,
}

impl Compiled {
    fn new(sys: &DeterminingSystem) -> Result<Self> {
        let polys = sys.reduced_polys()?;
        let k = sys.free_variables();
        let jac = polys
            .iter()
            .map(|p| (0..k).map(|v| p.derivative(v)).collect())
            .collect();
        Ok(Compiled { polys, jac })
    }

    fn eval(&self, q: &[Complex64]) -> Result<DVector<Complex64>> {
        let vals = self
            .polys
            .iter()
            .map(|p| p.eval_complex(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(DVector::from_vec(vals))
    }

    fn jacobian(&self, q: &[Complex64]) -> Result<DMatrix<Complex64>> {
        let rows = self.jac.len();
        let cols = q.len();
        let mut m = DMatrix::zeros(rows, cols);
        for (i, row) in self.jac.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                m[(i, j)] = d.eval_complex(q)?;
            }
        }
        Ok(m)
    }
}

fn max_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_finite(q: &[Complex64], what: &str) -> Result<()> {
    if q.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite(format!("{what} is not finite")));
    }
    Ok(())
}

/// Damped Gauss-Newton iteration on the free variables of `sys`.
///
/// `initial` holds either one value per free variable or one per stage (in
/// which case the ties pick the first stage of each group). Each step is the
/// minimum-norm least-squares solution of the linearized system (SVD
/// pseudo-inverse), halved until the residual norm decreases, at most 30
/// times. Converged when the max-norm residual is below `tol`.
pub fn solve_newton(
    sys: &DeterminingSystem,
    initial: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> Result<Solution> {
    let k = sys.free_variables();
    let initial = if initial.len() == k {
        initial.to_vec()
    } else if initial.len() == sys.stages {
        sys.ties.restrict(initial)?
    } else {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: initial.len(),
        });
    };
    check_finite(&initial, "initial point")?;
    let c = Compiled::new(sys)?;
    if c.polys.len() < k {
        return Err(Error::InvalidArgument(format!(
            "{} equations for {k} free variables; the system is underdetermined",
            c.polys.len()
        )));
    }

    let mut q = initial;
    let mut f = c.eval(&q)?;
    let mut norm = f.norm();
    for iter in 0..=max_iter {
        let res = max_norm(&f);
        if !res.is_finite() {
            return Err(Error::NonFinite(format!("residual at iteration {iter}")));
        }
        if res < tol {
            return Ok(Solution {
                values: sys.ties.expand(&q)?,
                free: q,
                iterations: iter,
                residual: res,
            });
        }
        if iter == max_iter {
            break;
        }
        let j = c.jacobian(&q)?;
        let svd = j.svd(true, true);
        let smax = svd.singular_values.max();
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > smax * 1e-13)
            .count();
        if smax == 0.0 {
            return Err(Error::SingularJacobian {
                iteration: iter,
                last: sys.ties.expand(&q)?,
            });
        }
        let step = svd
            .solve(&(-&f), smax * 1e-13)
            .map_err(|e| Error::NonFinite(format!("least-squares step: {e}")))?;

        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<Complex64> = q
                .iter()
                .zip(step.iter())
                .map(|(x, d)| x + d * lambda)
                .collect();
            let ft = c.eval(&trial)?;
            let nt = ft.norm();
            if nt.is_finite() && nt < norm {
                q = trial;
                f = ft;
                norm = nt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            if rank < k {
                return Err(Error::SingularJacobian {
                    iteration: iter,
                    last: sys.ties.expand(&q)?,
                });
            }
            return Err(Error::NoConvergence {
                iterations: iter,
                residual: max_norm(&f),
                last: sys.ties.expand(&q)?,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual: max_norm(&f),
        last: sys.ties.expand(&q)?,
    })
}

/// Real starting point convenience wrapper.
pub fn solve_newton_real(
    sys: &DeterminingSystem,
    initial: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<Solution> {
    let z: Vec<Complex64> = initial.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    solve_newton(sys, &z, tol, max_iter)
}
