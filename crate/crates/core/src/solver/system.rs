use num_complex::Complex64;

use crate::coeffs::{g_for_scheme, ParamPoly};
use crate::conditions::{determining_indices, Scheme};
use crate::{Error, Result};

/// Identification of stages with free variables: stage `j` takes the value
/// of variable `map[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ties {
    map: Vec<usize>,
    num_vars: usize,
}

impl Ties {
    /// Every stage independent.
    pub fn none(r: usize) -> Self {
        Ties {
            map: (0..r).collect(),
            num_vars: r,
        }
    }

    /// `p_{r+1-j} = p_j`.
    pub fn symmetric(r: usize) -> Self {
        Ties {
            map: (0..r).map(|j| j.min(r - 1 - j)).collect(),
            num_vars: r.div_ceil(2),
        }
    }

    /// Arbitrary grouping; `groups[j]` names the variable of stage `j`.
    /// Variable indices must be exactly `0..k` for some `k`.
    pub fn groups(groups: &[usize]) -> Result<Self> {
        let num_vars = groups.iter().max().map_or(0, |m| m + 1);
        if groups.is_empty() || (0..num_vars).any(|v| !groups.contains(&v)) {
            return Err(Error::InvalidArgument(format!(
                "tie groups {groups:?} must use every variable 0..k"
            )));
        }
        Ok(Ties {
            map: groups.to_vec(),
            num_vars,
        })
    }

    pub fn stages(&self) -> usize {
        self.map.len()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Stage values from free-variable values.
    pub fn expand<T: Copy>(&self, free: &[T]) -> Result<Vec<T>> {
        if free.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: free.len(),
            });
        }
        Ok(self.map.iter().map(|&v| free[v]).collect())
    }

    /// Free-variable values from stage values; the first stage of each
    /// group wins.
    pub fn restrict<T: Copy>(&self, stages: &[T]) -> Result<Vec<T>> {
        if stages.len() != self.map.len() {
            return Err(Error::DimensionMismatch {
                expected: self.map.len(),
                got: stages.len(),
            });
        }
        let mut out: Vec<Option<T>> = vec![None; self.num_vars];
        for (j, &v) in self.map.iter().enumerate() {
            out[v].get_or_insert(stages[j]);
        }
        Ok(out.into_iter().map(|v| v.expect("every variable is used")).collect())
    }
}

/// One determining equation `g(label) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: Vec<u32>,
    pub poly: ParamPoly,
}

/// Determining equations of a scheme at order `m` for `r` stages, together
/// with the normalization `Σ p_j = 1` and optional ties between stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminingSystem {
    pub scheme: Scheme,
    pub order: usize,
    pub stages: usize,
    pub equations: Vec<Equation>,
    pub ties: Ties,
}

impl DeterminingSystem {
    /// Normalization followed by every `g(label)` with the ties applied,
    /// as polynomials in the free variables.
    pub fn reduced_polys(&self) -> Result<Vec<ParamPoly>> {
        let r = self.stages;
        let k = self.ties.num_vars();
        let mut out = vec![ParamPoly::normalization(r).substitute_vars(self.ties.map(), k)?];
        for eq in &self.equations {
            out.push(eq.poly.substitute_vars(self.ties.map(), k)?);
        }
        Ok(out)
    }

    pub fn free_variables(&self) -> usize {
        self.ties.num_vars()
    }

    /// Residuals `[Σp - 1, g(label_1), ...]` at stage values `values`.
    pub fn residual(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        if values.len() != self.stages {
            return Err(Error::DimensionMismatch {
                expected: self.stages,
                got: values.len(),
            });
        }
        let mut out = vec![ParamPoly::normalization(self.stages).eval_complex(values)?];
        for eq in &self.equations {
            out.push(eq.poly.eval_complex(values)?);
        }
        Ok(out)
    }

    /// Real-valued convenience form of [`residual`](Self::residual).
    pub fn residual_real(&self, values: &[f64]) -> Result<Vec<f64>> {
        let z: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.residual(&z)?.into_iter().map(|c| c.re).collect())
    }
}

/// Builds the determining system `{Σp = 1} ∪ {g(idx) = 0}` for the scheme's
/// minimal index list at order `m`, with `r` stages.
pub fn build_system(scheme: Scheme, m: usize, r: usize, symmetric_ties: bool) -> Result<DeterminingSystem> {
    let ties = if symmetric_ties {
        Ties::symmetric(r)
    } else {
        Ties::none(r)
    };
    build_system_with_ties(scheme, m, ties)
}

/// [`build_system`] with an arbitrary stage grouping.
pub fn build_system_with_ties(scheme: Scheme, m: usize, ties: Ties) -> Result<DeterminingSystem> {
    let r = ties.stages();
    if r == 0 {
        return Err(Error::InvalidArgument("need at least one stage".into()));
    }
    let equations = determining_indices(scheme, m)?
        .into_iter()
        .map(|label| {
            let poly = g_for_scheme(&label, scheme, r);
            Equation { label, poly }
        })
        .collect();
    Ok(DeterminingSystem {
        scheme,
        order: m,
        stages: r,
        equations,
        ties,
    })
}
