use std::ops::{Mul, Neg};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::ladder::{Coef, Ladder};
use crate::lyndon::{Word, WordPoly};
use crate::{Error, Rational, Result};

/// Largest grade [`expand_product`] will compute.
pub const MAX_SERIES_GRADE: usize = 8;

/// Coefficient field of a truncated series.
pub trait Scalar:
    Clone + Zero + One + PartialEq + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;
    fn from_coef(c: &Coef) -> Result<Self>;
    fn magnitude(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_coef(c: &Coef) -> Result<Self> {
        c.as_exact()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("exponent {c} is not exact")))
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map_or(f64::INFINITY, f64::abs)
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_coef(c: &Coef) -> Result<Self> {
        Ok(c.to_complex())
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Element of the free associative algebra on the ladder's operators,
/// truncated above `max_grade` and stored grade by grade.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C: Scalar> {
    grades: Vec<WordPoly<C>>,
}

fn inv_factorial<C: Scalar>(k: usize) -> C {
    let f = (1..=k).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()));
    C::from_rational(&f.recip())
}

impl<C: Scalar> TruncatedSeries<C> {
    pub fn one(max_grade: usize) -> Self {
        let mut grades = vec![WordPoly::new(); max_grade + 1];
        grades[0] = WordPoly::monomial(Word::empty(), C::one());
        TruncatedSeries { grades }
    }

    /// `e^{t·letter}` truncated.
    pub fn exp_letter(letter: u32, t: &C, max_grade: usize) -> Self {
        let mut out = Self::one(max_grade);
        let mut power = C::one();
        for k in 1..=max_grade {
            power = power * t.clone();
            let w = Word::from(vec![letter; k]);
            out.grades[k] = WordPoly::monomial(w, power.clone() * inv_factorial::<C>(k));
        }
        out
    }

    /// `e^{x(L_1 + ⋯ + L_q)}` at `x = 1`: grade `k` is `(Σ L)^k / k!`.
    pub fn exp_sum(letters: &[u32], max_grade: usize) -> Self {
        let mut out = Self::one(max_grade);
        let mut sum = WordPoly::new();
        for &l in letters {
            sum.add_term(Word::from(vec![l]), C::one());
        }
        let mut power = WordPoly::monomial(Word::empty(), C::one());
        for k in 1..=max_grade {
            power = &power * &sum;
            out.grades[k] = power.scale(&inv_factorial::<C>(k));
        }
        out
    }

    pub fn max_grade(&self) -> usize {
        self.grades.len() - 1
    }

    pub fn grade(&self, k: usize) -> &WordPoly<C> {
        &self.grades[k]
    }

    /// Truncated product.
    pub fn mul(&self, rhs: &Self) -> Self {
        let g = self.max_grade().min(rhs.max_grade());
        let mut grades = vec![WordPoly::new(); g + 1];
        for (i, a) in self.grades.iter().enumerate().take(g + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.grades.iter().enumerate().take(g + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                grades[i + j] += &(a * b);
            }
        }
        TruncatedSeries { grades }
    }
}

/// Expands the ladder's product of exponentials in the free associative
/// algebra on `A` (letter 0) and `B` (letter 1), up to `max_grade`.
pub fn expand_product<C: Scalar>(ladder: &Ladder, max_grade: usize) -> Result<TruncatedSeries<C>> {
    if max_grade > MAX_SERIES_GRADE {
        return Err(Error::CostGuard(format!(
            "series grade {max_grade} exceeds {MAX_SERIES_GRADE}"
        )));
    }
    let mut out = TruncatedSeries::one(max_grade);
    for s in ladder.steps() {
        let t = C::from_coef(&s.t)?;
        out = out.mul(&TruncatedSeries::exp_letter(s.op.letter(), &t, max_grade));
    }
    Ok(out)
}

/// Gradewise comparison of a ladder with `e^{x(A+B)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderVerdict<C: Scalar> {
    /// Grades `1..=m` agree.
    pub ok: bool,
    /// Lowest grade (up to `m + 1`) where the expansions differ.
    pub first_defect_grade: Option<usize>,
    /// Ladder minus target at that grade; zero when there is none.
    pub defect: WordPoly<C>,
    /// Largest coefficient magnitude of the difference at each grade
    /// `0..=m+1`.
    pub defect_norms: Vec<f64>,
}

fn compare<C: Scalar>(ladder: &Ladder, m: usize, tol: f64) -> Result<OrderVerdict<C>> {
    let top = m + 1;
    if top > MAX_SERIES_GRADE {
        return Err(Error::CostGuard(format!(
            "verifying order {m} needs grade {top} > {MAX_SERIES_GRADE}"
        )));
    }
    let got = expand_product::<C>(ladder, top)?;
    let want = TruncatedSeries::<C>::exp_sum(&[0, 1], top);
    let mut first = None;
    let mut defect = WordPoly::new();
    let mut norms = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut d = got.grade(k).clone();
        for (w, c) in want.grade(k).iter() {
            d.add_term(w.clone(), -c.clone());
        }
        let norm = d.iter().map(|(_, c)| c.magnitude()).fold(0.0, f64::max);
        if !norm.is_finite() {
            return Err(Error::NonFinite(format!("defect at grade {k}")));
        }
        norms.push(norm);
        if first.is_none() && norm > tol {
            first = Some(k);
            defect = d;
        }
    }
    Ok(OrderVerdict {
        ok: first.is_none_or(|k| k > m),
        first_defect_grade: first,
        defect,
        defect_norms: norms,
    })
}

/// Exact order check; every ladder exponent must be rational.
pub fn verify_order_exact(ladder: &Ladder, m: usize) -> Result<OrderVerdict<Rational>> {
    compare::<Rational>(ladder, m, 0.0)
}

/// Floating-point order check: a grade counts as matching when every
/// coefficient of the difference is within `tol`.
pub fn verify_order_approx(ladder: &Ladder, m: usize, tol: f64) -> Result<OrderVerdict<Complex64>> {
    compare::<Complex64>(ladder, m, tol)
}
