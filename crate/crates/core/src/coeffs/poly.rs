use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Rational, Result};

/// Exponent vector of a monomial in `p_1..p_r`.
pub type Exponents = Vec<u32>;

/// Polynomial in the stage parameters `p_1..p_r` with exact rational
/// coefficients. Monomials are kept sorted and zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    r: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl ParamPoly {
    pub fn zero(r: usize) -> Self {
        ParamPoly {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(r: usize, c: Rational) -> Self {
        let mut p = Self::zero(r);
        p.add_term(vec![0; r], c);
        p
    }

    /// `p_{var+1}` (zero-based variable index).
    pub fn var(r: usize, var: usize) -> Self {
        let mut e = vec![0; r];
        e[var] = 1;
        let mut p = Self::zero(r);
        p.add_term(e, Rational::one());
        p
    }

    /// `c · Π p_k^{e_k}`.
    pub fn monomial(exponents: Exponents, c: Rational) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// `Σ_k p_k^power`.
    pub fn power_sum(r: usize, power: u32) -> Self {
        let mut p = Self::zero(r);
        for k in 0..r {
            let mut e = vec![0; r];
            e[k] = power;
            p.add_term(e, Rational::one());
        }
        p
    }

    /// `Σ_k p_k - 1`.
    pub fn normalization(r: usize) -> Self {
        &Self::power_sum(r, 1) - &Self::constant(r, Rational::one())
    }

    pub fn from_terms<I>(r: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(r);
        for (e, c) in terms {
            if e.len() != r {
                return Err(Error::ShapeMismatch(format!(
                    "exponent vector of length {} in a polynomial over {r} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    pub fn add_term(&mut self, exponents: Exponents, c: Rational) {
        debug_assert_eq!(exponents.len(), self.r);
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&exponents) {
            Some(v) => {
                *v += c;
                v.is_zero()
            }
            None => {
                self.terms.insert(exponents.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of each monomial when every monomial has the same one.
    /// `None` for the zero polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.r);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.r, Rational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `∂/∂p_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.r);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c * Rational::from_integer(e[var].into()));
        }
        out
    }

    /// Substitutes `p_j -> q_{map[j]}` into a polynomial over `new_r`
    /// variables. Used for parameter ties.
    pub fn substitute_vars(&self, map: &[usize], new_r: usize) -> Result<Self> {
        if map.len() != self.r || map.iter().any(|&v| v >= new_r) {
            return Err(Error::ShapeMismatch(format!(
                "variable map {map:?} does not send {} variables into {new_r}",
                self.r
            )));
        }
        let mut out = Self::zero(new_r);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_r];
            for (j, &x) in e.iter().enumerate() {
                ne[map[j]] += x;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// `p_j -> p_{r+1-j}`.
    pub fn mirrored(&self) -> Self {
        let mut out = Self::zero(self.r);
        for (e, c) in &self.terms {
            out.add_term(e.iter().rev().copied().collect(), c.clone());
        }
        out
    }

    /// Exact value at rational parameters.
    pub fn eval_rational(&self, x: &[Rational]) -> Result<Rational> {
        self.check_len(x.len())?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                e.iter()
                    .zip(x)
                    .fold(c, |acc, (&k, &xi)| acc * xi.powi(k as i32))
            })
            .sum())
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Result<Complex64> {
        self.check_len(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                e.iter()
                    .zip(x)
                    .fold(c, |acc, (&k, &xi)| acc * xi.powu(k))
            })
            .sum())
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.r {
            return Err(Error::DimensionMismatch {
                expected: self.r,
                got: n,
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &ParamPoly) {
        assert_eq!(
            self.r, other.r,
            "polynomials over different numbers of variables"
        );
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first, then lexicographically descending exponents
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("p{}", j + 1)
                    } else {
                        format!("p{}^{}", j + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join(" "))?;
            } else {
                write!(f, "{mag} {}", vars.join(" "))?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &ParamPoly) {
        self.check_same(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &ParamPoly) {
        self.check_same(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        self.check_same(rhs);
        let mut out = ParamPoly::zero(self.r);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

/// `n/d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses `"n/d"` or `"n"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// `"n/d"`, or `"n"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
