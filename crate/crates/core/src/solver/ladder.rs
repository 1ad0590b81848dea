use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffs::{format_rational, parse_rational, ratio};
use crate::conditions::Scheme;
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    A,
    B,
}

impl Op {
    pub fn letter(self) -> u32 {
        match self {
            Op::A => 0,
            Op::B => 1,
        }
    }
}

/// Exponent of one factor: exact, real or complex.
#[derive(Clone, Debug, PartialEq)]
pub enum Coef {
    Exact(Rational),
    Real(f64),
    Complex(Complex64),
}

impl Coef {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coef::Exact(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Coef::Real(x) => Complex64::new(*x, 0.0),
            Coef::Complex(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Coef::Exact(q) => Some(q),
            _ => None,
        }
    }

    fn add(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Exact(a), Coef::Exact(b)) => Coef::Exact(a + b),
            (Coef::Complex(_), _) | (_, Coef::Complex(_)) => {
                Coef::Complex(self.to_complex() + other.to_complex())
            }
            _ => Coef::Real(self.to_complex().re + other.to_complex().re),
        }
    }

    fn mul(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Exact(a), Coef::Exact(b)) => Coef::Exact(a * b),
            (Coef::Complex(_), _) | (_, Coef::Complex(_)) => {
                Coef::Complex(self.to_complex() * other.to_complex())
            }
            _ => Coef::Real(self.to_complex().re * other.to_complex().re),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Coef::Exact(q) => q.is_zero(),
            Coef::Real(x) => *x == 0.0,
            Coef::Complex(z) => z.is_zero(),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Exact(q) => f.write_str(&format_rational(q)),
            Coef::Real(x) => write!(f, "{x}"),
            Coef::Complex(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

/// One factor `e^{t x Op}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub op: Op,
    pub t: Coef,
}

/// A composition `e^{t_1 x Op_1} e^{t_2 x Op_2} ⋯` read left to right.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Ladder {
    steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoefJson {
    Text(String),
    Number(f64),
    Pair([f64; 2]),
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    op: Op,
    t: CoefJson,
}

impl Ladder {
    pub fn new(steps: Vec<Step>) -> Self {
        Ladder { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, op: Op, t: Coef) {
        self.steps.push(Step { op, t });
    }

    /// Convenience constructor from exact `(op, n, d)` triples.
    pub fn exact(steps: &[(Op, i64, i64)]) -> Self {
        Ladder::new(
            steps
                .iter()
                .map(|&(op, n, d)| Step {
                    op,
                    t: Coef::Exact(ratio(n, d)),
                })
                .collect(),
        )
    }

    pub fn real(steps: &[(Op, f64)]) -> Self {
        Ladder::new(steps.iter().map(|&(op, t)| Step { op, t: Coef::Real(t) }).collect())
    }

    /// All exponents exact.
    pub fn is_exact(&self) -> bool {
        self.steps.iter().all(|s| s.t.as_exact().is_some())
    }

    /// Joins adjacent factors of the same operator and drops zero factors.
    pub fn merged(&self) -> Ladder {
        let mut out: Vec<Step> = Vec::new();
        for s in &self.steps {
            match out.last_mut() {
                Some(last) if last.op == s.op => last.t = last.t.add(&s.t),
                _ => out.push(s.clone()),
            }
            if out.last().is_some_and(|l| l.t.is_zero()) {
                out.pop();
            }
        }
        Ladder { steps: out }
    }

    /// Factors in reverse order.
    pub fn reversed(&self) -> Ladder {
        Ladder {
            steps: self.steps.iter().rev().cloned().collect(),
        }
    }

    /// The ladder with `x` replaced by `c x`.
    pub fn scaled(&self, c: &Coef) -> Ladder {
        Ladder {
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    op: s.op,
                    t: s.t.mul(c),
                })
                .collect(),
        }
    }

    /// `base(p_1 x) base(p_2 x) ⋯`, merged.
    pub fn compose(base: &Ladder, p: &[Coef]) -> Ladder {
        let mut steps = Vec::new();
        for c in p {
            steps.extend(base.scaled(c).steps);
        }
        Ladder { steps }.merged()
    }

    /// `F_1(x) = e^{xA} e^{xB}`.
    pub fn first_order() -> Ladder {
        Ladder::exact(&[(Op::A, 1, 1), (Op::B, 1, 1)])
    }

    /// `S_2(x) = e^{x/2 A} e^{xB} e^{x/2 A}`.
    pub fn strang() -> Ladder {
        Ladder::exact(&[(Op::A, 1, 2), (Op::B, 1, 1), (Op::A, 1, 2)])
    }

    /// Flat ladder of a scheme instance with stage parameters `p`:
    /// products of `S_2(p_j x)` for symmetric schemes, of `F_1(p_j x)` for
    /// the complex scheme, and alternating `F_1`, `F̃_1` for tilde schemes.
    pub fn from_scheme(scheme: Scheme, p: &[Coef]) -> Result<Ladder> {
        match scheme {
            Scheme::Symmetric => Ok(Ladder::compose(&Ladder::strang(), p)),
            Scheme::NonsymmetricComplex => Ok(Ladder::compose(&Ladder::first_order(), p)),
            Scheme::NonsymmetricTilde => {
                let f1 = Ladder::first_order();
                let f1r = f1.reversed();
                let mut steps = Vec::new();
                for (j, c) in p.iter().enumerate() {
                    let base = if j % 2 == 0 { &f1 } else { &f1r };
                    steps.extend(base.scaled(c).steps);
                }
                Ok(Ladder { steps }.merged())
            }
            other => Err(Error::InvalidArgument(format!(
                "scheme {} needs an explicit base formula; use Ladder::compose",
                other.name()
            ))),
        }
    }

    /// Complex stage values, stored as real where the imaginary part is 0.
    pub fn coefs_from_complex(values: &[Complex64]) -> Vec<Coef> {
        values
            .iter()
            .map(|z| {
                if z.im == 0.0 {
                    Coef::Real(z.re)
                } else {
                    Coef::Complex(*z)
                }
            })
            .collect()
    }

    /// JSON list of `{"op": "A"|"B", "t": "n/d" | float | [re, im]}`.
    pub fn to_json(&self) -> String {
        let steps: Vec<StepJson> = self
            .steps
            .iter()
            .map(|s| StepJson {
                op: s.op,
                t: match &s.t {
                    Coef::Exact(q) => CoefJson::Text(format_rational(q)),
                    Coef::Real(x) => CoefJson::Number(*x),
                    Coef::Complex(z) => CoefJson::Pair([z.re, z.im]),
                },
            })
            .collect();
        serde_json::to_string_pretty(&steps).expect("ladder serializes")
    }

    pub fn from_json(text: &str) -> Result<Ladder> {
        let steps: Vec<StepJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("ladder JSON: {e}")))?;
        let steps = steps
            .into_iter()
            .map(|s| {
                let t = match s.t {
                    CoefJson::Text(txt) => Coef::Exact(parse_rational(&txt)?),
                    CoefJson::Number(x) => Coef::Real(x),
                    CoefJson::Pair([re, im]) => Coef::Complex(Complex64::new(re, im)),
                };
                if !t.to_complex().is_finite() {
                    return Err(Error::NonFinite(format!("ladder exponent {t}")));
                }
                Ok(Step { op: s.op, t })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ladder { steps })
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|s| format!("e^{{({}) x {:?}}}", s.t, s.op))
            .collect();
        f.write_str(&parts.join(" "))
    }
}
