//! Decomposition schemes and their order conditions.
//!
//! For a scheme and target order `m`, the condition set `X_m` is a family of
//! multiplicity maps `{n_j}` over the grades `Λ` the scheme's building block
//! leaves uncorrected. Each multiset names a block of coefficients; inside a
//! block only the Lyndon arrangements of the indices are independent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::lyndon::lyndon_index_sequences;
use crate::{Error, Result};

/// Which family of product formulas is being constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// `F_1(p_1 x) F_1(p_2 x) ... F_1(p_r x)`.
    NonsymmetricComplex,
    /// `F_1(p_1 x) F̃_1(p_2 x) F_1(p_3 x) ...` with `F̃_1` the reversed product.
    NonsymmetricTilde,
    /// `S_2(p_1 x) ... S_2(p_r x)` with `p_{r+1-j} = p_j`.
    Symmetric,
    /// `F_{m-l}(p_1 x) ... F_{m-l}(p_r x)`.
    Recursive { l: usize },
    /// `S_{2k-2l}(p_1 x) ... S_{2k-2l}(p_r x)` for order `2k-1` or `2k`.
    RecursiveSymmetric { l: usize },
    /// `F_{m-l}(p_1 x) F̃_{m-l}(p_2 x) ...`.
    RecursiveTilde { l: usize },
}

impl Scheme {
    pub fn name(&self) -> String {
        match self {
            Scheme::NonsymmetricComplex => "nonsymmetric".into(),
            Scheme::NonsymmetricTilde => "tilde".into(),
            Scheme::Symmetric => "symmetric".into(),
            Scheme::Recursive { l } => format!("recursive:{l}"),
            Scheme::RecursiveSymmetric { l } => format!("recursive-symmetric:{l}"),
            Scheme::RecursiveTilde { l } => format!("recursive-tilde:{l}"),
        }
    }

    /// Symmetric kinds: only odd grades, stage parameters mirrored.
    pub fn is_symmetric(&self) -> bool {
        matches!(self, Scheme::Symmetric | Scheme::RecursiveSymmetric { .. })
    }

    /// Tilde kinds: even stages use the reversed building block, so
    /// `R_{jn} = (-1)^{(j-1)(n-1)} R_n`.
    pub fn is_tilde(&self) -> bool {
        matches!(self, Scheme::NonsymmetricTilde | Scheme::RecursiveTilde { .. })
    }

    fn invalid(&self, order: usize, reason: impl Into<String>) -> Error {
        Error::InvalidOrder {
            scheme: self.name(),
            order,
            reason: reason.into(),
        }
    }

    /// The effective odd order for symmetric kinds (`X_{2k} = X_{2k-1}`),
    /// the order itself otherwise.
    pub fn effective_order(&self, m: usize) -> usize {
        if self.is_symmetric() && m.is_multiple_of(2) {
            m - 1
        } else {
            m
        }
    }

    /// The grades `Λ` that carry parameters, and the admissible total
    /// weights of a condition multiset.
    fn layout(&self, m: usize) -> Result<(Vec<u32>, Vec<usize>)> {
        if m == 0 {
            return Err(self.invalid(m, "order must be positive"));
        }
        let mm = self.effective_order(m);
        match *self {
            Scheme::NonsymmetricComplex | Scheme::NonsymmetricTilde => {
                Ok(((1..=mm as u32).collect(), (1..=mm).collect()))
            }
            Scheme::Recursive { l } | Scheme::RecursiveTilde { l } => {
                if l == 0 || l >= mm {
                    return Err(self.invalid(m, format!("need 1 <= l <= m-1, got l = {l}")));
                }
                let mut grades = vec![1u32];
                grades.extend((mm - l + 1) as u32..=mm as u32);
                Ok((grades, (1..=mm).collect()))
            }
            Scheme::Symmetric => {
                if mm < 1 {
                    return Err(self.invalid(m, "symmetric orders start at 1"));
                }
                let grades = (1..=mm as u32).step_by(2).collect();
                Ok((grades, (3..=mm).step_by(2).collect()))
            }
            Scheme::RecursiveSymmetric { l } => {
                let k = mm.div_ceil(2);
                if l == 0 || l >= k {
                    return Err(self.invalid(
                        m,
                        format!("need 1 <= l <= {} for this order, got l = {l}", k.saturating_sub(1)),
                    ));
                }
                let lowest = 2 * k - 2 * l + 1;
                let mut grades = vec![1u32];
                grades.extend((lowest as u32..=mm as u32).step_by(2));
                Ok((grades, (lowest..=mm).step_by(2).collect()))
            }
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, l) = match s.split_once(':') {
            Some((k, l)) => {
                let l = l
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad recursion depth in {s:?}: {e}")))?;
                (k, Some(l))
            }
            None => (s, None),
        };
        let need_l = |l: Option<usize>| {
            l.ok_or_else(|| Error::Parse(format!("scheme {kind:?} needs a depth, e.g. {kind}:2")))
        };
        match (kind, l) {
            ("nonsymmetric" | "complex" | "nonsymmetric-complex", None) => {
                Ok(Scheme::NonsymmetricComplex)
            }
            ("tilde" | "nonsymmetric-tilde", None) => Ok(Scheme::NonsymmetricTilde),
            ("symmetric", None) => Ok(Scheme::Symmetric),
            ("recursive", l) => Ok(Scheme::Recursive { l: need_l(l)? }),
            ("recursive-symmetric", l) => Ok(Scheme::RecursiveSymmetric { l: need_l(l)? }),
            ("recursive-tilde", l) => Ok(Scheme::RecursiveTilde { l: need_l(l)? }),
            _ => Err(Error::Parse(format!("unknown scheme {s:?}"))),
        }
    }
}

/// Multiplicities `n_j` of the correction operators `R_j` in one block of
/// conditions. Zero multiplicities are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionMultiset(BTreeMap<u32, usize>);

impl ConditionMultiset {
    pub fn new(content: BTreeMap<u32, usize>) -> Self {
        ConditionMultiset(content.into_iter().filter(|&(_, n)| n > 0).collect())
    }

    pub fn from_pairs(pairs: &[(u32, usize)]) -> Self {
        Self::new(pairs.iter().copied().collect())
    }

    /// Content of an index sequence.
    pub fn of_indices(indices: &[u32]) -> Self {
        let mut m = BTreeMap::new();
        for &i in indices {
            *m.entry(i).or_insert(0) += 1;
        }
        ConditionMultiset(m)
    }

    pub fn content(&self) -> &BTreeMap<u32, usize> {
        &self.0
    }

    pub fn multiplicity(&self, grade: u32) -> usize {
        self.0.get(&grade).copied().unwrap_or(0)
    }

    /// `n_1 + 2 n_2 + 3 n_3 + ...`
    pub fn weight(&self) -> usize {
        self.0.iter().map(|(&j, &n)| j as usize * n).sum()
    }

    /// Number of operator factors, `n_1 + n_2 + ...`.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.0.values().map(|&n| n as u64).collect()
    }

    /// `n_1! n_2! ...`
    pub fn factorial_product(&self) -> u128 {
        self.0
            .values()
            .map(|&n| (1..=n as u128).product::<u128>())
            .product()
    }
}

impl fmt::Display for ConditionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(j, n)| format!("n{j}={n}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The multisets of `X_m` for the scheme, sorted by `(weight, length,
/// content)`.
pub fn condition_multisets(scheme: Scheme, m: usize) -> Result<Vec<ConditionMultiset>> {
    let (grades, weights) = scheme.layout(m)?;
    let max_weight = *weights.iter().max().unwrap_or(&0);
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    enumerate(&grades, 0, 0, max_weight, &mut current, &mut |content, w| {
        let has_higher = content.keys().any(|&j| j > 1);
        if has_higher && weights.contains(&w) {
            out.push(ConditionMultiset(content.clone()));
        }
    });
    out.sort_by(|a, b| {
        (a.weight(), a.len(), &a.0).cmp(&(b.weight(), b.len(), &b.0))
    });
    Ok(out)
}

fn enumerate(
    grades: &[u32],
    pos: usize,
    weight: usize,
    max_weight: usize,
    current: &mut BTreeMap<u32, usize>,
    visit: &mut dyn FnMut(&BTreeMap<u32, usize>, usize),
) {
    if pos == grades.len() {
        visit(current, weight);
        return;
    }
    let g = grades[pos] as usize;
    let mut n = 0;
    while weight + n * g <= max_weight {
        if n > 0 {
            current.insert(grades[pos], n);
        }
        enumerate(grades, pos + 1, weight + n * g, max_weight, current, visit);
        n += 1;
    }
    current.remove(&grades[pos]);
}

/// The minimal independent index sequences `(i_1, ..., i_n)` whose
/// coefficients must vanish, ordered by `(total grade, length, lexicographic)`.
///
/// The normalization `g(1) = 1` is not part of this list.
pub fn determining_indices(scheme: Scheme, m: usize) -> Result<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<u32>> = condition_multisets(scheme, m)?
        .iter()
        .flat_map(|ms| lyndon_index_sequences(ms.content()))
        .collect();
    out.sort_by(|a, b| {
        let key = |v: &Vec<u32>| (v.iter().sum::<u32>(), v.len());
        key(a).cmp(&key(b)).then_with(|| a.cmp(b))
    });
    Ok(out)
}

/// `g(1,2,3)` style label.
pub fn label(indices: &[u32]) -> String {
    let parts: Vec<String> = indices.iter().map(u32::to_string).collect();
    format!("g({})", parts.join(","))
}
