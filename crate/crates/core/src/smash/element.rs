use std::fmt;

use crate::scalars::Scalar;

use super::SmashMonomial;

/// Finite linear combination of [`SmashMonomial`]s in canonical form: terms
/// sorted by monomial order, no repeated monomials, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SmashElement {
    terms: Vec<(SmashMonomial, Scalar)>,
}

impl SmashElement {
    pub fn zero() -> Self {
        SmashElement { terms: Vec::new() }
    }

    pub fn from_monomial(m: SmashMonomial, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SmashElement { terms: vec![(m, c)] }
        }
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms(mut terms: Vec<(SmashMonomial, Scalar)>) -> Self {
        if terms.len() > 1 {
            terms.sort_by(|a, b| a.0.cmp(&b.0));
        }
        let mut out: Vec<(SmashMonomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
        SmashElement { terms: out }
    }

    pub fn terms(&self) -> &[(SmashMonomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(SmashMonomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `m` (`None` when absent).
    pub fn coefficient(&self, m: &SmashMonomial) -> Option<&Scalar> {
        self.terms.binary_search_by(|(x, _)| x.cmp(m)).ok().map(|i| &self.terms[i].1)
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        // merge of two sorted lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        SmashElement { terms: out }
    }

    pub fn neg(&self) -> SmashElement {
        SmashElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> SmashElement {
        if s.is_zero() {
            return Self::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        SmashElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Applies a coefficient-wise map on monomials that keeps the order
    /// (used for diagonal scalings).
    pub fn map_coefficients(&self, mut f: impl FnMut(&SmashMonomial, &Scalar) -> Scalar) -> SmashElement {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(m, c);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        SmashElement { terms }
    }

    /// Maximum `|alpha|` over the support, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, m: &SmashMonomial, c: &Scalar) -> fmt::Result {
    let body = (!m.is_one()).then(|| m.to_string());
    write_signed_term(f, first, c, body.as_deref())
}

/// Writes `c * body` as one term of a sum: a single-term negative coefficient
/// becomes a ` - ` separator, unit coefficients are dropped, and multi-term
/// coefficients are parenthesized. `body = None` writes the bare scalar.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Scalar,
    body: Option<&str>,
) -> fmt::Result {
    let neg = c.is_single_term() && c.to_string().starts_with('-');
    let mag = if neg { -c } else { c.clone() };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    match body {
        None => write!(f, "{mag}"),
        Some(b) if mag.is_one() => write!(f, "{b}"),
        Some(b) if mag.is_single_term() => write!(f, "{mag} * {b}"),
        Some(b) => write!(f, "({mag}) * {b}"),
    }
}

/// Canonical form `c * w1^a1*...*wk^ak * g[(e1,...,em)]`, unit coefficients,
/// unit exponents and identity group elements omitted, terms in monomial
/// order joined by ` + ` (or ` - ` for a negative single-term coefficient).
impl fmt::Display for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_term(f, i == 0, m, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SmashElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
