use std::fmt;

use smallvec::SmallVec;

use super::GroupElement;

/// Basis element `w_1^a_1 ... w_k^a_k g` of `S_q(V) # G`: variables in
/// increasing index order, group element rightmost.
///
/// The derived order compares exponent vectors lexicographically, then group
/// exponents; this is the canonical term order of [`super::SmashElement`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmashMonomial {
    pub alpha: SmallVec<[u32; 6]>,
    pub g: GroupElement,
}

impl SmashMonomial {
    pub fn new(alpha: &[u32], g: GroupElement) -> Self {
        SmashMonomial { alpha: SmallVec::from_slice(alpha), g }
    }

    pub fn one(k: usize, m: usize) -> Self {
        SmashMonomial { alpha: SmallVec::from_elem(0, k), g: GroupElement::identity(m) }
    }

    /// `|alpha|`, the polynomial degree.
    pub fn degree(&self) -> u32 {
        self.alpha.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.alpha.iter().all(|&a| a == 0) && self.g.is_identity()
    }

    /// The letters `w_1 (a_1 times) ... w_k (a_k times) g`; the group letter is
    /// omitted when `g` is the identity.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.degree() as usize + 1);
        for (i, &a) in self.alpha.iter().enumerate() {
            out.extend(std::iter::repeat_n(Letter::W(i), a as usize));
        }
        if !self.g.is_identity() {
            out.push(Letter::G(self.g.clone()));
        }
        out
    }
}

impl fmt::Display for SmashMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote_w = false;
        for (i, &a) in self.alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if wrote_w {
                write!(f, "*")?;
            }
            wrote_w = true;
            if a == 1 {
                write!(f, "w{}", i + 1)?;
            } else {
                write!(f, "w{}^{}", i + 1, a)?;
            }
        }
        if !self.g.is_identity() {
            if wrote_w {
                write!(f, " * ")?;
            }
            write!(f, "{}", self.g)?;
        } else if !wrote_w {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SmashMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A generator letter of the free algebra `T(V) # G`. Variables are
/// zero-based: `W(0)` is `w_1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    W(usize),
    G(GroupElement),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::W(i) => write!(f, "w{}", i + 1),
            Letter::G(g) => write!(f, "{g}"),
        }
    }
}

/// Prints a word as `[w2, w1, g[(1,0)]]`.
pub fn format_word(word: &[Letter]) -> String {
    let parts: Vec<String> = word.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
