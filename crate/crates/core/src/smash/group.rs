use std::fmt;

use smallvec::SmallVec;

/// Element of `Z_{n_1} x ... x Z_{n_m}`, stored as reduced exponents of the
/// standard generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: SmallVec<[u32; 4]>,
}

impl GroupElement {
    pub fn identity(m: usize) -> Self {
        GroupElement { exps: SmallVec::from_elem(0, m) }
    }

    /// Reduces each exponent modulo the matching order.
    pub fn from_exponents(exps: &[i64], orders: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), orders.len());
        GroupElement { exps: exps.iter().zip(orders).map(|(&e, &n)| e.rem_euclid(n as i64) as u32).collect() }
    }

    pub fn generator(j: usize, orders: &[u32]) -> Self {
        let mut g = Self::identity(orders.len());
        g.exps[j] = 1 % orders[j];
        g
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &GroupElement, orders: &[u32]) -> GroupElement {
        GroupElement { exps: self.exps.iter().zip(&other.exps).zip(orders).map(|((a, b), n)| (a + b) % n).collect() }
    }

    pub fn inverse(&self, orders: &[u32]) -> GroupElement {
        GroupElement { exps: self.exps.iter().zip(orders).map(|(a, n)| (n - a) % n).collect() }
    }

    /// Every element of the group, in increasing (lexicographic) order.
    pub fn all(orders: &[u32]) -> Vec<GroupElement> {
        let mut out = vec![Self::identity(orders.len())];
        for (j, &n) in orders.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..n).map(move |e| {
                        let mut h = g.clone();
                        h.exps[j] = e;
                        h
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g[(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")]")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all = GroupElement::all(&[2, 3]);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn inverse_and_product() {
        let orders = [3, 4];
        let g = GroupElement::from_exponents(&[1, -1], &orders);
        assert_eq!(g.exponents(), &[1, 3]);
        assert!(g.mul(&g.inverse(&orders), &orders).is_identity());
        assert_eq!(g.to_string(), "g[(1,3)]");
    }
}
