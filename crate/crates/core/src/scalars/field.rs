//! Cyclotomic fields `Q(zeta_n) = Q[x] / Phi_n(x)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::ScalarError;

/// Data shared by every scalar of one field: the order `n`, the degree
/// `phi(n)`, the monic integer cyclotomic polynomial, and the reduced
/// power-basis images of `zeta^k` for `0 <= k < n`.
pub struct CyclotomicField {
    n: u32,
    degree: usize,
    modulus: Vec<i64>,
    zeta_powers: Vec<Vec<i64>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    /// Returns the interned field for `n`. Fields live for the whole process.
    pub fn get(n: u32) -> Result<&'static CyclotomicField, ScalarError> {
        if n == 0 {
            return Err(ScalarError::InvalidFieldOrder(n));
        }
        static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
        let mut reg = REGISTRY.get_or_init(Default::default).lock().unwrap();
        if let Some(f) = reg.get(&n) {
            return Ok(f);
        }
        let field: &'static CyclotomicField = Box::leak(Box::new(CyclotomicField::build(n)));
        reg.insert(n, field);
        Ok(field)
    }

    fn build(n: u32) -> CyclotomicField {
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let mut zeta_powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            zeta_powers.push(cur.clone());
            // multiply by x and reduce with the monic modulus
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1] - top * modulus[i];
            }
            cur[0] = -top * modulus[0];
        }
        CyclotomicField { n, degree, modulus, zeta_powers }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// `phi(n)`, the length of every coefficient vector.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Phi_n`, lowest degree first, leading coefficient 1.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub(crate) fn zeta_power_coeffs(&self, k: i64) -> &[i64] {
        let r = k.rem_euclid(self.n as i64) as usize;
        &self.zeta_powers[r]
    }
}

/// `Phi_n` with integer coefficients, computed as `(x^n - 1)` divided by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_monic(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_power_table_wraps() {
        let f = CyclotomicField::get(3).unwrap();
        assert_eq!(f.zeta_power_coeffs(0), &[1, 0]);
        assert_eq!(f.zeta_power_coeffs(2), &[-1, -1]);
        assert_eq!(f.zeta_power_coeffs(-1), &[-1, -1]);
        assert_eq!(f.zeta_power_coeffs(3), &[1, 0]);
    }

    #[test]
    fn zero_order_is_rejected() {
        assert!(CyclotomicField::get(0).is_err());
    }
}
