//! Exact arithmetic in the cyclotomic field `Q(zeta_n)`.
//!
//! Every [`Scalar`] is stored in the power basis `1, z, ..., z^(phi(n)-1)`
//! reduced modulo the `n`-th cyclotomic polynomial, so equality of values is
//! structural equality. `n = 1` gives the plain rationals.

mod field;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;
use thiserror::Error;

use crate::syntax::{self, Atom, MulOp, ParseError};

pub use field::{cyclotomic_polynomial, CyclotomicField};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("cyclotomic order must be positive, got {0}")]
    InvalidFieldOrder(u32),
    #[error("scalars live in different fields: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("'{0}' is not a scalar; only integers, fractions and z^k are allowed")]
    NotAScalar(String),
}

/// Handle to an interned cyclotomic field; cheap to copy.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec(&'static CyclotomicField);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(n={})", self.n())
    }
}

type Coeffs = SmallVec<[Rational; 4]>;

impl FieldSpec {
    pub fn new(n: u32) -> Result<Self, ScalarError> {
        Ok(FieldSpec(CyclotomicField::get(n)?))
    }

    pub fn n(&self) -> u32 {
        self.0.order()
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn zero(&self) -> Scalar {
        Scalar { field: *self, coeffs: SmallVec::from_elem(Rational::ZERO, self.degree()) }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(&self, k: i64) -> Scalar {
        self.rational(Rational::from_integer(k))
    }

    pub fn rational(&self, r: Rational) -> Scalar {
        let mut s = self.zero();
        s.coeffs[0] = r;
        s
    }

    /// `zeta_n^k`; negative `k` is allowed.
    pub fn zeta_pow(&self, k: i64) -> Scalar {
        let coeffs = self.0.zeta_power_coeffs(k).iter().map(|&c| Rational::from_integer(c)).collect();
        Scalar { field: *self, coeffs }
    }

    /// Builds a scalar from power-basis coefficients, reducing modulo `Phi_n`.
    pub fn from_coeffs(&self, coeffs: &[Rational]) -> Scalar {
        let mut s = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                s = &s + &self.zeta_pow(k as i64).scale(c);
            }
        }
        s
    }

    /// Parses the textual scalar syntax (`-1/2*z^3 + 2`, `z^-1`, `(1 + z)*z`).
    pub fn parse(&self, src: &str) -> Result<Scalar, ScalarError> {
        let expr = syntax::parse_expr(src)?;
        self.eval_expr(&expr)
    }

    pub(crate) fn eval_expr(&self, expr: &syntax::Expr) -> Result<Scalar, ScalarError> {
        let mut acc = self.zero();
        for term in &expr.terms {
            let mut t = self.one();
            for (op, f) in &term.factors {
                let mut v = match &f.atom {
                    Atom::Int(i) => self.rational(Rational::from_bigints(i.clone(), 1.into())),
                    Atom::Ident(name) if name == "z" => self.zeta_pow(1),
                    Atom::Paren(e) => self.eval_expr(e)?,
                    Atom::Ident(name) => return Err(ScalarError::NotAScalar(name.clone())),
                    Atom::Group(_) => return Err(ScalarError::NotAScalar("g[...]".into())),
                };
                if let Some(e) = f.exponent {
                    v = v.pow(e)?;
                }
                t = match op {
                    MulOp::Mul => &t * &v,
                    MulOp::Div => t.checked_div(&v)?,
                };
            }
            acc = if term.negated { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }
}

/// An exact element of `Q(zeta_n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: FieldSpec,
    coeffs: Coeffs,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Power-basis coefficients, length `phi(n)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Rational::is_zero).then(|| &self.coeffs[0])
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field.n(), other.field.n()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Scalar { field: self.field, coeffs })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Scalar { field: self.field, coeffs })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let d = self.field.degree();
        if d == 1 {
            let coeffs = SmallVec::from_elem(&self.coeffs[0] * &other.coeffs[0], 1);
            return Ok(Scalar { field: self.field, coeffs });
        }
        let mut prod: SmallVec<[Rational; 8]> = SmallVec::from_elem(Rational::ZERO, 2 * d - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] = &prod[i + j] + &(a * b);
                }
            }
        }
        let modulus = self.field.0.modulus();
        for top in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for (t, &m) in modulus[..d].iter().enumerate() {
                if m != 0 {
                    let idx = top - d + t;
                    prod[idx] = &prod[idx] - &c.mul_int(m);
                }
            }
        }
        prod.truncate(d);
        Ok(Scalar { field: self.field, coeffs: prod.into_iter().collect() })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.rational(r.recip().expect("nonzero")));
        }
        let modulus: Vec<Rational> = self.field.0.modulus().iter().map(|&c| Rational::from_integer(c)).collect();
        let a: Vec<Rational> = self.coeffs.to_vec();
        // Invariant: s_i * a == r_i (mod Phi_n).
        let (mut r0, mut r1) = (modulus, trim(a));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::ONE]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Phi_n is irreducible.
        let c = r1[0].recip().expect("irreducible modulus leaves a unit");
        let inv: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Ok(self.field.from_coeffs(&inv))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Scalar {
        let mut result = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        result
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        Scalar { field: self.field, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Smallest `d >= 1` with `self^d = 1`, if `self` is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        // Roots of unity in Q(zeta_n) are +-zeta_n^k, so their order divides 2n.
        let bound = 2 * self.field.n();
        if !self.pow_u(bound as u64).is_one() {
            return None;
        }
        divisors(bound).into_iter().find(|&d| self.pow_u(d as u64).is_one())
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            &x - &y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (vec![Rational::ZERO], rem);
    }
    let lead = den.last().expect("nonempty").recip().expect("nonzero leading coefficient");
    let mut quot = vec![Rational::ZERO; rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !(rem.len() == 1 && rem[0].is_zero()) {
        let shift = rem.len() - den.len();
        let c = rem.last().expect("nonempty") * &lead;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] = &rem[shift + j] - &(&c * d);
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(rem);
        if rem.is_empty() {
            rem.push(Rational::ZERO);
        }
    }
    (trim(quot), rem)
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            /// Panics if the operands live in different fields.
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
scalar_op!(Add, add, checked_add);
scalar_op!(Sub, sub, checked_sub);
scalar_op!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// True when the printed form is a single signed monomial, so it can be
    /// used as a coefficient without parentheses.
    pub fn is_single_term(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }
}

/// Canonical printing: nonzero terms in increasing power of `z`,
/// lowest-terms rationals, `0` for zero.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zpart = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            match zpart {
                None => write!(f, "{mag}")?,
                Some(z) if mag.is_one() => write!(f, "{z}")?,
                Some(z) => write!(f, "{mag}*{z}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.n())
    }
}

/// `(i)_q = 1 + q + ... + q^(i-1)`; `(0)_q = 0`.
pub fn quantum_integer(i: u32, q: &Scalar) -> Scalar {
    let mut sum = q.field().zero();
    let mut p = q.field().one();
    for _ in 0..i {
        sum = &sum + &p;
        p = &p * q;
    }
    sum
}

/// `(i)_q! = (1)_q (2)_q ... (i)_q`; `(0)_q! = 1`.
pub fn quantum_factorial(i: u32, q: &Scalar) -> Scalar {
    (1..=i).fold(q.field().one(), |acc, j| &acc * &quantum_integer(j, q))
}

/// True iff `q^n = 1` and `q^d != 1` for every proper divisor `d` of `n`.
pub fn is_primitive_root(q: &Scalar, n: u32) -> bool {
    if n == 0 || !q.pow_u(n as u64).is_one() {
        return false;
    }
    divisors(n).into_iter().filter(|&d| d < n).all(|d| !q.pow_u(d as u64).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u32) -> FieldSpec {
        FieldSpec::new(n).unwrap()
    }

    #[test]
    fn addition_examples() {
        let k4 = f(4);
        assert_eq!(&k4.zero() + &k4.zeta_pow(1), k4.zeta_pow(1));
        assert_eq!(&k4.zeta_pow(1) + &k4.zeta_pow(1), k4.zeta_pow(1).scale(&Rational::from_integer(2)));
        let k3 = f(3);
        assert_eq!(&k3.zeta_pow(1) + &k3.zeta_pow(2), k3.integer(-1));
    }

    #[test]
    fn multiplication_examples() {
        let k4 = f(4);
        let z = k4.zeta_pow(1);
        assert_eq!(&k4.one() * &z, z);
        assert_eq!(&z * &z, k4.integer(-1));
        let k3 = f(3);
        assert_eq!(&k3.zeta_pow(1) * &k3.zeta_pow(2), k3.one());
    }

    #[test]
    fn inverse_examples() {
        let k4 = f(4);
        assert_eq!(k4.one().inv().unwrap(), k4.one());
        assert_eq!(k4.zeta_pow(1).inv().unwrap(), -&k4.zeta_pow(1));
        let k2 = f(2);
        assert_eq!(k2.integer(-1).inv().unwrap(), k2.integer(-1));
        assert_eq!(k2.zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn inverse_of_non_unit_looking_element() {
        let k6 = f(6);
        let a = k6.parse("2 - 3*z").unwrap();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        let k12 = f(12);
        let a = k12.parse("1/3 + z^2 - 5*z^3").unwrap();
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn mismatched_fields_are_errors() {
        let a = f(3).one();
        let b = f(4).one();
        assert_eq!(a.checked_add(&b), Err(ScalarError::FieldMismatch(3, 4)));
        assert_eq!(a.checked_mul(&b), Err(ScalarError::FieldMismatch(3, 4)));
    }

    #[test]
    fn quantum_integer_examples() {
        let k2 = f(2);
        let k3 = f(3);
        assert!(quantum_integer(0, &k3.zeta_pow(1)).is_zero());
        assert!(quantum_integer(2, &k2.integer(-1)).is_zero());
        assert!(quantum_integer(3, &k3.zeta_pow(1)).is_zero());
        for i in 0..=20u32 {
            assert_eq!(quantum_integer(i, &f(1).one()), f(1).integer(i as i64));
        }
    }

    #[test]
    fn quantum_factorial_examples() {
        let k3 = f(3);
        let q = k3.zeta_pow(1);
        assert!(quantum_factorial(0, &q).is_one());
        assert_eq!(quantum_factorial(2, &q), &k3.one() + &q);
        assert!(quantum_factorial(2, &f(2).integer(-1)).is_zero());
    }

    #[test]
    fn primitive_root_examples() {
        let k2 = f(2);
        assert!(is_primitive_root(&k2.integer(-1), 2));
        assert!(!is_primitive_root(&k2.one(), 2));
        let k4 = f(4);
        assert!(!is_primitive_root(&k4.zeta_pow(2), 4));
        assert!(is_primitive_root(&k4.zeta_pow(3), 4));
    }

    #[test]
    fn multiplicative_orders() {
        let k3 = f(3);
        assert_eq!(k3.zeta_pow(1).multiplicative_order(), Some(3));
        assert_eq!((-&k3.zeta_pow(1)).multiplicative_order(), Some(6));
        assert_eq!(k3.integer(2).multiplicative_order(), None);
        assert_eq!(k3.one().multiplicative_order(), Some(1));
    }

    #[test]
    fn printing_is_canonical() {
        let k6 = f(6);
        let a = k6.parse("-1/2*z^3 + 2").unwrap();
        // z^3 = -1 in Q(zeta_6)
        assert_eq!(a.to_string(), "5/2");
        let k5 = f(5);
        let b = k5.parse("-1/2*z^3 + 2").unwrap();
        assert_eq!(b.to_string(), "2 - 1/2*z^3");
        assert_eq!(k5.parse(&b.to_string()).unwrap(), b);
        assert_eq!(k5.zero().to_string(), "0");
        assert_eq!((-&k5.zeta_pow(1)).to_string(), "-z");
        assert_eq!(f(3).zeta_pow(2).to_string(), "-1 - z");
    }

    #[test]
    fn parse_rejects_non_scalars() {
        let k3 = f(3);
        assert!(matches!(k3.parse("w1"), Err(ScalarError::NotAScalar(_))));
        assert!(matches!(k3.parse("1/0"), Err(ScalarError::DivisionByZero)));
        assert!(matches!(k3.parse("1 +"), Err(ScalarError::Parse(_))));
        assert_eq!(k3.parse("z^-1").unwrap(), k3.zeta_pow(2));
        assert_eq!(k3.parse("(1 + z)*z").unwrap(), k3.integer(-1));
    }
}
