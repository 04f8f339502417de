//! Exact Gaussian elimination over the cyclotomic field.

use crate::scalars::Scalar;

/// Row rank of a (possibly non-square) matrix.
pub(crate) fn rank(mut m: Vec<Vec<Scalar>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for c in col..cols {
                let v = &m[i][c] - &(&f * &m[r][c]);
                m[i][c] = v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;

    #[test]
    fn ranks() {
        let f = FieldSpec::new(3).unwrap();
        let z = f.zeta_pow(1);
        let full = vec![vec![f.one(), z.clone()], vec![z.clone(), f.one()]];
        assert_eq!(rank(full), 2);
        let deficient = vec![vec![f.one(), z.clone()], vec![z.clone(), &z * &z], vec![f.zero(), f.zero()]];
        assert_eq!(rank(deficient), 1);
        assert_eq!(rank(Vec::new()), 0);
    }
}
