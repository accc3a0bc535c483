use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, ExactInt, IntPolynomial};

/// Lagrange interpolation through `(x, y)` points, cleared over one common denominator.
///
/// The result is the unique polynomial of degree below `points.len()`; it must
/// have integer coefficients, otherwise `NonIntegerResult` is returned.
pub fn interpolate(points: &[(ExactInt, ExactInt)]) -> Result<IntPolynomial, AlgebraError> {
    let k = points.len();
    for i in 0..k {
        for j in i + 1..k {
            if points[i].0 == points[j].0 {
                return Err(AlgebraError::DuplicateNode(points[i].0.clone()));
            }
        }
    }
    if k == 0 {
        return Ok(IntPolynomial::zero());
    }

    // Π_j (λ - x_j); each basis numerator is this divided by (λ - x_i).
    let full: IntPolynomial = points.iter().map(|(x, _)| IntPolynomial::from_coeffs(vec![-x, BigInt::one()])).product();

    let mut denoms = Vec::with_capacity(k);
    for (i, (xi, _)) in points.iter().enumerate() {
        let d: BigInt = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, (xj, _))| xi - xj).product();
        denoms.push(d);
    }
    let common = denoms.iter().fold(BigInt::one(), |acc, d| acc.lcm(&d.abs()));

    let mut acc = vec![BigInt::zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let numer = synthetic_div(full.coeffs(), xi);
        let weight = yi * (&common / &denoms[i]);
        for (a, c) in acc.iter_mut().zip(&numer) {
            *a += &weight * c;
        }
    }
    let scaled = IntPolynomial::from_coeffs(acc);
    scaled.div_exact_scalar(&common).ok_or(AlgebraError::NonIntegerResult)
}

/// Quotient of a monic polynomial by `(λ - root)`, assuming `root` is a root.
fn synthetic_div(coeffs: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len();
    let mut out = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in (1..n).rev() {
        carry = &coeffs[i] + carry * root;
        out[i - 1] = carry.clone();
    }
    out
}

/// Interpolation at the consecutive nodes `0, 1, …, values.len()-1`.
pub fn interpolate_consecutive(values: &[ExactInt]) -> Result<IntPolynomial, AlgebraError> {
    let points: Vec<_> = values.iter().enumerate().map(|(i, y)| (BigInt::from(i), y.clone())).collect();
    interpolate(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(x, y)| (BigInt::from(x), BigInt::from(y))).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(interpolate(&pts(&[(0, 1), (1, 2)])).unwrap(), IntPolynomial::from_i64s(&[1, 1]));
        assert_eq!(interpolate(&pts(&[(0, 0), (1, 1), (2, 4)])).unwrap(), IntPolynomial::from_i64s(&[0, 0, 1]));
        assert_eq!(interpolate(&pts(&[(0, 1), (1, 1), (2, 1)])).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn duplicate_node() {
        assert!(matches!(interpolate(&pts(&[(1, 1), (1, 2)])), Err(AlgebraError::DuplicateNode(_))));
    }

    #[test]
    fn non_integer() {
        // Through (0,0) and (2,1): λ/2
        assert!(matches!(interpolate(&pts(&[(0, 0), (2, 1)])), Err(AlgebraError::NonIntegerResult)));
    }

    #[test]
    fn negative_and_scattered_nodes() {
        let p = IntPolynomial::from_i64s(&[7, -3, 0, 2]);
        let nodes = [-5i64, -1, 2, 9];
        let points: Vec<_> = nodes.iter().map(|&x| (BigInt::from(x), p.eval_i64(x))).collect();
        assert_eq!(interpolate(&points).unwrap(), p);
    }
}
