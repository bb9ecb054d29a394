use num::{BigInt, BigRational, One, Zero};

use crate::exactla::Matrix;

/// `C(n, j)`, zero when `j < 0` or `j > n`.
pub fn binomial(n: u64, j: i64) -> BigInt {
    if j < 0 || j as u64 > n {
        return BigInt::zero();
    }
    let j = (j as u64).min(n - j as u64);
    (0..j).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Determinant of the `(p+1)×(p+1)` matrix with entry `(r, c)` equal to
/// `C(n, k + p − r − c)`.
pub fn toeplitz_det(n: u64, p: u64, k: u64) -> BigInt {
    let size = (p + 1) as usize;
    let mut m = Matrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            let j = k as i64 + p as i64 - r as i64 - c as i64;
            m.set(r, c, BigRational::from_integer(binomial(n, j)));
        }
    }
    let d = m.det().expect("square matrix");
    debug_assert!(d.is_integer());
    d.to_integer()
}

/// `(n+p+1)!(n−k)! / (n!(n+p−k+1)!)`, the ratio `Δ^{n+1} / Δ^{n}` for
/// matrices of size `p + 1`. Requires `k ≤ n`.
pub fn recurrence_factor(n: u64, p: u64, k: u64) -> BigRational {
    assert!(k <= n, "recurrence factor needs k ≤ n");
    let fact = |m: u64| (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    BigRational::new(fact(n + p + 1) * fact(n - k), fact(n) * fact(n + p - k + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn small_determinants() {
        assert_eq!(toeplitz_det(2, 1, 1), BigInt::from(-3));
        assert_eq!(toeplitz_det(3, 1, 1), BigInt::from(-6));
        for n in 0..6 {
            for p in 0..4 {
                let d = toeplitz_det(n, p, n);
                assert!(d == BigInt::one() || d == -BigInt::one(), "n={n} p={p}: {d}");
            }
        }
    }

    #[test]
    fn recurrence_example() {
        let f = recurrence_factor(2, 1, 1);
        assert_eq!(f, BigRational::from_integer(2.into()));
        assert_eq!(
            BigRational::from_integer(toeplitz_det(3, 1, 1)),
            f * BigRational::from_integer(toeplitz_det(2, 1, 1))
        );
    }
}
