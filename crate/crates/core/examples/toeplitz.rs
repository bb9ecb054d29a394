//! Toeplitz determinants of binomial coefficients and their recurrence in `n`.

use leflab::blowup::{recurrence_factor, toeplitz_det};
use num::BigRational;

fn main() {
    println!("Δ(3, 1, 1) = {}", toeplitz_det(3, 1, 1));
    for p in 0..=3u64 {
        let row: Vec<String> = (0..=6u64).map(|n| toeplitz_det(n, p, n.min(2)).to_string()).collect();
        println!("p = {p}, k = min(n, 2), n = 0..6: {}", row.join(" "));
    }
    let (n, p, k) = (5, 2, 3);
    let lhs = BigRational::from_integer(toeplitz_det(n + 1, p, k));
    let rhs = recurrence_factor(n, p, k) * BigRational::from_integer(toeplitz_det(n, p, k));
    println!("Δ({}, {p}, {k}) = {lhs} = {} · Δ({n}, {p}, {k}) = {rhs}", n + 1, recurrence_factor(n, p, k));
}
