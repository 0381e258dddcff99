//! "Not both in May" as a sum over how many of the two were born in May,
//! and what happens if the binomial coefficient is left out.
//!
//!     cargo run --example binomial_decomposition

use eventprob::exact::{binomial_coefficient, binomial_term};
use eventprob::Rational;

fn main() {
    let may = Rational::frac(1, 12);
    let n = 2;
    let mut total = Rational::zero();
    for k in 0..n {
        let term = binomial_term(k, n, &may).unwrap();
        println!("k = {k} in May: C({n},{k}) (1/12)^{k} (11/12)^{} = {term}", n - k);
        total = total + term;
    }
    println!("not both in May: {total}");
    println!("complement of both: {}", Rational::one() - binomial_term(n, n, &may).unwrap());

    let dropped: Rational = (0..n).map(|k| may.pow(k as u32) * may.complement().pow((n - k) as u32)).sum();
    println!("without C(n,k): {dropped} (C(2,1) = {})", binomial_coefficient(n, 1));

    for n in [1, 5, 12] {
        let sum: Rational = (0..=n).map(|k| binomial_term(k, n, &may).unwrap()).sum();
        println!("n = {n}: terms sum to {sum}");
    }
}
