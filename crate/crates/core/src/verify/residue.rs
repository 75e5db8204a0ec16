//! The residue identity behind the `[x^+, x^-]` constant.
//!
//! For `ω_s = z^{s-1} Π_{I_1} (1 - q^{-1}z/a_j)/(1 - z/a_j) Π_{I_2} (1 - qz/a_j)/(1 - z/a_j) dz`
//! the residues at `0` and `∞` are read off truncated expansions, while the
//! right-hand side is a direct sum over the finite poles.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalars::{lambda_z_values, Field, ScalarError};

/// `q` and the pole parameters `a_j`, split as `I_1 = a[..split]`,
/// `I_2 = a[split..]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResiduePoint<E> {
    pub q: E,
    pub a: Vec<E>,
    pub split: usize,
}

impl<E: Clone> ResiduePoint<E> {
    /// Draws `q` and `n1 + n2` parameters; rejects `q ∈ {0, ±1}`, zero or
    /// coincident `a_j`.
    pub fn sample<F: Field<Elem = E>>(
        f: &F,
        n1: usize,
        n2: usize,
        seed: u64,
    ) -> Result<Self, ScalarError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const BUDGET: usize = 64;
        'outer: for _ in 0..BUDGET {
            let q = f.random(&mut rng);
            if f.is_zero(&q) || f.is_one(&q) || f.is_zero(&f.add(&q, &f.one())) {
                continue;
            }
            let mut a: Vec<E> = Vec::with_capacity(n1 + n2);
            for _ in 0..n1 + n2 {
                let v = f.random(&mut rng);
                if f.is_zero(&v) || a.iter().any(|u| f.is_zero(&f.sub(u, &v))) {
                    continue 'outer;
                }
                a.push(v);
            }
            return Ok(ResiduePoint { q, a, split: n1 });
        }
        Err(ScalarError::Sampling(BUDGET))
    }

    /// Numerator constant for parameter `j`: `q^{-1}` on `I_1`, `q` on `I_2`.
    fn c<F: Field<Elem = E>>(&self, f: &F, j: usize) -> E {
        if j < self.split {
            f.inv(&self.q).expect("q is a unit")
        } else {
            self.q.clone()
        }
    }
}

/// `(res_0 ω_s + res_∞ ω_s) / (1 - q^{-1})`.
pub fn residue_lhs<F: Field>(f: &F, pt: &ResiduePoint<F::Elem>, s: i64) -> F::Elem {
    let m = s.unsigned_abs() as usize;
    let inv = |v: &F::Elem| f.inv(v).expect("sampled values are units");
    let res0 = if s <= 0 {
        // f(z) = Π (1 - (c_j/a_j) z) / (1 - z/a_j)
        let factors: Vec<_> = (0..pt.a.len())
            .flat_map(|j| {
                let ai = inv(&pt.a[j]);
                [(f.mul(&pt.c(f, j), &ai), 1), (ai, -1)]
            })
            .collect();
        lambda_z_values(f, &factors, m)[m].clone()
    } else {
        f.zero()
    };
    let res_inf = if s >= 0 {
        // f(z) = Π c_j (1 - (a_j/c_j) u) / (1 - a_j u), u = 1/z
        let mut pre = f.one();
        let mut factors = Vec::new();
        for j in 0..pt.a.len() {
            let c = pt.c(f, j);
            factors.push((f.mul(&pt.a[j], &inv(&c)), 1));
            factors.push((pt.a[j].clone(), -1));
            pre = f.mul(&pre, &c);
        }
        f.neg(&f.mul(&pre, &lambda_z_values(f, &factors, m)[m]))
    } else {
        f.zero()
    };
    let denom = f.sub(&f.one(), &inv(&pt.q));
    f.mul(&f.add(&res0, &res_inf), &inv(&denom))
}

/// The two-sum right-hand side, evaluated at the finite poles.
pub fn residue_rhs<F: Field>(f: &F, pt: &ResiduePoint<F::Elem>, s: i64) -> F::Elem {
    let inv = |v: &F::Elem| f.inv(v).expect("sampled values are units");
    let mut total = f.zero();
    for i in 0..pt.a.len() {
        let ai = &pt.a[i];
        let mut term = f.pow(ai, s).expect("a_i is a unit");
        for j in 0..pt.a.len() {
            if j == i {
                continue;
            }
            let r = f.mul(ai, &inv(&pt.a[j]));
            let num = f.sub(&f.one(), &f.mul(&pt.c(f, j), &r));
            let den = f.sub(&f.one(), &r);
            term = f.mul(&term, &f.mul(&num, &inv(&den)));
        }
        if i >= pt.split {
            term = f.neg(&f.mul(&pt.q, &term));
        }
        total = f.add(&total, &term);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{PrimeField, RationalField};
    use num_rational::BigRational;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn single_pole_in_second_block() {
        let f = RationalField::default();
        let pt = ResiduePoint {
            q: rat(5),
            a: vec![rat(3)],
            split: 0,
        };
        // res_0 = 1, res_∞ = -q, so the quotient is -q
        assert_eq!(residue_lhs(&f, &pt, 0), rat(-5));
        assert_eq!(residue_rhs(&f, &pt, 0), rat(-5));
    }

    #[test]
    fn single_pole_in_first_block() {
        let f = RationalField::default();
        let pt = ResiduePoint {
            q: rat(5),
            a: vec![rat(3)],
            split: 1,
        };
        assert_eq!(residue_lhs(&f, &pt, 0), rat(1));
        assert_eq!(residue_rhs(&f, &pt, 0), rat(1));
    }

    #[test]
    fn empty_product_has_no_net_residue() {
        let f = RationalField::default();
        let pt = ResiduePoint {
            q: rat(5),
            a: vec![],
            split: 0,
        };
        for s in -3..=3 {
            assert_eq!(residue_lhs(&f, &pt, s), rat(0), "s = {s}");
        }
    }

    #[test]
    fn random_instances_agree() {
        let f = PrimeField::mersenne61();
        for (n1, n2) in [(2, 1), (0, 3), (3, 3), (1, 4)] {
            for s in -3..=3 {
                let pt = ResiduePoint::sample(&f, n1, n2, (n1 * 10 + n2) as u64).unwrap();
                assert_eq!(
                    residue_lhs(&f, &pt, s),
                    residue_rhs(&f, &pt, s),
                    "{n1},{n2},{s}"
                );
            }
        }
    }
}
