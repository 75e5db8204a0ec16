use num_bigint::BigInt;
use proptest::prelude::*;
use qtor_core::fock::{addable_char, h_char, removable_char};
use qtor_core::scalars::{eval_det, eval_lambda};
use qtor_core::young::{enumerate, neighbors, Dir};
use qtor_core::{Character, Field, GammaWeight, ModelConfig, Monomial, ParamPoint, RationalField};

const N: u32 = 3;
const W: usize = 2;

fn config() -> ModelConfig {
    ModelConfig::new(N, vec![0, 1]).unwrap()
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (
        -2i32..=2,
        -2i32..=2,
        prop::collection::vec(-1i32..=1, W),
        0..N as i64,
    )
        .prop_map(|(dq, dt, dx, s)| Monomial {
            dq,
            dt,
            dx,
            s: GammaWeight::new(s, N),
        })
}

fn character() -> impl Strategy<Value = Character> {
    prop::collection::vec((monomial(), -2i64..=2), 0..5).prop_map(|terms| {
        Character::from_terms(N, W, terms.into_iter().map(|(m, c)| (m, BigInt::from(c))))
    })
}

/// Characters whose monomials are torus-only and never evaluate to 1 at the test point.
fn torus_character() -> impl Strategy<Value = Character> {
    prop::collection::vec(
        (
            (1i32..=2, -1i32..=1, prop::collection::vec(-1i32..=1, W)),
            -2i64..=2,
        ),
        0..4,
    )
    .prop_map(|terms| {
        Character::from_terms(
            N,
            W,
            terms.into_iter().map(|((dq, dt, dx), c)| {
                (
                    Monomial {
                        dq,
                        dt,
                        dx,
                        s: GammaWeight::new(0, N),
                    },
                    BigInt::from(c),
                )
            }),
        )
    })
}

fn point() -> ParamPoint<RationalField> {
    let f = RationalField::default();
    ParamPoint {
        q: f.from_i64(5),
        t: f.from_i64(7),
        x: vec![f.from_i64(3), f.from_i64(11)],
        field: f,
        seed: 0,
    }
}

/// Number of `w`-tuples of partitions with total size at most `max`.
fn multipartition_count(w: usize, max: usize) -> usize {
    let mut p = vec![0usize; max + 1];
    p[0] = 1;
    for part in 1..=max {
        for s in part..=max {
            p[s] += p[s - part];
        }
    }
    let mut acc = vec![0usize; max + 1];
    acc[0] = 1;
    for _ in 0..w {
        let mut next = vec![0usize; max + 1];
        for i in 0..=max {
            for j in 0..=max - i {
                next[i + j] += acc[i] * p[j];
            }
        }
        acc = next;
    }
    acc.iter().sum()
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in character(), b in character(), c in character()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn dim_is_a_ring_map(a in character(), b in character()) {
        prop_assert_eq!((&a * &b).dim(), a.dim() * b.dim());
        prop_assert_eq!((&a + &b).dim(), a.dim() + b.dim());
    }

    #[test]
    fn dual_is_an_involutive_ring_map(a in character(), b in character()) {
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!((&a * &b).dual(), &a.dual() * &b.dual());
        prop_assert_eq!((&a - &b).dual(), &a.dual() - &b.dual());
    }

    #[test]
    fn isotypic_parts_reassemble(a in character()) {
        let cfg = config();
        let mut total = cfg.zero();
        for k in 0..N as i64 {
            let part = a.isotypic(cfg.weight(k));
            prop_assert!(part.is_torus_character());
            total = &total + &part.twist(cfg.weight(k));
        }
        prop_assert_eq!(total, a);
    }

    #[test]
    fn lambda_and_det_are_exponential(a in torus_character(), b in torus_character()) {
        let p = point();
        let f = &p.field;
        prop_assert_eq!(
            eval_lambda(&(&a + &b), &p).unwrap(),
            f.mul(&eval_lambda(&a, &p).unwrap(), &eval_lambda(&b, &p).unwrap())
        );
        prop_assert_eq!(
            eval_det(&(&a + &b), &p).unwrap(),
            f.mul(&eval_det(&a, &p).unwrap(), &eval_det(&b, &p).unwrap())
        );
        prop_assert_eq!(
            eval_det(&a.dual(), &p).unwrap(),
            f.inv(&eval_det(&a, &p).unwrap()).unwrap()
        );
    }

    /// `Λ(E) = (-1)^{rk E} D(E) Λ(E^*)`.
    #[test]
    fn lambda_duality(a in torus_character()) {
        let p = point();
        let f = &p.field;
        let mut rhs = f.mul(&eval_det(&a, &p).unwrap(), &eval_lambda(&a.dual(), &p).unwrap());
        if a.dim_i64() % 2 != 0 {
            rhs = f.neg(&rhs);
        }
        prop_assert_eq!(eval_lambda(&a, &p).unwrap(), rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn up_and_down_are_adjacent(idx in 0usize..200, k in 0..N as i64) {
        let cfg = config();
        let all = enumerate(&cfg, 5);
        let lam = &all[idx % all.len()];
        let kw = cfg.weight(k);
        for (big, cell) in neighbors(lam, &cfg, kw, Dir::Up) {
            prop_assert_eq!(cell.residue(&cfg), kw);
            prop_assert_eq!(big.size(), lam.size() + 1);
            let back: Vec<_> = neighbors(&big, &cfg, kw, Dir::Down).into_iter().map(|(m, _)| m).collect();
            prop_assert!(back.contains(lam));
        }
        for (small, _) in neighbors(lam, &cfg, kw, Dir::Down) {
            let forth: Vec<_> = neighbors(&small, &cfg, kw, Dir::Up).into_iter().map(|(m, _)| m).collect();
            prop_assert!(forth.contains(lam));
        }
    }

    #[test]
    fn boundary_identity_on_random_fixed_points(idx in 0usize..500) {
        let cfg = config();
        let all = enumerate(&cfg, 6);
        let lam = &all[idx % all.len()];
        let qt = cfg.qt_monomial(1, 1, 0);
        let expected = &addable_char(&cfg, lam) - &(&qt * &removable_char(&cfg, lam));
        prop_assert_eq!(h_char(&cfg, lam), expected);
    }
}

#[test]
fn enumeration_counts_follow_the_generating_function() {
    for (n, colors) in [(3, vec![0]), (3, vec![0, 1]), (4, vec![0, 2, 3])] {
        let cfg = ModelConfig::new(n, colors.clone()).unwrap();
        for max in 0..=5u32 {
            assert_eq!(
                enumerate(&cfg, max).len(),
                multipartition_count(colors.len(), max as usize),
                "n={n} colors={colors:?} N={max}"
            );
        }
    }
}
