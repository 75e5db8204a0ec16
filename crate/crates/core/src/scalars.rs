//! Exact scalar backends and evaluation of torus characters.
//!
//! Identities are checked by evaluating rational functions of `q, t, X_a` at
//! random points of a large prime field (or at random rationals). A wrong
//! identity of bounded degree survives such a test only with negligible
//! probability.

use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::{Character, ModelConfig, Monomial};

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

const SAMPLE_BUDGET: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// A factor `1 - m` with negative multiplicity vanished. When `structural`
    /// is false the monomial is nontrivial and only the sampled point is
    /// degenerate; callers resample.
    #[error("pole: monomial {monomial} evaluates to 1 with negative multiplicity")]
    Pole { monomial: String, structural: bool },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("could not sample a generic point after {0} attempts")]
    Sampling(usize),
    #[error("invalid prime modulus {0}: must be a prime above 2^60")]
    Modulus(u64),
}

impl ScalarError {
    /// True for poles that a different parameter point may avoid.
    pub fn is_resamplable(&self) -> bool {
        matches!(
            self,
            ScalarError::Pole {
                structural: false,
                ..
            }
        )
    }
}

/// Which exact backend a point lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Backend {
    Prime { p: u64 },
    Rational,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Prime { p } => write!(f, "prime({p})"),
            Backend::Rational => f.write_str("rational"),
        }
    }
}

/// A field backend. Elements carry no context; the field value does.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn backend(&self) -> Backend;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// A random element; may be zero or one, callers filter.
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;
    /// Decimal residue or `num/den`.
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a^e` for any integer `e`; `None` when `a = 0` and `e < 0`.
    fn pow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn tag(&self, a: &Self::Elem) -> FieldElement {
        FieldElement {
            backend: self.backend(),
            value: self.render(a),
        }
    }
}

/// Backend-tagged serialized field value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldElement {
    pub backend: Backend,
    pub value: String,
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value)
    }
}

/// `Z/p` for a prime `p > 2^60`, elements as reduced `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        if p <= 1 << 60 || !is_prime_u64(p) {
            return Err(ScalarError::Modulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn mersenne61() -> Self {
        PrimeField { p: MERSENNE_61 }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::mersenne61()
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn backend(&self) -> Backend {
        Backend::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v % BigInt::from(self.p);
        let r = if r.is_negative() {
            r + BigInt::from(self.p)
        } else {
            r
        };
        r.to_u64().expect("reduced residue fits u64")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `Q` with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalField {
    /// Sampled numerators and denominators are drawn from `[1, bound]`.
    pub bound: u64,
}

impl Default for RationalField {
    fn default() -> Self {
        RationalField { bound: 1 << 20 }
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn backend(&self) -> Backend {
        Backend::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random<R: Rng>(&self, rng: &mut R) -> BigRational {
        let num = rng.gen_range(1..=self.bound);
        let den = rng.gen_range(1..=self.bound);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn render(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Values of `q`, `t` and `X_1 … X_w`.
#[derive(Debug, Clone)]
pub struct ParamPoint<F: Field> {
    pub field: F,
    pub q: F::Elem,
    pub t: F::Elem,
    pub x: Vec<F::Elem>,
    pub seed: u64,
}

impl<F: Field> ParamPoint<F> {
    pub fn backend(&self) -> Backend {
        self.field.backend()
    }

    pub fn qt(&self) -> F::Elem {
        self.field.mul(&self.q, &self.t)
    }

    /// Checks the sampling constraints: nonzero entries, and `q`, `t`, `qt`,
    /// every `X_a` distinct from 1.
    pub fn is_admissible(&self) -> bool {
        let f = &self.field;
        let qt = self.qt();
        let all = [&self.q, &self.t, &qt].into_iter().chain(self.x.iter());
        for v in all {
            if f.is_zero(v) || f.is_one(v) {
                return false;
            }
        }
        true
    }

    /// Serialized `(q, t, X…)` for reports.
    pub fn describe(&self) -> Vec<String> {
        let mut out = vec![self.field.render(&self.q), self.field.render(&self.t)];
        out.extend(self.x.iter().map(|v| self.field.render(v)));
        out
    }
}

/// Seeded sampling of a generic point. Deterministic for a fixed seed.
pub fn sample_point<F: Field>(
    config: &ModelConfig,
    field: &F,
    seed: u64,
) -> Result<ParamPoint<F>, ScalarError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_BUDGET {
        let point = ParamPoint {
            field: field.clone(),
            q: field.random(&mut rng),
            t: field.random(&mut rng),
            x: (0..config.w()).map(|_| field.random(&mut rng)).collect(),
            seed,
        };
        if point.is_admissible() {
            return Ok(point);
        }
    }
    Err(ScalarError::Sampling(SAMPLE_BUDGET))
}

/// Independent seed for the `index`-th point derived from a master seed
/// (splitmix64 finalizer).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `q^dq t^dt Π X_a^{dx_a}` at the point. The Γ-weight must be trivial.
pub fn eval_monomial<F: Field>(m: &Monomial, p: &ParamPoint<F>) -> Result<F::Elem, ScalarError> {
    if !m.s.is_trivial() {
        return Err(ScalarError::Contract(format!(
            "cannot evaluate {m}: nontrivial Γ-weight"
        )));
    }
    if m.dx.len() != p.x.len() {
        return Err(ScalarError::Contract(format!(
            "monomial {m} has {} X-exponents, point has {}",
            m.dx.len(),
            p.x.len()
        )));
    }
    let f = &p.field;
    let nonzero = "sampled parameters are nonzero";
    let mut acc = f.pow(&p.q, m.dq as i64).expect(nonzero);
    acc = f.mul(&acc, &f.pow(&p.t, m.dt as i64).expect(nonzero));
    for (x, &e) in p.x.iter().zip(&m.dx) {
        if e != 0 {
            acc = f.mul(&acc, &f.pow(x, e as i64).expect(nonzero));
        }
    }
    Ok(acc)
}

fn torus_terms<F: Field>(
    c: &Character,
    p: &ParamPoint<F>,
) -> Result<Vec<(Monomial, F::Elem, i64)>, ScalarError> {
    c.terms()
        .map(|(m, coeff)| {
            let mult = coeff
                .to_i64()
                .ok_or_else(|| ScalarError::Contract("coefficient overflows i64".into()))?;
            Ok((m.clone(), eval_monomial(m, p)?, mult))
        })
        .collect()
}

/// `Λ(c) = Π (1 - m)^{coeff}`.
pub fn eval_lambda<F: Field>(c: &Character, p: &ParamPoint<F>) -> Result<F::Elem, ScalarError> {
    let f = &p.field;
    let mut acc = f.one();
    for (m, value, mult) in torus_terms(c, p)? {
        let factor = f.sub(&f.one(), &value);
        if f.is_zero(&factor) {
            if mult < 0 {
                return Err(ScalarError::Pole {
                    monomial: m.to_string(),
                    structural: m.is_one(),
                });
            }
            return Ok(f.zero());
        }
        acc = f.mul(&acc, &f.pow(&factor, mult).expect("nonzero factor"));
    }
    Ok(acc)
}

/// `D(c) = Π m^{coeff}`.
pub fn eval_det<F: Field>(c: &Character, p: &ParamPoint<F>) -> Result<F::Elem, ScalarError> {
    let f = &p.field;
    let mut acc = f.one();
    for (_, value, mult) in torus_terms(c, p)? {
        acc = f.mul(&acc, &f.pow(&value, mult).expect("monomials are units"));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Power series in `z`.
    AtZero,
    /// Power series in `z^{-1}`.
    AtInfinity,
}

/// Coefficients of `z^m` (at zero) or `z^{-m}` (at infinity), `m = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<E> {
    pub direction: Direction,
    pub coeffs: Vec<E>,
}

impl<E: Clone> TruncatedSeries<E> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> Option<&E> {
        self.coeffs.get(m)
    }
}

fn series_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len();
    let mut out = vec![f.zero(); len];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().take(len - i).enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Power series of `Π_i (1 - z v_i)^{m_i}` at `z = 0`, truncated at `order`.
pub fn lambda_z_values<F: Field>(f: &F, factors: &[(F::Elem, i64)], order: usize) -> Vec<F::Elem> {
    let len = order + 1;
    let mut acc = vec![f.zero(); len];
    acc[0] = f.one();
    for (v, mult) in factors {
        if *mult == 0 {
            continue;
        }
        let single: Vec<F::Elem> = if *mult > 0 {
            let mut s = vec![f.zero(); len];
            s[0] = f.one();
            if len > 1 {
                s[1] = f.neg(v);
            }
            s
        } else {
            // geometric series Σ v^k z^k
            let mut s = Vec::with_capacity(len);
            let mut pw = f.one();
            for _ in 0..len {
                s.push(pw.clone());
                pw = f.mul(&pw, v);
            }
            s
        };
        for _ in 0..mult.unsigned_abs() {
            acc = series_mul(f, &acc, &single);
        }
    }
    acc
}

/// Two-sided expansion of `Λ_z(c) = Π (1 - z m)^{coeff}`.
///
/// At infinity the character must have virtual rank 0; then
/// `Λ_z(c) = D(c) · Λ_{1/z}(c^*)`.
pub fn lambda_z_series<F: Field>(
    c: &Character,
    p: &ParamPoint<F>,
    direction: Direction,
    order: usize,
) -> Result<TruncatedSeries<F::Elem>, ScalarError> {
    let f = &p.field;
    let coeffs = match direction {
        Direction::AtZero => {
            let factors: Vec<_> = torus_terms(c, p)?
                .into_iter()
                .map(|(_, v, m)| (v, m))
                .collect();
            lambda_z_values(f, &factors, order)
        }
        Direction::AtInfinity => {
            if !c.dim().is_zero() {
                return Err(ScalarError::Contract(format!(
                    "expansion at infinity needs rank 0, got rank {}",
                    c.dim()
                )));
            }
            let mut factors = Vec::new();
            for (_, v, m) in torus_terms(c, p)? {
                factors.push((f.inv(&v).expect("monomials are units"), m));
            }
            let det = eval_det(c, p)?;
            lambda_z_values(f, &factors, order)
                .into_iter()
                .map(|x| f.mul(&det, &x))
                .collect()
        }
    };
    Ok(TruncatedSeries { direction, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::ModelConfig;

    fn cfg() -> ModelConfig {
        ModelConfig::new(3, vec![0, 1]).unwrap()
    }

    fn rational_point(q: i64, t: i64, x: &[i64]) -> ParamPoint<RationalField> {
        let f = RationalField::default();
        ParamPoint {
            q: f.from_i64(q),
            t: f.from_i64(t),
            x: x.iter().map(|&v| f.from_i64(v)).collect(),
            field: f,
            seed: 0,
        }
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(MERSENNE_61).is_ok());
        assert_eq!(
            PrimeField::new(1_000_003),
            Err(ScalarError::Modulus(1_000_003))
        );
        assert!(PrimeField::new(MERSENNE_61 - 2).is_err());
        // 2^61 + 1 is divisible by 3; 2^61 + 15 and 2^62 - 57 are prime.
        assert!(PrimeField::new((1 << 61) + 1).is_err());
        assert!(PrimeField::new((1 << 61) + 15).is_ok());
        assert!(PrimeField::new((1 << 62) - 57).is_ok());
    }

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::mersenne61();
        let a = f.from_i64(-5);
        assert_eq!(f.add(&a, &5), 0);
        let inv = f.inv(&12345).unwrap();
        assert_eq!(f.mul(&inv, &12345), 1);
        assert_eq!(f.pow(&3, -2).unwrap(), f.inv(&9).unwrap());
        assert_eq!(f.from_bigint(&BigInt::from(-1)), MERSENNE_61 - 1);
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = PrimeField::mersenne61();
        let a = sample_point(&cfg(), &f, 42).unwrap();
        let b = sample_point(&cfg(), &f, 42).unwrap();
        assert_eq!((a.q, a.t, a.x.clone()), (b.q, b.t, b.x.clone()));
        let c = sample_point(&cfg(), &f, 43).unwrap();
        assert_ne!(a.q, c.q);
        assert!(a.is_admissible());
    }

    #[test]
    fn degenerate_points_are_rejected() {
        let mut p = rational_point(2, 3, &[5, 7]);
        assert!(p.is_admissible());
        p.q = p.field.one();
        assert!(!p.is_admissible());
        let p = rational_point(2, 3, &[1, 7]);
        assert!(!p.is_admissible());
        let f = RationalField::default();
        let mut p = rational_point(2, 3, &[5, 7]);
        p.t = f.inv(&p.q).unwrap();
        assert!(!p.is_admissible(), "qt = 1 must be rejected");
    }

    #[test]
    fn monomial_evaluation() {
        let c = cfg();
        let p = rational_point(5, 3, &[3, 7]);
        let f = &p.field;
        let m = |dq, dt, dx: Vec<i32>| Monomial {
            dq,
            dt,
            dx,
            s: c.weight(0),
        };
        assert_eq!(
            eval_monomial(&m(1, 0, vec![0, 0]), &p).unwrap(),
            f.from_i64(5)
        );
        assert_eq!(
            eval_monomial(&m(-1, 0, vec![0, 0]), &p).unwrap(),
            f.inv(&f.from_i64(5)).unwrap()
        );
        assert_eq!(
            eval_monomial(&m(0, 0, vec![0, 1]), &p).unwrap(),
            f.from_i64(7)
        );
        let bad = Monomial {
            dq: 0,
            dt: 0,
            dx: vec![0, 0],
            s: c.weight(1),
        };
        assert!(matches!(
            eval_monomial(&bad, &p),
            Err(ScalarError::Contract(_))
        ));
    }

    #[test]
    fn lambda_and_det_basics() {
        let c = cfg();
        let p = rational_point(5, 3, &[3, 7]);
        let f = &p.field;
        assert_eq!(eval_lambda(&c.zero(), &p).unwrap(), f.one());
        assert_eq!(eval_det(&c.zero(), &p).unwrap(), f.one());
        let q = c.qt_monomial(1, 0, 0);
        let expected = f.inv(&f.from_i64(1 - 5)).unwrap();
        assert_eq!(eval_lambda(&q.scale(-1), &p).unwrap(), expected);
        assert_eq!(
            eval_det(&q.scale(-1), &p).unwrap(),
            f.inv(&f.from_i64(5)).unwrap()
        );
    }

    #[test]
    fn lambda_poles_and_zeros() {
        let c = cfg();
        let p = rational_point(5, 3, &[3, 7]);
        let one = c.one();
        match eval_lambda(&one.scale(-1), &p) {
            Err(ScalarError::Pole { structural, .. }) => assert!(structural),
            other => panic!("expected pole, got {other:?}"),
        }
        assert_eq!(eval_lambda(&one, &p).unwrap(), p.field.zero());

        // X_1 = 1 at this point: a sampling pole, not a structural one.
        let p1 = rational_point(5, 3, &[1, 7]);
        let x1 = c.framing().isotypic(c.weight(0));
        let err = eval_lambda(&x1.scale(-1), &p1).unwrap_err();
        assert!(err.is_resamplable());
    }

    #[test]
    fn lambda_z_small_orders() {
        let c = cfg();
        let p = rational_point(5, 3, &[3, 7]);
        let f = &p.field;
        let m = c.qt_monomial(0, 1, 0); // evaluates to 3
        let s = lambda_z_series(&m, &p, Direction::AtZero, 2).unwrap();
        assert_eq!(s.coeffs, vec![f.one(), f.from_i64(-3), f.zero()]);
        let s = lambda_z_series(&m.scale(-1), &p, Direction::AtZero, 2).unwrap();
        assert_eq!(s.coeffs, vec![f.one(), f.from_i64(3), f.from_i64(9)]);

        // (1 - z qt v)/(1 - z v) at infinity has constant term qt.
        let v = c.qt_monomial(0, 1, 0);
        let e = &(&c.qt_monomial(1, 1, 0) * &v) - &v;
        let s = lambda_z_series(&e, &p, Direction::AtInfinity, 0).unwrap();
        assert_eq!(s.coeffs, vec![f.from_i64(15)]);

        assert!(matches!(
            lambda_z_series(&v, &p, Direction::AtInfinity, 1),
            Err(ScalarError::Contract(_))
        ));
    }

    #[test]
    fn rendering() {
        let f = RationalField::default();
        let v = f.inv(&f.from_i64(-6)).unwrap();
        assert_eq!(f.render(&v), "-1/6");
        assert_eq!(PrimeField::mersenne61().render(&17), "17");
        assert_eq!(f.tag(&v).to_string(), "-1/6");
    }
}
