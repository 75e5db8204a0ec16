//! Exact arithmetic in the character ring of `T_W × Γ`.
//!
//! A [`Character`] is a finite integer combination of monomials
//! `q^i t^j X_1^e_1 … X_w^e_w S_r`, where `S` generates the characters of the
//! cyclic group `Γ = Z/n`. Coefficients are arbitrary precision and storage is
//! canonical (sorted, no zero coefficients), so structural equality is
//! equality in the ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("cyclic group order must be at least 3, got {0}")]
    GroupOrder(u32),
    #[error("framing must have at least one component")]
    EmptyFraming,
    #[error("color {color} of component {component} is not a residue mod {n}")]
    Color {
        component: usize,
        color: u32,
        n: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("characters live over different models: (n={0}, w={1}) vs (n={2}, w={3})")]
    Mismatch(u32, usize, u32, usize),
}

/// Cyclic group order, framing size and the colors `k_a` of the framing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModelConfig {
    n: u32,
    colors: Vec<u32>,
}

impl ModelConfig {
    pub fn new(n: u32, colors: Vec<u32>) -> Result<Self, ConfigError> {
        if n < 3 {
            return Err(ConfigError::GroupOrder(n));
        }
        if colors.is_empty() {
            return Err(ConfigError::EmptyFraming);
        }
        if let Some((component, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= n) {
            return Err(ConfigError::Color {
                component,
                color,
                n,
            });
        }
        Ok(Self { n, colors })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, component: usize) -> GammaWeight {
        GammaWeight(self.colors[component])
    }

    pub fn weight(&self, r: i64) -> GammaWeight {
        GammaWeight::new(r, self.n)
    }

    pub fn zero(&self) -> Character {
        Character::zero(self.n, self.w())
    }

    pub fn one(&self) -> Character {
        self.qt_monomial(0, 0, 0)
    }

    /// `q^dq t^dt S_s` with trivial `T(W)` part.
    pub fn qt_monomial(&self, dq: i32, dt: i32, s: i64) -> Character {
        self.monomial(Monomial {
            dq,
            dt,
            dx: vec![0; self.w()],
            s: self.weight(s),
        })
    }

    pub fn monomial(&self, m: Monomial) -> Character {
        assert_eq!(m.dx.len(), self.w(), "monomial has wrong framing size");
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        Character {
            n: self.n,
            w: self.w(),
            terms,
        }
    }

    /// `W = Σ_a X_a S_{k_a}`.
    pub fn framing(&self) -> Character {
        let mut out = self.zero();
        for a in 0..self.w() {
            let mut dx = vec![0; self.w()];
            dx[a] = 1;
            out.add_term(
                Monomial {
                    dq: 0,
                    dt: 0,
                    dx,
                    s: self.color(a),
                },
                BigInt::one(),
            );
        }
        out
    }

    /// `L = t S^{-1} + q S`.
    pub fn line(&self) -> Character {
        &self.qt_monomial(0, 1, -1) + &self.qt_monomial(1, 0, 1)
    }

    /// `θ = t^{-1} S + q^{-1} S^{-1} - 1 - q^{-1} t^{-1}`.
    pub fn theta(&self) -> Character {
        let mut out = &self.qt_monomial(0, -1, 1) + &self.qt_monomial(-1, 0, -1);
        out = &out - &self.one();
        &out - &self.qt_monomial(-1, -1, 0)
    }
}

/// A character of `Γ = Z/n`, stored as its exponent `r` in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaWeight(u32);

impl GammaWeight {
    pub fn new(r: i64, n: u32) -> Self {
        GammaWeight(r.rem_euclid(n as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 0
    }
}

/// `q^dq t^dt Π X_a^{dx_a} S_s`. Field order gives the canonical ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub dq: i32,
    pub dt: i32,
    pub dx: Vec<i32>,
    pub s: GammaWeight,
}

impl Monomial {
    /// True when every exponent, including the Γ-weight, vanishes.
    pub fn is_one(&self) -> bool {
        self.dq == 0 && self.dt == 0 && self.s.is_trivial() && self.dx.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial, n: u32) -> Monomial {
        Monomial {
            dq: self.dq + other.dq,
            dt: self.dt + other.dt,
            dx: self.dx.iter().zip(&other.dx).map(|(a, b)| a + b).collect(),
            s: GammaWeight::new(self.s.0 as i64 + other.s.0 as i64, n),
        }
    }

    fn dual(&self, n: u32) -> Monomial {
        Monomial {
            dq: -self.dq,
            dt: -self.dt,
            dx: self.dx.iter().map(|e| -e).collect(),
            s: GammaWeight::new(-(self.s.0 as i64), n),
        }
    }

    /// Same monomial with the Γ-weight reset to the trivial character.
    pub fn torus_part(&self) -> Monomial {
        Monomial {
            s: GammaWeight(0),
            ..self.clone()
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.dq != 0 {
            parts.push(format!("q^{}", self.dq));
        }
        if self.dt != 0 {
            parts.push(format!("t^{}", self.dt));
        }
        for (a, &e) in self.dx.iter().enumerate() {
            if e != 0 {
                parts.push(format!("X{}^{}", a + 1, e));
            }
        }
        if !self.s.is_trivial() {
            parts.push(format!("S^{}", self.s.0));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Element of `R(T_W × Γ)`. Immutable in the public API: every operation
/// returns a fresh value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    n: u32,
    w: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Character {
    pub fn zero(n: u32, w: usize) -> Self {
        Character {
            n,
            w,
            terms: BTreeMap::new(),
        }
    }

    /// Build from `(monomial, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(n: u32, w: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut out = Character::zero(n, w);
        for (m, c) in terms {
            assert_eq!(m.dx.len(), w, "monomial has wrong framing size");
            let m = Monomial {
                s: GammaWeight::new(m.s.0 as i64, n),
                ..m
            };
            out.add_term(m, c);
        }
        out
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Character) -> Result<(), CharError> {
        if self.n != other.n || self.w != other.w {
            return Err(CharError::Mismatch(self.n, self.w, other.n, other.w));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Character) -> Result<Character, CharError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Character) -> Result<Character, CharError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    /// Ring product: exponents add componentwise, Γ-weights add mod `n`.
    pub fn checked_mul(&self, other: &Character) -> Result<Character, CharError> {
        self.check_same(other)?;
        let mut out = Character::zero(self.n, self.w);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2, self.n), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Character {
        let c = BigInt::from(c);
        let mut out = Character::zero(self.n, self.w);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * &c);
        }
        out
    }

    /// `*`-involution: every exponent, including the Γ-weight, is negated.
    pub fn dual(&self) -> Character {
        let mut out = Character::zero(self.n, self.w);
        for (m, c) in &self.terms {
            out.add_term(m.dual(self.n), c.clone());
        }
        out
    }

    /// The `S_k`-isotypic part, returned as a `T_W`-character (weight reset to 0).
    pub fn isotypic(&self, k: GammaWeight) -> Character {
        let mut out = Character::zero(self.n, self.w);
        for (m, c) in &self.terms {
            if m.s == k {
                out.add_term(m.torus_part(), c.clone());
            }
        }
        out
    }

    /// Multiply by `S_k`.
    pub fn twist(&self, k: GammaWeight) -> Character {
        let mut out = Character::zero(self.n, self.w);
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.s = GammaWeight::new(m.s.0 as i64 + k.0 as i64, self.n);
            out.add_term(m, c.clone());
        }
        out
    }

    /// Virtual dimension: the signed sum of coefficients.
    pub fn dim(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Virtual dimension as a machine integer; the characters built here are
    /// always far below `i64` range.
    pub fn dim_i64(&self) -> i64 {
        self.dim()
            .to_i64()
            .expect("virtual dimension overflows i64")
    }

    /// True when every term has trivial Γ-weight.
    pub fn is_torus_character(&self) -> bool {
        self.terms.keys().all(|m| m.s.is_trivial())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, abs) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched models; use the `checked_*` methods when
// the operands come from different configurations.
impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        self.checked_add(rhs).expect("character model mismatch")
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        self.checked_sub(rhs).expect("character model mismatch")
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        self.checked_mul(rhs).expect("character model mismatch")
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}
