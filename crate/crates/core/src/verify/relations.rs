//! Mode-level relations between current operators.
//!
//! A current `x(z) = Σ_s x_s z^{-s}` multiplied by `z^a` has coefficient
//! `x_{s+a}` at `z^{-s}`. A relation between formal series in variables
//! `z_1, …, z_r` is therefore checked coefficientwise: for each mode tuple
//! `(s_1, …, s_r)` each term contributes `c(q,t) · W` where the word `W`
//! has every letter's mode shifted by the term's power of its variable.
//! Relations with `τ = -1` exponents are cross-multiplied first.

use std::fmt;

use serde::Serialize;

use crate::charring::ModelConfig;
use crate::fock::{CurrentKind, FockError, FockSpace, FockVector};
use crate::scalars::{Field, ParamPoint};

/// `Σ c · q^a t^b` with small integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QtPoly(pub Vec<(i64, i32, i32)>);

impl QtPoly {
    pub fn one() -> Self {
        QtPoly(vec![(1, 0, 0)])
    }

    pub fn mono(c: i64, a: i32, b: i32) -> Self {
        QtPoly(vec![(c, a, b)])
    }

    pub fn neg(&self) -> Self {
        QtPoly(self.0.iter().map(|&(c, a, b)| (-c, a, b)).collect())
    }

    pub fn mul(&self, other: &QtPoly) -> Self {
        let mut out = Vec::new();
        for &(c1, a1, b1) in &self.0 {
            for &(c2, a2, b2) in &other.0 {
                out.push((c1 * c2, a1 + a2, b1 + b2));
            }
        }
        QtPoly(out)
    }

    pub fn eval<F: Field>(&self, p: &ParamPoint<F>) -> F::Elem {
        let f = &p.field;
        let mut acc = f.zero();
        for &(c, a, b) in &self.0 {
            let m = f.mul(
                &f.pow(&p.q, a as i64).expect("q is a unit"),
                &f.pow(&p.t, b as i64).expect("t is a unit"),
            );
            acc = f.add(&acc, &f.mul(&f.from_i64(c), &m));
        }
        acc
    }
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(c, a, b) in &self.0 {
            let mut body = String::new();
            if a != 0 {
                body.push_str(&if a == 1 { "q".into() } else { format!("q^{a}") });
            }
            if b != 0 {
                body.push_str(&if b == 1 { "t".into() } else { format!("t^{b}") });
            }
            let mag = c.abs();
            let text = match (mag, body.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => body,
                (_, false) => format!("{mag}{body}"),
            };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{text}")?;
            } else {
                write!(f, " {} {text}", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// One generator in a word. Its mode is the sum of the listed variables'
/// modes (after the term's shifts) plus `offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Letter {
    pub kind: CurrentKind,
    pub color: u32,
    pub vars: Vec<usize>,
    pub offset: i64,
}

/// `coef · Π z_v^{shift_v} · word`, the word read left to right as an
/// operator product (rightmost letter acts first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coef: QtPoly,
    pub shifts: Vec<i64>,
    pub word: Vec<Letter>,
}

/// One colored instance of a relation: `Σ lhs = ς · Σ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationInstance {
    pub colors: Vec<u32>,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

/// A family of relation instances sharing one resolved sign.
#[derive(Debug, Clone, Serialize)]
pub struct Family {
    pub name: String,
    /// Human-readable statement in series form.
    pub statement: String,
    pub arity: usize,
    pub twisted: bool,
    /// Diagnostic families are reported but never gate a suite.
    pub diagnostic: bool,
    pub instances: Vec<RelationInstance>,
}

/// Evaluates a term on a vector for a mode tuple.
pub fn eval_term<F: Field>(
    space: &FockSpace<F>,
    term: &Term,
    modes: &[i64],
    vec: &FockVector<F::Elem>,
    twisted: bool,
) -> Result<FockVector<F::Elem>, FockError> {
    let f = space.field();
    let coef = term.coef.eval(space.point());
    if f.is_zero(&coef) {
        return Ok(FockVector::zero());
    }
    let mut cur = vec.clone();
    for letter in term.word.iter().rev() {
        if cur.is_zero() {
            break;
        }
        let mode: i64 = letter
            .vars
            .iter()
            .map(|&v| modes[v] + term.shifts[v])
            .sum::<i64>()
            + letter.offset;
        cur = space.apply(letter.kind, letter.color as i64, mode, &cur, twisted)?;
    }
    Ok(cur.scaled(f, &coef))
}

pub fn eval_side<F: Field>(
    space: &FockSpace<F>,
    terms: &[Term],
    modes: &[i64],
    vec: &FockVector<F::Elem>,
    twisted: bool,
) -> Result<FockVector<F::Elem>, FockError> {
    let f = space.field();
    let mut acc = FockVector::zero();
    for term in terms {
        let v = eval_term(space, term, modes, vec, twisted)?;
        acc.axpy(f, &f.one(), &v);
    }
    Ok(acc)
}

/// Outcome of comparing the two sides at one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Both sides vanish; compatible with either sign.
    Trivial,
    Plus,
    Minus,
    Mismatch,
}

pub fn compare<F: Field>(f: &F, lhs: &FockVector<F::Elem>, rhs: &FockVector<F::Elem>) -> Verdict {
    if lhs.is_zero() && rhs.is_zero() {
        return Verdict::Trivial;
    }
    if lhs == rhs {
        return Verdict::Plus;
    }
    if *lhs == rhs.neg(f) {
        return Verdict::Minus;
    }
    Verdict::Mismatch
}

fn x(kind: CurrentKind, color: u32, var: usize) -> Letter {
    Letter {
        kind,
        color,
        vars: vec![var],
        offset: 0,
    }
}

fn term(coef: QtPoly, shifts: &[i64], word: Vec<Letter>) -> Term {
    Term {
        coef,
        shifts: shifts.to_vec(),
        word,
    }
}

/// `(a(z,w)) X Y` for a linear factor `a = c_z z^{e} + c_w w^{e}` with
/// exponent `e = ±1` expands into two terms.
fn linear(cz: QtPoly, cw: QtPoly, e: i64, word: Vec<Letter>) -> Vec<Term> {
    vec![term(cz, &[e, 0], word.clone()), term(cw, &[0, e], word)]
}

fn swap_vars(t: &Term, a: usize, b: usize) -> Term {
    let mut out = t.clone();
    out.shifts.swap(a, b);
    for l in out.word.iter_mut() {
        for v in l.vars.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }
    out
}

fn symmetrize(terms: Vec<Term>, a: usize, b: usize) -> Vec<Term> {
    let swapped: Vec<Term> = terms.iter().map(|t| swap_vars(t, a, b)).collect();
    terms.into_iter().chain(swapped).collect()
}

fn c(v: i64) -> QtPoly {
    QtPoly::mono(v, 0, 0)
}

fn q(v: i64, a: i32) -> QtPoly {
    QtPoly::mono(v, a, 0)
}

fn t(v: i64, b: i32) -> QtPoly {
    QtPoly::mono(v, 0, b)
}

fn qt(v: i64, e: i32) -> QtPoly {
    QtPoly::mono(v, e, e)
}

/// `1 - q^{-1} t^{-1}`.
fn one_minus_inv_qt() -> QtPoly {
    QtPoly(vec![(1, 0, 0), (-1, -1, -1)])
}

const Z: usize = 0;
const W: usize = 1;

use CurrentKind::{HMinus, HPlus, XMinus, XPlus};

struct Colors {
    n: u32,
}

impl Colors {
    fn all(&self) -> impl Iterator<Item = u32> {
        0..self.n
    }
    fn add(&self, k: u32, d: i64) -> u32 {
        (k as i64 + d).rem_euclid(self.n as i64) as u32
    }
    fn far(&self, k: u32, l: u32) -> bool {
        l != k && l != self.add(k, 1) && l != self.add(k, -1)
    }
}

fn family(
    name: &str,
    statement: &str,
    arity: usize,
    twisted: bool,
    diagnostic: bool,
    instances: Vec<RelationInstance>,
) -> Family {
    Family {
        name: name.to_string(),
        statement: statement.to_string(),
        arity,
        twisted,
        diagnostic,
        instances,
    }
}

/// `(1 - q^{-1}t^{-1}) [x^+_k(z), x^-_l(w)] = ς δ_{kl} ε(z/w)(h^+ - h^-)`,
/// where the delta function pairs the modes so that `h` sits at `s + t`.
fn commutator_family(cs: &Colors, name: &str, statement: &str, twisted: bool) -> Family {
    let mut instances = Vec::new();
    for k in cs.all() {
        for l in cs.all() {
            let f = one_minus_inv_qt();
            let lhs = vec![
                term(f.clone(), &[0, 0], vec![x(XPlus, k, Z), x(XMinus, l, W)]),
                term(f.neg(), &[0, 0], vec![x(XMinus, l, W), x(XPlus, k, Z)]),
            ];
            let rhs = if k == l {
                let h = |kind| Letter {
                    kind,
                    color: k,
                    vars: vec![Z, W],
                    offset: 0,
                };
                vec![
                    term(c(1), &[0, 0], vec![h(HPlus)]),
                    term(c(-1), &[0, 0], vec![h(HMinus)]),
                ]
            } else {
                Vec::new()
            };
            instances.push(RelationInstance {
                colors: vec![k, l],
                lhs,
                rhs,
            });
        }
    }
    family(name, statement, 2, twisted, false, instances)
}

/// Serre-type cubic relation in `z_1, z_2, w` (variables 0, 1, 2):
/// `t^τ x_k x_k x_{k+δ} + μ x_k x_{k+δ} x_k + q^τ x_{k+δ} x_k x_k + {z_1↔z_2} = 0`,
/// split as `(t- and q-terms) = ς · (-μ · middle)` so that `ς = +1` means
/// the middle coefficient `μ = mid` as written.
#[allow(clippy::too_many_arguments)]
fn serre_family(
    cs: &Colors,
    name: &str,
    statement: &str,
    kind: CurrentKind,
    tau: i32,
    step: i64,
    mid: QtPoly,
    twisted: bool,
    diagnostic: bool,
) -> Family {
    let mut instances = Vec::new();
    for k in cs.all() {
        let l = cs.add(k, step);
        let (z1, z2, w) = (0, 1, 2);
        let sh = [0, 0, 0];
        let lhs = symmetrize(
            vec![
                term(
                    t(1, tau),
                    &sh,
                    vec![x(kind, k, z1), x(kind, k, z2), x(kind, l, w)],
                ),
                term(
                    q(1, tau),
                    &sh,
                    vec![x(kind, l, w), x(kind, k, z1), x(kind, k, z2)],
                ),
            ],
            z1,
            z2,
        );
        let rhs = symmetrize(
            vec![term(
                mid.neg(),
                &sh,
                vec![x(kind, k, z1), x(kind, l, w), x(kind, k, z2)],
            )],
            z1,
            z2,
        );
        instances.push(RelationInstance {
            colors: vec![k, l],
            lhs,
            rhs,
        });
    }
    family(name, statement, 3, twisted, diagnostic, instances)
}

/// `(a_z z + a_w w) X Y = (b_z z + b_w w) Y X` with `X = A(var_x)`,
/// `Y = B(var_y)`, both factors to the power `e = ±1` in the variables.
#[allow(clippy::too_many_arguments)]
fn quadratic(
    colors: Vec<u32>,
    a: (QtPoly, QtPoly),
    left: Vec<Letter>,
    b: (QtPoly, QtPoly),
    right: Vec<Letter>,
    e: i64,
) -> RelationInstance {
    RelationInstance {
        colors,
        lhs: linear(a.0, a.1, e, left),
        rhs: linear(b.0, b.1, e, right),
    }
}

/// Relations for the untwisted currents, as stated for the operators
/// `x^±_k`, `h^±_k` built from the fixed-point coefficients.
pub fn current_families(config: &ModelConfig) -> Vec<Family> {
    let cs = Colors { n: config.n() };
    let mut out = vec![commutator_family(
        &cs,
        "currents/commutator",
        "(1-q^-1t^-1)[x+_k(z),x-_l(w)] = d_kl e(z/w)(h+_k(z)-h-_k(z))",
        false,
    )];

    let mut same_plus = Vec::new();
    let mut same_minus = Vec::new();
    let mut mixed_plus = Vec::new();
    let mut mixed_minus = Vec::new();
    let mut mixed_minus_reflected = Vec::new();
    let mut far_plus = Vec::new();
    let mut far_minus = Vec::new();
    let mut h_far = Vec::new();
    let mut h_same = Vec::new();
    let mut h_next = Vec::new();
    for k in cs.all() {
        let k1 = cs.add(k, 1);
        let km = cs.add(k, -1);
        // (w - qt z) x(w) x(z) = (qt w - z) x(z) x(w)
        same_plus.push(quadratic(
            vec![k],
            (qt(-1, 1), c(1)),
            vec![x(XPlus, k, W), x(XPlus, k, Z)],
            (c(-1), qt(1, 1)),
            vec![x(XPlus, k, Z), x(XPlus, k, W)],
            1,
        ));
        // inverse powers, cross-multiplied: (qt w - z) x-(w) x-(z) = (w - qt z) x-(z) x-(w)
        same_minus.push(quadratic(
            vec![k],
            (c(-1), qt(1, 1)),
            vec![x(XMinus, k, W), x(XMinus, k, Z)],
            (qt(-1, 1), c(1)),
            vec![x(XMinus, k, Z), x(XMinus, k, W)],
            1,
        ));
        // (t w - z) x+_{k+1}(w) x+_k(z) = (q z - w) x+_k(z) x+_{k+1}(w)
        mixed_plus.push(quadratic(
            vec![k, k1],
            (c(-1), t(1, 1)),
            vec![x(XPlus, k1, W), x(XPlus, k, Z)],
            (q(1, 1), c(-1)),
            vec![x(XPlus, k, Z), x(XPlus, k1, W)],
            1,
        ));
        // (w - t z) x-_{k+1}(w) x-_k(z) = (z - q w) x-_k(z) x-_{k+1}(w)
        mixed_minus.push(quadratic(
            vec![k, k1],
            (t(-1, 1), c(1)),
            vec![x(XMinus, k1, W), x(XMinus, k, Z)],
            (c(1), q(-1, 1)),
            vec![x(XMinus, k, Z), x(XMinus, k1, W)],
            1,
        ));
        mixed_minus_reflected.push(quadratic(
            vec![k, km],
            (t(-1, 1), c(1)),
            vec![x(XMinus, km, W), x(XMinus, k, Z)],
            (c(1), q(-1, 1)),
            vec![x(XMinus, k, Z), x(XMinus, km, W)],
            1,
        ));
        // (w - qt z) h+_k(w) x+_k(z) = (qt w - z) x+_k(z) h+_k(w)
        h_same.push(quadratic(
            vec![k],
            (qt(-1, 1), c(1)),
            vec![x(HPlus, k, W), x(XPlus, k, Z)],
            (c(-1), qt(1, 1)),
            vec![x(XPlus, k, Z), x(HPlus, k, W)],
            1,
        ));
        // (t w - z) h+_{k+1}(w) x+_k(z) = (q z - w) x+_k(z) h+_{k+1}(w)
        h_next.push(quadratic(
            vec![k, k1],
            (c(-1), t(1, 1)),
            vec![x(HPlus, k1, W), x(XPlus, k, Z)],
            (q(1, 1), c(-1)),
            vec![x(XPlus, k, Z), x(HPlus, k1, W)],
            1,
        ));
        for l in cs.all().filter(|&l| cs.far(k, l)) {
            for (bucket, kind) in [(&mut far_plus, XPlus), (&mut far_minus, XMinus)] {
                bucket.push(RelationInstance {
                    colors: vec![k, l],
                    lhs: vec![term(c(1), &[0, 0], vec![x(kind, l, W), x(kind, k, Z)])],
                    rhs: vec![term(c(1), &[0, 0], vec![x(kind, k, Z), x(kind, l, W)])],
                });
            }
            h_far.push(RelationInstance {
                colors: vec![k, l],
                lhs: vec![term(c(1), &[0, 0], vec![x(HPlus, l, W), x(XPlus, k, Z)])],
                rhs: vec![term(c(1), &[0, 0], vec![x(XPlus, k, Z), x(HPlus, l, W)])],
            });
        }
    }
    out.push(family(
        "currents/x+x+ same color",
        "(w-qtz) x+_k(w)x+_k(z) = (qtw-z) x+_k(z)x+_k(w)",
        2,
        false,
        false,
        same_plus,
    ));
    out.push(family(
        "currents/x-x- same color",
        "(w-qtz)^-1 x-_k(w)x-_k(z) = (qtw-z)^-1 x-_k(z)x-_k(w)",
        2,
        false,
        false,
        same_minus,
    ));
    out.push(family(
        "currents/x+x+ adjacent",
        "(tw-z) x+_{k+1}(w)x+_k(z) = (qz-w) x+_k(z)x+_{k+1}(w)",
        2,
        false,
        false,
        mixed_plus,
    ));
    out.push(family(
        "currents/x-x- adjacent",
        "(w-tz) x-_{k+1}(w)x-_k(z) = (z-qw) x-_k(z)x-_{k+1}(w)",
        2,
        false,
        false,
        mixed_minus,
    ));
    out.push(family(
        "currents/x+x+ far",
        "x+_l(w)x+_k(z) = x+_k(z)x+_l(w), l != k,k+-1",
        2,
        false,
        false,
        far_plus,
    ));
    out.push(family(
        "currents/x-x- far",
        "x-_l(w)x-_k(z) = x-_k(z)x-_l(w), l != k,k+-1",
        2,
        false,
        false,
        far_minus,
    ));
    out.push(family(
        "currents/h+x+ far",
        "h+_l(w)x+_k(z) = x+_k(z)h+_l(w), l != k,k+-1",
        2,
        false,
        false,
        h_far,
    ));
    out.push(family(
        "currents/h+x+ same color",
        "(w-qtz) h+_k(w)x+_k(z) = (qtw-z) x+_k(z)h+_k(w)",
        2,
        false,
        false,
        h_same,
    ));
    out.push(family(
        "currents/h+x+ adjacent",
        "(tw-z) h+_{k+1}(w)x+_k(z) = (qz-w) x+_k(z)h+_{k+1}(w)",
        2,
        false,
        false,
        h_next,
    ));
    for tau in [1, -1] {
        let mid = QtPoly(vec![(1, tau, tau), (1, 0, 0)]);
        out.push(serre_family(
            &cs,
            &format!("currents/serre x+ tau={tau:+}"),
            "t^tau x+_k x+_k x+_{k+tau} + ((qt)^tau+1) x+_k x+_{k+tau} x+_k + q^tau x+_{k+tau} x+_k x+_k + sym = 0",
            XPlus,
            tau,
            tau as i64,
            mid,
            false,
            false,
        ));
    }

    // Diagnostics: the same shapes with neighbouring colors reflected, and
    // the cubic relation for x-.
    out.push(family(
        "diagnostic/x-x- adjacent, reflected colors",
        "(w-tz) x-_{k-1}(w)x-_k(z) = (z-qw) x-_k(z)x-_{k-1}(w)",
        2,
        false,
        true,
        mixed_minus_reflected,
    ));
    for tau in [1, -1] {
        let mid = QtPoly(vec![(1, tau, tau), (1, 0, 0)]);
        out.push(serre_family(
            &cs,
            &format!("diagnostic/serre x+ tau={tau:+}, reflected colors"),
            "cubic relation with x+_{k-tau} in place of x+_{k+tau}",
            XPlus,
            tau,
            -(tau as i64),
            mid.clone(),
            false,
            true,
        ));
        out.push(serre_family(
            &cs,
            &format!("diagnostic/serre x- tau={tau:+}"),
            "cubic relation of the same shape for x-",
            XMinus,
            tau,
            tau as i64,
            mid,
            false,
            true,
        ));
    }
    out
}

/// The defining relations of the algebra, checked on the twisted images
/// of its generators.
pub fn presentation_families(config: &ModelConfig) -> Vec<Family> {
    let cs = Colors { n: config.n() };
    let mut out = Vec::new();

    // h^e_{i,0} h^{-e}_{i,0} = 1
    let mut h0 = Vec::new();
    for k in cs.all() {
        for (a, b) in [(HPlus, HMinus), (HMinus, HPlus)] {
            let zero = |kind| Letter {
                kind,
                color: k,
                vars: vec![],
                offset: 0,
            };
            h0.push(RelationInstance {
                colors: vec![k],
                lhs: vec![term(c(1), &[], vec![zero(a), zero(b)])],
                rhs: vec![term(c(1), &[], vec![])],
            });
        }
    }
    out.push(family(
        "presentation/h0 inverse",
        "h^e_{i,0} h^-e_{i,0} = 1",
        0,
        true,
        false,
        h0,
    ));

    let mut hh = Vec::new();
    for k in cs.all() {
        for l in cs.all() {
            for a in [HPlus, HMinus] {
                for b in [HPlus, HMinus] {
                    hh.push(RelationInstance {
                        colors: vec![k, l],
                        lhs: vec![
                            term(c(1), &[0, 0], vec![x(a, k, Z), x(b, l, W)]),
                            term(c(-1), &[0, 0], vec![x(b, l, W), x(a, k, Z)]),
                        ],
                        rhs: vec![],
                    });
                }
            }
        }
    }
    out.push(family(
        "presentation/[h,h]",
        "[h^e_i(z), h^t_j(w)] = 0",
        2,
        true,
        false,
        hh,
    ));

    out.push(commutator_family(
        &cs,
        "presentation/[x+,x-]",
        "(1-q^-1t^-1)[x+_i(z),x-_j(w)] = d_ij e(z/w)(h+_i(w)-h-_i(z))",
        true,
    ));

    for (eps, hk) in [(1, HPlus), (-1, HMinus)] {
        for (tau, xk) in [(1, XPlus), (-1, XMinus)] {
            let mut same = Vec::new();
            let mut next = Vec::new();
            for k in cs.all() {
                let k1 = cs.add(k, 1);
                // (z - qt w)^tau h_i(z) x_i(w) = (qt z - w)^tau x_i(w) h_i(z)
                let (a, b) = ((c(1), qt(-1, 1)), (qt(1, 1), c(-1)));
                let (a, b) = if tau == 1 { (a, b) } else { (b, a) };
                same.push(quadratic(
                    vec![k],
                    a,
                    vec![x(hk, k, Z), x(xk, k, W)],
                    b,
                    vec![x(xk, k, W), x(hk, k, Z)],
                    1,
                ));
                // (t z - w)^tau h_{i+1}(z) x_i(w) = (z - q w)^tau x_i(w) h_{i+1}(z)
                let (a, b) = ((t(1, 1), c(-1)), (c(1), q(-1, 1)));
                let (a, b) = if tau == 1 { (a, b) } else { (b, a) };
                next.push(quadratic(
                    vec![k, k1],
                    a,
                    vec![x(hk, k1, Z), x(xk, k, W)],
                    b,
                    vec![x(xk, k, W), x(hk, k1, Z)],
                    1,
                ));
            }
            let e = if eps == 1 { "+" } else { "-" };
            let x_name = if tau == 1 { "x+" } else { "x-" };
            out.push(family(
                &format!("presentation/h{e}{x_name} same color"),
                "(z-qtw)^tau h^e_i(z)x^tau_i(w) = (qtz-w)^tau x^tau_i(w)h^e_i(z)",
                2,
                true,
                false,
                same,
            ));
            out.push(family(
                &format!("presentation/h{e}{x_name} adjacent"),
                "(tz-w)^tau h^e_{i+1}(z)x^tau_i(w) = (z-qw)^tau x^tau_i(w)h^e_{i+1}(z)",
                2,
                true,
                false,
                next,
            ));
        }
    }

    for (eps, xk) in [(1i64, XPlus), (-1, XMinus)] {
        let name = if eps == 1 { "x+" } else { "x-" };
        let mut same = Vec::new();
        let mut next = Vec::new();
        let mut next_reflected = Vec::new();
        let mut far = Vec::new();
        for k in cs.all() {
            let k1 = cs.add(k, 1);
            let km = cs.add(k, -1);
            // (z^e - qt w^e) x_i(z) x_i(w) = (qt z^e - w^e) x_i(w) x_i(z)
            same.push(quadratic(
                vec![k],
                (c(1), qt(-1, 1)),
                vec![x(xk, k, Z), x(xk, k, W)],
                (qt(1, 1), c(-1)),
                vec![x(xk, k, W), x(xk, k, Z)],
                eps,
            ));
            // (t z^e - w^e) x_{i+1}(z) x_i(w) = (z^e - q w^e) x_i(w) x_{i+1}(z)
            next.push(quadratic(
                vec![k, k1],
                (t(1, 1), c(-1)),
                vec![x(xk, k1, Z), x(xk, k, W)],
                (c(1), q(-1, 1)),
                vec![x(xk, k, W), x(xk, k1, Z)],
                eps,
            ));
            next_reflected.push(quadratic(
                vec![k, km],
                (t(1, 1), c(-1)),
                vec![x(xk, km, Z), x(xk, k, W)],
                (c(1), q(-1, 1)),
                vec![x(xk, k, W), x(xk, km, Z)],
                eps,
            ));
            for l in cs.all().filter(|&l| cs.far(k, l)) {
                far.push(RelationInstance {
                    colors: vec![k, l],
                    lhs: vec![
                        term(c(1), &[0, 0], vec![x(xk, k, Z), x(xk, l, W)]),
                        term(c(-1), &[0, 0], vec![x(xk, l, W), x(xk, k, Z)]),
                    ],
                    rhs: vec![],
                });
            }
        }
        out.push(family(
            &format!("presentation/{name}{name} same color"),
            "(z^e-qtw^e) x^e_i(z)x^e_i(w) = (qtz^e-w^e) x^e_i(w)x^e_i(z)",
            2,
            true,
            false,
            same,
        ));
        out.push(family(
            &format!("presentation/{name}{name} adjacent"),
            "(tz^e-w^e) x^e_{i+1}(z)x^e_i(w) = (z^e-qw^e) x^e_i(w)x^e_{i+1}(z)",
            2,
            true,
            false,
            next,
        ));
        out.push(family(
            &format!("presentation/{name}{name} far"),
            "[x^e_i(z), x^e_j(w)] = 0, i != j,j+-1",
            2,
            true,
            false,
            far,
        ));
        for tau in [1, -1] {
            // the middle coefficient enters with a minus sign here
            let mid = QtPoly(vec![(-1, tau, tau), (-1, 0, 0)]);
            out.push(serre_family(
                &cs,
                &format!("presentation/serre {name} tau={tau:+}"),
                "t^tau x_i x_i x_{i+tau} - (q^tau t^tau+1) x_i x_{i+tau} x_i + q^tau x_{i+tau} x_i x_i + sym = 0",
                xk,
                tau,
                tau as i64,
                mid.clone(),
                true,
                false,
            ));
            out.push(serre_family(
                &cs,
                &format!("diagnostic/serre {name} tau={tau:+}, reflected colors"),
                "twisted cubic relation with x_{i-tau} in place of x_{i+tau}",
                xk,
                tau,
                -(tau as i64),
                mid,
                true,
                true,
            ));
        }
        out.push(family(
            &format!("diagnostic/{name}{name} adjacent, reflected colors"),
            "(tz^e-w^e) x^e_{i-1}(z)x^e_i(w) = (z^e-qw^e) x^e_i(w)x^e_{i-1}(z)",
            2,
            true,
            true,
            next_reflected,
        ));
    }
    out
}
