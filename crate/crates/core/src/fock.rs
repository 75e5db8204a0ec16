//! Fixed-point data and the current operators on a graded truncation of the
//! localized Fock space.
//!
//! Every quantity here is indexed by multipartitions: the weight character
//! `V_λ`, the boundary characters `R_λ`, `I_λ`, `H_λ`, tangent and normal
//! characters, the monomial `γ_{λ,k}` and integer `h_{λ,k}`. The operators
//! `x^±_{k,s}` and `h^±_{k,s}` act on the basis `b_λ` through explicit matrix
//! coefficients, optionally twisted by the diagonal signs `ε_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charring::{Character, GammaWeight, ModelConfig, Monomial};
use crate::scalars::{
    eval_det, eval_lambda, eval_monomial, lambda_z_series, Direction, Field, ParamPoint,
    ScalarError, TruncatedSeries,
};
use crate::young::{neighbors, Basis, Cell, Dir, Multipartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(
        "truncation overflow: {op} on a vector with {boxes} boxes exceeds the {limit}-box basis"
    )]
    Truncation { op: String, boxes: u32, limit: u32 },
}

impl FockError {
    pub fn is_resamplable(&self) -> bool {
        matches!(self, FockError::Scalar(e) if e.is_resamplable())
    }
}

/// `q^i t^j X_a S_{k_a+i-j}` for a cell.
pub fn cell_monomial(config: &ModelConfig, cell: &Cell) -> Monomial {
    let mut dx = vec![0; config.w()];
    dx[cell.component] = 1;
    Monomial {
        dq: cell.i as i32,
        dt: cell.j as i32,
        dx,
        s: cell.residue(config),
    }
}

fn sum_cells<'a>(config: &ModelConfig, cells: impl IntoIterator<Item = &'a Cell>) -> Character {
    Character::from_terms(
        config.n(),
        config.w(),
        cells
            .into_iter()
            .map(|c| (cell_monomial(config, c), 1.into())),
    )
}

/// `V_λ`, the sum of the cell monomials.
pub fn weight_char(config: &ModelConfig, lambda: &Multipartition) -> Character {
    let cells: Vec<Cell> = lambda.cells().collect();
    sum_cells(config, &cells)
}

/// `R_λ`: removable cells.
pub fn removable_char(config: &ModelConfig, lambda: &Multipartition) -> Character {
    sum_cells(config, &lambda.removable_cells())
}

/// `I_λ`: addable cells.
pub fn addable_char(config: &ModelConfig, lambda: &Multipartition) -> Character {
    sum_cells(config, &lambda.addable_cells())
}

/// `H_λ = θ^* V_λ + W`, computed directly from the weight character.
pub fn h_char(config: &ModelConfig, lambda: &Multipartition) -> Character {
    &(&config.theta().dual() * &weight_char(config, lambda)) + &config.framing()
}

/// `(R_λ, I_λ, H_λ)`.
pub fn boundary_chars(
    config: &ModelConfig,
    lambda: &Multipartition,
) -> (Character, Character, Character) {
    (
        removable_char(config, lambda),
        addable_char(config, lambda),
        h_char(config, lambda),
    )
}

/// Tangent character `T_λ = (θ^* V_λ^* V_λ + qt W^* V_λ + V_λ^* W)_0`.
pub fn tangent_char(config: &ModelConfig, lambda: &Multipartition) -> Character {
    let v = weight_char(config, lambda);
    let w = config.framing();
    let qt = config.qt_monomial(1, 1, 0);
    let a = &(&config.theta().dual() * &v.dual()) * &v;
    let b = &(&qt * &w.dual()) * &v;
    let c = &v.dual() * &w;
    (&(&a + &b) + &c).isotypic(config.weight(0))
}

/// Normal character
/// `N_{μλ} = (θ^* V_μ^* V_λ + qt W^* V_λ + V_μ^* W - qt)_0`
/// for a pair differing by one cell (in either direction).
pub fn normal_char(
    config: &ModelConfig,
    mu: &Multipartition,
    lambda: &Multipartition,
) -> Result<Character, FockError> {
    if mu.cell_over(lambda).is_none() && lambda.cell_over(mu).is_none() {
        return Err(FockError::Contract(format!(
            "{mu} and {lambda} are not adjacent"
        )));
    }
    let vm = weight_char(config, mu);
    let vl = weight_char(config, lambda);
    let w = config.framing();
    let qt = config.qt_monomial(1, 1, 0);
    let a = &(&config.theta().dual() * &vm.dual()) * &vl;
    let b = &(&qt * &w.dual()) * &vl;
    let c = &vm.dual() * &w;
    Ok((&(&(&a + &b) + &c) - &qt).isotypic(config.weight(0)))
}

/// `γ_{λ,k} = q^{v_k - v_{k-1}} t^{v_k - v_{k+1}}` and
/// `h_{λ,k} = dim (H_λ)_k`.
pub fn gamma_h(config: &ModelConfig, lambda: &Multipartition, k: GammaWeight) -> (Monomial, i64) {
    let v = lambda.residue_vector(config);
    let n = config.n() as usize;
    let k = k.value() as usize;
    let vk = v[k];
    let gamma = Monomial {
        dq: (vk - v[(k + n - 1) % n]) as i32,
        dt: (vk - v[(k + 1) % n]) as i32,
        dx: vec![0; config.w()],
        s: config.weight(0),
    };
    let h = h_char(config, lambda)
        .isotypic(config.weight(k as i64))
        .dim()
        .to_i64()
        .expect("dimension fits i64");
    (gamma, h)
}

fn cell_value<F: Field>(
    config: &ModelConfig,
    cell: &Cell,
    p: &ParamPoint<F>,
) -> Result<F::Elem, ScalarError> {
    eval_monomial(&cell_monomial(config, cell).torus_part(), p)
}

fn pow_signed<F: Field>(f: &F, v: &F::Elem, e: i64) -> F::Elem {
    f.pow(v, e).expect("sampled monomial values are units")
}

/// Matrix coefficient of `x^+_{k,s}` from `b_λ` to `b_μ`, where `μ` is `λ`
/// minus one residue-`k` cell:
/// `V^s · D(-q^{-1}t^{-1} H_{λ,k}) · Λ(q^{-1}t^{-1} V^* I_λ - V^* R_μ)_0`.
pub fn xplus_coeff<F: Field>(
    config: &ModelConfig,
    lambda: &Multipartition,
    mu: &Multipartition,
    s: i64,
    p: &ParamPoint<F>,
) -> Result<F::Elem, FockError> {
    let cell = lambda
        .cell_over(mu)
        .ok_or_else(|| FockError::Contract(format!("{mu} is not {lambda} minus one cell")))?;
    let k = cell.residue(config);
    let f = &p.field;
    let v = config.monomial(cell_monomial(config, &cell));
    let qt_inv = config.qt_monomial(-1, -1, 0);
    let hk = h_char(config, lambda).isotypic(k);
    let omega = f.mul(
        &pow_signed(f, &cell_value(config, &cell, p)?, s),
        &eval_det(&(&qt_inv * &hk).scale(-1), p)?,
    );
    let arg = &(&(&qt_inv * &v.dual()) * &addable_char(config, lambda))
        - &(&v.dual() * &removable_char(config, mu));
    let lam = eval_lambda(&arg.isotypic(config.weight(0)), p)?;
    Ok(f.mul(&omega, &lam))
}

/// Matrix coefficient of `x^-_{k,s}` from `b_μ` to `b_λ`, where `λ` is `μ`
/// plus one residue-`k` cell:
/// `V^{s+h_{λ,k}} γ_{λ,k} · Λ(q^{-1}t^{-1} V R_μ^* - V I_λ^*)_0`.
pub fn xminus_coeff<F: Field>(
    config: &ModelConfig,
    mu: &Multipartition,
    lambda: &Multipartition,
    s: i64,
    p: &ParamPoint<F>,
) -> Result<F::Elem, FockError> {
    let cell = lambda
        .cell_over(mu)
        .ok_or_else(|| FockError::Contract(format!("{lambda} is not {mu} plus one cell")))?;
    let k = cell.residue(config);
    let f = &p.field;
    let v = config.monomial(cell_monomial(config, &cell));
    let qt_inv = config.qt_monomial(-1, -1, 0);
    let (gamma, h) = gamma_h(config, lambda, k);
    let omega = f.mul(
        &pow_signed(f, &cell_value(config, &cell, p)?, s + h),
        &eval_monomial(&gamma, p)?,
    );
    let arg = &(&(&qt_inv * &v) * &removable_char(config, mu).dual())
        - &(&v * &addable_char(config, lambda).dual());
    let lam = eval_lambda(&arg.isotypic(config.weight(0)), p)?;
    Ok(f.mul(&omega, &lam))
}

/// Expansion of `Θ_{λ,k}(z) = (-1)^{h} γ Λ_z((qt - 1) H^*_{λ,k})` at zero
/// (`h^-`) or at infinity (`h^+`).
pub fn theta_series<F: Field>(
    config: &ModelConfig,
    lambda: &Multipartition,
    k: GammaWeight,
    direction: Direction,
    order: usize,
    p: &ParamPoint<F>,
) -> Result<TruncatedSeries<F::Elem>, FockError> {
    let f = &p.field;
    let (gamma, h) = gamma_h(config, lambda, k);
    let hk = h_char(config, lambda).isotypic(k);
    let e = &(&config.qt_monomial(1, 1, 0) - &config.one()) * &hk.dual();
    let mut series = lambda_z_series(&e, p, direction, order)?;
    let mut pre = eval_monomial(&gamma, p)?;
    if h % 2 != 0 {
        pre = f.neg(&pre);
    }
    for c in series.coeffs.iter_mut() {
        *c = f.mul(&pre, c);
    }
    Ok(series)
}

/// `⟨b_λ|b_λ⟩ = Λ(T_λ^*)`.
pub fn pairing_norm<F: Field>(
    config: &ModelConfig,
    lambda: &Multipartition,
    p: &ParamPoint<F>,
) -> Result<F::Elem, FockError> {
    Ok(eval_lambda(&tangent_char(config, lambda).dual(), p)?)
}

/// `(-1)^{v_{λ,k}}` as a boolean "negative".
pub fn epsilon_negative(config: &ModelConfig, lambda: &Multipartition, k: i64) -> bool {
    let v = lambda.residue_vector(config);
    v[config.weight(k).value() as usize] % 2 != 0
}

/// The generating operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurrentKind {
    #[serde(rename = "x+")]
    XPlus,
    #[serde(rename = "x-")]
    XMinus,
    #[serde(rename = "h+")]
    HPlus,
    #[serde(rename = "h-")]
    HMinus,
    #[serde(rename = "eps")]
    Epsilon,
}

impl CurrentKind {
    pub const ALL: [CurrentKind; 5] = [
        CurrentKind::XPlus,
        CurrentKind::XMinus,
        CurrentKind::HPlus,
        CurrentKind::HMinus,
        CurrentKind::Epsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurrentKind::XPlus => "x+",
            CurrentKind::XMinus => "x-",
            CurrentKind::HPlus => "h+",
            CurrentKind::HMinus => "h-",
            CurrentKind::Epsilon => "eps",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Change in total box count.
    pub fn degree(self) -> i32 {
        match self {
            CurrentKind::XPlus => -1,
            CurrentKind::XMinus => 1,
            _ => 0,
        }
    }

    /// The pair of ε-twists precomposed in the twisted generators, as
    /// offsets from `k`.
    fn twist_offsets(self) -> Option<(i64, i64)> {
        match self {
            CurrentKind::XPlus => Some((0, -1)),
            CurrentKind::XMinus => Some((1, 0)),
            CurrentKind::HPlus | CurrentKind::HMinus => Some((-1, 1)),
            CurrentKind::Epsilon => None,
        }
    }
}

impl fmt::Display for CurrentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sparse vector on a basis, keyed by basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<E> {
    entries: BTreeMap<usize, E>,
}

impl<E: Clone + PartialEq> FockVector<E> {
    pub fn zero() -> Self {
        FockVector {
            entries: BTreeMap::new(),
        }
    }

    pub fn basis_vector<F: Field<Elem = E>>(f: &F, idx: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(idx, f.one());
        FockVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<&E> {
        self.entries.get(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &E)> {
        self.entries.iter().map(|(i, e)| (*i, e))
    }

    /// Adds `c · v` at `idx`, dropping entries that cancel.
    pub fn add_at<F: Field<Elem = E>>(&mut self, f: &F, idx: usize, v: E) {
        if f.is_zero(&v) {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(slot) => {
                let sum = f.add(slot, &v);
                if f.is_zero(&sum) {
                    self.entries.remove(&idx);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.entries.insert(idx, v);
            }
        }
    }

    pub fn axpy<F: Field<Elem = E>>(&mut self, f: &F, c: &E, other: &FockVector<E>) {
        for (idx, v) in other.iter() {
            self.add_at(f, idx, f.mul(c, v));
        }
    }

    pub fn scaled<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let mut out = FockVector::zero();
        out.axpy(f, c, self);
        out
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.scaled(f, &f.neg(&f.one()))
    }

    /// Largest box count among supported basis elements.
    pub fn max_boxes(&self, basis: &Basis) -> Option<u32> {
        self.entries.keys().map(|&i| basis.get(i).size()).max()
    }
}

impl<E> FromIterator<(usize, E)> for FockVector<E> {
    fn from_iter<I: IntoIterator<Item = (usize, E)>>(iter: I) -> Self {
        FockVector {
            entries: iter.into_iter().collect(),
        }
    }
}

/// One off-diagonal matrix element of an `x` operator at mode 0, with the
/// cell value that carries the mode dependence.
#[derive(Debug, Clone)]
struct XEntry<E> {
    target: usize,
    base: E,
    cell: E,
    cell_inv: E,
}

#[derive(Debug, Clone)]
struct ThetaTable<E> {
    at_infinity: Vec<E>,
    at_zero: Vec<E>,
}

type Lazy<T> = OnceLock<Result<T, FockError>>;
type XRows<E> = Lazy<Vec<Vec<XEntry<E>>>>;

/// Test hook: multiply one matrix element of `x^±_k` by a factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub kind: CurrentKind,
    pub k: u32,
    pub source: Multipartition,
    pub target: Multipartition,
    pub factor: i64,
}

/// Sparse operator matrix for one mode.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorMatrix {
    pub kind: CurrentKind,
    pub k: u32,
    pub s: i64,
    pub twisted: bool,
    pub basis: Vec<Multipartition>,
    /// `(source, target, value)` in source-major, target-minor order.
    pub entries: Vec<(usize, usize, String)>,
}

/// The current operators on a truncation, at one parameter point.
///
/// The internal basis holds every multipartition with at most
/// `max_boxes` cells. Matrix elements are computed lazily per `(kind, k)`
/// and Θ tables per `k`; both are immutable once built and shareable
/// across threads.
pub struct FockSpace<F: Field> {
    config: ModelConfig,
    point: ParamPoint<F>,
    basis: Basis,
    order: usize,
    residues: Vec<Vec<i64>>,
    xplus: Vec<XRows<F::Elem>>,
    xminus: Vec<XRows<F::Elem>>,
    theta: Vec<Lazy<Vec<ThetaTable<F::Elem>>>>,
    fault: Option<Fault>,
}

impl<F: Field> FockSpace<F> {
    /// `max_boxes` bounds the internal basis; `order` bounds the Θ tables.
    pub fn new(config: &ModelConfig, point: ParamPoint<F>, max_boxes: u32, order: usize) -> Self {
        let basis = Basis::new(config, max_boxes);
        let residues = basis
            .elements()
            .iter()
            .map(|m| m.residue_vector(config))
            .collect();
        let n = config.n() as usize;
        FockSpace {
            config: config.clone(),
            point,
            basis,
            order,
            residues,
            xplus: (0..n).map(|_| OnceLock::new()).collect(),
            xminus: (0..n).map(|_| OnceLock::new()).collect(),
            theta: (0..n).map(|_| OnceLock::new()).collect(),
            fault: None,
        }
    }

    pub fn with_fault(mut self, fault: Option<Fault>) -> Self {
        self.fault = fault;
        self
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn point(&self) -> &ParamPoint<F> {
        &self.point
    }

    pub fn field(&self) -> &F {
        &self.point.field
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn color(&self, k: i64) -> usize {
        self.config.weight(k).value() as usize
    }

    fn eps_negative(&self, idx: usize, k: i64) -> bool {
        self.residues[idx][self.color(k)] % 2 != 0
    }

    fn fault_factor(&self, kind: CurrentKind, k: usize, src: usize, dst: usize) -> Option<i64> {
        let fault = self.fault.as_ref()?;
        let hit = fault.kind == kind
            && fault.k as usize == k
            && self.basis.index_of(&fault.source) == Some(src)
            && self.basis.index_of(&fault.target) == Some(dst);
        hit.then_some(fault.factor)
    }

    fn build_x(&self, kind: CurrentKind, k: usize) -> Result<Vec<Vec<XEntry<F::Elem>>>, FockError> {
        let f = self.field();
        let kw = self.config.weight(k as i64);
        let dir = if kind == CurrentKind::XPlus {
            Dir::Down
        } else {
            Dir::Up
        };
        let mut rows = Vec::with_capacity(self.basis.len());
        for (src, lam) in self.basis.elements().iter().enumerate() {
            let mut row = Vec::new();
            for (target, cell) in neighbors(lam, &self.config, kw, dir) {
                let Some(dst) = self.basis.index_of(&target) else {
                    continue; // beyond the internal basis; guarded in `apply`
                };
                let mut base = match kind {
                    CurrentKind::XPlus => xplus_coeff(&self.config, lam, &target, 0, &self.point)?,
                    _ => xminus_coeff(&self.config, lam, &target, 0, &self.point)?,
                };
                if let Some(factor) = self.fault_factor(kind, k, src, dst) {
                    base = f.mul(&base, &f.from_i64(factor));
                }
                if f.is_zero(&base) {
                    continue;
                }
                let cell = cell_value(&self.config, &cell, &self.point)?;
                let cell_inv = f.inv(&cell).expect("cell values are units");
                row.push(XEntry {
                    target: dst,
                    base,
                    cell,
                    cell_inv,
                });
            }
            rows.push(row);
        }
        Ok(rows)
    }

    fn x_rows(&self, kind: CurrentKind, k: usize) -> Result<&[Vec<XEntry<F::Elem>>], FockError> {
        let slot = match kind {
            CurrentKind::XPlus => &self.xplus[k],
            _ => &self.xminus[k],
        };
        slot.get_or_init(|| self.build_x(kind, k))
            .as_deref()
            .map_err(Clone::clone)
    }

    fn build_theta(&self, k: usize) -> Result<Vec<ThetaTable<F::Elem>>, FockError> {
        let kw = self.config.weight(k as i64);
        self.basis
            .elements()
            .iter()
            .map(|lam| {
                let inf = theta_series(
                    &self.config,
                    lam,
                    kw,
                    Direction::AtInfinity,
                    self.order,
                    &self.point,
                )?;
                let zero = theta_series(
                    &self.config,
                    lam,
                    kw,
                    Direction::AtZero,
                    self.order,
                    &self.point,
                )?;
                Ok(ThetaTable {
                    at_infinity: inf.coeffs,
                    at_zero: zero.coeffs,
                })
            })
            .collect()
    }

    fn theta_rows(&self, k: usize) -> Result<&[ThetaTable<F::Elem>], FockError> {
        self.theta[k]
            .get_or_init(|| self.build_theta(k))
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Forces construction of every table; surfaces poles early.
    pub fn build_all(&self) -> Result<(), FockError> {
        for k in 0..self.config.n() as usize {
            self.x_rows(CurrentKind::XPlus, k)?;
            self.x_rows(CurrentKind::XMinus, k)?;
            self.theta_rows(k)?;
        }
        Ok(())
    }

    /// Diagonal value of `h^±_{k,m}` (untwisted) on `b_idx`. Modes outside
    /// the one-sided range are zero.
    pub fn theta_coeff(
        &self,
        kind: CurrentKind,
        k: i64,
        m: i64,
        idx: usize,
    ) -> Result<F::Elem, FockError> {
        let f = self.field();
        let table = &self.theta_rows(self.color(k))?[idx];
        let (series, pos) = match kind {
            CurrentKind::HPlus if m >= 0 => (&table.at_infinity, m as usize),
            CurrentKind::HMinus if m <= 0 => (&table.at_zero, (-m) as usize),
            CurrentKind::HPlus | CurrentKind::HMinus => return Ok(f.zero()),
            _ => return Err(FockError::Contract(format!("{kind} is not an h-current"))),
        };
        series.get(pos).cloned().ok_or_else(|| {
            FockError::Contract(format!(
                "mode {m} of {kind} exceeds series order {}",
                self.order
            ))
        })
    }

    /// Applies one generator at mode `s` to a vector.
    pub fn apply(
        &self,
        kind: CurrentKind,
        k: i64,
        s: i64,
        vec: &FockVector<F::Elem>,
        twisted: bool,
    ) -> Result<FockVector<F::Elem>, FockError> {
        let f = self.field();
        let color = self.color(k);
        if kind == CurrentKind::XMinus {
            if let Some(boxes) = vec.max_boxes(&self.basis) {
                if boxes >= self.basis.max_boxes() {
                    return Err(FockError::Truncation {
                        op: format!("x-_{{{color},{s}}}"),
                        boxes,
                        limit: self.basis.max_boxes(),
                    });
                }
            }
        }
        let mut out = FockVector::zero();
        for (src, c) in vec.iter() {
            let mut c = c.clone();
            if twisted {
                if let Some((a, b)) = kind.twist_offsets() {
                    let k = color as i64;
                    if self.eps_negative(src, k + a) != self.eps_negative(src, k + b) {
                        c = f.neg(&c);
                    }
                    if matches!(kind, CurrentKind::HPlus | CurrentKind::HMinus) {
                        c = f.neg(&c);
                    }
                }
            }
            match kind {
                CurrentKind::XPlus | CurrentKind::XMinus => {
                    for e in &self.x_rows(kind, color)?[src] {
                        let pw = if s >= 0 {
                            f.pow(&e.cell, s)
                        } else {
                            f.pow(&e.cell_inv, -s)
                        }
                        .expect("nonnegative exponent");
                        out.add_at(f, e.target, f.mul(&c, &f.mul(&e.base, &pw)));
                    }
                }
                CurrentKind::HPlus | CurrentKind::HMinus => {
                    let d = self.theta_coeff(kind, color as i64, s, src)?;
                    out.add_at(f, src, f.mul(&c, &d));
                }
                CurrentKind::Epsilon => {
                    if self.eps_negative(src, color as i64) {
                        out.add_at(f, src, f.neg(&c));
                    } else {
                        out.add_at(f, src, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Sparse matrix of one generator on the first `boxes`-graded block of
    /// the basis (sources with at most `boxes` cells; for `x^-` targets may
    /// have one more).
    pub fn matrix(
        &self,
        kind: CurrentKind,
        k: u32,
        s: i64,
        twisted: bool,
        boxes: u32,
    ) -> Result<OperatorMatrix, FockError> {
        let f = self.field();
        let sources = self.basis.prefix_len(boxes);
        let mut entries = Vec::new();
        for src in 0..sources {
            let image = self.apply(
                kind,
                k as i64,
                s,
                &FockVector::basis_vector(f, src),
                twisted,
            )?;
            for (dst, v) in image.iter() {
                entries.push((src, dst, f.render(v)));
            }
        }
        let span = if kind == CurrentKind::XMinus {
            boxes + 1
        } else {
            boxes
        };
        let basis = self.basis.elements()[..self.basis.prefix_len(span)].to_vec();
        Ok(OperatorMatrix {
            kind,
            k,
            s,
            twisted,
            basis,
            entries,
        })
    }
}

impl<F: Field> fmt::Debug for FockSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FockSpace")
            .field("config", &self.config)
            .field("basis", &self.basis.len())
            .field("order", &self.order)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RationalField;

    fn cfg(n: u32, colors: &[u32]) -> ModelConfig {
        ModelConfig::new(n, colors.to_vec()).unwrap()
    }

    fn mp(parts: &[&[u32]]) -> Multipartition {
        Multipartition::from_nested(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn point(c: &ModelConfig, q: i64, t: i64, x: &[i64]) -> ParamPoint<RationalField> {
        let f = RationalField::default();
        assert_eq!(x.len(), c.w());
        ParamPoint {
            q: f.from_i64(q),
            t: f.from_i64(t),
            x: x.iter().map(|&v| f.from_i64(v)).collect(),
            field: f,
            seed: 0,
        }
    }

    #[test]
    fn weight_characters() {
        let c = cfg(3, &[0]);
        assert!(weight_char(&c, &mp(&[&[]])).is_zero());
        assert_eq!(weight_char(&c, &mp(&[&[1]])), c.framing());
        assert_eq!(
            weight_char(&c, &mp(&[&[2]])).to_string(),
            "X1^1 + q^1 X1^1 S^1"
        );
    }

    #[test]
    fn boundary_of_single_box() {
        let c = cfg(5, &[0]);
        let (r, i, h) = boundary_chars(&c, &mp(&[&[1]]));
        assert_eq!(r, c.framing());
        assert_eq!(i.to_string(), "t^1 X1^1 S^4 + q^1 X1^1 S^1");
        assert_eq!(h, &i - &(&c.qt_monomial(1, 1, 0) * &r));
    }

    #[test]
    fn small_tangent_and_normal() {
        let c = cfg(3, &[0]);
        assert!(tangent_char(&c, &mp(&[&[]])).is_zero());
        assert!(tangent_char(&c, &mp(&[&[1]])).is_zero());
        assert!(normal_char(&c, &mp(&[&[]]), &mp(&[&[1]]))
            .unwrap()
            .is_zero());
        assert!(normal_char(&c, &mp(&[&[]]), &mp(&[&[2]])).is_err());
    }

    #[test]
    fn gamma_and_h() {
        let c = cfg(3, &[0, 2]);
        let (g, h) = gamma_h(&c, &mp(&[&[], &[]]), c.weight(0));
        assert!(g.is_one());
        assert_eq!(h, 1);
        let c = cfg(3, &[1]);
        let (g, h) = gamma_h(&c, &mp(&[&[1]]), c.weight(1));
        assert_eq!((g.dq, g.dt), (1, 1));
        assert_eq!(h, -1);
    }

    #[test]
    fn single_box_coefficients() {
        let c = cfg(3, &[0]);
        let p = point(&c, 5, 3, &[7]);
        let f = &p.field;
        let e = mp(&[&[]]);
        let b = mp(&[&[1]]);
        assert_eq!(xplus_coeff(&c, &b, &e, 0, &p).unwrap(), f.from_i64(7));
        let minus = xminus_coeff(&c, &e, &b, 0, &p).unwrap();
        assert_eq!(
            minus,
            f.mul(&f.from_i64(15), &f.inv(&f.from_i64(7)).unwrap())
        );
        let prod = f.mul(&xplus_coeff(&c, &b, &e, 0, &p).unwrap(), &minus);
        assert_eq!(prod, f.from_i64(15));
        assert_eq!(xplus_coeff(&c, &b, &e, 1, &p).unwrap(), f.from_i64(49));
        assert!(xplus_coeff(&c, &e, &b, 0, &p).is_err());
    }

    #[test]
    fn theta_of_empty() {
        let c = cfg(3, &[0]);
        let p = point(&c, 5, 3, &[7]);
        let f = &p.field;
        let e = mp(&[&[]]);
        let zero = theta_series(&c, &e, c.weight(0), Direction::AtZero, 1, &p).unwrap();
        assert_eq!(zero.coeffs[0], f.from_i64(-1));
        // -(1 - z·15/7)/(1 - z/7): z-coefficient is -(1/7 - 15/7) = 2
        assert_eq!(zero.coeffs[1], f.from_i64(2));
        let inf = theta_series(&c, &e, c.weight(0), Direction::AtInfinity, 0, &p).unwrap();
        assert_eq!(inf.coeffs[0], f.from_i64(-15));
    }

    #[test]
    fn pairing_norms_small() {
        let c = cfg(3, &[0]);
        let p = point(&c, 5, 3, &[7]);
        assert_eq!(pairing_norm(&c, &mp(&[&[]]), &p).unwrap(), p.field.one());
        assert_eq!(pairing_norm(&c, &mp(&[&[1]]), &p).unwrap(), p.field.one());
    }

    #[test]
    fn space_actions() {
        let c = cfg(3, &[0]);
        let p = point(&c, 5, 3, &[7]);
        let space = FockSpace::new(&c, p, 3, 4);
        let f = *space.field();
        let empty = FockVector::basis_vector(&f, 0);
        assert!(space
            .apply(CurrentKind::XPlus, 0, 0, &empty, false)
            .unwrap()
            .is_zero());
        let up = space
            .apply(CurrentKind::XMinus, 0, 0, &empty, false)
            .unwrap();
        let one = space.basis().index_of(&mp(&[&[1]])).unwrap();
        assert_eq!(
            up.get(one),
            Some(&f.mul(&f.from_i64(15), &f.inv(&f.from_i64(7)).unwrap()))
        );
        // ε² = 1
        let v = FockVector::basis_vector(&f, one);
        let e1 = space.apply(CurrentKind::Epsilon, 0, 0, &v, false).unwrap();
        assert_eq!(e1.get(one), Some(&f.from_i64(-1)));
        let e2 = space.apply(CurrentKind::Epsilon, 0, 0, &e1, false).unwrap();
        assert_eq!(e2, v);
        // x- on the top degree overflows.
        let top = FockVector::basis_vector(&f, space.basis().len() - 1);
        assert!(matches!(
            space.apply(CurrentKind::XMinus, 0, 0, &top, false),
            Err(FockError::Truncation { .. })
        ));
    }

    #[test]
    fn twisted_h_is_negated() {
        let c = cfg(3, &[0]);
        let p = point(&c, 5, 3, &[7]);
        let space = FockSpace::new(&c, p, 2, 2);
        let f = *space.field();
        let v = FockVector::basis_vector(&f, 0);
        let raw = space.apply(CurrentKind::HMinus, 0, 0, &v, false).unwrap();
        let tw = space.apply(CurrentKind::HMinus, 0, 0, &v, true).unwrap();
        assert_eq!(raw.neg(&f), tw);
    }

    #[test]
    fn fault_injection_changes_one_entry() {
        let c = cfg(3, &[0]);
        let fault = Fault {
            kind: CurrentKind::XMinus,
            k: 0,
            source: mp(&[&[]]),
            target: mp(&[&[1]]),
            factor: 2,
        };
        let clean = FockSpace::new(&c, point(&c, 5, 3, &[7]), 2, 2);
        let dirty = FockSpace::new(&c, point(&c, 5, 3, &[7]), 2, 2).with_fault(Some(fault));
        let f = *clean.field();
        let v = FockVector::basis_vector(&f, 0);
        let a = clean.apply(CurrentKind::XMinus, 0, 0, &v, false).unwrap();
        let b = dirty.apply(CurrentKind::XMinus, 0, 0, &v, false).unwrap();
        assert_eq!(a.scaled(&f, &f.from_i64(2)), b);
    }

    #[test]
    fn matrix_dump_single_entry() {
        let c = cfg(3, &[0]);
        let space = FockSpace::new(&c, point(&c, 5, 3, &[7]), 2, 2);
        let m = space.matrix(CurrentKind::XMinus, 0, 0, false, 0).unwrap();
        assert_eq!(m.basis.len(), 2);
        assert_eq!(m.entries, vec![(0, 1, "15/7".to_string())]);
        let m = space.matrix(CurrentKind::XPlus, 0, 0, false, 0).unwrap();
        assert!(m.entries.is_empty());
    }
}
