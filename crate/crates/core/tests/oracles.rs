//! Hand-computed values checked through the public API.

use num_bigint::BigInt;
use num_rational::BigRational;
use qtor_core::fock::{
    boundary_chars, gamma_h, normal_char, pairing_norm, tangent_char, theta_series, weight_char,
    xminus_coeff, xplus_coeff, Fault,
};
use qtor_core::scalars::{eval_det, eval_lambda, eval_monomial, lambda_z_series};
use qtor_core::verify::{
    check_boundary_identity, residue_lhs, residue_rhs, run, ResiduePoint, Suite, VerifyConfig,
};
use qtor_core::young::{enumerate, neighbors, Dir};
use qtor_core::{
    CurrentKind, Direction, Field, FockSpace, FockVector, GammaWeight, ModelConfig, Monomial,
    Multipartition, ParamPoint, RationalField,
};

fn model(n: u32, colors: &[u32]) -> ModelConfig {
    ModelConfig::new(n, colors.to_vec()).unwrap()
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn point(q: i64, t: i64, x: &[i64]) -> ParamPoint<RationalField> {
    let f = RationalField::default();
    ParamPoint {
        q: f.from_i64(q),
        t: f.from_i64(t),
        x: x.iter().map(|&v| f.from_i64(v)).collect(),
        field: f,
        seed: 0,
    }
}

fn mp(parts: &[&[u32]]) -> Multipartition {
    Multipartition::from_nested(parts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn mono(cfg: &ModelConfig, dq: i32, dt: i32, dx: &[i32], s: i64) -> Monomial {
    Monomial {
        dq,
        dt,
        dx: dx.to_vec(),
        s: cfg.weight(s),
    }
}

#[test]
fn line_times_its_dual() {
    for n in [3, 4, 7] {
        let cfg = model(n, &[0]);
        let l = cfg.line();
        let expected = &(&cfg.qt_monomial(0, 0, 0).scale(2) + &cfg.qt_monomial(1, -1, 2))
            + &cfg.qt_monomial(-1, 1, n as i64 - 2);
        assert_eq!(&l * &l.dual(), expected, "n = {n}");
    }
}

#[test]
fn duals_isotypic_parts_and_dims() {
    let cfg = model(3, &[0]);
    let theta_dual = &(&(&cfg.qt_monomial(0, 1, -1) + &cfg.qt_monomial(1, 0, 1)) - &cfg.one())
        - &cfg.qt_monomial(1, 1, 0);
    assert_eq!(cfg.theta().dual(), theta_dual);

    let m = cfg.monomial(mono(&cfg, 1, 0, &[1], 1));
    assert_eq!(m.dual(), cfg.monomial(mono(&cfg, -1, 0, &[-1], -1)));

    let l = cfg.line();
    assert_eq!(l.isotypic(GammaWeight::new(1, 3)), cfg.qt_monomial(1, 0, 0));
    assert!(l.isotypic(GammaWeight::new(0, 3)).is_zero());

    let (_, _, h) = boundary_chars(&cfg, &mp(&[&[1]]));
    assert_eq!(h.isotypic(cfg.weight(0)).dim_i64(), -1);
}

#[test]
fn monomial_and_lambda_evaluations() {
    let cfg = model(3, &[0]);
    let p = point(5, 7, &[3]);
    let ev = |dq, dt| eval_monomial(&mono(&cfg, dq, dt, &[0], 0), &p).unwrap();
    assert_eq!(ev(1, 0), rat(5, 1));
    assert_eq!(ev(-1, 0), rat(1, 5));
    assert_eq!(ev(0, 1), rat(7, 1));

    // Λ(-q) = 1/(1-q), D(-q) = 1/q
    let minus_q = cfg.qt_monomial(1, 0, 0).scale(-1);
    assert_eq!(eval_lambda(&minus_q, &p).unwrap(), rat(-1, 4));
    assert_eq!(eval_det(&minus_q, &p).unwrap(), rat(1, 5));

    // Λ_z(qt m - m) at infinity starts with qt
    let m = cfg.monomial(mono(&cfg, 0, 0, &[1], 0));
    let e = &(&cfg.qt_monomial(1, 1, 0) * &m) - &m;
    let series = lambda_z_series(&e, &p, Direction::AtInfinity, 0).unwrap();
    assert_eq!(series.coeffs, vec![rat(35, 1)]);
    // and with 1 at zero, followed by -(qt - 1) X z
    let series = lambda_z_series(&e, &p, Direction::AtZero, 1).unwrap();
    assert_eq!(series.coeffs, vec![rat(1, 1), rat(-34 * 3, 1)]);
}

#[test]
fn cell_residues_and_enumeration() {
    let cfg = model(3, &[1]);
    let lam = mp(&[&[2, 1]]);
    let residues: Vec<u32> = lam.cells().map(|c| c.residue(&cfg).value()).collect();
    // (0,0) → 1, (1,0) → 2, (0,1) → 0 under i < λ_{j+1}
    let mut sorted = residues.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1, 2]);

    assert_eq!(enumerate(&model(3, &[0]), 1).len(), 2);
    assert_eq!(enumerate(&model(3, &[0]), 2).len(), 4);
    assert_eq!(enumerate(&model(3, &[0, 1]), 1).len(), 3);
    assert_eq!(enumerate(&model(3, &[0, 1]), 2).len(), 8);
    assert_eq!(enumerate(&model(4, &[0, 2]), 6).len(), 139);
}

#[test]
fn neighbors_of_the_vacuum() {
    let cfg = model(3, &[0]);
    let empty = Multipartition::empty(1);
    let up = neighbors(&empty, &cfg, cfg.weight(0), Dir::Up);
    assert_eq!(up.len(), 1);
    assert_eq!(up[0].0, mp(&[&[1]]));
    assert!(neighbors(&empty, &cfg, cfg.weight(1), Dir::Up).is_empty());
    assert!(neighbors(&empty, &cfg, cfg.weight(0), Dir::Down).is_empty());
}

#[test]
fn fixed_point_characters() {
    let cfg = model(3, &[0]);
    assert_eq!(
        weight_char(&cfg, &mp(&[&[2]])),
        &cfg.monomial(mono(&cfg, 0, 0, &[1], 0)) + &cfg.monomial(mono(&cfg, 1, 0, &[1], 1))
    );

    let (r, i, h) = boundary_chars(&cfg, &mp(&[&[1]]));
    assert_eq!(r, cfg.monomial(mono(&cfg, 0, 0, &[1], 0)));
    assert_eq!(
        i,
        &cfg.monomial(mono(&cfg, 1, 0, &[1], 1)) + &cfg.monomial(mono(&cfg, 0, 1, &[1], 2))
    );
    assert_eq!(h, &i - &cfg.monomial(mono(&cfg, 1, 1, &[1], 0)));

    let empty = Multipartition::empty(1);
    let single = mp(&[&[1]]);
    assert!(tangent_char(&cfg, &empty).is_zero());
    assert!(tangent_char(&cfg, &single).is_zero());
    assert!(normal_char(&cfg, &empty, &single).unwrap().is_zero());

    let (gamma, h) = gamma_h(&cfg, &single, cfg.weight(0));
    assert_eq!(gamma, mono(&cfg, 1, 1, &[0], 0));
    assert_eq!(h, -1);
}

#[test]
fn single_box_coefficients() {
    let cfg = model(3, &[0]);
    let p = point(5, 7, &[3]);
    let empty = Multipartition::empty(1);
    let single = mp(&[&[1]]);
    let xp = xplus_coeff(&cfg, &single, &empty, 0, &p).unwrap();
    let xm = xminus_coeff(&cfg, &empty, &single, 0, &p).unwrap();
    assert_eq!(xp, rat(3, 1));
    assert_eq!(xm, rat(35, 3));
    assert_eq!(p.field.mul(&xp, &xm), rat(35, 1));
    assert_eq!(pairing_norm(&cfg, &single, &p).unwrap(), rat(1, 1));
    assert_eq!(pairing_norm(&cfg, &empty, &p).unwrap(), rat(1, 1));
}

#[test]
fn theta_constants_of_the_vacuum() {
    let cfg = model(3, &[0]);
    let p = point(5, 7, &[3]);
    let empty = Multipartition::empty(1);
    let at0 = theta_series(&cfg, &empty, cfg.weight(0), Direction::AtZero, 1, &p).unwrap();
    let inf = theta_series(&cfg, &empty, cfg.weight(0), Direction::AtInfinity, 0, &p).unwrap();
    assert_eq!(at0.coeffs[0], rat(-1, 1));
    // -(1 - z qt/X)/(1 - z/X): linear term is -(1/X - qt/X)
    assert_eq!(at0.coeffs[1], rat(34, 3));
    assert_eq!(inf.coeffs[0], rat(-35, 1));
}

#[test]
fn commutator_on_the_vacuum() {
    let cfg = model(3, &[0]);
    let sp = FockSpace::new(&cfg, point(5, 7, &[3]), 3, 4);
    let f = *sp.field();
    let vac = FockVector::basis_vector(&f, 0);
    let xm = sp.apply(CurrentKind::XMinus, 0, 0, &vac, false).unwrap();
    let xpxm = sp.apply(CurrentKind::XPlus, 0, 0, &xm, false).unwrap();
    let xp = sp.apply(CurrentKind::XPlus, 0, 0, &vac, false).unwrap();
    assert!(xp.is_zero());
    assert_eq!(xpxm, vac.scaled(&f, &rat(35, 1)));
    assert_eq!(
        xm.iter()
            .map(|(i, v)| (sp.basis().get(i).clone(), v.clone()))
            .collect::<Vec<_>>(),
        vec![(mp(&[&[1]]), rat(35, 3))]
    );

    // Θ^+_0 - Θ^-_0 on b_∅ is -qt + 1; scaled by ς/(1 - q^{-1}t^{-1}) with ς = -1
    let hp = sp.theta_coeff(CurrentKind::HPlus, 0, 0, 0).unwrap();
    let hm = sp.theta_coeff(CurrentKind::HMinus, 0, 0, 0).unwrap();
    let diff = f.sub(&hp, &hm);
    let scale = f.inv(&f.sub(&f.one(), &rat(1, 35))).unwrap();
    assert_eq!(f.neg(&f.mul(&scale, &diff)), rat(35, 1));
}

#[test]
fn residue_identity_by_hand() {
    let f = RationalField::default();
    let q = rat(5, 1);
    let a = rat(3, 1);
    // I_2 = {a}: total -q
    let pt = ResiduePoint {
        q: q.clone(),
        a: vec![a.clone()],
        split: 0,
    };
    assert_eq!(residue_lhs(&f, &pt, 0), rat(-5, 1));
    assert_eq!(residue_rhs(&f, &pt, 0), rat(-5, 1));
    // (1 - q)/(1 - q^{-1}) = -q
    assert_eq!(f.mul(&rat(-4, 1), &f.inv(&rat(4, 5)).unwrap()), rat(-5, 1));
    // I_1 = {a}: total 1
    let pt = ResiduePoint {
        q: q.clone(),
        a: vec![a.clone()],
        split: 1,
    };
    assert_eq!(residue_lhs(&f, &pt, 0), rat(1, 1));
    assert_eq!(residue_rhs(&f, &pt, 0), rat(1, 1));
    // both blocks, nonzero modes
    let pt = ResiduePoint {
        q,
        a: vec![a, rat(-2, 7), rat(11, 4)],
        split: 2,
    };
    for s in -3..=3 {
        assert_eq!(residue_lhs(&f, &pt, s), residue_rhs(&f, &pt, s), "s = {s}");
    }
}

#[test]
fn boundary_identity_counts() {
    let cfg = model(3, &[0]);
    let r = check_boundary_identity(&cfg, 5);
    assert!(r.passed);
    assert_eq!(r.instances, 19);
    let r = check_boundary_identity(&cfg, 6);
    assert!(r.passed);
    assert_eq!(r.instances, 30);
}

fn small(suites: Vec<Suite>) -> VerifyConfig {
    let mut cfg = VerifyConfig::new(model(3, &[0]));
    cfg.truncation = 2;
    cfg.exact_boxes = 3;
    cfg.modes = 1;
    cfg.order = 4;
    cfg.prime_points = 1;
    cfg.rational_points = 0;
    cfg.suites = suites;
    cfg
}

#[test]
fn injected_fault_is_localized() {
    let clean = run(&small(vec![Suite::Currents])).unwrap();
    let mut cfg = small(vec![Suite::Currents]);
    cfg.fault = Some(Fault {
        kind: CurrentKind::XMinus,
        k: 0,
        source: Multipartition::empty(1),
        target: mp(&[&[1]]),
        factor: 2,
    });
    let faulty = run(&cfg).unwrap();
    let before = clean.suite("currents").unwrap();
    let after = faulty.suite("currents").unwrap();
    let newly_failing: Vec<_> = after
        .families
        .iter()
        .filter(|fam| !fam.passed && before.family(&fam.name).unwrap().passed)
        .collect();
    let names: Vec<&str> = newly_failing.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(names, ["currents/commutator"]);
    for f in &newly_failing[0].failures {
        assert_eq!(f.colors, vec![0, 0], "{f:?}");
        assert!(f.lambda == "[[]]" || f.lambda == "[[1]]", "{f:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = small(vec![Suite::CrossCheck, Suite::Currents, Suite::Residue]);
    assert_eq!(run(&cfg).unwrap().to_json(), run(&cfg).unwrap().to_json());
    let mut other = cfg.clone();
    other.seed += 1;
    assert_ne!(run(&cfg).unwrap().points, run(&other).unwrap().points);
}
